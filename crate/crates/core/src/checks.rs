//! Check suites over a parsed file.

use std::collections::BTreeMap;
use std::time::Instant;

use num::Zero;
use rayon::prelude::*;

use crate::cohomology::{coboundary, homology_boundary, ChainElement, MultiDerivation};
use crate::error::{AlgebraError, Result};
use crate::format::AlgebraFile;
use crate::hopf::check_ore_hopf;
use crate::quotient::{LieAlgebraA, Quotient};
use crate::random;
use crate::report::{CheckResult, Report};
use crate::ring::Rational;
use crate::smash::Smash;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Poisson,
    Hopf,
    PoissonHopf,
    Ore,
    All,
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Slab degree for checks on the enveloping algebra and its quotients.
    pub degree: u32,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { degree: 2, seed: 0 }
    }
}

/// Runs a group of checks and stamps each result with the group's wall time.
fn timed(f: impl FnOnce() -> Result<Report>) -> Result<Report> {
    let start = Instant::now();
    let mut r = f()?;
    let ms = start.elapsed().as_millis() as u64;
    for c in &mut r.checks {
        c.millis.get_or_insert(ms);
    }
    Ok(r)
}

fn single(c: CheckResult) -> Report {
    let mut r = Report::new();
    r.push(c);
    r
}

type Job<'a> = Box<dyn Fn() -> Result<Report> + Send + Sync + 'a>;

pub fn run_checks(file: &AlgebraFile, family: Family, opts: CheckOptions) -> Result<Report> {
    let mut jobs: Vec<Job> = Vec::new();
    let all = family == Family::All;
    if family == Family::Poisson || all {
        jobs.push(Box::new(|| Ok(file.poisson.check_jacobi())));
    }
    let has_hopf = file.hopf.is_some();
    if family == Family::Hopf || (all && has_hopf) {
        let h = file.hopf()?;
        jobs.push(Box::new(move || Ok(h.check_hopf_axioms())));
    }
    if family == Family::PoissonHopf || (all && has_hopf) {
        let h = file.hopf()?;
        jobs.push(Box::new(move || {
            let mut r = h.check_poisson_hopf();
            r.extend(h.check_derived_identities(opts.seed, 12));
            Ok(r)
        }));
    }
    if family == Family::Ore || (all && file.ore.is_some()) {
        let h = file.hopf()?;
        let d = file.ore.as_ref().ok_or_else(|| AlgebraError::Precondition("the file has no [ore] section".into()))?;
        jobs.push(Box::new(move || Ok(ore_report(h, d))));
    }
    if all {
        jobs.extend(structure_jobs(file, opts));
    }
    let reports: Vec<Report> = jobs.par_iter().map(timed).collect::<Result<_>>()?;
    let mut out = Report::new();
    for r in reports {
        out.extend(r);
    }
    Ok(out)
}

fn ore_report(h: &crate::hopf::HopfData, d: &crate::hopf::OreHopfData) -> Report {
    let (mut r, ext) = check_ore_hopf(h, d);
    if let Some(e) = ext {
        let mut more = e.check_hopf_axioms();
        more.extend(e.check_poisson_hopf());
        for mut c in more.checks {
            c.name = format!("ore-extension-{}", c.name);
            r.push(c);
        }
    }
    r
}

/// Checks on `B^e`, its quotient, the (co)homology complexes and smash
/// products. They need a free ring; files with side relations get the
/// base-level checks only.
fn structure_jobs<'a>(file: &'a AlgebraFile, opts: CheckOptions) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job<'a>> = Vec::new();
    let ring = file.ring();
    if !ring.is_free() || ring.characteristic() != 0 {
        return jobs;
    }
    let d = opts.degree;
    jobs.push(Box::new(move || cochain_square(file, opts.seed)));
    if let Some(h) = &file.hopf {
        let quotient = move || Quotient::new(h);
        jobs.push(Box::new(move || {
            let q = quotient()?;
            let mut rng = random::rng(opts.seed);
            let samples: Vec<_> = (0..6).map(|_| random::poly(ring, &mut rng, 2, 3)).collect();
            let mut r = single(q.uea().check_normal(&samples)?);
            r.extend(q.uea().check_hopf(d)?);
            Ok(r)
        }));
        jobs.push(Box::new(move || {
            let q = quotient()?;
            let mut r = single(lie_jacobi(q.lie()));
            r.extend(q.check_comodule(d)?);
            Ok(r)
        }));
        jobs.push(Box::new(move || {
            let q = quotient()?;
            let mut r = q.check_normal_basis(d)?;
            r.push(q.check_galois_triangular(d)?);
            Ok(r)
        }));
        if !(0..ring.len()).any(|i| ring.is_invertible(i)) {
            jobs.push(Box::new(move || quotient()?.check_cobracket()));
        }
        jobs.push(Box::new(move || chain_square(file, opts.seed)));
    }
    if let Some(b) = &file.biproduct {
        jobs.push(Box::new(move || Smash::new(b.clone())?.check_all(d, opts.seed)));
    }
    jobs
}

/// Jacobi identity of the structure constants of `m / m^2`.
pub fn lie_jacobi(lie: &LieAlgebraA) -> CheckResult {
    let n = lie.dim();
    let bracket_vec = |v: &BTreeMap<usize, Rational>, j: usize| {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&i, c) in v {
            for (k, d) in lie.bracket(i, j) {
                *out.entry(*k).or_insert_with(Rational::zero) += c * d;
            }
        }
        out
    };
    let unit = |i: usize| BTreeMap::from([(i, num::One::one())]);
    let mut check = CheckResult::new("lie-jacobi");
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                // [[y_i, y_j], y_k] + [[y_j, y_k], y_i] + [[y_k, y_i], y_j]
                let mut sum: BTreeMap<usize, Rational> = BTreeMap::new();
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let inner: BTreeMap<usize, Rational> = bracket_vec(&unit(a), b);
                    for (t, v) in bracket_vec(&inner, c) {
                        *sum.entry(t).or_insert_with(Rational::zero) += v;
                    }
                }
                sum.retain(|_, v| !v.is_zero());
                if !sum.is_empty() {
                    let parts: Vec<String> =
                        sum.iter().map(|(t, v)| format!("{}*y{}", crate::ring::fmt_rational(v), t + 1)).collect();
                    check.fail(format!("(y{}, y{}, y{})", i + 1, j + 1, k + 1), parts.join(" + "));
                }
            }
        }
    }
    check
}

/// `delta o delta = 0` on seeded random cochains of arity at most 2.
pub fn cochain_square(file: &AlgebraFile, seed: u64) -> Result<Report> {
    let ring = file.ring();
    let mut rng = random::rng(seed ^ 0xc0c4a1);
    let mut check = CheckResult::new("cochain-square");
    for s in 0..=2.min(ring.len()) {
        for _ in 0..4 {
            let q = MultiDerivation::random(ring, s, &mut rng);
            let dd = coboundary(&file.poisson, &coboundary(&file.poisson, &q)?)?;
            if !dd.is_zero() {
                check.fail(q.display(ring), dd.display(ring));
            }
        }
    }
    Ok(single(check))
}

/// `b o b = 0` on seeded random chains of degree 2 and 3.
pub fn chain_square(file: &AlgebraFile, seed: u64) -> Result<Report> {
    let ring = file.ring();
    let uea = crate::uea::Uea::new(&file.poisson)?;
    let mut rng = random::rng(seed ^ 0xc4a1);
    let mut check = CheckResult::new("chain-square");
    for s in 2..=3.min(ring.len()) {
        for _ in 0..3 {
            let c = ChainElement::random(&uea, s, &mut rng);
            let bb = homology_boundary(&uea, &homology_boundary(&uea, &c)?)?;
            if !bb.is_zero() {
                check.fail(c.display(ring), bb.display(ring));
            }
        }
    }
    Ok(single(check))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_get, Bindings};

    #[test]
    fn typea_all() {
        let f = catalog_get("typea", &Bindings::new()).unwrap();
        let r = run_checks(&f, Family::All, CheckOptions { degree: 2, seed: 1 }).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.get("uea-antipode").is_some());
        assert!(r.get("galois-bijective").is_some());
    }

    #[test]
    fn perturbed_bracket_fails_poisson_hopf() {
        let text = "generators = g* x\n{x,g} = g\nDelta(x) = x@1 + g@x\n";
        let f = crate::format::parse_algebra(text, Default::default()).unwrap();
        let r = run_checks(&f, Family::PoissonHopf, CheckOptions::default()).unwrap();
        assert!(!r.get("poisson-hopf").unwrap().passed());
    }
}
