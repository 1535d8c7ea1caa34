//! Poisson brackets on (Laurent) polynomial rings, Poisson modules and
//! Poisson Ore extensions.

use std::collections::BTreeMap;

use crate::error::{AlgebraError, Result};
use crate::random;
use crate::report::{CheckResult, Report};
use crate::ring::{same_ring, LaurentPoly, Ring};

/// Bracket table `{x_i, x_j}` for `i < j`, extended as a biderivation.
#[derive(Clone, Debug)]
pub struct PoissonAlgebra {
    ring: Ring,
    table: BTreeMap<(usize, usize), LaurentPoly>,
}

impl PartialEq for PoissonAlgebra {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.table == other.table
    }
}

impl PoissonAlgebra {
    pub fn trivial(ring: &Ring) -> Self {
        PoissonAlgebra { ring: ring.clone(), table: BTreeMap::new() }
    }

    /// Builds the table from `{x_i, x_j} = value` entries in either
    /// orientation. Diagonal entries must vanish and each pair may be given once.
    pub fn new(ring: &Ring, entries: Vec<(usize, usize, LaurentPoly)>) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (i, j, v) in entries {
            if !same_ring(ring, v.ring()) {
                return Err(AlgebraError::RingMismatch);
            }
            if i == j {
                if !v.is_zero() {
                    return Err(AlgebraError::Invalid(format!(
                        "{{{0},{0}}} must be 0 by antisymmetry",
                        ring.name(i)
                    )));
                }
                continue;
            }
            let (key, v) = if i < j { ((i, j), v) } else { ((j, i), -v) };
            if table.contains_key(&key) {
                return Err(AlgebraError::Invalid(format!(
                    "duplicate bracket {{{},{}}}",
                    ring.name(key.0),
                    ring.name(key.1)
                )));
            }
            if !v.is_zero() {
                table.insert(key, v);
            }
        }
        Ok(PoissonAlgebra { ring: ring.clone(), table })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `{x_i, x_j}` on generators.
    pub fn gen_bracket(&self, i: usize, j: usize) -> LaurentPoly {
        if i < j {
            self.table.get(&(i, j)).cloned().unwrap_or_else(|| LaurentPoly::zero(&self.ring))
        } else if i > j {
            -self.gen_bracket(j, i)
        } else {
            LaurentPoly::zero(&self.ring)
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.table.is_empty()
    }

    pub fn table(&self) -> &BTreeMap<(usize, usize), LaurentPoly> {
        &self.table
    }

    /// `{f, g} = sum_{i<j} (d_i f d_j g - d_j f d_i g) {x_i, x_j}`.
    pub fn bracket(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
        if !same_ring(&self.ring, f.ring()) || !same_ring(&self.ring, g.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
        let mut out = LaurentPoly::zero(&self.ring);
        if self.table.is_empty() || f.is_zero() || g.is_zero() {
            return Ok(out);
        }
        let n = self.ring.len();
        let df: Vec<LaurentPoly> = (0..n).map(|k| f.partial(k)).collect();
        let dg: Vec<LaurentPoly> = (0..n).map(|k| g.partial(k)).collect();
        for (&(i, j), v) in &self.table {
            let w = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
            if !w.is_zero() {
                out = &out + &(&w * v);
            }
        }
        Ok(out)
    }

    /// `{x_i, f}` as a derivation in `f`.
    pub fn gen_bracket_with(&self, i: usize, f: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.ring);
        for k in 0..self.ring.len() {
            let d = f.partial(k);
            if !d.is_zero() {
                let b = self.gen_bracket(i, k);
                if !b.is_zero() {
                    out = &out + &(&d * &b);
                }
            }
        }
        out
    }

    /// `{f, r}` for a relation `r = lead - tail`, computed on the unreduced
    /// representative.
    fn bracket_with_relation(&self, i: usize, r: usize) -> LaurentPoly {
        let rel = &self.ring.relations()[r];
        let mut out = LaurentPoly::zero(&self.ring);
        for k in 0..self.ring.len() {
            let b = self.gen_bracket(i, k);
            if b.is_zero() {
                continue;
            }
            let mut d = LaurentPoly::zero(&self.ring);
            let e = rel.lead.0[k];
            if e != 0 {
                let mut m = rel.lead.clone();
                m.0[k] -= 1;
                d = &d + &LaurentPoly::term(&self.ring, m, crate::ring::int(e as i64));
            }
            for (tm, tc) in &rel.tail {
                let e = tm.0[k];
                if e != 0 {
                    let mut m = tm.clone();
                    m.0[k] -= 1;
                    d = &d - &LaurentPoly::term(&self.ring, m, tc * crate::ring::int(e as i64));
                }
            }
            out = &out + &(&d * &b);
        }
        out
    }

    /// Jacobi identity on all generator triples, plus compatibility with the
    /// side relations when present.
    pub fn check_jacobi(&self) -> Report {
        let n = self.ring.len();
        let mut c = CheckResult::new("jacobi");
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = self.jacobi_sum(
                        &LaurentPoly::gen(&self.ring, i),
                        &LaurentPoly::gen(&self.ring, j),
                        &LaurentPoly::gen(&self.ring, k),
                    );
                    if !s.is_zero() {
                        c.fail(
                            format!(
                                "{{{},{},{}}}",
                                self.ring.name(i),
                                self.ring.name(j),
                                self.ring.name(k)
                            ),
                            s.to_string(),
                        );
                    }
                }
            }
        }
        let mut report = Report::new();
        report.push(c);
        if !self.ring.relations().is_empty() {
            let mut c = CheckResult::new("poisson-ideal");
            for r in 0..self.ring.relations().len() {
                for i in 0..n {
                    let v = self.bracket_with_relation(i, r);
                    if !v.is_zero() {
                        c.fail(format!("{{{}, relation {}}}", self.ring.name(i), r + 1), v.to_string());
                    }
                }
            }
            report.push(c);
        }
        report
    }

    pub fn jacobi_sum(&self, a: &LaurentPoly, b: &LaurentPoly, c: &LaurentPoly) -> LaurentPoly {
        let br = |x: &LaurentPoly, y: &LaurentPoly| self.bracket(x, y).expect("same ring");
        &(&br(a, &br(b, c)) + &br(b, &br(c, a))) + &br(c, &br(a, b))
    }
}

/// Free module of finite rank with generator-level action `{x_i, e_j}`.
#[derive(Clone, Debug)]
pub struct PoissonModuleData {
    pub rank: usize,
    /// `action[i][j]` is `{x_i, e_j}` as a coordinate vector of length `rank`.
    pub action: Vec<Vec<Vec<LaurentPoly>>>,
}

pub type ModuleElement = Vec<LaurentPoly>;

impl PoissonModuleData {
    /// `{a, m}` extended by the module axioms.
    pub fn act(&self, alg: &PoissonAlgebra, a: &LaurentPoly, m: &ModuleElement) -> ModuleElement {
        let ring = alg.ring();
        let mut out: ModuleElement = vec![LaurentPoly::zero(ring); self.rank];
        let da: Vec<LaurentPoly> = (0..ring.len()).map(|k| a.partial(k)).collect();
        for (j, fj) in m.iter().enumerate() {
            if fj.is_zero() {
                continue;
            }
            out[j] = &out[j] + &alg.bracket(a, fj).expect("same ring");
            for (i, di) in da.iter().enumerate() {
                if di.is_zero() {
                    continue;
                }
                let coef = di * fj;
                for (k, v) in self.action[i][j].iter().enumerate() {
                    out[k] = &out[k] + &(&coef * v);
                }
            }
        }
        out
    }

    pub fn basis(&self, ring: &Ring, j: usize) -> ModuleElement {
        (0..self.rank)
            .map(|k| if k == j { LaurentPoly::one(ring) } else { LaurentPoly::zero(ring) })
            .collect()
    }
}

fn fmt_module(m: &ModuleElement) -> String {
    let parts: Vec<String> = m.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn sub_module(a: &ModuleElement, b: &ModuleElement) -> ModuleElement {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale_module(f: &LaurentPoly, m: &ModuleElement) -> ModuleElement {
    m.iter().map(|c| f * c).collect()
}

fn add_module(a: &ModuleElement, b: &ModuleElement) -> ModuleElement {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Axiom `{{a,b},m} = {a,{b,m}} - {b,{a,m}}` on generators and basis
/// elements, and randomized spot checks of the two Leibniz axioms.
pub fn check_poisson_module(alg: &PoissonAlgebra, module: &PoissonModuleData, seed: u64) -> Report {
    let ring = alg.ring();
    let n = ring.len();
    let mut c1 = CheckResult::new("module-bracket");
    for i in 0..n {
        for k in i + 1..n {
            let xi = LaurentPoly::gen(ring, i);
            let xk = LaurentPoly::gen(ring, k);
            let br = alg.gen_bracket(i, k);
            for j in 0..module.rank {
                let e = module.basis(ring, j);
                let lhs = module.act(alg, &br, &e);
                let rhs = sub_module(
                    &module.act(alg, &xi, &module.act(alg, &xk, &e)),
                    &module.act(alg, &xk, &module.act(alg, &xi, &e)),
                );
                let res = sub_module(&lhs, &rhs);
                if res.iter().any(|c| !c.is_zero()) {
                    c1.fail(format!("({}, {}, e{})", ring.name(i), ring.name(k), j + 1), fmt_module(&res));
                }
            }
        }
    }
    let mut c2 = CheckResult::new("module-leibniz");
    let mut rng = random::rng(seed);
    for _ in 0..10 {
        let a = random::poly(ring, &mut rng, 2, 2);
        let b = random::poly(ring, &mut rng, 2, 2);
        let m: ModuleElement = (0..module.rank).map(|_| random::poly(ring, &mut rng, 2, 2)).collect();
        let lhs = module.act(alg, &(&a * &b), &m);
        let rhs = add_module(
            &scale_module(&a, &module.act(alg, &b, &m)),
            &scale_module(&b, &module.act(alg, &a, &m)),
        );
        let res = sub_module(&lhs, &rhs);
        if res.iter().any(|c| !c.is_zero()) {
            c2.fail(format!("{{({a})({b}), m}}"), fmt_module(&res));
        }
        let lhs = module.act(alg, &a, &scale_module(&b, &m));
        let rhs = add_module(
            &scale_module(&alg.bracket(&a, &b).expect("same ring"), &m),
            &scale_module(&b, &module.act(alg, &a, &m)),
        );
        let res = sub_module(&lhs, &rhs);
        if res.iter().any(|c| !c.is_zero()) {
            c2.fail(format!("{{{a}, ({b}) m}}"), fmt_module(&res));
        }
    }
    let mut r = Report::new();
    r.push(c1);
    r.push(c2);
    r
}

/// Derivation `D(f) = sum_k d_k f * D(x_k)` determined by generator values.
pub fn apply_derivation(values: &[LaurentPoly], f: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero(f.ring());
    for (k, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let d = f.partial(k);
        if !d.is_zero() {
            out = &out + &(&d * v);
        }
    }
    out
}

/// Data `(alpha, delta)` of a Poisson Ore extension `B[x; alpha, delta]`.
#[derive(Clone, Debug)]
pub struct OreData {
    pub base: PoissonAlgebra,
    pub alpha: Vec<LaurentPoly>,
    pub delta: Vec<LaurentPoly>,
}

impl OreData {
    pub fn trivial(base: &PoissonAlgebra) -> Self {
        let n = base.ring().len();
        let z = LaurentPoly::zero(base.ring());
        OreData { base: base.clone(), alpha: vec![z.clone(); n], delta: vec![z; n] }
    }

    pub fn alpha_of(&self, f: &LaurentPoly) -> LaurentPoly {
        apply_derivation(&self.alpha, f)
    }

    pub fn delta_of(&self, f: &LaurentPoly) -> LaurentPoly {
        apply_derivation(&self.delta, f)
    }
}

/// `alpha` is a Poisson derivation and `delta` satisfies
/// `delta{a,b} = {delta a, b} + {a, delta b} + alpha(a) delta(b) - delta(a) alpha(b)`.
pub fn check_ore_data(d: &OreData) -> Report {
    let alg = &d.base;
    let ring = alg.ring();
    let n = ring.len();
    let mut ca = CheckResult::new("ore-alpha");
    let mut cd = CheckResult::new("ore-delta");
    if d.alpha.len() != n || d.delta.len() != n {
        ca.fail("", "alpha and delta need one value per generator");
    } else {
        for i in 0..n {
            for j in i + 1..n {
                let xi = LaurentPoly::gen(ring, i);
                let xj = LaurentPoly::gen(ring, j);
                let br = alg.gen_bracket(i, j);
                let (ai, aj) = (&d.alpha[i], &d.alpha[j]);
                let (di, dj) = (&d.delta[i], &d.delta[j]);
                let b = |x: &LaurentPoly, y: &LaurentPoly| alg.bracket(x, y).expect("same ring");
                let res = &(&d.alpha_of(&br) - &b(ai, &xj)) - &b(&xi, aj);
                if !res.is_zero() {
                    ca.fail(format!("({}, {})", ring.name(i), ring.name(j)), res.to_string());
                }
                let res = &(&(&(&d.delta_of(&br) - &b(di, &xj)) - &b(&xi, dj)) - &(ai * dj)) + &(di * aj);
                if !res.is_zero() {
                    cd.fail(format!("({}, {})", ring.name(i), ring.name(j)), res.to_string());
                }
            }
        }
    }
    let mut r = Report::new();
    r.push(ca);
    r.push(cd);
    r
}

/// `B[x; alpha, delta]` with `{x, b} = alpha(b) x + delta(b)`; the new
/// generator is appended after the base generators.
pub fn make_ore_extension(d: &OreData, name: &str) -> Result<PoissonAlgebra> {
    let pre = check_ore_data(d);
    if !pre.passed() {
        return Err(AlgebraError::Precondition(format!("Ore data fails: {}", pre.failed_names().join(", "))));
    }
    let (ext, map) = extend_ring(d.base.ring(), name)?;
    let lift = |p: &LaurentPoly| p.remap(&ext, &map);
    let n = d.base.ring().len();
    let x = LaurentPoly::gen(&ext, n);
    let mut entries: Vec<(usize, usize, LaurentPoly)> =
        d.base.table().iter().map(|(&(i, j), v)| (i, j, lift(v))).collect();
    for i in 0..n {
        let v = &(&lift(&d.alpha[i]) * &x) + &lift(&d.delta[i]);
        entries.push((n, i, v));
    }
    let out = PoissonAlgebra::new(&ext, entries)?;
    let j = out.check_jacobi();
    if !j.passed() {
        return Err(AlgebraError::Precondition("extension violates Jacobi".into()));
    }
    Ok(out)
}

/// Ring with one more generator and the index map of the old generators.
pub fn extend_ring(ring: &Ring, name: &str) -> Result<(Ring, Vec<usize>)> {
    if ring.index_of(name).is_some() {
        return Err(AlgebraError::Invalid(format!("generator `{name}` already exists")));
    }
    let ext = ring.extended(name)?.into_ring();
    Ok((ext, (0..ring.len()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::GeneratorSet;

    fn plane() -> PoissonAlgebra {
        let r = GeneratorSet::parse_list("x y").unwrap();
        PoissonAlgebra::new(&r, vec![(0, 1, LaurentPoly::one(&r))]).unwrap()
    }

    #[test]
    fn bracket_of_square() {
        let a = plane();
        let x = LaurentPoly::var(a.ring(), "x");
        let y = LaurentPoly::var(a.ring(), "y");
        assert_eq!(a.bracket(&(&x * &x), &y).unwrap().to_string(), "2*x");
        assert!(a.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn diagonal_bracket_rejected() {
        let r = GeneratorSet::parse_list("x").unwrap();
        assert!(PoissonAlgebra::new(&r, vec![(0, 0, LaurentPoly::one(&r))]).is_err());
    }

    #[test]
    fn jacobi_failure_reports_cyclic_sum() {
        let r = GeneratorSet::parse_list("x y z").unwrap();
        let v = |n: &str| LaurentPoly::var(&r, n);
        let a = PoissonAlgebra::new(&r, vec![(0, 1, v("x")), (1, 2, v("y")), (2, 0, v("z"))]).unwrap();
        let rep = a.check_jacobi();
        let c = rep.get("jacobi").unwrap();
        assert_eq!(c.failures.len(), 1);
        assert_eq!(c.failures[0].at, "{x,y,z}");
        assert_eq!(c.failures[0].residual, "x + y + z");
    }
}
