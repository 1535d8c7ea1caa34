//! Poisson cohomology with coefficients in `A` on multiderivations, the
//! homology differential on `A^e ⊗_A Omega^n`, and degreewise `HP^s` for
//! graded polynomial Poisson algebras.

use std::collections::BTreeMap;
use std::fmt;

use num::One;

use crate::error::{AlgebraError, Result};
use crate::linalg::{span, SparseVec};
use crate::pbw::HMonomial;
use crate::poisson::PoissonAlgebra;
use crate::random::{self, Rng64};
use crate::ring::{LaurentPoly, Monomial, Rational, Ring};
use crate::uea::{PbwElement, Uea};

/// Alternating `s`-derivation, stored by its values on increasing tuples
/// of generator differentials.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiDerivation {
    pub arity: usize,
    pub comps: BTreeMap<Vec<usize>, LaurentPoly>,
}

impl MultiDerivation {
    pub fn zero(arity: usize) -> Self {
        MultiDerivation { arity, comps: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn set(&mut self, idx: Vec<usize>, p: LaurentPoly) {
        if p.is_zero() {
            self.comps.remove(&idx);
        } else {
            self.comps.insert(idx, p);
        }
    }

    /// Value on generators in any order; zero on repeats.
    pub fn on_generators(&self, ring: &Ring, idx: &[usize]) -> LaurentPoly {
        match sort_sign(idx) {
            None => LaurentPoly::zero(ring),
            Some((sorted, sign)) => match self.comps.get(&sorted) {
                Some(p) => if sign { p.clone() } else { -p },
                None => LaurentPoly::zero(ring),
            },
        }
    }

    /// `Q(f_1, ..., f_s) = sum Q(x_k1, ..., x_ks) d_k1 f_1 ... d_ks f_s`.
    pub fn eval(&self, ring: &Ring, fs: &[LaurentPoly]) -> LaurentPoly {
        let n = ring.len();
        let partials: Vec<Vec<LaurentPoly>> = fs.iter().map(|f| (0..n).map(|k| f.partial(k)).collect()).collect();
        let mut out = LaurentPoly::zero(ring);
        let mut idx = vec![0usize; fs.len()];
        fn rec(
            q: &MultiDerivation,
            ring: &Ring,
            partials: &[Vec<LaurentPoly>],
            pos: usize,
            idx: &mut Vec<usize>,
            acc: LaurentPoly,
            out: &mut LaurentPoly,
        ) {
            if acc.is_zero() {
                return;
            }
            if pos == idx.len() {
                let v = q.on_generators(ring, idx);
                if !v.is_zero() {
                    *out = &*out + &(&acc * &v);
                }
                return;
            }
            for k in 0..ring.len() {
                if idx[..pos].contains(&k) || partials[pos][k].is_zero() {
                    continue;
                }
                idx[pos] = k;
                rec(q, ring, partials, pos + 1, idx, &acc * &partials[pos][k], out);
            }
        }
        rec(self, ring, &partials, 0, &mut idx, LaurentPoly::one(ring), &mut out);
        out
    }

    pub fn vector(&self) -> SparseVec<(Vec<usize>, Monomial)> {
        let mut v = SparseVec::new();
        for (idx, p) in &self.comps {
            for (m, c) in p.terms() {
                v.insert((idx.clone(), m.clone()), c.clone());
            }
        }
        v
    }

    pub fn random(ring: &Ring, arity: usize, rng: &mut Rng64) -> Self {
        let mut q = MultiDerivation::zero(arity);
        for idx in subsets(ring.len(), arity) {
            q.set(idx, random::poly(ring, rng, 2, 3));
        }
        q
    }

    pub fn display(&self, ring: &Ring) -> String {
        if self.comps.is_empty() {
            return "0".into();
        }
        self.comps
            .iter()
            .map(|(idx, p)| {
                let names: Vec<String> = idx.iter().map(|&i| format!("d{}", ring.name(i))).collect();
                format!("({}) -> {}", names.join(","), p)
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Sorts `idx`, returning the sign of the permutation (`true` for even), or
/// `None` on a repeated index.
fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut even = true;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            even = !even;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, even))
}

/// Increasing `s`-subsets of `0..n`.
pub fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(0, n, s, &mut Vec::new(), &mut out);
    out
}

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn require_free(alg: &PoissonAlgebra) -> Result<()> {
    if alg.ring().is_free() {
        Ok(())
    } else {
        Err(AlgebraError::Unsupported("cochains need free Kähler differentials: no side relations".into()))
    }
}

/// `(dQ)(f_0..f_s) = sum_i (-1)^i {f_i, Q(..f_i^..)} + sum_{i<j} (-1)^{i+j} Q({f_i, f_j}, ..f_i^..f_j^..)`,
/// evaluated on increasing generator tuples.
pub fn coboundary(alg: &PoissonAlgebra, q: &MultiDerivation) -> Result<MultiDerivation> {
    require_free(alg)?;
    let ring = alg.ring().clone();
    let s = q.arity;
    let mut out = MultiDerivation::zero(s + 1);
    for idx in subsets(ring.len(), s + 1) {
        let gens: Vec<LaurentPoly> = idx.iter().map(|&i| LaurentPoly::gen(&ring, i)).collect();
        let mut v = LaurentPoly::zero(&ring);
        for i in 0..=s {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|(p, _)| *p != i).map(|(_, &k)| k).collect();
            let inner = q.on_generators(&ring, &rest);
            if !inner.is_zero() {
                v = &v + &alg.bracket(&gens[i], &inner)?.scale(&sign(i));
            }
        }
        for i in 0..=s {
            for j in i + 1..=s {
                let b = alg.gen_bracket(idx[i], idx[j]);
                if b.is_zero() {
                    continue;
                }
                let mut args = vec![b];
                args.extend(gens.iter().enumerate().filter(|(p, _)| *p != i && *p != j).map(|(_, g)| g.clone()));
                v = &v + &q.eval(&ring, &args).scale(&sign(i + j));
            }
        }
        out.set(idx, v);
    }
    Ok(out)
}

/// Chain `sum u_I ⊗ dx_I` in `A^e ⊗_A Omega^n`, with `I` increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainElement {
    pub degree: usize,
    pub terms: BTreeMap<Vec<usize>, PbwElement>,
}

impl ChainElement {
    pub fn zero(degree: usize) -> Self {
        ChainElement { degree, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, idx: Vec<usize>, u: PbwElement) {
        let next = match self.terms.get(&idx) {
            Some(v) => v.add(&u),
            None => u,
        };
        if next.is_zero() {
            self.terms.remove(&idx);
        } else {
            self.terms.insert(idx, next);
        }
    }

    pub fn random(uea: &Uea, degree: usize, rng: &mut Rng64) -> Self {
        use rand::Rng;
        let ring = uea.ring().clone();
        let mut c = ChainElement::zero(degree);
        for idx in subsets(ring.len(), degree) {
            let mut u = PbwElement::zero(&ring);
            for _ in 0..2 {
                let letters: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..ring.len())).collect();
                let h = HMonomial::from_letters(ring.len(), &letters);
                u = u.add(&PbwElement::term(&random::poly(&ring, rng, 2, 2), h));
            }
            c.add_term(idx, u);
        }
        c
    }

    pub fn display(&self, ring: &Ring) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(idx, u)| {
                let w: Vec<String> = idx.iter().map(|&i| format!("d{}", ring.name(i))).collect();
                format!("({u}) @ {}", if w.is_empty() { "1".into() } else { w.join("^") })
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `b(u ⊗ dx_1..dx_n) = sum_i (-1)^(i+1) u h_{x_i} ⊗ ..dx_i^..
///   + sum_{i<j} (-1)^(i+j) u ⊗ d{x_i, x_j} ..dx_i^..dx_j^..`, with
/// `d{x_i, x_j}` expanded by the Leibniz rule and its coefficients moved
/// into `A^e` through `u ⊗ f w = u m_f ⊗ w`.
pub fn homology_boundary(uea: &Uea, c: &ChainElement) -> Result<ChainElement> {
    require_free(uea.poisson())?;
    let ring = uea.ring().clone();
    let alg = uea.poisson();
    if c.degree == 0 {
        return Ok(ChainElement::zero(0));
    }
    let mut out = ChainElement::zero(c.degree - 1);
    for (idx, u) in &c.terms {
        let n = idx.len();
        for p in 0..n {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|(q, _)| *q != p).map(|(_, &k)| k).collect();
            out.add_term(rest, uea.mul(u, &uea.h_gen(idx[p])).scale(&sign(p)));
        }
        for p in 0..n {
            for q in p + 1..n {
                let b = alg.gen_bracket(idx[p], idx[q]);
                if b.is_zero() {
                    continue;
                }
                let rest: Vec<usize> =
                    idx.iter().enumerate().filter(|(r, _)| *r != p && *r != q).map(|(_, &k)| k).collect();
                for k in 0..ring.len() {
                    let ck = b.partial(k);
                    if ck.is_zero() || rest.contains(&k) {
                        continue;
                    }
                    let below = rest.iter().filter(|&&r| r < k).count();
                    let mut w = rest.clone();
                    w.insert(below, k);
                    let coef = uea.mul(u, &uea.m(&ck)).scale(&(sign(p + q) * sign(below)));
                    out.add_term(w, coef);
                }
            }
        }
    }
    Ok(out)
}

/// Dimensions of `HP^s_d` for `d` in `0..=max_degree`, where a component
/// `Q(x_I) = p` has internal degree `deg p - sum_I deg x_i + s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpDims {
    pub s: usize,
    pub dims: Vec<usize>,
}

impl fmt::Display for HpDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, k) in self.dims.iter().enumerate() {
            writeln!(f, "HP^{}_{} = {}", self.s, d, k)?;
        }
        Ok(())
    }
}

fn degrees(ring: &Ring) -> Vec<i64> {
    match ring.grading() {
        Some(g) => g.iter().map(|&d| d as i64).collect(),
        None => vec![1; ring.len()],
    }
}

fn weighted(m: &Monomial, deg: &[i64]) -> i64 {
    m.0.iter().zip(deg).map(|(&e, &d)| e as i64 * d).sum()
}

/// Monomials of weighted degree exactly `k` in a polynomial ring.
fn monomials_of_degree(ring: &Ring, deg: &[i64], k: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if k < 0 {
        return out;
    }
    fn rec(deg: &[i64], i: usize, left: i64, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if i == deg.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let mut e = 0;
        while e as i64 * deg[i] <= left {
            cur[i] = e;
            rec(deg, i + 1, left - e as i64 * deg[i], cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    rec(deg, 0, k, &mut vec![0; ring.len()], &mut out);
    out
}

/// The common degree shift of the bracket, if it is homogeneous.
pub fn bracket_degree(alg: &PoissonAlgebra) -> Result<Option<i64>> {
    let ring = alg.ring();
    let deg = degrees(ring);
    let mut shift: Option<i64> = None;
    for ((i, j), p) in alg.table() {
        for (m, _) in p.terms() {
            let c = weighted(m, &deg) - deg[*i] - deg[*j];
            match shift {
                None => shift = Some(c),
                Some(s) if s != c => {
                    return Err(AlgebraError::Precondition(format!(
                        "bracket is not homogeneous: {{{},{}}} = {p}",
                        ring.name(*i),
                        ring.name(*j)
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(shift)
}

/// Basis of the cochains of arity `s` and internal degree `d`.
fn cochain_basis(ring: &Ring, s: usize, d: i64) -> Vec<MultiDerivation> {
    let deg = degrees(ring);
    let mut out = Vec::new();
    for idx in subsets(ring.len(), s) {
        let k = d + idx.iter().map(|&i| deg[i]).sum::<i64>() - s as i64;
        for m in monomials_of_degree(ring, &deg, k) {
            let mut q = MultiDerivation::zero(s);
            q.set(idx.clone(), LaurentPoly::term(ring, m, Rational::one()));
            out.push(q);
        }
    }
    out
}

fn image_rank(alg: &PoissonAlgebra, basis: &[MultiDerivation]) -> Result<usize> {
    let vs: Vec<SparseVec<(Vec<usize>, Monomial)>> =
        basis.iter().map(|q| coboundary(alg, q).map(|d| d.vector())).collect::<Result<_>>()?;
    Ok(span(&vs).rank())
}

pub fn hp_compute(alg: &PoissonAlgebra, s: usize, max_degree: u32) -> Result<HpDims> {
    require_free(alg)?;
    let ring = alg.ring();
    if (0..ring.len()).any(|i| ring.is_invertible(i)) {
        return Err(AlgebraError::Unsupported("degreewise cohomology needs a graded polynomial ring".into()));
    }
    let shift = bracket_degree(alg)?.map(|c| c + 1);
    let mut dims = Vec::new();
    for d in 0..=max_degree as i64 {
        let here = cochain_basis(ring, s, d);
        let closed = here.len() - image_rank(alg, &here)?;
        let exact = match (s, shift) {
            (0, _) | (_, None) => 0,
            (_, Some(c)) => image_rank(alg, &cochain_basis(ring, s - 1, d - c))?,
        };
        dims.push(closed - exact);
    }
    Ok(HpDims { s, dims })
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
    fn coboundary_of_x() {
        let a = plane();
        let r = a.ring().clone();
        let mut q = MultiDerivation::zero(0);
        q.set(vec![], LaurentPoly::var(&r, "x"));
        let d = coboundary(&a, &q).unwrap();
        assert_eq!(d.display(&r), "(dy) -> -1");
    }

    #[test]
    fn symplectic_plane_cohomology() {
        let a = plane();
        assert_eq!(hp_compute(&a, 0, 6).unwrap().dims, vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(hp_compute(&a, 1, 6).unwrap().dims, vec![0; 7]);
        assert_eq!(hp_compute(&a, 2, 6).unwrap().dims, vec![0; 7]);
    }

    #[test]
    fn trivial_line() {
        let r = GeneratorSet::parse_list("x").unwrap();
        let a = PoissonAlgebra::trivial(&r);
        assert_eq!(hp_compute(&a, 1, 6).unwrap().dims, vec![1; 7]);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let a = plane();
        let u = Uea::new(&a).unwrap();
        let mut rng = random::rng(3);
        for _ in 0..10 {
            let c = ChainElement::random(&u, 2, &mut rng);
            let bb = homology_boundary(&u, &homology_boundary(&u, &c).unwrap()).unwrap();
            assert!(bb.is_zero(), "{}", bb.display(a.ring()));
        }
    }
}
