//! The quotient Hopf algebra `H = B^e / B^e B^+ = U(a)` with `a = m / m^2`,
//! the coaction `lambda = (id ⊗ pi) Delta^e` of `H` on `B^e`, the map
//! `Upsilon: B^e -> B ⊗ H`, and the cobracket of `a` for connected inputs.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::hopf::{leg_monomial, monomial_poly, HopfData};
use crate::linalg::{invertible_by_unit_pivots, span, SparseVec};
use crate::pbw::{HMonomial, PbwEngine, PbwMap, PbwRules};
use crate::report::{CheckResult, Report};
use crate::ring::{fmt_scaled, LaurentPoly, Monomial, Rational, Ring};
use crate::tensor::{Leg, LegAlgebra, LegComb, LegKind, Tensor};
use crate::uea::{fmt_pbw_leg, h_monomials, PbwElement, Uea};

pub const PBW_THETA: [LegKind; 2] = [LegKind::Pbw, LegKind::Theta];
pub const POLY_THETA: [LegKind; 2] = [LegKind::Poly, LegKind::Theta];
pub const THETA2: [LegKind; 2] = [LegKind::Theta, LegKind::Theta];

/// The Lie algebra `m / m^2` with basis `y_k = theta(x_k)`, where
/// `theta(f) = sum_k eps(d_k f) y_k` and `[y_i, y_j] = theta({x_i, x_j})`.
#[derive(Clone, Debug)]
pub struct LieAlgebraA {
    n: usize,
    consts: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl LieAlgebraA {
    pub fn from_hopf(hopf: &HopfData) -> Self {
        let n = hopf.ring().len();
        let consts = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| theta_vector(hopf, &hopf.poisson().gen_bracket(i, j)))
                    .collect()
            })
            .collect();
        LieAlgebraA { n, consts }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `[y_i, y_j]` as `(k, c_ij^k)` pairs.
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.consts[i][j]
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().flatten().all(Vec::is_empty)
    }
}

impl fmt::Display for LieAlgebraA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for i in 0..self.n {
            for j in 0..i {
                let b = &self.consts[i][j];
                if b.is_empty() {
                    continue;
                }
                if any {
                    writeln!(f)?;
                }
                any = true;
                write!(f, "[y{}, y{}] = {}", i + 1, j + 1, fmt_theta_comb(b))?;
            }
        }
        if !any {
            write!(f, "abelian")?;
        }
        Ok(())
    }
}

fn fmt_theta_comb(v: &[(usize, Rational)]) -> String {
    let mut s = String::new();
    for (idx, (k, c)) in v.iter().enumerate() {
        s.push_str(&fmt_scaled(c, &format!("y{}", k + 1), idx == 0));
    }
    s
}

/// `theta(f)` as `(k, coefficient)` pairs.
pub fn theta_vector(hopf: &HopfData, f: &LaurentPoly) -> Vec<(usize, Rational)> {
    (0..hopf.ring().len())
        .map(|k| (k, hopf.counit(&f.partial(k))))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

pub struct LieRules(LieAlgebraA);

impl PbwRules for LieRules {
    type C = Rational;

    fn letters(&self) -> usize {
        self.0.n
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, c: &Rational) -> bool {
        c.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn ad(&self, _i: usize, _c: &Rational) -> Rational {
        Rational::zero()
    }
    fn commutator(&self, j: usize, i: usize) -> Vec<(usize, Rational)> {
        self.0.consts[j][i].clone()
    }
}

/// Element of `H = U(a)` in the PBW basis `y^K`.
pub type HElement = PbwMap<Rational>;

pub fn fmt_theta(k: &HMonomial) -> String {
    k.fmt_with(|i| format!("y{}", i + 1))
}

pub fn fmt_h_element(e: &HElement) -> String {
    if e.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (idx, (k, c)) in e.iter().rev().enumerate() {
        s.push_str(&fmt_scaled(c, &fmt_theta(k), idx == 0));
    }
    s
}

pub struct Quotient {
    uea: Uea,
    hopf: HopfData,
    lie: LieAlgebraA,
    h: PbwEngine<LieRules>,
}

impl Quotient {
    pub fn new(hopf: &HopfData) -> Result<Self> {
        let uea = Uea::with_hopf(hopf)?;
        let lie = LieAlgebraA::from_hopf(hopf);
        Ok(Quotient { uea, hopf: hopf.clone(), h: PbwEngine::new(LieRules(lie.clone())), lie })
    }

    pub fn uea(&self) -> &Uea {
        &self.uea
    }

    pub fn hopf(&self) -> &HopfData {
        &self.hopf
    }

    pub fn lie(&self) -> &LieAlgebraA {
        &self.lie
    }

    pub fn ring(&self) -> &Ring {
        self.hopf.ring()
    }

    pub fn legs(&self) -> QuotientLegs<'_> {
        QuotientLegs(self)
    }

    pub fn h_mul(&self, a: &HElement, b: &HElement) -> HElement {
        self.h.mul(a, b)
    }

    /// `theta` applied to a monomial of `B`, as a combination of `Theta` legs.
    fn theta_leg(&self, m: &Monomial) -> LegComb {
        let ring = self.ring();
        theta_vector(&self.hopf, &monomial_poly(ring, m))
            .into_iter()
            .map(|(k, c)| (Leg::Theta(HMonomial::var(ring.len(), k)), c))
            .collect()
    }

    /// `pi(f h^I) = eps(f) y^I`.
    pub fn pi(&self, u: &PbwElement) -> HElement {
        let mut out = HElement::new();
        for (h, f) in u.terms() {
            let e = self.hopf.counit(f);
            if !e.is_zero() {
                self.h.add_into(&mut out, h.clone(), e);
            }
        }
        out
    }

    fn pi_leg(&self, l: &Leg) -> LegComb {
        let Leg::Pbw(m, h) = l else { panic!("enveloping algebra leg expected") };
        let e = self.hopf.counit_monomial(m);
        if e.is_zero() {
            Vec::new()
        } else {
            vec![(Leg::Theta(h.clone()), e)]
        }
    }

    /// The coaction `lambda = (id ⊗ pi) Delta^e`.
    pub fn lambda(&self, u: &PbwElement) -> Result<Tensor> {
        self.uea.delta(u)?.map_leg(1, LegKind::Theta, |l| Ok(self.pi_leg(l)))
    }

    /// `Upsilon = (xi ⊗ id) lambda`.
    pub fn upsilon(&self, u: &PbwElement) -> Result<Tensor> {
        Ok(xi_on_leg(&self.lambda(u)?))
    }

    /// `lambda(h_S)` for `h_S = h_{s_1} ... h_{s_n}` from the sum over
    /// subsets `J` and partitions of the complement. Position `p` of `S`
    /// carries label `n - p`, so blocks are ordered by their rightmost
    /// position and the nested actions in `T_J` run outermost-leftmost.
    pub fn partition_lambda(&self, s: &[LaurentPoly]) -> Result<Tensor> {
        self.partition_sum(s, true)
    }

    /// `Upsilon(h_S)` from the same sum restricted to `J` empty.
    pub fn partition_upsilon(&self, s: &[LaurentPoly]) -> Result<Tensor> {
        Ok(xi_on_leg(&self.partition_sum(s, false)?))
    }

    fn partition_sum(&self, s: &[LaurentPoly], with_j: bool) -> Result<Tensor> {
        let n = s.len();
        let ring = self.ring();
        let legs = self.legs();
        let mut out = Tensor::zero(&PBW_THETA);
        let blocks_cache: BTreeMap<u32, Tensor> = (1u32..(1 << n))
            .map(|mask| self.block_tensor(s, mask).map(|t| (mask, t)))
            .collect::<Result<_>>()?;
        let masks: Vec<u32> = if with_j { (0..(1u32 << n)).collect() } else { vec![0] };
        for j in masks {
            let rest = ((1u32 << n) - 1) & !j;
            let h_j = self.uea.product(
                &(0..n).filter(|p| j & (1 << p) != 0).map(|p| self.uea.h_of(&s[p])).collect::<Vec<_>>(),
            );
            for mut partition in set_partitions(rest) {
                partition.sort_by_key(|b| rightmost(*b));
                let mut acc = Tensor::product(
                    &[vec![(Leg::Poly(Monomial::one(ring.len())), Rational::one())], vec![(
                        Leg::Theta(HMonomial::one(ring.len())),
                        Rational::one(),
                    )]],
                    &POLY_THETA,
                    0,
                );
                for b in &partition {
                    acc = acc.mul(&blocks_cache[b], &legs)?;
                }
                for (l, c) in acc.terms() {
                    let t = monomial_poly(ring, leg_monomial(&l[0])).scale(c);
                    for (k, d) in h_j.left_mul(&t).to_legs() {
                        out.add_term(vec![k, l[1].clone()], d);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `sum T_J(a_1) ⊗ theta(a_2)` for the block `J`, where `a` sits at the
    /// rightmost position of `J`.
    fn block_tensor(&self, s: &[LaurentPoly], mask: u32) -> Result<Tensor> {
        let ring = self.ring();
        let alg = self.hopf.poisson();
        let r = rightmost(mask);
        let others: Vec<usize> = (0..r).filter(|p| mask & (1 << p) != 0).collect();
        let mut out = Tensor::zero(&POLY_THETA);
        for (l, c) in self.hopf.delta(&s[r]).terms() {
            let mut t = monomial_poly(ring, leg_monomial(&l[0])).scale(c);
            for &p in others.iter().rev() {
                t = alg.bracket(&s[p], &t)?;
            }
            let th = self.theta_leg(leg_monomial(&l[1]));
            out = out.add(&Tensor::product(&[crate::hopf::poly_comb(&t), th], &POLY_THETA, 0));
        }
        Ok(out)
    }

    /// `h_a . (b ⊗ k) = {a, b} ⊗ k + a_1 b ⊗ theta(a_2) k` on `B ⊗ H`.
    pub fn h_act(&self, a: &LaurentPoly, t: &Tensor) -> Result<Tensor> {
        let ring = self.ring();
        let alg = self.hopf.poisson();
        let legs = self.legs();
        let mut out = Tensor::zero(&POLY_THETA);
        for (l, c) in t.terms() {
            let b = monomial_poly(ring, leg_monomial(&l[0])).scale(c);
            let k = vec![(l[1].clone(), Rational::one())];
            out = out.add(&Tensor::product(&[crate::hopf::poly_comb(&alg.bracket(a, &b)?), k.clone()], &POLY_THETA, 0));
        }
        let mut p = Tensor::zero(&POLY_THETA);
        for (l, c) in self.hopf.delta(a).terms() {
            p = p.add(&Tensor::product(
                &[vec![(l[0].clone(), c.clone())], self.theta_leg(leg_monomial(&l[1]))],
                &POLY_THETA,
                0,
            ));
        }
        out = out.add(&p.mul(t, &legs)?);
        Ok(out)
    }

    /// `Upsilon` through the `B^e`-module structure of `B ⊗ H`:
    /// `Upsilon(f h_{s_1} ... h_{s_n}) = f (h_{s_1} . ( ... (h_{s_n} . 1 ⊗ 1)))`.
    pub fn upsilon_by_action(&self, u: &PbwElement) -> Result<Tensor> {
        let ring = self.ring();
        let mut out = Tensor::zero(&POLY_THETA);
        let unit = Tensor::product(
            &[vec![(Leg::Poly(Monomial::one(ring.len())), Rational::one())], vec![(
                Leg::Theta(HMonomial::one(ring.len())),
                Rational::one(),
            )]],
            &POLY_THETA,
            0,
        );
        for (h, f) in u.terms() {
            let mut t = unit.clone();
            for &i in h.letters().iter().rev() {
                t = self.h_act(&LaurentPoly::gen(ring, i), &t)?;
            }
            let scale = Tensor::product(
                &[crate::hopf::poly_comb(f), vec![(Leg::Theta(HMonomial::one(ring.len())), Rational::one())]],
                &POLY_THETA,
                0,
            );
            out = out.add(&scale.mul(&t, &self.legs())?);
        }
        Ok(out)
    }

    /// Comodule-algebra axioms of `lambda` and the coinvariance of `B`, on
    /// the PBW basis of degree at most `d`.
    pub fn check_comodule(&self, d: u32) -> Result<Report> {
        let ring = self.ring().clone();
        let legs = self.legs();
        let basis = self.uea.slab(d);
        let mut coassoc = CheckResult::new("comodule-coassociativity");
        let mut counit = CheckResult::new("comodule-counit");
        let mut coinv = CheckResult::new("comodule-coinvariants");
        let mut pi_coalg = CheckResult::new("pi-coalgebra");
        for u in &basis {
            let at = u.to_string();
            let l = self.lambda(u)?;
            let lhs = l.expand_leg(0, &PBW_THETA, |leg| {
                self.lambda(&PbwElement::from_legs(&ring, &[(leg.clone(), Rational::one())]))
            })?;
            let rhs = l.expand_leg(1, &THETA2, |leg| Ok(self.h_delta_leg(leg)))?;
            let res = lhs.sub(&rhs);
            if !res.is_zero() {
                coassoc.fail(at.clone(), res.display(&legs));
            }
            let mut back = PbwElement::zero(&ring);
            for (l2, c) in l.terms() {
                if let Leg::Theta(k) = &l2[1] {
                    if k.is_one() {
                        back = back.add(&PbwElement::from_legs(&ring, &[(l2[0].clone(), c.clone())]));
                    }
                }
            }
            let res = back.sub(u);
            if !res.is_zero() {
                counit.fail(at.clone(), res.to_string());
            }
            if u.h_degree() == 0 {
                let expect = Tensor::product(
                    &[u.to_legs(), vec![(Leg::Theta(HMonomial::one(ring.len())), Rational::one())]],
                    &PBW_THETA,
                    0,
                );
                let res = l.sub(&expect);
                if !res.is_zero() {
                    coinv.fail(at.clone(), res.display(&legs));
                }
            }
            let lhs = self.uea.delta(u)?;
            let lhs = lhs.map_leg(0, LegKind::Theta, |x| Ok(self.pi_leg(x)))?;
            let lhs = lhs.map_leg(1, LegKind::Theta, |x| Ok(self.pi_leg(x)))?;
            let mut rhs = Tensor::zero(&THETA2);
            for (k, c) in self.pi(u) {
                rhs = rhs.add(&self.h_delta_leg(&Leg::Theta(k)).scale(&c));
            }
            let res = lhs.sub(&rhs);
            if !res.is_zero() {
                pi_coalg.fail(at, res.display(&legs));
            }
        }
        let mut alg = CheckResult::new("comodule-algebra");
        let low = self.uea.slab(1);
        for u in &self.uea.slab(d.saturating_sub(1).max(1)) {
            for v in &low {
                let res = self.lambda(&self.uea.mul(u, v))?.sub(&self.lambda(u)?.mul(&self.lambda(v)?, &legs)?);
                if !res.is_zero() {
                    alg.fail(format!("{u} * {v}"), res.display(&legs));
                }
            }
        }
        let mut report = Report::new();
        for c in [coassoc, counit, alg, coinv, pi_coalg] {
            report.push(c);
        }
        Ok(report)
    }

    /// `Delta_H(y^K)`, with every `y_k` primitive.
    fn h_delta_leg(&self, l: &Leg) -> Tensor {
        let Leg::Theta(k) = l else { panic!("theta leg expected") };
        let n = self.ring().len();
        let one = HMonomial::one(n);
        let mut acc = Tensor::product(
            &[vec![(Leg::Theta(one.clone()), Rational::one())], vec![(Leg::Theta(one.clone()), Rational::one())]],
            &THETA2,
            0,
        );
        for i in k.letters() {
            let y = HMonomial::var(n, i);
            let mut prim = Tensor::zero(&THETA2);
            prim.add_term(vec![Leg::Theta(y.clone()), Leg::Theta(one.clone())], Rational::one());
            prim.add_term(vec![Leg::Theta(one.clone()), Leg::Theta(y)], Rational::one());
            acc = acc.mul(&prim, &self.legs()).expect("theta legs");
        }
        acc
    }

    /// `Upsilon` is injective on the slab of degree `d` (rank test over Q),
    /// and its matrix over `B` in the bases `h^I` and `1 ⊗ y^K` is
    /// invertible by elimination with unit pivots.
    pub fn check_normal_basis(&self, d: u32) -> Result<Report> {
        let ring = self.ring().clone();
        let basis = self.uea.slab(d);
        let images: Vec<SparseVec<Vec<Leg>>> = basis
            .par_iter()
            .map(|u| self.upsilon(u).map(|t| tensor_vector(&t)))
            .collect::<Result<_>>()?;
        let rank = span(&images).rank();
        let mut inj = CheckResult::new("normal-basis-rank");
        if rank != basis.len() {
            inj.fail(format!("degree {d}"), format!("rank {rank} < {}", basis.len()));
        }
        let hs: Vec<HMonomial> = (0..=d).flat_map(|k| h_monomials(ring.len(), k)).collect();
        let rows: Vec<BTreeMap<HMonomial, LaurentPoly>> = hs
            .iter()
            .map(|h| {
                let u = PbwElement::term(&LaurentPoly::one(&ring), h.clone());
                self.upsilon(&u).map(|t| {
                    let mut row: BTreeMap<HMonomial, LaurentPoly> = BTreeMap::new();
                    for (l, c) in t.terms() {
                        let (Leg::Poly(m), Leg::Theta(k)) = (&l[0], &l[1]) else { continue };
                        let e = row.entry(k.clone()).or_insert_with(|| LaurentPoly::zero(&ring));
                        *e = &*e + &LaurentPoly::term(&ring, m.clone(), c.clone());
                    }
                    row
                })
            })
            .collect::<Result<_>>()?;
        let mut free = CheckResult::new("normal-basis-free");
        let bad: Vec<&HMonomial> = hs.iter().zip(&rows).filter(|(_, r)| r.keys().any(|k| !hs.contains(k))).map(|(h, _)| h).collect();
        if let Some(h) = bad.first() {
            free.fail(crate::uea::fmt_h(&ring, h), "image leaves the slab");
        } else if !invertible_by_unit_pivots(rows, &hs) {
            free.fail(format!("degree {d}"), "no unit pivot");
        }
        let mut report = Report::new();
        report.push(inj);
        report.push(free);
        Ok(report)
    }

    /// `beta(x ⊗ y) = (x ⊗ 1) lambda(y)`.
    pub fn beta(&self, x: &PbwElement, y: &PbwElement) -> Result<Tensor> {
        let one = vec![(Leg::Theta(HMonomial::one(self.ring().len())), Rational::one())];
        let left = Tensor::product(&[x.to_legs(), one], &PBW_THETA, 0);
        left.mul(&self.lambda(y)?, &self.legs())
    }

    /// Every basis element `u ⊗ y^K` of total degree at most `target` lies in
    /// the span of `beta(x ⊗ y)` with `x` of degree at most `target + 1` and
    /// `y` of degree at most `target`.
    pub fn check_galois(&self, target: u32) -> Result<CheckResult> {
        let ring = self.ring().clone();
        let xs = self.uea.slab(target + 1);
        let ys = self.uea.slab(target);
        let lambdas: Vec<Tensor> = ys.par_iter().map(|y| self.lambda(y)).collect::<Result<_>>()?;
        let legs = self.legs();
        let one = vec![(Leg::Theta(HMonomial::one(ring.len())), Rational::one())];
        let images: Vec<SparseVec<Vec<Leg>>> = xs
            .par_iter()
            .flat_map_iter(|x| {
                let left = Tensor::product(&[x.to_legs(), one.clone()], &PBW_THETA, 0);
                lambdas.iter().map(move |l| left.mul(l, &self.legs())).collect::<Vec<_>>()
            })
            .map(|t| t.map(|t| tensor_vector(&t)))
            .collect::<Result<_>>()?;
        let e = span(&images);
        let mut check = CheckResult::new("galois-surjective");
        for k in 0..=target {
            for th in h_monomials(ring.len(), k) {
                for u in self.uea.slab(target - k) {
                    let t = Tensor::product(&[u.to_legs(), vec![(Leg::Theta(th.clone()), Rational::one())]], &PBW_THETA, 0);
                    if !e.contains(&tensor_vector(&t)) {
                        check.fail("", t.display(&legs));
                        return Ok(check);
                    }
                }
            }
        }
        Ok(check)
    }

    /// Bijectivity of `beta` up to `theta`-degree `d`. As a map of left
    /// `B^e`-modules, `beta` sends the basis `1 ⊗ h^I` to
    /// `lambda(h^I) = sum_K c_IK ⊗ y^K`. It is bijective when `c_IK = 0`
    /// for `|K| > |I|` and each block `|K| = |I|` has entries in `B` and is
    /// invertible there.
    pub fn check_galois_triangular(&self, d: u32) -> Result<CheckResult> {
        let ring = self.ring().clone();
        let n = ring.len();
        let mut check = CheckResult::new("galois-bijective");
        for k in 0..=d {
            let hs = h_monomials(n, k);
            let mut rows: Vec<BTreeMap<HMonomial, LaurentPoly>> = Vec::with_capacity(hs.len());
            for h in &hs {
                let t = self.lambda(&PbwElement::term(&LaurentPoly::one(&ring), h.clone()))?;
                let mut row: BTreeMap<HMonomial, LaurentPoly> = BTreeMap::new();
                for (l, c) in t.terms() {
                    let (Leg::Pbw(m, hm), Leg::Theta(th)) = (&l[0], &l[1]) else { continue };
                    if th.degree() > k {
                        check.fail(crate::uea::fmt_h(&ring, h), format!("raises degree to {}", fmt_theta(th)));
                        return Ok(check);
                    }
                    if th.degree() < k {
                        continue;
                    }
                    if !hm.is_one() {
                        check.fail(crate::uea::fmt_h(&ring, h), "diagonal entry outside B");
                        return Ok(check);
                    }
                    let e = row.entry(th.clone()).or_insert_with(|| LaurentPoly::zero(&ring));
                    *e = &*e + &LaurentPoly::term(&ring, m.clone(), c.clone());
                }
                rows.push(row);
            }
            if !invertible_by_unit_pivots(rows, &hs) {
                check.fail(format!("degree {k}"), "no unit pivot");
                return Ok(check);
            }
        }
        Ok(check)
    }

    /// `delta'(y_i) = (theta ⊗ theta)(Delta - Delta^op)(x_i)`. Defined for
    /// inputs without group-likes, where `m / m^2` inherits a cobracket.
    pub fn cobracket(&self, i: usize) -> Result<Tensor> {
        let ring = self.ring();
        if (0..ring.len()).any(|k| ring.is_invertible(k)) {
            return Err(AlgebraError::Precondition("the cobracket needs a connected input without group-likes".into()));
        }
        Ok(self.theta_theta(&antisym(self.hopf.gen_delta(i))))
    }

    fn theta_theta(&self, t: &Tensor) -> Tensor {
        let a = t.map_leg(0, LegKind::Theta, |l| Ok(self.theta_leg(leg_monomial(l)))).expect("poly legs");
        a.map_leg(1, LegKind::Theta, |l| Ok(self.theta_leg(leg_monomial(l)))).expect("poly legs")
    }

    /// Antisymmetry, well-definedness on `m^2`, co-Jacobi and the cocycle
    /// condition `delta'[a, b] = a . delta'(b) - b . delta'(a)`.
    pub fn check_cobracket(&self) -> Result<Report> {
        let ring = self.ring().clone();
        let n = ring.len();
        let legs = self.legs();
        let cob: Vec<Tensor> = (0..n).map(|i| self.cobracket(i)).collect::<Result<_>>()?;
        let mut anti = CheckResult::new("cobracket-antisymmetric");
        for (i, c) in cob.iter().enumerate() {
            let res = c.add(&c.permute(&[1, 0]));
            if !res.is_zero() {
                anti.fail(format!("y{}", i + 1), res.display(&legs));
            }
        }
        let mut well = CheckResult::new("cobracket-well-defined");
        for i in 0..n {
            for j in i..n {
                let f = &LaurentPoly::gen(&ring, i) * &LaurentPoly::gen(&ring, j);
                let res = self.theta_theta(&antisym(&self.hopf.delta(&f)));
                if !res.is_zero() {
                    well.fail(format!("{}*{}", ring.name(i), ring.name(j)), res.display(&legs));
                }
            }
        }
        let mut cojac = CheckResult::new("cobracket-cojacobi");
        for (i, c) in cob.iter().enumerate() {
            let t = c.expand_leg(0, &THETA2, |l| self.cobracket_leg(&cob, l))?;
            let res = t.add(&t.permute(&[1, 2, 0])).add(&t.permute(&[2, 0, 1]));
            if !res.is_zero() {
                cojac.fail(format!("y{}", i + 1), res.display(&legs));
            }
        }
        let mut cocycle = CheckResult::new("cobracket-cocycle");
        for i in 0..n {
            for j in 0..n {
                let mut lhs = Tensor::zero(&THETA2);
                for (k, c) in self.lie.bracket(i, j) {
                    lhs = lhs.add(&cob[*k].scale(c));
                }
                let rhs = self.ad_tensor(i, &cob[j]).sub(&self.ad_tensor(j, &cob[i]));
                let res = lhs.sub(&rhs);
                if !res.is_zero() {
                    cocycle.fail(format!("[y{}, y{}]", i + 1, j + 1), res.display(&legs));
                }
            }
        }
        let mut report = Report::new();
        for c in [anti, well, cojac, cocycle] {
            report.push(c);
        }
        Ok(report)
    }

    fn cobracket_leg(&self, cob: &[Tensor], l: &Leg) -> Result<Tensor> {
        let Leg::Theta(k) = l else { return Err(AlgebraError::LegKind("theta leg expected".into())) };
        match k.letters().as_slice() {
            [i] => Ok(cob[*i].clone()),
            _ => Err(AlgebraError::Invalid("cobracket is applied to basis vectors of a only".into())),
        }
    }

    /// `y_i . (u ⊗ v) = [y_i, u] ⊗ v + u ⊗ [y_i, v]` for `u, v` in `a`.
    fn ad_tensor(&self, i: usize, t: &Tensor) -> Tensor {
        let ad = |l: &Leg| -> Result<LegComb> {
            let Leg::Theta(k) = l else { return Err(AlgebraError::LegKind("theta leg expected".into())) };
            let j = k.first().expect("degree one");
            Ok(self
                .lie
                .bracket(i, j)
                .iter()
                .map(|(m, c)| (Leg::Theta(HMonomial::var(self.lie.n, *m)), c.clone()))
                .collect())
        };
        t.map_leg(0, LegKind::Theta, ad).expect("theta legs").add(&t.map_leg(1, LegKind::Theta, ad).expect("theta legs"))
    }
}

fn antisym(t: &Tensor) -> Tensor {
    t.sub(&t.permute(&[1, 0]))
}

/// Keeps the `B` part of the first leg of a `[Pbw, Theta]` tensor.
fn xi_on_leg(t: &Tensor) -> Tensor {
    let mut out = Tensor::zero(&POLY_THETA);
    for (l, c) in t.terms() {
        if let Leg::Pbw(m, h) = &l[0] {
            if h.is_one() {
                out.add_term(vec![Leg::Poly(m.clone()), l[1].clone()], c.clone());
            }
        }
    }
    out
}

pub fn tensor_vector(t: &Tensor) -> SparseVec<Vec<Leg>> {
    t.terms().map(|(l, c)| (l.clone(), c.clone())).collect()
}

fn rightmost(mask: u32) -> usize {
    (31 - mask.leading_zeros()) as usize
}

/// All set partitions of the positions in `mask`, as lists of block masks.
fn set_partitions(mask: u32) -> Vec<Vec<u32>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let first = mask.trailing_zeros();
    let rest = mask & !(1 << first);
    let mut out = Vec::new();
    let mut sub = rest;
    loop {
        let block = sub | (1 << first);
        for mut p in set_partitions(rest & !sub) {
            p.push(block);
            out.push(p);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out
}

/// Leg arithmetic over `B`, `B^e` and `H`.
pub struct QuotientLegs<'a>(pub &'a Quotient);

impl LegAlgebra for QuotientLegs<'_> {
    fn mul_legs(&self, a: &Leg, b: &Leg) -> Result<LegComb> {
        match (a, b) {
            (Leg::Theta(x), Leg::Theta(y)) => {
                let q = self.0;
                let u = HElement::from([(x.clone(), Rational::one())]);
                let v = HElement::from([(y.clone(), Rational::one())]);
                Ok(q.h_mul(&u, &v).into_iter().map(|(k, c)| (Leg::Theta(k), c)).collect())
            }
            _ => self.0.uea.legs().mul_legs(a, b),
        }
    }

    fn fmt_leg(&self, leg: &Leg) -> String {
        match leg {
            Leg::Theta(k) => fmt_theta(k),
            Leg::Pbw(m, h) => fmt_pbw_leg(self.0.ring(), m, h),
            Leg::Poly(m) => self.0.ring().fmt_monomial(m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{derive_antipode, tensor_of};
    use crate::poisson::PoissonAlgebra;
    use crate::ring::{int, GeneratorSet};

    fn type_a() -> HopfData {
        let r = GeneratorSet::parse_list("g* x").unwrap();
        let g = LaurentPoly::var(&r, "g");
        let x = LaurentPoly::var(&r, "x");
        let one = LaurentPoly::one(&r);
        let alg = PoissonAlgebra::new(&r, vec![(1, 0, &g * &x)]).unwrap();
        let delta = vec![tensor_of(&[&g, &g]), tensor_of(&[&x, &one]).add(&tensor_of(&[&g, &x]))];
        let s = derive_antipode(&r, &delta, &[int(1), int(0)], vec![None, None]).unwrap();
        HopfData::new(alg, delta, vec![int(1), int(0)], s).unwrap()
    }

    #[test]
    fn partitions_are_bell_numbers() {
        let counts: Vec<usize> = (0..6).map(|n| set_partitions((1 << n) - 1).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn type_a_lie_algebra() {
        let q = Quotient::new(&type_a()).unwrap();
        assert_eq!(q.lie().to_string(), "[y2, y1] = y2");
    }

    #[test]
    fn lambda_of_h_x() {
        let q = Quotient::new(&type_a()).unwrap();
        let l = q.lambda(&q.uea().h_gen(1)).unwrap();
        assert_eq!(l.display(&q.legs()), "g@y2 + h(x)@1");
    }

    #[test]
    fn partition_formula_matches_coaction() {
        let q = Quotient::new(&type_a()).unwrap();
        let r = q.ring().clone();
        let s = vec![LaurentPoly::var(&r, "x"), LaurentPoly::var(&r, "g"), LaurentPoly::var(&r, "x")];
        let hs: Vec<PbwElement> = s.iter().map(|a| q.uea().h_of(a)).collect();
        let u = q.uea().product(&hs);
        assert_eq!(q.partition_lambda(&s).unwrap(), q.lambda(&u).unwrap());
        assert_eq!(q.partition_upsilon(&s).unwrap(), q.upsilon(&u).unwrap());
        assert_eq!(q.upsilon_by_action(&u).unwrap(), q.upsilon(&u).unwrap());
    }

    #[test]
    fn type_a_comodule_and_normal_basis() {
        let q = Quotient::new(&type_a()).unwrap();
        let r = q.check_comodule(2).unwrap();
        assert!(r.passed(), "{r}");
        let r = q.check_normal_basis(2).unwrap();
        assert!(r.passed(), "{r}");
        assert!(q.check_galois(1).unwrap().passed());
    }
}
