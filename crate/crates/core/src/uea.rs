//! The universal enveloping algebra `B^e` of a Poisson algebra, in the PBW
//! normal form `sum f_I h^I` with coefficients on the left, and its Hopf
//! structure when `B` is a Poisson Hopf algebra.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::hopf::{leg_monomial, monomial_poly, HopfData};
use crate::pbw::{HMonomial, PbwEngine, PbwMap, PbwRules};
use crate::poisson::PoissonAlgebra;
use crate::report::{CheckResult, Report};
use crate::ring::{fmt_scaled, same_ring, LaurentPoly, Monomial, Rational, Ring};
use crate::tensor::{Leg, LegAlgebra, LegComb, LegKind, Tensor};

pub const PBW2: [LegKind; 2] = [LegKind::Pbw, LegKind::Pbw];

/// Commutation data of `B^e`: `h_i f = f h_i + {x_i, f}` and
/// `h_j h_i = h_i h_j + h_{{x_j, x_i}}`.
pub struct BracketRules {
    alg: PoissonAlgebra,
    comm: Vec<Vec<Vec<(usize, LaurentPoly)>>>,
}

impl BracketRules {
    fn new(alg: PoissonAlgebra) -> Self {
        let n = alg.ring().len();
        let comm = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        let b = alg.gen_bracket(j, i);
                        (0..n)
                            .map(|k| (k, b.partial(k)))
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        BracketRules { alg, comm }
    }
}

impl PbwRules for BracketRules {
    type C = LaurentPoly;

    fn letters(&self) -> usize {
        self.alg.ring().len()
    }
    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero(self.alg.ring())
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one(self.alg.ring())
    }
    fn is_zero(&self, c: &LaurentPoly) -> bool {
        c.is_zero()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a + b
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a * b
    }
    fn ad(&self, i: usize, c: &LaurentPoly) -> LaurentPoly {
        self.alg.gen_bracket_with(i, c)
    }
    fn commutator(&self, j: usize, i: usize) -> Vec<(usize, LaurentPoly)> {
        self.comm[j][i].clone()
    }
}

/// Element `sum_I f_I h^I` of `B^e`.
#[derive(Clone, Debug)]
pub struct PbwElement {
    ring: Ring,
    terms: PbwMap<LaurentPoly>,
}

impl PartialEq for PbwElement {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl PbwElement {
    pub fn zero(ring: &Ring) -> Self {
        PbwElement { ring: ring.clone(), terms: PbwMap::new() }
    }

    pub fn from_poly(f: &LaurentPoly) -> Self {
        let mut e = Self::zero(f.ring());
        if !f.is_zero() {
            e.terms.insert(HMonomial::one(f.ring().len()), f.clone());
        }
        e
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_poly(&LaurentPoly::one(ring))
    }

    /// `f * h^I`.
    pub fn term(f: &LaurentPoly, h: HMonomial) -> Self {
        let mut e = Self::zero(f.ring());
        if !f.is_zero() {
            e.terms.insert(h, f.clone());
        }
        e
    }

    pub fn from_map(ring: &Ring, terms: PbwMap<LaurentPoly>) -> Self {
        PbwElement { ring: ring.clone(), terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &PbwMap<LaurentPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty `h`-monomial: the `B` part of `B^e = B ⊕ I`.
    pub fn b_part(&self) -> LaurentPoly {
        self.terms
            .get(&HMonomial::one(self.ring.len()))
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(&self.ring))
    }

    pub fn h_degree(&self) -> u32 {
        self.terms.keys().map(HMonomial::degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let s = match out.terms.get(k) {
                Some(d) => d + c,
                None => c.clone(),
            };
            if s.is_zero() {
                out.terms.remove(k);
            } else {
                out.terms.insert(k.clone(), s);
            }
        }
        out
    }

    pub fn sub(&self, other: &PbwElement) -> PbwElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> PbwElement {
        let terms = self.terms.iter().map(|(k, f)| (k.clone(), f.scale(c))).collect();
        PbwElement::from_map(&self.ring, terms)
    }

    /// Left multiplication by an element of `B`.
    pub fn left_mul(&self, f: &LaurentPoly) -> PbwElement {
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), f * c)).collect();
        PbwElement::from_map(&self.ring, terms)
    }

    /// Expansion over the basis `m * h^I`.
    pub fn to_legs(&self) -> LegComb {
        let mut out = Vec::new();
        for (h, f) in &self.terms {
            for (m, c) in f.terms() {
                out.push((Leg::Pbw(m.clone(), h.clone()), c.clone()));
            }
        }
        out
    }

    pub fn from_legs(ring: &Ring, comb: &[(Leg, Rational)]) -> PbwElement {
        let mut out = PbwElement::zero(ring);
        for (l, c) in comb {
            match l {
                Leg::Pbw(m, h) => {
                    out = out.add(&PbwElement::term(&LaurentPoly::term(ring, m.clone(), c.clone()), h.clone()))
                }
                Leg::Poly(m) => out = out.add(&PbwElement::from_poly(&LaurentPoly::term(ring, m.clone(), c.clone()))),
                Leg::Theta(_) => panic!("enveloping algebra leg expected"),
            }
        }
        out
    }
}

pub fn fmt_h(ring: &Ring, h: &HMonomial) -> String {
    h.fmt_with(|i| format!("h({})", ring.name(i)))
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (h, c) in self.terms.iter().rev() {
            if h.is_one() {
                for (m, x) in c.terms_desc() {
                    write!(f, "{}", fmt_scaled(x, &self.ring.fmt_monomial(m), first))?;
                    first = false;
                }
                continue;
            }
            let body = fmt_h(&self.ring, h);
            if c.num_terms() == 1 {
                let (m, x) = c.terms().next().unwrap();
                let full = if m.is_one() { body } else { format!("{}*{}", self.ring.fmt_monomial(m), body) };
                write!(f, "{}", fmt_scaled(x, &full, first))?;
            } else {
                let sep = if first { "" } else { " + " };
                write!(f, "{sep}({c})*{body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Letter of a word in the free generators `m_f`, `h_f`.
#[derive(Clone, Debug)]
pub enum Letter {
    M(LaurentPoly),
    H(LaurentPoly),
}

#[derive(Clone, Debug)]
pub struct NcWord {
    pub coeff: Rational,
    pub letters: Vec<Letter>,
}

impl NcWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        NcWord { coeff: Rational::one(), letters }
    }
}

/// Redex selection for the word rewriting system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Debug)]
enum Sym {
    P(LaurentPoly),
    H(usize),
}

pub struct Uea {
    engine: PbwEngine<BracketRules>,
    hopf: Option<HopfData>,
    delta_h: Vec<Tensor>,
    leg_memo: Mutex<HashMap<(Leg, Leg), LegComb>>,
    delta_memo: Mutex<HashMap<Leg, Tensor>>,
    antipode_gens: Vec<PbwElement>,
    antipode_memo: Mutex<HashMap<Leg, PbwElement>>,
}

impl Uea {
    /// Enveloping algebra of a Poisson algebra on a free (Laurent)
    /// polynomial ring in characteristic zero.
    pub fn new(alg: &PoissonAlgebra) -> Result<Self> {
        if !alg.ring().is_free() {
            return Err(AlgebraError::Unsupported(
                "enveloping algebras need a free polynomial ring in characteristic 0".into(),
            ));
        }
        Ok(Uea {
            engine: PbwEngine::new(BracketRules::new(alg.clone())),
            hopf: None,
            delta_h: Vec::new(),
            leg_memo: Mutex::new(HashMap::new()),
            delta_memo: Mutex::new(HashMap::new()),
            antipode_gens: Vec::new(),
            antipode_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_hopf(hopf: &HopfData) -> Result<Self> {
        let mut u = Uea::new(hopf.poisson())?;
        u.hopf = Some(hopf.clone());
        let ring = hopf.ring().clone();
        u.delta_h = (0..ring.len())
            .map(|k| {
                let mut t = Tensor::zero(&PBW2);
                for (legs, c) in hopf.gen_delta(k).terms() {
                    let a = LaurentPoly::term(&ring, leg_monomial(&legs[0]).clone(), c.clone());
                    let b = LaurentPoly::term(&ring, leg_monomial(&legs[1]).clone(), Rational::one());
                    t = t.add(&pbw_tensor(&PbwElement::from_poly(&a), &u.h_of(&b)));
                    t = t.add(&pbw_tensor(&u.h_of(&a), &PbwElement::from_poly(&b)));
                }
                t
            })
            .collect();
        u.antipode_gens = (0..ring.len()).map(|k| u.antipode_h(k)).collect::<Result<_>>()?;
        Ok(u)
    }

    pub fn ring(&self) -> &Ring {
        self.engine.rules().alg.ring()
    }

    pub fn poisson(&self) -> &PoissonAlgebra {
        &self.engine.rules().alg
    }

    pub fn hopf(&self) -> Option<&HopfData> {
        self.hopf.as_ref()
    }

    fn need_hopf(&self) -> Result<&HopfData> {
        self.hopf
            .as_ref()
            .ok_or_else(|| AlgebraError::Precondition("no Hopf structure on the base algebra".into()))
    }

    pub fn m(&self, f: &LaurentPoly) -> PbwElement {
        PbwElement::from_poly(f)
    }

    pub fn h_gen(&self, i: usize) -> PbwElement {
        let ring = self.ring();
        PbwElement::term(&LaurentPoly::one(ring), HMonomial::var(ring.len(), i))
    }

    /// `h_f = sum_k (d_k f) h_{x_k}`, the expansion forced by `h_{xy} = m_y h_x + m_x h_y`.
    pub fn h_of(&self, f: &LaurentPoly) -> PbwElement {
        let ring = self.ring();
        let mut terms = PbwMap::new();
        for k in 0..ring.len() {
            let d = f.partial(k);
            if !d.is_zero() {
                terms.insert(HMonomial::var(ring.len(), k), d);
            }
        }
        PbwElement::from_map(ring, terms)
    }

    pub fn mul(&self, u: &PbwElement, v: &PbwElement) -> PbwElement {
        PbwElement::from_map(self.ring(), self.engine.mul(&u.terms, &v.terms))
    }

    pub fn product(&self, factors: &[PbwElement]) -> PbwElement {
        let mut acc = PbwElement::one(self.ring());
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// `u v - v u`.
    pub fn commutator(&self, u: &PbwElement, v: &PbwElement) -> PbwElement {
        self.mul(u, v).sub(&self.mul(v, u))
    }

    pub fn letter(&self, l: &Letter) -> PbwElement {
        match l {
            Letter::M(f) => self.m(f),
            Letter::H(f) => self.h_of(f),
        }
    }

    /// Normal form by multiplying the letters left to right.
    pub fn normal_form(&self, w: &NcWord) -> PbwElement {
        let factors: Vec<PbwElement> = w.letters.iter().map(|l| self.letter(l)).collect();
        self.product(&factors).scale(&w.coeff)
    }

    /// Normal form by rewriting the word directly, always contracting the
    /// leftmost or the rightmost redex.
    pub fn rewrite(&self, w: &NcWord, strategy: Strategy) -> PbwElement {
        let ring = self.ring().clone();
        let rules = self.engine.rules();
        let mut stack: Vec<Vec<Sym>> = vec![vec![Sym::P(LaurentPoly::constant(&ring, w.coeff.clone()))]];
        for l in &w.letters {
            let mut next = Vec::new();
            for word in stack {
                match l {
                    Letter::M(f) => {
                        let mut v = word.clone();
                        v.push(Sym::P(f.clone()));
                        next.push(v);
                    }
                    Letter::H(f) => {
                        for k in 0..ring.len() {
                            let d = f.partial(k);
                            if !d.is_zero() {
                                let mut v = word.clone();
                                v.push(Sym::P(d));
                                v.push(Sym::H(k));
                                next.push(v);
                            }
                        }
                    }
                }
            }
            stack = next;
        }
        let mut out = PbwElement::zero(&ring);
        while let Some(word) = stack.pop() {
            if word.iter().any(|s| matches!(s, Sym::P(p) if p.is_zero())) {
                continue;
            }
            let redexes: Vec<usize> = (0..word.len().saturating_sub(1))
                .filter(|&p| match (&word[p], &word[p + 1]) {
                    (Sym::P(_), Sym::P(_)) | (Sym::H(_), Sym::P(_)) => true,
                    (Sym::H(j), Sym::H(i)) => j > i,
                    _ => false,
                })
                .collect();
            let pos = match strategy {
                Strategy::Leftmost => redexes.first(),
                Strategy::Rightmost => redexes.last(),
            };
            let Some(&p) = pos else {
                let (coef, start) = match word.first() {
                    Some(Sym::P(f)) => (f.clone(), 1),
                    _ => (LaurentPoly::one(&ring), 0),
                };
                let letters: Vec<usize> = word[start..]
                    .iter()
                    .map(|s| match s {
                        Sym::H(i) => *i,
                        Sym::P(_) => unreachable!("normal words have no inner coefficients"),
                    })
                    .collect();
                out = out.add(&PbwElement::term(&coef, HMonomial::from_letters(ring.len(), &letters)));
                continue;
            };
            let splice = |mid: Vec<Sym>| {
                let mut v = word[..p].to_vec();
                v.extend(mid);
                v.extend_from_slice(&word[p + 2..]);
                v
            };
            match (&word[p], &word[p + 1]) {
                (Sym::P(f), Sym::P(g)) => stack.push(splice(vec![Sym::P(f * g)])),
                (Sym::H(i), Sym::P(f)) => {
                    stack.push(splice(vec![Sym::P(f.clone()), Sym::H(*i)]));
                    stack.push(splice(vec![Sym::P(rules.ad(*i, f))]));
                }
                (Sym::H(j), Sym::H(i)) => {
                    stack.push(splice(vec![Sym::H(*i), Sym::H(*j)]));
                    for (k, c) in rules.commutator(*j, *i) {
                        stack.push(splice(vec![Sym::P(c), Sym::H(k)]));
                    }
                }
                _ => unreachable!(),
            }
        }
        out
    }

    /// `u . a` for the regular Poisson module `B`: `h_x . a = {x, a}`.
    pub fn act_on_base(&self, u: &PbwElement, a: &LaurentPoly) -> LaurentPoly {
        let alg = self.poisson();
        let mut out = LaurentPoly::zero(self.ring());
        for (h, f) in &u.terms {
            let mut v = a.clone();
            for &i in h.letters().iter().rev() {
                v = alg.gen_bracket_with(i, &v);
            }
            out = &out + &(f * &v);
        }
        out
    }

    /// `xi(u) = u . 1`, the projection onto `B` along the left ideal of the `h`'s.
    pub fn xi(&self, u: &PbwElement) -> LaurentPoly {
        u.b_part()
    }

    pub fn legs(&self) -> UeaLegs<'_> {
        UeaLegs(self)
    }

    fn mul_basis(&self, a: &Leg, b: &Leg) -> LegComb {
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.leg_memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let ring = self.ring();
        let u = PbwElement::from_legs(ring, &[(a.clone(), Rational::one())]);
        let v = PbwElement::from_legs(ring, &[(b.clone(), Rational::one())]);
        let out = self.mul(&u, &v).to_legs();
        self.leg_memo.lock().unwrap().insert(key, out.clone());
        out
    }

    /// `Delta^e` with `Delta^e(m_f) = (m ⊗ m) Delta f` and
    /// `Delta^e(h_f) = (m ⊗ h + h ⊗ m) Delta f`.
    pub fn delta(&self, u: &PbwElement) -> Result<Tensor> {
        let hopf = self.need_hopf()?;
        let mut out = Tensor::zero(&PBW2);
        for (l, c) in u.to_legs() {
            out = out.add(&self.delta_basis(hopf, &l).scale(&c));
        }
        Ok(out)
    }

    fn delta_basis(&self, hopf: &HopfData, l: &Leg) -> Tensor {
        if let Some(hit) = self.delta_memo.lock().unwrap().get(l) {
            return hit.clone();
        }
        let Leg::Pbw(m, h) = l else { panic!("enveloping algebra leg expected") };
        let ring = self.ring();
        let legs = self.legs();
        let mut acc = poly_to_pbw_tensor(&hopf.delta_monomial(m));
        for &i in &h.letters() {
            acc = acc.mul(&self.delta_h[i], &legs).expect("enveloping algebra legs");
        }
        let _ = ring;
        self.delta_memo.lock().unwrap().insert(l.clone(), acc.clone());
        acc
    }

    pub fn counit(&self, u: &PbwElement) -> Result<Rational> {
        Ok(self.need_hopf()?.counit(&u.b_part()))
    }

    /// Anti-algebra map with `S^e(m_f) = m_{S f}` and
    /// `S^e(h_x) = -S(x1) h_{x2} S(x3)`. The shorter `h_{S x}` differs from
    /// this by `sum {S x1, x2}`, which is nonzero once `x` is not primitive.
    pub fn antipode_h(&self, k: usize) -> Result<PbwElement> {
        let hopf = self.need_hopf()?;
        let ring = self.ring();
        let d2 = hopf.delta_on_leg(hopf.gen_delta(k), 1);
        let mut out = PbwElement::zero(ring);
        for (l, c) in d2.terms() {
            let part = |i: usize| monomial_poly(ring, leg_monomial(&l[i]));
            let a = self.m(&hopf.antipode(&part(0))?.scale(c));
            let b = self.h_of(&part(1));
            let e = self.m(&hopf.antipode(&part(2))?);
            out = out.sub(&self.product(&[a, b, e]));
        }
        Ok(out)
    }

    pub fn antipode(&self, u: &PbwElement) -> Result<PbwElement> {
        let hopf = self.need_hopf()?;
        let mut out = PbwElement::zero(self.ring());
        for (l, c) in u.to_legs() {
            out = out.add(&self.antipode_basis(hopf, &l)?.scale(&c));
        }
        Ok(out)
    }

    fn antipode_basis(&self, hopf: &HopfData, l: &Leg) -> Result<PbwElement> {
        if let Some(hit) = self.antipode_memo.lock().unwrap().get(l) {
            return Ok(hit.clone());
        }
        let Leg::Pbw(m, h) = l else { panic!("enveloping algebra leg expected") };
        let ring = self.ring();
        let mut acc = PbwElement::one(ring);
        for &i in h.letters().iter().rev() {
            acc = self.mul(&acc, &self.antipode_gens[i]);
        }
        acc = self.mul(&acc, &self.m(&hopf.antipode_monomial(m)?));
        self.antipode_memo.lock().unwrap().insert(l.clone(), acc.clone());
        Ok(acc)
    }

    /// Applies `Delta^e` to leg `i` of a tensor with enveloping algebra legs.
    pub fn delta_on_leg(&self, t: &Tensor, i: usize) -> Result<Tensor> {
        let hopf = self.need_hopf()?;
        t.expand_leg(i, &PBW2, |l| Ok(self.delta_basis(hopf, l)))
    }

    pub fn counit_on_leg(&self, t: &Tensor, i: usize) -> Result<PbwElement> {
        let hopf = self.need_hopf()?;
        let ring = self.ring();
        let mut out = PbwElement::zero(ring);
        for (legs, c) in t.terms() {
            if let Leg::Pbw(m, h) = &legs[i] {
                if !h.is_one() {
                    continue;
                }
                let e = hopf.counit_monomial(m);
                if e.is_zero() {
                    continue;
                }
                out = out.add(&PbwElement::from_legs(ring, &[(legs[1 - i].clone(), c * e)]));
            }
        }
        Ok(out)
    }

    /// `m (S ⊗ id)` (side 0) or `m (id ⊗ S)` (side 1) on a 2-tensor.
    pub fn antipode_contract(&self, t: &Tensor, side: usize) -> Result<PbwElement> {
        let ring = self.ring();
        let mut out = PbwElement::zero(ring);
        for (legs, c) in t.terms() {
            let a = PbwElement::from_legs(ring, &[(legs[0].clone(), c.clone())]);
            let b = PbwElement::from_legs(ring, &[(legs[1].clone(), Rational::one())]);
            let p = if side == 0 { self.mul(&self.antipode(&a)?, &b) } else { self.mul(&a, &self.antipode(&b)?) };
            out = out.add(&p);
        }
        Ok(out)
    }

    /// PBW basis elements `m * h^I` with `sum |e_i| + |I| <= d`.
    pub fn slab(&self, d: u32) -> Vec<PbwElement> {
        let ring = self.ring();
        let mut out = Vec::new();
        for k in 0..=d {
            for h in h_monomials(ring.len(), k) {
                for m in monomials_up_to(ring, d - k) {
                    out.push(PbwElement::term(&LaurentPoly::term(ring, m, Rational::one()), h.clone()));
                }
            }
        }
        out
    }
}

impl Uea {
    /// Hopf axioms of `B^e` on the PBW basis of degree at most `d`, and
    /// multiplicativity of `Delta^e` on products of low-degree basis elements.
    pub fn check_hopf(&self, d: u32) -> Result<Report> {
        let ring = self.ring().clone();
        let legs = self.legs();
        let basis = self.slab(d);
        let mut coassoc = CheckResult::new("uea-coassociativity");
        let mut counit = CheckResult::new("uea-counit");
        let mut antipode = CheckResult::new("uea-antipode");
        for u in &basis {
            let at = u.to_string();
            let du = self.delta(u)?;
            let res = self.delta_on_leg(&du, 0)?.sub(&self.delta_on_leg(&du, 1)?);
            if !res.is_zero() {
                coassoc.fail(at.clone(), res.display(&legs));
            }
            for side in 0..2 {
                let res = self.counit_on_leg(&du, side)?.sub(u);
                if !res.is_zero() {
                    counit.fail(at.clone(), res.to_string());
                }
            }
            let e = PbwElement::from_poly(&LaurentPoly::constant(&ring, self.counit(u)?));
            for side in 0..2 {
                let res = self.antipode_contract(&du, side)?.sub(&e);
                if !res.is_zero() {
                    antipode.fail(at.clone(), res.to_string());
                }
            }
        }
        let mut mult = CheckResult::new("uea-delta-multiplicative");
        let low = self.slab(1);
        let mid = self.slab(d.saturating_sub(1).max(1));
        for u in &mid {
            for v in &low {
                let lhs = self.delta(&self.mul(u, v))?;
                let rhs = self.delta(u)?.mul(&self.delta(v)?, &legs)?;
                let res = lhs.sub(&rhs);
                if !res.is_zero() {
                    mult.fail(format!("{u} * {v}"), res.display(&legs));
                }
            }
        }
        let mut report = Report::new();
        report.push(coassoc);
        report.push(counit);
        report.push(antipode);
        report.push(mult);
        Ok(report)
    }

    /// `B` is a normal Hopf subalgebra: `ad(h_y)(x) = {y1, x} S(y2)` lies in `B`
    /// for every generator `y` and every `x` in `samples`.
    pub fn check_normal(&self, samples: &[LaurentPoly]) -> Result<CheckResult> {
        let hopf = self.need_hopf()?;
        let ring = self.ring().clone();
        let alg = self.poisson();
        let mut check = CheckResult::new("uea-normal");
        for k in 0..ring.len() {
            let dh = self.delta(&self.h_gen(k))?;
            for x in samples {
                let mut ad = PbwElement::zero(&ring);
                for (l, c) in dh.terms() {
                    let a = PbwElement::from_legs(&ring, &[(l[0].clone(), c.clone())]);
                    let b = PbwElement::from_legs(&ring, &[(l[1].clone(), Rational::one())]);
                    ad = ad.add(&self.product(&[a, self.m(x), self.antipode(&b)?]));
                }
                let mut expect = LaurentPoly::zero(&ring);
                for (l, c) in hopf.gen_delta(k).terms() {
                    let y1 = LaurentPoly::term(&ring, leg_monomial(&l[0]).clone(), c.clone());
                    let y2 = LaurentPoly::term(&ring, leg_monomial(&l[1]).clone(), Rational::one());
                    expect = &expect + &(&alg.bracket(&y1, x)? * &hopf.antipode(&y2)?);
                }
                let res = ad.sub(&PbwElement::from_poly(&expect));
                if !res.is_zero() {
                    check.fail(format!("ad(h({}))({x})", ring.name(k)), res.to_string());
                }
            }
        }
        Ok(check)
    }
}

/// Ordered `h`-monomials of total degree exactly `d` in `n` letters.
pub fn h_monomials(n: usize, d: u32) -> Vec<HMonomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<HMonomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(HMonomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if n == 0 {
        if d == 0 {
            out.push(HMonomial(Vec::new()));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Admissible monomials with `sum |e_i| <= d`.
pub fn monomials_up_to(ring: &Ring, d: u32) -> Vec<Monomial> {
    let n = ring.len();
    let mut out = Vec::new();
    let mut cur = vec![0i32; n];
    fn rec(ring: &Ring, i: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        let lo = if ring.is_invertible(i) { -left } else { 0 };
        for e in lo..=left {
            cur[i] = e;
            rec(ring, i + 1, left - e.abs(), cur, out);
        }
        cur[i] = 0;
    }
    rec(ring, 0, d as i32, &mut cur, &mut out);
    out.sort();
    out
}

pub fn pbw_tensor(a: &PbwElement, b: &PbwElement) -> Tensor {
    Tensor::product(&[a.to_legs(), b.to_legs()], &PBW2, 0)
}

/// Re-reads polynomial legs as elements of `B ⊂ B^e`.
pub fn poly_to_pbw_tensor(t: &Tensor) -> Tensor {
    let kinds = vec![LegKind::Pbw; t.arity()];
    let mut out = Tensor::zero(&kinds);
    for (legs, c) in t.terms() {
        let legs = legs
            .iter()
            .map(|l| match l {
                Leg::Poly(m) => Leg::Pbw(m.clone(), HMonomial::one(m.len())),
                other => other.clone(),
            })
            .collect();
        out.add_term(legs, c.clone());
    }
    out
}

/// Leg arithmetic for tensors over `B` and `B^e`.
pub struct UeaLegs<'a>(pub &'a Uea);

impl LegAlgebra for UeaLegs<'_> {
    fn mul_legs(&self, a: &Leg, b: &Leg) -> Result<LegComb> {
        match (a, b) {
            (Leg::Pbw(..), Leg::Pbw(..)) => Ok(self.0.mul_basis(a, b)),
            (Leg::Poly(x), Leg::Poly(y)) => {
                Ok(vec![(Leg::Poly(x.mul(y)), Rational::one())])
            }
            _ => Err(AlgebraError::LegKind("mixed legs".into())),
        }
    }

    fn fmt_leg(&self, leg: &Leg) -> String {
        let ring = self.0.ring();
        match leg {
            Leg::Poly(m) => ring.fmt_monomial(m),
            Leg::Pbw(m, h) => fmt_pbw_leg(ring, m, h),
            Leg::Theta(_) => "?".into(),
        }
    }
}

pub fn fmt_pbw_leg(ring: &Ring, m: &Monomial, h: &HMonomial) -> String {
    match (m.is_one(), h.is_one()) {
        (_, true) => ring.fmt_monomial(m),
        (true, false) => fmt_h(ring, h),
        (false, false) => format!("{}*{}", ring.fmt_monomial(m), fmt_h(ring, h)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{derive_antipode, tensor_of};
    use crate::ring::{int, GeneratorSet};

    fn type_a() -> Uea {
        let r = GeneratorSet::parse_list("g* x").unwrap();
        let g = LaurentPoly::var(&r, "g");
        let x = LaurentPoly::var(&r, "x");
        let one = LaurentPoly::one(&r);
        let alg = PoissonAlgebra::new(&r, vec![(1, 0, &g * &x)]).unwrap();
        let delta = vec![tensor_of(&[&g, &g]), tensor_of(&[&x, &one]).add(&tensor_of(&[&g, &x]))];
        let s = derive_antipode(&r, &delta, &[int(1), int(0)], vec![None, None]).unwrap();
        Uea::with_hopf(&HopfData::new(alg, delta, vec![int(1), int(0)], s).unwrap()).unwrap()
    }

    #[test]
    fn h_x_past_g() {
        let u = type_a();
        let r = u.ring().clone();
        let w = NcWord::new(vec![Letter::H(LaurentPoly::var(&r, "x")), Letter::M(LaurentPoly::var(&r, "g"))]);
        assert_eq!(u.normal_form(&w).to_string(), "g*h(x) + g*x");
        assert_eq!(u.rewrite(&w, Strategy::Rightmost), u.normal_form(&w));
    }

    #[test]
    fn h_of_inverse() {
        let u = type_a();
        let g = LaurentPoly::var(u.ring(), "g");
        assert_eq!(u.h_of(&g.pow(-1).unwrap()).to_string(), "-g^-2*h(g)");
        assert!(u.h_of(&LaurentPoly::one(u.ring())).is_zero());
    }

    #[test]
    fn delta_of_h_g() {
        let u = type_a();
        let d = u.delta(&u.h_gen(0)).unwrap();
        assert_eq!(d.display(&u.legs()), "g@h(g) + h(g)@g");
    }

    #[test]
    fn type_a_envelope_is_hopf() {
        let u = type_a();
        let r = u.check_hopf(2).unwrap();
        assert!(r.passed(), "{r}");
        let g = LaurentPoly::var(u.ring(), "g");
        let x = LaurentPoly::var(u.ring(), "x");
        assert!(u.check_normal(&[g.clone(), x.clone(), &g * &x]).unwrap().passed());
    }

    #[test]
    fn antipode_of_h_g() {
        let u = type_a();
        assert_eq!(u.antipode(&u.h_gen(0)).unwrap().to_string(), "-g^-2*h(g)");
        // h_{S x} alone would miss the -g^-1*x term.
        assert_eq!(u.antipode(&u.h_gen(1)).unwrap().to_string(), "g^-2*x*h(g) - g^-1*h(x) - g^-1*x");
    }
}
