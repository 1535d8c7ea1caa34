//! Tensor products of algebra elements, expanded over basis legs.
//!
//! Every leg of a summand is a basis element: a Laurent monomial of B, a PBW
//! basis element `m * h^I` of B^e, or an ordered monomial of U(a). Expanding
//! fully makes structural equality coincide with equality of tensors.

use std::collections::BTreeMap;

use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::pbw::HMonomial;
use crate::ring::{fmt_scaled, reduce_mod, Monomial, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LegKind {
    Poly,
    Pbw,
    Theta,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Leg {
    Poly(Monomial),
    Pbw(Monomial, HMonomial),
    Theta(HMonomial),
}

impl Leg {
    pub fn kind(&self) -> LegKind {
        match self {
            Leg::Poly(_) => LegKind::Poly,
            Leg::Pbw(..) => LegKind::Pbw,
            Leg::Theta(_) => LegKind::Theta,
        }
    }
}

pub type LegComb = Vec<(Leg, Rational)>;

/// Multiplication and printing of basis legs.
pub trait LegAlgebra {
    fn mul_legs(&self, a: &Leg, b: &Leg) -> Result<LegComb>;
    fn fmt_leg(&self, leg: &Leg) -> String;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    kinds: Vec<LegKind>,
    modulus: u32,
    terms: BTreeMap<Vec<Leg>, Rational>,
}

impl Tensor {
    pub fn zero(kinds: &[LegKind]) -> Self {
        Tensor { kinds: kinds.to_vec(), modulus: 0, terms: BTreeMap::new() }
    }

    /// Zero tensor whose coefficients live in characteristic `p`.
    pub fn zero_mod(kinds: &[LegKind], p: u32) -> Self {
        Tensor { kinds: kinds.to_vec(), modulus: p, terms: BTreeMap::new() }
    }

    /// `a_1 ⊗ ... ⊗ a_n` for linear combinations `a_i`.
    pub fn product(factors: &[LegComb], kinds: &[LegKind], p: u32) -> Self {
        let mut out = Tensor::zero_mod(kinds, p);
        let mut partial: Vec<(Vec<Leg>, Rational)> = vec![(Vec::new(), Rational::one())];
        for f in factors {
            let mut next = Vec::with_capacity(partial.len() * f.len());
            for (legs, c) in &partial {
                for (l, d) in f {
                    let mut v = legs.clone();
                    v.push(l.clone());
                    next.push((v, c * d));
                }
            }
            partial = next;
        }
        for (legs, c) in partial {
            out.add_term(legs, c);
        }
        out
    }

    pub fn kinds(&self) -> &[LegKind] {
        &self.kinds
    }

    pub fn arity(&self) -> usize {
        self.kinds.len()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<Leg>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, legs: &[Leg]) -> Rational {
        self.terms.get(legs).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, legs: Vec<Leg>, c: Rational) {
        debug_assert_eq!(legs.len(), self.kinds.len());
        let c = reduce_mod(&c, self.modulus);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(legs) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = reduce_mod(&(e.get() + c), self.modulus);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn compatible(&self, other: &Tensor) -> Result<()> {
        if self.kinds != other.kinds {
            return Err(AlgebraError::LegKind(format!("{:?} vs {:?}", self.kinds, other.kinds)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Tensor) -> Result<Tensor> {
        self.compatible(other)?;
        let mut out = self.clone();
        out.modulus = self.modulus.max(other.modulus);
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.checked_add(other).expect("tensor legs of different kinds")
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Tensor {
        let mut out = Tensor::zero_mod(&self.kinds, self.modulus);
        for (l, x) in &self.terms {
            out.add_term(l.clone(), x * c);
        }
        out
    }

    /// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &Tensor, alg: &dyn LegAlgebra) -> Result<Tensor> {
        self.compatible(other)?;
        let mut out = Tensor::zero_mod(&self.kinds, self.modulus.max(other.modulus));
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let factors = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| alg.mul_legs(x, y))
                    .collect::<Result<Vec<_>>>()?;
                let c = ca * cb;
                let prod = Tensor::product(&factors, &self.kinds, out.modulus);
                for (l, d) in prod.terms {
                    out.add_term(l, &c * d);
                }
            }
        }
        Ok(out)
    }

    /// Applies a linear map to leg `i`.
    pub fn map_leg(
        &self,
        i: usize,
        kind: LegKind,
        mut f: impl FnMut(&Leg) -> Result<LegComb>,
    ) -> Result<Tensor> {
        let mut kinds = self.kinds.clone();
        kinds[i] = kind;
        let mut out = Tensor::zero_mod(&kinds, self.modulus);
        let mut memo: BTreeMap<Leg, LegComb> = BTreeMap::new();
        for (legs, c) in &self.terms {
            if !memo.contains_key(&legs[i]) {
                memo.insert(legs[i].clone(), f(&legs[i])?);
            }
            for (l, d) in &memo[&legs[i]] {
                let mut v = legs.clone();
                v[i] = l.clone();
                out.add_term(v, c * d);
            }
        }
        Ok(out)
    }

    /// Replaces leg `i` by the legs of `f(leg)`, whose kinds are `inner`.
    pub fn expand_leg(
        &self,
        i: usize,
        inner: &[LegKind],
        mut f: impl FnMut(&Leg) -> Result<Tensor>,
    ) -> Result<Tensor> {
        let mut kinds = self.kinds[..i].to_vec();
        kinds.extend_from_slice(inner);
        kinds.extend_from_slice(&self.kinds[i + 1..]);
        let mut out = Tensor::zero_mod(&kinds, self.modulus);
        let mut memo: BTreeMap<Leg, Tensor> = BTreeMap::new();
        for (legs, c) in &self.terms {
            if !memo.contains_key(&legs[i]) {
                let t = f(&legs[i])?;
                if t.kinds != inner {
                    return Err(AlgebraError::LegKind("expansion kinds".into()));
                }
                memo.insert(legs[i].clone(), t);
            }
            for (sub, d) in &memo[&legs[i]].terms {
                let mut v = legs[..i].to_vec();
                v.extend(sub.iter().cloned());
                v.extend(legs[i + 1..].iter().cloned());
                out.add_term(v, c * d);
            }
        }
        Ok(out)
    }

    /// New tensor with legs reordered: output leg `k` is input leg `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        let kinds: Vec<LegKind> = perm.iter().map(|&k| self.kinds[k]).collect();
        let mut out = Tensor::zero_mod(&kinds, self.modulus);
        for (legs, c) in &self.terms {
            out.add_term(perm.iter().map(|&k| legs[k].clone()).collect(), c.clone());
        }
        out
    }

    /// Prints summands from the largest down, pulling out a common rational
    /// factor when there are several summands.
    pub fn display(&self, alg: &dyn LegAlgebra) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let rows: Vec<(String, &Rational)> = self
            .terms
            .iter()
            .rev()
            .map(|(legs, c)| {
                let body: Vec<String> = legs.iter().map(|l| alg.fmt_leg(l)).collect();
                (body.join("@"), c)
            })
            .collect();
        let content = if rows.len() > 1 { content(rows.iter().map(|r| r.1)) } else { Rational::one() };
        let content = if rows[0].1.is_negative() && !content.is_one() { -content } else { content };
        let mut inner = String::new();
        for (k, (body, c)) in rows.iter().enumerate() {
            inner.push_str(&fmt_scaled(&(*c / &content), body, k == 0));
        }
        if content.is_one() {
            inner
        } else {
            format!("{}*({inner})", fmt_scaled(&content, "1", true))
        }
    }
}

/// Positive rational `g` such that every coefficient divided by `g` is an
/// integer and the integers are coprime.
fn content<'a>(cs: impl Iterator<Item = &'a Rational>) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in cs {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    Rational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    struct Names;

    impl LegAlgebra for Names {
        fn mul_legs(&self, a: &Leg, b: &Leg) -> Result<LegComb> {
            match (a, b) {
                (Leg::Theta(x), Leg::Theta(y)) => Ok(vec![(
                    Leg::Theta(HMonomial(x.0.iter().zip(&y.0).map(|(p, q)| p + q).collect())),
                    int(1),
                )]),
                _ => Err(AlgebraError::LegKind("test".into())),
            }
        }
        fn fmt_leg(&self, leg: &Leg) -> String {
            match leg {
                Leg::Theta(h) => h.fmt_with(|i| format!("y{}", i + 1)),
                _ => "?".into(),
            }
        }
    }

    fn y(i: usize) -> Leg {
        Leg::Theta(HMonomial::var(3, i))
    }

    #[test]
    fn content_is_factored() {
        let k = [LegKind::Theta, LegKind::Theta];
        let mut t = Tensor::zero(&k);
        t.add_term(vec![y(0), y(1)], int(2));
        t.add_term(vec![y(1), y(0)], int(-2));
        assert_eq!(t.display(&Names), "2*(y1@y2 - y2@y1)");
        assert_eq!(t.scale(&crate::ring::rat(-1, 2)).display(&Names), "-y1@y2 + y2@y1");
    }

    #[test]
    fn mismatched_kinds_rejected() {
        let a = Tensor::zero(&[LegKind::Theta, LegKind::Theta]);
        let b = Tensor::zero(&[LegKind::Poly, LegKind::Theta]);
        assert!(a.checked_add(&b).is_err());
        assert!(a.mul(&b, &Names).is_err());
    }
}
