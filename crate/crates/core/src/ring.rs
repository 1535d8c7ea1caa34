//! Exact rationals, generator sets and Laurent polynomials.
//!
//! A [`LaurentPoly`] is a sparse map from exponent vectors to rational
//! coefficients. Negative exponents are allowed only on generators flagged
//! invertible. A generator set may also carry monomial rewrite rules (side
//! relations with pairwise coprime leading monomials, hence a Gröbner basis)
//! and a prime characteristic; both are applied on every insertion so that
//! equality stays structural.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exponent vector, ordered degree-lexicographically (total degree first,
/// then the larger exponent on the earlier generator wins).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: i32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    /// Sum of absolute exponents; the size measure used for slabs.
    pub fn abs_degree(&self) -> u32 {
        self.0.iter().map(|e| e.unsigned_abs()).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    /// `Some(self / other)` when `other` divides `self` in the polynomial sense.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        let q: Vec<i32> = self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect();
        if q.iter().zip(&other.0).all(|(&e, &b)| b == 0 || e >= 0) {
            Some(Monomial(q))
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rewrite rule `lead -> tail` applied to any monomial divisible by `lead`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lead: Monomial,
    pub tail: Vec<(Monomial, Rational)>,
}

#[derive(Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    names: Vec<String>,
    invertible: Vec<bool>,
    grading: Option<Vec<u32>>,
    relations: Vec<Relation>,
    characteristic: u32,
}

pub type Ring = Arc<GeneratorSet>;

impl GeneratorSet {
    pub fn new<S: AsRef<str>>(names: &[S], invertible: &[bool]) -> Result<Self> {
        if names.len() != invertible.len() {
            return Err(AlgebraError::Invalid("one invertibility flag per generator".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || !is_identifier(a) {
                return Err(AlgebraError::Invalid(format!("bad generator name `{a}`")));
            }
            if names[..i].contains(a) {
                return Err(AlgebraError::Invalid(format!("duplicate generator `{a}`")));
            }
        }
        Ok(GeneratorSet {
            names,
            invertible: invertible.to_vec(),
            grading: None,
            relations: Vec::new(),
            characteristic: 0,
        })
    }

    /// Shorthand: names with a trailing `*` are invertible.
    pub fn parse_list(list: &str) -> Result<Ring> {
        let mut names = Vec::new();
        let mut inv = Vec::new();
        for tok in list.split_whitespace() {
            match tok.strip_suffix('*') {
                Some(n) => {
                    names.push(n.to_string());
                    inv.push(true);
                }
                None => {
                    names.push(tok.to_string());
                    inv.push(false);
                }
            }
        }
        Ok(Arc::new(GeneratorSet::new(&names, &inv)?))
    }

    pub fn with_grading(mut self, degrees: Vec<u32>) -> Result<Self> {
        if degrees.len() != self.names.len() || degrees.contains(&0) {
            return Err(AlgebraError::Invalid("grading needs one positive degree per generator".into()));
        }
        self.grading = Some(degrees);
        Ok(self)
    }

    pub fn with_characteristic(mut self, p: u32) -> Result<Self> {
        if p != 0 && !is_prime(p) {
            return Err(AlgebraError::Invalid(format!("characteristic {p} is not prime")));
        }
        self.characteristic = p;
        for r in &mut self.relations {
            r.tail = r
                .tail
                .iter()
                .map(|(m, c)| (m.clone(), reduce_mod(c, p)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
        Ok(self)
    }

    /// Installs rewrite rules. Leading monomials must be pairwise coprime and
    /// strictly larger than every tail monomial; the ring must have no
    /// invertible generators.
    pub fn with_relations(mut self, relations: Vec<Relation>) -> Result<Self> {
        if !relations.is_empty() && self.invertible.iter().any(|&b| b) {
            return Err(AlgebraError::Unsupported(
                "side relations over rings with invertible generators".into(),
            ));
        }
        for (i, r) in relations.iter().enumerate() {
            if r.lead.len() != self.len() || r.lead.0.iter().any(|&e| e < 0) || r.lead.is_one() {
                return Err(AlgebraError::Invalid("relation lead must be a non-constant monomial".into()));
            }
            for (m, _) in &r.tail {
                if m.0.iter().any(|&e| e < 0) || m >= &r.lead {
                    return Err(AlgebraError::Invalid(format!(
                        "relation tail term not below its leading monomial {}",
                        self.fmt_monomial(&r.lead)
                    )));
                }
            }
            for s in &relations[..i] {
                if r.lead.0.iter().zip(&s.lead.0).any(|(&a, &b)| a > 0 && b > 0) {
                    return Err(AlgebraError::Unsupported(
                        "relations whose leading monomials share a generator".into(),
                    ));
                }
            }
        }
        let p = self.characteristic;
        self.relations = relations
            .into_iter()
            .map(|r| Relation {
                lead: r.lead,
                tail: r
                    .tail
                    .into_iter()
                    .map(|(m, c)| (m, reduce_mod(&c, p)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            })
            .collect();
        Ok(self)
    }

    pub fn into_ring(self) -> Ring {
        Arc::new(self)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.invertible[i]
    }

    pub fn invertible_flags(&self) -> &[bool] {
        &self.invertible
    }

    pub fn grading(&self) -> Option<&[u32]> {
        self.grading.as_deref()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    /// Free (Laurent) polynomial ring in characteristic zero.
    pub fn is_free(&self) -> bool {
        self.relations.is_empty() && self.characteristic == 0
    }

    pub fn canon_coeff(&self, c: &Rational) -> Rational {
        reduce_mod(c, self.characteristic)
    }

    /// New generator set with one extra non-invertible generator appended.
    pub fn extended(&self, name: &str) -> Result<Self> {
        if !self.relations.is_empty() || self.characteristic != 0 {
            return Err(AlgebraError::Unsupported("extending a ring with relations".into()));
        }
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut inv = self.invertible.clone();
        inv.push(false);
        GeneratorSet::new(&names, &inv)
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.len() != self.len() {
            return Err(AlgebraError::RingMismatch);
        }
        for (i, &e) in m.0.iter().enumerate() {
            if e < 0 && !self.invertible[i] {
                return Err(AlgebraError::NegativeExponent(self.names[i].clone()));
            }
        }
        Ok(())
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    fn reducer(&self, m: &Monomial) -> Option<(&Relation, Monomial)> {
        self.relations
            .iter()
            .find_map(|r| m.divide(&r.lead).map(|q| (r, q)))
    }

    /// Adds `c * m` into `terms`, rewriting `m` by the relations.
    pub(crate) fn push_term(&self, terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
        let c = self.canon_coeff(&c);
        if c.is_zero() {
            return;
        }
        if let Some((r, q)) = self.reducer(&m) {
            for (tm, tc) in &r.tail {
                self.push_term(terms, tm.mul(&q), &c * tc);
            }
            return;
        }
        add_into(terms, m, c, self.characteristic);
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Image of `c` in the prime field of characteristic `p` (identity for `p = 0`).
pub fn reduce_mod(c: &Rational, p: u32) -> Rational {
    if p == 0 {
        return c.clone();
    }
    let p = BigInt::from(p);
    let den = c.denom().mod_floor(&p);
    assert!(!den.is_zero(), "denominator divisible by the characteristic");
    let inv = den.modpow(&(&p - BigInt::from(2)), &p);
    Rational::from_integer((c.numer() * inv).mod_floor(&p))
}

fn add_into<K: Ord>(terms: &mut BTreeMap<K, Rational>, k: K, c: Rational, p: u32) {
    use std::collections::btree_map::Entry;
    match terms.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = reduce_mod(&(e.get() + c), p);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Element of a (Laurent) polynomial ring, kept in canonical form.
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(ring: &Ring) -> Self {
        LaurentPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        ring.push_term(&mut p.terms, Monomial::one(ring.len()), c);
        p
    }

    pub fn gen(ring: &Ring, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.len(), i, 1), Rational::one())
    }

    /// Generator by name; panics on unknown names (test and catalog helper).
    pub fn var(ring: &Ring, name: &str) -> Self {
        let i = ring
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown generator `{name}`"));
        Self::gen(ring, i)
    }

    /// Single term; the caller guarantees the exponents are admissible.
    pub fn term(ring: &Ring, m: Monomial, c: Rational) -> Self {
        debug_assert!(ring.check_monomial(&m).is_ok());
        let mut p = Self::zero(ring);
        ring.push_term(&mut p.terms, m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ring: &Ring, terms: I) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            ring.check_monomial(&m)?;
            ring.push_term(&mut p.terms, m, c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Largest exponent magnitude sum over the terms.
    pub fn abs_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::abs_degree).max().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_into(&mut out.terms, m.clone(), c.clone(), self.ring.characteristic());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let mut out = Self::zero(&self.ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                self.ring.push_term(&mut out.terms, a.mul(b), ca * cb);
            }
        }
        Ok(out)
    }

    fn same(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, x) in &self.terms {
            self.ring.push_term(&mut out.terms, m.clone(), x * c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        let mut out = Self::zero(&self.ring);
        for (a, x) in &self.terms {
            self.ring.push_term(&mut out.terms, a.mul(m), x * c);
        }
        out
    }

    /// `Some(inverse)` for a unit: a nonzero scalar times a monomial in the
    /// invertible generators.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let inv = m.inverse();
        if self.ring.check_monomial(&inv).is_err() {
            return None;
        }
        Some(Self::term(&self.ring, inv, c.recip()))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            let inv = self
                .unit_inverse()
                .ok_or_else(|| AlgebraError::NotInvertible(self.to_string()))?;
            return inv.pow(-e);
        }
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut k = e as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Partial derivative with respect to generator `k`.
    pub fn partial(&self, k: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e != 0 {
                let mut d = m.clone();
                d.0[k] -= 1;
                self.ring.push_term(&mut out.terms, d, c * int(e as i64));
            }
        }
        out
    }

    /// Value at a point of `k^n`; invertible generators must map to nonzero values.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e != 0 {
                    v *= pow_rational(x, e);
                }
            }
            total += v;
        }
        self.ring.canon_coeff(&total)
    }

    /// Re-expresses the polynomial over `target`, sending generator `i` to
    /// generator `map[i]`.
    pub fn remap(&self, target: &Ring, map: &[usize]) -> Self {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            target.push_term(&mut out.terms, Monomial(e), c.clone());
        }
        out
    }

    /// Substitutes each generator by a polynomial of another ring. Negative
    /// exponents require unit images.
    pub fn substitute(&self, images: &[LaurentPoly], target: &Ring) -> Result<Self> {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut v = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    v = v.checked_mul(&images[i].pow(e)?)?;
                }
            }
            out = out.checked_add(&v)?;
        }
        Ok(out)
    }

    /// Terms ordered from the largest monomial down.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }
}

pub fn pow_rational(x: &Rational, e: i32) -> Rational {
    let r = num::pow::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

/// Writes `c*body` with sign handling; `body = "1"` collapses to the scalar.
pub(crate) fn fmt_scaled(c: &Rational, body: &str, first: bool) -> String {
    let neg = c.is_negative();
    let a = c.abs();
    let mag = if body == "1" {
        fmt_rational(&a)
    } else if a.is_one() {
        body.to_string()
    } else {
        format!("{}*{}", fmt_rational(&a), body)
    };
    match (first, neg) {
        (true, false) => mag,
        (true, true) => format!("-{mag}"),
        (false, false) => format!(" + {mag}"),
        (false, true) => format!(" - {mag}"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms_desc() {
            write!(f, "{}", fmt_scaled(c, &self.ring.fmt_monomial(m), first))?;
            first = false;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl std::ops::$tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                let f: fn(&LaurentPoly, &LaurentPoly) -> Result<LaurentPoly> = $body;
                f(self, rhs).expect("polynomial operands over different generator sets")
            }
        }
        impl std::ops::$tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                std::ops::$tr::$method(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.checked_add(b));
binop!(Sub, sub, |a, b| a.checked_add(&-b));
binop!(Mul, mul, |a, b| a.checked_mul(b));

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Integer value of a rational, if it is one and fits.
pub fn rational_to_i64(q: &Rational) -> Option<i64> {
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}
