//! The smash product `R^e # (kG)^e` for a biproduct `C = R # kG` with a
//! free abelian group `G` acting on `R` through `g * y = g^-1 {g, y}`, and
//! the maps `gamma`, `lambda` from `C` into it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Mutex;

use num::{One, Zero};
use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::hopf::{monomial_poly, tensor_of, HopfData};
use crate::linalg::{span, SparseVec};
use crate::pbw::HMonomial;
use crate::poisson::PoissonAlgebra;
use crate::random;
use crate::report::{CheckResult, Report};
use crate::ring::{fmt_scaled, GeneratorSet, LaurentPoly, Monomial, Rational, Ring};
use crate::tensor::Leg;
use crate::uea::{h_monomials, monomials_up_to, PbwElement, Uea};

/// `R` with a primitive-generated Hopf structure, group generator names, and
/// `star[i][j] = g_i * y_j`, an element of `R`.
#[derive(Clone, Debug)]
pub struct BiproductInput {
    pub r: HopfData,
    pub groups: Vec<String>,
    pub star: Vec<Vec<LaurentPoly>>,
}

/// Element of `R^e # (kG)^e` over the basis `(y^m b^I) # (g^a h^J)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SmashElement {
    terms: BTreeMap<(Leg, Leg), Rational>,
}

impl SmashElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(Leg, Leg), Rational> {
        &self.terms
    }

    pub fn add_term(&mut self, r: Leg, k: Leg, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (r, k);
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &SmashElement) -> SmashElement {
        let mut out = self.clone();
        for ((r, k), c) in &other.terms {
            out.add_term(r.clone(), k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SmashElement) -> SmashElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> SmashElement {
        if c.is_zero() {
            return SmashElement::zero();
        }
        SmashElement { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// `r # k`.
    pub fn tensor(r: &PbwElement, k: &PbwElement) -> SmashElement {
        let mut out = SmashElement::zero();
        for (a, c) in r.to_legs() {
            for (b, d) in k.to_legs() {
                out.add_term(a.clone(), b, &c * d);
            }
        }
        out
    }

    fn vector(&self) -> SparseVec<(Leg, Leg)> {
        self.terms.clone()
    }
}

pub struct Smash {
    input: BiproductInput,
    c: PoissonAlgebra,
    re: Uea,
    kg: Uea,
    nr: usize,
    rank: usize,
    act_memo: Mutex<HashMap<(Leg, Leg), Vec<(Leg, Rational)>>>,
}

impl Smash {
    pub fn new(input: BiproductInput) -> Result<Self> {
        let rring = input.r.ring().clone();
        let nr = rring.len();
        let rank = input.groups.len();
        if rank == 0 {
            return Err(AlgebraError::Invalid("a biproduct needs at least one group generator".into()));
        }
        if (0..nr).any(|j| rring.is_invertible(j)) {
            return Err(AlgebraError::Invalid("the braided factor R must be a polynomial ring".into()));
        }
        if input.star.len() != rank || input.star.iter().any(|row| row.len() != nr) {
            return Err(AlgebraError::Invalid("star needs one value per group generator and generator of R".into()));
        }
        let mut names: Vec<String> = rring.names().to_vec();
        names.extend(input.groups.iter().cloned());
        let mut inv = vec![false; nr];
        inv.extend(vec![true; rank]);
        let cring = GeneratorSet::new(&names, &inv)?.into_ring();
        let to_c: Vec<usize> = (0..nr).collect();
        let mut table: Vec<(usize, usize, LaurentPoly)> = input
            .r
            .poisson()
            .table()
            .iter()
            .map(|((i, j), p)| (*i, *j, p.remap(&cring, &to_c)))
            .collect();
        for (i, row) in input.star.iter().enumerate() {
            for (j, d) in row.iter().enumerate() {
                let g = LaurentPoly::gen(&cring, nr + i);
                let v = &g * &d.remap(&cring, &to_c);
                if !v.is_zero() {
                    table.push((nr + i, j, v));
                }
            }
        }
        let c = PoissonAlgebra::new(&cring, table)?;
        let re = Uea::new(input.r.poisson())?;
        let kg = Uea::with_hopf(&group_algebra(&input.groups)?)?;
        Ok(Smash { input, c, re, kg, nr, rank, act_memo: Mutex::new(HashMap::new()) })
    }

    /// The biproduct `C` as a Poisson algebra in the generators of `R` and `G`.
    pub fn c(&self) -> &PoissonAlgebra {
        &self.c
    }

    pub fn r_envelope(&self) -> &Uea {
        &self.re
    }

    pub fn kg_envelope(&self) -> &Uea {
        &self.kg
    }

    fn rring(&self) -> &Ring {
        self.input.r.ring()
    }

    fn gring(&self) -> &Ring {
        self.kg.ring()
    }

    fn split(&self, m: &Monomial) -> (Monomial, Monomial) {
        (Monomial(m.0[..self.nr].to_vec()), Monomial(m.0[self.nr..].to_vec()))
    }

    /// `g^a * f` on `R`: the derivation `sum_i a_i D_i`.
    fn star_of(&self, a: &[i32], f: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.rring());
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for j in 0..self.nr {
                let d = f.partial(j);
                if !d.is_zero() {
                    out = &out + &(&d * &self.input.star[i][j]).scale(&Rational::from_integer(ai.into()));
                }
            }
        }
        out
    }

    fn unit_vec(&self, i: usize) -> Vec<i32> {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    /// `g^a` acts as the automorphism fixing `R` with `b_y -> b_y + g^a * y`.
    fn act_group(&self, a: &[i32], u: &PbwElement) -> PbwElement {
        let ring = self.rring();
        let mut out = PbwElement::zero(ring);
        for (h, f) in u.terms() {
            let mut acc = PbwElement::from_poly(f);
            for j in h.letters() {
                let y = LaurentPoly::gen(ring, j);
                let img = self.re.h_gen(j).add(&PbwElement::from_poly(&self.star_of(a, &y)));
                acc = self.re.mul(&acc, &img);
            }
            out = out.add(&acc);
        }
        out
    }

    /// `h_{g_i}` acts as a `(g_i, g_i)`-skew derivation with
    /// `h . y = g * y` and `h . b_y = b_{g * y} + g * (g * y)`.
    fn act_h(&self, i: usize, u: &PbwElement) -> PbwElement {
        let ring = self.rring();
        let e = self.unit_vec(i);
        let mut out = PbwElement::zero(ring);
        for (h, f) in u.terms() {
            let mut factors: Vec<PbwElement> = vec![PbwElement::from_poly(f)];
            factors.extend(h.letters().into_iter().map(|j| self.re.h_gen(j)));
            let moved: Vec<PbwElement> = factors.iter().map(|x| self.act_group(&e, x)).collect();
            for p in 0..factors.len() {
                let hit = if p == 0 {
                    PbwElement::from_poly(&self.star_of(&e, f))
                } else {
                    let j = h.letters()[p - 1];
                    let dy = self.star_of(&e, &LaurentPoly::gen(ring, j));
                    self.re.h_of(&dy).add(&PbwElement::from_poly(&self.star_of(&e, &dy)))
                };
                if hit.is_zero() {
                    continue;
                }
                let mut parts: Vec<PbwElement> = moved[..p].to_vec();
                parts.push(hit);
                parts.extend_from_slice(&moved[p + 1..]);
                out = out.add(&self.re.product(&parts));
            }
        }
        out
    }

    /// Action of a basis element `g^a h^J` of `(kG)^e` on a basis element of `R^e`.
    fn act(&self, k: &Leg, r: &Leg) -> Vec<(Leg, Rational)> {
        let key = (k.clone(), r.clone());
        if let Some(hit) = self.act_memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let Leg::Pbw(g, hs) = k else { panic!("enveloping algebra leg expected") };
        let mut v = PbwElement::from_legs(self.rring(), &[(r.clone(), Rational::one())]);
        for i in hs.letters().into_iter().rev() {
            v = self.act_h(i, &v);
        }
        let out = self.act_group(&g.0, &v).to_legs();
        self.act_memo.lock().unwrap().insert(key, out.clone());
        out
    }

    /// `(r # k)(r' # k') = r (k_1 . r') # k_2 k'`.
    pub fn mul(&self, x: &SmashElement, y: &SmashElement) -> Result<SmashElement> {
        let rring = self.rring().clone();
        let gring = self.gring().clone();
        let mut out = SmashElement::zero();
        let mut deltas: HashMap<Leg, Vec<(Leg, Leg, Rational)>> = HashMap::new();
        for ((r1, k1), c1) in &x.terms {
            if !deltas.contains_key(k1) {
                let d = self.kg.delta(&PbwElement::from_legs(&gring, &[(k1.clone(), Rational::one())]))?;
                deltas.insert(k1.clone(), d.terms().map(|(l, c)| (l[0].clone(), l[1].clone(), c.clone())).collect());
            }
            let left = PbwElement::from_legs(&rring, &[(r1.clone(), c1.clone())]);
            for ((r2, k2), c2) in &y.terms {
                let kk = PbwElement::from_legs(&gring, &[(k2.clone(), c2.clone())]);
                for (ka, kb, c) in &deltas[k1] {
                    let moved = PbwElement::from_legs(&rring, &self.act(ka, r2));
                    let rpart = self.re.mul(&left, &moved);
                    let kpart = self.kg.mul(&PbwElement::from_legs(&gring, &[(kb.clone(), c.clone())]), &kk);
                    out = out.add(&SmashElement::tensor(&rpart, &kpart));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, x: &SmashElement, y: &SmashElement) -> Result<SmashElement> {
        Ok(self.mul(x, y)?.sub(&self.mul(y, x)?))
    }

    /// `gamma(y^m g^a) = y^m # g^a`.
    pub fn gamma(&self, f: &LaurentPoly) -> SmashElement {
        let mut out = SmashElement::zero();
        for (m, c) in f.terms() {
            let (ym, gm) = self.split(m);
            out.add_term(
                Leg::Pbw(ym, HMonomial::one(self.nr)),
                Leg::Pbw(gm, HMonomial::one(self.rank)),
                c.clone(),
            );
        }
        out
    }

    /// `lambda(x g) = x # h_g + (g . b_x) # g`.
    pub fn lambda(&self, f: &LaurentPoly) -> SmashElement {
        let mut out = SmashElement::zero();
        for (m, c) in f.terms() {
            let (ym, gm) = self.split(m);
            let x = monomial_poly(self.rring(), &ym).scale(c);
            let g = monomial_poly(self.gring(), &gm);
            out = out.add(&SmashElement::tensor(&PbwElement::from_poly(&x), &self.kg.h_of(&g)));
            let moved = self.act_group(&gm.0, &self.re.h_of(&x));
            out = out.add(&SmashElement::tensor(&moved, &PbwElement::from_poly(&g)));
        }
        out
    }

    pub fn fmt(&self, x: &SmashElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        let mut terms: Vec<_> = x.terms.iter().rev().collect();
        terms.sort_by_key(|((r, k), _)| std::cmp::Reverse(leg_degree(r) + leg_degree(k)));
        for (idx, ((r, k), c)) in terms.into_iter().enumerate() {
            let body = format!("{}#{}", fmt_leg(self.rring(), r, "b"), fmt_leg(self.gring(), k, "h"));
            let _ = write!(s, "{}", fmt_scaled(c, &body, idx == 0));
        }
        s
    }

    /// `g * y := g^-1 {g, y}` computed in `C`.
    fn star_in_c(&self, a: &LaurentPoly, f: &LaurentPoly) -> Result<LaurentPoly> {
        let inv = a.unit_inverse().ok_or_else(|| AlgebraError::NotInvertible(a.to_string()))?;
        Ok(&inv * &self.c.bracket(a, f)?)
    }

    /// Jacobi on `C`, `g * y` landing in `R`, and the three star identities.
    pub fn check_star(&self) -> Result<Report> {
        let cring = self.c.ring().clone();
        let mut report = self.c.check_jacobi();
        report.checks.retain(|c| c.name == "jacobi");
        report.checks[0].name = "biproduct-jacobi".into();
        let mut check = CheckResult::new("star-lemma");
        let mut in_r = CheckResult::new("star-in-r");
        let ys: Vec<LaurentPoly> = (0..self.nr).map(|j| LaurentPoly::gen(&cring, j)).collect();
        let gs: Vec<LaurentPoly> = (0..self.rank).map(|i| LaurentPoly::gen(&cring, self.nr + i)).collect();
        for y in &ys {
            for (i, g) in gs.iter().enumerate() {
                let gy = self.star_in_c(g, y)?;
                if gy.terms().any(|(m, _)| m.0[self.nr..].iter().any(|&e| e != 0)) {
                    in_r.fail(format!("{} * {y}", self.input.groups[i]), gy.to_string());
                }
                let g_inv = g.unit_inverse().expect("group generator");
                let res = self.star_in_c(g, &gy)? - self.c.bracket(g, &self.c.bracket(y, &g_inv)?)?;
                if !res.is_zero() {
                    check.fail(format!("{g} * ({g} * {y})"), res.to_string());
                }
                for t in &gs {
                    let gt = g * t;
                    let res = &self.star_in_c(&gt, y)? - &(&gy + &self.star_in_c(t, y)?);
                    if !res.is_zero() {
                        check.fail(format!("({gt}) * {y}"), res.to_string());
                    }
                    let lhs = self.star_in_c(g, &self.star_in_c(t, y)?)?;
                    let gt_inv = gt.unit_inverse().expect("group element");
                    let rhs = &gt_inv * &self.c.bracket(g, &self.c.bracket(t, y)?)?;
                    let res = &lhs - &rhs;
                    if !res.is_zero() {
                        check.fail(format!("{g} * ({t} * {y})"), res.to_string());
                    }
                }
            }
        }
        report.push(in_r);
        report.push(check);
        Ok(report)
    }

    /// Elements of `C` used to test the structure maps: `y_j g^a` with
    /// `a` in `{0, +-e_i}`, the `g_i^+-1`, and random elements of degree 2.
    pub fn samples(&self, seed: u64, extra: usize) -> Vec<LaurentPoly> {
        let cring = self.c.ring().clone();
        let mut groups: Vec<LaurentPoly> = vec![LaurentPoly::one(&cring)];
        for i in 0..self.rank {
            let g = LaurentPoly::gen(&cring, self.nr + i);
            groups.push(g.unit_inverse().expect("group generator"));
            groups.push(g);
        }
        let mut out: Vec<LaurentPoly> = groups[1..].to_vec();
        for j in 0..self.nr {
            let y = LaurentPoly::gen(&cring, j);
            out.extend(groups.iter().map(|g| &y * g));
        }
        let mut rng = random::rng(seed);
        out.extend((0..extra).map(|_| random::poly(&cring, &mut rng, 2, 3)));
        out
    }

    /// `lambda` is a Lie map, `gamma {a, b} = [lambda a, gamma b]`,
    /// `lambda(ab) = gamma(a) lambda(b) + gamma(b) lambda(a)`, and `gamma`
    /// is multiplicative, on all pairs of samples.
    pub fn check_maps(&self, samples: &[LaurentPoly]) -> Result<Report> {
        let pairs: Vec<(usize, usize)> =
            (0..samples.len()).flat_map(|i| (0..samples.len()).map(move |j| (i, j))).collect();
        let results: Vec<[Option<(String, String)>; 4]> = pairs
            .par_iter()
            .map(|&(i, j)| -> Result<_> {
                let (a, b) = (&samples[i], &samples[j]);
                let at = format!("({a}, {b})");
                let (la, lb, ga, gb) = (self.lambda(a), self.lambda(b), self.gamma(a), self.gamma(b));
                let br = self.c.bracket(a, b)?;
                let ab = a * b;
                let r0 = self.lambda(&br).sub(&self.commutator(&la, &lb)?);
                let r1 = self.gamma(&br).sub(&self.commutator(&la, &gb)?);
                let r2 = self.lambda(&ab).sub(&self.mul(&ga, &lb)?.add(&self.mul(&gb, &la)?));
                let r3 = self.gamma(&ab).sub(&self.mul(&ga, &gb)?);
                let wrap = |r: SmashElement| (!r.is_zero()).then(|| (at.clone(), self.fmt(&r)));
                Ok([wrap(r0), wrap(r1), wrap(r2), wrap(r3)])
            })
            .collect::<Result<_>>()?;
        let names = ["smash-lambda-lie", "smash-gamma-bracket", "smash-lambda-leibniz", "smash-gamma-algebra"];
        let mut report = Report::new();
        for (idx, name) in names.iter().enumerate() {
            let mut c = CheckResult::new(*name);
            for r in &results {
                if let Some((at, res)) = &r[idx] {
                    c.fail(at.clone(), res.clone());
                }
            }
            report.push(c);
        }
        Ok(report)
    }

    /// Basis elements `(y^m b^I) # (g^a h^J)` of total degree at most `d`.
    pub fn slab(&self, d: u32) -> Vec<SmashElement> {
        let mut out = Vec::new();
        for r in self.re.slab(d) {
            let dr = leg_degree(&r.to_legs()[0].0);
            for k in self.kg.slab(d - dr) {
                out.push(SmashElement::tensor(&r, &k));
            }
        }
        out
    }

    /// Every basis element of degree at most `d` is a combination of
    /// products of at most `d` elements from the images of `gamma` and `lambda`
    /// on the generators `y_j`, `g_i` and `g_i^-1`.
    pub fn check_generation(&self, d: u32) -> Result<CheckResult> {
        let cring = self.c.ring().clone();
        let mut gens = Vec::new();
        for j in 0..self.nr {
            let y = LaurentPoly::gen(&cring, j);
            gens.push(self.gamma(&y));
            gens.push(self.lambda(&y));
        }
        for i in 0..self.rank {
            let g = LaurentPoly::gen(&cring, self.nr + i);
            gens.push(self.gamma(&g.unit_inverse().expect("group generator")));
            gens.push(self.gamma(&g));
            gens.push(self.lambda(&g));
        }
        let one = self.gamma(&LaurentPoly::one(&cring));
        let mut layer = vec![one.clone()];
        let mut words = vec![one];
        for _ in 0..d {
            layer = layer
                .par_iter()
                .flat_map_iter(|w| gens.iter().map(move |g| self.mul(w, g)))
                .collect::<Result<_>>()?;
            words.extend(layer.iter().cloned());
        }
        let vecs: Vec<SparseVec<(Leg, Leg)>> = words.iter().map(SmashElement::vector).collect();
        let e = span(&vecs);
        let mut check = CheckResult::new("smash-generation");
        for b in self.slab(d) {
            if !e.contains(&b.vector()) {
                check.fail(format!("degree {d}"), self.fmt(&b));
                break;
            }
        }
        Ok(check)
    }

    /// `(kG)^e` is commutative, the products `h^J g^a` with `|a| + |J| <= d`
    /// are independent, and `y_i -> g_i^-1 h_{g_i}` gives primitive
    /// elements, so `S(g) ⊗ kG` maps into it as a Hopf algebra.
    pub fn check_kg_env(&self, d: u32) -> Result<Report> {
        let ring = self.gring().clone();
        let kg = &self.kg;
        let r = self.rank;
        let mut gens: Vec<PbwElement> = (0..r).map(|i| kg.h_gen(i)).collect();
        for i in 0..r {
            let g = LaurentPoly::gen(&ring, i);
            gens.push(kg.m(&g));
            gens.push(kg.m(&g.unit_inverse().expect("group generator")));
        }
        let mut comm = CheckResult::new("kg-env-commutative");
        for a in &gens {
            for b in &gens {
                let c = kg.commutator(a, b);
                if !c.is_zero() {
                    comm.fail(format!("[{a}, {b}]"), c.to_string());
                }
            }
        }
        let mut products = Vec::new();
        for k in 0..=d {
            for h in h_monomials(r, k) {
                let hp = PbwElement::term(&LaurentPoly::one(&ring), h);
                for m in monomials_up_to(&ring, d - k) {
                    products.push(kg.mul(&hp, &kg.m(&monomial_poly(&ring, &m))));
                }
            }
        }
        let vecs: Vec<SparseVec<Leg>> = products.iter().map(|p| p.to_legs().into_iter().collect()).collect();
        let rank = span(&vecs).rank();
        let mut basis = CheckResult::new("kg-env-basis");
        if rank != products.len() {
            basis.fail(format!("degree {d}"), format!("rank {rank} < {}", products.len()));
        }
        let mut hopf = CheckResult::new("kg-env-hopf");
        for i in 0..r {
            let g = LaurentPoly::gen(&ring, i);
            let y = kg.mul(&kg.m(&g.unit_inverse().expect("group generator")), &kg.h_gen(i));
            let one = PbwElement::one(&ring);
            let prim = crate::uea::pbw_tensor(&y, &one).add(&crate::uea::pbw_tensor(&one, &y));
            let res = kg.delta(&y)?.sub(&prim);
            if !res.is_zero() {
                hopf.fail(format!("y{}", i + 1), res.display(&kg.legs()));
            }
            let res = kg.antipode(&y)?.add(&y);
            if !res.is_zero() || !kg.counit(&y)?.is_zero() {
                hopf.fail(format!("S(y{})", i + 1), res.to_string());
            }
        }
        let mut report = Report::new();
        report.push(comm);
        report.push(basis);
        report.push(hopf);
        Ok(report)
    }

    /// `(xy)z = x(yz)` on random triples of slab elements of degree at most 2.
    pub fn check_associativity(&self, seed: u64, triples: usize) -> Result<CheckResult> {
        use rand::Rng;
        let basis = self.slab(2);
        let mut rng = random::rng(seed);
        let pick = |rng: &mut random::Rng64| {
            let mut x = SmashElement::zero();
            for _ in 0..2 {
                let b = &basis[rng.gen_range(0..basis.len())];
                x = x.add(&b.scale(&Rational::from_integer(rng.gen_range(-3i64..=3).into())));
            }
            x
        };
        let samples: Vec<[SmashElement; 3]> = (0..triples).map(|_| [pick(&mut rng), pick(&mut rng), pick(&mut rng)]).collect();
        let mut check = CheckResult::new("smash-associativity");
        for [x, y, z] in &samples {
            let res = self.mul(&self.mul(x, y)?, z)?.sub(&self.mul(x, &self.mul(y, z)?)?);
            if !res.is_zero() {
                check.fail(format!("({}, {}, {})", self.fmt(x), self.fmt(y), self.fmt(z)), self.fmt(&res));
                break;
            }
        }
        Ok(check)
    }

    /// All smash checks at degree `d`.
    pub fn check_all(&self, d: u32, seed: u64) -> Result<Report> {
        let mut report = self.check_star()?;
        report.extend(self.check_maps(&self.samples(seed, 4))?);
        report.push(self.check_associativity(seed, 20)?);
        report.push(self.check_generation(d)?);
        report.extend(self.check_kg_env(d)?);
        Ok(report)
    }
}

fn leg_degree(l: &Leg) -> u32 {
    match l {
        Leg::Pbw(m, h) => m.abs_degree() + h.degree(),
        Leg::Poly(m) => m.abs_degree(),
        Leg::Theta(h) => h.degree(),
    }
}

fn fmt_leg(ring: &Ring, l: &Leg, h_name: &str) -> String {
    let Leg::Pbw(m, h) = l else { return "?".into() };
    let hs = h.fmt_with(|i| format!("{h_name}({})", ring.name(i)));
    match (m.is_one(), h.is_one()) {
        (_, true) => ring.fmt_monomial(m),
        (true, false) => hs,
        (false, false) => format!("{}*{}", ring.fmt_monomial(m), hs),
    }
}

/// `kG` for a free abelian group, with trivial bracket.
pub fn group_algebra(names: &[String]) -> Result<HopfData> {
    let ring = GeneratorSet::new(names, &vec![true; names.len()])?.into_ring();
    let gs: Vec<LaurentPoly> = (0..names.len()).map(|i| LaurentPoly::gen(&ring, i)).collect();
    let delta = gs.iter().map(|g| tensor_of(&[g, g])).collect();
    let antipode = gs.iter().map(|g| g.unit_inverse().expect("group generator")).collect();
    HopfData::new(PoissonAlgebra::trivial(&ring), delta, vec![Rational::one(); names.len()], antipode)
}

/// Distinct monomials appearing in a family of smash elements.
pub fn support(xs: &[SmashElement]) -> BTreeSet<(Leg, Leg)> {
    xs.iter().flat_map(|x| x.terms.keys().cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, GeneratorSet};

    fn graded_type_a() -> Smash {
        let r = GeneratorSet::parse_list("y").unwrap();
        let y = LaurentPoly::var(&r, "y");
        let one = LaurentPoly::one(&r);
        let delta = vec![tensor_of(&[&y, &one]).add(&tensor_of(&[&one, &y]))];
        let hopf = HopfData::new(PoissonAlgebra::trivial(&r), delta, vec![int(0)], vec![-y.clone()]).unwrap();
        Smash::new(BiproductInput { r: hopf, groups: vec!["g".into()], star: vec![vec![-y]] }).unwrap()
    }

    #[test]
    fn lambda_of_y_g() {
        let s = graded_type_a();
        let c = s.c().ring().clone();
        let yg = &LaurentPoly::var(&c, "y") * &LaurentPoly::var(&c, "g");
        assert_eq!(s.fmt(&s.lambda(&yg)), "-y#g + y#h(g) + b(y)#g");
    }

    #[test]
    fn graded_type_a_passes() {
        let s = graded_type_a();
        let r = s.check_all(2, 7).unwrap();
        assert!(r.passed(), "{r}");
    }
}
