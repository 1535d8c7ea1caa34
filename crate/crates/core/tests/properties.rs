use proptest::prelude::*;

use poisson_hopf::catalog::{catalog_get, Bindings};
use poisson_hopf::cohomology::{coboundary, homology_boundary, ChainElement, MultiDerivation};
use poisson_hopf::format::{parse_algebra, parse_poly, AlgebraFile};
use poisson_hopf::hopf::tensor_bracket;
use poisson_hopf::random::{self, Rng64};
use poisson_hopf::ring::rat;
use poisson_hopf::uea::{Letter, NcWord, Strategy, Uea};
use poisson_hopf::LaurentPoly;

const POISSON_HOPF: [&str; 5] = ["typea", "gk3", "xyzg", "ps-nonabelian", "osl2"];
const BRACKETS: [&str; 6] = ["typea", "gk3", "gk4", "poissonu", "symplectic", "xyzg"];

fn load(name: &str) -> AlgebraFile {
    catalog_get(name, &Bindings::new()).unwrap()
}

fn poly(f: &AlgebraFile, rng: &mut Rng64, num: i64, den: i64) -> LaurentPoly {
    random::poly(f.ring(), rng, 2, 3).scale(&rat(num, den))
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn counit_kills_brackets(k in 0..POISSON_HOPF.len(), seed: u64) {
        let f = load(POISSON_HOPF[k]);
        let h = f.hopf().unwrap();
        let mut rng = random::rng(seed);
        let (a, b) = (poly(&f, &mut rng, 1, 1), poly(&f, &mut rng, 1, 1));
        let ab = f.poisson.bracket(&a, &b).unwrap();
        prop_assert_eq!(h.counit(&ab), rat(0, 1));
    }

    #[test]
    fn antipode_reverses_brackets(k in 0..POISSON_HOPF.len(), seed: u64) {
        let f = load(POISSON_HOPF[k]);
        let h = f.hopf().unwrap();
        let mut rng = random::rng(seed);
        let (a, b) = (poly(&f, &mut rng, 1, 1), poly(&f, &mut rng, 1, 1));
        let lhs = h.antipode(&f.poisson.bracket(&a, &b).unwrap()).unwrap();
        let rhs = f.poisson.bracket(&h.antipode(&b).unwrap(), &h.antipode(&a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_preserves_brackets(k in 0..POISSON_HOPF.len(), seed: u64) {
        let f = load(POISSON_HOPF[k]);
        let h = f.hopf().unwrap();
        let mut rng = random::rng(seed);
        let (a, b) = (poly(&f, &mut rng, 1, 1), poly(&f, &mut rng, 1, 1));
        let lhs = h.delta(&f.poisson.bracket(&a, &b).unwrap());
        let rhs = tensor_bracket(&f.poisson, &h.delta(&a), &h.delta(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_identity(k in 0..BRACKETS.len(), seed: u64, num in -4i64..=4, den in 1i64..=3) {
        let f = load(BRACKETS[k]);
        let mut rng = random::rng(seed);
        let a = poly(&f, &mut rng, num, den);
        let (b, c) = (poly(&f, &mut rng, 1, 1), poly(&f, &mut rng, 1, 1));
        prop_assert!(f.poisson.jacobi_sum(&a, &b, &c).is_zero());
    }

    #[test]
    fn normal_forms_are_confluent(k in 0..BRACKETS.len(), seed: u64, len in 1usize..=4) {
        let f = load(BRACKETS[k]);
        let u = Uea::new(&f.poisson).unwrap();
        let mut rng = random::rng(seed);
        let letters: Vec<Letter> = (0..len)
            .map(|i| {
                let p = random::poly(u.ring(), &mut rng, 2, 2);
                if (seed >> i) & 1 == 0 { Letter::H(p) } else { Letter::M(p) }
            })
            .collect();
        let w = NcWord::new(letters);
        let nf = u.normal_form(&w);
        prop_assert_eq!(u.rewrite(&w, Strategy::Leftmost), nf.clone());
        prop_assert_eq!(u.rewrite(&w, Strategy::Rightmost), nf);
    }

    #[test]
    fn coboundary_is_a_differential(k in 0..BRACKETS.len(), seed: u64, arity in 0usize..=2) {
        let f = load(BRACKETS[k]);
        let mut rng = random::rng(seed);
        let q = MultiDerivation::random(f.ring(), arity, &mut rng);
        let dq = coboundary(&f.poisson, &q).unwrap();
        prop_assert!(coboundary(&f.poisson, &dq).unwrap().is_zero());
    }

    #[test]
    fn chain_boundary_is_a_differential(k in 0..3usize, seed: u64, degree in 1usize..=3) {
        let f = load(["gk3", "symplectic", "typea"][k]);
        let u = Uea::new(&f.poisson).unwrap();
        let mut rng = random::rng(seed);
        let c = ChainElement::random(&u, degree.min(f.ring().len()), &mut rng);
        let bb = homology_boundary(&u, &homology_boundary(&u, &c).unwrap()).unwrap();
        prop_assert!(bb.is_zero());
    }

    #[test]
    fn polynomials_print_and_parse_back(k in 0..BRACKETS.len(), seed: u64, num in -9i64..=9, den in 1i64..=7) {
        let f = load(BRACKETS[k]);
        let mut rng = random::rng(seed);
        let p = poly(&f, &mut rng, num, den);
        prop_assert_eq!(parse_poly(f.ring(), &p.to_string()).unwrap(), p);
    }

    #[test]
    fn constant_brackets_parse(c in -20i64..=20) {
        let text = format!("generators = x y\n{{x,y}} = {c}\n");
        let f = parse_algebra(&text, Default::default()).unwrap();
        let x = parse_poly(f.ring(), "x").unwrap();
        let y = parse_poly(f.ring(), "y").unwrap();
        prop_assert_eq!(f.poisson.bracket(&x, &y).unwrap(), parse_poly(f.ring(), &c.to_string()).unwrap());
    }
}
