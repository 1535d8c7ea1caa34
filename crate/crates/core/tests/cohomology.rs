use poisson_hopf::catalog::{catalog_get, Bindings};
use poisson_hopf::cohomology::{coboundary, homology_boundary, hp_compute, ChainElement, MultiDerivation};
use poisson_hopf::format::{parse_poly, parse_uea_expr};
use poisson_hopf::random;
use poisson_hopf::ring::int;
use poisson_hopf::uea::{PbwElement, Uea};
use poisson_hopf::{GeneratorSet, PoissonAlgebra};

fn poisson(name: &str) -> PoissonAlgebra {
    catalog_get(name, &Bindings::new()).unwrap().poisson
}

#[test]
fn coboundary_of_a_function() {
    let sym = poisson("symplectic");
    let r = sym.ring().clone();
    let mut q = MultiDerivation::zero(0);
    q.set(vec![], parse_poly(&r, "x").unwrap());
    let d = coboundary(&sym, &q).unwrap();
    assert_eq!(d.arity, 1);
    assert!(d.on_generators(&r, &[0]).is_zero());
    assert_eq!(d.on_generators(&r, &[1]), parse_poly(&r, "-1").unwrap());
}

#[test]
fn coboundary_squares_to_zero() {
    for name in ["symplectic", "gk3", "poissonu", "typea"] {
        let alg = poisson(name);
        let mut rng = random::rng(21);
        for k in 0..20 {
            let q = MultiDerivation::random(alg.ring(), k % 3, &mut rng);
            let dd = coboundary(&alg, &coboundary(&alg, &q).unwrap()).unwrap();
            assert!(dd.is_zero(), "{name}: {}", q.display(alg.ring()));
        }
    }
}

#[test]
fn trivial_bracket_has_zero_coboundary() {
    let r = GeneratorSet::parse_list("x y z").unwrap();
    let alg = PoissonAlgebra::trivial(&r);
    let mut rng = random::rng(4);
    for s in 0..=3 {
        let q = MultiDerivation::random(&r, s, &mut rng);
        assert!(coboundary(&alg, &q).unwrap().is_zero());
    }
}

#[test]
fn symplectic_plane_cohomology() {
    let sym = poisson("symplectic");
    assert_eq!(hp_compute(&sym, 0, 6).unwrap().dims, vec![1, 0, 0, 0, 0, 0, 0]);
    assert_eq!(hp_compute(&sym, 1, 6).unwrap().dims, vec![0; 7]);
    assert_eq!(hp_compute(&sym, 2, 6).unwrap().dims, vec![0; 7]);
}

#[test]
fn trivial_bracket_cohomology_is_all_cochains() {
    let line = poisson("line");
    assert_eq!(hp_compute(&line, 0, 6).unwrap().dims, vec![1; 7]);
    assert_eq!(hp_compute(&line, 1, 6).unwrap().dims, vec![1; 7]);

    let r = GeneratorSet::new(&["x", "y"], &[false, false]).unwrap().with_grading(vec![1, 1]).unwrap().into_ring();
    let plane = PoissonAlgebra::trivial(&r);
    // Q(x_i) = p with deg p = d: two components, d + 1 monomials each.
    let want: Vec<usize> = (0..=4).map(|d| 2 * (d + 1)).collect();
    assert_eq!(hp_compute(&plane, 1, 4).unwrap().dims, want);
    assert_eq!(hp_compute(&plane, 2, 4).unwrap().dims, (1..=5).collect::<Vec<_>>());
}

#[test]
fn cohomology_preconditions() {
    assert!(hp_compute(&poisson("typea"), 1, 2).is_err());
    let r = GeneratorSet::parse_list("x y").unwrap();
    let mixed = PoissonAlgebra::new(&r, vec![(0, 1, parse_poly(&r, "x + 1").unwrap())]).unwrap();
    assert!(hp_compute(&mixed, 1, 2).is_err());
}

#[test]
fn chain_boundaries() {
    let sym = poisson("symplectic");
    let r = sym.ring().clone();
    let u = Uea::new(&sym).unwrap();
    let mut c = ChainElement::zero(2);
    c.add_term(vec![0, 1], PbwElement::one(&r));
    let b = homology_boundary(&u, &c).unwrap();
    let mut want = ChainElement::zero(1);
    want.add_term(vec![1], u.h_gen(0));
    want.add_term(vec![0], u.h_gen(1).scale(&int(-1)));
    assert_eq!(b, want);

    let v = parse_uea_expr(&u, "y^2*h(y) + 3").unwrap();
    let mut c = ChainElement::zero(1);
    c.add_term(vec![0], v.clone());
    let mut want = ChainElement::zero(0);
    want.add_term(vec![], u.mul(&v, &u.h_gen(0)));
    assert_eq!(homology_boundary(&u, &c).unwrap(), want);
}

#[test]
fn boundary_squares_to_zero() {
    for name in ["gk3", "typea", "symplectic"] {
        let alg = poisson(name);
        let u = Uea::new(&alg).unwrap();
        let mut rng = random::rng(8);
        for k in 0..50 {
            let c = ChainElement::random(&u, 1 + k % alg.ring().len().min(3), &mut rng);
            let bb = homology_boundary(&u, &homology_boundary(&u, &c).unwrap()).unwrap();
            assert!(bb.is_zero(), "{name}: {}", c.display(alg.ring()));
        }
    }
}
