use poisson_hopf::catalog::{catalog_get, Bindings};
use poisson_hopf::format::{parse_poly, parse_tensor};
use poisson_hopf::hopf::PolyLegs;
use poisson_hopf::poisson::{check_ore_data, check_poisson_module, make_ore_extension, OreData, PoissonModuleData};
use poisson_hopf::ring::int;
use poisson_hopf::{GeneratorSet, LaurentPoly, PoissonAlgebra, Ring};

fn ring(list: &str) -> Ring {
    GeneratorSet::parse_list(list).unwrap()
}

fn p(r: &Ring, s: &str) -> LaurentPoly {
    parse_poly(r, s).unwrap()
}

fn symplectic() -> PoissonAlgebra {
    catalog_get("symplectic", &Bindings::new()).unwrap().poisson
}

#[test]
fn laurent_arithmetic() {
    let r = ring("g* x");
    assert_eq!(&p(&r, "x + 1") * &p(&r, "x - 1"), p(&r, "x^2 - 1"));
    assert_eq!(&p(&r, "g") * &p(&r, "g^-1"), LaurentPoly::one(&r));
    assert!((&LaurentPoly::zero(&r) * &p(&r, "3*g*x^2 + x")).is_zero());
    assert_eq!(p(&r, "g^2").unit_inverse().unwrap(), p(&r, "g^-2"));
    assert!(p(&r, "g + 1").unit_inverse().is_none());
}

#[test]
fn tensor_products() {
    let r = ring("g* x y");
    let legs = PolyLegs(r.clone());
    let t = |s: &str| parse_tensor(&r, s).unwrap();
    assert_eq!(t("x@1").mul(&t("1@y"), &legs).unwrap(), t("x@y"));
    assert_eq!(t("g@g").mul(&t("g^-1@g^-1"), &legs).unwrap(), t("1@1"));
    let s = t("1@x + x@1");
    assert_eq!(s.mul(&s, &legs).unwrap(), t("1@x^2 + 2*x@x + x^2@1"));
}

#[test]
fn brackets_by_leibniz() {
    let sym = symplectic();
    let r = sym.ring().clone();
    assert_eq!(sym.bracket(&p(&r, "x^2"), &p(&r, "y")).unwrap(), p(&r, "2*x"));
    let f = p(&r, "x^3*y - 2*y^2 + 5");
    assert!(sym.bracket(&f, &f).unwrap().is_zero());

    let typea = catalog_get("typea", &Bindings::new()).unwrap().poisson;
    let r = typea.ring().clone();
    // {xg, g} = {x, g} g = (g x) g
    assert_eq!(typea.bracket(&p(&r, "x*g"), &p(&r, "g")).unwrap(), p(&r, "g^2*x"));
}

#[test]
fn jacobi_verdicts() {
    let u = catalog_get("poissonu", &Bindings::new()).unwrap().poisson;
    assert!(u.check_jacobi().passed());
    assert!(PoissonAlgebra::trivial(&ring("a b c")).check_jacobi().passed());

    let r = ring("x y z");
    let bad = PoissonAlgebra::new(&r, vec![(0, 1, p(&r, "x")), (1, 2, p(&r, "y")), (2, 0, p(&r, "z"))]).unwrap();
    let j = bad.jacobi_sum(&p(&r, "x"), &p(&r, "y"), &p(&r, "z"));
    // {x,{y,z}} + {y,{z,x}} + {z,{x,y}} = {x,y} + {y,z} + {z,x}
    assert_eq!(j, p(&r, "x + y + z"));
    assert!(!bad.check_jacobi().passed());
}

fn rank_one(sym: &PoissonAlgebra, on_x: &str, on_y: &str) -> PoissonModuleData {
    let r = sym.ring();
    PoissonModuleData { rank: 1, action: vec![vec![vec![p(r, on_x)]], vec![vec![p(r, on_y)]]] }
}

#[test]
fn poisson_modules() {
    let sym = symplectic();
    // {x, e} = e, {y, e} = 0: {{x,y}, e} = 0 = {x,{y,e}} - {y,{x,e}}.
    assert!(check_poisson_module(&sym, &rank_one(&sym, "1", "0"), 0).passed());
    // {x, e} = e, {y, e} = e also satisfies the identity on (x, y).
    assert!(check_poisson_module(&sym, &rank_one(&sym, "1", "1"), 0).passed());
    // {x, e} = 0, {y, e} = y e: {x,{y,e}} = {x,y} e = e, but {{x,y}, e} = 0.
    assert!(!check_poisson_module(&sym, &rank_one(&sym, "0", "y"), 0).passed());
}

#[test]
fn ore_data_conditions() {
    let r = ring("g*");
    let base = PoissonAlgebra::trivial(&r);
    let d = OreData { base: base.clone(), alpha: vec![p(&r, "g")], delta: vec![LaurentPoly::zero(&r)] };
    assert!(check_ore_data(&d).passed());
    assert!(check_ore_data(&OreData::trivial(&base)).passed());

    let sym = symplectic();
    let sr = sym.ring().clone();
    let zero = || LaurentPoly::zero(&sr);
    // alpha(x) = 1 is a Poisson derivation of the plane.
    let d = OreData { base: sym.clone(), alpha: vec![p(&sr, "1"), zero()], delta: vec![zero(), zero()] };
    assert!(check_ore_data(&d).passed());
    let d = OreData { base: sym.clone(), alpha: vec![p(&sr, "x^2"), zero()], delta: vec![zero(), zero()] };
    assert!(!check_ore_data(&d).passed());
}

#[test]
fn ore_extension_brackets() {
    let r = ring("g*");
    let d = OreData { base: PoissonAlgebra::trivial(&r), alpha: vec![p(&r, "g")], delta: vec![LaurentPoly::zero(&r)] };
    let ext = make_ore_extension(&d, "x").unwrap();
    let typea = catalog_get("typea", &Bindings::new()).unwrap().poisson;
    assert_eq!(ext.table(), typea.table());
    let er = ext.ring().clone();
    assert_eq!(ext.bracket(&p(&er, "x"), &p(&er, "g")).unwrap(), p(&er, "g*x"));

    let d = OreData::trivial(&symplectic());
    let ext = make_ore_extension(&d, "z").unwrap();
    let er = ext.ring().clone();
    for v in ["x", "y", "x*y + 3"] {
        assert!(ext.bracket(&p(&er, "z"), &p(&er, v)).unwrap().is_zero());
    }
    assert_eq!(ext.bracket(&p(&er, "x"), &p(&er, "y")).unwrap(), LaurentPoly::constant(&er, int(1)));
}

#[test]
fn gk3_as_iterated_extension() {
    // k[x1] -> k[x1, x2] -> k[x1, x2, x3] with delta(x1) = x1 + x2, delta(x2) = x2.
    let r1 = ring("x1");
    let step = make_ore_extension(&OreData::trivial(&PoissonAlgebra::trivial(&r1)), "x2").unwrap();
    let r2 = step.ring().clone();
    let d = OreData {
        base: step.clone(),
        alpha: vec![LaurentPoly::zero(&r2), LaurentPoly::zero(&r2)],
        delta: vec![p(&r2, "x1 + x2"), p(&r2, "x2")],
    };
    assert!(check_ore_data(&d).passed());
    let gk3 = make_ore_extension(&d, "x3").unwrap();
    let catalog = catalog_get("gk3", &Bindings::new()).unwrap().poisson;
    assert_eq!(gk3.table(), catalog.table());
}
