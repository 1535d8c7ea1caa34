use poisson_hopf::catalog::{catalog_get, Bindings};
use poisson_hopf::format::{parse_poly, parse_uea_expr, AlgebraFile};
use poisson_hopf::random;
use poisson_hopf::uea::{pbw_tensor, Letter, NcWord, PbwElement, Strategy, Uea};
use poisson_hopf::LaurentPoly;

fn load(name: &str) -> AlgebraFile {
    catalog_get(name, &Bindings::new()).unwrap()
}

fn hopf_uea(name: &str) -> Uea {
    Uea::with_hopf(load(name).hopf().unwrap()).unwrap()
}

fn e(u: &Uea, s: &str) -> PbwElement {
    parse_uea_expr(u, s).unwrap()
}

fn p(u: &Uea, s: &str) -> LaurentPoly {
    parse_poly(u.ring(), s).unwrap()
}

#[test]
fn hamiltonians_of_products() {
    let u = hopf_uea("typea");
    assert_eq!(u.h_of(&p(&u, "x^2")), e(&u, "2*x*h(x)"));
    assert!(u.h_of(&p(&u, "1")).is_zero());
    assert!(u.h_of(&p(&u, "-7/2")).is_zero());
    // 0 = h(g g^-1) = g h(g^-1) + g^-1 h(g)
    assert_eq!(u.h_of(&p(&u, "g^-1")), e(&u, "-g^-2*h(g)"));
}

#[test]
fn reordering() {
    let u = hopf_uea("typea");
    // h_x m_g = m_g h_x + m_{x,g} with {x, g} = g x
    let w = NcWord::new(vec![Letter::H(p(&u, "x")), Letter::M(p(&u, "g"))]);
    let expect = e(&u, "g*h(x) + g*x");
    assert_eq!(u.normal_form(&w), expect);
    assert_eq!(u.mul(&u.h_gen(1), &u.m(&p(&u, "g"))), expect);
    assert_eq!(expect.to_string(), "g*h(x) + g*x");

    let sym = Uea::new(&load("symplectic").poisson).unwrap();
    let (hx, hy) = (sym.h_gen(0), sym.h_gen(1));
    // h_y h_x = h_x h_y + h_{y,x} and h of a constant vanishes
    assert_eq!(sym.mul(&hy, &hx), sym.mul(&hx, &hy));
    assert_eq!(sym.mul(&sym.m(&p(&sym, "x")), &sym.m(&p(&sym, "y"))), sym.m(&p(&sym, "x*y")));
    assert_eq!(sym.mul(&hx, &hx).to_string(), "h(x)^2");
    let one = PbwElement::one(sym.ring());
    let v = e(&sym, "x*h(y)^2 + h(x)");
    assert_eq!(sym.mul(&v, &one), v);
    assert_eq!(sym.mul(&one, &v), v);
}

#[test]
fn rewriting_strategies_agree() {
    let u = Uea::new(&load("gk4").poisson).unwrap();
    let mut rng = random::rng(11);
    for _ in 0..40 {
        let letters: Vec<Letter> = (0..3)
            .map(|k| {
                let f = random::poly(u.ring(), &mut rng, 2, 2);
                if k % 2 == 0 {
                    Letter::H(f)
                } else {
                    Letter::M(f)
                }
            })
            .collect();
        let w = NcWord::new(letters);
        let nf = u.normal_form(&w);
        assert_eq!(u.rewrite(&w, Strategy::Leftmost), nf);
        assert_eq!(u.rewrite(&w, Strategy::Rightmost), nf);
    }
}

/// The regular module: `m_f` multiplies and `h_f` brackets with `f`. Every
/// relation of the enveloping algebra holds there, so normal forms must act
/// like the words they came from.
#[test]
fn normal_forms_act_like_words() {
    for name in ["typea", "gk3", "poissonu"] {
        let f = load(name);
        let u = Uea::new(&f.poisson).unwrap();
        let mut rng = random::rng(5);
        for _ in 0..30 {
            let letters: Vec<Letter> = (0..4)
                .map(|k| {
                    let f = random::poly(u.ring(), &mut rng, 2, 2);
                    if k % 3 == 1 {
                        Letter::M(f)
                    } else {
                        Letter::H(f)
                    }
                })
                .collect();
            let a = random::poly(u.ring(), &mut rng, 2, 3);
            let mut direct = a.clone();
            for l in letters.iter().rev() {
                direct = match l {
                    Letter::M(g) => g * &direct,
                    Letter::H(g) => f.poisson.bracket(g, &direct).unwrap(),
                };
            }
            let nf = u.normal_form(&NcWord::new(letters));
            assert_eq!(u.act_on_base(&nf, &a), direct, "{name}");
        }
    }
}

#[test]
fn coproduct_and_antipode_on_hamiltonians() {
    let line = hopf_uea("line");
    let one = PbwElement::one(line.ring());
    let hx = line.h_gen(0);
    assert_eq!(line.delta(&hx).unwrap(), pbw_tensor(&hx, &one).add(&pbw_tensor(&one, &hx)));

    let u = hopf_uea("typea");
    let g = u.m(&p(&u, "g"));
    let hg = u.h_gen(0);
    assert_eq!(u.delta(&hg).unwrap(), pbw_tensor(&g, &hg).add(&pbw_tensor(&hg, &g)));
    assert_eq!(u.antipode(&hg).unwrap(), e(&u, "-g^-2*h(g)"));
    assert_eq!(u.antipode(&hg).unwrap(), u.h_of(&p(&u, "g^-1")));
}

#[test]
fn envelope_hopf_axioms() {
    for name in ["typea", "gk3", "poissonu"] {
        let r = hopf_uea(name).check_hopf(2).unwrap();
        assert!(r.passed(), "{name}\n{r}");
    }
}
