//! Built-in examples. Each entry is a text template in the file format with
//! `$name` placeholders for rational parameters.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::format::{parse_algebra, parse_poly, render, AlgebraFile, ParseOptions};
use crate::report::Report;
use crate::ring::{fmt_rational, GeneratorSet, Rational};

pub type Bindings = BTreeMap<String, Rational>;

pub struct Example {
    pub name: &'static str,
    pub summary: &'static str,
    /// Parameter names with default values.
    pub params: &'static [(&'static str, &'static str)],
    /// Needs prime-field mode.
    pub prime_field: bool,
    /// Checks of `check all` expected to fail; empty for a valid example.
    pub expected_failures: &'static [&'static str],
    template: &'static str,
    validate: fn(&Bindings) -> Result<()>,
}

fn any(_: &Bindings) -> Result<()> {
    Ok(())
}

fn gk3_rule(b: &Bindings) -> Result<()> {
    let alpha = &b["alpha"];
    if !alpha.is_zero() && !alpha.is_one() {
        return Err(AlgebraError::Binding("alpha must be 0 or 1".into()));
    }
    if !alpha.is_zero() && b["lambda1"] != b["lambda2"] {
        return Err(AlgebraError::Binding("alpha must be 0 when lambda1 != lambda2".into()));
    }
    Ok(())
}

fn gk4_rule(b: &Bindings) -> Result<()> {
    if b["theta1"].is_zero() && b["theta2"].is_zero() {
        return Err(AlgebraError::Binding("theta1 and theta2 cannot both be 0".into()));
    }
    Ok(())
}

static EXAMPLES: &[Example] = &[
    Example {
        name: "ps-abelian",
        summary: "symmetric algebra of the 2-dimensional abelian Lie algebra, primitive generators",
        params: &[],
        prime_field: false,
        expected_failures: &[],
        template: "generators = a b\n[coalgebra]\nDelta(a) = a@1 + 1@a\nDelta(b) = b@1 + 1@b\n",
        validate: any,
    },
    Example {
        name: "ps-nonabelian",
        summary: "symmetric algebra of the 2-dimensional non-abelian Lie algebra [a,b] = b, primitive generators",
        params: &[],
        prime_field: false,
        expected_failures: &[],
        template: "generators = a b\n[bracket]\n{a,b} = b\n[coalgebra]\nDelta(a) = a@1 + 1@a\nDelta(b) = b@1 + 1@b\n",
        validate: any,
    },
    Example {
        name: "gk3",
        summary: "connected Poisson Hopf algebra on three generators",
        params: &[("lambda1", "1"), ("lambda2", "1"), ("alpha", "1")],
        prime_field: false,
        expected_failures: &[],
        template: "generators = x1 x2 x3
[bracket]
{x3,x1} = $lambda1*x1 + $alpha*x2
{x3,x2} = $lambda2*x2
[coalgebra]
Delta(x1) = 1@x1 + x1@1
Delta(x2) = 1@x2 + x2@1
Delta(x3) = 1@x3 + x1@x2 - x2@x1 + x3@1
",
        validate: gk3_rule,
    },
    Example {
        name: "gk4",
        summary: "connected Poisson Hopf algebra on four generators",
        params: &[
            ("a11", "1"),
            ("a12", "0"),
            ("a21", "0"),
            ("a22", "1"),
            ("xi1", "0"),
            ("xi2", "0"),
            ("theta1", "1"),
            ("theta2", "0"),
        ],
        prime_field: false,
        expected_failures: &[],
        template: "generators = X Y Z W
[bracket]
{W,X} = $a11*X + $a12*Y
{W,Y} = $a21*X + $a22*Y
{W,Z} = ($a11 + $a22)*Z + $xi1*X + $xi2*Y
[coalgebra]
Delta(X) = 1@X + X@1
Delta(Y) = 1@Y + Y@1
Delta(Z) = 1@Z + X@Y - Y@X + Z@1
Delta(W) = 1@W + W@1 + $theta1*(Z@X - X@Z + X@X*Y + X*Y@X) + $theta2*(Y@Z - Z@Y + X*Y@Y + Y@X*Y)
",
        validate: gk4_rule,
    },
    Example {
        name: "typea",
        summary: "k[g^-1, g, x] with g group-like and x skew-primitive",
        params: &[("lambda", "1")],
        prime_field: false,
        expected_failures: &[],
        template: "generators = g* x
[bracket]
{x,g} = $lambda*g*x
[coalgebra]
Delta(x) = x@1 + g@x
",
        validate: any,
    },
    Example {
        name: "xyzg",
        summary: "k[x, y, z, g^-1, g] with x, y skew-primitive and z primitive",
        params: &[("lambda", "1")],
        prime_field: false,
        expected_failures: &[],
        template: "generators = x y z g*
[bracket]
{z,x} = $lambda*x
{z,y} = -$lambda*y
{x,y} = z
[coalgebra]
Delta(x) = x@g + g^-1@x
Delta(y) = y@g^-1 + g@y
Delta(z) = z@1 + 1@z
",
        validate: any,
    },
    Example {
        name: "group",
        summary: "k[x, a^-1, a, b^-1, b] with a, b group-like and x skew-primitive",
        params: &[],
        prime_field: false,
        expected_failures: &[],
        template: "generators = x a* b*
[bracket]
{a,b} = x
{x,a} = -x^2*b^-1
{x,b} = x^2*a^-1
[coalgebra]
Delta(x) = x@a*b + a*b@x
",
        validate: any,
    },
    Example {
        name: "group-scalar",
        summary: "the group example with brackets {x,a} = lambda*a*x^2, {x,b} = -lambda*b*x^2; not a Poisson Hopf algebra",
        params: &[("lambda", "1")],
        prime_field: false,
        expected_failures: &["poisson-hopf", "antipode-bracket"],
        template: "generators = x a* b*
[bracket]
{a,b} = x
{x,a} = $lambda*a*x^2
{x,b} = -$lambda*b*x^2
[coalgebra]
Delta(x) = x@a*b + a*b@x
",
        validate: any,
    },
    Example {
        name: "poissonu",
        summary: "Poisson analogue of the quantized enveloping algebra of sl2",
        params: &[("lambda", "1"), ("alpha", "1")],
        prime_field: false,
        expected_failures: &[],
        template: "generators = E F K*
[bracket]
{E,K} = $lambda*K*E
{F,K} = -$lambda*K*F
{E,F} = $alpha*(K - K^-1)
[coalgebra]
Delta(E) = E@K + 1@E
Delta(F) = F@1 + K^-1@F
",
        validate: any,
    },
    Example {
        name: "osl2",
        summary: "Poisson coordinate ring of SL2",
        params: &[("lambda", "1")],
        prime_field: false,
        expected_failures: &[],
        template: "generators = x11 x12 x21 x22
[relations]
x11*x22 = x12*x21 + 1
[bracket]
{x11,x12} = $lambda*x11*x12
{x11,x21} = $lambda*x11*x21
{x11,x22} = 2*$lambda*x12*x21
{x12,x21} = 0
{x12,x22} = $lambda*x12*x22
{x21,x22} = $lambda*x21*x22
[coalgebra]
Delta(x11) = x11@x11 + x12@x21
Delta(x12) = x11@x12 + x12@x22
Delta(x21) = x21@x11 + x22@x21
Delta(x22) = x21@x12 + x22@x22
eps(x11) = 1
eps(x22) = 1
S(x11) = x22
S(x12) = -x12
S(x21) = -x21
S(x22) = x11
",
        validate: any,
    },
    Example {
        name: "restricted-p3",
        summary: "restricted symmetric algebra k[x,y,z]/(x^3, y^3, z^3) in characteristic 3",
        params: &[],
        prime_field: true,
        expected_failures: &[],
        template: "generators = x y z
characteristic = 3
[relations]
x^3 = 0
y^3 = 0
z^3 = 0
[bracket]
{x,y} = y
{y,z} = y^2
{x,z} = z
[coalgebra]
Delta(x) = x@1 + 1@x
Delta(y) = y@1 + 1@y
Delta(z) = z@1 + 1@z - 2*x@y
",
        validate: any,
    },
    Example {
        name: "symplectic",
        summary: "the symplectic plane {x,y} = 1 (Poisson algebra only)",
        params: &[],
        prime_field: false,
        expected_failures: &[],
        template: "generators = x y
[grading]
deg(x) = 1
deg(y) = 1
[bracket]
{x,y} = 1
",
        validate: any,
    },
    Example {
        name: "line",
        summary: "k[x] with the zero bracket and x primitive",
        params: &[],
        prime_field: false,
        expected_failures: &[],
        template: "generators = x
[grading]
deg(x) = 1
[coalgebra]
Delta(x) = x@1 + 1@x
",
        validate: any,
    },
    Example {
        name: "typea-ore",
        summary: "k[g^-1, g] with Hopf Ore extension data producing typea",
        params: &[("lambda", "1")],
        prime_field: false,
        expected_failures: &[],
        template: "generators = g*
[coalgebra]
S(g) = g^-1
[ore]
new = x
alpha(g) = $lambda*g
eta(g) = $lambda
group = g
",
        validate: any,
    },
    Example {
        name: "gk3-ore",
        summary: "k[x1, x2] with Hopf Ore extension data producing gk3",
        params: &[("lambda1", "1"), ("lambda2", "1"), ("alpha", "1")],
        prime_field: false,
        expected_failures: &[],
        template: "generators = x1 x2
[coalgebra]
Delta(x1) = 1@x1 + x1@1
Delta(x2) = 1@x2 + x2@1
[ore]
new = x3
delta(x1) = $lambda1*x1 + $alpha*x2
delta(x2) = $lambda2*x2
w = x1@x2 - x2@x1
",
        validate: gk3_rule,
    },
    Example {
        name: "gr-typea",
        summary: "k[y] # k[g^-1, g] with g * y = -y, whose bosonization is typea",
        params: &[],
        prime_field: false,
        expected_failures: &[],
        template: "generators = y
[grading]
deg(y) = 1
[coalgebra]
Delta(y) = y@1 + 1@y
[biproduct]
groups = g
star(g, y) = -y
",
        validate: any,
    },
];

pub fn examples() -> &'static [Example] {
    EXAMPLES
}

pub fn find(name: &str) -> Result<&'static Example> {
    EXAMPLES.iter().find(|e| e.name == name).ok_or_else(|| AlgebraError::UnknownExample(name.to_string()))
}

/// Parses `name=value` with a rational value such as `-1/2`.
pub fn parse_binding(s: &str) -> Result<(String, Rational)> {
    let (k, v) = s.split_once('=').ok_or_else(|| AlgebraError::Binding(format!("expected name=value, got `{s}`")))?;
    let scratch = GeneratorSet::parse_list("t")?;
    let q = parse_poly(&scratch, v.trim())
        .ok()
        .and_then(|p| p.as_constant())
        .ok_or_else(|| AlgebraError::Binding(format!("`{}` is not a rational number", v.trim())))?;
    Ok((k.trim().to_string(), q))
}

impl Example {
    /// Defaults overridden by `overrides`; unknown names are rejected.
    pub fn bindings(&self, overrides: &Bindings) -> Result<Bindings> {
        let mut out = Bindings::new();
        for (k, v) in self.params {
            let (_, q) = parse_binding(&format!("{k}={v}"))?;
            out.insert(k.to_string(), q);
        }
        for (k, v) in overrides {
            if !out.contains_key(k) {
                return Err(AlgebraError::Binding(format!("`{}` has no parameter `{k}`", self.name)));
            }
            out.insert(k.clone(), v.clone());
        }
        (self.validate)(&out)?;
        Ok(out)
    }

    /// The template with parameters substituted.
    pub fn text(&self, overrides: &Bindings) -> Result<String> {
        let b = self.bindings(overrides)?;
        let mut text = self.template.to_string();
        // longest names first so `a1` never clobbers `a11`
        let mut keys: Vec<&String> = b.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse(k.len()));
        for k in keys {
            text = text.replace(&format!("${k}"), &format!("({})", fmt_rational(&b[k])));
        }
        Ok(text)
    }

    pub fn options(&self) -> ParseOptions {
        ParseOptions { prime_field: self.prime_field }
    }

    /// Parses the instantiated example. Examples without expected failures
    /// are verified: Jacobi and, when present, the Hopf and Poisson Hopf
    /// axioms must hold.
    pub fn load(&self, overrides: &Bindings) -> Result<AlgebraFile> {
        let file = parse_algebra(&self.text(overrides)?, self.options())?;
        if self.expected_failures.is_empty() {
            let mut r = Report::new();
            r.extend(file.poisson.check_jacobi());
            if let Some(h) = &file.hopf {
                r.extend(h.check_hopf_axioms());
                r.extend(h.check_poisson_hopf());
            }
            if !r.passed() {
                return Err(AlgebraError::Binding(format!(
                    "`{}` fails {} at these parameters",
                    self.name,
                    r.failed_names().join(", ")
                )));
            }
        }
        Ok(file)
    }

    /// Canonical text of the instantiated example with a header comment.
    pub fn dump(&self, overrides: &Bindings) -> Result<String> {
        let b = self.bindings(overrides)?;
        let file = self.load(overrides)?;
        let mut out = format!("# {}: {}\n", self.name, self.summary);
        if !b.is_empty() {
            let parts: Vec<String> = b.iter().map(|(k, v)| format!("{k} = {}", fmt_rational(v))).collect();
            out.push_str(&format!("# parameters: {}\n", parts.join(", ")));
        }
        out.push('\n');
        out.push_str(&render(&file));
        Ok(out)
    }
}

pub fn catalog_get(name: &str, overrides: &Bindings) -> Result<AlgebraFile> {
    find(name)?.load(overrides)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn gk3_binding_rule() {
        let b = |l2: i64, a: i64| Bindings::from([("lambda2".to_string(), int(l2)), ("alpha".to_string(), int(a))]);
        assert!(catalog_get("gk3", &b(1, 1)).is_ok());
        assert!(matches!(catalog_get("gk3", &b(2, 1)), Err(AlgebraError::Binding(_))));
        assert!(catalog_get("gk3", &b(2, 0)).is_ok());
        assert!(matches!(catalog_get("nope", &Bindings::new()), Err(AlgebraError::UnknownExample(_))));
    }

    #[test]
    fn abelian_is_trivial_and_cocommutative() {
        let f = catalog_get("ps-abelian", &Bindings::new()).unwrap();
        assert!(f.poisson.is_trivial());
        let h = f.hopf.unwrap();
        assert!((0..2).all(|i| h.is_primitive(i)));
    }

    #[test]
    fn binding_syntax() {
        assert_eq!(parse_binding("lambda=-1/2").unwrap(), ("lambda".to_string(), crate::ring::rat(-1, 2)));
        assert!(parse_binding("lambda").is_err());
        assert!(parse_binding("lambda=x").is_err());
    }

    #[test]
    fn every_entry_loads() {
        for e in examples() {
            let f = e.load(&Bindings::new()).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            if !e.expected_failures.is_empty() {
                let mut r = f.poisson.check_jacobi();
                r.extend(f.hopf.as_ref().unwrap().check_poisson_hopf());
                assert_eq!(r.failed_names(), e.expected_failures, "{}", e.name);
            }
        }
    }
}
