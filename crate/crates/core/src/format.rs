//! The text format for algebras: a line-oriented file with optional
//! `[section]` headers.
//!
//! ```text
//! generators = g* x          # trailing * marks an invertible generator
//! {x,g} = g*x
//! Delta(x) = x @ 1 + g @ x
//! eps(x) = 0
//! S(x) = -g^-1*x
//! ```
//!
//! Further sections: `[grading]` with `deg(x) = 2`, `[relations]` with
//! `x^3 = 0`, `[ore]` with `new`, `alpha(b)`, `delta(b)`, `eta(b)`,
//! `eta(b^-1)`, `group`, `w`, and `[biproduct]` with `groups` and `star(g,y)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{BigInt, One, Zero};

use crate::error::{AlgebraError, Result};
use crate::hopf::{derive_antipode, tensor_of, HopfData, OreHopfData, PolyLegs};
use crate::poisson::{OreData, PoissonAlgebra};
use crate::ring::{fmt_rational, GeneratorSet, LaurentPoly, Rational, Relation, Ring};
use crate::smash::BiproductInput;
use crate::tensor::{Leg, LegKind, Tensor};
use crate::uea::{PbwElement, Uea};

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Allows a `characteristic = p` line.
    pub prime_field: bool,
}

/// A parsed file. `hopf` is present when the file has coalgebra lines.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub poisson: PoissonAlgebra,
    pub hopf: Option<HopfData>,
    pub ore: Option<OreHopfData>,
    pub biproduct: Option<BiproductInput>,
}

impl AlgebraFile {
    pub fn ring(&self) -> &Ring {
        self.poisson.ring()
    }

    pub fn hopf(&self) -> Result<&HopfData> {
        self.hopf.as_ref().ok_or_else(|| AlgebraError::Precondition("the file has no coalgebra section".into()))
    }
}

impl PartialEq for AlgebraFile {
    fn eq(&self, other: &Self) -> bool {
        let ore_eq = match (&self.ore, &other.ore) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                a.name == b.name
                    && a.ore.alpha == b.ore.alpha
                    && a.ore.delta == b.ore.delta
                    && a.eta == b.eta
                    && a.eta_extra == b.eta_extra
                    && a.group == b.group
                    && a.w == b.w
            }
            _ => false,
        };
        let bi_eq = match (&self.biproduct, &other.biproduct) {
            (None, None) => true,
            (Some(a), Some(b)) => a.groups == b.groups && a.star == b.star,
            _ => false,
        };
        self.poisson == other.poisson && self.hopf == other.hopf && ore_eq && bi_eq
    }
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { line, col, msg: msg.into() }
}

// ---------------------------------------------------------------- lexing

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), col });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), col });
        } else if c == '⊗' {
            out.push(Token { tok: Tok::Sym('@'), col });
            i += 1;
        } else if "+-*/^()@,={}[]".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return Err(err(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Token], line: usize, end_col: usize) -> Self {
        Cursor { toks, pos: 0, line, end_col }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn error(&self, msg: impl Into<String>) -> AlgebraError {
        err(self.line, self.col(), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        let col = self.col();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, col))
            }
            _ => Err(self.error("expected a name")),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    fn done(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            Err(self.error("unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    /// A constant expression such as `-1/2` or `(3)`.
    fn rational(&mut self, ring: &Ring) -> Result<Rational> {
        let col = self.col();
        poly_expr(self, ring)?.as_constant().ok_or_else(|| err(self.line, col, "expected a rational number"))
    }
}

// ------------------------------------------------------------ expressions

/// Values an expression can evaluate to, with the operations the grammar
/// needs. Errors carry no position; the parser attaches one.
trait ExprAlgebra {
    type V: Clone;
    fn number(&self, q: Rational) -> Self::V;
    fn name(&self, c: &mut Cursor, name: &str) -> Result<Self::V>;
    fn add(&self, a: Self::V, b: Self::V) -> std::result::Result<Self::V, String>;
    fn neg(&self, a: Self::V) -> Self::V;
    fn mul(&self, a: Self::V, b: Self::V) -> std::result::Result<Self::V, String>;
    fn tensor(&self, a: Self::V, b: Self::V) -> std::result::Result<Self::V, String>;
    fn pow(&self, a: Self::V, e: i32) -> std::result::Result<Self::V, String>;
}

fn sum<A: ExprAlgebra>(c: &mut Cursor, a: &A) -> Result<A::V> {
    let mut acc = tensor_level(c, a)?;
    loop {
        let col = c.col();
        let neg = if c.eat('+') {
            false
        } else if c.eat('-') {
            true
        } else {
            return Ok(acc);
        };
        let mut rhs = tensor_level(c, a)?;
        if neg {
            rhs = a.neg(rhs);
        }
        acc = a.add(acc, rhs).map_err(|m| err(c.line, col, m))?;
    }
}

fn tensor_level<A: ExprAlgebra>(c: &mut Cursor, a: &A) -> Result<A::V> {
    let mut acc = product(c, a)?;
    loop {
        let col = c.col();
        if !c.eat('@') {
            return Ok(acc);
        }
        let rhs = product(c, a)?;
        acc = a.tensor(acc, rhs).map_err(|m| err(c.line, col, m))?;
    }
}

fn product<A: ExprAlgebra>(c: &mut Cursor, a: &A) -> Result<A::V> {
    let mut acc = unary(c, a)?;
    loop {
        let col = c.col();
        if !c.eat('*') {
            return Ok(acc);
        }
        let rhs = unary(c, a)?;
        acc = a.mul(acc, rhs).map_err(|m| err(c.line, col, m))?;
    }
}

fn unary<A: ExprAlgebra>(c: &mut Cursor, a: &A) -> Result<A::V> {
    if c.eat('-') {
        let v = unary(c, a)?;
        return Ok(a.neg(v));
    }
    let base = atom(c, a)?;
    let col = c.col();
    if !c.eat('^') {
        return Ok(base);
    }
    let neg = c.eat('-');
    let n = c.int()?;
    let e: i32 = i32::try_from(n).map_err(|_| err(c.line, col, "exponent out of range"))?;
    a.pow(base, if neg { -e } else { e }).map_err(|m| err(c.line, col, m))
}

fn atom<A: ExprAlgebra>(c: &mut Cursor, a: &A) -> Result<A::V> {
    match c.peek().cloned() {
        Some(Tok::Int(n)) => {
            c.pos += 1;
            // `p/q` binds as a single literal
            if c.peek() == Some(&Tok::Sym('/')) {
                c.pos += 1;
                let d = c.int()?;
                if d.is_zero() {
                    return Err(c.error("zero denominator"));
                }
                return Ok(a.number(Rational::new(n, d)));
            }
            Ok(a.number(Rational::from_integer(n)))
        }
        Some(Tok::Ident(s)) => {
            c.pos += 1;
            a.name(c, &s)
        }
        Some(Tok::Sym('(')) => {
            c.pos += 1;
            let v = sum(c, a)?;
            c.expect(')')?;
            Ok(v)
        }
        _ => Err(c.error("expected an expression")),
    }
}

/// Polynomials and tensors of polynomials over a fixed ring.
struct PolyExprs<'r> {
    ring: &'r Ring,
}

#[derive(Clone)]
enum Val {
    P(LaurentPoly),
    T(Tensor),
}

fn concat(a: &Tensor, b: &Tensor) -> Tensor {
    let kinds: Vec<LegKind> = a.kinds().iter().chain(b.kinds()).copied().collect();
    let mut out = Tensor::zero_mod(&kinds, a.modulus());
    for (la, ca) in a.terms() {
        for (lb, cb) in b.terms() {
            let legs: Vec<Leg> = la.iter().chain(lb).cloned().collect();
            out.add_term(legs, ca * cb);
        }
    }
    out
}

impl PolyExprs<'_> {
    fn as_tensor(&self, v: Val) -> Tensor {
        match v {
            Val::P(p) => tensor_of(&[&p]),
            Val::T(t) => t,
        }
    }
}

impl ExprAlgebra for PolyExprs<'_> {
    type V = Val;

    fn number(&self, q: Rational) -> Val {
        Val::P(LaurentPoly::constant(self.ring, q))
    }

    fn name(&self, c: &mut Cursor, name: &str) -> Result<Val> {
        match self.ring.index_of(name) {
            Some(i) => Ok(Val::P(LaurentPoly::gen(self.ring, i))),
            None => Err(err(c.line, c.toks[c.pos - 1].col, format!("unknown generator `{name}`"))),
        }
    }

    fn add(&self, a: Val, b: Val) -> std::result::Result<Val, String> {
        match (a, b) {
            (Val::P(x), Val::P(y)) => Ok(Val::P(&x + &y)),
            (Val::T(x), Val::T(y)) if x.arity() == y.arity() => Ok(Val::T(x.add(&y))),
            _ => Err("cannot add tensors with different numbers of legs".into()),
        }
    }

    fn neg(&self, a: Val) -> Val {
        match a {
            Val::P(x) => Val::P(-x),
            Val::T(t) => Val::T(t.scale(&-Rational::one())),
        }
    }

    fn mul(&self, a: Val, b: Val) -> std::result::Result<Val, String> {
        match (a, b) {
            (Val::P(x), Val::P(y)) => Ok(Val::P(&x * &y)),
            (Val::P(x), Val::T(t)) | (Val::T(t), Val::P(x)) => match x.as_constant() {
                Some(q) => Ok(Val::T(t.scale(&q))),
                None => Err("a tensor can only be multiplied by a scalar or a tensor".into()),
            },
            (Val::T(x), Val::T(y)) if x.arity() == y.arity() => {
                x.mul(&y, &PolyLegs(self.ring.clone())).map(Val::T).map_err(|e| e.to_string())
            }
            _ => Err("cannot multiply tensors with different numbers of legs".into()),
        }
    }

    fn tensor(&self, a: Val, b: Val) -> std::result::Result<Val, String> {
        Ok(Val::T(concat(&self.as_tensor(a), &self.as_tensor(b))))
    }

    fn pow(&self, a: Val, e: i32) -> std::result::Result<Val, String> {
        match a {
            Val::P(x) => x.pow(e).map(Val::P).map_err(|e| e.to_string()),
            Val::T(_) => Err("powers of tensors are not supported".into()),
        }
    }
}

/// Elements of an enveloping algebra written with `m(f)` and `h(f)`.
struct UeaExprs<'u> {
    uea: &'u Uea,
}

impl ExprAlgebra for UeaExprs<'_> {
    type V = PbwElement;

    fn number(&self, q: Rational) -> PbwElement {
        PbwElement::from_poly(&LaurentPoly::constant(self.uea.ring(), q))
    }

    fn name(&self, c: &mut Cursor, name: &str) -> Result<PbwElement> {
        let col = c.toks[c.pos - 1].col;
        if (name == "m" || name == "h") && c.peek() == Some(&Tok::Sym('(')) {
            c.pos += 1;
            let f = poly_expr(c, self.uea.ring())?;
            c.expect(')')?;
            return Ok(if name == "m" { self.uea.m(&f) } else { self.uea.h_of(&f) });
        }
        match self.uea.ring().index_of(name) {
            Some(i) => Ok(self.uea.m(&LaurentPoly::gen(self.uea.ring(), i))),
            None => Err(err(c.line, col, format!("unknown generator `{name}`"))),
        }
    }

    fn add(&self, a: PbwElement, b: PbwElement) -> std::result::Result<PbwElement, String> {
        Ok(a.add(&b))
    }

    fn neg(&self, a: PbwElement) -> PbwElement {
        a.scale(&-Rational::one())
    }

    fn mul(&self, a: PbwElement, b: PbwElement) -> std::result::Result<PbwElement, String> {
        Ok(self.uea.mul(&a, &b))
    }

    fn tensor(&self, _: PbwElement, _: PbwElement) -> std::result::Result<PbwElement, String> {
        Err("tensors are not allowed here".into())
    }

    fn pow(&self, a: PbwElement, e: i32) -> std::result::Result<PbwElement, String> {
        if e >= 0 {
            return Ok(self.uea.product(&vec![a; e as usize]));
        }
        let unit = (a.h_degree() == 0).then(|| a.b_part().unit_inverse()).flatten();
        match unit {
            Some(inv) => Ok(self.uea.m(&inv.pow(-e).map_err(|e| e.to_string())?)),
            None => Err("only units of the base ring have negative powers".into()),
        }
    }
}

fn poly_expr(c: &mut Cursor, ring: &Ring) -> Result<LaurentPoly> {
    let col = c.col();
    match sum(c, &PolyExprs { ring })? {
        Val::P(p) => Ok(p),
        Val::T(_) => Err(err(c.line, col, "expected a polynomial, found a tensor")),
    }
}

fn tensor_expr(c: &mut Cursor, ring: &Ring, arity: usize) -> Result<Tensor> {
    let col = c.col();
    let e = PolyExprs { ring };
    let v = sum(c, &e)?;
    let t = match v {
        Val::P(p) if p.is_zero() => Tensor::zero_mod(&vec![LegKind::Poly; arity], ring.characteristic()),
        v => e.as_tensor(v),
    };
    if t.arity() != arity {
        return Err(err(c.line, col, format!("expected a tensor with {arity} legs")));
    }
    Ok(t)
}

/// Parses a single polynomial over `ring`.
pub fn parse_poly(ring: &Ring, text: &str) -> Result<LaurentPoly> {
    let toks = lex(text, 1, 1)?;
    let mut c = Cursor::new(&toks, 1, text.chars().count() + 1);
    let p = poly_expr(&mut c, ring)?;
    c.done()?;
    Ok(p)
}

/// Parses a 2-tensor over `ring`, e.g. `x@1 + g@x`.
pub fn parse_tensor(ring: &Ring, text: &str) -> Result<Tensor> {
    let toks = lex(text, 1, 1)?;
    let mut c = Cursor::new(&toks, 1, text.chars().count() + 1);
    let t = tensor_expr(&mut c, ring, 2)?;
    c.done()?;
    Ok(t)
}

/// Parses an element of an enveloping algebra such as `h(x)*m(g) + 2*h(g)`.
/// A bare generator `x` stands for `m(x)`.
pub fn parse_uea_expr(uea: &Uea, text: &str) -> Result<PbwElement> {
    let toks = lex(text, 1, 1)?;
    let mut c = Cursor::new(&toks, 1, text.chars().count() + 1);
    let v = sum(&mut c, &UeaExprs { uea })?;
    c.done()?;
    Ok(v)
}

// ------------------------------------------------------------ file level

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Main,
    Generators,
    Bracket,
    Coalgebra,
    Grading,
    Relations,
    Ore,
    Biproduct,
}

struct Line {
    no: usize,
    section: Section,
    toks: Vec<Token>,
    /// Text after `=` with its starting column, for name lists.
    raw_rhs: Option<(String, usize)>,
    end_col: usize,
}

impl Line {
    fn cursor(&self) -> Cursor<'_> {
        Cursor::new(&self.toks, self.no, self.end_col)
    }

    fn head(&self) -> Option<&str> {
        match self.toks.first().map(|t| &t.tok) {
            Some(Tok::Ident(s)) => Some(s),
            Some(Tok::Sym('{')) => Some("{"),
            _ => None,
        }
    }

    fn err(&self, msg: impl Into<String>) -> AlgebraError {
        err(self.no, 1, msg)
    }
}

/// Content lines, plus the line of the first `[coalgebra]` header.
fn split_lines(text: &str) -> Result<(Vec<Line>, Option<usize>)> {
    let mut out = Vec::new();
    let mut coalgebra_header = None;
    let mut section = Section::Main;
    for (k, raw) in text.lines().enumerate() {
        let no = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(name) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = match name.trim() {
                "generators" => Section::Generators,
                "bracket" => Section::Bracket,
                "coalgebra" => {
                    coalgebra_header.get_or_insert(no);
                    Section::Coalgebra
                }
                "grading" => Section::Grading,
                "relations" => Section::Relations,
                "ore" => Section::Ore,
                "biproduct" => Section::Biproduct,
                other => {
                    let col = raw.find('[').map_or(1, |i| raw[..i].chars().count() + 1);
                    return Err(err(no, col, format!("unknown section `[{other}]`")));
                }
            };
            continue;
        }
        let raw_rhs = body.find('=').map(|i| (body[i + 1..].to_string(), body[..=i].chars().count() + 1));
        let toks = lex(body, no, 1)?;
        out.push(Line { no, section, toks, raw_rhs, end_col: body.chars().count() + 1 });
    }
    Ok((out, coalgebra_header))
}

/// `name* name ...` after `=`.
fn name_list(line: &Line) -> Result<Vec<(String, bool, usize)>> {
    let (rhs, col0) = line.raw_rhs.clone().ok_or_else(|| line.err("expected `=`"))?;
    let mut out = Vec::new();
    let mut offset = 0;
    for word in rhs.split_whitespace() {
        let at = rhs[offset..].find(word).map_or(offset, |i| offset + i);
        offset = at + word.len();
        let col = col0 + rhs[..at].chars().count();
        let (name, inv) = match word.strip_suffix('*') {
            Some(n) => (n, true),
            None => (word, false),
        };
        let ok = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
        if !ok {
            return Err(err(line.no, col, format!("bad generator name `{word}`")));
        }
        if out.iter().any(|(n, _, _): &(String, bool, usize)| n == name) {
            return Err(err(line.no, col, format!("duplicate generator `{name}`")));
        }
        out.push((name.to_string(), inv, col));
    }
    if out.is_empty() {
        return Err(line.err("empty name list"));
    }
    Ok(out)
}

/// `head ( name [^-1] [, name] ) =`; returns the names with their columns
/// and whether the first carried `^-1`.
fn call_lhs(c: &mut Cursor, args: usize) -> Result<(Vec<(String, usize)>, bool)> {
    c.ident()?;
    c.expect('(')?;
    let mut names = vec![c.ident()?];
    let mut inverse = false;
    if c.eat('^') {
        c.expect('-')?;
        if c.int()? != BigInt::one() {
            return Err(c.error("only `^-1` is allowed here"));
        }
        inverse = true;
    }
    for _ in 1..args {
        c.expect(',')?;
        names.push(c.ident()?);
    }
    c.expect(')')?;
    c.expect('=')?;
    Ok((names, inverse))
}

fn lookup(ring: &Ring, line: usize, (name, col): &(String, usize)) -> Result<usize> {
    ring.index_of(name).ok_or_else(|| err(line, *col, format!("unknown generator `{name}`")))
}

fn set_once<T>(slot: &mut Option<T>, v: T, line: &Line, what: &str) -> Result<()> {
    if slot.is_some() {
        return Err(line.err(format!("duplicate assignment to {what}")));
    }
    *slot = Some(v);
    Ok(())
}

fn wrap(line: &Line) -> impl Fn(AlgebraError) -> AlgebraError + '_ {
    move |e| match e {
        AlgebraError::Parse { .. } => e,
        other => line.err(other.to_string()),
    }
}

/// Parses an algebra file.
pub fn parse_algebra(text: &str, opts: ParseOptions) -> Result<AlgebraFile> {
    let (lines, coalgebra_header) = split_lines(text)?;
    let allowed = |line: &Line, kinds: &[Section]| -> Result<()> {
        if line.section == Section::Main || kinds.contains(&line.section) {
            Ok(())
        } else {
            Err(line.err("line does not belong in this section"))
        }
    };

    // Pass 1: the ring.
    let mut gens: Option<Vec<(String, bool, usize)>> = None;
    let mut characteristic: Option<u32> = None;
    for line in &lines {
        match (line.section, line.head()) {
            (Section::Main | Section::Generators, Some("generators")) => {
                let names = name_list(line)?;
                set_once(&mut gens, names, line, "generators")?;
            }
            (Section::Main | Section::Generators, Some("characteristic")) => {
                let mut c = line.cursor();
                c.ident()?;
                c.expect('=')?;
                let col = c.col();
                let p = c.int()?;
                c.done()?;
                if !opts.prime_field {
                    return Err(err(line.no, col, "a nonzero characteristic needs prime-field mode"));
                }
                let p = u32::try_from(p).map_err(|_| err(line.no, col, "characteristic out of range"))?;
                set_once(&mut characteristic, p, line, "characteristic")?;
            }
            _ => {}
        }
    }
    let gens = gens.ok_or_else(|| err(1, 1, "missing `generators = ...` line"))?;
    let names: Vec<&str> = gens.iter().map(|g| g.0.as_str()).collect();
    let inv: Vec<bool> = gens.iter().map(|g| g.1).collect();
    let p = characteristic.unwrap_or(0);
    let free = GeneratorSet::new(&names, &inv)?.with_characteristic(p).map_err(|e| err(1, 1, e.to_string()))?;
    let free = free.into_ring();
    let n = free.len();

    let mut grading: Vec<Option<u32>> = vec![None; n];
    let mut relations = Vec::new();
    for line in &lines {
        match line.section {
            Section::Grading => {
                let mut c = line.cursor();
                if line.head() != Some("deg") {
                    return Err(line.err("expected `deg(x) = n`"));
                }
                let (args, _) = call_lhs(&mut c, 1)?;
                let i = lookup(&free, line.no, &args[0])?;
                let col = c.col();
                let d = c.int()?;
                c.done()?;
                let d = u32::try_from(d).map_err(|_| err(line.no, col, "degree out of range"))?;
                set_once(&mut grading[i], d, line, &format!("deg({})", args[0].0))?;
            }
            Section::Relations => {
                let mut c = line.cursor();
                let col = c.col();
                let lead = poly_expr(&mut c, &free)?;
                c.expect('=')?;
                let tail = poly_expr(&mut c, &free)?;
                c.done()?;
                let (m, q) = match lead.terms().collect::<Vec<_>>().as_slice() {
                    [(m, q)] => ((*m).clone(), (*q).clone()),
                    _ => return Err(err(line.no, col, "a relation must start with a monomial")),
                };
                if !q.is_one() {
                    return Err(err(line.no, col, "a relation must start with a monic monomial"));
                }
                let tail = tail.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
                relations.push(Relation { lead: m, tail });
            }
            _ => {}
        }
    }
    let mut set = GeneratorSet::new(&names, &inv)?.with_relations(relations).map_err(wrap(&lines[0]))?;
    set = set.with_characteristic(p)?;
    if grading.iter().any(Option::is_some) {
        if let Some(i) = grading.iter().position(Option::is_none) {
            return Err(err(1, 1, format!("missing deg({})", names[i])));
        }
        set = set.with_grading(grading.into_iter().map(Option::unwrap).collect())?;
    }
    let ring = set.into_ring();

    // Pass 2: structure.
    let mut bracket: BTreeMap<(usize, usize), (LaurentPoly, usize)> = BTreeMap::new();
    let mut delta: Vec<Option<Tensor>> = vec![None; n];
    let mut counit: Vec<Option<Rational>> = vec![None; n];
    let mut antipode: Vec<Option<LaurentPoly>> = vec![None; n];
    let mut coalgebra_line: Option<usize> = coalgebra_header;
    let mut ore = OreLines::default();
    let mut bi = BiLines::default();
    for line in &lines {
        match (line.section, line.head()) {
            (Section::Main | Section::Generators, Some("generators" | "characteristic")) => {}
            (Section::Grading | Section::Relations, _) => {}
            (_, Some("{")) => {
                allowed(line, &[Section::Bracket])?;
                let mut c = line.cursor();
                c.expect('{')?;
                let a = c.ident()?;
                c.expect(',')?;
                let b = c.ident()?;
                c.expect('}')?;
                c.expect('=')?;
                let i = lookup(&ring, line.no, &a)?;
                let j = lookup(&ring, line.no, &b)?;
                if i == j {
                    return Err(err(line.no, a.1, format!("{{{0},{0}}} is zero by antisymmetry", a.0)));
                }
                let v = poly_expr(&mut c, &ring)?;
                c.done()?;
                let key = (i.min(j), i.max(j));
                let v = if i < j { v } else { -v };
                if bracket.insert(key, (v, line.no)).is_some() {
                    return Err(line.err(format!("duplicate assignment to {{{},{}}}", a.0, b.0)));
                }
            }
            (_, Some(head @ ("Delta" | "eps" | "S"))) if line.section != Section::Ore && line.section != Section::Biproduct => {
                allowed(line, &[Section::Coalgebra])?;
                coalgebra_line.get_or_insert(line.no);
                let mut c = line.cursor();
                let (args, _) = call_lhs(&mut c, 1)?;
                let i = lookup(&ring, line.no, &args[0])?;
                let what = format!("{head}({})", args[0].0);
                match head {
                    "Delta" => {
                        let t = tensor_expr(&mut c, &ring, 2)?;
                        c.done()?;
                        set_once(&mut delta[i], t, line, &what)?;
                    }
                    "eps" => {
                        let q = c.rational(&ring)?;
                        c.done()?;
                        set_once(&mut counit[i], q, line, &what)?;
                    }
                    _ => {
                        let s = poly_expr(&mut c, &ring)?;
                        c.done()?;
                        set_once(&mut antipode[i], s, line, &what)?;
                    }
                }
            }
            (Section::Ore, _) => ore.read(line, &ring)?,
            (Section::Biproduct, _) => bi.read(line, &ring)?,
            _ => return Err(line.err("unrecognized line")),
        }
    }

    let entries: Vec<(usize, usize, LaurentPoly)> = bracket.iter().map(|(&(i, j), (v, _))| (i, j, v.clone())).collect();
    let poisson = PoissonAlgebra::new(&ring, entries).map_err(|e| err(1, 1, e.to_string()))?;

    let hopf = match coalgebra_line {
        None => None,
        Some(first) => {
            let at = |msg: String| err(first, 1, msg);
            let mut d = Vec::with_capacity(n);
            for i in 0..n {
                match delta[i].take() {
                    Some(t) => d.push(t),
                    None if ring.is_invertible(i) => {
                        let g = LaurentPoly::gen(&ring, i);
                        d.push(tensor_of(&[&g, &g]));
                    }
                    None => return Err(at(format!("Delta({}) is required", ring.name(i)))),
                }
            }
            let eps: Vec<Rational> = (0..n)
                .map(|i| {
                    counit[i].take().unwrap_or_else(|| if ring.is_invertible(i) { Rational::one() } else { Rational::zero() })
                })
                .collect();
            let s = derive_antipode(&ring, &d, &eps, antipode).map_err(|e| at(e.to_string()))?;
            Some(HopfData::new(poisson.clone(), d, eps, s).map_err(|e| at(e.to_string()))?)
        }
    };

    let ore = match ore.first {
        None => None,
        Some(first) => {
            let h = hopf.as_ref().ok_or_else(|| err(first, 1, "[ore] needs a coalgebra"))?;
            Some(ore.build(h))
        }
    };
    let biproduct = match bi.first {
        None => None,
        Some(first) => {
            let h = hopf.as_ref().ok_or_else(|| err(first, 1, "[biproduct] needs a coalgebra"))?;
            Some(bi.build(h, first)?)
        }
    };
    Ok(AlgebraFile { poisson, hopf, ore, biproduct })
}

#[derive(Default)]
struct OreLines {
    first: Option<usize>,
    new: Option<String>,
    alpha: BTreeMap<usize, LaurentPoly>,
    delta: BTreeMap<usize, LaurentPoly>,
    eta: BTreeMap<usize, Rational>,
    eta_inv: BTreeMap<usize, Rational>,
    group: Option<LaurentPoly>,
    w: Option<Tensor>,
}

impl OreLines {
    fn read(&mut self, line: &Line, ring: &Ring) -> Result<()> {
        self.first.get_or_insert(line.no);
        let mut c = line.cursor();
        let once = |present: bool, what: &str| {
            if present {
                Err(line.err(format!("duplicate assignment to {what}")))
            } else {
                Ok(())
            }
        };
        match line.head() {
            Some("new") => {
                c.ident()?;
                c.expect('=')?;
                let (name, col) = c.ident()?;
                c.done()?;
                if ring.index_of(&name).is_some() {
                    return Err(err(line.no, col, format!("`{name}` is already a generator")));
                }
                set_once(&mut self.new, name, line, "new")
            }
            Some(head @ ("alpha" | "delta" | "eta")) => {
                let (args, inverse) = call_lhs(&mut c, 1)?;
                let i = lookup(ring, line.no, &args[0])?;
                let what = format!("{head}({})", args[0].0);
                if inverse && (head != "eta" || !ring.is_invertible(i)) {
                    return Err(line.err("`^-1` is only allowed in eta of an invertible generator".to_string()));
                }
                match head {
                    "eta" => {
                        let q = c.rational(ring)?;
                        c.done()?;
                        let map = if inverse { &mut self.eta_inv } else { &mut self.eta };
                        once(map.contains_key(&i), &what)?;
                        map.insert(i, q);
                    }
                    _ => {
                        let v = poly_expr(&mut c, ring)?;
                        c.done()?;
                        let map = if head == "alpha" { &mut self.alpha } else { &mut self.delta };
                        once(map.contains_key(&i), &what)?;
                        map.insert(i, v);
                    }
                }
                Ok(())
            }
            Some("group") => {
                c.ident()?;
                c.expect('=')?;
                let g = poly_expr(&mut c, ring)?;
                c.done()?;
                set_once(&mut self.group, g, line, "group")
            }
            Some("w") => {
                c.ident()?;
                c.expect('=')?;
                let t = tensor_expr(&mut c, ring, 2)?;
                c.done()?;
                set_once(&mut self.w, t, line, "w")
            }
            _ => Err(line.err("unrecognized line in [ore]")),
        }
    }

    fn build(self, hopf: &HopfData) -> OreHopfData {
        let ring = hopf.ring();
        let n = ring.len();
        let zero = LaurentPoly::zero(ring);
        let pick = |m: &BTreeMap<usize, LaurentPoly>| (0..n).map(|i| m.get(&i).cloned().unwrap_or_else(|| zero.clone())).collect();
        OreHopfData {
            ore: OreData { base: hopf.poisson().clone(), alpha: pick(&self.alpha), delta: pick(&self.delta) },
            eta: (0..n).map(|i| self.eta.get(&i).cloned().unwrap_or_else(Rational::zero)).collect(),
            eta_extra: self.eta_inv.into_iter().collect(),
            group: self.group.unwrap_or_else(|| LaurentPoly::one(ring)),
            w: self.w.unwrap_or_else(|| Tensor::zero_mod(&[LegKind::Poly, LegKind::Poly], ring.characteristic())),
            name: self.new.unwrap_or_else(|| "x".into()),
        }
    }
}

#[derive(Default)]
struct BiLines {
    first: Option<usize>,
    groups: Option<Vec<String>>,
    star: Vec<((String, usize), usize, LaurentPoly, usize)>,
}

impl BiLines {
    fn read(&mut self, line: &Line, ring: &Ring) -> Result<()> {
        self.first.get_or_insert(line.no);
        match line.head() {
            Some("groups") => {
                let names = name_list(line)?;
                let mut out = Vec::new();
                for (name, inv, col) in names {
                    if inv || ring.index_of(&name).is_some() {
                        return Err(err(line.no, col, format!("bad group generator `{name}`")));
                    }
                    out.push(name);
                }
                set_once(&mut self.groups, out, line, "groups")
            }
            Some("star") => {
                let mut c = line.cursor();
                let (args, _) = call_lhs(&mut c, 2)?;
                let j = lookup(ring, line.no, &args[1])?;
                let v = poly_expr(&mut c, ring)?;
                c.done()?;
                self.star.push((args[0].clone(), j, v, line.no));
                Ok(())
            }
            _ => Err(line.err("unrecognized line in [biproduct]")),
        }
    }

    fn build(self, hopf: &HopfData, first: usize) -> Result<BiproductInput> {
        let ring = hopf.ring();
        let groups = self.groups.ok_or_else(|| err(first, 1, "[biproduct] needs `groups = ...`"))?;
        let mut star: Vec<Vec<Option<LaurentPoly>>> = vec![vec![None; ring.len()]; groups.len()];
        for ((g, col), j, v, no) in self.star {
            let i = groups
                .iter()
                .position(|x| *x == g)
                .ok_or_else(|| err(no, col, format!("unknown group generator `{g}`")))?;
            if star[i][j].replace(v).is_some() {
                return Err(err(no, 1, format!("duplicate assignment to star({g}, {})", ring.name(j))));
            }
        }
        let star = star
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.unwrap_or_else(|| LaurentPoly::zero(ring))).collect())
            .collect();
        Ok(BiproductInput { r: hopf.clone(), groups, star })
    }
}

// -------------------------------------------------------------- printing

fn free_copy(ring: &Ring) -> Ring {
    let names: Vec<&str> = ring.names().iter().map(String::as_str).collect();
    GeneratorSet::new(&names, ring.invertible_flags())
        .and_then(|s| s.with_characteristic(ring.characteristic()))
        .expect("names were valid")
        .into_ring()
}

fn fmt_tensor(ring: &Ring, t: &Tensor) -> String {
    t.display(&PolyLegs(ring.clone()))
}

/// Prints a file in canonical form; `parse_algebra` reads it back to an
/// equal value.
pub fn render(file: &AlgebraFile) -> String {
    let ring = file.ring();
    let n = ring.len();
    let mut out = String::new();
    let gens: Vec<String> =
        (0..n).map(|i| format!("{}{}", ring.name(i), if ring.is_invertible(i) { "*" } else { "" })).collect();
    let _ = writeln!(out, "[generators]\ngenerators = {}", gens.join(" "));
    if ring.characteristic() != 0 {
        let _ = writeln!(out, "characteristic = {}", ring.characteristic());
    }
    if let Some(degs) = ring.grading() {
        out.push_str("\n[grading]\n");
        for (i, d) in degs.iter().enumerate() {
            let _ = writeln!(out, "deg({}) = {d}", ring.name(i));
        }
    }
    if !ring.relations().is_empty() {
        let free = free_copy(ring);
        out.push_str("\n[relations]\n");
        for r in ring.relations() {
            let tail = LaurentPoly::from_terms(&free, r.tail.iter().cloned()).expect("valid monomials");
            let _ = writeln!(out, "{} = {tail}", free.fmt_monomial(&r.lead));
        }
    }
    out.push_str("\n[bracket]\n");
    for (&(i, j), v) in file.poisson.table() {
        let _ = writeln!(out, "{{{},{}}} = {v}", ring.name(i), ring.name(j));
    }
    if let Some(h) = &file.hopf {
        out.push_str("\n[coalgebra]\n");
        for i in 0..n {
            if ring.is_invertible(i) {
                continue;
            }
            let _ = writeln!(out, "Delta({}) = {}", ring.name(i), fmt_tensor(ring, h.gen_delta(i)));
            if !h.gen_counit(i).is_zero() {
                let _ = writeln!(out, "eps({}) = {}", ring.name(i), fmt_rational(h.gen_counit(i)));
            }
            let _ = writeln!(out, "S({}) = {}", ring.name(i), h.gen_antipode(i));
        }
    }
    if let Some(d) = &file.ore {
        out.push_str("\n[ore]\n");
        let _ = writeln!(out, "new = {}", d.name);
        for i in 0..n {
            if !d.ore.alpha[i].is_zero() {
                let _ = writeln!(out, "alpha({}) = {}", ring.name(i), d.ore.alpha[i]);
            }
            if !d.ore.delta[i].is_zero() {
                let _ = writeln!(out, "delta({}) = {}", ring.name(i), d.ore.delta[i]);
            }
            if !d.eta[i].is_zero() {
                let _ = writeln!(out, "eta({}) = {}", ring.name(i), fmt_rational(&d.eta[i]));
            }
        }
        for (i, q) in &d.eta_extra {
            let _ = writeln!(out, "eta({}^-1) = {}", ring.name(*i), fmt_rational(q));
        }
        if !d.group.is_one() {
            let _ = writeln!(out, "group = {}", d.group);
        }
        if !d.w.is_zero() {
            let _ = writeln!(out, "w = {}", fmt_tensor(ring, &d.w));
        }
    }
    if let Some(b) = &file.biproduct {
        out.push_str("\n[biproduct]\n");
        let _ = writeln!(out, "groups = {}", b.groups.join(" "));
        for (g, row) in b.groups.iter().zip(&b.star) {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    let _ = writeln!(out, "star({g}, {}) = {v}", ring.name(j));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TYPE_A: &str = "generators = g* x\n{x,g} = g*x\nDelta(x) = x @ 1 + g @ x\n";

    #[test]
    fn type_a_file() {
        let f = parse_algebra(TYPE_A, ParseOptions::default()).unwrap();
        let h = f.hopf.as_ref().unwrap();
        assert_eq!(h.gen_antipode(1).to_string(), "-g^-1*x");
        assert!(h.check_hopf_axioms().passed());
        assert!(h.check_poisson_hopf().passed());
    }

    #[test]
    fn precedence() {
        let r = GeneratorSet::parse_list("x y").unwrap();
        assert_eq!(parse_poly(&r, "-x^2 + 2*-y*x").unwrap().to_string(), "-x^2 - 2*x*y");
        assert_eq!(parse_poly(&r, "1/2*(x + y)^2").unwrap().to_string(), "1/2*x^2 + x*y + 1/2*y^2");
        let t = parse_tensor(&r, "2*(x@y - y@x) + x*y@1").unwrap();
        assert_eq!(fmt_tensor(&r, &t), "x*y@1 + 2*x@y - 2*y@x");
        assert_eq!(parse_tensor(&r, "x ⊗ 1").unwrap(), parse_tensor(&r, "x@1").unwrap());
    }

    #[test]
    fn rejections() {
        let bad = |s: &str| parse_algebra(s, ParseOptions::default()).unwrap_err();
        assert!(matches!(bad("generators = x y\n{x,x} = 1\n"), AlgebraError::Parse { line: 2, .. }));
        assert!(matches!(bad("generators = x\n{x,z} = 1\n"), AlgebraError::Parse { line: 2, col: 4, .. }));
        assert!(matches!(bad("generators = x y\n{x,y} = x^-1\n"), AlgebraError::Parse { line: 2, .. }));
        assert!(matches!(bad("generators = x y\n{x,y} = 1\n{y,x} = 1\n"), AlgebraError::Parse { line: 3, .. }));
        assert!(matches!(bad("generators = x\nDelta(x) = x@1 + 1@x\nDelta(x) = x@1\n"), AlgebraError::Parse { line: 3, .. }));
        assert!(matches!(bad("generators = x y\nDelta(x) = x@1 + 1@x\n"), AlgebraError::Parse { .. }));
        assert!(matches!(bad("generators = x\ncharacteristic = 3\n"), AlgebraError::Parse { line: 2, col: 18, .. }));
        assert!(matches!(bad("generators = x\n{x,x = 1\n"), AlgebraError::Parse { line: 2, col: 6, .. }));
        let e = bad("generators = x y\n{x,y} = x $ y\n");
        assert_eq!(e.to_string(), "2:11: unexpected character `$`");
    }

    #[test]
    fn group_like_antipode_accepted() {
        let f = parse_algebra("generators = g*\nS(g) = g^-1\n", ParseOptions::default()).unwrap();
        assert!(f.hopf.unwrap().check_hopf_axioms().passed());
    }

    #[test]
    fn render_round_trip() {
        let text = "generators = g* x\n{x,g} = g*x\nDelta(x) = x @ 1 + g @ x\n[ore]\nnew = y\nalpha(g) = 2*g\neta(g) = 1\neta(g^-1) = -1\nw = x@x\n";
        let f = parse_algebra(text, ParseOptions::default()).unwrap();
        let again = parse_algebra(&render(&f), ParseOptions::default()).unwrap();
        assert_eq!(f, again);
        assert_eq!(render(&f), render(&again));
    }

    #[test]
    fn uea_words() {
        let f = parse_algebra(TYPE_A, ParseOptions::default()).unwrap();
        let u = Uea::with_hopf(f.hopf.as_ref().unwrap()).unwrap();
        assert_eq!(parse_uea_expr(&u, "h(x)*m(g)").unwrap().to_string(), "g*h(x) + g*x");
        assert_eq!(parse_uea_expr(&u, "h(x)*g - g*h(x)").unwrap().to_string(), "g*x");
        assert!(parse_uea_expr(&u, "h(x)@h(g)").is_err());
    }
}
