//! Surface syntax for scalars, basis keys, elements and spec strings.
//!
//! ```text
//! element  := [sign] term (sign term)*
//! sign     := '+' | '-'
//! term     := [coeff '*'] monomial
//! coeff    := real | imag | '(' [sign] part [sign part] ')'
//! part     := real | imag
//! real     := NAT ['/' NAT]
//! imag     := [real] 'i'
//! monomial := 'a^' NAT 'c^' NAT | 'x_' ['-'] NAT | 'E_' NAT '_' NAT
//! ```
//!
//! Whitespace between tokens is ignored. Repeated monomials have their
//! coefficients summed and zeros pruned. A term without a monomial is a
//! syntax error: there is no unit element in any basis here. The single
//! exception is the literal `0`, which denotes the zero element.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::coalgebra::{BasisKey, Coalgebra, Element};
use crate::error::{Error, Result};
use crate::instances::{CoalgebraInstance, FormSpec, WeightFamily};
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Slash,
    Plus,
    Minus,
    Star,
    Caret,
    Underscore,
    LParen,
    RParen,
    Letter(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    start: usize,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let ch = text[pos..].chars().next().expect("in bounds");
        let start = pos;
        if ch.is_whitespace() {
            pos += ch.len_utf8();
            continue;
        }
        let tok = match ch {
            '0'..='9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let n: BigInt = text[start..pos].parse().expect("ascii digits");
                out.push(Token { tok: Tok::Num(n), start });
                continue;
            }
            '/' => Tok::Slash,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '_' => Tok::Underscore,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'a' | 'c' | 'x' | 'E' | 'i' => Tok::Letter(ch),
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        pos += ch.len_utf8();
        out.push(Token { tok, start });
    }
    Ok(out)
}

/// A monomial as written, before it is bound to a coalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monomial {
    Manin { a: u32, c: u32 },
    X(i64),
    E { row: u32, col: u32 },
}

struct Parser<'t> {
    text: &'t str,
    toks: Vec<Token>,
    pos: usize,
}

impl<'t> Parser<'t> {
    fn new(text: &'t str) -> Result<Self> {
        Ok(Parser { text, toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    /// Byte offset inside the current token, or the last byte at end of input.
    fn offset(&self) -> usize {
        match self.toks.get(self.pos) {
            Some(t) => t.start,
            None => self.text.len().saturating_sub(1),
        }
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token> {
        match self.peek() {
            Some(t) if *t == want => Ok(self.next().expect("peeked")),
            Some(_) => Err(syntax(self.offset(), format!("expected {what}"))),
            None => Err(syntax(self.offset(), format!("expected {what}, found end of input"))),
        }
    }

    fn nat(&mut self, what: &str) -> Result<(BigInt, usize)> {
        let off = self.offset();
        match self.peek() {
            Some(Tok::Num(_)) => {
                let Some(Token { tok: Tok::Num(n), .. }) = self.next() else { unreachable!() };
                Ok((n, off))
            }
            _ => Err(syntax(off, format!("expected {what}"))),
        }
    }

    fn small_nat(&mut self, what: &str) -> Result<u32> {
        let (n, off) = self.nat(what)?;
        u32::try_from(&n).map_err(|_| syntax(off, format!("{what} `{n}` is too large")))
    }

    /// `NAT ['/' NAT]`
    fn real(&mut self) -> Result<Rational> {
        let (num, _) = self.nat("a number")?;
        if self.peek() == Some(&Tok::Slash) {
            self.next();
            let (den, off) = self.nat("a denominator")?;
            Rational::new(num, den).map_err(|_| syntax(off, "zero denominator"))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    /// `real | [real] 'i'`, unsigned. The flag is true for imaginary parts.
    fn part(&mut self) -> Result<(GaussianRational, bool)> {
        match self.peek() {
            Some(Tok::Letter('i')) => {
                self.next();
                Ok((GaussianRational::i(), true))
            }
            Some(Tok::Num(_)) => {
                let r = self.real()?;
                if self.peek() == Some(&Tok::Letter('i')) {
                    self.next();
                    Ok((GaussianRational::new(Rational::zero(), r), true))
                } else {
                    Ok((GaussianRational::real(r), false))
                }
            }
            _ => Err(syntax(self.offset(), "expected a number or `i`")),
        }
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(Tok::Plus) => {
                self.next();
                Some(false)
            }
            Some(Tok::Minus) => {
                self.next();
                Some(true)
            }
            _ => None,
        }
    }

    /// Scalar literal without a leading sign.
    fn coeff(&mut self) -> Result<GaussianRational> {
        if self.peek() != Some(&Tok::LParen) {
            return Ok(self.part()?.0);
        }
        let open = self.next().expect("peeked");
        let first_negative = self.sign() == Some(true);
        let (first, first_imag) = self.part()?;
        let mut value = if first_negative { -first } else { first };
        if let Some(neg) = self.sign() {
            let off = self.offset();
            let (second, second_imag) = self.part()?;
            if first_imag == second_imag {
                return Err(syntax(off, "a complex literal needs one real and one imaginary part"));
            }
            value = if neg { value - second } else { value + second };
        }
        if self.peek() != Some(&Tok::RParen) {
            let at = if self.at_end() { open.start } else { self.offset() };
            return Err(syntax(at, "expected `)` closing the scalar"));
        }
        self.next();
        Ok(value)
    }

    fn monomial(&mut self) -> Result<(Monomial, usize)> {
        let start = self.offset();
        match self.peek() {
            Some(Tok::Letter('a')) => {
                self.next();
                self.expect(Tok::Caret, "`^` after `a`")?;
                let a = self.small_nat("an exponent")?;
                self.expect(Tok::Letter('c'), "`c^J` after `a^I`")?;
                self.expect(Tok::Caret, "`^` after `c`")?;
                let c = self.small_nat("an exponent")?;
                Ok((Monomial::Manin { a, c }, start))
            }
            Some(Tok::Letter('x')) => {
                self.next();
                self.expect(Tok::Underscore, "`_` after `x`")?;
                let negative = if self.peek() == Some(&Tok::Minus) {
                    self.next();
                    true
                } else {
                    false
                };
                let (n, off) = self.nat("an index")?;
                let n = i64::try_from(&n)
                    .ok()
                    .filter(|v| *v <= i64::from(i32::MAX))
                    .ok_or_else(|| syntax(off, format!("index `{n}` is too large")))?;
                Ok((Monomial::X(if negative { -n } else { n }), start))
            }
            Some(Tok::Letter('E')) => {
                self.next();
                self.expect(Tok::Underscore, "`_` after `E`")?;
                let row = self.small_nat("a row index")?;
                self.expect(Tok::Underscore, "`_` between matrix indices")?;
                let col = self.small_nat("a column index")?;
                Ok((Monomial::E { row, col }, start))
            }
            Some(Tok::Letter('i')) => Err(syntax(start, "`i` is the imaginary unit, not a monomial")),
            _ => Err(syntax(start, "expected a monomial (`a^I c^J`, `x_N` or `E_I_J`)")),
        }
    }

    fn term(&mut self) -> Result<(GaussianRational, Monomial, usize)> {
        let starts_coeff = matches!(self.peek(), Some(Tok::Num(_) | Tok::LParen | Tok::Letter('i')));
        let coeff = if starts_coeff {
            let off = self.offset();
            let c = self.coeff()?;
            if self.peek() != Some(&Tok::Star) {
                return Err(syntax(off, "expected `*` and a monomial after the coefficient; pure scalar terms are not allowed"));
            }
            self.next();
            c
        } else {
            GaussianRational::one()
        };
        let (m, off) = self.monomial()?;
        Ok((coeff, m, off))
    }

    fn element_terms(&mut self) -> Result<Vec<(GaussianRational, Monomial, usize)>> {
        if self.at_end() {
            return Err(syntax(0, "empty element"));
        }
        let mut terms = Vec::new();
        let mut negative = self.sign() == Some(true);
        loop {
            let (c, m, off) = self.term()?;
            terms.push((if negative { -c } else { c }, m, off));
            if self.at_end() {
                break;
            }
            negative = match self.sign() {
                Some(n) => n,
                None => return Err(syntax(self.offset(), "expected `+` or `-` between terms")),
            };
        }
        Ok(terms)
    }
}

/// A scalar literal with an optional leading sign: `3`, `-3/2`, `2i`, `-i`,
/// `(1/2+3i)`, `(3-i)`.
pub fn parse_scalar(text: &str) -> Result<GaussianRational> {
    let mut p = Parser::new(text)?;
    if p.at_end() {
        return Err(syntax(0, "empty scalar"));
    }
    let negative = p.sign() == Some(true);
    let z = p.coeff()?;
    if !p.at_end() {
        return Err(syntax(p.offset(), "unexpected trailing input after scalar"));
    }
    Ok(if negative { -z } else { z })
}

/// Binds a written monomial to a key of `coalgebra`.
pub fn key_for(coalgebra: &CoalgebraInstance, m: Monomial) -> Result<BasisKey> {
    use crate::instances::CoalgebraKind as K;
    let wrong = || Error::WrongCoalgebra { key: render_monomial(m), context: coalgebra.spec().to_string() };
    let out_of_range = || Error::KeyOutOfRange { key: render_monomial(m), context: coalgebra.spec().to_string() };
    let key = match (coalgebra.kind(), m) {
        (K::Manin { .. }, Monomial::Manin { a, c }) => BasisKey::Manin { a, c },
        (K::DividedPower, Monomial::X(n)) => BasisKey::Divided(u32::try_from(n).map_err(|_| out_of_range())?),
        (K::NegativeDegree { .. }, Monomial::X(n)) => BasisKey::NegDeg(i32::try_from(n).map_err(|_| out_of_range())?),
        (K::Matrix { .. }, Monomial::E { row, col }) => BasisKey::Matrix { row, col },
        _ => return Err(wrong()),
    };
    coalgebra.validate_key(&key)?;
    Ok(key)
}

fn render_monomial(m: Monomial) -> String {
    match m {
        Monomial::Manin { a, c } => format!("a^{a} c^{c}"),
        Monomial::X(n) => format!("x_{n}"),
        Monomial::E { row, col } => format!("E_{row}_{col}"),
    }
}

/// Parses a linear combination of basis monomials of `coalgebra`.
pub fn parse_element(text: &str, coalgebra: &CoalgebraInstance) -> Result<Element> {
    // `0` is how the empty sum renders; it is the one scalar-only input accepted.
    if text.trim() == "0" {
        return Ok(Element::zero(coalgebra.context().clone()));
    }
    let mut p = Parser::new(text)?;
    let terms = p.element_terms()?;
    let mut keyed = Vec::with_capacity(terms.len());
    for (c, m, _) in terms {
        keyed.push((key_for(coalgebra, m)?, c));
    }
    Ok(Element::from_terms(coalgebra.context().clone(), keyed))
}

/// Parses a single basis monomial.
pub fn parse_key(text: &str, coalgebra: &CoalgebraInstance) -> Result<BasisKey> {
    let mut p = Parser::new(text)?;
    let (m, _) = p.monomial()?;
    if !p.at_end() {
        return Err(syntax(p.offset(), "unexpected trailing input after monomial"));
    }
    key_for(coalgebra, m)
}

/// Comma-separated list of monomials, e.g. `x_0, x_1, x_3`.
pub fn parse_key_list(text: &str, coalgebra: &CoalgebraInstance) -> Result<Vec<BasisKey>> {
    let mut keys = Vec::new();
    let mut base = 0;
    for piece in text.split(',') {
        let trimmed = piece.trim();
        if trimmed.is_empty() {
            return Err(syntax(base, "empty entry in key list"));
        }
        let lead = piece.len() - piece.trim_start().len();
        keys.push(parse_key(trimmed, coalgebra).map_err(|e| match e {
            Error::Syntax { offset, message } => Error::Syntax { offset: offset + base + lead, message },
            other => other,
        })?);
        base += piece.len() + 1;
    }
    Ok(keys)
}

/// Canonical text of an element.
pub fn render_element(e: &Element) -> String {
    e.render()
}

/// Shared renderer for elements and tensors: terms in the given order,
/// unit coefficients elided, leading minus signs folded into separators,
/// `0` for the empty sum.
pub fn render_terms<'a>(terms: impl Iterator<Item = (String, &'a GaussianRational)>) -> String {
    let mut out = String::new();
    for (idx, (key, c)) in terms.enumerate() {
        let negative = c.has_leading_minus();
        let magnitude = if negative { -c } else { c.clone() };
        match (idx, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !magnitude.is_one() {
            let _ = write!(out, "{magnitude}*");
        }
        out.push_str(&key);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Anything `parse_spec` can produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spec {
    Coalgebra(CoalgebraInstance),
    Form(FormSpec),
    Weight(WeightFamily),
}

/// Default deformation parameter when `manin` is given without `q`.
pub fn default_q() -> GaussianRational {
    GaussianRational::ratio(2, 3).expect("nonzero denominator")
}

fn split_query(text: &str) -> Result<(&str, Vec<(&str, &str)>)> {
    let text = text.trim();
    let (head, query) = match text.split_once('?') {
        Some((h, q)) => (h, Some(q)),
        None => (text, None),
    };
    let mut params = Vec::new();
    if let Some(q) = query {
        for kv in q.split('&') {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got `{kv}` in `{text}`")))?;
            params.push((k.trim(), v.trim()));
        }
    }
    Ok((head, params))
}

fn take_params<'a>(spec: &str, params: &[(&str, &'a str)], allowed: &[&str]) -> Result<Vec<Option<&'a str>>> {
    for (k, _) in params {
        if !allowed.contains(k) {
            return Err(Error::InvalidParameter(format!("unknown parameter `{k}` for `{spec}`")));
        }
    }
    Ok(allowed
        .iter()
        .map(|name| params.iter().rev().find(|(k, _)| k == name).map(|(_, v)| *v))
        .collect())
}

fn positive_u32(name: &str, v: Option<&str>, spec: &str) -> Result<u32> {
    let v = v.ok_or_else(|| Error::InvalidParameter(format!("`{spec}` requires `{name}=<int>`")))?;
    let n: u32 = v
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("`{name}` must be a positive integer, got `{v}`")))?;
    if n < 1 {
        return Err(Error::InvalidParameter(format!("`{name}` must be >= 1, got {n}")));
    }
    Ok(n)
}

/// `manin?q=<scalar>`, `divpow`, `negdeg?M=<int>`, `matrix?n=<int>`.
pub fn parse_coalgebra_spec(text: &str) -> Result<CoalgebraInstance> {
    let (head, params) = split_query(text)?;
    match head {
        "manin" => {
            let [q] = take_params(head, &params, &["q"])?[..] else { unreachable!() };
            let q = match q {
                Some(v) => parse_scalar(v)
                    .map_err(|e| Error::InvalidParameter(format!("q: {e}")))?,
                None => default_q(),
            };
            CoalgebraInstance::manin(q)
        }
        "divpow" => {
            take_params(head, &params, &[])?;
            Ok(CoalgebraInstance::divided_power())
        }
        "negdeg" => {
            let [m] = take_params(head, &params, &["M"])?[..] else { unreachable!() };
            CoalgebraInstance::negative_degree(positive_u32("M", m, head)?)
        }
        "matrix" => {
            let [n] = take_params(head, &params, &["n"])?[..] else { unreachable!() };
            CoalgebraInstance::matrix(positive_u32("n", n, head)?)
        }
        _ => Err(Error::UnknownSpec(text.trim().to_string())),
    }
}

/// `one`, `factorial`, `absfactorial`, `geom:<rational>`, `poly:<int>`.
pub fn parse_weight(text: &str) -> Result<WeightFamily> {
    let text = text.trim();
    match text.split_once(':') {
        None => match text {
            "one" => Ok(WeightFamily::One),
            "factorial" => Ok(WeightFamily::Factorial),
            "absfactorial" => Ok(WeightFamily::AbsFactorial),
            "geom" | "poly" => Err(Error::InvalidParameter(format!("`{text}` needs an argument, e.g. `{text}:2`"))),
            _ => Err(Error::UnknownSpec(text.to_string())),
        },
        Some(("geom", r)) => WeightFamily::geom(r.parse()?),
        Some(("poly", k)) => Ok(WeightFamily::Poly(
            k.trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("poly exponent must be a natural number, got `{k}`")))?,
        )),
        Some(_) => Err(Error::UnknownSpec(text.to_string())),
    }
}

/// `manin-orth?w=`, `manin-skew?mu=`, `diag?w=`, `matrix-orth`,
/// `matrix-weighted?w=`; omitted weights default to `one`.
pub fn parse_form_spec(text: &str) -> Result<FormSpec> {
    let (head, params) = split_query(text)?;
    let weight = |name: &str| -> Result<WeightFamily> {
        let [w] = take_params(head, &params, &[name])?[..] else { unreachable!() };
        w.map_or(Ok(WeightFamily::One), parse_weight)
    };
    match head {
        "manin-orth" => Ok(FormSpec::ManinOrthogonal(weight("w")?)),
        "manin-skew" => Ok(FormSpec::ManinSkew(weight("mu")?)),
        "diag" => Ok(FormSpec::Diagonal(weight("w")?)),
        "matrix-orth" => {
            take_params(head, &params, &[])?;
            Ok(FormSpec::MatrixOrthonormal)
        }
        "matrix-weighted" => Ok(FormSpec::MatrixWeighted(weight("w")?)),
        _ => Err(Error::UnknownSpec(text.trim().to_string())),
    }
}

/// Tries coalgebra, form and weight grammars in turn.
pub fn parse_spec(text: &str) -> Result<Spec> {
    match parse_coalgebra_spec(text) {
        Err(Error::UnknownSpec(_)) => {}
        other => return other.map(Spec::Coalgebra),
    }
    match parse_form_spec(text) {
        Err(Error::UnknownSpec(_)) => {}
        other => return other.map(Spec::Form),
    }
    parse_weight(text).map(Spec::Weight)
}
