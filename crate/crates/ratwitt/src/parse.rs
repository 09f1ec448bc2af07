//! Text forms for every value the library computes with: ring descriptors,
//! ring elements, T-polynomials, truncated series, rational Witt vectors,
//! formal sums, and row-major matrices. One tokenizer feeds a small
//! expression evaluator; every error carries the byte position it was
//! raised at. The grammars match the canonical renderers, so printed
//! results re-parse to equal values.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::monoid::FormalSum;
use crate::poly::{raw, Poly};
use crate::ratwitt::RatWitt;
use crate::ring::{bivar, gf, Elem, Ring, RingKind};
use crate::witt::WittSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &s[start..i];
                toks.push((start, Tok::Int(digits.parse().expect("digit run"))));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b';' => Tok::Semi,
            b'=' => Tok::Eq,
            _ => return Err(err(i, format!("unexpected character {:?}", c as char))),
        };
        toks.push((i, tok));
        i += 1;
    }
    Ok(toks)
}

struct Cursor<'a> {
    toks: &'a [(usize, Tok)],
    i: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [(usize, Tok)], end: usize) -> Cursor<'a> {
        Cursor { toks, i: 0, end }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<&'a Tok> {
        let t = self.peek();
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected {what}")))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.i == self.toks.len() {
            Ok(())
        } else {
            Err(err(self.pos(), "unexpected trailing input"))
        }
    }
}

/// Named generators available in element literals, per ring: `x` for the
/// finite-field and polynomial generators, `x`/`y` in the bivariate rings,
/// `e` for the square-zero element of the dual numbers. Composite rings
/// inherit their base ring's symbols.
fn symbol(ring: &Ring, name: &str) -> Option<Elem> {
    match (ring.kind(), name) {
        (RingKind::FiniteField(f), "x") if f.k() >= 2 => Some(Elem::Gf(f.gen())),
        (RingKind::Dual(b), "e") => Some(Elem::Dual(Box::new((b.zero(), b.one())))),
        (RingKind::Dual(b), _) => {
            symbol(b, name).map(|v| Elem::Dual(Box::new((v, b.zero()))))
        }
        (RingKind::Poly(b, v), n) if n == v => Some(Elem::Poly(vec![b.zero(), b.one()])),
        (RingKind::Poly(b, _), _) => {
            symbol(b, name).map(|v| Elem::Poly(raw::trim(b, vec![v])))
        }
        (RingKind::Bivar(b) | RingKind::MonSub(b), "x") => {
            Some(Elem::Bivar(bivar::monomial(b, 1, 0, b.one())))
        }
        (RingKind::Bivar(b) | RingKind::MonSub(b), "y") => {
            Some(Elem::Bivar(bivar::monomial(b, 0, 1, b.one())))
        }
        (RingKind::Frac(b), _) => symbol(b, name).map(|v| ring.frac(v, b.one())),
        _ => None,
    }
}

struct Env<'r> {
    ring: &'r Ring,
    /// Name of the distinguished polynomial variable, when one is allowed.
    var: Option<&'static str>,
}

/// expr := term (('+'|'-') term)* — values are polynomials in the
/// distinguished variable with ring-element coefficients.
fn eval_expr(cur: &mut Cursor, env: &Env) -> Result<Poly> {
    let mut acc = eval_term(cur, env)?;
    loop {
        if cur.eat(&Tok::Plus) {
            acc = acc.add(&eval_term(cur, env)?);
        } else if cur.eat(&Tok::Minus) {
            acc = acc.sub(&eval_term(cur, env)?);
        } else {
            return Ok(acc);
        }
    }
}

fn eval_term(cur: &mut Cursor, env: &Env) -> Result<Poly> {
    let mut acc = eval_unary(cur, env)?;
    loop {
        if cur.eat(&Tok::Star) {
            acc = acc.mul(&eval_unary(cur, env)?);
        } else if cur.eat(&Tok::Slash) {
            let pos = cur.pos();
            let rhs = eval_unary(cur, env)?;
            acc = eval_div(env.ring, &acc, &rhs, pos)?;
        } else {
            return Ok(acc);
        }
    }
}

fn eval_div(ring: &Ring, a: &Poly, b: &Poly, pos: usize) -> Result<Poly> {
    if b.is_zero() {
        return Err(err(pos, "division by zero"));
    }
    if a.deg().unwrap_or(0) == 0 && b.deg().unwrap_or(0) == 0 {
        let q = ring
            .exact_div(&a.coeff(0), &b.coeff(0))
            .ok_or_else(|| err(pos, "inexact division in this ring"))?;
        return Ok(Poly::constant(ring.clone(), q));
    }
    a.exact_div(b).ok_or_else(|| err(pos, "inexact polynomial division"))
}

fn eval_unary(cur: &mut Cursor, env: &Env) -> Result<Poly> {
    if cur.eat(&Tok::Minus) {
        return Ok(eval_unary(cur, env)?.neg());
    }
    eval_power(cur, env)
}

fn eval_power(cur: &mut Cursor, env: &Env) -> Result<Poly> {
    let base = eval_atom(cur, env)?;
    if !cur.eat(&Tok::Caret) {
        return Ok(base);
    }
    let pos = cur.pos();
    let Some(Tok::Int(e)) = cur.bump() else {
        return Err(err(pos, "expected integer exponent"));
    };
    let e = u32::try_from(e).map_err(|_| err(pos, "exponent out of range"))?;
    if e > 512 {
        return Err(err(pos, "exponent too large"));
    }
    let mut acc = Poly::one(env.ring.clone());
    for _ in 0..e {
        acc = acc.mul(&base);
    }
    Ok(acc)
}

fn eval_atom(cur: &mut Cursor, env: &Env) -> Result<Poly> {
    let pos = cur.pos();
    match cur.bump() {
        Some(Tok::Int(n)) => {
            let v = i64::try_from(n).map_err(|_| err(pos, "integer literal out of range"))?;
            Ok(Poly::constant(env.ring.clone(), env.ring.from_i64(v)))
        }
        Some(Tok::Ident(name)) => {
            if env.var == Some(name.as_str()) {
                return Ok(Poly::new(
                    env.ring.clone(),
                    vec![env.ring.zero(), env.ring.one()],
                ));
            }
            symbol(env.ring, name)
                .map(|e| Poly::constant(env.ring.clone(), e))
                .ok_or_else(|| {
                    err(pos, format!("unknown symbol {name:?} in {}", env.ring.descriptor()))
                })
        }
        Some(Tok::LParen) => {
            let inner = eval_expr(cur, env)?;
            cur.expect(&Tok::RParen, "closing parenthesis")?;
            Ok(inner)
        }
        _ => Err(err(pos, "expected a value")),
    }
}

fn eval_slice(toks: &[(usize, Tok)], end: usize, env: &Env) -> Result<Poly> {
    let mut cur = Cursor::new(toks, end);
    let v = eval_expr(&mut cur, env)?;
    cur.finish()?;
    Ok(v)
}

fn as_elem(ring: &Ring, p: Poly, pos: usize) -> Result<Elem> {
    if p.deg().unwrap_or(0) > 0 {
        return Err(err(pos, "the series variable is not allowed here"));
    }
    let e = p.coeff(0);
    if !ring.validate(&e) {
        return Err(err(pos, format!("element lies outside {}", ring.descriptor())));
    }
    Ok(e)
}

/// Parse a single ring element; the distinguished variable T is rejected.
pub fn parse_elem(ring: &Ring, s: &str) -> Result<Elem> {
    let toks = lex(s)?;
    let p = eval_slice(&toks, s.len(), &Env { ring, var: None })?;
    as_elem(ring, p, 0)
}

/// Parse a polynomial in T with ring-element coefficients. Coefficients
/// that use `/` (e.g. rationals) must be parenthesized so the slash is not
/// read as the fraction bar of a rational Witt vector.
pub fn parse_poly_t(ring: &Ring, s: &str) -> Result<Poly> {
    let toks = lex(s)?;
    eval_slice(&toks, s.len(), &Env { ring, var: Some("T") })
}

/// Split a token stream at top-level occurrences of a separator (paren and
/// bracket depth 0), returning the pieces.
fn split_top(toks: &[(usize, Tok)], sep: &Tok) -> Vec<core::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, (_, t)) in toks.iter().enumerate() {
        match t {
            Tok::LParen | Tok::LBracket => depth += 1,
            Tok::RParen | Tok::RBracket => depth = depth.saturating_sub(1),
            _ if depth == 0 && t == sep => {
                out.push(start..i);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(start..toks.len());
    out
}

/// Coefficient list with a_0 first, from either a comma list `1,1,2,4` or a
/// polynomial form `1 - 5*T + 6*T^2 ; prec=3` (the precision clause pads
/// with zeros; it may not cut below the degree).
pub fn parse_coeff_list(ring: &Ring, s: &str) -> Result<Vec<Elem>> {
    let toks = lex(s)?;
    let commas = split_top(&toks, &Tok::Comma);
    if commas.len() > 1 {
        let mut out = Vec::with_capacity(commas.len());
        for r in commas {
            let pos = toks.get(r.start).map_or(s.len(), |(p, _)| *p);
            let p = eval_slice(&toks[r], s.len(), &Env { ring, var: None })?;
            out.push(as_elem(ring, p, pos)?);
        }
        return Ok(out);
    }
    let pieces = split_top(&toks, &Tok::Semi);
    if pieces.len() > 2 {
        return Err(err(s.len(), "at most one precision clause"));
    }
    let poly = eval_slice(&toks[pieces[0].clone()], s.len(), &Env { ring, var: Some("T") })?;
    let deg = poly.deg().unwrap_or(0);
    let prec = if let Some(r) = pieces.get(1) {
        let mut cur = Cursor::new(&toks[r.clone()], s.len());
        let pos = cur.pos();
        match cur.bump() {
            Some(Tok::Ident(n)) if n == "prec" => {}
            _ => return Err(err(pos, "expected prec=N")),
        }
        cur.expect(&Tok::Eq, "= after prec")?;
        let pos = cur.pos();
        let Some(Tok::Int(n)) = cur.bump() else {
            return Err(err(pos, "expected integer precision"));
        };
        cur.finish()?;
        let n = usize::try_from(n).map_err(|_| err(pos, "precision out of range"))?;
        if n < deg {
            return Err(err(pos, "precision clause below polynomial degree"));
        }
        n
    } else {
        deg
    };
    Ok((0..=prec).map(|i| poly.coeff(i)).collect())
}

/// Truncated Witt series: a coefficient list whose a_0 entry must be 1.
pub fn parse_series(ring: &Ring, s: &str) -> Result<WittSeries> {
    let list = parse_coeff_list(ring, s)?;
    if list.is_empty() || !ring.is_one(&list[0]) {
        return Err(err(0, "a series literal must start at constant term 1"));
    }
    Ok(WittSeries::new(ring.clone(), list[1..].to_vec()))
}

/// Rational Witt vector `P` or `P/Q`, split at the unique top-level slash.
pub fn parse_ratwitt(ring: &Ring, s: &str) -> Result<RatWitt> {
    let toks = lex(s)?;
    let sides = split_top(&toks, &Tok::Slash);
    if sides.len() > 2 {
        return Err(err(s.len(), "more than one top-level fraction bar"));
    }
    let env = Env { ring, var: Some("T") };
    let p = eval_slice(&toks[sides[0].clone()], s.len(), &env)?;
    let q = match sides.get(1) {
        Some(r) => eval_slice(&toks[r.clone()], s.len(), &env)?,
        None => Poly::one(ring.clone()),
    };
    RatWitt::new(ring.clone(), p, q)
}

/// Formal sum `2*(3) - (5) + (x+1)`; `0` is the zero sum.
pub fn parse_formal_sum(ring: &Ring, s: &str) -> Result<FormalSum> {
    let toks = lex(s)?;
    let mut cur = Cursor::new(&toks, s.len());
    let mut sum = FormalSum::zero(ring.clone());
    let mut first = true;
    loop {
        let sign = if cur.eat(&Tok::Minus) {
            -1
        } else if cur.eat(&Tok::Plus) {
            if first {
                return Err(err(cur.pos(), "a sum may not start with +"));
            }
            1
        } else {
            if !first {
                break;
            }
            1
        };
        first = false;
        let mut mult = 1i64;
        if let Some(Tok::Int(n)) = cur.peek() {
            let pos = cur.pos();
            mult = i64::try_from(n).map_err(|_| err(pos, "multiplicity out of range"))?;
            cur.bump();
            if !cur.eat(&Tok::Star) {
                // a bare integer term: only 0 stands for the zero sum
                if mult == 0 {
                    continue;
                }
                return Err(err(cur.pos(), "expected * and a parenthesized generator"));
            }
        }
        let pos = cur.pos();
        cur.expect(&Tok::LParen, "parenthesized generator")?;
        let start = cur.i;
        let mut depth = 1usize;
        while depth > 0 {
            match cur.bump() {
                Some(Tok::LParen) => depth += 1,
                Some(Tok::RParen) => depth -= 1,
                Some(_) => {}
                None => return Err(err(cur.pos(), "unclosed generator")),
            }
        }
        let inner = &toks[start..cur.i - 1];
        let p = eval_slice(inner, s.len(), &Env { ring, var: None })?;
        let e = as_elem(ring, p, pos)?;
        sum = sum
            .add(&FormalSum::generator(ring.clone(), &e).scale(sign * mult))
            .expect("same ring");
    }
    cur.finish()?;
    Ok(sum)
}

/// Row-major matrix `[[a,b],[c,d]]`; `[]` is the 0×0 matrix.
pub fn parse_matrix(ring: &Ring, s: &str) -> Result<Mat> {
    let toks = lex(s)?;
    let mut cur = Cursor::new(&toks, s.len());
    cur.expect(&Tok::LBracket, "opening [")?;
    if cur.eat(&Tok::RBracket) {
        cur.finish()?;
        return Ok(Mat::zero(ring.clone(), 0, 0));
    }
    let mut data: Vec<Elem> = Vec::new();
    let mut rows = 0usize;
    let mut cols: Option<usize> = None;
    loop {
        cur.expect(&Tok::LBracket, "row opening [")?;
        let start = cur.i;
        let mut depth = 1usize;
        while depth > 0 {
            match cur.bump() {
                Some(Tok::LBracket) => depth += 1,
                Some(Tok::RBracket) => depth -= 1,
                Some(_) => {}
                None => return Err(err(cur.pos(), "unclosed row")),
            }
        }
        let row_toks = &toks[start..cur.i - 1];
        let mut width = 0usize;
        for r in split_top(row_toks, &Tok::Comma) {
            let pos = row_toks.get(r.start).map_or(s.len(), |(p, _)| *p);
            let p = eval_slice(&row_toks[r], s.len(), &Env { ring, var: None })?;
            data.push(as_elem(ring, p, pos)?);
            width += 1;
        }
        rows += 1;
        match cols {
            None => cols = Some(width),
            Some(w) if w != width => {
                return Err(err(cur.pos(), "rows of unequal length"));
            }
            _ => {}
        }
        if cur.eat(&Tok::Comma) {
            continue;
        }
        cur.expect(&Tok::RBracket, "closing ]")?;
        break;
    }
    cur.finish()?;
    Ok(Mat::new(ring.clone(), rows, cols.unwrap_or(0), data))
}

/// Ring descriptors: `ZZ`, `QQ`, `Zmod/6`, `GF/2`, `GF/4=x^2+x+1`,
/// `Dual(R)`, `MonSub(R)`, `Bivar(R)`, `Poly(R,x)`, `Frac(R)`.
pub fn parse_ring(s: &str) -> Result<Ring> {
    let toks = lex(s)?;
    let mut cur = Cursor::new(&toks, s.len());
    let r = parse_ring_inner(&mut cur, &toks)?;
    cur.finish()?;
    Ok(r)
}

fn parse_ring_inner(cur: &mut Cursor, toks: &[(usize, Tok)]) -> Result<Ring> {
    let pos = cur.pos();
    let Some(Tok::Ident(head)) = cur.bump() else {
        return Err(err(pos, "expected a ring name"));
    };
    match head.as_str() {
        "ZZ" => Ok(Ring::integers()),
        "QQ" => Ok(Ring::rationals()),
        "Zmod" => {
            cur.expect(&Tok::Slash, "/ after Zmod")?;
            let pos = cur.pos();
            let Some(Tok::Int(n)) = cur.bump() else {
                return Err(err(pos, "expected modulus"));
            };
            let n: BigUint = n.to_biguint().ok_or_else(|| err(pos, "negative modulus"))?;
            Ring::integers_mod(n)
        }
        "GF" => {
            cur.expect(&Tok::Slash, "/ after GF")?;
            let pos = cur.pos();
            let Some(Tok::Int(q)) = cur.bump() else {
                return Err(err(pos, "expected field order"));
            };
            let q = u64::try_from(q).map_err(|_| err(pos, "field order out of range"))?;
            if !cur.eat(&Tok::Eq) {
                return Ring::gf(q);
            }
            let (p, k) = gf::prime_power(q).ok_or_else(|| err(pos, "order must be a prime power"))?;
            // modulus: polynomial in x with integer coefficients, read to
            // the end of this ring descriptor
            let start = cur.i;
            let mut depth = 0usize;
            while let Some(t) = cur.peek() {
                match t {
                    Tok::LParen => depth += 1,
                    Tok::RParen if depth == 0 => break,
                    Tok::RParen => depth -= 1,
                    Tok::Comma if depth == 0 => break,
                    _ => {}
                }
                cur.bump();
            }
            let zz = Ring::integers();
            let mpos = toks.get(start).map_or(cur.end, |(p, _)| *p);
            let mp = eval_slice(&toks[start..cur.i], cur.end, &Env { ring: &zz, var: Some("x") })?;
            if mp.deg().unwrap_or(0) != k {
                return Err(err(mpos, "modulus degree must match the field order"));
            }
            let coeffs: Vec<u64> = (0..=k)
                .map(|i| match mp.coeff(i) {
                    Elem::Int(v) => {
                        let m = BigInt::from(p);
                        let r = ((v % &m) + &m) % &m;
                        u64::try_from(&r).expect("reduced residue")
                    }
                    _ => unreachable!("integer coefficients"),
                })
                .collect();
            Ring::finite_field(p, coeffs)
        }
        "Dual" | "MonSub" | "Bivar" | "Frac" => {
            cur.expect(&Tok::LParen, "( after ring constructor")?;
            let inner = parse_ring_inner(cur, toks)?;
            cur.expect(&Tok::RParen, "closing )")?;
            match head.as_str() {
                "Dual" => Ok(Ring::dual(inner)),
                "MonSub" => Ring::monsub(inner),
                "Bivar" => Ring::bivar(inner),
                _ => inner.fraction_field(),
            }
        }
        "Poly" => {
            cur.expect(&Tok::LParen, "( after Poly")?;
            let inner = parse_ring_inner(cur, toks)?;
            cur.expect(&Tok::Comma, "comma before the variable name")?;
            let pos = cur.pos();
            let Some(Tok::Ident(var)) = cur.bump() else {
                return Err(err(pos, "expected a variable name"));
            };
            cur.expect(&Tok::RParen, "closing )")?;
            Ok(Ring::poly(inner, var))
        }
        other => Err(err(pos, format!("unknown ring {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_descriptors_round_trip() {
        for d in [
            "ZZ",
            "QQ",
            "Zmod/6",
            "GF/2",
            "GF/4=x^2+x+1",
            "Dual(GF/2)",
            "MonSub(GF/2)",
            "Poly(ZZ,x)",
            "Frac(Poly(GF/2,x))",
        ] {
            let r = parse_ring(d).unwrap();
            assert_eq!(parse_ring(&r.descriptor()).unwrap(), r, "{d}");
        }
        assert!(parse_ring("GF/6").is_err());
        assert!(parse_ring("What").is_err());
    }

    #[test]
    fn elements_round_trip() {
        let cases: Vec<(&str, &str)> = vec![
            ("ZZ", "-42"),
            ("QQ", "3/2"),
            ("Zmod/6", "5"),
            ("GF/4=x^2+x+1", "x+1"),
            ("Dual(GF/4=x^2+x+1)", "x+e"),
            ("Dual(GF/2)", "1+e"),
            ("MonSub(GF/2)", "1+x+x*y"),
        ];
        for (rd, lit) in cases {
            let ring = parse_ring(rd).unwrap();
            let e = parse_elem(&ring, lit).unwrap();
            let back = parse_elem(&ring, &ring.render_elem(&e)).unwrap();
            assert!(ring.eq(&e, &back), "{rd} {lit}");
        }
        // membership violations are parse errors with a position
        let ms = parse_ring("MonSub(GF/2)").unwrap();
        assert!(matches!(parse_elem(&ms, "y"), Err(Error::Parse { .. })));
        let zz = Ring::integers();
        assert!(parse_elem(&zz, "7/2").is_err());
        assert!(parse_elem(&zz, "6/2").is_ok());
    }

    #[test]
    fn dual_symbol_square_is_zero() {
        let d = parse_ring("Dual(GF/2)").unwrap();
        let e2 = parse_elem(&d, "e^2").unwrap();
        assert!(d.is_zero(&e2));
        let s = parse_elem(&d, "(1+e)*(1+e)").unwrap();
        assert!(d.is_one(&s));
    }

    #[test]
    fn series_both_forms() {
        let zz = Ring::integers();
        let a = parse_series(&zz, "1,1,2,4").unwrap();
        assert_eq!(a.coeffs().len(), 3);
        let b = parse_series(&zz, "1 - 5*T + 6*T^2 ; prec=3").unwrap();
        assert_eq!(b.coeffs().len(), 3);
        assert!(zz.is_zero(b.coeff(3)));
        let back = parse_series(&zz, &b.render()).unwrap();
        assert_eq!(back.render(), b.render());
        assert!(parse_series(&zz, "2,1").is_err());
        assert!(parse_series(&zz, "1 - T^3 ; prec=2").is_err());
    }

    #[test]
    fn ratwitt_forms() {
        let qq = Ring::rationals();
        let f = parse_ratwitt(&qq, "(1-T)/(1-2*T)").unwrap();
        assert_eq!(f.render(), "(1-T)/(1-2*T)");
        let g = parse_ratwitt(&qq, "1/(1-T-T^2)").unwrap();
        assert_eq!(g.render(), "1/(1-T-T^2)");
        let h = parse_ratwitt(&qq, "1-(3/2)*T").unwrap();
        assert_eq!(h.render(), "1-(3/2)*T");
        let t = parse_ratwitt(&qq, "1-6*T").unwrap();
        assert_eq!(t.render(), "1-6*T");
        assert!(parse_ratwitt(&qq, "1/T/T").is_err());
        assert!(parse_ratwitt(&qq, "2-T").is_err());
    }

    #[test]
    fn formal_sums() {
        let zz = Ring::integers();
        let u = parse_formal_sum(&zz, "2*(3) - (5) + (7)").unwrap();
        assert_eq!(u.render(), "2*(3) - (5) + (7)");
        let z = parse_formal_sum(&zz, "0").unwrap();
        assert!(z.is_zero());
        let gf4 = parse_ring("GF/4=x^2+x+1").unwrap();
        let v = parse_formal_sum(&gf4, "(x) + (x^2)").unwrap();
        assert_eq!(v.support_len(), 2);
        let back = parse_formal_sum(&gf4, &v.render()).unwrap();
        assert!(back.eq(&v));
    }

    #[test]
    fn matrices() {
        let zz = Ring::integers();
        let m = parse_matrix(&zz, "[[1,2],[3,4]]").unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert!(zz.eq(m.at(1, 0), &zz.from_i64(3)));
        let empty = parse_matrix(&zz, "[]").unwrap();
        assert_eq!(empty.rows(), 0);
        assert!(parse_matrix(&zz, "[[1,2],[3]]").is_err());
        let gf4 = parse_ring("GF/4=x^2+x+1").unwrap();
        let n = parse_matrix(&gf4, "[[x,1],[0,x+1]]").unwrap();
        assert_eq!(n.rows(), 2);
    }

    #[test]
    fn error_positions_point_at_the_problem() {
        let zz = Ring::integers();
        let Err(Error::Parse { pos, .. }) = parse_elem(&zz, "1 + $") else {
            panic!("expected a parse error");
        };
        assert_eq!(pos, 4);
        let Err(Error::Parse { pos, .. }) = parse_elem(&zz, "1 + y") else {
            panic!("expected a parse error");
        };
        assert_eq!(pos, 4);
    }
}
