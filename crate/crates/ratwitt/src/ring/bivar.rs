//! Sparse bivariate polynomials over a base field, keyed by (x-degree, y-degree).
//!
//! Used for k[x,y] and for the monomial subring k + x·k[x,y]. No multivariate
//! gcd is attempted anywhere; equality of fractions over these rings goes
//! through cross-multiplication instead. Exact division by a single divisor
//! (lex-leading-term reduction) is supported — that is ordinary division, not
//! gcd, and suffices to decide membership of a fraction in the polynomial ring.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Elem, Ring};

/// (x exponent, y exponent) -> nonzero coefficient in the base field.
pub type BivarMap = BTreeMap<(u32, u32), Elem>;

pub fn zero() -> BivarMap {
    BTreeMap::new()
}

pub fn constant(base: &Ring, c: Elem) -> BivarMap {
    let mut m = BTreeMap::new();
    if !base.is_zero(&c) {
        m.insert((0, 0), c);
    }
    m
}

pub fn monomial(base: &Ring, i: u32, j: u32, c: Elem) -> BivarMap {
    let mut m = BTreeMap::new();
    if !base.is_zero(&c) {
        m.insert((i, j), c);
    }
    m
}

pub fn add(base: &Ring, a: &BivarMap, b: &BivarMap) -> BivarMap {
    let mut out = a.clone();
    for (k, v) in b {
        match out.remove(k) {
            Some(cur) => {
                let s = base.add(&cur, v);
                if !base.is_zero(&s) {
                    out.insert(*k, s);
                }
            }
            None => {
                out.insert(*k, v.clone());
            }
        }
    }
    out
}

pub fn neg(base: &Ring, a: &BivarMap) -> BivarMap {
    a.iter().map(|(k, v)| (*k, base.neg(v))).collect()
}

pub fn sub(base: &Ring, a: &BivarMap, b: &BivarMap) -> BivarMap {
    add(base, a, &neg(base, b))
}

pub fn mul(base: &Ring, a: &BivarMap, b: &BivarMap) -> BivarMap {
    let mut out = BTreeMap::new();
    for ((i1, j1), c1) in a {
        for ((i2, j2), c2) in b {
            let key = (i1 + i2, j1 + j2);
            let prod = base.mul(c1, c2);
            match out.remove(&key) {
                Some(cur) => {
                    let s = base.add(&cur, &prod);
                    if !base.is_zero(&s) {
                        out.insert(key, s);
                    }
                }
                None => {
                    if !base.is_zero(&prod) {
                        out.insert(key, prod);
                    }
                }
            }
        }
    }
    out
}

pub fn scale(base: &Ring, a: &BivarMap, c: &Elem) -> BivarMap {
    if base.is_zero(c) {
        return zero();
    }
    a.iter()
        .filter_map(|(k, v)| {
            let p = base.mul(v, c);
            if base.is_zero(&p) {
                None
            } else {
                Some((*k, p))
            }
        })
        .collect()
}

/// Lex-leading term: the largest (i, j) key. Lex order is multiplicative, so
/// leading terms multiply — which is what makes exact division below correct.
pub fn leading(a: &BivarMap) -> Option<((u32, u32), &Elem)> {
    a.iter().next_back().map(|(k, v)| (*k, v))
}

/// Exact division a / b over a field base: Some(q) iff a = q·b exactly.
///
/// Repeated lex-leading-term reduction. If at any step the leading term of the
/// running remainder is not divisible by the leading term of b, then the
/// remainder (which differs from a by a multiple of b) cannot be a nonzero
/// multiple of b, so the division is not exact.
pub fn exact_div(base: &Ring, a: &BivarMap, b: &BivarMap) -> Option<BivarMap> {
    let ((bi, bj), blc) = leading(b)?; // b must be nonzero
    let blc_inv = base.inv(blc)?;
    let mut rem = a.clone();
    let mut q = zero();
    while let Some(((ri, rj), rlc)) = leading(&rem) {
        if ri < bi || rj < bj {
            return None;
        }
        let key = (ri - bi, rj - bj);
        let c = base.mul(rlc, &blc_inv);
        let term = monomial(base, key.0, key.1, c);
        q = add(base, &q, &term);
        rem = sub(base, &rem, &mul(base, &term, b));
    }
    Some(q)
}

/// True iff every non-constant monomial is divisible by x (the defining
/// condition of the monomial subring k + x·k[x,y]).
pub fn in_monomial_subring(a: &BivarMap) -> bool {
    a.keys().all(|&(i, j)| (i, j) == (0, 0) || i >= 1)
}

/// True iff no monomial involves y (the polynomial lies in k[x]).
pub fn is_y_free(a: &BivarMap) -> bool {
    a.keys().all(|&(_, j)| j == 0)
}

/// Render ascending by (x-degree, y-degree), e.g. `1+x+x*y^2`.
pub fn render(base: &Ring, a: &BivarMap) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for (&(i, j), c) in a {
        let mono = match (i, j) {
            (0, 0) => String::new(),
            (1, 0) => "x".to_string(),
            (_, 0) => alloc::format!("x^{i}"),
            (0, 1) => "y".to_string(),
            (0, _) => alloc::format!("y^{j}"),
            (1, 1) => "x*y".to_string(),
            (1, _) => alloc::format!("x*y^{j}"),
            (_, 1) => alloc::format!("x^{i}*y"),
            (_, _) => alloc::format!("x^{i}*y^{j}"),
        };
        let clit = base.render_elem(c);
        let part = if mono.is_empty() {
            clit
        } else if clit == "1" {
            mono
        } else if base.render_needs_parens(c) {
            alloc::format!("({clit})*{mono}")
        } else {
            alloc::format!("{clit}*{mono}")
        };
        parts.push(part);
    }
    parts.join("+")
}
