//! Dense univariate polynomials over a runtime ring.
//!
//! [`Poly`] pairs a coefficient [`Ring`] with ascending coefficients (no
//! trailing zeros). The [`raw`] helpers operate on bare coefficient slices so
//! the ring module can dispatch `Elem::Poly` arithmetic through the same code
//! without constructing wrapper values.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::ring::{Elem, Ring};

/// Coefficient-slice algorithms shared between [`Poly`] and `Elem::Poly`.
pub mod raw {
    use super::*;

    pub fn trim(base: &Ring, mut v: Vec<Elem>) -> Vec<Elem> {
        while v.last().map_or(false, |c| base.is_zero(c)) {
            v.pop();
        }
        v
    }

    pub fn add(base: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i);
            let y = b.get(i);
            out.push(match (x, y) {
                (Some(x), Some(y)) => base.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            });
        }
        trim(base, out)
    }

    pub fn neg(base: &Ring, a: &[Elem]) -> Vec<Elem> {
        a.iter().map(|c| base.neg(c)).collect()
    }

    pub fn sub(base: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        add(base, a, &neg(base, b))
    }

    pub fn scale(base: &Ring, a: &[Elem], c: &Elem) -> Vec<Elem> {
        trim(base, a.iter().map(|x| base.mul(x, c)).collect())
    }

    pub fn mul(base: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![base.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = base.add(&out[i + j], &base.mul(x, y));
            }
        }
        trim(base, out)
    }

    pub fn eval(base: &Ring, a: &[Elem], x: &Elem) -> Elem {
        let mut acc = base.zero();
        for c in a.iter().rev() {
            acc = base.add(&base.mul(&acc, x), c);
        }
        acc
    }

    /// Division with remainder; requires an invertible leading coefficient.
    pub fn divrem(base: &Ring, a: &[Elem], b: &[Elem]) -> Result<(Vec<Elem>, Vec<Elem>)> {
        let b = trim(base, b.to_vec());
        if b.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let lb = base
            .inv(b.last().unwrap())
            .ok_or_else(|| Error::Domain("leading coefficient is not invertible".into()))?;
        let db = b.len() - 1;
        let mut r = trim(base, a.to_vec());
        if r.len() <= db {
            return Ok((vec![], r));
        }
        let mut q = vec![base.zero(); r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = base.mul(r.last().unwrap(), &lb);
            for i in 0..=db {
                let t = base.mul(&c, &b[i]);
                r[dr - db + i] = base.sub(&r[dr - db + i], &t);
            }
            q[dr - db] = c;
            r = trim(base, r);
        }
        Ok((trim(base, q), r))
    }

    /// Exact quotient over a domain: Some(q) iff a = q·b. Each step divides
    /// leading coefficients exactly, which succeeds whenever the quotient
    /// exists over the base domain.
    pub fn exact_div(base: &Ring, a: &[Elem], b: &[Elem]) -> Option<Vec<Elem>> {
        let b = trim(base, b.to_vec());
        if b.is_empty() {
            return None;
        }
        let db = b.len() - 1;
        let mut r = trim(base, a.to_vec());
        if r.is_empty() {
            return Some(vec![]);
        }
        if r.len() <= db {
            return None;
        }
        let mut q = vec![base.zero(); r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = base.exact_div(r.last().unwrap(), b.last().unwrap())?;
            for i in 0..=db {
                let t = base.mul(&c, &b[i]);
                r[dr - db + i] = base.sub(&r[dr - db + i], &t);
            }
            q[dr - db] = c;
            r = trim(base, r);
        }
        if r.is_empty() {
            Some(trim(base, q))
        } else {
            None
        }
    }

    /// Monic gcd over a field base; gcd(0, 0) = 0.
    pub fn gcd_field(base: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        assert!(base.is_field(), "polynomial gcd requires a field base");
        let mut r0 = trim(base, a.to_vec());
        let mut r1 = trim(base, b.to_vec());
        while !r1.is_empty() {
            let (_, r) = divrem(base, &r0, &r1).expect("field base");
            r0 = r1;
            r1 = r;
        }
        if let Some(lc) = r0.last() {
            if !base.is_one(lc) {
                let lci = base.inv(lc).expect("field");
                return scale(base, &r0, &lci);
            }
        }
        r0
    }

    /// Compact literal, ascending powers: `1-2*T+T^2`. With `spaced`, signs
    /// get surrounding spaces: `1 - 2*T + T^2`.
    pub fn render(base: &Ring, a: &[Elem], var: &str, spaced: bool) -> String {
        if a.iter().all(|c| base.is_zero(c)) {
            return "0".into();
        }
        let mut s = String::new();
        for (d, c) in a.iter().enumerate() {
            if base.is_zero(c) {
                continue;
            }
            let lit = base.render_elem(c);
            // A literal like `-3` or `-3/2` carries its sign out front; a
            // composite literal keeps parentheses instead.
            let tail_signed = lit.len() > 1 && (lit[1..].contains('+') || lit[1..].contains('-'));
            let (negative, mag) = if lit.starts_with('-') && !tail_signed {
                (true, lit[1..].to_owned())
            } else {
                (false, lit)
            };
            let composite = mag.contains('+') || (mag.len() > 1 && mag[1..].contains('-'));
            if s.is_empty() {
                if negative {
                    s.push('-');
                }
            } else if spaced {
                s.push_str(if negative { " - " } else { " + " });
            } else {
                s.push(if negative { '-' } else { '+' });
            }
            let coeff_txt = if composite {
                alloc::format!("({mag})")
            } else {
                mag
            };
            match d {
                0 => s.push_str(&coeff_txt),
                _ => {
                    if coeff_txt != "1" {
                        // fractions multiplying the variable keep parens:
                        // `(3/2)*T`, never `3/2*T`
                        if coeff_txt.contains('/') && !coeff_txt.starts_with('(') {
                            s.push_str(&alloc::format!("({coeff_txt})"));
                        } else {
                            s.push_str(&coeff_txt);
                        }
                        s.push('*');
                    }
                    s.push_str(var);
                    if d > 1 {
                        s.push_str(&alloc::format!("^{d}"));
                    }
                }
            }
        }
        s
    }
}

/// Polynomial over a runtime coefficient ring.
#[derive(Debug, Clone)]
pub struct Poly {
    ring: Ring,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(ring: Ring, coeffs: Vec<Elem>) -> Poly {
        let coeffs = raw::trim(&ring, coeffs);
        Poly { ring, coeffs }
    }

    pub fn zero(ring: Ring) -> Poly {
        Poly { ring, coeffs: vec![] }
    }

    pub fn one(ring: Ring) -> Poly {
        let c = ring.one();
        Poly { ring, coeffs: vec![c] }
    }

    pub fn constant(ring: Ring, c: Elem) -> Poly {
        Poly::new(ring, vec![c])
    }

    pub fn from_i64(ring: Ring, coeffs: &[i64]) -> Poly {
        let v = coeffs.iter().map(|&n| ring.from_i64(n)).collect();
        Poly::new(ring, v)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Degree, or None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of T^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.ring.is_one(&self.coeffs[0])
    }

    /// Semantic equality (coefficientwise through the ring).
    pub fn eq(&self, other: &Poly) -> bool {
        debug_assert!(self.ring == other.ring);
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| self.ring.eq(a, b))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        Poly {
            ring: self.ring.clone(),
            coeffs: raw::add(&self.ring, &self.coeffs, &other.coeffs),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        Poly {
            ring: self.ring.clone(),
            coeffs: raw::sub(&self.ring, &self.coeffs, &other.coeffs),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            coeffs: raw::neg(&self.ring, &self.coeffs),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        Poly {
            ring: self.ring.clone(),
            coeffs: raw::mul(&self.ring, &self.coeffs, &other.coeffs),
        }
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        Poly {
            ring: self.ring.clone(),
            coeffs: raw::scale(&self.ring, &self.coeffs, c),
        }
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        raw::eval(&self.ring, &self.coeffs, x)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.ring.clone());
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.ring.mul_i64(c, i as i64))
            .collect();
        Poly::new(self.ring.clone(), v)
    }

    pub fn divrem(&self, other: &Poly) -> Result<(Poly, Poly)> {
        let (q, r) = raw::divrem(&self.ring, &self.coeffs, &other.coeffs)?;
        Ok((
            Poly { ring: self.ring.clone(), coeffs: q },
            Poly { ring: self.ring.clone(), coeffs: r },
        ))
    }

    pub fn exact_div(&self, other: &Poly) -> Option<Poly> {
        raw::exact_div(&self.ring, &self.coeffs, &other.coeffs)
            .map(|c| Poly { ring: self.ring.clone(), coeffs: c })
    }

    pub fn gcd_field(&self, other: &Poly) -> Poly {
        Poly {
            ring: self.ring.clone(),
            coeffs: raw::gcd_field(&self.ring, &self.coeffs, &other.coeffs),
        }
    }

    /// T ↦ c·T (coefficient i scaled by c^i).
    pub fn subst_scale(&self, c: &Elem) -> Poly {
        let mut pw = self.ring.one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                pw = self.ring.mul(&pw, c);
            }
            out.push(self.ring.mul(a, &pw));
        }
        Poly::new(self.ring.clone(), out)
    }

    /// T ↦ T^n (exact substitution).
    pub fn subst_pow(&self, n: usize) -> Poly {
        assert!(n >= 1);
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut out = vec![self.ring.zero(); (self.coeffs.len() - 1) * n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * n] = c.clone();
        }
        Poly::new(self.ring.clone(), out)
    }

    /// Reversal T^d·P(1/T) padded to the stated degree d ≥ deg P.
    pub fn reversed(&self, d: usize) -> Poly {
        assert!(d + 1 >= self.coeffs.len(), "reversal degree below actual degree");
        let mut out = vec![self.ring.zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[d - i] = c.clone();
        }
        Poly::new(self.ring.clone(), out)
    }

    /// Coefficientwise transport into another ring; fails if any coefficient
    /// is rejected by the map.
    pub fn map_coeffs<F>(&self, target: &Ring, f: F) -> Result<Poly>
    where
        F: Fn(&Elem) -> Result<Elem>,
    {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(f(c)?);
        }
        Ok(Poly::new(target.clone(), out))
    }

    /// First `n` power-series coefficients of self/other; the divisor must
    /// have an invertible constant term.
    pub fn series_div(&self, other: &Poly, n: usize) -> Result<Vec<Elem>> {
        let r = &self.ring;
        let q0 = other.coeff(0);
        let q0i = r
            .inv(&q0)
            .ok_or_else(|| Error::Domain("series division needs an invertible constant term".into()))?;
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeff(k);
            for j in 1..=k {
                let t = r.mul(&other.coeff(j), &out[k - j]);
                acc = r.sub(&acc, &t);
            }
            out.push(r.mul(&acc, &q0i));
        }
        Ok(out)
    }

    /// Resultant of two non-zero polynomials, as a base-ring element.
    ///
    /// Sign convention, fixed here once and used everywhere: the Sylvester
    /// matrix is laid out with the rows of `self` on top, so
    /// `resultant(T - a, g) = g(a)` and swapping the arguments multiplies
    /// the result by `(-1)^(deg f · deg g)`.  The determinant is evaluated
    /// without ever leaving the base ring (fraction-free elimination over
    /// domains, minor expansion elsewhere), and the operation is
    /// multiplicative in each argument.
    pub fn resultant(&self, other: &Poly) -> Result<Elem> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let (Some(m), Some(n)) = (self.deg(), other.deg()) else {
            return Err(Error::Domain("resultant of the zero polynomial".into()));
        };
        let r = self.ring.clone();
        // n shifted copies of self's coefficient row, then m of other's,
        // both written highest degree first.
        let mat = Mat::from_fn(r.clone(), m + n, m + n, |i, j| {
            let (p, deg, shift) = if i < n { (self, m, i) } else { (other, n, i - n) };
            if j >= shift && j <= shift + deg {
                p.coeff(deg - (j - shift))
            } else {
                r.zero()
            }
        });
        Ok(mat.det())
    }

    pub fn render(&self, var: &str) -> String {
        raw::render(&self.ring, &self.coeffs, var, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz() -> Ring {
        Ring::integers()
    }

    fn qq() -> Ring {
        Ring::rationals()
    }

    #[test]
    fn mul_and_eval_agree() {
        let r = zz();
        let a = Poly::from_i64(r.clone(), &[1, -2]); // 1 - 2T
        let b = Poly::from_i64(r.clone(), &[1, -3]); // 1 - 3T
        let p = a.mul(&b);
        assert_eq!(p.coeffs(), Poly::from_i64(r.clone(), &[1, -5, 6]).coeffs());
        let at = r.from_i64(4);
        assert!(r.eq(&p.eval(&at), &r.mul(&a.eval(&at), &b.eval(&at))));
    }

    #[test]
    fn exact_division_over_integers() {
        let r = zz();
        let a = Poly::from_i64(r.clone(), &[1, -5, 6]);
        let b = Poly::from_i64(r.clone(), &[1, -2]);
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q.coeffs(), Poly::from_i64(r.clone(), &[1, -3]).coeffs());
        assert!(a.exact_div(&Poly::from_i64(r.clone(), &[1, 1])).is_none());
        // quotient exists over Q but not Z
        let c = Poly::from_i64(r.clone(), &[1, 1]);
        let d = Poly::from_i64(r, &[2]);
        assert!(c.exact_div(&d).is_none());
    }

    #[test]
    fn gcd_is_monic_and_divides() {
        let r = qq();
        let a = Poly::from_i64(r.clone(), &[1, -5, 6]); // (1-2T)(1-3T)
        let b = Poly::from_i64(r.clone(), &[1, -2]).mul(&Poly::from_i64(r.clone(), &[1, 1]));
        let g = a.gcd_field(&b);
        // common factor 1 - 2T, monic form T - 1/2
        assert_eq!(g.deg(), Some(1));
        assert!(r.is_one(g.coeffs().last().unwrap()));
        assert!(a.exact_div(&g).is_some());
        assert!(b.exact_div(&g).is_some());
    }

    #[test]
    fn series_division_expands_geometric() {
        let r = qq();
        let one = Poly::one(r.clone());
        let q = Poly::from_i64(r.clone(), &[1, -2]);
        let s = one.series_div(&q, 5).unwrap();
        let want: Vec<_> = [1, 2, 4, 8, 16].iter().map(|&n| r.from_i64(n)).collect();
        assert_eq!(s, want);
    }

    #[test]
    fn substitution_and_reversal() {
        let r = zz();
        let p = Poly::from_i64(r.clone(), &[1, 2, 3]);
        let p2 = p.subst_pow(2);
        assert_eq!(p2.coeffs(), Poly::from_i64(r.clone(), &[1, 0, 2, 0, 3]).coeffs());
        let rev = p.reversed(2);
        assert_eq!(rev.coeffs(), Poly::from_i64(r.clone(), &[3, 2, 1]).coeffs());
        let sc = p.subst_scale(&r.from_i64(2));
        assert_eq!(sc.coeffs(), Poly::from_i64(r, &[1, 4, 12]).coeffs());
    }

    #[test]
    fn render_compact_forms() {
        let r = zz();
        assert_eq!(Poly::from_i64(r.clone(), &[1, -2]).render("T"), "1-2*T");
        assert_eq!(Poly::from_i64(r.clone(), &[1, -1]).render("T"), "1-T");
        assert_eq!(Poly::from_i64(r.clone(), &[0, 0, 1]).render("T"), "T^2");
        assert_eq!(Poly::from_i64(r.clone(), &[1, -5, 6]).render("T"), "1-5*T+6*T^2");
        assert_eq!(
            raw::render(&r, Poly::from_i64(r.clone(), &[1, -5, 6]).coeffs(), "T", true),
            "1 - 5*T + 6*T^2"
        );
    }

    #[test]
    fn resultant_linear_rows_first_convention() {
        let r = zz();
        // resultant(T - a, g) = g(a): the linear factor's root is plugged in.
        let f = Poly::from_i64(r.clone(), &[-2, 1]); // T - 2
        let g = Poly::from_i64(r.clone(), &[-3, 1]); // T - 3
        assert!(r.eq(&f.resultant(&g).unwrap(), &r.from_i64(-1)));
        let h = Poly::from_i64(r.clone(), &[1, 1, 1]); // 1 + T + T^2
        assert!(r.eq(&f.resultant(&h).unwrap(), &r.from_i64(7)));
        // Swapping the arguments costs (-1)^(deg f · deg g).
        assert!(r.eq(&h.resultant(&f).unwrap(), &r.from_i64(7)));
        assert!(r.eq(&g.resultant(&f).unwrap(), &r.from_i64(1)));
    }

    #[test]
    fn resultant_multiplicative_and_degenerate_cases() {
        let r = zz();
        let f = Poly::from_i64(r.clone(), &[1, 2, 1]);
        let g = Poly::from_i64(r.clone(), &[3, -1]);
        let h = Poly::from_i64(r.clone(), &[-1, 0, 2]);
        let lhs = f.resultant(&g.mul(&h)).unwrap();
        let rhs = r.mul(&f.resultant(&g).unwrap(), &f.resultant(&h).unwrap());
        assert!(r.eq(&lhs, &rhs));
        // Constants: Res(c, g) = c^(deg g), and two constants give 1.
        let c = Poly::from_i64(r.clone(), &[5]);
        assert!(r.eq(&c.resultant(&h).unwrap(), &r.from_i64(25)));
        assert!(r.eq(&c.resultant(&c).unwrap(), &r.one()));
        assert!(matches!(
            Poly::zero(r.clone()).resultant(&g),
            Err(Error::Domain(_))
        ));
        // Shared root forces a vanishing resultant.
        let a = Poly::from_i64(r.clone(), &[-1, 1]);
        let b = Poly::from_i64(r.clone(), &[-1, 0, 1]);
        assert!(r.is_zero(&a.resultant(&b).unwrap()));
    }
}
