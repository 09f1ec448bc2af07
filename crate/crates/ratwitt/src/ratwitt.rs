//! Rational Witt vectors: power series that are honest rational functions
//! P/Q with P(0) = Q(0) = 1, kept as exact fractions.
//!
//! Witt addition of such fractions is multiplication of rational functions;
//! negation swaps numerator and denominator. The product ⊙ and Frobenius have
//! no closed fraction formula, so they expand to a truncated series, act
//! there, and reconstruct a fraction from finitely many coefficients — the
//! degree bound of the result is known a priori, finitely many terms pin the
//! fraction down exactly, and the result is re-expanded and compared as a
//! built-in self-check.
//!
//! Every value carries a degree bound r = max(1 + deg P, deg Q): the series
//! determines the fraction once 2r coefficients (counting the leading 1) are
//! known, which is what makes the expand–reconstruct round trip exact.
//!
//! Canonical form: over a field, gcd-reduced with constant terms 1. Over a
//! domain whose reduced forms are certified to clear back into it (ℤ, fields,
//! polynomial rings over fields), the cleared reduced form is stored. Over
//! other domains — the monomial subring k + x·k[x,y] is the standing example —
//! the original presentation is kept and the reduced form over the fraction
//! field is carried alongside, because clearing is exactly what fails there.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hankel;
use crate::poly::Poly;
use crate::ring::{self, Elem, Ring};
use crate::witt::WittSeries;

#[derive(Debug, Clone)]
pub struct RatWitt {
    ring: Ring,
    /// Presentation over the base ring; constant terms 1.
    p: Poly,
    q: Poly,
    /// Reduced form over the fraction field, kept only when reduction cannot
    /// be cleared back into the base ring (non-strong-Fatou domains).
    reduced_k: Option<(Poly, Poly)>,
}

fn poly_embed(sub: &Ring, sup: &Ring, p: &Poly) -> Result<Poly> {
    p.map_coeffs(sup, |c| ring::embed(sub, sup, c))
}

fn poly_retract(sub: &Ring, sup: &Ring, p: &Poly) -> Option<Poly> {
    p.map_coeffs(sub, |c| ring::retract(sub, sup, c).ok_or(Error::RingMismatch))
        .ok()
}

/// Gcd-reduce a fraction of polynomials over a field and rescale so both
/// constant terms are 1 again (they stay equal under division by the gcd).
fn reduce_over_field(k: &Ring, p: Poly, q: Poly) -> (Poly, Poly) {
    let g = p.gcd_field(&q);
    let (mut p, mut q) = if g.deg() == Some(0) {
        (p, q)
    } else {
        (
            p.exact_div(&g).expect("gcd divides numerator"),
            q.exact_div(&g).expect("gcd divides denominator"),
        )
    };
    let c = p.coeff(0);
    if !k.is_one(&c) {
        let ci = k.inv(&c).expect("constant term of a unit fraction part");
        p = p.scale(&ci);
        q = q.scale(&ci);
    }
    debug_assert!(k.is_one(&q.coeff(0)));
    (p, q)
}

impl RatWitt {
    /// Build from a presentation P/Q over the ring; both constant terms must
    /// be 1. Over domains the value is brought to canonical form.
    pub fn new(ring: Ring, p: Poly, q: Poly) -> Result<RatWitt> {
        if p.is_zero() || q.is_zero() {
            return Err(Error::Domain("zero polynomial in a Witt fraction".into()));
        }
        if !ring.is_one(&p.coeff(0)) || !ring.is_one(&q.coeff(0)) {
            return Err(Error::Domain("constant terms of P and Q must be 1".into()));
        }
        if ring.is_field() {
            let (p, q) = reduce_over_field(&ring, p, q);
            return Ok(RatWitt { ring, p, q, reduced_k: None });
        }
        if !ring.is_domain() {
            return Ok(RatWitt { ring, p, q, reduced_k: None });
        }
        let k = ring.fraction_field()?;
        let pk = poly_embed(&ring, &k, &p)?;
        let qk = poly_embed(&ring, &k, &q)?;
        let (pk, qk) = reduce_over_field(&k, pk, qk);
        if ring.is_strong_fatou() {
            let pa = poly_retract(&ring, &k, &pk).ok_or_else(|| {
                Error::Domain("reduced numerator does not clear back into the ring".into())
            })?;
            let qa = poly_retract(&ring, &k, &qk).ok_or_else(|| {
                Error::Domain("reduced denominator does not clear back into the ring".into())
            })?;
            Ok(RatWitt { ring, p: pa, q: qa, reduced_k: None })
        } else {
            Ok(RatWitt { ring, p, q, reduced_k: Some((pk, qk)) })
        }
    }

    /// Witt zero: the constant series 1.
    pub fn zero(ring: Ring) -> RatWitt {
        let one = Poly::one(ring.clone());
        RatWitt { ring, p: one.clone(), q: one, reduced_k: None }
    }

    /// Witt unit: 1 − T.
    pub fn one(ring: Ring) -> Result<RatWitt> {
        RatWitt::teichmueller(ring.clone(), &ring.one())
    }

    /// Teichmüller representative [a] = (1 − aT)/1.
    pub fn teichmueller(ring: Ring, a: &Elem) -> Result<RatWitt> {
        let p = Poly::new(ring.clone(), alloc::vec![ring.one(), ring.neg(a)]);
        RatWitt::new(ring.clone(), p, Poly::one(ring))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Presentation over the base ring (canonical over strong-Fatou domains).
    pub fn presentation(&self) -> (&Poly, &Poly) {
        (&self.p, &self.q)
    }

    /// Reduced form over the fraction field when it had to be kept separate.
    pub fn reduced_over_fraction_field(&self) -> Option<(&Poly, &Poly)> {
        self.reduced_k.as_ref().map(|(p, q)| (p, q))
    }

    fn sharpest(&self) -> (&Poly, &Poly) {
        match &self.reduced_k {
            Some((p, q)) => (p, q),
            None => (&self.p, &self.q),
        }
    }

    /// Degree bound r = max(1 + deg P, deg Q) of the sharpest known form; the
    /// series of f is determined by its first 2r coefficients.
    pub fn bound(&self) -> usize {
        let (p, q) = self.sharpest();
        let dp = p.deg().unwrap_or(0);
        let dq = q.deg().unwrap_or(0);
        (1 + dp).max(dq)
    }

    /// Equality by cross-multiplication P₁Q₂ = P₂Q₁ over the base ring.
    pub fn eq(&self, other: &RatWitt) -> bool {
        self.ring == other.ring && self.p.mul(&other.q).eq(&other.p.mul(&self.q))
    }

    pub fn is_zero(&self) -> bool {
        self.p.eq(&self.q)
    }

    fn check_ring(&self, other: &RatWitt) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn require_domain(&self) -> Result<()> {
        if self.ring.is_domain() {
            Ok(())
        } else {
            Err(Error::NotADomain)
        }
    }

    /// Witt sum: (P₁P₂)/(Q₁Q₂), re-canonicalized. Bound ≤ n + m.
    pub fn rw_add(&self, other: &RatWitt) -> Result<RatWitt> {
        self.check_ring(other)?;
        RatWitt::new(self.ring.clone(), self.p.mul(&other.p), self.q.mul(&other.q))
    }

    /// Witt negation: Q/P. Bound ≤ n + 1.
    pub fn rw_neg(&self) -> RatWitt {
        RatWitt::new(self.ring.clone(), self.q.clone(), self.p.clone())
            .expect("swapping a valid fraction stays valid")
    }

    pub fn rw_sub(&self, other: &RatWitt) -> Result<RatWitt> {
        self.rw_add(&other.rw_neg())
    }

    /// [b] ⊙ f = f(bT), exact on the presentation.
    pub fn scale_teich(&self, b: &Elem) -> Result<RatWitt> {
        RatWitt::new(
            self.ring.clone(),
            self.p.subst_scale(b),
            self.q.subst_scale(b),
        )
    }

    /// Witt product ⊙ over a domain: expand to a series long enough to pin
    /// down the result, multiply there, reconstruct, verify by re-expansion.
    ///
    /// Over the algebraic closure the roots of the product pair up with the
    /// products of roots, so with presentation degrees (p₁,q₁) and (p₂,q₂)
    /// the result has numerator degree ≤ p₁p₂+q₁q₂ and denominator degree
    /// ≤ p₁q₂+q₁p₂. Note ranks do not simply add: two numerator-only
    /// fractions of rank 4 can multiply to rank 10.
    pub fn rw_mul(&self, other: &RatWitt) -> Result<RatWitt> {
        self.check_ring(other)?;
        self.require_domain()?;
        let (p1, q1) = (self.p.deg().unwrap_or(0), self.q.deg().unwrap_or(0));
        let (p2, q2) = (other.p.deg().unwrap_or(0), other.q.deg().unwrap_or(0));
        let r = (1 + p1 * p2 + q1 * q2).max(p1 * q2 + q1 * p2);
        let wide = 2 * r + 2;
        let sf = self.to_series(wide);
        let sg = other.to_series(wide);
        let prod = sf.witt_mul(&sg)?;
        let res = RatWitt::reconstruct_over(&self.ring, &coeff_list(&prod, 2 * r + 1), r)?;
        let back = res.to_series(wide);
        if !back.eq(&prod) {
            return Err(Error::ReconstructionInconsistency(
                "product re-expansion differs from its series".into(),
            ));
        }
        Ok(res)
    }

    /// Frobenius F_N over a domain; bound ≤ bound(f).
    pub fn rw_frobenius(&self, n: usize) -> Result<RatWitt> {
        assert!(n >= 1, "Frobenius index must be at least 1");
        self.require_domain()?;
        if n == 1 {
            return Ok(self.clone());
        }
        let r = self.bound();
        let wide = 2 * r + 2;
        let sf = self.to_series(n * wide);
        let dec = sf.frobenius(n)?;
        debug_assert_eq!(dec.precision(), wide);
        let res = RatWitt::reconstruct_over(&self.ring, &coeff_list(&dec, 2 * r + 1), r)?;
        let back = res.to_series(wide);
        if !back.eq(&dec) {
            return Err(Error::ReconstructionInconsistency(
                "Frobenius re-expansion differs from its series".into(),
            ));
        }
        Ok(res)
    }

    /// Verschiebung V_N: T ↦ T^N in both parts, exact over any ring;
    /// bound ≤ N·bound(f).
    pub fn rw_verschiebung(&self, n: usize) -> RatWitt {
        assert!(n >= 1, "Verschiebung index must be at least 1");
        RatWitt::new(self.ring.clone(), self.p.subst_pow(n), self.q.subst_pow(n))
            .expect("substitution preserves validity")
    }

    /// Truncated series expansion with coefficients a_1..a_prec.
    pub fn to_series(&self, prec: usize) -> WittSeries {
        let coeffs = self
            .p
            .series_div(&self.q, prec + 1)
            .expect("denominator has constant term 1");
        debug_assert!(self.ring.is_one(&coeffs[0]));
        WittSeries::new(self.ring.clone(), coeffs[1..].to_vec())
    }

    /// Reconstruct from series coefficients (the list starts at a_0 = 1).
    /// Over a non-field domain, reconstruction runs over the fraction field
    /// and the reduced result must clear back into the ring.
    pub fn reconstruct_over(ring: &Ring, list: &[Elem], bound: usize) -> Result<RatWitt> {
        if ring.is_field() {
            return hankel::kronecker_reconstruct(ring, list, bound);
        }
        if !ring.is_domain() {
            return Err(Error::NotADomain);
        }
        let k = ring.fraction_field()?;
        let lifted: Result<Vec<Elem>> = list.iter().map(|c| ring::embed(ring, &k, c)).collect();
        let fk = hankel::kronecker_reconstruct(&k, &lifted?, bound)?;
        let (fp, fq) = fk.presentation();
        let pa = poly_retract(ring, &k, fp).ok_or_else(|| {
            Error::Domain("reconstructed numerator does not clear back into the ring".into())
        })?;
        let qa = poly_retract(ring, &k, fq).ok_or_else(|| {
            Error::Domain("reconstructed denominator does not clear back into the ring".into())
        })?;
        RatWitt::new(ring.clone(), pa, qa)
    }

    /// View an integer fraction inside the localization ℤ[1/m] ⊆ ℚ.
    pub fn localize(&self) -> Result<RatWitt> {
        if !matches!(self.ring.kind(), crate::ring::RingKind::Integers) {
            return Err(Error::BadRing("localization is shipped for the integers".into()));
        }
        let qq = Ring::rationals();
        RatWitt::new(
            qq.clone(),
            poly_embed(&self.ring, &qq, &self.p)?,
            poly_embed(&self.ring, &qq, &self.q)?,
        )
    }

    /// Inverse-image search along W_rat(ℤ)_[m] → W_rat(ℤ[1/m]): given f̃ over
    /// ℚ whose coefficients have m-power denominators, return (f, k) with
    /// f = f̃(m^k T) integral, so that the image of f equals [m^k] ⊙ f̃.
    pub fn localize_preimage(f_tilde: &RatWitt, m: i64) -> Result<(RatWitt, u32)> {
        assert!(m.abs() >= 2, "localization at a non-unit");
        if !matches!(f_tilde.ring.kind(), crate::ring::RingKind::Rationals) {
            return Err(Error::BadRing("localized values live over the rationals here".into()));
        }
        let mb = BigInt::from(m);
        let mut k = 0u32;
        for poly in [&f_tilde.p, &f_tilde.q] {
            for (i, c) in poly.coeffs().iter().enumerate() {
                if i == 0 {
                    continue;
                }
                let Elem::Rat(x) = c else { unreachable!("rational coefficients") };
                let e = m_power_exponent(x.denom(), &mb).ok_or_else(|| {
                    Error::Domain(
                        "coefficient denominator is not a power of the localized element".into(),
                    )
                })?;
                // m^(k·i) must absorb denominator m^e: k ≥ ⌈e/i⌉.
                let need = (e + (i as u32) - 1) / (i as u32);
                k = k.max(need);
            }
        }
        let qq = f_tilde.ring.clone();
        let scale = qq.pow(&qq.from_bigint(&mb), k as u64);
        let scaled = f_tilde.scale_teich(&scale)?;
        let zz = Ring::integers();
        let p = poly_retract(&zz, &qq, &scaled.p)
            .expect("scaling by m^k clears every denominator");
        let q = poly_retract(&zz, &qq, &scaled.q)
            .expect("scaling by m^k clears every denominator");
        Ok((RatWitt::new(zz, p, q)?, k))
    }

    /// `P/Q` text: `(1-T)/(1-2*T)`, denominator 1 omitted, parentheses only
    /// around multi-term parts.
    pub fn render(&self) -> String {
        let ptxt = self.p.render("T");
        if self.q.is_one() {
            return ptxt;
        }
        let qtxt = self.q.render("T");
        let wrap = |s: String| {
            if s.contains('+') || (s.len() > 1 && s[1..].contains('-')) {
                alloc::format!("({s})")
            } else {
                s
            }
        };
        alloc::format!("{}/{}", wrap(ptxt), wrap(qtxt))
    }
}

/// Smallest e with den | m^e, if the denominator divides a power of m.
fn m_power_exponent(den: &BigInt, m: &BigInt) -> Option<u32> {
    let den = den.abs();
    let mut pow = BigInt::from(1);
    for e in 0..=128u32 {
        if (&pow % &den).is_zero() {
            return Some(e);
        }
        pow *= m;
    }
    None
}

/// Series coefficients as the flat list (a_0 = 1, a_1, …) of the given length.
pub(crate) fn coeff_list(w: &WittSeries, len: usize) -> Vec<Elem> {
    assert!(len >= 1 && len - 1 <= w.precision());
    let mut out = Vec::with_capacity(len);
    out.push(w.ring().one());
    out.extend(w.coeffs()[..len - 1].iter().cloned());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz() -> Ring {
        Ring::integers()
    }

    fn rw(ring: &Ring, p: &[i64], q: &[i64]) -> RatWitt {
        RatWitt::new(
            ring.clone(),
            Poly::from_i64(ring.clone(), p),
            Poly::from_i64(ring.clone(), q),
        )
        .unwrap()
    }

    #[test]
    fn addition_multiplies_fractions() {
        let r = zz();
        let f = RatWitt::teichmueller(r.clone(), &r.from_i64(2)).unwrap();
        let g = RatWitt::teichmueller(r.clone(), &r.from_i64(3)).unwrap();
        let s = f.rw_add(&g).unwrap();
        assert!(s.eq(&rw(&r, &[1, -5, 6], &[1])));
        // f + 0 = f
        assert!(f.rw_add(&RatWitt::zero(r.clone())).unwrap().eq(&f));
    }

    #[test]
    fn addition_cancels_fractions() {
        // (1−T)/(1−2T) + (1−2T) = 1−T
        let r = zz();
        let f = rw(&r, &[1, -1], &[1, -2]);
        let g = rw(&r, &[1, -2], &[1]);
        let s = f.rw_add(&g).unwrap();
        assert!(s.eq(&rw(&r, &[1, -1], &[1])));
        assert_eq!(s.render(), "1-T");
    }

    #[test]
    fn negation_swaps_and_bounds() {
        let r = zz();
        let f = RatWitt::teichmueller(r.clone(), &r.from_i64(5)).unwrap();
        assert_eq!(f.bound(), 2);
        let n = f.rw_neg();
        assert_eq!(n.bound(), 1);
        assert_eq!(n.render(), "1/(1-5*T)");
        assert!(f.rw_add(&n).unwrap().is_zero());
        assert!(n.rw_neg().eq(&f));
    }

    #[test]
    fn series_expansion_of_pinned_fraction() {
        let r = zz();
        let f = rw(&r, &[1, -1], &[1, -2]);
        let s = f.to_series(3);
        let want: Vec<_> = [1i64, 2, 4].iter().map(|&n| r.from_i64(n)).collect();
        for (a, b) in s.coeffs().iter().zip(&want) {
            assert!(r.eq(a, b));
        }
    }

    #[test]
    fn multiplication_examples() {
        let r = zz();
        // [2] ⊙ f = f(2T)
        let f = rw(&r, &[1, -1], &[1, -3]);
        let two = RatWitt::teichmueller(r.clone(), &r.from_i64(2)).unwrap();
        let prod = two.rw_mul(&f).unwrap();
        assert!(prod.eq(&rw(&r, &[1, -2], &[1, -6])));
        assert!(prod.eq(&f.scale_teich(&r.from_i64(2)).unwrap()));
        // f ⊙ (1−T) = f
        let unit = RatWitt::one(r.clone()).unwrap();
        assert!(f.rw_mul(&unit).unwrap().eq(&f));
        // split ⊙ split pairs the roots
        let fg = rw(&r, &[1, -5, 6], &[1]); // (1−2T)(1−3T)
        let h = RatWitt::teichmueller(r.clone(), &r.from_i64(5)).unwrap();
        let out = fg.rw_mul(&h).unwrap();
        let want = rw(&r, &[1, -10], &[1]).rw_add(&rw(&r, &[1, -15], &[1])).unwrap();
        assert!(out.eq(&want));
    }

    #[test]
    fn frobenius_examples() {
        let r = zz();
        let f = RatWitt::teichmueller(r.clone(), &r.from_i64(3)).unwrap();
        let f2 = f.rw_frobenius(2).unwrap();
        assert!(f2.eq(&rw(&r, &[1, -9], &[1])));
        // root squaring on a split quadratic
        let g = rw(&r, &[1, -5, 6], &[1]);
        let g2 = g.rw_frobenius(2).unwrap();
        assert!(g2.eq(&rw(&r, &[1, -13, 36], &[1])));
        assert!(g2.bound() <= g.bound());
    }

    #[test]
    fn verschiebung_substitutes() {
        let r = zz();
        let f = rw(&r, &[1, -1], &[1, -2]);
        let v = f.rw_verschiebung(2);
        assert!(v.eq(&rw(&r, &[1, 0, -1], &[1, 0, -2])));
        assert!(v.bound() <= 2 * f.bound());
    }

    #[test]
    fn reconstruct_pinned_list() {
        let r = zz();
        let list: Vec<Elem> = [1i64, 1, 2, 4].iter().map(|&n| r.from_i64(n)).collect();
        let f = RatWitt::reconstruct_over(&r, &list, 2).unwrap();
        assert_eq!(f.render(), "(1-T)/(1-2*T)");
    }

    #[test]
    fn reconstruct_fibonacci() {
        let q = Ring::rationals();
        let list: Vec<Elem> = [1i64, 1, 2, 3, 5, 8]
            .iter()
            .map(|&n| q.from_i64(n))
            .collect();
        let f = RatWitt::reconstruct_over(&q, &list, 3).unwrap();
        assert!(f.eq(&rw(&q, &[1], &[1, -1, -1])));
    }

    #[test]
    fn localization_clears_denominators() {
        let q = Ring::rationals();
        let half3 = Elem::Rat(num_rational::BigRational::new(BigInt::from(3), BigInt::from(2)));
        let p = Poly::new(q.clone(), alloc::vec![q.one(), q.neg(&half3)]);
        let ft = RatWitt::new(q.clone(), p, Poly::one(q.clone())).unwrap();
        let (f, k) = RatWitt::localize_preimage(&ft, 2).unwrap();
        assert_eq!(k, 1);
        assert!(f.eq(&rw(&zz(), &[1, -3], &[1])));
        // the stated relation: image of f = [m^k] ⊙ f̃
        let img = f.localize().unwrap();
        let scaled = ft.scale_teich(&q.from_i64(2)).unwrap();
        assert!(img.eq(&scaled));
        // integral input round-trips with k = 0
        let g = rw(&zz(), &[1, 4, 7], &[1, -2]);
        let (g2, k2) = RatWitt::localize_preimage(&g.localize().unwrap(), 2).unwrap();
        assert_eq!(k2, 0);
        assert!(g2.eq(&g));
    }

    #[test]
    fn render_forms() {
        let r = zz();
        assert_eq!(rw(&r, &[1, -6], &[1]).render(), "1-6*T");
        assert_eq!(rw(&r, &[1, -1], &[1, -2]).render(), "(1-T)/(1-2*T)");
        assert_eq!(RatWitt::zero(r).render(), "1");
    }
}
