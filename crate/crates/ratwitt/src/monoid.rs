//! The reduced monoid algebra of (A, ·): integer combinations of nonzero
//! ring elements where the class of (0) is identified with 0, together with
//! the homomorphism ω sending Σ n_a (a) to ∏ (1 − aT)^{n_a} inside the
//! rational Witt vectors. ω is injective exactly over domains; nilpotents
//! and zero-divisor pairs produce certified kernel elements, and over finite
//! fields every rational Witt vector acquires a preimage after passing to
//! the splitting field of its presentation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratwitt::RatWitt;
use crate::ring::{Elem, Ring};

/// Finitely supported ℤ-combination of nonzero ring elements, kept in
/// canonical order by element literal.
#[derive(Debug, Clone)]
pub struct FormalSum {
    ring: Ring,
    terms: BTreeMap<String, (Elem, i64)>,
}

impl FormalSum {
    pub fn zero(ring: Ring) -> FormalSum {
        FormalSum { ring, terms: BTreeMap::new() }
    }

    /// The generator (a); the class of (0) is the zero sum.
    pub fn generator(ring: Ring, a: &Elem) -> FormalSum {
        let mut s = FormalSum::zero(ring);
        s.insert(a.clone(), 1);
        s
    }

    pub fn from_terms(ring: Ring, terms: &[(Elem, i64)]) -> FormalSum {
        let mut s = FormalSum::zero(ring);
        for (a, n) in terms {
            s.insert(a.clone(), *n);
        }
        s
    }

    fn insert(&mut self, a: Elem, n: i64) {
        if n == 0 || self.ring.is_zero(&a) {
            return;
        }
        let key = self.ring.render_elem(&a);
        let slot = self.terms.entry(key.clone()).or_insert((a, 0));
        slot.1 += n;
        if slot.1 == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Elem, i64)> {
        self.terms.values().map(|(a, n)| (a, *n))
    }

    pub fn eq(&self, other: &FormalSum) -> bool {
        self.ring == other.ring
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(other.terms.iter())
                .all(|((k1, (_, n1)), (k2, (_, n2)))| k1 == k2 && n1 == n2)
    }

    pub fn add(&self, other: &FormalSum) -> Result<FormalSum> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut s = self.clone();
        for (a, n) in other.terms() {
            s.insert(a.clone(), n);
        }
        Ok(s)
    }

    pub fn neg(&self) -> FormalSum {
        self.scale(-1)
    }

    pub fn sub(&self, other: &FormalSum) -> Result<FormalSum> {
        self.add(&other.neg())
    }

    pub fn scale(&self, n: i64) -> FormalSum {
        let mut s = FormalSum::zero(self.ring.clone());
        for (a, m) in self.terms() {
            s.insert(a.clone(), m * n);
        }
        s
    }

    /// Bilinear extension of (a)·(b) = (ab); products landing on 0 vanish.
    pub fn mul(&self, other: &FormalSum) -> Result<FormalSum> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut s = FormalSum::zero(self.ring.clone());
        for (a, n) in self.terms() {
            for (b, m) in other.terms() {
                s.insert(self.ring.mul(a, b), n * m);
            }
        }
        Ok(s)
    }

    /// Push the support through a map of ring elements (e.g. a Frobenius),
    /// re-normalizing collisions.
    pub fn map_support<F: Fn(&Elem) -> Elem>(&self, f: F) -> FormalSum {
        let mut s = FormalSum::zero(self.ring.clone());
        for (a, n) in self.terms() {
            s.insert(f(a), n);
        }
        s
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (key, (_, n))) in self.terms.iter().enumerate() {
            if i == 0 {
                if *n < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if *n < 0 { " - " } else { " + " });
            }
            let mag = n.unsigned_abs();
            if mag != 1 {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&format!("({key})"));
        }
        out
    }
}

/// ω: Σ n_a (a) ↦ ∏ (1 − aT)^{n_a}, negative exponents going to the
/// denominator. Over rings with zero divisors the result stays in the given
/// presentation (no normal form exists there).
pub fn omega(u: &FormalSum) -> Result<RatWitt> {
    let ring = u.ring().clone();
    let mut p = Poly::one(ring.clone());
    let mut q = Poly::one(ring.clone());
    for (a, n) in u.terms() {
        let lin = Poly::new(ring.clone(), vec![ring.one(), ring.neg(a)]);
        let target = if n > 0 { &mut p } else { &mut q };
        for _ in 0..n.unsigned_abs() {
            *target = target.mul(&lin);
        }
    }
    RatWitt::new(ring, p, q)
}

/// Certified non-zero elements of the kernel of ω, built from the ring's
/// nilpotent / zero-divisor certificates; a domain yields none. Every
/// returned sum is re-verified: non-zero as a formal sum, Witt zero under ω.
pub fn kernel_witnesses(ring: &Ring) -> Vec<FormalSum> {
    let mut out = Vec::new();
    if let Some((eps, _)) = ring.nilpotent_certificate() {
        let chr = ring.characteristic();
        let u = if let Ok(p) = i64::try_from(&chr) {
            if p > 0 {
                // (1 − εT)^p = 1 in characteristic p when ε² = 0
                FormalSum::generator(ring.clone(), &eps).scale(p)
            } else {
                // characteristic 0: 2(ε) − (2ε) squares the same linear factor
                let two_eps = ring.add(&eps, &eps);
                FormalSum::from_terms(ring.clone(), &[(eps.clone(), 2), (two_eps, -1)])
            }
        } else {
            FormalSum::zero(ring.clone())
        };
        push_verified(&mut out, u);
    }
    if let Some((a, b)) = ring.zero_divisor_certificate() {
        // (1 − aT)(1 − bT) = 1 − (a+b)T exactly because ab = 0
        let u = FormalSum::from_terms(
            ring.clone(),
            &[(ring.add(&a, &b), 1), (a.clone(), -1), (b.clone(), -1)],
        );
        push_verified(&mut out, u);
    }
    out
}

fn push_verified(out: &mut Vec<FormalSum>, u: FormalSum) {
    if u.is_zero() {
        return;
    }
    if let Ok(w) = omega(&u) {
        if w.is_zero() {
            out.push(u);
        }
    }
}

/// Field embedding GF(p^m) → GF(p^{m·k}) sending the source generator to a
/// root of the source modulus, found by scanning the (small) target field.
/// Returns the image of each source element under coefficient-wise
/// evaluation at that root.
fn gf_embedding(src: &Ring, dst: &Ring) -> Result<impl Fn(&Elem) -> Elem> {
    let sp = src.gf_params().ok_or_else(|| Error::BadRing("finite field required".into()))?;
    let root = if sp.k() == 1 {
        dst.zero()
    } else {
        let modulus: Vec<Elem> =
            sp.modulus().iter().map(|&c| dst.from_i64(c as i64)).collect();
        let elems = dst
            .enumerate()
            .ok_or_else(|| Error::BadRing("target field too large to scan".into()))?;
        elems
            .into_iter()
            .find(|r| {
                let mut acc = dst.zero();
                for c in modulus.iter().rev() {
                    acc = dst.add(&dst.mul(&acc, r), c);
                }
                dst.is_zero(&acc)
            })
            .ok_or_else(|| Error::BadRing("source modulus has no root in target".into()))?
    };
    let dst = dst.clone();
    Ok(move |a: &Elem| {
        let Elem::Gf(coeffs) = a else { unreachable!("finite-field element") };
        let mut acc = dst.zero();
        for &c in coeffs.iter().rev() {
            acc = dst.add(&dst.mul(&acc, &root), &dst.from_i64(c as i64));
        }
        acc
    })
}

/// All roots with multiplicity of a monic polynomial given by ascending
/// coefficients, provided it splits into linear factors; None otherwise.
fn linear_roots(ring: &Ring, mut f: Vec<Elem>) -> Option<Vec<Elem>> {
    let elems = ring.enumerate()?;
    let mut roots = Vec::new();
    'deflate: while f.len() > 1 {
        for r in &elems {
            let mut acc = ring.zero();
            for c in f.iter().rev() {
                acc = ring.add(&ring.mul(&acc, r), c);
            }
            if ring.is_zero(&acc) {
                // synthetic division by (Z − r)
                let mut q = vec![ring.zero(); f.len() - 1];
                let mut carry = ring.zero();
                for i in (0..f.len() - 1).rev() {
                    carry = ring.add(&f[i + 1], &ring.mul(&carry, r));
                    q[i] = carry.clone();
                }
                f = q;
                roots.push(r.clone());
                continue 'deflate;
            }
        }
        return None;
    }
    Some(roots)
}

/// Minimal-extension preimage of a rational Witt vector over GF(q): find the
/// least k such that numerator and denominator split over GF(q^k), and return
/// Σ(α_i) − Σ(β_j) over the inverse roots there, so that ω of the result is
/// the base-changed input. Extension degrees are limited by the shipped
/// modulus table.
pub fn split_preimage(f: &RatWitt) -> Result<FormalSum> {
    let ring = f.ring().clone();
    let params = ring.gf_params().ok_or_else(|| Error::BadRing("finite field required".into()))?;
    let q = params.order();
    for k in 1..=8u32 {
        let Some(qk) = q.checked_pow(k) else { break };
        let Ok(ext) = Ring::gf(qk) else { break };
        let embed = gf_embedding(&ring, &ext)?;
        let (p, qd) = f.presentation();
        let pe = p.map_coeffs(&ext, |c| Ok(embed(c)))?;
        let qe = qd.map_coeffs(&ext, |c| Ok(embed(c)))?;
        let pz = reversed_coeffs(&pe);
        let qz = reversed_coeffs(&qe);
        let (Some(pr), Some(qr)) = (linear_roots(&ext, pz), linear_roots(&ext, qz)) else {
            continue;
        };
        let mut u = FormalSum::zero(ext.clone());
        for a in pr {
            u.insert(a, 1);
        }
        for b in qr {
            u.insert(b, -1);
        }
        let back = omega(&u)?;
        let lifted = RatWitt::new(ext, pe, qe)?;
        assert!(back.eq(&lifted), "preimage must map back onto the input");
        return Ok(u);
    }
    Err(Error::BadRing("no shipped extension splits the presentation".into()))
}

fn reversed_coeffs(p: &Poly) -> Vec<Elem> {
    // 1 + c₁Z + … + c_dZ^d reversed to the monic Z^d + c₁Z^{d−1} + … + c_d
    let d = p.deg().unwrap_or(0);
    (0..=d).rev().map(|i| p.coeff(i)).collect()
}
