//! Descent along finite-field extensions K = GF(q) ⊂ L = GF(q^n). The
//! étale algebra L⊗_K L splits as a product of n copies of L, with the j-th
//! factor evaluating a⊗b to a·Frob^j(b); a rational Witt vector over L
//! descends to K exactly when its two base-change images agree in every
//! factor, equivalently when its reduced presentation is Frobenius-fixed.
//! On the monoid-algebra side, descended elements are exactly the
//! Frobenius-fixed formal sums over the splitting field.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::monoid::{self, FormalSum};
use crate::ratwitt::RatWitt;
use crate::ring::{Elem, Ring};

/// The CRT factorization L ⊗_K L ≅ L^n for GF(q) ⊂ GF(q^n), carried as the
/// n evaluation maps a⊗b ↦ a·Frob^j(b). Both tensor structure maps are
/// checked against (id, Frob^j) on every field element at construction.
#[derive(Debug, Clone)]
pub struct TensorSplit {
    base: Ring,
    ext: Ring,
    n: usize,
    q: u64,
}

impl TensorSplit {
    pub fn new(base: Ring, ext: Ring) -> Result<TensorSplit> {
        let bp = base.gf_params().ok_or_else(|| Error::BadRing("finite base field required".into()))?;
        let ep = ext.gf_params().ok_or_else(|| Error::BadRing("finite extension field required".into()))?;
        if bp.p() != ep.p() || ep.k() % bp.k() != 0 {
            return Err(Error::BadRing("extension must contain the base field".into()));
        }
        let n = ep.k() / bp.k();
        let q = bp.order();
        let split = TensorSplit { base, ext, n, q };
        if !split.structure_maps_agree() {
            return Err(Error::BadRing("tensor factorization failed its structure check".into()));
        }
        Ok(split)
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn ext(&self) -> &Ring {
        &self.ext
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Relative Frobenius x ↦ x^{q^j}.
    pub fn frob(&self, j: usize, a: &Elem) -> Elem {
        let mut acc = a.clone();
        for _ in 0..j {
            acc = self.ext.pow(&acc, self.q);
        }
        acc
    }

    /// Evaluation of a ⊗ b in the j-th CRT factor.
    pub fn factor(&self, j: usize, a: &Elem, b: &Elem) -> Elem {
        self.ext.mul(a, &self.frob(j, b))
    }

    /// a ⊗ 1 must evaluate to a and 1 ⊗ b to Frob^j(b) in every factor.
    pub fn structure_maps_agree(&self) -> bool {
        let Some(elems) = self.ext.enumerate() else { return false };
        let one = self.ext.one();
        for j in 0..self.n {
            for a in &elems {
                if !self.ext.eq(&self.factor(j, a, &one), a) {
                    return false;
                }
                if !self.ext.eq(&self.factor(j, &one, a), &self.frob(j, a)) {
                    return false;
                }
            }
        }
        true
    }

    /// Is this coefficient already in the base field? (Fixed by x ↦ x^q.)
    pub fn in_base(&self, c: &Elem) -> bool {
        self.ext.eq(&self.frob(1, c), c)
    }
}

/// Apply Frob^j to every presentation coefficient.
fn frob_image(split: &TensorSplit, f: &RatWitt, j: usize) -> RatWitt {
    let (p, q) = f.presentation();
    let pj = p.map_coeffs(&split.ext, |c| Ok(split.frob(j, c)));
    let qj = q.map_coeffs(&split.ext, |c| Ok(split.frob(j, c)));
    RatWitt::new(split.ext.clone(), pj.unwrap(), qj.unwrap())
        .expect("Frobenius preserves constant terms")
}

/// The equalizer condition of W_rat(K) ⇉ W_rat(L⊗L): the two base-change
/// images of f agree in every CRT factor, i.e. f equals each of its
/// Frobenius twists as a Witt vector.
pub fn equalizer_check(f: &RatWitt, split: &TensorSplit) -> Result<bool> {
    if f.ring() != split.ext() {
        return Err(Error::RingMismatch);
    }
    for j in 0..split.degree() {
        if !f.eq(&frob_image(split, f, j)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Do the reduced numerator and denominator have all coefficients in the
/// base field? By the descent theorem this is equivalent to the equalizer
/// condition; both are computed independently so the equivalence is testable.
pub fn coefficients_in_base(f: &RatWitt, split: &TensorSplit) -> Result<bool> {
    if f.ring() != split.ext() {
        return Err(Error::RingMismatch);
    }
    let (p, q) = f.presentation();
    Ok(p.coeffs().iter().chain(q.coeffs()).all(|c| split.in_base(c)))
}

/// Converse half of the Galois-invariance statement, checked exhaustively:
/// every Frobenius-fixed formal sum over `ext` with support ≤ `max_support`
/// and multiplicities in [−max_mult, max_mult] maps under ω to a Witt
/// vector whose reduced coefficients lie in the base field.
pub fn frobenius_fixed_sums_descend(
    split: &TensorSplit,
    max_support: usize,
    max_mult: i64,
) -> Result<bool> {
    let ext = split.ext().clone();
    let elems: Vec<Elem> = ext
        .enumerate()
        .ok_or_else(|| Error::BadRing("field too large to enumerate".into()))?
        .into_iter()
        .filter(|e| !ext.is_zero(e))
        .collect();
    let mults: Vec<i64> = (-max_mult..=max_mult).filter(|&m| m != 0).collect();
    let mut stack: Vec<(usize, Vec<(Elem, i64)>)> = alloc::vec![(0, Vec::new())];
    while let Some((next, picked)) = stack.pop() {
        let u = FormalSum::from_terms(ext.clone(), &picked);
        let fixed = u.eq(&u.map_support(|a| split.frob(1, a)));
        if fixed && !coefficients_in_base(&monoid::omega(&u)?, split)? {
            return Ok(false);
        }
        if picked.len() < max_support {
            for i in next..elems.len() {
                for &m in &mults {
                    let mut more = picked.clone();
                    more.push((elems[i].clone(), m));
                    stack.push((i + 1, more));
                }
            }
        }
    }
    Ok(true)
}

/// Both directions of the Galois-invariance description of W_rat(K): the
/// split preimage of f over the minimal splitting field is Frobenius-fixed,
/// and (exhaustively, small support) Frobenius-fixed sums descend.
pub fn galois_invariants_check(f: &RatWitt, max_support: usize, max_mult: i64) -> Result<bool> {
    let base = f.ring().clone();
    let u = monoid::split_preimage(f)?;
    let ext = u.ring().clone();
    let split = TensorSplit::new(base, ext)?;
    let fixed = u.eq(&u.map_support(|a| split.frob(1, a)));
    if !fixed {
        return Ok(false);
    }
    frobenius_fixed_sums_descend(&split, max_support, max_mult)
}
