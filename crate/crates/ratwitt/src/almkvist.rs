//! The characteristic-polynomial oracle: a free module with an endomorphism
//! φ maps to det(1 − Tφ), a polynomial Witt vector. Direct sum, tensor
//! product, matrix power, and the cyclic block construction realize Witt
//! addition, Witt multiplication, Frobenius, and Verschiebung on the other
//! side, which makes endomorphism matrices an independent cross-check for
//! every series-level operation.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::ratwitt::RatWitt;
use crate::ring::{Elem, Ring};

/// A square matrix acting on a free module; 0×0 encodes the zero object.
#[derive(Debug, Clone)]
pub struct EndoModule {
    mat: Mat,
}

impl EndoModule {
    pub fn new(mat: Mat) -> Result<EndoModule> {
        if mat.rows() != mat.cols() {
            return Err(Error::Domain("endomorphism matrix must be square".into()));
        }
        Ok(EndoModule { mat })
    }

    pub fn zero_object(ring: Ring) -> EndoModule {
        EndoModule { mat: Mat::zero(ring, 0, 0) }
    }

    pub fn from_i64(ring: Ring, n: usize, entries: &[i64]) -> EndoModule {
        let data: Vec<Elem> = entries.iter().map(|&e| ring.from_i64(e)).collect();
        EndoModule { mat: Mat::new(ring, n, n, data) }
    }

    pub fn ring(&self) -> &Ring {
        self.mat.ring()
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    /// det(1 − Tφ), computed fraction-free in the polynomial ring; the
    /// result always has denominator 1 and numerator degree ≤ dim.
    pub fn char_map(&self) -> RatWitt {
        let base = self.ring().clone();
        let n = self.dim();
        let pring = Ring::poly(base.clone(), "T");
        let m = Mat::from_fn(pring, n, n, |i, j| {
            let c0 = if i == j { base.one() } else { base.zero() };
            Elem::Poly(crate::poly::raw::trim(&base, vec![c0, base.neg(self.mat.at(i, j))]))
        });
        let Elem::Poly(coeffs) = m.det() else {
            unreachable!("determinant over a polynomial ring")
        };
        let p = Poly::new(base.clone(), coeffs);
        debug_assert!(p.deg().unwrap_or(0) <= n);
        RatWitt::new(base.clone(), p, Poly::one(base)).expect("constant term 1")
    }

    pub fn direct_sum(&self, other: &EndoModule) -> Result<EndoModule> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(EndoModule { mat: self.mat.block_diag(&other.mat) })
    }

    pub fn tensor(&self, other: &EndoModule) -> Result<EndoModule> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(EndoModule { mat: self.mat.kronecker(&other.mat) })
    }

    /// φ ↦ φ^N, the module-level Frobenius.
    pub fn frobenius(&self, n: usize) -> EndoModule {
        assert!(n >= 1);
        let mut acc = Mat::identity(self.ring().clone(), self.dim());
        for _ in 0..n {
            acc = acc.mul(&self.mat);
        }
        EndoModule { mat: acc }
    }

    /// The N-block cyclic matrix sending e_i ↦ e_{i+1} blockwise and the
    /// last block back through φ; its characteristic series is f(T^N).
    pub fn verschiebung(&self, n: usize) -> EndoModule {
        assert!(n >= 1);
        let d = self.dim();
        let ring = self.ring().clone();
        let mut m = Mat::zero(ring.clone(), n * d, n * d);
        for b in 0..n - 1 {
            for i in 0..d {
                m.set((b + 1) * d + i, b * d + i, ring.one());
            }
        }
        for i in 0..d {
            for j in 0..d {
                m.set(i, (n - 1) * d + j, self.mat.at(i, j).clone());
            }
        }
        EndoModule { mat: m }
    }
}

/// Short-exact-sequence additivity: for a block upper triangular φ with
/// diagonal blocks φ₁ (size `split`) and φ₂, the characteristic series of φ
/// is the Witt sum of the two diagonal characteristic series.
pub fn ses_additivity_check(m: &Mat, split: usize) -> Result<bool> {
    if m.rows() != m.cols() || split > m.rows() {
        return Err(Error::Domain("blocks malformed".into()));
    }
    let ring = m.ring().clone();
    for i in split..m.rows() {
        for j in 0..split {
            if !ring.is_zero(m.at(i, j)) {
                return Err(Error::Domain("blocks malformed: lower-left block non-zero".into()));
            }
        }
    }
    let whole = EndoModule::new(m.clone())?;
    let top = EndoModule::new(Mat::from_fn(ring.clone(), split, split, |i, j| m.at(i, j).clone()))?;
    let rest = m.rows() - split;
    let bottom = EndoModule::new(Mat::from_fn(ring.clone(), rest, rest, |i, j| {
        m.at(split + i, split + j).clone()
    }))?;
    let lhs = whole.char_map();
    let rhs = top.char_map().rw_add(&bottom.char_map())?;
    Ok(lhs.eq(&rhs))
}
