//! Dense matrices over a runtime ring.
//!
//! Determinants run fraction-free Gaussian elimination (Bareiss) over
//! certified domains, where the intermediate divisions are exact by
//! Sylvester's identity, and fall back to memoized expansion by minors over
//! rings with zero divisors, where no division is legal at all. Rank and
//! linear solving are offered over fields only.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ring::{Elem, Ring, RingKind};

/// Row-major dense matrix.
#[derive(Debug, Clone)]
pub struct Mat {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Mat {
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<Elem>) -> Mat {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Mat { ring, rows, cols, data }
    }

    pub fn from_fn<F>(ring: Ring, rows: usize, cols: usize, mut f: F) -> Mat
    where
        F: FnMut(usize, usize) -> Elem,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { ring, rows, cols, data }
    }

    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Mat {
        let z = ring.zero();
        Mat { ring, rows, cols, data: vec![z; rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Mat {
        let mut m = Mat::zero(ring.clone(), n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Mat::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            self.ring.add(self.at(i, j), other.at(i, j))
        })
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Mat::from_fn(self.ring.clone(), self.rows, other.cols, |i, j| {
            let mut acc = self.ring.zero();
            for k in 0..self.cols {
                acc = self.ring.add(&acc, &self.ring.mul(self.at(i, k), other.at(k, j)));
            }
            acc
        })
    }

    pub fn eq(&self, other: &Mat) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.ring.eq(self.at(i, j), other.at(i, j))))
    }

    /// Coefficientwise transport into another ring.
    pub fn map<F>(&self, target: &Ring, mut f: F) -> Mat
    where
        F: FnMut(&Elem) -> Elem,
    {
        let data = self.data.iter().map(|e| f(e)).collect();
        Mat::new(target.clone(), self.rows, self.cols, data)
    }

    /// Kronecker product; block (i1, j1) is A[i1][j1]·B.
    pub fn kronecker(&self, other: &Mat) -> Mat {
        Mat::from_fn(
            self.ring.clone(),
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (i1, i2) = (i / other.rows, i % other.rows);
                let (j1, j2) = (j / other.cols, j % other.cols);
                self.ring.mul(self.at(i1, j1), other.at(i2, j2))
            },
        )
    }

    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut m = Mat::zero(self.ring.clone(), self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.at(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.at(i, j).clone());
            }
        }
        m
    }

    /// Determinant over any commutative ring descriptor.
    pub fn det(&self) -> Elem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.ring.is_domain() {
            self.det_bareiss()
        } else {
            self.det_minors()
        }
    }

    /// Fraction-free elimination; every division is exact in the domain.
    fn det_bareiss(&self) -> Elem {
        let n = self.rows;
        let r = &self.ring;
        if n == 0 {
            return r.one();
        }
        let mut m = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut negate = false;
        let mut prev = r.one();
        for k in 0..n - 1 {
            if r.is_zero(&m[idx(k, k)]) {
                let Some(swap) = (k + 1..n).find(|&i| !r.is_zero(&m[idx(i, k)])) else {
                    return r.zero();
                };
                for j in 0..n {
                    m.swap(idx(k, j), idx(swap, j));
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t1 = r.mul(&m[idx(i, j)], &m[idx(k, k)]);
                    let t2 = r.mul(&m[idx(i, k)], &m[idx(k, j)]);
                    let num = r.sub(&t1, &t2);
                    m[idx(i, j)] = r
                        .exact_div(&num, &prev)
                        .expect("fraction-free elimination divides exactly in a domain");
                }
                m[idx(i, k)] = r.zero();
            }
            prev = m[idx(k, k)].clone();
        }
        let d = m[idx(n - 1, n - 1)].clone();
        if negate {
            r.neg(&d)
        } else {
            d
        }
    }

    /// Division-free determinant, memoized on the set of unused columns.
    fn det_minors(&self) -> Elem {
        let n = self.rows;
        assert!(n <= 24, "minor expansion limited to small matrices");
        let r = self.ring.clone();
        let mut memo: BTreeMap<u32, Elem> = BTreeMap::new();
        self.minor_rec(((1u32 << n) - 1) as u32, &r, &mut memo)
    }

    fn minor_rec(&self, mask: u32, r: &Ring, memo: &mut BTreeMap<u32, Elem>) -> Elem {
        if mask == 0 {
            return r.one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let row = self.rows - mask.count_ones() as usize;
        let mut acc = r.zero();
        let mut sign_neg = false;
        for j in 0..self.cols {
            let bit = 1u32 << j;
            if mask & bit == 0 {
                continue;
            }
            let a = self.at(row, j);
            if !r.is_zero(a) {
                let sub = self.minor_rec(mask ^ bit, r, memo);
                let term = r.mul(a, &sub);
                acc = if sign_neg { r.sub(&acc, &term) } else { r.add(&acc, &term) };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Rank via Gaussian elimination; requires a field.
    pub fn rank_field(&self) -> usize {
        let r = &self.ring;
        assert!(r.is_field(), "rank computed over a field");
        let mut m = self.data.clone();
        let cols = self.cols;
        let idx = |i: usize, j: usize| i * cols + j;
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..self.rows).find(|&i| !r.is_zero(&m[idx(i, col)])) else {
                continue;
            };
            for j in 0..cols {
                m.swap(idx(rank, j), idx(piv, j));
            }
            let inv = r.inv(&m[idx(rank, col)]).expect("nonzero pivot in a field");
            for j in col..cols {
                m[idx(rank, j)] = r.mul(&m[idx(rank, j)], &inv);
            }
            for i in 0..self.rows {
                if i != rank && !r.is_zero(&m[idx(i, col)]) {
                    let f = m[idx(i, col)].clone();
                    for j in col..cols {
                        let t = r.mul(&f, &m[idx(rank, j)]);
                        m[idx(i, j)] = r.sub(&m[idx(i, j)], &t);
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// One solution of self·x = rhs over a field (free variables set to
    /// zero), or None when inconsistent.
    pub fn solve_field(&self, rhs: &[Elem]) -> Option<Vec<Elem>> {
        let r = &self.ring;
        assert!(r.is_field(), "linear solve over a field");
        assert_eq!(rhs.len(), self.rows);
        if matches!(r.kind(), RingKind::Rationals) {
            return self.solve_rationals(rhs);
        }
        let cols = self.cols;
        let width = cols + 1;
        let mut m: Vec<Elem> = Vec::with_capacity(self.rows * width);
        for i in 0..self.rows {
            for j in 0..cols {
                m.push(self.at(i, j).clone());
            }
            m.push(rhs[i].clone());
        }
        let idx = |i: usize, j: usize| i * width + j;
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..self.rows).find(|&i| !r.is_zero(&m[idx(i, col)])) else {
                continue;
            };
            for j in 0..width {
                m.swap(idx(rank, j), idx(piv, j));
            }
            let inv = r.inv(&m[idx(rank, col)]).expect("nonzero pivot in a field");
            for j in col..width {
                m[idx(rank, j)] = r.mul(&m[idx(rank, j)], &inv);
            }
            for i in 0..self.rows {
                if i != rank && !r.is_zero(&m[idx(i, col)]) {
                    let f = m[idx(i, col)].clone();
                    for j in col..width {
                        let t = r.mul(&f, &m[idx(rank, j)]);
                        m[idx(i, j)] = r.sub(&m[idx(i, j)], &t);
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        // Inconsistent iff a zero row has nonzero right-hand side.
        for i in rank..self.rows {
            if !r.is_zero(&m[idx(i, cols)]) {
                return None;
            }
        }
        let mut x = vec![r.zero(); cols];
        for (row, &col) in pivot_cols.iter().enumerate() {
            x[col] = m[idx(row, cols)].clone();
        }
        Some(x)
    }

    /// Dedicated rational path: normalized rational arithmetic costs a gcd
    /// per operation, which is ruinous once the entries are minor-sized.
    /// Clearing denominators row-wise and running fraction-free forward
    /// elimination keeps everything in integers (divisions exact by
    /// Sylvester's identity, also with skipped pivot columns), leaving only
    /// O(rank²) rational operations for the back-substitution.
    fn solve_rationals(&self, rhs: &[Elem]) -> Option<Vec<Elem>> {
        let cols = self.cols;
        let as_rat = |e: &Elem| match e {
            Elem::Rat(x) => x.clone(),
            _ => unreachable!("rational matrix entry"),
        };
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row: Vec<BigRational> =
                (0..cols).map(|j| as_rat(self.at(i, j))).collect();
            row.push(as_rat(&rhs[i]));
            let mut l = BigInt::one();
            for e in &row {
                l = num_integer::lcm(l, e.denom().clone());
            }
            m.push(row.iter().map(|e| e.numer() * (&l / e.denom())).collect());
        }
        let mut prev = BigInt::one();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, piv);
            let (head, tail) = m.split_at_mut(rank + 1);
            let prow = &head[rank];
            for irow in tail.iter_mut() {
                if irow[col].is_zero() {
                    for e in irow.iter_mut().skip(col + 1) {
                        let t = &prow[col] * &*e;
                        debug_assert!((&t % &prev).is_zero());
                        *e = t / &prev;
                    }
                    continue;
                }
                for j in col + 1..=cols {
                    let t = &prow[col] * &irow[j] - &irow[col] * &prow[j];
                    debug_assert!((&t % &prev).is_zero());
                    irow[j] = t / &prev;
                }
                irow[col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            pivot_cols.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        for row in m.iter().skip(rank) {
            if !row[cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![BigRational::zero(); cols];
        for (row, &col) in pivot_cols.iter().enumerate().rev() {
            let mut acc = BigRational::from_integer(m[row][cols].clone());
            for j in col + 1..cols {
                if !m[row][j].is_zero() && !x[j].is_zero() {
                    acc -= BigRational::from_integer(m[row][j].clone()) * &x[j];
                }
            }
            x[col] = acc / BigRational::from_integer(m[row][col].clone());
        }
        Some(x.into_iter().map(Elem::Rat).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz() -> Ring {
        Ring::integers()
    }

    fn mat_i64(ring: &Ring, rows: usize, cols: usize, v: &[i64]) -> Mat {
        Mat::new(ring.clone(), rows, cols, v.iter().map(|&n| ring.from_i64(n)).collect())
    }

    #[test]
    fn bareiss_matches_minors_over_integers() {
        let r = zz();
        let m = mat_i64(&r, 3, 3, &[2, -1, 0, 3, 4, 5, 1, 1, 1]);
        let byb = m.det_bareiss();
        let bym = m.det_minors();
        assert!(r.eq(&byb, &bym));
        assert!(r.eq(&byb, &r.from_i64(2 * (4 - 5) - (-1) * (3 - 5) + 0)));
    }

    #[test]
    fn det_with_pivot_swap_and_singular() {
        let r = zz();
        let m = mat_i64(&r, 3, 3, &[0, 1, 2, 1, 0, 3, 4, 5, 6]);
        // expansion: det = 0·(0·6−3·5) − 1·(6−12) + 2·(5−0) = 16
        assert!(r.eq(&m.det(), &r.from_i64(16)));
        let s = mat_i64(&r, 3, 3, &[1, 2, 3, 2, 4, 6, 7, 8, 9]);
        assert!(r.is_zero(&s.det()));
    }

    #[test]
    fn det_over_dual_numbers_uses_minors() {
        let d = Ring::dual(Ring::gf(2).unwrap());
        let (eps, _) = d.nilpotent_certificate().unwrap();
        let one = d.one();
        // [[1, ε], [ε, 1]] has det 1 − ε² = 1
        let m = Mat::new(
            d.clone(),
            2,
            2,
            vec![one.clone(), eps.clone(), eps.clone(), one.clone()],
        );
        assert!(d.eq(&m.det(), &d.one()));
    }

    #[test]
    fn kronecker_and_block_diag_shapes() {
        let r = zz();
        let a = mat_i64(&r, 2, 2, &[1, 2, 3, 4]);
        let b = mat_i64(&r, 2, 2, &[0, 1, 1, 0]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert!(r.eq(k.at(0, 1), &r.from_i64(1)));
        assert!(r.eq(k.at(2, 1), &r.from_i64(3)));
        assert!(r.eq(k.at(2, 3), &r.from_i64(4)));
        let d = a.block_diag(&b);
        assert_eq!((d.rows(), d.cols()), (4, 4));
        assert!(r.is_zero(d.at(0, 2)));
        // det(A⊗B) = det(A)^2 det(B)^2 for 2×2 blocks
        let det_k = k.det();
        let want = r.mul(&r.pow(&a.det(), 2), &r.pow(&b.det(), 2));
        assert!(r.eq(&det_k, &want));
    }

    #[test]
    fn rank_and_solve_over_rationals() {
        let q = Ring::rationals();
        let m = mat_i64(&q, 3, 3, &[1, 2, 3, 2, 4, 6, 1, 1, 1]);
        assert_eq!(m.rank_field(), 2);
        let rhs = vec![q.from_i64(6), q.from_i64(12), q.from_i64(3)];
        let x = m.solve_field(&rhs).unwrap();
        // verify A·x = rhs
        for i in 0..3 {
            let mut acc = q.zero();
            for j in 0..3 {
                acc = q.add(&acc, &q.mul(m.at(i, j), &x[j]));
            }
            assert!(q.eq(&acc, &rhs[i]));
        }
        // inconsistent variant
        let bad = vec![q.from_i64(6), q.from_i64(11), q.from_i64(3)];
        assert!(m.solve_field(&bad).is_none());
    }
}
