//! Hankel matrices of a Witt series and everything rank-flavored: rank over
//! fields, bounded-rank membership over arbitrary rings, reconstruction of a
//! rational representative from finitely many coefficients, the generalized
//! Laplace decomposition of determinants into products of subminors, and the
//! rank bounds along nilpotent quotients and Verschiebung images.
//!
//! The Hankel matrix of f = 1 + a₁T + … is H(f) = (a_{i+j}) with a_0 = 1.
//! A rational f = P/Q has rank exactly max(1 + deg P, deg Q), which is why a
//! finite window of coefficients can decide rational questions exactly.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::ratwitt::RatWitt;
use crate::ring::{self, Elem, Ring, RingKind};

/// Square window (a_{i+j}), 0 ≤ i,j < m, over a coefficient list starting at
/// a_0 = 1; m is limited by 2(m−1) ≤ N where N is the last available index.
#[derive(Debug, Clone)]
pub struct HankelView {
    ring: Ring,
    coeffs: Vec<Elem>,
    m: usize,
}

impl HankelView {
    pub fn with_order(ring: Ring, coeffs: Vec<Elem>, m: usize) -> Result<HankelView> {
        let n = coeffs.len().saturating_sub(1);
        if m == 0 || 2 * (m - 1) > n {
            return Err(Error::InsufficientPrecision { needed: 2 * (m - 1) + 1, available: coeffs.len() });
        }
        if coeffs.is_empty() || !ring.is_one(&coeffs[0]) {
            return Err(Error::Domain("coefficient list must start at a_0 = 1".into()));
        }
        Ok(HankelView { ring, coeffs, m })
    }

    /// Largest order the list supports: m = ⌊N/2⌋ + 1.
    pub fn largest(ring: Ring, coeffs: Vec<Elem>) -> Result<HankelView> {
        let n = coeffs.len().saturating_sub(1);
        HankelView::with_order(ring, coeffs, n / 2 + 1)
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &Elem {
        &self.coeffs[i + j]
    }

    pub fn matrix(&self) -> Mat {
        Mat::from_fn(self.ring.clone(), self.m, self.m, |i, j| self.coeffs[i + j].clone())
    }
}

/// Rank verdict for a truncated series: the least rank consistent with the
/// available window, flagged when the window is too short to certify it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankVerdict {
    pub rank: usize,
    pub truncation_limited: bool,
}

/// Hankel rank of a truncated series over a field.
pub fn hankel_rank_field_series(ring: &Ring, coeffs: &[Elem]) -> Result<RankVerdict> {
    if !ring.is_field() {
        return Err(Error::NotAField);
    }
    let view = HankelView::largest(ring.clone(), coeffs.to_vec())?;
    let rank = view.matrix().rank_field();
    let n = coeffs.len() - 1;
    Ok(RankVerdict { rank, truncation_limited: 2 * rank > n.saturating_sub(1) })
}

/// Exact Hankel rank of a rational Witt vector over a field: the degree
/// bound of the reduced fraction.
pub fn hankel_rank_field(f: &RatWitt) -> Result<usize> {
    if !f.ring().is_field() {
        return Err(Error::NotAField);
    }
    Ok(f.bound())
}

fn combinations(m: usize, t: usize) -> Vec<Vec<usize>> {
    if t > m {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..t).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic t-combination of 0..m
        let mut i = t;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + m - t {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..t {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Membership f ∈ W_J^{≤ n}: all (n+1)×(n+1) minors of the largest available
/// Hankel window vanish. Over certified domains this is decided as a rank
/// over the fraction field (equivalent to minor vanishing); over rings with
/// zero divisors every minor is evaluated, since rank is not defined there.
/// The verdict is exact for windows of rational inputs and otherwise means
/// "consistent with membership at this precision".
pub fn wj_member(ring: &Ring, coeffs: &[Elem], n: usize) -> Result<bool> {
    let view = HankelView::largest(ring.clone(), coeffs.to_vec())?;
    let m = view.order();
    if n + 1 > m {
        return Ok(true);
    }
    if ring.is_domain() {
        let k = ring.fraction_field()?;
        let mk = view.matrix().map(&k, |e| ring::embed(ring, &k, e).expect("subring embeds"));
        return Ok(mk.rank_field() <= n);
    }
    let mat = view.matrix();
    let picks = combinations(m, n + 1);
    for rows in &picks {
        for cols in &picks {
            let sub = Mat::from_fn(ring.clone(), n + 1, n + 1, |i, j| {
                mat.at(rows[i], cols[j]).clone()
            });
            if !ring.is_zero(&sub.det()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Recover P/Q over a field from the coefficient list (a_0 = 1 first),
/// within the stated degree bound. Minimal-degree denominator first, so the
/// result is automatically coprime; needs at least 2·bound list entries.
pub fn kronecker_reconstruct(field: &Ring, list: &[Elem], bound: usize) -> Result<RatWitt> {
    if !field.is_field() {
        return Err(Error::NotAField);
    }
    if list.is_empty() || !field.is_one(&list[0]) {
        return Err(Error::Domain("series list must start at a_0 = 1".into()));
    }
    let l = list.len();
    if l < 2 * bound {
        return Err(Error::InsufficientPrecision { needed: 2 * bound, available: l });
    }
    for s in 0..=bound {
        // ansatz deg Q ≤ s, deg P ≤ s−1, Q(0) = 1: unknowns q_1..q_s must
        // kill every series coefficient of f·Q from index s on.
        let rows = l - s;
        let sys = Mat::from_fn(field.clone(), rows, s, |row, i| list[s + row - (i + 1)].clone());
        let rhs: Vec<Elem> = (s..l).map(|j| field.neg(&list[j])).collect();
        let Some(sol) = sys.solve_field(&rhs) else {
            continue;
        };
        let mut qc = vec![field.one()];
        qc.extend(sol);
        let q = Poly::new(field.clone(), qc);
        let mut pc = Vec::with_capacity(s.max(1));
        for j in 0..s.max(1) {
            let mut acc = field.zero();
            for i in 0..=j.min(s) {
                acc = field.add(&acc, &field.mul(&q.coeff(i), &list[j - i]));
            }
            pc.push(acc);
        }
        let p = Poly::new(field.clone(), pc);
        let f = RatWitt::new(field.clone(), p, q)?;
        #[cfg(debug_assertions)]
        {
            let back = f.to_series(l - 1);
            for (j, want) in list.iter().enumerate().skip(1) {
                debug_assert!(
                    field.eq(back.coeff(j), want),
                    "reconstruction must reproduce every input coefficient"
                );
            }
        }
        return Ok(f);
    }
    Err(Error::NoRationalRepresentative { bound })
}

/// Generalized Laplace identity on an (n·k)×(n·k) matrix: the determinant
/// equals the signed sum over ordered partitions (I₁,…,I_k) of the columns
/// into n-sets of ∏_t det M[rows of block t, I_t]. Returns whether the
/// identity holds on this instance (it always must; the comparison is the
/// point of the check).
pub fn minor_decomposition_check(m: &Mat, n: usize, k: usize) -> Result<bool> {
    if m.rows() != n * k || m.cols() != n * k || n == 0 || k == 0 {
        return Err(Error::Domain("matrix size must be n·k with n, k ≥ 1".into()));
    }
    let ring = m.ring().clone();
    let direct = m.det();
    let mut total = ring.zero();
    let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut free: Vec<usize> = (0..n * k).collect();
    decompose_rec(m, n, k, &ring, &mut chosen, &mut free, &mut total);
    Ok(ring.eq(&direct, &total))
}

fn decompose_rec(
    m: &Mat,
    n: usize,
    k: usize,
    ring: &Ring,
    chosen: &mut Vec<Vec<usize>>,
    free: &mut Vec<usize>,
    total: &mut Elem,
) {
    if chosen.len() == k {
        let mut seq: Vec<usize> = Vec::with_capacity(n * k);
        for block in chosen.iter() {
            seq.extend(block.iter().copied());
        }
        let mut inversions = 0usize;
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                if seq[i] > seq[j] {
                    inversions += 1;
                }
            }
        }
        let mut prod = ring.one();
        for (t, cols) in chosen.iter().enumerate() {
            let sub = Mat::from_fn(ring.clone(), n, n, |i, j| m.at(t * n + i, cols[j]).clone());
            prod = ring.mul(&prod, &sub.det());
        }
        if inversions % 2 == 1 {
            prod = ring.neg(&prod);
        }
        *total = ring.add(total, &prod);
        return;
    }
    for pick in combinations(free.len(), n) {
        let cols: Vec<usize> = pick.iter().map(|&i| free[i]).collect();
        let rest: Vec<usize> = (0..free.len())
            .filter(|i| !pick.contains(i))
            .map(|i| free[i])
            .collect();
        let saved = core::mem::replace(free, rest);
        chosen.push(cols);
        decompose_rec(m, n, k, ring, chosen, free, total);
        chosen.pop();
        *free = saved;
    }
}

/// Rank bound along the nilpotent quotient Dual(A′) → A′ (ε² = 0): if the
/// image f′ lies in W_J^{< n}, then f lies in W_J^{< 2n}. Verifies the
/// implication on the given instance.
pub fn nilpotent_rank_bound_check(ring: &Ring, coeffs: &[Elem], n: usize) -> Result<bool> {
    assert!(n >= 1);
    let RingKind::Dual(base) = ring.kind() else {
        return Err(Error::BadRing("nilpotent rank bound is shipped for dual numbers".into()));
    };
    let projected: Vec<Elem> = coeffs
        .iter()
        .map(|c| match c {
            Elem::Dual(p) => p.0.clone(),
            _ => unreachable!("dual-number coefficients"),
        })
        .collect();
    let below = wj_member(base, &projected, n - 1)?;
    if !below {
        return Ok(true);
    }
    wj_member(ring, coeffs, 2 * n - 1)
}

/// Undo Verschiebung on coefficients: if g is supported on indices divisible
/// by N, return f with g = V_N f and check that every visible membership
/// bound of g descends to f; otherwise None.
pub fn verschiebung_section(ring: &Ring, coeffs: &[Elem], n: usize) -> Result<Option<Vec<Elem>>> {
    assert!(n >= 1);
    for (i, c) in coeffs.iter().enumerate() {
        if i % n != 0 && !ring.is_zero(c) {
            return Ok(None);
        }
    }
    let f: Vec<Elem> = coeffs.iter().step_by(n).cloned().collect();
    // rank bounds descend from g to f on every view the data supports
    let mf = (f.len() - 1) / 2 + 1;
    for bound in 0..mf {
        if wj_member(ring, coeffs, bound)? {
            assert!(
                wj_member(ring, &f, bound)?,
                "a V_N image within W_J^(<=n) must come from W_J^(<=n)"
            );
        }
    }
    Ok(Some(f))
}
