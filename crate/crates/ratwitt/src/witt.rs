//! Truncated big Witt vectors: series 1 + a₁T + … + a_N T^N over a ring A,
//! carried to an explicit precision N.
//!
//! Witt addition is ordinary series multiplication; Witt multiplication ⊙ has
//! unit 1 − T and is computed through universal integer polynomials. Over
//! torsion-free rings ⊙ and Frobenius instead run through ghost components —
//! the value is the same polynomial value, reached without materializing the
//! table — and the two routes are held together by tests rather than trust.
//!
//! Ghost components: −T·f′/f = Σ w_n Tⁿ, i.e. w_n = −n·a_n − Σ_{k<n} a_k w_{n−k},
//! an integer recurrence valid over every ring; on 1 − aT it yields (a, a², …).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::multable::MulTable;
use crate::poly::{raw, Poly};
use crate::ring::{Elem, Ring};

/// Series 1 + a₁T + … + a_N T^N; `coeffs[i]` is a_{i+1}, the constant 1 is
/// implicit. Precision is the stored length and never silently changes.
#[derive(Debug, Clone)]
pub struct WittSeries {
    ring: Ring,
    coeffs: Vec<Elem>,
}

impl WittSeries {
    pub fn new(ring: Ring, coeffs: Vec<Elem>) -> WittSeries {
        WittSeries { ring, coeffs }
    }

    /// Witt zero: the series 1.
    pub fn zero(ring: Ring, prec: usize) -> WittSeries {
        let z = ring.zero();
        WittSeries { ring, coeffs: vec![z; prec] }
    }

    /// Witt unit: 1 − T.
    pub fn one(ring: Ring, prec: usize) -> WittSeries {
        WittSeries::teichmueller(ring.clone(), &ring.one(), prec)
    }

    /// Teichmüller representative [a] = 1 − aT.
    pub fn teichmueller(ring: Ring, a: &Elem, prec: usize) -> WittSeries {
        let mut coeffs = vec![ring.zero(); prec];
        if prec >= 1 {
            coeffs[0] = ring.neg(a);
        }
        WittSeries { ring, coeffs }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient a_n, 1-based; n must not exceed the precision.
    pub fn coeff(&self, n: usize) -> &Elem {
        assert!(n >= 1 && n <= self.coeffs.len(), "coefficient beyond precision");
        &self.coeffs[n - 1]
    }

    pub fn truncate(&self, prec: usize) -> WittSeries {
        assert!(prec <= self.coeffs.len(), "truncation cannot add precision");
        WittSeries { ring: self.ring.clone(), coeffs: self.coeffs[..prec].to_vec() }
    }

    /// Coefficientwise semantic equality at identical precision.
    pub fn eq(&self, other: &WittSeries) -> bool {
        self.ring == other.ring
            && self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| self.ring.eq(a, b))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    fn check_ring(&self, other: &WittSeries) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// a_0 = 1 convention wrapped once: coefficient i of the underlying series.
    fn series_coeff(&self, i: usize) -> Elem {
        if i == 0 {
            self.ring.one()
        } else {
            self.coeffs[i - 1].clone()
        }
    }

    /// Witt sum = product of the underlying series, at the common precision.
    pub fn witt_add(&self, other: &WittSeries) -> Result<WittSeries> {
        self.check_ring(other)?;
        let r = &self.ring;
        let prec = self.coeffs.len().min(other.coeffs.len());
        let mut out = Vec::with_capacity(prec);
        for n in 1..=prec {
            let mut acc = r.add(&self.coeffs[n - 1], &other.coeffs[n - 1]);
            for i in 1..n {
                acc = r.add(&acc, &r.mul(&self.coeffs[i - 1], &other.coeffs[n - i - 1]));
            }
            out.push(acc);
        }
        Ok(WittSeries { ring: r.clone(), coeffs: out })
    }

    /// Witt negation = inverse of the underlying series.
    pub fn witt_neg(&self) -> WittSeries {
        let r = &self.ring;
        let prec = self.coeffs.len();
        let mut out: Vec<Elem> = Vec::with_capacity(prec);
        for n in 1..=prec {
            let mut acc = self.coeffs[n - 1].clone();
            for k in 1..n {
                acc = r.add(&acc, &r.mul(&out[k - 1], &self.coeffs[n - k - 1]));
            }
            out.push(r.neg(&acc));
        }
        WittSeries { ring: r.clone(), coeffs: out }
    }

    pub fn witt_sub(&self, other: &WittSeries) -> Result<WittSeries> {
        self.witt_add(&other.witt_neg())
    }

    /// Witt product ⊙. Coefficient n is the universal integer polynomial in
    /// the operands' coefficients; over torsion-free rings it is evaluated
    /// through ghost components instead of the cached table.
    pub fn witt_mul(&self, other: &WittSeries) -> Result<WittSeries> {
        self.check_ring(other)?;
        let r = &self.ring;
        let prec = self.coeffs.len().min(other.coeffs.len());
        if r.is_torsion_free() {
            let wf = ghost_coeffs(r, &self.coeffs[..prec]);
            let wg = ghost_coeffs(r, &other.coeffs[..prec]);
            let wp: Vec<Elem> = wf.iter().zip(&wg).map(|(a, b)| r.mul(a, b)).collect();
            let coeffs = ghost_invert(r, &wp)
                .expect("ghost inversion of a Witt product is exact over torsion-free rings");
            Ok(WittSeries { ring: r.clone(), coeffs })
        } else {
            let table = MulTable::with_precision(prec)?;
            let coeffs = table.product_coeffs(r, &self.coeffs[..prec], &other.coeffs[..prec]);
            Ok(WittSeries { ring: r.clone(), coeffs })
        }
    }

    /// n-fold Witt sum (negatives through witt_neg).
    pub fn nfold(&self, n: i64) -> WittSeries {
        let base = if n < 0 { self.witt_neg() } else { self.clone() };
        let mut acc = WittSeries::zero(self.ring.clone(), self.coeffs.len());
        for _ in 0..n.unsigned_abs() {
            acc = acc.witt_add(&base).expect("same ring");
        }
        acc
    }

    /// f(bT) = [b] ⊙ f.
    pub fn scale_t(&self, b: &Elem) -> WittSeries {
        let r = &self.ring;
        let mut pw = r.one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            pw = r.mul(&pw, b);
            out.push(r.mul(a, &pw));
        }
        WittSeries { ring: r.clone(), coeffs: out }
    }

    /// Ghost components w_1..w_N.
    pub fn ghost(&self) -> Vec<Elem> {
        ghost_coeffs(&self.ring, &self.coeffs)
    }

    /// Series with the given ghost components; exact division by n must be
    /// possible at every level (torsion-free rings: unique when it exists).
    pub fn from_ghost(ring: Ring, w: &[Elem]) -> Result<WittSeries> {
        match ghost_invert(&ring, w) {
            Some(coeffs) => Ok(WittSeries { ring, coeffs }),
            None => Err(Error::Torsion(
                "ghost components do not lift: division by the level index failed".into(),
            )),
        }
    }

    /// Frobenius F_N; output precision ⌊N_f / N⌋. Ghost decimation over
    /// torsion-free rings, the resultant construction otherwise.
    pub fn frobenius(&self, n: usize) -> Result<WittSeries> {
        assert!(n >= 1, "Frobenius index must be at least 1");
        if n == 1 {
            return Ok(self.clone());
        }
        let r = &self.ring;
        let out_prec = self.coeffs.len() / n;
        if r.is_torsion_free() {
            let w = self.ghost();
            let dec: Vec<Elem> = (1..=out_prec).map(|k| w[n * k - 1].clone()).collect();
            let coeffs = ghost_invert(r, &dec)
                .expect("decimated ghosts of a Witt vector lift over torsion-free rings");
            Ok(WittSeries { ring: r.clone(), coeffs })
        } else {
            Ok(self.frobenius_resultant(n))
        }
    }

    /// F_N through Res_Z(Z^N − T^N, f̂(Z)): the determinant of multiplication
    /// by f̂(Z) on the basis 1, Z, …, Z^(N−1) of A[T][Z]/(Z^N − T^N), using
    /// Z^m ≡ T^(N·⌊m/N⌋)·Z^(m mod N). The determinant is a polynomial in T^N
    /// whose T^(N·k) coefficient is coefficient k of F_N f, exact for
    /// k ≤ ⌊N_f/N⌋ because coefficient m of a product only sees inputs ≤ m.
    fn frobenius_resultant(&self, n: usize) -> WittSeries {
        let r = &self.ring;
        let prec = self.coeffs.len();
        let out_prec = prec / n;
        let pring = Ring::poly(r.clone(), "T");
        let mut cols: Vec<Vec<Vec<Elem>>> = vec![vec![vec![]; n]; n];
        for i in 0..n {
            for k in 0..=prec {
                let a_k = self.series_coeff(k);
                if r.is_zero(&a_k) {
                    continue;
                }
                let q = (k + i) / n;
                let s = (k + i) % n;
                let deg = n * q;
                let cell = &mut cols[i][s];
                if cell.len() <= deg {
                    cell.resize(deg + 1, r.zero());
                }
                cell[deg] = r.add(&cell[deg], &a_k);
            }
        }
        let m = Mat::from_fn(pring.clone(), n, n, |s, i| {
            Elem::Poly(raw::trim(r, cols[i][s].clone()))
        });
        let det = match m.det() {
            Elem::Poly(c) => Poly::new(r.clone(), c),
            _ => unreachable!("determinant over a polynomial ring"),
        };
        debug_assert!(r.is_one(&det.coeff(0)), "resultant constant term");
        #[cfg(debug_assertions)]
        for d in 1..=prec {
            if d % n != 0 {
                debug_assert!(
                    r.is_zero(&det.coeff(d)),
                    "resultant has support off multiples of N within precision"
                );
            }
        }
        let coeffs = (1..=out_prec).map(|k| det.coeff(n * k)).collect();
        WittSeries { ring: r.clone(), coeffs }
    }

    /// Verschiebung V_N: T ↦ T^N, exact; output precision N·N_f.
    pub fn verschiebung(&self, n: usize) -> WittSeries {
        assert!(n >= 1, "Verschiebung index must be at least 1");
        let r = &self.ring;
        let mut out = vec![r.zero(); self.coeffs.len() * n];
        for (k, a) in self.coeffs.iter().enumerate() {
            out[(k + 1) * n - 1] = a.clone();
        }
        WittSeries { ring: r.clone(), coeffs: out }
    }

    /// `1 - 2*T + 3*T^2 ; prec=N` with element literals of the coefficient ring.
    pub fn render(&self) -> String {
        let mut all = Vec::with_capacity(self.coeffs.len() + 1);
        all.push(self.ring.one());
        all.extend(self.coeffs.iter().cloned());
        let body = raw::render(&self.ring, &all, "T", true);
        alloc::format!("{body} ; prec={}", self.coeffs.len())
    }
}

fn ghost_coeffs(r: &Ring, a: &[Elem]) -> Vec<Elem> {
    let mut w: Vec<Elem> = Vec::with_capacity(a.len());
    for m in 1..=a.len() {
        let mut acc = r.mul_i64(&a[m - 1], -(m as i64));
        for k in 1..m {
            acc = r.sub(&acc, &r.mul(&a[k - 1], &w[m - k - 1]));
        }
        w.push(acc);
    }
    w
}

fn ghost_invert(r: &Ring, w: &[Elem]) -> Option<Vec<Elem>> {
    let mut a: Vec<Elem> = Vec::with_capacity(w.len());
    for m in 1..=w.len() {
        let mut acc = r.neg(&w[m - 1]);
        for k in 1..m {
            acc = r.sub(&acc, &r.mul(&a[k - 1], &w[m - k - 1]));
        }
        a.push(r.exact_div_int(&acc, m as i64)?);
    }
    Some(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn series_i64(ring: &Ring, coeffs: &[i64]) -> WittSeries {
        WittSeries::new(ring.clone(), coeffs.iter().map(|&c| ring.from_i64(c)).collect())
    }

    #[test]
    fn addition_multiplies_series() {
        let zz = Ring::integers();
        let f = WittSeries::teichmueller(zz.clone(), &zz.from_i64(2), 4);
        let g = WittSeries::teichmueller(zz.clone(), &zz.from_i64(3), 4);
        let sum = f.witt_add(&g).unwrap();
        assert!(sum.eq(&series_i64(&zz, &[-5, 6, 0, 0])));
        // neutral element is the series 1
        let z = WittSeries::zero(zz.clone(), 4);
        assert!(f.witt_add(&z).unwrap().eq(&f));
        // f ⊕ (⊖f) = 0
        assert!(f.witt_add(&f.witt_neg()).unwrap().is_zero());
    }

    #[test]
    fn ghost_of_teichmueller_is_powers() {
        let zz = Ring::integers();
        let f = WittSeries::teichmueller(zz.clone(), &zz.from_i64(3), 5);
        let w = f.ghost();
        let want: Vec<_> = [3i64, 9, 27, 81, 243].iter().map(|&n| zz.from_i64(n)).collect();
        assert_eq!(w.len(), 5);
        for (a, b) in w.iter().zip(&want) {
            assert!(zz.eq(a, b));
        }
        let back = WittSeries::from_ghost(zz.clone(), &w).unwrap();
        assert!(back.eq(&f));
    }

    #[test]
    fn ghost_route_and_table_route_agree() {
        let zz = Ring::integers();
        let mut rng = SplitMix64::new(0x5eed_0001);
        for _ in 0..25 {
            let f = WittSeries::new(zz.clone(), (0..8).map(|_| zz.sample(&mut rng)).collect());
            let g = WittSeries::new(zz.clone(), (0..8).map(|_| zz.sample(&mut rng)).collect());
            let by_ghost = f.witt_mul(&g).unwrap();
            let table = MulTable::with_precision(8).unwrap();
            let by_table = table.product_coeffs(&zz, f.coeffs(), g.coeffs());
            for (a, b) in by_ghost.coeffs().iter().zip(&by_table) {
                assert!(zz.eq(a, b));
            }
        }
    }

    #[test]
    fn teichmueller_is_multiplicative() {
        for ring in [
            Ring::integers(),
            Ring::integers_mod_u64(6).unwrap(),
            Ring::gf(4).unwrap(),
        ] {
            let mut rng = SplitMix64::new(0xabcd);
            for _ in 0..10 {
                let a = ring.sample(&mut rng);
                let b = ring.sample(&mut rng);
                let fa = WittSeries::teichmueller(ring.clone(), &a, 6);
                let fb = WittSeries::teichmueller(ring.clone(), &b, 6);
                let prod = fa.witt_mul(&fb).unwrap();
                let want = WittSeries::teichmueller(ring.clone(), &ring.mul(&a, &b), 6);
                assert!(prod.eq(&want), "[a]⊙[b] = [ab] over {}", ring.descriptor());
            }
        }
    }

    #[test]
    fn unit_one_minus_t() {
        let z6 = Ring::integers_mod_u64(6).unwrap();
        let f = series_i64(&z6, &[1, 4, 2, 5, 0, 3]);
        let one = WittSeries::one(z6.clone(), 6);
        assert!(f.witt_mul(&one).unwrap().eq(&f));
    }

    #[test]
    fn frobenius_two_on_split_quadratic() {
        // f = (1−2T)(1−3T); F_2 f = (1−4T)(1−9T) = 1 − 13T + 36T²
        let zz = Ring::integers();
        let f = series_i64(&zz, &[-5, 6, 0, 0, 0, 0]);
        let f2 = f.frobenius(2).unwrap();
        assert_eq!(f2.precision(), 3);
        assert!(f2.eq(&series_i64(&zz, &[-13, 36, 0])));
    }

    #[test]
    fn frobenius_resultant_matches_ghost_route_over_rationals() {
        let qq = Ring::rationals();
        let mut rng = SplitMix64::new(77);
        for n in [2usize, 3] {
            for _ in 0..8 {
                let f = WittSeries::new(qq.clone(), (0..6).map(|_| qq.sample(&mut rng)).collect());
                let by_ghost = f.frobenius(n).unwrap();
                let by_res = f.frobenius_resultant(n);
                assert!(by_ghost.eq(&by_res), "N = {n}");
            }
        }
    }

    #[test]
    fn frobenius_on_teichmueller_over_torsion_rings() {
        let gf4 = Ring::gf(4).unwrap();
        let x = Elem::Gf(gf4.gf_params().unwrap().gen());
        let f = WittSeries::teichmueller(gf4.clone(), &x, 6);
        let f2 = f.frobenius(2).unwrap();
        let want = WittSeries::teichmueller(gf4.clone(), &gf4.mul(&x, &x), 3);
        assert!(f2.eq(&want));

        let z6 = Ring::integers_mod_u64(6).unwrap();
        let five = z6.from_i64(5);
        let t = WittSeries::teichmueller(z6.clone(), &five, 4);
        let t2 = t.frobenius(2).unwrap();
        let want = WittSeries::teichmueller(z6.clone(), &z6.from_i64(25), 2);
        assert!(t2.eq(&want));
    }

    #[test]
    fn verschiebung_spreads_coefficients() {
        let zz = Ring::integers();
        let f = series_i64(&zz, &[-1, 2]);
        let v2 = f.verschiebung(2);
        assert!(v2.eq(&series_i64(&zz, &[0, -1, 0, 2])));
        // V_1 = id
        assert!(f.verschiebung(1).eq(&f));
    }

    #[test]
    fn frobenius_after_verschiebung_is_nfold_sum() {
        for ring in [Ring::integers(), Ring::integers_mod_u64(6).unwrap()] {
            let mut rng = SplitMix64::new(4242);
            for n in [2usize, 3] {
                for _ in 0..6 {
                    let f =
                        WittSeries::new(ring.clone(), (0..4).map(|_| ring.sample(&mut rng)).collect());
                    let fv = f.verschiebung(n).frobenius(n).unwrap();
                    let nf = f.nfold(n as i64);
                    assert!(fv.eq(&nf), "F_{n}∘V_{n} over {}", ring.descriptor());
                }
            }
        }
    }

    #[test]
    fn render_series_text() {
        let zz = Ring::integers();
        let f = series_i64(&zz, &[-5, 6, 0]);
        assert_eq!(f.render(), "1 - 5*T + 6*T^2 ; prec=3");
        let z = WittSeries::zero(zz, 2);
        assert_eq!(z.render(), "1 ; prec=2");
    }
}
