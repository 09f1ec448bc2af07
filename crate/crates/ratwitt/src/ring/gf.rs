//! GF(p^k) as GF(p)[x]/(modulus), with coefficients stored as `Vec<u64>`
//! (ascending degree, trailing zeros trimmed, empty = 0).
//!
//! The modulus is monic and irreducible; irreducibility is certified at ring
//! construction time via the x^(p^k) ≡ x criterion, so a `GfParams` value is
//! always a field description.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Immutable field description: prime p and monic irreducible modulus over GF(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfParams {
    p: u64,
    /// Ascending coefficients; last entry is 1 (monic). Length = k + 1.
    modulus: Vec<u64>,
}

pub type GfElem = Vec<u64>;

impl GfParams {
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::BadRing(format_args_string(p)));
        }
        let modulus = trim(modulus);
        if modulus.len() < 2 {
            return Err(Error::BadRing("GF modulus must have degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadRing("GF modulus coefficients must be reduced mod p".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::BadRing("GF modulus must be monic".into()));
        }
        let params = GfParams { p, modulus };
        if params.k() > 1 && !params.modulus_is_irreducible() {
            return Err(Error::BadRing("GF modulus is reducible".into()));
        }
        Ok(params)
    }

    /// Field with the shipped default modulus for p^k.
    pub fn with_default_modulus(p: u64, k: usize) -> Result<Self> {
        let m = default_modulus(p, k).ok_or_else(|| {
            Error::BadRing(alloc::format!("no default modulus shipped for GF({p}^{k})"))
        })?;
        GfParams::new(p, m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Field order p^k.
    pub fn order(&self) -> u64 {
        self.p.pow(self.k() as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> GfElem {
        vec![]
    }

    pub fn one(&self) -> GfElem {
        vec![1]
    }

    /// Class of the generator x (reduced if k = 1).
    pub fn gen(&self) -> GfElem {
        if self.k() == 1 {
            // x ≡ -modulus[0] mod p
            let c = (self.p - self.modulus[0]) % self.p;
            trim(vec![c])
        } else {
            vec![0, 1]
        }
    }

    pub fn from_i64(&self, n: i64) -> GfElem {
        let p = self.p as i64;
        let r = ((n % p) + p) % p;
        trim(vec![r as u64])
    }

    pub fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        padd(self.p, a, b)
    }

    pub fn sub(&self, a: &GfElem, b: &GfElem) -> GfElem {
        psub(self.p, a, b)
    }

    pub fn neg(&self, a: &GfElem) -> GfElem {
        pneg(self.p, a)
    }

    pub fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        self.reduce(pmul(self.p, a, b))
    }

    pub fn inv(&self, a: &GfElem) -> Option<GfElem> {
        if a.is_empty() {
            return None;
        }
        // Extended Euclid in GF(p)[x] against the modulus.
        let (g, s, _) = pxgcd(self.p, a, &self.modulus);
        debug_assert_eq!(g.len(), 1); // modulus irreducible and a != 0
        let c = modinv_u64(g[0], self.p)?;
        Some(self.reduce(pscale(self.p, &s, c)))
    }

    pub fn pow(&self, a: &GfElem, mut e: u64) -> GfElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius x ↦ x^p iterated `times`.
    pub fn frobenius(&self, a: &GfElem, times: u32) -> GfElem {
        let mut v = a.clone();
        for _ in 0..times {
            v = self.pow(&v, self.p);
        }
        v
    }

    pub fn reduce(&self, v: Vec<u64>) -> GfElem {
        prem(self.p, &v, &self.modulus)
    }

    /// All p^k field elements in lexicographic coefficient order.
    pub fn enumerate(&self) -> Vec<GfElem> {
        let k = self.k();
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = vec![0u64; k];
        loop {
            out.push(trim(cur.clone()));
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                cur[i] += 1;
                if cur[i] < self.p {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// Render as a polynomial in x, descending degree, e.g. `x^2+2*x+1`.
    pub fn render(&self, a: &GfElem) -> String {
        if a.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (d, &c) in a.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            match (d, c) {
                (0, _) => s.push_str(&c.to_string()),
                (1, 1) => s.push('x'),
                (1, _) => s.push_str(&alloc::format!("{c}*x")),
                (_, 1) => s.push_str(&alloc::format!("x^{d}")),
                (_, _) => s.push_str(&alloc::format!("{c}*x^{d}")),
            }
        }
        s
    }

    fn modulus_is_irreducible(&self) -> bool {
        poly_is_irreducible(self.p, &self.modulus)
    }
}

/// Monic degree-k polynomial irreducibility over GF(p):
/// x^(p^k) ≡ x mod m, and gcd(x^(p^(k/ℓ)) − x, m) = 1 for every prime ℓ | k.
pub fn poly_is_irreducible(p: u64, m: &[u64]) -> bool {
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let xq = pmodpow_frobenius(p, &x, k as u32, m);
    if xq != prem(p, &x, m) {
        return false;
    }
    for ell in distinct_prime_factors(k) {
        if !coprime_frobenius_step(p, k / ell, m) {
            return false;
        }
    }
    true
}

fn distinct_prime_factors(mut k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= k {
        if k % d == 0 {
            out.push(d);
            while k % d == 0 {
                k /= d;
            }
        }
        d += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}

fn coprime_frobenius_step(p: u64, e: usize, m: &[u64]) -> bool {
    let x = vec![0u64, 1];
    let xe = pmodpow_frobenius(p, &x, e as u32, m);
    let diff = psub(p, &xe, &prem(p, &x, m));
    let (g, _, _) = pxgcd(p, &diff, m);
    g.len() == 1
}

/// x ↦ x^(p^e) mod m by repeated p-th powers.
fn pmodpow_frobenius(p: u64, a: &[u64], e: u32, m: &[u64]) -> Vec<u64> {
    let mut v = prem(p, a, m);
    for _ in 0..e {
        v = pmodpow(p, &v, p, m);
    }
    v
}

fn pmodpow(p: u64, a: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut base = prem(p, a, m);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = prem(p, &pmul(p, &acc, &base), m);
        }
        base = prem(p, &pmul(p, &base, &base), m);
        e >>= 1;
    }
    acc
}

// ---- raw polynomial arithmetic over GF(p), Vec<u64> ascending ----

pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn padd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
        out[i] = x % p;
    }
    trim(out)
}

pub fn pneg(p: u64, a: &[u64]) -> Vec<u64> {
    trim(a.iter().map(|&c| (p - c) % p).collect())
}

pub fn psub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    padd(p, a, &pneg(p, b))
}

pub fn pscale(p: u64, a: &[u64], c: u64) -> Vec<u64> {
    trim(a.iter().map(|&x| mulmod_u64(x, c % p, p)).collect())
}

pub fn pmul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod_u64(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of a by b (b nonzero; leading coefficient inverted mod p).
pub fn prem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    pdivrem(p, a, b).1
}

pub fn pdivrem(p: u64, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lb_inv = modinv_u64(*b.last().unwrap(), p).expect("leading coeff invertible");
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = mulmod_u64(*r.last().unwrap(), lb_inv, p);
        q[dr - db] = c;
        for i in 0..=db {
            let t = mulmod_u64(c, b[i], p);
            let idx = dr - db + i;
            r[idx] = (r[idx] + p - t % p) % p;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    (trim(q), r)
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g (g not normalized monic).
pub fn pxgcd(p: u64, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![1u64];
    let mut s1 = vec![];
    let mut t0 = vec![];
    let mut t1 = vec![1u64];
    while !r1.is_empty() {
        let (q, r) = pdivrem(p, &r0, &r1);
        let ns = psub(p, &s0, &pmul(p, &q, &s1));
        let nt = psub(p, &t0, &pmul(p, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    (r0, s0, t0)
}

pub fn mulmod_u64(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn modinv_u64(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    // Fermat: p prime.
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, base, p);
        }
        base = mulmod_u64(base, base, p);
        e >>= 1;
    }
    Some(acc)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn format_args_string(p: u64) -> String {
    alloc::format!("{p} is not prime")
}

/// Shipped Conway-polynomial moduli (ascending coefficients).
/// Irreducibility of every entry is re-verified by a unit test.
pub fn default_modulus(p: u64, k: usize) -> Option<Vec<u64>> {
    let m: &[u64] = match (p, k) {
        (2, 1) => &[1, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (2, 7) => &[1, 1, 0, 0, 0, 0, 0, 1],
        (2, 8) => &[1, 0, 1, 1, 1, 0, 0, 0, 1],
        (3, 1) => &[1, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (5, 1) => &[3, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (5, 4) => &[2, 4, 4, 0, 1],
        (7, 1) => &[4, 1],
        (7, 2) => &[3, 6, 1],
        (7, 3) => &[4, 0, 6, 1],
        (7, 4) => &[3, 4, 5, 0, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

/// Factor a prime power q = p^k; None if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut v = q;
            let mut k = 0;
            while v % p == 0 {
                v /= p;
                k += 1;
            }
            return if v == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}
