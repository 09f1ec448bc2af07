//! Complete-integral-closure (Fatou) checks. A domain A with fraction field
//! K is strong Fatou when the reduced coprime representative P/Q of any
//! rational series with coefficients in A already has P, Q ∈ A[T]. The
//! classical witness against this is quasi-integrality: a single d ≠ 0 with
//! d·xⁿ ∈ A for all n forces (1 − xT + dT²)/(1 − xT) to have all series
//! coefficients in A while its reduced denominator keeps the coefficient x.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hankel;
use crate::poly::Poly;
use crate::ratwitt::RatWitt;
use crate::ring::{self, bivar, Elem, Ring};
use crate::rng::SplitMix64;

/// A shipped subring pair A ⊆ K = Quot(A) with decidable membership:
/// the integers in the rationals, polynomials over a finite field in their
/// rational-function field, or the monomial subring k + x·k[x,y] in k(x,y).
#[derive(Debug, Clone)]
pub struct FatouPair {
    a: Ring,
    k: Ring,
}

impl FatouPair {
    pub fn new(a: Ring) -> Result<FatouPair> {
        let k = a.fraction_field()?;
        Ok(FatouPair { a, k })
    }

    pub fn subring(&self) -> &Ring {
        &self.a
    }

    pub fn field(&self) -> &Ring {
        &self.k
    }

    /// Does this fraction-field element lie in the subring?
    pub fn contains(&self, c: &Elem) -> bool {
        ring::retract(&self.a, &self.k, c).is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Reduced P, Q both have coefficients in A: f ∈ W_rat(A).
    InWratA,
    /// Every checked series coefficient lies in A, but the reduced
    /// presentation leaves A[T]: f ∈ W(A) \ W_rat(A) at this precision.
    InWAOnly,
    /// Some series coefficient already fails membership.
    Undetermined,
}

#[derive(Debug, Clone)]
pub struct FatouVerdict {
    pub input: RatWitt,
    pub reduced_p: Poly,
    pub reduced_q: Poly,
    /// Per-coefficient membership of the reduced presentation, labeled
    /// "P[i]" / "Q[i]".
    pub report: Vec<(String, bool)>,
    /// How many series coefficients were tested when the presentation fails.
    pub series_checked: usize,
    pub verdict: Verdict,
}

/// The quasi-integrality witness f = (1 − xT + dT²)/(1 − xT) over K,
/// together with its first `terms` series coefficients, which follow the
/// closed form 1, 0, d, dx, dx², ….
pub fn quasi_integral_witness(
    k: &Ring,
    x: &Elem,
    d: &Elem,
    terms: usize,
) -> Result<(RatWitt, Vec<Elem>)> {
    if !k.is_field() {
        return Err(Error::NotAField);
    }
    if k.is_zero(d) {
        return Err(Error::Domain("quasi-integrality witness needs d ≠ 0".into()));
    }
    let p = Poly::new(k.clone(), vec![k.one(), k.neg(x), d.clone()]);
    let q = Poly::new(k.clone(), vec![k.one(), k.neg(x)]);
    let f = RatWitt::new(k.clone(), p, q)?;
    let mut coeffs = Vec::with_capacity(terms);
    let mut xpow = d.clone();
    for n in 0..terms {
        coeffs.push(match n {
            0 => k.one(),
            1 => k.zero(),
            2 => d.clone(),
            _ => {
                xpow = k.mul(&xpow, x);
                xpow.clone()
            }
        });
    }
    #[cfg(debug_assertions)]
    if terms > 1 {
        let s = f.to_series(terms - 1);
        for (i, c) in coeffs.iter().enumerate().skip(1) {
            debug_assert!(k.eq(s.coeff(i), c), "closed form must match expansion");
        }
    }
    Ok((f, coeffs))
}

/// Decide where a rational series over K sits relative to A: reduce to the
/// coprime representative with constant terms 1, test its coefficients for
/// membership, and when that fails fall back to testing the first
/// `series_prec` expansion coefficients. Series-level verdicts are
/// precision-qualified: they certify consistency, not the infinite tail.
pub fn strong_fatou_check(pair: &FatouPair, f: &RatWitt, series_prec: usize) -> Result<FatouVerdict> {
    if f.ring() != pair.field() {
        return Err(Error::RingMismatch);
    }
    let (p, q) = f.presentation();
    let (p, q) = (p.clone(), q.clone());
    let mut report = Vec::new();
    let mut all = true;
    for (name, poly) in [("P", &p), ("Q", &q)] {
        for (i, c) in poly.coeffs().iter().enumerate() {
            let ok = pair.contains(c);
            all &= ok;
            report.push((format!("{name}[{i}]"), ok));
        }
    }
    if all {
        return Ok(FatouVerdict {
            input: f.clone(),
            reduced_p: p,
            reduced_q: q,
            report,
            series_checked: 0,
            verdict: Verdict::InWratA,
        });
    }
    let s = f.to_series(series_prec);
    let tail_ok = s.coeffs().iter().all(|c| pair.contains(c));
    Ok(FatouVerdict {
        input: f.clone(),
        reduced_p: p,
        reduced_q: q,
        report,
        series_checked: series_prec,
        verdict: if tail_ok { Verdict::InWAOnly } else { Verdict::Undetermined },
    })
}

/// Series-input variant: reconstruct a rational representative over K first
/// (the list starts at a_0 = 1), then run the membership check.
pub fn strong_fatou_check_series(
    pair: &FatouPair,
    list: &[Elem],
    bound: usize,
) -> Result<FatouVerdict> {
    let f = hankel::kronecker_reconstruct(pair.field(), list, bound)?;
    strong_fatou_check(pair, &f, list.len().saturating_sub(1))
}

#[derive(Debug, Clone)]
pub struct CicReport {
    /// x·yⁿ ∈ A held for all tested n.
    pub monsub_quasi_integral: bool,
    /// y itself stays outside A.
    pub monsub_y_outside: bool,
    /// The witness series lives in W(A) but not W_rat(A).
    pub monsub_in_w_a_only: bool,
    pub integer_pass: usize,
    pub integer_total: usize,
    pub poly_pass: usize,
    pub poly_total: usize,
    pub field_trivial: bool,
    pub pass: bool,
}

/// Contrast a non-completely-integrally-closed domain with closed ones:
/// the monomial subring fails the reduced-representative test via its
/// quasi-integral element y, while random reduced fractions over ℤ and
/// GF(2)[x] always clear back into the subring.
pub fn cic_counterexample_suite(seed: u64, samples: usize) -> Result<CicReport> {
    let gf2 = Ring::gf(2).unwrap();
    let monsub = Ring::monsub(gf2.clone())?;
    let pair = FatouPair::new(monsub.clone())?;
    let k = pair.field().clone();
    let bring = k.base().expect("fraction field of a composite").clone();
    let one = bring.base().unwrap().one();
    let xb = Elem::Bivar(bivar::monomial(bring.base().unwrap(), 1, 0, one.clone()));
    let yb = Elem::Bivar(bivar::monomial(bring.base().unwrap(), 0, 1, one.clone()));

    // d = x certifies y as quasi-integral: x·yⁿ ∈ A for every n
    let mut monsub_quasi_integral = true;
    let mut acc = xb.clone();
    for _ in 0..20 {
        let ok = matches!(&acc, Elem::Bivar(m) if bivar::in_monomial_subring(m));
        monsub_quasi_integral &= ok;
        acc = bring.mul(&acc, &yb);
    }
    let monsub_y_outside = ring::retract(&monsub, &bring, &yb).is_none();

    let xk = k.frac(xb, bring.one());
    let yk = k.frac(yb, bring.one());
    let (witness, coeffs) = quasi_integral_witness(&k, &yk, &xk, 20)?;
    let coeffs_in_a = coeffs.iter().all(|c| pair.contains(c));
    let verdict = strong_fatou_check(&pair, &witness, 20)?;
    let monsub_in_w_a_only = coeffs_in_a && verdict.verdict == Verdict::InWAOnly;

    let mut rng = SplitMix64::new(seed);
    let (integer_pass, integer_total) = closed_domain_trial(&Ring::integers(), samples, &mut rng)?;
    let gfx = Ring::poly(gf2, "x");
    let (poly_pass, poly_total) = closed_domain_trial(&gfx, samples, &mut rng)?;

    // a field is its own fraction field, so membership is vacuous
    let qq = Ring::rationals();
    let qpair = FatouPair::new(qq.clone())?;
    let fq = RatWitt::new(
        qq.clone(),
        Poly::new(
            qq.clone(),
            vec![qq.one(), qq.exact_div(&qq.one(), &qq.from_i64(2)).unwrap()],
        ),
        Poly::one(qq.clone()),
    )?;
    let field_trivial = strong_fatou_check(&qpair, &fq, 8)?.verdict == Verdict::InWratA;

    let pass = monsub_quasi_integral
        && monsub_y_outside
        && monsub_in_w_a_only
        && integer_pass == integer_total
        && poly_pass == poly_total
        && field_trivial;
    Ok(CicReport {
        monsub_quasi_integral,
        monsub_y_outside,
        monsub_in_w_a_only,
        integer_pass,
        integer_total,
        poly_pass,
        poly_total,
        field_trivial,
        pass,
    })
}

/// Sample fractions of A[T] polynomials over a strong Fatou domain A and
/// confirm the reduced representative keeps its coefficients in A.
fn closed_domain_trial(a: &Ring, samples: usize, rng: &mut SplitMix64) -> Result<(usize, usize)> {
    let pair = FatouPair::new(a.clone())?;
    let k = pair.field().clone();
    let mut pass = 0;
    for _ in 0..samples {
        let p = sample_unit_poly(a, &k, rng, 3);
        let q = sample_unit_poly(a, &k, rng, 3);
        let f = RatWitt::new(k.clone(), p, q)?;
        if strong_fatou_check(&pair, &f, 8)?.verdict == Verdict::InWratA {
            pass += 1;
        }
    }
    Ok((pass, samples))
}

fn sample_unit_poly(a: &Ring, k: &Ring, rng: &mut SplitMix64, max_deg: usize) -> Poly {
    let deg = (rng.below(max_deg as u64 + 1)) as usize;
    let mut coeffs = vec![k.one()];
    for _ in 0..deg {
        let c = a.sample(rng);
        coeffs.push(ring::embed(a, k, &c).expect("subring embeds"));
    }
    Poly::new(k.clone(), coeffs)
}
