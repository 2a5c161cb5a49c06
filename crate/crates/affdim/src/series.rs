//! Certified summation of the infinite series behind pressure
//! functions: explicit partial sums plus integral-comparison tail
//! brackets, returned as [`Enclosure`]s.
//!
//! Tail brackets use the midpoint rule on the comparison function
//! (second-derivative error bound), which keeps brackets tight enough
//! to certify sums like Σ 1/(d(d−1)) = 1 to 1e−12 with ~10⁴ explicit
//! terms. Divergent regimes are returned as `hi = +∞`, never as errors.

use crate::digits::SignDigits;
use crate::enclosure::Enclosure;

/// Relative slack absorbing double-precision rounding of partial sums.
const SUM_SLACK: f64 = 1e-14;

/// Compensated (Kahan) summation.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for x in iter {
        let y = x - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// One series term (1/(d(d−1)))^e.
pub fn digit_term(d: u64, e: f64) -> f64 {
    let df = d as f64;
    (df * (df - 1.0)).powf(-e)
}

/// Σ_{n > n_last} n^{−s} for s > 1, bracketed by the midpoint rule:
/// the sum lies in [I − E, I] with I = (n_last + 1/2)^{1−s} / (s − 1).
fn zeta_tail(s: f64, n_last: u64) -> Enclosure {
    debug_assert!(s > 1.0);
    let x = n_last as f64 + 0.5;
    let integral = x.powf(1.0 - s) / (s - 1.0);
    let err = (s * (s + 1.0) * x.powf(-s - 2.0) + s * x.powf(-s - 1.0)) / 24.0;
    Enclosure::new(
        ((integral - err) * (1.0 - SUM_SLACK)).max(0.0),
        integral * (1.0 + SUM_SLACK),
    )
}

/// Σ_{n ≥ n0} n^{−s}: explicit terms then a zeta tail. Divergent for s ≤ 1.
pub fn power_sum(s: f64, n0: u64, terms: usize) -> Enclosure {
    let n_last = n0 + terms as u64;
    let partial = kahan_sum((n0..=n_last).map(|n| (n as f64).powf(-s)));
    let partial = Enclosure::around(partial, SUM_SLACK);
    if s <= 1.0 {
        return Enclosure::divergent(partial.lo);
    }
    partial.add(&zeta_tail(s, n_last))
}

/// Σ_{d > d_last} (1/(d(d−1)))^e for e > 1/2.
///
/// Uses d(d−1) = (d − 1/2)² − 1/4: the shifted power (d − 1/2)^{−2e} is
/// bracketed by the midpoint rule and the residual factor
/// (1 − 1/(4(d−1/2)²))^{−e} is monotone, so its value at d_last + 1
/// bounds the whole tail.
fn luroth_tail(e: f64, d_last: u64) -> Enclosure {
    debug_assert!(e > 0.5);
    let big_d = d_last as f64; // shifted midpoint lands on integer D
    let integral = big_d.powf(1.0 - 2.0 * e) / (2.0 * e - 1.0);
    let err =
        (2.0 * e * (2.0 * e + 1.0) * big_d.powf(-2.0 * e - 2.0) + 2.0 * e * big_d.powf(-2.0 * e - 1.0))
            / 24.0;
    let h_max = (1.0 - 1.0 / (4.0 * (big_d + 0.5) * (big_d + 0.5))).powf(-e);
    Enclosure::new(
        ((integral - err) * (1.0 - SUM_SLACK)).max(0.0),
        integral * h_max * (1.0 + SUM_SLACK),
    )
}

/// Σ over a cofinite digit range of (1/(d(d−1)))^e.
fn cofinite_sum(
    min_d: u64,
    exclusions: &std::collections::BTreeSet<u64>,
    e: f64,
    terms: usize,
) -> Enclosure {
    let d_last = min_d + terms as u64;
    let partial = kahan_sum(
        (min_d..=d_last)
            .filter(|d| !exclusions.contains(d))
            .map(|d| digit_term(d, e)),
    );
    let partial = Enclosure::around(partial, SUM_SLACK);
    if e <= 0.5 {
        // terms ≥ 1/d^{2e} ≥ 1/d: the comparison series diverges
        return Enclosure::divergent(partial.lo);
    }
    let mut tail = luroth_tail(e, d_last);
    for &d in exclusions.iter().filter(|&&d| d > d_last) {
        let t = digit_term(d, e);
        tail = Enclosure::new((tail.lo - t).max(0.0), tail.hi - t * (1.0 - SUM_SLACK));
    }
    partial.add(&tail)
}

/// Σ_{n ≥ 2} (1/(d(d−1)))^e over the power family d = n^k + c.
fn power_family_sum(k: u32, c: u8, e: f64, terms: usize) -> Enclosure {
    let s = 2.0 * k as f64 * e;
    let n_last = 1 + terms as u64;
    let cf = c as f64;
    let partial = kahan_sum((2..=n_last).map(|n| {
        let d = (n as f64).powi(k as i32) + cf;
        (d * (d - 1.0)).powf(-e)
    }));
    let partial = Enclosure::around(partial, SUM_SLACK);
    if s <= 1.0 {
        return Enclosure::divergent(partial.lo);
    }
    // d(d−1) = (u + w)² − 1/4 with u = n^k, w = c − 1/2, so each term is
    // n^{−2ke} · (1 + w/u)^{−2e} · (1 − q)^{−e}; both correction factors
    // are monotone in n and pinched at n_last + 1.
    let z = zeta_tail(s, n_last);
    let u1 = ((n_last + 1) as f64).powi(k as i32);
    let w = cf - 0.5;
    let m_at = (1.0 + w / u1).powf(-2.0 * e);
    let (m_lo, m_hi) = if c == 0 { (1.0, m_at) } else { (m_at, 1.0) };
    let q_at = 1.0 / (4.0 * (u1 + w) * (u1 + w));
    let h_hi = (1.0 - q_at).powf(-e);
    let tail = Enclosure::new(
        (z.lo * m_lo * (1.0 - SUM_SLACK)).max(0.0),
        z.hi * m_hi * h_hi * (1.0 + SUM_SLACK),
    );
    partial.add(&tail)
}

/// Certified Σ_{d ∈ sign} (1/(d(d−1)))^e.
///
/// For explicit finite sets the enclosure has zero tail (only rounding
/// slack). Infinite shapes diverge (hi = +∞) when the comparison series
/// does; that is a legal output, not an error.
pub fn sign_digit_sum(sign: &SignDigits, e: f64, terms: usize) -> Enclosure {
    match sign {
        SignDigits::Empty => Enclosure::exact(0.0),
        SignDigits::Explicit(set) => {
            let v = kahan_sum(set.iter().map(|&d| digit_term(d, e)));
            Enclosure::around(v, SUM_SLACK)
        }
        SignDigits::Cofinite { min_d, exclusions } => cofinite_sum(*min_d, exclusions, e, terms),
        SignDigits::PowerFamily { k, c } => power_family_sum(*k, *c, e, terms),
    }
}

/// Number of digits in the sign set; `None` when countably infinite.
pub fn sign_cardinality(sign: &SignDigits) -> Option<usize> {
    match sign {
        SignDigits::Empty => Some(0),
        SignDigits::Explicit(set) => Some(set.len()),
        _ => None,
    }
}
