//! The signed-Lüroth map family: the interval maps φ_{s,d}, the planar
//! skew-product maps A^p_{s,d}, the expansion codec, and the dimension
//! formulas for restricted digit sets F_J and planar sets 𝓕_J^p.

use crate::bisect::{le_threshold, refine};
use crate::digits::{DigitPair, DigitSetSpec, SignDigits};
use crate::enclosure::Enclosure;
use crate::error::Error;
use crate::pressure::{Branch, DimensionResult, Method};
use crate::series::{kahan_sum, sign_digit_sum};
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const BISECT_FLOOR: f64 = 1e-9;
const SLACK: f64 = 1e-14;

/// φ_{s,d}(x) = (−1)^s · x/(d(d−1)) + 1/(d−s), mapping [0,1] into
/// [1/d, 1/(d−1)].
pub fn phi_map(pair: DigitPair, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidInput(format!("x must lie in [0,1], got {x}")));
    }
    let sign = if pair.s == 0 { 1.0 } else { -1.0 };
    Ok(sign * x * pair.ratio() + 1.0 / (pair.d - pair.s as u64) as f64)
}

/// f^p_s: the two similarities on the w-axis, f^p_0(w) = pw and
/// f^p_1(w) = (1−p)w + p.
pub fn f_map(p: f64, s: u8, w: f64) -> f64 {
    if s == 0 {
        p * w
    } else {
        (1.0 - p) * w + p
    }
}

/// A^p_{s,d}(w,x) = (f^p_s(w), φ_{s,d}(x)) on the unit square.
pub fn affine_map_2d(p: f64, pair: DigitPair, point: (f64, f64)) -> Result<(f64, f64)> {
    let (w, x) = point;
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::InvalidInput(format!("w must lie in [0,1], got {w}")));
    }
    Ok((f_map(p, pair.s, w), phi_map(pair, x)?))
}

/// Partial sum of the signed Lüroth expansion:
/// Σ_m (−1)^(Σ_{i<m} s_i) (d_m − 1 + s_m) / Π_{i≤m} d_i(d_i−1).
pub fn evaluate_expansion(digits: &[DigitPair]) -> f64 {
    let mut sign = 1.0;
    let mut denom = 1.0;
    let terms = digits.iter().map(|pair| {
        denom *= pair.d as f64 * (pair.d as f64 - 1.0);
        let term = sign * (pair.d as f64 - 1.0 + pair.s as f64) / denom;
        if pair.s == 1 {
            sign = -sign;
        }
        term
    });
    kahan_sum(terms)
}

/// How signs are chosen when expanding a real number.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum ExpansionStrategy {
    /// All signs 0 — the classical Lüroth system.
    AlwaysLuroth,
    /// All signs 1 — the alternating Lüroth system.
    AlwaysAlternating,
    /// Signs drawn i.i.d. with P(s = 0) = p from a seeded generator.
    Bernoulli { p: f64, seed: u64 },
    /// Fixed sign pattern, cycled.
    Prescribed(Vec<u8>),
}

impl ExpansionStrategy {
    fn validate(&self) -> Result<()> {
        match self {
            ExpansionStrategy::Bernoulli { p, .. } if !(*p > 0.0 && *p < 1.0) => Err(
                Error::InvalidInput(format!("Bernoulli p must lie in (0,1), got {p}")),
            ),
            ExpansionStrategy::Prescribed(seq) if seq.is_empty() || seq.iter().any(|&s| s > 1) => {
                Err(Error::InvalidInput("prescribed signs must be a non-empty 0/1 sequence".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Signed Lüroth digits of x ∈ (0,1], up to `n` of them.
///
/// Each step picks the digit d with the remainder in (1/d, 1/(d−1)]
/// (boundary x = 1/m gets d = m+1), the sign from the strategy, then
/// pulls the remainder back through the inverse branch. A remainder of
/// exactly 0 (possible with sign 1 at a right endpoint) terminates the
/// expansion early with an exact finite representation.
pub fn expand(x: f64, strategy: &ExpansionStrategy, n: usize) -> Result<Vec<DigitPair>> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::InvalidInput(format!("x must lie in (0,1], got {x}")));
    }
    strategy.validate()?;
    let mut rng = match strategy {
        ExpansionStrategy::Bernoulli { seed, .. } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut digits = Vec::with_capacity(n);
    let mut y = x;
    for step in 0..n {
        if y <= 0.0 {
            break; // exact finite expansion reached
        }
        let d = (1.0 / y).floor() as u64 + 1;
        let s = match strategy {
            ExpansionStrategy::AlwaysLuroth => 0,
            ExpansionStrategy::AlwaysAlternating => 1,
            ExpansionStrategy::Bernoulli { p, .. } => {
                u8::from(!rng.as_mut().unwrap().gen_bool(*p))
            }
            ExpansionStrategy::Prescribed(seq) => seq[step % seq.len()],
        };
        let pair = DigitPair::new(s, d);
        digits.push(pair);
        // inverse branch of φ_{s,d}
        let sign = if s == 0 { 1.0 } else { -1.0 };
        y = sign * (y - 1.0 / (d - s as u64) as f64) / pair.ratio();
        y = y.clamp(-1.0, 1.0);
    }
    Ok(digits)
}

fn finite_digit_sum(j: &DigitSetSpec, r: f64) -> f64 {
    let pairs = j.finite_pairs().expect("finite digit set");
    kahan_sum(pairs.iter().map(|p| p.ratio().powf(r)))
}

/// Hausdorff/box dimension of F_J for finite J: the Hutchinson root of
/// Σ_{(s,d)∈J} (1/(d(d−1)))^r = 1.
pub fn dim_f_finite(j: &DigitSetSpec, tol: f64) -> Result<DimensionResult> {
    j.validate()?;
    if !j.is_finite() {
        return Err(Error::InvalidInput("dim_f_finite needs a finite digit set".into()));
    }
    let has_02 = j.contains(DigitPair::new(0, 2));
    let has_12 = j.contains(DigitPair::new(1, 2));
    if has_02 && has_12 {
        // F_J contains (1/2, 1], so the dimension is 1 regardless of the
        // rest of J (and no separation hypothesis is needed).
        let mut res = DimensionResult::pinned(1.0, Method::HutchinsonFinite);
        res.flags.exact = true;
        res.flags.box_packing_equal = true;
        return Ok(res);
    }
    if j.len_finite() == Some(1) {
        let mut res = DimensionResult::pinned(0.0, Method::HutchinsonFinite);
        res.flags.degenerate = true;
        res.flags.exact = true;
        res.flags.box_packing_equal = true;
        return Ok(res);
    }
    let mut q = |r: f64, _terms: usize| Enclosure::around(finite_digit_sum(j, r), SLACK);
    let (lo, hi) = refine(&mut q, 1.0, BISECT_FLOOR, 1.0, tol);
    let mut res = DimensionResult::from_bracket(lo, hi, Method::HutchinsonFinite);
    // the Hutchinson value is only an upper bound without a separation
    // certificate; (0,1/2) is feasible when no digit 2 appears at all
    res.flags.requires_osc = has_02 || has_12;
    res.flags.box_packing_equal = true;
    Ok(res)
}

fn infinite_series(j: &DigitSetSpec, r: f64, terms: usize) -> Enclosure {
    sign_digit_sum(&j.sign0, r, terms).add(&sign_digit_sum(&j.sign1, r, terms))
}

/// Hausdorff and box/packing dimensions of F_J for countably infinite
/// J: Hausdorff is the series infimum, box and packing are its maximum
/// with the box dimension of the digit point set. When J reaches digit
/// 2 the infimum is only an upper bound (flagged `requires_osc`),
/// except for a full cofinite range from 2 where F_J = (0,1] exactly.
pub fn dim_f_infinite(j: &DigitSetSpec, tol: f64) -> Result<(DimensionResult, DimensionResult)> {
    j.validate()?;
    if j.is_finite() {
        return Err(Error::InvalidInput("dim_f_infinite needs an infinite digit set".into()));
    }
    // A full cofinite range starting at 2 already realizes every point
    // of (0,1] as an expansion with that fixed sign, so F_J = (0,1].
    let full_from_two = |sign: &SignDigits| {
        matches!(sign, SignDigits::Cofinite { min_d: 2, exclusions } if exclusions.is_empty())
    };
    let has_digit_two = j.contains(DigitPair::new(0, 2)) || j.contains(DigitPair::new(1, 2));
    let mut q = |r: f64, terms: usize| infinite_series(j, r, terms);
    let (lo, hi) = refine(&mut q, 1.0, BISECT_FLOOR, 1.0, tol);
    let mut hausdorff = if full_from_two(&j.sign0) || full_from_two(&j.sign1) {
        DimensionResult::pinned(1.0, Method::InfinitePressure)
    } else {
        DimensionResult::from_bracket(lo, hi, Method::InfinitePressure)
    };
    // with digit 2 present the maps leave the feasible open set (0,1/2),
    // so the series root is only an upper bound in general
    hausdorff.flags.exact = !has_digit_two || full_from_two(&j.sign0) || full_from_two(&j.sign1);
    hausdorff.flags.requires_osc = !hausdorff.flags.exact;

    let points = box_dim_digit_points(j)?;
    let mut box_packing = if points.value > hausdorff.bracket.hi {
        points
    } else if points.value < hausdorff.bracket.lo {
        DimensionResult {
            method: Method::BoxPoints,
            ..hausdorff
        }
    } else {
        DimensionResult {
            value: hausdorff.value.max(points.value),
            bracket: Enclosure::new(
                hausdorff.bracket.lo.max(points.bracket.lo),
                hausdorff.bracket.hi.max(points.bracket.hi),
            ),
            method: Method::BoxPoints,
            active_branch: None,
            flags: hausdorff.flags,
        }
    };
    box_packing.flags.exact = true;
    box_packing.flags.box_packing_equal = true;
    Ok((hausdorff, box_packing))
}

/// Upper box dimension of the digit point set {1/(d−s) : (s,d) ∈ J}:
/// 0 for finite shapes, 1/2 for cofinite ranges (points ~ 1/n), and
/// 1/(k+1) for the power family d = n^k + c.
pub fn box_dim_digit_points(j: &DigitSetSpec) -> Result<DimensionResult> {
    j.validate()?;
    let shape_dim = |sign: &SignDigits| match sign {
        SignDigits::Empty | SignDigits::Explicit(_) => 0.0,
        SignDigits::Cofinite { .. } => 0.5,
        SignDigits::PowerFamily { k, .. } => 1.0 / (*k as f64 + 1.0),
    };
    let value = shape_dim(&j.sign0).max(shape_dim(&j.sign1));
    let mut res = DimensionResult::pinned(value, Method::BoxPoints);
    res.flags.exact = true;
    res.flags.box_packing_equal = true;
    Ok(res)
}

/// Exact mesh count N_δ of the digit point set {1/(d−s) : (s,d) ∈ J}
/// on the half-open δ-mesh of [0,1]: points below δ all land in cell 0,
/// so only finitely many digits need enumerating.
pub fn digit_points_box_count(j: &DigitSetSpec, delta: f64) -> Result<u64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidInput(format!("delta must lie in (0,1], got {delta}")));
    }
    let mut cells = std::collections::BTreeSet::new();
    for s in [0u8, 1u8] {
        let sign = j.sign(s);
        let cap = (1.0 / delta).floor() as u64 + 1 + s as u64;
        for d in sign.iter_digits().take_while(|&d| d <= cap) {
            let x = 1.0 / (d - s as u64) as f64;
            cells.insert((x / delta).floor() as u64);
        }
        if !sign.is_finite() {
            cells.insert(0); // accumulation point at 0
        }
    }
    Ok(cells.len() as u64)
}

/// Hausdorff dimension of the non-autonomous limit set for an
/// eventually periodic schedule of finite alphabets J_k ⊆ {0,1}×ℕ≥3:
/// the root of the period-average of the log sums, i.e. of
/// Π_{k in period} Σ_{(s,d)∈J_k} (1/(d(d−1)))^r = 1.
pub fn dim_nonautonomous(
    preperiod: &[DigitSetSpec],
    period: &[DigitSetSpec],
    tol: f64,
) -> Result<DimensionResult> {
    if period.is_empty() {
        return Err(Error::InvalidInput("schedule period must be non-empty".into()));
    }
    for j in preperiod.iter().chain(period) {
        j.validate()?;
        if !j.is_finite() {
            return Err(Error::InvalidInput("every scheduled alphabet must be finite".into()));
        }
        if j.min_digit() == Some(2) {
            return Err(Error::InvalidInput(
                "scheduled alphabets must use digits ≥ 3".into(),
            ));
        }
    }
    let mut q = |r: f64, _terms: usize| {
        let prod = period.iter().map(|j| finite_digit_sum(j, r)).product::<f64>();
        Enclosure::around(prod, SLACK * period.len() as f64)
    };
    if le_threshold(&mut q, BISECT_FLOOR, 1.0) {
        let mut res = DimensionResult::from_bracket(0.0, BISECT_FLOOR, Method::NonAutonomous);
        res.flags.degenerate = true;
        return Ok(res);
    }
    let (lo, hi) = refine(&mut q, 1.0, BISECT_FLOOR, 1.0, tol);
    Ok(DimensionResult::from_bracket(lo, hi, Method::NonAutonomous))
}

fn fiber_sum(digits: &[u64], t: f64) -> f64 {
    kahan_sum(digits.iter().map(|&d| DigitPair::new(0, d).ratio().powf(t)))
}

/// Hausdorff dimension of the Bernoulli fiber: the unique t with
/// (Σ_{d∈I0} (1/(d(d−1)))^t)^p · (Σ_{d∈I1} (1/(d(d−1)))^t)^(1−p) = 1.
pub fn fiber_dimension(i0: &[u64], i1: &[u64], p: f64, tol: f64) -> Result<DimensionResult> {
    if i0.is_empty() || i1.is_empty() {
        return Err(Error::InvalidInput("fiber digit sets must be non-empty".into()));
    }
    if i0.iter().chain(i1).any(|&d| d < 2) {
        return Err(Error::InvalidInput("digits must be ≥ 2".into()));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidInput(format!("p must lie in (0,1), got {p}")));
    }
    let mut q = |t: f64, _terms: usize| {
        Enclosure::around(fiber_sum(i0, t).powf(p) * fiber_sum(i1, t).powf(1.0 - p), SLACK)
    };
    if le_threshold(&mut q, BISECT_FLOOR, 1.0) {
        // both fibers are single points (or the geometric mean never
        // exceeds 1): dimension 0
        let mut res = DimensionResult::pinned(0.0, Method::Fiber);
        res.flags.degenerate = true;
        return Ok(res);
    }
    let (lo, hi) = refine(&mut q, 1.0, BISECT_FLOOR, 1.0, tol);
    Ok(DimensionResult::from_bracket(lo, hi, Method::Fiber))
}

fn enclosure_geo_mean(e0: &Enclosure, e1: &Enclosure, p: f64) -> Enclosure {
    let hi = if e0.hi.is_infinite() || e1.hi.is_infinite() {
        f64::INFINITY
    } else {
        (e0.hi.powf(p) * e1.hi.powf(1.0 - p)).next_up()
    };
    Enclosure::new((e0.lo.powf(p) * e1.lo.powf(1.0 - p)).next_down().max(0.0), hi)
}

/// Hausdorff dimension (lower bound in general, exact when I₀ = I₁) of
/// the planar set 𝓕_J^p: 1 + inf{r ∈ (0,1] : geometric-mean sum ≤ 1}.
pub fn dim_2d(j: &DigitSetSpec, p: f64, tol: f64) -> Result<DimensionResult> {
    j.validate()?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidInput(format!("p must lie in (0,1), got {p}")));
    }
    if !j.both_signs_present() {
        return Err(Error::InvalidInput(
            "dim_2d needs digits on both signs (I0 and I1 non-empty)".into(),
        ));
    }
    let mut q = |r: f64, terms: usize| {
        enclosure_geo_mean(
            &sign_digit_sum(&j.sign0, r, terms),
            &sign_digit_sum(&j.sign1, r, terms),
            p,
        )
    };
    let mut res = if le_threshold(&mut q, BISECT_FLOOR, 1.0) {
        let mut res = DimensionResult::from_bracket(1.0, 1.0 + BISECT_FLOOR, Method::TwoDFormula);
        res.flags.degenerate = true;
        res
    } else {
        let (lo, hi) = refine(&mut q, 1.0, BISECT_FLOOR, 1.0, tol);
        DimensionResult::from_bracket(1.0 + lo, 1.0 + hi, Method::TwoDFormula)
    };
    let equal_fibers = j.sign0 == j.sign1;
    res.flags.exact = equal_fibers;
    res.flags.lower_bound_only = !equal_fibers;
    res.flags.box_packing_equal = equal_fibers && j.is_finite();
    Ok(res)
}

fn luroth_projection_pressure(j: &DigitSetSpec, p: f64, r: f64, terms: usize) -> Enclosure {
    let weights = [p, 1.0 - p];
    let mut v1 = Enclosure::exact(0.0);
    let mut v2 = Enclosure::exact(0.0);
    for s in [0u8, 1u8] {
        let w = weights[s as usize];
        v1 = v1.add(&sign_digit_sum(j.sign(s), r - 1.0, terms).scale(w));
        v2 = v2.add(&sign_digit_sum(j.sign(s), 1.0, terms).scale(w.powf(r - 1.0)));
    }
    v1.max(&v2)
}

fn luroth_simplified_pressure(j: &DigitSetSpec, p: f64, r: f64, terms: usize) -> Enclosure {
    let weights = [p, 1.0 - p];
    let mut v1 = Enclosure::exact(0.0);
    for s in [0u8, 1u8] {
        v1 = v1.add(&sign_digit_sum(j.sign(s), r - 1.0, terms).scale(weights[s as usize]));
    }
    v1
}

/// Affinity dimension of the Lüroth family {L^p_{s,d} : (s,d) ∈ J}
/// with both signs present: always in [1,2], the infimum of r with the
/// projected max-sum ≤ 1. When Σ 1/(d(d−1)) ≤ 1, J = {0,1}×I, or
/// p = 1/2, the single-sum simplification is computed as a consistency
/// check.
pub fn luroth_affinity_dimension(j: &DigitSetSpec, p: f64, tol: f64) -> Result<DimensionResult> {
    j.validate()?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidInput(format!("p must lie in (0,1), got {p}")));
    }
    if !j.both_signs_present() {
        return Err(Error::InvalidInput(
            "luroth_affinity_dimension needs both signs present".into(),
        ));
    }
    let mut q = |r: f64, terms: usize| luroth_projection_pressure(j, p, r, terms);
    let (lo, hi) = refine(&mut q, 1.0, 1.0, 2.0, tol);
    let mut res = DimensionResult::from_bracket(lo, hi, Method::InfinitePressure);
    res.active_branch = Some(Branch::R12);
    res.flags.exact = true;

    let simplifies = j.sign0 == j.sign1
        || p == 0.5
        || infinite_series(j, 1.0, 65_536).certainly_le(1.0);
    if simplifies {
        let mut q1 = |r: f64, terms: usize| luroth_simplified_pressure(j, p, r, terms);
        let (slo, shi) = refine(&mut q1, 1.0, 1.0, 2.0, tol);
        let simplified = 0.5 * (slo + shi);
        if (simplified - res.value).abs() > 2.0 * tol + (hi - lo) {
            return Err(Error::ToleranceNotReached(format!(
                "simplified affinity form disagrees: {} vs {}",
                simplified, res.value
            )));
        }
    }
    Ok(res)
}

/// Pass/fail report of the feasible-open-set inequality chain for
/// J = {(0,2),(0,d),(1,d)}, evaluated in exact rational arithmetic.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OscReport {
    pub d: u64,
    pub k: u32,
    /// φ^k_{0,2}(1/(d−1)) ≤ 1 − 1/(d−1) < 1 − 1/d ≤ φ^{k+1}_{0,2}(1/d)
    pub chain_holds: bool,
    /// d² − 2d − 1 > 0
    pub discriminant_holds: bool,
    pub pass: bool,
    /// The four chain quantities, as exact fractions.
    pub chain: [String; 4],
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// φ^k_{0,2}(x) = x/2^k + 1 − 1/2^k, exactly.
fn phi02_iterate(x: &BigRational, k: u32) -> BigRational {
    let pow = BigRational::new(BigInt::one(), BigInt::from(2u64).pow(k));
    x * &pow + BigRational::one() - pow
}

/// Exact-arithmetic verification that J = {(0,2),(0,d),(1,d)} satisfies
/// the OSC with the staircase feasible open set, for d ≥ 3.
pub fn osc_example_check(d: u64) -> Result<OscReport> {
    if d < 3 {
        return Err(Error::InvalidInput("the OSC example needs d ≥ 3".into()));
    }
    let k = ((d - 1) as f64).log2().ceil() as u32 - 1;
    let one = BigRational::one();
    let a = phi02_iterate(&rat(1, (d - 1) as i64), k);
    let b = &one - rat(1, (d - 1) as i64);
    let c = &one - rat(1, d as i64);
    let e = phi02_iterate(&rat(1, d as i64), k + 1);
    let chain_holds = a <= b && b < c && c <= e;
    let discriminant_holds = d * d > 2 * d + 1;
    Ok(OscReport {
        d,
        k,
        chain_holds,
        discriminant_holds,
        pass: chain_holds && discriminant_holds,
        chain: [a.to_string(), b.to_string(), c.to_string(), e.to_string()],
    })
}

/// True when Σ_{(s,d)∈J} 1/(d(d−1)) is certified > 1, so the OSC
/// provably fails on [0,1].
pub fn osc_violation_check(j: &DigitSetSpec) -> bool {
    infinite_series(j, 1.0, 65_536).certainly_gt(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::parse_spec;

    const LOG2_LOG6: f64 = 0.386852807234541587;

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    #[test]
    fn phi_map_values() {
        assert_eq!(phi_map(DigitPair::new(0, 2), 0.0).unwrap(), 0.5);
        assert_eq!(phi_map(DigitPair::new(0, 2), 1.0).unwrap(), 1.0);
        assert!(close(phi_map(DigitPair::new(1, 3), 1.0).unwrap(), 1.0 / 3.0, 1e-15));
        assert!(phi_map(DigitPair::new(0, 2), 1.5).is_err());
    }

    #[test]
    fn affine_map_values() {
        assert_eq!(affine_map_2d(0.5, DigitPair::new(0, 2), (0.0, 0.0)).unwrap(), (0.0, 0.5));
        // φ_{1,2}(0) = 1/(d−s) = 1
        assert_eq!(affine_map_2d(0.5, DigitPair::new(1, 2), (0.0, 0.0)).unwrap(), (0.5, 1.0));
        let (w, x) = affine_map_2d(1.0 / 3.0, DigitPair::new(1, 3), (1.0, 1.0)).unwrap();
        assert!(close(w, 1.0, 1e-15) && close(x, 1.0 / 3.0, 1e-15));
    }

    #[test]
    fn evaluate_expansion_values() {
        let d = vec![DigitPair::new(0, 2); 3];
        assert!(close(evaluate_expansion(&d), 7.0 / 8.0, 1e-15));
        assert!(close(evaluate_expansion(&[DigitPair::new(1, 2)]), 1.0, 1e-15));
        let d = vec![DigitPair::new(0, 3); 2];
        assert!(close(evaluate_expansion(&d), 7.0 / 18.0, 1e-15));
    }

    #[test]
    fn expansion_matches_composed_maps() {
        // π₂ of A_{s1,d1}∘…∘A_{sn,dn}((0,0)) equals the partial sum
        let digits = [
            DigitPair::new(0, 3),
            DigitPair::new(1, 2),
            DigitPair::new(1, 5),
            DigitPair::new(0, 4),
        ];
        let mut point = (0.0, 0.0);
        for pair in digits.iter().rev() {
            point = affine_map_2d(0.5, *pair, point).unwrap();
        }
        assert!(close(point.1, evaluate_expansion(&digits), 1e-14));
    }

    #[test]
    fn expand_examples() {
        let d = expand(1.0, &ExpansionStrategy::AlwaysLuroth, 10).unwrap();
        assert!(d.iter().all(|p| *p == DigitPair::new(0, 2)));

        let d = expand(7.0 / 18.0, &ExpansionStrategy::AlwaysLuroth, 2).unwrap();
        assert_eq!(d, vec![DigitPair::new(0, 3), DigitPair::new(0, 3)]);

        // boundary convention: x = 1/2 gets digit 3
        let d = expand(0.5, &ExpansionStrategy::AlwaysLuroth, 1).unwrap();
        assert_eq!(d[0], DigitPair::new(0, 3));

        assert!(expand(0.0, &ExpansionStrategy::AlwaysLuroth, 5).is_err());
        assert!(expand(1.5, &ExpansionStrategy::AlwaysLuroth, 5).is_err());
    }

    #[test]
    fn round_trip_all_strategies() {
        let strategies = [
            ExpansionStrategy::AlwaysLuroth,
            ExpansionStrategy::AlwaysAlternating,
            ExpansionStrategy::Bernoulli { p: 0.3, seed: 7 },
            ExpansionStrategy::Prescribed(vec![0, 1, 1]),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let x: f64 = rng.gen_range(f64::MIN_POSITIVE..=1.0);
            for strategy in &strategies {
                let digits = expand(x, strategy, 40).unwrap();
                let err = (evaluate_expansion(&digits) - x).abs();
                assert!(err <= 2f64.powi(-40), "x={x}, err={err}");
            }
        }
    }

    #[test]
    fn bernoulli_is_seed_deterministic() {
        let s = ExpansionStrategy::Bernoulli { p: 0.5, seed: 42 };
        assert_eq!(expand(0.37, &s, 30).unwrap(), expand(0.37, &s, 30).unwrap());
    }

    #[test]
    fn dim_f_finite_examples() {
        let r = dim_f_finite(&parse_spec("0:3;1:3").unwrap(), 1e-10).unwrap();
        assert!(close(r.value, LOG2_LOG6, 1e-9), "{}", r.value);
        assert!(!r.flags.requires_osc);

        let r = dim_f_finite(&parse_spec("*:2").unwrap(), 1e-10).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.flags.exact);

        let r = dim_f_finite(&parse_spec("0:2").unwrap(), 1e-10).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.flags.degenerate);

        let r = dim_f_finite(&parse_spec("0:2,3;1:3").unwrap(), 1e-10).unwrap();
        assert!(r.flags.requires_osc);
    }

    #[test]
    fn dim_f_infinite_examples() {
        // J = {0,1}×ℕ≥3: the series hits 1 exactly at r = 1
        let j = parse_spec("*:3..inf").unwrap();
        let (h, b) = dim_f_infinite(&j, 1e-8).unwrap();
        assert!(close(h.value, 1.0, 1e-7), "{}", h.value);
        assert!(close(b.value, h.value, 1e-7));
        assert!(h.value >= 0.5);

        // power family k = 2, frozen independent root
        let j = parse_spec("0:n^2").unwrap();
        let (h, b) = dim_f_infinite(&j, 1e-9).unwrap();
        assert!(close(h.value, 0.439699826694972, 1e-8), "{}", h.value);
        assert!(h.value >= 1.0 / 3.0);
        assert!(close(b.value, h.value, 1e-12));

        // k = 7 with c = 1: digit-point box dimension wins
        let j = parse_spec("1:n^7+1").unwrap();
        let (h, b) = dim_f_infinite(&j, 1e-9).unwrap();
        assert!(h.value <= 1.0 / 8.0 - 1.0 / 700.0 + 1e-9, "{}", h.value);
        assert!(close(b.value, 1.0 / 8.0, 1e-15));

        // the full classical range gives F_J = (0,1]: exactly 1
        let (h, b) = dim_f_infinite(&parse_spec("0:2..inf").unwrap(), 1e-8).unwrap();
        assert_eq!(h.value, 1.0);
        assert!(h.flags.exact && close(b.value, 1.0, 1e-7));
        // digit 2 with exclusions: root is only an upper bound
        let (h, _) = dim_f_infinite(&parse_spec("1:2..inf!4").unwrap(), 1e-8).unwrap();
        assert!(h.flags.requires_osc && !h.flags.exact);
        assert!(h.value < 1.0);

        assert!(dim_f_infinite(&parse_spec("0:3;1:3").unwrap(), 1e-9).is_err());
    }

    #[test]
    fn digit_point_box_dims() {
        let r = box_dim_digit_points(&parse_spec("0:3..inf").unwrap()).unwrap();
        assert_eq!(r.value, 0.5);
        let r = box_dim_digit_points(&parse_spec("1:n^3").unwrap()).unwrap();
        assert_eq!(r.value, 0.25);
        let r = box_dim_digit_points(&parse_spec("*:2,4,6").unwrap()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn digit_point_counter_scales_like_half() {
        // N_δ ~ δ^(−1/2) for the 1/n point set: quartering δ doubles N
        let j = parse_spec("0:3..inf").unwrap();
        let n1 = digit_points_box_count(&j, 2f64.powi(-10)).unwrap() as f64;
        let n2 = digit_points_box_count(&j, 2f64.powi(-12)).unwrap() as f64;
        let ratio = n2 / n1;
        assert!((1.8..=2.2).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn nonautonomous_examples() {
        let j = parse_spec("0:3;1:3").unwrap();
        let constant = dim_nonautonomous(&[], &[j.clone()], 1e-10).unwrap();
        let direct = dim_f_finite(&j, 1e-10).unwrap();
        assert!(close(constant.value, direct.value, 1e-9));

        let j_odd = parse_spec("0:3").unwrap();
        let p2 = dim_nonautonomous(&[], &[j_odd, j.clone()], 1e-10).unwrap();
        assert!(close(p2.value, LOG2_LOG6 / 2.0, 1e-9), "{}", p2.value);

        let same = dim_nonautonomous(&[], &[j.clone(), j.clone()], 1e-10).unwrap();
        assert!(close(same.value, LOG2_LOG6, 1e-9));

        assert!(dim_nonautonomous(&[], &[parse_spec("0:2,3").unwrap()], 1e-9).is_err());
    }

    #[test]
    fn fiber_examples() {
        let r = fiber_dimension(&[2, 3], &[2, 3], 0.77, 1e-10).unwrap();
        assert!(close(r.value, 0.600966851613675486, 1e-9), "{}", r.value);

        let r = fiber_dimension(&[3], &[3], 0.5, 1e-10).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.flags.degenerate);

        let r = fiber_dimension(&[2, 3], &[2], 0.5, 1e-10).unwrap();
        assert!(close(r.value, 0.368624208535915990, 1e-9), "{}", r.value);
    }

    #[test]
    fn dim_2d_examples() {
        let r = dim_2d(&parse_spec("*:2").unwrap(), 0.4, 1e-9).unwrap();
        assert!(close(r.value, 1.0, 1e-8), "{}", r.value);

        let r = dim_2d(&parse_spec("*:2,3").unwrap(), 0.4, 1e-10).unwrap();
        assert!(close(r.value, 1.600966851613675486, 1e-9), "{}", r.value);
        assert!(r.flags.exact && r.flags.box_packing_equal);

        let r = dim_2d(&parse_spec("*:2..inf").unwrap(), 0.5, 1e-7).unwrap();
        assert!(close(r.value, 2.0, 1e-6), "{}", r.value);

        let r = dim_2d(&parse_spec("0:2,3;1:4").unwrap(), 0.5, 1e-9).unwrap();
        assert!(r.flags.lower_bound_only && !r.flags.exact);

        assert!(dim_2d(&parse_spec("0:3").unwrap(), 0.5, 1e-9).is_err());
    }

    #[test]
    fn luroth_affinity_examples() {
        let r = luroth_affinity_dimension(&parse_spec("*:2..inf").unwrap(), 0.5, 1e-7).unwrap();
        assert!(close(r.value, 2.0, 1e-6), "{}", r.value);

        // singleton I: the fiber degenerates, so the projected pressure
        // already sits at 1 when r = 1
        let r = luroth_affinity_dimension(&parse_spec("*:3").unwrap(), 0.5, 1e-10).unwrap();
        assert!(close(r.value, 1.0, 1e-9), "{}", r.value);

        // condition (b): value independent of p
        let r = luroth_affinity_dimension(&parse_spec("*:2,3").unwrap(), 0.9, 1e-10).unwrap();
        assert!(close(r.value, 1.600966851613675486, 1e-9), "{}", r.value);

        assert!(luroth_affinity_dimension(&parse_spec("0:3").unwrap(), 0.5, 1e-9).is_err());
    }

    #[test]
    fn luroth_affinity_matches_dim_2d() {
        for digits in ["*:3,4", "*:2,5,9", "*:3..9"] {
            let j = parse_spec(digits).unwrap();
            let a = luroth_affinity_dimension(&j, 0.31, 1e-9).unwrap();
            let b = dim_2d(&j, 0.31, 1e-9).unwrap();
            assert!(close(a.value, b.value, 4e-9), "{digits}: {} vs {}", a.value, b.value);
        }
    }

    #[test]
    fn osc_example_passes_small_d() {
        for d in 3..=12 {
            let report = osc_example_check(d).unwrap();
            assert!(report.pass, "d={d}: {report:?}");
        }
        assert!(osc_example_check(2).is_err());
        // d=3 hits the boundary case with equality in the chain
        let r = osc_example_check(3).unwrap();
        assert_eq!(r.k, 0);
        assert_eq!(r.chain[0], "1/2");
    }

    #[test]
    fn osc_violation_examples() {
        let j = parse_spec("0:2,3,4,5;1:3,4").unwrap(); // strict superset
        assert!(osc_violation_check(&j));
        let j = parse_spec("1:2;0:3,4;1:3,4;0:7").unwrap();
        assert!(osc_violation_check(&j));
        assert!(!osc_violation_check(&parse_spec("*:3..inf").unwrap()));
        assert!(!osc_violation_check(&parse_spec("0:3;1:3").unwrap()));
    }
}
