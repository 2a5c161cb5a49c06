//! Pressure functions P_I(r) for countable alphabets of diagonal
//! contractions, the affinity-dimension root finder, the modified
//! affinity dimension for finite box-like systems, and the brute-force
//! word-sum oracle used to cross-check them.

use crate::bisect::{le_threshold, refine, TERM_LADDER};
use crate::digits::DigitSetSpec;
use crate::enclosure::Enclosure;
use crate::error::Error;
use crate::series::{kahan_sum, sign_cardinality, sign_digit_sum};
use crate::svf::{power_transform, Diagonal2};
use crate::Result;
use serde::{Deserialize, Serialize};

/// Which piece of the piecewise pressure definition a value falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    R01,
    R12,
    R2Plus,
}

impl Branch {
    pub fn of(r: f64) -> Branch {
        if r <= 1.0 {
            Branch::R01
        } else if r <= 2.0 {
            Branch::R12
        } else {
            Branch::R2Plus
        }
    }
}

/// How a dimension value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    AffinityBisection,
    HutchinsonFinite,
    InfinitePressure,
    ModifiedAffinity,
    NonAutonomous,
    Fiber,
    TwoDFormula,
    BoxPoints,
}

/// Qualifiers attached to a dimension value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultFlags {
    /// Value is the dimension itself, not just a bound.
    pub exact: bool,
    /// Attractor degenerates (single point / empty tail), value pinned to 0.
    pub degenerate: bool,
    /// Value is a Hutchinson root reported without a separation certificate.
    pub requires_osc: bool,
    /// Value is only certified as a lower bound for the Hausdorff dimension.
    pub lower_bound_only: bool,
    /// Box-counting and packing dimensions coincide with the value.
    pub box_packing_equal: bool,
}

/// A dimension value together with the bracket that certifies it.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DimensionResult {
    pub value: f64,
    pub bracket: Enclosure,
    pub method: Method,
    pub active_branch: Option<Branch>,
    pub flags: ResultFlags,
}

impl DimensionResult {
    pub fn from_bracket(lo: f64, hi: f64, method: Method) -> Self {
        DimensionResult {
            value: 0.5 * (lo + hi),
            bracket: Enclosure::new(lo, hi),
            method,
            active_branch: None,
            flags: ResultFlags::default(),
        }
    }

    pub fn pinned(value: f64, method: Method) -> Self {
        DimensionResult {
            value,
            bracket: Enclosure::exact(value),
            method,
            active_branch: None,
            flags: ResultFlags::default(),
        }
    }

    pub fn with_branch(mut self) -> Self {
        self.active_branch = Some(Branch::of(self.value));
        self
    }
}

/// A countable alphabet of diagonal contractions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum AlphabetSpec {
    ExplicitFinite(Vec<Diagonal2>),
    /// The maps L^p_{s,d} with a = p^{1−s}(1−p)^s, b = (−1)^s/(d(d−1)).
    LurothFamily { p: f64, digits: DigitSetSpec },
}

impl AlphabetSpec {
    pub fn explicit(maps: Vec<Diagonal2>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::InvalidInput("alphabet must be non-empty".into()));
        }
        for m in &maps {
            if !m.is_contraction() {
                return Err(Error::InvalidInput(format!(
                    "entries of {m:?} must be non-zero with absolute value < 1"
                )));
            }
        }
        Ok(AlphabetSpec::ExplicitFinite(maps))
    }

    pub fn luroth(p: f64, digits: DigitSetSpec) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidInput(format!("p must lie in (0,1), got {p}")));
        }
        digits.validate()?;
        Ok(AlphabetSpec::LurothFamily { p, digits })
    }

    /// sup over members of max(|a|,|b|); strictly below 1 by construction.
    pub fn sup_contraction(&self) -> f64 {
        match self {
            AlphabetSpec::ExplicitFinite(maps) => maps
                .iter()
                .map(|m| m.a.abs().max(m.b.abs()))
                .fold(0.0, f64::max),
            AlphabetSpec::LurothFamily { p, digits } => {
                let mut sup = 0.0f64;
                if !digits.sign0.is_empty() {
                    sup = sup.max(*p);
                }
                if !digits.sign1.is_empty() {
                    sup = sup.max(1.0 - p);
                }
                if let Some(d) = digits.min_digit() {
                    sup = sup.max(1.0 / (d as f64 * (d as f64 - 1.0)));
                }
                sup
            }
        }
    }
}

fn finite_pressure(maps: &[Diagonal2], r: f64) -> Enclosure {
    let slack = 1e-14 * (1.0 + maps.len() as f64 * 1e-2);
    let value = if r <= 1.0 {
        let ra = kahan_sum(maps.iter().map(|m| m.a.abs().powf(r)));
        let rb = kahan_sum(maps.iter().map(|m| m.b.abs().powf(r)));
        ra.max(rb)
    } else if r <= 2.0 {
        let ra = kahan_sum(maps.iter().map(|m| m.a.abs() * m.b.abs().powf(r - 1.0)));
        let rb = kahan_sum(maps.iter().map(|m| m.b.abs() * m.a.abs().powf(r - 1.0)));
        ra.max(rb)
    } else {
        kahan_sum(maps.iter().map(|m| (m.a.abs() * m.b.abs()).powf(r / 2.0)))
    };
    Enclosure::around(value, slack)
}

fn luroth_pressure(p: f64, digits: &DigitSetSpec, r: f64, terms: usize) -> Enclosure {
    let weights = [p, 1.0 - p];
    if r <= 1.0 {
        // a-row: every member of a sign contributes the constant weight^r
        let mut row_a = Enclosure::exact(0.0);
        let mut row_b = Enclosure::exact(0.0);
        for s in [0u8, 1u8] {
            let sign = digits.sign(s);
            match sign_cardinality(sign) {
                Some(n) => {
                    row_a = row_a.add(&Enclosure::around(
                        n as f64 * weights[s as usize].powf(r),
                        1e-14,
                    ))
                }
                None => row_a = Enclosure::divergent(row_a.lo),
            }
            row_b = row_b.add(&sign_digit_sum(sign, r, terms));
        }
        row_a.max(&row_b)
    } else if r <= 2.0 {
        let mut row1 = Enclosure::exact(0.0);
        let mut row2 = Enclosure::exact(0.0);
        for s in [0u8, 1u8] {
            let sign = digits.sign(s);
            let w = weights[s as usize];
            row1 = row1.add(&sign_digit_sum(sign, r - 1.0, terms).scale(w));
            row2 = row2.add(&sign_digit_sum(sign, 1.0, terms).scale(w.powf(r - 1.0)));
        }
        row1.max(&row2)
    } else {
        let mut sum = Enclosure::exact(0.0);
        for s in [0u8, 1u8] {
            let w = weights[s as usize].powf(r / 2.0);
            sum = sum.add(&sign_digit_sum(digits.sign(s), r / 2.0, terms).scale(w));
        }
        sum
    }
}

/// Certified enclosure of the pressure P_I(r); `hi = +∞` in divergent
/// regimes is a legal output.
pub fn pressure_with_terms(alphabet: &AlphabetSpec, r: f64, terms: usize) -> Result<Enclosure> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput(format!("pressure needs r > 0, got {r}")));
    }
    Ok(match alphabet {
        AlphabetSpec::ExplicitFinite(maps) => finite_pressure(maps, r),
        AlphabetSpec::LurothFamily { p, digits } => luroth_pressure(*p, digits, r, terms),
    })
}

/// Pressure at default series precision.
pub fn pressure(alphabet: &AlphabetSpec, r: f64) -> Result<Enclosure> {
    pressure_with_terms(alphabet, r, TERM_LADDER[1])
}

const BISECT_FLOOR: f64 = 1e-9;

/// Affinity dimension inf{r > 0 : P_I(r) ≤ 1} by certified bisection.
pub fn affinity_dimension(alphabet: &AlphabetSpec, tol: f64) -> Result<DimensionResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be > 0".into()));
    }
    let mut q = |r: f64, terms: usize| {
        pressure_with_terms(alphabet, r, terms).expect("r > 0 inside bisection")
    };
    if le_threshold(&mut q, BISECT_FLOOR, 1.0) {
        let mut res = DimensionResult::from_bracket(0.0, BISECT_FLOOR, Method::AffinityBisection);
        res.flags.degenerate = true;
        return Ok(res.with_branch());
    }
    let mut hi = 4.0;
    while !le_threshold(&mut q, hi, 1.0) {
        hi *= 2.0;
        if hi > 64.0 {
            return Err(Error::ToleranceNotReached(
                "pressure stays above 1 on (0, 64]; alphabet is not summable".into(),
            ));
        }
    }
    let (lo, hi) = refine(&mut q, 1.0, BISECT_FLOOR, hi, tol);
    Ok(DimensionResult::from_bracket(lo, hi, Method::AffinityBisection).with_branch())
}

const WORD_BUDGET: u64 = 10_000_000;

/// Σ_{u ∈ I^m} φ^r(L_u) by plain enumeration of all |I|^m words.
///
/// Enumerates in the r-power-transformed coordinates, where the word
/// value is the max entry of the entrywise product.
pub fn word_sum_oracle(maps: &[Diagonal2], r: f64, m: u32) -> Result<f64> {
    if maps.is_empty() || m == 0 {
        return Err(Error::InvalidInput("need a non-empty alphabet and m ≥ 1".into()));
    }
    let words = (maps.len() as u64).checked_pow(m);
    match words {
        Some(w) if w <= WORD_BUDGET => {}
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "|I|^m = {}^{} exceeds the {} word budget",
                maps.len(),
                m,
                WORD_BUDGET
            )))
        }
    }
    let transformed: Vec<Diagonal2> = maps
        .iter()
        .map(|&mp| power_transform(mp, r))
        .collect::<Result<_>>()?;
    let mut terms = Vec::with_capacity(words.unwrap() as usize);
    fn walk(maps: &[Diagonal2], depth: u32, a: f64, b: f64, out: &mut Vec<f64>) {
        if depth == 0 {
            out.push(a.max(b));
            return;
        }
        for t in maps {
            walk(maps, depth - 1, a * t.a, b * t.b, out);
        }
    }
    walk(&transformed, m, 1.0, 1.0, &mut terms);
    Ok(kahan_sum(terms))
}

/// Modified affinity dimension for a finite box-like system: the unique
/// t with max{Σ|a|^r1·|b|^(t−r1), Σ|b|^r2·|a|^(t−r2)} = 1, where r1, r2
/// are the box dimensions of the two coordinate projections.
pub fn modified_affinity_dimension(
    maps: &[Diagonal2],
    r1: f64,
    r2: f64,
    tol: f64,
) -> Result<DimensionResult> {
    if maps.is_empty() {
        return Err(Error::InvalidInput("alphabet must be non-empty".into()));
    }
    for &r in &[r1, r2] {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidInput(format!(
                "projection dimensions must lie in [0,1], got {r}"
            )));
        }
    }
    let slack = 1e-14;
    let mut q = |t: f64, _terms: usize| {
        let s1 = kahan_sum(maps.iter().map(|m| m.a.abs().powf(r1) * m.b.abs().powf(t - r1)));
        let s2 = kahan_sum(maps.iter().map(|m| m.b.abs().powf(r2) * m.a.abs().powf(t - r2)));
        Enclosure::around(s1.max(s2), slack)
    };
    if le_threshold(&mut q, BISECT_FLOOR, 1.0) {
        let mut res = DimensionResult::from_bracket(0.0, BISECT_FLOOR, Method::ModifiedAffinity);
        res.flags.degenerate = true;
        return Ok(res);
    }
    let mut hi = 4.0;
    while !le_threshold(&mut q, hi, 1.0) {
        hi *= 2.0;
        if hi > 64.0 {
            return Err(Error::ToleranceNotReached(
                "modified pressure stays above 1 on (0, 64]".into(),
            ));
        }
    }
    let (lo, hi) = refine(&mut q, 1.0, BISECT_FLOOR, hi, tol);
    Ok(DimensionResult::from_bracket(lo, hi, Method::ModifiedAffinity))
}

/// The Cantor-product alphabet from the footnote counterexample: four
/// maps diag(1/4, 1/16), the cross product of the middle-1/2 and
/// middle-7/8 Cantor set systems.
pub fn cantor_product_alphabet() -> Vec<Diagonal2> {
    vec![Diagonal2::new(0.25, 0.0625); 4]
}
