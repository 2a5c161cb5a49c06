//! Digit pairs (s, d) of signed Lüroth expansions and the structured
//! digit-set descriptions used for restricted digit sets.
//!
//! A digit set carries one shape per sign: an explicit finite set, a
//! cofinite range `{d ≥ m}` minus finitely many exclusions, or a power
//! family `{n^k + c : n ≥ 2}`. These three shapes cover every example
//! we compute while keeping series tail bounds derivable.

use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// One signed Lüroth digit: sign bit `s ∈ {0,1}` and digit `d ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DigitPair {
    pub s: u8,
    pub d: u64,
}

impl DigitPair {
    pub fn new(s: u8, d: u64) -> Self {
        debug_assert!(s <= 1 && d >= 2);
        DigitPair { s, d }
    }

    /// Contraction ratio of the x-coordinate map: 1/(d(d−1)).
    pub fn ratio(&self) -> f64 {
        1.0 / (self.d as f64 * (self.d as f64 - 1.0))
    }
}

/// Digits attached to one sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignDigits {
    Empty,
    Explicit(BTreeSet<u64>),
    /// All d ≥ `min_d` except the listed exclusions.
    Cofinite { min_d: u64, exclusions: BTreeSet<u64> },
    /// Digits n^k + c for n ≥ 2, with k ≥ 1 and c ∈ {0, 1}.
    PowerFamily { k: u32, c: u8 },
}

impl SignDigits {
    pub fn is_empty(&self) -> bool {
        match self {
            SignDigits::Empty => true,
            SignDigits::Explicit(set) => set.is_empty(),
            _ => false,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SignDigits::Empty | SignDigits::Explicit(_))
    }

    pub fn contains(&self, d: u64) -> bool {
        match self {
            SignDigits::Empty => false,
            SignDigits::Explicit(set) => set.contains(&d),
            SignDigits::Cofinite { min_d, exclusions } => d >= *min_d && !exclusions.contains(&d),
            SignDigits::PowerFamily { k, c } => {
                if d < 2 + *c as u64 {
                    return false;
                }
                let base = d - *c as u64;
                let n = (base as f64).powf(1.0 / *k as f64).round() as u64;
                (n.max(2)).pow(*k) == base && n >= 2
            }
        }
    }

    /// Smallest digit, if the set is non-empty.
    pub fn min_digit(&self) -> Option<u64> {
        match self {
            SignDigits::Empty => None,
            SignDigits::Explicit(set) => set.iter().next().copied(),
            SignDigits::Cofinite { min_d, exclusions } => {
                (*min_d..).find(|d| !exclusions.contains(d))
            }
            SignDigits::PowerFamily { k, c } => Some(2u64.pow(*k) + *c as u64),
        }
    }

    /// Digits in increasing order; unbounded for infinite shapes.
    pub fn iter_digits(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        match self {
            SignDigits::Empty => Box::new(std::iter::empty()),
            SignDigits::Explicit(set) => Box::new(set.iter().copied()),
            SignDigits::Cofinite { min_d, exclusions } => {
                Box::new((*min_d..).filter(move |d| !exclusions.contains(d)))
            }
            SignDigits::PowerFamily { k, c } => {
                let (k, c) = (*k, *c as u64);
                Box::new((2u64..).map(move |n| n.pow(k) + c))
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            SignDigits::Empty => Ok(()),
            SignDigits::Explicit(set) => {
                if set.iter().any(|&d| d < 2) {
                    return Err(Error::InvalidInput("digits must be ≥ 2".into()));
                }
                Ok(())
            }
            SignDigits::Cofinite { min_d, exclusions } => {
                if *min_d < 2 {
                    return Err(Error::InvalidInput("cofinite range must start at d ≥ 2".into()));
                }
                if exclusions.iter().any(|&d| d < *min_d) {
                    return Err(Error::InvalidInput(
                        "cofinite exclusions must lie inside the range".into(),
                    ));
                }
                Ok(())
            }
            SignDigits::PowerFamily { k, c } => {
                if *k < 1 || *c > 1 {
                    return Err(Error::InvalidInput(
                        "power family requires k ≥ 1 and c ∈ {0,1}".into(),
                    ));
                }
                Ok(())
            }
        }
    }
}

/// A subset J ⊆ {0,1} × ℕ≥2, one digit description per sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitSetSpec {
    pub sign0: SignDigits,
    pub sign1: SignDigits,
}

impl DigitSetSpec {
    pub fn new(sign0: SignDigits, sign1: SignDigits) -> Result<Self> {
        let spec = DigitSetSpec { sign0, sign1 };
        spec.validate()?;
        Ok(spec)
    }

    /// Finite explicit set from a list of digit pairs.
    pub fn from_pairs<I: IntoIterator<Item = DigitPair>>(pairs: I) -> Result<Self> {
        let mut s0 = BTreeSet::new();
        let mut s1 = BTreeSet::new();
        for p in pairs {
            if p.s > 1 {
                return Err(Error::InvalidInput(format!("sign must be 0 or 1, got {}", p.s)));
            }
            if p.s == 0 { &mut s0 } else { &mut s1 }.insert(p.d);
        }
        let wrap = |set: BTreeSet<u64>| {
            if set.is_empty() {
                SignDigits::Empty
            } else {
                SignDigits::Explicit(set)
            }
        };
        DigitSetSpec::new(wrap(s0), wrap(s1))
    }

    /// `{0,1} × I` for an explicit finite I.
    pub fn both_signs<I: IntoIterator<Item = u64>>(digits: I) -> Result<Self> {
        let set: BTreeSet<u64> = digits.into_iter().collect();
        DigitSetSpec::new(
            SignDigits::Explicit(set.clone()),
            SignDigits::Explicit(set),
        )
    }

    /// The full family {0,1} × ℕ≥min_d.
    pub fn both_signs_cofinite(min_d: u64) -> Result<Self> {
        let c = SignDigits::Cofinite { min_d, exclusions: BTreeSet::new() };
        DigitSetSpec::new(c.clone(), c)
    }

    pub fn validate(&self) -> Result<()> {
        self.sign0.validate()?;
        self.sign1.validate()?;
        if self.sign0.is_empty() && self.sign1.is_empty() {
            return Err(Error::InvalidInput("digit set must be non-empty".into()));
        }
        Ok(())
    }

    pub fn sign(&self, s: u8) -> &SignDigits {
        if s == 0 {
            &self.sign0
        } else {
            &self.sign1
        }
    }

    pub fn is_finite(&self) -> bool {
        self.sign0.is_finite() && self.sign1.is_finite()
    }

    pub fn contains(&self, p: DigitPair) -> bool {
        self.sign(p.s).contains(p.d)
    }

    pub fn both_signs_present(&self) -> bool {
        !self.sign0.is_empty() && !self.sign1.is_empty()
    }

    /// Smallest digit over both signs.
    pub fn min_digit(&self) -> Option<u64> {
        match (self.sign0.min_digit(), self.sign1.min_digit()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, b) => b,
        }
    }

    /// All pairs, if the set is finite.
    pub fn finite_pairs(&self) -> Option<Vec<DigitPair>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = Vec::new();
        for s in [0u8, 1u8] {
            out.extend(self.sign(s).iter_digits().map(|d| DigitPair::new(s, d)));
        }
        Some(out)
    }

    pub fn len_finite(&self) -> Option<usize> {
        self.finite_pairs().map(|v| v.len())
    }
}

impl fmt::Display for SignDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignDigits::Empty => write!(f, "-"),
            SignDigits::Explicit(set) => {
                let items: Vec<String> = set.iter().map(|d| d.to_string()).collect();
                write!(f, "{}", items.join(","))
            }
            SignDigits::Cofinite { min_d, exclusions } => {
                write!(f, "{min_d}..inf")?;
                if !exclusions.is_empty() {
                    let items: Vec<String> = exclusions.iter().map(|d| d.to_string()).collect();
                    write!(f, "!{}", items.join(","))?;
                }
                Ok(())
            }
            SignDigits::PowerFamily { k, c } => {
                write!(f, "n^{k}")?;
                if *c == 1 {
                    write!(f, "+1")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for DigitSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign0 == self.sign1 && !self.sign0.is_empty() {
            return write!(f, "*:{}", self.sign0);
        }
        let mut parts = Vec::new();
        if !self.sign0.is_empty() {
            parts.push(format!("0:{}", self.sign0));
        }
        if !self.sign1.is_empty() {
            parts.push(format!("1:{}", self.sign1));
        }
        write!(f, "{}", parts.join(";"))
    }
}

/// Parse one sign body: `2,4,6` | `3..inf` | `3..inf!5,7` | `3..9` | `n^3` | `n^3+1`.
fn parse_body(body: &str) -> Result<SignDigits> {
    let body = body.trim();
    if body.is_empty() || body == "-" {
        return Ok(SignDigits::Empty);
    }
    if let Some(rest) = body.strip_prefix("n^") {
        let (k_str, c) = match rest.split_once('+') {
            Some((k, c)) => (k, c.trim().parse::<u8>().map_err(bad_num)?),
            None => (rest, 0),
        };
        let k: u32 = k_str.trim().parse().map_err(bad_num)?;
        let fam = SignDigits::PowerFamily { k, c };
        fam.validate()?;
        return Ok(fam);
    }
    if body.contains("..") {
        let (range_part, excl_part) = match body.split_once('!') {
            Some((r, e)) => (r, Some(e)),
            None => (body, None),
        };
        let (lo_str, hi_str) = range_part
            .split_once("..")
            .ok_or_else(|| Error::InvalidInput(format!("bad range: {body}")))?;
        let lo: u64 = lo_str.trim().parse().map_err(bad_num)?;
        let exclusions: BTreeSet<u64> = match excl_part {
            Some(e) => e
                .split(',')
                .map(|t| t.trim().parse::<u64>().map_err(bad_num))
                .collect::<Result<_>>()?,
            None => BTreeSet::new(),
        };
        if hi_str.trim() == "inf" {
            let c = SignDigits::Cofinite { min_d: lo, exclusions };
            c.validate()?;
            return Ok(c);
        }
        let hi: u64 = hi_str.trim().parse().map_err(bad_num)?;
        if hi < lo {
            return Err(Error::InvalidInput(format!("empty range: {body}")));
        }
        let set: BTreeSet<u64> = (lo..=hi).filter(|d| !exclusions.contains(d)).collect();
        let e = SignDigits::Explicit(set);
        e.validate()?;
        return Ok(e);
    }
    let set: BTreeSet<u64> = body
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(bad_num))
        .collect::<Result<_>>()?;
    let e = SignDigits::Explicit(set);
    e.validate()?;
    Ok(e)
}

fn bad_num<E: fmt::Display>(e: E) -> Error {
    Error::InvalidInput(format!("bad number: {e}"))
}

fn merge_sign(existing: SignDigits, new: SignDigits) -> Result<SignDigits> {
    match (existing, new) {
        (SignDigits::Empty, n) => Ok(n),
        (e, SignDigits::Empty) => Ok(e),
        (SignDigits::Explicit(mut a), SignDigits::Explicit(b)) => {
            a.extend(b);
            Ok(SignDigits::Explicit(a))
        }
        _ => Err(Error::InvalidInput(
            "cannot merge infinite digit-set clauses for one sign".into(),
        )),
    }
}

/// Parse the digit-set grammar: `;`-separated clauses `s:body` with
/// `s ∈ {0,1,*}` (`*` applies the body to both signs).
pub fn parse_spec(text: &str) -> Result<DigitSetSpec> {
    let mut sign0 = SignDigits::Empty;
    let mut sign1 = SignDigits::Empty;
    for clause in text.split(';') {
        let clause = clause.trim();
        if clause.is_empty() {
            continue;
        }
        let (sign, body) = clause
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("clause `{clause}` needs `sign:digits`")))?;
        let parsed = parse_body(body)?;
        match sign.trim() {
            "0" => sign0 = merge_sign(sign0, parsed)?,
            "1" => sign1 = merge_sign(sign1, parsed)?,
            "*" => {
                sign0 = merge_sign(sign0, parsed.clone())?;
                sign1 = merge_sign(sign1, parsed)?;
            }
            other => {
                return Err(Error::InvalidInput(format!("sign must be 0, 1 or *, got `{other}`")))
            }
        }
    }
    DigitSetSpec::new(sign0, sign1)
}
