//! Bisection on strictly decreasing enclosure-valued functions.

use crate::enclosure::Enclosure;

/// Explicit-term counts tried, in order, until an enclosure decides a
/// comparison. Finite alphabets ignore the count.
pub const TERM_LADDER: [usize; 4] = [4_096, 16_384, 65_536, 262_144];

/// Decide whether the decreasing quantity at `r` is ≤ `threshold`,
/// escalating series precision until the enclosure is one-sided. If the
/// enclosure still straddles the threshold at maximal precision the root
/// is within the (tiny) enclosure width of `r`; the enclosure midpoint
/// then decides, which perturbs the final bracket by far less than any
/// practical tolerance.
pub fn le_threshold<F>(f: &mut F, r: f64, threshold: f64) -> bool
where
    F: FnMut(f64, usize) -> Enclosure,
{
    let mut last = Enclosure::exact(f64::NAN);
    for &terms in TERM_LADDER.iter() {
        last = f(r, terms);
        if last.certainly_le(threshold) {
            return true;
        }
        if last.certainly_gt(threshold) {
            return false;
        }
    }
    last.midpoint() <= threshold
}

/// Shrink `[lo, hi]` to width ≤ `tol` around inf{r : q(r) ≤ threshold},
/// given q decreasing with q(lo) > threshold and q(hi) ≤ threshold.
pub fn refine<F>(f: &mut F, threshold: f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64)
where
    F: FnMut(f64, usize) -> Enclosure,
{
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if le_threshold(f, mid, threshold) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}
