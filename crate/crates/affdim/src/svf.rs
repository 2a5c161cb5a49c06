//! Diagonal 2×2 matrix algebra: singular values, the singular value
//! function φ^r, and the r-power transform L^(r).
//!
//! Entries are stored signed; singular values are taken on absolute
//! values, so the alternating-sign Lüroth maps are representable
//! directly. Branch boundaries r = 1 and r = 2 belong to the lower
//! branch of the piecewise definitions.

use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};

/// The linear part of one affine contraction: diag(a, b).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagonal2 {
    pub a: f64,
    pub b: f64,
}

/// Ordered singular values of a `Diagonal2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularPair {
    /// Largest singular value.
    pub alpha1: f64,
    /// Smallest singular value.
    pub alpha2: f64,
}

impl Diagonal2 {
    pub fn new(a: f64, b: f64) -> Self {
        Diagonal2 { a, b }
    }

    /// True when usable as the linear part of a contraction.
    pub fn is_contraction(&self) -> bool {
        self.a != 0.0 && self.b != 0.0 && self.a.abs() < 1.0 && self.b.abs() < 1.0
    }
}

/// Singular values of a diagonal matrix are the absolute entries, ordered.
pub fn singular_values(m: Diagonal2) -> SingularPair {
    let (x, y) = (m.a.abs(), m.b.abs());
    SingularPair {
        alpha1: x.max(y),
        alpha2: x.min(y),
    }
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput(format!("exponent r must be > 0, got {r}")));
    }
    Ok(())
}

/// Singular value function φ^r: α₁^r on (0,1], α₁·α₂^(r−1) on (1,2],
/// |det|^(r/2) above 2.
pub fn svf(m: Diagonal2, r: f64) -> Result<f64> {
    check_r(r)?;
    let SingularPair { alpha1, alpha2 } = singular_values(m);
    Ok(if r <= 1.0 {
        alpha1.powf(r)
    } else if r <= 2.0 {
        alpha1 * alpha2.powf(r - 1.0)
    } else {
        (alpha1 * alpha2).powf(r / 2.0)
    })
}

/// The r-power transform L^(r): a non-negative diagonal matrix whose
/// operator norm equals φ^r(L) and which is multiplicative over matrix
/// products in every branch.
pub fn power_transform(m: Diagonal2, r: f64) -> Result<Diagonal2> {
    check_r(r)?;
    let (x, y) = (m.a.abs(), m.b.abs());
    Ok(if r <= 1.0 {
        Diagonal2::new(x.powf(r), y.powf(r))
    } else if r <= 2.0 {
        Diagonal2::new(x * y.powf(r - 1.0), y * x.powf(r - 1.0))
    } else {
        let det = (x * y).powf(r / 2.0);
        Diagonal2::new(det, det)
    })
}

/// Product of diagonal matrices: entrywise.
pub fn compose(m1: Diagonal2, m2: Diagonal2) -> Diagonal2 {
    Diagonal2::new(m1.a * m2.a, m1.b * m2.b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    #[test]
    fn singular_values_of_diagonal() {
        let s = singular_values(Diagonal2::new(0.25, 0.0625));
        assert_eq!((s.alpha1, s.alpha2), (0.25, 0.0625));
        let s = singular_values(Diagonal2::new(-1.0 / 6.0, 0.5));
        assert!(close(s.alpha1, 0.5, 1e-15) && close(s.alpha2, 1.0 / 6.0, 1e-15));
        let s = singular_values(Diagonal2::new(0.3, 0.3));
        assert_eq!((s.alpha1, s.alpha2), (0.3, 0.3));
    }

    #[test]
    fn svf_branches() {
        let m = Diagonal2::new(0.25, 0.0625);
        assert!(close(svf(m, 1.0).unwrap(), 0.25, 1e-15));
        // r = 2: α₁·α₂ agrees with the determinant-branch limit (α₁α₂)^(2/2).
        assert!(close(svf(m, 2.0).unwrap(), 1.0 / 64.0, 1e-16));
        assert!(close(svf(m, 2.0).unwrap(), (0.25 * 0.0625_f64).powf(1.0), 1e-16));
        // high-precision evaluation of the (1,2] branch formula
        let m = Diagonal2::new(0.5, 1.0 / 3.0);
        assert!(close(svf(m, 1.5).unwrap(), 0.288675134594812882, 1e-15));
    }

    #[test]
    fn svf_rejects_nonpositive_r() {
        assert!(svf(Diagonal2::new(0.5, 0.5), 0.0).is_err());
        assert!(svf(Diagonal2::new(0.5, 0.5), -1.0).is_err());
        assert!(power_transform(Diagonal2::new(0.5, 0.5), 0.0).is_err());
    }

    #[test]
    fn power_transform_branches() {
        let m = Diagonal2::new(0.5, 1.0 / 3.0);
        let t = power_transform(m, 1.0).unwrap();
        assert!(close(t.a, 0.5, 1e-16) && close(t.b, 1.0 / 3.0, 1e-16));
        let t = power_transform(m, 3.0).unwrap();
        let want = (1.0_f64 / 6.0).powf(1.5);
        assert!(close(t.a, want, 1e-16) && close(t.b, want, 1e-16));
        let t = power_transform(Diagonal2::new(0.25, 0.0625), 1.5).unwrap();
        assert!(close(t.a, 1.0 / 16.0, 1e-15) && close(t.b, 1.0 / 32.0, 1e-15));
    }

    #[test]
    fn compose_is_entrywise() {
        let m = Diagonal2::new(0.5, 1.0 / 3.0);
        let sq = compose(m, m);
        assert!(close(sq.a, 0.25, 1e-16) && close(sq.b, 1.0 / 9.0, 1e-16));
        let id = Diagonal2::new(1.0, 1.0);
        assert_eq!(compose(m, id), m);
        let p = compose(Diagonal2::new(0.25, 0.0625), Diagonal2::new(0.5, 0.5));
        assert!(close(p.a, 0.125, 1e-16) && close(p.b, 0.03125, 1e-16));
    }

    #[test]
    fn norm_identity_and_branch_continuity() {
        let m = Diagonal2::new(-0.7, 0.2);
        for &r in &[0.3, 0.9, 1.0, 1.4, 2.0, 2.7, 3.5] {
            let t = power_transform(m, r).unwrap();
            let phi = svf(m, r).unwrap();
            assert!(close(t.a.max(t.b), phi, 1e-15 * (1.0 + phi)));
        }
        let eps = 1e-8;
        for &b in &[1.0, 2.0] {
            let lo = svf(m, b - eps).unwrap();
            let hi = svf(m, b + eps).unwrap();
            assert!(close(lo, hi, 1e-6));
        }
    }
}
