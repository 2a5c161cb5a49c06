//! Dimension theory toolkit for planar self-affine sets generated by
//! iterated function systems with diagonal linear parts, specialised to
//! the signed Lüroth family of number expansions.
//!
//! The crate computes:
//!
//! * singular value functions and the r-power transform of diagonal
//!   2×2 matrices ([`svf`]),
//! * certified enclosures of pressure functions over finite and
//!   structured-infinite alphabets, affinity dimensions by bisection,
//!   modified affinity dimensions, and a brute-force word-sum oracle
//!   ([`pressure`], [`series`]),
//! * signed Lüroth expansion encoding/decoding and every dimension
//!   formula for restricted digit sets, fibers, non-autonomous
//!   schedules and the planar sets they generate ([`luroth`]),
//! * constructive digit sets realizing a requested dimension
//!   ([`spectrum`]),
//! * desk-scale empirical verification: rectangle covers, chaos-game
//!   sampling, mesh box counting and attractor rendering ([`empirics`]).
//!
//! All infinite series are evaluated as certified brackets; dimension
//! outputs carry the bisection bracket that contains them.

pub mod digits;
pub mod empirics;
pub mod enclosure;
pub mod error;
pub mod luroth;
pub mod pressure;
pub mod series;
pub mod spectrum;
pub mod svf;

mod bisect;

pub use digits::{DigitPair, DigitSetSpec, SignDigits};
pub use enclosure::Enclosure;
pub use error::Error;
pub use pressure::{AlphabetSpec, Branch, DimensionResult, Method, ResultFlags};
pub use svf::{Diagonal2, SingularPair};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
