//! Exact arithmetic in the golden field Q(φ), `φ² = φ + 1`.
//!
//! [`GoldenNumber`] carries arbitrary-precision rational coefficients and is
//! the reference exact type. [`GoldenInt`] is the ring of integers Z[φ] on
//! machine words, used on hot paths where every value is known to be
//! integral.

mod integer;
mod linalg;
mod number;

pub use integer::GoldenInt;
pub use linalg::{GoldenMatrix, GoldenVector};
pub use number::GoldenNumber;

/// φ as a double.
pub const PHI: f64 = 1.618_033_988_749_895;
/// φ̄ = 1/φ as a double.
pub const PHI_BAR: f64 = 0.618_033_988_749_894_8;
