//! Slope gaps of saddle connections on the golden L translation surface.
//!
//! The crate computes the gap distribution two ways and compares them:
//!
//! * empirically, by exact enumeration of saddle connection holonomies
//!   ([`lattice`]) and by iterating the golden-L BCZ return map ([`bcz`]);
//! * analytically, from the closed-form piecewise limiting law and the
//!   dilogarithm volume identities ([`analytic`]).
//!
//! [`stats`] connects the two (empirical CDFs, Kolmogorov–Smirnov distances,
//! histograms, h-spacing Monte Carlo) and [`cli`] drives everything from the
//! `golden-gaps` binary.

pub mod analytic;
pub mod bcz;
pub mod cli;
pub mod error;
pub mod golden;
pub mod lattice;
pub mod stats;

pub use error::{Error, Result};

/// Formats a double with 17 significant digits in the style of `%.17g`.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent in scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa.to_string()),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
