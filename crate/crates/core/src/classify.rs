//! Distance bounds for `d(phi_beta, annihilator + continuous)` and the
//! strong-exposedness verdict they imply, including the factorwise rule for
//! product symbols.
//!
//! The verdicts encode proved results only:
//!
//! * `beta >= 0`:   `(1/2)|s|/(beta+2) <= d <= (4/pi)|s|/(beta+2) <= 2/pi`,
//!   strongly exposed (`s = sin(beta pi/2)`);
//! * `-1 < beta < 0`: lower `(2/pi)|s|/(beta+2)`, upper `|s| < 1`, strongly
//!   exposed;
//! * `-2 < beta <= -1`: lower `(2/pi)|s|/(beta+2)`, trivial upper 1, verdict
//!   unknown; the conjectured exact value equals the lower bound;
//! * `beta = -2`: the symbol's distance is exactly 1 and the point is not
//!   strongly exposed.

use crate::bloch::little_bloch_distance;
use crate::error::{Error, Result};
use crate::projection::{PowerSymbol, TaylorSeries};
use crate::specfun::sin_pi;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    StronglyExposed,
    NotStronglyExposed,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::StronglyExposed => write!(f, "StronglyExposed"),
            Verdict::NotStronglyExposed => write!(f, "NotStronglyExposed"),
            Verdict::Unknown => write!(f, "Unknown"),
        }
    }
}

/// Interval for the L-infinity distance of a symbol to the annihilator-plus-
/// continuous subspace, with provenance tags and the implied verdict.
#[derive(Debug, Clone)]
pub struct DistanceBounds {
    pub lower: f64,
    pub upper: f64,
    pub lower_source: &'static str,
    pub upper_source: &'static str,
    /// Conjectured exact value where one exists (exponents in (-2, 0)).
    pub conjectured: Option<f64>,
    pub verdict: Verdict,
}

pub const SOURCE_BLOCH_LOWER: &str = "projection-bloch-lower";
pub const SOURCE_BLOCH_UPPER: &str = "projection-bloch-upper";
pub const SOURCE_SINE_BOUND: &str = "sine-bound";
pub const SOURCE_FUNCTIONAL_LIMIT: &str = "functional-limit";
pub const SOURCE_TRIVIAL_BALL: &str = "unit-ball";
pub const SOURCE_ANNIHILATOR: &str = "annihilator-distance";
pub const SOURCE_FACTOR_MAX: &str = "factor-max";

/// Distance bounds for a single power factor `((1-z)/|1-z|)^beta`.
pub fn bounds_single(beta: f64) -> Result<DistanceBounds> {
    if beta < -2.0 {
        return Err(Error::domain(format!("beta must be at least -2, got {beta}")));
    }
    if beta == -2.0 {
        // The symbol at -2 has distance exactly 1; the associated extremal
        // problem has no integrable function beneath it.
        return Ok(DistanceBounds {
            lower: 1.0,
            upper: 1.0,
            lower_source: SOURCE_ANNIHILATOR,
            upper_source: SOURCE_ANNIHILATOR,
            conjectured: None,
            verdict: Verdict::NotStronglyExposed,
        });
    }
    let s = sin_pi(beta / 2.0).abs();
    if beta >= 0.0 {
        Ok(DistanceBounds {
            lower: 0.5 * s / (beta + 2.0),
            upper: (4.0 / std::f64::consts::PI) * s / (beta + 2.0),
            lower_source: SOURCE_BLOCH_LOWER,
            upper_source: SOURCE_BLOCH_UPPER,
            conjectured: None,
            verdict: Verdict::StronglyExposed,
        })
    } else if beta > -1.0 {
        let lower = (2.0 / std::f64::consts::PI) * s / (beta + 2.0);
        Ok(DistanceBounds {
            lower,
            upper: s,
            lower_source: SOURCE_FUNCTIONAL_LIMIT,
            upper_source: SOURCE_SINE_BOUND,
            conjectured: Some(lower),
            verdict: Verdict::StronglyExposed,
        })
    } else {
        let lower = (2.0 / std::f64::consts::PI) * s / (beta + 2.0);
        Ok(DistanceBounds {
            lower,
            upper: 1.0,
            lower_source: SOURCE_FUNCTIONAL_LIMIT,
            upper_source: SOURCE_TRIVIAL_BALL,
            conjectured: Some(lower),
            verdict: Verdict::Unknown,
        })
    }
}

/// Distance bounds for a product symbol: the distance equals the maximum of
/// the per-factor distances, so the interval endpoints combine by maxima and
/// the verdict is strongly exposed exactly when every factor is.
///
/// A continuous zero-free outer factor has no effect on the distance and is
/// therefore not represented.
pub fn bounds_product(symbol: &PowerSymbol) -> Result<DistanceBounds> {
    if symbol.is_sub_integrable() {
        return Err(Error::domain(
            "product bounds require integrable factors (beta > -2)".to_string(),
        ));
    }
    if symbol.factors().is_empty() {
        return Err(Error::domain("product bounds require at least one factor".to_string()));
    }
    if symbol.factors().len() == 1 {
        return bounds_single(symbol.factors()[0].exponent);
    }
    let parts: Vec<DistanceBounds> = symbol
        .factors()
        .iter()
        .map(|f| bounds_single(f.exponent))
        .collect::<Result<_>>()?;
    let lower = parts.iter().map(|b| b.lower).fold(0.0, f64::max);
    let upper = parts.iter().map(|b| b.upper).fold(0.0, f64::max);
    let verdict = if parts.iter().all(|b| b.verdict == Verdict::StronglyExposed) {
        Verdict::StronglyExposed
    } else {
        Verdict::Unknown
    };
    // A point prediction exists only when every factor carries one or is
    // pinned by its own interval; in practice: all factors conjectured.
    let conjectured = if parts.iter().all(|b| b.conjectured.is_some()) {
        parts.iter().filter_map(|b| b.conjectured).fold(None, |acc: Option<f64>, c| {
            Some(acc.map_or(c, |a| a.max(c)))
        })
    } else {
        None
    };
    Ok(DistanceBounds {
        lower,
        upper,
        lower_source: SOURCE_FACTOR_MAX,
        upper_source: SOURCE_FACTOR_MAX,
        conjectured,
        verdict,
    })
}

/// Measured lower bound for the distance: `(pi/8)` times the little-Bloch
/// distance of the projected symbol (the projection quotient map is bounded
/// by `8/pi`).
pub fn numeric_lower_bound(beta: f64, series: &TaylorSeries) -> Result<f64> {
    if beta < 0.0 {
        return Err(Error::domain(
            "the numeric lower bound is derived for beta >= 0".to_string(),
        ));
    }
    let d = little_bloch_distance(series, beta)?;
    Ok(std::f64::consts::FRAC_PI_8 * d.estimate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use crate::projection::Factor;

    #[test]
    fn single_bounds_reference_values() {
        // beta = 1: [1/6, 4/(3 pi)]
        let b = bounds_single(1.0).unwrap();
        assert!((b.lower - 1.0 / 6.0).abs() < 1e-15);
        assert!((b.upper - 4.0 / (3.0 * std::f64::consts::PI)).abs() < 1e-15);
        assert_eq!(b.verdict, Verdict::StronglyExposed);
        assert!(b.conjectured.is_none());

        // beta = 2: sin(pi) = 0, interval collapses to [0, 0]
        let b = bounds_single(2.0).unwrap();
        assert!(b.lower.abs() < 1e-15 && b.upper.abs() < 1e-15);
        assert_eq!(b.verdict, Verdict::StronglyExposed);

        // beta = -1.5: lower = (2/pi) sin(3pi/4) / 0.5, upper = 1, unknown
        let b = bounds_single(-1.5).unwrap();
        let want = (2.0 / std::f64::consts::PI) * (0.75 * std::f64::consts::PI).sin() / 0.5;
        assert!((b.lower - want).abs() < 1e-12);
        assert!((want - 0.900316316157106).abs() < 1e-12);
        assert_eq!(b.upper, 1.0);
        assert_eq!(b.verdict, Verdict::Unknown);
        assert!((b.conjectured.unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn endpoint_and_domain() {
        let b = bounds_single(-2.0).unwrap();
        assert_eq!(b.verdict, Verdict::NotStronglyExposed);
        assert_eq!((b.lower, b.upper), (1.0, 1.0));
        assert!(bounds_single(-2.5).is_err());
    }

    #[test]
    fn frontier_verdicts() {
        let mut beta = -1.99;
        while beta < 4.0 {
            let b = bounds_single(beta).unwrap();
            assert!(b.lower <= b.upper + 1e-15, "beta={beta}");
            assert!(b.upper <= 1.0 + 1e-15);
            if let Some(c) = b.conjectured {
                assert!(c >= b.lower - 1e-15 && c <= b.upper + 1e-15);
            }
            let want = if beta > -1.0 {
                Verdict::StronglyExposed
            } else {
                Verdict::Unknown
            };
            assert_eq!(b.verdict, want, "beta={beta}");
            if beta >= 0.0 {
                assert!(b.upper <= 2.0 / std::f64::consts::PI + 1e-15);
            }
            beta += 0.1;
        }
    }

    #[test]
    fn lower_bound_continuous_across_zero() {
        let left = bounds_single(-1e-9).unwrap().lower;
        let right = bounds_single(1e-9).unwrap().lower;
        assert!(left < 1e-8 && right < 1e-8);
    }

    fn factor(beta: f64, angle: f64) -> Factor {
        Factor { base: Complex64::from_polar(1.0, angle), exponent: beta }
    }

    #[test]
    fn product_bounds() {
        // polynomial-type exponents are strongly exposed
        let s = PowerSymbol::new(vec![factor(1.0, 0.0), factor(2.0, 1.0), factor(3.0, 2.0)]).unwrap();
        let b = bounds_product(&s).unwrap();
        assert_eq!(b.verdict, Verdict::StronglyExposed);

        // mixing with an unknown factor
        let s = PowerSymbol::new(vec![factor(1.0, 0.0), factor(-1.5, std::f64::consts::PI)]).unwrap();
        let b = bounds_product(&s).unwrap();
        assert_eq!(b.verdict, Verdict::Unknown);
        assert!((b.lower - 0.900316316157106).abs() < 1e-12);

        // single factor falls back to bounds_single
        let s = PowerSymbol::new(vec![factor(1.0, 0.0)]).unwrap();
        let b = bounds_product(&s).unwrap();
        assert!((b.lower - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(b.lower_source, SOURCE_BLOCH_LOWER);
    }

    #[test]
    fn product_bounds_permutation_invariant() {
        let a = PowerSymbol::new(vec![factor(0.5, 0.0), factor(2.5, 1.5), factor(-0.5, 3.0)]).unwrap();
        let b = PowerSymbol::new(vec![factor(-0.5, 3.0), factor(0.5, 0.0), factor(2.5, 1.5)]).unwrap();
        let ba = bounds_product(&a).unwrap();
        let bb = bounds_product(&b).unwrap();
        assert_eq!(ba.lower, bb.lower);
        assert_eq!(ba.upper, bb.upper);
        assert_eq!(ba.verdict, bb.verdict);
    }
}
