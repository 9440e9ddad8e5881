//! Bloch norm `|f(0)| + sup (1-|z|^2)|f'(z)|`, radial boundary profiles, and
//! the little-Bloch distance of projected power symbols.
//!
//! The distance of `P phi_beta` to the little Bloch space equals the boundary
//! limsup of `(1-x^2)|(P phi_beta)'(x)|` along the positive real radius; the
//! coefficient law `n c_n -> -2 sin(beta pi/2)/(pi (beta+2))` makes that
//! profile linear in `(1-x)` up to a slowly varying logarithmic correction,
//! so the extrapolation fits `a + b u + c u ln(1/u)` in `u = 1-x` and reports
//! the intercept.

use num_complex::Complex64;

use crate::discquad::ls_fit_complex;
use crate::error::{Error, Result};
use crate::projection::TaylorSeries;
use crate::specfun::sin_pi;

/// Sample grid for the norm supremum: `radii x angles` points, radii uniform
/// in [0, 1), angles equispaced.
#[derive(Debug, Clone, Copy)]
pub struct RadialAngularGrid {
    pub radii: usize,
    pub angles: usize,
}

impl Default for RadialAngularGrid {
    fn default() -> Self {
        Self { radii: 64, angles: 256 }
    }
}

/// A function on the disc presented either as a truncated Taylor expansion or
/// as a callable pair (value, derivative).
pub enum BlochInput<'a> {
    Series(&'a TaylorSeries),
    Callable {
        f: &'a dyn Fn(Complex64) -> Complex64,
        derivative: &'a dyn Fn(Complex64) -> Complex64,
    },
}

impl BlochInput<'_> {
    fn value(&self, z: Complex64) -> Complex64 {
        match self {
            BlochInput::Series(s) => s.eval(z),
            BlochInput::Callable { f, .. } => f(z),
        }
    }

    fn derivative(&self, z: Complex64) -> Complex64 {
        match self {
            BlochInput::Series(s) => s.derivative(z),
            BlochInput::Callable { derivative, .. } => derivative(z),
        }
    }

    fn tail_bound(&self) -> f64 {
        match self {
            BlochInput::Series(s) => s.tail_bound,
            BlochInput::Callable { .. } => 0.0,
        }
    }

    fn truncation_order(&self) -> Option<usize> {
        match self {
            BlochInput::Series(s) => Some(s.order()),
            BlochInput::Callable { .. } => None,
        }
    }
}

/// Bloch norm value with the radial boundary profile along the positive axis.
#[derive(Debug, Clone)]
pub struct BlochEstimate {
    /// `|f(0)| + sup (1-|z|^2)|f'(z)|` over the refined sample grid.
    pub norm: f64,
    /// Truncation-tail contribution added to the reported norm as uncertainty.
    pub norm_uncertainty: f64,
    /// Samples `(x, (1-x^2)|f'(x)|)` for x increasing toward 1.
    pub radial_profile: Vec<(f64, f64)>,
    /// Extrapolated boundary limit of the radial profile.
    pub boundary_limsup: f64,
    /// Residual of the profile fit.
    pub limsup_error: f64,
}

fn seminorm_at(input: &BlochInput, z: Complex64) -> f64 {
    (1.0 - z.norm_sqr()) * input.derivative(z).norm()
}

/// Bloch norm by grid scan plus local pattern refinement of the supremum.
pub fn bloch_norm(input: &BlochInput, grid: &RadialAngularGrid) -> Result<BlochEstimate> {
    if grid.radii == 0 || grid.angles == 0 {
        return Err(Error::config("bloch_norm requires a non-empty grid"));
    }
    let mut best = (0.0_f64, Complex64::new(0.0, 0.0));
    for i in 0..grid.radii {
        let r = i as f64 / grid.radii as f64;
        for j in 0..grid.angles {
            let t = 2.0 * std::f64::consts::PI * j as f64 / grid.angles as f64;
            let z = Complex64::from_polar(r, t);
            let v = seminorm_at(input, z);
            if v > best.0 {
                best = (v, z);
            }
        }
    }
    // Pattern search around the grid argmax; radius may approach (not reach) 1.
    let mut dr = 1.0 / grid.radii as f64;
    let mut dt = 2.0 * std::f64::consts::PI / grid.angles as f64;
    let (mut val, mut at) = best;
    let mut r = at.norm();
    let mut t = at.arg();
    for _ in 0..80 {
        let mut moved = false;
        for (nr, nt) in [
            ((r + dr).min(1.0 - 1e-9), t),
            ((r - dr).max(0.0), t),
            (r, t + dt),
            (r, t - dt),
        ] {
            let z = Complex64::from_polar(nr, nt);
            let v = seminorm_at(input, z);
            if v > val {
                val = v;
                r = nr;
                t = nt;
                at = z;
                moved = true;
            }
        }
        if !moved {
            dr *= 0.5;
            dt *= 0.5;
            if dr < 1e-12 && dt < 1e-12 {
                break;
            }
        }
    }
    let _ = at;

    // Tail uncertainty for truncated series: sup over the grid of the
    // derivative-tail bound (1+x) tail_bound x^N.
    let norm_uncertainty = match input.truncation_order() {
        Some(order) if input.tail_bound() > 0.0 => {
            let mut worst = 0.0_f64;
            for i in 0..grid.radii {
                let x = i as f64 / grid.radii as f64;
                worst = worst.max((1.0 + x) * input.tail_bound() * x.powi(order as i32));
            }
            worst
        }
        _ => 0.0,
    };

    let f0 = input.value(Complex64::new(0.0, 0.0)).norm();
    let (profile, limsup, limsup_err) = radial_profile(input, None);
    Ok(BlochEstimate {
        norm: f0 + val,
        norm_uncertainty,
        radial_profile: profile,
        boundary_limsup: limsup,
        limsup_error: limsup_err,
    })
}

/// Profile samples along the positive real axis at `x = 1 - 2^-k`, a tail
/// correction when an asymptote is supplied, and the fitted intercept.
fn radial_profile(
    input: &BlochInput,
    tail_asymptote: Option<(f64, usize)>,
) -> (Vec<(f64, f64)>, f64, f64) {
    let k_cap = match input.truncation_order() {
        Some(n) if input.tail_bound() > 0.0 => ((n as f64 / 1.4).log2().floor() as i32).max(4),
        _ => 20,
    };
    let mut xs = Vec::new();
    let mut vals = Vec::new();
    for k in 2..=k_cap {
        let x = 1.0 - 2.0_f64.powi(-k);
        let mut d = input.derivative(Complex64::new(x, 0.0));
        if let Some((a, n)) = tail_asymptote {
            d += Complex64::new(a * x.powi(n as i32) / (1.0 - x), 0.0);
        }
        xs.push(x);
        vals.push((1.0 - x * x) * d.norm());
    }
    let m = xs.len().min(4);
    if m < 2 {
        let v = *vals.last().unwrap_or(&0.0);
        return (xs.into_iter().zip(vals).collect(), v, f64::INFINITY);
    }
    // a + b (1-x) on the last points.
    let tail_xs = &xs[xs.len() - m..];
    let tail_vals: Vec<Complex64> = vals[vals.len() - m..]
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    let basis = vec![
        vec![1.0; m],
        tail_xs.iter().map(|&x| 1.0 - x).collect::<Vec<_>>(),
    ];
    let (a, resid) = ls_fit_complex(&basis, &tail_vals);
    (xs.into_iter().zip(vals).collect(), a.re.max(0.0), resid)
}

/// Result of the little-Bloch distance estimation for a projected symbol.
#[derive(Debug, Clone)]
pub struct LittleBlochDistance {
    /// Extrapolated boundary limsup of the radial profile.
    pub estimate: f64,
    /// Closed-form distance `(4/pi) |sin(beta pi/2)| / (beta + 2)`.
    pub expected: f64,
    /// Profile samples used for the fit.
    pub profile: Vec<(f64, f64)>,
    /// Fit residual plus the window-stability gap.
    pub fit_error: f64,
}

/// Distance of the projected series to the little Bloch space, with the
/// closed-form value it is expected to approach.
///
/// The truncated derivative is completed with the empirical coefficient
/// asymptote (mean of `n c_n` over the last decade of computed
/// coefficients), which extends the usable radial window without assuming
/// the answer. Profiles whose fit window is too short or unstable (series
/// order too small for the grid, or an exponent too close to an even
/// integer) are rejected with an error asking for a larger order.
pub fn little_bloch_distance(series: &TaylorSeries, beta: f64) -> Result<LittleBlochDistance> {
    let order = series.order();
    if order < 8 {
        return Err(Error::InsufficientResolution(
            "series order is too small for a boundary profile; raise the projection order"
                .to_string(),
        ));
    }
    let expected = (4.0 / std::f64::consts::PI) * sin_pi(beta / 2.0).abs() / (beta + 2.0);

    // Signed empirical asymptote of n c_n over the last tenth of the series.
    let start = order - (order / 10).max(5).min(order - 1);
    let mut a_emp = 0.0;
    let mut count = 0.0;
    for n in start..=order {
        a_emp += n as f64 * series.coeffs[n].re;
        count += 1.0;
    }
    a_emp /= count;

    let exact_tail = series.tail_bound == 0.0;
    let k_cap = if exact_tail {
        20
    } else {
        ((order as f64 / 1.4).log2().floor() as i32).max(4)
    };

    let mut us: Vec<f64> = Vec::new();
    let mut vals: Vec<Complex64> = Vec::new();
    let mut profile = Vec::new();
    for k in 2..=k_cap {
        let x = 1.0 - 2.0_f64.powi(-k);
        let mut d = series.derivative_real(x);
        if !exact_tail {
            d += Complex64::new(a_emp * x.powi(order as i32) / (1.0 - x), 0.0);
        }
        let v = (1.0 - x * x) * d.norm();
        us.push(1.0 - x);
        vals.push(Complex64::new(v, 0.0));
        profile.push((x, v));
    }
    if us.len() < 5 {
        return Err(Error::InsufficientResolution(format!(
            "only {} usable profile points; raise the projection order",
            us.len()
        )));
    }

    let fit = |m: usize| {
        let u = &us[us.len() - m..];
        let v = &vals[vals.len() - m..];
        let basis = vec![
            vec![1.0; m],
            u.to_vec(),
            u.iter().map(|&x| x * (1.0 / x).ln()).collect::<Vec<_>>(),
        ];
        ls_fit_complex(&basis, v)
    };
    let (a5, r5) = fit(5);
    let (a4, _) = fit(4);
    let scale = a5.re.abs().max(a4.re.abs()).max(1e-12);
    let gap = (a5.re - a4.re).abs();
    if !exact_tail && gap > 0.025 * scale {
        return Err(Error::InsufficientResolution(format!(
            "profile fit is unstable (window gap {:.2e} against scale {:.2e}); raise the projection order",
            gap, scale
        )));
    }
    Ok(LittleBlochDistance {
        estimate: a5.re.max(0.0),
        expected,
        profile,
        fit_error: r5 + gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::{project, PowerSymbol};

    fn grid() -> RadialAngularGrid {
        RadialAngularGrid::default()
    }

    #[test]
    fn norm_of_identity_function() {
        // f(z) = z: |f(0)| = 0, sup (1-|z|^2) * 1 = 1 at the origin.
        let f = |z: Complex64| z;
        let df = |_: Complex64| Complex64::new(1.0, 0.0);
        let e = bloch_norm(&BlochInput::Callable { f: &f, derivative: &df }, &grid()).unwrap();
        assert!((e.norm - 1.0).abs() < 1e-12, "norm {}", e.norm);
    }

    #[test]
    fn norm_of_constant() {
        let f = |_: Complex64| Complex64::new(1.0, 0.0);
        let df = |_: Complex64| Complex64::new(0.0, 0.0);
        let e = bloch_norm(&BlochInput::Callable { f: &f, derivative: &df }, &grid()).unwrap();
        assert!((e.norm - 1.0).abs() < 1e-14);
        assert!(e.boundary_limsup.abs() < 1e-14);
    }

    #[test]
    fn norm_of_log_kernel() {
        // f(z) = log(1/(1-z)): sup (1-|z|^2)/|1-z| = 2, attained radially.
        let f = |z: Complex64| -(Complex64::new(1.0, 0.0) - z).ln();
        let df = |z: Complex64| (Complex64::new(1.0, 0.0) - z).inv();
        let e = bloch_norm(&BlochInput::Callable { f: &f, derivative: &df }, &grid()).unwrap();
        assert!((e.norm - 2.0).abs() < 1e-3, "norm {}", e.norm);
    }

    #[test]
    fn series_and_callable_paths_agree_on_polynomials() {
        let series = TaylorSeries {
            coeffs: vec![
                Complex64::new(0.3, 0.0),
                Complex64::new(-1.0, 0.2),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.25, -0.1),
            ],
            tail_bound: 0.0,
        };
        let f = {
            let s = series.clone();
            move |z: Complex64| s.eval(z)
        };
        let df = {
            let s = series.clone();
            move |z: Complex64| s.derivative(z)
        };
        let a = bloch_norm(&BlochInput::Series(&series), &grid()).unwrap();
        let b = bloch_norm(&BlochInput::Callable { f: &f, derivative: &df }, &grid()).unwrap();
        assert!((a.norm - b.norm).abs() < 1e-10);
    }

    #[test]
    fn empty_grid_rejected() {
        let f = |z: Complex64| z;
        let df = |_: Complex64| Complex64::new(1.0, 0.0);
        let g = RadialAngularGrid { radii: 0, angles: 8 };
        assert!(bloch_norm(&BlochInput::Callable { f: &f, derivative: &df }, &g).is_err());
    }

    #[test]
    fn little_bloch_even_exponents_vanish() {
        for &beta in &[0.0, 2.0, 4.0] {
            let s = PowerSymbol::single_at_one(beta).unwrap();
            let t = project(&s, 50, 1_000_000).unwrap();
            let d = little_bloch_distance(&t, beta).unwrap();
            assert!(d.estimate <= 1e-6, "beta={beta}: estimate {}", d.estimate);
            assert_eq!(d.expected, 0.0);
        }
    }

    #[test]
    fn little_bloch_matches_theorem_at_beta_one() {
        let s = PowerSymbol::single_at_one(1.0).unwrap();
        let t = project(&s, 2000, 1_000_000).unwrap();
        let d = little_bloch_distance(&t, 1.0).unwrap();
        let rel = ((d.estimate - d.expected) / d.expected).abs();
        assert!(rel < 0.05, "estimate {} expected {} rel {rel:.3}", d.estimate, d.expected);
        assert!((d.expected - 4.0 / (3.0 * std::f64::consts::PI)).abs() < 1e-15);
    }

    #[test]
    fn little_bloch_rejects_tiny_orders() {
        let s = PowerSymbol::single_at_one(1.0).unwrap();
        let t = project(&s, 20, 1_000_000).unwrap();
        let err = little_bloch_distance(&t, 1.0).unwrap_err();
        assert!(matches!(err, Error::InsufficientResolution(_)));
    }
}
