//! Bergman-space norms of power functions, exposing functionals, and the
//! quantitative limit experiments: the `g_n` norm law, the negative-exponent
//! functional limit, the exposed-but-not-strongly-exposed witness, and the
//! shift norm equivalence.
//!
//! The norm of `(1-z)^beta` is computed as the orthogonality series
//! `sum_k a_k^2/(k+1)` over the binomial coefficients `a_k` of exponent
//! `beta/2`, truncated with an asymptotic tail correction: the terms behave
//! like `k^{-beta-3} / Gamma(-beta/2)^2`, so the un-summed remainder is a
//! two-term power integral. Near `beta = -2` the tail carries almost the
//! whole value, which is exactly the regime the `g_n` experiments probe.

use num_complex::Complex64;

use crate::discquad::{ls_fit_complex, DiscQuadrature, PunchedValue};
use crate::error::{Error, Result};
use crate::projection::{Polynomial, PowerSymbol};
use crate::specfun::{log_abs_gamma, log_gamma};

/// How a norm value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMethod {
    Series,
    ClosedForm,
    Quadrature,
}

impl std::fmt::Display for NormMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormMethod::Series => write!(f, "series"),
            NormMethod::ClosedForm => write!(f, "closed_form"),
            NormMethod::Quadrature => write!(f, "quadrature"),
        }
    }
}

/// A Bergman-norm value with its provenance and a residual estimate.
#[derive(Debug, Clone, Copy)]
pub struct NormResult {
    pub value: f64,
    pub method: NormMethod,
    pub error_estimate: f64,
}

/// Default truncation of the norm and functional series.
pub const DEFAULT_SERIES_TRUNCATION: usize = 2_000_000;

/// `||(1-z)^beta||_1` by the orthogonality series with tail correction.
pub fn power_norm_series(beta: f64, k_max: usize) -> Result<NormResult> {
    if beta <= -2.0 {
        return Err(Error::Divergence {
            message: format!("the Bergman norm of (1-z)^beta diverges for beta = {beta} <= -2"),
            values: vec![],
        });
    }
    let b = beta / 2.0;
    let k_used = k_max.min(DEFAULT_SERIES_TRUNCATION).max(64);
    let mut a = 1.0_f64;
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut last_k = k_used;
    for k in 0..=k_used {
        let term = a * a / (k as f64 + 1.0);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if a == 0.0 {
            // Integer b: the binomial series terminates and the sum is exact.
            return Ok(NormResult { value: sum, method: NormMethod::Series, error_estimate: 0.0 });
        }
        if k > 64 && term < 1e-18 * sum {
            last_k = k;
            break;
        }
        a *= (k as f64 - b) / (k as f64 + 1.0);
    }
    // Tail: sum_{k>K} t_k ~ (1/Gamma(-b)^2) x^{-2b-3} (1 + (b^2+b-1)/x),
    // integrated from the midpoint X = K + 3/2.
    let x = last_k as f64 + 1.5;
    let (lg, _) = log_abs_gamma(-b)?;
    let c = (-2.0 * lg).exp();
    let t1 = x.powf(-2.0 * b - 2.0) / (2.0 * b + 2.0);
    let t2 = (b * b + b - 1.0) * x.powf(-2.0 * b - 3.0) / (2.0 * b + 3.0);
    let tail = c * (t1 + t2);
    let err = tail.abs() * 8.0 * (b.abs() + 2.0) * (b.abs() + 2.0) / (x * x) + 4e-16 * sum.abs();
    Ok(NormResult { value: sum + tail, method: NormMethod::Series, error_estimate: err })
}

/// Closed form `||(1-z)^beta||_1 = Gamma(beta+2) / Gamma(beta/2+2)^2`; the
/// independent cross-check of [`power_norm_series`].
pub fn power_norm_closed(beta: f64) -> Result<NormResult> {
    if beta <= -2.0 {
        return Err(Error::Divergence {
            message: format!("the Bergman norm of (1-z)^beta diverges for beta = {beta} <= -2"),
            values: vec![],
        });
    }
    let value = (log_gamma(beta + 2.0)? - 2.0 * log_gamma(beta / 2.0 + 2.0)?).exp();
    Ok(NormResult { value, method: NormMethod::ClosedForm, error_estimate: 4e-16 * value })
}

/// One row of the `g_n` norm scan.
#[derive(Debug, Clone, Copy)]
pub struct GnRow {
    pub n: u32,
    /// `||g_n||_1` with `g_n = (1/n) (1-z)^{-2+1/n}`, by the series.
    pub norm: f64,
    /// `Gamma(1/n) / (n Gamma(1+1/2n)^2)`.
    pub closed_form: f64,
}

/// Norms `||g_n||_1` along a grid of n; the sequence tends to 1.
pub fn g_n_limit_scan(n_grid: &[u32], k_max: usize) -> Result<Vec<GnRow>> {
    let mut rows = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        if n == 0 {
            return Err(Error::domain("g_n scan requires n >= 1".to_string()));
        }
        let beta = -2.0 + 1.0 / n as f64;
        let norm = power_norm_series(beta, k_max)?.value / n as f64;
        let closed = power_norm_closed(beta)?.value / n as f64;
        rows.push(GnRow { n, norm, closed_form: closed });
    }
    Ok(rows)
}

/// Evaluation of the exposing functional `L(g) = int g conj(phi) dA`.
#[derive(Debug, Clone)]
pub struct FunctionalEvaluation {
    pub value: Complex64,
    pub error_estimate: f64,
    /// What was integrated.
    pub integrand: String,
    /// Rule that produced the value.
    pub quadrature: String,
}

/// Applies the exposing functional of a power symbol to `g` by punched
/// quadrature.
pub fn exposing_functional(
    g: &dyn Fn(Complex64) -> Complex64,
    symbol: &PowerSymbol,
    q: &DiscQuadrature,
) -> Result<FunctionalEvaluation> {
    let r = q.integrate_extrapolated(|z| g(z) * symbol.eval(z).conj())?;
    let factors: Vec<String> = symbol
        .factors()
        .iter()
        .map(|f| format!("beta={} at {:.3}{:+.3}i", f.exponent, f.base.re, f.base.im))
        .collect();
    Ok(FunctionalEvaluation {
        value: r.value,
        error_estimate: r.error,
        integrand: format!("int g conj(phi) dA, phi: [{}]", factors.join(", ")),
        quadrature: format!(
            "gauss-legendre {} x trapezoid {}, eps {:.1e}..{:.1e}",
            q.radial_order,
            q.angular_order,
            q.epsilon_schedule.first().copied().unwrap_or(0.0),
            q.epsilon_schedule.last().copied().unwrap_or(0.0),
        ),
    })
}

/// `L(g_n)` for the symbol `phi_beta`, `beta` in (-2, 0), by the explicit
/// Gamma-ratio series; approaches `(2/pi) |sin(beta pi/2)| / (beta+2)`.
pub fn negbeta_functional_series(beta: f64, n: u32, k_max: usize) -> Result<f64> {
    if !(-2.0..0.0).contains(&beta) || beta == -2.0 {
        return Err(Error::domain(format!("negbeta functional requires beta in (-2, 0), got {beta}")));
    }
    if n == 0 {
        return Err(Error::domain("negbeta functional requires n >= 1".to_string()));
    }
    let b = beta / 2.0;
    let nf = n as f64;
    let a = 2.0 + b - 1.0 / nf;
    // Terms normalized by the leading Gamma product: t_0 = 1.
    let k_used = k_max.min(DEFAULT_SERIES_TRUNCATION).max(64);
    let mut t = 1.0_f64;
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for k in 0..=k_used {
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        let kf = k as f64;
        t *= (kf + a) * (kf - b) / ((kf + 2.0) * (kf + 1.0));
    }
    // Un-normalized tail of sum Gamma(a+k) Gamma(k-b) / ((k+1)! k!) from the
    // midpoint: integrand x^{a-b-3} (1 + c1/x).
    let x = k_used as f64 + 1.5;
    let e = a - b - 3.0;
    let c1 = ((a - 2.0) * (a + 1.0) + b * (b + 1.0)) / 2.0;
    let tail_unnormalized = x.powf(e + 1.0) / (-(e + 1.0)) + c1 * x.powf(e) / (-e);
    let (lga, _) = log_abs_gamma(a)?;
    let (lgb, _) = log_abs_gamma(-b)?;
    let tail = tail_unnormalized * (-(lga + lgb)).exp();
    Ok((sum + tail) / nf)
}

/// Limit value of [`negbeta_functional_series`] as n tends to infinity.
pub fn negbeta_limit(beta: f64) -> f64 {
    (2.0 / std::f64::consts::PI) * crate::specfun::sin_pi(beta / 2.0).abs() / (beta + 2.0)
}

/// The exposed-but-not-strongly-exposed witness function
/// `f(z) = c z^2 / ((1-z)^2 log^2(1-z))`, evaluated without the
/// normalization constant.
fn log_witness_unnormalized(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let l = (one - z).ln();
    z * z / ((one - z) * (one - z) * l * l)
}

/// One row of the counterexample experiment.
#[derive(Debug, Clone, Copy)]
pub struct LognietRow {
    pub beta: f64,
    /// `L(f_beta) = int f_beta conj(phi) dA` for the witness's functional.
    pub functional: f64,
    pub functional_error: f64,
    /// Punched-quadrature value of `||f_beta - f||_1`.
    pub norm_diff: f64,
    /// Certified lower bound from the region away from the singularity.
    pub norm_diff_witness: f64,
    /// `sup |f_beta|` off a fixed neighbourhood of z = 1; tends to zero.
    pub off_singularity_sup: f64,
}

/// Output of the counterexample experiment.
#[derive(Debug, Clone)]
pub struct LognietTable {
    /// Normalizing constant making `||f||_1 = 1`.
    pub c: f64,
    pub c_error: f64,
    pub rows: Vec<LognietRow>,
}

/// Keeps the schedule entries whose punched set is fine enough to fit.
fn usable_rows(rows: &[PunchedValue]) -> Vec<&PunchedValue> {
    rows.iter().filter(|r| r.punched_count >= 64).collect()
}

/// Least-squares limit with the supplied extra basis columns over the usable
/// schedule entries; returns (limit, error estimate).
fn model_limit(
    rows: &[PunchedValue],
    columns: impl Fn(f64) -> Vec<f64>,
) -> Result<(f64, f64)> {
    let usable = usable_rows(rows);
    if usable.len() < 4 {
        return Err(Error::InsufficientResolution(
            "punched-disc schedule leaves too few resolved entries; raise the quadrature orders"
                .to_string(),
        ));
    }
    let npts = usable.len();
    let vals: Vec<Complex64> = usable.iter().map(|r| r.value).collect();
    let mut basis: Vec<Vec<f64>> = vec![vec![1.0; npts]];
    let ncols = columns(usable[0].eps).len();
    for j in 0..ncols {
        basis.push(usable.iter().map(|r| columns(r.eps)[j]).collect());
    }
    let (limit, rms) = ls_fit_complex(&basis, &vals);
    let err = (2.0 * rms).max(0.05 * (limit - vals[npts - 1]).norm());
    Ok((limit.re, err))
}

/// Runs the counterexample experiment: along a grid descending toward -2,
/// the functional values `L(f_beta)` approach 1 while the normalized
/// functions `f_beta` go to zero locally uniformly off z = 1, so they cannot
/// converge to the witness in norm.
///
/// The punched values are extrapolated with the integrands' known
/// singularity structure at z = 1: `f_beta` contributes an `eps^{beta+2}`
/// scale (with a logarithmic phase drift) and the witness an `1/ln(1/eps)`
/// scale.
pub fn logniet_experiment(beta_grid: &[f64], q: &DiscQuadrature) -> Result<LognietTable> {
    if beta_grid.is_empty() {
        return Err(Error::domain("counterexample experiment requires a beta grid".to_string()));
    }
    for &b in beta_grid {
        if !(-2.0 < b && b <= -1.5) {
            return Err(Error::domain(format!(
                "counterexample grid must lie in (-2, -1.5], got {b}"
            )));
        }
    }
    if beta_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("counterexample grid must descend toward -2".to_string()));
    }

    // Normalization: c = 1 / int |f|/c dA, fitted against the log law.
    let (_, rows) = q.punched_values(|z| {
        Complex64::new(log_witness_unnormalized(z).norm(), 0.0)
    })?;
    let (i_log, i_err) = model_limit(&rows, |e| {
        let l = (1.0 / e).ln();
        vec![1.0 / l, 1.0 / (l * l), 1.0 / (l * l * l)]
    })?;
    let c = 1.0 / i_log;
    let c_error = i_err / (i_log * i_log);

    let mut out = Vec::with_capacity(beta_grid.len());
    for &beta in beta_grid {
        let norm_beta = power_norm_series(beta, DEFAULT_SERIES_TRUNCATION)?.value;
        let c_beta = 1.0 / norm_beta;
        let p = beta + 2.0;

        // L(f_beta): the normalization of phi cancels, so c is not needed.
        let (_, rows) = q.punched_values(|z| {
            let one = Complex64::new(1.0, 0.0);
            let fb = c_beta * ((one - z).powf(beta) * Complex64::new(1.0, 0.0));
            let w = log_witness_unnormalized(z);
            fb * (w.conj() / w.norm())
        })?;
        let (functional, functional_error) = model_limit(&rows, |e| {
            let l = (1.0 / e).ln();
            vec![e.powf(p), e.powf(p) / l]
        })?;

        // || f_beta - f ||_1
        let (_, rows) = q.punched_values(|z| {
            let one = Complex64::new(1.0, 0.0);
            let fb = c_beta * (one - z).powf(beta);
            let f = c * log_witness_unnormalized(z);
            Complex64::new((fb - f).norm(), 0.0)
        })?;
        let (norm_diff, _) = model_limit(&rows, |e| {
            let l = (1.0 / e).ln();
            vec![e.powf(p), 1.0 / l, 1.0 / (l * l)]
        })?;

        // Certified witness away from the singularity: the exclusion makes
        // both integrands smooth.
        let away = DiscQuadrature::new(
            q.radial_order,
            q.angular_order,
            0.1,
            q.epsilon_schedule.clone(),
        )?;
        let int_f = away
            .integrate(|z| Complex64::new(c * log_witness_unnormalized(z).norm(), 0.0))?
            .re;
        let int_fb = away
            .integrate(|z| Complex64::new(c_beta * (Complex64::new(1.0, 0.0) - z).norm().powf(beta), 0.0))?
            .re;
        let witness = (int_f - int_fb).max(0.0);

        // sup of |f_beta| off B(1, 0.1): the modulus is largest at distance 0.1.
        let off_sup = c_beta * 0.1_f64.powf(beta);

        out.push(LognietRow {
            beta,
            functional,
            functional_error,
            norm_diff,
            norm_diff_witness: witness,
            off_singularity_sup: off_sup,
        });
    }
    Ok(LognietTable { c, c_error, rows: out })
}

/// One row of the shift norm-equivalence table.
#[derive(Debug, Clone)]
pub struct ShiftNormRow {
    pub degree: usize,
    pub norm: f64,
    pub shifted_norm: f64,
    /// `||F||_1 / ||zF||_1`, always in [1, 4].
    pub ratio: f64,
}

/// Ratios `||F||_1 / ||z F||_1` for a sample of polynomials.
pub fn shift_norm_equivalence(polys: &[Polynomial], q: &DiscQuadrature) -> Result<Vec<ShiftNormRow>> {
    let mut rows = Vec::with_capacity(polys.len());
    for p in polys {
        if p.degree() > 10 {
            return Err(Error::domain("shift norm check accepts degree at most 10".to_string()));
        }
        let norm = q.integrate(|z| Complex64::new(p.eval(z).norm(), 0.0))?.re;
        if norm == 0.0 {
            return Err(Error::domain("shift norm check requires nonzero polynomials".to_string()));
        }
        let shifted = p.shifted();
        let shifted_norm = q.integrate(|z| Complex64::new(shifted.eval(z).norm(), 0.0))?.re;
        rows.push(ShiftNormRow { degree: p.degree(), norm, shifted_norm, ratio: norm / shifted_norm });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_constant_and_linear() {
        let r = power_norm_series(0.0, 1000).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        // beta = 2: ||(1-z)^2||_1 -- closed form Gamma(4)/Gamma(3)^2 = 6/4
        let r = power_norm_series(2.0, 100_000).unwrap();
        assert!((r.value - 1.5).abs() < 1e-10, "got {}", r.value);
    }

    #[test]
    fn norm_closed_form_agreement() {
        for &beta in &[-1.99, -1.5, -1.0, -0.5, 0.5, 1.0, 3.2] {
            let s = power_norm_series(beta, DEFAULT_SERIES_TRUNCATION).unwrap();
            let c = power_norm_closed(beta).unwrap();
            let rel = ((s.value - c.value) / c.value).abs();
            assert!(rel <= 1e-8, "beta={beta}: series {} closed {} rel {rel:.2e}", s.value, c.value);
        }
    }

    #[test]
    fn norm_beta_minus_one_is_four_over_pi() {
        let r = power_norm_series(-1.0, DEFAULT_SERIES_TRUNCATION).unwrap();
        let want = 4.0 / std::f64::consts::PI;
        assert!((r.value - want).abs() < 1e-8, "got {} want {want}", r.value);
    }

    #[test]
    fn norm_divergence_below_minus_two() {
        assert!(matches!(power_norm_series(-2.0, 100).unwrap_err(), Error::Divergence { .. }));
        assert!(power_norm_series(-2.5, 100).is_err());
    }

    #[test]
    fn g_n_scan_matches_closed_form_and_descends_to_one() {
        let rows = g_n_limit_scan(&[1, 2, 10, 100], DEFAULT_SERIES_TRUNCATION).unwrap();
        let reference = [
            1.273239544735163,   // 4/pi
            1.0787052023767587,  // Gamma(1/2)/(2 Gamma(5/4)^2)
            1.0038410617867280,
            1.0000408260191072,
        ];
        for (row, want) in rows.iter().zip(reference) {
            let rel = ((row.norm - want) / want).abs();
            assert!(rel <= 1e-8, "n={}: {} vs {want}", row.n, row.norm);
            let relc = ((row.norm - row.closed_form) / row.closed_form).abs();
            assert!(relc <= 1e-8, "series vs closed at n={}", row.n);
        }
        for w in rows.windows(2) {
            assert!(w[1].norm < w[0].norm && w[1].norm > 1.0, "not monotone toward 1");
        }
    }

    #[test]
    fn negbeta_series_matches_closed_form() {
        // Closed form: L(g_n) = Gamma(1/n) / (n Gamma(1/n - b) Gamma(2 + b)).
        for &(beta, n) in &[(-1.0, 1u32), (-1.0, 10), (-1.0, 1000), (-0.5, 10), (-1.9, 1000)] {
            let b = beta / 2.0;
            let inv = 1.0 / n as f64;
            let closed = (log_gamma(inv).unwrap()
                - log_gamma(inv - b).unwrap()
                - log_gamma(2.0 + b).unwrap())
            .exp()
                / n as f64;
            let got = negbeta_functional_series(beta, n, DEFAULT_SERIES_TRUNCATION).unwrap();
            let rel = ((got - closed) / closed).abs();
            assert!(rel < 1e-7, "beta={beta} n={n}: {got} vs {closed} rel {rel:.2e}");
        }
    }

    #[test]
    fn negbeta_limits() {
        // beta = -1: limit 2/pi, approached within 2% at n = 1000.
        let l = negbeta_functional_series(-1.0, 1000, DEFAULT_SERIES_TRUNCATION).unwrap();
        let want = 2.0 / std::f64::consts::PI;
        assert!(((l - want) / want).abs() < 0.02, "got {l} want {want}");
        // beta = -0.5: limit (2/pi) sin(pi/4) / 1.5
        let want = negbeta_limit(-0.5);
        assert!((want - 0.3001054387190354).abs() < 1e-12);
        // beta -> -2: the limit tends to 1.
        assert!((negbeta_limit(-1.999) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn negbeta_continuity_in_beta() {
        // No pole artifacts across a beta scan at fixed n.
        let n = 50;
        let grid: Vec<f64> = (1..40).map(|i| -1.95 + 0.045 * i as f64).collect();
        let vals: Vec<f64> = grid
            .iter()
            .map(|&b| negbeta_functional_series(b, n, 200_000).unwrap())
            .collect();
        for w in vals.windows(2) {
            assert!((w[1] - w[0]).abs() < 0.08, "jump {} -> {}", w[0], w[1]);
        }
    }

    #[test]
    fn shift_norm_fixed_ratios() {
        let q = DiscQuadrature::default();
        // F = 1: ||1|| / ||z|| = 1 / (2/3) = 1.5
        let rows = shift_norm_equivalence(&[Polynomial::monomial(0)], &q).unwrap();
        assert!((rows[0].ratio - 1.5).abs() < 1e-10, "got {}", rows[0].ratio);
        // F = z^k: ratio (k+3)/(k+2)
        for k in 1..=6usize {
            let rows = shift_norm_equivalence(&[Polynomial::monomial(k)], &q).unwrap();
            let want = (k as f64 + 3.0) / (k as f64 + 2.0);
            assert!((rows[0].ratio - want).abs() < 1e-9, "k={k}: {}", rows[0].ratio);
        }
    }

    #[test]
    fn logniet_grid_validation() {
        let q = DiscQuadrature::default();
        assert!(logniet_experiment(&[], &q).is_err());
        assert!(logniet_experiment(&[-1.4], &q).is_err());
        assert!(logniet_experiment(&[-1.9, -1.7], &q).is_err());
        assert!(logniet_experiment(&[-2.0], &q).is_err());
    }
}
