//! Bergman projection of power symbols, by two independent routes: the
//! explicit Gamma-ratio series for the Taylor coefficients, and disc
//! quadrature against the moment form `(n+1) int f(w) conj(w)^n dA(w)`.
//!
//! For a single factor at base point 1 the symbol is
//! `phi_beta(w) = ((1-w)/|1-w|)^beta` and the projection has coefficients
//!
//! ```text
//! c_{beta,n} = (n+1) / (Gamma(-b) Gamma(b)) *
//!              sum_m Gamma(m+b) Gamma(m+n-b) / (m! (m+n+1)!),   b = beta/2.
//! ```
//!
//! At even beta the prefactor vanishes against pole terms of the sum; the
//! balanced limit collapses to a single Gamma ratio handled exactly by the
//! pole bookkeeping in [`crate::specfun::gamma_ratio`], which also yields the
//! exact zeros beyond the polynomial degree.

use num_complex::Complex64;

use crate::discquad::{DiscQuadrature, Extrapolated};
use crate::error::{Error, Result};
use crate::specfun::{self, gamma_ratio, sin_pi};

/// Tolerance for `|base| = 1` and base-point coincidence checks.
const BASE_TOLERANCE: f64 = 1e-12;

/// One factor `(1 - z conj(base))^exponent` of a power symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factor {
    pub base: Complex64,
    pub exponent: f64,
}

/// A finite product `prod_i ((1 - z conj(z_i))/|1 - z conj(z_i)|)^{beta_i}`
/// with distinct unimodular base points.
///
/// The exponents must exceed -2 so that the underlying function
/// `prod (1 - z conj(z_i))^{beta_i}` is area-integrable. Symbols violating
/// that bound (needed for annihilator experiments) can only be built through
/// [`PowerSymbol::new_unchecked`], which flags them.
#[derive(Debug, Clone)]
pub struct PowerSymbol {
    factors: Vec<Factor>,
    sub_integrable: bool,
}

impl PowerSymbol {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        for f in &factors {
            if (f.base.norm() - 1.0).abs() > BASE_TOLERANCE {
                return Err(Error::domain(format!(
                    "base point {} is not unimodular",
                    f.base
                )));
            }
            if f.exponent <= -2.0 {
                return Err(Error::domain(format!(
                    "exponent {} is not greater than -2; the underlying function is not integrable",
                    f.exponent
                )));
            }
        }
        for i in 0..factors.len() {
            for j in (i + 1)..factors.len() {
                if (factors[i].base - factors[j].base).norm() <= BASE_TOLERANCE {
                    return Err(Error::domain(format!(
                        "base points must be distinct, found coincident {}",
                        factors[i].base
                    )));
                }
            }
        }
        Ok(Self { factors, sub_integrable: false })
    }

    /// Builds a symbol without the `exponent > -2` check. The symbol itself
    /// is still unimodular; only the underlying function fails integrability.
    pub fn new_unchecked(factors: Vec<Factor>) -> Self {
        Self { factors, sub_integrable: true }
    }

    /// Single factor `((1-z)/|1-z|)^beta` at base point 1.
    pub fn single_at_one(beta: f64) -> Result<Self> {
        Self::new(vec![Factor { base: Complex64::new(1.0, 0.0), exponent: beta }])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_sub_integrable(&self) -> bool {
        self.sub_integrable
    }

    /// True when the symbol is a single factor based at 1 (or empty).
    pub fn is_single_at_one(&self) -> bool {
        match self.factors.len() {
            0 => true,
            1 => (self.factors[0].base - Complex64::new(1.0, 0.0)).norm() <= BASE_TOLERANCE,
            _ => false,
        }
    }

    /// Symbol value `exp(i sum_j beta_j arg(1 - z conj(z_j)))`; unimodular
    /// almost everywhere on the disc.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut phase = 0.0;
        for f in &self.factors {
            let w = Complex64::new(1.0, 0.0) - z * f.base.conj();
            phase += f.exponent * w.arg();
        }
        Complex64::from_polar(1.0, phase)
    }
}

/// Truncated Taylor expansion of a projected symbol, with a bound on the
/// tail's contribution scale to the Bloch seminorm.
///
/// `tail_bound` bounds `sup_{n > N} n |c_n|`; the derivative tail at radius
/// `x` is then at most `tail_bound * x^N / (1 - x)`.
#[derive(Debug, Clone)]
pub struct TaylorSeries {
    pub coeffs: Vec<Complex64>,
    pub tail_bound: f64,
}

impl TaylorSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Derivative along the positive real axis.
    pub fn derivative_real(&self, x: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for n in (1..self.coeffs.len()).rev() {
            acc = acc * x + self.coeffs[n] * n as f64;
        }
        acc
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for n in (1..self.coeffs.len()).rev() {
            acc = acc * z + self.coeffs[n] * n as f64;
        }
        acc
    }
}

/// A Taylor coefficient of the projected symbol.
#[derive(Debug, Clone, Copy)]
pub struct SeriesCoefficient {
    pub value: f64,
    /// Residual uncertainty of the truncated inner sum (zero on the exact
    /// even-exponent path).
    pub tail_estimate: f64,
    /// Set when the even-exponent degeneracy produced an exact value through
    /// the pole bookkeeping (including exact zeros past the polynomial degree).
    pub even_degenerate: bool,
}

/// Detects exponents within the pole tolerance of an even integer.
fn even_half(beta: f64) -> Option<i64> {
    let b = beta / 2.0;
    let p = b.round();
    if (b - p).abs() < specfun::POLE_TOLERANCE {
        Some(p as i64)
    } else {
        None
    }
}

/// Tail integral `int_X^inf x^{b-1} (n+x)^{-b-2} dx` in closed form
/// (substituting `t = n/(n+x)` turns it into an incomplete Beta of degree 1).
fn coefficient_tail_integral(b: f64, n: f64, x: f64) -> f64 {
    if n == 0.0 {
        return 0.5 * x.powi(-2);
    }
    let t0 = n / (n + x);
    let f = -t0 * (1.0 - t0).powf(b) / b - (1.0 - t0).powf(b + 1.0) / (b * (b + 1.0))
        + 1.0 / (b * (b + 1.0));
    f / (n * n)
}

/// Coefficient `c_{beta,n}` of `z^n` in the Bergman projection of
/// `phi_beta`, from the Gamma-ratio series with the inner sum truncated at
/// `m_max` and a closed-form tail correction.
pub fn coefficient_series(beta: f64, n: usize, m_max: usize) -> Result<SeriesCoefficient> {
    if beta <= -2.0 {
        return Err(Error::domain(format!("beta must exceed -2, got {beta}")));
    }
    if let Some(p) = even_half(beta) {
        if p == 0 {
            // phi_0 is the constant 1; P1 = 1.
            return Ok(SeriesCoefficient {
                value: if n == 0 { 1.0 } else { 0.0 },
                tail_estimate: 0.0,
                even_degenerate: true,
            });
        }
        // Balanced pole limit: c = (n+1) Gamma(n-p) / (Gamma(-p) Gamma(n+2-p) Gamma(p+2)).
        let pf = p as f64;
        let nf = n as f64;
        let r = gamma_ratio(&[nf - pf], &[-pf, nf + 2.0 - pf, pf + 2.0])?;
        return Ok(SeriesCoefficient {
            value: (nf + 1.0) * r.value,
            tail_estimate: 0.0,
            even_degenerate: true,
        });
    }

    let b = beta / 2.0;
    let nf = n as f64;
    // First term Gamma(b) Gamma(n-b) / Gamma(n+2); signs tracked by gamma_ratio.
    let t0 = gamma_ratio(&[b, nf - b], &[nf + 2.0])?;
    let m_used = m_max.min(2000.max(100 * n)).max(16);
    let mut term = t0.value;
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for m in 0..=m_used {
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        let mf = m as f64;
        term *= (mf + b) * (mf + nf - b) / ((mf + 1.0) * (mf + nf + 2.0));
    }
    // Midpoint tail correction for the un-summed terms m > m_used.
    let x = m_used as f64 + 1.5;
    let tail = coefficient_tail_integral(b, nf, x);
    sum += tail;
    // Surrogate error: the integrand model is exact to O(1/x) relative.
    let tail_err = tail.abs() * (b.abs() + 2.0) / x;

    // 1 / (Gamma(-b) Gamma(b)) = -b sin(pi b) / pi, via the reflection formula.
    let prefactor = -b * sin_pi(b) / std::f64::consts::PI;
    Ok(SeriesCoefficient {
        value: (nf + 1.0) * prefactor * (sum),
        tail_estimate: ((nf + 1.0) * prefactor).abs() * tail_err,
        even_degenerate: false,
    })
}

/// Moment-form coefficient `(n+1) int phi(w) conj(w)^n dA(w)` by punched
/// quadrature; the independent cross-check of [`coefficient_series`] for
/// single-factor symbols at base 1.
pub fn coefficient_quadrature(
    symbol: &PowerSymbol,
    n: usize,
    q: &DiscQuadrature,
) -> Result<Extrapolated> {
    let r = q.integrate_extrapolated(|w| {
        let mut p = Complex64::new(1.0, 0.0);
        let wc = w.conj();
        for _ in 0..n {
            p *= wc;
        }
        symbol.eval(w) * p
    })?;
    let scale = n as f64 + 1.0;
    Ok(Extrapolated { value: scale * r.value, error: scale * r.error })
}

/// Assembles the truncated Taylor expansion of `P phi_beta` for a single
/// factor at base 1, coefficients 0..=order via [`coefficient_series`].
pub fn project(symbol: &PowerSymbol, order: usize, m_max: usize) -> Result<TaylorSeries> {
    if !symbol.is_single_at_one() {
        return Err(Error::domain(
            "series projection is defined for a single factor at base 1".to_string(),
        ));
    }
    if symbol.is_sub_integrable() {
        return Err(Error::domain(
            "series projection requires an integrable symbol (beta > -2)".to_string(),
        ));
    }
    if order < 1 {
        return Err(Error::domain("projection order must be at least 1".to_string()));
    }
    let beta = symbol.factors().first().map_or(0.0, |f| f.exponent);
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let c = coefficient_series(beta, n, m_max)?;
        coeffs.push(Complex64::new(c.value, 0.0));
    }
    let tail_bound = compute_tail_bound(beta, &coeffs);
    Ok(TaylorSeries { coeffs, tail_bound })
}

/// Computed bound on `sup_{n > N} n |c_n|` for a truncated projection with
/// the given coefficients: the observed scale near the truncation order and
/// the coefficient law's limit, with headroom. Exactly zero for even
/// exponents, whose projections are polynomials.
pub fn compute_tail_bound(beta: f64, coeffs: &[Complex64]) -> f64 {
    if even_half(beta).is_some() {
        return 0.0;
    }
    let observed = coeffs
        .iter()
        .enumerate()
        .skip(coeffs.len().saturating_sub(coeffs.len() / 10 + 2))
        .map(|(n, c)| n as f64 * c.norm())
        .fold(0.0, f64::max);
    let limit = 2.0 * sin_pi(beta / 2.0).abs() / (std::f64::consts::PI * (beta + 2.0));
    1.05 * observed.max(limit)
}

/// Pointwise Bergman projection `Pf(z) = int f(w) / (1 - z conj(w))^2 dA(w)`.
pub fn kernel_eval(
    f: impl FnMut(Complex64) -> Complex64,
    z: Complex64,
    q: &DiscQuadrature,
) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::domain(format!("kernel evaluation point {z} must lie inside the disc")));
    }
    let mut f = f;
    q.integrate(|w| {
        let d = Complex64::new(1.0, 0.0) - z * w.conj();
        f(w) / (d * d)
    })
}

/// One row of the coefficient-asymptotics table.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticRow {
    pub n: usize,
    pub n_times_coeff: f64,
    pub limit: f64,
    pub relative_error: f64,
}

/// Checks `n c_{beta,n} -> -2 sin(beta pi/2) / (pi (beta+2))` along `n_grid`.
///
/// For even beta all coefficients beyond the polynomial degree vanish and the
/// law holds trivially; the rows are flagged through `even_degenerate`.
#[derive(Debug, Clone)]
pub struct AsymptoticLawCheck {
    pub rows: Vec<AsymptoticRow>,
    pub even_degenerate: bool,
}

pub fn asymptotic_law_check(
    beta: f64,
    n_grid: &[usize],
    m_max: usize,
) -> Result<AsymptoticLawCheck> {
    if beta <= 0.0 {
        return Err(Error::domain(format!("asymptotic law check requires beta > 0, got {beta}")));
    }
    let limit = -2.0 * sin_pi(beta / 2.0) / (std::f64::consts::PI * (beta + 2.0));
    let even = even_half(beta).is_some();
    let mut rows = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        let c = coefficient_series(beta, n, m_max)?;
        let v = n as f64 * c.value;
        let rel = if even { 0.0 } else { ((v - limit) / limit).abs() };
        rows.push(AsymptoticRow { n, n_times_coeff: v, limit, relative_error: rel });
    }
    Ok(AsymptoticLawCheck { rows, even_degenerate: even })
}

/// Polynomial with complex coefficients, `p(z) = sum coeffs[k] z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self { coeffs: coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect() }
    }

    /// z^k
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.norm() > 0.0)
            .unwrap_or(0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Multiplication by z (coefficient shift).
    pub fn shifted(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }
}

/// `|int F conj(phi_{-2k}) dA|` by punched extrapolation. The annihilation
/// identity holds for every k >= 2; k = 1 is exactly the case where it fails.
pub fn annihilator_check(k: u32, poly: &Polynomial, q: &DiscQuadrature) -> Result<f64> {
    if k < 2 {
        return Err(Error::domain(format!(
            "annihilator check is stated for k >= 2, got {k}"
        )));
    }
    if poly.degree() > 10 {
        return Err(Error::domain("annihilator check accepts degree at most 10".to_string()));
    }
    let symbol = PowerSymbol::new_unchecked(vec![Factor {
        base: Complex64::new(1.0, 0.0),
        exponent: -2.0 * k as f64,
    }]);
    let r = q.integrate_extrapolated(|z| poly.eval(z) * symbol.eval(z).conj())?;
    Ok(r.value.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    const M_MAX: usize = 1_000_000;

    /// Independent oracle: expand phi_{2p} = (1-w)^p (1-conj(w))^{-p} and
    /// apply monomial orthogonality `int w^j conj(w)^k dA = delta_{jk}/(j+1)`.
    fn even_coefficient_oracle(p: usize, n: usize) -> f64 {
        let a = specfun::binomial_series(p as f64, p); // (1-w)^p
        let mut sum = 0.0;
        for k in 0..=(p.saturating_sub(n)) {
            // coefficient of conj(w)^k in (1-conj w)^{-p}: C(p-1+k, k)
            let mut bk = 1.0;
            for j in 0..k {
                bk *= (p + j) as f64 / (j as f64 + 1.0);
            }
            if k + n <= p {
                sum += a.coeffs[k + n] * bk / (k as f64 + n as f64 + 1.0);
            }
        }
        (n as f64 + 1.0) * sum
    }

    #[test]
    fn beta_zero_projects_to_one() {
        let c = coefficient_series(0.0, 0, M_MAX).unwrap();
        assert_eq!(c.value, 1.0);
        for n in 1..6 {
            assert_eq!(coefficient_series(0.0, n, M_MAX).unwrap().value, 0.0);
        }
    }

    #[test]
    fn beta_two_matches_orthogonality_oracle() {
        let c0 = coefficient_series(2.0, 0, M_MAX).unwrap();
        let c1 = coefficient_series(2.0, 1, M_MAX).unwrap();
        assert!((c0.value - 0.5).abs() < 1e-12, "c0 = {}", c0.value);
        assert!((c1.value + 1.0).abs() < 1e-12, "c1 = {}", c1.value);
        assert!((even_coefficient_oracle(1, 0) - 0.5).abs() < 1e-15);
        assert!((even_coefficient_oracle(1, 1) + 1.0).abs() < 1e-15);
        for n in 2..8 {
            let c = coefficient_series(2.0, n, M_MAX).unwrap();
            assert_eq!(c.value, 0.0);
            assert!(c.even_degenerate);
        }
    }

    #[test]
    fn even_degeneracy_against_oracle() {
        for p in 1..=3usize {
            for n in 0..=(2 * p + 3) {
                let c = coefficient_series(2.0 * p as f64, n, M_MAX).unwrap();
                let want = even_coefficient_oracle(p, n);
                assert!(
                    (c.value - want).abs() < 1e-12,
                    "beta={} n={n}: {} vs oracle {want}",
                    2 * p,
                    c.value
                );
                if n > p {
                    assert_eq!(c.value, 0.0, "coefficients vanish beyond degree");
                }
            }
        }
    }

    /// Gauss closed form for non-even beta:
    /// c_{beta,n} = -sin(pi b) (n+1) / (pi (b+1) (n+1-b) (n-b)), b = beta/2.
    fn coefficient_closed_form(beta: f64, n: usize) -> f64 {
        let b = beta / 2.0;
        let nf = n as f64;
        -sin_pi(b) * (nf + 1.0)
            / (std::f64::consts::PI * (b + 1.0) * (nf + 1.0 - b) * (nf - b))
    }

    #[test]
    fn series_matches_closed_form() {
        for &beta in &[0.5, 1.0, 1.5, 2.5, 3.75, -0.5, -1.0, -1.9] {
            for &n in &[0usize, 1, 5, 20, 100, 1000] {
                let c = coefficient_series(beta, n, M_MAX).unwrap();
                let want = coefficient_closed_form(beta, n);
                let rel = ((c.value - want) / want).abs();
                assert!(rel < 1e-6, "beta={beta} n={n}: rel {rel:.2e}");
                assert!(
                    (c.value - want).abs() <= c.tail_estimate.max(1e-9),
                    "tail estimate too optimistic at beta={beta} n={n}"
                );
            }
        }
    }

    #[test]
    fn asymptotic_law_for_beta_one() {
        let chk = asymptotic_law_check(1.0, &[100, 1000, 10000], M_MAX).unwrap();
        let want = -2.0 / (3.0 * std::f64::consts::PI);
        assert!((chk.rows[0].limit - want).abs() < 1e-15);
        assert!(chk.rows.windows(2).all(|w| w[1].relative_error < w[0].relative_error));
        assert!(chk.rows.last().unwrap().relative_error < 0.02);
    }

    #[test]
    fn asymptotic_law_even_degenerate() {
        let chk = asymptotic_law_check(4.0, &[10, 100], M_MAX).unwrap();
        assert!(chk.even_degenerate);
        for row in &chk.rows {
            assert_eq!(row.n_times_coeff, 0.0);
        }
    }

    #[test]
    fn project_shapes_and_tail() {
        let s = PowerSymbol::single_at_one(0.0).unwrap();
        let t = project(&s, 5, M_MAX).unwrap();
        assert_eq!(t.coeffs[0].re, 1.0);
        assert!(t.coeffs[1..].iter().all(|c| c.norm() == 0.0));
        assert_eq!(t.tail_bound, 0.0);

        let s = PowerSymbol::single_at_one(2.0).unwrap();
        let t = project(&s, 6, M_MAX).unwrap();
        assert!((t.coeffs[0].re - 0.5).abs() < 1e-12);
        assert!((t.coeffs[1].re + 1.0).abs() < 1e-12);
        assert!(t.coeffs[2..].iter().all(|c| c.norm() == 0.0));
        assert_eq!(t.tail_bound, 0.0);

        let s = PowerSymbol::single_at_one(1.0).unwrap();
        let t = project(&s, 400, M_MAX).unwrap();
        assert!(t.tail_bound > 0.0);
        // tail bound dominates sup_{n>N} n |c_n| ~ 2 sin(pi/2)/(3 pi)
        assert!(t.tail_bound >= 2.0 / (3.0 * std::f64::consts::PI));
    }

    #[test]
    fn kernel_eval_fixed_points() {
        let q = DiscQuadrature::with_orders(48, 192).unwrap();
        for &z in &[
            Complex64::new(0.0, 0.0),
            Complex64::new(0.4, 0.1),
            Complex64::new(-0.6, 0.3),
        ] {
            let one = kernel_eval(|_| Complex64::new(1.0, 0.0), z, &q).unwrap();
            assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-10);
            let wbar = kernel_eval(|w| w.conj(), z, &q).unwrap();
            assert!(wbar.norm() < 1e-10);
            let sq = kernel_eval(|w| Complex64::new(w.norm_sqr(), 0.0), z, &q).unwrap();
            assert!((sq - Complex64::new(0.5, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn kernel_projects_monomials_to_themselves() {
        let q = DiscQuadrature::with_orders(64, 256).unwrap();
        for n in 0..4usize {
            for i in 0..5 {
                let z = Complex64::from_polar(0.1 + 0.15 * i as f64, 0.7 * i as f64);
                let got = kernel_eval(
                    |w| {
                        let mut p = Complex64::new(1.0, 0.0);
                        for _ in 0..n {
                            p *= w;
                        }
                        p
                    },
                    z,
                    &q,
                )
                .unwrap();
                let mut want = Complex64::new(1.0, 0.0);
                for _ in 0..n {
                    want *= z;
                }
                assert!((got - want).norm() < 1e-8, "n={n} z={z}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn symbol_validation() {
        assert!(PowerSymbol::single_at_one(-2.0).is_err());
        assert!(PowerSymbol::new(vec![Factor {
            base: Complex64::new(0.5, 0.0),
            exponent: 1.0
        }])
        .is_err());
        let dup = PowerSymbol::new(vec![
            Factor { base: Complex64::new(1.0, 0.0), exponent: 1.0 },
            Factor { base: Complex64::new(1.0, 0.0), exponent: 0.5 },
        ]);
        assert!(dup.is_err());
        let s = PowerSymbol::new_unchecked(vec![Factor {
            base: Complex64::new(1.0, 0.0),
            exponent: -4.0,
        }]);
        assert!(s.is_sub_integrable());
    }

    #[test]
    fn symbol_is_unimodular() {
        let s = PowerSymbol::new(vec![
            Factor { base: Complex64::new(1.0, 0.0), exponent: 1.3 },
            Factor { base: Complex64::new(-1.0, 0.0), exponent: -0.7 },
        ])
        .unwrap();
        for i in 0..40 {
            let z = Complex64::from_polar(0.95 * (i as f64 / 40.0), 0.17 * i as f64);
            assert!((s.eval(z).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn annihilator_validation() {
        let q = DiscQuadrature::with_orders(32, 128).unwrap();
        assert!(annihilator_check(1, &Polynomial::monomial(0), &q).is_err());
        let big = Polynomial::monomial(11);
        assert!(annihilator_check(2, &big, &q).is_err());
    }
}
