//! Analysis and synthesis between function values and coefficient vectors.
//!
//! The pairing is `a_n = int K_n(x) f(x) dx` against `f(x) = sum_n a_n K_n(x)`
//! (and the same with `M_n^alpha` on the half-line). No conjugation and no
//! extra normalization factors enter either direction, so the map is unitary
//! on the span of the first `N` basis functions.

use std::fmt;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::quadrature::{QuadKind, QuadRule};
use crate::specfun::{hermite_fn_batch, laguerre_fn_batch};

/// The orthonormal basis a coefficient vector is expanded against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    Hermite,
    Laguerre { alpha: f64 },
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Hermite => write!(f, "Hermite"),
            Basis::Laguerre { alpha } => write!(f, "Laguerre(alpha={alpha})"),
        }
    }
}

/// Finite coefficient vector `a_0..a_{N-1}` against a declared basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVec {
    basis: Basis,
    values: Vec<Complex64>,
}

impl CoeffVec {
    pub fn new(basis: Basis, values: Vec<Complex64>) -> Self {
        Self { basis, values }
    }

    pub fn from_real(basis: Basis, values: &[f64]) -> Self {
        Self::new(basis, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(basis: Basis, len: usize) -> Self {
        Self::new(basis, vec![Complex64::new(0.0, 0.0); len])
    }

    /// Unit vector `e_index` of length `len`.
    pub fn unit(basis: Basis, len: usize, index: usize) -> Self {
        let mut c = Self::zeros(basis, len);
        c.values[index] = Complex64::new(1.0, 0.0);
        c
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `sum |a_n|^2`.
    pub fn energy(&self) -> f64 {
        energy(self)
    }

    pub(crate) fn expect_basis(&self, expected: Basis) -> Result<()> {
        if self.basis == expected {
            Ok(())
        } else {
            Err(Error::BasisMismatch {
                expected,
                found: self.basis,
            })
        }
    }

    pub(crate) fn expect_hermite(&self) -> Result<()> {
        self.expect_basis(Basis::Hermite)
    }

    pub(crate) fn laguerre_alpha(&self) -> Result<f64> {
        match self.basis {
            Basis::Laguerre { alpha } => Ok(alpha),
            Basis::Hermite => Err(Error::BasisMismatch {
                expected: Basis::Laguerre { alpha: f64::NAN },
                found: Basis::Hermite,
            }),
        }
    }
}

/// Uniformly spaced samples `values[j] = f(x0 + j dx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    x0: f64,
    dx: f64,
    values: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(x0: f64, dx: f64, values: Vec<Complex64>) -> Result<Self> {
        if !(dx > 0.0) || !dx.is_finite() || !x0.is_finite() {
            return Err(domain(format!("sample grid needs finite origin and dx > 0, got x0={x0}, dx={dx}")));
        }
        if values.is_empty() {
            return Err(domain("sampled signal must contain at least one value"));
        }
        Ok(Self { x0, dx, values })
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn abscissa(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.dx
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.abscissa(j)).collect()
    }

    /// Linear interpolation, zero outside the sample window.
    pub fn interpolate(&self, x: f64) -> Complex64 {
        let t = (x - self.x0) / self.dx;
        let last = self.len() - 1;
        if !(t >= 0.0) || t > last as f64 {
            return Complex64::new(0.0, 0.0);
        }
        let j = t.floor() as usize;
        if j >= last {
            return self.values[last];
        }
        let frac = t - j as f64;
        self.values[j] * (1.0 - frac) + self.values[j + 1] * frac
    }
}

/// Anything that can be sampled at an abscissa.
pub trait SignalSource {
    fn sample(&self, x: f64) -> Complex64;
}

impl<F> SignalSource for F
where
    F: Fn(f64) -> Complex64,
{
    fn sample(&self, x: f64) -> Complex64 {
        self(x)
    }
}

impl SignalSource for SampledSignal {
    fn sample(&self, x: f64) -> Complex64 {
        self.interpolate(x)
    }
}

fn check_modes(modes: usize) -> Result<()> {
    if modes == 0 {
        Err(domain("at least one mode is required"))
    } else {
        Ok(())
    }
}

/// `a_n = sum_i w_i K_n(x_i) f(x_i)` for `n < modes`.
pub fn analyze_hermite<S>(f: &S, modes: usize, rule: &QuadRule) -> Result<CoeffVec>
where
    S: SignalSource + ?Sized,
{
    check_modes(modes)?;
    if rule.kind() != QuadKind::GaussHermite {
        return Err(Error::RuleMismatch(format!(
            "Hermite analysis needs a Gauss-Hermite rule, got {:?}",
            rule.kind()
        )));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); modes];
    for (x, w) in rule.iter() {
        let v = f.sample(x);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite { node: x });
        }
        let k = hermite_fn_batch(modes - 1, x)?;
        for (acc, kn) in out.iter_mut().zip(k) {
            *acc += v * (w * kn);
        }
    }
    Ok(CoeffVec::new(Basis::Hermite, out))
}

/// Hermite analysis of a sampled signal using the sample grid itself as the
/// quadrature (trapezoidal weights).
///
/// For smooth signals that have decayed at both ends of the window this is
/// spectrally accurate, unlike interpolation onto Gauss nodes, whose error
/// is `O(dx^2)`.
pub fn analyze_hermite_grid(signal: &SampledSignal, modes: usize) -> Result<CoeffVec> {
    check_modes(modes)?;
    let last = signal.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); modes];
    for (j, &v) in signal.values().iter().enumerate() {
        let x = signal.abscissa(j);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite { node: x });
        }
        let w = if last > 0 && (j == 0 || j == last) {
            0.5 * signal.dx()
        } else {
            signal.dx()
        };
        let k = hermite_fn_batch(modes - 1, x)?;
        for (acc, kn) in out.iter_mut().zip(k) {
            *acc += v * (w * kn);
        }
    }
    Ok(CoeffVec::new(Basis::Hermite, out))
}

fn synthesize_with<B>(c: &CoeffVec, grid: &[f64], batch: B) -> Result<Vec<Complex64>>
where
    B: Fn(usize, f64) -> Result<Vec<f64>>,
{
    if c.is_empty() {
        return Ok(vec![Complex64::new(0.0, 0.0); grid.len()]);
    }
    grid.iter()
        .map(|&x| {
            let phi = batch(c.len() - 1, x)?;
            Ok(c.values()
                .iter()
                .zip(phi)
                .fold(Complex64::new(0.0, 0.0), |acc, (a, p)| acc + a * p))
        })
        .collect()
}

/// `f(x_j) = sum_n a_n K_n(x_j)` at every grid point.
pub fn synthesize_hermite(c: &CoeffVec, grid: &[f64]) -> Result<Vec<Complex64>> {
    c.expect_hermite()?;
    synthesize_with(c, grid, hermite_fn_batch)
}

/// Hermite synthesis onto a uniform grid.
pub fn synthesize_hermite_signal(c: &CoeffVec, x0: f64, dx: f64, len: usize) -> Result<SampledSignal> {
    let grid: Vec<f64> = (0..len).map(|j| x0 + j as f64 * dx).collect();
    SampledSignal::new(x0, dx, synthesize_hermite(c, &grid)?)
}

/// `a_n = sum_i w_i M_n^alpha(y_i) f(y_i)`; the rule must be Gauss-Laguerre with the same `alpha`.
pub fn analyze_laguerre<S>(f: &S, modes: usize, alpha: f64, rule: &QuadRule) -> Result<CoeffVec>
where
    S: SignalSource + ?Sized,
{
    check_modes(modes)?;
    match rule.kind() {
        QuadKind::GaussLaguerre { alpha: a } if a == alpha => {}
        other => {
            return Err(Error::RuleMismatch(format!(
                "Laguerre analysis with alpha={alpha} got rule {other:?}"
            )))
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); modes];
    for (y, w) in rule.iter() {
        let v = f.sample(y);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite { node: y });
        }
        let m = laguerre_fn_batch(modes - 1, alpha, y)?;
        for (acc, mn) in out.iter_mut().zip(m) {
            *acc += v * (w * mn);
        }
    }
    Ok(CoeffVec::new(Basis::Laguerre { alpha }, out))
}

/// `f(y_j) = sum_n a_n M_n^alpha(y_j)`.
pub fn synthesize_laguerre(c: &CoeffVec, grid: &[f64]) -> Result<Vec<Complex64>> {
    let alpha = c.laguerre_alpha()?;
    synthesize_with(c, grid, |n, y| laguerre_fn_batch(n, alpha, y))
}

/// `sum |a_n|^2`.
pub fn energy(c: &CoeffVec) -> f64 {
    c.values().iter().map(|a| a.norm_sqr()).sum()
}
