//! Pointwise evaluation of Hermite functions `K_n(x)` and generalized
//! Laguerre functions `M_n^alpha(y)`.
//!
//! Both families are produced by three-term recurrences on the normalized
//! functions. The Gaussian (resp. `y^{alpha/2} e^{-y/2}`) envelope is kept
//! out of the recurrence and applied at the end in log space, and the
//! recurrence mantissa is rescaled by exact powers of two whenever it grows
//! past `2^500`. This keeps every intermediate finite for large `n` and
//! large `|x|` and leaves the sign symmetry of the Hermite recurrence intact.

use crate::gamma::ln_gamma;

use crate::error::{domain, Result};

/// Mantissa threshold that triggers a rescale.
#[allow(clippy::excessive_precision)]
const RESCALE_LIMIT: f64 = 3.273_390_607_896_141_9e150; // 2^500
#[allow(clippy::excessive_precision)]
const RESCALE_FACTOR: f64 = 3.054_936_363_499_604_7e-151; // 2^-500
const RESCALE_LOG: f64 = 500.0 * std::f64::consts::LN_2;

/// `pi^{-1/4}`, the value of `K_0(0)`.
#[allow(clippy::excessive_precision)]
pub const PI_POW_NEG_QUARTER: f64 = 0.751_125_544_464_942_5;

/// Which half of the Hermite index set a bridge evaluation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BridgeParity {
    /// `K_{2n}` against `M_n^{-1/2}`.
    Even,
    /// `K_{2n+1}` against `M_n^{+1/2}`.
    Odd,
}

fn check_x(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("Hermite abscissa must be finite, got {x}")))
    }
}

fn check_laguerre(alpha: f64, y: f64) -> Result<()> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(domain(format!("Laguerre parameter must satisfy alpha > -1, got {alpha}")));
    }
    if !(y >= 0.0) || !y.is_finite() {
        return Err(domain(format!("Laguerre abscissa must be finite and >= 0, got {y}")));
    }
    Ok(())
}

/// Runs the Hermite recurrence for `n = 0..=nmax` and hands each `K_n(x)` to `emit`.
fn hermite_recurrence(nmax: usize, x: f64, mut emit: impl FnMut(usize, f64)) {
    let half_sq = 0.5 * x * x;
    let mut scale_exp: i32 = 0;
    let mut envelope = (-half_sq).exp();

    let mut prev = 0.0;
    let mut cur = PI_POW_NEG_QUARTER;
    emit(0, cur * envelope);
    for n in 1..=nmax {
        let nf = n as f64;
        let next = (2.0 / nf).sqrt() * x * cur - ((nf - 1.0) / nf).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_LIMIT {
            prev *= RESCALE_FACTOR;
            cur *= RESCALE_FACTOR;
            scale_exp += 1;
            envelope = (f64::from(scale_exp) * RESCALE_LOG - half_sq).exp();
        }
        emit(n, cur * envelope);
    }
}

/// Hermite function `K_n(x) = e^{-x^2/2} H_n(x) / sqrt(2^n n! sqrt(pi))`.
pub fn hermite_fn(n: usize, x: f64) -> Result<f64> {
    check_x(x)?;
    let mut last = 0.0;
    hermite_recurrence(n, x, |_, v| last = v);
    Ok(last)
}

/// `K_0(x), ..., K_nmax(x)` from a single recurrence pass.
pub fn hermite_fn_batch(nmax: usize, x: f64) -> Result<Vec<f64>> {
    check_x(x)?;
    let mut out = Vec::with_capacity(nmax + 1);
    hermite_recurrence(nmax, x, |_, v| out.push(v));
    Ok(out)
}

/// Laguerre recurrence; `with_power` controls whether the `y^{alpha/2}` factor is applied.
fn laguerre_recurrence(
    nmax: usize,
    alpha: f64,
    y: f64,
    with_power: bool,
    mut emit: impl FnMut(usize, f64),
) {
    let log_power = if !with_power || (y == 0.0 && alpha == 0.0) {
        0.0
    } else {
        0.5 * alpha * y.ln()
    };
    let log_prefactor = log_power - 0.5 * y - 0.5 * ln_gamma(alpha + 1.0);
    let mut scale_exp: i32 = 0;
    let mut envelope = log_prefactor.exp();

    let mut prev = 0.0;
    let mut cur = 1.0;
    emit(0, cur * envelope);
    for n in 0..nmax {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0 + alpha - y) * cur - (nf * (nf + alpha)).sqrt() * prev)
            / ((nf + 1.0) * (nf + 1.0 + alpha)).sqrt();
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_LIMIT {
            prev *= RESCALE_FACTOR;
            cur *= RESCALE_FACTOR;
            scale_exp += 1;
            envelope = (f64::from(scale_exp) * RESCALE_LOG + log_prefactor).exp();
        }
        emit(n + 1, cur * envelope);
    }
}

/// Laguerre function `M_n^alpha(y) = sqrt(n!/Gamma(n+alpha+1)) y^{alpha/2} e^{-y/2} L_n^alpha(y)`.
///
/// `0^0` is taken as 1, so `M_n^0(0)` is finite; for `alpha < 0` the value at
/// `y = 0` is `+-inf`.
pub fn laguerre_fn(n: usize, alpha: f64, y: f64) -> Result<f64> {
    check_laguerre(alpha, y)?;
    let mut last = 0.0;
    laguerre_recurrence(n, alpha, y, true, |_, v| last = v);
    Ok(last)
}

/// `M_0^alpha(y), ..., M_nmax^alpha(y)` from one recurrence pass.
pub fn laguerre_fn_batch(nmax: usize, alpha: f64, y: f64) -> Result<Vec<f64>> {
    check_laguerre(alpha, y)?;
    let mut out = Vec::with_capacity(nmax + 1);
    laguerre_recurrence(nmax, alpha, y, true, |_, v| out.push(v));
    Ok(out)
}

/// `M_n^alpha(y) / y^{alpha/2}`, finite at `y = 0` for every `alpha`.
pub(crate) fn laguerre_fn_reduced(n: usize, alpha: f64, y: f64) -> Result<f64> {
    check_laguerre(alpha, y)?;
    let mut last = 0.0;
    laguerre_recurrence(n, alpha, y, false, |_, v| last = v);
    Ok(last)
}

/// Central-difference residual of `(-D^2 + x^2 - (2n+1)) K_n` at `x`.
pub fn hermite_de_residual(n: usize, x: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(domain(format!("finite-difference step must be positive, got {h}")));
    }
    check_x(x)?;
    let left = hermite_fn(n, x - h)?;
    let mid = hermite_fn(n, x)?;
    let right = hermite_fn(n, x + h)?;
    let second = (left - 2.0 * mid + right) / (h * h);
    Ok(-second + (x * x - (2 * n + 1) as f64) * mid)
}

/// Evaluates both sides of the Hermite-Laguerre identity
///
/// ```text
/// K_{2n}(x)   = (-1)^n (x^2)^{1/4}   M_n^{-1/2}(x^2)
/// K_{2n+1}(x) = (-1)^n x (x^2)^{-1/4} M_n^{+1/2}(x^2)
/// ```
///
/// returning `(hermite_side, laguerre_side)`. At `x = 0` the even Laguerre
/// side is taken as its limit, where `(x^2)^{1/4}` cancels the `y^{-1/4}`
/// singularity of `M_n^{-1/2}`.
pub fn hermite_laguerre_bridge(n: usize, x: f64, parity: BridgeParity) -> Result<(f64, f64)> {
    check_x(x)?;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let y = x * x;
    match parity {
        BridgeParity::Even => {
            let hermite = hermite_fn(2 * n, x)?;
            let laguerre = if x == 0.0 {
                sign * laguerre_fn_reduced(n, -0.5, 0.0)?
            } else {
                sign * y.sqrt().sqrt() * laguerre_fn(n, -0.5, y)?
            };
            Ok((hermite, laguerre))
        }
        BridgeParity::Odd => {
            let hermite = hermite_fn(2 * n + 1, x)?;
            // x (x^2)^{-1/4} = sign(x) |x|^{1/2}
            let root = x.abs().sqrt().copysign(x);
            let laguerre = sign * root * laguerre_fn(n, 0.5, y)?;
            Ok((hermite, laguerre))
        }
    }
}
