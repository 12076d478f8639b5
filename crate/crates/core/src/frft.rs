//! Fractional Fourier transform on Hermite coefficients and the split of
//! `L^2(R)` into the eigen-subspaces of `F^{4/k}`.
//!
//! `F^a` multiplies `a_n` by `e^{i n a pi/2}`. The `+` sign matches the
//! Fourier kernel `e^{+ipx}/sqrt(2 pi)`, under which `K_n` has eigenvalue `i^n`.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::quadrature::{QuadKind, QuadRule};
use crate::spectral::CoeffVec;

/// Sign of the fractional phase `e^{PHASE_SIGN * i n a pi/2}`.
pub const PHASE_SIGN: f64 = 1.0;

/// Label `(k, r)` of the summand `L^2_{k,r}`, spanned by `K_{kq+r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubspaceLabel {
    k: usize,
    r: usize,
}

impl SubspaceLabel {
    pub fn new(k: usize, r: usize) -> Result<Self> {
        if k == 0 {
            return Err(domain("subspace modulus k must be at least 1"));
        }
        if r >= k {
            return Err(domain(format!("subspace remainder r={r} must be < k={k}")));
        }
        Ok(Self { k, r })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn contains(&self, n: usize) -> bool {
        n % self.k == self.r
    }

    /// Eigenvalue of `F^{4/k}` on this subspace, `e^{2 pi i r/k}`.
    pub fn eigenvalue(&self) -> Complex64 {
        let angle = PHASE_SIGN * 2.0 * std::f64::consts::PI * self.r as f64 / self.k as f64;
        Complex64::from_polar(1.0, angle)
    }
}

/// `e^{sign * i (quarter_turns) pi/2}` with exact values on whole quarter turns.
pub(crate) fn quarter_turn_phase(quarter_turns: f64) -> Complex64 {
    let t = quarter_turns.rem_euclid(4.0);
    if t == t.trunc() {
        let sign = PHASE_SIGN;
        return match t as u8 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, sign),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -sign),
        };
    }
    Complex64::from_polar(1.0, PHASE_SIGN * t * std::f64::consts::FRAC_PI_2)
}

/// Multiplies entry `n` by `e^{i n a pi/2}`, with `a` reduced modulo 4 first.
pub(crate) fn apply_fractional_phase(values: &mut [Complex64], a: f64) -> Result<()> {
    if !a.is_finite() {
        return Err(domain(format!("fractional order must be finite, got {a}")));
    }
    let order = a.rem_euclid(4.0);
    for (n, v) in values.iter_mut().enumerate() {
        *v *= quarter_turn_phase(n as f64 * order);
    }
    Ok(())
}

/// `F^a` on a Hermite coefficient vector.
pub fn frft(c: &CoeffVec, a: f64) -> Result<CoeffVec> {
    c.expect_hermite()?;
    let mut out = c.clone();
    apply_fractional_phase(out.values_mut(), a)?;
    Ok(out)
}

/// `(1/sqrt(2 pi)) sum_i w_i e^{ipx_i} f(x_i)`: the Fourier transform of `f`
/// at `p`, evaluated directly by quadrature.
pub fn fourier_quadrature<F>(f: F, p: f64, rule: &QuadRule) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if rule.kind() != QuadKind::GaussHermite {
        return Err(Error::RuleMismatch(format!(
            "Fourier quadrature needs a Gauss-Hermite rule, got {:?}",
            rule.kind()
        )));
    }
    let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let sum = rule.integrate(|x| Complex64::from_polar(1.0, PHASE_SIGN * p * x) * f(x))?;
    Ok(norm * sum)
}

/// Zeroes every entry whose index is not `r (mod k)`.
pub fn project_subspace(c: &CoeffVec, s: SubspaceLabel) -> CoeffVec {
    let values = c
        .values()
        .iter()
        .enumerate()
        .map(|(n, &v)| if s.contains(n) { v } else { Complex64::new(0.0, 0.0) })
        .collect();
    CoeffVec::new(c.basis(), values)
}

/// `[P_{k,0} c, ..., P_{k,k-1} c]`; the parts have disjoint supports and sum to `c`.
pub fn decompose(c: &CoeffVec, k: usize) -> Result<Vec<CoeffVec>> {
    c.expect_hermite()?;
    decompose_any(c, k)
}

pub(crate) fn decompose_any(c: &CoeffVec, k: usize) -> Result<Vec<CoeffVec>> {
    (0..k)
        .map(|r| SubspaceLabel::new(k, r).map(|s| project_subspace(c, s)))
        .collect::<Result<Vec<_>>>()
        .and_then(|parts| {
            if parts.is_empty() {
                Err(domain("subspace modulus k must be at least 1"))
            } else {
                Ok(parts)
            }
        })
}
