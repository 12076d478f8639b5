//! The transforms `T+` (cosine kernel) and `T-` (sine kernel) on `[0, inf)`:
//!
//! ```text
//! [T f](s) = (1/sqrt(2 pi)) int_0^inf S(sqrt(s y)) (s y)^{-1/4} f(y) dy
//! ```
//!
//! `T+` is diagonal in the Laguerre basis with `alpha = -1/2` and `T-` in the
//! basis with `alpha = +1/2`, both with eigenvalues `(-1)^n`. This is the
//! pairing inherited from `K_{2n}` (even, cosine) and `K_{2n+1}` (odd, sine)
//! through the Hermite-Laguerre identities.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::frft::{apply_fractional_phase, SubspaceLabel};
use crate::quadrature::gauss_hermite;
use crate::spectral::{Basis, CoeffVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelSign {
    /// Cosine kernel; diagonal on `M_n^{-1/2}`.
    Plus,
    /// Sine kernel; diagonal on `M_n^{+1/2}`.
    Minus,
}

impl KernelSign {
    /// Laguerre parameter of the eigenbasis.
    pub fn alpha(self) -> f64 {
        match self {
            KernelSign::Plus => -0.5,
            KernelSign::Minus => 0.5,
        }
    }

    pub fn basis(self) -> Basis {
        Basis::Laguerre { alpha: self.alpha() }
    }

    pub fn kernel(self, z: f64) -> f64 {
        match self {
            KernelSign::Plus => z.cos(),
            KernelSign::Minus => z.sin(),
        }
    }
}

/// Positive half of a `sqrt(2)`-scaled Gauss-Hermite rule, for `int_0^inf g(u) du`
/// with `g` smooth, even-extendable and decaying like `e^{-u^2/2}`.
#[derive(Debug, Clone)]
pub struct HalfLineRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl HalfLineRule {
    /// Uses the positive nodes of the `m`-point rule; odd `m` is bumped to
    /// `m + 1` so that no node sits on the endpoint.
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(domain("half-line rule needs at least one point"));
        }
        let m = m + m % 2;
        let rule = gauss_hermite(m)?.scaled(2f64.sqrt())?;
        let (nodes, weights) = rule.iter().filter(|&(x, _)| x > 0.0).unzip();
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `[T f](s)` after the substitution `y = u^2`:
    /// `(2/sqrt(2 pi)) s^{-1/4} int_0^inf S(sqrt(s) u) u^{1/2} f(u^2) du`.
    pub fn transform<F>(&self, f: F, sign: KernelSign, s: f64) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        if !(s > 0.0) || !s.is_finite() {
            return Err(domain(format!("transform variable must be positive, got {s}")));
        }
        let root_s = s.sqrt();
        let mut acc = 0.0;
        for (&u, &w) in self.nodes.iter().zip(&self.weights) {
            let v = sign.kernel(root_s * u) * u.sqrt() * f(u * u);
            if !v.is_finite() {
                return Err(Error::NonFinite { node: u * u });
            }
            acc += w * v;
        }
        Ok(2.0 / (2.0 * std::f64::consts::PI).sqrt() * root_s.sqrt().recip() * acc)
    }
}

/// `[T f](s)` by direct quadrature with an `m`-point half rule.
pub fn t_transform_quadrature<F>(f: F, sign: KernelSign, s: f64, m: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    HalfLineRule::new(m)?.transform(f, sign, s)
}

fn expect_pairing(c: &CoeffVec, sign: KernelSign) -> Result<()> {
    if c.basis() == sign.basis() {
        Ok(())
    } else {
        Err(Error::BasisMismatch {
            expected: sign.basis(),
            found: c.basis(),
        })
    }
}

/// `T` in coefficient space: `a_n -> (-1)^n a_n`.
pub fn t_transform_spectral(c: &CoeffVec, sign: KernelSign) -> Result<CoeffVec> {
    expect_pairing(c, sign)?;
    let values = c
        .values()
        .iter()
        .enumerate()
        .map(|(n, &v)| if n % 2 == 0 { v } else { -v })
        .collect();
    Ok(CoeffVec::new(c.basis(), values))
}

/// Fractional power `T^a`: `a_n -> e^{i n a pi/2} a_n`; `a = 2` gives `T`.
pub fn frt_halfline(c: &CoeffVec, sign: KernelSign, a: f64) -> Result<CoeffVec> {
    expect_pairing(c, sign)?;
    let mut out = c.clone();
    apply_fractional_phase(out.values_mut(), a)?;
    Ok(out)
}

/// Index-mask split into the eigen-subspaces of `T^{4/k}`; part `r` has eigenvalue `e^{2 pi i r/k}`.
pub fn decompose_halfline(c: &CoeffVec, k: usize, sign: KernelSign) -> Result<Vec<CoeffVec>> {
    expect_pairing(c, sign)?;
    crate::frft::decompose_any(c, k)
}

/// Eigenvalue of `T^{4/k}` on part `r`.
pub fn halfline_eigenvalue(k: usize, r: usize) -> Result<Complex64> {
    Ok(SubspaceLabel::new(k, r)?.eigenvalue())
}
