//! Gauss-Hermite and Gauss-Laguerre rules with weights for the plain measure.
//!
//! Nodes are the eigenvalues of the Jacobi matrix of the classical weight
//! (Golub-Welsch), found by implicit-shift QL and polished with Newton steps
//! on the normalized basis function. Weights are the Christoffel numbers
//! `1 / sum_{k<m} phi_k(x_i)^2`, evaluated with the normalized functions
//! `phi_k` (which already carry the square root of the classical weight), so
//! the factor `e^{x^2}` resp. `y^{-alpha} e^{y}` is folded in without ever
//! being formed explicitly.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::specfun::{hermite_fn_batch, laguerre_fn_batch};

const MAX_QL_ITERATIONS: usize = 60;
const NEWTON_STEPS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadKind {
    GaussHermite,
    GaussLaguerre { alpha: f64 },
}

/// An immutable quadrature rule `sum_i w_i f(x_i) ~ int f`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    kind: QuadKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Rule size used when projecting onto `modes` basis functions.
pub fn default_rule_size(modes: usize) -> usize {
    2 * modes + 32
}

impl QuadRule {
    pub fn kind(&self) -> QuadKind {
        self.kind
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// The same rule after the substitution `x = scale * t`.
    ///
    /// A Gauss-Hermite rule scaled by `sqrt(2)` is exact for polynomials
    /// times `e^{-x^2/2}`, which suits integrands carrying a single Hermite
    /// function.
    pub fn scaled(&self, scale: f64) -> Result<QuadRule> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(domain(format!("rule scale must be positive, got {scale}")));
        }
        Ok(QuadRule {
            kind: self.kind,
            nodes: self.nodes.iter().map(|x| x * scale).collect(),
            weights: self.weights.iter().map(|w| w * scale).collect(),
        })
    }

    /// `sum_i w_i f(x_i)`; a non-finite sample is reported with its node.
    pub fn integrate<F>(&self, f: F) -> Result<Complex64>
    where
        F: Fn(f64) -> Complex64,
    {
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.iter() {
            let v = f(x);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFinite { node: x });
            }
            acc += w * v;
        }
        Ok(acc)
    }

    /// Real-valued convenience wrapper around [`QuadRule::integrate`].
    pub fn integrate_real<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        self.integrate(|x| Complex64::new(f(x), 0.0)).map(|c| c.re)
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples `i` and `i + 1`; the last entry is
/// ignored). Implicit-shift QL; results are unsorted.
fn tridiagonal_eigenvalues(mut diag: Vec<f64>, mut off: Vec<f64>) -> Result<Vec<f64>> {
    let n = diag.len();
    off.resize(n, 0.0);
    if n > 0 {
        off[n - 1] = 0.0;
    }
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(domain("tridiagonal QL failed to converge"));
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(diag)
}

fn hermite_newton(m: usize, mut x: f64) -> Result<f64> {
    let root_2m = (2.0 * m as f64).sqrt();
    for _ in 0..NEWTON_STEPS {
        let k = hermite_fn_batch(m, x)?;
        let derivative = root_2m * k[m - 1] - x * k[m];
        if derivative == 0.0 {
            break;
        }
        x -= k[m] / derivative;
    }
    Ok(x)
}

fn laguerre_newton(m: usize, alpha: f64, mut y: f64) -> Result<f64> {
    let mf = m as f64;
    let coupling = (mf * (mf + alpha)).sqrt();
    for _ in 0..NEWTON_STEPS {
        let v = laguerre_fn_batch(m, alpha, y)?;
        let derivative =
            (alpha / (2.0 * y) - 0.5) * v[m] + (mf * v[m] - coupling * v[m - 1]) / y;
        if derivative == 0.0 {
            break;
        }
        let next = y - v[m] / derivative;
        if !(next > 0.0) {
            break;
        }
        y = next;
    }
    Ok(y)
}

/// `m`-point Gauss-Hermite rule for the plain measure `dx`.
pub fn gauss_hermite(m: usize) -> Result<QuadRule> {
    if m == 0 {
        return Err(domain("Gauss-Hermite rule needs at least one point"));
    }
    let off: Vec<f64> = (1..m).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let mut eig = tridiagonal_eigenvalues(vec![0.0; m], off)?;
    eig.sort_by(|a, b| a.total_cmp(b));

    // polish the non-negative half and mirror it
    let mut nodes = vec![0.0; m];
    for i in 0..m / 2 {
        let j = m - 1 - i;
        let start = 0.5 * (eig[j] - eig[i]);
        let x = hermite_newton(m, start)?;
        nodes[i] = -x;
        nodes[j] = x;
    }

    let weights = nodes
        .iter()
        .map(|&x| {
            let k = hermite_fn_batch(m - 1, x)?;
            Ok(1.0 / k.iter().map(|v| v * v).sum::<f64>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuadRule {
        kind: QuadKind::GaussHermite,
        nodes,
        weights,
    })
}

/// `m`-point Gauss-Laguerre rule (parameter `alpha`) for the plain measure `dy` on `[0, inf)`.
pub fn gauss_laguerre(m: usize, alpha: f64) -> Result<QuadRule> {
    if m == 0 {
        return Err(domain("Gauss-Laguerre rule needs at least one point"));
    }
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(domain(format!("Laguerre parameter must satisfy alpha > -1, got {alpha}")));
    }
    let diag: Vec<f64> = (0..m).map(|k| 2.0 * k as f64 + 1.0 + alpha).collect();
    let off: Vec<f64> = (1..m)
        .map(|k| {
            let kf = k as f64;
            (kf * (kf + alpha)).sqrt()
        })
        .collect();
    let mut nodes = tridiagonal_eigenvalues(diag, off)?;
    for y in nodes.iter_mut() {
        *y = laguerre_newton(m, alpha, *y)?;
    }
    nodes.sort_by(|a, b| a.total_cmp(b));

    let weights = nodes
        .iter()
        .map(|&y| {
            let v = laguerre_fn_batch(m - 1, alpha, y)?;
            Ok(1.0 / v.iter().map(|v| v * v).sum::<f64>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuadRule {
        kind: QuadKind::GaussLaguerre { alpha },
        nodes,
        weights,
    })
}
