//! Periodized Hermite functions on the unit circle.
//!
//! `PK_n(phi) = sum_k K_n(phi + 2 k pi)` has Fourier coefficients
//! `i^n K_n(m)` in the expansion `f(phi) = (1/sqrt(2 pi)) sum_m c_m e^{-i m phi}`.
//! Inner products on the circle are `<f|g> = int_{-pi}^{pi} conj(f) g dphi`, under
//! which `e^{i m phi}/sqrt(2 pi)` is orthonormal and `<PK_n|PK_m> = i^{m-n} (chi_n, chi_m)`,
//! where `chi_n` is the sequence of integer samples `K_n(j)`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::specfun::{hermite_fn, hermite_fn_batch};

/// Largest `N` accepted by [`hermite_integer_det`].
pub const MAX_DET_ORDER: usize = 8;

/// Largest Hermite tail `|K_n(+-M)|` tolerated by [`gram_matrix`].
pub const GRAM_TAIL_TOL: f64 = 1e-14;

const GRAM_SCHMIDT_PIVOT: f64 = 1e-10;

fn i_pow(n: i64) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Two-sided coefficients `c_{-M}..c_M` of `f(phi) = (1/sqrt(2 pi)) sum_m c_m e^{-i m phi}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleFunc {
    cutoff: usize,
    coeffs: Vec<Complex64>,
}

impl CircleFunc {
    pub fn new(cutoff: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * cutoff + 1 {
            return Err(domain(format!(
                "cutoff {cutoff} needs {} coefficients, got {}",
                2 * cutoff + 1,
                coeffs.len()
            )));
        }
        Ok(Self { cutoff, coeffs })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Coefficients ordered from `m = -M` to `m = M`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `c_m`, zero outside `[-M, M]`.
    pub fn coeff(&self, m: i64) -> Complex64 {
        let idx = m + self.cutoff as i64;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[idx as usize]
        }
    }

    /// `sum |c_m|^2`, equal to `int |f|^2 dphi`.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn evaluate(&self, phi: f64) -> Complex64 {
        fourier_series_synthesize(self, phi)
    }
}

/// The integer samples `K_n(-M)..K_n(M)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiSeq {
    n: usize,
    cutoff: usize,
    samples: Vec<f64>,
}

impl ChiSeq {
    pub fn index(&self) -> usize {
        self.n
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// `K_n(m)` for `|m| <= M`, zero outside.
    pub fn sample(&self, m: i64) -> f64 {
        let idx = m + self.cutoff as i64;
        if idx < 0 || idx as usize >= self.samples.len() {
            0.0
        } else {
            self.samples[idx as usize]
        }
    }

    /// `max(|K_n(-M)|, |K_n(M)|)`.
    pub fn tail(&self) -> f64 {
        self.samples[0].abs().max(self.samples[self.samples.len() - 1].abs())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.samples.iter().map(|v| v * v).sum()
    }
}

pub fn chi_seq(n: usize, cutoff: usize) -> Result<ChiSeq> {
    if cutoff == 0 {
        return Err(domain("sequence cutoff must be at least 1"));
    }
    let m = cutoff as i64;
    let samples = (-m..=m)
        .map(|j| hermite_fn(n, j as f64))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChiSeq { n, cutoff, samples })
}

/// Number of wraps `K` so that `|k| <= K` captures `PK_n` to within `tol`.
///
/// Least `K >= 1` with `sqrt(2n+1) + sqrt(2 ln(10/tol)) + 1 < (2K - 1) pi`:
/// every discarded argument lies beyond the turning point by more than the
/// Gaussian decay length needed for the first dropped term to fall below `tol/10`.
pub fn wrap_count(n: usize, tol: f64) -> Result<usize> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(domain(format!("wrap tolerance must be positive, got {tol}")));
    }
    let reach = ((2 * n + 1) as f64).sqrt() + (2.0 * (10.0 / tol).ln().max(0.0)).sqrt() + 1.0;
    let mut k = 1usize;
    while ((2 * k) as f64 - 1.0) * PI <= reach {
        k += 1;
    }
    Ok(k)
}

fn reduce_angle(phi: f64) -> f64 {
    (phi + PI).rem_euclid(2.0 * PI) - PI
}

/// `PK_n(phi)` by the truncated wrap-sum.
pub fn periodized_hermite_direct(n: usize, phi: f64, tol: f64) -> Result<f64> {
    if !phi.is_finite() {
        return Err(domain(format!("angle must be finite, got {phi}")));
    }
    let wraps = wrap_count(n, tol)? as i64;
    periodized_hermite_wraps(n, phi, wraps)
}

/// `sum_{|k| <= wraps} K_n(phi + 2 k pi)` with `phi` reduced to `[-pi, pi)`.
pub fn periodized_hermite_wraps(n: usize, phi: f64, wraps: i64) -> Result<f64> {
    let phi = reduce_angle(phi);
    // smallest |argument| first
    let mut terms = (-wraps..=wraps)
        .map(|k| hermite_fn(n, phi + 2.0 * PI * k as f64))
        .collect::<Result<Vec<_>>>()?;
    terms.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    Ok(terms.iter().rev().sum())
}

/// `c_m = i^n K_n(m)` for `|m| <= M`.
pub fn circle_fourier_coeffs(n: usize, cutoff: usize) -> Result<CircleFunc> {
    let chi = chi_seq(n, cutoff)?;
    let phase = i_pow(n as i64);
    CircleFunc::new(cutoff, chi.samples.iter().map(|&k| phase * k).collect())
}

/// `PK_n(phi)` from its truncated Fourier series.
pub fn periodized_hermite_fourier(n: usize, phi: f64, cutoff: usize) -> Result<Complex64> {
    Ok(fourier_series_synthesize(&circle_fourier_coeffs(n, cutoff)?, phi))
}

/// Hermitian Gram matrix `G[n][m] = <PK_n|PK_m>`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    size: usize,
    entries: Vec<Complex64>,
    real_part: Vec<f64>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, n: usize, m: usize) -> Complex64 {
        self.entries[n * self.size + m]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn max_hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for n in 0..self.size {
            for m in 0..self.size {
                worst = worst.max((self.get(n, m) - self.get(m, n).conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues in ascending order.
    ///
    /// `G = D* S D` with `D = diag(i^n)` and `S[n][m] = (chi_n, chi_m)` real
    /// symmetric, so both share a spectrum; `S` is diagonalized by cyclic Jacobi.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev = symmetric_eigenvalues(self.real_part.clone(), self.size);
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    /// `lambda_max / lambda_min`; infinite when the smallest eigenvalue is not positive.
    pub fn condition_number(&self) -> f64 {
        let ev = self.eigenvalues();
        match (ev.first(), ev.last()) {
            (Some(&lo), Some(&hi)) if lo > 0.0 => hi / lo,
            (Some(_), Some(_)) => f64::INFINITY,
            _ => 1.0,
        }
    }
}

/// `G[n][m] = i^{m-n} sum_{|j| <= M} K_n(j) K_m(j)` for `n, m < count`.
pub fn gram_matrix(count: usize, cutoff: usize) -> Result<GramMatrix> {
    let seqs = (0..count)
        .map(|n| chi_seq(n, cutoff))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = seqs.iter().find(|s| s.tail() > GRAM_TAIL_TOL) {
        return Err(domain(format!(
            "cutoff {cutoff} leaves |K_{}(+-{cutoff})| = {:e} above {GRAM_TAIL_TOL:e}",
            bad.n,
            bad.tail()
        )));
    }
    let mut real_part = vec![0.0; count * count];
    let mut entries = vec![Complex64::new(0.0, 0.0); count * count];
    for n in 0..count {
        for m in n..count {
            let dot: f64 = seqs[n]
                .samples
                .iter()
                .zip(&seqs[m].samples)
                .map(|(a, b)| a * b)
                .sum();
            real_part[n * count + m] = dot;
            real_part[m * count + n] = dot;
            entries[n * count + m] = i_pow(m as i64 - n as i64) * dot;
            entries[m * count + n] = i_pow(n as i64 - m as i64) * dot;
        }
    }
    Ok(GramMatrix {
        size: count,
        entries,
        real_part,
    })
}

fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        let diag: f64 = (0..n).map(|i| a[i * n + i] * a[i * n + i]).sum();
        if off <= f64::EPSILON * f64::EPSILON * diag {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Modified Gram-Schmidt (with one re-orthogonalization pass) on equal-length sequences.
///
/// Fails with [`Error::Dependence`] when a vector keeps less than `1e-10` of
/// its norm after deflation.
pub fn gram_schmidt(vectors: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        if let Some(first) = vectors.first() {
            if v.len() != first.len() {
                return Err(domain(format!(
                    "sequence {index} has length {}, expected {}",
                    v.len(),
                    first.len()
                )));
            }
        }
        let original = dot(v, v).sqrt();
        let mut w = v.clone();
        for _pass in 0..2 {
            for q in &basis {
                let proj = dot(q, &w);
                w.iter_mut().zip(q).for_each(|(x, qi)| *x -= proj * qi);
            }
        }
        let norm = dot(&w, &w).sqrt();
        let pivot = if original > 0.0 { norm / original } else { 0.0 };
        if !(pivot > GRAM_SCHMIDT_PIVOT) {
            return Err(Error::Dependence { index, pivot });
        }
        w.iter_mut().for_each(|x| *x /= norm);
        basis.push(w);
    }
    Ok(basis)
}

/// Which determinant of Hermite-polynomial values to form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetMode {
    /// `H_0..H_{2N}` at the integers `-N..N`.
    Full,
    /// `H_0..H_N` at the integers `0..N`.
    Half,
}

/// `H_0(x)..H_deg(x)` as exact integers.
fn hermite_poly_values(deg: usize, x: i64) -> Vec<BigInt> {
    let two_x = BigInt::from(2 * x);
    let mut out = vec![BigInt::one()];
    if deg >= 1 {
        out.push(two_x.clone());
    }
    for n in 1..deg {
        let next = &two_x * &out[n] - BigInt::from(2 * n as i64) * &out[n - 1];
        out.push(next);
    }
    out
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Exact determinant of the Hermite-polynomial value matrix (rows `H_i`, columns integer abscissae).
pub fn hermite_integer_det(order: usize, mode: DetMode) -> Result<BigInt> {
    if order > MAX_DET_ORDER {
        return Err(Error::Resource {
            requested: order,
            max: MAX_DET_ORDER,
        });
    }
    let n = order as i64;
    let (abscissae, deg): (Vec<i64>, usize) = match mode {
        DetMode::Full => ((-n..=n).collect(), 2 * order),
        DetMode::Half => ((0..=n).collect(), order),
    };
    let columns: Vec<Vec<BigInt>> = abscissae.iter().map(|&x| hermite_poly_values(deg, x)).collect();
    let matrix = (0..=deg)
        .map(|row| columns.iter().map(|col| col[row].clone()).collect())
        .collect();
    Ok(bareiss_determinant(matrix))
}

fn circle_grid(points: usize) -> impl Iterator<Item = f64> {
    let step = 2.0 * PI / points as f64;
    (0..points).map(move |j| -PI + j as f64 * step)
}

/// `c_m = (1/sqrt(2 pi)) int f(phi) e^{i m phi} dphi` for `|m| <= M`, trapezoidal rule on `grid` points.
pub fn fourier_series_analyze<F>(f: F, cutoff: usize, grid: usize) -> Result<CircleFunc>
where
    F: Fn(f64) -> Complex64,
{
    let required = 2 * cutoff + 1;
    if grid < required {
        return Err(Error::Aliasing { grid, required });
    }
    let samples: Vec<(f64, Complex64)> = circle_grid(grid).map(|phi| (phi, f(phi))).collect();
    if let Some(&(phi, _)) = samples.iter().find(|(_, v)| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite { node: phi });
    }
    let scale = (2.0 * PI).sqrt() / grid as f64;
    let m = cutoff as i64;
    let coeffs = (-m..=m)
        .map(|mode| {
            let sum = samples.iter().fold(Complex64::new(0.0, 0.0), |acc, &(phi, v)| {
                acc + v * Complex64::from_polar(1.0, mode as f64 * phi)
            });
            scale * sum
        })
        .collect();
    CircleFunc::new(cutoff, coeffs)
}

/// `(1/sqrt(2 pi)) sum_m c_m e^{-i m phi}`.
pub fn fourier_series_synthesize(c: &CircleFunc, phi: f64) -> Complex64 {
    let m = c.cutoff as i64;
    let sum = (-m..=m)
        .zip(&c.coeffs)
        .fold(Complex64::new(0.0, 0.0), |acc, (mode, &cm)| {
            acc + cm * Complex64::from_polar(1.0, -(mode as f64) * phi)
        });
    sum / (2.0 * PI).sqrt()
}

/// `int_{-pi}^{pi} conj(f) g dphi` by the trapezoidal rule on `grid` points.
pub fn circle_inner_product<F, G>(f: F, g: G, grid: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    let step = 2.0 * PI / grid as f64;
    circle_grid(grid).fold(Complex64::new(0.0, 0.0), |acc, phi| acc + f(phi).conj() * g(phi)) * step
}

/// All `K_0..K_{count-1}` at the integers `-M..M`, as rows.
pub fn chi_rows(count: usize, cutoff: usize) -> Result<Vec<Vec<f64>>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let m = cutoff as i64;
    let columns = (-m..=m)
        .map(|j| hermite_fn_batch(count - 1, j as f64))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..count)
        .map(|n| columns.iter().map(|col| col[n]).collect())
        .collect())
}
