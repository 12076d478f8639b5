use hermite_harmonic::algebra::{oscillator_relations, su11_relations};
use hermite_harmonic::circle::{gram_schmidt, hermite_integer_det, chi_rows, DetMode};
use hermite_harmonic::frft::{decompose, fourier_quadrature, frft};
use hermite_harmonic::halfline::{t_transform_quadrature, KernelSign};
use hermite_harmonic::quadrature::gauss_hermite;
use hermite_harmonic::specfun::{hermite_fn, hermite_laguerre_bridge, laguerre_fn, BridgeParity};
use hermite_harmonic::spectral::{Basis, CoeffVec};
use num_complex::Complex64;

use crate::csvio::TimeSeries;
use crate::pipeline::{apply_steps, filter_series, relative_l2};
use crate::plan::{BasisChoice, FilterPlan, Step, Window};
use crate::synth::{synth_signal, GridSpec, SynthKind};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.value.is_finite() && self.value <= self.tolerance
    }
}

type Measure = fn() -> hermite_harmonic::Result<f64>;

fn orthonormality() -> hermite_harmonic::Result<f64> {
    let rule = gauss_hermite(64)?;
    let mut worst = 0.0f64;
    for n in 0..=20 {
        for m in 0..=n {
            let v = rule.integrate_real(|x| hermite_fn(n, x).unwrap() * hermite_fn(m, x).unwrap())?;
            worst = worst.max((v - if n == m { 1.0 } else { 0.0 }).abs());
        }
    }
    Ok(worst)
}

fn fourier_eigen() -> hermite_harmonic::Result<f64> {
    let rule = gauss_hermite(96)?.scaled(std::f64::consts::SQRT_2)?;
    let mut worst = 0.0f64;
    for n in 0..=10 {
        for &p in &[0.0, 0.7, -2.3] {
            let got = fourier_quadrature(|x| Complex64::new(hermite_fn(n, x).unwrap(), 0.0), p, &rule)?;
            let want = Complex64::new(0.0, 1.0).powu(n as u32) * hermite_fn(n, p)?;
            worst = worst.max((got - want).norm());
        }
    }
    Ok(worst)
}

fn sample_coeffs() -> CoeffVec {
    let values = (0..24)
        .map(|n| Complex64::new((0.3 * n as f64).sin(), (0.7 * n as f64).cos() / (1.0 + n as f64)))
        .collect();
    CoeffVec::new(Basis::Hermite, values)
}

fn frft_group_law() -> hermite_harmonic::Result<f64> {
    let c = sample_coeffs();
    let four = frft(&c, 4.0)?;
    let split = frft(&frft(&c, 0.3)?, 0.45)?;
    let joint = frft(&c, 0.75)?;
    let mut worst: f64 = if four == c { 0.0 } else { 1.0 };
    for (a, b) in split.values().iter().zip(joint.values()) {
        worst = worst.max((a - b).norm());
    }
    Ok(worst)
}

fn subspace_sum() -> hermite_harmonic::Result<f64> {
    let c = sample_coeffs();
    let mut worst = 0.0f64;
    for k in 1..=8 {
        let parts = decompose(&c, k)?;
        for (n, v) in c.values().iter().enumerate() {
            let sum = parts.iter().fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.values()[n]);
            if sum != *v {
                worst = worst.max(1.0);
            }
        }
    }
    Ok(worst)
}

fn halfline_involution() -> hermite_harmonic::Result<f64> {
    let mut worst = 0.0f64;
    for sign in [KernelSign::Plus, KernelSign::Minus] {
        for n in 0..=6 {
            for &s in &[0.25, 1.0, 4.0] {
                let got = t_transform_quadrature(|y| laguerre_fn(n, sign.alpha(), y).unwrap(), sign, s, 200)?;
                let want = if n % 2 == 0 { 1.0 } else { -1.0 } * laguerre_fn(n, sign.alpha(), s)?;
                worst = worst.max((got - want).abs());
            }
        }
    }
    Ok(worst)
}

fn bridge() -> hermite_harmonic::Result<f64> {
    let mut worst = 0.0f64;
    for n in 0..=10 {
        for &x in &[-3.1, -0.4, 0.0, 1.3, 5.0] {
            for parity in [BridgeParity::Even, BridgeParity::Odd] {
                let (lhs, rhs) = hermite_laguerre_bridge(n, x, parity)?;
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    Ok(worst)
}

fn commutators() -> hermite_harmonic::Result<f64> {
    let mut worst = 0.0f64;
    for rel in oscillator_relations().into_iter().chain(su11_relations(0.5)) {
        worst = worst.max(rel.residual(48)?.relative);
    }
    Ok(worst)
}

fn circle_checks() -> hermite_harmonic::Result<f64> {
    for order in 0..=4 {
        for mode in [DetMode::Full, DetMode::Half] {
            if hermite_integer_det(order, mode)? == 0.into() {
                return Ok(1.0);
            }
        }
    }
    let q = gram_schmidt(&chi_rows(6, 20)?)?;
    let mut worst = 0.0f64;
    for i in 0..q.len() {
        for j in 0..=i {
            let d: f64 = q[i].iter().zip(&q[j]).map(|(a, b)| a * b).sum();
            worst = worst.max((d - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    Ok(worst)
}

fn pipeline_series(kind: SynthKind) -> TimeSeries {
    synth_signal(&kind, GridSpec { n: 513, t0: -8.0, dt: 0.03125 }).unwrap().series
}

fn pipeline_round_trip() -> hermite_harmonic::Result<f64> {
    let s = pipeline_series(SynthKind::GaussianPulse);
    match filter_series(&FilterPlan::identity(BasisChoice::Hermite, 64), &s) {
        Ok(out) => Ok(relative_l2(&out.output.values, &s.values)),
        Err(_) => Ok(f64::INFINITY),
    }
}

fn pipeline_even_energy() -> hermite_harmonic::Result<f64> {
    let s = pipeline_series(SynthKind::HermiteMix(vec![(2, 1.0), (5, 1.0)]));
    let plan = FilterPlan {
        basis: BasisChoice::Hermite,
        modes: 64,
        window: Some(Window { center: 0.0, scale: 1.0 }),
        steps: vec![Step::KeepSubspaces { k: 2, r: vec![0] }],
    };
    match filter_series(&plan, &s) {
        Ok(out) => Ok((out.report.output_energy / out.report.input_energy - 0.5).abs()),
        Err(_) => Ok(f64::INFINITY),
    }
}

fn pipeline_idempotent() -> hermite_harmonic::Result<f64> {
    let steps = [Step::KeepSubspaces { k: 3, r: vec![1] }, Step::Truncate { nmax: 20 }];
    let c = sample_coeffs();
    let once = apply_steps(BasisChoice::Hermite, &steps, &c).map_err(|_| hermite_harmonic::Error::Domain("steps".into()))?;
    let twice = apply_steps(BasisChoice::Hermite, &steps, &once).map_err(|_| hermite_harmonic::Error::Domain("steps".into()))?;
    Ok(if once == twice { 0.0 } else { 1.0 })
}

const CHECKS: &[(&str, Measure, f64)] = &[
    ("hermite orthonormality n,m<=20", orthonormality, 1e-10),
    ("fourier eigenrelation n<=10", fourier_eigen, 1e-8),
    ("frft group law and period 4", frft_group_law, 1e-13),
    ("subspace parts sum bitwise, k<=8", subspace_sum, 0.0),
    ("half-line involution n<=6", halfline_involution, 1e-6),
    ("hermite-laguerre bridge n<=10", bridge, 1e-10),
    ("oscillator and su(1,1) commutators", commutators, 1e-12),
    ("circle determinants and gram-schmidt", circle_checks, 1e-12),
    ("identity plan round trip", pipeline_round_trip, 1e-6),
    ("keep even modes of K2+K5", pipeline_even_energy, 1e-10),
    ("projection steps idempotent", pipeline_idempotent, 0.0),
];

/// Runs the embedded invariant suite.
pub fn run_suite() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&(name, measure, tolerance)| CheckOutcome {
            name,
            value: measure().unwrap_or(f64::INFINITY),
            tolerance,
        })
        .collect()
}
