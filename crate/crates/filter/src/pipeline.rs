use std::collections::BTreeMap;
use std::path::Path;

use hermite_harmonic::frft::{decompose, frft};
use hermite_harmonic::halfline::{decompose_halfline, frt_halfline, KernelSign};
use hermite_harmonic::quadrature::{default_rule_size, gauss_laguerre};
use hermite_harmonic::spectral::{
    analyze_hermite_grid, analyze_laguerre, energy, synthesize_hermite, synthesize_laguerre, Basis, CoeffVec,
    SampledSignal,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::csvio::{read_signal, write_atomic, write_signal, ImplicitGrid, TimeSeries};
use crate::error::{FilterError, Result};
use crate::plan::{BasisChoice, FilterPlan, Step, Window};

/// Subspace modulus always present in the report.
pub const REPORT_MODULUS: usize = 4;

pub const TOOL_VERSION: &str = concat!("hermite-filter ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterReport {
    pub input_energy: f64,
    pub output_energy: f64,
    /// Input coefficient energy per `"k:r"` class.
    pub per_subspace_energy: BTreeMap<String, f64>,
    /// Relative L2 error of analysis followed by synthesis, with no steps applied.
    pub residual_l2: f64,
    /// `|a_{N-1}|` of the input coefficients.
    pub coefficient_tail: f64,
    pub tool_version: String,
}

#[derive(Debug, Clone)]
pub struct FilterOutcome {
    pub output: TimeSeries,
    pub input_coeffs: CoeffVec,
    pub output_coeffs: CoeffVec,
    pub window: Window,
    pub report: FilterReport,
}

/// Window used when the plan gives none.
///
/// Hermite: centered on the mean of `t`, scaled so the grid fills `[-sqrt(2N+1), sqrt(2N+1)]`.
/// Laguerre: starts at the first sample, scaled so the grid ends at `4N + 2 alpha + 2`.
pub fn default_window(basis: BasisChoice, modes: usize, series: &TimeSeries) -> Window {
    let first = series.time(0);
    let last = series.time(series.len() - 1);
    match basis.kernel_sign() {
        None => {
            let center = series.times().sum::<f64>() / series.len() as f64;
            let reach = (first - center).abs().max((last - center).abs());
            Window {
                center,
                scale: reach / ((2 * modes + 1) as f64).sqrt(),
            }
        }
        Some(sign) => Window {
            center: first,
            scale: (last - first) / (4.0 * modes as f64 + 2.0 * sign.alpha() + 2.0),
        },
    }
}

fn windowed(series: &TimeSeries, w: Window) -> Result<SampledSignal> {
    // sqrt(scale) keeps the map t -> x unitary
    let gain = w.scale.sqrt();
    Ok(SampledSignal::new(
        (series.t0 - w.center) / w.scale,
        series.dt / w.scale,
        series.values.iter().map(|v| v * gain).collect(),
    )?)
}

pub fn analyze(basis: BasisChoice, modes: usize, series: &TimeSeries, w: Window) -> Result<CoeffVec> {
    let signal = windowed(series, w)?;
    match basis.kernel_sign() {
        None => Ok(analyze_hermite_grid(&signal, modes)?),
        Some(sign) => {
            if signal.x0() < -1e-12 * signal.dx() {
                return Err(FilterError::Config(format!(
                    "window.center = {} puts samples at negative y; the {basis:?} basis lives on the half-line",
                    w.center
                )));
            }
            let rule = gauss_laguerre(default_rule_size(modes), sign.alpha())?;
            Ok(analyze_laguerre(&signal, modes, sign.alpha(), &rule)?)
        }
    }
}

pub fn synthesize(c: &CoeffVec, like: &TimeSeries, w: Window) -> Result<TimeSeries> {
    let grid: Vec<f64> = like.times().map(|t| (t - w.center) / w.scale).collect();
    let values = match c.basis() {
        Basis::Hermite => synthesize_hermite(c, &grid)?,
        Basis::Laguerre { .. } => {
            let clamped: Vec<f64> = grid.iter().map(|&y| y.max(0.0)).collect();
            synthesize_laguerre(c, &clamped)?
        }
    };
    let gain = 1.0 / w.scale.sqrt();
    TimeSeries::new(like.t0, like.dt, values.into_iter().map(|v| v * gain).collect())
}

fn keep_classes(c: &CoeffVec, k: usize, keep: &[usize], sign: Option<KernelSign>) -> Result<CoeffVec> {
    let parts = match sign {
        None => decompose(c, k)?,
        Some(s) => decompose_halfline(c, k, s)?,
    };
    let mut values = vec![Complex64::new(0.0, 0.0); c.len()];
    for (r, part) in parts.iter().enumerate() {
        if keep.contains(&r) {
            for (acc, v) in values.iter_mut().zip(part.values()) {
                *acc += v;
            }
        }
    }
    Ok(CoeffVec::new(c.basis(), values))
}

/// Applies the plan's steps in order, in coefficient space.
pub fn apply_steps(basis: BasisChoice, steps: &[Step], c: &CoeffVec) -> Result<CoeffVec> {
    let sign = basis.kernel_sign();
    let mut cur = c.clone();
    for step in steps {
        cur = match step {
            Step::Truncate { nmax } => {
                let mut next = cur.clone();
                next.values_mut()
                    .iter_mut()
                    .skip(nmax + 1)
                    .for_each(|v| *v = Complex64::new(0.0, 0.0));
                next
            }
            Step::KeepSubspaces { k, r } => keep_classes(&cur, *k, r, sign)?,
            Step::Frft { a } => match sign {
                None => frft(&cur, *a)?,
                Some(s) => frt_halfline(&cur, s, *a)?,
            },
            Step::TInvolution => match sign {
                None => frft(&cur, 2.0)?,
                Some(s) => frt_halfline(&cur, s, 2.0)?,
            },
        };
    }
    Ok(cur)
}

/// Energy of each `n mod k` class of `c`, keyed `"k:r"`.
pub fn subspace_energies(c: &CoeffVec, ks: &[usize]) -> BTreeMap<String, f64> {
    let mut out = BTreeMap::new();
    for &k in ks {
        for r in 0..k {
            let e = c
                .values()
                .iter()
                .enumerate()
                .filter(|(n, _)| n % k == r)
                .map(|(_, v)| v.norm_sqr())
                .sum();
            out.insert(format!("{k}:{r}"), e);
        }
    }
    out
}

fn trapezoid_norm_sqr(values: &[Complex64]) -> f64 {
    let last = values.len() - 1;
    values
        .iter()
        .enumerate()
        .map(|(j, v)| if j == 0 || j == last { 0.5 } else { 1.0 } * v.norm_sqr())
        .sum()
}

/// Relative L2 distance between two signals on the same grid.
pub fn relative_l2(approx: &[Complex64], exact: &[Complex64]) -> f64 {
    let diff: Vec<Complex64> = approx.iter().zip(exact).map(|(a, b)| a - b).collect();
    let norm = trapezoid_norm_sqr(exact);
    if norm == 0.0 {
        trapezoid_norm_sqr(&diff).sqrt()
    } else {
        (trapezoid_norm_sqr(&diff) / norm).sqrt()
    }
}

pub fn filter_series(plan: &FilterPlan, series: &TimeSeries) -> Result<FilterOutcome> {
    plan.validate()?;
    let window = plan
        .window
        .unwrap_or_else(|| default_window(plan.basis, plan.modes, series));
    let input_coeffs = analyze(plan.basis, plan.modes, series, window)?;
    let output_coeffs = apply_steps(plan.basis, &plan.steps, &input_coeffs)?;
    let output = synthesize(&output_coeffs, series, window)?;
    let round_trip = synthesize(&input_coeffs, series, window)?;

    let mut ks = vec![REPORT_MODULUS];
    for step in &plan.steps {
        if let Step::KeepSubspaces { k, .. } = step {
            if !ks.contains(k) {
                ks.push(*k);
            }
        }
    }
    let report = FilterReport {
        input_energy: energy(&input_coeffs),
        output_energy: energy(&output_coeffs),
        per_subspace_energy: subspace_energies(&input_coeffs, &ks),
        residual_l2: relative_l2(&round_trip.values, &series.values),
        coefficient_tail: input_coeffs.values()[plan.modes - 1].norm(),
        tool_version: TOOL_VERSION.to_string(),
    };
    Ok(FilterOutcome {
        output,
        input_coeffs,
        output_coeffs,
        window,
        report,
    })
}

pub fn write_report(path: &Path, report: &FilterReport) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report).map_err(|e| FilterError::Io(e.to_string()))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// Reads `input`, filters it, writes the result to `output` and returns the report.
pub fn run(plan: &FilterPlan, input: &Path, output: &Path, implicit: Option<ImplicitGrid>) -> Result<FilterReport> {
    let series = read_signal(input, implicit)?;
    let outcome = filter_series(plan, &series)?;
    write_signal(output, &outcome.output, &[TOOL_VERSION.to_string()])?;
    Ok(outcome.report)
}
