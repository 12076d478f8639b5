use hermite_harmonic::specfun::hermite_fn;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::csvio::TimeSeries;
use crate::error::{FilterError, Result};

/// Identifies the noise generator in output headers.
pub const NOISE_ALGORITHM: &str = "rand_chacha::ChaCha8Rng::seed_from_u64 + rand_distr::Normal (ziggurat)";

#[derive(Debug, Clone, PartialEq)]
pub enum SynthKind {
    /// `exp(-u^2/2)`, `u = t - t_mid`.
    GaussianPulse,
    /// `exp(-u^2/8) cos(u^2/4)`.
    Chirp,
    /// `sum c_n K_n(u)`.
    HermiteMix(Vec<(usize, f64)>),
    /// Base signal plus white Gaussian noise at the given SNR.
    Noisy {
        base: Box<SynthKind>,
        snr_db: f64,
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub t0: f64,
    pub dt: f64,
}

impl GridSpec {
    pub fn midpoint(&self) -> f64 {
        self.t0 + 0.5 * (self.n.saturating_sub(1)) as f64 * self.dt
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Synthesized {
    pub series: TimeSeries,
    /// Provenance lines for the CSV header.
    pub comments: Vec<String>,
}

/// Parses `"2:1.0,5:1.0"`.
pub fn parse_mix(spec: &str) -> Result<Vec<(usize, f64)>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (n, c) = item
                .split_once(':')
                .ok_or_else(|| FilterError::Config(format!("mix entry '{item}' is not n:coefficient")))?;
            let n = n
                .trim()
                .parse::<usize>()
                .map_err(|_| FilterError::Config(format!("mix index '{}' is not a mode number", n.trim())))?;
            let c = c
                .trim()
                .parse::<f64>()
                .map_err(|_| FilterError::Config(format!("mix coefficient '{}' is not a number", c.trim())))?;
            Ok((n, c))
        })
        .collect()
}

fn describe(kind: &SynthKind) -> String {
    match kind {
        SynthKind::GaussianPulse => "gaussian_pulse".into(),
        SynthKind::Chirp => "chirp".into(),
        SynthKind::HermiteMix(mix) => {
            let parts: Vec<String> = mix.iter().map(|(n, c)| format!("{n}:{c}")).collect();
            format!("hermite_mix {}", parts.join(","))
        }
        SynthKind::Noisy { base, snr_db, seed } => {
            format!("noisy base=({}) snr_db={snr_db} seed={seed}", describe(base))
        }
    }
}

fn clean_samples(kind: &SynthKind, grid: GridSpec) -> Result<Vec<f64>> {
    let mid = grid.midpoint();
    let u = |j: usize| grid.t0 + j as f64 * grid.dt - mid;
    match kind {
        SynthKind::GaussianPulse => Ok((0..grid.n).map(|j| (-u(j) * u(j) / 2.0).exp()).collect()),
        SynthKind::Chirp => Ok((0..grid.n)
            .map(|j| {
                let u = u(j);
                (-u * u / 8.0).exp() * (u * u / 4.0).cos()
            })
            .collect()),
        SynthKind::HermiteMix(mix) => (0..grid.n)
            .map(|j| {
                mix.iter()
                    .map(|&(n, c)| Ok(c * hermite_fn(n, u(j))?))
                    .sum::<Result<f64>>()
            })
            .collect(),
        SynthKind::Noisy { base, snr_db, seed } => {
            let clean = clean_samples(base, grid)?;
            if !snr_db.is_finite() {
                return Err(FilterError::Config(format!("snr_db must be finite, got {snr_db}")));
            }
            let power = clean.iter().map(|v| v * v).sum::<f64>() / clean.len() as f64;
            let sigma = (power / 10f64.powf(snr_db / 10.0)).sqrt();
            let normal = Normal::new(0.0, sigma).map_err(|e| FilterError::Config(format!("noise: {e}")))?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok(clean.into_iter().map(|v| v + normal.sample(&mut rng)).collect())
        }
    }
}

/// Samples `kind` on `grid`, centered on the grid midpoint.
pub fn synth_signal(kind: &SynthKind, grid: GridSpec) -> Result<Synthesized> {
    let values = clean_samples(kind, grid)?;
    let series = TimeSeries::new(grid.t0, grid.dt, values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())?;
    let mut comments = vec![format!("synth {}", describe(kind))];
    if matches!(kind, SynthKind::Noisy { .. }) {
        comments.push(format!("rng {NOISE_ALGORITHM}"));
    }
    Ok(Synthesized { series, comments })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::filter_series;
    use crate::plan::{BasisChoice, FilterPlan, Window};

    const GRID: GridSpec = GridSpec { n: 512, t0: -8.0, dt: 0.03125 };

    #[test]
    fn pulse_peaks_at_center() {
        let s = synth_signal(&SynthKind::GaussianPulse, GridSpec { n: 513, ..GRID }).unwrap().series;
        assert_eq!(s.values[256], Complex64::new(1.0, 0.0));
        let max = s.values.iter().map(|v| v.re).fold(f64::MIN, f64::max);
        assert_eq!(max, 1.0);
    }

    #[test]
    fn mix_is_recovered() {
        let mix = parse_mix("2:1.0,5:1.0").unwrap();
        assert_eq!(mix, vec![(2, 1.0), (5, 1.0)]);
        let grid = GridSpec { n: 513, ..GRID };
        let s = synth_signal(&SynthKind::HermiteMix(mix), grid).unwrap().series;
        let mut plan = FilterPlan::identity(BasisChoice::Hermite, 16);
        plan.window = Some(Window { center: 0.0, scale: 1.0 });
        let c = filter_series(&plan, &s).unwrap().input_coeffs;
        for (n, a) in c.values().iter().enumerate() {
            let expected = if n == 2 || n == 5 { 1.0 } else { 0.0 };
            assert!((a - expected).norm() < 1e-10, "n={n} a={a}");
        }
    }

    #[test]
    fn noise_is_seeded() {
        let kind = SynthKind::Noisy {
            base: Box::new(SynthKind::GaussianPulse),
            snr_db: 20.0,
            seed: 7,
        };
        let a = synth_signal(&kind, GRID).unwrap();
        let b = synth_signal(&kind, GRID).unwrap();
        assert_eq!(a, b);
        assert!(a.comments.iter().any(|c| c.contains("ChaCha8")));
        let other = synth_signal(&SynthKind::Noisy { base: Box::new(SynthKind::GaussianPulse), snr_db: 20.0, seed: 8 }, GRID).unwrap();
        assert_ne!(a.series, other.series);

        let clean = synth_signal(&SynthKind::GaussianPulse, GRID).unwrap().series;
        let p_sig: f64 = clean.values.iter().map(|v| v.norm_sqr()).sum();
        let p_noise: f64 = a.series.values.iter().zip(&clean.values).map(|(x, y)| (x - y).norm_sqr()).sum();
        let snr = 10.0 * (p_sig / p_noise).log10();
        assert!((snr - 20.0).abs() < 1.0, "{snr}");
    }

    #[test]
    fn bad_inputs() {
        assert!(parse_mix("2=1").is_err());
        assert!(parse_mix("x:1").is_err());
        assert!(synth_signal(&SynthKind::Chirp, GridSpec { n: 1, t0: 0.0, dt: 1.0 }).is_err());
        assert!(synth_signal(&SynthKind::Chirp, GridSpec { n: 8, t0: 0.0, dt: 0.0 }).is_err());
    }
}
