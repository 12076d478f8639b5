use std::path::Path;

use hermite_harmonic::halfline::KernelSign;
use serde::{Deserialize, Serialize};

use crate::error::{FilterError, Result};

pub const DEFAULT_MODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisChoice {
    Hermite,
    LaguerrePlus,
    LaguerreMinus,
}

impl BasisChoice {
    /// Half-line kernel whose eigenbasis this is; `None` for Hermite.
    pub fn kernel_sign(self) -> Option<KernelSign> {
        match self {
            BasisChoice::Hermite => None,
            BasisChoice::LaguerrePlus => Some(KernelSign::Plus),
            BasisChoice::LaguerreMinus => Some(KernelSign::Minus),
        }
    }
}

/// Affine map `x = (t - center) / scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Window {
    pub center: f64,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Step {
    /// Zero every mode `n > nmax`.
    Truncate { nmax: usize },
    /// Keep the modes with `n mod k` in `r`.
    KeepSubspaces { k: usize, r: Vec<usize> },
    /// Fractional transform of order `a` (`a = 1` is the Fourier transform on the Hermite basis).
    Frft { a: f64 },
    /// `a_n -> (-1)^n a_n`.
    TInvolution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterPlan {
    pub basis: BasisChoice,
    #[serde(default = "default_modes")]
    pub modes: usize,
    #[serde(default)]
    pub window: Option<Window>,
    #[serde(default)]
    pub steps: Vec<Step>,
}

fn default_modes() -> usize {
    DEFAULT_MODES
}

impl FilterPlan {
    pub fn identity(basis: BasisChoice, modes: usize) -> Self {
        FilterPlan {
            basis,
            modes,
            window: None,
            steps: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let plan: FilterPlan =
            serde_json::from_str(text).map_err(|e| FilterError::Config(format!("plan: {e}")))?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FilterError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: String, why: String| Err(FilterError::Config(format!("{field}: {why}")));
        if self.modes == 0 {
            return bad("modes".into(), "must be at least 1".into());
        }
        if let Some(w) = self.window {
            if w.scale <= 0.0 || !w.scale.is_finite() {
                return bad("window.scale".into(), format!("must be positive and finite, got {}", w.scale));
            }
            if !w.center.is_finite() {
                return bad("window.center".into(), format!("must be finite, got {}", w.center));
            }
        }
        for (i, step) in self.steps.iter().enumerate() {
            match step {
                Step::Truncate { nmax } if *nmax >= self.modes => {
                    return bad(
                        format!("steps[{i}].nmax"),
                        format!("{nmax} must be below modes = {}", self.modes),
                    );
                }
                Step::KeepSubspaces { k, .. } if *k == 0 => {
                    return bad(format!("steps[{i}].k"), "must be at least 1".into());
                }
                Step::KeepSubspaces { k, r } => {
                    if let Some(bad_r) = r.iter().find(|&&r| r >= *k) {
                        return bad(format!("steps[{i}].r"), format!("{bad_r} is not below k = {k}"));
                    }
                }
                Step::Frft { a } if !a.is_finite() => {
                    return bad(format!("steps[{i}].a"), format!("must be finite, got {a}"));
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// True when every step only masks coefficients.
    pub fn is_projection(&self) -> bool {
        self.steps
            .iter()
            .all(|s| matches!(s, Step::Truncate { .. } | Step::KeepSubspaces { .. }))
    }
}
