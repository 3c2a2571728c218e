//! JSON experiment configuration.

use anyhow::{bail, Context};
use meansq_core::smoothfn::SmoothWindow;
use serde::{Deserialize, Serialize};

/// Window selection, as written in config files.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WindowSpec {
    StandardBump {
        #[serde(default = "one")]
        amplitude: f64,
    },
    ShiftedPowerBump {
        left: f64,
        right: f64,
        power: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl Default for WindowSpec {
    fn default() -> Self {
        WindowSpec::StandardBump { amplitude: 1.0 }
    }
}

impl WindowSpec {
    pub fn build(&self) -> anyhow::Result<SmoothWindow> {
        Ok(match *self {
            WindowSpec::StandardBump { amplitude } => SmoothWindow::standard().scaled(amplitude),
            WindowSpec::ShiftedPowerBump {
                left,
                right,
                power,
                amplitude,
            } => SmoothWindow::shifted_power(left, right, power)?.scaled(amplitude),
        })
    }
}

/// One experiment: a theta-line of (X, Y = X^theta) points plus the window
/// and cutoff choices.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_theta")]
    pub theta: f64,
    #[serde(default)]
    pub x_values: Vec<f64>,
    #[serde(default)]
    pub phi: WindowSpec,
    #[serde(default)]
    pub w: WindowSpec,
    #[serde(default = "default_prime_cutoff")]
    pub prime_cutoff: u64,
    #[serde(default = "default_a_max")]
    pub a_max: u64,
    /// 0 means all available parallelism. The MEANSQ_THREADS environment
    /// variable overrides this.
    #[serde(default)]
    pub threads: usize,
    /// Output stem: the scan writes `<output>.csv` and `<output>.jsonl`.
    #[serde(default = "default_output")]
    pub output: String,
    #[serde(default = "default_checkpoint")]
    pub checkpoint: String,
}

fn default_theta() -> f64 {
    0.7
}
fn default_prime_cutoff() -> u64 {
    100_000
}
fn default_a_max() -> u64 {
    10_000
}
fn default_output() -> String {
    "results".into()
}
fn default_checkpoint() -> String {
    "scan.checkpoint".into()
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("defaults parse")
    }
}

impl ExperimentConfig {
    /// Parse a config document, reporting syntax errors with line context.
    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| {
            anyhow::anyhow!(
                "config parse error at line {}, column {}: {}",
                e.line(),
                e.column(),
                e
            )
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::from_json(&text)
    }

    /// Every `(X, Y = X^theta)` pair lies in the theorem region iff
    /// `1/2 <= theta <= 1`.
    pub fn validate(&self) -> anyhow::Result<()> {
        if !(0.5..=1.0).contains(&self.theta) {
            bail!(
                "theta = {} violates the region Y <= X <= Y^2 as X grows (need 1/2 <= theta <= 1)",
                self.theta
            );
        }
        for &x in &self.x_values {
            if !(x >= 2.0 && x.is_finite()) {
                bail!("x value {x} out of range (need finite x >= 2)");
            }
        }
        if self.a_max > self.prime_cutoff {
            bail!(
                "a_max = {} exceeds prime_cutoff = {}",
                self.a_max,
                self.prime_cutoff
            );
        }
        self.phi.build()?;
        self.w.build()?;
        Ok(())
    }

    /// Config threads, overridden by MEANSQ_THREADS when set.
    pub fn effective_threads(&self) -> usize {
        match std::env::var("MEANSQ_THREADS") {
            Ok(v) => v.parse().unwrap_or(self.threads),
            Err(_) => self.threads,
        }
    }

    /// Stable identifier of the window pair, part of every checkpoint key.
    pub fn window_key(&self) -> anyhow::Result<String> {
        Ok(format!(
            "phi[{}];w[{}]",
            self.phi.build()?.key(),
            self.w.build()?.key()
        ))
    }
}

/// Rounded scale `Y` for a scan point. Rounding may cross the region
/// boundary at theta = 1/2 exactly; step up to the ceiling in that case.
pub fn derive_y(x: f64, theta: f64) -> (f64, f64) {
    let y_raw = x.powf(theta);
    let mut y = y_raw.round();
    if y * y < x {
        y = y_raw.ceil();
    } else if y > x {
        y = y_raw.floor();
    }
    (y_raw, y)
}
