//! Run configuration: defaults, the flat key=value config file, and the
//! command-line overrides layered on top. Every overridden value is checked
//! against the owning module's invariants before any computation starts.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use zeta_region_core::remainder_terms::{DEFAULT_T0, DEFAULT_T0_CAP};
use zeta_region_core::smoothing_kernel::Theta;
use zeta_region_core::zero_free_region::TrigPolynomial;
use zeta_region_core::ToleranceConfig;

pub const DEFAULT_THETA: f64 = 1.848;
pub const DEFAULT_R_INIT: f64 = 9.645_908_801;

/// The r exponents of the built-in six-step replay.
pub const DEFAULT_R_STEPS: [f64; 6] = [5.97484, 5.73045, 5.70487, 5.70208, 5.70178, 5.70174];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyChoice {
    Tuned,
    RosserSchoenfeld,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleChoice {
    /// Replay the fixed r exponents of the published run.
    Replay,
    /// Solve r = R0(R, r) at each step until the constant stabilizes.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Everything a command needs, fully validated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub theta: f64,
    pub t0_cap: f64,
    pub t0: f64,
    pub r_init: f64,
    pub r_schedule: Option<Vec<f64>>,
    pub polynomial: PolyChoice,
    /// Root pair for `PolyChoice::Custom`.
    pub custom_roots: Option<(f64, f64)>,
    pub schedule: ScheduleChoice,
    pub format: Format,
    pub tol: ToleranceConfig,
    pub seed: u64,
    pub steps: Option<usize>,
    pub inject_kappa: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            theta: DEFAULT_THETA,
            t0_cap: DEFAULT_T0_CAP,
            t0: DEFAULT_T0,
            r_init: DEFAULT_R_INIT,
            r_schedule: None,
            polynomial: PolyChoice::Tuned,
            custom_roots: None,
            schedule: ScheduleChoice::Replay,
            format: Format::Text,
            tol: ToleranceConfig::default(),
            seed: 42,
            steps: None,
            inject_kappa: None,
        }
    }
}

impl RunConfig {
    /// First r exponent of the effective schedule; the constants command and
    /// the verifier build their region state from it.
    pub fn first_r(&self) -> f64 {
        self.r_schedule
            .as_ref()
            .and_then(|s| s.first().copied())
            .unwrap_or(DEFAULT_R_STEPS[0])
    }

    pub fn polynomial(&self) -> Result<TrigPolynomial> {
        match self.polynomial {
            PolyChoice::Tuned => Ok(zeta_region_core::zero_free_region::trig_poly_default()),
            PolyChoice::RosserSchoenfeld => Ok(
                zeta_region_core::zero_free_region::trig_poly_rosser_schoenfeld(),
            ),
            PolyChoice::Custom => {
                let (c, cp) = self
                    .custom_roots
                    .ok_or_else(|| anyhow!("custom polynomial chosen without its root pair"))?;
                TrigPolynomial::from_roots(c, cp)
                    .map_err(|e| anyhow!("custom polynomial rejected: {e}"))
            }
        }
    }

    /// Reference comparisons only make sense when the run recomputes the
    /// published configuration.
    pub fn at_reference_point(&self) -> bool {
        self.theta == DEFAULT_THETA
            && self.t0_cap == DEFAULT_T0_CAP
            && self.t0 == DEFAULT_T0
            && self.r_init == DEFAULT_R_INIT
            && self.r_schedule.is_none()
    }

    /// Check every field against the owning module's invariants.
    pub fn validate(&self) -> Result<()> {
        Theta::new(self.theta).map_err(|e| anyhow!("{e}"))?;
        if !(self.t0_cap > 1.0) || !self.t0_cap.is_finite() {
            bail!("T0 must be a finite height above 1, got {}", self.t0_cap);
        }
        if !(self.t0 > 0.0) || !self.t0.is_finite() {
            bail!("t0 must be a positive height, got {}", self.t0);
        }
        if !(self.r_init >= 5.0) || !self.r_init.is_finite() {
            bail!("R_init must be at least 5, got {}", self.r_init);
        }
        if let Some(schedule) = &self.r_schedule {
            if schedule.is_empty() {
                bail!("r_schedule must name at least one exponent");
            }
            for &r in schedule {
                if !(r >= 5.0) || !r.is_finite() {
                    bail!("every scheduled r must be at least 5, got {r}");
                }
            }
            if schedule[0] > self.r_init {
                bail!(
                    "first scheduled r = {} exceeds R_init = {}",
                    schedule[0],
                    self.r_init
                );
            }
        }
        self.polynomial()?;
        if !(self.tol.quad_abs_tol > 0.0) || !self.tol.quad_abs_tol.is_finite() {
            bail!("quad_abs_tol must be positive, got {}", self.tol.quad_abs_tol);
        }
        if !(self.tol.root_tol > 0.0) || !self.tol.root_tol.is_finite() {
            bail!("root_tol must be positive, got {}", self.tol.root_tol);
        }
        if !(self.tol.minimize_tol > 0.0) || !self.tol.minimize_tol.is_finite() {
            bail!("minimize_tol must be positive, got {}", self.tol.minimize_tol);
        }
        if self.tol.max_subdivisions == 0 {
            bail!("max_subdivisions must be at least 1");
        }
        if let Some(steps) = self.steps {
            if steps == 0 {
                bail!("steps must be at least 1");
            }
        }
        if let Some(kappa) = self.inject_kappa {
            if !(0.0 < kappa && kappa < 1.0) {
                bail!("an injected discount must sit strictly inside (0, 1), got {kappa}");
            }
        }
        Ok(())
    }

    /// Apply one key=value pair from the config file.
    pub fn apply_pair(&mut self, key: &str, value: &str) -> Result<()> {
        let num = |v: &str| -> Result<f64> {
            v.parse::<f64>()
                .with_context(|| format!("{key}: cannot parse `{v}` as a number"))
        };
        match key {
            "theta" => self.theta = num(value)?,
            "T0" => self.t0_cap = num(value)?,
            "t0" => self.t0 = num(value)?,
            "R_init" => self.r_init = num(value)?,
            "r_schedule" => {
                let parsed: Result<Vec<f64>> = value.split(',').map(|p| num(p.trim())).collect();
                self.r_schedule = Some(parsed?);
            }
            "polynomial" => parse_polynomial(value, self)?,
            "schedule" => self.schedule = parse_schedule(value)?,
            "format" => self.format = parse_format(value)?,
            "seed" => {
                self.seed = value
                    .parse::<u64>()
                    .with_context(|| format!("seed: cannot parse `{value}`"))?;
            }
            "steps" => {
                self.steps = Some(
                    value
                        .parse::<usize>()
                        .with_context(|| format!("steps: cannot parse `{value}`"))?,
                );
            }
            "inject_kappa" => self.inject_kappa = Some(num(value)?),
            "quad_abs_tol" => self.tol.quad_abs_tol = num(value)?,
            "root_tol" => self.tol.root_tol = num(value)?,
            "minimize_tol" => self.tol.minimize_tol = num(value)?,
            "max_subdivisions" => {
                self.tol.max_subdivisions = value
                    .parse::<u32>()
                    .with_context(|| format!("max_subdivisions: cannot parse `{value}`"))?;
            }
            other => bail!("unknown config key `{other}`"),
        }
        Ok(())
    }

    /// Layer a flat key=value file under whatever the flags set later.
    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                anyhow!(
                    "{}:{}: expected key=value, got `{line}`",
                    path.display(),
                    lineno + 1
                )
            })?;
            self.apply_pair(key.trim(), value.trim())
                .with_context(|| format!("{}:{}", path.display(), lineno + 1))?;
        }
        Ok(())
    }
}

pub fn parse_polynomial(value: &str, cfg: &mut RunConfig) -> Result<()> {
    match value {
        "tuned" => {
            cfg.polynomial = PolyChoice::Tuned;
            cfg.custom_roots = None;
        }
        "rs" | "rosser_schoenfeld" => {
            cfg.polynomial = PolyChoice::RosserSchoenfeld;
            cfg.custom_roots = None;
        }
        other => {
            let roots = other
                .strip_prefix("custom:")
                .ok_or_else(|| anyhow!("polynomial must be tuned, rs, or custom:c,c'"))?;
            let (c, cp) = roots
                .split_once(',')
                .ok_or_else(|| anyhow!("custom polynomial needs two roots as custom:c,c'"))?;
            let c: f64 = c.trim().parse().context("first root is not a number")?;
            let cp: f64 = cp.trim().parse().context("second root is not a number")?;
            cfg.polynomial = PolyChoice::Custom;
            cfg.custom_roots = Some((c, cp));
        }
    }
    Ok(())
}

pub fn parse_schedule(value: &str) -> Result<ScheduleChoice> {
    match value {
        "replay" => Ok(ScheduleChoice::Replay),
        "auto" => Ok(ScheduleChoice::Auto),
        other => bail!("schedule must be replay or auto, got `{other}`"),
    }
}

pub fn parse_format(value: &str) -> Result<Format> {
    match value {
        "text" => Ok(Format::Text),
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        other => bail!("format must be text, csv, or json, got `{other}`"),
    }
}
