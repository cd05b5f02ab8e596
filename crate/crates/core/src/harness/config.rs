//! Run configuration: `key = value` files overridden by command-line flags.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::analysis::VariantSelection;
use crate::quantum::PTParams;
use crate::{Error, Result};

/// Inclusive linear range `start:end:steps`; a bare number is a single point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RangeSpec {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl RangeSpec {
    pub fn single(v: f64) -> Self {
        RangeSpec {
            start: v,
            end: v,
            steps: 1,
        }
    }

    pub fn new(start: f64, end: f64, steps: usize) -> Result<Self> {
        let r = RangeSpec { start, end, steps };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        if !self.start.is_finite() || !self.end.is_finite() {
            return Err(Error::Config("range bounds must be finite".into()));
        }
        if self.steps == 0 {
            return Err(Error::Config("range needs at least one step".into()));
        }
        if self.steps > 1 && self.end < self.start {
            return Err(Error::Config(format!(
                "range end {} is below start {}",
                self.end, self.start
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let h = (self.end - self.start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.end
                } else {
                    self.start + k as f64 * h
                }
            })
            .collect()
    }

    /// The value of a one-point range.
    pub fn scalar(&self, name: &str) -> Result<f64> {
        if self.steps != 1 {
            return Err(Error::Config(format!(
                "`{name}` must be a single value here"
            )));
        }
        Ok(self.start)
    }
}

impl FromStr for RangeSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number `{t}` in range `{s}`")))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let r = match parts.as_slice() {
            [v] => RangeSpec::single(num(v)?),
            [a, b, n] => RangeSpec {
                start: num(a)?,
                end: num(b)?,
                steps: n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad step count in range `{s}`")))?,
            },
            _ => {
                return Err(Error::Config(format!(
                    "range must be `v` or `start:end:steps`, got `{s}`"
                )))
            }
        };
        r.validate()?;
        Ok(r)
    }
}

impl fmt::Display for RangeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps == 1 {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}:{}:{}", self.start, self.end, self.steps)
        }
    }
}

/// Parameters shared by all subcommands. Unset fields take per-command
/// defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub r: Option<RangeSpec>,
    pub s: Option<RangeSpec>,
    pub theta: Option<RangeSpec>,
    pub t: Option<f64>,
    pub t_max: Option<f64>,
    pub hbar: f64,
    pub trials: usize,
    pub samples: usize,
    pub seed: u64,
    pub initial: usize,
    pub target: usize,
    pub output: Option<PathBuf>,
    pub variant: VariantSelection,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            r: None,
            s: None,
            theta: None,
            t: None,
            t_max: None,
            hbar: 1.0,
            trials: 10_000,
            samples: 1000,
            seed: 42,
            initial: 0,
            target: 1,
            output: None,
            variant: VariantSelection::Both,
        }
    }
}

/// Single-point defaults: the r = 1, s = 2, θ = π/2 example at t = 1.
pub const POINT_DEFAULT: (f64, f64, f64) = (1.0, 2.0, FRAC_PI_2);
pub const T_DEFAULT: f64 = 1.0;

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = RunConfig::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {}", lineno + 1, strip(e))))?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn parse<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::Config(format!("bad value `{v}` for `{key}`")))
        }
        match key {
            "r" => self.r = Some(value.parse()?),
            "s" => self.s = Some(value.parse()?),
            "theta" => self.theta = Some(value.parse()?),
            "t" => self.t = Some(parse(key, value)?),
            "t_max" => self.t_max = Some(parse(key, value)?),
            "hbar" => self.hbar = parse(key, value)?,
            "trials" => self.trials = parse(key, value)?,
            "samples" => self.samples = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "initial" => self.initial = parse(key, value)?,
            "target" => self.target = parse(key, value)?,
            "output" => self.output = Some(PathBuf::from(value)),
            "variant" => self.variant = value.parse()?,
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hbar > 0.0) || !self.hbar.is_finite() {
            return Err(Error::Config(format!(
                "hbar must be positive, got {}",
                self.hbar
            )));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if let Some(t) = self.t {
            if !(t >= 0.0) || !t.is_finite() {
                return Err(Error::Config(format!("t must be non-negative, got {t}")));
            }
        }
        if let Some(t) = self.t_max {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Config(format!("t_max must be positive, got {t}")));
            }
        }
        if self.initial > 1 || self.target > 1 {
            return Err(Error::Config(
                "initial and target must be basis indices 0 or 1".into(),
            ));
        }
        Ok(())
    }

    /// The single parameter point for point-wise subcommands.
    pub fn point(&self) -> Result<PTParams> {
        let (r0, s0, th0) = POINT_DEFAULT;
        let get = |v: &Option<RangeSpec>, name, d| v.map_or(Ok(d), |r| r.scalar(name));
        PTParams::new(
            get(&self.r, "r", r0)?,
            get(&self.s, "s", s0)?,
            get(&self.theta, "theta", th0)?,
            self.hbar,
        )
    }

    /// Sweep grid in θ-outer, r-middle, s-inner order. Defaults to
    /// θ ∈ 0:1.5:16, r ∈ 0:0.95:20, s = 1.
    pub fn grid(&self) -> Result<Vec<PTParams>> {
        let theta = self.theta.unwrap_or(RangeSpec {
            start: 0.0,
            end: 1.5,
            steps: 16,
        });
        let r = self.r.unwrap_or(RangeSpec {
            start: 0.0,
            end: 0.95,
            steps: 20,
        });
        let s = self.s.unwrap_or(RangeSpec::single(1.0));
        let mut grid = Vec::with_capacity(theta.steps * r.steps * s.steps);
        for &th in &theta.values() {
            for &rv in &r.values() {
                for &sv in &s.values() {
                    grid.push(PTParams::new(rv, sv, th, self.hbar)?);
                }
            }
        }
        Ok(grid)
    }
}

fn strip(e: Error) -> String {
    match e {
        Error::Config(m) => m,
        other => other.to_string(),
    }
}
