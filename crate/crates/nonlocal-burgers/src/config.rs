//! Run configuration: a small sectioned text format, its parser, and the
//! builders that turn a parsed configuration into grids, kernels, and solver
//! settings.
//!
//! # Format
//!
//! Configurations are plain text with `[section]` headers and `key = value`
//! lines.  Blank lines and lines starting with `#` are ignored; a trailing
//! `# comment` is stripped from values.  Five sections are recognised:
//!
//! | section    | keys                                                        |
//! |------------|-------------------------------------------------------------|
//! | `[grid]`   | `half_width`, `n`, `boundary` (`periodic`/`zero`)           |
//! | `[kernel]` | `kind` (`bessel`/`exponential`/`zero`/`file`), `alpha`, `sign`, `path` |
//! | `[data]`   | `kind` (`gaussian`/`square`/`ramp`/`file`), shape keys, `path` |
//! | `[run]`    | `epsilon`, `s`, `cfl`, `times`, `out_dir`                   |
//! | `[verify]` | `checks` (comma list), `variant` (`simple`/`sharp`/`exact`) |
//!
//! Every key has a default except the data shape parameters, so a minimal
//! config needs only a `[data]` section.  Unknown keys and duplicate keys are
//! errors — they are always typos — and all parse errors carry the offending
//! line number.
//!
//! # Canonical form
//!
//! [`RunConfig::canonical_string`] renders a configuration back to text using
//! shortest round-trip float formatting.  Parsing is the exact inverse:
//! `parse(canonical_string(c)) == c` for every valid `c`, which makes the
//! canonical form safe to archive next to simulation output and re-run later.
//!
//! # Initial data
//!
//! | kind       | profile                                                        |
//! |------------|----------------------------------------------------------------|
//! | `gaussian` | `A·exp(−(x−c)²/(2w²))`                                         |
//! | `square`   | `h` on `[−w/2, w/2]`, `0` elsewhere                            |
//! | `ramp`     | odd tent: `m·x` on `|x| ≤ w/2`, `m·sign(x)·(w−|x|)` on `w/2 < |x| ≤ w`, `0` beyond |
//! | `file`     | samples from a two-column CSV                                  |
//!
//! The ramp is the wave-breaking workhorse: a negative slope `m` gives
//! `min u₀′ = m` on the core, so the zero-kernel breaking time is exactly
//! `−1/m`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::burgers::BurgersConfig;
use crate::coeffs::HolderVariant;
use crate::error::{Error, Result};
use crate::field::{Boundary, GridFunction};
use crate::kernel::{KernelKind, KernelSpec, SampledKernel};
use crate::splitting::SplitConfig;

/// Which convolution kernel a run uses.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelChoice {
    /// Bessel kernel `G_α` differentiated once, built spectrally.
    Bessel { alpha: f64, sign: f64 },
    /// Closed-form `K₂(x) = −sign·½·sgn(x)·e^{−|x|}` (the `α = 2` case).
    Exponential { sign: f64 },
    /// No kernel: the run degenerates to the pure convective equation.
    Zero,
    /// Kernel samples from a two-column CSV file.
    File { path: PathBuf },
}

/// Initial datum shapes.
#[derive(Clone, Debug, PartialEq)]
pub enum InitialData {
    /// `amplitude · exp(−(x−center)²/(2·width²))`.
    Gaussian {
        amplitude: f64,
        width: f64,
        center: f64,
    },
    /// `height` on `[−width/2, width/2]`, zero elsewhere.
    Square { height: f64, width: f64 },
    /// Odd tent with core slope `slope` on `|x| ≤ width/2`.
    Ramp { slope: f64, width: f64 },
    /// Samples from a two-column CSV file (must match the `[grid]` section).
    File { path: PathBuf },
}

/// Which verification checks a `verify` run performs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyToggles {
    pub holder: bool,
    pub height: bool,
    pub l2: bool,
    pub contraction: bool,
    pub breaking: bool,
}

impl VerifyToggles {
    /// All checks enabled.
    pub fn all() -> Self {
        VerifyToggles {
            holder: true,
            height: true,
            l2: true,
            contraction: true,
            breaking: true,
        }
    }

    /// True when no check is enabled.
    pub fn is_empty(&self) -> bool {
        *self == VerifyToggles::default()
    }
}

/// A complete, validated run description.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Domain half-width `L`; the grid covers `[−L, L)`.
    pub half_width: f64,
    /// Number of cells (even, ≥ 8).
    pub n: usize,
    pub boundary: Boundary,
    pub kernel: KernelChoice,
    pub data: InitialData,
    /// Splitting step `ε > 0`.
    pub epsilon: f64,
    /// Hölder exponent `s ∈ [0, 1]` used by measurements and bounds.
    pub s: f64,
    /// CFL number in `(0, 1]`.
    pub cfl: f64,
    /// Snapshot times, strictly increasing and positive.
    pub times: Vec<f64>,
    /// Output directory for `simulate`/`verify` artifacts.
    pub out_dir: PathBuf,
    pub checks: VerifyToggles,
    pub variant: HolderVariant,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            half_width: 32.0,
            n: 512,
            boundary: Boundary::Periodic,
            kernel: KernelChoice::Bessel {
                alpha: 2.0,
                sign: 1.0,
            },
            data: InitialData::Gaussian {
                amplitude: 1.0,
                width: 1.0,
                center: 0.0,
            },
            epsilon: 0.01,
            s: 1.0,
            cfl: 0.9,
            times: vec![0.1, 0.5, 1.0, 2.0, 5.0, 10.0],
            out_dir: PathBuf::from("out"),
            checks: VerifyToggles::default(),
            variant: HolderVariant::Sharp,
        }
    }
}

impl KernelChoice {
    /// Build the interaction kernel `K` on the run's grid.
    pub fn build(&self, half_width: f64, n: usize) -> Result<SampledKernel> {
        match self {
            KernelChoice::Bessel { alpha, sign } => KernelSpec {
                kind: KernelKind::Bessel {
                    alpha: *alpha,
                    sign: *sign,
                },
                half_width,
                n,
            }
            .build()
            .map(|b| b.k),
            KernelChoice::Exponential { sign } => KernelSpec {
                kind: KernelKind::Exponential { sign: *sign },
                half_width,
                n,
            }
            .build()
            .map(|b| b.k),
            KernelChoice::Zero => SampledKernel::zeros(half_width, n),
            KernelChoice::File { path } => {
                let k = SampledKernel::from_csv(path)?;
                if k.values().len() != n || (k.half_width() - half_width).abs() > 1e-12 {
                    return Err(Error::GridMismatch {
                        expected_l: half_width,
                        expected_n: n,
                        got_l: k.half_width(),
                        got_n: k.values().len(),
                    });
                }
                Ok(k)
            }
        }
    }
}

impl InitialData {
    /// Sample the datum on the run's grid.
    pub fn build(&self, half_width: f64, n: usize, boundary: Boundary) -> Result<GridFunction> {
        match self {
            InitialData::Gaussian {
                amplitude,
                width,
                center,
            } => {
                let (a, w, c) = (*amplitude, *width, *center);
                GridFunction::from_fn(half_width, n, boundary, |x| {
                    a * (-(x - c) * (x - c) / (2.0 * w * w)).exp()
                })
            }
            InitialData::Square { height, width } => {
                let (h, w) = (*height, *width);
                GridFunction::from_fn(half_width, n, boundary, |x| {
                    if x.abs() <= w / 2.0 {
                        h
                    } else {
                        0.0
                    }
                })
            }
            InitialData::Ramp { slope, width } => {
                let (m, w) = (*slope, *width);
                GridFunction::from_fn(half_width, n, boundary, |x| {
                    let ax = x.abs();
                    if ax <= w / 2.0 {
                        m * x
                    } else if ax <= w {
                        m * x.signum() * (w - ax)
                    } else {
                        0.0
                    }
                })
            }
            InitialData::File { path } => {
                let (f, _t) = GridFunction::from_csv(path)?;
                if f.n() != n || (f.half_width() - half_width).abs() > 1e-12 {
                    return Err(Error::GridMismatch {
                        expected_l: half_width,
                        expected_n: n,
                        got_l: f.half_width(),
                        got_n: f.n(),
                    });
                }
                // CSV carries samples, not boundary semantics; adopt the
                // run's boundary.
                GridFunction::new(f.values().to_vec(), half_width, boundary)
            }
        }
    }
}

impl RunConfig {
    /// Parse a configuration from text.  Purely syntactic + range checks;
    /// referenced files are *not* resolved (see [`RunConfig::from_file`]).
    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text)?.finish()
    }

    /// Read and parse a configuration file.  Relative `path` values inside
    /// the file are resolved against the file's parent directory, and the
    /// referenced files must exist.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = Self::parse(&text)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        if let KernelChoice::File { path } = &mut cfg.kernel {
            *path = resolve(base, path)?;
        }
        if let InitialData::File { path } = &mut cfg.data {
            *path = resolve(base, path)?;
        }
        Ok(cfg)
    }

    /// Render the canonical text form; `parse` is its exact inverse.
    pub fn canonical_string(&self) -> String {
        let mut s = String::new();
        let boundary = match self.boundary {
            Boundary::Periodic => "periodic",
            Boundary::ZeroExtended => "zero",
        };
        let _ = writeln!(s, "[grid]");
        let _ = writeln!(s, "half_width = {}", self.half_width);
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "boundary = {boundary}");
        let _ = writeln!(s, "\n[kernel]");
        match &self.kernel {
            KernelChoice::Bessel { alpha, sign } => {
                let _ = writeln!(s, "kind = bessel");
                let _ = writeln!(s, "alpha = {alpha}");
                let _ = writeln!(s, "sign = {sign}");
            }
            KernelChoice::Exponential { sign } => {
                let _ = writeln!(s, "kind = exponential");
                let _ = writeln!(s, "sign = {sign}");
            }
            KernelChoice::Zero => {
                let _ = writeln!(s, "kind = zero");
            }
            KernelChoice::File { path } => {
                let _ = writeln!(s, "kind = file");
                let _ = writeln!(s, "path = {}", path.display());
            }
        }
        let _ = writeln!(s, "\n[data]");
        match &self.data {
            InitialData::Gaussian {
                amplitude,
                width,
                center,
            } => {
                let _ = writeln!(s, "kind = gaussian");
                let _ = writeln!(s, "amplitude = {amplitude}");
                let _ = writeln!(s, "width = {width}");
                let _ = writeln!(s, "center = {center}");
            }
            InitialData::Square { height, width } => {
                let _ = writeln!(s, "kind = square");
                let _ = writeln!(s, "height = {height}");
                let _ = writeln!(s, "width = {width}");
            }
            InitialData::Ramp { slope, width } => {
                let _ = writeln!(s, "kind = ramp");
                let _ = writeln!(s, "slope = {slope}");
                let _ = writeln!(s, "width = {width}");
            }
            InitialData::File { path } => {
                let _ = writeln!(s, "kind = file");
                let _ = writeln!(s, "path = {}", path.display());
            }
        }
        let _ = writeln!(s, "\n[run]");
        let _ = writeln!(s, "epsilon = {}", self.epsilon);
        let _ = writeln!(s, "s = {}", self.s);
        let _ = writeln!(s, "cfl = {}", self.cfl);
        let times: Vec<String> = self.times.iter().map(|t| format!("{t}")).collect();
        let _ = writeln!(s, "times = {}", times.join(", "));
        let _ = writeln!(s, "out_dir = {}", self.out_dir.display());
        let _ = writeln!(s, "\n[verify]");
        let mut checks = Vec::new();
        if self.checks.holder {
            checks.push("holder");
        }
        if self.checks.height {
            checks.push("height");
        }
        if self.checks.l2 {
            checks.push("l2");
        }
        if self.checks.contraction {
            checks.push("contraction");
        }
        if self.checks.breaking {
            checks.push("breaking");
        }
        if checks.is_empty() {
            let _ = writeln!(s, "checks = none");
        } else {
            let _ = writeln!(s, "checks = {}", checks.join(", "));
        }
        let variant = match self.variant {
            HolderVariant::Simple => "simple",
            HolderVariant::Sharp => "sharp",
            HolderVariant::Exact => "exact",
        };
        let _ = writeln!(s, "variant = {variant}");
        s
    }

    /// Range checks shared by `parse` and by callers constructing configs in
    /// code.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return bad(format!("half_width must be positive, got {}", self.half_width));
        }
        if self.n < 8 || self.n % 2 != 0 {
            return bad(format!("n must be even and at least 8, got {}", self.n));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if !(0.0..=1.0).contains(&self.s) {
            return bad(format!("s must lie in [0, 1], got {}", self.s));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return bad(format!("cfl must lie in (0, 1], got {}", self.cfl));
        }
        if self.times.is_empty() {
            return bad("times must contain at least one snapshot time".into());
        }
        let mut prev = 0.0;
        for &t in &self.times {
            if !(t.is_finite() && t > prev) {
                return bad(format!(
                    "times must be strictly increasing and positive, got {t} after {prev}"
                ));
            }
            prev = t;
        }
        match &self.data {
            InitialData::Gaussian { width, .. } if *width <= 0.0 => {
                return bad("gaussian width must be positive".into());
            }
            InitialData::Square { width, .. } | InitialData::Ramp { width, .. }
                if *width <= 0.0 =>
            {
                return bad("data width must be positive".into());
            }
            _ => {}
        }
        if let KernelChoice::Bessel { alpha, .. } = self.kernel {
            if !(alpha.is_finite() && alpha > 1.0) {
                return bad(format!(
                    "bessel alpha must exceed 1 for an integrable derivative, got {alpha}"
                ));
            }
        }
        Ok(())
    }

    /// Build the interaction kernel on this configuration's grid.
    pub fn build_kernel(&self) -> Result<SampledKernel> {
        self.kernel.build(self.half_width, self.n)
    }

    /// Sample the initial datum on this configuration's grid.
    pub fn build_data(&self) -> Result<GridFunction> {
        self.data.build(self.half_width, self.n, self.boundary)
    }

    /// Assemble the splitting-scheme configuration (no snapshot recording by
    /// default; callers override `record_every` when they want trajectories).
    pub fn split_config(&self) -> Result<SplitConfig> {
        Ok(SplitConfig {
            epsilon: self.epsilon,
            kernel: self.build_kernel()?,
            burgers: BurgersConfig {
                cfl: self.cfl,
                ..BurgersConfig::default()
            },
            record_every: usize::MAX,
            holder_s: self.s,
        })
    }
}

fn resolve(base: &Path, path: &Path) -> Result<PathBuf> {
    let full = if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    };
    if !full.exists() {
        return Err(Error::InvalidParameter(format!(
            "referenced file does not exist: {}",
            full.display()
        )));
    }
    Ok(full)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

/// One `key = value` occurrence, tagged with its line for error messages.
struct Entry {
    line: usize,
    value: String,
    consumed: bool,
}

struct Parser {
    /// `(section, key) → entry`; duplicates are rejected during scanning.
    entries: Vec<((String, String), Entry)>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::ConfigParse {
        line,
        message: message.into(),
    }
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let mut entries: Vec<((String, String), Entry)> = Vec::new();
        let mut section = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if let Some(name) = trimmed.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| parse_err(line, "unterminated section header"))?
                    .trim()
                    .to_ascii_lowercase();
                if !matches!(name.as_str(), "grid" | "kernel" | "data" | "run" | "verify") {
                    return Err(parse_err(line, format!("unknown section [{name}]")));
                }
                section = name;
                continue;
            }
            let (key, value) = trimmed
                .split_once('=')
                .ok_or_else(|| parse_err(line, "expected `key = value`"))?;
            if section.is_empty() {
                return Err(parse_err(line, "key outside any [section]"));
            }
            let key = key.trim().to_ascii_lowercase();
            // Strip a trailing comment from the value.
            let value = match value.find('#') {
                Some(pos) => &value[..pos],
                None => value,
            }
            .trim()
            .to_string();
            if value.is_empty() {
                return Err(parse_err(line, format!("empty value for `{key}`")));
            }
            let slot = (section.clone(), key);
            if entries.iter().any(|(k, _)| *k == slot) {
                return Err(parse_err(
                    line,
                    format!("duplicate key `{}` in [{}]", slot.1, slot.0),
                ));
            }
            entries.push((
                slot,
                Entry {
                    line,
                    value,
                    consumed: false,
                },
            ));
        }
        Ok(Parser { entries })
    }

    fn take(&mut self, section: &str, key: &str) -> Option<(usize, String)> {
        for ((sec, k), entry) in &mut self.entries {
            if sec == section && k == key && !entry.consumed {
                entry.consumed = true;
                return Some((entry.line, entry.value.clone()));
            }
        }
        None
    }

    fn take_f64(&mut self, section: &str, key: &str, default: f64) -> Result<f64> {
        match self.take(section, key) {
            None => Ok(default),
            Some((line, v)) => v
                .parse::<f64>()
                .map_err(|_| parse_err(line, format!("`{key}` is not a number: `{v}`"))),
        }
    }

    fn require_f64(&mut self, section: &str, key: &str, ctx_line: usize) -> Result<f64> {
        match self.take(section, key) {
            None => Err(parse_err(
                ctx_line,
                format!("[{section}] is missing required key `{key}`"),
            )),
            Some((line, v)) => v
                .parse::<f64>()
                .map_err(|_| parse_err(line, format!("`{key}` is not a number: `{v}`"))),
        }
    }

    fn finish(mut self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();

        cfg.half_width = self.take_f64("grid", "half_width", cfg.half_width)?;
        if let Some((line, v)) = self.take("grid", "n") {
            cfg.n = v
                .parse::<usize>()
                .map_err(|_| parse_err(line, format!("`n` is not a cell count: `{v}`")))?;
        }
        if let Some((line, v)) = self.take("grid", "boundary") {
            cfg.boundary = match v.to_ascii_lowercase().as_str() {
                "periodic" => Boundary::Periodic,
                "zero" | "zero_extended" => Boundary::ZeroExtended,
                other => {
                    return Err(parse_err(
                        line,
                        format!("boundary must be `periodic` or `zero`, got `{other}`"),
                    ));
                }
            };
        }

        if let Some((line, v)) = self.take("kernel", "kind") {
            cfg.kernel = match v.to_ascii_lowercase().as_str() {
                "bessel" => KernelChoice::Bessel {
                    alpha: self.take_f64("kernel", "alpha", 2.0)?,
                    sign: self.take_f64("kernel", "sign", 1.0)?,
                },
                "exponential" => KernelChoice::Exponential {
                    sign: self.take_f64("kernel", "sign", 1.0)?,
                },
                "zero" => KernelChoice::Zero,
                "file" => match self.take("kernel", "path") {
                    Some((_, p)) => KernelChoice::File {
                        path: PathBuf::from(p),
                    },
                    None => {
                        return Err(parse_err(line, "kernel kind `file` requires `path`"));
                    }
                },
                other => {
                    return Err(parse_err(line, format!("unknown kernel kind `{other}`")));
                }
            };
        } else {
            // Allow tweaking the default Bessel kernel without restating `kind`.
            if let KernelChoice::Bessel { alpha, sign } = &mut cfg.kernel {
                *alpha = self.take_f64("kernel", "alpha", *alpha)?;
                *sign = self.take_f64("kernel", "sign", *sign)?;
            }
        }

        if let Some((line, v)) = self.take("data", "kind") {
            cfg.data = match v.to_ascii_lowercase().as_str() {
                "gaussian" => InitialData::Gaussian {
                    amplitude: self.require_f64("data", "amplitude", line)?,
                    width: self.require_f64("data", "width", line)?,
                    center: self.take_f64("data", "center", 0.0)?,
                },
                "square" => InitialData::Square {
                    height: self.require_f64("data", "height", line)?,
                    width: self.require_f64("data", "width", line)?,
                },
                "ramp" => InitialData::Ramp {
                    slope: self.require_f64("data", "slope", line)?,
                    width: self.require_f64("data", "width", line)?,
                },
                "file" => match self.take("data", "path") {
                    Some((_, p)) => InitialData::File {
                        path: PathBuf::from(p),
                    },
                    None => {
                        return Err(parse_err(line, "data kind `file` requires `path`"));
                    }
                },
                other => {
                    return Err(parse_err(line, format!("unknown data kind `{other}`")));
                }
            };
        }

        cfg.epsilon = self.take_f64("run", "epsilon", cfg.epsilon)?;
        cfg.s = self.take_f64("run", "s", cfg.s)?;
        cfg.cfl = self.take_f64("run", "cfl", cfg.cfl)?;
        if let Some((line, v)) = self.take("run", "times") {
            let mut times = Vec::new();
            for part in v.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                times.push(part.parse::<f64>().map_err(|_| {
                    parse_err(line, format!("times entry is not a number: `{part}`"))
                })?);
            }
            cfg.times = times;
        }
        if let Some((_, v)) = self.take("run", "out_dir") {
            cfg.out_dir = PathBuf::from(v);
        }

        if let Some((line, v)) = self.take("verify", "checks") {
            let mut toggles = VerifyToggles::default();
            for part in v.split(',') {
                let part = part.trim().to_ascii_lowercase();
                if part.is_empty() {
                    continue;
                }
                match part.as_str() {
                    "holder" => toggles.holder = true,
                    "height" => toggles.height = true,
                    "l2" => toggles.l2 = true,
                    "contraction" => toggles.contraction = true,
                    "breaking" => toggles.breaking = true,
                    "all" => toggles = VerifyToggles::all(),
                    "none" => toggles = VerifyToggles::default(),
                    other => {
                        return Err(parse_err(line, format!("unknown check `{other}`")));
                    }
                }
            }
            cfg.checks = toggles;
        }
        if let Some((line, v)) = self.take("verify", "variant") {
            cfg.variant = match v.to_ascii_lowercase().as_str() {
                "simple" => HolderVariant::Simple,
                "sharp" => HolderVariant::Sharp,
                "exact" => HolderVariant::Exact,
                other => {
                    return Err(parse_err(
                        line,
                        format!("variant must be simple/sharp/exact, got `{other}`"),
                    ));
                }
            };
        }

        // Anything not consumed is a typo; point at it.
        if let Some(((sec, key), entry)) = self.entries.iter().find(|(_, e)| !e.consumed) {
            return Err(parse_err(
                entry.line,
                format!("unknown key `{key}` in [{sec}]"),
            ));
        }

        cfg.validate()?;
        Ok(cfg)
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
