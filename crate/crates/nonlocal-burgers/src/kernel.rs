//! Convolution kernels `G` and `K = G'` on the periodic grid, and the
//! seminorms that measure their roughness.
//!
//! The nonlocal flux of the equation is `(G∗u)_x = K∗u` with an even,
//! integrable kernel `G` and its odd integrable derivative `K`.  The Bessel
//! family is the reference choice:
//!
//! ```text
//! Ĝ_α(ξ) = (1 + 4π²ξ²)^{-α/2},          α > 1,
//! G₂(x)  = ½ e^{-|x|},   K₂(x) = -½ sgn(x) e^{-|x|}       (closed forms).
//! ```
//!
//! `α = 2` with a `-1` sign is the Burgers–Poisson kernel.  For `α ≠ 2` the
//! samples come from the inverse discrete Fourier transform of the symbol on
//! the periodic grid, `K` by spectral differentiation (`·2πiξ`, Nyquist mode
//! zeroed), followed by an exact even/odd symmetrization.  Kernels are
//! implicitly periodized by that construction; the tail precondition
//! `G_α(L) < 1e-12` keeps the periodization error negligible.
//!
//! Scalar facts carried by a [`SampledKernel`]:
//!
//! | quantity                 | meaning                                        |
//! |--------------------------|------------------------------------------------|
//! | `kappa()`                | `‖·‖_{L¹(ℝ)}` — closed form for Bessel kernels (`‖G_α‖₁ = 1`, `‖K_α‖₁ = 2G_α(0)`), rectangle-rule estimate for custom tables |
//! | [`SampledKernel::l1_norm`] | rectangle rule `Δx·Σ|K_j|` on the kernel grid |
//! | [`SampledKernel::fractional_variation`] | `κ_s = sup_h ‖K(·+h) − K‖₁ / h^s` over sampled shifts |
//! | [`SampledKernel::slobodeckij_seminorm`]  | `[K]_{s,1} = ∬ |K(x+y)−K(x)| / |y|^{1+s} dx dy` |
//!
//! `κ_s` interpolates between `2‖K‖₁` (`s = 0`) and the total variation
//! (`s = 1`); it scales as `κ_s(K(λ·)) = |λ|^{s-1} κ_s(K)` and is finite for
//! Bessel `K_α` whenever `s ≤ min{α−1, 1}`.  The supremum over shifts is
//! approximated by a finite log-spaced sample and reported together with its
//! argmax so refinement can be targeted; for rough kernels whose supremum is
//! only attained as `h → 0` the sampled value is a lower estimate and no
//! convergence claim is made.

use std::f64::consts::PI;
use std::path::Path;

use rustfft::num_complex::Complex;

use crate::{fft, io, quad, Error, Result};

/// Upper bound on the kernel tail `G_α(L)` at the edge of the computational
/// domain.  Beyond this the implicit periodization would fold visible mass
/// back into `[-L, L)`, so construction is refused.  The default evolution
/// tolerances sit around `1e-10`; `1e-12` keeps the tail two orders below
/// them.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Number of log-spaced shifts used by [`SampledKernel::default_shifts`].
/// `‖K(·+h)−K‖₁/h^s` is continuous in `h`, so a modest sample resolves the
/// supremum; the reported argmax tells callers where to refine if needed.
pub const DEFAULT_SHIFT_COUNT: usize = 64;

/// Absolute tolerance (relative to the largest sample) for detecting odd
/// symmetry `K_j = -K_{n-j}` in custom sample tables.  Constructed kernels
/// are symmetrized exactly; the slack only matters for external data.
pub const ODD_DETECTION_TOL: f64 = 1e-12;

/// Which kernel to build, independent of the grid.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelKind {
    /// Bessel kernel with symbol `(1 + 4π²ξ²)^{-α/2}`, scaled by `sign`.
    Bessel { alpha: f64, sign: f64 },
    /// The `α = 2` closed-form pair `±(G₂, K₂)`; `sign = -1` is the
    /// Burgers–Poisson kernel.
    Exponential { sign: f64 },
    /// An externally supplied sample table for `K` (no `G` available).
    Custom { samples: Vec<f64> },
}

/// A kernel choice together with its grid.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpec {
    pub kind: KernelKind,
    /// Half-width `L` of the periodic domain `[-L, L)`.
    pub half_width: f64,
    /// Cell count `n` (even, ≥ 8).
    pub n: usize,
}

/// The kernels produced by [`KernelSpec::build`].  Custom tables define only
/// `K`; the Bessel paths also return the primitive `G`.
#[derive(Clone, Debug)]
pub struct BuiltKernels {
    pub g: Option<SampledKernel>,
    pub k: SampledKernel,
}

impl KernelSpec {
    /// Construct the kernel samples for this spec.
    pub fn build(&self) -> Result<BuiltKernels> {
        match &self.kind {
            KernelKind::Bessel { alpha, sign } => {
                let (g, k) = make_bessel(*alpha, *sign, self.half_width, self.n)?;
                Ok(BuiltKernels { g: Some(g), k })
            }
            KernelKind::Exponential { sign } => {
                let (g, k) = make_bessel(2.0, *sign, self.half_width, self.n)?;
                Ok(BuiltKernels { g: Some(g), k })
            }
            KernelKind::Custom { samples } => {
                if samples.len() != self.n {
                    return Err(Error::GridMismatch {
                        expected_l: self.half_width,
                        expected_n: self.n,
                        got_l: self.half_width,
                        got_n: samples.len(),
                    });
                }
                let k = SampledKernel::from_samples(samples.clone(), self.half_width)?;
                Ok(BuiltKernels { g: None, k })
            }
        }
    }
}

/// A kernel sampled at the grid nodes `x_j = -L + jΔx`, `j = 0..n`.
///
/// Immutable after construction; all operations are pure and safe to call
/// concurrently.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledKernel {
    values: Vec<f64>,
    half_width: f64,
    kappa: f64,
    odd: bool,
    alpha: Option<f64>,
}

/// Result of [`SampledKernel::fractional_variation`]: the sampled maximum of
/// `‖K(·+h)−K‖₁/h^s` and the shift where it was attained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FracVar {
    pub value: f64,
    pub argmax_shift: f64,
}

/// Build the Bessel pair `(G_α, K_α)`, scaled by `sign ∈ {-1, +1}`, on the
/// periodic grid `[-L, L)` with `n` cells.
///
/// `α = 2` uses the closed forms; other `α` use the spectral construction
/// described in the module docs.  Either way the returned `G` is exactly even
/// (`G_j = G_{n-j}`) and `K` exactly odd (`K_j = -K_{n-j}`, `K_0 = K_{n/2} =
/// 0`).  `kappa` carries the closed-form line integrals `‖G_α‖₁ = 1` and
/// `‖K_α‖₁ = 2G_α(0) = Γ((α-1)/2) / (Γ(α/2)√π)`.
///
/// # Errors
///
/// * `α ≤ 1`: `K_α` would not be integrable.
/// * `sign ∉ {-1, +1}`, bad grid (odd `n`, `n < 8`, `L ≤ 0`).
/// * Tail truncation: `G_α(L) ≥ `[`TAIL_TOLERANCE`] — the domain is too
///   small for the kernel; the error reports the measured tail value and an
///   estimate `≈ 2 G_α(L)` of the mass outside `[-L, L]` (the tail decays
///   like `e^{-|x|}`, so `∫_L^∞ G_α ≈ G_α(L)` up to a slowly varying factor).
pub fn make_bessel(
    alpha: f64,
    sign: f64,
    half_width: f64,
    n: usize,
) -> Result<(SampledKernel, SampledKernel)> {
    if !alpha.is_finite() || alpha <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "bessel order must satisfy alpha > 1 so that K = G' is integrable, got {alpha}"
        )));
    }
    if sign != 1.0 && sign != -1.0 {
        return Err(Error::InvalidParameter(format!(
            "kernel sign must be exactly +1 or -1, got {sign}"
        )));
    }
    validate_grid(half_width, n)?;
    let tail = bessel_g_value(alpha, half_width);
    if !(tail < TAIL_TOLERANCE) {
        return Err(Error::TailTruncation {
            half_width,
            tail_value: tail,
            tail_mass: 2.0 * tail,
        });
    }
    let (mut g, mut k) = if alpha == 2.0 {
        closed_form_alpha2(half_width, n)
    } else {
        spectral_bessel(alpha, half_width, n)
    };
    if sign < 0.0 {
        for v in &mut g {
            *v = -*v;
        }
        for v in &mut k {
            *v = -*v;
        }
    }
    // ‖K_α‖₁ = 2G_α(0); at α = 2 that is exactly 1 — take the closed form
    // rather than the (correct to ~2 ulp) Γ-ratio evaluation.
    let kappa_k = if alpha == 2.0 {
        1.0
    } else {
        2.0 * bessel_g_origin(alpha)
    };
    Ok((
        SampledKernel {
            values: g,
            half_width,
            kappa: 1.0,
            odd: false,
            alpha: Some(alpha),
        },
        SampledKernel {
            values: k,
            half_width,
            kappa: kappa_k,
            odd: true,
            alpha: Some(alpha),
        },
    ))
}

/// Pointwise `G_α(x)` by adaptive quadrature of the subordination integral
///
/// ```text
/// G_α(x) = 1/(Γ(α/2)·√(4π)) ∫_0^∞ t^{(α-3)/2} e^{-t - x²/(4t)} dt,
/// ```
///
/// the Gaussian-mixture representation of the inverse Fourier integral of
/// `(1+4π²ξ²)^{-α/2}` (substituting the heat kernel for each Gaussian turns
/// one into the other; the two agree to working precision wherever both
/// converge).  The integrand is evaluated on `u = ln t` with the decay
/// `e^{-|x|}` factored out, so the result keeps full relative precision even
/// deep in the tail.  Intended range: `α > 1` and `|x| ≲ 700` (beyond that
/// the value underflows anyway); `x = 0` uses the closed form
/// `G_α(0) = Γ((α-1)/2) / (2Γ(α/2)√π)`.
pub fn bessel_g_value(alpha: f64, x: f64) -> f64 {
    if alpha == 2.0 {
        return 0.5 * (-x.abs()).exp();
    }
    let ax = x.abs();
    if ax == 0.0 {
        return bessel_g_origin(alpha);
    }
    // Rescaled integrand on u = ln t:
    //   t^{(α-1)/2} e^{-t - x²/4t} du = exp(p·u - (√t - x/(2√t))²) · e^{-x} du
    // with p = (α-1)/2; the square is the only place x enters, so the factor
    // e^{-x} carries the entire decay.
    let p = 0.5 * (alpha - 1.0);
    let f = |u: f64| {
        let t = u.exp();
        let rt = t.sqrt();
        let d = rt - 0.5 * ax / rt;
        (p * u - d * d).exp()
    };
    // The mass sits in an O(1)-wide peak near u = ln(max(x, O(1))/2) inside a
    // long, otherwise empty interval, which whole-interval adaptive quadrature
    // can step right over.  Unit panels make sure every feature is probed; the
    // per-panel tolerance keeps the summed error at ~1e-12 of the O(1)
    // rescaled integral.
    let upper = ax.max(1.0).ln() + 6.0;
    let tol = 1e-14 * (1.0 + ax.sqrt());
    let mut integral = 0.0;
    let mut left = -60.0;
    while left < upper {
        let right = (left + 1.0).min(upper);
        integral += quad::adaptive_simpson(&f, left, right, tol, 48);
        left = right;
    }
    integral * (-ax - quad::ln_gamma(0.5 * alpha)).exp() / (4.0 * PI).sqrt()
}

/// `G_α(0) = Γ((α-1)/2) / (2 Γ(α/2) √π)` for `α > 1`; half the closed form
/// of `‖K_α‖₁ = 2 G_α(0)` (the total variation of the even unimodal `G_α`).
fn bessel_g_origin(alpha: f64) -> f64 {
    0.5 * (quad::ln_gamma(0.5 * (alpha - 1.0)) - quad::ln_gamma(0.5 * alpha)).exp() / PI.sqrt()
}

/// Closed-form `α = 2` samples, built symmetric by construction: the negative
/// half `x ≤ 0` is computed and mirrored, so `G_j = G_{n-j}` and
/// `K_j = -K_{n-j}` hold bit-exactly.  `K_0 = 0` (the `x = -L` node is its
/// own mirror) and `K_{n/2} = K(0) = 0` by oddness.
fn closed_form_alpha2(half_width: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let dx = 2.0 * half_width / n as f64;
    let mut g = vec![0.0; n];
    let mut k = vec![0.0; n];
    for j in 0..=n / 2 {
        let x = -half_width + j as f64 * dx; // x ≤ 0 on this range
        let e = 0.5 * x.exp();
        g[j] = e;
        if j > 0 && j < n / 2 {
            k[j] = e; // -½ sgn(x) e^{-|x|} = +½ e^{x} for x < 0
        }
    }
    for j in 1..n / 2 {
        g[n - j] = g[j];
        k[n - j] = -k[j];
    }
    (g, k)
}

/// Spectral Bessel samples: `G_j = Σ_k (-1)^k Ĝ(ξ_k)/(2L) · e^{2πi jk/n}`
/// with `ξ_k = m_k/(2L)` and `m_k` the signed mode number (the `(-1)^k`
/// phase shifts the origin to the node `j = n/2`).  `K` multiplies the
/// symbol by `2πiξ`, with the Nyquist mode zeroed — it has no odd partner,
/// and dropping it is what makes the inverse transform of an odd imaginary
/// symbol exactly real.  A final exact symmetrization removes the remaining
/// one-ulp asymmetries of the FFT arithmetic.
fn spectral_bessel(alpha: f64, half_width: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let two_l = 2.0 * half_width;
    let mut bg: Vec<Complex<f64>> = Vec::with_capacity(n);
    let mut bk: Vec<Complex<f64>> = Vec::with_capacity(n);
    for j in 0..n {
        let m = if j <= n / 2 {
            j as f64
        } else {
            j as f64 - n as f64
        };
        let xi = m / two_l;
        let ghat = (1.0 + (2.0 * PI * xi).powi(2)).powf(-0.5 * alpha);
        let phase = if j % 2 == 0 { 1.0 } else { -1.0 };
        bg.push(Complex::new(phase * ghat / two_l, 0.0));
        let khat = if j == n / 2 {
            0.0
        } else {
            2.0 * PI * xi * ghat
        };
        bk.push(Complex::new(0.0, phase * khat / two_l));
    }
    fft::inverse(&mut bg);
    fft::inverse(&mut bk);
    let mut g: Vec<f64> = bg.iter().map(|c| c.re).collect();
    let mut k: Vec<f64> = bk.iter().map(|c| c.re).collect();
    for j in 1..n / 2 {
        let e = 0.5 * (g[j] + g[n - j]);
        g[j] = e;
        g[n - j] = e;
        let o = 0.5 * (k[j] - k[n - j]);
        k[j] = o;
        k[n - j] = -o;
    }
    k[0] = 0.0;
    k[n / 2] = 0.0;
    (g, k)
}

fn validate_grid(half_width: f64, n: usize) -> Result<()> {
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "grid half-width must be positive and finite, got {half_width}"
        )));
    }
    if n < 8 || n % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "grid cell count must be even and at least 8, got {n}"
        )));
    }
    Ok(())
}

impl SampledKernel {
    /// The zero kernel (used to switch the nonlocal term off entirely).
    pub fn zeros(half_width: f64, n: usize) -> Result<Self> {
        Self::from_samples(vec![0.0; n], half_width)
    }

    /// Wrap an externally supplied sample table.
    ///
    /// Odd symmetry is detected within [`ODD_DETECTION_TOL`] (relative to the
    /// largest sample).  `kappa` is set to the rectangle-rule `Δx·Σ|K_j|` —
    /// for external data no better estimate of the line integral exists.
    pub fn from_samples(values: Vec<f64>, half_width: f64) -> Result<Self> {
        validate_grid(half_width, values.len())?;
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "kernel samples must be finite, got {bad}"
            )));
        }
        let n = values.len();
        let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
        let tol = ODD_DETECTION_TOL * scale;
        let odd = values[0].abs() <= tol
            && values[n / 2].abs() <= tol
            && (1..n / 2).all(|j| (values[j] + values[n - j]).abs() <= tol);
        let dx = 2.0 * half_width / n as f64;
        let kappa = dx * values.iter().map(|v| v.abs()).sum::<f64>();
        Ok(SampledKernel {
            values,
            half_width,
            kappa,
            odd,
            alpha: None,
        })
    }

    /// Read a kernel from a CSV table written by [`SampledKernel::write_csv`]
    /// (or any uniform two-column `x,value` table on `[-L, L)`).
    pub fn from_csv(path: &Path) -> Result<Self> {
        let table = io::read_xy_csv(path)?;
        let n = table.xs.len();
        validate_grid(1.0, n)?; // length checks only; L is derived below
        let x0 = table.xs[0];
        let dx = (table.xs[n - 1] - x0) / (n - 1) as f64;
        if !(dx > 0.0) {
            return Err(Error::InvalidParameter(
                "kernel table abscissae must be strictly increasing".to_string(),
            ));
        }
        let half_width = 0.5 * dx * n as f64;
        let tol = 1e-9 * half_width.max(1.0);
        if (x0 + half_width).abs() > tol {
            return Err(Error::InvalidParameter(format!(
                "kernel table must start at -L = -n·Δx/2, got x₀ = {x0} with Δx = {dx}"
            )));
        }
        for (j, &x) in table.xs.iter().enumerate() {
            let expect = x0 + j as f64 * dx;
            if (x - expect).abs() > tol {
                return Err(Error::InvalidParameter(format!(
                    "kernel table abscissae must be uniform: row {} has {x}, expected {expect}",
                    j + 1
                )));
            }
        }
        let alpha = table.meta("alpha").and_then(|a| a.parse::<f64>().ok());
        let mut kernel = Self::from_samples(table.values, half_width)?;
        kernel.alpha = alpha;
        Ok(kernel)
    }

    /// Kernel samples at the nodes `x_j = -L + jΔx`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Cell count `n`.
    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Domain half-width `L`.
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Grid spacing `Δx = 2L/n`.
    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.values.len() as f64
    }

    /// Node coordinate `x_j = -L + jΔx`.
    pub fn node(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.dx()
    }

    /// `‖·‖_{L¹(ℝ)}` of the underlying kernel: exact for Bessel constructions
    /// (`1` for `G_α`, `2G_α(0)` for `K_α`), rectangle-rule for custom
    /// tables.  Agrees with [`Self::l1_norm`] up to the declared `O(Δx)`
    /// rectangle error plus the (tail-small) periodization.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Whether the samples are odd (`K_j = -K_{n-j}`).
    pub fn is_odd(&self) -> bool {
        self.odd
    }

    /// Bessel order `α` when this kernel came from a Bessel construction.
    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    /// Rectangle-rule `Δx·Σ_j |K_j|` on the kernel grid — the quadrature used
    /// throughout the evolution, kept separate from the analytic [`Self::kappa`]
    /// so discrete statements (which see this value) and analytic statements
    /// can each cite the right constant.
    pub fn l1_norm(&self) -> f64 {
        self.dx() * self.values.iter().map(|v| v.abs()).sum::<f64>()
    }

    /// Sampled fractional variation `κ_s = max_h ‖K(·+h) − K‖₁ / h^s`.
    ///
    /// Shifts are realized as integer grid translations (each requested `h`
    /// rounds to `m = round(h/Δx)` cells; the realized `h = mΔx` is the one
    /// used in the quotient and reported as the argmax).  Admissible shifts
    /// span `[Δx, 2L]`; note `‖K(·+h)−K‖₁` on the torus is symmetric under
    /// `h ↦ 2L−h` while `h^{-s}` is decreasing, so shifts beyond `L` never
    /// win — [`Self::default_shifts`] therefore samples `[Δx, L]`.
    ///
    /// At `s = 0` the value is `2‖K‖₁` exactly whenever some shift fully
    /// opposes the kernel's sign pattern against itself (true for kernels
    /// with a single sign change, e.g. `K₂` at `h = L`); spectral samples of
    /// rough kernels carry tail ringing that keeps the sampled maximum a hair
    /// below that identity.
    pub fn fractional_variation(&self, s: f64, shifts: &[f64]) -> Result<FracVar> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidParameter(format!(
                "fractional-variation exponent must lie in [0, 1], got {s}"
            )));
        }
        if shifts.is_empty() {
            return Err(Error::InvalidParameter(
                "fractional variation needs at least one shift".to_string(),
            ));
        }
        let n = self.values.len();
        let dx = self.dx();
        let mut best = f64::NEG_INFINITY;
        let mut argmax = 0.0;
        for &h in shifts {
            if !h.is_finite() {
                return Err(Error::InvalidParameter(format!("shift must be finite, got {h}")));
            }
            let m = (h / dx).round() as i64;
            if m < 1 || m > n as i64 {
                return Err(Error::InvalidParameter(format!(
                    "shift {h} rounds to {m} cells, outside the admissible [Δx, 2L] = [{dx}, {}]",
                    2.0 * self.half_width
                )));
            }
            let realized = m as f64 * dx;
            let m = m as usize % n; // m = n is the full period: difference 0
            let diff: f64 = (0..n)
                .map(|j| (self.values[(j + m) % n] - self.values[j]).abs())
                .sum();
            let value = dx * diff / realized.powf(s);
            if value > best {
                best = value;
                argmax = realized;
            }
        }
        Ok(FracVar {
            value: best,
            argmax_shift: argmax,
        })
    }

    /// The default shift sample: [`DEFAULT_SHIFT_COUNT`] log-spaced integer
    /// multiples of `Δx` spanning `[Δx, L]` (both endpoints included,
    /// duplicates removed).
    pub fn default_shifts(&self) -> Vec<f64> {
        let dx = self.dx();
        let top = (self.values.len() / 2) as f64;
        let mut cells: Vec<usize> = (0..DEFAULT_SHIFT_COUNT)
            .map(|i| {
                let t = i as f64 / (DEFAULT_SHIFT_COUNT - 1) as f64;
                (top.powf(t).round() as usize).clamp(1, top as usize)
            })
            .collect();
        cells.dedup();
        cells.into_iter().map(|m| m as f64 * dx).collect()
    }

    /// Slobodeckij seminorm `[K]_{s,1} = ∬ |K(x+y)−K(x)| / |y|^{1+s} dx dy`,
    /// `s ∈ (0, 1)`, by rectangle-rule double sum over the torus with the
    /// declared cutoff `|y| ≥ Δx` (`y = ±mΔx`, `m = 1..n/2`; `y = ±L`
    /// coincide on the torus and are counted once).  Cost is `O(n²/2)`.
    ///
    /// For kernels with a jump the cutoff region contributes `O(Δx^{1-s})`,
    /// so convergence under refinement is genuinely slow near `s = 1`; the
    /// tests document the observed rates.
    pub fn slobodeckij_seminorm(&self, s: f64) -> Result<f64> {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "slobodeckij exponent must lie strictly inside (0, 1) — the seminorm degenerates \
                 at the endpoints — got {s}"
            )));
        }
        let n = self.values.len();
        let dx = self.dx();
        let mut total = 0.0;
        for m in 1..=n / 2 {
            let mut sum = 0.0;
            for j in 0..n {
                sum += (self.values[(j + m) % n] - self.values[j]).abs();
            }
            let y = m as f64 * dx;
            let weight = if m == n / 2 { 1.0 } else { 2.0 };
            total += weight * (dx * sum) * dx / y.powf(1.0 + s);
        }
        Ok(total)
    }

    /// Render the kernel as a CSV table: `# L=<..> n=<..> alpha=<..>` header,
    /// then `x,value` rows with 17 significant digits.
    pub fn to_csv_string(&self) -> String {
        let n = self.values.len();
        let alpha = match self.alpha {
            Some(a) => io::fmt_f64(a),
            None => "none".to_string(),
        };
        let mut out = String::with_capacity(32 * (n + 2));
        out.push_str(&format!(
            "# L={} n={} alpha={}\n",
            io::fmt_f64(self.half_width),
            n,
            alpha
        ));
        out.push_str("x,value\n");
        for j in 0..n {
            out.push_str(&io::fmt_f64(self.node(j)));
            out.push(',');
            out.push_str(&io::fmt_f64(self.values[j]));
            out.push('\n');
        }
        out
    }

    /// Write the CSV rendering of [`Self::to_csv_string`] atomically.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        io::atomic_write(path, &self.to_csv_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // -----------------------------------------------------------------
    // Closed forms and kernel facts (α = 2)
    // -----------------------------------------------------------------

    /// Closed-form sampling involves one `exp` per node: float rounding only.
    const CLOSED_FORM_TOL: f64 = 1e-14;

    #[test]
    fn alpha2_closed_form_nodes() {
        let (g, k) = make_bessel(2.0, 1.0, 32.0, 4096).expect("construction");
        // x = 1.0 lands exactly on node j = (1 + L)/Δx = 33·64.
        let j = 33 * 64;
        assert_eq!(k.node(j), 1.0, "x = 1 must be a grid node");
        assert!(
            (k.values()[j] - (-0.5 * (-1.0f64).exp())).abs() < CLOSED_FORM_TOL,
            "K₂(1) must be -½e⁻¹ ≈ -0.18394, got {}",
            k.values()[j]
        );
        assert_eq!(k.values()[4096 / 2], 0.0, "K₂(0) must vanish by oddness");
        assert!(
            (g.values()[4096 / 2] - 0.5).abs() < CLOSED_FORM_TOL,
            "G₂(0) must be ½"
        );
        assert_eq!(g.kappa(), 1.0, "‖G₂‖₁ = 1 exactly");
        assert_eq!(k.kappa(), 1.0, "‖K₂‖₁ = 2G₂(0) = 1 exactly");
        assert!(!g.is_odd() && k.is_odd(), "parity flags must match construction");
        assert_eq!(g.alpha(), Some(2.0));
    }

    #[test]
    fn alpha2_unit_mass_on_coarse_grid() {
        // ‖G‖₁ = 1 ± 1e-8 on (L = 40, n = 4096): the analytic kappa meets it
        // exactly; the rectangle rule on this coarse grid only reaches ~3e-5
        // (its bias at the |x| kink scales like Δx²·G''' away from 0 plus the
        // kink term), which is why the two quantities are kept separate.
        let (g, _k) = make_bessel(2.0, 1.0, 40.0, 4096).expect("construction");
        assert!((g.kappa() - 1.0).abs() <= 1e-8, "kappa must report unit mass");
        assert!(
            (g.l1_norm() - 1.0).abs() <= 1e-4,
            "rectangle mass should be close on the coarse grid, got {}",
            g.l1_norm()
        );
    }

    #[test]
    fn l1_norm_of_k2_matches_closed_integral() {
        // 2·∫₀^∞ ½e^{-x} dx = 1.  The rectangle rule's dominant error is the
        // missing half-cell at the V-notch K(0) = 0, about -Δx/2, so Δx must
        // be ≲ 2e-6: L = 28 (smallest admissible under the tail bound) with
        // n = 2²⁵ gives Δx ≈ 1.7e-6 and a measured defect of -8.3e-7.
        let n = 1 << 25;
        let half_width = 28.0;
        let dx = 2.0 * half_width / n as f64;
        let mut values = vec![0.0; n];
        for j in 1..n / 2 {
            let x = -half_width + j as f64 * dx;
            values[j] = 0.5 * x.exp(); // K₂ = +½eˣ for x < 0
            values[n - j] = -values[j];
        }
        let k2 = SampledKernel::from_samples(values, half_width).expect("construction");
        assert!(
            (k2.l1_norm() - 1.0).abs() <= 1e-6,
            "rectangle ‖K₂‖₁ must reproduce the closed integral, got {}",
            k2.l1_norm()
        );
    }

    #[test]
    fn sign_flip_negates_samples_but_not_kappa() {
        let (g, k) = make_bessel(2.0, -1.0, 32.0, 4096).expect("construction");
        let j = 33 * 64; // x = 1.0
        assert!(
            (k.values()[j] - 0.5 * (-1.0f64).exp()).abs() < CLOSED_FORM_TOL,
            "sign = -1 must flip K₂(1) to +½e⁻¹"
        );
        assert!(g.values()[4096 / 2] < 0.0, "sign = -1 must flip G too");
        assert_eq!(k.kappa(), 1.0, "kappa is a norm; sign must not change it");
    }

    // -----------------------------------------------------------------
    // Spectral construction vs closed forms and the Fourier oracle
    // -----------------------------------------------------------------

    /// `G_α(x)` for α = 1.5 at 20 points, from 30-digit adaptive quadrature
    /// of the subordination integral (cross-checked against oscillatory
    /// quadrature of the Fourier integral itself to ~1e-31 relative).
    const G15_ORACLE: [(f64, f64); 20] = [
        (0.5, 0.31263714930957257002),
        (0.75, 0.22632614038934520857),
        (1.0, 0.16676263377332455481),
        (1.25, 0.12417978192346986522),
        (1.5, 0.093128482642936268063),
        (1.75, 0.070199470779075832241),
        (2.0, 0.053120886821885392057),
        (2.25, 0.040319485003633899526),
        (2.5, 0.030678038731336796879),
        (2.75, 0.023389243971373730816),
        (3.0, 0.017862388316789473852),
        (3.25, 0.013661181220417576906),
        (3.5, 0.010461064757070296707),
        (3.75, 0.0080192334632580146624),
        (4.0, 0.0061532180776583162224),
        (4.25, 0.004725384899383423975),
        (4.5, 0.0036316008393492842268),
        (4.75, 0.0027928765706294965423),
        (5.0, 0.0021491644854168280145),
        (5.25, 0.0016547308969537541931),
    ];

    /// Sup-norm budget for spectral G against the Fourier oracle.  The
    /// measured error on (L = 32, n = 2¹⁶) is 3.3e-9; 1e-6 is the documented
    /// guarantee for this example.
    const SPECTRAL_ORACLE_TOL: f64 = 1e-6;

    #[test]
    fn alpha15_spectral_matches_fourier_oracle() {
        let (g, _k) = make_bessel(1.5, -1.0, 32.0, 1 << 16).expect("construction");
        let dx = g.dx();
        let mut sup = 0.0f64;
        for &(x, want) in &G15_ORACLE {
            let j = ((x + 32.0) / dx).round() as usize;
            assert!((g.node(j) - x).abs() < 1e-12, "oracle points must be grid nodes");
            // sign = -1 flips the samples; compare against -G.
            sup = sup.max((g.values()[j] + want).abs());
        }
        assert!(
            sup <= SPECTRAL_ORACLE_TOL,
            "spectral G must match the Fourier-integral oracle, sup err {sup:e}"
        );
    }

    #[test]
    fn pointwise_quadrature_matches_fourier_oracle() {
        // bessel_g_value feeds the tail precondition; hold it to far better
        // than the spectral budget (its Simpson tolerance is ~1e-13).
        for &(x, want) in &G15_ORACLE {
            let got = bessel_g_value(1.5, x);
            assert!(
                (got - want).abs() <= 1e-10,
                "subordination quadrature drifted at x = {x}: {got} vs {want}"
            );
        }
        // α = 2 sanity: quadrature path not taken (closed form), but the
        // origin formula must agree with G₂(0) = ½.
        assert!((bessel_g_origin(2.0) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn spectral_alpha2_matches_closed_form_away_from_jump() {
        // The spectral path is cross-checked against the closed forms.  K₂
        // has a jump at the origin, so its band-limited interpolant carries a
        // Gibbs overshoot there; the comparison windows exclude |x| < 0.25.
        // Measured sup errors on (L = 32, n = 2¹⁶): G 3.1e-10, K 4.0e-4.
        let n = 1 << 16;
        let half_width = 32.0;
        let (gs, ks) = spectral_bessel(2.0, half_width, n);
        let (gc, kc) = closed_form_alpha2(half_width, n);
        let dx = 2.0 * half_width / n as f64;
        let mut sup_g = 0.0f64;
        let mut sup_k = 0.0f64;
        for j in 0..n {
            let x = -half_width + j as f64 * dx;
            if x.abs() < 0.25 {
                continue;
            }
            sup_g = sup_g.max((gs[j] - gc[j]).abs());
            sup_k = sup_k.max((ks[j] - kc[j]).abs());
        }
        assert!(sup_g <= 1e-8, "spectral G₂ must match ½e^(-|x|), sup err {sup_g:e}");
        assert!(sup_k <= 2e-3, "spectral K₂ must match closed form, sup err {sup_k:e}");
    }

    #[test]
    fn alpha15_mass_and_kappa() {
        let (g, k) = make_bessel(1.5, 1.0, 32.0, 1 << 14).expect("construction");
        // Δx·Σ G_j is the k = 0 DFT coefficient, i.e. Ĝ(0) = 1 — an identity
        // of the construction, exact to rounding.
        let signed: f64 = g.dx() * g.values().iter().sum::<f64>();
        assert!(
            (signed - 1.0).abs() <= 1e-12,
            "signed mass is exactly the zero mode, got {signed}"
        );
        // |·| only adds the (tiny) negative ringing of the tails.
        let l1 = g.l1_norm();
        assert!(
            (0.0..=1e-6).contains(&(l1 - 1.0)),
            "rectangle mass may exceed 1 only by the ringing, got {l1}"
        );
        // ‖K_α‖₁ = 2G_α(0) = Γ((α-1)/2)/(Γ(α/2)√π); for α = 3/2 that is
        // Γ(¼)/(Γ(¾)√π) = 1.6692536833481464 (30-digit arithmetic).
        assert!(
            (k.kappa() - 1.6692536833481464).abs() <= 1e-12,
            "closed-form kappa for K_1.5, got {}",
            k.kappa()
        );
    }

    #[test]
    fn tail_truncation_is_rejected_with_measured_mass() {
        // G₂(26) = ½e⁻²⁶ ≈ 2.6e-12 ≥ 1e-12: too small a box.
        match make_bessel(2.0, 1.0, 26.0, 4096) {
            Err(Error::TailTruncation {
                half_width,
                tail_value,
                tail_mass,
            }) => {
                assert_eq!(half_width, 26.0);
                assert!(
                    (tail_value - 0.5 * (-26.0f64).exp()).abs() < 1e-15,
                    "reported tail must be the measured G(L), got {tail_value:e}"
                );
                assert_eq!(tail_mass, 2.0 * tail_value);
            }
            other => panic!("expected TailTruncation, got {other:?}"),
        }
        // G₂(28) = ½e⁻²⁸ ≈ 3.5e-13 < 1e-12: admissible.
        assert!(make_bessel(2.0, 1.0, 28.0, 4096).is_ok());
        // α = 1.5 decays like e^{-x}/√x with a larger prefactor: L = 20 is
        // still far too small, L = 32 passes.
        assert!(matches!(
            make_bessel(1.5, 1.0, 20.0, 4096),
            Err(Error::TailTruncation { .. })
        ));
        assert!(make_bessel(1.5, 1.0, 32.0, 4096).is_ok());
    }

    // -----------------------------------------------------------------
    // Oddness and invalid inputs
    // -----------------------------------------------------------------

    #[test]
    fn odd_kernels_are_exactly_antisymmetric_and_sum_to_zero() {
        for &alpha in &[1.5, 2.0] {
            let (_g, k) = make_bessel(alpha, 1.0, 32.0, 4096).expect("construction");
            let v = k.values();
            let n = v.len();
            for j in 1..n / 2 {
                assert_eq!(v[j], -v[n - j], "antisymmetry must be bit-exact (α = {alpha})");
            }
            assert_eq!(v[0], 0.0);
            assert_eq!(v[n / 2], 0.0);
            let sum: f64 = k.dx() * v.iter().sum::<f64>();
            assert!(
                sum.abs() <= 1e-12,
                "odd kernel must integrate to zero, got {sum:e} (α = {alpha})"
            );
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let bad = |r: Result<(SampledKernel, SampledKernel)>| {
            assert!(matches!(r, Err(Error::InvalidParameter(_))), "expected rejection");
        };
        bad(make_bessel(1.0, 1.0, 32.0, 4096)); // K not integrable
        bad(make_bessel(0.5, 1.0, 32.0, 4096));
        bad(make_bessel(2.0, 0.5, 32.0, 4096)); // sign must be ±1
        bad(make_bessel(2.0, 1.0, -1.0, 4096));
        bad(make_bessel(2.0, 1.0, 32.0, 4097)); // odd n
        bad(make_bessel(2.0, 1.0, 32.0, 4)); // too few cells

        let (_g, k) = make_bessel(2.0, 1.0, 32.0, 256).expect("construction");
        assert!(matches!(k.fractional_variation(-0.1, &[1.0]), Err(Error::InvalidParameter(_))));
        assert!(matches!(k.fractional_variation(1.5, &[1.0]), Err(Error::InvalidParameter(_))));
        assert!(matches!(k.fractional_variation(0.5, &[]), Err(Error::InvalidParameter(_))));
        let dx = k.dx();
        assert!(
            matches!(k.fractional_variation(0.5, &[0.1 * dx]), Err(Error::InvalidParameter(_))),
            "shifts below Δx have no grid realization"
        );
        assert!(
            matches!(k.fractional_variation(0.5, &[100.0]), Err(Error::InvalidParameter(_))),
            "shifts beyond 2L leave the admissible range"
        );
        assert!(matches!(k.slobodeckij_seminorm(0.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(k.slobodeckij_seminorm(1.0), Err(Error::InvalidParameter(_))));
        assert!(SampledKernel::from_samples(vec![0.0; 9], 1.0).is_err(), "odd length");
    }

    // -----------------------------------------------------------------
    // Fractional variation
    // -----------------------------------------------------------------

    #[test]
    fn fracvar_at_s1_recovers_total_variation_of_k2() {
        // |K₂|_TV = 2 (unit jump at the origin plus two exponential flanks).
        // The sampled sup is attained as h → Δx; on (L = 32, n = 2¹⁸) the
        // measured defect is 4.9e-4, within the documented ±1e-3.
        let n = 1 << 18;
        let half_width = 32.0;
        let dx = 2.0 * half_width / n as f64;
        let mut values = vec![0.0; n];
        for j in 1..n / 2 {
            let x = -half_width + j as f64 * dx;
            values[j] = 0.5 * x.exp();
            values[n - j] = -values[j];
        }
        let k2 = SampledKernel::from_samples(values, half_width).expect("construction");
        let fv = k2
            .fractional_variation(1.0, &k2.default_shifts())
            .expect("seminorm");
        assert!(
            (fv.value - 2.0).abs() <= 1e-3,
            "|K₂|_TV¹ must be 2, got {}",
            fv.value
        );
        assert_eq!(fv.argmax_shift, dx, "TV is approached as the shift shrinks to Δx");
    }

    #[test]
    fn fracvar_at_s0_is_twice_the_l1_norm() {
        // For a kernel with a single sign change, the shift h = L opposes the
        // two halves exactly, so the identity is exact up to rounding
        // (measured 2e-16 relative).  An even kernel only reaches it up to
        // its overlap tail ~2e^{-L/2}: at L = 32 that is 2.3e-7, inside the
        // documented ±1e-6 but excluded from the tight bound below.
        let (g, k) = make_bessel(2.0, 1.0, 32.0, 4096).expect("construction");
        let fv = k.fractional_variation(0.0, &k.default_shifts()).expect("seminorm");
        assert!(
            (fv.value - 2.0 * k.l1_norm()).abs() <= 1e-10,
            "s = 0 identity failed for K₂: {} vs {}",
            fv.value,
            2.0 * k.l1_norm()
        );
        let fv_g = g.fractional_variation(0.0, &g.default_shifts()).expect("seminorm");
        assert!(
            (fv_g.value - 2.0 * g.l1_norm()).abs() <= 1e-6,
            "s = 0 identity failed for G₂: {} vs {}",
            fv_g.value,
            2.0 * g.l1_norm()
        );
        let zero = SampledKernel::zeros(8.0, 64).expect("construction");
        let fv_zero = zero.fractional_variation(0.0, &zero.default_shifts()).expect("seminorm");
        assert_eq!(fv_zero.value, 0.0, "zero kernel has zero variation");
    }

    #[test]
    fn fracvar_scaling_law() {
        // κ_s(K(λ·)) = |λ|^{s-1}·κ_s(K): compare K₂ and K₂(2x), both sampled
        // on (L = 32, n = 2¹⁴), at s = ½.  Expect ratio 2^{-1/2} within 1%
        // (measured 0.23%: the two sampled suprema sit at slightly different
        // quadrature offsets).
        let n = 1 << 14;
        let half_width = 32.0;
        let dx = 2.0 * half_width / n as f64;
        let mut base = vec![0.0; n];
        let mut squeezed = vec![0.0; n];
        for j in 1..n / 2 {
            let x = -half_width + j as f64 * dx;
            base[j] = 0.5 * x.exp();
            base[n - j] = -base[j];
            squeezed[j] = 0.5 * (2.0 * x).exp();
            squeezed[n - j] = -squeezed[j];
        }
        let k = SampledKernel::from_samples(base, half_width).expect("construction");
        let k2x = SampledKernel::from_samples(squeezed, half_width).expect("construction");
        let s = 0.5;
        let v = k.fractional_variation(s, &k.default_shifts()).expect("seminorm").value;
        let v2 = k2x.fractional_variation(s, &k2x.default_shifts()).expect("seminorm").value;
        let ratio = v2 / v;
        let want = 2.0f64.powf(s - 1.0);
        assert!(
            (ratio / want - 1.0).abs() <= 0.01,
            "scaling law violated: ratio {ratio} vs λ^(s-1) = {want}"
        );
    }

    #[test]
    fn fracvar_converges_from_below_under_refinement() {
        // For s ≤ α−1 the sampled κ_s approaches its resolution limit from
        // below: no coarse value may exceed the finest one beyond the ~1%
        // wobble of re-sampling the 64 shifts on a new grid.  At the
        // borderline s = α−1 the true supremum lives at h → 0, so the
        // Δx-floored default sample keeps growing under refinement — there
        // the increase is strict (measured ~ +0.5 per doubling at α = 1.5, a
        // logarithmic divergence).
        for &(s, strict) in &[(0.3, false), (0.5, true)] {
            let values: Vec<f64> = [13u32, 14, 15, 16]
                .iter()
                .map(|&p| {
                    let (_g, k) = make_bessel(1.5, 1.0, 32.0, 1 << p).expect("construction");
                    k.fractional_variation(s, &k.default_shifts())
                        .expect("seminorm")
                        .value
                })
                .collect();
            let finest = *values.last().expect("nonempty");
            assert!(finest.is_finite(), "κ_s must be finite for s ≤ α−1");
            for &v in &values {
                assert!(
                    v <= finest * 1.02,
                    "coarse κ_s must not overshoot the limit (s = {s}): {values:?}"
                );
            }
            if strict {
                assert!(
                    values.windows(2).all(|w| w[1] > w[0]),
                    "borderline s = α−1 must grow strictly under refinement: {values:?}"
                );
            }
        }
    }

    #[test]
    fn fracvar_stable_under_refinement_with_fixed_shifts() {
        // With a fixed physical shift sample (floor 0.05, well above the
        // final Δx) the sampled κ_s for K_1.5 at s = ½ settles: measured
        // 0.26% between n = 2¹⁵ and 2¹⁶ at L = 32.  The Δx-floored default
        // sample instead chases the h → 0 divergence at this borderline s —
        // that growth is asserted in the convergence test above.
        let shifts: Vec<f64> = (0..DEFAULT_SHIFT_COUNT)
            .map(|i| {
                let t = i as f64 / (DEFAULT_SHIFT_COUNT - 1) as f64;
                0.05 * (32.0f64 / 0.05).powf(t)
            })
            .collect();
        let value_at = |p: u32| {
            let (_g, k) = make_bessel(1.5, 1.0, 32.0, 1 << p).expect("construction");
            k.fractional_variation(0.5, &shifts).expect("seminorm").value
        };
        let coarse = value_at(15);
        let fine = value_at(16);
        assert!(
            ((fine - coarse) / fine).abs() <= 0.01,
            "fixed-shift κ_s must be refinement-stable to 1%: {coarse} vs {fine}"
        );
    }

    // -----------------------------------------------------------------
    // L¹ refinement ladder (α = 1.5)
    // -----------------------------------------------------------------

    #[test]
    fn l1_alpha15_refinement_ladder_converges_at_half_order() {
        // K_1.5 has an |x|^{-1/2} singularity at the origin, so the rectangle
        // rule converges at order Δx^{1/2} only: quadrupling n halves the
        // error.  Matching a refined grid to 1e-6 would need Δx ~ 1e-12
        // (n ~ 10¹³) — what CAN be asserted is the half-order ladder and the
        // distance to the closed-form mass 2G_α(0).
        let mut l1s = Vec::new();
        for p in [13u32, 15, 17] {
            let (_g, k) = make_bessel(1.5, 1.0, 32.0, 1 << p).expect("construction");
            l1s.push((k.l1_norm(), k.kappa()));
        }
        let kappa = l1s[0].1;
        let deltas: Vec<f64> = l1s.windows(2).map(|w| (w[1].0 - w[0].0).abs()).collect();
        assert!(
            deltas[1] < deltas[0],
            "quadrupling the grid must shrink the ladder step: {deltas:?}"
        );
        let errs: Vec<f64> = l1s.iter().map(|(l1, _)| (l1 - kappa).abs()).collect();
        assert!(
            errs.windows(2).all(|w| w[1] < w[0]),
            "rectangle mass must approach the closed-form kappa: {errs:?}"
        );
        assert!(
            errs[2] <= 2.5e-2,
            "measured gap at n = 2¹⁷ is 1.23e-2, got {}",
            errs[2]
        );
    }

    // -----------------------------------------------------------------
    // Slobodeckij seminorm
    // -----------------------------------------------------------------

    #[test]
    fn slobodeckij_dominates_fracvar_for_smooth_bump() {
        // |K|_{TV^s} ≤ C_s·[K]_{s,1} with C_s = 2 / ∫ max{|y|, |1-y|}^{-1-s} dy
        // = s·2^{-s}.  Cross-check the max-kernel integral numerically, then
        // verify the inequality on a smooth compactly supported bump
        // (measured ratio 0.35 — a comfortable margin).
        let s = 0.5f64;
        let closed = 2.0f64.powf(1.0 + s) / s;
        let body = quad::adaptive_simpson(
            &|y: f64| y.abs().max((1.0 - y).abs()).powf(-1.0 - s),
            -20.0,
            21.0,
            1e-12,
            40,
        );
        // Tails: for y ≥ 21 the max is y; for y ≤ -20 it is 1 - y.  Both
        // reduce to ∫₂₁^∞ w^{-1-s} dw = 21^{-s}/s.
        let tails = 2.0 * 21.0f64.powf(-s) / s;
        assert!(
            (body + tails - closed).abs() <= 1e-6,
            "max-kernel integral: numeric {} vs closed {closed}",
            body + tails
        );

        let n = 4096;
        let half_width = 32.0;
        let dx = 2.0 * half_width / n as f64;
        let bump: Vec<f64> = (0..n)
            .map(|j| {
                let x: f64 = -half_width + j as f64 * dx;
                if x.abs() <= 1.0 {
                    (0.5 * PI * x).cos().powi(2)
                } else {
                    0.0
                }
            })
            .collect();
        let k = SampledKernel::from_samples(bump, half_width).expect("construction");
        let c_s = 2.0 / closed; // = s·2^{-s}
        let fv = k.fractional_variation(s, &k.default_shifts()).expect("seminorm").value;
        let slob = k.slobodeckij_seminorm(s).expect("seminorm");
        assert!(
            fv <= c_s * slob,
            "comparison lemma violated: κ_s = {fv} vs C_s·[K]_s,1 = {}",
            c_s * slob
        );
    }

    #[test]
    fn slobodeckij_of_zero_kernel_is_zero() {
        let zero = SampledKernel::zeros(8.0, 64).expect("construction");
        assert_eq!(zero.slobodeckij_seminorm(0.5).expect("seminorm"), 0.0);
    }

    #[test]
    fn slobodeckij_k2_s09_refinement_is_slow_but_converging() {
        // K₂ jumps at the origin, so the |y| < Δx cutoff leaves out a term
        // of order ∫_0^Δx 2y·y^{-1.9} dy ~ Δx^{0.1}: each halving of Δx
        // shrinks the remaining defect by only 1 - 2^{-0.1} ≈ 6.7%.  Measured
        // ladder (L = 32): 13.12, 15.19, 17.07, 18.80 with successive
        // relative steps 13.6%, 11.0%, 9.2% — decreasing, with the last step
        // pinned inside (6%, 11%).
        let mut vals = Vec::new();
        for n in [1024usize, 2048, 4096, 8192] {
            let half_width = 32.0;
            let dx = 2.0 * half_width / n as f64;
            let mut values = vec![0.0; n];
            for j in 1..n / 2 {
                let x = -half_width + j as f64 * dx;
                values[j] = 0.5 * x.exp();
                values[n - j] = -values[j];
            }
            let k2 = SampledKernel::from_samples(values, half_width).expect("construction");
            vals.push(k2.slobodeckij_seminorm(0.9).expect("seminorm"));
        }
        assert!(
            vals.windows(2).all(|w| w[1] > w[0]),
            "cutoff sums must increase toward the seminorm: {vals:?}"
        );
        let steps: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]) / w[1]).collect();
        assert!(
            steps.windows(2).all(|w| w[1] < w[0]),
            "relative steps must shrink: {steps:?}"
        );
        assert!(
            (0.06..0.11).contains(steps.last().expect("nonempty")),
            "final step must sit at the Δx^(1/10) rate, got {steps:?}"
        );
    }

    // -----------------------------------------------------------------
    // Custom tables, CSV round trip, KernelSpec
    // -----------------------------------------------------------------

    #[test]
    fn from_samples_detects_oddness_and_estimates_kappa() {
        let n = 16;
        let mut odd = vec![0.0; n];
        for j in 1..n / 2 {
            odd[j] = j as f64;
            odd[n - j] = -(j as f64);
        }
        let k = SampledKernel::from_samples(odd, 4.0).expect("construction");
        assert!(k.is_odd());
        assert_eq!(k.kappa(), k.l1_norm(), "custom kappa is the rectangle estimate");
        assert_eq!(k.alpha(), None);

        let mut even = vec![1.0; n];
        even[3] = 2.0;
        even[n - 3] = 2.0;
        let g = SampledKernel::from_samples(even, 4.0).expect("construction");
        assert!(!g.is_odd());
    }

    #[test]
    fn csv_round_trip_preserves_samples_bit_exactly() {
        let dir = tempfile::tempdir().expect("tempdir");
        let path = dir.path().join("kernel.csv");
        let (_g, k) = make_bessel(1.5, 1.0, 32.0, 256).expect("construction");
        k.write_csv(&path).expect("write");
        let back = SampledKernel::from_csv(&path).expect("read");
        assert_eq!(back.values(), k.values(), "17-digit formatting must round-trip");
        assert_eq!(back.n(), k.n());
        assert!((back.half_width() - k.half_width()).abs() < 1e-12);
        assert_eq!(back.alpha(), Some(1.5), "alpha must survive the header");
        assert!(back.is_odd(), "bit-exact antisymmetry must be redetected");
        assert_eq!(
            back.kappa(),
            back.l1_norm(),
            "a re-read kernel is custom data: kappa falls back to the rectangle rule"
        );
    }

    #[test]
    fn kernel_spec_builds_all_kinds() {
        let spec = KernelSpec {
            kind: KernelKind::Exponential { sign: -1.0 },
            half_width: 32.0,
            n: 512,
        };
        let built = spec.build().expect("build");
        let (g2, k2) = make_bessel(2.0, -1.0, 32.0, 512).expect("construction");
        assert_eq!(built.g.expect("bessel path carries G").values(), g2.values());
        assert_eq!(built.k.values(), k2.values());

        let custom = KernelSpec {
            kind: KernelKind::Custom { samples: vec![0.0; 512] },
            half_width: 32.0,
            n: 512,
        };
        let built = custom.build().expect("build");
        assert!(built.g.is_none(), "custom tables have no G");
        assert_eq!(built.k.l1_norm(), 0.0);

        let mismatched = KernelSpec {
            kind: KernelKind::Custom { samples: vec![0.0; 100] },
            half_width: 32.0,
            n: 512,
        };
        assert!(matches!(mismatched.build(), Err(Error::GridMismatch { .. })));
    }
}
