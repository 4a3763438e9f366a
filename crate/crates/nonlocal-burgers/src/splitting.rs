//! The operator-splitting construction: interleave the convective solver
//! with the first-order nonlocal step
//!
//! ```text
//! S_{ε,t} = S^B_s ∘ [S^K_ε ∘ S^B_ε]^{∘n},    t = s + nε,  s ∈ [0, ε),
//! S^K_ε f = f + ε·(K∗f),
//! ```
//!
//! plus the exponential comparison operator `e^{t|K|∗}` and the contraction
//! weight built from it.  `S^K` is deliberately the first-order map, not the
//! exact exponential `e^{εK∗}`: the structural estimates this laboratory
//! verifies are stated for exactly this map, and fidelity to the analyzed
//! scheme beats formal accuracy.  The estimates inherited by the composition
//! (each verified by a test below):
//!
//! | bound | discrete mechanism |
//! |-------|--------------------|
//! | `‖S_{ε,t}f‖₂ ≤ e^{½εtκ²}‖f‖₂` | odd `K` ⟹ `⟨f, K∗f⟩ = 0`, so one round grows `‖·‖₂²` by `≤ 1+ε²κ²` |
//! | `‖S_{ε,t}f‖_p ≤ e^{tκ}‖f‖_p` | Godunov non-expansion × Young factor `(1+εκ)` per round |
//! | `TV(S_{ε,t}f) ≤ e^{tκ}TV(f)` | TVD × Young on differences |
//! | `‖S_{ε,t}f − S_{ε,t̃}f‖₁ ≤ (t−t̃+ε)·C_f(t)` | approximate time continuity, `C_f(t) = e^{2tκ}(2·TV(f)² + κ‖f‖₁)` |
//!
//! with `κ = ‖K‖_{L¹(ℝ)}`.  Halving ε yields a Cauchy sequence whose limit
//! is the entropy solution; [`entropy_solution`] automates the refinement
//! and reports the observed L¹ gaps (first-order splitting: gaps shrink
//! roughly geometrically).
//!
//! Deterministic throughout: trajectories are immutable once returned, and
//! identical inputs reproduce identical bits.

use crate::burgers::{self, BurgersConfig};
use crate::field::{convolve, l1_distance, Boundary, GridFunction, Lp, Side};
use crate::kernel::SampledKernel;
use crate::{io, Error, Result};
use std::path::Path;

/// Parameters of one splitting run.
#[derive(Clone, Debug)]
pub struct SplitConfig {
    /// Splitting step ε > 0.
    pub epsilon: f64,
    /// The interaction kernel `K` (odd for the model equation).
    pub kernel: SampledKernel,
    /// Convective sub-solver parameters.
    pub burgers: BurgersConfig,
    /// Record a snapshot every this many rounds (≥ 1); endpoints are always
    /// recorded.
    pub record_every: usize,
    /// Exponent `s` for the one-sided Hölder measurement stored with each
    /// snapshot.
    pub holder_s: f64,
}

impl SplitConfig {
    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "splitting step must be positive and finite, got {}",
                self.epsilon
            )));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidParameter(
                "snapshot cadence must be at least 1 round".to_string(),
            ));
        }
        if !(0.0..=1.0).contains(&self.holder_s) {
            return Err(Error::InvalidParameter(format!(
                "Hölder exponent parameter must lie in [0, 1], got {}",
                self.holder_s
            )));
        }
        if self.epsilon * self.kernel.kappa() >= 1.0 {
            eprintln!(
                "warning: ε·κ = {} ≥ 1; the first-order kernel step is far from \
                 its exponential and the splitting bounds are very loose",
                self.epsilon * self.kernel.kappa()
            );
        }
        Ok(())
    }
}

/// The per-snapshot measurements the verification layer consumes, computed
/// eagerly at record time so a [`Trajectory`] is self-contained.
#[derive(Clone, Copy, Debug)]
pub struct Measurement {
    pub l2: f64,
    pub linf: f64,
    /// One-sided (right) Hölder value at the trajectory's declared `s`.
    pub holder: f64,
    pub osc_half: f64,
}

impl Measurement {
    fn of(f: &GridFunction, holder_s: f64) -> Result<Measurement> {
        Ok(Measurement {
            l2: f.lp_norm(Lp::Two),
            linf: f.lp_norm(Lp::Inf),
            holder: f.one_sided_holder(holder_s, Side::Right)?,
            osc_half: f.osc_half(),
        })
    }
}

/// An evolved solution: strictly increasing snapshot times, the fields, and
/// their eager measurements (always three parallel vectors of equal length).
#[derive(Clone, Debug)]
pub struct Trajectory {
    holder_s: f64,
    times: Vec<f64>,
    snapshots: Vec<GridFunction>,
    measurements: Vec<Measurement>,
}

impl Trajectory {
    fn new(holder_s: f64) -> Trajectory {
        Trajectory {
            holder_s,
            times: Vec::new(),
            snapshots: Vec::new(),
            measurements: Vec::new(),
        }
    }

    fn record(&mut self, t: f64, f: GridFunction) -> Result<()> {
        if let Some(&last) = self.times.last() {
            if t <= last {
                return Err(Error::InvalidParameter(format!(
                    "snapshot times must be strictly increasing: {t} after {last}"
                )));
            }
        }
        self.measurements.push(Measurement::of(&f, self.holder_s)?);
        self.times.push(t);
        self.snapshots.push(f);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn holder_s(&self) -> f64 {
        self.holder_s
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn snapshots(&self) -> &[GridFunction] {
        &self.snapshots
    }

    pub fn measurements(&self) -> &[Measurement] {
        &self.measurements
    }

    /// The latest snapshot (the run's final state).
    pub fn final_state(&self) -> &GridFunction {
        self.snapshots.last().expect("trajectories are never empty")
    }

    /// Measurement table as CSV: `t,l2,linf,holder_s,osc` with 17
    /// significant digits.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("t,l2,linf,holder_s,osc\n");
        for (t, m) in self.times.iter().zip(&self.measurements) {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                io::fmt_f64(*t),
                io::fmt_f64(m.l2),
                io::fmt_f64(m.linf),
                io::fmt_f64(m.holder),
                io::fmt_f64(m.osc_half)
            ));
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        io::atomic_write(path, &self.to_csv_string())
    }
}

/// The first-order nonlocal step `S^K_ε f = f + ε·(K∗f)`.
pub fn sk_step(f: &GridFunction, eps: f64, kernel: &SampledKernel) -> Result<GridFunction> {
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "kernel-step size must be finite and non-negative, got {eps}"
        )));
    }
    let kf = convolve(kernel, f)?;
    let values: Vec<f64> = f
        .values()
        .iter()
        .zip(kf.values())
        .map(|(u, ku)| u + eps * ku)
        .collect();
    GridFunction::new(values, f.half_width(), f.boundary())
}

/// Split `t = nε + s` with `n = ⌊t/ε⌋`, `s ∈ [0, ε)`, rounding `t/ε` to an
/// integer when it is one up to 1e-9 relative (so `t = kε` runs `k` full
/// rounds rather than `k−1` rounds plus an ε-long tail).
fn rounds_and_tail(t: f64, eps: f64) -> (u64, f64) {
    let ratio = t / eps;
    let nearest = ratio.round();
    if (ratio - nearest).abs() <= 1e-9 * ratio.max(1.0) && nearest >= 0.0 {
        (nearest as u64, 0.0)
    } else {
        let n = ratio.floor() as u64;
        (n, t - n as f64 * eps)
    }
}

fn is_zero_kernel(kernel: &SampledKernel) -> bool {
    kernel.values().iter().all(|&v| v == 0.0)
}

/// Run the split evolution to time `t`, recording snapshots at the
/// configured cadence (plus both endpoints).
///
/// With `K ≡ 0` the splitting degenerates: chaining `n` separate ε-long
/// convective legs would realign CFL substeps at every round boundary and
/// differ from the plain solver in the last bits, so the degenerate case is
/// detected and dispatched to one continuous convective evolution — the
/// result is *identical* to [`burgers::burgers_evolve`], with interior
/// snapshots at the first natural substep boundary past each cadence mark
/// (the actual time is recorded).
pub fn split_evolve(u0: &GridFunction, t: f64, cfg: &SplitConfig) -> Result<Trajectory> {
    cfg.validate()?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "evolution time must be finite and non-negative, got {t}"
        )));
    }
    let mut traj = Trajectory::new(cfg.holder_s);
    traj.record(0.0, u0.clone())?;
    if t == 0.0 {
        return Ok(traj);
    }

    if is_zero_kernel(&cfg.kernel) {
        let cadence = cfg.record_every as f64 * cfg.epsilon;
        let mut next_mark = cadence;
        let mut pending: Option<(f64, GridFunction)> = None;
        let final_state = burgers::burgers_evolve_with(u0, t, &cfg.burgers, |elapsed, state| {
            if elapsed < t && elapsed + 1e-15 >= next_mark {
                pending = Some((elapsed, state.clone()));
                while next_mark <= elapsed + 1e-15 {
                    next_mark += cadence;
                }
            }
            if let Some((mark_t, snap)) = pending.take() {
                // recorded outside the closure would be cleaner, but the
                // closure owns the only view of interior substeps; errors
                // cannot occur here (times strictly increase along the run)
                traj.record(mark_t, snap).expect("substep times increase");
            }
        })?;
        traj.record(t, final_state)?;
        return Ok(traj);
    }

    let eps = cfg.epsilon;
    let (n, tail) = rounds_and_tail(t, eps);
    let mut state = u0.clone();
    for i in 1..=n {
        state = burgers::burgers_evolve(&state, eps, &cfg.burgers)?;
        state = sk_step(&state, eps, &cfg.kernel)?;
        if i == n && tail == 0.0 {
            traj.record(t, state.clone())?;
        } else if i % cfg.record_every as u64 == 0 {
            traj.record(i as f64 * eps, state.clone())?;
        }
    }
    if tail > 0.0 || n == 0 {
        state = burgers::burgers_evolve(&state, t - n as f64 * eps, &cfg.burgers)?;
        traj.record(t, state)?;
    }
    Ok(traj)
}

/// Evaluate `S_{ε,t_k}(u0)` at each requested time exactly (strictly
/// increasing `t_k ≥ 0`).
///
/// Rather than slicing one run at interior points — which would insert
/// artificial round boundaries — the shared full rounds are evolved once and
/// each requested time gets its own `S^B`-tail offshoot, so every snapshot
/// is the operator composition `S^B_{s_k} ∘ [S^K_ε ∘ S^B_ε]^{n_k}` by
/// definition.  (For `K ≡ 0` each time is evolved independently by the plain
/// convective solver, preserving the degenerate-case exactness.)
pub fn split_evolve_at(u0: &GridFunction, times: &[f64], cfg: &SplitConfig) -> Result<Trajectory> {
    cfg.validate()?;
    if times.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one evaluation time is required".to_string(),
        ));
    }
    let mut prev = -1.0;
    for &t in times {
        if !(t >= 0.0) || !t.is_finite() || t <= prev {
            return Err(Error::InvalidParameter(format!(
                "evaluation times must be finite, non-negative, strictly increasing; got {t}"
            )));
        }
        prev = t;
    }
    let mut traj = Trajectory::new(cfg.holder_s);

    if is_zero_kernel(&cfg.kernel) {
        for &t in times {
            let state = burgers::burgers_evolve(u0, t, &cfg.burgers)?;
            traj.record(t, state)?;
        }
        return Ok(traj);
    }

    let eps = cfg.epsilon;
    let split: Vec<(u64, f64)> = times.iter().map(|&t| rounds_and_tail(t, eps)).collect();
    let max_rounds = split.iter().map(|&(n, _)| n).max().unwrap_or(0);
    let mut state = u0.clone();
    let mut idx = 0;
    for round in 0..=max_rounds {
        while idx < times.len() && split[idx].0 == round {
            let tail = split[idx].1;
            let snap = if tail > 0.0 {
                burgers::burgers_evolve(&state, tail, &cfg.burgers)?
            } else {
                state.clone()
            };
            traj.record(times[idx], snap)?;
            idx += 1;
        }
        if round < max_rounds {
            state = burgers::burgers_evolve(&state, eps, &cfg.burgers)?;
            state = sk_step(&state, eps, &cfg.kernel)?;
        }
    }
    Ok(traj)
}

/// The final state of one splitting run — `S_{ε,t}(u0)` with nothing else
/// recorded.
pub fn split_final(u0: &GridFunction, t: f64, cfg: &SplitConfig) -> Result<GridFunction> {
    Ok(split_evolve_at(u0, &[t], cfg)?
        .snapshots()
        .last()
        .expect("one snapshot requested")
        .clone())
}

/// Result of the ε-refinement limit: the finest approximation, the Cauchy
/// gaps `‖u^{ε_i} − u^{ε_{i+1}}‖₁` observed on the way, and the step that
/// met the tolerance.
#[derive(Clone, Debug)]
pub struct EntropyLimit {
    pub solution: GridFunction,
    pub gaps: Vec<f64>,
    pub final_epsilon: f64,
}

/// Maximum number of ε-halvings [`entropy_solution`] attempts.
pub const MAX_HALVINGS: usize = 8;

/// Approximate the entropy solution at time `t` by halving ε until two
/// successive splitting runs differ by less than `tol` in L¹.
///
/// First-order splitting makes the gaps shrink roughly geometrically; if
/// [`MAX_HALVINGS`] halvings do not reach `tol`, the observed gap sequence
/// is reported in the error.
pub fn entropy_solution(
    u0: &GridFunction,
    t: f64,
    cfg: &SplitConfig,
    tol: f64,
) -> Result<EntropyLimit> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "convergence tolerance must be positive, got {tol}"
        )));
    }
    let mut eps = cfg.epsilon;
    let mut prev = split_final(u0, t, &SplitConfig { epsilon: eps, ..cfg.clone() })?;
    let mut gaps = Vec::new();
    for _ in 0..MAX_HALVINGS {
        eps *= 0.5;
        let fine = split_final(u0, t, &SplitConfig { epsilon: eps, ..cfg.clone() })?;
        let gap = l1_distance(&prev, &fine)?;
        gaps.push(gap);
        if gap < tol {
            return Ok(EntropyLimit {
                solution: fine,
                gaps,
                final_epsilon: eps,
            });
        }
        prev = fine;
    }
    Err(Error::NonConvergence { gaps })
}

/// Default truncation order for [`exp_abs_conv`]: with
/// `terms = ⌈3tκ⌉ + 10` the stated remainder is below `1e-12·e^{tκ}`.
pub fn default_terms(t: f64, kappa: f64) -> usize {
    (3.0 * t * kappa).ceil() as usize + 10
}

/// Truncated exponential series of repeated `|K|`-convolution:
///
/// ```text
/// e^{t|K|∗} f ≈ Σ_{k=0}^{terms} (t^k/k!)·(|K|∗)^k f,
/// ```
///
/// with remainder `‖rest‖_p ≤ (e^{tκ} − Σ_{k≤terms}(tκ)^k/k!)·‖f‖_p`.
pub fn exp_abs_conv(
    f: &GridFunction,
    t: f64,
    kernel: &SampledKernel,
    terms: usize,
) -> Result<GridFunction> {
    if terms < 1 {
        return Err(Error::InvalidParameter(
            "the series needs at least one term".to_string(),
        ));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "series time must be finite and non-negative, got {t}"
        )));
    }
    let abs_kernel = SampledKernel::from_samples(
        kernel.values().iter().map(|v| v.abs()).collect(),
        kernel.half_width(),
    )?;
    let mut sum = f.values().to_vec();
    let mut power = f.clone();
    let mut coef = 1.0;
    for k in 1..=terms {
        power = convolve(&abs_kernel, &power)?;
        coef *= t / k as f64;
        for (acc, v) in sum.iter_mut().zip(power.values()) {
            *acc += coef * v;
        }
    }
    GridFunction::new(sum, f.half_width(), f.boundary())
}

/// The weighted-contraction weight `w^r_M(t,·) = e^{t|K|∗} χ`, where `χ` is
/// the indicator of `|x| < r + Mt`, built on the kernel's grid as a
/// zero-extended (line) function.
pub fn contraction_weight(
    r: f64,
    big_m: f64,
    t: f64,
    kernel: &SampledKernel,
    terms: usize,
) -> Result<GridFunction> {
    for (name, v) in [("r", r), ("M", big_m), ("t", t)] {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "contraction-weight parameter {name} must be finite and non-negative, got {v}"
            )));
        }
    }
    let d = r + big_m * t;
    let n = kernel.n();
    let dx = kernel.dx();
    let half_width = kernel.half_width();
    let values: Vec<f64> = (0..n)
        .map(|j| {
            let x = -half_width + j as f64 * dx;
            if x.abs() < d {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    let chi = GridFunction::new(values, half_width, Boundary::ZeroExtended)?;
    exp_abs_conv(&chi, t, kernel, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burgers::total_variation;
    use crate::kernel::make_bessel;

    /// Shared experiment grid: wide enough for the kernel tail gate, fine
    /// enough that splitting effects dominate grid effects.
    const L: f64 = 32.0;
    const N: usize = 512;

    fn gaussian(amp: f64) -> GridFunction {
        GridFunction::from_fn(L, N, Boundary::Periodic, |x| amp * (-x * x).exp())
            .expect("grid")
    }

    fn bp_kernel() -> SampledKernel {
        make_bessel(2.0, 1.0, L, N).expect("kernel").1
    }

    fn cfg_with(eps: f64, kernel: SampledKernel) -> SplitConfig {
        SplitConfig {
            epsilon: eps,
            kernel,
            burgers: BurgersConfig::default(),
            record_every: usize::MAX,
            holder_s: 1.0,
        }
    }

    // -----------------------------------------------------------------
    // The kernel step S^K
    // -----------------------------------------------------------------

    #[test]
    fn sk_step_identities() {
        let k = bp_kernel();
        let f = gaussian(1.0);
        // ε = 0 is the identity, bit for bit.
        let same = sk_step(&f, 0.0, &k).expect("step");
        assert_eq!(same.values(), f.values());
        // Pythagoras: the cross term ⟨f, K∗f⟩ vanishes for odd K, so
        // ‖f + εK∗f‖₂² = ‖f‖₂² + ε²‖K∗f‖₂².
        let eps = 0.3;
        let stepped = sk_step(&f, eps, &k).expect("step");
        let kf = convolve(&k, &f).expect("K∗f");
        let lhs = stepped.lp_norm(Lp::Two).powi(2);
        let rhs = f.lp_norm(Lp::Two).powi(2) + eps * eps * kf.lp_norm(Lp::Two).powi(2);
        assert!(
            (lhs - rhs).abs() <= 1e-10,
            "L² Pythagoras violated: {lhs} vs {rhs}"
        );
        // per-step p-norm growth factor (1 + εκ), κ the true L¹ norm which
        // dominates the rectangle sum actually driving the discrete bound
        for kernel in [bp_kernel(), make_bessel(1.5, -1.0, L, 2 * N).expect("kernel").1] {
            let g = GridFunction::from_fn(L, kernel.n(), Boundary::Periodic, |x| {
                (-0.5 * x * x).exp() * (1.0 + 0.3 * x.sin())
            })
            .expect("grid");
            let out = sk_step(&g, eps, &kernel).expect("step");
            for p in [Lp::One, Lp::Two, Lp::Inf] {
                let bound = (1.0 + eps * kernel.kappa()) * g.lp_norm(p);
                assert!(
                    out.lp_norm(p) <= bound * (1.0 + 1e-12),
                    "(1+εκ) growth violated at {p:?}"
                );
            }
        }
    }

    // -----------------------------------------------------------------
    // split_evolve: degenerate kernel, recording, global bounds
    // -----------------------------------------------------------------

    #[test]
    fn zero_kernel_degenerates_to_plain_burgers_exactly() {
        let u0 = gaussian(1.0);
        let zero = SampledKernel::zeros(L, N).expect("kernel");
        let cfg = cfg_with(0.05, zero);
        let t = 0.73;
        let traj = split_evolve(&u0, t, &cfg).expect("split");
        let direct = burgers::burgers_evolve(&u0, t, &cfg.burgers).expect("burgers");
        assert_eq!(
            traj.final_state().values(),
            direct.values(),
            "the degenerate splitting must be bit-identical to the plain solver"
        );
        // cadence marks produce interior snapshots at true substep times
        let cfg2 = SplitConfig {
            record_every: 4,
            ..cfg.clone()
        };
        let traj2 = split_evolve(&u0, t, &cfg2).expect("split");
        assert!(traj2.len() > 2, "cadence marks inside (0, t) must appear");
        for w in traj2.times().windows(2) {
            assert!(w[0] < w[1], "snapshot times must increase strictly");
        }
        assert_eq!(*traj2.times().last().expect("nonempty"), t);
    }

    #[test]
    fn snapshot_times_and_measurements_are_consistent() {
        let u0 = gaussian(1.0);
        let cfg = SplitConfig {
            record_every: 3,
            ..cfg_with(0.05, bp_kernel())
        };
        let t = 0.8;
        let traj = split_evolve(&u0, t, &cfg).expect("split");
        assert_eq!(traj.times().len(), traj.snapshots().len());
        assert_eq!(traj.times().len(), traj.measurements().len());
        assert_eq!(traj.times()[0], 0.0);
        assert_eq!(*traj.times().last().expect("nonempty"), t);
        // interior marks at 3ε, 6ε, …
        assert!((traj.times()[1] - 0.15).abs() < 1e-12);
        for (snap, m) in traj.snapshots().iter().zip(traj.measurements()) {
            assert_eq!(m.l2, snap.lp_norm(Lp::Two));
            assert_eq!(m.linf, snap.lp_norm(Lp::Inf));
            assert_eq!(m.osc_half, snap.osc_half());
        }
        // CSV render has one row per snapshot plus a header
        let csv = traj.to_csv_string();
        assert_eq!(csv.lines().count(), traj.len() + 1);
        assert!(csv.starts_with("t,l2,linf,holder_s,osc"));
    }

    #[test]
    fn l2_growth_respects_the_splitting_bound() {
        // ‖S_{ε,t}f‖₂ ≤ e^{½εtκ²}‖f‖₂: skew-symmetry makes each kernel step
        // grow the square by 1 + ε²‖K‖₁² at most, and the convective halves
        // are non-expansive, so the discrete run obeys the bound up to
        // rounding.
        let u0 = gaussian(1.0);
        for sign in [1.0, -1.0] {
            let kernel = make_bessel(2.0, sign, L, N).expect("kernel").1;
            let kappa = kernel.kappa();
            let cfg = cfg_with(0.02, kernel);
            let t = 1.5;
            let out = split_final(&u0, t, &cfg).expect("split");
            let bound = (0.5 * cfg.epsilon * t * kappa * kappa).exp() * u0.lp_norm(Lp::Two);
            assert!(
                out.lp_norm(Lp::Two) <= bound + 1e-10,
                "L² splitting bound violated (sign {sign}): {} > {bound}",
                out.lp_norm(Lp::Two)
            );
        }
    }

    #[test]
    fn lp_and_tv_growth_respect_the_exponential_bound() {
        // ‖S_{ε,t}f‖_p ≤ e^{tκ}‖f‖_p and TV(S_{ε,t}f) ≤ e^{tκ}TV(f): each
        // round multiplies by at most (1 + εκ).
        let u0 = gaussian(1.0);
        let kernel = bp_kernel();
        let kappa = kernel.kappa();
        let cfg = cfg_with(0.04, kernel);
        let t = 1.0;
        let out = split_final(&u0, t, &cfg).expect("split");
        let factor = (t * kappa).exp();
        for p in [Lp::One, Lp::Two, Lp::Inf] {
            assert!(
                out.lp_norm(p) <= factor * u0.lp_norm(p) * (1.0 + 1e-12),
                "e^{{tκ}} L^p bound violated at {p:?}"
            );
        }
        assert!(
            total_variation(&out) <= factor * total_variation(&u0) * (1.0 + 1e-12),
            "e^{{tκ}} TV bound violated"
        );
    }

    /// Margin for the approximate-time-continuity constant (the contract is
    /// 10%; measured ratios `gap/((t−t̃+ε)·C_f)` stay below 0.02 on this
    /// data, so the margin is pure headroom).
    const TIME_CONTINUITY_MARGIN: f64 = 0.10;

    #[test]
    fn approximate_time_continuity_holds_with_the_stated_constant() {
        // ‖S_{ε,t}f − S_{ε,t̃}f‖₁ ≤ (t − t̃ + ε)·C_f(t),
        // C_f(t) = e^{2tκ}(2·TV(f)² + κ‖f‖₁).
        let u0 = GridFunction::from_fn(L, N, Boundary::Periodic, |x| {
            if x.abs() < 2.0 {
                1.0 - 0.5 * x.abs()
            } else {
                0.0
            }
        })
        .expect("grid");
        let kernel = bp_kernel();
        let kappa = kernel.kappa();
        let cfg = cfg_with(0.05, kernel);
        let traj = split_evolve_at(&u0, &[0.3, 0.5, 0.9], &cfg).expect("split");
        let tv = total_variation(&u0);
        let l1 = u0.lp_norm(Lp::One);
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let (t_small, t_big) = (traj.times()[i], traj.times()[j]);
            let gap = l1_distance(&traj.snapshots()[i], &traj.snapshots()[j]).expect("gap");
            let c_f = (2.0 * t_big * kappa).exp() * (2.0 * tv * tv + kappa * l1);
            let bound = (t_big - t_small + cfg.epsilon) * c_f;
            assert!(
                gap <= bound * (1.0 + TIME_CONTINUITY_MARGIN),
                "time continuity violated on ({t_small}, {t_big}): {gap} > {bound}"
            );
        }
    }

    // -----------------------------------------------------------------
    // ε-refinement: splitting order and the entropy-solution limit
    // -----------------------------------------------------------------

    /// Gap-ratio window for first-order splitting on the smooth benchmark
    /// (gaussian data, attractive exponential kernel).  Nominal ratio is 2;
    /// the window [1.5, 3] absorbs the shock's nonlinear feedback.  The
    /// ladder starts at ε = 0.04: the 0.08→0.04 gap still carries a
    /// pre-asymptotic transient (measured ratio 3.9), while every later
    /// ratio sits at 2.03–2.06.
    const GAP_RATIO_LO: f64 = 1.5;
    const GAP_RATIO_HI: f64 = 3.0;

    #[test]
    fn epsilon_halving_shrinks_gaps_geometrically() {
        let u0 = gaussian(1.0);
        let kernel = bp_kernel();
        let t = 1.0;
        let mut finals = Vec::new();
        let mut eps = 0.04;
        for _ in 0..5 {
            finals.push(split_final(&u0, t, &cfg_with(eps, kernel.clone())).expect("split"));
            eps *= 0.5;
        }
        let gaps: Vec<f64> = finals
            .windows(2)
            .map(|w| l1_distance(&w[0], &w[1]).expect("gap"))
            .collect();
        for w in gaps.windows(2) {
            assert!(
                w[1] < w[0],
                "L¹ gaps must decrease monotonically: {gaps:?}"
            );
            let ratio = w[0] / w[1];
            assert!(
                (GAP_RATIO_LO..=GAP_RATIO_HI).contains(&ratio),
                "gap ratio {ratio} outside the first-order window; gaps {gaps:?}"
            );
        }
    }

    #[test]
    fn entropy_solution_trivial_cases_converge_immediately() {
        // K ≡ 0: both runs degenerate to the same plain convective solve.
        let u0 = gaussian(1.0);
        let zero = SampledKernel::zeros(L, N).expect("kernel");
        let out = entropy_solution(&u0, 0.5, &cfg_with(0.05, zero), 1e-12).expect("limit");
        assert_eq!(out.gaps, vec![0.0]);
        assert_eq!(out.final_epsilon, 0.025);
        // u₀ ≡ 0 is a fixed point of both halves.
        let flat = GridFunction::new(vec![0.0; N], L, Boundary::Periodic).expect("grid");
        let out = entropy_solution(&flat, 2.0, &cfg_with(0.05, bp_kernel()), 1e-12)
            .expect("limit");
        assert_eq!(out.gaps, vec![0.0]);
        assert!(out.solution.values().iter().all(|&v| v == 0.0));
        // an unreachable tolerance reports the gap sequence
        match entropy_solution(&gaussian(1.0), 0.5, &cfg_with(0.08, bp_kernel()), 1e-300) {
            Err(Error::NonConvergence { gaps }) => assert_eq!(gaps.len(), MAX_HALVINGS),
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    // -----------------------------------------------------------------
    // e^{t|K|∗} and the contraction weight
    // -----------------------------------------------------------------

    #[test]
    fn exp_abs_conv_matches_its_stated_bounds() {
        let kernel = bp_kernel();
        let f = gaussian(1.0);
        // t = 0: the zeroth term only.
        let frozen = exp_abs_conv(&f, 0.0, &kernel, 5).expect("series");
        assert_eq!(frozen.values(), f.values());
        // nonnegative data: Young is an equality in L¹, and the truncated
        // series converges to e^{t·‖K‖₁,rect}·‖f‖₁ (the rectangle-rule norm
        // is what one discrete convolution multiplies mass by, exactly).
        let t = 1.0;
        let rect = kernel.l1_norm();
        let out = exp_abs_conv(&f, t, &kernel, default_terms(t, kernel.kappa())).expect("series");
        let expect = (t * rect).exp() * f.lp_norm(Lp::One);
        assert!(
            (out.lp_norm(Lp::One) - expect).abs() <= 1e-10 * expect,
            "L¹ limit mismatch: {} vs {expect}",
            out.lp_norm(Lp::One)
        );
        // and the declared p-norm bound with the true κ holds for all p
        for p in [Lp::One, Lp::Two, Lp::Inf] {
            assert!(
                out.lp_norm(p) <= (t * kernel.kappa()).exp() * f.lp_norm(p) * (1.0 + 1e-12),
                "e^{{tκ}} bound violated at {p:?}"
            );
        }
    }

    #[test]
    fn contraction_weight_dominates_its_indicator() {
        let kernel = bp_kernel();
        let (r, big_m, t) = (2.0, 1.5, 1.0);
        let w = contraction_weight(r, big_m, t, &kernel, default_terms(t, kernel.kappa()))
            .expect("weight");
        let d = r + big_m * t;
        // w ≥ χ pointwise: the series adds nonnegative terms to χ.
        for j in 0..w.n() {
            let x = w.node(j);
            let chi = if x.abs() < d { 1.0 } else { 0.0 };
            assert!(w.values()[j] >= chi, "weight dipped below its indicator at x={x}");
        }
        assert_eq!(w.boundary(), Boundary::ZeroExtended);
        // ‖w‖_p ≤ e^{tκ}·(2r+2Mt)^{1/p}, up to the half-cell the discrete
        // indicator can add at each support edge.
        let kappa = kernel.kappa();
        let dx = w.dx();
        for (p, pw) in [(Lp::One, 1.0), (Lp::Two, 0.5)] {
            let bound = (t * kappa).exp() * (2.0 * d + dx).powf(pw);
            assert!(
                w.lp_norm(p) <= bound * (1.0 + 1e-12),
                "weight norm bound violated at {p:?}: {} > {bound}",
                w.lp_norm(p)
            );
        }
        // K ≡ 0: the weight is the indicator itself.
        let zero = SampledKernel::zeros(L, N).expect("kernel");
        let plain = contraction_weight(r, big_m, t, &zero, 3).expect("weight");
        for j in 0..plain.n() {
            let x = plain.node(j);
            let chi = if x.abs() < d { 1.0 } else { 0.0 };
            assert_eq!(plain.values()[j], chi);
        }
    }

    // -----------------------------------------------------------------
    // Kružkov entropy residual
    // -----------------------------------------------------------------

    /// `∫∫ |u−k|·φ_t + q_k(u)·φ_x + sgn(u−k)(K∗u)·φ` over the trajectory,
    /// rectangle quadrature in both variables, with an analytic C∞ bump φ.
    fn kruzkov_residual(
        traj: &Trajectory,
        kernel: &SampledKernel,
        eps: f64,
        k: f64,
        t_bump: (f64, f64),
        x_bump: (f64, f64),
    ) -> f64 {
        // bump b(y) = exp(−1/((y−a)(b−y))) on (a, b), else 0, with
        // b'(y) = b(y)·(a+b−2y)/((y−a)(b−y))²
        let bump = |y: f64, (a, b): (f64, f64)| -> (f64, f64) {
            if y <= a || y >= b {
                return (0.0, 0.0);
            }
            let g = (y - a) * (b - y);
            let v = (-1.0 / g).exp();
            (v, v * (a + b - 2.0 * y) / (g * g))
        };
        let mut residual = 0.0;
        for (i, t) in traj.times().iter().enumerate() {
            let (at, dat) = bump(*t, t_bump);
            if at == 0.0 && dat == 0.0 {
                continue;
            }
            let u = &traj.snapshots()[i];
            let ku = convolve(kernel, u).expect("K∗u");
            let dx = u.dx();
            for j in 0..u.n() {
                let x = u.node(j);
                let (bx, dbx) = bump(x, x_bump);
                if bx == 0.0 && dbx == 0.0 {
                    continue;
                }
                let v = u.values()[j];
                let eta = (v - k).abs();
                let sgn = if v > k {
                    1.0
                } else if v < k {
                    -1.0
                } else {
                    0.0
                };
                let q = sgn * 0.5 * (v * v - k * k);
                residual += eps
                    * dx
                    * (eta * (dat * bx) + q * (at * dbx) + sgn * ku.values()[j] * (at * bx));
            }
        }
        residual
    }

    /// Ceiling on the negative part of the discrete Kružkov residual,
    /// `R ≥ −KRUZKOV_C·(ε + Δx)`.  Measured residuals on this benchmark are
    /// outright positive (+5.9e-5 at n = 256, ε = 0.05; +2.5e-5 at n = 512,
    /// ε = 0.025), so the ceiling only guards the contract's stated form.
    const KRUZKOV_C: f64 = 0.5;

    #[test]
    fn kruzkov_entropy_residual_is_nearly_nonnegative() {
        let u0 = gaussian(1.0);
        let mut previous_negative: Option<f64> = None;
        for (n, eps) in [(256usize, 0.05), (512, 0.025)] {
            let u0n = GridFunction::from_fn(L, n, Boundary::Periodic, |x| (-x * x).exp())
                .expect("grid");
            let kernel = make_bessel(2.0, 1.0, L, n).expect("kernel").1;
            let cfg = SplitConfig {
                record_every: 1,
                ..cfg_with(eps, kernel.clone())
            };
            let traj = split_evolve(&u0n, 1.0, &cfg).expect("split");
            let r = kruzkov_residual(&traj, &kernel, eps, 0.3, (0.1, 0.9), (-3.0, 3.0));
            let dx = u0n.dx();
            assert!(
                r >= -KRUZKOV_C * (eps + dx),
                "entropy residual too negative at n={n}, ε={eps}: {r}"
            );
            let neg = (-r).max(0.0);
            if let Some(prev) = previous_negative {
                assert!(
                    neg <= prev.max(1e-12),
                    "negative part must not grow under refinement: {neg} after {prev}"
                );
            }
            previous_negative = Some(neg);
        }
        let _ = u0;
    }

    // -----------------------------------------------------------------
    // Validation plumbing
    // -----------------------------------------------------------------

    #[test]
    fn invalid_configurations_are_rejected() {
        let u0 = gaussian(1.0);
        let base = cfg_with(0.05, bp_kernel());
        assert!(split_evolve(&u0, -1.0, &base).is_err(), "negative time");
        assert!(
            split_evolve(&u0, 1.0, &SplitConfig { epsilon: 0.0, ..base.clone() }).is_err(),
            "zero ε"
        );
        assert!(
            split_evolve(&u0, 1.0, &SplitConfig { record_every: 0, ..base.clone() }).is_err(),
            "zero cadence"
        );
        assert!(
            split_evolve(&u0, 1.0, &SplitConfig { holder_s: 1.5, ..base.clone() }).is_err(),
            "s out of range"
        );
        assert!(
            split_evolve_at(&u0, &[0.5, 0.5], &base).is_err(),
            "non-increasing times"
        );
        assert!(split_evolve_at(&u0, &[], &base).is_err(), "no times");
        let wrong_grid = GridFunction::new(vec![0.0; 64], 1.0, Boundary::Periodic).expect("grid");
        assert!(
            matches!(
                split_evolve(&wrong_grid, 0.5, &base),
                Err(Error::GridMismatch { .. })
            ),
            "kernel/field grid mismatch"
        );
        assert!(exp_abs_conv(&u0, 1.0, &bp_kernel(), 0).is_err(), "no terms");
        assert!(
            contraction_weight(-1.0, 1.0, 1.0, &bp_kernel(), 3).is_err(),
            "negative radius"
        );
    }

    #[test]
    fn split_evolve_at_matches_split_evolve_on_round_boundaries() {
        // at a round boundary both paths are the same operator composition
        let u0 = gaussian(1.0);
        let cfg = cfg_with(0.05, bp_kernel());
        let t = 0.5; // 10 rounds exactly
        let a = split_final(&u0, t, &cfg).expect("split");
        let b = split_evolve(&u0, t, &cfg).expect("split");
        assert_eq!(a.values(), b.final_state().values());
    }

}
