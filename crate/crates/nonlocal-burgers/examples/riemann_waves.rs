//! Shock and rarefaction waves under the Godunov scheme, checked against
//! the exact Riemann solutions of `u_t + (u²/2)_x = 0`.
//!
//! Two classic data sets:
//!
//! * **Shock** `u_l = 1 > u_r = 0`: the entropy solution is a jump moving
//!   at the Rankine–Hugoniot speed `σ = (u_l + u_r)/2 = 1/2`.
//! * **Rarefaction** `u_l = -1 < u_r = 1`: the jump opens into the fan
//!   `u(x, t) = clamp(x/t, -1, 1)`, and the scheme must *not* keep the
//!   entropy-violating stationary jump alive.
//!
//! On the periodic domain the datum has a second jump at the wrap point
//! `±L`; its wave stays within one time unit of the boundary, so the
//! comparison against the exact profile is taken on the window `|x| ≤ L/2`,
//! which no boundary wave can reach by `t = 1`.  Initial data are the
//! exact cell averages of the Riemann datum (the jump cell carries the
//! mean of the two states), and the oracle is cell-averaged too — Godunov
//! values are finite-volume means, so that is the fair comparison.
//!
//! First-order schemes resolve shocks within `O(Δx)`; rarefaction corners
//! smear at the slightly worse `O(Δx·log(1/Δx))` rate, so the fan's error
//! *in cell units* grows as the grid refines — on this domain both runs
//! land within `2Δx`.  The total-variation-diminishing property is
//! confirmed along the way.
//!
//! Run with `cargo run --example riemann_waves`.

use nonlocal_burgers::burgers::{self, BurgersConfig};
use nonlocal_burgers::error::Result;
use nonlocal_burgers::field::{Boundary, GridFunction};

/// Half-width of the domain; boundary waves stay in `|x| > L - t`.
const HALF_WIDTH: f64 = 16.0;
/// Grid resolution.
const N: usize = 1024;
/// Final time of both runs.
const T_FINAL: f64 = 1.0;
/// Comparison window half-width (boundary waves cannot reach it by `T_FINAL`).
const WINDOW: f64 = 8.0;

/// L¹ distance between two fields restricted to `|x| ≤ WINDOW`.
fn windowed_l1(f: &GridFunction, g: &GridFunction) -> f64 {
    let dx = f.dx();
    (0..f.n())
        .filter(|&j| f.node(j).abs() <= WINDOW)
        .map(|j| (f.values()[j] - g.values()[j]).abs() * dx)
        .sum()
}

/// Cell-averaged samples of the exact Riemann solution at time `t`.
///
/// Godunov values are finite-volume cell averages, so the fair oracle is
/// the average of the exact profile over each cell (midpoint sub-sampling;
/// the profile is piecewise linear, so 16 points per cell are plenty).
fn exact_cell_averages(u_left: f64, u_right: f64, t: f64) -> Result<GridFunction> {
    const SUB: usize = 16;
    GridFunction::from_fn(HALF_WIDTH, N, Boundary::Periodic, |x| {
        let dx = 2.0 * HALF_WIDTH / N as f64;
        (0..SUB)
            .map(|k| {
                let xi = x - dx / 2.0 + (k as f64 + 0.5) * dx / SUB as f64;
                burgers::riemann(u_left, u_right, xi / t)
            })
            .sum::<f64>()
            / SUB as f64
    })
}

/// One Riemann experiment: evolve the jump, compare with the exact solution.
fn riemann_run(name: &str, u_left: f64, u_right: f64) -> Result<()> {
    // Exact cell averages of the jump datum: the x = 0 node's cell
    // straddles the discontinuity, so it carries the mean state.
    let u0 = GridFunction::from_fn(HALF_WIDTH, N, Boundary::Periodic, |x| {
        if x == 0.0 {
            0.5 * (u_left + u_right)
        } else if x < 0.0 {
            u_left
        } else {
            u_right
        }
    })?;
    let cfg = BurgersConfig::default();
    let tv0 = burgers::total_variation(&u0);
    let u = burgers::burgers_evolve(&u0, T_FINAL, &cfg)?;
    let tv1 = burgers::total_variation(&u);

    let exact = exact_cell_averages(u_left, u_right, T_FINAL)?;
    let err = windowed_l1(&u, &exact);
    let dx = u.dx();

    println!(
        "{name:<12} u_l = {u_left:+.1}, u_r = {u_right:+.1}:  \
         L1 error = {err:.6}  ({:.2} dx),  TV {tv0:.3} -> {tv1:.3}",
        err / dx
    );
    assert!(
        err <= 2.0 * dx,
        "{name}: first-order Godunov should land within 2 dx in L1, got {err:.3e}"
    );
    assert!(
        tv1 <= tv0 + 1e-12,
        "{name}: total variation must not grow ({tv0} -> {tv1})"
    );
    Ok(())
}

fn main() -> Result<()> {
    println!(
        "godunov riemann problems on [-{HALF_WIDTH}, {HALF_WIDTH}), n = {N}, t = {T_FINAL}, \
         compared on |x| <= {WINDOW}\n"
    );
    riemann_run("shock", 1.0, 0.0)?;
    riemann_run("rarefaction", -1.0, 1.0)?;

    // The fan's maximal slope decays like 1/t — the discrete one-sided
    // slope (Oleinik) estimate in action.
    let u0 = GridFunction::from_fn(HALF_WIDTH, N, Boundary::Periodic, |x| {
        if x == 0.0 {
            0.0
        } else {
            x.signum()
        }
    })?;
    let cfg = BurgersConfig::default();
    println!("\nmax forward slope of the rarefaction fan (exact fan has slope 1/t):");
    println!("{:>6} {:>12} {:>12}", "t", "measured", "1/t");
    for t in [0.25, 0.5, 1.0, 2.0] {
        let u = burgers::burgers_evolve(&u0, t, &cfg)?;
        let dx = u.dx();
        let slope = u
            .values()
            .windows(2)
            .map(|w| (w[1] - w[0]) / dx)
            .fold(f64::NEG_INFINITY, f64::max);
        println!("{t:>6} {slope:>12.6} {:>12.6}", 1.0 / t);
    }

    println!("\nboth riemann waves match the exact solutions on the window");
    Ok(())
}
