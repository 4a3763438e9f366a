//! A numerical laboratory for the nonlocal dispersive Burgers equation
//!
//! ```text
//!     u_t + (u^2/2)_x = (G * u)_x = K * u,        K = G',
//! ```
//!
//! posed on a periodic interval `[-L, L)`, where `G` is an even integrable
//! convolution kernel (the Bessel kernels `G_alpha` with Fourier symbol
//! `(1 + 4 pi^2 xi^2)^(-alpha/2)` are built in; `G = -G_2` gives the
//! Burgers–Poisson system).
//!
//! The crate has two halves that validate each other:
//!
//! 1. **Simulation** — entropy solutions computed by operator splitting:
//!    alternate the exact (Godunov-discretized) Burgers flow `S^B_eps` with
//!    the linear kernel step `S^K_eps f = f + eps K * f`, then refine
//!    `eps -> 0`. See [`burgers`] and [`splitting`].
//!
//! 2. **Theory** — every explicit constant and bound that is known for this
//!    equation, evaluated exactly: one-sided Hölder (Oleinik-type) decay
//!    coefficients, height decay, L² growth, weighted L¹ contraction, and
//!    the classical-solution lifespan under a skewness condition. See
//!    [`coeffs`] and [`verify`].
//!
//! A measured quantity on a simulated trajectory is compared against its
//! theoretical bound through [`verify::BoundReport`]s; the `examples/`
//! directory exercises every major capability end to end and is the
//! recommended starting point:
//!
//! | example               | shows                                              |
//! |-----------------------|----------------------------------------------------|
//! | `kernel_gallery`      | kernel construction, κ, fractional variation       |
//! | `riemann_waves`       | Godunov scheme vs. exact Riemann solutions         |
//! | `splitting_run`       | a full Burgers–Poisson evolution with measurements |
//! | `holder_decay`        | one-sided Hölder seminorm vs. its decaying bound   |
//! | `height_and_l2`       | height bound and L² growth control                 |
//! | `contraction_demo`    | weighted L¹ contraction between two solutions      |
//! | `wave_breaking`       | lifespan bound vs. observed gradient blow-up       |
//! | `theory_constants`    | the constant set, its identities, b(t), delay      |
//! | `convergence`         | first-order behaviour of the splitting error       |
//!
//! The thin `nlburg` binary drives the same machinery from config files
//! (subcommands `simulate`, `verify`, `constants`, `kernel-info`,
//! `convergence`).
//!
//! # Conventions
//!
//! * Grids are uniform with `n` (even) cells on `[-L, L)`, nodes
//!   `x_j = -L + j Δx`, `Δx = 2L/n`. Kernels and fields share one grid.
//! * All quadrature on the grid is the rectangle rule `Δx * Σ`, consistent
//!   with the discrete convolution used by the evolution.
//! * Nothing here is randomized; every run is bit-reproducible. The only
//!   environment knob is `NLBURG_THREADS` (parallelism across independent
//!   scenarios; results do not depend on it).

pub mod burgers;
pub mod coeffs;
pub mod config;
pub mod error;
pub mod field;
pub mod io;
pub mod kernel;
pub mod splitting;
pub mod verify;

mod fft;
mod quad;

pub mod cli;

pub use error::{Error, Result};
