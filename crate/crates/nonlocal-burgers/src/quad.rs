//! Private numerical workhorses: adaptive quadrature, bisection, a fixed-step
//! RK4 integrator, and a log-gamma evaluation.
//!
//! These are deliberately minimal — each caller transforms its integrand so
//! that a plain adaptive Simpson rule on a finite interval converges fast
//! (singularities are removed by substitutions at the call site).

/// Adaptive Simpson quadrature of `f` on `[a, b]`.
///
/// Classic bisection scheme with the Richardson correction `(s2 - s1)/15`;
/// recursion stops when the local error estimate is below the local share of
/// `tol` or at depth `max_depth` (the interval is then accepted as is —
/// callers choose `tol` with enough headroom that this never dominates).
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let err = left + right - whole;
        if depth == 0 || err.abs() <= 15.0 * tol {
            return left + right + err / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    rec(f, a, b, fa, fm, fb, whole, tol, max_depth)
}

/// Bisection for a root of `f` on `[lo, hi]`.
///
/// Requires a sign change (verified from the supplied endpoint values);
/// returns the midpoint after `iters` halvings. 80 iterations pin the root
/// to full f64 resolution on any practical bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, f_lo: f64, iters: u32) -> f64 {
    // The sign at `lo` is invariant: whenever the midpoint agrees with it the
    // root lies to the right and `lo` moves, otherwise `hi` does.
    let sign_lo = f_lo.is_sign_positive();
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if f(mid).is_sign_positive() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Classic fixed-step fourth-order Runge–Kutta for the scalar autonomous ODE
/// `y' = f(y)`, integrating from `y0` over a time span `t` in `steps` steps.
pub fn rk4_autonomous<F: Fn(f64) -> f64>(f: &F, y0: f64, t: f64, steps: usize) -> f64 {
    let h = t / steps as f64;
    let mut y = y0;
    for _ in 0..steps {
        let k1 = f(y);
        let k2 = f(y + 0.5 * h * k1);
        let k3 = f(y + 0.5 * h * k2);
        let k4 = f(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    y
}

/// Natural logarithm of the gamma function for positive arguments.
///
/// Lanczos approximation (g = 7, 9 coefficients), accurate to ~1e-15
/// relative over the range used here (arguments in (0.2, 3]).
pub fn ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    debug_assert!(x > 0.0, "ln_gamma domain");
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * x).sin().ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = COEF[0];
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}
