//! Shared FFT plumbing: cached plans and unnormalized transforms.
//!
//! Both the kernel construction and the spectral convolution use the same
//! conventions:
//!
//! * `forward`:  `out_k = Σ_j in_j · e^{-2πi jk/n}` (no normalization),
//! * `inverse`:  `out_j = Σ_k in_k · e^{+2πi jk/n}` (no normalization),
//!
//! so `inverse(forward(f)) = n·f`.  Any `1/n` factors are applied by the
//! callers, which keeps each call site's formula explicit.  Plans are cached
//! per thread; planning is cheap relative to the transforms themselves but
//! not free, and the verification suite runs scenarios on worker threads.

use std::cell::RefCell;

use rustfft::{num_complex::Complex, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// In-place unnormalized forward DFT.
pub(crate) fn forward(buf: &mut [Complex<f64>]) {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()).process(buf));
}

/// In-place unnormalized inverse DFT (no `1/n` factor).
pub(crate) fn inverse(buf: &mut [Complex<f64>]) {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(buf.len()).process(buf));
}
