//! Numerical toolkit for mean squares of real (quadratic) character sums.
//!
//! The library computes the smoothed mean square
//!
//! ```text
//!   S(X, Y) = sum over odd square-free d of  | sum_n (8d/n) phi(n/Y) |^2 * w(d/X)
//! ```
//!
//! two independent ways (a direct oracle and a sieved strategy), together with
//! everything needed to predict its leading behaviour: Gauss-type sums `G_m(k)`
//! both by definition and in exact closed form, a two-sided check of the
//! quadratic Poisson summation formula, and the Euler-product constants `C1`,
//! `C2` entering the prediction `C1*X*Y*ln Y + C2*X*Y*ln(Y^2/X)`.
//!
//! Modules mirror the layers of the computation:
//!
//! * [`arith`] — Kronecker symbols, linear sieves, factorization.
//! * [`gauss`] — Gauss-type sums, exact values in `q*sqrt(s)` form.
//! * [`quad`] — adaptive composite Gauss–Legendre quadrature.
//! * [`smoothfn`] — smooth compactly supported windows and their transforms.
//! * [`charsum`] — the mean square itself and the Poisson verifier.
//! * [`euler`] — Euler products, the constants `C1`/`C2`, predictions.

pub mod arith;
pub mod charsum;
mod error;
pub mod euler;
pub mod gauss;
pub mod quad;
pub mod smoothfn;

pub use error::{Error, Result};
