//! Adaptive composite Gauss-Legendre quadrature.
//!
//! All window integrands in this crate are smooth with compact support, so a
//! fixed-order rule on a refined panel grid converges spectrally; the driver
//! doubles the panel count until two consecutive composite values agree.

use num_complex::Complex64;

use crate::{Error, Result};

/// Default rule order used by the window transforms.
pub const DEFAULT_ORDER: usize = 24;

const MAX_PANELS: usize = 1 << 21;

/// Nodes and weights of an `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Build the rule by Newton iteration on the Legendre polynomial roots.
    pub fn new(order: usize) -> Self {
        assert!(order >= 2, "rule order must be at least 2");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess for the i-th positive root
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // evaluate P_n and P_n' by the three-term recurrence
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Reference nodes on `[-1, 1]`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights matching [`nodes`](Self::nodes).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Apply the rule to one panel `[a, b]`.
    pub fn panel<F: FnMut(f64) -> f64>(&self, f: &mut F, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(c + h * x);
        }
        s * h
    }

    fn panel_complex<F: FnMut(f64) -> Complex64>(&self, f: &mut F, a: f64, b: f64) -> Complex64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += f(c + h * x) * *w;
        }
        s * h
    }

    fn composite<F: FnMut(f64) -> f64>(&self, f: &mut F, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        let mut s = 0.0;
        for i in 0..panels {
            s += self.panel(f, a + i as f64 * h, a + (i + 1) as f64 * h);
        }
        s
    }

    fn composite_complex<F: FnMut(f64) -> Complex64>(
        &self,
        f: &mut F,
        a: f64,
        b: f64,
        panels: usize,
    ) -> Complex64 {
        let h = (b - a) / panels as f64;
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..panels {
            s += self.panel_complex(f, a + i as f64 * h, a + (i + 1) as f64 * h);
        }
        s
    }

    /// Integrate `f` over `[a, b]`, doubling the panel count from
    /// `initial_panels` until two consecutive composites differ by less than
    /// `abs_tol`.
    pub fn integrate<F: FnMut(f64) -> f64>(
        &self,
        mut f: F,
        a: f64,
        b: f64,
        abs_tol: f64,
        initial_panels: usize,
    ) -> Result<f64> {
        if a >= b {
            return Ok(0.0);
        }
        let mut panels = initial_panels.max(1);
        let mut prev = self.composite(&mut f, a, b, panels);
        while panels <= MAX_PANELS {
            panels *= 2;
            let next = self.composite(&mut f, a, b, panels);
            if (next - prev).abs() <= abs_tol {
                return Ok(next);
            }
            prev = next;
        }
        Err(Error::QuadratureUnconverged {
            panels,
            tol: abs_tol,
        })
    }

    /// Complex-valued variant of [`integrate`](Self::integrate).
    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
        &self,
        mut f: F,
        a: f64,
        b: f64,
        abs_tol: f64,
        initial_panels: usize,
    ) -> Result<Complex64> {
        if a >= b {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let mut panels = initial_panels.max(1);
        let mut prev = self.composite_complex(&mut f, a, b, panels);
        while panels <= MAX_PANELS {
            panels *= 2;
            let next = self.composite_complex(&mut f, a, b, panels);
            if (next - prev).norm() <= abs_tol {
                return Ok(next);
            }
            prev = next;
        }
        Err(Error::QuadratureUnconverged {
            panels,
            tol: abs_tol,
        })
    }

    /// One composite pass with a fixed panel count, no refinement. Exposed so
    /// that tests can check self-consistency under halving the step size.
    pub fn fixed<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64, panels: usize) -> f64 {
        self.composite(&mut f, a, b, panels)
    }
}

impl Default for GaussLegendre {
    fn default() -> Self {
        GaussLegendre::new(DEFAULT_ORDER)
    }
}
