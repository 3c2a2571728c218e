//! Smooth compactly supported windows and their integral transforms.
//!
//! The canonical window is the bump `exp(-1/(x(1-x)))` on `(0,1)`; shifted
//! power bumps `exp(-1/((x-l)(r-x))^p)` on `(l,r)` give further admissible
//! choices. All derivatives vanish at the support endpoints, so every
//! quadrature below converges spectrally.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_complex::Complex64;

use crate::quad::GaussLegendre;
use crate::{Error, Result};

/// Absolute quadrature tolerance used by the transforms, scaled by the window
/// amplitude. An order below every downstream comparison threshold.
const QUAD_TOL: f64 = 1e-12;

/// Window shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowKind {
    /// `exp(-1/(x(1-x)))` on `(0, 1)`.
    StandardBump,
    /// `exp(-1/((x-left)(right-x))^power)` on `(left, right)`.
    ShiftedPowerBump { left: f64, right: f64, power: f64 },
}

/// A smooth window: a [`WindowKind`] together with a scalar amplitude.
///
/// Evaluates to zero outside its support, which is always an open interval
/// contained in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothWindow {
    kind: WindowKind,
    amplitude: f64,
}

impl SmoothWindow {
    /// The canonical bump on `(0, 1)` with amplitude 1.
    pub fn standard() -> Self {
        SmoothWindow {
            kind: WindowKind::StandardBump,
            amplitude: 1.0,
        }
    }

    /// A shifted power bump supported on `(left, right)`.
    pub fn shifted_power(left: f64, right: f64, power: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&left) || !(left < right && right <= 1.0) {
            return Err(Error::InvalidWindow {
                reason: format!("support ({left}, {right}) must satisfy 0 <= left < right <= 1"),
            });
        }
        if !(power >= 0.5 && power.is_finite()) {
            return Err(Error::InvalidWindow {
                reason: format!("power {power} must be finite and >= 0.5"),
            });
        }
        Ok(SmoothWindow {
            kind: WindowKind::ShiftedPowerBump { left, right, power },
            amplitude: 1.0,
        })
    }

    /// Same window scaled by `factor`.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.amplitude *= factor;
        self
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn kind(&self) -> WindowKind {
        self.kind
    }

    /// Open support interval; the window vanishes identically outside it.
    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            WindowKind::StandardBump => (0.0, 1.0),
            WindowKind::ShiftedPowerBump { left, right, .. } => (left, right),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (l, r) = self.support();
        if x <= l || x >= r {
            return 0.0;
        }
        let v = match self.kind {
            WindowKind::StandardBump => (-1.0 / (x * (1.0 - x))).exp(),
            WindowKind::ShiftedPowerBump { left, right, power } => {
                (-((x - left) * (right - x)).powf(-power)).exp()
            }
        };
        self.amplitude * v
    }

    /// Canonical description, stable across runs; used as a checkpoint key.
    pub fn key(&self) -> String {
        match self.kind {
            WindowKind::StandardBump => format!("standard_bump;amp={:?}", self.amplitude),
            WindowKind::ShiftedPowerBump { left, right, power } => format!(
                "shifted_power_bump;l={left:?};r={right:?};p={power:?};amp={:?}",
                self.amplitude
            ),
        }
    }

    fn tol(&self) -> f64 {
        QUAD_TOL * (1.0 + self.amplitude.abs())
    }
}

/// `integral(w) = int_0^infty w(x) dx` to absolute tolerance 1e-10.
pub fn integral(w: &SmoothWindow) -> f64 {
    let (a, b) = w.support();
    let rule = GaussLegendre::default();
    rule.integrate(|x| w.eval(x), a, b, w.tol(), 8)
        .expect("window integral converges")
}

/// Mellin transform `int_0^infty w(y) y^(s-1) dy`. Any complex `s` is
/// admissible: the support stays away from 0 faster than any power.
pub fn mellin(w: &SmoothWindow, s: Complex64) -> Complex64 {
    let (a, b) = w.support();
    let rule = GaussLegendre::default();
    rule.integrate_complex(
        |y| {
            let v = w.eval(y);
            if v == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                // y^(s-1) * w(y)
                ((s - 1.0) * y.ln()).exp() * v
            }
        },
        a,
        b,
        w.tol(),
        8,
    )
    .expect("mellin transform converges")
}

/// Real Mellin value at real `s`, the case needed for the constants.
pub fn mellin_real(w: &SmoothWindow, s: f64) -> f64 {
    let (a, b) = w.support();
    let rule = GaussLegendre::default();
    rule.integrate(|y| w.eval(y) * y.powf(s - 1.0), a, b, w.tol(), 8)
        .expect("mellin transform converges")
}

/// The cosine-plus-sine transform `int (cos(2 pi xi x) + sin(2 pi xi x)) w(x) dx`.
///
/// For large `|xi|` the panel grid starts at width `<= 1/(4|xi|)` so each
/// panel sees at most a quarter oscillation period.
pub fn tilde_transform(w: &SmoothWindow, xi: f64) -> f64 {
    let (a, b) = w.support();
    let rule = GaussLegendre::default();
    let initial = initial_panels(a, b, xi);
    rule.integrate(
        |x| {
            let t = 2.0 * std::f64::consts::PI * xi * x;
            (t.cos() + t.sin()) * w.eval(x)
        },
        a,
        b,
        w.tol(),
        initial,
    )
    .expect("tilde transform converges")
}

fn initial_panels(a: f64, b: f64, xi: f64) -> usize {
    let len = b - a;
    let osc = (4.0 * xi.abs() * len).ceil() as usize;
    osc.clamp(8, 1 << 20)
}

/// `h1_tilde(1/2, 1/2)` for the factorized weight `W(x/X) phi(y/Y) phi(z/Y)`:
/// the scalings cancel and the value is `integral(w) * mellin(phi, 1/2)^2`.
pub fn h1_tilde_half(phi: &SmoothWindow, w: &SmoothWindow) -> f64 {
    let m = mellin_real(phi, 0.5);
    integral(w) * m * m
}

/// Fitted decay constant: the smallest `C` with
/// `|tilde_transform(w, xi)| <= C (1 + |xi|)^(-exponent)` over the sample grid
/// `xi = 1, 1.5, ..., 64`. The transform of a smooth compactly supported
/// window decays faster than any power, so the fit holds far beyond the grid.
pub fn decay_fit(w: &SmoothWindow, exponent: i32) -> f64 {
    let mut c: f64 = 0.0;
    let mut xi = 1.0;
    while xi <= 64.0 {
        let t = tilde_transform(w, xi).abs();
        c = c.max(t * (1.0 + xi).powi(exponent));
        xi += 0.5;
    }
    c
}

/// Memoized tilde-transform evaluations for one window.
///
/// Keys are the exact bits of the argument, so arguments that are equal as
/// reals (e.g. `k X / (2n)` for proportional `(k, n)`) share one entry.
/// Concurrent reads after construction are safe; concurrent misses may
/// compute redundantly but return identical values.
pub struct TransformCache {
    window: SmoothWindow,
    rule: GaussLegendre,
    values: RwLock<HashMap<u64, f64>>,
    decay_cubic: OnceLock<f64>,
    decay_octic: OnceLock<f64>,
}

impl TransformCache {
    pub fn new(window: SmoothWindow) -> Self {
        TransformCache {
            window,
            rule: GaussLegendre::default(),
            values: RwLock::new(HashMap::new()),
            decay_cubic: OnceLock::new(),
            decay_octic: OnceLock::new(),
        }
    }

    pub fn window(&self) -> &SmoothWindow {
        &self.window
    }

    /// Cached `tilde_transform(window, xi)`.
    pub fn tilde(&self, xi: f64) -> f64 {
        let key = xi.to_bits();
        if let Some(&v) = self.values.read().expect("cache lock").get(&key) {
            return v;
        }
        let (a, b) = self.window.support();
        let v = self
            .rule
            .integrate(
                |x| {
                    let t = 2.0 * std::f64::consts::PI * xi * x;
                    (t.cos() + t.sin()) * self.window.eval(x)
                },
                a,
                b,
                self.window.tol(),
                initial_panels(a, b, xi),
            )
            .expect("tilde transform converges");
        self.values.write().expect("cache lock").insert(key, v);
        v
    }

    /// Cubic decay-fit constant (used for rigorous tail bounds).
    pub fn decay_cubic(&self) -> f64 {
        *self.decay_cubic.get_or_init(|| decay_fit(&self.window, 3))
    }

    /// Octic decay-fit constant (used to skip negligible evaluations).
    pub fn decay_octic(&self) -> f64 {
        *self.decay_octic.get_or_init(|| decay_fit(&self.window, 8))
    }
}
