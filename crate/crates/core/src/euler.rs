//! Dirichlet-series constants of the mean-square prediction: the Euler
//! products `Z2(1/2, 1/2)` and `Z3(0; a)`, the Möbius-weighted a-sum, the
//! constants `C1`, `C2`, and the two-term prediction itself.
//!
//! Every product is evaluated as an explicit product over primes up to a
//! cutoff, multiplied by an analytic tail correction: the log of each local
//! factor is an explicit rational in `p` whose expansion in `1/p` starts at
//! `1/p^2`, so the omitted `p > cutoff` mass equals a short series in
//! prime-zeta tails. This pins the values to ~1e-12 at cutoffs where the raw
//! truncated product would still be drifting at the 1e-5 level.

use crate::arith::{build_sieves, factorize};
use crate::charsum::KahanSum;
use crate::smoothfn::{h1_tilde_half, SmoothWindow};
use crate::{Error, Result};

/// `zeta(0)`, exact.
pub const ZETA_ZERO: f64 = -0.5;

/// Prime zeta values `P(k) = sum_p p^(-k)` for `k = 2..=14`.
const PRIME_ZETA: [f64; 13] = [
    0.4522474200410655,     // P(2)
    0.17476263929944352,    // P(3)
    0.07699313976424685,    // P(4)
    0.035755017483924255,   // P(5)
    0.017070086850636514,   // P(6)
    0.008283832856133592,   // P(7)
    0.0040614053665178305,  // P(8)
    0.0020044675749624507,  // P(9)
    0.0009936035744369802,  // P(10)
    0.000493947269104655,   // P(11)
    0.0002460264700345457,  // P(12)
    0.00012269836752786927, // P(13)
    6.124439672546448e-5,   // P(14)
];

/// Coefficients of `ln f(p) = sum_k a_k p^(-k)`, `k = 2..=14`, for the three
/// local-factor families below (exact rational expansions, frozen as f64).
const LOG_SERIES_Z2: [f64; 13] = [
    -4.0,
    7.0,
    -16.0,
    36.0,
    -85.83333333333333, // -515/6
    208.0,
    -516.0,
    1298.3333333333333, // 3895/3
    -3308.8,            // -16544/5
    8516.0,
    -22101.583333333332, // -265219/12
    57760.0,
    -151848.57142857142, // -1062940/7
];

const LOG_SERIES_Z3: [f64; 13] = [
    -4.0,
    4.0,
    -9.0,
    16.0,
    -33.333333333333336, // -100/3
    68.0,
    -144.5,            // -289/2
    309.3333333333333, // 928/3
    -672.8,            // -3364/5
    1476.0,
    -3267.0,
    7280.0,
    -16320.571428571428, // -114244/7
];

const LOG_SERIES_C2_ACC: [f64; 13] = [
    -1.0,
    3.0,
    -7.5,
    20.0,
    -52.833333333333336, // -317/6
    140.0,
    -371.75, // -1487/4
    989.0,
    -2636.2, // -13181/5
    7040.0,
    -18834.75, // -75339/4
    50480.0,
    -135528.14285714286, // -948697/7
];

/// A numerically evaluated Euler product.
#[derive(Debug, Clone, Copy)]
pub struct EulerProductValue {
    /// Tail-corrected value.
    pub value: f64,
    /// Plain product over primes up to the cutoff, no correction.
    pub raw_product: f64,
    pub prime_cutoff: u64,
    /// Bound on the relative uncertainty left after the correction
    /// (series remainder plus floating-point accumulation).
    pub tail_estimate: f64,
}

/// The Möbius-weighted a-sum, both evaluation routes.
#[derive(Debug, Clone, Copy)]
pub struct ASumValue {
    /// Converged value via the Euler-product acceleration.
    pub value: f64,
    /// Direct truncated sum over odd square-free `a <= a_max`.
    pub direct_partial: f64,
    pub a_max: u64,
    pub prime_cutoff: u64,
}

/// The constants of the prediction together with their ingredients.
#[derive(Debug, Clone, Copy)]
pub struct Constants {
    pub c1: f64,
    pub c2: f64,
    pub h1_tilde: f64,
    pub z2: EulerProductValue,
    pub c2_sum: ASumValue,
}

/// Main-term prediction at scales `(X, Y)`.
#[derive(Debug, Clone, Copy)]
pub struct Prediction {
    pub c1: f64,
    pub c2: f64,
    pub x: f64,
    pub y: f64,
    /// `C1 * X * Y * ln Y`
    pub term1: f64,
    /// `C2 * X * Y * ln(Y^2/X)`
    pub term2: f64,
    pub total: f64,
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut f = 3u64;
    while f * f <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

fn require_odd_prime(p: u64) -> Result<()> {
    if !is_odd_prime(p) {
        return Err(Error::NotAnOddPrime { p });
    }
    Ok(())
}

/// Local factor of `Z2` at an odd prime: the local sum over pairs
/// `(n1, n2)` with `n1 + n2` even, weighted `p/(p+1)`, times the
/// zeta-normalizers `(1-p^(-2u))(1-p^(-2v))(1-p^(-u-v))`.
pub fn z2_local_factor(p: u64, u: f64, v: f64) -> Result<f64> {
    require_odd_prime(p)?;
    if !(u > 0.25 && v > 0.25) {
        return Err(Error::InvalidEulerInput {
            reason: format!("need u, v > 1/4 for absolute convergence, got ({u}, {v})"),
        });
    }
    let pf = p as f64;
    let x2u = pf.powf(-2.0 * u);
    let x2v = pf.powf(-2.0 * v);
    let xuv = pf.powf(-(u + v));
    let weight = pf / (pf + 1.0);
    let local = 1.0 + weight * ((1.0 + xuv) / ((1.0 - x2u) * (1.0 - x2v)) - 1.0);
    Ok(local * (1.0 - x2u) * (1.0 - x2v) * (1.0 - xuv))
}

/// Exact rational form of `z2_local_factor(p, 1/2, 1/2)`:
/// `1 - (4p^2 - 3p + 1) / (p^3 (p + 1))`.
fn z2_local_half(pf: f64) -> f64 {
    1.0 - (4.0 * pf * pf - 3.0 * pf + 1.0) / (pf * pf * pf * (pf + 1.0))
}

/// Generic local factor of `Z3` in the limit `gamma -> 0+`:
/// `1 - (2p - 1)^2 / p^4`.
pub fn z3_local_factor_limit(p: u64) -> Result<f64> {
    require_odd_prime(p)?;
    Ok(z3_generic_limit(p as f64))
}

fn z3_generic_limit(pf: f64) -> f64 {
    let t = (2.0 * pf - 1.0) / (pf * pf);
    1.0 - t * t
}

/// Non-generic local factor (p = 2 or p | a) in the same limit: `(1-1/p)^3`.
pub fn z3_nongeneric_limit(p: u64) -> f64 {
    let pf = p as f64;
    (1.0 - 1.0 / pf).powi(3)
}

/// The normalized generic local factor before the limit:
/// `(1-p^(-2g))(1-p^(-1-2g)) (1-1/p)^2 S_p(g)` with the local triple sum
/// `S_p` in closed form (geometric series summed exactly). Only the terms
/// carrying the `1/(1-p^(-2g))` pole survive as `g -> 0+`.
pub fn z3_pre_limit_factor(p: u64, gamma: f64) -> Result<f64> {
    require_odd_prime(p)?;
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidEulerInput {
            reason: format!("need gamma > 0, got {gamma}"),
        });
    }
    let pf = p as f64;
    let x = pf.powf(-2.0 * gamma);
    let t = pf.powf(-1.0 - 2.0 * gamma);
    let s = 1.0 / (1.0 - x)
        + 2.0 / pf
        + (1.0 - 1.0 / pf) * t * (3.0 - t) / ((1.0 - x) * (1.0 - t) * (1.0 - t))
        + (2.0 / pf) * (1.0 / ((1.0 - t) * (1.0 - t)) - 1.0);
    Ok((1.0 - x) * (1.0 - t) * (1.0 - 1.0 / pf) * (1.0 - 1.0 / pf) * s)
}

/// Shared driver: product of `local(p)` over odd primes `p <= cutoff`
/// (skipping `skip_primes`), times the analytic tail correction from the
/// given log-series coefficients.
fn corrected_product(
    cutoff: u64,
    series: &[f64; 13],
    skip_primes: &[u64],
    local: impl Fn(f64) -> f64,
) -> Result<(f64, f64, f64)> {
    if cutoff < 1000 {
        return Err(Error::InvalidEulerInput {
            reason: format!("prime cutoff {cutoff} below the supported minimum 1000"),
        });
    }
    let tables = build_sieves(cutoff)?;
    let mut raw = 1.0f64;
    // partial prime-zeta sums over ALL primes <= cutoff (p = 2 included)
    let mut partial = [0.0f64; 13];
    for &p in &tables.primes {
        let pf = p as f64;
        let inv = 1.0 / pf;
        let mut pk = inv * inv;
        for s in partial.iter_mut() {
            *s += pk;
            pk *= inv;
        }
        if p > 2 && !skip_primes.contains(&(p as u64)) {
            raw *= local(pf);
        }
    }
    let mut corr = 0.0f64;
    for k in 0..13 {
        corr += series[k] * (PRIME_ZETA[k] - partial[k]);
    }
    // uncertainty: series remainder beyond 1/p^14 (coefficients grow like
    // ~3^k, so the remainder is (3/cutoff)^15-scale) plus f64 accumulation
    // over ~cutoff/ln(cutoff) factors
    let tail_estimate =
        (3.0 / cutoff as f64).powi(15) + 4.0 * f64::EPSILON * tables.primes.len() as f64;
    Ok((raw * corr.exp(), raw, tail_estimate))
}

/// `Z2(1/2, 1/2)`: the `p = 2` factor is the bare zeta-normalizer `1/8`,
/// the odd primes contribute [`z2_local_factor`].
pub fn z2_at_half(prime_cutoff: u64) -> Result<EulerProductValue> {
    let (value, raw, tail) = corrected_product(prime_cutoff, &LOG_SERIES_Z2, &[], z2_local_half)?;
    Ok(EulerProductValue {
        value: 0.125 * value,
        raw_product: 0.125 * raw,
        prime_cutoff,
        tail_estimate: tail,
    })
}

/// `Z3(0; a)` for odd square-free `a`: generic limits at primes away from
/// `2a`, the degenerate `(1-1/p)^3` at `p = 2` and `p | a`.
pub fn z3_at_zero(a: u64, prime_cutoff: u64) -> Result<EulerProductValue> {
    if a == 0 || a.is_multiple_of(2) || !crate::arith::is_squarefree_trial(a) {
        return Err(Error::InvalidEulerInput {
            reason: format!("a = {a} must be odd, positive and square-free"),
        });
    }
    if a > prime_cutoff {
        return Err(Error::InvalidEulerInput {
            reason: format!("a = {a} exceeds the prime cutoff {prime_cutoff}"),
        });
    }
    let a_primes: Vec<u64> = if a == 1 {
        Vec::new()
    } else {
        let t = build_sieves(a.max(4))?;
        factorize(a, &t).into_iter().map(|(p, _)| p).collect()
    };
    let (value, raw, tail) =
        corrected_product(prime_cutoff, &LOG_SERIES_Z3, &a_primes, z3_generic_limit)?;
    let mut nongen = 0.125; // p = 2
    for &p in &a_primes {
        nongen *= z3_nongeneric_limit(p);
    }
    Ok(EulerProductValue {
        value: nongen * value,
        raw_product: nongen * raw,
        prime_cutoff,
        tail_estimate: tail,
    })
}

/// The a-sum `sum over odd square-free a of mu(a) Z3(0; a) / a^2`.
///
/// `value` carries the converged Euler-product acceleration
/// `Z3(0;1) * prod_p (1 - r_p / p^2)` with `r_p` the non-generic/generic
/// factor ratio; `direct_partial` is the plain truncated sum up to `a_max`,
/// kept as the independent cross-check route.
pub fn c2_a_sum(a_max: u64, prime_cutoff: u64) -> Result<ASumValue> {
    if a_max < 1 {
        return Err(Error::InvalidEulerInput {
            reason: "a_max must be >= 1".into(),
        });
    }
    if a_max > prime_cutoff {
        return Err(Error::InvalidEulerInput {
            reason: format!("a_max = {a_max} exceeds the prime cutoff {prime_cutoff}"),
        });
    }
    let z3_one = z3_at_zero(1, prime_cutoff)?;

    // direct route: mu(a) Z3(0;a) / a^2 with Z3(0;a) = Z3(0;1) prod ratio_p
    let tables = build_sieves(a_max.max(4))?;
    let ratio = |p: u64| z3_nongeneric_limit(p) / z3_generic_limit(p as f64);
    let mut direct = KahanSum::default();
    let mut a = 1u64;
    while a <= a_max {
        if tables.squarefree_odd(a) {
            let mut term = z3_one.value / (a as f64 * a as f64);
            if tables.mobius(a) < 0 {
                term = -term;
            }
            let mut rest = a;
            while rest > 1 {
                let p = tables.least_prime_factor[rest as usize] as u64;
                term *= ratio(p);
                rest /= p;
            }
            direct.add(term);
        }
        a += 2;
    }

    // accelerated route
    let (acc, _, _) = corrected_product(prime_cutoff, &LOG_SERIES_C2_ACC, &[], |pf| {
        1.0 - z3_nongeneric_limit(pf as u64) / z3_generic_limit(pf) / (pf * pf)
    })?;

    Ok(ASumValue {
        value: z3_one.value * acc,
        direct_partial: direct.value(),
        a_max,
        prime_cutoff,
    })
}

/// The constants of the prediction:
/// `C1 = (1/pi^2) h1_tilde(1/2,1/2) Z2(1/2,1/2)` and
/// `C2 = (1/4) zeta(0) h1_tilde(1/2,1/2) sum_a mu(a) Z3(0;a)/a^2`.
pub fn constants(
    phi: &SmoothWindow,
    w: &SmoothWindow,
    prime_cutoff: u64,
    a_max: u64,
) -> Result<Constants> {
    let h1 = h1_tilde_half(phi, w);
    let z2 = z2_at_half(prime_cutoff)?;
    let c2_sum = c2_a_sum(a_max, prime_cutoff)?;
    let c1 = h1 * z2.value / (std::f64::consts::PI * std::f64::consts::PI);
    let c2 = 0.25 * ZETA_ZERO * h1 * c2_sum.value;
    Ok(Constants {
        c1,
        c2,
        h1_tilde: h1,
        z2,
        c2_sum,
    })
}

/// Fill the two main terms at `(X, Y)`; requires `Y <= X <= Y^2`.
pub fn predict(c1: f64, c2: f64, x: f64, y: f64) -> Result<Prediction> {
    if !(y <= x && x <= y * y) || !x.is_finite() || !y.is_finite() || y < 1.0 {
        return Err(Error::RegionViolation { x, y });
    }
    let term1 = c1 * x * y * y.ln();
    let term2 = c2 * x * y * (y * y / x).ln();
    Ok(Prediction {
        c1,
        c2,
        x,
        y,
        term1,
        term2,
        total: term1 + term2,
    })
}
