//! The smoothed mean square of real character sums and a numerical verifier
//! for the quadratic Poisson summation formula.
//!
//! Two strategies compute the same object: [`mean_square_oracle`] is the slow
//! reference (every Kronecker symbol computed independently), and
//! [`mean_square`] is the production path (per-d prime-symbol tables extended
//! multiplicatively through a least-prime-factor sieve, parallel over blocks
//! of `d` with a fixed reduction order, so results are bit-identical for any
//! thread count).

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::arith::{build_sieves, is_squarefree_trial, kronecker};
use crate::gauss::gauss_exact;
use crate::smoothfn::{SmoothWindow, TransformCache};
use crate::{Error, Result};

/// Budget for the oracle: `X*Y` may not exceed this.
pub const ORACLE_BUDGET: f64 = 1e8;

/// Evaluation strategy recorded in a [`MeanSquareResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Oracle,
    Sieved,
}

/// Result of a mean-square evaluation.
#[derive(Debug, Clone)]
pub struct MeanSquareResult {
    pub x: f64,
    pub y: f64,
    /// The sum `S`; non-negative.
    pub value: f64,
    /// Number of odd square-free `d` with `w(d/X) != 0`.
    pub d_count: u64,
    pub strategy: Strategy,
    pub elapsed: Duration,
}

/// Two-sided Poisson summation check at odd `n`.
#[derive(Debug, Clone)]
pub struct PoissonCheckReport {
    pub n: u64,
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub k_max: u64,
    /// Rigorous bound on the discarded `|k| > k_max` tail of the rhs.
    pub tail_bound: f64,
    pub abs_error: f64,
}

/// Compensated (Kahan) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, v: f64) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

fn check_d(d: u64) -> Result<()> {
    if d == 0 || d.is_multiple_of(2) || !is_squarefree_trial(d) {
        return Err(Error::InvalidD { d });
    }
    Ok(())
}

/// Inner character sum `sum_{1 <= n < Y} (8d/n) phi(n/Y)`.
///
/// Every symbol is computed independently; this is the oracle-grade path.
pub fn inner_sum(d: u64, y: f64, phi: &SmoothWindow) -> Result<f64> {
    check_d(d)?;
    let mut acc = KahanSum::default();
    let m = 8 * d as i64;
    let mut n = 1u64;
    while (n as f64) < y {
        let pv = phi.eval(n as f64 / y);
        if pv != 0.0 {
            let sym = kronecker(m, n as i64)?;
            if sym != 0 {
                acc.add(sym as f64 * pv);
            }
        }
        n += 1;
    }
    Ok(acc.value())
}

fn check_scales(x: f64, y: f64) -> Result<()> {
    if !(x >= 1.0 && y >= 1.0 && x.is_finite() && y.is_finite()) {
        return Err(Error::ScaleOutOfRange { x, y });
    }
    // |inner| <= Y and S <= X*Y^2 must stay exactly summable
    let budget = x * y * y;
    if budget >= 2f64.powi(53) {
        return Err(Error::PrecisionBudget { value: budget });
    }
    Ok(())
}

/// Direct double loop: for each odd square-free `d < X` accumulate
/// `w(d/X) * inner_sum(d, Y, phi)^2`. Square-freeness is decided by trial
/// division and every Kronecker symbol is computed independently.
pub fn mean_square_oracle(
    x: f64,
    y: f64,
    phi: &SmoothWindow,
    w: &SmoothWindow,
) -> Result<MeanSquareResult> {
    check_scales(x, y)?;
    if x * y > ORACLE_BUDGET {
        return Err(Error::OracleBudget {
            xy: x * y,
            budget: ORACLE_BUDGET,
        });
    }
    let start = Instant::now();
    let mut acc = KahanSum::default();
    let mut d_count = 0u64;
    let mut d = 1u64;
    while (d as f64) < x {
        if is_squarefree_trial(d) {
            let wv = w.eval(d as f64 / x);
            if wv != 0.0 {
                d_count += 1;
                let inner = inner_sum(d, y, phi)?;
                acc.add(wv * inner * inner);
            }
        }
        d += 2;
    }
    Ok(MeanSquareResult {
        x,
        y,
        value: acc.value(),
        d_count,
        strategy: Strategy::Oracle,
        elapsed: start.elapsed(),
    })
}

/// Quadratic-residue bitmaps per odd prime: `legendre(r, p)` as a lookup.
struct QrTables {
    primes: Vec<u32>,
    offsets: Vec<usize>,
    bits: Vec<u64>,
}

impl QrTables {
    fn build(primes: &[u32]) -> Self {
        let odd: Vec<u32> = primes.iter().copied().filter(|&p| p > 2).collect();
        let mut offsets = Vec::with_capacity(odd.len() + 1);
        let mut total = 0usize;
        for &p in &odd {
            offsets.push(total);
            total += p as usize;
        }
        offsets.push(total);
        let mut bits = vec![0u64; total / 64 + 1];
        for (i, &p) in odd.iter().enumerate() {
            let p = p as u64;
            let base = offsets[i];
            let mut r = 1u64;
            for x in 1..=(p - 1) / 2 {
                // residues x^2 mod p, stepping (x+1)^2 - x^2 = 2x + 1
                let pos = base + r as usize;
                bits[pos / 64] |= 1u64 << (pos % 64);
                r += 2 * x + 1;
                while r >= p {
                    r -= p;
                }
            }
        }
        QrTables {
            primes: odd,
            offsets,
            bits,
        }
    }

    /// `(v/p_i)` for the i-th odd prime, `v` reduced mod `p_i`.
    #[inline]
    fn legendre(&self, i: usize, v: u64) -> i8 {
        if v == 0 {
            return 0;
        }
        let pos = self.offsets[i] + v as usize;
        if self.bits[pos / 64] >> (pos % 64) & 1 == 1 {
            1
        } else {
            -1
        }
    }
}

/// Sieved mean square: same value as the oracle to within floating-point
/// reassociation, deterministic across thread counts.
///
/// `threads = 0` uses the default parallelism.
pub fn mean_square(
    x: f64,
    y: f64,
    phi: &SmoothWindow,
    w: &SmoothWindow,
    threads: usize,
) -> Result<MeanSquareResult> {
    check_scales(x, y)?;
    let start = Instant::now();
    let x_ceil = x.ceil() as u64;
    let y_ceil = y.ceil() as u64;
    let tables = build_sieves(x_ceil.max(y_ceil).max(4))?;

    // phi values at odd n < Y, indexed by (n-1)/2
    let half_len = (y_ceil as usize).div_ceil(2);
    let mut phi_odd = vec![0.0f64; half_len];
    let (phi_lo, phi_hi) = phi.support();
    let mut n = 1u64;
    while (n as f64) < y {
        let t = n as f64 / y;
        if t > phi_lo && t < phi_hi {
            phi_odd[(n / 2) as usize] = phi.eval(t);
        }
        n += 2;
    }

    // odd primes below Y and their quadratic-residue bitmaps
    let primes: Vec<u32> = tables
        .primes
        .iter()
        .copied()
        .filter(|&p| p > 2 && (p as f64) < y)
        .collect();
    let qr = QrTables::build(&primes);

    // eligible d in increasing order
    let (w_lo, w_hi) = w.support();
    let mut ds: Vec<u64> = Vec::new();
    let mut d = 1u64;
    while (d as f64) < x {
        if tables.squarefree_odd(d) {
            let t = d as f64 / x;
            if t > w_lo && t < w_hi && w.eval(t) != 0.0 {
                ds.push(d);
            }
        }
        d += 2;
    }
    let d_count = ds.len() as u64;

    const BLOCK: usize = 256;
    let blocks: Vec<&[u64]> = ds.chunks(BLOCK).collect();
    let lpf = &tables.least_prime_factor;

    let run = || -> Vec<f64> {
        blocks
            .par_iter()
            .map(|block| {
                let mut sym = vec![0i8; qr.primes.len()];
                let mut chi = vec![0.0f64; half_len];
                let mut acc = KahanSum::default();
                for &d in *block {
                    // chi_{8d}(p) at the odd primes below Y
                    for (i, &p) in qr.primes.iter().enumerate() {
                        let r = (8 * d) % p as u64;
                        sym[i] = qr.legendre(i, r);
                    }
                    // extend multiplicatively over odd n via least prime factors
                    chi[0] = 1.0;
                    let mut n = 3u64;
                    while (n as f64) < y {
                        let p = lpf[n as usize] as u64;
                        let i = qr.primes.binary_search(&(p as u32)).expect("odd prime < Y");
                        chi[(n / 2) as usize] = chi[((n / p) / 2) as usize] * sym[i] as f64;
                        n += 2;
                    }
                    let mut inner = 0.0f64;
                    let mut idx = 0usize;
                    let mut n = 1u64;
                    while (n as f64) < y {
                        inner += chi[idx] * phi_odd[idx];
                        idx += 1;
                        n += 2;
                    }
                    acc.add(w.eval(d as f64 / x) * inner * inner);
                }
                acc.value()
            })
            .collect()
    };

    let block_sums = if threads == 0 {
        run()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(run)
    };

    // fixed ascending combination order: independent of thread count
    let mut total = KahanSum::default();
    for s in block_sums {
        total.add(s);
    }
    Ok(MeanSquareResult {
        x,
        y,
        value: total.value(),
        d_count,
        strategy: Strategy::Sieved,
        elapsed: start.elapsed(),
    })
}

/// Smallest `k_max` whose computed tail bound drops below `target`.
///
/// The tail of the rhs beyond `k_max` is bounded through the fitted cubic
/// decay of the tilde transform and `|G_k(n)| <= n`:
/// `sum_{|k| > K} (X/2n) n C (1 + kX/2n)^{-3} <= C n (1 + K X/(2n))^{-2}`.
pub fn auto_k_max(n: u64, x: f64, cache: &TransformCache, target: f64) -> u64 {
    let c = cache.decay_cubic();
    let a = x / (2.0 * n as f64);
    let k = ((c * n as f64 / target).sqrt() - 1.0) / a;
    (k.max(0.0).ceil() as u64).max(8)
}

fn tail_bound(n: u64, x: f64, k_max: u64, decay_cubic: f64) -> f64 {
    let a = x / (2.0 * n as f64);
    decay_cubic * n as f64 * (1.0 + k_max as f64 * a).powi(-2)
}

/// Two-sided check of the Poisson summation formula at odd `n`:
/// `lhs = sum_{d odd} (d/n) w(d/X)` against
/// `rhs = (X/2n)(2/n) sum_{|k| <= k_max} (-1)^k G_k(n) wtilde(kX/2n)`.
pub fn poisson_check(n: u64, x: f64, w: &SmoothWindow, k_max: u64) -> Result<PoissonCheckReport> {
    let cache = TransformCache::new(*w);
    poisson_check_cached(n, x, &cache, k_max)
}

/// As [`poisson_check`], sharing a transform cache across calls.
pub fn poisson_check_cached(
    n: u64,
    x: f64,
    cache: &TransformCache,
    k_max: u64,
) -> Result<PoissonCheckReport> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::OddModulusRequired { k: n as i64 });
    }
    let w = cache.window();
    let c3 = cache.decay_cubic();
    let tail = tail_bound(n, x, k_max, c3);
    if tail > 1e-6 {
        return Err(Error::TailBoundTooLarge { bound: tail, k_max });
    }

    // lhs over odd d in the support of w
    let (w_lo, w_hi) = w.support();
    let mut lhs = KahanSum::default();
    let mut d = 1u64;
    while (d as f64) < w_hi * x + 1.0 {
        let t = d as f64 / x;
        if t > w_lo && t < w_hi {
            let sym = kronecker(d as i64, n as i64)?;
            if sym != 0 {
                lhs.add(sym as f64 * w.eval(t));
            }
        }
        d += 2;
    }

    // rhs: k = 0 term plus symmetric pairs, with negligible evaluations
    // skipped under the octic decay fit (total skipped mass < 1e-12 here)
    let tables = build_sieves(n.clamp(4, 1 << 20))?;
    let c8 = cache.decay_octic();
    let a = x / (2.0 * n as f64);
    let skip = |xi: f64| x * 0.5 * c8 * (1.0 + xi.abs()).powi(-8) < 1e-15;
    let mut rhs = KahanSum::default();
    let g0 = gauss_exact(0, n, &tables)?;
    if !g0.is_zero() {
        rhs.add(g0.to_f64() * cache.tilde(0.0));
    }
    for k in 1..=k_max {
        let xi = k as f64 * a;
        if skip(xi) {
            break; // the octic bound is monotone in k from here on
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let g_pos = gauss_exact(k as i64, n, &tables)?;
        if !g_pos.is_zero() {
            rhs.add(sign * g_pos.to_f64() * cache.tilde(xi));
        }
        let g_neg = gauss_exact(-(k as i64), n, &tables)?;
        if !g_neg.is_zero() {
            rhs.add(sign * g_neg.to_f64() * cache.tilde(-xi));
        }
    }
    let two_on_n = kronecker(2, n as i64)? as f64;
    let rhs = x / (2.0 * n as f64) * two_on_n * rhs.value();

    Ok(PoissonCheckReport {
        n,
        x,
        lhs: lhs.value(),
        rhs,
        k_max,
        tail_bound: tail,
        abs_error: (lhs.value() - rhs).abs(),
    })
}
