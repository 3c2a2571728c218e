//! Verification suites behind `meansq verify <suite>`: each runs one family
//! of identities at full scale and reports per-check pass/fail lines.

use meansq_core::arith::{build_sieves, factorize, kronecker};
use meansq_core::charsum::{auto_k_max, mean_square, mean_square_oracle, poisson_check_cached};
use meansq_core::euler::{c2_a_sum, z2_at_half, z3_at_zero, z3_pre_limit_factor};
use meansq_core::gauss::{gauss_exact, gauss_naive_batch, RadicalValue};
use meansq_core::smoothfn::{SmoothWindow, TransformCache};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub comparisons: u64,
    pub checks: Vec<CheckLine>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            comparisons: 0,
            checks: Vec::new(),
            pass: true,
        }
    }

    fn check(&mut self, label: &str, pass: bool, detail: String) {
        self.pass &= pass;
        self.checks.push(CheckLine {
            label: label.into(),
            pass,
            detail,
        });
    }

    pub fn print_human(&self) {
        println!("suite {} ({} comparisons)", self.suite, self.comparisons);
        for c in &self.checks {
            println!(
                "  [{}] {} — {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.label,
                c.detail
            );
        }
    }
}

/// Gauss-sum suite: definitional vs exact values over the full grid, the
/// prime-power table cases, the four-torsion identity, square detection.
pub fn run_gauss_suite() -> SuiteReport {
    let mut report = SuiteReport::new("gauss");
    let tables = build_sieves(10_000).unwrap();
    let ms: Vec<i64> = (-50..=50).collect();

    // definitional oracle agreement, odd k <= 3465, |m| <= 50
    let mut count = 0u64;
    let mut max_scaled = 0.0f64;
    let mut max_im = 0.0f64;
    let mut magnitude_ok = true;
    for k in (1..=3465u64).step_by(2) {
        let naive = gauss_naive_batch(&ms, k).unwrap();
        let tol = 1e-6 * (k as f64).sqrt().max(1.0);
        for (i, &m) in ms.iter().enumerate() {
            let exact = gauss_exact(m, k, &tables).unwrap().to_f64();
            let diff = (naive[i].re - exact).abs();
            max_scaled = max_scaled.max(diff / tol);
            max_im = max_im.max(naive[i].im.abs() / (1e-9 * k as f64));
            magnitude_ok &= exact.abs() <= k as f64 * (1.0 + 1e-12);
            count += 1;
        }
    }
    report.comparisons += count;
    report.check(
        "naive vs exact (odd k <= 3465, |m| <= 50)",
        max_scaled < 1.0 && max_im < 1.0,
        format!(
            "{count} pairs, worst |diff|/tol = {max_scaled:.3e}, worst Im ratio = {max_im:.3e}"
        ),
    );
    report.check(
        "magnitude bound |G_m(k)| <= k",
        magnitude_ok,
        format!("{count} pairs"),
    );

    // prime-power table: all five cases for p^b <= 1e4, a up to 6 (capped by
    // i64 representability of m = u * p^a), units of both signs
    let mut table_ok = true;
    let mut table_count = 0u64;
    let mut worst = String::new();
    for &p in tables.primes.iter().filter(|&&p| p > 2) {
        let p = p as u64;
        let mut b = 1u32;
        let mut pb = p;
        while pb <= 10_000 {
            for a in 0..=6u32 {
                let pa = match (p as i64).checked_pow(a) {
                    Some(v) => v,
                    None => break,
                };
                for u in [1i64, -1, 3, -5] {
                    if u.unsigned_abs() % p == 0 {
                        continue;
                    }
                    let m = match pa.checked_mul(u) {
                        Some(v) => v,
                        None => continue,
                    };
                    let got = gauss_exact(m, pb, &tables).unwrap();
                    let want = lemma_prime_power_case(p, b, a, m);
                    table_count += 1;
                    if got != want {
                        table_ok = false;
                        if worst.is_empty() {
                            worst = format!("first mismatch at p={p}, b={b}, m={m}");
                        }
                    }
                }
            }
            b += 1;
            pb = match pb.checked_mul(p) {
                Some(v) if v <= 10_000 => v,
                _ => break,
            };
        }
    }
    report.comparisons += table_count;
    report.check(
        "five-case prime-power table (p^b <= 1e4, a <= 6)",
        table_ok,
        if table_ok {
            format!("{table_count} cases exact")
        } else {
            worst.clone()
        },
    );

    // a = infinity row: G_0(k) = phi(k) iff k an odd square, else 0
    let mut zero_ok = true;
    for k in (1..=9_999u64).step_by(2) {
        let got = gauss_exact(0, k, &tables).unwrap();
        let root = (k as f64).sqrt().round() as u64;
        let want = if root * root == k {
            let mut phi = k;
            for (q, _) in factorize(k, &tables) {
                phi = phi / q * (q - 1);
            }
            RadicalValue::integer(phi as i64)
        } else {
            RadicalValue::ZERO
        };
        zero_ok &= got == want;
    }
    report.comparisons += 5_000;
    report.check(
        "G_0(k) = phi(k) iff k odd square (k <= 1e4)",
        zero_ok,
        "exhaustive".into(),
    );

    // four-torsion: G_j(n) = G_{4j}(n) for odd n
    let mut torsion_ok = true;
    let mut torsion_count = 0u64;
    for n in (1..=999u64).step_by(2) {
        for j in -100i64..=100 {
            torsion_ok &=
                gauss_exact(j, n, &tables).unwrap() == gauss_exact(4 * j, n, &tables).unwrap();
            torsion_count += 1;
        }
    }
    report.comparisons += torsion_count;
    report.check(
        "four-torsion G_j(n) = G_4j(n) (odd n <= 1e3, |j| <= 100)",
        torsion_ok,
        format!("{torsion_count} pairs"),
    );
    report
}

/// Expected `G_m(p^b)` per the five-case table, written independently of the
/// library implementation. `m` must have p-valuation exactly `a`.
fn lemma_prime_power_case(p: u64, b: u32, a: u32, m: i64) -> RadicalValue {
    if b <= a {
        if b.is_multiple_of(2) {
            RadicalValue::integer((p.pow(b) - p.pow(b - 1)) as i64)
        } else {
            RadicalValue::ZERO
        }
    } else if b == a + 1 {
        let pa = p.pow(a) as i64;
        if b.is_multiple_of(2) {
            RadicalValue::integer(-pa)
        } else {
            let sym = kronecker(m / pa, p as i64).unwrap();
            RadicalValue::new(sym as i64 * pa, p)
        }
    } else {
        RadicalValue::ZERO
    }
}

/// Poisson suite: the summation identity at every odd n <= 199 for
/// X in {100, 1000}, with computed tail bounds below 1e-8.
pub fn run_poisson_suite() -> SuiteReport {
    let mut report = SuiteReport::new("poisson");
    let cache = TransformCache::new(SmoothWindow::standard());
    let mut count = 0u64;
    let mut worst_err = 0.0f64;
    let mut worst_tail = 0.0f64;
    let mut all_ok = true;
    for &x in &[100.0, 1000.0] {
        for n in (1..=199u64).step_by(2) {
            let k_max = auto_k_max(n, x, &cache, 1e-8);
            let rep = poisson_check_cached(n, x, &cache, k_max).unwrap();
            worst_err = worst_err.max(rep.abs_error);
            worst_tail = worst_tail.max(rep.tail_bound);
            all_ok &= rep.abs_error < 1e-6 && rep.tail_bound < 1e-8;
            count += 1;
        }
    }
    report.comparisons = count;
    report.check(
        "two-sided identity (odd n <= 199, X in {100, 1000})",
        all_ok,
        format!("{count} checks, worst |lhs-rhs| = {worst_err:.3e}, worst tail bound = {worst_tail:.3e}"),
    );
    report
}

/// Oracle suite: sieved strategy against the direct oracle on a 20-point
/// grid, plus bit-identical results across thread counts.
pub fn run_oracle_suite() -> SuiteReport {
    let mut report = SuiteReport::new("oracle");
    let phi = SmoothWindow::standard();
    let w = SmoothWindow::standard();
    let mut worst_rel = 0.0f64;
    let mut grid_ok = true;
    let mut count = 0u64;
    for &x in &[100.0, 200.0, 300.0, 400.0, 500.0] {
        for &y in &[50.0, 100.0, 150.0, 200.0] {
            let oracle = mean_square_oracle(x, y, &phi, &w).unwrap();
            let sieved = mean_square(x, y, &phi, &w, 0).unwrap();
            let rel = (oracle.value - sieved.value).abs() / oracle.value.abs().max(1e-300);
            worst_rel = worst_rel.max(rel);
            grid_ok &= rel < 1e-9 && oracle.d_count == sieved.d_count;
            count += 1;
        }
    }
    report.comparisons = count;
    report.check(
        "sieved vs oracle on 20-point grid (X <= 500, Y <= 200)",
        grid_ok,
        format!("worst relative difference {worst_rel:.3e}"),
    );

    let r1 = mean_square(500.0, 200.0, &phi, &w, 1).unwrap();
    let r4 = mean_square(500.0, 200.0, &phi, &w, 4).unwrap();
    let r8 = mean_square(500.0, 200.0, &phi, &w, 8).unwrap();
    let identical =
        r1.value.to_bits() == r4.value.to_bits() && r1.value.to_bits() == r8.value.to_bits();
    report.check(
        "bit-identical across thread counts {1, 4, 8}",
        identical,
        format!("value = {}", r1.value),
    );
    report
}

/// Euler suite: cutoff-doubling stability of the three constants and the
/// definitional triple-sum oracle for the Z3 local factor.
pub fn run_euler_suite() -> SuiteReport {
    let mut report = SuiteReport::new("euler");

    let z2a = z2_at_half(10_000).unwrap();
    let z2b = z2_at_half(20_000).unwrap();
    let z2_rel = (z2b.value - z2a.value).abs() / z2a.value.abs();
    report.check(
        "Z2(1/2,1/2) stable under cutoff doubling 1e4 -> 2e4",
        z2_rel < 1e-6,
        format!("value {} rel change {z2_rel:.3e}", z2a.value),
    );

    let z3a = z3_at_zero(1, 10_000).unwrap();
    let z3b = z3_at_zero(1, 20_000).unwrap();
    let z3_rel = (z3b.value - z3a.value).abs() / z3a.value.abs();
    report.check(
        "Z3(0;1) stable under cutoff doubling 1e4 -> 2e4",
        z3_rel < 1e-6,
        format!("value {} rel change {z3_rel:.3e}", z3a.value),
    );

    let ca = c2_a_sum(1_000, 10_000).unwrap();
    let cb = c2_a_sum(2_000, 20_000).unwrap();
    let c_rel = (cb.value - ca.value).abs() / ca.value.abs();
    report.check(
        "a-sum stable under doubling (a_max 1e3 -> 2e3, cutoff 1e4 -> 2e4)",
        c_rel < 1e-6,
        format!("value {} rel change {c_rel:.3e}", ca.value),
    );
    let route_rel = (ca.direct_partial - ca.value).abs() / ca.value.abs();
    report.check(
        "direct vs accelerated route (coarse, a_max = 1e3)",
        route_rel < 1e-4,
        format!("rel {route_rel:.3e}"),
    );

    // definitional triple-sum oracle at gamma = 0.25
    let gamma = 0.25;
    let mut oracle_ok = true;
    let mut worst = 0.0f64;
    for &p in &[3u64, 5, 7] {
        let pf = p as f64;
        let direct = z3_triple_sum_direct(p, gamma, 120, 120);
        let pre = (1.0 - pf.powf(-2.0 * gamma))
            * (1.0 - pf.powf(-1.0 - 2.0 * gamma))
            * (1.0 - 1.0 / pf).powi(2)
            * direct;
        let closed = z3_pre_limit_factor(p, gamma).unwrap();
        let err = (pre - closed).abs();
        worst = worst.max(err);
        oracle_ok &= err < 1e-10;
    }
    report.check(
        "triple-sum oracle at gamma = 1/4, p in {3,5,7}",
        oracle_ok,
        format!("worst |direct - closed| = {worst:.3e}"),
    );
    report.comparisons = 8;
    report
}

/// Raw triple series over `(k2, n1, n2)` for the Z3 local factor, with the
/// Gauss values taken from the five-case table in normalized form
/// `G_{p^(2 k2)}(p^i) / p^i` so no huge prime powers are materialized.
pub fn z3_triple_sum_direct(p: u64, gamma: f64, i_max: u32, k2_max: u32) -> f64 {
    let pf = p as f64;
    let g_norm = |k2: u32, i: u32| -> f64 {
        let a = 2 * k2;
        if i == 0 {
            1.0
        } else if i <= a {
            if i.is_multiple_of(2) {
                1.0 - 1.0 / pf
            } else {
                0.0
            }
        } else if i == a + 1 {
            let scale = pf.powi(a as i32 - i as i32);
            if i.is_multiple_of(2) {
                -scale
            } else {
                scale * pf.sqrt()
            }
        } else {
            0.0
        }
    };
    let mut sum = 0.0f64;
    for k2 in 0..=k2_max {
        for i in 0..=i_max {
            let g = g_norm(k2, i);
            if g != 0.0 {
                sum += (i as f64 + 1.0) * pf.powf(-(i as f64) / 2.0 - 2.0 * k2 as f64 * gamma) * g;
            }
        }
    }
    sum
}

/// Run one named suite, or all of them.
pub fn run_suite(name: &str) -> Option<Vec<SuiteReport>> {
    match name {
        "gauss" => Some(vec![run_gauss_suite()]),
        "poisson" => Some(vec![run_poisson_suite()]),
        "oracle" => Some(vec![run_oracle_suite()]),
        "euler" => Some(vec![run_euler_suite()]),
        "all" => Some(vec![
            run_gauss_suite(),
            run_poisson_suite(),
            run_oracle_suite(),
            run_euler_suite(),
        ]),
        _ => None,
    }
}
