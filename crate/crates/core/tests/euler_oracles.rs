//! Definitional oracle for the Z3 local factors: the raw triple series over
//! `(k2, n1, n2)` with `G_{p^{2k2}}(p^{n1+n2})` evaluated from the five-case
//! prime-power table, summed directly and compared against the closed-form
//! pre-limit factor. The case logic here is written independently of the
//! library and is additionally cross-checked against `gauss_exact` wherever
//! the arguments are representable as machine integers.

use meansq_core::arith::build_sieves;
use meansq_core::euler::z3_pre_limit_factor;
use meansq_core::gauss::gauss_exact;

/// `G_{p^(2 k2)}(p^i) / p^i` from the five cases, normalized so no huge
/// prime powers are ever materialized. With `m = p^(2 k2)` the `p`-valuation
/// of `m` is `a = 2 k2` (infinite for the empty case never needed here:
/// `k2 = 0` gives `m = 1`, `a = 0`), and the leading symbol in the radical
/// case is `((m/p^a)/p) = ((k2')^2/p) = 1`.
fn g_normalized(p: f64, k2: u32, i: u32) -> f64 {
    let a = 2 * k2;
    if i == 0 {
        return 1.0; // G_m(1) = 1
    }
    if i <= a {
        if i.is_multiple_of(2) {
            1.0 - 1.0 / p // phi(p^i)/p^i
        } else {
            0.0
        }
    } else if i == a + 1 {
        if i.is_multiple_of(2) {
            -p.powi(a as i32 - i as i32) // -p^a / p^i
        } else {
            p.powi(a as i32 - i as i32) * p.sqrt()
        }
    } else {
        0.0
    }
}

/// Direct triple sum `S_p(gamma)` with multiplicity `i + 1` for `n1+n2 = i`.
fn s_p_direct(p: u64, gamma: f64, i_max: u32, k2_max: u32) -> f64 {
    let pf = p as f64;
    let mut sum = 0.0f64;
    for k2 in 0..=k2_max {
        for i in 0..=i_max {
            let g = g_normalized(pf, k2, i);
            if g == 0.0 {
                continue;
            }
            let weight = pf.powf(-(i as f64) / 2.0 - 2.0 * k2 as f64 * gamma);
            sum += (i as f64 + 1.0) * weight * g;
        }
    }
    sum
}

#[test]
fn five_case_logic_matches_gauss_exact_where_representable() {
    let tables = build_sieves(1 << 20).unwrap();
    for &p in &[3u64, 5, 7, 11] {
        for k2 in 0..=6u32 {
            let m = (p as i64).checked_pow(2 * k2);
            for i in 0..=6u32 {
                let k = p.checked_pow(i);
                if let (Some(m), Some(k)) = (m, k) {
                    if k > tables.limit {
                        continue;
                    }
                    let lib = gauss_exact(m, k, &tables).unwrap().to_f64() / k as f64;
                    let local = g_normalized(p as f64, k2, i);
                    assert!(
                        (lib - local).abs() <= 1e-12 * lib.abs().max(1.0),
                        "case mismatch at p={p}, k2={k2}, i={i}: {lib} vs {local}"
                    );
                }
            }
        }
    }
}

#[test]
fn triple_sum_oracle_at_quarter() {
    // acceptance-grade check: gamma = 0.25, p in {3, 5, 7}, agreement 1e-10
    let gamma = 0.25;
    for &p in &[3u64, 5, 7] {
        let pf = p as f64;
        let direct = s_p_direct(p, gamma, 120, 120);
        let pre = (1.0 - pf.powf(-2.0 * gamma))
            * (1.0 - pf.powf(-1.0 - 2.0 * gamma))
            * (1.0 - 1.0 / pf).powi(2)
            * direct;
        let closed = z3_pre_limit_factor(p, gamma).unwrap();
        assert!(
            (pre - closed).abs() < 1e-10,
            "triple-sum oracle failed at p={p}: direct {pre} vs closed {closed}"
        );
    }
}

#[test]
fn triple_sum_oracle_along_gamma() {
    // the same identity away from the test point, at looser truncation
    for &gamma in &[0.4, 0.6, 1.0] {
        for &p in &[3u64, 5] {
            let pf = p as f64;
            let direct = s_p_direct(p, gamma, 140, 140);
            let pre = (1.0 - pf.powf(-2.0 * gamma))
                * (1.0 - pf.powf(-1.0 - 2.0 * gamma))
                * (1.0 - 1.0 / pf).powi(2)
                * direct;
            let closed = z3_pre_limit_factor(p, gamma).unwrap();
            assert!(
                (pre - closed).abs() < 1e-10,
                "oracle failed at p={p}, gamma={gamma}: {pre} vs {closed}"
            );
        }
    }
}
