//! Exact integer arithmetic: Kronecker symbols, linear sieves, factorization.

use crate::{Error, Result};

/// Largest sieve limit accepted by [`build_sieves`]. At ~5.1 bytes per entry
/// this keeps the tables within ~1 GB.
pub const MAX_SIEVE_LIMIT: u64 = 200_000_000;

/// `(2/b)` for odd `b`, indexed by `b & 7`.
const TAB2: [i32; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

/// Kronecker symbol `(m/n)` with the standard conventions for `n = 0`,
/// negative `n` and even `n`. Completely multiplicative in each argument;
/// zero iff `gcd(m, n) > 1`.
///
/// Binary algorithm, no factorization: `O(log^2)` bit operations.
pub fn kronecker(m: i64, n: i64) -> Result<i32> {
    if m == 0 && n == 0 {
        return Err(Error::KroneckerUndefined);
    }
    let mut a = m;
    let mut b = n;
    if b == 0 {
        return Ok(if a == 1 || a == -1 { 1 } else { 0 });
    }
    if a & 1 == 0 && b & 1 == 0 {
        return Ok(0);
    }
    // strip the even part of b; (m/2) contributes via TAB2
    let mut v = 0u32;
    while b & 1 == 0 {
        v += 1;
        b >>= 1;
    }
    let mut k = if v & 1 == 0 {
        1
    } else {
        TAB2[(a & 7) as usize]
    };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    // invariant below: b odd and positive
    loop {
        a = a.rem_euclid(b);
        if a == 0 {
            return Ok(if b > 1 { 0 } else { k });
        }
        let mut v = 0u32;
        while a & 1 == 0 {
            v += 1;
            a >>= 1;
        }
        if v & 1 == 1 {
            k *= TAB2[(b & 7) as usize];
        }
        // quadratic reciprocity for the odd parts
        if a & b & 2 != 0 {
            k = -k;
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// Linear-sieve tables up to `limit`: Möbius values, least prime factors and a
/// packed indicator of odd square-free integers.
pub struct SieveTables {
    pub limit: u64,
    /// `mobius[n]` for `n <= limit`; `mobius[0]` is unused (0).
    pub mobius: Vec<i8>,
    /// `least_prime_factor[n]` for `n >= 2`; entries 0 and 1 are 0.
    pub least_prime_factor: Vec<u32>,
    /// bit `n` set iff `n` is odd and square-free
    squarefree_odd: Vec<u64>,
    /// primes `<= limit` in increasing order
    pub primes: Vec<u32>,
}

impl SieveTables {
    pub fn squarefree_odd(&self, n: u64) -> bool {
        if n > self.limit {
            return false;
        }
        self.squarefree_odd[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    pub fn mobius(&self, n: u64) -> i8 {
        self.mobius[n as usize]
    }

    /// Euler phi of a prime power `p^b`.
    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit && self.least_prime_factor[n as usize] as u64 == n
    }
}

/// Build the sieve tables in `O(limit)`.
pub fn build_sieves(limit: u64) -> Result<SieveTables> {
    if !(2..=MAX_SIEVE_LIMIT).contains(&limit) {
        return Err(Error::SieveLimit {
            limit,
            max: MAX_SIEVE_LIMIT,
        });
    }
    let n = limit as usize;
    let mut lpf = vec![0u32; n + 1];
    let mut mobius = vec![0i8; n + 1];
    let mut primes: Vec<u32> = Vec::with_capacity(n / 8 + 16);
    mobius[1] = 1;
    for i in 2..=n {
        if lpf[i] == 0 {
            lpf[i] = i as u32;
            mobius[i] = -1;
            primes.push(i as u32);
        }
        let li = lpf[i] as usize;
        for &p in &primes {
            let p = p as usize;
            if p > li || i * p > n {
                break;
            }
            lpf[i * p] = p as u32;
            mobius[i * p] = if p == li { 0 } else { -mobius[i] };
        }
    }
    let mut squarefree_odd = vec![0u64; n / 64 + 1];
    for i in (1..=n).step_by(2) {
        if mobius[i] != 0 {
            squarefree_odd[i / 64] |= 1u64 << (i % 64);
        }
    }
    Ok(SieveTables {
        limit,
        mobius,
        least_prime_factor: lpf,
        squarefree_odd,
        primes,
    })
}

/// Prime factorization of `n` as `(prime, exponent)` pairs with strictly
/// increasing primes. Uses the sieve while `n` fits, trial division beyond.
pub fn factorize(mut n: u64, tables: &SieveTables) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    while n > 1 && n <= tables.limit {
        let p = tables.least_prime_factor[n as usize] as u64;
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        out.push((p, e));
    }
    if n > 1 {
        // beyond the table: trial division
        let mut d = 3u64;
        if n.is_multiple_of(2) {
            let mut e = 0;
            while n.is_multiple_of(2) {
                n /= 2;
                e += 1;
            }
            out.push((2, e));
        }
        while d * d <= n {
            if n.is_multiple_of(d) {
                let mut e = 0;
                while n.is_multiple_of(d) {
                    n /= d;
                    e += 1;
                }
                out.push((d, e));
            }
            d += 2;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out.sort_unstable();
    }
    out
}

/// Square-free test by trial division, independent of any sieve.
pub fn is_squarefree_trial(n: u64) -> bool {
    if n.is_multiple_of(4) {
        return false;
    }
    let mut f = 3u64;
    while f * f <= n {
        if n.is_multiple_of(f * f) {
            return false;
        }
        f += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference Kronecker symbol built from the definition: factor n, take
    /// Legendre symbols by Euler's criterion at odd primes, standard unit and
    /// even-part conventions.
    fn kronecker_ref(m: i64, n: i64) -> i32 {
        fn legendre(m: i64, p: u64) -> i32 {
            let r = m.rem_euclid(p as i64) as u64;
            if r == 0 {
                return 0;
            }
            // m^((p-1)/2) mod p
            let mut base = r % p;
            let mut exp = (p - 1) / 2;
            let mut acc: u64 = 1;
            while exp > 0 {
                if exp & 1 == 1 {
                    acc = acc * base % p;
                }
                base = base * base % p;
                exp >>= 1;
            }
            if acc == 1 {
                1
            } else {
                -1
            }
        }
        if n == 0 {
            return if m.unsigned_abs() == 1 { 1 } else { 0 };
        }
        let mut k = 1i32;
        let mut n_abs = n.unsigned_abs();
        if n < 0 && m < 0 {
            k = -k;
        }
        while n_abs.is_multiple_of(2) {
            n_abs /= 2;
            k *= TAB2[(m & 7) as usize];
            if k == 0 {
                return 0;
            }
        }
        let mut f = 3u64;
        let mut rem = n_abs;
        while f * f <= rem {
            while rem.is_multiple_of(f) {
                k *= legendre(m, f);
                rem /= f;
            }
            f += 2;
        }
        if rem > 1 {
            k *= legendre(m, rem);
        }
        k
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(8, 1).unwrap(), 1);
        assert_eq!(kronecker(8, 3).unwrap(), -1);
        assert_eq!(kronecker(5, 11).unwrap(), 1);
        assert_eq!(kronecker(40, 35).unwrap(), 0);
    }

    #[test]
    fn kronecker_rejects_zero_zero() {
        assert_eq!(kronecker(0, 0).unwrap_err(), Error::KroneckerUndefined);
    }

    #[test]
    fn kronecker_zero_and_unit_conventions() {
        assert_eq!(kronecker(1, 0).unwrap(), 1);
        assert_eq!(kronecker(-1, 0).unwrap(), 1);
        assert_eq!(kronecker(5, 0).unwrap(), 0);
        assert_eq!(kronecker(0, 1).unwrap(), 1);
        assert_eq!(kronecker(0, 7).unwrap(), 0);
        assert_eq!(kronecker(3, -1).unwrap(), 1);
        assert_eq!(kronecker(-3, -1).unwrap(), -1);
    }

    #[test]
    fn kronecker_matches_reference() {
        for m in -60i64..=60 {
            for n in -60i64..=60 {
                if m == 0 && n == 0 {
                    continue;
                }
                assert_eq!(
                    kronecker(m, n).unwrap(),
                    kronecker_ref(m, n),
                    "mismatch at ({m}, {n})"
                );
            }
        }
    }

    #[test]
    fn kronecker_quadratic_reciprocity() {
        let tables = build_sieves(100).unwrap();
        let odd_primes: Vec<u64> = tables
            .primes
            .iter()
            .map(|&p| p as u64)
            .filter(|&p| p > 2)
            .collect();
        for &p in &odd_primes {
            for &q in &odd_primes {
                if p == q {
                    continue;
                }
                let lhs =
                    kronecker(p as i64, q as i64).unwrap() * kronecker(q as i64, p as i64).unwrap();
                let rhs = if (p - 1) / 2 % 2 == 1 && (q - 1) / 2 % 2 == 1 {
                    -1
                } else {
                    1
                };
                assert_eq!(lhs, rhs, "reciprocity failed at ({p}, {q})");
            }
        }
    }

    #[test]
    fn sieve_examples() {
        let t = build_sieves(20).unwrap();
        assert_eq!(t.mobius(6), 1);
        assert_eq!(t.mobius(12), 0);
        assert!(t.squarefree_odd(15));
        assert!(!t.squarefree_odd(9));
        assert!(!t.squarefree_odd(10));
    }

    #[test]
    fn sieve_invariants_exhaustive() {
        let t = build_sieves(10_000).unwrap();
        for n in 2..=10_000u64 {
            let lpf = t.least_prime_factor[n as usize] as u64;
            assert!(n % lpf == 0 && t.is_prime(lpf));
            for p in 2..lpf {
                assert!(n % p != 0 || !t.is_prime(p));
            }
            let sf = is_squarefree_trial(n);
            assert_eq!(t.mobius(n) != 0, sf, "mobius vs square-free at {n}");
            assert_eq!(t.squarefree_odd(n), n % 2 == 1 && sf);
        }
        // mu(p) = -1 at every prime
        for &p in &t.primes {
            assert_eq!(t.mobius(p as u64), -1);
        }
    }

    #[test]
    fn mobius_inversion_detects_squarefree() {
        // indicator of square-freeness equals sum of mu(a) over a^2 | n
        let t = build_sieves(10_000).unwrap();
        for n in 1..=10_000u64 {
            let mut s = 0i32;
            let mut a = 1u64;
            while a * a <= n {
                if n % (a * a) == 0 {
                    s += t.mobius(a) as i32;
                }
                a += 1;
            }
            assert_eq!(s, (t.mobius(n) != 0) as i32, "inversion failed at {n}");
        }
    }

    #[test]
    fn factorize_examples() {
        let t = build_sieves(100).unwrap();
        assert!(factorize(1, &t).is_empty());
        assert_eq!(factorize(45, &t), vec![(3, 2), (5, 1)]);
        // beyond the table: trial-division fallback
        assert_eq!(factorize(9973, &t), vec![(9973, 1)]);
        assert_eq!(
            factorize(2 * 3 * 3 * 101 * 101, &t),
            vec![(2, 1), (3, 2), (101, 2)]
        );
    }

    #[test]
    fn sieve_limit_rejected() {
        assert!(matches!(build_sieves(1), Err(Error::SieveLimit { .. })));
        assert!(matches!(
            build_sieves(MAX_SIEVE_LIMIT + 1),
            Err(Error::SieveLimit { .. })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn multiplicative_in_n(m in -2000i64..2000, a in 1i64..500, b in 1i64..500) {
                let (n1, n2) = (2 * a + 1, 2 * b + 1);
                prop_assert_eq!(
                    kronecker(m, n1 * n2).unwrap(),
                    kronecker(m, n1).unwrap() * kronecker(m, n2).unwrap()
                );
            }

            #[test]
            fn multiplicative_in_m(m1 in -500i64..500, m2 in -500i64..500, b in 0i64..500) {
                let n = 2 * b + 1;
                prop_assert_eq!(
                    kronecker(m1 * m2, n).unwrap(),
                    kronecker(m1, n).unwrap() * kronecker(m2, n).unwrap()
                );
            }

            #[test]
            fn zero_iff_common_factor(m in -2000i64..2000, n in 1i64..2000) {
                let g = {
                    let (mut x, mut y) = (m.unsigned_abs(), n.unsigned_abs());
                    while y != 0 {
                        let t = x % y;
                        x = y;
                        y = t;
                    }
                    x
                };
                prop_assert_eq!(kronecker(m, n).unwrap() == 0, g > 1);
            }

            #[test]
            fn factorize_reconstructs(n in 1u64..1_000_000) {
                let t = build_sieves(1000).unwrap();
                let f = factorize(n, &t);
                let mut prod = 1u64;
                let mut last = 0u64;
                for &(p, e) in &f {
                    prop_assert!(p > last);
                    last = p;
                    prod *= p.pow(e);
                }
                prop_assert_eq!(prod, n);
            }
        }
    }
}
