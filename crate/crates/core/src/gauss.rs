//! Gauss-type sums `G_m(k)` for odd `k`, computed two ways: by definitional
//! summation over residues (`gauss_naive`) and exactly through the
//! multiplicative prime-power table (`gauss_exact`).
//!
//! For odd `k` the value is always of the form `q * sqrt(s)` with integer `q`
//! and square-free `s`, which [`RadicalValue`] represents exactly.

use num_complex::Complex64;

use crate::arith::{factorize, kronecker, SieveTables};
use crate::{Error, Result};

/// Cap on the modulus accepted by [`gauss_naive`]; the O(k) summation is the
/// verification path only.
pub const NAIVE_CAP: u64 = 1_000_000;

/// Exact algebraic number `coefficient * sqrt(radicand)` with square-free
/// positive radicand. Zero is canonically `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RadicalValue {
    coefficient: i64,
    radicand: u64,
}

impl RadicalValue {
    pub const ZERO: RadicalValue = RadicalValue {
        coefficient: 0,
        radicand: 1,
    };
    pub const ONE: RadicalValue = RadicalValue {
        coefficient: 1,
        radicand: 1,
    };

    /// Construct from an integer coefficient and a square-free radicand.
    /// Callers must pass a square-free radicand; debug builds check it.
    pub fn new(coefficient: i64, radicand: u64) -> Self {
        debug_assert!(radicand >= 1 && crate::arith::is_squarefree_trial(radicand));
        if coefficient == 0 {
            return RadicalValue::ZERO;
        }
        RadicalValue {
            coefficient,
            radicand,
        }
    }

    pub fn integer(v: i64) -> Self {
        RadicalValue::new(v, 1)
    }

    pub fn coefficient(&self) -> i64 {
        self.coefficient
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.coefficient as f64 * (self.radicand as f64).sqrt()
    }

    /// Product, staying in the domain: `(q1 sqrt(s1))(q2 sqrt(s2)) =
    /// q1 q2 g sqrt(s1 s2 / g^2)` with `g = gcd(s1, s2)`.
    fn mul_impl(self, other: RadicalValue) -> RadicalValue {
        if self.is_zero() || other.is_zero() {
            return RadicalValue::ZERO;
        }
        let g = gcd(self.radicand, other.radicand);
        RadicalValue {
            coefficient: self.coefficient * other.coefficient * g as i64,
            radicand: (self.radicand / g) * (other.radicand / g),
        }
    }
}

impl std::ops::Mul for RadicalValue {
    type Output = RadicalValue;
    fn mul(self, rhs: RadicalValue) -> RadicalValue {
        self.mul_impl(rhs)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn require_odd_positive(k: u64) -> Result<()> {
    if k == 0 || k.is_multiple_of(2) {
        return Err(Error::OddModulusRequired { k: k as i64 });
    }
    Ok(())
}

/// Definitional Gauss-type sum
/// `((1-i)/2 + (-1/k)(1+i)/2) * sum_{a mod k} (a/k) e(am/k)`
/// in double-precision complex arithmetic. The imaginary part of the result
/// is numerically zero for odd `k`.
pub fn gauss_naive(m: i64, k: u64) -> Result<Complex64> {
    Ok(gauss_naive_batch(&[m], k)?[0])
}

/// [`gauss_naive`] for several `m` at one modulus, sharing the character and
/// root tables across the batch.
pub fn gauss_naive_batch(ms: &[i64], k: u64) -> Result<Vec<Complex64>> {
    require_odd_positive(k)?;
    if k > NAIVE_CAP {
        return Err(Error::NaiveCapExceeded { k, cap: NAIVE_CAP });
    }
    if k == 1 {
        return Ok(vec![Complex64::new(1.0, 0.0); ms.len()]);
    }
    let ki = k as i64;
    // character table (a/k) and root table e(j/k)
    let mut chi = vec![0i8; k as usize];
    for a in 0..k {
        chi[a as usize] = kronecker(a as i64, ki)? as i8;
    }
    let step = 2.0 * std::f64::consts::PI / k as f64;
    let mut roots = vec![Complex64::new(0.0, 0.0); k as usize];
    for (j, r) in roots.iter_mut().enumerate() {
        let t = step * j as f64;
        *r = Complex64::new(t.cos(), t.sin());
    }
    let minus_one = kronecker(-1, ki)? as f64;
    let pref = Complex64::new(0.5 * (1.0 + minus_one), 0.5 * (minus_one - 1.0));
    let mut out = Vec::with_capacity(ms.len());
    for &m in ms {
        let m_red = m.rem_euclid(ki) as u64;
        let mut idx = 0u64;
        let mut sum = Complex64::new(0.0, 0.0);
        for a in 0..k {
            let c = chi[a as usize];
            if c != 0 {
                sum += roots[idx as usize] * c as f64;
            }
            idx += m_red;
            if idx >= k {
                idx -= k;
            }
        }
        out.push(pref * sum);
    }
    Ok(out)
}

/// Exact Gauss-type sum through the five-case prime-power table, multiplied
/// across the factorization of `k`. `m = 0` acts as `a = infinity`: every
/// case compares as `b <= a`.
pub fn gauss_exact(m: i64, k: u64, tables: &SieveTables) -> Result<RadicalValue> {
    require_odd_positive(k)?;
    let mut value = RadicalValue::ONE;
    for (p, b) in factorize(k, tables) {
        value = value * gauss_prime_power(m, p, b)?;
        if value.is_zero() {
            return Ok(RadicalValue::ZERO);
        }
    }
    Ok(value)
}

/// `G_m(p^b)` for odd prime `p`, `b >= 1`.
fn gauss_prime_power(m: i64, p: u64, b: u32) -> Result<RadicalValue> {
    let a = if m == 0 {
        None // a = infinity
    } else {
        let mut a = 0u32;
        let mut t = m.unsigned_abs();
        while t.is_multiple_of(p) {
            a += 1;
            t /= p;
        }
        Some(a)
    };
    let le = match a {
        None => true,
        Some(a) => b <= a,
    };
    if le {
        // b <= a: phi(p^b) when b even, 0 when odd
        return Ok(if b.is_multiple_of(2) {
            RadicalValue::integer((p.pow(b) - p.pow(b - 1)) as i64)
        } else {
            RadicalValue::ZERO
        });
    }
    let a = a.expect("finite a in the b > a branch");
    if b == a + 1 {
        let pa = p.pow(a) as i64;
        if b.is_multiple_of(2) {
            Ok(RadicalValue::integer(-pa))
        } else {
            let m_over = m / pa;
            let sym = kronecker(m_over, p as i64)?;
            Ok(RadicalValue::new(sym as i64 * pa, p))
        }
    } else {
        // b >= a + 2
        Ok(RadicalValue::ZERO)
    }
}
