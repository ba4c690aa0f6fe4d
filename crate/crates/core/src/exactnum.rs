//! Exact integer and rational primitives: p-adic valuations, logarithms of
//! huge integers, multi-way gcds, and a deterministic primality test for
//! the primes that index finite places.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::Result;

pub use num_bigint::BigInt;
pub type BigRat = num_rational::BigRational;

pub const LN_2: f64 = std::f64::consts::LN_2;

/// Largest k such that p^k divides n.
///
/// Divides out p, then p^2, p^4, ... so the number of big divisions is
/// logarithmic in the valuation.
pub fn padic_valuation(n: &BigInt, p: u64) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = BigInt::from(p);
    let mut current = n.abs();
    let mut valuation: u64 = 0;

    let (q, r) = current.div_rem(&p);
    if !r.is_zero() {
        return Ok(0);
    }
    current = q;
    valuation += 1;

    let mut power = &p * &p;
    let mut step: u64 = 2;
    loop {
        let (q, r) = current.div_rem(&power);
        if r.is_zero() {
            current = q;
            valuation += step;
            power = &power * &power;
            step *= 2;
        } else if step == 1 {
            break;
        } else {
            power = p.clone();
            step = 1;
        }
    }
    Ok(valuation)
}

/// Natural log of |n|, computed from the bit length and the top 64 bits.
///
/// Never converts the whole integer to floating point, so it is immune to
/// f64 overflow; relative error is dominated by the 2^-53 rounding of the
/// leading bits, comfortably below the 2^-48 budget.
pub fn log_abs(n: &BigInt) -> Result<f64> {
    if n.is_zero() {
        return Err(Error::LogOfZero);
    }
    let mag = n.abs();
    let bits = mag.bits();
    if bits <= 63 {
        return Ok((mag.to_u64().expect("fits in 64 bits") as f64).ln());
    }
    let shift = bits - 64;
    let top: u64 = (&mag >> shift).to_u64().expect("top 64 bits fit");
    Ok((top as f64).ln() + shift as f64 * LN_2)
}

/// Positive gcd of a list of integers, at least one of which must be nonzero.
pub fn gcd_many(values: &[BigInt]) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for v in values {
        acc = acc.gcd(v);
    }
    if acc.is_zero() {
        Err(Error::GcdAllZero)
    } else {
        Ok(acc)
    }
}

/// Deterministic Miller-Rabin, valid for all inputs below 2^64.
#[allow(clippy::manual_is_multiple_of)]
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // this witness set is deterministic below 3.3 * 10^24
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}
