//! Exact integer, rational and cyclotomic arithmetic.
//!
//! - [`pi_part`]: the π-part m_π of an integer, where π is the set of primes
//!   dividing a fixed base ℓ.
//! - [`cyclotomic_polynomial`]: the monic L-th cyclotomic polynomial Φ_L.
//! - [`CycloValue`]: an element of ℤ[ω], ω a primitive L-th root of unity,
//!   stored un-reduced in the group ring ℤ[x]/(x^L − 1).
//!
//! Rationals are [`num_rational::BigRational`]: always reduced, positive
//! denominator, arbitrary precision.

mod cyclo;

pub use cyclo::{cyclo_as_rational, CycloAccum, CycloValue};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::Result;

/// Exact rational number used for all contributions and inner products.
pub type Rational = num_rational::BigRational;

/// Greatest common divisor on u128.
pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// n! as an exact u128. Panics on overflow (n ≤ 33 is safe).
pub fn factorial(n: u64) -> u128 {
    let mut acc: u128 = 1;
    for k in 2..=n as u128 {
        acc = acc.checked_mul(k).expect("factorial overflow");
    }
    acc
}

/// Euler's totient φ(n).
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The positive divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// The π-part of m: the largest divisor of m all of whose prime factors
/// divide `ell`. The complementary part m / pi_part(m, ell) is coprime to
/// `ell`.
pub fn pi_part(m: u128, ell: u64) -> Result<u128> {
    if m < 1 {
        return Err(Error::invalid("pi_part requires m >= 1"));
    }
    if ell < 2 {
        return Err(Error::invalid("pi_part requires ell >= 2"));
    }
    let mut rest = m;
    let mut part: u128 = 1;
    loop {
        let g = gcd_u128(rest, ell as u128);
        if g == 1 {
            return Ok(part);
        }
        part *= g;
        rest /= g;
    }
}

/// The factorization m = m_π · m_π′ for a fixed base ℓ, with π the set of
/// primes dividing ℓ.
#[derive(Clone, Copy, Debug)]
pub struct PiPart {
    base: u64,
}

impl PiPart {
    pub fn new(ell: u64) -> Result<Self> {
        if ell < 2 {
            return Err(Error::invalid("PiPart requires ell >= 2"));
        }
        Ok(PiPart { base: ell })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// m_π.
    pub fn part(&self, m: u128) -> u128 {
        pi_part(m, self.base).expect("m >= 1")
    }

    /// m_π′ = m / m_π, coprime to the base.
    pub fn coprime_part(&self, m: u128) -> u128 {
        m / self.part(m)
    }
}

/// The monic L-th cyclotomic polynomial Φ_L, as ascending integer
/// coefficients. Computed by dividing x^L − 1 by Φ_d for every proper
/// divisor d; all divisions are exact.
pub fn cyclotomic_polynomial(l: u32) -> Result<Vec<BigInt>> {
    if l < 1 {
        return Err(Error::invalid("cyclotomic_polynomial requires L >= 1"));
    }
    // f = x^L - 1
    let mut f = vec![BigInt::zero(); l as usize + 1];
    f[0] = -BigInt::one();
    f[l as usize] = BigInt::one();
    for d in divisors(l as u64) {
        if d == l as u64 {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d as u32)?;
        f = poly_div_exact(&f, &phi_d);
    }
    Ok(f)
}

/// Exact division of integer polynomials with monic divisor.
/// Panics if the division leaves a remainder (internal misuse).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = std::mem::take(&mut rem[k + dn]);
        if !c.is_zero() {
            for (i, d) in den.iter().enumerate().take(dn) {
                let sub = d * &c;
                rem[k + i] -= sub;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "polynomial division not exact");
    quot
}
