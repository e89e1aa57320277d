//! Cyclotomic integers in the group-ring representation.
//!
//! A [`CycloValue`] of conductor L represents an element of ℤ[x]/(x^L − 1),
//! read as a value in ℤ[ω] by evaluating at a primitive L-th root of unity ω.
//! Addition, multiplication and conjugation act on the group-ring
//! representation; reduction modulo the cyclotomic polynomial Φ_L happens
//! only at equality tests and rationality extraction, where it is needed.
//!
//! Coefficients are checked i128: every operation is exact and aborts on
//! overflow rather than wrapping. Character values and the inner-product
//! accumulations of the groups handled here stay many orders of magnitude
//! below the i128 range.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{cyclotomic_polynomial, euler_phi, Rational};
use crate::error::Error;
use crate::Result;

fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("cyclotomic coefficient overflow")
}

fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("cyclotomic coefficient overflow")
}

/// Precomputed reduction data for one conductor: the row for exponent j ≥ φ
/// expresses x^j mod Φ_L on the power basis 1, x, …, x^{φ−1}.
struct Reducer {
    deg: usize,
    rows: Vec<Vec<i128>>, // rows[j - deg] for j in deg..l
}

impl Reducer {
    fn new(l: u32) -> Self {
        let phi = cyclotomic_polynomial(l).expect("l >= 1");
        let deg = phi.len() - 1;
        let mut rows: Vec<Vec<i128>> = Vec::with_capacity(l as usize - deg);
        // x^deg ≡ -(phi - x^deg)
        let mut cur: Vec<i128> = phi[..deg]
            .iter()
            .map(|c| (-c).to_i128().expect("cyclotomic coefficient fits i128"))
            .collect();
        for _ in deg..l as usize {
            rows.push(cur.clone());
            // multiply by x and reduce the top term
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, &r) in rows[0].iter().enumerate() {
                    cur[i] = cadd(cur[i], cmul(top, r));
                }
            }
        }
        Reducer { deg, rows }
    }

    /// Remainder of the dense polynomial modulo Φ_L, as `deg` coefficients.
    fn reduce(&self, dense: &[i128]) -> Vec<i128> {
        let mut out = vec![0i128; self.deg];
        for (j, &c) in dense.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if j < self.deg {
                out[j] = cadd(out[j], c);
            } else {
                for (i, &r) in self.rows[j - self.deg].iter().enumerate() {
                    if r != 0 {
                        out[i] = cadd(out[i], cmul(c, r));
                    }
                }
            }
        }
        out
    }
}

fn reducer(l: u32) -> Arc<Reducer> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Reducer>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(r) = cache.read().expect("reducer cache poisoned").get(&l) {
        return r.clone();
    }
    let mut guard = cache.write().expect("reducer cache poisoned");
    guard.entry(l).or_insert_with(|| Arc::new(Reducer::new(l))).clone()
}

/// An exact element of ℤ[ω], ω a primitive L-th root of unity, stored as a
/// sparse integer polynomial in ω with exponents taken modulo L.
///
/// Two values are equal iff their difference reduces to zero modulo Φ_L.
#[derive(Clone, Debug)]
pub struct CycloValue {
    conductor: u32,
    /// Sorted by exponent, no zero coefficients, exponents < conductor.
    terms: Vec<(u32, i128)>,
}

impl CycloValue {
    pub fn zero(conductor: u32) -> Self {
        assert!(conductor >= 1);
        CycloValue { conductor, terms: Vec::new() }
    }

    pub fn one(conductor: u32) -> Self {
        Self::integer(conductor, 1)
    }

    /// The rational integer c as a cyclotomic value.
    pub fn integer(conductor: u32, c: i128) -> Self {
        assert!(conductor >= 1);
        if c == 0 {
            Self::zero(conductor)
        } else {
            CycloValue { conductor, terms: vec![(0, c)] }
        }
    }

    /// ω^k.
    pub fn root(conductor: u32, k: u64) -> Self {
        assert!(conductor >= 1);
        CycloValue {
            conductor,
            terms: vec![((k % conductor as u64) as u32, 1)],
        }
    }

    /// Build from dense coefficients of length `conductor` (index k holds the
    /// coefficient of ω^k).
    pub fn from_dense(conductor: u32, coeffs: Vec<i128>) -> Self {
        assert_eq!(coeffs.len(), conductor as usize);
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(k, c)| (k as u32, c))
            .collect();
        CycloValue { conductor, terms }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn terms(&self) -> &[(u32, i128)] {
        &self.terms
    }

    /// Dense coefficient vector of length `conductor`.
    pub fn to_dense(&self) -> Vec<i128> {
        let mut dense = vec![0i128; self.conductor as usize];
        for &(k, c) in &self.terms {
            dense[k as usize] = c;
        }
        dense
    }

    /// True when the stored representation has no terms. A value may still be
    /// zero with a nonempty representation; see [`CycloValue::is_zero_value`].
    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_map(conductor: u32, map: std::collections::BTreeMap<u32, i128>) -> Self {
        let terms = map.into_iter().filter(|&(_, c)| c != 0).collect();
        CycloValue { conductor, terms }
    }

    pub fn add(&self, rhs: &CycloValue) -> CycloValue {
        assert_eq!(self.conductor, rhs.conductor, "conductor mismatch");
        let mut map: std::collections::BTreeMap<u32, i128> =
            self.terms.iter().copied().collect();
        for &(k, c) in &rhs.terms {
            let e = map.entry(k).or_insert(0);
            *e = cadd(*e, c);
        }
        Self::from_map(self.conductor, map)
    }

    pub fn sub(&self, rhs: &CycloValue) -> CycloValue {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> CycloValue {
        CycloValue {
            conductor: self.conductor,
            terms: self.terms.iter().map(|&(k, c)| (k, -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &CycloValue) -> CycloValue {
        assert_eq!(self.conductor, rhs.conductor, "conductor mismatch");
        let l = self.conductor;
        let mut map: std::collections::BTreeMap<u32, i128> = std::collections::BTreeMap::new();
        for &(i, a) in &self.terms {
            for &(j, b) in &rhs.terms {
                let k = (i + j) % l;
                let e = map.entry(k).or_insert(0);
                *e = cadd(*e, cmul(a, b));
            }
        }
        Self::from_map(l, map)
    }

    pub fn scale(&self, c: i128) -> CycloValue {
        if c == 0 {
            return Self::zero(self.conductor);
        }
        CycloValue {
            conductor: self.conductor,
            terms: self.terms.iter().map(|&(k, t)| (k, cmul(t, c))).collect(),
        }
    }

    /// Complex conjugation: ω^k ↦ ω^{L−k}. An involution commuting with
    /// addition and multiplication.
    pub fn conj(&self) -> CycloValue {
        let l = self.conductor;
        let mut terms: Vec<(u32, i128)> =
            self.terms.iter().map(|&(k, c)| ((l - k) % l, c)).collect();
        terms.sort_unstable_by_key(|&(k, _)| k);
        CycloValue { conductor: l, terms }
    }

    /// Re-express in the ring of conductor `target`, which must be a multiple
    /// of the current conductor: ω_L^k = ω_target^{k·target/L}.
    pub fn embed(&self, target: u32) -> CycloValue {
        assert!(target.is_multiple_of(self.conductor), "target conductor must be a multiple");
        let step = (target / self.conductor) as u64;
        let mut terms: Vec<(u32, i128)> = self
            .terms
            .iter()
            .map(|&(k, c)| (((k as u64 * step) % target as u64) as u32, c))
            .collect();
        terms.sort_unstable_by_key(|&(k, _)| k);
        CycloValue { conductor: target, terms }
    }

    /// Coefficients of the remainder modulo Φ_L on the power basis
    /// 1, ω, …, ω^{φ(L)−1}. This is the canonical form: the basis is an
    /// integral basis of ℤ[ω].
    pub fn reduced(&self) -> Vec<i128> {
        reducer(self.conductor).reduce(&self.to_dense())
    }

    /// Exact zero test of the represented value.
    pub fn is_zero_value(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        self.reduced().iter().all(|&c| c == 0)
    }

    /// Exact equality of represented values.
    pub fn equiv(&self, rhs: &CycloValue) -> bool {
        self.sub(rhs).is_zero_value()
    }

    /// Extract the value as an exact rational, failing with
    /// [`Error::NonRational`] when the canonical form is not constant.
    pub fn as_rational(&self) -> Result<Rational> {
        let red = self.reduced();
        if red.iter().skip(1).all(|&c| c == 0) {
            Ok(Rational::from(BigInt::from(red.first().copied().unwrap_or(0))))
        } else {
            Err(Error::NonRational { conductor: self.conductor })
        }
    }

    /// Exact division of every canonical coefficient by `d`, for values known
    /// to be algebraic-integer multiples of the result. Panics if the
    /// division is not exact (internal misuse).
    pub fn div_exact(&self, d: i128) -> CycloValue {
        assert!(d != 0);
        let red = self.reduced();
        let mut dense = vec![0i128; self.conductor as usize];
        for (i, c) in red.into_iter().enumerate() {
            assert!(c % d == 0, "inexact cyclotomic division");
            dense[i] = c / d;
        }
        CycloValue::from_dense(self.conductor, dense)
    }

    /// Degree of the reduction basis, φ(L).
    pub fn basis_degree(&self) -> usize {
        euler_phi(self.conductor as u64) as usize
    }
}

impl PartialEq for CycloValue {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.equiv(other)
    }
}

impl std::fmt::Display for CycloValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for &(k, c) in &self.terms {
            if first {
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = if first { c } else { c.abs() };
            match (k, a == 1) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "w")?,
                (1, false) => write!(f, "{a}*w")?,
                (_, true) => write!(f, "w^{k}")?,
                (_, false) => write!(f, "{a}*w^{k}")?,
            }
        }
        Ok(())
    }
}

/// Extract a cyclotomic value as an exact rational number.
///
/// Fails with [`Error::NonRational`] when the value is genuinely irrational —
/// downstream, that indicates a non-closed class set.
pub fn cyclo_as_rational(v: &CycloValue) -> Result<Rational> {
    v.as_rational()
}

/// Dense accumulator for sums of scaled products Σ s·u·v without
/// intermediate allocations. Used by inner products and orthogonality checks.
pub struct CycloAccum {
    conductor: u32,
    dense: Vec<i128>,
}

impl CycloAccum {
    pub fn new(conductor: u32) -> Self {
        assert!(conductor >= 1);
        CycloAccum { conductor, dense: vec![0i128; conductor as usize] }
    }

    /// Accumulate s·u·v.
    pub fn add_scaled_product(&mut self, u: &CycloValue, v: &CycloValue, s: i128) {
        debug_assert_eq!(u.conductor, self.conductor);
        debug_assert_eq!(v.conductor, self.conductor);
        if s == 0 {
            return;
        }
        let l = self.conductor;
        for &(i, a) in &u.terms {
            let sa = cmul(s, a);
            for &(j, b) in &v.terms {
                let k = ((i + j) % l) as usize;
                self.dense[k] = cadd(self.dense[k], cmul(sa, b));
            }
        }
    }

    /// Accumulate s·u.
    pub fn add_scaled(&mut self, u: &CycloValue, s: i128) {
        debug_assert_eq!(u.conductor, self.conductor);
        if s == 0 {
            return;
        }
        for &(k, c) in &u.terms {
            let e = &mut self.dense[k as usize];
            *e = cadd(*e, cmul(s, c));
        }
    }

    pub fn into_value(self) -> CycloValue {
        CycloValue::from_dense(self.conductor, self.dense)
    }
}
