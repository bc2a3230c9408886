//! Exact arithmetic in the cyclotomic ring `Z[zeta_m]`.
//!
//! Values are stored densely in the power basis `1, zeta, ..., zeta^(phi(m)-1)`
//! with arbitrary-precision coefficients. Because that basis is a basis of
//! `Q(zeta_m)` over `Q`, two values are equal exactly when their coefficient
//! vectors are equal.
//!
//! Every modulus gets a lazily built, process-wide table holding `Phi_m` and
//! the reduction of each monomial `x^j` (`0 <= j < m`) modulo `Phi_m`. All
//! multiplication and Galois action goes through that table: products and
//! automorphisms are first accumulated as exponent counts mod `m` and then
//! folded back into the basis.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::euler_phi;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("{k} is not a unit modulo {modulus}")]
    InvalidAutomorphism { k: i64, modulus: u64 },
    #[error("value is not rational")]
    NotRational,
    #[error("expected {expected} coefficients for modulus {modulus}, got {got}")]
    InvalidLength { modulus: u64, expected: usize, got: usize },
    #[error("cyclotomic modulus must be positive")]
    InvalidModulus,
}

/// `Phi_m`, monic with integer coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycPoly {
    modulus: u64,
    coeffs: Vec<BigInt>,
}

impl CycPoly {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn poly_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient `num / den` for a monic `den`; panics if the division
/// leaves a remainder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "cyclotomic division left a remainder");
    quot
}

fn phi_coeffs(m: u64) -> Arc<Vec<BigInt>> {
    if let Some(p) = poly_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Phi_d for every proper divisor d of m.
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in (1..m).filter(|d| m % d == 0) {
        den = poly_mul(&den, &phi_coeffs(d));
    }
    let phi = Arc::new(poly_div_exact(&num, &den));
    poly_cache().lock().unwrap().entry(m).or_insert(phi).clone()
}

/// `Phi_m` by exact division of `x^m - 1` by the cyclotomic polynomials of
/// the proper divisors of `m`. Results are memoized.
pub fn cyclotomic_polynomial(m: u64) -> CycPoly {
    assert!(m >= 1, "cyclotomic modulus must be positive");
    CycPoly { modulus: m, coeffs: phi_coeffs(m).as_ref().clone() }
}

/// Per-modulus reduction data shared by all values of that modulus.
#[derive(Debug)]
pub struct RingTables {
    modulus: u64,
    dim: usize,
    /// `monomials[j]` holds the nonzero coordinates of `x^j mod Phi_m`.
    monomials: Vec<Vec<(usize, i64)>>,
    /// `exp(2 pi i j / m)` for `0 <= j < dim`.
    embedding: Vec<Complex64>,
}

fn build_tables(m: u64) -> RingTables {
    let phi = phi_coeffs(m);
    let dim = phi.len() - 1;
    debug_assert_eq!(dim as u64, euler_phi(m));
    let mut monomials = Vec::with_capacity(m as usize);
    let mut cur = vec![BigInt::zero(); dim];
    cur[0] = BigInt::one();
    for _ in 0..m {
        monomials.push(
            cur.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.to_i64().expect("monomial reduction coefficient exceeds i64")))
                .collect(),
        );
        // multiply by x, then fold x^dim = -(Phi_m - x^dim)
        let carry = cur.pop().expect("dim >= 1");
        cur.insert(0, BigInt::zero());
        if !carry.is_zero() {
            for (c, p) in cur.iter_mut().zip(phi.iter()) {
                *c -= &carry * p;
            }
        }
    }
    let embedding = (0..dim)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64))
        .collect();
    RingTables { modulus: m, dim, monomials, embedding }
}

fn ring_tables(m: u64) -> Arc<RingTables> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<RingTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&m) {
        return t.clone();
    }
    let tables = Arc::new(build_tables(m));
    cache.lock().unwrap().entry(m).or_insert(tables).clone()
}

/// Exact element of `Z[zeta_m]`.
#[derive(Clone)]
pub struct CycInt {
    ring: Arc<RingTables>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.ring.modulus == other.ring.modulus && self.coeffs == other.coeffs
    }
}

impl Eq for CycInt {}

impl std::hash::Hash for CycInt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ring.modulus.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycInt")
            .field("modulus", &self.ring.modulus)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

/// Accumulates `sum_j counts[j] zeta^j` with exponents taken mod `m`.
struct ExponentAccumulator {
    ring: Arc<RingTables>,
    counts: Vec<BigInt>,
}

impl ExponentAccumulator {
    fn new(ring: Arc<RingTables>) -> Self {
        let m = ring.modulus as usize;
        ExponentAccumulator { ring, counts: vec![BigInt::zero(); m] }
    }

    fn add(&mut self, exponent: u64, value: &BigInt) {
        let slot = (exponent % self.ring.modulus) as usize;
        self.counts[slot] += value;
    }

    fn finish(self) -> CycInt {
        let mut coeffs = vec![BigInt::zero(); self.ring.dim];
        for (j, c) in self.counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, t) in &self.ring.monomials[j] {
                coeffs[i] += c * t;
            }
        }
        CycInt { ring: self.ring, coeffs }
    }
}

impl CycInt {
    pub fn zero(m: u64) -> Self {
        let ring = ring_tables(m);
        let coeffs = vec![BigInt::zero(); ring.dim];
        CycInt { ring, coeffs }
    }

    pub fn from_integer(m: u64, value: impl Into<BigInt>) -> Self {
        let mut out = CycInt::zero(m);
        out.coeffs[0] = value.into();
        out
    }

    pub fn one(m: u64) -> Self {
        CycInt::from_integer(m, 1)
    }

    /// `zeta_m^(j mod m)`.
    pub fn root_power(m: u64, j: i64) -> Self {
        let ring = ring_tables(m);
        let j = j.rem_euclid(m as i64) as usize;
        let mut coeffs = vec![BigInt::zero(); ring.dim];
        for &(i, t) in &ring.monomials[j] {
            coeffs[i] = BigInt::from(t);
        }
        CycInt { ring, coeffs }
    }

    /// `sum_j counts[j] zeta_m^j`, exponents taken mod `m`.
    pub fn from_exponent_counts(m: u64, counts: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut acc = ExponentAccumulator::new(ring_tables(m));
        for (e, c) in counts {
            acc.add(e, &BigInt::from(c));
        }
        acc.finish()
    }

    /// Builds a value from its power-basis coordinates.
    pub fn from_coeffs(m: u64, coeffs: Vec<BigInt>) -> Result<Self, CycError> {
        if m == 0 {
            return Err(CycError::InvalidModulus);
        }
        let ring = ring_tables(m);
        if coeffs.len() != ring.dim {
            return Err(CycError::InvalidLength { modulus: m, expected: ring.dim, got: coeffs.len() });
        }
        Ok(CycInt { ring, coeffs })
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), CycError> {
        if self.ring.modulus != other.ring.modulus {
            return Err(CycError::ModulusMismatch { left: self.ring.modulus, right: other.ring.modulus });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { ring: self.ring.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { ring: self.ring.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        let mut acc = ExponentAccumulator::new(self.ring.clone());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc.add((i + j) as u64, &(a * b));
                }
            }
        }
        Ok(acc.finish())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * k).collect();
        CycInt { ring: self.ring.clone(), coeffs }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut out = CycInt::one(self.modulus());
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        out
    }

    /// Image under the automorphism `zeta_m -> zeta_m^k`.
    pub fn galois_apply(&self, k: i64) -> Result<Self, CycError> {
        let m = self.ring.modulus;
        let k_red = k.rem_euclid(m as i64) as u64;
        if k_red.gcd(&m) != 1 && m > 1 {
            return Err(CycError::InvalidAutomorphism { k, modulus: m });
        }
        let mut acc = ExponentAccumulator::new(self.ring.clone());
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc.add(((j as u128 * k_red as u128) % m as u128) as u64, c);
            }
        }
        Ok(acc.finish())
    }

    /// True when every non-constant coordinate vanishes.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The integer value of a rational element.
    pub fn as_integer(&self) -> Result<BigInt, CycError> {
        if !self.is_rational() {
            return Err(CycError::NotRational);
        }
        Ok(self.coeffs[0].clone())
    }

    /// Numerical value in `C`. The absolute error is bounded by a small
    /// multiple of `(sum_j |c_j|) * f64::EPSILON`.
    pub fn complex_embed(&self) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&self.ring.embedding)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, z)| z * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Sum of absolute coefficient values.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }
}

/// Coefficients (ascending, monic) of `prod (x - r)` over `roots`, all in
/// `Z[zeta_m]`.
pub fn expand_linear_factors<'a>(m: u64, roots: impl IntoIterator<Item = &'a CycInt>) -> Vec<CycInt> {
    let mut poly = vec![CycInt::one(m)];
    for root in roots {
        let mut next = vec![CycInt::zero(m); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * root);
        }
        poly = next;
    }
    poly
}

/// Converts a polynomial whose coefficients are rational elements of
/// `Z[zeta_m]` into its integer coefficient list.
pub fn integer_coefficients(poly: &[CycInt]) -> Result<Vec<BigInt>, CycError> {
    poly.iter().map(CycInt::as_integer).collect()
}

impl<'a> Add<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn add(self, rhs: &'a CycInt) -> CycInt {
        self.try_add(rhs).expect("cyclotomic modulus mismatch")
    }
}

impl<'a> Sub<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &'a CycInt) -> CycInt {
        self.try_sub(rhs).expect("cyclotomic modulus mismatch")
    }
}

impl<'a> Mul<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &'a CycInt) -> CycInt {
        self.try_mul(rhs).expect("cyclotomic modulus mismatch")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for CycInt {
    /// Polynomial form in `z = zeta_m`, e.g. `1 - z^2 + 2*z^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{j}")?,
                (_, false) => write!(f, "{mag}*z^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

const EXACT_F64_LIMIT: i64 = 1 << 53;

/// Serializes an integer as a JSON number when it is exactly representable
/// as a double and as a decimal string otherwise.
pub fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) if x.abs() <= EXACT_F64_LIMIT => s.serialize_i64(x),
        _ => s.serialize_str(&v.to_string()),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Num(i64),
    Str(String),
}

impl IntRepr {
    fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntRepr::Num(v) => Ok(BigInt::from(v)),
            IntRepr::Str(s) => s.parse().map_err(|_| E::custom(format!("invalid integer string {s:?}"))),
        }
    }
}

/// Inverse of [`BigIntList`]: accepts numbers and decimal strings.
pub fn deserialize_bigint_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    Vec::<IntRepr>::deserialize(d)?
        .into_iter()
        .map(IntRepr::into_bigint)
        .collect()
}

/// Serializes a slice of integers with [`serialize_bigint`].
pub struct BigIntList<'a>(pub &'a [BigInt]);

impl Serialize for BigIntList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for v in self.0 {
            seq.serialize_element(&BigIntElem(v))?;
        }
        seq.end()
    }
}

struct BigIntElem<'a>(&'a BigInt);

impl Serialize for BigIntElem<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigint(self.0, s)
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CycInt", 2)?;
        st.serialize_field("modulus", &self.ring.modulus)?;
        st.serialize_field("coeffs", &BigIntList(&self.coeffs))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            modulus: u64,
            #[serde(deserialize_with = "deserialize_bigint_vec")]
            coeffs: Vec<BigInt>,
        }
        let raw = Raw::deserialize(d)?;
        CycInt::from_coeffs(raw.modulus, raw.coeffs).map_err(de::Error::custom)
    }
}
