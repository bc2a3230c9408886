//! Mixed Cayley graphs `Cay(G, A u B)` and their Hermitian spectra.
//!
//! `A` is the symmetric (undirected) part and `B` the antisymmetric (arc)
//! part of the connection set. Eigenvalues are indexed by group elements:
//! `gamma_g = lambda_g + mu_g` with `lambda_g = chi_g(A)` and
//! `mu_g = i (chi_g(B) - chi_g(-B))`, all computed exactly in `Z[zeta_4n]`
//! where `n = exp(G)`. Inside that ring `zeta_{n_i} = zeta_4n^(4n / n_i)` and
//! `i = zeta_4n^n`.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{expand_linear_factors, integer_coefficients, CycInt};
use crate::group::{AbelianGroup, ElementSet, GroupElement, GroupError};
use crate::jacobi::{self, JacobiError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("connection set contains the identity")]
    ContainsZero,
    #[error("A is not symmetric: {0} in A but its negative is not")]
    ANotSymmetric(GroupElement),
    #[error("B meets -B: {0} and its negative both lie in B")]
    BMeetsMinusB(GroupElement),
    #[error("A and B overlap at {0}")]
    ABOverlap(GroupElement),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("numeric eigensolver failed: {0}")]
    Numeric(#[from] JacobiError),
    #[error("realified eigenvalues {0} and {1} do not pair up")]
    Pairing(f64, f64),
}

/// Validated pair `(A, B)` with `A = -A`, `B n -B = {}`, `A n B = {}` and
/// `0` in neither.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    group: AbelianGroup,
    a: ElementSet,
    b: ElementSet,
}

impl ConnectionSet {
    pub fn new(group: &AbelianGroup, a: ElementSet, b: ElementSet) -> Result<Self, SpectrumError> {
        for x in a.iter().chain(&b) {
            group.validate(x)?;
        }
        if a.iter().chain(&b).any(GroupElement::is_zero) {
            return Err(SpectrumError::ContainsZero);
        }
        for x in &a {
            if !a.contains(&group.neg(x)?) {
                return Err(SpectrumError::ANotSymmetric(x.clone()));
            }
        }
        for x in &b {
            if b.contains(&group.neg(x)?) {
                return Err(SpectrumError::BMeetsMinusB(x.clone()));
            }
        }
        if let Some(x) = a.intersection(&b).next() {
            return Err(SpectrumError::ABOverlap(x.clone()));
        }
        Ok(ConnectionSet { group: group.clone(), a, b })
    }

    /// Splits `S` into its symmetric part `A = { s : -s in S }` and the rest.
    pub fn split(group: &AbelianGroup, s: &ElementSet) -> Result<Self, SpectrumError> {
        let mut a = ElementSet::new();
        let mut b = ElementSet::new();
        for x in s {
            group.validate(x)?;
            if x.is_zero() {
                return Err(SpectrumError::ContainsZero);
            }
            if s.contains(&group.neg(x)?) {
                a.insert(x.clone());
            } else {
                b.insert(x.clone());
            }
        }
        ConnectionSet::new(group, a, b)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn undirected(&self) -> &ElementSet {
        &self.a
    }

    pub fn directed(&self) -> &ElementSet {
        &self.b
    }

    /// The full connection set `S = A u B`.
    pub fn union(&self) -> ElementSet {
        self.a.union(&self.b).cloned().collect()
    }

    pub fn is_undirected(&self) -> bool {
        self.b.is_empty()
    }

    /// Modulus `4 exp(G)` of the cyclotomic ring holding the spectrum.
    pub fn spectral_modulus(&self) -> u64 {
        4 * self.group.exponent()
    }

    /// Entry `h_uv` of the Hermitian adjacency matrix.
    pub fn hermitian_entry(&self, u: &GroupElement, v: &GroupElement) -> Result<HermitianEntry, SpectrumError> {
        let forward = self.group.sub(v, u)?;
        if self.a.contains(&forward) {
            Ok(HermitianEntry::One)
        } else if self.b.contains(&forward) {
            Ok(HermitianEntry::I)
        } else if self.b.contains(&self.group.neg(&forward)?) {
            Ok(HermitianEntry::MinusI)
        } else {
            Ok(HermitianEntry::Zero)
        }
    }

    /// Exponent `e` with `chi_g(x) = zeta_4n^e`.
    fn character_exponent(&self, g: &GroupElement, x: &GroupElement) -> u64 {
        let big = self.spectral_modulus();
        g.coords()
            .iter()
            .zip(x.coords())
            .zip(self.group.moduli())
            .map(|((&gi, &xi), &ni)| (big / ni) * ((gi * xi) % ni))
            .sum::<u64>()
            % big
    }

    /// `lambda_g = chi_g(A)`.
    pub fn lambda_part(&self, g: &GroupElement) -> Result<CycInt, SpectrumError> {
        self.group.validate(g)?;
        let counts = self.a.iter().map(|x| (self.character_exponent(g, x), 1));
        Ok(CycInt::from_exponent_counts(self.spectral_modulus(), counts))
    }

    /// `mu_g = i (chi_g(B) - chi_g(-B))`.
    pub fn mu_part(&self, g: &GroupElement) -> Result<CycInt, SpectrumError> {
        self.group.validate(g)?;
        let m = self.spectral_modulus();
        let n = self.group.exponent();
        let counts = self.b.iter().flat_map(|x| {
            let e = self.character_exponent(g, x);
            [(n + e, 1), (n + m - e, -1)]
        });
        Ok(CycInt::from_exponent_counts(m, counts))
    }

    /// `gamma_g = lambda_g + mu_g`.
    pub fn eigenvalue(&self, g: &GroupElement) -> Result<CycInt, SpectrumError> {
        Ok(&self.lambda_part(g)? + &self.mu_part(g)?)
    }

    /// Exact eigenvalue of every group element.
    pub fn full_spectrum(&self) -> Spectrum {
        let entries = (0..self.group.order() as usize)
            .into_par_iter()
            .map(|i| {
                let g = self.group.element_at(i);
                let lambda = self.lambda_part(&g).expect("enumerated element");
                let mu = self.mu_part(&g).expect("enumerated element");
                let gamma = &lambda + &mu;
                SpectralEntry { element: g, gamma, lambda, mu }
            })
            .collect();
        Spectrum { group: self.group.clone(), modulus: self.spectral_modulus(), entries }
    }

    /// Coefficients (ascending, monic) of `prod_g (x - gamma_g)`.
    ///
    /// Panics if a coefficient fails to be rational, which can only happen
    /// through an arithmetic bug.
    pub fn char_poly(&self) -> Vec<BigInt> {
        self.full_spectrum().char_poly()
    }

    /// The `|G| x |G|` Hermitian adjacency matrix as `(re, im)` rows in
    /// lexicographic vertex order.
    pub fn hermitian_matrix(&self) -> Vec<Vec<HermitianEntry>> {
        let vertices: Vec<GroupElement> = self.group.elements().collect();
        vertices
            .iter()
            .map(|u| {
                vertices
                    .iter()
                    .map(|v| self.hermitian_entry(u, v).expect("enumerated elements"))
                    .collect()
            })
            .collect()
    }

    /// Eigenvalues of the Hermitian adjacency matrix from a cyclic Jacobi
    /// solve of its real symmetric form `[[Re H, -Im H], [Im H, Re H]]`.
    ///
    /// `tol` bounds the off-diagonal Frobenius norm at convergence. Each
    /// eigenvalue appears twice in the real form; adjacent sorted values are
    /// paired and must agree to within `max(1e-10, 4 tol)`.
    pub fn numeric_spectrum(&self, tol: f64) -> Result<Vec<f64>, SpectrumError> {
        if !(tol > 0.0) {
            return Err(SpectrumError::InvalidTolerance(tol));
        }
        let h = self.hermitian_matrix();
        let n = h.len();
        let dim = 2 * n;
        let mut real = vec![0.0; dim * dim];
        for (u, row) in h.iter().enumerate() {
            for (v, entry) in row.iter().enumerate() {
                let (re, im) = (entry.re() as f64, entry.im() as f64);
                real[u * dim + v] = re;
                real[(u + n) * dim + (v + n)] = re;
                real[u * dim + (v + n)] = -im;
                real[(u + n) * dim + v] = im;
            }
        }
        let doubled = jacobi::symmetric_eigenvalues(&real, dim, tol)?;
        let pair_tol = f64::max(1e-10, 4.0 * tol);
        doubled
            .chunks(2)
            .map(|pair| {
                if (pair[0] - pair[1]).abs() < pair_tol {
                    Ok(0.5 * (pair[0] + pair[1]))
                } else {
                    Err(SpectrumError::Pairing(pair[0], pair[1]))
                }
            })
            .collect()
    }
}

/// `0`, `1`, `i` or `-i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HermitianEntry {
    Zero,
    One,
    I,
    MinusI,
}

impl HermitianEntry {
    pub fn re(self) -> i8 {
        match self {
            HermitianEntry::One => 1,
            _ => 0,
        }
    }

    pub fn im(self) -> i8 {
        match self {
            HermitianEntry::I => 1,
            HermitianEntry::MinusI => -1,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralEntry {
    pub element: GroupElement,
    pub gamma: CycInt,
    pub lambda: CycInt,
    pub mu: CycInt,
}

/// Exact spectrum, one entry per group element in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    group: AbelianGroup,
    modulus: u64,
    entries: Vec<SpectralEntry>,
}

impl Spectrum {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[SpectralEntry] {
        &self.entries
    }

    pub fn get(&self, g: &GroupElement) -> &SpectralEntry {
        &self.entries[self.group.index_of(g)]
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = &CycInt> {
        self.entries.iter().map(|e| &e.gamma)
    }

    /// Real parts of the complex embeddings, ascending.
    pub fn sorted_approximations(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.eigenvalues().map(|x| x.complex_embed().re).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Coefficients (ascending, monic) of `prod_g (x - gamma_g)`.
    pub fn char_poly(&self) -> Vec<BigInt> {
        let poly = expand_linear_factors(self.modulus, self.eigenvalues());
        integer_coefficients(&poly).unwrap_or_else(|_| {
            let bad = poly.iter().find(|c| !c.is_rational()).expect("some coefficient failed");
            panic!("characteristic polynomial coefficient {bad} is not rational")
        })
    }
}

/// Evaluates an integer polynomial (ascending coefficients) exactly.
pub fn eval_int_poly(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

#[derive(Serialize)]
struct EntryOut<'a> {
    g: &'a GroupElement,
    gamma: &'a CycInt,
    lambda: &'a CycInt,
    mu: &'a CycInt,
    approx: f64,
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let eigenvalues: Vec<EntryOut<'_>> = self
            .entries
            .iter()
            .map(|e| EntryOut {
                g: &e.element,
                gamma: &e.gamma,
                lambda: &e.lambda,
                mu: &e.mu,
                approx: e.gamma.complex_embed().re,
            })
            .collect();
        let mut st = s.serialize_struct("Spectrum", 3)?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.serialize_field("eigenvalues", &eigenvalues)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct EntryIn {
            g: Vec<i64>,
            gamma: CycInt,
            lambda: CycInt,
            mu: CycInt,
            #[allow(dead_code)]
            approx: f64,
        }
        #[derive(Deserialize)]
        struct Raw {
            group: AbelianGroup,
            modulus: u64,
            eigenvalues: Vec<EntryIn>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.modulus != 4 * raw.group.exponent() {
            return Err(de::Error::custom("modulus must be 4 exp(G)"));
        }
        if raw.eigenvalues.len() as u64 != raw.group.order() {
            return Err(de::Error::custom("need one eigenvalue per group element"));
        }
        let mut entries = Vec::with_capacity(raw.eigenvalues.len());
        for (i, e) in raw.eigenvalues.into_iter().enumerate() {
            let element = raw.group.element(&e.g).map_err(de::Error::custom)?;
            if raw.group.index_of(&element) != i {
                return Err(de::Error::custom("eigenvalues must be listed in element order"));
            }
            if [&e.gamma, &e.lambda, &e.mu].iter().any(|v| v.modulus() != raw.modulus) {
                return Err(de::Error::custom("eigenvalue modulus mismatch"));
            }
            entries.push(SpectralEntry { element, gamma: e.gamma, lambda: e.lambda, mu: e.mu });
        }
        Ok(Spectrum { group: raw.group, modulus: raw.modulus, entries })
    }
}

/// `{ "group": [..], "A": [[..], ..], "B": [[..], ..] }`.
impl Serialize for ConnectionSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ConnectionSet", 3)?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("A", &self.a)?;
        st.serialize_field("B", &self.b)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for ConnectionSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            group: AbelianGroup,
            #[serde(rename = "A", default)]
            a: Vec<Vec<i64>>,
            #[serde(rename = "B", default)]
            b: Vec<Vec<i64>>,
        }
        let raw = Raw::deserialize(d)?;
        let to_set = |v: &[Vec<i64>]| -> Result<ElementSet, GroupError> {
            v.iter().map(|c| raw.group.element(c)).collect()
        };
        let a = to_set(&raw.a).map_err(de::Error::custom)?;
        let b = to_set(&raw.b).map_err(de::Error::custom)?;
        ConnectionSet::new(&raw.group, a, b).map_err(de::Error::custom)
    }
}

/// Every valid connection set on a group, addressable by index.
///
/// Each self-inverse nonzero element is either absent or in `A`; each pair
/// `{x, -x}` with `x != -x` is absent, in `A`, or contributes exactly one of
/// its members to `B`. Index digits run over involutions first (base 2),
/// then pairs (base 4).
#[derive(Debug, Clone)]
pub struct ConnectionSetSpace {
    group: AbelianGroup,
    involutions: Vec<GroupElement>,
    pairs: Vec<(GroupElement, GroupElement)>,
}

impl ConnectionSetSpace {
    pub fn new(group: &AbelianGroup) -> Self {
        let mut involutions = Vec::new();
        let mut pairs = Vec::new();
        for x in group.elements().filter(|x| !x.is_zero()) {
            let neg = group.neg(&x).expect("enumerated element");
            match x.cmp(&neg) {
                std::cmp::Ordering::Equal => involutions.push(x),
                std::cmp::Ordering::Less => pairs.push((x, neg)),
                std::cmp::Ordering::Greater => {}
            }
        }
        ConnectionSetSpace { group: group.clone(), involutions, pairs }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// `2^(#involutions) * 4^(#pairs)`.
    pub fn len(&self) -> u64 {
        (1u64 << self.involutions.len()) * (1u64 << (2 * self.pairs.len()))
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, mut index: u64) -> ConnectionSet {
        assert!(index < self.len(), "connection set index out of range");
        let mut a = ElementSet::new();
        let mut b = ElementSet::new();
        for x in &self.involutions {
            if index & 1 == 1 {
                a.insert(x.clone());
            }
            index >>= 1;
        }
        for (x, neg) in &self.pairs {
            match index & 3 {
                1 => {
                    a.insert(x.clone());
                    a.insert(neg.clone());
                }
                2 => {
                    b.insert(x.clone());
                }
                3 => {
                    b.insert(neg.clone());
                }
                _ => {}
            }
            index >>= 2;
        }
        ConnectionSet { group: self.group.clone(), a, b }
    }

    pub fn iter(&self) -> impl Iterator<Item = ConnectionSet> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(m: &[i64]) -> AbelianGroup {
        AbelianGroup::new(m).unwrap()
    }

    fn set(g: &AbelianGroup, elems: &[i64]) -> ElementSet {
        elems.iter().map(|&c| g.element(&[c]).unwrap()).collect()
    }

    fn cs(g: &AbelianGroup, a: &[i64], b: &[i64]) -> ConnectionSet {
        ConnectionSet::new(g, set(g, a), set(g, b)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn make_connection_set_examples() {
        let c4 = group(&[4]);
        assert!(ConnectionSet::new(&c4, set(&c4, &[2]), set(&c4, &[1])).is_ok());
        assert!(matches!(
            ConnectionSet::new(&c4, set(&c4, &[]), set(&c4, &[1, 3])),
            Err(SpectrumError::BMeetsMinusB(_))
        ));
        let c5 = group(&[5]);
        assert!(matches!(
            ConnectionSet::new(&c5, set(&c5, &[1]), set(&c5, &[])),
            Err(SpectrumError::ANotSymmetric(_))
        ));
        assert_eq!(
            ConnectionSet::new(&c4, set(&c4, &[0]), set(&c4, &[])),
            Err(SpectrumError::ContainsZero)
        );
        assert!(matches!(
            ConnectionSet::new(&c4, set(&c4, &[2]), set(&c4, &[2])),
            Err(SpectrumError::BMeetsMinusB(_))
        ));
        assert!(matches!(
            ConnectionSet::new(&c5, set(&c5, &[1, 4]), set(&c5, &[1])),
            Err(SpectrumError::ABOverlap(_))
        ));
    }

    #[test]
    fn split_examples() {
        let c4 = group(&[4]);
        let s = ConnectionSet::split(&c4, &set(&c4, &[1, 2])).unwrap();
        assert_eq!(s, cs(&c4, &[2], &[1]));
        let c5 = group(&[5]);
        let s = ConnectionSet::split(&c5, &set(&c5, &[1, 4])).unwrap();
        assert_eq!(s, cs(&c5, &[1, 4], &[]));
        let c3 = group(&[3]);
        let s = ConnectionSet::split(&c3, &set(&c3, &[1])).unwrap();
        assert_eq!(s, cs(&c3, &[], &[1]));
        assert_eq!(ConnectionSet::split(&c3, &set(&c3, &[0, 1])), Err(SpectrumError::ContainsZero));
    }

    #[test]
    fn hermitian_entry_examples() {
        let c4 = group(&[4]);
        let s = cs(&c4, &[], &[1]);
        let e = |x: i64| c4.element(&[x]).unwrap();
        assert_eq!(s.hermitian_entry(&e(0), &e(1)).unwrap(), HermitianEntry::I);
        assert_eq!(s.hermitian_entry(&e(1), &e(0)).unwrap(), HermitianEntry::MinusI);
        assert_eq!(s.hermitian_entry(&e(2), &e(2)).unwrap(), HermitianEntry::Zero);
        let s = cs(&c4, &[2], &[]);
        assert_eq!(s.hermitian_entry(&e(1), &e(3)).unwrap(), HermitianEntry::One);
    }

    #[test]
    fn lambda_mu_examples() {
        let c5 = group(&[5]);
        let s = cs(&c5, &[1, 4], &[]);
        assert_eq!(s.lambda_part(&c5.zero()).unwrap(), CycInt::from_integer(20, 2));
        assert!(s.mu_part(&c5.zero()).unwrap().is_zero());
        // zeta_5 = zeta_20^4
        let expected = &CycInt::root_power(20, 4) + &CycInt::root_power(20, 16);
        assert_eq!(s.lambda_part(&c5.element(&[1]).unwrap()).unwrap(), expected);

        let c4 = group(&[4]);
        let s = cs(&c4, &[], &[1]);
        assert_eq!(s.mu_part(&c4.element(&[1]).unwrap()).unwrap(), CycInt::from_integer(16, -2));
    }

    #[test]
    fn directed_four_cycle() {
        let c4 = group(&[4]);
        let s = cs(&c4, &[], &[1]);
        let values: Vec<BigInt> = s
            .full_spectrum()
            .eigenvalues()
            .map(|v| v.as_integer().unwrap())
            .collect();
        assert_eq!(values, ints(&[0, -2, 0, 2]));
        assert_eq!(s.char_poly(), ints(&[0, 0, -4, 0, 1]));
        let num = s.numeric_spectrum(1e-12).unwrap();
        for (x, y) in num.iter().zip([-2.0, 0.0, 0.0, 2.0]) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn directed_triangle() {
        let c3 = group(&[3]);
        let s = cs(&c3, &[], &[1]);
        let spec = s.full_spectrum();
        let approx: Vec<f64> = spec.eigenvalues().map(|v| v.complex_embed().re).collect();
        let r3 = 3f64.sqrt();
        for (x, y) in approx.iter().zip([0.0, -r3, r3]) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
        assert!(!spec.entries()[1].gamma.is_rational());
        assert_eq!(spec.entries()[1].gamma, -&spec.entries()[2].gamma);
        // x^3 - 3x
        assert_eq!(s.char_poly(), ints(&[0, -3, 0, 1]));
    }

    #[test]
    fn five_cycle() {
        let c5 = group(&[5]);
        let s = cs(&c5, &[1, 4], &[]);
        assert_eq!(s.char_poly(), ints(&[-2, 5, 0, -5, 0, 1]));
        let exact = s.full_spectrum().sorted_approximations();
        let num = s.numeric_spectrum(1e-12).unwrap();
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let expected = [-1.0 - golden, -1.0 - golden, golden, golden, 2.0];
        for ((x, y), z) in exact.iter().zip(&num).zip(expected) {
            assert!((x - z).abs() < 1e-9 && (y - z).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_and_complete() {
        let g = group(&[2, 3]);
        let empty = ConnectionSet::new(&g, ElementSet::new(), ElementSet::new()).unwrap();
        assert!(empty.full_spectrum().eigenvalues().all(CycInt::is_zero));
        assert_eq!(empty.char_poly(), ints(&[0, 0, 0, 0, 0, 0, 1]));
        assert!(empty.numeric_spectrum(1e-12).unwrap().iter().all(|x| x.abs() < 1e-12));

        let all: ElementSet = g.elements().filter(|x| !x.is_zero()).collect();
        let complete = ConnectionSet::new(&g, all, ElementSet::new()).unwrap();
        let values: Vec<BigInt> = complete
            .full_spectrum()
            .eigenvalues()
            .map(|v| v.as_integer().unwrap())
            .collect();
        assert_eq!(values, ints(&[5, -1, -1, -1, -1, -1]));
    }

    #[test]
    fn numeric_rejects_bad_tolerance() {
        let c3 = group(&[3]);
        let s = cs(&c3, &[], &[1]);
        assert!(matches!(s.numeric_spectrum(0.0), Err(SpectrumError::InvalidTolerance(_))));
        assert!(matches!(s.numeric_spectrum(f64::NAN), Err(SpectrumError::InvalidTolerance(_))));
    }

    #[test]
    fn connection_set_space_counts() {
        assert_eq!(ConnectionSetSpace::new(&group(&[12])).len(), 2048);
        assert_eq!(ConnectionSetSpace::new(&group(&[4])).len(), 8);
        assert_eq!(ConnectionSetSpace::new(&group(&[2, 2])).len(), 8);
        assert_eq!(ConnectionSetSpace::new(&group(&[1])).len(), 1);
        let space = ConnectionSetSpace::new(&group(&[5]));
        let all: std::collections::HashSet<ConnectionSet> = space.iter().collect();
        assert_eq!(all.len(), 16);
        for s in &all {
            ConnectionSet::new(s.group(), s.undirected().clone(), s.directed().clone()).unwrap();
        }
    }

    #[test]
    fn connection_set_json() {
        let g = group(&[4, 3]);
        let a: ElementSet = [[1, 0], [3, 0]].iter().map(|c| g.element(c).unwrap()).collect();
        let b: ElementSet = [[0, 1]].iter().map(|c| g.element(c).unwrap()).collect();
        let s = ConnectionSet::new(&g, a, b).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"group":[4,3],"A":[[1,0],[3,0]],"B":[[0,1]]}"#);
        assert_eq!(serde_json::from_str::<ConnectionSet>(&json).unwrap(), s);
        assert!(serde_json::from_str::<ConnectionSet>(r#"{"group":[4],"B":[[1],[3]]}"#).is_err());
    }

    #[test]
    fn spectrum_json_round_trip() {
        let c3 = group(&[3]);
        let spec = cs(&c3, &[], &[1]).full_spectrum();
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.starts_with(r#"{"group":[3],"modulus":12,"eigenvalues":[{"g":[0],"gamma""#));
        assert_eq!(serde_json::from_str::<Spectrum>(&json).unwrap(), spec);
    }
}
