//! Splitting fields, algebraic degrees and integrality of mixed Cayley graphs.
//!
//! Every eigenvalue of `Cay(G, A u B)` lies in `Q(zeta_4n)`, `n = exp(G)`. The
//! splitting field is the fixed field of the unit subgroup
//!
//! ```text
//! H = { h in Z_4n^* : hA = A, and hB = B if h = 1 (mod 4), hB = -B if h = 3 (mod 4) }
//! ```
//!
//! so its degree over `Q` is `phi(4n) / |H|`. [`combinatorial_stabilizer`]
//! computes `H` from the connection set alone; [`galois_fixing_stabilizer`]
//! recomputes it from the exact eigenvalues alone and serves as the oracle.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{expand_linear_factors, integer_coefficients, BigIntList, CycInt};
use crate::group::{euler_phi, mul_units, AbelianGroup, ElementSet, UnitSet};
use crate::spectrum::{ConnectionSet, Spectrum};

/// Default bound on `#atoms + #[[g]] classes` for [`enumerate_integral_sets`].
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplittingError {
    #[error("{value} is not a unit modulo {modulus}")]
    InvalidUnit { value: i64, modulus: u64 },
    #[error("connection set has a directed part")]
    NotUndirected,
    #[error("lift multiplier must be positive, got {0}")]
    InvalidMultiplier(u64),
    #[error("enumeration needs {classes} orbit classes, cap is {cap}")]
    EnumerationTooLarge { classes: usize, cap: usize },
}

/// `F` (units `= 1 mod 4`) or `-F` (units `= 3 mod 4`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mod4Class {
    F,
    MinusF,
}

pub fn mod4_class(k: i64) -> Result<Mod4Class, SplittingError> {
    match k.rem_euclid(4) {
        1 => Ok(Mod4Class::F),
        3 => Ok(Mod4Class::MinusF),
        _ => Err(SplittingError::InvalidUnit { value: k, modulus: 4 }),
    }
}

/// A subgroup of `Z_m^*` describing a subfield of `Q(zeta_m)` as a fixed field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StabilizerSubgroup {
    units: UnitSet,
}

impl StabilizerSubgroup {
    /// Wraps a unit set, panicking unless it is a subgroup.
    fn from_units(units: UnitSet) -> Self {
        assert!(units.is_subgroup(), "stabilizer {:?} is not a subgroup", units.elements());
        StabilizerSubgroup { units }
    }

    pub fn new(modulus: u64, elements: impl IntoIterator<Item = u64>) -> Option<Self> {
        let units = UnitSet::from_elements(modulus, elements)?;
        units.is_subgroup().then_some(StabilizerSubgroup { units })
    }

    pub fn modulus(&self) -> u64 {
        self.units.modulus()
    }

    pub fn elements(&self) -> &[u64] {
        self.units.elements()
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn contains(&self, k: u64) -> bool {
        self.units.contains(k)
    }

    pub fn is_subgroup(&self) -> bool {
        self.units.is_subgroup()
    }

    /// `phi(m) / |H|`, the degree of the fixed field.
    pub fn index(&self) -> u64 {
        let (q, r) = euler_phi(self.modulus()).div_rem(&(self.len() as u64));
        assert_eq!(r, 0, "|H| = {} does not divide phi({})", self.len(), self.modulus());
        q
    }

    /// Smallest unit of each coset, ascending.
    pub fn coset_reps(&self) -> Vec<u64> {
        let m = self.modulus();
        let all = UnitSet::units(m);
        let mut covered = std::collections::BTreeSet::new();
        let mut reps = Vec::new();
        for &u in all.elements() {
            if covered.contains(&u) {
                continue;
            }
            reps.push(u);
            covered.extend(self.elements().iter().map(|&h| mul_units(u, h, m)));
        }
        reps
    }
}

fn preserves(group: &AbelianGroup, k: u64, set: &ElementSet, target: &ElementSet) -> bool {
    set.iter()
        .all(|x| target.contains(&group.scalar_mul(k as i64, x).expect("set members are valid")))
}

/// `H` from the connection set: a scan of `Z_4n^*` with set-equality tests.
pub fn combinatorial_stabilizer(cs: &ConnectionSet) -> StabilizerSubgroup {
    let g = cs.group();
    let m = cs.spectral_modulus();
    let a = cs.undirected();
    let b = cs.directed();
    let minus_b = g.neg_set(b).expect("valid set");
    let units = UnitSet::units(m);
    let members = units.elements().iter().copied().filter(|&h| {
        let b_target = if h % 4 == 1 { b } else { &minus_b };
        preserves(g, h, a, a) && preserves(g, h, b, b_target)
    });
    StabilizerSubgroup::from_units(UnitSet::from_elements(m, members).expect("units"))
}

/// Units `k` whose automorphism `zeta -> zeta^k` fixes every eigenvalue.
/// Uses only the exact spectrum, never the connection set.
pub fn galois_fixing_stabilizer(spec: &Spectrum) -> StabilizerSubgroup {
    let m = spec.modulus();
    let units = UnitSet::units(m);
    let members = units.elements().iter().copied().filter(|&k| {
        spec.eigenvalues()
            .all(|v| v.galois_apply(k as i64).expect("k is a unit") == *v)
    });
    StabilizerSubgroup::from_units(UnitSet::from_elements(m, members).expect("units"))
}

/// `H' = { h in Z_n^* : hA = A }` for an undirected connection set.
pub fn undirected_stabilizer(cs: &ConnectionSet) -> Result<StabilizerSubgroup, SplittingError> {
    if !cs.is_undirected() {
        return Err(SplittingError::NotUndirected);
    }
    let g = cs.group();
    let n = g.exponent();
    let a = cs.undirected();
    let members = UnitSet::units(n)
        .elements()
        .iter()
        .copied()
        .filter(|&h| preserves(g, h, a, a))
        .collect::<Vec<_>>();
    Ok(StabilizerSubgroup::from_units(UnitSet::from_elements(n, members).expect("units")))
}

/// Smallest `h` in `h', h' + n, ..., h' + (m - 1) n` coprime to `mn`, taking
/// `h'` in `[1, n]`.
pub fn lift_unit(n: u64, m: u64, h_prime: i64) -> Result<u64, SplittingError> {
    if m == 0 {
        return Err(SplittingError::InvalidMultiplier(m));
    }
    if n == 0 {
        return Err(SplittingError::InvalidUnit { value: h_prime, modulus: n });
    }
    let base = (h_prime - 1).rem_euclid(n as i64) as u64 + 1;
    if base.gcd(&n) != 1 {
        return Err(SplittingError::InvalidUnit { value: h_prime, modulus: n });
    }
    let mn = m * n;
    let h = (0..m)
        .map(|i| base + i * n)
        .find(|h| h.gcd(&mn) == 1)
        .expect("some lift of a unit mod n is a unit mod mn");
    Ok(h)
}

/// A primitive element of the splitting field found among Gauss periods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldGenerator {
    pub theta: CycInt,
    /// Ascending, monic.
    pub min_poly: Vec<BigInt>,
}

/// Splitting field of a mixed Cayley graph as the fixed field of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingFieldReport {
    pub modulus: u64,
    pub stabilizer: StabilizerSubgroup,
    pub degree: u64,
    pub coset_reps: Vec<u64>,
    pub generator: Option<FieldGenerator>,
}

impl SplittingFieldReport {
    pub fn generator_found(&self) -> bool {
        self.generator.is_some()
    }
}

/// Gauss periods `sum_{h in H} zeta^(c h)` for `c = 1..=m`; the first one
/// with `degree` distinct conjugates generates the fixed field.
fn find_generator(stabilizer: &StabilizerSubgroup, reps: &[u64], degree: u64) -> Option<FieldGenerator> {
    let m = stabilizer.modulus();
    for c in 1..=m {
        let theta = CycInt::from_exponent_counts(
            m,
            stabilizer.elements().iter().map(|&h| ((c * h) % m, 1)),
        );
        let mut conjugates: Vec<CycInt> = Vec::with_capacity(reps.len());
        for &r in reps {
            let conj = theta.galois_apply(r as i64).expect("coset reps are units");
            if !conjugates.contains(&conj) {
                conjugates.push(conj);
            }
        }
        if conjugates.len() as u64 != degree {
            continue;
        }
        let poly = expand_linear_factors(m, &conjugates);
        let min_poly = integer_coefficients(&poly)
            .unwrap_or_else(|_| panic!("minimal polynomial of Gauss period {c} is not rational"));
        return Some(FieldGenerator { theta, min_poly });
    }
    None
}

pub fn splitting_field_report(cs: &ConnectionSet) -> SplittingFieldReport {
    let stabilizer = combinatorial_stabilizer(cs);
    let degree = stabilizer.index();
    let coset_reps = stabilizer.coset_reps();
    assert_eq!(coset_reps.len() as u64, degree);
    let generator = find_generator(&stabilizer, &coset_reps, degree);
    SplittingFieldReport { modulus: cs.spectral_modulus(), stabilizer, degree, coset_reps, generator }
}

/// Algebraic degree `phi(4n) / |H|`.
pub fn algebraic_degree(cs: &ConnectionSet) -> u64 {
    combinatorial_stabilizer(cs).index()
}

/// Every eigenvalue is a rational integer. Cross-checked against
/// `degree == 1`; a disagreement panics.
pub fn is_integral_exact(cs: &ConnectionSet) -> bool {
    let spectrum_route = cs.full_spectrum().eigenvalues().all(CycInt::is_rational);
    let degree_route = algebraic_degree(cs) == 1;
    assert_eq!(
        spectrum_route, degree_route,
        "rational spectrum and degree 1 disagree on {cs:?}"
    );
    spectrum_route
}

/// Integrality through atoms: `A` is a union of atoms `[g]`; `B` is empty when
/// `4` does not divide `n` and otherwise a union of classes `[[g]]` inside
/// `G(4)`. Cross-checked against the multiplier form (`kA = A` for all of
/// `Z_4n^*`, `kB = B` for all `k = 1 mod 4`); a disagreement panics.
pub fn is_integral_characterized(cs: &ConnectionSet) -> bool {
    let by_atoms = integral_by_atoms(cs);
    let by_multipliers = integral_by_multipliers(cs);
    assert_eq!(by_atoms, by_multipliers, "atom and multiplier integrality tests disagree on {cs:?}");
    by_atoms
}

fn integral_by_atoms(cs: &ConnectionSet) -> bool {
    let g = cs.group();
    let a = cs.undirected();
    let b = cs.directed();
    let a_ok = a.iter().all(|x| g.atom(x).expect("valid").is_subset(a));
    if !a_ok {
        return false;
    }
    if g.exponent() % 4 != 0 {
        return b.is_empty();
    }
    b.iter()
        .all(|x| g.order_of(x) % 4 == 0 && g.atom_mod4(x).expect("x lies in G(4)").is_subset(b))
}

fn integral_by_multipliers(cs: &ConnectionSet) -> bool {
    let g = cs.group();
    let a = cs.undirected();
    let b = cs.directed();
    UnitSet::units(cs.spectral_modulus()).elements().iter().all(|&k| {
        preserves(g, k, a, a) && (k % 4 != 1 || preserves(g, k, b, b))
    })
}

/// All integral mixed Cayley graphs on `group`, including the empty one.
///
/// Each nonzero atom outside `G(4)` is either left out or put in `A`. Each
/// atom inside `G(4)` splits into `[[g]]` and `[[-g]]` and is left out, put
/// in `A`, or contributes one of its two halves to `B`.
pub fn enumerate_integral_sets(group: &AbelianGroup, cap: usize) -> Result<Vec<ConnectionSet>, SplittingError> {
    let mut plain = Vec::new();
    let mut split = Vec::new();
    for atom in group.atoms() {
        let first = atom.first().expect("atoms are nonempty").clone();
        if first.is_zero() {
            continue;
        }
        if group.order_of(&first) % 4 == 0 {
            let half = group.atom_mod4(&first).expect("in G(4)");
            let other: ElementSet = atom.difference(&half).cloned().collect();
            split.push((atom, half, other));
        } else {
            plain.push(atom);
        }
    }
    let classes = plain.len() + 3 * split.len();
    if classes > cap {
        return Err(SplittingError::EnumerationTooLarge { classes, cap });
    }
    let total = (1u64 << plain.len()) * 4u64.pow(split.len() as u32);
    let mut out = Vec::with_capacity(total as usize);
    for mut index in 0..total {
        let mut a = ElementSet::new();
        let mut b = ElementSet::new();
        for atom in &plain {
            if index & 1 == 1 {
                a.extend(atom.iter().cloned());
            }
            index >>= 1;
        }
        for (atom, half, other) in &split {
            match index & 3 {
                1 => a.extend(atom.iter().cloned()),
                2 => b.extend(half.iter().cloned()),
                3 => b.extend(other.iter().cloned()),
                _ => {}
            }
            index >>= 2;
        }
        let cs = ConnectionSet::new(group, a, b).expect("atom unions form valid connection sets");
        assert!(is_integral_exact(&cs), "enumerated set {cs:?} is not integral");
        out.push(cs);
    }
    Ok(out)
}

#[derive(Serialize)]
struct GeneratorOut<'a> {
    coeffs: BigIntList<'a>,
    min_poly: BigIntList<'a>,
}

impl Serialize for SplittingFieldReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SplittingFieldReport", 5)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.serialize_field("stabilizer", self.stabilizer.elements())?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("coset_reps", &self.coset_reps)?;
        let generator = self.generator.as_ref().map(|g| GeneratorOut {
            coeffs: BigIntList(g.theta.coeffs()),
            min_poly: BigIntList(&g.min_poly),
        });
        st.serialize_field("generator", &generator)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SplittingFieldReport {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use crate::cyclotomic::deserialize_bigint_vec;
        #[derive(Deserialize)]
        struct GeneratorIn {
            #[serde(deserialize_with = "deserialize_bigint_vec")]
            coeffs: Vec<BigInt>,
            #[serde(deserialize_with = "deserialize_bigint_vec")]
            min_poly: Vec<BigInt>,
        }
        #[derive(Deserialize)]
        struct Raw {
            modulus: u64,
            stabilizer: Vec<u64>,
            degree: u64,
            coset_reps: Vec<u64>,
            generator: Option<GeneratorIn>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.modulus == 0 {
            return Err(de::Error::custom("modulus must be positive"));
        }
        let stabilizer = StabilizerSubgroup::new(raw.modulus, raw.stabilizer)
            .ok_or_else(|| de::Error::custom("stabilizer is not a unit subgroup"))?;
        if stabilizer.index() != raw.degree || raw.coset_reps.len() as u64 != raw.degree {
            return Err(de::Error::custom("degree inconsistent with stabilizer"));
        }
        let generator = raw
            .generator
            .map(|g| -> Result<FieldGenerator, D::Error> {
                let theta = CycInt::from_coeffs(raw.modulus, g.coeffs).map_err(de::Error::custom)?;
                Ok(FieldGenerator { theta, min_poly: g.min_poly })
            })
            .transpose()?;
        Ok(SplittingFieldReport {
            modulus: raw.modulus,
            stabilizer,
            degree: raw.degree,
            coset_reps: raw.coset_reps,
            generator,
        })
    }
}
