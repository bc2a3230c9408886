//! Finite abelian groups written as products of cyclic factors.
//!
//! Elements are residue vectors with one coordinate per factor. The unit
//! groups of `Z_m` act on a group by scalar multiplication, and the orbits of
//! those actions (atoms and their mod-4 refinements) drive the integrality
//! characterization in [`crate::splitting`].

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid element: expected {expected} coordinates, got {got}")]
    InvalidElement { expected: usize, got: usize },
    #[error("element {0} does not have order divisible by 4")]
    NotInG4(GroupElement),
}

/// A set of group elements, iterated in lexicographic order.
pub type ElementSet = BTreeSet<GroupElement>;

/// `Z_{n_1} x ... x Z_{n_r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u64>")]
pub struct AbelianGroup {
    moduli: Vec<u64>,
    order: u64,
    exponent: u64,
}

/// Residue vector `(g_1, ..., g_r)` with `0 <= g_i < n_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

impl TryFrom<Vec<i64>> for AbelianGroup {
    type Error = GroupError;

    fn try_from(moduli: Vec<i64>) -> Result<Self, Self::Error> {
        AbelianGroup::new(&moduli)
    }
}

impl From<AbelianGroup> for Vec<u64> {
    fn from(g: AbelianGroup) -> Self {
        g.moduli
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.moduli.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z{m}")?;
        }
        Ok(())
    }
}

impl AbelianGroup {
    /// Builds the group from its cyclic factor sizes. Factors need not be
    /// prime powers.
    pub fn new(moduli: &[i64]) -> Result<Self, GroupError> {
        if moduli.is_empty() {
            return Err(GroupError::InvalidGroup("no cyclic factors given".into()));
        }
        if let Some(bad) = moduli.iter().find(|&&m| m < 1) {
            return Err(GroupError::InvalidGroup(format!("modulus {bad} is not positive")));
        }
        let moduli: Vec<u64> = moduli.iter().map(|&m| m as u64).collect();
        let order = moduli
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| GroupError::InvalidGroup("group order overflows u64".into()))?;
        let exponent = moduli.iter().fold(1u64, |acc, &m| acc.lcm(&m));
        Ok(AbelianGroup { moduli, order, exponent })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `exp(G) = lcm(n_1, ..., n_r)`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    /// Builds an element, reducing every coordinate into `[0, n_i)`.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        self.check_len(coords.len())?;
        let coords = coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    fn check_len(&self, got: usize) -> Result<(), GroupError> {
        if got != self.rank() {
            return Err(GroupError::InvalidElement { expected: self.rank(), got });
        }
        Ok(())
    }

    /// Checks that `x` has the right shape and reduced coordinates.
    pub fn validate(&self, x: &GroupElement) -> Result<(), GroupError> {
        self.check_len(x.coords.len())?;
        if x.coords.iter().zip(&self.moduli).any(|(&c, &n)| c >= n) {
            return Err(GroupError::InvalidGroup(format!("element {x} has unreduced coordinates")));
        }
        Ok(())
    }

    /// Position of `x` in the lexicographic enumeration.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.coords
            .iter()
            .zip(&self.moduli)
            .fold(0u64, |acc, (&c, &n)| acc * n + c) as usize
    }

    /// Inverse of [`AbelianGroup::index_of`].
    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0u64; self.rank()];
        for (slot, &n) in coords.iter_mut().zip(&self.moduli).rev() {
            *slot = index as u64 % n;
            index /= n as usize;
        }
        GroupElement { coords }
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(move |i| self.element_at(i))
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_len(x.coords.len())?;
        self.check_len(y.coords.len())?;
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&self.moduli)
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_len(x.coords.len())?;
        let coords = x
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(&a, &n)| (n - a % n) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.add(x, &self.neg(y)?)
    }

    /// `k x = (k x_1, ..., k x_r)`; `k` may be any integer.
    pub fn scalar_mul(&self, k: i64, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_len(x.coords.len())?;
        let coords = x
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(&a, &n)| {
                let k = k.rem_euclid(n as i64) as u128;
                ((k * a as u128) % n as u128) as u64
            })
            .collect();
        Ok(GroupElement { coords })
    }

    /// Image of a whole set under `x -> k x`.
    pub fn scale_set(&self, k: i64, set: &ElementSet) -> Result<ElementSet, GroupError> {
        set.iter().map(|x| self.scalar_mul(k, x)).collect()
    }

    pub fn neg_set(&self, set: &ElementSet) -> Result<ElementSet, GroupError> {
        set.iter().map(|x| self.neg(x)).collect()
    }

    /// Smallest `t >= 1` with `t x = 0`.
    pub fn order_of(&self, x: &GroupElement) -> u64 {
        x.coords
            .iter()
            .zip(&self.moduli)
            .fold(1u64, |acc, (&c, &n)| acc.lcm(&(n / c.gcd(&n))))
    }

    /// `{ k x : k in multipliers }`.
    pub fn orbit(&self, multipliers: &UnitSet, x: &GroupElement) -> Result<ElementSet, GroupError> {
        multipliers
            .elements()
            .iter()
            .map(|&k| self.scalar_mul(k as i64, x))
            .collect()
    }

    /// The atom `[g] = { k g : k in Z_{o(g)}^* }` of the Boolean algebra
    /// generated by the subgroups of `G`.
    pub fn atom(&self, g: &GroupElement) -> Result<ElementSet, GroupError> {
        self.orbit(&UnitSet::units(self.order_of(g)), g)
    }

    /// `[[g]] = { k g : k in Z_{o(g)}^*, k = 1 (mod 4) }`, defined for `g` of
    /// order divisible by 4.
    pub fn atom_mod4(&self, g: &GroupElement) -> Result<ElementSet, GroupError> {
        self.validate(g)?;
        let order = self.order_of(g);
        if order % 4 != 0 {
            return Err(GroupError::NotInG4(g.clone()));
        }
        UnitSet::units(order)
            .elements()
            .iter()
            .filter(|&&k| k % 4 == 1)
            .map(|&k| self.scalar_mul(k as i64, g))
            .collect()
    }

    /// `G(4)`: elements whose order is divisible by 4.
    pub fn g4_subset(&self) -> ElementSet {
        self.elements().filter(|g| self.order_of(g) % 4 == 0).collect()
    }

    /// All distinct atoms, each listed once, ordered by their smallest member.
    pub fn atoms(&self) -> Vec<ElementSet> {
        let mut seen = vec![false; self.order as usize];
        let mut out = Vec::new();
        for g in self.elements() {
            if seen[self.index_of(&g)] {
                continue;
            }
            let atom = self.atom(&g).expect("enumerated elements are valid");
            for x in &atom {
                seen[self.index_of(x)] = true;
            }
            out.push(atom);
        }
        out
    }

    /// All distinct `[[g]]` classes for `g` in `G(4)`.
    pub fn mod4_classes(&self) -> Vec<ElementSet> {
        let mut seen = vec![false; self.order as usize];
        let mut out = Vec::new();
        for g in self.g4_subset() {
            if seen[self.index_of(&g)] {
                continue;
            }
            let class = self.atom_mod4(&g).expect("g lies in G(4)");
            for x in &class {
                seen[self.index_of(x)] = true;
            }
            out.push(class);
        }
        out
    }
}

/// Every multiset of cyclic factors (each at least 2) with product at most
/// `max_order`, ordered by group order, then number of factors, then factor
/// list.
pub fn groups_up_to_order(max_order: u64) -> Vec<AbelianGroup> {
    fn extend(start: u64, product: u64, max: u64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let mut m = start;
        while product * m <= max {
            prefix.push(m as i64);
            out.push(prefix.clone());
            extend(m, product * m, max, prefix, out);
            prefix.pop();
            m += 1;
        }
    }
    let mut factor_lists = Vec::new();
    extend(2, 1, max_order, &mut Vec::new(), &mut factor_lists);
    let mut groups: Vec<AbelianGroup> = factor_lists
        .iter()
        .map(|m| AbelianGroup::new(m).expect("factors are at least 2"))
        .collect();
    groups.sort_by(|a, b| {
        (a.order, a.moduli.len(), &a.moduli).cmp(&(b.order, b.moduli.len(), &b.moduli))
    });
    groups
}

/// A set of units modulo `m`, sorted and duplicate free. For `m <= 2` the
/// single class is written as `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitSet {
    modulus: u64,
    elements: Vec<u64>,
}

/// `a b mod m` on canonical unit representatives.
pub fn mul_units(a: u64, b: u64, m: u64) -> u64 {
    if m <= 2 {
        return 1;
    }
    ((a as u128 * b as u128) % m as u128) as u64
}

impl UnitSet {
    /// The full unit group `Z_m^*`.
    pub fn units(m: u64) -> Self {
        assert!(m >= 1, "unit group modulus must be positive");
        if m <= 2 {
            return UnitSet { modulus: m, elements: vec![1] };
        }
        let elements = (1..m).filter(|k| k.gcd(&m) == 1).collect();
        UnitSet { modulus: m, elements }
    }

    /// Builds a unit set from arbitrary representatives, reducing and
    /// deduplicating them. Returns `None` if some value is not a unit.
    pub fn from_elements(m: u64, values: impl IntoIterator<Item = u64>) -> Option<Self> {
        assert!(m >= 1, "unit group modulus must be positive");
        let mut set = BTreeSet::new();
        for v in values {
            if m <= 2 {
                if m == 2 && v % 2 == 0 {
                    return None;
                }
                set.insert(1);
                continue;
            }
            let r = v % m;
            if r.gcd(&m) != 1 {
                return None;
            }
            set.insert(r);
        }
        Some(UnitSet { modulus: m, elements: set.into_iter().collect() })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, k: u64) -> bool {
        let k = if self.modulus <= 2 { 1 } else { k % self.modulus };
        self.elements.binary_search(&k).is_ok()
    }

    /// Contains 1 and is closed under multiplication mod the modulus.
    pub fn is_subgroup(&self) -> bool {
        self.contains(1)
            && self.elements.iter().all(|&a| {
                self.elements
                    .iter()
                    .all(|&b| self.contains(mul_units(a, b, self.modulus)))
            })
    }
}

/// Euler's totient from the prime factorization of `m`.
pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1);
    let mut rest = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            phi = phi / p * (p - 1);
        }
        p += 1;
    }
    if rest > 1 {
        phi = phi / rest * (rest - 1);
    }
    phi
}
