//! Zero-divisor classes, finite-alphabet function representatives and the
//! annihilator predicates.
//!
//! A zero-divisor is a function whose zero set and cozero set both have
//! positive measure. Everything the graph rules need about a function is its
//! zero set up to null sets, so a class is represented by its zero set
//! ([`ZClass`]). On an atomic space, [`ExpandedFunction`] gives a finite model
//! of the individual functions: one value per atom from `{0, .., k-1}`, where
//! `0` is the only zero symbol.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::measure_space::{rational, AtomSet, AtomicSpace, IntervalSet, MeasurableSet, MeasureError, MeasureSpace};

/// Upper bound on `k^n` for exhaustive function enumeration.
pub const MAX_ASSIGNMENTS: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniverseError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("zero set {0} does not define a zero-divisor (it or its complement is null)")]
    NotZeroDivisor(String),
    #[error("alphabet size must be between 2 and 255, got {0}")]
    BadAlphabet(usize),
    #[error("{k}^{n} assignments exceed the enumeration bound of {MAX_ASSIGNMENTS}")]
    TooManyAssignments { n: usize, k: usize },
    #[error("function has {got} values but the space has {atoms} atoms")]
    LengthMismatch { got: usize, atoms: usize },
    #[error("value {value} is outside the alphabet of size {k}")]
    ValueOutOfAlphabet { value: u8, k: usize },
    #[error("malformed literal `{0}`")]
    Parse(String),
}

/// A null-equivalence class of zero-divisors, keyed by its zero set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZClass {
    zero_set: MeasurableSet,
}

impl ZClass {
    /// Validates that both `zero_set` and its complement have positive
    /// measure in `space`.
    pub fn new(space: &MeasureSpace, zero_set: MeasurableSet) -> Result<Self, UniverseError> {
        if is_zero_divisor_set(space, &zero_set)? {
            Ok(ZClass { zero_set })
        } else {
            Err(UniverseError::NotZeroDivisor(zero_set.to_string()))
        }
    }

    /// Parses a `Z={0,2}` literal (the `Z=` prefix is optional).
    pub fn parse(space: &MeasureSpace, text: &str) -> Result<Self, UniverseError> {
        let body = text.trim();
        let body = body.strip_prefix("Z=").unwrap_or(body);
        let set: MeasurableSet = body.parse()?;
        Self::new(space, set)
    }

    pub fn zero_set(&self) -> &MeasurableSet {
        &self.zero_set
    }

    pub fn cozero_set(&self, space: &MeasureSpace) -> Result<MeasurableSet, UniverseError> {
        Ok(space.complement(&self.zero_set)?)
    }

    /// The class of `X ∖ Z`, which is again a zero-divisor class.
    pub fn complement(&self, space: &MeasureSpace) -> Result<ZClass, UniverseError> {
        ZClass::new(space, self.cozero_set(space)?)
    }
}

impl fmt::Display for ZClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z={}", self.zero_set)
    }
}

impl Serialize for ZClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `μ(Z) > 0` and `μ(X ∖ Z) > 0`.
pub fn is_zero_divisor_set(space: &MeasureSpace, zero_set: &MeasurableSet) -> Result<bool, UniverseError> {
    let cozero = space.complement(zero_set)?;
    Ok(!space.is_null(zero_set)? && !space.is_null(&cozero)?)
}

/// All zero-divisor classes of an atomic space: the proper nonempty atom
/// subsets, in increasing bit-mask order. A single atom has none.
pub fn enumerate_zclasses(space: &AtomicSpace) -> Vec<ZClass> {
    let n = space.atoms();
    if n < 2 {
        return Vec::new();
    }
    let full = AtomSet::full(n).bits();
    (1..full).map(|bits| ZClass { zero_set: AtomSet::from_bits(bits).into() }).collect()
}

/// A function on an atomic space, given by its value on each atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpandedFunction {
    values: Vec<u8>,
}

impl ExpandedFunction {
    pub fn new(values: Vec<u8>) -> Self {
        ExpandedFunction { values }
    }

    /// Checks the length against `space` and every value against `k`.
    pub fn checked(space: &AtomicSpace, k: usize, values: Vec<u8>) -> Result<Self, UniverseError> {
        check_alphabet(k)?;
        if values.len() != space.atoms() {
            return Err(UniverseError::LengthMismatch { got: values.len(), atoms: space.atoms() });
        }
        if let Some(&value) = values.iter().find(|&&v| v as usize >= k) {
            return Err(UniverseError::ValueOutOfAlphabet { value, k });
        }
        Ok(ExpandedFunction { values })
    }

    /// Indicator function `1_A` on `n` atoms.
    pub fn indicator(n: usize, set: AtomSet) -> Self {
        ExpandedFunction { values: (0..n).map(|i| u8::from(set.contains(i))).collect() }
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn atoms(&self) -> usize {
        self.values.len()
    }

    pub fn zero_set(&self) -> AtomSet {
        AtomSet::from_indices(self.values.iter().enumerate().filter(|(_, &v)| v == 0).map(|(i, _)| i))
    }

    pub fn cozero_set(&self) -> AtomSet {
        AtomSet::full(self.atoms()).difference(self.zero_set())
    }

    pub fn is_zero_divisor(&self) -> bool {
        let z = self.zero_set();
        !z.is_empty() && z != AtomSet::full(self.atoms())
    }

    pub fn zclass(&self) -> Option<ZClass> {
        self.is_zero_divisor().then(|| ZClass { zero_set: self.zero_set().into() })
    }
}

impl fmt::Display for ExpandedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("f=[")?;
        for (pos, v) in self.values.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for ExpandedFunction {
    type Err = UniverseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || UniverseError::Parse(text.to_string());
        let body = text.trim();
        let body = body.strip_prefix("f=").unwrap_or(body);
        let inner = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
        let values =
            inner.split(',').map(|v| v.trim().parse::<u8>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
        Ok(ExpandedFunction { values })
    }
}

impl Serialize for ExpandedFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExpandedFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

fn check_alphabet(k: usize) -> Result<(), UniverseError> {
    if (2..=255).contains(&k) {
        Ok(())
    } else {
        Err(UniverseError::BadAlphabet(k))
    }
}

/// Number of assignments `k^n`, guarded by [`MAX_ASSIGNMENTS`].
pub fn assignment_count(n: usize, k: usize) -> Result<u64, UniverseError> {
    check_alphabet(k)?;
    let too_many = || UniverseError::TooManyAssignments { n, k };
    let total = (k as u64).checked_pow(u32::try_from(n).map_err(|_| too_many())?);
    match total {
        Some(t) if t <= MAX_ASSIGNMENTS => Ok(t),
        _ => Err(too_many()),
    }
}

/// Every assignment atoms → `{0, .., k-1}` in lexicographic order (atom 0 is
/// the most significant position), zero-divisors or not.
pub fn enumerate_assignments(space: &AtomicSpace, k: usize) -> Result<Vec<ExpandedFunction>, UniverseError> {
    let n = space.atoms();
    let total = assignment_count(n, k)?;
    Ok((0..total)
        .map(|mut index| {
            let mut values = vec![0u8; n];
            for slot in values.iter_mut().rev() {
                *slot = (index % k as u64) as u8;
                index /= k as u64;
            }
            ExpandedFunction { values }
        })
        .collect())
}

/// The zero-divisor functions with alphabet `k`, in lexicographic order.
/// There are `k^n - (k-1)^n - 1` of them.
pub fn enumerate_functions(space: &AtomicSpace, k: usize) -> Result<Vec<ExpandedFunction>, UniverseError> {
    let mut all = enumerate_assignments(space, k)?;
    all.retain(ExpandedFunction::is_zero_divisor);
    Ok(all)
}

/// `(k-1)^|coz|`: the number of functions with alphabet `k` whose zero set is
/// exactly the class's zero set.
pub fn class_size(space: &AtomicSpace, zc: &ZClass, k: usize) -> Result<u64, UniverseError> {
    check_alphabet(k)?;
    let zero = atomic_zero_set(space, zc)?;
    let coz = AtomSet::full(space.atoms()).difference(zero).len() as u32;
    Ok((k as u64 - 1).pow(coz))
}

/// The members of a class in lexicographic order, built directly by filling
/// the cozero atoms with nonzero symbols.
pub fn class_members(space: &AtomicSpace, zc: &ZClass, k: usize) -> Result<Vec<ExpandedFunction>, UniverseError> {
    let size = class_size(space, zc, k)?;
    if size > MAX_ASSIGNMENTS {
        return Err(UniverseError::TooManyAssignments { n: space.atoms(), k });
    }
    let n = space.atoms();
    let coz: Vec<usize> = AtomSet::full(n).difference(atomic_zero_set(space, zc)?).iter().collect();
    let base = k as u64 - 1;
    Ok((0..size)
        .map(|mut index| {
            let mut values = vec![0u8; n];
            for &atom in coz.iter().rev() {
                values[atom] = 1 + (index % base) as u8;
                index /= base;
            }
            ExpandedFunction { values }
        })
        .collect())
}

fn atomic_zero_set(space: &AtomicSpace, zc: &ZClass) -> Result<AtomSet, UniverseError> {
    let set = zc.zero_set.as_atoms().ok_or(MeasureError::BackendMismatch)?;
    if !set.is_subset(space.universe()) {
        return Err(MeasureError::AtomOutOfRange {
            index: set.difference(space.universe()).first().unwrap_or(0),
            atoms: space.atoms(),
        }
        .into());
    }
    Ok(set)
}

/// `ann(f) ⊆ ann(g)`, decided as `μ(Z(f) ∖ Z(g)) = 0`.
pub fn ann_leq(space: &MeasureSpace, zf: &MeasurableSet, zg: &MeasurableSet) -> Result<bool, UniverseError> {
    let diff = space.difference(zf, zg)?;
    Ok(space.is_null(&diff)?)
}

/// `ann(f) = ann(g)`, decided as `μ(Z(f) △ Z(g)) = 0`.
pub fn ann_eq(space: &MeasureSpace, zf: &MeasurableSet, zg: &MeasurableSet) -> Result<bool, UniverseError> {
    Ok(space.null_equal(zf, zg)?)
}

/// Draws a zero-divisor class on the Lebesgue interval backend.
///
/// The zero set is a union of between 1 and `depth` intervals with random
/// rational endpoints (denominators up to 64). Draws that are null or
/// co-null are rejected and redrawn, so the result always satisfies the
/// [`ZClass`] invariant. Deterministic in `seed`.
pub fn sample_interval_class(seed: u64, depth: usize) -> ZClass {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = MeasureSpace::Interval;
    let depth = depth.max(1);
    loop {
        let pieces = rng.gen_range(1..=depth);
        let mut intervals = Vec::with_capacity(pieces);
        for _ in 0..pieces {
            let den: i64 = rng.gen_range(2..=64);
            let a: i64 = rng.gen_range(0..=den);
            let b: i64 = rng.gen_range(0..=den);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            intervals.push((rational(lo, den), rational(hi, den)));
        }
        let set: MeasurableSet = IntervalSet::new(intervals).expect("endpoints lie in [0,1]").into();
        if let Ok(zc) = ZClass::new(&space, set) {
            return zc;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn unit(n: usize) -> AtomicSpace {
        AtomicSpace::unit(n).unwrap()
    }

    fn zc(n: usize, text: &str) -> ZClass {
        ZClass::parse(&MeasureSpace::Atomic(unit(n)), text).unwrap()
    }

    #[test]
    fn zclass_counts() {
        assert!(enumerate_zclasses(&unit(1)).is_empty());
        let two: Vec<String> = enumerate_zclasses(&unit(2)).iter().map(|z| z.to_string()).collect();
        assert_eq!(two, ["Z={0}", "Z={1}"]);
        assert_eq!(enumerate_zclasses(&unit(4)).len(), 14);
    }

    #[test]
    fn function_counts_match_formula() {
        for (n, k, expected) in [(2, 2, 2), (3, 3, 18), (2, 3, 4)] {
            assert_eq!(enumerate_functions(&unit(n), k).unwrap().len(), expected);
        }
        for n in 2..=5usize {
            for k in 2..=4usize {
                let expected = k.pow(n as u32) - (k - 1).pow(n as u32) - 1;
                assert_eq!(enumerate_functions(&unit(n), k).unwrap().len(), expected);
            }
        }
    }

    #[test]
    fn class_sizes_match_enumeration() {
        assert_eq!(class_size(&unit(3), &zc(3, "Z={0}"), 3).unwrap(), 4);
        assert_eq!(class_size(&unit(4), &zc(4, "Z={0,1}"), 4).unwrap(), 9);
        for n in 2..=4 {
            for k in 2..=4 {
                let space = unit(n);
                let mut by_class: BTreeMap<ZClass, Vec<ExpandedFunction>> = BTreeMap::new();
                for f in enumerate_functions(&space, k).unwrap() {
                    by_class.entry(f.zclass().unwrap()).or_default().push(f);
                }
                assert_eq!(by_class.len(), enumerate_zclasses(&space).len());
                for (class, members) in by_class {
                    assert_eq!(class_size(&space, &class, k).unwrap(), members.len() as u64);
                    assert_eq!(class_members(&space, &class, k).unwrap(), members);
                    if k == 2 {
                        assert_eq!(members.len(), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn annihilator_order() {
        let space = MeasureSpace::unit_atoms(3).unwrap();
        let s = |t: &str| t.parse::<MeasurableSet>().unwrap();
        assert!(ann_leq(&space, &s("{0}"), &s("{0,1}")).unwrap());
        assert!(!ann_leq(&space, &s("{0,1}"), &s("{0}")).unwrap());
        for z in enumerate_zclasses(&unit(3)) {
            assert!(ann_eq(&space, z.zero_set(), z.zero_set()).unwrap());
        }
    }

    #[test]
    fn invalid_classes_rejected() {
        let space = MeasureSpace::unit_atoms(3).unwrap();
        assert!(matches!(ZClass::parse(&space, "Z={}"), Err(UniverseError::NotZeroDivisor(_))));
        assert!(matches!(ZClass::parse(&space, "Z={0,1,2}"), Err(UniverseError::NotZeroDivisor(_))));
        assert!(ZClass::parse(&MeasureSpace::Interval, "Z=[0,1)").is_err());
        assert!(ZClass::parse(&MeasureSpace::Interval, "Z=[0,1/2)").is_ok());
    }

    #[test]
    fn literals_round_trip() {
        let f: ExpandedFunction = "f=[0,2,1]".parse().unwrap();
        assert_eq!(f.values(), &[0, 2, 1]);
        assert_eq!(f.to_string(), "f=[0,2,1]");
        assert_eq!(f.zero_set(), AtomSet::from_indices([0]));
        assert!("f=[0,x]".parse::<ExpandedFunction>().is_err());
        assert!(ExpandedFunction::checked(&unit(3), 2, vec![0, 2, 1]).is_err());
        assert!(ExpandedFunction::checked(&unit(2), 3, vec![0, 2, 1]).is_err());
        assert_eq!(zc(3, "Z={0,2}").to_string(), "Z={0,2}");
    }

    #[test]
    fn interval_samples_are_deterministic_and_valid() {
        assert_eq!(sample_interval_class(7, 3), sample_interval_class(7, 3));
        let space = MeasureSpace::Interval;
        for seed in 0..100 {
            let z = sample_interval_class(seed, 4);
            assert!(is_zero_divisor_set(&space, z.zero_set()).unwrap());
        }
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(enumerate_functions(&unit(30), 3), Err(UniverseError::TooManyAssignments { .. })));
        assert_eq!(enumerate_functions(&unit(2), 1), Err(UniverseError::BadAlphabet(1)));
    }
}
