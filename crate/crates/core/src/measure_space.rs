//! Exact measure spaces with two finitely representable backends.
//!
//! * [`AtomicSpace`]: finitely many atoms, each carrying a strictly positive
//!   rational weight. A set is a subset of atom indices ([`AtomSet`]).
//! * The Lebesgue unit interval: a set is a finite union of half-open
//!   rational intervals inside `[0,1)` ([`IntervalSet`]).
//!
//! Every operation is exact. Sets are always kept in canonical form, so
//! structural equality coincides with equality of the underlying sets.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// `((num, den), (num, den))`: one interval with fractional endpoints.
pub type FractionPair = ((i64, i64), (i64, i64));

/// Largest atom count an [`AtomSet`] can index.
pub const MAX_ATOMS: usize = 64;

/// Shorthand for building a [`Rational`] from machine integers.
///
/// Panics if `den` is zero.
pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("set backend does not match the measure space backend")]
    BackendMismatch,
    #[error("an atomic space needs at least one atom")]
    NoAtoms,
    #[error("atomic spaces support at most {MAX_ATOMS} atoms, got {0}")]
    TooManyAtoms(usize),
    #[error("atom weight {0} is not strictly positive")]
    NonPositiveWeight(String),
    #[error("atom index {index} out of range for a space with {atoms} atoms")]
    AtomOutOfRange { index: usize, atoms: usize },
    #[error("interval [{lo},{hi}) is not a subinterval of [0,1)")]
    IntervalOutOfRange { lo: String, hi: String },
    #[error("cannot split a null set")]
    SplitNull,
    #[error("cannot split an atom into two parts of positive measure")]
    SplitAtom,
    #[error("requested measure {requested} lies outside [0,{available}]")]
    MeasureOutOfRange { requested: String, available: String },
    #[error("subsets of prescribed measure are only available on the interval backend")]
    PrescribedMeasureUnsupported,
    #[error("malformed set literal `{0}`")]
    Parse(String),
}

/// Binary set operations supported by [`MeasureSpace::combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetOp {
    Union,
    Intersect,
    Difference,
    SymDiff,
}

impl SetOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            SetOp::Union => a || b,
            SetOp::Intersect => a && b,
            SetOp::Difference => a && !b,
            SetOp::SymDiff => a != b,
        }
    }
}

// ---------------------------------------------------------------------------
// Atomic backend
// ---------------------------------------------------------------------------

/// A subset of atom indices, stored as a bit mask (bit `i` = atom `i`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet(u64);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn from_bits(bits: u64) -> Self {
        AtomSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(index: usize) -> Self {
        assert!(index < MAX_ATOMS, "atom index {index} exceeds {MAX_ATOMS}");
        AtomSet(1 << index)
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ATOMS);
        if n == MAX_ATOMS {
            AtomSet(u64::MAX)
        } else {
            AtomSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(AtomSet::EMPTY, |acc, i| acc.union(AtomSet::singleton(i)))
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_ATOMS && self.0 & (1 << index) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn intersect(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    pub fn difference(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & !other.0)
    }

    pub fn sym_diff(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 ^ other.0)
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest atom index in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_ATOMS).filter(move |i| bits & (1 << i) != 0)
    }

    fn apply(self, other: AtomSet, op: SetOp) -> AtomSet {
        match op {
            SetOp::Union => self.union(other),
            SetOp::Intersect => self.intersect(other),
            SetOp::Difference => self.difference(other),
            SetOp::SymDiff => self.sym_diff(other),
        }
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Purely atomic measure space: atom `i` has weight `weights[i] > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomicSpace {
    weights: Vec<Rational>,
}

impl AtomicSpace {
    pub fn new(weights: Vec<Rational>) -> Result<Self, MeasureError> {
        if weights.is_empty() {
            return Err(MeasureError::NoAtoms);
        }
        if weights.len() > MAX_ATOMS {
            return Err(MeasureError::TooManyAtoms(weights.len()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(MeasureError::NonPositiveWeight(w.to_string()));
        }
        Ok(AtomicSpace { weights })
    }

    /// Counting measure on `n` points.
    pub fn unit(n: usize) -> Result<Self, MeasureError> {
        Self::new(vec![Rational::one(); n])
    }

    pub fn atoms(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn universe(&self) -> AtomSet {
        AtomSet::full(self.atoms())
    }

    pub fn measure(&self, set: AtomSet) -> Rational {
        set.iter().map(|i| &self.weights[i]).fold(Rational::zero(), |acc, w| acc + w)
    }

    fn check(&self, set: AtomSet) -> Result<AtomSet, MeasureError> {
        if set.is_subset(self.universe()) {
            Ok(set)
        } else {
            let index = set.difference(self.universe()).first().unwrap_or(0);
            Err(MeasureError::AtomOutOfRange { index, atoms: self.atoms() })
        }
    }
}

// ---------------------------------------------------------------------------
// Interval backend
// ---------------------------------------------------------------------------

/// Finite union of half-open rational intervals `[lo, hi)` inside `[0,1)`.
///
/// Canonical form: intervals are non-empty, sorted, pairwise disjoint and
/// non-adjacent (touching intervals are merged).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalSet {
    intervals: Vec<(Rational, Rational)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    /// The whole universe `[0,1)`.
    pub fn unit() -> Self {
        IntervalSet { intervals: vec![(Rational::zero(), Rational::one())] }
    }

    /// Builds a canonical set from arbitrary (possibly overlapping, unsorted)
    /// intervals. Empty intervals (`lo >= hi`) are dropped.
    pub fn new(intervals: Vec<(Rational, Rational)>) -> Result<Self, MeasureError> {
        let zero = Rational::zero();
        let one = Rational::one();
        for (lo, hi) in &intervals {
            if lo < hi && (*lo < zero || *hi > one) {
                return Err(MeasureError::IntervalOutOfRange { lo: lo.to_string(), hi: hi.to_string() });
            }
        }
        Ok(Self::canonicalize(intervals))
    }

    /// Convenience constructor from `(num, den)` endpoint pairs.
    pub fn from_fractions(pairs: &[FractionPair]) -> Result<Self, MeasureError> {
        Self::new(pairs.iter().map(|&((a, b), (c, d))| (rational(a, b), rational(c, d))).collect())
    }

    fn canonicalize(mut intervals: Vec<(Rational, Rational)>) -> Self {
        intervals.retain(|(lo, hi)| lo < hi);
        intervals.sort();
        let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(intervals.len());
        for (lo, hi) in intervals {
            match merged.last_mut() {
                Some((_, last_hi)) if lo <= *last_hi => {
                    if hi > *last_hi {
                        *last_hi = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        IntervalSet { intervals: merged }
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> Rational {
        self.intervals.iter().fold(Rational::zero(), |acc, (lo, hi)| acc + (hi - lo))
    }

    fn covers(&self, lo: &Rational, hi: &Rational) -> bool {
        self.intervals.iter().any(|(a, b)| a <= lo && hi <= b)
    }

    /// Exact boolean combination by sweeping over all endpoints: between two
    /// consecutive endpoints both operands are constant.
    pub fn combine(&self, other: &IntervalSet, op: SetOp) -> IntervalSet {
        let mut cuts: Vec<Rational> =
            self.intervals.iter().chain(&other.intervals).flat_map(|(lo, hi)| [lo.clone(), hi.clone()]).collect();
        cuts.sort();
        cuts.dedup();
        let pieces = cuts
            .windows(2)
            .filter(|w| op.apply(self.covers(&w[0], &w[1]), other.covers(&w[0], &w[1])))
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Self::canonicalize(pieces)
    }

    pub fn complement(&self) -> IntervalSet {
        IntervalSet::unit().combine(self, SetOp::Difference)
    }

    /// Left-to-right prefix of `self` with measure exactly `r`.
    pub fn prefix_of_measure(&self, r: &Rational) -> Result<IntervalSet, MeasureError> {
        let total = self.measure();
        if r.is_negative() || *r > total {
            return Err(MeasureError::MeasureOutOfRange { requested: r.to_string(), available: total.to_string() });
        }
        let mut remaining = r.clone();
        let mut taken = Vec::new();
        for (lo, hi) in &self.intervals {
            if remaining.is_zero() {
                break;
            }
            let len = hi - lo;
            if len <= remaining {
                remaining -= &len;
                taken.push((lo.clone(), hi.clone()));
            } else {
                taken.push((lo.clone(), lo + &remaining));
                remaining = Rational::zero();
            }
        }
        Ok(Self::canonicalize(taken))
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("empty");
        }
        for (pos, (lo, hi)) in self.intervals.iter().enumerate() {
            if pos > 0 {
                f.write_str("+")?;
            }
            write!(f, "[{lo},{hi})")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Backend-tagged sets and spaces
// ---------------------------------------------------------------------------

/// A measurable set in one of the two backends.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MeasurableSet {
    Atoms(AtomSet),
    Intervals(IntervalSet),
}

impl MeasurableSet {
    pub fn as_atoms(&self) -> Option<AtomSet> {
        match self {
            MeasurableSet::Atoms(a) => Some(*a),
            MeasurableSet::Intervals(_) => None,
        }
    }

    pub fn as_intervals(&self) -> Option<&IntervalSet> {
        match self {
            MeasurableSet::Intervals(s) => Some(s),
            MeasurableSet::Atoms(_) => None,
        }
    }
}

impl From<AtomSet> for MeasurableSet {
    fn from(set: AtomSet) -> Self {
        MeasurableSet::Atoms(set)
    }
}

impl From<IntervalSet> for MeasurableSet {
    fn from(set: IntervalSet) -> Self {
        MeasurableSet::Intervals(set)
    }
}

impl fmt::Display for MeasurableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasurableSet::Atoms(a) => a.fmt(f),
            MeasurableSet::Intervals(s) => s.fmt(f),
        }
    }
}

impl FromStr for MeasurableSet {
    type Err = MeasureError;

    /// Parses `{0,2,5}` (atoms) or `[0,1/4)+[1/2,3/4)` / `empty` (intervals).
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || MeasureError::Parse(text.to_string());
        let trimmed = text.trim();
        if let Some(body) = trimmed.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            let body = body.trim();
            if body.is_empty() {
                return Ok(AtomSet::EMPTY.into());
            }
            let mut set = AtomSet::EMPTY;
            for item in body.split(',') {
                let index: usize = item.trim().parse().map_err(|_| bad())?;
                if index >= MAX_ATOMS {
                    return Err(bad());
                }
                set = set.union(AtomSet::singleton(index));
            }
            return Ok(set.into());
        }
        if trimmed == "empty" {
            return Ok(IntervalSet::empty().into());
        }
        let mut pieces = Vec::new();
        for piece in trimmed.split('+') {
            let inner = piece.trim().strip_prefix('[').and_then(|p| p.strip_suffix(')')).ok_or_else(bad)?;
            let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
            let lo: Rational = lo.trim().parse().map_err(|_| bad())?;
            let hi: Rational = hi.trim().parse().map_err(|_| bad())?;
            if lo >= hi {
                return Err(bad());
            }
            pieces.push((lo, hi));
        }
        Ok(IntervalSet::new(pieces)?.into())
    }
}

impl Serialize for MeasurableSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MeasurableSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A measure space in one of the two exact backends.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MeasureSpace {
    Atomic(AtomicSpace),
    /// Lebesgue measure on `[0,1)`.
    Interval,
}

impl MeasureSpace {
    pub fn unit_atoms(n: usize) -> Result<Self, MeasureError> {
        Ok(MeasureSpace::Atomic(AtomicSpace::unit(n)?))
    }

    pub fn as_atomic(&self) -> Option<&AtomicSpace> {
        match self {
            MeasureSpace::Atomic(space) => Some(space),
            MeasureSpace::Interval => None,
        }
    }

    pub fn is_interval(&self) -> bool {
        matches!(self, MeasureSpace::Interval)
    }

    /// The whole space `X`.
    pub fn universe(&self) -> MeasurableSet {
        match self {
            MeasureSpace::Atomic(space) => space.universe().into(),
            MeasureSpace::Interval => IntervalSet::unit().into(),
        }
    }

    pub fn empty_set(&self) -> MeasurableSet {
        match self {
            MeasureSpace::Atomic(_) => AtomSet::EMPTY.into(),
            MeasureSpace::Interval => IntervalSet::empty().into(),
        }
    }

    /// Checks that `set` belongs to this space's backend (and, for atoms,
    /// only uses existing atom indices).
    pub fn validate(&self, set: &MeasurableSet) -> Result<(), MeasureError> {
        match (self, set) {
            (MeasureSpace::Atomic(space), MeasurableSet::Atoms(a)) => space.check(*a).map(|_| ()),
            (MeasureSpace::Interval, MeasurableSet::Intervals(_)) => Ok(()),
            _ => Err(MeasureError::BackendMismatch),
        }
    }

    pub fn combine(&self, a: &MeasurableSet, b: &MeasurableSet, op: SetOp) -> Result<MeasurableSet, MeasureError> {
        self.validate(a)?;
        self.validate(b)?;
        match (a, b) {
            (MeasurableSet::Atoms(x), MeasurableSet::Atoms(y)) => Ok(x.apply(*y, op).into()),
            (MeasurableSet::Intervals(x), MeasurableSet::Intervals(y)) => Ok(x.combine(y, op).into()),
            _ => Err(MeasureError::BackendMismatch),
        }
    }

    pub fn union(&self, a: &MeasurableSet, b: &MeasurableSet) -> Result<MeasurableSet, MeasureError> {
        self.combine(a, b, SetOp::Union)
    }

    pub fn intersect(&self, a: &MeasurableSet, b: &MeasurableSet) -> Result<MeasurableSet, MeasureError> {
        self.combine(a, b, SetOp::Intersect)
    }

    pub fn difference(&self, a: &MeasurableSet, b: &MeasurableSet) -> Result<MeasurableSet, MeasureError> {
        self.combine(a, b, SetOp::Difference)
    }

    /// Complement relative to `X`.
    pub fn complement(&self, a: &MeasurableSet) -> Result<MeasurableSet, MeasureError> {
        self.combine(&self.universe(), a, SetOp::Difference)
    }

    pub fn measure(&self, a: &MeasurableSet) -> Result<Rational, MeasureError> {
        self.validate(a)?;
        Ok(match (self, a) {
            (MeasureSpace::Atomic(space), MeasurableSet::Atoms(set)) => space.measure(*set),
            (_, MeasurableSet::Intervals(set)) => set.measure(),
            _ => unreachable!("validated above"),
        })
    }

    /// `μ(a) = 0`. On the atomic backend this is emptiness, since every
    /// weight is positive.
    pub fn is_null(&self, a: &MeasurableSet) -> Result<bool, MeasureError> {
        self.validate(a)?;
        Ok(match a {
            MeasurableSet::Atoms(set) => set.is_empty(),
            MeasurableSet::Intervals(set) => set.is_empty(),
        })
    }

    /// `μ(a △ b) = 0`.
    pub fn null_equal(&self, a: &MeasurableSet, b: &MeasurableSet) -> Result<bool, MeasureError> {
        let diff = self.combine(a, b, SetOp::SymDiff)?;
        self.is_null(&diff)
    }

    pub fn is_atom(&self, a: &MeasurableSet) -> Result<bool, MeasureError> {
        self.validate(a)?;
        Ok(match a {
            MeasurableSet::Atoms(set) => set.len() == 1,
            // Lebesgue measure has no atoms.
            MeasurableSet::Intervals(_) => false,
        })
    }

    /// Splits a non-null non-atom into two disjoint parts of positive measure.
    ///
    /// Atomic: lowest atom index versus the rest. Interval: the left half by
    /// measure versus the right half.
    pub fn split_nonatom(&self, a: &MeasurableSet) -> Result<(MeasurableSet, MeasurableSet), MeasureError> {
        if self.is_null(a)? {
            return Err(MeasureError::SplitNull);
        }
        if self.is_atom(a)? {
            return Err(MeasureError::SplitAtom);
        }
        match a {
            MeasurableSet::Atoms(set) => {
                let first = AtomSet::singleton(set.first().expect("non-null"));
                Ok((first.into(), set.difference(first).into()))
            }
            MeasurableSet::Intervals(set) => {
                let half = set.measure() / rational(2, 1);
                let left = set.prefix_of_measure(&half)?;
                let right = set.combine(&left, SetOp::Difference);
                Ok((left.into(), right.into()))
            }
        }
    }

    /// A subset of `a` with measure exactly `r` (interval backend only).
    pub fn split_at_measure(&self, a: &MeasurableSet, r: &Rational) -> Result<MeasurableSet, MeasureError> {
        self.validate(a)?;
        match a {
            MeasurableSet::Intervals(set) => Ok(set.prefix_of_measure(r)?.into()),
            MeasurableSet::Atoms(_) => Err(MeasureError::PrescribedMeasureUnsupported),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(n: usize) -> MeasureSpace {
        MeasureSpace::unit_atoms(n).unwrap()
    }

    fn set(text: &str) -> MeasurableSet {
        text.parse().unwrap()
    }

    #[test]
    fn atomic_intersection() {
        let space = atoms(3);
        let r = space.intersect(&set("{0,1}"), &set("{1,2}")).unwrap();
        assert_eq!(r, set("{1}"));
    }

    #[test]
    fn interval_complement_and_merge() {
        let space = MeasureSpace::Interval;
        let c = space.complement(&set("[1/4,1/2)")).unwrap();
        assert_eq!(c.to_string(), "[0,1/4)+[1/2,1)");
        let u = space.union(&set("[0,1/3)"), &set("[1/3,1/2)")).unwrap();
        assert_eq!(u.to_string(), "[0,1/2)");
    }

    #[test]
    fn measures() {
        let space =
            MeasureSpace::Atomic(AtomicSpace::new(vec![rational(1, 1), rational(2, 1), rational(5, 1)]).unwrap());
        assert_eq!(space.measure(&set("{0,2}")).unwrap(), rational(6, 1));
        let lebesgue = MeasureSpace::Interval;
        assert_eq!(lebesgue.measure(&set("[0,1/4)+[1/2,1)")).unwrap(), rational(3, 4));
        let two = atoms(2);
        assert!(two.null_equal(&set("{0}"), &set("{0}")).unwrap());
        assert!(!two.null_equal(&set("{0}"), &set("{1}")).unwrap());
    }

    #[test]
    fn atoms_and_splits() {
        let three = atoms(3);
        assert!(three.is_atom(&set("{1}")).unwrap());
        assert!(!three.is_atom(&set("{0,2}")).unwrap());
        assert!(!three.is_atom(&set("{}")).unwrap());
        assert!(!MeasureSpace::Interval.is_atom(&set("[0,1/2)")).unwrap());

        let (b, c) = three.split_nonatom(&set("{0,2}")).unwrap();
        assert_eq!((b, c), (set("{0}"), set("{2}")));

        let (b, c) = MeasureSpace::Interval.split_nonatom(&set("[0,1/2)")).unwrap();
        assert_eq!((b, c), (set("[0,1/4)"), set("[1/4,1/2)")));

        assert_eq!(atoms(2).split_nonatom(&set("{1}")), Err(MeasureError::SplitAtom));
        assert_eq!(atoms(2).split_nonatom(&set("{}")), Err(MeasureError::SplitNull));
    }

    #[test]
    fn prescribed_measure_prefixes() {
        let space = MeasureSpace::Interval;
        let r = space.split_at_measure(&set("[0,1)"), &rational(1, 3)).unwrap();
        assert_eq!(r, set("[0,1/3)"));
        let r = space.split_at_measure(&set("[0,1/4)+[1/2,1)"), &rational(1, 2)).unwrap();
        assert_eq!(r, set("[0,1/4)+[1/2,3/4)"));
        assert_eq!(space.measure(&r).unwrap(), rational(1, 2));
        let r = space.split_at_measure(&set("[0,1/4)"), &rational(0, 1)).unwrap();
        assert_eq!(r, set("empty"));
        assert!(matches!(
            space.split_at_measure(&set("[0,1/4)"), &rational(1, 2)),
            Err(MeasureError::MeasureOutOfRange { .. })
        ));
        assert_eq!(
            atoms(3).split_at_measure(&set("{0,1}"), &rational(1, 1)),
            Err(MeasureError::PrescribedMeasureUnsupported)
        );
    }

    #[test]
    fn backend_mismatch_is_rejected() {
        let space = atoms(3);
        assert_eq!(space.union(&set("{0}"), &set("[0,1/2)")), Err(MeasureError::BackendMismatch));
        assert_eq!(MeasureSpace::Interval.measure(&set("{0}")), Err(MeasureError::BackendMismatch));
        assert!(matches!(space.measure(&set("{3}")), Err(MeasureError::AtomOutOfRange { index: 3, atoms: 3 })));
    }

    #[test]
    fn invalid_spaces() {
        assert_eq!(AtomicSpace::new(vec![]), Err(MeasureError::NoAtoms));
        assert!(matches!(
            AtomicSpace::new(vec![rational(1, 1), rational(0, 1)]),
            Err(MeasureError::NonPositiveWeight(_))
        ));
        assert!(matches!(
            IntervalSet::from_fractions(&[((1, 2), (3, 2))]),
            Err(MeasureError::IntervalOutOfRange { .. })
        ));
    }

    #[test]
    fn literals_print_canonically() {
        for text in ["{0,2,5}", "{}", "[0,1/4)+[1/2,3/4)", "empty", "[1/3,1)"] {
            assert_eq!(set(text).to_string(), text);
        }
        // Non-canonical input is normalized on the way in.
        assert_eq!(set("[1/2,3/4)+[0,2/8)+[1/4,1/3)").to_string(), "[0,1/3)+[1/2,3/4)");
        for bad in ["{a}", "[1/2,1/4)", "(0,1)", "{0,", "[0,1/2"] {
            assert!(bad.parse::<MeasurableSet>().is_err(), "{bad}");
        }
    }
}
