//! Set algebra and measure laws, checked against simple independent models:
//! interval sets with endpoints on a 1/24 grid are bitmasks of grid cells,
//! atom sets are bitmasks with a weight table.

use mrfgraph_core::measure_space::{
    rational, AtomSet, AtomicSpace, IntervalSet, MeasurableSet, MeasureSpace, Rational, SetOp,
};
use num_traits::Zero;
use proptest::prelude::*;

const GRID: i64 = 24;

fn cells_strategy() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((0..=GRID, 0..=GRID), 0..5)
}

fn interval_set(raw: &[(i64, i64)]) -> IntervalSet {
    IntervalSet::new(raw.iter().map(|&(a, b)| (rational(a, GRID), rational(b, GRID))).collect()).unwrap()
}

fn cell_mask(raw: &[(i64, i64)]) -> u32 {
    raw.iter().filter(|(a, b)| a < b).fold(0, |m, &(a, b)| m | (a..b).fold(0u32, |acc, c| acc | 1 << c))
}

fn mask_of(set: &IntervalSet) -> u32 {
    let mut mask = 0;
    for (lo, hi) in set.intervals() {
        let scale = |r: &Rational| {
            let x = r * rational(GRID, 1);
            assert!(x.is_integer(), "endpoint {r} left the grid");
            x.to_integer().try_into().unwrap()
        };
        let (a, b): (i64, i64) = (scale(lo), scale(hi));
        mask |= (a..b).fold(0u32, |acc, c| acc | 1 << c);
    }
    mask
}

fn model(op: SetOp, a: u32, b: u32) -> u32 {
    let full = (1u32 << GRID) - 1;
    match op {
        SetOp::Union => a | b,
        SetOp::Intersect => a & b,
        SetOp::Difference => a & !b & full,
        SetOp::SymDiff => a ^ b,
    }
}

const OPS: [SetOp; 4] = [SetOp::Union, SetOp::Intersect, SetOp::Difference, SetOp::SymDiff];

proptest! {
    #[test]
    fn interval_ops_match_grid_model(a in cells_strategy(), b in cells_strategy()) {
        let (sa, sb) = (interval_set(&a), interval_set(&b));
        prop_assert_eq!(mask_of(&sa), cell_mask(&a));
        for op in OPS {
            let got = sa.combine(&sb, op);
            prop_assert_eq!(mask_of(&got), model(op, cell_mask(&a), cell_mask(&b)), "{:?}", op);
            prop_assert_eq!(got.measure(), rational(i64::from(mask_of(&got).count_ones()), GRID));
        }
    }

    #[test]
    fn canonical_form_is_unique(a in cells_strategy(), b in cells_strategy()) {
        // Equal point sets must have equal representations.
        let (sa, sb) = (interval_set(&a), interval_set(&b));
        prop_assert_eq!(sa == sb, cell_mask(&a) == cell_mask(&b));
        for w in sa.intervals().windows(2) {
            prop_assert!(w[0].1 < w[1].0, "touching or overlapping pieces in {}", sa);
        }
    }

    #[test]
    fn inclusion_exclusion_and_complement(a in cells_strategy(), b in cells_strategy()) {
        let (sa, sb) = (interval_set(&a), interval_set(&b));
        let lhs = sa.combine(&sb, SetOp::Union).measure() + sa.combine(&sb, SetOp::Intersect).measure();
        prop_assert_eq!(lhs, sa.measure() + sb.measure());
        prop_assert_eq!(sa.measure() + sa.complement().measure(), rational(1, 1));
        // De Morgan.
        let left = sa.combine(&sb, SetOp::Union).complement();
        let right = sa.complement().combine(&sb.complement(), SetOp::Intersect);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn prefix_has_exact_measure(a in cells_strategy(), num in 0i64..=97, den in 1i64..=97) {
        let set = interval_set(&a);
        let r = set.measure() * rational(num.min(den), den);
        let part = set.prefix_of_measure(&r).unwrap();
        prop_assert_eq!(part.measure(), r);
        prop_assert!(part.combine(&set, SetOp::Difference).is_empty());
    }

    #[test]
    fn prefix_rejects_too_much(a in cells_strategy()) {
        let set = interval_set(&a);
        prop_assert!(set.prefix_of_measure(&(set.measure() + rational(1, 1000))).is_err());
    }

    #[test]
    fn interval_split_nonatom(a in cells_strategy()) {
        let space = MeasureSpace::Interval;
        let set: MeasurableSet = interval_set(&a).into();
        if space.is_null(&set).unwrap() {
            prop_assert!(space.split_nonatom(&set).is_err());
        } else {
            prop_assert!(!space.is_atom(&set).unwrap());
            let (l, r) = space.split_nonatom(&set).unwrap();
            prop_assert!(space.is_null(&space.intersect(&l, &r).unwrap()).unwrap());
            prop_assert_eq!(space.union(&l, &r).unwrap(), set.clone());
            prop_assert_eq!(space.measure(&l).unwrap(), space.measure(&r).unwrap());
            prop_assert!(!space.is_null(&l).unwrap());
        }
    }

    #[test]
    fn atomic_measure_is_additive(weights in prop::collection::vec((1i64..20, 1i64..9), 1..8), x in any::<u64>(), y in any::<u64>()) {
        let n = weights.len();
        let w: Vec<Rational> = weights.iter().map(|&(p, q)| rational(p, q)).collect();
        let space = AtomicSpace::new(w.clone()).unwrap();
        let mask = (1u64 << n) - 1;
        let (a, b) = (AtomSet::from_bits(x & mask), AtomSet::from_bits(y & mask));
        let by_hand = |m: u64| (0..n).filter(|i| m >> i & 1 == 1).fold(Rational::zero(), |acc, i| acc + &w[i]);
        prop_assert_eq!(space.measure(a), by_hand(x & mask));
        prop_assert_eq!(space.measure(a.union(b)) + space.measure(a.intersect(b)), space.measure(a) + space.measure(b));
        prop_assert_eq!(a.sym_diff(b), a.difference(b).union(b.difference(a)));
        prop_assert_eq!(a.is_subset(b), a.union(b) == b);

        let ms = MeasureSpace::Atomic(space);
        let set: MeasurableSet = a.into();
        prop_assert_eq!(ms.is_atom(&set).unwrap(), a.len() == 1);
        prop_assert_eq!(ms.is_null(&set).unwrap(), a.is_empty());
        prop_assert!(ms.split_at_measure(&set, &Rational::zero()).is_err());
    }
}

#[test]
fn out_of_range_intervals_are_rejected() {
    assert!(IntervalSet::from_fractions(&[((-1, 2), (1, 2))]).is_err());
    assert!(IntervalSet::from_fractions(&[((1, 2), (3, 2))]).is_err());
    // Empty pieces are dropped, wherever they sit.
    assert!(IntervalSet::from_fractions(&[((5, 2), (1, 2))]).unwrap().is_empty());
}

#[test]
fn atom_split_is_lowest_index_first() {
    let ms = MeasureSpace::unit_atoms(4).unwrap();
    let (a, b) = ms.split_nonatom(&AtomSet::from_indices([1, 3]).into()).unwrap();
    assert_eq!(a, AtomSet::singleton(1).into());
    assert_eq!(b, AtomSet::singleton(3).into());
    assert!(ms.split_nonatom(&AtomSet::singleton(2).into()).is_err());
}
