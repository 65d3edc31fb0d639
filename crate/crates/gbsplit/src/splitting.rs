//! Splitting types of vector bundles on the projective line.
//!
//! A bundle on P^1 is a direct sum of line bundles O(a_1) ⊕ … ⊕ O(a_r) for a
//! unique non-increasing integer sequence; that sequence is the whole data
//! this module works with. Everything here is pure integer arithmetic:
//! functorial type operations, balanced and parity-constrained normal forms,
//! Hilbert-function recovery, the generic elementary-modification rule, and
//! the interval and dominance orders used to combine and compare types.

use crate::rational::ExactRational;
use serde::{Deserialize, Deserializer, Serialize};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("no splitting type of rank {rank} and degree {degree} with all entries = {parity} mod 2 and span <= 2")]
    NoSuchType { rank: usize, degree: i64, parity: u8 },
    #[error("inconsistent Hilbert window: {0}")]
    InconsistentWindow(String),
    #[error("rank/degree mismatch: ({r1},{d1}) vs ({r2},{d2})")]
    RankDegreeMismatch { r1: usize, d1: i64, r2: usize, d2: i64 },
}

/// Non-increasing multiset of summand degrees; rank is at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SplittingType {
    degrees: Vec<i64>,
}

impl SplittingType {
    /// Normalizes the entries into non-increasing order.
    ///
    /// Panics on an empty list: a bundle has rank at least 1, so an empty
    /// type is a programming error, not an input condition.
    pub fn new(degrees: impl Into<Vec<i64>>) -> Self {
        let mut degrees = degrees.into();
        assert!(!degrees.is_empty(), "splitting type must have rank >= 1");
        degrees.sort_unstable_by(|x, y| y.cmp(x));
        Self { degrees }
    }

    pub fn entries(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn slope(&self) -> ExactRational {
        ExactRational::new(self.degree() as i128, self.rank() as i128)
            .expect("rank >= 1")
    }

    pub fn max_entry(&self) -> i64 {
        self.degrees[0]
    }

    pub fn min_entry(&self) -> i64 {
        *self.degrees.last().unwrap()
    }

    /// a_1 - a_r.
    pub fn span(&self) -> i64 {
        self.max_entry() - self.min_entry()
    }

    pub fn is_j_balanced(&self, j: i64) -> bool {
        self.span() <= j
    }

    pub fn is_balanced(&self) -> bool {
        self.is_j_balanced(1)
    }

    pub fn is_two_balanced(&self) -> bool {
        self.is_j_balanced(2)
    }

    /// Adds `m` to every entry.
    pub fn twist(&self, m: i64) -> Self {
        Self::new(self.degrees.iter().map(|a| a + m).collect::<Vec<_>>())
    }

    /// Negates every entry.
    pub fn dual(&self) -> Self {
        Self::new(self.degrees.iter().map(|a| -a).collect::<Vec<_>>())
    }

    /// Merges the two multisets of entries.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        Self::new(degrees)
    }

    /// Multiset of pairwise sums {a_i + b_j}.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut degrees = Vec::with_capacity(self.rank() * other.rank());
        for a in &self.degrees {
            for b in &other.degrees {
                degrees.push(a + b);
            }
        }
        Self::new(degrees)
    }

    /// h^0 of the m-th twist: sum of max(0, a_i + m + 1).
    pub fn hilbert_function(&self, m: i64) -> i64 {
        self.degrees.iter().map(|a| (a + m + 1).max(0)).sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.degrees.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl<'de> Deserialize<'de> for SplittingType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let degrees = Vec::<i64>::deserialize(deserializer)?;
        if degrees.is_empty() {
            return Err(serde::de::Error::custom("splitting type must be non-empty"));
        }
        Ok(Self::new(degrees))
    }
}

/// The unique type of the given rank and degree with span at most 1.
pub fn balanced_type(rank: usize, degree: i64) -> SplittingType {
    assert!(rank >= 1);
    let r = rank as i64;
    let q = degree.div_euclid(r);
    let rem = degree.rem_euclid(r) as usize;
    let mut degrees = vec![q + 1; rem];
    degrees.extend(std::iter::repeat(q).take(rank - rem));
    SplittingType::new(degrees)
}

/// The unique 2-balanced type of the given rank and degree with all entries
/// congruent to `parity` mod 2, when one exists.
///
/// Entries of such a type lie in {x, x+2} with x = parity (mod 2), so
/// existence is exactly the condition that degree - rank*parity is even.
pub fn parity_two_balanced_type(
    rank: usize,
    degree: i64,
    parity: u8,
) -> Result<SplittingType, SplitError> {
    assert!(rank >= 1);
    assert!(parity <= 1);
    let r = rank as i64;
    let shifted = degree - r * parity as i64;
    if shifted.rem_euclid(2) != 0 {
        return Err(SplitError::NoSuchType { rank, degree, parity });
    }
    let half = shifted / 2;
    let y = half.div_euclid(r);
    let k = half.rem_euclid(r) as usize;
    let x = parity as i64 + 2 * y;
    let mut degrees = vec![x + 2; k];
    degrees.extend(std::iter::repeat(x).take(rank - k));
    Ok(SplittingType::new(degrees))
}

/// Recovers a splitting type from Hilbert-function samples (m, h) at
/// consecutive twists.
///
/// The window must start strictly below the first twist with h > 0 and end
/// with two consecutive first differences equal (the stabilized rank).
pub fn type_from_hilbert(window: &[(i64, i64)]) -> Result<SplittingType, SplitError> {
    if window.len() < 3 {
        return Err(SplitError::InconsistentWindow(
            "window needs at least three samples".into(),
        ));
    }
    for pair in window.windows(2) {
        if pair[1].0 != pair[0].0 + 1 {
            return Err(SplitError::InconsistentWindow(
                "twists must be consecutive".into(),
            ));
        }
    }
    if window[0].1 != 0 {
        return Err(SplitError::InconsistentWindow(
            "window must start below the first twist with h > 0".into(),
        ));
    }
    // diff(m) = h(m) - h(m-1) = #{i : a_i >= -m}; below the window it is 0.
    let mut prev_diff = 0i64;
    let mut degrees = Vec::new();
    let mut diffs = Vec::with_capacity(window.len() - 1);
    for pair in window.windows(2) {
        let (m, h) = pair[1];
        let diff = h - pair[0].1;
        if diff < prev_diff {
            return Err(SplitError::InconsistentWindow(format!(
                "first differences decrease at m = {m}"
            )));
        }
        for _ in 0..(diff - prev_diff) {
            degrees.push(-m);
        }
        diffs.push(diff);
        prev_diff = diff;
    }
    let n = diffs.len();
    if n < 2 || diffs[n - 1] != diffs[n - 2] {
        return Err(SplitError::InconsistentWindow(
            "first differences never reach a stable rank".into(),
        ));
    }
    if degrees.is_empty() {
        return Err(SplitError::InconsistentWindow("recovered rank is zero".into()));
    }
    let recovered = SplittingType::new(degrees);
    // Exact consistency: the samples must be reproduced verbatim.
    for &(m, h) in window {
        if recovered.hilbert_function(m) != h {
            return Err(SplitError::InconsistentWindow(format!(
                "samples do not match any splitting type at m = {m}"
            )));
        }
    }
    Ok(recovered)
}

/// Closed interval of summand degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeInterval {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeInterval {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "degree interval requires lo <= hi");
        Self { lo, hi }
    }

    pub fn length(&self) -> i64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_type(&self, t: &SplittingType) -> bool {
        self.contains(t.min_entry()) && self.contains(t.max_entry())
    }
}

impl From<&SplittingType> for DegreeInterval {
    fn from(t: &SplittingType) -> Self {
        Self::new(t.min_entry(), t.max_entry())
    }
}

/// Envelope for the middle term of an extension: the union interval of the
/// sub and quotient bounds.
pub fn interval_combine(e: DegreeInterval, g: DegreeInterval) -> DegreeInterval {
    DegreeInterval::new(e.lo.min(g.lo), e.hi.max(g.hi))
}

/// Result of a general positive elementary modification, `k` rank-1 steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ModUpOutcome {
    /// k = 1 at a general direction: the smallest summand degree goes up by
    /// one. This single-step rule is the only one that is proven.
    Proven(SplittingType),
    /// k > 1: the single-step rule iterated, reported as a heuristic.
    Heuristic(SplittingType),
    /// Non-general directions: only the guaranteed envelope (each step
    /// raises some summand by one).
    Envelope(DegreeInterval),
}

impl ModUpOutcome {
    pub fn splitting_type(&self) -> Option<&SplittingType> {
        match self {
            ModUpOutcome::Proven(t) | ModUpOutcome::Heuristic(t) => Some(t),
            ModUpOutcome::Envelope(_) => None,
        }
    }
}

/// `k` positive rank-1 modifications of `t`.
pub fn generic_mod_up(t: &SplittingType, k: usize, general: bool) -> ModUpOutcome {
    assert!(k >= 1 && k <= t.rank(), "require 1 <= k <= rank");
    if !general {
        return ModUpOutcome::Envelope(DegreeInterval::new(
            t.min_entry(),
            t.max_entry() + k as i64,
        ));
    }
    let mut cur = t.entries().to_vec();
    for _ in 0..k {
        // entries are non-increasing, so the last one is a smallest summand
        *cur.last_mut().unwrap() += 1;
        cur.sort_unstable_by(|x, y| y.cmp(x));
    }
    let result = SplittingType::new(cur);
    if k == 1 {
        ModUpOutcome::Proven(result)
    } else {
        ModUpOutcome::Heuristic(result)
    }
}

/// Semicontinuity (dominance) order on types of equal rank and degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Dominance {
    MoreBalanced,
    LessBalanced,
    Equal,
    Incomparable,
}

/// Compares prefix sums of the sorted entries: smaller prefix sums at every
/// step means more balanced, hence more generic under specialization.
pub fn dominance_compare(
    t1: &SplittingType,
    t2: &SplittingType,
) -> Result<Dominance, SplitError> {
    if t1.rank() != t2.rank() || t1.degree() != t2.degree() {
        return Err(SplitError::RankDegreeMismatch {
            r1: t1.rank(),
            d1: t1.degree(),
            r2: t2.rank(),
            d2: t2.degree(),
        });
    }
    let mut saw_less = false;
    let mut saw_greater = false;
    let mut p1 = 0i64;
    let mut p2 = 0i64;
    for (a, b) in t1.entries().iter().zip(t2.entries()) {
        p1 += a;
        p2 += b;
        match p1.cmp(&p2) {
            Ordering::Less => saw_less = true,
            Ordering::Greater => saw_greater = true,
            Ordering::Equal => {}
        }
    }
    Ok(match (saw_less, saw_greater) {
        (false, false) => Dominance::Equal,
        (true, false) => Dominance::MoreBalanced,
        (false, true) => Dominance::LessBalanced,
        (true, true) => Dominance::Incomparable,
    })
}

/// The dominance-maximal (most balanced) elements of a list of observed
/// types, deduplicated and sorted. Incomparable maxima are all kept.
pub fn dominance_maximal(types: &[SplittingType]) -> Vec<SplittingType> {
    let mut maximal: Vec<SplittingType> = Vec::new();
    for t in types {
        let covered = maximal.iter().any(|m| {
            matches!(
                dominance_compare(m, t),
                Ok(Dominance::MoreBalanced) | Ok(Dominance::Equal)
            )
        });
        if covered {
            continue;
        }
        maximal.retain(|m| !matches!(dominance_compare(m, t), Ok(Dominance::LessBalanced)));
        maximal.push(t.clone());
    }
    maximal.sort_by(|a, b| a.entries().cmp(b.entries()));
    maximal.dedup();
    maximal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(v: &[i64]) -> SplittingType {
        SplittingType::new(v.to_vec())
    }

    #[test]
    fn type_arithmetic_examples() {
        assert_eq!(t(&[3, 2, 2]).twist(1), t(&[4, 3, 3]));
        assert_eq!(t(&[1, 0]).tensor(&t(&[1, 0])), t(&[2, 1, 1, 0]));
        assert_eq!(t(&[1, 1, 0]).dual(), t(&[0, -1, -1]));
        assert_eq!(t(&[2, 0]).direct_sum(&t(&[1])), t(&[2, 1, 0]));
    }

    #[test]
    fn tensor_rank_degree_identity() {
        let e = t(&[4, 3, 3]);
        let f = t(&[2, 1]);
        let g = e.tensor(&f);
        assert_eq!(g.rank(), 6);
        assert_eq!(g.degree(), 3 * 3 + 2 * 10);
    }

    #[test]
    fn balanced_type_examples() {
        assert_eq!(balanced_type(3, 10), t(&[4, 3, 3]));
        assert_eq!(balanced_type(2, 14), t(&[7, 7]));
        assert_eq!(balanced_type(5, 13), t(&[3, 3, 3, 2, 2]));
        assert_eq!(balanced_type(3, -4), t(&[-1, -1, -2]));
    }

    #[test]
    fn parity_two_balanced_examples() {
        assert_eq!(parity_two_balanced_type(2, 14, 0).unwrap(), t(&[8, 6]));
        assert_eq!(parity_two_balanced_type(2, 14, 1).unwrap(), t(&[7, 7]));
        assert_eq!(
            parity_two_balanced_type(3, 10, 1),
            Err(SplitError::NoSuchType { rank: 3, degree: 10, parity: 1 })
        );
    }

    /// Brute-force oracle: enumerate every non-increasing tuple with entries
    /// of the given parity and span <= 2 near the slope.
    fn brute_parity(rank: usize, degree: i64, parity: u8) -> Vec<Vec<i64>> {
        let r = rank as i64;
        let center = degree.div_euclid(r);
        let mut found = Vec::new();
        for x in center - 4..=center + 4 {
            if x.rem_euclid(2) != parity as i64 {
                continue;
            }
            for k in 0..=rank {
                let sum = x * (r - k as i64) + (x + 2) * k as i64;
                if sum == degree {
                    let mut v = vec![x + 2; k];
                    v.extend(std::iter::repeat(x).take(rank - k));
                    // k = rank duplicates the k = 0 tuple for x' = x + 2
                    if !found.contains(&v) {
                        found.push(v);
                    }
                }
            }
        }
        found
    }

    #[test]
    fn parity_two_balanced_matches_enumeration() {
        for rank in 1..=4usize {
            for degree in -20..=20i64 {
                for parity in 0..=1u8 {
                    let brute = brute_parity(rank, degree, parity);
                    match parity_two_balanced_type(rank, degree, parity) {
                        Ok(ty) => {
                            assert_eq!(brute.len(), 1, "rank {rank} degree {degree} parity {parity}");
                            assert_eq!(ty.entries(), &brute[0][..]);
                        }
                        Err(_) => assert!(brute.is_empty()),
                    }
                }
            }
        }
    }

    #[test]
    fn hilbert_function_examples() {
        let ty = t(&[1, 1, 0]);
        let h: Vec<i64> = (-2..=1).map(|m| ty.hilbert_function(m)).collect();
        assert_eq!(h, vec![0, 2, 5, 8]);
        // rank-1 staircases
        let o7 = t(&[7]);
        assert_eq!(
            (-8..=-6).map(|m| o7.hilbert_function(m)).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        let dual = t(&[-7]);
        assert_eq!(
            (5..=7).map(|m| dual.hilbert_function(m)).collect::<Vec<_>>(),
            vec![0, 0, 1]
        );
    }

    #[test]
    fn window_recovery_example() {
        let window = [(-2, 0), (-1, 2), (0, 5), (1, 8)];
        assert_eq!(type_from_hilbert(&window).unwrap(), t(&[1, 1, 0]));
    }

    #[test]
    fn window_errors() {
        // does not start below the first positive twist
        assert!(type_from_hilbert(&[(-1, 2), (0, 5), (1, 8)]).is_err());
        // never stabilizes
        assert!(type_from_hilbert(&[(-2, 0), (-1, 2), (0, 5)]).is_err());
        // non-monotone differences cannot come from a bundle
        assert!(type_from_hilbert(&[(0, 0), (1, 3), (2, 4), (3, 5)]).is_err());
    }

    #[test]
    fn generic_mod_up_examples() {
        assert_eq!(
            generic_mod_up(&t(&[2, 0]), 1, true),
            ModUpOutcome::Proven(t(&[2, 1]))
        );
        assert_eq!(
            generic_mod_up(&t(&[7, 7]), 1, true),
            ModUpOutcome::Proven(t(&[8, 7]))
        );
        assert_eq!(
            generic_mod_up(&t(&[2, 1]), 1, false),
            ModUpOutcome::Envelope(DegreeInterval::new(1, 3))
        );
        // three steps: (3,3,1) -> (3,3,2) -> (3,3,3) -> (4,3,3)
        assert_eq!(
            generic_mod_up(&t(&[3, 3, 1]), 3, true),
            ModUpOutcome::Heuristic(t(&[4, 3, 3]))
        );
    }

    #[test]
    fn interval_combine_examples() {
        let c = |a, b| DegreeInterval::new(a, b);
        assert_eq!(interval_combine(c(2, 3), c(2, 4)), c(2, 4));
        assert_eq!(interval_combine((&t(&[3, 3])).into(), c(3, 3)), c(3, 3));
        assert_eq!(interval_combine(c(1, 2), c(4, 5)), c(1, 5));
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(
            dominance_compare(&t(&[4, 3, 3]), &t(&[4, 4, 2])).unwrap(),
            Dominance::MoreBalanced
        );
        assert_eq!(
            dominance_compare(&t(&[3, 3]), &t(&[3, 3])).unwrap(),
            Dominance::Equal
        );
        assert_eq!(
            dominance_compare(&t(&[5, 3, 2]), &t(&[4, 4, 2])).unwrap(),
            Dominance::LessBalanced
        );
        assert_eq!(
            dominance_compare(&t(&[5, 5, 2, 2]), &t(&[6, 3, 3, 2])).unwrap(),
            Dominance::Incomparable
        );
        assert!(dominance_compare(&t(&[1]), &t(&[1, 0])).is_err());
    }

    #[test]
    fn dominance_maximal_keeps_incomparable() {
        let family = vec![t(&[5, 5, 2, 2]), t(&[6, 3, 3, 2]), t(&[6, 4, 2, 2])];
        let max = dominance_maximal(&family);
        assert_eq!(max, vec![t(&[5, 5, 2, 2]), t(&[6, 3, 3, 2])]);
        assert_eq!(dominance_maximal(&family[..1]), vec![t(&[5, 5, 2, 2])]);
        // a strictly more balanced type absorbs the rest
        let chain = vec![t(&[4, 4, 2]), t(&[4, 3, 3]), t(&[5, 3, 2])];
        assert_eq!(dominance_maximal(&chain), vec![t(&[4, 3, 3])]);
    }

    fn arb_type() -> impl Strategy<Value = SplittingType> {
        proptest::collection::vec(-10i64..=10, 1..=12).prop_map(SplittingType::new)
    }

    proptest! {
        #[test]
        fn hilbert_round_trip(ty in arb_type()) {
            let m0 = -ty.max_entry() - 1;
            let m1 = -ty.min_entry() + 1;
            let window: Vec<(i64, i64)> =
                (m0..=m1).map(|m| (m, ty.hilbert_function(m))).collect();
            prop_assert_eq!(type_from_hilbert(&window).unwrap(), ty);
        }

        #[test]
        fn hilbert_first_difference_counts_entries(ty in arb_type(), m in -12i64..12) {
            let diff = ty.hilbert_function(m) - ty.hilbert_function(m - 1);
            let count = ty.entries().iter().filter(|a| **a >= -m).count() as i64;
            prop_assert_eq!(diff, count);
        }

        #[test]
        fn dual_twist_involutions(ty in arb_type(), m in -5i64..=5) {
            prop_assert_eq!(ty.dual().dual(), ty.clone());
            prop_assert_eq!(ty.twist(m).twist(-m), ty);
        }

        #[test]
        fn mod_up_degree_and_span(ty in arb_type()) {
            let out = generic_mod_up(&ty, 1, true);
            let up = out.splitting_type().unwrap();
            prop_assert_eq!(up.degree(), ty.degree() + 1);
            prop_assert!(up.span() <= ty.span().max(1));
        }

        #[test]
        fn dominance_is_antisymmetric_and_transitive(
            seed in proptest::collection::vec(-6i64..=6, 4),
            perturb in 0usize..4,
        ) {
            // three types of equal rank and degree built by moving mass around
            let base = SplittingType::new(seed);
            let shift = |ty: &SplittingType, i: usize| {
                let mut v = ty.entries().to_vec();
                let j = (i + 1) % v.len();
                if i != j { v[i] += 1; v[j] -= 1; }
                SplittingType::new(v)
            };
            let a = base.clone();
            let b = shift(&base, perturb);
            let c = shift(&b, (perturb + 1) % 4);
            for (x, y) in [(&a, &b), (&b, &c), (&a, &c)] {
                let xy = dominance_compare(x, y).unwrap();
                let yx = dominance_compare(y, x).unwrap();
                match xy {
                    Dominance::MoreBalanced => prop_assert_eq!(yx, Dominance::LessBalanced),
                    Dominance::LessBalanced => prop_assert_eq!(yx, Dominance::MoreBalanced),
                    Dominance::Equal => prop_assert_eq!(yx, Dominance::Equal),
                    Dominance::Incomparable => prop_assert_eq!(yx, Dominance::Incomparable),
                }
            }
            // transitivity
            if dominance_compare(&a, &b).unwrap() == Dominance::MoreBalanced
                && dominance_compare(&b, &c).unwrap() == Dominance::MoreBalanced
            {
                let ac = dominance_compare(&a, &c).unwrap();
                prop_assert!(ac == Dominance::MoreBalanced || ac == Dominance::Equal);
            }
        }
    }
}
