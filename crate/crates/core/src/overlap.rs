//! Subword multisets and the overlap distance between cyclic words.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::Word;

/// How two cyclic words are brought to a common length before comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RepresentativeLength {
    /// `lcm(|a|, |b|)`, the minimal common length.
    #[default]
    Lcm,
    /// `|a| * |b|`.
    Product,
}

/// Overlap distance: an exact non-negative rational, or infinity when the
/// two words share no subword at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance<T: Clone + Integer = u64> {
    Finite(Ratio<T>),
    Infinite,
}

impl<T: Clone + Integer> Distance<T> {
    pub fn zero() -> Self {
        Distance::Finite(Ratio::zero())
    }

    pub fn finite(num: T, den: T) -> Self {
        Distance::Finite(Ratio::new(num, den))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Distance::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Distance::Finite(r) if r.is_zero())
    }

    pub fn as_ratio(&self) -> Option<&Ratio<T>> {
        match self {
            Distance::Finite(r) => Some(r),
            Distance::Infinite => None,
        }
    }
}

impl<T: Clone + Integer + ToPrimitive> Distance<T> {
    pub fn to_f64(&self) -> f64 {
        match self {
            Distance::Finite(r) => r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN),
            Distance::Infinite => f64::INFINITY,
        }
    }
}

impl<T: Clone + Integer + fmt::Display> fmt::Display for Distance<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Distance::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DistanceRepr<T> {
    Finite { num: T, den: T },
    Infinite(String),
}

impl<T: Clone + Integer + Serialize> Serialize for Distance<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(r) => DistanceRepr::Finite {
                num: r.numer().clone(),
                den: r.denom().clone(),
            }
            .serialize(serializer),
            Distance::Infinite => DistanceRepr::<T>::Infinite("inf".into()).serialize(serializer),
        }
    }
}

impl<'de, T: Clone + Integer + Deserialize<'de>> Deserialize<'de> for Distance<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match DistanceRepr::<T>::deserialize(deserializer)? {
            DistanceRepr::Finite { num, den } => {
                if den.is_zero() {
                    return Err(serde::de::Error::custom("zero denominator"));
                }
                Ok(Distance::finite(num, den))
            }
            DistanceRepr::Infinite(s) if s == "inf" => Ok(Distance::Infinite),
            DistanceRepr::Infinite(s) => Err(serde::de::Error::custom(format!(
                "expected \"inf\" or {{num, den}}, got {s:?}"
            ))),
        }
    }
}

/// The multiset of all cyclic subwords of a word, keyed by content.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubwordMultiset {
    counts: BTreeMap<Word, usize>,
    base_length: usize,
}

impl SubwordMultiset {
    pub fn base_length(&self) -> usize {
        self.base_length
    }

    pub fn multiplicity(&self, subword: &Word) -> usize {
        self.counts.get(subword).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Entries of one subword length.
    pub fn of_length(&self, len: usize) -> impl Iterator<Item = (&Word, usize)> {
        self.counts
            .iter()
            .filter(move |(w, _)| w.len() == len)
            .map(|(w, &c)| (w, c))
    }

    /// Size of the multiset intersection.
    pub fn intersection_size(&self, other: &SubwordMultiset) -> usize {
        self.counts.iter().map(|(w, &c)| c.min(other.multiplicity(w))).sum()
    }
}

/// Every cyclic subword of length `1..=|w|` starting at every position.
pub fn subword_multiset(w: &Word) -> SubwordMultiset {
    let n = w.len();
    let doubled = [w.letters(), w.letters()].concat();
    let mut counts = BTreeMap::new();
    for len in 1..=n {
        for start in 0..n {
            let sub = Word::from_letters(doubled[start..start + len].to_vec());
            *counts.entry(sub).or_insert(0) += 1;
        }
    }
    SubwordMultiset { counts, base_length: n }
}

fn common_length(a: usize, b: usize, mode: RepresentativeLength) -> usize {
    match mode {
        RepresentativeLength::Lcm => a.lcm(&b),
        RepresentativeLength::Product => a * b,
    }
}

/// The powers of `a` and `b` that share the length `lcm(|a|, |b|)`.
pub fn same_length_representatives(a: &Word, b: &Word) -> (Word, Word) {
    same_length_representatives_with(a, b, RepresentativeLength::Lcm)
}

pub fn same_length_representatives_with(a: &Word, b: &Word, mode: RepresentativeLength) -> (Word, Word) {
    let len = common_length(a.len(), b.len(), mode);
    (a.power(len / a.len()), b.power(len / b.len()))
}

/// Counts of the length-`len` windows of a periodic buffer that start in its first period.
fn weighted_windows(buffer: &[u8], period: usize, len: usize) -> HashMap<&[u8], usize> {
    let mut map: HashMap<&[u8], usize> = HashMap::with_capacity(period);
    for start in 0..period {
        *map.entry(&buffer[start..start + len]).or_insert(0) += 1;
    }
    map
}

fn periodic_buffer(w: &[u8], len: usize) -> Vec<u8> {
    w.iter().copied().cycle().take(len).collect()
}

/// Multiset intersection size of the subwords of the two same-length
/// representatives, and the representative length.
pub fn intersection_count(a: &Word, b: &Word, mode: RepresentativeLength) -> (usize, usize) {
    let len = common_length(a.len(), b.len(), mode);
    let (pa, pb) = (a.len(), b.len());
    let (wa, wb) = (len / pa, len / pb);
    let buf_a = periodic_buffer(a.letters(), pa + len);
    let buf_b = periodic_buffer(b.letters(), pb + len);
    let mut shared = 0;
    for l in 1..=len {
        let ma = weighted_windows(&buf_a, pa, l);
        let mb = weighted_windows(&buf_b, pb, l);
        let (small, large, ws, wl) = if ma.len() <= mb.len() {
            (&ma, &mb, wa, wb)
        } else {
            (&mb, &ma, wb, wa)
        };
        for (key, &c) in small {
            if let Some(&d) = large.get(key) {
                shared += (c * ws).min(d * wl);
            }
        }
    }
    (shared, len)
}

/// Overlap distance with `lcm`-length representatives.
pub fn overlap_distance(a: &Word, b: &Word) -> Distance {
    overlap_distance_with(a, b, RepresentativeLength::Lcm).expect("u64 holds the squared representative length")
}

/// Overlap distance in a chosen scalar type and representative length.
pub fn overlap_distance_with<T>(a: &Word, b: &Word, mode: RepresentativeLength) -> Result<Distance<T>>
where
    T: Clone + Integer + FromPrimitive,
{
    let (shared, len) = intersection_count(a, b, mode);
    let total = len * len;
    if shared == 0 {
        return Ok(Distance::Infinite);
    }
    if shared == total {
        return Ok(Distance::zero());
    }
    let num = T::from_usize(total).ok_or(Error::Overflow("distance numerator"))?;
    let den = T::from_usize(shared).ok_or(Error::Overflow("distance denominator"))?;
    Ok(Distance::finite(num, den))
}

/// Length of the longest subword shared by the same-length representatives
/// of `a` and `b`, read cyclically.
pub fn longest_common_subword(a: &Word, b: &Word) -> usize {
    let len = a.len().lcm(&b.len());
    let buf_a = periodic_buffer(a.letters(), a.len() + len);
    let buf_b = periodic_buffer(b.letters(), b.len() + len);
    let shares = |l: usize| {
        let set: HashSet<&[u8]> = (0..a.len()).map(|s| &buf_a[s..s + l]).collect();
        (0..b.len()).any(|s| set.contains(&buf_b[s..s + l]))
    };
    let (mut lo, mut hi) = (0usize, len);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if shares(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::words::canonical_rotation;
    use proptest::prelude::*;

    fn word() -> impl Strategy<Value = Word> {
        proptest::collection::vec(0u8..2, 1..7).prop_map(Word::from_letters)
    }

    proptest! {
        #[test]
        fn multiset_sizes(x in word()) {
            let m = subword_multiset(&x);
            let n = x.len();
            prop_assert_eq!(m.total(), n * n);
            for l in 1..=n {
                prop_assert_eq!(m.of_length(l).map(|(_, c)| c).sum::<usize>(), n);
            }
        }

        #[test]
        fn distance_symmetric_and_identity(x in word(), y in word()) {
            let dxy = overlap_distance(&x, &y);
            prop_assert_eq!(&dxy, &overlap_distance(&y, &x));
            // distance zero means equal primitive roots (equal necklaces at equal length)
            let root = |w: &Word| {
                let c = canonical_rotation(w);
                c.canonical().letters()[..c.period()].to_vec()
            };
            let same = root(&x) == root(&y);
            prop_assert_eq!(dxy.is_zero(), same);
            if let Distance::Finite(r) = &dxy {
                if !same {
                    prop_assert!(*r >= Ratio::from_integer(1));
                }
            }
        }
    }
}
