//! Ranking and unranking of necklaces, optionally avoiding forbidden subwords.
//!
//! The rank of a boundary word `w` of length `n` is built from the number
//! `T_d` of words of length `d | n` whose power falls below `w`; Möbius
//! inversion over divisors isolates exact periods and
//! `rank = Σ_{d | n} T'_d / d`.

mod context;
mod fixed_content;
pub mod prefix_set;

pub use context::RankContext;
pub use fixed_content::{count_fixed_content_with_prefix, FixedContentCounter};
pub use prefix_set::{omega, theta, OmegaMode, PrefixSet, SuffixSet};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::counting::divisors;
use crate::error::{Error, Result};
use crate::language::ForbiddenSet;
use crate::scalar::Count;
use crate::words::{canonical_rotation, is_necklace, Alphabet, Necklace, Word};
use crate::Rank;

fn context<T: Count>(alphabet: Alphabet, w: &Word, forbidden: &ForbiddenSet) -> Result<RankContext<T>> {
    RankContext::new(alphabet, w.letters().to_vec(), forbidden.restricted_to(w.len()))
}

/// Lyndon words of length `|w|` avoiding `forbidden` that are strictly below `w`.
pub fn rank_lyndon<T: Count>(alphabet: Alphabet, w: &Word, forbidden: &ForbiddenSet) -> Result<T> {
    let mut ctx = context::<T>(alphabet, w, forbidden)?;
    ctx.size_t_prime(w.len())?.exact_div(w.len())
}

/// Necklaces of length `|w|` avoiding `forbidden` whose canonical form is
/// strictly below `w`. The boundary need not be a necklace or avoid anything.
pub fn rank_necklace<T: Count>(alphabet: Alphabet, w: &Word, forbidden: &ForbiddenSet) -> Result<T> {
    let mut ctx = context::<T>(alphabet, w, forbidden)?;
    let mut total = T::zero();
    for d in divisors(w.len())? {
        total = total.try_add(&ctx.size_t_prime(d)?.exact_div(d)?)?;
    }
    Ok(total)
}

/// Counts of necklaces sharing a given prefix; the unranking descent and
/// the samplers only see this interface.
pub trait PrefixCounter {
    fn alphabet(&self) -> Alphabet;

    fn length(&self) -> usize;

    fn count_with_prefix(&self, prefix: &[u8]) -> Result<Rank>;

    fn total(&self) -> Result<Rank> {
        self.count_with_prefix(&[])
    }
}

/// Necklaces of one length avoiding a forbidden set, counted through ranks.
#[derive(Debug, Clone)]
pub struct NecklaceCounter {
    alphabet: Alphabet,
    length: usize,
    forbidden: ForbiddenSet,
}

impl NecklaceCounter {
    pub fn new(alphabet: Alphabet, length: usize, forbidden: ForbiddenSet) -> Result<Self> {
        if length == 0 {
            return Err(Error::invalid("length must be at least 1"));
        }
        Ok(NecklaceCounter {
            alphabet,
            length,
            forbidden: forbidden.restricted_to(length),
        })
    }
}

impl PrefixCounter for NecklaceCounter {
    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn length(&self) -> usize {
        self.length
    }

    fn count_with_prefix(&self, prefix: &[u8]) -> Result<Rank> {
        if prefix.len() > self.length {
            return Ok(Rank::zero());
        }
        let pad = |c: u8| {
            let mut v = prefix.to_vec();
            v.resize(self.length, c);
            Word::new(v, self.alphabet)
        };
        let lo = pad(self.alphabet.smallest())?;
        let hi = pad(self.alphabet.largest())?;
        let below_lo: Rank = rank_necklace(self.alphabet, &lo, &self.forbidden)?;
        let below_hi: Rank = rank_necklace(self.alphabet, &hi, &self.forbidden)?;
        let mut count = below_hi.try_sub(&below_lo)?;
        if is_necklace(hi.letters()) && self.forbidden.avoided_by(hi.letters()) {
            count += 1u32;
        }
        Ok(count)
    }
}

/// The `index`-th (0-based) necklace starting with `prefix`, by descent on
/// prefix counts.
pub fn nth_with_prefix<C: PrefixCounter + ?Sized>(counter: &C, prefix: &[u8], index: &Rank) -> Result<Necklace> {
    let available = counter.count_with_prefix(prefix)?;
    if *index >= available {
        return Err(Error::invalid(format!(
            "index {index} out of range: {available} necklaces start with the prefix"
        )));
    }
    let mut index = index.clone();
    let mut current = prefix.to_vec();
    while current.len() < counter.length() {
        let mut chosen = false;
        for c in 0..counter.alphabet().size() as u8 {
            current.push(c);
            let here = counter.count_with_prefix(&current)?;
            if index < here {
                chosen = true;
                break;
            }
            index -= here;
            current.pop();
        }
        if !chosen {
            return Err(Error::Internal("prefix counts do not add up".into()));
        }
    }
    Ok(canonical_rotation(&Word::new(current, counter.alphabet())?))
}

/// Rank of `w` among the counter's necklaces, summing over lexicographic branches.
pub fn rank_by_prefix_counts<C: PrefixCounter + ?Sized>(counter: &C, w: &Word) -> Result<Rank> {
    if w.len() != counter.length() {
        return Err(Error::invalid("boundary length differs from the language length"));
    }
    let mut total = Rank::zero();
    let mut prefix = Vec::with_capacity(w.len());
    for &letter in w.letters() {
        for c in 0..letter {
            prefix.push(c);
            total += counter.count_with_prefix(&prefix)?;
            prefix.pop();
        }
        prefix.push(letter);
    }
    Ok(total)
}

/// The necklace of length `len` avoiding `forbidden` with the given rank.
pub fn unrank_necklace(alphabet: Alphabet, rank: &Rank, len: usize, forbidden: &ForbiddenSet) -> Result<Necklace> {
    let counter = NecklaceCounter::new(alphabet, len, forbidden.clone())?;
    nth_with_prefix(&counter, &[], rank)
}

/// Necklaces of length `len` avoiding `forbidden` that start with `prefix`.
pub fn count_necklaces_with_prefix(
    alphabet: Alphabet,
    prefix: &[u8],
    len: usize,
    forbidden: &ForbiddenSet,
) -> Result<BigUint> {
    NecklaceCounter::new(alphabet, len, forbidden.clone())?.count_with_prefix(prefix)
}
