//! Centres cut from a de Bruijn sequence.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::counting::count_necklaces;
use crate::error::{Error, Result};
use crate::language::{Family, ForbiddenSet, LanguageSpec};
use crate::rank::{rank_necklace, unrank_necklace};
use crate::samplers::prefix_tree::whole_language_if_small;
use crate::samplers::{CentreSet, Method};
use crate::words::{canonical_rotation, Alphabet, Prenecklaces, Word};
use crate::Rank;

/// Longest sequence generated before reporting a resource error.
pub const DEBRUIJN_MEMORY_BUDGET: usize = 1 << 26;

/// The lexicographically least de Bruijn sequence of order `order`:
/// Lyndon words with length dividing `order`, concatenated in order.
pub fn debruijn_sequence(alphabet: Alphabet, order: usize) -> Result<Word> {
    if order == 0 {
        return Err(Error::invalid("order must be at least 1"));
    }
    let q = alphabet.size();
    let len = (0..order).try_fold(1usize, |acc, _| acc.checked_mul(q));
    let len = match len {
        Some(l) if l <= DEBRUIJN_MEMORY_BUDGET => l,
        _ => {
            return Err(Error::ResourceCap {
                what: "de Bruijn sequence",
                estimate: format!("{q}^{order} letters"),
                cap: DEBRUIJN_MEMORY_BUDGET.to_string(),
            })
        }
    };
    let mut out = Vec::with_capacity(len);
    let mut it = Prenecklaces::new(q as u8, order);
    while let Some((s, p)) = it.advance() {
        if order.is_multiple_of(p) {
            out.extend_from_slice(&s[..p]);
        }
    }
    Ok(Word::from_letters(out))
}

/// Largest `λ ≤ ℓ` with `q^λ ≤ k(ℓ − λ + 1)`.
pub fn debruijn_order(alphabet: Alphabet, len: usize, k: usize) -> Option<usize> {
    let q = alphabet.size() as u128;
    (1..=len)
        .filter(|&lambda| {
            let cap = (k as u128).saturating_mul((len - lambda + 1) as u128);
            q.checked_pow(lambda as u32).is_some_and(|p| p <= cap)
        })
        .max()
}

fn window(seq: &[u8], start: usize, len: usize) -> Word {
    Word::from_letters((0..len).map(|i| seq[(start + i) % seq.len()]).collect())
}

/// de Bruijn centres for a fixed-length language (max-length families reuse
/// the centres of their longest length).
pub fn debruijn_sample(language: &LanguageSpec, k: usize) -> Result<CentreSet> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if !matches!(language.family(), Family::FixedLength | Family::MaxLength) {
        return Err(Error::invalid(format!(
            "the de Bruijn sampler serves fixed-length languages, not {}",
            language.family()
        )));
    }
    let len = language.length();
    if len < 2 {
        return Err(Error::invalid("the de Bruijn sampler needs length at least 2"));
    }
    if let Some(all) = whole_language_if_small(language, k, Method::DeBruijn)? {
        return Ok(all);
    }
    let core = language.fixed_length_core();
    if let Some(all) = whole_language_if_small(&core, k, Method::DeBruijn)? {
        return CentreSet::new(language.clone(), k, Method::DeBruijn, len, all.centres().to_vec());
    }
    let alphabet = language.alphabet();
    let lambda = debruijn_order(alphabet, len, k).ok_or_else(|| {
        Error::invalid(format!(
            "no order λ satisfies q^λ ≤ k(ℓ − λ + 1) for q={}, ℓ={len}, k={k}",
            alphabet.size()
        ))
    })?;
    let seq = debruijn_sequence(alphabet, lambda)?;
    let seq = seq.letters();
    let stride = len - lambda + 1;
    let windows = seq.len().div_ceil(stride);

    let mut seen = BTreeSet::new();
    let mut centres = Vec::with_capacity(k);
    let mut push = |w: Word, centres: &mut Vec<Word>| {
        let c = canonical_rotation(&w).into_word();
        if seen.insert(c.clone()) {
            centres.push(c);
        }
    };
    for i in 0..windows {
        push(window(seq, i * stride, len), &mut centres);
    }
    // Spare budget: shifted windows first, then midpoints of rank gaps.
    let mut offsets: Vec<usize> = (1..stride).collect();
    offsets.sort_by_key(|&o| (o.abs_diff(stride / 2), o));
    'fill: for o in offsets {
        for i in 0..windows {
            if centres.len() >= k {
                break 'fill;
            }
            push(window(seq, i * stride + o, len), &mut centres);
        }
    }
    if centres.len() < k {
        fill_rank_gaps(alphabet, len, k, &mut centres)?;
    }
    CentreSet::new(language.clone(), k, Method::DeBruijn, lambda, centres)
}

/// Adds midpoint necklaces of the widest untouched rank intervals.
fn fill_rank_gaps(alphabet: Alphabet, len: usize, k: usize, centres: &mut Vec<Word>) -> Result<()> {
    let none = ForbiddenSet::empty();
    let total: Rank = count_necklaces(alphabet, len, &none)?;
    let mut taken: BTreeSet<Rank> = centres
        .iter()
        .map(|c| rank_necklace(alphabet, c, &none))
        .collect::<Result<_>>()?;
    while centres.len() < k {
        let mut best: Option<(Rank, Rank)> = None;
        let mut prev = Rank::zero();
        for edge in taken.iter().cloned().chain(std::iter::once(total.clone())) {
            let width = &edge - &prev;
            if !width.is_zero() && best.as_ref().is_none_or(|(w, _)| width > *w) {
                best = Some((width.clone(), &prev + (&width - 1u32) / 2u32));
            }
            prev = edge + 1u32;
        }
        let Some((_, mid)) = best else { break };
        centres.push(unrank_necklace(alphabet, &mid, len, &none)?.into_word());
        taken.insert(mid);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn covered(centres: &[Word], lambda: usize) -> BTreeSet<Vec<u8>> {
        let mut grams = BTreeSet::new();
        for c in centres {
            let l = c.letters();
            for i in 0..l.len() {
                grams.insert((0..lambda).map(|j| l[(i + j) % l.len()]).collect::<Vec<u8>>());
            }
        }
        grams
    }

    #[test]
    fn sequences() {
        assert_eq!(
            debruijn_sequence(bin(), 1)
                .unwrap()
                .encode(crate::words::Encoding::Integers),
            "1,2"
        );
        assert_eq!(
            debruijn_sequence(bin(), 3).unwrap().letters(),
            &[0, 0, 0, 1, 0, 1, 1, 1]
        );
        let s = debruijn_sequence(bin(), 6).unwrap();
        let text: String = s.letters().iter().map(|c| char::from(b'0' + c)).collect();
        assert_eq!(text, "0000001000011000101000111001001011001101001111010101110110111111");
        let ternary = debruijn_sequence(Alphabet::new(3).unwrap(), 4).unwrap();
        assert_eq!(covered(&[ternary], 4).len(), 81);
        assert!(matches!(debruijn_sequence(bin(), 40), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn order_rule() {
        assert_eq!(debruijn_order(bin(), 21, 4), Some(6));
        assert_eq!(debruijn_order(bin(), 8, 4), Some(4));
        assert_eq!(debruijn_order(bin(), 2, 1), Some(1));
        assert_eq!(debruijn_order(Alphabet::new(3).unwrap(), 2, 1), None);
    }

    #[test]
    fn length_21_k_4() {
        let lang = LanguageSpec::fixed_length(bin(), 21).unwrap();
        let set = debruijn_sample(&lang, 4).unwrap();
        assert_eq!(set.lambda_achieved(), 6);
        assert_eq!(set.len(), 4);
        assert_eq!(covered(set.centres(), 6).len(), 64);
        let first = window(debruijn_sequence(bin(), 6).unwrap().letters(), 0, 21);
        assert_eq!(set.centres()[0], canonical_rotation(&first).into_word());
    }

    #[test]
    fn small_instances_cover_all_grams() {
        for (len, k) in [(8, 4), (2, 1), (10, 7), (12, 30)] {
            let lang = LanguageSpec::fixed_length(bin(), len).unwrap();
            let set = debruijn_sample(&lang, k).unwrap();
            let lambda = set.lambda_achieved();
            assert_eq!(covered(set.centres(), lambda).len(), 1 << lambda, "l={len} k={k}");
            assert!(set.len() <= k);
        }
        let lang = LanguageSpec::fixed_length(bin(), 2).unwrap();
        assert_eq!(debruijn_sample(&lang, 1).unwrap().centres()[0].to_string(), "ab");
    }

    #[test]
    fn surplus_budget_is_used() {
        let lang = LanguageSpec::fixed_length(bin(), 8).unwrap();
        let set = debruijn_sample(&lang, 20).unwrap();
        assert_eq!(set.len(), 20);
    }
}
