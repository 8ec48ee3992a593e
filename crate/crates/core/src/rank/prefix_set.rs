//! Sets of partial matches against a forbidden set.

use std::collections::BTreeSet;

use crate::language::ForbiddenSet;

/// Live proper prefixes of forbidden words: the suffixes of the text read so
/// far that could still grow into a forbidden word.
pub type PrefixSet = BTreeSet<Vec<u8>>;

/// Trailing context words appended after the enumerated part.
pub type SuffixSet = BTreeSet<Vec<u8>>;

fn is_proper_prefix(p: &[u8], forbidden: &ForbiddenSet) -> bool {
    forbidden
        .words()
        .iter()
        .any(|f| f.len() > p.len() && f.letters().starts_with(p))
}

fn is_member(w: &[u8], forbidden: &ForbiddenSet) -> bool {
    forbidden.words().iter().any(|f| f.letters() == w)
}

/// Whether reading `letter` after the state completes a forbidden word.
pub fn completes(forbidden: &ForbiddenSet, state: &PrefixSet, letter: u8) -> bool {
    is_member(&[letter], forbidden)
        || state.iter().any(|p| {
            let mut w = p.clone();
            w.push(letter);
            is_member(&w, forbidden)
        })
}

/// The prefix-state transition: every `p·letter` (and `letter` alone) that
/// is still a proper prefix of some forbidden word.
pub fn theta(forbidden: &ForbiddenSet, state: &PrefixSet, letter: u8) -> PrefixSet {
    let mut out = PrefixSet::new();
    let single = vec![letter];
    if is_proper_prefix(&single, forbidden) {
        out.insert(single);
    }
    for p in state {
        let mut w = p.clone();
        w.push(letter);
        if is_proper_prefix(&w, forbidden) {
            out.insert(w);
        }
    }
    out
}

/// State after reading `text` from scratch; `None` if `text` contains a forbidden word.
pub fn theta_star(forbidden: &ForbiddenSet, text: &[u8]) -> Option<PrefixSet> {
    let mut state = PrefixSet::new();
    for &c in text {
        if completes(forbidden, &state, c) {
            return None;
        }
        state = theta(forbidden, &state, c);
    }
    Some(state)
}

/// Reading of the suffix-state transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmegaMode {
    /// Keep `s·letter` whenever it occurs anywhere inside a forbidden word.
    #[default]
    Subword,
    /// Keep `s·letter` only when it is itself a suffix of a forbidden word.
    SuffixFragment,
}

fn is_suffix_of_member(w: &[u8], forbidden: &ForbiddenSet) -> bool {
    forbidden.words().iter().any(|f| f.letters().ends_with(w))
}

fn is_factor_of_member(w: &[u8], forbidden: &ForbiddenSet) -> bool {
    forbidden
        .words()
        .iter()
        .any(|f| f.letters().windows(w.len()).any(|x| x == w))
}

/// The suffix-state transition: members that already end a forbidden word
/// are kept, and each member is extended by `letter` when the extension may
/// still be the head of a forbidden suffix.
pub fn omega(forbidden: &ForbiddenSet, state: &SuffixSet, letter: u8, mode: OmegaMode) -> SuffixSet {
    let mut out = SuffixSet::new();
    for s in state {
        if is_suffix_of_member(s, forbidden) {
            out.insert(s.clone());
        }
        let mut w = s.clone();
        w.push(letter);
        let keep = match mode {
            OmegaMode::Subword => is_factor_of_member(&w, forbidden),
            OmegaMode::SuffixFragment => is_suffix_of_member(&w, forbidden),
        };
        if keep {
            out.insert(w);
        }
    }
    out
}
