//! Breadth-first refinement of necklace prefixes until `k` of them remain.

use std::collections::VecDeque;

use num_traits::Zero;

use crate::counting::language_size;
use crate::error::{Error, Result};
use crate::language::LanguageSpec;
use crate::oracle::enumerate_language_capped;
use crate::rank::{nth_with_prefix, FixedContentCounter, NecklaceCounter, PrefixCounter};
use crate::samplers::{CentreSet, Method};
use crate::Rank;

/// The prefix counter matching a fixed-length family.
pub fn language_counter(language: &LanguageSpec) -> Result<Box<dyn PrefixCounter>> {
    let core = language.fixed_length_core();
    Ok(match core.content() {
        Some(content) => Box::new(FixedContentCounter::new(content.clone())),
        None => Box::new(NecklaceCounter::new(
            core.alphabet(),
            core.length(),
            core.forbidden_set().clone(),
        )?),
    })
}

/// When `k` covers the language, the language itself.
pub(crate) fn whole_language_if_small(language: &LanguageSpec, k: usize, method: Method) -> Result<Option<CentreSet>> {
    let total: Rank = language_size(language)?;
    if total.is_zero() {
        return Err(Error::EmptyLanguage);
    }
    if total <= Rank::from(k) {
        let all = enumerate_language_capped(language, k)?;
        let words = all.into_iter().map(|n| n.into_word()).collect();
        return Ok(Some(CentreSet::new(
            language.clone(),
            k,
            method,
            language.length(),
            words,
        )?));
    }
    Ok(None)
}

/// Centres from the prefix tree. Max-length families are served by the
/// centres of their longest length.
pub fn prefix_tree_sample(language: &LanguageSpec, k: usize) -> Result<CentreSet> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if let Some(all) = whole_language_if_small(language, k, Method::PrefixTree)? {
        return Ok(all);
    }
    let core = language.fixed_length_core();
    if let Some(all) = whole_language_if_small(&core, k, Method::PrefixTree)? {
        return CentreSet::new(
            language.clone(),
            k,
            Method::PrefixTree,
            all.lambda_achieved(),
            all.centres().to_vec(),
        );
    }
    let counter = language_counter(&core)?;
    let len = counter.length();
    let q = counter.alphabet().size() as u8;

    let mut frontier: VecDeque<(Vec<u8>, Rank)> = VecDeque::from([(Vec::new(), counter.total()?)]);
    while let Some((front, _)) = frontier.front() {
        if front.len() == len {
            break;
        }
        let mut children = Vec::new();
        for c in 0..q {
            let mut child = front.clone();
            child.push(c);
            let count = counter.count_with_prefix(&child)?;
            if !count.is_zero() {
                children.push((child, count));
            }
        }
        if frontier.len() - 1 + children.len() > k {
            break;
        }
        frontier.pop_front();
        frontier.extend(children);
    }

    let lambda = frontier.iter().map(|(p, _)| p.len()).min().unwrap_or(0);
    let mut prefixes: Vec<(Vec<u8>, Rank)> = frontier.into_iter().collect();
    prefixes.sort();
    let centres = prefixes
        .iter()
        .map(|(p, count)| {
            let mid = (count - 1u32) / 2u32;
            Ok(nth_with_prefix(counter.as_ref(), p, &mid)?.into_word())
        })
        .collect::<Result<Vec<_>>>()?;
    CentreSet::new(language.clone(), k, Method::PrefixTree, lambda, centres)
}
