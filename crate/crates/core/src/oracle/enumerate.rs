use crate::counting::language_size;
use crate::error::{Error, Result};
use crate::language::LanguageSpec;
use crate::words::{is_necklace, prenecklace_period, Necklace, Prenecklaces, Word};
use crate::Rank;

/// Default bound on the number of necklaces an oracle will materialise.
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

pub fn enumerate_language(language: &LanguageSpec) -> Result<Vec<Necklace>> {
    enumerate_language_capped(language, DEFAULT_ENUM_CAP)
}

/// Every necklace of the language, lexicographically sorted.
pub fn enumerate_language_capped(language: &LanguageSpec, cap: usize) -> Result<Vec<Necklace>> {
    let size: Rank = language_size(language)?;
    if size > Rank::from(cap) {
        return Err(Error::ResourceCap {
            what: "language enumeration",
            estimate: format!("{size} necklaces"),
            cap: cap.to_string(),
        });
    }
    let q = language.alphabet().size() as u8;
    let mut out = Vec::new();
    for len in language.lengths() {
        match language.content() {
            Some(content) => {
                let mut remaining = content.counts().to_vec();
                let mut word = Vec::with_capacity(len);
                content_necklaces(&mut word, &mut remaining, len, &mut out);
            }
            None => {
                let mut it = Prenecklaces::new(q, len);
                while let Some((s, p)) = it.advance() {
                    if len % p == 0 && language.forbidden_set().avoided_by(s) {
                        out.push(Necklace::of(&Word::from_letters(s.to_vec())));
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.canonical().cmp(b.canonical()));
    Ok(out)
}

fn content_necklaces(word: &mut Vec<u8>, remaining: &mut [usize], len: usize, out: &mut Vec<Necklace>) {
    if word.len() == len {
        if is_necklace(word) {
            out.push(Necklace::of(&Word::from_letters(word.clone())));
        }
        return;
    }
    for c in 0..remaining.len() {
        if remaining[c] == 0 {
            continue;
        }
        word.push(c as u8);
        if prenecklace_period(word).is_some() {
            remaining[c] -= 1;
            content_necklaces(word, remaining, len, out);
            remaining[c] += 1;
        }
        word.pop();
    }
}
