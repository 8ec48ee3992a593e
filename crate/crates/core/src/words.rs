//! Alphabets, words and necklaces.
//!
//! Letters are stored 0-based (`0..q`); the text encodings map them to
//! `a..z` or to 1-based comma-separated integers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered alphabet of `q` characters, `0 < 1 < … < q-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Alphabet {
    q: u8,
}

impl Alphabet {
    pub fn new(q: usize) -> Result<Self> {
        if !(2..=255).contains(&q) {
            return Err(Error::invalid(format!("alphabet size must be in 2..=255, got {q}")));
        }
        Ok(Alphabet { q: q as u8 })
    }

    pub fn size(self) -> usize {
        self.q as usize
    }

    pub fn smallest(self) -> u8 {
        0
    }

    pub fn largest(self) -> u8 {
        self.q - 1
    }

    pub fn contains(self, letter: u8) -> bool {
        letter < self.q
    }

    /// Letters is the default encoding up to 26 characters.
    pub fn default_encoding(self) -> Encoding {
        if self.q <= 26 {
            Encoding::Letters
        } else {
            Encoding::Integers
        }
    }
}

/// Text encoding of words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    /// `a` is the smallest character, `z` the 26th.
    #[default]
    Letters,
    /// Comma-separated 1-based indices, e.g. `1,1,2`.
    Integers,
}

impl FromStr for Encoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "letters" => Ok(Encoding::Letters),
            "integers" => Ok(Encoding::Integers),
            other => Err(Error::invalid(format!("unknown encoding `{other}`"))),
        }
    }
}

/// A non-empty finite word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    /// Builds a word, checking every letter against `alphabet`.
    pub fn new(letters: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::invalid("empty word"));
        }
        if let Some(&bad) = letters.iter().find(|&&c| !alphabet.contains(c)) {
            return Err(Error::invalid(format!(
                "letter index {} outside alphabet of size {}",
                bad as usize + 1,
                alphabet.size()
            )));
        }
        Ok(Word { letters })
    }

    /// Builds a word without alphabet validation. Panics on empty input.
    pub(crate) fn from_letters(letters: Vec<u8>) -> Self {
        assert!(!letters.is_empty(), "empty word");
        Word { letters }
    }

    pub fn parse(text: &str, alphabet: Alphabet, encoding: Encoding) -> Result<Self> {
        let text = text.trim();
        let letters = match encoding {
            Encoding::Letters => text
                .chars()
                .map(|ch| {
                    if ch.is_ascii_lowercase() {
                        Ok(ch as u8 - b'a')
                    } else {
                        Err(Error::invalid(format!(
                            "malformed word `{text}`: `{ch}` is not a letter a..z"
                        )))
                    }
                })
                .collect::<Result<Vec<u8>>>()?,
            Encoding::Integers => text
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    match tok.parse::<usize>() {
                        Ok(v) if (1..=255).contains(&v) => Ok((v - 1) as u8),
                        _ => Err(Error::invalid(format!(
                            "malformed word `{text}`: `{tok}` is not an index in 1..=255"
                        ))),
                    }
                })
                .collect::<Result<Vec<u8>>>()?,
        };
        Word::new(letters, alphabet).map_err(|e| match e {
            Error::InvalidInput(msg) => Error::invalid(format!("word `{text}`: {msg}")),
            other => other,
        })
    }

    pub fn encode(&self, encoding: Encoding) -> String {
        match encoding {
            Encoding::Letters => self.letters.iter().map(|&c| (b'a' + c) as char).collect(),
            Encoding::Integers => self
                .letters
                .iter()
                .map(|&c| (c as usize + 1).to_string())
                .collect::<Vec<_>>()
                .join(","),
        }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Occurrences of each of the `q` characters.
    pub fn parikh(&self, q: usize) -> Vec<usize> {
        let mut counts = vec![0; q];
        for &c in &self.letters {
            counts[c as usize] += 1;
        }
        counts
    }

    /// `self` repeated `times` times.
    pub fn power(&self, times: usize) -> Word {
        Word::from_letters(self.letters.repeat(times.max(1)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|&c| c < 26) {
            f.write_str(&self.encode(Encoding::Letters))
        } else {
            f.write_str(&self.encode(Encoding::Integers))
        }
    }
}

/// A necklace, held by its canonical (least) rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace {
    canonical: Word,
    period: usize,
}

impl Necklace {
    pub fn of(word: &Word) -> Necklace {
        canonical_rotation(word)
    }

    pub fn canonical(&self) -> &Word {
        &self.canonical
    }

    pub fn into_word(self) -> Word {
        self.canonical
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_lyndon(&self) -> bool {
        self.period == self.canonical.len()
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

/// Least rotation of `w` (Booth's algorithm) together with its period.
pub fn canonical_rotation(w: &Word) -> Necklace {
    let start = least_rotation_index(w.letters());
    let n = w.len();
    let mut letters = Vec::with_capacity(n);
    letters.extend_from_slice(&w.letters()[start..]);
    letters.extend_from_slice(&w.letters()[..start]);
    let period = smallest_period(&letters);
    Necklace {
        canonical: Word::from_letters(letters),
        period,
    }
}

/// Index at which the lexicographically least rotation of `s` starts.
pub(crate) fn least_rotation_index(s: &[u8]) -> usize {
    let n = s.len();
    let at = |i: usize| s[i % n];
    let mut failure = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let c = at(j);
        let mut i = failure[j - k - 1];
        while i != usize::MAX && c != at(k + i + 1) {
            if c < at(k + i + 1) {
                k = j - i - 1;
            }
            i = failure[i];
        }
        if i == usize::MAX && c != at(k) {
            if c < at(k) {
                k = j;
            }
            failure[j - k] = usize::MAX;
        } else {
            failure[j - k] = if i == usize::MAX { 0 } else { i + 1 };
        }
    }
    k
}

/// Smallest cyclic period of `s`: the least `d | n` with `s` equal to its shift by `d`.
pub(crate) fn smallest_period(s: &[u8]) -> usize {
    let n = s.len();
    let border = prefix_function(s).last().copied().unwrap_or(0);
    let p = n - border;
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

/// KMP prefix function.
pub(crate) fn prefix_function(s: &[u8]) -> Vec<usize> {
    let mut pi = vec![0; s.len()];
    for i in 1..s.len() {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi
}

/// Moves the suffix of length `i` to the front.
pub fn cyclic_shift(w: &Word, i: usize) -> Result<Word> {
    let n = w.len();
    if i > n {
        return Err(Error::invalid(format!("shift {i} exceeds word length {n}")));
    }
    let mut letters = Vec::with_capacity(n);
    letters.extend_from_slice(&w.letters()[n - i..]);
    letters.extend_from_slice(&w.letters()[..n - i]);
    Ok(Word::from_letters(letters))
}

/// Left rotation by `t`: the word read cyclically from position `t`.
#[cfg(test)]
pub(crate) fn rotate_left(s: &[u8], t: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(s.len());
    out.extend_from_slice(&s[t..]);
    out.extend_from_slice(&s[..t]);
    out
}

/// If `s` is a prenecklace, its Lyndon-prefix period.
pub(crate) fn prenecklace_period(s: &[u8]) -> Option<usize> {
    let mut p = 1;
    for i in 1..s.len() {
        match s[i].cmp(&s[i - p]) {
            std::cmp::Ordering::Less => return None,
            std::cmp::Ordering::Greater => p = i + 1,
            std::cmp::Ordering::Equal => {}
        }
    }
    Some(p)
}

pub(crate) fn is_necklace(s: &[u8]) -> bool {
    matches!(prenecklace_period(s), Some(p) if s.len().is_multiple_of(p))
}

/// Smallest necklace of length `target_len` that starts with `prefix`, if any.
/// Dead ends only occur at the last letter, so the backtracking stays shallow.
fn smallest_necklace_extending(prefix: &mut Vec<u8>, target_len: usize, q: u8) -> bool {
    if prefix.len() == target_len {
        return is_necklace(prefix);
    }
    if prenecklace_period(prefix).is_none() {
        return false;
    }
    for c in 0..q {
        prefix.push(c);
        if smallest_necklace_extending(prefix, target_len, q) {
            return true;
        }
        prefix.pop();
    }
    false
}

/// Smallest necklace (over `q` letters, same length) that is `>= w`.
pub(crate) fn smallest_necklace_at_least(w: &[u8], q: u8) -> Vec<u8> {
    let n = w.len();
    if is_necklace(w) {
        return w.to_vec();
    }
    for i in (0..n).rev() {
        for c in w[i] + 1..q {
            let mut prefix = w[..i].to_vec();
            prefix.push(c);
            if smallest_necklace_extending(&mut prefix, n, q) {
                return prefix;
            }
        }
    }
    unreachable!("the all-largest word is a necklace and bounds every word")
}

/// Iterates over prenecklaces of length `n` in lexicographic order,
/// yielding each with its period (FKM).
pub(crate) struct Prenecklaces {
    current: Vec<u8>,
    period: usize,
    q: u8,
    started: bool,
    done: bool,
}

impl Prenecklaces {
    pub(crate) fn new(q: u8, n: usize) -> Self {
        Prenecklaces {
            current: vec![0; n],
            period: 1,
            q,
            started: false,
            done: n == 0,
        }
    }

    pub(crate) fn advance(&mut self) -> Option<(&[u8], usize)> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some((&self.current, self.period));
        }
        let n = self.current.len();
        let i = match self.current.iter().rposition(|&c| c + 1 < self.q) {
            Some(i) => i,
            None => {
                self.done = true;
                return None;
            }
        };
        self.current[i] += 1;
        for j in i + 1..n {
            self.current[j] = self.current[j - (i + 1)];
        }
        self.period = i + 1;
        Some((&self.current, self.period))
    }
}

/// All necklaces of length `n` over `q` letters, in lexicographic order.
pub fn necklaces(alphabet: Alphabet, n: usize) -> Vec<Necklace> {
    let mut out = Vec::new();
    let mut it = Prenecklaces::new(alphabet.size() as u8, n);
    while let Some((s, p)) = it.advance() {
        if n.is_multiple_of(p) {
            out.push(Necklace {
                canonical: Word::from_letters(s.to_vec()),
                period: smallest_period(s),
            });
        }
    }
    out
}
