//! The finite languages of necklaces that centres are chosen from.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Encoding, Word};

/// A normalised set of forbidden subwords: no member occurs inside another.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ForbiddenSet {
    words: Vec<Word>,
}

fn occurs_in(needle: &[u8], hay: &[u8]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

impl ForbiddenSet {
    pub fn empty() -> Self {
        ForbiddenSet::default()
    }

    /// Drops duplicates and every entry that contains another entry.
    pub fn new(words: impl IntoIterator<Item = Word>) -> Self {
        let mut words: Vec<Word> = words.into_iter().collect();
        words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        words.dedup();
        let mut kept: Vec<Word> = Vec::new();
        for w in words {
            if !kept.iter().any(|k| occurs_in(k.letters(), w.letters())) {
                kept.push(w);
            }
        }
        kept.sort();
        ForbiddenSet { words: kept }
    }

    /// Parses a comma-separated list (letters) or a semicolon-separated
    /// list (integer encoding, whose words already use commas).
    pub fn parse(text: &str, alphabet: Alphabet, encoding: Encoding) -> Result<Self> {
        let sep = match encoding {
            Encoding::Letters => ',',
            Encoding::Integers => ';',
        };
        let words = text
            .split(sep)
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Word::parse(s, alphabet, encoding))
            .collect::<Result<Vec<_>>>()?;
        Ok(ForbiddenSet::new(words))
    }

    pub fn encode(&self, encoding: Encoding) -> Vec<String> {
        self.words.iter().map(|w| w.encode(encoding)).collect()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Members no longer than `len`; longer ones cannot occur in a word of that length.
    pub fn restricted_to(&self, len: usize) -> ForbiddenSet {
        ForbiddenSet {
            words: self.words.iter().filter(|w| w.len() <= len).cloned().collect(),
        }
    }

    /// No member occurs in any rotation of `word`.
    pub fn avoided_by(&self, word: &[u8]) -> bool {
        let n = word.len();
        self.words.iter().filter(|f| f.len() <= n).all(|f| {
            let f = f.letters();
            (0..n).all(|start| (0..f.len()).any(|i| word[(start + i) % n] != f[i]))
        })
    }

    /// No member occurs in `word^∞`: the avoidance notion under which a
    /// word and each of its powers agree.
    pub fn avoided_periodically(&self, word: &[u8]) -> bool {
        let n = word.len();
        self.words.iter().all(|f| {
            let f = f.letters();
            (0..n).all(|start| (0..f.len()).any(|i| word[(start + i) % n] != f[i]))
        })
    }

    /// No member occurs in `word` read linearly.
    pub fn avoided_linearly(&self, word: &[u8]) -> bool {
        self.words.iter().all(|f| !occurs_in(f.letters(), word))
    }
}

/// Occurrences per character.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParikhVector {
    counts: Vec<usize>,
}

impl ParikhVector {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::invalid("a content vector needs at least two entries"));
        }
        if counts.iter().sum::<usize>() == 0 {
            return Err(Error::invalid("content vector sums to zero"));
        }
        Ok(ParikhVector { counts })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let counts = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("malformed content entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        ParikhVector::new(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.counts.len()).expect("validated at construction")
    }

    pub fn matches(&self, word: &[u8]) -> bool {
        let mut seen = vec![0usize; self.counts.len()];
        for &c in word {
            match seen.get_mut(c as usize) {
                Some(slot) => *slot += 1,
                None => return false,
            }
        }
        seen == self.counts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    FixedLength,
    MaxLength,
    FixedContent,
    Forbidden,
    MaxLengthForbidden,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::FixedLength => "fixed-length",
            Family::MaxLength => "max-length",
            Family::FixedContent => "fixed-content",
            Family::Forbidden => "forbidden",
            Family::MaxLengthForbidden => "max-length-forbidden",
        })
    }
}

/// One of the language families with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LanguageDoc", into = "LanguageDoc")]
pub struct LanguageSpec {
    family: Family,
    alphabet: Alphabet,
    length: usize,
    content: Option<ParikhVector>,
    forbidden: ForbiddenSet,
}

impl LanguageSpec {
    fn check_length(length: usize) -> Result<()> {
        if length == 0 {
            return Err(Error::invalid("length must be at least 1"));
        }
        Ok(())
    }

    pub fn fixed_length(alphabet: Alphabet, length: usize) -> Result<Self> {
        Self::check_length(length)?;
        Ok(LanguageSpec {
            family: Family::FixedLength,
            alphabet,
            length,
            content: None,
            forbidden: ForbiddenSet::empty(),
        })
    }

    pub fn max_length(alphabet: Alphabet, length: usize) -> Result<Self> {
        Ok(LanguageSpec {
            family: Family::MaxLength,
            ..Self::fixed_length(alphabet, length)?
        })
    }

    pub fn fixed_content(content: ParikhVector) -> Result<Self> {
        Ok(LanguageSpec {
            family: Family::FixedContent,
            alphabet: content.alphabet(),
            length: content.total(),
            content: Some(content),
            forbidden: ForbiddenSet::empty(),
        })
    }

    pub fn forbidden(alphabet: Alphabet, length: usize, forbidden: ForbiddenSet) -> Result<Self> {
        Self::check_length(length)?;
        if forbidden.is_empty() {
            return Err(Error::invalid(
                "a forbidden-subword language needs at least one forbidden word",
            ));
        }
        if forbidden
            .words()
            .iter()
            .any(|f| f.letters().iter().any(|&c| !alphabet.contains(c)))
        {
            return Err(Error::invalid("forbidden word uses letters outside the alphabet"));
        }
        Ok(LanguageSpec {
            family: Family::Forbidden,
            alphabet,
            length,
            content: None,
            forbidden,
        })
    }

    pub fn max_length_forbidden(alphabet: Alphabet, length: usize, forbidden: ForbiddenSet) -> Result<Self> {
        Ok(LanguageSpec {
            family: Family::MaxLengthForbidden,
            ..Self::forbidden(alphabet, length, forbidden)?
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn q(&self) -> usize {
        self.alphabet.size()
    }

    /// The fixed length, or the length bound for max-length families.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn content(&self) -> Option<&ParikhVector> {
        self.content.as_ref()
    }

    pub fn forbidden_set(&self) -> &ForbiddenSet {
        &self.forbidden
    }

    pub fn is_max_length(&self) -> bool {
        matches!(self.family, Family::MaxLength | Family::MaxLengthForbidden)
    }

    /// The fixed-length language whose centres serve this one.
    pub fn fixed_length_core(&self) -> LanguageSpec {
        match self.family {
            Family::MaxLength => LanguageSpec {
                family: Family::FixedLength,
                ..self.clone()
            },
            Family::MaxLengthForbidden => LanguageSpec {
                family: Family::Forbidden,
                ..self.clone()
            },
            _ => self.clone(),
        }
    }

    /// Lengths of the words in the language.
    pub fn lengths(&self) -> std::ops::RangeInclusive<usize> {
        if self.is_max_length() {
            1..=self.length
        } else {
            self.length..=self.length
        }
    }

    /// Whether the necklace of `word` belongs to the language.
    pub fn contains(&self, word: &Word) -> bool {
        let letters = word.letters();
        if letters.iter().any(|&c| !self.alphabet.contains(c)) || !self.lengths().contains(&letters.len()) {
            return false;
        }
        if let Some(content) = &self.content {
            if !content.matches(letters) {
                return false;
            }
        }
        self.forbidden.avoided_by(letters)
    }

    pub fn encoding(&self) -> Encoding {
        self.alphabet.default_encoding()
    }
}

impl fmt::Display for LanguageSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} q={} l={}", self.family, self.q(), self.length)?;
        if let Some(c) = &self.content {
            write!(f, " content={:?}", c.counts())?;
        }
        if !self.forbidden.is_empty() {
            write!(f, " forbidden={}", self.forbidden.encode(self.encoding()).join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LanguageDoc {
    family: Family,
    q: usize,
    length: usize,
    #[serde(default)]
    content: Option<Vec<usize>>,
    #[serde(default)]
    forbidden: Option<Vec<String>>,
}

impl From<LanguageSpec> for LanguageDoc {
    fn from(l: LanguageSpec) -> Self {
        let encoding = l.encoding();
        LanguageDoc {
            family: l.family,
            q: l.q(),
            length: l.length,
            content: l.content.map(|c| c.counts),
            forbidden: (!l.forbidden.is_empty()).then(|| l.forbidden.encode(encoding)),
        }
    }
}

impl TryFrom<LanguageDoc> for LanguageSpec {
    type Error = Error;

    fn try_from(doc: LanguageDoc) -> Result<Self> {
        let alphabet = Alphabet::new(doc.q)?;
        let encoding = alphabet.default_encoding();
        let forbidden = ForbiddenSet::new(
            doc.forbidden
                .unwrap_or_default()
                .iter()
                .map(|s| Word::parse(s, alphabet, encoding))
                .collect::<Result<Vec<_>>>()?,
        );
        let spec = match doc.family {
            Family::FixedLength => LanguageSpec::fixed_length(alphabet, doc.length)?,
            Family::MaxLength => LanguageSpec::max_length(alphabet, doc.length)?,
            Family::FixedContent => {
                let content = ParikhVector::new(
                    doc.content
                        .ok_or_else(|| Error::invalid("fixed-content language without content"))?,
                )?;
                if content.total() != doc.length || content.counts().len() != doc.q {
                    return Err(Error::invalid("content vector does not match q and length"));
                }
                LanguageSpec::fixed_content(content)?
            }
            Family::Forbidden => LanguageSpec::forbidden(alphabet, doc.length, forbidden)?,
            Family::MaxLengthForbidden => LanguageSpec::max_length_forbidden(alphabet, doc.length, forbidden)?,
        };
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn fs(s: &str) -> ForbiddenSet {
        ForbiddenSet::parse(s, bin(), Encoding::Letters).unwrap()
    }

    #[test]
    fn normalisation_drops_containing_entries() {
        let f = fs("abb,bb,bb,aba");
        assert_eq!(f.encode(Encoding::Letters), ["aba", "bb"]);
        assert_eq!(f.max_len(), 3);
    }

    #[test]
    fn cyclic_avoidance() {
        let f = fs("bb");
        assert!(f.avoided_by(&[0, 1, 0]));
        assert!(!f.avoided_by(&[1, 0, 1]));
        // a single b avoids bb as a word of length 1, but not periodically
        assert!(f.avoided_by(&[1]));
        assert!(!f.avoided_periodically(&[1]));
    }

    #[test]
    fn content_mismatch_rejected_in_documents() {
        let doc = r#"{"family":"fixed-content","q":2,"length":9,"content":[5,5]}"#;
        assert!(serde_json::from_str::<LanguageSpec>(doc).is_err());
    }

    #[test]
    fn document_round_trip() {
        let l = LanguageSpec::forbidden(bin(), 6, fs("bb")).unwrap();
        let text = serde_json::to_string(&l).unwrap();
        assert_eq!(
            text,
            r#"{"family":"forbidden","q":2,"length":6,"content":null,"forbidden":["bb"]}"#
        );
        assert_eq!(serde_json::from_str::<LanguageSpec>(&text).unwrap(), l);
    }

    #[test]
    fn membership() {
        let l = LanguageSpec::fixed_content(ParikhVector::new(vec![2, 2]).unwrap()).unwrap();
        assert!(l.contains(&Word::parse("abab", bin(), Encoding::Letters).unwrap()));
        assert!(!l.contains(&Word::parse("aaab", bin(), Encoding::Letters).unwrap()));
        assert!(LanguageSpec::forbidden(bin(), 4, ForbiddenSet::empty()).is_err());
        let m = LanguageSpec::max_length(bin(), 3).unwrap();
        assert!(m.contains(&Word::parse("a", bin(), Encoding::Letters).unwrap()));
        assert!(!m.contains(&Word::parse("aaaa", bin(), Encoding::Letters).unwrap()));
    }
}
