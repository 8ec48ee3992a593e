//! Centre construction.

mod bounds;
mod debruijn;
mod prefix_tree;

pub use bounds::{distance_bound_for_lambda, theoretical_bounds, LambdaBound, TheoreticalBounds};
pub use debruijn::{debruijn_order, debruijn_sample, debruijn_sequence, DEBRUIJN_MEMORY_BUDGET};
pub use prefix_tree::{language_counter, prefix_tree_sample};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::LanguageSpec;
use crate::words::{canonical_rotation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    PrefixTree,
    DeBruijn,
    /// Exhaustive optimum from the oracle.
    Optimal,
    /// Supplied by hand.
    Manual,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::PrefixTree => "prefix-tree",
            Method::DeBruijn => "de-bruijn",
            Method::Optimal => "optimal",
            Method::Manual => "manual",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prefix" | "prefix-tree" => Ok(Method::PrefixTree),
            "debruijn" | "de-bruijn" => Ok(Method::DeBruijn),
            "optimal" => Ok(Method::Optimal),
            "manual" => Ok(Method::Manual),
            other => Err(Error::invalid(format!("unknown method `{other}`"))),
        }
    }
}

/// At most `k` distinct language members, stored in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CentreDoc", into = "CentreDoc")]
pub struct CentreSet {
    language: LanguageSpec,
    k: usize,
    method: Method,
    lambda_achieved: usize,
    centres: Vec<Word>,
}

impl CentreSet {
    pub fn new(
        language: LanguageSpec,
        k: usize,
        method: Method,
        lambda_achieved: usize,
        centres: Vec<Word>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("k must be at least 1"));
        }
        if centres.len() > k {
            return Err(Error::invalid(format!("{} centres exceed k = {k}", centres.len())));
        }
        let mut seen = BTreeSet::new();
        let mut canonical = Vec::with_capacity(centres.len());
        for c in centres {
            if !language.contains(&c) {
                return Err(Error::invalid(format!("centre {c} is not in the language {language}")));
            }
            let c = canonical_rotation(&c).into_word();
            if !seen.insert(c.clone()) {
                return Err(Error::invalid(format!("centre {c} appears twice")));
            }
            canonical.push(c);
        }
        Ok(CentreSet {
            language,
            k,
            method,
            lambda_achieved,
            centres: canonical,
        })
    }

    pub fn language(&self) -> &LanguageSpec {
        &self.language
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn lambda_achieved(&self) -> usize {
        self.lambda_achieved
    }

    pub fn centres(&self) -> &[Word] {
        &self.centres
    }

    pub fn len(&self) -> usize {
        self.centres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centres.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct CentreDoc {
    language: LanguageSpec,
    k: usize,
    method: Method,
    lambda_achieved: usize,
    centres: Vec<String>,
}

impl TryFrom<CentreDoc> for CentreSet {
    type Error = Error;

    fn try_from(doc: CentreDoc) -> Result<Self> {
        let alphabet = doc.language.alphabet();
        let encoding = doc.language.encoding();
        let centres = doc
            .centres
            .iter()
            .map(|c| Word::parse(c, alphabet, encoding))
            .collect::<Result<Vec<_>>>()?;
        CentreSet::new(doc.language, doc.k, doc.method, doc.lambda_achieved, centres)
    }
}

impl From<CentreSet> for CentreDoc {
    fn from(set: CentreSet) -> Self {
        let encoding = set.language.encoding();
        CentreDoc {
            centres: set.centres.iter().map(|c| c.encode(encoding)).collect(),
            language: set.language,
            k: set.k,
            method: set.method,
            lambda_achieved: set.lambda_achieved,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Alphabet, Encoding};

    fn lang() -> LanguageSpec {
        LanguageSpec::fixed_length(Alphabet::new(2).unwrap(), 4).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, Alphabet::new(2).unwrap(), Encoding::Letters).unwrap()
    }

    #[test]
    fn centres_are_canonical_and_validated() {
        let set = CentreSet::new(lang(), 2, Method::Manual, 1, vec![w("baaa"), w("abbb")]).unwrap();
        assert_eq!(set.centres()[0].to_string(), "aaab");
        assert!(CentreSet::new(lang(), 1, Method::Manual, 1, vec![w("aaab"), w("abbb")]).is_err());
        assert!(CentreSet::new(lang(), 2, Method::Manual, 1, vec![w("aab")]).is_err());
        assert!(CentreSet::new(lang(), 2, Method::Manual, 1, vec![w("aaab"), w("aaba")]).is_err());
        assert!(CentreSet::new(lang(), 0, Method::Manual, 1, vec![]).is_err());
    }

    #[test]
    fn document_round_trip() {
        let set = CentreSet::new(lang(), 2, Method::PrefixTree, 1, vec![w("aabb"), w("bbbb")]).unwrap();
        let text = serde_json::to_string(&set).unwrap();
        assert_eq!(
            text,
            r#"{"language":{"family":"fixed-length","q":2,"length":4,"content":null,"forbidden":null},"k":2,"method":"prefix-tree","lambda_achieved":1,"centres":["aabb","bbbb"]}"#
        );
        let back: CentreSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, set);
        let bad = text.replace("bbbb", "bbbbb");
        assert!(serde_json::from_str::<CentreSet>(&bad).is_err());
    }
}
