use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::language::LanguageSpec;
use crate::oracle::enumerate::{enumerate_language_capped, DEFAULT_ENUM_CAP};
use crate::oracle::evaluate::distance_matrix;
use crate::overlap::{longest_common_subword, Distance};
use crate::samplers::{CentreSet, Method};
use crate::words::Word;

/// Default bound on the number of k-subsets an exact search may face.
pub const DEFAULT_SUBSET_CAP: u64 = 50_000_000;

#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub enum_cap: usize,
    pub subset_cap: u64,
    pub threads: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            enum_cap: DEFAULT_ENUM_CAP,
            subset_cap: DEFAULT_SUBSET_CAP,
            threads: 1,
        }
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

struct Search<'a> {
    d: &'a [Vec<Distance>],
    /// `suffix_min[j][v]`: closest candidate with index `≥ j` to word `v`.
    suffix_min: Vec<Vec<Distance>>,
    k: usize,
    best: Distance,
    best_set: Vec<usize>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, next: usize, current: &[Distance]) {
        let n = self.d.len();
        if self.chosen.len() == self.k {
            let value = current.iter().max().cloned().unwrap_or_else(Distance::zero);
            if value < self.best || self.best_set.is_empty() {
                self.best = value;
                self.best_set = self.chosen.clone();
            }
            return;
        }
        let needed = self.k - self.chosen.len();
        if next + needed > n {
            return;
        }
        // No completion can beat the bound formed by the best remaining candidates.
        let bound = (0..n)
            .map(|v| current[v].clone().min(self.suffix_min[next][v].clone()))
            .max()
            .unwrap_or_else(Distance::zero);
        if !self.best_set.is_empty() && bound >= self.best {
            return;
        }
        for c in next..=n - needed {
            let updated: Vec<Distance> = (0..n).map(|v| current[v].clone().min(self.d[v][c].clone())).collect();
            self.chosen.push(c);
            self.run(c + 1, &updated);
            self.chosen.pop();
        }
    }
}

/// Exact optimum over all k-subsets of the language, with the first optimal
/// subset in lexicographic index order.
pub fn optimal_kcentre(language: &LanguageSpec, k: usize) -> Result<(CentreSet, Distance)> {
    optimal_kcentre_with(language, k, SearchLimits::default())
}

pub fn optimal_kcentre_with(language: &LanguageSpec, k: usize, limits: SearchLimits) -> Result<(CentreSet, Distance)> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let words: Vec<Word> = enumerate_language_capped(language, limits.enum_cap)?
        .into_iter()
        .map(|n| n.into_word())
        .collect();
    let n = words.len();
    if n == 0 {
        return Err(Error::EmptyLanguage);
    }
    if k >= n {
        let set = CentreSet::new(language.clone(), k, Method::Optimal, language.length(), words)?;
        return Ok((set, Distance::zero()));
    }
    let subsets = binomial(n, k);
    if subsets > BigUint::from(limits.subset_cap) {
        return Err(Error::ResourceCap {
            what: "exact k-centre search",
            estimate: format!("C({n}, {k}) = {subsets} subsets"),
            cap: limits.subset_cap.to_string(),
        });
    }
    let d = distance_matrix(&words, limits.threads);
    let mut suffix_min = vec![vec![Distance::Infinite; n]; n + 1];
    for j in (0..n).rev() {
        for v in 0..n {
            suffix_min[j][v] = suffix_min[j + 1][v].clone().min(d[v][j].clone());
        }
    }
    let mut search = Search {
        d: &d,
        suffix_min,
        k,
        best: Distance::Infinite,
        best_set: Vec::new(),
        chosen: Vec::new(),
    };
    search.run(0, &vec![Distance::Infinite; n]);
    let centres: Vec<Word> = search.best_set.iter().map(|&i| words[i].clone()).collect();
    let lambda = words
        .iter()
        .map(|w| centres.iter().map(|c| longest_common_subword(w, c)).max().unwrap_or(0))
        .min()
        .unwrap_or(0);
    let best = search.best.clone();
    Ok((
        CentreSet::new(language.clone(), k, Method::Optimal, lambda, centres)?,
        best,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::evaluate::evaluate;
    use crate::words::Alphabet;

    fn binary_four() -> LanguageSpec {
        LanguageSpec::fixed_length(Alphabet::new(2).unwrap(), 4).unwrap()
    }

    /// Plain enumeration of all subsets, no pruning.
    fn brute(d: &[Vec<Distance>], k: usize) -> Distance {
        let n = d.len();
        let mut best = Distance::Infinite;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let v = (0..n)
                .map(|w| {
                    (0..n)
                        .filter(|c| mask >> c & 1 == 1)
                        .map(|c| d[w][c].clone())
                        .min()
                        .unwrap()
                })
                .max()
                .unwrap();
            best = best.min(v);
        }
        best
    }

    #[test]
    fn matches_unpruned_search() {
        let words: Vec<Word> = crate::oracle::enumerate_language(&binary_four())
            .unwrap()
            .into_iter()
            .map(|n| n.into_word())
            .collect();
        let d = distance_matrix(&words, 1);
        for k in 1..=6 {
            let (set, value) = optimal_kcentre(&binary_four(), k).unwrap();
            assert_eq!(value, brute(&d, k), "k={k}");
            assert_eq!(evaluate(&set, &binary_four()).unwrap().max_min_distance, value);
        }
        let lang5 = LanguageSpec::fixed_length(Alphabet::new(2).unwrap(), 6).unwrap();
        let words: Vec<Word> = crate::oracle::enumerate_language(&lang5)
            .unwrap()
            .into_iter()
            .map(|n| n.into_word())
            .collect();
        let d = distance_matrix(&words, 1);
        for k in 1..=3 {
            assert_eq!(optimal_kcentre(&lang5, k).unwrap().1, brute(&d, k));
        }
    }

    #[test]
    fn k_at_least_language_is_zero() {
        assert!(optimal_kcentre(&binary_four(), 6).unwrap().1.is_zero());
        assert!(optimal_kcentre(&binary_four(), 0).is_err());
    }

    #[test]
    fn subset_cap() {
        let lang = LanguageSpec::fixed_length(Alphabet::new(2).unwrap(), 10).unwrap();
        let limits = SearchLimits {
            subset_cap: 100,
            ..SearchLimits::default()
        };
        assert!(matches!(
            optimal_kcentre_with(&lang, 4, limits),
            Err(Error::ResourceCap { .. })
        ));
    }
}
