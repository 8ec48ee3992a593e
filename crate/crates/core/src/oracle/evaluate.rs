use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::language::LanguageSpec;
use crate::oracle::enumerate::{enumerate_language_capped, DEFAULT_ENUM_CAP};
use crate::overlap::{longest_common_subword, overlap_distance, Distance};
use crate::samplers::{CentreSet, Method};
use crate::words::Word;

/// Maps `f` over `items` on up to `threads` scoped threads, keeping order.
pub(crate) fn parallel_map<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                scope.spawn(move || part.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

/// Symmetric matrix of pairwise overlap distances.
pub fn distance_matrix(words: &[Word], threads: usize) -> Vec<Vec<Distance>> {
    let rows: Vec<usize> = (0..words.len()).collect();
    let upper = parallel_map(&rows, threads, |&i| {
        (i..words.len())
            .map(|j| overlap_distance(&words[i], &words[j]))
            .collect::<Vec<_>>()
    });
    let n = words.len();
    let mut m = vec![vec![Distance::zero(); n]; n];
    for (i, row) in upper.into_iter().enumerate() {
        for (off, d) in row.into_iter().enumerate() {
            m[i][i + off] = d.clone();
            m[i + off][i] = d;
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearestCentre {
    pub word: String,
    pub centre: Option<String>,
    pub distance: Distance,
    pub shared_subword: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalReport {
    pub language: LanguageSpec,
    pub k: usize,
    pub method: Method,
    /// Infinite when some word shares nothing with every centre.
    pub max_min_distance: Distance,
    pub lambda_observed: usize,
    pub optimum: Option<Distance>,
    pub ratio: Option<Distance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_word_nearest: Option<Vec<NearestCentre>>,
}

impl EvalReport {
    pub fn is_feasible(&self) -> bool {
        !self.max_min_distance.is_infinite()
    }

    /// Records a known optimum and the resulting approximation ratio.
    pub fn with_optimum(mut self, optimum: Distance) -> Self {
        self.ratio = distance_ratio(&self.max_min_distance, &optimum);
        self.optimum = Some(optimum);
        self
    }
}

/// `a / b` for distances; `None` when undefined (`b` infinite, or `0/0`).
pub fn distance_ratio(a: &Distance, b: &Distance) -> Option<Distance> {
    match (a, b) {
        (_, Distance::Infinite) => None,
        (Distance::Infinite, _) => Some(Distance::Infinite),
        (Distance::Finite(x), Distance::Finite(y)) => {
            if y.numer() == &0 {
                return if x.numer() == &0 {
                    Some(Distance::finite(1, 1))
                } else {
                    Some(Distance::Infinite)
                };
            }
            let num = u128::from(*x.numer()) * u128::from(*y.denom());
            let den = u128::from(*x.denom()) * u128::from(*y.numer());
            let r = Ratio::new(num, den);
            Some(Distance::finite(
                u64::try_from(*r.numer()).ok()?,
                u64::try_from(*r.denom()).ok()?,
            ))
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    pub threads: usize,
    pub per_word: bool,
    pub enum_cap: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            threads: 1,
            per_word: false,
            enum_cap: DEFAULT_ENUM_CAP,
        }
    }
}

pub fn evaluate(centres: &CentreSet, language: &LanguageSpec) -> Result<EvalReport> {
    evaluate_with(centres, language, EvalOptions::default())
}

pub fn evaluate_with(centres: &CentreSet, language: &LanguageSpec, options: EvalOptions) -> Result<EvalReport> {
    if centres.language().alphabet() != language.alphabet() {
        return Err(Error::invalid("centres and language use different alphabets"));
    }
    let words: Vec<Word> = enumerate_language_capped(language, options.enum_cap)?
        .into_iter()
        .map(|n| n.into_word())
        .collect();
    let cs = centres.centres();
    let rows = parallel_map(&words, options.threads, |w| {
        let mut best: Option<(Distance, usize)> = None;
        let mut shared = 0;
        for (i, c) in cs.iter().enumerate() {
            let d = overlap_distance(w, c);
            if best.as_ref().is_none_or(|(b, _)| d < *b) {
                best = Some((d, i));
            }
            shared = shared.max(longest_common_subword(w, c));
        }
        (best, shared)
    });
    let mut max_min = Distance::zero();
    let mut lambda = usize::MAX;
    let mut table = Vec::new();
    for (w, (best, shared)) in words.iter().zip(rows) {
        let (d, idx) = match best {
            Some((d, i)) => (d, Some(i)),
            None => (Distance::Infinite, None),
        };
        if d > max_min {
            max_min = d.clone();
        }
        lambda = lambda.min(shared);
        if options.per_word {
            table.push(NearestCentre {
                word: w.encode(language.encoding()),
                centre: idx.map(|i| cs[i].encode(language.encoding())),
                distance: d,
                shared_subword: shared,
            });
        }
    }
    Ok(EvalReport {
        language: language.clone(),
        k: centres.k(),
        method: centres.method(),
        max_min_distance: max_min,
        lambda_observed: if words.is_empty() { 0 } else { lambda },
        optimum: None,
        ratio: None,
        per_word_nearest: options.per_word.then_some(table),
    })
}
