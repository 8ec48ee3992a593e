use serde::Serialize;

use crate::error::{Error, Result};
use crate::language::LanguageSpec;
use crate::oracle::evaluate::{distance_ratio, evaluate_with, EvalOptions};
use crate::oracle::kcentre::{optimal_kcentre_with, SearchLimits};
use crate::overlap::Distance;
use crate::samplers::{debruijn_sample, prefix_tree_sample, theoretical_bounds, Method};

/// One cell of the approximation study. Infeasible or oversized cells carry
/// a note instead of numbers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub language: String,
    pub q: usize,
    pub length: usize,
    pub k: usize,
    pub method: Method,
    pub sampler_distance: Option<Distance>,
    pub optimum: Option<Distance>,
    pub ratio: Option<f64>,
    /// Closed-form upper bound for the method.
    pub bound: Option<f64>,
    /// Closed-form ratio for the method.
    pub bound_ratio: Option<f64>,
    pub note: String,
}

fn sample(method: Method, language: &LanguageSpec, k: usize) -> Result<crate::samplers::CentreSet> {
    match method {
        Method::PrefixTree => prefix_tree_sample(language, k),
        Method::DeBruijn => debruijn_sample(language, k),
        other => Err(Error::invalid(format!("{other} is not a sampler"))),
    }
}

fn cell(language: &LanguageSpec, k: usize, method: Method, limits: SearchLimits) -> RatioRow {
    let bounds = theoretical_bounds::<f64>(language.q(), language.length(), k).ok();
    let (bound, bound_ratio) = match (method, bounds) {
        (Method::PrefixTree, Some(b)) => (b.upper_prefix, b.ratio_prefix),
        (Method::DeBruijn, Some(b)) => (b.upper_debruijn, b.ratio_debruijn),
        _ => (None, None),
    };
    let mut row = RatioRow {
        language: language.to_string(),
        q: language.q(),
        length: language.length(),
        k,
        method,
        sampler_distance: None,
        optimum: None,
        ratio: None,
        bound,
        bound_ratio,
        note: String::new(),
    };
    if bound.is_none() {
        row.note = "closed-form bound not applicable (log argument ≤ 1)".into();
    }
    let options = EvalOptions {
        threads: limits.threads,
        per_word: false,
        enum_cap: limits.enum_cap,
    };
    let outcome = sample(method, language, k)
        .and_then(|set| evaluate_with(&set, language, options))
        .and_then(|report| Ok((report, optimal_kcentre_with(language, k, limits)?.1)));
    match outcome {
        Ok((report, optimum)) => {
            row.ratio = distance_ratio(&report.max_min_distance, &optimum).map(|r| r.to_f64());
            row.sampler_distance = Some(report.max_min_distance);
            row.optimum = Some(optimum);
        }
        Err(e) => row.note = format!("skipped: {e}"),
    }
    row
}

/// Sampler distance against the exact optimum on every cell of the grid.
pub fn ratio_study(
    languages: &[LanguageSpec],
    ks: &[usize],
    methods: &[Method],
    limits: SearchLimits,
) -> Vec<RatioRow> {
    let mut rows = Vec::new();
    for language in languages {
        for &k in ks {
            for &method in methods {
                rows.push(cell(language, k, method, limits));
            }
        }
    }
    rows
}

#[derive(Serialize)]
struct FlatRow<'a> {
    language: &'a str,
    q: usize,
    length: usize,
    k: usize,
    method: String,
    sampler_distance: String,
    optimum: String,
    ratio: String,
    bound: String,
    bound_ratio: String,
    note: &'a str,
}

fn show<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// Flat CSV table of the study, one line per cell.
pub fn ratio_table_csv(rows: &[RatioRow]) -> Result<String> {
    let mut out = csv::Writer::from_writer(Vec::new());
    for r in rows {
        out.serialize(FlatRow {
            language: &r.language,
            q: r.q,
            length: r.length,
            k: r.k,
            method: r.method.to_string(),
            sampler_distance: show(&r.sampler_distance),
            optimum: show(&r.optimum),
            ratio: show(&r.ratio),
            bound: show(&r.bound),
            bound_ratio: show(&r.bound_ratio),
            note: &r.note,
        })
        .map_err(|e| Error::Internal(e.to_string()))?;
    }
    let bytes = out.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}
