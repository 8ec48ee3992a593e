use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use necklace_centres::counting::{count_cyclic_avoiding, count_fixed_content, count_lyndon, count_necklaces};
use necklace_centres::oracle::{
    evaluate_with, optimal_kcentre_with, ratio_study, ratio_table_csv, EvalOptions, SearchLimits, DEFAULT_ENUM_CAP,
    DEFAULT_SUBSET_CAP,
};
use necklace_centres::rank::{nth_with_prefix, rank_by_prefix_counts, rank_necklace};
use necklace_centres::samplers::{debruijn_sample, language_counter, prefix_tree_sample, theoretical_bounds};
use necklace_centres::{
    canonical_rotation, Alphabet, CentreSet, Encoding, Error, ForbiddenSet, LanguageSpec, Method, ParikhVector, Rank,
    Word,
};

#[derive(Parser, Debug)]
#[command(
    name = "necklace-centres",
    version,
    about = "k-centre selection for languages of necklaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for distance computations.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Largest language an oracle may enumerate.
    #[arg(long, global = true, env = "NECKLACE_ENUM_CAP", default_value_t = DEFAULT_ENUM_CAP)]
    enum_cap: usize,

    /// Largest number of k-subsets an exact search may face.
    #[arg(long, global = true, env = "NECKLACE_SUBSET_CAP", default_value_t = DEFAULT_SUBSET_CAP)]
    subset_cap: u64,

    /// Add decimal approximations next to exact distances.
    #[arg(long, global = true)]
    decimal: bool,

    /// Print input words as given instead of in canonical form.
    #[arg(long, global = true)]
    keep_rotation: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Necklace, Lyndon and cyclic-word counts.
    Count(LanguageArgs),
    /// Number of language necklaces below a word.
    Rank {
        #[command(flatten)]
        language: LanguageArgs,
        #[arg(long)]
        word: String,
    },
    /// The language necklace with a given rank.
    Unrank {
        #[command(flatten)]
        language: LanguageArgs,
        #[arg(long)]
        index: Rank,
    },
    /// Centres from one of the samplers, as a JSON document.
    Sample {
        #[command(flatten)]
        language: LanguageArgs,
        #[arg(long, value_parser = parse_sampler)]
        method: Method,
        #[arg(short = 'k', long)]
        k: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Closed-form distance bounds.
    Bounds {
        #[arg(short = 'q', long = "alphabet")]
        q: usize,
        #[arg(short = 'l', long = "length")]
        length: usize,
        #[arg(short = 'k', long)]
        k: usize,
    },
    /// Exhaustive evaluation of a centre document against a language.
    Evaluate {
        #[command(flatten)]
        language: LanguageArgs,
        #[arg(long)]
        centres: PathBuf,
        /// Include the nearest centre of every word.
        #[arg(long)]
        per_word: bool,
        /// Also compute the exact optimum and the ratio to it.
        #[arg(long)]
        with_optimum: bool,
    },
    /// Exact k-centre optimum or the sampler ratio study.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("task").required(true).args(["optimal_kcentre", "ratio_study"])))]
struct OracleArgs {
    #[arg(long)]
    optimal_kcentre: bool,
    #[arg(long)]
    ratio_study: bool,
    #[command(flatten)]
    language: LanguageArgs,
    #[arg(short = 'k', long)]
    k: Option<usize>,
    /// Lengths of the study grid.
    #[arg(long, value_delimiter = ',', default_values_t = [6, 8])]
    lengths: Vec<usize>,
    /// Values of k in the study grid.
    #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4])]
    ks: Vec<usize>,
}

#[derive(Args, Debug, Clone)]
struct LanguageArgs {
    /// Alphabet size.
    #[arg(short = 'q', long = "alphabet")]
    q: Option<usize>,
    /// Word length; the largest length under --max-length.
    #[arg(short = 'l', long = "length")]
    length: Option<usize>,
    /// All lengths from 1 to the given length.
    #[arg(long)]
    max_length: bool,
    /// Forbidden subwords, comma-separated (semicolon-separated for integers).
    #[arg(long)]
    forbidden: Option<String>,
    /// Content vector, e.g. 5,5.
    #[arg(long)]
    content: Option<String>,
    /// letters or integers; defaults to letters when q ≤ 26.
    #[arg(long)]
    encoding: Option<Encoding>,
}

fn parse_sampler(s: &str) -> Result<Method, String> {
    match s.parse::<Method>().map_err(|e| e.to_string())? {
        m @ (Method::PrefixTree | Method::DeBruijn) => Ok(m),
        other => Err(format!("`{other}` is not a sampler; use prefix or debruijn")),
    }
}

/// Failures of the front end, each mapped to an exit status.
#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) => e.exit_code() as u8,
            Failure::Io(_) => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(msg) => f.write_str(msg),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn invalid(msg: String) -> Failure {
    Failure::Core(Error::InvalidInput(msg))
}

struct Language {
    spec: LanguageSpec,
    encoding: Encoding,
}

impl LanguageArgs {
    fn build(&self) -> CliResult<Language> {
        if let Some(text) = &self.content {
            let content = ParikhVector::parse(text)?;
            let q = content.counts().len();
            if let Some(given) = self.q.filter(|&g| g != q) {
                return Err(invalid(format!("content `{text}` has {q} entries but q = {given}")));
            }
            if let Some(given) = self.length.filter(|&g| g != content.total()) {
                return Err(invalid(format!(
                    "content `{text}` sums to {} but length = {given}",
                    content.total()
                )));
            }
            if self.forbidden.is_some() || self.max_length {
                return Err(invalid(
                    "--content combines with neither --forbidden nor --max-length".into(),
                ));
            }
            let encoding = self.encoding.unwrap_or(content.alphabet().default_encoding());
            return Ok(Language {
                spec: LanguageSpec::fixed_content(content)?,
                encoding,
            });
        }
        let q = self.q.ok_or_else(|| invalid("missing alphabet size -q".into()))?;
        let length = self.length.ok_or_else(|| invalid("missing length -l".into()))?;
        let alphabet = Alphabet::new(q)?;
        let encoding = self.encoding.unwrap_or(alphabet.default_encoding());
        let forbidden = match &self.forbidden {
            Some(text) => ForbiddenSet::parse(text, alphabet, encoding)?,
            None => ForbiddenSet::empty(),
        };
        let spec = match (self.max_length, forbidden.is_empty()) {
            (false, true) => LanguageSpec::fixed_length(alphabet, length)?,
            (true, true) => LanguageSpec::max_length(alphabet, length)?,
            (false, false) => LanguageSpec::forbidden(alphabet, length, forbidden)?,
            (true, false) => LanguageSpec::max_length_forbidden(alphabet, length, forbidden)?,
        };
        Ok(Language { spec, encoding })
    }
}

impl Language {
    fn forbidden_line(&self) -> Option<String> {
        let f = self.spec.forbidden_set();
        let sep = match self.encoding {
            Encoding::Letters => ",",
            Encoding::Integers => ";",
        };
        (!f.is_empty()).then(|| format!("forbidden: {}", f.encode(self.encoding).join(sep)))
    }

    fn fixed(&self, what: &str) -> CliResult<()> {
        if self.spec.is_max_length() {
            return Err(invalid(format!("{what} needs a single length; drop --max-length")));
        }
        Ok(())
    }
}

fn count(lang: &Language) -> CliResult<Vec<String>> {
    let spec = &lang.spec;
    let mut lines: Vec<String> = lang.forbidden_line().into_iter().collect();
    if let Some(content) = spec.content() {
        let n: Rank = count_fixed_content(content.counts())?;
        lines.push(format!("necklaces: {n}"));
        return Ok(lines);
    }
    let (mut n, mut l, mut c) = (Rank::from(0u32), Rank::from(0u32), Rank::from(0u32));
    for len in spec.lengths() {
        let f = spec.forbidden_set();
        n += count_necklaces::<Rank>(spec.alphabet(), len, f)?;
        l += count_lyndon::<Rank>(spec.alphabet(), len, f)?;
        c += count_cyclic_avoiding::<Rank>(spec.alphabet(), len, f)?;
    }
    lines.push(format!("necklaces: {n}"));
    lines.push(format!("lyndon: {l}"));
    lines.push(format!("cyclic-words: {c}"));
    Ok(lines)
}

fn rank(lang: &Language, text: &str, keep_rotation: bool) -> CliResult<Vec<String>> {
    lang.fixed("rank")?;
    let spec = &lang.spec;
    let word = Word::parse(text, spec.alphabet(), lang.encoding)?;
    if word.len() != spec.length() {
        return Err(invalid(format!(
            "word `{text}` has length {} but the language has length {}",
            word.len(),
            spec.length()
        )));
    }
    let canonical = canonical_rotation(&word).into_word();
    let r: Rank = match spec.content() {
        Some(_) => rank_by_prefix_counts(language_counter(spec)?.as_ref(), &canonical)?,
        None => rank_necklace(spec.alphabet(), &canonical, spec.forbidden_set())?,
    };
    let shown = if keep_rotation { &word } else { &canonical };
    let mut lines: Vec<String> = lang.forbidden_line().into_iter().collect();
    lines.push(format!("word: {}", shown.encode(lang.encoding)));
    lines.push(format!("rank: {r}"));
    lines.push(format!("member: {}", spec.contains(&word)));
    Ok(lines)
}

fn unrank(lang: &Language, index: &Rank) -> CliResult<Vec<String>> {
    lang.fixed("unrank")?;
    let counter = language_counter(&lang.spec)?;
    let total = counter.total()?;
    if *index >= total {
        return Err(invalid(format!(
            "index {index} out of range: the language has {total} necklaces"
        )));
    }
    let necklace = nth_with_prefix(counter.as_ref(), &[], index)?;
    Ok(vec![necklace.canonical().encode(lang.encoding)])
}

fn with_decimals(mut value: Value, fields: &[&str]) -> Value {
    if let Value::Object(map) = &mut value {
        for field in fields {
            let decimal = match map.get(*field) {
                Some(Value::Object(r)) => match (
                    r.get("num").and_then(Value::as_f64),
                    r.get("den").and_then(Value::as_f64),
                ) {
                    (Some(n), Some(d)) => Value::from(n / d),
                    _ => continue,
                },
                Some(Value::String(s)) if s == "inf" => Value::from("inf"),
                _ => continue,
            };
            map.insert(format!("{field}_decimal"), decimal);
        }
    }
    value
}

fn to_json<T: serde::Serialize>(value: &T) -> CliResult<Value> {
    serde_json::to_value(value).map_err(|e| Failure::Core(Error::Internal(e.to_string())))
}

fn pretty(value: &Value) -> CliResult<String> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Core(Error::Internal(e.to_string())))
}

fn run(cli: Cli) -> CliResult<String> {
    let limits = SearchLimits {
        enum_cap: cli.enum_cap,
        subset_cap: cli.subset_cap,
        threads: cli.threads.max(1),
    };
    let lines = match &cli.command {
        Command::Count(args) => count(&args.build()?)?,
        Command::Rank { language, word } => rank(&language.build()?, word, cli.keep_rotation)?,
        Command::Unrank { language, index } => unrank(&language.build()?, index)?,
        Command::Sample {
            language,
            method,
            k,
            output,
        } => {
            let lang = language.build()?;
            let set = match method {
                Method::DeBruijn => debruijn_sample(&lang.spec, *k)?,
                _ => prefix_tree_sample(&lang.spec, *k)?,
            };
            let text = pretty(&to_json(&set)?)?;
            if let Some(path) = output {
                fs::write(path, format!("{text}\n"))
                    .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
                return Ok(String::new());
            }
            vec![text]
        }
        Command::Bounds { q, length, k } => vec![pretty(&to_json(&theoretical_bounds::<f64>(*q, *length, *k)?)?)?],
        Command::Evaluate {
            language,
            centres,
            per_word,
            with_optimum,
        } => {
            let lang = language.build()?;
            let text = fs::read_to_string(centres)
                .map_err(|e| Failure::Io(format!("cannot read {}: {e}", centres.display())))?;
            let set: CentreSet =
                serde_json::from_str(&text).map_err(|e| invalid(format!("centres file {}: {e}", centres.display())))?;
            let options = EvalOptions {
                threads: limits.threads,
                per_word: *per_word,
                enum_cap: limits.enum_cap,
            };
            let mut report = evaluate_with(&set, &lang.spec, options)?;
            if *with_optimum {
                report = report.with_optimum(optimal_kcentre_with(&lang.spec, set.k(), limits)?.1);
            }
            let mut value = to_json(&report)?;
            if cli.decimal {
                value = with_decimals(value, &["max_min_distance", "optimum", "ratio"]);
            }
            vec![pretty(&value)?]
        }
        Command::Oracle(args) => oracle(args, limits, cli.decimal)?,
    };
    Ok(lines.join("\n"))
}

fn oracle(args: &OracleArgs, limits: SearchLimits, decimal: bool) -> CliResult<Vec<String>> {
    if args.optimal_kcentre {
        let lang = args.language.build()?;
        let k = args.k.ok_or_else(|| invalid("--optimal-kcentre needs -k".into()))?;
        let (set, optimum) = optimal_kcentre_with(&lang.spec, k, limits)?;
        let mut value = serde_json::json!({ "centres": to_json(&set)?, "optimum": to_json(&optimum)? });
        if decimal {
            value = with_decimals(value, &["optimum"]);
        }
        return Ok(vec![pretty(&value)?]);
    }
    let q = args.language.q.unwrap_or(2);
    let alphabet = Alphabet::new(q)?;
    let languages = args
        .lengths
        .iter()
        .map(|&l| LanguageSpec::fixed_length(alphabet, l))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = ratio_study(&languages, &args.ks, &[Method::PrefixTree, Method::DeBruijn], limits);
    Ok(vec![ratio_table_csv(&rows)?.trim_end().to_string()])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                let mut stdout = std::io::stdout().lock();
                // A closed pipe is not worth a diagnostic.
                let _ = writeln!(stdout, "{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
