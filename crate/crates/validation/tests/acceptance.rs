//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use necklace_centres::counting::{count_lyndon, count_necklaces};
use necklace_centres::oracle::{evaluate, ratio_study, SearchLimits};
use necklace_centres::overlap::{intersection_count, RepresentativeLength};
use necklace_centres::rank::prefix_set::theta_star;
use necklace_centres::rank::{rank_necklace, unrank_necklace, PrefixSet, RankContext, SuffixSet};
use necklace_centres::samplers::{debruijn_sample, debruijn_sequence, prefix_tree_sample};
use necklace_centres::{
    overlap_distance, Alphabet, Distance, Encoding, ForbiddenSet, LanguageSpec, Method, ParikhVector, Rank, Word,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed <= limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn bin() -> Alphabet {
    Alphabet::new(2).unwrap()
}

fn word(s: &str) -> Word {
    Word::parse(s, bin(), Encoding::Letters).unwrap()
}

fn fset(words: &[&str]) -> ForbiddenSet {
    ForbiddenSet::new(words.iter().map(|w| word(w)))
}

fn settings() -> Vec<(&'static str, ForbiddenSet)> {
    vec![
        ("{}", ForbiddenSet::empty()),
        ("{bb}", fset(&["bb"])),
        ("{aba}", fset(&["aba"])),
        ("{bb,aab}", fset(&["bb", "aab"])),
    ]
}

fn all_words(q: usize, n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..q.pow(n as u32)).map(move |mut code| {
        let mut v = vec![0u8; n];
        for slot in v.iter_mut().rev() {
            *slot = (code % q) as u8;
            code /= q;
        }
        v
    })
}

fn rotations(x: &[u8]) -> impl Iterator<Item = Vec<u8>> + '_ {
    (0..x.len()).map(move |t| [&x[t..], &x[..t]].concat())
}

fn is_canonical(x: &[u8]) -> bool {
    rotations(x).all(|r| x <= r.as_slice())
}

fn is_aperiodic(x: &[u8]) -> bool {
    rotations(x).skip(1).all(|r| r.as_slice() != x)
}

/// Cyclic avoidance, ignoring forbidden words longer than `x`.
fn avoids_cyclically(x: &[u8], f: &ForbiddenSet) -> bool {
    let doubled = [x, x].concat();
    f.words()
        .iter()
        .map(|w| w.letters())
        .filter(|w| w.len() <= x.len())
        .all(|w| (0..x.len()).all(|i| &doubled[i..i + w.len()] != w))
}

fn brute_necklaces(n: usize, f: &ForbiddenSet) -> Vec<Vec<u8>> {
    all_words(2, n)
        .filter(|x| is_canonical(x) && avoids_cyclically(x, f))
        .collect()
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn phi(n: u64) -> u64 {
    (1..=n).filter(|&i| num_gcd(i, n) == 1).count() as u64
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn mu(n: u64) -> i64 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (a, b) = (word("ab"), word("abb"));
    let d = overlap_distance(&a, &b);
    let (shared, len) = intersection_count(&a, &b, RepresentativeLength::Lcm);
    let total = len * len;
    let elapsed = start.elapsed();
    check(d == Distance::finite(36, 11), || format!("distance {d}"))?;
    check((shared, total) == (11, 36), || {
        format!("intersection {shared} of {total}")
    })?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("D(ab, abb) = {d}, intersection 11 of 36 ({elapsed:?})"))
}

fn criterion_2() -> Outcome {
    let names = ["aaaa", "aaab", "aabb", "abab", "abbb", "bbbb"];
    let f = |n, d| Distance::finite(n, d);
    let inf = Distance::Infinite;
    let reference: [[Distance; 6]; 6] = [
        [f(0, 1), f(16, 6), f(16, 3), f(8, 1), f(16, 1), inf.clone()],
        [f(16, 6), f(0, 1), f(16, 7), f(16, 6), f(4, 1), f(16, 1)],
        [f(16, 3), f(16, 7), f(0, 1), f(16, 6), f(2, 1), f(16, 3)],
        [f(8, 1), f(16, 6), f(16, 6), f(0, 1), f(16, 10), f(8, 1)],
        [f(16, 1), f(4, 1), f(2, 1), f(16, 6), f(0, 1), f(16, 6)],
        [inf, f(16, 1), f(16, 3), f(8, 1), f(2, 1), f(0, 1)],
    ];
    let start = Instant::now();
    let words: Vec<Word> = names.iter().map(|s| word(s)).collect();
    let computed: Vec<Vec<Distance>> = words
        .iter()
        .map(|a| words.iter().map(|b| overlap_distance(a, b)).collect())
        .collect();
    let elapsed = start.elapsed();
    let mut mismatches = Vec::new();
    for i in 0..6 {
        for j in 0..6 {
            if computed[i][j] != reference[i][j] {
                mismatches.push(format!(
                    "({},{}) computed {} reference {}",
                    names[i], names[j], computed[i][j], reference[i][j]
                ));
            }
        }
    }
    within(elapsed, Duration::from_millis(10))?;
    check(mismatches.is_empty(), || {
        format!(
            "{} of 36 entries differ from the reference table: {}",
            mismatches.len(),
            mismatches.join("; ")
        )
    })?;
    Ok(format!("all 36 entries match ({elapsed:?})"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for q in [2u64, 3] {
        let alphabet = Alphabet::new(q as usize).unwrap();
        for n in 1..=12u64 {
            let necklace_sum: u64 = divisors(n).iter().map(|&d| phi(d) * q.pow((n / d) as u32)).sum();
            let lyndon_sum: i64 = divisors(n).iter().map(|&d| mu(d) * q.pow((n / d) as u32) as i64).sum();
            let got: u64 = count_necklaces(alphabet, n as usize, &ForbiddenSet::empty()).map_err(|e| e.to_string())?;
            check(got == necklace_sum / n, || {
                format!("N_{q}({n}) = {got}, expected {}", necklace_sum / n)
            })?;
            let got: u64 = count_lyndon(alphabet, n as usize, &ForbiddenSet::empty()).map_err(|e| e.to_string())?;
            check(got as i64 == lyndon_sum / n as i64, || format!("L_{q}({n}) = {got}"))?;
        }
    }
    for (name, f) in settings().into_iter().skip(1) {
        for n in 1..=10 {
            let brute = brute_necklaces(n, &f);
            let lyndon = brute.iter().filter(|x| is_aperiodic(x)).count() as u64;
            let got: u64 = count_necklaces(bin(), n, &f).map_err(|e| e.to_string())?;
            check(got == brute.len() as u64, || {
                format!("N({n}, {name}) = {got}, brute force {}", brute.len())
            })?;
            let got: u64 = count_lyndon(bin(), n, &f).map_err(|e| e.to_string())?;
            check(got == lyndon, || {
                format!("L({n}, {name}) = {got}, brute force {lyndon}")
            })?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "closed forms for q in {{2,3}}, n <= 12 and brute force for 3 forbidden sets, n <= 10 ({elapsed:?})"
    ))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    for (name, f) in settings() {
        for n in [4usize, 6, 8] {
            let members = brute_necklaces(n, &f);
            for w in all_words(2, n) {
                let expected = members.iter().filter(|m| m.as_slice() < w.as_slice()).count();
                let boundary = Word::new(w.clone(), bin()).unwrap();
                let got: u64 = rank_necklace(bin(), &boundary, &f).map_err(|e| e.to_string())?;
                check(got == expected as u64, || {
                    format!("rank({boundary}, {name}) = {got}, brute force {expected}")
                })?;
                checked += 1;
            }
            for (i, m) in members.iter().enumerate() {
                let back = unrank_necklace(bin(), &Rank::from(i), n, &f).map_err(|e| e.to_string())?;
                check(back.canonical().letters() == m.as_slice(), || {
                    format!("unrank({i}, {n}, {name}) = {back}")
                })?;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!(
        "{checked} ranks and every unrank round trip agree ({elapsed:?})"
    ))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let lang = LanguageSpec::fixed_length(bin(), 10).unwrap();
    let mut summary = Vec::new();
    for k in [2usize, 4, 8, 16] {
        let set = prefix_tree_sample(&lang, k).map_err(|e| e.to_string())?;
        let report = evaluate(&set, &lang).map_err(|e| e.to_string())?;
        let log = (k as f64).log2();
        let need = log.floor() as usize - 1;
        let bound = 2.0 * 100.0 / (log * log);
        check(report.lambda_observed >= need, || {
            format!("k={k}: shared length {} < {need}", report.lambda_observed)
        })?;
        check(report.max_min_distance.to_f64() <= bound, || {
            format!("k={k}: max-min {} above {bound}", report.max_min_distance)
        })?;
        summary.push(format!(
            "k={k}: lambda {} dist {}",
            report.lambda_observed, report.max_min_distance
        ));
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("{} ({elapsed:?})", summary.join(", ")))
}

fn criterion_6() -> Outcome {
    let order_six = "0000001000011000101000111001001011001101001111010101110110111111";
    let seq = debruijn_sequence(bin(), 6).map_err(|e| e.to_string())?;
    let text: String = seq.letters().iter().map(|&c| char::from(b'0' + c)).collect();
    check(text == order_six, || format!("order-6 sequence {text}"))?;

    let lang = LanguageSpec::fixed_length(bin(), 21).unwrap();
    let set = debruijn_sample(&lang, 4).map_err(|e| e.to_string())?;
    check(set.lambda_achieved() == 6, || {
        format!("lambda {}", set.lambda_achieved())
    })?;
    check(set.len() == 4, || format!("{} centres", set.len()))?;
    let mut grams = BTreeSet::new();
    for c in set.centres() {
        let doubled = [c.letters(), c.letters()].concat();
        for i in 0..c.len() {
            grams.insert(doubled[i..i + 6].to_vec());
        }
    }
    check(grams.len() == 64, || format!("{} of 64 6-grams covered", grams.len()))?;

    let big = LanguageSpec::fixed_length(bin(), 64).unwrap();
    let start = Instant::now();
    let set = debruijn_sample(&big, 1024).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(set.len() == 1024, || format!("{} centres for k = 1024", set.len()))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "order-6 sequence matches, lambda 6 with 64 grams covered, l=64 k=1024 in {elapsed:?}"
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let languages: Vec<LanguageSpec> = [6, 8]
        .iter()
        .map(|&n| LanguageSpec::fixed_length(bin(), n).unwrap())
        .collect();
    let rows = ratio_study(
        &languages,
        &[2, 3, 4],
        &[Method::DeBruijn, Method::PrefixTree],
        SearchLimits::default(),
    );
    let mut worst = 0.0f64;
    let mut cells = Vec::new();
    for r in rows.iter().filter(|r| r.method == Method::DeBruijn) {
        let Some(ratio) = r.ratio else {
            check(!r.note.is_empty(), || {
                format!("l={} k={}: no ratio and no note", r.length, r.k)
            })?;
            continue;
        };
        if ratio > 8.0 {
            check(r.bound.is_none(), || {
                format!("l={} k={}: ratio {ratio:.3} above 8", r.length, r.k)
            })?;
        }
        check(r.bound_ratio.is_none_or(|b| b <= 8.0 + 1e-9), || {
            format!(
                "l={} k={}: closed-form ratio {:?} above 8",
                r.length, r.k, r.bound_ratio
            )
        })?;
        worst = worst.max(ratio);
        cells.push(format!("l={} k={}: {ratio:.3}", r.length, r.k));
    }
    check(cells.len() == 6, || format!("only {} cells computed", cells.len()))?;
    let elapsed = start.elapsed();
    Ok(format!(
        "worst de Bruijn ratio {worst:.3} [{}] ({elapsed:?})",
        cells.join(", ")
    ))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let content = ParikhVector::new(vec![5, 5]).unwrap();
    let lang = LanguageSpec::fixed_content(content.clone()).unwrap();
    let set = prefix_tree_sample(&lang, 4).map_err(|e| e.to_string())?;
    for c in set.centres() {
        check(content.matches(c.letters()), || {
            format!("centre {c} breaks the content vector")
        })?;
    }
    let report = evaluate(&set, &lang).map_err(|e| e.to_string())?;
    // log_2(k(q - 1)) with k = 4, q = 2.
    let log = 2.0f64;
    check(report.lambda_observed as f64 >= log - 1.0, || {
        format!("content shared length {}", report.lambda_observed)
    })?;
    let bound = 2.0 * 100.0 / (log * log);
    check(report.max_min_distance.to_f64() <= bound, || {
        format!("content max-min {} above {bound}", report.max_min_distance)
    })?;
    let content_line = format!(
        "content (5,5): lambda {} dist {}",
        report.lambda_observed, report.max_min_distance
    );

    let fixed = LanguageSpec::fixed_length(bin(), 6).unwrap();
    let upto = LanguageSpec::max_length(bin(), 6).unwrap();
    let set = prefix_tree_sample(&fixed, 4).map_err(|e| e.to_string())?;
    let lambda = evaluate(&set, &fixed).map_err(|e| e.to_string())?.lambda_observed;
    check(lambda >= 1, || {
        "centres share nothing with some length-6 word".to_string()
    })?;
    let report = evaluate(&set, &upto).map_err(|e| e.to_string())?;
    let bound = 5.0 * 2.0 * 36.0 / (lambda * (lambda + 1)) as f64;
    check(report.max_min_distance.to_f64() <= bound, || {
        format!("max-length max-min {} above {bound}", report.max_min_distance)
    })?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!(
        "{content_line}; length <= 6: dist {} within {bound:.1} ({elapsed:?})",
        report.max_min_distance
    ))
}

fn brute_b_prime(w: &[u8], f: &ForbiddenSet, l: usize, t: usize, j: usize, p: &PrefixSet, s: &SuffixSet) -> u64 {
    let ps: Vec<Vec<u8>> = p.iter().cloned().chain([vec![]]).collect();
    let ss: Vec<Vec<u8>> = s.iter().cloned().chain([vec![]]).collect();
    let linear_avoid = |text: &[u8]| {
        f.words()
            .iter()
            .all(|fw| text.windows(fw.len()).all(|win| win != fw.letters()))
    };
    all_words(2, t)
        .filter(|v| v[..j] == w[..j])
        .filter(|v| {
            ps.iter()
                .all(|pp| ss.iter().all(|sf| linear_avoid(&[pp.as_slice(), v, sf].concat())))
        })
        .filter(|v| (t - l.min(t)..t).all(|i| v[i..] > *w))
        .count() as u64
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_b001);
    let instances = 600;
    for _ in 0..instances {
        let n = rng.gen_range(2..=7);
        let w: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let f = ForbiddenSet::new((0..rng.gen_range(1..=2)).map(|_| {
            let len = rng.gen_range(2..=3);
            Word::new((0..len).map(|_| rng.gen_range(0..2)).collect(), bin()).unwrap()
        }));
        let t = rng.gen_range(0..=8);
        let j = rng.gen_range(0..=t.min(n));
        let l = rng.gen_range(0..=t);
        let context: Vec<u8> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..2)).collect();
        let p = theta_star(&f, &context).unwrap_or_default();
        let mut s = SuffixSet::new();
        if rng.gen_bool(0.5) {
            s.insert((0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..2)).collect());
        }
        let mut ctx = RankContext::<u64>::new(bin(), w.clone(), f.clone()).map_err(|e| e.to_string())?;
        let got = ctx.b_prime(l, t, j, &p, &s).map_err(|e| e.to_string())?;
        let expected = brute_b_prime(&w, &f, l, t, j, &p, &s);
        check(got == expected, || {
            format!("w={w:?} F={f:?} l={l} t={t} j={j} P={p:?} S={s:?}: {got} vs {expected}")
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "{instances} random instances agree with enumeration ({elapsed:?})"
    ))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        match run() {
            Ok(msg) => println!("[PASS] criterion {n}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] criterion {n}: {msg}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
