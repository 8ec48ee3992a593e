//! Closed-form and automaton-based counts of words, necklaces and Lyndon words.
//!
//! Cyclic counts come from the trace of a transfer matrix on windows of the
//! last `M - 1` letters (`M` the longest forbidden word). A closed walk of
//! length `m` in that graph is exactly a word `x` of length `m` such that
//! `x^∞` avoids every forbidden word, including when `m < M - 1`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::language::{ForbiddenSet, LanguageSpec};
use crate::scalar::{signed_sum, Count};
use crate::words::Alphabet;

/// Windows above this many states are refused rather than built.
pub const MAX_WINDOW_STATES: usize = 1 << 14;

fn check_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("argument must be at least 1"));
    }
    Ok(())
}

pub fn divisors(n: usize) -> Result<Vec<usize>> {
    check_positive(n)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

fn prime_factors(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: usize) -> Result<usize> {
    check_positive(n)?;
    Ok(prime_factors(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

pub fn moebius_mu(n: usize) -> Result<i8> {
    check_positive(n)?;
    let factors = prime_factors(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if factors.len().is_multiple_of(2) { 1 } else { -1 })
}

/// Window graph over the letters, restricted to windows free of `forbidden`.
struct WindowGraph {
    /// `edges[s]` lists successor states.
    edges: Vec<Vec<usize>>,
}

impl WindowGraph {
    fn build(alphabet: Alphabet, forbidden: &ForbiddenSet) -> Result<Self> {
        let q = alphabet.size();
        let width = forbidden.max_len().saturating_sub(1);
        let states = (0..width).try_fold(1usize, |acc, _| acc.checked_mul(q));
        let states = match states {
            Some(s) if s <= MAX_WINDOW_STATES => s,
            _ => {
                return Err(Error::ResourceCap {
                    what: "window automaton",
                    estimate: format!("{q}^{width} states"),
                    cap: MAX_WINDOW_STATES.to_string(),
                })
            }
        };
        let decode = |mut code: usize, len: usize| {
            let mut v = vec![0u8; len];
            for slot in v.iter_mut().rev() {
                *slot = (code % q) as u8;
                code /= q;
            }
            v
        };
        let mut edges = vec![Vec::new(); states];
        for (s, out) in edges.iter_mut().enumerate() {
            let mut window = decode(s, width);
            if !forbidden.avoided_linearly(&window) {
                continue;
            }
            for c in 0..q {
                window.push(c as u8);
                if forbidden.avoided_linearly(&window) {
                    out.push((s * q + c) % states);
                }
                window.pop();
            }
        }
        Ok(WindowGraph { edges })
    }

    /// Trace of the `m`-th power of the adjacency matrix.
    fn closed_walks<T: Count>(&self, m: usize) -> Result<T> {
        let n = self.edges.len();
        let mut total = T::zero();
        for start in 0..n {
            if self.edges[start].is_empty() {
                continue;
            }
            let mut cur: HashMap<usize, T> = HashMap::from([(start, T::one())]);
            for _ in 0..m {
                let mut next: HashMap<usize, T> = HashMap::new();
                for (s, v) in &cur {
                    for &t in &self.edges[*s] {
                        let slot = next.entry(t).or_insert_with(T::zero);
                        *slot = slot.try_add(v)?;
                    }
                }
                cur = next;
            }
            if let Some(v) = cur.get(&start) {
                total = total.try_add(v)?;
            }
        }
        Ok(total)
    }
}

/// Words `x` of length `m` whose infinite power avoids `forbidden` (all members count).
pub(crate) fn count_periodic_avoiding<T: Count>(alphabet: Alphabet, m: usize, forbidden: &ForbiddenSet) -> Result<T> {
    check_positive(m)?;
    if forbidden.is_empty() {
        return T::from_usize_checked(alphabet.size())?.try_pow(m);
    }
    WindowGraph::build(alphabet, forbidden)?.closed_walks(m)
}

/// Words of length `len` none of whose rotations contains a forbidden word.
pub fn count_cyclic_avoiding<T: Count>(alphabet: Alphabet, len: usize, forbidden: &ForbiddenSet) -> Result<T> {
    count_periodic_avoiding(alphabet, len, &forbidden.restricted_to(len))
}

/// Necklaces of length `m` whose infinite power avoids `forbidden`.
fn necklaces_periodic<T: Count>(alphabet: Alphabet, m: usize, forbidden: &ForbiddenSet) -> Result<T> {
    let graph = if forbidden.is_empty() {
        None
    } else {
        Some(WindowGraph::build(alphabet, forbidden)?)
    };
    let q = T::from_usize_checked(alphabet.size())?;
    let mut sum = T::zero();
    for d in divisors(m)? {
        let c: T = match &graph {
            None => q.try_pow(m / d)?,
            Some(g) => g.closed_walks(m / d)?,
        };
        sum = sum.try_add(&c.try_mul(&T::from_usize_checked(euler_phi(d)?)?)?)?;
    }
    sum.exact_div(m)
}

/// Necklaces of length `len` in the language of words avoiding `forbidden`
/// (members longer than `len` are ignored).
pub fn count_necklaces<T: Count>(alphabet: Alphabet, len: usize, forbidden: &ForbiddenSet) -> Result<T> {
    check_positive(len)?;
    necklaces_periodic(alphabet, len, &forbidden.restricted_to(len))
}

/// Aperiodic necklaces of length `len` avoiding `forbidden`.
pub fn count_lyndon<T: Count>(alphabet: Alphabet, len: usize, forbidden: &ForbiddenSet) -> Result<T> {
    check_positive(len)?;
    let f = forbidden.restricted_to(len);
    let mut terms = Vec::new();
    for d in divisors(len)? {
        let mu = moebius_mu(d)?;
        if mu != 0 {
            terms.push((mu, necklaces_periodic::<T>(alphabet, len / d, &f)?));
        }
    }
    signed_sum(terms)
}

/// Multinomial count of necklaces with a fixed content vector.
pub fn count_fixed_content<T: Count>(content: &[usize]) -> Result<T> {
    let n: usize = content.iter().sum();
    check_positive(n)?;
    let g = content.iter().fold(0usize, |g, &c| num_integer::gcd(g, c));
    let mut sum = T::zero();
    for d in divisors(g)? {
        let parts: Vec<usize> = content.iter().map(|c| c / d).collect();
        let m = multinomial::<T>(&parts)?;
        sum = sum.try_add(&m.try_mul(&T::from_usize_checked(euler_phi(d)?)?)?)?;
    }
    sum.exact_div(n)
}

fn multinomial<T: Count>(parts: &[usize]) -> Result<T> {
    let mut acc = T::one();
    let mut seen = 0usize;
    for &p in parts {
        for i in 1..=p {
            seen += 1;
            // acc * seen / i stays integral at every step.
            acc = acc.try_mul(&T::from_usize_checked(seen)?)?.exact_div(i)?;
        }
    }
    Ok(acc)
}

/// Size of a language.
pub fn language_size<T: Count>(language: &LanguageSpec) -> Result<T> {
    let mut total = T::zero();
    for len in language.lengths() {
        let c = match language.content() {
            Some(content) => count_fixed_content(content.counts())?,
            None => count_necklaces(language.alphabet(), len, language.forbidden_set())?,
        };
        total = total.try_add(&c)?;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    Words,
    Necklaces,
    Lyndon,
}

/// Counts for every length `1..=max_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable<T> {
    pub kind: CountKind,
    pub rows: BTreeMap<usize, T>,
}

impl<T: Count> CountTable<T> {
    pub fn build(alphabet: Alphabet, max_len: usize, forbidden: &ForbiddenSet, kind: CountKind) -> Result<Self> {
        check_positive(max_len)?;
        let rows = (1..=max_len)
            .map(|len| {
                let v = match kind {
                    CountKind::Words => count_cyclic_avoiding(alphabet, len, forbidden),
                    CountKind::Necklaces => count_necklaces(alphabet, len, forbidden),
                    CountKind::Lyndon => count_lyndon(alphabet, len, forbidden),
                }?;
                Ok((len, v))
            })
            .collect::<Result<_>>()?;
        Ok(CountTable { kind, rows })
    }

    pub fn get(&self, len: usize) -> Option<&T> {
        self.rows.get(&len)
    }
}
