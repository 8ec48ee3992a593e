//! Counting words below a boundary while avoiding a forbidden set.
//!
//! For a necklace `u` of length `n`, every word `x` whose least rotation is
//! below `u` has a unique smallest left shift `t` with `x·t < u`. Writing
//! `y = x·t = u[..j] c ρ` with `c < u[j]`, the shifts smaller than `t` are
//! the rotations of `y` starting in its last `t` letters; such a rotation is
//! at least `u` exactly when the corresponding suffix of `y` is strictly
//! greater than `u` (this uses that `u` is a necklace). The counts below
//! enumerate `y` letter by letter with three pieces of state: the live
//! prefixes of forbidden words, a trailing context that closes the cycle,
//! and the set of tail suffixes still tied with `u`.

use std::collections::HashMap;

use crate::counting::{divisors, moebius_mu};
use crate::error::{Error, Result};
use crate::language::ForbiddenSet;
use crate::rank::prefix_set::{completes, theta, theta_star, PrefixSet, SuffixSet};
use crate::scalar::{signed_sum, Count};
use crate::words::{is_necklace, smallest_necklace_at_least, smallest_period, Alphabet};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct State {
    /// Letters still to emit.
    rem: usize,
    /// Next forced position of the boundary and how many letters remain forced.
    forced_at: usize,
    forced_left: usize,
    /// The last `tail` emitted letters start suffixes that must exceed the boundary.
    tail: usize,
    /// Matched lengths of tail suffixes currently equal to a boundary prefix.
    tie: Vec<usize>,
    prefixes: PrefixSet,
    /// Index into the interned trailing contexts.
    suffix: usize,
}

/// Outcome of comparing tied suffixes against the boundary after one letter.
fn tie_step(boundary: &[u8], tie: &[usize], letter: u8, start_new: bool) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(tie.len() + 1);
    let starts = tie.iter().copied().chain(start_new.then_some(0));
    for a in starts {
        if a == boundary.len() {
            continue;
        }
        match letter.cmp(&boundary[a]) {
            std::cmp::Ordering::Less => return None,
            std::cmp::Ordering::Greater => {}
            std::cmp::Ordering::Equal => out.push(a + 1),
        }
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

/// Memoised counts relative to one boundary word.
#[derive(Debug)]
pub struct RankContext<T> {
    alphabet: Alphabet,
    boundary: Vec<u8>,
    forbidden: ForbiddenSet,
    memo_enabled: bool,
    memo: HashMap<State, T>,
    suffixes: Vec<SuffixSet>,
    size_t: HashMap<usize, T>,
}

impl<T: Count> RankContext<T> {
    /// Avoidance is periodic: a word avoids `forbidden` when its infinite
    /// power does. Callers drop members longer than the word length first
    /// when the language uses the bounded notion.
    pub fn new(alphabet: Alphabet, boundary: Vec<u8>, forbidden: ForbiddenSet) -> Result<Self> {
        if boundary.is_empty() {
            return Err(Error::invalid("boundary word must be non-empty"));
        }
        if boundary.iter().any(|&c| !alphabet.contains(c)) {
            return Err(Error::invalid("boundary word uses letters outside the alphabet"));
        }
        Ok(RankContext {
            alphabet,
            boundary,
            forbidden,
            memo_enabled: true,
            memo: HashMap::new(),
            suffixes: Vec::new(),
            size_t: HashMap::new(),
        })
    }

    pub fn with_memo(mut self, enabled: bool) -> Self {
        self.memo_enabled = enabled;
        self
    }

    pub fn boundary(&self) -> &[u8] {
        &self.boundary
    }

    /// Distinct memoised recursion states.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Distinct trailing contexts seen so far.
    pub fn suffix_contexts(&self) -> usize {
        self.suffixes.len()
    }

    fn intern(&mut self, s: SuffixSet) -> usize {
        match self.suffixes.iter().position(|x| *x == s) {
            Some(i) => i,
            None => {
                self.suffixes.push(s);
                self.suffixes.len() - 1
            }
        }
    }

    fn close(&self, state: &State) -> bool {
        state.tie.is_empty()
            && self.suffixes[state.suffix].iter().all(|s| {
                let mut p = state.prefixes.clone();
                for &c in s {
                    if completes(&self.forbidden, &p, c) {
                        return false;
                    }
                    p = theta(&self.forbidden, &p, c);
                }
                true
            })
    }

    fn count(&mut self, state: State) -> Result<T> {
        if state.rem == 0 {
            return Ok(if self.close(&state) { T::one() } else { T::zero() });
        }
        if self.memo_enabled {
            if let Some(v) = self.memo.get(&state) {
                return Ok(v.clone());
            }
        }
        let in_tail = state.rem <= state.tail;
        let letters: Vec<u8> = if state.forced_left > 0 {
            vec![self.boundary[state.forced_at]]
        } else {
            (0..self.alphabet.size() as u8).collect()
        };
        let mut total = T::zero();
        for c in letters {
            if completes(&self.forbidden, &state.prefixes, c) {
                continue;
            }
            let tie = if in_tail {
                match tie_step(&self.boundary, &state.tie, c, true) {
                    Some(t) => t,
                    None => continue,
                }
            } else {
                state.tie.clone()
            };
            let rem = state.rem - 1;
            let next = State {
                rem,
                forced_at: if state.forced_left > 1 { state.forced_at + 1 } else { 0 },
                forced_left: state.forced_left.saturating_sub(1),
                tail: state.tail.min(rem),
                tie,
                prefixes: theta(&self.forbidden, &state.prefixes, c),
                suffix: state.suffix,
            };
            total = total.try_add(&self.count(next)?)?;
        }
        if self.memo_enabled {
            self.memo.insert(state, total.clone());
        }
        Ok(total)
    }

    /// Words `v` of length `t` such that no forbidden word occurs in `p·v·s`
    /// for `p` in `prefixes ∪ {ε}` and `s` in `suffixes ∪ {ε}`, the first `j`
    /// letters of `v` are the boundary's, and every suffix of `v` starting in
    /// its last `l` letters is strictly greater than the boundary.
    ///
    /// `prefixes` must be closed: any suffix of a member that is a proper
    /// prefix of a forbidden word is itself a member (as produced by
    /// repeated `theta`).
    pub fn b_prime(&mut self, l: usize, t: usize, j: usize, prefixes: &PrefixSet, suffixes: &SuffixSet) -> Result<T> {
        if j > t {
            return Err(Error::invalid(format!("forced length {j} exceeds word length {t}")));
        }
        if j > self.boundary.len() {
            return Err(Error::invalid("forced length exceeds the boundary"));
        }
        let suffix = self.intern(suffixes.clone());
        self.count(State {
            rem: t,
            forced_at: 0,
            forced_left: j,
            tail: l.min(t),
            tie: Vec::new(),
            prefixes: prefixes.clone(),
            suffix,
        })
    }

    /// Words of the boundary's length whose smallest shift below the
    /// boundary is `t`, with `j` letters matching before the first smaller one.
    pub fn count_a(&mut self, t: usize, j: usize) -> Result<T> {
        let n = self.boundary.len();
        if !is_necklace(&self.boundary) {
            return Err(Error::invalid("the shift decomposition needs a necklace boundary"));
        }
        if t >= n || j >= n {
            return Ok(T::zero());
        }
        let need = self.forbidden.max_len().saturating_sub(1);
        let m = n - j - 1;
        let mut total = T::zero();
        for c in 0..self.boundary[j] {
            let mut known = self.boundary[..j].to_vec();
            known.push(c);
            let h = need.saturating_sub(known.len()).min(m);
            for ext in 0..self.alphabet.size().pow(h as u32) {
                let mut head = known.clone();
                let mut code = ext;
                let start = head.len();
                head.resize(start + h, 0);
                for slot in head[start..].iter_mut().rev() {
                    *slot = (code % self.alphabet.size()) as u8;
                    code /= self.alphabet.size();
                }
                let v = self.complete(&head, n, t, need)?;
                total = total.try_add(&v)?;
            }
        }
        Ok(total)
    }

    fn complete(&mut self, head: &[u8], n: usize, t: usize, need: usize) -> Result<T> {
        let tail_start = n - t;
        let tie_over = |boundary: &[u8], part: &[u8]| {
            part.iter()
                .try_fold(Vec::new(), |tie, &c| tie_step(boundary, &tie, c, true))
        };
        if head.len() == n {
            let ok = self.forbidden.avoided_periodically(head)
                && matches!(tie_over(&self.boundary, &head[tail_start..]), Some(t) if t.is_empty());
            return Ok(if ok { T::one() } else { T::zero() });
        }
        let Some(prefixes) = theta_star(&self.forbidden, head) else {
            return Ok(T::zero());
        };
        let rem = n - head.len();
        let (tie, tail) = if tail_start < head.len() {
            match tie_over(&self.boundary, &head[tail_start..]) {
                Some(tie) => (tie, rem),
                None => return Ok(T::zero()),
            }
        } else {
            (Vec::new(), t)
        };
        let mut context = SuffixSet::new();
        if need > 0 {
            context.insert(head[..need].to_vec());
        }
        let suffix = self.intern(context);
        self.count(State {
            rem,
            forced_at: 0,
            forced_left: 0,
            tail: tail.min(rem),
            tie,
            prefixes,
            suffix,
        })
    }

    /// Words of the boundary's length, avoiding the forbidden set, whose least
    /// rotation lies strictly below the boundary.
    fn below_same_length(&mut self) -> Result<T> {
        let n = self.boundary.len();
        let mut total = T::zero();
        for t in 0..n {
            for j in 0..n {
                total = total.try_add(&self.count_a(t, j)?)?;
            }
        }
        Ok(total)
    }

    /// Words `x` of length `l` (a divisor of the boundary length) avoiding the
    /// forbidden set with `⟨x^{n/l}⟩` strictly below the boundary.
    pub fn size_t(&mut self, l: usize) -> Result<T> {
        let n = self.boundary.len();
        if l == 0 || !n.is_multiple_of(l) {
            return Err(Error::invalid(format!("{l} does not divide {n}")));
        }
        if let Some(v) = self.size_t.get(&l) {
            return Ok(v.clone());
        }
        let v = if l == n && is_necklace(&self.boundary) {
            self.below_same_length()?
        } else {
            self.below_via_necklace(l)?
        };
        self.size_t.insert(l, v.clone());
        Ok(v)
    }

    fn below_via_necklace(&mut self, l: usize) -> Result<T> {
        let n = self.boundary.len();
        let u = self.boundary[..l].to_vec();
        let start = smallest_necklace_at_least(&u, self.alphabet.size() as u8);
        let mut sub = RankContext::<T>::new(self.alphabet, start, self.forbidden.clone())?.with_memo(self.memo_enabled);
        let mut v = sub.below_same_length()?;
        // A necklace equal to the boundary's first block lies below the
        // boundary iff its power does.
        if l < n && is_necklace(&u) && self.forbidden.avoided_periodically(&u) {
            let power: Vec<u8> = u.iter().copied().cycle().take(n).collect();
            if power < self.boundary {
                v = v.try_add(&T::from_usize_checked(smallest_period(&u))?)?;
            }
        }
        Ok(v)
    }

    /// Möbius inversion of [`Self::size_t`]: words of exact period `l`.
    pub fn size_t_prime(&mut self, l: usize) -> Result<T> {
        let mut terms = Vec::new();
        for d in divisors(l)? {
            let mu = moebius_mu(l / d)?;
            if mu != 0 {
                terms.push((mu, self.size_t(d)?));
            }
        }
        signed_sum(terms)
    }
}
