//! Prefix counts for necklaces with a fixed content vector, by pruned enumeration.

use num_traits::Zero;

use crate::error::Result;
use crate::language::ParikhVector;
use crate::rank::PrefixCounter;
use crate::words::{is_necklace, prenecklace_period, Alphabet, Word};
use crate::Rank;

#[derive(Debug, Clone)]
pub struct FixedContentCounter {
    content: ParikhVector,
}

impl FixedContentCounter {
    pub fn new(content: ParikhVector) -> Self {
        FixedContentCounter { content }
    }

    fn extend(&self, word: &mut Vec<u8>, remaining: &mut [usize]) -> u64 {
        if word.len() == self.content.total() {
            return u64::from(is_necklace(word));
        }
        let mut total = 0;
        for c in 0..remaining.len() {
            if remaining[c] == 0 {
                continue;
            }
            word.push(c as u8);
            if prenecklace_period(word).is_some() {
                remaining[c] -= 1;
                total += self.extend(word, remaining);
                remaining[c] += 1;
            }
            word.pop();
        }
        total
    }
}

impl PrefixCounter for FixedContentCounter {
    fn alphabet(&self) -> Alphabet {
        self.content.alphabet()
    }

    fn length(&self) -> usize {
        self.content.total()
    }

    fn count_with_prefix(&self, prefix: &[u8]) -> Result<Rank> {
        let mut remaining = self.content.counts().to_vec();
        for &c in prefix {
            match remaining.get_mut(c as usize) {
                Some(slot) if *slot > 0 => *slot -= 1,
                _ => return Ok(Rank::zero()),
            }
        }
        if prenecklace_period(prefix).is_none() {
            return Ok(Rank::zero());
        }
        let mut word = prefix.to_vec();
        Ok(Rank::from(self.extend(&mut word, &mut remaining)))
    }
}

/// Necklaces with content `content` whose canonical form starts with `prefix`.
pub fn count_fixed_content_with_prefix(prefix: &Word, content: &ParikhVector) -> Result<Rank> {
    FixedContentCounter::new(content.clone()).count_with_prefix(prefix.letters())
}
