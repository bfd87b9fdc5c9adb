//! Bit-level working representation of a rule base.
//!
//! Elements are numbered by canonical position and element subsets are `u64`
//! masks (the element-count guard keeps bases at 64 elements or fewer, the
//! default is far lower). Literals get two bits per atom — even bit positive,
//! odd bit negative — spread over as many words as the signature needs, so
//! forward chaining and complementary-pair detection are a few word
//! operations per element. Everything here is an internal engine; public
//! modules wrap it with model-level types.

use crate::error::{Error, LimitKind};
use crate::model::{Literal, Rule, RuleBase};
use crate::Limits;

/// Mask of all even (positive-literal) bits.
const POSITIVE_BITS: u64 = 0x5555_5555_5555_5555;

#[derive(Debug)]
pub(crate) struct BaseIndex {
    elements: Vec<Rule>,
    atom_names: Vec<String>,
    /// Words per literal set: `ceil(2 * atoms / 64)`, at least 1.
    words: usize,
    /// Literal-set words of each element's body, `words` per element.
    body_words: Vec<u64>,
    /// Literal index (`2 * atom + polarity_bit`) of each body literal.
    body_literals: Vec<Vec<u32>>,
    /// Literal index of each element's head.
    head_literals: Vec<u32>,
    /// Element mask of the facts.
    facts_mask: u64,
}

impl BaseIndex {
    /// Indexes `base`, enforcing the element-count guard.
    pub(crate) fn new(base: &RuleBase, limits: &Limits) -> Result<Self, Error> {
        let n = base.len();
        let limit = limits.max_elements.min(64);
        if n > limit {
            return Err(Error::SizeLimitExceeded {
                kind: LimitKind::Elements,
                actual: n,
                limit,
            });
        }
        let atom_names: Vec<String> = base
            .signature()
            .into_iter()
            .map(|a| a.name().to_string())
            .collect();
        let words = (2 * atom_names.len()).div_ceil(64).max(1);
        let literal_index = |lit: &Literal| -> u32 {
            let idx = atom_names
                .binary_search_by(|name| name.as_str().cmp(lit.atom().name()))
                .expect("literal atom is in the signature");
            (2 * idx + usize::from(!lit.is_positive())) as u32
        };
        let mut body_words = vec![0u64; n * words];
        let mut body_literals = Vec::with_capacity(n);
        let mut head_literals = Vec::with_capacity(n);
        let mut facts_mask = 0u64;
        for (i, rule) in base.elements().iter().enumerate() {
            let lits: Vec<u32> = rule.body().iter().map(&literal_index).collect();
            for &lit in &lits {
                body_words[i * words + lit as usize / 64] |= 1 << (lit % 64);
            }
            body_literals.push(lits);
            head_literals.push(literal_index(rule.head()));
            if rule.is_fact() {
                facts_mask |= 1 << i;
            }
        }
        Ok(BaseIndex {
            elements: base.elements().to_vec(),
            atom_names,
            words,
            body_words,
            body_literals,
            head_literals,
            facts_mask,
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.elements.len()
    }

    pub(crate) fn elements(&self) -> &[Rule] {
        &self.elements
    }

    pub(crate) fn atom_count(&self) -> usize {
        self.atom_names.len()
    }

    /// Mask selecting every element.
    pub(crate) fn full_mask(&self) -> u64 {
        mask_of_len(self.len())
    }

    pub(crate) fn facts_mask(&self) -> u64 {
        self.facts_mask
    }

    pub(crate) fn rules_mask(&self) -> u64 {
        self.full_mask() & !self.facts_mask
    }

    /// Body literal indices of element `i`.
    pub(crate) fn body_literals(&self, i: usize) -> &[u32] {
        &self.body_literals[i]
    }

    /// Head literal index of element `i`.
    pub(crate) fn head_literal(&self, i: usize) -> u32 {
        self.head_literals[i]
    }

    fn body_word_slice(&self, i: usize) -> &[u64] {
        &self.body_words[i * self.words..(i + 1) * self.words]
    }

    /// True when the element subset `mask` is classically consistent,
    /// reusing `derived` as the closure scratch buffer.
    pub(crate) fn consistent_with(&self, mask: u64, derived: &mut Vec<u64>) -> bool {
        derived.clear();
        derived.resize(self.words, 0);
        let mut fired = 0u64;
        loop {
            let mut changed = false;
            let mut remaining = mask & !fired;
            while remaining != 0 {
                let i = remaining.trailing_zeros() as usize;
                remaining &= remaining - 1;
                let body = self.body_word_slice(i);
                if body.iter().zip(derived.iter()).all(|(b, d)| b & !d == 0) {
                    let head = self.head_literals[i];
                    derived[head as usize / 64] |= 1 << (head % 64);
                    fired |= 1 << i;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        derived.iter().all(|w| w & (w >> 1) & POSITIVE_BITS == 0)
    }

    /// True when the element subset `mask` is classically consistent.
    pub(crate) fn consistent(&self, mask: u64) -> bool {
        self.consistent_with(mask, &mut Vec::new())
    }

    /// All minimal inconsistent subsets, as element masks, ascending by
    /// cardinality and by mask value within each cardinality.
    pub(crate) fn minimal_inconsistent_masks(&self) -> Vec<u64> {
        let n = self.len();
        let mut scratch = Vec::new();
        let mut found: Vec<u64> = Vec::new();
        for k in 1..=n {
            let mut mask = mask_of_len(k);
            let last = mask << (n - k);
            loop {
                if !found.iter().any(|&m| m & !mask == 0)
                    && !self.consistent_with(mask, &mut scratch)
                {
                    found.push(mask);
                }
                if mask == last {
                    break;
                }
                mask = next_subset_of_same_size(mask);
            }
        }
        found
    }

    /// True when every element selected by `mask` is a fact.
    pub(crate) fn all_facts(&self, mask: u64) -> bool {
        mask & !self.facts_mask == 0
    }

    /// The subset `mask` as a fresh rule base.
    pub(crate) fn sub_base(&self, mask: u64) -> RuleBase {
        RuleBase::new(iter_mask(mask).map(|i| self.elements[i].clone()))
    }
}

/// The element positions selected by `mask`, ascending.
pub(crate) fn iter_mask(mask: u64) -> impl Iterator<Item = usize> {
    MaskIter(mask)
}

struct MaskIter(u64);

impl Iterator for MaskIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// `k` low bits set.
pub(crate) fn mask_of_len(k: usize) -> u64 {
    if k == 0 {
        0
    } else {
        u64::MAX >> (64 - k)
    }
}

/// Gosper's hack: the next-larger mask with the same population count.
pub(crate) fn next_subset_of_same_size(mask: u64) -> u64 {
    let low = mask & mask.wrapping_neg();
    let ripple = mask + low;
    let ones = ((mask ^ ripple) >> 2) / low;
    ripple | ones
}
