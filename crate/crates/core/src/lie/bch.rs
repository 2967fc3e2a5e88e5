//! Group law in exponential coordinates via the Dynkin form of the
//! Baker–Campbell–Hausdorff series.
//!
//! For a nilpotent algebra of step `s` every bracket of length `> s` vanishes,
//! so `log(exp x exp y)` is the finite sum of Dynkin terms of degree `<= s`:
//!
//! ```text
//! sum_n (-1)^(n-1)/n  sum_{r_i + s_i > 0}  [X^r1 Y^s1 ... X^rn Y^sn]
//!                                          / ((sum r_i + s_i) * prod r_i! s_i!)
//! ```
//!
//! where `[w]` is the right-nested commutator of the word `w`. Coefficients
//! are collected per word once and cached.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{self, RVec, Rational};
use super::{LieAlgebra, LieError};

/// Highest nilpotency step for which the product is available.
pub const MAX_BCH_STEP: usize = 6;

/// Letter `false` is `x`, `true` is `y`.
type Word = Vec<bool>;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn push_blocks(
    remaining: usize,
    blocks: &mut Vec<(usize, usize)>,
    out: &mut HashMap<Word, Rational>,
) {
    if !blocks.is_empty() {
        let n = blocks.len();
        let degree: usize = blocks.iter().map(|(r, s)| r + s).sum();
        let denom = blocks
            .iter()
            .fold(BigInt::from(degree * n), |acc, (r, s)| acc * factorial(*r) * factorial(*s));
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let coeff = Rational::new(BigInt::from(sign), denom);
        let word: Word = blocks
            .iter()
            .flat_map(|&(r, s)| std::iter::repeat_n(false, r).chain(std::iter::repeat_n(true, s)))
            .collect();
        // Right-nested brackets ending in a repeated letter vanish.
        let vanishes = word.len() >= 2 && word[word.len() - 1] == word[word.len() - 2];
        if !vanishes {
            *out.entry(word).or_insert_with(Rational::zero) += coeff;
        }
    }
    for total in 1..=remaining {
        for r in 0..=total {
            blocks.push((r, total - r));
            push_blocks(remaining - total, blocks, out);
            blocks.pop();
        }
    }
}

/// Dynkin coefficients per word, for all words of length `<= MAX_BCH_STEP`.
fn dynkin_terms() -> &'static Vec<(Word, Rational)> {
    static TERMS: OnceLock<Vec<(Word, Rational)>> = OnceLock::new();
    TERMS.get_or_init(|| {
        let mut map = HashMap::new();
        push_blocks(MAX_BCH_STEP, &mut Vec::new(), &mut map);
        let mut terms: Vec<(Word, Rational)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        terms
    })
}

impl LieAlgebra {
    /// Exact BCH product `x * y` in exponential coordinates.
    pub fn bch_product(&self, x: &[Rational], y: &[Rational]) -> Result<RVec, LieError> {
        let step = self.nilpotency_step().ok_or(LieError::NotNilpotent)?;
        if step > MAX_BCH_STEP {
            return Err(LieError::StepTooLarge(step));
        }
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(LieError::DimensionMismatch {
                expected: self.dim(),
                found: if x.len() != self.dim() { x.len() } else { y.len() },
            });
        }
        let mut memo: HashMap<&[bool], RVec> = HashMap::new();
        let mut out = rational::zeros(self.dim());
        for (word, coeff) in dynkin_terms().iter().filter(|(w, _)| w.len() <= step) {
            let value = self.nested(word, x, y, &mut memo);
            rational::axpy(&mut out, coeff, &value);
        }
        Ok(out)
    }

    /// Group inverse in exponential coordinates.
    pub fn bch_inverse(&self, x: &[Rational]) -> RVec {
        rational::neg(x)
    }

    fn nested<'w>(
        &self,
        word: &'w [bool],
        x: &[Rational],
        y: &[Rational],
        memo: &mut HashMap<&'w [bool], RVec>,
    ) -> RVec {
        if let Some(v) = memo.get(word) {
            return v.clone();
        }
        let letter = if word[0] { y } else { x };
        let value = if word.len() == 1 {
            letter.to_vec()
        } else {
            let inner = self.nested(&word[1..], x, y, memo);
            self.bracket_unchecked(letter, &inner)
        };
        memo.insert(word, value.clone());
        value
    }
}
