//! Cyclic and closure operators on the tensor algebra: `rot`, `rep`, the
//! one-step cyclic `shift`, the map `H`, and the right/left closure
//! projections `rcl = ⧢ ∘ (id ⊗ H) ∘ Δ` and `lcl = ⧢ ∘ (H ⊗ id) ∘ Δ`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};
use crate::tensor::TensorElement;
use crate::word::{Letter, Word};

/// Sum of all `|w|` cyclic rotations of `w`, repeats included, so every
/// distinct rotation carries the coefficient `rep(w)`.
pub fn rot(w: &Word, d: usize) -> Result<TensorElement> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    w.validate(d)?;
    let mut out = TensorElement::zero(d);
    for r in w.rotations() {
        out.add_term(r, Rational::one());
    }
    Ok(out)
}

/// Largest `n` with `w = v^n`.
pub fn rep(w: &Word) -> Result<usize> {
    w.rep()
}

/// Linear extension of "move the last letter to the front" on level `m`.
pub fn shift(x: &TensorElement, m: usize) -> Result<TensorElement> {
    if m == 0 {
        return Err(Error::InvalidArgument("shift needs level m >= 1".into()));
    }
    if !x.is_homogeneous(m) {
        return Err(Error::NotHomogeneous { level: m });
    }
    let mut out = TensorElement::zero(x.alphabet_size());
    for (w, c) in x.terms() {
        out.add_term(w.rotate_last_to_front(), c.clone());
    }
    Ok(out)
}

/// Distinct rearrangements of `letters`, in lexicographic order.
pub fn distinct_permutations(letters: &[Letter]) -> Vec<Word> {
    let mut cur: Vec<Letter> = letters.to_vec();
    cur.sort_unstable();
    let mut out = vec![Word::from_letters(&cur)];
    while next_permutation(&mut cur) {
        out.push(Word::from_letters(&cur));
    }
    out
}

fn next_permutation(v: &mut [Letter]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `n! / (m_1! ... m_d!)` for the letter multiplicities of `letters`.
fn multinomial(letters: &[Letter]) -> BigInt {
    let mut counts = std::collections::BTreeMap::<Letter, usize>::new();
    for &l in letters {
        *counts.entry(l).or_default() += 1;
    }
    counts
        .values()
        .fold(factorial(letters.len()), |acc, &m| acc / factorial(m))
}

/// `H(i_1...i_n) = (-1)^n / n! · i_1 ⧢ ... ⧢ i_n`, extended linearly.
///
/// The shuffle of the letters of a word equals `∏ m_j!` times the sum of its
/// distinct rearrangements, so `H(v)` is `(-1)^n / multinomial(v)` times that
/// sum.
pub fn h_map(x: &TensorElement) -> TensorElement {
    let d = x.alphabet_size();
    x.map_words(|w| {
        let sign = if w.len() % 2 == 0 { 1 } else { -1 };
        let coef = Rational::new(BigInt::from(sign), multinomial(w.letters()));
        let mut out = TensorElement::zero(d);
        for p in distinct_permutations(w.letters()) {
            out.add_term(p, coef.clone());
        }
        out
    })
}

/// Counts, for every `j`, how often `pattern[..j]` occurs as a (scattered)
/// subsequence of `text`.
fn prefix_subsequence_counts(text: &[Letter], pattern: &[Letter], counts: &mut Vec<u64>) {
    counts.clear();
    counts.resize(pattern.len() + 1, 0);
    counts[0] = 1;
    for &t in text {
        for j in (1..=pattern.len()).rev() {
            if pattern[j - 1] == t {
                counts[j] += counts[j - 1];
            }
        }
    }
}

/// Which side the closing segment is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// Image of a single word under `rcl` or `lcl`.
///
/// For `rcl`, the coefficient of a word `x` (same letter content as `w`) is
/// `Σ_j (-1)^{n-j} / multinomial(w[j..]) · #{occurrences of w[..j] in x}`,
/// where the occurrence count is the number of ways `w[..j]` appears as a
/// subsequence of `x`. `lcl` is the mirror image. All coefficients share the
/// denominator `n!`.
pub fn closure_word(w: &Word, d: usize, side: Side) -> TensorElement {
    let n = w.len();
    let letters: Vec<Letter> = match side {
        Side::Right => w.letters().to_vec(),
        Side::Left => w.letters().iter().rev().copied().collect(),
    };
    let n_fact = factorial(n);
    // weights[j] = n! · (-1)^{n-j} / multinomial(letters[j..])
    let weights: Vec<BigInt> = (0..=n)
        .map(|j| {
            let tail = &letters[j..];
            let v = &n_fact / multinomial(tail);
            if tail.len().is_multiple_of(2) {
                v
            } else {
                -v
            }
        })
        .collect();
    let small: Option<Vec<i128>> = weights.iter().map(|v| i128::try_from(v).ok()).collect();

    let mut out = TensorElement::zero(d);
    let mut counts = Vec::new();
    let mut text = Vec::with_capacity(n);
    for x in distinct_permutations(&letters) {
        text.clear();
        text.extend_from_slice(x.letters());
        prefix_subsequence_counts(&text, &letters, &mut counts);
        let num = match &small {
            Some(ws) => BigInt::from(ws.iter().zip(&counts).map(|(a, &c)| a * c as i128).sum::<i128>()),
            None => weights.iter().zip(&counts).map(|(a, &c)| a * BigInt::from(c)).sum(),
        };
        if num.is_zero() {
            continue;
        }
        let word = match side {
            Side::Right => x,
            Side::Left => Word::from_letters(&x.letters().iter().rev().copied().collect::<Vec<_>>()),
        };
        out.add_term(word, Rational::new(num, n_fact.clone()));
    }
    out
}

/// Right closure operator: pairing a path signature with `rcl(x)` equals
/// pairing the signature of the right-closed path with `x`.
pub fn rcl(x: &TensorElement) -> TensorElement {
    let d = x.alphabet_size();
    x.map_words(|w| closure_word(w, d, Side::Right))
}

/// Left closure operator, the mirror image of [`rcl`].
pub fn lcl(x: &TensorElement) -> TensorElement {
    let d = x.alphabet_size();
    x.map_words(|w| closure_word(w, d, Side::Left))
}
