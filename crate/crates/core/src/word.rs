//! Words over the alphabet `{1, ..., d}`.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Letter = u8;

/// Largest alphabet size a [`Word`] can hold.
pub const MAX_ALPHABET: usize = Letter::MAX as usize;

/// A finite sequence of letters. Words are ordered by length first and then
/// lexicographically, which is the canonical term order of the crate.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Letter; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    /// Builds a word without checking letters against an alphabet.
    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    /// Builds a word and checks that every letter lies in `1..=d`.
    pub fn new(letters: &[Letter], d: usize) -> Result<Self> {
        let w = Word::from_letters(letters);
        w.validate(d)?;
        Ok(w)
    }

    pub fn letter(i: Letter) -> Self {
        Word::from_letters(&[i])
    }

    /// Parses a digit string such as `"143"`. The empty string and `"e"` are
    /// the empty word.
    pub fn parse(s: &str, d: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Word::empty());
        }
        let mut letters = SmallVec::new();
        for c in s.chars() {
            let v = c.to_digit(10).ok_or_else(|| Error::Parse {
                what: "word",
                input: s.to_string(),
            })?;
            letters.push(v as Letter);
        }
        let w = Word(letters);
        w.validate(d)?;
        Ok(w)
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        if d == 0 {
            return Err(Error::EmptyAlphabet);
        }
        match self.0.iter().find(|&&l| l == 0 || l as usize > d) {
            Some(&l) => Err(Error::LetterOutOfRange { letter: l as usize, d }),
            None => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word::from_letters(&self.0[..k])
    }

    pub fn suffix_from(&self, k: usize) -> Word {
        Word::from_letters(&self.0[k..])
    }

    /// Moves the last letter to the front: `231 -> 123`.
    pub fn rotate_last_to_front(&self) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            v.rotate_right(1);
        }
        Word(v)
    }

    /// All `len()` cyclic rotations, repeats included.
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len()).map(move |k| {
            let mut v = self.0.clone();
            v.rotate_left(k);
            Word(v)
        })
    }

    /// Largest `n` with `self = v^n`.
    pub fn rep(&self) -> Result<usize> {
        let n = self.len();
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        let p = (1..=n)
            .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| self.0[i] == self.0[i - p]))
            .unwrap_or(n);
        Ok(n / p)
    }

    /// Lexicographically least rotation (Booth's algorithm).
    pub fn min_rotation(&self) -> Word {
        let n = self.len();
        if n == 0 {
            return Word::empty();
        }
        let s: Vec<Letter> = self.0.iter().chain(self.0.iter()).copied().collect();
        let mut fail = vec![-1isize; 2 * n];
        let mut k = 0usize;
        for j in 1..2 * n {
            let sj = s[j];
            let mut i = fail[j - k - 1];
            while i != -1 && sj != s[k + i as usize + 1] {
                if sj < s[k + i as usize + 1] {
                    k = j - i as usize - 1;
                }
                i = fail[i as usize];
            }
            if sj != s[k + (i + 1) as usize] {
                // i == -1 here
                if sj < s[k] {
                    k = j;
                }
                fail[j - k] = -1;
            } else {
                fail[j - k] = i + 1;
            }
        }
        Word::from_letters(&s[k..k + n])
    }

    /// Strictly smaller than every proper rotation.
    pub fn is_lyndon(&self) -> bool {
        !self.is_empty() && self.rotations().skip(1).all(|r| self.0 < r.0)
    }

    /// Multiplicity of each letter `1..=d`.
    pub fn content(&self, d: usize) -> Vec<u32> {
        let mut c = vec![0u32; d];
        for &l in &self.0 {
            c[l as usize - 1] += 1;
        }
        c
    }

    /// Position among the `d^n` words of the same length in lexicographic
    /// order.
    pub fn index(&self, d: usize) -> usize {
        self.0.iter().fold(0usize, |acc, &l| acc * d + (l as usize - 1))
    }

    pub fn from_index(mut idx: usize, d: usize, n: usize) -> Word {
        let mut v: SmallVec<[Letter; 16]> = smallvec::smallvec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = (idx % d) as Letter + 1;
            idx /= d;
        }
        Word(v)
    }

    /// Every word of length `n` in lexicographic order.
    pub fn all(d: usize, n: usize) -> impl Iterator<Item = Word> {
        let count = d.checked_pow(n as u32).expect("level too large");
        (0..count).map(move |i| Word::from_index(i, d, n))
    }

    /// Digit-string form used by the JSON formats; the empty word is `""`.
    pub fn to_digits(&self) -> String {
        self.0.iter().map(|l| l.to_string()).collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        if self.0.iter().all(|&l| l <= 9) {
            f.write_str(&self.to_digits())
        } else {
            let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}
