//! Graded sparse elements of the tensor algebra over `R^d` with exact
//! coefficients, together with the concatenation and shuffle products, the
//! deconcatenation coproduct, the Lie bracket and the word-basis pairing.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::word::{Letter, Word};

/// A finite linear combination of words. Zero coefficients are never stored
/// and terms iterate in degree-then-lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    d: usize,
    terms: BTreeMap<Word, Rational>,
}

impl TensorElement {
    pub fn zero(d: usize) -> Self {
        TensorElement {
            d,
            terms: BTreeMap::new(),
        }
    }

    /// The empty word `e`, unit of both products.
    pub fn unit(d: usize) -> Self {
        Self::from_word(d, Word::empty())
    }

    pub fn from_word(d: usize, w: Word) -> Self {
        let mut x = Self::zero(d);
        x.terms.insert(w, Rational::one());
        x
    }

    pub fn letter(d: usize, i: Letter) -> Self {
        Self::from_word(d, Word::letter(i))
    }

    /// Builds an element from `(word, coefficient)` pairs, summing repeats and
    /// validating every word against the alphabet.
    pub fn from_terms<I>(d: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        if d == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let mut x = Self::zero(d);
        for (w, c) in terms {
            w.validate(d)?;
            x.add_term(w, c);
        }
        Ok(x)
    }

    /// Parses a sum of digit words with integer coefficients, e.g.
    /// `"12 - 21"`, `"2*1212 + 3*2121"`, `"e"`.
    pub fn parse(d: usize, s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "tensor element",
            input: s.to_string(),
        };
        let mut x = Self::zero(d);
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() || cleaned == "0" {
            return Ok(x);
        }
        let mut chunks = Vec::new();
        let mut cur = String::new();
        for c in cleaned.chars() {
            if (c == '+' || c == '-') && !cur.is_empty() {
                chunks.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        chunks.push(cur);
        for chunk in chunks {
            let (sign, body) = match chunk.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, chunk.strip_prefix('+').unwrap_or(&chunk)),
            };
            let (coef, word) = match body.split_once('*') {
                Some((c, w)) => (parse_rational(c)?, w),
                None => (Rational::one(), body),
            };
            if word.is_empty() {
                return Err(err());
            }
            let w = Word::parse(word, d)?;
            x.add_term(w, coef * Rational::from_integer(sign.into()));
        }
        Ok(x)
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Highest level with a nonzero term; `None` for zero.
    pub fn max_level(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn is_homogeneous(&self, n: usize) -> bool {
        self.terms.keys().all(|w| w.len() == n)
    }

    /// Level-`n` part.
    pub fn project(&self, n: usize) -> Self {
        TensorElement {
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of level at most `n`.
    pub fn truncate(&self, n: usize) -> Self {
        TensorElement {
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        TensorElement {
            d: self.d,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Applies a word-to-element map linearly.
    pub fn map_words<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&Word) -> TensorElement,
    {
        let mut out = Self::zero(self.d);
        for (w, c) in &self.terms {
            let image = f(w);
            for (u, x) in image.terms {
                out.add_term(u, x * c);
            }
        }
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::AlphabetMismatch {
                left: self.d,
                right: other.d,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// Concatenation product, extended bilinearly.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.d);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        Ok(out)
    }

    /// Shuffle product, extended bilinearly.
    pub fn shuffle(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut acc: BTreeMap<Word, Rational> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a * b;
                for_each_shuffle(u.letters(), v.letters(), |w| {
                    *acc.entry(Word::from_letters(w)).or_insert_with(Rational::zero) += &ab;
                });
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TensorElement { d: self.d, terms: acc })
    }

    /// `self ⧢ self ⧢ ... ⧢ self` (`k` factors); `k = 0` gives `e`.
    pub fn shuffle_power(&self, k: usize) -> Self {
        (0..k).fold(Self::unit(self.d), |acc, _| acc.shuffle(self).expect("same alphabet"))
    }

    /// Deconcatenation: every split `w = u v` of every term, with the
    /// coefficient of `w`.
    pub fn deconcat(&self) -> Vec<(Word, Word, Rational)> {
        let mut out = Vec::new();
        for (w, c) in &self.terms {
            for k in 0..=w.len() {
                out.push((w.prefix(k), w.suffix_from(k), c.clone()));
            }
        }
        out
    }

    /// Lie bracket `[a, b] = ab - ba`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let ab = self.concat(other)?;
        let ba = other.concat(self)?;
        Ok(ab - ba)
    }

    /// Word-basis pairing `<Σ c_w w, v> = c_v`, extended bilinearly in `v`.
    pub fn pair(&self, poly: &Self) -> Result<Rational> {
        self.check_same(poly)?;
        let (small, large) = if self.len() <= poly.len() {
            (self, poly)
        } else {
            (poly, self)
        };
        let mut acc = Rational::zero();
        for (w, c) in &small.terms {
            if let Some(x) = large.terms.get(w) {
                acc += c * x;
            }
        }
        Ok(acc)
    }

    /// Rescaled so the first term in term order has coefficient one.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next() {
            None => self.clone(),
            Some(lead) => {
                let inv = Rational::one() / lead;
                self.scale(&inv)
            }
        }
    }
}

/// Calls `f` once per interleaving of `u` and `v`, with multiplicity.
pub fn for_each_shuffle<F: FnMut(&[Letter])>(u: &[Letter], v: &[Letter], mut f: F) {
    let mut buf = Vec::with_capacity(u.len() + v.len());
    fn go<F: FnMut(&[Letter])>(u: &[Letter], v: &[Letter], buf: &mut Vec<Letter>, f: &mut F) {
        if u.is_empty() || v.is_empty() {
            let start = buf.len();
            buf.extend_from_slice(u);
            buf.extend_from_slice(v);
            f(buf);
            buf.truncate(start);
            return;
        }
        buf.push(u[0]);
        go(&u[1..], v, buf, f);
        buf.pop();
        buf.push(v[0]);
        go(u, &v[1..], buf, f);
        buf.pop();
    }
    go(u, v, &mut buf, &mut f);
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{}*", format_rational(&abs))?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement(d={}, {})", self.d, self)
    }
}

macro_rules! assert_same_alphabet {
    ($a:expr, $b:expr) => {
        assert_eq!(
            $a.d, $b.d,
            "tensor elements over different alphabets cannot be combined"
        )
    };
}

impl AddAssign<&TensorElement> for TensorElement {
    fn add_assign(&mut self, rhs: &TensorElement) {
        assert_same_alphabet!(self, rhs);
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl SubAssign<&TensorElement> for TensorElement {
    fn sub_assign(&mut self, rhs: &TensorElement) {
        assert_same_alphabet!(self, rhs);
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c.clone());
        }
    }
}

impl Add for TensorElement {
    type Output = TensorElement;
    fn add(mut self, rhs: TensorElement) -> TensorElement {
        self += &rhs;
        self
    }
}

impl Sub for TensorElement {
    type Output = TensorElement;
    fn sub(mut self, rhs: TensorElement) -> TensorElement {
        self -= &rhs;
        self
    }
}

impl<'a> Add<&'a TensorElement> for &'a TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a TensorElement> for &'a TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        TensorElement {
            d: self.d,
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

// JSON form: {"d": 2, "terms": [{"word": "12", "num": "1", "den": "2"}]}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: String,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    d: usize,
    terms: Vec<TermJson>,
}

impl Serialize for TensorElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorJson {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    word: w.to_digits(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorElement {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TensorJson::deserialize(de)?;
        if raw.d > 9 {
            return Err(D::Error::custom("digit-string words need d <= 9"));
        }
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let w = Word::parse(&t.word, raw.d).map_err(D::Error::custom)?;
            let c = parse_rational(&format!("{}/{}", t.num, t.den)).map_err(D::Error::custom)?;
            terms.push((w, c));
        }
        TensorElement::from_terms(raw.d, terms).map_err(D::Error::custom)
    }
}
