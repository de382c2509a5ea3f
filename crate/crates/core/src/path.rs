//! Piecewise-linear paths with rational increments and their exact truncated
//! signatures.
//!
//! The signature of a straight segment with increment `z` is the tensor
//! exponential `exp(z)`, and the signature of a concatenation is the
//! truncated concatenation product of the pieces (Chen's identity).

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::tensor::TensorElement;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPath", into = "RawPath")]
pub struct PiecewiseLinearPath {
    d: usize,
    segments: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct RawPath {
    d: usize,
    segments: Vec<Vec<String>>,
}

impl TryFrom<RawPath> for PiecewiseLinearPath {
    type Error = Error;

    fn try_from(raw: RawPath) -> Result<Self> {
        let segments = raw
            .segments
            .iter()
            .map(|s| s.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PiecewiseLinearPath::new(raw.d, segments)
    }
}

impl From<PiecewiseLinearPath> for RawPath {
    fn from(p: PiecewiseLinearPath) -> Self {
        RawPath {
            d: p.d,
            segments: p
                .segments
                .iter()
                .map(|s| s.iter().map(format_rational).collect())
                .collect(),
        }
    }
}

impl PiecewiseLinearPath {
    pub fn new(d: usize, segments: Vec<Vec<Rational>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if let Some(bad) = segments.iter().find(|s| s.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: bad.len(),
            });
        }
        Ok(PiecewiseLinearPath { d, segments })
    }

    /// The constant path.
    pub fn empty(d: usize) -> Self {
        PiecewiseLinearPath {
            d,
            segments: Vec::new(),
        }
    }

    pub fn from_integers(d: usize, segments: &[&[i64]]) -> Result<Self> {
        let segs = segments
            .iter()
            .map(|s| s.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        Self::new(d, segs)
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn segments(&self) -> &[Vec<Rational>] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn increment(&self) -> Vec<Rational> {
        let mut total = vec![Rational::zero(); self.d];
        for s in &self.segments {
            for (t, v) in total.iter_mut().zip(s) {
                *t += v;
            }
        }
        total
    }

    pub fn is_closed(&self) -> bool {
        self.increment().iter().all(Zero::is_zero)
    }

    /// `A ⊔ B`: run `self`, then `other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::AlphabetMismatch {
                left: self.d,
                right: other.d,
            });
        }
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        Ok(PiecewiseLinearPath { d: self.d, segments })
    }

    pub fn push_segment(&mut self, z: Vec<Rational>) -> Result<()> {
        if z.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: z.len(),
            });
        }
        self.segments.push(z);
        Ok(())
    }

    /// The same trace run backwards.
    pub fn reverse(&self) -> Self {
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|s| s.iter().map(|v| -v).collect())
            .collect();
        PiecewiseLinearPath { d: self.d, segments }
    }

    /// Increment of the straight segment from the end point back to the
    /// start.
    pub fn closing_segment(&self) -> Vec<Rational> {
        self.increment().into_iter().map(|v| -v).collect()
    }

    /// `self ⊔ R_self`, a loop.
    pub fn closed(&self) -> Self {
        let mut out = self.clone();
        out.segments.push(self.closing_segment());
        out
    }

    /// The segment list rotated so that segment `k` comes first. For a loop
    /// this moves the starting point along the trace.
    pub fn rotate_segments(&self, k: usize) -> Self {
        let mut segments = self.segments.clone();
        if !segments.is_empty() {
            let k = k % segments.len();
            segments.rotate_left(k);
        }
        PiecewiseLinearPath { d: self.d, segments }
    }

    pub fn signature(&self, level: usize) -> TruncatedSignature {
        path_signature(self, level)
    }
}

/// A signature truncated at level `N`, stored densely level by level in
/// word-index order. Level zero is always `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSignature {
    d: usize,
    levels: Vec<Vec<Rational>>,
}

impl TruncatedSignature {
    pub fn identity(d: usize, level: usize) -> Self {
        let mut levels: Vec<Vec<Rational>> = (0..=level).map(|k| vec![Rational::zero(); d.pow(k as u32)]).collect();
        levels[0][0] = Rational::one();
        TruncatedSignature { d, levels }
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level_coefficients(&self, k: usize) -> &[Rational] {
        &self.levels[k]
    }

    /// `⟨sig, w⟩`; words beyond the truncation level are an error.
    pub fn coefficient(&self, w: &Word) -> Result<Rational> {
        w.validate(self.d)?;
        if w.len() > self.level() {
            return Err(Error::InvalidArgument(format!(
                "word {w} is beyond truncation level {}",
                self.level()
            )));
        }
        Ok(self.levels[w.len()][w.index(self.d)].clone())
    }

    /// `⟨sig, x⟩` for a polynomial `x` of degree at most `N`.
    pub fn pair(&self, x: &TensorElement) -> Result<Rational> {
        if x.alphabet_size() != self.d {
            return Err(Error::AlphabetMismatch {
                left: self.d,
                right: x.alphabet_size(),
            });
        }
        let mut acc = Rational::zero();
        for (w, c) in x.terms() {
            acc += self.coefficient(w)? * c;
        }
        Ok(acc)
    }

    /// Truncated concatenation product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::AlphabetMismatch {
                left: self.d,
                right: other.d,
            });
        }
        let level = self.level().min(other.level());
        let d = self.d;
        let mut out = TruncatedSignature::identity(d, level);
        for n in 1..=level {
            let target = &mut out.levels[n];
            for k in 0..=n {
                let left = &self.levels[k];
                let right = &other.levels[n - k];
                let stride = right.len();
                for (p, a) in left.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (s, b) in right.iter().enumerate() {
                        if !b.is_zero() {
                            target[p * stride + s] += a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_tensor(&self) -> TensorElement {
        let mut x = TensorElement::zero(self.d);
        for (k, coeffs) in self.levels.iter().enumerate() {
            for (i, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    x.add_term(Word::from_index(i, self.d, k), c.clone());
                }
            }
        }
        x
    }

    /// `⟨g,u⟩⟨g,v⟩ = ⟨g, u⧢v⟩` for all nonempty words with
    /// `|u| + |v| ≤ max_total`, capped at the truncation level.
    pub fn is_grouplike(&self, max_total: usize) -> bool {
        let top = max_total.min(self.level());
        for total in 2..=top {
            for a in 1..total {
                for u in Word::all(self.d, a) {
                    let gu = &self.levels[a][u.index(self.d)];
                    for v in Word::all(self.d, total - a) {
                        let gv = &self.levels[total - a][v.index(self.d)];
                        let mut rhs = Rational::zero();
                        crate::tensor::for_each_shuffle(u.letters(), v.letters(), |w| {
                            rhs += &self.levels[total][Word::from_letters(w).index(self.d)];
                        });
                        if gu * gv != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// `exp(z)` truncated at `level`: the coefficient of `i_1…i_n` is
/// `z_{i_1}⋯z_{i_n}/n!`.
pub fn segment_signature(z: &[Rational], level: usize) -> TruncatedSignature {
    let d = z.len();
    let mut sig = TruncatedSignature::identity(d, level);
    for n in 1..=level {
        let inv_n = Rational::new(1.into(), n.into());
        let (lower, upper) = sig.levels.split_at_mut(n);
        let prev = &lower[n - 1];
        let cur = &mut upper[0];
        for (p, a) in prev.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = a * &inv_n;
            for (i, zi) in z.iter().enumerate() {
                if !zi.is_zero() {
                    cur[p * d + i] = &a * zi;
                }
            }
        }
    }
    sig
}

pub fn path_signature(p: &PiecewiseLinearPath, level: usize) -> TruncatedSignature {
    p.segments
        .iter()
        .fold(TruncatedSignature::identity(p.d, level), |acc, z| {
            acc.mul(&segment_signature(z, level))
                .expect("segments share the alphabet")
        })
}
