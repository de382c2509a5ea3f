//! Exact linear algebra on a single level `T_n(R^d)` of the tensor algebra,
//! in coordinates given by the word basis.
//!
//! A [`Subspace`] is stored in reduced row-echelon form, which is unique, so
//! two subspaces are equal exactly when their stored rows are equal.

mod sparse;

use num_traits::Zero;

pub use sparse::{axpy, dot, null_space_of_rref, rref, Budget, SparseRow};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tensor::TensorElement;
use crate::word::Word;

fn level_size(d: usize, n: usize) -> usize {
    d.checked_pow(n as u32).expect("level dimension overflows usize")
}

/// Coordinates of a homogeneous element of level `n`, indexed by the
/// lexicographic position of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelVector {
    d: usize,
    n: usize,
    entries: SparseRow,
}

impl LevelVector {
    pub fn zero(d: usize, n: usize) -> Self {
        LevelVector {
            d,
            n,
            entries: Vec::new(),
        }
    }

    /// Sorts, merges repeated indices and drops zeros.
    pub fn new(d: usize, n: usize, entries: impl IntoIterator<Item = (usize, Rational)>) -> Result<Self> {
        let size = level_size(d, n);
        let mut raw: Vec<(usize, Rational)> = entries.into_iter().collect();
        if let Some(&(bad, _)) = raw.iter().find(|(i, _)| *i >= size) {
            return Err(Error::InvalidArgument(format!(
                "word index {bad} out of range for d={d}, n={n}"
            )));
        }
        raw.sort_by_key(|(i, _)| *i);
        let mut merged: SparseRow = Vec::with_capacity(raw.len());
        for (i, v) in raw {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc += v,
                _ => merged.push((i, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        Ok(LevelVector { d, n, entries: merged })
    }

    pub fn from_tensor(x: &TensorElement, n: usize) -> Result<Self> {
        if !x.is_homogeneous(n) {
            return Err(Error::NotHomogeneous { level: n });
        }
        let d = x.alphabet_size();
        // term order on a single level is lexicographic, so indices ascend
        let entries = x.terms().map(|(w, c)| (w.index(d), c.clone())).collect();
        Ok(LevelVector { d, n, entries })
    }

    pub fn to_tensor(&self) -> TensorElement {
        let mut x = TensorElement::zero(self.d);
        for (i, v) in &self.entries {
            x.add_term(Word::from_index(*i, self.d, self.n), v.clone());
        }
        x
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dot(&self, other: &LevelVector) -> Rational {
        dot(&self.entries, &other.entries)
    }
}

/// A linear subspace of `T_n(R^d)` held as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    d: usize,
    n: usize,
    rows: Vec<SparseRow>,
}

impl Subspace {
    pub fn zero(d: usize, n: usize) -> Self {
        Subspace { d, n, rows: Vec::new() }
    }

    pub fn full(d: usize, n: usize) -> Self {
        let rows = (0..level_size(d, n))
            .map(|i| vec![(i, Rational::from_integer(1.into()))])
            .collect();
        Subspace { d, n, rows }
    }

    pub fn span(d: usize, n: usize, vectors: impl IntoIterator<Item = LevelVector>) -> Result<Self> {
        Self::span_with_budget(d, n, vectors, &Budget::unlimited())
    }

    pub fn span_with_budget(
        d: usize,
        n: usize,
        vectors: impl IntoIterator<Item = LevelVector>,
        budget: &Budget,
    ) -> Result<Self> {
        let mut raw = Vec::new();
        for v in vectors {
            check_level(d, n, v.d, v.n)?;
            raw.push(v.entries);
        }
        Ok(Subspace {
            d,
            n,
            rows: rref(raw, budget)?,
        })
    }

    /// Span of homogeneous tensor elements of level `n`.
    pub fn span_tensors<'a>(
        d: usize,
        n: usize,
        elements: impl IntoIterator<Item = &'a TensorElement>,
        budget: &Budget,
    ) -> Result<Self> {
        let mut vectors = Vec::new();
        for x in elements {
            if x.alphabet_size() != d {
                return Err(Error::AlphabetMismatch {
                    left: d,
                    right: x.alphabet_size(),
                });
            }
            vectors.push(LevelVector::from_tensor(x, n)?);
        }
        Self::span_with_budget(d, n, vectors, budget)
    }

    /// `{x : <row, x> = 0 for all rows}`.
    pub fn kernel(d: usize, n: usize, constraint_rows: impl IntoIterator<Item = LevelVector>) -> Result<Self> {
        Self::kernel_with_budget(d, n, constraint_rows, &Budget::unlimited())
    }

    pub fn kernel_with_budget(
        d: usize,
        n: usize,
        constraint_rows: impl IntoIterator<Item = LevelVector>,
        budget: &Budget,
    ) -> Result<Self> {
        let constraints = Self::span_with_budget(d, n, constraint_rows, budget)?;
        constraints.complement_with_budget(budget)
    }

    /// Orthogonal complement for the inner product in which words are
    /// orthonormal.
    pub fn orthogonal_complement(&self) -> Result<Self> {
        self.complement_with_budget(&Budget::unlimited())
    }

    pub fn complement_with_budget(&self, budget: &Budget) -> Result<Self> {
        let size = level_size(self.d, self.n);
        let null = null_space_of_rref(&self.rows, size);
        let out = Subspace {
            d: self.d,
            n: self.n,
            rows: rref(null, budget)?,
        };
        if out.dim() + self.dim() != size {
            return Err(Error::CrossCheck(format!(
                "rank-nullity: {} + {} != {size}",
                self.dim(),
                out.dim()
            )));
        }
        Ok(out)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Self> {
        self.sum_with_budget(other, &Budget::unlimited())
    }

    pub fn sum_with_budget(&self, other: &Subspace, budget: &Budget) -> Result<Self> {
        check_level(self.d, self.n, other.d, other.n)?;
        let rows = self.rows.iter().chain(&other.rows).cloned();
        Ok(Subspace {
            d: self.d,
            n: self.n,
            rows: rref(rows, budget)?,
        })
    }

    /// `(a^⊥ + b^⊥)^⊥`, with `dim(a + b) = dim a + dim b - dim(a ∩ b)`
    /// checked against a separately computed sum.
    pub fn intersect(&self, other: &Subspace) -> Result<Self> {
        self.intersect_with_budget(other, &Budget::unlimited())
    }

    pub fn intersect_with_budget(&self, other: &Subspace, budget: &Budget) -> Result<Self> {
        check_level(self.d, self.n, other.d, other.n)?;
        let a_perp = self.complement_with_budget(budget)?;
        let b_perp = other.complement_with_budget(budget)?;
        let meet = a_perp
            .sum_with_budget(&b_perp, budget)?
            .complement_with_budget(budget)?;
        let join = self.sum_with_budget(other, budget)?;
        if join.dim() + meet.dim() != self.dim() + other.dim() {
            return Err(Error::CrossCheck(format!(
                "dimension formula: dim(a+b)={} dim(a∩b)={} dim a={} dim b={}",
                join.dim(),
                meet.dim(),
                self.dim(),
                other.dim()
            )));
        }
        Ok(meet)
    }

    /// Whether `x` reduces to zero against the basis.
    pub fn contains(&self, x: &LevelVector) -> Result<bool> {
        check_level(self.d, self.n, x.d, x.n)?;
        let mut v = x.entries.clone();
        for row in &self.rows {
            let p = row[0].0;
            if let Ok(k) = v.binary_search_by_key(&p, |(c, _)| *c) {
                let c = -v[k].1.clone();
                v = axpy(&v, &c, row);
            }
        }
        Ok(v.is_empty())
    }

    pub fn contains_tensor(&self, x: &TensorElement) -> Result<bool> {
        if x.alphabet_size() != self.d {
            return Err(Error::AlphabetMismatch {
                left: self.d,
                right: x.alphabet_size(),
            });
        }
        self.contains(&LevelVector::from_tensor(x, self.n)?)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        check_level(self.d, self.n, other.d, other.n)?;
        for r in &self.rows {
            let v = LevelVector {
                d: self.d,
                n: self.n,
                entries: r.clone(),
            };
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = LevelVector> + '_ {
        self.rows.iter().map(|r| LevelVector {
            d: self.d,
            n: self.n,
            entries: r.clone(),
        })
    }

    /// Basis rows as tensor elements.
    pub fn basis(&self) -> Vec<TensorElement> {
        self.rows().map(|v| v.to_tensor()).collect()
    }

    /// Checks the stored rows are in reduced row-echelon form.
    pub fn is_canonical(&self) -> bool {
        let pivots = self.pivots();
        let increasing = pivots.windows(2).all(|w| w[0] < w[1]);
        let unit = self.rows.iter().all(|r| r[0].1 == Rational::from_integer(1.into()));
        let cleared = self
            .rows
            .iter()
            .all(|r| r[1..].iter().all(|(c, _)| pivots.binary_search(c).is_err()));
        increasing && unit && cleared
    }
}

fn check_level(d1: usize, n1: usize, d2: usize, n2: usize) -> Result<()> {
    if d1 != d2 || n1 != n2 {
        return Err(Error::LevelMismatch { d1, n1, d2, n2 });
    }
    Ok(())
}
