//! Sparse rows and reduced row-echelon elimination over the rationals.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{bit_size, Rational};

/// Sorted `(column, value)` pairs without zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// Wall-clock and coefficient-size limits for long eliminations.
#[derive(Clone, Debug, Default)]
pub struct Budget {
    pub deadline: Option<Instant>,
    pub max_bits: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn new(deadline: Option<Instant>, max_bits: Option<u64>) -> Self {
        Budget { deadline, max_bits }
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(t) if Instant::now() > t => Err(Error::BudgetExceeded("wall-clock limit".into())),
            _ => Ok(()),
        }
    }

    fn check_bits(&self, row: &SparseRow) -> Result<()> {
        if let Some(max) = self.max_bits {
            if let Some(b) = row.iter().map(|(_, v)| bit_size(v)).max() {
                if b > max {
                    return Err(Error::BudgetExceeded(format!(
                        "coefficient of {b} bits exceeds limit {max}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `a + c·b`.
pub fn axpy(a: &[(usize, Rational)], c: &Rational, b: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn dot(a: &[(usize, Rational)], b: &[(usize, Rational)]) -> Rational {
    let (mut i, mut j) = (0, 0);
    let mut acc = Rational::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

fn scale_to_unit_lead(row: &mut SparseRow) {
    let inv = Rational::one() / &row[0].1;
    if !inv.is_one() {
        for (_, v) in row.iter_mut() {
            *v *= &inv;
        }
    }
}

/// `|num| · den` of a pivot candidate; smaller is preferred.
fn pivot_weight(v: &Rational) -> num_bigint::BigInt {
    v.numer().abs() * v.denom()
}

/// Reduced row-echelon form of the span of `rows`.
///
/// Columns are eliminated left to right. Among the rows whose leading
/// column is the current one, the pivot is the one with the smallest
/// `|num|·den` leading entry (earliest row on ties). The result is
/// independent of these choices: rows come back sorted by pivot column,
/// each with leading entry one and zeros in every other pivot column.
pub fn rref(rows: impl IntoIterator<Item = SparseRow>, budget: &Budget) -> Result<Vec<SparseRow>> {
    // leading column -> rows waiting there, tagged with insertion order
    let mut buckets: BTreeMap<usize, Vec<(usize, SparseRow)>> = BTreeMap::new();
    let mut seq = 0usize;
    for row in rows {
        if let Some(&(lead, _)) = row.first() {
            buckets.entry(lead).or_default().push((seq, row));
            seq += 1;
        }
    }

    let mut echelon: Vec<SparseRow> = Vec::new();
    let mut ops = 0usize;
    while let Some((_, mut bucket)) = buckets.pop_first() {
        let best = bucket
            .iter()
            .enumerate()
            .min_by(|(_, (sa, ra)), (_, (sb, rb))| pivot_weight(&ra[0].1).cmp(&pivot_weight(&rb[0].1)).then(sa.cmp(sb)))
            .map(|(i, _)| i)
            .expect("bucket is nonempty");
        let (_, mut pivot) = bucket.swap_remove(best);
        scale_to_unit_lead(&mut pivot);
        budget.check_bits(&pivot)?;
        for (s, row) in bucket {
            let factor = -row[0].1.clone();
            let reduced = axpy(&row[1..], &factor, &pivot[1..]);
            if let Some(&(lead, _)) = reduced.first() {
                buckets.entry(lead).or_default().push((s, reduced));
            }
            ops += 1;
            if ops.is_multiple_of(256) {
                budget.check_time()?;
            }
        }
        echelon.push(pivot);
    }

    // back substitution, bottom row first
    let pivot_cols: Vec<usize> = echelon.iter().map(|r| r[0].0).collect();
    for i in (0..echelon.len()).rev() {
        let targets: Vec<(usize, Rational)> = echelon[i][1..]
            .iter()
            .filter_map(|(c, v)| pivot_cols.binary_search(c).ok().map(|k| (k, v.clone())))
            .collect();
        if targets.is_empty() {
            continue;
        }
        let mut row = std::mem::take(&mut echelon[i]);
        for (k, v) in targets {
            row = axpy(&row, &-v, &echelon[k]);
            ops += 1;
            if ops.is_multiple_of(256) {
                budget.check_time()?;
            }
        }
        budget.check_bits(&row)?;
        echelon[i] = row;
    }
    Ok(echelon)
}

/// Basis of `{x : <row, x> = 0 for every row}` read off an RREF matrix with
/// `ncols` columns: one vector per non-pivot column.
pub fn null_space_of_rref(rref_rows: &[SparseRow], ncols: usize) -> Vec<SparseRow> {
    let mut is_pivot = vec![false; ncols];
    for r in rref_rows {
        is_pivot[r[0].0] = true;
    }
    let mut by_col: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); ncols];
    for r in rref_rows {
        let p = r[0].0;
        for (c, v) in &r[1..] {
            by_col[*c].push((p, -v.clone()));
        }
    }
    let mut out = Vec::with_capacity(ncols - rref_rows.len());
    for (f, mut entries) in by_col.into_iter().enumerate() {
        if is_pivot[f] {
            continue;
        }
        entries.push((f, Rational::one()));
        entries.sort_by_key(|(c, _)| *c);
        out.push(entries);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, int(v))).collect()
    }

    #[test]
    fn axpy_cancels() {
        let a = row(&[(0, 1), (2, 3)]);
        let b = row(&[(1, 5), (2, 1)]);
        assert_eq!(axpy(&a, &int(-3), &b), row(&[(0, 1), (1, -15)]));
    }

    #[test]
    fn rref_is_reduced() {
        let rows = vec![
            row(&[(0, 2), (1, 4), (3, 2)]),
            row(&[(0, 1), (2, 1)]),
            row(&[(1, 2), (2, -1), (3, 1)]),
        ];
        let r = rref(rows, &Budget::unlimited()).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0], vec![(0, int(1)), (2, int(1))]);
        assert_eq!(r[1], vec![(1, int(1)), (2, frac(-1, 2)), (3, frac(1, 2))]);
    }

    #[test]
    fn null_space_annihilates_rows() {
        let rows = vec![row(&[(0, 1), (1, 1), (2, 1)]), row(&[(1, 1), (3, -1)])];
        let r = rref(rows.clone(), &Budget::unlimited()).unwrap();
        let null = null_space_of_rref(&r, 4);
        assert_eq!(null.len(), 2);
        for v in &null {
            for original in &rows {
                assert!(dot(v, original).is_zero());
            }
        }
    }

    #[test]
    fn expired_deadline_is_reported() {
        let budget = Budget::new(Some(Instant::now() - std::time::Duration::from_secs(1)), None);
        let rows: Vec<SparseRow> = (0..600).map(|i| row(&[(0, 1), (i + 1, 1)])).collect();
        assert!(matches!(rref(rows, &budget), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn bit_limit_is_reported() {
        let budget = Budget::new(None, Some(4));
        let rows = vec![row(&[(0, 1), (1, 1000)])];
        assert!(matches!(rref(rows, &budget), Err(Error::BudgetExceeded(_))));
    }
}
