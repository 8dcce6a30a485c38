//! Incremental row echelon form over sparse rational rows.
//!
//! Used for the `n^2 x n^2` commutator systems, whose rows carry at most
//! `2n` nonzeros and decouple along the block structure of the input.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Sorted by column, no explicit zeros.
pub(crate) type SparseRow = Vec<(usize, Rational)>;

pub(crate) struct Echelon {
    pivots: Vec<Option<SparseRow>>,
    rank: usize,
}

impl Echelon {
    pub(crate) fn new(cols: usize) -> Self {
        Echelon {
            pivots: vec![None; cols],
            rank: 0,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `row` against the stored pivots; stores it and returns
    /// `true` when it is independent of them.
    pub(crate) fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return false;
            };
            match &self.pivots[lead] {
                Some(pivot) => row = axpy(&row, &-coeff, pivot),
                None => {
                    let inv = coeff.recip();
                    for (_, x) in row.iter_mut() {
                        *x *= &inv;
                    }
                    debug_assert!(row[0].1.is_one());
                    self.pivots[lead] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
    }
}

/// `a + c * b`, merging sorted rows.
fn axpy(a: &SparseRow, c: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let x = &a[i].1 + c * &b[j].1;
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn sparse_rank(rows: impl IntoIterator<Item = SparseRow>, cols: usize) -> usize {
    let mut ech = Echelon::new(cols);
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}
