//! Seeded generators for matrices with prescribed Jordan structure and for
//! change-of-basis matrices. Used by the property suites and campaigns.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::linalg::is_invertible;
use crate::matrix::QMatrix;
use crate::rational::{self, Rational};

/// Jordan blocks `(eigenvalue, size)` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanData {
    pub blocks: Vec<(Rational, usize)>,
}

impl JordanData {
    pub fn size(&self) -> usize {
        self.blocks.iter().map(|(_, s)| s).sum()
    }

    pub fn to_matrix(&self) -> QMatrix {
        let blocks: Vec<QMatrix> = self
            .blocks
            .iter()
            .map(|(l, s)| QMatrix::jordan_block(l, *s))
            .collect();
        QMatrix::block_diag(&blocks)
    }

    /// Block sizes for one eigenvalue, largest first.
    pub fn partition(&self, eigenvalue: &Rational) -> Vec<usize> {
        let mut p: Vec<usize> = self
            .blocks
            .iter()
            .filter(|(l, _)| l == eigenvalue)
            .map(|(_, s)| *s)
            .collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    pub fn eigenvalues(&self) -> Vec<Rational> {
        let mut ev: Vec<Rational> = self.blocks.iter().map(|(l, _)| l.clone()).collect();
        ev.sort();
        ev.dedup();
        ev
    }

    /// Random invertible Jordan data of total size `size`. Eigenvalue 1 is
    /// drawn often so that unit blocks are well represented.
    pub fn random<R: Rng>(rng: &mut R, size: usize) -> Self {
        let pool = [
            rational::int(1),
            rational::int(1),
            rational::int(2),
            rational::int(-1),
            rational::frac(1, 2),
            rational::int(3),
            rational::frac(-2, 3),
        ];
        let mut blocks = Vec::new();
        let mut left = size;
        while left > 0 {
            let s = rng.gen_range(1..=left);
            let l = pool.choose(rng).expect("non-empty pool").clone();
            blocks.push((l, s));
            left -= s;
        }
        JordanData { blocks }
    }
}

/// Random invertible matrix with small integer entries.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> QMatrix {
    loop {
        let entries = (0..n * n).map(|_| rational::int(rng.gen_range(-3..=3))).collect();
        let m = QMatrix::new(n, n, entries).expect("n*n entries");
        if is_invertible(&m) {
            return m;
        }
    }
}

/// Random matrix similar to the given Jordan data.
pub fn random_conjugate<R: Rng>(rng: &mut R, data: &JordanData) -> QMatrix {
    let p = random_invertible(rng, data.size());
    data.to_matrix().conjugate_by(&p)
}
