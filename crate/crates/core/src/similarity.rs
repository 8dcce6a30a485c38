//! Similarity invariants: invariant factors of `xI - A` via a Smith normal
//! form over `Q[x]`.

use serde::Serialize;

use crate::matrix::QMatrix;
use crate::poly::QPoly;

/// Non-constant invariant factors of `xI - A`, monic, each dividing the
/// next. Two square matrices are similar exactly when these agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SimilarityInvariant {
    pub invariant_factors: Vec<QPoly>,
}

impl SimilarityInvariant {
    pub fn characteristic_polynomial(&self) -> QPoly {
        self.invariant_factors
            .iter()
            .fold(QPoly::one(), |acc, f| acc.mul(f))
    }

    /// The last invariant factor.
    pub fn minimal_polynomial(&self) -> QPoly {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(QPoly::one)
    }
}

struct PolyMatrix {
    n: usize,
    cells: Vec<QPoly>,
}

impl PolyMatrix {
    fn get(&self, i: usize, j: usize) -> &QPoly {
        &self.cells[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, p: QPoly) {
        self.cells[i * self.n + j] = p;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.n {
                self.cells.swap(a * self.n + j, b * self.n + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.n {
                self.cells.swap(i * self.n + a, i * self.n + b);
            }
        }
    }

    /// `row[t] -= q * row[s]`, columns `from..`.
    fn row_sub(&mut self, t: usize, s: usize, q: &QPoly, from: usize) {
        for j in from..self.n {
            let d = self.get(s, j).mul(q);
            if !d.is_zero() {
                let v = self.get(t, j).sub(&d);
                self.set(t, j, v);
            }
        }
    }

    /// `col[t] -= q * col[s]`, rows `from..`.
    fn col_sub(&mut self, t: usize, s: usize, q: &QPoly, from: usize) {
        for i in from..self.n {
            let d = self.get(i, s).mul(q);
            if !d.is_zero() {
                let v = self.get(i, t).sub(&d);
                self.set(i, t, v);
            }
        }
    }
}

/// Smith normal form of `xI - A`; returns the non-constant diagonal
/// entries.
pub fn invariant_factors(a: &QMatrix) -> SimilarityInvariant {
    assert!(a.is_square(), "invariant factors need a square matrix");
    let n = a.rows();
    let mut m = PolyMatrix {
        n,
        cells: Vec::with_capacity(n * n),
    };
    for i in 0..n {
        for j in 0..n {
            let c = -a[(i, j)].clone();
            let p = if i == j {
                QPoly::new(vec![c, num_traits::One::one()])
            } else {
                QPoly::constant(c)
            };
            m.cells.push(p);
        }
    }

    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            // degree-minimal pivot in the trailing block
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter_map(|(i, j)| m.get(i, j).degree().map(|d| (d, i, j)))
                .min();
            let Some((_, pi, pj)) = pivot else {
                break;
            };
            m.swap_rows(k, pi);
            m.swap_cols(k, pj);
            let p = m.get(k, k).clone();

            let mut clean = true;
            for i in k + 1..n {
                if m.get(i, k).is_zero() {
                    continue;
                }
                let (q, r) = m.get(i, k).div_rem(&p);
                m.row_sub(i, k, &q, k);
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                if m.get(k, j).is_zero() {
                    continue;
                }
                let (q, r) = m.get(k, j).div_rem(&p);
                m.col_sub(j, k, &q, k);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            let offender = (k + 1..n)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !p.divides(m.get(i, j)));
            match offender {
                Some((i, _)) => {
                    // row k += row i, then the next pass reduces the new remainder
                    m.row_sub(k, i, &QPoly::constant(-<crate::Rational as num_traits::One>::one()), k);
                }
                None => break,
            }
        }
        diag.push(m.get(k, k).monic());
    }

    let factors = diag
        .into_iter()
        .filter(|p| p.degree().is_some_and(|d| d > 0))
        .collect();
    SimilarityInvariant {
        invariant_factors: factors,
    }
}

pub fn similar(a: &QMatrix, b: &QMatrix) -> bool {
    a.is_square()
        && b.is_square()
        && a.rows() == b.rows()
        && invariant_factors(a) == invariant_factors(b)
}
