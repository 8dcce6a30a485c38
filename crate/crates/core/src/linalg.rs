//! Exact linear algebra over the rationals: reduced row echelon form,
//! kernels and images, centralizer dimensions and unit-eigenvalue Jordan
//! data.
//!
//! No eigenvalues are ever computed. Everything is expressed through ranks
//! of rational matrices, so the answers agree with the corresponding
//! quantities over any extension field.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::sparse::{self, SparseRow};

/// Reduced row echelon form with leftmost pivots, rows processed top-down.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: QMatrix,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &QMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = a[(row, col)].recip();
        a.scale_row(row, &inv);
        for r in 0..a.rows() {
            if r != row && !a[(r, col)].is_zero() {
                let f = -a[(r, col)].clone();
                a.add_row_multiple(r, row, &f);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { reduced: a, pivots }
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).pivots.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefDecomposition {
    pub rank: usize,
    /// `cols x (cols - rank)`; one column per free variable.
    pub kernel_basis: QMatrix,
    /// `rows x rank`; the pivot columns of the input.
    pub image_basis: QMatrix,
}

pub fn rref_decompose(m: &QMatrix) -> RrefDecomposition {
    let Rref { reduced, pivots } = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut kernel = QMatrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        kernel[(f, k)] = num_traits::One::one();
        for (r, &p) in pivots.iter().enumerate() {
            kernel[(p, k)] = -reduced[(r, f)].clone();
        }
    }
    RrefDecomposition {
        rank: pivots.len(),
        kernel_basis: kernel,
        image_basis: m.select_columns(&pivots),
    }
}

/// Coordinates of the columns of `vectors` in the basis formed by the
/// columns of `basis`.
///
/// Fails when `basis` has dependent columns or some vector lies outside
/// its span.
pub fn coordinates(basis: &QMatrix, vectors: &QMatrix) -> Result<QMatrix> {
    let r = basis.cols();
    let Rref { reduced, pivots } = rref(&basis.hstack(vectors)?);
    if pivots.len() != r || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return Err(Error::DimensionMismatch(
            "basis columns are not linearly independent, or a vector lies outside their span"
                .into(),
        ));
    }
    let mut out = QMatrix::zeros(r, vectors.cols());
    for i in 0..r {
        for j in 0..vectors.cols() {
            out[(i, j)] = reduced[(i, r + j)].clone();
        }
    }
    Ok(out)
}

fn ensure_square(a: &QMatrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "expected a square matrix, found {}x{}",
            a.rows(),
            a.cols()
        )))
    }
}

/// Square and invertible, otherwise an invalid-monodromy error.
pub fn ensure_invertible(a: &QMatrix) -> Result<()> {
    ensure_square(a)?;
    if rank(a) != a.rows() {
        return Err(Error::InvalidMonodromy(format!(
            "{}x{} matrix is singular",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

pub fn is_invertible(a: &QMatrix) -> bool {
    ensure_invertible(a).is_ok()
}

/// Dimension of `{X : AX = XA}`, from the rank of the `n^2 x n^2`
/// commutator system in the unknowns `X_{pq}`.
pub fn centralizer_dimension(a: &QMatrix) -> Result<usize> {
    ensure_square(a)?;
    let n = a.rows();
    let var = |p: usize, q: usize| p * n + q;
    let rows = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| {
        // (AX - XA)_{ij} = sum_k A_ik X_kj - sum_k X_ik A_kj
        let mut row: Vec<(usize, crate::Rational)> = Vec::with_capacity(2 * n);
        for k in 0..n {
            if !a[(i, k)].is_zero() {
                row.push((var(k, j), a[(i, k)].clone()));
            }
            if !a[(k, j)].is_zero() {
                row.push((var(i, k), -a[(k, j)].clone()));
            }
        }
        canonical_row(row)
    });
    Ok(n * n - sparse::sparse_rank(rows, n * n))
}

fn canonical_row(mut row: Vec<(usize, crate::Rational)>) -> SparseRow {
    row.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, x) in row {
        match out.last_mut() {
            Some((last, acc)) if *last == c => *acc += x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// `dim ker(A - I)`.
pub fn fixed_space_dim(a: &QMatrix) -> Result<usize> {
    ensure_invertible(a)?;
    Ok(a.rows() - rank(&a.minus_identity()))
}

/// Jordan block sizes for the eigenvalue 1, largest first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnitBlockPartition(Vec<usize>);

impl UnitBlockPartition {
    /// Sorts the sizes into non-increasing order; zero sizes are dropped.
    pub fn new(mut sizes: Vec<usize>) -> Self {
        sizes.retain(|&s| s > 0);
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        UnitBlockPartition(sizes)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn num_blocks(&self) -> usize {
        self.0.len()
    }

    /// `dim ker((A - I)^n)`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Reads the eigenvalue-1 Jordan structure from the rank sequence
/// `r_j = rank((A - I)^j)`: there are `r_{j-1} - r_j` blocks of size `>= j`.
pub fn unit_block_partition(a: &QMatrix) -> Result<UnitBlockPartition> {
    ensure_invertible(a)?;
    let n = a.rows();
    let nilp = a.minus_identity();
    let mut ranks = vec![n];
    let mut power = QMatrix::identity(n);
    for _ in 0..n {
        power = &power * &nilp;
        let r = rank(&power);
        ranks.push(r);
        if r == *ranks.get(ranks.len() - 2).unwrap() {
            break;
        }
    }
    // at_least[j] = number of blocks of size >= j + 1
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for (j, &count) in at_least.iter().enumerate() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(j + 1, count - next));
    }
    Ok(UnitBlockPartition::new(sizes))
}

/// Restriction of `A` to the invariant subspace `im(A - I)`.
///
/// Returns `(R, basis)` where the columns of `basis` are the pivot columns
/// of `A - I` and `R` is the matrix of `A` in that basis.
pub fn restrict_to_image(a: &QMatrix) -> Result<(QMatrix, QMatrix)> {
    ensure_invertible(a)?;
    let m = a.minus_identity();
    let Rref { reduced, pivots } = rref(&m);
    let basis = m.select_columns(&pivots);
    // rows of the rref are the coordinates of the columns of A - I
    let coords = reduced.top_rows(pivots.len());
    let restricted = (&coords * &basis).plus_identity();
    Ok((restricted, basis))
}

/// Splits `A` along `ker((A - I)^n) (+) im((A - I)^n)`.
///
/// Returns the restrictions `(A_unit, A_rest)` in the kernel and image
/// bases of [`rref_decompose`]. `A_unit` is unipotent; `A_rest - I` is
/// invertible.
pub fn split_unit_part(a: &QMatrix) -> Result<(QMatrix, QMatrix)> {
    ensure_invertible(a)?;
    let n = a.rows();
    let nilp = a.minus_identity().pow(n);
    let dec = rref_decompose(&nilp);
    let unit = coordinates(&dec.kernel_basis, &(a * &dec.kernel_basis))?;
    let rest = coordinates(&dec.image_basis, &(a * &dec.image_basis))?;
    Ok((unit, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn j2() -> QMatrix {
        QMatrix::from_ints(&[[1, 1], [0, 1]])
    }

    /// Dense `n^2 x n^2` commutator system, an independent route to the
    /// centralizer dimension.
    fn dense_centralizer_dim(a: &QMatrix) -> usize {
        let n = a.rows();
        let mut sys = QMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    sys[(i * n + j, k * n + j)] += a[(i, k)].clone();
                    sys[(i * n + j, i * n + k)] -= a[(k, j)].clone();
                }
            }
        }
        n * n - rank(&sys)
    }

    #[test]
    fn rref_examples() {
        let d = rref_decompose(&QMatrix::identity(2));
        assert_eq!(d.rank, 2);
        assert_eq!(d.kernel_basis.cols(), 0);
        assert_eq!(d.image_basis, QMatrix::identity(2));

        let d = rref_decompose(&QMatrix::zeros(2, 2));
        assert_eq!(d.rank, 0);
        assert_eq!(d.kernel_basis, QMatrix::identity(2));
        assert_eq!(d.image_basis.cols(), 0);

        let m = QMatrix::from_ints(&[[1, 2], [2, 4]]);
        let d = rref_decompose(&m);
        assert_eq!(d.rank, 1);
        assert_eq!(d.kernel_basis, QMatrix::from_ints(&[[-2], [1]]));
        assert_eq!(d.image_basis, QMatrix::from_ints(&[[1], [2]]));
        assert!((&m * &d.kernel_basis).is_zero());
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(centralizer_dimension(&QMatrix::identity(3)).unwrap(), 9);
        assert_eq!(centralizer_dimension(&QMatrix::diag(&[int(1), int(2)])).unwrap(), 2);
        assert_eq!(centralizer_dimension(&j2()).unwrap(), 2);
        let j21 = QMatrix::block_diag(&[j2(), QMatrix::identity(1)]);
        assert_eq!(centralizer_dimension(&j21).unwrap(), 5);
        assert_eq!(dense_centralizer_dim(&j21), 5);
        assert_eq!(centralizer_dimension(&QMatrix::identity(0)).unwrap(), 0);
        assert!(matches!(
            centralizer_dimension(&QMatrix::zeros(2, 3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn sparse_and_dense_centralizer_agree() {
        let mats = [
            QMatrix::from_ints(&[[2, 1, 0], [1, 3, -1], [0, 1, 1]]),
            QMatrix::from_ints(&[[0, 1], [-1, 0]]),
            QMatrix::from_ints(&[[1, 2, 3], [2, 4, 6], [3, 6, 9]]),
            QMatrix::block_diag(&[j2(), j2()]),
        ];
        for m in &mats {
            assert_eq!(centralizer_dimension(m).unwrap(), dense_centralizer_dim(m), "{m:?}");
        }
    }

    #[test]
    fn fixed_space_examples() {
        assert_eq!(fixed_space_dim(&QMatrix::identity(4)).unwrap(), 4);
        assert_eq!(fixed_space_dim(&QMatrix::diag(&[int(2), int(3)])).unwrap(), 0);
        assert_eq!(fixed_space_dim(&j2()).unwrap(), 1);
        assert!(matches!(
            fixed_space_dim(&QMatrix::from_ints(&[[1, 0], [0, 0]])),
            Err(Error::InvalidMonodromy(_))
        ));
    }

    #[test]
    fn unit_partition_examples() {
        assert_eq!(unit_block_partition(&QMatrix::identity(2)).unwrap().sizes(), &[1, 1]);
        assert!(unit_block_partition(&QMatrix::diag(&[int(2), int(3)])).unwrap().is_empty());
        assert_eq!(unit_block_partition(&j2()).unwrap().sizes(), &[2]);
        let m = QMatrix::block_diag(&[
            QMatrix::jordan_block(&int(1), 3),
            QMatrix::jordan_block(&int(5), 2),
            QMatrix::jordan_block(&int(1), 1),
            QMatrix::jordan_block(&int(1), 3),
        ]);
        assert_eq!(unit_block_partition(&m).unwrap().sizes(), &[3, 3, 1]);
        assert!(unit_block_partition(&QMatrix::zeros(1, 1)).is_err());
    }

    #[test]
    fn restrict_examples() {
        let (r, b) = restrict_to_image(&QMatrix::diag(&[int(2), int(1)])).unwrap();
        assert_eq!(r, QMatrix::from_ints(&[[2]]));
        assert_eq!(b, QMatrix::from_ints(&[[1], [0]]));
        let (r, b) = restrict_to_image(&QMatrix::identity(3)).unwrap();
        assert_eq!((r.rows(), r.cols(), b.rows(), b.cols()), (0, 0, 3, 0));
        let (r, _) = restrict_to_image(&j2()).unwrap();
        assert_eq!(r, QMatrix::from_ints(&[[1]]));
    }

    #[test]
    fn restrict_is_matrix_of_restriction() {
        let a = QMatrix::from_ints(&[[2, 1, 0], [1, 1, 0], [0, 3, 1]]);
        let (r, b) = restrict_to_image(&a).unwrap();
        assert_eq!(&a * &b, &b * &r);
        assert!(is_invertible(&r));
    }

    #[test]
    fn split_examples() {
        let (u, r) = split_unit_part(&QMatrix::identity(2)).unwrap();
        assert_eq!(u, QMatrix::identity(2));
        assert_eq!((r.rows(), r.cols()), (0, 0));
        let (u, r) = split_unit_part(&QMatrix::diag(&[int(2), int(3)])).unwrap();
        assert_eq!(u.rows(), 0);
        assert_eq!(r, QMatrix::diag(&[int(2), int(3)]));
        let (u, r) = split_unit_part(&QMatrix::diag(&[int(1), int(5)])).unwrap();
        assert_eq!(u, QMatrix::from_ints(&[[1]]));
        assert_eq!(r, QMatrix::from_ints(&[[5]]));
    }

    #[test]
    fn coordinates_rejects_outside_span() {
        let basis = QMatrix::from_ints(&[[1], [0]]);
        assert!(coordinates(&basis, &QMatrix::from_ints(&[[0], [1]])).is_err());
        assert_eq!(
            coordinates(&basis, &QMatrix::from_ints(&[[3], [0]])).unwrap(),
            QMatrix::from_ints(&[[3]])
        );
    }
}
