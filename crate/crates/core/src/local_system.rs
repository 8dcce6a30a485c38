//! Monodromy tuples of local systems on `P^1` minus finitely many points,
//! with infinity always among the singular points.
//!
//! A tuple stores the local monodromies `A_1, ..., A_k` at finite points
//! `gamma_1, ..., gamma_k` and `A_inf` at infinity, subject to
//! `A_1 A_2 ... A_k A_inf = I` in the listed order.

use std::collections::HashSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationError};
use crate::linalg::{centralizer_dimension, is_invertible};
use crate::matrix::QMatrix;
use crate::rational::{self, Rational};
use crate::sparse::{Echelon, SparseRow};
use crate::theta::ThetaPair;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitePoint {
    #[serde(with = "rational::serde_str")]
    pub location: Rational,
    pub matrix: QMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyTuple {
    pub rank: usize,
    pub finite_points: Vec<FinitePoint>,
    pub infinity_matrix: QMatrix,
}

/// Input form of a tuple: `infinity_matrix` may be omitted, in which case
/// it is the inverse of the product of the finite monodromies.
#[derive(Clone, Debug, Deserialize)]
pub struct TupleSpec {
    pub rank: usize,
    pub finite_points: Vec<FinitePoint>,
    #[serde(default)]
    pub infinity_matrix: Option<QMatrix>,
}

impl TupleSpec {
    /// Fills in infinity if needed. Does not validate an explicitly given
    /// tuple; call [`MonodromyTuple::validate`] for that.
    pub fn into_tuple(self) -> Result<MonodromyTuple> {
        match self.infinity_matrix {
            Some(infinity_matrix) => Ok(MonodromyTuple {
                rank: self.rank,
                finite_points: self.finite_points,
                infinity_matrix,
            }),
            None => MonodromyTuple::with_computed_infinity(self.rank, self.finite_points),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointIndex {
    Finite(usize),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub rank: usize,
    /// `k + 1`; infinity is always counted.
    pub num_points: usize,
    /// Finite points in order, then infinity.
    pub centralizer_dims: Vec<usize>,
    pub index: i64,
    pub irreducible: bool,
    pub physically_rigid: bool,
}

fn point_label(location: &Rational) -> String {
    format!("point {}", rational::format(location))
}

impl MonodromyTuple {
    /// Builds a tuple with `A_inf = (A_1 ... A_k)^{-1}` and checks it.
    pub fn with_computed_infinity(rank: usize, finite_points: Vec<FinitePoint>) -> Result<Self> {
        let mut product = QMatrix::identity(rank);
        for p in &finite_points {
            if p.matrix.rows() != rank || p.matrix.cols() != rank {
                return Err(ValidationError::Shape {
                    point: point_label(&p.location),
                    rows: p.matrix.rows(),
                    cols: p.matrix.cols(),
                    rank,
                }
                .into());
            }
            product = &product * &p.matrix;
        }
        let infinity_matrix = product.inverse().ok_or_else(|| {
            Error::from(ValidationError::NonInvertible {
                point: "the product of the finite monodromies".into(),
            })
        })?;
        let t = MonodromyTuple {
            rank,
            finite_points,
            infinity_matrix,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn k(&self) -> usize {
        self.finite_points.len()
    }

    pub fn num_points(&self) -> usize {
        self.k() + 1
    }

    /// The local monodromies, finite points first and infinity last.
    pub fn matrices(&self) -> impl Iterator<Item = &QMatrix> {
        self.finite_points
            .iter()
            .map(|p| &p.matrix)
            .chain(std::iter::once(&self.infinity_matrix))
    }

    pub fn validate(&self) -> std::result::Result<(), ValidationError> {
        let n = self.rank;
        if n == 0 {
            return Err(ValidationError::ZeroRank);
        }
        if self.finite_points.is_empty() {
            return Err(ValidationError::NoFinitePoints);
        }
        let labelled = self
            .finite_points
            .iter()
            .map(|p| (point_label(&p.location), &p.matrix))
            .chain(std::iter::once(("infinity".to_string(), &self.infinity_matrix)));
        for (point, m) in labelled {
            if m.rows() != n || m.cols() != n {
                return Err(ValidationError::Shape {
                    point,
                    rows: m.rows(),
                    cols: m.cols(),
                    rank: n,
                });
            }
            if !is_invertible(m) {
                return Err(ValidationError::NonInvertible { point });
            }
        }
        let mut seen = HashSet::new();
        for p in &self.finite_points {
            if !seen.insert(&p.location) {
                return Err(ValidationError::DuplicateLocation {
                    location: rational::format(&p.location),
                });
            }
        }
        for p in &self.finite_points {
            if p.matrix.is_identity() {
                return Err(ValidationError::TrivialMonodromy {
                    location: rational::format(&p.location),
                });
            }
        }
        let product = self
            .matrices()
            .fold(QMatrix::identity(n), |acc, m| &acc * m);
        if !product.is_identity() {
            return Err(ValidationError::RelationViolated);
        }
        Ok(())
    }

    /// `dim Z(A)` for each point, finite points first.
    pub fn centralizer_dims(&self) -> Result<Vec<usize>> {
        self.validate()?;
        self.matrices().map(centralizer_dimension).collect()
    }

    /// Katz's index `(2 - (k + 1)) n^2 + sum dim Z(A_i)`, with infinity
    /// among the points.
    pub fn rigidity_index(&self) -> Result<i64> {
        let dims = self.centralizer_dims()?;
        Ok(index_from_dims(self.rank, &dims))
    }

    /// Absolute irreducibility: the unital algebra generated by the local
    /// monodromies is all of `M_n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        self.validate()?;
        let n = self.rank;
        let gens: Vec<&QMatrix> = self.matrices().collect();
        Ok(generated_algebra_dim(n, &gens) == n * n)
    }

    pub fn is_physically_rigid(&self) -> Result<bool> {
        Ok(self.is_irreducible()? && self.rigidity_index()? == 2)
    }

    pub fn rigidity_report(&self) -> Result<RigidityReport> {
        let dims = self.centralizer_dims()?;
        let index = index_from_dims(self.rank, &dims);
        let irreducible = self.is_irreducible()?;
        Ok(RigidityReport {
            rank: self.rank,
            num_points: self.num_points(),
            centralizer_dims: dims,
            index,
            irreducible,
            physically_rigid: irreducible && index == 2,
        })
    }

    /// The germ at a point as a pair: the minimal (`j_*`) pair at finite
    /// points, the `Rj_*` pair at infinity where the module is localized.
    pub fn local_pair(&self, at: PointIndex) -> Result<ThetaPair> {
        self.validate()?;
        match at {
            PointIndex::Finite(i) => {
                let p = self.finite_points.get(i).ok_or(Error::IndexOutOfRange {
                    index: i,
                    count: self.k(),
                })?;
                ThetaPair::from_star(&p.matrix)
            }
            PointIndex::Infinity => ThetaPair::from_full_direct_image(&self.infinity_matrix),
        }
    }

    /// Simultaneous conjugation `A_i -> P A_i P^{-1}`.
    pub fn conjugate_by(&self, p: &QMatrix) -> Self {
        let p_inv = p.inverse().expect("conjugating matrix must be invertible");
        let conj = |m: &QMatrix| &(p * m) * &p_inv;
        MonodromyTuple {
            rank: self.rank,
            finite_points: self
                .finite_points
                .iter()
                .map(|fp| FinitePoint {
                    location: fp.location.clone(),
                    matrix: conj(&fp.matrix),
                })
                .collect(),
            infinity_matrix: conj(&self.infinity_matrix),
        }
    }
}

fn index_from_dims(rank: usize, dims: &[usize]) -> i64 {
    let n2 = (rank * rank) as i64;
    (2 - dims.len() as i64) * n2 + dims.iter().map(|&d| d as i64).sum::<i64>()
}

fn flatten(m: &QMatrix) -> SparseRow {
    m.entries()
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Dimension of the span of all words in `gens`, grown breadth-first from
/// the identity until no new independent word appears.
fn generated_algebra_dim(n: usize, gens: &[&QMatrix]) -> usize {
    let mut echelon = Echelon::new(n * n);
    let id = QMatrix::identity(n);
    echelon.insert(flatten(&id));
    let mut frontier = vec![id];
    while !frontier.is_empty() && echelon.rank() < n * n {
        let mut next = Vec::new();
        for b in &frontier {
            for g in gens {
                let w = *g * b;
                if echelon.insert(flatten(&w)) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    echelon.rank()
}

const MAX_DRAWS: usize = 10_000;

fn random_small_matrix(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    if n == 1 {
        const VALUES: [i64; 5] = [-3, -2, -1, 2, 3];
        return QMatrix::from_ints(&[[VALUES[rng.gen_range(0..VALUES.len())]]]);
    }
    if rng.gen_bool(0.3) {
        // pseudo-reflection-like I + x y^T, so that rank(A - I) < n shows up
        let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let y: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let mut m = QMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += rational::int(x[i] * y[j]);
            }
        }
        return m;
    }
    let entries = (0..n * n).map(|_| rational::int(rng.gen_range(-2..=2))).collect();
    QMatrix::new(n, n, entries).expect("n*n entries")
}

/// Deterministic random tuple: `A_1, ..., A_k` with small integer entries
/// (singular and identity draws rejected), `A_inf = (A_1 ... A_k)^{-1}`,
/// locations `0, 1, ..., k - 1`.
pub fn random_tuple(rank: usize, k: usize, seed: u64) -> Result<MonodromyTuple> {
    if rank == 0 || k == 0 {
        return Err(Error::Generation("rank and k must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(k);
    for i in 0..k {
        let matrix = (0..MAX_DRAWS)
            .map(|_| random_small_matrix(&mut rng, rank))
            .find(|m| !m.is_identity() && is_invertible(m))
            .ok_or_else(|| {
                Error::Generation(format!("no invertible non-identity draw after {MAX_DRAWS} tries"))
            })?;
        points.push(FinitePoint {
            location: rational::int(i as i64),
            matrix,
        });
    }
    MonodromyTuple::with_computed_infinity(rank, points)
}

impl FinitePoint {
    pub fn new(location: Rational, matrix: QMatrix) -> Self {
        FinitePoint { location, matrix }
    }
}
