//! Pairs of vector spaces `(E, F, u: E -> F, v: F -> E)`.
//!
//! A pair encodes the germ at a point of a perverse complex (equivalently
//! a regular holonomic D-module germ) on a disk: `E` carries the generic
//! monodromy `T_E = I + vu` and `F` carries `T_F = I + uv`. The three
//! extensions of a local system with monodromy `T` across the puncture are
//!
//! | extension | `F`           | `u`                    | `v`       |
//! |-----------|---------------|------------------------|-----------|
//! | `j_!`     | `E`           | `I`                    | `T - I`   |
//! | `j_*`     | `im(T - I)`   | `T - I` (corestricted) | inclusion |
//! | `Rj_*`    | `E`           | `T - I`                | `I`       |
//!
//! The `j_*` pair is the minimal extension: `u` is onto and `v` is one to
//! one, so the germ has neither sub-objects nor quotients supported at the
//! point.

use serde::{de, Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, centralizer_dimension, ensure_invertible, fixed_space_dim, rank};
use crate::matrix::QMatrix;
use crate::similarity::similar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaPair {
    #[serde(rename = "dim_E")]
    dim_e: usize,
    #[serde(rename = "dim_F")]
    dim_f: usize,
    u: QMatrix,
    v: QMatrix,
}

impl ThetaPair {
    /// Checks shapes and the invertibility of `I + vu` and `I + uv`.
    pub fn new(u: QMatrix, v: QMatrix) -> Result<Self> {
        let (dim_f, dim_e) = (u.rows(), u.cols());
        if v.rows() != dim_e || v.cols() != dim_f {
            return Err(Error::InvalidPair(format!(
                "u is {}x{} but v is {}x{}",
                u.rows(),
                u.cols(),
                v.rows(),
                v.cols()
            )));
        }
        let pair = ThetaPair { dim_e, dim_f, u, v };
        if !linalg::is_invertible(&pair.monodromy_e()) || !linalg::is_invertible(&pair.monodromy_f())
        {
            return Err(Error::InvalidPair("I + vu or I + uv is singular".into()));
        }
        Ok(pair)
    }

    /// The pair `0 <-> 0`.
    pub fn zero() -> Self {
        ThetaPair {
            dim_e: 0,
            dim_f: 0,
            u: QMatrix::zeros(0, 0),
            v: QMatrix::zeros(0, 0),
        }
    }

    pub fn dim_e(&self) -> usize {
        self.dim_e
    }

    pub fn dim_f(&self) -> usize {
        self.dim_f
    }

    pub fn u(&self) -> &QMatrix {
        &self.u
    }

    pub fn v(&self) -> &QMatrix {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.dim_e == 0 && self.dim_f == 0
    }

    /// `T_E = I + vu`.
    pub fn monodromy_e(&self) -> QMatrix {
        (&self.v * &self.u).plus_identity()
    }

    /// `T_F = I + uv`.
    pub fn monodromy_f(&self) -> QMatrix {
        (&self.u * &self.v).plus_identity()
    }

    /// `j_!`: `F = E`, `u = I`, `v = T - I`.
    pub fn from_shriek(t: &QMatrix) -> Result<Self> {
        ensure_invertible(t)?;
        Ok(ThetaPair {
            dim_e: t.rows(),
            dim_f: t.rows(),
            u: QMatrix::identity(t.rows()),
            v: t.minus_identity(),
        })
    }

    /// `j_*`: `F = im(T - I)` in the pivot-column basis, `u` the
    /// corestriction of `T - I`, `v` the inclusion.
    pub fn from_star(t: &QMatrix) -> Result<Self> {
        ensure_invertible(t)?;
        let m = t.minus_identity();
        let linalg::Rref { reduced, pivots } = linalg::rref(&m);
        Ok(ThetaPair {
            dim_e: t.rows(),
            dim_f: pivots.len(),
            u: reduced.top_rows(pivots.len()),
            v: m.select_columns(&pivots),
        })
    }

    /// `Rj_*`: `F = E`, `u = T - I`, `v = I`.
    pub fn from_full_direct_image(t: &QMatrix) -> Result<Self> {
        ensure_invertible(t)?;
        Ok(ThetaPair {
            dim_e: t.rows(),
            dim_f: t.rows(),
            u: t.minus_identity(),
            v: QMatrix::identity(t.rows()),
        })
    }

    /// The `j_*` pair of the generic monodromy.
    pub fn minimal_extension(&self) -> Self {
        Self::from_star(&self.monodromy_e()).expect("I + vu is invertible for a valid pair")
    }

    /// `u` onto and `v` one to one.
    pub fn is_minimal(&self) -> bool {
        rank(&self.u) == self.dim_f && rank(&self.v) == self.dim_f
    }

    /// Both sides of `dim Z(T_E) - dim Z(T_F) = (dim ker(T_E - I))^2`,
    /// which holds for every nonzero minimal pair.
    pub fn centralizer_identity_check(&self) -> Result<(i64, i64)> {
        if self.is_zero() {
            return Err(Error::Precondition("the zero pair is excluded".into()));
        }
        if !self.is_minimal() {
            return Err(Error::Precondition("pair is not minimal".into()));
        }
        let te = self.monodromy_e();
        let lhs = centralizer_dimension(&te)? as i64
            - centralizer_dimension(&self.monodromy_f())? as i64;
        let k = fixed_space_dim(&te)? as i64;
        Ok((lhs, k * k))
    }

    /// Equal dimensions, similar monodromies and equal ranks of `u`, `v`.
    ///
    /// This is weaker than quiver isomorphism in general but separates all
    /// the pairs produced by the constructors above.
    pub fn is_isomorphic(&self, other: &ThetaPair) -> bool {
        self.dim_e == other.dim_e
            && self.dim_f == other.dim_f
            && rank(&self.u) == rank(&other.u)
            && rank(&self.v) == rank(&other.v)
            && similar(&self.monodromy_e(), &other.monodromy_e())
            && similar(&self.monodromy_f(), &other.monodromy_f())
    }
}

impl<'de> Deserialize<'de> for ThetaPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(rename = "dim_E")]
            dim_e: usize,
            #[serde(rename = "dim_F")]
            dim_f: usize,
            u: QMatrix,
            v: QMatrix,
        }
        let raw = Raw::deserialize(d)?;
        let u = raw
            .u
            .reshape_empty(raw.dim_f, raw.dim_e)
            .map_err(de::Error::custom)?;
        let v = raw
            .v
            .reshape_empty(raw.dim_e, raw.dim_f)
            .map_err(de::Error::custom)?;
        ThetaPair::new(u, v).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn j2() -> QMatrix {
        QMatrix::from_ints(&[[1, 1], [0, 1]])
    }

    #[test]
    fn monodromies() {
        let p = ThetaPair::from_star(&j2()).unwrap();
        assert_eq!(p.monodromy_e(), j2());
        assert_eq!((p.dim_e(), p.dim_f()), (2, 1));
        assert_eq!(p.monodromy_f(), QMatrix::from_ints(&[[1]]));

        let p = ThetaPair::new(QMatrix::zeros(1, 2), QMatrix::zeros(2, 1)).unwrap();
        assert!(p.monodromy_e().is_identity());

        let t = QMatrix::from_ints(&[[2, 1], [1, 1]]);
        assert_eq!(ThetaPair::from_shriek(&t).unwrap().monodromy_f(), t);
    }

    #[test]
    fn constructors() {
        assert_eq!(ThetaPair::from_star(&QMatrix::identity(2)).unwrap().dim_f(), 0);
        let p = ThetaPair::from_full_direct_image(&QMatrix::diag(&[int(2)])).unwrap();
        assert_eq!((p.dim_e(), p.dim_f()), (1, 1));
        assert_eq!(p.u(), &QMatrix::from_ints(&[[1]]));
        assert_eq!(p.v(), &QMatrix::from_ints(&[[1]]));
        assert!(matches!(
            ThetaPair::from_star(&QMatrix::zeros(2, 2)),
            Err(Error::InvalidMonodromy(_))
        ));
    }

    #[test]
    fn minimal_extension_examples() {
        let star = ThetaPair::from_star(&j2()).unwrap();
        assert!(star.minimal_extension().is_isomorphic(&star));
        assert_eq!(ThetaPair::from_shriek(&j2()).unwrap().minimal_extension().dim_f(), 1);
        let t = QMatrix::from_ints(&[[2, 1], [0, 3]]);
        let full = ThetaPair::from_full_direct_image(&t).unwrap();
        let me = full.minimal_extension();
        assert_eq!(me.dim_f(), me.dim_e());
        assert!(similar(&me.monodromy_f(), &t));
        assert!(me.is_isomorphic(&full));
    }

    #[test]
    fn minimality() {
        assert!(ThetaPair::from_star(&j2()).unwrap().is_minimal());
        assert!(!ThetaPair::from_shriek(&j2()).unwrap().is_minimal());
        let e1 = ThetaPair::new(QMatrix::zeros(0, 1), QMatrix::zeros(1, 0)).unwrap();
        assert!(e1.is_minimal());
    }

    #[test]
    fn centralizer_identity_examples() {
        let check = |t: QMatrix| ThetaPair::from_star(&t).unwrap().centralizer_identity_check().unwrap();
        assert_eq!(check(j2()), (1, 1));
        assert_eq!(check(QMatrix::diag(&[int(2), int(3)])), (0, 0));
        assert_eq!(check(QMatrix::identity(3)), (9, 9));
        assert!(ThetaPair::zero().centralizer_identity_check().is_err());
        assert!(ThetaPair::from_shriek(&j2())
            .unwrap()
            .centralizer_identity_check()
            .is_err());
    }

    #[test]
    fn rejects_invalid_pairs() {
        // I + vu = 0
        let u = QMatrix::from_ints(&[[1]]);
        let v = QMatrix::from_ints(&[[-1]]);
        assert!(ThetaPair::new(u, v).is_err());
        assert!(ThetaPair::new(QMatrix::zeros(1, 2), QMatrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn json_shape() {
        let p = ThetaPair::from_star(&QMatrix::identity(2)).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"dim_E":2,"dim_F":0,"u":[],"v":[[],[]]}"#);
        let back: ThetaPair = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let p = ThetaPair::from_star(&j2()).unwrap();
        let back: ThetaPair = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
