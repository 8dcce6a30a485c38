//! Local data of the Fourier transform by stationary phase.
//!
//! For a regular holonomic module on `P^1` localized at infinity, with
//! finite singular points `gamma_i` and local monodromies `A_i`, the
//! Fourier transform `M_F` (coordinates `x -> -d/dtau`, `d/dx -> tau`) is
//! regular at `tau = 0` and has, at `tau = infinity`, a formal
//! decomposition into exponential factors `E^{gamma_i / tau}` tensored
//! with regular parts `R_i`:
//!
//! * each finite point contributes a component of dimension
//!   `n_i = rank(A_i - I)` whose regular part has monodromy conjugate to
//!   `A_i` restricted to `im(A_i - I)`;
//! * the germ of `M_F` at `0` is minimal, of generic rank `sum n_i`, and its
//!   vanishing part is the nearby space at infinity of `M`, with monodromy
//!   `A_inf`.
//!
//! The monodromy `T0` at `0` is rebuilt from the last statement: it is the
//! monodromy of the minimal pair of dimension `sum n_i` whose `F`-monodromy
//! is `A_inf`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    centralizer_dimension, fixed_space_dim, restrict_to_image, split_unit_part,
    unit_block_partition,
};
use crate::local_system::MonodromyTuple;
use crate::matrix::QMatrix;
use crate::rational::{self, Rational};
use crate::similarity::similar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentialComponent {
    /// `c` in the exponential factor `E^{c / tau}`: the singular location.
    #[serde(rename = "exp_coefficient", with = "rational::serde_str")]
    pub coefficient: Rational,
    pub regular_monodromy: QMatrix,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourierLocalData {
    /// Rank of the source tuple.
    pub source_rank: usize,
    /// Generic rank of the transform, `sum n_i`.
    pub rank_hat: usize,
    pub zero_monodromy: QMatrix,
    pub components: Vec<ExponentialComponent>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointIdentity {
    /// Location of a finite point, or `"infinity"` for the `infinity <-> 0`
    /// exchange.
    pub point: String,
    pub lhs: i64,
    pub rhs: i64,
}

impl PointIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub rig_source: i64,
    pub rig_fourier: i64,
    pub equal: bool,
    pub per_point_identities: Vec<PointIdentity>,
    pub irregularity: usize,
    /// `false` only for forced runs on reducible input, where `equal` is
    /// reported but not claimed.
    pub hypothesis_holds: bool,
}

impl PreservationReport {
    pub fn identities_hold(&self) -> bool {
        self.per_point_identities.iter().all(PointIdentity::holds)
    }
}

const REDUCIBLE_WARNING: &str =
    "tuple is reducible; the transform data is computed but the preservation theorem does not apply";

/// Monodromy of the minimal pair `(E, F)` with `dim E = dim_e` and
/// `T_F = t_f`.
///
/// Restricting to `im(T - I)` shrinks every unit Jordan block by one and
/// drops blocks of size one, so the inverse grows each unit block of `t_f`
/// by one and pads with size-one unit blocks until the dimension is
/// `dim_e`. The part of `t_f` without eigenvalue 1 is kept as is.
pub fn minimal_pair_monodromy(t_f: &QMatrix, dim_e: usize) -> Result<QMatrix> {
    let partition = unit_block_partition(t_f)?;
    let (_, rest) = split_unit_part(t_f)?;
    let n = t_f.rows();
    let required = n + partition.num_blocks();
    if dim_e < required {
        return Err(Error::NonRealizable {
            rank_sum: dim_e,
            required,
        });
    }
    let one = Rational::from_integer(1.into());
    let mut blocks = vec![rest];
    blocks.extend(
        partition
            .sizes()
            .iter()
            .map(|&s| QMatrix::jordan_block(&one, s + 1)),
    );
    blocks.extend((0..dim_e - required).map(|_| QMatrix::identity(1)));
    Ok(QMatrix::block_diag(&blocks))
}

/// Local data of the Fourier transform of `t`.
pub fn stationary_phase(t: &MonodromyTuple) -> Result<FourierLocalData> {
    t.validate()?;
    let mut components = Vec::with_capacity(t.k());
    for p in &t.finite_points {
        let (regular_monodromy, _) = restrict_to_image(&p.matrix)?;
        components.push(ExponentialComponent {
            coefficient: p.location.clone(),
            dimension: regular_monodromy.rows(),
            regular_monodromy,
        });
    }
    let rank_hat = components.iter().map(|c| c.dimension).sum();
    let zero_monodromy = minimal_pair_monodromy(&t.infinity_matrix, rank_hat)?;

    let fixed = fixed_space_dim(&zero_monodromy)?;
    if fixed + t.rank != rank_hat {
        return Err(Error::Postcondition(format!(
            "dim ker(T0 - I) = {fixed}, expected {}",
            rank_hat - t.rank
        )));
    }
    let (vanishing, _) = restrict_to_image(&zero_monodromy)?;
    if !similar(&vanishing, &t.infinity_matrix) {
        return Err(Error::Postcondition(
            "T0 restricted to im(T0 - I) is not similar to A_inf".into(),
        ));
    }

    let warnings = if t.is_irreducible()? {
        vec![]
    } else {
        vec![REDUCIBLE_WARNING.to_string()]
    };
    Ok(FourierLocalData {
        source_rank: t.rank,
        rank_hat,
        zero_monodromy,
        components,
        warnings,
    })
}

impl FourierLocalData {
    fn sum_squares(&self) -> i64 {
        self.components
            .iter()
            .map(|c| (c.dimension * c.dimension) as i64)
            .sum()
    }

    /// `dim Z(T0) + sum dim Z(T_i) + sum n_i^2 - (sum n_i)^2`.
    pub fn rig_fourier(&self) -> Result<i64> {
        let z0 = centralizer_dimension(&self.zero_monodromy)? as i64;
        let total = self.rank_hat as i64;
        Ok(z0 + self.formal_euler_end_min()? as i64 + self.sum_squares() - total * total)
    }

    /// Irregularity at infinity of `End(N)`: `(sum n_i)^2 - sum n_i^2`.
    pub fn irregularity_end(&self) -> usize {
        let total = self.rank_hat as i64;
        (total * total - self.sum_squares()) as usize
    }

    /// Formal Euler characteristic of the minimal extension of `End(N)` at
    /// infinity: `sum dim Z(T_i)`.
    pub fn formal_euler_end_min(&self) -> Result<usize> {
        self.components
            .iter()
            .map(|c| centralizer_dimension(&c.regular_monodromy))
            .sum()
    }
}

/// Computes both rigidity indices and the per-point identities that link
/// them. Refuses reducible input unless `force` is set.
pub fn verify_preservation(t: &MonodromyTuple, force: bool) -> Result<PreservationReport> {
    let irreducible = t.is_irreducible()?;
    if !irreducible && !force {
        return Err(Error::HypothesisViolated);
    }
    let rig_source = t.rigidity_index()?;
    let data = stationary_phase(t)?;
    let rig_fourier = data.rig_fourier()?;

    let n = t.rank as i64;
    let mut identities = Vec::with_capacity(t.num_points());
    for (p, c) in t.finite_points.iter().zip(&data.components) {
        let lhs = centralizer_dimension(&p.matrix)? as i64
            - centralizer_dimension(&c.regular_monodromy)? as i64;
        let d = n - c.dimension as i64;
        identities.push(PointIdentity {
            point: rational::format(&p.location),
            lhs,
            rhs: d * d,
        });
    }
    let lhs = centralizer_dimension(&t.infinity_matrix)? as i64
        - centralizer_dimension(&data.zero_monodromy)? as i64;
    let d = data.rank_hat as i64 - n;
    identities.push(PointIdentity {
        point: "infinity".into(),
        lhs,
        rhs: -d * d,
    });

    Ok(PreservationReport {
        rig_source,
        rig_fourier,
        equal: rig_source == rig_fourier,
        per_point_identities: identities,
        irregularity: data.irregularity_end(),
        hypothesis_holds: irreducible,
    })
}
