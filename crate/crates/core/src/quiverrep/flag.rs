//! Stable points via partial flags with a flag-lowering endomorphism, and
//! the map `alpha` back from the stable locus to such flags.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{GroupElement, QuiverRep};
use crate::error::{Error, Result};
use crate::exactmat::{ExactMatrix, FieldSpec};
use crate::partitions::DimVector;

/// A partial flag `E_1 ⊆ ... ⊆ E_t = k^(n_t)` with an endomorphism mapping
/// each `E_i` into `E_(i-1)` (`E_0 = 0`).
///
/// `flag[i]` is an `n_t x n_(i+1)` matrix whose columns are a basis of
/// `E_(i+1)`. Only the spans matter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagPoint {
    flag: Vec<ExactMatrix>,
    endo: ExactMatrix,
}

impl FlagPoint {
    pub fn new(flag: Vec<ExactMatrix>, endo: ExactMatrix) -> Result<Self> {
        let Some(top) = flag.last() else {
            return Err(Error::InvalidFlag("empty flag".into()));
        };
        let n = top.rows();
        if endo.shape() != (n, n) {
            return Err(Error::InvalidFlag(format!(
                "endomorphism has shape {:?}",
                endo.shape()
            )));
        }
        if top.cols() != n || top.rank() != n {
            return Err(Error::InvalidFlag(
                "last subspace is not the whole space".into(),
            ));
        }
        for (i, basis) in flag.iter().enumerate() {
            if basis.rows() != n || basis.field() != endo.field() {
                return Err(Error::InvalidFlag(format!(
                    "E_{} lives in the wrong space",
                    i + 1
                )));
            }
            if !basis.is_injective() {
                return Err(Error::InvalidFlag(format!(
                    "basis of E_{} is dependent",
                    i + 1
                )));
            }
            if i > 0
                && (basis.cols() <= flag[i - 1].cols()
                    || !basis.column_space_contains(&flag[i - 1])?)
            {
                return Err(Error::InvalidFlag(format!(
                    "E_{} does not strictly contain E_{}",
                    i + 1,
                    i
                )));
            }
            let image = endo.mul(basis)?;
            let lowered = if i == 0 {
                image.is_zero()
            } else {
                flag[i - 1].column_space_contains(&image)?
            };
            if !lowered {
                return Err(Error::InvalidFlag(format!(
                    "endomorphism does not map E_{} into E_{}",
                    i + 1,
                    i
                )));
            }
        }
        Ok(FlagPoint { flag, endo })
    }

    /// The coordinate flag `E_i = span(e_1, ..., e_(n_i))`.
    pub fn standard(dims: &DimVector, endo: ExactMatrix) -> Result<Self> {
        let n = dims.last();
        let field = endo.field();
        let flag = dims
            .dims()
            .iter()
            .map(|&k| ExactMatrix::inclusion(field, n, k))
            .collect();
        Self::new(flag, endo)
    }

    /// A uniformly random endomorphism lowering the coordinate flag: the
    /// columns indexed by `n_(i-1)..n_i` are supported on the first
    /// `n_(i-1)` rows.
    pub fn random_standard_endo<R: Rng + ?Sized>(
        dims: &DimVector,
        field: FieldSpec,
        rng: &mut R,
    ) -> ExactMatrix {
        let n = dims.last();
        let d = dims.dims();
        let mut endo = ExactMatrix::zeros(field, n, n);
        let mut lower = 0;
        for &upper in d {
            for c in lower..upper {
                for r in 0..lower {
                    endo.set(r, c, field.random(rng));
                }
            }
            lower = upper;
        }
        endo
    }

    /// A random point: a random flag in general position, a random lowering
    /// endomorphism, and random bases of each subspace.
    pub fn random<R: Rng + ?Sized>(
        dims: &DimVector,
        field: FieldSpec,
        rng: &mut R,
    ) -> Result<Self> {
        if !dims.is_strictly_monotone() {
            return Err(Error::NotMonotone {
                op: "FlagPoint::random",
                kind: "strictly monotone",
                dims: dims.dims().to_vec(),
            });
        }
        let n = dims.last();
        let g = ExactMatrix::random_invertible(field, n, rng);
        let endo = g
            .mul(&Self::random_standard_endo(dims, field, rng))?
            .mul(&g.inverse()?)?;
        let flag = dims
            .dims()
            .iter()
            .map(|&k| {
                let change = ExactMatrix::random_invertible(field, k, rng);
                g.submatrix(0, n, 0, k).mul(&change)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(flag, endo)
    }

    pub fn flag(&self) -> &[ExactMatrix] {
        &self.flag
    }

    pub fn endo(&self) -> &ExactMatrix {
        &self.endo
    }

    pub fn dims(&self) -> DimVector {
        DimVector::new(self.flag.iter().map(ExactMatrix::cols).collect())
            .expect("flag dimensions are positive")
    }

    /// Subspace-wise equality of the flags and exact equality of the
    /// endomorphisms.
    pub fn same_point(&self, other: &FlagPoint) -> Result<bool> {
        if self.flag.len() != other.flag.len() || self.endo != other.endo {
            return Ok(false);
        }
        for (x, y) in self.flag.iter().zip(&other.flag) {
            if x.shape() != y.shape() || !x.same_column_space(y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The stable point attached to a flag: `U_i` is `E_i` in the given basis
/// (`U_t` in standard coordinates), `A_i` the inclusion `E_i ⊆ E_(i+1)` and
/// `B_i` the endomorphism restricted to `E_(i+1) -> E_i`.
pub fn from_flag_point(x: &FlagPoint, field: FieldSpec) -> Result<QuiverRep> {
    if x.endo.field() != field {
        return Err(Error::FieldMismatch {
            left: field.p(),
            right: x.endo.field().p(),
        });
    }
    let dims = x.dims();
    let t = dims.len();
    let mut bases: Vec<ExactMatrix> = x.flag[..t - 1].to_vec();
    bases.push(ExactMatrix::identity(field, dims.last()));

    let flag_err = |e: Error| match e {
        Error::NoSolution => Error::InvalidFlag("endomorphism does not lower the flag".into()),
        other => other,
    };
    let mut a = Vec::with_capacity(t - 1);
    let mut b = Vec::with_capacity(t - 1);
    for i in 0..t - 1 {
        a.push(bases[i + 1].solve_right(&bases[i]).map_err(flag_err)?);
        let image = x.endo.mul(&bases[i + 1])?;
        b.push(bases[i].solve_right(&image).map_err(flag_err)?);
    }
    let z = QuiverRep::new(dims, field, a, b)?;
    if !z.check_relations() {
        return Err(Error::Internal(
            "flag construction violates the relations".into(),
        ));
    }
    Ok(z)
}

/// `(E_1 ⊆ ... ⊆ E_t, theta(z))` with `E_i = Im A_(t-1)...A_i`.
pub fn alpha(z: &QuiverRep) -> Result<FlagPoint> {
    if !z.check_relations() {
        return Err(Error::RelationsViolated);
    }
    if let Some(index) = z.first_non_injective() {
        return Err(Error::Unstable { index });
    }
    let endo = z.theta()?;
    let t = z.dims().len();
    let n = z.dims().last();
    let mut flag = Vec::with_capacity(t);
    flag.push(ExactMatrix::identity(z.field(), n));
    for i in (1..t).rev() {
        let next = flag.last().expect("nonempty").mul(z.a(i))?;
        flag.push(next);
    }
    flag.reverse();
    FlagPoint::new(flag, endo)
        .map_err(|e| Error::Internal(format!("alpha produced an invalid flag point: {e}")))
}

/// A random stable point: the flag construction on the coordinate flag with
/// a random lowering endomorphism, moved by a random element of `G`.
pub fn sample_stable<R: Rng + ?Sized>(
    dims: &DimVector,
    field: FieldSpec,
    rng: &mut R,
) -> Result<QuiverRep> {
    if !dims.is_strictly_monotone() {
        return Err(Error::NotMonotone {
            op: "sample_stable",
            kind: "strictly monotone",
            dims: dims.dims().to_vec(),
        });
    }
    let endo = FlagPoint::random_standard_endo(dims, field, rng);
    let x = FlagPoint::standard(dims, endo)?;
    let z = from_flag_point(&x, field)?;
    z.act(&GroupElement::random_g(dims, field, rng))
}
