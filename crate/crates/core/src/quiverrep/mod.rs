//! Representations of the type-A chain
//!
//! ```text
//! U_1 <-> U_2 <-> ... <-> U_t,   A_i: U_i -> U_(i+1),  B_i: U_(i+1) -> U_i
//! ```
//!
//! and the variety `Z` cut out by `B_1A_1 = 0`, `B_iA_i = A_(i-1)B_(i-1)`.
//! Membership in `Z` is checked, not enforced by the type.

mod chain;
mod flag;
mod subspace;
mod witness;

pub use chain::{
    build_from_chain, chain_to_type, greedy_chain, max_reachable_type, random_chain,
    reachable_types,
};
pub use flag::{alpha, from_flag_point, sample_stable, FlagPoint};
pub use subspace::{is_stable_by_subspaces, subspaces};
pub use witness::{witness_reducible, ReducibilityReport, Witness, WitnessKind};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::{ExactMatrix, FieldSpec};
use crate::partitions::DimVector;

/// A tuple `(A_1, B_1, ..., A_(t-1), B_(t-1))` on the chain with dimension
/// vector `dims`. `a[i]` is `A_(i+1)`, of shape `n_(i+2) x n_(i+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RepRepr", into = "RepRepr")]
pub struct QuiverRep {
    dims: DimVector,
    field: FieldSpec,
    a: Vec<ExactMatrix>,
    b: Vec<ExactMatrix>,
}

#[derive(Serialize, Deserialize)]
struct RepRepr {
    dims: DimVector,
    p: FieldSpec,
    #[serde(rename = "A")]
    a: Vec<ExactMatrix>,
    #[serde(rename = "B")]
    b: Vec<ExactMatrix>,
}

impl TryFrom<RepRepr> for QuiverRep {
    type Error = Error;

    fn try_from(r: RepRepr) -> Result<Self> {
        QuiverRep::new(r.dims, r.p, r.a, r.b)
    }
}

impl From<QuiverRep> for RepRepr {
    fn from(z: QuiverRep) -> Self {
        RepRepr {
            dims: z.dims,
            p: z.field,
            a: z.a,
            b: z.b,
        }
    }
}

impl QuiverRep {
    pub fn new(
        dims: DimVector,
        field: FieldSpec,
        a: Vec<ExactMatrix>,
        b: Vec<ExactMatrix>,
    ) -> Result<Self> {
        let t = dims.len();
        if a.len() != t - 1 || b.len() != t - 1 {
            return Err(Error::InvalidRep(format!(
                "{} A's and {} B's for {t} vertices",
                a.len(),
                b.len()
            )));
        }
        for i in 0..t - 1 {
            let (lo, hi) = (dims.dims()[i], dims.dims()[i + 1]);
            if a[i].shape() != (hi, lo) || b[i].shape() != (lo, hi) {
                return Err(Error::InvalidRep(format!(
                    "A_{0} is {1:?} and B_{0} is {2:?}, expected {3:?} and {4:?}",
                    i + 1,
                    a[i].shape(),
                    b[i].shape(),
                    (hi, lo),
                    (lo, hi)
                )));
            }
            if a[i].field() != field || b[i].field() != field {
                return Err(Error::FieldMismatch {
                    left: field.p(),
                    right: if a[i].field() != field {
                        a[i].field()
                    } else {
                        b[i].field()
                    }
                    .p(),
                });
            }
        }
        Ok(QuiverRep { dims, field, a, b })
    }

    pub fn zero(dims: DimVector, field: FieldSpec) -> Self {
        let d = dims.dims();
        let a = d
            .windows(2)
            .map(|w| ExactMatrix::zeros(field, w[1], w[0]))
            .collect();
        let b = d
            .windows(2)
            .map(|w| ExactMatrix::zeros(field, w[0], w[1]))
            .collect();
        QuiverRep { dims, field, a, b }
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `A_i`, 1-based.
    pub fn a(&self, i: usize) -> &ExactMatrix {
        &self.a[i - 1]
    }

    /// `B_i`, 1-based.
    pub fn b(&self, i: usize) -> &ExactMatrix {
        &self.b[i - 1]
    }

    pub fn a_maps(&self) -> &[ExactMatrix] {
        &self.a
    }

    pub fn b_maps(&self) -> &[ExactMatrix] {
        &self.b
    }

    /// Replaces `A_i`, keeping the shape.
    pub fn set_a(&mut self, i: usize, m: ExactMatrix) -> Result<()> {
        if m.shape() != self.a[i - 1].shape() || m.field() != self.field {
            return Err(Error::InvalidRep(format!(
                "replacement A_{i} has wrong shape or field"
            )));
        }
        self.a[i - 1] = m;
        Ok(())
    }

    /// Replaces `B_i`, keeping the shape.
    pub fn set_b(&mut self, i: usize, m: ExactMatrix) -> Result<()> {
        if m.shape() != self.b[i - 1].shape() || m.field() != self.field {
            return Err(Error::InvalidRep(format!(
                "replacement B_{i} has wrong shape or field"
            )));
        }
        self.b[i - 1] = m;
        Ok(())
    }

    /// `B_1A_1 = 0` and `B_iA_i = A_(i-1)B_(i-1)` for `i = 2, ..., t-1`.
    pub fn check_relations(&self) -> bool {
        let Some((b1, a1)) = self.b.first().zip(self.a.first()) else {
            return true;
        };
        if !b1.mul(a1).expect("shapes validated").is_zero() {
            return false;
        }
        (1..self.a.len()).all(|i| {
            self.b[i].mul(&self.a[i]).expect("shapes validated")
                == self.a[i - 1].mul(&self.b[i - 1]).expect("shapes validated")
        })
    }

    /// Checks the nilpotency orders implied by the relations:
    /// `(B_iA_i)^i = 0` and `(A_iB_i)^(i+1) = 0`.
    pub fn nilpotency_degrees(&self) -> Result<bool> {
        if !self.check_relations() {
            return Err(Error::RelationsViolated);
        }
        for i in 0..self.a.len() {
            let order = i as u32 + 1;
            let ba = self.b[i].mul(&self.a[i])?;
            let ab = self.a[i].mul(&self.b[i])?;
            if !ba.pow(order)?.is_zero() || !ab.pow(order + 1)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Stable iff every `A_i` is injective. Meaningful on `Z`.
    pub fn is_stable(&self) -> bool {
        self.first_non_injective().is_none()
    }

    /// 1-based index of the first `A_i` that is not injective.
    pub fn first_non_injective(&self) -> Option<usize> {
        self.a.iter().position(|m| !m.is_injective()).map(|i| i + 1)
    }

    /// The quotient map `z -> A_(t-1)B_(t-1)`.
    pub fn theta(&self) -> Result<ExactMatrix> {
        match (self.a.last(), self.b.last()) {
            (Some(a), Some(b)) => a.mul(b),
            _ => Err(Error::TooShort {
                op: "theta",
                min: 2,
                got: self.dims.len(),
            }),
        }
    }

    /// `A_i -> h_(i+1) A_i h_i^-1`, `B_i -> h_i B_i h_(i+1)^-1`.
    pub fn act(&self, g: &GroupElement) -> Result<QuiverRep> {
        let t = self.dims.len();
        let d = self.dims.dims();
        let mut hs = g.h.clone();
        if hs.len() == t - 1 {
            hs.push(ExactMatrix::identity(self.field, d[t - 1]));
        }
        if hs.len() != t {
            return Err(Error::InvalidRep(format!(
                "group element has {} components for {t} vertices",
                g.h.len()
            )));
        }
        for (i, h) in hs.iter().enumerate() {
            if h.shape() != (d[i], d[i]) {
                return Err(Error::InvalidRep(format!(
                    "h_{} has shape {:?}",
                    i + 1,
                    h.shape()
                )));
            }
        }
        let inverses = hs
            .iter()
            .map(ExactMatrix::inverse)
            .collect::<Result<Vec<_>>>()?;
        let mut a = Vec::with_capacity(t - 1);
        let mut b = Vec::with_capacity(t - 1);
        for i in 0..t - 1 {
            a.push(hs[i + 1].mul(&self.a[i])?.mul(&inverses[i])?);
            b.push(hs[i].mul(&self.b[i])?.mul(&inverses[i + 1])?);
        }
        QuiverRep::new(self.dims.clone(), self.field, a, b)
    }
}

/// An element of `G = GL_(n_1) x ... x GL_(n_t)`, or of the subgroup `H`
/// when only the first `t - 1` components are given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElement {
    pub h: Vec<ExactMatrix>,
}

impl GroupElement {
    pub fn identity(dims: &DimVector, field: FieldSpec) -> Self {
        GroupElement {
            h: dims
                .dims()
                .iter()
                .map(|&n| ExactMatrix::identity(field, n))
                .collect(),
        }
    }

    pub fn random_g<R: Rng + ?Sized>(dims: &DimVector, field: FieldSpec, rng: &mut R) -> Self {
        GroupElement {
            h: dims
                .dims()
                .iter()
                .map(|&n| ExactMatrix::random_invertible(field, n, rng))
                .collect(),
        }
    }

    /// Random element of `H`: the component on `U_t` is omitted.
    pub fn random_h<R: Rng + ?Sized>(dims: &DimVector, field: FieldSpec, rng: &mut R) -> Self {
        let d = dims.dims();
        GroupElement {
            h: d[..d.len() - 1]
                .iter()
                .map(|&n| ExactMatrix::random_invertible(field, n, rng))
                .collect(),
        }
    }

    pub fn is_subgroup_h(&self, dims: &DimVector) -> bool {
        self.h.len() + 1 == dims.len()
    }
}
