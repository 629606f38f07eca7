//! Points of `Z` assembled from a chain of ab-diagrams, one per arrow pair.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use super::QuiverRep;
use crate::abdiagrams::{
    build_pair, diagram_with_b_part, enumerate_b_parts, enumerate_diagrams, greedy_diagram,
    ABDiagram,
};
use crate::error::{Error, Result};
use crate::exactmat::FieldSpec;
use crate::partitions::{DimVector, Partition};

/// Realizes a chain `delta_1, ..., delta_(t-1)` of ab-diagrams as a point
/// of `Z`.
///
/// Requirements: the a-part of `delta_1` is `(1^(n_1))` so that `B_1A_1 = 0`,
/// and the a-part of `delta_(i+1)` equals the b-part of `delta_i`. Pair
/// `i + 1` is then conjugated onto pair `i`, so `B_(i+1)A_(i+1) = A_iB_i`
/// exactly. Interfaces are numbered by vertex: interface `i` is `U_i`.
pub fn build_from_chain(deltas: &[ABDiagram], field: FieldSpec) -> Result<QuiverRep> {
    let Some(first) = deltas.first() else {
        return Err(Error::ChainMismatch {
            interface: 0,
            detail: "empty chain".into(),
        });
    };
    let n1 = first.a_total();
    if n1 == 0 || first.a_part() != Partition::column(n1) {
        return Err(Error::ChainMismatch {
            interface: 1,
            detail: format!(
                "a-part {} of the first diagram is not (1^{n1})",
                first.a_part()
            ),
        });
    }
    for (i, w) in deltas.windows(2).enumerate() {
        if w[1].a_part() != w[0].b_part() {
            return Err(Error::ChainMismatch {
                interface: i + 2,
                detail: format!("b-part {} meets a-part {}", w[0].b_part(), w[1].a_part()),
            });
        }
    }
    let mut dims = vec![n1];
    dims.extend(deltas.iter().map(ABDiagram::b_total));
    let dims = DimVector::new(dims).map_err(|e| Error::ChainMismatch {
        interface: 0,
        detail: e.to_string(),
    })?;

    let (mut a, mut b): (Vec<_>, Vec<_>) = deltas.iter().map(|d| build_pair(d, field)).unzip();
    for i in 0..deltas.len() - 1 {
        let anchor = a[i].mul(&b[i])?;
        let next = b[i + 1].mul(&a[i + 1])?;
        let g = anchor.conjugator(&next)?;
        a[i + 1] = a[i + 1].mul(&g.inverse()?)?;
        b[i + 1] = g.mul(&b[i + 1])?;
    }
    let z = QuiverRep::new(dims, field, a, b)?;
    if !z.check_relations() {
        return Err(Error::Internal("glued chain violates the relations".into()));
    }
    let last = deltas.last().expect("nonempty").b_part();
    if z.theta()?.jordan_type()? != last {
        return Err(Error::Internal(format!(
            "glued chain does not have theta type {last}"
        )));
    }
    Ok(z)
}

fn require_chain_dims(dims: &DimVector, op: &'static str) -> Result<()> {
    if dims.len() < 2 {
        return Err(Error::TooShort {
            op,
            min: 2,
            got: dims.len(),
        });
    }
    if !dims.is_weakly_monotone() {
        return Err(Error::NotMonotone {
            op,
            kind: "weakly monotone",
            dims: dims.dims().to_vec(),
        });
    }
    Ok(())
}

/// The chain placing extra b's as high as possible at every step; its theta
/// type is `dims.theta_image()`.
pub fn greedy_chain(dims: &DimVector) -> Result<Vec<ABDiagram>> {
    require_chain_dims(dims, "greedy_chain")?;
    let mut eta = Partition::column(dims.get(1));
    let mut out = Vec::with_capacity(dims.len() - 1);
    for w in dims.dims().windows(2) {
        let delta = greedy_diagram(&eta, w[1] - w[0]);
        eta = delta.b_part();
        out.push(delta);
    }
    Ok(out)
}

/// A chain with each diagram drawn uniformly from all diagrams extending the
/// previous b-part.
pub fn random_chain<R: Rng + ?Sized>(dims: &DimVector, rng: &mut R) -> Result<Vec<ABDiagram>> {
    require_chain_dims(dims, "random_chain")?;
    let mut eta = Partition::column(dims.get(1));
    let mut out = Vec::with_capacity(dims.len() - 1);
    for w in dims.dims().windows(2) {
        let options = enumerate_diagrams(&eta, w[1] - w[0]);
        let delta = options
            .choose(rng)
            .expect("at least the greedy diagram exists")
            .clone();
        eta = delta.b_part();
        out.push(delta);
    }
    Ok(out)
}

/// For each vertex `i >= 2`, the reachable b-parts at that step, each
/// mapped to the first predecessor (in sorted order) reaching it.
fn reachable_levels(dims: &DimVector) -> Result<Vec<BTreeMap<Partition, Partition>>> {
    require_chain_dims(dims, "reachable_types")?;
    let mut current = BTreeSet::from([Partition::column(dims.get(1))]);
    let mut levels = Vec::with_capacity(dims.len() - 1);
    for w in dims.dims().windows(2) {
        let mut level = BTreeMap::new();
        for eta in &current {
            for nu in enumerate_b_parts(eta, w[1] - w[0]) {
                level.entry(nu).or_insert_with(|| eta.clone());
            }
        }
        current = level.keys().cloned().collect();
        levels.push(level);
    }
    Ok(levels)
}

/// Every Jordan type of `theta` on chain-built points: the b-parts reachable
/// from `(1^(n_1))` through successive ab-diagrams.
pub fn reachable_types(dims: &DimVector) -> Result<BTreeSet<Partition>> {
    let levels = reachable_levels(dims)?;
    Ok(levels.last().expect("t >= 2").keys().cloned().collect())
}

/// The dominance-maximum of [`reachable_types`], when there is a single
/// maximal type.
///
/// This can be strictly larger than `dims.theta_image()`: on `(4,8,9)` the
/// chain through `(2,2,2,1,1)` reaches `(3,3,3)`, while iterating `+a` gives
/// `(3,3,2,1)`.
pub fn max_reachable_type(dims: &DimVector) -> Result<Option<Partition>> {
    let types = reachable_types(dims)?;
    Ok(types
        .iter()
        .find(|x| types.iter().all(|y| x.dominates(y).unwrap_or(false)))
        .cloned())
}

/// A chain of ab-diagrams whose last b-part is `target`, or `None` if no
/// chain reaches it.
pub fn chain_to_type(dims: &DimVector, target: &Partition) -> Result<Option<Vec<ABDiagram>>> {
    let levels = reachable_levels(dims)?;
    let mut nu = target.clone();
    let mut chain = Vec::with_capacity(levels.len());
    for (level, w) in levels.iter().zip(dims.dims().windows(2)).rev() {
        let Some(eta) = level.get(&nu) else {
            return Ok(None);
        };
        let delta = diagram_with_b_part(eta, w[1] - w[0], &nu)
            .ok_or_else(|| Error::Internal(format!("no diagram from {eta} to {nu}")))?;
        chain.push(delta);
        nu = eta.clone();
    }
    chain.reverse();
    Ok(Some(chain))
}
