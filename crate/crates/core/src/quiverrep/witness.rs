use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{build_from_chain, greedy_chain, sample_stable, QuiverRep};
use crate::error::{Error, Result};
use crate::exactmat::FieldSpec;
use crate::partitions::{DimVector, Obstruction, Partition};

/// How many stable samples to draw while looking for the generic type.
const STABLE_ATTEMPTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// Greedy ab-diagram chain; reaches the full image of theta.
    Chain,
    /// Flag construction; lies in the stable locus.
    Stable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub theta_type: Partition,
    pub relations: bool,
    pub stable: bool,
    pub rep: QuiverRep,
}

impl Witness {
    fn of(kind: WitnessKind, rep: QuiverRep) -> Result<Self> {
        Ok(Witness {
            kind,
            theta_type: rep.theta()?.jordan_type()?,
            relations: rep.check_relations(),
            stable: rep.is_stable(),
            rep,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibilityReport {
    pub dims: DimVector,
    pub lambda: Partition,
    pub mu: Partition,
    pub verdict: Obstruction,
    pub witnesses: Vec<Witness>,
}

/// Compares `lambda` (type of the image of theta) with `mu` (generic type on
/// the stable locus). When they differ, returns a chain-built point of type
/// `lambda` and a stable point of type at most `mu`: the stable locus is
/// then not dense and `Z` is reducible.
pub fn witness_reducible<R: Rng + ?Sized>(
    dims: &DimVector,
    field: FieldSpec,
    rng: &mut R,
) -> Result<ReducibilityReport> {
    let verdict = dims.zss_density_obstruction()?;
    let lambda = dims.theta_image()?;
    let mu = dims.mu()?;
    let mut witnesses = Vec::new();
    if verdict == Obstruction::Reducible {
        let chain = Witness::of(
            WitnessKind::Chain,
            build_from_chain(&greedy_chain(dims)?, field)?,
        )?;
        if !chain.relations || chain.theta_type != lambda {
            return Err(Error::Internal(format!(
                "chain witness has type {}",
                chain.theta_type
            )));
        }

        let mut stable = Witness::of(WitnessKind::Stable, sample_stable(dims, field, rng)?)?;
        for _ in 1..STABLE_ATTEMPTS {
            if stable.theta_type == mu {
                break;
            }
            stable = Witness::of(WitnessKind::Stable, sample_stable(dims, field, rng)?)?;
        }
        if !stable.relations || !stable.stable || !mu.dominates(&stable.theta_type)? {
            return Err(Error::Internal(format!(
                "stable witness has type {}",
                stable.theta_type
            )));
        }
        witnesses.push(chain);
        witnesses.push(stable);
    }
    Ok(ReducibilityReport {
        dims: dims.clone(),
        lambda,
        mu,
        verdict,
        witnesses,
    })
}
