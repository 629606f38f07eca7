//! Verification drivers: exhaustive enumeration over small fields and
//! seeded randomized sweeps, each producing a [`VerifyReport`].
//!
//! Work is split into independent items processed with rayon. Every
//! randomized item draws from its own ChaCha stream keyed by
//! `(seed, item index)`, and results are merged in item order, so a fixed
//! seed gives identical reports for any thread count.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmat::{ExactMatrix, FieldSpec};
use crate::partitions::{
    partitions_of, strictly_monotone_up_to, DimVector, Obstruction, Partition,
};
use crate::quiverrep::{
    build_from_chain, chain_to_type, greedy_chain, is_stable_by_subspaces, max_reachable_type,
    random_chain, sample_stable, witness_reducible, QuiverRep,
};

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Outcome of one verification run. A failing report always carries a
/// counterexample that can be re-checked on its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub statement: String,
    pub instance: String,
    /// Number of enumerated objects or random trials.
    pub size: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Value>,
    pub details: Value,
}

/// Independent RNG for work item `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn enumeration_size(p: u64, entries: usize, budget: u64) -> Result<u64> {
    let size = (p as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
    if size > u128::from(budget) {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(size as u64)
}

/// Writes the base-`p` digits of `code` into consecutive matrix entries.
fn decode_matrices(field: FieldSpec, mut code: u64, shapes: &[(usize, usize)]) -> Vec<ExactMatrix> {
    let p = field.p();
    shapes
        .iter()
        .map(|&(r, c)| {
            ExactMatrix::from_fn(field, r, c, |_, _| {
                let digit = code % p;
                code /= p;
                digit
            })
        })
        .collect()
}

const CHUNK: u64 = 1 << 12;

fn chunks(size: u64) -> Vec<(u64, u64)> {
    (0..size.div_ceil(CHUNK))
        .map(|i| (i * CHUNK, ((i + 1) * CHUNK).min(size)))
        .collect()
}

/// Every pair `A: F_p^n -> F_p^(n+a)`, `B: F_p^(n+a) -> F_p^n` is enumerated and
/// bucketed by the Jordan types of `BA` and `AB` (pairs with `BA` not
/// nilpotent are skipped). For every `eta` of `n`, the `AB` types over
/// `type(BA) <= eta` must have `eta + a` as their dominance maximum.
pub fn lemma_step(n: usize, a: usize, field: FieldSpec, budget: u64) -> Result<VerifyReport> {
    let m = n + a;
    let shapes = [(m, n), (n, m)];
    let size = enumeration_size(field.p(), 2 * n * m, budget)?;

    // (type BA, type AB) -> first code realizing it
    let buckets: BTreeMap<(Partition, Partition), u64> = chunks(size)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut local = BTreeMap::new();
            for code in lo..hi {
                let mats = decode_matrices(field, code, &shapes);
                let ba = mats[1].mul(&mats[0]).expect("shapes");
                let Ok(ba_type) = ba.jordan_type() else {
                    continue;
                };
                let ab_type = mats[0]
                    .mul(&mats[1])
                    .expect("shapes")
                    .jordan_type()
                    .expect("AB is nilpotent when BA is");
                local.entry((ba_type, ab_type)).or_insert(code);
            }
            local
        })
        .reduce(BTreeMap::new, |mut acc, other| {
            for (k, code) in other {
                let slot = acc.entry(k).or_insert(code);
                *slot = (*slot).min(code);
            }
            acc
        });
    let nilpotent_types = buckets.len();

    let mut maxima = Vec::new();
    let mut counterexample = None;
    for eta in partitions_of(n) {
        let expected = eta.add(a);
        let reachable: BTreeSet<&Partition> = buckets
            .keys()
            .filter(|(ba, _)| eta.dominates(ba).unwrap_or(false))
            .map(|(_, ab)| ab)
            .collect();
        let exceeding = buckets
            .iter()
            .filter(|((ba, ab), _)| {
                eta.dominates(ba).unwrap_or(false) && !expected.dominates(ab).unwrap_or(false)
            })
            .map(|(k, &code)| (k.clone(), code))
            .next();
        let attained = reachable.contains(&expected);
        maxima.push(json!({ "eta": eta, "expected": expected, "attained": attained }));
        if counterexample.is_none() {
            if let Some(((ba, ab), code)) = exceeding {
                let mats = decode_matrices(field, code, &shapes);
                counterexample = Some(json!({
                    "eta": eta, "a": a, "expected": expected,
                    "ba_type": ba, "ab_type": ab, "A": mats[0], "B": mats[1],
                }));
            } else if !attained {
                counterexample = Some(json!({
                    "eta": eta, "a": a, "expected": expected,
                    "reachable": reachable,
                }));
            }
        }
    }

    Ok(VerifyReport {
        statement: "lemma-step".into(),
        instance: format!("n={n},a={a},p={}", field.p()),
        size,
        pass: counterexample.is_none(),
        counterexample,
        details: json!({
            "type_pairs": buckets.keys().collect::<Vec<_>>(),
            "distinct_type_pairs": nilpotent_types,
            "maxima": maxima,
        }),
    })
}

/// Sweep over strictly monotone dimension vectors with `2 <= t` and
/// `n_t <= max_last`: `lambda >= mu`, the maximum over all ab-diagram chains
/// is `lambda` and the greedy chain reaches it, random chains stay below
/// `lambda`, and stable samples stay below `mu`.
///
/// The chain maximum exceeds `lambda` from `n_t = 9` on (first at
/// `(4,8,9)`), so sweeps that far fail with a witness point.
pub fn thm72(max_last: usize, trials: usize, field: FieldSpec, seed: u64) -> Result<VerifyReport> {
    let instances: Vec<DimVector> = strictly_monotone_up_to(max_last)
        .into_iter()
        .filter(|d| d.len() >= 2)
        .collect();

    let results: Vec<Result<(Value, Option<Value>)>> = instances
        .par_iter()
        .enumerate()
        .map(|(idx, dims)| thm72_instance(dims, trials, field, seed, idx as u64))
        .collect();

    let mut per_instance = Vec::with_capacity(results.len());
    let mut counterexample = None;
    for r in results {
        let (summary, failure) = r?;
        per_instance.push(summary);
        if counterexample.is_none() {
            counterexample = failure;
        }
    }
    Ok(VerifyReport {
        statement: "thm72".into(),
        instance: format!(
            "n_t<={max_last},trials={trials},p={},seed={seed}",
            field.p()
        ),
        size: (instances.len() * (1 + 2 * trials)) as u64,
        pass: counterexample.is_none(),
        counterexample,
        details: json!({ "instances": per_instance }),
    })
}

fn thm72_instance(
    dims: &DimVector,
    trials: usize,
    field: FieldSpec,
    seed: u64,
    index: u64,
) -> Result<(Value, Option<Value>)> {
    let mut rng = trial_rng(seed, index);
    let lambda = dims.theta_image()?;
    let mu = dims.mu()?;
    let fail = |what: &str, rep: Option<&QuiverRep>, ty: Option<&Partition>| {
        Some(json!({
            "dims": dims, "check": what, "lambda": lambda, "mu": mu,
            "theta_type": ty, "rep": rep,
        }))
    };

    if !lambda.dominates(&mu)? {
        return Ok((json!({ "dims": dims }), fail("lambda >= mu", None, None)));
    }

    // the exact maximum over all chains must be lambda as well
    if let Some(max) = max_reachable_type(dims)? {
        if max != lambda {
            let chain = chain_to_type(dims, &max)?.expect("maximum is reachable");
            let z = build_from_chain(&chain, field)?;
            return Ok((
                json!({ "dims": dims }),
                fail("chain maximum is lambda", Some(&z), Some(&max)),
            ));
        }
    }

    let greedy = build_from_chain(&greedy_chain(dims)?, field)?;
    let ty = greedy.theta()?.jordan_type()?;
    if !greedy.check_relations() || !greedy.nilpotency_degrees()? || ty != lambda {
        return Ok((
            json!({ "dims": dims }),
            fail("greedy chain reaches lambda", Some(&greedy), Some(&ty)),
        ));
    }

    let mut generic_stable = 0usize;
    for _ in 0..trials {
        let z = build_from_chain(&random_chain(dims, &mut rng)?, field)?;
        let ty = z.theta()?.jordan_type()?;
        if !z.check_relations() || !z.nilpotency_degrees()? || !lambda.dominates(&ty)? {
            return Ok((
                json!({ "dims": dims }),
                fail("chain point below lambda", Some(&z), Some(&ty)),
            ));
        }

        let z = sample_stable(dims, field, &mut rng)?;
        let ty = z.theta()?.jordan_type()?;
        if !z.check_relations()
            || !z.nilpotency_degrees()?
            || !z.is_stable()
            || !mu.dominates(&ty)?
            || !lambda.dominates(&ty)?
        {
            return Ok((
                json!({ "dims": dims }),
                fail("stable point below mu", Some(&z), Some(&ty)),
            ));
        }
        generic_stable += usize::from(ty == mu);
    }
    Ok((
        json!({
            "dims": dims, "lambda": lambda, "mu": mu,
            "reducible": lambda != mu, "stable_generic": generic_stable,
        }),
        None,
    ))
}

/// Every representation over `F_p` of the given dimensions that lies in
/// `Z` is checked: injectivity of all `A_i` must agree with the subspace
/// criterion.
pub fn prop_inject(dims_list: &[DimVector], field: FieldSpec, budget: u64) -> Result<VerifyReport> {
    let mut total = 0u64;
    let mut summaries = Vec::new();
    let mut counterexample = None;
    for dims in dims_list {
        let d = dims.dims();
        let shapes: Vec<(usize, usize)> = d
            .windows(2)
            .flat_map(|w| [(w[1], w[0]), (w[0], w[1])])
            .collect();
        let entries = shapes.iter().map(|(r, c)| r * c).sum();
        let size = enumeration_size(field.p(), entries, budget)?;
        total += size;

        let per_chunk: Vec<Result<(u64, u64, Option<QuiverRep>)>> = chunks(size)
            .into_par_iter()
            .map(|(lo, hi)| {
                let (mut in_z, mut stable, mut bad) = (0u64, 0u64, None);
                for code in lo..hi {
                    let mats = decode_matrices(field, code, &shapes);
                    let (a, b) = mats
                        .chunks(2)
                        .map(|ab| (ab[0].clone(), ab[1].clone()))
                        .unzip();
                    let z = QuiverRep::new(dims.clone(), field, a, b)?;
                    if !z.check_relations() {
                        continue;
                    }
                    in_z += 1;
                    let by_injectivity = z.is_stable();
                    stable += u64::from(by_injectivity);
                    if by_injectivity != is_stable_by_subspaces(&z, budget)? && bad.is_none() {
                        bad = Some(z);
                    }
                }
                Ok((in_z, stable, bad))
            })
            .collect();

        let (mut in_z, mut stable) = (0u64, 0u64);
        for r in per_chunk {
            let (z_count, s_count, bad) = r?;
            in_z += z_count;
            stable += s_count;
            if counterexample.is_none() {
                if let Some(z) = bad {
                    counterexample = Some(json!({
                        "dims": dims, "rep": z, "injective": z.is_stable(),
                    }));
                }
            }
        }
        summaries.push(json!({ "dims": dims, "tuples": size, "in_z": in_z, "stable": stable }));
    }
    let names: Vec<String> = dims_list.iter().map(ToString::to_string).collect();
    Ok(VerifyReport {
        statement: "prop-inject".into(),
        instance: format!("dims={},p={}", names.join(";"), field.p()),
        size: total,
        pass: counterexample.is_none(),
        counterexample,
        details: json!({ "instances": summaries }),
    })
}

/// The reducibility example on `(1,4,5)`: `lambda = (3,2)`, `mu = (3,1,1)`,
/// the chain witness has `A_2` non-injective with second diagram
/// `(babab,bab,a)`, and the stable witness reaches `(3,1,1)`.
pub fn example_reduc(field: FieldSpec, seed: u64) -> Result<VerifyReport> {
    let dims = DimVector::new(vec![1, 4, 5])?;
    let p = |parts: &[usize]| Partition::new(parts.to_vec()).expect("literal partitions");
    let mut rng = trial_rng(seed, 0);
    let report = witness_reducible(&dims, field, &mut rng)?;
    let chain = greedy_chain(&dims)?;
    let second: Vec<String> = chain[1].words();

    let mut checks = vec![
        ("lambda = (3,2)", report.lambda == p(&[3, 2])),
        ("mu = (3,1,1)", report.mu == p(&[3, 1, 1])),
        (
            "verdict reducible",
            report.verdict == Obstruction::Reducible,
        ),
        (
            "second diagram (babab,bab,a)",
            second == ["babab", "bab", "a"],
        ),
        ("A_1B_1 of type (2,1,1)", chain[0].b_part() == p(&[2, 1, 1])),
    ];
    if let [z1, z2] = report.witnesses.as_slice() {
        checks.push(("chain witness relations", z1.rep.check_relations()));
        checks.push(("chain witness type (3,2)", z1.theta_type == p(&[3, 2])));
        checks.push(("A_2 not injective", !z1.rep.a(2).is_injective()));
        checks.push(("stable witness relations", z2.rep.check_relations()));
        checks.push(("stable witness stable", z2.rep.is_stable()));
        checks.push((
            "stable witness type (3,1,1)",
            z2.theta_type == p(&[3, 1, 1]),
        ));
    } else {
        checks.push(("two witnesses", false));
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| *name)
        .collect();
    let pass = failed.is_empty();
    let witness_types: Vec<&Partition> = report.witnesses.iter().map(|w| &w.theta_type).collect();
    Ok(VerifyReport {
        statement: "example-reduc".into(),
        instance: format!("dims=(1,4,5),p={},seed={seed}", field.p()),
        size: 1,
        pass,
        counterexample: (!pass).then(|| json!({ "failed": failed, "report": report })),
        details: json!({
            "lambda": report.lambda,
            "mu": report.mu,
            "verdict": report.verdict,
            "witness_types": witness_types,
            "chain": chain,
        }),
    })
}

/// Settings for [`run_suite`].
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub field: FieldSpec,
    pub seed: u64,
    pub trials: usize,
    pub budget: u64,
    pub max_last: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            field: FieldSpec::default(),
            seed: DEFAULT_SEED,
            trials: 5,
            budget: DEFAULT_BUDGET,
            max_last: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub pass: bool,
    pub reports: Vec<VerifyReport>,
}

/// All four drivers at their standard instances. The exhaustive parts run
/// over `F_2`; the randomized parts use `config.field`.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let f2 = FieldSpec::new(2)?;
    let mut reports = Vec::new();
    for (n, a) in [(1, 1), (1, 2), (2, 0), (2, 1)] {
        reports.push(lemma_step(n, a, f2, config.budget)?);
    }
    reports.push(thm72(
        config.max_last,
        config.trials,
        config.field,
        config.seed,
    )?);
    let dims = [DimVector::new(vec![1, 2])?, DimVector::new(vec![1, 2, 3])?];
    reports.push(prop_inject(&dims, f2, config.budget)?);
    reports.push(example_reduc(config.field, config.seed)?);
    Ok(SuiteReport {
        pass: reports.iter().all(|r| r.pass),
        reports,
    })
}
