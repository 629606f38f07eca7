//! Acceptance suite. Runs every criterion with its time limit and prints one
//! PASS/FAIL line each; exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use quiverkit::abdiagrams::{enumerate_b_parts, max_b_part};
use quiverkit::partitions::{partitions_of, partitions_up_to, strictly_monotone_up_to};
use quiverkit::quiverrep::{
    alpha, build_from_chain, from_flag_point, greedy_chain, is_stable_by_subspaces, random_chain,
    sample_stable, witness_reducible, WitnessKind,
};
use quiverkit::verify::{
    lemma_step, prop_inject, run_suite, trial_rng, SuiteConfig, DEFAULT_BUDGET,
};
use quiverkit::{
    DimVecTag, DimVector, Error, FieldSpec, FlagPoint, GroupElement, Obstruction, Partition,
    QuiverRep,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn d(dims: &[usize]) -> DimVector {
    DimVector::new(dims.to_vec()).unwrap()
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

const SAMPLE_DIMS: [&[usize]; 2] = [&[1, 4, 5], &[1, 2, 5, 8, 12]];

fn ac1() -> Outcome {
    let checks = [
        (p(&[5, 3, 3, 1]).dual(), p(&[4, 3, 3, 1, 1])),
        (p(&[2, 1, 1]).add(1), p(&[3, 2])),
        (p(&[2, 1, 1]).add(2), p(&[3, 2, 1])),
        (p(&[2, 1, 1]).add(3), p(&[3, 2, 2])),
        (p(&[1]).add(3), p(&[2, 1, 1])),
    ];
    for (got, want) in &checks {
        ensure!(got == want, "got {got}, expected {want}");
    }
    let nv = ok(p(&[5, 3, 3, 1]).n_vector())?;
    ensure!(nv == d(&[1, 2, 5, 8, 12]), "n_vector((5,3,3,1)) = {nv}");
    Ok("6 identities".into())
}

fn ac2() -> Outcome {
    let dims = d(&[1, 4, 5]);
    ensure!(ok(dims.theta_image())? == p(&[3, 2]), "theta_image");
    ensure!(ok(dims.mu())? == p(&[3, 1, 1]), "mu");
    ensure!(
        ok(dims.zss_density_obstruction())? == Obstruction::Reducible,
        "obstruction"
    );
    let report = ok(witness_reducible(
        &dims,
        FieldSpec::default(),
        &mut trial_rng(2, 0),
    ))?;
    let [z1, z2] = report.witnesses.as_slice() else {
        return Err(format!("{} witnesses", report.witnesses.len()));
    };
    ensure!(
        z1.kind == WitnessKind::Chain && z2.kind == WitnessKind::Stable,
        "witness kinds"
    );
    ensure!(z1.rep.check_relations(), "z1 relations");
    ensure!(
        ok(ok(z1.rep.theta())?.jordan_type())? == p(&[3, 2]),
        "z1 type"
    );
    ensure!(!z1.rep.a(2).is_injective(), "z1 A_2 injective");
    ensure!(
        z2.rep.check_relations() && z2.rep.is_stable(),
        "z2 not a stable point of Z"
    );
    ensure!(
        ok(ok(z2.rep.theta())?.jordan_type())? == p(&[3, 1, 1]),
        "z2 type"
    );
    Ok("lambda=(3,2), mu=(3,1,1), witnesses verified".into())
}

fn ac3() -> Outcome {
    let mut count = 0;
    for eta in partitions_up_to(8).into_iter().filter(|e| !e.is_empty()) {
        let dims = ok(eta.n_vector())?;
        let class = dims.classify();
        ensure!(
            class.tag == DimVecTag::KraftProcesi,
            "{dims} not classified KP"
        );
        ensure!(
            class.eta.as_ref() == Some(&eta),
            "classify({dims}).eta = {:?}",
            class.eta
        );
        ensure!(ok(dims.theta_image())? == eta, "theta_image({dims})");
        ensure!(ok(dims.mu())? == eta, "mu({dims})");
        count += 1;
    }
    Ok(format!("{count} partitions"))
}

fn ac4() -> Outcome {
    let f2 = ok(FieldSpec::new(2))?;
    let mut sizes = Vec::new();
    for (n, a) in [(1, 1), (1, 2), (2, 0), (2, 1)] {
        let r = ok(lemma_step(n, a, f2, DEFAULT_BUDGET))?;
        ensure!(r.size <= 10_000, "{} pairs at n={n}, a={a}", r.size);
        ensure!(
            r.pass,
            "n={n}, a={a}: {}",
            r.counterexample.unwrap_or_default()
        );
        // the report's maxima must be attained and equal to add(eta, a)
        for m in r.details["maxima"].as_array().unwrap() {
            let eta: Partition = ok(serde_json::from_value(m["eta"].clone()))?;
            ensure!(
                m["expected"] == serde_json::json!(eta.add(a)),
                "maximum for {eta}"
            );
            ensure!(m["attained"] == true, "add({eta},{a}) not attained");
        }
        sizes.push(r.size.to_string());
    }
    Ok(format!("pairs {}", sizes.join("+")))
}

fn ac5() -> Outcome {
    let mut cases = 0;
    for eta in partitions_up_to(10) {
        for a in 0..=6 {
            let sum = eta.add(a);
            let max = ok(max_b_part(&eta, a))?;
            ensure!(max == sum, "max_b_part({eta},{a}) = {max}, add = {sum}");
            for nu in enumerate_b_parts(&eta, a) {
                ensure!(
                    ok(sum.dominates(&nu))?,
                    "{nu} not below {sum} for ({eta},{a})"
                );
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (eta, a) cases"))
}

fn ac6() -> Outcome {
    let mut pairs = 0;
    for n in 0..=8 {
        let ps = partitions_of(n);
        for x in &ps {
            for y in &ps {
                if !ok(x.dominates(y))? {
                    continue;
                }
                pairs += 1;
                for a in 0..=4 {
                    ensure!(
                        ok(x.add(a).dominates(&y.add(a)))?,
                        "{x} >= {y} but not after +{a}"
                    );
                }
            }
        }
    }
    Ok(format!("{pairs} comparable pairs"))
}

fn ac7() -> Outcome {
    let (vectors, single): (Vec<DimVector>, Vec<DimVector>) = strictly_monotone_up_to(12)
        .into_iter()
        .partition(|d| d.len() >= 2);
    // one-entry vectors have no slack components
    for dims in &single {
        ensure!(
            dims.cartan_slack().is_err(),
            "cartan_slack({dims}) accepted t = 1"
        );
    }
    let mut kp = 0;
    for dims in &vectors {
        let mut prev = 0;
        let diffs: Vec<usize> = dims
            .dims()
            .iter()
            .map(|&n| {
                let delta = n - prev;
                prev = n;
                delta
            })
            .collect();
        let inequalities = diffs.windows(2).all(|w| w[0] <= w[1]);
        let slack_ok = ok(dims.cartan_slack())?.iter().all(|&s| s >= 0);
        ensure!(
            inequalities == slack_ok,
            "{dims}: KP {inequalities}, slack {slack_ok}"
        );
        ensure!(
            inequalities == (dims.classify().tag == DimVecTag::KraftProcesi),
            "{dims}: classify"
        );
        kp += usize::from(inequalities);
    }
    Ok(format!("{} vectors, {kp} Kraft-Procesi", vectors.len()))
}

fn check_point(z: &QuiverRep, what: &str) -> Result<(), String> {
    ensure!(z.check_relations(), "{what}: relations");
    ensure!(ok(z.nilpotency_degrees())?, "{what}: nilpotency");
    Ok(())
}

fn ac8() -> Outcome {
    let f = FieldSpec::default();
    for (k, dims) in SAMPLE_DIMS.iter().map(|x| d(x)).enumerate() {
        let mut rng = trial_rng(8, k as u64);
        for i in 0..100 {
            check_point(
                &ok(sample_stable(&dims, f, &mut rng))?,
                &format!("sample_stable {dims} #{i}"),
            )?;
            let x = ok(FlagPoint::random(&dims, f, &mut rng))?;
            check_point(
                &ok(from_flag_point(&x, f))?,
                &format!("from_flag_point {dims} #{i}"),
            )?;
            let chain = ok(random_chain(&dims, &mut rng))?;
            check_point(
                &ok(build_from_chain(&chain, f))?,
                &format!("build_from_chain {dims} #{i}"),
            )?;
        }
    }
    Ok("600 points".into())
}

fn ac9() -> Outcome {
    let f = FieldSpec::default();
    let mut generic = Vec::new();
    for (k, dims) in SAMPLE_DIMS.iter().map(|x| d(x)).enumerate() {
        let mut rng = trial_rng(9, k as u64);
        let lambda = ok(dims.theta_image())?;
        let mu = ok(dims.mu())?;
        let mut hits = 0;
        for i in 0..100 {
            let stable = ok(sample_stable(&dims, f, &mut rng))?;
            let chain = ok(build_from_chain(&ok(random_chain(&dims, &mut rng))?, f))?;
            for (z, is_stable) in [(&stable, true), (&chain, false)] {
                let theta = ok(z.theta())?;
                let h = GroupElement::random_h(&dims, f, &mut rng);
                ensure!(h.is_subgroup_h(&dims), "sampled h not in H");
                ensure!(
                    ok(ok(z.act(&h))?.theta())? == theta,
                    "theta not H-invariant on {dims} #{i}"
                );
                let ty = ok(theta.jordan_type())?;
                ensure!(ok(lambda.dominates(&ty))?, "{ty} above lambda {lambda}");
                if is_stable {
                    ensure!(z.is_stable(), "stable sample not stable");
                    ensure!(ok(mu.dominates(&ty))?, "{ty} above mu {mu}");
                    hits += usize::from(ty == mu);
                }
            }
        }
        ensure!(
            hits >= 95,
            "{dims}: only {hits}/100 stable samples of type mu"
        );
        generic.push(format!("{dims}: {hits}/100"));
    }
    Ok(format!("200 h per vector, generic {}", generic.join(", ")))
}

fn ac10() -> Outcome {
    let f = FieldSpec::default();
    let dims = d(&[1, 4, 5]);
    let mut rng = trial_rng(10, 0);
    for i in 0..50 {
        let x = ok(FlagPoint::random(&dims, f, &mut rng))?;
        let back = ok(alpha(&ok(from_flag_point(&x, f))?))?;
        ensure!(back.endo() == x.endo(), "endomorphism differs at #{i}");
        for (u, v) in back.flag().iter().zip(x.flag()) {
            ensure!(u.rank() == v.rank(), "flag dimension differs at #{i}");
            let joint = ok(quiverkit::ExactMatrix::hcat(&[u, v]))?;
            ensure!(joint.rank() == u.rank(), "flag subspace differs at #{i}");
        }
    }
    let unstable = ok(build_from_chain(&ok(greedy_chain(&dims))?, f))?;
    match alpha(&unstable) {
        Err(Error::Unstable { index: 2 }) => {}
        other => return Err(format!("alpha on an unstable point gave {other:?}")),
    }
    Ok("50 round trips, unstable point rejected".into())
}

fn ac11() -> Outcome {
    let f2 = ok(FieldSpec::new(2))?;
    let r = ok(prop_inject(
        &[d(&[1, 2]), d(&[1, 2, 3])],
        f2,
        DEFAULT_BUDGET,
    ))?;
    ensure!(
        r.pass,
        "disagreement: {}",
        r.counterexample.unwrap_or_default()
    );
    // spot-check the driver against a direct call
    let z = QuiverRep::zero(d(&[1, 2, 3]), f2);
    ensure!(
        !ok(is_stable_by_subspaces(&z, DEFAULT_BUDGET))?,
        "zero point judged stable"
    );
    let counts: Vec<String> = r.details["instances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| format!("{} in Z of {} tuples", s["in_z"], s["tuples"]))
        .collect();
    Ok(counts.join("; "))
}

fn suite_json(threads: usize) -> Result<String, String> {
    let pool = ok(rayon::ThreadPoolBuilder::new().num_threads(threads).build())?;
    let report = ok(pool.install(|| run_suite(&SuiteConfig::default())))?;
    ensure!(report.pass, "suite failed");
    ok(serde_json::to_string(&report))
}

fn cli_json(threads: &str) -> Result<Vec<u8>, String> {
    let out = ok(Command::new(env!("CARGO_BIN_EXE_quiverkit"))
        .args(["--seed", "7", "--threads", threads, "verify", "all"])
        .output())?;
    ensure!(
        out.status.code() == Some(0),
        "verify all exited {:?}",
        out.status.code()
    );
    Ok(out.stdout)
}

fn ac12() -> Outcome {
    let n = std::thread::available_parallelism()
        .map_or(4, |n| n.get())
        .max(2);
    let one = suite_json(1)?;
    ensure!(one == suite_json(1)?, "two 1-thread runs differ");
    ensure!(one == suite_json(n)?, "1-thread and {n}-thread runs differ");
    let cli = cli_json("1")?;
    ensure!(cli == cli_json("1")?, "two CLI runs differ");
    ensure!(
        cli == cli_json(&n.to_string())?,
        "CLI 1-thread and {n}-thread runs differ"
    );
    Ok(format!(
        "library {} bytes, CLI {} bytes, 1 vs {n} threads",
        one.len(),
        cli.len()
    ))
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let ms = Duration::from_millis;
    let s = Duration::from_secs;
    let criteria = [
        Criterion {
            id: "AC-1",
            title: "exact combinatorics",
            limit: Some(ms(1)),
            run: ac1,
        },
        Criterion {
            id: "AC-2",
            title: "reducible example (1,4,5)",
            limit: Some(s(1)),
            run: ac2,
        },
        Criterion {
            id: "AC-3",
            title: "Kraft-Procesi round trip",
            limit: Some(s(1)),
            run: ac3,
        },
        Criterion {
            id: "AC-4",
            title: "step lemma, exhaustive over F_2",
            limit: Some(s(10)),
            run: ac4,
        },
        Criterion {
            id: "AC-5",
            title: "step lemma, ab-diagrams",
            limit: Some(s(5)),
            run: ac5,
        },
        Criterion {
            id: "AC-6",
            title: "monotonicity of +a",
            limit: Some(s(5)),
            run: ac6,
        },
        Criterion {
            id: "AC-7",
            title: "slack vs Kraft-Procesi inequalities",
            limit: Some(s(1)),
            run: ac7,
        },
        Criterion {
            id: "AC-8",
            title: "relations and nilpotency",
            limit: Some(s(5)),
            run: ac8,
        },
        Criterion {
            id: "AC-9",
            title: "theta invariance and bounds",
            limit: None,
            run: ac9,
        },
        Criterion {
            id: "AC-10",
            title: "alpha round trip",
            limit: Some(s(5)),
            run: ac10,
        },
        Criterion {
            id: "AC-11",
            title: "stability oracle over F_2",
            limit: Some(s(60)),
            run: ac11,
        },
        Criterion {
            id: "AC-12",
            title: "determinism",
            limit: None,
            run: ac12,
        },
    ];

    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let (pass, note) = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                (false, format!("over time limit {limit:?}"))
            }
            (Ok(detail), _) => (true, detail),
            (Err(e), _) => (false, e),
        };
        let limit = c.limit.map_or("-".to_string(), |l| format!("{l:?}"));
        println!(
            "{:<5} {} {:<38} {:>10.3?} (limit {limit}) {note}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            elapsed
        );
        failed += usize::from(!pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
