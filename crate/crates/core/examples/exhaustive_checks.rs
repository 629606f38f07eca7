//! Exhaustive verification over F_2: every pair `(A, B)` for the step
//! lemma, and every representation for the injectivity criterion.
//!
//!     cargo run --release --example exhaustive_checks

use quiverkit::verify::{lemma_step, prop_inject, DEFAULT_BUDGET};
use quiverkit::{DimVector, FieldSpec};

fn main() -> quiverkit::Result<()> {
    let f2 = FieldSpec::new(2)?;
    for (n, a) in [(1, 1), (1, 2), (2, 0), (2, 1)] {
        let r = lemma_step(n, a, f2, DEFAULT_BUDGET)?;
        println!(
            "{:<18} {:>6} pairs, {:>2} type pairs: {}",
            r.instance,
            r.size,
            r.details["distinct_type_pairs"],
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    let dims = ["1,2", "1,2,3"]
        .map(|s| s.parse::<DimVector>())
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let r = prop_inject(&dims, f2, DEFAULT_BUDGET)?;
    for inst in r.details["instances"].as_array().into_iter().flatten() {
        println!(
            "dims {}: {} tuples, {} in Z, {} stable",
            inst["dims"], inst["tuples"], inst["in_z"], inst["stable"]
        );
    }
    println!("injectivity agrees with the subspace criterion: {}", r.pass);
    Ok(())
}
