//! Certifying that the stable locus is not dense: a chain-built point whose
//! theta type `lambda` no stable point can reach.
//!
//!     cargo run --example reducibility [-- 1,3,4,6]

use quiverkit::quiverrep::witness_reducible;
use quiverkit::verify::trial_rng;
use quiverkit::{DimVector, FieldSpec};

fn main() -> quiverkit::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "1,4,5".into());
    let dims: DimVector = arg.parse()?;
    let report = witness_reducible(&dims, FieldSpec::default(), &mut trial_rng(5, 0))?;
    println!(
        "dims {dims}: lambda {}, mu {}, {:?}",
        report.lambda, report.mu, report.verdict
    );
    for w in &report.witnesses {
        println!(
            "  {:?} witness: theta type {}, relations {}, stable {}, first non-injective A: {:?}",
            w.kind,
            w.theta_type,
            w.relations,
            w.stable,
            w.rep.first_non_injective()
        );
    }
    Ok(())
}
