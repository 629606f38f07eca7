//! All theta types reachable through chains of ab-diagrams, compared with
//! iterating `+a`. From `n_t = 9` on the two can differ; the first case is
//! `(4,8,9)`, where a concrete point of Z has theta of type `(3,3,3)`.
//!
//!     cargo run --example chain_maximum

use quiverkit::partitions::strictly_monotone_up_to;
use quiverkit::quiverrep::{build_from_chain, chain_to_type, max_reachable_type};
use quiverkit::FieldSpec;

fn main() -> quiverkit::Result<()> {
    let mut count = 0;
    for dims in strictly_monotone_up_to(10)
        .into_iter()
        .filter(|d| d.len() >= 2)
    {
        let lambda = dims.theta_image()?;
        let Some(max) = max_reachable_type(&dims)? else {
            println!("{dims}: no unique maximal type");
            continue;
        };
        if max == lambda {
            continue;
        }
        count += 1;
        let chain = chain_to_type(&dims, &max)?.expect("the maximum is reachable");
        let z = build_from_chain(&chain, FieldSpec::new(2)?)?;
        let words: Vec<String> = chain.iter().map(ToString::to_string).collect();
        println!(
            "{dims}: iterated +a gives {lambda}, chain {} gives {} (relations {})",
            words.join(" -> "),
            z.theta()?.jordan_type()?,
            z.check_relations()
        );
    }
    println!("{count} vectors with n_t <= 10 exceed iterated +a");
    Ok(())
}
