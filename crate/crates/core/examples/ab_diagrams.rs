//! ab-diagrams: the pairs `(A, B)` with `BA` of a fixed Jordan type, and the
//! types `AB` can take.
//!
//!     cargo run --example ab_diagrams

use quiverkit::abdiagrams::{build_pair, enumerate_b_parts, enumerate_diagrams, greedy_diagram};
use quiverkit::{FieldSpec, Partition};

fn main() -> quiverkit::Result<()> {
    let eta: Partition = "2,1,1".parse()?;
    let a = 1;
    let diagrams = enumerate_diagrams(&eta, a);
    println!(
        "{} diagrams with a-part {eta} and {a} extra b:",
        diagrams.len()
    );
    for delta in &diagrams {
        println!("  {delta:<22} b-part {}", delta.b_part());
    }
    let parts: Vec<String> = enumerate_b_parts(&eta, a)
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("b-parts: {}", parts.join(" "));

    let top = greedy_diagram(&eta, a);
    println!(
        "highest placement {top} gives {} = {eta} + {a}",
        top.b_part()
    );

    let (am, bm) = build_pair(&top, FieldSpec::default());
    println!(
        "A is {}x{}, B is {}x{}",
        am.rows(),
        am.cols(),
        bm.rows(),
        bm.cols()
    );
    println!("type(BA) = {}", bm.mul(&am)?.jordan_type()?);
    println!("type(AB) = {}", am.mul(&bm)?.jordan_type()?);
    Ok(())
}
