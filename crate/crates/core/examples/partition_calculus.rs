//! Partitions: duals, the `+a` operation, dominance and Young diagrams.
//!
//!     cargo run --example partition_calculus

use quiverkit::partitions::partitions_of;
use quiverkit::Partition;

fn main() -> quiverkit::Result<()> {
    let eta: Partition = "5,3,3,1".parse()?;
    println!("eta        = {eta}");
    println!("dual       = {}", eta.dual());
    println!("n_vector   = {}", eta.n_vector()?);
    println!("{}\n", eta.render_young());

    let eta: Partition = "2,1,1".parse()?;
    for a in 0..=4 {
        println!("{eta} + {a} = {}", eta.add(a));
    }

    // dominance is only a partial order: count incomparable pairs of 6
    let ps = partitions_of(6);
    let incomparable = ps
        .iter()
        .flat_map(|x| ps.iter().map(move |y| (x, y)))
        .filter(|(x, y)| x.dominance_cmp(y).is_none())
        .count()
        / 2;
    println!(
        "\n{} partitions of 6, {incomparable} incomparable pairs",
        ps.len()
    );
    Ok(())
}
