//! Exact nilpotent linear algebra over F_p: Jordan types, Jordan bases and
//! conjugators.
//!
//!     cargo run --example jordan_types

use quiverkit::verify::trial_rng;
use quiverkit::{ExactMatrix, FieldSpec, Partition};

fn main() -> quiverkit::Result<()> {
    let field = FieldSpec::new(101)?;
    let mut rng = trial_rng(1, 0);
    let eta: Partition = "3,2,2,1".parse()?;

    let c = ExactMatrix::canonical_nilpotent(&eta, field);
    let h = ExactMatrix::random_invertible(field, eta.weight(), &mut rng);
    let n = h.mul(&c)?.mul(&h.inverse()?)?;
    println!("N = h C h^-1 over F_{}:\n{n:?}", field.p());
    println!(
        "rank of N^k: {:?}",
        (1..=3)
            .map(|k| n.pow(k).map(|m| m.rank()))
            .collect::<Result<Vec<_>, _>>()?
    );
    println!("jordan type: {}", n.jordan_type()?);

    let g = n.jordan_basis()?;
    assert_eq!(g.inverse()?.mul(&n)?.mul(&g)?, c);
    println!("jordan basis g satisfies g^-1 N g = C");

    let g = c.conjugator(&n)?;
    assert_eq!(g.mul(&n)?.mul(&g.inverse()?)?, c);
    println!("conjugator g satisfies g N g^-1 = C");

    let not_nilpotent = ExactMatrix::identity(field, 2);
    println!("identity: {}", not_nilpotent.jordan_type().unwrap_err());
    Ok(())
}
