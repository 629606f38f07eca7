//! Stable points of Z: the flag construction, the map back to flags, and
//! invariance of theta under the subgroup H.
//!
//!     cargo run --example stable_points

use quiverkit::quiverrep::{alpha, from_flag_point, sample_stable};
use quiverkit::verify::trial_rng;
use quiverkit::{DimVector, FieldSpec, FlagPoint, GroupElement};

fn main() -> quiverkit::Result<()> {
    let field = FieldSpec::default();
    let dims: DimVector = "1,2,5,8,12".parse()?;
    let mut rng = trial_rng(3, 0);

    let x = FlagPoint::random(&dims, field, &mut rng)?;
    let z = from_flag_point(&x, field)?;
    println!(
        "flag point on {dims}: relations {}, stable {}",
        z.check_relations(),
        z.is_stable()
    );
    println!(
        "alpha recovers the flag point: {}",
        alpha(&z)?.same_point(&x)?
    );

    let theta = z.theta()?;
    let h = GroupElement::random_h(&dims, field, &mut rng);
    println!("theta unchanged under H: {}", z.act(&h)?.theta()? == theta);
    let g = GroupElement::random_g(&dims, field, &mut rng);
    println!(
        "theta unchanged under all of G: {}",
        z.act(&g)?.theta()? == theta
    );

    let mu = dims.mu()?;
    let hits = (0..20)
        .filter_map(|_| sample_stable(&dims, field, &mut rng).ok())
        .filter(|z| {
            z.theta()
                .and_then(|t| t.jordan_type())
                .is_ok_and(|t| t == mu)
        })
        .count();
    println!("{hits}/20 random stable points have the generic type {mu}");
    Ok(())
}
