//! Classifying dimension vectors and comparing the two candidate Jordan
//! types: `lambda` (image of theta) and `mu` (generic on the stable locus).
//!
//!     cargo run --example dimension_vectors [-- 1,4,5 2,3,7]

use quiverkit::DimVector;

fn main() -> quiverkit::Result<()> {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        args = ["1,2", "1,2,5,8,12", "1,4,5", "1,3,4,6", "2,5,9"]
            .map(String::from)
            .to_vec();
    }
    println!(
        "{:<14} {:<15} {:<12} {:<12} {:<12} verdict",
        "dims", "class", "slack", "lambda", "mu"
    );
    for arg in args {
        let d: DimVector = arg.parse()?;
        let class = d.classify();
        let slack = d
            .cartan_slack()
            .map(|s| format!("{s:?}"))
            .unwrap_or_else(|_| "-".into());
        let (lambda, mu, verdict) = match (d.theta_image(), d.mu(), d.zss_density_obstruction()) {
            (Ok(l), Ok(m), Ok(v)) => (l.to_string(), m.to_string(), format!("{v:?}")),
            _ => ("-".into(), "-".into(), "not monotone".into()),
        };
        println!(
            "{:<14} {:<15} {:<12} {:<12} {:<12} {verdict}",
            d.to_string(),
            format!("{:?}", class.tag),
            slack,
            lambda,
            mu
        );
    }
    Ok(())
}
