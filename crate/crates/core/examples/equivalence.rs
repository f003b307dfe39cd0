//! The two recursions take the same branch at every column and return the
//! same matrix, including when a column is dependent on earlier ones.

use wmpinv::matio::{random_matrix, random_spd, GenSpec};
use wmpinv::matrix::Matrix;
use wmpinv::partition::RecursionConfig;
use wmpinv::scalar::Rational;
use wmpinv::verify::equivalence_check;

fn main() -> wmpinv::error::Result<()> {
    let cfg = RecursionConfig::default();

    // Column 3 = column 1 + column 2, so the third step takes the zero branch.
    let a = Matrix::<Rational>::from_i64_rows(&[&[1, 0, 1], &[2, 1, 3], &[0, 4, 4], &[1, 1, 2]])?;
    let left = random_spd::<Rational>(4, 11);
    let right = random_spd::<Rational>(3, 12);
    let r = equivalence_check(&a, &left, &right, &cfg)?;
    println!(
        "dependent column: traces {:?} / {:?}, equal outputs {}",
        r.trace_wang,
        r.trace_udwadia,
        r.is_equivalent(0.0)
    );

    for seed in 0..5 {
        let spec = GenSpec {
            rows: 6,
            cols: 5,
            seed,
            ..GenSpec::default()
        };
        let a = random_matrix::<f64>(&spec)?;
        let r = equivalence_check(
            &a,
            &random_spd(6, seed + 100),
            &random_spd(5, seed + 200),
            &cfg,
        )?;
        println!("float seed {seed}: gap {:?}", r.gap);
    }
    Ok(())
}
