//! Seeded random matrices in each supported field, written in the matrix
//! file format.

use wmpinv::matio::{random_matrix, random_spd, serialize_matrix, GenSpec};
use wmpinv::matrix::is_spd;
use wmpinv::scalar::{RatFun, Rational};

fn main() -> wmpinv::error::Result<()> {
    let sparse = GenSpec {
        rows: 3,
        cols: 4,
        degree: 2,
        prob1: 0.6,
        prob2: 0.5,
        seed: 9,
        ..GenSpec::default()
    };
    print!("{}", serialize_matrix(&random_matrix::<RatFun>(&sparse)?));

    let constant = GenSpec {
        rows: 2,
        cols: 3,
        seed: 9,
        ..GenSpec::default()
    };
    print!(
        "{}",
        serialize_matrix(&random_matrix::<Rational>(&constant)?)
    );
    print!("{}", serialize_matrix(&random_matrix::<f64>(&constant)?));

    let w = random_spd::<Rational>(3, 7);
    print!("{}", serialize_matrix(&w));
    println!("positive definite: {}", is_spd(&w, 0.0).ok);

    let again = random_matrix::<RatFun>(&sparse)?;
    println!(
        "same seed, same matrix: {}",
        again == random_matrix::<RatFun>(&sparse)?
    );
    Ok(())
}
