//! Closed-form weighted inverse from a full-rank factorization, used as an
//! independent check on the recursions.

use wmpinv::matio::random_spd;
use wmpinv::matrix::Matrix;
use wmpinv::partition::{wmp_wang, RecursionConfig};
use wmpinv::scalar::Rational;
use wmpinv::verify::{full_rank_factorize, wmp_oracle};

fn main() -> wmpinv::error::Result<()> {
    // Rank 2: the last row is the sum of the first two.
    let a = Matrix::<Rational>::from_i64_rows(&[&[1, 2, 0, -1], &[0, 1, 3, 2], &[1, 3, 3, 1]])?;
    let (f, g) = full_rank_factorize(&a)?;
    println!("A = F G with F {:?} and G {:?}", f.shape(), g.shape());
    println!("F =\n{f}\nG =\n{g}");

    let m = random_spd::<Rational>(3, 1);
    let n = random_spd::<Rational>(4, 2);
    let oracle = wmp_oracle(&a, &m, &n)?;
    let recursive = wmp_wang(&a, &m, &n, &RecursionConfig::default())?;
    println!("oracle =\n{oracle}");
    println!("recursion agrees: {}", oracle == recursive);
    Ok(())
}
