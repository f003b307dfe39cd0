//! Moore-Penrose inverse of a 12×12 polynomial matrix over ℚ(x), computed by
//! both recursions and compared with its known closed form.

use std::time::Instant;

use wmpinv::fixtures::example2;
use wmpinv::matrix::Matrix;
use wmpinv::partition::RecursionConfig;
use wmpinv::verify::{equivalence_check, penrose_residuals};

fn main() -> wmpinv::error::Result<()> {
    let ex = example2()?;
    let i = Matrix::identity(12);

    let start = Instant::now();
    let report = equivalence_check(&ex.a, &i, &i, &RecursionConfig::default())?;
    println!("both recursions: {:.0?}", start.elapsed());
    println!("branches: {:?}", report.trace_wang);
    println!("recursions agree: {}", report.is_equivalent(0.0));
    println!("matches reference inverse: {}", report.wang == ex.reference);
    println!(
        "defining equations hold: {}",
        penrose_residuals(&ex.a, &report.wang, &i, &i)?.passes(0.0)
    );
    println!("\nX[0][0] = {}", report.wang[(0, 0)]);
    println!("X[1][0] = {}", report.wang[(1, 0)]);
    Ok(())
}
