//! Weighted Moore-Penrose inverse of a rank-deficient 11×10 rational matrix,
//! checked against its reference table of three-decimal values.
//!
//! ```text
//! cargo run --release --example example1_weighted
//! ```

use wmpinv::fixtures::{example1, max_abs_diff, PRINTED_DECIMALS_TOL};
use wmpinv::matrix::Matrix;
use wmpinv::partition::{sweep, RecursionConfig, Wang};
use wmpinv::scalar::{rat, Rational};
use wmpinv::verify::penrose_residuals;

fn main() -> wmpinv::error::Result<()> {
    let ex = example1()?;
    let cfg = RecursionConfig::default();
    let tol = rat(PRINTED_DECIMALS_TOL.0, PRINTED_DECIMALS_TOL.1);

    let weighted = sweep::<Rational, Wang>(&ex.a, &ex.left, &ex.right, &cfg, false)?;
    let trace: Vec<String> = weighted.trace.iter().map(|b| format!("{b:?}")).collect();
    println!("branches: {}", trace.join(" "));

    let res = penrose_residuals(&ex.a, &weighted.inverse, &ex.left, &ex.right)?;
    println!("all four equations hold exactly: {}", res.passes(0.0));

    let gap = max_abs_diff(&weighted.inverse, &ex.weighted_reference).expect("same shape");
    println!(
        "weighted:   max |exact - printed| = {gap} ({:.6}), within 1/2000: {}",
        to_f64(&gap),
        gap <= tol
    );

    let (m, n) = ex.a.shape();
    let plain = sweep::<Rational, Wang>(
        &ex.a,
        &Matrix::identity(m),
        &Matrix::identity(n),
        &cfg,
        false,
    )?;
    let gap = max_abs_diff(&plain.inverse, &ex.unweighted_reference).expect("same shape");
    println!(
        "unweighted: max |exact - printed| = {gap} ({:.6}), within 1/2000: {}",
        to_f64(&gap),
        gap <= tol
    );

    println!("\nfirst row of the weighted inverse, to three decimals:");
    let row: Vec<String> = weighted
        .inverse
        .row(0)
        .iter()
        .map(|v| format!("{:.3}", to_f64(v)))
        .collect();
    println!("{}", row.join(" "));
    Ok(())
}

fn to_f64(v: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
}
