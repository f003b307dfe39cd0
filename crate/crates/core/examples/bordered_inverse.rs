//! Growing the inverse of a positive definite weight one border at a time.

use wmpinv::matio::random_spd;
use wmpinv::matrix::gauss_inverse;
use wmpinv::partition::{
    bordered_inverse_step, BorderedInverseState, RecursionConfig, WeightPartition,
};
use wmpinv::scalar::Rational;

fn main() -> wmpinv::error::Result<()> {
    let w = random_spd::<Rational>(4, 3);
    let cfg = RecursionConfig::default();
    println!("W =\n{w}");

    let mut state = BorderedInverseState::start(&w, &cfg)?;
    for k in 2..=w.rows() {
        state = bordered_inverse_step(&state, &WeightPartition::of(&w, k)?, &cfg)?;
        let f: Vec<String> = state
            .last_f
            .entries()
            .iter()
            .map(ToString::to_string)
            .collect();
        println!("k = {k}: g = {}, f = [{}]", state.last_g, f.join(", "));
    }
    println!("W^-1 =\n{}", state.inv);
    println!("matches Gauss-Jordan: {}", state.inv == gauss_inverse(&w)?);
    Ok(())
}
