//! Rational-function entries are written as ordinary arithmetic in `x` and
//! reduced to lowest terms on parse.

use wmpinv::matio::{parse_matrix, parse_ratfun_expr};
use wmpinv::scalar::rat;

fn main() {
    for text in [
        "(x^2-1)/(x-1)",
        "1/x + 1/(x+1)",
        "(2*x+2)/(4*x+4)",
        "3/4*x^{3} - x",
        "-(x-2)^2/(x-2)",
    ] {
        match parse_ratfun_expr(text) {
            Ok(f) => println!(
                "{text:>20}  =>  {f}    at x=2: {:?}",
                f.eval(&rat(2, 1)).map(|v| v.to_string())
            ),
            Err(e) => println!("{text:>20}  =>  error: {e}"),
        }
    }
    for bad in ["x/(x-x)", "(x+1", "2**x", "x^-1"] {
        println!(
            "{bad:>20}  =>  error: {}",
            parse_ratfun_expr(bad).unwrap_err()
        );
    }

    let file = "matrix 2 2 field=ratfun\nx 1/x\n(x+1)^2 0\n";
    let m = parse_matrix(file).expect("valid file");
    println!("\n{} matrix of shape {:?}", m.field(), m.shape());

    let broken = "matrix 2 2 field=ratfun\nx 1/x\n(x+1 0\n";
    println!("{}", parse_matrix(broken).unwrap_err());
}
