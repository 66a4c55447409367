//! Reading and printing element and tensor literals, including what a
//! rejected literal reports.

use svlie::literal::parse_tensor3;
use svlie::prelude::*;

fn main() {
    for text in ["2*L[3] - 1/4*Y[-1/2] + c", "M[0] + M[0] - 2*M[0]", "-(L[1])"] {
        match parse_element(text) {
            Ok(x) => println!("{text:<28} -> {x}   degree {:?}", degree_of(&x)),
            Err(e) => println!("{text:<28} -> error {e}"),
        }
    }

    let r = parse_tensor2("L[0] (x) L[1] - L[1] (x) L[0] + 3*M[2] (x) c").unwrap();
    println!("r = {r}");
    println!("twist(r) = {}", twist(&r));

    let t = parse_tensor3("Y[1/2] (x) Y[-1/2] (x) L[0]").unwrap();
    println!("cyclic shift of {t} is {}", cyclic(&t));

    // Diagnostics carry a 1-based position and the offending token.
    for bad in ["L[1/3]", "2*Q[1]", "L[1] +", "L[1] (x) (x) L[2]"] {
        let e = parse_tensor2(bad).map(|_| ()).or_else(|_| parse_element(bad).map(|_| ())).unwrap_err();
        println!("{bad:<20} line {} col {}: {} (token {:?})", e.line, e.column, e.message, e.token);
    }
}
