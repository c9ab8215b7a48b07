//! Recognize a Kalmanson metric hidden behind a relabeling, expand it
//! over the splits of the recovered circular ordering, and rebuild it
//! exactly from the parts.

use kalmanson::geometry::{
    kalmanson_violation, recognize, split_metric, Metric,
};
use kalmanson::splits::Split;
use num::rational::BigRational;
use num::FromPrimitive;

fn rat(x: i64) -> BigRational {
    BigRational::from_i64(x).expect("exact")
}

fn main() {
    // Mix two cut metrics whose blocks are arcs of (1 3 5 2 4), one
    // point weight, and a half-unit to keep the arithmetic rational.
    let a = split_metric(&Split::new(5, &[3, 5]).expect("split"));
    let b = split_metric(&Split::new(5, &[2, 3, 5]).expect("split"));
    let m = Metric::from_fn(5, |i, j| {
        let point = if i == 4 || j == 4 { rat(1) } else { rat(0) };
        rat(3) * a.get(i, j) + rat(1) / rat(2) * b.get(i, j) + point
    })
    .expect("valid metric");
    println!("metric:\n{m}");

    // In the given labeling the four-point conditions fail...
    let q = kalmanson_violation(&m).expect("violation");
    println!("four-point condition fails at {q:?}");

    // ...but a circular relabeling repairs them all.
    let (ordering, dec) = recognize(&m)
        .expect("size within recognition bounds")
        .expect("metric lies over some circular ordering");
    println!("recognized ordering: {ordering}");
    let alpha: Vec<String> =
        dec.alpha().iter().map(ToString::to_string).collect();
    println!("point weights alpha: {}", alpha.join(" "));
    for (split, weight) in dec.weights() {
        println!("  weight {weight} on {split}");
    }

    // The expansion is exact: summing the parts returns the input.
    assert_eq!(dec.reconstruct(), m);
    println!("reconstruction matches the input exactly");
}
