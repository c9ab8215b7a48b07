//! Test 0/1 matrices for the consecutive-ones and circular-ones
//! properties, and show how row complementation connects the two.

use kalmanson::ones::{
    c1r_witness, circ1r_witness, complement_rows_by_first_column, is_c1r,
    BinaryMatrix,
};

fn main() {
    // Columns can be reordered so each row's ones sit in one block.
    let m = BinaryMatrix::parse_text("00110\n11100\n01001\n11101\n")
        .expect("well-formed matrix");
    println!("matrix:\n{}", m.to_text());
    let w = c1r_witness(&m).expect("consecutive-ones order");
    println!("consecutive after column order {:?}:", w.order());
    println!("{}", w.apply(&m).to_text());

    // The cyclic pattern: every pair of rows overlaps, no linear order
    // works, but around a circle the ones cohere.
    let wheel = BinaryMatrix::parse_text("110\n011\n101\n").expect("matrix");
    println!("matrix:\n{}", wheel.to_text());
    assert!(c1r_witness(&wheel).is_none());
    println!("no consecutive-ones order exists");
    let w = circ1r_witness(&wheel).expect("circular-ones order");
    println!("circular-ones order: {:?}", w.order());

    // Circular-ones reduces to consecutive-ones: complement every row
    // with a 1 in the first column, then test linearly.
    let complemented = complement_rows_by_first_column(&wheel);
    println!(
        "after complementing rows that hit column 0:\n{}",
        complemented.to_text()
    );
    assert!(is_c1r(&complemented));
    println!("the complemented matrix is consecutive-ones");
}
