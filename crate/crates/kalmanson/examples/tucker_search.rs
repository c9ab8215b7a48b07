//! Locate the forbidden configurations that obstruct the
//! consecutive-ones property: the five Tucker families I through V.

use kalmanson::ones::{
    contains_configuration, is_c1r, tucker_config_matrix, BinaryMatrix,
    TuckerFamily,
};

fn main() {
    // Print the smallest member of each family.
    for family in TuckerFamily::ALL {
        let m = tucker_config_matrix(family, 1).expect("valid parameters");
        println!(
            "family {family} ({}x{}):\n{}",
            m.rows(),
            m.cols(),
            m.to_text()
        );
    }

    // Hide the 4x6 family-IV pattern inside a larger matrix by adding a
    // harmless row and column, then find it again.
    let host = BinaryMatrix::parse_text(
        "1100000\n0011000\n0000110\n0101010\n0000001\n",
    )
    .expect("matrix");
    println!("host matrix:\n{}", host.to_text());
    assert!(!is_c1r(&host));
    for family in TuckerFamily::ALL {
        let config = tucker_config_matrix(family, 1).expect("valid");
        if config.rows() > host.rows() || config.cols() > host.cols() {
            continue;
        }
        if let Some((rows, cols)) = contains_configuration(&host, &config) {
            println!(
                "family {family} found at rows {rows:?}, columns {cols:?}"
            );
        }
    }
}
