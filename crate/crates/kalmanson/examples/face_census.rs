//! Count the faces of the simplicial complex whose vertices are the
//! non-trivial splits and whose facets are circular orderings, comparing
//! exhaustive enumeration against the closed-form counts.

use kalmanson::enumeration::{
    facets, fvector_bruteforce, fvector_formulas, triangles,
    triangles_bruteforce,
};

fn main() {
    // Every facet of the complex on {1..5}, by its circular ordering.
    let fs = facets(5).expect("within enumeration bounds");
    println!("n = 5 has {} facets:", fs.len());
    for f in &fs {
        println!("  {} with {} vertices", f.ordering(), f.vertices().len());
    }

    // Full face vectors by brute force, checked against closed forms.
    for n in 4..=6 {
        let brute = fvector_bruteforce(n).expect("within bounds");
        let formulas = fvector_formulas(n).expect("within bounds");
        println!("n = {n}: f = {:?}", brute.counts());
        for (k, entry) in formulas.iter().enumerate() {
            if let Some(v) = entry {
                assert_eq!(*v, brute.counts()[k] as u128);
            }
        }
    }
    println!("all closed-form entries agree with enumeration");

    // Triangle counts reach far beyond what enumeration can touch.
    let (count, table) = triangles_bruteforce(7).expect("within bounds");
    assert_eq!(count, triangles(7));
    println!("n = 7 has {count} triangles; census by column types:");
    for i in 0..=2 {
        for j in 0..=3 {
            let c = table.get(i, j);
            if c > 0 {
                println!("  F({i},{j}) = {c}");
            }
        }
    }
    for n in [10, 20, 30] {
        println!("n = {n}: {} triangles", triangles(n));
    }
}
