//! Decide whether split systems are circular, and inspect the witnesses
//! both ways: a realizing ordering when they are, a weak-compatibility
//! violation when they are not.

use kalmanson::splits::{
    circular_closure, is_circular, weak_compatibility_witness, Split,
    SplitSystem,
};

fn system(n: usize, blocks: &[&[usize]]) -> SplitSystem {
    SplitSystem::new(
        n,
        blocks.iter().map(|b| Split::new(n, b).expect("valid split")),
    )
    .expect("valid system")
}

fn main() {
    // Three splits of {1..6} that all appear as arcs of one circle.
    let good = system(6, &[&[2, 3], &[4, 5], &[3, 4, 5, 6]]);
    println!("system: {good}");
    match is_circular(&good) {
        Some(ord) => println!("circular, realized by {ord}"),
        None => println!("not circular"),
    }

    // Pairwise fine, but jointly the three splits pinch element 2 from
    // three directions at once.
    let bad = system(5, &[&[3, 4, 5], &[2, 4, 5], &[2, 3, 5]]);
    println!("\nsystem: {bad}");
    assert!(is_circular(&bad).is_none());
    let w = weak_compatibility_witness(&bad).expect("violation");
    println!("not circular; weak compatibility fails:");
    println!("  hub {} is cut off from outliers {:?}", w.hub, w.outliers);
    for (s, side) in w.splits.iter().zip(w.sides) {
        println!("  {s} (hub side: {side:?})");
    }

    // The closure operation completes a circular system towards the full
    // arc set of its ordering; non-circular systems blow up instead.
    let closed = circular_closure(&good);
    println!(
        "\nclosure of the first system grows it from {} to {} splits",
        good.len(),
        closed.len()
    );
}
