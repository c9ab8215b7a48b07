//! Solve the traveling-salesman problem on Kalmanson metrics: once a
//! realizing circular ordering is known, it *is* the optimal tour, so
//! recognition replaces exhaustive search.

use kalmanson::generate::{random_circular_metric, rng};
use kalmanson::geometry::{tsp_bruteforce, tsp_kalmanson};

fn main() {
    let mut rng = rng(2026);
    for n in [6, 8, 10] {
        // Build a metric over a hidden scrambled ordering.
        let (hidden, metric) = random_circular_metric(&mut rng, n, true);
        let fast = tsp_kalmanson(&metric)
            .expect("size within recognition bounds")
            .expect("instances from the generator are always members");
        println!("n = {n}");
        println!("  hidden ordering: {hidden}");
        println!("  optimal tour:    {}", fast.ordering());
        println!("  length:          {}", fast.length());

        // Cross-check against exhaustive search where it is feasible.
        if n <= 8 {
            let brute = tsp_bruteforce(&metric).expect("within brute bounds");
            assert_eq!(brute.length(), fast.length());
            println!("  brute force agrees: {}", brute.length());
        }
    }
}
