//! Upper-tail values with Mills-ratio brackets and the quantile round-trip.

use mdlab::normal::{mills_bounds, std_normal_quantile, std_normal_tail};

fn main() {
    println!(
        "{:>4}  {:>24}  {:>24}  {:>24}  {:>12}",
        "x", "mills lower", "1-Phi(x)", "mills upper", "roundtrip"
    );
    for x in [0.5f64, 1.0, 2.0, 3.0, 5.0, 8.0, 20.0] {
        let t = std_normal_tail(x).unwrap();
        let b = mills_bounds(x).unwrap();
        // Phi^{-1}(1-Phi(x)) = -x, so the recovered point is -quantile
        let back = -std_normal_quantile(t).unwrap();
        println!(
            "{x:>4}  {:>24.16e}  {:>24.16e}  {:>24.16e}  {back:>12.8}",
            b.lower,
            t.value(),
            b.upper
        );
    }
}
