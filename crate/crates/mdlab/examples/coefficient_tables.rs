//! Martingale coefficient tables across the memory regimes, with the
//! recurrence checked against the closed form.

use mdlab::erw::{closed_form_ln_a, coefficients, theoretical_envelope};

fn main() {
    let n = 10_000usize;
    println!(
        "{:>5}  {:>12}  {:>22}  {:>22}  {:>12}",
        "p", "regime", "a_n", "v_n", "max |ln err|"
    );
    for p in [0.25f64, 0.5, 0.6, 0.75] {
        let table = coefficients(p, n).unwrap();
        let mut worst: f64 = 0.0;
        for k in 1..=n {
            worst = worst.max((table.log_a[k - 1] - closed_form_ln_a(p, k)).abs());
        }
        let regime = theoretical_envelope(p, n as u64).unwrap().regime;
        println!(
            "{p:>5}  {:>12}  {:>22.16e}  {:>22.16e}  {worst:>12.2e}",
            regime.to_string(),
            table.a_n(),
            table.v_n()
        );
    }
    println!();
    println!("p = 1/2 is the memoryless walk: a_k = 1 and v_k = k exactly.");
    let t = coefficients(0.5, 5).unwrap();
    println!("a = {:?}", t.a);
    println!("v = {:?}", t.v);
}
