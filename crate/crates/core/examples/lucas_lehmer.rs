//! Lucas-Lehmer sweep over odd prime exponents.
//!
//! `cargo run --example lucas_lehmer -- 521`

use primecert::arith::{is_prime_trial, Nat};
use primecert::lucas_lehmer::{lucas_lehmer_test, mersenne, s_mod};

fn main() {
    let top: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("exponent bound"))
        .unwrap_or(127);

    let exponents: Vec<u64> = (3..=top)
        .filter(|&p| is_prime_trial(&Nat::from(p)))
        .collect();
    let mersenne_primes: Vec<u64> = exponents
        .iter()
        .copied()
        .filter(|&p| lucas_lehmer_test(p).expect("odd prime exponent"))
        .collect();
    println!("2^p - 1 is prime for p in {mersenne_primes:?}");

    // The residue sequence that decides M_11 = 23 * 89.
    let m11 = mersenne(11).unwrap();
    let residues: Vec<String> = (0..=9)
        .map(|m| s_mod(m, &m11).unwrap().to_string())
        .collect();
    println!("S_m mod {m11}: {}", residues.join(" "));
}
