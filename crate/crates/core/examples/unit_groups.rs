//! Unit groups of Z/nZ: orders, cyclic subgroups and Euler's totient.
//!
//! `cargo run --example unit_groups -- 20`

use primecert::finite_groups::{element_order, euler_phi, generated_subgroup, unit_group};

fn main() {
    let n: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("modulus"))
        .unwrap_or(20);
    let g = unit_group(n).expect("modulus in range");
    println!(
        "(Z/{n}Z)* = {:?}, phi({n}) = {}",
        g.elements(),
        euler_phi(n)
    );

    for &a in g.elements() {
        let order = element_order(&g, a).unwrap();
        let h = generated_subgroup(&g, a).unwrap();
        let fermat = g.pow(a, euler_phi(n));
        println!(
            "{a:>4}: order {order:>3}  <{a}> = {:?}  a^phi = {fermat}",
            h.elements()
        );
    }

    let cyclic = g
        .elements()
        .iter()
        .any(|&a| element_order(&g, a).unwrap() == g.len() as u64);
    println!("cyclic: {cyclic}");
}
