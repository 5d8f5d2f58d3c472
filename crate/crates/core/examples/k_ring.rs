//! Arithmetic in Z[sqrt 3] mod n, the ring behind the Lucas-Lehmer test.

use num_traits::One;
use primecert::arith::Nat;
use primecert::lucas_lehmer::{k_add, k_mul, k_pow, mersenne, s_mod, KElem};

fn main() {
    let n = mersenne(7).unwrap();
    let w = KElem::w(&n).unwrap();
    let v = KElem::v(&n).unwrap();
    println!(
        "in K_{n}: w = {w}, v = {v}, w*v = {}",
        k_mul(&w, &v).unwrap()
    );

    for m in 0..=5u32 {
        let e = Nat::one() << m;
        let sum = k_add(&k_pow(&w, &e), &k_pow(&v, &e)).unwrap();
        println!(
            "w^(2^{m}) + v^(2^{m}) = {sum}   S_{m} mod n = {}",
            s_mod(m.into(), &n).unwrap()
        );
    }

    // S_5 = 0 mod 127, so w has order exactly 2^7 and 127 is prime.
    for j in [6u32, 7] {
        println!("w^(2^{j}) = {}", k_pow(&w, &(Nat::one() << j)));
    }
}
