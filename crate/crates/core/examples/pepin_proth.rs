//! Pepin's test on Fermat numbers and Proth's test with a base search.

use primecert::arith::Nat;
use primecert::pocklington::{
    fermat_number, pepin_certificate, pepin_test, proth_test, verify_basic,
};

fn main() {
    for k in 1..=8u32 {
        let verdict = if pepin_test(k).unwrap() {
            "prime"
        } else {
            "composite"
        };
        let digits = fermat_number(k).to_string().len();
        println!("F_{k} ({digits} digits): {verdict}");
    }
    let cert = pepin_certificate(4).unwrap();
    println!(
        "F_4 as a certificate: accepted = {}",
        verify_basic(&cert).unwrap().is_accepted()
    );

    println!();
    for (h, k) in [(3u64, 2u64), (3, 4), (5, 3), (13, 6), (27, 5), (9, 7)] {
        let p = h * (1 << k) + 1;
        let base = (2..p.min(1000)).find(|&a| proth_test(&Nat::from(h), k, &Nat::from(a)).unwrap());
        match base {
            Some(a) => println!("{h}*2^{k}+1 = {p}: prime, base {a}"),
            None => println!("{h}*2^{k}+1 = {p}: no base proves it"),
        }
    }
}
