//! Writing and checking a basic Pocklington certificate by hand.

use primecert::arith::Nat;
use primecert::cert_format::serialize;
use primecert::pocklington::{check_witness, verify_basic, Certificate, Witness};

fn main() {
    // 97 - 1 = 2^5 * 3; F1 = 32 already satisfies F1^2 > 97.
    let n = Nat::from(97u32);
    let f1 = Nat::from(32u32);
    for a in 2..=6u32 {
        let ok = check_witness(&n, &f1, &Witness::new(2u32, 5, a)).unwrap();
        println!(
            "base {a} for p = 2: {}",
            if ok { "witness" } else { "fails" }
        );
    }

    let cert = Certificate::basic(n, f1, Nat::from(3u32), vec![Witness::new(2u32, 5, 5u32)]);
    println!(
        "F1 = 32 accepted: {}",
        verify_basic(&cert).unwrap().is_accepted()
    );
    print!("{}", serialize(&cert));

    // Same witnesses with F1 = 8: 8^2 < 97, so the size bound rejects it.
    let small = Certificate::basic(
        Nat::from(97u32),
        Nat::from(8u32),
        Nat::from(12u32),
        vec![Witness::new(2u32, 3, 5u32)],
    );
    let report = verify_basic(&small).unwrap();
    println!("F1 = 8: {}", report.failure().unwrap().condition);
}
