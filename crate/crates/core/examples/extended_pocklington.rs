//! The extended criterion accepts a smaller factored part than the basic one.

use std::num::NonZeroU64;

use primecert::arith::Nat;
use primecert::pocklington::{
    extended_parameters, extended_size_bound, verify_basic, verify_extended, Certificate, Witness,
};

fn main() {
    // 2003 - 1 = 2 * 7 * 11 * 13. F1 = 14 is far below sqrt(2003).
    let (n, f1, r1) = (2003u32, 14u32, 143u32);
    let witnesses = vec![Witness::new(2u32, 1, 5u32), Witness::new(7u32, 1, 5u32)];

    let basic = Certificate::basic(n.into(), f1.into(), r1.into(), witnesses.clone());
    let report = verify_basic(&basic).unwrap();
    println!("basic:    {:?}", report.condition());

    let (s, r) = extended_parameters(&Nat::from(f1), &Nat::from(r1));
    println!("R1 = 2 F1 s + r with s = {s}, r = {r}");
    for m in 1..=3u64 {
        let bound = extended_size_bound(&Nat::from(f1), &r, m);
        let cert = Certificate::extended(
            n.into(),
            f1.into(),
            r1.into(),
            NonZeroU64::new(m).unwrap(),
            witnesses.clone(),
        );
        let report = verify_extended(&cert).unwrap();
        println!(
            "m = {m}: bound {bound}, {}",
            match report.failure() {
                None => "accepted".to_string(),
                Some(f) => format!("rejected ({})", f.condition),
            }
        );
    }
}
