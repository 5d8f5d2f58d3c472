//! Generating, saving and re-verifying a recursive certificate chain.
//!
//! `cargo run --example certificate_chain -- 1000000007`

use primecert::arith::Nat;
use primecert::cert_format::{parse, serialize};
use primecert::pocklington::{verify_chain, Generator, DEFAULT_SMALL_PRIME_BOUND};

fn main() {
    let n: Nat = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("decimal N"))
        .unwrap_or_else(|| Nat::from(1_000_000_007u64));

    let cert = match Generator::default().certify(&n) {
        Ok(cert) => cert,
        Err(e) => {
            eprintln!("cannot certify {n}: {e}");
            std::process::exit(1);
        }
    };
    let doc = serialize(&cert);
    print!("{doc}");

    let back = parse(&doc).expect("generator output parses");
    assert_eq!(back, cert);
    let report = verify_chain(&back, &Nat::from(DEFAULT_SMALL_PRIME_BOUND));
    println!(
        "{} nodes, accepted = {}",
        back.node_count(),
        report.is_accepted()
    );

    // Swap the child for a certificate of a different prime.
    if let Some((p, _)) = back.children.iter().next() {
        let other = Generator::default().certify(&(p + 6u32)).ok();
        if let Some(other) = other {
            let mut forged = back.clone();
            forged.children.insert(p.clone(), other);
            let report = verify_chain(&forged, &Nat::from(DEFAULT_SMALL_PRIME_BOUND));
            let f = report.failure().expect("forged chain is rejected");
            println!("forged child: {} at {}", f.condition, f.path_string());
        }
    }
}
