//! Primality certification: Lucas-Lehmer for Mersenne numbers, Pepin and
//! Proth tests, and recursive Pocklington certificates (basic and extended),
//! together with an enumerated model of the finite groups the tests rely on.
//!
//! ```
//! use primecert::arith::Nat;
//! use primecert::pocklington::{verify_chain, Generator, DEFAULT_SMALL_PRIME_BOUND};
//!
//! let cert = Generator::default().certify(&Nat::from(1_000_000_007u64)).unwrap();
//! assert!(verify_chain(&cert, &Nat::from(DEFAULT_SMALL_PRIME_BOUND)).is_accepted());
//! assert!(primecert::lucas_lehmer::lucas_lehmer_test(127).unwrap());
//! ```
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod arith;
pub mod cert_format;
pub mod cli;
pub mod finite_groups;
pub mod lucas_lehmer;
pub mod pocklington;

pub use arith::{Int, Nat};
pub use cert_format::{parse, serialize, ParseError};
pub use pocklington::{Certificate, Condition, VerifyReport, Witness};
