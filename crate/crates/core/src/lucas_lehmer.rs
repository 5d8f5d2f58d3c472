//! The ring `K_n = Z[sqrt 3] / n`, the sequence `S_0 = 4, S_{m+1} = S_m^2 - 2`
//! and the Lucas-Lehmer test for Mersenne numbers.
//!
//! The sequence is indexed so that `w^(2^m) + v^(2^m) = (S_m mod n, 0)`,
//! which makes `M_p` prime exactly when `S_{p-2} = 0 (mod M_p)`.

use std::fmt;

use num_traits::{CheckedSub, One, Zero};
use thiserror::Error;

use crate::arith::{is_prime_trial, Nat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LucasError {
    #[error("modulus must be at least 2")]
    ModulusTooSmall,
    #[error("operands live in K_{left} and K_{right}")]
    ModulusMismatch { left: Nat, right: Nat },
    #[error("Mersenne exponent {0} is below 2")]
    ExponentTooSmall(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

/// `a + b*sqrt(3)` with both coordinates reduced mod `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KElem {
    a: Nat,
    b: Nat,
    n: Nat,
}

impl KElem {
    pub fn new(a: Nat, b: Nat, n: Nat) -> Result<Self, LucasError> {
        if n < Nat::from(2u32) {
            return Err(LucasError::ModulusTooSmall);
        }
        Ok(KElem {
            a: a % &n,
            b: b % &n,
            n,
        })
    }

    pub fn from_u64(a: u64, b: u64, n: u64) -> Result<Self, LucasError> {
        Self::new(Nat::from(a), Nat::from(b), Nat::from(n))
    }

    pub fn zero(n: &Nat) -> Result<Self, LucasError> {
        Self::new(Nat::zero(), Nat::zero(), n.clone())
    }

    pub fn one(n: &Nat) -> Result<Self, LucasError> {
        Self::new(Nat::one(), Nat::zero(), n.clone())
    }

    /// `w = 2 + sqrt(3)`.
    pub fn w(n: &Nat) -> Result<Self, LucasError> {
        Self::new(Nat::from(2u32), Nat::one(), n.clone())
    }

    /// `v = 2 - sqrt(3)`, stored as `(2, n - 1)`.
    pub fn v(n: &Nat) -> Result<Self, LucasError> {
        let b = n.checked_sub(&Nat::one()).unwrap_or_default();
        Self::new(Nat::from(2u32), b, n.clone())
    }

    pub fn a(&self) -> &Nat {
        &self.a
    }

    pub fn b(&self) -> &Nat {
        &self.b
    }

    pub fn modulus(&self) -> &Nat {
        &self.n
    }

    fn same_ring(&self, other: &KElem) -> Result<(), LucasError> {
        if self.n != other.n {
            return Err(LucasError::ModulusMismatch {
                left: self.n.clone(),
                right: other.n.clone(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) mod {}", self.a, self.b, self.n)
    }
}

pub fn k_add(x: &KElem, y: &KElem) -> Result<KElem, LucasError> {
    x.same_ring(y)?;
    let n = &x.n;
    Ok(KElem {
        a: (&x.a + &y.a) % n,
        b: (&x.b + &y.b) % n,
        n: n.clone(),
    })
}

/// `(a1 + b1 r)(a2 + b2 r)` with `r^2 = 3`.
pub fn k_mul(x: &KElem, y: &KElem) -> Result<KElem, LucasError> {
    x.same_ring(y)?;
    let n = &x.n;
    Ok(KElem {
        a: (&x.a * &y.a + 3u32 * &x.b * &y.b) % n,
        b: (&x.a * &y.b + &y.a * &x.b) % n,
        n: n.clone(),
    })
}

/// `x^e` by square-and-multiply; `x^0 = (1, 0)`.
pub fn k_pow(x: &KElem, e: &Nat) -> KElem {
    let mut acc = KElem {
        a: Nat::one(),
        b: Nat::zero(),
        n: x.n.clone(),
    };
    for i in (0..e.bits()).rev() {
        acc = k_mul(&acc, &acc).expect("same ring");
        if e.bit(i) {
            acc = k_mul(&acc, x).expect("same ring");
        }
    }
    acc
}

/// `S_m mod n`, reducing after every step of `x -> x^2 - 2`.
pub fn s_mod(m: u64, n: &Nat) -> Result<Nat, LucasError> {
    if *n < Nat::from(2u32) {
        return Err(LucasError::ModulusTooSmall);
    }
    let two = Nat::from(2u32) % n;
    let mut s = Nat::from(4u32) % n;
    for _ in 0..m {
        // x^2 - 2 mod n without leaving the naturals.
        s = (&s * &s + n - &two) % n;
    }
    Ok(s)
}

/// `M_p = 2^p - 1`.
pub fn mersenne(p: u64) -> Result<Nat, LucasError> {
    if p < 2 {
        return Err(LucasError::ExponentTooSmall(p));
    }
    Ok((Nat::one() << p) - 1u32)
}

/// True iff `S_{p-2} = 0 (mod M_p)`, which proves `M_p` prime.
///
/// `p = 2` is answered directly (`M_2 = 3`). Any other `p` must be an odd
/// prime.
pub fn lucas_lehmer_test(p: u64) -> Result<bool, LucasError> {
    if p == 2 {
        return Ok(true);
    }
    if p.is_multiple_of(2) || !is_prime_trial(&Nat::from(p)) {
        return Err(LucasError::NotOddPrime(p));
    }
    let m = mersenne(p)?;
    Ok(s_mod(p - 2, &m)?.is_zero())
}
