//! Exact integer arithmetic and the number-theoretic primitives the rest of
//! the crate is built on.
//!
//! Naturals and integers are `num-bigint` values; everything here is exact.
//! Operations that take a modulus or a divisor return [`ArithError`] rather
//! than panicking on degenerate input.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision natural number.
pub type Nat = BigUint;
/// Arbitrary-precision signed integer (Bezout coefficients, signed bounds).
pub type Int = BigInt;

/// Largest default trial-division bound used by [`default_trial_bound`].
pub const DEFAULT_TRIAL_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("modulus must be at least 2")]
    ModulusTooSmall,
    #[error("division by zero")]
    DivisionByZero,
}

/// Greatest common divisor by Euclid's algorithm.
///
/// Generic so the finite-group model can use it on machine words.
pub fn gcd<T: Integer + Clone>(a: &T, b: &T) -> Result<T, ArithError> {
    if a.is_zero() && b.is_zero() {
        return Err(ArithError::GcdOfZeros);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.mod_floor(&y);
        x = y;
        y = r;
    }
    Ok(x)
}

/// Extended Euclid: returns `(g, u, v)` with `a*u + b*v = g = gcd(a, b)`.
pub fn bezout(a: &Nat, b: &Nat) -> Result<(Nat, Int, Int), ArithError> {
    if a.is_zero() && b.is_zero() {
        return Err(ArithError::GcdOfZeros);
    }
    // Invariant: old_r = a*old_u + b*old_v and r = a*u + b*v.
    let (mut old_r, mut r) = (Int::from(a.clone()), Int::from(b.clone()));
    let (mut old_u, mut u) = (Int::one(), Int::zero());
    let (mut old_v, mut v) = (Int::zero(), Int::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_u = &old_u - &q * &u;
        old_u = std::mem::replace(&mut u, next_u);
        let next_v = &old_v - &q * &v;
        old_v = std::mem::replace(&mut v, next_v);
    }
    let g = old_r
        .to_biguint()
        .expect("remainders of naturals stay non-negative");
    Ok((g, old_u, old_v))
}

/// Quotient and remainder with `a = q*b + r`, `0 <= r < b`.
pub fn divmod(a: &Nat, b: &Nat) -> Result<(Nat, Nat), ArithError> {
    if b.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    Ok(a.div_rem(b))
}

/// `a^e mod n` by left-to-right square-and-multiply.
pub fn powmod(a: &Nat, e: &Nat, n: &Nat) -> Result<Nat, ArithError> {
    if *n < Nat::from(2u32) {
        return Err(ArithError::ModulusTooSmall);
    }
    if let Some(m) = n.to_u64() {
        let base = (a % n).to_u64().expect("reduced below a u64 modulus");
        return Ok(Nat::from(powmod_word(base, e, m)));
    }
    let base = a % n;
    let mut acc = Nat::one();
    for i in (0..e.bits()).rev() {
        acc = &acc * &acc % n;
        if e.bit(i) {
            acc = acc * &base % n;
        }
    }
    Ok(acc)
}

fn powmod_word(base: u64, e: &Nat, m: u64) -> u64 {
    if let Some(e) = e.to_u64() {
        return powmod_u64(base, e, m);
    }
    let mut acc = 1u64;
    for i in (0..e.bits()).rev() {
        acc = mulmod_u64(acc, acc, m);
        if e.bit(i) {
            acc = mulmod_u64(acc, base, m);
        }
    }
    acc
}

fn mulmod_u64(x: u64, y: u64, m: u64) -> u64 {
    if m <= u64::from(u32::MAX) {
        x * y % m
    } else {
        (x as u128 * y as u128 % m as u128) as u64
    }
}

/// `base^e mod m` on machine words. Requires `base < m` and `m >= 2`.
pub fn powmod_u64(base: u64, e: u64, m: u64) -> u64 {
    if m % 2 == 1 {
        return Montgomery::new(m).pow(base, e);
    }
    let mut acc = 1u64;
    for i in (0..u64::BITS - e.leading_zeros()).rev() {
        acc = mulmod_u64(acc, acc, m);
        if e >> i & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
    }
    acc
}

/// Montgomery arithmetic modulo an odd `m` with `R = 2^64`.
struct Montgomery {
    m: u64,
    /// `-m^-1 mod 2^64`.
    neg_inv: u64,
}

impl Montgomery {
    fn new(m: u64) -> Self {
        // Newton lifting: each step doubles the number of correct low bits.
        let mut inv = m;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(m.wrapping_mul(inv)));
        }
        Montgomery {
            m,
            neg_inv: inv.wrapping_neg(),
        }
    }

    /// `t R^-1 mod m` for `t < m R`.
    fn reduce(&self, t: u128) -> u64 {
        let q = (t as u64).wrapping_mul(self.neg_inv);
        let (sum, carry) = t.overflowing_add(q as u128 * self.m as u128);
        let u = (sum >> 64) as u64;
        if carry || u >= self.m {
            u.wrapping_sub(self.m)
        } else {
            u
        }
    }

    fn mul(&self, x: u64, y: u64) -> u64 {
        self.reduce(x as u128 * y as u128)
    }

    fn pow(&self, base: u64, e: u64) -> u64 {
        let m = self.m;
        // r1 = R mod m, r2 = R^2 mod m.
        let r1 = (u64::MAX % m + 1) % m;
        let r2 = if m <= u64::from(u32::MAX) {
            r1 * r1 % m
        } else {
            (r1 as u128 * r1 as u128 % m as u128) as u64
        };
        let base = self.mul(base, r2);
        let mut acc = r1;
        for i in (0..u64::BITS - e.leading_zeros()).rev() {
            acc = self.mul(acc, acc);
            if e >> i & 1 == 1 {
                acc = self.mul(acc, base);
            }
        }
        self.reduce(acc as u128)
    }
}

/// Largest `s` with `s*s <= n` (Newton iteration from above).
pub fn isqrt(n: &Nat) -> Nat {
    if n.is_zero() {
        return Nat::zero();
    }
    let mut x = Nat::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// True iff `n` is the square of an integer. Negative values never are.
pub fn is_square(n: &Int) -> bool {
    match n.sign() {
        Sign::Minus => false,
        Sign::NoSign => true,
        Sign::Plus => {
            let m = n.magnitude();
            let s = isqrt(m);
            &s * &s == *m
        }
    }
}

/// Prime-power factorization found by trial division, plus the unfactored rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList {
    /// `(p, alpha)` pairs, strictly increasing in `p`.
    pub entries: Vec<(Nat, u32)>,
    pub cofactor: Nat,
}

impl FactorList {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }

    /// Product of every `p^alpha` times the cofactor; equals the factored input.
    pub fn recompose(&self) -> Nat {
        self.entries
            .iter()
            .fold(self.cofactor.clone(), |acc, (p, alpha)| acc * p.pow(*alpha))
    }
}

/// `min(isqrt(n), 2^20)`.
pub fn default_trial_bound(n: &Nat) -> Nat {
    isqrt(n).min(Nat::from(DEFAULT_TRIAL_CAP))
}

/// Divides out every prime `p <= bound`.
///
/// Division stops early once `p*p` exceeds what is left. A remainder `> 1`
/// left at that point has no divisor up to its square root, so it is prime
/// and is recorded as a final entry (possibly larger than `bound`).
/// Otherwise it stays as the cofactor.
pub fn trial_factorize(n: &Nat, bound: &Nat) -> FactorList {
    assert!(!n.is_zero(), "trial_factorize requires n >= 1");
    let bound = bound.to_u64().unwrap_or(u64::MAX);
    let mut rest = n.clone();
    let mut entries = Vec::new();
    let mut d = 2u64;
    let mut sqrt_exceeded = false;
    loop {
        if d > bound {
            break;
        }
        if Nat::from(d) * d > rest {
            sqrt_exceeded = true;
            break;
        }
        if (&rest % d).is_zero() {
            let mut alpha = 0;
            while (&rest % d).is_zero() {
                rest /= d;
                alpha += 1;
            }
            entries.push((Nat::from(d), alpha));
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if !sqrt_exceeded && Nat::from(d) * d > rest {
        sqrt_exceeded = true;
    }
    if sqrt_exceeded && rest > Nat::one() {
        entries.push((rest, 1));
        rest = Nat::one();
    }
    FactorList {
        entries,
        cofactor: rest,
    }
}

/// True iff `n` has exactly two positive divisors, by trial division up to `isqrt(n)`.
pub fn is_prime_trial(n: &Nat) -> bool {
    if let Some(m) = n.to_u64() {
        return is_prime_word(m);
    }
    if n.is_even() {
        return false;
    }
    let limit = isqrt(n);
    let mut d = Nat::from(3u32);
    while d <= limit {
        if (n % &d).is_zero() {
            return false;
        }
        d += 2u32;
    }
    true
}

fn is_prime_word(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn n(x: u64) -> Nat {
        Nat::from(x)
    }

    fn sieve(limit: usize) -> Vec<bool> {
        let mut is_p = vec![true; limit + 1];
        is_p[0] = false;
        if limit >= 1 {
            is_p[1] = false;
        }
        let mut i = 2;
        while i * i <= limit {
            if is_p[i] {
                let mut j = i * i;
                while j <= limit {
                    is_p[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        is_p
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&n(7), &n(0)).unwrap(), n(7));
        assert_eq!(gcd(&n(0), &n(7)).unwrap(), n(7));
        assert_eq!(gcd(&n(12), &n(18)).unwrap(), n(6));
        assert_eq!(gcd(&12u64, &18u64).unwrap(), 6);
        assert_eq!(gcd(&n(0), &n(0)), Err(ArithError::GcdOfZeros));
    }

    #[test]
    fn bezout_examples() {
        let (g, u, v) = bezout(&n(1), &n(35)).unwrap();
        assert_eq!((g, u, v), (n(1), Int::one(), Int::zero()));
        let (g, u, v) = bezout(&n(240), &n(46)).unwrap();
        assert_eq!(g, n(2));
        assert_eq!(Int::from(240) * u + Int::from(46) * v, Int::from(2));
        assert_eq!(bezout(&n(0), &n(0)), Err(ArithError::GcdOfZeros));
    }

    #[test]
    fn bezout_identity_grid() {
        for a in 0..=1000u64 {
            for b in (0..=1000u64).step_by(7) {
                if a == 0 && b == 0 {
                    continue;
                }
                let (g, u, v) = bezout(&n(a), &n(b)).unwrap();
                assert_eq!(g, gcd(&n(a), &n(b)).unwrap());
                assert_eq!(Int::from(a) * u + Int::from(b) * v, Int::from(g));
            }
        }
    }

    #[test]
    fn gauss_divisibility() {
        for m in 1..=300u64 {
            for nn in 1..=300u64 {
                if gcd(&m, &nn).unwrap() != 1 {
                    continue;
                }
                for p in 1..=300u64 {
                    if (nn * p) % m == 0 {
                        assert_eq!(p % m, 0, "m={m} n={nn} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn powmod_examples() {
        assert_eq!(powmod(&n(5), &n(0), &n(13)).unwrap(), n(1));
        assert_eq!(powmod(&n(3), &n(8), &n(17)).unwrap(), n(16));
        assert_eq!(
            powmod(&n(3), &n(8), &n(1)),
            Err(ArithError::ModulusTooSmall)
        );
    }

    #[test]
    fn powmod_matches_naive_product() {
        for modulus in 2..=97u64 {
            for a in 0..=64u64 {
                let mut naive = 1 % modulus;
                for e in 0..=64u64 {
                    assert_eq!(powmod(&n(a), &n(e), &n(modulus)).unwrap(), n(naive));
                    naive = naive * a % modulus;
                }
            }
        }
    }

    #[test]
    fn powmod_multiword_matches_library() {
        let m = (Nat::one() << 200u32) + 235u32;
        let a = (Nat::one() << 190u32) + 12345u32;
        let e = (Nat::one() << 150u32) - 3u32;
        assert_eq!(powmod(&a, &e, &m).unwrap(), a.modpow(&e, &m));
    }

    #[test]
    fn isqrt_examples_and_exhaustive() {
        assert_eq!(isqrt(&n(0)), n(0));
        assert_eq!(isqrt(&n(99)), n(9));
        for x in 0..=1_000_000u64 {
            let s = isqrt(&n(x)).to_u64().unwrap();
            assert!(s * s <= x && x < (s + 1) * (s + 1), "x={x}");
        }
        let big = (Nat::one() << 301u32) + 17u32;
        assert_eq!(isqrt(&big), big.sqrt());
    }

    #[test]
    fn is_square_examples() {
        assert!(is_square(&Int::zero()));
        assert!(is_square(&Int::from(49)));
        assert!(!is_square(&Int::from(50)));
        assert!(!is_square(&Int::from(-4)));
        assert!(!is_square(&Int::from(-31)));
    }

    #[test]
    fn trial_factorize_examples() {
        let one = trial_factorize(&n(1), &n(100));
        assert!(one.entries.is_empty());
        assert_eq!(one.cofactor, n(1));
        let f = trial_factorize(&n(96), &n(100));
        assert_eq!(f.entries, vec![(n(2), 5), (n(3), 1)]);
        assert!(f.is_complete());
    }

    #[test]
    fn trial_factorize_small_bound_leaves_cofactor() {
        // 2 * 3 * 1009 * 1013 with bound 100: the two large primes stay together.
        let f = trial_factorize(&n(2 * 3 * 1009 * 1013), &n(100));
        assert_eq!(f.entries, vec![(n(2), 1), (n(3), 1)]);
        assert_eq!(f.cofactor, n(1009 * 1013));
        // 1000000006 = 2 * 500000003: the large prime is certified by exhaustion.
        let f = trial_factorize(&n(1_000_000_006), &default_trial_bound(&n(1_000_000_006)));
        assert_eq!(f.entries, vec![(n(2), 1), (n(500_000_003), 1)]);
        assert!(f.is_complete());
    }

    #[test]
    fn trial_factorize_recomposes() {
        for x in 1..=100_000u64 {
            let f = trial_factorize(&n(x), &default_trial_bound(&n(x)));
            assert_eq!(f.recompose(), n(x));
            assert!(f.is_complete(), "x={x}");
            assert!(f.entries.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.entries.iter().all(|(p, a)| *a >= 1 && is_prime_trial(p)));
        }
    }

    #[test]
    fn is_prime_trial_matches_sieve() {
        assert!(!is_prime_trial(&n(1)));
        assert!(is_prime_trial(&n(2)));
        let table = sieve(1_000_000);
        for (x, &p) in table.iter().enumerate() {
            assert_eq!(is_prime_trial(&n(x as u64)), p, "x={x}");
        }
    }

    #[test]
    fn is_prime_trial_beyond_word() {
        // 2^64 + 13 is prime; 2^64 + 1 = 274177 * 67280421310721.
        let two64 = Nat::one() << 64u32;
        assert!(!is_prime_trial(&(&two64 + 1u32)));
        assert!(!is_prime_trial(&(&two64 + 2u32)));
    }

    proptest! {
        #[test]
        fn word_powmod_matches_library(m in 2u64.., a in any::<u64>(), e in any::<u64>(),
                                       top in any::<bool>()) {
            // Moduli just below 2^64 exercise the carry in the Montgomery reduction.
            let m = if top { u64::MAX - (m % 1000) } else { m };
            let base = a % m;
            let expected = n(base).modpow(&n(e), &n(m));
            prop_assert_eq!(n(powmod_u64(base, e, m)), expected.clone());
            let multiword_e = (n(e) << 64u32) + 7u32;
            prop_assert_eq!(
                powmod(&n(a), &multiword_e, &n(m)).unwrap(),
                n(a).modpow(&multiword_e, &n(m))
            );
        }

        #[test]
        fn divmod_round_trip(a in prop::collection::vec(any::<u32>(), 1..12),
                             b in prop::collection::vec(any::<u32>(), 1..6)) {
            let a = Nat::new(a);
            let b = Nat::new(b);
            prop_assume!(!b.is_zero());
            let (q, r) = divmod(&a, &b).unwrap();
            prop_assert!(r < b);
            prop_assert_eq!(q * &b + r, a);
        }

        #[test]
        fn gcd_reduces_first_argument(a in 0u64..u64::MAX, b in 1u64..u64::MAX) {
            prop_assert_eq!(gcd(&n(a), &n(b)).unwrap(), gcd(&n(a % b), &n(b)).unwrap());
        }

        #[test]
        fn bezout_multiword(a in prop::collection::vec(any::<u32>(), 1..6),
                            b in prop::collection::vec(any::<u32>(), 1..6)) {
            let (a, b) = (Nat::new(a), Nat::new(b));
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let (g, u, v) = bezout(&a, &b).unwrap();
            prop_assert_eq!(&Int::from(a.clone()) * u + Int::from(b.clone()) * v, Int::from(g.clone()));
            prop_assert_eq!(g, a.gcd(&b));
        }

        #[test]
        fn is_square_agrees_with_squaring(x in -1_000_000i64..1_000_000) {
            let sq = Int::from(x) * Int::from(x);
            prop_assert!(is_square(&sq));
            if x != 0 {
                prop_assert!(!is_square(&(&sq + Int::one())));
                prop_assert!(!is_square(&(-sq.abs())));
            }
        }
    }
}
