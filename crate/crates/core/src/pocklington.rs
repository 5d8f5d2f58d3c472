//! Pocklington `N - 1` primality certificates.
//!
//! A certificate records a factored part `F1` of `N - 1 = F1 * R1` and, for
//! every prime `p | F1`, a base `a` with
//!
//! * `a^(N-1) = 1 (mod N)` and
//! * `gcd(a^((N-1)/p) - 1, N) = 1`.
//!
//! Every prime divisor of `N` is then `1 (mod F1)`. The basic variant
//! concludes primality from `F1^2 > N`. The extended variant only needs a
//! smaller `F1` together with the bound, lambda and discriminant conditions
//! checked in [`verify_extended`]. Witness primes are themselves proved prime
//! either by trial division (below a small-prime bound) or by a nested child
//! certificate.

use std::collections::BTreeMap;
use std::fmt;
use std::num::NonZeroU64;

use num_integer::Integer;
use num_traits::{CheckedSub, One, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{
    default_trial_bound, gcd, is_prime_trial, is_square, powmod, powmod_u64, trial_factorize, Int,
    Nat,
};

/// Witness primes at or below this bound are checked by trial division.
pub const DEFAULT_SMALL_PRIME_BOUND: u64 = 1_000_000;

/// Largest base the generator tries for a single witness prime.
pub const DEFAULT_WITNESS_SEARCH_CAP: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PocklingtonError {
    #[error(
        "witness prime {p} does not divide F1 = {f1}, or F1 does not divide N - 1 = {n_minus_1}"
    )]
    DivisionContract { p: Nat, f1: Nat, n_minus_1: Nat },
    #[error("N = {0} is below 3")]
    NTooSmall(Nat),
    #[error("certificate variant is {found}, expected {expected}")]
    WrongVariant {
        expected: &'static str,
        found: &'static str,
    },
    #[error("Fermat index must be at least 1")]
    FermatIndexZero,
    #[error("Proth parameters need h odd, k >= 1 and 2^k > h (h = {h}, k = {k})")]
    NotProth { h: Nat, k: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("N = {0} is below 3")]
    NTooSmall(Nat),
    #[error(
        "cannot certify {n}: the factors of N - 1 found by trial division never reach F1^2 > N"
    )]
    FactorizationIncomplete { n: Nat },
    #[error("cannot certify {n}: no witness base for prime {p} up to {cap}")]
    WitnessSearchExhausted { n: Nat, p: Nat, cap: u64 },
}

/// A base `a` for one prime power `p^alpha` exactly dividing `F1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub p: Nat,
    pub alpha: u64,
    pub a: Nat,
}

impl Witness {
    pub fn new(p: impl Into<Nat>, alpha: u64, a: impl Into<Nat>) -> Self {
        Witness {
            p: p.into(),
            alpha,
            a: a.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Basic,
    Extended { m: NonZeroU64 },
}

impl Variant {
    fn name(&self) -> &'static str {
        match self {
            Variant::Basic => "basic",
            Variant::Extended { .. } => "extended",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub n: Nat,
    pub f1: Nat,
    pub r1: Nat,
    /// Sorted by strictly increasing `p`.
    pub witnesses: Vec<Witness>,
    pub variant: Variant,
    /// Sub-certificates keyed by the witness prime they prove.
    pub children: BTreeMap<Nat, Certificate>,
}

impl Certificate {
    pub fn basic(n: Nat, f1: Nat, r1: Nat, witnesses: Vec<Witness>) -> Self {
        Certificate {
            n,
            f1,
            r1,
            witnesses,
            variant: Variant::Basic,
            children: BTreeMap::new(),
        }
    }

    pub fn extended(n: Nat, f1: Nat, r1: Nat, m: NonZeroU64, witnesses: Vec<Witness>) -> Self {
        Certificate {
            variant: Variant::Extended { m },
            ..Certificate::basic(n, f1, r1, witnesses)
        }
    }

    pub fn with_child(mut self, child: Certificate) -> Self {
        self.children.insert(child.n.clone(), child);
        self
    }

    /// First broken structural invariant, if any: `F1 > 1`, `R1 > 0`,
    /// `N - 1 = F1 * R1`, witnesses strictly increasing in `p` with
    /// `alpha >= 1`, and `prod p^alpha = F1`.
    pub fn structure_violation(&self) -> Option<String> {
        if self.f1 <= Nat::one() {
            return Some(format!("F1 = {} is not above 1", self.f1));
        }
        if self.r1.is_zero() {
            return Some("R1 is zero".into());
        }
        if self.n.is_zero() || &self.n - 1u32 != &self.f1 * &self.r1 {
            return Some(format!(
                "N - 1 = F1 * R1 fails for N = {}, F1 = {}, R1 = {}",
                self.n, self.f1, self.r1
            ));
        }
        if let Some(pair) = self.witnesses.windows(2).find(|w| w[0].p >= w[1].p) {
            return Some(format!(
                "witness primes not strictly increasing ({} then {})",
                pair[0].p, pair[1].p
            ));
        }
        if let Some(w) = self
            .witnesses
            .iter()
            .find(|w| w.alpha == 0 || w.p < Nat::from(2u32))
        {
            return Some(format!(
                "degenerate witness p = {}, alpha = {}",
                w.p, w.alpha
            ));
        }
        let product = self.witness_product();
        if product != self.f1 {
            return Some(format!(
                "witness prime powers multiply to {} instead of F1 = {}",
                product, self.f1
            ));
        }
        None
    }

    fn witness_product(&self) -> Nat {
        // Bail out once the product overshoots F1 so absurd alphas stay cheap.
        let mut acc = Nat::one();
        for w in &self.witnesses {
            for _ in 0..w.alpha {
                acc *= &w.p;
                if acc > self.f1 {
                    return acc;
                }
            }
        }
        acc
    }

    /// Number of certificates in the chain, this one included.
    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .values()
            .map(Certificate::node_count)
            .sum::<usize>()
    }
}

/// Identifier of the condition a certificate failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    FactorizationMismatch,
    FermatCondition,
    GcdCondition,
    SizeBound,
    LambdaDivisor,
    SquareDiscriminant,
    ChildCertificate,
    SmallPrime,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::FactorizationMismatch,
        Condition::FermatCondition,
        Condition::GcdCondition,
        Condition::SizeBound,
        Condition::LambdaDivisor,
        Condition::SquareDiscriminant,
        Condition::ChildCertificate,
        Condition::SmallPrime,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Condition::FactorizationMismatch => "factorization-mismatch",
            Condition::FermatCondition => "fermat-condition",
            Condition::GcdCondition => "gcd-condition",
            Condition::SizeBound => "size-bound",
            Condition::LambdaDivisor => "lambda-divisor",
            Condition::SquareDiscriminant => "square-discriminant",
            Condition::ChildCertificate => "child-certificate",
            Condition::SmallPrime => "small-prime",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Where and why verification stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    /// Condition reported at the root: `ChildCertificate` whenever the
    /// failing node is a descendant.
    pub condition: Condition,
    /// Condition that failed at the failing node itself.
    pub cause: Condition,
    /// Witness primes leading from the root to the failing node.
    pub path: Vec<Nat>,
    pub detail: String,
}

impl Failure {
    fn at_node(condition: Condition, detail: impl Into<String>) -> Self {
        Failure {
            condition,
            cause: condition,
            path: Vec::new(),
            detail: detail.into(),
        }
    }

    /// `root/p/q` style rendering of [`Failure::path`].
    pub fn path_string(&self) -> String {
        std::iter::once("root".to_string())
            .chain(self.path.iter().map(Nat::to_string))
            .collect::<Vec<_>>()
            .join("/")
    }
}

/// Verdict of a verifier; accepted exactly when there is no failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    failure: Option<Failure>,
}

impl VerifyReport {
    pub fn accepted() -> Self {
        VerifyReport { failure: None }
    }

    pub fn rejected(failure: Failure) -> Self {
        VerifyReport {
            failure: Some(failure),
        }
    }

    pub fn is_accepted(&self) -> bool {
        self.failure.is_none()
    }

    pub fn failure(&self) -> Option<&Failure> {
        self.failure.as_ref()
    }

    /// Condition reported at the root, if rejected.
    pub fn condition(&self) -> Option<Condition> {
        self.failure.as_ref().map(|f| f.condition)
    }
}

fn n_minus_one(n: &Nat) -> Nat {
    n.checked_sub(&Nat::one()).unwrap_or_default()
}

/// Which witness condition fails, if any. Assumes `p | N - 1` and `N >= 2`.
fn witness_failure(n: &Nat, p: &Nat, a: &Nat) -> Option<Condition> {
    let nm1 = n_minus_one(n);
    if !powmod(a, &nm1, n).expect("N >= 2").is_one() {
        return Some(Condition::FermatCondition);
    }
    let x = powmod(a, &(&nm1 / p), n).expect("N >= 2");
    // a^((N-1)/p) - 1 reduced mod N without going negative; 0 gives gcd N.
    let shifted = (x + &nm1) % n;
    if !gcd(&shifted, n).expect("N >= 2").is_one() {
        return Some(Condition::GcdCondition);
    }
    None
}

/// True iff `a^(N-1) = 1 (mod N)` and `gcd(a^((N-1)/p) - 1, N) = 1`.
pub fn check_witness(n: &Nat, f1: &Nat, w: &Witness) -> Result<bool, PocklingtonError> {
    if *n < Nat::from(2u32) {
        return Err(PocklingtonError::NTooSmall(n.clone()));
    }
    let nm1 = n_minus_one(n);
    let contract_ok = w.p >= Nat::from(2u32)
        && !f1.is_zero()
        && f1.is_multiple_of(&w.p)
        && nm1.is_multiple_of(f1);
    if !contract_ok {
        return Err(PocklingtonError::DivisionContract {
            p: w.p.clone(),
            f1: f1.clone(),
            n_minus_1: nm1,
        });
    }
    Ok(witness_failure(n, &w.p, &w.a).is_none())
}

/// True when the witnesses cover the full factorization of `F1` and all
/// pass, i.e. when every prime divisor of `N` is guaranteed to be
/// `1 (mod F1)`.
pub fn divisor_congruence_holds(
    n: &Nat,
    f1: &Nat,
    witnesses: &[Witness],
) -> Result<bool, PocklingtonError> {
    let mut covered = Nat::one();
    for w in witnesses {
        if !check_witness(n, f1, w)? {
            return Ok(false);
        }
        covered *= w.p.pow(w.alpha.to_u32().unwrap_or(u32::MAX));
    }
    Ok(covered == *f1)
}

/// Basic corollary: `N - 1 = F1 * R1`, `F1^2 > N` and a passing witness for
/// every prime of `F1`; children are verified recursively.
pub fn verify_basic(cert: &Certificate) -> Result<VerifyReport, PocklingtonError> {
    if cert.variant != Variant::Basic {
        return Err(PocklingtonError::WrongVariant {
            expected: "basic",
            found: cert.variant.name(),
        });
    }
    Ok(verify_chain(cert, &Nat::from(DEFAULT_SMALL_PRIME_BOUND)))
}

/// Extended criterion with `s = R1 div 2F1`, `r = R1 mod 2F1`: requires `F1`
/// even, `R1` odd, `N < (m F1 + 1)(2 F1^2 + (r - m) F1 + 1)`, no
/// `lambda F1 + 1` dividing `N` for `1 <= lambda < m`, passing witnesses,
/// and `s = 0` or `r^2 - 8s` not a square.
pub fn verify_extended(cert: &Certificate) -> Result<VerifyReport, PocklingtonError> {
    if !matches!(cert.variant, Variant::Extended { .. }) {
        return Err(PocklingtonError::WrongVariant {
            expected: "extended",
            found: cert.variant.name(),
        });
    }
    Ok(verify_chain(cert, &Nat::from(DEFAULT_SMALL_PRIME_BOUND)))
}

/// Verifies `cert` according to its variant, and every child recursively.
/// Witness primes up to `small_prime_bound` without a child are checked by
/// trial division; larger ones must carry a child certificate.
pub fn verify_chain(cert: &Certificate, small_prime_bound: &Nat) -> VerifyReport {
    match verify_node(cert, small_prime_bound) {
        Ok(()) => VerifyReport::accepted(),
        Err(failure) => VerifyReport::rejected(failure),
    }
}

fn verify_node(cert: &Certificate, small_prime_bound: &Nat) -> Result<(), Failure> {
    if let Some(detail) = cert.structure_violation() {
        return Err(Failure::at_node(Condition::FactorizationMismatch, detail));
    }
    match cert.variant {
        Variant::Basic => {
            if &cert.f1 * &cert.f1 <= cert.n {
                return Err(Failure::at_node(
                    Condition::SizeBound,
                    format!(
                        "F1^2 = {} does not exceed N = {}",
                        &cert.f1 * &cert.f1,
                        cert.n
                    ),
                ));
            }
        }
        Variant::Extended { m } => check_extended_bounds(cert, m.get())?,
    }
    for w in &cert.witnesses {
        if let Some(cond) = witness_failure(&cert.n, &w.p, &w.a) {
            return Err(Failure::at_node(
                cond,
                format!("base {} fails for prime {}", w.a, w.p),
            ));
        }
    }
    if let Some(stray) = cert
        .children
        .keys()
        .find(|p| !cert.witnesses.iter().any(|w| &w.p == *p))
    {
        return Err(Failure::at_node(
            Condition::ChildCertificate,
            format!("child certificate for {stray}, which is not a witness prime"),
        ));
    }
    for w in &cert.witnesses {
        match cert.children.get(&w.p) {
            Some(child) => {
                if child.n != w.p {
                    return Err(Failure {
                        path: vec![w.p.clone()],
                        ..Failure::at_node(
                            Condition::ChildCertificate,
                            format!("child filed under {} certifies {}", w.p, child.n),
                        )
                    });
                }
                if let Err(mut inner) = verify_node(child, small_prime_bound) {
                    inner.condition = Condition::ChildCertificate;
                    inner.path.insert(0, w.p.clone());
                    return Err(inner);
                }
            }
            None if w.p <= *small_prime_bound => {
                if !is_prime_trial(&w.p) {
                    return Err(Failure::at_node(
                        Condition::SmallPrime,
                        format!("{} is not prime", w.p),
                    ));
                }
            }
            None => {
                return Err(Failure::at_node(
                    Condition::ChildCertificate,
                    format!("{} exceeds the small-prime bound and has no child", w.p),
                ));
            }
        }
    }
    Ok(())
}

/// Parameters `(s, r)` with `R1 = s * 2F1 + r`, `0 <= r < 2F1`.
pub fn extended_parameters(f1: &Nat, r1: &Nat) -> (Nat, Nat) {
    r1.div_rem(&(f1 << 1u32))
}

/// `(m F1 + 1)(2 F1^2 + (r - m) F1 + 1)`, evaluated over the integers.
pub fn extended_size_bound(f1: &Nat, r: &Nat, m: u64) -> Int {
    let f1 = Int::from(f1.clone());
    let m = Int::from(m);
    let left = &m * &f1 + 1;
    let right = 2 * &f1 * &f1 + (Int::from(r.clone()) - &m) * &f1 + 1;
    left * right
}

fn check_extended_bounds(cert: &Certificate, m: u64) -> Result<(), Failure> {
    if cert.f1.is_odd() || cert.r1.is_even() {
        return Err(Failure::at_node(
            Condition::FactorizationMismatch,
            format!(
                "extended variant needs F1 even and R1 odd (F1 = {}, R1 = {})",
                cert.f1, cert.r1
            ),
        ));
    }
    let (s, r) = extended_parameters(&cert.f1, &cert.r1);
    let bound = extended_size_bound(&cert.f1, &r, m);
    if Int::from(cert.n.clone()) >= bound {
        return Err(Failure::at_node(
            Condition::SizeBound,
            format!("N = {} is not below {}", cert.n, bound),
        ));
    }
    let mut divisor = &cert.f1 + 1u32;
    for lambda in 1..m {
        if cert.n.is_multiple_of(&divisor) {
            return Err(Failure::at_node(
                Condition::LambdaDivisor,
                format!("{lambda} * F1 + 1 = {divisor} divides N"),
            ));
        }
        divisor += &cert.f1;
    }
    if !s.is_zero() {
        let r = Int::from(r);
        let disc = &r * &r - 8 * Int::from(s);
        if is_square(&disc) {
            return Err(Failure::at_node(
                Condition::SquareDiscriminant,
                format!("r^2 - 8s = {disc} is a square"),
            ));
        }
    }
    Ok(())
}

/// `F_k = 2^(2^k) + 1`.
pub fn fermat_number(k: u32) -> Nat {
    (Nat::one() << (1u64 << k)) + 1u32
}

/// Pepin: true iff `3^((F_k - 1)/2) = -1 (mod F_k)`, which proves `F_k` prime.
pub fn pepin_test(k: u32) -> Result<bool, PocklingtonError> {
    if k == 0 {
        return Err(PocklingtonError::FermatIndexZero);
    }
    let f = fermat_number(k);
    let half = (&f - 1u32) >> 1u32;
    Ok(powmod(&Nat::from(3u32), &half, &f).expect("F_k >= 5") == &f - 1u32)
}

/// The basic certificate behind a passing Pepin test: `F1 = F_k - 1`, base 3.
pub fn pepin_certificate(k: u32) -> Result<Certificate, PocklingtonError> {
    if k == 0 {
        return Err(PocklingtonError::FermatIndexZero);
    }
    let f = fermat_number(k);
    Ok(Certificate::basic(
        f.clone(),
        f - 1u32,
        Nat::one(),
        vec![Witness::new(2u32, 1u64 << k, 3u32)],
    ))
}

fn proth_number(h: &Nat, k: u64) -> Result<Nat, PocklingtonError> {
    let two_k = Nat::one() << k;
    if k == 0 || h.is_even() || two_k <= *h {
        return Err(PocklingtonError::NotProth { h: h.clone(), k });
    }
    Ok(h * two_k + 1u32)
}

/// Proth: for `P = h 2^k + 1` with `h` odd and `2^k > h`, true iff
/// `a^((P-1)/2) = -1 (mod P)`, which proves `P` prime.
pub fn proth_test(h: &Nat, k: u64, a: &Nat) -> Result<bool, PocklingtonError> {
    if let (Some(hw), true) = (h.to_u64(), k < 64) {
        if let Some(pw) = hw.checked_mul(1 << k).and_then(|x| x.checked_add(1)) {
            if k == 0 || hw % 2 == 0 || (1u64 << k) <= hw {
                return Err(PocklingtonError::NotProth { h: h.clone(), k });
            }
            let base = a
                .to_u64()
                .map_or_else(|| (a % pw).to_u64().expect("below P"), |a| a % pw);
            return Ok(powmod_u64(base, (pw - 1) / 2, pw) == pw - 1);
        }
    }
    let p = proth_number(h, k)?;
    let half = (&p - 1u32) >> 1u32;
    Ok(powmod(a, &half, &p).expect("P >= 3") == &p - 1u32)
}

/// The basic certificate `F1 = 2^k`, `R1 = h` with witness `(2, k, a)`.
pub fn proth_certificate(h: &Nat, k: u64, a: &Nat) -> Result<Certificate, PocklingtonError> {
    let p = proth_number(h, k)?;
    Ok(Certificate::basic(
        p,
        Nat::one() << k,
        h.clone(),
        vec![Witness::new(2u32, k, a.clone())],
    ))
}

/// Desk-scale certificate generator.
///
/// Factors `N - 1` by trial division, takes prime powers in increasing order
/// until `F1^2 > N`, picks the smallest base coprime to `N` that works for
/// each prime, and recurses on primes above the small-prime bound. The output
/// is deterministic.
#[derive(Debug, Clone)]
pub struct Generator {
    /// Trial-division bound for `N - 1`; `None` means [`default_trial_bound`] at every level.
    pub trial_bound: Option<Nat>,
    pub small_prime_bound: Nat,
    pub witness_search_cap: u64,
}

impl Default for Generator {
    fn default() -> Self {
        Generator {
            trial_bound: None,
            small_prime_bound: Nat::from(DEFAULT_SMALL_PRIME_BOUND),
            witness_search_cap: DEFAULT_WITNESS_SEARCH_CAP,
        }
    }
}

impl Generator {
    pub fn certify(&self, n: &Nat) -> Result<Certificate, GenerateError> {
        if *n < Nat::from(3u32) {
            return Err(GenerateError::NTooSmall(n.clone()));
        }
        let nm1 = n - 1u32;
        let bound = self
            .trial_bound
            .clone()
            .unwrap_or_else(|| default_trial_bound(&nm1));
        let factors = trial_factorize(&nm1, &bound);

        let mut f1 = Nat::one();
        let mut chosen = Vec::new();
        for (p, alpha) in &factors.entries {
            if &f1 * &f1 > *n {
                break;
            }
            f1 *= p.pow(*alpha);
            chosen.push((p.clone(), u64::from(*alpha)));
        }
        if &f1 * &f1 <= *n {
            return Err(GenerateError::FactorizationIncomplete { n: n.clone() });
        }

        let mut witnesses = Vec::with_capacity(chosen.len());
        for (p, alpha) in chosen {
            let a = self.find_base(n, &p)?;
            witnesses.push(Witness { p, alpha, a });
        }
        let mut cert = Certificate::basic(n.clone(), f1.clone(), &nm1 / &f1, witnesses);
        for w in &cert.witnesses.clone() {
            if w.p > self.small_prime_bound {
                cert.children.insert(w.p.clone(), self.certify(&w.p)?);
            }
        }
        Ok(cert)
    }

    fn find_base(&self, n: &Nat, p: &Nat) -> Result<Nat, GenerateError> {
        let limit = (n - 1u32).min(Nat::from(self.witness_search_cap));
        let mut a = Nat::from(2u32);
        while a <= limit {
            if gcd(&a, n).expect("n >= 3").is_one() && witness_failure(n, p, &a).is_none() {
                return Ok(a);
            }
            a += 1u32;
        }
        Err(GenerateError::WitnessSearchExhausted {
            n: n.clone(),
            p: p.clone(),
            cap: self.witness_search_cap,
        })
    }
}

/// [`Generator::certify`] with an explicit trial-division bound for `N - 1`.
pub fn generate_certificate(n: &Nat, bound: &Nat) -> Result<Certificate, GenerateError> {
    Generator {
        trial_bound: Some(bound.clone()),
        ..Generator::default()
    }
    .certify(n)
}
