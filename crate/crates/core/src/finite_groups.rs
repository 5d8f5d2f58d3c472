//! Enumerated finite monoids and groups.
//!
//! Carriers are explicit sorted lists of element ids and the operation is an
//! arbitrary closure, so every axiom can be checked by brute force. This is
//! the model behind the unit groups `(Z/nZ)*`, element orders and the
//! cyclic subgroups `<a>` used throughout the test suites.

use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::arith::{bezout, gcd, Int, Nat};

/// Opaque element id.
pub type Elem = u64;

/// Largest modulus [`unit_group`] and [`EnumMonoid::integers_mod`] will enumerate.
pub const ENUMERATION_CAP: u64 = 1_000_000;

type Op = Arc<dyn Fn(Elem, Elem) -> Elem + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("modulus {0} is below 2")]
    ModulusTooSmall(u64),
    #[error("modulus {n} exceeds the enumeration capacity {cap}")]
    CapacityExceeded { n: u64, cap: u64 },
    #[error("{0} is not an element of the carrier")]
    NotAnElement(Elem),
}

/// A broken monoid or group law, with the offending elements.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomViolation {
    #[error("{a} * {b} = {product} leaves the carrier")]
    NotClosed { a: Elem, b: Elem, product: Elem },
    #[error("({a} * {b}) * {c} != {a} * ({b} * {c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("neutral element fails on {0}")]
    NotNeutral(Elem),
    #[error("{a} and its recorded inverse {inv} do not multiply to the neutral element")]
    BadInverse { a: Elem, inv: Elem },
}

/// A finite monoid given by an explicit carrier and an operation.
#[derive(Clone)]
pub struct EnumMonoid {
    elements: Vec<Elem>,
    op: Op,
    neutral: Elem,
}

impl fmt::Debug for EnumMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnumMonoid")
            .field("elements", &self.elements)
            .field("neutral", &self.neutral)
            .finish_non_exhaustive()
    }
}

impl EnumMonoid {
    /// Builds a monoid; the carrier is sorted and deduplicated. The laws are
    /// not checked here, see [`EnumMonoid::check_axioms`].
    pub fn new<F>(mut elements: Vec<Elem>, neutral: Elem, op: F) -> Result<Self, GroupError>
    where
        F: Fn(Elem, Elem) -> Elem + Send + Sync + 'static,
    {
        elements.sort_unstable();
        elements.dedup();
        if elements.binary_search(&neutral).is_err() {
            return Err(GroupError::NotAnElement(neutral));
        }
        Ok(Self {
            elements,
            op: Arc::new(op),
            neutral,
        })
    }

    /// `Z/nZ` under multiplication mod `n`.
    pub fn integers_mod(n: u64) -> Result<Self, GroupError> {
        check_modulus(n)?;
        let elements = (0..n).collect();
        Self::new(elements, 1, move |a, b| {
            ((a as u128 * b as u128) % n as u128) as u64
        })
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn neutral(&self) -> Elem {
        self.neutral
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        (self.op)(a, b)
    }

    /// `a^k`, with `a^0` the neutral element.
    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut acc = self.neutral;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.op(acc, base);
            }
            base = self.op(base, base);
            k >>= 1;
        }
        acc
    }

    /// Exhaustive check of closure, neutrality and associativity (cubic in size).
    pub fn check_axioms(&self) -> Result<(), AxiomViolation> {
        let e = self.neutral;
        for &a in &self.elements {
            if self.op(e, a) != a || self.op(a, e) != a {
                return Err(AxiomViolation::NotNeutral(a));
            }
            for &b in &self.elements {
                let product = self.op(a, b);
                if !self.contains(product) {
                    return Err(AxiomViolation::NotClosed { a, b, product });
                }
            }
        }
        for &a in &self.elements {
            for &b in &self.elements {
                let ab = self.op(a, b);
                for &c in &self.elements {
                    if self.op(ab, c) != self.op(a, self.op(b, c)) {
                        return Err(AxiomViolation::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    fn restrict(&self, elements: Vec<Elem>) -> EnumMonoid {
        EnumMonoid {
            elements,
            op: Arc::clone(&self.op),
            neutral: self.neutral,
        }
    }
}

/// A finite group: a monoid plus an inverse for every element.
#[derive(Debug, Clone)]
pub struct EnumGroup {
    monoid: EnumMonoid,
    // inverses[i] is the inverse of monoid.elements[i]
    inverses: Vec<Elem>,
}

impl EnumGroup {
    fn from_pairs(base: &EnumMonoid, mut pairs: Vec<(Elem, Elem)>) -> Self {
        pairs.sort_unstable();
        let (elements, inverses) = pairs.into_iter().unzip();
        EnumGroup {
            monoid: base.restrict(elements),
            inverses,
        }
    }

    pub fn as_monoid(&self) -> &EnumMonoid {
        &self.monoid
    }

    pub fn elements(&self) -> &[Elem] {
        self.monoid.elements()
    }

    pub fn len(&self) -> usize {
        self.monoid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monoid.is_empty()
    }

    pub fn neutral(&self) -> Elem {
        self.monoid.neutral()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.monoid.contains(a)
    }

    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        self.monoid.op(a, b)
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        self.monoid.pow(a, k)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, GroupError> {
        self.monoid
            .elements
            .binary_search(&a)
            .map(|i| self.inverses[i])
            .map_err(|_| GroupError::NotAnElement(a))
    }

    /// Monoid laws plus `a * inv(a) = e = inv(a) * a` for every element.
    pub fn check_axioms(&self) -> Result<(), AxiomViolation> {
        self.monoid.check_axioms()?;
        let e = self.neutral();
        for (&a, &inv) in self.elements().iter().zip(&self.inverses) {
            if !self.contains(inv) || self.op(a, inv) != e || self.op(inv, a) != e {
                return Err(AxiomViolation::BadInverse { a, inv });
            }
        }
        Ok(())
    }
}

/// The group of invertible elements of `m`; each inverse is found by scanning the carrier.
pub fn invertibles(m: &EnumMonoid) -> EnumGroup {
    let e = m.neutral();
    let pairs = m
        .elements()
        .iter()
        .filter_map(|&a| {
            m.elements()
                .iter()
                .find(|&&c| m.op(c, a) == e && m.op(a, c) == e)
                .map(|&c| (a, c))
        })
        .collect();
    EnumGroup::from_pairs(m, pairs)
}

/// `(Z/nZ)*`: residues coprime to `n`, inverses taken from Bezout coefficients.
pub fn unit_group(n: u64) -> Result<EnumGroup, GroupError> {
    let zn = EnumMonoid::integers_mod(n)?;
    let modulus = Int::from(n);
    let pairs = (1..n)
        .filter_map(|a| {
            let (g, u, _) = bezout(&Nat::from(a), &Nat::from(n)).expect("n >= 2");
            if g != Nat::from(1u32) {
                return None;
            }
            let inv = ((u % &modulus) + &modulus) % &modulus;
            Some((a, inv.to_u64().expect("reduced mod a u64 modulus")))
        })
        .collect();
    Ok(EnumGroup::from_pairs(&zn, pairs))
}

/// Euler's function as the count of `1 <= i < n` coprime to `n`.
pub fn euler_phi(n: u64) -> u64 {
    (1..n).filter(|i| gcd(i, &n) == Ok(1)).count() as u64
}

/// Least `k >= 1` with `a^k = e`.
pub fn element_order(g: &EnumGroup, a: Elem) -> Result<u64, GroupError> {
    if !g.contains(a) {
        return Err(GroupError::NotAnElement(a));
    }
    let e = g.neutral();
    let mut power = a;
    let mut k = 1;
    while power != e {
        power = g.op(power, a);
        k += 1;
        assert!(
            k <= g.len() as u64,
            "element {a} has no finite order: the operation is not a group law"
        );
    }
    Ok(k)
}

/// `<a> = {e, a, ..., a^(o(a)-1)}` as a group, with `inv(a^i) = a^(o(a)-i)`.
pub fn generated_subgroup(g: &EnumGroup, a: Elem) -> Result<EnumGroup, GroupError> {
    let order = element_order(g, a)?;
    let mut powers = Vec::with_capacity(order as usize);
    let mut x = g.neutral();
    for _ in 0..order {
        powers.push(x);
        x = g.op(x, a);
    }
    let pairs = (0..powers.len())
        .map(|i| (powers[i], powers[(powers.len() - i) % powers.len()]))
        .collect();
    Ok(EnumGroup::from_pairs(&g.monoid, pairs))
}

fn check_modulus(n: u64) -> Result<(), GroupError> {
    if n < 2 {
        return Err(GroupError::ModulusTooSmall(n));
    }
    if n > ENUMERATION_CAP {
        return Err(GroupError::CapacityExceeded {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}
