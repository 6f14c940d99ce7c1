//! Scalar traits for the exact linear algebra layer.
//!
//! Two scalar families appear in the engine: arbitrary-precision integers
//! (`num_bigint::BigInt`) for integral chain complexes and Smith normal form,
//! and the prime fields `Fp<P>` for Moore complexes and mod-p ranks. The
//! [`Ring`] trait is the common denominator used by [`crate::matrix::SparseMat`];
//! [`Field`] adds inversion for Gaussian elimination.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Commutative ring with exact equality. Enough for matrix products,
/// alternating-sum boundaries, and echelon bookkeeping.
pub trait Ring:
    Clone
    + Eq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Add<Output = Self>
    + Mul<Output = Self>
{
    /// Image of a small integer under the unique map from Z.
    fn from_i64(v: i64) -> Self;
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

/// Field scalar: everything a ring has, plus inverses of nonzero elements.
pub trait Field: Ring + Copy {
    /// Multiplicative inverse. Panics on zero (callers pivot on nonzero entries).
    fn inverse(&self) -> Self;
}

/// Prime field with its characteristic exposed at the type level.
pub trait PrimeField: Field {
    const CHAR: u64;
    fn from_u64(v: u64) -> Self;
    fn to_u64(&self) -> u64;
}

/// The field with `P` elements, `P` prime. Only small primes are ever
/// instantiated (2, 3, 5, 7), so `u64` arithmetic never overflows.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp((self.0 * rhs.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Ring for Fp<P> {
    fn from_i64(v: i64) -> Self {
        let p = P as i64;
        Fp(v.rem_euclid(p) as u64)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inverse(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_{}", P);
        // Fermat: x^(P-2). P is prime by the contract on instantiations.
        self.pow(P - 2)
    }
}

impl<const P: u64> PrimeField for Fp<P> {
    const CHAR: u64 = P;
    fn from_u64(v: u64) -> Self {
        Fp::new(v)
    }
    fn to_u64(&self) -> u64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, F3, F5, F7};

    #[test]
    fn field_axioms_by_enumeration() {
        fn check<const P: u64>() {
            for a in 0..P {
                let x = Fp::<P>::new(a);
                assert_eq!(x + Fp::zero(), x);
                assert_eq!(x * Fp::one(), x);
                assert_eq!(x - x, Fp::zero());
                assert_eq!(x + (-x), Fp::zero());
                if a != 0 {
                    assert_eq!(x * x.inverse(), Fp::one());
                }
                for b in 0..P {
                    let y = Fp::<P>::new(b);
                    assert_eq!(x + y, y + x);
                    assert_eq!(x * y, y * x);
                    for c in 0..P {
                        let z = Fp::<P>::new(c);
                        assert_eq!((x + y) + z, x + (y + z));
                        assert_eq!(x * (y + z), x * y + x * z);
                    }
                }
            }
        }
        check::<2>();
        check::<3>();
        check::<5>();
        check::<7>();
    }

    #[test]
    fn characteristic_annihilates() {
        // p * x = 0 for every x: the "multiplication by p kills everything"
        // invariant that module homotopy inherits for free.
        fn check<F: PrimeField>() {
            for v in 0..F::CHAR {
                let x = F::from_u64(v);
                let mut acc = F::zero();
                for _ in 0..F::CHAR {
                    acc = acc + x;
                }
                assert!(acc.is_zero());
            }
        }
        check::<F2>();
        check::<F3>();
        check::<F5>();
        check::<F7>();
    }

    #[test]
    fn bigint_ring_roundtrip() {
        assert_eq!(BigInt::from_i64(-7), BigInt::from(-7));
        assert!(BigInt::from_i64(0).is_zero());
    }
}
