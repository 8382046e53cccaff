//! Coefficient rings for [`Poly`](crate::poly::Poly).

use core::fmt;

use crate::scalar::Scalar;

/// A commutative ring with a runtime context, so that e.g. `Z/pZ` can carry
/// its modulus while elements stay plain machine integers.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer; takes `self` because the ring carries runtime data.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, exp: u32) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Used by the printer to emit `-` instead of `+` between terms.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn fmt_elem(&self, a: &Self::Elem, f: &mut dyn fmt::Write) -> fmt::Result;
}

/// The rational numbers, with [`Scalar`] elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::ZERO
    }
    fn one(&self) -> Scalar {
        Scalar::ONE
    }
    fn from_i64(&self, n: i64) -> Scalar {
        Scalar::from(n)
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn is_negative(&self, a: &Scalar) -> bool {
        a.is_negative()
    }
    fn fmt_elem(&self, a: &Scalar, f: &mut dyn fmt::Write) -> fmt::Result {
        write!(f, "{a}")
    }
}
