use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// An exact field. Implementations must be total and exact: no rounding, no
/// panics on valid inputs other than division by zero.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
}

/// Arbitrary-precision rational scalar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_fraction(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Exact integer value, if the rational is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn from_i64(n: i64) -> Self {
        Rat(BigRational::from(BigInt::from(n)))
    }
    fn add(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }
    fn neg(&self) -> Self {
        Rat(-&self.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "division by zero");
        Rat(self.0.recip())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

/// Residue scalar mod a prime.
///
/// Values built through `Field::from_i64` start as plain integer literals
/// (modulus 0) and are reduced the first time they meet a genuine residue;
/// [`Fp::with_modulus`] reduces them explicitly. Mixing two distinct moduli
/// panics.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp {
    value: i64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(is_prime(modulus), "modulus {modulus} is not prime");
        Fp { value, modulus: 0 }.with_modulus(modulus)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical representative in `[0, modulus)`; meaningless for literals.
    pub fn value(&self) -> u64 {
        debug_assert!(self.modulus != 0);
        self.value as u64
    }

    /// Reduce an integer literal into the given prime field.
    pub fn with_modulus(&self, modulus: u64) -> Fp {
        if self.modulus != 0 {
            assert_eq!(self.modulus, modulus, "mixed moduli");
            return *self;
        }
        let m = modulus as i128;
        let v = ((self.value as i128 % m) + m) % m;
        Fp { value: v as i64, modulus }
    }

    fn align(a: &Fp, b: &Fp) -> (Fp, Fp, u64) {
        match (a.modulus, b.modulus) {
            (0, 0) => (*a, *b, 0),
            (0, m) => (a.with_modulus(m), *b, m),
            (m, 0) => (*a, b.with_modulus(m), m),
            (m, n) => {
                assert_eq!(m, n, "mixed moduli {m} and {n}");
                (*a, *b, m)
            }
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp { value: 0, modulus: 0 }
    }
    fn one() -> Self {
        Fp { value: 1, modulus: 0 }
    }
    fn from_i64(n: i64) -> Self {
        Fp { value: n, modulus: 0 }
    }
    fn add(&self, other: &Self) -> Self {
        let (a, b, m) = Fp::align(self, other);
        if m == 0 {
            return Fp { value: a.value.checked_add(b.value).expect("literal overflow"), modulus: 0 };
        }
        Fp { value: (a.value + b.value) % m as i64, modulus: m }
    }
    fn neg(&self) -> Self {
        if self.modulus == 0 {
            return Fp { value: -self.value, modulus: 0 };
        }
        let m = self.modulus as i64;
        Fp { value: (m - self.value) % m, modulus: self.modulus }
    }
    fn mul(&self, other: &Self) -> Self {
        let (a, b, m) = Fp::align(self, other);
        if m == 0 {
            return Fp { value: a.value.checked_mul(b.value).expect("literal overflow"), modulus: 0 };
        }
        let v = (a.value as i128) * (b.value as i128) % m as i128;
        Fp { value: v as i64, modulus: m }
    }
    fn inv(&self) -> Self {
        if self.modulus == 0 {
            assert!(self.value == 1 || self.value == -1, "cannot invert literal {}", self.value);
            return *self;
        }
        let m = self.modulus;
        let v = self.value as u64 % m;
        assert!(v != 0, "division by zero");
        // Fermat: v^(m-2) mod m.
        let mut base = v as u128;
        let mut exp = m - 2;
        let mut acc: u128 = 1;
        let mm = m as u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % mm;
            }
            base = base * base % mm;
            exp >>= 1;
        }
        Fp { value: acc as i64, modulus: m }
    }
    fn is_zero(&self) -> bool {
        if self.modulus == 0 {
            self.value == 0
        } else {
            self.value % self.modulus as i64 == 0
        }
    }
    fn is_one(&self) -> bool {
        if self.modulus == 0 {
            self.value == 1
        } else {
            self.value % self.modulus as i64 == 1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic() {
        let a = Rat::from_fraction(1, 3);
        let b = Rat::from_fraction(1, 6);
        assert_eq!(a.add(&b), Rat::from_fraction(1, 2));
        assert_eq!(a.mul(&b.inv()), Rat::from_i64(2));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn fp_inverse() {
        for v in 1..7 {
            let x = Fp::new(v, 7);
            assert!(x.mul(&x.inv()).is_one());
        }
    }

    #[test]
    fn fp_literals_resolve_on_contact() {
        let lit = <Fp as Field>::from_i64(-3);
        let real = Fp::new(2, 7);
        let sum = lit.add(&real);
        assert_eq!(sum.value(), 6);
        assert_eq!(lit.with_modulus(7).value(), 4);
    }

    #[test]
    #[should_panic]
    fn fp_rejects_composite_modulus() {
        Fp::new(1, 10);
    }
}
