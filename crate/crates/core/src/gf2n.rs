//! Arithmetic in GF(2^n), 1 <= n <= 16, in polynomial basis.
//!
//! An element is an `n`-bit integer whose bit `i` is the coefficient of
//! `x^i`. The modulus is an `(n+1)`-bit integer encoding the defining
//! irreducible polynomial in the same way.

use crate::error::{Error, Result};

/// A field element in polynomial-basis encoding.
pub type FieldElement = u32;

/// Maximum supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// Default moduli, indexed by `n - 1`: for every degree the primitive
/// polynomial of lowest weight that is numerically least among those.
pub const DEFAULT_MODULI: [u32; 16] = [
    0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b, 0x402b,
    0x8003, 0x1002d,
];

/// Carryless product of two polynomials of degree < 16.
#[inline]
pub fn clmul(a: u32, b: u32) -> u32 {
    let mut acc = 0u32;
    let mut b = b;
    let mut i = 0;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a << i;
        }
        b >>= 1;
        i += 1;
    }
    acc
}

/// Remainder of polynomial division over F_2.
pub fn poly_rem(mut a: u32, b: u32) -> u32 {
    debug_assert!(b != 0);
    let db = 31 - b.leading_zeros();
    while a != 0 {
        let da = 31 - a.leading_zeros();
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Smallest nontrivial factor of degree <= deg(p)/2, if any.
fn small_factor(p: u32) -> Option<u32> {
    let n = 31 - p.leading_zeros();
    (2u32..1 << (n / 2 + 1)).find(|&q| poly_rem(p, q) == 0)
}

/// An immutable description of GF(2^n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldContext {
    n: u32,
    modulus: u32,
}

impl FieldContext {
    /// Builds a field from a user-supplied modulus, verifying irreducibility
    /// by trial division.
    pub fn new(n: u32, modulus: u32) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(n));
        }
        if modulus >> n != 1 {
            return Err(Error::ModulusDegree { n, modulus });
        }
        if let Some(factor) = small_factor(modulus) {
            return Err(Error::ReducibleModulus { modulus, factor });
        }
        Ok(Self { n, modulus })
    }

    /// The field with the documented default modulus.
    pub fn with_default_modulus(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(n));
        }
        Self::new(n, DEFAULT_MODULI[n as usize - 1])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of field elements, `2^n`.
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a >> self.n == 0
    }

    pub fn check(&self, a: FieldElement) -> Result<FieldElement> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ValueOutOfRange { value: a, bits: self.n })
        }
    }

    /// Product of `a` and `b`: schoolbook carryless multiply, then reduce by
    /// shift-and-XOR.
    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut p = clmul(a, b);
        let n = self.n;
        // the product has degree at most 2n - 2
        let mut top = 2 * n - 1;
        while top > n {
            top -= 1;
            if p >> top & 1 != 0 {
                p ^= self.modulus << (top - n);
            }
        }
        p
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// `a^e` by square-and-multiply, with `pow(0, 0) = 1`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        let mut result = 1;
        let mut base = a;
        let mut e = e;
        while e != 0 {
            if e & 1 != 0 {
                result = self.mul(result, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        result
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        self.pow(a, (1u64 << self.n) - 2)
    }

    /// Absolute trace `a + a^2 + ... + a^(2^(n-1))`, which lies in {0, 1}.
    pub fn trace(&self, a: FieldElement) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.n {
            acc ^= x;
            x = self.square(x);
        }
        debug_assert!(acc <= 1);
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> u64 {
        assert!(a != 0, "zero has no multiplicative order");
        let group = (1u64 << self.n) - 1;
        let mut order = group;
        for p in prime_factors(group) {
            while order.is_multiple_of(p) && self.pow(a, order / p) == 1 {
                order /= p;
            }
        }
        order
    }

    /// The least element (as an integer) generating the multiplicative group.
    pub fn generator(&self) -> FieldElement {
        let group = (1u64 << self.n) - 1;
        (1..self.size() as u32)
            .find(|&g| self.order(g) == group)
            .expect("multiplicative group of a finite field is cyclic")
    }
}

fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            out.push(p);
            while x.is_multiple_of(p) {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// Parses a hex integer with or without a `0x` prefix.
pub fn parse_hex(s: &str) -> Option<u32> {
    let s = s.trim();
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u32::from_str_radix(digits, 16).ok()
}
