//! Small finite fields with full addition and multiplication tables.

use crate::error::{Error, Result};

/// Field element, `0..q`. For `q = 2^b` the bits are the polynomial
/// coefficients, lowest degree in bit 0.
pub type Symbol = u8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Prime(u32),
    /// `GF(2^b)` reduced by `modulus` (bit `b` set).
    Binary { b: u32, modulus: u32 },
}

/// `GF(q)` for prime `q <= 251` or `q = 2^b`, `b <= 8`.
#[derive(Debug, Clone)]
pub struct FiniteField {
    q: usize,
    kind: FieldKind,
    add: Vec<Symbol>,
    mul: Vec<Symbol>,
    neg: Vec<Symbol>,
    inv: Vec<Symbol>,
}

/// Reduction polynomials for `GF(2^b)`, indexed by `b`.
const MODULI: [u32; 9] = [
    0,
    0b11,        // x + 1
    0b111,       // x^2 + x + 1
    0b1011,      // x^3 + x + 1
    0b10011,     // x^4 + x + 1
    0b100101,    // x^5 + x^2 + 1
    0b1000011,   // x^6 + x + 1
    0b10000011,  // x^7 + x + 1
    0b100011011, // x^8 + x^4 + x^3 + x + 1
];

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn poly_mul(mut a: u32, mut b: u32, bits: u32, modulus: u32) -> u32 {
    let mut acc = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> bits & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let kind = if q.is_power_of_two() && (2..=256).contains(&q) {
            let b = q.trailing_zeros();
            FieldKind::Binary { b, modulus: MODULI[b as usize] }
        } else if q <= 256 && is_prime(q) {
            FieldKind::Prime(q as u32)
        } else {
            return Err(Error::UnsupportedField(q as u32));
        };
        let n = q as usize;
        let op = |f: &dyn Fn(u32, u32) -> u32| -> Vec<Symbol> {
            (0..n * n).map(|ix| f((ix / n) as u32, (ix % n) as u32) as Symbol).collect()
        };
        let (add, mul) = match kind {
            FieldKind::Prime(p) => (op(&|a, b| (a + b) % p), op(&|a, b| a * b % p)),
            FieldKind::Binary { b, modulus } => (op(&|x, y| x ^ y), op(&|x, y| poly_mul(x, y, b, modulus))),
        };
        let neg = (0..n).map(|a| (0..n).find(|&x| add[a * n + x] == 0).unwrap() as Symbol).collect();
        let mut inv = vec![0; n];
        for a in 1..n {
            inv[a] = (1..n)
                .find(|&x| mul[a * n + x] == 1)
                .ok_or(Error::UnsupportedField(q as u32))? as Symbol;
        }
        Ok(Self { q: n, kind, add, mul, neg, inv })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// Bits per symbol for binary extension fields.
    pub fn bits(&self) -> Option<u32> {
        match self.kind {
            FieldKind::Binary { b, .. } => Some(b),
            FieldKind::Prime(_) => None,
        }
    }

    #[inline]
    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Symbol, b: Symbol) -> Symbol {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Symbol) -> Symbol {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Symbol) -> Option<Symbol> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn div(&self, a: Symbol, b: Symbol) -> Option<Symbol> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: Symbol, e: u32) -> Symbol {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn elements(&self) -> impl Iterator<Item = Symbol> {
        (0..self.q).map(|a| a as Symbol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f5 = FiniteField::new(5).unwrap();
        assert_eq!(f5.mul(2, 3), 1);
        assert_eq!(f5.neg(2), 3);
        let f8 = FiniteField::new(8).unwrap();
        assert_eq!(f8.mul(2, 4), 3);
        assert_eq!(f8.bits(), Some(3));
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(512).is_err());
        assert!(FiniteField::new(257).is_err());
    }

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 7, 8, 11, 13, 16] {
            let f = FiniteField::new(q).unwrap();
            let els: Vec<Symbol> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for &b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for &c in &els {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn larger_fields_have_inverses() {
        for q in [32, 64, 128, 256, 251] {
            let f = FiniteField::new(q).unwrap();
            for a in 1..q as usize {
                assert_eq!(f.mul(a as Symbol, f.inv(a as Symbol).unwrap()), 1);
            }
        }
    }
}
