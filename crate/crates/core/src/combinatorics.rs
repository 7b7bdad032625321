//! Exact integer primitives shared by every counting formula.
//!
//! Binomial coefficients follow the vanishing convention: `binom(a, r)` is
//! zero whenever `r < 0`, `r > a` or `a < 0`. Every alternating sum in the
//! enumerator and sphere modules relies on out-of-range indices killing their
//! term, so the generalized (analytic) binomial must never be used here.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision signed count.
pub type ExactInt = BigInt;

const PASCAL_ROWS: usize = 300;

fn pascal() -> &'static Vec<Vec<BigInt>> {
    static TABLE: OnceLock<Vec<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(PASCAL_ROWS);
        rows.push(vec![BigInt::one()]);
        for a in 1..PASCAL_ROWS {
            let prev = &rows[a - 1];
            let mut row = Vec::with_capacity(a + 1);
            row.push(BigInt::one());
            for r in 1..a {
                row.push(&prev[r - 1] + &prev[r]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        rows
    })
}

/// `C(a, r)`, zero outside `0 <= r <= a`.
pub fn binom(a: i64, r: i64) -> ExactInt {
    if a < 0 || r < 0 || r > a {
        return BigInt::zero();
    }
    let r = r.min(a - r);
    if (a as usize) < PASCAL_ROWS {
        return pascal()[a as usize][r as usize].clone();
    }
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// `base^exp` with `0^0 = 1`.
pub fn int_pow(base: i64, exp: u32) -> ExactInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `(-1)^e` as a sign multiplier.
pub(crate) fn sign(e: i64) -> ExactInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// One failed instance of a combinatorial identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityViolation {
    pub identity: &'static str,
    pub params: Vec<i64>,
    pub lhs: ExactInt,
    pub rhs: ExactInt,
}

/// Largest bound accepted by [`identity_suite`].
pub const IDENTITY_BOUND_MAX: i64 = 40;

/// Exhaustively checks the binomial identities the counting formulas are
/// derived from, for every parameter tuple with magnitudes up to `bound`.
///
/// Covered: Chu-Vandermonde convolution, the three product rules, the
/// partial alternating sum, the shifted sum-product convolution and the
/// finite-difference annihilation of monomials of degree below the order.
/// Returns every violation found; an empty vector means all hold.
///
/// `bound` is clamped to [`IDENTITY_BOUND_MAX`].
pub fn identity_suite(bound: i64) -> Vec<IdentityViolation> {
    let bound = bound.clamp(0, IDENTITY_BOUND_MAX);
    let mut out = Vec::new();
    let mut check = |identity: &'static str, params: Vec<i64>, lhs: BigInt, rhs: BigInt| {
        if lhs != rhs {
            out.push(IdentityViolation {
                identity,
                params,
                lhs,
                rhs,
            });
        }
    };

    // Chu-Vandermonde: sum_k C(a,k) C(b,r-k) = C(a+b,r)
    for a in 0..=bound {
        for b in 0..=bound {
            for r in 0..=(a + b) {
                let lhs: BigInt = (0..=r).map(|k| binom(a, k) * binom(b, r - k)).sum();
                check("chu-vandermonde", vec![a, b, r], lhs, binom(a + b, r));
            }
        }
    }

    // Product rules.
    for a in 0..=bound {
        for g in 0..=a {
            for k in 0..=(a - g) {
                check(
                    "product-swap",
                    vec![a, g, k],
                    binom(a, g) * binom(a - g, k),
                    binom(a, k) * binom(a - k, g),
                );
            }
        }
        // (a/k) C(a-1,k-1) = C(a,k), cleared of the division
        for k in 1..=a {
            check(
                "absorption",
                vec![a, k],
                BigInt::from(a) * binom(a - 1, k - 1),
                BigInt::from(k) * binom(a, k),
            );
        }
        for b in 0..=a {
            for g in 0..=b {
                check(
                    "subset-of-subset",
                    vec![a, b, g],
                    binom(a, b) * binom(b, g),
                    binom(a, g) * binom(a - g, b - g),
                );
            }
        }
    }

    // Partial alternating sum: sum_{g<=k} (-1)^g C(a,g) = (-1)^k C(a-1,k), a >= 1
    for a in 1..=bound {
        for k in 0..=bound {
            let lhs: BigInt = (0..=k).map(|g| sign(g) * binom(a, g)).sum();
            check("alternating-sum", vec![a, k], lhs, sign(k) * binom(a - 1, k));
        }
    }

    // Sum-product: C(b,a) = sum_k C(b-d-k, a-k) C(d+k-1, k), for d >= 1 and
    // a <= b - d (the range where no upper index goes negative)
    for b in 0..=bound {
        for d in 1..=b {
            for a in 0..=(b - d) {
                let lhs: BigInt = (0..=a)
                    .map(|k| binom(b - d - k, a - k) * binom(d + k - 1, k))
                    .sum();
                check("sum-product", vec![b, a, d], lhs, binom(b, a));
            }
        }
    }

    // Finite differences: sum_x (-1)^(a-x) C(a,x) x^e = 0 for e < a
    for a in 1..=bound {
        for e in 0..a {
            let lhs: BigInt = (0..=a)
                .map(|x| sign(a - x) * binom(a, x) * int_pow(x, e as u32))
                .sum();
            check("finite-difference", vec![a, e], lhs, BigInt::zero());
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binom_values_and_conventions() {
        assert_eq!(binom(4, 2), BigInt::from(6));
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(binom(-2, 1), BigInt::zero());
        assert_eq!(binom(5, -1), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
        assert_eq!(binom(1000, 2), BigInt::from(499_500));
    }

    #[test]
    fn binom_past_the_table_agrees_with_pascal() {
        let a = PASCAL_ROWS as i64 + 3;
        for r in [0, 1, 7, 40, a / 2] {
            assert_eq!(binom(a, r), binom(a - 1, r - 1) + binom(a - 1, r));
        }
    }

    #[test]
    fn int_pow_values() {
        assert_eq!(int_pow(0, 0), BigInt::one());
        assert_eq!(int_pow(0, 3), BigInt::zero());
        assert_eq!(int_pow(4, 2), BigInt::from(16));
        assert_eq!(int_pow(-1, 3), BigInt::from(-1));
    }

    #[test]
    fn identity_examples() {
        let cv: BigInt = (0..=2).map(|k| binom(3, k) * binom(4, 2 - k)).sum();
        assert_eq!(cv, BigInt::from(21));
        assert_eq!(cv, binom(7, 2));
        let alt: BigInt = (0..=2).map(|g| sign(g) * binom(5, g)).sum();
        assert_eq!(alt, BigInt::from(6));
        let fd: BigInt = (0..=3).map(|x| sign(3 - x) * binom(3, x) * int_pow(x, 2)).sum();
        assert!(fd.is_zero());
    }

    #[test]
    fn identity_suite_clean_at_20() {
        let v = identity_suite(20);
        assert!(v.is_empty(), "{:?}", &v[..v.len().min(3)]);
    }

    #[test]
    fn negative_upper_index_would_break_the_suite() {
        // Generalized binomial C(-2, 1) = -2 would violate the convention the
        // alternating sums rely on; guard the value explicitly.
        assert!(binom(-2, 1).is_zero());
        assert!(binom(-1, 0).is_zero());
    }

    proptest! {
        #[test]
        fn symmetry(a in 0i64..200, r in 0i64..200) {
            prop_assume!(r <= a);
            prop_assert_eq!(binom(a, r), binom(a, a - r));
        }

        #[test]
        fn pascal_rule(a in 1i64..320, r in -3i64..320) {
            prop_assert_eq!(binom(a, r), binom(a - 1, r - 1) + binom(a - 1, r));
        }
    }
}
