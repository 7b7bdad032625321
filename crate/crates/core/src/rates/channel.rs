use super::scalar::Scalar;
use crate::enumerator::CodeParams;
use crate::error::Result;

/// Channel parameters at one operating point.
///
/// With a bit width `b`, `p` is the channel bit-error rate: a symbol
/// arrives intact with probability `q_s = (1-p)^b`, turns into each other
/// symbol with probability `p_s = (1 - q_s)/(q - 1)`, and a bit inside an
/// erroneous symbol is wrong with probability `p_bgs = p/(1 - q_s)`.
///
/// Without a bit width, `p` is the symbol-error rate itself:
/// `q_s = 1 - p`, `p_s = p/(q - 1)`, and bit-level rates are undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelPoint<S> {
    pub p: S,
    pub q_s: S,
    pub p_s: S,
    /// `None` at `p = 0` (the ratio is undefined there, every event it
    /// multiplies has probability zero) and without a bit width.
    pub p_bgs: Option<S>,
}

/// Derives the channel parameters for `p` in `[0, 1]`.
pub fn derive_channel<S: Scalar>(p: S, params: &CodeParams) -> Result<ChannelPoint<S>> {
    S::channel(&p, params)
}

impl<S: Scalar> ChannelPoint<S> {
    /// Point given directly by its symbol transition probability.
    pub fn from_symbol_transition(p_s: S, params: &CodeParams) -> Result<Self> {
        let qm1 = S::from_ratio(&num_rational::BigRational::from_integer((params.q - 1).into()));
        let err = p_s.mul(&qm1);
        let mut point = S::channel(&err, &CodeParams { b: None, ..*params })?;
        point.p_bgs = None;
        Ok(point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn symbol_probabilities_sum_to_one() {
        let params = CodeParams::binary(7, 3, 3).unwrap();
        for (a, b) in [(1, 10), (1, 4), (1, 2), (1, 1), (0, 1), (3, 97)] {
            let p = BigRational::new(BigInt::from(a), BigInt::from(b));
            let pt = derive_channel(p, &params).unwrap();
            let qm1 = BigRational::from_integer(BigInt::from(7));
            assert_eq!(&pt.q_s + &pt.p_s * qm1, BigRational::from_integer(1.into()));
            if let Some(bgs) = pt.p_bgs {
                assert!(bgs >= BigRational::from_integer(0.into()));
                assert!(bgs <= BigRational::from_integer(1.into()));
            }
        }
    }

    #[test]
    fn direct_symbol_mode() {
        let t2 = CodeParams::symbolic(4, 2, 5).unwrap();
        let pt = derive_channel(0.5f64, &t2).unwrap();
        assert_eq!((pt.q_s, pt.p_s, pt.p_bgs), (0.5, 0.125, None));
        let pt = ChannelPoint::from_symbol_transition(0.2f64, &t2).unwrap();
        assert!((pt.q_s - 0.2).abs() < 1e-15);
        assert!(ChannelPoint::from_symbol_transition(0.3f64, &t2).is_err());
    }
}
