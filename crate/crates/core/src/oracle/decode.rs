//! Bounded-distance reproducing decoding and event classification, with the
//! zero codeword transmitted.

use std::collections::HashMap;

use super::code::{weight, SystematicCode};
use super::field::Symbol;
use super::for_each_ball_word;
use crate::error::Result;
use crate::rates::Quantity;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decoded {
    /// Index into [`SystematicCode::codewords`] and the distance to it.
    CorrectedTo { index: usize, distance: usize },
    Reproduced,
}

pub fn distance(a: &[Symbol], b: &[Symbol]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Scans every codeword for one within distance `t`. The radius-`t`
/// spheres are disjoint, so the first hit is the only one.
pub fn bdd_decode(code: &SystematicCode, word: &[Symbol]) -> Result<Decoded> {
    let t = code.params.t();
    Ok(code
        .codewords()?
        .iter()
        .enumerate()
        .find_map(|(index, c)| {
            let distance = distance(c, word);
            (distance <= t).then_some(Decoded::CorrectedTo { index, distance })
        })
        .unwrap_or(Decoded::Reproduced))
}

/// Event of one received word and the damage it does to the information
/// part of the decoder output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outcome {
    pub class: Quantity,
    /// Nonzero information symbols in the decoder output.
    pub info_errors: usize,
    /// Of those, symbols the decoder wrote itself (the output disagrees with
    /// the received word there); the rest were left by the channel.
    pub decoder_errors: usize,
}

impl Outcome {
    pub fn channel_errors(&self) -> usize {
        self.info_errors - self.decoder_errors
    }
}

/// Classifies a received word given its decoding.
pub fn classify(code: &SystematicCode, received: &[Symbol], decoded: Decoded) -> Result<Outcome> {
    let k = code.params.k;
    let wt = weight(received);
    let info_wt = weight(&received[..k]);
    let reproduced = |class| Outcome {
        class,
        info_errors: info_wt,
        decoder_errors: 0,
    };
    Ok(match decoded {
        // codeword 0 is the zero codeword
        Decoded::CorrectedTo { index: 0, .. } => {
            let class = if wt == 0 { Quantity::Ct } else { Quantity::Rc };
            Outcome {
                class,
                info_errors: 0,
                decoder_errors: 0,
            }
        }
        Decoded::CorrectedTo { distance: 0, .. } => reproduced(Quantity::Fn),
        Decoded::CorrectedTo { index, .. } => {
            let c = &code.codewords()?[index];
            let info = &c[..k];
            Outcome {
                class: Quantity::Wc,
                info_errors: weight(info),
                decoder_errors: info.iter().zip(received).filter(|(&x, &y)| x != 0 && x != y).count(),
            }
        }
        Decoded::Reproduced if info_wt == 0 => reproduced(Quantity::Fp),
        Decoded::Reproduced => reproduced(Quantity::Ped),
    })
}

pub fn classify_event(code: &SystematicCode, received: &[Symbol]) -> Result<Outcome> {
    classify(code, received, bdd_decode(code, received)?)
}

/// Lookup decoder built by listing the radius-`t` ball of every codeword.
/// Agrees with [`bdd_decode`] and answers in one hash lookup.
#[derive(Debug)]
pub struct BallDecoder {
    map: HashMap<Vec<Symbol>, (u32, u8)>,
}

impl BallDecoder {
    pub fn new(code: &SystematicCode) -> Result<Self> {
        let t = code.params.t();
        let mut map = HashMap::new();
        for (index, c) in code.codewords()?.iter().enumerate() {
            for_each_ball_word(&code.field, c, t, &mut |y| {
                map.insert(y.to_vec(), (index as u32, distance(c, y) as u8));
            });
        }
        Ok(Self { map })
    }

    pub fn decode(&self, word: &[Symbol]) -> Decoded {
        match self.map.get(word) {
            Some(&(index, d)) => Decoded::CorrectedTo {
                index: index as usize,
                distance: d as usize,
            },
            None => Decoded::Reproduced,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::code::rs_systematic;
    use super::super::field::FiniteField;
    use super::*;

    fn t2() -> SystematicCode {
        rs_systematic(FiniteField::new(5).unwrap(), 4, 2).unwrap()
    }

    #[test]
    fn codewords_decode_to_themselves() {
        let code = t2();
        for (i, c) in code.codewords().unwrap().iter().enumerate() {
            assert_eq!(bdd_decode(&code, c).unwrap(), Decoded::CorrectedTo { index: i, distance: 0 });
        }
    }

    #[test]
    fn classes() {
        let code = t2();
        let class = |w: &[Symbol]| classify_event(&code, w).unwrap().class;
        assert_eq!(class(&[0, 0, 0, 0]), Quantity::Ct);
        assert_eq!(class(&[0, 3, 0, 0]), Quantity::Rc);
        let c = code.encode(&[1, 0]);
        assert_eq!(class(&c), Quantity::Fn);
        // zero information part plus the redundancy of a weight-(1,2) codeword
        let w = [0, 0, c[2], c[3]];
        assert_eq!(class(&w), Quantity::Wc);
        assert_eq!(bdd_decode(&code, &w).unwrap(), Decoded::CorrectedTo { index: 1, distance: 1 });
        let out = classify_event(&code, &w).unwrap();
        assert_eq!((out.info_errors, out.decoder_errors), (1, 1));
    }

    #[test]
    fn eight_false_positives_in_t2() {
        let code = t2();
        let mut fp = 0;
        for y3 in 1..5 {
            for y4 in 1..5 {
                if classify_event(&code, &[0, 0, y3, y4]).unwrap().class == Quantity::Fp {
                    fp += 1;
                }
            }
        }
        assert_eq!(fp, 8);
    }

    #[test]
    fn ball_decoder_matches_scan() {
        let code = rs_systematic(FiniteField::new(4).unwrap(), 4, 2).unwrap();
        let ball = BallDecoder::new(&code).unwrap();
        for ix in 0..256u32 {
            let w: Vec<Symbol> = (0..4).map(|j| (ix >> (2 * j) & 3) as Symbol).collect();
            assert_eq!(ball.decode(&w), bdd_decode(&code, &w).unwrap(), "{w:?}");
        }
    }
}
