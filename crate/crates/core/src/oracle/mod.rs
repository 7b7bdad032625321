//! Ground truth over real codes: finite fields, systematic Reed-Solomon
//! codes, an exhaustive bounded-distance decoder, censuses of every counted
//! quantity and a channel simulator.

mod census;
mod code;
mod decode;
mod field;
mod montecarlo;

pub use census::{
    census_ball, census_events, census_f_cauchy, census_irwe, census_sphere, split_weight, CensusCell, EventCensus, WORD_SPACE_LIMIT,
};
pub use code::{from_redundancy, rs_systematic, weight, SystematicCode, CODEWORD_LIMIT, SUBMATRIX_LIMIT};
pub use decode::{bdd_decode, classify, classify_event, distance, BallDecoder, Decoded, Outcome};
pub use field::{FieldKind, FiniteField, Symbol};
pub use montecarlo::{monte_carlo, McReport};

use crate::error::Result;

/// Calls `f` with every `s`-subset of `0..n`, in lexicographic order.
pub(crate) fn for_each_subset(n: usize, s: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == s {
            f(cur);
            return;
        }
        for i in start..=n - (s - cur.len()) {
            cur.push(i);
            go(i + 1, n, s, cur, f);
            cur.pop();
        }
    }
    if s <= n {
        go(0, n, s, &mut Vec::with_capacity(s), f);
    }
}

/// Calls `f` with every word within Hamming distance `t` of `center`.
pub(crate) fn for_each_ball_word(field: &FiniteField, center: &[Symbol], t: usize, f: &mut dyn FnMut(&[Symbol])) {
    let q = field.q();
    let mut word = center.to_vec();
    for s in 0..=t.min(center.len()) {
        for_each_subset(center.len(), s, &mut |support| {
            // nonzero offsets at the support, as a base-(q-1) counter
            let mut digits = vec![1 as Symbol; s];
            loop {
                for (&pos, &d) in support.iter().zip(&digits) {
                    word[pos] = field.add(center[pos], d);
                }
                f(&word);
                let Some(i) = digits.iter().position(|&d| (d as usize) < q - 1) else {
                    break;
                };
                digits[i] += 1;
                digits[..i].iter_mut().for_each(|d| *d = 1);
            }
            for &pos in support {
                word[pos] = center[pos];
            }
        });
    }
}

/// The small reference codes: the binary repetition code `[3,1]_2` and
/// Reed-Solomon codes `[4,2]_5`, `[6,2]_7`, `[7,3]_8`, `[4,2]_4`.
pub fn reference_code(name: &str) -> Result<SystematicCode> {
    match name {
        "T1" => from_redundancy(FiniteField::new(2)?, vec![vec![1, 1]]),
        "T2" => rs_systematic(FiniteField::new(5)?, 4, 2),
        "T3" => rs_systematic(FiniteField::new(7)?, 6, 2),
        "T4" => rs_systematic(FiniteField::new(8)?, 7, 3),
        "T5" => rs_systematic(FiniteField::new(4)?, 4, 2),
        other => Err(crate::error::Error::InvalidParams(format!("unknown reference code {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_counted() {
        let mut n = 0;
        for_each_subset(6, 3, &mut |s| {
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            n += 1;
        });
        assert_eq!(n, 20);
        for_each_subset(2, 3, &mut |_| panic!("no 3-subsets of 2 elements"));
    }

    #[test]
    fn ball_has_volume_and_no_repeats() {
        let f = FiniteField::new(7).unwrap();
        let mut seen = std::collections::HashSet::new();
        for_each_ball_word(&f, &[3, 0, 5, 1, 0, 2], 2, &mut |w| {
            assert!(seen.insert(w.to_vec()));
        });
        assert_eq!(seen.len(), 577);
    }
}
