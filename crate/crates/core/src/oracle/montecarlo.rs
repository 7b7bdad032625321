//! Bit-flipping channel simulation over `GF(2^b)` codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::code::SystematicCode;
use super::decode::{classify, BallDecoder, Decoded};
use super::field::Symbol;
use crate::enumerator::CodeParams;
use crate::error::{Error, Result};
use crate::rates::Quantity;

/// Aggregated outcome of a simulation run, per event class in
/// [`Quantity::ALL`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McReport {
    pub params: CodeParams,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
    pub counts: [u64; 6],
    /// Wrong information symbols after decoding.
    pub symbol_errors: [u64; 6],
    /// Wrong information bits after decoding.
    pub bit_errors: [u64; 6],
}

fn ix(q: Quantity) -> usize {
    Quantity::ALL.iter().position(|&x| x == q).unwrap()
}

impl McReport {
    pub fn count(&self, class: Quantity) -> u64 {
        self.counts[ix(class)]
    }

    pub fn rate(&self, class: Quantity) -> f64 {
        self.count(class) as f64 / self.trials as f64
    }

    /// Binomial standard error of the word-level rate, taken at `rate`.
    pub fn standard_error_at(&self, rate: f64) -> f64 {
        (rate * (1.0 - rate) / self.trials as f64).sqrt()
    }

    /// Standard error at the empirical rate.
    pub fn standard_error(&self, class: Quantity) -> f64 {
        self.standard_error_at(self.rate(class))
    }

    pub fn symbol_rate(&self, class: Quantity) -> f64 {
        self.symbol_errors[ix(class)] as f64 / (self.trials * self.params.k as u64) as f64
    }

    pub fn bit_rate(&self, class: Quantity) -> f64 {
        let bits = self.params.b.unwrap_or(1) as u64;
        self.bit_errors[ix(class)] as f64 / (self.trials * self.params.k as u64 * bits) as f64
    }

    fn merge(mut self, other: Self) -> Self {
        for i in 0..6 {
            self.counts[i] += other.counts[i];
            self.symbol_errors[i] += other.symbol_errors[i];
            self.bit_errors[i] += other.bit_errors[i];
        }
        self
    }
}

/// Sends the zero codeword `trials` times, flipping every bit independently
/// with probability `p`. Worker `w` draws from stream `w` of a ChaCha8
/// generator seeded with `seed`, so the report is a function of
/// `(seed, trials, workers)`.
pub fn monte_carlo(code: &SystematicCode, p: f64, trials: u64, seed: u64, workers: usize) -> Result<McReport> {
    let b = code.field.bits().ok_or(Error::BitLevelUnavailable)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p.to_string()));
    }
    if trials == 0 || workers == 0 {
        return Err(Error::InvalidParams("trials and workers must be positive".into()));
    }
    let decoder = BallDecoder::new(code)?;
    let params = code.params;
    let k = params.k;
    let empty = || McReport {
        params,
        trials: 0,
        seed,
        workers,
        counts: [0; 6],
        symbol_errors: [0; 6],
        bit_errors: [0; 6],
    };
    let report = (0..workers)
        .into_par_iter()
        .map(|w| -> Result<McReport> {
            let share = trials / workers as u64 + u64::from((w as u64) < trials % workers as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(w as u64);
            let mut acc = empty();
            acc.trials = share;
            let mut word = vec![0 as Symbol; params.n];
            for _ in 0..share {
                for s in word.iter_mut() {
                    *s = (0..b).fold(0, |e, bit| if rng.gen::<f64>() < p { e | 1 << bit } else { e });
                }
                let decoded = if word.iter().all(|&s| s == 0) {
                    Decoded::CorrectedTo { index: 0, distance: 0 }
                } else {
                    decoder.decode(&word)
                };
                let out = classify(code, &word, decoded)?;
                let info: &[Symbol] = match (out.class, decoded) {
                    (Quantity::Wc, Decoded::CorrectedTo { index, .. }) => &code.codewords()?[index][..k],
                    (Quantity::Ct | Quantity::Rc, _) => &[],
                    _ => &word[..k],
                };
                let c = ix(out.class);
                acc.counts[c] += 1;
                acc.symbol_errors[c] += out.info_errors as u64;
                acc.bit_errors[c] += info.iter().map(|s| s.count_ones() as u64).sum::<u64>();
            }
            Ok(acc)
        })
        .try_reduce(empty, |a, b| Ok(a.merge(b)))?;
    Ok(McReport { trials, ..report })
}

#[cfg(test)]
mod tests {
    use super::super::code::rs_systematic;
    use super::super::field::FiniteField;
    use super::*;

    fn t4() -> SystematicCode {
        rs_systematic(FiniteField::new(8).unwrap(), 7, 3).unwrap()
    }

    #[test]
    fn noiseless_channel() {
        let r = monte_carlo(&t4(), 0.0, 500, 1, 3).unwrap();
        assert_eq!(r.count(Quantity::Ct), 500);
        assert_eq!(r.trials, 500);
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let code = t4();
        let a = monte_carlo(&code, 0.1, 20_000, 42, 4).unwrap();
        let b = monte_carlo(&code, 0.1, 20_000, 42, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.counts.iter().sum::<u64>(), 20_000);
        let c = monte_carlo(&code, 0.1, 20_000, 43, 4).unwrap();
        assert_ne!(a.counts, c.counts);
    }

    #[test]
    fn prime_fields_rejected() {
        let code = rs_systematic(FiniteField::new(5).unwrap(), 4, 2).unwrap();
        assert!(matches!(monte_carlo(&code, 0.1, 10, 1, 1), Err(Error::BitLevelUnavailable)));
    }
}
