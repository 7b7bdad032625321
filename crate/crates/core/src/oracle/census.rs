//! Exhaustive counts over actual codes, used as ground truth for the
//! formulas.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::code::{weight, SystematicCode};
use super::decode::{bdd_decode, classify};
use super::field::{FiniteField, Symbol};
use super::for_each_ball_word;
use crate::enumerator::IrweTable;
use crate::error::{Error, Result};
use crate::rates::{decoder_bit_factor, ChannelPoint, EventRates, Level, Mode, Quantity, RateProfile, Scalar};
use crate::sphere::SplitWeight;

/// Largest word space `census_events` will classify.
pub const WORD_SPACE_LIMIT: u64 = 1 << 24;

pub fn split_weight(code: &SystematicCode, word: &[Symbol]) -> SplitWeight {
    let k = code.params.k;
    SplitWeight::new(weight(&word[..k]), weight(&word[k..]))
}

/// Codewords counted by split weight.
pub fn census_irwe(code: &SystematicCode) -> Result<IrweTable> {
    let p = code.params;
    let mut counts = vec![vec![BigInt::from(0); p.r() + 1]; p.k + 1];
    for c in code.codewords()? {
        let s = split_weight(code, c);
        counts[s.info][s.red] += 1;
    }
    IrweTable::from_counts(p, counts)
}

/// `(count, change_total)` for every split weight of the radius-`t` ball
/// around `codeword`. The change count of a word is the number of nonzero
/// information symbols of the codeword it differs in.
pub fn census_ball(code: &SystematicCode, codeword: &[Symbol]) -> Vec<Vec<(u64, u64)>> {
    let p = code.params;
    let mut grid = vec![vec![(0u64, 0u64); p.r() + 1]; p.k + 1];
    for_each_ball_word(&code.field, codeword, p.t(), &mut |y| {
        let s = split_weight(code, y);
        let changes = codeword[..p.k]
            .iter()
            .zip(y)
            .filter(|(&c, &v)| c != 0 && c != v)
            .count() as u64;
        let cell = &mut grid[s.info][s.red];
        cell.0 += 1;
        cell.1 += changes;
    });
    grid
}

pub fn census_sphere(code: &SystematicCode, codeword: &[Symbol], r: SplitWeight) -> (BigInt, BigInt) {
    let (count, changes) = census_ball(code, codeword)[r.info][r.red];
    (BigInt::from(count), BigInt::from(changes))
}

/// Totally nonzero solutions of `M v = 0` for the `j x i` Cauchy matrix
/// `M[a][b] = 1 / (x_a - y_b)` over `F_q`, with `x` the first `j` field
/// elements and `y` the next `i`. Every square submatrix of a Cauchy
/// matrix is regular, so this is a direct count of `f(q, i, j)`.
pub fn census_f_cauchy(q: u64, i: usize, j: usize) -> Result<u64> {
    let field = FiniteField::new(q)?;
    if i + j > field.q() {
        return Err(Error::TooLarge(format!("a {j}x{i} Cauchy matrix needs {} elements of F_{q}", i + j)));
    }
    let m: Vec<Vec<Symbol>> = (0..j)
        .map(|a| {
            (0..i)
                .map(|b| field.inv(field.sub(a as Symbol, (j + b) as Symbol)).unwrap())
                .collect()
        })
        .collect();
    let mut v = vec![1 as Symbol; i];
    let mut count = 0;
    loop {
        let solves = m.iter().all(|row| row.iter().zip(&v).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y))) == 0);
        count += u64::from(solves);
        let Some(pos) = v.iter().position(|&d| (d as usize) < field.q() - 1) else {
            return Ok(count);
        };
        v[pos] += 1;
        v[..pos].iter_mut().for_each(|d| *d = 1);
    }
}

/// Per-class totals of one received split weight.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CensusCell {
    pub words: u64,
    pub info_errors: u64,
    pub decoder_errors: u64,
}

impl CensusCell {
    fn merge(&mut self, other: &CensusCell) {
        self.words += other.words;
        self.info_errors += other.info_errors;
        self.decoder_errors += other.decoder_errors;
    }
}

type Grid = Vec<Vec<CensusCell>>;

/// Classification of every received word, kept by class and split weight.
#[derive(Debug, Clone)]
pub struct EventCensus {
    pub code_params: crate::enumerator::CodeParams,
    cells: [Grid; 6],
}

fn class_index(q: Quantity) -> usize {
    Quantity::ALL.iter().position(|&x| x == q).unwrap()
}

impl EventCensus {
    /// Decodes every word of the space by codeword scan. Word ranges are
    /// split across the rayon pool and the integer totals merged, so the
    /// result does not depend on scheduling.
    pub fn build(code: &SystematicCode) -> Result<Self> {
        let p = code.params;
        let space = p.q.checked_pow(p.n as u32).filter(|&s| s <= WORD_SPACE_LIMIT).ok_or_else(|| {
            Error::TooLarge(format!("{p}: word space exceeds {WORD_SPACE_LIMIT}"))
        })?;
        code.codewords()?;
        let empty = || -> [Grid; 6] { std::array::from_fn(|_| vec![vec![CensusCell::default(); p.r() + 1]; p.k + 1]) };
        let q = p.q;
        let chunk = 4096u64;
        let cells = (0..space.div_ceil(chunk))
            .into_par_iter()
            .map(|c| -> Result<[Grid; 6]> {
                let mut acc = empty();
                let mut word = vec![0 as Symbol; p.n];
                for ix in c * chunk..((c + 1) * chunk).min(space) {
                    let mut rest = ix;
                    for w in word.iter_mut() {
                        *w = (rest % q) as Symbol;
                        rest /= q;
                    }
                    let out = classify(code, &word, bdd_decode(code, &word)?)?;
                    let s = split_weight(code, &word);
                    let cell = &mut acc[class_index(out.class)][s.info][s.red];
                    cell.words += 1;
                    cell.info_errors += out.info_errors as u64;
                    cell.decoder_errors += out.decoder_errors as u64;
                }
                Ok(acc)
            })
            .try_reduce(empty, |mut a, b| {
                for (ga, gb) in a.iter_mut().zip(&b) {
                    for (ra, rb) in ga.iter_mut().zip(gb) {
                        for (x, y) in ra.iter_mut().zip(rb) {
                            x.merge(y);
                        }
                    }
                }
                Ok(a)
            })?;
        Ok(Self { code_params: p, cells })
    }

    pub fn cell(&self, class: Quantity, r: SplitWeight) -> CensusCell {
        self.cells[class_index(class)][r.info][r.red]
    }

    /// Words of `class` summed over all split weights.
    pub fn words(&self, class: Quantity) -> u64 {
        self.cells[class_index(class)].iter().flatten().map(|c| c.words).sum()
    }

    /// Probability polynomial of one class, in the same form the analytic
    /// profiles take. Channel-left symbols carry `p_bgs` per bit, decoder
    /// written symbols the mean bit distance `q / (2(q-1))`.
    pub fn profile(&self, class: Quantity, level: Level) -> Result<RateProfile> {
        let p = &self.code_params;
        if level == Level::Bit && p.b.is_none() {
            return Err(Error::BitLevelUnavailable);
        }
        let k = BigRational::from_integer(BigInt::from(p.k));
        let factor = decoder_bit_factor(p, Mode::Corrected);
        let int = |x: u64| BigRational::from_integer(BigInt::from(x));
        let mut out = RateProfile::zeros(p.n);
        for (r1, row) in self.cells[class_index(class)].iter().enumerate() {
            for (r2, cell) in row.iter().enumerate() {
                let w = r1 + r2;
                match level {
                    Level::Word => out.plain[w] += int(cell.words),
                    Level::Symbol => out.plain[w] += int(cell.info_errors) / &k,
                    Level::Bit => {
                        out.per_bgs[w] += int(cell.info_errors - cell.decoder_errors) / &k;
                        out.plain[w] += int(cell.decoder_errors) * &factor / &k;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn rates<S: Scalar>(&self, point: &ChannelPoint<S>) -> Result<EventRates<S>> {
        let has_bits = self.code_params.b.is_some();
        let ev = |q, level| -> Result<S> { Ok(self.profile(q, level)?.evaluate(point)) };
        let bit = |q| -> Result<Option<S>> { has_bits.then(|| ev(q, Level::Bit)).transpose() };
        Ok(EventRates {
            p: point.p.clone(),
            ct_word: ev(Quantity::Ct, Level::Word)?,
            rc_word: ev(Quantity::Rc, Level::Word)?,
            fn_word: ev(Quantity::Fn, Level::Word)?,
            fn_symbol: ev(Quantity::Fn, Level::Symbol)?,
            fn_bit: bit(Quantity::Fn)?,
            wc_word: ev(Quantity::Wc, Level::Word)?,
            wc_symbol: ev(Quantity::Wc, Level::Symbol)?,
            wc_bit: bit(Quantity::Wc)?,
            fp_word: ev(Quantity::Fp, Level::Word)?,
            ped_word: ev(Quantity::Ped, Level::Word)?,
            ped_symbol: ev(Quantity::Ped, Level::Symbol)?,
            ped_bit: bit(Quantity::Ped)?,
            residual: S::zeroed(),
        }
        .with_residual())
    }
}

pub fn census_events<S: Scalar>(code: &SystematicCode, point: &ChannelPoint<S>) -> Result<EventRates<S>> {
    EventCensus::build(code)?.rates(point)
}

#[cfg(test)]
mod tests {
    use super::super::code::rs_systematic;
    use super::super::field::FiniteField;
    use super::*;
    use crate::rates::derive_channel;

    fn rs(q: u64, n: usize, k: usize) -> SystematicCode {
        rs_systematic(FiniteField::new(q).unwrap(), n, k).unwrap()
    }

    #[test]
    fn cauchy_counts() {
        use crate::enumerator::f_closed;
        for (i, j) in [(1, 1), (2, 1), (3, 1), (3, 2), (4, 1)] {
            let direct = census_f_cauchy(5, i, j).unwrap();
            assert_eq!(BigInt::from(direct), f_closed(5, i as u64, j as u64), "i={i} j={j}");
        }
        assert!(census_f_cauchy(5, 4, 2).is_err());
    }

    #[test]
    fn irwe_of_t2() {
        let table = census_irwe(&rs(5, 4, 2)).unwrap();
        let grid: Vec<Vec<i64>> = table
            .rows()
            .iter()
            .map(|row| row.iter().map(|a| i64::try_from(a).unwrap()).collect())
            .collect();
        assert_eq!(grid, vec![vec![1, 0, 0], vec![0, 0, 8], vec![0, 8, 8]]);
    }

    #[test]
    fn sphere_of_t3() {
        let code = rs(7, 6, 2);
        let c = code
            .codewords()
            .unwrap()
            .iter()
            .find(|c| split_weight(&code, c) == SplitWeight::new(1, 4))
            .unwrap()
            .clone();
        let (n, ch) = census_sphere(&code, &c, SplitWeight::new(0, 3));
        assert_eq!((n, ch), (BigInt::from(4), BigInt::from(4)));
    }

    #[test]
    fn t2_false_positives() {
        let census = EventCensus::build(&rs(5, 4, 2)).unwrap();
        assert_eq!(census.words(Quantity::Fp), 8);
        let total: u64 = Quantity::ALL.iter().map(|&q| census.words(q)).sum();
        assert_eq!(total, 625);
        let pt = derive_channel(BigRational::new(4.into(), 5.into()), &census.code_params).unwrap();
        let rates = census.rates(&pt).unwrap();
        let fifth = BigRational::new(1.into(), 5.into());
        assert_eq!(rates.fp_word, BigRational::from_integer(8.into()) * num_traits::pow(fifth, 4));
        assert!(num_traits::Zero::is_zero(&rates.residual));
    }
}
