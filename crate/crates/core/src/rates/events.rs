//! Event counts and their probabilities.
//!
//! The zero codeword is sent. Every received word falls in exactly one of
//! CT, RC, FN, WC, FP or PED. Each probability is a polynomial
//! `sum_w coef_w p_s^w q_s^(n-w)` (plus a second polynomial scaled by
//! `p_bgs` at bit level), so counts are assembled once into a
//! [`RateProfile`] and evaluated cheaply at every channel point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::channel::ChannelPoint;
use super::scalar::Scalar;
use super::tables::RateTables;
use super::{Level, Mode, Quantity};
use crate::combinatorics::{binom, int_pow, ExactInt};
use crate::enumerator::CodeParams;
use crate::error::{Error, Result};
use crate::sphere::{decoder_change_stats_literal, reachable, SplitWeight};

fn ratio(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Coefficients of one probability, indexed by received-word weight.
#[derive(Debug, Clone, PartialEq)]
pub struct RateProfile {
    pub plain: Vec<BigRational>,
    /// Multiplied by `p_bgs` on evaluation.
    pub per_bgs: Vec<BigRational>,
}

impl RateProfile {
    pub fn zeros(n: usize) -> Self {
        Self {
            plain: vec![BigRational::zero(); n + 1],
            per_bgs: vec![BigRational::zero(); n + 1],
        }
    }

    fn scale(mut self, f: &BigRational) -> Self {
        for c in self.plain.iter_mut().chain(self.per_bgs.iter_mut()) {
            *c *= f;
        }
        self
    }

    pub fn evaluate<S: Scalar>(&self, point: &ChannelPoint<S>) -> S {
        let plain = S::weighted_sum(&self.plain, &point.p_s, &point.q_s);
        if self.per_bgs.iter().all(Zero::is_zero) {
            return plain;
        }
        match &point.p_bgs {
            Some(bgs) => plain.add(&bgs.mul(&S::weighted_sum(&self.per_bgs, &point.p_s, &point.q_s))),
            // p = 0: every term with a channel bit error has weight >= 1
            None => plain,
        }
    }
}

fn require_bits(params: &CodeParams, level: Level) -> Result<()> {
    if level == Level::Bit && params.b.is_none() {
        Err(Error::BitLevelUnavailable)
    } else {
        Ok(())
    }
}

fn inv_k(params: &CodeParams) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(params.k))
}

/// Expected fraction of wrong bits in a symbol the decoder rewrote.
/// Corrected: `q / (2(q-1))`, the mean bit distance of a uniformly chosen
/// wrong symbol. Literal: `1 + 1/(q-1)`.
pub fn decoder_bit_factor(params: &CodeParams, mode: Mode) -> BigRational {
    let q = BigInt::from(params.q);
    match mode {
        Mode::Corrected => BigRational::new(q.clone(), 2 * (q - 1)),
        Mode::Literal => BigRational::new(q.clone(), q - 1),
    }
}

pub fn profile_ct(params: &CodeParams) -> RateProfile {
    let mut p = RateProfile::zeros(params.n);
    p.plain[0] = BigRational::one();
    p
}

pub fn profile_rc(params: &CodeParams) -> RateProfile {
    let mut p = RateProfile::zeros(params.n);
    for s in 1..=params.t() {
        p.plain[s] = ratio(binom(params.ni(), s as i64) * int_pow(params.qi() - 1, s as u32));
    }
    p
}

/// Received word is a nonzero codeword.
pub fn profile_fn(tables: &RateTables, level: Level) -> Result<RateProfile> {
    let params = &tables.params;
    require_bits(params, level)?;
    let mut p = RateProfile::zeros(params.n);
    for (i, j, a) in tables.irwe.nonzero().filter(|&(i, j, _)| i + j > 0) {
        match level {
            Level::Word => p.plain[i + j] += ratio(a.clone()),
            Level::Symbol => p.plain[i + j] += ratio(a * i),
            Level::Bit => p.per_bgs[i + j] += ratio(a * i),
        }
    }
    Ok(match level {
        Level::Word => p,
        _ => p.scale(&inv_k(params)),
    })
}

/// Received word lies strictly inside the sphere of a nonzero codeword.
pub fn profile_wc(tables: &RateTables, level: Level, mode: Mode) -> Result<RateProfile> {
    require_bits(&tables.params, level)?;
    Ok(match mode {
        Mode::Corrected => wc_corrected(tables, level),
        Mode::Literal => wc_literal(tables, level),
    })
}

fn wc_corrected(tables: &RateTables, level: Level) -> RateProfile {
    let params = tables.params;
    let cover = tables.cover();
    let factor = decoder_bit_factor(&params, Mode::Corrected);
    let mut p = RateProfile::zeros(params.n);
    for (r1, row) in cover.rows().iter().enumerate() {
        for (r2, cell) in row.iter().enumerate() {
            // nonzero codewords of split (r1, r2) sit in their own spheres
            if r1 + r2 == 0 {
                continue;
            }
            let own = tables.irwe.get(r1, r2);
            let w = r1 + r2;
            match level {
                Level::Word => p.plain[w] += ratio(&cell.words - own),
                Level::Symbol => p.plain[w] += ratio(&cell.info_weighted - own * r1),
                Level::Bit => {
                    p.per_bgs[w] += ratio(&cell.info_weighted - &cell.changes - own * r1);
                    p.plain[w] += ratio(cell.changes.clone()) * &factor;
                }
            }
        }
    }
    match level {
        Level::Word => p,
        _ => p.scale(&inv_k(&params)),
    }
}

/// Literal form: `(N - 1)` in every received cell, powers taken at the
/// codeword weight, literal decoder kernel and bit factor.
fn wc_literal(tables: &RateTables, level: Level) -> RateProfile {
    let params = tables.params;
    let factor = decoder_bit_factor(&params, Mode::Literal);
    let sources: Vec<(usize, usize, &BigInt)> =
        tables.irwe.nonzero().filter(|&(i, j, _)| i >= 1 && i + j >= params.d()).collect();
    let per_source: Vec<(BigRational, BigRational, BigRational)> = sources
        .par_iter()
        .map(|&(i, j, a)| {
            let c = SplitWeight::new(i, j);
            let (mut word, mut chan, mut dec) = (BigRational::zero(), BigRational::zero(), BigRational::zero());
            let mut visited = 0usize;
            for r in reachable(&params, c) {
                let s = decoder_change_stats_literal(&params, c, r);
                let n_minus_1 = ratio(&s.count - 1);
                let d = s.mean_changes();
                chan += &n_minus_1 * (ratio(i) - &d);
                dec += &n_minus_1 * d * &factor;
                word += n_minus_1;
                visited += 1;
            }
            // every other cell is empty: N - 1 = -1 and D = 0
            let empty = ratio((params.k + 1) * (params.r() + 1) - visited);
            chan -= &empty * ratio(i);
            word -= empty;
            let a = ratio(a.clone());
            (word * &a, chan * &a, dec * &a)
        })
        .collect();
    let mut p = RateProfile::zeros(params.n);
    for (&(i, j, _), (word, chan, dec)) in sources.iter().zip(per_source) {
        let w = i + j;
        match level {
            Level::Word => p.plain[w] += word,
            Level::Symbol => p.plain[w] += word * ratio(i),
            Level::Bit => {
                p.per_bgs[w] += chan;
                p.plain[w] += dec;
            }
        }
    }
    match level {
        Level::Word => p,
        _ => p.scale(&inv_k(&params)),
    }
}

/// `C(r)`: words with zero information part and redundancy weight `r`
/// that the decoder maps to a (necessarily wrong) codeword.
pub fn c_corrected_count(tables: &RateTables, r: usize) -> Result<ExactInt> {
    let params = &tables.params;
    if r < params.t() + 1 || r > params.r() {
        return Err(Error::OutOfRange {
            what: "redundancy weight",
            detail: format!("{r} not in [{}, {}]", params.t() + 1, params.r()),
        });
    }
    Ok(tables.cover_cell(SplitWeight::new(0, r)).words)
}

/// `FP(r)`: uncorrectable words whose errors are all in the redundancy.
/// Zero for `r <= t` (those are corrected).
pub fn fp_count(tables: &RateTables, r: usize) -> Result<ExactInt> {
    let params = &tables.params;
    if r > params.r() {
        return Err(Error::OutOfRange {
            what: "redundancy weight",
            detail: format!("{r} > n - k = {}", params.r()),
        });
    }
    if r <= params.t() {
        return Ok(BigInt::zero());
    }
    let total = binom(params.r() as i64, r as i64) * int_pow(params.qi() - 1, r as u32);
    let fp = total - c_corrected_count(tables, r)?;
    if fp.is_negative() {
        return Err(Error::FormulaInconsistency(format!("FP({r}) = {fp} < 0")));
    }
    Ok(fp)
}

pub fn profile_fp(tables: &RateTables, level: Level) -> Result<RateProfile> {
    let params = &tables.params;
    require_bits(params, level)?;
    let mut p = RateProfile::zeros(params.n);
    if level == Level::Word {
        for r in params.t() + 1..=params.r() {
            p.plain[r] = ratio(fp_count(tables, r)?);
        }
    }
    Ok(p)
}

/// `PED(i1, i2)`: uncorrectable words with information errors.
///
/// Corrected: all words of split `(i1, i2)` minus those inside a nonzero
/// codeword's sphere, for `i1 > 0` and `i1 + i2 > t`. Literal: the stated
/// difference, which also subtracts `FP(i2)`; that term only exists at
/// `i1 = 0`, where it makes the literal count vanish.
pub fn ped_count(tables: &RateTables, i1: usize, i2: usize, mode: Mode) -> Result<ExactInt> {
    let params = &tables.params;
    if i1 > params.k || i2 > params.r() {
        return Err(Error::OutOfRange {
            what: "split weight",
            detail: format!("({i1},{i2}) for {params}"),
        });
    }
    if i1 + i2 <= params.t() || (mode == Mode::Corrected && i1 == 0) {
        return Ok(BigInt::zero());
    }
    let total = binom(params.ki(), i1 as i64)
        * binom(params.r() as i64, i2 as i64)
        * int_pow(params.qi() - 1, (i1 + i2) as u32);
    let covered = tables.cover_cell(SplitWeight::new(i1, i2)).words;
    let fp = if mode == Mode::Literal && i1 == 0 {
        fp_count(tables, i2)?
    } else {
        BigInt::zero()
    };
    let ped = total - fp - covered;
    if ped.is_negative() {
        return Err(Error::FormulaInconsistency(format!("PED({i1},{i2}) = {ped} < 0")));
    }
    Ok(ped)
}

pub fn profile_ped(tables: &RateTables, level: Level, mode: Mode) -> Result<RateProfile> {
    let params = &tables.params;
    require_bits(params, level)?;
    // literal sums start at i2 = 1
    let i2_min = match mode {
        Mode::Corrected => 0,
        Mode::Literal => 1,
    };
    let mut p = RateProfile::zeros(params.n);
    for i1 in 1..=params.k {
        for i2 in i2_min..=params.r() {
            let count = ratio(ped_count(tables, i1, i2, mode)?);
            match level {
                Level::Word => p.plain[i1 + i2] += count,
                Level::Symbol => p.plain[i1 + i2] += count * ratio(i1),
                Level::Bit => p.per_bgs[i1 + i2] += count * ratio(i1),
            }
        }
    }
    Ok(match level {
        Level::Word => p,
        _ => p.scale(&inv_k(params)),
    })
}

/// Profile of any quantity at any level.
pub fn profile(tables: &RateTables, quantity: Quantity, level: Level, mode: Mode) -> Result<RateProfile> {
    let params = &tables.params;
    require_bits(params, level)?;
    let word_only = |p: RateProfile| if level == Level::Word { p } else { RateProfile::zeros(params.n) };
    match quantity {
        Quantity::Ct => Ok(word_only(profile_ct(params))),
        Quantity::Rc => Ok(word_only(profile_rc(params))),
        Quantity::Fn => profile_fn(tables, level),
        Quantity::Wc => profile_wc(tables, level, mode),
        Quantity::Fp => profile_fp(tables, level),
        Quantity::Ped => profile_ped(tables, level, mode),
    }
}

/// Probability of a false negative at `level`.
pub fn p_fn<S: Scalar>(tables: &RateTables, point: &ChannelPoint<S>, level: Level) -> Result<S> {
    Ok(profile_fn(tables, level)?.evaluate(point))
}

pub fn p_wc<S: Scalar>(tables: &RateTables, point: &ChannelPoint<S>, level: Level, mode: Mode) -> Result<S> {
    Ok(profile_wc(tables, level, mode)?.evaluate(point))
}

pub fn p_fp<S: Scalar>(tables: &RateTables, point: &ChannelPoint<S>) -> Result<S> {
    Ok(profile_fp(tables, Level::Word)?.evaluate(point))
}

pub fn p_ped<S: Scalar>(tables: &RateTables, point: &ChannelPoint<S>, level: Level, mode: Mode) -> Result<S> {
    Ok(profile_ped(tables, level, mode)?.evaluate(point))
}

/// Word-level probabilities of correct transmission and right correction.
pub fn trivial_rates<S: Scalar>(params: &CodeParams, point: &ChannelPoint<S>) -> (S, S) {
    (profile_ct(params).evaluate(point), profile_rc(params).evaluate(point))
}

/// Per-point record of every event probability.
#[derive(Debug, Clone, PartialEq)]
pub struct EventRates<S> {
    pub p: S,
    pub ct_word: S,
    pub rc_word: S,
    pub fn_word: S,
    pub fn_symbol: S,
    pub fn_bit: Option<S>,
    pub wc_word: S,
    pub wc_symbol: S,
    pub wc_bit: Option<S>,
    pub fp_word: S,
    pub ped_word: S,
    pub ped_symbol: S,
    pub ped_bit: Option<S>,
    /// `1 - (ct + rc + fn + wc + fp + ped)` at word level.
    pub residual: S,
}

impl<S: Scalar> EventRates<S> {
    /// Word-level probabilities in CT, RC, FN, WC, FP, PED order.
    pub fn word_rates(&self) -> [(Quantity, &S); 6] {
        [
            (Quantity::Ct, &self.ct_word),
            (Quantity::Rc, &self.rc_word),
            (Quantity::Fn, &self.fn_word),
            (Quantity::Wc, &self.wc_word),
            (Quantity::Fp, &self.fp_word),
            (Quantity::Ped, &self.ped_word),
        ]
    }

    pub(crate) fn with_residual(mut self) -> Self {
        let sum = self.word_rates().iter().fold(S::zeroed(), |acc, (_, v)| acc.add(v));
        self.residual = S::unit().sub(&sum);
        self
    }
}

/// All profiles for one code and one mode, built once and evaluated at
/// any number of channel points.
#[derive(Debug, Clone)]
pub struct RateModel {
    pub params: CodeParams,
    pub mode: Mode,
    ct: RateProfile,
    rc: RateProfile,
    fn_: [Option<RateProfile>; 3],
    wc: [Option<RateProfile>; 3],
    fp: RateProfile,
    ped: [Option<RateProfile>; 3],
}

const LEVELS: [Level; 3] = [Level::Word, Level::Symbol, Level::Bit];

impl RateModel {
    pub fn build(tables: &RateTables, mode: Mode) -> Result<Self> {
        let params = tables.params;
        let per_level = |f: &dyn Fn(Level) -> Result<RateProfile>| -> Result<[Option<RateProfile>; 3]> {
            let mut out: [Option<RateProfile>; 3] = [None, None, None];
            for (slot, level) in out.iter_mut().zip(LEVELS) {
                if level != Level::Bit || params.b.is_some() {
                    *slot = Some(f(level)?);
                }
            }
            Ok(out)
        };
        Ok(Self {
            params,
            mode,
            ct: profile_ct(&params),
            rc: profile_rc(&params),
            fn_: per_level(&|l| profile_fn(tables, l))?,
            wc: per_level(&|l| profile_wc(tables, l, mode))?,
            fp: profile_fp(tables, Level::Word)?,
            ped: per_level(&|l| profile_ped(tables, l, mode))?,
        })
    }

    pub fn profile(&self, quantity: Quantity, level: Level) -> Result<RateProfile> {
        require_bits(&self.params, level)?;
        let idx = level as usize;
        let pick = |arr: &[Option<RateProfile>; 3]| arr[idx].clone().ok_or(Error::BitLevelUnavailable);
        match (quantity, level) {
            (Quantity::Ct, Level::Word) => Ok(self.ct.clone()),
            (Quantity::Rc, Level::Word) => Ok(self.rc.clone()),
            (Quantity::Fp, Level::Word) => Ok(self.fp.clone()),
            (Quantity::Ct | Quantity::Rc | Quantity::Fp, _) => Ok(RateProfile::zeros(self.params.n)),
            (Quantity::Fn, _) => pick(&self.fn_),
            (Quantity::Wc, _) => pick(&self.wc),
            (Quantity::Ped, _) => pick(&self.ped),
        }
    }

    pub fn evaluate<S: Scalar>(&self, quantity: Quantity, level: Level, point: &ChannelPoint<S>) -> Result<S> {
        Ok(self.profile(quantity, level)?.evaluate(point))
    }

    pub fn budget<S: Scalar>(&self, point: &ChannelPoint<S>) -> EventRates<S> {
        let ev = |arr: &[Option<RateProfile>; 3], level: Level| {
            arr[level as usize].as_ref().map(|p| p.evaluate(point))
        };
        let must = |arr: &[Option<RateProfile>; 3], level: Level| ev(arr, level).unwrap_or_else(S::zeroed);
        EventRates {
            p: point.p.clone(),
            ct_word: self.ct.evaluate(point),
            rc_word: self.rc.evaluate(point),
            fn_word: must(&self.fn_, Level::Word),
            fn_symbol: must(&self.fn_, Level::Symbol),
            fn_bit: ev(&self.fn_, Level::Bit),
            wc_word: must(&self.wc, Level::Word),
            wc_symbol: must(&self.wc, Level::Symbol),
            wc_bit: ev(&self.wc, Level::Bit),
            fp_word: self.fp.evaluate(point),
            ped_word: must(&self.ped, Level::Word),
            ped_symbol: must(&self.ped, Level::Symbol),
            ped_bit: ev(&self.ped, Level::Bit),
            residual: S::zeroed(),
        }
        .with_residual()
    }
}

/// Assembles every event probability at one point.
pub fn event_budget<S: Scalar>(tables: &RateTables, point: &ChannelPoint<S>, mode: Mode) -> Result<EventRates<S>> {
    Ok(RateModel::build(tables, mode)?.budget(point))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn tables(n: usize, k: usize, q: u64, b: Option<u32>) -> RateTables {
        RateTables::new(CodeParams::new(n, k, q, b).unwrap())
    }

    #[test]
    fn repetition_false_negative_is_p_cubed() {
        let t1 = tables(3, 1, 2, Some(1));
        let p = r(1, 10);
        let pt = derive_channel_exact(&p, &t1.params);
        let cube = &p * &p * &p;
        for level in [Level::Word, Level::Symbol, Level::Bit] {
            assert_eq!(p_fn(&t1, &pt, level).unwrap(), cube);
        }
    }

    fn derive_channel_exact(p: &BigRational, params: &CodeParams) -> ChannelPoint<BigRational> {
        BigRational::channel(p, params).unwrap()
    }

    #[test]
    fn trivial_rates_direct_mode() {
        let t2 = CodeParams::symbolic(4, 2, 5).unwrap();
        let pt = derive_channel_exact(&r(4, 5), &t2);
        assert_eq!(pt.p_s, r(1, 5));
        assert_eq!(trivial_rates(&t2, &pt), (r(1, 625), r(16, 625)));
    }

    #[test]
    fn false_positive_counts() {
        let t2 = tables(4, 2, 5, None);
        assert_eq!(c_corrected_count(&t2, 2).unwrap(), BigInt::from(8));
        assert_eq!(fp_count(&t2, 2).unwrap(), BigInt::from(8));
        assert_eq!(fp_count(&t2, 1).unwrap(), BigInt::zero());
        let t1 = tables(3, 1, 2, Some(1));
        assert_eq!(fp_count(&t1, 2).unwrap(), BigInt::zero());
        assert!(c_corrected_count(&t1, 1).is_err());
        assert!(fp_count(&t1, 3).is_err());
    }

    #[test]
    fn partition_of_unity_is_exact() {
        let codes = [(3, 1, 2, Some(1)), (4, 2, 5, None), (6, 2, 7, None), (7, 3, 8, Some(3))];
        for (n, k, q, b) in codes {
            let t = tables(n, k, q, b);
            let model = RateModel::build(&t, Mode::Corrected).unwrap();
            for p in [r(1, 10), r(1, 4), r(1, 2)] {
                let rates = model.budget(&derive_channel_exact(&p, &t.params));
                assert!(Zero::is_zero(&rates.residual), "{} at {p}: {:?}", t.params, rates);
            }
            let rates = model.budget(&derive_channel_exact(&r(0, 1), &t.params));
            assert_eq!(rates.ct_word, r(1, 1));
        }
    }

    #[test]
    fn literal_and_corrected_share_fn_fp() {
        let t = tables(7, 3, 8, Some(3));
        let lit = RateModel::build(&t, Mode::Literal).unwrap();
        let cor = RateModel::build(&t, Mode::Corrected).unwrap();
        for level in [Level::Word, Level::Bit] {
            assert_eq!(lit.profile(Quantity::Fn, level).unwrap(), cor.profile(Quantity::Fn, level).unwrap());
        }
        assert_eq!(lit.profile(Quantity::Fp, Level::Word).unwrap(), cor.profile(Quantity::Fp, Level::Word).unwrap());
    }

    #[test]
    fn literal_wc_skips_only_empty_cells() {
        let t = tables(7, 3, 8, Some(3));
        let params = t.params;
        let factor = decoder_bit_factor(&params, Mode::Literal);
        let mut full = RateProfile::zeros(params.n);
        for (i, j, a) in t.irwe.nonzero().filter(|&(i, j, _)| i >= 1 && i + j >= params.d()) {
            for r1 in 0..=params.k {
                for r2 in 0..=params.r() {
                    let s = decoder_change_stats_literal(&params, SplitWeight::new(i, j), SplitWeight::new(r1, r2));
                    let n1 = ratio(&s.count - 1) * ratio(a.clone()) / ratio(params.k);
                    full.per_bgs[i + j] += &n1 * (ratio(i) - s.mean_changes());
                    full.plain[i + j] += n1 * s.mean_changes() * &factor;
                }
            }
        }
        assert_eq!(wc_literal(&t, Level::Bit), full);
    }

    #[test]
    fn bit_level_needs_a_bit_width() {
        let t2 = tables(4, 2, 5, None);
        assert!(matches!(profile_fn(&t2, Level::Bit), Err(Error::BitLevelUnavailable)));
        let model = RateModel::build(&t2, Mode::Corrected).unwrap();
        assert!(model.profile(Quantity::Wc, Level::Bit).is_err());
    }
}
