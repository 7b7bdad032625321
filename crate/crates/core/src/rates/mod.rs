//! Word, symbol and information-bit event probabilities under a bounded
//! distance reproducing decoder.
//!
//! Two evaluation modes exist. [`Mode::Corrected`] accounts every received
//! word in exactly one event, so the six word-level probabilities sum to one
//! and match an exhaustive classification. [`Mode::Literal`] keeps the
//! wrong-correction and pure-detection sums exactly as stated,
//! for comparison only.

mod channel;
mod events;
mod scalar;
mod tables;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use channel::{derive_channel, ChannelPoint};
pub use events::{
    c_corrected_count, decoder_bit_factor, event_budget, fp_count, p_fn, p_fp, p_ped, p_wc,
    ped_count, profile, profile_ct, profile_fn, profile_fp, profile_ped, profile_rc, profile_wc,
    trivial_rates, EventRates, RateModel, RateProfile,
};
pub use scalar::{ratio_from_f64, Scalar};
pub use tables::{CoverCell, RateTables, SphereCover};

use crate::enumerator::CodeParams;
use crate::error::{Error, Result};

/// Granularity of an error rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    /// Probability of the event.
    Word = 0,
    /// Expected fraction of wrong information symbols.
    Symbol = 1,
    /// Expected fraction of wrong information bits.
    Bit = 2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    Literal,
    #[default]
    Corrected,
}

/// The six disjoint outcomes of one transmission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    /// Correct transmission.
    Ct,
    /// Right correction.
    Rc,
    /// False negative: the received word is another codeword.
    Fn,
    /// Wrong correction.
    Wc,
    /// False positive: detected, but the information part is intact.
    Fp,
    /// Pure error detection: detected, with information errors.
    Ped,
}

impl Quantity {
    pub const ALL: [Quantity; 6] = [Self::Ct, Self::Rc, Self::Fn, Self::Wc, Self::Fp, Self::Ped];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Ct => "ct",
            Self::Rc => "rc",
            Self::Fn => "fn",
            Self::Wc => "wc",
            Self::Fp => "fp",
            Self::Ped => "ped",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|q| q.name() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown quantity {s:?}"))
    }
}

/// Evaluates one quantity along a strictly increasing grid of channel
/// error rates. Points are evaluated in parallel and returned in grid
/// order.
pub fn curve<S: Scalar>(
    model: &RateModel,
    p_grid: &[S],
    quantity: Quantity,
    level: Level,
) -> Result<Vec<(S, S)>> {
    curve_of(&model.params, &model.profile(quantity, level)?, p_grid)
}

/// [`curve`] for an already assembled profile.
pub fn curve_of<S: Scalar>(params: &CodeParams, profile: &RateProfile, p_grid: &[S]) -> Result<Vec<(S, S)>> {
    if p_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::OutOfRange {
            what: "p grid",
            detail: "must be strictly increasing".into(),
        });
    }
    p_grid
        .par_iter()
        .map(|p| {
            let point = derive_channel(p.clone(), params)?;
            Ok((p.clone(), profile.evaluate(&point)))
        })
        .collect()
}

/// `points` values from `start` to `stop`, linearly or geometrically
/// spaced.
pub fn float_grid(start: f64, stop: f64, points: usize, log: bool) -> Vec<f64> {
    if points == 1 {
        return vec![start];
    }
    (0..points)
        .map(|i| {
            let f = i as f64 / (points - 1) as f64;
            if i == points - 1 {
                stop
            } else if log {
                (start.ln() + f * (stop.ln() - start.ln())).exp()
            } else {
                start + f * (stop - start)
            }
        })
        .collect()
}
