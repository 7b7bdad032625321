use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::enumerator::{CodeParams, IrweTable};
use crate::error::{Error, Result};
use crate::sphere::{decoder_change_stats, reachable, SplitWeight};

/// Sphere coverage of one received split weight, summed over all nonzero
/// codewords.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoverCell {
    /// `sum_c A_c N_c^r`: words of split `r` inside some nonzero codeword's
    /// sphere, the codewords of split `r` themselves included.
    pub words: BigInt,
    /// `sum_c A_c c1 N_c^r`: same, weighted by the codeword's information
    /// weight.
    pub info_weighted: BigInt,
    /// `sum_c A_c changes_c^r`: decoder-rewritten information symbols.
    pub changes: BigInt,
}

impl CoverCell {
    fn absorb(&mut self, a: &BigInt, c1: usize, count: &BigInt, changes: &BigInt) {
        let ac = a * count;
        self.info_weighted += &ac * c1;
        self.words += ac;
        self.changes += a * changes;
    }
}

/// Coverage for every received split weight `(r1, r2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereCover {
    pub params: CodeParams,
    cells: Vec<Vec<CoverCell>>,
}

impl SphereCover {
    /// Accumulates every nonzero codeword split weight's sphere. Work is
    /// spread over the rayon pool; the exact integer sums make the result
    /// independent of scheduling.
    pub fn build(irwe: &IrweTable) -> Self {
        let params = irwe.params;
        let sources: Vec<(usize, usize, &BigInt)> =
            irwe.nonzero().filter(|&(i, j, _)| i + j > 0).collect();
        let partial: Vec<Vec<(SplitWeight, BigInt, BigInt)>> = sources
            .par_iter()
            .map(|&(i, j, _)| {
                let c = SplitWeight::new(i, j);
                reachable(&params, c)
                    .map(|r| {
                        let s = decoder_change_stats(&params, c, r);
                        (r, s.count, s.change_total)
                    })
                    .filter(|(_, n, _)| !n.is_zero())
                    .collect()
            })
            .collect();
        let mut cells = vec![vec![CoverCell::default(); params.r() + 1]; params.k + 1];
        for ((c1, _, a), contributions) in sources.iter().zip(partial) {
            for (r, count, changes) in contributions {
                cells[r.info][r.red].absorb(a, *c1, &count, &changes);
            }
        }
        Self { params, cells }
    }

    /// Coverage of a single received split weight, without building the
    /// whole table.
    pub fn cell_direct(irwe: &IrweTable, r: SplitWeight) -> CoverCell {
        let params = irwe.params;
        let t = params.t();
        let mut cell = CoverCell::default();
        for (i, j, a) in irwe.nonzero() {
            if i + j == 0 || i.abs_diff(r.info) + j.abs_diff(r.red) > t {
                continue;
            }
            let s = decoder_change_stats(&params, SplitWeight::new(i, j), r);
            cell.absorb(a, i, &s.count, &s.change_total);
        }
        cell
    }

    pub fn from_cells(params: CodeParams, cells: Vec<Vec<CoverCell>>) -> Result<Self> {
        if cells.len() != params.k + 1 || cells.iter().any(|row| row.len() != params.r() + 1) {
            return Err(Error::Table(format!("sphere table shape mismatch for {params}")));
        }
        Ok(Self { params, cells })
    }

    pub fn get(&self, r: SplitWeight) -> &CoverCell {
        &self.cells[r.info][r.red]
    }

    pub fn rows(&self) -> &[Vec<CoverCell>] {
        &self.cells
    }
}

/// Everything the rate formulas read: the IRWE and, once needed, the sphere
/// coverage table.
#[derive(Debug)]
pub struct RateTables {
    pub params: CodeParams,
    pub irwe: IrweTable,
    cover: OnceLock<SphereCover>,
}

impl RateTables {
    pub fn new(params: CodeParams) -> Self {
        Self::from_irwe(IrweTable::compute(params))
    }

    pub fn from_irwe(irwe: IrweTable) -> Self {
        Self {
            params: irwe.params,
            irwe,
            cover: OnceLock::new(),
        }
    }

    pub fn with_cover(irwe: IrweTable, cover: SphereCover) -> Self {
        let tables = Self::from_irwe(irwe);
        let _ = tables.cover.set(cover);
        tables
    }

    /// Full coverage table, built on first use.
    pub fn cover(&self) -> &SphereCover {
        self.cover.get_or_init(|| SphereCover::build(&self.irwe))
    }

    pub fn has_cover(&self) -> bool {
        self.cover.get().is_some()
    }

    /// One coverage cell; uses the full table if it exists.
    pub fn cover_cell(&self, r: SplitWeight) -> CoverCell {
        match self.cover.get() {
            Some(c) => c.get(r).clone(),
            None => SphereCover::cell_direct(&self.irwe, r),
        }
    }
}
