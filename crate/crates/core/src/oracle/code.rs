//! Systematic Reed-Solomon codes over the oracle fields.

use std::sync::OnceLock;

use super::field::{FiniteField, Symbol};
use super::for_each_subset;
use crate::enumerator::CodeParams;
use crate::error::{Error, Result};

/// Largest number of codewords the oracle will list.
pub const CODEWORD_LIMIT: u64 = 1 << 20;
/// Largest number of square submatrices the regularity check will test.
pub const SUBMATRIX_LIMIT: u64 = 2_000_000;

/// `[n, k]` code with generator `(I_k | R)`.
#[derive(Debug)]
pub struct SystematicCode {
    pub params: CodeParams,
    pub field: FiniteField,
    generator: Vec<Vec<Symbol>>,
    codewords: OnceLock<Vec<Vec<Symbol>>>,
}

/// Reed-Solomon code evaluated at the first `n` field elements, brought to
/// systematic form, with its minimum distance checked.
pub fn rs_systematic(field: FiniteField, n: usize, k: usize) -> Result<SystematicCode> {
    let q = field.q();
    if k == 0 || k >= n || n > q {
        return Err(Error::InvalidParams(format!("need 0 < k < n <= q, got n={n} k={k} q={q}")));
    }
    let params = CodeParams::new(n, k, q as u64, field.bits())?;
    let mut g: Vec<Vec<Symbol>> = (0..k)
        .map(|i| (0..n).map(|j| field.pow(j as Symbol, i as u32)).collect())
        .collect();
    for col in 0..k {
        let pivot = (col..k)
            .find(|&row| g[row][col] != 0)
            .ok_or_else(|| Error::NotMds(format!("information columns of {params} are singular")))?;
        g.swap(col, pivot);
        let scale = field.inv(g[col][col]).unwrap();
        for x in g[col].iter_mut() {
            *x = field.mul(*x, scale);
        }
        for row in 0..k {
            if row != col && g[row][col] != 0 {
                let factor = g[row][col];
                for j in 0..n {
                    let v = field.mul(factor, g[col][j]);
                    g[row][j] = field.sub(g[row][j], v);
                }
            }
        }
    }
    let code = SystematicCode {
        params,
        field,
        generator: g,
        codewords: OnceLock::new(),
    };
    code.verify_mds()?;
    Ok(code)
}

/// Code with generator `(I_k | R)` for a given redundancy block, checked
/// to be MDS. Covers codes longer than the field, such as the binary
/// repetition code.
pub fn from_redundancy(field: FiniteField, redundancy: Vec<Vec<Symbol>>) -> Result<SystematicCode> {
    let k = redundancy.len();
    let r = redundancy.first().map_or(0, Vec::len);
    if k == 0 || r == 0 || redundancy.iter().any(|row| row.len() != r) {
        return Err(Error::InvalidParams("redundancy block must be a nonempty rectangle".into()));
    }
    if redundancy.iter().flatten().any(|&x| x as usize >= field.q()) {
        return Err(Error::InvalidParams("redundancy entry outside the field".into()));
    }
    let params = CodeParams::new(k + r, k, field.q() as u64, field.bits())?;
    let generator = redundancy
        .into_iter()
        .enumerate()
        .map(|(i, row)| (0..k).map(|j| (i == j) as Symbol).chain(row).collect())
        .collect();
    let code = SystematicCode {
        params,
        field,
        generator,
        codewords: OnceLock::new(),
    };
    code.verify_mds()?;
    Ok(code)
}

impl SystematicCode {
    pub fn generator(&self) -> &[Vec<Symbol>] {
        &self.generator
    }

    /// The `k x (n-k)` redundancy block `R`.
    pub fn redundancy(&self) -> Vec<Vec<Symbol>> {
        self.generator.iter().map(|row| row[self.params.k..].to_vec()).collect()
    }

    pub fn encode(&self, info: &[Symbol]) -> Vec<Symbol> {
        let f = &self.field;
        let mut word = vec![0; self.params.n];
        for (&u, row) in info.iter().zip(&self.generator) {
            if u == 0 {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(row) {
                *w = f.add(*w, f.mul(u, g));
            }
        }
        word
    }

    pub fn codeword_count(&self) -> u64 {
        (self.params.q).saturating_pow(self.params.k as u32)
    }

    /// Every codeword, the information part read as a base-`q` number with
    /// the first symbol least significant.
    pub fn codewords(&self) -> Result<&[Vec<Symbol>]> {
        if self.codeword_count() > CODEWORD_LIMIT {
            return Err(Error::TooLarge(format!(
                "{} has {} codewords, limit {CODEWORD_LIMIT}",
                self.params,
                self.codeword_count()
            )));
        }
        Ok(self.codewords.get_or_init(|| {
            let q = self.field.q();
            (0..self.codeword_count() as usize)
                .map(|mut ix| {
                    let info: Vec<Symbol> = (0..self.params.k)
                        .map(|_| {
                            let d = ix % q;
                            ix /= q;
                            d as Symbol
                        })
                        .collect();
                    self.encode(&info)
                })
                .collect()
        }))
    }

    pub fn minimum_distance(&self) -> Result<usize> {
        Ok(self
            .codewords()?
            .iter()
            .map(|c| weight(c))
            .filter(|&w| w > 0)
            .min()
            .unwrap_or(0))
    }

    /// Whether every square submatrix of `R` is nonsingular.
    pub fn redundancy_totally_full_rank(&self) -> Result<bool> {
        let (k, r) = (self.params.k, self.params.r());
        let work: u64 = (1..=k.min(r))
            .map(|s| binom_u64(k, s).saturating_mul(binom_u64(r, s)))
            .fold(0u64, u64::saturating_add);
        if work > SUBMATRIX_LIMIT {
            return Err(Error::TooLarge(format!("{work} submatrices of R for {}", self.params)));
        }
        let rmat = self.redundancy();
        let mut regular = true;
        for s in 1..=k.min(r) {
            for_each_subset(k, s, &mut |rows| {
                for_each_subset(r, s, &mut |cols| {
                    if regular {
                        let m: Vec<Vec<Symbol>> =
                            rows.iter().map(|&i| cols.iter().map(|&j| rmat[i][j]).collect()).collect();
                        regular = is_nonsingular(&self.field, m);
                    }
                });
            });
        }
        Ok(regular)
    }

    /// Minimum distance `n - k + 1`, by listing codewords when feasible and
    /// by submatrix regularity of `R` otherwise.
    pub fn verify_mds(&self) -> Result<()> {
        let ok = if self.codeword_count() <= CODEWORD_LIMIT {
            self.minimum_distance()? == self.params.d()
        } else {
            self.redundancy_totally_full_rank()?
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotMds(format!("{} fails the distance check", self.params)))
        }
    }
}

pub fn weight(word: &[Symbol]) -> usize {
    word.iter().filter(|&&x| x != 0).count()
}

fn binom_u64(n: usize, s: usize) -> u64 {
    (0..s).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

fn is_nonsingular(f: &FiniteField, mut m: Vec<Vec<Symbol>>) -> bool {
    let s = m.len();
    for col in 0..s {
        let Some(p) = (col..s).find(|&row| m[row][col] != 0) else {
            return false;
        };
        m.swap(col, p);
        let inv = f.inv(m[col][col]).unwrap();
        for row in col + 1..s {
            let factor = f.mul(m[row][col], inv);
            if factor != 0 {
                for j in col..s {
                    let v = f.mul(factor, m[col][j]);
                    m[row][j] = f.sub(m[row][j], v);
                }
            }
        }
    }
    true
}
