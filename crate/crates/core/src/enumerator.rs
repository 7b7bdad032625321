//! Input-redundancy weight enumerator (IRWE) of an `[n, k]` MDS code.
//!
//! `A[i][j]` counts the codewords with `i` nonzero information symbols and
//! `j` nonzero redundancy symbols. It is computed here by three independent
//! routes (inclusion-exclusion over totally nonzero solution counts, the
//! closed alternating sum, and the two-block partition weight enumerator),
//! and the weight distribution by three more. All formulas are evaluated
//! symbolically in `q`; whether an MDS code with these parameters exists is
//! the oracle's concern.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{binom, int_pow, sign, ExactInt};
use crate::error::{Error, Result};

/// Parameters of an `[n, k]` MDS code over an alphabet of size `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub q: u64,
    /// Bits per symbol, present only when `q = 2^b`.
    pub b: Option<u32>,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, q: u64, b: Option<u32>) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidParams(format!("need 0 < k < n, got n={n} k={k}")));
        }
        if q < 2 {
            return Err(Error::InvalidParams(format!("need q >= 2, got {q}")));
        }
        if let Some(b) = b {
            if b == 0 || b >= 64 || 1u64 << b != q {
                return Err(Error::InvalidParams(format!("q = {q} is not 2^{b}")));
            }
        }
        Ok(Self { n, k, q, b })
    }

    /// Binary-extension parameters `q = 2^b`.
    pub fn binary(n: usize, k: usize, b: u32) -> Result<Self> {
        if b == 0 || b >= 64 {
            return Err(Error::InvalidParams(format!("bit width {b} unsupported")));
        }
        Self::new(n, k, 1u64 << b, Some(b))
    }

    /// Parameters without a bit width (rates use the direct symbol channel).
    pub fn symbolic(n: usize, k: usize, q: u64) -> Result<Self> {
        Self::new(n, k, q, None)
    }

    /// Number of redundancy symbols, `n - k`.
    pub fn r(&self) -> usize {
        self.n - self.k
    }

    /// Minimum distance `n - k + 1`.
    pub fn d(&self) -> usize {
        self.n - self.k + 1
    }

    /// Correction radius `floor((n - k) / 2)`.
    pub fn t(&self) -> usize {
        (self.n - self.k) / 2
    }

    pub(crate) fn ni(&self) -> i64 {
        self.n as i64
    }

    pub(crate) fn ki(&self) -> i64 {
        self.k as i64
    }

    pub(crate) fn qi(&self) -> i64 {
        self.q as i64
    }
}

impl std::fmt::Display for CodeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]_{}", self.n, self.k, self.q)
    }
}

type FMemo = HashMap<(u64, u64), Vec<ExactInt>>;

fn f_memo() -> &'static Mutex<FMemo> {
    static MEMO: OnceLock<Mutex<FMemo>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Number of totally nonzero solutions of a homogeneous system with `i`
/// unknowns and `j` equations over `F_q` whose coefficient matrix has
/// totally full rank, via the subtractive recurrence.
///
/// `j = 0` is extended as `(q-1)^i` (every totally nonzero vector solves the
/// empty system). Results are memoized per `(q, j)` column.
pub fn f_recurrence(q: u64, i: u64, j: u64) -> ExactInt {
    let mut memo = f_memo().lock().unwrap_or_else(|e| e.into_inner());
    let col = memo.entry((q, j)).or_default();
    let qm1 = q as i64 - 1;
    while col.len() as u64 <= i {
        let ii = col.len() as u64;
        let v = if j == 0 {
            int_pow(qm1, ii as u32)
        } else if ii <= j {
            BigInt::zero()
        } else {
            let mut acc = int_pow(qm1, (ii - j) as u32);
            for h in 1..=j.min(ii) {
                acc -= binom(j as i64, h as i64) * &col[(ii - h) as usize];
            }
            acc
        };
        col.push(v);
    }
    col[i as usize].clone()
}

/// Closed form of [`f_recurrence`] for `i, j >= 1`; zero when `i <= j`.
pub fn f_closed(q: u64, i: u64, j: u64) -> ExactInt {
    let (i, j, qm1) = (i as i64, j as i64, q as i64 - 1);
    (0..i - j)
        .map(|l| sign(l) * binom(j + l - 1, l) * int_pow(qm1, (i - j - l) as u32))
        .sum()
}

fn check_cell(params: &CodeParams, i: usize, j: usize) {
    assert!(
        i <= params.k && j <= params.r(),
        "cell ({i},{j}) outside the {}x{} IRWE grid",
        params.k + 1,
        params.r() + 1
    );
}

/// `A[i][j]` by inclusion-exclusion over the redundancy coordinates that a
/// combination of `i` generator rows leaves nonzero.
pub fn irwe_inclusion_exclusion(params: &CodeParams, i: usize, j: usize) -> ExactInt {
    check_cell(params, i, j);
    if i == 0 {
        return if j == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let r = params.r() as u64;
    let (ju, iu) = (j as u64, i as u64);
    let inner: BigInt = (0..=ju)
        .map(|l| sign(l as i64) * binom(j as i64, l as i64) * f_recurrence(params.q, iu, r - ju + l))
        .sum();
    binom(params.ki(), i as i64) * binom(params.r() as i64, j as i64) * inner
}

/// `A[i][j]` by the closed alternating sum in powers of `q - 1`.
pub fn irwe_closed(params: &CodeParams, i: usize, j: usize) -> ExactInt {
    check_cell(params, i, j);
    if i == 0 {
        return if j == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let r = params.r() as i64;
    let top = i as i64 + j as i64 - r; // exponent of (q - 1) at H = 0
    let inner: BigInt = (0..top)
        .map(|h| sign(h) * binom(r + h - 1, h) * int_pow(params.qi() - 1, (top - h) as u32))
        .sum();
    binom(params.ki(), i as i64) * binom(r, j as i64) * inner
}

/// Two-block partition weight enumerator for the (information, redundancy)
/// split, evaluated as the double alternating sum with kernel
/// `q^(k - n + j1 + j2) - 1`.
///
/// The partition formula counts nonzero codewords only, so the zero codeword
/// is added back at `(0, 0)` to make the table comparable with the IRWE.
pub fn pwe_partition(params: &CodeParams, i: usize, j: usize) -> ExactInt {
    check_cell(params, i, j);
    let (n, k, d) = (params.ni(), params.ki(), params.d() as i64);
    let (i, j) = (i as i64, j as i64);
    let mut acc = BigInt::zero();
    for j1 in 0..=i {
        let outer = binom(i, j1) * sign(i - j1);
        for j2 in (d - j1).max(0)..=j {
            let e = k - n + j1 + j2;
            debug_assert!(e >= 1);
            let kernel = int_pow(params.qi(), e as u32) - 1;
            acc += &outer * binom(j, j2) * sign(j - j2) * kernel;
        }
    }
    let mut out = binom(k, i) * binom(n - k, j) * acc;
    if i == 0 && j == 0 {
        out += 1;
    }
    out
}

/// Exact `(k+1) x (n-k+1)` IRWE table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrweTable {
    pub params: CodeParams,
    counts: Vec<Vec<ExactInt>>,
}

impl IrweTable {
    /// Builds the table from the closed formula.
    pub fn compute(params: CodeParams) -> Self {
        Self::from_fn(params, irwe_closed)
    }

    pub fn from_fn(params: CodeParams, f: impl Fn(&CodeParams, usize, usize) -> ExactInt) -> Self {
        let counts = (0..=params.k)
            .map(|i| (0..=params.r()).map(|j| f(&params, i, j)).collect())
            .collect();
        Self { params, counts }
    }

    pub fn from_counts(params: CodeParams, counts: Vec<Vec<ExactInt>>) -> Result<Self> {
        if counts.len() != params.k + 1 || counts.iter().any(|row| row.len() != params.r() + 1) {
            return Err(Error::Table(format!(
                "expected a {}x{} grid for {params}",
                params.k + 1,
                params.r() + 1
            )));
        }
        Ok(Self { params, counts })
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactInt {
        &self.counts[i][j]
    }

    pub fn rows(&self) -> &[Vec<ExactInt>] {
        &self.counts
    }

    /// Nonzero cells as `(i, j, A_ij)`, row-major.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &ExactInt)> {
        self.counts.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(move |(j, a)| (i, j, a))
        })
    }

    pub fn total(&self) -> ExactInt {
        self.counts.iter().flatten().sum()
    }

    /// `A_r = sum_i A[i][r - i]`.
    pub fn weight_distribution(&self) -> Vec<ExactInt> {
        let mut out = vec![BigInt::zero(); self.params.n + 1];
        for (i, row) in self.counts.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                out[i + j] += a;
            }
        }
        out
    }

    /// Checks the structural invariants: `A[0][0] = 1`, the empty band
    /// `0 < i + j <= n - k`, nonnegativity and the `q^k` total.
    pub fn check_invariants(&self) -> Result<()> {
        let p = &self.params;
        if !self.counts[0][0].is_one() {
            return Err(Error::FormulaInconsistency("A[0][0] != 1".into()));
        }
        for (i, row) in self.counts.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if a.is_negative() {
                    return Err(Error::FormulaInconsistency(format!("A[{i}][{j}] = {a} < 0")));
                }
                if i + j > 0 && i + j <= p.r() && !a.is_zero() {
                    return Err(Error::FormulaInconsistency(format!(
                        "A[{i}][{j}] = {a} inside the minimum-distance band"
                    )));
                }
            }
        }
        let expect = int_pow(p.qi(), p.k as u32);
        let total = self.total();
        if total != expect {
            return Err(Error::FormulaInconsistency(format!(
                "sum of A = {total}, expected q^k = {expect}"
            )));
        }
        Ok(())
    }
}

/// Route used by [`weight_distribution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WdMethod {
    /// Marginal of the IRWE table.
    Marginal,
    /// Classical MDS weight distribution in powers of `q`.
    MdsFormula,
    /// Alternating sum in powers of `q - 1`.
    AlternatingSum,
}

/// Weight distribution `A_0..=A_n`.
pub fn weight_distribution(params: &CodeParams, method: WdMethod) -> Vec<ExactInt> {
    match method {
        WdMethod::Marginal => IrweTable::compute(*params).weight_distribution(),
        WdMethod::MdsFormula => (0..=params.n).map(|r| wd_mds(params, r as i64)).collect(),
        WdMethod::AlternatingSum => (0..=params.n).map(|r| wd_alternating(params, r as i64)).collect(),
    }
}

fn wd_mds(params: &CodeParams, r: i64) -> ExactInt {
    let d = params.d() as i64;
    if r == 0 {
        return BigInt::one();
    }
    if r < d {
        return BigInt::zero();
    }
    let powered: BigInt = (0..=r - d)
        .map(|j| sign(j) * binom(r, j) * int_pow(params.qi(), (r - j + 1 - d) as u32))
        .sum();
    let tail: BigInt = (r - d + 1..=r).map(|j| sign(j) * binom(r, j)).sum();
    binom(params.ni(), r) * (powered + tail)
}

fn wd_alternating(params: &CodeParams, r: i64) -> ExactInt {
    if r == 0 {
        // the alternating sum is empty at r = 0; the zero codeword is added
        return BigInt::one();
    }
    let red = params.r() as i64;
    let top = r - red;
    let inner: BigInt = (0..top)
        .map(|h| sign(h) * binom(red + h - 1, h) * int_pow(params.qi() - 1, (top - h) as u32))
        .sum();
    binom(params.ni(), r) * inner
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, k: usize, q: u64) -> CodeParams {
        CodeParams::symbolic(n, k, q).unwrap()
    }

    /// Totally nonzero solutions of `coeffs . x = 0` over the prime field F_q,
    /// by enumeration of all `(q-1)^i` totally nonzero vectors.
    fn brute_f(q: u64, rows: &[Vec<u64>]) -> u64 {
        let i = rows[0].len();
        let mut x = vec![1u64; i];
        let mut count = 0;
        loop {
            if rows
                .iter()
                .all(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum::<u64>() % q == 0)
            {
                count += 1;
            }
            let mut pos = 0;
            loop {
                if pos == i {
                    return count;
                }
                x[pos] += 1;
                if x[pos] < q {
                    break;
                }
                x[pos] = 1;
                pos += 1;
            }
        }
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_recurrence(5, 1, 1), BigInt::zero());
        assert_eq!(f_recurrence(5, 2, 1), BigInt::from(4));
        assert_eq!(f_recurrence(5, 3, 1), BigInt::from(12));
        assert_eq!(f_closed(5, 3, 2), BigInt::from(4));
        assert_eq!(f_closed(2, 3, 1), BigInt::zero());
        assert_eq!(f_recurrence(7, 4, 0), BigInt::from(1296));
    }

    #[test]
    fn f_examples_match_brute_force() {
        assert_eq!(brute_f(5, &[vec![1, 3]]), 4);
        assert_eq!(brute_f(5, &[vec![2, 1, 4]]), 12);
        // 2x3 Cauchy matrix 1/(x_a - y_b) over F_5, x = {0, 1}, y = {2, 3, 4}
        let inv = |v: u64| (1..5).find(|u| u * v % 5 == 1).unwrap();
        let rows: Vec<Vec<u64>> = [0u64, 1]
            .iter()
            .map(|&x| [2u64, 3, 4].iter().map(|&y| inv((x + 5 - y) % 5)).collect())
            .collect();
        assert_eq!(brute_f(5, &rows), 4);
        assert_eq!(brute_f(2, &[vec![1, 1, 1]]), 0);
    }

    #[test]
    fn f_closed_equals_recurrence_on_grid() {
        for q in 2..=9 {
            for i in 1..=20 {
                for j in 1..=12 {
                    assert_eq!(f_closed(q, i, j), f_recurrence(q, i, j), "q={q} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn irwe_examples() {
        let t2 = p(4, 2, 5);
        assert_eq!(irwe_inclusion_exclusion(&t2, 0, 0), BigInt::one());
        assert_eq!(irwe_inclusion_exclusion(&t2, 1, 2), BigInt::from(8));
        assert_eq!(irwe_inclusion_exclusion(&t2, 2, 0), BigInt::zero());
        assert_eq!(irwe_closed(&t2, 2, 1), BigInt::from(8));
        assert_eq!(irwe_closed(&t2, 2, 2), BigInt::from(8));
        assert_eq!(irwe_closed(&p(6, 2, 7), 1, 4), BigInt::from(12));
        assert_eq!(pwe_partition(&t2, 1, 2), BigInt::from(8));
        assert_eq!(pwe_partition(&p(3, 1, 2), 1, 2), BigInt::one());
    }

    #[test]
    fn three_formula_routes_agree() {
        for (n, k, q) in [(3, 1, 2), (4, 2, 5), (6, 2, 7), (7, 3, 8), (15, 9, 16), (12, 5, 11)] {
            let params = p(n, k, q);
            let closed = IrweTable::compute(params);
            assert_eq!(closed, IrweTable::from_fn(params, irwe_inclusion_exclusion), "{params}");
            assert_eq!(closed, IrweTable::from_fn(params, pwe_partition), "{params}");
            closed.check_invariants().unwrap();
        }
    }

    #[test]
    fn large_table_normalizes() {
        for k in [87, 107, 117] {
            let t = IrweTable::compute(p(127, k, 128));
            t.check_invariants().unwrap();
        }
    }

    #[test]
    fn weight_distribution_examples() {
        let as_ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        for m in [WdMethod::Marginal, WdMethod::MdsFormula, WdMethod::AlternatingSum] {
            assert_eq!(weight_distribution(&p(4, 2, 5), m), as_ints(&[1, 0, 0, 16, 8]));
            assert_eq!(weight_distribution(&p(3, 1, 2), m), as_ints(&[1, 0, 0, 1]));
            let total: BigInt = weight_distribution(&p(7, 3, 8), m).iter().sum();
            assert_eq!(total, BigInt::from(512));
        }
    }

    #[test]
    fn weight_distribution_routes_agree() {
        for q in [8u64, 16, 32] {
            for n in 2..=31usize {
                for k in 1..n {
                    let params = p(n, k, q);
                    let m = weight_distribution(&params, WdMethod::Marginal);
                    assert_eq!(m, weight_distribution(&params, WdMethod::MdsFormula), "{params}");
                    assert_eq!(m, weight_distribution(&params, WdMethod::AlternatingSum), "{params}");
                }
            }
        }
    }

    #[test]
    fn bad_params_rejected() {
        assert!(CodeParams::symbolic(4, 0, 5).is_err());
        assert!(CodeParams::symbolic(4, 4, 5).is_err());
        assert!(CodeParams::symbolic(4, 2, 1).is_err());
        assert!(CodeParams::new(4, 2, 6, Some(2)).is_err());
        let c = CodeParams::binary(7, 3, 3).unwrap();
        assert_eq!((c.q, c.d(), c.t()), (8, 5, 2));
    }
}
