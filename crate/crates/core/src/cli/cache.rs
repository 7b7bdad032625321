//! On-disk table cache: IRWE and sphere-coverage tables as decimal CSV,
//! keyed by `(n, k, q, t)`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::enumerator::{CodeParams, IrweTable};
use crate::error::{Error, Result};
use crate::rates::{CoverCell, RateTables, SphereCover};

pub const HEADER: &str = "# mdsrel-table v1";

#[derive(Debug, Clone)]
pub struct TableCache {
    dir: PathBuf,
}

fn key(params: &CodeParams) -> String {
    format!("n={} k={} q={} t={}", params.n, params.k, params.q, params.t())
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    fn path(&self, kind: &str, params: &CodeParams) -> PathBuf {
        self.dir.join(format!(
            "{kind}-n{}-k{}-q{}-t{}.csv",
            params.n,
            params.k,
            params.q,
            params.t()
        ))
    }

    pub fn irwe(&self, params: CodeParams) -> Result<IrweTable> {
        let path = self.path("irwe", &params);
        if path.exists() {
            let rows = read_table(&path, "irwe", &params, 3)?;
            let mut counts = vec![vec![BigInt::zero(); params.r() + 1]; params.k + 1];
            for row in rows {
                let (i, j) = cell_index(&path, &row, &params)?;
                counts[i][j] = row[2].clone();
            }
            let table = IrweTable::from_counts(params, counts)?;
            table
                .check_invariants()
                .map_err(|e| Error::Table(format!("{}: {e}", path.display())))?;
            return Ok(table);
        }
        let table = IrweTable::compute(params);
        let rows = table
            .nonzero()
            .map(|(i, j, a)| format!("{i},{j},{a}"))
            .collect::<Vec<_>>();
        write_table(&path, "irwe", &params, "i,j,A_ij", &rows)?;
        Ok(table)
    }

    pub fn sphere(&self, irwe: &IrweTable) -> Result<SphereCover> {
        let params = irwe.params;
        let path = self.path("sphere", &params);
        if path.exists() {
            let rows = read_table(&path, "sphere", &params, 5)?;
            let mut cells = vec![vec![CoverCell::default(); params.r() + 1]; params.k + 1];
            for row in rows {
                let (i, j) = cell_index(&path, &row, &params)?;
                cells[i][j] = CoverCell {
                    words: row[2].clone(),
                    info_weighted: row[3].clone(),
                    changes: row[4].clone(),
                };
            }
            return SphereCover::from_cells(params, cells);
        }
        let cover = SphereCover::build(irwe);
        let mut rows = Vec::new();
        for (i, row) in cover.rows().iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.words.is_zero() {
                    rows.push(format!("{i},{j},{},{},{}", c.words, c.info_weighted, c.changes));
                }
            }
        }
        write_table(&path, "sphere", &params, "r1,r2,words,info_weighted,changes", &rows)?;
        Ok(cover)
    }

    /// IRWE and, when `with_cover`, the sphere table, each read from the
    /// cache or computed and stored.
    pub fn tables(&self, params: CodeParams, with_cover: bool) -> Result<RateTables> {
        let irwe = self.irwe(params)?;
        Ok(if with_cover {
            let cover = self.sphere(&irwe)?;
            RateTables::with_cover(irwe, cover)
        } else {
            RateTables::from_irwe(irwe)
        })
    }
}

fn cell_index(path: &Path, row: &[BigInt], params: &CodeParams) -> Result<(usize, usize)> {
    let i = usize::try_from(&row[0]).ok().filter(|&i| i <= params.k);
    let j = usize::try_from(&row[1]).ok().filter(|&j| j <= params.r());
    i.zip(j)
        .ok_or_else(|| Error::Table(format!("{}: cell ({}, {}) out of range", path.display(), row[0], row[1])))
}

fn write_table(path: &Path, kind: &str, params: &CodeParams, columns: &str, rows: &[String]) -> Result<()> {
    // write to a side file and rename so readers never see a partial table
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
        writeln!(f, "{HEADER}")?;
        writeln!(f, "# kind={kind} {}", key(params))?;
        writeln!(f, "{columns}")?;
        for row in rows {
            writeln!(f, "{row}")?;
        }
        f.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn read_table(path: &Path, kind: &str, params: &CodeParams, width: usize) -> Result<Vec<Vec<BigInt>>> {
    let text = fs::read_to_string(path)?;
    let bad = |why: String| Error::Table(format!("{}: {why}", path.display()));
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(bad("missing version header".into()));
    }
    let expect = format!("# kind={kind} {}", key(params));
    if lines.next() != Some(expect.as_str()) {
        return Err(bad(format!("key line does not match {expect:?}")));
    }
    lines.next().ok_or_else(|| bad("missing column line".into()))?;
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let row = line
                .split(',')
                .map(|s| s.trim().parse::<BigInt>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| bad(format!("{line:?}: {e}")))?;
            if row.len() != width {
                return Err(bad(format!("{line:?}: expected {width} columns")));
            }
            Ok(row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_reuse() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path()).unwrap();
        let params = CodeParams::binary(15, 9, 4).unwrap();
        let fresh = cache.tables(params, true).unwrap();
        let again = cache.tables(params, true).unwrap();
        assert_eq!(fresh.irwe, again.irwe);
        assert_eq!(fresh.cover(), again.cover());
        let text = fs::read_to_string(dir.path().join("irwe-n15-k9-q16-t3.csv")).unwrap();
        assert!(text.starts_with(HEADER));
    }

    #[test]
    fn corrupt_tables_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path()).unwrap();
        let params = CodeParams::symbolic(4, 2, 5).unwrap();
        cache.irwe(params).unwrap();
        let path = dir.path().join("irwe-n4-k2-q5-t1.csv");
        let text = fs::read_to_string(&path).unwrap().replace("2,2,8", "2,2,9");
        fs::write(&path, text).unwrap();
        assert!(matches!(cache.irwe(params), Err(Error::Table(_))));
        fs::write(&path, "i,j,A_ij\n").unwrap();
        assert!(matches!(cache.irwe(params), Err(Error::Table(_))));
    }
}
