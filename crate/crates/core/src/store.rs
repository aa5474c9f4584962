//! JSON Lines persistence for recurrence tables.
//!
//! Line 1 is a header `{"family", "generator_version", "base_rows"}`; every
//! following line is one [`TableRecord`]. Rows appear in increasing `n`, each
//! row's records in increasing `k` over the full support.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::recurrences::{next_row, Family, Row};

pub const GENERATOR_VERSION: &str = concat!("gamma-desk ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub family: Family,
    pub n: u32,
    pub k: i64,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableHeader {
    pub family: Family,
    pub generator_version: String,
    pub base_rows: Vec<TableRecord>,
}

impl TableHeader {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            generator_version: GENERATOR_VERSION.to_string(),
            base_rows: family.base_rows().iter().flat_map(row_records).collect(),
        }
    }
}

fn row_records(row: &Row) -> Vec<TableRecord> {
    row.ks()
        .map(|(k, v)| TableRecord {
            family: row.family,
            n: row.n,
            k,
            value: v.to_string(),
        })
        .collect()
}

/// Appends rows to a table file, one flush per row.
pub struct TableWriter {
    out: BufWriter<File>,
    family: Family,
    next_n: u32,
}

impl TableWriter {
    /// Creates (or truncates) `path` and writes the header.
    pub fn create(path: &Path, family: Family) -> Result<Self> {
        let mut out = BufWriter::new(File::create(path)?);
        serde_json::to_writer(&mut out, &TableHeader::new(family))?;
        out.write_all(b"\n")?;
        out.flush()?;
        Ok(Self { out, family, next_n: 1 })
    }

    /// Opens a validated table for appending after row `last_n`.
    pub fn append(path: &Path, family: Family, last_n: u32) -> Result<Self> {
        let file = OpenOptions::new().append(true).open(path)?;
        Ok(Self {
            out: BufWriter::new(file),
            family,
            next_n: last_n + 1,
        })
    }

    pub fn write_row(&mut self, row: &Row) -> Result<()> {
        if row.family != self.family || row.n != self.next_n {
            return Err(Error::InvalidArgument(format!(
                "expected row {} of family {}, got row {} of family {}",
                self.next_n, self.family, row.n, row.family
            )));
        }
        for rec in row_records(row) {
            serde_json::to_writer(&mut self.out, &rec)?;
            self.out.write_all(b"\n")?;
        }
        self.out.flush()?;
        self.next_n += 1;
        Ok(())
    }
}

/// Streams the rows of a table file to `f` after validating the header,
/// record order, row shape and the recurrence on every computed row.
/// Returns the header.
pub fn scan_table(path: &Path, mut f: impl FnMut(Row) -> Result<()>) -> Result<TableHeader> {
    let reader = BufReader::new(File::open(path)?);
    let corrupt = |line: usize, reason: String| Error::CorruptTable { line, reason };
    let mut lines = reader.lines().enumerate();

    let header: TableHeader = match lines.next() {
        None => return Err(corrupt(1, "empty file".into())),
        Some((_, l)) => serde_json::from_str(&l?).map_err(|e| corrupt(1, format!("bad header: {e}")))?,
    };
    if header.base_rows != TableHeader::new(header.family).base_rows {
        return Err(corrupt(1, "base rows differ from this generator's".into()));
    }
    let family = header.family;
    let depth = family.depth();
    let base = family.base_rows();

    let mut recent: Vec<Row> = Vec::with_capacity(depth + 1);
    let mut cur: Option<(Row, usize)> = None;
    let mut finish = |row: Row, line: usize, recent: &mut Vec<Row>| -> Result<()> {
        if !row.has_valid_shape() {
            return Err(corrupt(line, format!("row {} is incomplete", row.n)));
        }
        let expected = if let Some(b) = base.iter().find(|b| b.n == row.n) {
            b.clone()
        } else {
            let p1 = &recent[recent.len() - 1];
            let p2 = (depth == 2).then(|| &recent[recent.len() - 2]);
            next_row(family, row.n, p1, p2).map_err(|e| corrupt(line, e.to_string()))?
        };
        if expected != row {
            return Err(corrupt(line, format!("row {} does not satisfy the recurrence", row.n)));
        }
        recent.push(row.clone());
        if recent.len() > depth {
            recent.remove(0);
        }
        f(row)
    };

    for (i, l) in lines {
        let line = i + 1;
        let l = l?;
        let rec: TableRecord = serde_json::from_str(&l).map_err(|e| corrupt(line, format!("bad record: {e}")))?;
        if rec.family != family {
            return Err(corrupt(
                line,
                format!("record of family {} in a family {family} table", rec.family),
            ));
        }
        let value: BigInt = rec
            .value
            .parse()
            .map_err(|_| corrupt(line, format!("value `{}` is not an integer", rec.value)))?;
        let starts_row = cur.as_ref().is_none_or(|(r, _)| rec.n != r.n);
        if starts_row {
            let want_n = cur.as_ref().map_or(1, |(r, _)| r.n + 1);
            if rec.n != want_n {
                return Err(corrupt(line, format!("expected row {want_n}, found row {}", rec.n)));
            }
            if let Some((row, at)) = cur.take() {
                finish(row, at, &mut recent)?;
            }
            cur = Some((Row::new(family, rec.n, vec![]), line));
        }
        let (row, at) = cur.as_mut().expect("row in progress");
        let want_k = row.k_min() + row.values.len() as i64;
        if rec.k != want_k {
            return Err(corrupt(
                line,
                format!("expected k = {want_k} in row {}, found {}", row.n, rec.k),
            ));
        }
        row.values.push(value);
        *at = line;
    }
    if let Some((row, at)) = cur {
        finish(row, at, &mut recent)?;
    }
    Ok(header)
}

/// Parses only the header line.
pub fn read_header(path: &Path) -> Result<TableHeader> {
    let mut first = String::new();
    BufReader::new(File::open(path)?).read_line(&mut first)?;
    if first.trim().is_empty() {
        return Err(Error::CorruptTable {
            line: 1,
            reason: "empty file".into(),
        });
    }
    serde_json::from_str(&first).map_err(|e| Error::CorruptTable {
        line: 1,
        reason: format!("bad header: {e}"),
    })
}

/// All rows of a table file.
pub fn load_table(path: &Path) -> Result<(Family, Vec<Row>)> {
    let mut rows = vec![];
    let header = scan_table(path, |r| {
        rows.push(r);
        Ok(())
    })?;
    Ok((header.family, rows))
}

/// Writes a complete table.
pub fn save_table(path: &Path, family: Family, rows: &[Row]) -> Result<()> {
    let mut w = TableWriter::create(path, family)?;
    for r in rows {
        w.write_row(r)?;
    }
    Ok(())
}
