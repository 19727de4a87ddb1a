use std::io::BufRead;

use super::{ZeroCatalog, ZeroEntry, ZeroSource, TABLE_PREC};
use crate::ball::{parse_decimal, Mag, RealBall};
use crate::error::{Error, Result};

/// Read a plain ordinate table: one decimal per line, optionally preceded by
/// its 1-based index. `#` starts a comment; blank lines are skipped.
pub fn parse_zero_table<R: BufRead>(reader: R, accuracy: &Mag, descriptor: &str) -> Result<ZeroCatalog> {
    let mut entries = Vec::new();
    let mut linenos = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = n + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let malformed = || Error::MalformedLine {
            line: lineno,
            text: line.clone(),
        };
        let ordinate = match fields.as_slice() {
            [x] => *x,
            [idx, x] => {
                let idx: usize = idx.parse().map_err(|_| malformed())?;
                if idx != entries.len() + 1 {
                    return Err(malformed());
                }
                *x
            }
            _ => return Err(malformed()),
        };
        let q = parse_decimal(ordinate).map_err(|_| malformed())?;
        let beta = RealBall::from_rational(&q, TABLE_PREC).with_error(accuracy);
        linenos.push(lineno);
        entries.push(ZeroEntry {
            index: entries.len() + 1,
            beta,
            delta: RealBall::zero(TABLE_PREC),
            source: ZeroSource::Table,
        });
    }
    // report file line numbers, not entry positions
    let file_line = |pos: usize| linenos.get(pos - 1).copied().unwrap_or(pos);
    ZeroCatalog::new(entries, accuracy.clone(), descriptor).map_err(|e| match e {
        Error::NonMonotonicOrdinates { line } => Error::NonMonotonicOrdinates { line: file_line(line) },
        Error::OrdinateTooSmall { line, value } => Error::OrdinateTooSmall {
            line: file_line(line),
            value,
        },
        other => other,
    })
}
