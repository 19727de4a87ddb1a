//! Versioned catalog cache.
//!
//! ```text
//! XIAUDIT-ZC v1
//! accuracy <radius>
//! descriptor <text>
//! <index> <beta mid> <beta rad> <source> <prec> <delta mid> <delta rad>
//! ...
//! CRC <crc32 of everything above, hex>
//! ```
//!
//! Midpoints are written with enough decimal digits to round-trip exactly at
//! their precision.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use rug::Float;

use super::{ZeroCatalog, ZeroEntry, ZeroSource};
use crate::ball::{Mag, RealBall, MAG_PREC};
use crate::error::{Error, Result};

pub const CATALOG_MAGIC: &str = "XIAUDIT-ZC v1";

pub fn save_catalog(catalog: &ZeroCatalog, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    write_catalog(catalog, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

pub fn load_catalog(path: &Path) -> Result<ZeroCatalog> {
    read_catalog(fs::File::open(path)?)
}

pub fn write_catalog<W: Write>(catalog: &ZeroCatalog, mut out: W) -> Result<()> {
    let mut body = String::new();
    body.push_str(CATALOG_MAGIC);
    body.push('\n');
    body.push_str(&format!("accuracy {}\n", mag_text(catalog.table_accuracy())));
    body.push_str(&format!("descriptor {}\n", catalog.descriptor().replace('\n', " ")));
    for e in catalog.entries() {
        body.push_str(&format!(
            "{} {} {} {} {} {} {}\n",
            e.index,
            float_text(e.beta.mid()),
            mag_text(e.beta.rad()),
            e.source.as_str(),
            e.beta.prec(),
            float_text(e.delta.mid()),
            mag_text(e.delta.rad()),
        ));
    }
    let crc = crc32fast::hash(body.as_bytes());
    out.write_all(body.as_bytes())?;
    writeln!(out, "CRC {crc:08x}")?;
    Ok(())
}

pub fn read_catalog<R: Read>(mut input: R) -> Result<ZeroCatalog> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    let first = text.lines().next().unwrap_or("");
    if first != CATALOG_MAGIC {
        return Err(Error::VersionMismatch(format!(
            "expected {CATALOG_MAGIC:?}, found {first:?}"
        )));
    }
    let trimmed = text.strip_suffix('\n').ok_or(Error::ChecksumMismatch)?;
    let (body_len, crc_line) = match trimmed.rfind('\n') {
        Some(pos) => (pos + 1, &trimmed[pos + 1..]),
        None => return Err(Error::ChecksumMismatch),
    };
    let stored = crc_line
        .strip_prefix("CRC ")
        .and_then(|h| u32::from_str_radix(h, 16).ok())
        .ok_or(Error::ChecksumMismatch)?;
    let body = &text[..body_len];
    if crc32fast::hash(body.as_bytes()) != stored {
        return Err(Error::ChecksumMismatch);
    }

    let mut lines = body.lines().enumerate().skip(1);
    let mut header = |key: &str| -> Result<String> {
        let (n, l) = lines.next().ok_or(Error::ChecksumMismatch)?;
        l.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| malformed(n, l))
    };
    let accuracy = header("accuracy")?;
    let accuracy = parse_mag(&accuracy).ok_or_else(|| malformed(2, &accuracy))?;
    let descriptor = header("descriptor")?;

    let mut entries = Vec::new();
    for (n, l) in lines {
        entries.push(parse_record(l).ok_or_else(|| malformed(n, l))?);
    }
    ZeroCatalog::new(entries, accuracy, descriptor)
}

fn malformed(n: usize, line: &str) -> Error {
    Error::MalformedLine {
        line: n + 1,
        text: line.to_string(),
    }
}

fn parse_record(line: &str) -> Option<ZeroEntry> {
    let f: Vec<&str> = line.split_whitespace().collect();
    if f.len() != 7 {
        return None;
    }
    let index: usize = f[0].parse().ok()?;
    let source = ZeroSource::parse(f[3])?;
    let prec: u32 = f[4].parse().ok()?;
    if !(crate::ball::MIN_PREC..=crate::ball::PREC_CAP).contains(&prec) {
        return None;
    }
    let beta = RealBall::new(parse_float(f[1], prec)?, parse_mag(f[2])?);
    let delta = RealBall::new(parse_float(f[5], prec)?, parse_mag(f[6])?);
    Some(ZeroEntry {
        index,
        beta,
        delta,
        source,
    })
}

fn float_text(x: &Float) -> String {
    x.to_string_radix(10, None)
}

fn mag_text(m: &Mag) -> String {
    m.as_float().to_string_radix(10, None)
}

fn parse_float(text: &str, prec: u32) -> Option<Float> {
    Float::parse(text).ok().map(|p| Float::with_val(prec, p))
}

fn parse_mag(text: &str) -> Option<Mag> {
    let f = parse_float(text, MAG_PREC)?;
    if f.is_sign_negative() || f.is_nan() {
        return None;
    }
    Some(Mag::from_float(&f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::parse_zero_table;

    fn sample() -> ZeroCatalog {
        parse_zero_table(
            "14.134725142\n21.022039639\n25.010857580\n".as_bytes(),
            &Mag::from_f64(5e-10),
            "three zeros",
        )
        .unwrap()
    }

    #[test]
    fn round_trip() {
        let cat = sample();
        let mut buf = Vec::new();
        write_catalog(&cat, &mut buf).unwrap();
        let back = read_catalog(buf.as_slice()).unwrap();
        assert_eq!(back, cat);
    }

    #[test]
    fn round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.zc");
        save_catalog(&sample(), &path).unwrap();
        assert_eq!(load_catalog(&path).unwrap(), sample());
    }

    #[test]
    fn wrong_magic() {
        let r = read_catalog("XIAUDIT-ZC v0\n".as_bytes());
        assert!(matches!(r, Err(Error::VersionMismatch(_))));
    }

    #[test]
    fn truncated_or_corrupted() {
        let mut buf = Vec::new();
        write_catalog(&sample(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let cut = &text[..text.len() - 30];
        assert!(matches!(read_catalog(cut.as_bytes()), Err(Error::ChecksumMismatch)));
        let flipped = text.replacen("21.02", "21.03", 1);
        assert!(matches!(read_catalog(flipped.as_bytes()), Err(Error::ChecksumMismatch)));
    }
}
