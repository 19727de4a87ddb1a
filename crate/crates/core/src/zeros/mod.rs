//! Tables of nontrivial zeta zeros `rho = 1/2 + delta + i beta` with `beta > 0`.

mod count;
mod parse;
mod persist;
mod refine;

pub use count::{count_vs_formula, main_term, CountCheck};
pub use parse::parse_zero_table;
pub use persist::{load_catalog, read_catalog, save_catalog, write_catalog, CATALOG_MAGIC};
pub use refine::{refine_zero, xi_on_critical_line, RefineOutcome};

use crate::ball::{Mag, RealBall};
use crate::error::{Error, Result};

/// Working precision for parsed ordinates.
pub const TABLE_PREC: u32 = 192;

/// Default accuracy of a 9-decimal ordinate table.
pub const DEFAULT_TABLE_ACCURACY: f64 = 5e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroSource {
    Table,
    Refined,
}

impl ZeroSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ZeroSource::Table => "table",
            ZeroSource::Refined => "refined",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "table" => Some(ZeroSource::Table),
            "refined" => Some(ZeroSource::Refined),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroEntry {
    /// 1-based position by ascending ordinate.
    pub index: usize,
    pub beta: RealBall,
    /// Offset from the critical line; exactly zero for tabulated zeros.
    pub delta: RealBall,
    pub source: ZeroSource,
}

impl ZeroEntry {
    pub fn on_line(&self) -> bool {
        self.delta.is_exact() && self.delta.mid().is_zero()
    }
}

/// Ordered, validated set of zeros in the upper half-plane.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroCatalog {
    entries: Vec<ZeroEntry>,
    table_accuracy: Mag,
    descriptor: String,
}

impl ZeroCatalog {
    /// Validate and wrap `entries`. Indices are reassigned by position.
    pub fn new(mut entries: Vec<ZeroEntry>, table_accuracy: Mag, descriptor: impl Into<String>) -> Result<Self> {
        for (i, e) in entries.iter_mut().enumerate() {
            e.index = i + 1;
        }
        validate(&entries)?;
        Ok(ZeroCatalog {
            entries,
            table_accuracy,
            descriptor: descriptor.into(),
        })
    }

    pub fn entries(&self) -> &[ZeroEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&ZeroEntry> {
        index.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    pub fn table_accuracy(&self) -> &Mag {
        &self.table_accuracy
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// Zeros on the critical line.
    pub fn omega1(&self) -> impl Iterator<Item = &ZeroEntry> {
        self.entries.iter().filter(|e| e.on_line())
    }

    /// Zeros off the critical line.
    pub fn omega2(&self) -> impl Iterator<Item = &ZeroEntry> {
        self.entries.iter().filter(|e| !e.on_line())
    }

    /// Largest tabulated ordinate.
    pub fn cutoff(&self) -> Result<&RealBall> {
        self.entries.last().map(|e| &e.beta).ok_or(Error::EmptyCatalog)
    }

    /// First `n` entries as a new catalog.
    pub fn truncated(&self, n: usize) -> ZeroCatalog {
        ZeroCatalog {
            entries: self.entries[..n.min(self.entries.len())].to_vec(),
            table_accuracy: self.table_accuracy.clone(),
            descriptor: self.descriptor.clone(),
        }
    }

    /// Replace the entry at `entry.index`.
    pub fn with_entry(&self, entry: ZeroEntry) -> Result<ZeroCatalog> {
        let pos = entry
            .index
            .checked_sub(1)
            .filter(|&i| i < self.entries.len())
            .ok_or_else(|| Error::InvalidArgument(format!("no entry with index {}", entry.index)))?;
        let mut entries = self.entries.clone();
        entries[pos] = entry;
        validate(&entries)?;
        Ok(ZeroCatalog {
            entries,
            table_accuracy: self.table_accuracy.clone(),
            descriptor: self.descriptor.clone(),
        })
    }
}

fn validate(entries: &[ZeroEntry]) -> Result<()> {
    let two_pi = crate::ball::pi(64).mul_2si(1);
    let half = rug::Rational::from((1, 2));
    for (i, e) in entries.iter().enumerate() {
        let line = i + 1;
        if !(e.beta.lower() > two_pi.upper()) {
            return Err(Error::OrdinateTooSmall {
                line,
                value: e.beta.mid_string(Some(12)),
            });
        }
        if !(e.delta.abs().upper() < half) {
            return Err(Error::InvalidArgument(format!(
                "entry {line}: |delta| must be below 1/2"
            )));
        }
        if i > 0 {
            // gap must exceed the sum of both radii
            let prev = &entries[i - 1].beta;
            if !(e.beta.lower() > prev.upper()) {
                return Err(Error::NonMonotonicOrdinates { line });
            }
        }
    }
    Ok(())
}
