//! Plain-text family files.
//!
//! ```text
//! n=4
//! # star of 1
//! 1
//! 7
//! 11
//! 13
//! ```
//!
//! The first line is `n=<decimal>`, every other line holds one decimal
//! member mask. `#` starts a comment and blank lines are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use grassmann_core::families::FamilyError;
use grassmann_core::OddFamily;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamFileError {
    #[error("line {line}: expected header `n=<decimal>`, found `{found}`")]
    BadHeader { line: usize, found: String },
    #[error("missing `n=<decimal>` header")]
    MissingHeader,
    #[error("line {line}: ground set size {n} is not supported")]
    BadRank { line: usize, n: u32 },
    #[error("line {line}: `{found}` is not a decimal mask")]
    BadMask { line: usize, found: String },
    #[error("line {line}: mask {mask} has even size")]
    EvenMember { line: usize, mask: u32 },
    #[error("line {line}: mask {mask} is not a subset of [{n}]")]
    OutOfRange { line: usize, mask: u32, n: u32 },
    #[error("line {line}: mask {mask} already listed on line {first}")]
    Duplicate { line: usize, mask: u32, first: usize },
}

pub fn parse(text: &str) -> Result<OddFamily, FamFileError> {
    let mut family: Option<OddFamily> = None;
    let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some(fam) = family.as_mut() else {
            let n = content
                .strip_prefix("n=")
                .and_then(|v| v.trim().parse::<u32>().ok())
                .ok_or_else(|| FamFileError::BadHeader {
                    line,
                    found: content.to_string(),
                })?;
            family = Some(OddFamily::empty(n).map_err(|_| FamFileError::BadRank { line, n })?);
            continue;
        };
        let mask: u32 = content.parse().map_err(|_| FamFileError::BadMask {
            line,
            found: content.to_string(),
        })?;
        if let Some(&first) = seen.get(&mask) {
            return Err(FamFileError::Duplicate { line, mask, first });
        }
        match fam.insert(mask) {
            Ok(_) => {}
            Err(FamilyError::EvenMember(mask)) => return Err(FamFileError::EvenMember { line, mask }),
            Err(FamilyError::MaskOutOfRange { mask, n }) => {
                return Err(FamFileError::OutOfRange { line, mask, n })
            }
            Err(e) => unreachable!("insert only rejects parity and range: {e}"),
        }
        seen.insert(mask, line);
    }
    family.ok_or(FamFileError::MissingHeader)
}

pub fn render(family: &OddFamily) -> String {
    let mut out = format!("n={}\n# {} members\n", family.n(), family.len());
    for m in family.members() {
        writeln!(out, "{m}").expect("write to string");
    }
    out
}

pub fn read(path: &Path) -> anyhow::Result<OddFamily> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    parse(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

pub fn write(path: &Path, family: &OddFamily) -> anyhow::Result<()> {
    std::fs::write(path, render(family))
        .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))
}

/// `{1,2,3}` style rendering of a mask.
pub fn set_notation(mask: u32) -> String {
    let elems: Vec<String> = (0..32)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", elems.join(","))
}
