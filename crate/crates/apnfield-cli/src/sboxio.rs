//! S-box file I/O.
//!
//! Two on-disk encodings are accepted: one lowercase-hex value per line,
//! line x holding F(x) with x in ascending encoding order, or a single
//! line of fixed-width hex entries (width = ceil(n/4)). The writer always
//! emits the line format, zero-padded, so write-then-read is the identity
//! bit for bit.

use std::fs;
use std::path::Path;

use apnfield::apnfam::VectorFunction;
use apnfield::Error;

use crate::CliError;

fn degree_for_len(len: usize) -> Result<u32, Error> {
    if len.count_ones() == 1 {
        let n = len.trailing_zeros();
        if (2..=24).contains(&n) {
            return Ok(n);
        }
    }
    Err(Error::LengthNotPowerOfTwo { len })
}

fn hex_width(n: u32) -> usize {
    n.div_ceil(4) as usize
}

fn parse_entry(s: &str, line: usize, n: u32) -> Result<u64, Error> {
    let raw = u64::from_str_radix(s, 16).map_err(|e| Error::MalformedHex {
        line,
        detail: format!("{s:?}: {e}"),
    })?;
    if raw >> n != 0 {
        return Err(Error::MalformedHex {
            line,
            detail: format!("value {s:?} does not fit in {n} bits"),
        });
    }
    Ok(raw)
}

pub fn read_sbox(path: &Path) -> Result<VectorFunction, CliError> {
    let content = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
    let lines: Vec<&str> = content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    let label = path.display().to_string();
    let table = match lines.len() {
        0 => return Err(Error::LengthNotPowerOfTwo { len: 0 }.into()),
        1 => parse_blob(lines[0])?,
        count => {
            let n = degree_for_len(count)?;
            lines
                .iter()
                .enumerate()
                .map(|(i, l)| parse_entry(l, i + 1, n))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let n = degree_for_len(table.len())?;
    Ok(VectorFunction::from_raw_table(n, table, label)?)
}

fn parse_blob(blob: &str) -> Result<Vec<u64>, CliError> {
    let len = blob.len();
    let n = (2u32..=24)
        .find(|&n| (1usize << n) * hex_width(n) == len)
        .ok_or(Error::LengthNotPowerOfTwo { len })?;
    let w = hex_width(n);
    (0..1usize << n)
        .map(|i| parse_entry(&blob[i * w..(i + 1) * w], 1, n).map_err(CliError::from))
        .collect()
}

pub fn write_sbox(path: &Path, f: &VectorFunction) -> Result<(), CliError> {
    let w = hex_width(f.n());
    let mut out = String::with_capacity(f.len() * (w + 1));
    for e in f.table() {
        out.push_str(&format!("{:0width$x}\n", e.raw(), width = w));
    }
    fs::write(path, out).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}
