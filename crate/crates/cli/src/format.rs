//! JSON/CSV rendering shared by the subcommands.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use qstab_core::numeric;
use rug::Complex;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Complex number as two decimal strings.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct DecimalComplex {
    pub re: String,
    pub im: String,
}

/// Significant decimal digits carried by `prec` bits.
pub fn digits(prec: u32) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

pub fn decimal(z: &Complex) -> DecimalComplex {
    let d = digits(z.prec().0);
    DecimalComplex { re: numeric::float_to_decimal(z.real(), d), im: numeric::float_to_decimal(z.imag(), d) }
}

/// `"re"` or `"re,im"`.
pub fn parse_point(s: &str, prec: u32) -> Result<Complex> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    Ok(numeric::parse_complex(prec, re, im)?)
}

/// Writes to `out`, or stdout when absent.
pub fn emit(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn csv_string<R: Serialize>(header: &[&str], rows: &[R]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_parsing() {
        let z = parse_point("-1e-4,2", 64).unwrap();
        assert_eq!(numeric::to_c64(&z), (-1e-4, 2.0));
        assert_eq!(numeric::to_c64(&parse_point("0.5", 64).unwrap()), (0.5, 0.0));
        assert!(parse_point("abc", 64).is_err());
    }

    #[test]
    fn decimal_strings() {
        let z = numeric::from_f64(64, 0.5, -2.0);
        let d = decimal(&z);
        assert!(d.re.starts_with("5.0") && d.im.starts_with("-2.0"), "{d:?}");
        assert_eq!(digits(256), 77);
    }
}
