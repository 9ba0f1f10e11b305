//! CSV cells and provenance comment lines.

use std::fmt::Write;

use sha2::{Digest, Sha256};

use super::CliError;

/// Significant digits of every numeric CSV cell.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`-style rendering: shortest of fixed or scientific notation with
/// trailing zeros removed. Negative zero prints as `0`.
pub fn number(x: f64) -> Result<String, CliError> {
    if !x.is_finite() {
        return Err(CliError::NonFinite(x));
    }
    if x == 0.0 {
        return Ok("0".into());
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific notation has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        Ok(trim_zeros(&format!("{x:.decimals$}")).to_string())
    } else {
        Ok(format!("{}e{exp}", trim_zeros(mantissa)))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Accumulates a CSV document with LF line endings.
#[derive(Debug, Default)]
pub struct Document {
    text: String,
}

impl Document {
    pub fn comment(&mut self, line: impl AsRef<str>) {
        let _ = writeln!(self.text, "# {}", line.as_ref());
    }

    pub fn line(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut first = true;
        for c in cells {
            if !first {
                self.text.push(',');
            }
            self.text.push_str(c.as_ref());
            first = false;
        }
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}
