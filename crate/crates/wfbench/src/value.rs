//! Exact arithmetic for distances and work-function values.
//!
//! Input weights are decimal strings. They are scaled to a common integer
//! denominator when a space is built, so every later computation is exact
//! integer arithmetic; values are rescaled back to input units for display.

use crate::error::{Error, Result};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};

/// Largest scaled magnitude accepted for a single distance. Leaves plenty of
/// i64 headroom for sums over schedules and matchings.
pub const MAX_SCALED: i64 = 1 << 40;

/// Most fractional digits a weight may carry.
pub const MAX_FRAC_DIGITS: u32 = 9;

/// A distance or work-function value in scaled integer units.
///
/// The scale lives in the owning [`crate::space::DistanceSpace`]'s [`Unit`];
/// values from different units must not be mixed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(i64);

impl Value {
    pub const ZERO: Value = Value(0);

    pub fn from_raw(raw: i64) -> Value {
        Value(raw)
    }

    pub fn raw(self) -> i64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        Value(self.0 + rhs.0)
    }
}

impl AddAssign for Value {
    fn add_assign(&mut self, rhs: Value) {
        self.0 += rhs.0;
    }
}

impl Sub for Value {
    type Output = Value;
    fn sub(self, rhs: Value) -> Value {
        Value(self.0 - rhs.0)
    }
}

impl Sum for Value {
    fn sum<I: Iterator<Item = Value>>(iter: I) -> Value {
        Value(iter.map(|v| v.0).sum())
    }
}

/// Decimal scale shared by every value of one distance space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unit {
    frac_digits: u32,
}

impl Unit {
    /// Plain integer weights, scale 1.
    pub fn integer() -> Unit {
        Unit { frac_digits: 0 }
    }

    pub fn new(frac_digits: u32) -> Result<Unit> {
        if frac_digits > MAX_FRAC_DIGITS {
            return Err(Error::InvalidInput(format!(
                "more than {MAX_FRAC_DIGITS} fractional digits ({frac_digits})"
            )));
        }
        Ok(Unit { frac_digits })
    }

    pub fn frac_digits(self) -> u32 {
        self.frac_digits
    }

    /// Scaled units per 1.0 of input.
    pub fn scale(self) -> i64 {
        10i64.pow(self.frac_digits)
    }

    /// A whole number of input units as a value.
    pub fn from_integer(self, n: i64) -> Value {
        Value(n * self.scale())
    }

    /// Render a value in input units. Integral values print without a
    /// fractional part; otherwise trailing zeros are trimmed.
    pub fn display(self, v: Value) -> String {
        let scale = self.scale();
        let sign = if v.0 < 0 { "-" } else { "" };
        let mag = v.0.unsigned_abs();
        let whole = mag / scale as u64;
        let frac = mag % scale as u64;
        if frac == 0 {
            return format!("{sign}{whole}");
        }
        let digits = format!("{:0width$}", frac, width = self.frac_digits as usize);
        format!("{sign}{whole}.{}", digits.trim_end_matches('0'))
    }
}

/// A decimal string parsed into mantissa and fractional digit count.
/// `"2.50"` parses to mantissa 250, 2 fractional digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decimal {
    mantissa: i64,
    frac_digits: u32,
}

impl Decimal {
    pub fn frac_digits(self) -> u32 {
        self.frac_digits
    }

    pub fn is_negative(self) -> bool {
        self.mantissa < 0
    }

    /// The value at `unit`'s scale. `unit` must carry at least as many
    /// fractional digits as the decimal itself.
    pub fn at_scale(self, unit: Unit) -> Result<Value> {
        let extra = unit
            .frac_digits
            .checked_sub(self.frac_digits)
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "unit has {} fractional digits, decimal needs {}",
                    unit.frac_digits, self.frac_digits
                ))
            })?;
        let scaled = self
            .mantissa
            .checked_mul(10i64.pow(extra))
            .filter(|s| s.unsigned_abs() <= MAX_SCALED as u64)
            .ok_or_else(|| Error::InvalidInput("weight out of range".into()))?;
        Ok(Value(scaled))
    }
}

/// Parse a decimal string like `"7"`, `"2.5"` or `"-0.25"`.
pub fn parse_decimal(s: &str) -> Result<Decimal> {
    let bad = |why: &str| Error::InvalidInput(format!("bad decimal {s:?}: {why}"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, frac) = match body.split_once('.') {
        Some((w, f)) => (w, f),
        None => (body, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return Err(bad("no digits"));
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad("expected only digits around an optional decimal point"));
    }
    if frac.len() as u32 > MAX_FRAC_DIGITS {
        return Err(bad("too many fractional digits"));
    }
    let mut mantissa: i64 = 0;
    for c in whole.chars().chain(frac.chars()) {
        mantissa = mantissa
            .checked_mul(10)
            .and_then(|m| m.checked_add((c as u8 - b'0') as i64))
            .filter(|m| *m <= MAX_SCALED)
            .ok_or_else(|| bad("magnitude too large"))?;
    }
    if neg {
        mantissa = -mantissa;
    }
    Ok(Decimal {
        mantissa,
        frac_digits: frac.len() as u32,
    })
}
