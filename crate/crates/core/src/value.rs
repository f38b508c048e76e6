//! Numeric values carried through reports: exact rationals, floats, and
//! certified intervals.

use std::fmt;

use num_rational::Ratio;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Quantity {
    Exact(Rational),
    Float(f64),
    /// A value known only to lie in `[lo, hi]`.
    Interval {
        lo: f64,
        hi: f64,
    },
}

impl Quantity {
    pub fn int(v: i64) -> Self {
        Quantity::Exact(Rational::from_integer(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Quantity::Exact(Rational::new(num, den))
    }

    pub fn lo(&self) -> f64 {
        match *self {
            Quantity::Exact(r) => rational_to_f64(r),
            Quantity::Float(x) => x,
            Quantity::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> f64 {
        match *self {
            Quantity::Exact(r) => rational_to_f64(r),
            Quantity::Float(x) => x,
            Quantity::Interval { hi, .. } => hi,
        }
    }

    /// Midpoint for intervals.
    pub fn approx(&self) -> f64 {
        match *self {
            Quantity::Interval { lo, hi } => 0.5 * (lo + hi),
            _ => self.lo(),
        }
    }

    pub fn as_exact(&self) -> Option<Rational> {
        match *self {
            Quantity::Exact(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Quantity::Exact(_))
    }

    /// Multiplies by an exact scalar, keeping exactness when possible.
    pub fn scale(&self, k: Rational) -> Quantity {
        match *self {
            Quantity::Exact(r) => match checked_mul(r, k) {
                Some(p) => Quantity::Exact(p),
                None => Quantity::Float(rational_to_f64(r) * rational_to_f64(k)),
            },
            Quantity::Float(x) => Quantity::Float(x * rational_to_f64(k)),
            Quantity::Interval { lo, hi } => {
                let kf = rational_to_f64(k);
                let (a, b) = (lo * kf, hi * kf);
                Quantity::Interval {
                    lo: a.min(b),
                    hi: a.max(b),
                }
            }
        }
    }

    /// `self − other` with interval semantics.
    pub fn sub(&self, other: &Quantity) -> Quantity {
        if let (Quantity::Exact(a), Quantity::Exact(b)) = (self, other) {
            if let Some(d) = checked_sub(*a, *b) {
                return Quantity::Exact(d);
            }
        }
        match (self, other) {
            (Quantity::Interval { .. }, _) | (_, Quantity::Interval { .. }) => Quantity::Interval {
                lo: self.lo() - other.hi(),
                hi: self.hi() - other.lo(),
            },
            _ => Quantity::Float(self.lo() - other.lo()),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Quantity::Exact(r) => f.write_str(&format_rational(r)),
            Quantity::Float(x) => f.write_str(&format_float(x)),
            Quantity::Interval { lo, hi } => {
                write!(f, "[{}, {}]", format_float(lo), format_float(hi))
            }
        }
    }
}

/// Exact values serialize as "p/q" strings, floats as 12-significant-digit
/// numbers, intervals as `{"lo": .., "hi": ..}`.
impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Quantity::Exact(r) => s.serialize_str(&format_rational(r)),
            Quantity::Float(x) => serialize_float(x, s),
            Quantity::Interval { lo, hi } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("lo", &round_sig(lo))?;
                m.serialize_entry("hi", &round_sig(hi))?;
                m.end()
            }
        }
    }
}

pub fn serialize_float<S: Serializer>(x: f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(round_sig(x))
    } else {
        s.serialize_str(&format_float(x))
    }
}

pub fn rational_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn checked_mul(a: Rational, b: Rational) -> Option<Rational> {
    let n = (*a.numer() as i128) * (*b.numer() as i128);
    let d = (*a.denom() as i128) * (*b.denom() as i128);
    reduce_i128(n, d)
}

pub fn checked_sub(a: Rational, b: Rational) -> Option<Rational> {
    let n = (*a.numer() as i128) * (*b.denom() as i128) - (*b.numer() as i128) * (*a.denom() as i128);
    let d = (*a.denom() as i128) * (*b.denom() as i128);
    reduce_i128(n, d)
}

pub fn checked_add(a: Rational, b: Rational) -> Option<Rational> {
    checked_sub(a, -b)
}

pub fn checked_div(a: Rational, b: Rational) -> Option<Rational> {
    if *b.numer() == 0 {
        return None;
    }
    let n = (*a.numer() as i128) * (*b.denom() as i128);
    let d = (*a.denom() as i128) * (*b.numer() as i128);
    reduce_i128(n, d)
}

fn reduce_i128(n: i128, d: i128) -> Option<Rational> {
    fn gcd(mut a: i128, mut b: i128) -> i128 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    }
    if d == 0 {
        return None;
    }
    let g = gcd(n, d).max(1);
    let (mut n, mut d) = (n / g, d / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    Some(Rational::new_raw(i64::try_from(n).ok()?, i64::try_from(d).ok()?))
}

/// Lowest terms; an integer when the denominator is 1.
pub fn format_rational(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rational::new(n, d))
        }
        None => s.parse::<i64>().ok().map(Rational::from_integer),
    }
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.11e}", x).parse().unwrap_or(x)
}

/// 12 significant digits, shortest representation of the rounded value.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x);
    if r == 0.0 {
        return "0".into();
    }
    let s = format!("{r}");
    if s.len() > 20 {
        format!("{r:e}")
    } else {
        s
    }
}
