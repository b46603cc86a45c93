//! Closed-form constants from the bounds on abelian normal subgroups and
//! cohomology, evaluated exactly.
//!
//! Formulas with a `log` in the exponent use base 2 rounded up; when the
//! argument is not a power of two the result also carries the symbolic
//! `(base, exponent)` form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Results above this many bits are refused.
pub const MAX_BITS: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Formula {
    /// `(T!)^r`
    #[serde(rename = "factorial-power")]
    FactorialPower,
    /// `t^(4 log t)`
    #[serde(rename = "burnside-miller")]
    BurnsideMiller,
    /// `t^(2r)`
    #[serde(rename = "gillam")]
    Gillam,
    /// `binom(d + r, r)^2`
    #[serde(rename = "binomial-square")]
    BinomialSquare,
    /// `T^(16 r^2 log T)`
    #[serde(rename = "jordan")]
    Jordan,
}

impl Formula {
    pub const ALL: [Formula; 5] = [
        Formula::FactorialPower,
        Formula::BurnsideMiller,
        Formula::Gillam,
        Formula::BinomialSquare,
        Formula::Jordan,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Formula::FactorialPower => "factorial-power",
            Formula::BurnsideMiller => "burnside-miller",
            Formula::Gillam => "gillam",
            Formula::BinomialSquare => "binomial-square",
            Formula::Jordan => "jordan",
        }
    }

    pub fn expression(self) -> &'static str {
        match self {
            Formula::FactorialPower => "(T!)^r",
            Formula::BurnsideMiller => "t^(4 log2 t)",
            Formula::Gillam => "t^(2r)",
            Formula::BinomialSquare => "binom(d+r, r)^2",
            Formula::Jordan => "T^(16 r^2 log2 T)",
        }
    }

    pub fn required(self) -> &'static [&'static str] {
        match self {
            Formula::FactorialPower => &["T", "r"],
            Formula::BurnsideMiller => &["t"],
            Formula::Gillam => &["t", "r"],
            Formula::BinomialSquare => &["d", "r"],
            Formula::Jordan => &["T", "r"],
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Formula::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::Format(format!("unknown formula `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    pub big_t: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
}

/// `base^(coefficient * log2(log_of))` with the logarithm left unevaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Symbolic {
    pub base: u64,
    pub coefficient: u64,
    pub log_of: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    pub formula: Formula,
    pub inputs: BoundInputs,
    #[serde(serialize_with = "as_decimal")]
    pub value: BigUint,
    /// Present when `value` rounds a non-integral logarithm up.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<Symbolic>,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn field(value: Option<u64>, name: &'static str) -> Result<u64> {
    value.ok_or(Error::MissingField(name))
}

fn positive(value: Option<u64>, name: &'static str) -> Result<u64> {
    let v = field(value, name)?;
    if v == 0 {
        return Err(Error::InvalidField {
            field: name,
            reason: "must be at least 1".into(),
        });
    }
    Ok(v)
}

/// `ceil(log2 x)` for `x >= 1`, and whether it is exact.
pub fn ceil_log2(x: u64) -> (u64, bool) {
    let exact = x.is_power_of_two();
    let floor = 63 - x.leading_zeros() as u64;
    (if exact { floor } else { floor + 1 }, exact)
}

fn power(base: u64, exp: u64) -> Result<BigUint> {
    let bits = exp.saturating_mul(ceil_log2(base.max(1)).0.max(1));
    if base > 1 && bits > MAX_BITS {
        return Err(Error::guard("result size in bits", MAX_BITS, bits));
    }
    Ok(Pow::pow(BigUint::from(base), exp))
}

fn big_power(base: BigUint, exp: u64) -> Result<BigUint> {
    let bits = exp.saturating_mul(base.bits());
    if bits > MAX_BITS {
        return Err(Error::guard("result size in bits", MAX_BITS, bits));
    }
    Ok(Pow::pow(base, exp))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn evaluate(formula: Formula, inputs: &BoundInputs) -> Result<BoundValue> {
    let mut symbolic = None;
    let value = match formula {
        Formula::FactorialPower => {
            let t = field(inputs.big_t, "T")?;
            let r = field(inputs.r, "r")?;
            if t > 100_000 {
                return Err(Error::guard("T for factorial", 100_000, t));
            }
            let fact = (1..=t).fold(BigUint::one(), |acc, i| acc * i);
            big_power(fact, r)?
        }
        Formula::BurnsideMiller => {
            let t = positive(inputs.t, "t")?;
            let (l, exact) = ceil_log2(t);
            if !exact {
                symbolic = Some(Symbolic {
                    base: t,
                    coefficient: 4,
                    log_of: t,
                });
            }
            power(t, 4 * l)?
        }
        Formula::Gillam => {
            let t = field(inputs.t, "t")?;
            let r = field(inputs.r, "r")?;
            power(t, 2 * r)?
        }
        Formula::BinomialSquare => {
            let d = field(inputs.d, "d")?;
            let r = field(inputs.r, "r")?;
            let b = binomial(d + r, r);
            &b * &b
        }
        Formula::Jordan => {
            let t = positive(inputs.big_t, "T")?;
            let r = field(inputs.r, "r")?;
            let (l, exact) = ceil_log2(t);
            let coefficient = 16u64.saturating_mul(r.saturating_mul(r));
            if !exact {
                symbolic = Some(Symbolic {
                    base: t,
                    coefficient,
                    log_of: t,
                });
            }
            power(t, coefficient.saturating_mul(l))?
        }
    };
    Ok(BoundValue {
        formula,
        inputs: *inputs,
        value,
        symbolic,
    })
}
