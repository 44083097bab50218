//! Budget functions `F: N -> (0,1]` bounding exceptional sets.

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, inv_pow2, int, parse_rational, Rational};
use num_traits::{One, Signed};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BudgetFn {
    /// `F(m) = c`
    Constant(Rational),
    /// `F(m) = c / m`
    Reciprocal(Rational),
    /// `F(m) = c * 2^{-m}`
    Exponential(Rational),
}

impl BudgetFn {
    pub fn constant(c: Rational) -> Result<Self> {
        check_c(&c)?;
        Ok(Self::Constant(c))
    }

    pub fn reciprocal(c: Rational) -> Result<Self> {
        check_c(&c)?;
        Ok(Self::Reciprocal(c))
    }

    pub fn exponential(c: Rational) -> Result<Self> {
        check_c(&c)?;
        Ok(Self::Exponential(c))
    }

    pub fn coefficient(&self) -> &Rational {
        match self {
            Self::Constant(c) | Self::Reciprocal(c) | Self::Exponential(c) => c,
        }
    }

    /// Evaluates at a positive integer `m` (zero is treated as 1).
    pub fn eval(&self, m: usize) -> Rational {
        let m = m.max(1);
        match self {
            Self::Constant(c) => c.clone(),
            Self::Reciprocal(c) => c / int(m as i64),
            Self::Exponential(c) => c * inv_pow2(m as u32),
        }
    }

    /// Pointwise `self <= other` over `1..=horizon`.
    pub fn dominated_by(&self, other: &BudgetFn, horizon: usize) -> bool {
        (1..=horizon).all(|m| self.eval(m) <= other.eval(m))
    }
}

fn check_c(c: &Rational) -> Result<()> {
    if !c.is_positive() || c > &Rational::one() {
        return Err(Error::Parameter(format!("budget coefficient {c} not in (0,1]")));
    }
    Ok(())
}

impl FromStr for BudgetFn {
    type Err = Error;

    /// Accepts `const:c`, `recip:c` or `exp:c`; a bare rational means `const`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, c) = match s.split_once(':') {
            Some((k, c)) => (k.trim(), c),
            None => ("const", s),
        };
        let c = parse_rational(c)?;
        match kind {
            "const" | "constant" => Self::constant(c),
            "recip" | "reciprocal" => Self::reciprocal(c),
            "exp" | "exponential" => Self::exponential(c),
            other => Err(Error::Parse(format!("unknown budget kind {other:?}"))),
        }
    }
}

impl fmt::Display for BudgetFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, c) = match self {
            Self::Constant(c) => ("const", c),
            Self::Reciprocal(c) => ("recip", c),
            Self::Exponential(c) => ("exp", c),
        };
        write!(f, "{k}:{}", fmt_rational(c))
    }
}
