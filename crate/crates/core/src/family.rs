//! Parameter envelope shared by the closed-form evaluators and the oracles.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::bigmath::{check_base, Natural, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Floor,
    Ceil,
    Frac,
    Sawtooth,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Floor, Family::Ceil, Family::Frac, Family::Sawtooth];

    pub fn name(self) -> &'static str {
        match self {
            Family::Floor => "floor",
            Family::Ceil => "ceil",
            Family::Frac => "frac",
            Family::Sawtooth => "sawtooth",
        }
    }

    /// Smallest admissible `j` for a single sum of this family.
    pub fn min_j(self) -> u32 {
        match self {
            Family::Floor => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Sum over `k` for one fixed `j`.
    Single(Natural),
    /// Sum over `k` and every `0 < j < b`.
    Double,
}

/// The summation argument: `n` for every family, or a rational `x >= 1`
/// for the ceiling family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Argument {
    Natural(Natural),
    Rational(Rational),
}

impl Argument {
    pub fn as_rational(&self) -> Rational {
        match self {
            Argument::Natural(n) => Rational::from(n),
            Argument::Rational(x) => x.clone(),
        }
    }

    /// Integer-valued rationals collapse to naturals.
    fn normalized(self) -> Self {
        match self {
            Argument::Rational(x) => match x.to_natural() {
                Some(n) => Argument::Natural(n),
                None => Argument::Rational(x),
            },
            natural => natural,
        }
    }
}

impl fmt::Display for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Argument::Natural(n) => write!(f, "{n}"),
            Argument::Rational(x) => write!(f, "{x}"),
        }
    }
}

/// One sum to evaluate: family, scope, argument and base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumSpec {
    family: Family,
    scope: Scope,
    argument: Argument,
    base: Natural,
}

pub(crate) fn check_j(j: &Natural, base: &Natural, family: Family) -> Result<()> {
    let low_ok = family.min_j() == 0 || !j.is_zero();
    if low_ok && j < base {
        Ok(())
    } else {
        Err(Error::JOutOfRange {
            j: j.to_string(),
            base: base.to_string(),
            expected: if family.min_j() == 0 { "0 <= j < b" } else { "0 < j < b" },
        })
    }
}

impl SumSpec {
    pub fn new(family: Family, scope: Scope, argument: Argument, base: Natural) -> Result<Self> {
        check_base(&base)?;
        if let Scope::Single(j) = &scope {
            check_j(j, &base, family)?;
        }
        let argument = argument.normalized();
        if let Argument::Rational(x) = &argument {
            if family != Family::Ceil {
                return Err(Error::Parse {
                    input: x.to_string(),
                    reason: "only the ceil family accepts non-integer arguments",
                });
            }
            if x.is_negative() {
                return Err(Error::BelowOne(x.to_string()));
            }
        }
        Ok(SumSpec {
            family,
            scope,
            argument,
            base,
        })
    }

    pub fn single(family: Family, n: impl Into<Natural>, base: impl Into<Natural>, j: impl Into<Natural>) -> Result<Self> {
        SumSpec::new(family, Scope::Single(j.into()), Argument::Natural(n.into()), base.into())
    }

    pub fn double(family: Family, n: impl Into<Natural>, base: impl Into<Natural>) -> Result<Self> {
        SumSpec::new(family, Scope::Double, Argument::Natural(n.into()), base.into())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    pub fn argument(&self) -> &Argument {
        &self.argument
    }

    pub fn base(&self) -> &Natural {
        &self.base
    }

    pub fn j(&self) -> Option<&Natural> {
        match &self.scope {
            Scope::Single(j) => Some(j),
            Scope::Double => None,
        }
    }

    /// The argument as a natural, if it is one.
    pub fn n(&self) -> Option<&Natural> {
        match &self.argument {
            Argument::Natural(n) => Some(n),
            Argument::Rational(_) => None,
        }
    }

    /// Short label such as `frac` or `ceil-double`.
    pub fn label(&self) -> String {
        match self.scope {
            Scope::Single(_) => self.family.name().to_string(),
            Scope::Double => format!("{}-double", self.family.name()),
        }
    }
}

impl fmt::Display for SumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = if self.family == Family::Ceil { "x" } else { "n" };
        write!(f, "{} {}={} b={}", self.label(), arg, self.argument, self.base)?;
        if let Some(j) = self.j() {
            write!(f, " j={j}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_j_range() {
        assert!(SumSpec::single(Family::Floor, 5u32, 3u32, 0u32).is_ok());
        assert!(SumSpec::single(Family::Floor, 5u32, 3u32, 3u32).is_err());
        assert!(SumSpec::single(Family::Frac, 5u32, 3u32, 0u32).is_err());
        assert!(SumSpec::single(Family::Sawtooth, 5u32, 3u32, 2u32).is_ok());
        assert!(SumSpec::double(Family::Ceil, 5u32, 1u32).is_err());
    }

    #[test]
    fn only_ceil_accepts_fractions() {
        let x: Rational = "15/2".parse().unwrap();
        let two = Natural::from(2u32);
        assert!(SumSpec::new(Family::Ceil, Scope::Double, Argument::Rational(x.clone()), two.clone()).is_ok());
        assert!(SumSpec::new(Family::Floor, Scope::Double, Argument::Rational(x), two.clone()).is_err());
        let whole = SumSpec::new(Family::Frac, Scope::Double, Argument::Rational(Rational::from(6u64)), two).unwrap();
        assert_eq!(whole.n(), Some(&Natural::from(6u32)));
    }

    #[test]
    fn labels() {
        let spec = SumSpec::double(Family::Sawtooth, 8u32, 2u32).unwrap();
        assert_eq!(spec.label(), "sawtooth-double");
        assert_eq!(spec.to_string(), "sawtooth-double n=8 b=2");
        assert_eq!("ceil".parse::<Family>().unwrap(), Family::Ceil);
    }
}
