//! Base-b digit expansions and the digit statistics consumed by the closed
//! forms: digit sum `s_b(n)`, leading position `m`, valuation `ν_b(n)`, the
//! digit partition `λ` and its conjugate `λ′`.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};

use crate::bigmath::{check_base, Natural};
use crate::error::{Error, Result};

/// Little-endian base-`b` digits of a natural. Index `s` holds `c_s`.
///
/// The most significant stored digit is never zero, so `0` expands to the
/// empty sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitExpansion {
    base: Natural,
    digits: Vec<Natural>,
}

impl DigitExpansion {
    /// Builds an expansion from explicit little-endian digits, checking the
    /// digit range and stripping high zeros.
    pub fn from_digits(base: Natural, mut digits: Vec<Natural>) -> Result<Self> {
        check_base(&base)?;
        if let Some(bad) = digits.iter().find(|d| **d >= base) {
            return Err(Error::DigitOutOfRange {
                digit: bad.to_string(),
                base: base.to_string(),
            });
        }
        while digits.last().is_some_and(Zero::is_zero) {
            digits.pop();
        }
        Ok(DigitExpansion { base, digits })
    }

    pub fn base(&self) -> &Natural {
        &self.base
    }

    pub fn digits(&self) -> &[Natural] {
        &self.digits
    }

    /// Digit `c_s`; positions past the leading digit read as zero.
    pub fn digit(&self, s: u64) -> Natural {
        usize::try_from(s)
            .ok()
            .and_then(|s| self.digits.get(s))
            .cloned()
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Reconstructs `Σ c_s b^s` by Horner's rule.
    pub fn value(&self) -> Natural {
        self.digits
            .iter()
            .rev()
            .fold(Natural::zero(), |acc, d| acc * &self.base + d)
    }

    /// `s_b(n)`.
    pub fn digit_sum(&self) -> Natural {
        self.digits.iter().sum()
    }

    /// `m = ⌊log_b n⌋`; undefined for `n = 0`.
    pub fn leading_pos(&self) -> Result<u64> {
        match self.digits.len() {
            0 => Err(Error::ZeroArgument("leading digit position")),
            len => Ok(len as u64 - 1),
        }
    }

    /// `ν_b(n)`, the index of the lowest nonzero digit; undefined for `n = 0`.
    pub fn valuation(&self) -> Result<u64> {
        self.digits
            .iter()
            .position(|d| !d.is_zero())
            .map(|s| s as u64)
            .ok_or(Error::ZeroArgument("valuation"))
    }

    /// `c_{ν_b(n)}`, the lowest nonzero digit.
    pub fn lowest_nonzero_digit(&self) -> Result<&Natural> {
        self.digits
            .iter()
            .find(|d| !d.is_zero())
            .ok_or(Error::ZeroArgument("valuation"))
    }

    pub fn partition(&self) -> Partition {
        let mut parts = self.digits.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn conjugate(&self) -> ConjugateProfile {
        ConjugateProfile {
            base: self.base.clone(),
            partition: self.partition(),
        }
    }
}

/// Renders most-significant digit first with a base subscript, e.g.
/// `(1101221)_3`. Digits of bases above 10 are separated by dots.
impl fmt::Display for DigitExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.base > Natural::from(10u32);
        let body: Vec<String> = self.digits.iter().rev().map(|d| d.to_string()).collect();
        let sep = if wide { "." } else { "" };
        write!(f, "({})_{}", body.join(sep), self.base)
    }
}

/// A weakly decreasing sequence of naturals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Partition {
    parts: Vec<Natural>,
}

impl Partition {
    pub fn new(mut parts: Vec<Natural>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[Natural] {
        &self.parts
    }

    pub fn size(&self) -> Natural {
        self.parts.iter().sum()
    }

    /// Number of parts that are at least `t`.
    pub fn count_at_least(&self, t: &Natural) -> usize {
        self.parts.partition_point(|p| p >= t)
    }

    /// The transpose partition, without trailing zeros.
    ///
    /// Fails when the largest part is too big to lay out as a vector.
    pub fn transpose(&self) -> Result<Partition> {
        let width = match self.parts.first() {
            None => 0,
            Some(first) => first.to_usize().ok_or(Error::TooLarge("partition transpose"))?,
        };
        let mut columns = vec![0usize; width];
        for part in &self.parts {
            // every part is <= width
            let len = part.to_usize().expect("bounded by the first part");
            for column in &mut columns[..len] {
                *column += 1;
            }
        }
        Ok(Partition {
            parts: columns.into_iter().map(Natural::from).collect(),
        })
    }
}

/// `λ′` for a digit expansion: `get(t)` is the number of digits `>= t`.
///
/// Backed by the sorted digit partition so that any index, including `t = b`
/// (always 0), can be answered without laying out `b - 1` counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateProfile {
    base: Natural,
    partition: Partition,
}

impl ConjugateProfile {
    pub fn base(&self) -> &Natural {
        &self.base
    }

    /// `λ′_t`. Index 0 is not meaningful and returns the digit count.
    pub fn get(&self, t: &Natural) -> usize {
        if t.is_zero() {
            return self.partition.parts.len();
        }
        self.partition.count_at_least(t)
    }

    /// The full vector `(λ′_1, …, λ′_{b-1})`.
    pub fn counts(&self) -> Result<Vec<usize>> {
        let len = (&self.base - 1u32)
            .to_usize()
            .filter(|&len| len <= 1 << 24)
            .ok_or(Error::TooLarge("conjugate profile"))?;
        let parts = self.partition.transpose()?;
        let mut counts: Vec<usize> = parts
            .parts
            .iter()
            .map(|p| p.to_usize().expect("count of digits"))
            .collect();
        counts.resize(len, 0);
        Ok(counts)
    }

    pub fn total(&self) -> Natural {
        self.partition.size()
    }
}

/// Little-endian base-`b` digits of `n`; empty for `n = 0`.
pub fn expand(n: &Natural, base: &Natural) -> Result<DigitExpansion> {
    check_base(base)?;
    let digits = match base.to_u32().filter(|&b| b <= 256) {
        Some(small) if !n.is_zero() => n
            .to_radix_le(small)
            .into_iter()
            .map(Natural::from)
            .collect(),
        _ => {
            let mut digits = Vec::new();
            let mut rest = n.clone();
            while !rest.is_zero() {
                let (q, r) = rest.div_rem(base);
                digits.push(r);
                rest = q;
            }
            digits
        }
    };
    Ok(DigitExpansion {
        base: base.clone(),
        digits,
    })
}

pub fn digit_sum(n: &Natural, base: &Natural) -> Result<Natural> {
    Ok(expand(n, base)?.digit_sum())
}

pub fn leading_pos(n: &Natural, base: &Natural) -> Result<u64> {
    expand(n, base)?.leading_pos()
}

pub fn valuation(n: &Natural, base: &Natural) -> Result<u64> {
    expand(n, base)?.valuation()
}

pub fn partition_of_digits(e: &DigitExpansion) -> Partition {
    e.partition()
}

pub fn conjugate(e: &DigitExpansion) -> ConjugateProfile {
    e.conjugate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn nats(vs: &[u64]) -> Vec<Natural> {
        vs.iter().copied().map(nat).collect()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand(&nat(1024), &nat(3)).unwrap().digits(), nats(&[1, 2, 2, 1, 0, 1, 1]));
        assert!(expand(&nat(0), &nat(7)).unwrap().digits().is_empty());
        assert_eq!(expand(&nat(5), &nat(2)).unwrap().digits(), nats(&[1, 0, 1]));
    }

    #[test]
    fn expand_large_base_uses_division_path() {
        let base = nat(1000);
        let e = expand(&nat(12_345_678), &base).unwrap();
        assert_eq!(e.digits(), nats(&[678, 345, 12]));
        assert_eq!(e.to_string(), "(12.345.678)_1000");
        assert_eq!(e.value(), nat(12_345_678));
    }

    #[test]
    fn rejects_small_base() {
        assert!(matches!(expand(&nat(5), &nat(1)), Err(Error::BaseTooSmall(_))));
        assert!(matches!(digit_sum(&nat(5), &nat(0)), Err(Error::BaseTooSmall(_))));
    }

    #[test]
    fn digit_sum_examples() {
        assert_eq!(digit_sum(&nat(1024), &nat(3)).unwrap(), nat(8));
        assert_eq!(digit_sum(&nat(0), &nat(5)).unwrap(), nat(0));
        assert_eq!(digit_sum(&nat(10), &nat(2)).unwrap(), nat(2));
    }

    #[test]
    fn leading_pos_examples() {
        assert_eq!(leading_pos(&nat(1024), &nat(3)).unwrap(), 6);
        assert_eq!(leading_pos(&nat(1), &nat(9)).unwrap(), 0);
        assert_eq!(leading_pos(&nat(8), &nat(2)).unwrap(), 3);
        assert!(matches!(leading_pos(&nat(0), &nat(2)), Err(Error::ZeroArgument(_))));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&nat(8), &nat(2)).unwrap(), 3);
        assert_eq!(valuation(&nat(1024), &nat(3)).unwrap(), 0);
        assert_eq!(valuation(&nat(1000), &nat(10)).unwrap(), 3);
        assert!(matches!(valuation(&nat(0), &nat(10)), Err(Error::ZeroArgument(_))));
    }

    #[test]
    fn partition_examples() {
        let e = expand(&nat(1024), &nat(3)).unwrap();
        assert_eq!(partition_of_digits(&e).parts(), nats(&[2, 2, 1, 1, 1, 1, 0]));
        let empty = expand(&nat(0), &nat(3)).unwrap();
        assert!(partition_of_digits(&empty).parts().is_empty());
        let e = expand(&nat(5), &nat(2)).unwrap();
        assert_eq!(partition_of_digits(&e).parts(), nats(&[1, 1, 0]));
    }

    #[test]
    fn conjugate_examples() {
        let c = conjugate(&expand(&nat(1024), &nat(3)).unwrap());
        assert_eq!(c.counts().unwrap(), vec![6, 2]);
        assert_eq!(c.get(&nat(3)), 0);
        let c = conjugate(&expand(&nat(0), &nat(6)).unwrap());
        assert_eq!(c.counts().unwrap(), vec![0; 5]);
        let c = conjugate(&expand(&nat(5), &nat(2)).unwrap());
        assert_eq!(c.counts().unwrap(), vec![2]);
    }

    #[test]
    fn conjugate_of_huge_base_answers_queries() {
        let base = Natural::from(1u32) << 100;
        let n = (Natural::from(1u32) << 99) + 7u32;
        let c = expand(&n, &base).unwrap().conjugate();
        assert_eq!(c.get(&nat(1)), 1);
        assert_eq!(c.get(&(Natural::from(1u32) << 99)), 1);
        assert_eq!(c.get(&((Natural::from(1u32) << 99) + 8u32)), 0);
        assert_eq!(c.counts(), Err(Error::TooLarge("conjugate profile")));
    }

    #[test]
    fn from_digits_validates() {
        let e = DigitExpansion::from_digits(nat(10), nats(&[3, 9, 0, 0])).unwrap();
        assert_eq!(e.digits(), nats(&[3, 9]));
        assert_eq!(e.value(), nat(93));
        assert!(matches!(
            DigitExpansion::from_digits(nat(10), nats(&[10])),
            Err(Error::DigitOutOfRange { .. })
        ));
    }

    #[test]
    fn transpose_is_an_involution_on_small_partitions() {
        let p = Partition::new(nats(&[5, 3, 3, 1, 0]));
        let t = p.transpose().unwrap();
        assert_eq!(t.parts(), nats(&[4, 3, 3, 1, 1]));
        assert_eq!(t.transpose().unwrap().parts(), nats(&[5, 3, 3, 1]));
    }
}
