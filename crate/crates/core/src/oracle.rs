//! Brute-force evaluation of every sum and auxiliary fact, term by term in
//! exact arithmetic. Nothing here depends on the closed forms, so a
//! disagreement between the two is a real finding.
//!
//! Each term `(a + j b^k) / b^(k+1)` is kept as an unreduced integer
//! fraction; sums of fractional parts are accumulated over the common
//! denominator `b^(m+1)` and reduced once at the end.

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::bigmath::{check_base, ilog, pow, Integer, Natural, Rational};
use crate::error::{Error, Result};
use crate::family::{check_j, Family, Scope, SumSpec};
use crate::radix::leading_pos;

fn quotient(numerator: Natural, denominator: Natural) -> Rational {
    Rational::ratio(Integer::from(numerator), Integer::from(denominator))
}

/// The terms `⌊(n + j b^(k-1)) / b^k⌋` for `k = 1, 2, …` while
/// `b^(k-1) <= n`. Every later term is zero since then `n/b^k < 1/b`.
pub fn floor_terms_direct(n: &Natural, b: &Natural, j: &Natural) -> Result<Vec<Natural>> {
    check_base(b)?;
    check_j(j, b, Family::Floor)?;
    let term = |lower: &Natural| (n + j * lower) / (lower * b);
    let mut terms = Vec::new();
    let mut lower = Natural::one();
    while lower <= *n {
        terms.push(term(&lower));
        lower *= b;
    }
    if cfg!(debug_assertions) {
        for _ in 0..2 {
            debug_assert!(term(&lower).is_zero(), "floor term past the stopping point");
            lower *= b;
        }
    }
    Ok(terms)
}

pub fn floor_sum_direct(n: &Natural, b: &Natural, j: &Natural) -> Result<Natural> {
    Ok(floor_terms_direct(n, b, j)?.into_iter().sum())
}

pub fn floor_double_sum_direct(n: &Natural, b: &Natural) -> Result<Natural> {
    check_base(b)?;
    each_j(b).map(|j| floor_sum_direct(n, b, &j)).sum()
}

/// `j = 1, 2, …, b - 1`.
fn each_j(b: &Natural) -> impl Iterator<Item = Natural> + '_ {
    std::iter::successors(Some(Natural::one()), |j| Some(j + 1u32)).take_while(move |j| j < b)
}

/// The terms `⌈(x + j b^k) / b^(k+1)⌉` for `k = 0..=⌊log_b x⌋`.
pub fn ceil_terms_direct(x: &Rational, b: &Natural, j: &Natural) -> Result<Vec<Integer>> {
    check_base(b)?;
    check_j(j, b, Family::Ceil)?;
    let last = ilog(b, x)?;
    // x = p/q, so the k-th term is ⌈(p + j b^k q) / (b^(k+1) q)⌉.
    let (p, q) = (x.numer(), x.denom());
    let (b, j) = (Integer::from(b.clone()), Integer::from(j.clone()));
    let mut terms = Vec::with_capacity(last as usize + 1);
    let mut lower = q.clone();
    for _ in 0..=last {
        let upper = &lower * &b;
        terms.push((p + &j * &lower).div_ceil(&upper));
        lower = upper;
    }
    Ok(terms)
}

pub fn ceil_sum_direct(x: &Rational, b: &Natural, j: &Natural) -> Result<Natural> {
    let total: Integer = ceil_terms_direct(x, b, j)?.into_iter().sum();
    Ok(total.to_biguint().expect("ceiling terms are positive"))
}

pub fn ceil_double_sum_direct(x: &Rational, b: &Natural) -> Result<Natural> {
    check_base(b)?;
    each_j(b).map(|j| ceil_sum_direct(x, b, &j)).sum()
}

/// `(n + j b^k) / b^(k+1)` for one `k`, unreduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedTerm {
    pub k: u64,
    pub numerator: Natural,
    pub denominator: Natural,
}

impl ShiftedTerm {
    pub fn value(&self) -> Rational {
        quotient(self.numerator.clone(), self.denominator.clone())
    }

    pub fn is_integer(&self) -> bool {
        (&self.numerator % &self.denominator).is_zero()
    }
}

/// The fractions `(n + j b^k) / b^(k+1)` for `k = 0..=⌊log_b n⌋`.
pub fn shifted_terms(n: &Natural, b: &Natural, j: &Natural) -> Result<Vec<ShiftedTerm>> {
    check_base(b)?;
    check_j(j, b, Family::Frac)?;
    if n.is_zero() {
        return Err(Error::ZeroArgument("direct fractional-part sum"));
    }
    let m = leading_pos(n, b)?;
    let mut lower = Natural::one();
    let mut out = Vec::with_capacity(m as usize + 1);
    for k in 0..=m {
        let upper = &lower * b;
        out.push(ShiftedTerm {
            k,
            numerator: n + j * &lower,
            denominator: upper.clone(),
        });
        lower = upper;
    }
    Ok(out)
}

/// `Σ {t}` over the shifted terms, or `Σ ((t))` when `sawtooth` is set.
///
/// With `r = a mod d`, `{a/d} = r/d` and `((a/d)) = (2r - d)/(2d)` for
/// `r != 0`. Every `d = b^(k+1)` divides `b^(m+1)`, so each term is scaled
/// to the denominator `2 b^(m+1)`.
fn fractional_total(terms: &[ShiftedTerm], sawtooth: bool) -> Rational {
    let Some(last) = terms.last() else {
        return Rational::zero();
    };
    let common: Integer = Integer::from(last.denominator.clone()) * 2u32;
    let mut total = Integer::zero();
    for t in terms {
        let d = Integer::from(t.denominator.clone());
        let r = Integer::from(&t.numerator % &t.denominator);
        let scale = &common / &d;
        total += if !sawtooth {
            r * scale
        } else if r.is_zero() {
            Integer::zero()
        } else {
            (r * 2u32 - d) * scale / 2u32
        };
    }
    Rational::ratio(total, common)
}

pub fn frac_sum_direct(n: &Natural, b: &Natural, j: &Natural) -> Result<Rational> {
    Ok(fractional_total(&shifted_terms(n, b, j)?, false))
}

pub fn sawtooth_sum_direct(n: &Natural, b: &Natural, j: &Natural) -> Result<Rational> {
    Ok(fractional_total(&shifted_terms(n, b, j)?, true))
}

pub fn frac_double_sum_direct(n: &Natural, b: &Natural) -> Result<Rational> {
    check_base(b)?;
    each_j(b).map(|j| frac_sum_direct(n, b, &j)).sum()
}

pub fn sawtooth_double_sum_direct(n: &Natural, b: &Natural) -> Result<Rational> {
    check_base(b)?;
    each_j(b).map(|j| sawtooth_sum_direct(n, b, &j)).sum()
}

/// Brute-force value of a [`SumSpec`].
pub fn evaluate_direct(spec: &SumSpec) -> Result<Rational> {
    let b = spec.base();
    let natural = || spec.n().expect("non-ceil families carry a natural");
    let value = match (spec.family(), spec.scope()) {
        (Family::Floor, Scope::Single(j)) => Rational::from(floor_sum_direct(natural(), b, j)?),
        (Family::Floor, Scope::Double) => Rational::from(floor_double_sum_direct(natural(), b)?),
        (Family::Ceil, Scope::Single(j)) => Rational::from(ceil_sum_direct(&spec.argument().as_rational(), b, j)?),
        (Family::Ceil, Scope::Double) => Rational::from(ceil_double_sum_direct(&spec.argument().as_rational(), b)?),
        (Family::Frac, Scope::Single(j)) => frac_sum_direct(natural(), b, j)?,
        (Family::Frac, Scope::Double) => frac_double_sum_direct(natural(), b)?,
        (Family::Sawtooth, Scope::Single(j)) => sawtooth_sum_direct(natural(), b, j)?,
        (Family::Sawtooth, Scope::Double) => sawtooth_double_sum_direct(natural(), b)?,
    };
    Ok(value)
}

/// `⌊(c_k + j)/b + c_{k-1}/b² + ⋯ + c_0/b^(k+1)⌋` for the little-endian
/// digit prefix `c_0..=c_k`, summed term by term.
///
/// The result is always `[c_k + j >= b]`.
pub fn tail_floor(prefix: &[Natural], j: &Natural, b: &Natural) -> Result<Natural> {
    check_base(b)?;
    check_j(j, b, Family::Floor)?;
    if let Some(bad) = prefix.iter().find(|c| *c >= b) {
        return Err(Error::DigitOutOfRange {
            digit: bad.to_string(),
            base: b.to_string(),
        });
    }
    let (top, rest) = prefix
        .split_last()
        .ok_or(Error::ZeroArgument("digit prefix"))?;
    let k = rest.len() as u64;
    let mut total = quotient(top + j, b.clone());
    for (s, c) in rest.iter().enumerate() {
        total = total + quotient(c.clone(), pow(b, k + 1 - s as u64));
    }
    let value = total.floor().to_biguint().expect("nonnegative");
    debug_assert_eq!(value, Natural::from(u32::from(top + j >= *b)));
    Ok(value)
}

/// Checks `⌊x⌋ + ⌊x + 1/m⌋ + ⋯ + ⌊x + (m-1)/m⌋ = ⌊mx⌋`.
pub fn hermite_check(x: &Rational, m: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::BelowOne(m.to_string()));
    }
    // floor(p/q + i/m) = floor((p m + i q) / (q m))
    let (p, q) = (x.numer(), x.denom());
    let scaled = p * m;
    let den = q * m;
    let lhs: Integer = (0..m)
        .map(|i| (&scaled + q * i).div_floor(&den))
        .sum();
    let rhs = (Rational::from(m) * x).floor();
    Ok(lhs == rhs)
}

/// Every `k` in `0..=⌊log_b n⌋` for which `(n + j b^k) / b^(k+1)` is an integer.
pub fn integer_term_indices(n: &Natural, b: &Natural, j: &Natural) -> Result<Vec<u64>> {
    Ok(shifted_terms(n, b, j)?
        .iter()
        .filter(|t| t.is_integer())
        .map(|t| t.k)
        .collect())
}

/// The unique `k` at which `(n + j b^k) / b^(k+1)` is an integer, if any.
/// Fails if the scan finds more than one.
pub fn integer_term_locator(n: &Natural, b: &Natural, j: &Natural) -> Result<Option<u64>> {
    let found = integer_term_indices(n, b, j)?;
    match found.as_slice() {
        [] => Ok(None),
        [k] => Ok(Some(*k)),
        _ => Err(Error::MultipleIntegerTerms(found)),
    }
}

/// `Σ_{i=1..n}` of the multiplicity of `p` in `i`, by trial division.
pub fn factorial_valuation_direct(n: &Natural, p: &Natural) -> Result<Natural> {
    check_base(p)?;
    let mut total = Natural::zero();
    let mut i = Natural::one();
    while i <= *n {
        let mut rest = i.clone();
        loop {
            let (q, r) = rest.div_rem(p);
            if !r.is_zero() {
                break;
            }
            total += 1u32;
            rest = q;
        }
        i += 1u32;
    }
    Ok(total)
}
