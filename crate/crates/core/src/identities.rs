//! Closed-form evaluators for the single and double floor, ceiling,
//! fractional-part and sawtooth sums, all computed from one base-b digit
//! expansion of the argument.
//!
//! Notation used in the docs below: `s` is the digit sum of `n`, `m` the
//! position of its leading digit, `ν` its valuation, `c_ν` the lowest
//! nonzero digit and `λ′_t` the number of digits `>= t`.

use num_integer::Integer as _;
use num_traits::Zero;

use crate::bigmath::{check_base, ilog, pow, Integer, Natural, Rational};
use crate::error::{Error, Result};
use crate::family::{check_j, Argument, Family, Scope, SumSpec};
use crate::radix::{expand, DigitExpansion};

fn exact_div(numerator: Natural, divisor: &Natural) -> Result<Natural> {
    let (q, r) = numerator.div_rem(divisor);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InexactDivision {
            numerator: numerator.to_string(),
            divisor: divisor.to_string(),
        })
    }
}

fn iverson(p: bool) -> u32 {
    u32::from(p)
}

/// `(n - s) / (b - 1)` from an expansion of `n`. The division is checked.
fn carried_part(e: &DigitExpansion) -> Result<Natural> {
    let n = e.value();
    exact_div(n - e.digit_sum(), &(e.base() - 1u32))
}

/// `Σ_{k>=1} ⌊(n + j b^(k-1)) / b^k⌋ = (n - s)/(b - 1) + λ′_{b-j}` for `0 <= j < b`.
///
/// `j = 0` queries `λ′_b`, which is always zero.
pub fn floor_sum(n: &Natural, b: &Natural, j: &Natural) -> Result<Natural> {
    check_base(b)?;
    check_j(j, b, Family::Floor)?;
    let e = expand(n, b)?;
    Ok(carried_part(&e)? + e.conjugate().get(&(b - j)))
}

/// The double floor sum over `k >= 1` and `0 < j < b`, which is `n`.
pub fn floor_double_sum(n: &Natural, b: &Natural) -> Result<Natural> {
    check_base(b)?;
    Ok(n.clone())
}

/// `(n - s_p(n)) / (p - 1)`: the exponent of `p` in `n!` when `p` is prime.
/// The formula is evaluated for any `p >= 2`.
pub fn legendre_valuation(n: &Natural, p: &Natural) -> Result<Natural> {
    check_base(p)?;
    carried_part(&expand(n, p)?)
}

struct CeilPieces {
    /// `n = ⌈x⌉`
    expansion: DigitExpansion,
    /// `m`, leading digit position of `⌈x⌉`
    leading: u64,
    /// `⌊log_b x⌋`, the last summation index
    last_k: u64,
}

fn ceil_pieces(x: &Rational, b: &Natural) -> Result<CeilPieces> {
    check_base(b)?;
    let last_k = ilog(b, x)?;
    let n = x.ceil().to_biguint().expect("x >= 1");
    let expansion = expand(&n, b)?;
    let leading = expansion.leading_pos()?;
    Ok(CeilPieces {
        expansion,
        leading,
        last_k,
    })
}

fn ceil_sum_parts(x: &Rational, b: &Natural, j: &Natural) -> Result<(Natural, CeilPieces)> {
    check_base(b)?;
    check_j(j, b, Family::Ceil)?;
    let pieces = ceil_pieces(x, b)?;
    let e = &pieces.expansion;
    let target = b - j;
    let lowest_differs = *e.lowest_nonzero_digit()? != target;
    let value = carried_part(e)? + pieces.leading + e.conjugate().get(&target) + iverson(lowest_differs);
    Ok((value, pieces))
}

/// The ceiling closed form exactly as stated with `n = ⌈x⌉` and
/// `m = ⌊log_b n⌋`:
/// `(n - s)/(b - 1) + m + λ′_{b-j} + [c_ν ≠ b - j]`.
///
/// Over-counts by one when `⌈x⌉ = b^m` and `x` is not an integer, because
/// the sum then stops at `k = m - 1`. [`ceil_sum`] applies the correction.
pub fn ceil_sum_uncorrected(x: &Rational, b: &Natural, j: &Natural) -> Result<Natural> {
    Ok(ceil_sum_parts(x, b, j)?.0)
}

/// `Σ_{0<=k<=log_b x} ⌈(x + j b^k) / b^(k+1)⌉` for rational `x >= 1` and
/// `0 < j < b`.
///
/// Equal to [`ceil_sum_uncorrected`] minus `[⌊log_b x⌋ = m - 1]`; the
/// missing `k = m` term is `⌈(1 + j)/b⌉ = 1`.
pub fn ceil_sum(x: &Rational, b: &Natural, j: &Natural) -> Result<Natural> {
    let (value, pieces) = ceil_sum_parts(x, b, j)?;
    if pieces.last_k + 1 == pieces.leading {
        Ok(value - 1u32)
    } else {
        Ok(value)
    }
}

/// `(b - 1)(⌊log_b x⌋ + 1) + ⌈x⌉ - 1`, valid for every rational `x >= 1`.
pub fn ceil_double_sum(x: &Rational, b: &Natural) -> Result<Natural> {
    let pieces = ceil_pieces(x, b)?;
    Ok((b - 1u32) * (pieces.last_k + 1) + pieces.expansion.value() - 1u32)
}

/// `(b - 1)(m + 1) + n - 1` with `m` taken from `n = ⌈x⌉`. Agrees with
/// [`ceil_double_sum`] except when `⌈x⌉` is a power of `b` and `x` is not
/// an integer, where it is larger by `b - 1`.
pub fn ceil_double_sum_by_leading_digit(x: &Rational, b: &Natural) -> Result<Natural> {
    let pieces = ceil_pieces(x, b)?;
    Ok((b - 1u32) * (pieces.leading + 1) + pieces.expansion.value() - 1u32)
}

fn positive_expansion(n: &Natural, b: &Natural, what: &'static str) -> Result<(DigitExpansion, u64)> {
    check_base(b)?;
    if n.is_zero() {
        return Err(Error::ZeroArgument(what));
    }
    let e = expand(n, b)?;
    let m = e.leading_pos()?;
    Ok((e, m))
}

/// `n / b^(m+1)`, the value of `0.c_m…c_0` in base `b`.
fn scaled(n: &Natural, b: &Natural, m: u64) -> Rational {
    Rational::ratio(Integer::from(n.clone()), Integer::from(pow(b, m + 1)))
}

fn int(v: impl Into<Integer>) -> Rational {
    Rational::from(v.into())
}

/// `Σ_{0<=k<=m} {(n + j b^k) / b^(k+1)}
///   = (s - n/b^(m+1))/(b - 1) + (m + 1) j/b - λ′_{b-j}` for `n >= 1`, `0 < j < b`.
pub fn frac_sum(n: &Natural, b: &Natural, j: &Natural) -> Result<Rational> {
    check_base(b)?;
    check_j(j, b, Family::Frac)?;
    let (e, m) = positive_expansion(n, b, "fractional-part sum closed form")?;
    let lambda = e.conjugate().get(&(b - j));
    let b_q = int(b.clone());
    Ok((int(e.digit_sum()) - scaled(n, b, m)) / (&b_q - Rational::one())
        + int(m + 1) * int(j.clone()) / b_q
        - int(lambda))
}

/// `(m + 1)(b - 1)/2 - n/b^(m+1)` for `n >= 1`.
pub fn frac_double_sum(n: &Natural, b: &Natural) -> Result<Rational> {
    let (_, m) = positive_expansion(n, b, "fractional-part double sum closed form")?;
    Ok(int(m + 1) * int(b - 1u32) / int(2u32) - scaled(n, b, m))
}

/// `Σ_{0<=k<=m} ((n + j b^k) / b^(k+1))`, with `((x))` the sawtooth:
/// `(s - n/b^(m+1))/(b - 1) + (m + 1)(j/b - 1/2) - λ′_{b-j} + ½[c_ν = b - j]`.
///
/// At most one term of the sum is an integer, and only when `c_ν = b - j`;
/// the bracket accounts for it.
pub fn sawtooth_sum(n: &Natural, b: &Natural, j: &Natural) -> Result<Rational> {
    check_base(b)?;
    check_j(j, b, Family::Sawtooth)?;
    let (e, m) = positive_expansion(n, b, "sawtooth sum closed form")?;
    let target = b - j;
    let lambda = e.conjugate().get(&target);
    let integral_term = *e.lowest_nonzero_digit()? == target;
    let b_q = int(b.clone());
    Ok((int(e.digit_sum()) - scaled(n, b, m)) / (&b_q - Rational::one())
        + int(m + 1) * (int(j.clone()) / b_q - Rational::half())
        - int(lambda)
        + Rational::half() * int(iverson(integral_term)))
}

/// `1/2 - n/b^(m+1)` for `n >= 1`.
pub fn sawtooth_double_sum(n: &Natural, b: &Natural) -> Result<Rational> {
    let (_, m) = positive_expansion(n, b, "sawtooth double sum closed form")?;
    Ok(Rational::half() - scaled(n, b, m))
}

/// Dispatches a [`SumSpec`] to its closed form.
pub fn evaluate(spec: &SumSpec) -> Result<Rational> {
    let b = spec.base();
    let natural = || spec.n().expect("non-ceil families carry a natural");
    let value = match (spec.family(), spec.scope()) {
        (Family::Floor, Scope::Single(j)) => Rational::from(floor_sum(natural(), b, j)?),
        (Family::Floor, Scope::Double) => Rational::from(floor_double_sum(natural(), b)?),
        (Family::Ceil, Scope::Single(j)) => Rational::from(ceil_sum(&spec.argument().as_rational(), b, j)?),
        (Family::Ceil, Scope::Double) => Rational::from(ceil_double_sum(&spec.argument().as_rational(), b)?),
        (Family::Frac, Scope::Single(j)) => frac_sum(natural(), b, j)?,
        (Family::Frac, Scope::Double) => frac_double_sum(natural(), b)?,
        (Family::Sawtooth, Scope::Single(j)) => sawtooth_sum(natural(), b, j)?,
        (Family::Sawtooth, Scope::Double) => sawtooth_double_sum(natural(), b)?,
    };
    Ok(value)
}

/// True when the ceiling closed form needed the `⌊log_b x⌋ = m - 1`
/// correction for this argument.
pub fn ceil_correction_applies(argument: &Argument, b: &Natural) -> Result<bool> {
    let pieces = ceil_pieces(&argument.as_rational(), b)?;
    Ok(pieces.last_k + 1 == pieces.leading)
}
