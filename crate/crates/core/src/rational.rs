//! Exact rational helpers.
//!
//! Every inequality decision in the crate is made over [`Rational`]. Hot loops
//! do not operate on `BigRational` directly: a family of values is first put
//! over a common denominator with [`Scaled::new`], after which comparisons are
//! plain integer arithmetic. The integer type is `i128` whenever the common
//! denominator is small enough for the kernel's degree, and `BigInt` otherwise.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n / d` as a [`Rational`].
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The constant 5/8 that every threshold in the toolkit is measured against.
pub fn five_eighths() -> Rational {
    q(5, 8)
}

/// Exact value of a finite double.
pub fn from_f64_exact(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Parse(format!("non-finite value {x}")))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q`, an integer, or a terminating decimal such as `0.625`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| bad())?
        };
        let frac_num: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(whole * &scale + frac_num, scale);
        return Ok(if negative { -value } else { value });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Formats as `p/q`, or `p` when the denominator is 1.
pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Serde adapter writing a rational in its `p/q` text form.
pub fn serialize_rational<S: serde::Serializer>(
    x: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(x))
}

pub fn serialize_rationals<S: serde::Serializer>(
    xs: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(fmt_rational))
}

pub fn mean(values: &[Rational]) -> Rational {
    if values.is_empty() {
        return Rational::zero();
    }
    let sum: Rational = values.iter().sum();
    sum / int(values.len() as i64)
}

/// Integer types usable by the scaled kernels.
pub trait ExactInt:
    Integer + Signed + Clone + FromPrimitive + Debug + Send + Sync + for<'a> std::iter::Sum<&'a Self>
{
    fn try_from_bigint(x: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn try_from_bigint(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn try_from_bigint(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Largest common denominator (in bits) for which quadratic kernels with
/// small integer coefficients stay inside `i128`.
pub const SMALL_DENOM_BITS: u64 = 48;

/// Several groups of rationals written over one shared denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scaled<T> {
    pub denom: T,
    pub groups: Vec<Vec<T>>,
}

impl<T: ExactInt> Scaled<T> {
    /// Returns `None` when `T` cannot hold the scaled values, i.e. when the
    /// common denominator exceeds `max_bits` bits or a numerator overflows.
    pub fn new(groups: &[&[Rational]], max_bits: u64) -> Option<Self> {
        let denom = common_denominator(groups.iter().flat_map(|g| g.iter()));
        if denom.bits() > max_bits {
            return None;
        }
        let denom_t = T::try_from_bigint(&denom)?;
        let mut out = Vec::with_capacity(groups.len());
        for g in groups {
            let mut v = Vec::with_capacity(g.len());
            for x in g.iter() {
                let n = x.numer() * (&denom / x.denom());
                v.push(T::try_from_bigint(&n)?);
            }
            out.push(v);
        }
        Some(Scaled {
            denom: denom_t,
            groups: out,
        })
    }

    pub fn to_rational(&self, numer: &T) -> Rational {
        Rational::new(numer.to_bigint(), self.denom.to_bigint())
    }
}

pub fn common_denominator<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Runs `$body` with `$s` bound to a `Scaled<i128>` when the values fit,
/// otherwise to a `Scaled<BigInt>`.
#[macro_export]
#[doc(hidden)]
macro_rules! with_scaled {
    ($groups:expr, |$s:ident| $body:expr) => {{
        let groups: &[&[$crate::rational::Rational]] = $groups;
        match $crate::rational::Scaled::<i128>::new(groups, $crate::rational::SMALL_DENOM_BITS) {
            Some($s) => $body,
            None => {
                let $s = $crate::rational::Scaled::<num_bigint::BigInt>::new(groups, u64::MAX)
                    .expect("BigInt scaling cannot overflow");
                $body
            }
        }
    }};
}
