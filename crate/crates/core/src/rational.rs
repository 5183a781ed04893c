//! Exact number types and their text renderings.
//!
//! Rationals are rendered as `p/q` (or `p` when the denominator is one), which
//! is the lossless form used in every machine-readable output. The decimal
//! rendering is for display only.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Unbounded non-negative integer.
pub type Nat = BigUint;

/// Unbounded rational, always held in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

/// Significant digits used by [`to_decimal`] in CLI output.
pub const DECIMAL_DIGITS: usize = 30;

pub fn rational(numer: i64, denom: i64) -> ExactRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_nat(n: &Nat) -> ExactRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// Ratio of two naturals. `denom` must be non-zero.
pub fn nat_ratio(numer: &Nat, denom: &Nat) -> ExactRational {
    BigRational::new(BigInt::from(numer.clone()), BigInt::from(denom.clone()))
}

/// Parses `p/q` or `p` into a canonical rational.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let numer: BigInt = numer
        .parse()
        .map_err(|_| Error::domain(format!("invalid rational numerator in {text:?}")))?;
    let denom: BigInt = denom
        .parse()
        .map_err(|_| Error::domain(format!("invalid rational denominator in {text:?}")))?;
    if denom.is_zero() {
        return Err(Error::domain(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

/// Nearest `f64`; only used at final comparison steps.
pub fn to_f64(value: &ExactRational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Both parts overflow f64; fall back on the decimal rendering.
        to_decimal(value, 17).parse().unwrap_or(f64::NAN)
    })
}

fn decimal_len(x: &BigUint) -> i64 {
    x.to_str_radix(10).len() as i64
}

fn pow10(e: u32) -> BigUint {
    BigUint::from(10u32).pow(e)
}

/// Renders `value` rounded half-up to `digits` significant digits.
///
/// Positional notation is used when the decimal exponent lies in
/// `-digits..digits`, scientific notation (`d.ddde-N`) otherwise. Trailing
/// zeros of the fraction are dropped, so exact short values print short.
pub fn to_decimal(value: &ExactRational, digits: usize) -> String {
    assert!(digits > 0, "at least one significant digit required");
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let a = value.numer().abs().to_biguint().expect("absolute value");
    let b = value.denom().to_biguint().expect("positive denominator");

    // 10^e <= a/b < 10^(e+1)
    let mut e = decimal_len(&a) - decimal_len(&b);
    let below = if e >= 0 {
        a < &b * pow10(e as u32)
    } else {
        &a * pow10((-e) as u32) < b
    };
    if below {
        e -= 1;
    }

    let shift = digits as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (&a * pow10(shift as u32), b)
    } else {
        (a, b * pow10((-shift) as u32))
    };
    let (mut q, r) = num.div_rem(&den);
    if r * 2u32 >= den {
        q += 1u32;
    }
    if q == pow10(digits as u32) {
        q = pow10(digits as u32 - 1);
        e += 1;
    }
    let mantissa = q.to_str_radix(10);
    debug_assert_eq!(mantissa.len(), digits);

    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    let d = digits as i64;
    let body = if (0..d).contains(&e) {
        let split = (e + 1) as usize;
        trim(format!("{}.{}", &mantissa[..split], &mantissa[split..]))
    } else if e < 0 && e >= -d {
        trim(format!("0.{}{}", "0".repeat((-e - 1) as usize), mantissa))
    } else {
        format!(
            "{}e{}",
            trim(format!("{}.{}", &mantissa[..1], &mantissa[1..])),
            e
        )
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Whether `value` is an integer.
pub fn is_integer(value: &ExactRational) -> bool {
    value.denom().is_one()
}
