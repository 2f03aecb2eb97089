//! Scalar fields used for structure constants, character values and
//! algebra elements.
//!
//! Two implementations exist: exact [`Rational`] (arbitrary precision) and
//! floating [`C64`]. Every algorithm in the crate is generic over [`Scalar`],
//! so the same code path runs in exact mode and in floating mode.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::Neg;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::traits::{Num, One, Signed, ToPrimitive, Zero};
use num::BigRational;

pub type Rational = BigRational;
pub type C64 = Complex64;

/// Default comparison tolerance for floating mode.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Integrality tolerance for standard multiplicities in floating mode.
pub const INTEGRALITY_TOL: f64 = 1e-6;

pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + Send + Sync + 'static {
    /// True when arithmetic in this type is exact.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    fn conj(&self) -> Self;

    fn to_c64(&self) -> C64;

    /// Recovers a value of this type from a floating approximation.
    ///
    /// Exact types return a small-denominator rational close to `c`, or
    /// `None` when `c` is visibly non-real. The guess is only a candidate and
    /// must be certified by the caller.
    fn from_c64_guess(c: C64) -> Option<Self>;

    /// Zero test. Exact types ignore `tol`.
    fn is_negligible(&self, tol: f64) -> bool;

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).is_negligible(tol)
    }

    fn is_real(&self, tol: f64) -> bool;

    fn is_positive(&self, tol: f64) -> bool;

    fn is_nonnegative(&self, tol: f64) -> bool;

    /// The nearest integer, when the value is one (within `tol` in floating mode).
    fn as_integer(&self, tol: f64) -> Option<BigInt>;

    /// `|self| >= |bound|`, with slack `tol` in floating mode.
    fn abs_at_least(&self, bound: &Self, tol: f64) -> bool;

    /// A total order used for deterministic sorting of character rows.
    fn order(&self, other: &Self) -> Ordering;

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Text form: reduced `num/den` for rationals, 12 significant digits for floats.
    fn render(&self) -> String;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_c64(&self) -> C64 {
        C64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_c64_guess(c: C64) -> Option<Self> {
        let scale = c.re.abs().max(1.0);
        if c.im.abs() > 1e-7 * scale {
            return None;
        }
        rationalize(c.re, 10_000)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn is_real(&self, _tol: f64) -> bool {
        true
    }

    fn is_positive(&self, _tol: f64) -> bool {
        Signed::is_positive(self)
    }

    fn is_nonnegative(&self, _tol: f64) -> bool {
        !Signed::is_negative(self)
    }

    fn as_integer(&self, _tol: f64) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }

    fn abs_at_least(&self, bound: &Self, _tol: f64) -> bool {
        self.abs() >= bound.abs()
    }

    fn order(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }

    fn from_rational(r: &Rational) -> Self {
        C64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn to_c64(&self) -> C64 {
        *self
    }

    fn from_c64_guess(c: C64) -> Option<Self> {
        Some(c)
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    fn is_real(&self, tol: f64) -> bool {
        self.im.abs() <= tol
    }

    fn is_positive(&self, tol: f64) -> bool {
        self.is_real(tol) && self.re > tol
    }

    fn is_nonnegative(&self, tol: f64) -> bool {
        self.is_real(tol) && self.re >= -tol
    }

    fn as_integer(&self, tol: f64) -> Option<BigInt> {
        let r = self.re.round();
        (self.im.abs() <= tol && (self.re - r).abs() <= tol && r.is_finite()).then(|| BigInt::from(r as i64))
    }

    fn abs_at_least(&self, bound: &Self, tol: f64) -> bool {
        self.norm() >= bound.norm() - tol
    }

    fn order(&self, other: &Self) -> Ordering {
        let key = |x: f64| (x * 1e9).round();
        key(self.re).total_cmp(&key(other.re)).then(key(self.im).total_cmp(&key(other.im)))
    }

    fn render(&self) -> String {
        let scale = self.re.abs().max(self.im.abs()).max(1.0);
        if self.im.abs() <= 1e-12 * scale {
            render_f64(self.re)
        } else if self.re.abs() <= 1e-12 * scale {
            format!("{}i", render_f64(self.im))
        } else {
            let sign = if self.im < 0.0 { '-' } else { '+' };
            format!("{}{}{}i", render_f64(self.re), sign, render_f64(self.im.abs()))
        }
    }
}

/// Formats a float with 12 significant digits, trimming trailing zeros.
pub fn render_f64(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let mag = x.abs().log10().floor() as i32;
    let s = if (-5..15).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{:.11e}", x)
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Best rational approximation with denominator at most `max_den`, accepted
/// only if it lies within `1e-7 * max(1, |x|)` of `x`.
pub fn rationalize(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let tol = 1e-7 * x.abs().max(1.0);
    // continued fraction convergents h/k
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rem = x;
    let mut best = None;
    for _ in 0..64 {
        let a = rem.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        let cand = Rational::new(h2.clone(), k2.clone());
        let err = (cand.to_f64().unwrap_or(f64::NAN) - x).abs();
        if err <= tol {
            best = Some(cand);
            break;
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = rem - a;
        if frac.abs() < 1e-300 {
            break;
        }
        rem = 1.0 / frac;
    }
    best
}

/// Parses `num`, `num/den` or a decimal literal into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Ok(n) = text.parse::<BigInt>() {
        return Some(Rational::from_integer(n));
    }
    // decimal literal, taken at face value
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int}{frac}").parse().ok()?;
    let mut value = Rational::new(all, num::pow(BigInt::from(10), frac.len()));
    let ten = Rational::from_integer(BigInt::from(10));
    if exp >= 0 {
        value *= num::pow(ten, exp as usize);
    } else {
        value /= num::pow(ten, (-exp) as usize);
    }
    Some(if neg { -value } else { value })
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(25.0 / 3.0, 10_000), Some(rational(25, 3)));
        assert_eq!(rationalize(-3.0, 10_000), Some(int(-3)));
        assert_eq!(rationalize(0.0, 10_000), Some(int(0)));
        assert_eq!(rationalize(-0.5 + 1e-12, 10_000), Some(rational(-1, 2)));
    }

    #[test]
    fn rationalize_rejects_golden_ratio_at_small_denominators() {
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        assert_eq!(rationalize(phi, 100), None);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("25/3"), Some(rational(25, 3)));
        assert_eq!(parse_rational("-4/6"), Some(rational(-2, 3)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1.25"), Some(rational(5, 4)));
        assert_eq!(parse_rational("-2.5e-1"), Some(rational(-1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn render_forms() {
        assert_eq!(rational(56, 3).render(), "56/3");
        assert_eq!(rational(-6, 2).render(), "-3");
        assert_eq!(C64::new(2.0, 0.0).render(), "2");
        assert_eq!(C64::new(0.6180339887498949, 0.0).render(), "0.61803398875");
        assert_eq!(C64::new(-0.5, 0.8660254037844386).render(), "-0.5+0.866025403784i");
        assert_eq!(C64::new(-1e-17, 0.0).render(), "-1.00000000000e-17");
    }

    #[test]
    fn float_order_is_total_on_rounded_keys() {
        let a = C64::new(1.0, 0.0);
        let b = C64::new(1.0 + 1e-12, 0.0);
        assert_eq!(a.order(&b), Ordering::Equal);
        assert_eq!(C64::new(2.0, 0.0).order(&a), Ordering::Greater);
    }
}
