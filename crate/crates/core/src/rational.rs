//! Exact scalars for the whole engine: complex numbers of the form
//! `(a + b*sqrt(2)) + (c + d*sqrt(2)) i` with arbitrary-precision rational
//! components.
//!
//! Equality is exact and there is no rounding anywhere, so cancellations
//! like `gamma^2 - kappa^2 = 0` at `gamma = kappa` happen identically to
//! zero. The `sqrt(2)` axis exists because one family of gain/loss models
//! sits on its degeneracy exactly when `gamma^2 = 2 kappa^2`, a relation no
//! rational value of `gamma` can satisfy; every other irrational parameter
//! enters only as a rational approximation (see [`Scalar::from_str_exact`])
//! because nothing cancels through it.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Error raised when parsing rational or scalar text fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar literal `{input}`: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: String,
}

fn parse_err(input: &str, reason: impl Into<String>) -> ParseRationalError {
    ParseRationalError {
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// Parse a rational from `m`, `m/n`, or a decimal literal like `-1.4142`.
pub fn rational_from_str(s: &str) -> Result<BigRational, ParseRationalError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(parse_err(s, "empty"));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| parse_err(s, "bad numerator"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| parse_err(s, "bad denominator"))?;
        if d.is_zero() {
            return Err(parse_err(s, "zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_digits = if int_part == "-" || int_part == "+" || int_part.is_empty() {
            "0".to_string()
        } else {
            int_part.trim_start_matches(['+', '-']).to_string()
        };
        if frac_part.is_empty() || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(parse_err(s, "bad fractional digits"));
        }
        let digits = format!("{int_digits}{frac_part}");
        let n: BigInt = digits
            .parse()
            .map_err(|_| parse_err(s, "bad integer digits"))?;
        let d = BigInt::from(10u32).pow(frac_part.len() as u32);
        let q = BigRational::new(n, d);
        return Ok(if negative { -q } else { q });
    }
    let n: BigInt = t.parse().map_err(|_| parse_err(s, "bad integer"))?;
    Ok(BigRational::from_integer(n))
}

const SQRT_2_F64: f64 = std::f64::consts::SQRT_2;

/// An exact element of the field Q(i, sqrt(2)).
///
/// `re`/`im` are the rational real and imaginary parts; `re_rt2`/`im_rt2`
/// are the coefficients of `sqrt(2)` and `sqrt(2) i`. All four are stored
/// reduced with positive denominators (guaranteed by `BigRational`) and
/// equality is exact. Values with zero `sqrt(2)` parts are ordinary
/// Gaussian rationals, which is what every exchange format carries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
    pub re_rt2: BigRational,
    pub im_rt2: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self {
            re,
            im,
            ..Self::default()
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    /// Exact `sqrt(2)`.
    pub fn sqrt2() -> Self {
        Self {
            re_rt2: BigRational::one(),
            ..Self::default()
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    /// `n*i` for integer `n`.
    pub fn from_imag_int(n: i64) -> Self {
        Self::new(BigRational::zero(), BigRational::from_integer(n.into()))
    }

    pub fn real(q: BigRational) -> Self {
        Self::new(q, BigRational::zero())
    }

    pub fn imag(q: BigRational) -> Self {
        Self::new(BigRational::zero(), q)
    }

    /// Parse a real value given as `m`, `m/n` or a decimal literal.
    pub fn from_decimal_str(s: &str) -> Result<Self, ParseRationalError> {
        Ok(Self::real(rational_from_str(s)?))
    }

    /// Parse the canonical scalar grammar: a sum of terms `q`, `qi`,
    /// `q*sqrt2`, `q*sqrt2i` (with `q` a rational or decimal literal and
    /// the magnitude optional for `i`/`sqrt2` tokens), e.g.
    /// `1/2 - 3i + sqrt2 - 2*sqrt2i`.
    pub fn from_str_exact(s: &str) -> Result<Self, ParseRationalError> {
        let t = s.trim();
        if t.is_empty() {
            return Err(parse_err(s, "empty"));
        }
        let mut out = Scalar::zero();
        let mut term = String::new();
        let mut terms: Vec<String> = Vec::new();
        for (idx, ch) in t.chars().enumerate() {
            if (ch == '+' || ch == '-') && idx > 0 && !term.trim().is_empty() {
                terms.push(term.clone());
                term.clear();
            }
            term.push(ch);
        }
        if term.trim().is_empty() {
            return Err(parse_err(s, "trailing operator"));
        }
        terms.push(term);
        for raw in terms {
            let mut body = raw.trim().to_string();
            let mut neg = false;
            while body.starts_with(['+', '-']) {
                if body.starts_with('-') {
                    neg = !neg;
                }
                body = body[1..].trim_start().to_string();
            }
            let has_i = body.ends_with('i');
            if has_i {
                body.pop();
            }
            let has_rt2 = body.trim_end().ends_with("sqrt2");
            if has_rt2 {
                body = body.trim_end().strip_suffix("sqrt2").unwrap().to_string();
            }
            let body = body.trim().trim_end_matches('*').trim();
            let mag = if body.is_empty() {
                if !has_i && !has_rt2 {
                    return Err(parse_err(s, "empty term"));
                }
                BigRational::one()
            } else {
                rational_from_str(body)?
            };
            let mag = if neg { -mag } else { mag };
            match (has_rt2, has_i) {
                (false, false) => out.re += mag,
                (false, true) => out.im += mag,
                (true, false) => out.re_rt2 += mag,
                (true, true) => out.im_rt2 += mag,
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.re_rt2.is_zero() && self.im_rt2.is_zero()
    }

    /// True when both `sqrt(2)` components vanish (a Gaussian rational).
    pub fn is_gaussian(&self) -> bool {
        self.re_rt2.is_zero() && self.im_rt2.is_zero()
    }

    /// True when both imaginary components vanish.
    pub fn is_real(&self) -> bool {
        self.im.is_zero() && self.im_rt2.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
            re_rt2: self.re_rt2.clone(),
            im_rt2: -self.im_rt2.clone(),
        }
    }

    /// Exact division by a non-zero integer.
    pub fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero");
        let q = BigRational::from_integer(n.into());
        Self {
            re: &self.re / &q,
            im: &self.im / &q,
            re_rt2: &self.re_rt2 / &q,
            im_rt2: &self.im_rt2 / &q,
        }
    }

    /// Lossy conversion to double-precision complex.
    pub fn to_complex64(&self) -> Complex64 {
        let part = |a: &BigRational, b: &BigRational| {
            a.to_f64().unwrap_or(f64::NAN) + b.to_f64().unwrap_or(f64::NAN) * SQRT_2_F64
        };
        Complex64::new(part(&self.re, &self.re_rt2), part(&self.im, &self.im_rt2))
    }

    fn part_to_fraction_str(q: &BigRational) -> String {
        format!("{}/{}", q.numer(), q.denom())
    }

    /// Serialize as `re_num/re_den im_num/im_den`. Only Gaussian rationals
    /// fit this exchange format.
    pub fn to_fraction_pair(&self) -> Result<String, ParseRationalError> {
        if !self.is_gaussian() {
            return Err(parse_err(
                &self.to_string(),
                "sqrt(2) components are not representable in the fraction-pair format",
            ));
        }
        Ok(format!(
            "{} {}",
            Self::part_to_fraction_str(&self.re),
            Self::part_to_fraction_str(&self.im)
        ))
    }

    /// Parse the `re_num/re_den im_num/im_den` pair format.
    pub fn from_fraction_pair(re: &str, im: &str) -> Result<Self, ParseRationalError> {
        Ok(Self::new(rational_from_str(re)?, rational_from_str(im)?))
    }
}

impl Add for Scalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
            re_rt2: self.re_rt2 + rhs.re_rt2,
            im_rt2: self.im_rt2 + rhs.im_rt2,
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
            re_rt2: &self.re_rt2 + &rhs.re_rt2,
            im_rt2: &self.im_rt2 + &rhs.im_rt2,
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
        self.re_rt2 += rhs.re_rt2;
        self.im_rt2 += rhs.im_rt2;
    }
}

impl Sub for Scalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Self) {
        *self += -rhs;
    }
}

impl Neg for Scalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
            re_rt2: -self.re_rt2,
            im_rt2: -self.im_rt2,
        }
    }
}

impl Mul for Scalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        (&self).mul(&rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        // complex multiplication over the quadratic extension: write each
        // factor as (p + q*sqrt2) with p, q complex-rational pairs
        let two = BigRational::from_integer(2.into());
        // real-part components of the product's rational and sqrt2 pieces
        let mul_pair = |a: &BigRational,
                        a2: &BigRational,
                        b: &BigRational,
                        b2: &BigRational|
         -> (BigRational, BigRational) {
            // (a + a2 rt2)(b + b2 rt2) = (ab + 2 a2 b2) + (a b2 + a2 b) rt2
            (a * b + &two * a2 * b2, a * b2 + a2 * b)
        };
        // (x + yi)(u + vi) = (xu - yv) + (xv + yu)i, with each scalar
        // product expanded over the sqrt2 basis
        let (xu, xu2) = mul_pair(&self.re, &self.re_rt2, &rhs.re, &rhs.re_rt2);
        let (yv, yv2) = mul_pair(&self.im, &self.im_rt2, &rhs.im, &rhs.im_rt2);
        let (xv, xv2) = mul_pair(&self.re, &self.re_rt2, &rhs.im, &rhs.im_rt2);
        let (yu, yu2) = mul_pair(&self.im, &self.im_rt2, &rhs.re, &rhs.re_rt2);
        Scalar {
            re: xu - yv,
            re_rt2: xu2 - yv2,
            im: xv + yu,
            im_rt2: xv2 + yu2,
        }
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Self) {
        let prod = (&*self).mul(&rhs);
        *self = prod;
    }
}

fn rational_part_str(q: &BigRational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// Canonical form parsed back by [`Scalar::from_str_exact`], e.g.
    /// `1/2-3/4i`, `sqrt2`, `2-sqrt2i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut emit = |f: &mut fmt::Formatter<'_>, q: &BigRational, token: &str| -> fmt::Result {
            if q.is_zero() {
                return Ok(());
            }
            let mag = q.abs();
            let mag_str = if mag.is_one() && !token.is_empty() {
                token.to_string()
            } else if token.is_empty() {
                rational_part_str(&mag)
            } else {
                format!("{}*{}", rational_part_str(&mag), token)
            };
            if first {
                first = false;
                if q.is_negative() {
                    write!(f, "-{mag_str}")
                } else {
                    write!(f, "{mag_str}")
                }
            } else if q.is_negative() {
                write!(f, "-{mag_str}")
            } else {
                write!(f, "+{mag_str}")
            }
        };
        emit(f, &self.re, "")?;
        emit(f, &self.im, "i")?;
        emit(f, &self.re_rt2, "sqrt2")?;
        emit(f, &self.im_rt2, "sqrt2i")
    }
}
