//! Exact Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of `ℚ(i)`, stored as a pair of arbitrary precision rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussQ {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussQ { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussQ::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn real(re: BigRational) -> Self {
        GaussQ {
            re,
            im: BigRational::zero(),
        }
    }

    /// `p/q` as a real scalar. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        GaussQ::real(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn i() -> Self {
        GaussQ {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussQ {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The value as an integer, if it is a real rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.im.is_zero() && self.re.is_integer()).then(|| self.re.to_integer())
    }

    /// The value as a `usize`, if it is a non-negative real integer that fits.
    pub fn to_usize(&self) -> Option<usize> {
        let n = self.to_integer()?;
        if n.is_negative() {
            return None;
        }
        usize::try_from(n).ok()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussQ::real(self.re.recip()));
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussQ {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        })
    }
}

impl From<usize> for GaussQ {
    fn from(n: usize) -> Self {
        GaussQ::real(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigRational> for GaussQ {
    fn from(r: BigRational) -> Self {
        GaussQ::real(r)
    }
}

impl Zero for GaussQ {
    fn zero() -> Self {
        GaussQ {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussQ {
    fn one() -> Self {
        GaussQ::real(BigRational::one())
    }
}

/// `a·b`, skipping the gcd work when a factor is one or both are integers.
fn mul_q(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() || b.is_zero() {
        BigRational::zero()
    } else if a.is_one() {
        b.clone()
    } else if b.is_one() {
        a.clone()
    } else if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

/// `a += b` with the same shortcuts as [`mul_q`].
fn add_assign_q(a: &mut BigRational, b: &BigRational) {
    if b.is_zero() {
        return;
    }
    if a.is_zero() {
        *a = b.clone();
    } else if a.is_integer() && b.is_integer() {
        *a = BigRational::from_integer(a.numer() + b.numer());
    } else {
        *a += b;
    }
}

impl<'a> Add<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn add(self, rhs: &GaussQ) -> GaussQ {
        GaussQ {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for GaussQ {
    type Output = GaussQ;
    fn add(mut self, rhs: GaussQ) -> GaussQ {
        self += &rhs;
        self
    }
}

impl AddAssign<&GaussQ> for GaussQ {
    fn add_assign(&mut self, rhs: &GaussQ) {
        add_assign_q(&mut self.re, &rhs.re);
        add_assign_q(&mut self.im, &rhs.im);
    }
}

impl<'a> Sub<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn sub(self, rhs: &GaussQ) -> GaussQ {
        GaussQ {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Sub for GaussQ {
    type Output = GaussQ;
    fn sub(self, rhs: GaussQ) -> GaussQ {
        GaussQ {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl SubAssign<&GaussQ> for GaussQ {
    fn sub_assign(&mut self, rhs: &GaussQ) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Mul<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn mul(self, rhs: &GaussQ) -> GaussQ {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussQ::real(mul_q(&self.re, &rhs.re));
        }
        GaussQ {
            re: mul_q(&self.re, &rhs.re) - mul_q(&self.im, &rhs.im),
            im: mul_q(&self.re, &rhs.im) + mul_q(&self.im, &rhs.re),
        }
    }
}

impl Mul for GaussQ {
    type Output = GaussQ;
    fn mul(self, rhs: GaussQ) -> GaussQ {
        &self * &rhs
    }
}

impl<'a> Div<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussQ) -> GaussQ {
        let inv = rhs.inv().expect("division by zero in GaussQ");
        self * &inv
    }
}

impl Div for GaussQ {
    type Output = GaussQ;
    fn div(self, rhs: GaussQ) -> GaussQ {
        &self / &rhs
    }
}

impl Neg for GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl std::iter::Sum for GaussQ {
    fn sum<I: Iterator<Item = GaussQ>>(iter: I) -> GaussQ {
        iter.fold(GaussQ::zero(), |acc, x| acc + x)
    }
}

/// Prints `a`, `a/b`, `c/d*i` or `a/b+c/d*i`; exact, never decimal.
impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", self.im)
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if self.im.is_negative() {
            let abs = -self.im.clone();
            let im = if abs.is_one() {
                "i".to_string()
            } else {
                format!("{abs}*i")
            };
            write!(f, "{}-{im}", self.re)
        } else {
            write!(f, "{}+{im}", self.re)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar token {0:?}")]
pub struct ParseScalarError(pub String);

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Accepts `a/b`, `a/b+c/d*i`, `a/b-c/d*i`, `c/d*i` and `i`.
impl FromStr for GaussQ {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let t = s.trim();
        if !t.ends_with('i') {
            return parse_rational(t).map(GaussQ::real).ok_or_else(err);
        }
        let body = &t[..t.len() - 1];
        // split into real part and signed imaginary coefficient
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re_part, im_part) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re_part).ok_or_else(err)?
        };
        let im_part = im_part.strip_suffix('*').unwrap_or(im_part);
        let im = match im_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other)).ok_or_else(err)?,
        };
        Ok(GaussQ { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        let a: GaussQ = "1/2+3*i".parse().unwrap();
        let b: GaussQ = "2-i".parse().unwrap();
        let prod = &a * &b;
        // (1/2 + 3i)(2 - i) = 1 - i/2 + 6i + 3 = 4 + 11/2 i
        assert_eq!(prod, "4+11/2*i".parse().unwrap());
        assert_eq!(&prod / &b, a);
        assert_eq!(a.conj().conj(), a);
        assert!(GaussQ::zero().inv().is_none());
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "3", "-3/4", "i", "2*i", "1/2+3*i", "5-i", "-1/3-2/5*i"] {
            let v: GaussQ = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
            assert_eq!(v.to_string().parse::<GaussQ>().unwrap(), v);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("1/0".parse::<GaussQ>().is_err());
        assert!("abc".parse::<GaussQ>().is_err());
        assert!("".parse::<GaussQ>().is_err());
    }

    #[test]
    fn integer_views() {
        assert_eq!(GaussQ::from(4usize).to_usize(), Some(4));
        assert_eq!(GaussQ::ratio(3, 2).to_usize(), None);
        assert_eq!(GaussQ::from_int(-1).to_usize(), None);
        assert_eq!(GaussQ::i().to_integer(), None);
    }
}
