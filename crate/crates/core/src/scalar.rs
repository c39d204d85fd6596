//! Exact Gaussian rationals `a + bi` with `a, b ∈ ℚ`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Complex, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// A rational held inline while numerator and denominator fit in `i64`.
/// `S(n, d)` is always reduced with `d > 0`; `B` only holds values that do
/// not fit, so derived equality and hashing are canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Rat {
    S(i64, i64),
    B(BigRational),
}

impl Default for Rat {
    fn default() -> Self {
        Rat::S(0, 1)
    }
}

impl Rat {
    fn from_i128(n: i128, d: i128) -> Self {
        let g = n.gcd(&d);
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat::S(n, d),
            _ => Rat::B(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::S(n, d),
            _ => Rat::B(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::S(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::B(r) => r.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::S(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Rat::S(1, 1))
    }

    fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Rat::S(0, _), x) | (x, Rat::S(0, _)) => x.clone(),
            (Rat::S(a, b), Rat::S(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Self::from_i128(a + c, b)
                } else {
                    Self::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Self::from_big(self.to_big() + o.to_big()),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Rat::S(n, d) => Self::from_i128(-(*n as i128), *d as i128),
            Rat::B(r) => Self::from_big(-r.clone()),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Rat::S(0, _), _) | (_, Rat::S(0, _)) => Rat::default(),
            (Rat::S(1, 1), x) | (x, Rat::S(1, 1)) => x.clone(),
            (Rat::S(a, b), Rat::S(c, d)) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * o.to_big()),
        }
    }

    /// Panics on a zero divisor.
    fn div(&self, o: &Self) -> Self {
        match (self, o) {
            (_, Rat::S(0, _)) => panic!("rational division by zero"),
            (Rat::S(a, b), Rat::S(c, d)) => {
                Self::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128)
            }
            _ => Self::from_big(self.to_big() / o.to_big()),
        }
    }

    fn signum(&self) -> i8 {
        match self {
            Rat::S(n, _) => n.signum() as i8,
            Rat::B(r) => {
                if r.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    fn to_f64(&self) -> f64 {
        match self {
            Rat::S(n, d) => *n as f64 / *d as f64,
            Rat::B(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rat::S(a, b), Rat::S(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact complex scalar with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Rat,
    im: Rat,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self {
            re: Rat::from_big(re),
            im: Rat::from_big(im),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self {
            re: Rat::default(),
            im: Rat::S(1, 1),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self {
            re: Rat::S(n, 1),
            im: Rat::default(),
        }
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self {
            re: Rat::from_i128(num as i128, den as i128),
            im: Rat::default(),
        }
    }

    /// `(a/b) + (c/d) i`.
    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        assert!(re.1 != 0 && im.1 != 0, "zero denominator");
        Self {
            re: Rat::from_i128(re.0 as i128, re.1 as i128),
            im: Rat::from_i128(im.0 as i128, im.1 as i128),
        }
    }

    pub fn re(&self) -> BigRational {
        self.re.to_big()
    }

    pub fn im(&self) -> BigRational {
        self.im.to_big()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// Squared modulus `a² + b²`.
    pub fn norm_sqr(&self) -> BigRational {
        self.norm_rat().to_big()
    }

    fn norm_rat(&self) -> Rat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_rat();
        Some(Self {
            re: self.re.div(&n),
            im: self.im.div(&n).neg(),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn to_complex64(&self) -> Complex<f64> {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        num::integer::lcm(self.re().denom().clone(), self.im().denom().clone())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }
}

// Lexicographic on (re, im). Compatible with addition, which the
// exponential-polynomial division relies on.
impl Ord for GaussianRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &'a GaussianRational) -> GaussianRational {
                let f: fn(&GaussianRational, &GaussianRational) -> GaussianRational = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianRational {
    re: a.re.add(&b.re),
    im: a.im.add(&b.im)
});
forward_binop!(Sub, sub, |a, b| GaussianRational {
    re: a.re.sub(&b.re),
    im: a.im.sub(&b.im)
});
forward_binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return GaussianRational {
            re: a.re.mul(&b.re),
            im: Rat::default(),
        };
    }
    GaussianRational {
        re: a.re.mul(&b.re).sub(&a.im.mul(&b.im)),
        im: a.re.mul(&b.im).add(&a.im.mul(&b.re)),
    }
});
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division of Gaussian rational by zero"));

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re = self.re.add(&rhs.re);
        self.im = self.im.add(&rhs.im);
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re = self.re.sub(&rhs.re);
        self.im = self.im.sub(&rhs.im);
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else if im.is_integer() {
                format!("{}i", im.numer())
            } else if im.numer().is_one() {
                format!("i/{}", im.denom())
            } else if (-im.numer()).is_one() {
                format!("-i/{}", im.denom())
            } else {
                format!("{}i/{}", im.numer(), im.denom())
            }
        };
        let (re, im) = (self.re(), self.im());
        match (re.is_zero(), im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&re)),
            (true, false) => write!(f, "{}", im_part(&im)),
            (false, false) => {
                let sign = if self.im.signum() < 0 { '-' } else { '+' };
                write!(f, "({}{}{})", fmt_rat(&re), sign, im_part(&im.abs()))
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        // decimal literal, exact
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
}

/// Accepts `3`, `-4/5`, `0.25`, `i`, `-i`, `2i`, `3i/8`, `1+2i`, `1/2-3i/4`.
impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        // split at the last sign that is not leading and not after '/'
        let bytes = s.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                split = Some(k);
                break;
            }
        }
        let (a, b) = match split {
            Some(k) if s[k..].contains('i') && !s[..k].contains('i') => (&s[..k], Some(&s[k..])),
            _ => (s, None),
        };
        let parse_part = |p: &str| -> Result<GaussianRational, Error> {
            if let Some(pos) = p.find('i') {
                let (head, tail) = (&p[..pos], &p[pos + 1..]);
                let mut coeff = match head {
                    "" | "+" => BigRational::one(),
                    "-" => -BigRational::one(),
                    h => parse_rational(h)?,
                };
                if let Some(den) = tail.strip_prefix('/') {
                    coeff /= parse_rational(den)?;
                } else if !tail.is_empty() {
                    coeff *= parse_rational(tail.trim_start_matches('*'))?;
                }
                Ok(GaussianRational::new(BigRational::zero(), coeff))
            } else {
                Ok(GaussianRational::from(parse_rational(p)?))
            }
        };
        let mut out = parse_part(a)?;
        if let Some(b) = b {
            out = out + parse_part(b)?;
        }
        Ok(out)
    }
}

impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
