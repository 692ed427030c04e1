use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use regex::Regex;

use super::eisenstein::{v3, EisensteinInteger};
use super::unit::Unit;
use super::valuation::Valuation;
use crate::error::Error;

/// An exact element `a + bω` of ℚ(ω), with `a`, `b` reduced rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FieldElement {
    a: BigRational,
    b: BigRational,
}

fn ratio(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl FieldElement {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        FieldElement { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        FieldElement {
            a: ratio(a),
            b: ratio(b),
        }
    }

    pub fn from_int(a: i64) -> Self {
        Self::from_ints(a, 0)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        FieldElement {
            a: BigRational::new(BigInt::from(num), BigInt::from(den)),
            b: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn omega() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn chi() -> Self {
        Self::from_ints(1, -1)
    }

    pub fn from_unit(u: Unit) -> Self {
        EisensteinInteger::from_unit(u).into()
    }

    /// χⁿ for any integer n; negative powers use χ⁻¹ = χ̄/3.
    pub fn chi_pow(n: i64) -> Self {
        let m = n.unsigned_abs() as u32;
        let pos = EisensteinInteger::one().mul_chi_pow(m);
        if n >= 0 {
            pos.into()
        } else {
            let three_m = num_traits::pow(BigInt::from(3), m as usize);
            let c = pos.conj();
            FieldElement {
                a: BigRational::new(c.a, three_m.clone()),
                b: BigRational::new(c.b, three_m),
            }
        }
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// conj(a + bω) = (a − b) − bω.
    pub fn conj(&self) -> Self {
        FieldElement {
            a: &self.a - &self.b,
            b: -&self.b,
        }
    }

    /// x·conj(x) = a² − ab + b².
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(FieldElement {
            a: c.a / &n,
            b: c.b / n,
        })
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<Self, Error> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElement {
            a: &self.a * q,
            b: &self.b * q,
        }
    }

    pub fn mul_unit(&self, u: Unit) -> Self {
        self * &FieldElement::from_unit(u)
    }

    /// Multiply by χⁿ.
    pub fn mul_chi_pow(&self, n: i64) -> Self {
        if n == 0 {
            return self.clone();
        }
        self * &FieldElement::chi_pow(n)
    }

    /// The χ-adic valuation, computed as v₃(norm(x)).
    pub fn v_pi(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let n = self.norm();
        Valuation::Finite(v3(n.numer()) as i64 - v3(n.denom()) as i64)
    }

    /// x mod χ as an element of 𝔽₃.
    pub fn residue_mod_chi(&self) -> Result<u8, Error> {
        match self.v_pi() {
            Valuation::Infinite => return Ok(0),
            Valuation::Finite(v) if v < 0 => return Err(Error::NegativeValuation),
            _ => {}
        }
        Ok(rational_mod3(&(&self.a + &self.b)))
    }

    /// The first `k` digits of the χ-adic expansion x = Σ xᵢχⁱ, xᵢ ∈ {0,1,2}.
    pub fn chi_digits(&self, k: usize) -> Result<Vec<u8>, Error> {
        if !self.v_pi().is_integral() {
            return Err(Error::NegativeValuation);
        }
        let mut digits = Vec::with_capacity(k);
        let mut rem = self.clone();
        let chi_inv = FieldElement::chi_pow(-1);
        for _ in 0..k {
            let d = rem.residue_mod_chi()?;
            digits.push(d);
            rem = &(&rem - &FieldElement::from_int(d as i64)) * &chi_inv;
        }
        Ok(digits)
    }

    /// Both coordinates are integers.
    pub fn to_eisenstein(&self) -> Option<EisensteinInteger> {
        (self.a.is_integer() && self.b.is_integer()).then(|| EisensteinInteger {
            a: self.a.to_integer(),
            b: self.b.to_integer(),
        })
    }

    /// Least common denominator of the two coordinates.
    pub fn common_denominator(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }
}

/// A rational with denominator prime to 3, reduced modulo 3.
pub(crate) fn rational_mod3(q: &BigRational) -> u8 {
    let three = BigInt::from(3);
    let n: i64 = q.numer().mod_floor(&three).try_into().unwrap_or(0);
    let d: i64 = q.denom().mod_floor(&three).try_into().unwrap_or(0);
    debug_assert!(d != 0, "denominator divisible by 3");
    // 1 and 2 are their own inverses mod 3
    ((n * d) % 3) as u8
}

impl From<EisensteinInteger> for FieldElement {
    fn from(z: EisensteinInteger) -> Self {
        FieldElement {
            a: BigRational::from_integer(z.a),
            b: BigRational::from_integer(z.b),
        }
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        FieldElement {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        if self.b.is_zero() && rhs.b.is_zero() {
            return FieldElement {
                a: &self.a * &rhs.a,
                b: BigRational::zero(),
            };
        }
        let bb = &self.b * &rhs.b;
        FieldElement {
            a: &self.a * &rhs.a - &bb,
            b: &self.a * &rhs.b + &self.b * &rhs.a - bb,
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+{}w)", self.a, self.b)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for FieldElement {
    type Err = Error;

    /// Accepts `(a+bw)` with rational `a`, `b`, plus the shorthands
    /// `w`, `-w`, `w^2`, `-w^2` and bare rationals.
    fn from_str(s: &str) -> Result<Self, Error> {
        static FULL: OnceLock<Regex> = OnceLock::new();
        let full = FULL.get_or_init(|| {
            Regex::new(r"^\((-?\d+(?:/\d+)?)\+(-?\d+(?:/\d+)?)w\)$").expect("valid regex")
        });
        let s = s.trim();
        if let Some(c) = full.captures(s) {
            return Ok(FieldElement {
                a: parse_rational(&c[1])?,
                b: parse_rational(&c[2])?,
            });
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if rest.starts_with('w') => (true, rest),
            _ => (false, s),
        };
        let x = match body {
            "w" => FieldElement::omega(),
            "w^2" => FieldElement::from_ints(-1, -1),
            _ => FieldElement {
                a: parse_rational(body)?,
                b: BigRational::zero(),
            },
        };
        Ok(if neg { -x } else { x })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi() -> FieldElement {
        FieldElement::chi()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(FieldElement::from_int(3).v_pi(), Valuation::Finite(2));
        assert_eq!(FieldElement::one().v_pi(), Valuation::Finite(0));
        let w = FieldElement::omega();
        let w2 = &w * &w;
        assert_eq!((&w - &w2).v_pi(), Valuation::Finite(1));
        assert_eq!(FieldElement::zero().v_pi(), Valuation::Infinite);
        assert_eq!(FieldElement::chi_pow(-3).v_pi(), Valuation::Finite(-3));
        assert_eq!(FieldElement::from_ratio(1, 9).v_pi(), Valuation::Finite(-4));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(FieldElement::omega().residue_mod_chi(), Ok(1));
        assert_eq!(FieldElement::zero().residue_mod_chi(), Ok(0));
        assert_eq!(FieldElement::from_ratio(1, 2).residue_mod_chi(), Ok(2));
        assert_eq!(
            FieldElement::chi_pow(-1).residue_mod_chi(),
            Err(Error::NegativeValuation)
        );
        // ω − 1 = −χ lies in χℤ[ω]
        let d = &FieldElement::omega() - &FieldElement::one();
        assert!((&d * &FieldElement::chi_pow(-1)).to_eisenstein().is_some());
    }

    #[test]
    fn digit_examples() {
        assert_eq!(FieldElement::from_int(3).chi_digits(3), Ok(vec![0, 0, 2]));
        assert_eq!(FieldElement::zero().chi_digits(4), Ok(vec![0, 0, 0, 0]));
        assert_eq!(FieldElement::one().chi_digits(2), Ok(vec![1, 0]));
        // 3 − 2χ² has valuation ≥ 3
        let r =
            &FieldElement::from_int(3) - &(&FieldElement::from_int(2) * &FieldElement::chi_pow(2));
        assert!(r.v_pi() >= Valuation::Finite(3));
        assert_eq!(
            FieldElement::chi_pow(-1).chi_digits(1),
            Err(Error::NegativeValuation)
        );
    }

    #[test]
    fn conj_examples() {
        let w = FieldElement::omega();
        assert_eq!(w.conj(), &w * &w);
        assert_eq!(w.conj(), FieldElement::from_ints(-1, -1));
        assert_eq!(FieldElement::from_int(5).conj(), FieldElement::from_int(5));
        assert_eq!(&chi() * &chi().conj(), FieldElement::from_int(3));
    }

    #[test]
    fn inverse_and_division() {
        let x = FieldElement::from_ints(2, 7);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(FieldElement::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(x.div(&FieldElement::zero()), Err(Error::DivisionByZero));
        assert_eq!(
            &FieldElement::chi_pow(-4) * &FieldElement::chi_pow(4),
            FieldElement::one()
        );
    }

    #[test]
    fn string_round_trip() {
        for s in ["(1/2+-3/4w)", "(0+1w)", "(-7+0w)", "(5/3+2/9w)"] {
            let x: FieldElement = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("w".parse::<FieldElement>().unwrap(), FieldElement::omega());
        assert_eq!(
            "w^2".parse::<FieldElement>().unwrap(),
            FieldElement::omega().conj()
        );
        assert_eq!(
            "-w".parse::<FieldElement>().unwrap(),
            -FieldElement::omega()
        );
        assert_eq!(
            "12".parse::<FieldElement>().unwrap(),
            FieldElement::from_int(12)
        );
        assert_eq!(
            "-3/6".parse::<FieldElement>().unwrap(),
            FieldElement::from_ratio(-1, 2)
        );
        assert!("(1+w)".parse::<FieldElement>().is_err());
        assert!("1/0".parse::<FieldElement>().is_err());
    }
}
