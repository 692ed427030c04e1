use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use regex::Regex;

use super::eisenstein::EisensteinInteger;
use super::field::FieldElement;
use super::unit::Unit;
use super::valuation::Valuation;
use crate::error::Error;

/// An element `num / χ^exp` of ℤ[χ⁻¹].
///
/// Normalized so that χ never divides `num`; zero is `0 / χ^0`. The
/// exponent may be negative, in which case the value is integral and equals
/// `num · χ^(-exp)`. With this normalization `v_pi = -exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ChiFraction {
    num: EisensteinInteger,
    exp: i64,
}

impl ChiFraction {
    /// Build `num / χ^exp` and normalize.
    pub fn new(mut num: EisensteinInteger, mut exp: i64) -> Self {
        if num.is_zero() {
            return ChiFraction::zero();
        }
        while let Some(q) = num.div_chi() {
            num = q;
            exp -= 1;
        }
        ChiFraction { num, exp }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        ChiFraction {
            num: EisensteinInteger::one(),
            exp: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(EisensteinInteger::new(n, 0), 0)
    }

    pub fn from_unit(u: Unit) -> Self {
        ChiFraction {
            num: EisensteinInteger::from_unit(u),
            exp: 0,
        }
    }

    /// χ^k for any integer k.
    pub fn chi_pow(k: i64) -> Self {
        ChiFraction {
            num: EisensteinInteger::one(),
            exp: -k,
        }
    }

    /// The normalized numerator, coprime to χ.
    pub fn numerator(&self) -> &EisensteinInteger {
        &self.num
    }

    /// The normalized exponent; equals `-v_pi` for nonzero values.
    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0 && self.num == EisensteinInteger::one()
    }

    pub fn v_pi(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(-self.exp)
        }
    }

    pub fn conj(&self) -> Self {
        // conj(χ) = −ω²χ, so conj(z/χ^e) = conj(z)·(−ω)^e / χ^e.
        let u = Unit::new(self.exp.rem_euclid(2) == 1, self.exp.rem_euclid(3) as u8);
        ChiFraction {
            num: self.num.conj().mul_unit(u),
            exp: self.exp,
        }
    }

    pub fn mul_unit(&self, u: Unit) -> Self {
        ChiFraction {
            num: self.num.mul_unit(u),
            exp: self.exp,
        }
    }

    /// Multiply by χ^k.
    pub fn mul_chi_pow(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        ChiFraction {
            num: self.num.clone(),
            exp: self.exp - k,
        }
    }

    /// Numerator expressed over χ^e for a target `e ≥ self.exp`.
    fn lift_to(&self, e: i64) -> EisensteinInteger {
        debug_assert!(e >= self.exp);
        self.num.mul_chi_pow((e - self.exp) as u32)
    }

    /// Σ uᵢ·xᵢ computed with a single normalization.
    pub fn unit_combination(terms: &[(Unit, &ChiFraction)]) -> ChiFraction {
        let e = terms
            .iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(_, x)| x.exp)
            .max();
        let Some(e) = e else {
            return ChiFraction::zero();
        };
        let mut acc = EisensteinInteger::zero();
        for (u, x) in terms {
            if !x.is_zero() {
                acc = &acc + &x.lift_to(e).mul_unit(*u);
            }
        }
        ChiFraction::new(acc, e)
    }

    pub fn to_field(&self) -> FieldElement {
        FieldElement::from(self.num.clone()).mul_chi_pow(-self.exp)
    }

    /// Convert a field element, failing if it is not in ℤ[χ⁻¹].
    pub fn try_from_field(x: &FieldElement) -> Result<Self, Error> {
        if x.is_zero() {
            return Ok(ChiFraction::zero());
        }
        let v = x.v_pi().finite().expect("nonzero");
        // x·χ^(-v) has valuation 0; scale up so the numerator is integral.
        let k = (-v).max(0);
        let y = x.mul_chi_pow(k);
        let z = y.to_eisenstein().ok_or(Error::NotInRing)?;
        Ok(ChiFraction::new(z, k))
    }

    /// Numerator and nonnegative exponent for the wire grammar.
    fn wire_parts(&self) -> (EisensteinInteger, i64) {
        if self.exp >= 0 {
            (self.num.clone(), self.exp)
        } else {
            (self.num.mul_chi_pow((-self.exp) as u32), 0)
        }
    }
}

impl From<Unit> for ChiFraction {
    fn from(u: Unit) -> Self {
        ChiFraction::from_unit(u)
    }
}

impl Add for &ChiFraction {
    type Output = ChiFraction;
    fn add(self, rhs: &ChiFraction) -> ChiFraction {
        ChiFraction::unit_combination(&[(Unit::ONE, self), (Unit::ONE, rhs)])
    }
}

impl Sub for &ChiFraction {
    type Output = ChiFraction;
    fn sub(self, rhs: &ChiFraction) -> ChiFraction {
        ChiFraction::unit_combination(&[(Unit::ONE, self), (Unit::MINUS_ONE, rhs)])
    }
}

impl Mul for &ChiFraction {
    type Output = ChiFraction;
    fn mul(self, rhs: &ChiFraction) -> ChiFraction {
        if self.is_zero() || rhs.is_zero() {
            return ChiFraction::zero();
        }
        // χ is prime, so the product of χ-free numerators stays χ-free.
        ChiFraction {
            num: &self.num * &rhs.num,
            exp: self.exp + rhs.exp,
        }
    }
}

impl Neg for &ChiFraction {
    type Output = ChiFraction;
    fn neg(self) -> ChiFraction {
        ChiFraction {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

impl Neg for ChiFraction {
    type Output = ChiFraction;
    fn neg(self) -> ChiFraction {
        ChiFraction {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl fmt::Display for ChiFraction {
    /// `(p+qw)/chi^k`, with the suffix dropped when k = 0.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (z, k) = self.wire_parts();
        write!(f, "({}+{}w)", z.a, z.b)?;
        if k > 0 {
            write!(f, "/chi^{k}")?;
        }
        Ok(())
    }
}

impl FromStr for ChiFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        static RE: OnceLock<Regex> = OnceLock::new();
        let re = RE.get_or_init(|| {
            Regex::new(r"^\((-?\d+)\+(-?\d+)w\)(?:/chi\^(\d+))?$").expect("valid regex")
        });
        let s = s.trim();
        let c = re
            .captures(s)
            .ok_or_else(|| Error::Parse(format!("bad matrix entry `{s}`")))?;
        let a: BigInt = c[1].parse().map_err(|_| Error::Parse(s.to_string()))?;
        let b: BigInt = c[2].parse().map_err(|_| Error::Parse(s.to_string()))?;
        let k: i64 = match c.get(3) {
            Some(m) => m
                .as_str()
                .parse()
                .map_err(|_| Error::Parse(s.to_string()))?,
            None => 0,
        };
        if a.is_zero() && b.is_zero() {
            return Ok(ChiFraction::zero());
        }
        Ok(ChiFraction::new(EisensteinInteger { a, b }, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_strips_chi() {
        let x = ChiFraction::new(EisensteinInteger::new(3, 0), 2);
        // 3/χ² = −ω²
        assert_eq!(x, ChiFraction::from_unit(Unit::new(true, 2)));
        assert_eq!(
            ChiFraction::new(EisensteinInteger::new(3, 0), 0).v_pi(),
            Valuation::Finite(2)
        );
    }

    #[test]
    fn field_round_trip() {
        for a in -4..=4 {
            for b in -4..=4 {
                for e in -3..=3 {
                    let x = ChiFraction::new(EisensteinInteger::new(a, b), e);
                    let f = x.to_field();
                    assert_eq!(ChiFraction::try_from_field(&f).unwrap(), x);
                    assert_eq!(f.v_pi(), x.v_pi());
                    assert_eq!(x.conj().to_field(), f.conj());
                }
            }
        }
        assert_eq!(
            ChiFraction::try_from_field(&FieldElement::from_ratio(1, 2)),
            Err(Error::NotInRing)
        );
    }

    #[test]
    fn arithmetic_matches_field() {
        let xs: Vec<ChiFraction> = [(1, 2, 1), (0, 1, -2), (5, -1, 3), (0, 0, 0), (2, 2, 0)]
            .iter()
            .map(|&(a, b, e)| ChiFraction::new(EisensteinInteger::new(a, b), e))
            .collect();
        for x in &xs {
            for y in &xs {
                assert_eq!((x + y).to_field(), &x.to_field() + &y.to_field());
                assert_eq!((x - y).to_field(), &x.to_field() - &y.to_field());
                assert_eq!((x * y).to_field(), &x.to_field() * &y.to_field());
            }
        }
    }

    #[test]
    fn wire_round_trip() {
        let x = ChiFraction::new(EisensteinInteger::new(2, 3), 3);
        assert_eq!(x.to_string(), "(2+3w)/chi^3");
        assert_eq!(x.to_string().parse::<ChiFraction>().unwrap(), x);
        let y = ChiFraction::from_int(3);
        assert_eq!(y.to_string(), "(3+0w)");
        assert_eq!("(3+0w)".parse::<ChiFraction>().unwrap(), y);
        assert_eq!(
            "(0+0w)/chi^4".parse::<ChiFraction>().unwrap(),
            ChiFraction::zero()
        );
        // non-normalized input is accepted and normalized
        assert_eq!(
            "(3+0w)/chi^2".parse::<ChiFraction>().unwrap().to_string(),
            "(1+1w)"
        );
        assert!("(1/2+0w)".parse::<ChiFraction>().is_err());
    }
}
