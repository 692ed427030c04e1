use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::unit::Unit;
use super::valuation::Valuation;

/// An Eisenstein integer `a + bω` with ω² + ω + 1 = 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EisensteinInteger {
    pub a: BigInt,
    pub b: BigInt,
}

/// 3-adic valuation of a nonzero integer.
pub(crate) fn v3(n: &BigInt) -> u64 {
    debug_assert!(!n.is_zero());
    let three = BigInt::from(3);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&three);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

impl EisensteinInteger {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisensteinInteger {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn omega() -> Self {
        Self::new(0, 1)
    }

    /// χ = 1 − ω, the prime above 3.
    pub fn chi() -> Self {
        Self::new(1, -1)
    }

    pub fn from_unit(u: Unit) -> Self {
        let base = match u.omega_power() {
            0 => Self::new(1, 0),
            1 => Self::new(0, 1),
            _ => Self::new(-1, -1),
        };
        if u.is_negative() {
            -base
        } else {
            base
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// conj(a + bω) = (a − b) − bω.
    pub fn conj(&self) -> Self {
        EisensteinInteger {
            a: &self.a - &self.b,
            b: -&self.b,
        }
    }

    /// a² − ab + b².
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Multiplication by ω: ω(a + bω) = −b + (a − b)ω.
    pub fn mul_omega(&self) -> Self {
        EisensteinInteger {
            a: -&self.b,
            b: &self.a - &self.b,
        }
    }

    pub fn mul_unit(&self, u: Unit) -> Self {
        let mut out = match u.omega_power() {
            0 => self.clone(),
            1 => self.mul_omega(),
            _ => EisensteinInteger {
                a: &self.b - &self.a,
                b: -&self.a,
            },
        };
        if u.is_negative() {
            out.a = -out.a;
            out.b = -out.b;
        }
        out
    }

    /// x ≡ a + b (mod χ), since ω ≡ 1.
    pub fn residue_mod_chi(&self) -> u8 {
        (&self.a + &self.b)
            .mod_floor(&BigInt::from(3))
            .try_into()
            .unwrap_or(0)
    }

    pub fn divisible_by_chi(&self) -> bool {
        self.residue_mod_chi() == 0
    }

    pub fn divisible_by_three(&self) -> bool {
        let three = BigInt::from(3);
        self.a.is_multiple_of(&three) && self.b.is_multiple_of(&three)
    }

    /// Exact division by χ; `None` when χ does not divide.
    ///
    /// (a + bω)/χ = (a + bω)(2 + ω)/3 = ((2a − b) + (a + b)ω)/3.
    pub fn div_chi(&self) -> Option<Self> {
        let three = BigInt::from(3);
        let s = &self.a + &self.b;
        let (bq, br) = s.div_rem(&three);
        if !br.is_zero() {
            return None;
        }
        let t: BigInt = BigInt::from(2) * &self.a - &self.b;
        Some(EisensteinInteger {
            a: t / &three,
            b: bq,
        })
    }

    /// Exact division by 3; `None` when 3 does not divide.
    pub fn div_three(&self) -> Option<Self> {
        let three = BigInt::from(3);
        let (qa, ra) = self.a.div_rem(&three);
        let (qb, rb) = self.b.div_rem(&three);
        (ra.is_zero() && rb.is_zero()).then_some(EisensteinInteger { a: qa, b: qb })
    }

    /// χ(a + bω) = (a + b) + (2b − a)ω.
    pub fn mul_chi(&self) -> Self {
        EisensteinInteger {
            a: &self.a + &self.b,
            b: BigInt::from(2) * &self.b - &self.a,
        }
    }

    /// Multiply by χ^k, using χ² = −3ω for the even part.
    pub fn mul_chi_pow(&self, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let half = k / 2;
        let mut out = if half > 0 {
            let scale = num_traits::pow(BigInt::from(3), half as usize);
            let scaled = EisensteinInteger {
                a: &self.a * &scale,
                b: &self.b * &scale,
            };
            // (−ω)^half
            scaled.mul_unit(Unit::new(half % 2 == 1, (half % 3) as u8))
        } else {
            self.clone()
        };
        if k % 2 == 1 {
            out = out.mul_chi();
        }
        out
    }

    /// χ-adic valuation, computed as v₃ of the norm.
    pub fn v_pi(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        Valuation::Finite(v3(&self.norm()) as i64)
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }
}

impl Add for &EisensteinInteger {
    type Output = EisensteinInteger;
    fn add(self, rhs: &EisensteinInteger) -> EisensteinInteger {
        EisensteinInteger {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &EisensteinInteger {
    type Output = EisensteinInteger;
    fn sub(self, rhs: &EisensteinInteger) -> EisensteinInteger {
        EisensteinInteger {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &EisensteinInteger {
    type Output = EisensteinInteger;
    fn mul(self, rhs: &EisensteinInteger) -> EisensteinInteger {
        let bb = &self.b * &rhs.b;
        EisensteinInteger {
            a: &self.a * &rhs.a - &bb,
            b: &self.a * &rhs.b + &self.b * &rhs.a - bb,
        }
    }
}

impl Neg for EisensteinInteger {
    type Output = EisensteinInteger;
    fn neg(self) -> EisensteinInteger {
        EisensteinInteger {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &EisensteinInteger {
    type Output = EisensteinInteger;
    fn neg(self) -> EisensteinInteger {
        EisensteinInteger {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl fmt::Display for EisensteinInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}w", self.a, self.b)
    }
}
