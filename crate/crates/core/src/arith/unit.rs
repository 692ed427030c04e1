use std::fmt;

/// One of the six units ±ω^k of ℤ[ω].
///
/// Enumeration order is 1, ω, ω², −1, −ω, −ω² (index 0..6).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unit {
    negative: bool,
    omega_power: u8,
}

impl Unit {
    pub const ONE: Unit = Unit {
        negative: false,
        omega_power: 0,
    };
    pub const OMEGA: Unit = Unit {
        negative: false,
        omega_power: 1,
    };
    pub const OMEGA2: Unit = Unit {
        negative: false,
        omega_power: 2,
    };
    pub const MINUS_ONE: Unit = Unit {
        negative: true,
        omega_power: 0,
    };

    pub const fn new(negative: bool, omega_power: u8) -> Self {
        Unit {
            negative,
            omega_power: omega_power % 3,
        }
    }

    pub fn all() -> [Unit; 6] {
        [0, 1, 2, 3, 4, 5].map(Unit::from_index)
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < 6, "unit index out of range");
        Unit {
            negative: i >= 3,
            omega_power: (i % 3) as u8,
        }
    }

    pub fn index(self) -> usize {
        (self.negative as usize) * 3 + self.omega_power as usize
    }

    pub fn is_negative(self) -> bool {
        self.negative
    }

    pub fn omega_power(self) -> u8 {
        self.omega_power
    }

    pub fn omega_pow(k: i64) -> Self {
        Unit::new(false, k.rem_euclid(3) as u8)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Unit) -> Unit {
        Unit::new(
            self.negative ^ other.negative,
            self.omega_power + other.omega_power,
        )
    }

    pub fn inv(self) -> Unit {
        Unit::new(self.negative, (3 - self.omega_power) % 3)
    }

    /// Complex conjugate: ω ↦ ω².
    pub fn conj(self) -> Unit {
        self.inv()
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        match self.omega_power {
            0 => write!(f, "{sign}1"),
            1 => write!(f, "{sign}w"),
            _ => write!(f, "{sign}w^2"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        for u in Unit::all() {
            assert_eq!(u.mul(u.inv()), Unit::ONE);
            assert_eq!(Unit::from_index(u.index()), u);
            for v in Unit::all() {
                assert_eq!(u.mul(v), v.mul(u));
            }
        }
        assert_eq!(Unit::OMEGA.mul(Unit::OMEGA).mul(Unit::OMEGA), Unit::ONE);
    }
}
