//! Exact 3×3 matrices.

use std::fmt;

use crate::arith::{ChiFraction, FieldElement, Unit, Valuation};
use crate::error::Error;

/// Ring operations shared by [`FieldElement`] and [`ChiFraction`].
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn v_pi(&self) -> Valuation;
    fn mul_unit(&self, u: Unit) -> Self;
    fn mul_chi_pow(&self, k: i64) -> Self;
}

impl Scalar for FieldElement {
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn one() -> Self {
        FieldElement::one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        FieldElement::conj(self)
    }
    fn v_pi(&self) -> Valuation {
        FieldElement::v_pi(self)
    }
    fn mul_unit(&self, u: Unit) -> Self {
        FieldElement::mul_unit(self, u)
    }
    fn mul_chi_pow(&self, k: i64) -> Self {
        FieldElement::mul_chi_pow(self, k)
    }
}

impl Scalar for ChiFraction {
    fn zero() -> Self {
        ChiFraction::zero()
    }
    fn one() -> Self {
        ChiFraction::one()
    }
    fn is_zero(&self) -> bool {
        ChiFraction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        ChiFraction::conj(self)
    }
    fn v_pi(&self) -> Valuation {
        ChiFraction::v_pi(self)
    }
    fn mul_unit(&self, u: Unit) -> Self {
        ChiFraction::mul_unit(self, u)
    }
    fn mul_chi_pow(&self, k: i64) -> Self {
        ChiFraction::mul_chi_pow(self, k)
    }
}

/// A 3×3 matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3<T> {
    pub e: [[T; 3]; 3],
}

/// Matrices over ℚ(ω).
pub type Matrix3 = Mat3<FieldElement>;

impl<T: Scalar> Mat3<T> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        Mat3 {
            e: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| T::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diag(d: [T; 3]) -> Self {
        let [a, b, c] = d;
        let mut m = Self::zero();
        m.e[0][0] = a;
        m.e[1][1] = b;
        m.e[2][2] = c;
        m
    }

    /// diag(χ^k₀, χ^k₁, χ^k₂).
    pub fn chi_diag(k: [i64; 3]) -> Self {
        Self::diag(k.map(|k| T::one().mul_chi_pow(k)))
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.e[i][j]
    }

    pub fn column(&self, j: usize) -> [T; 3] {
        std::array::from_fn(|i| self.e[i][j].clone())
    }

    pub fn from_columns(c: &[[T; 3]; 3]) -> Self {
        Self::from_fn(|i, j| c[j][i].clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| {
            let mut acc = T::zero();
            for k in 0..3 {
                if !self.e[i][k].is_zero() && !o.e[k][j].is_zero() {
                    acc = acc.add(&self.e[i][k].mul(&o.e[k][j]));
                }
            }
            acc
        })
    }

    pub fn apply(&self, v: &[T; 3]) -> [T; 3] {
        std::array::from_fn(|i| (0..3).fold(T::zero(), |acc, k| acc.add(&self.e[i][k].mul(&v[k]))))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.e[j][i].clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(|i, j| self.e[j][i].conj())
    }

    pub fn scale_chi(&self, k: i64) -> Self {
        Self::from_fn(|i, j| self.e[i][j].mul_chi_pow(k))
    }

    pub fn scale_unit(&self, u: Unit) -> Self {
        Self::from_fn(|i, j| self.e[i][j].mul_unit(u))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(|i, j| self.e[i][j].neg())
    }

    pub fn det(&self) -> T {
        let m = &self.e;
        let t0 = m[0][0].mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])));
        let t1 = m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0])));
        let t2 = m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0])));
        t0.sub(&t1).add(&t2)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Minimum entry valuation.
    pub fn min_valuation(&self) -> Valuation {
        self.e
            .iter()
            .flatten()
            .map(|x| x.v_pi())
            .min()
            .expect("nine entries")
    }

    /// All entries have v_pi ≥ 0.
    pub fn is_integral(&self) -> bool {
        self.min_valuation().is_integral()
    }

    /// Integral with determinant of valuation 0, i.e. in GL₃ of the valuation ring.
    pub fn is_integral_invertible(&self) -> bool {
        self.is_integral() && self.det().v_pi() == Valuation::Finite(0)
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Mat3<U> {
        Mat3 {
            e: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.e[i][j]))),
        }
    }
}

impl Matrix3 {
    pub fn inverse(&self) -> Result<Matrix3, Error> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::Singular);
        }
        let di = d.inv()?;
        let m = &self.e;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0])
        };
        // adjugate: adj[i][j] = (−1)^{i+j} minor(j, i)
        let idx = |k: usize| -> (usize, usize) {
            match k {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            }
        };
        Ok(Matrix3::from_fn(|i, j| {
            let (r0, r1) = idx(j);
            let (c0, c1) = idx(i);
            let minor = cof(r0, r1, c0, c1);
            let signed = if (i + j) % 2 == 0 { minor } else { -minor };
            &signed * &di
        }))
    }
}

impl Mat3<ChiFraction> {
    pub fn to_field(&self) -> Matrix3 {
        self.map(|x| x.to_field())
    }

    pub fn try_from_field(m: &Matrix3) -> Result<Self, Error> {
        let mut out = Mat3::<ChiFraction>::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] = ChiFraction::try_from_field(&m.e[i][j])?;
            }
        }
        Ok(out)
    }
}

impl<T: fmt::Display> fmt::Display for Mat3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.e.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(a: i64, b: i64) -> FieldElement {
        FieldElement::from_ints(a, b)
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix3::from_fn(|i, j| fe((i * 3 + j) as i64 % 5 - 2, (i + 2 * j) as i64 % 3));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        assert_eq!(Matrix3::zero().inverse(), Err(Error::Singular));
    }

    #[test]
    fn chi_diag_valuations() {
        let d = Matrix3::chi_diag([1, 0, -1]);
        assert_eq!(d.min_valuation(), Valuation::Finite(-1));
        assert_eq!(d.det(), FieldElement::one());
        let c = Mat3::<ChiFraction>::chi_diag([1, 0, -1]);
        assert_eq!(c.to_field(), d);
    }
}
