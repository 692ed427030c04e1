//! The generators H, S, R, gate words, and exact unitaries over ℤ[1/χ].

use std::fmt;
use std::str::FromStr;

use crate::arith::{ChiFraction, Unit};
use crate::error::Error;
use crate::matrix::{Mat3, Matrix3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    H,
    S,
    R,
}

impl Gate {
    pub const ALL: [Gate; 3] = [Gate::H, Gate::S, Gate::R];

    pub fn letter(self) -> char {
        match self {
            Gate::H => 'H',
            Gate::S => 'S',
            Gate::R => 'R',
        }
    }

    pub fn from_letter(c: char) -> Option<Gate> {
        match c {
            'H' => Some(Gate::H),
            'S' => Some(Gate::S),
            'R' => Some(Gate::R),
            _ => None,
        }
    }

    /// Multiplicative order: H⁴ = S³ = R² = I.
    pub fn order(self) -> usize {
        match self {
            Gate::H => 4,
            Gate::S => 3,
            Gate::R => 2,
        }
    }

    pub fn matrix(self) -> UnitaryMatrix {
        match self {
            Gate::H => h_matrix(),
            Gate::S => UnitaryMatrix(Mat3::diag([
                ChiFraction::one(),
                ChiFraction::from_unit(Unit::OMEGA),
                ChiFraction::one(),
            ])),
            Gate::R => UnitaryMatrix(Mat3::diag([
                ChiFraction::one(),
                ChiFraction::one(),
                ChiFraction::from_unit(Unit::MINUS_ONE),
            ])),
        }
    }
}

/// Scalar of H: i/√3 = −ω²/χ.
const H_PHASE: Unit = Unit::new(true, 2);

fn h_matrix() -> UnitaryMatrix {
    UnitaryMatrix(Mat3::from_fn(|j, k| {
        ChiFraction::from_unit(H_PHASE.mul(Unit::omega_pow((j * k) as i64))).mul_chi_pow(-1)
    }))
}

/// The cyclic shift X eⱼ = e_{j+1}.
pub fn x_matrix() -> UnitaryMatrix {
    UnitaryMatrix(Mat3::from_fn(|i, j| {
        if i == (j + 1) % 3 {
            ChiFraction::one()
        } else {
            ChiFraction::zero()
        }
    }))
}

/// A finite word over {H, S, R}, evaluated left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateWord(pub Vec<Gate>);

impl GateWord {
    pub fn new(gates: Vec<Gate>) -> Self {
        GateWord(gates)
    }

    pub fn empty() -> Self {
        GateWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.0
    }

    pub fn push(&mut self, g: Gate) {
        self.0.push(g);
    }

    pub fn extend(&mut self, w: &GateWord) {
        self.0.extend_from_slice(&w.0);
    }

    /// Number of occurrences of each generator, in the order H, S, R.
    pub fn counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for g in &self.0 {
            c[*g as usize] += 1;
        }
        c
    }

    /// A word for the inverse, using positive powers only.
    pub fn inverse(&self) -> GateWord {
        let mut out = Vec::new();
        for g in self.0.iter().rev() {
            out.extend(std::iter::repeat_n(*g, g.order() - 1));
        }
        GateWord(out)
    }

    pub fn eval(&self) -> UnitaryMatrix {
        eval_word(self)
    }
}

impl fmt::Display for GateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{}", g.letter())?;
        }
        Ok(())
    }
}

impl FromStr for GateWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                Gate::from_letter(c).ok_or_else(|| Error::Parse(format!("unknown gate `{c}`")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(GateWord)
    }
}

/// Product of the word's generators, left to right; the empty word gives I.
pub fn eval_word(w: &GateWord) -> UnitaryMatrix {
    let mut m = UnitaryMatrix::identity();
    for g in &w.0 {
        m = m.right_mul_gate(*g);
    }
    m
}

/// An exactly unitary 3×3 matrix with entries in ℤ[1/χ].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitaryMatrix(Mat3<ChiFraction>);

impl UnitaryMatrix {
    pub fn new(m: Mat3<ChiFraction>) -> Result<Self, Error> {
        if !m.mul(&m.conj_transpose()).is_identity() {
            return Err(Error::NotUnitary);
        }
        Ok(UnitaryMatrix(m))
    }

    /// Checks unitarity first, then membership of every entry in ℤ[1/χ].
    pub fn from_field(m: &Matrix3) -> Result<Self, Error> {
        if !m.mul(&m.conj_transpose()).is_identity() {
            return Err(Error::NotUnitary);
        }
        Ok(UnitaryMatrix(Mat3::try_from_field(m)?))
    }

    pub(crate) fn new_unchecked(m: Mat3<ChiFraction>) -> Self {
        UnitaryMatrix(m)
    }

    pub fn identity() -> Self {
        UnitaryMatrix(Mat3::identity())
    }

    pub fn matrix(&self) -> &Mat3<ChiFraction> {
        &self.0
    }

    pub fn to_field(&self) -> Matrix3 {
        self.0.to_field()
    }

    pub fn mul(&self, o: &UnitaryMatrix) -> UnitaryMatrix {
        UnitaryMatrix(self.0.mul(&o.0))
    }

    pub fn inverse(&self) -> UnitaryMatrix {
        UnitaryMatrix(self.0.conj_transpose())
    }

    /// −2 · min v_pi over entries.
    pub fn l_value(&self) -> i64 {
        -2 * self
            .0
            .min_valuation()
            .finite()
            .expect("unitary rows are nonzero")
    }

    /// Largest χ-denominator exponent, floored at 0.
    pub fn sde(&self) -> i64 {
        (self.l_value() / 2).max(0)
    }

    /// g · self without a general multiplication.
    pub fn left_mul_gate(&self, g: Gate) -> UnitaryMatrix {
        let m = &self.0;
        match g {
            Gate::S => {
                let mut out = m.clone();
                out.e[1] = m.e[1].clone().map(|x| x.mul_unit(Unit::OMEGA));
                UnitaryMatrix(out)
            }
            Gate::R => {
                let mut out = m.clone();
                out.e[2] = m.e[2].clone().map(|x| -x);
                UnitaryMatrix(out)
            }
            Gate::H => UnitaryMatrix(Mat3::from_fn(|i, j| {
                ChiFraction::unit_combination(&[
                    (H_PHASE, &m.e[0][j]),
                    (H_PHASE.mul(Unit::omega_pow(i as i64)), &m.e[1][j]),
                    (H_PHASE.mul(Unit::omega_pow(2 * i as i64)), &m.e[2][j]),
                ])
                .mul_chi_pow(-1)
            })),
        }
    }

    /// self · g without a general multiplication.
    pub fn right_mul_gate(&self, g: Gate) -> UnitaryMatrix {
        let m = &self.0;
        match g {
            Gate::S => {
                let mut out = m.clone();
                for i in 0..3 {
                    out.e[i][1] = m.e[i][1].mul_unit(Unit::OMEGA);
                }
                UnitaryMatrix(out)
            }
            Gate::R => {
                let mut out = m.clone();
                for i in 0..3 {
                    out.e[i][2] = -&m.e[i][2];
                }
                UnitaryMatrix(out)
            }
            Gate::H => UnitaryMatrix(Mat3::from_fn(|i, k| {
                ChiFraction::unit_combination(&[
                    (H_PHASE, &m.e[i][0]),
                    (H_PHASE.mul(Unit::omega_pow(k as i64)), &m.e[i][1]),
                    (H_PHASE.mul(Unit::omega_pow(2 * k as i64)), &m.e[i][2]),
                ])
                .mul_chi_pow(-1)
            })),
        }
    }
}

impl fmt::Display for UnitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
