//! Rank-3 lattices over the valuation ring at χ, in canonical Hermite form.

use std::fmt;
use std::str::FromStr;

use crate::arith::{ChiFraction, FieldElement, Valuation};
use crate::error::Error;
use crate::f3::F3Matrix;
use crate::matrix::{Mat3, Matrix3};

/// A lattice g·𝒪³ stored by its canonical basis.
///
/// The basis is lower triangular with diagonal χ^{aᵢ}; each entry below the
/// diagonal in row i is the truncated χ-adic expansion Σ_{n<aᵢ} dₙχⁿ with digits
/// in {0,1,2}. Two lattices are equal iff their canonical bases coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    basis: Mat3<ChiFraction>,
}

type Column = [FieldElement; 3];

fn scale_col(c: &Column, f: &FieldElement) -> Column {
    std::array::from_fn(|i| &c[i] * f)
}

/// The representative of x modulo χ^a with digits in {0,1,2}.
fn digit_representative(x: &FieldElement, a: i64) -> Result<FieldElement, Error> {
    let Valuation::Finite(v) = x.v_pi() else {
        return Ok(FieldElement::zero());
    };
    if v >= a {
        return Ok(FieldElement::zero());
    }
    let digits = x.mul_chi_pow(-v).chi_digits((a - v) as usize)?;
    let mut r = FieldElement::zero();
    for (m, d) in digits.iter().enumerate() {
        if *d != 0 {
            r += &FieldElement::chi_pow(m as i64 + v)
                .scale(&num_rational::BigRational::from_integer((*d).into()));
        }
    }
    Ok(r)
}

/// Canonical basis of the lattice generated by `gens`.
fn hermite_form(mut cols: Vec<Column>) -> Result<Mat3<ChiFraction>, Error> {
    if cols.len() < 3 {
        return Err(Error::Singular);
    }
    let mut exps = [0i64; 3];
    for i in 0..3 {
        let mut best: Option<(i64, usize)> = None;
        for (j, c) in cols.iter().enumerate().skip(i) {
            if let Valuation::Finite(v) = c[i].v_pi() {
                if best.is_none_or(|(bv, _)| v < bv) {
                    best = Some((v, j));
                }
            }
        }
        let (a, j) = best.ok_or(Error::Singular)?;
        cols.swap(i, j);
        let pinv = cols[i][i].inv()?;
        let (head, tail) = cols.split_at_mut(i + 1);
        let pivot = &head[i];
        for c in tail.iter_mut() {
            if c[i].is_zero() {
                continue;
            }
            let f = &c[i] * &pinv;
            for r in i..3 {
                let d = &f * &pivot[r];
                c[r] -= &d;
            }
        }
        let u = &FieldElement::chi_pow(a) * &pinv;
        cols[i] = scale_col(&cols[i], &u);
        cols[i][i] = FieldElement::chi_pow(a);
        exps[i] = a;
    }
    cols.truncate(3);
    // reduce below-diagonal entries, rows ascending within each column
    for j in 0..3 {
        for i in j + 1..3 {
            let x = cols[j][i].clone();
            let r = digit_representative(&x, exps[i])?;
            if r == x {
                continue;
            }
            let q = (&x - &r).mul_chi_pow(-exps[i]);
            let (left, right) = cols.split_at_mut(i);
            for k in i..3 {
                let d = &q * &right[0][k];
                left[j][k] -= &d;
            }
            left[j][i] = r;
        }
    }
    let mut out = Mat3::<ChiFraction>::zero();
    for (j, c) in cols.iter().enumerate() {
        for i in 0..3 {
            out.e[i][j] = ChiFraction::try_from_field(&c[i])?;
        }
    }
    Ok(out)
}

impl Lattice {
    /// The lattice spanned over 𝒪 by the given vectors; they must span F³.
    pub fn from_generators(gens: &[Column]) -> Result<Lattice, Error> {
        Ok(Lattice {
            basis: hermite_form(gens.to_vec())?,
        })
    }

    /// The lattice g·𝒪³ spanned by the columns of g.
    pub fn from_basis(g: &Matrix3) -> Result<Lattice, Error> {
        Self::from_generators(&[g.column(0), g.column(1), g.column(2)])
    }

    /// 𝒪³.
    pub fn standard() -> Lattice {
        Lattice {
            basis: Mat3::identity(),
        }
    }

    pub fn basis(&self) -> &Mat3<ChiFraction> {
        &self.basis
    }

    pub fn basis_field(&self) -> Matrix3 {
        self.basis.to_field()
    }

    /// Exponents aᵢ of the diagonal χ^{aᵢ}.
    pub fn exponents(&self) -> [i64; 3] {
        std::array::from_fn(|i| {
            self.basis.e[i][i]
                .v_pi()
                .finite()
                .expect("nonzero diagonal")
        })
    }

    /// v_pi of the basis determinant.
    pub fn det_valuation(&self) -> i64 {
        self.exponents().iter().sum()
    }

    /// Λ♯ = (B*)⁻¹ 𝒪³.
    pub fn dual(&self) -> Lattice {
        let b = self.basis_field();
        let d = b
            .conj_transpose()
            .inverse()
            .expect("canonical basis is invertible");
        Lattice::from_basis(&d).expect("dual basis is invertible")
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Lattice) -> bool {
        let b = self
            .basis_field()
            .inverse()
            .expect("canonical basis is invertible");
        b.mul(&other.basis_field()).is_integral()
    }

    pub fn contains_vector(&self, v: &Column) -> bool {
        let b = self
            .basis_field()
            .inverse()
            .expect("canonical basis is invertible");
        b.apply(v).iter().all(|x| x.v_pi().is_integral())
    }

    /// Gram matrix B*B of the hermitian form ⟨x, y⟩ = Σ xᵢȳᵢ on the basis.
    pub fn gram(&self) -> Matrix3 {
        let b = self.basis_field();
        b.conj_transpose().mul(&b)
    }

    /// The Gram matrix is integral with unit determinant.
    pub fn is_self_dual(&self) -> bool {
        self.gram().is_integral_invertible()
    }

    /// χ^k · Λ.
    pub fn scale_chi(&self, k: i64) -> Lattice {
        // the canonical form of χ^kΛ is χ^k times the canonical form of Λ
        Lattice {
            basis: self.basis.scale_chi(k),
        }
    }

    /// Given Λ♯ = χ^i Λ, return the self-dual lattice χ^{i/2} Λ.
    pub fn self_dualize(&self) -> Result<Lattice, Error> {
        // v(det Λ♯) = −v(det Λ), so i = −2 v(det Λ) / 3
        let d = self.det_valuation();
        if (2 * d) % 3 != 0 {
            return Err(Error::NotPiEquivalentToDual);
        }
        let i = -2 * d / 3;
        if self.dual() != self.scale_chi(i) {
            return Err(Error::NotPiEquivalentToDual);
        }
        if i % 2 != 0 {
            return Err(Error::OddExponent(i));
        }
        Ok(self.scale_chi(i / 2))
    }

    /// The multiple χ^k Λ whose least entry valuation is 0.
    pub fn homothety_representative(&self) -> Lattice {
        let m = self.basis.min_valuation().finite().expect("nonzero basis");
        self.scale_chi(-m)
    }

    /// Residues mod χ of an integral matrix, as an 𝔽₃ matrix.
    pub(crate) fn residue_matrix(m: &Matrix3) -> Result<F3Matrix, Error> {
        let mut out = [[0u8; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = m.e[i][j].residue_mod_chi()?;
            }
        }
        Ok(F3Matrix(out))
    }

    /// Canonical key: entries row by row, `,` between entries and `;` between rows.
    pub fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..3 {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..3 {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.basis.e[i][j])?;
            }
        }
        Ok(())
    }
}

impl FromStr for Lattice {
    type Err = Error;

    /// Parses a key and checks that it is already canonical.
    fn from_str(s: &str) -> Result<Self, Error> {
        let rows: Vec<&str> = s.split(';').collect();
        if rows.len() != 3 {
            return Err(Error::Parse(format!("lattice key needs 3 rows: `{s}`")));
        }
        let mut m = Mat3::<ChiFraction>::zero();
        for (i, row) in rows.iter().enumerate() {
            let entries: Vec<&str> = row.split(',').collect();
            if entries.len() != 3 {
                return Err(Error::Parse(format!(
                    "lattice key row needs 3 entries: `{row}`"
                )));
            }
            for (j, e) in entries.iter().enumerate() {
                m.e[i][j] = e.parse()?;
            }
        }
        let lat = Lattice::from_basis(&m.to_field())?;
        if lat.basis != m {
            return Err(Error::Parse(format!("lattice key is not canonical: `{s}`")));
        }
        Ok(lat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{Gate, GateWord};

    fn unitary(word: &str) -> Matrix3 {
        word.parse::<GateWord>().unwrap().eval().to_field()
    }

    #[test]
    fn standard_lattice() {
        let o = Lattice::standard();
        assert_eq!(Lattice::from_basis(&Matrix3::identity()).unwrap(), o);
        assert_eq!(o.dual(), o);
        assert!(o.is_self_dual());
        assert_eq!(Lattice::from_basis(&unitary("SRSR")).unwrap(), o);
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let g = unitary("HSHRH");
        let l1 = Lattice::from_basis(&g).unwrap();
        // right multiplication by an integral invertible matrix keeps the lattice
        let k = Matrix3::from_fn(|i, j| {
            FieldElement::from_ints((i + 2 * j) as i64 % 3 - 1, (i == j) as i64)
        });
        assert!(k.is_integral_invertible());
        let l2 = Lattice::from_basis(&g.mul(&k)).unwrap();
        assert_eq!(l1, l2);
        assert_eq!(l1.key().parse::<Lattice>().unwrap(), l1);
    }

    #[test]
    fn self_duality() {
        let h = Lattice::from_basis(&Gate::H.matrix().to_field()).unwrap();
        assert!(h.is_self_dual());
        assert_eq!(h.dual(), h);
        assert_ne!(h, Lattice::standard());
        let d = Lattice::from_basis(&Matrix3::chi_diag([1, 0, 0])).unwrap();
        assert!(!d.is_self_dual());
        assert_eq!(d.gram().det().v_pi(), Valuation::Finite(2));
    }

    #[test]
    fn self_dualize_examples() {
        let o = Lattice::standard();
        assert_eq!(o.scale_chi(1).self_dualize(), Ok(o.clone()));
        assert_eq!(o.self_dualize(), Ok(o.clone()));
        let h = Lattice::from_basis(&unitary("HSH")).unwrap();
        assert_eq!(h.scale_chi(3).self_dualize(), Ok(h.clone()));
        assert_eq!(h.scale_chi(-2).self_dualize(), Ok(h));
        let d = Lattice::from_basis(&Matrix3::chi_diag([1, 0, 0])).unwrap();
        assert_eq!(d.self_dualize(), Err(Error::NotPiEquivalentToDual));
    }

    #[test]
    fn inclusion_and_dual_reverse() {
        let o = Lattice::standard();
        let big = Lattice::from_generators(&[
            [
                FieldElement::one(),
                FieldElement::zero(),
                FieldElement::zero(),
            ],
            [
                FieldElement::zero(),
                FieldElement::one(),
                FieldElement::zero(),
            ],
            [
                FieldElement::zero(),
                FieldElement::zero(),
                FieldElement::one(),
            ],
            [
                FieldElement::chi_pow(-1),
                FieldElement::chi_pow(-1),
                FieldElement::chi_pow(-1),
            ],
        ])
        .unwrap();
        assert!(big.contains(&o));
        assert!(!o.contains(&big));
        assert!(o.dual().contains(&big.dual()));
        assert_eq!(big.det_valuation(), -1);
    }

    #[test]
    fn homothety_representative_has_zero_minimum() {
        let h = Lattice::from_basis(&unitary("HSHSH")).unwrap();
        for k in -3..=3 {
            let r = h.scale_chi(k).homothety_representative();
            assert_eq!(r.basis().min_valuation(), Valuation::Finite(0));
            assert_eq!(r, h.homothety_representative());
        }
    }

    #[test]
    fn digit_representatives() {
        let x = FieldElement::from_int(5);
        // 5 ≡ 2 (mod χ)
        assert_eq!(
            digit_representative(&x, 1).unwrap(),
            FieldElement::from_int(2)
        );
        assert_eq!(
            digit_representative(&FieldElement::chi_pow(-1), 0).unwrap(),
            FieldElement::chi_pow(-1)
        );
        assert_eq!(
            digit_representative(&FieldElement::chi_pow(2), 2).unwrap(),
            FieldElement::zero()
        );
    }
}
