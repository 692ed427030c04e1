//! The length function l, the metric d̃, membership in 𝒜, and Cartan decomposition.

use crate::arith::{FieldElement, Valuation};
use crate::error::Error;
use crate::matrix::{Mat3, Matrix3, Scalar};

fn check_invertible<T: Scalar>(g: &Mat3<T>) -> Result<(), Error> {
    if g.det().is_zero() {
        Err(Error::Singular)
    } else {
        Ok(())
    }
}

/// l(g) = −2 · min v_pi(g_ij).
pub fn l_value<T: Scalar>(g: &Mat3<T>) -> Result<i64, Error> {
    check_invertible(g)?;
    Ok(-2
        * g.min_valuation()
            .finite()
            .expect("invertible matrix has a nonzero entry"))
}

/// max(0, −min v_pi(g_ij)).
pub fn sde<T: Scalar>(g: &Mat3<T>) -> Result<i64, Error> {
    Ok((l_value(g)? / 2).max(0))
}

/// g*g is integral with determinant of valuation 0.
pub fn is_in_a(g: &Matrix3) -> Result<bool, Error> {
    check_invertible(g)?;
    Ok(g.conj_transpose().mul(g).is_integral_invertible())
}

/// d̃(g, h) = ½(l(g⁻¹h) + l(h⁻¹g)) for g, h ∈ 𝒜.
pub fn tilde_d(g: &Matrix3, h: &Matrix3) -> Result<i64, Error> {
    if !is_in_a(g)? || !is_in_a(h)? {
        return Err(Error::NotInA);
    }
    let gh = g.inverse()?.mul(h);
    let hg = h.inverse()?.mul(g);
    Ok((l_value(&gh)? + l_value(&hg)?) / 2)
}

/// g = k · diag(χ^λ) · k′ with k, k′ ∈ GL₃ of the valuation ring and λ descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanTriple {
    pub k: Matrix3,
    pub lambda: [i64; 3],
    pub k_prime: Matrix3,
}

impl CartanTriple {
    pub fn recompose(&self) -> Matrix3 {
        self.k
            .mul(&Matrix3::chi_diag(self.lambda))
            .mul(&self.k_prime)
    }
}

/// Smith elimination over the valuation ring, pivoting on a minimal-valuation
/// entry (smallest (row, col) on ties).
pub fn cartan_decompose(g: &Matrix3) -> Result<CartanTriple, Error> {
    check_invertible(g)?;
    let mut cur = g.clone();
    // invariant: k · cur · kp = g
    let mut k = Matrix3::identity();
    let mut kp = Matrix3::identity();
    let mut lambda = [0i64; 3];

    for t in 0..3 {
        let mut best: Option<(Valuation, usize, usize)> = None;
        for i in t..3 {
            for j in t..3 {
                let v = cur.e[i][j].v_pi();
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let (v, pi, pj) = best.expect("nonempty block");
        let Valuation::Finite(v) = v else {
            return Err(Error::Singular);
        };
        // swapping is self-inverse: cur ← E cur, k ← k E
        cur.e.swap(t, pi);
        swap_cols(&mut k, t, pi);
        swap_cols(&mut cur, t, pj);
        kp.e.swap(t, pj);

        let p = cur.e[t][t].clone();
        let pinv = p.inv()?;
        for i in t + 1..3 {
            let f = &cur.e[i][t] * &pinv;
            if f.is_zero() {
                continue;
            }
            // row_i −= f·row_t; k gains f·col_i on col_t
            for j in 0..3 {
                let d = &f * &cur.e[t][j];
                cur.e[i][j] -= &d;
                let d = &f * &k.e[j][i];
                k.e[j][t] += &d;
            }
        }
        for j in t + 1..3 {
            let f = &cur.e[t][j] * &pinv;
            if f.is_zero() {
                continue;
            }
            // col_j −= f·col_t; kp gains f·row_j on row_t
            for i in 0..3 {
                let d = &f * &cur.e[i][t];
                cur.e[i][j] -= &d;
                let d = &f * &kp.e[j][i];
                kp.e[t][i] += &d;
            }
        }
        // absorb the unit part of the pivot into k
        let u = p.mul_chi_pow(-v);
        for i in 0..3 {
            k.e[i][t] = &k.e[i][t] * &u;
        }
        cur.e[t][t] = FieldElement::chi_pow(v);
        lambda[t] = v;
    }

    // pivots come out ascending; reverse to descending
    let order = {
        let mut o = [0usize, 1, 2];
        o.sort_by_key(|&i| std::cmp::Reverse((lambda[i], std::cmp::Reverse(i))));
        o
    };
    let k = Matrix3::from_fn(|i, j| k.e[i][order[j]].clone());
    let kp = Matrix3::from_fn(|i, j| kp.e[order[i]][j].clone());
    let lambda = order.map(|i| lambda[i]);
    Ok(CartanTriple {
        k,
        lambda,
        k_prime: kp,
    })
}

fn swap_cols(m: &mut Matrix3, a: usize, b: usize) {
    if a != b {
        for row in m.e.iter_mut() {
            row.swap(a, b);
        }
    }
}
