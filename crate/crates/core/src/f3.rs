//! Linear algebra and bilinear forms over 𝔽₃ in dimension 3.
//!
//! Everything here is brute force over the 27 vectors of 𝔽₃³.

use std::fmt;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F3Vector(pub [u8; 3]);

impl F3Vector {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        F3Vector([red(x), red(y), red(z)])
    }

    pub fn zero() -> Self {
        F3Vector([0; 3])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 3]
    }

    /// All 27 vectors in lexicographic order.
    pub fn all() -> impl Iterator<Item = F3Vector> {
        (0..27u8).map(|n| F3Vector([n / 9, (n / 3) % 3, n % 3]))
    }

    pub fn add(&self, o: &F3Vector) -> F3Vector {
        F3Vector(std::array::from_fn(|i| (self.0[i] + o.0[i]) % 3))
    }

    pub fn scale(&self, c: u8) -> F3Vector {
        F3Vector(self.0.map(|x| (x * c) % 3))
    }

    /// Standard dot product Σ xᵢyᵢ.
    pub fn dot(&self, o: &F3Vector) -> u8 {
        ((0..3)
            .map(|i| self.0[i] as u32 * o.0[i] as u32)
            .sum::<u32>()
            % 3) as u8
    }

    /// Scale so the first nonzero coordinate is 1.
    pub fn normalized(&self) -> F3Vector {
        match self.0.iter().find(|&&x| x != 0) {
            Some(&2) => self.scale(2),
            _ => *self,
        }
    }
}

impl fmt::Display for F3Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

fn red(x: i64) -> u8 {
    x.rem_euclid(3) as u8
}

/// A 3×3 matrix over 𝔽₃, acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct F3Matrix(pub [[u8; 3]; 3]);

impl F3Matrix {
    pub fn new(rows: [[i64; 3]; 3]) -> Self {
        F3Matrix(rows.map(|r| r.map(red)))
    }

    pub fn identity() -> Self {
        Self::diag([1, 1, 1])
    }

    pub fn diag(d: [i64; 3]) -> Self {
        let mut m = [[0; 3]; 3];
        for i in 0..3 {
            m[i][i] = red(d[i]);
        }
        F3Matrix(m)
    }

    pub fn from_columns(c: [F3Vector; 3]) -> Self {
        F3Matrix(std::array::from_fn(|i| std::array::from_fn(|j| c[j].0[i])))
    }

    /// All 3⁹ matrices, used for exhaustive checks.
    pub fn all() -> impl Iterator<Item = F3Matrix> {
        (0..19683u32).map(|mut n| {
            let mut m = [[0u8; 3]; 3];
            for i in (0..9).rev() {
                m[i / 3][i % 3] = (n % 3) as u8;
                n /= 3;
            }
            F3Matrix(m)
        })
    }

    pub fn transpose(&self) -> Self {
        F3Matrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i])
        }))
    }

    pub fn neg(&self) -> Self {
        F3Matrix(self.0.map(|r| r.map(|x| (3 - x) % 3)))
    }

    pub fn mul(&self, o: &F3Matrix) -> Self {
        F3Matrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                ((0..3)
                    .map(|k| self.0[i][k] as u32 * o.0[k][j] as u32)
                    .sum::<u32>()
                    % 3) as u8
            })
        }))
    }

    pub fn apply(&self, v: &F3Vector) -> F3Vector {
        F3Vector(std::array::from_fn(|i| {
            ((0..3)
                .map(|k| self.0[i][k] as u32 * v.0[k] as u32)
                .sum::<u32>()
                % 3) as u8
        }))
    }

    pub fn det(&self) -> u8 {
        let m = self.0.map(|r| r.map(|x| x as i64));
        red(m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.transpose() == self.neg()
    }

    /// ⟨x, y⟩_A = ⟨Ax, y⟩.
    pub fn form(&self, x: &F3Vector, y: &F3Vector) -> u8 {
        self.apply(x).dot(y)
    }

    /// Vectors x with Ax = 0.
    pub fn kernel(&self) -> Vec<F3Vector> {
        F3Vector::all()
            .filter(|v| self.apply(v).is_zero())
            .collect()
    }
}

/// A one-dimensional subspace, stored by its normalized spanning vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F3Line(F3Vector);

impl F3Line {
    pub fn span(v: F3Vector) -> Option<Self> {
        (!v.is_zero()).then(|| F3Line(v.normalized()))
    }

    pub fn rep(&self) -> F3Vector {
        self.0
    }

    pub fn contains(&self, v: &F3Vector) -> bool {
        v.is_zero() || v.normalized() == self.0
    }
}

/// A two-dimensional subspace {x : n·x = 0}, stored by its normalized normal vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F3Plane(F3Vector);

impl F3Plane {
    pub fn with_normal(n: F3Vector) -> Option<Self> {
        (!n.is_zero()).then(|| F3Plane(n.normalized()))
    }

    /// The plane spanned by two independent vectors.
    pub fn spanned_by(u: &F3Vector, w: &F3Vector) -> Option<Self> {
        let n = F3Vector::new(
            u.0[1] as i64 * w.0[2] as i64 - u.0[2] as i64 * w.0[1] as i64,
            u.0[2] as i64 * w.0[0] as i64 - u.0[0] as i64 * w.0[2] as i64,
            u.0[0] as i64 * w.0[1] as i64 - u.0[1] as i64 * w.0[0] as i64,
        );
        Self::with_normal(n)
    }

    pub fn normal(&self) -> F3Vector {
        self.0
    }

    pub fn contains(&self, v: &F3Vector) -> bool {
        self.0.dot(v) == 0
    }

    /// The 9 vectors of the plane in lexicographic order.
    pub fn vectors(&self) -> Vec<F3Vector> {
        F3Vector::all().filter(|v| self.contains(v)).collect()
    }

    /// Two independent vectors spanning the plane, the lexicographically first pair
    /// of normalized vectors.
    pub fn basis(&self) -> [F3Vector; 2] {
        let lines: Vec<F3Vector> = self.lines().iter().map(|l| l.rep()).collect();
        [lines[0], lines[1]]
    }

    /// The 4 lines inside the plane.
    pub fn lines(&self) -> Vec<F3Line> {
        enumerate_lines()
            .into_iter()
            .filter(|l| self.contains(&l.rep()))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum F3Subspace {
    Zero,
    Line(F3Line),
    Plane(F3Plane),
    Full,
}

impl F3Subspace {
    /// The subspace spanned by the given vectors.
    pub fn span(vs: &[F3Vector]) -> Self {
        let mut members = vec![F3Vector::zero()];
        for v in vs {
            let mut next = members.clone();
            for m in &members {
                for c in 1..3 {
                    let w = m.add(&v.scale(c));
                    if !next.contains(&w) {
                        next.push(w);
                    }
                }
            }
            members = next;
        }
        Self::from_members(&members)
    }

    fn from_members(members: &[F3Vector]) -> Self {
        match members.len() {
            1 => F3Subspace::Zero,
            3 => F3Subspace::Line(
                F3Line::span(
                    *members
                        .iter()
                        .find(|v| !v.is_zero())
                        .expect("nonzero member"),
                )
                .expect("nonzero"),
            ),
            9 => {
                let n = F3Vector::all()
                    .find(|n| !n.is_zero() && members.iter().all(|m| n.dot(m) == 0))
                    .expect("plane has a normal");
                F3Subspace::Plane(F3Plane::with_normal(n).expect("nonzero"))
            }
            27 => F3Subspace::Full,
            n => unreachable!("subspace of size {n}"),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            F3Subspace::Zero => 0,
            F3Subspace::Line(_) => 1,
            F3Subspace::Plane(_) => 2,
            F3Subspace::Full => 3,
        }
    }

    pub fn contains(&self, v: &F3Vector) -> bool {
        match self {
            F3Subspace::Zero => v.is_zero(),
            F3Subspace::Line(l) => l.contains(v),
            F3Subspace::Plane(p) => p.contains(v),
            F3Subspace::Full => true,
        }
    }

    pub fn members(&self) -> Vec<F3Vector> {
        F3Vector::all().filter(|v| self.contains(v)).collect()
    }

    pub fn is_subspace_of(&self, other: &F3Subspace) -> bool {
        self.members().iter().all(|v| other.contains(v))
    }
}

/// The 13 lines of 𝔽₃³, ordered by their normalized spanning vector.
pub fn enumerate_lines() -> Vec<F3Line> {
    F3Vector::all()
        .filter(|v| !v.is_zero() && v.normalized() == *v)
        .map(F3Line)
        .collect()
}

/// The 13 planes of 𝔽₃³, ordered by their normalized normal vector.
pub fn enumerate_planes() -> Vec<F3Plane> {
    enumerate_lines()
        .into_iter()
        .map(|l| F3Plane(l.rep()))
        .collect()
}

fn check_symmetric_invertible(a: &F3Matrix) -> Result<(), Error> {
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if a.det() == 0 {
        return Err(Error::Singular);
    }
    Ok(())
}

/// Lines V with V ⊆ V^⊥ for the form ⟨A·,·⟩.
pub fn isotropic_lines(a: &F3Matrix) -> Result<Vec<F3Line>, Error> {
    check_symmetric_invertible(a)?;
    Ok(enumerate_lines()
        .into_iter()
        .filter(|l| a.form(&l.rep(), &l.rep()) == 0)
        .collect())
}

/// V^⊥ = {w : ⟨v, w⟩_A = 0 for all v ∈ V}.
pub fn dual_subspace(a: &F3Matrix, v: &F3Subspace) -> F3Subspace {
    let vs = v.members();
    let members: Vec<F3Vector> = F3Vector::all()
        .filter(|w| vs.iter().all(|x| a.form(x, w) == 0))
        .collect();
    F3Subspace::from_members(&members)
}

fn alternating_shape(a: &F3Matrix) -> Result<(u8, u8), Error> {
    let (x, y) = (a.0[0][1], a.0[0][2]);
    let expected = F3Matrix::new([
        [0, x as i64, y as i64],
        [-(x as i64), 0, 0],
        [-(y as i64), 0, 0],
    ]);
    if *a != expected || (x, y) == (0, 0) {
        return Err(Error::BadShape);
    }
    Ok((x, y))
}

/// The radical (0, b, −a) of the form with first row (0, a, b) and first column
/// (0, −a, −b), zero elsewhere.
pub fn radical_vector(a: &F3Matrix) -> Result<F3Vector, Error> {
    let (x, y) = alternating_shape(a)?;
    let v = F3Vector::new(0, y as i64, -(x as i64));
    debug_assert!(F3Vector::all().all(|w| a.form(&v, &w) == 0));
    Ok(v)
}

/// Radical line of any antisymmetric form of rank 2.
pub fn radical_line(a: &F3Matrix) -> Result<F3Line, Error> {
    if !a.is_antisymmetric() {
        return Err(Error::NotAlternating);
    }
    let ker = a.kernel();
    if ker.len() != 3 {
        return Err(Error::NotAlternating);
    }
    Ok(F3Line::span(ker[1]).expect("nonzero"))
}

/// Planes V with radical ⊆ V and V^⊥ = V, for a form shaped as in [`radical_vector`].
pub fn self_dual_planes(a: &F3Matrix) -> Result<Vec<F3Plane>, Error> {
    alternating_shape(a)?;
    self_dual_planes_through_radical(a)
}

/// Planes V through the radical with V^⊥ = V, for any rank-2 antisymmetric form.
///
/// In characteristic 3 an antisymmetric form is alternating, so every plane
/// through the radical qualifies and the result always has 4 entries.
pub fn self_dual_planes_through_radical(a: &F3Matrix) -> Result<Vec<F3Plane>, Error> {
    let r = radical_line(a)?;
    Ok(enumerate_planes()
        .into_iter()
        .filter(|p| p.contains(&r.rep()))
        .filter(|p| dual_subspace(a, &F3Subspace::Plane(*p)) == F3Subspace::Plane(*p))
        .collect())
}

/// Find invertible B with BᵀAB = D diagonal, entries of D in {1, 2}.
pub fn diagonalize_symmetric(a: &F3Matrix) -> Result<(F3Matrix, F3Matrix), Error> {
    check_symmetric_invertible(a)?;
    // standard basis vectors are tried first so diagonal input is returned unchanged
    let standard = [
        F3Vector::new(1, 0, 0),
        F3Vector::new(0, 1, 0),
        F3Vector::new(0, 0, 1),
    ];
    let mut basis: Vec<F3Vector> = Vec::with_capacity(3);
    for _ in 0..3 {
        let v = standard
            .into_iter()
            .chain(F3Vector::all())
            .find(|v| a.form(v, v) != 0 && basis.iter().all(|b| a.form(b, v) == 0))
            .ok_or(Error::Singular)?;
        basis.push(v);
    }
    let b = F3Matrix::from_columns([basis[0], basis[1], basis[2]]);
    let d = b.transpose().mul(a).mul(&b);
    debug_assert!((0..3).all(|i| (0..3).all(|j| i == j || d.0[i][j] == 0)));
    Ok((b, d))
}
