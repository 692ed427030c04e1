//! The group of monomial unitaries (permutation times unit phases), order 1296.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::arith::{ChiFraction, Unit};
use crate::error::Error;
use crate::gates::{Gate, GateWord, UnitaryMatrix};
use crate::matrix::Mat3;

/// Permutations of {0,1,2} in lexicographic order.
pub const PERMUTATIONS: [[u8; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// The matrix with entry `phases[i]` at `(i, perm[i])` and zeros elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialMatrix {
    pub perm: [u8; 3],
    pub phases: [Unit; 3],
}

impl MonomialMatrix {
    pub fn identity() -> Self {
        MonomialMatrix {
            perm: [0, 1, 2],
            phases: [Unit::ONE; 3],
        }
    }

    /// Position in the enumeration order of [`enumerate_monomials`].
    pub fn index(&self) -> usize {
        let p = PERMUTATIONS
            .iter()
            .position(|q| *q == self.perm)
            .expect("valid permutation");
        p * 216 + self.phases[0].index() * 36 + self.phases[1].index() * 6 + self.phases[2].index()
    }

    pub fn from_index(n: usize) -> Self {
        assert!(n < 1296, "monomial index out of range");
        MonomialMatrix {
            perm: PERMUTATIONS[n / 216],
            phases: [
                Unit::from_index((n / 36) % 6),
                Unit::from_index((n / 6) % 6),
                Unit::from_index(n % 6),
            ],
        }
    }

    pub fn mul(&self, o: &MonomialMatrix) -> MonomialMatrix {
        // row i of self picks row perm[i] of o
        MonomialMatrix {
            perm: std::array::from_fn(|i| o.perm[self.perm[i] as usize]),
            phases: std::array::from_fn(|i| self.phases[i].mul(o.phases[self.perm[i] as usize])),
        }
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let mut perm = [0u8; 3];
        let mut phases = [Unit::ONE; 3];
        for i in 0..3 {
            let r = self.perm[i] as usize;
            perm[r] = i as u8;
            phases[r] = self.phases[i].conj();
        }
        MonomialMatrix { perm, phases }
    }

    pub fn to_unitary(&self) -> UnitaryMatrix {
        UnitaryMatrix::new_unchecked(Mat3::from_fn(|i, j| {
            if self.perm[i] as usize == j {
                ChiFraction::from_unit(self.phases[i])
            } else {
                ChiFraction::zero()
            }
        }))
    }

    /// Recognize a monomial unitary.
    pub fn from_unitary(u: &UnitaryMatrix) -> Option<MonomialMatrix> {
        let m = u.matrix();
        let mut perm = [0u8; 3];
        let mut phases = [Unit::ONE; 3];
        for i in 0..3 {
            let nz: Vec<usize> = (0..3).filter(|&j| !m.e[i][j].is_zero()).collect();
            let [j] = nz[..] else {
                return None;
            };
            perm[i] = j as u8;
            phases[i] = *Unit::all()
                .iter()
                .find(|&&v| ChiFraction::from_unit(v) == m.e[i][j])?;
        }
        let mut seen = perm;
        seen.sort_unstable();
        (seen == [0, 1, 2]).then_some(MonomialMatrix { perm, phases })
    }

    /// Q · m, which permutes and rephases the rows of m.
    pub fn left_apply(&self, m: &UnitaryMatrix) -> UnitaryMatrix {
        let src = m.matrix();
        UnitaryMatrix::new_unchecked(Mat3 {
            e: std::array::from_fn(|i| {
                src.e[self.perm[i] as usize]
                    .clone()
                    .map(|x| x.mul_unit(self.phases[i]))
            }),
        })
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "perm=({},{},{}) phases=({},{},{})",
            self.perm[0],
            self.perm[1],
            self.perm[2],
            self.phases[0],
            self.phases[1],
            self.phases[2]
        )
    }
}

/// All 6 · 6³ = 1296 monomials: permutations in lexicographic order, then phase
/// triples in lexicographic order of unit index.
pub fn enumerate_monomials() -> Vec<MonomialMatrix> {
    (0..1296).map(MonomialMatrix::from_index).collect()
}

/// Word table indexed by [`MonomialMatrix::index`].
pub struct MonomialWordTable {
    words: Vec<GateWord>,
    /// The pruning bound that completed the search.
    pub bound: i64,
}

impl MonomialWordTable {
    pub fn word(&self, m: &MonomialMatrix) -> &GateWord {
        &self.words[m.index()]
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (MonomialMatrix, &GateWord)> {
        self.words
            .iter()
            .enumerate()
            .map(|(i, w)| (MonomialMatrix::from_index(i), w))
    }
}

const MAX_BOUND: i64 = 8;

/// Breadth-first search from I over right multiplication by H, S, R, skipping
/// states with l above `bound`. Returns the first word found for each monomial,
/// which is the shortest and then lexicographically least (H < S < R).
fn search(bound: i64) -> Vec<Option<GateWord>> {
    let mut found: Vec<Option<GateWord>> = vec![None; 1296];
    let mut remaining = 1296;
    let mut seen: HashSet<UnitaryMatrix> = HashSet::new();
    let mut queue = VecDeque::new();
    let id = UnitaryMatrix::identity();
    seen.insert(id.clone());
    queue.push_back((id, GateWord::empty()));
    while let Some((m, w)) = queue.pop_front() {
        if let Some(q) = MonomialMatrix::from_unitary(&m) {
            let slot = &mut found[q.index()];
            if slot.is_none() {
                *slot = Some(w.clone());
                remaining -= 1;
                if remaining == 0 {
                    break;
                }
            }
        }
        for g in Gate::ALL {
            let next = m.right_mul_gate(g);
            if next.l_value() > bound || seen.contains(&next) {
                continue;
            }
            seen.insert(next.clone());
            let mut nw = w.clone();
            nw.push(g);
            queue.push_back((next, nw));
        }
    }
    found
}

/// Build the table, escalating the pruning bound from 4 until all 1296 are covered.
pub fn build_monomial_word_table() -> Result<MonomialWordTable, Error> {
    let mut bound = 4;
    loop {
        let found = search(bound);
        let covered = found.iter().filter(|w| w.is_some()).count();
        if covered == 1296 {
            let words = found.into_iter().map(|w| w.expect("covered")).collect();
            return Ok(MonomialWordTable { words, bound });
        }
        if bound >= MAX_BOUND {
            return Err(Error::CoverageIncomplete(covered));
        }
        bound += 2;
    }
}

/// The process-wide table, built on first use.
pub fn monomial_word_table() -> Result<&'static MonomialWordTable, Error> {
    static TABLE: OnceLock<Result<MonomialWordTable, Error>> = OnceLock::new();
    TABLE
        .get_or_init(build_monomial_word_table)
        .as_ref()
        .map_err(Clone::clone)
}
