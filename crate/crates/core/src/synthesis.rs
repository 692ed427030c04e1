//! Exact synthesis by descent through the lattice tree.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{ChiFraction, Unit, Valuation};
use crate::error::Error;
use crate::gates::{eval_word, Gate, GateWord, UnitaryMatrix};
use crate::lattice::Lattice;
use crate::matrix::Matrix3;
use crate::monomial::{enumerate_monomials, monomial_word_table, MonomialMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisResult {
    pub word: GateWord,
    /// Number of descent iterations.
    pub steps: usize,
    pub initial_l: i64,
    /// l of the running matrix before each step and after the last.
    pub l_trace: Vec<i64>,
    /// Occurrences of H, S, R in the word.
    pub gate_counts: [usize; 3],
}

impl SynthesisResult {
    /// l(before) − l(after) for each step.
    pub fn decrements(&self) -> Vec<i64> {
        self.l_trace.windows(2).map(|w| w[0] - w[1]).collect()
    }
}

/// Entries of χ·Hᵉ as units, for e = 1 and e = 3.
fn h_power_units(e: usize) -> [[Unit; 3]; 3] {
    std::array::from_fn(|j| {
        std::array::from_fn(|k| {
            let jk = (j * k) as i64;
            if e == 1 {
                // −ω² ω^{jk}
                Unit::new(true, 2).mul(Unit::omega_pow(jk))
            } else {
                // ω² ω^{−jk}
                Unit::OMEGA2.mul(Unit::omega_pow(-jk))
            }
        })
    })
}

/// min over columns of v(cur₀ⱼ + β₁cur₁ⱼ + β₂cur₂ⱼ), cached per (β₁, β₂).
struct RowValuations<'a> {
    cur: &'a UnitaryMatrix,
    cache: [Option<Valuation>; 36],
}

impl RowValuations<'_> {
    fn get(&mut self, b1: Unit, b2: Unit) -> Valuation {
        let slot = b1.index() * 6 + b2.index();
        if let Some(v) = self.cache[slot] {
            return v;
        }
        let m = self.cur.matrix();
        let v = (0..3)
            .map(|j| {
                ChiFraction::unit_combination(&[
                    (Unit::ONE, &m.e[0][j]),
                    (b1, &m.e[1][j]),
                    (b2, &m.e[2][j]),
                ])
                .v_pi()
            })
            .min()
            .expect("three columns");
        self.cache[slot] = Some(v);
        v
    }
}

/// l(Hᵉ·Q·cur) without forming the product.
fn candidate_l(h: &[[Unit; 3]; 3], q: &MonomialMatrix, rows: &mut RowValuations) -> i64 {
    let mut min = Valuation::Infinite;
    for hrow in h {
        // row i of χ·HᵉQ·cur is Σ_k h[i][k]·phase[k]·cur[perm[k]]
        let mut alpha = [Unit::ONE; 3];
        for k in 0..3 {
            alpha[q.perm[k] as usize] = hrow[k].mul(q.phases[k]);
        }
        let inv0 = alpha[0].inv();
        let v = rows.get(alpha[1].mul(inv0), alpha[2].mul(inv0));
        min = min.min(v);
    }
    2 - 2 * min.finite().expect("unitary rows are nonzero")
}

/// Rewrite U as a word over {H, S, R} whose evaluation equals U exactly.
///
/// Each step multiplies the running matrix on the left by the first candidate
/// Hᵉ·Q (e ∈ {1, 3}, Q monomial) reaching the smallest l, which must be below
/// the current l. The word reads U = c₁⁻¹ c₂⁻¹ ⋯ cₙ⁻¹ M for the final monomial M.
pub fn exact_synthesize(u: &UnitaryMatrix) -> Result<SynthesisResult, Error> {
    let table = monomial_word_table()?;
    let monomials = enumerate_monomials();
    let h_units = [h_power_units(1), h_power_units(3)];
    let mut cur = u.clone();
    let initial_l = cur.l_value();
    let mut l_trace = vec![initial_l];
    let mut word = GateWord::empty();
    let mut steps = 0;
    while cur.l_value() > 0 {
        let l_cur = cur.l_value();
        let mut rows = RowValuations {
            cur: &cur,
            cache: [None; 36],
        };
        let mut best: Option<(i64, usize, &MonomialMatrix)> = None;
        for (ei, h) in h_units.iter().enumerate() {
            for q in &monomials {
                let l = candidate_l(h, q, &mut rows);
                if l < l_cur && best.is_none_or(|(bl, _, _)| l < bl) {
                    best = Some((l, ei, q));
                }
            }
        }
        let Some((l_new, ei, q)) = best else {
            return Err(Error::DescentStuck(cur.to_string()));
        };
        let e = if ei == 0 { 1 } else { 3 };
        let mut next = q.left_apply(&cur);
        for _ in 0..e {
            next = next.left_mul_gate(Gate::H);
        }
        if next.l_value() != l_new {
            return Err(Error::Inconsistent(format!(
                "predicted l {l_new}, got {}",
                next.l_value()
            )));
        }
        // c⁻¹ = Q⁻¹·H^(4−e)
        word.extend(table.word(&q.inverse()));
        word.extend(&GateWord::new(vec![Gate::H; 4 - e]));
        cur = next;
        steps += 1;
        l_trace.push(l_new);
    }
    let m = MonomialMatrix::from_unitary(&cur)
        .ok_or_else(|| Error::Inconsistent(format!("l = 0 but not monomial:\n{cur}")))?;
    word.extend(table.word(&m));
    if eval_word(&word) != *u {
        return Err(Error::Inconsistent(
            "synthesized word does not evaluate to the input".into(),
        ));
    }
    let gate_counts = word.counts();
    Ok(SynthesisResult {
        word,
        steps,
        initial_l,
        l_trace,
        gate_counts,
    })
}

/// Synthesize from a field matrix, checking unitarity and ring membership.
pub fn exact_synthesize_matrix(m: &Matrix3) -> Result<SynthesisResult, Error> {
    exact_synthesize(&UnitaryMatrix::from_field(m)?)
}

/// eval(w) = U exactly.
pub fn verify(w: &GateWord, u: &UnitaryMatrix) -> bool {
    eval_word(w) == *u
}

/// A uniformly random word of the given length and its evaluation.
pub fn random_unitary(length: usize, seed: u64) -> (GateWord, UnitaryMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = GateWord::new(
        (0..length)
            .map(|_| Gate::ALL[rng.random_range(0..3)])
            .collect(),
    );
    let u = eval_word(&w);
    (w, u)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub product: usize,
}

/// Orbit and stabilizer of the pure vertex g·𝒪³ under left multiplication by
/// the 1296 monomials.
pub fn orbit_stabilizer(g: &UnitaryMatrix) -> Result<OrbitReport, Error> {
    let base = Lattice::from_basis(&g.to_field())?;
    let mut orbit = HashSet::new();
    let mut stabilizer = 0;
    for q in enumerate_monomials() {
        let l = Lattice::from_basis(&q.left_apply(g).to_field())?;
        if l == base {
            stabilizer += 1;
        }
        orbit.insert(l);
    }
    let report = OrbitReport {
        orbit_size: orbit.len(),
        stabilizer_order: stabilizer,
        product: orbit.len() * stabilizer,
    };
    if report.product != 1296 {
        return Err(Error::Inconsistent(format!(
            "orbit-stabilizer product {}",
            report.product
        )));
    }
    Ok(report)
}

pub fn orbit_stabilizer_of_h_vertex() -> Result<OrbitReport, Error> {
    orbit_stabilizer(&Gate::H.matrix())
}
