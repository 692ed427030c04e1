use chisynth::arith::{EisensteinInteger, FieldElement, Valuation};
use chisynth::building::{graph_distance, Vertex};
use chisynth::gates::{eval_word, Gate, GateWord, UnitaryMatrix};
use chisynth::lattice::Lattice;
use chisynth::matrix::Matrix3;
use chisynth::metric::{cartan_decompose, l_value, tilde_d};
use chisynth::monomial::{enumerate_monomials, MonomialMatrix};
use chisynth::synthesis::{exact_synthesize, verify};
use proptest::prelude::*;

fn field_element() -> impl Strategy<Value = FieldElement> {
    // denominators mix powers of 3 with a unit (2) at the prime
    (-40i64..40, -40i64..40, 0u32..3, 0u32..2, -3i64..3).prop_map(|(a, b, e3, e2, k)| {
        let den = 3i64.pow(e3) * 2i64.pow(e2);
        let x = &FieldElement::from_ratio(a, den)
            + &(&FieldElement::omega() * &FieldElement::from_ratio(b, den));
        x.mul_chi_pow(k)
    })
}

fn integral_element() -> impl Strategy<Value = FieldElement> {
    (-60i64..60, -60i64..60).prop_map(|(a, b)| FieldElement::from_ints(a, b))
}

fn word(max_len: usize) -> impl Strategy<Value = GateWord> {
    prop::collection::vec(prop::sample::select(Gate::ALL.to_vec()), 0..max_len)
        .prop_map(GateWord::new)
}

fn monomial() -> impl Strategy<Value = MonomialMatrix> {
    (0usize..1296).prop_map(MonomialMatrix::from_index)
}

fn invertible_matrix() -> impl Strategy<Value = Matrix3> {
    prop::collection::vec((-4i64..4, -4i64..4, -2i64..3), 9)
        .prop_map(|v| {
            Matrix3::from_fn(|i, j| {
                let (a, b, k) = v[3 * i + j];
                FieldElement::from_ints(a, b).mul_chi_pow(k)
            })
        })
        .prop_filter("invertible", |m| !m.det().is_zero())
}

/// Exact division by χ in plain integers: z·(2+ω) = (2a−b) + (a+b)ω, then divide by 3.
fn v_chi_oracle(mut a: i64, mut b: i64) -> i64 {
    assert!(a != 0 || b != 0);
    let mut n = 0;
    while (2 * a - b) % 3 == 0 && (a + b) % 3 == 0 {
        (a, b) = ((2 * a - b) / 3, (a + b) / 3);
        n += 1;
    }
    n
}

fn add(v: Valuation, w: Valuation) -> Valuation {
    match (v, w) {
        (Valuation::Finite(x), Valuation::Finite(y)) => Valuation::Finite(x + y),
        _ => Valuation::Infinite,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn valuation_is_multiplicative(x in field_element(), y in field_element()) {
        prop_assert_eq!((&x * &y).v_pi(), add(x.v_pi(), y.v_pi()));
    }

    #[test]
    fn valuation_is_ultrametric(x in field_element(), y in field_element()) {
        prop_assert!((&x + &y).v_pi() >= x.v_pi().min(y.v_pi()));
        if x.v_pi() != y.v_pi() {
            prop_assert_eq!((&x + &y).v_pi(), x.v_pi().min(y.v_pi()));
        }
    }

    #[test]
    fn conjugation_preserves_valuation(x in field_element()) {
        prop_assert_eq!(x.conj().v_pi(), x.v_pi());
    }

    #[test]
    fn conjugation_is_trivial_mod_chi(x in integral_element()) {
        prop_assert!((&x - &x.conj()).v_pi() >= Valuation::Finite(1));
    }

    #[test]
    fn valuation_matches_division_oracle(a in -500i64..500, b in -500i64..500) {
        prop_assume!(a != 0 || b != 0);
        let want = Valuation::Finite(v_chi_oracle(a, b));
        prop_assert_eq!(EisensteinInteger::new(a, b).v_pi(), want);
        prop_assert_eq!(FieldElement::from_ints(a, b).v_pi(), want);
    }

    #[test]
    fn chi_digits_recompose(x in integral_element(), k in 1usize..8) {
        let digits = x.chi_digits(k).unwrap();
        prop_assert!(digits.iter().all(|&d| d < 3));
        let sum = digits
            .iter()
            .enumerate()
            .fold(FieldElement::zero(), |acc, (i, &d)| &acc + &(&FieldElement::chi_pow(i as i64) * &FieldElement::from_int(d as i64)));
        prop_assert!((&x - &sum).v_pi() >= Valuation::Finite(k as i64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn l_is_subadditive(u in word(30), w in word(30)) {
        let (a, b) = (eval_word(&u), eval_word(&w));
        prop_assert!(a.mul(&b).l_value() <= a.l_value() + b.l_value());
        prop_assert!(a.l_value() >= 0);
        prop_assert!(a.sde() as usize <= u.len());
    }

    #[test]
    fn l_is_monomial_invariant(u in word(30), p in monomial(), q in monomial()) {
        let a = eval_word(&u);
        let b = p.to_unitary().mul(&a).mul(&q.to_unitary());
        prop_assert_eq!(a.l_value(), b.l_value());
    }

    #[test]
    fn tilde_d_is_a_metric(u in word(12), v in word(12), w in word(12)) {
        let [a, b, c] = [&u, &v, &w].map(|x| eval_word(x).to_field());
        let ab = tilde_d(&a, &b).unwrap();
        prop_assert_eq!(ab, tilde_d(&b, &a).unwrap());
        prop_assert_eq!(tilde_d(&a, &a).unwrap(), 0);
        prop_assert!(ab >= 0 && ab % 2 == 0);
        prop_assert!(tilde_d(&a, &c).unwrap() <= ab + tilde_d(&b, &c).unwrap());
    }

    #[test]
    fn cartan_recomposes(g in invertible_matrix()) {
        let c = cartan_decompose(&g).unwrap();
        prop_assert_eq!(c.recompose(), g.clone());
        prop_assert!(c.k.is_integral_invertible());
        prop_assert!(c.k_prime.is_integral_invertible());
        prop_assert!(c.lambda[0] >= c.lambda[1] && c.lambda[1] >= c.lambda[2]);
        // l is −2 times the smallest exponent
        prop_assert_eq!(l_value(&g).unwrap(), -2 * c.lambda[2]);
    }

    #[test]
    fn cartan_exponents_are_monomial_invariant(g in invertible_matrix(), p in monomial(), q in monomial()) {
        let pg = p.to_unitary().to_field().mul(&g).mul(&q.to_unitary().to_field());
        prop_assert_eq!(cartan_decompose(&g).unwrap().lambda, cartan_decompose(&pg).unwrap().lambda);
    }

    #[test]
    fn dual_is_an_involution(g in invertible_matrix()) {
        let l = Lattice::from_basis(&g).unwrap();
        prop_assert_eq!(l.dual().dual(), l);
    }

    #[test]
    fn dual_reverses_inclusion(g in invertible_matrix(), extra in prop::collection::vec(field_element(), 3)) {
        let small = Lattice::from_basis(&g).unwrap();
        let mut gens: Vec<[FieldElement; 3]> = (0..3).map(|j| g.column(j)).collect();
        gens.push([extra[0].clone(), extra[1].clone(), extra[2].clone()]);
        let big = Lattice::from_generators(&gens).unwrap();
        prop_assert!(big.contains(&small));
        prop_assert!(small.dual().contains(&big.dual()));
    }

    #[test]
    fn gram_test_matches_definition(g in invertible_matrix()) {
        let l = Lattice::from_basis(&g).unwrap();
        prop_assert_eq!(l.is_self_dual(), l.dual() == l);
    }

    #[test]
    fn duality_is_unitarily_equivariant(g in invertible_matrix(), u in word(20)) {
        let u = eval_word(&u).to_field();
        let l = Lattice::from_basis(&g).unwrap();
        let ul = Lattice::from_basis(&u.mul(&l.basis_field())).unwrap();
        let udual = Lattice::from_basis(&u.mul(&l.dual().basis_field())).unwrap();
        prop_assert_eq!(ul.dual(), udual);
    }

    #[test]
    fn unitary_images_of_origin_are_self_dual(u in word(20)) {
        let l = Lattice::from_basis(&eval_word(&u).to_field()).unwrap();
        prop_assert!(l.is_self_dual());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn synthesis_round_trips(w in word(80)) {
        let u = eval_word(&w);
        let r = exact_synthesize(&u).unwrap();
        prop_assert!(verify(&r.word, &u));
        prop_assert_eq!(r.initial_l, u.l_value());
        prop_assert_eq!(r.steps + 1, r.l_trace.len());
        prop_assert!(r.l_trace.windows(2).all(|p| p[1] < p[0]));
        prop_assert_eq!(*r.l_trace.last().unwrap(), 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn tilde_d_is_graph_distance(u in word(4), v in word(4)) {
        let (a, b) = (eval_word(&u).to_field(), eval_word(&v).to_field());
        let d = tilde_d(&a, &b).unwrap() as usize;
        let (x, y) = (Vertex::from_matrix(&a).unwrap(), Vertex::from_matrix(&b).unwrap());
        prop_assert_eq!(graph_distance(&x, &y, 24).unwrap(), d);
    }
}

#[test]
fn every_monomial_synthesizes_without_descent() {
    for q in enumerate_monomials() {
        let u = q.to_unitary();
        let r = exact_synthesize(&u).unwrap();
        assert_eq!(r.steps, 0, "{q}");
        assert!(verify(&r.word, &u), "{q}");
    }
}

#[test]
fn unitary_checks_reject_non_unitaries() {
    let two = Matrix3::from_fn(|i, j| FieldElement::from_int(if i == j { 2 } else { 0 }));
    assert!(UnitaryMatrix::from_field(&two).is_err());
}
