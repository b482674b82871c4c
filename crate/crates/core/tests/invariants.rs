use proptest::prelude::*;

use hilden::braid::{braids_equal, BraidWord};
use hilden::phi;
use hilden::presentation::*;
use hilden::proof::{self, apply_step};
use hilden::tl::{self, CapTest, TlVector};

fn braid(strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    let k = strands as i32 - 1;
    prop::collection::vec((1..=k, any::<bool>()), 0..=max_len)
        .prop_map(move |v| BraidWord::new(strands, v.into_iter().map(|(g, s)| if s { g } else { -g }).collect()).unwrap())
}

fn sword_from(n: usize, alphabet: Vec<Generator>, max_len: usize) -> impl Strategy<Value = SWord> {
    let len = alphabet.len();
    prop::collection::vec((0..len, any::<bool>()), 0..=max_len).prop_map(move |v| {
        let letters = v.into_iter().map(|(i, s)| Letter::new(alphabet[i], if s { 1 } else { -1 })).collect();
        SWord::new(n, letters).unwrap()
    })
}

fn sword(n: usize, max_len: usize) -> impl Strategy<Value = SWord> {
    sword_from(n, generators(n), max_len)
}

fn framed_word(n: usize, max_len: usize) -> impl Strategy<Value = SWord> {
    sword_from(n, framed_generators(n), max_len)
}

fn hilden_word(n: usize, max_len: usize) -> impl Strategy<Value = SWord> {
    sword_from(n, generators(n).into_iter().chain(framed_generators(n)).collect(), max_len)
}

fn basis(n: usize) -> Vec<TlVector> {
    tl::matchings(n).into_iter().map(TlVector::basis).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn free_reduce_idempotent(w in braid(6, 40)) {
        let r = w.free_reduce();
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(r.free_reduce(), r);
    }

    #[test]
    fn permutation_is_multiplicative(u in braid(6, 20), v in braid(6, 20)) {
        prop_assert_eq!(u.concat(&v).permutation(), u.permutation().then(&v.permutation()));
    }

    #[test]
    fn word_times_inverse_is_trivial(w in braid(6, 40)) {
        prop_assert!(w.concat(&w.invert()).is_trivial().unwrap());
    }

    #[test]
    fn trivial_implies_identity_invariants(w in braid(6, 12)) {
        // w · c · w⁻¹ with c a braid relator is always trivial
        let relator = BraidWord::new(6, vec![2, 3, 2, -3, -2, -3]).unwrap();
        let t = w.concat(&relator).concat(&w.invert());
        prop_assert!(t.is_trivial().unwrap());
        prop_assert!(t.permutation().is_identity());
        prop_assert!(tl::acts_trivially(&t).unwrap());
        if w.is_trivial().unwrap() {
            prop_assert!(w.permutation().is_identity());
            prop_assert!(tl::acts_trivially(&w).unwrap());
        }
    }

    #[test]
    fn equality_is_an_equivalence(a in braid(4, 8), b in braid(4, 8), c in braid(4, 8)) {
        prop_assert!(braids_equal(&a, &a).unwrap());
        let ab = braids_equal(&a, &b).unwrap();
        prop_assert_eq!(ab, braids_equal(&b, &a).unwrap());
        if ab && braids_equal(&b, &c).unwrap() {
            prop_assert!(braids_equal(&a, &c).unwrap());
        }
        // a rewritten by a braid relation stays equal to a
        let a2 = a.concat(&BraidWord::new(4, vec![1, 2, 1, -2, -1, -2]).unwrap());
        prop_assert!(braids_equal(&a, &a2).unwrap());
    }

    #[test]
    fn realize_is_a_homomorphism(u in sword(3, 6), v in sword(3, 6)) {
        prop_assert_eq!(u.concat(&v).realize(), u.realize().concat(&v.realize()));
        prop_assert_eq!(u.inverse().realize(), u.realize().invert());
    }

    #[test]
    fn tl_representation_property(u in braid(8, 15), v in braid(8, 15), k in 0usize..14) {
        let x = TlVector::basis(tl::matchings(4)[k].clone());
        prop_assert_eq!(tl::act(&u.concat(&v), &x).unwrap(), tl::act(&v, &tl::act(&u, &x).unwrap()).unwrap());
    }

    #[test]
    fn cap_test_is_multiplicative(u in hilden_word(3, 5), v in hilden_word(3, 5)) {
        let (bu, bv) = (u.realize(), v.realize());
        match (tl::hilden_cap_test(&bu), tl::hilden_cap_test(&bv)) {
            (CapTest::Pass(mu), CapTest::Pass(mv)) => {
                prop_assert_eq!(tl::hilden_cap_test(&bu.concat(&bv)), CapTest::Pass(mu + mv));
            }
            other => prop_assert!(false, "generator words must pass: {:?}", other),
        }
    }

    #[test]
    fn phi_is_an_automorphism(g in framed_word(4, 4), u in sword(4, 6), v in sword(4, 6)) {
        let whole = phi::phi(&g, &u.concat(&v)).unwrap();
        let parts = phi::phi(&g, &u).unwrap().concat(&phi::phi(&g, &v).unwrap()).free_reduce();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn phi_action_law(g1 in framed_word(3, 3), g2 in framed_word(3, 3), k in 0usize..12) {
        let s = SWord::new(3, vec![Letter::pos(generators(3)[k])]).unwrap();
        let joint = phi::phi(&g1.concat(&g2), &s).unwrap().realize();
        let nested = phi::phi(&g1, &phi::phi(&g2, &s).unwrap()).unwrap().realize();
        prop_assert!(joint.equals(&nested).unwrap());
        // and Φ_g realizes conjugation by g
        prop_assert!(phi::check_property_a(&g1.concat(&g2), &s).unwrap());
    }

    #[test]
    fn rewrite_steps_preserve_the_braid(w in sword(3, 8), pick in any::<prop::sample::Index>()) {
        let moves = proof::candidate_moves(3, &Schema::ALL, 1);
        let w = w.free_reduce();
        let letters = w.letters();
        let mut options = Vec::new();
        for (matched, _, step) in &moves {
            for pos in 0..=letters.len().saturating_sub(matched.len()) {
                if letters.len() >= matched.len() && letters[pos..pos + matched.len()] == matched[..] {
                    options.push(proof::Step { pos, ..step.clone() });
                }
            }
        }
        prop_assume!(!options.is_empty());
        let step = &options[pick.index(options.len())];
        let next = apply_step(&w, step).unwrap();
        prop_assert!(w.realize().equals(&next.realize()).unwrap());
    }
}

#[test]
fn trivial_braids_act_trivially_up_to_five() {
    for n in 1..=5 {
        let s = 2 * n;
        let mut words = vec![BraidWord::identity(s)];
        for k in 1..s as i32 - 1 {
            words.push(BraidWord::new(s, vec![k, k + 1, k, -(k + 1), -k, -(k + 1)]).unwrap());
        }
        for w in words {
            assert!(w.is_trivial().unwrap());
            for x in basis(n) {
                assert_eq!(tl::act(&w, &x).unwrap(), x);
            }
        }
    }
}

#[test]
fn tl_braid_relations() {
    for n in 2..=4 {
        let s = 2 * n as i32;
        for x in basis(n) {
            for k in 1..s - 1 {
                let a = BraidWord::new(2 * n, vec![k, k + 1, k]).unwrap();
                let b = BraidWord::new(2 * n, vec![k + 1, k, k + 1]).unwrap();
                assert_eq!(tl::act(&a, &x).unwrap(), tl::act(&b, &x).unwrap());
            }
            for k in 1..s {
                for l in k + 2..s {
                    let a = BraidWord::new(2 * n, vec![k, l]).unwrap();
                    let b = BraidWord::new(2 * n, vec![l, k]).unwrap();
                    assert_eq!(tl::act(&a, &x).unwrap(), tl::act(&b, &x).unwrap());
                }
            }
        }
    }
}

#[test]
fn generators_are_pure() {
    for n in 2..=5 {
        for g in generators(n) {
            let w = SWord::new(n, vec![Letter::pos(g)]).unwrap();
            assert!(w.realize().permutation().is_identity(), "n={n} {g}");
        }
    }
}

#[test]
fn relations_hold_up_to_five() {
    for n in 2..=5 {
        for r in relation_instances(n) {
            assert!(r.lhs.realize().equals(&r.rhs.realize()).unwrap(), "{r}");
        }
    }
}

#[test]
fn twists_are_squared_half_twists() {
    for n in 1..=5 {
        for k in 1..=n {
            let t = SWord::new(n, vec![Letter::pos(Generator::T(k))]).unwrap().realize();
            let tau = SWord::new(n, vec![Letter::pos(Generator::Tau(k))]).unwrap().realize();
            assert_eq!(t, tau.pow(2));
        }
    }
}

#[test]
fn table_rows_are_distinct() {
    let rows: Vec<_> = OrderClass::ALL.iter().map(|&c| c2_triples(c).to_vec()).collect();
    for row in &rows {
        let mut r = row.clone();
        r.sort();
        r.dedup();
        assert_eq!(r.len(), 8);
    }
    assert_ne!(rows[0], rows[1]);
    assert_ne!(rows[1], rows[2]);
    assert_ne!(rows[0], rows[2]);
}

#[test]
fn pair_symbols_are_symmetric() {
    for a in Alpha::ALL {
        for (i, j) in [(1, 2), (1, 3), (2, 4)] {
            assert_eq!(a.gen(i, j), a.gen(j, i));
            assert_eq!(SWord::new(4, vec![Letter::pos(a.gen(j, i))]).unwrap().realize(), a.gen(i, j).braid(4));
        }
    }
    assert_eq!(word(3, "x(3,1) p(2,1)"), word(3, "x(1,3) p(1,2)"));
}

#[test]
fn property_b_on_every_pt_letter() {
    let n = 4;
    for g in phi::framed_letters(n) {
        let g = SWord::new(n, vec![g]).unwrap();
        for h in generators(n).into_iter().filter(|h| h.is_pt()) {
            for sign in [1, -1] {
                let h = SWord::new(n, vec![Letter::new(h, sign)]).unwrap();
                assert!(phi::check_property_b(&g, &h).unwrap(), "{g} {h}");
            }
        }
    }
}

#[test]
fn phi_inverse_up_to_five() {
    for n in 2..=5 {
        for q in framed_generators(n) {
            assert!(phi::check_phi_inverse(n, q).unwrap(), "n={n} {q}");
        }
    }
}
