//! Single mutations of fixtures and catalog words must be caught.

use std::path::{Path, PathBuf};

use hilden::braid::BraidWord;
use hilden::phi::{self, PhiCase};
use hilden::presentation::*;
use hilden::proof::{self, DerivationScript, Dir, ProofError};
use hilden::tl;
use hilden::verify::{self, Config};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn scripts() -> Vec<(String, DerivationScript)> {
    proof::load_scripts(&fixtures().join("proofs")).unwrap()
}

fn case(name: &str) -> PhiCase {
    PhiCase::from_json(&std::fs::read_to_string(fixtures().join("phi_cases").join(name)).unwrap()).unwrap()
}

fn flip(d: Dir) -> Dir {
    match d {
        Dir::LeftToRight => Dir::RightToLeft,
        Dir::RightToLeft => Dir::LeftToRight,
    }
}

#[test]
fn every_direction_flip_is_detected() {
    let mut flips = 0;
    for (name, d) in scripts() {
        for k in 0..d.steps.len() {
            let mut bad = d.clone();
            bad.steps[k].dir = flip(bad.steps[k].dir);
            assert!(proof::check_derivation(&bad).is_err(), "{name}: flipping step {k} went unnoticed");
            flips += 1;
        }
    }
    assert!(flips >= 60, "{flips}");
}

#[test]
fn every_position_shift_is_detected() {
    for (name, d) in scripts() {
        for k in 0..d.steps.len() {
            let mut bad = d.clone();
            bad.steps[k].pos += 1;
            assert!(proof::check_derivation(&bad).is_err(), "{name}: moving step {k} went unnoticed");
        }
    }
}

#[test]
fn dropped_step_is_detected() {
    for (name, d) in scripts() {
        for k in 0..d.steps.len() {
            let mut bad = d.clone();
            bad.steps.remove(k);
            assert!(proof::check_derivation(&bad).is_err(), "{name}: dropping step {k} went unnoticed");
        }
    }
}

#[test]
fn twist_chain_flip_fails_at_that_step() {
    let d = DerivationScript::load(&fixtures().join("proofs/twist_past_x12_x13.json")).unwrap();
    for k in 0..d.steps.len() {
        let mut bad = d.clone();
        bad.steps[k].dir = flip(bad.steps[k].dir);
        match bad.replay() {
            Err(ProofError::Step { index, .. }) => assert_eq!(index, k),
            other => panic!("step {k}: {other:?}"),
        }
    }
}

// The ten sampled mutations.

#[test]
fn mutation_01_claimed_end_word() {
    let mut d = DerivationScript::load(&fixtures().join("proofs/face_nested.json")).unwrap();
    d.end = word(3, "x(1,2)");
    assert!(matches!(proof::check_derivation(&d), Err(ProofError::WrongEnd { .. })));
}

#[test]
fn mutation_02_start_word() {
    let mut d = DerivationScript::load(&fixtures().join("proofs/x12_past_pk_product.json")).unwrap();
    d.start = word(4, "x(1,2) p(1,4) p(2,4) p(3,4)^-1");
    assert!(proof::check_derivation(&d).is_err());
}

#[test]
fn mutation_03_step_schema() {
    let mut d = DerivationScript::load(&fixtures().join("proofs/face_rectangle.json")).unwrap();
    d.steps[0].symbols = vec![Alpha::Y, Alpha::X];
    assert!(proof::check_derivation(&d).is_err());
}

#[test]
fn mutation_04_phi_case_target() {
    let mut c = case("tau_i_xx.json");
    assert!(phi::check_property_c_case(&c).unwrap());
    c.r_target = word(3, "x(1,2)^-1 x(1,3)^-1");
    assert!(matches!(phi::check_property_c_case(&c), Err(phi::PhiError::NotInFamily(_))));
    c.r_target = word(3, "x(1,3)^-1 x(1,2)^-1");
    c.h2 = word(3, "p(1,3) p(1,2)");
    assert!(!phi::check_property_c_case(&c).unwrap());
}

#[test]
fn mutation_05_phi_case_conjugator() {
    let mut c = case("sigma_m_eq_i-1_xx.json");
    assert!(phi::check_property_c_case(&c).unwrap());
    c.h2 = SWord::empty(c.n);
    assert!(!phi::check_property_c_case(&c).unwrap());
}

#[test]
fn mutation_06_relation_rhs() {
    let cfg = Config::default();
    let mut all = relation_instances(4);
    let k = all.iter().position(|r| r.schema == Schema::C3).unwrap();
    let mut rhs = all[k].rhs.clone();
    rhs.push(Letter::pos(Generator::T(1)));
    all[k].rhs = rhs;
    let r = verify::verify_instances("mutated", 4, &all, &cfg).unwrap();
    assert_eq!(r.failures.len(), 1, "{}", r.summary());
    assert_eq!(r.failures[0].schema, "C3");
}

#[test]
fn mutation_07_unlisted_c2_triple() {
    let listed = c2_triples(OrderClass::IJK);
    let (a, b, c) = verify::all_triples().into_iter().find(|t| !listed.contains(t)).unwrap();
    let (lhs, rhs) = verify::c2_sides(3, (1, 2, 3), (a, b, c));
    assert!(!lhs.realize().equals(&rhs.realize()).unwrap());
}

#[test]
fn mutation_08_catalog_word() {
    // replace x_12 by its inverse on the left side of every relation only
    let flip_x12 = |w: &SWord| {
        let letters = w
            .letters()
            .iter()
            .map(|l| if l.gen == Alpha::X.gen(1, 2) { l.inverse() } else { *l })
            .collect();
        SWord::new(w.n(), letters).unwrap()
    };
    let all: Vec<RelationInstance> = relation_instances(3)
        .into_iter()
        .map(|mut r| {
            r.lhs = flip_x12(&r.lhs);
            r
        })
        .collect();
    let r = verify::verify_instances("mutated", 3, &all, &Config::default()).unwrap();
    assert!(!r.failures.is_empty());
}

#[test]
fn mutation_09_framed_letter_direction() {
    // Φ_g must realize conjugation by g, not by g⁻¹
    let g = word(3, "sigma(1)");
    let mut wrong = 0;
    for s in generators(3) {
        let x = SWord::new(3, vec![Letter::pos(s)]).unwrap();
        let got = phi::phi(&g, &x).unwrap().realize();
        let gb = g.realize();
        let inverted = gb.invert().concat(&x.realize()).concat(&gb);
        if !got.equals(&inverted).unwrap() {
            wrong += 1;
        }
    }
    assert!(wrong > 0);
}

#[test]
fn mutation_10_truncated_generator() {
    let p = Alpha::P.gen(1, 2).braid(2);
    let letters = p.letters();
    let cut = BraidWord::new(4, letters[..letters.len() - 1].to_vec()).unwrap();
    let pure = cut.permutation().is_identity();
    let caps = tl::hilden_cap_test(&cut).passed();
    assert!(!(pure && caps));
    assert!(!cut.equals(&p).unwrap());
}
