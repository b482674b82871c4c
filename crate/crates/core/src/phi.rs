//! The action `Φ` of the free group on framed letters `σ_i`, `τ_j` by
//! automorphisms of the free group on `p_ij, x_ij, y_ij, t_k`, and checkers
//! for its properties.
//!
//! `Φ_{gh} = Φ_g ∘ Φ_h`, so [`phi`] applies the letters of `g` from the
//! right. At braid level `Φ_g(s)` is the conjugate `g s g⁻¹`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidError, DEFAULT_BUDGET};
use crate::presentation::{
    edge_family, framed_generators, generators, Alpha, Generator, Letter, PresentationError, SWord,
};

#[derive(Debug, Error)]
pub enum PhiError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("alphabet violation: {0}")]
    Alphabet(String),
    #[error("words over n = {0} and n = {1}")]
    Mismatch(usize, usize),
    #[error("{0} is not an edge-orbit representative")]
    NotInFamily(String),
    #[error("fixture {path}: {reason}")]
    Fixture { path: String, reason: String },
}

fn w(n: usize, letters: Vec<Letter>) -> SWord {
    SWord::new(n, letters).expect("image indices in range")
}

fn conj(n: usize, c: Generator, s: Letter, c_sign: i8) -> SWord {
    // c^{c_sign} s c^{-c_sign}
    w(n, vec![Letter::new(c, c_sign), s, Letter::new(c, -c_sign)])
}

/// `Φ_{σ_m}` (or its inverse when `inv`) on a positive S-letter.
fn sigma_image(n: usize, m: usize, inv: bool, s: Generator) -> SWord {
    let one = |g: Generator| w(n, vec![Letter::pos(g)]);
    let p = Alpha::P.gen(m, m + 1);
    if let Generator::T(j) = s {
        let j = if j == m {
            m + 1
        } else if j == m + 1 {
            m
        } else {
            j
        };
        return one(Generator::T(j));
    }
    let (a, k, l) = s.alpha().expect("pair or twist letter");
    if (k, l) == (m, m + 1) {
        return match (a, inv) {
            (Alpha::P, _) => one(s),
            (Alpha::X, false) => {
                let t = Generator::T(m + 1);
                w(n, vec![Letter::neg(t), Letter::pos(Alpha::Y.gen(k, l)), Letter::pos(t)])
            }
            (Alpha::Y, false) => one(Alpha::X.gen(k, l)),
            (Alpha::X, true) => one(Alpha::Y.gen(k, l)),
            (Alpha::Y, true) => conj(n, Generator::T(m), Letter::pos(Alpha::X.gen(k, l)), 1),
        };
    }
    let sign = if inv { -1 } else { 1 };
    if k == m {
        // α_{m,l}, l > m+1
        let moved = Letter::pos(a.gen(m + 1, l));
        if inv {
            conj(n, p, moved, sign)
        } else {
            w(n, vec![moved])
        }
    } else if k == m + 1 {
        let moved = Letter::pos(a.gen(m, l));
        if inv {
            w(n, vec![moved])
        } else {
            conj(n, p, moved, sign)
        }
    } else if l == m + 1 {
        // α_{k,m+1}, k < m
        let moved = Letter::pos(a.gen(k, m));
        if inv {
            w(n, vec![moved])
        } else {
            conj(n, p, moved, sign)
        }
    } else if l == m {
        let moved = Letter::pos(a.gen(k, m + 1));
        if inv {
            conj(n, p, moved, sign)
        } else {
            w(n, vec![moved])
        }
    } else {
        one(s)
    }
}

/// `Φ_{τ_m}` (or its inverse when `inv`) on a positive S-letter.
fn tau_image(n: usize, m: usize, inv: bool, s: Generator) -> SWord {
    let twisted = match s {
        Generator::X(k, l) if k == m => Some(Alpha::P.gen(k, l)),
        Generator::Y(k, l) if l == m => Some(Alpha::P.gen(k, l)),
        _ => None,
    };
    match twisted {
        None => w(n, vec![Letter::pos(s)]),
        Some(p) if inv => w(n, vec![Letter::pos(p), Letter::neg(s)]),
        Some(p) => w(n, vec![Letter::neg(s), Letter::pos(p)]),
    }
}

/// Image of the signed S-letter `s` under the signed framed letter `g`.
pub fn phi_letter(n: usize, g: Letter, s: Letter) -> Result<SWord, PhiError> {
    if !g.gen.is_framed() {
        return Err(PhiError::Alphabet(format!("{g} is not a framed letter")));
    }
    if s.gen.is_framed() {
        return Err(PhiError::Alphabet(format!("{s} is not a letter of S")));
    }
    g.gen.check(n)?;
    s.gen.check(n)?;
    let inv = g.sign < 0;
    let image = match g.gen {
        Generator::Sigma(m) => sigma_image(n, m, inv, s.gen),
        Generator::Tau(m) => tau_image(n, m, inv, s.gen),
        _ => unreachable!(),
    };
    Ok(if s.sign < 0 { image.inverse() } else { image })
}

fn phi_by_letter(g: Letter, x: &SWord) -> Result<SWord, PhiError> {
    let mut out = SWord::empty(x.n());
    for &s in x.letters() {
        out = out.concat(&phi_letter(x.n(), g, s)?);
    }
    Ok(out.free_reduce())
}

/// `Φ_g(x)`, freely reduced.
pub fn phi(g: &SWord, x: &SWord) -> Result<SWord, PhiError> {
    if g.n() != x.n() {
        return Err(PhiError::Mismatch(g.n(), x.n()));
    }
    let mut cur = x.free_reduce();
    for &l in g.letters().iter().rev() {
        cur = phi_by_letter(l, &cur)?;
    }
    Ok(cur)
}

/// `Φ_g(x)` and `g x g⁻¹` are the same braid.
pub fn check_property_a(g: &SWord, x: &SWord) -> Result<bool, PhiError> {
    check_property_a_budget(g, x, DEFAULT_BUDGET)
}

pub fn check_property_a_budget(g: &SWord, x: &SWord, budget: u64) -> Result<bool, PhiError> {
    let lhs = phi(g, x)?.realize();
    let gb = g.realize();
    let rhs = gb.concat(&x.realize()).concat(&gb.invert());
    Ok(lhs.equals_with_budget(&rhs, budget)?)
}

/// `Φ_g` keeps words over `{p, t}` over `{p, t}`.
pub fn check_property_b(g: &SWord, h: &SWord) -> Result<bool, PhiError> {
    if !h.is_over_pt() {
        return Err(PhiError::Alphabet(format!("{h} has letters outside p, t")));
    }
    Ok(phi(g, h)?.is_over_pt())
}

/// `Φ_q ∘ Φ_{q⁻¹}` and `Φ_{q⁻¹} ∘ Φ_q` fix every S-letter, as free-group words.
pub fn check_phi_inverse(n: usize, q: Generator) -> Result<bool, PhiError> {
    let fwd = SWord::new(n, vec![Letter::pos(q)])?;
    let back = fwd.inverse();
    for s in generators(n) {
        let x = SWord::new(n, vec![Letter::pos(s)])?;
        if phi(&fwd, &phi(&back, &x)?)? != x || phi(&back, &phi(&fwd, &x)?)? != x {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FramedKind {
    Sigma,
    Tau,
}

/// `Φ_{q_m^{-2}}(s)` equals `c⁻¹ s c` as braids, with `c = p_{m,m+1}` for
/// `σ_m` and `c = t_m` for `τ_m`.
pub fn check_inverse_squared(n: usize, m: usize, kind: FramedKind, s: Letter) -> Result<bool, PhiError> {
    check_inverse_squared_budget(n, m, kind, s, DEFAULT_BUDGET)
}

pub fn check_inverse_squared_budget(
    n: usize,
    m: usize,
    kind: FramedKind,
    s: Letter,
    budget: u64,
) -> Result<bool, PhiError> {
    let (q, c) = match kind {
        FramedKind::Sigma => (Generator::Sigma(m), Alpha::P.gen(m, m + 1)),
        FramedKind::Tau => (Generator::Tau(m), Generator::T(m)),
    };
    let g = SWord::new(n, vec![Letter::neg(q), Letter::neg(q)])?;
    let x = SWord::new(n, vec![s])?;
    let expected = SWord::new(n, vec![Letter::neg(c), s, Letter::pos(c)])?;
    Ok(phi(&g, &x)?.realize().equals_with_budget(&expected.realize(), budget)?)
}

/// `Φ_g(lhs)` and `Φ_g(rhs)` are the same braid.
pub fn check_property_d_weak(g: &SWord, lhs: &SWord, rhs: &SWord, budget: u64) -> Result<bool, PhiError> {
    Ok(phi(g, lhs)?.realize().equals_with_budget(&phi(g, rhs)?.realize(), budget)?)
}

/// One row of the property (C) tables: `Φ_g(r) = h1 · r_target · h2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiCase {
    pub n: usize,
    pub g: SWord,
    pub r: SWord,
    pub h1: SWord,
    pub r_target: SWord,
    pub h2: SWord,
    pub anchor: String,
}

#[derive(Serialize, Deserialize)]
struct RawCase {
    g: String,
    r: String,
    h1: String,
    r_target: String,
    h2: String,
    n: usize,
    paper_case: String,
}

impl PhiCase {
    pub fn from_json(text: &str) -> Result<PhiCase, PhiError> {
        let raw: RawCase = serde_json::from_str(text)
            .map_err(|e| PhiError::Fixture { path: "<json>".into(), reason: e.to_string() })?;
        let n = raw.n;
        Ok(PhiCase {
            n,
            g: SWord::parse(n, &raw.g)?,
            r: SWord::parse(n, &raw.r)?,
            h1: SWord::parse(n, &raw.h1)?,
            r_target: SWord::parse(n, &raw.r_target)?,
            h2: SWord::parse(n, &raw.h2)?,
            anchor: raw.paper_case,
        })
    }

    pub fn to_json(&self) -> String {
        let raw = RawCase {
            g: self.g.to_string(),
            r: self.r.to_string(),
            h1: self.h1.to_string(),
            r_target: self.r_target.to_string(),
            h2: self.h2.to_string(),
            n: self.n,
            paper_case: self.anchor.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }
}

/// Check one case: alphabet and family conditions, then braid equality.
pub fn check_property_c_case(c: &PhiCase) -> Result<bool, PhiError> {
    check_property_c_case_budget(c, DEFAULT_BUDGET)
}

pub fn check_property_c_case_budget(c: &PhiCase, budget: u64) -> Result<bool, PhiError> {
    if c.g.len() != 1 || !c.g.is_framed() {
        return Err(PhiError::Alphabet(format!("g = {} must be a single framed letter", c.g)));
    }
    for h in [&c.h1, &c.h2] {
        if !h.is_over_pt() {
            return Err(PhiError::Alphabet(format!("{h} has letters outside p, t")));
        }
    }
    let family = edge_family(c.n);
    for r in [&c.r, &c.r_target] {
        if !family.contains(r) {
            return Err(PhiError::NotInFamily(r.to_string()));
        }
    }
    let lhs = phi(&c.g, &c.r)?.realize();
    let rhs = c.h1.concat(&c.r_target).concat(&c.h2).realize();
    Ok(lhs.equals_with_budget(&rhs, budget)?)
}

/// Load every `*.json` case under `dir`, sorted by file name.
pub fn load_cases(dir: &Path) -> Result<Vec<(String, PhiCase)>, PhiError> {
    let fixture_err = |reason: String| PhiError::Fixture { path: dir.display().to_string(), reason };
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| fixture_err(e.to_string()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let text = std::fs::read_to_string(&p).map_err(|e| fixture_err(e.to_string()))?;
            let case = PhiCase::from_json(&text).map_err(|e| PhiError::Fixture {
                path: p.display().to_string(),
                reason: e.to_string(),
            })?;
            Ok((name, case))
        })
        .collect()
}

/// All framed letters for `n` caps, both signs.
pub fn framed_letters(n: usize) -> Vec<Letter> {
    framed_generators(n).into_iter().flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::word;

    fn pl(n: usize, g: &str, s: &str) -> SWord {
        let g = word(n, g).letters()[0];
        let s = word(n, s).letters()[0];
        phi_letter(n, g, s).unwrap()
    }

    #[test]
    fn table_examples() {
        assert_eq!(pl(2, "tau(1)", "p(1,2)"), word(2, "p(1,2)"));
        assert_eq!(pl(2, "sigma(1)", "y(1,2)"), word(2, "x(1,2)"));
        assert_eq!(pl(3, "tau(1)", "x(1,3)"), word(3, "x(1,3)^-1 p(1,3)"));
        assert_eq!(pl(2, "sigma(1)", "x(1,2)"), word(2, "t(2)^-1 y(1,2) t(2)"));
        assert_eq!(pl(3, "sigma(1)", "x(1,3)"), word(3, "x(2,3)"));
        assert_eq!(pl(3, "sigma(1)", "y(2,3)"), word(3, "p(1,2) y(1,3) p(1,2)^-1"));
        assert_eq!(pl(3, "sigma(2)", "x(1,3)"), word(3, "p(2,3) x(1,2) p(2,3)^-1"));
        assert_eq!(pl(3, "sigma(2)", "p(1,2)"), word(3, "p(1,3)"));
        assert_eq!(pl(3, "sigma(1)", "t(1)"), word(3, "t(2)"));
        assert_eq!(pl(3, "sigma(1)^-1", "t(2)"), word(3, "t(1)"));
        assert_eq!(pl(3, "sigma(1)^-1", "y(1,2)"), word(3, "t(1) x(1,2) t(1)^-1"));
        assert_eq!(pl(3, "tau(3)^-1", "y(2,3)"), word(3, "p(2,3) y(2,3)^-1"));
        assert_eq!(pl(3, "tau(3)", "y(2,3)^-1"), word(3, "p(2,3)^-1 y(2,3)"));
        assert_eq!(pl(4, "sigma(1)", "x(3,4)"), word(4, "x(3,4)"));
    }

    #[test]
    fn phi_examples() {
        let x = word(2, "x(1,2)");
        assert_eq!(phi(&SWord::empty(2), &x).unwrap(), x);
        assert_eq!(phi(&word(2, "sigma(1) sigma(1)^-1"), &x).unwrap(), x);
        assert_eq!(phi(&word(2, "tau(1) tau(1)"), &x).unwrap(), word(2, "p(1,2)^-1 x(1,2) p(1,2)"));
    }

    #[test]
    fn composition_order() {
        // Φ_{σ1 σ2}(x13) = Φ_{σ1}(p23 x12 p23^-1)
        let lhs = phi(&word(3, "sigma(1) sigma(2)"), &word(3, "x(1,3)")).unwrap();
        let rhs = phi(&word(3, "sigma(1)"), &word(3, "p(2,3) x(1,2) p(2,3)^-1")).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_wrong_alphabet() {
        let p = word(2, "p(1,2)").letters()[0];
        assert!(phi_letter(2, p, p).is_err());
        assert!(check_property_b(&word(2, "sigma(1)"), &word(2, "x(1,2)")).is_err());
        assert!(phi_letter(2, word(3, "tau(3)").letters()[0], p).is_err());
    }

    #[test]
    fn property_a_examples() {
        assert!(check_property_a(&word(2, "tau(1)"), &word(2, "x(1,2)")).unwrap());
        assert!(check_property_a(&word(2, "sigma(1)"), &word(2, "y(1,2)")).unwrap());
        assert!(check_property_a(&SWord::empty(2), &word(2, "t(2)")).unwrap());
    }

    #[test]
    fn property_b_examples() {
        assert!(check_property_b(&word(3, "sigma(2)"), &word(3, "p(2,3) t(1)")).unwrap());
        assert!(check_property_b(&word(3, "tau(1)"), &word(3, "t(1)")).unwrap());
        assert!(check_property_b(&word(3, "sigma(1)"), &word(3, "p(1,2)")).unwrap());
    }

    #[test]
    fn inverse_examples() {
        assert!(check_phi_inverse(3, Generator::Sigma(1)).unwrap());
        assert!(check_phi_inverse(3, Generator::Tau(2)).unwrap());
        assert!(check_phi_inverse(4, Generator::Sigma(2)).unwrap());
    }

    #[test]
    fn inverse_squared_examples() {
        let l = |n: usize, s: &str| word(n, s).letters()[0];
        assert!(check_inverse_squared(2, 1, FramedKind::Tau, l(2, "x(1,2)")).unwrap());
        assert!(check_inverse_squared(3, 1, FramedKind::Sigma, l(3, "y(1,3)")).unwrap());
        assert!(check_inverse_squared(3, 2, FramedKind::Sigma, l(3, "p(1,2)")).unwrap());
    }

    #[test]
    fn case_json_round_trip() {
        let c = PhiCase {
            n: 3,
            g: word(3, "tau(1)"),
            r: word(3, "x(1,2) x(1,3)"),
            h1: SWord::empty(3),
            r_target: word(3, "x(1,3)^-1 x(1,2)^-1"),
            h2: word(3, "p(1,2) p(1,3)"),
            anchor: "tau_i on x_ij x_ik".into(),
        };
        let back = PhiCase::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(check_property_c_case(&c).unwrap());
    }

    #[test]
    fn case_rejects_bad_h() {
        let c = PhiCase {
            n: 3,
            g: word(3, "tau(1)"),
            r: word(3, "x(1,2) x(1,3)"),
            h1: word(3, "x(1,2)"),
            r_target: word(3, "x(1,3)^-1 x(1,2)^-1"),
            h2: word(3, "p(1,2) p(1,3)"),
            anchor: String::new(),
        };
        assert!(matches!(check_property_c_case(&c), Err(PhiError::Alphabet(_))));
    }
}
