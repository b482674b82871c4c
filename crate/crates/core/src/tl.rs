//! Kauffman-bracket action of `B_{2n}` on crossingless matchings of `2n` points.
//!
//! Coefficients are exact Laurent polynomials in `A`. The cap state
//! `{(1,2),(3,4),…}` is an eigenvector, up to framing factors `(−A^{−3})^m`,
//! for every braid that preserves the caps, which makes the action a cheap
//! necessary condition for membership and an independent check on braid
//! equality.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TlError {
    #[error("generator {k} out of range for {points} points")]
    Index { k: usize, points: usize },
    #[error("braid on {strands} strands applied to a vector on {points} points")]
    Mismatch { strands: usize, points: usize },
}

/// Sparse Laurent polynomial in `A` with big-integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c.into());
        p
    }

    /// Loop value `δ = −A² − A⁻²`.
    pub fn delta() -> Self {
        let mut p = LaurentPoly::monomial(-1, 2);
        p.add_term(-2, BigInt::from(-1));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// `self += sign · A^shift · other`
    pub fn add_shifted(&mut self, other: &LaurentPoly, sign: i32, shift: i32) {
        for (&e, c) in &other.terms {
            let c = if sign < 0 { -c.clone() } else { c.clone() };
            self.add_term(e + shift, c);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_shifted(other, 1, 0);
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        out.add_shifted(self, -1, 0);
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// `(c, e)` when the polynomial is the single term `c·A^e`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i32)> {
        if self.terms.len() == 1 {
            let (&e, c) = self.terms.iter().next().unwrap();
            Some((c, e))
        } else {
            None
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else if k > 0 { "+" } else { "" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let mag = c.abs();
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "A^{e}")?,
                (_, false) => write!(f, "{mag}A^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A crossingless perfect matching on points `1..=2n`, stored as a
/// zero-based partner table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    partner: Vec<u16>,
}

impl Matching {
    /// Build from 1-based pairs; `None` if the pairs are not a crossingless perfect matching.
    pub fn from_pairs(points: usize, pairs: &[(usize, usize)]) -> Option<Matching> {
        let mut partner = vec![u16::MAX; points];
        for &(a, b) in pairs {
            if a == b || a == 0 || b == 0 || a > points || b > points {
                return None;
            }
            let (a, b) = (a - 1, b - 1);
            if partner[a] != u16::MAX || partner[b] != u16::MAX {
                return None;
            }
            partner[a] = b as u16;
            partner[b] = a as u16;
        }
        let m = Matching { partner };
        (m.partner.iter().all(|&p| p != u16::MAX) && m.is_crossingless()).then_some(m)
    }

    pub fn cap(n: usize) -> Matching {
        let partner = (0..2 * n).map(|p| (p ^ 1) as u16).collect();
        Matching { partner }
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    /// 1-based partner of 1-based point `p`.
    pub fn partner(&self, p: usize) -> usize {
        self.partner[p - 1] as usize + 1
    }

    /// 1-based pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&a| (self.partner[a] as usize) > a)
            .map(|a| (a + 1, self.partner[a] as usize + 1))
            .collect()
    }

    fn is_crossingless(&self) -> bool {
        let pairs = self.pairs();
        pairs.iter().all(|&(a, b)| {
            pairs.iter().all(|&(c, d)| !(a < c && c < b && b < d))
        })
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (a, b)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

const CACHED: usize = 12;
static MATCHINGS: [OnceLock<Vec<Matching>>; CACHED + 1] = [const { OnceLock::new() }; CACHED + 1];

fn enumerate(points: usize) -> Vec<Matching> {
    // the first point pairs with some q; inside and outside of (lo, q) match independently
    fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo >= hi {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for q in (lo + 1..hi).step_by(2) {
            let inner = rec(lo + 1, q);
            let outer = rec(q + 1, hi);
            for i in &inner {
                for o in &outer {
                    let mut pairs = vec![(lo, q)];
                    pairs.extend_from_slice(i);
                    pairs.extend_from_slice(o);
                    out.push(pairs);
                }
            }
        }
        out
    }
    let mut ms: Vec<Matching> = rec(0, points)
        .into_iter()
        .map(|pairs| {
            let mut partner = vec![0u16; points];
            for (a, b) in pairs {
                partner[a] = b as u16;
                partner[b] = a as u16;
            }
            Matching { partner }
        })
        .collect();
    ms.sort();
    ms
}

/// All crossingless matchings of `2n` points, in a fixed order.
pub fn matchings(n: usize) -> Vec<Matching> {
    if n <= CACHED {
        MATCHINGS[n].get_or_init(|| enumerate(2 * n)).clone()
    } else {
        enumerate(2 * n)
    }
}

/// Formal linear combination of matchings.
#[derive(Clone, PartialEq, Eq)]
pub struct TlVector {
    points: usize,
    terms: BTreeMap<Matching, LaurentPoly>,
}

impl TlVector {
    pub fn zero(points: usize) -> Self {
        TlVector { points, terms: BTreeMap::new() }
    }

    pub fn basis(m: Matching) -> Self {
        let mut v = TlVector::zero(m.points());
        v.terms.insert(m, LaurentPoly::one());
        v
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Matching) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Matching, &LaurentPoly)> {
        self.terms.iter()
    }

    fn add_shifted(&mut self, m: &Matching, c: &LaurentPoly, sign: i32, shift: i32) {
        let slot = self.terms.entry(m.clone()).or_default();
        slot.add_shifted(c, sign, shift);
        if slot.is_zero() {
            self.terms.remove(m);
        }
    }

    pub fn add(&self, other: &TlVector) -> TlVector {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_shifted(m, c, 1, 0);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> TlVector {
        let mut out = TlVector::zero(self.points);
        for (m, d) in &self.terms {
            let p = d.mul(c);
            if !p.is_zero() {
                out.terms.insert(m.clone(), p);
            }
        }
        out
    }
}

impl fmt::Debug for TlVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})·{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn cap_state(n: usize) -> TlVector {
    TlVector::basis(Matching::cap(n))
}

/// Apply `σ_k^sign`: `σ_k ↦ A·id + A⁻¹·e_k`, `σ_k⁻¹ ↦ A⁻¹·id + A·e_k`.
pub fn skein_act_letter(v: &TlVector, k: usize, sign: i32) -> Result<TlVector, TlError> {
    if k == 0 || k >= v.points {
        return Err(TlError::Index { k, points: v.points });
    }
    let (id_shift, e_shift) = if sign > 0 { (1, -1) } else { (-1, 1) };
    let delta = LaurentPoly::delta();
    let (a, b) = (k - 1, k);
    let mut out = TlVector::zero(v.points);
    for (m, c) in &v.terms {
        out.add_shifted(m, c, 1, id_shift);
        if m.partner[a] as usize == b {
            let dc = c.mul(&delta);
            out.add_shifted(m, &dc, 1, e_shift);
        } else {
            let (pa, pb) = (m.partner[a] as usize, m.partner[b] as usize);
            let mut r = m.clone();
            r.partner[a] = b as u16;
            r.partner[b] = a as u16;
            r.partner[pa] = pb as u16;
            r.partner[pb] = pa as u16;
            out.add_shifted(&r, c, 1, e_shift);
        }
    }
    Ok(out)
}

/// Apply the letters of `w` from left to right.
pub fn act(w: &BraidWord, v: &TlVector) -> Result<TlVector, TlError> {
    if w.strands() != v.points {
        return Err(TlError::Mismatch { strands: w.strands(), points: v.points });
    }
    let mut cur = v.clone();
    for &g in w.letters() {
        cur = skein_act_letter(&cur, g.unsigned_abs() as usize, g.signum())?;
    }
    Ok(cur)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapTest {
    Pass(i32),
    Fail,
}

impl CapTest {
    pub fn passed(self) -> bool {
        matches!(self, CapTest::Pass(_))
    }

    pub fn writhe(self) -> Option<i32> {
        match self {
            CapTest::Pass(m) => Some(m),
            CapTest::Fail => None,
        }
    }
}

/// The cap state times `(−A^{−3})^m`, as `Some(m)`.
fn framing_factor(v: &TlVector, n: usize) -> Option<i32> {
    if v.support_size() != 1 {
        return None;
    }
    let c = v.terms.get(&Matching::cap(n))?;
    let (coef, e) = c.as_monomial()?;
    if e % 3 != 0 {
        return None;
    }
    let m = -e / 3;
    let expected = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    (*coef == expected).then_some(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapReport {
    pub result: String,
    pub writhe: Option<i32>,
    pub support_size: usize,
}

/// Cap-state test with the size of the resulting support.
pub fn cap_report(w: &BraidWord) -> Result<CapReport, TlError> {
    if !w.strands().is_multiple_of(2) {
        return Err(TlError::Mismatch { strands: w.strands(), points: w.strands() + 1 });
    }
    let n = w.strands() / 2;
    let v = act(w, &cap_state(n))?;
    let t = match framing_factor(&v, n) {
        Some(m) => CapTest::Pass(m),
        None => CapTest::Fail,
    };
    Ok(CapReport {
        result: if t.passed() { "pass" } else { "fail" }.into(),
        writhe: t.writhe(),
        support_size: v.support_size(),
    })
}

/// `Pass(m)` iff `w` sends the cap state to `(−A^{−3})^m` times itself.
pub fn hilden_cap_test(w: &BraidWord) -> CapTest {
    match cap_report(w) {
        Ok(CapReport { writhe: Some(m), .. }) => CapTest::Pass(m),
        _ => CapTest::Fail,
    }
}

/// `u` and `v` act identically on `x`.
pub fn actions_agree(u: &BraidWord, v: &BraidWord, x: &TlVector) -> Result<bool, TlError> {
    Ok(act(u, x)? == act(v, x)?)
}

/// `w` acts as the identity on every basis matching.
pub fn acts_trivially(w: &BraidWord) -> Result<bool, TlError> {
    if !w.strands().is_multiple_of(2) {
        return Err(TlError::Mismatch { strands: w.strands(), points: w.strands() + 1 });
    }
    for m in matchings(w.strands() / 2) {
        let x = TlVector::basis(m);
        if act(w, &x)? != x {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(strands: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(strands, letters.to_vec()).unwrap()
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| matchings(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132]);
        assert!(matchings(3).contains(&Matching::cap(3)));
    }

    #[test]
    fn cap_state_shape() {
        let v = cap_state(2);
        assert_eq!(v.support_size(), 1);
        assert_eq!(v.coeff(&Matching::from_pairs(4, &[(1, 2), (3, 4)]).unwrap()), LaurentPoly::one());
    }

    #[test]
    fn kink_factors() {
        let c = cap_state(1);
        let v = skein_act_letter(&c, 1, 1).unwrap();
        assert_eq!(v, c.scale(&LaurentPoly::monomial(-1, -3)));
        let v = skein_act_letter(&c, 1, -1).unwrap();
        assert_eq!(v, c.scale(&LaurentPoly::monomial(-1, 3)));
    }

    #[test]
    fn reconnection() {
        let v = skein_act_letter(&cap_state(2), 2, 1).unwrap();
        let m = Matching::from_pairs(4, &[(1, 4), (2, 3)]).unwrap();
        assert_eq!(v.support_size(), 2);
        assert_eq!(v.coeff(&Matching::cap(2)), LaurentPoly::monomial(1, 1));
        assert_eq!(v.coeff(&m), LaurentPoly::monomial(1, -1));
        assert!(skein_act_letter(&cap_state(2), 4, 1).is_err());
        assert!(skein_act_letter(&cap_state(2), 0, 1).is_err());
    }

    #[test]
    fn act_examples() {
        let c = cap_state(2);
        assert_eq!(act(&BraidWord::identity(4), &c).unwrap(), c);
        assert_eq!(act(&bw(4, &[1, -1]), &c).unwrap(), c);
        assert_eq!(act(&bw(4, &[1, 1]), &c).unwrap(), c.scale(&LaurentPoly::monomial(1, -6)));
    }

    #[test]
    fn cap_test_examples() {
        assert_eq!(hilden_cap_test(&bw(4, &[1, 1])), CapTest::Pass(2));
        assert_eq!(hilden_cap_test(&bw(4, &[2])), CapTest::Fail);
        assert_eq!(hilden_cap_test(&bw(4, &[2, 2])), CapTest::Fail);
        assert_eq!(hilden_cap_test(&BraidWord::identity(4)), CapTest::Pass(0));
        let r = cap_report(&bw(4, &[2])).unwrap();
        assert_eq!((r.result.as_str(), r.writhe, r.support_size), ("fail", None, 2));
    }

    #[test]
    fn poly_display() {
        let p = LaurentPoly::delta();
        assert_eq!(p.to_string(), "-A^2 - A^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn from_pairs_rejects_crossing() {
        assert!(Matching::from_pairs(4, &[(1, 3), (2, 4)]).is_none());
        assert!(Matching::from_pairs(4, &[(1, 2)]).is_none());
    }
}
