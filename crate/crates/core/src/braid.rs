//! Braid words over Artin generators and an exact word-problem solver.
//!
//! A positive letter `g` stands for `σ_g`: the strand at position `g`
//! crosses over the strand at position `g + 1`. Words are read left to right.
//!
//! Triviality is decided by Dehornoy's handle reduction. A `σ_i`-handle is a
//! subword `σ_i^e v σ_i^-e` where `v` only uses generators of index `> i`.
//! Reducing it rewrites every `σ_{i+1}^d` in `v` as `σ_{i+1}^-e σ_i^d σ_{i+1}^e`
//! and drops the two outer letters. A word without handles is either empty or
//! `σ`-definite (its lowest generator occurs with a single sign), and
//! `σ`-definite words are never trivial.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Handle reductions allowed per triviality check unless overridden.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("handle reduction exceeded its budget of {0} steps")]
    BudgetExceeded(u64),
    #[error("cannot parse braid word: {0}")]
    Parse(String),
}

/// A word in the Artin generators of `B_strands`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid", into = "RawBraid")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawBraid {
    strands: usize,
    letters: Vec<i32>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = BraidError;
    fn try_from(raw: RawBraid) -> Result<Self, Self::Error> {
        BraidWord::new(raw.strands, raw.letters)
    }
}

impl From<BraidWord> for RawBraid {
    fn from(w: BraidWord) -> Self {
        RawBraid { strands: w.strands, letters: w.letters }
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if let Some(&bad) = letters
            .iter()
            .find(|&&g| g == 0 || g.unsigned_abs() as usize >= strands)
        {
            return Err(BraidError::LetterOutOfRange { letter: bad, strands });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// Single Artin letter; panics if out of range.
    pub fn generator(strands: usize, letter: i32) -> Self {
        BraidWord::new(strands, vec![letter]).expect("generator out of range")
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "concatenating braids on different strand counts");
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    pub fn push(&mut self, letter: i32) {
        assert!(letter != 0 && (letter.unsigned_abs() as usize) < self.strands);
        self.letters.push(letter);
    }

    pub fn extend(&mut self, other: &BraidWord) {
        assert_eq!(self.strands, other.strands);
        self.letters.extend_from_slice(&other.letters);
    }

    /// Reverse the word and flip every sign.
    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|g| -g).collect(),
        }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i32) -> BraidWord {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = BraidWord::identity(self.strands);
        for _ in 0..k.unsigned_abs() {
            out.extend(&base);
        }
        out
    }

    /// `c · self · c⁻¹`.
    pub fn conjugate_by(&self, c: &BraidWord) -> BraidWord {
        c.concat(self).concat(&c.invert())
    }

    /// Same letters viewed in a braid group with more strands.
    pub fn widen(&self, strands: usize) -> BraidWord {
        assert!(strands >= self.strands);
        BraidWord { strands, letters: self.letters.clone() }
    }

    /// Cancel adjacent `g g⁻¹` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: free_reduce_letters(&self.letters) }
    }

    /// Image in `Sym(strands)` under `σ_k ↦ (k k+1)`.
    pub fn permutation(&self) -> Permutation {
        let mut at_position: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            let k = g.unsigned_abs() as usize - 1;
            at_position.swap(k, k + 1);
        }
        // at_position[p] is the strand that finishes at p
        let mut images = vec![0; self.strands];
        for (pos, &strand) in at_position.iter().enumerate() {
            images[strand] = pos + 1;
        }
        Permutation { images }
    }

    /// Exponent sum, the abelianisation `B_n → Z`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|g| g.signum() as i64).sum()
    }

    pub fn is_trivial(&self) -> Result<bool, BraidError> {
        self.is_trivial_with_budget(DEFAULT_BUDGET)
    }

    pub fn is_trivial_with_budget(&self, budget: u64) -> Result<bool, BraidError> {
        let reduced = free_reduce_letters(&self.letters);
        if reduced.is_empty() {
            return Ok(true);
        }
        if !self.permutation().is_identity() || self.exponent_sum() != 0 {
            return Ok(false);
        }
        Ok(handle_reduce(&reduced, budget)?.is_empty())
    }

    /// Fully handle-reduced representative: empty, or `σ`-positive / `σ`-negative.
    pub fn handle_reduce(&self, budget: u64) -> Result<BraidWord, BraidError> {
        let letters = handle_reduce(&free_reduce_letters(&self.letters), budget)?;
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn equals(&self, other: &BraidWord) -> Result<bool, BraidError> {
        self.equals_with_budget(other, DEFAULT_BUDGET)
    }

    pub fn equals_with_budget(&self, other: &BraidWord, budget: u64) -> Result<bool, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let (a, b) = (self.free_reduce(), other.free_reduce());
        if a.letters == b.letters {
            return Ok(true);
        }
        if a.permutation() != b.permutation() || a.exponent_sum() != b.exponent_sum() {
            return Ok(false);
        }
        a.concat(&b.invert()).is_trivial_with_budget(budget)
    }
}

/// Whether `u` and `v` represent the same braid.
pub fn braids_equal(u: &BraidWord, v: &BraidWord) -> Result<bool, BraidError> {
    u.equals(v)
}

pub fn free_reduce_letters(letters: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &g in letters {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", self.strands)?;
        for g in &self.letters {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord({self})")
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    /// Parses `"6 | 1 -2 5"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, tail) = s
            .split_once('|')
            .ok_or_else(|| BraidError::Parse(format!("missing '|' in {s:?}")))?;
        let strands: usize = head
            .trim()
            .parse()
            .map_err(|_| BraidError::Parse(format!("bad strand count {:?}", head.trim())))?;
        let letters = tail
            .split_whitespace()
            .map(|t| t.parse::<i32>().map_err(|_| BraidError::Parse(format!("bad letter {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(strands, letters)
    }
}

/// A permutation of `1..=n`, stored as the image of each point.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || std::mem::replace(&mut seen[i - 1], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    /// Build from disjoint cycles on `1..=n`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                images[a - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i + 1 == j)
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.image(i)).collect() }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut next = self.image(start);
            while next != start {
                seen[next - 1] = true;
                cycle.push(next);
                next = self.image(next);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

const NIL: usize = usize::MAX;

/// Letters in a doubly linked list backed by vectors, so a handle can be
/// rewritten in place without shifting the rest of the word.
struct LetterList {
    letter: Vec<i32>,
    prev: Vec<usize>,
    next: Vec<usize>,
    head: usize,
    free: Vec<usize>,
}

impl LetterList {
    fn new(letters: &[i32]) -> Self {
        let n = letters.len();
        LetterList {
            letter: letters.to_vec(),
            prev: (0..n).map(|i| if i == 0 { NIL } else { i - 1 }).collect(),
            next: (0..n).map(|i| if i + 1 == n { NIL } else { i + 1 }).collect(),
            head: if n == 0 { NIL } else { 0 },
            free: Vec::new(),
        }
    }

    fn alloc(&mut self, g: i32) -> usize {
        if let Some(id) = self.free.pop() {
            self.letter[id] = g;
            id
        } else {
            self.letter.push(g);
            self.prev.push(NIL);
            self.next.push(NIL);
            self.letter.len() - 1
        }
    }

    fn unlink(&mut self, id: usize) {
        let (p, n) = (self.prev[id], self.next[id]);
        if p == NIL {
            self.head = n;
        } else {
            self.next[p] = n;
        }
        if n != NIL {
            self.prev[n] = p;
        }
        self.free.push(id);
    }

    fn insert_before(&mut self, at: usize, g: i32) -> usize {
        let id = self.alloc(g);
        let p = self.prev[at];
        self.prev[id] = p;
        self.next[id] = at;
        self.prev[at] = id;
        if p == NIL {
            self.head = id;
        } else {
            self.next[p] = id;
        }
        id
    }

    fn to_vec(&self) -> Vec<i32> {
        let mut out = Vec::new();
        let mut cur = self.head;
        while cur != NIL {
            out.push(self.letter[cur]);
            cur = self.next[cur];
        }
        out
    }

    /// Leftmost-ending handle `(start, end)`, if any.
    ///
    /// `open[i]` holds the latest `σ_i` letter seen with nothing of lower
    /// index after it; a later `σ_i` of opposite sign closes a handle.
    fn find_handle(&self, open: &mut [usize]) -> Option<(usize, usize)> {
        open.iter_mut().for_each(|o| *o = NIL);
        let mut cur = self.head;
        while cur != NIL {
            let g = self.letter[cur];
            let i = g.unsigned_abs() as usize;
            let p = open[i];
            if p != NIL && self.letter[p] == -g {
                return Some((p, cur));
            }
            open[i] = cur;
            for o in &mut open[i + 1..] {
                *o = NIL;
            }
            cur = self.next[cur];
        }
        None
    }

    fn reduce_handle(&mut self, start: usize, end: usize) {
        let e = self.letter[start].signum();
        let i = self.letter[start].abs();
        let mut cur = self.next[start];
        while cur != end {
            let nxt = self.next[cur];
            let g = self.letter[cur];
            if g.abs() == i + 1 {
                let d = g.signum();
                // σ_{i+1}^d  ->  σ_{i+1}^-e σ_i^d σ_{i+1}^e, cancelling against the left
                let p = self.prev[cur];
                if p != start && self.letter[p] == e * (i + 1) {
                    self.unlink(p);
                } else {
                    self.insert_before(cur, -e * (i + 1));
                }
                self.insert_before(cur, d * i);
                self.letter[cur] = e * (i + 1);
            }
            cur = nxt;
        }
        self.unlink(start);
        self.unlink(end);
    }
}

fn handle_reduce(letters: &[i32], budget: u64) -> Result<Vec<i32>, BraidError> {
    let max_index = letters.iter().map(|g| g.unsigned_abs() as usize).max().unwrap_or(0);
    let mut list = LetterList::new(letters);
    let mut open = vec![NIL; max_index + 2];
    let mut steps = 0u64;
    while let Some((start, end)) = list.find_handle(&mut open) {
        if steps >= budget {
            return Err(BraidError::BudgetExceeded(budget));
        }
        steps += 1;
        list.reduce_handle(start, end);
    }
    Ok(list.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(strands: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(strands, letters.to_vec()).unwrap()
    }

    #[test]
    fn free_reduction_examples() {
        assert!(w(3, &[1, -1]).free_reduce().is_empty());
        assert_eq!(w(4, &[2, 3, -3, 2]).free_reduce().letters(), &[2, 2]);
        assert!(w(3, &[1, 2, -2, -1]).free_reduce().is_empty());
    }

    #[test]
    fn inversion_examples() {
        assert!(w(3, &[]).invert().is_empty());
        assert_eq!(w(3, &[1, 2]).invert().letters(), &[-2, -1]);
        assert_eq!(w(4, &[-3]).invert().letters(), &[3]);
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(w(4, &[1]).permutation(), Permutation::from_cycles(4, &[&[1, 2]]).unwrap());
        assert!(w(4, &[1, 1]).permutation().is_identity());
        let a = w(4, &[1, 2]).permutation();
        let b = w(4, &[2, 1]).permutation();
        assert_ne!(a, b);
        // hand composition: strand 1 -> 2 -> 3, 2 -> 1, 3 -> 2
        assert_eq!(a, Permutation::from_cycles(4, &[&[1, 3, 2]]).unwrap());
        assert_eq!(b, Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap());
        assert_eq!(a.to_string(), "(1 3 2)");
    }

    #[test]
    fn triviality_examples() {
        assert!(w(3, &[]).is_trivial().unwrap());
        assert!(!w(3, &[1]).is_trivial().unwrap());
        assert!(w(3, &[1, 2, 1, -2, -1, -2]).is_trivial().unwrap());
        assert!(!w(3, &[1, 1, 2, 2, -1, -1, -2, -2]).is_trivial().unwrap());
    }

    #[test]
    fn equality_examples() {
        let x = w(5, &[1, -3, 2, 4]);
        assert!(braids_equal(&x, &x).unwrap());
        assert!(braids_equal(&w(4, &[1, 3]), &w(4, &[3, 1])).unwrap());
        assert!(!braids_equal(&w(4, &[1, 2]), &w(4, &[2, 1])).unwrap());
        assert_eq!(
            braids_equal(&w(4, &[1]), &w(5, &[1])),
            Err(BraidError::StrandMismatch(4, 5))
        );
    }

    #[test]
    fn handle_reduction_gives_sigma_definite_words() {
        // σ1 σ2 σ1⁻¹ reduces to σ2⁻¹ σ1 σ2
        let r = w(3, &[1, 2, -1]).handle_reduce(DEFAULT_BUDGET).unwrap();
        assert_eq!(r.letters(), &[-2, 1, 2]);
        // pure but nontrivial commutator of A_12 and A_23
        let c = w(3, &[1, 1, 2, 2, -1, -1, -2, -2]).handle_reduce(DEFAULT_BUDGET).unwrap();
        let min = c.letters().iter().map(|g| g.abs()).min().unwrap();
        let signs: Vec<i32> =
            c.letters().iter().filter(|g| g.abs() == min).map(|g| g.signum()).collect();
        assert!(signs.windows(2).all(|s| s[0] == s[1]));
    }

    #[test]
    fn budget_is_enforced() {
        let word = w(3, &[1, 2, 1, -2, -1, -2]);
        assert_eq!(word.is_trivial_with_budget(0), Err(BraidError::BudgetExceeded(0)));
    }

    #[test]
    fn parse_and_display() {
        let b: BraidWord = "6 | 1 -2 5".parse().unwrap();
        assert_eq!(b.letters(), &[1, -2, 5]);
        assert_eq!(b.to_string(), "6 | 1 -2 5");
        assert!("4 | 4".parse::<BraidWord>().is_err());
        assert!("4 1 2".parse::<BraidWord>().is_err());
        let empty: BraidWord = "4 |".parse().unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn json_shape() {
        let b = w(6, &[1, -2, 5]);
        let v = serde_json::to_value(&b).unwrap();
        assert_eq!(v, serde_json::json!({"strands": 6, "letters": [1, -2, 5]}));
        let back: BraidWord = serde_json::from_value(v).unwrap();
        assert_eq!(back, b);
        assert!(serde_json::from_value::<BraidWord>(serde_json::json!({"strands": 3, "letters": [3]}))
            .is_err());
    }
}
