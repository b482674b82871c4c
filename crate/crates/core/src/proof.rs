//! Replay of derivations in the presented group.
//!
//! A step names one relation instance `u = v` and rewrites the current word
//! at a fixed position. The instance is read as the cyclic relator
//! `R = u v⁻¹` (or `v u⁻¹` for `rl`, and with `u`, `v` formally inverted
//! when `invert` is set). The step rotates `R` left by `shift`, checks that
//! the first `len` letters occur at `pos`, and replaces them with the inverse
//! of the remaining letters. With the defaults `shift = 0` and `len = |u|`
//! this is the plain replacement of `u` by `v`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidError, DEFAULT_BUDGET};
use crate::presentation::{schema_instances, Alpha, Letter, PresentationError, RelationInstance, SWord, Schema};

#[derive(Debug, Error)]
pub enum ProofError {
    #[error("no match: {0}")]
    NoMatch(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("step {index}: {source}")]
    Step { index: usize, source: Box<ProofError> },
    #[error("replay ends at {got}, script claims {expected}")]
    WrongEnd { got: String, expected: String },
    #[error("start and end are different braids")]
    BraidMismatch,
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("script {path}: {reason}")]
    Script { path: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    #[serde(rename = "lr")]
    LeftToRight,
    #[serde(rename = "rl")]
    RightToLeft,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

fn symbols_to_string<S: serde::Serializer>(symbols: &[Alpha], s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&symbols.iter().map(|a| a.as_char()).collect::<String>())
}

fn symbols_from_string<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<Alpha>, D::Error> {
    let s = String::deserialize(d)?;
    s.chars()
        .map(|c| c.to_string().parse::<Alpha>().map_err(serde::de::Error::custom))
        .collect()
}

/// One application of one relation instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub schema: Schema,
    pub indices: Vec<usize>,
    #[serde(default, serialize_with = "symbols_to_string", deserialize_with = "symbols_from_string")]
    pub symbols: Vec<Alpha>,
    pub dir: Dir,
    pub pos: usize,
    #[serde(default)]
    pub invert: bool,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub shift: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub len: Option<usize>,
}

impl Step {
    pub fn new(schema: Schema, indices: &[usize], symbols: &[Alpha], dir: Dir, pos: usize) -> Step {
        Step {
            schema,
            indices: indices.to_vec(),
            symbols: symbols.to_vec(),
            dir,
            pos,
            invert: false,
            shift: 0,
            len: None,
        }
    }

    pub fn instance(&self, n: usize) -> Result<RelationInstance, ProofError> {
        Ok(RelationInstance::build(n, self.schema, &self.indices, &self.symbols)?)
    }

    /// `(from, to)` after direction and inversion.
    fn sides(&self, inst: &RelationInstance) -> (SWord, SWord) {
        let (from, to) = match self.dir {
            Dir::LeftToRight => (inst.lhs.clone(), inst.rhs.clone()),
            Dir::RightToLeft => (inst.rhs.clone(), inst.lhs.clone()),
        };
        if self.invert {
            (from.inverse(), to.inverse())
        } else {
            (from, to)
        }
    }

    /// The letters matched at `pos` and the letters that replace them.
    pub fn rewrite(&self, n: usize) -> Result<(Vec<Letter>, Vec<Letter>), ProofError> {
        let inst = self.instance(n)?;
        let (from, to) = self.sides(&inst);
        let relator: Vec<Letter> = from.concat(&to.inverse()).letters().to_vec();
        let total = relator.len();
        let len = self.len.unwrap_or(from.len());
        if self.shift >= total || len == 0 || len > total {
            return Err(ProofError::NoMatch(format!(
                "shift {} and len {len} do not fit a relator of length {total}",
                self.shift
            )));
        }
        let mut rotated = relator[self.shift..].to_vec();
        rotated.extend_from_slice(&relator[..self.shift]);
        let rest: Vec<Letter> = rotated[len..].iter().rev().map(|l| l.inverse()).collect();
        rotated.truncate(len);
        Ok((rotated, rest))
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.dir {
            Dir::LeftToRight => "lr",
            Dir::RightToLeft => "rl",
        };
        let syms: String = self.symbols.iter().map(|a| a.as_char()).collect();
        write!(f, "{} {:?}{}{} {dir} @{}", self.schema, self.indices, if syms.is_empty() { "" } else { " " }, syms, self.pos)?;
        if self.invert {
            write!(f, " inv")?;
        }
        if self.shift != 0 {
            write!(f, " shift={}", self.shift)?;
        }
        if let Some(l) = self.len {
            write!(f, " len={l}")?;
        }
        Ok(())
    }
}

/// Rewrite `w` by one step, then free-reduce.
pub fn apply_step(w: &SWord, step: &Step) -> Result<SWord, ProofError> {
    let (matched, replacement) = step.rewrite(w.n())?;
    let letters = w.letters();
    let end = step.pos + matched.len();
    if end > letters.len() || letters[step.pos..end] != matched[..] {
        let m = SWord::new(w.n(), matched)?;
        return Err(ProofError::NoMatch(format!("{m} does not occur at position {} of {w}", step.pos)));
    }
    let mut out = letters[..step.pos].to_vec();
    out.extend(replacement);
    out.extend_from_slice(&letters[end..]);
    Ok(SWord::new(w.n(), out)?.free_reduce())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationScript {
    pub n: usize,
    pub anchor: String,
    pub start: SWord,
    pub end: SWord,
    pub steps: Vec<Step>,
}

#[derive(Serialize, Deserialize)]
struct RawScript {
    n: usize,
    anchor: String,
    start: String,
    end: String,
    steps: Vec<Step>,
}

impl DerivationScript {
    pub fn from_json(text: &str) -> Result<DerivationScript, ProofError> {
        let raw: RawScript =
            serde_json::from_str(text).map_err(|e| ProofError::Script { path: "<json>".into(), reason: e.to_string() })?;
        Ok(DerivationScript {
            n: raw.n,
            anchor: raw.anchor,
            start: SWord::parse(raw.n, &raw.start)?,
            end: SWord::parse(raw.n, &raw.end)?,
            steps: raw.steps,
        })
    }

    pub fn load(path: &Path) -> Result<DerivationScript, ProofError> {
        let err = |reason: String| ProofError::Script { path: path.display().to_string(), reason };
        let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        DerivationScript::from_json(&text).map_err(|e| err(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let raw = RawScript {
            n: self.n,
            anchor: self.anchor.clone(),
            start: self.start.to_string(),
            end: self.end.to_string(),
            steps: self.steps.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }

    /// Words after each step, starting with the reduced start word.
    pub fn replay(&self) -> Result<Vec<SWord>, ProofError> {
        let mut cur = self.start.free_reduce();
        let mut out = vec![cur.clone()];
        for (index, step) in self.steps.iter().enumerate() {
            cur = apply_step(&cur, step).map_err(|e| ProofError::Step { index, source: Box::new(e) })?;
            out.push(cur.clone());
        }
        Ok(out)
    }
}

/// Replay all steps, compare with `end`, and cross-check at braid level.
pub fn check_derivation(d: &DerivationScript) -> Result<(), ProofError> {
    check_derivation_budget(d, DEFAULT_BUDGET)
}

pub fn check_derivation_budget(d: &DerivationScript, budget: u64) -> Result<(), ProofError> {
    let words = d.replay()?;
    let last = words.last().expect("replay yields the start word");
    if *last != d.end {
        return Err(ProofError::WrongEnd { got: last.to_string(), expected: d.end.to_string() });
    }
    if !d.start.realize().equals_with_budget(&d.end.realize(), budget)? {
        return Err(ProofError::BraidMismatch);
    }
    Ok(())
}

/// Load every `*.json` script under `dir`, sorted by file name.
pub fn load_scripts(dir: &Path) -> Result<Vec<(String, DerivationScript)>, ProofError> {
    let err = |reason: String| ProofError::Script { path: dir.display().to_string(), reason };
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| err(e.to_string()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            Ok((name, DerivationScript::load(&p)?))
        })
        .collect()
}

/// Every distinct rewrite offered by the given schemas: one step per
/// distinct `(matched, replacement)` pair with `matched` of length at least
/// `min_len`.
pub fn candidate_moves(n: usize, schemas: &[Schema], min_len: usize) -> Vec<(Vec<Letter>, Vec<Letter>, Step)> {
    // prefer the plainest encoding of each rewrite
    let cost = |s: &Step| (s.len.is_some(), s.shift, s.invert, s.dir == Dir::RightToLeft);
    let mut seen: HashMap<(Vec<Letter>, Vec<Letter>), Step> = HashMap::new();
    for &schema in schemas {
        for inst in schema_instances(n, schema) {
            for dir in [Dir::LeftToRight, Dir::RightToLeft] {
                let from_len = match dir {
                    Dir::LeftToRight => inst.lhs.len(),
                    Dir::RightToLeft => inst.rhs.len(),
                };
                let total = inst.lhs.len() + inst.rhs.len();
                for invert in [false, true] {
                    for shift in 0..total {
                        for len in min_len.max(1)..=total {
                            let mut s = Step::new(schema, &inst.indices, &inst.symbols, dir, 0);
                            s.invert = invert;
                            s.shift = shift;
                            s.len = (shift != 0 || len != from_len).then_some(len);
                            let key = s.rewrite(n).expect("valid instance");
                            match seen.get(&key) {
                                Some(old) if cost(old) <= cost(&s) => {}
                                _ => {
                                    seen.insert(key, s);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().map(|((m, r), s)| (m, r, s)).collect();
    out.sort_by_key(|(m, r, s)| (cost(s), m.len(), r.len(), s.to_string()));
    out
}

/// Breadth-first search for a chain from `start` to `goal` of at most
/// `max_depth` steps using only `schemas`. An authoring aid for fixtures.
pub fn search(
    start: &SWord,
    goal: &SWord,
    schemas: &[Schema],
    max_depth: usize,
    min_len: usize,
    max_states: usize,
) -> Option<Vec<Step>> {
    let n = start.n();
    let moves = candidate_moves(n, schemas, min_len);
    let start = start.free_reduce();
    let goal = goal.free_reduce();
    let mut parent: HashMap<SWord, Option<(SWord, Step)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((w, depth)) = queue.pop_front() {
        if w == goal {
            let mut steps = Vec::new();
            let mut cur = w;
            while let Some(Some((prev, step))) = parent.get(&cur) {
                steps.push(step.clone());
                cur = prev.clone();
            }
            steps.reverse();
            return Some(steps);
        }
        if depth == max_depth || parent.len() > max_states {
            continue;
        }
        let letters = w.letters();
        for (matched, _, step) in &moves {
            if matched.len() > letters.len() {
                continue;
            }
            for pos in 0..=letters.len() - matched.len() {
                if letters[pos..pos + matched.len()] != matched[..] {
                    continue;
                }
                let mut s = step.clone();
                s.pos = pos;
                let next = apply_step(&w, &s).expect("matched");
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((w.clone(), s)));
                    queue.push_back((next, depth + 1));
                }
            }
        }
    }
    None
}
