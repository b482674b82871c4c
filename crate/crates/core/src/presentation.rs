//! Generators of the pure Hilden group, their braid realizations in `B_{2n}`,
//! and the relation schemas of the presentation.
//!
//! Cap `k` has its feet on strands `2k-1` and `2k`. The framed letters
//! `sigma(i)` and `tau(j)` live in the same alphabet so that words of the
//! framed braid group can share the parser and the realization map.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("index error: {0}")]
    Index(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not an instance of {schema}: {reason}")]
    UnknownInstance { schema: Schema, reason: String },
}

/// The three pair-indexed generator families `p`, `x`, `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alpha {
    P,
    X,
    Y,
}

impl Alpha {
    pub const ALL: [Alpha; 3] = [Alpha::P, Alpha::X, Alpha::Y];

    pub fn gen(self, i: usize, j: usize) -> Generator {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        match self {
            Alpha::P => Generator::P(a, b),
            Alpha::X => Generator::X(a, b),
            Alpha::Y => Generator::Y(a, b),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Alpha::P => 'p',
            Alpha::X => 'x',
            Alpha::Y => 'y',
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Alpha {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "p" => Ok(Alpha::P),
            "x" => Ok(Alpha::X),
            "y" => Ok(Alpha::Y),
            _ => Err(PresentationError::Parse(format!("unknown symbol {s:?}"))),
        }
    }
}

/// One letter of the alphabet. Pair indices are stored ascending; build
/// pair generators through [`Alpha::gen`] or [`Generator::pair`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    P(usize, usize),
    X(usize, usize),
    Y(usize, usize),
    T(usize),
    Sigma(usize),
    Tau(usize),
}

impl Generator {
    pub fn pair(alpha: Alpha, i: usize, j: usize) -> Generator {
        alpha.gen(i, j)
    }

    pub fn alpha(self) -> Option<(Alpha, usize, usize)> {
        match self {
            Generator::P(i, j) => Some((Alpha::P, i, j)),
            Generator::X(i, j) => Some((Alpha::X, i, j)),
            Generator::Y(i, j) => Some((Alpha::Y, i, j)),
            _ => None,
        }
    }

    pub fn kind(self) -> &'static str {
        match self {
            Generator::P(..) => "p",
            Generator::X(..) => "x",
            Generator::Y(..) => "y",
            Generator::T(_) => "t",
            Generator::Sigma(_) => "sigma",
            Generator::Tau(_) => "tau",
        }
    }

    pub fn indices(self) -> Vec<usize> {
        match self {
            Generator::P(i, j) | Generator::X(i, j) | Generator::Y(i, j) => vec![i, j],
            Generator::T(k) | Generator::Sigma(k) | Generator::Tau(k) => vec![k],
        }
    }

    pub fn from_parts(kind: &str, indices: &[usize]) -> Result<Generator, PresentationError> {
        let bad = || PresentationError::Parse(format!("{kind} takes the wrong number of indices: {indices:?}"));
        let g = match (kind, indices) {
            ("p", &[i, j]) => Alpha::P.gen(i, j),
            ("x", &[i, j]) => Alpha::X.gen(i, j),
            ("y", &[i, j]) => Alpha::Y.gen(i, j),
            ("t", &[k]) => Generator::T(k),
            ("sigma", &[k]) => Generator::Sigma(k),
            ("tau", &[k]) => Generator::Tau(k),
            ("p" | "x" | "y" | "t" | "sigma" | "tau", _) => return Err(bad()),
            _ => return Err(PresentationError::Parse(format!("unknown generator kind {kind:?}"))),
        };
        Ok(g)
    }

    pub fn is_framed(self) -> bool {
        matches!(self, Generator::Sigma(_) | Generator::Tau(_))
    }

    /// Member of the `{p, t}` sub-alphabet.
    pub fn is_pt(self) -> bool {
        matches!(self, Generator::P(..) | Generator::T(_))
    }

    pub fn check(self, n: usize) -> Result<(), PresentationError> {
        let ok = match self {
            Generator::P(i, j) | Generator::X(i, j) | Generator::Y(i, j) => 1 <= i && i < j && j <= n,
            Generator::T(k) | Generator::Tau(k) => 1 <= k && k <= n,
            Generator::Sigma(k) => 1 <= k && k < n,
        };
        if ok {
            Ok(())
        } else {
            Err(PresentationError::Index(format!("{self} is out of range for n = {n}")))
        }
    }

    /// The braid word in `B_{2n}` realizing this generator.
    pub fn braid(self, n: usize) -> BraidWord {
        let strands = 2 * n;
        let letters: Vec<i32> = match self {
            Generator::T(k) => vec![2 * k as i32 - 1; 2],
            Generator::Tau(k) => vec![2 * k as i32 - 1],
            Generator::Sigma(i) => cable_letter(i as i32),
            Generator::P(i, j) => {
                return cabling(&pure_braid_generator(i, j, n).expect("checked pair"));
            }
            Generator::X(i, j) => {
                // strand 2i runs right behind the caps in between and circles cap j
                let (i, j) = (i as i32, j as i32);
                let mut w: Vec<i32> = (2 * i..=2 * j - 3).map(|g| -g).collect();
                w.extend([2 * j - 2, 2 * j - 1, 2 * j - 1, 2 * j - 2]);
                w.extend((2 * i..=2 * j - 3).rev());
                w
            }
            Generator::Y(i, j) => {
                // strand 2j runs left, passing behind its partner, and circles cap i
                let (i, j) = (i as i32, j as i32);
                let mut w: Vec<i32> = (2 * i + 1..=2 * j - 1).rev().collect();
                w.extend([2 * i, 2 * i - 1, 2 * i - 1, 2 * i]);
                w.extend((2 * i + 1..=2 * j - 1).map(|g| -g));
                w
            }
        };
        BraidWord::new(strands, letters).expect("catalog word in range")
    }
}

fn cable_letter(i: i32) -> Vec<i32> {
    vec![2 * i, 2 * i + 1, 2 * i - 1, 2 * i]
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{}({})", self.kind(), idx.join(","))
    }
}

/// A generator with an exponent of `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Generator,
    pub sign: i8,
}

impl Letter {
    pub fn new(gen: Generator, sign: i8) -> Letter {
        assert!(sign == 1 || sign == -1);
        Letter { gen, sign }
    }

    pub fn pos(gen: Generator) -> Letter {
        Letter { gen, sign: 1 }
    }

    pub fn neg(gen: Generator) -> Letter {
        Letter { gen, sign: -1 }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, sign: -self.sign }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawLetter {
    kind: String,
    indices: Vec<usize>,
    sign: i8,
}

#[derive(Serialize, Deserialize)]
struct RawSWord {
    n: usize,
    letters: Vec<RawLetter>,
}

/// A signed word over the generator alphabet for a fixed `n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSWord", into = "RawSWord")]
pub struct SWord {
    n: usize,
    letters: Vec<Letter>,
}

impl TryFrom<RawSWord> for SWord {
    type Error = PresentationError;
    fn try_from(raw: RawSWord) -> Result<Self, Self::Error> {
        let letters = raw
            .letters
            .into_iter()
            .map(|l| {
                if l.sign != 1 && l.sign != -1 {
                    return Err(PresentationError::Parse(format!("sign must be 1 or -1, got {}", l.sign)));
                }
                Ok(Letter::new(Generator::from_parts(&l.kind, &l.indices)?, l.sign))
            })
            .collect::<Result<Vec<_>, _>>()?;
        SWord::new(raw.n, letters)
    }
}

impl From<SWord> for RawSWord {
    fn from(w: SWord) -> Self {
        RawSWord {
            n: w.n,
            letters: w
                .letters
                .iter()
                .map(|l| RawLetter { kind: l.gen.kind().into(), indices: l.gen.indices(), sign: l.sign })
                .collect(),
        }
    }
}

impl SWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<SWord, PresentationError> {
        for l in &letters {
            l.gen.check(n)?;
        }
        Ok(SWord { n, letters })
    }

    pub fn empty(n: usize) -> SWord {
        SWord { n, letters: Vec::new() }
    }

    /// Parse the text form, e.g. `x(1,2) p(1,3)^-1 t(2)`. The empty word is `1` or blank.
    pub fn parse(n: usize, text: &str) -> Result<SWord, PresentationError> {
        let mut letters = Vec::new();
        if text.trim() == "1" {
            return Ok(SWord::empty(n));
        }
        for token in text.split_whitespace() {
            let (body, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let e: i32 = e
                        .trim_start_matches('+')
                        .parse()
                        .map_err(|_| PresentationError::Parse(format!("bad exponent in {token:?}")))?;
                    (b, e)
                }
                None => (token, 1),
            };
            if exp == 0 {
                return Err(PresentationError::Parse(format!("zero exponent in {token:?}")));
            }
            let (kind, rest) = body
                .split_once('(')
                .ok_or_else(|| PresentationError::Parse(format!("missing '(' in {token:?}")))?;
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| PresentationError::Parse(format!("missing ')' in {token:?}")))?;
            let indices = inner
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| PresentationError::Parse(format!("bad indices in {token:?}")))?;
            if indices.len() == 2 && indices[0] == indices[1] {
                return Err(PresentationError::Index(format!("repeated pair index in {token:?}")));
            }
            let gen = Generator::from_parts(kind, &indices)?;
            let sign = exp.signum() as i8;
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(gen, sign));
            }
        }
        SWord::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        letter.gen.check(self.n).expect("letter in range");
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &SWord) -> SWord {
        assert_eq!(self.n, other.n, "words over different n");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        SWord { n: self.n, letters }
    }

    pub fn inverse(&self) -> SWord {
        SWord { n: self.n, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn free_reduce(&self) -> SWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        SWord { n: self.n, letters: out }
    }

    /// Same word read with a larger `n`.
    pub fn with_n(&self, n: usize) -> Result<SWord, PresentationError> {
        SWord::new(n, self.letters.clone())
    }

    pub fn is_over_pt(&self) -> bool {
        self.letters.iter().all(|l| l.gen.is_pt())
    }

    pub fn is_framed(&self) -> bool {
        self.letters.iter().all(|l| l.gen.is_framed())
    }

    /// Concatenated braid words of the letters, in `B_{2n}`.
    pub fn realize(&self) -> BraidWord {
        realize(self)
    }
}

impl fmt::Display for SWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SWord[n={}]({self})", self.n)
    }
}

/// Shorthand for building words in code: `word(3, "x(1,2) t(1)^-1")`.
pub fn word(n: usize, text: &str) -> SWord {
    SWord::parse(n, text).unwrap_or_else(|e| panic!("bad word {text:?}: {e}"))
}

/// Image under 2-cabling `B_n → B_{2n}`: each strand is doubled.
pub fn cabling(w: &BraidWord) -> BraidWord {
    let mut letters = Vec::with_capacity(4 * w.len());
    for &g in w.letters() {
        let block = cable_letter(g.abs());
        if g > 0 {
            letters.extend(block);
        } else {
            letters.extend(block.iter().rev().map(|h| -h));
        }
    }
    BraidWord::new(2 * w.strands(), letters).expect("cabled letters in range")
}

/// Band generator `A_ij = (σ_{j-1}⋯σ_{i+1}) σ_i² (σ_{i+1}⁻¹⋯σ_{j-1}⁻¹)` of the pure braid group.
pub fn pure_braid_generator(i: usize, j: usize, n: usize) -> Result<BraidWord, PresentationError> {
    if !(1 <= i && i < j && j <= n) {
        return Err(PresentationError::Index(format!("A({i},{j}) needs 1 <= i < j <= {n}")));
    }
    let (i, j) = (i as i32, j as i32);
    let mut letters: Vec<i32> = (i + 1..j).rev().collect();
    letters.extend([i, i]);
    letters.extend((i + 1..j).map(|g| -g));
    Ok(BraidWord::new(n, letters).expect("in range"))
}

pub fn realize(w: &SWord) -> BraidWord {
    let mut out = BraidWord::identity(2 * w.n);
    for l in &w.letters {
        let b = l.gen.braid(w.n);
        if l.sign > 0 {
            out.extend(&b);
        } else {
            out.extend(&b.invert());
        }
    }
    out
}

/// Some rotation of the tuple is strictly increasing.
pub fn is_cyclically_ordered(t: &[usize]) -> bool {
    let len = t.len();
    if len == 0 {
        return true;
    }
    // strictly increasing cyclic sequence has exactly one descent (or none for len 1)
    let descents = (0..len).filter(|&k| t[k] >= t[(k + 1) % len]).count();
    descents == 1 || (len == 1)
}

/// Relative order of the roles `(i, j, k)` in a cyclically ordered triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrderClass {
    #[serde(rename = "i<j<k")]
    IJK,
    #[serde(rename = "j<k<i")]
    JKI,
    #[serde(rename = "k<i<j")]
    KIJ,
}

impl OrderClass {
    pub const ALL: [OrderClass; 3] = [OrderClass::IJK, OrderClass::JKI, OrderClass::KIJ];

    pub fn of(i: usize, j: usize, k: usize) -> Option<OrderClass> {
        if i < j && j < k {
            Some(OrderClass::IJK)
        } else if j < k && k < i {
            Some(OrderClass::JKI)
        } else if k < i && i < j {
            Some(OrderClass::KIJ)
        } else {
            None
        }
    }

    /// A representative `(i, j, k)` on `{1, 2, 3}`.
    pub fn representative(self) -> (usize, usize, usize) {
        match self {
            OrderClass::IJK => (1, 2, 3),
            OrderClass::JKI => (3, 1, 2),
            OrderClass::KIJ => (2, 3, 1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            OrderClass::IJK => "i<j<k",
            OrderClass::JKI => "j<k<i",
            OrderClass::KIJ => "k<i<j",
        }
    }
}

impl fmt::Display for OrderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub type Triple = (Alpha, Alpha, Alpha);

use Alpha::{P as AP, X as AX, Y as AY};

const C2_TABLE: [[Triple; 8]; 3] = [
    [
        (AP, AP, AP),
        (AP, AY, AY),
        (AX, AP, AP),
        (AX, AX, AP),
        (AX, AY, AY),
        (AY, AP, AP),
        (AY, AP, AX),
        (AY, AY, AY),
    ],
    [
        (AP, AP, AP),
        (AP, AX, AY),
        (AX, AP, AP),
        (AX, AP, AX),
        (AX, AX, AY),
        (AY, AP, AP),
        (AY, AX, AY),
        (AY, AY, AP),
    ],
    [
        (AP, AP, AP),
        (AP, AX, AX),
        (AX, AP, AP),
        (AX, AX, AX),
        (AX, AY, AP),
        (AY, AP, AP),
        (AY, AP, AY),
        (AY, AX, AX),
    ],
];

/// The eight `(α, β, γ)` for which the three-index commutation holds.
pub fn c2_triples(class: OrderClass) -> &'static [Triple; 8] {
    match class {
        OrderClass::IJK => &C2_TABLE[0],
        OrderClass::JKI => &C2_TABLE[1],
        OrderClass::KIJ => &C2_TABLE[2],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Schema {
    #[serde(rename = "C-pt")]
    CPt,
    #[serde(rename = "C-tt")]
    CTt,
    #[serde(rename = "C-xt")]
    CXt,
    #[serde(rename = "C-yt")]
    CYt,
    C1,
    C2,
    C3,
    #[serde(rename = "M-x")]
    Mx,
    #[serde(rename = "M-y")]
    My,
}

impl Schema {
    pub const ALL: [Schema; 9] = [
        Schema::CPt,
        Schema::CTt,
        Schema::CXt,
        Schema::CYt,
        Schema::C1,
        Schema::C2,
        Schema::C3,
        Schema::Mx,
        Schema::My,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Schema::CPt => "C-pt",
            Schema::CTt => "C-tt",
            Schema::CXt => "C-xt",
            Schema::CYt => "C-yt",
            Schema::C1 => "C1",
            Schema::C2 => "C2",
            Schema::C3 => "C3",
            Schema::Mx => "M-x",
            Schema::My => "M-y",
        }
    }

    fn arity(self) -> (usize, usize) {
        match self {
            Schema::CPt | Schema::CXt | Schema::CYt => (3, 0),
            Schema::CTt | Schema::Mx | Schema::My => (2, 0),
            Schema::C1 | Schema::C3 => (4, 2),
            Schema::C2 => (3, 3),
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Schema {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Schema::ALL
            .into_iter()
            .find(|sc| sc.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| PresentationError::Parse(format!("unknown schema {s:?}")))
    }
}

/// One instantiated relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationInstance {
    pub schema: Schema,
    pub indices: Vec<usize>,
    pub symbols: Vec<Alpha>,
    pub lhs: SWord,
    pub rhs: SWord,
}

impl RelationInstance {
    /// Instantiate a schema, enforcing its side conditions.
    pub fn build(
        n: usize,
        schema: Schema,
        indices: &[usize],
        symbols: &[Alpha],
    ) -> Result<RelationInstance, PresentationError> {
        let unknown = |reason: String| PresentationError::UnknownInstance { schema, reason };
        let (ni, ns) = schema.arity();
        if indices.len() != ni || symbols.len() != ns {
            return Err(unknown(format!(
                "expects {ni} indices and {ns} symbols, got {} and {}",
                indices.len(),
                symbols.len()
            )));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(unknown(format!("index {bad} outside 1..={n}")));
        }
        let distinct = |t: &[usize]| (0..t.len()).all(|a| (a + 1..t.len()).all(|b| t[a] != t[b]));
        let pos = Letter::pos;
        let neg = Letter::neg;
        let (lhs, rhs): (Vec<Letter>, Vec<Letter>) = match schema {
            Schema::CPt => {
                let (i, j, k) = (indices[0], indices[1], indices[2]);
                if i == j {
                    return Err(unknown("p needs two distinct indices".into()));
                }
                let (p, t) = (pos(Alpha::P.gen(i, j)), pos(Generator::T(k)));
                (vec![p, t], vec![t, p])
            }
            Schema::CTt => {
                let (i, j) = (indices[0], indices[1]);
                if i >= j {
                    return Err(unknown("needs i < j".into()));
                }
                let (a, b) = (pos(Generator::T(i)), pos(Generator::T(j)));
                (vec![a, b], vec![b, a])
            }
            Schema::CXt | Schema::CYt => {
                let (i, j, k) = (indices[0], indices[1], indices[2]);
                if i >= j {
                    return Err(unknown("needs i < j".into()));
                }
                let (alpha, fixed) = if schema == Schema::CXt { (Alpha::X, i) } else { (Alpha::Y, j) };
                if k == fixed {
                    return Err(unknown(format!("needs k != {fixed}")));
                }
                let (a, t) = (pos(alpha.gen(i, j)), pos(Generator::T(k)));
                (vec![a, t], vec![t, a])
            }
            Schema::C1 => {
                if !distinct(indices) || !is_cyclically_ordered(indices) {
                    return Err(unknown(format!("{indices:?} is not cyclically ordered")));
                }
                let (i, j, k, l) = (indices[0], indices[1], indices[2], indices[3]);
                let a = pos(symbols[0].gen(i, j));
                let b = pos(symbols[1].gen(k, l));
                (vec![a, b], vec![b, a])
            }
            Schema::C2 => {
                if !distinct(indices) || !is_cyclically_ordered(indices) {
                    return Err(unknown(format!("{indices:?} is not cyclically ordered")));
                }
                let (i, j, k) = (indices[0], indices[1], indices[2]);
                let class = OrderClass::of(i, j, k).expect("cyclically ordered triple");
                let triple = (symbols[0], symbols[1], symbols[2]);
                if !c2_triples(class).contains(&triple) {
                    return Err(unknown(format!(
                        "({},{},{}) is not listed for {class}",
                        triple.0, triple.1, triple.2
                    )));
                }
                let a = pos(triple.0.gen(i, j));
                let b = pos(triple.1.gen(i, k));
                let c = pos(triple.2.gen(j, k));
                (vec![a, b, c], vec![b, c, a])
            }
            Schema::C3 => {
                if !distinct(indices) || !is_cyclically_ordered(indices) {
                    return Err(unknown(format!("{indices:?} is not cyclically ordered")));
                }
                let (i, j, k, l) = (indices[0], indices[1], indices[2], indices[3]);
                let a = pos(symbols[0].gen(i, k));
                let p = Alpha::P.gen(j, k);
                let b = pos(symbols[1].gen(j, l));
                (vec![a, pos(p), b, neg(p)], vec![pos(p), b, neg(p), a])
            }
            Schema::Mx | Schema::My => {
                let (i, j) = (indices[0], indices[1]);
                if i >= j {
                    return Err(unknown("needs i < j".into()));
                }
                let (alpha, foot) = if schema == Schema::Mx { (Alpha::X, i) } else { (Alpha::Y, j) };
                let a = pos(alpha.gen(i, j));
                let p = pos(Alpha::P.gen(i, j));
                let t = pos(Generator::T(foot));
                (vec![a, p, t], vec![p, t, a])
            }
        };
        Ok(RelationInstance {
            schema,
            indices: indices.to_vec(),
            symbols: symbols.to_vec(),
            lhs: SWord::new(n, lhs)?,
            rhs: SWord::new(n, rhs)?,
        })
    }

    /// Sort key used for reports: schema, indices, symbols.
    pub fn key(&self) -> (Schema, Vec<usize>, Vec<Alpha>) {
        (self.schema, self.indices.clone(), self.symbols.clone())
    }

    pub fn symbols_string(&self) -> String {
        self.symbols.iter().map(|a| a.as_char()).collect()
    }
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.schema, self.indices)?;
        if !self.symbols.is_empty() {
            write!(f, " ({})", self.symbols_string())?;
        }
        write!(f, ": {} = {}", self.lhs, self.rhs)
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

fn cyclic_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            if is_cyclically_ordered(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for v in 1..=n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(n, len, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, len, &mut Vec::new(), &mut out);
    out
}

/// Cyclically ordered triples of distinct indices in `1..=n`.
pub fn cyclic_triples(n: usize) -> Vec<(usize, usize, usize)> {
    cyclic_tuples(n, 3).into_iter().map(|t| (t[0], t[1], t[2])).collect()
}

/// Every instance of the given schema for `n` caps.
pub fn schema_instances(n: usize, schema: Schema) -> Vec<RelationInstance> {
    let build = |idx: &[usize], sym: &[Alpha]| {
        RelationInstance::build(n, schema, idx, sym).expect("enumerated instance is valid")
    };
    let mut out = Vec::new();
    match schema {
        Schema::CPt => {
            for (i, j) in pairs(n) {
                for k in 1..=n {
                    out.push(build(&[i, j, k], &[]));
                }
            }
        }
        Schema::CTt | Schema::Mx | Schema::My => {
            for (i, j) in pairs(n) {
                out.push(build(&[i, j], &[]));
            }
        }
        Schema::CXt | Schema::CYt => {
            for (i, j) in pairs(n) {
                let fixed = if schema == Schema::CXt { i } else { j };
                for k in (1..=n).filter(|&k| k != fixed) {
                    out.push(build(&[i, j, k], &[]));
                }
            }
        }
        Schema::C1 | Schema::C3 => {
            for t in cyclic_tuples(n, 4) {
                for a in Alpha::ALL {
                    for b in Alpha::ALL {
                        out.push(build(&t, &[a, b]));
                    }
                }
            }
        }
        Schema::C2 => {
            for t in cyclic_tuples(n, 3) {
                let class = OrderClass::of(t[0], t[1], t[2]).expect("cyclic triple");
                for &(a, b, c) in c2_triples(class) {
                    out.push(build(&t, &[a, b, c]));
                }
            }
        }
    }
    out
}

/// Every instance of every relation schema for `n` caps.
pub fn relation_instances(n: usize) -> Vec<RelationInstance> {
    Schema::ALL.iter().flat_map(|&s| schema_instances(n, s)).collect()
}

/// All generators of `S` for `n` caps.
pub fn generators(n: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for (i, j) in pairs(n) {
        for a in Alpha::ALL {
            out.push(a.gen(i, j));
        }
    }
    out.extend((1..=n).map(Generator::T));
    out
}

/// The framed letters `sigma(1..n-1)` and `tau(1..n)`.
pub fn framed_generators(n: usize) -> Vec<Generator> {
    let mut out: Vec<Generator> = (1..n).map(Generator::Sigma).collect();
    out.extend((1..=n).map(Generator::Tau));
    out
}

/// The edge-orbit representatives `r_λ`: `x_ij`, `y_ij` for `i < j`, the
/// products `x_ij x_ik`, `x_jk y_ij`, `y_ik y_jk` for `i < j < k`, and the
/// formal inverses of all of them.
pub fn edge_family(n: usize) -> Vec<SWord> {
    let mut base = Vec::new();
    for (i, j) in pairs(n) {
        base.push(SWord::new(n, vec![Letter::pos(Alpha::X.gen(i, j))]).unwrap());
        base.push(SWord::new(n, vec![Letter::pos(Alpha::Y.gen(i, j))]).unwrap());
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let two = |a: Generator, b: Generator| SWord::new(n, vec![Letter::pos(a), Letter::pos(b)]).unwrap();
                base.push(two(Alpha::X.gen(i, j), Alpha::X.gen(i, k)));
                base.push(two(Alpha::X.gen(j, k), Alpha::Y.gen(i, j)));
                base.push(two(Alpha::Y.gen(i, k), Alpha::Y.gen(j, k)));
            }
        }
    }
    let mut out = Vec::with_capacity(2 * base.len());
    for w in base {
        let inv = w.inverse();
        out.push(w);
        out.push(inv);
    }
    out
}
