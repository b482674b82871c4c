//! Verification suites and the brute-force reconstruction of the C2 table.
//!
//! Every suite returns a [`Report`] whose failures are sorted, so two runs on
//! the same input differ only in `ms`.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidError, BraidWord, Permutation, DEFAULT_BUDGET};
use crate::phi::{self, FramedKind, PhiError};
use crate::presentation::{
    c2_triples, cyclic_triples, edge_family, framed_generators, generators, pure_braid_generator,
    relation_instances, Alpha, Generator, Letter, OrderClass, RelationInstance, SWord, Triple,
};
use crate::tl::{self, cap_state};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("step budget of {budget} exceeded while checking {instance}")]
    Budget { instance: String, budget: u64 },
    #[error("n = {n} outside the supported range {range}")]
    Range { n: usize, range: &'static str },
    #[error(transparent)]
    Phi(PhiError),
    #[error(transparent)]
    Braid(BraidError),
}

impl VerifyError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, VerifyError::Budget { .. })
    }

    fn from_phi(e: PhiError, instance: impl FnOnce() -> String, budget: u64) -> VerifyError {
        match e {
            PhiError::Braid(BraidError::BudgetExceeded(_)) => VerifyError::Budget { instance: instance(), budget },
            e => VerifyError::Phi(e),
        }
    }

    fn from_braid(e: BraidError, instance: impl FnOnce() -> String, budget: u64) -> VerifyError {
        match e {
            BraidError::BudgetExceeded(_) => VerifyError::Budget { instance: instance(), budget },
            e => VerifyError::Braid(e),
        }
    }
}

/// Worker count and handle-reduction budget shared by the suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub workers: usize,
    pub budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { workers: 0, budget: DEFAULT_BUDGET }
    }
}

impl Config {
    /// Run `f` on a pool of `workers` threads; 0 means rayon's default.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new().num_threads(self.workers).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub schema: String,
    pub indices: Vec<usize>,
    pub symbols: String,
    pub lhs: BraidWord,
    pub rhs: BraidWord,
    pub oracle: String,
}

impl Failure {
    fn sort_key(&self) -> (&str, &[usize], &str, &str) {
        (&self.schema, &self.indices, &self.symbols, &self.oracle)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub n: usize,
    pub total: usize,
    pub passed: usize,
    pub failures: Vec<Failure>,
    pub ms: u64,
}

impl Report {
    fn new(suite: &str, n: usize, total: usize, mut failures: Vec<Failure>, start: Instant) -> Report {
        failures.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Report {
            suite: suite.into(),
            n,
            total,
            passed: total - failures.len(),
            failures,
            ms: start.elapsed().as_millis() as u64,
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// One line per failure after a summary line.
    pub fn summary(&self) -> String {
        let mut s = format!("{} n={}: {}/{} passed", self.suite, self.n, self.passed, self.total);
        for f in &self.failures {
            s.push_str(&format!(
                "\n  FAIL [{}] {} {:?} {}: {} vs {}",
                f.oracle, f.schema, f.indices, f.symbols, f.lhs, f.rhs
            ));
        }
        s
    }
}

/// Which oracles reject `lhs = rhs`, or `None` if all three accept.
fn compare(lhs: &BraidWord, rhs: &BraidWord, budget: u64) -> Result<Option<String>, BraidError> {
    let perm_ok = lhs.permutation() == rhs.permutation();
    let hr_ok = lhs.equals_with_budget(rhs, budget)?;
    let n = lhs.strands() / 2;
    let tl_ok = tl::actions_agree(lhs, rhs, &cap_state(n)).expect("matching strand counts");
    if hr_ok && perm_ok && tl_ok {
        return Ok(None);
    }
    if hr_ok {
        // handle reduction says equal but an invariant disagrees
        return Ok(Some("internal-consistency".into()));
    }
    let mut failing = vec!["handle-reduction"];
    if !perm_ok {
        failing.push("permutation");
    }
    if !tl_ok {
        failing.push("tl-action");
    }
    Ok(Some(failing.join("+")))
}

/// Check a list of instances with both oracles.
pub fn verify_instances(
    suite: &str,
    n: usize,
    instances: &[RelationInstance],
    cfg: &Config,
) -> Result<Report, VerifyError> {
    let start = Instant::now();
    let results: Vec<Result<Option<Failure>, VerifyError>> = cfg.install(|| {
        instances
            .par_iter()
            .map(|inst| {
                let lhs = inst.lhs.realize();
                let rhs = inst.rhs.realize();
                let verdict =
                    compare(&lhs, &rhs, cfg.budget).map_err(|e| VerifyError::from_braid(e, || inst.to_string(), cfg.budget))?;
                Ok(verdict.map(|oracle| Failure {
                    schema: inst.schema.name().into(),
                    indices: inst.indices.clone(),
                    symbols: inst.symbols_string(),
                    lhs,
                    rhs,
                    oracle,
                }))
            })
            .collect()
    });
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok(Report::new(suite, n, instances.len(), failures, start))
}

/// Every relation instance for `n` caps, `2 <= n <= 6`.
pub fn verify_relations(n: usize, cfg: &Config) -> Result<Report, VerifyError> {
    if !(2..=6).contains(&n) {
        return Err(VerifyError::Range { n, range: "2..=6" });
    }
    verify_instances("relations", n, &relation_instances(n), cfg)
}

/// `(lhs, rhs)` of the C2 relation for an arbitrary triple, listed or not.
pub fn c2_sides(n: usize, (i, j, k): (usize, usize, usize), (a, b, c): Triple) -> (SWord, SWord) {
    let la = Letter::pos(a.gen(i, j));
    let lb = Letter::pos(b.gen(i, k));
    let lc = Letter::pos(c.gen(j, k));
    (
        SWord::new(n, vec![la, lb, lc]).expect("in range"),
        SWord::new(n, vec![lb, lc, la]).expect("in range"),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C2Row {
    pub class: OrderClass,
    pub tuples: Vec<(usize, usize, usize)>,
    pub found: Vec<Triple>,
    pub expected: Vec<Triple>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C2Table {
    pub n: usize,
    pub checked: usize,
    pub rows: Vec<C2Row>,
    pub ms: u64,
}

impl C2Table {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

pub fn all_triples() -> Vec<Triple> {
    let mut out = Vec::with_capacity(27);
    for a in Alpha::ALL {
        for b in Alpha::ALL {
            for c in Alpha::ALL {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// For each order class, the triples `(α, β, γ)` for which C2 holds on every
/// cyclically ordered triple of that class (one triple per class when `n = 3`).
pub fn bruteforce_c2(n: usize, cfg: &Config) -> Result<C2Table, VerifyError> {
    if n < 3 {
        return Err(VerifyError::Range { n, range: "3.." });
    }
    let start = Instant::now();
    let triples = all_triples();
    let mut rows = Vec::new();
    let mut checked = 0;
    for class in OrderClass::ALL {
        let tuples: Vec<_> = cyclic_triples(n)
            .into_iter()
            .filter(|&(i, j, k)| OrderClass::of(i, j, k) == Some(class))
            .collect();
        let jobs: Vec<_> = tuples.iter().flat_map(|&t| triples.iter().map(move |&s| (t, s))).collect();
        checked += jobs.len();
        let verdicts: Vec<Result<(Triple, bool), VerifyError>> = cfg.install(|| {
            jobs.par_iter()
                .map(|&(t, s)| {
                    let (lhs, rhs) = c2_sides(n, t, s);
                    let eq = lhs
                        .realize()
                        .equals_with_budget(&rhs.realize(), cfg.budget)
                        .map_err(|e| VerifyError::from_braid(e, || format!("C2 {t:?} {s:?}"), cfg.budget))?;
                    Ok((s, eq))
                })
                .collect()
        });
        let mut failing = BTreeSet::new();
        for v in verdicts {
            let (s, eq) = v?;
            if !eq {
                failing.insert(s);
            }
        }
        let found: Vec<Triple> = triples.iter().copied().filter(|s| !failing.contains(s)).collect();
        let mut expected: Vec<Triple> = c2_triples(class).to_vec();
        expected.sort();
        rows.push(C2Row { class, tuples, matches: found == expected, found, expected });
    }
    Ok(C2Table { n, checked, rows, ms: start.elapsed().as_millis() as u64 })
}

fn single(n: usize, g: Generator) -> SWord {
    SWord::new(n, vec![Letter::pos(g)]).expect("in range")
}

fn failure(label: String, indices: Vec<usize>, lhs: BraidWord, rhs: BraidWord, oracle: &str) -> Failure {
    Failure { schema: label, indices, symbols: String::new(), lhs, rhs, oracle: oracle.into() }
}

/// Permutation images: identity on `S`, pair-block swaps for `σ_i`, foot swaps for `τ_j`.
pub fn purity_suite(n: usize) -> Report {
    let start = Instant::now();
    let strands = 2 * n;
    let mut checks: Vec<(Generator, Permutation)> =
        generators(n).into_iter().map(|g| (g, Permutation::identity(strands))).collect();
    for g in framed_generators(n) {
        let expected = match g {
            Generator::Sigma(i) => {
                let (a, b) = (2 * i - 1, 2 * i);
                Permutation::from_cycles(strands, &[&[a, a + 2], &[b, b + 2]])
            }
            Generator::Tau(j) => Permutation::from_cycles(strands, &[&[2 * j - 1, 2 * j]]),
            _ => unreachable!(),
        };
        checks.push((g, expected.expect("valid cycles")));
    }
    let failures = checks
        .iter()
        .filter_map(|(g, expected)| {
            let b = single(n, *g).realize();
            let got = b.permutation();
            (got != *expected).then(|| {
                failure(
                    g.to_string(),
                    g.indices(),
                    b,
                    BraidWord::identity(strands),
                    &format!("permutation: got {got}, expected {expected}"),
                )
            })
        })
        .collect();
    Report::new("purity", n, checks.len(), failures, start)
}

/// Braids expected to fail the cap test: Artin letters joining two caps and
/// band generators clasping strands of different caps.
pub fn negative_controls(n: usize) -> Vec<(String, BraidWord)> {
    let strands = 2 * n;
    let mut out = Vec::new();
    for k in 1..n {
        let s = BraidWord::generator(strands, 2 * k as i32);
        out.push((format!("artin sigma_{}", 2 * k), s.clone()));
        out.push((format!("artin sigma_{}^2", 2 * k), s.pow(2)));
    }
    for a in 1..=strands {
        for b in a + 1..=strands {
            if a.div_ceil(2) != b.div_ceil(2) {
                out.push((format!("clasp A_{a},{b}"), pure_braid_generator(a, b, strands).expect("in range")));
            }
        }
    }
    out
}

/// Words expected to pass the cap test: generators, framed letters, the
/// edge family, and `samples` seeded random products of those letters.
pub fn positive_samples(n: usize, samples: usize, seed: u64) -> Vec<(String, BraidWord)> {
    let mut out: Vec<(String, BraidWord)> = Vec::new();
    let letters: Vec<Generator> = generators(n).into_iter().chain(framed_generators(n)).collect();
    for &g in &letters {
        out.push((g.to_string(), single(n, g).realize()));
    }
    for r in edge_family(n) {
        out.push((r.to_string(), r.realize()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let len = rng.gen_range(1..=6);
        let w: Vec<Letter> = (0..len)
            .map(|_| {
                let g = letters[rng.gen_range(0..letters.len())];
                Letter::new(g, if rng.gen_bool(0.5) { 1 } else { -1 })
            })
            .collect();
        let w = SWord::new(n, w).expect("in range");
        out.push((w.to_string(), w.realize()));
    }
    out
}

/// Cap test on positives (must pass) and negative controls (must fail).
pub fn membership_suite(n: usize, cfg: &Config) -> Report {
    let start = Instant::now();
    let positives = positive_samples(n, 50, 0x5eed + n as u64);
    let negatives = negative_controls(n);
    let mut jobs: Vec<(String, BraidWord, bool)> = positives.into_iter().map(|(l, w)| (l, w, true)).collect();
    jobs.extend(negatives.into_iter().map(|(l, w)| (l, w, false)));
    let failures: Vec<Failure> = cfg.install(|| {
        jobs.par_iter()
            .filter_map(|(label, w, should_pass)| {
                let passed = tl::hilden_cap_test(w).passed();
                (passed != *should_pass).then(|| {
                    let oracle = if *should_pass { "cap-test" } else { "negative-control" };
                    failure(label.clone(), Vec::new(), w.clone(), BraidWord::identity(w.strands()), oracle)
                })
            })
            .collect()
    });
    Report::new("membership", n, jobs.len(), failures, start)
}

/// Every listed edge representative has its formal inverse in the list.
pub fn edge_family_closure(n: usize) -> Report {
    let start = Instant::now();
    let family = edge_family(n);
    let failures = family
        .iter()
        .filter(|r| !family.contains(&r.inverse()))
        .map(|r| failure(r.to_string(), Vec::new(), r.realize(), r.inverse().realize(), "inverse-closure"))
        .collect();
    Report::new("edge-family", n, family.len(), failures, start)
}

fn s_letters(n: usize) -> Vec<SWord> {
    generators(n).into_iter().map(|g| single(n, g)).collect()
}

/// Property (A) for every signed framed letter and every S-letter.
pub fn phi_property_a(n: usize, cfg: &Config) -> Result<Report, VerifyError> {
    let start = Instant::now();
    let jobs: Vec<(SWord, SWord)> = phi::framed_letters(n)
        .into_iter()
        .flat_map(|g| {
            let g = SWord::new(n, vec![g]).expect("in range");
            s_letters(n).into_iter().map(move |x| (g.clone(), x))
        })
        .collect();
    let results: Vec<Result<Option<Failure>, VerifyError>> = cfg.install(|| {
        jobs.par_iter()
            .map(|(g, x)| {
                let ok = phi::check_property_a_budget(g, x, cfg.budget)
                    .map_err(|e| VerifyError::from_phi(e, || format!("A {g} on {x}"), cfg.budget))?;
                Ok((!ok).then(|| {
                    let gb = g.realize();
                    let rhs = gb.concat(&x.realize()).concat(&gb.invert());
                    let lhs = phi::phi(g, x).expect("checked").realize();
                    failure(format!("A {g} on {x}"), Vec::new(), lhs, rhs, "handle-reduction")
                }))
            })
            .collect()
    });
    collect_report("phi-A", n, jobs.len(), results, start)
}

fn collect_report(
    suite: &str,
    n: usize,
    total: usize,
    results: Vec<Result<Option<Failure>, VerifyError>>,
    start: Instant,
) -> Result<Report, VerifyError> {
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok(Report::new(suite, n, total, failures, start))
}

/// Property (B) on every framed letter against every `{p, t}` letter and
/// against `samples` seeded random `{p, t}` words.
pub fn phi_property_b(n: usize, samples: usize, seed: u64) -> Report {
    let start = Instant::now();
    let pt: Vec<Generator> = generators(n).into_iter().filter(|g| g.is_pt()).collect();
    let mut words: Vec<SWord> = pt.iter().map(|&g| single(n, g)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let len = rng.gen_range(1..=8);
        let w = (0..len)
            .map(|_| Letter::new(pt[rng.gen_range(0..pt.len())], if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        words.push(SWord::new(n, w).expect("in range"));
    }
    let mut total = 0;
    let mut failures = Vec::new();
    for g in phi::framed_letters(n) {
        let g = SWord::new(n, vec![g]).expect("in range");
        for h in &words {
            total += 1;
            if !phi::check_property_b(&g, h).expect("h over p, t") {
                let img = phi::phi(&g, h).expect("checked");
                failures.push(failure(format!("B {g} on {h}"), Vec::new(), h.realize(), img.realize(), "alphabet"));
            }
        }
    }
    Report::new("phi-B", n, total, failures, start)
}

/// `Φ_q` and `Φ_{q⁻¹}` are mutually inverse for every framed letter.
pub fn phi_inverse(n: usize) -> Report {
    let start = Instant::now();
    let letters = framed_generators(n);
    let failures = letters
        .iter()
        .filter(|&&q| !phi::check_phi_inverse(n, q).expect("in range"))
        .map(|&q| {
            let b = single(n, q).realize();
            failure(q.to_string(), q.indices(), b.clone(), b, "free-group")
        })
        .collect();
    Report::new("phi-inverse", n, letters.len(), failures, start)
}

/// `Φ_{q^{-2}}` is conjugation by `p_{m,m+1}` or `t_m` on every S-letter.
pub fn phi_inverse_squared(n: usize, cfg: &Config) -> Result<Report, VerifyError> {
    let start = Instant::now();
    let mut jobs = Vec::new();
    for m in 1..=n {
        for s in generators(n) {
            jobs.push((m, FramedKind::Tau, s));
            if m < n {
                jobs.push((m, FramedKind::Sigma, s));
            }
        }
    }
    let results: Vec<Result<Option<Failure>, VerifyError>> = cfg.install(|| {
        jobs.par_iter()
            .map(|&(m, kind, s)| {
                let label = || format!("{kind:?}_{m}^-2 on {s}");
                let ok = phi::check_inverse_squared_budget(n, m, kind, Letter::pos(s), cfg.budget)
                    .map_err(|e| VerifyError::from_phi(e, label, cfg.budget))?;
                Ok((!ok).then(|| {
                    let b = single(n, s).realize();
                    failure(label(), vec![m], b.clone(), b, "handle-reduction")
                }))
            })
            .collect()
    });
    collect_report("phi-inverse-squared", n, jobs.len(), results, start)
}

/// Braid-level property (D): `Φ_g` maps both sides of every relation
/// instance to equal braids, for every signed framed letter.
pub fn phi_property_d(n: usize, cfg: &Config) -> Result<Report, VerifyError> {
    let start = Instant::now();
    let instances = relation_instances(n);
    let jobs: Vec<(Letter, &RelationInstance)> =
        phi::framed_letters(n).into_iter().flat_map(|g| instances.iter().map(move |r| (g, r))).collect();
    let results: Vec<Result<Option<Failure>, VerifyError>> = cfg.install(|| {
        jobs.par_iter()
            .map(|&(g, r)| {
                let gw = SWord::new(n, vec![g]).expect("in range");
                let ok = phi::check_property_d_weak(&gw, &r.lhs, &r.rhs, cfg.budget)
                    .map_err(|e| VerifyError::from_phi(e, || format!("D {g} on {r}"), cfg.budget))?;
                Ok((!ok).then(|| Failure {
                    schema: format!("{} under {g}", r.schema),
                    indices: r.indices.clone(),
                    symbols: r.symbols_string(),
                    lhs: phi::phi(&gw, &r.lhs).expect("checked").realize(),
                    rhs: phi::phi(&gw, &r.rhs).expect("checked").realize(),
                    oracle: "handle-reduction".into(),
                }))
            })
            .collect()
    });
    collect_report("phi-D", n, jobs.len(), results, start)
}

/// Every property (C) case fixture under `dir`.
pub fn phi_cases(dir: &Path, cfg: &Config) -> Result<Report, VerifyError> {
    let start = Instant::now();
    let cases = phi::load_cases(dir).map_err(VerifyError::Phi)?;
    let n = cases.iter().map(|(_, c)| c.n).max().unwrap_or(0);
    let results: Vec<Result<Option<Failure>, VerifyError>> = cfg.install(|| {
        cases
            .par_iter()
            .map(|(name, c)| {
                let ok = phi::check_property_c_case_budget(c, cfg.budget)
                    .map_err(|e| VerifyError::from_phi(e, || name.clone(), cfg.budget))?;
                Ok((!ok).then(|| {
                    failure(
                        name.clone(),
                        Vec::new(),
                        phi::phi(&c.g, &c.r).expect("checked").realize(),
                        c.h1.concat(&c.r_target).concat(&c.h2).realize(),
                        "handle-reduction",
                    )
                }))
            })
            .collect()
    });
    collect_report("phi-C", n, cases.len(), results, start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_relation_suites_pass() {
        let cfg = Config::default();
        for n in 2..=3 {
            let r = verify_relations(n, &cfg).unwrap();
            assert!(r.ok(), "{}", r.summary());
            assert_eq!(r.passed, r.total);
        }
        assert!(verify_relations(1, &cfg).is_err());
        assert!(verify_relations(7, &cfg).is_err());
    }

    #[test]
    fn injected_fault_is_reported_once() {
        let mut instances = relation_instances(3);
        let t1 = Letter::pos(Generator::T(1));
        let mut rhs = instances[5].rhs.clone();
        rhs.push(t1);
        instances[5].rhs = rhs;
        let r = verify_instances("relations", 3, &instances, &Config::default()).unwrap();
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].oracle, "handle-reduction+tl-action");
        assert_eq!(r.passed + r.failures.len(), r.total);
    }

    #[test]
    fn purity_examples() {
        assert!(purity_suite(3).ok());
        let s = single(2, Generator::Sigma(1)).realize().permutation();
        assert_eq!(s.to_string(), "(1 3)(2 4)");
        let t = single(2, Generator::Tau(2)).realize().permutation();
        assert_eq!(t.to_string(), "(3 4)");
    }

    #[test]
    fn edge_family_is_closed() {
        let r = edge_family_closure(3);
        assert!(r.ok());
        assert_eq!(r.total, 18);
    }

    #[test]
    fn budget_error_names_instance() {
        let cfg = Config { workers: 1, budget: 0 };
        let err = verify_relations(3, &cfg).unwrap_err();
        assert!(err.is_resource_limit(), "{err}");
    }
}
