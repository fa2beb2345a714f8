//! Exhaustive verification suites and their reports.
//!
//! Every suite splits its search space into a fixed list of chunks, evaluates the
//! chunks on `jobs` scoped threads (chunk `i` goes to worker `i % jobs`), and merges
//! the partial results in chunk order. Reports therefore depend only on the suite,
//! `max_n`, `seed` and `samples`, never on `jobs`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use indexmap::IndexMap;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::davenport::{self, abelian_lower_bound, ChunkResult, DavenportOutcome};
use crate::dihedral::{self, DihedralSequence};
use crate::enumerate::{self, Root};
use crate::group::{ElementId, GroupSpec};
use crate::normalizer::{check_multiplicity_bound, find_normalizer};
use crate::products::{mask_members, run_length, ProductDp};
use crate::subsum::{interval_decompose, subsums_int, subsums_mod, verify_interval_theorem};
use crate::zn::{Modulus, ResidueSequence};
use crate::{Error, Result};

/// Largest modulus for the `Z_n` enumeration suites (reachable sums live in a `u64`).
pub const MAX_ZN_SWEEP: u32 = 64;
/// Samples per chunk in the randomized witness suite.
const WITNESS_CHUNK: usize = 250;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    IntervalTheorem,
    Normalizer,
    Bounds,
    Classification,
    Davenport,
    OracleEquivalence,
    Witness,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::IntervalTheorem,
        Suite::Normalizer,
        Suite::Bounds,
        Suite::Classification,
        Suite::Davenport,
        Suite::OracleEquivalence,
        Suite::Witness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::IntervalTheorem => "interval-theorem",
            Suite::Normalizer => "normalizer",
            Suite::Bounds => "bounds",
            Suite::Classification => "classification",
            Suite::Davenport => "davenport",
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::Witness => "witness",
        }
    }

    /// `max_n` used when the caller does not pick one.
    pub fn default_max_n(self) -> u32 {
        match self {
            Suite::IntervalTheorem | Suite::Normalizer => 12,
            Suite::Bounds => 13,
            Suite::Classification => 6,
            Suite::Davenport => 7,
            Suite::OracleEquivalence => 10,
            Suite::Witness => 64,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::parse(
                    s,
                    format!("unknown suite; expected one of {}", names.join(", ")),
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_n: u32,
    pub jobs: usize,
    pub seed: u64,
    /// Number of random instances for the witness suite.
    pub samples: usize,
}

impl SweepConfig {
    pub fn for_suite(suite: Suite) -> Self {
        SweepConfig {
            max_n: suite.default_max_n(),
            jobs: 1,
            seed: 0,
            samples: 10_000,
        }
    }
}

/// The parts of [`SweepConfig`] that determine a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub max_n: u32,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// The offending instance in canonical text form.
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub suite: String,
    pub config: ReportConfig,
    pub counts: IndexMap<String, u64>,
    pub counterexamples: Vec<Counterexample>,
    pub passed: bool,
    /// Wall time; left out of serialized reports unless the caller sets it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Partial result of one chunk; merged in chunk order.
#[derive(Debug, Clone, Default)]
struct Tally {
    counts: IndexMap<String, u64>,
    counterexamples: Vec<Counterexample>,
}

impl Tally {
    fn bump(&mut self, key: impl Into<String>, by: u64) {
        *self.counts.entry(key.into()).or_insert(0) += by;
    }

    fn fail(&mut self, instance: impl ToString, detail: impl Into<String>) {
        self.counterexamples.push(Counterexample {
            instance: instance.to_string(),
            detail: detail.into(),
        });
    }

    fn absorb(&mut self, other: Tally) {
        for (k, v) in other.counts {
            self.bump(k, v);
        }
        self.counterexamples.extend(other.counterexamples);
    }
}

/// Evaluates `work` on every chunk using `jobs` threads with a static round-robin
/// assignment; results come back in chunk order.
pub fn run_chunks<C, R, F>(chunks: &[C], jobs: usize, work: F) -> Vec<R>
where
    C: Sync,
    R: Send,
    F: Fn(&C) -> R + Sync,
{
    let jobs = jobs.max(1).min(chunks.len().max(1));
    if jobs == 1 {
        return chunks.iter().map(&work).collect();
    }
    let mut slots: Vec<Option<R>> = (0..chunks.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let work = &work;
                scope.spawn(move || {
                    (w..chunks.len())
                        .step_by(jobs)
                        .map(|i| (i, work(&chunks[i])))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("sweep worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots
        .into_iter()
        .map(|r| r.expect("every chunk assigned"))
        .collect()
}

pub fn run_suite(suite: Suite, config: &SweepConfig) -> Result<SweepReport> {
    let start = Instant::now();
    let tally = match suite {
        Suite::IntervalTheorem => interval_theorem(config)?,
        Suite::Normalizer => normalizer(config)?,
        Suite::Bounds => bounds(config)?,
        Suite::Classification => classification(config)?,
        Suite::Davenport => davenport_suite(config)?,
        Suite::OracleEquivalence => oracle_equivalence(config)?,
        Suite::Witness => witness(config)?,
    };
    Ok(SweepReport {
        suite: suite.name().to_string(),
        config: ReportConfig {
            max_n: config.max_n,
            seed: config.seed,
            samples: (suite == Suite::Witness).then_some(config.samples),
        },
        passed: tally.counterexamples.is_empty(),
        counts: tally.counts,
        counterexamples: tally.counterexamples,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}

fn merge(parts: Vec<Result<Tally>>) -> Result<Tally> {
    let mut total = Tally::default();
    for part in parts {
        total.absorb(part?);
    }
    Ok(total)
}

fn zn_range(config: &SweepConfig, low: u32) -> Result<std::ops::RangeInclusive<u32>> {
    if config.max_n < low {
        return Err(Error::domain(format!("max_n must be at least {low}")));
    }
    if config.max_n > MAX_ZN_SWEEP {
        return Err(Error::Budget(format!(
            "Z_n sweeps support n <= {MAX_ZN_SWEEP}, got {}",
            config.max_n
        )));
    }
    Ok(low..=config.max_n)
}

/// Chunks `(n, first residue)` for the `Z_n` enumeration suites.
fn zn_chunks(range: std::ops::RangeInclusive<u32>) -> Vec<(u32, usize)> {
    range
        .flat_map(|n| (0..n as usize - 1).map(move |c| (n, c)))
        .collect()
}

#[inline]
fn rotl(mask: u64, shift: u32, n: u32) -> u64 {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    ((mask << shift) | (mask >> (n - shift))) & full
}

/// Zero-sum free sequences over `Z_n` of length at most `max_len` and bar-sum at
/// most `bar_cap`, whose smallest term is `chunk + 1`.
fn for_each_zero_sum_free<V>(n: u32, max_len: usize, chunk: usize, bar_cap: u64, mut visit: V)
where
    V: FnMut(&[usize], u64),
{
    let alphabet: Vec<usize> = (1..n as usize).collect();
    enumerate::search(
        &alphabet,
        max_len,
        Root::First(chunk),
        &(0u64, 0u64),
        |&(reach, total), _, a| {
            let total = total + a as u64;
            let reach = reach | rotl(reach, a as u32, n) | 1 << a;
            (total <= bar_cap && reach & 1 == 0).then_some((reach, total))
        },
        |terms, &(_, total)| visit(terms, total),
    );
}

fn residue_sequence(n: u32, terms: &[usize]) -> ResidueSequence {
    let m = Modulus::new(n).expect("sweep moduli are valid");
    ResidueSequence::from_terms(m, terms.iter().map(|&a| a as i64))
}

fn interval_theorem(config: &SweepConfig) -> Result<Tally> {
    let chunks = zn_chunks(zn_range(config, 3)?);
    let parts = run_chunks(&chunks, config.jobs, |&(n, chunk)| {
        let mut tally = Tally::default();
        let mut error = None;
        for_each_zero_sum_free(n, n as usize - 1, chunk, n as u64 - 1, |terms, _| {
            // need k = n - len with n >= 2k + 1
            if 2 * terms.len() < n as usize + 1 || error.is_some() {
                return;
            }
            let seq = residue_sequence(n, terms);
            let k = n as i64 - terms.len() as i64;
            match check_interval_instance(&seq, k) {
                Ok(None) => {}
                Ok(Some(detail)) => tally.fail(&seq, detail),
                Err(e) => error = Some(e),
            }
            tally.bump("instances", 1);
            tally.bump(n.to_string(), 1);
        });
        error.map_or(Ok(tally), Err)
    });
    merge(parts)
}

/// `None` when the theorem, corollary and every witness check out.
fn check_interval_instance(seq: &ResidueSequence, k: i64) -> Result<Option<String>> {
    let report = verify_interval_theorem(seq, k)?;
    if !report.hypotheses_met {
        return Ok(Some(format!(
            "hypotheses unexpectedly unmet: {}",
            report.failed_hypotheses.join(", ")
        )));
    }
    if !report.equality_holds {
        return Ok(Some(format!(
            "missing targets {:?}",
            report.missing_targets
        )));
    }
    if !report.corollary_holds {
        return Ok(Some(format!("[1, {}] not covered", seq.n() as i64 - k)));
    }
    for t in 1..=report.sigma_bar {
        match interval_decompose(seq, t) {
            Ok(w) if w.is_valid_for(seq) => {}
            Ok(w) => return Ok(Some(format!("invalid witness [{}] for {t}", w.subsequence))),
            Err(e) => return Ok(Some(format!("decompose {t}: {e}"))),
        }
    }
    Ok(None)
}

fn normalizer(config: &SweepConfig) -> Result<Tally> {
    let chunks = zn_chunks(zn_range(config, 3)?);
    let parts = run_chunks(&chunks, config.jobs, |&(n, chunk)| {
        let mut tally = Tally::default();
        let mut error = None;
        for_each_zero_sum_free(n, n as usize - 1, chunk, u64::MAX, |terms, _| {
            if 2 * terms.len() <= n as usize || error.is_some() {
                return;
            }
            let seq = residue_sequence(n, terms);
            let outcome = find_normalizer(&seq).and_then(|r| Ok((r, seq.scale(r.g as i64)?)));
            match outcome {
                Ok((r, scaled)) => {
                    if !r.achieves_bound {
                        tally.fail(
                            &seq,
                            format!("best multiplier g={} leaves bar-sum {}", r.g, r.total),
                        );
                    } else if scaled.bar_sum() != r.total || scaled.len() != seq.len() {
                        tally.fail(&seq, "scaled sequence disagrees with reported total");
                    }
                }
                Err(e) => error = Some(e),
            }
            tally.bump("instances", 1);
            tally.bump(n.to_string(), 1);
        });
        error.map_or(Ok(tally), Err)
    });
    merge(parts)
}

fn bounds(config: &SweepConfig) -> Result<Tally> {
    let chunks = zn_chunks(zn_range(config, 3)?);
    let parts = run_chunks(&chunks, config.jobs, |&(n, chunk)| {
        let mut tally = Tally::default();
        let mut error = None;
        for_each_zero_sum_free(n, n as usize - 1, chunk, u64::MAX, |terms, _| {
            if 2 * terms.len() < n as usize + 1 || error.is_some() {
                return;
            }
            let seq = residue_sequence(n, terms);
            let k = n as i64 - terms.len() as i64;
            let outcome = find_normalizer(&seq)
                .and_then(|r| seq.scale(r.g as i64))
                .and_then(|normal| check_multiplicity_bound(&normal, k));
            match outcome {
                Ok(report) => {
                    if !report.holds {
                        tally.fail(
                            &seq,
                            format!(
                                "max multiplicity {} below required {} ({:?})",
                                report.achieved, report.required, report.regime
                            ),
                        );
                    }
                    let regime = serde_regime(report.regime);
                    tally.bump("instances", 1);
                    tally.bump(regime, 1);
                }
                Err(e) => error = Some(e),
            }
        });
        error.map_or(Ok(tally), Err)
    });
    merge(parts)
}

fn serde_regime(regime: crate::normalizer::BoundRegime) -> &'static str {
    use crate::normalizer::BoundRegime::*;
    match regime {
        BoveyErdosNiven => "BEN",
        SavchevChen => "SC",
        OutOfRange => "out-of-range",
    }
}

fn classification(config: &SweepConfig) -> Result<Tally> {
    if config.max_n < 3 || config.max_n > dihedral::CLASSIFICATION_BUDGET {
        return Err(Error::Budget(format!(
            "classification sweep needs 3 <= max_n <= {}",
            dihedral::CLASSIFICATION_BUDGET
        )));
    }
    let chunks: Vec<(u32, usize)> = (3..=config.max_n)
        .flat_map(|n| {
            dihedral::classification_chunks(n)
                .into_iter()
                .map(move |c| (n, c))
        })
        .collect();
    let parts = run_chunks(&chunks, config.jobs, |&(n, c)| {
        dihedral::classify_chunk(n, c)
    });
    let mut found: IndexMap<u32, Vec<DihedralSequence>> = IndexMap::new();
    for (&(n, _), part) in chunks.iter().zip(parts) {
        found.entry(n).or_default().extend(part?);
    }
    let mut tally = Tally::default();
    for (n, seqs) in found {
        let report = dihedral::classification_report(n, &seqs)?;
        tally.bump(n.to_string(), report.found_count);
        for extra in report.extras {
            tally.fail(extra, "product-one free but outside the predicted family");
        }
        for missing in report.missing {
            tally.fail(missing, "predicted family member is not product-one free");
        }
    }
    Ok(tally)
}

/// One Davenport check: group, search length and the expected constant.
pub struct DavenportCase {
    pub group: GroupSpec,
    pub max_len: usize,
    pub expected: usize,
}

/// `d(Z_n) = n - 1` for `n ∈ [2, cyclic_max]`, `d = Σ(n_i - 1)` for the listed
/// direct sums, and `d(D_2n) = n` for `n ∈ [3, dihedral_max]`.
pub fn davenport_cases(cyclic_max: u32, dihedral_max: u32) -> Result<Vec<DavenportCase>> {
    let mut cases = Vec::new();
    for n in 2..=cyclic_max {
        cases.push(DavenportCase {
            group: GroupSpec::cyclic(n)?,
            max_len: n as usize + 1,
            expected: n as usize - 1,
        });
    }
    for ns in [&[2, 2][..], &[3, 3], &[2, 4], &[2, 2, 2]] {
        let bound = abelian_lower_bound(ns)?.value as usize;
        cases.push(DavenportCase {
            group: GroupSpec::direct_sum(ns)?,
            max_len: bound + 2,
            expected: bound,
        });
    }
    for n in 3..=dihedral_max {
        cases.push(DavenportCase {
            group: GroupSpec::dihedral(n)?,
            max_len: n as usize + 1,
            expected: n as usize,
        });
    }
    Ok(cases)
}

/// Runs the cases in parallel; counts map each group name to the `d` found.
pub fn run_davenport_cases(
    cases: &[DavenportCase],
    jobs: usize,
) -> Result<(IndexMap<String, u64>, Vec<Counterexample>)> {
    let chunks: Vec<(usize, usize)> = cases
        .iter()
        .enumerate()
        .flat_map(|(i, c)| (0..davenport::search_alphabet(&c.group).len()).map(move |j| (i, j)))
        .collect();
    let parts = run_chunks(&chunks, jobs, |&(i, j)| {
        davenport::search_chunk(&cases[i].group, cases[i].max_len, j)
    });
    let mut merged: Vec<ChunkResult> = vec![ChunkResult::default(); cases.len()];
    for (&(i, _), part) in chunks.iter().zip(parts) {
        merged[i] = std::mem::take(&mut merged[i]).merge(part?);
    }
    let mut counts = IndexMap::new();
    let mut failures = Vec::new();
    for (case, result) in cases.iter().zip(merged) {
        let name = case.group.name().to_string();
        match davenport::finish_search(case.max_len, result) {
            DavenportOutcome::Determined(r) => {
                counts.insert(name.clone(), r.d as u64);
                if r.d != case.expected {
                    failures.push(Counterexample {
                        instance: name,
                        detail: format!("found d = {}, expected {}", r.d, case.expected),
                    });
                } else if !davenport::is_product_one_free(&case.group, &r.extremal_example)? {
                    failures.push(Counterexample {
                        instance: name,
                        detail: "extremal example is not product-one free".into(),
                    });
                }
            }
            DavenportOutcome::UnboundedWithinBudget { max_len, .. } => {
                failures.push(Counterexample {
                    instance: name,
                    detail: format!("free sequence of length {max_len} exists; d not bounded"),
                })
            }
        }
    }
    Ok((counts, failures))
}

fn davenport_suite(config: &SweepConfig) -> Result<Tally> {
    if config.max_n < 3 {
        return Err(Error::domain("max_n must be at least 3"));
    }
    let cases = davenport_cases(config.max_n, config.max_n)?;
    let (counts, counterexamples) = run_davenport_cases(&cases, config.jobs)?;
    Ok(Tally {
        counts,
        counterexamples,
    })
}

/// Sub-multiset sums by direct enumeration over the multiplicity vectors.
pub fn brute_force_subsums(seq: &ResidueSequence) -> (BTreeSet<u32>, BTreeSet<u64>) {
    let n = seq.n() as u64;
    let runs: Vec<(u32, usize)> = seq.iter().collect();
    let mut take = vec![0usize; runs.len()];
    let (mut modular, mut integer) = (BTreeSet::new(), BTreeSet::new());
    'outer: loop {
        let mut i = 0;
        loop {
            if i == runs.len() {
                break 'outer;
            }
            if take[i] < runs[i].1 {
                take[i] += 1;
                break;
            }
            take[i] = 0;
            i += 1;
        }
        let (mut r, mut s) = (0u64, 0u64);
        for (&(a, _), &c) in runs.iter().zip(&take) {
            r = (r + a as u64 * c as u64) % n;
            s += if a == 0 { n } else { a as u64 } * c as u64;
        }
        modular.insert(r as u32);
        integer.insert(s);
    }
    (modular, integer)
}

/// `Π(S)` by multiplying out every ordered selection of distinct positions.
pub fn brute_force_big_pi(group: &GroupSpec, terms: &[ElementId]) -> BTreeSet<ElementId> {
    fn walk(
        group: &GroupSpec,
        terms: &[ElementId],
        used: &mut [bool],
        acc: ElementId,
        out: &mut BTreeSet<ElementId>,
    ) {
        for i in 0..terms.len() {
            if !used[i] {
                used[i] = true;
                let p = group.mul(acc, terms[i]);
                out.insert(p);
                walk(group, terms, used, p, out);
                used[i] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(
        group,
        terms,
        &mut vec![false; terms.len()],
        group.identity(),
        &mut out,
    );
    out
}

fn oracle_equivalence(config: &SweepConfig) -> Result<Tally> {
    const DIHEDRAL: [u32; 2] = [3, 4];
    const DIHEDRAL_LEN: usize = 6;
    let range = zn_range(config, 2)?;
    let max_len = config.max_n as usize;
    let mut chunks: Vec<(bool, u32, usize)> = range
        .flat_map(|n| (0..n as usize).map(move |c| (false, n, c)))
        .collect();
    chunks.extend(
        DIHEDRAL
            .iter()
            .flat_map(|&n| (0..2 * n as usize).map(move |c| (true, n, c))),
    );
    let parts = run_chunks(&chunks, config.jobs, |&(is_dihedral, n, chunk)| {
        let mut tally = Tally::default();
        if is_dihedral {
            let group = GroupSpec::dihedral(n)?;
            let m = Modulus::new(n)?;
            let alphabet: Vec<usize> = (0..group.order()).collect();
            let mut error = None;
            enumerate::search(
                &alphabet,
                DIHEDRAL_LEN,
                Root::First(chunk),
                &(),
                |_, _, _| Some(()),
                |terms, _| {
                    let dp = match ProductDp::build(&group, &run_length(terms)) {
                        Ok(dp) => dp,
                        Err(e) => {
                            error.get_or_insert(e);
                            return;
                        }
                    };
                    let fast: BTreeSet<ElementId> = mask_members(dp.big_pi()).into_iter().collect();
                    if fast != brute_force_big_pi(&group, terms) {
                        let seq = DihedralSequence::from_ids(m, terms).map(|s| s.to_string());
                        tally.fail(
                            seq.unwrap_or_default(),
                            "Π DP disagrees with permutation brute force",
                        );
                    }
                    tally.bump(format!("dihedral:{n}"), 1);
                },
            );
            if let Some(e) = error {
                return Err(e);
            }
        } else {
            let alphabet: Vec<usize> = (0..n as usize).collect();
            enumerate::search(
                &alphabet,
                max_len,
                Root::First(chunk),
                &(),
                |_, _, _| Some(()),
                |terms, _| {
                    let seq = residue_sequence(n, terms);
                    let (modular, integer) = brute_force_subsums(&seq);
                    let fast_mod: BTreeSet<u32> = subsums_mod(&seq).members().into_iter().collect();
                    let fast_int: BTreeSet<u64> = subsums_int(&seq).members().into_iter().collect();
                    if fast_mod != modular {
                        tally.fail(&seq, "modular subsums disagree with brute force");
                    }
                    if fast_int != integer {
                        tally.fail(&seq, "integer subsums disagree with brute force");
                    }
                    tally.bump(format!("cyclic:{n}"), 1);
                },
            );
        }
        Ok(tally)
    });
    merge(parts)
}

/// A random sequence meeting the interval theorem hypotheses, and a target in range.
///
/// Draws `n`, `k` with `n ≥ 2k + 1`, a bar-sum `s ∈ [n-k, n-1]` and a random
/// composition of `s` into `n - k` positive parts. The result is then scaled by a
/// random unit and brought back with [`find_normalizer`].
pub fn random_interval_instance(rng: &mut impl Rng, max_n: u32) -> Result<(ResidueSequence, u64)> {
    let n = rng.gen_range(3..=max_n.max(3));
    let k = rng.gen_range(1..=(n - 1) / 2);
    let len = (n - k) as usize;
    let total = rng.gen_range(len..=n as usize - 1);
    let mut cuts = index::sample(rng, total - 1, len - 1).into_vec();
    cuts.iter_mut().for_each(|c| *c += 1);
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(len);
    let mut prev = 0usize;
    for c in cuts.into_iter().chain([total]) {
        parts.push((c - prev) as i64);
        prev = c;
    }
    let m = Modulus::new(n)?;
    let seq = ResidueSequence::from_terms(m, parts);
    let units: Vec<u32> = m.units().collect();
    let g = units[rng.gen_range(0..units.len())];
    let scrambled = seq.scale(g as i64)?;
    let normal = scrambled.scale(find_normalizer(&scrambled)?.g as i64)?;
    let t = rng.gen_range(1..=normal.bar_sum());
    Ok((normal, t))
}

fn witness(config: &SweepConfig) -> Result<Tally> {
    if config.max_n < 3 || config.max_n > crate::zn::MAX_MODULUS {
        return Err(Error::domain("witness suite needs 3 <= max_n <= 10^6"));
    }
    let chunks: Vec<(u64, usize)> = (0..config.samples.div_ceil(WITNESS_CHUNK))
        .map(|c| {
            (
                c as u64,
                WITNESS_CHUNK.min(config.samples - c * WITNESS_CHUNK),
            )
        })
        .collect();
    let parts = run_chunks(&chunks, config.jobs, |&(stream, count)| {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(stream);
        let mut tally = Tally::default();
        for _ in 0..count {
            let (seq, t) = random_interval_instance(&mut rng, config.max_n)?;
            match interval_decompose(&seq, t) {
                Ok(w) if w.is_valid_for(&seq) => {}
                Ok(w) => tally.fail(
                    &seq,
                    format!("invalid witness [{}] for t={t}", w.subsequence),
                ),
                Err(e) => tally.fail(&seq, format!("t={t}: {e}")),
            }
            tally.bump("samples", 1);
        }
        Ok(tally)
    });
    merge(parts)
}
