use serde_json::Value;
use zerosum::davenport::{davenport_search, DavenportOutcome};
use zerosum::dihedral::{is_product_one_free, parse_dihedral_sequence, verify_classification};
use zerosum::group::GroupSpec;
use zerosum::normalizer::{check_multiplicity_bound, find_normalizer};
use zerosum::subsum::{
    failed_hypotheses, interval_decompose, subsums_int, subsums_mod, verify_interval_theorem,
};
use zerosum::sweep::{run_suite, Suite, SweepConfig, SweepReport};
use zerosum::zn::{parse_sequence, ResidueSequence};
use zerosum::Error;

use crate::{Cli, Command, DihedralAction, Format, VerifyCheck};

pub const PASS: u8 = 0;
pub const FAIL: u8 = 1;
pub const USAGE: u8 = 2;

pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: Vec<String>,
}

impl Outcome {
    fn usage(err: Error) -> Self {
        Outcome {
            code: USAGE,
            stdout: String::new(),
            stderr: vec![format!("error: {err}")],
        }
    }
}

/// Ordered key/value document rendered as `key: value` lines or a JSON object.
struct Doc {
    fields: Vec<(&'static str, Value)>,
}

impl Doc {
    fn new() -> Self {
        Doc { fields: Vec::new() }
    }

    fn field(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let map: serde_json::Map<String, Value> = self
                    .fields
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.clone()))
                    .collect();
                let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("json");
                s.push('\n');
                s
            }
            Format::Text => self
                .fields
                .iter()
                .map(|(k, v)| format!("{k}: {}\n", text_value(v)))
                .collect(),
        }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(text_value).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn done(code: u8, doc: Doc, format: Format) -> Outcome {
    Outcome {
        code,
        stdout: doc.render(format),
        stderr: Vec::new(),
    }
}

fn terms_text(seq: &ResidueSequence) -> String {
    seq.terms()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn resolve_k(seq: &ResidueSequence, k: Option<i64>) -> Result<i64, Error> {
    let implied = seq.n() as i64 - seq.len() as i64;
    match k {
        Some(k) if k != implied => Err(Error::Domain(format!(
            "|S| = {} but n - k = {}",
            seq.len(),
            seq.n() as i64 - k
        ))),
        _ => Ok(implied),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    let result = match &cli.command {
        Command::Verify { check } => verify(check, format),
        Command::Normalize { sequence } => normalize(sequence, format),
        Command::Decompose { sequence, t } => decompose(sequence, *t, format),
        Command::Sums { sequence } => sums(sequence, format),
        Command::Dihedral { action } => dihedral(action, format),
        Command::Davenport { group, max_len } => davenport(group, *max_len, format),
        Command::Sweep {
            suite,
            max_n,
            jobs,
            seed,
            samples,
            timing,
        } => sweep(suite, *max_n, *jobs, *seed, *samples, *timing, format),
    };
    result.unwrap_or_else(|err| match err {
        Error::InvariantViolation(_) => Outcome {
            code: FAIL,
            stdout: String::new(),
            stderr: vec![format!("error: {err}")],
        },
        other => Outcome::usage(other),
    })
}

fn verify(check: &VerifyCheck, format: Format) -> Result<Outcome, Error> {
    match check {
        VerifyCheck::Theorem { sequence, k } => {
            let seq = parse_sequence(sequence)?;
            let k = resolve_k(&seq, *k)?;
            let r = verify_interval_theorem(&seq, k)?;
            let ok = r.hypotheses_met && r.equality_holds && r.corollary_holds;
            let doc = Doc::new()
                .field("sequence", seq.to_string())
                .field("n", r.n)
                .field("k", r.k)
                .field("hypotheses_met", r.hypotheses_met)
                .field("failed_hypotheses", r.failed_hypotheses.clone())
                .field("sigma_bar", r.sigma_bar)
                .field("equality_holds", r.equality_holds)
                .field("missing_targets", r.missing_targets.clone())
                .field("corollary_holds", r.corollary_holds);
            Ok(done(if ok { PASS } else { FAIL }, doc, format))
        }
        VerifyCheck::Bounds { sequence, k } => {
            let seq = parse_sequence(sequence)?;
            let k = resolve_k(&seq, *k)?;
            match check_multiplicity_bound(&seq, k) {
                Ok(r) => {
                    let doc = Doc::new()
                        .field("sequence", seq.to_string())
                        .field("n", r.n)
                        .field("k", r.k)
                        .field("regime", serde_json::to_value(r.regime).expect("json"))
                        .field("required", r.required)
                        .field("achieved", r.achieved)
                        .field("holds", r.holds);
                    Ok(done(if r.holds { PASS } else { FAIL }, doc, format))
                }
                Err(Error::Domain(msg)) => Ok(Outcome {
                    code: FAIL,
                    stdout: String::new(),
                    stderr: vec![format!("hypothesis failed: {msg}")],
                }),
                Err(e) => Err(e),
            }
        }
    }
}

fn normalize(text: &str, format: Format) -> Result<Outcome, Error> {
    let seq = parse_sequence(text)?;
    let r = find_normalizer(&seq)?;
    let scaled = seq.scale(r.g as i64)?;
    let doc = Doc::new()
        .field("sequence", seq.to_string())
        .field("g", r.g)
        .field("total", r.total)
        .field("achieves_bound", r.achieves_bound)
        .field("normalized", scaled.to_string());
    Ok(done(
        if r.achieves_bound { PASS } else { FAIL },
        doc,
        format,
    ))
}

fn decompose(text: &str, t: u64, format: Format) -> Result<Outcome, Error> {
    let seq = parse_sequence(text)?;
    let k = seq.n() as i64 - seq.len() as i64;
    let failed = failed_hypotheses(&seq, k);
    if !failed.is_empty() {
        return Ok(Outcome {
            code: FAIL,
            stdout: String::new(),
            stderr: vec![format!(
                "hypothesis failed for {seq} (k = {k}): {}",
                failed.join(", ")
            )],
        });
    }
    let w = interval_decompose(&seq, t)?;
    let doc = Doc::new()
        .field("sequence", seq.to_string())
        .field("target", w.target)
        .field("witness", terms_text(&w.subsequence))
        .field("bar_sum", w.subsequence.bar_sum());
    Ok(done(PASS, doc, format))
}

fn sums(text: &str, format: Format) -> Result<Outcome, Error> {
    let seq = parse_sequence(text)?;
    let (sigma, sigma_bar) = zerosum::zn::sums(&seq);
    let modular = subsums_mod(&seq);
    let integer = subsums_int(&seq);
    let doc = Doc::new()
        .field("sequence", seq.to_string())
        .field("sigma_mod", sigma.value())
        .field("sigma_bar", sigma_bar)
        .field("subsums_mod", modular.members())
        .field("subsums_int", integer.members())
        .field("zero_sum_free", !modular.contains(0));
    Ok(done(PASS, doc, format))
}

fn dihedral(action: &DihedralAction, format: Format) -> Result<Outcome, Error> {
    match action {
        DihedralAction::Classify { n } => {
            let r = verify_classification(*n)?;
            let doc = Doc::new()
                .field("n", r.n)
                .field("found_count", r.found_count)
                .field("expected_count", r.expected_count)
                .field("matches_family", r.matches_family)
                .field("extras", r.extras.clone())
                .field("missing", r.missing.clone());
            Ok(done(
                if r.matches_family { PASS } else { FAIL },
                doc,
                format,
            ))
        }
        DihedralAction::Check { sequence } => {
            let seq = parse_dihedral_sequence(sequence)?;
            let (free, witness) = is_product_one_free(&seq)?;
            let witness: Vec<String> = witness
                .map(|w| w.ordered_terms.iter().map(|e| e.to_string()).collect())
                .unwrap_or_default();
            let doc = Doc::new()
                .field("sequence", seq.to_string())
                .field("product_one_free", free)
                .field("witness", witness);
            Ok(done(if free { PASS } else { FAIL }, doc, format))
        }
    }
}

fn davenport(name: &str, max_len: Option<usize>, format: Format) -> Result<Outcome, Error> {
    let group: GroupSpec = name.parse()?;
    let max_len = max_len.unwrap_or(group.order());
    let outcome = davenport_search(&group, max_len)?;
    let (code, doc) = match outcome {
        DavenportOutcome::Determined(r) => (
            PASS,
            Doc::new()
                .field("group", group.name())
                .field("d", r.d)
                .field(
                    "extremal_example",
                    group.format_multiset(&r.extremal_example),
                )
                .field("search_space_size", r.search_space_size),
        ),
        DavenportOutcome::UnboundedWithinBudget { max_len, example } => (
            FAIL,
            Doc::new()
                .field("group", group.name())
                .field("unbounded_within_budget", max_len)
                .field("free_example", group.format_multiset(&example)),
        ),
    };
    Ok(done(code, doc, format))
}

fn sweep(
    suite: &str,
    max_n: Option<u32>,
    jobs: usize,
    seed: u64,
    samples: usize,
    timing: bool,
    format: Format,
) -> Result<Outcome, Error> {
    let suite: Suite = suite.parse()?;
    if jobs == 0 {
        return Err(Error::Domain("--jobs must be at least 1".into()));
    }
    let config = SweepConfig {
        max_n: max_n.unwrap_or(suite.default_max_n()),
        jobs,
        seed,
        samples,
    };
    let mut report = run_suite(suite, &config)?;
    let elapsed = report.elapsed_ms;
    if !timing {
        report.elapsed_ms = None;
    }
    Ok(Outcome {
        code: if report.passed { PASS } else { FAIL },
        stdout: render_report(&report, format),
        stderr: vec![format!("elapsed_ms: {}", elapsed.unwrap_or(0))],
    })
}

pub fn render_report(report: &SweepReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("json");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = format!("suite: {}\n", report.suite);
            out += &format!(
                "config: max_n={} seed={}",
                report.config.max_n, report.config.seed
            );
            if let Some(samples) = report.config.samples {
                out += &format!(" samples={samples}");
            }
            out += "\ncounts:\n";
            for (k, v) in &report.counts {
                out += &format!("  {k}: {v}\n");
            }
            out += &format!("counterexamples: {}\n", report.counterexamples.len());
            for c in &report.counterexamples {
                out += &format!("  {} -- {}\n", c.instance, c.detail);
            }
            if let Some(ms) = report.elapsed_ms {
                out += &format!("elapsed_ms: {ms}\n");
            }
            out += &format!("result: {}\n", if report.passed { "PASS" } else { "FAIL" });
            out
        }
    }
}
