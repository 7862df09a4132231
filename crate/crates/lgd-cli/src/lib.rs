//! Command-line front end: parses a request, routes it to the library, and
//! renders the result as canonical JSON (sorted keys, schema-tagged, no
//! timestamps in the body) or as a plain-text table.
//!
//! Exit codes: 0 on success or all-pass, 1 when a verification sweep
//! reports a failed claim, 2 on usage or parameter errors.

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Value};

use lgd_core::cm::{
    class_number, default_scan_bound, degree_table, gonality_threshold, min_degree,
};
use lgd_core::cohomology::{self, GModule};
use lgd_core::matgroup::{cartan_normalizer, closure, CartanParams, Mat2};
use lgd_core::verify::{
    smallest_nonsquare_unit, verify_closed_forms, verify_inert_lemma, verify_ramified_lemma,
    verify_reduce_to_cartan, verify_split_vanishing, ClosedFormCase, VerificationReport,
};

pub const SCHEMA: &str = "lgd/1";

const USAGE: &str = "\
usage: lgd <subcommand> [flags]

subcommands:
  h1star                      locally trivial H^1 of a subgroup of GL2(Z/p^n)
  verify <lemma>              lemma: split | inert | ramified | reduce-to-c | closed-forms
  min-degree                  minimal CM counterexample degree d(p) for one prime
  table                       d(p) table for all odd primes up to --p-max
  class-number                class number of an imaginary quadratic discriminant
  gonality                    gonality threshold 7(p^3-p)/1600 vs p-1

flags:
  --p <odd prime>             prime parameter
  --n <level>                 level n of Z/p^n (default depends on subcommand)
  --delta <int>               Cartan parameter delta
  --gens a;b;c;d[,...]        explicit generators instead of the full normalizer
  --budget <int>              generator budget for subgroup sweeps (0 = witnesses only)
  --scan-bound <int>          search radius for inert discriminants
  --p-max <int>               largest prime for `table` (default 23)
  --disc <int>                discriminant for `class-number`
  --format json|text          output format (default json)
  --no-meta                   omit the timing/timestamp envelope

environment:
  LGD_THREADS                 worker cap for parallel sweeps

exit codes: 0 success / all claims hold; 1 a verified claim failed; 2 usage error
";

/// Parsed command line: a subcommand plus validated flags.
#[derive(Debug, Clone, Default)]
pub struct CommandRequest {
    pub subcommand: String,
    pub lemma: Option<String>,
    pub p: Option<u64>,
    pub n: Option<u32>,
    pub delta: Option<i64>,
    pub gens: Option<Vec<[i64; 4]>>,
    pub budget: Option<usize>,
    pub scan_bound: Option<u64>,
    pub p_max: Option<u64>,
    pub disc: Option<i64>,
    pub format: Format,
    pub no_meta: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Rendered output plus the process exit code.
#[derive(Debug, Clone)]
pub struct CommandResult {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

fn usage_error(msg: impl Into<String>) -> CommandResult {
    CommandResult {
        stdout: String::new(),
        stderr: format!("error: {}\n\n{USAGE}", msg.into()),
        exit_code: 2,
    }
}

/// Entry point shared by the binary and the tests.
pub fn run(args: &[String]) -> CommandResult {
    let started = Instant::now();
    let request = match parse(args) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let format = request.format;
    let no_meta = request.no_meta;
    match dispatch(&request) {
        Ok(outcome) => {
            let stdout = match format {
                Format::Json => render_json(&outcome, no_meta, started),
                Format::Text => outcome.text.clone(),
            };
            CommandResult {
                stdout,
                stderr: String::new(),
                exit_code: if outcome.failed { 1 } else { 0 },
            }
        }
        Err(e) => usage_error(e),
    }
}

/// Body (as JSON value plus text rendering) and pass/fail state of one
/// dispatched command.
pub struct Outcome {
    pub body: BTreeMap<String, Value>,
    pub text: String,
    pub failed: bool,
}

fn parse(args: &[String]) -> Result<CommandRequest, String> {
    let mut req = CommandRequest::default();
    let mut it = args.iter().peekable();
    let Some(sub) = it.next() else {
        return Err("missing subcommand".to_string());
    };
    req.subcommand = sub.clone();
    if req.subcommand == "verify" {
        let Some(lemma) = it.next() else {
            return Err(
                "verify needs a lemma: split | inert | ramified | reduce-to-c | closed-forms"
                    .to_string(),
            );
        };
        req.lemma = Some(lemma.clone());
    }
    while let Some(flag) = it.next() {
        let (name, inline) = match flag.split_once('=') {
            Some((n, v)) => (n, Some(v.to_string())),
            None => (flag.as_str(), None),
        };
        let value =
            |it: &mut std::iter::Peekable<std::slice::Iter<String>>| -> Result<String, String> {
                match inline.clone() {
                    Some(v) => Ok(v),
                    None => it
                        .next()
                        .cloned()
                        .ok_or_else(|| format!("flag {name} expects a value")),
                }
            };
        match name {
            "--p" => {
                req.p = Some(
                    value(&mut it)?
                        .parse()
                        .map_err(|_| "--p expects a positive integer")?,
                )
            }
            "--n" => {
                req.n = Some(
                    value(&mut it)?
                        .parse()
                        .map_err(|_| "--n expects a positive integer")?,
                )
            }
            "--delta" => {
                req.delta = Some(
                    value(&mut it)?
                        .parse()
                        .map_err(|_| "--delta expects an integer")?,
                )
            }
            "--budget" => {
                req.budget = Some(
                    value(&mut it)?
                        .parse()
                        .map_err(|_| "--budget expects a nonnegative integer")?,
                )
            }
            "--scan-bound" => {
                req.scan_bound = Some(
                    value(&mut it)?
                        .parse()
                        .map_err(|_| "--scan-bound expects a positive integer")?,
                )
            }
            "--p-max" => {
                req.p_max = Some(
                    value(&mut it)?
                        .parse()
                        .map_err(|_| "--p-max expects a positive integer")?,
                )
            }
            "--disc" => {
                req.disc = Some(
                    value(&mut it)?
                        .parse()
                        .map_err(|_| "--disc expects an integer")?,
                )
            }
            "--gens" => req.gens = Some(parse_gens(&value(&mut it)?)?),
            "--format" => {
                req.format = match value(&mut it)?.as_str() {
                    "json" => Format::Json,
                    "text" => Format::Text,
                    other => {
                        return Err(format!("unknown format {other:?} (expected json or text)"))
                    }
                }
            }
            "--no-meta" => req.no_meta = true,
            other => return Err(format!("unknown flag {other:?}")),
        }
    }
    Ok(req)
}

fn parse_gens(raw: &str) -> Result<Vec<[i64; 4]>, String> {
    let mut out = Vec::new();
    for part in raw.split(',') {
        let entries: Vec<i64> = part
            .split(';')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| format!("bad matrix entry {x:?}"))
            })
            .collect::<Result<_, _>>()?;
        if entries.len() != 4 {
            return Err(format!("matrix {part:?} must have 4 entries a;b;c;d"));
        }
        out.push([entries[0], entries[1], entries[2], entries[3]]);
    }
    if out.is_empty() {
        return Err("--gens expects at least one matrix".to_string());
    }
    Ok(out)
}

fn require_p(req: &CommandRequest) -> Result<u64, String> {
    req.p.ok_or_else(|| "--p is required".to_string())
}

fn dispatch(req: &CommandRequest) -> Result<Outcome, String> {
    match req.subcommand.as_str() {
        "h1star" => run_h1star(req),
        "verify" => run_verify(req),
        "min-degree" => run_min_degree(req),
        "table" => run_table(req),
        "class-number" => run_class_number(req),
        "gonality" => run_gonality(req),
        other => Err(format!("unknown subcommand {other:?}")),
    }
}

fn run_h1star(req: &CommandRequest) -> Result<Outcome, String> {
    let p = require_p(req)?;
    let n = req.n.unwrap_or(1);
    if p < 3 || p % 2 == 0 {
        return Err(format!("--p {p} must be an odd prime"));
    }
    let delta = req
        .delta
        .unwrap_or_else(|| smallest_nonsquare_unit(p) as i64);
    let params = CartanParams::new(p, n, delta).map_err(|e| e.to_string())?;
    let modulus = params.modulus();
    let group = match &req.gens {
        Some(gens) => {
            let mats: Vec<Mat2> = gens.iter().map(|e| Mat2::new(modulus, *e)).collect();
            closure(&mats, modulus).map_err(|e| e.to_string())?
        }
        None => cartan_normalizer(&params).map_err(|e| e.to_string())?,
    };
    let module = GModule::natural(modulus);
    let h1 = cohomology::h1(&group, &module);
    let star = cohomology::h1_star(&group, &module);
    let z1 = cohomology::cocycle_space(&group, &module);
    let b1 = cohomology::coboundary_space(&group, &module);
    let lt = cohomology::locally_trivial_cocycles(&group, &module);

    let mut body = BTreeMap::new();
    body.insert("p".into(), json!(p));
    body.insert("n".into(), json!(n));
    body.insert("delta".into(), json!(params.delta().value()));
    body.insert("group_order".into(), json!(group.order()));
    body.insert("h1_divisors".into(), json!(h1.divisors));
    body.insert("h1_star_divisors".into(), json!(star.divisors));
    body.insert("is_trivial".into(), json!(star.is_trivial));
    body.insert("z1_size_log_p".into(), json!(z1.size_exponent()));
    body.insert("b1_size_log_p".into(), json!(b1.size_exponent()));
    body.insert("lt_size_log_p".into(), json!(lt.size_exponent()));

    let text = format!(
        "group of order {} in GL2(Z/{}^{})\nH^1 divisors:   {:?}\nH^1_* divisors: {:?} ({})\nlog_p sizes: |Z^1| = {}, |B^1| = {}, |LT| = {}\n",
        group.order(),
        p,
        n,
        h1.divisors,
        star.divisors,
        if star.is_trivial { "trivial" } else { "nontrivial" },
        z1.size_exponent(),
        b1.size_exponent(),
        lt.size_exponent(),
    );
    Ok(Outcome {
        body,
        text,
        failed: false,
    })
}

fn run_verify(req: &CommandRequest) -> Result<Outcome, String> {
    let p = require_p(req)?;
    let budget = req.budget.unwrap_or(3);
    let lemma = req.lemma.as_deref().unwrap_or_default();
    let reports: Vec<VerificationReport> = match lemma {
        "split" => {
            vec![verify_split_vanishing(p, req.n.unwrap_or(2), budget).map_err(|e| e.to_string())?]
        }
        "inert" => vec![verify_inert_lemma(p, budget).map_err(|e| e.to_string())?],
        "ramified" => vec![verify_ramified_lemma(p, budget).map_err(|e| e.to_string())?],
        "reduce-to-c" => {
            let delta = req
                .delta
                .unwrap_or_else(|| smallest_nonsquare_unit(p) as i64);
            vec![
                verify_reduce_to_cartan(p, req.n.unwrap_or(2), delta, budget)
                    .map_err(|e| e.to_string())?,
            ]
        }
        "closed-forms" => match req.delta {
            Some(d) => {
                let case = infer_closed_form_case(p, d)?;
                vec![verify_closed_forms(p, Some(d), case).map_err(|e| e.to_string())?]
            }
            None => vec![
                verify_closed_forms(p, None, ClosedFormCase::Inert).map_err(|e| e.to_string())?,
                verify_closed_forms(p, None, ClosedFormCase::Ramified)
                    .map_err(|e| e.to_string())?,
            ],
        },
        other => return Err(format!("unknown lemma {other:?}")),
    };

    let failed = reports.iter().any(|r| !r.passed());
    let mut body = BTreeMap::new();
    body.insert(
        "reports".into(),
        serde_json::to_value(&reports).expect("reports serialize"),
    );
    body.insert("all_passed".into(), json!(!failed));

    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!(
            "[{}] {} p={} n={} delta={} budget={} subgroups_checked={} failures={}\n",
            if r.passed() { "PASS" } else { "FAIL" },
            r.lemma,
            r.p,
            r.n,
            r.delta,
            r.budget,
            r.subgroups_checked,
            r.failures.len(),
        ));
        for w in &r.witness_checks {
            text.push_str(&format!(
                "  {} {}\n",
                if w.pass { "ok  " } else { "FAIL" },
                w.claim
            ));
        }
        for note in &r.notes {
            text.push_str(&format!("  note: {note}\n"));
        }
        for f in &r.failures {
            text.push_str(&format!("  failure: {f}\n"));
        }
    }
    Ok(Outcome { body, text, failed })
}

fn infer_closed_form_case(p: u64, delta: i64) -> Result<ClosedFormCase, String> {
    let params = CartanParams::new(p, 1, delta).map_err(|e| e.to_string())?;
    match params.delta_class() {
        lgd_core::matgroup::DeltaClass::NonsquareUnit => Ok(ClosedFormCase::Inert),
        lgd_core::matgroup::DeltaClass::MultipleOfP => Ok(ClosedFormCase::Ramified),
        lgd_core::matgroup::DeltaClass::SquareUnit => Err(format!(
            "delta = {delta} is a square unit mod {p}; no closed-form family applies"
        )),
    }
}

const TABLE_CAVEAT: &str = "minimum taken over the inert and ramified sharp families; \
orders with p dividing the conductor are excluded (no construction attains their bound)";

fn run_min_degree(req: &CommandRequest) -> Result<Outcome, String> {
    let p = require_p(req)?;
    let scan = req.scan_bound.unwrap_or_else(|| default_scan_bound(p));
    let witness = min_degree(p, scan).map_err(|e| e.to_string())?;
    let mut body = match serde_json::to_value(&witness).expect("witness serializes") {
        Value::Object(map) => map.into_iter().collect::<BTreeMap<_, _>>(),
        _ => unreachable!("witness is a struct"),
    };
    body.insert("scan_bound".into(), json!(scan));
    body.insert("caveat".into(), json!(TABLE_CAVEAT));
    let text = format!(
        "p={}: d={} via disc={} f={} case={} h={} u={} bound={}\n",
        witness.p,
        witness.degree,
        witness.delta_k,
        witness.f,
        witness.case.label(),
        witness.class_number,
        witness.u,
        witness.bound,
    );
    Ok(Outcome {
        body,
        text,
        failed: false,
    })
}

fn run_table(req: &CommandRequest) -> Result<Outcome, String> {
    let p_max = req.p_max.unwrap_or(23);
    let rows = degree_table(p_max, req.scan_bound).map_err(|e| e.to_string())?;
    let mut body = BTreeMap::new();
    body.insert("p_max".into(), json!(p_max));
    body.insert(
        "rows".into(),
        serde_json::to_value(&rows).expect("rows serialize"),
    );
    body.insert("caveat".into(), json!(TABLE_CAVEAT));

    let mut text = String::from("p     d     disc    f  case      h   u\n");
    for w in &rows {
        text.push_str(&format!(
            "{:<5} {:<5} {:<7} {:<2} {:<9} {:<3} {}\n",
            w.p,
            w.degree,
            w.delta_k,
            w.f,
            w.case.label(),
            w.class_number,
            w.u,
        ));
    }
    Ok(Outcome {
        body,
        text,
        failed: false,
    })
}

fn run_class_number(req: &CommandRequest) -> Result<Outcome, String> {
    let disc = req.disc.ok_or_else(|| "--disc is required".to_string())?;
    let h = class_number(disc).map_err(|e| e.to_string())?;
    let mut body = BTreeMap::new();
    body.insert("disc".into(), json!(disc));
    body.insert("h".into(), json!(h));
    Ok(Outcome {
        body,
        text: format!("h({disc}) = {h}\n"),
        failed: false,
    })
}

fn run_gonality(req: &CommandRequest) -> Result<Outcome, String> {
    let p = require_p(req)?;
    let g = gonality_threshold(p);
    let mut body = match serde_json::to_value(g).expect("gonality check serializes") {
        Value::Object(map) => map.into_iter().collect::<BTreeMap<_, _>>(),
        _ => unreachable!(),
    };
    body.insert("value".into(), json!(g.value()));
    let text = format!(
        "p={}: 7(p^3 - p)/1600 = {:.3} {} p - 1 = {} ({})\n",
        p,
        g.value(),
        if g.passes { ">=" } else { "<" },
        p - 1,
        if g.passes { "passes" } else { "fails" },
    );
    Ok(Outcome {
        body,
        text,
        failed: false,
    })
}

fn render_json(outcome: &Outcome, no_meta: bool, started: Instant) -> String {
    let mut root = BTreeMap::new();
    root.insert("schema".to_string(), json!(SCHEMA));
    for (k, v) in &outcome.body {
        root.insert(k.clone(), v.clone());
    }
    if !no_meta {
        let unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        root.insert(
            "meta".to_string(),
            json!({
                "generated_unix": unix,
                "elapsed_ms": started.elapsed().as_millis() as u64,
            }),
        );
    }
    let value = Value::Object(root.into_iter().collect());
    let mut s = serde_json::to_string_pretty(&value).expect("JSON output serializes");
    s.push('\n');
    s
}

/// Exit-code mapping used by `run`, separated out for direct testing.
pub fn exit_code_for_reports(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(|r| r.passed()) {
        0
    } else {
        1
    }
}
