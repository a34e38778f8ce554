use std::collections::BTreeMap;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use linquas::catalog::{self, IdentityEntry, TableRow};
use linquas::engine::{self, CheckOptions, CheckOutcome, CrosscheckReport, Verdict, Witness, DEFAULT_CAP};
use linquas::{LinearGroupoid, Triple};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "linquas", version, about = "Identities of linear groupoids over Z_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct RunArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps (default: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Maximum environments per brute-force check; overrides LINQUAS_CAP.
    #[arg(long, global = true)]
    cap: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Check one identity in one groupoid.
    Check {
        #[command(flatten)]
        g: GroupoidArgs,
        /// Identity text, e.g. "(x*y)*z = x*(y*z)".
        #[arg(long, conflicts_with = "entry", required_unless_present = "entry")]
        ident: Option<String>,
        /// Catalog id.
        #[arg(long)]
        entry: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
        method: MethodArg,
    },
    /// Verdict for every catalog identity.
    Classify {
        #[command(flatten)]
        g: GroupoidArgs,
    },
    /// Compare table conditions with the brute-force oracle.
    Crosscheck {
        /// Comma-separated catalog ids, or `all`.
        #[arg(long, default_value = "all")]
        entries: String,
        /// Restrict to these row labels (e.g. 14.3,14.4).
        #[arg(long, value_delimiter = ',')]
        rows: Vec<String>,
        /// Moduli, `lo..hi` inclusive or a single value.
        #[arg(long, value_parser = parse_range, default_value = "2..12")]
        n: RangeInclusive<u64>,
    },
    /// Search for triples satisfying a row's identity inside its domain.
    Search {
        #[arg(long)]
        entry: String,
        /// Row label such as 14.1.
        #[arg(long)]
        row: String,
        #[arg(long, value_parser = parse_range, default_value = "2..12")]
        n: RangeInclusive<u64>,
        #[arg(long, default_value_t = 1)]
        limit: usize,
    },
    /// Cayley table.
    Table {
        #[command(flatten)]
        g: GroupoidArgs,
    },
    /// Machine-checked table with per-cell status and the example ledger.
    Report {
        /// Moduli for the condition crosscheck of every row.
        #[arg(long, value_parser = parse_range, default_value = "2..8")]
        check_n: RangeInclusive<u64>,
        /// Moduli searched for open cells.
        #[arg(long, value_parser = parse_range, default_value = "2..12")]
        search_n: RangeInclusive<u64>,
    },
    /// Audit every concrete example against its claimed properties.
    ExamplesVerify,
}

#[derive(Args)]
#[command(next_help_heading = "Groupoid", allow_negative_numbers = true)]
struct GroupoidArgs {
    #[arg(long)]
    n: u64,
    /// Coefficients may be negative; they are reduced mod n.
    #[arg(long, allow_negative_numbers = true)]
    a: i128,
    #[arg(long, allow_negative_numbers = true)]
    b: i128,
    #[arg(long, allow_negative_numbers = true)]
    c: i128,
}

impl GroupoidArgs {
    fn build(&self) -> Result<LinearGroupoid, Failure> {
        LinearGroupoid::from_signed(self.n, self.a, self.b, self.c).map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Brute,
    Symbolic,
    /// Symbolic, falling back to brute force when not applicable.
    Auto,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let lo: u64 = lo.trim().parse().map_err(|_| format!("bad range start in `{s}`"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("bad range end in `{s}`"))?;
    if lo < 2 || hi < lo {
        return Err(format!("range `{s}` must satisfy 2 <= lo <= hi"));
    }
    Ok(lo..=hi)
}

enum Failure {
    Usage(String),
    Data(anyhow::Error),
    Io(anyhow::Error),
}

impl From<engine::EngineError> for Failure {
    fn from(e: engine::EngineError) -> Self {
        match e {
            engine::EngineError::UnknownEntry(_) | engine::EngineError::UnknownRow { .. } => Failure::Usage(e.to_string()),
            e => Failure::Data(e.into()),
        }
    }
}

/// Rendered command output plus the process exit code.
struct Output {
    text: String,
    code: u8,
}

struct Doc {
    command: &'static str,
    input: Value,
    results: Vec<Value>,
}

impl Doc {
    fn json(&self) -> String {
        let v = json!({
            "tool_version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "input": self.input,
            "results": self.results,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn triple_json(t: Triple) -> Value {
    to_value(t)
}

fn cap_from_env(flag: Option<u64>) -> Result<u64, Failure> {
    let cap = match flag {
        Some(c) => c,
        None => match std::env::var("LINQUAS_CAP") {
            Ok(s) => s.trim().parse().map_err(|_| Failure::Usage(format!("LINQUAS_CAP `{s}` is not an integer")))?,
            Err(_) => DEFAULT_CAP,
        },
    };
    if cap < 1000 {
        return Err(Failure::Usage(format!("cap {cap} is below the minimum of 1000")));
    }
    Ok(cap)
}

fn bindings_text(o: &CheckOutcome) -> String {
    o.counterexample
        .as_ref()
        .map(|b| b.iter().map(|b| format!("{}={}", b.var, b.value)).collect::<Vec<_>>().join(" "))
        .unwrap_or_default()
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Holds => 0,
        Verdict::Fails => 1,
        Verdict::NotApplicable => 2,
    }
}

fn cmd_check(
    g: &LinearGroupoid,
    ident: Option<&str>,
    entry: Option<&str>,
    method: MethodArg,
    opts: &CheckOptions,
    format: Format,
) -> Result<Output, Failure> {
    let identity = match (entry, ident) {
        (Some(id), _) => {
            let e = engine::lookup(id)?;
            e.identity.clone().ok_or_else(|| Failure::Usage(format!("entry `{id}` has no defining identity")))?
        }
        (None, Some(text)) => linquas::parse(text).map_err(|e| Failure::Usage(e.to_string()))?,
        (None, None) => unreachable!("clap requires one"),
    };
    let symbolic = || engine::holds_symbolic(g, &identity);
    let outcome = match method {
        MethodArg::Brute => engine::holds_bruteforce(g, &identity, opts)?,
        MethodArg::Symbolic => symbolic(),
        MethodArg::Auto => match symbolic() {
            s if s.verdict == Verdict::NotApplicable => engine::holds_bruteforce(g, &identity, opts)?,
            s => s,
        },
    };
    let code = verdict_code(outcome.verdict);
    let text = match format {
        Format::Json => Doc {
            command: "check",
            input: json!({
                "groupoid": triple_json(g.triple()),
                "identity": identity.canonical(),
                "entry": entry,
            }),
            results: vec![to_value(&outcome)],
        }
        .json(),
        Format::Csv => csv_text(
            &["verdict", "method", "counterexample", "na_reason"],
            [vec![
                outcome.verdict.to_string(),
                to_value(outcome.method).as_str().unwrap_or_default().to_string(),
                bindings_text(&outcome),
                outcome.na_reason.clone().unwrap_or_default(),
            ]],
        ),
        Format::Pretty => {
            let mut s = format!("{g}\n{}\n{}", identity.canonical(), outcome.verdict);
            if outcome.counterexample.is_some() {
                s.push_str(&format!(" at {}", bindings_text(&outcome)));
            }
            if let Some(r) = &outcome.na_reason {
                s.push_str(&format!(" ({r})"));
            }
            s.push('\n');
            s
        }
    };
    Ok(Output { text, code })
}

fn cmd_classify(g: &LinearGroupoid, opts: &CheckOptions, format: Format) -> Result<Output, Failure> {
    let verdicts = engine::classify(g, opts)?;
    let text = match format {
        Format::Json => {
            let map: BTreeMap<&str, String> = verdicts.iter().map(|(id, o)| (*id, o.verdict.to_string())).collect();
            let details: Vec<Value> = verdicts
                .iter()
                .map(|(id, o)| {
                    let mut v = to_value(o);
                    v["entry"] = json!(id);
                    v
                })
                .collect();
            Doc {
                command: "classify",
                input: json!({ "groupoid": triple_json(g.triple()) }),
                results: vec![json!({
                    "groupoid": triple_json(g.triple()),
                    "quasigroup": g.is_quasigroup(),
                    "verdicts": map,
                    "details": details,
                })],
            }
            .json()
        }
        Format::Csv => csv_text(
            &["entry", "verdict", "method"],
            verdicts.iter().map(|(id, o)| {
                vec![id.to_string(), o.verdict.to_string(), to_value(o.method).as_str().unwrap_or_default().to_string()]
            }),
        ),
        Format::Pretty => {
            let w = verdicts.iter().map(|(id, _)| id.len()).max().unwrap_or(0);
            let mut s = format!("{g}\n");
            for (id, o) in &verdicts {
                s.push_str(&format!("{id:<w$}  {}\n", o.verdict));
            }
            s
        }
    };
    Ok(Output { text, code: 0 })
}

fn select_rows(entries: &str, rows: &[String]) -> Result<Vec<(&'static IdentityEntry, &'static TableRow)>, Failure> {
    let wanted: Option<Vec<&str>> = (entries != "all").then(|| entries.split(',').map(str::trim).collect());
    if let Some(ids) = &wanted {
        for id in ids {
            engine::lookup(id)?;
        }
    }
    let selected: Vec<_> = catalog::table_rows()
        .filter(|(e, _)| e.identity.is_some())
        .filter(|(e, _)| wanted.as_ref().is_none_or(|ids| ids.contains(&e.id)))
        .filter(|(_, r)| rows.is_empty() || rows.contains(&r.label()))
        .collect();
    if selected.is_empty() {
        return Err(Failure::Usage("no table rows match the selection".into()));
    }
    Ok(selected)
}

fn cmd_crosscheck(
    entries: &str,
    rows: &[String],
    n: &RangeInclusive<u64>,
    opts: &CheckOptions,
    format: Format,
) -> Result<Output, Failure> {
    let moduli: Vec<u64> = n.clone().collect();
    let reports: Vec<CrosscheckReport> = select_rows(entries, rows)?
        .into_iter()
        .map(|(e, r)| engine::crosscheck(e, r, &moduli, opts))
        .collect::<Result<_, _>>()?;
    let text = match format {
        Format::Json => Doc {
            command: "crosscheck",
            input: json!({ "entries": entries, "rows": rows, "n": [n.start(), n.end()] }),
            results: reports.iter().map(to_value).collect(),
        }
        .json(),
        Format::Csv => csv_text(
            &["entry", "row", "admitted", "not_applicable", "agreements", "mismatches"],
            reports.iter().map(|r| {
                vec![
                    r.entry.clone(),
                    r.row.clone(),
                    r.admitted.to_string(),
                    r.not_applicable.to_string(),
                    r.agreements.to_string(),
                    r.mismatches.len().to_string(),
                ]
            }),
        ),
        Format::Pretty => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!(
                    "{:<6} {:<24} admitted {:>6}  n/a {:>6}  mismatches {}\n",
                    r.row,
                    r.entry,
                    r.admitted,
                    r.not_applicable,
                    r.mismatches.len()
                ));
                for m in r.mismatches.iter().take(5) {
                    s.push_str(&format!("    {} condition {} oracle {}\n", m.triple, m.condition, m.oracle));
                }
                if r.mismatches.len() > 5 {
                    s.push_str(&format!("    ... {} more\n", r.mismatches.len() - 5));
                }
            }
            let total: usize = reports.iter().map(|r| r.mismatches.len()).sum();
            s.push_str(&format!("{} rows, {total} mismatches\n", reports.len()));
            s
        }
    };
    Ok(Output { text, code: 0 })
}

fn cmd_search(
    entry: &str,
    row: &str,
    n: &RangeInclusive<u64>,
    limit: usize,
    opts: &CheckOptions,
    format: Format,
) -> Result<Output, Failure> {
    let (e, r) = engine::lookup_row(entry, row)?;
    let moduli: Vec<u64> = n.clone().collect();
    let found: Vec<Witness> = engine::search_witnesses(e, r, &moduli, limit, opts)?;
    let text = match format {
        Format::Json => Doc {
            command: "search",
            input: json!({ "entry": entry, "row": row, "n": [n.start(), n.end()], "limit": limit }),
            results: found.iter().map(to_value).collect(),
        }
        .json(),
        Format::Csv => csv_text(
            &["n", "a", "b", "c", "structure_kind", "confirmed_by"],
            found.iter().map(|w| {
                let t = w.triple;
                vec![
                    t.n.to_string(),
                    t.a.to_string(),
                    t.b.to_string(),
                    t.c.to_string(),
                    to_value(w.structure_kind).as_str().unwrap_or_default().to_string(),
                    to_value(w.confirmed_by).as_str().unwrap_or_default().to_string(),
                ]
            }),
        ),
        Format::Pretty => {
            if found.is_empty() {
                format!("no witness for {entry} row {row} with n in {}..{}\n", n.start(), n.end())
            } else {
                found
                    .iter()
                    .map(|w| format!("{} {}\n", w.triple, to_value(w.structure_kind).as_str().unwrap_or_default()))
                    .collect()
            }
        }
    };
    Ok(Output { text, code: 0 })
}

fn cmd_table(g: &LinearGroupoid, format: Format) -> Result<Output, Failure> {
    let t = g.cayley_table();
    let latin = t.is_latin_square();
    let text = match format {
        Format::Json => Doc {
            command: "table",
            input: json!({ "groupoid": triple_json(g.triple()) }),
            results: vec![json!({ "groupoid": triple_json(g.triple()), "latin_square": latin, "table": t.to_nested() })],
        }
        .json(),
        Format::Csv => t.to_csv(),
        Format::Pretty => format!("{g}\n{}latin square: {latin}\n", t.to_pretty()),
    };
    Ok(Output { text, code: 0 })
}

fn cell_text(c: &engine::CellStatus) -> String {
    match c {
        engine::CellStatus::Confirmed => "confirmed".into(),
        engine::CellStatus::Discrepancy => "discrepancy".into(),
        engine::CellStatus::Unresolved => "unresolved".into(),
        engine::CellStatus::WitnessFound(t) => format!("witness {t}"),
    }
}

fn example_text(e: &catalog::ExampleStatus) -> String {
    match e {
        catalog::ExampleStatus::Given(t) => t.to_string(),
        catalog::ExampleStatus::QuestionMark => "?".into(),
        catalog::ExampleStatus::Bang => "!".into(),
        catalog::ExampleStatus::NotListed => "-".into(),
        catalog::ExampleStatus::Generic => "generic".into(),
    }
}

fn cmd_report(
    check_n: &RangeInclusive<u64>,
    search_n: &RangeInclusive<u64>,
    opts: &CheckOptions,
    format: Format,
) -> Result<Output, Failure> {
    let check: Vec<u64> = check_n.clone().collect();
    let search: Vec<u64> = search_n.clone().collect();
    let report = engine::table_report(&check, &search, opts)?;
    let text = match format {
        Format::Json => Doc {
            command: "report",
            input: json!({ "check_n": [check_n.start(), check_n.end()], "search_n": [search_n.start(), search_n.end()] }),
            results: vec![json!({ "rows": to_value(&report.rows), "ledger": to_value(&report.ledger) })],
        }
        .json(),
        Format::Csv => csv_text(
            &["row", "entry", "structure", "modulus", "hypothesis", "condition", "example", "cell", "mismatches"],
            report.rows.iter().map(|r| {
                vec![
                    r.label.clone(),
                    r.entry.clone(),
                    to_value(r.structure_kind).as_str().unwrap_or_default().to_string(),
                    to_value(r.modulus_kind).as_str().unwrap_or_default().to_string(),
                    r.hypothesis.clone(),
                    r.condition.clone(),
                    example_text(&r.example),
                    cell_text(&r.cell),
                    r.mismatches.map(|m| m.to_string()).unwrap_or_default(),
                ]
            }),
        ),
        Format::Pretty => {
            let mut s = String::new();
            for r in &report.rows {
                s.push_str(&format!(
                    "{:<6} {:<26} {:<10} {:<4} {:<28} {:<14} {}{}\n",
                    r.label,
                    r.entry,
                    to_value(r.structure_kind).as_str().unwrap_or_default(),
                    to_value(r.modulus_kind).as_str().unwrap_or_default(),
                    r.condition,
                    example_text(&r.example),
                    cell_text(&r.cell),
                    r.mismatches.filter(|&m| m > 0).map(|m| format!(" ({m} mismatches)")).unwrap_or_default(),
                ));
            }
            s.push_str(&format!("\n{} ledger findings\n", report.ledger.len()));
            for f in &report.ledger {
                s.push_str(&format!("  {} {} {:?}: expected {}, observed {}\n", f.source, f.triple, f.aspect, f.expected, f.observed));
            }
            s
        }
    };
    Ok(Output { text, code: 0 })
}

fn cmd_examples_verify(opts: &CheckOptions, format: Format) -> Result<Output, Failure> {
    let findings = engine::verify_printed_examples(opts)?.sorted();
    let text = match format {
        Format::Json => Doc { command: "examples-verify", input: json!({}), results: findings.iter().map(to_value).collect() }.json(),
        Format::Csv => csv_text(
            &["source", "n", "a", "b", "c", "aspect", "expected", "observed"],
            findings.iter().map(|f| {
                let t = f.triple;
                vec![
                    f.source.clone(),
                    t.n.to_string(),
                    t.a.to_string(),
                    t.b.to_string(),
                    t.c.to_string(),
                    to_value(f.aspect).as_str().unwrap_or_default().to_string(),
                    f.expected.clone(),
                    f.observed.clone(),
                ]
            }),
        ),
        Format::Pretty => {
            let mut s: String = findings
                .iter()
                .map(|f| format!("{} {} {:?}: expected {}, observed {}\n", f.source, f.triple, f.aspect, f.expected, f.observed))
                .collect();
            s.push_str(&format!("{} findings\n", findings.len()));
            s
        }
    };
    Ok(Output { text, code: 0 })
}

fn dispatch(cli: &Cli, opts: &CheckOptions) -> Result<Output, Failure> {
    let format = cli.run.format;
    match &cli.command {
        Command::Check { g, ident, entry, method } => {
            cmd_check(&g.build()?, ident.as_deref(), entry.as_deref(), *method, opts, format)
        }
        Command::Classify { g } => cmd_classify(&g.build()?, opts, format),
        Command::Crosscheck { entries, rows, n } => cmd_crosscheck(entries, rows, n, opts, format),
        Command::Search { entry, row, n, limit } => cmd_search(entry, row, n, *limit, opts, format),
        Command::Table { g } => cmd_table(&g.build()?, format),
        Command::Report { check_n, search_n } => cmd_report(check_n, search_n, opts, format),
        Command::ExamplesVerify => cmd_examples_verify(opts, format),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cap = cap_from_env(cli.run.cap)?;
    let opts = CheckOptions { cap };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.run.workers {
        if w == 0 {
            return Err(Failure::Usage("--workers must be at least 1".into()));
        }
        pool = pool.num_threads(w);
    }
    let pool = pool.build().map_err(|e| Failure::Io(e.into()))?;
    let output = pool.install(|| dispatch(&cli, &opts))?;
    emit(&cli.run.out, &output.text).map_err(Failure::Io)?;
    Ok(output.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Data(e) => (EXIT_DATA, format!("{e:#}")),
                Failure::Io(e) => (EXIT_IO, format!("{e:#}")),
            };
            eprintln!("linquas: {msg}");
            ExitCode::from(code)
        }
    }
}
