//! Command-line front end for `roughlim-core`.
//!
//! Exit codes: 0 success, 1 axiom violation or theorem failure, 2 usage or
//! input error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use roughlim_core::pmspace::{gen_example31, gen_max, gen_random, Family, SpaceFile};
use roughlim_core::seqlab::{rough_limit_set, roughness_reports};
use roughlim_core::theorems::{
    check_instance, search, summarize, Outcome, SearchConfig, SearchReport, TheoremId,
};
use roughlim_core::topo::{basis_balls, generate_topology, topology_cap};
use roughlim_core::{Error, PointSet, Rational, Sequence, Side, Space};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "roughlim",
    version,
    about = "Exact rough convergence in finite partial metric spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the partial metric axioms of a space.
    Validate(SpaceArgs),
    /// Minimal roughness degrees of a sequence toward each candidate.
    Analyze(AnalyzeArgs),
    /// Two-sided, right and left r-limit sets.
    Limitset(LimitsetArgs),
    /// Basis, open sets and closedness queries for the ball topology.
    Topology(TopologyArgs),
    /// Run every theorem checker on one instance.
    Theorems(TheoremsArgs),
    /// Seeded randomized counterexample search.
    Search(SearchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct SpaceArgs {
    /// JSON file, `example31:k1,k2,..`, `maxspace:v1,v2,..` or `random:seed,n,family`.
    #[arg(long)]
    pub space: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    /// Sequence by labels, e.g. `prefix=3;cycle=0,2`. Repeatable.
    #[arg(long = "seq")]
    pub seq: Vec<String>,
    /// Sequence as JSON `{"prefix": [..], "cycle": [..]}` over point indices. Repeatable.
    #[arg(long = "seq-file")]
    pub seq_file: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Comma-separated candidate labels; all points when omitted.
    #[arg(long)]
    pub candidates: Option<String>,
}

#[derive(Debug, Args)]
pub struct LimitsetArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Roughness degree as `p/q` or an integer.
    #[arg(long, value_parser = parse_rational)]
    pub r: Rational,
    /// Report only this side: two, right or left.
    #[arg(long, value_parser = parse_side)]
    pub side: Option<Side>,
}

#[derive(Debug, Args)]
pub struct TopologyArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Comma-separated labels to test for openness, closedness and closure. Repeatable.
    #[arg(long)]
    pub query: Vec<String>,
    /// List every open set.
    #[arg(long)]
    pub opens: bool,
}

#[derive(Debug, Args)]
pub struct TheoremsArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// First sequence is the subject; an optional second is the partner for the paired theorems.
    #[command(flatten)]
    pub seq: SeqArgs,
    #[arg(long, value_parser = parse_rational)]
    pub r: Rational,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, default_value_t = 6)]
    pub max_points: usize,
    #[arg(long, default_value_t = 4)]
    pub max_cycle: usize,
    /// Comma-separated families; all when omitted.
    #[arg(long, value_delimiter = ',', value_parser = parse_family)]
    pub families: Vec<Family>,
    /// Comma-separated roughness degrees.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
    pub r_grid: Vec<Rational>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse().map_err(|e| format!("{e}"))
}

fn parse_side(s: &str) -> Result<Side, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.trim().parse().map_err(|e: Error| e.to_string())
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Axioms(_) | Error::Internal(_) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

/// Parses a builtin generator spec, or reads a space file.
pub fn load_space(source: &str) -> CliResult<Space> {
    if let Some(rest) = source.strip_prefix("example31:") {
        let ks = split(rest)
            .map(|k| {
                k.parse::<u64>().map_err(|_| {
                    Failure::usage(format!("example31: {k:?} is not a positive integer"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(gen_example31(&ks)?);
    }
    if let Some(rest) = source.strip_prefix("maxspace:") {
        let values = split(rest)
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()
            .map_err(Failure::usage)?;
        return Ok(gen_max(&values)?);
    }
    if let Some(rest) = source.strip_prefix("random:") {
        let parts: Vec<&str> = split(rest).collect();
        let [seed, n, family] = parts[..] else {
            return Err(Failure::usage("random: expected `random:seed,n,family`"));
        };
        let seed = seed
            .parse()
            .map_err(|_| Failure::usage(format!("random: bad seed {seed:?}")))?;
        let n = n
            .parse()
            .map_err(|_| Failure::usage(format!("random: bad point count {n:?}")))?;
        let family = parse_family(family).map_err(Failure::usage)?;
        return Ok(gen_random(seed, n, family)?);
    }
    Ok(Space::try_from(read_space_file(source)?)?)
}

fn read_space_file(path: &str) -> CliResult<SpaceFile> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?;
    Ok(SpaceFile::from_json(&text)?)
}

fn split(list: &str) -> impl Iterator<Item = &str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn point(space: &Space, label: &str) -> CliResult<usize> {
    space.index_of(label).ok_or_else(|| {
        Failure::usage(format!(
            "unknown point label {label:?}; labels are {:?}",
            space.labels()
        ))
    })
}

fn points(space: &Space, list: &str) -> CliResult<Vec<usize>> {
    split(list).map(|l| point(space, l)).collect()
}

/// Parses `prefix=a,b;cycle=c,d` (either part order, prefix optional).
pub fn parse_seq_spec(space: &Space, spec: &str) -> CliResult<Sequence> {
    let mut prefix = Vec::new();
    let mut cycle = None;
    for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("sequence part {part:?} is not `key=labels`")))?;
        match key.trim() {
            "prefix" => prefix = points(space, value)?,
            "cycle" => cycle = Some(points(space, value)?),
            other => {
                return Err(Failure::usage(format!(
                    "unknown sequence key {other:?}; use prefix or cycle"
                )))
            }
        }
    }
    let cycle = cycle.ok_or_else(|| Failure::usage(format!("sequence {spec:?} has no cycle")))?;
    let seq = Sequence::new(prefix, cycle)?;
    Ok(seq)
}

fn sequences(space: &Space, args: &SeqArgs) -> CliResult<Vec<Sequence>> {
    let mut out = args
        .seq
        .iter()
        .map(|s| parse_seq_spec(space, s))
        .collect::<Result<Vec<_>, _>>()?;
    for path in &args.seq_file {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let seq: Sequence = serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("schema error in {}: {e}", path.display())))?;
        seq.check_in(space)?;
        out.push(seq);
    }
    if out.is_empty() {
        return Err(Failure::usage(
            "a sequence is required (--seq or --seq-file)",
        ));
    }
    Ok(out)
}

fn sorted_labels(space: &Space, set: &PointSet) -> Vec<String> {
    let mut labels: Vec<String> = set.iter().map(|&i| space.label(i).to_string()).collect();
    labels.sort();
    labels
}

fn braces(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(", "))
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(header.to_vec())];
    out.extend(
        rows.iter()
            .map(|r| line(r.iter().map(String::as_str).collect())),
    );
    out.join("\n") + "\n"
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values always serialize") + "\n"
}

struct Report {
    code: i32,
    text: String,
}

impl Report {
    fn ok(text: String) -> Self {
        Report {
            code: EXIT_OK,
            text,
        }
    }
}

fn validate(args: &SpaceArgs) -> CliResult<Report> {
    let is_builtin = ["example31:", "maxspace:", "random:"]
        .iter()
        .any(|p| args.space.starts_with(p));
    let file = if is_builtin {
        load_space(&args.space)?.to_file()
    } else {
        read_space_file(&args.space)?
    };
    let violations = match Space::try_from(file.clone()) {
        Ok(_) => Vec::new(),
        Err(Error::Axioms(v)) => v,
        Err(e) => return Err(e.into()),
    };
    let code = if violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    let text = match args.format {
        Format::Json => pretty(&json!({
            "valid": violations.is_empty(),
            "points": file.labels.len(),
            "violations": violations.iter().map(|v| json!({
                "axiom": v.axiom,
                "witness": v.witness,
                "labels": v.witness.iter().map(|&i| &file.labels[i]).collect::<Vec<_>>(),
                "lhs": v.lhs,
                "rhs": v.rhs,
            })).collect::<Vec<_>>(),
        })),
        Format::Text if violations.is_empty() => {
            format!(
                "valid partial metric space on {} points\n",
                file.labels.len()
            )
        }
        Format::Text => {
            let mut out = format!("{} axiom violation(s)\n", violations.len());
            for v in &violations {
                let labels: Vec<&str> =
                    v.witness.iter().map(|&i| file.labels[i].as_str()).collect();
                out += &format!(
                    "  {} at ({}): lhs {}, rhs {}\n",
                    v.axiom,
                    labels.join(", "),
                    v.lhs,
                    v.rhs
                );
            }
            out
        }
    };
    Ok(Report { code, text })
}

fn analyze(args: &AnalyzeArgs) -> CliResult<Report> {
    let space = load_space(&args.space.space)?;
    let seq = sequences(&space, &args.seq)?.remove(0);
    let candidates = args
        .candidates
        .as_deref()
        .map(|c| points(&space, c))
        .transpose()?;
    let rows: Vec<_> = roughness_reports(&space, &seq, candidates.as_deref())?
        .iter()
        .map(|r| r.to_row(&space))
        .collect();
    Ok(Report::ok(match args.space.format {
        Format::Json => pretty(&json!({
            "sequence": seq_labels(&space, &seq),
            "rows": rows,
        })),
        Format::Text => table(
            &["candidate", "r_two", "r_right", "r_left"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.candidate.clone(),
                        r.r_two.to_string(),
                        r.r_right.to_string(),
                        r.r_left.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    }))
}

fn seq_labels(space: &Space, seq: &Sequence) -> Value {
    let l = |xs: &[usize]| {
        xs.iter()
            .map(|&i| space.label(i).to_string())
            .collect::<Vec<_>>()
    };
    json!({"prefix": l(seq.prefix()), "cycle": l(seq.cycle())})
}

fn limitset(args: &LimitsetArgs) -> CliResult<Report> {
    let space = load_space(&args.space.space)?;
    let seq = sequences(&space, &args.seq)?.remove(0);
    let sides: Vec<Side> = match args.side {
        Some(side) => vec![side],
        None => Side::ALL.to_vec(),
    };
    let key = |side: Side| match side {
        Side::TwoSided => "lim",
        Side::Right => "r_lim",
        Side::Left => "l_lim",
    };
    let mut sets = Vec::new();
    for side in sides {
        sets.push((
            side,
            sorted_labels(&space, &rough_limit_set(&space, &seq, &args.r, side)?),
        ));
    }
    Ok(Report::ok(match args.space.format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("r".into(), json!(args.r));
            for (side, labels) in &sets {
                obj.insert(key(*side).into(), json!(labels));
            }
            pretty(&Value::Object(obj))
        }
        Format::Text => sets
            .iter()
            .map(|(side, labels)| {
                format!(
                    "{:<6} {}\n",
                    key(*side).replace('_', "-").to_uppercase() + "^" + &args.r.to_string(),
                    braces(labels)
                )
            })
            .collect(),
    }))
}

fn topology(args: &TopologyArgs) -> CliResult<Report> {
    let space = load_space(&args.space.space)?;
    let topo = generate_topology(&space)?;
    let basis: Vec<Vec<String>> = basis_balls(&space)
        .iter()
        .map(|b| sorted_labels(&space, b))
        .collect();
    let mut queries = Vec::new();
    for q in &args.query {
        let set: PointSet = points(&space, q)?.into_iter().collect();
        queries.push((
            sorted_labels(&space, &set),
            topo.is_open(&set)?,
            topo.is_closed(&set)?,
            sorted_labels(&space, &topo.closure(&set)?),
        ));
    }
    let text = match args.space.format {
        Format::Json => {
            let mut obj = json!({
                "points": space.len(),
                "cap": topology_cap()?,
                "basis": basis,
                "open_count": topo.len(),
                "t0": topo.is_t0(),
                "t1": topo.is_t1(),
                "queries": queries.iter().map(|(s, o, c, cl)| json!({"set": s, "open": o, "closed": c, "closure": cl})).collect::<Vec<_>>(),
            });
            if args.opens {
                obj["opens"] = json!(topo.canonical_opens(&space));
            }
            pretty(&obj)
        }
        Format::Text => {
            let mut out = format!(
                "{} points, {} basis balls, {} open sets, T0 {}, T1 {}\n",
                space.len(),
                basis.len(),
                topo.len(),
                yes(topo.is_t0()),
                yes(topo.is_t1())
            );
            out += "basis:\n";
            for b in &basis {
                out += &format!("  {}\n", braces(b));
            }
            if args.opens {
                out += "opens:\n";
                for o in topo.canonical_opens(&space) {
                    out += &format!("  {}\n", braces(&o));
                }
            }
            if !queries.is_empty() {
                let rows: Vec<Vec<String>> = queries
                    .iter()
                    .map(|(s, o, c, cl)| {
                        vec![braces(s), yes(*o).into(), yes(*c).into(), braces(cl)]
                    })
                    .collect();
                out += &table(&["set", "open", "closed", "closure"], &rows);
            }
            out
        }
    };
    Ok(Report::ok(text))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn summary_table(
    summary: &std::collections::BTreeMap<TheoremId, roughlim_core::theorems::Counts>,
) -> String {
    let rows: Vec<Vec<String>> = summary
        .iter()
        .map(|(id, c)| {
            vec![
                id.to_string(),
                c.pass.to_string(),
                c.fail.to_string(),
                c.vacuous.to_string(),
                c.skipped.to_string(),
            ]
        })
        .collect();
    table(&["theorem", "pass", "fail", "vacuous", "skipped"], &rows)
}

fn theorems(args: &TheoremsArgs) -> CliResult<Report> {
    let space = load_space(&args.space.space)?;
    let seqs = sequences(&space, &args.seq)?;
    if seqs.len() > 2 {
        return Err(Failure::usage("at most two sequences: subject and partner"));
    }
    let verdicts = check_instance(&space, &seqs[0], seqs.get(1), &args.r)?;
    let summary = summarize(&verdicts);
    let failures: Vec<_> = verdicts
        .iter()
        .filter(|v| v.outcome() == Outcome::Fail)
        .collect();
    let code = if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    let text = match args.space.format {
        Format::Json => pretty(&json!({"summary": summary, "failures": failures})),
        Format::Text => {
            let mut out = summary_table(&summary);
            for f in &failures {
                out += &format!("FAILED {}:\n{}", f.theorem_id, pretty(&f.witness));
            }
            out
        }
    };
    Ok(Report { code, text })
}

fn run_search(args: &SearchArgs) -> CliResult<Report> {
    let defaults = SearchConfig::default();
    let config = SearchConfig {
        seed: args.seed,
        trials: args.trials,
        max_points: args.max_points,
        max_cycle: args.max_cycle,
        r_grid: if args.r_grid.is_empty() {
            defaults.r_grid
        } else {
            args.r_grid.clone()
        },
        families: if args.families.is_empty() {
            defaults.families
        } else {
            args.families.clone()
        },
        topology_cap: topology_cap()?,
    };
    let report: SearchReport = search(&config)?;
    let code = if report.is_clean() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    let text = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => {
            let mut out = format!(
                "seed {}, {} trials, up to {} points, cycles up to {}\n",
                config.seed, config.trials, config.max_points, config.max_cycle
            );
            out += &summary_table(&report.summary);
            out += &format!("{} failure(s)\n", report.failures.len());
            for f in &report.failures {
                out += &format!(
                    "FAILED {} in trial {} ({}):\n{}",
                    f.verdict.theorem_id,
                    f.trial,
                    f.family,
                    pretty(&f.verdict.witness)
                );
            }
            out
        }
    };
    Ok(Report { code, text })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match &cli.command {
        Command::Validate(a) => validate(a),
        Command::Analyze(a) => analyze(a),
        Command::Limitset(a) => limitset(a),
        Command::Topology(a) => topology(a),
        Command::Theorems(a) => theorems(a),
        Command::Search(a) => run_search(a),
    };
    match result {
        Ok(report) => {
            let _ = out.write_all(report.text.as_bytes());
            report.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
