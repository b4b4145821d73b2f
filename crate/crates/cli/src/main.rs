use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cliffweil::codes::extended_qr;
use cliffweil::cwg::{default_cap, molien, verify_structure, CliffordWeil};
use cliffweil::gf::{find_sc_basis, find_sc_basis_over, FieldCtx};
use cliffweil::invariants::{extremal_search, invariant_space_capped, reproduce_table, DEFAULT_DEGREE_CAP};
use cliffweil::json::{basis_json, envelope, extremal_json, molien_json, payload, CodeJson};
use cliffweil::par::Exec;
use cliffweil::poly::cwe;
use cliffweil::reproduce::{self, Config, CriterionReport, CRITERIA};
use cliffweil::DEFAULT_CODEWORD_BUDGET;

mod text;

#[derive(Parser)]
#[command(name = "cliffweil", version, about = "Self-dual codes over GF(2^f), their enumerators and Clifford-Weil groups")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Maximum number of codewords any enumeration may visit.
    #[arg(long, env = "CLIFFWEIL_BUDGET", default_value_t = DEFAULT_CODEWORD_BUDGET, global = true)]
    budget: u64,
    /// Maximum group order during closure (default depends on the field).
    #[arg(long, env = "CLIFFWEIL_GROUP_CAP", global = true)]
    group_cap: Option<usize>,
    /// Largest degree for invariant-space computations.
    #[arg(long, env = "CLIFFWEIL_DEGREE_CAP", default_value_t = DEFAULT_DEGREE_CAP, global = true)]
    degree_cap: u32,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, env = "CLIFFWEIL_THREADS", global = true)]
    threads: Option<usize>,
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe a field: modulus, self-complementary basis, phi table.
    Field {
        #[arg(long, default_value = "F4")]
        field: String,
    },
    /// Build and inspect codes. Codes travel as JSON on stdin/stdout.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Complete weight enumerator of the code on stdin.
    Cwe,
    /// Clifford-Weil groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Invariant spaces and the extremality search over F4.
    #[command(subcommand)]
    Inv(InvCmd),
    /// Run the numbered reproduction checks.
    Reproduce {
        /// Restrict to a check group (codes, group, molien, invariants,
        /// extremal) or a criterion number. Repeatable.
        #[arg(long)]
        only: Vec<String>,
        /// Also run the expensive checks (the G3 Molien series).
        #[arg(long)]
        big: bool,
        /// Directory for one JSON report per criterion plus a summary.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Extended quadratic-residue code of length p + 1.
    Qr {
        #[arg(long, default_value = "F4")]
        field: String,
        #[arg(long)]
        p: u64,
    },
    /// Check doubly-evenness and/or self-duality (both when no flag is given).
    Check {
        #[arg(long)]
        doubly_even: bool,
        #[arg(long)]
        self_dual: bool,
    },
    /// Minimum distance and weight distribution.
    Dist,
    /// Expansion over a subfield in a self-complementary basis.
    Expand {
        #[arg(long, default_value = "F2")]
        to: String,
    },
    /// Subcode of words with all coordinates in a subfield.
    Rational {
        #[arg(long, default_value = "F2")]
        to: String,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    Order {
        #[arg(long, default_value = "F4")]
        field: String,
        #[arg(long)]
        with_galois: bool,
    },
    Verify {
        #[arg(long, default_value = "F4")]
        field: String,
    },
    Molien {
        #[arg(long, default_value = "F4")]
        field: String,
        #[arg(long, default_value_t = 40)]
        max_deg: usize,
        #[arg(long)]
        with_galois: bool,
    },
}

#[derive(Subcommand)]
enum InvCmd {
    /// Basis of the degree-n invariants.
    Basis {
        #[arg(long, default_value = "F4")]
        field: String,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        with_galois: bool,
    },
    /// Candidates for the enumerator of a length-n code with distance d.
    Extremal {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Largest feasible distance for n = 4, 8, ..., 24.
    Table,
}

/// What a command produces: a JSON payload and its plain-text rendering.
struct Output {
    kind: &'static str,
    json: Value,
    text: String,
}

impl Output {
    fn new(kind: &'static str, json: Value, text: impl Into<String>) -> Self {
        Output { kind, json, text: text.into() }
    }
}

impl Opts {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }

    fn group(&self, field: &str, with_galois: bool) -> anyhow::Result<(CliffordWeil, cliffweil::cwg::MatrixGroup)> {
        let ctx = FieldCtx::parse(field)?;
        let cw = CliffordWeil::new(ctx)?;
        let cap = self.group_cap.unwrap_or_else(|| default_cap(ctx.degree()));
        let g = cw.group(with_galois, cap, self.exec())?;
        Ok((cw, g))
    }
}

fn read_code() -> anyhow::Result<cliffweil::codes::LinearCode> {
    let mut input = String::new();
    std::io::stdin().read_to_string(&mut input).context("reading stdin")?;
    let v: Value = serde_json::from_str(&input).context("stdin is not JSON")?;
    let code: CodeJson = serde_json::from_value(payload(&v).clone()).context("stdin is not a code")?;
    Ok(code.to_code()?)
}

fn code_output(c: &cliffweil::codes::LinearCode) -> Output {
    let j = CodeJson::from_code(c);
    let text = text::code(&j);
    Output::new("code", json!(j), text)
}

fn run(cli: &Cli) -> anyhow::Result<(Output, bool)> {
    let o = &cli.opts;
    let out = match &cli.cmd {
        Cmd::Field { field } => {
            let ctx = FieldCtx::parse(field)?;
            let basis = find_sc_basis(&ctx)?;
            let elems: Vec<u64> = basis.elems().iter().map(|e| e.value()).collect();
            let phi = basis.phi_table();
            let j = json!({
                "field": ctx.name(),
                "degree": ctx.degree(),
                "order": ctx.order(),
                "modulus": ctx.modulus(),
                "primitive_element": ctx.primitive_element().value(),
                "sc_basis": elems,
                "phi": phi,
            });
            let t = format!(
                "{} = GF(2^{}) modulo {:#b}\nself-complementary basis {:?}\nphi {:?}",
                ctx.name(),
                ctx.degree(),
                ctx.modulus(),
                elems,
                phi
            );
            Output::new("field", j, t)
        }
        Cmd::Code(c) => match c {
            CodeCmd::Qr { field, p } => code_output(&extended_qr(&FieldCtx::parse(field)?, *p)?),
            CodeCmd::Check { doubly_even, self_dual } => {
                let code = read_code()?;
                let both = !doubly_even && !self_dual;
                let mut checks = serde_json::Map::new();
                if *doubly_even || both {
                    checks.insert("doubly_even".into(), json!(code.is_doubly_even().holds));
                }
                if *self_dual || both {
                    checks.insert("self_dual".into(), json!(code.is_self_dual()));
                }
                let holds = checks.values().all(|v| v == &json!(true));
                Output::new("check", json!({ "holds": holds, "checks": checks }), holds.to_string())
            }
            CodeCmd::Dist => {
                let code = read_code()?;
                let prof = code.weight_profile(o.exec(), o.budget)?;
                let d = prof.min_distance();
                let t = format!(
                    "d = {}\nweights {}",
                    d.map_or("-".into(), |d| d.to_string()),
                    text::profile(&prof.counts)
                );
                Output::new("distance", json!({ "n": code.len(), "k": code.dimension(), "min_distance": d, "weight_profile": prof.counts }), t)
            }
            CodeCmd::Expand { to } => {
                let code = read_code()?;
                let sub = FieldCtx::parse(to)?;
                let basis = find_sc_basis_over(&code.ctx(), sub.degree())?;
                code_output(&code.subfield_expand(sub, &basis)?)
            }
            CodeCmd::Rational { to } => code_output(&read_code()?.rational_subcode(FieldCtx::parse(to)?)?),
        },
        Cmd::Cwe => {
            let code = read_code()?;
            let p = cwe(&code, o.exec(), o.budget)?;
            let field = code.ctx().name();
            Output::new("cwe", json!(p.to_json(&field)), text::poly(&p))
        }
        Cmd::Group(g) => match g {
            GroupCmd::Order { field, with_galois } => {
                let (cw, g) = o.group(field, *with_galois)?;
                let j = json!({ "field": cw.ctx().name(), "with_galois": with_galois, "order": g.order() });
                Output::new("group_order", j, g.order().to_string())
            }
            GroupCmd::Verify { field } => {
                let (cw, g) = o.group(field, false)?;
                let r = verify_structure(&cw, &g);
                let passed = r.all_passed();
                let t = text::structure(&r);
                return Ok((Output::new("structure", json!(r), t), passed));
            }
            GroupCmd::Molien { field, max_deg, with_galois } => {
                let (_, g) = o.group(field, *with_galois)?;
                let m = molien(&g, *max_deg, o.exec())?;
                Output::new("molien", molien_json(&m), m.coeff_strings().join(" "))
            }
        },
        Cmd::Inv(i) => match i {
            InvCmd::Basis { field, degree, with_galois } => {
                let ctx = FieldCtx::parse(field)?;
                let b = invariant_space_capped(ctx.degree(), *degree, *with_galois, o.degree_cap)?;
                let mut t = format!("dim {}", b.dim());
                for p in &b.basis {
                    t.push('\n');
                    t.push_str(&text::poly(p));
                }
                Output::new("invariant_basis", basis_json(&b, &ctx.name()), t)
            }
            InvCmd::Extremal { n, d } => {
                let r = extremal_search(*n, *d)?;
                Output::new("extremal", extremal_json(&r), text::extremal(&r))
            }
            InvCmd::Table => {
                let rows = reproduce_table(o.exec(), o.budget)?;
                let t = rows
                    .iter()
                    .map(|r| format!("n={:<3} d={:<3} witness {} (d={})", r.n, r.d, r.witness, r.witness_distance))
                    .collect::<Vec<_>>()
                    .join("\n");
                Output::new("table", json!(rows), t)
            }
        },
        Cmd::Reproduce { only, big, out } => return reproduce_cmd(o, only, *big, out.as_deref()),
    };
    Ok((out, true))
}

fn selected(only: &[String], big: bool) -> anyhow::Result<Vec<u32>> {
    for sel in only {
        let known = CRITERIA.iter().any(|c| c.group == sel || c.id.to_string() == *sel);
        if !known {
            Cli::command()
                .error(clap::error::ErrorKind::InvalidValue, format!("--only {sel}: no such check group or criterion"))
                .exit();
        }
    }
    let ids = CRITERIA
        .iter()
        .filter(|c| {
            let explicit = only.iter().any(|s| c.id.to_string() == *s);
            let by_group = only.is_empty() || only.iter().any(|s| c.group == s);
            explicit || (by_group && (big || !c.big))
        })
        .map(|c| c.id)
        .collect::<Vec<_>>();
    if ids.is_empty() {
        bail!("no criteria selected");
    }
    Ok(ids)
}

fn reproduce_cmd(o: &Opts, only: &[String], big: bool, out: Option<&std::path::Path>) -> anyhow::Result<(Output, bool)> {
    let ids = selected(only, big)?;
    let cfg = Config { exec: o.exec(), budget: o.budget };
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut reports: Vec<CriterionReport> = Vec::new();
    let mut timings = serde_json::Map::new();
    for id in ids {
        let start = Instant::now();
        let r = reproduce::run(id, &cfg)?;
        timings.insert(format!("criterion_{id:02}"), json!(start.elapsed().as_secs_f64()));
        if o.format == Format::Json {
            eprintln!("{}", r.line());
        }
        if let Some(dir) = out {
            write_json(&dir.join(format!("criterion_{id:02}.json")), &envelope("criterion", &r))?;
        }
        reports.push(r);
    }
    let first_failure = reports.iter().find(|r| !r.passed).map(|r| r.id);
    let summary = json!({
        "passed": first_failure.is_none(),
        "first_failure": first_failure,
        "criteria": reports.iter().map(|r| json!({ "id": r.id, "name": r.name, "passed": r.passed, "summary": r.summary })).collect::<Vec<_>>(),
    });
    if let Some(dir) = out {
        write_json(&dir.join("summary.json"), &envelope("summary", &summary))?;
        // wall-clock data stays out of the deterministic reports
        write_json(&dir.join("metadata.json"), &json!({ "seconds": timings }))?;
    }
    let text = reports.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n");
    if let Some(id) = first_failure {
        eprintln!("criterion {id} failed");
    }
    Ok((Output::new("summary", summary, text), first_failure.is_none()))
}

fn write_json(path: &std::path::Path, v: &Value) -> anyhow::Result<()> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    std::fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}

/// Budget problems exit 3, bad arguments 2, anything else 1.
fn exit_code(e: &anyhow::Error) -> u8 {
    use cliffweil::Error as E;
    match e.downcast_ref::<E>() {
        Some(err) if err.is_budget() => 3,
        Some(E::UnsupportedField(_) | E::NotPrime(_) | E::OddDegreeQr { .. } | E::NoScBasis { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.opts.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((out, ok)) => {
            let mut body = match cli.opts.format {
                Format::Json => serde_json::to_string_pretty(&envelope(out.kind, &out.json)).expect("JSON values serialize"),
                Format::Text => out.text,
            };
            body.push('\n');
            // a closed pipe downstream is not our failure
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
