//! Command line front end for the invariant pairing engine.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use weylinv::invariants::{Backend, InvariantSet};
use weylinv::milnor::MilnorRing;
use weylinv::pairing::{classify_bezoutiante, verify_structure, DTable, Entry};
use weylinv::poly::Poly;
use weylinv::rootsys::TypeLabel;
use weylinv::scalar::{Qx, Rat, Scalar};

/// Weyl orders beyond this need an explicit opt-in.
const LARGE_WEYL: u128 = 100_000_000;

#[derive(Parser)]
#[command(name = "weylinv", version, about = "Exact pairing tables of basic Weyl-group invariants")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Permit types whose Weyl group order exceeds the desk budget.
    #[arg(long, global = true)]
    allow_large_weyl: bool,
    /// JSON file {"seeds": [s1, s2, s3]} replacing the bundled E-type seeds.
    #[arg(long, global = true)]
    seed_polynomials: Option<PathBuf>,
    /// Print progress notes to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exponents and the d- and c-tables of a type.
    Tables {
        #[arg(long = "type")]
        label: String,
    },
    /// Structural checks: vanishing pattern, Bezoutiante shape, and for the
    /// E types the Milnor-ring mask.
    Verify {
        #[arg(long = "type")]
        label: String,
    },
    /// Print the basic invariants of one degree.
    Invariants {
        #[arg(long = "type")]
        label: String,
        #[arg(long)]
        degree: usize,
    },
    /// Exterior-algebra oracle for sl2 or sl3.
    Oracle {
        #[arg(long)]
        algebra: String,
        /// Overrides --format for the report.
        #[arg(long, value_enum)]
        report: Option<Format>,
    },
    /// Generic Grassmann matrix identities.
    Grassmann {
        #[arg(long)]
        n: usize,
        /// Run the full identity battery instead of the power summary.
        #[arg(long)]
        verify: bool,
    },
    /// Pair two invariants from files and reduce modulo decomposables.
    Pair {
        #[arg(long = "type")]
        label: String,
        #[arg(long)]
        file_a: PathBuf,
        #[arg(long)]
        file_b: PathBuf,
    },
}

struct Failure {
    code: &'static str,
    message: String,
}

impl Failure {
    fn new(code: &'static str, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }
}

fn compute_err(message: String) -> Failure {
    Failure::new("compute", message)
}

/// Standalone coefficient, without the parentheses used inside polynomials.
fn plain<S: Scalar>(c: &S) -> String {
    let s = c.coeff_string();
    s.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .map_or(s.clone(), str::to_string)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("WEYLINV_THREADS") {
        let parsed = match threads.parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => {
                report_failure(&Failure::new(
                    "bad-arguments",
                    format!("WEYLINV_THREADS must be a positive integer, got `{threads}`"),
                ));
                return ExitCode::FAILURE;
            }
        };
        if let Err(e) = weylinv::configure_threads(parsed) {
            report_failure(&Failure::new("bad-arguments", e));
            return ExitCode::FAILURE;
        }
    }
    match run(&cli) {
        Ok(out) => {
            let write_result = match &cli.output {
                Some(path) => std::fs::write(path, &out).map_err(|e| {
                    Failure::new("io", format!("cannot write {}: {e}", path.display()))
                }),
                None => {
                    print!("{out}");
                    Ok(())
                }
            };
            match write_result {
                Ok(()) => ExitCode::SUCCESS,
                Err(f) => {
                    report_failure(&f);
                    ExitCode::FAILURE
                }
            }
        }
        Err(f) => {
            report_failure(&f);
            ExitCode::FAILURE
        }
    }
}

fn report_failure(f: &Failure) {
    let obj = json!({"error": {"code": f.code, "message": f.message}});
    eprintln!("{obj}");
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Cmd::Tables { label } => {
            let label = parse_label(label)?;
            guard_weyl(cli, label)?;
            let table = build_table(cli, label)?;
            Ok(render_tables(cli.format, &table))
        }
        Cmd::Verify { label } => {
            let label = parse_label(label)?;
            guard_weyl(cli, label)?;
            let table = build_table(cli, label)?;
            cmd_verify(cli.format, &table)
        }
        Cmd::Invariants { label, degree } => {
            let label = parse_label(label)?;
            cmd_invariants(cli, label, *degree)
        }
        Cmd::Oracle { algebra, report } => {
            let fmt = report.unwrap_or(cli.format);
            cmd_oracle(fmt, algebra)
        }
        Cmd::Grassmann { n, verify } => cmd_grassmann(cli.format, *n, *verify),
        Cmd::Pair { label, file_a, file_b } => {
            let label = parse_label(label)?;
            cmd_pair(cli.format, label, file_a, file_b)
        }
    }
}

fn parse_label(s: &str) -> Result<TypeLabel, Failure> {
    TypeLabel::parse(s).map_err(|e| Failure::new("unsupported-type", e))
}

fn guard_weyl(cli: &Cli, label: TypeLabel) -> Result<(), Failure> {
    if !cli.allow_large_weyl && label.weyl_order() > LARGE_WEYL {
        return Err(Failure::new(
            "guard",
            format!(
                "{label} has Weyl order {}; pass --allow-large-weyl to proceed",
                label.weyl_order()
            ),
        ));
    }
    Ok(())
}

fn load_seeds(cli: &Cli) -> Result<Option<[String; 3]>, Failure> {
    let Some(path) = &cli.seed_polynomials else {
        return Ok(None);
    };
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Failure::new("io", format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&raw)
        .map_err(|e| Failure::new("bad-arguments", format!("seed file is not JSON: {e}")))?;
    let seeds = value
        .get("seeds")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 3)
        .ok_or_else(|| {
            Failure::new("bad-arguments", "seed file must contain {\"seeds\": [s1, s2, s3]}")
        })?;
    let mut out: [String; 3] = Default::default();
    for (i, s) in seeds.iter().enumerate() {
        out[i] = s
            .as_str()
            .ok_or_else(|| Failure::new("bad-arguments", "seeds must be strings"))?
            .to_string();
    }
    Ok(Some(out))
}

fn build_table(cli: &Cli, label: TypeLabel) -> Result<DTable, Failure> {
    if cli.verbose > 0 {
        eprintln!("computing pairing table for {label}");
    }
    match load_seeds(cli)? {
        Some(seeds) => {
            let set = InvariantSet::<Rat>::build_with_seeds(label, &seeds)
                .map_err(compute_err)?;
            DTable::from_set(&set).map_err(compute_err)
        }
        None => DTable::compute(label).map_err(compute_err),
    }
}

fn entry_terms_json(e: &Entry) -> Value {
    Value::Array(
        e.iter()
            .map(|(k, c)| json!({"target": k, "coeff": plain(c)}))
            .collect(),
    )
}

fn entry_text(e: &Entry) -> String {
    if e.is_empty() {
        return ".".to_string();
    }
    if let [(_, c)] = e.as_slice() {
        return plain(c);
    }
    e.iter()
        .map(|(k, c)| format!("{}*psi{}", plain(c), k))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn grid(title: &str, lo: usize, hi: usize, cell: impl Fn(usize, usize) -> String) -> String {
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut head = vec![String::new()];
    head.extend((lo..=hi).map(|j| format!("psi{j}")));
    rows.push(head);
    for i in lo..=hi {
        let mut row = vec![format!("psi{i}")];
        row.extend((lo..=hi).map(|j| cell(i, j)));
        rows.push(row);
    }
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = format!("{title}\n");
    for r in &rows {
        let line: Vec<String> =
            r.iter().enumerate().map(|(c, s)| format!("{:>width$}", s, width = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn render_tables(fmt: Format, t: &DTable) -> String {
    let r = t.rank();
    match fmt {
        Format::Json => {
            let d: Vec<Value> = (0..r)
                .map(|i| Value::Array((0..r).map(|j| entry_terms_json(&t.d[i][j])).collect()))
                .collect();
            let c: Vec<Value> = (0..r)
                .map(|i| {
                    Value::Array((0..r).map(|j| entry_terms_json(&t.c_entry(i, j))).collect())
                })
                .collect();
            let obj = json!({
                "command": "tables",
                "type": t.label.to_string(),
                "rank": r,
                "coxeter": t.label.coxeter_number(),
                "exponents": t.exponents,
                "degrees": t.degrees,
                "d": d,
                "c": c,
            });
            format!("{obj:#}\n")
        }
        Format::Csv => {
            let mut out = String::from("section,i,j,target,value\n");
            out.push_str(&format!("meta,,,type,{}\n", t.label));
            out.push_str(&format!("meta,,,rank,{r}\n"));
            out.push_str(&format!(
                "meta,,,exponents,{}\n",
                t.exponents.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
            ));
            for (section, entry_at) in [
                ("d", Box::new(|i: usize, j: usize| t.d[i][j].clone()) as Box<dyn Fn(usize, usize) -> Entry>),
                ("c", Box::new(|i: usize, j: usize| t.c_entry(i, j))),
            ] {
                for i in 0..r {
                    for j in 0..r {
                        for (k, v) in entry_at(i, j) {
                            out.push_str(&format!(
                                "{section},{},{},{k},{}\n",
                                i + 1,
                                j + 1,
                                plain(&v)
                            ));
                        }
                    }
                }
            }
            out
        }
        Format::Text => {
            let exceptional = matches!(t.label, TypeLabel::E(_));
            let (lo, hi) = if exceptional { (2, r - 1) } else { (1, r) };
            let mut out = format!(
                "type {}  rank {}  coxeter {}\nexponents {}\ndegrees   {}\n\n",
                t.label,
                r,
                t.label.coxeter_number(),
                t.exponents.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "),
                t.degrees.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
            );
            if exceptional {
                out.push_str(&format!(
                    "(inner generators only; psi1 pairs onto every generator and psi{r} beyond the top degree)\n\n"
                ));
            }
            out.push_str(&grid(
                "d(i,j): pairing coefficients modulo decomposables",
                lo,
                hi,
                |i, j| entry_text(&t.d[i - 1][j - 1]),
            ));
            out.push('\n');
            out.push_str(&grid("c(i,j) = d(i,j)/(m_i+m_j)", lo, hi, |i, j| {
                entry_text(&t.c_entry(i - 1, j - 1))
            }));
            out
        }
    }
}

struct Check {
    name: &'static str,
    pass: bool,
    details: Vec<String>,
}

fn cmd_verify(fmt: Format, t: &DTable) -> Result<String, Failure> {
    let mut checks = Vec::new();
    let s = verify_structure(t);
    checks.push(Check { name: "vanishing-pattern", pass: s.ok, details: s.failures });
    let b = classify_bezoutiante(t);
    checks.push(Check { name: "bezoutiante", pass: b.ok, details: b.failures });
    if matches!(t.label, TypeLabel::E(_)) {
        let (pass, details) = match MilnorRing::build(t.label).and_then(|m| m.mask_matches(t)) {
            Ok(()) => (true, Vec::new()),
            Err(e) => (false, vec![e]),
        };
        checks.push(Check { name: "milnor-mask", pass, details });
    }
    let mut notes = Vec::new();
    if let TypeLabel::D(n) = t.label {
        if n % 2 == 0 {
            notes.push(
                "the two middle invariants have vanishing self-pairings (type D, even rank)"
                    .to_string(),
            );
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    let out = match fmt {
        Format::Json => {
            let list: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "pass": c.pass, "details": c.details}))
                .collect();
            let obj = json!({
                "command": "verify",
                "type": t.label.to_string(),
                "checks": list,
                "notes": notes,
                "pass": pass,
            });
            format!("{obj:#}\n")
        }
        Format::Csv => {
            let mut out = String::from("section,name,value\n");
            for c in &checks {
                out.push_str(&format!("check,{},{}\n", c.name, if c.pass { "PASS" } else { "FAIL" }));
                for d in &c.details {
                    out.push_str(&format!("detail,{},{}\n", c.name, d.replace(',', ";")));
                }
            }
            for n in &notes {
                out.push_str(&format!("note,,{}\n", n.replace(',', ";")));
            }
            out.push_str(&format!("result,,{}\n", if pass { "PASS" } else { "FAIL" }));
            out
        }
        Format::Text => {
            let mut out = format!("type {}\n", t.label);
            for c in &checks {
                out.push_str(&format!("{}: {}\n", c.name, if c.pass { "PASS" } else { "FAIL" }));
                for d in &c.details {
                    out.push_str(&format!("  {d}\n"));
                }
            }
            for n in &notes {
                out.push_str(&format!("note: {n}\n"));
            }
            out.push_str(if pass { "PASS\n" } else { "FAIL\n" });
            out
        }
    };
    if pass {
        Ok(out)
    } else {
        // Still show the report, then fail loudly.
        print!("{out}");
        Err(Failure::new("verification-failed", format!("{} failed verification", t.label)))
    }
}

fn cmd_invariants(cli: &Cli, label: TypeLabel, degree: usize) -> Result<String, Failure> {
    let rendered: Vec<String> = if matches!(label, TypeLabel::D(_)) {
        let set = InvariantSet::<Qx>::build(label).map_err(compute_err)?;
        collect_generators(&set, degree)
    } else {
        let set = match load_seeds(cli)? {
            Some(seeds) if matches!(label, TypeLabel::E(_)) => {
                InvariantSet::<Rat>::build_with_seeds(label, &seeds).map_err(compute_err)?
            }
            _ => InvariantSet::<Rat>::build(label).map_err(compute_err)?,
        };
        collect_generators(&set, degree)
    };
    if rendered.is_empty() {
        return Err(Failure::new(
            "bad-arguments",
            format!("{label} has no basic invariant of degree {degree}"),
        ));
    }
    Ok(match cli.format {
        Format::Json => {
            let obj = json!({
                "command": "invariants",
                "type": label.to_string(),
                "degree": degree,
                "generators": rendered,
            });
            format!("{obj:#}\n")
        }
        Format::Csv => {
            let mut out = String::from("degree,generator\n");
            for g in &rendered {
                out.push_str(&format!("{degree},\"{g}\"\n"));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for g in &rendered {
                out.push_str(&format!("psi (degree {degree}) = {g}\n"));
            }
            out
        }
    })
}

fn collect_generators<S: Scalar>(set: &InvariantSet<S>, degree: usize) -> Vec<String> {
    set.degrees
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == degree)
        .map(|(i, _)| set.render(&set.psis[i]))
        .collect()
}

fn cmd_oracle(fmt: Format, algebra: &str) -> Result<String, Failure> {
    let rep = weylinv::exterior::run_oracle(algebra).map_err(compute_err)?;
    let c_json: Vec<Value> = rep
        .c_table
        .iter()
        .map(|row| {
            Value::Array(
                row.iter()
                    .map(|c| match c {
                        Some(v) => Value::String(plain(v)),
                        None => Value::Null,
                    })
                    .collect(),
            )
        })
        .collect();
    let out = match fmt {
        Format::Json => {
            let checks: Vec<Value> =
                rep.checks.iter().map(|c| json!({"name": c.name, "pass": c.pass})).collect();
            let obj = json!({
                "command": "oracle",
                "algebra": rep.label,
                "gamma_dims": rep.gamma_dims,
                "gamma_expected": rep.gamma_expected,
                "a_dims": rep.a_dims,
                "a_expected": rep.a_expected,
                "dim_a": rep.dim_a,
                "c": c_json,
                "checks": checks,
                "pass": rep.ok,
            });
            format!("{obj:#}\n")
        }
        Format::Csv => {
            let mut out = String::from("section,name,value\n");
            let dims = |v: &[usize]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
            out.push_str(&format!("dims,gamma,{}\n", dims(&rep.gamma_dims)));
            out.push_str(&format!("dims,gamma-expected,{}\n", dims(&rep.gamma_expected)));
            out.push_str(&format!("dims,a,{}\n", dims(&rep.a_dims)));
            out.push_str(&format!("dims,a-expected,{}\n", dims(&rep.a_expected)));
            out.push_str(&format!("dims,a-total,{}\n", rep.dim_a));
            for (i, row) in rep.c_table.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    if let Some(v) = c {
                        out.push_str(&format!("c,{}-{},{}\n", i + 1, j + 1, plain(v)));
                    }
                }
            }
            for c in &rep.checks {
                out.push_str(&format!(
                    "check,{},{}\n",
                    c.name,
                    if c.pass { "PASS" } else { "FAIL" }
                ));
            }
            out.push_str(&format!("result,,{}\n", if rep.ok { "PASS" } else { "FAIL" }));
            out
        }
        Format::Text => {
            let dims = |v: &[usize]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
            let mut out = format!("algebra {}\n", rep.label);
            out.push_str(&format!(
                "invariant forms by degree: {}  (expected {})\n",
                dims(&rep.gamma_dims),
                dims(&rep.gamma_expected)
            ));
            out.push_str(&format!(
                "covariants by degree:      {}  (expected {})\n",
                dims(&rep.a_dims),
                dims(&rep.a_expected)
            ));
            out.push_str(&format!("total covariant dimension: {}\n", rep.dim_a));
            for (i, row) in rep.c_table.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    let v = match c {
                        Some(v) => plain(v),
                        None => ".".to_string(),
                    };
                    out.push_str(&format!("c({},{}) = {v}\n", i + 1, j + 1));
                }
            }
            for c in &rep.checks {
                out.push_str(&format!("{}: {}\n", c.name, if c.pass { "PASS" } else { "FAIL" }));
            }
            out.push_str(if rep.ok { "PASS\n" } else { "FAIL\n" });
            out
        }
    };
    if rep.ok {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::new("verification-failed", format!("oracle for {algebra} failed")))
    }
}

fn cmd_grassmann(fmt: Format, n: usize, verify: bool) -> Result<String, Failure> {
    if verify {
        let rep = weylinv::grassmann::verify_trace_identity(n).map_err(compute_err)?;
        let rows = [
            ("nilpotent", rep.nilpotent),
            ("matrix-reading", rep.matrix_reading),
            ("trace-reading", rep.trace_reading),
            ("odd-traces-anticommute", rep.odd_traces_anticommute),
        ];
        let out = match fmt {
            Format::Json => {
                let obj = json!({
                    "command": "grassmann",
                    "n": n,
                    "verify": true,
                    "nilpotent": rep.nilpotent,
                    "matrix_reading": rep.matrix_reading,
                    "trace_reading": rep.trace_reading,
                    "odd_traces_anticommute": rep.odd_traces_anticommute,
                    "pass": rep.pass,
                });
                format!("{obj:#}\n")
            }
            Format::Csv => {
                let mut out = String::from("section,name,value\n");
                for (name, pass) in rows {
                    out.push_str(&format!("check,{name},{}\n", if pass { "PASS" } else { "FAIL" }));
                }
                out.push_str(&format!("result,,{}\n", if rep.pass { "PASS" } else { "FAIL" }));
                out
            }
            Format::Text => {
                let mut out = format!("grassmann matrix, n = {n}\n");
                for (name, pass) in rows {
                    out.push_str(&format!("{name}: {}\n", if pass { "PASS" } else { "FAIL" }));
                }
                out.push_str(if rep.pass { "PASS\n" } else { "FAIL\n" });
                out
            }
        };
        return if rep.pass {
            Ok(out)
        } else {
            print!("{out}");
            Err(Failure::new("verification-failed", format!("grassmann identities failed at n={n}")))
        };
    }
    let x = weylinv::grassmann::GrassmannMatrix::generic(n).map_err(compute_err)?;
    let powers: Vec<(usize, bool)> =
        (1..=2 * n).map(|k| (k, x.power(k).is_zero())).collect();
    Ok(match fmt {
        Format::Json => {
            let list: Vec<Value> =
                powers.iter().map(|(k, z)| json!({"power": k, "zero": z})).collect();
            let obj = json!({"command": "grassmann", "n": n, "verify": false, "powers": list});
            format!("{obj:#}\n")
        }
        Format::Csv => {
            let mut out = String::from("power,zero\n");
            for (k, z) in &powers {
                out.push_str(&format!("{k},{z}\n"));
            }
            out
        }
        Format::Text => {
            let mut out = format!("grassmann matrix, n = {n}\n");
            for (k, z) in &powers {
                out.push_str(&format!("X^{k} {}\n", if *z { "= 0" } else { "nonzero" }));
            }
            out
        }
    })
}

fn cmd_pair(
    fmt: Format,
    label: TypeLabel,
    file_a: &PathBuf,
    file_b: &PathBuf,
) -> Result<String, Failure> {
    let read = |p: &PathBuf| -> Result<String, Failure> {
        std::fs::read_to_string(p)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::new("io", format!("cannot read {}: {e}", p.display())))
    };
    let (sa, sb) = (read(file_a)?, read(file_b)?);
    if matches!(label, TypeLabel::D(_)) {
        let set = InvariantSet::<Qx>::build(label).map_err(compute_err)?;
        pair_in(fmt, &set, &sa, &sb)
    } else {
        let set = InvariantSet::<Rat>::build(label).map_err(compute_err)?;
        pair_in(fmt, &set, &sa, &sb)
    }
}

fn pair_in<S: Scalar>(
    fmt: Format,
    set: &InvariantSet<S>,
    sa: &str,
    sb: &str,
) -> Result<String, Failure> {
    let parse = |s: &str| -> Result<Poly<S>, Failure> {
        match &set.backend {
            Backend::Frame(f) => f.parse(s),
            Backend::Coords(rs) => Poly::parse(s, rs.ambient),
        }
        .map_err(|e| Failure::new("bad-arguments", e))
    };
    let a = parse(sa)?;
    let b = parse(sb)?;
    let product = set.pair(&a, &b);
    let reduced = set.mod_squares(&product).map_err(compute_err)?;
    let decomposable = reduced.is_empty();
    Ok(match fmt {
        Format::Json => {
            let terms: Vec<Value> = reduced
                .iter()
                .map(|(k, c)| json!({"target": k, "coeff": plain(c)}))
                .collect();
            let obj = json!({
                "command": "pair",
                "type": set.label.to_string(),
                "product": set.render(&product),
                "mod_squares": terms,
                "decomposable": decomposable,
            });
            format!("{obj:#}\n")
        }
        Format::Csv => {
            let mut out = String::from("section,target,value\n");
            out.push_str(&format!("product,,\"{}\"\n", set.render(&product)));
            for (k, c) in &reduced {
                out.push_str(&format!("mod-squares,{k},{}\n", plain(c)));
            }
            out.push_str(&format!("decomposable,,{decomposable}\n"));
            out
        }
        Format::Text => {
            let mut out = format!("pairing = {}\n", set.render(&product));
            if decomposable {
                out.push_str("mod squares: 0 (decomposable)\n");
            } else {
                let terms: Vec<String> = reduced
                    .iter()
                    .map(|(k, c)| format!("{}*psi{k}", plain(c)))
                    .collect();
                out.push_str(&format!("mod squares: {}\n", terms.join(" + ")));
            }
            out
        }
    })
}
