//! `pqbrace`: braces of order pq, their lambda groups and irrep profiles.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use pqbrace::brace::{catalog_labels, check_primes};
use pqbrace::lambda_group::{
    canonical_decomposition, verify_commutator_structure, verify_op_isomorphism,
};
use pqbrace::rep::{construction_report, profile_for_brace};
use pqbrace::{
    iso_classes, make_brace, verify, BraceLabel, BraceParams, Error, Limits, SkewBrace, Tolerances,
};

#[derive(Parser)]
#[command(
    name = "pqbrace",
    version,
    about = "Skew braces of order pq and their representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every brace of order pq.
    Catalog(Opts),
    /// Commutator orders, kernels and the Λ_A ≅ Λ_{A^op} checks per brace.
    Analyze(Opts),
    /// Irreducible-representation profiles of Λ_A.
    Irreps(Opts),
    /// Isomorphism classes of the lambda groups of the catalog.
    Iso(Opts),
    /// Run every self-check that applies at (p, q).
    Verify(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    /// Comma-separated list of p:q pairs, run one after another.
    #[arg(long, value_delimiter = ',')]
    pairs: Vec<String>,
    /// `trivial`, `B`, `C`, `D`, `E`, `F:<γ>`, `G:<μ>` or `all`.
    #[arg(long, default_value = "all")]
    brace: String,
    #[arg(long)]
    json: bool,
    /// Build every irrep explicitly and check it.
    #[arg(long)]
    construct: bool,
    /// Entrywise tolerance for matrix identities.
    #[arg(long)]
    tol: Option<f64>,
    /// Tolerance on character inner products.
    #[arg(long)]
    char_tol: Option<f64>,
    /// Largest group order on which pair-exhaustive checks run.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

/// Usage errors exit with 2, failed checks with 1.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(_) | Error::NoSuchElement { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

struct Ctx {
    limits: Limits,
    tol: Tolerances,
    json: bool,
    construct: bool,
    selector: String,
}

type Runner = fn(&Ctx, u32, u32) -> Result<Section, Failure>;

/// Output for one (p, q): JSON value, table text, and whether everything passed.
struct Section {
    value: Value,
    table: String,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (opts, run): (&Opts, Runner) = match &cli.command {
        Command::Catalog(o) => (o, cmd_catalog),
        Command::Analyze(o) => (o, cmd_analyze),
        Command::Irreps(o) => (o, cmd_irreps),
        Command::Iso(o) => (o, cmd_iso),
        Command::Verify(o) => (o, cmd_verify),
    };
    match execute(opts, run) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
    }
}

fn execute(opts: &Opts, run: Runner) -> Result<bool, Failure> {
    let ctx = context(opts)?;
    let pairs = pairs(opts)?;
    let mut values = Vec::new();
    let mut table = String::new();
    let mut pass = true;
    for &(p, q) in &pairs {
        check_primes(p, q)?;
        let s = run(&ctx, p, q)?;
        pass &= s.pass;
        values.push(s.value);
        if pairs.len() > 1 {
            let _ = writeln!(table, "== p = {p}, q = {q} ==");
        }
        table.push_str(&s.table);
    }
    let text = if ctx.json {
        let v = if values.len() == 1 {
            values.pop().expect("one value")
        } else {
            Value::Array(values)
        };
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    } else {
        table
    };
    match &opts.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(pass)
}

fn context(opts: &Opts) -> Result<Ctx, Failure> {
    let mut limits = Limits::default();
    let mut tol = Tolerances::default();
    if let Some(t) = opts.tol {
        tol.matrix = t;
    }
    if let Some(t) = opts.char_tol {
        tol.character = t;
    }
    if !(tol.matrix > 0.0 && tol.character > 0.0) {
        return Err(Failure::Usage("tolerances must be positive".into()));
    }
    if let Some(c) = opts.cap {
        limits.element_cap = c;
    }
    if let Some(s) = opts.seed {
        limits.seed = s;
    }
    if opts.brace != "all" {
        BraceLabel::from_str(&opts.brace)?;
    }
    Ok(Ctx {
        limits,
        tol,
        json: opts.json,
        construct: opts.construct,
        selector: opts.brace.clone(),
    })
}

fn pairs(opts: &Opts) -> Result<Vec<(u32, u32)>, Failure> {
    if !opts.pairs.is_empty() {
        if opts.p.is_some() || opts.q.is_some() {
            return Err(Failure::Usage("use either --pairs or --p/--q".into()));
        }
        return opts
            .pairs
            .iter()
            .map(|s| {
                let bad = || Failure::Usage(format!("pair {s:?} is not of the form p:q"));
                let (p, q) = s.split_once(':').ok_or_else(bad)?;
                Ok((
                    p.trim().parse().map_err(|_| bad())?,
                    q.trim().parse().map_err(|_| bad())?,
                ))
            })
            .collect();
    }
    match (opts.p, opts.q) {
        (Some(p), Some(q)) => Ok(vec![(p, q)]),
        _ => Err(Failure::Usage("--p and --q are required".into())),
    }
}

fn selected(ctx: &Ctx, p: u32, q: u32) -> Result<Vec<SkewBrace>, Failure> {
    let labels = if ctx.selector == "all" {
        catalog_labels(p, q)?
    } else {
        vec![BraceLabel::from_str(&ctx.selector)?]
    };
    labels
        .into_iter()
        .map(|l| Ok(make_brace(BraceParams::new(p, q, l)?, &ctx.limits)?))
        .collect()
}

fn cmd_catalog(ctx: &Ctx, p: u32, q: u32) -> Result<Section, Failure> {
    let mut rows = Vec::new();
    let mut table = format!(
        "{:<8} {:>3} {:>5} {:<10} {:<10} {:>4}\n",
        "brace", "g", "param", "(A,·)", "(A,∘)", "|A'|"
    );
    for b in selected(ctx, p, q)? {
        let params = b.params();
        let param = match params.label {
            BraceLabel::F(k) | BraceLabel::G(k) => Some(k),
            _ => None,
        };
        let add = SkewBrace::shape(b.add());
        let circ = SkewBrace::shape(b.circ());
        let comm = b.brace_commutator().members.len();
        let _ = writeln!(
            table,
            "{:<8} {:>3} {:>5} {:<10} {:<10} {:>4}",
            params.label.to_string(),
            params.g.map_or("-".into(), |g| g.to_string()),
            param.map_or("-".into(), |k| k.to_string()),
            add,
            circ,
            comm
        );
        rows.push(json!({
            "brace": params.label,
            "g": params.g,
            "parameter": param,
            "additive": add,
            "multiplicative": circ,
            "commutator": comm,
        }));
    }
    Ok(Section {
        value: json!({"p": p, "q": q, "braces": rows}),
        table,
        pass: true,
    })
}

fn cmd_analyze(ctx: &Ctx, p: u32, q: u32) -> Result<Section, Failure> {
    let limits = &ctx.limits;
    let mut rows = Vec::new();
    let mut pass = true;
    let mut table = format!(
        "{:<8} {:>4} {:>6} {:>4} {:>6} {:>8} {:>8} {:>8} {:>6} {:>6}\n",
        "brace", "|A'|", "|A∘'|", "|Λ'|", "kernel", "A· ab", "A∘ ab", "Λ ab", "op", "Λ'"
    );
    for b in selected(ctx, p, q)? {
        let label = b.label();
        let (standard, _, _) = verify_op_isomorphism(&b, limits)?;
        let structure = verify_commutator_structure(&standard)?;
        let kernel = match canonical_decomposition(&standard, limits) {
            Ok(d) => Some(d.kernel_order()),
            Err(Error::NotApplicable(_)) => None,
            Err(e) => return Err(e.into()),
        };
        let row = json!({
            "brace": label,
            "brace_commutator": b.brace_commutator().members.len(),
            "circ_commutator": b.circ().commutator_subgroup().len(),
            "lambda_commutator": standard.group().commutator_subgroup().len(),
            "kernel": kernel,
            "additive_abelian": b.add().is_abelian(),
            "multiplicative_abelian": b.circ().is_abelian(),
            "lambda_abelian": standard.group().is_abelian(),
            "op_isomorphism": true,
            "commutator_structure": structure,
        });
        pass &= structure;
        let _ = writeln!(
            table,
            "{:<8} {:>4} {:>6} {:>4} {:>6} {:>8} {:>8} {:>8} {:>6} {:>6}",
            label.to_string(),
            row["brace_commutator"].to_string(),
            row["circ_commutator"].to_string(),
            row["lambda_commutator"].to_string(),
            kernel.map_or("-".into(), |k| k.to_string()),
            row["additive_abelian"].to_string(),
            row["multiplicative_abelian"].to_string(),
            row["lambda_abelian"].to_string(),
            "ok",
            if structure { "ok" } else { "FAIL" },
        );
        rows.push(row);
    }
    Ok(Section {
        value: json!({"p": p, "q": q, "braces": rows}),
        table,
        pass,
    })
}

fn cmd_irreps(ctx: &Ctx, p: u32, q: u32) -> Result<Section, Failure> {
    let mut rows = Vec::new();
    let mut table = String::new();
    let mut pass = true;
    for b in selected(ctx, p, q)? {
        let profile = profile_for_brace(&b, &ctx.limits)?;
        let mut value = serde_json::to_value(&profile).expect("serializable");
        let _ = write!(
            table,
            "{:<8} classes {:>4}  {}",
            b.label().to_string(),
            profile.profile.classes(),
            profile.profile
        );
        if ctx.construct {
            let report = construction_report(&b, &ctx.limits, &ctx.tol)?;
            let built: u64 = report.dims.values().sum();
            let matches = report.dims == *profile.profile.multiplicities();
            pass &= report.pass && matches;
            let _ =
                write!(
                table,
                "  built {built} irreps {:?}, hom defect {:.1e}, orthonormality defect {:.1e}: {}",
                report.dims,
                report.homomorphism_defect,
                report.orthonormality_defect,
                if report.pass && matches { "pass" } else { "FAIL" }
            );
            value["construction"] = serde_json::to_value(&report).expect("serializable");
        }
        table.push('\n');
        rows.push(value);
    }
    let value = if rows.len() == 1 {
        rows.pop().expect("one row")
    } else {
        Value::Array(rows)
    };
    Ok(Section { value, table, pass })
}

fn cmd_iso(ctx: &Ctx, p: u32, q: u32) -> Result<Section, Failure> {
    let classes = iso_classes(p, q, &ctx.limits)?;
    let mut table = String::new();
    for (i, c) in classes.classes.iter().enumerate() {
        let members: Vec<String> = c.members.iter().map(|l| l.to_string()).collect();
        let _ = writeln!(table, "class {}: {{{}}}", i + 1, members.join(", "));
        for w in &c.witnesses {
            let brute = match w.brute_force {
                Some(true) => "confirmed",
                Some(false) => "REFUTED",
                None => "over capacity",
            };
            let _ = writeln!(
                table,
                "  Λ_{} → Λ_{}: {} [brute force: {brute}]",
                w.member,
                c.representative,
                if w.chain.is_empty() {
                    "identity".into()
                } else {
                    w.chain.join(" → ")
                }
            );
        }
    }
    let _ = writeln!(
        table,
        "representatives pairwise non-isomorphic: {}",
        classes.representatives_distinct
    );
    let pass = classes.representatives_distinct;
    Ok(Section {
        value: serde_json::to_value(&classes).expect("serializable"),
        table,
        pass,
    })
}

fn cmd_verify(ctx: &Ctx, p: u32, q: u32) -> Result<Section, Failure> {
    let report = verify::run(p, q, &ctx.limits, &ctx.tol)?;
    let mut table = format!("seed {:#x}\n", report.seed);
    for r in &report.records {
        let _ = writeln!(
            table,
            "{} {:<40} expected {} actual {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.check,
            r.expected,
            r.actual
        );
    }
    for (name, secs) in &report.timings {
        let _ = writeln!(table, "time {name:<20} {secs:.3}s");
    }
    let _ = writeln!(
        table,
        "{}",
        if report.pass {
            "all checks passed"
        } else {
            "verification FAILED"
        }
    );
    // timings also go to stderr so that JSON stays reproducible
    if ctx.json {
        for (name, secs) in &report.timings {
            eprintln!("time {name} {secs:.3}s");
        }
    }
    Ok(Section {
        value: serde_json::to_value(&report).expect("serializable"),
        pass: report.pass,
        table,
    })
}
