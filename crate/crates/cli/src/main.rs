//! `oddquad` command-line front end.
//!
//! Exit codes: 0 all requested checks pass, 1 a check failed, 2 the input
//! could not be read or parsed, 3 internal inconsistency.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oddquad::catalog::{self, CatalogKey};
use oddquad::cert::{Certificate, Report};
use oddquad::classify::{self, fingerprint, Fingerprint};
use oddquad::derivations::{solve_odd_skew_derivations, solve_skew_derivations};
use oddquad::extensions::{decompose_weak_filiform, generalized_odd_double_extension, witness_json};
use oddquad::flags::{detect_filiform, detect_weak_filiform, flag_structure_report};
use oddquad::forms::{phi_module_check, verify_jacobi, verify_odd_quadratic};
use oddquad::io::{self, emit_algebra, extension_doc, load_algebra, load_extension_data, map_json, to_doc};
use oddquad::{Error, Exec, OddForm, Scalar, SuperAlgebra};

#[derive(Parser)]
#[command(name = "oddquad", version, about = "Exact toolkit for odd-quadratic Lie superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print machine-readable JSON instead of the text report.
    #[arg(long, global = true)]
    emit_json: bool,
    /// Run every data-parallel loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check super Jacobi and, when a form is given, odd-quadratic invariance.
    Verify { input: PathBuf },
    /// Center, series, chain dimensions, flag and fingerprint.
    Analyze { input: PathBuf },
    /// Generalized odd double extension by the data in a JSON sidecar.
    Extend {
        input: PathBuf,
        #[arg(long)]
        data: PathBuf,
    },
    /// Split off one generalized odd double extension step.
    Decompose { input: PathBuf },
    /// Basis of the skew-supersymmetric derivations of one parity.
    Derivations {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "odd")]
        parity: ParityArg,
    },
    /// List or emit catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Reproduce the classification in dimension 6 or 8.
    Classify {
        #[arg(long)]
        dim: usize,
    },
    /// Exhaustive grid search for filiform odd-quadratic algebras.
    Search {
        #[arg(long)]
        n_even: usize,
        #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
        grid: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Emit {
        key: String,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

enum Failure {
    Parse(String),
    Check(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Check(m) | Failure::Internal(m) => m,
        }
    }

    /// Errors raised after the inputs were accepted.
    fn from_run(e: Error) -> Failure {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match run(&cli.command, exec) {
        Ok(out) => {
            if cli.emit_json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: &Command, exec: Exec) -> Result<Outcome, Failure> {
    match command {
        Command::Verify { input } => verify(input, exec),
        Command::Analyze { input } => analyze(input, exec),
        Command::Extend { input, data } => extend(input, data),
        Command::Decompose { input } => decompose(input),
        Command::Derivations { input, parity } => derivations(input, *parity),
        Command::Catalog { action } => catalog_cmd(action),
        Command::Classify { dim } => classify_cmd(*dim, exec),
        Command::Search { n_even, grid } => search(*n_even, grid, exec),
    }
}

fn load(path: &Path) -> Result<(SuperAlgebra, Option<OddForm>), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    load_algebra(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load_with_form(path: &Path) -> Result<(SuperAlgebra, OddForm), Failure> {
    match load(path)? {
        (alg, Some(form)) => Ok((alg, form)),
        _ => Err(Failure::Parse(format!("{}: this command needs a \"form\" entry", path.display()))),
    }
}

fn cert_line(c: &Certificate) -> String {
    let verdict = serde_json::to_value(c.verdict).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
    match (&c.witness, c.passed()) {
        (_, true) => format!("{}: ok\n", c.check),
        (Some(w), false) => format!("{}: {verdict} {w}\n", c.check),
        (None, false) => format!("{}: {verdict}\n", c.check),
    }
}

fn report_text(r: &Report) -> String {
    r.certificates.iter().map(cert_line).collect()
}

fn verify(input: &Path, exec: Exec) -> Result<Outcome, Failure> {
    let (alg, form) = load(input)?;
    let jac = verify_jacobi(&alg, exec);
    let mut text = cert_line(&jac);
    let mut passed = jac.passed();
    let mut json = json!({ "jacobi": jac });
    if let Some(form) = &form {
        let rep = verify_odd_quadratic(&alg, form, exec);
        text.push_str(&format!("odd-quadratic: {}\n", if rep.passed() { "ok" } else { "FAIL" }));
        if !rep.passed() {
            text.push_str(&report_text(&rep));
        }
        passed &= rep.passed();
        json["odd_quadratic"] = serde_json::to_value(&rep).expect("serializable");
    }
    json["passed"] = json!(passed);
    Ok(Outcome { text, json, passed })
}

fn fingerprint_text(f: &Fingerprint) -> String {
    format!(
        "center: {} (even {}, odd {})\nlower central series: {:?}\nlower central series of g0: {:?}\nodd-odd bracket rank: {}\nchain dims: {:?}\n",
        f.center, f.center_even, f.center_odd, f.lower_central, f.lower_central_even, f.odd_odd_rank, f.chain
    )
}

fn analyze(input: &Path, exec: Exec) -> Result<Outcome, Failure> {
    let (alg, form) = load(input)?;
    let fp = fingerprint(&alg);
    let mut text = format!("dimension: {} ({} even, {} odd)\n", alg.dim(), alg.n_even(), alg.m_odd());
    text.push_str(&fingerprint_text(&fp));
    let nilpotent = (alg.is_nilpotent(true), alg.is_nilpotent(false));
    text.push_str(&format!("nilpotent: g0 {}, g {}\n", nilpotent.0, nilpotent.1));
    text.push_str(&format!("filiform: {}\n", detect_filiform(&alg)));
    let flag = detect_weak_filiform(&alg);
    let mut json = json!({
        "dimension": { "even": alg.n_even(), "odd": alg.m_odd() },
        "fingerprint": fp,
        "nilpotent": { "even": nilpotent.0, "whole": nilpotent.1 },
        "filiform": detect_filiform(&alg),
    });
    match &flag {
        Ok(f) => {
            let dims: Vec<usize> = f.levels().iter().map(|l| l.dim()).collect();
            text.push_str(&format!("weak filiform flag: m = {}, level dims {:?}\n", f.m(), dims));
            json["weak_filiform"] = json!({ "m": f.m(), "level_dims": dims });
        }
        Err(chain) => {
            text.push_str(&format!("weak filiform flag: none (chain {chain:?})\n"));
            json["weak_filiform"] = Value::Null;
        }
    }
    if let Some(form) = &form {
        let mut rep = verify_odd_quadratic(&alg, form, exec);
        text.push_str(&format!("odd-quadratic: {}\n", if rep.passed() { "ok" } else { "FAIL" }));
        if let Ok(f) = &flag {
            if rep.passed() {
                let structure = flag_structure_report(&alg, form, f);
                text.push_str(&report_text(&structure));
                rep.certificates.extend(structure.certificates);
            }
        }
        let phi = phi_module_check(&alg, form);
        text.push_str(&report_text(&phi));
        json["checks"] = serde_json::to_value(&rep).expect("serializable");
        json["phi"] = serde_json::to_value(&phi).expect("serializable");
    }
    Ok(Outcome { text, json, passed: true })
}

fn extend(input: &Path, data_path: &Path) -> Result<Outcome, Failure> {
    let (alg, form) = load_with_form(input)?;
    let text = std::fs::read_to_string(data_path).map_err(|e| Failure::Parse(format!("{}: {e}", data_path.display())))?;
    let data = load_extension_data(&alg, &text).map_err(|e| Failure::Parse(format!("{}: {e}", data_path.display())))?;
    let ext = generalized_odd_double_extension(&alg, &form, &data).map_err(Failure::from_run)?;
    let doc = to_doc(&ext.algebra, Some(&ext.form));
    let json = json!({ "algebra": doc, "witness": witness_json(&ext.witness) });
    let text = format!(
        "extension: dimension {} ({} even, {} odd), flag m = {}\n{}\n",
        ext.algebra.dim(),
        ext.algebra.n_even(),
        ext.algebra.m_odd(),
        ext.flag.m(),
        emit_algebra(&ext.algebra, Some(&ext.form))
    );
    Ok(Outcome { text, json, passed: true })
}

fn decompose(input: &Path) -> Result<Outcome, Failure> {
    let (alg, form) = load_with_form(input)?;
    let flag = detect_weak_filiform(&alg).map_err(|chain| Failure::Check(format!("no weak filiform flag (chain {chain:?})")))?;
    let dec = decompose_weak_filiform(&alg, &form, &flag).map_err(Failure::from_run)?;
    let json = json!({
        "h": to_doc(&dec.h, Some(&dec.form)),
        "data": extension_doc(&dec.h, &dec.data),
        "witness": witness_json(&dec.witness),
    });
    let text = format!(
        "h: dimension {} ({} even, {} odd)\n{}\nextension data:\n{}\n",
        dec.h.dim(),
        dec.h.n_even(),
        dec.h.m_odd(),
        emit_algebra(&dec.h, Some(&dec.form)),
        serde_json::to_string_pretty(&json["data"]).expect("serializable")
    );
    Ok(Outcome { text, json, passed: true })
}

fn derivations(input: &Path, parity: ParityArg) -> Result<Outcome, Failure> {
    let (alg, form) = load_with_form(input)?;
    let basis: Vec<_> = match parity {
        ParityArg::Odd => solve_odd_skew_derivations(&alg, &form).iter().map(|d| map_json(&alg, d.matrix())).collect(),
        ParityArg::Even => solve_skew_derivations(&alg, &form, 0).iter().map(|d| map_json(&alg, d)).collect(),
    };
    let mut text = format!("solution space dimension: {}\n", basis.len());
    for (k, d) in basis.iter().enumerate() {
        let parts: Vec<String> = d
            .iter()
            .map(|(x, img)| {
                let terms: Vec<String> = img.iter().map(|(y, c)| format!("{c} {y}")).collect();
                format!("{x} -> {}", terms.join(" + "))
            })
            .collect();
        text.push_str(&format!("  D{}: {}\n", k + 1, parts.join(", ")));
    }
    let json = json!({ "dimension": basis.len(), "basis": basis });
    Ok(Outcome { text, json, passed: true })
}

fn catalog_cmd(action: &CatalogAction) -> Result<Outcome, Failure> {
    match action {
        CatalogAction::List => {
            let keys: Vec<String> = CatalogKey::standard().iter().map(ToString::to_string).collect();
            let mut text = String::new();
            for k in &keys {
                text.push_str(k);
                text.push('\n');
            }
            text.push_str("parametric: model_filiform(m), example_dualpair(m), example_coadjoint(m), g6(delta,lambda,alpha,beta), g8(variant,lambda,alpha,beta)\n");
            Ok(Outcome { text, json: json!({ "entries": keys }), passed: true })
        }
        CatalogAction::Emit { key, out } => {
            let entry = catalog::build(key).map_err(|e| Failure::Parse(e.to_string()))?;
            let body = emit_algebra(&entry.algebra, entry.form.as_ref());
            let json: Value = serde_json::from_str(&body).expect("emitted JSON parses");
            let text = match out {
                Some(path) => {
                    std::fs::write(path, format!("{body}\n")).map_err(|e| Failure::Check(format!("{}: {e}", path.display())))?;
                    format!("wrote {} to {}\n", entry.key, path.display())
                }
                None => format!("{body}\n"),
            };
            Ok(Outcome { text, json, passed: true })
        }
    }
}

fn classify_cmd(dim: usize, exec: Exec) -> Result<Outcome, Failure> {
    if dim != 6 && dim != 8 {
        return Err(Failure::Parse(format!("--dim must be 6 or 8, got {dim}")));
    }
    let jac = classify::audit_jacobi(dim).map_err(Failure::from_run)?;
    let inv = classify::audit_invariance(dim).map_err(Failure::from_run)?;
    let c = classify::classify_dimension(dim, exec).map_err(Failure::from_run)?;
    let expected = if dim == 6 { 2 } else { 3 };
    let distinct = c.classes.iter().enumerate().all(|(i, a)| c.classes[i + 1..].iter().all(|b| a.fingerprint != b.fingerprint));
    let passed = jac.passed() && inv.passed() && c.classes.len() == expected && distinct && c.classes.iter().all(|r| r.witness_verified);

    let mut text = format!("{}\n{}\n", jac.render(), inv.render());
    text.push_str(&format!("branches: {}, samples: {}\n", c.branches.len(), c.samples));
    for b in &c.branches {
        text.push_str(&format!(
            "  branch [{}]: free {:?}, form {:?}\n",
            b.assumptions.join(", "),
            b.free_bracket_parameters,
            b.free_form_parameters
        ));
    }
    text.push_str(&format!("classes: {}\n", c.classes.len()));
    let mut classes = Vec::new();
    for r in &c.classes {
        let name = r.name.clone().unwrap_or_else(|| "unmatched".into());
        text.push_str(&format!(
            "  {name}: center {} (even {}, odd {}), odd-odd rank {}, witness {}\n",
            r.fingerprint.center,
            r.fingerprint.center_even,
            r.fingerprint.center_odd,
            r.fingerprint.odd_odd_rank,
            if r.witness_verified { "verified" } else { "FAILED" }
        ));
        classes.push(json!({
            "name": name,
            "algebra": to_doc(&r.algebra, Some(&r.form)),
            "fingerprint": r.fingerprint,
            "sample": { "values": r.sample_values, "algebra": io::to_doc(&r.sample, None) },
            "witness": r.witness,
            "witness_verified": r.witness_verified,
        }));
    }
    let json = json!({
        "dim": dim,
        "classes": classes,
        "branches": c.branches,
        "samples": c.samples,
        "audit": { "jacobi": jac, "invariance": inv },
        "passed": passed,
    });
    Ok(Outcome { text, json, passed })
}

fn search(n_even: usize, grid: &str, exec: Exec) -> Result<Outcome, Failure> {
    let values = grid
        .split(',')
        .map(|t| t.trim().parse::<Scalar>().map_err(|e| Failure::Parse(format!("grid value `{t}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let report = classify::small_search_nonexistence(n_even, &values, exec).map_err(|e| match e {
        Error::Invalid(m) => Failure::Parse(m),
        other => Failure::from_run(other),
    })?;
    let passed = if n_even == 1 { report.only_abelian() } else { report.is_empty() };
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["passed"] = json!(passed);
    Ok(Outcome { text: report.render(), json, passed })
}
