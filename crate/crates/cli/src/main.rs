use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use wittsen::{exit_code, run, verify_report, Params, Report, SchemaError, EXIT_SCHEMA};

#[derive(Parser)]
#[command(name = "wittsen", version, about = "Witt-vector constructions and Sen-operator checks, JSON in and out")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Run {
    #[command(flatten)]
    params: Params,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// b in W_L(R[eps]) for E = u - p, R = Z_p[lambda]/lambda^n.
    ConstructB(Run),
    /// b over S[[E/p]] for a general Eisenstein E.
    ConstructBGeneral(Run),
    /// c over S[[E/p]] for a general Eisenstein E.
    ConstructC(Run),
    /// x in W(Z_p) with iota(lambda) = V F(x).
    SolveVf(Run),
    /// Leibniz rule, nilpotence and weights of a Sen module.
    SenCheck(Run),
    /// H^0 and H^1 of a Sen module at precision.
    SenCohomology(Run),
    /// A Theta-stable lattice in a module with p-power denominators.
    SenLattice(Run),
    /// eta on delta-powers of t, and Theta on the envelope generators.
    DeltaVerify(Run),
    /// Ghost arithmetic against universal polynomials, and Witt identities.
    WittSelftest(Run),
    /// Re-run a saved report and re-check its components.
    VerifyReport {
        report: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn schema_exit(e: &SchemaError) -> ExitCode {
    println!("{}", json!({ "pass": false, "failure": { "schema": e.0 } }));
    ExitCode::from(EXIT_SCHEMA)
}

fn read_json(path: &Path) -> Result<serde_json::Value, SchemaError> {
    let text = fs::read_to_string(path).map_err(|e| SchemaError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| SchemaError(format!("{}: {e}", path.display())))
}

fn emit(report: &Report, out: Option<&Path>) -> ExitCode {
    let text = serde_json::to_string_pretty(report).expect("reports serialize");
    println!("{text}");
    if let Some(path) = out {
        if let Err(e) = fs::write(path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_SCHEMA);
        }
    }
    ExitCode::from(exit_code(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, mut args) = match cli.command {
        Command::VerifyReport { report, out } => {
            let src = read_json(&report).and_then(|v| {
                serde_json::from_value::<Report>(v).map_err(|e| SchemaError(format!("{}: {e}", report.display())))
            });
            return match src.and_then(|r| verify_report(&r)) {
                Ok(r) => emit(&r, out.as_deref()),
                Err(e) => schema_exit(&e),
            };
        }
        Command::ConstructB(a) => ("construct-b", a),
        Command::ConstructBGeneral(a) => ("construct-b-general", a),
        Command::ConstructC(a) => ("construct-c", a),
        Command::SolveVf(a) => ("solve-vf", a),
        Command::SenCheck(a) => ("sen-check", a),
        Command::SenCohomology(a) => ("sen-cohomology", a),
        Command::SenLattice(a) => ("sen-lattice", a),
        Command::DeltaVerify(a) => ("delta-verify", a),
        Command::WittSelftest(a) => ("witt-selftest", a),
    };
    if let Some(path) = args.params.module_path.take() {
        match read_json(&path) {
            Ok(v) => args.params.module = Some(v),
            Err(e) => return schema_exit(&e),
        }
    }
    match run(name, args.params) {
        Ok(r) => emit(&r, args.out.as_deref()),
        Err(e) => schema_exit(&e),
    }
}
