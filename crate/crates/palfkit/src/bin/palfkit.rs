//! Batch interface: validate diagrams, build their categories, compute
//! Hochschild tables and lattice invariants, or emit one consolidated
//! report.
//!
//! Exit codes: 0 success, 1 domain violation, 2 malformed input, 3
//! incomplete enumeration under --strict.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use palfkit::diagram::{BraneAssignment, CurveDiagram};
use palfkit::exactalg::Rat;
use palfkit::format::{self, FieldSpec};
use palfkit::fscat::build_fs_category;
use palfkit::moduli;
use palfkit::report;

#[derive(Parser)]
#[command(name = "palfkit", version, about = "Curve-diagram categories on surfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a diagram file and print every violation.
    Validate {
        file: PathBuf,
    },
    /// Build the category of a diagram and write it as a category file.
    Category {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-face multiplicity cap for the polygon search.
        #[arg(long = "max-mult", default_value_t = moduli::DEFAULT_MULT_CAP)]
        max_mult: usize,
        /// Fail (exit 3) when the enumeration may be incomplete.
        #[arg(long)]
        strict: bool,
    },
    /// Hochschild cohomology table of a category file.
    Hh {
        file: PathBuf,
        /// Degree window, e.g. -2..3
        #[arg(long, default_value = "-2..3", allow_hyphen_values = true)]
        degrees: String,
        /// Ground field: q or fp:P.
        #[arg(long, default_value = "q")]
        field: String,
        /// Override the cochain length cap (only relevant with
        /// positive-degree morphisms).
        #[arg(long = "length-cap")]
        length_cap: Option<usize>,
    },
    /// Milnor lattice, Euler pairing, comparison and total-space homology.
    Invariants {
        file: PathBuf,
    },
    /// Consolidated report over one diagram.
    Report {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, default_value = "-2..3", allow_hyphen_values = true)]
        degrees: String,
        #[arg(long = "max-mult", default_value_t = moduli::DEFAULT_MULT_CAP)]
        max_mult: usize,
        #[arg(long)]
        strict: bool,
    },
}

const EXIT_OK: u8 = 0;
const EXIT_DOMAIN: u8 = 1;
const EXIT_MALFORMED: u8 = 2;
const EXIT_INCOMPLETE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Validate { file } => cmd_validate(&file),
        Cmd::Category { file, out, max_mult, strict } => {
            cmd_category(&file, out.as_deref(), max_mult, strict)
        }
        Cmd::Hh { file, degrees, field, length_cap } => {
            cmd_hh(&file, &degrees, &field, length_cap)
        }
        Cmd::Invariants { file } => cmd_invariants(&file),
        Cmd::Report { file, out, field, degrees, max_mult, strict } => {
            cmd_report(&file, out.as_deref(), &field, &degrees, max_mult, strict)
        }
    };
    ExitCode::from(code)
}

fn load_diagram(path: &Path) -> Result<(CurveDiagram, BraneAssignment), u8> {
    format::load_diagram(path).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_MALFORMED
    })
}

fn parse_degrees(s: &str) -> Result<(i64, i64), u8> {
    let parts: Vec<&str> = s.split("..").collect();
    let parse = |x: &str| x.trim().parse::<i64>();
    if parts.len() == 2 {
        if let (Ok(a), Ok(b)) = (parse(parts[0]), parse(parts[1])) {
            if a <= b {
                return Ok((a, b));
            }
        }
    }
    eprintln!("error: degree window must look like -2..3, got {s}");
    Err(EXIT_MALFORMED)
}

fn cmd_validate(path: &Path) -> u8 {
    let (d, b) = match load_diagram(path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let derr = d.validate();
    let berr = if derr.is_empty() { d.validate_branes(&b) } else { Vec::new() };
    print!("{}", report::render_surface(&d));
    print!("{}", report::render_validation(&derr, &berr));
    if derr.is_empty() && berr.is_empty() {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    }
}

fn cmd_category(path: &Path, out: Option<&Path>, max_mult: usize, strict: bool) -> u8 {
    let (d, b) = match load_diagram(path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let res = match build_fs_category::<Rat>(&d, &b, max_mult) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DOMAIN;
        }
    };
    print!("{}", report::render_category(&d, &res));
    print!("{}", report::render_relation_status(&res.category, res.complete));
    let file = format::category_to_file(&res.category, "q");
    let text = format::to_json_pretty(&file);
    match out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: {e}");
                return EXIT_MALFORMED;
            }
            println!("category written to {}", p.display());
        }
        None => print!("{text}"),
    }
    if !res.complete {
        println!("warning: enumeration hit the multiplicity cap; output may be partial");
        if strict {
            return EXIT_INCOMPLETE;
        }
    }
    EXIT_OK
}

fn cmd_hh(path: &Path, degrees: &str, field: &str, length_cap: Option<usize>) -> u8 {
    let range = match parse_degrees(degrees) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let spec: FieldSpec = match field.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_MALFORMED;
        }
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_MALFORMED;
        }
    };
    let rendered = match spec {
        FieldSpec::Rational => match format::parse_category_rat(&text) {
            Ok(cat) => report::hh_section(&cat, range, length_cap, "q"),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_MALFORMED;
            }
        },
        FieldSpec::Prime(p) => match format::parse_category_fp(&text, p) {
            Ok(cat) => report::hh_section(&cat, range, length_cap, &format!("fp:{p}")),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_MALFORMED;
            }
        },
    };
    print!("{rendered}");
    EXIT_OK
}

fn cmd_invariants(path: &Path) -> u8 {
    let (d, b) = match load_diagram(path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    match invariants_section(&d, &b) {
        Ok(text) => {
            print!("{text}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn invariants_section(d: &CurveDiagram, b: &BraneAssignment) -> Result<String, String> {
    let errs = d.validate();
    if !errs.is_empty() {
        return Err(format!("diagram invalid: {errs:?}"));
    }
    report::invariants_section(d, b)
}

fn cmd_report(
    path: &Path,
    out: Option<&Path>,
    field: &str,
    degrees: &str,
    max_mult: usize,
    strict: bool,
) -> u8 {
    let range = match parse_degrees(degrees) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let spec: FieldSpec = match field.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_MALFORMED;
        }
    };
    let (d, b) = match load_diagram(path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let title = path.display().to_string();
    let (text, complete) = match report::full_report(&title, &d, &b, spec, range, max_mult) {
        Ok(v) => v,
        Err(partial) => {
            print!("{partial}");
            return EXIT_DOMAIN;
        }
    };
    match out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: {e}");
                return EXIT_MALFORMED;
            }
            println!("report written to {}", p.display());
        }
        None => print!("{text}"),
    }
    if !complete && strict {
        return EXIT_INCOMPLETE;
    }
    EXIT_OK
}
