//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on invalid input.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::entangle::{
    bell_basis, bell_composite_capped, bell_even_capped, bell_family, bell_odd_capped,
    verify_bell_family, RootConvention,
};
use crate::error::Error;
use crate::finite_field::{render_representation_table, representation_table, FieldContext};
use crate::format;
use crate::galois_ring::{render_teichmuller_table, teichmuller_table, RingContext};
use crate::geometry::{
    fano_from_gf8, find_isomorphism, lifted_fano, projective_plane_capped, verify_plane_axioms,
};
use crate::mub::{mub_set, verify_mub_set, Construction, DEFAULT_CAP};

#[derive(Debug, Parser)]
#[command(
    name = "mubkit",
    version,
    about = "Exact mutually unbiased bases and Bell bases"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Largest dimension (or plane order) accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,

    /// Write output here instead of standard output. For `generate` this
    /// receives the interchange document; the report still goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a MUB set and verify it.
    Generate {
        #[arg(long)]
        dim: u64,
        #[arg(long, value_enum, default_value_t = ConstructionArg::Auto)]
        construction: ConstructionArg,
    },
    /// Re-verify a MUB interchange document (file or `-` for stdin).
    Verify { input: Option<PathBuf> },
    /// Build and verify a generalized Bell family.
    Bell {
        #[arg(long)]
        dim: u64,
        #[arg(long, value_enum, default_value_t = BellArg::Auto)]
        construction: BellArg,
    },
    /// Projective planes.
    Geometry {
        #[arg(value_enum)]
        kind: PlaneArg,
        /// Plane order for `plane`.
        #[arg(long, alias = "dim")]
        q: Option<u64>,
    },
    /// Representation tables.
    Tables {
        #[arg(value_enum)]
        table: TableArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    Auto,
    Fourier,
    Gates,
    Field,
    Ring,
    Tensor,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Self {
        match c {
            ConstructionArg::Auto => Construction::Auto,
            ConstructionArg::Fourier => Construction::Fourier,
            ConstructionArg::Gates => Construction::Gates,
            ConstructionArg::Field => Construction::Field,
            ConstructionArg::Ring => Construction::Ring,
            ConstructionArg::Tensor => Construction::Tensor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BellArg {
    Auto,
    /// Unrefined two-particle Fourier states.
    Fourier,
    Ring,
    /// Field form with ω_p.
    Field,
    /// Field form with ω_d.
    FieldDim,
    Tensor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlaneArg {
    Fano,
    Lifted,
    Plane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableArg {
    /// GF(8) powers, polynomials and tuples.
    Gf8,
    /// Teichmüller set of GR(4³).
    Gr43,
    /// The mod-2 projection of T_3* onto GF(8)*.
    Lift,
}

/// Result of one command: exit code and output text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, passed: bool) -> Self {
        Outcome {
            code: if passed { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn invalid(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdin),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            Outcome {
                code,
                stdout: if code == 0 {
                    text.clone()
                } else {
                    String::new()
                },
                stderr: if code == 0 { String::new() } else { text },
            }
        }
    }
}

pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    let result = match &cli.command {
        Command::Generate { dim, construction } => cmd_generate(cli, *dim, *construction),
        Command::Verify { input } => cmd_verify(cli, input.as_ref(), stdin),
        Command::Bell { dim, construction } => cmd_bell(cli, *dim, *construction),
        Command::Geometry { kind, q } => cmd_geometry(cli, *kind, *q),
        Command::Tables { table } => Ok(cmd_tables(cli, *table)),
    };
    let outcome = result.unwrap_or_else(Outcome::invalid);
    if outcome.code == 2 {
        return outcome;
    }
    match (&cli.out, &cli.command) {
        (Some(_), Command::Generate { .. }) | (None, _) => outcome,
        (Some(path), _) => match fs::write(path, &outcome.stdout) {
            Ok(()) => Outcome {
                stdout: String::new(),
                ..outcome
            },
            Err(e) => Outcome::invalid(format!("{}: {e}", path.display())),
        },
    }
}

fn cmd_generate(cli: &Cli, dim: u64, construction: ConstructionArg) -> Result<Outcome, Error> {
    let set = mub_set(dim, construction.into(), cli.cap)?;
    let report = verify_mub_set(&set);
    let doc = format::MubDocument::from_set(&set)?;
    if let Some(path) = &cli.out {
        let text = serde_json::to_string(&doc).expect("serializable") + "\n";
        fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    let stdout = match cli.format {
        OutputFormat::Text => {
            format::render_set_text(&set) + &format::render_mub_report_text(&report)
        }
        OutputFormat::Records => {
            let mut v = serde_json::to_value(&doc).expect("serializable");
            v["kind"] = "mub_set".into();
            v.to_string() + "\n" + &format::render_mub_report_records(&report)
        }
    };
    Ok(Outcome::ok(stdout, report.passed))
}

/// Accepts a bare document, or a records stream whose `mub_set` line holds it.
fn read_document(text: &str) -> Result<crate::mub::MubSet, Error> {
    if let Ok(set) = format::mub_from_json(text) {
        return Ok(set);
    }
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let v: serde_json::Value =
            serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))?;
        if v.get("kind").and_then(|k| k.as_str()) == Some("mub_set") {
            return format::mub_from_json(line);
        }
    }
    format::mub_from_json(text)
}

fn cmd_verify(cli: &Cli, input: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<Outcome, Error> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(e.to_string()))?;
            s
        }
    };
    let set = read_document(&text)?;
    let report = verify_mub_set(&set);
    let stdout = match cli.format {
        OutputFormat::Text => format::render_mub_report_text(&report),
        OutputFormat::Records => format::render_mub_report_records(&report),
    };
    let mut outcome = Outcome::ok(stdout, report.passed);
    if set.bases.is_empty() {
        outcome.stderr = "warning: document contains no bases\n".into();
    }
    Ok(outcome)
}

fn cmd_bell(cli: &Cli, dim: u64, construction: BellArg) -> Result<Outcome, Error> {
    if dim > cli.cap {
        return Err(Error::DimensionTooLarge { dim, cap: cli.cap });
    }
    let prime_power = crate::arith::prime_power(dim);
    let not_applicable = |route: &str| Error::RouteNotApplicable {
        route: route.into(),
        dim,
    };
    let family = match construction {
        BellArg::Auto => bell_family(dim, cli.cap)?,
        BellArg::Fourier => {
            if dim < 2 {
                return Err(Error::InvalidDimension(dim));
            }
            bell_basis(dim as usize)?
        }
        BellArg::Ring => match prime_power {
            Some((2, m)) => bell_even_capped(m, cli.cap)?,
            _ => return Err(not_applicable("ring")),
        },
        BellArg::Field | BellArg::FieldDim => match prime_power {
            Some((p, m)) if p != 2 => {
                let conv = if construction == BellArg::Field {
                    RootConvention::Characteristic
                } else {
                    RootConvention::Dimension
                };
                bell_odd_capped(p, m, conv, cli.cap)?
            }
            _ => return Err(not_applicable("field")),
        },
        BellArg::Tensor => bell_composite_capped(dim, cli.cap)?,
    };
    let report = verify_bell_family(&family);
    let stdout = match cli.format {
        OutputFormat::Text => format::render_bell_text(&family, &report),
        OutputFormat::Records => format::render_bell_records(&family, &report),
    };
    Ok(Outcome::ok(stdout, report.passed))
}

fn cmd_geometry(cli: &Cli, kind: PlaneArg, q: Option<u64>) -> Result<Outcome, Error> {
    let (plane, extra, iso_ok) = match kind {
        PlaneArg::Fano => (fano_from_gf8(), String::new(), true),
        PlaneArg::Plane => {
            let q = q.ok_or_else(|| Error::Parse("`geometry plane` needs --q".into()))?;
            (projective_plane_capped(q, cli.cap)?, String::new(), true)
        }
        PlaneArg::Lifted => {
            let ctx = RingContext::new(3)?;
            let lifted = lifted_fano(&ctx)?;
            let iso = find_isomorphism(&lifted.plane, &fano_from_gf8()).is_some();
            let extra = match cli.format {
                OutputFormat::Text => format!(
                    "isomorphic to the Fano plane: {}\n",
                    if iso { "yes" } else { "NO" }
                ),
                OutputFormat::Records => format::render_rows("lift", &lifted.table),
            };
            (lifted.plane, extra, iso)
        }
    };
    let report = verify_plane_axioms(&plane);
    let body = match cli.format {
        OutputFormat::Text => format::render_plane_text(&plane, &report),
        OutputFormat::Records => format::render_plane_records(&plane, &report),
    };
    Ok(Outcome::ok(extra + &body, report.passed && iso_ok))
}

fn cmd_tables(cli: &Cli, table: TableArg) -> Outcome {
    let gf8 = || FieldContext::new(2, 3).expect("GF(8)");
    let gr43 = || RingContext::new(3).expect("GR(4^3)");
    let stdout = match (table, cli.format) {
        (TableArg::Gf8, OutputFormat::Text) => render_representation_table(&gf8()),
        (TableArg::Gf8, OutputFormat::Records) => {
            format::render_rows("gf8", &representation_table(&gf8()))
        }
        (TableArg::Gr43, OutputFormat::Text) => render_teichmuller_table(&gr43()),
        (TableArg::Gr43, OutputFormat::Records) => {
            format::render_rows("gr43", &teichmuller_table(&gr43()))
        }
        (TableArg::Lift, fmt) => {
            let lifted = lifted_fano(&gr43()).expect("degree 3");
            match fmt {
                OutputFormat::Text => render_lift_table(&lifted.table),
                OutputFormat::Records => format::render_rows("lift", &lifted.table),
            }
        }
    };
    Outcome::ok(stdout, true)
}

fn render_lift_table(rows: &[crate::geometry::LiftRow]) -> String {
    let header = [
        "T_3*".to_string(),
        "polynomial".to_string(),
        "3-tuple over Z_4".to_string(),
        "mod 2".to_string(),
        "GF(8)*".to_string(),
    ];
    let body: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                crate::finite_field::power_label("ξ", Some(r.power)),
                r.polynomial.clone(),
                crate::finite_field::tuple_string(&r.z4_tuple),
                crate::finite_field::tuple_string(&r.z2_tuple),
                crate::finite_field::power_label("α", Some(r.image_power)),
            ]
        })
        .collect();
    crate::render::aligned_table(&header, &body)
}

/// Entry point used by the binary.
pub fn main_with_io(stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = run_args(std::env::args_os(), stdin);
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stderr.write_all(outcome.stderr.as_bytes());
    outcome.code
}
