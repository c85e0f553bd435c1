//! Command-line front end. Results go to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 success, 1 a check came out false, 2 usage, input or
//! parse errors, 3 undecidable.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::algebra::{verify_poisson, PoissonAlgebra};
use crate::coflag::{classify_coflag, tower, CoflagDatum};
use crate::crossed::{check_crossed_system, extract_crossed_system, Section};
use crate::equivalence::{decide, Decision};
use crate::error::Error;
use crate::format::{
    emit_algebra, emit_classification, emit_matrix, emit_system, parse_algebra, parse_coflag, parse_matrix,
    parse_system,
};
use crate::metabelian::classify_metabelian;
use crate::scalar::Field;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDABLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "poisson-ext", version, about = "Poisson algebra extensions over Q and small prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Poisson algebra axioms.
    Verify { algebra: PathBuf },
    /// Check the crossed-system axioms.
    CheckSystem { system: PathBuf },
    /// Write the crossed product of a crossed system.
    Product {
        system: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Decide whether two crossed systems are cohomologous.
    Equivalent { first: PathBuf, second: PathBuf },
    /// Read the crossed system of an extension off a projection.
    Extract {
        algebra: PathBuf,
        #[arg(long)]
        pi: PathBuf,
        #[arg(long)]
        section: Option<PathBuf>,
        #[arg(long)]
        target: PathBuf,
    },
    /// Classify extensions over a prime field.
    #[command(subcommand)]
    Classify(Classify),
    /// Build iterated one-dimensional extensions.
    Tower {
        algebra: PathBuf,
        #[arg(required = true)]
        coflags: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Classify {
    /// Extensions of an algebra by the one-dimensional space.
    Coflag {
        algebra: PathBuf,
        #[arg(long, value_parser = parse_prime_field)]
        field: Field,
    },
    /// Extensions of an abelian algebra by an abelian one.
    Metabelian {
        #[arg(long = "dimP")]
        dim_p: usize,
        #[arg(long = "dimV")]
        dim_v: usize,
        #[arg(long, value_parser = parse_prime_field)]
        field: Field,
    },
}

fn parse_prime_field(text: &str) -> Result<Field, String> {
    match Field::parse(text) {
        Some(Field::Prime(p)) => Field::prime(u64::from(p)).map_err(|e| e.to_string()),
        Some(Field::Rationals) => Err("classification needs a prime field F:<p>".to_string()),
        None => Err(format!("bad field {text:?}, expected F:<p>")),
    }
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Undecidable(_) => EXIT_UNDECIDABLE,
            Error::NotAMorphism(_) | Error::NotASection | Error::InvalidCoflag { .. } | Error::NotValid(_) => {
                EXIT_FALSE
            }
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    })
}

fn in_file<T>(path: &Path, r: crate::error::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn load_algebra(path: &Path) -> Result<PoissonAlgebra, Failure> {
    in_file(path, parse_algebra(&read(path)?))
}

fn load_system(path: &Path) -> Result<crate::crossed::PreCrossedDatum, Failure> {
    in_file(path, parse_system(&read(path)?))
}

/// Brings an algebra into the requested field, reducing rational input.
fn into_field(a: PoissonAlgebra, field: Field) -> Result<PoissonAlgebra, Failure> {
    match a.field() {
        f if f == field => Ok(a),
        Field::Rationals => Ok(a.convert(field)?),
        other => Err(Failure {
            code: EXIT_USAGE,
            message: format!("algebra is over {other}, requested {field}"),
        }),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("write failed: {e}"),
    })
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Verify { algebra } => {
            let rep = verify_poisson(&load_algebra(&algebra)?);
            write_out(out, &rep.to_string())?;
            Ok(if rep.passed() { EXIT_OK } else { EXIT_FALSE })
        }
        Command::CheckSystem { system } => {
            let rep = check_crossed_system(&load_system(&system)?);
            write_out(out, &rep.to_string())?;
            Ok(if rep.passed() { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Product { system, output } => {
            let d = load_system(&system)?;
            let rep = check_crossed_system(&d);
            if !rep.passed() {
                write_out(out, &rep.to_string())?;
                return Ok(EXIT_FALSE);
            }
            fs::write(&output, emit_algebra(&d.crossed_product())).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: format!("{}: {e}", output.display()),
            })?;
            Ok(EXIT_OK)
        }
        Command::Equivalent { first, second } => {
            let (d, d2) = (load_system(&first)?, load_system(&second)?);
            match decide(&d, &d2)? {
                Decision::Equivalent(w) => {
                    write_out(out, "cohomologous\n")?;
                    write_out(out, &emit_matrix(&w.r))?;
                    Ok(EXIT_OK)
                }
                Decision::NotEquivalent => {
                    write_out(out, "not cohomologous\n")?;
                    Ok(EXIT_FALSE)
                }
                Decision::Undecidable(why) => {
                    write_out(out, &format!("undecidable: {why}\n"))?;
                    Ok(EXIT_UNDECIDABLE)
                }
            }
        }
        Command::Extract {
            algebra,
            pi,
            section,
            target,
        } => {
            let e = load_algebra(&algebra)?;
            let p = load_algebra(&target)?;
            let pi_m = in_file(&pi, parse_matrix(&read(&pi)?, e.field()))?;
            let sec = match section {
                Some(s) => {
                    let s_m = in_file(&s, parse_matrix(&read(&s)?, e.field()))?;
                    Section::new(pi_m, s_m)?
                }
                None => Section::canonical(pi_m)?,
            };
            let (d, _) = extract_crossed_system(&e, &p, &sec)?;
            write_out(out, &emit_system(&d))?;
            Ok(EXIT_OK)
        }
        Command::Classify(Classify::Coflag { algebra, field }) => {
            let p = into_field(load_algebra(&algebra)?, field)?;
            write_out(out, &emit_classification(&classify_coflag(&p, field)?))?;
            Ok(EXIT_OK)
        }
        Command::Classify(Classify::Metabelian { dim_p, dim_v, field }) => {
            write_out(out, &emit_classification(&classify_metabelian(dim_p, dim_v, field)?))?;
            Ok(EXIT_OK)
        }
        Command::Tower { algebra, coflags } => {
            let mut p = load_algebra(&algebra)?;
            let mut choices: Vec<CoflagDatum> = Vec::new();
            for path in &coflags {
                let (field, c) = in_file(path, parse_coflag(&read(path)?))?;
                if field != p.field() {
                    if !choices.is_empty() {
                        return Err(Failure {
                            code: EXIT_USAGE,
                            message: format!("{}: all co-flag files must share one field", path.display()),
                        });
                    }
                    p = into_field(p, field)?;
                }
                choices.push(c);
            }
            let stages = tower(&p, &choices)?;
            let dims: Vec<String> = stages.iter().map(|a| a.dim().to_string()).collect();
            write_out(out, &format!("# tower dims {}\n", dims.join(" ")))?;
            write_out(out, &emit_algebra(stages.last().expect("nonempty")))?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line `argv` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
