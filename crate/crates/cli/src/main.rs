//! `csf`: evaluate the operators, reproduce the dimension table, and run the
//! verification suites from the command line.
//!
//! Exit status: 0 on success, 1 when an identity that should hold does not,
//! 2 on bad usage or input.

mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use csf_core::cyclic_operators::{cyclic_derivative, CyclicVariant, OperatorKind};
use csf_core::free_algebra::{word_from_index, Index, Poly, Word};
use csf_core::numeric_zeta::{csf_numeric_check, zeta_num, zeta_star_num, TruncationParams, ZetaKind};
use csf_core::relation_engine::{dims_table, key_prop_check, kawashima_span, membership, KawashimaVariant};
use csf_core::suites::{run_suite, Suite, SuiteBounds, NUMERIC_TOLERANCE};
use csf_core::zeta_maps::{apply_alpha_tilde, apply_automorphism, apply_d, star, star_bar, Automorphism};
use csf_core::Error;

use output::{print_poly, Format};

#[derive(Parser, Debug)]
#[command(name = "csf", version, about = "Cyclic sum formulas on the Hoffman algebra")]
struct Cli {
    /// Output format for polynomials and tables.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MapName {
    Gamma,
    GammaInv,
    Phi,
    Alpha,
    D,
    AlphaTilde,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    C,
    Cbar,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply one of the algebra maps to a polynomial.
    Map {
        #[arg(long, value_enum)]
        name: MapName,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
    },
    /// Harmonic product of two words or indices.
    Star {
        #[arg(long)]
        bar: bool,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    Rho(OperatorArgs),
    Rhobar(OperatorArgs),
    Del(OperatorArgs),
    /// Hoffman–Ohno cyclic derivative `C_w(W)` or `C̄_w(W)`.
    Cderiv {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long)]
        word: Word,
        /// The argument `W` (defaults to 1).
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        input: String,
    },
    /// Membership of `ρₙ(w)` (or `ρ̄ₙ(w)` with --bar) in the Kawashima span.
    Member {
        #[arg(long)]
        bar: bool,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        word: Word,
    },
    /// Both sides of the key proposition.
    Keyprop {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        ks: Index,
    },
    /// Dimensions of the spaces spanned by `ρₙ`-images.
    Dims {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        max_weight: u32,
    },
    /// Numeric `ζ` or `ζ*` by truncated summation.
    Zeta {
        #[arg(long)]
        star: bool,
        #[arg(long)]
        index: Index,
        #[arg(long = "M", default_value_t = csf_core::numeric_zeta::DEFAULT_CUTOFF)]
        cutoff: u64,
    },
    /// Numeric check of the cyclic sum formula for an index.
    CheckCsf {
        #[arg(long)]
        star: bool,
        #[arg(long)]
        ks: Index,
        #[arg(long = "M", default_value_t = csf_core::numeric_zeta::DEFAULT_CUTOFF)]
        cutoff: u64,
    },
    /// Run a verification suite (or `all`).
    Verify {
        suite: String,
        #[arg(long)]
        max_weight: Option<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long = "M")]
        cutoff: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(clap::Args, Debug)]
struct OperatorArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long)]
    word: Word,
}

enum Failure {
    Input(Error),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInconsistency(msg) => Failure::Math(format!("internal inconsistency: {msg}")),
            other => Failure::Input(other),
        }
    }
}

type Outcome = Result<(), Failure>;

/// A word (`[xy]+` or `1`) or, failing that, an index such as `2,1`.
fn word_or_index(s: &str) -> Result<Word, Error> {
    s.parse::<Word>()
        .or_else(|_| s.parse::<Index>().map(|i| word_from_index(&i)))
        .map_err(|_| Error::Parse(format!("`{s}` is neither a word nor an index")))
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Map { name, input } => {
            let p: Poly = input.parse()?;
            let out = match name {
                MapName::Gamma => apply_automorphism(Automorphism::Gamma, &p),
                MapName::GammaInv => apply_automorphism(Automorphism::GammaInv, &p),
                MapName::Phi => apply_automorphism(Automorphism::Phi, &p),
                MapName::Alpha => apply_automorphism(Automorphism::Alpha, &p),
                MapName::D => apply_d(&p)?,
                MapName::AlphaTilde => apply_alpha_tilde(&p)?,
            };
            print_poly(&out, format);
        }
        Command::Star { bar, left, right } => {
            let (l, r) = (Poly::from(word_or_index(&left)?), Poly::from(word_or_index(&right)?));
            let out = if bar { star_bar(&l, &r)? } else { star(&l, &r)? };
            print_poly(&out, format);
        }
        Command::Rho(a) => print_poly(&OperatorKind::Rho.apply(a.n as usize, &Poly::from(a.word)), format),
        Command::Rhobar(a) => print_poly(&OperatorKind::RhoBar.apply(a.n as usize, &Poly::from(a.word)), format),
        Command::Del(a) => print_poly(&OperatorKind::Partial.apply(a.n as usize, &Poly::from(a.word)), format),
        Command::Cderiv { variant, word, input } => {
            let big_w: Poly = input.parse()?;
            let v = match variant {
                Variant::C => CyclicVariant::C,
                Variant::Cbar => CyclicVariant::CBar,
            };
            print_poly(&cyclic_derivative(v, &word, &big_w), format);
        }
        Command::Member { bar, n, word } => {
            let n = n as usize;
            let weight = word.degree() + n;
            let (variant, kind) = if bar {
                (KawashimaVariant::StarBar, OperatorKind::RhoBar)
            } else {
                (KawashimaVariant::Star, OperatorKind::Rho)
            };
            let image = kind.apply(n, &Poly::from(&word));
            if weight < 3 || image.is_zero() {
                println!("member (zero image)");
                return Ok(());
            }
            let cert = membership(&kawashima_span(weight, variant)?, &image)?;
            output::print_certificate(&cert, format);
            if !cert.member {
                return Err(Failure::Math(format!("image of {word} is not in the {variant} span")));
            }
        }
        Command::Keyprop { n, ks } => {
            let r = key_prop_check(n as usize, &ks)?;
            output::print_key_prop(&r, format);
            if !r.equal {
                return Err(Failure::Math(format!("key proposition fails for n = {n}, ks = ({ks})")));
            }
        }
        Command::Dims { max_weight } => {
            let table = dims_table(max_weight as usize)?;
            match format {
                Format::Text => print!("{}", table.to_text()),
                Format::Structured => println!("{}", table.to_json()),
            }
        }
        Command::Zeta { star, index, cutoff } => {
            let params = TruncationParams::with_cutoff(cutoff)?;
            let r = if star {
                zeta_star_num(&index, &params)?
            } else {
                zeta_num(&index, &params)?
            };
            output::print_numeric(&r, format);
        }
        Command::CheckCsf { star, ks, cutoff } => {
            let params = TruncationParams::with_cutoff(cutoff)?;
            let kind = if star { ZetaKind::Mzsv } else { ZetaKind::Mzv };
            let r = csf_numeric_check(&ks, kind, &params)?;
            output::print_csf(&r, format);
            if !r.within(NUMERIC_TOLERANCE) {
                return Err(Failure::Math(format!("difference {:e} exceeds {NUMERIC_TOLERANCE:e}", r.diff)));
            }
        }
        Command::Verify {
            suite,
            max_weight,
            max_degree,
            max_n,
            cutoff,
            samples,
            seed,
        } => {
            let bounds = SuiteBounds {
                max_weight,
                max_degree,
                max_n,
                cutoff,
                samples,
                seed,
            };
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let mut failed = 0;
            for s in suites {
                let report = run_suite(s, &bounds)?;
                println!("{report}");
                if !report.passed() {
                    failed += 1;
                }
            }
            if failed > 0 {
                return Err(Failure::Math(format!("{failed} suite(s) failed")));
            }
        }
    }
    Ok(())
}

fn configure_threads() {
    if let Some(n) = std::env::var("CSF_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
