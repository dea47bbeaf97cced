//! Command-line front end for the associahedron diagonal.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a failing property, 2 on a
//! usage error (bad flags or out-of-range arguments).

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use assoc_diagonal::ainfinity::OpKind;
use assoc_diagonal::assoc_core::TamariLattice;
use assoc_diagonal::diagonal::DiagonalTable;
use assoc_diagonal::render::{
    boundary_listing, diagonal_listing, faces_listing, tensor_ops_listing, Format, Notation,
};
use assoc_diagonal::verify::{self, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "assocdiag",
    version,
    about = "Faces, boundaries and the diagonal of associahedra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the faces of K_n of one dimension.
    Faces {
        /// Number of leaves of the associahedron K_n.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        /// text, json or latex.
        #[arg(long, default_value = "text")]
        format: Format,
        /// operator, parens or tree.
        #[arg(long, default_value = "operator")]
        notation: Notation,
    },
    /// Print the diagonal of the top cell of K_n.
    Diagonal {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long, default_value = "operator")]
        notation: Notation,
    },
    /// Print the signed facets of a face of K_n, given as a composition such as "d_(1,1)d_(2,1)".
    Boundary {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        face: String,
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long, default_value = "operator")]
        notation: Notation,
    },
    /// Print the tensor-product operation of arity n on coalgebras or algebras.
    TensorOps {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Print the Tamari lattice on binary trees with n leaves.
    Tamari {
        #[arg(long)]
        n: usize,
        /// Emit Graphviz instead of a list of cover relations.
        #[arg(long)]
        dot: bool,
    },
    /// Run verification suites and print a JSON certificate.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Check K_{m+2} for every m up to this bound.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Flip the sign of one top-cell diagonal term, given as "ARITY,INDEX".
        /// A negative control for the chain-map suite.
        #[arg(long, hide = true, value_parser = parse_flip)]
        flip_sign: Option<(usize, usize)>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Coalg,
    Alg,
}

impl From<SideArg> for OpKind {
    fn from(s: SideArg) -> OpKind {
        match s {
            SideArg::Coalg => OpKind::Coalg,
            SideArg::Alg => OpKind::Alg,
        }
    }
}

const USAGE: u8 = 2;

fn parse_flip(s: &str) -> Result<(usize, usize), String> {
    let (a, i) = s
        .split_once(',')
        .ok_or_else(|| format!("{s:?} is not ARITY,INDEX"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(a)?, num(i)?))
}

fn tamari_text(n: usize) -> String {
    let lattice = TamariLattice::new(n);
    let mut out = String::new();
    for &(a, b) in &lattice.covers {
        out.push_str(&format!(
            "{} < {}\n",
            lattice.elements[a], lattice.elements[b]
        ));
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match cli.command {
        Command::Faces {
            n,
            dim,
            format,
            notation,
        } => faces_listing(n, dim, format, notation),
        Command::Diagonal {
            n,
            format,
            notation,
        } => diagonal_listing(n, format, notation),
        Command::Boundary {
            n,
            face,
            format,
            notation,
        } => boundary_listing(n, &face, format, notation),
        Command::TensorOps { side, n, format } => tensor_ops_listing(side.into(), n, format),
        Command::Tamari { n, dot } if n >= 2 => Ok(if dot {
            TamariLattice::new(n).to_dot()
        } else {
            tamari_text(n)
        }),
        Command::Tamari { n, .. } => {
            eprintln!("error: --n {n} is out of range (at least 2 leaves)");
            return ExitCode::from(USAGE);
        }
        Command::Verify {
            suite,
            max_n,
            flip_sign,
        } => {
            let outcome = match flip_sign {
                None => verify::run(suite, max_n),
                Some((arity, index)) => verify::run_with_table(suite, max_n, || {
                    DiagonalTable::with_flipped_sign(arity, index)
                }),
            };
            return match outcome {
                Ok(cert) => {
                    print!("{}", cert.to_json());
                    match cert.first_failure() {
                        None => ExitCode::SUCCESS,
                        Some(check) => {
                            eprintln!(
                                "FAIL {} {} at n = {}: {}",
                                check.suite,
                                check.property,
                                check.n,
                                check.counterexample.as_deref().unwrap_or("")
                            );
                            ExitCode::from(1)
                        }
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(USAGE)
                }
            };
        }
    };
    match output {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }
    }
}
