use std::fmt;

use clap::{Args, Parser, Subcommand, ValueEnum};
use howechar::howe::PairKind;
use howechar::rootsys::Family;
use howechar::torus::{self, Weight};

#[derive(Parser, Debug)]
#[command(name = "howechar", version, about = "Characters of compact groups and Howe-dual representations")]
pub struct Cli {
    /// Output format; JSON is the stable contract.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Positive roots of a classical root system.
    Roots(FamilyArgs),
    /// Half-sum of positive roots.
    Rho(FamilyArgs),
    /// Weyl character of a dominant weight at torus points.
    Char(CharArgs),
    /// Dimension of an irreducible representation.
    Dim(DimArgs),
    /// Character of the dual representation attached to `ν`.
    Theta(ThetaArgs),
    /// Single-sum closed form of the character for `UU(1,p,q)`.
    ThetaClosedU1(ClosedArgs),
    /// Numerator form of the character.
    Numerator(ThetaArgs),
    /// Normalizing constant from the minimal K-type.
    Constant(KTypeArgs),
    /// K-type multiplicities down to a truncation depth.
    Ktypes(KTypeArgs),
    /// Support interval of the embedding parameter.
    Support(SupportArgs),
    /// Vandermonde sum identity check.
    Identity(IdentityArgs),
    /// Fourier transform of a coadjoint orbit.
    Rdv(RdvArgs),
    /// Independent reference evaluators.
    Oracle {
        #[command(subcommand)]
        oracle: OracleCommand,
    },
    /// Runs the invariant suite; exits 1 on any failure.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Schur polynomial from Gelfand–Tsetlin patterns at `e^{iθ}`.
    Schur {
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        lambda: Weight,
        #[command(flatten)]
        points: PointArgs,
    },
    /// Weights of all Gelfand–Tsetlin patterns.
    Gt {
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        lambda: Weight,
    },
    /// Determinant formula for the unitary orbit integral.
    Hciz {
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        lambda: Weight,
        #[command(flatten)]
        points: PointArgs,
    },
    /// Haar Monte-Carlo estimate of the unitary orbit integral.
    MonteCarlo {
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        lambda: Weight,
        #[arg(long, value_parser = parse_angles, allow_hyphen_values = true)]
        x: Angles,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A comma-separated list of reals; accepts `−` as a minus sign.
#[derive(Clone, Debug)]
pub struct Angles(pub Vec<f64>);

fn parse_angles(s: &str) -> Result<Angles, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim().replace('\u{2212}', "-");
            match t.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(format!("not a finite real: {t:?}")),
            }
        })
        .collect::<Result<_, _>>()
        .map(Angles)
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    torus::parse_weight(s).map_err(|e| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: howechar::Error| e.to_string())
}

fn parse_i64(s: &str) -> Result<i64, String> {
    s.trim().replace('\u{2212}', "-").parse().map_err(|_| format!("not an integer: {s:?}"))
}

#[derive(Args, Debug)]
pub struct PointArgs {
    /// One point per occurrence, as comma-separated radians.
    #[arg(long, value_parser = parse_angles, allow_hyphen_values = true, conflicts_with = "random_regular")]
    pub theta: Vec<Angles>,
    /// Draw this many random regular points instead.
    #[arg(long, value_name = "COUNT")]
    pub random_regular: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Minimum distance of random points from the singular set.
    #[arg(long, default_value_t = 1e-2)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Args, Debug)]
pub struct CharArgs {
    #[arg(long, value_parser = parse_family, default_value = "A")]
    pub family: Family,
    #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
    pub lambda: Weight,
    #[command(flatten)]
    pub points: PointArgs,
}

#[derive(Args, Debug)]
pub struct DimArgs {
    #[arg(long, value_parser = parse_family, default_value = "A")]
    pub family: Family,
    #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
    pub lambda: Weight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairArg {
    Uu,
    OevenSp,
    OoddSp,
    UhOstar,
}

impl From<PairArg> for PairKind {
    fn from(p: PairArg) -> PairKind {
        match p {
            PairArg::Uu => PairKind::UU,
            PairArg::OevenSp => PairKind::OevenSp,
            PairArg::OoddSp => PairKind::OoddSp,
            PairArg::UhOstar => PairKind::UHOstar,
        }
    }
}

impl fmt::Display for PairArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

/// `--m`: a number or `auto`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbedArg {
    Auto,
    Fixed(usize),
}

fn parse_embed(s: &str) -> Result<EmbedArg, String> {
    if s == "auto" {
        return Ok(EmbedArg::Auto);
    }
    s.parse().map(EmbedArg::Fixed).map_err(|_| format!("expected a non-negative integer or \"auto\", got {s:?}"))
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long, value_enum)]
    pub pair: PairArg,
    /// Rank of the compact member.
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    /// For `uu`, the embedding parameter (`auto` takes the smallest admissible);
    /// for the other pairs, the rank of the non-compact member.
    #[arg(long, value_parser = parse_embed)]
    pub m: Option<EmbedArg>,
}

#[derive(Args, Debug)]
pub struct ThetaArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Highest weight; entries may be `a/b`.
    #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
    pub nu: Weight,
    #[command(flatten)]
    pub points: PointArgs,
    /// Scale by the constant that makes the minimal K-type simple.
    #[arg(long)]
    pub normalize: bool,
    #[arg(long, default_value_t = 20)]
    pub truncation: i64,
}

#[derive(Args, Debug)]
pub struct ClosedArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long, value_parser = parse_i64, allow_hyphen_values = true)]
    pub lambda1: i64,
    #[arg(long)]
    pub m: usize,
    #[command(flatten)]
    pub points: PointArgs,
}

#[derive(Args, Debug)]
pub struct KTypeArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
    pub nu: Weight,
    /// Depth below the minimal K-type.
    #[arg(long, default_value_t = 20)]
    pub truncation: i64,
    /// Use this K-type instead of the one found by expansion.
    #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
    pub lambda_min: Option<Weight>,
}

#[derive(Args, Debug)]
pub struct SupportArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
    pub nu: Weight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IdentityMode {
    Grid,
    Random,
}

impl fmt::Display for IdentityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Args, Debug)]
pub struct IdentityArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long, value_parser = parse_i64, allow_hyphen_values = true)]
    pub k: i64,
    #[arg(long, value_enum, default_value_t = IdentityMode::Grid)]
    pub mode: IdentityMode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
}

#[derive(Args, Debug)]
pub struct RdvArgs {
    #[arg(long, value_parser = parse_family, default_value = "A")]
    pub family: Family,
    #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
    pub lambda: Weight,
    /// Points `X` of the Cartan subalgebra, passed as `--theta`.
    #[command(flatten)]
    pub points: PointArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Smaller ranges; finishes in well under a minute.
    #[arg(long)]
    pub quick: bool,
    /// Tolerance for floating-point comparisons.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}
