//! Command-line front end: configuration, dispatch and report serialization.

pub mod grammar;
mod text;

use std::path::PathBuf;
use std::time::Instant;

use alexlarge::algebra::IntMatrix;
use alexlarge::covers::{
    betti_via_oracle, cheeger_constant, pulled_back_characters, rank_gradient, StrataCache, TowerSpec,
};
use alexlarge::fox::{alexander_matrix, alexander_polynomial, specialize_alexander, strata_depth, Character};
use alexlarge::largeness::{
    baumslag_pride, build_certificate, find_invariant_subtorus, kronecker_test, subtorus_contained, torsion_scan,
    BpReport, KroneckerVerdict, LargenessCertificate, ScanReport, Subtorus, SubtorusSearch,
};
use alexlarge::presentation::{
    betti_numbers, make_quotient, parse_presentation, reidemeister_schreier, FiniteAbelianQuotient, Presentation,
};
use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use grammar::{parse_int_list, parse_matrix, CharacterSpec, QuotientSpec};

pub const SCHEMA: &str = "alexlarge-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Alexmatrix,
    Alexpoly,
    Strata,
    Betti,
    OracleBetti,
    TorsionScan,
    SubtorusCheck,
    CertifyLarge,
    RsRewrite,
    Kronecker,
    BpCheck,
    Cheeger,
    RankGradient,
    Specialize,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Alexmatrix => "alexmatrix",
            Command::Alexpoly => "alexpoly",
            Command::Strata => "strata",
            Command::Betti => "betti",
            Command::OracleBetti => "oracle-betti",
            Command::TorsionScan => "torsion-scan",
            Command::SubtorusCheck => "subtorus-check",
            Command::CertifyLarge => "certify-large",
            Command::RsRewrite => "rs-rewrite",
            Command::Kronecker => "kronecker",
            Command::BpCheck => "bp-check",
            Command::Cheeger => "cheeger",
            Command::RankGradient => "rank-gradient",
            Command::Specialize => "specialize",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Alexander invariants, finite abelian covers and largeness certificates
/// of finitely presented groups.
#[derive(Debug, Parser)]
#[command(name = "alexlarge", version)]
pub struct Cli {
    pub command: Command,
    /// `.fp` presentation file; an integer matrix file for `kronecker`.
    pub input: PathBuf,
    /// Finite abelian quotient `gen:image,... mod e1[,e2,...]`; repeat for `rank-gradient`.
    #[arg(long = "quotient", value_name = "SPEC")]
    pub quotients: Vec<QuotientSpec>,
    /// Character `e1,e2,... mod L`.
    #[arg(long, value_name = "SPEC", allow_hyphen_values = true)]
    pub character: Option<CharacterSpec>,
    /// Also compute Betti numbers by rewriting and compare.
    #[arg(long)]
    pub check_oracle: bool,
    #[arg(long, default_value_t = 12)]
    pub max_order: u64,
    #[arg(long, default_value_t = 2)]
    pub a_max: i64,
    #[arg(long, default_value_t = 6)]
    pub b_max: u64,
    #[arg(long, default_value_t = 3)]
    pub n0: u32,
    /// Prime for certificates and rank gradients; certificates default to the smallest admissible one.
    #[arg(long)]
    pub prime: Option<u64>,
    #[arg(long, default_value_t = 20)]
    pub cheeger_bound: u64,
    /// Cap on enumerated characters or tested subtori.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    /// Largest cover index for `bp-check`.
    #[arg(long, default_value_t = 8)]
    pub n_max: u64,
    /// Number of tower levels for `rank-gradient`; defaults to all given quotients.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Free coordinate kept as the variable `t` by `specialize`.
    #[arg(long, default_value_t = 0)]
    pub t_index: usize,
    /// Subtorus direction `a1,...,am`; without it, `subtorus-check` and `certify-large` search.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub direction: Option<String>,
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub offsets: Option<String>,
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub torsion_offsets: Option<String>,
    /// Offset denominator `B`.
    #[arg(long, default_value_t = 1)]
    pub order: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

/// Explicit subtorus given on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtorusSpec {
    pub direction: Vec<i64>,
    pub offsets: Vec<i64>,
    pub torsion_offsets: Vec<i64>,
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub quotients: Vec<QuotientSpec>,
    pub character: Option<CharacterSpec>,
    pub check_oracle: bool,
    pub max_order: u64,
    pub a_max: i64,
    pub b_max: u64,
    pub n0: u32,
    pub prime: Option<u64>,
    pub cheeger_bound: u64,
    pub budget: u64,
    pub n_max: u64,
    pub depth: Option<usize>,
    pub t_index: usize,
    pub subtorus: Option<SubtorusSpec>,
    pub format: Format,
    pub timing: bool,
}

/// Invalid invocation; reported on stderr with exit status 2.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, UsageError> {
        let list = |s: &Option<String>| -> Result<Vec<i64>, UsageError> {
            parse_int_list(s.as_deref().unwrap_or("")).map_err(|e| UsageError(e.0))
        };
        let subtorus = match &self.direction {
            Some(_) => {
                let direction = list(&self.direction)?;
                Some(SubtorusSpec {
                    offsets: match &self.offsets {
                        Some(_) => list(&self.offsets)?,
                        None => vec![0; direction.len()],
                    },
                    direction,
                    torsion_offsets: list(&self.torsion_offsets)?,
                    order: self.order,
                })
            }
            None if self.offsets.is_some() || self.torsion_offsets.is_some() => {
                return Err(UsageError("subtorus offsets given without --direction".into()))
            }
            None => None,
        };
        let config = RunConfig {
            command: self.command,
            input: self.input,
            quotients: self.quotients,
            character: self.character,
            check_oracle: self.check_oracle,
            max_order: self.max_order,
            a_max: self.a_max,
            b_max: self.b_max,
            n0: self.n0,
            prime: self.prime,
            cheeger_bound: self.cheeger_bound,
            budget: self.budget,
            n_max: self.n_max,
            depth: self.depth,
            t_index: self.t_index,
            subtorus,
            format: self.format,
            timing: self.timing,
        };
        config.validate()?;
        Ok(config)
    }
}

impl RunConfig {
    /// Command-line defaults for `command` on `input`.
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            input: input.into(),
            quotients: Vec::new(),
            character: None,
            check_oracle: false,
            max_order: 12,
            a_max: 2,
            b_max: 6,
            n0: 3,
            prime: None,
            cheeger_bound: 20,
            budget: 1_000_000,
            n_max: 8,
            depth: None,
            t_index: 0,
            subtorus: None,
            format: Format::Text,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        let positive = [
            ("--max-order", self.max_order),
            ("--a-max", self.a_max.max(0) as u64),
            ("--b-max", self.b_max),
            ("--n0", self.n0 as u64),
            ("--cheeger-bound", self.cheeger_bound),
            ("--budget", self.budget),
            ("--n-max", self.n_max),
            ("--order", self.subtorus.as_ref().map_or(1, |s| s.order)),
        ];
        for (flag, v) in positive {
            if v == 0 {
                return Err(UsageError(format!("{flag} must be positive")));
            }
        }
        if self.depth == Some(0) {
            return Err(UsageError("--depth must be positive".into()));
        }
        let need_quotient = matches!(
            self.command,
            Command::Betti | Command::OracleBetti | Command::RsRewrite | Command::Cheeger | Command::RankGradient
        );
        if need_quotient && self.quotients.is_empty() {
            return Err(UsageError(format!("{} requires --quotient", self.command.name())));
        }
        if self.command != Command::RankGradient && self.quotients.len() > 1 {
            return Err(UsageError("--quotient may be repeated only for rank-gradient".into()));
        }
        match self.command {
            Command::Strata if self.quotients.is_empty() == self.character.is_none() => {
                Err(UsageError("strata requires exactly one of --quotient and --character".into()))
            }
            Command::Specialize if self.character.is_none() => Err(UsageError("specialize requires --character".into())),
            Command::RankGradient if self.prime.is_none() => Err(UsageError("rank-gradient requires --prime".into())),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientEcho {
    pub orders: Vec<u64>,
    pub images: Vec<Vec<u64>>,
}

impl From<&FiniteAbelianQuotient> for QuotientEcho {
    fn from(q: &FiniteAbelianQuotient) -> Self {
        QuotientEcho {
            orders: q.orders().to_vec(),
            images: q.images().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataRow {
    pub order: u64,
    pub exponents: Vec<u64>,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradientLevel {
    pub level: usize,
    pub index: u64,
    pub mod_p_rank: usize,
    pub ratio: String,
}

/// Per-command result. Polynomials are sorted term lists `coeff*x1^e1*...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Alexmatrix {
        variables: Vec<String>,
        rows: usize,
        cols: usize,
        entries: Vec<Vec<Vec<String>>>,
    },
    Alexpoly {
        variables: Vec<String>,
        terms: Vec<String>,
    },
    Strata {
        characters: Vec<StrataRow>,
    },
    Betti {
        quotient: QuotientEcho,
        b1: usize,
        oracle_b1: Option<usize>,
        oracle_agree: Option<bool>,
    },
    OracleBetti {
        quotient: QuotientEcho,
        b1: usize,
    },
    TorsionScan(ScanReport),
    SubtorusCheck {
        subtorus: Subtorus,
        contained: bool,
    },
    SubtorusSearch(SubtorusSearch),
    Certificate(LargenessCertificate),
    RsRewrite {
        quotient: QuotientEcho,
        index: u64,
        generators: usize,
        relators: usize,
        presentation: String,
        b1: usize,
        torsion: Vec<String>,
    },
    Kronecker {
        quasi_unipotent: bool,
        cyclotomic_orders: Vec<u64>,
        witness: Option<String>,
    },
    BpCheck(BpReport),
    Cheeger {
        quotient: QuotientEcho,
        vertices: u64,
        value: String,
    },
    RankGradient {
        prime: u64,
        levels: Vec<GradientLevel>,
        minimum: String,
    },
    Specialize {
        t_index: usize,
        character: CharacterSpec,
        polynomial: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_micros: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub config: RunConfig,
    pub result: Option<Payload>,
    pub error: Option<String>,
    pub warnings: Vec<String>,
    pub timing: Option<Timing>,
}

impl Report {
    pub fn succeeded(&self) -> bool {
        self.error.is_none()
    }
}

type Outcome<T> = Result<T, String>;

fn domain<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn read_input(config: &RunConfig) -> Outcome<String> {
    std::fs::read_to_string(&config.input).map_err(|e| format!("cannot read {}: {e}", config.input.display()))
}

/// Generators not named in the spec map to zero.
fn resolve_quotient(p: &Presentation, spec: &QuotientSpec) -> Outcome<FiniteAbelianQuotient> {
    let mut images = vec![vec![0i64; spec.orders.len()]; p.generator_count()];
    for (name, image) in &spec.images {
        let g = p
            .generator_index(name)
            .ok_or_else(|| format!("quotient names unknown generator `{name}`"))?;
        images[g] = image.clone();
    }
    make_quotient(p, &images, &spec.orders).map_err(domain)
}

fn character(spec: &CharacterSpec) -> Outcome<Character> {
    Character::new(spec.order, spec.exponents.clone()).map_err(domain)
}

enum Source {
    Given(Subtorus),
    Searched(SubtorusSearch),
}

fn subtorus(config: &RunConfig, p: &Presentation, warnings: &mut Vec<String>) -> Outcome<Source> {
    match &config.subtorus {
        Some(s) => Subtorus::new(s.direction.clone(), s.offsets.clone(), s.torsion_offsets.clone(), s.order)
            .map(Source::Given)
            .map_err(domain),
        None => {
            let search = find_invariant_subtorus(p, config.a_max, config.b_max, config.budget).map_err(domain)?;
            if search.exhausted {
                warnings.push(format!("search stopped after {} candidates", search.candidates_tested));
            }
            Ok(Source::Searched(search))
        }
    }
}

fn kronecker(text: &str) -> Outcome<Payload> {
    let rows = parse_matrix(text).map_err(domain)?;
    let m = IntMatrix::from_rows(&rows).map_err(domain)?;
    Ok(match kronecker_test(&m).map_err(domain)? {
        KroneckerVerdict::QuasiUnipotent { orders } => Payload::Kronecker {
            quasi_unipotent: true,
            cyclotomic_orders: orders,
            witness: None,
        },
        KroneckerVerdict::SpectralRadiusGreaterThanOne {
            cyclotomic_orders,
            witness,
        } => Payload::Kronecker {
            quasi_unipotent: false,
            cyclotomic_orders,
            witness: Some(witness.render("x")),
        },
    })
}

fn dispatch(config: &RunConfig, warnings: &mut Vec<String>) -> Outcome<Payload> {
    let text = read_input(config)?;
    if config.command == Command::Kronecker {
        return kronecker(&text);
    }
    let parsed = parse_presentation(&text).map_err(domain)?;
    warnings.extend(parsed.warnings);
    let p = parsed.presentation;
    let quotient = || resolve_quotient(&p, &config.quotients[0]);

    Ok(match config.command {
        Command::Alexmatrix => {
            let am = alexander_matrix(&p);
            let variables = am.polynomial().variable_names();
            Payload::Alexmatrix {
                rows: am.rows(),
                cols: am.cols(),
                entries: am
                    .entries()
                    .iter()
                    .map(|row| row.iter().map(|e| e.term_strings(&variables)).collect())
                    .collect(),
                variables,
            }
        }
        Command::Alexpoly => {
            let poly = alexander_polynomial(&p);
            Payload::Alexpoly {
                variables: poly.variable_names(),
                terms: poly.term_strings(),
            }
        }
        Command::Strata => {
            let am = alexander_matrix(&p);
            let characters = match &config.character {
                Some(spec) => vec![character(spec)?.normalized()],
                None => pulled_back_characters(&quotient()?),
            };
            let characters = characters
                .into_iter()
                .map(|chi| {
                    Ok(StrataRow {
                        depth: strata_depth(&am, &chi).map_err(domain)?,
                        order: chi.order(),
                        exponents: chi.exponents().to_vec(),
                    })
                })
                .collect::<Outcome<_>>()?;
            Payload::Strata { characters }
        }
        Command::Betti => {
            let q = quotient()?;
            let b1 = StrataCache::new(&p).betti(&q).map_err(domain)?;
            let oracle_b1 = config.check_oracle.then(|| betti_via_oracle(&p, &q));
            Payload::Betti {
                quotient: (&q).into(),
                b1,
                oracle_b1,
                oracle_agree: oracle_b1.map(|o| o == b1),
            }
        }
        Command::OracleBetti => {
            let q = quotient()?;
            Payload::OracleBetti {
                b1: betti_via_oracle(&p, &q),
                quotient: (&q).into(),
            }
        }
        Command::TorsionScan => {
            Payload::TorsionScan(torsion_scan(&p, config.max_order, config.budget as u128).map_err(domain)?)
        }
        Command::SubtorusCheck => match subtorus(config, &p, warnings)? {
            Source::Given(s) => Payload::SubtorusCheck {
                contained: subtorus_contained(&p, &s).map_err(domain)?,
                subtorus: s,
            },
            Source::Searched(search) => Payload::SubtorusSearch(search),
        },
        Command::CertifyLarge => {
            let s = match subtorus(config, &p, warnings)? {
                Source::Given(s) => s,
                Source::Searched(search) => search.subtorus.ok_or_else(|| {
                    format!(
                        "no subtorus in V_1 within A = {}, B = {} ({} candidates tested)",
                        config.a_max, config.b_max, search.candidates_tested
                    )
                })?,
            };
            Payload::Certificate(build_certificate(&p, &s, config.n0, config.prime).map_err(domain)?)
        }
        Command::RsRewrite => {
            let q = quotient()?;
            let sub = reidemeister_schreier(&p, &q);
            let betti = betti_numbers(&sub.presentation);
            Payload::RsRewrite {
                quotient: (&q).into(),
                index: q.order(),
                generators: sub.presentation.generator_count(),
                relators: sub.presentation.relators().len(),
                presentation: sub.presentation.to_fp(),
                b1: betti.b1,
                torsion: betti.torsion.iter().map(|t| t.to_string()).collect(),
            }
        }
        Command::Kronecker => unreachable!("matrix input is handled above"),
        Command::BpCheck => Payload::BpCheck(baumslag_pride(&p, config.n_max).map_err(domain)?),
        Command::Cheeger => {
            let q = quotient()?;
            Payload::Cheeger {
                value: cheeger_constant(&p, &q, config.cheeger_bound).map_err(domain)?.to_string(),
                vertices: q.order(),
                quotient: (&q).into(),
            }
        }
        Command::RankGradient => {
            let prime = config.prime.expect("validated");
            let quotients = config
                .quotients
                .iter()
                .map(|s| resolve_quotient(&p, s))
                .collect::<Outcome<Vec<_>>>()?;
            let depth = config.depth.unwrap_or(quotients.len());
            let tower = TowerSpec::new(p.clone(), prime, quotients).map_err(domain)?;
            let rg = rank_gradient(&tower, depth).map_err(domain)?;
            Payload::RankGradient {
                prime,
                levels: rg
                    .levels
                    .iter()
                    .map(|l| GradientLevel {
                        level: l.level,
                        index: l.index,
                        mod_p_rank: l.mod_p_rank,
                        ratio: l.ratio.to_string(),
                    })
                    .collect(),
                minimum: rg.minimum.to_string(),
            }
        }
        Command::Specialize => {
            let spec = config.character.clone().expect("validated");
            let poly = alexander_polynomial(&p).poly;
            let specialized = specialize_alexander(&poly, config.t_index, &character(&spec)?).map_err(domain)?;
            Payload::Specialize {
                t_index: config.t_index,
                character: spec,
                polynomial: specialized.render(),
            }
        }
    })
}

/// Runs one command. Domain errors are recorded in the report.
pub fn run(config: &RunConfig) -> Report {
    let start = Instant::now();
    let mut warnings = Vec::new();
    let outcome = dispatch(config, &mut warnings);
    let timing = config.timing.then(|| Timing {
        elapsed_micros: start.elapsed().as_micros() as u64,
    });
    let (result, error) = match outcome {
        Ok(payload) => (Some(payload), None),
        Err(e) => (None, Some(e)),
    };
    Report {
        schema: SCHEMA.to_string(),
        command: config.command.name().to_string(),
        config: config.clone(),
        result,
        error,
        warnings,
        timing,
    }
}

pub fn serialize_report(report: &Report, format: Format) -> Vec<u8> {
    let value = serde_json::to_value(report).expect("reports serialize");
    let mut out = match format {
        Format::Json => serde_json::to_string_pretty(&value).expect("values serialize"),
        Format::Text => text::flatten(&value),
    };
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out.into_bytes()
}

pub fn parse_report(bytes: &[u8]) -> serde_json::Result<Report> {
    serde_json::from_slice(bytes)
}
