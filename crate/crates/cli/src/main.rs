//! `grasspack`: build, verify and export Grassmannian packings.
//!
//! Exit status: 0 when every check passes, 1 when a verification check
//! fails, 2 on usage or I/O errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use grasspack::clifford::{
    make_generators, order_formula, permutation_representation, subspace_orbit, StabilizerChain,
};
use grasspack::construction::{build_family, verify_theorem, SweepMode};
use grasspack::exact::ScaledIntMatrix;
use grasspack::export::{write_csv, ExportRecord};
use grasspack::families::{check_family, predict, realize, FamilyName};
use grasspack::grassmann::{Packing, PairStats, Subspace};

const DEFAULT_MAX_LEVEL: u32 = 5;
const MAX_LEVEL_VAR: &str = "GRASSPACK_MAX_LEVEL";

#[derive(Parser)]
#[command(
    name = "grasspack",
    version,
    about = "Exact optimal Grassmannian packings and their Clifford-group orbits"
)]
struct Cli {
    /// Worker threads for pairwise sweeps and orbit layers
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Main,
    Lines,
    Planes2,
    Quarter,
}

impl Family {
    fn orbit_family(self) -> Option<FamilyName> {
        match self {
            Family::Main => None,
            Family::Lines => Some(FamilyName::Lines),
            Family::Planes2 => Some(FamilyName::Planes2),
            Family::Quarter => Some(FamilyName::Quarter),
        }
    }

    fn label(self) -> &'static str {
        match self {
            Family::Main => "main",
            Family::Lines => "lines",
            Family::Planes2 => "planes2",
            Family::Quarter => "quarter",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Write the generator matrices of a family
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Allow levels above the default range
        #[arg(long)]
        stretch: bool,
    },
    /// Verify the distance claims of a family exactly
    #[command(group(ArgGroup::new("sweep").args(["exhaustive", "transitive"])))]
    Verify {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        i: u32,
        /// Sweep every pair (main family)
        #[arg(long)]
        exhaustive: bool,
        /// Sweep one representative after certifying transitivity (main family)
        #[arg(long)]
        transitive: bool,
        /// Write the report as JSON
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        stretch: bool,
    },
    /// Compare the closed-form group order with a stabilizer-chain computation
    Order {
        #[arg(long)]
        i: u32,
        /// Required for i = 5
        #[arg(long)]
        stretch: bool,
    },
    /// Enumerate the orbit of a subspace under the Clifford group
    Orbit {
        #[arg(long)]
        i: u32,
        /// `coords:k` or generator rows such as `1,0,0,0;0,1,1,0`
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 100_000)]
        limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// Usage and I/O problems both end with exit status 2.
fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn max_level() -> anyhow::Result<u32> {
    match std::env::var(MAX_LEVEL_VAR) {
        Ok(v) => v
            .parse()
            .map_err(|_| usage(format!("{MAX_LEVEL_VAR}={v:?} is not a level"))),
        Err(_) => Ok(DEFAULT_MAX_LEVEL),
    }
}

fn check_level(family: Family, i: u32, stretch: bool) -> anyhow::Result<()> {
    let min = family.orbit_family().map_or(1, FamilyName::min_level);
    if i < min {
        return Err(usage(format!(
            "--i must be at least {min} for {}",
            family.label()
        )));
    }
    let cap = max_level()?;
    if i > cap {
        return Err(usage(format!("--i {i} exceeds {MAX_LEVEL_VAR} = {cap}")));
    }
    if let Some(name) = family.orbit_family() {
        if i > name.default_max_level() && !stretch {
            return Err(usage(format!(
                "{} beyond i = {} is a stretch run; pass --stretch",
                family.label(),
                name.default_max_level()
            )));
        }
    }
    Ok(())
}

fn run(cmd: Command) -> anyhow::Result<bool> {
    match cmd {
        Command::Generate {
            family,
            i,
            out,
            format,
            stretch,
        } => {
            check_level(family, i, stretch)?;
            let (packing, stats) = family_packing(family, i)?;
            emit(family.label(), i, &packing, &stats, out.as_deref(), format)?;
            eprintln!(
                "{} {}: {} subspaces of G({}, {})",
                family.label(),
                i,
                packing.len(),
                packing.ambient_dim(),
                packing.dim()
            );
            Ok(true)
        }
        Command::Verify {
            family,
            i,
            exhaustive,
            transitive,
            out,
            stretch,
        } => {
            check_level(family, i, stretch)?;
            let report = match family.orbit_family() {
                None => {
                    let mode = if exhaustive {
                        SweepMode::Exhaustive
                    } else if transitive {
                        SweepMode::Transitive
                    } else {
                        SweepMode::default_for_level(i)
                    };
                    verify_theorem(i, mode)?
                }
                Some(name) => {
                    if exhaustive || transitive {
                        return Err(usage(
                            "--exhaustive/--transitive apply to --family main only",
                        ));
                    }
                    check_family(name, i)?
                }
            };
            print!("{report}");
            if let Some(path) = out {
                write_text(&path, &(report.to_json() + "\n"))?;
            }
            Ok(report.passed)
        }
        Command::Order { i, stretch } => {
            if i < 1 {
                return Err(usage("--i must be at least 1"));
            }
            if i > max_level()? {
                return Err(usage(format!("--i {i} exceeds {MAX_LEVEL_VAR}")));
            }
            if i >= 5 && !stretch {
                return Err(usage(
                    "orders beyond i = 4 are a stretch run; pass --stretch",
                ));
            }
            let gens = make_generators(i)?;
            let m = 1usize << i;
            let e1 = ScaledIntMatrix::from_rows(&[(0..m)
                .map(|c| i64::from(c == 0))
                .collect::<Vec<_>>()]);
            let rep = permutation_representation(&gens, &e1, usize::MAX)?;
            let chain = StabilizerChain::from_rep(&rep)?;
            let formula = order_formula(i);
            let expected = &formula * 2u32;
            let computed = chain.order();
            println!("|H_{i}| closed form      {formula}");
            println!("|G_{i}| = 2|H_{i}|         {expected}");
            println!("|G_{i}| stabilizer chain {computed}");
            println!(
                "degree {}, base orbit sizes {:?}",
                rep.degree(),
                chain.orbit_sizes()
            );
            let ok = computed == expected;
            println!("{}", if ok { "match" } else { "MISMATCH" });
            Ok(ok)
        }
        Command::Orbit {
            i,
            seed,
            limit,
            out,
            format,
        } => {
            check_level(Family::Main, i, false)?;
            let m = 1usize << i;
            let seed_space = parse_seed(&seed, m)?;
            let gens = make_generators(i)?;
            let orbit = subspace_orbit(&seed_space, &gens, limit)?;
            // an orbit is acted on transitively by construction
            let stats = if orbit.members.len() >= 2 {
                orbit.members.pair_stats_from_row(0)?
            } else {
                PairStats::default()
            };
            emit(
                &format!("orbit {seed}"),
                i,
                &orbit.members,
                &stats,
                out.as_deref(),
                format,
            )?;
            eprintln!(
                "orbit of {seed}: {} subspaces, min d² {}",
                orbit.members.len(),
                stats.min().map_or("-".into(), |d| d.to_string())
            );
            Ok(true)
        }
    }
}

fn family_packing(family: Family, i: u32) -> anyhow::Result<(Packing, PairStats)> {
    match family.orbit_family() {
        None => {
            let fam = build_family(i)?;
            let stats = fam.packing.pair_stats().clone();
            Ok((fam.packing, stats))
        }
        Some(name) => {
            let predicted: usize = predict(name, i)?
                .predicted_count
                .try_into()
                .map_err(|_| anyhow!("predicted size too large"))?;
            let orbit = realize(name, i, 2 * predicted + 2)?;
            let stats = if orbit.members.len() >= 2 {
                orbit.members.pair_stats_from_row(0)?
            } else {
                PairStats::default()
            };
            Ok((orbit.members, stats))
        }
    }
}

fn parse_seed(text: &str, m: usize) -> anyhow::Result<Subspace> {
    if let Some(k) = text.strip_prefix("coords:") {
        let k: usize = k.parse().map_err(|_| usage(format!("bad seed {text:?}")))?;
        if k == 0 || k >= m {
            return Err(usage(format!("coords:k needs 0 < k < {m}")));
        }
        return Ok(Subspace::coordinate(m, k)?);
    }
    let rows = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| usage(format!("bad seed {text:?}: {e}")))?;
    if rows.iter().any(|r| r.len() != m) {
        return Err(usage(format!("seed rows must have {m} entries")));
    }
    Subspace::from_int_rows(&rows).map_err(|e| usage(format!("bad seed {text:?}: {e}")))
}

fn emit(
    name: &str,
    i: u32,
    packing: &Packing,
    stats: &PairStats,
    out: Option<&Path>,
    format: Format,
) -> anyhow::Result<()> {
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Json => {
            let record = ExportRecord::new(name, i, packing, Some(stats))?;
            sink.write_all(record.to_json()?.as_bytes())?;
        }
        Format::Csv => write_csv(packing, &mut sink)?,
    }
    sink.flush()?;
    Ok(())
}

fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
