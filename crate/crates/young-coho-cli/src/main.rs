//! Command-line front end: single values, tables, data validation, oracles.
//!
//! Exit codes: 0 success, 1 user error, 2 missing data or out-of-range
//! oracle, 3 internal invariant failure (including corrupt bundled data).

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::process::ExitCode;
use young_coho::cohomology::{
    complexity_young, ext_young, h_perm, h_young, in_principal_block, is_projective_young,
    vanishes_identically,
};
use young_coho::dyer_lashof::enumerate_shapes;
use young_coho::oracle::{bar_homology_weight, kunneth_perm};
use young_coho::schur_data::{cartan_from_decomp, decomp_from_cartan, DataStore};
use young_coho::{Error, Partition};

mod tables;

#[derive(Parser)]
#[command(name = "young-coho", version, about = "Cohomology of Young modules in characteristic p", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Data directory (default ./data, or $YOUNG_COHO_DATA)
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// dim H^i(Sigma_d, Y^lambda) over a degree range
    Young {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        d: Option<u32>,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "0..0")]
        degrees: String,
    },
    /// dim H^i(Sigma_d, M^lambda); lambda may be a composition
    Perm {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        d: Option<u32>,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "0..0")]
        degrees: String,
        /// Also run the independent oracle and compare
        #[arg(long)]
        oracle: bool,
    },
    /// dim Ext^i(Y^lambda, Y^mu) over a degree range
    Ext {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        d: Option<u32>,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long, default_value = "0..0")]
        degrees: String,
    },
    /// Does H^bullet(Sigma_d, Y^lambda) vanish identically?
    Vanishing {
        #[arg(short)]
        p: u64,
        #[arg(long)]
        lambda: String,
    },
    /// Complexity, projectivity, and block membership of Y^lambda
    Complexity {
        #[arg(short)]
        p: u64,
        #[arg(long)]
        lambda: String,
    },
    /// Monomial shapes of weight d in one homological degree
    Shapes {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        d: u32,
        #[arg(long, default_value = "0..0")]
        degrees: String,
    },
    /// Generate a full table (sigma6-young or sigma6-ext)
    Table {
        /// Which table to generate
        #[arg(long)]
        kind: Option<String>,
        /// Regenerate a bundled golden table and diff against it
        #[arg(long)]
        reproduce: Option<String>,
        #[arg(long)]
        degrees: Option<String>,
    },
    /// Bundled data operations
    Decomp {
        #[command(subcommand)]
        action: DecompCmd,
    },
    /// Run an oracle directly (bar resolution or Kunneth convolution)
    Oracle {
        #[arg(short)]
        p: u64,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "0..0")]
        degrees: String,
        /// Which oracle: bar or kunneth
        #[arg(long, default_value = "bar")]
        kind: String,
    },
}

#[derive(Subcommand)]
enum DecompCmd {
    /// Load a bundled matrix, check its invariants and Cartan round-trip
    Validate {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        d: u32,
    },
}

/// One computed record: the echoed query, values per degree, and which
/// engine path produced them.
#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct OutputRecord {
    pub query: Query,
    pub values: Vec<DegreeValue>,
    pub provenance: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct Query {
    pub p: u64,
    pub d: u32,
    pub lambda: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    pub degrees: (u32, u32),
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct DegreeValue {
    pub degree: u32,
    pub dim: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<u64>,
}

fn parse_degrees(s: &str) -> Result<(u32, u32), String> {
    let parse_one = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("bad degree '{}'", t))
    };
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (parse_one(a)?, parse_one(b)?);
        if a > b {
            return Err(format!("empty degree range {}..{}", a, b));
        }
        Ok((a, b))
    } else {
        let v = parse_one(s)?;
        Ok((v, v))
    }
}

/// Strict partition parse for Young/Ext queries.
fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

/// Lenient parse for weight-space queries: compositions sort into shape.
fn parse_composition(s: &str) -> Result<Partition, String> {
    let t = s.trim();
    if t == "0" {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for piece in t.split(',') {
        let v: u32 = piece
            .trim()
            .parse()
            .map_err(|_| format!("bad part '{}' in '{}'", piece, s))?;
        if v > 0 {
            parts.push(v);
        }
    }
    Ok(Partition::new(parts))
}

fn check_d(d: Option<u32>, lambda: &Partition) -> Result<u32, String> {
    match d {
        Some(d) if d != lambda.size() => Err(format!(
            "-d {} disagrees with |lambda| = {}",
            d,
            lambda.size()
        )),
        _ => Ok(lambda.size()),
    }
}

fn data_store(dir: &Option<PathBuf>) -> DataStore {
    let dir = dir.clone().unwrap_or_else(|| {
        std::env::var_os("YOUNG_COHO_DATA")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("./data"))
    });
    DataStore::new(dir)
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::Parse { .. } | Error::SizeMismatch { .. } => ExitCode::from(1),
        Error::DataUnavailable { .. } | Error::OracleOutOfRange(_) => ExitCode::from(2),
        _ => ExitCode::from(3),
    }
}

fn emit(record: &OutputRecord, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(record).unwrap()),
        Format::Csv => {
            let has_oracle = record.values.iter().any(|v| v.oracle.is_some());
            if has_oracle {
                println!("degree,dim,oracle");
            } else {
                println!("degree,dim");
            }
            for v in &record.values {
                match v.oracle {
                    Some(o) => println!("{},{},{}", v.degree, v.dim, o),
                    None => println!("{},{}", v.degree, v.dim),
                }
            }
        }
        Format::Text => {
            let vals: Vec<String> = record.values.iter().map(|v| v.dim.to_string()).collect();
            println!("{}", vals.join(","));
            if record.values.iter().any(|v| v.oracle.is_some()) {
                let ovals: Vec<String> = record
                    .values
                    .iter()
                    .map(|v| v.oracle.map_or("-".into(), |o| o.to_string()))
                    .collect();
                println!("oracle: {}", ovals.join(","));
                let agree = record.values.iter().all(|v| v.oracle == Some(v.dim));
                println!("agree: {}", agree);
            }
        }
    }
}

fn user_error(msg: &str) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(1)
}

fn run_range(
    p: u64,
    d: u32,
    lambda: &Partition,
    mu: Option<&Partition>,
    degrees: (u32, u32),
    provenance: &str,
    format: Format,
    f: impl Fn(u32) -> young_coho::Result<u64>,
) -> ExitCode {
    let mut values = Vec::new();
    for i in degrees.0..=degrees.1 {
        match f(i) {
            Ok(v) => values.push(DegreeValue {
                degree: i,
                dim: v,
                oracle: None,
            }),
            Err(e) => {
                eprintln!("error: {}", e);
                return exit_for(&e);
            }
        }
    }
    let record = OutputRecord {
        query: Query {
            p,
            d,
            lambda: lambda.to_string(),
            mu: mu.map(|m| m.to_string()),
            degrees,
        },
        values,
        provenance: provenance.to_string(),
    };
    emit(&record, format);
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap's own exit codes disagree with ours: usage errors are 1
            if e.use_stderr() {
                eprint!("{}", e);
                return ExitCode::from(1);
            }
            print!("{}", e);
            return ExitCode::SUCCESS;
        }
    };
    let format = cli.format;
    let store = data_store(&cli.data_dir);
    match cli.cmd {
        Cmd::Young {
            p,
            d,
            lambda,
            degrees,
        } => {
            let lambda = match parse_partition(&lambda) {
                Ok(l) => l,
                Err(m) => return user_error(&m),
            };
            let d = match check_d(d, &lambda) {
                Ok(d) => d,
                Err(m) => return user_error(&m),
            };
            let degrees = match parse_degrees(&degrees) {
                Ok(r) => r,
                Err(m) => return user_error(&m),
            };
            let dm = match store.decomposition(p, d) {
                Ok(dm) => dm,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return exit_for(&e);
                }
            };
            run_range(p, d, &lambda, None, degrees, "general", format, |i| {
                h_young(p, d, &lambda, i, &dm)
            })
        }
        Cmd::Perm {
            p,
            d,
            lambda,
            degrees,
            oracle,
        } => {
            let lambda = match parse_composition(&lambda) {
                Ok(l) => l,
                Err(m) => return user_error(&m),
            };
            let d = match check_d(d, &lambda) {
                Ok(d) => d,
                Err(m) => return user_error(&m),
            };
            let degrees = match parse_degrees(&degrees) {
                Ok(r) => r,
                Err(m) => return user_error(&m),
            };
            let mut values = Vec::new();
            for i in degrees.0..=degrees.1 {
                let dim = match h_perm(p, d, &lambda, i) {
                    Ok(v) => v,
                    Err(e) => {
                        eprintln!("error: {}", e);
                        return exit_for(&e);
                    }
                };
                let oval = if oracle {
                    match bar_homology_weight(p, d, &lambda, i) {
                        Ok(v) => Some(v),
                        Err(e) => {
                            eprintln!("error: {}", e);
                            return exit_for(&e);
                        }
                    }
                } else {
                    None
                };
                values.push(DegreeValue {
                    degree: i,
                    dim,
                    oracle: oval,
                });
            }
            let record = OutputRecord {
                query: Query {
                    p,
                    d,
                    lambda: lambda.to_string(),
                    mu: None,
                    degrees,
                },
                values,
                provenance: if oracle { "general+oracle" } else { "general" }.to_string(),
            };
            emit(&record, format);
            if oracle && !record.values.iter().all(|v| v.oracle == Some(v.dim)) {
                eprintln!("error: oracle disagrees with the engine");
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Cmd::Ext {
            p,
            d,
            lambda,
            mu,
            degrees,
        } => {
            let lambda = match parse_partition(&lambda) {
                Ok(l) => l,
                Err(m) => return user_error(&m),
            };
            let mu = match parse_partition(&mu) {
                Ok(l) => l,
                Err(m) => return user_error(&m),
            };
            let d = match check_d(d, &lambda) {
                Ok(d) => d,
                Err(m) => return user_error(&m),
            };
            if mu.size() != d {
                return user_error(&format!("|mu| = {} but |lambda| = {}", mu.size(), d));
            }
            let degrees = match parse_degrees(&degrees) {
                Ok(r) => r,
                Err(m) => return user_error(&m),
            };
            let dm = match store.decomposition(p, d) {
                Ok(dm) => dm,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return exit_for(&e);
                }
            };
            run_range(p, d, &lambda, Some(&mu), degrees, "general", format, |i| {
                ext_young(p, d, &lambda, &mu, i, &dm)
            })
        }
        Cmd::Vanishing { p, lambda } => {
            let lambda = match parse_partition(&lambda) {
                Ok(l) => l,
                Err(m) => return user_error(&m),
            };
            let v = vanishes_identically(p, &lambda);
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "p": p, "lambda": lambda.to_string(), "vanishes": v
                    })
                ),
                _ => println!("vanishes: {}", v),
            }
            ExitCode::SUCCESS
        }
        Cmd::Complexity { p, lambda } => {
            let lambda = match parse_partition(&lambda) {
                Ok(l) => l,
                Err(m) => return user_error(&m),
            };
            let c = complexity_young(p, &lambda);
            let proj = is_projective_young(p, &lambda);
            let principal = in_principal_block(p, &lambda);
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "p": p, "lambda": lambda.to_string(), "complexity": c,
                        "projective": proj, "principal_block": principal
                    })
                ),
                _ => {
                    println!("complexity: {}", c);
                    println!("projective: {}", proj);
                    println!("principal_block: {}", principal);
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Shapes { p, d, degrees } => {
            let degrees = match parse_degrees(&degrees) {
                Ok(r) => r,
                Err(m) => return user_error(&m),
            };
            for i in degrees.0..=degrees.1 {
                let shapes = enumerate_shapes(p, d, i);
                match format {
                    Format::Json => {
                        let list: Vec<_> = shapes
                            .iter()
                            .map(|s| {
                                serde_json::json!({
                                    "degree": i,
                                    "base": s.base,
                                    "factors": s.factors.iter().map(|(q, m)| {
                                        serde_json::json!({"sequence": q.to_string(), "mult": m})
                                    }).collect::<Vec<_>>(),
                                    "module": s.describe(p),
                                })
                            })
                            .collect();
                        println!("{}", serde_json::to_string_pretty(&list).unwrap());
                    }
                    _ => {
                        for s in &shapes {
                            println!("i={}: {}  ~  {}", i, s, s.describe(p));
                        }
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Table {
            kind,
            reproduce,
            degrees,
        } => tables::run_table(kind, reproduce, degrees, &store, format),
        Cmd::Decomp { action } => match action {
            DecompCmd::Validate { p, d } => {
                let dm = match store.decomposition(p, d) {
                    Ok(dm) => dm,
                    Err(e) => {
                        eprintln!("error: {}", e);
                        return exit_for(&e);
                    }
                };
                let c = cartan_from_decomp(&dm);
                match decomp_from_cartan(&c) {
                    Ok(back) if back == *dm => {
                        println!(
                            "ok: p={} d={}: {} partitions, Cartan round-trip exact",
                            p,
                            d,
                            dm.parts().len()
                        );
                        ExitCode::SUCCESS
                    }
                    Ok(_) => {
                        eprintln!("error: Cartan round-trip produced a different matrix");
                        ExitCode::from(3)
                    }
                    Err(e) => {
                        eprintln!("error: {}", e);
                        ExitCode::from(3)
                    }
                }
            }
        },
        Cmd::Oracle {
            p,
            lambda,
            degrees,
            kind,
        } => {
            let lambda = match parse_composition(&lambda) {
                Ok(l) => l,
                Err(m) => return user_error(&m),
            };
            let degrees = match parse_degrees(&degrees) {
                Ok(r) => r,
                Err(m) => return user_error(&m),
            };
            let d = lambda.size();
            match kind.as_str() {
                "bar" => run_range(p, d, &lambda, None, degrees, "oracle", format, |i| {
                    bar_homology_weight(p, d, &lambda, i)
                }),
                "kunneth" => {
                    let parts = lambda.parts().to_vec();
                    run_range(p, d, &lambda, None, degrees, "oracle", format, |i| {
                        kunneth_perm(p, &parts, i)
                    })
                }
                other => user_error(&format!("unknown oracle kind '{}'", other)),
            }
        }
    }
}
