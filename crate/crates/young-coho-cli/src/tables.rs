//! Full-table generation for Sigma_6 at p = 2, plus a reproduction mode
//! that regenerates the bundled golden Ext table and diffs against it.

use crate::{exit_for, user_error, Format};
use rayon::prelude::*;
use std::process::ExitCode;
use young_coho::cohomology::{ext_young, h_young, is_projective_young};
use young_coho::schur_data::{DataStore, DecompositionMatrix};
use young_coho::{partitions_of, Partition};

const EXT_DEGREES: (u32, u32) = (0, 10);
const YOUNG_DEGREES: (u32, u32) = (0, 20);

/// Pairs for the Ext table: lower triangle (diagonal included) over the
/// nonprojective partitions of 6 at p = 2, in descending lex order.
fn ext_pairs() -> Vec<(Partition, Partition)> {
    let parts: Vec<Partition> = partitions_of(6)
        .into_iter()
        .filter(|l| !is_projective_young(2, l))
        .collect();
    let mut out = Vec::new();
    for r in 0..parts.len() {
        for c in 0..=r {
            out.push((parts[r].clone(), parts[c].clone()));
        }
    }
    out
}

fn degrees_or(default: (u32, u32), degrees: Option<String>) -> Result<(u32, u32), String> {
    match degrees {
        None => Ok(default),
        Some(s) => crate::parse_degrees(&s),
    }
}

fn ext_rows(
    dm: &DecompositionMatrix,
    degrees: (u32, u32),
) -> young_coho::Result<Vec<(Partition, Partition, Vec<u64>)>> {
    // Cells are independent; rayon with an indexed collect keeps row order
    // identical to the serial one.
    ext_pairs()
        .into_par_iter()
        .map(|(l, m)| {
            let mut vals = Vec::with_capacity((degrees.1 - degrees.0 + 1) as usize);
            for i in degrees.0..=degrees.1 {
                vals.push(ext_young(2, 6, &l, &m, i, dm)?);
            }
            Ok((l, m, vals))
        })
        .collect()
}

fn young_rows(
    dm: &DecompositionMatrix,
    degrees: (u32, u32),
) -> young_coho::Result<Vec<(Partition, Vec<u64>)>> {
    partitions_of(6)
        .into_par_iter()
        .map(|l| {
            let mut vals = Vec::with_capacity((degrees.1 - degrees.0 + 1) as usize);
            for i in degrees.0..=degrees.1 {
                vals.push(h_young(2, 6, &l, i, dm)?);
            }
            Ok((l, vals))
        })
        .collect()
}

fn ext_csv(rows: &[(Partition, Partition, Vec<u64>)], degrees: (u32, u32)) -> String {
    let mut s = String::from("lambda,mu,i,dim\n");
    for (l, m, vals) in rows {
        for (k, v) in vals.iter().enumerate() {
            s.push_str(&format!(
                "\"{}\",\"{}\",{},{}\n",
                l,
                m,
                degrees.0 + k as u32,
                v
            ));
        }
    }
    s
}

fn young_csv(rows: &[(Partition, Vec<u64>)], degrees: (u32, u32)) -> String {
    let mut s = String::from("lambda,i,dim\n");
    for (l, vals) in rows {
        for (k, v) in vals.iter().enumerate() {
            s.push_str(&format!("\"{}\",{},{}\n", l, degrees.0 + k as u32, v));
        }
    }
    s
}

fn join(vals: &[u64]) -> String {
    vals.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn run_table(
    kind: Option<String>,
    reproduce: Option<String>,
    degrees: Option<String>,
    store: &DataStore,
    format: Format,
) -> ExitCode {
    if let Some(name) = reproduce {
        if degrees.is_some() {
            return user_error("--reproduce uses the golden file's degree range");
        }
        if name != "sigma6-ext" {
            return user_error(&format!("no bundled golden table named '{}'", name));
        }
        return reproduce_sigma6_ext(store);
    }
    let kind = match kind {
        Some(k) => k,
        None => return user_error("table requires --kind or --reproduce"),
    };
    let dm = match store.decomposition(2, 6) {
        Ok(dm) => dm,
        Err(e) => {
            eprintln!("error: {}", e);
            return exit_for(&e);
        }
    };
    match kind.as_str() {
        "sigma6-young" => {
            let degrees = match degrees_or(YOUNG_DEGREES, degrees) {
                Ok(r) => r,
                Err(m) => return user_error(&m),
            };
            let rows = match young_rows(&dm, degrees) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return exit_for(&e);
                }
            };
            match format {
                Format::Csv => print!("{}", young_csv(&rows, degrees)),
                Format::Json => {
                    let list: Vec<_> = rows
                        .iter()
                        .map(|(l, vals)| {
                            serde_json::json!({
                                "lambda": l.to_string(),
                                "degrees": [degrees.0, degrees.1],
                                "dims": vals,
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&list).unwrap());
                }
                Format::Text => {
                    for (l, vals) in &rows {
                        println!("{}: {}", l, join(vals));
                    }
                }
            }
            ExitCode::SUCCESS
        }
        "sigma6-ext" => {
            let degrees = match degrees_or(EXT_DEGREES, degrees) {
                Ok(r) => r,
                Err(m) => return user_error(&m),
            };
            let rows = match ext_rows(&dm, degrees) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return exit_for(&e);
                }
            };
            match format {
                Format::Csv => print!("{}", ext_csv(&rows, degrees)),
                Format::Json => {
                    let list: Vec<_> = rows
                        .iter()
                        .map(|(l, m, vals)| {
                            serde_json::json!({
                                "lambda": l.to_string(),
                                "mu": m.to_string(),
                                "degrees": [degrees.0, degrees.1],
                                "dims": vals,
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&list).unwrap());
                }
                Format::Text => {
                    for (l, m, vals) in &rows {
                        println!("{} | {}: {}", l, m, join(vals));
                    }
                }
            }
            ExitCode::SUCCESS
        }
        other => user_error(&format!("unknown table kind '{}'", other)),
    }
}

fn reproduce_sigma6_ext(store: &DataStore) -> ExitCode {
    let golden_path = store.dir().join("golden").join("sigma6_ext.csv");
    let golden = match std::fs::read_to_string(&golden_path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {:?}: {}", golden_path, e);
            return ExitCode::from(2);
        }
    };
    let dm = match store.decomposition(2, 6) {
        Ok(dm) => dm,
        Err(e) => {
            eprintln!("error: {}", e);
            return exit_for(&e);
        }
    };
    let rows = match ext_rows(&dm, EXT_DEGREES) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e);
            return exit_for(&e);
        }
    };
    let fresh = ext_csv(&rows, EXT_DEGREES);
    if fresh == golden {
        println!(
            "reproduced: sigma6-ext matches bundled golden ({} rows)",
            fresh.lines().count() - 1
        );
        return ExitCode::SUCCESS;
    }
    let mut shown = 0;
    for (k, (a, b)) in fresh.lines().zip(golden.lines()).enumerate() {
        if a != b {
            eprintln!("line {}: computed {:?}, golden {:?}", k + 1, a, b);
            shown += 1;
            if shown >= 10 {
                break;
            }
        }
    }
    if fresh.lines().count() != golden.lines().count() {
        eprintln!(
            "line counts differ: computed {}, golden {}",
            fresh.lines().count(),
            golden.lines().count()
        );
    }
    eprintln!("error: regenerated table differs from bundled golden");
    ExitCode::from(3)
}
