//! Decomposition matrices of Schur algebras: loading, validation, and the
//! Cartan round-trip.
//!
//! Matrices are input data, never computed here. The bundled files live under
//! `<data-dir>/decomp/p<p>_d<dd>.txt` with a sha256 manifest; a missing file
//! is a hard `DataUnavailable` error, never a silent zero.
//!
//! File format (UTF-8 text): header line `p=<p> d=<d>`, then one line per
//! nonzero entry `mu | lambda | m` with partitions comma-separated. `#`
//! starts a comment. Absent pairs are zero, so the diagonal must be explicit.

use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

/// D(p,d): rows V(mu), columns L(lambda), both indexed by partitions of d in
/// descending lex order. entry(mu, lambda) = [V(mu) : L(lambda)].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecompositionMatrix {
    pub p: u64,
    pub d: u32,
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    rows: Vec<Vec<u64>>,
}

/// C(p,d) = D^T D: the Cartan matrix of the Schur algebra, symmetric,
/// indexed like its decomposition matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanMatrix {
    pub p: u64,
    pub d: u32,
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    rows: Vec<Vec<u64>>,
}

fn make_index(parts: &[Partition]) -> HashMap<Partition, usize> {
    parts
        .iter()
        .enumerate()
        .map(|(i, x)| (x.clone(), i))
        .collect()
}

impl DecompositionMatrix {
    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn entry(&self, mu: &Partition, lambda: &Partition) -> u64 {
        match (self.index.get(mu), self.index.get(lambda)) {
            (Some(&i), Some(&j)) => self.rows[i][j],
            _ => 0,
        }
    }

    /// Nonzero entries of row V(mu): its composition factors with multiplicity.
    pub fn row(&self, mu: &Partition) -> Vec<(Partition, u64)> {
        match self.index.get(mu) {
            Some(&i) => self
                .parts
                .iter()
                .zip(&self.rows[i])
                .filter(|(_, &v)| v != 0)
                .map(|(l, &v)| (l.clone(), v))
                .collect(),
            None => Vec::new(),
        }
    }

    /// Nonzero entries of column L(lambda): the Weyl modules containing it,
    /// equivalently the ordinary constituents of Y^lambda.
    pub fn column(&self, lambda: &Partition) -> Vec<(Partition, u64)> {
        match self.index.get(lambda) {
            Some(&j) => self
                .parts
                .iter()
                .enumerate()
                .filter(|(i, _)| self.rows[*i][j] != 0)
                .map(|(i, m)| (m.clone(), self.rows[i][j]))
                .collect(),
            None => Vec::new(),
        }
    }

    /// Structural invariants: unit diagonal, and support only where
    /// lambda is dominated by mu.
    pub fn validate(&self) -> Result<()> {
        let n = self.parts.len();
        for i in 0..n {
            if self.rows[i][i] != 1 {
                return Err(Error::DataInvalid(format!(
                    "diagonal entry at {} is {}, expected 1",
                    self.parts[i], self.rows[i][i]
                )));
            }
            for j in 0..n {
                if self.rows[i][j] != 0 && !self.parts[j].dominance_leq(&self.parts[i])? {
                    return Err(Error::DataInvalid(format!(
                        "nonzero entry [V({}) : L({})] = {} violates dominance triangularity",
                        self.parts[i], self.parts[j], self.rows[i][j]
                    )));
                }
            }
        }
        Ok(())
    }
}

impl CartanMatrix {
    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn entry(&self, lambda: &Partition, mu: &Partition) -> u64 {
        match (self.index.get(lambda), self.index.get(mu)) {
            (Some(&i), Some(&j)) => self.rows[i][j],
            _ => 0,
        }
    }
}

pub fn cartan_from_decomp(d: &DecompositionMatrix) -> CartanMatrix {
    let n = d.parts.len();
    let mut rows = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..n).map(|k| d.rows[k][i] * d.rows[k][j]).sum();
        }
    }
    CartanMatrix {
        p: d.p,
        d: d.d,
        parts: d.parts.clone(),
        index: d.index.clone(),
        rows,
    }
}

/// Invert C = D^T D using triangularity of D.
///
/// Partitions are processed in descending lex order, a linear extension of
/// dominance. At step k the residual C satisfies C[s_k][mu] = D[s_k][mu]
/// because every earlier row of D has already been peeled off, so each step
/// reads off one row of D and subtracts its outer square. Any negative,
/// non-unit-diagonal, or triangularity-violating residual means the input
/// was not a Cartan matrix of this shape.
pub fn decomp_from_cartan(c: &CartanMatrix) -> Result<DecompositionMatrix> {
    let n = c.parts.len();
    let mut resid: Vec<Vec<i64>> = c
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| i64::try_from(v).map_err(|_| Error::Overflow("cartan entry")))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = vec![vec![0u64; n]; n];
    for k in 0..n {
        if resid[k][k] != 1 {
            return Err(Error::NotCartan(format!(
                "residual diagonal at {} is {}, expected 1",
                c.parts[k], resid[k][k]
            )));
        }
        for j in 0..n {
            let v = resid[k][j];
            if v < 0 {
                return Err(Error::NotCartan(format!(
                    "negative residual {} at ({}, {})",
                    v, c.parts[k], c.parts[j]
                )));
            }
            if v != 0 && !c.parts[j].dominance_leq(&c.parts[k])? {
                return Err(Error::NotCartan(format!(
                    "residual row {} has support at {} outside dominance",
                    c.parts[k], c.parts[j]
                )));
            }
            rows[k][j] = v as u64;
        }
        for i in 0..n {
            for j in 0..n {
                resid[i][j] -= rows[k][i] as i64 * rows[k][j] as i64;
            }
        }
    }
    // everything must be consumed
    for (i, r) in resid.iter().enumerate() {
        for (j, &v) in r.iter().enumerate() {
            if v != 0 {
                return Err(Error::NotCartan(format!(
                    "nonzero residual {} at ({}, {}) after peeling",
                    v, c.parts[i], c.parts[j]
                )));
            }
        }
    }
    let d = DecompositionMatrix {
        p: c.p,
        d: c.d,
        parts: c.parts.clone(),
        index: c.index.clone(),
        rows,
    };
    d.validate()?;
    Ok(d)
}

/// dim Hom(Y^lambda, Y^mu) = C(lambda, mu).
pub fn hom_dim_young(c: &CartanMatrix, lambda: &Partition, mu: &Partition) -> u64 {
    c.entry(lambda, mu)
}

pub fn parse_decomposition(text: &str, p: u64, d: u32) -> Result<DecompositionMatrix> {
    let mut lines = text
        .lines()
        .map(|l| match l.find('#') {
            Some(i) => &l[..i],
            None => l,
        })
        .map(str::trim)
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::DataInvalid("empty decomposition file".into()))?;
    let mut hp = None;
    let mut hd = None;
    for tok in header.split_whitespace() {
        if let Some(v) = tok.strip_prefix("p=") {
            hp = v.parse::<u64>().ok();
        } else if let Some(v) = tok.strip_prefix("d=") {
            hd = v.parse::<u32>().ok();
        }
    }
    match (hp, hd) {
        (Some(fp), Some(fd)) if fp == p && fd == d => {}
        (Some(fp), Some(fd)) => {
            return Err(Error::DataInvalid(format!(
                "file header p={} d={} does not match requested p={} d={}",
                fp, fd, p, d
            )))
        }
        _ => {
            return Err(Error::DataInvalid(format!(
                "malformed header line {:?}",
                header
            )))
        }
    }
    let parts = partitions_of(d);
    let index = make_index(&parts);
    let n = parts.len();
    let mut rows = vec![vec![0u64; n]; n];
    let mut seen = vec![vec![false; n]; n];
    for line in lines {
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::DataInvalid(format!(
                "expected `mu | lambda | m`, got {:?}",
                line
            )));
        }
        let mu: Partition = fields[0].parse()?;
        let lambda: Partition = fields[1].parse()?;
        let m: u64 = fields[2].parse().map_err(|_| {
            Error::DataInvalid(format!("multiplicity {:?} is not a nonnegative integer", fields[2]))
        })?;
        let (i, j) = match (index.get(&mu), index.get(&lambda)) {
            (Some(&i), Some(&j)) => (i, j),
            _ => {
                return Err(Error::DataInvalid(format!(
                    "{} | {} are not both partitions of {}",
                    mu, lambda, d
                )))
            }
        };
        if seen[i][j] {
            return Err(Error::DataInvalid(format!(
                "duplicate entry for {} | {}",
                mu, lambda
            )));
        }
        seen[i][j] = true;
        rows[i][j] = m;
    }
    let dm = DecompositionMatrix {
        p,
        d,
        parts,
        index,
        rows,
    };
    dm.validate()?;
    Ok(dm)
}

fn decomp_file_name(p: u64, d: u32) -> String {
    format!("p{}_d{:02}.txt", p, d)
}

/// Load and validate a bundled matrix, verifying its sha256 against the
/// manifest when one is present in the directory.
pub fn load_decomposition(p: u64, d: u32, data_dir: &Path) -> Result<DecompositionMatrix> {
    let dir = data_dir.join("decomp");
    let name = decomp_file_name(p, d);
    let path = dir.join(&name);
    let bytes = std::fs::read(&path).map_err(|_| Error::DataUnavailable {
        p,
        d,
        dir: data_dir.display().to_string(),
    })?;
    let manifest = dir.join("MANIFEST.sha256");
    if let Ok(mf) = std::fs::read_to_string(&manifest) {
        let digest = hex(&Sha256::digest(&bytes));
        let mut listed = false;
        for line in mf.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let (Some(h), Some(f)) = (it.next(), it.next()) else {
                continue;
            };
            if f == name {
                listed = true;
                if h != digest {
                    return Err(Error::DataInvalid(format!(
                        "checksum mismatch for {}: manifest {}, file {}",
                        name, h, digest
                    )));
                }
            }
        }
        if !listed {
            return Err(Error::DataInvalid(format!(
                "{} is not listed in MANIFEST.sha256",
                name
            )));
        }
    }
    let text = String::from_utf8(bytes)
        .map_err(|_| Error::DataInvalid(format!("{} is not UTF-8", name)))?;
    parse_decomposition(&text, p, d)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{:02x}", b)).collect()
}

/// Shared, memoized access to decomposition and Cartan matrices rooted at a
/// data directory. Cheap to clone.
#[derive(Clone)]
pub struct DataStore {
    dir: PathBuf,
    decomp: Arc<Mutex<HashMap<(u64, u32), Arc<DecompositionMatrix>>>>,
    cartan: Arc<Mutex<HashMap<(u64, u32), Arc<CartanMatrix>>>>,
}

impl DataStore {
    pub fn new(dir: impl Into<PathBuf>) -> DataStore {
        DataStore {
            dir: dir.into(),
            decomp: Arc::new(Mutex::new(HashMap::new())),
            cartan: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn available(&self, p: u64, d: u32) -> bool {
        self.dir
            .join("decomp")
            .join(decomp_file_name(p, d))
            .exists()
    }

    pub fn decomposition(&self, p: u64, d: u32) -> Result<Arc<DecompositionMatrix>> {
        if let Some(m) = self.decomp.lock().unwrap().get(&(p, d)) {
            return Ok(m.clone());
        }
        let loaded = Arc::new(load_decomposition(p, d, &self.dir)?);
        self.decomp
            .lock()
            .unwrap()
            .insert((p, d), loaded.clone());
        Ok(loaded)
    }

    pub fn cartan(&self, p: u64, d: u32) -> Result<Arc<CartanMatrix>> {
        if let Some(m) = self.cartan.lock().unwrap().get(&(p, d)) {
            return Ok(m.clone());
        }
        let dm = self.decomposition(p, d)?;
        let c = Arc::new(cartan_from_decomp(&dm));
        self.cartan.lock().unwrap().insert((p, d), c.clone());
        Ok(c)
    }
}

/// Closed-form rows of two-column Weyl modules at p=2.
///
/// For lambda = (2,1^{a-2}): factors L(2,1^{a-2}), plus L(1^a) iff a is even.
/// For lambda = (2,2,1^{a-4}): factors L(2,2,1^{a-4}), plus extras by a mod 4:
/// 0 -> L(2,1^{a-2}); 1 -> L(1^a); 2 -> both; 3 -> none.
/// Returns None for shapes the closed form does not cover.
pub fn two_column_weyl_row(lambda: &Partition) -> Option<Vec<(Partition, u64)>> {
    let a = lambda.size();
    let parts = lambda.parts();
    let twos = parts.iter().filter(|&&x| x == 2).count();
    if parts.iter().any(|&x| x > 2) || twos + parts.iter().filter(|&&x| x == 1).count() != parts.len() {
        return None;
    }
    let col = |k: u32| -> Partition {
        // (2, 1^{k-2}) for k >= 2, (1^k) for k < 2 is not used
        let mut v = vec![2u32];
        v.extend(std::iter::repeat(1).take((k - 2) as usize));
        Partition::new(v)
    };
    let ones = |k: u32| Partition::new(vec![1; k as usize]);
    match twos {
        1 => {
            let mut row = vec![(lambda.clone(), 1)];
            if a % 2 == 0 {
                row.push((ones(a), 1));
            }
            Some(row)
        }
        2 => {
            let mut row = vec![(lambda.clone(), 1)];
            match a % 4 {
                0 => row.push((col(a), 1)),
                1 => row.push((ones(a), 1)),
                2 => {
                    row.push((col(a), 1));
                    row.push((ones(a), 1));
                }
                _ => {}
            }
            Some(row)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    const D2_TEXT: &str = "\
# symmetric square over F_2
p=2 d=2
2 | 2 | 1
2 | 1,1 | 1   # S^2(V) = V(2) has both simples
1,1 | 1,1 | 1
";

    #[test]
    fn parse_and_entries() {
        let m = parse_decomposition(D2_TEXT, 2, 2).unwrap();
        assert_eq!(m.entry(&pt("2"), &pt("2")), 1);
        assert_eq!(m.entry(&pt("2"), &pt("1,1")), 1);
        assert_eq!(m.entry(&pt("1,1"), &pt("2")), 0);
        assert_eq!(
            m.column(&pt("1,1")),
            vec![(pt("2"), 1), (pt("1,1"), 1)]
        );
    }

    #[test]
    fn header_mismatch_rejected() {
        assert!(matches!(
            parse_decomposition(D2_TEXT, 3, 2),
            Err(Error::DataInvalid(_))
        ));
    }

    #[test]
    fn bad_diagonal_rejected() {
        let text = "p=2 d=2\n2 | 2 | 1\n"; // missing (1,1) diagonal
        assert!(matches!(
            parse_decomposition(text, 2, 2),
            Err(Error::DataInvalid(_))
        ));
    }

    #[test]
    fn dominance_violation_rejected() {
        let text = "p=2 d=2\n2 | 2 | 1\n1,1 | 1,1 | 1\n1,1 | 2 | 1\n";
        assert!(matches!(
            parse_decomposition(text, 2, 2),
            Err(Error::DataInvalid(_))
        ));
    }

    #[test]
    fn duplicate_rejected() {
        let text = "p=2 d=2\n2 | 2 | 1\n2 | 2 | 1\n1,1 | 1,1 | 1\n";
        assert!(matches!(
            parse_decomposition(text, 2, 2),
            Err(Error::DataInvalid(_))
        ));
    }

    #[test]
    fn cartan_of_d2() {
        let m = parse_decomposition(D2_TEXT, 2, 2).unwrap();
        let c = cartan_from_decomp(&m);
        assert_eq!(c.entry(&pt("2"), &pt("2")), 1);
        assert_eq!(c.entry(&pt("2"), &pt("1,1")), 1);
        assert_eq!(c.entry(&pt("1,1"), &pt("1,1")), 2);
    }

    #[test]
    fn round_trip_d2() {
        let m = parse_decomposition(D2_TEXT, 2, 2).unwrap();
        let c = cartan_from_decomp(&m);
        assert_eq!(decomp_from_cartan(&c).unwrap(), m);
    }

    #[test]
    fn non_cartan_rejected() {
        let m = parse_decomposition(D2_TEXT, 2, 2).unwrap();
        let mut c = cartan_from_decomp(&m);
        c.rows[1][1] = 5; // breaks the peeling residual
        assert!(matches!(decomp_from_cartan(&c), Err(Error::NotCartan(_))));
    }

    #[test]
    fn two_column_closed_forms() {
        // (2,1^{a-2}) rows
        assert_eq!(
            two_column_weyl_row(&pt("2")).unwrap(),
            vec![(pt("2"), 1), (pt("1,1"), 1)]
        );
        assert_eq!(two_column_weyl_row(&pt("2,1")).unwrap(), vec![(pt("2,1"), 1)]);
        assert_eq!(
            two_column_weyl_row(&pt("2,1,1")).unwrap(),
            vec![(pt("2,1,1"), 1), (pt("1,1,1,1"), 1)]
        );
        // (2,2,1^{a-4}) rows, one per congruence class of a mod 4
        assert_eq!(
            two_column_weyl_row(&pt("2,2")).unwrap(),
            vec![(pt("2,2"), 1), (pt("2,1,1"), 1)]
        );
        assert_eq!(
            two_column_weyl_row(&pt("2,2,1")).unwrap(),
            vec![(pt("2,2,1"), 1), (pt("1,1,1,1,1"), 1)]
        );
        assert_eq!(
            two_column_weyl_row(&pt("2,2,1,1")).unwrap(),
            vec![(pt("2,2,1,1"), 1), (pt("2,1,1,1,1"), 1), (pt("1,1,1,1,1,1"), 1)]
        );
        assert_eq!(
            two_column_weyl_row(&pt("2,2,1,1,1")).unwrap(),
            vec![(pt("2,2,1,1,1"), 1)]
        );
        // out of scope
        assert!(two_column_weyl_row(&pt("3,1")).is_none());
        assert!(two_column_weyl_row(&pt("2,2,2")).is_none());
        assert!(two_column_weyl_row(&pt("1,1,1")).is_none());
    }
}
