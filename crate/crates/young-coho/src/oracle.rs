//! Independent oracles for H_i(Sigma_d, M^lambda): a normalized bar
//! resolution over the full group algebra, and a Kunneth convolution over
//! Young subgroups. Both bypass the character-theoretic pipeline entirely,
//! so agreement is a genuine cross-check.
//!
//! The bar complex has dim C_i = dim M * (|G| - 1)^i, which grows fast;
//! requests whose matrices exceed the resource guards fail loudly with
//! OracleOutOfRange rather than degrade.

use crate::error::{Error, Result};
use crate::partitions::Partition;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Hard ceiling on columns of any boundary matrix we will eliminate.
pub const MAX_ORACLE_COLUMNS: u128 = 200_000;
/// Hard ceiling on the pivot store (worst-case rank times row bytes).
pub const MAX_PIVOT_BYTES: u128 = 1 << 30;

/// Streaming column eliminator over F_p, p < 256. Pivot rows are dense:
/// bitsets for p = 2, byte vectors otherwise. Columns are offered once,
/// in order; rank never depends on the order.
pub struct SparseMatrixFp {
    p: u64,
    rows: usize,
    rank: usize,
    words: usize,
    pivots2: Vec<Option<Box<[u64]>>>,
    pivots_p: Vec<Option<Box<[u8]>>>,
    inverse: Vec<u8>,
    scratch2: Vec<u64>,
    scratch_p: Vec<u8>,
}

impl SparseMatrixFp {
    pub fn new(p: u64, rows: usize) -> Self {
        assert!(p >= 2 && p < 256, "field characteristic out of range");
        let words = rows.div_ceil(64);
        // inverse[v] = v^{-1} mod p, for the odd-p reduction step
        let mut inverse = vec![0u8; p as usize];
        for v in 1..p {
            for w in 1..p {
                if (v * w) % p == 1 {
                    inverse[v as usize] = w as u8;
                }
            }
        }
        SparseMatrixFp {
            p,
            rows,
            rank: 0,
            words,
            pivots2: if p == 2 { vec![None; rows] } else { Vec::new() },
            pivots_p: if p != 2 { vec![None; rows] } else { Vec::new() },
            inverse,
            scratch2: vec![0; words],
            scratch_p: if p != 2 { vec![0; rows] } else { Vec::new() },
        }
    }

    pub fn rank(&self) -> u64 {
        self.rank as u64
    }

    /// Bytes one stored pivot row occupies, for sizing guards.
    pub fn row_bytes(p: u64, rows: u128) -> u128 {
        if p == 2 {
            rows.div_ceil(64) * 8
        } else {
            rows
        }
    }

    /// Reduce a sparse column (row, coefficient) against the pivots; keep
    /// it as a new pivot if independent. Returns whether the rank grew.
    pub fn offer_column(&mut self, entries: &[(u64, u8)]) -> bool {
        if self.p == 2 {
            self.offer_f2(entries)
        } else {
            self.offer_odd(entries)
        }
    }

    fn offer_f2(&mut self, entries: &[(u64, u8)]) -> bool {
        self.scratch2.fill(0);
        let mut any = false;
        for &(r, c) in entries {
            if c % 2 == 1 {
                let r = r as usize;
                debug_assert!(r < self.rows);
                self.scratch2[r / 64] ^= 1u64 << (r % 64);
                any = true;
            }
        }
        if !any {
            return false;
        }
        let mut w = 0;
        loop {
            while w < self.words && self.scratch2[w] == 0 {
                w += 1;
            }
            if w == self.words {
                return false;
            }
            let r = w * 64 + self.scratch2[w].trailing_zeros() as usize;
            match &self.pivots2[r] {
                Some(pivot) => {
                    for k in w..self.words {
                        self.scratch2[k] ^= pivot[k];
                    }
                }
                None => {
                    self.pivots2[r] = Some(self.scratch2.clone().into_boxed_slice());
                    self.rank += 1;
                    return true;
                }
            }
        }
    }

    fn offer_odd(&mut self, entries: &[(u64, u8)]) -> bool {
        let p = self.p as u16;
        self.scratch_p.fill(0);
        for &(r, c) in entries {
            let r = r as usize;
            debug_assert!(r < self.rows);
            self.scratch_p[r] = ((self.scratch_p[r] as u16 + c as u16) % p) as u8;
        }
        let mut r = 0;
        while r < self.rows {
            if self.scratch_p[r] == 0 {
                r += 1;
                continue;
            }
            match &self.pivots_p[r] {
                Some(pivot) => {
                    // subtract (lead / pivot_lead) * pivot; adding m = p - q
                    // times the pivot is the same thing without signs
                    let q = (self.scratch_p[r] as u16
                        * self.inverse[pivot[r] as usize] as u16)
                        % p;
                    let m = p - q;
                    let scr = &mut self.scratch_p[r..];
                    let piv = &pivot[r..];
                    match p {
                        3 => add_scaled_mod::<3>(scr, piv, m),
                        5 => add_scaled_mod::<5>(scr, piv, m),
                        7 => add_scaled_mod::<7>(scr, piv, m),
                        _ => add_scaled_mod_dyn(scr, piv, m, p),
                    }
                    debug_assert_eq!(self.scratch_p[r], 0);
                }
                None => {
                    self.pivots_p[r] = Some(self.scratch_p.clone().into_boxed_slice());
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}

/// scratch[k] = (scratch[k] + m * pivot[k]) mod P, entrywise. The constant
/// modulus lets the compiler turn the remainder into a multiply-shift and
/// vectorize the whole loop. Entries and m are reduced mod P < 256, so the
/// u16 intermediates cannot wrap; wrapping ops keep the loop free of
/// overflow-check branches under test builds, which would block SIMD.
fn add_scaled_mod<const P: u16>(scratch: &mut [u8], pivot: &[u8], m: u16) {
    for (s, &v) in scratch.iter_mut().zip(pivot.iter()) {
        *s = ((*s as u16).wrapping_add(m.wrapping_mul(v as u16)) % P) as u8;
    }
}

/// Fallback for characteristics without a specialized instantiation.
fn add_scaled_mod_dyn(scratch: &mut [u8], pivot: &[u8], m: u16, p: u16) {
    for (s, &v) in scratch.iter_mut().zip(pivot.iter()) {
        *s = ((*s as u16).wrapping_add(m.wrapping_mul(v as u16)) % p) as u8;
    }
}

/// Symmetric group data for the bar complex: element list, multiplication,
/// inverses, and the left action on tabloids of shape lambda.
struct BarComplex {
    p: u64,
    n: usize,
    dim_m: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    act: Vec<u32>,
}

fn permutations_of(d: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::with_capacity(d);
    let mut used = vec![false; d];
    fn rec(d: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for v in 0..d {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(d, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(d, &mut cur, &mut used, &mut out);
    out
}

/// Row-assignment vectors with part multiplicities given by lambda,
/// enumerated in lexicographic order.
fn tabloids_of(lambda: &Partition, d: usize) -> Vec<Vec<u8>> {
    let mut counts: Vec<u32> = lambda.parts().to_vec();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(d: usize, counts: &mut [u32], cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for row in 0..counts.len() {
            if counts[row] > 0 {
                counts[row] -= 1;
                cur.push(row as u8);
                rec(d, counts, cur, out);
                cur.pop();
                counts[row] += 1;
            }
        }
    }
    if d == 0 {
        return vec![Vec::new()];
    }
    rec(d, &mut counts, &mut cur, &mut out);
    out
}

impl BarComplex {
    fn build(p: u64, d: u32, lambda: &Partition) -> Result<BarComplex> {
        if d > 6 {
            return Err(Error::OracleOutOfRange(format!(
                "Sigma_{} multiplication table is too large for the bar oracle",
                d
            )));
        }
        let d = d as usize;
        let perms = permutations_of(d);
        let n = perms.len();
        let index: HashMap<&[u8], u32> = perms
            .iter()
            .enumerate()
            .map(|(k, g)| (g.as_slice(), k as u32))
            .collect();
        let mut mult = vec![0u32; n * n];
        let mut inv = vec![0u32; n];
        let mut buf = vec![0u8; d];
        for (a, g) in perms.iter().enumerate() {
            for (b, h) in perms.iter().enumerate() {
                for k in 0..d {
                    buf[k] = g[h[k] as usize];
                }
                mult[a * n + b] = index[buf.as_slice()];
            }
            for k in 0..d {
                buf[g[k] as usize] = k as u8;
            }
            inv[a] = index[buf.as_slice()];
        }
        let tabs = tabloids_of(lambda, d);
        let dim_m = tabs.len();
        let tindex: HashMap<&[u8], u32> = tabs
            .iter()
            .enumerate()
            .map(|(k, t)| (t.as_slice(), k as u32))
            .collect();
        let mut act = vec![0u32; n * dim_m];
        for (a, g) in perms.iter().enumerate() {
            for (t, tab) in tabs.iter().enumerate() {
                for k in 0..d {
                    buf[g[k] as usize] = tab[k];
                }
                act[a * dim_m + t] = tindex[buf.as_slice()];
            }
        }
        Ok(BarComplex {
            p,
            n,
            dim_m,
            mult,
            inv,
            act,
        })
    }

    /// dim C_i = dim M * (n - 1)^i, saturating so the guards catch overflow
    fn dim_c(&self, i: u32) -> u128 {
        ((self.n as u128) - 1)
            .checked_pow(i)
            .and_then(|x| x.checked_mul(self.dim_m as u128))
            .unwrap_or(u128::MAX)
    }

    fn encode(&self, t: u32, digits: &[u32]) -> u64 {
        let base = (self.n - 1) as u64;
        let mut w = 0u64;
        for &dg in digits.iter().rev() {
            w = w * base + dg as u64;
        }
        t as u64 + self.dim_m as u64 * w
    }

    /// Sparse column of the boundary C_i -> C_{i-1} at the given index,
    /// entries merged and reduced mod p.
    fn boundary_column(&self, i: u32, col: u64) -> Vec<(u64, u8)> {
        let i = i as usize;
        let base = (self.n - 1) as u64;
        let t = (col % self.dim_m as u64) as u32;
        let mut w = col / self.dim_m as u64;
        let mut digits = vec![0u32; i];
        for dg in digits.iter_mut() {
            *dg = (w % base) as u32;
            w /= base;
        }
        // group element ids: digit + 1 skips the identity
        let g = |k: usize| digits[k] + 1;
        let mut terms: Vec<(u64, i64)> = Vec::with_capacity(i + 2);
        // m.g1 term, via the right-action conversion m.g = g^{-1} m
        let t0 = self.act[(self.inv[g(0) as usize] as usize) * self.dim_m + t as usize];
        terms.push((self.encode(t0, &digits[1..]), 1));
        // interior multiplications, normalized: identity products drop out
        let mut merged = digits.clone();
        for j in 1..i {
            let prod = self.mult[(g(j - 1) as usize) * self.n + g(j) as usize];
            if prod != 0 {
                merged.clear();
                merged.extend_from_slice(&digits[..j - 1]);
                merged.push(prod - 1);
                merged.extend_from_slice(&digits[j + 1..]);
                let sign = if j % 2 == 0 { 1 } else { -1 };
                terms.push((self.encode(t, &merged), sign));
            }
        }
        let sign = if i % 2 == 0 { 1 } else { -1 };
        terms.push((self.encode(t, &digits[..i - 1]), sign));
        terms.sort_unstable_by_key(|&(r, _)| r);
        let p = self.p as i64;
        let mut out: Vec<(u64, u8)> = Vec::with_capacity(terms.len());
        for (r, c) in terms {
            match out.last_mut() {
                Some((lr, lc)) if *lr == r => {
                    *lc = ((*lc as i64 + c).rem_euclid(p)) as u8;
                }
                _ => out.push((r, c.rem_euclid(p) as u8)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        out
    }

    /// rank of the boundary C_i -> C_{i-1}, with resource guards.
    fn boundary_rank(&self, i: u32) -> Result<u64> {
        let cols = self.dim_c(i);
        let rows = self.dim_c(i - 1);
        if cols > MAX_ORACLE_COLUMNS {
            return Err(Error::OracleOutOfRange(format!(
                "boundary {} has {} columns, limit {}",
                i, cols, MAX_ORACLE_COLUMNS
            )));
        }
        let bound = SparseMatrixFp::row_bytes(self.p, rows) * rows.min(cols);
        if bound > MAX_PIVOT_BYTES {
            return Err(Error::OracleOutOfRange(format!(
                "boundary {} pivot store could reach {} bytes, limit {}",
                i, bound, MAX_PIVOT_BYTES
            )));
        }
        let mut mat = SparseMatrixFp::new(self.p, rows as usize);
        for col in 0..cols as u64 {
            let entries = self.boundary_column(i, col);
            mat.offer_column(&entries);
        }
        Ok(mat.rank())
    }
}

fn rank_cache() -> &'static Mutex<HashMap<(u64, Partition, u32), u64>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, Partition, u32), u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_boundary_rank(p: u64, lambda: &Partition, i: u32) -> Result<u64> {
    let key = (p, lambda.clone(), i);
    if let Some(&r) = rank_cache().lock().unwrap().get(&key) {
        return Ok(r);
    }
    let cx = BarComplex::build(p, lambda.size(), lambda)?;
    if cx.dim_c(i) == 0 {
        return Ok(0);
    }
    let r = cx.boundary_rank(i)?;
    rank_cache().lock().unwrap().insert(key, r);
    Ok(r)
}

/// dim H_i(Sigma_d, M^lambda) over F_p by normalized bar resolution of the
/// full group algebra. Exact, data-free, and expensive: use for d <= 4.
pub fn bar_homology_weight(p: u64, d: u32, lambda: &Partition, i: u32) -> Result<u64> {
    if lambda.size() != d {
        return Err(Error::SizeMismatch {
            left: lambda.clone(),
            right: Partition::new(vec![d]),
            lsize: lambda.size(),
            rsize: d,
        });
    }
    if !(2..256).contains(&p) {
        return Err(Error::OracleOutOfRange(format!(
            "bar oracle supports 2 <= p < 256, got {}",
            p
        )));
    }
    let cx = BarComplex::build(p, d, lambda)?;
    let dim_i = cx.dim_c(i);
    if dim_i == 0 {
        return Ok(0);
    }
    if dim_i > MAX_ORACLE_COLUMNS {
        return Err(Error::OracleOutOfRange(format!(
            "C_{} has dimension {}, limit {}",
            i, dim_i, MAX_ORACLE_COLUMNS
        )));
    }
    let rank_in = if i == 0 {
        0
    } else {
        cached_boundary_rank(p, lambda, i)?
    };
    let rank_out = if cx.dim_c(i + 1) == 0 {
        0
    } else {
        cached_boundary_rank(p, lambda, i + 1)?
    };
    (dim_i as u64)
        .checked_sub(rank_in)
        .and_then(|x| x.checked_sub(rank_out))
        .ok_or_else(|| {
            Error::Internal(format!(
                "negative homology dimension at p={} lambda={} i={}",
                p, lambda, i
            ))
        })
}

/// dim H_j(Sigma_m, k) over F_p for the part sizes the Kunneth oracle
/// supports: m <= 4 from the bar resolution, m = 6 at p = 2 from the
/// closed count of admissible words of weight 6.
fn kunneth_base(p: u64, m: u32, j: u32) -> Result<u64> {
    match m {
        0 => Ok(if j == 0 { 1 } else { 0 }),
        1..=4 => bar_homology_weight(p, m, &Partition::new(vec![m]), j),
        6 if p == 2 => {
            let t = (j as u64 + 1) * (j as u64 + 2);
            Ok(t.div_ceil(6))
        }
        _ => Err(Error::OracleOutOfRange(format!(
            "no independent H_*(Sigma_{}) base row at p={}",
            m, p
        ))),
    }
}

/// dim H_i(Sigma_d, M^lambda) by Shapiro plus Kunneth: convolve the
/// homology of the factor groups Sigma_{lambda_t}. Independent of the
/// character pipeline; parts must lie in {1, 2, 3, 4} (any p) or {6} (p=2).
pub fn kunneth_perm(p: u64, parts: &[u32], i: u32) -> Result<u64> {
    let mut dp = vec![0u64; i as usize + 1];
    dp[0] = 1;
    for &m in parts {
        let base: Vec<u64> = (0..=i)
            .map(|j| kunneth_base(p, m, j))
            .collect::<Result<_>>()?;
        let mut next = vec![0u64; i as usize + 1];
        for a in 0..=i as usize {
            if dp[a] == 0 {
                continue;
            }
            for (b, &base_b) in base.iter().enumerate().take(i as usize + 1 - a) {
                let add = dp[a]
                    .checked_mul(base_b)
                    .ok_or(Error::Overflow("kunneth convolution"))?;
                next[a + b] = next[a + b]
                    .checked_add(add)
                    .ok_or(Error::Overflow("kunneth convolution"))?;
            }
        }
        dp = next;
    }
    Ok(dp[i as usize])
}
