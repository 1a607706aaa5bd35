//! Partitions and their p-adic structure: dominance order, conjugates,
//! p-restricted layers, p-cores via beta numbers.
//!
//! Everything here is exact integer combinatorics with value semantics.
//! Partitions are stored in canonical form: weakly decreasing positive
//! parts, no trailing zeros; the empty partition is the unique partition
//! of 0 and prints as "0".

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// A partition of a nonnegative integer.
///
/// Ord is lexicographic on the part sequence. Restricted to partitions of
/// one fixed integer this is a linear extension of dominance (lambda
/// dominates mu implies lambda >= mu lexicographically), which is what the
/// triangular solvers in schur_data and cohomology rely on.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Canonicalizes: sorts descending and drops zeros. Total on any
    /// multiset of nonnegative integers.
    pub fn new(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// The integer this partitions.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part at 0-based index, 0 beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let rows = self.0.len() as u32;
        if rows == 0 {
            return Partition::empty();
        }
        let mut cols = Vec::with_capacity(self.0[0] as usize);
        for j in 0..self.0[0] {
            cols.push(self.0.iter().filter(|&&x| x > j).count() as u32);
        }
        Partition(cols)
    }

    /// true iff all partial sums of self are <= those of other.
    /// Defined only between partitions of the same integer.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.clone(),
                right: other.clone(),
                lsize: self.size(),
                rsize: other.size(),
            });
        }
        let mut a = 0u64;
        let mut b = 0u64;
        for i in 0..self.0.len().max(other.0.len()) {
            a += self.part(i) as u64;
            b += other.part(i) as u64;
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Part-wise containment of Young diagrams (any sizes).
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .0
            .iter()
            .enumerate()
            .all(|(i, &x)| self.part(i) >= x)
    }

    /// self + k * other, part-wise.
    pub fn scaled_add(&self, k: u32, other: &Partition) -> Partition {
        let rows = self.0.len().max(other.0.len());
        Partition::new(
            (0..rows)
                .map(|i| self.part(i) + k * other.part(i))
                .collect(),
        )
    }

    /// Consecutive part differences < p and last part < p.
    pub fn is_p_restricted(&self, p: u64) -> bool {
        let p = p as u32;
        for w in self.0.windows(2) {
            if w[0] - w[1] >= p {
                return false;
            }
        }
        self.0.last().map_or(true, |&last| last < p)
    }

    /// The unique split lambda = lambda0 + p*mu with lambda0 p-restricted.
    ///
    /// Built bottom-up: the last part of lambda0 is forced mod p, and each
    /// row above takes the least value >= the row below in its congruence
    /// class. That keeps lambda0 restricted and makes (lambda-lambda0)/p
    /// weakly decreasing.
    pub fn restricted_split(&self, p: u64) -> (Partition, Partition) {
        let p = p as u32;
        let n = self.0.len();
        let mut lo = vec![0u32; n];
        for i in (0..n).rev() {
            let below = if i + 1 < n { lo[i + 1] } else { 0 };
            lo[i] = below + (self.0[i] - below) % p;
        }
        let mu: Vec<u32> = (0..n).map(|i| (self.0[i] - lo[i]) / p).collect();
        (Partition::new(lo), Partition::new(mu))
    }

    /// Full expansion lambda = sum_i p^i lambda_(i) into p-restricted layers.
    pub fn p_adic_expansion(&self, p: u64) -> PAdicExpansion {
        let mut layers = Vec::new();
        let mut rest = self.clone();
        while !rest.is_empty() {
            let (lo, mu) = rest.restricted_split(p);
            layers.push(lo);
            rest = mu;
        }
        PAdicExpansion { p, layers }
    }

    /// p-core by the abacus: beta numbers on p runners, slide all beads down.
    /// Independent of any hook-removal order by construction.
    pub fn p_core(&self, p: u64) -> Partition {
        let p = p as usize;
        let n = self.0.len().max(1);
        // beta set: lambda_i + (n-1-i), all distinct
        let betas: Vec<usize> = (0..n)
            .map(|i| self.part(i) as usize + (n - 1 - i))
            .collect();
        let mut runner_counts = vec![0usize; p];
        for &b in &betas {
            runner_counts[b % p] += 1;
        }
        // slide: runner r keeps its bead count at the lowest positions
        let mut new_betas: Vec<usize> = Vec::with_capacity(n);
        for (r, &c) in runner_counts.iter().enumerate() {
            for k in 0..c {
                new_betas.push(r + k * p);
            }
        }
        new_betas.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = new_betas
            .iter()
            .enumerate()
            .map(|(i, &b)| (b - (n - 1 - i)) as u32)
            .collect();
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. "4,1,1"; "0" is the empty partition.
    fn from_str(s: &str) -> Result<Partition> {
        let t = s.trim();
        if t == "0" {
            return Ok(Partition::empty());
        }
        let err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if t.is_empty() {
            return Err(err("empty string (the empty partition is written \"0\")"));
        }
        let mut parts = Vec::new();
        for piece in t.split(',') {
            let v: u32 = piece
                .trim()
                .parse()
                .map_err(|_| err("parts must be positive integers"))?;
            if v == 0 {
                return Err(err("zero part (write the empty partition as \"0\")"));
            }
            parts.push(v);
        }
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(err("parts must be weakly decreasing"));
            }
        }
        Ok(Partition(parts))
    }
}

/// The layers of lambda = sum_i p^i lambda_(i), each p-restricted.
/// Trailing empty layers are not stored; layer(i) is total.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PAdicExpansion {
    pub p: u64,
    pub layers: Vec<Partition>,
}

impl PAdicExpansion {
    pub fn layer(&self, i: usize) -> Partition {
        self.layers.get(i).cloned().unwrap_or_else(Partition::empty)
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn reconstruct(&self) -> Partition {
        let mut acc = Partition::empty();
        let mut scale = 1u32;
        for layer in &self.layers {
            acc = acc.scaled_add(scale, layer);
            scale *= self.p as u32;
        }
        acc
    }
}

/// All partitions of d in descending lexicographic order, (d) first,
/// (1^d) last. partitions_of(0) is the singleton [empty].
pub fn partitions_of(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    gen_parts(d, d, &mut cur, &mut out);
    out
}

fn gen_parts(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for next in (1..=rest.min(max)).rev() {
        cur.push(next);
        gen_parts(rest - next, next, cur, out);
        cur.pop();
    }
}

/// Partitions of d with all parts < p times a staircase step, i.e.
/// p-restricted ones, in descending lex order.
pub fn restricted_partitions_of(d: u32, p: u64) -> Vec<Partition> {
    partitions_of(d)
        .into_iter()
        .filter(|l| l.is_p_restricted(p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "1", "4,1,1", "3,3,2", "17,13,13,4"] {
            assert_eq!(pt(s).to_string(), s);
        }
        assert!("".parse::<Partition>().is_err());
        assert!("3,4".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("-1".parse::<Partition>().is_err());
    }

    #[test]
    fn dominance_examples() {
        assert!(pt("1,1,1,1").dominance_leq(&pt("4")).unwrap());
        assert!(pt("2,2").dominance_leq(&pt("3,1")).unwrap());
        // incomparable pair
        assert!(!pt("3,1,1,1").dominance_leq(&pt("2,2,2")).unwrap());
        assert!(!pt("2,2,2").dominance_leq(&pt("3,1,1,1")).unwrap());
        // size mismatch is an error, not false
        assert!(pt("2,1").dominance_leq(&pt("2,2")).is_err());
    }

    #[test]
    fn conjugate_involution_and_example() {
        assert_eq!(pt("3,1").conjugate(), pt("2,1,1"));
        for d in 0..=9 {
            for l in partitions_of(d) {
                assert_eq!(l.conjugate().conjugate(), l);
            }
        }
    }

    #[test]
    fn dominance_conjugation_duality() {
        for d in 1..=8 {
            let ps = partitions_of(d);
            for a in &ps {
                for b in &ps {
                    assert_eq!(
                        a.dominance_leq(b).unwrap(),
                        b.conjugate().dominance_leq(&a.conjugate()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn restricted_split_examples() {
        let (l0, mu) = pt("4,1,1").restricted_split(2);
        assert_eq!((l0, mu), (pt("2,1,1"), pt("1")));
        let (l0, mu) = pt("8,8,8").restricted_split(2);
        assert_eq!((l0, mu), (Partition::empty(), pt("4,4,4")));
        // already restricted: identity split
        let (l0, mu) = pt("2,1,1").restricted_split(2);
        assert_eq!((l0, mu), (pt("2,1,1"), Partition::empty()));
    }

    #[test]
    fn p_adic_expansion_layers() {
        // (15,5,5,1) = (1^4) + 2*(1) + 4*(1^3) + 8*(1)
        let e = pt("15,5,5,1").p_adic_expansion(2);
        assert_eq!(
            e.layers,
            vec![pt("1,1,1,1"), pt("1"), pt("1,1,1"), pt("1")]
        );
        // (57,41,9,8) = (1^3) + 8*(1^4) + 16*(1) + 32*(1^2)
        let e = pt("57,41,9,8").p_adic_expansion(2);
        assert_eq!(e.layer(0), pt("1,1,1"));
        assert_eq!(e.layer(1), Partition::empty());
        assert_eq!(e.layer(2), Partition::empty());
        assert_eq!(e.layer(3), pt("1,1,1,1"));
        assert_eq!(e.layer(4), pt("1"));
        assert_eq!(e.layer(5), pt("1,1"));
        assert!(Partition::empty().p_adic_expansion(2).layers.is_empty());
    }

    #[test]
    fn p_adic_round_trip_exhaustive() {
        for p in [2u64, 3, 5] {
            for d in 0..=12 {
                for l in partitions_of(d) {
                    let e = l.p_adic_expansion(p);
                    assert_eq!(e.reconstruct(), l, "p={} lambda={}", p, l);
                    for layer in &e.layers {
                        assert!(layer.is_p_restricted(p));
                    }
                }
            }
        }
    }

    #[test]
    fn restricted_flags() {
        assert!(pt("2,1,1").is_p_restricted(2));
        assert!(!pt("3,1").is_p_restricted(2));
        assert!(!pt("2,2").is_p_restricted(2));
        assert!(pt("2,2,1").is_p_restricted(3));
        assert!(Partition::empty().is_p_restricted(2));
    }

    #[test]
    fn p_core_examples() {
        assert_eq!(pt("2,2,2").p_core(2), Partition::empty());
        assert_eq!(pt("2,1").p_core(2), pt("2,1"));
        assert_eq!(pt("3").p_core(2), pt("1"));
        assert_eq!(pt("4,2").p_core(2), Partition::empty());
        // hook lengths of (4,2) are {5,4,2,1,2,1}: no 3-hooks, it is a 3-core
        assert_eq!(pt("4,2").p_core(3), pt("4,2"));
        assert_eq!(pt("4,1").p_core(2), pt("2,1"));
    }

    /// Naive rim-hook removal for cross-checking p_core: remove p-rim-hooks
    /// in an order driven by `seed` until none remain.
    fn core_by_hook_removal(l: &Partition, p: u32, seed: u64) -> Partition {
        let mut parts: Vec<u32> = l.parts().to_vec();
        let mut rng = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        loop {
            // all ways to remove a rim p-hook: pick start row i, take cells
            // down the rim; equivalent beta-number form: some beta_i >= p
            // with beta_i - p not in the beta set
            let n = parts.len().max(1);
            let betas: Vec<i64> = (0..n)
                .map(|i| *parts.get(i).unwrap_or(&0) as i64 + (n - 1 - i) as i64)
                .collect();
            let mut moves = Vec::new();
            for (i, &b) in betas.iter().enumerate() {
                if b >= p as i64 && !betas.contains(&(b - p as i64)) {
                    moves.push(i);
                }
            }
            if moves.is_empty() {
                return Partition::new(parts);
            }
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            let pick = moves[(rng as usize) % moves.len()];
            let mut nb = betas.clone();
            nb[pick] -= p as i64;
            nb.sort_unstable_by(|a, b| b.cmp(a));
            parts = nb
                .iter()
                .enumerate()
                .map(|(i, &b)| (b - (n - 1 - i) as i64) as u32)
                .collect();
        }
    }

    #[test]
    fn p_core_independent_of_removal_order() {
        for p in [2u32, 3] {
            for d in 0..=10 {
                for l in partitions_of(d) {
                    let abacus = l.p_core(p as u64);
                    for seed in 0..5 {
                        assert_eq!(
                            core_by_hook_removal(&l, p, seed),
                            abacus,
                            "p={} lambda={}",
                            p,
                            l
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn partitions_of_order_and_count() {
        let p6 = partitions_of(6);
        assert_eq!(p6.len(), 11);
        assert_eq!(p6.first().unwrap(), &pt("6"));
        assert_eq!(p6.last().unwrap(), &pt("1,1,1,1,1,1"));
        // strictly descending lex
        for w in p6.windows(2) {
            assert!(w[0] > w[1]);
        }
        assert_eq!(partitions_of(0).len(), 1);
        // p(12) = 77
        assert_eq!(partitions_of(12).len(), 77);
    }

    #[test]
    fn lex_order_extends_dominance() {
        for d in 1..=9 {
            let ps = partitions_of(d);
            for a in &ps {
                for b in &ps {
                    if a.dominance_leq(b).unwrap() {
                        assert!(a <= b, "{} vs {}", a, b);
                    }
                }
            }
        }
    }
}
