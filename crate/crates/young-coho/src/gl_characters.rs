//! Formal characters of polynomial GL_d-modules in the Schur basis.
//!
//! Products use the Littlewood-Richardson rule, Frobenius twists use the
//! signed r-core/r-quotient expansion of a p-power-plethysm, weight spaces
//! come from Kostka numbers, and decomposition into simples goes through a
//! supplied DecompositionMatrix. Negative coefficients are legal inside
//! computations (twists introduce signs); genuine modules are validated by
//! their simple multiplicities, not here.
//!
//! The number of GL variables is implicitly n = degree throughout; all
//! dimension evaluations are at 1^n.

use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};
use crate::schur_data::DecompositionMatrix;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

/// Integer linear combination of Schur functions of one fixed degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchurExpansion {
    pub degree: u32,
    coeffs: BTreeMap<Partition, i64>,
}

impl SchurExpansion {
    pub fn zero(degree: u32) -> SchurExpansion {
        SchurExpansion {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single Schur function s_lambda.
    pub fn single(lambda: Partition) -> SchurExpansion {
        let degree = lambda.size();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(lambda, 1);
        SchurExpansion { degree, coeffs }
    }

    pub fn coeff(&self, lambda: &Partition) -> i64 {
        self.coeffs.get(lambda).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.coeffs.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, c: i64) -> Result<()> {
        if lambda.size() != self.degree {
            return Err(Error::Internal(format!(
                "term {} in expansion of degree {}",
                lambda, self.degree
            )));
        }
        let old = self.coeffs.get(&lambda).copied().unwrap_or(0);
        let new = old
            .checked_add(c)
            .ok_or(Error::Overflow("schur coefficient"))?;
        if new == 0 {
            // keep support minimal so equality is structural
            self.coeffs.remove(&lambda);
        } else {
            self.coeffs.insert(lambda, new);
        }
        Ok(())
    }

    pub fn add(&self, other: &SchurExpansion) -> Result<SchurExpansion> {
        if self.degree != other.degree {
            return Err(Error::Internal(format!(
                "adding expansions of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (l, c) in other.terms() {
            out.add_term(l.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scaled(&self, k: i64) -> Result<SchurExpansion> {
        let mut out = SchurExpansion::zero(self.degree);
        for (l, c) in self.terms() {
            out.add_term(
                l.clone(),
                c.checked_mul(k).ok_or(Error::Overflow("schur scale"))?,
            )?;
        }
        Ok(out)
    }

    /// Evaluation at 1^n: the dimension of the corresponding (virtual) module.
    pub fn dim_at(&self, n: u32) -> Result<i128> {
        let mut total: i128 = 0;
        for (l, c) in self.terms() {
            let d = schur_dim(l, n)?
                .checked_mul(c as i128)
                .ok_or(Error::Overflow("dimension"))?;
            total = total.checked_add(d).ok_or(Error::Overflow("dimension"))?;
        }
        Ok(total)
    }
}

impl std::fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in self.coeffs.iter() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if mag != 1 {
                write!(f, "{}*", mag)?;
            }
            write!(f, "s({})", l)?;
        }
        Ok(())
    }
}

/// s_mu(1^n) by the hook content formula; 0 when mu has more than n rows.
fn schur_dim(mu: &Partition, n: u32) -> Result<i128> {
    let conj = mu.conjugate();
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 1..=mu.len() as u32 {
        for j in 1..=mu.part(i as usize - 1) {
            let content = n as i128 + j as i128 - i as i128;
            if content <= 0 {
                return Ok(0);
            }
            let hook = (mu.part(i as usize - 1) - j)
                + (conj.part(j as usize - 1) - i)
                + 1;
            num = num
                .checked_mul(content)
                .ok_or(Error::Overflow("schur dimension"))?;
            den = den
                .checked_mul(hook as i128)
                .ok_or(Error::Overflow("schur dimension"))?;
            let g = gcd128(num.unsigned_abs(), den.unsigned_abs()) as i128;
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1, "hook content formula must divide exactly");
    Ok(num / den)
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// ch S^a(V) = h_a = s_(a).
pub fn sym_power(a: u32) -> SchurExpansion {
    SchurExpansion::single(Partition::new(if a == 0 { vec![] } else { vec![a] }))
}

/// ch Lambda^a(V) = e_a = s_(1^a).
pub fn ext_power(a: u32) -> SchurExpansion {
    SchurExpansion::single(Partition::new(vec![1; a as usize]))
}

/// Littlewood-Richardson coefficient c^lambda_{mu nu}: LR skew tableaux of
/// shape lambda/mu and content nu, counted by backtracking over the reverse
/// reading word (top to bottom, right to left) with the lattice condition
/// checked incrementally. Memoized globally.
pub fn lr_coeff(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if mu.size() + nu.size() != lambda.size() || !lambda.contains(mu) {
        return 0;
    }
    static CACHE: OnceLock<Mutex<HashMap<(Partition, Partition, Partition), u64>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(&v) = cache.lock().unwrap().get(&key) {
        return v;
    }
    let cells: Vec<(usize, u32)> = (0..lambda.len())
        .flat_map(|r| {
            let lo = mu.part(r);
            let hi = lambda.part(r);
            (lo..hi).rev().map(move |c| (r, c))
        })
        .collect();
    let rows = lambda.len();
    let width = lambda.part(0) as usize;
    let mut grid = vec![vec![0u32; width]; rows];
    let mut counts = vec![0u32; nu.len() + 1];
    let total = fill(&cells, 0, lambda, mu, nu, &mut grid, &mut counts);
    cache.lock().unwrap().insert(key, total);
    total
}

fn fill(
    cells: &[(usize, u32)],
    at: usize,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    grid: &mut Vec<Vec<u32>>,
    counts: &mut Vec<u32>,
) -> u64 {
    if at == cells.len() {
        return 1;
    }
    let (r, c) = cells[at];
    let right_bound = if c + 1 < lambda.part(r) {
        grid[r][c as usize + 1]
    } else {
        u32::MAX
    };
    let above = if r > 0 && c >= mu.part(r - 1) {
        grid[r - 1][c as usize]
    } else {
        0
    };
    let mut total = 0;
    for v in (above + 1)..=(nu.len() as u32) {
        if v > right_bound {
            break;
        }
        if counts[v as usize] >= nu.part(v as usize - 1) {
            continue; // content exhausted
        }
        if v >= 2 && counts[v as usize] >= counts[v as usize - 1] {
            continue; // lattice word violated
        }
        grid[r][c as usize] = v;
        counts[v as usize] += 1;
        total += fill(cells, at + 1, lambda, mu, nu, grid, counts);
        counts[v as usize] -= 1;
    }
    grid[r][c as usize] = 0;
    total
}

/// Bilinear extension of s_mu * s_nu = sum c^lambda_{mu nu} s_lambda.
pub fn lr_product(a: &SchurExpansion, b: &SchurExpansion) -> Result<SchurExpansion> {
    let degree = a
        .degree
        .checked_add(b.degree)
        .ok_or(Error::Overflow("product degree"))?;
    let mut out = SchurExpansion::zero(degree);
    for lambda in partitions_of(degree) {
        let mut acc: i64 = 0;
        for (mu, cm) in a.terms() {
            if !lambda.contains(mu) {
                continue;
            }
            for (nu, cn) in b.terms() {
                let c = lr_coeff(&lambda, mu, nu);
                if c == 0 {
                    continue;
                }
                let c = i64::try_from(c).map_err(|_| Error::Overflow("lr coefficient"))?;
                let term = cm
                    .checked_mul(cn)
                    .and_then(|x| x.checked_mul(c))
                    .ok_or(Error::Overflow("lr product"))?;
                acc = acc.checked_add(term).ok_or(Error::Overflow("lr product"))?;
            }
        }
        if acc != 0 {
            out.add_term(lambda, acc)?;
        }
    }
    Ok(out)
}

/// Strip all r-ribbons from kappa via bead moves beta -> beta - r.
///
/// Returns the accumulated sign and the r-quotient when the r-core is empty,
/// None otherwise. The sign per move is (-1)^(beads strictly between), and
/// the product is independent of the stripping order.
fn core_quotient_sign(kappa: &Partition, r: u32) -> Option<(Vec<Partition>, i64)> {
    let mut n = kappa.len().max(1);
    if n % r as usize != 0 {
        n += r as usize - n % r as usize;
    }
    let mut betas: Vec<i64> = (0..n)
        .map(|i| kappa.part(i) as i64 + (n - 1 - i) as i64)
        .collect();
    let mut sign = 1i64;
    loop {
        let mut moved = false;
        for i in 0..betas.len() {
            let b = betas[i];
            let t = b - r as i64;
            if t >= 0 && !betas.contains(&t) {
                let between = betas.iter().filter(|&&x| x > t && x < b).count();
                if between % 2 == 1 {
                    sign = -sign;
                }
                betas[i] = t;
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    // core is empty iff the final bead set is {0, 1, ..., n-1}
    let mut final_sorted = betas.clone();
    final_sorted.sort_unstable();
    if final_sorted != (0..n as i64).collect::<Vec<_>>() {
        return None;
    }
    // quotient from the original beta set, runner by runner
    let orig: Vec<i64> = (0..n)
        .map(|i| kappa.part(i) as i64 + (n - 1 - i) as i64)
        .collect();
    let m = n / r as usize;
    let mut quotient = Vec::with_capacity(r as usize);
    for j in 0..r as i64 {
        let mut qs: Vec<i64> = orig
            .iter()
            .filter(|&&b| b % r as i64 == j)
            .map(|&b| b / r as i64)
            .collect();
        qs.sort_unstable_by(|a, b| b.cmp(a));
        debug_assert_eq!(qs.len(), m, "empty core forces balanced runners");
        let parts: Vec<u32> = qs
            .iter()
            .enumerate()
            .map(|(i, &q)| (q - (m - 1 - i) as i64) as u32)
            .collect();
        quotient.push(Partition::new(parts));
    }
    Some((quotient, sign))
}

/// A with its variables raised to the p^b power: the Adams operation psi^{p^b}
/// on formal characters. Adams operations compose, so the twist is b rounds
/// of psi^p; each round expands s_mu over partitions kappa with empty p-core,
/// signed, weighted by the coefficient of s_mu in the product of the p
/// quotient components of kappa. Those kappa biject with p-tuples of
/// partitions of total size |mu|, so a round walks quotient tuples, pruning
/// any prefix whose running product has left the sub-diagrams of a's terms.
pub fn frobenius_twist(a: &SchurExpansion, b: u32, p: u64) -> Result<SchurExpansion> {
    let r = u32::try_from(p).map_err(|_| Error::Overflow("twist power"))?;
    let mut cur = a.clone();
    for _ in 0..b {
        let degree = cur
            .degree
            .checked_mul(r)
            .ok_or(Error::Overflow("twist degree"))?;
        let mut out = SchurExpansion::zero(degree);
        if !cur.is_zero() {
            let mut quotient = vec![Partition::empty(); r as usize];
            let unit = SchurExpansion::single(Partition::empty());
            twist_tuples(&cur, r, cur.degree, 0, &unit, &mut quotient, &mut out)?;
        }
        cur = out;
    }
    Ok(cur)
}

/// Fill quotient[runner..], keeping the running LR product of the components
/// chosen so far; at a full tuple, emit the reconstructed kappa.
fn twist_tuples(
    a: &SchurExpansion,
    r: u32,
    remaining: u32,
    runner: usize,
    prod: &SchurExpansion,
    quotient: &mut Vec<Partition>,
    out: &mut SchurExpansion,
) -> Result<()> {
    if runner == quotient.len() {
        let mut acc = 0i64;
        for (mu, cm) in a.terms() {
            let c = prod.coeff(mu);
            if c != 0 {
                acc = acc
                    .checked_add(cm.checked_mul(c).ok_or(Error::Overflow("twist"))?)
                    .ok_or(Error::Overflow("twist"))?;
            }
        }
        if acc != 0 {
            let kappa = partition_from_quotient(quotient, r);
            let (check, sign) =
                core_quotient_sign(&kappa, r).expect("built from a quotient, so the core is empty");
            debug_assert_eq!(&check, quotient);
            out.add_term(kappa, acc.checked_mul(sign).ok_or(Error::Overflow("twist"))?)?;
        }
        return Ok(());
    }
    let last = runner + 1 == quotient.len();
    for w in 0..=remaining {
        if last && w != remaining {
            continue;
        }
        for q in partitions_of(w) {
            let next = if q.is_empty() {
                prod.clone()
            } else {
                let full = lr_product(prod, &SchurExpansion::single(q.clone()))?;
                // a term can only grow under further factors, so anything
                // no longer inside some target diagram is dead
                let mut kept = SchurExpansion::zero(full.degree);
                for (nu, c) in full.terms() {
                    if a.terms().any(|(mu, _)| mu.contains(nu)) {
                        kept.add_term(nu.clone(), c)?;
                    }
                }
                if kept.is_zero() {
                    continue;
                }
                kept
            };
            quotient[runner] = q;
            twist_tuples(a, r, remaining - w, runner + 1, &next, quotient, out)?;
        }
        quotient[runner] = Partition::empty();
    }
    Ok(())
}

/// Inverse of the quotient map: runner j holds the beads congruent to j mod r.
fn partition_from_quotient(quotient: &[Partition], r: u32) -> Partition {
    let m = quotient.iter().map(|q| q.len()).max().unwrap_or(0) + 1;
    let mut beta: Vec<u64> = Vec::with_capacity(m * quotient.len());
    for (j, q) in quotient.iter().enumerate() {
        for k in 0..m {
            let part = q.parts().get(k).copied().unwrap_or(0) as u64;
            beta.push((part + (m - 1 - k) as u64) * r as u64 + j as u64);
        }
    }
    beta.sort_unstable_by(|x, y| y.cmp(x));
    let n = beta.len();
    let parts: Vec<u32> = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| (b - (n - 1 - i) as u64) as u32)
        .filter(|&x| x > 0)
        .collect();
    Partition::new(parts)
}

/// Kostka number K_{mu lambda}: semistandard tableaux of shape mu, content
/// lambda. Computed by peeling the largest entry as a horizontal strip.
pub fn kostka(mu: &Partition, lambda: &Partition) -> Result<u64> {
    if mu.size() != lambda.size() {
        return Err(Error::SizeMismatch {
            left: mu.clone(),
            right: lambda.clone(),
            lsize: mu.size(),
            rsize: lambda.size(),
        });
    }
    Ok(kostka_inner(mu, lambda))
}

fn kostka_inner(mu: &Partition, lambda: &Partition) -> u64 {
    if mu.is_empty() {
        return 1;
    }
    static CACHE: OnceLock<Mutex<HashMap<(Partition, Partition), u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (mu.clone(), lambda.clone());
    if let Some(&v) = cache.lock().unwrap().get(&key) {
        return v;
    }
    let k = lambda.part(lambda.len() - 1); // smallest part carries the largest entry
    let rest = Partition::new(lambda.parts()[..lambda.len() - 1].to_vec());
    let mut total = 0;
    for inner in horizontal_strips_below(mu, k) {
        total += kostka_inner(&inner, &rest);
    }
    cache.lock().unwrap().insert(key, total);
    total
}

/// All partitions inner with mu/inner a horizontal strip of size k.
fn horizontal_strips_below(mu: &Partition, k: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let n = mu.len();
    let mut cur: Vec<u32> = Vec::with_capacity(n);
    fn rec(mu: &Partition, row: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if row == mu.len() {
            if left == 0 {
                out.push(Partition::new(cur.clone()));
            }
            return;
        }
        let lo = mu.part(row + 1).max(mu.part(row).saturating_sub(left));
        for v in lo..=mu.part(row) {
            let removed = mu.part(row) - v;
            cur.push(v);
            rec(mu, row + 1, left - removed, cur, out);
            cur.pop();
        }
    }
    rec(mu, 0, k, &mut cur, &mut out);
    out
}

/// dim of the lambda-weight space of A.
pub fn weight_multiplicity(a: &SchurExpansion, lambda: &Partition) -> Result<i64> {
    if lambda.size() != a.degree {
        return Err(Error::SizeMismatch {
            left: lambda.clone(),
            right: Partition::new(vec![a.degree]),
            lsize: lambda.size(),
            rsize: a.degree,
        });
    }
    let mut total: i64 = 0;
    for (mu, c) in a.terms() {
        let k = i64::try_from(kostka_inner(mu, lambda))
            .map_err(|_| Error::Overflow("kostka number"))?;
        let term = c.checked_mul(k).ok_or(Error::Overflow("weight multiplicity"))?;
        total = total
            .checked_add(term)
            .ok_or(Error::Overflow("weight multiplicity"))?;
    }
    Ok(total)
}

/// [A : L(lambda)] for every lambda: Schur coefficients are Weyl multiplicities,
/// so the answer is sum_mu coeff(mu) * d_{mu lambda}.
pub fn simple_multiplicities(
    a: &SchurExpansion,
    dm: &DecompositionMatrix,
) -> Result<BTreeMap<Partition, i64>> {
    if a.degree != dm.d {
        return Err(Error::SizeMismatch {
            left: Partition::new(vec![a.degree]),
            right: Partition::new(vec![dm.d]),
            lsize: a.degree,
            rsize: dm.d,
        });
    }
    let mut out: BTreeMap<Partition, i64> = BTreeMap::new();
    for (mu, c) in a.terms() {
        for (lambda, m) in dm.row(mu) {
            let m = i64::try_from(m).map_err(|_| Error::Overflow("decomposition entry"))?;
            let term = c.checked_mul(m).ok_or(Error::Overflow("simple multiplicity"))?;
            let slot = out.entry(lambda).or_insert(0);
            *slot = slot
                .checked_add(term)
                .ok_or(Error::Overflow("simple multiplicity"))?;
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

/// ch L(lambda) by unitriangular inversion of the decomposition matrix,
/// built up from the dominance-least partition.
pub fn simple_character(lambda: &Partition, dm: &DecompositionMatrix) -> Result<SchurExpansion> {
    let mut chars: HashMap<Partition, SchurExpansion> = HashMap::new();
    // ascending lex = reverse of the canonical order; a linear extension of
    // reverse dominance, so factors below mu are always ready
    for mu in dm.parts().iter().rev() {
        let mut exp = SchurExpansion::single(mu.clone());
        for (l, m) in dm.row(mu) {
            if &l == mu {
                continue;
            }
            let m = i64::try_from(m).map_err(|_| Error::Overflow("decomposition entry"))?;
            let prev = chars
                .get(&l)
                .ok_or_else(|| Error::Internal(format!("inversion order broke at {}", l)))?;
            exp = exp.add(&prev.scaled(-m)?)?;
        }
        chars.insert(mu.clone(), exp);
        if mu == lambda {
            break;
        }
    }
    chars
        .remove(lambda)
        .ok_or_else(|| Error::Internal(format!("{} is not a partition of {}", lambda, dm.d)))
}

/// Doty's rule: the multiplicity-free set of simples in S^m(V) over F_p.
/// One constituent per p-ary digit splitting m = sum p^i m_i, with layer i
/// of shape ((p-1)^{a_i}, b_i) where m_i = a_i (p-1) + b_i.
pub fn doty_constituents(m: u32, p: u64) -> Vec<Partition> {
    fn layer_shape(mi: u32, p: u64) -> Partition {
        let q = (p - 1) as u32;
        let a = mi / q;
        let b = mi % q;
        let mut parts = vec![q; a as usize];
        if b > 0 {
            parts.push(b);
        }
        Partition::new(parts)
    }
    fn rec(m: u32, p: u64) -> Vec<Partition> {
        if m == 0 {
            return vec![Partition::empty()];
        }
        let mut res = Vec::new();
        let mut m0 = m % p as u32; // smallest digit with m - m0 divisible by p
        while m0 <= m {
            let shape = layer_shape(m0, p);
            for hi in rec((m - m0) / p as u32, p) {
                res.push(shape.scaled_add(p as u32, &hi));
            }
            m0 += p as u32;
        }
        res
    }
    let set: BTreeSet<Partition> = rec(m, p).into_iter().collect();
    let mut v: Vec<Partition> = set.into_iter().collect();
    // canonical descending lex, matching partitions_of
    v.sort_by(|a, b| b.cmp(a));
    v
}
