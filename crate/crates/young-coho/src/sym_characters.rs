//! Ordinary character theory of the symmetric group: the character table
//! via Murnaghan-Nakayama, class sizes, and exact class-function arithmetic.
//!
//! No floating point: character values are i64, inner products are exact
//! rationals. Tables are memoized per degree behind a global lock.

use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// An integer-valued class function on Sigma_d. Values are indexed by the
/// canonical class order: partitions_of(d), descending lex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassFunction {
    pub d: u32,
    pub values: Vec<i64>,
}

/// Exact rational, always reduced with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rational {
    pub num: i128,
    pub den: i128,
}

impl Rational {
    pub fn new(num: i128, den: i128) -> Rational {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let sign = if den < 0 { -1 } else { 1 };
        Rational {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn integer(n: i128) -> Rational {
        Rational { num: n, den: 1 }
    }

    pub fn as_integer(&self) -> Option<i128> {
        (self.den == 1).then_some(self.num)
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// The full character table of Sigma_d plus class bookkeeping.
pub struct CharacterTable {
    pub d: u32,
    /// Cycle types, descending lex; shared index space for rows and columns.
    pub classes: Vec<Partition>,
    pub class_sizes: Vec<u128>,
    index: HashMap<Partition, usize>,
    /// chars[i][j] = chi^{classes[i]}(classes[j])
    chars: Vec<Vec<i64>>,
    factorial: u128,
}

impl CharacterTable {
    pub fn class_index(&self, mu: &Partition) -> Option<usize> {
        self.index.get(mu).copied()
    }

    pub fn character(&self, lambda: &Partition) -> Result<ClassFunction> {
        let i = self.class_index(lambda).ok_or_else(|| Error::SizeMismatch {
            left: lambda.clone(),
            right: Partition::new(vec![self.d]),
            lsize: lambda.size(),
            rsize: self.d,
        })?;
        Ok(ClassFunction {
            d: self.d,
            values: self.chars[i].clone(),
        })
    }

    /// chi^lambda(identity): the number of standard tableaux of shape lambda.
    pub fn dim(&self, lambda: &Partition) -> Result<i64> {
        let i = self
            .class_index(lambda)
            .ok_or_else(|| Error::Internal(format!("{} is not a partition of {}", lambda, self.d)))?;
        // the identity class (1^d) sorts last in descending lex order
        Ok(self.chars[i][self.classes.len() - 1])
    }

    pub fn inner_product(&self, f: &ClassFunction, g: &ClassFunction) -> Result<Rational> {
        if f.d != self.d || g.d != self.d {
            return Err(Error::Internal(format!(
                "class functions of degree {}/{} against table of degree {}",
                f.d, g.d, self.d
            )));
        }
        let mut acc: i128 = 0;
        for j in 0..self.classes.len() {
            let term = (self.class_sizes[j] as i128)
                .checked_mul(f.values[j] as i128)
                .and_then(|t| t.checked_mul(g.values[j] as i128))
                .ok_or(Error::Overflow("character inner product"))?;
            acc = acc.checked_add(term).ok_or(Error::Overflow("character inner product"))?;
        }
        Ok(Rational::new(acc, self.factorial as i128))
    }

    pub fn pointwise_product(&self, f: &ClassFunction, g: &ClassFunction) -> Result<ClassFunction> {
        if f.d != g.d {
            return Err(Error::Internal(format!(
                "pointwise product across degrees {} and {}",
                f.d, g.d
            )));
        }
        let values = f
            .values
            .iter()
            .zip(&g.values)
            .map(|(&a, &b)| a.checked_mul(b).ok_or(Error::Overflow("pointwise product")))
            .collect::<Result<Vec<i64>>>()?;
        Ok(ClassFunction { d: f.d, values })
    }
}

/// |class of cycle type mu| = d! / prod_i i^{m_i} m_i!.
pub fn class_size(mu: &Partition) -> Result<u128> {
    let d = mu.size();
    let fact = factorial(d)?;
    let mut denom: u128 = 1;
    let mut i = 0;
    let parts = mu.parts();
    while i < parts.len() {
        let v = parts[i];
        let mut m = 0u32;
        while i < parts.len() && parts[i] == v {
            m += 1;
            i += 1;
        }
        for k in 1..=m as u128 {
            denom = denom
                .checked_mul(v as u128)
                .and_then(|x| x.checked_mul(k))
                .ok_or(Error::Overflow("class size"))?;
        }
    }
    Ok(fact / denom)
}

fn factorial(d: u32) -> Result<u128> {
    let mut f: u128 = 1;
    for k in 2..=d as u128 {
        f = f.checked_mul(k).ok_or(Error::Overflow("factorial"))?;
    }
    Ok(f)
}

/// chi^lambda as a class function; builds (and caches) the full table for d.
pub fn irreducible_character(lambda: &Partition) -> Result<ClassFunction> {
    character_table(lambda.size())?.character(lambda)
}

/// Memoized full table for Sigma_d.
pub fn character_table(d: u32) -> Result<Arc<CharacterTable>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CharacterTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&d) {
        return Ok(t.clone());
    }
    let built = Arc::new(build_table(d)?);
    cache.lock().unwrap().insert(d, built.clone());
    Ok(built)
}

fn build_table(d: u32) -> Result<CharacterTable> {
    let classes = partitions_of(d);
    let mut class_sizes = Vec::with_capacity(classes.len());
    for mu in &classes {
        class_sizes.push(class_size(mu)?);
    }
    let index: HashMap<Partition, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let mut memo: HashMap<(Partition, Partition), i64> = HashMap::new();
    let mut chars = Vec::with_capacity(classes.len());
    for lambda in &classes {
        let row: Vec<i64> = classes
            .iter()
            .map(|mu| mn(lambda, mu, &mut memo))
            .collect();
        chars.push(row);
    }
    Ok(CharacterTable {
        d,
        classes,
        class_sizes,
        index,
        chars,
        factorial: factorial(d)?,
    })
}

/// Murnaghan-Nakayama: strip one cycle of mu (the largest; any order gives
/// the same value) as a rim hook from lambda in all ways.
///
/// Beta-number form: a rim k-hook removal is a bead move beta -> beta - k
/// with the target free; its sign is (-1)^{number of beads strictly between}.
fn mn(lambda: &Partition, mu: &Partition, memo: &mut HashMap<(Partition, Partition), i64>) -> i64 {
    if lambda.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let k = mu.parts()[0] as i64;
    let rest = Partition::new(mu.parts()[1..].to_vec());
    let n = lambda.len();
    let betas: Vec<i64> = (0..n)
        .map(|i| lambda.part(i) as i64 + (n - 1 - i) as i64)
        .collect();
    let mut total = 0i64;
    for (i, &b) in betas.iter().enumerate() {
        let target = b - k;
        if target < 0 || betas.contains(&target) {
            continue;
        }
        let between = betas.iter().filter(|&&x| x > target && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = betas.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(j, &x)| (x - (n - 1 - j) as i64) as u32)
            .collect();
        total += sign * mn(&Partition::new(parts), &rest, memo);
    }
    memo.insert(key, total);
    total
}
