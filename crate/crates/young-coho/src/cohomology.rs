//! Top-level computations: cohomology of Young and permutation modules,
//! Young tensor decompositions, and Ext groups between Young modules.
//!
//! Everything is a reduction to the homology module of dyer_lashof:
//!   dim H^i(Sigma_d, Y^lambda)  = [H_i(Sigma_d, V^td) : L(lambda)]
//!   dim H^i(Sigma_d, M^lambda)  = dim H_i(Sigma_d, V^td)_lambda
//!   dim Ext^i(Y^lambda, Y^mu)   = sum_sigma g_sigma [H_i : L(sigma)]
//! with g the Young tensor coefficients recovered from ordinary characters.

use crate::dyer_lashof::homology_module;
use crate::error::{Error, Result};
use crate::gl_characters::{simple_multiplicities, weight_multiplicity};
use crate::partitions::Partition;
use crate::schur_data::{DataStore, DecompositionMatrix};
use crate::sym_characters::{character_table, ClassFunction};
use std::collections::BTreeMap;

fn check_lambda(d: u32, lambda: &Partition) -> Result<()> {
    if lambda.size() != d {
        return Err(Error::SizeMismatch {
            left: lambda.clone(),
            right: Partition::new(vec![d]),
            lsize: lambda.size(),
            rsize: d,
        });
    }
    Ok(())
}

fn check_data(p: u64, d: u32, dm: &DecompositionMatrix) -> Result<()> {
    if dm.p != p || dm.d != d {
        return Err(Error::DataInvalid(format!(
            "decomposition matrix is for p={} d={}, computation needs p={} d={}",
            dm.p, dm.d, p, d
        )));
    }
    Ok(())
}

/// dim H^i(Sigma_d, Y^lambda).
pub fn h_young(p: u64, d: u32, lambda: &Partition, i: u32, dm: &DecompositionMatrix) -> Result<u64> {
    check_lambda(d, lambda)?;
    if d == 0 {
        return Ok(if i == 0 { 1 } else { 0 });
    }
    check_data(p, d, dm)?;
    let h = homology_module(p, d, i)?;
    let simples = simple_multiplicities(&h, dm)?;
    let v = simples.get(lambda).copied().unwrap_or(0);
    u64::try_from(v).map_err(|_| {
        Error::Internal(format!(
            "negative multiplicity {} of L({}) in a genuine module",
            v, lambda
        ))
    })
}

/// dim H^i(Sigma_d, M^lambda); needs no decomposition data. Compositions
/// should be sorted into partitions by the caller (weight spaces only see
/// the sorted content).
pub fn h_perm(p: u64, d: u32, lambda: &Partition, i: u32) -> Result<u64> {
    check_lambda(d, lambda)?;
    if d == 0 {
        return Ok(if i == 0 { 1 } else { 0 });
    }
    let h = homology_module(p, d, i)?;
    let v = weight_multiplicity(&h, lambda)?;
    u64::try_from(v).map_err(|_| {
        Error::Internal(format!("negative weight multiplicity at {}", lambda))
    })
}

/// The ordinary character of Y^lambda: column lambda of the decomposition
/// matrix against the irreducible characters.
pub fn young_character(lambda: &Partition, dm: &DecompositionMatrix) -> Result<ClassFunction> {
    let t = character_table(dm.d)?;
    let mut values = vec![0i64; t.classes.len()];
    for (mu, m) in dm.column(lambda) {
        let chi = t.character(&mu)?;
        let m = i64::try_from(m).map_err(|_| Error::Overflow("decomposition entry"))?;
        for (v, c) in values.iter_mut().zip(&chi.values) {
            *v = v
                .checked_add(m.checked_mul(*c).ok_or(Error::Overflow("young character"))?)
                .ok_or(Error::Overflow("young character"))?;
        }
    }
    Ok(ClassFunction { d: dm.d, values })
}

/// Y^lambda tensor Y^mu = sum_sigma g_sigma Y^sigma.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct YoungTensorDecomposition {
    pub lambda: Partition,
    pub mu: Partition,
    pub g: BTreeMap<Partition, u64>,
}

/// Recover the g coefficients from ordinary characters.
///
/// ch Y^sigma = chi^sigma + (strictly more dominant chi's), so in the basis
/// of irreducible characters the transition matrix is unitriangular: back
/// substitution runs over partitions from the dominance-least upward
/// (ascending lex, the reverse of the canonical order).
pub fn young_tensor(
    lambda: &Partition,
    mu: &Partition,
    dm: &DecompositionMatrix,
) -> Result<YoungTensorDecomposition> {
    check_lambda(dm.d, lambda)?;
    check_lambda(dm.d, mu)?;
    let t = character_table(dm.d)?;
    let product = t.pointwise_product(
        &young_character(lambda, dm)?,
        &young_character(mu, dm)?,
    )?;
    // c_tau = <product, chi^tau>, then peel g's bottom-up
    let mut c: BTreeMap<Partition, i64> = BTreeMap::new();
    for tau in dm.parts() {
        let ip = t.inner_product(&product, &t.character(tau)?)?;
        let v = ip.as_integer().ok_or_else(|| {
            Error::DataInvalid(format!(
                "character product has non-integer multiplicity {} at chi^{}",
                ip, tau
            ))
        })?;
        c.insert(
            tau.clone(),
            i64::try_from(v).map_err(|_| Error::Overflow("character multiplicity"))?,
        );
    }
    let mut g: BTreeMap<Partition, u64> = BTreeMap::new();
    for tau in dm.parts().iter().rev() {
        let mut val = c[tau];
        for (sigma, m) in dm.row(tau) {
            if &sigma == tau {
                continue;
            }
            let gs = g.get(&sigma).copied().unwrap_or(0);
            val -= i64::try_from(m * gs).map_err(|_| Error::Overflow("tensor coefficient"))?;
        }
        if val < 0 {
            return Err(Error::DataInvalid(format!(
                "Young tensor elimination produced g_{} = {} < 0 for {} (x) {}",
                tau, val, lambda, mu
            )));
        }
        if val != 0 {
            g.insert(tau.clone(), val as u64);
        }
    }
    Ok(YoungTensorDecomposition {
        lambda: lambda.clone(),
        mu: mu.clone(),
        g,
    })
}

/// dim Ext^i(Y^lambda, Y^mu) = sum_sigma g_sigma^{lambda,mu} dim H^i(Y^sigma).
pub fn ext_young(
    p: u64,
    d: u32,
    lambda: &Partition,
    mu: &Partition,
    i: u32,
    dm: &DecompositionMatrix,
) -> Result<u64> {
    check_data(p, d, dm)?;
    let dec = young_tensor(lambda, mu, dm)?;
    let mut total: u64 = 0;
    for (sigma, gs) in &dec.g {
        let h = h_young(p, d, sigma, i, dm)?;
        total = gs
            .checked_mul(h)
            .and_then(|x| total.checked_add(x))
            .ok_or(Error::Overflow("ext dimension"))?;
    }
    Ok(total)
}

/// Does every layer of nu's p-adic expansion have Doty shape
/// ((p-1)^a, b) with 0 <= b < p-1? Equivalent to [S^|nu|(V) : L(nu)] != 0.
pub fn is_doty_shape(nu: &Partition, p: u64) -> bool {
    let q = (p - 1) as u32;
    nu.p_adic_expansion(p).layers.iter().all(|layer| {
        let parts = layer.parts();
        match parts.iter().position(|&x| x != q) {
            None => true,
            Some(k) => k + 1 == parts.len() && parts[k] < q,
        }
    })
}

/// True iff H^bullet(Sigma_d, Y^lambda) is identically zero: lambda_(0)
/// nonempty and not a constituent of its symmetric power.
pub fn vanishes_identically(p: u64, lambda: &Partition) -> bool {
    let (lo, _) = lambda.restricted_split(p);
    !lo.is_empty() && !is_doty_shape(&lo, p)
}

/// Complexity of Y^lambda: |mu| where lambda = lambda_(0) + p mu.
pub fn complexity_young(p: u64, lambda: &Partition) -> u32 {
    let (_, mu) = lambda.restricted_split(p);
    mu.size()
}

/// Y^lambda is projective iff lambda is p-restricted.
pub fn is_projective_young(p: u64, lambda: &Partition) -> bool {
    lambda.is_p_restricted(p)
}

/// Y^lambda lies in the principal block iff its p-core matches the p-core
/// of the one-row partition (d).
pub fn in_principal_block(p: u64, lambda: &Partition) -> bool {
    let d = lambda.size();
    lambda.p_core(p) == Partition::new(vec![d]).p_core(p)
}

/// H^i(Sigma_{p^a d}, Y^{p^a lambda}) for a in [a_min, a_max], as (a, dim)
/// pairs. Errors if any needed decomposition matrix is not bundled.
pub fn stability_check(
    p: u64,
    lambda: &Partition,
    i: u32,
    a_min: u32,
    a_max: u32,
    store: &DataStore,
) -> Result<Vec<(u32, u64)>> {
    let mut out = Vec::new();
    for a in a_min..=a_max {
        let scale = (p as u128).pow(a);
        let scale = u32::try_from(scale).map_err(|_| Error::Overflow("stability scale"))?;
        let scaled = Partition::empty().scaled_add(scale, lambda);
        let d = scaled.size();
        let dm = store.decomposition(p, d)?;
        out.push((a, h_young(p, d, &scaled, i, &dm)?));
    }
    Ok(out)
}
