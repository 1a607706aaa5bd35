//! Closed forms for H^1 and H^2 of Young modules in characteristic 2,
//! plus the strip reduction that removes a restricted bottom layer.
//!
//! Both formulas read off the 2-adic layer decomposition
//! lambda = sum_t 2^t lambda_(t) (each layer 2-restricted) and run in time
//! linear in the number of parts, so they scale to partitions far beyond
//! the reach of the homology pipeline.

use crate::cohomology::is_doty_shape;
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// If lambda = lambda_(0) + p mu with [S^a(V) : L(lambda_(0))] != 0 for
/// a = |lambda_(0)|, then H^i(Sigma_d, Y^lambda) = H^i(Sigma_{d-a}, Y^{p mu})
/// and this returns p*mu. Errors when the bottom layer is not a symmetric
/// power constituent (the reduction does not apply).
pub fn strip_restricted(lambda: &Partition, p: u64) -> Result<Partition> {
    let (lo, mu) = lambda.restricted_split(p);
    if lo.is_empty() {
        return Ok(lambda.clone());
    }
    if !is_doty_shape(&lo, p) {
        return Err(Error::StripUndefined(lambda.clone()));
    }
    let scale = u32::try_from(p).map_err(|_| Error::Overflow("strip scale"))?;
    Ok(Partition::empty().scaled_add(scale, &mu))
}

fn is_one_column(nu: &Partition) -> bool {
    nu.parts().iter().all(|&x| x == 1)
}

/// (2, 1^b) with b >= 0
fn is_two_hook(nu: &Partition) -> bool {
    let p = nu.parts();
    !p.is_empty() && p[0] == 2 && p[1..].iter().all(|&x| x == 1)
}

/// dim H^1(Sigma_d, Y^lambda) at p = 2.
///
/// With s the least t >= 1 having lambda_(t) nonempty: the answer is 0
/// unless every other layer is a column 1^a, in which case it is
///   1 if lambda_(s) is (2, 1^a) or an odd column,
///   2 if lambda_(s) is an even column,
///   0 otherwise.
pub fn h1_closed(lambda: &Partition) -> u64 {
    if lambda.is_p_restricted(2) {
        return 0;
    }
    let exp = lambda.p_adic_expansion(2);
    let s = (1..exp.num_layers())
        .find(|&t| !exp.layer(t).is_empty())
        .expect("non-restricted partition has a nonzero upper layer");
    for t in 0..exp.num_layers() {
        if t != s && !is_one_column(&exp.layer(t)) {
            return 0;
        }
    }
    let ls = exp.layer(s);
    if is_two_hook(&ls) {
        1
    } else if is_one_column(&ls) {
        if ls.len() % 2 == 1 {
            1
        } else {
            2
        }
    } else {
        0
    }
}

/// H^2 lookup when layer 1 is nonempty: rows classify lambda_(s), columns
/// classify lambda_(1).
const H2_TABLE1: [[u64; 9]; 4] = [
    [3, 5, 4, 6, 5, 7, 2, 3, 1], // lambda_(s) an even column
    [2, 4, 3, 5, 4, 6, 2, 3, 1], // lambda_(s) an odd column
    [1, 1, 1, 1, 1, 1, 0, 0, 0], // lambda_(s) = (2, 1^b), b >= 1
    [1, 3, 2, 4, 3, 5, 2, 3, 1], // lambda_(s) empty
];

/// Column of H2_TABLE1 for lambda_(1), or None if the shape carries no
/// cohomology in degree 2.
fn h2_column(nu: &Partition) -> Option<usize> {
    let p = nu.parts();
    if is_one_column(nu) && !nu.is_empty() {
        let m = p.len();
        return Some(match m {
            1 => 0,
            2 => 1,
            _ => match m % 4 {
                3 => 2,
                0 => 3,
                1 => 4,
                _ => 5,
            },
        });
    }
    if is_two_hook(nu) {
        let e = p.len() - 1;
        if e % 2 == 1 {
            return Some(6);
        }
        if e >= 2 {
            return Some(7);
        }
        return None; // (2) itself
    }
    // (2, 2, 1^a) with a >= 1
    if p.len() >= 3 && p[0] == 2 && p[1] == 2 && p[2..].iter().all(|&x| x == 1) {
        return Some(8);
    }
    None
}

/// Row of H2_TABLE1 for lambda_(s), or None for shapes with no entry.
fn h2_row(nu: &Partition) -> Option<usize> {
    if nu.is_empty() {
        return Some(3);
    }
    if is_one_column(nu) {
        return Some(if nu.len() % 2 == 0 { 0 } else { 1 });
    }
    if is_two_hook(nu) && nu.len() >= 2 {
        return Some(2);
    }
    None
}

/// H^2 value when layer 1 is empty, by the shape of lambda_(s).
fn h2_isolated(nu: &Partition) -> u64 {
    let p = nu.parts();
    if nu.is_empty() {
        return 0;
    }
    if is_one_column(nu) {
        let m = p.len();
        return match m {
            1 => 2,
            2 => 5,
            _ => match m % 4 {
                3 => 3,
                0 => 6,
                1 => 4,
                _ => 7,
            },
        };
    }
    if is_two_hook(nu) {
        let b = p.len() - 1;
        if b == 0 {
            return 0;
        }
        return if b % 2 == 1 { 3 } else { 4 };
    }
    if p.len() >= 2 && p[0] == 2 && p[1] == 2 && p[2..].iter().all(|&x| x == 1) {
        return 1;
    }
    0
}

/// dim H^2(Sigma_d, Y^lambda) at p = 2.
///
/// With s the least t >= 2 having lambda_(t) nonempty (lambda_(s) taken
/// empty when there is none): 0 unless every layer other than 1 and s is a
/// column, then a table lookup on (lambda_(s), lambda_(1)) when layer 1 is
/// nonempty, and on lambda_(s) alone otherwise. Shapes outside the tables
/// carry nothing.
pub fn h2_closed(lambda: &Partition) -> u64 {
    if lambda.is_p_restricted(2) {
        return 0;
    }
    let exp = lambda.p_adic_expansion(2);
    let s = (2..exp.num_layers()).find(|&t| !exp.layer(t).is_empty());
    for t in 0..exp.num_layers() {
        if t == 1 || Some(t) == s {
            continue;
        }
        if !is_one_column(&exp.layer(t)) {
            return 0;
        }
    }
    let ls = s.map(|t| exp.layer(t)).unwrap_or_else(Partition::empty);
    let l1 = exp.layer(1);
    if !l1.is_empty() {
        match (h2_row(&ls), h2_column(&l1)) {
            (Some(r), Some(c)) => H2_TABLE1[r][c],
            _ => 0,
        }
    } else {
        h2_isolated(&ls)
    }
}
