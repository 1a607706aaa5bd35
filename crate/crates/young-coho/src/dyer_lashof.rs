//! Admissible homology-operation sequences, monomial shapes, and the
//! GL-module structure of H_i(Sigma_d, V^tensor-d).
//!
//! The homology of Sigma_d with coefficients in the d-th tensor power of the
//! natural module is spanned by monomials in operations Q_I applied to basis
//! vectors. Each multiset of (sequence, multiplicity) pairs plus a base
//! exponent is one GL_d-module summand: a product of Frobenius twists of
//! symmetric (and, for odd p, exterior) powers. Degrees and weights are
//! pure bookkeeping over the sequences; characters come from gl_characters.

use crate::error::{Error, Result};
use crate::gl_characters::{
    ext_power, frobenius_twist, lr_product, sym_power, SchurExpansion,
};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// One admissible operation sequence (never empty; the empty sequence is the
/// base factor of a shape).
///
/// p=2: indices 0 < i_1 <= ... <= i_t, degree i_1 + 2 i_2 + ... + 2^{t-1} i_t.
/// odd p: pairs (eps_k, j_k) with 0 < j_1 <= ... <= j_t, applied right to
/// left starting on a degree-0 class; Q_j needs current degree n with n + j
/// even, the Bockstein (eps = 1) lowers degree by 1, and nothing may start
/// with a bare Bockstein. Degree sum_k p^{k-1} (j_k (p-1) - eps_k).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AdmissibleSequence {
    pub p: u64,
    body: Body,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
enum Body {
    Indices(Vec<u32>),
    Pairs(Vec<(u8, u32)>),
}

impl AdmissibleSequence {
    pub fn new_p2(indices: Vec<u32>) -> Result<AdmissibleSequence> {
        if indices.is_empty() || indices[0] == 0 || indices.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Internal(format!(
                "inadmissible index sequence {:?}",
                indices
            )));
        }
        Ok(AdmissibleSequence {
            p: 2,
            body: Body::Indices(indices),
        })
    }

    pub fn new_odd(p: u64, pairs: Vec<(u8, u32)>) -> Result<AdmissibleSequence> {
        if p < 3 || pairs.is_empty() {
            return Err(Error::Internal("odd sequence needs p >= 3, t >= 1".into()));
        }
        let t = pairs.len();
        let js: Vec<u32> = pairs.iter().map(|&(_, j)| j).collect();
        let ok = js[0] > 0
            && js.windows(2).all(|w| w[0] <= w[1])
            && pairs.iter().all(|&(e, _)| e <= 1)
            // parity of the class each Q_{j_k} is applied to is sum of the
            // Bocksteins applied so far (j(p-1) is even), so j_k must match it
            && (1..=t).all(|k| {
                let later: u32 = pairs[k..].iter().map(|&(e, _)| e as u32).sum();
                (js[k - 1] + later) % 2 == 0
            });
        if !ok {
            return Err(Error::Internal(format!(
                "inadmissible operation sequence {:?} at p={}",
                pairs, p
            )));
        }
        Ok(AdmissibleSequence {
            p,
            body: Body::Pairs(pairs),
        })
    }

    pub fn length(&self) -> u32 {
        match &self.body {
            Body::Indices(v) => v.len() as u32,
            Body::Pairs(v) => v.len() as u32,
        }
    }

    pub fn weight(&self) -> u64 {
        self.p.pow(self.length())
    }

    pub fn degree(&self) -> u64 {
        match &self.body {
            Body::Indices(v) => v
                .iter()
                .enumerate()
                .map(|(k, &i)| (1u64 << k) * i as u64)
                .sum(),
            Body::Pairs(v) => v
                .iter()
                .enumerate()
                .map(|(k, &(e, j))| {
                    self.p.pow(k as u32) * (j as u64 * (self.p - 1) - e as u64)
                })
                .sum(),
        }
    }

    pub fn degree_is_odd(&self) -> bool {
        self.degree() % 2 == 1
    }
}

impl Ord for AdmissibleSequence {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.length(), self.degree())
            .cmp(&(other.length(), other.degree()))
            .then_with(|| self.body.cmp(&other.body))
    }
}

impl PartialOrd for AdmissibleSequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for AdmissibleSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.body {
            Body::Indices(v) => {
                let idx: Vec<String> = v.iter().map(|i| i.to_string()).collect();
                write!(f, "Q({})", idx.join(","))
            }
            Body::Pairs(v) => {
                let ps: Vec<String> = v
                    .iter()
                    .map(|&(e, j)| if e == 1 { format!("bQ{}", j) } else { format!("Q{}", j) })
                    .collect();
                write!(f, "({})", ps.join(" "))
            }
        }
    }
}

/// All admissible sequences with degree in [1, max_degree], canonically
/// ordered by (length, degree, indices).
pub fn admissible_sequences(p: u64, max_degree: u64) -> Vec<AdmissibleSequence> {
    let mut out = Vec::new();
    if p == 2 {
        // extend nondecreasing index tuples; the k-th index costs 2^{k-1} i_k
        fn rec(prefix: &mut Vec<u32>, deg: u64, max_degree: u64, out: &mut Vec<AdmissibleSequence>) {
            let k = prefix.len();
            let unit = 1u64 << k;
            let lo = prefix.last().copied().unwrap_or(1);
            let mut i = lo;
            while deg + unit * i as u64 <= max_degree {
                prefix.push(i);
                out.push(AdmissibleSequence::new_p2(prefix.clone()).unwrap());
                rec(prefix, deg + unit * i as u64, max_degree, out);
                prefix.pop();
                i += 1;
            }
        }
        rec(&mut Vec::new(), 0, max_degree, &mut out);
    } else {
        // choose j_1 <= j_2 <= ...; the parity rule forces eps_k for k >= 2
        // (eps_k = j_{k-1} + j_k mod 2) while eps_1 stays free, so a sequence
        // is determined by its j's, a final even j, and the eps_1 bit
        fn min_degree(p: u64, js: &[u32]) -> u64 {
            js.iter()
                .enumerate()
                .map(|(k, &j)| p.pow(k as u32) * (j as u64 * (p - 1) - 1))
                .sum()
        }
        fn rec(p: u64, js: &mut Vec<u32>, max_degree: u64, out: &mut Vec<AdmissibleSequence>) {
            let lo = js.last().copied().unwrap_or(1);
            let mut j = lo;
            loop {
                js.push(j);
                if min_degree(p, js) > max_degree {
                    js.pop();
                    break;
                }
                if j % 2 == 0 {
                    for e1 in 0..=1u8 {
                        let pairs: Vec<(u8, u32)> = js
                            .iter()
                            .enumerate()
                            .map(|(k, &jk)| {
                                let e = if k == 0 {
                                    e1
                                } else {
                                    ((js[k - 1] + jk) % 2) as u8
                                };
                                (e, jk)
                            })
                            .collect();
                        let s = AdmissibleSequence::new_odd(p, pairs)
                            .expect("constructed sequence is admissible");
                        if s.degree() >= 1 && s.degree() <= max_degree {
                            out.push(s);
                        }
                    }
                }
                rec(p, js, max_degree, out);
                js.pop();
                j += 1;
            }
        }
        rec(p, &mut Vec::new(), max_degree, &mut out);
    }
    out.sort();
    out
}

/// One GL-module summand: S^base(V) times, per factor (seq, m), the m-th
/// symmetric or exterior power of a length(seq)-fold Frobenius twist.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialShape {
    pub base: u32,
    /// canonically sorted, sequences distinct, multiplicities >= 1
    pub factors: Vec<(AdmissibleSequence, u32)>,
}

impl MonomialShape {
    pub fn weight(&self) -> u64 {
        self.base as u64
            + self
                .factors
                .iter()
                .map(|(s, m)| *m as u64 * s.weight())
                .sum::<u64>()
    }

    pub fn degree(&self) -> u64 {
        self.factors
            .iter()
            .map(|(s, m)| *m as u64 * s.degree())
            .sum()
    }

    /// Readable module description, e.g. "S^2(V) * S^1(V^(2))".
    pub fn describe(&self, p: u64) -> String {
        let mut parts = Vec::new();
        if self.base > 0 || self.factors.is_empty() {
            parts.push(format!("S^{}(V)", self.base));
        }
        for (seq, m) in &self.factors {
            let kind = if p > 2 && seq.degree_is_odd() { "E" } else { "S" };
            parts.push(format!("{}^{}(V^({}))", kind, m, seq.length()));
        }
        parts.join(" * ")
    }
}

impl std::fmt::Display for MonomialShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "v^{}", self.base)?;
        for (seq, m) in &self.factors {
            write!(f, " {}", seq)?;
            if *m > 1 {
                write!(f, "^{}", m)?;
            }
        }
        Ok(())
    }
}

/// All monomial shapes of weight exactly d and degree exactly i,
/// duplicate-free, in a deterministic order.
pub fn enumerate_shapes(p: u64, d: u32, i: u32) -> Vec<MonomialShape> {
    let seqs: Vec<AdmissibleSequence> = admissible_sequences(p, i as u64)
        .into_iter()
        .filter(|s| s.weight() <= d as u64)
        .collect();
    let mut out = Vec::new();
    let mut factors = Vec::new();
    rec_shapes(&seqs, 0, d as u64, i as u64, &mut factors, &mut out);
    out
}

fn rec_shapes(
    seqs: &[AdmissibleSequence],
    idx: usize,
    rem_weight: u64,
    rem_degree: u64,
    factors: &mut Vec<(AdmissibleSequence, u32)>,
    out: &mut Vec<MonomialShape>,
) {
    if idx == seqs.len() {
        if rem_degree == 0 {
            out.push(MonomialShape {
                base: rem_weight as u32,
                factors: factors.clone(),
            });
        }
        return;
    }
    let w = seqs[idx].weight();
    let g = seqs[idx].degree();
    // multiplicity 0 first, then 1, 2, ... while both budgets allow
    rec_shapes(seqs, idx + 1, rem_weight, rem_degree, factors, out);
    let mut m = 1u32;
    while m as u64 * w <= rem_weight && m as u64 * g <= rem_degree {
        factors.push((seqs[idx].clone(), m));
        rec_shapes(
            seqs,
            idx + 1,
            rem_weight - m as u64 * w,
            rem_degree - m as u64 * g,
            factors,
            out,
        );
        factors.pop();
        m += 1;
    }
}

/// The formal character of the summand a shape describes.
pub fn shape_module(shape: &MonomialShape, p: u64) -> Result<SchurExpansion> {
    let mut acc = sym_power(shape.base);
    for (seq, m) in &shape.factors {
        let untwisted = if p > 2 && seq.degree_is_odd() {
            ext_power(*m)
        } else {
            sym_power(*m)
        };
        let factor = frobenius_twist(&untwisted, seq.length(), p)?;
        acc = lr_product(&acc, &factor)?;
    }
    Ok(acc)
}

/// ch H_i(Sigma_d, V^tensor-d): the sum over all shapes of weight d, degree i.
/// Memoized per (p, d, i).
pub fn homology_module(p: u64, d: u32, i: u32) -> Result<Arc<SchurExpansion>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32, u32), Arc<SchurExpansion>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap().get(&(p, d, i)) {
        return Ok(m.clone());
    }
    let mut acc = SchurExpansion::zero(d);
    for shape in enumerate_shapes(p, d, i) {
        acc = acc.add(&shape_module(&shape, p)?)?;
    }
    let arc = Arc::new(acc);
    cache.lock().unwrap().insert((p, d, i), arc.clone());
    Ok(arc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl_characters::weight_multiplicity;
    use crate::partitions::Partition;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn p2_sequence_degrees() {
        let s = AdmissibleSequence::new_p2(vec![1, 2]).unwrap();
        assert_eq!(s.degree(), 1 + 2 * 2);
        assert_eq!(s.weight(), 4);
        let s = AdmissibleSequence::new_p2(vec![2, 2, 3]).unwrap();
        assert_eq!(s.degree(), 2 + 4 + 12);
        assert_eq!(s.weight(), 8);
        assert!(AdmissibleSequence::new_p2(vec![2, 1]).is_err());
        assert!(AdmissibleSequence::new_p2(vec![0, 1]).is_err());
        assert!(AdmissibleSequence::new_p2(vec![]).is_err());
    }

    #[test]
    fn p2_enumeration_small() {
        let seqs = admissible_sequences(2, 2);
        let printed: Vec<String> = seqs.iter().map(|s| s.to_string()).collect();
        assert_eq!(printed, vec!["Q(1)", "Q(2)"]);
        let seqs = admissible_sequences(2, 5);
        // lengths: (1),(2),(3),(4),(5); (1,1)=3,(1,2)=5
        let printed: Vec<String> = seqs.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            printed,
            vec!["Q(1)", "Q(2)", "Q(3)", "Q(4)", "Q(5)", "Q(1,1)", "Q(1,2)"]
        );
    }

    #[test]
    fn odd_sequence_rules() {
        // innermost j_t must be even
        assert!(AdmissibleSequence::new_odd(3, vec![(0, 1)]).is_err());
        let s = AdmissibleSequence::new_odd(3, vec![(0, 2)]).unwrap();
        assert_eq!(s.degree(), 4);
        assert_eq!(s.weight(), 3);
        let s = AdmissibleSequence::new_odd(3, vec![(1, 2)]).unwrap();
        assert_eq!(s.degree(), 3);
        assert!(s.degree_is_odd());
        // eps_2 is forced to j_1 + j_2 mod 2
        assert!(AdmissibleSequence::new_odd(3, vec![(0, 1), (0, 2)]).is_err());
        let s = AdmissibleSequence::new_odd(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(s.degree(), (1 * 2) + 3 * (2 * 2 - 1));
        let listed = admissible_sequences(3, 4);
        let printed: Vec<String> = listed.iter().map(|s| s.to_string()).collect();
        assert_eq!(printed, vec!["(bQ2)", "(Q2)"]);
        // degrees 3, 4, 7, 8; length-2 sequences start at degree 12
        let listed = admissible_sequences(3, 8);
        let printed: Vec<String> = listed.iter().map(|s| s.to_string()).collect();
        assert_eq!(printed, vec!["(bQ2)", "(Q2)", "(bQ4)", "(Q4)"]);
    }

    #[test]
    fn shapes_degree_zero_and_one() {
        let shapes = enumerate_shapes(2, 6, 0);
        assert_eq!(shapes.len(), 1);
        assert_eq!(shapes[0].base, 6);
        assert!(shapes[0].factors.is_empty());

        let shapes = enumerate_shapes(2, 6, 1);
        assert_eq!(shapes.len(), 1);
        assert_eq!(shapes[0].base, 4);
        assert_eq!(shapes[0].factors.len(), 1);
        assert_eq!(shapes[0].factors[0].0.to_string(), "Q(1)");
        assert_eq!(shapes[0].factors[0].1, 1);
    }

    #[test]
    fn shapes_degree_two_any_d() {
        for d in [4u32, 6, 9] {
            let mut found: Vec<String> =
                enumerate_shapes(2, d, 2).iter().map(|s| s.to_string()).collect();
            found.sort();
            let mut expected = vec![
                format!("v^{} Q(2)", d - 2),
                format!("v^{} Q(1)^2", d - 4),
            ];
            expected.sort();
            assert_eq!(found, expected, "d={}", d);
        }
    }

    #[test]
    fn shape_weights_and_degrees_consistent() {
        for i in 0..=8 {
            for shape in enumerate_shapes(2, 6, i) {
                assert_eq!(shape.weight(), 6);
                assert_eq!(shape.degree(), i as u64);
            }
        }
    }

    #[test]
    fn shape_modules_match_table_rows() {
        // {a=2, ((i,j),1)} -> V^(2) tensor S^2 V
        let seq = AdmissibleSequence::new_p2(vec![1, 2]).unwrap();
        let shape = MonomialShape {
            base: 2,
            factors: vec![(seq, 1)],
        };
        let m = shape_module(&shape, 2).unwrap();
        let expected = lr_product(
            &frobenius_twist(&sym_power(1), 2, 2).unwrap(),
            &sym_power(2),
        )
        .unwrap();
        assert_eq!(m, expected);

        // {a=2, ((i),2)} -> S^2(V^(1)) tensor S^2 V
        let seq = AdmissibleSequence::new_p2(vec![3]).unwrap();
        let shape = MonomialShape {
            base: 2,
            factors: vec![(seq, 2)],
        };
        let m = shape_module(&shape, 2).unwrap();
        let expected = lr_product(
            &frobenius_twist(&sym_power(2), 1, 2).unwrap(),
            &sym_power(2),
        )
        .unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn sigma2_homology() {
        // H_0(Sigma_2, V tensor V) = S^2 V; H_i is V^(1) for i >= 1
        let h0 = homology_module(2, 2, 0).unwrap();
        assert_eq!(*h0, sym_power(2));
        for i in 1..=5u32 {
            let h = homology_module(2, 2, i).unwrap();
            assert_eq!(h.dim_at(2).unwrap(), 2, "i={}", i);
            // regular-representation weight (1,1) dies above degree 0
            assert_eq!(weight_multiplicity(&h, &pt("1,1")).unwrap(), 0);
            assert_eq!(weight_multiplicity(&h, &pt("2")).unwrap(), 1);
        }
    }

    #[test]
    fn sigma6_summand_family_counts() {
        // V^(2) tensor S^2(V) family: one length-2 factor, mult 1, base 2
        for t in 1..=12u32 {
            let count = enumerate_shapes(2, 6, t)
                .into_iter()
                .filter(|s| {
                    s.base == 2
                        && s.factors.len() == 1
                        && s.factors[0].0.length() == 2
                        && s.factors[0].1 == 1
                })
                .count() as u32;
            let expected = (t - 1) / 2 - (t - 1) / 3;
            assert_eq!(count, expected, "degree {}", t);
        }
        // V^(2) tensor V^(1) family: triples i+2j+k = t with i <= j
        for t in 1..=12u32 {
            let count = enumerate_shapes(2, 6, t)
                .into_iter()
                .filter(|s| {
                    s.base == 0
                        && s.factors.len() == 2
                        && s.factors.iter().map(|(q, m)| (q.length(), *m)).collect::<Vec<_>>()
                            == vec![(1, 1), (2, 1)]
                })
                .count() as u32;
            let mut expected = 0;
            for j in 1..=t {
                for i in 1..=j {
                    if i + 2 * j < t {
                        expected += 1; // k = t - i - 2j >= 1
                    }
                }
            }
            assert_eq!(count, expected, "degree {}", t);
        }
    }

    #[test]
    fn eight_summand_families_for_d6() {
        // all shapes for d=6 over every degree fall into the eight families
        // from the table plus the pure base
        use std::collections::BTreeSet;
        let mut families = BTreeSet::new();
        for i in 1..=20u32 {
            for s in enumerate_shapes(2, 6, i) {
                let mut sig: Vec<(u32, u32)> = s
                    .factors
                    .iter()
                    .map(|(q, m)| (q.length(), *m))
                    .collect();
                // family = multiset of (twist, multiplicity), not factor order
                sig.sort_unstable();
                families.insert((s.base, sig));
            }
        }
        let expected: BTreeSet<(u32, Vec<(u32, u32)>)> = [
            (4, vec![(1, 1)]),                 // V^(1) S^4V
            (2, vec![(2, 1)]),                 // V^(2) S^2V
            (2, vec![(1, 1), (1, 1)]),         // V^(1) V^(1) S^2V
            (2, vec![(1, 2)]),                 // S^2(V^(1)) S^2V
            (0, vec![(1, 1), (2, 1)]),         // V^(2) V^(1)
            (0, vec![(1, 1), (1, 1), (1, 1)]), // V^(1) V^(1) V^(1)
            (0, vec![(1, 1), (1, 2)]),         // S^2(V^(1)) V^(1)
            (0, vec![(1, 3)]),                 // S^3(V^(1))
        ]
        .into_iter()
        .collect();
        assert_eq!(families, expected);
    }
}
