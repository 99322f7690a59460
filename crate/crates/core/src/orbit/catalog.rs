use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::forms::FormParity;
use crate::nilpotent::{jordan_type_of_partition, OrbitInvariants};
use crate::orbit::{classify_real, global_signature, ClassLabel};

/// Partitions of `n`, largest parts first, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All valid `(m, s)` for `dim V = dim` and `Q` `(−1)^k`-symmetric.
/// `m` has length `max(k + 1, largest part)` and `s_ℓ` is listed (possibly
/// as `(0, 0)`) for every `ℓ` below that length with `k + ℓ` even.
pub fn enumerate_invariants(dim: usize, k: usize) -> Vec<OrbitInvariants> {
    let mut out = Vec::new();
    for parts in partitions(dim) {
        let m = jordan_type_of_partition(&parts, k + 1);
        if m.iter().enumerate().any(|(l, &c)| (k + l) % 2 == 1 && c % 2 == 1) {
            continue;
        }
        let graded: Vec<usize> = (0..m.len()).filter(|l| (k + l).is_multiple_of(2)).collect();
        let mut choices: Vec<BTreeMap<usize, (usize, usize)>> = vec![BTreeMap::new()];
        for &l in &graded {
            let mut next = Vec::new();
            for base in &choices {
                for p in (0..=m[l]).rev() {
                    let mut s = base.clone();
                    s.insert(l, (p, m[l] - p));
                    next.push(s);
                }
            }
            choices = next;
        }
        out.extend(choices.into_iter().map(|s| OrbitInvariants::new(m.clone(), s)));
    }
    out
}

/// Smallest `k ≥ dim − 1` of the given parity, so every string fits.
pub fn catalog_weight(dim: usize, parity: FormParity) -> usize {
    let want = match parity {
        FormParity::Symmetric => 0,
        FormParity::Skew => 1,
    };
    let k = dim.saturating_sub(1);
    if k % 2 == want {
        k
    } else {
        k + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub dim: usize,
    pub k: usize,
    /// Signature of `Q` when it is symmetric.
    pub q_signature: Option<(usize, usize)>,
    pub label: ClassLabel,
}

impl CatalogEntry {
    pub fn to_json(&self) -> Value {
        let mut v = self.label.to_json();
        v["dim"] = json!(self.dim);
        v["k"] = json!(self.k);
        if let Some((p, q)) = self.q_signature {
            v["q_signature"] = json!([p, q]);
        }
        v
    }
}

/// Every real class for `1 ≤ dim ≤ dim_max` and both parities of `k`.
/// Skew forms need even dimension, so odd `dim` contributes only symmetric entries.
pub fn catalog(dim_max: usize) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for dim in 1..=dim_max {
        for parity in [FormParity::Symmetric, FormParity::Skew] {
            let k = catalog_weight(dim, parity);
            for inv in enumerate_invariants(dim, k) {
                let label = classify_real(&inv, k).expect("enumerated invariants are valid");
                out.push(CatalogEntry { dim, k, q_signature: global_signature(&inv, k), label });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(4)[1], vec![3, 1]);
    }

    #[test]
    fn dim_two_skew() {
        let all = enumerate_invariants(2, 1);
        let ms: Vec<_> = all.iter().map(|i| i.m.clone()).collect();
        assert_eq!(ms, vec![vec![0, 1], vec![0, 1], vec![2, 0]]);
        assert_eq!(all[0].s[&1], (1, 0));
        assert_eq!(all[1].s[&1], (0, 1));
        assert!(enumerate_invariants(3, 1).is_empty());
    }

    #[test]
    fn catalog_is_valid() {
        let cat = catalog(4);
        assert!(cat.iter().all(|e| e.label.invariants.dim() == e.dim));
        assert!(cat.iter().filter(|e| e.dim % 2 == 1).all(|e| e.k % 2 == 0));
    }
}
