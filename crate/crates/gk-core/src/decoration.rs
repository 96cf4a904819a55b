//! Presentations of the decoration classes: generators, relations, chosen
//! bases and rewrite tables over an abstract ground set.
//!
//! The weight-2 classes are the boundary partitions `delta{A,A'}` (the psi
//! classes are rewritten away), weight 11 is spanned by `omega_B` over
//! 11-subsets with one relation per 12-subset, and weight 13 by
//! `Z_{B into A}` whose relations live in per-12-subset blocks.

use crate::linalg::{Rref, SparseVec};
use crate::prelude::*;
use crate::rat::{rat, Rat};
use num_traits::Zero;

/// A relation system over an indexed family of generators.
pub struct RelationSystem {
    pub num_gens: usize,
    pub relations: Rref,
}

impl RelationSystem {
    pub fn from_rows(num_gens: usize, rows: Vec<SparseVec>) -> Self {
        let mut rref = Rref::new(num_gens);
        for r in rows {
            rref.insert(r);
        }
        RelationSystem {
            num_gens,
            relations: rref,
        }
    }

    pub fn rank(&self) -> usize {
        self.relations.rank()
    }

    /// Dimension of the quotient space.
    pub fn dim(&self) -> usize {
        self.num_gens - self.rank()
    }

    /// Basis generators: the non-pivot indices.
    pub fn basis(&self) -> Vec<usize> {
        let pivots: BTreeSet<usize> = self.relations.pivot_cols().into_iter().collect();
        (0..self.num_gens).filter(|i| !pivots.contains(i)).collect()
    }

    /// Expresses a generator in the basis.
    pub fn rewrite(&self, gen: usize) -> Vec<(usize, Rat)> {
        let mut v = SparseVec::new();
        v.insert(gen, rat(1));
        self.relations
            .reduce(v)
            .into_iter()
            .collect()
    }

    /// Whether a vector lies in the relation span.
    pub fn is_relation(&self, v: &SparseVec) -> bool {
        self.relations.reduce(v.clone()).is_empty()
    }
}

/// Unordered partition of `0..n` into two sides of size at least two,
/// canonically keyed by the side containing `0`.
pub fn weight2_generators(n: usize) -> Vec<Vec<usize>> {
    let mut gens = Vec::new();
    if n < 4 {
        return gens;
    }
    // Sides containing 0 of size 2..=n-2, enumerated by bitmask over the
    // remaining elements.
    let rest = n - 1;
    for mask in 0u32..(1 << rest) {
        let mut side = vec![0usize];
        for b in 0..rest {
            if mask >> b & 1 == 1 {
                side.push(b + 1);
            }
        }
        if side.len() >= 2 && n - side.len() >= 2 {
            gens.push(side);
        }
    }
    gens.sort();
    gens
}

fn partition_index(gens: &[Vec<usize>], side_with_zero: &[usize]) -> usize {
    gens.binary_search_by(|g| g.as_slice().cmp(side_with_zero))
        .expect("known partition")
}

/// Sum over partitions with `i` on one side and all of `others` on the
/// other side.
fn psi_sum(n: usize, gens: &[Vec<usize>], i: usize, others: &[usize]) -> SparseVec {
    let mut v = SparseVec::new();
    for (idx, side0) in gens.iter().enumerate() {
        let has = |x: usize| side0.binary_search(&x).is_ok();
        let in_a = has(i);
        let separated = others.iter().all(|&x| has(x) != in_a);
        if separated {
            let slot = v.entry(idx).or_insert_with(Rat::zero);
            *slot += rat(1);
        }
    }
    v
}

/// The weight-2 system on a ground set of size `n`: generators are the
/// admissible partitions, relations are the pairwise differences of the
/// psi expansions together with the two-element sums.
pub fn weight2_system(n: usize) -> RelationSystem {
    let gens = weight2_generators(n);
    let mut rows = Vec::new();
    if n >= 4 {
        for i in 0..n {
            let mut reference: Option<SparseVec> = None;
            let pool: Vec<usize> = (0..n).filter(|&x| x != i).collect();
            for a in 0..pool.len() {
                for b in (a + 1)..pool.len() {
                    let v = psi_sum(n, &gens, i, &[pool[a], pool[b]]);
                    match &reference {
                        None => reference = Some(v),
                        Some(r) => {
                            let mut d = r.clone();
                            for (c, x) in v {
                                let slot = d.entry(c).or_insert_with(Rat::zero);
                                *slot -= x;
                                if slot.is_zero() {
                                    d.remove(&c);
                                }
                            }
                            rows.push(d);
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                // psi_i + psi_j expansion minus the separate expansions.
                let mut v = psi_sum(n, &gens, i, &[j]);
                let px: Vec<usize> = (0..n).filter(|&x| x != i && x != j).collect();
                let pi = psi_sum(n, &gens, i, &[px[0], px[1]]);
                let pj = psi_sum(n, &gens, j, &[px[0], px[1]]);
                for (c, x) in pi.into_iter().chain(pj) {
                    let slot = v.entry(c).or_insert_with(Rat::zero);
                    *slot -= x;
                    if slot.is_zero() {
                        v.remove(&c);
                    }
                }
                rows.push(v);
            }
        }
    }
    RelationSystem::from_rows(gens.len(), rows)
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The weight-11 system on `n` elements: generators are 11-subsets in
/// increasing order, one alternating relation per 12-subset.
pub fn weight11_system(n: usize) -> RelationSystem {
    assert!(n >= 11);
    let gens = subsets(n, 11);
    let index = |b: &[usize]| -> usize { gens.binary_search_by(|g| g.as_slice().cmp(b)).unwrap() };
    let mut rows = Vec::new();
    for e in subsets(n, 12) {
        let mut v = SparseVec::new();
        for (i, &ei) in e.iter().enumerate() {
            let b: Vec<usize> = e.iter().copied().filter(|&x| x != ei).collect();
            let sign = if (i + 1) % 2 == 0 { rat(1) } else { rat(-1) };
            let slot = v.entry(index(&b)).or_insert_with(Rat::zero);
            *slot += sign;
        }
        rows.push(v);
    }
    RelationSystem::from_rows(gens.len(), rows)
}

/// Number of weight-11 basis elements containing a fixed element: the
/// classes `omega_B` with `e` in `B` form a basis.
pub fn weight11_expected_dim(n: usize) -> usize {
    binomial(n - 1, 10)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k.min(n - k) {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// One weight-13 block: classes with `|A^c| = 2` supported on a fixed
/// 12-subset `E`. Generators are the pairs of positions in `E` forming
/// `A^c`; relations come from position triples.
pub fn weight13_block() -> RelationSystem {
    let gens = subsets(12, 2);
    let index = |p: usize, q: usize| -> usize {
        gens.binary_search_by(|g| g.as_slice().cmp(&[p, q][..])).unwrap()
    };
    let sign = |i: usize, j: usize| -> Rat {
        // One-based positions in the alternating prefactor.
        if (i + j) % 2 == 0 {
            rat(1)
        } else {
            rat(-1)
        }
    };
    let mut rows = Vec::new();
    for t in subsets(12, 3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let mut v = SparseVec::new();
        let mut add = |idx: usize, s: Rat| {
            let slot = v.entry(idx).or_insert_with(Rat::zero);
            *slot += s;
            if slot.is_zero() {
                v.remove(&idx);
            }
        };
        // Positions are zero-based here; (i+1)+(j+1) keeps the parity of
        // the one-based convention.
        add(index(i, j), sign(i + 1, j + 1));
        add(index(i, k), -sign(i + 1, k + 1));
        add(index(j, k), sign(j + 1, k + 1));
        rows.push(v);
    }
    RelationSystem::from_rows(gens.len(), rows)
}
