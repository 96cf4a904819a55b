//! Partitions, symmetric-group character tables and decomposition of
//! characters into irreducible (Specht) multiplicities.

use crate::prelude::*;
use crate::rat::{rat, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Weakly decreasing positive parts.
pub type Partition = Vec<usize>;

/// All partitions of `n`, in decreasing lexicographic order; `n = 0` gives
/// the single empty partition.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        let hi = max.min(n);
        for part in (1..=hi).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    if n == 0 {
        out.push(Vec::new());
    }
    out
}

/// Dimension of the irreducible indexed by `lambda`, by hook lengths.
pub fn dimension(lambda: &[usize]) -> u64 {
    let n: usize = lambda.iter().sum();
    if n == 0 {
        return 1;
    }
    let mut numer = BigInt::from(1);
    for k in 1..=n {
        numer *= BigInt::from(k as u64);
    }
    let cols = lambda[0];
    let mut col_len = vec![0usize; cols];
    for &row in lambda {
        for c in 0..row {
            col_len[c] += 1;
        }
    }
    let mut denom = BigInt::from(1);
    for (r, &row) in lambda.iter().enumerate() {
        for c in 0..row {
            let hook = (row - c) + (col_len[c] - r) - 1;
            denom *= BigInt::from(hook as u64);
        }
    }
    (numer / denom).to_u64().expect("dimension fits")
}

/// `n! / z_mu`, the size of the conjugacy class of cycle type `mu`.
pub fn class_size(n: usize, mu: &[usize]) -> BigInt {
    let mut fact = BigInt::from(1);
    for k in 1..=n {
        fact *= BigInt::from(k as u64);
    }
    let mut z = BigInt::from(1);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &k in mu {
        *counts.entry(k).or_insert(0) += 1;
    }
    for (&k, &m) in &counts {
        for _ in 0..m {
            z *= BigInt::from(k as u64);
        }
        for i in 1..=m {
            z *= BigInt::from(i as u64);
        }
    }
    fact / z
}

fn remove_border_strips(lambda: &[usize], k: usize) -> Vec<(Partition, usize)> {
    let m = lambda.len();
    let beta: Vec<usize> = lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| l + (m - 1 - i))
        .collect();
    let mut out = Vec::new();
    for i in 0..m {
        if beta[i] < k {
            continue;
        }
        let target = beta[i] - k;
        if beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&b| b > target && b < beta[i]).count();
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let mut nl: Partition = nb
            .iter()
            .enumerate()
            .map(|(r, &b)| b - (m - 1 - r))
            .collect();
        while nl.last() == Some(&0) {
            nl.pop();
        }
        out.push((nl, height));
    }
    out
}

fn mn_value(
    lambda: &[usize],
    mu: &[usize],
    memo: &mut BTreeMap<(Partition, Vec<usize>), i64>,
) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let k = mu[0];
    let rest = &mu[1..];
    let mut total = 0i64;
    for (nl, height) in remove_border_strips(lambda, k) {
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_value(&nl, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Full character table of the symmetric group on `n` letters. Rows are
/// indexed by the partition labelling the irreducible, columns by the
/// cycle type, both in the order of [`partitions`].
pub struct CharacterTable {
    pub n: usize,
    pub parts: Vec<Partition>,
    /// `chi[lambda][mu]`.
    pub chi: Vec<Vec<i64>>,
    pub class_sizes: Vec<BigInt>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Self {
        assert!(n <= 12, "character tables are built for n <= 12");
        let parts = partitions(n);
        let mut memo = BTreeMap::new();
        let chi: Vec<Vec<i64>> = parts
            .iter()
            .map(|l| {
                parts
                    .iter()
                    .map(|m| {
                        // Cycle types iterate largest part first.
                        mn_value(l, m, &mut memo)
                    })
                    .collect()
            })
            .collect();
        let class_sizes = parts.iter().map(|m| class_size(n, m)).collect();
        CharacterTable {
            n,
            parts,
            chi,
            class_sizes,
        }
    }

    pub fn part_index(&self, lambda: &[usize]) -> usize {
        self.parts
            .iter()
            .position(|p| p.as_slice() == lambda)
            .expect("partition of n")
    }

    pub fn group_order(&self) -> BigInt {
        let mut fact = BigInt::from(1);
        for k in 1..=self.n {
            fact *= BigInt::from(k as u64);
        }
        fact
    }

    /// Inner product of two class functions given as value vectors.
    pub fn inner(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, size) in self.class_sizes.iter().enumerate() {
            acc += Rat::from_integer(size.clone()) * a[i].clone() * b[i].clone();
        }
        acc / Rat::from_integer(self.group_order())
    }

    /// Multiplicities of a virtual character in the irreducible basis.
    pub fn decompose_virtual(&self, values: &[Rat]) -> Vec<(Partition, BigInt)> {
        let mut out = Vec::new();
        for (li, l) in self.parts.iter().enumerate() {
            let chi_l: Vec<Rat> = (0..self.parts.len())
                .map(|mi| rat(self.chi[li][mi]))
                .collect();
            let m = self.inner(values, &chi_l);
            assert!(
                m.denom().abs() == BigInt::from(1),
                "non-integral multiplicity; not a virtual character"
            );
            let numer = m.numer().clone();
            if !numer.is_zero() {
                out.push((l.clone(), numer));
            }
        }
        out
    }

    /// Multiplicities of a genuine character; errors if any multiplicity
    /// is negative or fractional.
    pub fn decompose(&self, values: &[Rat]) -> Result<Vec<(Partition, u64)>, NotACharacter> {
        let mut out = Vec::new();
        for (li, l) in self.parts.iter().enumerate() {
            let chi_l: Vec<Rat> = (0..self.parts.len())
                .map(|mi| rat(self.chi[li][mi]))
                .collect();
            let m = self.inner(values, &chi_l);
            if m.denom().abs() != BigInt::from(1) || m.numer().is_negative() {
                return Err(NotACharacter);
            }
            let v = m.numer().to_u64().ok_or(NotACharacter)?;
            if v > 0 {
                out.push((l.clone(), v));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotACharacter;

/// Compact label like `21^3` for the partition `[2,1,1,1]`; the empty
/// partition prints as `0`.
pub fn partition_label(lambda: &[usize]) -> String {
    if lambda.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < lambda.len() {
        let mut j = i;
        while j < lambda.len() && lambda[j] == lambda[i] {
            j += 1;
        }
        let mult = j - i;
        if lambda[i] >= 10 {
            out.push_str(&format!("({})", lambda[i]));
        } else {
            out.push_str(&format!("{}", lambda[i]));
        }
        if mult > 1 {
            out.push_str(&format!("^{}", mult));
        }
        i = j;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s2_table() {
        let t = CharacterTable::new(2);
        // Partitions: [2], [1,1]; classes: 2-cycle, identity.
        assert_eq!(t.parts, vec![vec![2], vec![1, 1]]);
        let trivial = t.part_index(&[2]);
        let sign = t.part_index(&[1, 1]);
        let id_class = t.part_index(&[1, 1]);
        let swap_class = t.part_index(&[2]);
        assert_eq!(t.chi[trivial][id_class], 1);
        assert_eq!(t.chi[trivial][swap_class], 1);
        assert_eq!(t.chi[sign][id_class], 1);
        assert_eq!(t.chi[sign][swap_class], -1);
    }

    #[test]
    fn hook_dimensions() {
        assert_eq!(dimension(&[2, 1]), 2);
        assert_eq!(dimension(&[3, 1, 1]), 6);
        assert_eq!(dimension(&[2, 2, 1]), 5);
        assert_eq!(dimension(&[2, 1, 1, 1]), 4);
        assert_eq!(dimension(&[]), 1);
    }

    #[test]
    fn degrees_match_hooks() {
        for n in 1..=8 {
            let t = CharacterTable::new(n);
            let id = t.part_index(&vec![1; n]);
            for (li, l) in t.parts.iter().enumerate() {
                assert_eq!(t.chi[li][id], dimension(l) as i64, "lambda {:?}", l);
            }
        }
    }

    #[test]
    fn orthogonality() {
        for n in [3usize, 5, 7] {
            let t = CharacterTable::new(n);
            for a in 0..t.parts.len() {
                for b in 0..t.parts.len() {
                    let va: Vec<Rat> = (0..t.parts.len()).map(|m| rat(t.chi[a][m])).collect();
                    let vb: Vec<Rat> = (0..t.parts.len()).map(|m| rat(t.chi[b][m])).collect();
                    let expect = if a == b { rat(1) } else { rat(0) };
                    assert_eq!(t.inner(&va, &vb), expect);
                }
            }
        }
    }

    #[test]
    fn regular_and_permutation_characters() {
        let t = CharacterTable::new(3);
        // Regular character: n! at the identity, zero elsewhere.
        let id = t.part_index(&[1, 1, 1]);
        let reg: Vec<Rat> = (0..t.parts.len())
            .map(|m| if m == id { rat(6) } else { rat(0) })
            .collect();
        let d = t.decompose(&reg).unwrap();
        for (l, m) in d {
            assert_eq!(m, dimension(&l));
        }
        // Natural permutation representation of S4: fixed points.
        let t = CharacterTable::new(4);
        let vals: Vec<Rat> = t
            .parts
            .iter()
            .map(|mu| rat(mu.iter().filter(|&&k| k == 1).count() as i64))
            .collect();
        let d = t.decompose(&vals).unwrap();
        assert_eq!(
            d,
            vec![(vec![4], 1), (vec![3, 1], 1)]
        );
    }

    #[test]
    fn labels() {
        assert_eq!(partition_label(&[2, 1, 1, 1]), "21^3");
        assert_eq!(partition_label(&[3, 1, 1]), "31^2");
        assert_eq!(partition_label(&[1; 11]), "1^11");
        assert_eq!(partition_label(&[]), "0");
    }
}
