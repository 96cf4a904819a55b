//! Exact rational sparse matrices: elimination, rank, kernels, images and
//! traces on invariant subspaces.

use crate::prelude::*;
use crate::rat::Rat;
use num_traits::Zero;

pub type SparseVec = BTreeMap<usize, Rat>;

pub fn vec_add_scaled(into: &mut SparseVec, from: &SparseVec, scale: &Rat) {
    if scale.is_zero() {
        return;
    }
    for (&c, v) in from {
        let slot = into.entry(c).or_insert_with(Rat::zero);
        *slot += v.clone() * scale.clone();
        if slot.is_zero() {
            into.remove(&c);
        }
    }
}

/// Row-major sparse matrix with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinalgError {
    DimensionMismatch,
    NotAChainMap,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::from_integer(1.into()));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.data[r].get(&c).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn push_row(&mut self, row: SparseVec) {
        debug_assert!(row.keys().all(|&c| c < self.cols));
        self.data.push(row);
        self.rows += 1;
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        let mut m = Self::zero(0, cols);
        for r in rows {
            m.push_row(r);
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> SparseMat {
        let mut out = SparseMat::zero(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (&c, v) in row {
                out.data[c].insert(r, v.clone());
            }
        }
        out
    }

    /// Matrix product `self * other` (self: a x b, other: b x c).
    pub fn mul(&self, other: &SparseMat) -> Result<SparseMat, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut out = SparseMat::zero(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (&k, v) in row {
                vec_add_scaled(&mut acc, &other.data[k], v);
            }
            out.data[r] = acc;
        }
        Ok(out)
    }

    /// Matrix-vector product on a sparse column vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = Rat::zero();
            for (&c, coeff) in row {
                if let Some(x) = v.get(&c) {
                    acc += coeff.clone() * x.clone();
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        out
    }

    pub fn trace(&self) -> Rat {
        let mut t = Rat::zero();
        for (r, row) in self.data.iter().enumerate() {
            if let Some(v) = row.get(&r) {
                t += v.clone();
            }
        }
        t
    }

    /// Reduced row echelon data for the row space.
    pub fn eliminate(&self) -> Elimination {
        let mut rref = Rref::new(self.cols);
        for row in &self.data {
            rref.insert(row.clone());
        }
        let rank = rref.rank();
        Elimination { rref, rank }
    }

    /// Basis of the kernel of the linear map (columns are the domain).
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let elim = self.eliminate();
        let pivots: BTreeSet<usize> = elim.rref.pivot_cols().into_iter().collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = SparseVec::new();
            v.insert(f, Rat::from_integer(1.into()));
            for (p, row) in elim.rref.rows() {
                if let Some(c) = row.get(&f) {
                    v.insert(*p, -c.clone());
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Echelonized basis of the column span.
    pub fn image_basis(&self) -> Rref {
        let t = self.transpose();
        let mut rref = Rref::new(t.cols);
        for row in &t.data {
            rref.insert(row.clone());
        }
        rref
    }

    pub fn rank(&self) -> usize {
        self.eliminate().rank
    }
}

pub struct Elimination {
    pub rref: Rref,
    pub rank: usize,
}

/// Incrementally maintained reduced row echelon form. Each stored row has
/// its pivot as the leftmost entry with coefficient one and is reduced
/// against all other rows, so the result is the canonical basis of the row
/// space regardless of insertion order.
#[derive(Clone, Debug, Default)]
pub struct Rref {
    cols: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Rref {
    pub fn new(cols: usize) -> Self {
        Rref {
            cols,
            rows: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseVec)> {
        self.rows.iter()
    }

    pub fn row_for_pivot(&self, p: usize) -> Option<&SparseVec> {
        self.rows.get(&p)
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        loop {
            let hit = v
                .iter()
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(&c, x)| (c, x.clone()));
            match hit {
                None => return v,
                Some((c, x)) => {
                    let row = self.rows[&c].clone();
                    let neg = -x;
                    vec_add_scaled(&mut v, &row, &neg);
                }
            }
        }
    }

    /// Reduces `v`, also returning the pivot coefficients used, i.e. the
    /// coordinates of the removed part in the stored basis.
    pub fn reduce_with_witness(&self, mut v: SparseVec) -> (SparseVec, BTreeMap<usize, Rat>) {
        let mut witness = BTreeMap::new();
        loop {
            let hit = v
                .iter()
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(&c, x)| (c, x.clone()));
            match hit {
                None => return (v, witness),
                Some((c, x)) => {
                    let row = self.rows[&c].clone();
                    let neg = -x.clone();
                    vec_add_scaled(&mut v, &row, &neg);
                    witness.insert(c, x);
                }
            }
        }
    }

    /// Whether `v` lies in the row span; with the expressing coefficients
    /// (indexed by pivot column) when it does.
    pub fn membership(&self, v: SparseVec) -> Option<BTreeMap<usize, Rat>> {
        let (rest, witness) = self.reduce_with_witness(v);
        if rest.is_empty() {
            Some(witness)
        } else {
            None
        }
    }

    /// Inserts a row; returns its pivot column when independent.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let mut v = self.reduce(v);
        let (&p, lead) = match v.iter().next() {
            None => return None,
            Some((p, lead)) => (p, lead.clone()),
        };
        let inv = Rat::from_integer(1.into()) / lead;
        for coeff in v.values_mut() {
            *coeff *= inv.clone();
        }
        // Back-reduce existing rows at the new pivot.
        let holders: Vec<usize> = self
            .rows
            .iter()
            .filter(|(_, row)| row.contains_key(&p))
            .map(|(&q, _)| q)
            .collect();
        for q in holders {
            let coeff = self.rows[&q][&p].clone();
            let neg = -coeff;
            let mut row = self.rows.remove(&q).unwrap();
            vec_add_scaled(&mut row, &v, &neg);
            self.rows.insert(q, row);
        }
        self.rows.insert(p, v);
        Some(p)
    }

    /// Trace of `action` restricted to the stored row space; `None` when
    /// the space is not invariant.
    pub fn trace_restricted(&self, action: &SparseMat) -> Option<Rat> {
        let mut tr = Rat::zero();
        for (&p, row) in &self.rows {
            let image = action.apply(row);
            let coords = self.membership(image)?;
            if let Some(c) = coords.get(&p) {
                tr += c.clone();
            }
        }
        Some(tr)
    }
}

/// Trace of a chain map on cohomology at one degree, computed as the
/// trace on the kernel of the outgoing differential minus the trace on
/// the image of the incoming one.
pub fn trace_on_cohomology(
    d_prev: &SparseMat,
    d_next: &SparseMat,
    action: &SparseMat,
) -> Result<Rat, LinalgError> {
    if d_prev.rows() != action.cols() || d_next.cols() != action.rows() {
        return Err(LinalgError::DimensionMismatch);
    }
    if !d_next.mul(d_prev)?.is_zero_matrix() {
        return Err(LinalgError::NotAChainMap);
    }
    let mut kernel = Rref::new(action.cols());
    for v in d_next.kernel_basis() {
        kernel.insert(v);
    }
    let image = d_prev.transpose().eliminate().rref;
    let tr_kernel = kernel.trace_restricted(action).ok_or(LinalgError::NotAChainMap)?;
    let tr_image = image.trace_restricted(action).ok_or(LinalgError::NotAChainMap)?;
    Ok(tr_kernel - tr_image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn vec_of(pairs: &[(usize, i64)]) -> SparseVec {
        pairs.iter().map(|&(c, v)| (c, rat(v))).collect()
    }

    #[test]
    fn identity_rank() {
        let m = SparseMat::identity(5);
        let e = m.eliminate();
        assert_eq!(e.rank, 5);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn rank_nullity() {
        let mut m = SparseMat::zero(2, 4);
        m.set(0, 0, rat(1));
        m.set(0, 1, rat(2));
        m.set(1, 2, rat(1));
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel_basis().len(), 2);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rref_is_insertion_order_independent() {
        let rows = vec![
            vec_of(&[(0, 1), (1, 1)]),
            vec_of(&[(1, 1), (2, 1)]),
            vec_of(&[(0, 1), (2, -1)]),
        ];
        let mut a = Rref::new(3);
        for r in rows.iter() {
            a.insert(r.clone());
        }
        let mut b = Rref::new(3);
        for r in rows.iter().rev() {
            b.insert(r.clone());
        }
        assert_eq!(a.pivot_cols(), b.pivot_cols());
        for (p, row) in a.rows() {
            assert_eq!(b.row_for_pivot(*p), Some(row));
        }
    }

    #[test]
    fn membership_witness() {
        let mut r = Rref::new(3);
        r.insert(vec_of(&[(0, 1), (2, 1)]));
        r.insert(vec_of(&[(1, 1)]));
        assert!(r.membership(SparseVec::new()).is_some());
        let w = r.membership(vec_of(&[(0, 2), (1, 3), (2, 2)])).unwrap();
        assert_eq!(w[&0], rat(2));
        assert_eq!(w[&1], rat(3));
        assert!(r.membership(vec_of(&[(2, 1)])).is_none());
    }

    #[test]
    fn cohomology_trace_euler_bookkeeping() {
        // 0 -> Q^2 -d-> Q^2 with d of rank 1.
        let d_prev = SparseMat::zero(2, 0);
        let mut d_next = SparseMat::zero(2, 2);
        d_next.set(0, 0, rat(1));
        d_next.set(0, 1, rat(1));
        let id = SparseMat::identity(2);
        let tr = trace_on_cohomology(&d_prev, &d_next, &id).unwrap();
        assert_eq!(tr, rat(1)); // dim ker - rank prev = 1 - 0

        // Zero differentials: trace of the action itself.
        let z1 = SparseMat::zero(2, 0);
        let z2 = SparseMat::zero(3, 2);
        let mut act = SparseMat::identity(2);
        act.set(0, 0, rat(5));
        assert_eq!(trace_on_cohomology(&z1, &z2, &act).unwrap(), rat(6));

        // Acyclic two-term complex: zero for any commuting action.
        let d_prev = SparseMat::identity(2);
        let d_next = SparseMat::zero(0, 2);
        assert_eq!(trace_on_cohomology(&d_prev, &d_next, &act).unwrap(), rat(0));
    }
}
