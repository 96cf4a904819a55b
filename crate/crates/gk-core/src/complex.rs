//! Assembly of the chain complex for one `(g, n)` pair: labeled
//! generators, relation resolution, differential matrices, cohomology and
//! its symmetric-group decomposition.
//!
//! Generators are enumerated through the blown-up census (all components,
//! including the redundant shapes; quotients are taken by explicit
//! relation vectors, never by dropping generators). Relations come in
//! three local families: weight-13 rows inside each 12-subset block at the
//! genus-one vertex, weight-11 rows over remarkings of an unmarked graph,
//! and weight-2 rows over repartitions at the crossed pair.

use crate::canon::canonicalize;
use crate::census::{self, census_components, label_slots, multisets, Removal};
use crate::component::Component;
use crate::differential::total_differential;
use crate::generator::{
    edge_rep, family_of, normalize, Family, FormalSum, GenKey, Generator, RawGen,
};
use crate::graph::{HairLabel, HalfEdgeGraph, HalfEdgeId, VertexId};
use crate::linalg::{Rref, SparseMat, SparseVec};
use crate::prelude::*;
use crate::rat::{rat, Rat};
use crate::specht::{partitions, CharacterTable, Partition};
use num_traits::Zero;

pub fn excess(g: usize, n: usize) -> i64 {
    3 * g as i64 + 2 * n as i64
}

pub fn reduced_excess(g: usize, n: usize) -> i64 {
    excess(g, n) - 25
}

/// One degree of the assembled complex.
pub struct DegreeData {
    /// Sorted canonical keys of all nonzero generators.
    pub keys: Vec<GenKey>,
    pub gens: Vec<Generator>,
    /// Virtual representation each generator came from.
    pub provenance: Vec<u128>,
    /// Relation span over the generator columns.
    pub relations: Rref,
    /// Quotient basis: the non-pivot column indices.
    pub basis: Vec<usize>,
}

impl DegreeData {
    pub fn index_of(&self, key: &GenKey) -> Option<usize> {
        self.keys.binary_search(key).ok()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Expresses a formal sum in the quotient basis (coordinates indexed
    /// by position in `basis`).
    pub fn reduce(&self, sum: &FormalSum) -> SparseVec {
        let mut v = SparseVec::new();
        for (key, coeff) in sum.iter() {
            let col = self
                .index_of(key)
                .unwrap_or_else(|| panic!("generator outside the enumerated basis"));
            let slot = v.entry(col).or_insert_with(Rat::zero);
            *slot += coeff.clone();
            if slot.is_zero() {
                v.remove(&col);
            }
        }
        let reduced = self.relations.reduce(v);
        let mut out = SparseVec::new();
        for (col, coeff) in reduced {
            let pos = self
                .basis
                .binary_search(&col)
                .expect("reduced vector supported on the basis");
            out.insert(pos, coeff);
        }
        out
    }
}

/// The relation-resolved chain complex of one `(g, n)` pair.
pub struct Assembled {
    pub g: usize,
    pub n: usize,
    pub reduced_excess: i64,
    pub degrees: BTreeMap<usize, DegreeData>,
}

struct Collector {
    per_degree: BTreeMap<usize, BTreeMap<GenKey, (Generator, u128)>>,
}

impl Collector {
    fn new() -> Self {
        Collector {
            per_degree: BTreeMap::new(),
        }
    }

    fn add(&mut self, key: GenKey, gen: Generator, vrep: u128) {
        let k = gen.degree();
        self.per_degree
            .entry(k)
            .or_default()
            .entry(key)
            .or_insert((gen, vrep));
    }
}

/// Labelings of the marked-point slots: injective sequences on the
/// distinguished slots (components that are not omega-j hairs), with the
/// leftover labels poured into the omega-j hairs as an increasing set.
fn labelings(comps: &[Component], n: usize) -> Vec<Vec<u32>> {
    let omega_j_key = Component::omega_j().key;
    // Slot layout follows census::assemble: per component in order.
    let mut slot_kind: Vec<bool> = Vec::new(); // true = distinguished
    for c in comps {
        for _ in 0..c.jays {
            slot_kind.push(c.key != omega_j_key);
        }
    }
    debug_assert_eq!(slot_kind.len(), n);
    let m = slot_kind.iter().filter(|&&d| d).count();
    let mut out = Vec::new();
    let mut chosen: Vec<u32> = Vec::new();
    fn rec(m: usize, n: usize, chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if chosen.len() == m {
            out.push(chosen.clone());
            return;
        }
        for l in 1..=n as u32 {
            if !chosen.contains(&l) {
                chosen.push(l);
                rec(m, n, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(m, n, &mut chosen, &mut out);
    // Interleave: distinguished slots take the sequence, omega-j slots the
    // sorted remainder.
    let mut full = Vec::with_capacity(out.len());
    for seq in out {
        let rest: Vec<u32> = (1..=n as u32).filter(|l| !seq.contains(l)).collect();
        let mut assignment = Vec::with_capacity(n);
        let mut di = 0;
        let mut ri = 0;
        for &d in &slot_kind {
            if d {
                assignment.push(seq[di]);
                di += 1;
            } else {
                assignment.push(rest[ri]);
                ri += 1;
            }
        }
        full.push(assignment);
    }
    full
}

impl Assembled {
    /// Enumerates, normalizes and relation-resolves the full complex.
    pub fn build(g: usize, n: usize) -> Assembled {
        let re = reduced_excess(g, n);
        assert!((0..=4).contains(&re), "excess class out of range");
        let census = census_components(re);
        let gen_comps: Vec<Component> = census
            .iter()
            .filter(|cc| {
                matches!(
                    cc.removal,
                    Removal::Kept | Removal::OmegaAtCrossedA2 | Removal::Weight2Redundant
                )
            })
            .map(|cc| cc.comp.clone())
            .collect();

        let mut collector = Collector::new();
        for ms in multisets(&gen_comps, re, 0) {
            let rep = census::make_virtual_rep(ms, re);
            let comps = match rep.complete(g, n) {
                Some(c) => c,
                None => continue,
            };
            debug_assert_eq!(label_slots(&comps), n);
            for labels in labelings(&comps, n) {
                let raw = census::assemble(&comps, &labels);
                if let Some(t) = normalize(&raw, rat(1)) {
                    collector.add(t.key, t.gen, rep.id);
                }
            }
        }

        let mut degrees: BTreeMap<usize, DegreeData> = BTreeMap::new();
        for (k, m) in collector.per_degree {
            let mut keys = Vec::with_capacity(m.len());
            let mut gens = Vec::with_capacity(m.len());
            let mut provenance = Vec::with_capacity(m.len());
            for (key, (gen, vrep)) in m {
                keys.push(key);
                gens.push(gen);
                provenance.push(vrep);
            }
            degrees.insert(
                k,
                DegreeData {
                    relations: Rref::new(keys.len()),
                    basis: Vec::new(),
                    keys,
                    gens,
                    provenance,
                },
            );
        }

        let mut assembled = Assembled {
            g,
            n,
            reduced_excess: re,
            degrees,
        };
        assembled.install_relations();
        assembled
    }

    fn install_relations(&mut self) {
        let degrees: Vec<usize> = self.degrees.keys().copied().collect();
        for k in degrees {
            let rows = self.relation_sums(k);
            let sparse: Vec<SparseVec> = rows.iter().map(|r| self.row_of(k, r)).collect();
            let data = self.degrees.get_mut(&k).unwrap();
            for row in sparse {
                data.relations.insert(row);
            }
            let pivots: BTreeSet<usize> = data.relations.pivot_cols().into_iter().collect();
            data.basis = (0..data.keys.len()).filter(|i| !pivots.contains(i)).collect();
        }
    }

    fn row_of(&self, k: usize, sum: &FormalSum) -> SparseVec {
        let data = &self.degrees[&k];
        let mut v = SparseVec::new();
        for (key, coeff) in sum.iter() {
            let col = data
                .index_of(key)
                .unwrap_or_else(|| panic!("relation term outside the enumerated generators"));
            let slot = v.entry(col).or_insert_with(Rat::zero);
            *slot += coeff.clone();
            if slot.is_zero() {
                v.remove(&col);
            }
        }
        v
    }

    /// All relation rows in degree `k` tagged by family: weight-13
    /// blocks, weight-11 remarkings and weight-2 repartitions.
    pub fn relation_sums_tagged(&self, k: usize) -> Vec<(&'static str, FormalSum)> {
        let mut out = Vec::new();
        for r in self.relation_sums13(k) {
            out.push(("w13", r));
        }
        for r in self.relation_sums11(k) {
            out.push(("w11", r));
        }
        for r in self.relation_sums2(k) {
            out.push(("w2", r));
        }
        out
    }

    /// All relation rows in degree `k`.
    pub fn relation_sums(&self, k: usize) -> Vec<FormalSum> {
        self.relation_sums_tagged(k).into_iter().map(|(_, r)| r).collect()
    }

    fn relation_sums13(&self, k: usize) -> Vec<FormalSum> {
        let data = &self.degrees[&k];
        let mut rows: Vec<FormalSum> = Vec::new();
        let mut w13_keys: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut w13_reps: Vec<HalfEdgeGraph> = Vec::new();
        for gen in &data.gens {
            let fam = gen.family();
            let contracted = match fam {
                Family::A2 => a_case_key_graph(&gen.graph),
                Family::Birr => birr_key_graph(&gen.graph),
                _ => None,
            };
            if let Some(kg) = contracted {
                let key = canonicalize(&kg, false).key;
                if w13_keys.insert(key) {
                    w13_reps.push(kg);
                }
            }
        }
        for kg in &w13_reps {
            rows.extend(weight13_rows(kg));
        }
        rows
    }

    fn relation_sums11(&self, k: usize) -> Vec<FormalSum> {
        let data = &self.degrees[&k];
        let mut rows: Vec<FormalSum> = Vec::new();
        let mut w11_keys: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut w11_reps: Vec<HalfEdgeGraph> = Vec::new();
        for gen in &data.gens {
            if matches!(gen.family(), Family::B1 | Family::Birr) {
                let mut unmarked = gen.graph.clone();
                for h in unmarked.half_edge_ids() {
                    unmarked.set_marked(h, false);
                }
                let key = canonicalize(&unmarked, false).key;
                if w11_keys.insert(key) {
                    w11_reps.push(unmarked);
                }
            }
        }
        for ug in &w11_reps {
            rows.extend(weight11_rows(ug));
        }
        rows
    }

    fn relation_sums2(&self, k: usize) -> Vec<FormalSum> {
        let data = &self.degrees[&k];
        let mut rows: Vec<FormalSum> = Vec::new();
        let mut w2_keys: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut w2_reps: Vec<(HalfEdgeGraph, VertexId)> = Vec::new();
        for gen in &data.gens {
            if gen.family() == Family::B1 {
                let (contr, merged) = contract_b1(&gen.graph);
                let key = canonicalize(&contr, false).key;
                if w2_keys.insert(key) {
                    w2_reps.push((contr, merged));
                }
            }
        }
        for (hg, merged) in &w2_reps {
            rows.extend(weight2_rows(hg, *merged));
        }

        rows
    }

    /// The differential matrices `D_k` from the degree-`k` quotient basis
    /// to the next degree. Degrees outside the populated window give empty
    /// matrices.
    pub fn differentials(&self) -> BTreeMap<usize, SparseMat> {
        let mut out = BTreeMap::new();
        for (&k, data) in &self.degrees {
            let next_dim = self.degrees.get(&(k + 1)).map(|d| d.dim()).unwrap_or(0);
            let mut m = SparseMat::zero(next_dim, data.dim());
            for (j, &col) in data.basis.iter().enumerate() {
                let image = total_differential(&data.gens[col]);
                if image.is_zero() {
                    continue;
                }
                let next = self
                    .degrees
                    .get(&(k + 1))
                    .unwrap_or_else(|| panic!("differential leaves the populated degrees"));
                let v = next.reduce(&image);
                for (row, coeff) in v {
                    m.set(row, j, coeff);
                }
            }
            out.insert(k, m);
        }
        out
    }

    /// Checks `d. d = 0` as a matrix identity in every degree.
    pub fn check_d_squared(&self, d: &BTreeMap<usize, SparseMat>) -> bool {
        for (&k, dk) in d {
            if let Some(dn) = d.get(&(k + 1)) {
                match dn.mul(dk) {
                    Ok(p) => {
                        if !p.is_zero_matrix() {
                            return false;
                        }
                    }
                    Err(_) => return false,
                }
            }
        }
        true
    }

    pub fn dims(&self) -> BTreeMap<usize, usize> {
        self.degrees
            .iter()
            .filter(|(_, d)| d.dim() > 0)
            .map(|(&k, d)| (k, d.dim()))
            .collect()
    }

    pub fn cohomology_dims(&self, d: &BTreeMap<usize, SparseMat>) -> BTreeMap<usize, usize> {
        let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
        for (&k, m) in d {
            ranks.insert(k, m.rank());
        }
        let mut out = BTreeMap::new();
        for (&k, data) in &self.degrees {
            let rk = ranks.get(&k).copied().unwrap_or(0);
            let rprev = ranks.get(&(k.wrapping_sub(1))).copied().unwrap_or(0);
            let h = data.dim() - rk - rprev;
            if h > 0 {
                out.insert(k, h);
            }
        }
        out
    }

    /// Permutation of `1..=n` with the given cycle type, cycles laid out
    /// consecutively.
    pub fn class_representative(n: usize, mu: &[usize]) -> Vec<u32> {
        let mut perm: Vec<u32> = (0..=n as u32).collect();
        let mut next = 1u32;
        for &c in mu {
            let cycle: Vec<u32> = (next..next + c as u32).collect();
            for i in 0..c {
                perm[cycle[i] as usize] = cycle[(i + 1) % c];
            }
            next += c as u32;
        }
        perm
    }

    /// Matrix of the permutation action on the degree-`k` quotient basis.
    pub fn action_matrix(&self, k: usize, perm: &[u32]) -> SparseMat {
        let data = &self.degrees[&k];
        let mut m = SparseMat::zero(data.dim(), data.dim());
        for (j, &col) in data.basis.iter().enumerate() {
            let gen = &data.gens[col];
            let raw = gen.as_raw();
            let moved = RawGen {
                graph: raw.graph.relabel_j(|x| perm[x as usize]),
                b_order: raw.b_order,
                edge_order: raw.edge_order,
            };
            if let Some(t) = normalize(&moved, rat(1)) {
                let mut sum = FormalSum::new();
                sum.add_term(t.key, t.coeff);
                for (row, coeff) in data.reduce(&sum) {
                    m.set(row, j, coeff);
                }
            }
        }
        m
    }

    /// Trace of the permutation action on the degree-`k` quotient.
    pub fn chain_trace(&self, k: usize, perm: &[u32]) -> Rat {
        self.action_matrix(k, perm).trace()
    }

    /// The equivariant Euler characteristic as a class-function value
    /// vector over the cycle types of `n`, in `partitions(n)` order.
    pub fn euler_character(&self) -> Vec<Rat> {
        let parts = partitions(self.n);
        parts
            .iter()
            .map(|mu| {
                let perm = Self::class_representative(self.n, mu);
                let mut acc = Rat::zero();
                for (&k, data) in &self.degrees {
                    if data.dim() == 0 {
                        continue;
                    }
                    let tr = self.chain_trace(k, &perm);
                    if k % 2 == 0 {
                        acc += tr;
                    } else {
                        acc -= tr;
                    }
                }
                acc
            })
            .collect()
    }

    /// Per-degree cohomology characters (one value per cycle type).
    pub fn cohomology_characters(
        &self,
        d: &BTreeMap<usize, SparseMat>,
    ) -> BTreeMap<usize, Vec<Rat>> {
        let parts = partitions(self.n);
        let mut out = BTreeMap::new();
        for (&k, data) in &self.degrees {
            if data.dim() == 0 {
                continue;
            }
            let empty_prev = SparseMat::zero(data.dim(), 0);
            let empty_next = SparseMat::zero(0, data.dim());
            let d_prev = if k > 0 { d.get(&(k - 1)) } else { None }.unwrap_or(&empty_prev);
            let d_next = d.get(&k).unwrap_or(&empty_next);
            let values: Vec<Rat> = parts
                .iter()
                .map(|mu| {
                    let perm = Self::class_representative(self.n, mu);
                    let action = self.action_matrix(k, &perm);
                    crate::linalg::trace_on_cohomology(d_prev, d_next, &action)
                        .expect("equivariant differential")
                })
                .collect();
            if values.iter().any(|v| !v.is_zero()) {
                out.insert(k, values);
            }
        }
        out
    }

    /// Specht decomposition of each nonzero cohomology degree.
    pub fn cohomology_specht(
        &self,
        d: &BTreeMap<usize, SparseMat>,
    ) -> BTreeMap<usize, Vec<(Partition, u64)>> {
        let table = CharacterTable::new(self.n);
        let mut out = BTreeMap::new();
        for (k, values) in self.cohomology_characters(d) {
            let dec = table
                .decompose(&values)
                .expect("cohomology carries a genuine character");
            if !dec.is_empty() {
                out.insert(k, dec);
            }
        }
        out
    }
}

/// Key graph of a family-A generator: the crossed edge contracted into the
/// genus-one vertex, with the freed complement elements marked. The twelve
/// marked half-edges are the block support.
pub fn a_case_key_graph(g: &HalfEdgeGraph) -> Option<HalfEdgeGraph> {
    let bv = g.genus_one_vertex()?;
    let crossed: Vec<HalfEdgeId> = g
        .half_edge_ids()
        .into_iter()
        .filter(|&h| g.is_crossed(h))
        .collect();
    let (cb, ct) = if g.vertex_of(crossed[0]) == bv {
        (crossed[0], crossed[1])
    } else {
        (crossed[1], crossed[0])
    };
    if g.vertex_of(cb) != bv {
        return None;
    }
    let tv = g.vertex_of(ct);
    let mut w = g.clone();
    for h in w.half_edges_at(tv) {
        if h == ct {
            continue;
        }
        w.move_half(h, bv);
        w.set_marked(h, true);
    }
    w.delete_edge(cb);
    w.delete_vertex(tv);
    let (out, _, _) = w.compact();
    Some(out)
}

/// Key graph reached from an irreducible-family generator by reversing the
/// loop rewriting: the crossed-loop vertex becomes a marked loop at the
/// genus-one vertex.
pub fn birr_key_graph(g: &HalfEdgeGraph) -> Option<HalfEdgeGraph> {
    let bv = g.genus_one_vertex()?;
    let crossed: Vec<HalfEdgeId> = g
        .half_edge_ids()
        .into_iter()
        .filter(|&h| g.is_crossed(h))
        .collect();
    let tv = g.vertex_of(crossed[0]);
    if g.vertex_of(crossed[1]) != tv {
        return None;
    }
    let stem = g
        .half_edges_at(tv)
        .into_iter()
        .find(|&h| !g.is_crossed(h))?;
    let mate = g.mate(stem)?;
    if g.vertex_of(mate) != bv {
        return None;
    }
    let mut w = g.clone();
    w.delete_edge(crossed[0]);
    w.delete_edge(stem);
    w.delete_vertex(tv);
    let (l1, l2) = w.add_edge(bv, bv, false);
    w.set_marked(l1, true);
    w.set_marked(l2, true);
    let (out, _, _) = w.compact();
    Some(out)
}

/// The weight-13 relation rows of one block: for every pair of marked
/// elements a realization pulls them across a crossed edge, and every
/// triple gives an alternating three-term row.
pub fn weight13_rows(key_graph: &HalfEdgeGraph) -> Vec<FormalSum> {
    let bv = key_graph.genus_one_vertex().expect("genus-one vertex");
    let canon = canonicalize(key_graph, false);
    let mut marked: Vec<(HalfEdgeId, HalfEdgeId)> = key_graph
        .half_edges_at(bv)
        .into_iter()
        .filter(|&h| key_graph.is_marked(h))
        .map(|h| (canon.half_map[h as usize], h))
        .collect();
    marked.sort();
    let e_set: Vec<HalfEdgeId> = marked.iter().map(|&(_, h)| h).collect();
    assert_eq!(e_set.len(), 12, "weight-13 block support");
    let ref_edges: Vec<HalfEdgeId> = key_graph.real_edges().iter().map(|&(a, _)| a).collect();

    // Realize the generator with complement {e_i, e_j}.
    let realize = |i: usize, j: usize, coeff: Rat| -> Option<crate::generator::NormalTerm> {
        let (p, q) = (e_set[i], e_set[j]);
        let mut w = key_graph.clone();
        let tv = w.add_vertex(0);
        w.move_half(p, tv);
        w.move_half(q, tv);
        w.set_marked(p, false);
        w.set_marked(q, false);
        w.add_edge(bv, tv, true);
        let b_order: Vec<HalfEdgeId> = e_set
            .iter()
            .copied()
            .filter(|&h| h != p && h != q)
            .collect();
        let edge_order: Vec<HalfEdgeId> = ref_edges.iter().map(|&h| edge_rep(&w, h)).collect();
        normalize(
            &RawGen {
                graph: w,
                b_order,
                edge_order,
            },
            coeff,
        )
    };

    let sign = |a: usize, b: usize| -> Rat {
        // One-based alternating prefactor.
        if (a + b) % 2 == 0 {
            rat(1)
        } else {
            rat(-1)
        }
    };
    let mut rows = Vec::new();
    for i in 0..12 {
        for j in (i + 1)..12 {
            for k in (j + 1)..12 {
                let mut sum = FormalSum::new();
                sum.add_normal(realize(i, j, sign(i + 1, j + 1)));
                sum.add_normal(realize(i, k, -sign(i + 1, k + 1)));
                sum.add_normal(realize(j, k, sign(j + 1, k + 1)));
                if !sum.is_zero() {
                    rows.push(sum);
                }
            }
        }
    }
    rows
}

/// The weight-11 relation rows of one unmarked graph: one alternating row
/// per 12-subset of the attachments at the genus-one vertex.
pub fn weight11_rows(unmarked: &HalfEdgeGraph) -> Vec<FormalSum> {
    let bv = unmarked.genus_one_vertex().expect("genus-one vertex");
    let canon = canonicalize(unmarked, false);
    let mut ground: Vec<(HalfEdgeId, HalfEdgeId)> = unmarked
        .half_edges_at(bv)
        .into_iter()
        .map(|h| (canon.half_map[h as usize], h))
        .collect();
    ground.sort();
    let ground: Vec<HalfEdgeId> = ground.into_iter().map(|(_, h)| h).collect();
    if ground.len() < 12 {
        return Vec::new();
    }
    let ref_edges: Vec<HalfEdgeId> = unmarked.real_edges().iter().map(|&(a, _)| a).collect();
    let mut rows = Vec::new();
    for e in crate::decoration::subsets(ground.len(), 12) {
        let mut sum = FormalSum::new();
        for (i, &pos) in e.iter().enumerate() {
            let out_elt = ground[pos];
            let mut w = unmarked.clone();
            let mut b_order = Vec::with_capacity(11);
            for &p in &e {
                let h = ground[p];
                if h != out_elt {
                    w.set_marked(h, true);
                    b_order.push(h);
                }
            }
            let coeff = if (i + 1) % 2 == 0 { rat(1) } else { rat(-1) };
            let edge_order: Vec<HalfEdgeId> = ref_edges.iter().map(|&h| edge_rep(&w, h)).collect();
            sum.add_normal(normalize(
                &RawGen {
                    graph: w,
                    b_order,
                    edge_order,
                },
                coeff,
            ));
        }
        if !sum.is_zero() {
            rows.push(sum);
        }
    }
    rows
}

/// Contracts the crossed edge of a family-B1 generator, returning the
/// merged vertex.
pub fn contract_b1(g: &HalfEdgeGraph) -> (HalfEdgeGraph, VertexId) {
    let (h, m) = g
        .edges()
        .into_iter()
        .find(|&(h, _)| g.is_crossed(h))
        .expect("crossed edge");
    let (keep, gone) = (g.vertex_of(h), g.vertex_of(m));
    let mut w = g.clone();
    for x in w.half_edges_at(gone) {
        w.move_half(x, keep);
    }
    w.delete_edge(h);
    w.delete_vertex(gone);
    let (out, _, vmap) = w.compact();
    (out, vmap[keep as usize].unwrap())
}

/// The weight-2 relation rows of one contracted graph: differences of the
/// psi expansions, the two-element sums, and the loop pushforward sums.
pub fn weight2_rows(contr: &HalfEdgeGraph, merged: VertexId) -> Vec<FormalSum> {
    let ground: Vec<HalfEdgeId> = contr.half_edges_at(merged);
    let ref_edges: Vec<HalfEdgeId> = contr.real_edges().iter().map(|&(a, _)| a).collect();
    let b_order: Vec<HalfEdgeId> = {
        let bv = contr.genus_one_vertex().expect("genus-one vertex");
        contr
            .half_edges_at(bv)
            .into_iter()
            .filter(|&h| contr.is_marked(h))
            .collect()
    };

    // Realized splits, cached per side (sides contain the anchor).
    let anchor = ground[0];
    let rest: Vec<HalfEdgeId> = ground[1..].to_vec();
    let mut terms: BTreeMap<Vec<HalfEdgeId>, Option<crate::generator::NormalTerm>> =
        BTreeMap::new();
    for mask in 0u32..(1u32 << rest.len()) {
        let mut side = vec![anchor];
        for (i, &h) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                side.push(h);
            }
        }
        if side.len() < 2 || ground.len() - side.len() < 2 {
            continue;
        }
        let mut w = contr.clone();
        let tv2 = w.add_vertex(0);
        for &x in &side {
            w.move_half(x, tv2);
        }
        w.add_edge(merged, tv2, true);
        let edge_order: Vec<HalfEdgeId> = ref_edges.iter().map(|&h| edge_rep(&w, h)).collect();
        let t = normalize(
            &RawGen {
                graph: w,
                b_order: b_order.clone(),
                edge_order,
            },
            rat(1),
        );
        terms.insert(side, t);
    }

    let p_sum = |i: HalfEdgeId, others: &[HalfEdgeId]| -> FormalSum {
        let mut v = FormalSum::new();
        for (side, term) in &terms {
            let has = |x: HalfEdgeId| side.contains(&x);
            if others.iter().all(|&x| has(x) != has(i)) {
                if let Some(t) = term {
                    v.add_term(t.key.clone(), t.coeff.clone());
                }
            }
        }
        v
    };
    let minus = |mut a: FormalSum, b: &FormalSum| -> FormalSum {
        let mut neg = b.clone();
        neg.scale(&rat(-1));
        a.add_sum(&neg);
        a
    };

    let mut rows = Vec::new();
    for &i in &ground {
        let pool: Vec<HalfEdgeId> = ground.iter().copied().filter(|&x| x != i).collect();
        let base = p_sum(i, &pool[..2]);
        for a in 0..pool.len() {
            for b in (a + 1)..pool.len() {
                if (a, b) == (0, 1) {
                    continue;
                }
                let row = minus(p_sum(i, &[pool[a], pool[b]]), &base);
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
    }
    for ai in 0..ground.len() {
        for bi in (ai + 1)..ground.len() {
            let (i, j) = (ground[ai], ground[bi]);
            let pool: Vec<HalfEdgeId> = ground
                .iter()
                .copied()
                .filter(|&x| x != i && x != j)
                .collect();
            if pool.len() < 2 {
                continue;
            }
            let s = p_sum(i, &[j]);
            let pi = p_sum(i, &[pool[0], pool[1]]);
            let pj = p_sum(j, &[pool[0], pool[1]]);
            let row = minus(minus(s, &pi), &pj);
            if !row.is_zero() {
                rows.push(row);
            }
        }
    }
    // Loop halves at the merged vertex: the separating sum vanishes.
    for (a, b) in contr.edges() {
        if contr.vertex_of(a) == merged && contr.vertex_of(b) == merged {
            let row = p_sum(a, &[b]);
            if !row.is_zero() {
                rows.push(row);
            }
        }
    }
    rows
}
