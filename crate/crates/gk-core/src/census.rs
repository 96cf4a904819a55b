//! The census machine: enumeration of blown-up components and virtual
//! blown-up representations, relation grouping, existence ranges and
//! completions.
//!
//! Components are generated from unmarked templates (connected simple
//! graphs with at least trivalent vertices and `u`-labeled hairs, plus a
//! small manual list of degenerate shapes), marked into omega/epsilon in
//! all ways, and filtered: individually odd components vanish, the
//! crossed-partner loop shapes rewrite away, and components with a crossed
//! edge are resolved against the local weight-2 relation system of their
//! contraction.

use crate::canon::{canonicalize, SignConvention};
use crate::component::{BareEnd, Body, Component, CrossedKind};
use crate::generator::{edge_rep, Family, RawGen};
use crate::graph::{HairLabel, HalfEdgeGraph, HalfEdgeId, VertexId};
use crate::linalg::{Rref, SparseVec};
use crate::prelude::*;
use crate::rat::{rat, sort_sign, Rat};
use num_traits::Zero;

/// Why a component is not part of the basis list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Removal {
    Kept,
    /// The component alone has an odd symmetry.
    Odd,
    /// Crossed-hair vertex with a plain loop; rewrites into the
    /// irreducible family.
    LoopAtCrossed,
    /// Trivalent crossed-hair vertex with a parallel marked edge;
    /// redundant by the weight-13 two-element identity.
    OmegaAtCrossedA2,
    /// Expressed by other members of its weight-2 relation group.
    Weight2Redundant,
    /// All labelings vanish under the weight-2 relations.
    Weight2Zero,
}

#[derive(Clone, Debug)]
pub struct CensusComponent {
    pub comp: Component,
    pub removal: Removal,
}

/// A weight-2 relation group of crossed-edge components.
#[derive(Clone, Debug)]
pub struct Weight2Group {
    /// Canonical key of the contraction at the crossed edge.
    pub contraction_key: Vec<u8>,
    /// Keys of the generated members.
    pub members: Vec<Vec<u8>>,
    /// Keys of the members kept as basis.
    pub basis: Vec<Vec<u8>>,
    /// Members all of whose labelings vanish.
    pub zero: Vec<Vec<u8>>,
}

fn fnv128(data: &[u8]) -> u128 {
    let mut h: u128 = 0x6c62272e07bb014262b821756295c58d;
    for &b in data {
        h ^= b as u128;
        h = h.wrapping_mul(0x0000000001000000000000000000013b);
    }
    h
}

pub fn content_id(keys: &[Vec<u8>]) -> u128 {
    let mut buf = Vec::new();
    for k in keys {
        buf.extend_from_slice(&(k.len() as u32).to_le_bytes());
        buf.extend_from_slice(k);
    }
    fnv128(&buf)
}

/// All connected simple graphs on `v` labeled vertices with first Betti
/// number at most `max_b1`, as edge lists.
fn simple_graphs(v: usize, max_b1: usize) -> Vec<Vec<(u32, u32)>> {
    let mut pairs = Vec::new();
    for i in 0..v as u32 {
        for j in (i + 1)..v as u32 {
            pairs.push((i, j));
        }
    }
    let mut out = Vec::new();
    let max_edges = if v == 0 { 0 } else { v - 1 + max_b1 };
    for mask in 0u32..(1u32 << pairs.len()) {
        let edges: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if edges.len() + 1 < v || edges.len() > max_edges {
            continue;
        }
        // Connectivity.
        let mut reach = vec![false; v];
        if v > 0 {
            reach[0] = true;
            loop {
                let mut changed = false;
                for &(a, b) in &edges {
                    let (a, b) = (a as usize, b as usize);
                    if reach[a] != reach[b] {
                        reach[a] = true;
                        reach[b] = true;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        if reach.iter().all(|&r| r) {
            out.push(edges);
        }
    }
    out
}

/// Unmarked templates: graphs with `u` and anonymous `j` hairs, within the
/// excess budget, all vertices at least trivalent, together with crossed
/// variants. Deduplicated by canonical key.
fn templates(max_excess: i64) -> Vec<HalfEdgeGraph> {
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut out: Vec<HalfEdgeGraph> = Vec::new();
    let mut push = |g: HalfEdgeGraph, out: &mut Vec<HalfEdgeGraph>| {
        let key = canonicalize(&g, false).key;
        if seen.insert(key) {
            out.push(g);
        }
    };

    for v in 1..=6usize {
        for edges in simple_graphs(v, 2) {
            let b1 = edges.len() + 1 - v;
            // Shape variants change the valence and excess bookkeeping:
            // a stub hangs a crossed-loop vertex off one vertex, a
            // parallel doubles one edge next to the crossing; both add a
            // cycle's worth of excess.
            #[derive(Clone, Copy)]
            enum Shape {
                Plain,
                Parallel(usize),
            }
            let mut shapes = vec![Shape::Plain];
            shapes.extend((0..edges.len()).map(Shape::Parallel));
            for shape in shapes {
                let extra_cycle = match shape {
                    Shape::Plain => 0i64,
                    _ => 1,
                };
                // Minimal marked excess 3(b1+extra-1) + u + 2j stays
                // within the budget, so u + 2j is bounded as follows.
                let bound = max_excess + 3 - 3 * (b1 as i64 + extra_cycle - 1);
                if bound < 1 {
                    continue;
                }
                let mut deg = vec![0usize; v];
                for &(a, b) in &edges {
                    deg[a as usize] += 1;
                    deg[b as usize] += 1;
                }
                if let Shape::Parallel(ei) = shape {
                    let (a, b) = edges[ei];
                    deg[a as usize] += 1;
                    deg[b as usize] += 1;
                }
                // Enumerate hair counts per vertex.
                let mut stacks: Vec<(Vec<(usize, usize)>, i64)> = vec![(Vec::new(), 0)];
                for i in 0..v {
                    let mut next = Vec::new();
                    for (prefix, used) in &stacks {
                        let need = 3usize.saturating_sub(deg[i]);
                        for u_hairs in 0..=(bound - used).max(0) as usize {
                            for j_hairs in
                                0..=((bound - used - u_hairs as i64) / 2).max(0) as usize
                            {
                                if u_hairs + j_hairs < need {
                                    continue;
                                }
                                let mut p = prefix.clone();
                                p.push((u_hairs, j_hairs));
                                next.push((p, used + u_hairs as i64 + 2 * j_hairs as i64));
                            }
                        }
                    }
                    stacks = next;
                }
                for (hairs, _) in stacks {
                    let total_u: usize = hairs.iter().map(|&(u, _)| u).sum();
                    let total_j: usize = hairs.iter().map(|&(_, j)| j).sum();
                    let e_min = 3 * (b1 as i64 + extra_cycle - 1)
                        + total_u as i64
                        + 2 * total_j as i64;
                    if total_u == 0 || e_min > max_excess {
                        continue;
                    }
                    let mut g = HalfEdgeGraph::new();
                    for _ in 0..v {
                        g.add_vertex(0);
                    }
                    for &(a, b) in &edges {
                        g.add_edge(a, b, false);
                    }
                    for (i, &(u, j)) in hairs.iter().enumerate() {
                        for _ in 0..u {
                            g.add_hair(i as u32, HairLabel::U);
                        }
                        for _ in 0..j {
                            g.add_hair(i as u32, HairLabel::J(None));
                        }
                    }
                    match shape {
                        Shape::Parallel(ei) => {
                            // Cross the chosen edge and double it.
                            let all = g.edges();
                            let (a, _) = all[ei];
                            let (va, vb) = (g.vertex_of(a), g.vertex_of(g.mate(a).unwrap()));
                            g.delete_edge(a);
                            g.add_edge(va, vb, true);
                            g.add_edge(va, vb, false);
                            let (g, _, _) = g.compact();
                            push(g, &mut out);
                        }
                        Shape::Plain => {
                            push(g.clone(), &mut out);
                            // Crossed-hair variants.
                            for h in g.hairs() {
                                if g.label(h) == Some(HairLabel::U) {
                                    let mut cg = g.clone();
                                    cg.set_crossed_hair(h);
                                    push(cg, &mut out);
                                }
                            }
                            // Crossed-edge variants.
                            for (a, b) in g.edges() {
                                let mut cg = g.clone();
                                let (va, vb) = (cg.vertex_of(a), cg.vertex_of(b));
                                let _ = b;
                                cg.delete_edge(a);
                                cg.add_edge(va, vb, true);
                                let (cg, _, _) = cg.compact();
                                push(cg, &mut out);
                            }
                        }
                    }
                }
            }
        }
    }

    // Manual degenerate shapes: the crossed-loop seed and the trivalent
    // crossed-hair vertex with a plain loop.
    let mut seed = HalfEdgeGraph::new();
    let sv = seed.add_vertex(0);
    seed.add_edge(sv, sv, true);
    seed.add_hair(sv, HairLabel::U);
    push(seed, &mut out);

    let mut a2loop = HalfEdgeGraph::new();
    let av = a2loop.add_vertex(0);
    let ch = a2loop.add_hair(av, HairLabel::U);
    a2loop.set_crossed_hair(ch);
    a2loop.add_edge(av, av, false);
    push(a2loop, &mut out);

    out
}

/// All markings of a template into omega/epsilon (crossed hairs are always
/// omega), within the excess budget. Returns canonical components.
fn markings(template: &HalfEdgeGraph, max_excess: i64) -> Vec<Component> {
    let u_hairs: Vec<HalfEdgeId> = template
        .hairs()
        .into_iter()
        .filter(|&h| template.label(h) == Some(HairLabel::U))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << u_hairs.len()) {
        let mut g = template.clone();
        for (i, &h) in u_hairs.iter().enumerate() {
            if g.is_crossed(h) {
                if mask >> i & 1 == 1 {
                    // crossed hairs are omega only; skip the epsilon branch
                    g = HalfEdgeGraph::new();
                    break;
                }
                g.set_label(h, HairLabel::Omega);
            } else if mask >> i & 1 == 1 {
                g.set_label(h, HairLabel::Epsilon);
            } else {
                g.set_label(h, HairLabel::Omega);
            }
        }
        if g.vertex_count() == 0 {
            continue;
        }
        let comp = Component::from_graph(&g);
        if comp.excess() >= 0 && comp.excess() <= max_excess {
            out.push(comp);
        }
    }
    out
}

/// The five bare components.
fn bare_components() -> Vec<Component> {
    vec![
        Component::bare(BareEnd::Omega, BareEnd::Omega),
        Component::bare(BareEnd::Omega, BareEnd::Epsilon),
        Component::bare(BareEnd::Epsilon, BareEnd::Epsilon),
        Component::bare(BareEnd::Omega, BareEnd::J),
        Component::bare(BareEnd::Epsilon, BareEnd::J),
    ]
}

/// Generates all blown-up components with excess at most `max_excess`
/// (bare doubles may have excess -1), before any removals.
pub fn generate_components(max_excess: i64) -> Vec<Component> {
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut out = Vec::new();
    for c in bare_components() {
        if c.excess() <= max_excess && seen.insert(c.key.clone()) {
            out.push(c);
        }
    }
    for t in templates(max_excess) {
        for c in markings(&t, max_excess) {
            if seen.insert(c.key.clone()) {
                out.push(c);
            }
        }
    }
    out.sort();
    out
}

/// Whether the crossed-hair vertex of a family-A component carries a
/// plain loop (rewrites away) or, when trivalent, a plain omega hair
/// (redundant by the two-element weight-13 identity).
fn crossed_hair_flags(c: &Component) -> (bool, bool) {
    let g = match &c.body {
        Body::Graph(g) if c.crossed == CrossedKind::Hair => g,
        _ => return (false, false),
    };
    let ch = g
        .half_edge_ids()
        .into_iter()
        .find(|&h| g.is_crossed(h))
        .unwrap();
    let tv = g.vertex_of(ch);
    let halves = g.half_edges_at(tv);
    let has_loop = halves.iter().any(|&h| g.is_loop(h));
    let a2_omega = halves.len() == 3
        && halves
            .iter()
            .any(|&h| !g.is_crossed(h) && g.label(h) == Some(HairLabel::Omega));
    (has_loop, a2_omega)
}

/// Contraction of a crossed-edge component, tracking the merged vertex.
fn contract_tracking(g: &HalfEdgeGraph) -> (HalfEdgeGraph, VertexId, Vec<Option<HalfEdgeId>>) {
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
    let (out, hmap, vmap) = w.compact();
    (out, vmap[keep as usize].unwrap(), hmap)
}

/// Numbers the anonymous hairs of a contraction canonically so relation
/// systems act on distinguishable labelings.
fn number_js(g: &HalfEdgeGraph) -> HalfEdgeGraph {
    let canon = canonicalize(g, false);
    let mut hs: Vec<(HalfEdgeId, HalfEdgeId)> = g
        .hairs()
        .into_iter()
        .filter(|&h| g.label(h) == Some(HairLabel::J(None)))
        .map(|h| (canon.half_map[h as usize], h))
        .collect();
    hs.sort();
    let mut out = g.clone();
    for (i, &(_, h)) in hs.iter().enumerate() {
        out.set_label(h, HairLabel::J(Some(1 + i as u32)));
    }
    out
}

/// Component-level normalization for weight-2 realizations: canonical key
/// and the sign relative to reference orderings of the real edges and
/// epsilon hairs.
fn normalize_component(
    g: &HalfEdgeGraph,
    ref_edges: &[HalfEdgeId],
    ref_eps: &[HalfEdgeId],
) -> Option<(Vec<u8>, i32)> {
    // Loops on one side of the partition vanish.
    for (a, b) in g.edges() {
        if g.vertex_of(a) == g.vertex_of(b) && !g.is_crossed(a) {
            let v = g.vertex_of(a);
            if g.half_edges_at(v).iter().any(|&h| g.is_crossed(h)) {
                return None;
            }
        }
    }
    let canon = canonicalize(g, false);
    if canon.odd(SignConvention::EdgesAndEps) {
        return None;
    }
    let mapped_edges: Vec<HalfEdgeId> = ref_edges
        .iter()
        .map(|&h| {
            let m = g.mate(h).unwrap();
            canon.half_map[h as usize].min(canon.half_map[m as usize])
        })
        .collect();
    let mapped_eps: Vec<HalfEdgeId> = ref_eps
        .iter()
        .map(|&h| canon.half_map[h as usize])
        .collect();
    Some((canon.key, sort_sign(&mapped_edges) * sort_sign(&mapped_eps)))
}

/// Splits the merged vertex of a numbered contraction back into a crossed
/// pair along the given side.
fn realize_split(h: &HalfEdgeGraph, merged: VertexId, side: &[HalfEdgeId]) -> HalfEdgeGraph {
    let mut g = h.clone();
    let tv2 = g.add_vertex(0);
    for &x in side {
        g.move_half(x, tv2);
    }
    g.add_edge(merged, tv2, true);
    g
}

/// Resolves the weight-2 relations among crossed-edge components: groups
/// by the contraction, computes the local relation span over all split
/// realizations (with hairs distinguished), and keeps the members that
/// contribute basis vectors.
pub fn weight2_resolution(comps: &[CensusComponent]) -> (Vec<Weight2Group>, BTreeMap<Vec<u8>, Removal>) {
    let mut groups: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    for (i, cc) in comps.iter().enumerate() {
        if cc.removal != Removal::Kept || cc.comp.crossed != CrossedKind::Edge {
            continue;
        }
        if let Body::Graph(g) = &cc.comp.body {
            let (contr, _, _) = contract_tracking(g);
            let key = canonicalize(&contr, false).key;
            groups.entry(key).or_default().push(i);
        }
    }
    let mut out_groups = Vec::new();
    let mut removals: BTreeMap<Vec<u8>, Removal> = BTreeMap::new();
    for (ckey, members) in groups {
        // Contraction representative from the first member.
        let g0 = match &comps[members[0]].comp.body {
            Body::Graph(g) => g,
            _ => unreachable!(),
        };
        let (contr, merged, _) = contract_tracking(g0);
        let numbered = number_js(&contr);
        let ground: Vec<HalfEdgeId> = numbered.half_edges_at(merged);
        let ref_edges: Vec<HalfEdgeId> = numbered.real_edges().iter().map(|&(a, _)| a).collect();
        let ref_eps: Vec<HalfEdgeId> = numbered
            .hairs()
            .into_iter()
            .filter(|&h| numbered.label(h) == Some(HairLabel::Epsilon))
            .collect();

        // All splits: sides containing the first ground element.
        let anchor = ground[0];
        let rest: Vec<HalfEdgeId> = ground[1..].to_vec();
        let mut split_terms: BTreeMap<Vec<HalfEdgeId>, Option<(Vec<u8>, i32)>> = BTreeMap::new();
        let mut numbered_to_anon: BTreeMap<Vec<u8>, Vec<u8>> = BTreeMap::new();
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
            let realized = realize_split(&numbered, merged, &side);
            let term = normalize_component(&realized, &ref_edges, &ref_eps);
            if let Some((key, _)) = &term {
                // Anonymous class of this labeled realization.
                let mut anon = realized.clone();
                for h in anon.half_edge_ids() {
                    if matches!(anon.label(h), Some(HairLabel::J(Some(_)))) {
                        anon.set_label(h, HairLabel::J(None));
                    }
                }
                numbered_to_anon.insert(key.clone(), canonicalize(&anon, false).key);
            }
            split_terms.insert(side, term);
        }

        // Column order: labeled keys sorted; relation rows from the psi
        // sums and differences plus the loop pushforward sums.
        let mut columns: Vec<Vec<u8>> = split_terms
            .values()
            .filter_map(|t| t.as_ref().map(|(k, _)| k.clone()))
            .collect();
        columns.sort();
        columns.dedup();
        let col_of = |k: &Vec<u8>| columns.binary_search(k).unwrap();

        let p_sum = |i: HalfEdgeId, others: &[HalfEdgeId]| -> SparseVec {
            let mut v = SparseVec::new();
            for (side, term) in &split_terms {
                let has = |x: HalfEdgeId| side.contains(&x);
                if others.iter().all(|&x| has(x) != has(i)) {
                    if let Some((k, s)) = term {
                        let slot = v.entry(col_of(k)).or_insert_with(Rat::zero);
                        *slot += rat(*s as i64);
                        if slot.is_zero() {
                            v.remove(&col_of(k));
                        }
                    }
                }
            }
            v
        };
        let minus = |mut a: SparseVec, b: &SparseVec| -> SparseVec {
            for (c, x) in b {
                let slot = a.entry(*c).or_insert_with(Rat::zero);
                *slot -= x.clone();
                if slot.is_zero() {
                    a.remove(c);
                }
            }
            a
        };

        let mut rref = Rref::new(columns.len());
        for &i in &ground {
            let pool: Vec<HalfEdgeId> = ground.iter().copied().filter(|&x| x != i).collect();
            let base = p_sum(i, &pool[..2]);
            for a in 0..pool.len() {
                for b in (a + 1)..pool.len() {
                    let v = p_sum(i, &[pool[a], pool[b]]);
                    rref.insert(minus(v, &base));
                }
            }
        }
        for ai in 0..ground.len() {
            for bi in (ai + 1)..ground.len() {
                let (i, j) = (ground[ai], ground[bi]);
                let pool: Vec<HalfEdgeId> =
                    ground.iter().copied().filter(|&x| x != i && x != j).collect();
                if pool.len() < 2 {
                    continue;
                }
                let s = p_sum(i, &[j]);
                let pi = p_sum(i, &[pool[0], pool[1]]);
                let pj = p_sum(j, &[pool[0], pool[1]]);
                rref.insert(minus(minus(s, &pi), &pj));
            }
        }
        // Loop halves must be separated; their joint sum is a relation.
        for (a, b) in numbered.edges() {
            if numbered.vertex_of(a) == merged && numbered.vertex_of(b) == merged {
                rref.insert(p_sum(a, &[b]));
            }
        }

        // A member is kept when at least one of its labeled columns stays
        // independent (non-pivot).
        let pivots: BTreeSet<usize> = rref.pivot_cols().into_iter().collect();
        let mut member_keys: Vec<Vec<u8>> = members
            .iter()
            .map(|&i| comps[i].comp.key.clone())
            .collect();
        member_keys.sort();
        let mut basis = Vec::new();
        let mut zero = Vec::new();
        for mk in &member_keys {
            let cols: Vec<usize> = columns
                .iter()
                .enumerate()
                .filter(|(_, k)| numbered_to_anon.get(*k) == Some(mk))
                .map(|(i, _)| i)
                .collect();
            if cols.is_empty() {
                zero.push(mk.clone());
                removals.insert(mk.clone(), Removal::Weight2Zero);
            } else if cols.iter().all(|c| pivots.contains(c)) {
                removals.insert(mk.clone(), Removal::Weight2Redundant);
            } else {
                basis.push(mk.clone());
            }
        }
        out_groups.push(Weight2Group {
            contraction_key: ckey,
            members: member_keys,
            basis,
            zero,
        });
    }
    (out_groups, removals)
}

/// The full component census with removal flags.
pub fn census_components(max_excess: i64) -> Vec<CensusComponent> {
    let mut out: Vec<CensusComponent> = generate_components(max_excess)
        .into_iter()
        .map(|comp| {
            let removal = if comp.odd {
                Removal::Odd
            } else {
                let (has_loop, a2_omega) = crossed_hair_flags(&comp);
                if has_loop {
                    Removal::LoopAtCrossed
                } else if a2_omega {
                    Removal::OmegaAtCrossedA2
                } else {
                    Removal::Kept
                }
            };
            CensusComponent { comp, removal }
        })
        .collect();
    let (_, w2removals) = weight2_resolution(&out);
    for cc in &mut out {
        if cc.removal == Removal::Kept {
            if let Some(&r) = w2removals.get(&cc.comp.key) {
                cc.removal = r;
            }
        }
    }
    out
}

/// A virtual blown-up representation: the multiset of components of
/// positive excess, exactly one of them crossed.
#[derive(Clone, Debug)]
pub struct VirtualRep {
    pub components: Vec<Component>,
    pub family: Family,
    pub reduced_excess: i64,
    /// `b` with `|E| = b - n` across all completions.
    pub edge_group: i64,
    pub n_virtual: usize,
    pub omega_total: usize,
    pub epsilon_total: usize,
    pub id: u128,
}

pub fn family_of_crossed(c: &Component) -> Family {
    match c.crossed {
        CrossedKind::Loop => Family::Birr,
        CrossedKind::Edge => Family::B1,
        CrossedKind::Hair => {
            let g = match &c.body {
                Body::Graph(g) => g,
                _ => unreachable!("crossed hair needs a vertex"),
            };
            let ch = g
                .half_edge_ids()
                .into_iter()
                .find(|&h| g.is_crossed(h))
                .unwrap();
            if g.valence(g.vertex_of(ch)) == 3 {
                Family::A2
            } else {
                Family::A3
            }
        }
        CrossedKind::None => unreachable!("not a crossed component"),
    }
}

pub fn make_virtual_rep(components: Vec<Component>, reduced_excess: i64) -> VirtualRep {
    let crossed = components
        .iter()
        .find(|c| c.is_crossed())
        .expect("one crossed component");
    let family = family_of_crossed(crossed);
    let omega_total: usize = components.iter().map(|c| c.omega).sum();
    let epsilon_total: usize = components.iter().map(|c| c.epsilon).sum();
    let n_virtual: usize = components.iter().map(|c| c.jays).sum();
    let edge_contrib: usize = components.iter().map(|c| c.edge_contribution()).sum();
    let edge_group = edge_contrib as i64 + 11 - omega_total as i64 + n_virtual as i64;
    let keys: Vec<Vec<u8>> = components.iter().map(|c| c.key.clone()).collect();
    VirtualRep {
        id: content_id(&keys),
        components,
        family,
        reduced_excess,
        edge_group,
        n_virtual,
        omega_total,
        epsilon_total,
    }
}

/// Enumerates multisets of components with the given total excess.
///
/// `crossed_min_excess` is 1 for the census; the full generator
/// enumeration lowers it to 0 to include the redundant crossed shapes.
pub fn multisets(
    comps: &[Component],
    reduced_excess: i64,
    crossed_min_excess: i64,
) -> Vec<Vec<Component>> {
    let crossed: Vec<&Component> = comps
        .iter()
        .filter(|c| c.is_crossed() && c.excess() >= crossed_min_excess)
        .collect();
    let plain: Vec<&Component> = comps
        .iter()
        .filter(|c| !c.is_crossed() && c.excess() >= 1)
        .collect();
    let mut out = Vec::new();
    for cr in crossed {
        let rem = reduced_excess - cr.excess();
        if rem < 0 {
            continue;
        }
        // Multisets of plain components with total excess `rem`.
        fn rec(
            plain: &[&Component],
            from: usize,
            rem: i64,
            cur: &mut Vec<Component>,
            out: &mut Vec<Vec<Component>>,
            base: &Component,
        ) {
            if rem == 0 {
                let mut ms = cur.clone();
                ms.push(base.clone());
                ms.sort();
                out.push(ms);
                return;
            }
            for i in from..plain.len() {
                let c = plain[i];
                if c.excess() > rem {
                    continue;
                }
                if c.duplicate_odd() && cur.last().map(|l| &l.key) == Some(&c.key) {
                    continue;
                }
                cur.push((*c).clone());
                rec(plain, i, rem - c.excess(), cur, out, base);
                cur.pop();
            }
        }
        rec(&plain, 0, rem, &mut Vec::new(), &mut out, cr);
    }
    // Omega budget.
    out.retain(|ms| ms.iter().map(|c| c.omega).sum::<usize>() <= 11);
    out.sort_by(|a, b| {
        let ka: Vec<&Vec<u8>> = a.iter().map(|c| &c.key).collect();
        let kb: Vec<&Vec<u8>> = b.iter().map(|c| &c.key).collect();
        ka.cmp(&kb)
    });
    out.dedup_by(|a, b| {
        a.iter().map(|c| &c.key).eq(b.iter().map(|c| &c.key))
    });
    out
}

/// The census: virtual representations over the basis components.
pub fn generate_virtual_reps(reduced_excess: i64) -> Vec<VirtualRep> {
    let census = census_components(reduced_excess);
    let basis: Vec<Component> = census
        .into_iter()
        .filter(|cc| cc.removal == Removal::Kept)
        .map(|cc| cc.comp)
        .collect();
    multisets(&basis, reduced_excess, 1)
        .into_iter()
        .map(|ms| make_virtual_rep(ms, reduced_excess))
        .filter(|v| !v.existence_range().is_empty())
        .collect()
}

impl VirtualRep {
    /// All `(g, n)` pairs in the excess class where the representation
    /// completes: enough marked points, a nonnegative number of tripods.
    pub fn existence_range(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let spare = 11 - self.omega_total as i64;
        for extra_j in 0.. {
            let tripods3 = spare - extra_j;
            if tripods3 < 0 {
                break;
            }
            if tripods3 % 3 != 0 {
                continue;
            }
            let n = self.n_virtual + extra_j as usize;
            let tripods = (tripods3 / 3) as usize;
            let mut g = 1i64;
            for c in &self.components {
                g += c.genus_contribution();
            }
            g += 2 * tripods as i64;
            // extra omega-j hairs contribute nothing
            if g < 0 {
                continue;
            }
            debug_assert_eq!(3 * g + 2 * n as i64, 25 + self.reduced_excess);
            out.push((g as usize, n));
        }
        out
    }

    /// Completion at `(g, n)`: appends omega-j hairs and tripods.
    pub fn complete(&self, g: usize, n: usize) -> Option<Vec<Component>> {
        if !self.existence_range().contains(&(g, n)) {
            return None;
        }
        let extra_j = n - self.n_virtual;
        let tripods = (11 - self.omega_total - extra_j) / 3;
        let mut comps = self.components.clone();
        for _ in 0..extra_j {
            comps.push(Component::omega_j());
        }
        for _ in 0..tripods {
            comps.push(Component::tripod());
        }
        comps.sort();
        Some(comps)
    }

    /// Grouping key for the weight-11 relations: the multiset of unmarked
    /// templates (ignoring marked points and tripods) plus the total
    /// number of epsilon hairs.
    pub fn weight11_key(&self) -> (Vec<Vec<u8>>, usize) {
        let skip = [
            Component::bare(BareEnd::Omega, BareEnd::J).template_key.clone(),
            Component::tripod().template_key.clone(),
        ];
        let mut keys: Vec<Vec<u8>> = self
            .components
            .iter()
            .filter(|c| !skip.contains(&c.template_key))
            .map(|c| c.template_key.clone())
            .collect();
        keys.sort();
        (keys, self.epsilon_total)
    }

    /// Grouping key for the weight-13 relations (families A2/A3): blow up
    /// at the crossed-partner vertex, marking the freed half-edges omega,
    /// and ignore the excess-zero components.
    pub fn weight13_key(&self) -> Vec<Vec<u8>> {
        let mut keys: Vec<Vec<u8>> = Vec::new();
        for c in &self.components {
            if c.crossed == CrossedKind::Hair {
                keys.extend(a2_blowup_keys(c));
            } else {
                keys.push(c.key.clone());
            }
        }
        let skip = [Component::omega_j().key, Component::tripod().key];
        keys.retain(|k| !skip.contains(k));
        keys.sort();
        keys
    }
}

/// Blows up a crossed-hair component at its crossed vertex: the vertex and
/// its crossed hair disappear, the freed attachments are marked omega, and
/// the connected pieces are returned as component keys.
pub fn a2_blowup_keys(c: &Component) -> Vec<Vec<u8>> {
    let g = match &c.body {
        Body::Graph(g) => g,
        _ => unreachable!("crossed hair needs a vertex"),
    };
    let ch = g
        .half_edge_ids()
        .into_iter()
        .find(|&h| g.is_crossed(h))
        .unwrap();
    let tv = g.vertex_of(ch);
    let mut w = g.clone();
    let mut bare_keys: Vec<Vec<u8>> = Vec::new();
    for h in w.half_edges_at(tv) {
        if h == ch {
            w.delete_hair(h);
            continue;
        }
        match w.mate(h) {
            Some(m) => {
                // Edge into the rest of the component: becomes an omega
                // hair at the far end.
                let far = w.vertex_of(m);
                w.delete_edge(h);
                w.add_hair(far, HairLabel::Omega);
            }
            None => {
                let end = match w.label(h) {
                    Some(HairLabel::J(_)) => BareEnd::J,
                    Some(HairLabel::Omega) => BareEnd::Omega,
                    Some(HairLabel::Epsilon) => BareEnd::Epsilon,
                    _ => unreachable!(),
                };
                bare_keys.push(Component::bare(BareEnd::Omega, end).key);
                w.delete_hair(h);
            }
        }
    }
    w.delete_vertex(tv);
    let (w, _, _) = w.compact();
    let mut keys = bare_keys;
    // Split the remainder into connected components.
    let mut assigned: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut comp_count = 0;
    for v in w.vertex_ids() {
        if assigned.contains_key(&v) {
            continue;
        }
        let mut stack = vec![v];
        assigned.insert(v, comp_count);
        while let Some(x) = stack.pop() {
            for h in w.half_edges_at(x) {
                if let Some(m) = w.mate(h) {
                    let y = w.vertex_of(m);
                    if !assigned.contains_key(&y) {
                        assigned.insert(y, comp_count);
                        stack.push(y);
                    }
                }
            }
        }
        comp_count += 1;
    }
    for piece in 0..comp_count {
        let mut pg = w.clone();
        for v in pg.vertex_ids() {
            if assigned[&v] != piece {
                for h in pg.half_edges_at(v) {
                    if let Some(m) = pg.mate(h) {
                        if pg.is_alive(h) {
                            let _ = m;
                            pg.delete_edge(h);
                        }
                    } else {
                        pg.delete_hair(h);
                    }
                }
                pg.delete_vertex(v);
            }
        }
        let (pg, _, _) = pg.compact();
        keys.push(Component::from_graph(&pg).key);
    }
    keys
}

/// Assembles a full decorated generator from completed components with a
/// numbering of the marked-point slots, in slot order: bare slots first
/// (component order), then graph-component hairs (component order, hair id
/// order).
pub fn assemble(comps: &[Component], labels: &[u32]) -> RawGen {
    let mut g = HalfEdgeGraph::new();
    let bv = g.add_vertex(1);
    let mut b_order: Vec<HalfEdgeId> = Vec::new();
    let mut edge_order: Vec<HalfEdgeId> = Vec::new();
    let mut next_label = 0usize;
    for comp in comps {
        match &comp.body {
            Body::Bare(a, b) => {
                let ends = [*a, *b];
                if ends.contains(&BareEnd::J) {
                    let mark = ends.contains(&BareEnd::Omega);
                    let h = g.add_hair(bv, HairLabel::J(Some(labels[next_label])));
                    next_label += 1;
                    if mark {
                        g.set_marked(h, true);
                        b_order.push(h);
                    }
                } else {
                    let (h1, h2) = g.add_edge(bv, bv, false);
                    edge_order.push(edge_rep(&g, h1));
                    for (h, e) in [(h1, ends[0]), (h2, ends[1])] {
                        if e == BareEnd::Omega {
                            g.set_marked(h, true);
                            b_order.push(h);
                        }
                    }
                }
            }
            Body::Graph(cg) => {
                let base = g.vertex_count() as u32;
                for v in cg.vertex_ids() {
                    g.add_vertex(cg.genus(v));
                    let _ = v;
                }
                // Edges of the component (crossed loops/edges included).
                for (a, b) in cg.edges() {
                    let (na, nb) = (
                        base + cg.vertex_of(a),
                        base + cg.vertex_of(b),
                    );
                    let (h1, _) = g.add_edge(na, nb, cg.is_crossed(a));
                    if !cg.is_crossed(a) {
                        edge_order.push(edge_rep(&g, h1));
                    }
                }
                for h in cg.hairs() {
                    let v = base + cg.vertex_of(h);
                    match cg.label(h) {
                        Some(HairLabel::J(_)) => {
                            g.add_hair(v, HairLabel::J(Some(labels[next_label])));
                            next_label += 1;
                        }
                        Some(HairLabel::Omega) => {
                            if cg.is_crossed(h) {
                                // The crossed edge of the weight-13 class.
                                g.add_edge(bv, v, true);
                            } else {
                                let (h1, h2) = g.add_edge(bv, v, false);
                                let _ = h2;
                                g.set_marked(h1, true);
                                b_order.push(h1);
                                edge_order.push(edge_rep(&g, h1));
                            }
                        }
                        Some(HairLabel::Epsilon) => {
                            let (h1, _) = g.add_edge(bv, v, false);
                            edge_order.push(edge_rep(&g, h1));
                        }
                        other => panic!("unmarked hair in assembly: {:?}", other),
                    }
                }
            }
        }
    }
    assert_eq!(next_label, labels.len(), "label count mismatch");
    RawGen {
        graph: g,
        b_order,
        edge_order,
    }
}

/// Number of marked-point slots of a completed component list.
pub fn label_slots(comps: &[Component]) -> usize {
    comps.iter().map(|c| c.jays).sum()
}

/// Blown-up components of a full generator (marked points anonymized),
/// the inverse of assembly up to isomorphism.
pub fn blowup_components(graph: &HalfEdgeGraph) -> Vec<Component> {
    let bv = graph.genus_one_vertex().expect("genus-one vertex");
    let mut w = graph.clone();
    let mut bares: Vec<Component> = Vec::new();
    for h in w.half_edges_at(bv) {
        if !w.is_alive(h) {
            continue;
        }
        match w.mate(h) {
            None => {
                let mark = if w.is_marked(h) { BareEnd::Omega } else { BareEnd::Epsilon };
                bares.push(Component::bare(mark, BareEnd::J));
                w.delete_hair(h);
            }
            Some(m) => {
                if w.vertex_of(m) == bv {
                    let end = |x: HalfEdgeId| {
                        if w.is_marked(x) {
                            BareEnd::Omega
                        } else {
                            BareEnd::Epsilon
                        }
                    };
                    bares.push(Component::bare(end(h), end(m)));
                    w.delete_edge(h);
                } else {
                    let far = w.vertex_of(m);
                    let label = if w.is_crossed(h) {
                        // Crossed hair on the component side.
                        HairLabel::Omega
                    } else if w.is_marked(h) {
                        HairLabel::Omega
                    } else {
                        HairLabel::Epsilon
                    };
                    let crossed = w.is_crossed(h);
                    w.delete_edge(h);
                    let nh = w.add_hair(far, label);
                    if crossed {
                        w.set_crossed_hair(nh);
                    }
                }
            }
        }
    }
    w.delete_vertex(bv);
    let (w, _, _) = w.compact();
    let mut anon = w.clone();
    for h in anon.half_edge_ids() {
        if matches!(anon.label(h), Some(HairLabel::J(Some(_)))) {
            anon.set_label(h, HairLabel::J(None));
        }
    }
    // Connected pieces.
    let mut out = bares;
    let mut assigned: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut count = 0usize;
    for v in anon.vertex_ids() {
        if assigned.contains_key(&v) {
            continue;
        }
        let mut stack = vec![v];
        assigned.insert(v, count);
        while let Some(x) = stack.pop() {
            for h in anon.half_edges_at(x) {
                if let Some(m) = anon.mate(h) {
                    let y = anon.vertex_of(m);
                    if !assigned.contains_key(&y) {
                        assigned.insert(y, count);
                        stack.push(y);
                    }
                }
            }
        }
        count += 1;
    }
    for piece in 0..count {
        let mut pg = anon.clone();
        for v in pg.vertex_ids() {
            if assigned[&v] != piece {
                for h in pg.half_edges_at(v) {
                    if !pg.is_alive(h) {
                        continue;
                    }
                    if pg.mate(h).is_some() {
                        pg.delete_edge(h);
                    } else {
                        pg.delete_hair(h);
                    }
                }
                pg.delete_vertex(v);
            }
        }
        let (pg, _, _) = pg.compact();
        out.push(Component::from_graph(&pg));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excess_zero_components() {
        let comps = generate_components(0);
        let usable: Vec<&Component> = comps
            .iter()
            .filter(|c| c.excess() == 0 && !c.odd && !c.is_crossed())
            .collect();
        // Exactly the omega-j double hair and the omega tripod.
        assert_eq!(usable.len(), 2);
        let keys: BTreeSet<&Vec<u8>> = usable.iter().map(|c| &c.key).collect();
        assert!(keys.contains(&Component::omega_j().key));
        assert!(keys.contains(&Component::tripod().key));
    }

    #[test]
    fn manual_shapes_present() {
        let comps = generate_components(3);
        let keys: BTreeSet<&Vec<u8>> = comps.iter().map(|c| &c.key).collect();
        assert!(keys.contains(&Component::bare(BareEnd::Omega, BareEnd::Omega).key));
        // Crossed-loop seed.
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(0);
        g.add_edge(v, v, true);
        g.add_hair(v, HairLabel::Omega);
        assert!(keys.contains(&Component::from_graph(&g).key));
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(0);
        g.add_edge(v, v, true);
        g.add_hair(v, HairLabel::Epsilon);
        assert!(keys.contains(&Component::from_graph(&g).key));
    }

    #[test]
    fn existence_range_example() {
        // Crossed component: two vertices joined by an edge; the first has
        // the crossed omega hair and a j hair, the second two omega hairs;
        // plus a j-tripod. This is the shape completing at (4,8), (6,5)
        // and (8,2).
        let mut g = HalfEdgeGraph::new();
        let a = g.add_vertex(0);
        let b = g.add_vertex(0);
        g.add_edge(a, b, false);
        let ch = g.add_hair(a, HairLabel::Omega);
        g.set_crossed_hair(ch);
        g.add_hair(a, HairLabel::J(None));
        g.add_hair(b, HairLabel::Omega);
        g.add_hair(b, HairLabel::Omega);
        let c1 = Component::from_graph(&g);

        let mut t = HalfEdgeGraph::new();
        let v = t.add_vertex(0);
        t.add_hair(v, HairLabel::Omega);
        t.add_hair(v, HairLabel::Omega);
        t.add_hair(v, HairLabel::J(None));
        let c2 = Component::from_graph(&t);

        assert_eq!(c1.excess() + c2.excess(), 3);
        let v = make_virtual_rep(vec![c1, c2], 3);
        assert_eq!(v.existence_range(), vec![(8, 2), (6, 5), (4, 8)]);
        let completion = v.complete(6, 5).unwrap();
        assert_eq!(label_slots(&completion), 5);
        assert!(v.complete(5, 5).is_none());
    }

    #[test]
    fn assembly_round_trip() {
        let reps = generate_virtual_reps(1);
        assert!(!reps.is_empty());
        for rep in reps.iter().take(6) {
            for &(g, n) in rep.existence_range().iter().take(2) {
                let comps = rep.complete(g, n).unwrap();
                let labels: Vec<u32> = (1..=label_slots(&comps) as u32).collect();
                let raw = assemble(&comps, &labels);
                assert!(raw.graph.is_connected());
                assert_eq!(raw.graph.total_genus(), g);
                assert_eq!(raw.graph.j_count(), n);
                let back = blowup_components(&raw.graph);
                let mut orig = comps.clone();
                orig.sort();
                assert_eq!(
                    back.iter().map(|c| &c.key).collect::<Vec<_>>(),
                    orig.iter().map(|c| &c.key).collect::<Vec<_>>()
                );
            }
        }
    }
}
