//! Deterministic canonical forms and automorphism groups.
//!
//! Canonicalization proceeds by iterated color refinement on vertices
//! followed by ordered backtracking over the remaining cells; the minimal
//! encoding over all admissible vertex orderings is the canonical key.
//! Graphs here stay small (at most ~16 vertices), so exhaustive
//! backtracking is within contract.
//!
//! Automorphisms split into vertex-level symmetries (found by the same
//! backtracking) and local half-edge symmetries: permutations of parallel
//! edges, loop flips and permutations of identical hairs. The sign of an
//! automorphism is the parity of its action on the selected feature set,
//! see [`SignConvention`].

use crate::graph::{HairLabel, HalfEdgeGraph, HalfEdgeId, VertexId};
use crate::prelude::*;
use crate::rat::perm_sign;

/// Which features carry the sign of an automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    /// Parity on non-crossed internal edges only.
    Edges,
    /// Parity on non-crossed internal edges times parity on the marked
    /// half-edges (the ordered set `B` of the decoration).
    EdgesAndB,
    /// Parity on internal edges plus epsilon hairs; the blown-up shortcut
    /// where the sign on omega labels cancels.
    EdgesAndEps,
}

/// A structure-preserving bijection, stored as image maps on vertex and
/// half-edge indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphIso {
    pub vertex_map: Vec<VertexId>,
    pub half_map: Vec<HalfEdgeId>,
}

impl GraphIso {
    pub fn identity(g: &HalfEdgeGraph) -> Self {
        GraphIso {
            vertex_map: (0..g.vertex_count() as u32).collect(),
            half_map: (0..g.half_edge_ids().len() as u32).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &v)| i as u32 == v)
            && self.half_map.iter().enumerate().all(|(i, &h)| i as u32 == h)
    }
}

/// Result of canonicalization.
#[derive(Clone, Debug)]
pub struct Canonical {
    /// Byte encoding; equal exactly for isomorphic inputs.
    pub key: Vec<u8>,
    /// Input vertex index to canonical position.
    pub vertex_map: Vec<VertexId>,
    /// Input half-edge index to canonical half-edge index.
    pub half_map: Vec<HalfEdgeId>,
    /// The canonical representative.
    pub graph: HalfEdgeGraph,
    /// Automorphism group order (vertex symmetries times local factors).
    pub aut_order: u128,
    /// Generating automorphisms of the input graph.
    pub generators: Vec<GraphIso>,
    pub odd_edges: bool,
    pub odd_edges_b: bool,
    pub odd_edges_eps: bool,
}

impl Canonical {
    pub fn odd(&self, conv: SignConvention) -> bool {
        match conv {
            SignConvention::Edges => self.odd_edges,
            SignConvention::EdgesAndB => self.odd_edges_b,
            SignConvention::EdgesAndEps => self.odd_edges_eps,
        }
    }
}

/// Sign of a half-edge permutation of `g` under the given convention.
pub fn sign_of(g: &HalfEdgeGraph, half_perm: &[HalfEdgeId], conv: SignConvention) -> i32 {
    let mut sign = edge_parity(g, half_perm);
    match conv {
        SignConvention::Edges => {}
        SignConvention::EdgesAndB => sign *= restricted_parity(g, half_perm, |g, h| g.is_marked(h)),
        SignConvention::EdgesAndEps => {
            sign *= restricted_parity(g, half_perm, |g, h| {
                g.label(h) == Some(HairLabel::Epsilon)
            })
        }
    }
    sign
}

fn edge_parity(g: &HalfEdgeGraph, half_perm: &[HalfEdgeId]) -> i32 {
    let edges = g.real_edges();
    let mut index: BTreeMap<HalfEdgeId, usize> = BTreeMap::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        index.insert(a, i);
        index.insert(b, i);
    }
    let mut perm = vec![0usize; edges.len()];
    for (i, &(a, _)) in edges.iter().enumerate() {
        perm[i] = index[&half_perm[a as usize]];
    }
    perm_sign(&perm)
}

fn restricted_parity<F: Fn(&HalfEdgeGraph, HalfEdgeId) -> bool>(
    g: &HalfEdgeGraph,
    half_perm: &[HalfEdgeId],
    pred: F,
) -> i32 {
    let members: Vec<HalfEdgeId> = g.half_edge_ids().into_iter().filter(|&h| pred(g, h)).collect();
    let mut pos: BTreeMap<HalfEdgeId, usize> = BTreeMap::new();
    for (i, &h) in members.iter().enumerate() {
        pos.insert(h, i);
    }
    let mut perm = vec![0usize; members.len()];
    for (i, &h) in members.iter().enumerate() {
        perm[i] = pos[&half_perm[h as usize]];
    }
    perm_sign(&perm)
}

/// Descriptor of a half-edge that is invariant under automorphisms once
/// vertex colors are stable. Neighbor color comes last so that descriptors
/// sort hairs before edges of equal flags.
type Descriptor = (u8, u32, u8, u8, u8, u32);

fn descriptor(g: &HalfEdgeGraph, colors: &[u32], h: HalfEdgeId, fix_anon_j: bool) -> Descriptor {
    match g.mate(h) {
        None => {
            let label = g.label(h).expect("hair without label");
            let code = if fix_anon_j && label == HairLabel::J(None) {
                1_000_000 + h
            } else {
                label.code()
            };
            (
                0,
                code,
                g.is_crossed(h) as u8,
                g.is_marked(h) as u8,
                0,
                0,
            )
        }
        Some(m) => (
            1,
            if g.vertex_of(m) == g.vertex_of(h) { 1 } else { 0 },
            g.is_crossed(h) as u8,
            g.is_marked(h) as u8,
            g.is_marked(m) as u8,
            colors[g.vertex_of(m) as usize],
        ),
    }
}

fn refine(g: &HalfEdgeGraph, colors: &mut Vec<u32>, fix_anon_j: bool) {
    loop {
        let verts = g.vertex_ids();
        let mut sigs: Vec<(u32, Vec<Descriptor>)> = Vec::with_capacity(verts.len());
        for &v in &verts {
            let mut local: Vec<Descriptor> = g
                .half_edges_at(v)
                .into_iter()
                .map(|h| descriptor(g, colors, h, fix_anon_j))
                .collect();
            local.sort();
            sigs.push((colors[v as usize], local));
        }
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let mut next = vec![0u32; colors.len()];
        for (i, &v) in verts.iter().enumerate() {
            next[v as usize] = sorted.binary_search(&sigs[i]).unwrap() as u32;
        }
        if next == *colors {
            return;
        }
        *colors = next;
    }
}

fn initial_colors(g: &HalfEdgeGraph, fix_anon_j: bool) -> Vec<u32> {
    let verts = g.vertex_ids();
    let mut sigs: Vec<(u8, usize, Vec<Descriptor>)> = Vec::new();
    let zero = vec![0u32; g.vertex_count()];
    for &v in &verts {
        let mut local: Vec<Descriptor> = g
            .half_edges_at(v)
            .into_iter()
            .map(|h| descriptor(g, &zero, h, fix_anon_j))
            .collect();
        local.sort();
        sigs.push((g.genus(v), local.len(), local));
    }
    let mut sorted = sigs.clone();
    sorted.sort();
    sorted.dedup();
    let mut colors = vec![0u32; g.vertex_count()];
    for (i, &v) in verts.iter().enumerate() {
        colors[v as usize] = sorted.binary_search(&sigs[i]).unwrap() as u32;
    }
    let mut colors = colors;
    refine(g, &mut colors, fix_anon_j);
    colors
}

fn encode(g: &HalfEdgeGraph, pos: &[u32], fix_anon_j: bool) -> Vec<u32> {
    let mut order: Vec<VertexId> = g.vertex_ids();
    order.sort_by_key(|&v| pos[v as usize]);
    let mut out: Vec<u32> = Vec::new();
    for &v in &order {
        out.push(u32::MAX); // vertex separator
        out.push(g.genus(v) as u32);
        // Positions play the role of colors, so the neighbor slot of each
        // descriptor is the neighbor's canonical position.
        let mut local: Vec<Descriptor> = g
            .half_edges_at(v)
            .into_iter()
            .map(|h| {
                let mut d = descriptor(g, pos, h, fix_anon_j);
                if g.mate(h).is_none() {
                    d.5 = 0;
                }
                d
            })
            .collect();
        local.sort();
        for d in local {
            out.push(d.0 as u32);
            out.push(d.1);
            out.push(((d.2 as u32) << 2) | ((d.3 as u32) << 1) | d.4 as u32);
            out.push(d.5);
        }
    }
    out
}

fn search(
    g: &HalfEdgeGraph,
    colors: &[u32],
    fix_anon_j: bool,
    best: &mut Option<Vec<u32>>,
    winners: &mut Vec<Vec<u32>>,
) {
    // Cells by color; find the first with more than one member.
    let verts = g.vertex_ids();
    let mut cells: BTreeMap<u32, Vec<VertexId>> = BTreeMap::new();
    for &v in &verts {
        cells.entry(colors[v as usize]).or_default().push(v);
    }
    let target = cells.values().find(|c| c.len() > 1).cloned();
    match target {
        None => {
            // Discrete: positions equal colors (all distinct).
            let pos: Vec<u32> = colors.to_vec();
            let enc = encode(g, &pos, fix_anon_j);
            match best {
                Some(b) if enc > *b => {}
                Some(b) if enc == *b => winners.push(pos),
                _ => {
                    *best = Some(enc);
                    winners.clear();
                    winners.push(pos);
                }
            }
        }
        Some(cell) => {
            for &v in &cell {
                let mut next: Vec<u32> = colors.iter().map(|&c| c * 2 + 1).collect();
                next[v as usize] = colors[v as usize] * 2;
                refine(g, &mut next, fix_anon_j);
                search(g, &next, fix_anon_j, best, winners);
            }
        }
    }
}

/// Extends a vertex automorphism to the half-edges, preserving pairing,
/// labels, flags and marks. Within classes of interchangeable half-edges
/// the extension is greedy; the ambiguity is exactly the local symmetry
/// group, which is handled separately.
fn extend_vertex_auto(
    g: &HalfEdgeGraph,
    colors: &[u32],
    vmap: &[VertexId],
    fix_anon_j: bool,
) -> Vec<HalfEdgeId> {
    let nh = g.half_edge_ids().len();
    let mut half_map: Vec<Option<HalfEdgeId>> = vec![None; nh];
    let mut used: Vec<bool> = vec![false; nh];
    // Hairs first.
    for h in g.hairs() {
        let v = g.vertex_of(h);
        let target_v = vmap[v as usize];
        let d = descriptor(g, colors, h, fix_anon_j);
        let cand = g
            .half_edges_at(target_v)
            .into_iter()
            .find(|&x| {
                g.mate(x).is_none()
                    && !used[x as usize]
                    && descriptor(g, colors, x, fix_anon_j) == d
            })
            .expect("hair class mismatch");
        half_map[h as usize] = Some(cand);
        used[cand as usize] = true;
    }
    // Edges, matching both endpoints at once.
    for (a, b) in g.edges() {
        let (va, vb) = (g.vertex_of(a), g.vertex_of(b));
        let (ta, tb) = (vmap[va as usize], vmap[vb as usize]);
        let da = descriptor(g, colors, a, fix_anon_j);
        let db = descriptor(g, colors, b, fix_anon_j);
        let mut found = None;
        for x in g.half_edges_at(ta) {
            if used[x as usize] {
                continue;
            }
            let m = match g.mate(x) {
                Some(m) => m,
                None => continue,
            };
            if used[m as usize] || g.vertex_of(m) != tb {
                continue;
            }
            if descriptor(g, colors, x, fix_anon_j) == da
                && descriptor(g, colors, m, fix_anon_j) == db
            {
                found = Some((x, m));
                break;
            }
        }
        let (x, m) = found.expect("edge class mismatch");
        half_map[a as usize] = Some(x);
        half_map[b as usize] = Some(m);
        used[x as usize] = true;
        used[m as usize] = true;
    }
    half_map.into_iter().map(|h| h.expect("total")).collect()
}

/// Local half-edge symmetry generators at fixed vertices: swaps of
/// identical hairs, swaps of parallel edges with identical flag patterns,
/// and loop flips. Returns the generators together with the order of the
/// group they generate.
fn local_generators(
    g: &HalfEdgeGraph,
    colors: &[u32],
    fix_anon_j: bool,
) -> (Vec<Vec<HalfEdgeId>>, u128) {
    let nh = g.half_edge_ids().len();
    let identity: Vec<HalfEdgeId> = (0..nh as u32).collect();
    let mut gens: Vec<Vec<HalfEdgeId>> = Vec::new();
    let mut order: u128 = 1;
    let factorial = |k: usize| -> u128 { (1..=k as u128).product() };

    for v in g.vertex_ids() {
        // Identical hairs.
        let mut classes: BTreeMap<Descriptor, Vec<HalfEdgeId>> = BTreeMap::new();
        for h in g.half_edges_at(v) {
            if g.mate(h).is_none() {
                classes
                    .entry(descriptor(g, colors, h, fix_anon_j))
                    .or_default()
                    .push(h);
            }
        }
        for class in classes.values() {
            if class.len() >= 2 {
                order *= factorial(class.len());
                let mut p = identity.clone();
                p[class[0] as usize] = class[1];
                p[class[1] as usize] = class[0];
                gens.push(p);
            }
        }
    }
    // Parallel edges: group by endpoints and the descriptor pair.
    let mut par: BTreeMap<(VertexId, VertexId, Descriptor, Descriptor), Vec<(HalfEdgeId, HalfEdgeId)>> =
        BTreeMap::new();
    for (a, b) in g.edges() {
        let (va, vb) = (g.vertex_of(a), g.vertex_of(b));
        let (da, db) = (
            descriptor(g, colors, a, fix_anon_j),
            descriptor(g, colors, b, fix_anon_j),
        );
        // Orient the edge canonically so parallel copies collide.
        let key = if (va, da) <= (vb, db) {
            (va, vb, da, db)
        } else {
            (vb, va, db, da)
        };
        let pair = if (va, da) <= (vb, db) { (a, b) } else { (b, a) };
        par.entry(key).or_default().push(pair);
    }
    for class in par.values() {
        if class.len() >= 2 {
            order *= factorial(class.len());
            let (a1, b1) = class[0];
            let (a2, b2) = class[1];
            let mut p = identity.clone();
            p[a1 as usize] = a2;
            p[a2 as usize] = a1;
            p[b1 as usize] = b2;
            p[b2 as usize] = b1;
            gens.push(p);
        }
    }
    // Loop flips.
    for (a, b) in g.edges() {
        if g.vertex_of(a) == g.vertex_of(b)
            && descriptor(g, colors, a, fix_anon_j) == descriptor(g, colors, b, fix_anon_j)
        {
            order *= 2;
            let mut p = identity.clone();
            p[a as usize] = b;
            p[b as usize] = a;
            gens.push(p);
        }
    }
    (gens, order)
}

/// Canonicalizes a compact graph.
///
/// `fix_anon_j` treats each anonymous `j` hair as an individually fixed
/// point (useful only for automorphism queries); the default for canonical
/// keys is `false`, letting anonymous hairs permute.
pub fn canonicalize(g: &HalfEdgeGraph, fix_anon_j: bool) -> Canonical {
    let nv = g.vertex_count();
    let nh = g.half_edge_ids().len();
    debug_assert_eq!(g.vertex_ids().last().map(|&v| v as usize + 1).unwrap_or(0), nv);
    debug_assert_eq!(g.half_edge_ids().last().map(|&h| h as usize + 1).unwrap_or(0), nh);

    let colors = initial_colors(g, fix_anon_j);
    let mut best: Option<Vec<u32>> = None;
    let mut winners: Vec<Vec<u32>> = Vec::new();
    search(g, &colors, fix_anon_j, &mut best, &mut winners);
    let best_enc = best.expect("nonempty graph");

    // Canonical maps from the first winner.
    let pos0 = winners[0].clone();
    let half_map0 = canonical_half_map(g, &pos0);
    let canonical_graph = g.permuted(&pos0, &half_map0);

    // Vertex-level automorphisms: winner_i relative to winner_0.
    let mut vertex_autos: Vec<Vec<VertexId>> = Vec::new();
    for w in &winners {
        // sigma = pos0^{-1} . w : input vertex -> input vertex.
        let mut inv0 = vec![0u32; nv];
        for v in 0..nv {
            inv0[pos0[v] as usize] = v as u32;
        }
        let sigma: Vec<VertexId> = (0..nv).map(|v| inv0[w[v] as usize]).collect();
        vertex_autos.push(sigma);
    }

    let (local_gens, local_order) = local_generators(g, &colors, fix_anon_j);
    let aut_order = winners.len() as u128 * local_order;

    let mut generators: Vec<GraphIso> = Vec::new();
    let mut odd = [false, false, false];
    for sigma in &vertex_autos {
        let hperm = extend_vertex_auto(g, &colors, sigma, fix_anon_j);
        record_odd(g, &hperm, &mut odd);
        if !(sigma.iter().enumerate().all(|(i, &v)| i as u32 == v) && hperm.iter().enumerate().all(|(i, &h)| i as u32 == h)) {
            generators.push(GraphIso {
                vertex_map: sigma.clone(),
                half_map: hperm,
            });
        }
    }
    for p in &local_gens {
        record_odd(g, p, &mut odd);
        generators.push(GraphIso {
            vertex_map: (0..nv as u32).collect(),
            half_map: p.clone(),
        });
    }

    Canonical {
        key: encode_bytes(&best_enc),
        vertex_map: pos0,
        half_map: half_map0,
        graph: canonical_graph,
        aut_order,
        generators,
        odd_edges: odd[0],
        odd_edges_b: odd[1],
        odd_edges_eps: odd[2],
    }
}

fn record_odd(g: &HalfEdgeGraph, hperm: &[HalfEdgeId], odd: &mut [bool; 3]) {
    if sign_of(g, hperm, SignConvention::Edges) < 0 {
        odd[0] = true;
    }
    if sign_of(g, hperm, SignConvention::EdgesAndB) < 0 {
        odd[1] = true;
    }
    if sign_of(g, hperm, SignConvention::EdgesAndEps) < 0 {
        odd[2] = true;
    }
}

fn encode_bytes(enc: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(enc.len() * 4);
    for &x in enc {
        out.extend_from_slice(&x.to_le_bytes());
    }
    out
}

/// Half-edge canonical indices given final vertex positions: traverse
/// vertices in position order, half-edges sorted by descriptor. Within a
/// descriptor tie the assignment is mate-aware, so the pairing of the
/// canonical representative does not depend on the input presentation:
/// halves whose mate is already placed follow the mate order, loop pairs
/// are laid out consecutively, and only whole interchangeable families
/// (parallel edges, loop flips, equal hairs) remain ambiguous — those
/// differences are automorphisms and their signs are accounted separately.
fn canonical_half_map(g: &HalfEdgeGraph, pos: &[u32]) -> Vec<HalfEdgeId> {
    let mut order: Vec<VertexId> = g.vertex_ids();
    order.sort_by_key(|&v| pos[v as usize]);
    let nh = g.half_edge_ids().len();
    let mut map: Vec<Option<u32>> = vec![None; nh];
    let mut next = 0u32;
    for &v in &order {
        let mut classes: BTreeMap<Descriptor, Vec<HalfEdgeId>> = BTreeMap::new();
        for h in g.half_edges_at(v) {
            let mut d = descriptor(g, pos, h, false);
            if g.mate(h).is_none() {
                d.5 = 0;
            }
            classes.entry(d).or_default().push(h);
        }
        for members in classes.values() {
            // Halves with placed mates come first, ordered by mate index.
            let mut placed: Vec<(u32, HalfEdgeId)> = Vec::new();
            let mut loops: Vec<HalfEdgeId> = Vec::new();
            let mut free: Vec<HalfEdgeId> = Vec::new();
            for &h in members {
                match g.mate(h) {
                    Some(m) if map[m as usize].is_some() => {
                        placed.push((map[m as usize].unwrap(), h))
                    }
                    Some(m) if g.vertex_of(m) == v && members.contains(&m) => loops.push(h),
                    _ => free.push(h),
                }
            }
            placed.sort();
            for (_, h) in placed {
                map[h as usize] = Some(next);
                next += 1;
            }
            // Loop pairs inside the class: consecutive ids per loop.
            let mut seen: BTreeSet<HalfEdgeId> = BTreeSet::new();
            let mut pairs: Vec<(HalfEdgeId, HalfEdgeId)> = Vec::new();
            for &h in &loops {
                if seen.contains(&h) {
                    continue;
                }
                let m = g.mate(h).unwrap();
                seen.insert(h);
                seen.insert(m);
                pairs.push((h.min(m), h.max(m)));
            }
            pairs.sort();
            for (a, b) in pairs {
                map[a as usize] = Some(next);
                next += 1;
                map[b as usize] = Some(next);
                next += 1;
            }
            for h in free {
                map[h as usize] = Some(next);
                next += 1;
            }
        }
    }
    map.into_iter().map(|m| m.expect("total")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::HairLabel::*;

    fn omega_tripod() -> HalfEdgeGraph {
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(0);
        g.add_hair(v, Omega);
        g.add_hair(v, Omega);
        g.add_hair(v, Omega);
        g
    }

    #[test]
    fn tripod_automorphisms() {
        let c = canonicalize(&omega_tripod(), false);
        assert_eq!(c.aut_order, 6);
        assert!(!c.odd_edges);
        assert!(!c.odd_edges_eps);
    }

    #[test]
    fn hair_permuted_tripods_share_keys() {
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(0);
        g.add_hair(v, Omega);
        g.add_hair(v, Epsilon);
        g.add_hair(v, Omega);
        let mut h = HalfEdgeGraph::new();
        let w = h.add_vertex(0);
        h.add_hair(w, Epsilon);
        h.add_hair(w, Omega);
        h.add_hair(w, Omega);
        assert_eq!(canonicalize(&g, false).key, canonicalize(&h, false).key);
        assert_ne!(
            canonicalize(&g, false).key,
            canonicalize(&omega_tripod(), false).key
        );
    }

    #[test]
    fn numbered_j_kills_symmetry() {
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(0);
        g.add_hair(v, Omega);
        g.add_hair(v, J(Some(1)));
        let c = canonicalize(&g, false);
        assert_eq!(c.aut_order, 1);
    }

    #[test]
    fn theta_graph_group() {
        let mut g = HalfEdgeGraph::new();
        let a = g.add_vertex(0);
        let b = g.add_vertex(0);
        g.add_edge(a, b, false);
        g.add_edge(a, b, false);
        g.add_edge(a, b, false);
        let c = canonicalize(&g, false);
        // 2 vertex swaps times 3! edge permutations.
        assert_eq!(c.aut_order, 12);
        // Transposing two of the three parallel edges is odd.
        assert!(c.odd_edges);
    }

    #[test]
    fn epsilon_pair_is_odd_in_component_convention() {
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(0);
        g.add_hair(v, Epsilon);
        g.add_hair(v, Epsilon);
        g.add_hair(v, Omega);
        let c = canonicalize(&g, false);
        assert!(c.odd_edges_eps);
        assert!(!c.odd_edges);
    }

    #[test]
    fn loop_flip_with_marks_is_odd_in_b_convention() {
        // A loop at the genus-one vertex with both half-edges in B.
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(1);
        let (h1, h2) = g.add_edge(v, v, false);
        g.set_marked(h1, true);
        g.set_marked(h2, true);
        let c = canonicalize(&g, false);
        assert!(c.odd_edges_b);
        assert!(!c.odd_edges);
    }

    #[test]
    fn relabeled_copies_share_keys() {
        // A labeled path with distinct hair numbers: all vertex orderings
        // of the input must produce one canonical key.
        let mut g = HalfEdgeGraph::new();
        let a = g.add_vertex(0);
        let b = g.add_vertex(0);
        let c3 = g.add_vertex(0);
        g.add_edge(a, b, false);
        g.add_edge(b, c3, false);
        g.add_hair(a, J(Some(1)));
        g.add_hair(a, J(Some(2)));
        g.add_hair(b, J(Some(3)));
        g.add_hair(c3, J(Some(4)));
        g.add_hair(c3, J(Some(5)));
        let base = canonicalize(&g, false).key;
        let perms3: [[u32; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut keys = BTreeSet::new();
        for vm in perms3 {
            let hm: Vec<u32> = (0..9).collect();
            let mut moved = g.clone();
            // move half-edges onto permuted vertices
            for h in g.half_edge_ids() {
                moved.move_half(h, vm[g.vertex_of(h) as usize]);
            }
            let _ = hm;
            keys.insert(canonicalize(&moved, false).key);
        }
        assert_eq!(keys.len(), 1);
        assert!(keys.contains(&base));
    }

    #[test]
    fn identity_sign_is_positive() {
        let g = omega_tripod();
        let id: Vec<u32> = (0..3).collect();
        assert_eq!(sign_of(&g, &id, SignConvention::Edges), 1);
        assert_eq!(sign_of(&g, &id, SignConvention::EdgesAndB), 1);
        assert_eq!(sign_of(&g, &id, SignConvention::EdgesAndEps), 1);
    }
}
