//! Half-edge multigraphs with genus labels, labeled hairs and crossed
//! features.
//!
//! A graph is a set of vertices carrying a genus, and a set of half-edges
//! each incident to one vertex. Two half-edges may be paired into an
//! internal edge (loops pair two half-edges at the same vertex); an
//! unpaired half-edge is a hair and carries a label. Edges and hairs can be
//! flagged as crossed, and half-edges can carry a mark (the arrow drawn on
//! hairs belonging to the set `B` of a decoration).

use crate::prelude::*;

pub type VertexId = u32;
pub type HalfEdgeId = u32;

/// Label on an unpaired half-edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum HairLabel {
    /// Marked point of the curve; `None` while anonymous, `Some(k)` once
    /// numbered by `k` in `1..=n`.
    J(Option<u32>),
    /// Edge to the deleted genus-one vertex, inside `B`.
    Omega,
    /// Edge to the deleted genus-one vertex, outside `B`.
    Epsilon,
    /// Unmarked template label, to be turned into omega or epsilon.
    U,
}

impl HairLabel {
    /// Compact code used by canonical encodings.
    pub fn code(&self) -> u32 {
        match self {
            HairLabel::J(None) => 1,
            HairLabel::J(Some(k)) => 8 + *k,
            HairLabel::Omega => 2,
            HairLabel::Epsilon => 3,
            HairLabel::U => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct HalfEdge {
    vertex: VertexId,
    mate: Option<HalfEdgeId>,
    label: Option<HairLabel>,
    crossed: bool,
    marked: bool,
    alive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Vertex {
    genus: u8,
    alive: bool,
}

/// Mutable half-edge multigraph. See the module docs for the model.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HalfEdgeGraph {
    vertices: Vec<Vertex>,
    halves: Vec<HalfEdge>,
}

/// Validation failures; the reason names the violated rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Valence(VertexId),
    Connectivity,
    LoopAtPlainVertex(VertexId),
    MultipleCrossings,
    GenusAtComponentVertex(VertexId),
    NoCrossedEdge,
}

/// Validation mode: a full stable graph or a single blown-up component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidateMode {
    StableGraph,
    BlownComponent,
}

impl HalfEdgeGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, genus: u8) -> VertexId {
        self.vertices.push(Vertex { genus, alive: true });
        (self.vertices.len() - 1) as VertexId
    }

    pub fn add_hair(&mut self, v: VertexId, label: HairLabel) -> HalfEdgeId {
        self.halves.push(HalfEdge {
            vertex: v,
            mate: None,
            label: Some(label),
            crossed: false,
            marked: false,
            alive: true,
        });
        (self.halves.len() - 1) as HalfEdgeId
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, crossed: bool) -> (HalfEdgeId, HalfEdgeId) {
        let a = self.halves.len() as HalfEdgeId;
        let b = a + 1;
        self.halves.push(HalfEdge {
            vertex: u,
            mate: Some(b),
            label: None,
            crossed,
            marked: false,
            alive: true,
        });
        self.halves.push(HalfEdge {
            vertex: v,
            mate: Some(a),
            label: None,
            crossed,
            marked: false,
            alive: true,
        });
        (a, b)
    }

    pub fn set_marked(&mut self, h: HalfEdgeId, marked: bool) {
        self.halves[h as usize].marked = marked;
    }

    pub fn set_crossed_hair(&mut self, h: HalfEdgeId) {
        debug_assert!(self.halves[h as usize].mate.is_none());
        self.halves[h as usize].crossed = true;
    }

    pub fn set_label(&mut self, h: HalfEdgeId, label: HairLabel) {
        debug_assert!(self.halves[h as usize].mate.is_none());
        self.halves[h as usize].label = Some(label);
    }

    /// Moves a half-edge to another vertex (vertex surgery for splittings).
    pub fn move_half(&mut self, h: HalfEdgeId, to: VertexId) {
        self.halves[h as usize].vertex = to;
    }

    /// Removes an edge together with its mate (tombstoned until `compact`).
    pub fn delete_edge(&mut self, h: HalfEdgeId) {
        let m = self.halves[h as usize].mate.expect("not an edge half");
        self.halves[h as usize].alive = false;
        self.halves[m as usize].alive = false;
    }

    pub fn delete_vertex(&mut self, v: VertexId) {
        debug_assert!(self.half_edges_at(v).is_empty());
        self.vertices[v as usize].alive = false;
    }

    pub fn delete_hair(&mut self, h: HalfEdgeId) {
        debug_assert!(self.halves[h as usize].mate.is_none());
        self.halves[h as usize].alive = false;
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.alive).count()
    }

    pub fn vertex_ids(&self) -> Vec<VertexId> {
        (0..self.vertices.len() as VertexId)
            .filter(|&v| self.vertices[v as usize].alive)
            .collect()
    }

    pub fn half_edge_ids(&self) -> Vec<HalfEdgeId> {
        (0..self.halves.len() as HalfEdgeId)
            .filter(|&h| self.halves[h as usize].alive)
            .collect()
    }

    pub fn genus(&self, v: VertexId) -> u8 {
        self.vertices[v as usize].genus
    }

    pub fn set_genus(&mut self, v: VertexId, genus: u8) {
        self.vertices[v as usize].genus = genus;
    }

    pub fn vertex_of(&self, h: HalfEdgeId) -> VertexId {
        self.halves[h as usize].vertex
    }

    pub fn mate(&self, h: HalfEdgeId) -> Option<HalfEdgeId> {
        self.halves[h as usize].mate
    }

    pub fn label(&self, h: HalfEdgeId) -> Option<HairLabel> {
        self.halves[h as usize].label
    }

    pub fn is_crossed(&self, h: HalfEdgeId) -> bool {
        self.halves[h as usize].crossed
    }

    pub fn is_marked(&self, h: HalfEdgeId) -> bool {
        self.halves[h as usize].marked
    }

    pub fn is_alive(&self, h: HalfEdgeId) -> bool {
        self.halves[h as usize].alive
    }

    pub fn is_loop(&self, h: HalfEdgeId) -> bool {
        match self.halves[h as usize].mate {
            Some(m) => self.halves[m as usize].vertex == self.halves[h as usize].vertex,
            None => false,
        }
    }

    /// Half-edges incident to `v`, in id order.
    pub fn half_edges_at(&self, v: VertexId) -> Vec<HalfEdgeId> {
        (0..self.halves.len() as HalfEdgeId)
            .filter(|&h| {
                let he = &self.halves[h as usize];
                he.alive && he.vertex == v
            })
            .collect()
    }

    pub fn valence(&self, v: VertexId) -> usize {
        self.half_edges_at(v).len()
    }

    /// Internal edges as pairs `(h, mate)` with `h < mate`, in id order.
    pub fn edges(&self) -> Vec<(HalfEdgeId, HalfEdgeId)> {
        let mut out = Vec::new();
        for h in self.half_edge_ids() {
            if let Some(m) = self.mate(h) {
                if h < m {
                    out.push((h, m));
                }
            }
        }
        out
    }

    /// Non-crossed internal edges; these are the real edges of the stable
    /// graph and the only ones carrying degree and ordering signs.
    pub fn real_edges(&self) -> Vec<(HalfEdgeId, HalfEdgeId)> {
        self.edges()
            .into_iter()
            .filter(|&(h, _)| !self.is_crossed(h))
            .collect()
    }

    pub fn hairs(&self) -> Vec<HalfEdgeId> {
        self.half_edge_ids()
            .into_iter()
            .filter(|&h| self.mate(h).is_none())
            .collect()
    }

    /// Number of numbered or anonymous marked points.
    pub fn j_count(&self) -> usize {
        self.hairs()
            .iter()
            .filter(|&&h| matches!(self.label(h), Some(HairLabel::J(_))))
            .count()
    }

    pub fn hairs_with_label(&self, label: HairLabel) -> Vec<HalfEdgeId> {
        self.hairs()
            .into_iter()
            .filter(|&h| self.label(h) == Some(label))
            .collect()
    }

    /// First Betti number, counting crossed edges and loops as edges.
    pub fn betti(&self) -> usize {
        let e = self.edges().len();
        let v = self.vertex_count();
        let c = self.component_count();
        e + c - v
    }

    /// Total genus of the depicted graph: vertex genera plus the Betti
    /// number with crossed features counted. This equals the genus of the
    /// underlying stable graph for all four decoration families.
    pub fn total_genus(&self) -> usize {
        let labels: usize = self.vertex_ids().iter().map(|&v| self.genus(v) as usize).sum();
        labels + self.betti()
    }

    pub fn component_count(&self) -> usize {
        let verts = self.vertex_ids();
        if verts.is_empty() {
            return 0;
        }
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut count = 0;
        for &start in &verts {
            if seen.contains(&start) {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                for h in self.half_edges_at(v) {
                    if let Some(m) = self.mate(h) {
                        let w = self.vertex_of(m);
                        if seen.insert(w) {
                            stack.push(w);
                        }
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Crossed features: crossed edges (counted once) and crossed hairs.
    pub fn crossed_features(&self) -> usize {
        let mut count = 0;
        for h in self.half_edge_ids() {
            if self.is_crossed(h) {
                match self.mate(h) {
                    Some(m) if h > m => {}
                    _ => count += 1,
                }
            }
        }
        count
    }

    /// The unique genus-one vertex of a full decorated graph, if any.
    pub fn genus_one_vertex(&self) -> Option<VertexId> {
        let mut found = None;
        for v in self.vertex_ids() {
            if self.genus(v) >= 1 {
                if found.is_some() {
                    return None;
                }
                found = Some(v);
            }
        }
        found
    }

    /// Whether `v` is special: positive genus or incident to a crossing.
    pub fn is_special(&self, v: VertexId) -> bool {
        self.genus(v) >= 1 || self.half_edges_at(v).iter().any(|&h| self.is_crossed(h))
    }

    pub fn validate(&self, mode: ValidateMode) -> Result<(), Violation> {
        if !self.is_connected() {
            return Err(Violation::Connectivity);
        }
        if self.crossed_features() > 1 {
            return Err(Violation::MultipleCrossings);
        }
        match mode {
            ValidateMode::StableGraph => {
                for v in self.vertex_ids() {
                    if self.is_special(v) {
                        continue;
                    }
                    if self.valence(v) < 3 {
                        return Err(Violation::Valence(v));
                    }
                    if self.half_edges_at(v).iter().any(|&h| self.is_loop(h)) {
                        return Err(Violation::LoopAtPlainVertex(v));
                    }
                }
            }
            ValidateMode::BlownComponent => {
                for v in self.vertex_ids() {
                    if self.genus(v) != 0 {
                        return Err(Violation::GenusAtComponentVertex(v));
                    }
                    if self.valence(v) < 3 {
                        return Err(Violation::Valence(v));
                    }
                }
            }
        }
        Ok(())
    }

    /// Contracts the crossed internal edge, merging its endpoints.
    ///
    /// Fails when the crossed feature is absent, a hair or a loop.
    pub fn contract_crossed(&self) -> Result<HalfEdgeGraph, Violation> {
        let mut cr = None;
        for (h, m) in self.edges() {
            if self.is_crossed(h) && self.vertex_of(h) != self.vertex_of(m) {
                cr = Some((h, m));
            }
        }
        let (h, m) = cr.ok_or(Violation::NoCrossedEdge)?;
        let (keep, gone) = (self.vertex_of(h), self.vertex_of(m));
        let mut g = self.clone();
        for x in g.half_edges_at(gone) {
            g.move_half(x, keep);
        }
        g.delete_edge(h);
        g.delete_vertex(gone);
        let (out, _, _) = g.compact();
        Ok(out)
    }

    /// Renumbers vertices and half-edges densely, dropping tombstones.
    ///
    /// Returns the compacted graph together with the old-to-new maps for
    /// half-edges and vertices.
    pub fn compact(&self) -> (HalfEdgeGraph, Vec<Option<HalfEdgeId>>, Vec<Option<VertexId>>) {
        let mut vmap: Vec<Option<VertexId>> = vec![None; self.vertices.len()];
        let mut next = 0u32;
        for (i, v) in self.vertices.iter().enumerate() {
            if v.alive {
                vmap[i] = Some(next);
                next += 1;
            }
        }
        let mut hmap: Vec<Option<HalfEdgeId>> = vec![None; self.halves.len()];
        let mut next = 0u32;
        for (i, h) in self.halves.iter().enumerate() {
            if h.alive {
                hmap[i] = Some(next);
                next += 1;
            }
        }
        let mut out = HalfEdgeGraph::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if v.alive {
                out.vertices.push(Vertex {
                    genus: v.genus,
                    alive: true,
                });
                let _ = i;
            }
        }
        for (i, h) in self.halves.iter().enumerate() {
            if h.alive {
                out.halves.push(HalfEdge {
                    vertex: vmap[h.vertex as usize].expect("dangling vertex"),
                    mate: h.mate.map(|m| hmap[m as usize].expect("dangling mate")),
                    label: h.label,
                    crossed: h.crossed,
                    marked: h.marked,
                    alive: true,
                });
                let _ = i;
            }
        }
        (out, hmap, vmap)
    }

    /// Applies a permutation of the numbered marked points.
    pub fn relabel_j<F: Fn(u32) -> u32>(&self, sigma: F) -> HalfEdgeGraph {
        let mut g = self.clone();
        for h in g.half_edge_ids() {
            if let Some(HairLabel::J(Some(k))) = g.label(h) {
                g.halves[h as usize].label = Some(HairLabel::J(Some(sigma(k))));
            }
        }
        g
    }

    /// Rebuilds the graph applying explicit vertex/half-edge bijections
    /// (`vertex_map[v]` is the new index of `v`). Used by tests to produce
    /// relabeled isomorphic copies.
    pub fn permuted(&self, vertex_map: &[u32], half_map: &[u32]) -> HalfEdgeGraph {
        let mut vertices = vec![
            Vertex {
                genus: 0,
                alive: true
            };
            self.vertices.len()
        ];
        for (i, v) in self.vertices.iter().enumerate() {
            vertices[vertex_map[i] as usize] = v.clone();
        }
        let mut halves = vec![
            HalfEdge {
                vertex: 0,
                mate: None,
                label: None,
                crossed: false,
                marked: false,
                alive: true,
            };
            self.halves.len()
        ];
        for (i, h) in self.halves.iter().enumerate() {
            halves[half_map[i] as usize] = HalfEdge {
                vertex: vertex_map[h.vertex as usize],
                mate: h.mate.map(|m| half_map[m as usize]),
                label: h.label,
                crossed: h.crossed,
                marked: h.marked,
                alive: h.alive,
            };
        }
        HalfEdgeGraph { vertices, halves }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn tripod(labels: [HairLabel; 3]) -> HalfEdgeGraph {
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(0);
        for l in labels {
            g.add_hair(v, l);
        }
        g
    }

    #[test]
    fn triangle_of_omega_tripods_is_valid() {
        let mut g = HalfEdgeGraph::new();
        let a = g.add_vertex(0);
        let b = g.add_vertex(0);
        let c = g.add_vertex(0);
        g.add_edge(a, b, false);
        g.add_edge(b, c, false);
        g.add_edge(c, a, false);
        for v in [a, b, c] {
            g.add_hair(v, HairLabel::Omega);
        }
        assert_eq!(g.validate(ValidateMode::StableGraph), Ok(()));
        assert_eq!(g.betti(), 1);
    }

    #[test]
    fn low_valence_is_rejected() {
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(0);
        g.add_hair(v, HairLabel::J(Some(1)));
        g.add_hair(v, HairLabel::J(Some(2)));
        assert_eq!(g.validate(ValidateMode::StableGraph), Err(Violation::Valence(v)));
    }

    #[test]
    fn disconnected_is_rejected() {
        let mut g = tripod([HairLabel::Omega; 3]);
        let w = g.add_vertex(0);
        for _ in 0..3 {
            g.add_hair(w, HairLabel::Omega);
        }
        assert_eq!(g.validate(ValidateMode::StableGraph), Err(Violation::Connectivity));
    }

    #[test]
    fn contract_crossed_merges_endpoints() {
        // Two vertices joined by a crossed edge, two omega hairs each.
        let mut g = HalfEdgeGraph::new();
        let a = g.add_vertex(0);
        let b = g.add_vertex(0);
        g.add_edge(a, b, true);
        for v in [a, a, b, b] {
            g.add_hair(v, HairLabel::Omega);
        }
        let c = g.contract_crossed().unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.hairs().len(), 4);
        assert_eq!(c.edges().len(), 0);

        // A parallel plain edge becomes a loop under contraction.
        let mut g = HalfEdgeGraph::new();
        let a = g.add_vertex(0);
        let b = g.add_vertex(0);
        g.add_edge(a, b, true);
        g.add_edge(a, b, false);
        g.add_hair(a, HairLabel::Omega);
        g.add_hair(a, HairLabel::Omega);
        g.add_hair(b, HairLabel::Omega);
        g.add_hair(b, HairLabel::Omega);
        let c = g.contract_crossed().unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edges().len(), 1);
        assert!(c.half_edge_ids().iter().any(|&h| c.is_loop(h)));

        // A path of three vertices with a crossed middle edge contracts to
        // a path of two.
        let mut g = HalfEdgeGraph::new();
        let a = g.add_vertex(0);
        let b = g.add_vertex(0);
        let c3 = g.add_vertex(0);
        g.add_edge(a, b, true);
        g.add_edge(b, c3, false);
        for v in [a, a, b, c3, c3] {
            g.add_hair(v, HairLabel::Omega);
        }
        let c = g.contract_crossed().unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edges().len(), 1);
    }

    #[test]
    fn no_crossed_edge_error() {
        let g = tripod([HairLabel::Omega; 3]);
        assert_eq!(g.contract_crossed(), Err(Violation::NoCrossedEdge));
    }

    #[test]
    fn total_genus_counts_crossed_cycles() {
        // Birr-like vertex: crossed loop plus one hair.
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(0);
        g.add_edge(v, v, true);
        g.add_hair(v, HairLabel::Omega);
        assert_eq!(g.total_genus(), 1);
    }
}
