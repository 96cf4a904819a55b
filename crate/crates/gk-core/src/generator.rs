//! Decorated generators of the weight-13 complex and their normalization.
//!
//! A generator is carried by its graphical depiction: a stable graph with
//! one genus-one vertex, one crossed feature describing the decoration
//! (crossed edge at the genus-one vertex for the weight-13 classes, a
//! crossed edge away from it for a weight-2 partition class, a crossed
//! loop for the irreducible weight-2 class), marks on the half-edges of
//! the ordered set `B`, an ordering of the real internal edges and a
//! rational coefficient.
//!
//! Normalization sends a raw generator to a signed multiple of a canonical
//! one, or to zero: graphs violating the vertex rules vanish, loops at the
//! crossed partner vertex vanish or rewrite into the irreducible family
//! with coefficient 1/12, and graphs with an odd symmetry vanish.

use crate::canon::{canonicalize, SignConvention};
use crate::graph::{HairLabel, HalfEdgeGraph, HalfEdgeId, ValidateMode, VertexId};
use crate::prelude::*;
use crate::rat::{rat_frac, sort_sign, Rat};
use num_traits::Zero;

/// The four families of generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    A3,
    A2,
    B1,
    Birr,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::A3 => "A3",
            Family::A2 => "A2",
            Family::B1 => "B1",
            Family::Birr => "Birr",
        }
    }
}

/// Canonical key of a generator: the byte encoding of its canonical graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GenKey(pub Vec<u8>);

/// A raw (not yet normalized) decorated generator.
///
/// `b_order` lists the marked half-edges at the genus-one vertex in the
/// order of the decoration; `edge_order` lists each real internal edge
/// once, identified by the smaller of its two half-edge ids.
#[derive(Clone, Debug)]
pub struct RawGen {
    pub graph: HalfEdgeGraph,
    pub b_order: Vec<HalfEdgeId>,
    pub edge_order: Vec<HalfEdgeId>,
}

/// A normalized generator: canonical graph, `B` in increasing order, edges
/// in increasing order.
#[derive(Clone, Debug)]
pub struct Generator {
    pub graph: HalfEdgeGraph,
}

impl Generator {
    /// Degree in the complex: the weight plus the number of internal edges.
    pub fn degree(&self) -> usize {
        13 + self.graph.real_edges().len()
    }

    pub fn family(&self) -> Family {
        family_of(&self.graph)
    }

    /// Marked half-edges at the genus-one vertex, increasing.
    pub fn b_set(&self) -> Vec<HalfEdgeId> {
        let bv = self.graph.genus_one_vertex().expect("genus-one vertex");
        self.graph
            .half_edges_at(bv)
            .into_iter()
            .filter(|&h| self.graph.is_marked(h))
            .collect()
    }

    pub fn as_raw(&self) -> RawGen {
        RawGen {
            b_order: self.b_set(),
            edge_order: self
                .graph
                .real_edges()
                .iter()
                .map(|&(a, _)| a)
                .collect(),
            graph: self.graph.clone(),
        }
    }
}

pub fn edge_rep(g: &HalfEdgeGraph, h: HalfEdgeId) -> HalfEdgeId {
    let m = g.mate(h).expect("edge half");
    h.min(m)
}

/// The crossed partner vertex of the genus-one vertex in family A, the two
/// crossed vertices in family B1, or the crossed-loop vertex.
fn crossed_halves(g: &HalfEdgeGraph) -> Vec<HalfEdgeId> {
    g.half_edge_ids()
        .into_iter()
        .filter(|&h| g.is_crossed(h))
        .collect()
}

pub fn family_of(g: &HalfEdgeGraph) -> Family {
    let bv = g.genus_one_vertex().expect("genus-one vertex");
    let crossed = crossed_halves(g);
    assert_eq!(crossed.len(), 2, "one crossed edge expected");
    let (c1, c2) = (crossed[0], crossed[1]);
    let (u, v) = (g.vertex_of(c1), g.vertex_of(c2));
    if u == v {
        return Family::Birr;
    }
    if u == bv || v == bv {
        let tv = if u == bv { v } else { u };
        let ac = g
            .half_edges_at(tv)
            .iter()
            .filter(|&&h| !g.is_crossed(h))
            .count();
        if ac >= 3 {
            Family::A3
        } else {
            Family::A2
        }
    } else {
        Family::B1
    }
}

/// Special vertices: `(genus_one, crossed_vertices)`.
pub fn special_vertices(g: &HalfEdgeGraph) -> (VertexId, Vec<VertexId>) {
    let bv = g.genus_one_vertex().expect("genus-one vertex");
    let mut cvs: Vec<VertexId> = crossed_halves(g).iter().map(|&h| g.vertex_of(h)).collect();
    cvs.sort_unstable();
    cvs.dedup();
    (bv, cvs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenError {
    Structure(&'static str),
}

/// Structural checks a raw generator must satisfy before normalization.
pub fn validate_raw(rg: &RawGen) -> Result<(), GenError> {
    let g = &rg.graph;
    if !g.is_connected() {
        return Err(GenError::Structure("disconnected"));
    }
    let bv = match g.genus_one_vertex() {
        Some(v) if g.genus(v) == 1 => v,
        _ => return Err(GenError::Structure("need exactly one genus-one vertex")),
    };
    let crossed = crossed_halves(g);
    if crossed.len() != 2 || g.mate(crossed[0]) != Some(crossed[1]) {
        return Err(GenError::Structure("need exactly one crossed edge"));
    }
    let marked: BTreeSet<HalfEdgeId> = g
        .half_edge_ids()
        .into_iter()
        .filter(|&h| g.is_marked(h))
        .collect();
    for &h in &marked {
        if g.vertex_of(h) != bv {
            return Err(GenError::Structure("marks away from the genus-one vertex"));
        }
    }
    let b: BTreeSet<HalfEdgeId> = rg.b_order.iter().copied().collect();
    if b.len() != rg.b_order.len() || b != marked {
        return Err(GenError::Structure("b_order does not match the marks"));
    }
    let fam = family_of(g);
    let expect = match fam {
        Family::A3 | Family::A2 => 10,
        Family::B1 | Family::Birr => 11,
    };
    if b.len() != expect {
        return Err(GenError::Structure("wrong size of B"));
    }
    if fam == Family::Birr {
        // The irreducible vertex has valence one in the stable graph: its
        // crossed loop plus a single edge into the rest of the graph.
        let tv = g.vertex_of(crossed[0]);
        let others: Vec<HalfEdgeId> = g
            .half_edges_at(tv)
            .into_iter()
            .filter(|&h| !g.is_crossed(h))
            .collect();
        let ok = others.len() == 1 && g.mate(others[0]).is_some();
        if !ok {
            return Err(GenError::Structure("irreducible vertex must have a single edge"));
        }
    }
    let reps: BTreeSet<HalfEdgeId> = g.real_edges().iter().map(|&(a, _)| a).collect();
    let ord: BTreeSet<HalfEdgeId> = rg.edge_order.iter().map(|&h| edge_rep(g, h)).collect();
    if ord.len() != rg.edge_order.len() || reps != ord {
        return Err(GenError::Structure("edge_order does not cover the real edges"));
    }
    Ok(())
}

/// One normalized term.
#[derive(Clone, Debug)]
pub struct NormalTerm {
    pub key: GenKey,
    pub gen: Generator,
    pub coeff: Rat,
}

/// Normalizes a raw generator times `coeff`; `None` when it vanishes.
pub fn normalize(rg: &RawGen, coeff: Rat) -> Option<NormalTerm> {
    if coeff.is_zero() {
        return None;
    }
    let g = &rg.graph;
    let bv = g.genus_one_vertex().expect("genus-one vertex");

    // Vertex rules: plain genus-zero vertices are at least trivalent and
    // have no loops.
    for v in g.vertex_ids() {
        if g.is_special(v) {
            continue;
        }
        if g.valence(v) < 3 {
            return None;
        }
        if g.half_edges_at(v).iter().any(|&h| g.is_loop(h)) {
            return None;
        }
    }

    let fam = family_of(g);
    match fam {
        Family::A3 | Family::A2 => {
            let crossed = crossed_halves(g);
            let tv = if g.vertex_of(crossed[0]) == bv {
                g.vertex_of(crossed[1])
            } else {
                g.vertex_of(crossed[0])
            };
            let has_loop = g.half_edges_at(tv).iter().any(|&h| g.is_loop(h));
            if has_loop {
                if fam == Family::A3 {
                    // Loop inside the complement set: the class vanishes.
                    return None;
                }
                // |A^c| = 2: the loop is the whole complement; rewrite into
                // the irreducible family with coefficient 1/12.
                return normalize_rule4(rg, coeff);
            }
        }
        Family::B1 => {
            let crossed = crossed_halves(g);
            for &c in &crossed {
                let tv = g.vertex_of(c);
                if g.half_edges_at(tv).iter().any(|&h| g.is_loop(h) && !g.is_crossed(h)) {
                    // Loop on one side of the partition: killed by the
                    // pushforward relation.
                    return None;
                }
            }
        }
        Family::Birr => {
            // The irreducible vertex only survives attached to the
            // genus-one vertex; configurations created by splittings that
            // push it onto a plain vertex vanish in the reduced complex.
            let crossed = crossed_halves(g);
            let tv = g.vertex_of(crossed[0]);
            let stem = g
                .half_edges_at(tv)
                .into_iter()
                .find(|&h| !g.is_crossed(h));
            match stem.and_then(|s| g.mate(s)) {
                Some(m) if g.vertex_of(m) == bv => {}
                _ => return None,
            }
        }
    }

    let canon = canonicalize(g, false);
    if canon.odd(SignConvention::EdgesAndB) {
        return None;
    }

    // Parity of the edge ordering against the canonical (increasing) one.
    let mapped_edges: Vec<HalfEdgeId> = rg
        .edge_order
        .iter()
        .map(|&h| {
            let m = g.mate(h).expect("edge half");
            canon.half_map[h as usize].min(canon.half_map[m as usize])
        })
        .collect();
    let mapped_b: Vec<HalfEdgeId> = rg.b_order.iter().map(|&h| canon.half_map[h as usize]).collect();
    let sign = sort_sign(&mapped_edges) * sort_sign(&mapped_b);

    let coeff = coeff * Rat::from_integer(sign.into());
    Some(NormalTerm {
        key: GenKey(canon.key),
        gen: Generator { graph: canon.graph },
        coeff,
    })
}

/// A2 generator whose crossed partner carries a loop: replace the crossed
/// edge by a real edge into a new crossed-loop vertex. The new edge joins
/// `B` last and takes the loop's place in the edge order.
fn normalize_rule4(rg: &RawGen, coeff: Rat) -> Option<NormalTerm> {
    let g = &rg.graph;
    let bv = g.genus_one_vertex().expect("genus-one vertex");
    let crossed = crossed_halves(g);
    let (cb, ct) = if g.vertex_of(crossed[0]) == bv {
        (crossed[0], crossed[1])
    } else {
        (crossed[1], crossed[0])
    };
    let tv = g.vertex_of(ct);
    let lp = g
        .half_edges_at(tv)
        .into_iter()
        .find(|&h| g.is_loop(h))
        .expect("loop at the crossed partner");
    let lp_rep = edge_rep(g, lp);

    let mut out = g.clone();
    out.delete_edge(lp);
    out.delete_edge(cb);
    let (p, _p2) = out.add_edge(bv, tv, false);
    out.set_marked(p, true);
    let (cl1, _cl2) = out.add_edge(tv, tv, true);
    let _ = cl1;
    let (compacted, hmap, _) = out.compact();

    let map = |h: HalfEdgeId| hmap[h as usize].expect("alive");
    let mut b_order: Vec<HalfEdgeId> = rg.b_order.iter().map(|&h| map(h)).collect();
    b_order.push(map(p));
    let edge_order: Vec<HalfEdgeId> = rg
        .edge_order
        .iter()
        .map(|&h| {
            let rep = edge_rep(g, h);
            if rep == lp_rep {
                map(p)
            } else {
                map(rep)
            }
        })
        .collect();

    normalize(
        &RawGen {
            graph: compacted,
            b_order,
            edge_order,
        },
        coeff * rat_frac(1, 12),
    )
}

/// Finite rational combination of normalized generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<GenKey, Rat>,
}

impl FormalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, key: GenKey, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rat::zero);
        *slot += coeff;
        let dead = slot.is_zero();
        if dead {
            // Remove pruned zeros to keep keys meaningful.
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add_normal(&mut self, term: Option<NormalTerm>) {
        if let Some(t) = term {
            self.add_term(t.key, t.coeff);
        }
    }

    pub fn add_sum(&mut self, other: &FormalSum) {
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scale(&mut self, by: &Rat) {
        if by.is_zero() {
            self.terms.clear();
            return;
        }
        for c in self.terms.values_mut() {
            *c *= by.clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GenKey, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &GenKey) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }
}

/// Applies a permutation of the numbered hairs and renormalizes.
pub fn sn_act(gen: &Generator, sigma: &dyn Fn(u32) -> u32) -> Option<NormalTerm> {
    let raw = gen.as_raw();
    let graph = raw.graph.relabel_j(sigma);
    normalize(
        &RawGen {
            graph,
            b_order: raw.b_order,
            edge_order: raw.edge_order,
        },
        Rat::from_integer(1.into()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::HairLabel::*;
    use crate::rat::rat;

    /// Genus-one vertex with 11 marked omega-edges into tripods plus the
    /// crossed-loop vertex pattern of the irreducible family.
    pub fn small_birr() -> RawGen {
        let mut g = HalfEdgeGraph::new();
        let bv = g.add_vertex(1);
        let tv = g.add_vertex(0);
        g.add_edge(tv, tv, true);
        let (e1, _) = g.add_edge(bv, tv, false);
        g.set_marked(e1, true);
        let mut b_order = vec![e1];
        let mut edge_order = vec![edge_rep(&g, e1)];
        // Two tripods (6 marks) and one j and three more j-hair marks would
        // overshoot; instead hang 10 marked hairs directly.
        for k in 1..=10 {
            let h = g.add_hair(bv, J(Some(k)));
            g.set_marked(h, true);
            b_order.push(h);
        }
        edge_order.sort_unstable();
        RawGen {
            graph: g,
            b_order,
            edge_order,
        }
    }

    #[test]
    fn birr_normalizes() {
        let rg = small_birr();
        assert_eq!(validate_raw(&rg), Ok(()));
        let t = normalize(&rg, rat(1)).expect("nonzero");
        assert_eq!(t.gen.family(), Family::Birr);
        assert_eq!(t.gen.degree(), 14);
        assert_eq!(t.coeff, rat(1));
    }

    #[test]
    fn b_order_swap_flips_sign() {
        let rg = small_birr();
        let mut swapped = rg.clone();
        swapped.b_order.swap(0, 1);
        let a = normalize(&rg, rat(1)).unwrap();
        let b = normalize(&swapped, rat(1)).unwrap();
        assert_eq!(a.key, b.key);
        assert_eq!(a.coeff, -b.coeff);
    }

    #[test]
    fn rule4_rewrites_a2_loop() {
        // Genus-one vertex with 10 marked j-hairs, crossed edge to a
        // trivalent partner carrying a loop.
        let mut g = HalfEdgeGraph::new();
        let bv = g.add_vertex(1);
        let tv = g.add_vertex(0);
        g.add_edge(bv, tv, true);
        let (l1, _) = g.add_edge(tv, tv, false);
        let mut b_order = Vec::new();
        for k in 1..=10 {
            let h = g.add_hair(bv, J(Some(k)));
            g.set_marked(h, true);
            b_order.push(h);
        }
        let rg = RawGen {
            edge_order: vec![edge_rep(&g, l1)],
            graph: g,
            b_order,
        };
        assert_eq!(family_of(&rg.graph), Family::A2);
        let t = normalize(&rg, rat(1)).expect("rewrites, does not vanish");
        assert_eq!(t.gen.family(), Family::Birr);
        assert_eq!(t.coeff, rat_frac(1, 12) * rat(1));
        assert_eq!(t.gen.degree(), 14);
    }

    #[test]
    fn a3_loop_vanishes() {
        let mut g = HalfEdgeGraph::new();
        let bv = g.add_vertex(1);
        let tv = g.add_vertex(0);
        g.add_edge(bv, tv, true);
        let (l1, _) = g.add_edge(tv, tv, false);
        let j = g.add_hair(tv, J(Some(11)));
        let _ = j;
        let mut b_order = Vec::new();
        for k in 1..=10 {
            let h = g.add_hair(bv, J(Some(k)));
            g.set_marked(h, true);
            b_order.push(h);
        }
        let rg = RawGen {
            edge_order: vec![edge_rep(&g, l1)],
            graph: g,
            b_order,
        };
        assert_eq!(family_of(&rg.graph), Family::A3);
        assert!(normalize(&rg, rat(1)).is_none());
    }

    #[test]
    fn ordinary_loop_vanishes() {
        let mut rg = small_birr();
        let w = rg.graph.add_vertex(0);
        let bv = rg.graph.genus_one_vertex().unwrap();
        let (e, _) = rg.graph.add_edge(bv, w, false);
        let (l, _) = rg.graph.add_edge(w, w, false);
        rg.graph.add_hair(w, J(Some(11)));
        rg.edge_order.push(edge_rep(&rg.graph, e));
        rg.edge_order.push(edge_rep(&rg.graph, l));
        assert!(normalize(&rg, rat(1)).is_none());
    }

    #[test]
    fn formal_sum_prunes_zeros() {
        let mut s = FormalSum::new();
        s.add_term(GenKey(vec![1]), rat(2));
        s.add_term(GenKey(vec![1]), rat(-2));
        assert!(s.is_zero());
    }
}
