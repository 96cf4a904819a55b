//! Blown-up components: the connected pieces left after deleting the
//! genus-one vertex, with hairs recording how they were attached.
//!
//! A component is either a bare edge (a loop at the deleted vertex or a
//! marked point sitting on it) or a vertexful graph whose omega/epsilon
//! hairs are edges back to the deleted vertex. The excess
//! `e(C) = 3(g-1) + 3*eps + omega + 2*j` is additive over components and
//! measures how far the ambient pair `(g,n)` sits above the vanishing
//! range.

use crate::canon::{canonicalize, Canonical};
use crate::graph::{HairLabel, HalfEdgeGraph};
use crate::prelude::*;

/// End decoration of a bare (vertex-free) component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BareEnd {
    Omega,
    Epsilon,
    J,
}

/// The kind of crossing a component carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CrossedKind {
    None,
    Hair,
    Edge,
    Loop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    /// A single edge with two decorated ends: the double hairs
    /// (omega-omega, omega-epsilon, epsilon-epsilon) are loops at the
    /// deleted vertex, and omega-j / epsilon-j are its marked points.
    Bare(BareEnd, BareEnd),
    /// A connected graph with at least trivalent vertices.
    Graph(HalfEdgeGraph),
}

/// A blown-up component in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub body: Body,
    /// Canonical content key (bare tag or graph encoding).
    pub key: Vec<u8>,
    pub crossed: CrossedKind,
    /// Betti number plus genus labels.
    pub genus: usize,
    pub omega: usize,
    pub epsilon: usize,
    pub jays: usize,
    /// Internal real edges of the component itself.
    pub internal_edges: usize,
    /// Whether the component alone carries an odd symmetry.
    pub odd: bool,
    /// Parity deciding whether two copies create an odd symmetry.
    pub swap_parity: u8,
    /// Canonical key of the unmarked template this component was marked
    /// from (omega/epsilon erased back to `u`).
    pub template_key: Vec<u8>,
}

impl PartialOrd for Component {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Component {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

fn bare_key(a: BareEnd, b: BareEnd) -> Vec<u8> {
    let code = |e: BareEnd| match e {
        BareEnd::Omega => 1u8,
        BareEnd::Epsilon => 2,
        BareEnd::J => 3,
    };
    let (x, y) = (code(a).min(code(b)), code(a).max(code(b)));
    vec![0xBA, x, y]
}

impl Component {
    pub fn bare(a: BareEnd, b: BareEnd) -> Component {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let count = |e: BareEnd| [a, b].iter().filter(|&&x| x == e).count();
        let omega = count(BareEnd::Omega);
        let epsilon = count(BareEnd::Epsilon);
        let jays = count(BareEnd::J);
        assert!(jays <= 1, "no bare j-j components");
        // A loop at the deleted vertex is one real edge; a marked point is
        // none.
        let internal = if jays == 0 { 1 } else { 0 };
        let template = {
            let to_u = |e: BareEnd| if e == BareEnd::J { BareEnd::J } else { BareEnd::Omega };
            // Templates only distinguish hair vs loop; reuse the bare key
            // with omega standing for `u`.
            bare_key(to_u(a), to_u(b))
        };
        Component {
            key: bare_key(a, b),
            crossed: CrossedKind::None,
            genus: 0,
            omega,
            epsilon,
            jays,
            internal_edges: internal,
            // A loop with both halves marked is killed by the sign on B;
            // flagged as odd here.
            odd: omega == 2,
            swap_parity: ((internal + epsilon) % 2) as u8,
            template_key: template,
            body: Body::Bare(a, b),
        }
    }

    /// Builds a vertexful component from its graph (hairs labeled omega,
    /// epsilon or j; at most one crossed feature).
    pub fn from_graph(graph: &HalfEdgeGraph) -> Component {
        let canon = canonicalize(graph, false);
        Self::from_canonical(graph, &canon)
    }

    fn from_canonical(graph: &HalfEdgeGraph, canon: &Canonical) -> Component {
        let mut crossed = CrossedKind::None;
        for h in graph.half_edge_ids() {
            if graph.is_crossed(h) {
                crossed = match graph.mate(h) {
                    None => CrossedKind::Hair,
                    Some(m) if graph.vertex_of(m) == graph.vertex_of(h) => CrossedKind::Loop,
                    Some(_) => CrossedKind::Edge,
                };
                if crossed != CrossedKind::Hair {
                    break;
                }
            }
        }
        let hairs = graph.hairs();
        let omega = hairs
            .iter()
            .filter(|&&h| graph.label(h) == Some(HairLabel::Omega))
            .count();
        let epsilon = hairs
            .iter()
            .filter(|&&h| graph.label(h) == Some(HairLabel::Epsilon))
            .count();
        let jays = graph.j_count();
        let internal = graph.real_edges().len();
        let template = {
            let mut t = graph.clone();
            for h in t.half_edge_ids() {
                match t.label(h) {
                    Some(HairLabel::Omega) | Some(HairLabel::Epsilon) => {
                        t.set_label(h, HairLabel::U)
                    }
                    _ => {}
                }
            }
            canonicalize(&t, false).key
        };
        Component {
            body: Body::Graph(canon.graph.clone()),
            key: canon.key.clone(),
            crossed,
            genus: graph.betti(),
            omega,
            epsilon,
            jays,
            internal_edges: internal,
            odd: canon.odd_edges_eps,
            swap_parity: ((internal + epsilon) % 2) as u8,
            template_key: template,
        }
    }

    /// Excess `3(g-1) + 3*eps + omega + 2*j`.
    pub fn excess(&self) -> i64 {
        3 * (self.genus as i64 - 1) + 3 * self.epsilon as i64 + self.omega as i64
            + 2 * self.jays as i64
    }

    /// Contribution to the ambient genus: `g + eps + omega - 1`.
    pub fn genus_contribution(&self) -> i64 {
        self.genus as i64 + self.epsilon as i64 + self.omega as i64 - 1
    }

    /// Real internal edges the component contributes to the stable graph:
    /// its own edges plus one per non-crossed omega/epsilon hair; bare
    /// doubles are a single loop, bare marked points contribute none.
    pub fn edge_contribution(&self) -> usize {
        match &self.body {
            Body::Bare(..) => self.internal_edges,
            Body::Graph(_) => {
                let crossed_hair = if self.crossed == CrossedKind::Hair { 1 } else { 0 };
                self.internal_edges + self.omega + self.epsilon - crossed_hair
            }
        }
    }

    pub fn is_crossed(&self) -> bool {
        self.crossed != CrossedKind::None
    }

    /// Whether a pair of copies of this component carries an odd symmetry
    /// exchanging them.
    pub fn duplicate_odd(&self) -> bool {
        self.jays == 0 && self.swap_parity == 1
    }

    /// The omega-j double hair, one of the two excess-zero components.
    pub fn omega_j() -> Component {
        Component::bare(BareEnd::Omega, BareEnd::J)
    }

    /// The omega tripod, the other excess-zero component.
    pub fn tripod() -> Component {
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(0);
        for _ in 0..3 {
            g.add_hair(v, HairLabel::Omega);
        }
        Component::from_graph(&g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excess_values() {
        assert_eq!(Component::tripod().excess(), 0);
        assert_eq!(Component::omega_j().excess(), 0);
        assert_eq!(Component::bare(BareEnd::Epsilon, BareEnd::J).excess(), 2);
        assert_eq!(Component::bare(BareEnd::Omega, BareEnd::Epsilon).excess(), 1);
        assert_eq!(Component::bare(BareEnd::Omega, BareEnd::Omega).excess(), -1);
        assert_eq!(Component::bare(BareEnd::Epsilon, BareEnd::Epsilon).excess(), 3);
    }

    #[test]
    fn birr_seed() {
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(0);
        g.add_edge(v, v, true);
        g.add_hair(v, HairLabel::Omega);
        let c = Component::from_graph(&g);
        assert_eq!(c.excess(), 1);
        assert_eq!(c.crossed, CrossedKind::Loop);
        assert_eq!(c.genus, 1);
        assert_eq!(c.edge_contribution(), 1);
        assert!(!c.odd);
        assert_eq!(c.genus_contribution(), 1);
    }

    #[test]
    fn duplicate_parity() {
        // Two omega-j hairs are exchangeable without sign.
        assert!(!Component::omega_j().duplicate_odd());
        // Two epsilon-epsilon loops exchange with sign -1.
        assert!(Component::bare(BareEnd::Epsilon, BareEnd::Epsilon).duplicate_odd());
        // Two omega-epsilon loops exchange without sign.
        assert!(!Component::bare(BareEnd::Omega, BareEnd::Epsilon).duplicate_odd());
        // Tripods repeat freely.
        assert!(!Component::tripod().duplicate_odd());
    }

    #[test]
    fn epsilon_pair_component_is_odd() {
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(0);
        g.add_hair(v, HairLabel::Epsilon);
        g.add_hair(v, HairLabel::Epsilon);
        g.add_hair(v, HairLabel::Omega);
        assert!(Component::from_graph(&g).odd);
    }

    #[test]
    fn crossed_hair_component() {
        // The crossed-omega / epsilon / j vertex (one of the reduced
        // survivors): excess 3, one real edge from the epsilon hair.
        let mut g = HalfEdgeGraph::new();
        let v = g.add_vertex(0);
        let h = g.add_hair(v, HairLabel::Omega);
        g.set_crossed_hair(h);
        g.add_hair(v, HairLabel::Epsilon);
        g.add_hair(v, HairLabel::J(None));
        let c = Component::from_graph(&g);
        assert_eq!(c.excess(), 3);
        assert_eq!(c.crossed, CrossedKind::Hair);
        assert_eq!(c.edge_contribution(), 1);
    }
}
