use gk_core::census::generate_virtual_reps;
use gk_core::component::{Body, CrossedKind};
use gk_core::graph::HairLabel;

#[test]
fn probe_omega_at_crossed() {
    let reps = generate_virtual_reps(3);
    let mut count = 0;
    for r in &reps {
        for c in &r.components {
            if c.crossed != CrossedKind::Hair {
                continue;
            }
            if let Body::Graph(g) = &c.body {
                let ch = g.half_edge_ids().into_iter().find(|&h| g.is_crossed(h)).unwrap();
                let tv = g.vertex_of(ch);
                let has_omega = g
                    .half_edges_at(tv)
                    .iter()
                    .any(|&h| !g.is_crossed(h) && g.mate(h).is_none() && g.label(h) == Some(HairLabel::Omega));
                if has_omega {
                    count += 1;
                    println!(
                        "rep {:x} family {:?} crossed-vertex valence {} om={} e={}",
                        r.id, r.family, g.valence(tv), c.omega, c.excess()
                    );
                }
            }
        }
    }
    println!("total reps with omega at crossed vertex: {}", count);
}
