//! Forensics on one weight-13 block: print every pair realization.

use gk_core::canon::canonicalize;
use gk_core::census::blowup_components;
use gk_core::complex::{a_case_key_graph, weight13_rows, Assembled};
use gk_core::component::CrossedKind;
use gk_core::generator::{edge_rep, normalize, RawGen};
use gk_core::graph::HalfEdgeId;
use gk_core::rat::{display, rat};

#[test]
#[ignore]
fn inspect_block() {
    let a = Assembled::build(9, 0);
    let data = &a.degrees[&23];
    let target = data
        .gens
        .iter()
        .find(|g| {
            blowup_components(&g.graph)
                .iter()
                .any(|c| c.crossed == CrossedKind::Hair && c.omega == 3 && c.excess() == 0)
        })
        .expect("crossed-tripod generator");
    let kg = a_case_key_graph(&target.graph).unwrap();
    let bv = kg.genus_one_vertex().unwrap();
    let canon = canonicalize(&kg, false);
    let mut marked: Vec<(HalfEdgeId, HalfEdgeId)> = kg
        .half_edges_at(bv)
        .into_iter()
        .filter(|&h| kg.is_marked(h))
        .map(|h| (canon.half_map[h as usize], h))
        .collect();
    marked.sort();
    let e_set: Vec<HalfEdgeId> = marked.iter().map(|&(_, h)| h).collect();
    println!("E elements (canonical order):");
    for (pos, &h) in e_set.iter().enumerate() {
        let mate = kg.mate(h);
        println!(
            "  pos {} half {} mate {:?} loop={} ",
            pos + 1,
            h,
            mate,
            kg.is_loop(h)
        );
    }
    let ref_edges: Vec<HalfEdgeId> = kg.real_edges().iter().map(|&(a, _)| a).collect();
    for i in 0..12 {
        for j in (i + 1)..12 {
            let (p, q) = (e_set[i], e_set[j]);
            let mut w = kg.clone();
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
            let t = normalize(
                &RawGen {
                    graph: w,
                    b_order,
                    edge_order,
                },
                rat(1),
            );
            match t {
                None => println!("pair ({:2},{:2}): ZERO", i + 1, j + 1),
                Some(t) => {
                    let short: u32 = t.key.0.iter().map(|&b| b as u32).sum();
                    println!(
                        "pair ({:2},{:2}): coeff {} keysum {} fam {:?}",
                        i + 1,
                        j + 1,
                        display(&t.coeff),
                        short,
                        t.gen.family()
                    );
                }
            }
        }
    }
    // Show the small rows.
    for row in weight13_rows(&kg) {
        if row.len() <= 1 {
            println!("SMALL ROW: {} terms", row.len());
            for (k, c) in row.iter() {
                let short: u32 = k.0.iter().map(|&b| b as u32).sum();
                println!("   coeff {} keysum {}", display(c), short);
            }
        }
    }
}
