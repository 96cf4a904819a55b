//! Diagnostic: relation closure under the differential.

use gk_core::census::blowup_components;
use gk_core::complex::Assembled;
use gk_core::differential::total_differential;
use gk_core::generator::FormalSum;

#[test]
#[ignore]
fn relation_closure() {
    let a = Assembled::build(9, 0);
    let mut bad = 0usize;
    for (&k, data) in &a.degrees {
        let rows: Vec<_> = a.relation_sums_tagged(k).into_iter().filter(|(t, r)| *t == "w13" && r.len() == 2).map(|(_, r)| r).collect();
        println!("degree {}: {} gens, {} relation rows, rank {}", k, data.keys.len(), rows.len(), data.relations.rank());
        for row in rows {
            let mut image = FormalSum::new();
            for (key, coeff) in row.iter() {
                let i = data.index_of(key).unwrap();
                let mut d = total_differential(&data.gens[i]);
                d.scale(coeff);
                image.add_sum(&d);
            }
            if image.is_zero() {
                continue;
            }
            let next = &a.degrees[&(k + 1)];
            let reduced = next.reduce(&image);
            if !reduced.is_empty() {
                bad += 1;
                if bad <= 3 {
                    println!("=== unclosed relation at degree {}:", k);
                    println!("  row supports:");
                    for (key, coeff) in row.iter() {
                        let i = data.index_of(key).unwrap();
                        println!(
                            "   coeff {} family {:?}",
                            gk_core::rat::display(coeff),
                            data.gens[i].family()
                        );
                        for c in blowup_components(&data.gens[i].graph) {
                            println!(
                                "     crossed={:?} g={} om={} eps={} j={} e={}",
                                c.crossed, c.genus, c.omega, c.epsilon, c.jays, c.excess()
                            );
                        }
                    }
                    println!("  leftover after reduce: {} basis coords:", reduced.len());
                    for (pos, coeff) in &reduced {
                        let col = next.basis[*pos];
                        let gen = &next.gens[col];
                        println!(
                            "   coord {} coeff {} family {:?}",
                            pos,
                            gk_core::rat::display(coeff),
                            gen.family()
                        );
                        for c in blowup_components(&gen.graph) {
                            println!(
                                "     crossed={:?} g={} om={} eps={} j={} e={} ie={}",
                                c.crossed, c.genus, c.omega, c.epsilon, c.jays, c.excess(),
                                c.internal_edges
                            );
                        }
                    }
                }
            }
        }
    }
    assert_eq!(bad, 0);
}
