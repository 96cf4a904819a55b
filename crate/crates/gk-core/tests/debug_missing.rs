//! Diagnostic: find differential outputs that the generator enumeration
//! missed, and print their blown-up structure.

use gk_core::census::blowup_components;
use gk_core::complex::Assembled;
use gk_core::differential::total_differential_terms;

#[test]
#[ignore]
fn find_missing() {
    for (g, n) in [(9usize, 0usize), (7, 3)] {
        let a = Assembled::build(g, n);
        println!("=== ({}, {}) dims {:?}", g, n, a.dims());
        let mut shown = 0;
        for (&k, data) in &a.degrees {
            for gen in data.gens.iter() {
                for t in total_differential_terms(gen) {
                    let missing = a
                        .degrees
                        .get(&(k + 1))
                        .map(|next| next.index_of(&t.key).is_none())
                        .unwrap_or(true);
                    if missing && shown < 3 {
                        shown += 1;
                        println!("  missing target at degree {} family {:?}:", k + 1, t.gen.family());
                        for c in blowup_components(&t.gen.graph) {
                            println!(
                                "    crossed={:?} g={} om={} eps={} j={} e={} ie={}",
                                c.crossed, c.genus, c.omega, c.epsilon, c.jays,
                                c.excess(), c.internal_edges
                            );
                        }
                    }
                }
            }
        }
        assert_eq!(shown, 0, "missing targets at ({}, {})", g, n);
    }
}
