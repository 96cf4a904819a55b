//! Diagnostic: locate generators whose termwise double differential fails
//! to cancel, and print their structure.

use gk_core::census::blowup_components;
use gk_core::complex::Assembled;
use gk_core::differential::total_differential_terms;
use gk_core::generator::{FormalSum, GenKey, Generator};
use std::collections::BTreeMap;

fn describe(g: &Generator) -> String {
    let mut s = String::new();
    for c in blowup_components(&g.graph) {
        s.push_str(&format!(
            "    crossed={:?} g={} om={} eps={} j={} e={} ie={}\n",
            c.crossed, c.genus, c.omega, c.epsilon, c.jays, c.excess(), c.internal_edges
        ));
    }
    s
}

#[test]
#[ignore]
fn trace_dsq() {
    let a = Assembled::build(9, 0);
    let mut bad = 0;
    for (&k, data) in &a.degrees {
        for gen in data.gens.iter() {
            let d1 = total_differential_terms(gen);
            let mut d2 = FormalSum::new();
            let mut reps: BTreeMap<GenKey, Generator> = BTreeMap::new();
            for t1 in &d1 {
                let g2 = &t1.gen;
                for t2 in total_differential_terms(g2) {
                    reps.entry(t2.key.clone()).or_insert_with(|| t2.gen.clone());
                    d2.add_term(t2.key, t2.coeff * t1.coeff.clone());
                }
            }
            if !d2.is_zero() {
                bad += 1;
                println!(
                    "=== d.d != 0 from degree {} family {:?} ({} leftover terms)",
                    k,
                    gen.family(),
                    d2.len()
                );
                println!("source blowup:\n{}", describe(gen));
                for (key, coeff) in d2.iter().take(3) {
                    println!(
                        "  leftover coeff {} family {:?}:\n{}",
                        gk_core::rat::display(coeff),
                        reps[key].family(),
                        describe(&reps[key])
                    );
                }
                if bad >= 2 {
                    panic!("enough examples");
                }
            }
        }
    }
    assert_eq!(bad, 0, "termwise chain identity");
}
