//! Prints the complete differentials of the two members of the first
//! failing two-term weight-13 row at (9,0).

use gk_core::census::blowup_components;
use gk_core::complex::Assembled;
use gk_core::differential::total_differential_terms;
use gk_core::generator::{FormalSum, Generator};

fn describe(g: &Generator) -> String {
    let mut parts: Vec<String> = blowup_components(&g.graph)
        .iter()
        .map(|c| {
            format!(
                "[{:?} g{} om{} e{} ie{}]",
                c.crossed, c.genus, c.omega, c.epsilon, c.excess(),
            )
        })
        .collect();
    parts.sort();
    parts.join("")
}

#[test]
#[ignore]
fn inspect_pair() {
    let a = Assembled::build(9, 0);
    for (&k, data) in &a.degrees {
        for row in a.relation_sums_tagged(k) {
            let (tag, row) = row;
            if tag != "w13" || row.len() != 2 {
                continue;
            }
            let mut image = FormalSum::new();
            for (key, coeff) in row.iter() {
                let i = data.index_of(key).unwrap();
                let mut d = gk_core::differential::total_differential(&data.gens[i]);
                d.scale(coeff);
                image.add_sum(&d);
            }
            let next = match a.degrees.get(&(k + 1)) {
                Some(n) => n,
                None => continue,
            };
            if image.is_zero() || next.reduce(&image).is_empty() {
                continue;
            }
            println!("=== failing row at degree {}", k);
            for (key, coeff) in row.iter() {
                let i = data.index_of(key).unwrap();
                let gen = &data.gens[i];
                println!(
                    "row member coeff {} {:?} {}",
                    gk_core::rat::display(coeff),
                    gen.family(),
                    describe(gen)
                );
                for t in total_differential_terms(gen) {
                    println!(
                        "   d-term {} {:?} {}",
                        gk_core::rat::display(&t.coeff),
                        t.gen.family(),
                        describe(&t.gen)
                    );
                }
            }
            return;
        }
    }
    panic!("no failing two-term row found");
}
