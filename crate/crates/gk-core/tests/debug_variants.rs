//! Counts unclosed relation rows at (9,0); used to compare convention
//! variants.

use gk_core::complex::Assembled;
use gk_core::differential::total_differential;
use gk_core::generator::FormalSum;

#[test]
#[ignore]
fn closure_count() {
    let a = Assembled::build(9, 0);
    let mut bad = 0usize;
    let mut total = 0usize;
    let mut by_type: std::collections::BTreeMap<(usize, &'static str), usize> = Default::default();
    for (&k, data) in &a.degrees {
        for (tag, row) in a.relation_sums_tagged(k) {
            total += 1;
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
            match a.degrees.get(&(k + 1)) {
                Some(next) => {
                    if !next.reduce(&image).is_empty() {
                        bad += 1;
                        *by_type.entry((k, tag)).or_default() += 1;
                    }
                }
                None => {
                    bad += 1;
                    *by_type.entry((k, tag)).or_default() += 1;
                }
            }
        }
    }
    println!("UNCLOSED {} of {} — {:?}", bad, total, by_type);
    let d = a.differentials();
    println!("DSQ {}", a.check_d_squared(&d));
    println!("DIMS {:?}", a.dims());
    if bad == 0 {
        let h = a.cohomology_dims(&d);
        println!("H {:?}", h);
    }
}
