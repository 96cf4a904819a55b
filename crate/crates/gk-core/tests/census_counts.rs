//! Census structure: the excess-28 virtual representations and their
//! family-by-edge-group distribution.

use gk_core::census::generate_virtual_reps;
use gk_core::generator::Family;
use std::collections::BTreeMap;

#[test]
fn excess28_census_matches_expected_table() {
    let reps = generate_virtual_reps(3);
    let mut table: BTreeMap<(i64, Family), usize> = BTreeMap::new();
    for r in &reps {
        *table.entry((r.edge_group, r.family)).or_default() += 1;
    }
    let get = |b: i64, f: Family| table.get(&(b, f)).copied().unwrap_or(0);
    let mut lines = String::new();
    for b in 9..=14 {
        lines.push_str(&format!(
            "edges {:2}-n: A3 {:2}  A2 {:2}  B1 {:2}  Birr {:2}\n",
            b,
            get(b, Family::A3),
            get(b, Family::A2),
            get(b, Family::B1),
            get(b, Family::Birr),
        ));
    }
    println!("total {}\n{}", reps.len(), lines);

    assert_eq!(get(10, Family::A3), 6);
    assert_eq!(get(11, Family::A3), 17);
    assert_eq!(get(12, Family::A3), 12);
    assert_eq!(get(12, Family::A2), 8);
    assert_eq!(get(13, Family::A2), 8);
    assert_eq!(get(11, Family::B1), 7);
    assert_eq!(get(12, Family::B1), 19);
    assert_eq!(get(13, Family::B1), 12);
    assert_eq!(get(11, Family::Birr), 4);
    assert_eq!(get(12, Family::Birr), 9);
    assert_eq!(get(13, Family::Birr), 4);
    assert_eq!(reps.len(), 106);
}
