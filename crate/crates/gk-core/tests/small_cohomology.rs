//! End-to-end checks of the assembled complexes at small pairs: the chain
//! identity and the known cohomology in excess 26 and 27.

use gk_core::complex::Assembled;
use gk_core::specht::partition_label;

fn show(a: &Assembled) {
    println!(
        "(g,n)=({},{}): dims {:?}",
        a.g,
        a.n,
        a.dims()
    );
}

#[test]
fn pair_8_1() {
    let a = Assembled::build(8, 1);
    show(&a);
    let d = a.differentials();
    assert!(a.check_d_squared(&d), "chain identity");
    let h = a.cohomology_specht(&d);
    println!("H: {:?}", h);
    assert_eq!(h.len(), 1);
    let h23 = &h[&23];
    assert_eq!(h23.len(), 1);
    assert_eq!(partition_label(&h23[0].0), "1");
    assert_eq!(h23[0].1, 1);
}

#[test]
fn pair_9_0() {
    let a = Assembled::build(9, 0);
    show(&a);
    let d = a.differentials();
    assert!(a.check_d_squared(&d), "chain identity");
    let dims = a.cohomology_dims(&d);
    println!("H dims: {:?}", dims);
    assert_eq!(dims.len(), 1);
    assert_eq!(dims[&24], 1);
}

#[test]
fn pair_6_4() {
    let a = Assembled::build(6, 4);
    show(&a);
    let d = a.differentials();
    assert!(a.check_d_squared(&d), "chain identity");
    let h = a.cohomology_specht(&d);
    println!("H: {:?}", h);
    assert_eq!(h.len(), 1);
    let h20 = &h[&20];
    assert_eq!(h20.len(), 1);
    assert_eq!(partition_label(&h20[0].0), "1^4");
    assert_eq!(h20[0].1, 1);
}

#[test]
fn pair_7_3() {
    let a = Assembled::build(7, 3);
    show(&a);
    let d = a.differentials();
    assert!(a.check_d_squared(&d), "chain identity");
    let h = a.cohomology_specht(&d);
    println!("H: {:?}", h);
    assert_eq!(h.len(), 1);
    let h22 = &h[&22];
    let total: u64 = h22
        .iter()
        .map(|(l, m)| m * gk_core::specht::dimension(l))
        .sum();
    assert_eq!(total, 5);
    assert_eq!(h22.len(), 2);
    assert_eq!(partition_label(&h22[0].0), "21");
    assert_eq!(h22[0].1, 2);
    assert_eq!(partition_label(&h22[1].0), "1^3");
    assert_eq!(h22[1].1, 1);
}
