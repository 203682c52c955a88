mod common;

use std::collections::BTreeSet;

use cluster_lattice::quivers::DEFAULT_VERTEX_CAP;
use cluster_lattice::rootsys::{cartan_matrix, positive_roots, CoxeterElement, DynkinType};
use cluster_lattice::verify::{all_report, Instance};

fn check_roots(n: usize) {
    let spec = cartan_matrix(DynkinType::E, n).unwrap();
    let got: BTreeSet<Vec<i64>> = positive_roots(&spec).unwrap().into_iter().map(|r| r.0).collect();
    assert_eq!(got, common::orbit_positive_roots(&spec.cartan));
    assert_eq!(got.len(), common::positive_root_count(DynkinType::E, n));
}

#[test]
fn e_type_positive_roots_match_orbit_closure() {
    for n in 6..=8 {
        check_roots(n);
    }
}

#[test]
fn e6_passes_every_check() {
    let spec = cartan_matrix(DynkinType::E, 6).unwrap();
    let inst = Instance::build(spec, CoxeterElement::standard(6), DEFAULT_VERTEX_CAP).unwrap();
    assert_eq!(inst.plus.vertex_count() as u64, common::catalan(DynkinType::E, 6));
    let r = all_report(&inst).unwrap();
    assert!(r.passed, "{r:#?}");
}

#[test]
#[ignore = "about a minute even in release builds"]
fn e7_passes_every_check() {
    let spec = cartan_matrix(DynkinType::E, 7).unwrap();
    let inst = Instance::build(spec, CoxeterElement::standard(7), DEFAULT_VERTEX_CAP).unwrap();
    assert_eq!(inst.plus.vertex_count() as u64, common::catalan(DynkinType::E, 7));
    assert!(all_report(&inst).unwrap().passed);
}
