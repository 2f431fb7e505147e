//! Standing properties over the catalog groups.

use ac_lab_core::graph::{gacc1_check, MoveGraph, MoveSet};
use ac_lab_core::group::{abelianization, is_soluble, weight};
use ac_lab_core::moves::{ac_neighbors, is_generating, m_neighbors, normally_generates, TupleSpace};
use ac_lab_core::spec::parse_group_spec;
use ac_lab_core::{GroupTable, Limits};

const CATALOG: [&str; 8] = [
    "builtin: symmetric(3)",
    "builtin: dihedral(4)",
    "builtin: dihedral(6)",
    "builtin: quaternion8",
    "builtin: heisenberg(3)",
    "builtin: affine(5)",
    "abelian: 5,5",
    "wreath: 2,3",
];

fn catalog() -> Vec<(&'static str, GroupTable)> {
    let limits = Limits::default();
    CATALOG.iter().map(|&s| (s, parse_group_spec(s, &limits).unwrap())).collect()
}

fn tuples(g: &GroupTable, n: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    let space = TupleSpace::new(g.order(), n, &Limits::default()).unwrap();
    let total = (g.order() as u64).pow(n as u32);
    (0..total).map(move |c| space.decode(c))
}

#[test]
fn moves_preserve_normal_generation() {
    for (spec, g) in catalog() {
        for t in tuples(&g, 2).filter(|t| normally_generates(&g, t)) {
            for u in ac_neighbors(&g, &t).into_iter().chain(m_neighbors(&g, &t)) {
                assert!(normally_generates(&g, &u), "{spec}: {t:?} -> {u:?}");
            }
        }
    }
}

#[test]
fn soluble_normal_generation_is_decided_by_the_abelianization() {
    for (spec, g) in catalog() {
        assert!(is_soluble(&g), "{spec}");
        let ab = abelianization(&g);
        for n in 1..=2 {
            for t in tuples(&g, n) {
                let image = ab.project_tuple(&t);
                assert_eq!(normally_generates(&g, &t), is_generating(&ab.table, &image), "{spec}: {t:?}");
            }
        }
    }
}

#[test]
fn m_graph_is_connected_above_the_weight() {
    let limits = Limits::default();
    for (spec, g) in catalog() {
        let w = weight(&g, &limits).unwrap();
        for n in (w + 1)..=3 {
            let graph = MoveGraph::build(&g, n, MoveSet::MPlusInversion, &limits).unwrap();
            assert_eq!(graph.components().count(), 1, "{spec} n={n}");
        }
    }
}

#[test]
fn gacc1_holds_at_length_three() {
    let limits = Limits::default();
    for (spec, g) in catalog() {
        let report = gacc1_check(&g, 3, &limits).unwrap();
        assert!(report.pass, "{spec}: {report:?}");
    }
}
