//! The one-sided elementary set (left multiply, invert) against the larger set
//! with right multiplication and swaps: same components on every group here.

use std::collections::HashMap;

use ac_lab_core::graph::{MoveGraph, MoveSet};
use ac_lab_core::spec::parse_group_spec;
use ac_lab_core::{GroupTable, Limits};

fn wide_moves(g: &GroupTable, t: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..t.len() {
        let mut u = t.to_vec();
        u[i] = g.inv(t[i]);
        out.push(u);
        for j in (0..t.len()).filter(|&j| j != i) {
            for y in [t[j], g.inv(t[j])] {
                for v in [g.mul(t[i], y), g.mul(y, t[i])] {
                    let mut u = t.to_vec();
                    u[i] = v;
                    out.push(u);
                }
            }
            let mut u = t.to_vec();
            u.swap(i, j);
            out.push(u);
        }
    }
    out
}

fn same_partition(spec: &str, n: usize) {
    let limits = Limits::default();
    let g = parse_group_spec(spec, &limits).unwrap();
    let graph = MoveGraph::build(&g, n, MoveSet::Nielsen, &limits).unwrap();
    let partition = graph.components();
    let count = graph.vertex_count();
    let index: HashMap<Vec<usize>, usize> = (0..count).map(|v| (graph.tuple(v), v)).collect();

    let mut comp = vec![u32::MAX; count];
    let mut next = 0;
    for start in 0..count {
        if comp[start] != u32::MAX {
            continue;
        }
        comp[start] = next;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in wide_moves(&g, &graph.tuple(v)) {
                let u = index[&u];
                if comp[u] == u32::MAX {
                    comp[u] = next;
                    stack.push(u);
                }
            }
        }
        next += 1;
    }
    assert_eq!(comp, partition.component_of, "{spec} n={n}");
}

#[test]
fn one_sided_moves_reach_the_same_tuples() {
    for (spec, n) in [
        ("builtin: symmetric(3)", 2),
        ("builtin: symmetric(3)", 3),
        ("builtin: dihedral(4)", 2),
        ("builtin: dihedral(4)", 3),
        ("builtin: quaternion8", 2),
        ("builtin: affine(5)", 2),
        ("builtin: symmetric(4)", 2),
        ("abelian: 2,4", 2),
        ("builtin: cyclic(7)", 2),
    ] {
        same_partition(spec, n);
    }
}
