//! Small G-graphs and groups used by tests, the CLI and the examples.

use std::sync::Arc;

use crate::ggraph::GGraph;
use crate::graph::{Dart, GraphBuilder, SerreGraph};
use crate::group::{Element, FiniteGroup, Subgroup};

fn z2(generator: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(2, Some(vec!["e".into(), generator.into()])).expect("Z/2"))
}

fn square() -> SerreGraph {
    let mut b = GraphBuilder::new();
    for name in ["E", "N", "W", "S"] {
        b.add_vertex(name);
    }
    b.add_edge("en", 0, 1);
    b.add_edge("nw", 1, 2);
    b.add_edge("ws", 2, 3);
    b.add_edge("se", 3, 0);
    b.build()
}

/// The square `E, N, W, S` with `Z/2 = {e, t}` reflecting through the
/// horizontal axis: `t` fixes `E` and `W` and swaps `N` with `S`.
pub fn c4refl() -> GGraph {
    let graph = square();
    let t_vertices = vec![0, 3, 2, 1];
    let t_darts = vec![7, 6, 5, 4, 3, 2, 1, 0];
    GGraph::from_generator_action(z2("t"), graph, &[(1, t_vertices, t_darts)]).expect("valid fixture")
}

/// The same square with the trivial group.
pub fn c4_trivial() -> GGraph {
    GGraph::trivial_action(square())
}

/// The hexagon `0..5` with `Z/2 = {e, rho}` acting by the half turn
/// `i ↦ i + 3`.
pub fn hex6() -> GGraph {
    let graph = SerreGraph::cycle(6);
    let vertices = (0..6).map(|i| (i + 3) % 6).collect();
    let darts = (0..12).map(|d| (d + 6) % 12).collect();
    GGraph::from_generator_action(z2("rho"), graph, &[(1, vertices, darts)]).expect("valid fixture")
}

/// The group `Z/4 = {e, r, r2, r3}`.
pub fn z4() -> Arc<FiniteGroup> {
    Arc::new(
        FiniteGroup::cyclic(4, Some(vec!["e".into(), "r".into(), "r2".into(), "r3".into()])).expect("Z/4"),
    )
}

/// Data for inducing the reflection square from `L = Z/2` up to `Z/4`:
/// the space over `L`, the big group and the embedding `t ↦ r2`.
pub fn ind_z4_data() -> (GGraph, Arc<FiniteGroup>, Vec<Element>) {
    (c4refl(), z4(), vec![0, 2])
}

/// `S3` acting on a hexagon (a subdivided triangle) by the symmetries of
/// the triangle; rotations `i ↦ i + 2`, the reflection `i ↦ −i`.
pub fn s3_hexagon() -> GGraph {
    let s3 = Arc::new(
        FiniteGroup::from_permutations(&[("r".into(), vec![2, 3, 4, 5, 0, 1]), ("s".into(), vec![0, 5, 4, 3, 2, 1])])
            .expect("S3"),
    );
    let r = s3.element_by_label("r").expect("generator");
    let s = s3.element_by_label("s").expect("generator");
    let graph = SerreGraph::cycle(6);
    let rot_v = (0..6).map(|i| (i + 2) % 6).collect();
    let rot_d = (0..12).map(|d| (d + 4) % 12).collect();
    let refl_v = (0..6).map(|i| (6 - i) % 6).collect();
    // edge i runs i → i+1; its mirror is edge −i−1, traversed backwards
    let refl_d = (0..12)
        .map(|d: usize| {
            let mirror = (12 - d / 2 - 1) % 6;
            2 * mirror + (1 - d % 2)
        })
        .collect();
    GGraph::from_generator_action(s3, graph, &[(r, rot_v, rot_d), (s, refl_v, refl_d)]).expect("valid fixture")
}

/// The coset graph of a family of subgroups: one vertex per coset `gH_i`
/// and one edge `gH_i - gH_j` whenever `H_i < H_j`, with `G` acting by
/// left translation.
pub fn coset_graph(group: Arc<FiniteGroup>, subgroups: &[Subgroup]) -> GGraph {
    let mut b = GraphBuilder::new();
    let mut blocks: Vec<(usize, Vec<Element>)> = Vec::new();
    for (i, h) in subgroups.iter().enumerate() {
        let reps = group.coset_reps(h);
        blocks.push((b.vertex_count(), reps.clone()));
        for r in reps {
            b.add_vertex(format!("{}H{i}", group.label(r)));
        }
    }
    let vertex_of = |i: usize, g: Element| {
        let (offset, reps) = &blocks[i];
        offset + reps.binary_search(&group.coset_rep(g, &subgroups[i])).expect("canonical rep")
    };
    let mut edges: Vec<(usize, usize, Element)> = Vec::new();
    for i in 0..subgroups.len() {
        for j in 0..subgroups.len() {
            if i != j && subgroups[i].len() < subgroups[j].len() && subgroups[i].is_subset_of(&subgroups[j]) {
                for &r in &blocks[i].1 {
                    b.add_edge(format!("c{}", edges.len()), vertex_of(i, r), vertex_of(j, r));
                    edges.push((i, j, r));
                }
            }
        }
    }
    let graph = b.build();
    let edge_of = |i: usize, j: usize, g: Element| {
        let rep = group.coset_rep(g, &subgroups[i]);
        edges.iter().position(|&e| e == (i, j, rep)).expect("edge exists")
    };
    let mut vertex_action = Vec::new();
    let mut dart_action = Vec::new();
    for a in group.elements() {
        let mut va = vec![0; graph.vertex_count()];
        for (i, (offset, reps)) in blocks.iter().enumerate() {
            for (k, &r) in reps.iter().enumerate() {
                va[offset + k] = vertex_of(i, group.mul(a, r));
            }
        }
        let mut da: Vec<Dart> = vec![0; graph.dart_count()];
        for (e, &(i, j, r)) in edges.iter().enumerate() {
            let image = edge_of(i, j, group.mul(a, r));
            da[2 * e] = 2 * image;
            da[2 * e + 1] = 2 * image + 1;
        }
        vertex_action.push(va);
        dart_action.push(da);
    }
    GGraph::new(group, graph, vertex_action, dart_action).expect("coset graphs carry valid actions")
}

fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let n = a.order() * b.order();
    let split = |x: usize| (x / b.order(), x % b.order());
    let table = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let ((xa, xb), (ya, yb)) = (split(x), split(y));
                    a.mul(xa, ya) * b.order() + b.mul(xb, yb)
                })
                .collect()
        })
        .collect();
    let labels = (0..n)
        .map(|x| {
            let (xa, xb) = split(x);
            format!("{}_{}", a.label(xa), b.label(xb))
        })
        .collect();
    FiniteGroup::from_table(table, Some(labels)).expect("products of groups are groups")
}

fn quaternions() -> FiniteGroup {
    // element 2u + s is (−1)^s times the unit u ∈ {1, i, j, k}
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let table = (0..8)
        .map(|x: usize| {
            (0..8)
                .map(|y: usize| {
                    let (u, s) = UNIT[x / 2][y / 2];
                    2 * u + (s + x % 2 + y % 2) % 2
                })
                .collect()
        })
        .collect();
    let labels = ["1", "m1", "i", "mi", "j", "mj", "k", "mk"].iter().map(|s| s.to_string()).collect();
    FiniteGroup::from_table(table, Some(labels)).expect("Q8")
}

/// One representative of every isomorphism type of group of order at most 8.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    let cyclic = |n| FiniteGroup::cyclic(n, None).expect("cyclic");
    let perms = |gens: &[(&str, Vec<usize>)]| {
        FiniteGroup::from_permutations(&gens.iter().map(|(n, p)| (n.to_string(), p.clone())).collect::<Vec<_>>())
            .expect("permutation group")
    };
    vec![
        ("Z1", cyclic(1)),
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z2xZ2", direct_product(&cyclic(2), &cyclic(2))),
        ("Z5", cyclic(5)),
        ("Z6", cyclic(6)),
        ("S3", perms(&[("r", vec![1, 2, 0]), ("s", vec![1, 0, 2])])),
        ("Z7", cyclic(7)),
        ("Z8", cyclic(8)),
        ("Z2xZ4", direct_product(&cyclic(2), &cyclic(4))),
        ("Z2xZ2xZ2", direct_product(&direct_product(&cyclic(2), &cyclic(2)), &cyclic(2))),
        ("D4", perms(&[("r", vec![1, 2, 3, 0]), ("s", vec![0, 3, 2, 1])])),
        ("Q8", quaternions()),
    ]
}
