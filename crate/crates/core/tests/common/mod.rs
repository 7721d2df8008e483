//! Independent brute-force oracles and random inputs shared by the
//! integration tests and the acceptance harness.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use orbigroupoid_core::fixtures;
use orbigroupoid_core::ggraph::GGraph;
use orbigroupoid_core::graph::{Dart, SerreGraph, Vertex};
use orbigroupoid_core::group::{permutation_from_cycles, Element, FiniteGroup, Subgroup};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x0b17_9e0d;

/// Seeded from `ORBIGROUPOID_SEED` when set.
pub fn rng() -> ChaCha8Rng {
    let seed = std::env::var("ORBIGROUPOID_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    ChaCha8Rng::seed_from_u64(seed)
}

fn perms(gens: &[(&str, Vec<Vec<usize>>)], degree: usize) -> FiniteGroup {
    let gens: Vec<(String, Vec<usize>)> = gens
        .iter()
        .map(|(n, c)| (n.to_string(), permutation_from_cycles(c, degree).expect("valid cycles")))
        .collect();
    FiniteGroup::from_permutations(&gens).expect("permutation group")
}

/// Groups of order 12 on top of the small-group list.
pub fn groups_up_to_12() -> Vec<(&'static str, FiniteGroup)> {
    let mut out = fixtures::small_groups();
    out.push(("Z12", FiniteGroup::cyclic(12, None).unwrap()));
    out.push(("D6", perms(&[("r", vec![vec![0, 1, 2, 3, 4, 5]]), ("s", vec![vec![1, 5], vec![2, 4]])], 6)));
    out.push(("A4", perms(&[("a", vec![vec![0, 1, 2]]), ("b", vec![vec![0, 1], vec![2, 3]])], 4)));
    out
}

/// All subgroups, by closing every subset of the non-identity elements.
pub fn brute_subgroups(g: &FiniteGroup) -> BTreeSet<Vec<Element>> {
    let n = g.order();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (n - 1)) {
        let set: Vec<Element> =
            std::iter::once(0).chain((1..n).filter(|&i| mask & (1 << (i - 1)) != 0)).collect();
        let closed = set.iter().all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, g.inv(b)))));
        if closed {
            out.insert(set);
        }
    }
    out
}

/// Cancels a randomly chosen adjacent pair `d, rev d` until none is left.
pub fn naive_reduce(graph: &SerreGraph, darts: &[Dart], rng: &mut impl Rng) -> Vec<Dart> {
    let mut w = darts.to_vec();
    loop {
        let spots: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i + 1] == graph.rev(w[i])).collect();
        match spots.choose(rng) {
            Some(&i) => {
                w.drain(i..i + 2);
            }
            None => return w,
        }
    }
}

/// A random walk of `len` darts from `start` (shorter if stuck).
pub fn random_walk(graph: &SerreGraph, start: Vertex, len: usize, rng: &mut impl Rng) -> Vec<Dart> {
    let mut at = start;
    let mut out = Vec::new();
    for _ in 0..len {
        let Some(&d) = graph.darts_from(at).choose(rng) else { break };
        out.push(d);
        at = graph.target(d);
    }
    out
}

/// Every walk of at most `len` darts from `start` using only `allowed`.
pub fn walks(graph: &SerreGraph, allowed: &HashSet<Dart>, start: Vertex, len: usize) -> Vec<Vec<Dart>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![(start, Vec::new())];
    for _ in 0..len {
        let mut next = Vec::new();
        for (at, w) in frontier {
            for &d in graph.darts_from(at).iter().filter(|d| allowed.contains(d)) {
                let mut w2: Vec<Dart> = w.clone();
                w2.push(d);
                out.push(w2.clone());
                next.push((graph.target(d), w2));
            }
        }
        frontier = next;
    }
    out
}

/// Deterministic reduction by a stack, the textbook way.
pub fn stack_reduce(graph: &SerreGraph, darts: &[Dart]) -> Vec<Dart> {
    let mut out: Vec<Dart> = Vec::new();
    for &d in darts {
        if out.last() == Some(&graph.rev(d)) {
            out.pop();
        } else {
            out.push(d);
        }
    }
    out
}

/// Vertices and darts of `X^H`, straight from the action tables.
pub fn fixed_sets(x: &GGraph, h: &Subgroup) -> (BTreeSet<Vertex>, HashSet<Dart>) {
    let v = (0..x.graph().vertex_count()).filter(|&v| h.iter().all(|a| x.act_vertex(a, v) == v)).collect();
    let d = (0..x.graph().dart_count()).filter(|&d| h.iter().all(|a| x.act_dart(a, d) == d)).collect();
    (v, d)
}

/// The component of `v` in the subgraph spanned by `darts`.
pub fn component(graph: &SerreGraph, darts: &HashSet<Dart>, v: Vertex) -> BTreeSet<Vertex> {
    let mut seen = BTreeSet::from([v]);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &d in graph.darts_from(u).iter().filter(|d| darts.contains(d)) {
            if seen.insert(graph.target(d)) {
                queue.push_back(graph.target(d));
            }
        }
    }
    seen
}

/// `π₁` rank of the component of `v` in `X^H` from its Euler characteristic.
pub fn euler_rank(x: &GGraph, h: &Subgroup, v: Vertex) -> usize {
    let (_, darts) = fixed_sets(x, h);
    let comp = component(x.graph(), &darts, v);
    let edges = darts.iter().filter(|&&d| comp.contains(&x.graph().source(d))).count() / 2;
    edges + 1 - comp.len()
}

/// Number of reduced words of length at most `len` in a free group of rank `r`.
pub fn reduced_word_count(r: usize, len: usize) -> usize {
    if r == 0 {
        return 1;
    }
    let mut total = 1;
    let mut layer = 2 * r;
    for _ in 0..len {
        total += layer;
        layer *= 2 * r - 1;
    }
    total
}

/// The cycle on `n·m` vertices with `Z/m` rotating by `n` steps.
pub fn rotation_cycle(n: usize, m: usize) -> GGraph {
    let size = n * m;
    let g = Arc::new(FiniteGroup::cyclic(m, None).unwrap());
    let graph = SerreGraph::cycle(size);
    let vertices = (0..size).map(|i| (i + n) % size).collect();
    let darts = (0..2 * size).map(|d| (d + 2 * n) % (2 * size)).collect();
    GGraph::from_generator_action(g, graph, &[(1, vertices, darts)]).unwrap()
}

/// A coset graph for a random group of order at most 8 and a random
/// family of its subgroups.
pub fn random_ggraph(rng: &mut impl Rng) -> GGraph {
    let groups = fixtures::small_groups();
    let (_, g) = groups.choose(rng).unwrap().clone();
    let g = Arc::new(g);
    let subgroups = g.list_subgroups();
    let count = rng.gen_range(1..=3.min(subgroups.len()));
    let mut chosen: Vec<Subgroup> = subgroups.choose_multiple(rng, count).cloned().collect();
    chosen.sort_by_key(|h| (h.len(), h.elements().to_vec()));
    chosen.dedup();
    fixtures::coset_graph(g, &chosen)
}

/// The same G-graph with vertices renumbered by `perm` (darts keep their
/// numbers).
pub fn relabel_vertices(x: &GGraph, perm: &[Vertex]) -> GGraph {
    let graph = x.graph();
    let mut inverse = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inverse[p] = i;
    }
    let labels = (0..graph.vertex_count()).map(|p| graph.vertex_label(inverse[p]).to_string()).collect();
    let source = (0..graph.dart_count()).map(|d| perm[graph.source(d)]).collect();
    let rev = (0..graph.dart_count()).map(|d| graph.rev(d)).collect();
    let new_graph = SerreGraph::new(labels, source, rev, graph.dart_labels().to_vec()).unwrap();
    let vertex_action = x
        .vertex_action()
        .iter()
        .map(|row| (0..row.len()).map(|p| perm[row[inverse[p]]]).collect())
        .collect();
    GGraph::new(x.group().clone(), new_graph, vertex_action, x.dart_action().to_vec()).unwrap()
}

/// The Cayley graph for a greedy generating set, with `G` acting freely
/// by left multiplication. Edge `(g, s)` runs `g → gs`.
pub fn cayley_graph(g: Arc<FiniteGroup>) -> GGraph {
    let mut gens = Vec::new();
    let mut span = g.generated_by(&[]);
    for a in g.elements() {
        if !span.contains(a) {
            gens.push(a);
            span = g.generated_by(&gens);
        }
    }
    let mut b = orbigroupoid_core::graph::GraphBuilder::new();
    for a in g.elements() {
        b.add_vertex(format!("v{a}"));
    }
    let edge = |a: Element, k: usize| a * gens.len() + k;
    for a in g.elements() {
        for (k, &s) in gens.iter().enumerate() {
            b.add_edge(format!("c{}", edge(a, k)), a, g.mul(a, s));
        }
    }
    let graph = b.build();
    let vertex_action = g.elements().map(|h| g.elements().map(|a| g.mul(h, a)).collect()).collect();
    let dart_action = g
        .elements()
        .map(|h| {
            (0..graph.dart_count())
                .map(|d| {
                    let (e, side) = (d / 2, d % 2);
                    let (a, k) = (e / gens.len(), e % gens.len());
                    2 * edge(g.mul(h, a), k) + side
                })
                .collect()
        })
        .collect();
    GGraph::new(g, graph, vertex_action, dart_action).unwrap()
}
