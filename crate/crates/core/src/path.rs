//! The fundamental groupoid of a finite graph.
//!
//! A homotopy class of paths rel endpoints is represented by its unique
//! reduced dart word. Vertex groups are free; bases come from BFS spanning
//! forests.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Dart, SerreGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("MalformedPath({0}): dart does not continue the path")]
    MalformedPath(usize),
    #[error("EndpointMismatch: path ends at {end} but the next starts at {start}")]
    EndpointMismatch { end: Vertex, start: Vertex },
    #[error("VertexNotInComponent({0})")]
    VertexNotInComponent(Vertex),
    #[error("NotALoop: path runs from {start} to {end}")]
    NotALoop { start: Vertex, end: Vertex },
    #[error("WrongBasepoint: loop is based at {found}, basis at {expected}")]
    WrongBasepoint { expected: Vertex, found: Vertex },
    #[error("BadLetter({0}): no such generator")]
    BadLetter(i32),
}

/// A dart sequence with its start vertex; consecutive darts must compose.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EdgePath {
    pub start: Vertex,
    pub darts: Vec<Dart>,
}

impl EdgePath {
    pub fn new(start: Vertex, darts: Vec<Dart>) -> Self {
        EdgePath { start, darts }
    }

    /// Index of the first dart that does not continue the path, if any.
    pub fn check(&self, graph: &SerreGraph) -> Result<Vertex, PathError> {
        if self.start >= graph.vertex_count() {
            return Err(PathError::MalformedPath(0));
        }
        let mut at = self.start;
        for (i, &d) in self.darts.iter().enumerate() {
            if d >= graph.dart_count() || graph.source(d) != at {
                return Err(PathError::MalformedPath(i));
            }
            at = graph.target(d);
        }
        Ok(at)
    }
}

/// A path with no backtracking `d, rev(d)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReducedPath {
    start: Vertex,
    end: Vertex,
    darts: Vec<Dart>,
}

impl fmt::Debug for ReducedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:?}:{}", self.start, self.darts, self.end)
    }
}

/// Cancels backtracking with a stack; one pass suffices.
fn push_reduced(stack: &mut Vec<Dart>, d: Dart, graph: &SerreGraph) {
    if stack.last() == Some(&graph.rev(d)) {
        stack.pop();
    } else {
        stack.push(d);
    }
}

/// Reduces a well-formed path to its normal form.
pub fn reduce(graph: &SerreGraph, path: &EdgePath) -> Result<ReducedPath, PathError> {
    let end = path.check(graph)?;
    let mut stack = Vec::with_capacity(path.darts.len());
    for &d in &path.darts {
        push_reduced(&mut stack, d, graph);
    }
    Ok(ReducedPath { start: path.start, end, darts: stack })
}

impl ReducedPath {
    pub fn empty(v: Vertex) -> Self {
        ReducedPath { start: v, end: v, darts: Vec::new() }
    }

    /// Builds and reduces a path from its darts.
    pub fn from_darts(graph: &SerreGraph, start: Vertex, darts: Vec<Dart>) -> Result<Self, PathError> {
        reduce(graph, &EdgePath::new(start, darts))
    }

    pub fn start(&self) -> Vertex {
        self.start
    }

    pub fn end(&self) -> Vertex {
        self.end
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.start == self.end
    }

    pub fn to_edge_path(&self) -> EdgePath {
        EdgePath::new(self.start, self.darts.clone())
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &ReducedPath, graph: &SerreGraph) -> Result<ReducedPath, PathError> {
        if self.end != other.start {
            return Err(PathError::EndpointMismatch { end: self.end, start: other.start });
        }
        let mut stack = self.darts.clone();
        for &d in &other.darts {
            push_reduced(&mut stack, d, graph);
        }
        Ok(ReducedPath { start: self.start, end: other.end, darts: stack })
    }

    pub fn invert(&self, graph: &SerreGraph) -> ReducedPath {
        ReducedPath {
            start: self.end,
            end: self.start,
            darts: self.darts.iter().rev().map(|&d| graph.rev(d)).collect(),
        }
    }

    /// Relabels through a map that sends the graph isomorphically onto
    /// (a subgraph of) another graph; reducedness is preserved.
    pub fn relabel(&self, vertex: impl Fn(Vertex) -> Vertex, dart: impl Fn(Dart) -> Dart) -> ReducedPath {
        ReducedPath {
            start: vertex(self.start),
            end: vertex(self.end),
            darts: self.darts.iter().map(|&d| dart(d)).collect(),
        }
    }

    /// Trusted constructor for darts already known to be reduced and to run
    /// from `start` to `end`.
    pub(crate) fn from_parts(start: Vertex, end: Vertex, darts: Vec<Dart>) -> Self {
        ReducedPath { start, end, darts }
    }
}

/// BFS spanning forest: one tree per component, rooted at its smallest
/// vertex, darts explored in index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanningForest {
    /// Dart from the parent into each vertex; `None` at roots.
    parent: Vec<Option<Dart>>,
    depth: Vec<usize>,
    component: Vec<usize>,
    roots: Vec<Vertex>,
    tree_edge: Vec<bool>,
}

impl SpanningForest {
    pub fn new(graph: &SerreGraph) -> Self {
        let n = graph.vertex_count();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut component = vec![usize::MAX; n];
        let mut roots = Vec::new();
        let mut tree_edge = vec![false; graph.dart_count()];
        for root in 0..n {
            if component[root] != usize::MAX {
                continue;
            }
            let id = roots.len();
            roots.push(root);
            component[root] = id;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &d in graph.darts_from(v) {
                    let w = graph.target(d);
                    if component[w] == usize::MAX {
                        component[w] = id;
                        parent[w] = Some(d);
                        depth[w] = depth[v] + 1;
                        tree_edge[d] = true;
                        tree_edge[graph.rev(d)] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        SpanningForest { parent, depth, component, roots, tree_edge }
    }

    pub fn component_of(&self, v: Vertex) -> usize {
        self.component[v]
    }

    pub fn component_count(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, component: usize) -> Vertex {
        self.roots[component]
    }

    pub fn is_tree_dart(&self, d: Dart) -> bool {
        self.tree_edge[d]
    }

    pub fn same_component(&self, u: Vertex, v: Vertex) -> bool {
        self.component[u] == self.component[v]
    }

    /// The tree path from `x` to `y`, or `None` across components.
    pub fn tree_path(&self, graph: &SerreGraph, x: Vertex, y: Vertex) -> Option<ReducedPath> {
        if !self.same_component(x, y) {
            return None;
        }
        let (mut a, mut b) = (x, y);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while self.depth[a] > self.depth[b] {
            let d = self.parent[a].expect("non-root");
            up.push(graph.rev(d));
            a = graph.source(d);
        }
        while self.depth[b] > self.depth[a] {
            let d = self.parent[b].expect("non-root");
            down.push(d);
            b = graph.source(d);
        }
        while a != b {
            let da = self.parent[a].expect("non-root");
            let db = self.parent[b].expect("non-root");
            up.push(graph.rev(da));
            down.push(db);
            a = graph.source(da);
            b = graph.source(db);
        }
        up.extend(down.into_iter().rev());
        Some(ReducedPath::from_parts(x, y, up))
    }
}

/// Tree path between two vertices, `None` when they are not connected.
pub fn path_between(graph: &SerreGraph, x: Vertex, y: Vertex) -> Option<ReducedPath> {
    SpanningForest::new(graph).tree_path(graph, x, y)
}

/// A reduced word in a free group; letter `i > 0` is the `i`-th
/// generator and `-i` its inverse.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn new(letters: Vec<i32>) -> Self {
        let mut w = FreeWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, letter: i32) {
        debug_assert!(letter != 0);
        if self.0.last() == Some(&-letter) {
            self.0.pop();
        } else {
            self.0.push(letter);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Sum of exponents, the abelianization in rank one.
    pub fn exponent_sum(&self) -> i64 {
        self.0.iter().map(|&l| l.signum() as i64).sum()
    }
}

/// All reduced words of length at most `max_len` over `rank` generators,
/// shortest first.
pub fn reduced_words(rank: usize, max_len: usize) -> Vec<FreeWord> {
    let mut out = vec![FreeWord::identity()];
    let mut frontier = vec![FreeWord::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 1..=rank as i32 {
                for l in [g, -g] {
                    if w.0.last() != Some(&-l) {
                        let mut v = w.clone();
                        v.0.push(l);
                        next.push(v);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// A free basis of `π₁(S, basepoint)`.
///
/// Generators are the non-tree edges; each contributes the dart whose
/// `(source, index)` is lexicographically smaller, and the loop
/// `tree(basepoint → source) · d · tree(target → basepoint)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pi1Basis {
    component: usize,
    basepoint: Vertex,
    generators: Vec<Dart>,
    loops: Vec<ReducedPath>,
    letter: BTreeMap<Dart, i32>,
}

impl Pi1Basis {
    pub fn new(
        graph: &SerreGraph,
        forest: &SpanningForest,
        component: usize,
        basepoint: Vertex,
    ) -> Result<Self, PathError> {
        if basepoint >= graph.vertex_count() || forest.component_of(basepoint) != component {
            return Err(PathError::VertexNotInComponent(basepoint));
        }
        let mut generators = Vec::new();
        for d in 0..graph.dart_count() {
            let r = graph.rev(d);
            if forest.component_of(graph.source(d)) != component || forest.is_tree_dart(d) {
                continue;
            }
            if (graph.source(d), d) < (graph.source(r), r) {
                generators.push(d);
            }
        }
        generators.sort_by_key(|&d| (graph.source(d), d));
        let mut letter = BTreeMap::new();
        let mut loops = Vec::with_capacity(generators.len());
        for (i, &d) in generators.iter().enumerate() {
            let i = i as i32 + 1;
            letter.insert(d, i);
            letter.insert(graph.rev(d), -i);
            let to = forest.tree_path(graph, basepoint, graph.source(d)).expect("same component");
            let back = forest.tree_path(graph, graph.target(d), basepoint).expect("same component");
            let edge = ReducedPath::from_parts(graph.source(d), graph.target(d), vec![d]);
            let l = to.compose(&edge, graph).and_then(|p| p.compose(&back, graph)).expect("composable");
            loops.push(l);
        }
        Ok(Pi1Basis { component, basepoint, generators, loops, letter })
    }

    pub fn basepoint(&self) -> Vertex {
        self.basepoint
    }

    pub fn component(&self) -> usize {
        self.component
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Dart] {
        &self.generators
    }

    pub fn loops(&self) -> &[ReducedPath] {
        &self.loops
    }

    pub fn generator_loop(&self, letter: i32, graph: &SerreGraph) -> Result<ReducedPath, PathError> {
        let i = letter.unsigned_abs() as usize;
        if letter == 0 || i > self.loops.len() {
            return Err(PathError::BadLetter(letter));
        }
        let l = &self.loops[i - 1];
        Ok(if letter > 0 { l.clone() } else { l.invert(graph) })
    }

    pub fn loop_to_word(&self, path: &ReducedPath) -> Result<FreeWord, PathError> {
        if !path.is_loop() {
            return Err(PathError::NotALoop { start: path.start, end: path.end });
        }
        if path.start != self.basepoint {
            return Err(PathError::WrongBasepoint { expected: self.basepoint, found: path.start });
        }
        Ok(FreeWord::new(path.darts.iter().filter_map(|d| self.letter.get(d).copied()).collect()))
    }

    pub fn word_to_loop(&self, word: &FreeWord, graph: &SerreGraph) -> Result<ReducedPath, PathError> {
        let mut acc = ReducedPath::empty(self.basepoint);
        for &l in word.letters() {
            acc = acc.compose(&self.generator_loop(l, graph)?, graph)?;
        }
        Ok(acc)
    }

    /// The same basis seen through an embedding of graphs.
    pub fn embed(&self, vertex: impl Fn(Vertex) -> Vertex, dart: impl Fn(Dart) -> Dart) -> Pi1Basis {
        Pi1Basis {
            component: self.component,
            basepoint: vertex(self.basepoint),
            generators: self.generators.iter().map(|&d| dart(d)).collect(),
            loops: self.loops.iter().map(|l| l.relabel(&vertex, &dart)).collect(),
            letter: self.letter.iter().map(|(&d, &l)| (dart(d), l)).collect(),
        }
    }
}

/// `pi1_basis` for a graph without a precomputed forest.
pub fn pi1_basis(graph: &SerreGraph, component: usize, basepoint: Vertex) -> Result<Pi1Basis, PathError> {
    Pi1Basis::new(graph, &SpanningForest::new(graph), component, basepoint)
}
