//! Finite Serre graphs: darts with a fixed-point-free reversal.
//!
//! Every edge is a pair of darts `d`, `rev(d)`; the target of `d` is the
//! source of `rev(d)`. Loops and parallel edges are allowed.

use serde::Serialize;
use thiserror::Error;

pub type Vertex = usize;
pub type Dart = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerreGraphError {
    #[error("dart {dart} starts at vertex {start} but the graph has {vertices} vertices")]
    SourceOutOfRange { dart: Dart, start: Vertex, vertices: usize },
    #[error("reversal of dart {0} is out of range or not an involution")]
    NotAnInvolution(Dart),
    #[error("dart {0} is its own reverse")]
    FixedDart(Dart),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SerreGraph {
    vertex_labels: Vec<String>,
    source: Vec<Vertex>,
    rev: Vec<Dart>,
    dart_labels: Vec<String>,
    #[serde(skip)]
    out: Vec<Vec<Dart>>,
}

impl SerreGraph {
    pub fn new(
        vertex_labels: Vec<String>,
        source: Vec<Vertex>,
        rev: Vec<Dart>,
        dart_labels: Vec<String>,
    ) -> Result<Self, SerreGraphError> {
        let n = vertex_labels.len();
        let m = source.len();
        if rev.len() != m {
            return Err(SerreGraphError::NotAnInvolution(rev.len().min(m)));
        }
        if dart_labels.len() != m {
            return Err(SerreGraphError::LabelCount { expected: m, got: dart_labels.len() });
        }
        for d in 0..m {
            if source[d] >= n {
                return Err(SerreGraphError::SourceOutOfRange { dart: d, start: source[d], vertices: n });
            }
            if rev[d] >= m || rev[rev[d]] != d {
                return Err(SerreGraphError::NotAnInvolution(d));
            }
            if rev[d] == d {
                return Err(SerreGraphError::FixedDart(d));
            }
        }
        let mut out = vec![Vec::new(); n];
        for d in 0..m {
            out[source[d]].push(d);
        }
        Ok(SerreGraph { vertex_labels, source, rev, dart_labels, out })
    }

    /// A graph with `n` unlabeled vertices and no darts.
    pub fn discrete(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        SerreGraph::new(labels, Vec::new(), Vec::new(), Vec::new()).expect("no darts to check")
    }

    /// The cycle on `n ≥ 1` vertices with edge `i` running `i -> i+1`
    /// as darts `2i`, `2i+1`.
    pub fn cycle(n: usize) -> Self {
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.add_vertex(i.to_string());
        }
        for i in 0..n {
            b.add_edge(format!("e{i}"), i, (i + 1) % n);
        }
        b.build()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn dart_count(&self) -> usize {
        self.source.len()
    }

    pub fn edge_count(&self) -> usize {
        self.source.len() / 2
    }

    #[inline]
    pub fn source(&self, d: Dart) -> Vertex {
        self.source[d]
    }

    #[inline]
    pub fn target(&self, d: Dart) -> Vertex {
        self.source[self.rev[d]]
    }

    #[inline]
    pub fn rev(&self, d: Dart) -> Dart {
        self.rev[d]
    }

    /// Darts leaving `v`, ascending.
    pub fn darts_from(&self, v: Vertex) -> &[Dart] {
        &self.out[v]
    }

    pub fn vertex_label(&self, v: Vertex) -> &str {
        &self.vertex_labels[v]
    }

    pub fn dart_label(&self, d: Dart) -> &str {
        &self.dart_labels[d]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn dart_labels(&self) -> &[String] {
        &self.dart_labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.vertex_labels.iter().position(|l| l == label)
    }

    pub fn dart_by_label(&self, label: &str) -> Option<Dart> {
        self.dart_labels.iter().position(|l| l == label)
    }

    /// One dart per edge: the smaller index of each pair.
    pub fn positive_darts(&self) -> impl Iterator<Item = Dart> + '_ {
        (0..self.dart_count()).filter(move |&d| d < self.rev[d])
    }

    pub fn connected_components(&self) -> Components {
        let n = self.vertex_count();
        let mut of = vec![usize::MAX; n];
        let mut members = Vec::new();
        for start in 0..n {
            if of[start] != usize::MAX {
                continue;
            }
            let id = members.len();
            let mut comp = vec![start];
            of[start] = id;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &d in &self.out[v] {
                    let w = self.target(d);
                    if of[w] == usize::MAX {
                        of[w] = id;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            members.push(comp);
        }
        Components { of, members }
    }
}

/// A partition of the vertices into connected components, numbered by
/// their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Components {
    of: Vec<usize>,
    members: Vec<Vec<Vertex>>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn component_of(&self, v: Vertex) -> usize {
        self.of[v]
    }

    pub fn members(&self, c: usize) -> &[Vertex] {
        &self.members[c]
    }

    pub fn partition(&self) -> &[Vec<Vertex>] {
        &self.members
    }

    pub fn same(&self, u: Vertex, v: Vertex) -> bool {
        self.of[u] == self.of[v]
    }
}

/// Incremental construction; edge `k` gets darts `2k` (named as given)
/// and `2k+1` (named with a trailing `~`).
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertex_labels: Vec<String>,
    source: Vec<Vertex>,
    dart_labels: Vec<String>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Vertex {
        self.vertex_labels.push(label.into());
        self.vertex_labels.len() - 1
    }

    pub fn add_edge(&mut self, label: impl Into<String>, from: Vertex, to: Vertex) -> Dart {
        let label = label.into();
        self.source.push(from);
        self.source.push(to);
        self.dart_labels.push(format!("{label}~"));
        self.dart_labels.insert(self.dart_labels.len() - 1, label);
        self.source.len() - 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn build(self) -> SerreGraph {
        let m = self.source.len();
        let rev = (0..m).map(|d| d ^ 1).collect();
        SerreGraph::new(self.vertex_labels, self.source, rev, self.dart_labels)
            .expect("builder vertices are in range")
    }
}
