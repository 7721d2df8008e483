//! Finite groups acting on Serre graphs without inversion, and the
//! constructions on them: fixed subgraphs, free quotients, induced spaces
//! `G ×_L X`, barycentric subdivision and equivariant maps.
//!
//! Graphs are the model of G-spaces throughout the crate; every
//! construction that needs topology reads it off the graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Components, Dart, SerreGraph, SerreGraphError, Vertex};
use crate::group::{Element, FiniteGroup, GroupError, GroupHom, Subgroup, IDENTITY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GGraphError {
    #[error(transparent)]
    Graph(#[from] SerreGraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("NotAnAction: {0}")]
    NotAnAction(String),
    #[error("NotEquivariantInvolution: element {element} does not commute with reversal or source at dart {dart}")]
    NotEquivariantInvolution { element: String, dart: String },
    #[error("EdgeInversion({element}, {dart}): the element reverses the edge; subdivide the graph (barycentric subdivision) and retry")]
    EdgeInversion { element: String, dart: String },
    #[error("NotNormal: conjugation by {element} moves the subgroup")]
    NotNormal { element: String },
    #[error("NotFree({point}): fixed by the non-identity element {element}")]
    NotFree { element: String, point: String },
    #[error("InversionInQuotient({dart}): subdivide the graph (barycentric subdivision) and retry")]
    InversionInQuotient { dart: String },
    #[error("EmbeddingNotInjective: element {element} maps to the identity")]
    EmbeddingNotInjective { element: String },
    #[error("EmbeddingNotHom: {0}")]
    EmbeddingNotHom(GroupError),
    #[error("NotEquivariant: {0}")]
    NotEquivariant(String),
    #[error("InconsistentMap: {0}")]
    InconsistentMap(String),
}

/// A finite group acting on a Serre graph without inversion.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct GGraph {
    group: Arc<FiniteGroup>,
    graph: SerreGraph,
    vertex_action: Vec<Vec<Vertex>>,
    dart_action: Vec<Vec<Dart>>,
}

impl fmt::Debug for GGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GGraph(|G|={}, |V|={}, |E|={})",
            self.group.order(),
            self.graph.vertex_count(),
            self.graph.edge_count()
        )
    }
}

fn check_permutation(perm: &[usize], size: usize, what: &str, g: &str) -> Result<(), GGraphError> {
    if perm.len() != size {
        return Err(GGraphError::NotAnAction(format!(
            "{g} acts on {} {what}s, expected {size}",
            perm.len()
        )));
    }
    let mut seen = vec![false; size];
    for &p in perm {
        if p >= size || std::mem::replace(&mut seen[p], true) {
            return Err(GGraphError::NotAnAction(format!("{g} does not permute the {what}s")));
        }
    }
    Ok(())
}

impl GGraph {
    /// Validates the action axioms, compatibility with reversal and source,
    /// and the absence of inversions.
    pub fn new(
        group: Arc<FiniteGroup>,
        graph: SerreGraph,
        vertex_action: Vec<Vec<Vertex>>,
        dart_action: Vec<Vec<Dart>>,
    ) -> Result<Self, GGraphError> {
        let x = GGraph { group, graph, vertex_action, dart_action };
        x.validate(false)?;
        Ok(x)
    }

    /// The trivial group acting on `graph`.
    pub fn trivial_action(graph: SerreGraph) -> Self {
        let vertex_action = vec![(0..graph.vertex_count()).collect()];
        let dart_action = vec![(0..graph.dart_count()).collect()];
        GGraph { group: Arc::new(FiniteGroup::trivial()), graph, vertex_action, dart_action }
    }

    /// One vertex, no edges, trivial group.
    pub fn point() -> Self {
        let mut b = crate::graph::GraphBuilder::new();
        b.add_vertex("pt");
        Self::trivial_action(b.build())
    }

    /// Extends the action of a generating set to the whole group.
    ///
    /// Each entry is `(element, vertex permutation, dart permutation)`;
    /// products act by composition, `(ab)·p = a·(b·p)`.
    pub fn from_generator_action(
        group: Arc<FiniteGroup>,
        graph: SerreGraph,
        generators: &[(Element, Vec<Vertex>, Vec<Dart>)],
    ) -> Result<Self, GGraphError> {
        let (vertex_action, dart_action) = close_action(&group, &graph, generators)?;
        GGraph::new(group, graph, vertex_action, dart_action)
    }

    fn validate(&self, allow_inversion: bool) -> Result<(), GGraphError> {
        let g = &self.group;
        let graph = &self.graph;
        let (nv, nd) = (graph.vertex_count(), graph.dart_count());
        if self.vertex_action.len() != g.order() || self.dart_action.len() != g.order() {
            return Err(GGraphError::NotAnAction(format!(
                "expected one permutation per element of a group of order {}",
                g.order()
            )));
        }
        for a in g.elements() {
            check_permutation(&self.vertex_action[a], nv, "vertex", g.label(a))?;
            check_permutation(&self.dart_action[a], nd, "dart", g.label(a))?;
        }
        if self.vertex_action[IDENTITY].iter().enumerate().any(|(i, &v)| i != v)
            || self.dart_action[IDENTITY].iter().enumerate().any(|(i, &d)| i != d)
        {
            return Err(GGraphError::NotAnAction("the identity moves a point".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                let vertices_ok = (0..nv).all(|v| self.vertex_action[ab][v] == self.vertex_action[a][self.vertex_action[b][v]]);
                let darts_ok = (0..nd).all(|d| self.dart_action[ab][d] == self.dart_action[a][self.dart_action[b][d]]);
                if !vertices_ok || !darts_ok {
                    return Err(GGraphError::NotAnAction(format!(
                        "({}*{}) does not act as {} after {}",
                        g.label(a),
                        g.label(b),
                        g.label(a),
                        g.label(b)
                    )));
                }
            }
        }
        for a in g.elements() {
            for d in 0..nd {
                let gd = self.dart_action[a][d];
                if self.dart_action[a][graph.rev(d)] != graph.rev(gd)
                    || graph.source(gd) != self.vertex_action[a][graph.source(d)]
                {
                    return Err(GGraphError::NotEquivariantInvolution {
                        element: g.label(a).to_string(),
                        dart: graph.dart_label(d).to_string(),
                    });
                }
            }
        }
        if !allow_inversion {
            for a in g.elements() {
                if let Some(d) = (0..nd).find(|&d| self.dart_action[a][d] == graph.rev(d)) {
                    return Err(GGraphError::EdgeInversion {
                        element: g.label(a).to_string(),
                        dart: graph.dart_label(d).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn graph(&self) -> &SerreGraph {
        &self.graph
    }

    #[inline]
    pub fn act_vertex(&self, g: Element, v: Vertex) -> Vertex {
        self.vertex_action[g][v]
    }

    #[inline]
    pub fn act_dart(&self, g: Element, d: Dart) -> Dart {
        self.dart_action[g][d]
    }

    pub fn vertex_action(&self) -> &[Vec<Vertex>] {
        &self.vertex_action
    }

    pub fn dart_action(&self) -> &[Vec<Dart>] {
        &self.dart_action
    }

    pub fn is_fixed_vertex(&self, h: &Subgroup, v: Vertex) -> bool {
        h.iter().all(|a| self.vertex_action[a][v] == v)
    }

    pub fn is_fixed_dart(&self, h: &Subgroup, d: Dart) -> bool {
        h.iter().all(|a| self.dart_action[a][d] == d)
    }

    /// Vertex stabilizer `I_v`.
    pub fn stabilizer(&self, v: Vertex) -> Subgroup {
        self.group
            .subgroup(self.group.elements().filter(|&a| self.vertex_action[a][v] == v))
            .expect("stabilizers are subgroups")
    }

    /// The subgraph of vertices and darts fixed pointwise by `h`.
    pub fn fixed_subgraph(&self, h: &Subgroup) -> FixedSubgraph {
        let vertices: Vec<Vertex> = (0..self.graph.vertex_count()).filter(|&v| self.is_fixed_vertex(h, v)).collect();
        let darts: Vec<Dart> = (0..self.graph.dart_count()).filter(|&d| self.is_fixed_dart(h, d)).collect();
        let mut vertex_index = vec![None; self.graph.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            vertex_index[v] = Some(i);
        }
        let mut dart_index = vec![None; self.graph.dart_count()];
        for (i, &d) in darts.iter().enumerate() {
            dart_index[d] = Some(i);
        }
        let local_vertex = |v: Vertex| vertex_index[v].expect("sources of fixed darts are fixed");
        let local_dart = |d: Dart| dart_index[d].expect("reversal commutes with the action");
        let graph = SerreGraph::new(
            vertices.iter().map(|&v| self.graph.vertex_label(v).to_string()).collect(),
            darts.iter().map(|&d| local_vertex(self.graph.source(d))).collect(),
            darts.iter().map(|&d| local_dart(self.graph.rev(d))).collect(),
            darts.iter().map(|&d| self.graph.dart_label(d).to_string()).collect(),
        )
        .expect("a fixed subgraph of a valid graph is valid");
        FixedSubgraph { subgroup: h.clone(), graph, vertices, darts, vertex_index, dart_index }
    }

    /// The quotient by a normal subgroup acting freely, with the projection.
    ///
    /// Vertices and darts of the quotient are the orbits, numbered in
    /// ascending order of their smallest member.
    pub fn quotient_graph(self: &Arc<Self>, n: &Subgroup) -> Result<(Arc<GGraph>, EquivariantGraphMap), GGraphError> {
        let g = &self.group;
        let graph = &self.graph;
        g.is_normal(n).map_err(|e| match e {
            GroupError::NotNormal { element } => GGraphError::NotNormal { element: g.label(element).to_string() },
            other => GGraphError::Group(other),
        })?;
        for a in n.iter().filter(|&a| a != IDENTITY) {
            if let Some(v) = (0..graph.vertex_count()).find(|&v| self.act_vertex(a, v) == v) {
                return Err(GGraphError::NotFree {
                    element: g.label(a).to_string(),
                    point: graph.vertex_label(v).to_string(),
                });
            }
            if let Some(d) = (0..graph.dart_count()).find(|&d| self.act_dart(a, d) == d) {
                return Err(GGraphError::NotFree {
                    element: g.label(a).to_string(),
                    point: graph.dart_label(d).to_string(),
                });
            }
        }
        let vertex_rep = |v: Vertex| n.iter().map(|a| self.act_vertex(a, v)).min().expect("nonempty");
        let dart_rep = |d: Dart| n.iter().map(|a| self.act_dart(a, d)).min().expect("nonempty");
        let vreps: BTreeSet<Vertex> = (0..graph.vertex_count()).map(vertex_rep).collect();
        let dreps: BTreeSet<Dart> = (0..graph.dart_count()).map(dart_rep).collect();
        let vindex: BTreeMap<Vertex, usize> = vreps.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let dindex: BTreeMap<Dart, usize> = dreps.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let vertex_map: Vec<Vertex> = (0..graph.vertex_count()).map(|v| vindex[&vertex_rep(v)]).collect();
        let dart_map: Vec<Dart> = (0..graph.dart_count()).map(|d| dindex[&dart_rep(d)]).collect();

        let mut rev = Vec::with_capacity(dreps.len());
        for &d in &dreps {
            let r = dart_map[graph.rev(d)];
            if r == dart_map[d] {
                return Err(GGraphError::InversionInQuotient { dart: graph.dart_label(d).to_string() });
            }
            rev.push(r);
        }
        let quotient_graph = SerreGraph::new(
            vreps.iter().map(|&v| graph.vertex_label(v).to_string()).collect(),
            dreps.iter().map(|&d| vertex_map[graph.source(d)]).collect(),
            rev,
            dreps.iter().map(|&d| graph.dart_label(d).to_string()).collect(),
        )?;
        let (quotient_group, projection) = g.quotient(n)?;
        let coset_reps = g.coset_reps(n);
        let vertex_action = coset_reps
            .iter()
            .map(|&c| vreps.iter().map(|&v| vertex_map[self.act_vertex(c, v)]).collect())
            .collect();
        let dart_action = coset_reps
            .iter()
            .map(|&c| dreps.iter().map(|&d| dart_map[self.act_dart(c, d)]).collect())
            .collect();
        let target = GGraph { group: quotient_group, graph: quotient_graph, vertex_action, dart_action };
        target.validate(false).map_err(|e| match e {
            GGraphError::EdgeInversion { dart, .. } => GGraphError::InversionInQuotient { dart },
            other => other,
        })?;
        let target = Arc::new(target);
        let map = EquivariantGraphMap::new(
            projection,
            self.clone(),
            target.clone(),
            vertex_map,
            dart_map.into_iter().map(DartImage::Dart).collect(),
        )?;
        Ok((target, map))
    }

    /// The induced space `G ×_L X` for `X = self` over `L`, given an
    /// embedding `L → G` as an element map, with the inclusion `x ↦ [e, x]`.
    ///
    /// `[g, v]` is stored as `coset_index(gL)·|V| + ℓv` where `c` is the
    /// minimal representative of `gL` and `g = c·ι(ℓ)`; the `[e, ·]` copy is
    /// therefore the first block of vertices and darts.
    pub fn induced_graph(
        self: &Arc<Self>,
        g: Arc<FiniteGroup>,
        embedding: &[Element],
    ) -> Result<(Arc<GGraph>, EquivariantGraphMap), GGraphError> {
        let l = &self.group;
        let iota = GroupHom::new(l.clone(), g.clone(), embedding.to_vec()).map_err(GGraphError::EmbeddingNotHom)?;
        if let Some(k) = iota.kernel().iter().find(|&k| k != IDENTITY) {
            return Err(GGraphError::EmbeddingNotInjective { element: l.label(k).to_string() });
        }
        let image = iota.image(&l.whole());
        let reps = g.coset_reps(&image);
        let rep_index: BTreeMap<Element, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let (nv, nd) = (self.graph.vertex_count(), self.graph.dart_count());
        // g ↦ (coset index, ℓ) with g = c·ι(ℓ)
        let split = |a: Element| {
            let c = g.coset_rep(a, &image);
            let ell = iota.preimage_of(g.mul(g.inv(c), a)).expect("c⁻¹a lies in the image");
            (rep_index[&c], ell)
        };

        let mut vertex_labels = Vec::with_capacity(reps.len() * nv);
        let mut dart_labels = Vec::with_capacity(reps.len() * nd);
        let mut source = Vec::with_capacity(reps.len() * nd);
        let mut rev = Vec::with_capacity(reps.len() * nd);
        for (i, &c) in reps.iter().enumerate() {
            for v in 0..nv {
                vertex_labels.push(format!("{}_{}", g.label(c), self.graph.vertex_label(v)));
            }
            for d in 0..nd {
                dart_labels.push(format!("{}_{}", g.label(c), self.graph.dart_label(d)));
                source.push(i * nv + self.graph.source(d));
                rev.push(i * nd + self.graph.rev(d));
            }
        }
        let graph = SerreGraph::new(vertex_labels, source, rev, dart_labels)?;
        let mut vertex_action = Vec::with_capacity(g.order());
        let mut dart_action = Vec::with_capacity(g.order());
        for a in g.elements() {
            let mut va = Vec::with_capacity(reps.len() * nv);
            let mut da = Vec::with_capacity(reps.len() * nd);
            for &c in &reps {
                let (j, ell) = split(g.mul(a, c));
                va.extend((0..nv).map(|v| j * nv + self.act_vertex(ell, v)));
                da.extend((0..nd).map(|d| j * nd + self.act_dart(ell, d)));
            }
            vertex_action.push(va);
            dart_action.push(da);
        }
        let induced = Arc::new(GGraph::new(g, graph, vertex_action, dart_action)?);
        let inclusion = EquivariantGraphMap::new(
            iota,
            self.clone(),
            induced.clone(),
            (0..nv).collect(),
            (0..nd).map(DartImage::Dart).collect(),
        )?;
        Ok((induced, inclusion))
    }

    /// Decodes a vertex of an induced space built by [`GGraph::induced_graph`]
    /// into (coset index, vertex of the original space).
    pub fn induced_coordinates(base_vertices: usize, v: Vertex) -> (usize, Vertex) {
        (v / base_vertices, v % base_vertices)
    }
}

#[allow(clippy::type_complexity)]
fn close_action(
    group: &FiniteGroup,
    graph: &SerreGraph,
    generators: &[(Element, Vec<Vertex>, Vec<Dart>)],
) -> Result<(Vec<Vec<Vertex>>, Vec<Vec<Dart>>), GGraphError> {
    let (nv, nd) = (graph.vertex_count(), graph.dart_count());
    for (a, vp, dp) in generators {
        let label = group.label(*a);
        check_permutation(vp, nv, "vertex", label)?;
        check_permutation(dp, nd, "dart", label)?;
    }
    let mut vertex_action: Vec<Option<Vec<Vertex>>> = vec![None; group.order()];
    let mut dart_action: Vec<Option<Vec<Dart>>> = vec![None; group.order()];
    vertex_action[IDENTITY] = Some((0..nv).collect());
    dart_action[IDENTITY] = Some((0..nd).collect());
    let mut queue = std::collections::VecDeque::from([IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for (s, vp, dp) in generators {
            let xs = group.mul(x, *s);
            let xv = vertex_action[x].as_ref().expect("queued elements act");
            let xd = dart_action[x].as_ref().expect("queued elements act");
            let v: Vec<Vertex> = vp.iter().map(|&p| xv[p]).collect();
            let d: Vec<Dart> = dp.iter().map(|&p| xd[p]).collect();
            match &vertex_action[xs] {
                Some(existing) => {
                    if *existing != v || dart_action[xs].as_ref() != Some(&d) {
                        return Err(GGraphError::NotAnAction(format!(
                            "two words for {} act differently",
                            group.label(xs)
                        )));
                    }
                }
                None => {
                    vertex_action[xs] = Some(v);
                    dart_action[xs] = Some(d);
                    queue.push_back(xs);
                }
            }
        }
    }
    let mut vs = Vec::with_capacity(group.order());
    let mut ds = Vec::with_capacity(group.order());
    for a in group.elements() {
        match (vertex_action[a].take(), dart_action[a].take()) {
            (Some(v), Some(d)) => {
                vs.push(v);
                ds.push(d);
            }
            _ => {
                return Err(GGraphError::NotAnAction(format!(
                    "element {} is not generated by the listed elements",
                    group.label(a)
                )))
            }
        }
    }
    Ok((vs, ds))
}

/// Barycentric subdivision of a candidate action that may invert edges.
///
/// Each edge `{d, rev d}` gets a midpoint; dart `d` becomes `2d`
/// (`source(d) → midpoint`) with reverse `2d+1`. The group permutes the
/// new darts by `g·2d = 2(g·d)`, so no inversion survives.
pub fn subdivide(
    group: Arc<FiniteGroup>,
    graph: SerreGraph,
    vertex_action: Vec<Vec<Vertex>>,
    dart_action: Vec<Vec<Dart>>,
) -> Result<GGraph, GGraphError> {
    subdivide_candidate(GGraph { group, graph, vertex_action, dart_action })
}

/// [`subdivide`] for an action given on generators.
pub fn subdivide_from_generators(
    group: Arc<FiniteGroup>,
    graph: SerreGraph,
    generators: &[(Element, Vec<Vertex>, Vec<Dart>)],
) -> Result<GGraph, GGraphError> {
    let (vertex_action, dart_action) = close_action(&group, &graph, generators)?;
    subdivide(group, graph, vertex_action, dart_action)
}

fn subdivide_candidate(candidate: GGraph) -> Result<GGraph, GGraphError> {
    candidate.validate(true)?;
    let old = &candidate.graph;
    let nv = old.vertex_count();
    let edge_of = |d: Dart| d.min(old.rev(d));
    let edges: Vec<Dart> = old.positive_darts().collect();
    let mid_index: BTreeMap<Dart, usize> = edges.iter().enumerate().map(|(i, &e)| (e, nv + i)).collect();
    let mut vertex_labels = old.vertex_labels().to_vec();
    vertex_labels.extend(edges.iter().map(|&e| format!("m_{}", old.dart_label(e))));
    let mut source = Vec::new();
    let mut rev = Vec::new();
    let mut dart_labels = Vec::new();
    for d in 0..old.dart_count() {
        source.push(old.source(d));
        source.push(mid_index[&edge_of(d)]);
        rev.push(2 * d + 1);
        rev.push(2 * d);
        dart_labels.push(format!("{}_h", old.dart_label(d)));
        dart_labels.push(format!("{}_h~", old.dart_label(d)));
    }
    let graph = SerreGraph::new(vertex_labels, source, rev, dart_labels)?;
    let vertex_action = candidate
        .group
        .elements()
        .map(|a| {
            let mut va = candidate.vertex_action[a].clone();
            va.extend(edges.iter().map(|&e| mid_index[&edge_of(candidate.act_dart(a, e))]));
            va
        })
        .collect();
    let dart_action = candidate
        .group
        .elements()
        .map(|a| {
            (0..2 * old.dart_count())
                .map(|h| 2 * candidate.act_dart(a, h / 2) + h % 2)
                .collect()
        })
        .collect();
    GGraph::new(candidate.group.clone(), graph, vertex_action, dart_action)
}

/// `X^H` as a graph in its own right, with the embedding into `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedSubgraph {
    subgroup: Subgroup,
    graph: SerreGraph,
    vertices: Vec<Vertex>,
    darts: Vec<Dart>,
    vertex_index: Vec<Option<usize>>,
    dart_index: Vec<Option<usize>>,
}

impl FixedSubgraph {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn graph(&self) -> &SerreGraph {
        &self.graph
    }

    /// Global vertices in ascending order; position = local index.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn global_vertex(&self, local: usize) -> Vertex {
        self.vertices[local]
    }

    pub fn global_dart(&self, local: usize) -> Dart {
        self.darts[local]
    }

    pub fn local_vertex(&self, v: Vertex) -> Option<usize> {
        self.vertex_index.get(v).copied().flatten()
    }

    pub fn local_dart(&self, d: Dart) -> Option<usize> {
        self.dart_index.get(d).copied().flatten()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.local_vertex(v).is_some()
    }

    pub fn contains_dart(&self, d: Dart) -> bool {
        self.local_dart(d).is_some()
    }

    pub fn components(&self) -> Components {
        self.graph.connected_components()
    }
}

/// Image of a dart under an equivariant graph map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DartImage {
    Dart(Dart),
    /// The edge is crushed to this vertex.
    Collapse(Vertex),
}

/// A pair `(φ, f)` with `f(g·x) = φ(g)·f(x)`.
#[derive(Clone)]
pub struct EquivariantGraphMap {
    hom: GroupHom,
    source: Arc<GGraph>,
    target: Arc<GGraph>,
    vertex_map: Vec<Vertex>,
    dart_map: Vec<DartImage>,
}

impl fmt::Debug for EquivariantGraphMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EquivariantGraphMap")
            .field("hom", &self.hom)
            .field("vertex_map", &self.vertex_map)
            .field("dart_map", &self.dart_map)
            .finish()
    }
}

impl EquivariantGraphMap {
    pub fn new(
        hom: GroupHom,
        source: Arc<GGraph>,
        target: Arc<GGraph>,
        vertex_map: Vec<Vertex>,
        dart_map: Vec<DartImage>,
    ) -> Result<Self, GGraphError> {
        let m = EquivariantGraphMap { hom, source, target, vertex_map, dart_map };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), GGraphError> {
        let (x, y) = (&self.source, &self.target);
        if **self.hom.source() != *x.group || **self.hom.target() != *y.group {
            return Err(GGraphError::InconsistentMap("homomorphism does not match the groups".into()));
        }
        let (xg, yg) = (x.graph(), y.graph());
        if self.vertex_map.len() != xg.vertex_count() || self.dart_map.len() != xg.dart_count() {
            return Err(GGraphError::InconsistentMap("map sizes do not match the source graph".into()));
        }
        if self.vertex_map.iter().any(|&v| v >= yg.vertex_count()) {
            return Err(GGraphError::InconsistentMap("vertex image out of range".into()));
        }
        for d in 0..xg.dart_count() {
            let (s, t) = (self.vertex_map[xg.source(d)], self.vertex_map[xg.target(d)]);
            let ok = match (self.dart_map[d], self.dart_map[xg.rev(d)]) {
                (DartImage::Dart(e), DartImage::Dart(r)) => {
                    e < yg.dart_count() && r == yg.rev(e) && yg.source(e) == s && yg.target(e) == t
                }
                (DartImage::Collapse(w), DartImage::Collapse(w2)) => w == w2 && w == s && w == t,
                _ => false,
            };
            if !ok {
                return Err(GGraphError::InconsistentMap(format!(
                    "dart {} is not sent to an edge between the images of its endpoints",
                    xg.dart_label(d)
                )));
            }
        }
        for a in x.group.elements() {
            let b = self.hom.apply(a);
            for v in 0..xg.vertex_count() {
                if self.vertex_map[x.act_vertex(a, v)] != y.act_vertex(b, self.vertex_map[v]) {
                    return Err(GGraphError::NotEquivariant(format!(
                        "f({}·{}) != φ({})·f({})",
                        x.group.label(a),
                        xg.vertex_label(v),
                        x.group.label(a),
                        xg.vertex_label(v)
                    )));
                }
            }
            for d in 0..xg.dart_count() {
                let expected = match self.dart_map[d] {
                    DartImage::Dart(e) => DartImage::Dart(y.act_dart(b, e)),
                    DartImage::Collapse(w) => DartImage::Collapse(y.act_vertex(b, w)),
                };
                if self.dart_map[x.act_dart(a, d)] != expected {
                    return Err(GGraphError::NotEquivariant(format!(
                        "f({}·{}) != φ({})·f({})",
                        x.group.label(a),
                        xg.dart_label(d),
                        x.group.label(a),
                        xg.dart_label(d)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: Arc<GGraph>) -> Self {
        let nv = x.graph().vertex_count();
        let nd = x.graph().dart_count();
        EquivariantGraphMap {
            hom: GroupHom::identity(x.group.clone()),
            source: x.clone(),
            target: x,
            vertex_map: (0..nv).collect(),
            dart_map: (0..nd).map(DartImage::Dart).collect(),
        }
    }

    /// The map crushing `x` to a point over the trivial group.
    pub fn to_point(x: Arc<GGraph>) -> Self {
        let nv = x.graph().vertex_count();
        let nd = x.graph().dart_count();
        EquivariantGraphMap {
            hom: GroupHom::to_trivial(x.group.clone()),
            source: x,
            target: Arc::new(GGraph::point()),
            vertex_map: vec![0; nv],
            dart_map: vec![DartImage::Collapse(0); nd],
        }
    }

    /// `other ∘ self`
    pub fn then(&self, other: &EquivariantGraphMap) -> Result<Self, GGraphError> {
        if *self.target != *other.source {
            return Err(GGraphError::InconsistentMap("maps are not composable".into()));
        }
        let hom = self.hom.then(&other.hom)?;
        let vertex_map = self.vertex_map.iter().map(|&v| other.vertex_map[v]).collect();
        let dart_map = self
            .dart_map
            .iter()
            .map(|&img| match img {
                DartImage::Dart(e) => other.dart_map[e],
                DartImage::Collapse(w) => DartImage::Collapse(other.vertex_map[w]),
            })
            .collect();
        EquivariantGraphMap::new(hom, self.source.clone(), other.target.clone(), vertex_map, dart_map)
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn source(&self) -> &Arc<GGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GGraph> {
        &self.target
    }

    #[inline]
    pub fn vertex(&self, v: Vertex) -> Vertex {
        self.vertex_map[v]
    }

    #[inline]
    pub fn dart(&self, d: Dart) -> DartImage {
        self.dart_map[d]
    }

    pub fn vertex_map(&self) -> &[Vertex] {
        &self.vertex_map
    }

    pub fn dart_map(&self) -> &[DartImage] {
        &self.dart_map
    }

    pub fn collapses(&self) -> bool {
        self.dart_map.iter().any(|d| matches!(d, DartImage::Collapse(_)))
    }

    pub fn is_injective(&self) -> bool {
        let vs: BTreeSet<Vertex> = self.vertex_map.iter().copied().collect();
        let ds: BTreeSet<Dart> = self
            .dart_map
            .iter()
            .filter_map(|d| match d {
                DartImage::Dart(e) => Some(*e),
                DartImage::Collapse(_) => None,
            })
            .collect();
        vs.len() == self.vertex_map.len() && ds.len() == self.dart_map.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::GraphBuilder;

    #[test]
    fn trivial_group_is_valid_on_any_graph() {
        let x = GGraph::trivial_action(SerreGraph::cycle(5));
        assert!(x.validate(false).is_ok());
    }

    #[test]
    fn c4refl_is_valid_and_maps_en_to_es() {
        let x = fixtures::c4refl();
        let g = x.graph();
        let en = g.dart_by_label("en").unwrap();
        let image = x.act_dart(1, en);
        assert_eq!(g.vertex_label(g.source(image)), "E");
        assert_eq!(g.vertex_label(g.target(image)), "S");
    }

    #[test]
    fn swapping_parallel_darts_is_an_inversion() {
        let mut b = GraphBuilder::new();
        let u = b.add_vertex("u");
        let v = b.add_vertex("v");
        b.add_edge("a", u, v);
        b.add_edge("b", v, u);
        let graph = b.build();
        let z2 = Arc::new(FiniteGroup::cyclic(2, None).unwrap());
        let err = GGraph::new(
            z2,
            graph,
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]],
        )
        .unwrap_err();
        assert!(matches!(err, GGraphError::EdgeInversion { .. }));
        assert!(err.to_string().starts_with("EdgeInversion"));
        assert!(err.to_string().contains("subdivi"));
    }

    #[test]
    fn non_actions_are_rejected() {
        let z2 = Arc::new(FiniteGroup::cyclic(2, None).unwrap());
        // the generator acts as a 3-cycle, so τ² ≠ e
        let err = GGraph::new(
            z2.clone(),
            SerreGraph::discrete(3),
            vec![vec![0, 1, 2], vec![1, 2, 0]],
            vec![vec![], vec![]],
        )
        .unwrap_err();
        assert!(matches!(err, GGraphError::NotAnAction(_)));
        // the action ignores the endpoint of the only edge
        let mut b = GraphBuilder::new();
        let u = b.add_vertex("u");
        let v = b.add_vertex("v");
        b.add_vertex("w");
        b.add_edge("a", u, v);
        let err = GGraph::new(
            z2,
            b.build(),
            vec![vec![0, 1, 2], vec![0, 2, 1]],
            vec![vec![0, 1], vec![0, 1]],
        )
        .unwrap_err();
        assert!(matches!(err, GGraphError::NotEquivariantInvolution { .. }));
    }

    #[test]
    fn fixed_subgraphs_of_fixtures() {
        let x = fixtures::c4refl();
        let g = x.group();
        let full = x.fixed_subgraph(&g.whole());
        let names: Vec<&str> = full.vertices().iter().map(|&v| x.graph().vertex_label(v)).collect();
        assert_eq!(names, vec!["E", "W"]);
        assert_eq!(full.graph().dart_count(), 0);
        assert_eq!(full.components().count(), 2);
        let all = x.fixed_subgraph(&Subgroup::trivial());
        assert_eq!(all.graph(), x.graph());

        let hex = fixtures::hex6();
        let empty = hex.fixed_subgraph(&hex.group().whole());
        assert_eq!(empty.graph().vertex_count(), 0);
    }

    #[test]
    fn hexagon_quotient_is_a_triangle() {
        let hex = Arc::new(fixtures::hex6());
        let (tri, p) = hex.quotient_graph(&hex.group().whole()).unwrap();
        assert_eq!(tri.group().order(), 1);
        assert_eq!(tri.graph().vertex_count(), 3);
        assert_eq!(tri.graph().edge_count(), 3);
        assert_eq!(p.vertex_map(), &[0, 1, 2, 0, 1, 2]);

        let (copy, q) = hex.quotient_graph(&Subgroup::trivial()).unwrap();
        assert_eq!(copy.graph(), hex.graph());
        assert_eq!(q.vertex_map(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn quotient_errors() {
        let x = Arc::new(fixtures::c4refl());
        let err = x.quotient_graph(&x.group().whole()).unwrap_err();
        assert_eq!(err, GGraphError::NotFree { element: "t".into(), point: "E".into() });
        assert!(err.to_string().starts_with("NotFree(E)"));

        let s3 = fixtures::s3_hexagon();
        let order_two = s3.group().list_subgroups()[1].clone();
        let err = Arc::new(s3).quotient_graph(&order_two).unwrap_err();
        assert!(matches!(err, GGraphError::NotNormal { .. }));
    }

    #[test]
    fn induced_space_of_the_reflection_square() {
        let (x, g, embedding) = fixtures::ind_z4_data();
        let x = Arc::new(x);
        let (induced, inclusion) = x.induced_graph(g.clone(), &embedding).unwrap();
        assert_eq!(induced.graph().vertex_count(), 8);
        assert_eq!(induced.graph().edge_count(), 8);
        assert_eq!(induced.graph().connected_components().count(), 2);
        assert_eq!(inclusion.vertex_map(), &[0, 1, 2, 3]);

        let image = g.subgroup(embedding.iter().copied()).unwrap();
        let fixed = induced.fixed_subgraph(&image);
        let names: Vec<&str> = fixed.vertices().iter().map(|&v| induced.graph().vertex_label(v)).collect();
        assert_eq!(names, vec!["e_E", "e_W", "r_E", "r_W"]);
        // restricted to the [e, ·] copy this is the original fixed subgraph
        let original = x.fixed_subgraph(&x.group().whole());
        let first_copy: Vec<Vertex> = fixed.vertices().iter().copied().filter(|&v| v < 4).collect();
        assert_eq!(first_copy, original.vertices());
    }

    #[test]
    fn induction_along_the_identity_is_a_copy() {
        let x = Arc::new(fixtures::c4refl());
        let (copy, inclusion) = x.induced_graph(x.group().clone(), &[0, 1]).unwrap();
        assert_eq!(copy.graph().vertex_count(), 4);
        assert_eq!(copy.vertex_action(), x.vertex_action());
        assert!(inclusion.is_injective());
    }

    #[test]
    fn embedding_errors() {
        let x = Arc::new(fixtures::c4refl());
        let z4 = Arc::new(FiniteGroup::cyclic(4, None).unwrap());
        assert!(matches!(
            x.induced_graph(z4.clone(), &[0, 1]).unwrap_err(),
            GGraphError::EmbeddingNotHom(_)
        ));
        let z1 = Arc::new(FiniteGroup::trivial());
        assert!(matches!(
            x.induced_graph(z1, &[0, 0]).unwrap_err(),
            GGraphError::EmbeddingNotInjective { .. }
        ));
    }

    #[test]
    fn subdivision_removes_inversions() {
        let mut b = GraphBuilder::new();
        let u = b.add_vertex("u");
        let v = b.add_vertex("v");
        b.add_edge("a", u, v);
        let z2 = Arc::new(FiniteGroup::cyclic(2, None).unwrap());
        let x = subdivide(
            z2,
            b.build(),
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        assert_eq!(x.graph().vertex_count(), 3);
        assert_eq!(x.graph().edge_count(), 2);
        assert_eq!(x.act_vertex(1, 2), 2);
    }

    #[test]
    fn map_composition_and_collapse() {
        let hex = Arc::new(fixtures::hex6());
        let (_, p) = hex.quotient_graph(&hex.group().whole()).unwrap();
        let crush = EquivariantGraphMap::to_point(p.target().clone());
        let both = p.then(&crush).unwrap();
        assert!(both.collapses());
        assert_eq!(both.vertex_map(), &[0; 6]);
        let id = EquivariantGraphMap::identity(hex.clone());
        assert_eq!(id.then(&p).unwrap().vertex_map(), p.vertex_map());
    }

    #[test]
    fn non_equivariant_maps_are_rejected() {
        let hex = Arc::new(fixtures::hex6());
        let z2 = hex.group().clone();
        let err = EquivariantGraphMap::new(
            GroupHom::identity(z2),
            hex.clone(),
            hex.clone(),
            vec![1, 2, 3, 4, 5, 0],
            (0..12).map(|d| DartImage::Dart((d + 2) % 12)).collect(),
        );
        assert!(err.is_ok());
        let err = EquivariantGraphMap::new(
            GroupHom::identity(hex.group().clone()),
            hex.clone(),
            hex.clone(),
            vec![0, 5, 4, 3, 2, 1],
            vec![DartImage::Dart(0); 12],
        )
        .unwrap_err();
        assert!(matches!(err, GGraphError::InconsistentMap(_)));
    }
}
