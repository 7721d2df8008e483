//! The equivariant fundamental category `Π_G(X)`.
//!
//! It is the category of elements of `G/H ↦ Π(X^H)` over the orbit
//! category: objects are `(G/H, x)` with `x ∈ X^H`, arrows are `(α, [γ])`
//! with `α: G/H → G/K` and `γ` a path in `X^H` from `x` to `α·y`. Paths are
//! stored as reduced dart words in the darts of `X` itself.
//!
//! Hom-sets are infinite in general; [`HomShape`] describes each one by a
//! representative path and a free basis of the relevant vertex group.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::ggraph::{FixedSubgraph, GGraph};
use crate::graph::{Dart, Vertex};
use crate::grothendieck::{Element, ElementArrow, Grothendieck, GrothendieckError, GroupoidFamily, IndexCategory};
use crate::group::{FiniteGroup, Subgroup};
use crate::orbit::{OrbitArrow, OrbitCategory};
use crate::path::{reduced_words, FreeWord, PathError, Pi1Basis, ReducedPath, SpanningForest};

pub type PiObject = Element<Subgroup, Vertex>;
pub type PiArrow = ElementArrow<Subgroup, Vertex, OrbitArrow, ReducedPath>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PiError {
    #[error("VertexNotFixed: vertex {vertex} is not fixed by {subgroup:?}")]
    VertexNotFixed { subgroup: Subgroup, vertex: Vertex },
    #[error("NotInvertible: the orbit-category part is not invertible")]
    NotInvertible,
    #[error("NotComposable")]
    NotComposable,
    #[error("UnknownSubgroup: {0:?} is not a subgroup of the acting group")]
    UnknownSubgroup(Subgroup),
    #[error("BadArrow: {0}")]
    BadArrow(String),
    #[error(transparent)]
    Path(#[from] PathError),
}

impl From<GrothendieckError> for PiError {
    fn from(e: GrothendieckError) -> Self {
        match e {
            GrothendieckError::NotComposable => PiError::NotComposable,
            GrothendieckError::NotInvertible => PiError::NotInvertible,
            GrothendieckError::BadArrow(m) => PiError::BadArrow(m),
        }
    }
}

pub fn object(subgroup: Subgroup, vertex: Vertex) -> PiObject {
    Element { base: subgroup, point: vertex }
}

impl IndexCategory for OrbitCategory {
    type Object = Subgroup;
    type Arrow = OrbitArrow;

    fn source(&self, a: &OrbitArrow) -> Subgroup {
        a.source().clone()
    }

    fn target(&self, a: &OrbitArrow) -> Subgroup {
        a.target().clone()
    }

    fn identity(&self, o: &Subgroup) -> OrbitArrow {
        OrbitCategory::identity(self, o)
    }

    fn compose(&self, f: &OrbitArrow, g: &OrbitArrow) -> Option<OrbitArrow> {
        OrbitCategory::compose(self, f, g).ok()
    }

    fn inverse(&self, a: &OrbitArrow) -> Option<OrbitArrow> {
        OrbitCategory::inverse(self, a)
    }
}

/// `X^H` with its spanning forest, in local coordinates.
#[derive(Debug, Clone)]
pub struct Fiber {
    fixed: FixedSubgraph,
    forest: SpanningForest,
}

impl Fiber {
    fn new(fixed: FixedSubgraph) -> Self {
        let forest = SpanningForest::new(fixed.graph());
        Fiber { fixed, forest }
    }

    pub fn fixed(&self) -> &FixedSubgraph {
        &self.fixed
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.fixed.contains_vertex(v)
    }

    pub fn contains_path(&self, p: &ReducedPath) -> bool {
        self.fixed.contains_vertex(p.start()) && p.darts().iter().all(|&d| self.fixed.contains_dart(d))
    }

    /// Component of a fixed vertex inside `X^H`.
    pub fn component(&self, v: Vertex) -> Option<usize> {
        self.fixed.local_vertex(v).map(|l| self.forest.component_of(l))
    }

    pub fn connected(&self, u: Vertex, v: Vertex) -> bool {
        matches!((self.component(u), self.component(v)), (Some(a), Some(b)) if a == b)
    }

    fn to_global(&self, p: &ReducedPath) -> ReducedPath {
        p.relabel(|v| self.fixed.global_vertex(v), |d| self.fixed.global_dart(d))
    }

    /// Tree path in `X^H`, in global darts.
    pub fn tree_path(&self, x: Vertex, y: Vertex) -> Option<ReducedPath> {
        let (lx, ly) = (self.fixed.local_vertex(x)?, self.fixed.local_vertex(y)?);
        self.forest.tree_path(self.fixed.graph(), lx, ly).map(|p| self.to_global(&p))
    }

    /// Free basis of `π₁(X^H, x)`, in global darts.
    pub fn basis(&self, x: Vertex) -> Option<Pi1Basis> {
        let lx = self.fixed.local_vertex(x)?;
        let local = Pi1Basis::new(self.fixed.graph(), &self.forest, self.forest.component_of(lx), lx)
            .expect("basepoint lies in its own component");
        Some(local.embed(|v| self.fixed.global_vertex(v), |d| self.fixed.global_dart(d)))
    }
}

/// The family `H ↦ Π(X^H)` with `α` acting by the representative.
#[derive(Debug, Clone)]
pub struct FixedPointFamily {
    space: Arc<GGraph>,
    index: HashMap<Subgroup, usize>,
    fibers: Vec<Fiber>,
}

impl FixedPointFamily {
    fn fiber(&self, h: &Subgroup) -> &Fiber {
        &self.fibers[self.index[h]]
    }

    fn act_path(&self, g: crate::group::Element, p: &ReducedPath) -> ReducedPath {
        let x = &self.space;
        p.relabel(|v| x.act_vertex(g, v), |d| x.act_dart(g, d))
    }
}

impl GroupoidFamily<OrbitCategory> for FixedPointFamily {
    type Point = Vertex;
    type Morphism = ReducedPath;

    fn contains(&self, c: &Subgroup, p: &Vertex) -> bool {
        self.index.get(c).is_some_and(|&i| self.fibers[i].contains_vertex(*p))
    }

    fn morphism_source(&self, _: &Subgroup, m: &ReducedPath) -> Vertex {
        m.start()
    }

    fn morphism_target(&self, _: &Subgroup, m: &ReducedPath) -> Vertex {
        m.end()
    }

    fn reindex_point(&self, g: &OrbitArrow, p: &Vertex) -> Vertex {
        self.space.act_vertex(g.rep(), *p)
    }

    fn reindex_morphism(&self, g: &OrbitArrow, m: &ReducedPath) -> ReducedPath {
        self.act_path(g.rep(), m)
    }

    fn fiber_identity(&self, _: &Subgroup, p: &Vertex) -> ReducedPath {
        ReducedPath::empty(*p)
    }

    fn fiber_compose(&self, _: &Subgroup, a: &ReducedPath, b: &ReducedPath) -> Option<ReducedPath> {
        a.compose(b, self.space.graph()).ok()
    }

    fn fiber_inverse(&self, _: &Subgroup, m: &ReducedPath) -> ReducedPath {
        m.invert(self.space.graph())
    }
}

/// Shape of one summand of a hom-set, indexed by an orbit arrow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Summand {
    Empty,
    /// `{ loop · representative : loop ∈ π₁(X^H, x) }`
    Torsor { representative: ReducedPath, basis: Pi1Basis },
}

impl Summand {
    pub fn rank(&self) -> Option<usize> {
        match self {
            Summand::Empty => None,
            Summand::Torsor { basis, .. } => Some(basis.rank()),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Summand::Empty)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomEntry {
    pub alpha: OrbitArrow,
    pub summand: Summand,
}

/// A finite description of `hom(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomShape {
    pub source: PiObject,
    pub target: PiObject,
    pub entries: Vec<HomEntry>,
}

impl HomShape {
    pub fn is_empty(&self) -> bool {
        self.entries.iter().all(|e| e.summand.is_empty())
    }

    pub fn entry(&self, alpha: &OrbitArrow) -> Option<&HomEntry> {
        self.entries.iter().find(|e| &e.alpha == alpha)
    }
}

/// Isomorphism classes of objects with chosen representatives.
#[derive(Debug, Clone, Serialize)]
pub struct Skeleton {
    pub classes: Vec<SkeletonClass>,
    pub homs: Vec<HomShape>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeletonClass {
    pub representative: PiObject,
    pub members: Vec<PiObject>,
}

impl Skeleton {
    pub fn class_of(&self, a: &PiObject) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(a))
    }

    /// The hom summary between two class representatives.
    pub fn hom(&self, from: usize, to: usize) -> &HomShape {
        &self.homs[from * self.classes.len() + to]
    }
}

/// The automorphism group of an object, with generators and the normal
/// form `(α, reduced loop)` deciding equality.
#[derive(Debug, Clone, Serialize)]
pub struct AutGroup {
    pub object: PiObject,
    /// `(e, basis loop)` for each basis loop, in basis order.
    pub loop_generators: Vec<PiArrow>,
    /// `(α, tree path x → αx)` for each other admissible invertible `α`.
    pub twist_generators: Vec<PiArrow>,
}

impl AutGroup {
    pub fn generators(&self) -> Vec<PiArrow> {
        self.loop_generators.iter().chain(&self.twist_generators).cloned().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.loop_generators.is_empty() && self.twist_generators.is_empty()
    }
}

/// Two-cells between parallel arrows; for finite groups only identities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoCell {
    pub arrow: PiArrow,
}

#[derive(Clone)]
pub struct PiCategory {
    total: Grothendieck<OrbitCategory, FixedPointFamily>,
}

impl fmt::Debug for PiCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PiCategory({:?})", self.space())
    }
}

impl PiCategory {
    pub fn new(space: Arc<GGraph>) -> Self {
        let orbit = OrbitCategory::new(space.group().clone());
        let fibers: Vec<Fiber> = orbit.objects().iter().map(|h| Fiber::new(space.fixed_subgraph(h))).collect();
        let index = orbit.objects().iter().cloned().enumerate().map(|(i, h)| (h, i)).collect();
        PiCategory { total: Grothendieck::new(orbit, FixedPointFamily { space, index, fibers }) }
    }

    pub fn space(&self) -> &Arc<GGraph> {
        &self.total.family.space
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.total.index.group()
    }

    pub fn orbit(&self) -> &OrbitCategory {
        &self.total.index
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        self.total.index.objects()
    }

    pub fn fiber(&self, h: &Subgroup) -> Result<&Fiber, PiError> {
        self.total
            .family
            .index
            .get(h)
            .map(|&i| &self.total.family.fibers[i])
            .ok_or_else(|| PiError::UnknownSubgroup(h.clone()))
    }

    /// All objects ordered by (subgroup, vertex).
    pub fn objects(&self) -> Vec<PiObject> {
        self.subgroups()
            .iter()
            .flat_map(|h| {
                self.total.family.fiber(h).fixed.vertices().iter().map(move |&x| object(h.clone(), x))
            })
            .collect()
    }

    pub fn contains(&self, a: &PiObject) -> bool {
        self.total.family.contains(&a.base, &a.point)
    }

    /// `α·y` for `y ∈ X^K`, landing in `X^H`.
    pub fn fiber_action_vertex(&self, alpha: &OrbitArrow, y: Vertex) -> Result<Vertex, PiError> {
        if !self.fiber(alpha.target())?.contains_vertex(y) {
            return Err(PiError::VertexNotFixed { subgroup: alpha.target().clone(), vertex: y });
        }
        let image = self.total.family.reindex_point(alpha, &y);
        assert!(self.fiber(alpha.source())?.contains_vertex(image), "α·y is fixed by H");
        Ok(image)
    }

    /// `α·ζ` for a path `ζ` in `X^K`.
    pub fn fiber_action_path(&self, alpha: &OrbitArrow, path: &ReducedPath) -> Result<ReducedPath, PiError> {
        let target = self.fiber(alpha.target())?;
        if !target.contains_path(path) {
            let vertex = path
                .darts()
                .iter()
                .map(|&d| self.space().graph().source(d))
                .find(|&v| !target.contains_vertex(v))
                .unwrap_or(path.start());
            return Err(PiError::VertexNotFixed { subgroup: alpha.target().clone(), vertex });
        }
        let image = self.total.family.reindex_morphism(alpha, path);
        debug_assert_eq!(
            ReducedPath::from_darts(self.space().graph(), image.start(), image.darts().to_vec()).as_ref(),
            Ok(&image)
        );
        Ok(image)
    }

    /// Validates and assembles an arrow `(α, γ): (H, x) → (K, y)`.
    pub fn arrow(&self, source: PiObject, target: PiObject, alpha: OrbitArrow, path: ReducedPath) -> Result<PiArrow, PiError> {
        if !self.fiber(&source.base)?.contains_path(&path) {
            return Err(PiError::BadArrow("path leaves the fixed subgraph".into()));
        }
        Ok(self.total.arrow(source, target, alpha, path)?)
    }

    pub fn identity(&self, a: &PiObject) -> PiArrow {
        self.total.identity(a)
    }

    /// `f` then `g`: `(α, γ), (β, ζ) ↦ (αβ, γ · α·ζ)`.
    pub fn compose(&self, f: &PiArrow, g: &PiArrow) -> Result<PiArrow, PiError> {
        Ok(self.total.compose(f, g)?)
    }

    pub fn project<'a>(&self, f: &'a PiArrow) -> &'a OrbitArrow {
        self.total.project(f)
    }

    pub fn is_invertible(&self, f: &PiArrow) -> bool {
        self.orbit().is_invertible(&f.base)
    }

    /// `(α, γ)⁻¹ = (α⁻¹, α⁻¹·γ̄)`.
    pub fn inverse(&self, f: &PiArrow) -> Result<PiArrow, PiError> {
        Ok(self.total.inverse(f)?)
    }

    /// Free basis of the vertex group `π₁(X^H, x)`.
    pub fn basis(&self, a: &PiObject) -> Result<Pi1Basis, PiError> {
        self.fiber(&a.base)?
            .basis(a.point)
            .ok_or(PiError::VertexNotFixed { subgroup: a.base.clone(), vertex: a.point })
    }

    pub fn hom_shape(&self, a: &PiObject, b: &PiObject) -> Result<HomShape, PiError> {
        let fiber = self.fiber(&a.base)?;
        if !fiber.contains_vertex(a.point) {
            return Err(PiError::VertexNotFixed { subgroup: a.base.clone(), vertex: a.point });
        }
        if !self.fiber(&b.base)?.contains_vertex(b.point) {
            return Err(PiError::VertexNotFixed { subgroup: b.base.clone(), vertex: b.point });
        }
        let entries = self
            .orbit()
            .arrows_between(&a.base, &b.base)
            .into_iter()
            .map(|alpha| {
                let end = self.space().act_vertex(alpha.rep(), b.point);
                let summand = match fiber.tree_path(a.point, end) {
                    Some(representative) => Summand::Torsor {
                        representative,
                        basis: fiber.basis(a.point).expect("fixed vertex"),
                    },
                    None => Summand::Empty,
                };
                HomEntry { alpha, summand }
            })
            .collect();
        Ok(HomShape { source: a.clone(), target: b.clone(), entries })
    }

    /// The arrow `(α, loop(w) · representative)` of a torsor summand.
    pub fn torsor_arrow(&self, shape: &HomShape, entry: &HomEntry, word: &FreeWord) -> Result<PiArrow, PiError> {
        let Summand::Torsor { representative, basis } = &entry.summand else {
            return Err(PiError::BadArrow("empty summand".into()));
        };
        let graph = self.space().graph();
        let path = basis.word_to_loop(word, graph)?.compose(representative, graph)?;
        self.arrow(shape.source.clone(), shape.target.clone(), entry.alpha.clone(), path)
    }

    /// Every arrow of `hom(a, b)` whose loop part has word length at most
    /// `max_word`.
    pub fn arrows_up_to(&self, a: &PiObject, b: &PiObject, max_word: usize) -> Result<Vec<PiArrow>, PiError> {
        let shape = self.hom_shape(a, b)?;
        let mut out = Vec::new();
        for entry in &shape.entries {
            if let Some(rank) = entry.summand.rank() {
                for w in reduced_words(rank, max_word) {
                    out.push(self.torsor_arrow(&shape, entry, &w)?);
                }
            }
        }
        Ok(out)
    }

    /// Splits an arrow into its orbit part and the loop word `w` with
    /// `path = loop(w) · representative`.
    pub fn normal_form(&self, f: &PiArrow) -> Result<(OrbitArrow, FreeWord), PiError> {
        let shape = self.hom_shape(&f.source, &f.target)?;
        let entry = shape.entry(&f.base).ok_or(PiError::BadArrow("unknown orbit arrow".into()))?;
        let Summand::Torsor { representative, basis } = &entry.summand else {
            return Err(PiError::BadArrow("arrow in an empty summand".into()));
        };
        let graph = self.space().graph();
        let lp = f.fiber.compose(&representative.invert(graph), graph)?;
        Ok((f.base.clone(), basis.loop_to_word(&lp)?))
    }

    /// Isomorphism classes: `(H, x) ≅ (K, y)` iff some invertible `α`
    /// puts `x` and `α·y` in one component of `X^H`.
    pub fn skeleton(&self) -> Result<Skeleton, PiError> {
        let objects = self.objects();
        let position: HashMap<&PiObject, usize> = objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
        let mut parent: Vec<usize> = (0..objects.len()).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            let mut i = i;
            while parent[i] != r {
                let next = parent[i];
                parent[i] = r;
                i = next;
            }
            r
        }
        fn unite(parent: &mut [usize], a: usize, b: usize) {
            let (ra, rb) = (find(parent, a), find(parent, b));
            // keep the smaller index as root so roots are minimal objects
            if ra < rb {
                parent[rb] = ra;
            } else {
                parent[ra] = rb;
            }
        }
        let g = self.group();
        for (i, a) in objects.iter().enumerate() {
            let fiber = self.fiber(&a.base)?;
            for (j, b) in objects.iter().enumerate().skip(i + 1) {
                if b.base == a.base && fiber.connected(a.point, b.point) {
                    unite(&mut parent, i, j);
                }
            }
            for alpha in g.elements() {
                let moved = object(
                    g.conjugate_subgroup(g.inv(alpha), &a.base),
                    self.space().act_vertex(g.inv(alpha), a.point),
                );
                unite(&mut parent, i, position[&moved]);
            }
        }
        let mut classes: BTreeMap<usize, Vec<PiObject>> = BTreeMap::new();
        for (i, o) in objects.iter().enumerate() {
            classes.entry(find(&mut parent, i)).or_default().push(o.clone());
        }
        let classes: Vec<SkeletonClass> = classes
            .into_values()
            .map(|members| SkeletonClass { representative: members[0].clone(), members })
            .collect();
        let mut homs = Vec::with_capacity(classes.len() * classes.len());
        for a in &classes {
            for b in &classes {
                homs.push(self.hom_shape(&a.representative, &b.representative)?);
            }
        }
        Ok(Skeleton { classes, homs })
    }

    pub fn aut_group(&self, a: &PiObject) -> Result<AutGroup, PiError> {
        let basis = self.basis(a)?;
        let identity = self.orbit().identity(&a.base);
        let loop_generators = basis
            .loops()
            .iter()
            .map(|l| self.arrow(a.clone(), a.clone(), identity.clone(), l.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let fiber = self.fiber(&a.base)?;
        let mut twist_generators = Vec::new();
        for alpha in self.orbit().arrows_between(&a.base, &a.base) {
            if alpha.rep() == identity.rep() || !self.orbit().is_invertible(&alpha) {
                continue;
            }
            let end = self.space().act_vertex(alpha.rep(), a.point);
            if let Some(path) = fiber.tree_path(a.point, end) {
                twist_generators.push(self.arrow(a.clone(), a.clone(), alpha, path)?);
            }
        }
        Ok(AutGroup { object: a.clone(), loop_generators, twist_generators })
    }

    /// Composes generators of an automorphism group given as signed
    /// 1-based indices into [`AutGroup::generators`], left to right.
    pub fn evaluate(&self, aut: &AutGroup, letters: &[i32]) -> Result<PiArrow, PiError> {
        let gens = aut.generators();
        let mut acc = self.identity(&aut.object);
        for &l in letters {
            let g = gens.get(l.unsigned_abs() as usize - 1).ok_or(PiError::Path(PathError::BadLetter(l)))?;
            let g = if l > 0 { g.clone() } else { self.inverse(g)? };
            acc = self.compose(&acc, &g)?;
        }
        Ok(acc)
    }

    /// The 2-cell between parallel arrows, which exists only for equal arrows.
    pub fn two_cell(&self, f: &PiArrow, g: &PiArrow) -> Option<TwoCell> {
        (f == g).then(|| TwoCell { arrow: f.clone() })
    }

    /// `Π^d_G(X)`: the quotient by 2-cells, which changes nothing here.
    pub fn discrete_quotient(&self) -> DiscreteQuotient {
        DiscreteQuotient { category: self.clone(), two_cells_trivial: crate::orbit::TWO_CELLS_ARE_TRIVIAL }
    }

    /// Darts of `X` that lie in `X^H`.
    pub fn fixed_darts(&self, h: &Subgroup) -> Result<&[Dart], PiError> {
        Ok(self.fiber(h)?.fixed.darts())
    }
}

/// `Π^d_G(X)`, identical to `Π_G(X)` because every 2-cell is an identity.
#[derive(Debug, Clone)]
pub struct DiscreteQuotient {
    pub category: PiCategory,
    pub two_cells_trivial: bool,
}

impl DiscreteQuotient {
    pub fn skeleton(&self) -> Result<Skeleton, PiError> {
        self.category.skeleton()
    }
}
