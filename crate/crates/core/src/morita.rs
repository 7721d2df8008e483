//! Functors between equivariant fundamental categories induced by
//! equivariant graph maps, the quotient and induction moves, and the
//! transformations induced by natural transformations of translation
//! groupoids.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::ggraph::{DartImage, EquivariantGraphMap, GGraph, GGraphError};
use crate::graph::{Dart, Vertex};
use crate::group::{Element, FiniteGroup, Subgroup};
use crate::orbit::OrbitFunctor;
use crate::path::ReducedPath;
use crate::pi::{object, PiArrow, PiCategory, PiError, PiObject};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoritaError {
    #[error(transparent)]
    Graph(#[from] GGraphError),
    #[error(transparent)]
    Pi(#[from] PiError),
    #[error("FixedPointViolation: f({vertex}) is not fixed by the image subgroup")]
    FixedPointViolation { vertex: String },
    #[error("NotFunctorial: {0}")]
    NotFunctorial(String),
    #[error("NotNatural({element}, {vertex}): r(gx)·φ1(g) != φ2(g)·r(x)")]
    NotNatural { element: String, vertex: String },
    #[error("NotLocallyConstant({dart}): r differs at the two ends of the edge")]
    NotLocallyConstant { dart: String },
    #[error("ComponentMismatch({point}): f2 != r·f1")]
    ComponentMismatch { point: String },
    #[error("MismatchedMaps: {0}")]
    MismatchedMaps(String),
}

/// Where an induced functor came from; the certified checker dispatches on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Provenance {
    General,
    QuotientMove { normal: Subgroup },
    InductionMove { embedding: Vec<Element> },
}

/// `Π(φ, f)`: `(G/H, x) ↦ (G/φ(H), f(x))`, `(α, [γ]) ↦ (φ(α), [fγ])`.
#[derive(Clone)]
pub struct InducedFunctor {
    source: PiCategory,
    target: PiCategory,
    map: EquivariantGraphMap,
    orbit: OrbitFunctor,
    provenance: Provenance,
}

impl fmt::Debug for InducedFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InducedFunctor({:?}, {:?} -> {:?})", self.provenance, self.source, self.target)
    }
}

impl InducedFunctor {
    pub fn new(map: EquivariantGraphMap, provenance: Provenance) -> Result<Self, MoritaError> {
        let source = PiCategory::new(map.source().clone());
        let target = PiCategory::new(map.target().clone());
        let orbit = OrbitFunctor::new(map.hom().clone());
        let functor = InducedFunctor { source, target, map, orbit, provenance };
        functor.self_check()?;
        Ok(functor)
    }

    /// Fixed points go to fixed points, identities to identities, and
    /// composites of automorphism generators to composites of images.
    fn self_check(&self) -> Result<(), MoritaError> {
        for a in self.source.objects() {
            let image = self.object(&a);
            if !self.target.contains(&image) {
                return Err(MoritaError::FixedPointViolation {
                    vertex: self.source.space().graph().vertex_label(a.point).to_string(),
                });
            }
            if self.arrow(&self.source.identity(&a))? != self.target.identity(&image) {
                return Err(MoritaError::NotFunctorial("an identity is not preserved".into()));
            }
        }
        for class in self.source.skeleton()?.classes {
            let gens = self.source.aut_group(&class.representative)?.generators();
            for f in &gens {
                for g in &gens {
                    let fg = self.source.compose(f, g)?;
                    let images = self.target.compose(&self.arrow(f)?, &self.arrow(g)?)?;
                    if self.arrow(&fg)? != images {
                        return Err(MoritaError::NotFunctorial("a composite is not preserved".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &PiCategory {
        &self.source
    }

    pub fn target(&self) -> &PiCategory {
        &self.target
    }

    pub fn map(&self) -> &EquivariantGraphMap {
        &self.map
    }

    pub fn orbit(&self) -> &OrbitFunctor {
        &self.orbit
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn object(&self, a: &PiObject) -> PiObject {
        object(self.orbit.object(&a.base), self.map.vertex(a.point))
    }

    /// Image of a path: collapsed darts are dropped, the rest relabeled,
    /// and the result reduced.
    pub fn map_path(&self, p: &ReducedPath) -> ReducedPath {
        let darts: Vec<Dart> = p
            .darts()
            .iter()
            .filter_map(|&d| match self.map.dart(d) {
                DartImage::Dart(e) => Some(e),
                DartImage::Collapse(_) => None,
            })
            .collect();
        ReducedPath::from_darts(self.target.space().graph(), self.map.vertex(p.start()), darts)
            .expect("equivariant maps send paths to paths")
    }

    pub fn arrow(&self, f: &PiArrow) -> Result<PiArrow, MoritaError> {
        Ok(self.target.arrow(
            self.object(&f.source),
            self.object(&f.target),
            self.orbit.arrow(&f.base),
            self.map_path(&f.fiber),
        )?)
    }
}

/// The projection `X → X/N` over `G → G/N` and its functor.
pub fn quotient_move(x: &Arc<GGraph>, n: &Subgroup) -> Result<(EquivariantGraphMap, InducedFunctor), MoritaError> {
    let (_, projection) = x.quotient_graph(n)?;
    assert!(!projection.collapses(), "quotient maps do not crush edges");
    let functor = InducedFunctor::new(projection.clone(), Provenance::QuotientMove { normal: n.clone() })?;
    Ok((projection, functor))
}

/// The inclusion `X → G ×_L X`, `x ↦ [e, x]`, and its functor.
pub fn induction_move(
    x: &Arc<GGraph>,
    g: Arc<FiniteGroup>,
    embedding: &[Element],
) -> Result<(EquivariantGraphMap, InducedFunctor), MoritaError> {
    let (_, inclusion) = x.induced_graph(g, embedding)?;
    assert!(!inclusion.collapses(), "inclusions do not crush edges");
    let functor = InducedFunctor::new(inclusion.clone(), Provenance::InductionMove { embedding: embedding.to_vec() })?;
    Ok((inclusion, functor))
}

/// A natural transformation `(φ₁, f₁) ⇒ (φ₂, f₂)` of maps of translation
/// groupoids, given by `r: X → G₂` with `f₂(x) = r_x·f₁(x)`.
///
/// Continuity of `r` is modeled as constancy along edges.
#[derive(Debug, Clone)]
pub struct NatTrans {
    first: EquivariantGraphMap,
    second: EquivariantGraphMap,
    r: Vec<Element>,
}

impl NatTrans {
    pub fn new(first: EquivariantGraphMap, second: EquivariantGraphMap, r: Vec<Element>) -> Result<Self, MoritaError> {
        if *first.source() != *second.source() || *first.target() != *second.target() {
            return Err(MoritaError::MismatchedMaps("the two maps must share source and target".into()));
        }
        let x = first.source().clone();
        let y = first.target().clone();
        let (g1, g2) = (x.group(), y.group());
        let graph = x.graph();
        if r.len() != graph.vertex_count() || r.iter().any(|&a| a >= g2.order()) {
            return Err(MoritaError::MismatchedMaps("r needs one element of the target group per vertex".into()));
        }
        for d in 0..graph.dart_count() {
            if r[graph.source(d)] != r[graph.target(d)] {
                return Err(MoritaError::NotLocallyConstant { dart: graph.dart_label(d).to_string() });
            }
        }
        for g in g1.elements() {
            let (p1, p2) = (first.hom().apply(g), second.hom().apply(g));
            for v in 0..graph.vertex_count() {
                if g2.mul(r[x.act_vertex(g, v)], p1) != g2.mul(p2, r[v]) {
                    return Err(MoritaError::NotNatural {
                        element: g1.label(g).to_string(),
                        vertex: graph.vertex_label(v).to_string(),
                    });
                }
            }
        }
        for (v, &rv) in r.iter().enumerate() {
            if second.vertex(v) != y.act_vertex(rv, first.vertex(v)) {
                return Err(MoritaError::ComponentMismatch { point: graph.vertex_label(v).to_string() });
            }
        }
        for d in 0..graph.dart_count() {
            let rv = r[graph.source(d)];
            let moved = match first.dart(d) {
                DartImage::Dart(e) => DartImage::Dart(y.act_dart(rv, e)),
                DartImage::Collapse(w) => DartImage::Collapse(y.act_vertex(rv, w)),
            };
            if second.dart(d) != moved {
                return Err(MoritaError::ComponentMismatch { point: graph.dart_label(d).to_string() });
            }
        }
        Ok(NatTrans { first, second, r })
    }

    pub fn component_element(&self, v: Vertex) -> Element {
        self.r[v]
    }

    /// The components `(r_x⁻¹·φ₂(H), empty path at f₁(x))`, checked to be
    /// strictly natural on automorphism generators and hom representatives.
    pub fn induced(&self) -> Result<NatTransComponents, MoritaError> {
        let f1 = InducedFunctor::new(self.first.clone(), Provenance::General)?;
        let f2 = InducedFunctor::new(self.second.clone(), Provenance::General)?;
        let g2 = self.first.target().group().clone();
        let mut components = BTreeMap::new();
        for a in f1.source().objects() {
            let (from, to) = (f1.object(&a), f2.object(&a));
            let rx = self.r[a.point];
            assert_eq!(
                g2.conjugate_subgroup(g2.inv(rx), &to.base),
                from.base,
                "φ1(H) = r⁻¹ φ2(H) r"
            );
            let alpha = f1.target().orbit().arrow(&from.base, &to.base, g2.inv(rx)).map_err(|e| {
                MoritaError::NotFunctorial(format!("component is not an orbit arrow: {e}"))
            })?;
            let eta = f1.target().arrow(from.clone(), to, alpha, ReducedPath::empty(from.point))?;
            components.insert(a, eta);
        }
        let result = NatTransComponents { components };
        let source = f1.source();
        let sk = source.skeleton()?;
        let mut samples = Vec::new();
        for class in &sk.classes {
            samples.extend(source.aut_group(&class.representative)?.generators());
        }
        for (i, _) in sk.classes.iter().enumerate() {
            for (j, _) in sk.classes.iter().enumerate() {
                samples.extend(source.arrows_up_to(
                    &sk.classes[i].representative,
                    &sk.classes[j].representative,
                    0,
                )?);
            }
        }
        for f in &samples {
            let left = f1.target().compose(&f1.arrow(f)?, &result.components[&f.target])?;
            let right = f1.target().compose(&result.components[&f.source], &f2.arrow(f)?)?;
            if left != right {
                return Err(MoritaError::NotFunctorial("the induced transformation is not natural".into()));
            }
        }
        Ok(result)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NatTransComponents {
    pub components: BTreeMap<PiObject, PiArrow>,
}
