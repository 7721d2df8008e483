//! Deciding whether an induced functor `Π(φ, f)` is an equivalence.
//!
//! `Π_G(X)` is fibred in groupoids but is not a groupoid, so fullness and
//! faithfulness are analysed hom-set by hom-set. For source skeleton
//! representatives `a = (H, x)`, `b = (K, y)` the set `hom(a, b)` splits over
//! orbit arrows `α` into torsors `T_α`, and `F` sends `T_α` into
//! `T'_{φ(α)}`. Fullness follows from preimages of the automorphism
//! generators of every `F(a)` together with one preimage of `(β, q_β)` for
//! every nonempty target summand, because `(e, ℓ)∘(β, q_β) = (β, ℓ·q_β)`.
//!
//! The quotient and induction moves are certified constructively: arrows
//! are lifted through the covering `X → X/N`, or straightened back into the
//! base copy of `G ×_L X`. Other functors are checked by bounded search.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::ggraph::{DartImage, EquivariantGraphMap};
use crate::graph::{Dart, Vertex};
use crate::group::{Element, GroupHom, IDENTITY};
use crate::morita::{InducedFunctor, MoritaError, Provenance};
use crate::orbit::OrbitArrow;
use crate::path::{FreeWord, PathError, ReducedPath};
use crate::pi::{object, PiArrow, PiCategory, PiError, PiObject};

/// Default bound on word length for generic searches.
pub const DEFAULT_WORD_LENGTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("StrategyUnavailable: certified checking needs a quotient or induction move, got {0:?}")]
    StrategyUnavailable(Provenance),
    #[error("StartDoesNotProject: vertex {vertex} does not lie over the start of the path")]
    StartDoesNotProject { vertex: Vertex },
    #[error("NotACovering: {0}")]
    NotACovering(String),
    #[error("NotInducedSpace: {0}")]
    NotInducedSpace(String),
    #[error("CertificateFailed: {0}")]
    CertificateFailed(String),
    #[error("WitnessRejected: {0}")]
    WitnessRejected(String),
    #[error(transparent)]
    Pi(#[from] PiError),
    #[error(transparent)]
    Morita(#[from] MoritaError),
    #[error(transparent)]
    Path(#[from] PathError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub word_length: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { word_length: DEFAULT_WORD_LENGTH }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Certified,
    Generic(SearchBounds),
}

/// How injectivity on hom-sets was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InjectivityCertificate {
    /// `N` acts freely and the projection is a covering, so lifts are unique.
    UniqueLifting,
    /// The embedding and the graph map are injective and the base copy is a
    /// union of components, so straightening retracts images.
    Straightening,
    /// No two arrows with loop words up to this length collide.
    ExhaustiveToBound(usize),
}

/// A source object over a target class, with an isomorphism from the
/// class representative to the image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObjectLift {
    pub target: PiObject,
    pub source: PiObject,
    pub image: PiObject,
    pub connecting: PiArrow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PreimageRole {
    AutGenerator,
    HomRepresentative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrowPreimage {
    pub role: PreimageRole,
    pub target: PiArrow,
    pub preimage: PiArrow,
}

/// Image of a source automorphism generator, with its normal form
/// `(orbit arrow, loop word)` in the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorImage {
    pub generator: PiArrow,
    pub image: PiArrow,
    pub image_alpha: OrbitArrow,
    pub image_word: FreeWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub object_lifts: Vec<ObjectLift>,
    pub arrow_preimages: Vec<ArrowPreimage>,
    pub generator_images: Vec<GeneratorImage>,
    pub injectivity: InjectivityCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Counterexample {
    /// No source object maps into the class of this target object.
    MissedObject { target: PiObject },
    /// No orbit arrow over `arrow.base` has a nonempty summand, so nothing
    /// maps to `arrow`.
    MissedArrow { source: PiObject, target: PiObject, arrow: PiArrow },
    /// A non-identity automorphism sent to the identity.
    KernelElement { arrow: PiArrow, image: PiArrow },
    /// Two distinct parallel arrows with the same image.
    Collision { first: PiArrow, second: PiArrow, image: PiArrow },
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EquivVerdict {
    Equivalent(Witness),
    NotEquivalent(Counterexample),
    Unknown { bounds: SearchBounds, unresolved: Vec<String> },
}

impl EquivVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            EquivVerdict::Equivalent(_) => "Equivalent",
            EquivVerdict::NotEquivalent(_) => "NotEquivalent",
            EquivVerdict::Unknown { .. } => "Unknown",
        }
    }
}

/// The unique lift of a path in `X/N` starting at `start`.
pub fn path_lift(projection: &EquivariantGraphMap, path: &ReducedPath, start: Vertex) -> Result<ReducedPath, CheckError> {
    let x = projection.source().graph();
    if start >= x.vertex_count() || projection.vertex(start) != path.start() {
        return Err(CheckError::StartDoesNotProject { vertex: start });
    }
    let mut at = start;
    let mut darts = Vec::with_capacity(path.len());
    for &d in path.darts() {
        let mut lifts = x.darts_from(at).iter().filter(|&&e| projection.dart(e) == DartImage::Dart(d));
        let lift = *lifts.next().ok_or_else(|| CheckError::NotACovering(format!("no lift of dart {d} at {at}")))?;
        if lifts.next().is_some() {
            return Err(CheckError::NotACovering(format!("two lifts of dart {d} at {at}")));
        }
        darts.push(lift);
        at = x.target(lift);
    }
    Ok(ReducedPath::from_darts(x, start, darts)?)
}

/// A path of `G ×_L X` moved into the base copy `[e, ·]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Straightened {
    /// Per step, the element whose inverse carries that step into the base
    /// copy. Paths never leave their copy, so these are all equal.
    pub adjustments: Vec<Element>,
    /// The element left over at the end of the path.
    pub final_element: Element,
    /// The straightened path, in the darts of `X`.
    pub base_path: ReducedPath,
}

struct InducedLayout {
    reps: Vec<Element>,
    vertices: usize,
    darts: usize,
}

fn induced_layout(inclusion: &EquivariantGraphMap) -> Result<InducedLayout, CheckError> {
    let x = inclusion.source();
    let y = inclusion.target();
    let g = y.group();
    let image = inclusion.hom().image(&x.group().whole());
    let reps = g.coset_reps(&image);
    let (nv, nd) = (x.graph().vertex_count(), x.graph().dart_count());
    let identity_on_base = inclusion.vertex_map().iter().enumerate().all(|(i, &v)| i == v)
        && inclusion.dart_map().iter().enumerate().all(|(i, &d)| d == DartImage::Dart(i));
    if !identity_on_base || y.graph().vertex_count() != reps.len() * nv || y.graph().dart_count() != reps.len() * nd {
        return Err(CheckError::NotInducedSpace("the map is not the inclusion x ↦ [e, x]".into()));
    }
    Ok(InducedLayout { reps, vertices: nv, darts: nd })
}

/// Moves a path of the induced space into the base copy.
pub fn straighten(inclusion: &EquivariantGraphMap, path: &ReducedPath) -> Result<Straightened, CheckError> {
    let layout = induced_layout(inclusion)?;
    let y = inclusion.target();
    let copy = path.start() / layout.vertices;
    if path.darts().iter().any(|&d| d / layout.darts != copy) {
        return Err(CheckError::NotInducedSpace("the path switches copies".into()));
    }
    let c = layout.reps[copy];
    let g = y.group();
    let back = g.inv(c);
    let moved = path.relabel(|v| y.act_vertex(back, v), |d| y.act_dart(back, d));
    debug_assert!(moved.start() < layout.vertices);
    Ok(Straightened {
        adjustments: vec![c; path.len()],
        final_element: IDENTITY,
        base_path: ReducedPath::from_darts(
            inclusion.source().graph(),
            moved.start(),
            moved.darts().to_vec(),
        )?,
    })
}

/// Target arrows whose preimages establish fullness, grouped with the
/// source objects they must come from.
fn required_targets(f: &InducedFunctor) -> Result<Vec<(PreimageRole, PiObject, PiObject, PiArrow)>, CheckError> {
    let source = f.source();
    let target = f.target();
    let reps: Vec<PiObject> = source.skeleton()?.classes.into_iter().map(|c| c.representative).collect();
    let mut out = Vec::new();
    for a in &reps {
        for gen in target.aut_group(&f.object(a))?.generators() {
            out.push((PreimageRole::AutGenerator, a.clone(), a.clone(), gen));
        }
    }
    for a in &reps {
        for b in &reps {
            let shape = target.hom_shape(&f.object(a), &f.object(b))?;
            for entry in &shape.entries {
                if !entry.summand.is_empty() {
                    let q = target.torsor_arrow(&shape, entry, &FreeWord::identity())?;
                    out.push((PreimageRole::HomRepresentative, a.clone(), b.clone(), q));
                }
            }
        }
    }
    Ok(out)
}

/// Orbit arrows `α: H → K` over `β` whose summand in `hom(a, b)` is nonempty.
fn admissible_lifts(f: &InducedFunctor, a: &PiObject, b: &PiObject, beta: &OrbitArrow) -> Result<Vec<OrbitArrow>, CheckError> {
    Ok(f
        .source()
        .hom_shape(a, b)?
        .entries
        .into_iter()
        .filter(|e| !e.summand.is_empty() && f.orbit().arrow(&e.alpha) == *beta)
        .map(|e| e.alpha)
        .collect())
}

fn generator_images(f: &InducedFunctor) -> Result<Vec<GeneratorImage>, CheckError> {
    let mut out = Vec::new();
    for class in f.source().skeleton()?.classes {
        for generator in f.source().aut_group(&class.representative)?.generators() {
            let image = f.arrow(&generator)?;
            let (image_alpha, image_word) = f.target().normal_form(&image)?;
            out.push(GeneratorImage { generator, image, image_alpha, image_word });
        }
    }
    Ok(out)
}

/// An isomorphism `from → to`, found by a finite search over invertible
/// orbit arrows.
pub fn find_iso(pi: &PiCategory, from: &PiObject, to: &PiObject) -> Result<Option<PiArrow>, CheckError> {
    let shape = pi.hom_shape(from, to)?;
    for entry in &shape.entries {
        if !entry.summand.is_empty() && pi.orbit().is_invertible(&entry.alpha) {
            return Ok(Some(pi.torsor_arrow(&shape, entry, &FreeWord::identity())?));
        }
    }
    Ok(None)
}

enum Surjectivity {
    Lifts(Vec<ObjectLift>),
    Missed(PiObject),
}

fn ess_surjective_generic(f: &InducedFunctor) -> Result<Surjectivity, CheckError> {
    let target_sk = f.target().skeleton()?;
    let mut lifts = Vec::new();
    'classes: for class in &target_sk.classes {
        for a in f.source().objects() {
            let image = f.object(&a);
            if class.members.contains(&image) {
                let connecting = find_iso(f.target(), &class.representative, &image)?
                    .ok_or_else(|| CheckError::CertificateFailed("class members are isomorphic".into()))?;
                lifts.push(ObjectLift { target: class.representative.clone(), source: a, image, connecting });
                continue 'classes;
            }
        }
        return Ok(Surjectivity::Missed(class.representative.clone()));
    }
    Ok(Surjectivity::Lifts(lifts))
}

fn ess_surjective_quotient(f: &InducedFunctor) -> Result<Vec<ObjectLift>, CheckError> {
    let x = f.source().space();
    let g = x.group();
    let p = f.map().hom();
    let mut lifts = Vec::new();
    for class in f.target().skeleton()?.classes {
        let t = class.representative;
        let vertex = (0..x.graph().vertex_count())
            .find(|&v| f.map().vertex(v) == t.point)
            .ok_or_else(|| CheckError::CertificateFailed("the projection is onto".into()))?;
        // L = p⁻¹(L̄) ∩ I_x
        let subgroup = g
            .subgroup(g.elements().filter(|&h| t.base.contains(p.apply(h)) && x.act_vertex(h, vertex) == vertex))
            .map_err(|e| CheckError::CertificateFailed(e.to_string()))?;
        let source = object(subgroup, vertex);
        let image = f.object(&source);
        if image != t {
            return Err(CheckError::CertificateFailed("the lifted subgroup does not map onto L̄".into()));
        }
        let connecting = f.target().identity(&t);
        lifts.push(ObjectLift { target: t, source, image, connecting });
    }
    Ok(lifts)
}

fn ess_surjective_induction(f: &InducedFunctor) -> Result<Vec<ObjectLift>, CheckError> {
    let layout = induced_layout(f.map())?;
    let y = f.target().space();
    let g = y.group();
    let iota: &GroupHom = f.map().hom();
    let l = iota.source();
    let mut lifts = Vec::new();
    for class in f.target().skeleton()?.classes {
        let t = class.representative;
        let (copy, base_vertex) = (t.point / layout.vertices, t.point % layout.vertices);
        let c = layout.reps[copy];
        // L ∩ c⁻¹Hc, pulled back along ι
        let conj = g.conjugate_subgroup(g.inv(c), &t.base);
        let pulled = l
            .subgroup(l.elements().filter(|&k| conj.contains(iota.apply(k))))
            .map_err(|e| CheckError::CertificateFailed(e.to_string()))?;
        if iota.image(&pulled) != conj {
            return Err(CheckError::CertificateFailed("c⁻¹Hc is not inside the embedded subgroup".into()));
        }
        let source = object(pulled, base_vertex);
        let image = f.object(&source);
        let alpha = f
            .target()
            .orbit()
            .arrow(&t.base, &image.base, c)
            .map_err(|e| CheckError::CertificateFailed(e.to_string()))?;
        let connecting = f.target().arrow(t.clone(), image.clone(), alpha, ReducedPath::empty(t.point))?;
        lifts.push(ObjectLift { target: t, source, image, connecting });
    }
    Ok(lifts)
}

enum Preimage {
    Found(PiArrow),
    Missing,
    NotFound,
}

fn preimage_generic(f: &InducedFunctor, a: &PiObject, b: &PiObject, t: &PiArrow, bound: usize) -> Result<Preimage, CheckError> {
    let lifts = admissible_lifts(f, a, b, &t.base)?;
    if lifts.is_empty() {
        return Ok(Preimage::Missing);
    }
    let shape = f.source().hom_shape(a, b)?;
    for entry in shape.entries.iter().filter(|e| lifts.contains(&e.alpha)) {
        let rank = entry.summand.rank().expect("admissible summands are nonempty");
        for w in crate::path::reduced_words(rank, bound) {
            let candidate = f.source().torsor_arrow(&shape, entry, &w)?;
            if f.arrow(&candidate)? == *t {
                return Ok(Preimage::Found(candidate));
            }
        }
    }
    Ok(Preimage::NotFound)
}

fn preimage_quotient(f: &InducedFunctor, a: &PiObject, b: &PiObject, t: &PiArrow) -> Result<PiArrow, CheckError> {
    let x = f.source().space();
    let g = x.group();
    let p = f.map().hom();
    let normal = p.kernel();
    let gamma = path_lift(f.map(), &t.fiber, a.point)?;
    let lifted_rep = g
        .elements()
        .find(|&h| p.apply(h) == t.base.rep())
        .ok_or_else(|| CheckError::CertificateFailed("the projection is onto".into()))?;
    let n = normal
        .iter()
        .find(|&n| x.act_vertex(g.mul(n, lifted_rep), b.point) == gamma.end())
        .ok_or_else(|| CheckError::CertificateFailed("the lift ends over α·y".into()))?;
    let alpha = f
        .source()
        .orbit()
        .arrow(&a.base, &b.base, g.mul(n, lifted_rep))
        .map_err(|e| CheckError::CertificateFailed(e.to_string()))?;
    Ok(f.source().arrow(a.clone(), b.clone(), alpha, gamma)?)
}

fn preimage_induction(f: &InducedFunctor, a: &PiObject, b: &PiObject, t: &PiArrow) -> Result<PiArrow, CheckError> {
    let straight = straighten(f.map(), &t.fiber)?;
    let iota = f.map().hom();
    let beta = t.base.rep();
    let alpha = iota
        .preimage_of(beta)
        .ok_or_else(|| CheckError::CertificateFailed("β lies outside the embedded subgroup".into()))?;
    let alpha = f
        .source()
        .orbit()
        .arrow(&a.base, &b.base, alpha)
        .map_err(|e| CheckError::CertificateFailed(e.to_string()))?;
    Ok(f.source().arrow(a.clone(), b.clone(), alpha, straight.base_path)?)
}

/// Looks for two distinct arrows of bounded word length with equal images.
fn find_collision(f: &InducedFunctor, bound: usize) -> Result<Option<Counterexample>, CheckError> {
    let reps: Vec<PiObject> = f.source().skeleton()?.classes.into_iter().map(|c| c.representative).collect();
    for a in &reps {
        for b in &reps {
            let mut seen: HashMap<PiArrow, PiArrow> = HashMap::new();
            for arrow in f.source().arrows_up_to(a, b, bound)? {
                let image = f.arrow(&arrow)?;
                if let Some(first) = seen.get(&image) {
                    let counterexample = if a == b {
                        let kernel = f.source().compose(&arrow, &f.source().inverse(first)?)?;
                        let image = f.arrow(&kernel)?;
                        Counterexample::KernelElement { arrow: kernel, image }
                    } else {
                        Counterexample::Collision { first: first.clone(), second: arrow, image }
                    };
                    return Ok(Some(counterexample));
                }
                seen.insert(image, arrow);
            }
        }
    }
    Ok(None)
}

fn unique_lifting_holds(f: &InducedFunctor) -> bool {
    let Provenance::QuotientMove { normal } = f.provenance() else {
        return false;
    };
    let x = f.source().space();
    let g = x.group();
    if f.map().hom().kernel() != *normal || g.is_normal(normal).is_err() {
        return false;
    }
    let free = normal
        .iter()
        .filter(|&n| n != IDENTITY)
        .all(|n| (0..x.graph().vertex_count()).all(|v| x.act_vertex(n, v) != v));
    // a covering: darts at each vertex map bijectively onto darts at its image
    let y = f.target().space().graph();
    let covering = (0..x.graph().vertex_count()).all(|v| {
        let mut images: Vec<Dart> = x
            .graph()
            .darts_from(v)
            .iter()
            .filter_map(|&d| match f.map().dart(d) {
                DartImage::Dart(e) => Some(e),
                DartImage::Collapse(_) => None,
            })
            .collect();
        images.sort_unstable();
        images == y.darts_from(f.map().vertex(v))
    });
    free && covering
}

fn straightening_holds(f: &InducedFunctor) -> bool {
    let Ok(layout) = induced_layout(f.map()) else {
        return false;
    };
    if !matches!(f.provenance(), Provenance::InductionMove { .. }) || !f.map().hom().is_injective() || !f.map().is_injective() {
        return false;
    }
    // the base copy is closed under adjacency
    let y = f.target().space().graph();
    let closed = (0..layout.vertices).all(|v| y.darts_from(v).iter().all(|&d| y.target(d) < layout.vertices));
    closed
        && (0..layout.darts).all(|d| {
            let p = ReducedPath::from_darts(y, y.source(d), vec![d]).expect("single dart");
            straighten(f.map(), &p).map(|s| s.base_path.darts() == [d]).unwrap_or(false)
        })
}

/// Runs the three checks and assembles a verdict.
pub fn weak_equivalence(f: &InducedFunctor, strategy: Strategy) -> Result<EquivVerdict, CheckError> {
    let bounds = match strategy {
        Strategy::Generic(b) => b,
        Strategy::Certified => SearchBounds::default(),
    };
    let object_lifts = match (strategy, f.provenance()) {
        (Strategy::Certified, Provenance::QuotientMove { .. }) => ess_surjective_quotient(f)?,
        (Strategy::Certified, Provenance::InductionMove { .. }) => ess_surjective_induction(f)?,
        (Strategy::Certified, other) => return Err(CheckError::StrategyUnavailable(other.clone())),
        (Strategy::Generic(_), _) => match ess_surjective_generic(f)? {
            Surjectivity::Lifts(l) => l,
            Surjectivity::Missed(target) => return Ok(EquivVerdict::NotEquivalent(Counterexample::MissedObject { target })),
        },
    };

    let injectivity = match strategy {
        Strategy::Certified => {
            let (tag, holds) = match f.provenance() {
                Provenance::QuotientMove { .. } => (InjectivityCertificate::UniqueLifting, unique_lifting_holds(f)),
                _ => (InjectivityCertificate::Straightening, straightening_holds(f)),
            };
            if !holds {
                return Err(CheckError::CertificateFailed(format!("{tag:?} does not apply")));
            }
            tag
        }
        Strategy::Generic(b) => {
            if let Some(c) = find_collision(f, b.word_length)? {
                return Ok(EquivVerdict::NotEquivalent(c));
            }
            InjectivityCertificate::ExhaustiveToBound(b.word_length)
        }
    };

    let mut arrow_preimages = Vec::new();
    let mut unresolved = Vec::new();
    for (role, a, b, t) in required_targets(f)? {
        let found = match (strategy, f.provenance()) {
            (Strategy::Certified, Provenance::QuotientMove { .. }) => Preimage::Found(preimage_quotient(f, &a, &b, &t)?),
            (Strategy::Certified, _) => Preimage::Found(preimage_induction(f, &a, &b, &t)?),
            (Strategy::Generic(bounds), _) => preimage_generic(f, &a, &b, &t, bounds.word_length)?,
        };
        match found {
            Preimage::Found(preimage) => arrow_preimages.push(ArrowPreimage { role, target: t, preimage }),
            Preimage::Missing => {
                return Ok(EquivVerdict::NotEquivalent(Counterexample::MissedArrow {
                    source: a,
                    target: b,
                    arrow: t,
                }))
            }
            Preimage::NotFound => unresolved.push(format!("no preimage of {t:?} with loop words up to {}", bounds.word_length)),
        }
    }
    if !unresolved.is_empty() {
        return Ok(EquivVerdict::Unknown { bounds, unresolved });
    }

    let witness = Witness { object_lifts, arrow_preimages, generator_images: generator_images(f)?, injectivity };
    witness.recheck(f)?;
    Ok(EquivVerdict::Equivalent(witness))
}

impl Witness {
    /// Re-evaluates every recorded claim under `f` without searching.
    pub fn recheck(&self, f: &InducedFunctor) -> Result<(), CheckError> {
        let reject = |m: &str| Err(CheckError::WitnessRejected(m.to_string()));
        let target_sk = f.target().skeleton()?;
        if self.object_lifts.len() != target_sk.classes.len() {
            return reject("not every target class has a lift");
        }
        for (lift, class) in self.object_lifts.iter().zip(&target_sk.classes) {
            if lift.target != class.representative || f.object(&lift.source) != lift.image {
                return reject("object lift does not map to its image");
            }
            let c = &lift.connecting;
            let valid = f.target().arrow(c.source.clone(), c.target.clone(), c.base.clone(), c.fiber.clone()).is_ok();
            if !valid || c.source != lift.target || c.target != lift.image || !f.target().is_invertible(c) {
                return reject("connecting arrow is not an isomorphism from the class to the image");
            }
        }
        let required = required_targets(f)?;
        if required.len() != self.arrow_preimages.len() {
            return reject("preimage list does not cover the required targets");
        }
        for ((role, a, b, t), p) in required.iter().zip(&self.arrow_preimages) {
            if p.role != *role || p.target != *t || p.preimage.source != *a || p.preimage.target != *b {
                return reject("preimage recorded for the wrong target");
            }
            if f.arrow(&p.preimage)? != p.target {
                return reject("a preimage does not map to its target");
            }
        }
        for g in &self.generator_images {
            if f.arrow(&g.generator)? != g.image || f.target().normal_form(&g.image)? != (g.image_alpha.clone(), g.image_word.clone()) {
                return reject("a generator image does not re-evaluate");
            }
        }
        let injective = match self.injectivity {
            InjectivityCertificate::UniqueLifting => unique_lifting_holds(f),
            InjectivityCertificate::Straightening => straightening_holds(f),
            InjectivityCertificate::ExhaustiveToBound(n) => find_collision(f, n)?.is_none(),
        };
        if !injective {
            return reject("the injectivity certificate does not hold");
        }
        Ok(())
    }
}

impl Counterexample {
    /// Re-evaluates the counterexample under `f`.
    pub fn recheck(&self, f: &InducedFunctor) -> Result<bool, CheckError> {
        Ok(match self {
            Counterexample::MissedObject { target } => {
                let sk = f.target().skeleton()?;
                let class = sk.class_of(target);
                class.is_some() && f.source().objects().iter().all(|a| sk.class_of(&f.object(a)) != class)
            }
            Counterexample::MissedArrow { source, target, arrow } => {
                arrow.source == f.object(source)
                    && arrow.target == f.object(target)
                    && admissible_lifts(f, source, target, &arrow.base)?.is_empty()
            }
            Counterexample::KernelElement { arrow, image } => {
                *arrow != f.source().identity(&arrow.source)
                    && f.arrow(arrow)? == *image
                    && *image == f.target().identity(&image.source)
            }
            Counterexample::Collision { first, second, image } => {
                first != second
                    && first.source == second.source
                    && first.target == second.target
                    && f.arrow(first)? == *image
                    && f.arrow(second)? == *image
            }
        })
    }
}
