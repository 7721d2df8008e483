//! The category of elements of a contravariant family of groupoids.
//!
//! Given an index category `C` and, for each object `c`, a groupoid `F(c)`
//! with reindexing functors `F(g): F(c') → F(c)` for `g: c → c'`, the total
//! category has objects `(c, x)` with `x ∈ F(c)` and arrows
//! `(g, ψ): (c, x) → (c', y)` with `ψ: x → F(g)(y)` in `F(c)`.
//! Composition is `(g, ψ) then (g', ψ') = (g then g', ψ then F(g)(ψ'))`.
//!
//! Arrows compose diagrammatically throughout (`f then g`), and
//! `F(f then g) = F(f) ∘ F(g)`.

use std::fmt::Debug;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrothendieckError {
    #[error("NotComposable: the first arrow does not end where the second starts")]
    NotComposable,
    #[error("NotInvertible: the base arrow has no inverse")]
    NotInvertible,
    #[error("BadArrow: {0}")]
    BadArrow(String),
}

pub trait IndexCategory {
    type Object: Clone + Eq + Debug;
    type Arrow: Clone + Eq + Debug;

    fn source(&self, a: &Self::Arrow) -> Self::Object;
    fn target(&self, a: &Self::Arrow) -> Self::Object;
    fn identity(&self, o: &Self::Object) -> Self::Arrow;
    /// `f` then `g`; `None` when not composable.
    fn compose(&self, f: &Self::Arrow, g: &Self::Arrow) -> Option<Self::Arrow>;
    fn inverse(&self, a: &Self::Arrow) -> Option<Self::Arrow>;
}

/// A strict contravariant functor from `C` into groupoids whose morphisms
/// are kept in normal form, so that equality is decidable.
pub trait GroupoidFamily<C: IndexCategory> {
    type Point: Clone + Eq + Debug;
    type Morphism: Clone + Eq + Debug;

    fn contains(&self, c: &C::Object, p: &Self::Point) -> bool;
    fn morphism_source(&self, c: &C::Object, m: &Self::Morphism) -> Self::Point;
    fn morphism_target(&self, c: &C::Object, m: &Self::Morphism) -> Self::Point;
    /// `F(g)(p)` for `g: c → c'` and `p ∈ F(c')`.
    fn reindex_point(&self, g: &C::Arrow, p: &Self::Point) -> Self::Point;
    fn reindex_morphism(&self, g: &C::Arrow, m: &Self::Morphism) -> Self::Morphism;
    fn fiber_identity(&self, c: &C::Object, p: &Self::Point) -> Self::Morphism;
    /// `m1` then `m2` inside `F(c)`.
    fn fiber_compose(&self, c: &C::Object, m1: &Self::Morphism, m2: &Self::Morphism) -> Option<Self::Morphism>;
    fn fiber_inverse(&self, c: &C::Object, m: &Self::Morphism) -> Self::Morphism;
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Element<O, P> {
    pub base: O,
    pub point: P,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ElementArrow<O, P, A, M> {
    pub source: Element<O, P>,
    pub target: Element<O, P>,
    pub base: A,
    pub fiber: M,
}

pub type ObjectOf<C, F> = Element<<C as IndexCategory>::Object, <F as GroupoidFamily<C>>::Point>;
pub type ArrowOf<C, F> = ElementArrow<
    <C as IndexCategory>::Object,
    <F as GroupoidFamily<C>>::Point,
    <C as IndexCategory>::Arrow,
    <F as GroupoidFamily<C>>::Morphism,
>;

/// The total category `∫F`.
#[derive(Debug, Clone)]
pub struct Grothendieck<C, F> {
    pub index: C,
    pub family: F,
}

impl<C: IndexCategory, F: GroupoidFamily<C>> Grothendieck<C, F> {
    pub fn new(index: C, family: F) -> Self {
        Grothendieck { index, family }
    }

    /// Validates the pieces of an arrow and assembles it.
    pub fn arrow(
        &self,
        source: ObjectOf<C, F>,
        target: ObjectOf<C, F>,
        base: C::Arrow,
        fiber: F::Morphism,
    ) -> Result<ArrowOf<C, F>, GrothendieckError> {
        if self.index.source(&base) != source.base || self.index.target(&base) != target.base {
            return Err(GrothendieckError::BadArrow("base arrow has the wrong endpoints".into()));
        }
        if !self.family.contains(&source.base, &source.point) || !self.family.contains(&target.base, &target.point) {
            return Err(GrothendieckError::BadArrow("point outside its fiber".into()));
        }
        let c = &source.base;
        if self.family.morphism_source(c, &fiber) != source.point
            || self.family.morphism_target(c, &fiber) != self.family.reindex_point(&base, &target.point)
        {
            return Err(GrothendieckError::BadArrow("fiber morphism has the wrong endpoints".into()));
        }
        Ok(ElementArrow { source, target, base, fiber })
    }

    pub fn identity(&self, x: &ObjectOf<C, F>) -> ArrowOf<C, F> {
        ElementArrow {
            source: x.clone(),
            target: x.clone(),
            base: self.index.identity(&x.base),
            fiber: self.family.fiber_identity(&x.base, &x.point),
        }
    }

    /// `f` then `g`.
    pub fn compose(&self, f: &ArrowOf<C, F>, g: &ArrowOf<C, F>) -> Result<ArrowOf<C, F>, GrothendieckError> {
        if f.target != g.source {
            return Err(GrothendieckError::NotComposable);
        }
        let base = self.index.compose(&f.base, &g.base).ok_or(GrothendieckError::NotComposable)?;
        let moved = self.family.reindex_morphism(&f.base, &g.fiber);
        let fiber = self
            .family
            .fiber_compose(&f.source.base, &f.fiber, &moved)
            .ok_or(GrothendieckError::NotComposable)?;
        Ok(ElementArrow { source: f.source.clone(), target: g.target.clone(), base, fiber })
    }

    /// `(g, ψ)⁻¹ = (g⁻¹, F(g⁻¹)(ψ⁻¹))`, defined exactly when `g` is invertible.
    pub fn inverse(&self, f: &ArrowOf<C, F>) -> Result<ArrowOf<C, F>, GrothendieckError> {
        let base = self.index.inverse(&f.base).ok_or(GrothendieckError::NotInvertible)?;
        let back = self.family.fiber_inverse(&f.source.base, &f.fiber);
        let fiber = self.family.reindex_morphism(&base, &back);
        Ok(ElementArrow { source: f.target.clone(), target: f.source.clone(), base, fiber })
    }

    /// The projection `∫F → C`.
    pub fn project<'a>(&self, f: &'a ArrowOf<C, F>) -> &'a C::Arrow {
        &f.base
    }
}
