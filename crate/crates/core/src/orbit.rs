//! The orbit category `O_G` of a finite group.
//!
//! Objects are subgroups `H` (standing for `G/H`); an arrow `G/H → G/K` is a
//! coset `αK` with `α⁻¹Hα ⊆ K`, i.e. `gH ↦ gαK`. Composition multiplies
//! representatives left to right. For finite `G` the spaces `(G/K)^H` are
//! discrete, so there are no non-identity 2-cells.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::group::{Element, FiniteGroup, GroupHom, Subgroup, IDENTITY};

/// Whether `O_G` carries only identity 2-cells; always so for finite groups.
pub const TWO_CELLS_ARE_TRIVIAL: bool = true;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("NotComposable: target {0:?} differs from source {1:?}")]
    NotComposable(Subgroup, Subgroup),
    #[error("NotAnArrow: {alpha}⁻¹ H {alpha} is not contained in the target")]
    NotAnArrow { alpha: Element },
}

/// `αK : G/H → G/K` with `α` the minimal element of its coset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitArrow {
    source: Subgroup,
    target: Subgroup,
    rep: Element,
}

impl fmt::Debug for OrbitArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -[{}]-> {:?}", self.source, self.rep, self.target)
    }
}

impl OrbitArrow {
    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn target(&self) -> &Subgroup {
        &self.target
    }

    /// The canonical coset representative `α`.
    pub fn rep(&self) -> Element {
        self.rep
    }
}

#[derive(Clone)]
pub struct OrbitCategory {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
}

impl fmt::Debug for OrbitCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrbitCategory({} objects)", self.subgroups.len())
    }
}

impl OrbitCategory {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        let subgroups = group.list_subgroups();
        OrbitCategory { group, subgroups }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// All objects, sorted by (size, elements).
    pub fn objects(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn object_index(&self, h: &Subgroup) -> Option<usize> {
        self.subgroups.iter().position(|s| s == h)
    }

    fn admissible(&self, alpha: Element, h: &Subgroup, k: &Subgroup) -> bool {
        let g = &self.group;
        h.iter().all(|x| k.contains(g.conjugate(g.inv(alpha), x)))
    }

    /// The arrow `αK : G/H → G/K`, checking `α⁻¹Hα ⊆ K`.
    pub fn arrow(&self, h: &Subgroup, k: &Subgroup, alpha: Element) -> Result<OrbitArrow, OrbitError> {
        if !self.admissible(alpha, h, k) {
            return Err(OrbitError::NotAnArrow { alpha });
        }
        Ok(OrbitArrow { source: h.clone(), target: k.clone(), rep: self.group.coset_rep(alpha, k) })
    }

    /// One arrow per admissible coset, by ascending representative.
    pub fn arrows_between(&self, h: &Subgroup, k: &Subgroup) -> Vec<OrbitArrow> {
        self.group
            .coset_reps(k)
            .into_iter()
            .filter(|&a| self.admissible(a, h, k))
            .map(|rep| OrbitArrow { source: h.clone(), target: k.clone(), rep })
            .collect()
    }

    pub fn identity(&self, h: &Subgroup) -> OrbitArrow {
        OrbitArrow { source: h.clone(), target: h.clone(), rep: IDENTITY }
    }

    /// `f` then `g`: `(αK, βM) ↦ αβM`.
    pub fn compose(&self, f: &OrbitArrow, g: &OrbitArrow) -> Result<OrbitArrow, OrbitError> {
        if f.target != g.source {
            return Err(OrbitError::NotComposable(f.target.clone(), g.source.clone()));
        }
        let rep = self.group.coset_rep(self.group.mul(f.rep, g.rep), &g.target);
        Ok(OrbitArrow { source: f.source.clone(), target: g.target.clone(), rep })
    }

    /// `α⁻¹H : G/K → G/H` when `α⁻¹Hα = K`.
    pub fn inverse(&self, f: &OrbitArrow) -> Option<OrbitArrow> {
        let g = &self.group;
        if g.conjugate_subgroup(g.inv(f.rep), &f.source) != f.target {
            return None;
        }
        Some(OrbitArrow {
            source: f.target.clone(),
            target: f.source.clone(),
            rep: g.coset_rep(g.inv(f.rep), &f.source),
        })
    }

    pub fn is_invertible(&self, f: &OrbitArrow) -> bool {
        self.inverse(f).is_some()
    }
}

/// The functor `O_{G₁} → O_{G₂}` of a homomorphism: `H ↦ φ(H)`,
/// `αK ↦ φ(α)φ(K)`.
#[derive(Debug, Clone)]
pub struct OrbitFunctor {
    hom: GroupHom,
    source: OrbitCategory,
    target: OrbitCategory,
}

impl OrbitFunctor {
    /// Builds the functor, re-checking that every arrow lands on an arrow
    /// and that identities go to identities.
    pub fn new(hom: GroupHom) -> Self {
        let source = OrbitCategory::new(hom.source().clone());
        let target = OrbitCategory::new(hom.target().clone());
        let f = OrbitFunctor { hom, source, target };
        for h in f.source.objects() {
            assert_eq!(f.arrow(&f.source.identity(h)), f.target.identity(&f.object(h)));
            for k in f.source.objects() {
                for a in f.source.arrows_between(h, k) {
                    assert!(
                        f.target.admissible(f.hom.apply(a.rep), &f.object(h), &f.object(k)),
                        "homomorphic images of arrows are arrows"
                    );
                }
            }
        }
        f
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn source(&self) -> &OrbitCategory {
        &self.source
    }

    pub fn target(&self) -> &OrbitCategory {
        &self.target
    }

    pub fn object(&self, h: &Subgroup) -> Subgroup {
        self.hom.image(h)
    }

    pub fn arrow(&self, f: &OrbitArrow) -> OrbitArrow {
        let k = self.object(&f.target);
        OrbitArrow {
            source: self.object(&f.source),
            rep: self.target.group.coset_rep(self.hom.apply(f.rep), &k),
            target: k,
        }
    }
}
