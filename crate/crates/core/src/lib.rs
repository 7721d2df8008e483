//! Equivariant fundamental categories of finite groups acting on finite graphs.
//!
//! A G-space is modeled as a finite Serre graph with an action without
//! inversion. From it we build the category whose objects are pairs
//! `(G/H, x)` with `x` fixed by `H` and whose arrows pair an orbit-category
//! arrow with a reduced path, together with the quotient and induction moves
//! between translation groupoids and a checker that certifies when the
//! induced functors are equivalences.

pub mod group;
pub mod graph;
pub mod ggraph;
pub mod fixtures;
pub mod path;
pub mod orbit;
pub mod grothendieck;
pub mod pi;
pub mod morita;
pub mod equivalence;
