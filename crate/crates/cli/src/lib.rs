//! Command-line plumbing for `orbigroupoid`: the `.ggx` format, built-in
//! fixtures, move descriptions and reports.

pub mod ggx;
pub mod report;

use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use orbigroupoid_core::ggraph::{EquivariantGraphMap, GGraph};
use orbigroupoid_core::group::{FiniteGroup, GroupHom, Subgroup};
use orbigroupoid_core::morita::{induction_move, quotient_move, InducedFunctor, Provenance};

pub const C4REFL_GGX: &str = include_str!("../fixtures/c4refl.ggx");
pub const C4_GGX: &str = include_str!("../fixtures/c4.ggx");
pub const HEX6_GGX: &str = include_str!("../fixtures/hex6.ggx");
pub const Z4_GGX: &str = include_str!("../fixtures/z4.ggx");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    C4refl,
    Hex6,
    IndZ4,
    C4,
}

impl Fixture {
    pub const ALL: [Fixture; 4] = [Fixture::C4refl, Fixture::Hex6, Fixture::IndZ4, Fixture::C4];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::C4refl => "c4refl",
            Fixture::Hex6 => "hex6",
            Fixture::IndZ4 => "ind-z4",
            Fixture::C4 => "c4",
        }
    }

    pub fn from_name(name: &str) -> Option<Fixture> {
        Fixture::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn text(self) -> &'static str {
        match self {
            Fixture::C4refl | Fixture::IndZ4 => C4REFL_GGX,
            Fixture::Hex6 => HEX6_GGX,
            Fixture::C4 => C4_GGX,
        }
    }

    /// The move checked when none is given on the command line.
    pub fn default_move(self) -> Option<MoveSpec> {
        match self {
            Fixture::C4refl => None,
            Fixture::Hex6 => Some(MoveSpec::Quotient("full".into())),
            Fixture::IndZ4 => Some(MoveSpec::Induce { group: "z4".into(), via: "t=r2".into() }),
            Fixture::C4 => Some(MoveSpec::Collapse),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveSpec {
    /// Divide by a normal subgroup: `full`, `trivial`, or generators `a,b`.
    Quotient(String),
    /// Induce up to a group (built-in name `z4` or a `.ggx` file) along
    /// generator images `t=r2,...`.
    Induce { group: String, via: String },
    /// Map everything to a point.
    Collapse,
}

pub fn load_ggraph(text: &str) -> Result<Arc<GGraph>> {
    let doc = ggx::parse_ggx(text)?;
    Ok(Arc::new(doc.build()?))
}

pub fn read_input(file: Option<&Path>, fixture: Option<Fixture>) -> Result<String> {
    match (file, fixture) {
        (Some(path), _) => std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())),
        (None, Some(f)) => Ok(f.text().to_string()),
        (None, None) => bail!("give a .ggx file or --fixture"),
    }
}

fn load_group(spec: &str) -> Result<Arc<FiniteGroup>> {
    let text = match spec {
        "z4" => Z4_GGX.to_string(),
        path => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
    };
    Ok(Arc::new(ggx::parse_ggx(&text)?.group()?))
}

fn subgroup_spec(g: &FiniteGroup, spec: &str) -> Result<Subgroup> {
    match spec {
        "full" => Ok(g.whole()),
        "trivial" => Ok(Subgroup::trivial()),
        list => {
            let gens = list
                .split(',')
                .map(|n| g.element_by_label(n.trim()).ok_or_else(|| anyhow!("UnresolvedName: no element named `{}`", n.trim())))
                .collect::<Result<Vec<_>>>()?;
            Ok(g.generated_by(&gens))
        }
    }
}

fn hom_spec(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, via: &str) -> Result<GroupHom> {
    let mut images = Vec::new();
    for pair in via.split(',').filter(|p| !p.trim().is_empty()) {
        let (a, b) = pair.split_once('=').ok_or_else(|| anyhow!("expected `source=target` in --via, got `{pair}`"))?;
        let a = source.element_by_label(a.trim()).ok_or_else(|| anyhow!("UnresolvedName: no element named `{}`", a.trim()))?;
        let b = target.element_by_label(b.trim()).ok_or_else(|| anyhow!("UnresolvedName: no element named `{}`", b.trim()))?;
        images.push((a, b));
    }
    Ok(GroupHom::from_generator_images(source.clone(), target.clone(), &images)?)
}

/// Applies a move to `x`, returning the graph map and its functor.
pub fn apply_move(x: &Arc<GGraph>, spec: &MoveSpec) -> Result<(EquivariantGraphMap, InducedFunctor)> {
    Ok(match spec {
        MoveSpec::Quotient(n) => quotient_move(x, &subgroup_spec(x.group(), n)?)?,
        MoveSpec::Induce { group, via } => {
            let g = load_group(group)?;
            let hom = hom_spec(x.group(), &g, via)?;
            induction_move(x, g, hom.as_slice())?
        }
        MoveSpec::Collapse => {
            let map = EquivariantGraphMap::to_point(x.clone());
            let functor = InducedFunctor::new(map.clone(), Provenance::General)?;
            (map, functor)
        }
    })
}

/// A remediation hint for errors that have one.
pub fn hint(err: &anyhow::Error) -> Option<&'static str> {
    let text = err.to_string();
    if text.starts_with("NotFree") {
        Some("only subgroups acting freely can be divided out; pick one meeting every stabilizer trivially")
    } else if text.starts_with("NotNormal") {
        Some("the quotient move needs a normal subgroup")
    } else if text.starts_with("EdgeInversion") || text.starts_with("InversionInQuotient") {
        Some("run `orbigroupoid subdivide` on the input first")
    } else if text.starts_with("NotAHomomorphism") || text.starts_with("EmbeddingNotHom") {
        Some("the --via images must respect the group relations")
    } else {
        None
    }
}
