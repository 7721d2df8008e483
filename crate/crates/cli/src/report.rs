//! Text and JSON-lines reports.

use std::fmt::Write as _;

use anyhow::Result;
use orbigroupoid_core::equivalence::{Counterexample, EquivVerdict, Witness};
use orbigroupoid_core::morita::InducedFunctor;
use orbigroupoid_core::pi::{AutGroup, HomShape, PiArrow, PiCategory, PiObject};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    JsonLines,
}

/// One JSON-lines record. Keys appear in field order; absent fields are
/// omitted.
#[derive(Debug, Default, Serialize)]
pub struct Record {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empty: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aut: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<i32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winding: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn lines(records: &[Record]) -> String {
    records.iter().map(|r| serde_json::to_string(r).expect("records serialize") + "\n").collect()
}

pub fn object_name(pi: &PiCategory, o: &PiObject) -> String {
    let g = pi.group();
    let elements: Vec<&str> = o.base.iter().map(|a| g.label(a)).collect();
    format!("({{{}}}, {})", elements.join(","), pi.space().graph().vertex_label(o.point))
}

pub fn arrow_name(pi: &PiCategory, f: &PiArrow) -> String {
    let graph = pi.space().graph();
    let path: Vec<&str> = f.fiber.darts().iter().map(|&d| graph.dart_label(d)).collect();
    let path = if path.is_empty() { format!("@{}", graph.vertex_label(f.fiber.start())) } else { path.join(" ") };
    format!("({}; {})", pi.group().label(f.base.rep()), path)
}

fn word_name(word: &[i32]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|&l| if l > 0 { format!("a{l}") } else { format!("a{}⁻¹", -l) })
        .collect::<Vec<_>>()
        .join(" ")
}

fn free_group_name(rank: usize) -> String {
    match rank {
        0 => "trivial".into(),
        1 => "Z".into(),
        r => format!("F{r}"),
    }
}

/// A short name for an automorphism group given by loops and twists.
pub fn aut_shape(pi: &PiCategory, aut: &AutGroup) -> Result<String> {
    let (loops, twists) = (&aut.loop_generators, &aut.twist_generators);
    if twists.is_empty() {
        return Ok(free_group_name(loops.len()));
    }
    if loops.is_empty() {
        return Ok(format!("finite of order {}", twists.len() + 1));
    }
    if loops.len() == 1 && twists.len() == 1 {
        let (a, b) = (&loops[0], &twists[0]);
        let bb = pi.compose(b, b)?;
        let id = pi.identity(&aut.object);
        let conj = pi.compose(&pi.compose(b, a)?, &pi.inverse(b)?)?;
        if bb == id && conj == pi.inverse(a)? {
            return Ok("D∞".into());
        }
        if bb == *a || bb == pi.inverse(a)? {
            return Ok("Z".into());
        }
    }
    Ok(format!("{} extended by {} twists", free_group_name(loops.len()), twists.len()))
}

pub fn hom_name(pi: &PiCategory, shape: &HomShape) -> String {
    let parts: Vec<String> = shape
        .entries
        .iter()
        .filter_map(|e| e.summand.rank().map(|r| (e, r)))
        .map(|(e, r)| {
            let torsor = if r == 0 { "pt".to_string() } else { free_group_name(r) };
            if shape.entries.len() > 1 {
                format!("{}:{torsor}", pi.group().label(e.alpha.rep()))
            } else {
                torsor
            }
        })
        .collect();
    if parts.is_empty() {
        "empty".into()
    } else {
        parts.join(" ⊔ ")
    }
}

pub fn skeleton_report(pi: &PiCategory, format: Format) -> Result<String> {
    let sk = pi.skeleton()?;
    let mut text = String::new();
    let mut records = Vec::new();
    let _ = writeln!(text, "classes: {}", sk.classes.len());
    for (i, class) in sk.classes.iter().enumerate() {
        let aut = aut_shape(pi, &pi.aut_group(&class.representative)?)?;
        let name = object_name(pi, &class.representative);
        let _ = writeln!(text, "[{i}] {name}  members: {}  Aut: {aut}", class.members.len());
        records.push(Record {
            kind: "class",
            source: Some(name.clone()),
            target: Some(name),
            members: Some(class.members.len()),
            aut: Some(aut),
            ..Record::default()
        });
    }
    for (i, a) in sk.classes.iter().enumerate() {
        for (j, b) in sk.classes.iter().enumerate() {
            let shape = sk.hom(i, j);
            let _ = writeln!(text, "hom [{i}] -> [{j}]: {}", hom_name(pi, shape));
            let (source, target) = (object_name(pi, &a.representative), object_name(pi, &b.representative));
            if shape.entries.is_empty() {
                records.push(Record {
                    kind: "hom",
                    source: Some(source.clone()),
                    target: Some(target.clone()),
                    empty: Some(true),
                    ..Record::default()
                });
            }
            for e in &shape.entries {
                records.push(Record {
                    kind: "hom",
                    source: Some(source.clone()),
                    target: Some(target.clone()),
                    alpha: Some(pi.group().label(e.alpha.rep()).to_string()),
                    rank: e.summand.rank(),
                    empty: e.summand.is_empty().then_some(true),
                    ..Record::default()
                });
            }
        }
    }
    Ok(match format {
        Format::Text => text,
        Format::JsonLines => lines(&records),
    })
}

/// Object map on source classes and images of automorphism generators.
pub fn functor_manifest(f: &InducedFunctor, format: Format) -> Result<String> {
    let (s, t) = (f.source(), f.target());
    let mut text = String::new();
    let mut records = Vec::new();
    for class in s.skeleton()?.classes {
        let a = &class.representative;
        let image = f.object(a);
        let _ = writeln!(text, "object {} -> {}", object_name(s, a), object_name(t, &image));
        records.push(Record {
            kind: "object",
            source: Some(object_name(s, a)),
            target: Some(object_name(t, &image)),
            ..Record::default()
        });
        for generator in s.aut_group(a)?.generators() {
            let image = f.arrow(&generator)?;
            let (alpha, word) = t.normal_form(&image)?;
            let _ = writeln!(
                text,
                "generator {} -> {} = ({}; {}) winding {}",
                arrow_name(s, &generator),
                arrow_name(t, &image),
                t.group().label(alpha.rep()),
                word_name(word.letters()),
                word.exponent_sum()
            );
            records.push(Record {
                kind: "generator",
                source: Some(arrow_name(s, &generator)),
                target: Some(arrow_name(t, &image)),
                alpha: Some(t.group().label(alpha.rep()).to_string()),
                word: Some(word.letters().to_vec()),
                winding: Some(word.exponent_sum()),
                ..Record::default()
            });
        }
    }
    Ok(match format {
        Format::Text => text,
        Format::JsonLines => lines(&records),
    })
}

fn witness_text(f: &InducedFunctor, w: &Witness, out: &mut String) {
    let (s, t) = (f.source(), f.target());
    let _ = writeln!(out, "injectivity: {:?}", w.injectivity);
    let _ = writeln!(out, "object lifts: {}", w.object_lifts.len());
    for l in &w.object_lifts {
        let _ = writeln!(out, "  {} <- {}", object_name(t, &l.target), object_name(s, &l.source));
    }
    let _ = writeln!(out, "arrow preimages: {}", w.arrow_preimages.len());
    let _ = writeln!(out, "generator images:");
    for g in &w.generator_images {
        let _ = writeln!(
            out,
            "  {} -> ({}; {}) winding {}",
            arrow_name(s, &g.generator),
            t.group().label(g.image_alpha.rep()),
            word_name(g.image_word.letters()),
            g.image_word.exponent_sum()
        );
    }
}

fn counterexample_text(f: &InducedFunctor, c: &Counterexample, out: &mut String) {
    let (s, t) = (f.source(), f.target());
    match c {
        Counterexample::MissedObject { target } => {
            let _ = writeln!(out, "counterexample: MissedObject {}", object_name(t, target));
        }
        Counterexample::MissedArrow { source, target, arrow } => {
            let _ = writeln!(
                out,
                "counterexample: MissedArrow {} between {} and {}",
                arrow_name(t, arrow),
                object_name(s, source),
                object_name(s, target)
            );
        }
        Counterexample::KernelElement { arrow, image } => {
            let _ = writeln!(out, "counterexample: KernelElement {} -> {}", arrow_name(s, arrow), arrow_name(t, image));
        }
        Counterexample::Collision { first, second, image } => {
            let _ = writeln!(
                out,
                "counterexample: Collision {} and {} -> {}",
                arrow_name(s, first),
                arrow_name(s, second),
                arrow_name(t, image)
            );
        }
    }
}

fn counterexample_name(c: &Counterexample) -> &'static str {
    match c {
        Counterexample::MissedObject { .. } => "MissedObject",
        Counterexample::MissedArrow { .. } => "MissedArrow",
        Counterexample::KernelElement { .. } => "KernelElement",
        Counterexample::Collision { .. } => "Collision",
    }
}

pub fn check_report(f: &InducedFunctor, verdict: &EquivVerdict, strategy: &str, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("verdict: {}\nstrategy: {strategy}\n", verdict.name());
            match verdict {
                EquivVerdict::Equivalent(w) => witness_text(f, w, &mut out),
                EquivVerdict::NotEquivalent(c) => counterexample_text(f, c, &mut out),
                EquivVerdict::Unknown { bounds, unresolved } => {
                    let _ = writeln!(out, "word length bound: {}", bounds.word_length);
                    for u in unresolved {
                        let _ = writeln!(out, "  {u}");
                    }
                }
            }
            out
        }
        Format::JsonLines => {
            let mut records = vec![Record {
                kind: "verdict",
                verdict: Some(verdict.name()),
                detail: Some(strategy.to_string()),
                ..Record::default()
            }];
            match verdict {
                EquivVerdict::Equivalent(w) => {
                    for g in &w.generator_images {
                        records.push(Record {
                            kind: "generator",
                            source: Some(arrow_name(f.source(), &g.generator)),
                            target: Some(arrow_name(f.target(), &g.image)),
                            alpha: Some(f.target().group().label(g.image_alpha.rep()).to_string()),
                            word: Some(g.image_word.letters().to_vec()),
                            winding: Some(g.image_word.exponent_sum()),
                            ..Record::default()
                        });
                    }
                }
                EquivVerdict::NotEquivalent(c) => {
                    let mut detail = String::new();
                    counterexample_text(f, c, &mut detail);
                    records.push(Record {
                        kind: "counterexample",
                        verdict: Some(counterexample_name(c)),
                        detail: Some(detail.trim_end().to_string()),
                        ..Record::default()
                    });
                }
                EquivVerdict::Unknown { unresolved, .. } => {
                    for u in unresolved {
                        records.push(Record { kind: "unresolved", detail: Some(u.clone()), ..Record::default() });
                    }
                }
            }
            lines(&records)
        }
    }
}
