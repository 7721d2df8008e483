//! The `.ggx` text format for finite groups acting on graphs.
//!
//! ```text
//! # the reflection square
//! [group]
//! order 2
//! elements e t
//! mul t t = e
//!
//! [vertices]
//! E
//! N
//!
//! [darts]
//! en: E -> N
//!
//! [action]
//! t: N -> S
//! t: en -> se~
//! ```
//!
//! A group is either a multiplication table (`order`, optional `elements`,
//! `mul a b = c` for every pair not involving the first element, which must
//! be the identity) or permutations closed by the parser (`generators N`
//! followed by `name = (0 1 2)(3 4)`). Each dart `d` also creates its reverse
//! `d~`. Action lines give the images of vertices and darts under listed
//! elements; anything not mentioned is fixed, reverse darts follow, and the
//! listed elements must generate the group. `g: trivial` lists an element
//! that moves nothing.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use orbigroupoid_core::ggraph::{subdivide_from_generators, GGraph, GGraphError};
use orbigroupoid_core::graph::{Dart, GraphBuilder, SerreGraph, Vertex};
use orbigroupoid_core::group::{permutation_from_cycles, Element, FiniteGroup, GroupError, IDENTITY};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GgxError {
    #[error("SyntaxError at line {line}, column {col}: expected {expected}")]
    SyntaxError { line: usize, col: usize, expected: String },
    #[error("UnresolvedName: no {kind} named `{name}`")]
    UnresolvedName { kind: &'static str, name: String },
    #[error("BadTable: {0}")]
    BadTable(String),
    #[error("BadAction: {0}")]
    BadAction(String),
    #[error(transparent)]
    Invalid(#[from] GGraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Table { order: usize, elements: Option<Vec<String>>, products: Vec<Product> },
    Generators { degree: usize, generators: Vec<PermutationDecl> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product {
    pub left: String,
    pub right: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationDecl {
    pub name: String,
    pub cycles: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DartDecl {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionLine {
    Map { element: String, from: String, to: String },
    Trivial { element: String },
}

impl ActionLine {
    pub fn element(&self) -> &str {
        match self {
            ActionLine::Map { element, .. } | ActionLine::Trivial { element } => element,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GgxDocument {
    pub group: GroupSpec,
    pub vertices: Vec<String>,
    pub darts: Vec<DartDecl>,
    pub action: Vec<ActionLine>,
}

impl Default for GgxDocument {
    fn default() -> Self {
        GgxDocument {
            group: GroupSpec::Table { order: 1, elements: None, products: Vec::new() },
            vertices: Vec::new(),
            darts: Vec::new(),
            action: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Colon,
    Arrow,
    Eq,
    Open,
    Close,
    LBracket,
    RBracket,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_name_char)
}

/// Tokens of one line with their 1-based columns. Words may end in `~`.
fn lex(line: usize, text: &str) -> Result<Vec<(usize, Tok)>, GgxError> {
    let text = text.split('#').next().unwrap_or("");
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            ':' => Tok::Colon,
            '=' => Tok::Eq,
            '(' => Tok::Open,
            ')' => Tok::Close,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            c if is_name_char(c) => {
                let start = i;
                while i + 1 < chars.len() && is_name_char(chars[i + 1]) {
                    i += 1;
                }
                if chars.get(i + 1) == Some(&'~') {
                    i += 1;
                }
                Tok::Word(chars[start..=i].iter().collect())
            }
            _ => {
                return Err(GgxError::SyntaxError { line, col, expected: "a name, `:`, `->`, `=`, `(` or `)`".into() })
            }
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

struct Cursor<'a> {
    line: usize,
    end_col: usize,
    toks: &'a [(usize, Tok)],
    at: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, expected: &str) -> Result<T, GgxError> {
        let col = self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end_col);
        Err(GgxError::SyntaxError { line: self.line, col, expected: expected.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), GgxError> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            self.err(what)
        }
    }

    /// A plain name; `~` is allowed only when `tilde` is set.
    fn name(&mut self, tilde: bool, what: &str) -> Result<String, GgxError> {
        match self.peek() {
            Some(Tok::Word(w)) if tilde || !w.ends_with('~') => {
                let w = w.clone();
                self.at += 1;
                Ok(w)
            }
            _ => self.err(what),
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, GgxError> {
        match self.peek() {
            Some(Tok::Word(w)) => match w.parse() {
                Ok(n) => {
                    self.at += 1;
                    Ok(n)
                }
                Err(_) => self.err(what),
            },
            _ => self.err(what),
        }
    }

    fn done(&self) -> Result<(), GgxError> {
        if self.at == self.toks.len() {
            Ok(())
        } else {
            self.err("end of line")
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    None,
    Group,
    Vertices,
    Darts,
    Action,
}

/// Parses the text of a `.ggx` file. Names are checked for syntax only;
/// [`GgxDocument::build`] resolves them.
pub fn parse_ggx(text: &str) -> Result<GgxDocument, GgxError> {
    let mut doc = GgxDocument::default();
    let mut section = Section::None;
    let mut seen = HashSet::new();
    // group header state
    let mut order: Option<usize> = None;
    let mut elements: Option<Vec<String>> = None;
    let mut products = Vec::new();
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let toks = lex(line, raw)?;
        if toks.is_empty() {
            continue;
        }
        let end_col = raw.split('#').next().unwrap_or("").trim_end().chars().count() + 1;
        let mut c = Cursor { line, end_col, toks: &toks, at: 0 };
        if c.peek() == Some(&Tok::LBracket) {
            c.at += 1;
            let name = c.name(false, "a section name")?;
            let next = match name.as_str() {
                "group" => Section::Group,
                "vertices" => Section::Vertices,
                "darts" => Section::Darts,
                "action" => Section::Action,
                _ => {
                    c.at -= 1;
                    return c.err("one of group, vertices, darts, action");
                }
            };
            if !seen.insert(name) {
                c.at -= 1;
                return c.err("a section that has not appeared yet");
            }
            c.expect(Tok::RBracket, "`]`")?;
            c.done()?;
            section = next;
            continue;
        }
        match section {
            Section::None => return c.err("a section header"),
            Section::Group => {
                let keyword = c.name(false, "order, elements, mul, generators or a generator name")?;
                match keyword.as_str() {
                    "order" if degree.is_none() && order.is_none() => {
                        order = Some(c.number("the group order")?);
                        c.done()?;
                    }
                    "elements" if order.is_some() && elements.is_none() && products.is_empty() => {
                        let mut names = Vec::new();
                        while c.peek().is_some() {
                            names.push(c.name(false, "an element name")?);
                        }
                        elements = Some(names);
                    }
                    "mul" if order.is_some() => {
                        let left = c.name(false, "an element name")?;
                        let right = c.name(false, "an element name")?;
                        c.expect(Tok::Eq, "`=`")?;
                        let result = c.name(false, "an element name")?;
                        c.done()?;
                        products.push(Product { left, right, result });
                    }
                    "generators" if order.is_none() && degree.is_none() => {
                        degree = Some(c.number("the number of points")?);
                        c.done()?;
                    }
                    _ if degree.is_some() => {
                        c.expect(Tok::Eq, "`=` after the generator name")?;
                        let mut cycles = Vec::new();
                        while c.peek().is_some() {
                            c.expect(Tok::Open, "`(`")?;
                            let mut cycle = Vec::new();
                            while c.peek() != Some(&Tok::Close) {
                                cycle.push(c.number("a point or `)`")?);
                            }
                            c.at += 1;
                            if !cycle.is_empty() {
                                cycles.push(cycle);
                            }
                        }
                        generators.push(PermutationDecl { name: keyword, cycles });
                    }
                    _ => {
                        c.at = 0;
                        return c.err(if order.is_some() { "elements or mul" } else { "order or generators" });
                    }
                }
            }
            Section::Vertices => {
                while c.peek().is_some() {
                    doc.vertices.push(c.name(false, "a vertex name")?);
                }
            }
            Section::Darts => {
                let name = c.name(false, "a dart name")?;
                c.expect(Tok::Colon, "`:`")?;
                let source = c.name(false, "a vertex name")?;
                c.expect(Tok::Arrow, "`->`")?;
                let target = c.name(false, "a vertex name")?;
                c.done()?;
                doc.darts.push(DartDecl { name, source, target });
            }
            Section::Action => {
                let element = c.name(false, "an element name")?;
                c.expect(Tok::Colon, "`:`")?;
                if c.peek() == Some(&Tok::Word("trivial".into())) && c.toks.len() == 3 {
                    doc.action.push(ActionLine::Trivial { element });
                    continue;
                }
                let from = c.name(true, "a vertex or dart name")?;
                c.expect(Tok::Arrow, "`->`")?;
                let to = c.name(true, "a vertex or dart name")?;
                c.done()?;
                doc.action.push(ActionLine::Map { element, from, to });
            }
        }
    }
    doc.group = match (order, degree) {
        (Some(order), None) => GroupSpec::Table { order, elements, products },
        (None, Some(degree)) => GroupSpec::Generators { degree, generators },
        _ => GroupSpec::Table { order: 1, elements: None, products: Vec::new() },
    };
    Ok(doc)
}

/// The resolved contents of a document, before the action is validated.
pub struct Resolved {
    pub group: Arc<FiniteGroup>,
    pub graph: SerreGraph,
    pub generators: Vec<(Element, Vec<Vertex>, Vec<Dart>)>,
}

impl Resolved {
    pub fn ggraph(self) -> Result<GGraph, GgxError> {
        Ok(GGraph::from_generator_action(self.group, self.graph, &self.generators)?)
    }

    pub fn subdivided(self) -> Result<GGraph, GgxError> {
        Ok(subdivide_from_generators(self.group, self.graph, &self.generators)?)
    }
}

fn default_names(order: usize) -> Vec<String> {
    std::iter::once("e".to_string()).chain((1..order).map(|i| format!("g{i}"))).collect()
}

fn table_group(order: usize, elements: &Option<Vec<String>>, products: &[Product]) -> Result<FiniteGroup, GgxError> {
    let names = elements.clone().unwrap_or_else(|| default_names(order));
    if names.len() != order {
        return Err(GgxError::BadTable(format!("{} element names for order {order}", names.len())));
    }
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if index.len() != order {
        return Err(GgxError::BadTable("repeated element name".into()));
    }
    let find = |n: &str| index.get(n).copied().ok_or_else(|| GgxError::UnresolvedName { kind: "element", name: n.into() });
    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; order]; order];
    table[0] = (0..order).map(Some).collect();
    for (i, row) in table.iter_mut().enumerate() {
        row[0] = Some(i);
    }
    for p in products {
        let (a, b, c) = (find(&p.left)?, find(&p.right)?, find(&p.result)?);
        if a == 0 || b == 0 {
            if table[a][b] != Some(c) {
                return Err(GgxError::BadTable(format!("{} must be the identity", names[0])));
            }
            continue;
        }
        if table[a][b].is_some_and(|old| old != c) {
            return Err(GgxError::BadTable(format!("{} * {} given twice", p.left, p.right)));
        }
        table[a][b] = Some(c);
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(a, row)| {
            row.into_iter()
                .enumerate()
                .map(|(b, c)| c.ok_or_else(|| GgxError::BadTable(format!("missing product {} * {}", names[a], names[b]))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    FiniteGroup::from_table(table, Some(names)).map_err(|e| GgxError::BadTable(e.to_string()))
}

fn permutation_group(degree: usize, generators: &[PermutationDecl]) -> Result<FiniteGroup, GgxError> {
    let perms = generators
        .iter()
        .map(|g| Ok((g.name.clone(), permutation_from_cycles(&g.cycles, degree)?)))
        .collect::<Result<Vec<_>, GroupError>>()
        .map_err(|e| GgxError::BadTable(e.to_string()))?;
    if perms.is_empty() {
        return Ok(FiniteGroup::trivial());
    }
    FiniteGroup::from_permutations(&perms).map_err(|e| GgxError::BadTable(e.to_string()))
}

impl GgxDocument {
    pub fn group(&self) -> Result<FiniteGroup, GgxError> {
        match &self.group {
            GroupSpec::Table { order, elements, products } => table_group(*order, elements, products),
            GroupSpec::Generators { degree, generators } => permutation_group(*degree, generators),
        }
    }

    /// Resolves every name.
    pub fn resolve(&self) -> Result<Resolved, GgxError> {
        let group = Arc::new(self.group()?);
        let mut builder = GraphBuilder::new();
        let mut vertices = HashMap::new();
        for v in &self.vertices {
            if vertices.insert(v.as_str(), builder.add_vertex(v.clone())).is_some() {
                return Err(GgxError::BadAction(format!("vertex {v} declared twice")));
            }
        }
        let vertex = |n: &str| vertices.get(n).copied().ok_or_else(|| GgxError::UnresolvedName { kind: "vertex", name: n.into() });
        let mut darts = HashMap::new();
        for d in &self.darts {
            let dart = builder.add_edge(d.name.clone(), vertex(&d.source)?, vertex(&d.target)?);
            let reverse = format!("{}~", d.name);
            if vertices.contains_key(d.name.as_str()) || darts.insert(d.name.clone(), dart).is_some() {
                return Err(GgxError::BadAction(format!("name {} used twice", d.name)));
            }
            darts.insert(reverse, dart + 1);
        }
        let graph = builder.build();

        let mut by_element: BTreeMap<Element, (Vec<Vertex>, Vec<Dart>)> = BTreeMap::new();
        for line in &self.action {
            let g = group
                .element_by_label(line.element())
                .ok_or_else(|| GgxError::UnresolvedName { kind: "element", name: line.element().into() })?;
            let entry = by_element
                .entry(g)
                .or_insert_with(|| ((0..graph.vertex_count()).collect(), (0..graph.dart_count()).collect()));
            let ActionLine::Map { from, to, .. } = line else { continue };
            match (vertices.get(from.as_str()), darts.get(from.as_str())) {
                (Some(&v), _) => {
                    entry.0[v] = *vertices
                        .get(to.as_str())
                        .ok_or_else(|| GgxError::UnresolvedName { kind: "vertex", name: to.clone() })?;
                }
                (None, Some(&d)) => {
                    let e = *darts.get(to.as_str()).ok_or_else(|| GgxError::UnresolvedName { kind: "dart", name: to.clone() })?;
                    entry.1[d] = e;
                    entry.1[graph.rev(d)] = graph.rev(e);
                }
                (None, None) => return Err(GgxError::UnresolvedName { kind: "vertex or dart", name: from.clone() }),
            }
        }
        let generators = by_element.into_iter().map(|(g, (v, d))| (g, v, d)).collect();
        Ok(Resolved { group, graph, generators })
    }

    pub fn build(&self) -> Result<GGraph, GgxError> {
        self.resolve()?.ggraph()
    }
}

/// Prints a document so that [`parse_ggx`] returns it unchanged.
pub fn print_ggx(doc: &GgxDocument) -> String {
    let mut out = String::from("[group]\n");
    match &doc.group {
        GroupSpec::Table { order, elements, products } => {
            let _ = writeln!(out, "order {order}");
            if let Some(names) = elements {
                let _ = writeln!(out, "elements {}", names.join(" "));
            }
            for p in products {
                let _ = writeln!(out, "mul {} {} = {}", p.left, p.right, p.result);
            }
        }
        GroupSpec::Generators { degree, generators } => {
            let _ = writeln!(out, "generators {degree}");
            for g in generators {
                let cycles: String = g
                    .cycles
                    .iter()
                    .map(|c| format!("({})", c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")))
                    .collect();
                let cycles = if cycles.is_empty() { "()".to_string() } else { cycles };
                let _ = writeln!(out, "{} = {cycles}", g.name);
            }
        }
    }
    out.push_str("\n[vertices]\n");
    for v in &doc.vertices {
        let _ = writeln!(out, "{v}");
    }
    out.push_str("\n[darts]\n");
    for d in &doc.darts {
        let _ = writeln!(out, "{}: {} -> {}", d.name, d.source, d.target);
    }
    out.push_str("\n[action]\n");
    for a in &doc.action {
        match a {
            ActionLine::Map { element, from, to } => {
                let _ = writeln!(out, "{element}: {from} -> {to}");
            }
            ActionLine::Trivial { element } => {
                let _ = writeln!(out, "{element}: trivial");
            }
        }
    }
    out
}

/// Turns labels into distinct names, replacing other characters by `_`.
fn names_for<'a>(labels: impl Iterator<Item = &'a str>, taken: &mut HashSet<String>) -> Vec<String> {
    labels
        .map(|l| {
            let mut base: String = l.trim_end_matches('~').chars().map(|c| if is_name_char(c) { c } else { '_' }).collect();
            if base.is_empty() {
                base.push('x');
            }
            let mut name = base.clone();
            let mut k = 2;
            while taken.contains(&name) || taken.contains(&format!("{name}~")) {
                name = format!("{base}_{k}");
                k += 1;
            }
            taken.insert(name.clone());
            name
        })
        .collect()
}

/// A document describing `x`, with the action listed on a generating set.
pub fn from_ggraph(x: &GGraph) -> GgxDocument {
    let g = x.group();
    let graph = x.graph();
    let mut taken = HashSet::new();
    let elements = names_for(g.labels().iter().map(String::as_str), &mut taken);
    let mut taken = HashSet::new();
    let vertices = names_for(graph.vertex_labels().iter().map(String::as_str), &mut taken);
    let positive: Vec<Dart> = graph.positive_darts().collect();
    let dart_names = names_for(positive.iter().map(|&d| graph.dart_label(d)), &mut taken);
    let mut dart_name = vec![String::new(); graph.dart_count()];
    for (&d, name) in positive.iter().zip(&dart_names) {
        dart_name[graph.rev(d)] = format!("{name}~");
        dart_name[d] = name.clone();
    }

    let mut products = Vec::new();
    for a in g.elements().filter(|&a| a != IDENTITY) {
        for b in g.elements().filter(|&b| b != IDENTITY) {
            products.push(Product {
                left: elements[a].clone(),
                right: elements[b].clone(),
                result: elements[g.mul(a, b)].clone(),
            });
        }
    }

    let mut generating = Vec::new();
    let mut span = g.generated_by(&[]);
    for a in g.elements() {
        if !span.contains(a) {
            generating.push(a);
            span = g.generated_by(&generating);
        }
    }
    let mut action = Vec::new();
    for &a in &generating {
        let before = action.len();
        for v in 0..graph.vertex_count() {
            let w = x.act_vertex(a, v);
            if w != v {
                action.push(ActionLine::Map { element: elements[a].clone(), from: vertices[v].clone(), to: vertices[w].clone() });
            }
        }
        for &d in &positive {
            let e = x.act_dart(a, d);
            if e != d {
                action.push(ActionLine::Map { element: elements[a].clone(), from: dart_name[d].clone(), to: dart_name[e].clone() });
            }
        }
        if action.len() == before {
            action.push(ActionLine::Trivial { element: elements[a].clone() });
        }
    }

    let darts = positive
        .iter()
        .map(|&d| DartDecl {
            name: dart_name[d].clone(),
            source: vertices[graph.source(d)].clone(),
            target: vertices[graph.target(d)].clone(),
        })
        .collect();
    GgxDocument {
        group: GroupSpec::Table { order: g.order(), elements: Some(elements), products },
        vertices,
        darts,
        action,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "\
# comment line
[group]
order 2
elements e t
mul t t = e   # trailing

[vertices]
E
N W S

[darts]
en: E -> N
nw: N -> W
ws: W -> S
se: S -> E

[action]
t: N -> S
t: S -> N
t: en -> se~
t: nw -> ws~
t: ws -> nw~
t: se -> en~
";

    #[test]
    fn parses_the_square() {
        let doc = parse_ggx(SQUARE).unwrap();
        assert_eq!(doc.vertices, ["E", "N", "W", "S"]);
        assert_eq!(doc.darts.len(), 4);
        let x = doc.build().unwrap();
        assert_eq!(x.act_dart(1, 0), 7);
        assert_eq!(x.act_dart(1, 6), 1);
        assert_eq!(x.act_vertex(1, 1), 3);
    }

    #[test]
    fn round_trip() {
        let doc = parse_ggx(SQUARE).unwrap();
        assert_eq!(parse_ggx(&print_ggx(&doc)).unwrap(), doc);
        let regenerated = from_ggraph(&doc.build().unwrap());
        assert_eq!(parse_ggx(&print_ggx(&regenerated)).unwrap(), regenerated);
    }

    #[test]
    fn empty_sections() {
        let doc = parse_ggx("[group]\norder 1\n[vertices]\n").unwrap();
        let x = doc.build().unwrap();
        assert_eq!(x.graph().vertex_count(), 0);
        assert_eq!(parse_ggx("").unwrap().build().unwrap().group().order(), 1);
    }

    #[test]
    fn syntax_errors_point_at_the_token() {
        let err = parse_ggx("[vertices]\nA\n[darts]\nab A -> B\n").unwrap_err();
        assert_eq!(err, GgxError::SyntaxError { line: 4, col: 4, expected: "`:`".into() });
        let err = parse_ggx("A\n").unwrap_err();
        assert!(matches!(err, GgxError::SyntaxError { line: 1, col: 1, .. }));
        let err = parse_ggx("[shapes]\n").unwrap_err();
        assert!(matches!(err, GgxError::SyntaxError { line: 1, col: 2, .. }));
        let err = parse_ggx("[darts]\nab: A -> \n").unwrap_err();
        assert!(matches!(err, GgxError::SyntaxError { line: 2, col: 9, .. }));
    }

    #[test]
    fn unresolved_names() {
        let doc = parse_ggx("[vertices]\nA\n[darts]\nab: A -> B\n").unwrap();
        assert_eq!(doc.build().unwrap_err(), GgxError::UnresolvedName { kind: "vertex", name: "B".into() });
        let doc = parse_ggx("[vertices]\nA\n[action]\nt: A -> A\n").unwrap();
        assert!(matches!(doc.build().unwrap_err(), GgxError::UnresolvedName { kind: "element", .. }));
    }

    #[test]
    fn bad_tables() {
        let doc = parse_ggx("[group]\norder 2\nelements e t\n").unwrap();
        assert!(matches!(doc.build().unwrap_err(), GgxError::BadTable(_)));
        let doc = parse_ggx("[group]\norder 2\nelements e t\nmul t t = t\n").unwrap();
        assert!(matches!(doc.build().unwrap_err(), GgxError::BadTable(_)));
    }

    #[test]
    fn permutation_groups_close() {
        let text = "[group]\ngenerators 3\nr = (0 1 2)\ns = (1 2)\n";
        let doc = parse_ggx(text).unwrap();
        assert_eq!(doc.group().unwrap().order(), 6);
        assert_eq!(parse_ggx(&print_ggx(&doc)).unwrap(), doc);
    }

    #[test]
    fn inversions_are_rejected_unless_subdivided() {
        let text = "[group]\norder 2\nelements e t\nmul t t = e\n[vertices]\nA B\n[darts]\nab: A -> B\n[action]\nt: A -> B\nt: B -> A\nt: ab -> ab~\n";
        let doc = parse_ggx(text).unwrap();
        assert!(matches!(doc.build().unwrap_err(), GgxError::Invalid(GGraphError::EdgeInversion { .. })));
        let x = doc.resolve().unwrap().subdivided().unwrap();
        assert_eq!(x.graph().vertex_count(), 3);
    }
}
