//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;

use orbigroupoid_core::equivalence::{
    path_lift, weak_equivalence, Counterexample, EquivVerdict, InjectivityCertificate, SearchBounds, Strategy,
};
use orbigroupoid_core::fixtures;
use orbigroupoid_core::ggraph::{DartImage, EquivariantGraphMap, GGraph};
use orbigroupoid_core::group::{FiniteGroup, GroupHom};
use orbigroupoid_core::morita::{induction_move, quotient_move, InducedFunctor, Provenance};
use orbigroupoid_core::path::{reduce, EdgePath, ReducedPath};
use orbigroupoid_core::pi::{PiArrow, PiCategory, PiObject};
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let pi = PiCategory::new(Arc::new(fixtures::c4refl()));
    let sk = pi.skeleton().map_err(err)?;
    ensure!(sk.classes.len() == 3, "{} classes", sk.classes.len());
    let free = sk.classes.iter().position(|c| c.representative.base.len() == 1).ok_or("no free class")?;
    let fixed: Vec<usize> = (0..3).filter(|&i| i != free).collect();
    let aut = pi.aut_group(&sk.classes[free].representative).map_err(err)?;
    ensure!(aut.loop_generators.len() == 1 && aut.twist_generators.len() == 1, "Aut needs generators a, b");
    let eval = |w: &[i32]| pi.evaluate(&aut, w).map_err(err);
    let id = pi.identity(&aut.object);
    ensure!(eval(&[2, 2])? == id, "b∘b != id");
    ensure!(eval(&[2, 1, -2])? == eval(&[-1])?, "b∘a∘b⁻¹ != a⁻¹");
    ensure!(eval(&[2])? != id, "b = id");
    for k in 1..=8 {
        ensure!(eval(&vec![1; k])? != id, "a has finite order {k}");
    }
    for &j in &fixed {
        let hom = sk.hom(free, j);
        let ranks: Vec<Option<usize>> = hom.entries.iter().map(|e| e.summand.rank()).collect();
        ensure!(ranks == [Some(1)], "hom to fixed class {j}: {ranks:?}");
    }
    ensure!(sk.hom(fixed[0], fixed[1]).is_empty() && sk.hom(fixed[1], fixed[0]).is_empty(), "fixed classes connected");
    Ok("3 classes, Aut = <a, b | b², bab⁻¹a> (D∞), homs Z, Z, empty".into())
}

fn criterion_2() -> Outcome {
    let x = Arc::new(fixtures::hex6());
    let (_, f) = quotient_move(&x, &x.group().whole()).map_err(err)?;
    let a = f.source().skeleton().map_err(err)?.classes[0].representative.clone();
    let aut = f.source().aut_group(&a).map_err(err)?;
    let winding = |w: &[i32]| -> Result<(usize, i32), String> {
        let g = f.source().evaluate(&aut, w).map_err(err)?;
        let (_, word) = f.target().normal_form(&f.arrow(&g).map_err(err)?).map_err(err)?;
        Ok((word.len(), word.letters().iter().map(|l| l.signum()).sum()))
    };
    for n in 1..=4usize {
        let (len, total) = winding(&vec![1; n])?;
        ensure!(len == 2 * n && total.unsigned_abs() as usize == 2 * n, "(e, winding {n}) ↦ {len}");
    }
    for m in 0..=3usize {
        let mut w = vec![2];
        w.extend(vec![1; m]);
        let (len, total) = winding(&w)?;
        ensure!(len == 2 * m + 1 && total.unsigned_abs() as usize == 2 * m + 1, "(ρ, m={m}) ↦ {len}");
    }
    let verdict = weak_equivalence(&f, Strategy::Certified).map_err(err)?;
    let EquivVerdict::Equivalent(w) = verdict else { return Err(format!("verdict {}", verdict.name())) };
    let words: Vec<Vec<i32>> = w.generator_images.iter().map(|g| g.image_word.letters().to_vec()).collect();
    ensure!(words == [vec![1, 1], vec![1]], "generator images {words:?}");
    w.recheck(&f).map_err(err)?;
    Ok("winding 1 ↦ 2, ρ ↦ 1 (and 2n, 2m+1 for n ≤ 4, m ≤ 3); Equivalent, witness rechecked".into())
}

/// Arrows of the hom-set with paths of at most `len` darts.
fn short_arrows(pi: &PiCategory, a: &PiObject, b: &PiObject, len: usize) -> Vec<PiArrow> {
    pi.arrows_up_to(a, b, len).unwrap().into_iter().filter(|f| f.fiber.len() <= len).collect()
}

/// Reduced walks in `X^H` from `a` to `αb` with at most `len` darts, summed
/// over the orbit arrows `α`.
fn brute_short_count(pi: &PiCategory, a: &PiObject, b: &PiObject, len: usize) -> usize {
    let x = pi.space();
    let (_, allowed) = common::fixed_sets(x, &a.base);
    let reduced: BTreeSet<Vec<usize>> =
        common::walks(x.graph(), &allowed, a.point, len).iter().map(|w| common::stack_reduce(x.graph(), w)).collect();
    pi.orbit()
        .arrows_between(&a.base, &b.base)
        .iter()
        .map(|alpha| {
            let end = x.act_vertex(alpha.rep(), b.point);
            reduced.iter().filter(|p| p.last().map_or(a.point, |&d| x.graph().target(d)) == end).count()
        })
        .sum()
}

fn criterion_3() -> Outcome {
    let (x, g, embedding) = fixtures::ind_z4_data();
    let (_, f) = induction_move(&Arc::new(x), g, &embedding).map_err(err)?;
    let certified = weak_equivalence(&f, Strategy::Certified).map_err(err)?;
    let generic = weak_equivalence(&f, Strategy::Generic(SearchBounds { word_length: 8 })).map_err(err)?;
    ensure!(certified.name() == "Equivalent", "certified: {}", certified.name());
    ensure!(generic.name() == "Equivalent", "generic: {}", generic.name());
    let EquivVerdict::Equivalent(w) = &certified else { unreachable!() };
    ensure!(w.injectivity == InjectivityCertificate::Straightening, "{:?}", w.injectivity);
    w.recheck(&f).map_err(err)?;

    // brute force: short hom-sets map bijectively onto short target hom-sets
    let mut total = 0;
    let objects = f.source().objects();
    for a in &objects {
        for b in &objects {
            let source = short_arrows(f.source(), a, b, 4);
            let images: HashSet<PiArrow> = source.iter().map(|u| f.arrow(u).unwrap()).collect();
            ensure!(images.len() == source.len(), "not injective on {a:?} -> {b:?}");
            let target: HashSet<PiArrow> = short_arrows(f.target(), &f.object(a), &f.object(b), 4).into_iter().collect();
            ensure!(images == target, "not onto on {a:?} -> {b:?}");
            total += source.len();
            ensure!(source.len() == brute_short_count(f.source(), a, b, 4), "count differs on {a:?} -> {b:?}");
        }
    }
    ensure!(total == 92, "{total} short arrows");
    Ok(format!("Certified Equivalent (Straightening), Generic(8) Equivalent, {total} short arrows matched"))
}

fn criterion_4() -> Outcome {
    let x = Arc::new(fixtures::c4_trivial());
    let f = InducedFunctor::new(EquivariantGraphMap::to_point(x), Provenance::General).map_err(err)?;
    let verdict = weak_equivalence(&f, Strategy::Generic(SearchBounds::default())).map_err(err)?;
    let EquivVerdict::NotEquivalent(c) = verdict else { return Err(format!("verdict {}", verdict.name())) };
    let Counterexample::KernelElement { arrow, image } = &c else { return Err(format!("{c:?}")) };
    ensure!(f.arrow(arrow).map_err(err)? == f.target().identity(&image.source), "image is not the identity");
    ensure!(arrow.fiber.len() == 4, "kernel loop has {} darts", arrow.fiber.len());
    ensure!(c.recheck(&f).map_err(err)?, "counterexample does not recheck");
    Ok("NotEquivalent, KernelElement(4-cycle ↦ identity), rechecked".into())
}

fn confluence(rng: &mut impl Rng) -> Result<usize, String> {
    let graphs = [fixtures::c4refl(), fixtures::hex6(), fixtures::s3_hexagon(), common::cayley_graph(Arc::new(FiniteGroup::cyclic(4, None).unwrap()))];
    for case in 0..300 {
        let graph = graphs[case % graphs.len()].graph();
        let start = rng.gen_range(0..graph.vertex_count());
        let walk = common::random_walk(graph, start, rng.gen_range(0..=20), rng);
        let r = reduce(graph, &EdgePath::new(start, walk.clone())).map_err(err)?;
        ensure!(r.darts() == common::naive_reduce(graph, &walk, rng), "reduction depends on order");
    }
    Ok(300)
}

fn associativity() -> Result<usize, String> {
    let mut count = 0;
    for x in [fixtures::c4refl(), fixtures::hex6()] {
        let pi = PiCategory::new(Arc::new(x));
        let reps: Vec<_> = pi.skeleton().map_err(err)?.classes.into_iter().map(|c| c.representative).collect();
        for a in &reps {
            for b in &reps {
                for f in pi.arrows_up_to(a, b, 3).map_err(err)? {
                    for c in &reps {
                        for g in pi.arrows_up_to(b, c, 3).map_err(err)? {
                            let fg = pi.compose(&f, &g).map_err(err)?;
                            for d in &reps {
                                for h in pi.arrows_up_to(c, d, 3).map_err(err)? {
                                    let left = pi.compose(&fg, &h).map_err(err)?;
                                    let right = pi.compose(&f, &pi.compose(&g, &h).map_err(err)?).map_err(err)?;
                                    ensure!(left == right, "not associative");
                                    count += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(count)
}

fn projection(rng: &mut impl Rng) -> Result<usize, String> {
    let mut count = 0;
    while count < 300 {
        let pi = PiCategory::new(Arc::new(common::random_ggraph(rng)));
        let objects = pi.objects();
        for _ in 0..10 {
            let (a, b, c) = (objects.choose(rng).unwrap(), objects.choose(rng).unwrap(), objects.choose(rng).unwrap());
            let fs = pi.arrows_up_to(a, b, 2).map_err(err)?;
            let gs = pi.arrows_up_to(b, c, 2).map_err(err)?;
            let (Some(f), Some(g)) = (fs.choose(rng), gs.choose(rng)) else { continue };
            let fg = pi.compose(f, g).map_err(err)?;
            ensure!(*pi.project(&fg) == pi.orbit().compose(pi.project(f), pi.project(g)).map_err(err)?, "projection");
            count += 1;
        }
    }
    Ok(count)
}

fn pi_functoriality() -> Result<usize, String> {
    let hex = Arc::new(fixtures::hex6());
    let (q, _) = quotient_move(&hex, &hex.group().whole()).map_err(err)?;
    let (ind, _) = induction_move(&hex, fixtures::z4(), &[0, 2]).map_err(err)?;
    let n = ind.target().group().subgroup([0, 2]).map_err(err)?;
    let (q2, _) = quotient_move(ind.target(), &n).map_err(err)?;
    let pairs = [(q.clone(), EquivariantGraphMap::to_point(q.target().clone())), (ind, q2)];
    let mut count = 0;
    for (m1, m2) in pairs {
        let general = |m: EquivariantGraphMap| InducedFunctor::new(m, Provenance::General).map_err(err);
        let both = general(m1.then(&m2).map_err(err)?)?;
        let (f1, f2) = (general(m1)?, general(m2)?);
        let objects = both.source().objects();
        for a in &objects {
            for b in &objects {
                for f in both.source().arrows_up_to(a, b, 3).map_err(err)? {
                    ensure!(both.arrow(&f).map_err(err)? == f2.arrow(&f1.arrow(&f).map_err(err)?).map_err(err)?, "Π(m₂∘m₁)");
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

fn lifting() -> Result<usize, String> {
    let mut count = 0;
    for x in [fixtures::hex6(), common::rotation_cycle(2, 3), common::rotation_cycle(1, 4)] {
        let x = Arc::new(x);
        let (p, _) = quotient_move(&x, &x.group().whole()).map_err(err)?;
        let f = InducedFunctor::new(p.clone(), Provenance::General).map_err(err)?;
        let q = p.target().clone();
        let all: HashSet<usize> = (0..q.graph().dart_count()).collect();
        for v in 0..q.graph().vertex_count() {
            let paths: BTreeSet<Vec<usize>> =
                common::walks(q.graph(), &all, v, 6).iter().map(|w| common::stack_reduce(q.graph(), w)).collect();
            for darts in paths {
                let path = ReducedPath::from_darts(q.graph(), v, darts).map_err(err)?;
                for start in (0..x.graph().vertex_count()).filter(|&s| p.vertex(s) == v) {
                    let lift = path_lift(&p, &path, start).map_err(err)?;
                    ensure!(f.map_path(&lift) == path, "project ∘ lift != id");
                    // any other dart sequence over the path from the same start equals the lift
                    let mut at = start;
                    for (&d, &l) in path.darts().iter().zip(lift.darts()) {
                        let over: Vec<usize> = x.graph().darts_from(at).iter().copied().filter(|&e| p.dart(e) == DartImage::Dart(d)).collect();
                        ensure!(over == [l], "lift not unique");
                        at = x.graph().target(l);
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

fn monotonicity() -> Result<usize, String> {
    let mut count = 0;
    for (_, g) in fixtures::small_groups() {
        let g = Arc::new(g);
        let subgroups = g.list_subgroups();
        let x = fixtures::coset_graph(g, &subgroups);
        for big in &subgroups {
            let (vb, db) = common::fixed_sets(&x, big);
            let fixed = x.fixed_subgraph(big);
            ensure!(fixed.vertices().iter().copied().collect::<BTreeSet<_>>() == vb, "fixed vertices differ");
            for small in subgroups.iter().filter(|s| s.is_subset_of(big)) {
                let (vs, ds) = common::fixed_sets(&x, small);
                ensure!(vb.is_subset(&vs) && db.is_subset(&ds), "X^K ⊄ X^H");
                count += 1;
            }
        }
    }
    Ok(count)
}

fn witness_revalidation() -> Result<usize, String> {
    let mut functors = Vec::new();
    for (n, m) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 4)] {
        let x = Arc::new(common::rotation_cycle(n, m));
        for s in x.group().list_subgroups().into_iter().filter(|s| s.len() > 1) {
            functors.push(quotient_move(&x, &s).map_err(err)?.1);
        }
    }
    for (_, g) in fixtures::small_groups().into_iter().filter(|(_, g)| (2..=6).contains(&g.order())) {
        let x = Arc::new(common::cayley_graph(Arc::new(g)));
        for s in x.group().list_subgroups().into_iter().filter(|s| s.len() > 1) {
            if let Ok((_, f)) = quotient_move(&x, &s) {
                functors.push(f);
            }
        }
    }
    let (x, g, embedding) = fixtures::ind_z4_data();
    functors.push(induction_move(&Arc::new(x), g, &embedding).map_err(err)?.1);
    functors.push(induction_move(&Arc::new(fixtures::hex6()), fixtures::z4(), &[0, 2]).map_err(err)?.1);
    let mut count = 0;
    for f in &functors {
        for strategy in [Strategy::Certified, Strategy::Generic(SearchBounds { word_length: 3 })] {
            if let EquivVerdict::Equivalent(w) = weak_equivalence(f, strategy).map_err(err)? {
                w.recheck(f).map_err(err)?;
                count += w.arrow_preimages.len() + w.object_lifts.len() + w.generator_images.len();
            }
        }
    }
    Ok(count)
}

fn criterion_5() -> Outcome {
    let mut rng = common::rng();
    let suites: Vec<(&str, Result<usize, String>)> = vec![
        ("confluence", confluence(&mut rng)),
        ("associativity", associativity()),
        ("projection", projection(&mut rng)),
        ("Π functoriality", pi_functoriality()),
        ("unique lifting", lifting()),
        ("monotonicity", monotonicity()),
        ("witness recheck", witness_revalidation()),
    ];
    let mut parts = Vec::new();
    for (name, r) in suites {
        let n = r.map_err(|e| format!("{name}: {e}"))?;
        ensure!(n >= 200, "{name}: only {n} cases");
        parts.push(format!("{name} {n}"));
    }
    Ok(parts.join(", "))
}

fn criterion_6() -> Outcome {
    let named = |e: String, name: &str| -> Result<(), String> {
        ensure!(e.starts_with(name), "expected {name}, got {e}");
        Ok(())
    };
    let c4refl = Arc::new(fixtures::c4refl());
    named(quotient_move(&c4refl, &c4refl.group().whole()).err().ok_or("quotient by a non-free group succeeded")?.to_string(), "NotFree")?;

    let flip = {
        let mut b = orbigroupoid_core::graph::GraphBuilder::new();
        b.add_vertex("A");
        b.add_vertex("B");
        b.add_edge("ab", 0, 1);
        let z2 = Arc::new(FiniteGroup::cyclic(2, None).unwrap());
        GGraph::from_generator_action(z2, b.build(), &[(1, vec![1, 0], vec![1, 0])])
    };
    named(flip.err().ok_or("inverting action accepted")?.to_string(), "EdgeInversion")?;

    let s3 = Arc::new(fixtures::s3_hexagon());
    let s = s3.group().element_by_label("s").ok_or("no s")?;
    let reflection = s3.group().generated_by(&[s]);
    named(quotient_move(&s3, &reflection).err().ok_or("non-normal quotient succeeded")?.to_string(), "NotNormal")?;

    let (x, g, _) = fixtures::ind_z4_data();
    let z2 = x.group().clone();
    named(GroupHom::new(z2, g.clone(), vec![0, 1]).err().ok_or("t ↦ r accepted")?.to_string(), "NotAHomomorphism")?;
    let e = induction_move(&Arc::new(x), g, &[0, 1]).err().ok_or("inducing along t ↦ r succeeded")?.to_string();
    named(e.clone(), "EmbeddingNotHom")?;
    ensure!(e.contains("NotAHomomorphism"), "{e}");
    Ok("NotFree, EdgeInversion, NotNormal, NotAHomomorphism".into())
}

fn main() {
    panic::set_hook(Box::new(|_| {}));
    let criteria: [Criterion; 6] = [
        ("reflection square skeleton", criterion_1),
        ("hexagon quotient windings", criterion_2),
        ("induction to Z/4", criterion_3),
        ("collapse negative control", criterion_4),
        ("property suites", criterion_5),
        ("degenerate inputs", criterion_6),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
