//! Seeded acceptance checks behind `circlegraph selftest`, plus the random
//! generators they share with the test suite.

use std::collections::BTreeSet;
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circle_aut::{class_preserving_automorphisms, lift_automorphism, EdgeKind, Lift, LiftFailure};
use crate::cyclic::CirclePoint;
use crate::diagram::{Chord, ChordDiagram, IntersectionMode};
use crate::graph::{Graph, VertexSet};
use crate::rado::{
    bit_graph, bit_witness, check_extension, is_witness, locomp_witness_sets, locomp_witness_sets_as_printed,
};
use crate::recognition::{is_circle_graph, Method, ObstructionKind};
use crate::word::DoWord;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn letter_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("c{i}") })
        .collect()
}

/// `n` distinct points `k / den` for a random denominator.
fn distinct_points(rng: &mut impl Rng, n: usize) -> Vec<CirclePoint> {
    let den = rng.gen_range(n.max(1)..=3 * n.max(1) + 7);
    let mut ks: Vec<usize> = (0..den).collect();
    ks.shuffle(rng);
    ks.truncate(n);
    ks.into_iter().map(|k| CirclePoint::from_ratio(k as i64, den as i64).expect("k < den")).collect()
}

/// A generic diagram with between 1 and `max_chords` chords named `a, b, ...`.
pub fn random_generic_diagram(rng: &mut impl Rng, max_chords: usize) -> ChordDiagram {
    let n = rng.gen_range(1..=max_chords);
    let points = distinct_points(rng, 2 * n);
    let names = letter_names(n);
    let chords = names.into_iter().enumerate().map(|(i, name)| {
        (name, Chord::new(points[2 * i].clone(), points[2 * i + 1].clone()).expect("distinct points"))
    });
    ChordDiagram::from_chords(chords.collect::<Vec<_>>()).expect("distinct chords")
}

/// A diagram on few points, so endpoints are shared; each point is used by
/// at most four chords.
pub fn random_shared_diagram(rng: &mut impl Rng, max_chords: usize) -> ChordDiagram {
    let n = rng.gen_range(1..=max_chords);
    let m = rng.gen_range(2..=(n + 1).max(2));
    let points = distinct_points(rng, m);
    let mut usage = vec![0usize; m];
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut d = ChordDiagram::new();
    for name in letter_names(n) {
        for _ in 0..20 {
            let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..m));
            let key = (i.min(j), i.max(j));
            if i == j || usage[i] >= 4 || usage[j] >= 4 || pairs.contains(&key) {
                continue;
            }
            pairs.insert(key);
            usage[i] += 1;
            usage[j] += 1;
            let chord = Chord::new(points[i].clone(), points[j].clone()).expect("distinct points");
            d.push(name, chord).expect("fresh name and chord");
            break;
        }
    }
    d
}

/// A word on `1..=max_n` letters in uniformly random order.
pub fn random_word(rng: &mut impl Rng, max_n: usize) -> DoWord {
    let n = rng.gen_range(1..=max_n);
    let mut letters: Vec<String> = letter_names(n).into_iter().flat_map(|l| [l.clone(), l]).collect();
    letters.shuffle(rng);
    DoWord::new(letters).expect("two of each")
}

/// `G(n, p)` on vertices `0..n`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).expect("small");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// Chord indices of the endpoints in increasing order of position.
fn endpoint_sequence(d: &ChordDiagram) -> Vec<usize> {
    let mut occ: Vec<(&CirclePoint, usize)> =
        d.iter().enumerate().flat_map(|(i, (_, c))| c.endpoints().map(move |p| (p, i))).collect();
    occ.sort();
    occ.into_iter().map(|(_, i)| i).collect()
}

fn is_rotation<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i])))
}

/// Every graph on `0..n`, one per isomorphism class.
pub fn all_graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, &edges).expect("small");
        if seen.insert(g.canonical_form().expect("small")) {
            out.push(g);
        }
    }
    out
}

/// The incident pair `a, b` at `0` and the crossing pair `c, e`.
pub fn two_disjoint_edges() -> ChordDiagram {
    ChordDiagram::parse("chord a 0 1/10\nchord b 0 1/5\nchord c 2/5 3/5\nchord e 1/2 7/10\n").expect("valid")
}

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub budget: Duration,
}

const fn criterion(id: usize, name: &'static str, secs: u64) -> Criterion {
    Criterion { id, name, budget: Duration::from_secs(secs) }
}

pub const CRITERIA: [Criterion; 10] = [
    criterion(1, "flip equals local complementation", 10),
    criterion(2, "blow-up", 5),
    criterion(3, "rational re-embedding", 5),
    criterion(4, "recognition cross-check", 300),
    criterion(5, "closure under local complementation", 120),
    criterion(6, "involutions", 2),
    criterion(7, "witness sets", 10),
    criterion(8, "BIT extension", 5),
    criterion(9, "automorphism lifting", 1),
    criterion(10, "command line corpus", 5),
];

pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub budget: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("criterion {} {}: {verdict} ({})", self.id, self.name, self.detail)
    }
}

/// Runs criterion `id`; panics if there is no such criterion.
pub fn run_criterion(id: usize) -> CriterionResult {
    let c = CRITERIA.iter().find(|c| c.id == id).expect("known criterion");
    let outcome = match id {
        1 => flip_is_local_complement(),
        2 => blow_up_closes_incidences(),
        3 => reembedding(),
        4 => recognition_cross_check(),
        5 => local_complement_closure(),
        6 => involutions(),
        7 => witness_sets(),
        8 => bit_extension(),
        9 => automorphism_lifting(),
        10 => command_line_corpus(),
        _ => unreachable!(),
    };
    let (passed, detail) = match outcome {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    CriterionResult { id, name: c.name, passed, detail, budget: c.budget }
}

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn flip_is_local_complement() -> Outcome {
    let mut rng = rng(1);
    let mut checks = 0;
    for _ in 0..1000 {
        let d = random_generic_diagram(&mut rng, 10);
        let g = d.intersection_graph(IntersectionMode::CrossingOnly);
        for (i, name) in d.names().iter().enumerate() {
            let flipped = d.flip_interval(name).map_err(|e| e.to_string())?;
            let lhs = flipped.intersection_graph(IntersectionMode::CrossingOnly);
            let rhs = g.local_complement(i).map_err(|e| e.to_string())?;
            ensure(lhs.same_labeled(&rhs), || format!("flip at {name} differs on\n{}", d.to_text()))?;
            checks += 1;
        }
    }
    Ok(format!("1000 diagrams, {checks} flips"))
}

fn blow_up_closes_incidences() -> Outcome {
    let mut rng = rng(2);
    let (mut tested, mut skipped) = (0, 0);
    while tested < 500 {
        let d = random_shared_diagram(&mut rng, 10);
        if d.is_generic() {
            skipped += 1;
            continue;
        }
        tested += 1;
        let b = d.blow_up();
        ensure(b.is_generic(), || format!("blow-up not generic for\n{}", d.to_text()))?;
        let lhs = b.intersection_graph(IntersectionMode::CrossingOnly);
        let rhs = d.intersection_graph(IntersectionMode::Closed);
        ensure(lhs.same_labeled(&rhs), || format!("blow-up changes the graph of\n{}", d.to_text()))?;
    }
    Ok(format!("500 diagrams with shared endpoints, {skipped} generic draws skipped"))
}

fn reembedding() -> Outcome {
    let mut rng = rng(3);
    for _ in 0..500 {
        let d = random_generic_diagram(&mut rng, 10);
        let r = d.reembed_incremental();
        ensure(is_rotation(&endpoint_sequence(&d), &endpoint_sequence(&r)), || {
            format!("cyclic order changed for\n{}", d.to_text())
        })?;
        for mode in [IntersectionMode::Closed, IntersectionMode::CrossingOnly] {
            let (a, b) = (d.intersection_graph(mode), r.intersection_graph(mode));
            ensure(a.same_labeled(&b), || format!("{mode:?} graph changed for\n{}", d.to_text()))?;
        }
    }
    for _ in 0..500 {
        let w = random_word(&mut rng, 10);
        let back = ChordDiagram::embed_word(&w).to_word().map_err(|e| e.to_string())?;
        ensure(back == w, || format!("word {w} came back as {back}"))?;
    }
    Ok("500 diagrams, 500 words".into())
}

fn recognition_cross_check() -> Outcome {
    let mut classes = 0;
    let mut rejected = Vec::new();
    for n in 1..=6 {
        for g in all_graphs_up_to_isomorphism(n) {
            classes += 1;
            let verdict = is_circle_graph(&g, Method::Both).map_err(|e| format!("{e} on {g:?}"))?;
            if !verdict.is_circle {
                ensure(n == 6, || format!("{g:?} on {n} vertices rejected"))?;
                rejected.push(g);
            }
        }
    }
    // 154 of the 156 classes on six vertices are interlacement graphs
    ensure(rejected.len() == 2, || format!("{} graphs on 6 vertices rejected, expected 2", rejected.len()))?;
    ensure(classes == 208, || format!("{classes} isomorphism classes on 1..6 vertices, expected 208"))?;
    for kind in ObstructionKind::ALL {
        let verdict = is_circle_graph(&kind.graph(), Method::Both).map_err(|e| format!("{kind}: {e}"))?;
        ensure(!verdict.is_circle, || format!("{kind} accepted"))?;
    }
    Ok(format!("{classes} classes agree, {} rejected on 6 vertices; W5, W7, BW3 rejected", rejected.len()))
}

fn local_complement_closure() -> Outcome {
    let mut rng = rng(5);
    let mut checks = 0;
    for _ in 0..200 {
        let g = random_word(&mut rng, 7).interlacement_graph();
        for v in 0..g.n() {
            let h = g.local_complement(v).map_err(|e| e.to_string())?;
            let verdict = is_circle_graph(&h, Method::Both).map_err(|e| format!("{e} on {h:?}"))?;
            ensure(verdict.is_circle, || format!("{h:?} rejected"))?;
            checks += 1;
        }
    }
    Ok(format!("200 graphs, {checks} local complements accepted"))
}

fn involutions() -> Outcome {
    let mut rng = rng(6);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=12);
        let g = random_graph(&mut rng, n, 0.5);
        for v in 0..n {
            let twice = g.local_complement(v).and_then(|h| h.local_complement(v)).map_err(|e| e.to_string())?;
            ensure(twice == g, || format!("double complement at {v} changes {g:?}"))?;
        }
    }
    for _ in 0..1000 {
        let d = random_generic_diagram(&mut rng, 10);
        for name in d.names() {
            let twice = d.flip_interval(&name).and_then(|e| e.flip_interval(&name)).map_err(|e| e.to_string())?;
            ensure(twice == d, || format!("double flip at {name} changes\n{}", d.to_text()))?;
        }
    }
    Ok("1000 graphs, 1000 diagrams".into())
}

fn witness_sets() -> Outcome {
    let mut rng = rng(7);
    let (mut witnesses, mut printed_failures) = (0, 0);
    for _ in 0..2000 {
        let n = rng.gen_range(2..=10);
        let g = random_graph(&mut rng, n, 0.5);
        let v = rng.gen_range(0..n);
        let (mut u, mut w) = (VertexSet::EMPTY, VertexSet::EMPTY);
        for x in 0..n {
            match rng.gen_range(0..4) {
                1 => u.insert(x),
                2 => w.insert(x),
                _ => {}
            }
        }
        if rng.gen_bool(0.5) {
            w.remove(v);
            u.insert(v);
        }
        let gv = g.local_complement(v).map_err(|e| e.to_string())?;
        let (u2, w2) = locomp_witness_sets(&g, v, u, w).map_err(|e| e.to_string())?;
        for x in 0..n {
            if is_witness(&g, x, u2, w2) {
                witnesses += 1;
                ensure(is_witness(&gv, x, u, w), || {
                    format!("x={x} fails for v={v} U={{{u}}} W={{{w}}} in {g:?}")
                })?;
            }
        }
        let (u3, w3) = locomp_witness_sets_as_printed(&g, v, u, w);
        printed_failures += usize::from(
            (0..n).any(|x| is_witness(&g, x, u3, w3) && !is_witness(&gv, x, u, w)) || !u3.is_disjoint(w3),
        );
    }
    ensure(printed_failures > 0, || "the uncorrected formula never failed".into())?;
    Ok(format!("2000 instances, {witnesses} witnesses transported; uncorrected formula fails on {printed_failures}"))
}

fn bit_extension() -> Outcome {
    for m in 1..=4usize {
        let g = bit_graph(1 << (m + 1)).map_err(|e| e.to_string())?;
        let report = check_extension(&g, VertexSet::full(m)).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("extension fails in bit_graph({}) over 0..{m}", 1 << (m + 1)))?;
    }
    let mut rng = rng(8);
    for _ in 0..500 {
        let (mut u, mut w) = (Vec::new(), Vec::new());
        for i in 0..9u64 {
            match rng.gen_range(0..3) {
                1 => u.push(i),
                2 => w.push(i),
                _ => {}
            }
        }
        let got = bit_witness(&u, &w).map_err(|e| e.to_string())?;
        let floor = u.iter().chain(&w).max().map_or(0, |m| m + 1);
        let expected = (floor..1024).find(|&x| bit_adjacency_fits(x, &u, &w));
        ensure(expected.map(num_bigint::BigUint::from) == Some(got.clone()), || {
            format!("U={u:?} W={w:?}: bit_witness {got}, scan {expected:?}")
        })?;
    }
    Ok("m = 1..4 pass; 500 witnesses match the scan".into())
}

/// Scan oracle over the BIT graph on 1024 vertices: `x` is adjacent to
/// every `i` in `u` and to no `i` in `w`.
fn bit_adjacency_fits(x: u64, u: &[u64], w: &[u64]) -> bool {
    let adjacent = |i: u64| {
        let (lo, hi) = (i.min(x), i.max(x));
        lo != hi && hi >> lo & 1 == 1
    };
    !u.contains(&x) && !w.contains(&x) && u.iter().all(|&i| adjacent(i)) && w.iter().all(|&i| !adjacent(i))
}

fn automorphism_lifting() -> Outcome {
    let d = two_disjoint_edges();
    let g = d.intersection_graph(IntersectionMode::Closed);
    let auts = g.automorphisms().map_err(|e| e.to_string())?;
    ensure(auts.len() == 8, || format!("{} automorphisms, expected 8", auts.len()))?;
    let preserving = class_preserving_automorphisms(&d).map_err(|e| e.to_string())?;
    ensure(preserving.len() == 4, || format!("{} class-preserving, expected 4", preserving.len()))?;
    let mut lifted = 0;
    for h in &auts {
        match lift_automorphism(&d, h).map_err(|e| e.to_string())? {
            Lift::Lifted(map) => {
                ensure(preserving.contains(h), || format!("{h:?} lifts but mixes edge classes"))?;
                ensure(map.realizes(&d, h), || format!("lift of {h:?} is not chord-by-chord"))?;
                lifted += 1;
            }
            Lift::Absent(why) => {
                ensure(!preserving.contains(h), || format!("{h:?} preserves classes but has no lift"))?;
                let cites_incidence = matches!(
                    why,
                    LiftFailure::IncidenceViolation { from: EdgeKind::Incident, to: EdgeKind::Crossing, .. }
                );
                ensure(cites_incidence, || format!("{h:?} fails for another reason: {}", why.describe(&d)))?;
            }
        }
    }
    ensure(lifted == 4, || format!("{lifted} lifts, expected 4"))?;
    Ok("8 automorphisms, 4 class-preserving, exactly those 4 lift".into())
}

/// One recorded invocation: arguments after the program name, standard
/// input, expected standard output and exit code.
pub struct Invocation {
    pub args: &'static [&'static str],
    pub stdin: &'static str,
    pub stdout: &'static str,
    pub code: i32,
}

macro_rules! fixture {
    ($name:literal) => {
        include_str!(concat!("../fixtures/", $name))
    };
}

macro_rules! golden {
    ($n:literal) => {
        include_str!(concat!("../fixtures/golden/", $n, ".out"))
    };
}

pub const CORPUS: [Invocation; 20] = [
    Invocation { args: &["ig", "--mode", "closed", "-"], stdin: fixture!("incident.chords"), stdout: golden!("01"), code: 0 },
    Invocation { args: &["locomp", "--vertex", "1", "-"], stdin: fixture!("p3.graph"), stdout: golden!("02"), code: 0 },
    Invocation { args: &["flip", "--chord", "b", "-"], stdin: fixture!("path.chords"), stdout: golden!("03"), code: 0 },
    Invocation { args: &["blowup", "-"], stdin: fixture!("triangle.chords"), stdout: golden!("04"), code: 0 },
    Invocation { args: &["embed", "-"], stdin: fixture!("k3.word"), stdout: golden!("05"), code: 0 },
    Invocation { args: &["reembed", "-"], stdin: fixture!("path.chords"), stdout: golden!("06"), code: 0 },
    Invocation { args: &["word", "--canonical", "-"], stdin: fixture!("path.chords"), stdout: golden!("07"), code: 0 },
    Invocation { args: &["realize", "-"], stdin: fixture!("c6.graph"), stdout: golden!("08"), code: 0 },
    Invocation {
        args: &["check-circle", "--method", "both", "-"],
        stdin: fixture!("bw3.graph"),
        stdout: golden!("09"),
        code: 1,
    },
    Invocation { args: &["vminors", "-"], stdin: fixture!("p3.graph"), stdout: golden!("10"), code: 0 },
    Invocation { args: &["has-vminor", "--minor", "4:0-1,1-2,2-3", "-"], stdin: fixture!("c5.graph"), stdout: golden!("11"), code: 0 },
    Invocation { args: &["auts", "-"], stdin: fixture!("two_edges.chords"), stdout: golden!("12"), code: 0 },
    Invocation { args: &["classes", "-"], stdin: fixture!("two_edges.chords"), stdout: golden!("13"), code: 0 },
    Invocation { args: &["lift", "--perm", "(a c)(b e)", "-"], stdin: fixture!("two_edges.chords"), stdout: golden!("14"), code: 1 },
    Invocation { args: &["rado-witness", "--u", "0,1", "--w", "2"], stdin: "", stdout: golden!("15"), code: 0 },
    Invocation {
        args: &["locomp-witness-sets", "--vertex", "0", "--u", "0,1", "--w", "2", "-"],
        stdin: fixture!("fan.graph"),
        stdout: golden!("16"),
        code: 0,
    },
    Invocation { args: &["check-extension", "--bit", "16", "--ground", "0,1,2"], stdin: "", stdout: golden!("17"), code: 0 },
    Invocation { args: &["render", "-"], stdin: fixture!("triangle.chords"), stdout: golden!("18"), code: 0 },
    Invocation { args: &["obstructions"], stdin: "", stdout: golden!("19"), code: 0 },
    Invocation { args: &["selftest", "--only", "9"], stdin: "", stdout: golden!("20"), code: 0 },
];

/// Runs one invocation in-process; returns exit code and standard output.
pub fn invoke(inv: &Invocation) -> (i32, String) {
    let args: Vec<String> = std::iter::once("circlegraph").chain(inv.args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = crate::cli::run(&args, &mut inv.stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn command_line_corpus() -> Outcome {
    let mut subcommands = BTreeSet::new();
    for (k, inv) in CORPUS.iter().enumerate() {
        subcommands.insert(inv.args[0]);
        let (code, out) = invoke(inv);
        ensure(code == inv.code && out == inv.stdout, || {
            format!("invocation {} `{}`: exit {code}, output\n{out}", k + 1, inv.args.join(" "))
        })?;
        if inv.args[0] == "render" {
            let doc = roxmltree::Document::parse(&out).map_err(|e| format!("render output is not XML: {e}"))?;
            let lines = doc.descendants().filter(|n| n.has_tag_name("line")).count();
            let chords = ChordDiagram::parse(inv.stdin).map_err(|e| e.to_string())?.len();
            ensure(lines == chords, || format!("{lines} segments for {chords} chords"))?;
        }
    }
    ensure(subcommands.len() == 20, || format!("corpus covers {} subcommands", subcommands.len()))?;
    Ok("20 invocations match; SVG parses with one segment per chord".into())
}
