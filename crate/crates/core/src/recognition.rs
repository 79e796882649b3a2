//! Circle-graph recognition, two ways: an exhaustive search for a double
//! occurrence word whose interlacement graph is the input, and a search for
//! one of the three forbidden vertex minors W5, W7 and BW3.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{canonical_form_unchecked, CanonicalForm, Graph, VertexSet};
use crate::word::DoWord;

/// Largest input accepted by the word search and the minor closure.
pub const RECOGNITION_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObstructionKind {
    W5,
    W7,
    BW3,
}

impl ObstructionKind {
    pub const ALL: [ObstructionKind; 3] = [ObstructionKind::W5, ObstructionKind::W7, ObstructionKind::BW3];

    pub fn source(self) -> &'static str {
        match self {
            ObstructionKind::W5 => include_str!("../resources/w5.graph"),
            ObstructionKind::W7 => include_str!("../resources/w7.graph"),
            ObstructionKind::BW3 => include_str!("../resources/bw3.graph"),
        }
    }

    pub fn graph(self) -> Graph {
        Graph::parse(self.source()).expect("bundled obstruction parses")
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_uppercase().as_str() {
            "W5" => Some(ObstructionKind::W5),
            "W7" => Some(ObstructionKind::W7),
            "BW3" => Some(ObstructionKind::BW3),
            _ => None,
        }
    }
}

impl fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObstructionKind::W5 => "W5",
            ObstructionKind::W7 => "W7",
            ObstructionKind::BW3 => "BW3",
        })
    }
}

fn obstruction_forms() -> &'static [(ObstructionKind, CanonicalForm)] {
    static FORMS: OnceLock<Vec<(ObstructionKind, CanonicalForm)>> = OnceLock::new();
    FORMS.get_or_init(|| {
        ObstructionKind::ALL
            .iter()
            .map(|&k| (k, k.graph().canonical_form().expect("small")))
            .collect()
    })
}

fn check_cap(g: &Graph, what: &'static str) -> Result<()> {
    if g.n() > RECOGNITION_CAP {
        return Err(Error::TooLarge { what, n: g.n(), cap: RECOGNITION_CAP });
    }
    Ok(())
}

/// Searches for a double occurrence word whose interlacement graph equals
/// `g` with letters named after the vertices; returns it in canonical form.
///
/// The word is built left to right with the least-named vertex first. When
/// a letter receives its second occurrence its whole neighbourhood is
/// determined, so it is compared against its row of `g` right away.
pub fn realize_brute_force(g: &Graph) -> Result<Option<DoWord>> {
    check_cap(g, "brute-force realization")?;
    let n = g.n();
    if n == 0 {
        return Ok(Some(DoWord::new(Vec::<String>::new())?));
    }
    let first = (0..n).min_by_key(|&v| g.label(v)).expect("nonempty");
    let mut s = WordSearch {
        rows: g.rows(),
        n,
        word: Vec::with_capacity(2 * n),
        opened: 0,
        closed: 0,
        opened_at: vec![0; n],
        closed_at: vec![0; n],
    };
    s.open(first);
    if !s.rec() {
        return Ok(None);
    }
    let word = DoWord::new(s.word.iter().map(|&v| g.label(v)))?;
    Ok(Some(word.canonical()))
}

struct WordSearch<'a> {
    rows: &'a [u64],
    n: usize,
    word: Vec<usize>,
    opened: u64,
    closed: u64,
    opened_at: Vec<u64>,
    closed_at: Vec<u64>,
}

impl WordSearch<'_> {
    fn open(&mut self, x: usize) {
        self.opened |= 1 << x;
        self.opened_at[x] = self.opened;
        self.closed_at[x] = self.closed;
        self.word.push(x);
    }

    fn rec(&mut self) -> bool {
        if self.word.len() == 2 * self.n {
            return true;
        }
        let pending = self.opened & !self.closed;
        for x in VertexSet(pending).iter() {
            let inside = (self.opened & !self.opened_at[x]) ^ (self.closed & !self.closed_at[x]);
            if inside != self.rows[x] {
                continue;
            }
            self.closed |= 1 << x;
            self.word.push(x);
            if self.rec() {
                return true;
            }
            self.word.pop();
            self.closed &= !(1 << x);
        }
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        for y in VertexSet(full & !self.opened).iter() {
            let saved = self.opened;
            self.open(y);
            if self.rec() {
                return true;
            }
            self.word.pop();
            self.opened = saved;
        }
        false
    }
}

/// One step of a vertex-minor derivation. Vertices are numbered as in the
/// source graph throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    LocalComplement(usize),
    DeleteVertex(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexMinorTrace {
    pub steps: Vec<Step>,
}

impl VertexMinorTrace {
    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies the steps to `g`; the result is the induced subgraph on the
    /// surviving vertices, renumbered in increasing order.
    pub fn replay(&self, g: &Graph) -> Result<Graph> {
        let n = g.n();
        let mut state = MinorState { rows: g.rows().to_vec(), alive: VertexSet::full(n).0 };
        for step in &self.steps {
            let v = match *step {
                Step::LocalComplement(v) | Step::DeleteVertex(v) => v,
            };
            if v >= n || state.alive >> v & 1 == 0 {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            state = match *step {
                Step::LocalComplement(v) => state.local_complement(v),
                Step::DeleteVertex(v) => state.delete(v),
            };
        }
        let minor = g.induced(VertexSet(state.alive))?;
        let with_edges = Graph::from_edges(minor.n(), &state.induced_edges())?;
        Ok(match minor.names() {
            Some(names) => with_edges.with_names(names.to_vec()),
            None => with_edges,
        })
    }

    /// One step per line, `lc <vertex>` or `delete <vertex>`, using the
    /// labels of `g`.
    pub fn to_text(&self, g: &Graph) -> String {
        self.steps
            .iter()
            .map(|s| match *s {
                Step::LocalComplement(v) => format!("lc {}\n", g.label(v)),
                Step::DeleteVertex(v) => format!("delete {}\n", g.label(v)),
            })
            .collect()
    }
}

/// A graph in the middle of a derivation: the full adjacency of the source
/// vertex set plus the set of vertices still present.
#[derive(Clone)]
struct MinorState {
    rows: Vec<u64>,
    alive: u64,
}

impl MinorState {
    fn local_complement(&self, v: usize) -> MinorState {
        let mut rows = self.rows.clone();
        let nv = self.rows[v] & self.alive;
        for u in VertexSet(nv).iter() {
            rows[u] ^= nv & !(1 << u);
        }
        MinorState { rows, alive: self.alive }
    }

    fn delete(&self, v: usize) -> MinorState {
        MinorState { rows: self.rows.clone(), alive: self.alive & !(1 << v) }
    }

    fn compact_rows(&self) -> Vec<u64> {
        let keep: Vec<usize> = VertexSet(self.alive).iter().collect();
        keep.iter()
            .map(|&u| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &w)| self.rows[u] >> w & 1 == 1)
                    .fold(0u64, |r, (i, _)| r | 1 << i)
            })
            .collect()
    }

    fn induced_edges(&self) -> Vec<(usize, usize)> {
        let rows = self.compact_rows();
        (0..rows.len())
            .flat_map(|u| {
                let r = rows[u];
                (u + 1..rows.len()).filter(move |&w| r >> w & 1 == 1).map(move |w| (u, w))
            })
            .collect()
    }

    fn form(&self) -> CanonicalForm {
        canonical_form_unchecked(&self.compact_rows())
    }
}

struct Node {
    state: MinorState,
    parent: Option<usize>,
    step: Option<Step>,
}

/// Breadth-first exploration of the vertex minors of a graph, one vertex
/// count at a time: first the local-complementation orbit of every graph at
/// the current size, then single-vertex deletions into the next size.
/// Graphs are deduplicated by canonical form. Because local complementation
/// at `v` commutes with deleting any other vertex, every vertex minor is
/// reached this way.
struct MinorSearch {
    nodes: Vec<Node>,
    seen: HashMap<CanonicalForm, usize>,
}

impl MinorSearch {
    /// Explores down to `min_level` vertices. `visit` sees every new class
    /// once, in discovery order, and stops the search by returning `false`.
    fn run(g: &Graph, min_level: usize, mut visit: impl FnMut(&CanonicalForm, usize) -> bool) -> MinorSearch {
        let n = g.n();
        let root = MinorState { rows: g.rows().to_vec(), alive: VertexSet::full(n).0 };
        let mut search = MinorSearch { nodes: Vec::new(), seen: HashMap::new() };
        let form = root.form();
        search.nodes.push(Node { state: root, parent: None, step: None });
        search.seen.insert(form, 0);
        if !visit(&form, 0) || n < min_level {
            return search;
        }
        let mut level: Vec<usize> = vec![0];
        let mut size = n;
        loop {
            let mut i = 0;
            while i < level.len() {
                let id = level[i];
                for v in VertexSet(search.nodes[id].state.alive).iter() {
                    let next = search.nodes[id].state.local_complement(v);
                    match search.add(next, id, Step::LocalComplement(v)) {
                        Some((new_id, form)) => {
                            if !visit(&form, new_id) {
                                return search;
                            }
                            level.push(new_id);
                        }
                        None => continue,
                    }
                }
                i += 1;
            }
            if size == 0 || size - 1 < min_level {
                return search;
            }
            let mut next_level = Vec::new();
            for &id in &level {
                for v in VertexSet(search.nodes[id].state.alive).iter() {
                    let next = search.nodes[id].state.delete(v);
                    if let Some((new_id, form)) = search.add(next, id, Step::DeleteVertex(v)) {
                        if !visit(&form, new_id) {
                            return search;
                        }
                        next_level.push(new_id);
                    }
                }
            }
            level = next_level;
            size -= 1;
        }
    }

    fn add(&mut self, state: MinorState, parent: usize, step: Step) -> Option<(usize, CanonicalForm)> {
        let form = state.form();
        if self.seen.contains_key(&form) {
            return None;
        }
        let id = self.nodes.len();
        self.nodes.push(Node { state, parent: Some(parent), step: Some(step) });
        self.seen.insert(form, id);
        Some((id, form))
    }

    fn trace(&self, mut id: usize) -> VertexMinorTrace {
        let mut steps = Vec::new();
        while let (Some(p), Some(s)) = (self.nodes[id].parent, self.nodes[id].step) {
            steps.push(s);
            id = p;
        }
        steps.reverse();
        VertexMinorTrace { steps }
    }
}

/// Canonical forms of all vertex minors of `g` (including `g`) with at most
/// `max_n` vertices.
pub fn vertex_minor_closure(g: &Graph, max_n: usize) -> Result<BTreeSet<CanonicalForm>> {
    check_cap(g, "vertex-minor closure")?;
    let search = MinorSearch::run(g, 0, |_, _| true);
    Ok(search.seen.into_keys().filter(|f| f.n() <= max_n).collect())
}

/// A derivation of a graph isomorphic to `h` from `g`, if `h` is a vertex
/// minor of `g`.
pub fn has_vertex_minor(g: &Graph, h: &Graph) -> Result<Option<VertexMinorTrace>> {
    check_cap(g, "vertex-minor search")?;
    if h.n() > g.n() {
        return Ok(None);
    }
    let target = h.canonical_form()?;
    let mut hit = None;
    let search = MinorSearch::run(g, h.n(), |f, id| {
        if *f == target {
            hit = Some(id);
            return false;
        }
        true
    });
    Ok(hit.map(|id| search.trace(id)))
}

/// The first obstruction met by the minor search, with its derivation.
pub fn find_obstruction(g: &Graph) -> Result<Option<(ObstructionKind, VertexMinorTrace)>> {
    check_cap(g, "obstruction search")?;
    let forms = obstruction_forms();
    let smallest = forms.iter().map(|(_, f)| f.n()).min().expect("three obstructions");
    if g.n() < smallest {
        return Ok(None);
    }
    let mut hit = None;
    let search = MinorSearch::run(g, smallest, |f, id| {
        if let Some(&(kind, _)) = forms.iter().find(|(_, form)| form == f) {
            hit = Some((kind, id));
            return false;
        }
        true
    });
    Ok(hit.map(|(kind, id)| (kind, search.trace(id))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    Obstruction,
    Both,
}

#[derive(Clone, Debug)]
pub struct CircleVerdict {
    pub is_circle: bool,
    /// Realizing word, when the brute-force search ran and succeeded.
    pub witness: Option<DoWord>,
    /// Obstruction found by the minor search, with its derivation.
    pub obstruction: Option<(ObstructionKind, VertexMinorTrace)>,
}

pub fn is_circle_graph(g: &Graph, method: Method) -> Result<CircleVerdict> {
    let witness = match method {
        Method::Brute | Method::Both => Some(realize_brute_force(g)?),
        Method::Obstruction => None,
    };
    let obstruction = match method {
        Method::Obstruction | Method::Both => Some(find_obstruction(g)?),
        Method::Brute => None,
    };
    let brute_says = witness.as_ref().map(Option::is_some);
    let obstruction_says = obstruction.as_ref().map(Option::is_none);
    let is_circle = match (brute_says, obstruction_says) {
        (Some(b), Some(o)) if b != o => {
            return Err(Error::MethodDisagreement { brute: b, obstruction: o });
        }
        (Some(b), _) => b,
        (None, Some(o)) => o,
        (None, None) => unreachable!("at least one method runs"),
    };
    Ok(CircleVerdict { is_circle, witness: witness.flatten(), obstruction: obstruction.flatten() })
}
