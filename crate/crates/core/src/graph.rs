//! Finite simple graphs on at most 64 vertices, stored as one `u64` adjacency
//! row per vertex.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};

pub const MAX_VERTICES: usize = 64;
/// Bound for the exhaustive automorphism and canonical-form searches.
pub const SEARCH_CAP: usize = 10;

/// A set of vertices of a graph with at most 64 vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: VertexSet) -> Self {
        VertexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: VertexSet) -> Self {
        VertexSet(self.0 & o.0)
    }

    pub fn difference(self, o: VertexSet) -> Self {
        VertexSet(self.0 & !o.0)
    }

    pub fn is_disjoint(self, o: VertexSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        })
    }

    /// Parses a comma-separated list such as `0,3,5`; the empty string is
    /// the empty set.
    pub fn parse_list(s: &str) -> std::result::Result<Self, String> {
        let mut set = VertexSet::EMPTY;
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let v: usize = tok.parse().map_err(|_| format!("invalid vertex `{tok}`"))?;
            if v >= MAX_VERTICES {
                return Err(format!("vertex {v} exceeds the cap of {MAX_VERTICES}"));
            }
            set.insert(v);
        }
        Ok(set)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_char(',')?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Undirected simple graph on vertices `0..n`, optionally carrying names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<u64>,
    names: Option<Vec<String>>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { what: "graph", n, cap: MAX_VERTICES });
        }
        Ok(Graph { rows: vec![0; n], names: None })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.n(), "one name per vertex");
        self.names = Some(names);
        self
    }

    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Name of `v`, or its index when the graph is unnamed.
    pub fn label(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        match &self.names {
            Some(names) => names.iter().position(|x| x == name),
            None => name.parse().ok().filter(|&v| v < self.n()),
        }
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u).iter().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Toggles every adjacency between two distinct neighbours of `v`.
    pub fn local_complement(&self, v: usize) -> Result<Graph> {
        self.check(v)?;
        let mut g = self.clone();
        let nv = self.rows[v];
        for u in VertexSet(nv).iter() {
            g.rows[u] ^= nv & !(1 << u);
        }
        Ok(g)
    }

    /// Induced subgraph on `s`, vertices renumbered in increasing order.
    pub fn induced(&self, s: VertexSet) -> Result<Graph> {
        if let Some(m) = s.max() {
            self.check(m)?;
        }
        let keep: Vec<usize> = s.iter().collect();
        let rows = keep
            .iter()
            .map(|&u| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &w)| self.has_edge(u, w))
                    .fold(0u64, |r, (i, _)| r | 1 << i)
            })
            .collect();
        let names = self
            .names
            .as_ref()
            .map(|names| keep.iter().map(|&u| names[u].clone()).collect());
        Ok(Graph { rows, names })
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check(v)?;
        let mut s = VertexSet::full(self.n());
        s.remove(v);
        self.induced(s)
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let n = self.n();
        let mut rows = vec![0u64; n];
        for (u, v) in self.edges() {
            rows[perm[u]] |= 1 << perm[v];
            rows[perm[v]] |= 1 << perm[u];
        }
        let names = self.names.as_ref().map(|names| {
            let mut out = vec![String::new(); n];
            for (v, name) in names.iter().enumerate() {
                out[perm[v]] = name.clone();
            }
            out
        });
        Graph { rows, names }
    }

    /// Equality of named graphs up to vertex order: same name set and the
    /// same adjacency between names. Unnamed graphs compare positionally.
    pub fn same_labeled(&self, other: &Graph) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let (Some(_), Some(_)) = (&self.names, &other.names) else {
            return self.rows == other.rows && self.names == other.names;
        };
        let map: Option<Vec<usize>> =
            (0..self.n()).map(|v| other.index_of(&self.label(v))).collect();
        let Some(map) = map else { return false };
        (0..self.n()).all(|u| {
            (0..self.n()).all(|v| self.has_edge(u, v) == other.has_edge(map[u], map[v]))
        })
    }

    /// Whether `perm` (a bijection on `0..n`) preserves adjacency.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.n();
        if perm.len() != n {
            return false;
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= n || seen >> p & 1 == 1 {
                return false;
            }
            seen |= 1 << p;
        }
        (0..n).all(|u| (0..n).all(|v| self.has_edge(u, v) == self.has_edge(perm[u], perm[v])))
    }

    /// The first isomorphism `self → other` in lexicographic backtracking
    /// order, as a map from vertices of `self` to vertices of `other`.
    pub fn isomorphic(&self, other: &Graph) -> Option<Vec<usize>> {
        let mut found = None;
        self.search_isomorphisms(other, |m| {
            found = Some(m.to_vec());
            false
        });
        found
    }

    /// All automorphisms in lexicographic order.
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>> {
        if self.n() > SEARCH_CAP {
            return Err(Error::TooLarge { what: "automorphism search", n: self.n(), cap: SEARCH_CAP });
        }
        let mut all = Vec::new();
        self.search_isomorphisms(self, |m| {
            all.push(m.to_vec());
            true
        });
        Ok(all)
    }

    /// Calls `visit` on each isomorphism in lexicographic order until it
    /// returns false.
    fn search_isomorphisms(&self, other: &Graph, mut visit: impl FnMut(&[usize]) -> bool) {
        let n = self.n();
        if n != other.n() || self.edge_count() != other.edge_count() {
            return;
        }
        let mut deg_a: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut deg_b: Vec<usize> = (0..n).map(|v| other.degree(v)).collect();
        let (da, db) = (deg_a.clone(), deg_b.clone());
        deg_a.sort_unstable();
        deg_b.sort_unstable();
        if deg_a != deg_b {
            return;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = 0u64;
        #[allow(clippy::too_many_arguments)]
        fn rec(
            a: &Graph,
            b: &Graph,
            da: &[usize],
            db: &[usize],
            i: usize,
            map: &mut [usize],
            used: &mut u64,
            visit: &mut dyn FnMut(&[usize]) -> bool,
        ) -> bool {
            if i == a.n() {
                return visit(map);
            }
            for t in 0..b.n() {
                if *used >> t & 1 == 1 || da[i] != db[t] {
                    continue;
                }
                if (0..i).any(|j| a.has_edge(i, j) != b.has_edge(t, map[j])) {
                    continue;
                }
                map[i] = t;
                *used |= 1 << t;
                let go_on = rec(a, b, da, db, i + 1, map, used, visit);
                *used &= !(1 << t);
                if !go_on {
                    return false;
                }
            }
            true
        }
        rec(self, other, &da, &db, 0, &mut map, &mut used, &mut visit);
    }

    /// Canonical form: the least upper-triangle bit string over all vertex
    /// orderings.
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        let n = self.n();
        if n > SEARCH_CAP {
            return Err(Error::TooLarge { what: "canonical form", n, cap: SEARCH_CAP });
        }
        Ok(canonical_form_unchecked(&self.rows))
    }

    /// The graph whose adjacency is given by a canonical form.
    pub fn from_canonical(form: &CanonicalForm) -> Graph {
        let n = form.n;
        let mut g = Graph::empty(n).expect("canonical forms are small");
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if form.bit(k) {
                    g.add_edge(i, j).expect("in range");
                }
                k += 1;
            }
        }
        g
    }

    /// Parses `graph <n>` followed by `edge <u> <v>` lines; `#` starts a
    /// comment.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut g: Option<Graph> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match (toks[0], &mut g) {
                ("graph", None) => {
                    let [_, n] = toks[..] else {
                        return Err(parse_err(line_no, "expected `graph <n>`"));
                    };
                    let n: usize = n.parse().map_err(|_| parse_err(line_no, "invalid vertex count"))?;
                    g = Some(Graph::empty(n).map_err(|e| parse_err(line_no, e.to_string()))?);
                }
                ("graph", Some(_)) => return Err(parse_err(line_no, "duplicate `graph` header")),
                ("edge", Some(g)) => {
                    let [_, u, v] = toks[..] else {
                        return Err(parse_err(line_no, "expected `edge <u> <v>`"));
                    };
                    let u: usize = u.parse().map_err(|_| parse_err(line_no, "invalid vertex"))?;
                    let v: usize = v.parse().map_err(|_| parse_err(line_no, "invalid vertex"))?;
                    if u == v {
                        return Err(parse_err(line_no, "self-loops are not allowed"));
                    }
                    g.add_edge(u, v).map_err(|e| parse_err(line_no, e.to_string()))?;
                }
                ("edge", None) => return Err(parse_err(line_no, "`edge` before `graph` header")),
                (other, _) => return Err(parse_err(line_no, format!("unknown directive `{other}`"))),
            }
        }
        g.ok_or_else(|| parse_err(0, "missing `graph <n>` header"))
    }

    /// The text format: header then edges in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut s = format!("graph {}\n", self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "edge {u} {v}");
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (k, (u, v)) in self.edges().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}-{}", self.label(u), self.label(v))?;
        }
        f.write_str("])")
    }
}

/// Upper-triangle adjacency bit string of a graph on at most 10 vertices,
/// listed column by column: pairs `(0,1), (0,2), (1,2), (0,3), ...`.
/// Bit `k` of the string is stored at bit position `k` of `bits`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: u64,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn bit(&self, k: usize) -> bool {
        self.bits >> k & 1 == 1
    }

    pub fn bit_string(&self) -> String {
        (0..self.len()).map(|k| if self.bit(k) { '1' } else { '0' }).collect()
    }

    /// `<n>:<hex>` where the hex digits encode the bit string four bits at a
    /// time, first bit most significant, zero-padded at the end.
    pub fn to_hex(&self) -> String {
        let len = self.len();
        let mut s = format!("{}:", self.n);
        for chunk in 0..len.div_ceil(4) {
            let mut d = 0u32;
            for k in 0..4 {
                let idx = chunk * 4 + k;
                d = d << 1 | (idx < len && self.bit(idx)) as u32;
            }
            s.push(char::from_digit(d, 16).expect("nibble"));
        }
        s
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({}, {})", self.n, self.bit_string())
    }
}

/// Branch and bound over vertex orderings. Placing a vertex at position `j`
/// fixes bits `(0,j)..(j-1,j)`, which extend the string contiguously, so any
/// prefix that is already larger than the best one can be cut.
pub(crate) fn canonical_form_unchecked(rows: &[u64]) -> CanonicalForm {
    let n = rows.len();
    let total = n * n.saturating_sub(1) / 2;
    if n <= 1 {
        return CanonicalForm { n, bits: 0 };
    }
    struct Search<'a> {
        rows: &'a [u64],
        n: usize,
        order: Vec<usize>,
        best: Option<u64>,
    }
    // Bits are compared as strings, so keep the current prefix as an integer
    // whose most significant bit is the first string bit.
    impl Search<'_> {
        fn rec(&mut self, j: usize, used: u64, prefix: u64, plen: usize) {
            if j == self.n {
                if self.best.is_none_or(|b| prefix < b) {
                    self.best = Some(prefix);
                }
                return;
            }
            for v in 0..self.n {
                if used >> v & 1 == 1 {
                    continue;
                }
                let mut p = prefix;
                for &u in &self.order {
                    p = p << 1 | (self.rows[v] >> u & 1);
                }
                let new_len = plen + j;
                if let Some(best) = self.best {
                    let total = self.n * (self.n - 1) / 2;
                    let best_prefix = best >> (total - new_len);
                    if p > best_prefix {
                        continue;
                    }
                }
                self.order.push(v);
                self.rec(j + 1, used | 1 << v, p, new_len);
                self.order.pop();
            }
        }
    }
    let mut s = Search { rows, n, order: Vec::with_capacity(n), best: None };
    s.rec(0, 0, 0, 0);
    let msb_first = s.best.expect("at least one ordering");
    let mut bits = 0u64;
    for k in 0..total {
        if msb_first >> (total - 1 - k) & 1 == 1 {
            bits |= 1 << k;
        }
    }
    CanonicalForm { n, bits }
}

/// Common small graphs used across tests and the obstruction table.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Hub `0` joined to every vertex of the rim cycle `1..=rim`.
    pub fn wheel(rim: usize) -> Graph {
        let mut edges: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
        edges.extend((1..=rim).map(|i| (i, i % rim + 1)));
        Graph::from_edges(rim + 1, &edges).unwrap()
    }
}
