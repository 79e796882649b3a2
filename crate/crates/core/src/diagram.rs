//! Chord diagrams on the rational circle and the constructions that move
//! between diagrams and their intersection graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::cyclic::{insert_between, interleaves, parse_rational, CirclePoint, Rational};
use crate::error::{parse_err, Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use crate::word::DoWord;

/// Segment between two distinct circle points, stored with `lo < hi`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Chord {
    lo: CirclePoint,
    hi: CirclePoint,
}

impl Chord {
    pub fn new(a: CirclePoint, b: CirclePoint) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Chord { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(Chord { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(Error::DegeneratePair(a.to_string())),
        }
    }

    pub fn from_ratios(a: (i64, i64), b: (i64, i64)) -> Result<Self> {
        Chord::new(CirclePoint::from_ratio(a.0, a.1)?, CirclePoint::from_ratio(b.0, b.1)?)
    }

    pub fn lo(&self) -> &CirclePoint {
        &self.lo
    }

    pub fn hi(&self) -> &CirclePoint {
        &self.hi
    }

    pub fn endpoints(&self) -> [&CirclePoint; 2] {
        [&self.lo, &self.hi]
    }

    pub fn has_endpoint(&self, p: &CirclePoint) -> bool {
        &self.lo == p || &self.hi == p
    }

    pub fn crosses(&self, other: &Chord) -> bool {
        interleaves((&self.lo, &self.hi), (&other.lo, &other.hi)).expect("chords are non-degenerate")
    }

    /// The chords share exactly one endpoint.
    pub fn is_incident(&self, other: &Chord) -> bool {
        self != other && self.endpoints().iter().any(|p| other.has_endpoint(p))
    }

    fn map_points(&self, f: impl Fn(&CirclePoint) -> CirclePoint) -> Chord {
        Chord::new(f(&self.lo), f(&self.hi)).expect("map is injective")
    }
}

/// How two chords are judged to meet.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum IntersectionMode {
    /// Closed segments: crossing inside the disc or sharing an endpoint.
    Closed,
    /// Only crossings at interior points of the disc.
    CrossingOnly,
}

pub fn intersects(c1: &Chord, c2: &Chord, mode: IntersectionMode) -> Result<bool> {
    if c1 == c2 {
        return Err(Error::IdenticalChords(format!("{c1:?}"), format!("{c2:?}")));
    }
    Ok(c1.crosses(c2) || (mode == IntersectionMode::Closed && c1.is_incident(c2)))
}

/// An ordered list of named, pairwise distinct chords.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ChordDiagram {
    chords: Vec<(String, Chord)>,
}

impl ChordDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_chords<S: Into<String>>(chords: impl IntoIterator<Item = (S, Chord)>) -> Result<Self> {
        let mut d = ChordDiagram::new();
        for (name, c) in chords {
            d.push(name, c)?;
        }
        Ok(d)
    }

    pub fn push(&mut self, name: impl Into<String>, chord: Chord) -> Result<()> {
        let name = name.into();
        if self.chords.iter().any(|(n, _)| *n == name) {
            return Err(Error::DuplicateName(name));
        }
        if self.chords.iter().any(|(_, c)| *c == chord) {
            return Err(Error::DuplicateChord(name));
        }
        if self.chords.len() == MAX_VERTICES {
            return Err(Error::TooLarge { what: "diagram", n: MAX_VERTICES + 1, cap: MAX_VERTICES });
        }
        self.chords.push((name, chord));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Chord)> {
        self.chords.iter().map(|(n, c)| (n.as_str(), c))
    }

    pub fn names(&self) -> Vec<String> {
        self.chords.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn chord(&self, name: &str) -> Option<&Chord> {
        self.index_of(name).map(|i| &self.chords[i].1)
    }

    pub fn chord_at(&self, i: usize) -> &Chord {
        &self.chords[i].1
    }

    pub fn name_at(&self, i: usize) -> &str {
        &self.chords[i].0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.chords.iter().position(|(n, _)| n == name)
    }

    /// Distinct endpoints in increasing order.
    pub fn points(&self) -> Vec<CirclePoint> {
        let set: BTreeSet<&CirclePoint> =
            self.chords.iter().flat_map(|(_, c)| c.endpoints()).collect();
        set.into_iter().cloned().collect()
    }

    /// The first endpoint shared by two chords, if any.
    pub fn shared_point(&self) -> Option<CirclePoint> {
        let mut seen = HashSet::new();
        self.chords
            .iter()
            .flat_map(|(_, c)| c.endpoints())
            .find(|p| !seen.insert(*p))
            .cloned()
    }

    /// No two chords share an endpoint.
    pub fn is_generic(&self) -> bool {
        self.shared_point().is_none()
    }

    fn require_generic(&self) -> Result<()> {
        match self.shared_point() {
            Some(p) => Err(Error::NotGeneric(p.to_string())),
            None => Ok(()),
        }
    }

    /// Vertex `i` is the `i`-th chord; vertices carry the chord names.
    pub fn intersection_graph(&self, mode: IntersectionMode) -> Graph {
        let n = self.len();
        let mut g = Graph::empty(n).expect("diagram size is capped");
        for i in 0..n {
            for j in i + 1..n {
                if intersects(&self.chords[i].1, &self.chords[j].1, mode).expect("chords are distinct") {
                    g.add_edge(i, j).expect("in range");
                }
            }
        }
        g.with_names(self.names())
    }

    /// The names read counterclockwise from point 0.
    pub fn to_word(&self) -> Result<DoWord> {
        self.require_generic()?;
        let mut occ: Vec<(&CirclePoint, &str)> = self
            .chords
            .iter()
            .flat_map(|(n, c)| c.endpoints().map(|p| (p, n.as_str())))
            .collect();
        occ.sort();
        DoWord::new(occ.into_iter().map(|(_, n)| n))
    }

    /// Occurrence `i` of the `2n` letters is placed at `i / 2n`.
    pub fn embed_word(word: &DoWord) -> ChordDiagram {
        let total = word.len() as i64;
        let mut slots: Vec<(&str, Vec<CirclePoint>)> = Vec::new();
        for (i, l) in word.letters().iter().enumerate() {
            let p = CirclePoint::from_ratio(i as i64, total).expect("i < total");
            match slots.iter_mut().find(|(n, _)| n == l) {
                Some((_, ps)) => ps.push(p),
                None => slots.push((l, vec![p])),
            }
        }
        let chords = slots.into_iter().map(|(n, mut ps)| {
            let b = ps.pop().expect("two occurrences");
            let a = ps.pop().expect("two occurrences");
            (n, Chord::new(a, b).expect("distinct positions"))
        });
        ChordDiagram::from_chords(chords.collect::<Vec<_>>()).expect("words have distinct letters")
    }

    /// Re-places every endpoint, chord by chord in diagram order, at the
    /// midpoint of the gap between its already-placed cyclic neighbours. The
    /// first chord becomes `(0, 1/2)`. Shared endpoints stay shared.
    pub fn reembed_incremental(&self) -> ChordDiagram {
        // original point -> new point, both kept sorted by the original
        let mut placed: BTreeMap<CirclePoint, CirclePoint> = BTreeMap::new();
        let place = |p: &CirclePoint, placed: &mut BTreeMap<CirclePoint, CirclePoint>| {
            if let Some(q) = placed.get(p) {
                return q.clone();
            }
            let q = match placed.len() {
                0 => CirclePoint::zero(),
                1 => {
                    let only = placed.values().next().expect("one point");
                    only.rotated(&Rational::new(1.into(), 2.into()))
                }
                _ => {
                    let pred = placed
                        .range(..p.clone())
                        .next_back()
                        .or_else(|| placed.iter().next_back())
                        .map(|(_, v)| v)
                        .expect("nonempty");
                    let succ = placed
                        .range(p.clone()..)
                        .next()
                        .or_else(|| placed.iter().next())
                        .map(|(_, v)| v)
                        .expect("nonempty");
                    insert_between(pred, succ).expect("neighbours are distinct")
                }
            };
            placed.insert(p.clone(), q.clone());
            q
        };
        let chords = self.chords.iter().map(|(n, c)| {
            let a = place(&c.lo, &mut placed);
            let b = place(&c.hi, &mut placed);
            (n.clone(), Chord::new(a, b).expect("placement is injective"))
        });
        ChordDiagram::from_chords(chords.collect::<Vec<_>>()).expect("placement is injective")
    }

    /// Splits every endpoint into a cluster of distinct endpoints, one per
    /// incident chord, so that formerly incident chords cross.
    ///
    /// Each original point `q` owns the arc of radius `r` around it, where
    /// `r` is a quarter of the smallest gap between cyclically consecutive
    /// endpoints (so `1/(4m)` for `m` evenly spaced points). The chords at
    /// `q` get positions `q - r + 2r(i+1)/(k+1)` in the counterclockwise
    /// order of their opposite endpoints as seen from `q`; a lone chord keeps
    /// `q` itself.
    pub fn blow_up(&self) -> ChordDiagram {
        let points = self.points();
        if points.len() < 2 {
            return self.clone();
        }
        let m = points.len();
        let min_gap = (0..m)
            .map(|i| points[i].arc_to(&points[(i + 1) % m]))
            .min()
            .expect("at least two points");
        let radius = min_gap / Rational::from_integer(4.into());

        let mut new_end: HashMap<(usize, &CirclePoint), CirclePoint> = HashMap::new();
        for q in &points {
            let mut at_q: Vec<(Rational, usize)> = self
                .chords
                .iter()
                .enumerate()
                .filter(|(_, (_, c))| c.has_endpoint(q))
                .map(|(i, (_, c))| {
                    let other = if &c.lo == q { &c.hi } else { &c.lo };
                    (q.arc_to(other), i)
                })
                .collect();
            at_q.sort();
            let k = Rational::from_integer((at_q.len() as i64 + 1).into());
            let two_r = &radius * Rational::from_integer(2.into());
            for (slot, (_, i)) in at_q.iter().enumerate() {
                let step = Rational::from_integer((slot as i64 + 1).into()) / &k;
                let offset = &step * &two_r - &radius;
                new_end.insert((*i, q), q.rotated(&offset));
            }
        }
        let chords = self.chords.iter().enumerate().map(|(i, (n, c))| {
            let a = new_end[&(i, &c.lo)].clone();
            let b = new_end[&(i, &c.hi)].clone();
            (n.clone(), Chord::new(a, b).expect("clusters are disjoint"))
        });
        ChordDiagram::from_chords(chords.collect::<Vec<_>>()).expect("clusters are disjoint")
    }

    /// Reflects every endpoint strictly inside the arc `(lo, hi)` of chord
    /// `v` by `x ↦ lo + hi - x`.
    pub fn flip_interval(&self, v: &str) -> Result<ChordDiagram> {
        self.require_generic()?;
        let pivot = self.chord(v).ok_or_else(|| Error::UnknownName(v.to_string()))?;
        let (s, t) = (pivot.lo.value(), pivot.hi.value());
        let axis = s + t;
        let flip = |x: &CirclePoint| {
            if x.value() > s && x.value() < t {
                x.reflected(&axis)
            } else {
                x.clone()
            }
        };
        let chords = self.chords.iter().map(|(n, c)| (n.clone(), c.map_points(flip)));
        ChordDiagram::from_chords(chords.collect::<Vec<_>>())
    }

    /// Line-oriented format: `chord <name> <rational> <rational>`, `#`
    /// comments.
    pub fn parse(text: &str) -> Result<ChordDiagram> {
        let mut d = ChordDiagram::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let ["chord", name, a, b] = toks[..] else {
                return Err(parse_err(line_no, "expected `chord <name> <rational> <rational>`"));
            };
            let point = |s: &str| -> Result<CirclePoint> {
                let r = parse_rational(s).map_err(|m| parse_err(line_no, m))?;
                CirclePoint::new(r).map_err(|e| parse_err(line_no, e.to_string()))
            };
            let chord = Chord::new(point(a)?, point(b)?).map_err(|e| parse_err(line_no, e.to_string()))?;
            d.push(name, chord).map_err(|e| parse_err(line_no, e.to_string()))?;
        }
        Ok(d)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (n, c) in &self.chords {
            let _ = writeln!(s, "chord {n} {} {}", c.lo, c.hi);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::IntersectionMode::*;
    use super::*;

    fn chord(a: (i64, i64), b: (i64, i64)) -> Chord {
        Chord::from_ratios(a, b).unwrap()
    }

    type Row<'a> = (&'a str, (i64, i64), (i64, i64));

    fn diagram(chords: &[Row]) -> ChordDiagram {
        ChordDiagram::from_chords(chords.iter().map(|&(n, a, b)| (n, chord(a, b)))).unwrap()
    }

    fn pt(n: i64, d: i64) -> CirclePoint {
        CirclePoint::from_ratio(n, d).unwrap()
    }

    #[test]
    fn chord_invariants() {
        let c = chord((3, 4), (1, 4));
        assert_eq!(c.lo(), &pt(1, 4));
        assert_eq!(c, chord((1, 4), (3, 4)));
        assert!(Chord::from_ratios((1, 2), (2, 4)).is_err());
        assert_eq!(chord((1, 1), (1, 2)).lo(), &CirclePoint::zero());
    }

    #[test]
    fn intersects_examples() {
        let (a, b) = (chord((0, 1), (1, 2)), chord((1, 4), (3, 4)));
        assert!(intersects(&a, &b, CrossingOnly).unwrap());
        let (c, d) = (chord((0, 1), (1, 3)), chord((0, 1), (2, 3)));
        assert!(intersects(&c, &d, Closed).unwrap());
        assert!(!intersects(&c, &d, CrossingOnly).unwrap());
        assert!(matches!(intersects(&a, &a, Closed), Err(Error::IdenticalChords(..))));
    }

    #[test]
    fn diagram_rejects_duplicates() {
        let mut d = diagram(&[("a", (0, 1), (1, 2))]);
        assert!(matches!(d.push("a", chord((1, 4), (3, 4))), Err(Error::DuplicateName(_))));
        assert!(matches!(d.push("b", chord((1, 2), (0, 1))), Err(Error::DuplicateChord(_))));
    }

    #[test]
    fn intersection_graph_examples() {
        let d = diagram(&[("a", (0, 1), (1, 2)), ("b", (1, 4), (3, 4)), ("c", (1, 8), (3, 16))]);
        let g = d.intersection_graph(CrossingOnly);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(g.names().unwrap(), ["a", "b", "c"]);

        let d = diagram(&[("a", (0, 1), (1, 3)), ("b", (0, 1), (2, 3))]);
        assert_eq!(d.intersection_graph(Closed).edge_count(), 1);
        assert_eq!(ChordDiagram::new().intersection_graph(Closed).n(), 0);
    }

    #[test]
    fn word_examples() {
        let d = diagram(&[("a", (0, 1), (1, 2)), ("b", (1, 4), (3, 4))]);
        assert_eq!(d.to_word().unwrap().to_text(), "a b a b");
        let d = diagram(&[("a", (0, 1), (1, 8)), ("b", (1, 4), (3, 8))]);
        assert_eq!(d.to_word().unwrap().to_text(), "a a b b");
        let d = diagram(&[("a", (0, 1), (1, 3)), ("b", (0, 1), (2, 3))]);
        assert!(matches!(d.to_word(), Err(Error::NotGeneric(_))));
    }

    #[test]
    fn embed_examples() {
        let d = ChordDiagram::embed_word(&DoWord::parse("a b a b").unwrap());
        assert_eq!(d, diagram(&[("a", (0, 1), (1, 2)), ("b", (1, 4), (3, 4))]));
        let d = ChordDiagram::embed_word(&DoWord::parse("a a b b").unwrap());
        assert_eq!(d.intersection_graph(CrossingOnly).edge_count(), 0);
        let d = ChordDiagram::embed_word(&DoWord::parse("a b c a b c").unwrap());
        assert_eq!(d.intersection_graph(CrossingOnly).edge_count(), 3);
        assert!(d.is_generic());
    }

    #[test]
    fn reembed_examples() {
        let d = diagram(&[("x", (1, 7), (5, 9))]);
        assert_eq!(d.reembed_incremental(), diagram(&[("x", (0, 1), (1, 2))]));

        let d = diagram(&[("a", (0, 1), (1, 2)), ("b", (1, 4), (3, 4))]);
        let r = d.reembed_incremental();
        assert_eq!(r.to_word().unwrap().to_text(), "a b a b");
        assert_eq!(r.intersection_graph(CrossingOnly).edge_count(), 1);

        // shared endpoints stay shared
        let d = diagram(&[("a", (1, 5), (3, 5)), ("b", (3, 5), (4, 5)), ("c", (1, 10), (4, 5))]);
        let r = d.reembed_incremental();
        assert_eq!(r.points().len(), 4);
        assert!(r.intersection_graph(Closed).same_labeled(&d.intersection_graph(Closed)));
        assert_eq!(r.chord("a").unwrap(), &chord((0, 1), (1, 2)));
    }

    #[test]
    fn blow_up_incident_pair() {
        let d = diagram(&[("a", (0, 1), (1, 3)), ("b", (0, 1), (2, 3))]);
        let b = d.blow_up();
        assert!(b.is_generic());
        assert!(b.chord("a").unwrap().crosses(b.chord("b").unwrap()));
        // gaps are all 1/3, radius 1/12; a (opposite end 1/3) comes first
        // in the cluster at 0, and the lone ends keep their position.
        assert_eq!(b.chord("a").unwrap(), &chord((35, 36), (1, 3)));
        assert_eq!(b.chord("b").unwrap(), &chord((1, 36), (2, 3)));
    }

    #[test]
    fn blow_up_triangle_and_generic() {
        let d = diagram(&[("a", (0, 1), (1, 3)), ("b", (0, 1), (2, 3)), ("c", (1, 3), (2, 3))]);
        let b = d.blow_up();
        assert!(b.is_generic());
        for (x, y) in [("a", "b"), ("a", "c"), ("b", "c")] {
            assert!(b.chord(x).unwrap().crosses(b.chord(y).unwrap()), "{x}{y}");
        }
        let g = diagram(&[("a", (0, 1), (1, 2)), ("b", (1, 4), (3, 4)), ("c", (1, 8), (3, 16))]);
        assert_eq!(g.blow_up(), g);
    }

    #[test]
    fn flip_examples() {
        let d = diagram(&[("v", (0, 1), (1, 2)), ("a", (1, 4), (3, 4)), ("b", (3, 8), (5, 8))]);
        let f = d.flip_interval("v").unwrap();
        assert_eq!(f.chord("a").unwrap(), &chord((1, 4), (3, 4)));
        assert_eq!(f.chord("b").unwrap(), &chord((1, 8), (5, 8)));
        assert_eq!(f.intersection_graph(CrossingOnly).edge_count(), 3);
        assert_eq!(f.flip_interval("v").unwrap(), d);

        let lonely = diagram(&[("v", (0, 1), (1, 8)), ("a", (1, 4), (3, 4))]);
        let f = lonely.flip_interval("v").unwrap();
        assert_eq!(f.intersection_graph(CrossingOnly), lonely.intersection_graph(CrossingOnly));

        assert!(matches!(d.flip_interval("z"), Err(Error::UnknownName(_))));
        let shared = diagram(&[("a", (0, 1), (1, 3)), ("b", (0, 1), (2, 3))]);
        assert!(matches!(shared.flip_interval("a"), Err(Error::NotGeneric(_))));
    }

    #[test]
    fn text_format() {
        let d = ChordDiagram::parse("# two\nchord a 0 1/2\nchord b 3/4 2/8 # c\n").unwrap();
        assert_eq!(d.to_text(), "chord a 0 1/2\nchord b 1/4 3/4\n");
        assert!(ChordDiagram::parse("chord a 0 0\n").is_err());
        assert!(ChordDiagram::parse("chord a 0 3/2\n").is_err());
        assert!(ChordDiagram::parse("chord a 0 1/2\nchord a 1/4 3/4\n").is_err());
        assert!(ChordDiagram::parse("line a 0 1/2\n").is_err());
        let err = ChordDiagram::parse("chord a 0 1/2\nchord b 1/x 1/2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
