//! Boundary cliques, incident versus crossing edges, and lifting
//! automorphisms of a diagram's closed intersection graph to maps of its
//! endpoints.
//!
//! A chord belongs to exactly two boundary cliques, the sets of chords at
//! each of its endpoints. An automorphism lifts when it carries every
//! boundary clique onto a boundary clique; the lift then sends the endpoints
//! of each chord `c` to the endpoints of `h(c)`. Finite diagrams often have
//! automorphisms that do not lift, and the failure is reported with the step
//! that broke.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclic::CirclePoint;
use crate::diagram::{ChordDiagram, IntersectionMode};
use crate::error::{Error, Result};
use crate::graph::SEARCH_CAP;

/// Chord indices grouped by endpoint; indices follow diagram order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCliqueMap(pub BTreeMap<CirclePoint, Vec<usize>>);

impl BoundaryCliqueMap {
    pub fn at(&self, p: &CirclePoint) -> Option<&[usize]> {
        self.0.get(p).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CirclePoint, &[usize])> {
        self.0.iter().map(|(p, v)| (p, v.as_slice()))
    }

    /// The point whose clique is exactly `set` (in any order).
    pub fn point_with(&self, set: &[usize]) -> Option<&CirclePoint> {
        let mut want = set.to_vec();
        want.sort_unstable();
        self.0.iter().find(|(_, v)| **v == want).map(|(p, _)| p)
    }
}

pub fn boundary_cliques(d: &ChordDiagram) -> BoundaryCliqueMap {
    let mut map: BTreeMap<CirclePoint, Vec<usize>> = BTreeMap::new();
    for (i, (_, c)) in d.iter().enumerate() {
        for p in c.endpoints() {
            map.entry(p.clone()).or_default().push(i);
        }
    }
    BoundaryCliqueMap(map)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// The chords share an endpoint.
    Incident,
    /// The chords cross inside the disc.
    Crossing,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::Incident => "incident",
            EdgeKind::Crossing => "crossing",
        })
    }
}

/// Closed-mode edges split by kind; pairs are `(i, j)` with `i < j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeClasses {
    pub incident: Vec<(usize, usize)>,
    pub crossing: Vec<(usize, usize)>,
}

impl EdgeClasses {
    pub fn kind(&self, u: usize, v: usize) -> Option<EdgeKind> {
        let e = (u.min(v), u.max(v));
        if self.incident.binary_search(&e).is_ok() {
            Some(EdgeKind::Incident)
        } else if self.crossing.binary_search(&e).is_ok() {
            Some(EdgeKind::Crossing)
        } else {
            None
        }
    }
}

pub fn edge_classes(d: &ChordDiagram) -> EdgeClasses {
    let mut out = EdgeClasses::default();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let (a, b) = (d.chord_at(i), d.chord_at(j));
            if a.is_incident(b) {
                out.incident.push((i, j));
            } else if a.crosses(b) {
                out.crossing.push((i, j));
            }
        }
    }
    out
}

/// Why an automorphism has no lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftFailure {
    /// An edge is sent to an edge of the other kind.
    IncidenceViolation { pair: (usize, usize), image: (usize, usize), from: EdgeKind, to: EdgeKind },
    /// The image of the boundary clique at `point` is not a boundary clique.
    BoundaryClique { point: CirclePoint, image: Vec<usize> },
    /// Every endpoint has candidate images but no injective choice exists.
    NoConsistentMap,
}

impl LiftFailure {
    pub fn describe(&self, d: &ChordDiagram) -> String {
        let name = |i: usize| d.name_at(i).to_string();
        match self {
            LiftFailure::IncidenceViolation { pair, image, from, to } => format!(
                "{from} pair {{{},{}}} sent to {to} pair {{{},{}}}",
                name(pair.0),
                name(pair.1),
                name(image.0),
                name(image.1)
            ),
            LiftFailure::BoundaryClique { point, image } => {
                let names: Vec<String> = image.iter().map(|&i| name(i)).collect();
                format!("boundary clique at {point} sent to {{{}}}, which is not a boundary clique", names.join(","))
            }
            LiftFailure::NoConsistentMap => "no injective endpoint map is consistent with the chords".into(),
        }
    }
}

/// A bijection of the diagram's endpoint set, listed by source point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointMap(pub BTreeMap<CirclePoint, CirclePoint>);

impl EndpointMap {
    pub fn get(&self, p: &CirclePoint) -> Option<&CirclePoint> {
        self.0.get(p)
    }

    pub fn compose(&self, inner: &EndpointMap) -> Option<EndpointMap> {
        inner
            .0
            .iter()
            .map(|(p, q)| self.0.get(q).map(|r| (p.clone(), r.clone())))
            .collect::<Option<BTreeMap<_, _>>>()
            .map(EndpointMap)
    }

    /// Whether every chord `c` is sent onto the chord `h(c)`.
    pub fn realizes(&self, d: &ChordDiagram, h: &[usize]) -> bool {
        d.iter().enumerate().all(|(i, (_, c))| {
            let target = d.chord_at(h[i]);
            c.endpoints()
                .iter()
                .all(|p| self.get(p).is_some_and(|q| target.has_endpoint(q)))
                && self.get(c.lo()) != self.get(c.hi())
        })
    }

    pub fn to_text(&self) -> String {
        self.0.iter().map(|(p, q)| format!("{p} -> {q}\n")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lift {
    Lifted(EndpointMap),
    Absent(LiftFailure),
}

/// Lifts `h`, an automorphism of the closed intersection graph, to a map of
/// endpoints.
///
/// Edge kinds are checked first, then that each boundary clique goes onto a
/// boundary clique. Among consistent endpoint maps, one that preserves the
/// cyclic order is returned if it exists, then one that reverses it, and
/// otherwise the first found.
pub fn lift_automorphism(d: &ChordDiagram, h: &[usize]) -> Result<Lift> {
    let g = d.intersection_graph(IntersectionMode::Closed);
    if !g.is_automorphism(h) {
        return Err(Error::NotAutomorphism(format!("{h:?} does not preserve adjacency")));
    }

    let classes = edge_classes(d);
    for (kind, edges) in [(EdgeKind::Incident, &classes.incident), (EdgeKind::Crossing, &classes.crossing)] {
        for &(u, v) in edges {
            let to = classes.kind(h[u], h[v]).expect("automorphisms keep edges");
            if to != kind {
                let image = (h[u], h[v]);
                return Ok(Lift::Absent(LiftFailure::IncidenceViolation { pair: (u, v), image, from: kind, to }));
            }
        }
    }

    let cliques = boundary_cliques(d);
    let points: Vec<&CirclePoint> = cliques.0.keys().collect();
    let index: BTreeMap<&CirclePoint, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(points.len());
    for (p, members) in cliques.iter() {
        let image: Vec<usize> = members.iter().map(|&i| h[i]).collect();
        let options: Vec<usize> = if members.len() >= 2 {
            cliques.point_with(&image).map(|q| index[q]).into_iter().collect()
        } else {
            let target = d.chord_at(image[0]);
            target
                .endpoints()
                .into_iter()
                .filter(|q| cliques.at(q) == Some(&image[..]))
                .map(|q| index[q])
                .collect()
        };
        if options.is_empty() {
            return Ok(Lift::Absent(LiftFailure::BoundaryClique { point: p.clone(), image }));
        }
        candidates.push(options);
    }

    let m = points.len();
    let allowed = |i: usize, j: usize| candidates[i].contains(&j);
    let build = |f: &dyn Fn(usize) -> usize| {
        EndpointMap((0..m).map(|i| (points[i].clone(), points[f(i)].clone())).collect())
    };
    for k in 0..m {
        if (0..m).all(|i| allowed(i, (i + k) % m)) {
            return Ok(Lift::Lifted(build(&|i| (i + k) % m)));
        }
    }
    for k in 0..m {
        if (0..m).all(|i| allowed(i, (k + m - i) % m)) {
            return Ok(Lift::Lifted(build(&|i| (k + m - i) % m)));
        }
    }

    fn assign(i: usize, candidates: &[Vec<usize>], used: &mut Vec<bool>, out: &mut Vec<usize>) -> bool {
        if i == candidates.len() {
            return true;
        }
        for &j in &candidates[i] {
            if used[j] {
                continue;
            }
            used[j] = true;
            out.push(j);
            if assign(i + 1, candidates, used, out) {
                return true;
            }
            out.pop();
            used[j] = false;
        }
        false
    }
    let mut out = Vec::with_capacity(m);
    if assign(0, &candidates, &mut vec![false; m], &mut out) {
        Ok(Lift::Lifted(build(&|i| out[i])))
    } else {
        Ok(Lift::Absent(LiftFailure::NoConsistentMap))
    }
}

/// Automorphisms of the closed intersection graph that send incident pairs
/// to incident pairs and crossing pairs to crossing pairs.
pub fn class_preserving_automorphisms(d: &ChordDiagram) -> Result<Vec<Vec<usize>>> {
    if d.len() > SEARCH_CAP {
        return Err(Error::TooLarge { what: "class-preserving automorphisms", n: d.len(), cap: SEARCH_CAP });
    }
    let classes = edge_classes(d);
    let auts = d.intersection_graph(IntersectionMode::Closed).automorphisms()?;
    Ok(auts
        .into_iter()
        .filter(|h| {
            classes.incident.iter().all(|&(u, v)| classes.kind(h[u], h[v]) == Some(EdgeKind::Incident))
                && classes.crossing.iter().all(|&(u, v)| classes.kind(h[u], h[v]) == Some(EdgeKind::Crossing))
        })
        .collect())
}

/// Parses cycle notation such as `(a c)(b e)` over `labels`; `()` or the
/// empty string is the identity.
pub fn parse_cycles(s: &str, labels: &[String]) -> Result<Vec<usize>> {
    let n = labels.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut touched = vec![false; n];
    let bad = |msg: String| Error::Parse { line: 1, msg };
    let mut rest = s.trim();
    while !rest.is_empty() {
        let inner_start = rest.strip_prefix('(').ok_or_else(|| bad(format!("expected `(` in `{s}`")))?;
        let close = inner_start.find(')').ok_or_else(|| bad(format!("unclosed cycle in `{s}`")))?;
        let members: Vec<usize> = inner_start[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| labels.iter().position(|l| l == t).ok_or_else(|| Error::UnknownName(t.to_string())))
            .collect::<Result<_>>()?;
        for (k, &x) in members.iter().enumerate() {
            if touched[x] {
                return Err(bad(format!("`{}` appears twice", labels[x])));
            }
            touched[x] = true;
            perm[x] = members[(k + 1) % members.len()];
        }
        rest = inner_start[close + 1..].trim_start();
    }
    Ok(perm)
}

/// Cycle notation; each cycle starts at its least index and cycles are
/// ordered by that index. Fixed points are omitted; the identity is `()`.
pub fn format_cycles(perm: &[usize], labels: &[String]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(labels[x].as_str());
            x = perm[x];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Chord;

    type Row<'a> = (&'a str, (i64, i64), (i64, i64));

    fn diagram(chords: &[Row]) -> ChordDiagram {
        ChordDiagram::from_chords(chords.iter().map(|&(n, a, b)| (n, Chord::from_ratios(a, b).unwrap()))).unwrap()
    }

    fn two_edges() -> ChordDiagram {
        diagram(&[("a", (0, 1), (1, 10)), ("b", (0, 1), (2, 10)), ("c", (4, 10), (6, 10)), ("e", (5, 10), (7, 10))])
    }

    fn pt(n: i64, d: i64) -> CirclePoint {
        CirclePoint::from_ratio(n, d).unwrap()
    }

    #[test]
    fn boundary_clique_examples() {
        let d = diagram(&[("a", (0, 1), (1, 3)), ("b", (0, 1), (2, 3)), ("c", (1, 3), (2, 3))]);
        let m = boundary_cliques(&d);
        assert_eq!(m.at(&pt(0, 1)), Some(&[0, 1][..]));
        assert_eq!(m.at(&pt(1, 3)), Some(&[0, 2][..]));
        assert_eq!(m.at(&pt(2, 3)), Some(&[1, 2][..]));
        let g = d.intersection_graph(IntersectionMode::Closed);
        for (_, set) in m.iter() {
            for &u in set {
                for &v in set {
                    assert!(u == v || g.has_edge(u, v));
                }
            }
        }
        let generic = diagram(&[("a", (0, 1), (1, 2)), ("b", (1, 4), (3, 4))]);
        assert!(boundary_cliques(&generic).iter().all(|(_, s)| s.len() == 1));
        assert!(boundary_cliques(&ChordDiagram::new()).0.is_empty());
    }

    #[test]
    fn edge_class_examples() {
        let d = diagram(&[("a", (0, 1), (1, 3)), ("b", (0, 1), (2, 3))]);
        assert_eq!(edge_classes(&d).incident, [(0, 1)]);
        let d = diagram(&[("a", (0, 1), (1, 2)), ("b", (1, 4), (3, 4))]);
        assert_eq!(edge_classes(&d).crossing, [(0, 1)]);
        let d = diagram(&[("a", (0, 1), (1, 3)), ("b", (0, 1), (2, 3)), ("c", (1, 6), (1, 2))]);
        let cls = edge_classes(&d);
        assert_eq!(cls.incident, [(0, 1)]);
        // c = (1/6, 1/2) lies entirely inside b's arc (0, 2/3), so b and c
        // do not meet at all.
        assert_eq!(cls.crossing, [(0, 2)]);
        assert!(!d.chord_at(1).crosses(d.chord_at(2)));
    }

    #[test]
    fn identity_lifts_to_identity() {
        let d = two_edges();
        let Lift::Lifted(map) = lift_automorphism(&d, &[0, 1, 2, 3]).unwrap() else { panic!() };
        assert!(map.0.iter().all(|(p, q)| p == q));
    }

    #[test]
    fn mixing_edge_kinds_does_not_lift() {
        let d = two_edges();
        let h = [2, 3, 0, 1];
        let Lift::Absent(f) = lift_automorphism(&d, &h).unwrap() else { panic!() };
        assert_eq!(
            f,
            LiftFailure::IncidenceViolation { pair: (0, 1), image: (2, 3), from: EdgeKind::Incident, to: EdgeKind::Crossing }
        );
        assert_eq!(f.describe(&d), "incident pair {a,b} sent to crossing pair {c,e}");
    }

    #[test]
    fn crossing_swap_lifts_to_rotation() {
        let d = diagram(&[("a", (0, 1), (1, 2)), ("b", (1, 4), (3, 4))]);
        let Lift::Lifted(map) = lift_automorphism(&d, &[1, 0]).unwrap() else { panic!() };
        let quarter = crate::cyclic::Rational::new(1.into(), 4.into());
        for (p, q) in &map.0 {
            assert_eq!(q, &p.rotated(&quarter));
        }
        assert!(map.realizes(&d, &[1, 0]));
    }

    #[test]
    fn non_automorphism_is_an_error() {
        let d = two_edges();
        assert!(matches!(lift_automorphism(&d, &[0, 2, 1, 3]), Err(Error::NotAutomorphism(_))));
    }

    #[test]
    fn class_preserving_examples() {
        let d = two_edges();
        let all = d.intersection_graph(IntersectionMode::Closed).automorphisms().unwrap();
        assert_eq!(all.len(), 8);
        let kept = class_preserving_automorphisms(&d).unwrap();
        assert_eq!(kept, vec![vec![0, 1, 2, 3], vec![0, 1, 3, 2], vec![1, 0, 2, 3], vec![1, 0, 3, 2]]);

        let generic = diagram(&[("a", (0, 1), (1, 2)), ("b", (1, 4), (3, 4)), ("c", (1, 8), (3, 8))]);
        let all = generic.intersection_graph(IntersectionMode::Closed).automorphisms().unwrap();
        assert_eq!(class_preserving_automorphisms(&generic).unwrap(), all);

        let single = diagram(&[("a", (0, 1), (1, 2))]);
        assert_eq!(class_preserving_automorphisms(&single).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn cycle_notation() {
        let labels: Vec<String> = ["a", "b", "c", "e"].iter().map(|s| s.to_string()).collect();
        let p = parse_cycles("(a c)(b e)", &labels).unwrap();
        assert_eq!(p, [2, 3, 0, 1]);
        assert_eq!(format_cycles(&p, &labels), "(a c)(b e)");
        assert_eq!(format_cycles(&parse_cycles("()", &labels).unwrap(), &labels), "()");
        assert_eq!(parse_cycles("(c a b)", &labels).unwrap(), [1, 2, 0, 3]);
        assert_eq!(format_cycles(&[1, 2, 0, 3], &labels), "(a b c)");
        assert!(parse_cycles("(a z)", &labels).is_err());
        assert!(parse_cycles("(a b)(b c)", &labels).is_err());
        assert!(parse_cycles("(a b", &labels).is_err());
    }
}
