//! The extension property and the BIT model of the Rado graph: vertices are
//! the naturals, and `i < j` are adjacent iff bit `i` of `j` is set.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest ground set accepted by [`check_extension`]; the check visits
/// `3^k` pairs.
pub const EXTENSION_GROUND_CAP: usize = 14;

/// The BIT graph on `0..n`.
pub fn bit_graph(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for j in 0..n {
        for i in 0..j {
            if j >> i & 1 == 1 {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Least `x > max(U ∪ W)` whose binary expansion has every bit of `U` set
/// and every bit of `W` clear. In the infinite BIT graph such an `x` is
/// adjacent to all of `U` and none of `W`.
pub fn bit_witness(u: &[u64], w: &[u64]) -> Result<BigUint> {
    if u.iter().any(|x| w.contains(x)) {
        return Err(Error::NotDisjoint);
    }
    let mut base = BigUint::zero();
    let mut mask = BigUint::zero();
    for &i in u {
        base.set_bit(i, true);
        mask.set_bit(i, true);
    }
    for &i in w {
        mask.set_bit(i, true);
    }
    let floor = match u.iter().chain(w).max() {
        Some(&m) => BigUint::from(m) + 1u32,
        None => BigUint::zero(),
    };
    Ok(least_fitting_at_least(&floor, &base, &mask))
}

/// Least `x ≥ t` with `x & mask == base` (where `base ⊆ mask`).
///
/// Either `t` fits, or `x` agrees with `t` above some position `p`, has a
/// one at `p` where `t` has a zero, and is as small as the constraints allow
/// below `p`. The lowest feasible `p` gives the least `x`.
fn least_fitting_at_least(t: &BigUint, base: &BigUint, mask: &BigUint) -> BigUint {
    if &(t & mask) == base {
        return t.clone();
    }
    // Position `top - 1` is clear in both `t` and `mask`, so it always works.
    let top = t.bits().max(mask.bits()) + 1;
    let fits = |p: u64| !mask.bit(p) || base.bit(p) == t.bit(p);
    // agrees_from[p]: the bits of `t` at positions `>= p` meet the constraints
    let mut agrees_from = vec![true; top as usize + 1];
    for p in (0..top).rev() {
        agrees_from[p as usize] = agrees_from[p as usize + 1] && fits(p);
    }
    let p = (0..top)
        .find(|&p| !t.bit(p) && (!mask.bit(p) || base.bit(p)) && agrees_from[p as usize + 1])
        .expect("position top - 1 is free");
    let mut x = (t >> (p + 1)) << (p + 1);
    x.set_bit(p, true);
    x | (base & ((BigUint::one() << p) - 1u32))
}

/// Least vertex outside `U ∪ W` adjacent to all of `U` and none of `W`.
pub fn extension_witness(g: &Graph, u: VertexSet, w: VertexSet) -> Result<Option<usize>> {
    if !u.is_disjoint(w) {
        return Err(Error::NotDisjoint);
    }
    check_in_range(g, u.union(w))?;
    let both = u.union(w);
    Ok((0..g.n()).find(|&x| !both.contains(x) && g.neighbors(x).intersection(both) == u))
}

fn check_in_range(g: &Graph, s: VertexSet) -> Result<()> {
    match s.max() {
        Some(m) if m >= g.n() => Err(Error::VertexOutOfRange { vertex: m, n: g.n() }),
        _ => Ok(()),
    }
}

/// Transports an extension query on `g_v` (the local complement at `v`)
/// back to `g`: a witness in `g` for the returned `(U', W')` is a witness
/// in `g_v` for `(U, W)`.
///
/// If `v ∉ U` the answer is `(U, W ∪ {v})`. If `v ∈ U` it is
/// `U' = (U \ N(v)) ∪ (W ∩ N(v))` and `W' = (U ∩ N(v)) ∪ (W \ N(v))`.
pub fn locomp_witness_sets(g: &Graph, v: usize, u: VertexSet, w: VertexSet) -> Result<(VertexSet, VertexSet)> {
    if !u.is_disjoint(w) {
        return Err(Error::NotDisjoint);
    }
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    check_in_range(g, u.union(w))?;
    if !u.contains(v) {
        return Ok((u, w.union(VertexSet::singleton(v))));
    }
    let nv = g.neighbors(v);
    let u2 = u.difference(nv).union(w.intersection(nv));
    let w2 = u.intersection(nv).union(w.difference(nv));
    Ok((u2, w2))
}

/// The `v ∈ U` case exactly as printed in the source argument, where the
/// second set reads `(U ∩ N(v)) ∪ (U \ N(v))`. Kept to demonstrate that it
/// does not carry the guarantee.
pub fn locomp_witness_sets_as_printed(g: &Graph, v: usize, u: VertexSet, w: VertexSet) -> (VertexSet, VertexSet) {
    if !u.contains(v) {
        return (u, w.union(VertexSet::singleton(v)));
    }
    let nv = g.neighbors(v);
    let u2 = u.difference(nv).union(w.intersection(nv));
    let w2 = u.intersection(nv).union(u.difference(nv));
    (u2, w2)
}

/// Whether `x` witnesses the extension property for `(U, W)` in `g`.
pub fn is_witness(g: &Graph, x: usize, u: VertexSet, w: VertexSet) -> bool {
    let both = u.union(w);
    !both.contains(x) && g.neighbors(x).intersection(both) == u
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    /// Every disjoint `(U, W)` over the ground set with its least witness.
    pub entries: Vec<(VertexSet, VertexSet, Option<usize>)>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|(_, _, x)| x.is_some())
    }

    pub fn failures(&self) -> impl Iterator<Item = &(VertexSet, VertexSet, Option<usize>)> {
        self.entries.iter().filter(|(_, _, x)| x.is_none())
    }

    /// One line per pair, `U={..} W={..} -> x` or `-> none`, then `PASS` or
    /// `FAIL`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (u, w, x) in &self.entries {
            let x = x.map_or("none".to_string(), |x| x.to_string());
            let _ = writeln!(s, "U={{{u}}} W={{{w}}} -> {x}");
        }
        s.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
        s
    }
}

/// Checks the extension property for all disjoint `U, W` inside `ground`.
/// Pairs are listed by assigning each ground vertex, in increasing order, to
/// neither set, `U`, or `W` (base-3 counting, least vertex fastest).
pub fn check_extension(g: &Graph, ground: VertexSet) -> Result<ExtensionReport> {
    check_in_range(g, ground)?;
    let k = ground.len();
    if k > EXTENSION_GROUND_CAP {
        return Err(Error::TooLarge { what: "extension check ground set", n: k, cap: EXTENSION_GROUND_CAP });
    }
    let verts: Vec<usize> = ground.iter().collect();
    let mut entries = Vec::with_capacity(3usize.pow(k as u32));
    for code in 0..3usize.pow(k as u32) {
        let (mut u, mut w) = (VertexSet::EMPTY, VertexSet::EMPTY);
        let mut c = code;
        for &v in &verts {
            match c % 3 {
                1 => u.insert(v),
                2 => w.insert(v),
                _ => {}
            }
            c /= 3;
        }
        entries.push((u, w, extension_witness(g, u, w)?));
    }
    Ok(ExtensionReport { entries })
}

/// Checks the extension property of `g` and of its local complement at `v`
/// over the same ground set.
pub fn locomp_invariance_probe(g: &Graph, v: usize, ground: VertexSet) -> Result<(ExtensionReport, ExtensionReport)> {
    let before = check_extension(g, ground)?;
    let after = check_extension(&g.local_complement(v)?, ground)?;
    Ok((before, after))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> VertexSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn bit_graph_examples() {
        assert_eq!(bit_graph(3).unwrap().edges().collect::<Vec<_>>(), [(0, 1), (1, 2)]);
        assert_eq!(bit_graph(1).unwrap().edge_count(), 0);
        assert_eq!(bit_graph(4).unwrap().edges().collect::<Vec<_>>(), [(0, 1), (0, 3), (1, 2), (1, 3)]);
        assert!(bit_graph(65).is_err());
    }

    #[test]
    fn bit_witness_examples() {
        assert_eq!(bit_witness(&[0, 1], &[2]).unwrap(), BigUint::from(3u32));
        assert_eq!(bit_witness(&[], &[0]).unwrap(), BigUint::from(2u32));
        assert_eq!(bit_witness(&[2], &[]).unwrap(), BigUint::from(4u32));
        assert_eq!(bit_witness(&[], &[]).unwrap(), BigUint::zero());
        assert!(bit_witness(&[1], &[1]).is_err());
        assert_eq!(bit_witness(&[100], &[]).unwrap(), BigUint::one() << 100u32);
    }

    #[test]
    fn bit_witness_matches_linear_scan() {
        // oracle: walk upward from max+1 testing bits directly
        for code in 0..3u32.pow(7) {
            let (mut u, mut w) = (Vec::new(), Vec::new());
            let mut c = code;
            for i in 0..7u64 {
                match c % 3 {
                    1 => u.push(i),
                    2 => w.push(i),
                    _ => {}
                }
                c /= 3;
            }
            let start = u.iter().chain(&w).max().map_or(0, |m| m + 1);
            let expected = (start..)
                .find(|x| u.iter().all(|&i| x >> i & 1 == 1) && w.iter().all(|&i| x >> i & 1 == 0))
                .unwrap();
            assert_eq!(bit_witness(&u, &w).unwrap(), BigUint::from(expected), "{u:?} {w:?}");
        }
    }

    #[test]
    fn extension_witness_examples() {
        let g = bit_graph(16).unwrap();
        assert_eq!(extension_witness(&g, set(&[0]), set(&[1])).unwrap(), Some(5));
        assert_eq!(extension_witness(&g, VertexSet::EMPTY, VertexSet::EMPTY).unwrap(), Some(0));
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(extension_witness(&k2, set(&[0]), set(&[1])).unwrap(), None);
        assert!(extension_witness(&k2, set(&[0]), set(&[0])).is_err());
    }

    #[test]
    fn witness_set_examples() {
        // v = 0, a = 1, b = 2, N(v) = {1, 2}
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (2, 3)]).unwrap();
        assert_eq!(locomp_witness_sets(&g, 3, set(&[1]), set(&[2])).unwrap(), (set(&[1]), set(&[2, 3])));
        assert_eq!(locomp_witness_sets(&g, 0, set(&[0, 1]), set(&[2])).unwrap(), (set(&[0, 2]), set(&[1])));
        // U and W avoid N(v) entirely
        assert_eq!(locomp_witness_sets(&g, 0, set(&[0, 3]), VertexSet::EMPTY).unwrap(), (set(&[0, 3]), VertexSet::EMPTY));
        assert!(locomp_witness_sets(&g, 0, set(&[1]), set(&[1])).is_err());
    }

    #[test]
    fn check_extension_examples() {
        let r = check_extension(&bit_graph(16).unwrap(), set(&[0, 1, 2])).unwrap();
        assert_eq!(r.entries.len(), 27);
        assert!(r.passed());
        let r = check_extension(&bit_graph(4).unwrap(), set(&[0, 1, 2, 3])).unwrap();
        assert!(!r.passed());
        let r = check_extension(&bit_graph(4).unwrap(), VertexSet::EMPTY).unwrap();
        assert!(r.passed());
        assert_eq!(r.to_text(), "U={} W={} -> 0\nPASS\n");
    }

    #[test]
    fn bit_extension_for_small_grounds() {
        for m in 1..=4 {
            let g = bit_graph(1 << (m + 1)).unwrap();
            assert!(check_extension(&g, VertexSet::full(m)).unwrap().passed(), "m = {m}");
        }
    }
}
