//! Cyclic double occurrence words.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

/// A cyclic word in which every letter occurs exactly twice. Equality and
/// hashing are up to rotation and reflection.
#[derive(Clone)]
pub struct DoWord {
    letters: Vec<String>,
}

impl DoWord {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Result<Self> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for l in &letters {
            *counts.entry(l.as_str()).or_default() += 1;
        }
        if let Some((l, c)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::InvalidWord(format!("letter `{l}` occurs {c} times")));
        }
        if counts.len() > MAX_VERTICES {
            return Err(Error::TooLarge { what: "word", n: counts.len(), cap: MAX_VERTICES });
        }
        Ok(DoWord { letters })
    }

    /// Whitespace-separated letters on one line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let body: Vec<&str> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .collect();
        match body.len() {
            0 => DoWord::new(Vec::<String>::new()),
            1 => DoWord::new(body[0].split_whitespace()),
            _ => Err(Error::InvalidWord("a word must be on a single line".into())),
        }
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Distinct letters in order of first occurrence.
    pub fn alphabet(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for l in &self.letters {
            if !out.contains(&l.as_str()) {
                out.push(l);
            }
        }
        out
    }

    /// Lexicographically least rotation or reflection.
    pub fn canonical(&self) -> DoWord {
        let n = self.letters.len();
        let mut best: Option<Vec<&String>> = None;
        let rev: Vec<&String> = self.letters.iter().rev().collect();
        let fwd: Vec<&String> = self.letters.iter().collect();
        for seq in [&fwd, &rev] {
            for r in 0..n.max(1) {
                let cand: Vec<&String> = (0..n).map(|i| seq[(i + r) % n]).collect();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        DoWord { letters: best.unwrap_or_default().into_iter().cloned().collect() }
    }

    /// Letters joined by single spaces.
    pub fn to_text(&self) -> String {
        self.letters.join(" ")
    }

    /// Vertices are the letters in order of first occurrence; two letters
    /// are adjacent iff their occurrences alternate.
    pub fn interlacement_graph(&self) -> Graph {
        let alphabet = self.alphabet();
        let index: HashMap<&str, usize> =
            alphabet.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut g = Graph::empty(alphabet.len()).expect("checked in constructor");
        // `opened`: seen at least once; `closed`: seen twice.
        let mut open: u64 = 0;
        let mut opened_at: Vec<u64> = vec![0; alphabet.len()];
        let mut closed: u64 = 0;
        let mut closed_at: Vec<u64> = vec![0; alphabet.len()];
        for l in &self.letters {
            let x = index[l.as_str()];
            if open >> x & 1 == 0 {
                open |= 1 << x;
                opened_at[x] = open;
                closed_at[x] = closed;
            } else {
                let inside = (open & !opened_at[x]) ^ (closed & !closed_at[x]);
                for y in crate::graph::VertexSet(inside).iter() {
                    g.add_edge(x, y).expect("distinct letters");
                }
                closed |= 1 << x;
            }
        }
        g.with_names(alphabet.into_iter().map(String::from).collect())
    }
}

impl PartialEq for DoWord {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical().letters == other.canonical().letters
    }
}

impl Eq for DoWord {}

impl Hash for DoWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().letters.hash(state);
    }
}

impl fmt::Display for DoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for DoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoWord({})", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> DoWord {
        DoWord::parse(s).unwrap()
    }

    #[test]
    fn validation() {
        assert!(DoWord::parse("a b a").is_err());
        assert!(DoWord::parse("a a a a").is_err());
        assert!(DoWord::parse("a b\na b").is_err());
        assert!(w("").is_empty());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(w("b a a b").canonical().to_text(), "a a b b");
        assert_eq!(w("d c b a d c b a").canonical().to_text(), "a b c d a b c d");
        assert_eq!(w("a b a b"), w("b a b a"));
        assert_ne!(w("a a b b"), w("a b a b"));
        assert_eq!(w("a b c a c b"), w("c a c b a b"));
        assert_eq!(w("a b c a c b"), w("b c a c b a").canonical());
    }

    #[test]
    fn interlacement() {
        let g = w("a b a b").interlacement_graph();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(w("a a b b").interlacement_graph().edge_count(), 0);
        let k3 = w("a b c a b c").interlacement_graph();
        assert_eq!(k3.edge_count(), 3);
        // c crosses a and is nested inside b
        let g = w("a b c a c b").interlacement_graph();
        assert_eq!(g.names().unwrap(), ["a", "b", "c"]);
        assert!(g.has_edge(0, 1) && g.has_edge(0, 2) && !g.has_edge(1, 2));
    }

    #[test]
    fn interlacement_matches_pairwise_rule() {
        // Pairwise oracle: x, y interlace iff exactly one occurrence of y lies
        // strictly between the two occurrences of x.
        let word = w("a b c d a e c b e d f f");
        let g = word.interlacement_graph();
        let pos = |x: &str| -> Vec<usize> {
            word.letters().iter().enumerate().filter(|(_, l)| *l == x).map(|(i, _)| i).collect()
        };
        for x in word.alphabet() {
            for y in word.alphabet() {
                if x == y {
                    continue;
                }
                let (px, py) = (pos(x), pos(y));
                let inside = py.iter().filter(|&&p| p > px[0] && p < px[1]).count();
                let (i, j) = (g.index_of(x).unwrap(), g.index_of(y).unwrap());
                assert_eq!(g.has_edge(i, j), inside == 1, "{x} {y}");
            }
        }
    }
}
