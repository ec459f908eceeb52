//! Structural queries: circumference and small fixed subgraph patterns.

use std::fmt;
use std::str::FromStr;

use super::{BitIter, Graph};
use crate::error::{Error, Result};

/// Largest order accepted by [`circumference`].
pub const CIRCUMFERENCE_LIMIT: usize = 16;

/// Length of a longest cycle, `0` for forests.
///
/// Exact dynamic program over vertex subsets: `ends[S]` holds the vertices
/// `v` such that some path starting at `min(S)` visits exactly `S` and stops
/// at `v`. A cycle of length `|S|` closes when such a `v` is adjacent to
/// `min(S)`.
pub fn circumference(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n > CIRCUMFERENCE_LIMIT {
        return Err(Error::SizeLimitExceeded {
            what: "circumference order",
            size: n,
            limit: CIRCUMFERENCE_LIMIT,
        });
    }
    let masks = g.masks().expect("order <= 16 carries masks");
    let mut ends = vec![0u32; 1 << n];
    let mut best = 0;
    for s in 0..n {
        ends[1 << s] = 1 << s;
    }
    for set in 1usize..(1 << n) {
        let reach = ends[set];
        if reach == 0 {
            continue;
        }
        let start = set.trailing_zeros() as usize;
        let size = set.count_ones() as usize;
        if size >= 3 && size > best && reach as u64 & masks[start] != 0 {
            best = size;
        }
        let above = !((1u64 << (start + 1)) - 1);
        for v in BitIter(reach as u64) {
            for w in BitIter(masks[v] & above & !(set as u64)) {
                ends[set | 1 << w] |= 1 << w;
            }
        }
    }
    Ok(best)
}

/// Small patterns used by the planarity classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// Path on three vertices.
    P3,
    /// The claw `K_{1,3}`.
    Claw,
    /// Path on seven vertices.
    P7,
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace(['_', ',', ' '], "").as_str() {
            "P3" => Ok(Pattern::P3),
            "K13" | "CLAW" => Ok(Pattern::Claw),
            "P7" => Ok(Pattern::P7),
            _ => Err(Error::UnsupportedPattern(s.to_string())),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::P3 => "P_3",
            Pattern::Claw => "K_{1,3}",
            Pattern::P7 => "P_7",
        })
    }
}

impl Pattern {
    pub fn order(self) -> usize {
        match self {
            Pattern::P3 => 3,
            Pattern::Claw => 4,
            Pattern::P7 => 7,
        }
    }
}

/// Calls `visit` with the vertex list of every copy of `pattern` avoiding
/// `blocked`; stops early when `visit` returns `true`. Returns whether it
/// stopped early.
fn for_each_copy(
    g: &Graph,
    pattern: Pattern,
    blocked: &[bool],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let n = g.order();
    let free = |v: usize| !blocked[v];
    match pattern {
        Pattern::P3 => {
            for b in (0..n).filter(|&b| free(b)) {
                let nb: Vec<usize> = g.neighbors(b).iter().copied().filter(|&w| free(w)).collect();
                for i in 0..nb.len() {
                    for j in i + 1..nb.len() {
                        if visit(&[nb[i], b, nb[j]]) {
                            return true;
                        }
                    }
                }
            }
            false
        }
        Pattern::Claw => {
            for c in (0..n).filter(|&c| free(c)) {
                let nb: Vec<usize> = g.neighbors(c).iter().copied().filter(|&w| free(w)).collect();
                for i in 0..nb.len() {
                    for j in i + 1..nb.len() {
                        for l in j + 1..nb.len() {
                            if visit(&[c, nb[i], nb[j], nb[l]]) {
                                return true;
                            }
                        }
                    }
                }
            }
            false
        }
        Pattern::P7 => {
            let mut on_path = blocked.to_vec();
            let mut path = Vec::with_capacity(7);
            for s in (0..n).filter(|&s| free(s)) {
                on_path[s] = true;
                path.push(s);
                if extend_path(g, &mut path, &mut on_path, 7, visit) {
                    return true;
                }
                path.pop();
                on_path[s] = false;
            }
            false
        }
    }
}

fn extend_path(
    g: &Graph,
    path: &mut Vec<usize>,
    used: &mut [bool],
    target: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if path.len() == target {
        // each undirected path is reached from both ends
        return path[0] < path[target - 1] && visit(path);
    }
    let last = *path.last().expect("non-empty path");
    for &w in g.neighbors(last) {
        if used[w] {
            continue;
        }
        used[w] = true;
        path.push(w);
        let stop = extend_path(g, path, used, target, visit);
        path.pop();
        used[w] = false;
        if stop {
            return true;
        }
    }
    false
}

/// Whether `g` contains `pattern` as a (not necessarily induced) subgraph.
pub fn has_subgraph(g: &Graph, pattern: Pattern) -> bool {
    let blocked = vec![false; g.order()];
    for_each_copy(g, pattern, &blocked, &mut |_| true)
}

/// Vertex lists of every copy of `pattern` in `g`.
pub fn copies(g: &Graph, pattern: Pattern) -> Vec<Vec<usize>> {
    let blocked = vec![false; g.order()];
    let mut out = Vec::new();
    for_each_copy(g, pattern, &blocked, &mut |c| {
        out.push(c.to_vec());
        false
    });
    out
}

/// Whether `g` contains vertex-disjoint copies of `a` and `b`.
pub fn contains_disjoint(g: &Graph, a: Pattern, b: Pattern) -> bool {
    let none = vec![false; g.order()];
    let mut blocked = vec![false; g.order()];
    for_each_copy(g, a, &none, &mut |copy| {
        copy.iter().for_each(|&v| blocked[v] = true);
        let found = for_each_copy(g, b, &blocked, &mut |_| true);
        copy.iter().for_each(|&v| blocked[v] = false);
        found
    })
}

#[cfg(test)]
mod tests {
    use super::super::families::*;
    use super::*;

    /// Longest cycle by trying every sequence of distinct vertices.
    fn brute_circumference(g: &Graph) -> usize {
        fn go(g: &Graph, seq: &mut Vec<usize>, used: &mut Vec<bool>, best: &mut usize) {
            let len = seq.len();
            if len >= 3 && g.has_edge(seq[0], seq[len - 1]) {
                *best = (*best).max(len);
            }
            for w in 0..g.order() {
                if !used[w] && (len == 0 || g.has_edge(seq[len - 1], w)) {
                    used[w] = true;
                    seq.push(w);
                    go(g, seq, used, best);
                    seq.pop();
                    used[w] = false;
                }
            }
        }
        let mut best = 0;
        go(g, &mut Vec::new(), &mut vec![false; g.order()], &mut best);
        best
    }

    #[test]
    fn circumference_examples() {
        assert_eq!(circumference(&path(9)).unwrap(), 0);
        assert_eq!(circumference(&spider(&[2, 3, 1])).unwrap(), 0);
        assert_eq!(circumference(&cycle(5)).unwrap(), 5);
        assert_eq!(circumference(&complete(4)).unwrap(), 4);
        assert_eq!(brute_circumference(&complete(4)), 4);
        assert_eq!(circumference(&petersen()).unwrap(), 9);
        assert_eq!(circumference(&complete(16)).unwrap(), 16);
        assert!(matches!(
            circumference(&path(17)),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn circumference_matches_brute_force_and_union_find() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(0..=8);
            let p: f64 = rng.gen_range(0.1..0.7);
            let g = crate::random::gnp(n, p, &mut rng);
            let c = circumference(&g).unwrap();
            assert_eq!(c, brute_circumference(&g), "{g:?}");
            assert_eq!(c == 0, g.is_acyclic());
        }
    }

    #[test]
    fn pattern_parsing() {
        assert_eq!("P3".parse::<Pattern>().unwrap(), Pattern::P3);
        assert_eq!("K_{1,3}".replace(['{', '}'], "").parse::<Pattern>().unwrap(), Pattern::Claw);
        assert!(matches!("K5".parse::<Pattern>(), Err(Error::UnsupportedPattern(_))));
    }

    #[test]
    fn subgraph_examples() {
        assert!(has_subgraph(&path(7), Pattern::P7));
        assert!(!has_subgraph(&path(6), Pattern::P7));
        assert!(has_subgraph(&cycle(7), Pattern::P7));
        assert!(!has_subgraph(&path(9), Pattern::Claw));
        assert!(has_subgraph(&star(3), Pattern::Claw));
        assert_eq!(copies(&path(4), Pattern::P3).len(), 2);
        assert_eq!(copies(&path(8), Pattern::P7).len(), 2);
    }

    /// Disjoint copies by checking every pair of disjoint vertex subsets
    /// for a spanning copy of each pattern.
    fn brute_disjoint(g: &Graph, a: Pattern, b: Pattern) -> bool {
        let n = g.order();
        let spans = |set: usize, p: Pattern| -> bool {
            let vs: Vec<usize> = BitIter(set as u64).collect();
            let h = g.induced_subgraph(&vs).unwrap();
            has_subgraph(&h, p)
        };
        (0usize..1 << n).any(|s| {
            s.count_ones() as usize == a.order()
                && spans(s, a)
                && (0usize..1 << n).any(|t| {
                    t & s == 0 && t.count_ones() as usize == b.order() && spans(t, b)
                })
        })
    }

    #[test]
    fn disjoint_examples() {
        let triangles = disjoint_union(&complete(3), &complete(3));
        assert!(!contains_disjoint(&triangles, Pattern::P3, Pattern::Claw));
        assert!(!brute_disjoint(&triangles, Pattern::P3, Pattern::Claw));
        let sp = spider(&[1, 1, 4]);
        assert!(contains_disjoint(&sp, Pattern::P3, Pattern::Claw));
        assert!(brute_disjoint(&sp, Pattern::P3, Pattern::Claw));
    }

    #[test]
    fn disjoint_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let n = rng.gen_range(4..=8);
            let g = crate::random::gnp(n, rng.gen_range(0.15..0.5), &mut rng);
            assert_eq!(
                contains_disjoint(&g, Pattern::P3, Pattern::Claw),
                brute_disjoint(&g, Pattern::P3, Pattern::Claw),
                "{g:?}"
            );
        }
    }
}
