//! Named graph families used throughout the crate and its tests.

use super::Graph;

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("family edges are valid")
}

/// `P_n`, vertices `0 - 1 - ... - n-1`.
pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

/// `C_n` for `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{1,leaves}` with centre `0`.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// Centre `0` with one path per entry of `legs`, each of the given length.
pub fn spider(legs: &[usize]) -> Graph {
    let n = 1 + legs.iter().sum::<usize>();
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    build(n, edges)
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    build(10, outer.chain(spokes).chain(inner))
}

/// `K_{2,2,2}`: six vertices, antipodal pairs `{0,1}`, `{2,3}`, `{4,5}` non-adjacent.
pub fn octahedron() -> Graph {
    let mut edges = Vec::new();
    for u in 0..6 {
        for v in u + 1..6 {
            if u / 2 != v / 2 {
                edges.push((u, v));
            }
        }
    }
    build(6, edges)
}

/// Disjoint union, `h` shifted past the vertices of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let off = g.order();
    let edges = g
        .edges()
        .map(|e| (e.u, e.v))
        .chain(h.edges().map(|e| (e.u + off, e.v + off)));
    build(off + h.order(), edges)
}
