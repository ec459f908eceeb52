//! Canonical labeling by individualization-refinement.
//!
//! The search tree is the usual one: refine the root partition to an
//! equitable one, then repeatedly individualize a vertex of the first
//! smallest non-singleton cell and refine again until the partition is
//! discrete. Each node carries a refinement trace; leaves are ordered by
//! (trace sequence, relabelled adjacency matrix) and the canonical labeling
//! is the greatest leaf.
//!
//! Pruning:
//! * a node whose trace is smaller than the best leaf's trace at the same
//!   depth, and differs from the first leaf's, cannot lead to the best leaf;
//! * children of a node that lie in one orbit of the automorphisms found so
//!   far that fix the node's individualized vertices are explored once;
//! * a leaf equivalent to the first or best leaf yields an automorphism, and
//!   the search jumps back to the common ancestor of the two leaves.
//!
//! The automorphism group order is the product, along the first path, of the
//! orbit sizes of the first child in each node.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{graph6, Graph};

/// Default largest order accepted by [`canonical_form`].
pub const DEFAULT_ORDER_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalForm {
    /// graph6 encoding of the canonical graph.
    pub graph6: String,
    /// `perm[v]` is the canonical label of input vertex `v`.
    pub perm: Vec<usize>,
    /// Order of the automorphism group found during the search. Exact for
    /// the orders this crate meets; `f64` only so large groups do not overflow.
    pub automorphism_group_order: f64,
}

/// Result of a (possibly vertex-coloured) canonical labeling.
#[derive(Debug, Clone)]
pub struct Labeling {
    /// `perm[v]` is the canonical position of vertex `v`.
    pub perm: Vec<usize>,
    /// Automorphism generators found during the search, as vertex maps.
    pub generators: Vec<Vec<usize>>,
    pub group_order: f64,
    /// Partition of the refined root node: `root_cell[v]` is the start of
    /// the cell containing `v`. Automorphic vertices share a root cell.
    pub root_cell: Vec<usize>,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with_cap(g, DEFAULT_ORDER_CAP)
}

pub fn canonical_form_with_cap(g: &Graph, cap: usize) -> Result<CanonicalForm> {
    check_cap(g, cap)?;
    let lab = canonical_labeling(g, None);
    let canon = g.relabel(&lab.perm).expect("labeling is a permutation");
    Ok(CanonicalForm {
        graph6: graph6::encode(&canon),
        perm: lab.perm,
        automorphism_group_order: lab.group_order,
    })
}

/// The canonically relabelled graph itself.
pub fn canonical_graph(g: &Graph) -> Graph {
    let lab = canonical_labeling(g, None);
    g.relabel(&lab.perm).expect("labeling is a permutation")
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.order() > cap {
        return Err(Error::SizeLimitExceeded {
            what: "canonical labeling order",
            size: g.order(),
            limit: cap,
        });
    }
    Ok(())
}

/// Isomorphism test: cheap invariants first, then canonical forms.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    check_cap(a, DEFAULT_ORDER_CAP)?;
    check_cap(b, DEFAULT_ORDER_CAP)?;
    if a.order() != b.order() || a.size() != b.size() {
        return Ok(false);
    }
    if a.degree_sequence() != b.degree_sequence() {
        return Ok(false);
    }
    let mut ta = a.triangle_counts();
    let mut tb = b.triangle_counts();
    ta.sort_unstable();
    tb.sort_unstable();
    if ta != tb {
        return Ok(false);
    }
    Ok(canonical_graph(a) == canonical_graph(b))
}

/// Canonical labeling of `g`, optionally with a vertex colouring that
/// isomorphisms must preserve. Colour classes are placed in increasing
/// colour order.
pub fn canonical_labeling(g: &Graph, colors: Option<&[u32]>) -> Labeling {
    let n = g.order();
    let mut search = Search::new(g);
    let mut root = Partition::from_colors(n, colors);
    let mut trace = Vec::new();
    let starts: Vec<usize> = root.cell_starts().collect();
    refine(g, &mut root, &starts, &mut trace, &mut search.scratch);
    let root_cell = root.cell_of.iter().map(|&c| c as usize).collect();
    search.traces.push(trace);
    search.path_vs_best.push(Ordering::Equal);
    search.node(root, 0, true, true);
    let best = search.best.expect("the search reaches at least one leaf");
    let mut perm = vec![0; n];
    for (i, &v) in best.lab.iter().enumerate() {
        perm[v as usize] = i;
    }
    Labeling {
        perm,
        generators: search
            .generators
            .into_iter()
            .map(|g| g.into_iter().map(|x| x as usize).collect())
            .collect(),
        group_order: search.group_order,
        root_cell,
    }
}

#[derive(Clone)]
struct Partition {
    /// Vertices in cell order.
    lab: Vec<u32>,
    /// Vertex to the start position of its cell.
    cell_of: Vec<u32>,
    /// Cell length, valid at cell start positions.
    len: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn from_colors(n: usize, colors: Option<&[u32]>) -> Self {
        let mut lab: Vec<u32> = (0..n as u32).collect();
        let color = |v: u32| colors.map_or(0, |c| c[v as usize]);
        lab.sort_by_key(|&v| (color(v), v));
        let mut p = Partition {
            lab,
            cell_of: vec![0; n],
            len: vec![0; n],
            cells: 0,
        };
        let mut i = 0;
        while i < n {
            let c = color(p.lab[i]);
            let mut j = i + 1;
            while j < n && color(p.lab[j]) == c {
                j += 1;
            }
            p.len[i] = (j - i) as u32;
            for t in i..j {
                p.cell_of[p.lab[t] as usize] = i as u32;
            }
            p.cells += 1;
            i = j;
        }
        p
    }

    fn cell_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.lab.len();
        let mut s = 0;
        std::iter::from_fn(move || {
            if s >= n {
                return None;
            }
            let cur = s;
            s += self.len[s] as usize;
            Some(cur)
        })
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for s in self.cell_starts() {
            let l = self.len[s];
            if l > 1 && best.is_none_or(|(bl, _)| l < bl) {
                best = Some((l, s));
            }
        }
        best.map(|(_, s)| s)
    }

    /// Splits `v` off the front of its cell; returns its new position.
    fn individualize(&mut self, v: u32) -> usize {
        let s = self.cell_of[v as usize] as usize;
        let l = self.len[s] as usize;
        let at = (s..s + l).find(|&i| self.lab[i] == v).expect("v lies in its cell");
        self.lab.swap(s, at);
        self.len[s] = 1;
        self.len[s + 1] = (l - 1) as u32;
        for t in s + 1..s + l {
            self.cell_of[self.lab[t] as usize] = (s + 1) as u32;
        }
        self.cells += 1;
        s
    }
}

struct Scratch {
    count: Vec<u32>,
    touched: Vec<u32>,
    in_queue: Vec<bool>,
    queue: VecDeque<usize>,
}

/// Refines `p` to the coarsest equitable partition finer than it, using the
/// cells starting at `initial` as the first splitters. Appends an
/// isomorphism-invariant description of every split to `trace`.
fn refine(g: &Graph, p: &mut Partition, initial: &[usize], trace: &mut Vec<u32>, sc: &mut Scratch) {
    for &s in initial {
        if !sc.in_queue[s] {
            sc.in_queue[s] = true;
            sc.queue.push_back(s);
        }
    }
    while let Some(ws) = sc.queue.pop_front() {
        sc.in_queue[ws] = false;
        if p.is_discrete() {
            continue;
        }
        let wl = p.len[ws] as usize;
        sc.touched.clear();
        for i in ws..ws + wl {
            for &x in g.neighbors(p.lab[i] as usize) {
                if sc.count[x] == 0 {
                    sc.touched.push(x as u32);
                }
                sc.count[x] += 1;
            }
        }
        let mut hit: Vec<usize> = sc
            .touched
            .iter()
            .map(|&x| p.cell_of[x as usize] as usize)
            .filter(|&c| p.len[c] > 1)
            .collect();
        hit.sort_unstable();
        hit.dedup();
        trace.push(ws as u32);
        for cs in hit {
            let cl = p.len[cs] as usize;
            let count = &sc.count;
            let cell = &mut p.lab[cs..cs + cl];
            let c0 = count[cell[0] as usize];
            if cell.iter().all(|&x| count[x as usize] == c0) {
                continue;
            }
            cell.sort_unstable_by_key(|&x| count[x as usize]);
            trace.push(cs as u32);
            let mut i = cs;
            while i < cs + cl {
                let c = count[p.lab[i] as usize];
                let mut j = i + 1;
                while j < cs + cl && count[p.lab[j] as usize] == c {
                    j += 1;
                }
                p.len[i] = (j - i) as u32;
                for t in i..j {
                    p.cell_of[p.lab[t] as usize] = i as u32;
                }
                trace.push(c);
                trace.push((j - i) as u32);
                if !sc.in_queue[i] {
                    sc.in_queue[i] = true;
                    sc.queue.push_back(i);
                }
                if i != cs {
                    p.cells += 1;
                }
                i = j;
            }
        }
        for &x in &sc.touched {
            sc.count[x as usize] = 0;
        }
    }
    trace.push(p.cells as u32);
}

struct Leaf {
    lab: Vec<u32>,
    path: Vec<u32>,
    traces: Vec<Vec<u32>>,
    rows: Vec<u64>,
}

struct Search<'a> {
    g: &'a Graph,
    words: usize,
    scratch: Scratch,
    /// Traces of the nodes on the current path, root first.
    traces: Vec<Vec<u32>>,
    /// Comparison of each node on the current path with the best leaf's
    /// trace prefix.
    path_vs_best: Vec<Ordering>,
    path: Vec<u32>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<u32>>,
    group_order: f64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.order();
        Search {
            g,
            words: n.div_ceil(64).max(1),
            scratch: Scratch {
                count: vec![0; n],
                touched: Vec::new(),
                in_queue: vec![false; n.max(1)],
                queue: VecDeque::new(),
            },
            traces: Vec::new(),
            path_vs_best: Vec::new(),
            path: Vec::new(),
            first: None,
            best: None,
            generators: Vec::new(),
            group_order: 1.0,
        }
    }

    /// Explores the node at `depth`; returns `Some(d)` to unwind to the
    /// ancestor at depth `d`.
    fn node(&mut self, part: Partition, depth: usize, eq_first: bool, on_first: bool) -> Option<usize> {
        let Some(target) = part.target_cell() else {
            return self.leaf(&part, eq_first);
        };
        let len = part.len[target] as usize;
        let mut children: Vec<u32> = part.lab[target..target + len].to_vec();
        children.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        for &w in &children {
            if !explored.is_empty() && self.same_orbit_as_explored(w, &explored) {
                continue;
            }
            explored.push(w);
            let mut child = part.clone();
            let mut trace = Vec::new();
            let s = child.individualize(w);
            trace.push(s as u32);
            refine(self.g, &mut child, &[s], &mut trace, &mut self.scratch);

            let child_eq_first = match &self.first {
                None => true,
                Some(f) => eq_first && f.traces.get(depth + 1) == Some(&trace),
            };
            let child_vs_best = match (self.path_vs_best[depth], &self.best) {
                (Ordering::Equal, Some(b)) => match b.traces.get(depth + 1) {
                    Some(bt) => trace.cmp(bt),
                    None => Ordering::Greater,
                },
                (Ordering::Equal, None) => Ordering::Equal,
                (other, _) => other,
            };
            if child_vs_best == Ordering::Less && !child_eq_first {
                continue;
            }
            self.traces.push(trace);
            self.path_vs_best.push(child_vs_best);
            self.path.push(w);
            let child_on_first = on_first && explored.len() == 1;
            let jump = self.node(child, depth + 1, child_eq_first, child_on_first);
            self.path.pop();
            self.path_vs_best.pop();
            self.traces.pop();
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        if on_first {
            let first_child = explored[0];
            let size = self.orbit_size(first_child);
            self.group_order *= size as f64;
        }
        None
    }

    fn leaf(&mut self, part: &Partition, eq_first: bool) -> Option<usize> {
        let rows = self.leaf_rows(&part.lab);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                lab: part.lab.clone(),
                path: self.path.clone(),
                traces: self.traces.clone(),
                rows,
            };
            self.best = Some(Leaf {
                lab: leaf.lab.clone(),
                path: leaf.path.clone(),
                traces: leaf.traces.clone(),
                rows: leaf.rows.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if eq_first && rows == first.rows {
            let gen = map_between(&first.lab, &part.lab);
            let back = common_prefix(&first.path, &self.path);
            self.add_generator(gen);
            return Some(back);
        }
        let vs_best = *self.path_vs_best.last().expect("root is on the stack");
        let best = self.best.as_ref().expect("best exists once first does");
        let order = match vs_best {
            Ordering::Equal => rows.cmp(&best.rows),
            other => other,
        };
        match order {
            Ordering::Greater => {
                self.best = Some(Leaf {
                    lab: part.lab.clone(),
                    path: self.path.clone(),
                    traces: self.traces.clone(),
                    rows,
                });
                self.path_vs_best.iter_mut().for_each(|o| *o = Ordering::Equal);
                None
            }
            Ordering::Equal => {
                let gen = map_between(&best.lab, &part.lab);
                let back = common_prefix(&best.path, &self.path);
                self.add_generator(gen);
                Some(back)
            }
            Ordering::Less => None,
        }
    }

    fn add_generator(&mut self, gen: Vec<u32>) {
        if gen.iter().enumerate().any(|(i, &x)| i as u32 != x) {
            self.generators.push(gen);
        }
    }

    /// Adjacency matrix relabelled by `lab`, row-major bit rows.
    fn leaf_rows(&self, lab: &[u32]) -> Vec<u64> {
        let n = lab.len();
        let mut pos = vec![0usize; n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v as usize] = i;
        }
        let mut rows = vec![0u64; n * self.words];
        for (i, &v) in lab.iter().enumerate() {
            let row = &mut rows[i * self.words..(i + 1) * self.words];
            for &w in self.g.neighbors(v as usize) {
                let j = pos[w];
                // reversed bit order so that numeric word order matches
                // lexicographic column order
                row[j / 64] |= 1u64 << (63 - j % 64);
            }
        }
        rows
    }

    /// Union-find roots of the orbits of the generators that fix the
    /// current path pointwise.
    fn stabilizer_orbits(&self) -> Vec<u32> {
        let n = self.g.order();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        for gen in &self.generators {
            if self.path.iter().any(|&v| gen[v as usize] != v) {
                continue;
            }
            for (x, &y) in gen.iter().enumerate() {
                let (a, b) = (find(&mut parent, x as u32), find(&mut parent, y));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        for x in 0..n as u32 {
            let r = find(&mut parent, x);
            parent[x as usize] = r;
        }
        parent
    }

    fn same_orbit_as_explored(&self, w: u32, explored: &[u32]) -> bool {
        if self.generators.is_empty() {
            return false;
        }
        let roots = self.stabilizer_orbits();
        explored.iter().any(|&e| roots[e as usize] == roots[w as usize])
    }

    fn orbit_size(&self, v: u32) -> usize {
        let roots = self.stabilizer_orbits();
        roots.iter().filter(|&&r| r == roots[v as usize]).count()
    }
}

/// The vertex map sending `from[i]` to `to[i]`.
fn map_between(from: &[u32], to: &[u32]) -> Vec<u32> {
    let mut gen = vec![0u32; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gen[a as usize] = b;
    }
    gen
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}
