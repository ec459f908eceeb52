//! Left-right planarity test.
//!
//! Two depth-first passes. The first orients every edge away from the DFS
//! root and computes, per edge, the lowest (`lowpt`) and second lowest
//! (`lowpt2`) heights reachable through return edges, which give the nesting
//! depth used to order outgoing edges. The second pass processes edges in
//! that order and maintains a stack of conflict pairs of return-edge
//! intervals; the graph is planar iff every interval can be assigned a side
//! without two same-side intervals conflicting.
//!
//! Both passes use an explicit stack, so deep DFS trees cannot overflow.

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct State<'a> {
    g: &'a Graph,
    /// Oriented edges: `src[e] -> dst[e]`.
    src: Vec<usize>,
    dst: Vec<usize>,
    /// Undirected neighbour slot to edge id, filled as edges get oriented.
    out: Vec<Vec<usize>>,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    lowpt_edge: Vec<usize>,
    reference: Vec<Option<usize>>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
}

/// Runs the left-right test on `g` (any number of components).
pub fn is_planar_lr(g: &Graph) -> bool {
    let n = g.order();
    if n > 2 && g.size() > 3 * n - 6 {
        return false;
    }
    let m = g.size();
    let mut st = State {
        g,
        src: Vec::with_capacity(m),
        dst: Vec::with_capacity(m),
        out: vec![Vec::new(); n],
        height: vec![None; n],
        parent_edge: vec![None; n],
        lowpt: Vec::with_capacity(m),
        lowpt2: Vec::with_capacity(m),
        nesting_depth: Vec::with_capacity(m),
        lowpt_edge: Vec::new(),
        reference: Vec::new(),
        stack_bottom: Vec::new(),
        stack: Vec::new(),
    };
    let mut roots = Vec::new();
    for v in 0..n {
        if st.height[v].is_none() {
            st.height[v] = Some(0);
            roots.push(v);
            st.orient(v);
        }
    }
    let edges = st.src.len();
    st.lowpt_edge = (0..edges).collect();
    st.reference = vec![None; edges];
    st.stack_bottom = vec![0; edges];
    for v in 0..n {
        let mut list = std::mem::take(&mut st.out[v]);
        list.sort_by_key(|&e| st.nesting_depth[e]);
        st.out[v] = list;
    }
    roots.into_iter().all(|r| st.test(r))
}

impl State<'_> {
    fn orient(&mut self, root: usize) {
        let n = self.g.order();
        let mut oriented = std::collections::HashSet::new();
        let mut ind = vec![0usize; n];
        // edge id of the tree edge each vertex is waiting on, if any
        let mut pending: Vec<Option<usize>> = vec![None; n];
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            let hv = self.height[v].expect("visited");
            while ind[v] < self.g.degree(v) {
                let w = self.g.neighbors(v)[ind[v]];
                let vw = match pending[v].take() {
                    Some(id) => id,
                    None => {
                        if oriented.contains(&(v.min(w), v.max(w))) {
                            ind[v] += 1;
                            continue;
                        }
                        oriented.insert((v.min(w), v.max(w)));
                        let id = self.src.len();
                        self.src.push(v);
                        self.dst.push(w);
                        self.out[v].push(id);
                        self.lowpt.push(hv);
                        self.lowpt2.push(hv);
                        self.nesting_depth.push(0);
                        match self.height[w] {
                            None => {
                                self.parent_edge[w] = Some(id);
                                self.height[w] = Some(hv + 1);
                                pending[v] = Some(id);
                                dfs.push(v);
                                dfs.push(w);
                                break;
                            }
                            Some(hw) => self.lowpt[id] = hw,
                        }
                        id
                    }
                };
                self.nesting_depth[vw] = 2 * self.lowpt[vw];
                if self.lowpt2[vw] < hv {
                    // chordal
                    self.nesting_depth[vw] += 1;
                }
                if let Some(e) = e {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) => !i.is_empty() && self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.expect("non-empty pair")];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.expect("non-empty pair")];
        }
        self.lowpt[p.left.low.expect("non-empty")].min(self.lowpt[p.right.low.expect("non-empty")])
    }

    fn test(&mut self, root: usize) -> bool {
        let n = self.g.order();
        let mut ind = vec![0usize; n];
        let mut resumed: Vec<bool> = vec![false; n];
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            let hv = self.height[v].expect("visited");
            let mut descended = false;
            while ind[v] < self.out[v].len() {
                let ei = self.out[v][ind[v]];
                if !std::mem::take(&mut resumed[v]) {
                    self.stack_bottom[ei] = self.stack.len();
                    let w = self.dst[ei];
                    if self.parent_edge[w] == Some(ei) {
                        resumed[v] = true;
                        dfs.push(v);
                        dfs.push(w);
                        descended = true;
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    self.stack.push(ConflictPair {
                        left: Interval::default(),
                        right: Interval {
                            low: Some(ei),
                            high: Some(ei),
                        },
                    });
                }
                if self.lowpt[ei] < hv {
                    let e = e.expect("only root edges lack a parent, and they cannot return below the root");
                    if ei == self.out[v][0] {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !descended {
                if let Some(e) = e {
                    self.remove_back_edges(e);
                }
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("a return edge of ei is on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("non-empty right interval");
            if self.lowpt[q_low] > self.lowpt[e] {
                match p.right.low {
                    None => p.right = q.right,
                    Some(pl) => self.reference[pl] = q.right.high,
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = Some(self.lowpt_edge[e]);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("checked non-empty");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.reference[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            match p.left.low {
                None => p.left = q.left,
                Some(pl) => self.reference[pl] = q.left.high,
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        let hu = self.height[u].expect("visited");
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low.take() {
                    self.reference[l] = p.right.low;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(l) = p.right.low.take() {
                    self.reference[l] = p.left.low;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            let top = self.stack.last().expect("e has a return edge on the stack");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                (Some(l), None) => Some(l),
                _ => hr,
            };
        }
    }
}
