//! Which graphs have a regular k-token graph.
//!
//! For `2 <= k <= n-2`, `F_k(G)` is regular exactly when `G` is complete,
//! edgeless, or a star or co-star with `k = n/2`. Every other input gets a
//! witness: two k-subsets whose cut sizes differ, constructed the way the
//! non-regularity arguments construct them.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};
use crate::subset::{binomial, KSubset, SubsetCodec};
use crate::token::{token_degree, token_degree_mask, DEFAULT_VERTEX_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegularityCase {
    CompleteGraph,
    EmptyGraph,
    #[serde(rename = "Star_kHalfN")]
    StarHalf,
    #[serde(rename = "CoStar_kHalfN")]
    CoStarHalf,
    NotRegular,
}

/// The construction that produced a non-regularity witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessBranch {
    /// Regular `G`, neither complete nor empty: swap a neighbour of `v` in
    /// `A` for a non-neighbour of `v`.
    RegularSwap,
    /// `A, B = S+u, S+v` with `S` inside `Z`.
    SubsetOfZ,
    /// `S` is `Z` plus part of `X`.
    SubsetOfX,
    /// `S` is `Z`, `X` and part of `W`.
    SubsetOfW,
    /// `S` inside `Y`, possibly with a vertex of `R` that misses `v`.
    NonNeighbourOfV,
    /// `u` has a neighbour in `R`; `S` built from `W` and `Y`.
    NeighbourOfU,
    /// Star with `k != n/2`.
    StarUnbalanced,
    /// Co-star with `k != n/2`.
    CoStarUnbalanced,
    /// Direct scan of token degrees.
    Scan,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub degree_a: usize,
    pub degree_b: usize,
    pub branch: WitnessBranch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityVerdict {
    pub regular: bool,
    pub case: RegularityCase,
    /// The `k` asked about, before normalisation to `min(k, n-k)`.
    pub k: usize,
    pub witness: Option<Witness>,
}

/// Sets `X, Y, W, Z` partitioning `V \ {u, v}` by adjacency to `u` and `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborhoodPartition {
    pub u: usize,
    pub v: usize,
    /// Neighbours of `u` only.
    pub x: Vec<usize>,
    /// Neighbours of `v` only.
    pub y: Vec<usize>,
    /// Common neighbours.
    pub w: Vec<usize>,
    /// Adjacent to neither.
    pub z: Vec<usize>,
}

pub fn partition_uv(g: &Graph, u: usize, v: usize) -> Result<NeighborhoodPartition> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidSubset(format!("partition needs two distinct vertices, got {u} twice")));
    }
    let mut p = NeighborhoodPartition {
        u,
        v,
        x: Vec::new(),
        y: Vec::new(),
        w: Vec::new(),
        z: Vec::new(),
    };
    for r in (0..g.order()).filter(|&r| r != u && r != v) {
        match (g.has_edge(u, r), g.has_edge(v, r)) {
            (true, false) => p.x.push(r),
            (false, true) => p.y.push(r),
            (true, true) => p.w.push(r),
            (false, false) => p.z.push(r),
        }
    }
    Ok(p)
}

fn check_range(n: usize, k: usize) -> Result<()> {
    if k < 2 || k + 2 > n {
        return Err(Error::BadK { n, k });
    }
    Ok(())
}

fn is_star(g: &Graph) -> bool {
    let n = g.order();
    n >= 3 && g.size() == n - 1 && g.max_degree() == n - 1
}

fn is_costar(g: &Graph) -> bool {
    let n = g.order();
    n >= 3 && is_star(&g.complement())
}

/// `F_k(G)` regularity decided from the structure of `G`, with a verified
/// witness when it is not regular.
pub fn classify_regularity(g: &Graph, k: usize) -> Result<RegularityVerdict> {
    let n = g.order();
    check_range(n, k)?;
    let verdict = |case| RegularityVerdict {
        regular: case != RegularityCase::NotRegular,
        case,
        k,
        witness: None,
    };
    if g.is_complete() {
        return Ok(verdict(RegularityCase::CompleteGraph));
    }
    if g.size() == 0 {
        return Ok(verdict(RegularityCase::EmptyGraph));
    }
    let half = 2 * k == n;
    if half && is_star(g) {
        return Ok(verdict(RegularityCase::StarHalf));
    }
    if half && is_costar(g) {
        return Ok(verdict(RegularityCase::CoStarHalf));
    }
    let kk = k.min(n - k);
    let mut w = find_witness(g, kk);
    if kk != k {
        // F_k and F_{n-k} correspond through complementation of subsets
        let flip = |s: &[usize]| (0..n).filter(|x| !s.contains(x)).collect();
        w.a = flip(&w.a);
        w.b = flip(&w.b);
    }
    Ok(RegularityVerdict {
        regular: false,
        case: RegularityCase::NotRegular,
        k,
        witness: Some(w),
    })
}

fn degree_of(g: &Graph, s: &[usize]) -> usize {
    let subset = KSubset::new(g.order(), s.iter().copied()).expect("witness sets are valid subsets");
    token_degree(g, &subset)
}

/// Returns a witness from the candidate pairs if their degrees differ.
fn differing(g: &Graph, pairs: &[(Vec<usize>, Vec<usize>)], branch: WitnessBranch) -> Option<Witness> {
    pairs.iter().find_map(|(a, b)| {
        let (da, db) = (degree_of(g, a), degree_of(g, b));
        (da != db).then(|| Witness {
            a: sorted(a),
            b: sorted(b),
            degree_a: da,
            degree_b: db,
            branch,
        })
    })
}

fn sorted(s: &[usize]) -> Vec<usize> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s
}

fn with(base: &[usize], extra: &[usize]) -> Vec<usize> {
    base.iter().chain(extra).copied().collect()
}

/// Witness for a non-regular `F_k(G)`, `2 <= k <= n/2`.
fn find_witness(g: &Graph, k: usize) -> Witness {
    let n = g.order();
    let found = if g.is_regular() {
        regular_swap(g, k)
    } else {
        let mut found = None;
        'pairs: for u in 0..n {
            for v in 0..n {
                if g.degree(u) < g.degree(v) {
                    found = unequal_pair(g, k, u, v);
                    if found.is_some() {
                        break 'pairs;
                    }
                }
            }
        }
        found.or_else(|| unbalanced_star(g, k))
    };
    found.unwrap_or_else(|| scan(g, k))
}

fn regular_swap(g: &Graph, k: usize) -> Option<Witness> {
    let n = g.order();
    let v = (0..n).find(|&v| g.degree(v) >= 1 && g.degree(v) < n - 1)?;
    let v2 = (0..n).find(|&x| x != v && !g.has_edge(v, x))?;
    let u = g.neighbors(v)[0];
    let rest: Vec<usize> = (0..n).filter(|&x| x != u && x != v && x != v2).take(k - 1).collect();
    let a = with(&rest, &[u]);
    let au = with(&rest, &[v2]);
    let mut pairs = Vec::new();
    for base in [&a, &au] {
        for &x in base.iter() {
            let swapped: Vec<usize> = base.iter().map(|&y| if y == x { v } else { y }).collect();
            pairs.push((base.clone(), swapped));
        }
    }
    pairs.push((a.clone(), au.clone()));
    differing(g, &pairs, WitnessBranch::RegularSwap)
}

fn unequal_pair(g: &Graph, k: usize, u: usize, v: usize) -> Option<Witness> {
    let p = partition_uv(g, u, v).expect("distinct valid vertices");
    let (nx, nw, nz) = (p.x.len(), p.w.len(), p.z.len());
    let pair = |s: Vec<usize>| (with(&s, &[u]), with(&s, &[v]));
    if k - 1 <= nz {
        let s = p.z[..k - 1].to_vec();
        return differing(g, &[pair(s)], WitnessBranch::SubsetOfZ);
    }
    if k - 1 <= nz + nx {
        let s = with(&p.z, &p.x[..k - 1 - nz]);
        return differing(g, &[pair(s)], WitnessBranch::SubsetOfX);
    }
    if k - 1 <= nz + nx + nw {
        let s = with(&with(&p.z, &p.x), &p.w[..k - 1 - nz - nx]);
        return differing(g, &[pair(s)], WitnessBranch::SubsetOfW);
    }
    // from here |X| + |W| + |Z| < k - 1, so Y holds at least k - 1 vertices
    if let Some(&y) = p.x.iter().chain(&p.z).next() {
        let s1 = p.y[..k - 1].to_vec();
        let s2 = with(&p.y[..k - 2], &[y]);
        return differing(g, &[pair(s1), pair(s2)], WitnessBranch::NonNeighbourOfV);
    }
    if !p.w.is_empty() {
        let s = if nw < k - 1 {
            with(&p.w, &p.y[..k - 1 - nw])
        } else {
            p.w[..k - 1].to_vec()
        };
        return differing(g, &[pair(s)], WitnessBranch::NeighbourOfU);
    }
    None
}

fn unbalanced_star(g: &Graph, k: usize) -> Option<Witness> {
    let n = g.order();
    if is_star(g) {
        let y = (0..n).find(|&x| g.degree(x) == n - 1)?;
        let s: Vec<usize> = g.neighbors(y)[..k - 1].to_vec();
        let z = (0..n).find(|x| *x != y && !s.contains(x))?;
        return differing(g, &[(with(&s, &[y]), with(&s, &[z]))], WitnessBranch::StarUnbalanced);
    }
    if is_costar(g) {
        let x = (0..n).find(|&x| g.degree(x) == 0)?;
        let s: Vec<usize> = (0..n).filter(|&w| w != x).take(k - 1).collect();
        let z = (0..n).find(|w| *w != x && !s.contains(w))?;
        return differing(g, &[(with(&s, &[x]), with(&s, &[z]))], WitnessBranch::CoStarUnbalanced);
    }
    None
}

fn scan(g: &Graph, k: usize) -> Witness {
    let n = g.order();
    let codec = SubsetCodec::new(n, k).expect("order within the mask limit");
    let masks = codec.masks();
    let nbr = g.masks().expect("order within the mask limit");
    let first = masks[0];
    let d0 = token_degree_mask(nbr, first);
    let other = masks
        .iter()
        .copied()
        .find(|&m| token_degree_mask(nbr, m) != d0)
        .expect("token graph is not regular");
    Witness {
        a: BitIter(first).collect(),
        b: BitIter(other).collect(),
        degree_a: d0,
        degree_b: token_degree_mask(nbr, other),
        branch: WitnessBranch::Scan,
    }
}

/// Outcome of checking the constant `c` with `d_A(b) = c` for all `A`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ConstantOutcome {
    /// `c`, verified over every pair when `C(n, k)` is within the budget.
    Constant { c: Ratio<i64>, verified: bool },
    /// A pair `(A, b)` with `d_A(b) != c`.
    Inconsistent { c: Ratio<i64>, a: Vec<usize>, b: usize, degree: usize },
}

/// `c = (r2 - k r1) / (1 - k)` for regular `G` of degree `r1` whose token
/// graph is regular of degree `r2`.
pub fn subset_degree_constant(g: &Graph, k: usize) -> Result<ConstantOutcome> {
    let n = g.order();
    check_range(n, k)?;
    if !g.is_regular() {
        return Err(Error::NotRegularInput("the base graph is not regular".into()));
    }
    let codec = SubsetCodec::new(n, k)?;
    let count = binomial(n, k).unwrap_or(u64::MAX);
    if count > DEFAULT_VERTEX_BUDGET {
        return Err(Error::BudgetExceeded {
            vertices: count,
            budget: DEFAULT_VERTEX_BUDGET,
        });
    }
    let nbr = g.masks().expect("order within the mask limit");
    let masks = codec.masks();
    let r2 = token_degree_mask(nbr, masks[0]);
    if let Some(&m) = masks.iter().find(|&&m| token_degree_mask(nbr, m) != r2) {
        return Err(Error::NotRegularInput(format!(
            "F_{k} has degrees {r2} and {}",
            token_degree_mask(nbr, m)
        )));
    }
    let r1 = g.degree(0) as i64;
    let (r2, kk) = (r2 as i64, k as i64);
    let c = Ratio::new(r2 - kk * r1, 1 - kk);
    for &a in &masks {
        for b in (0..n).filter(|&b| a >> b & 1 == 0) {
            let d = (nbr[b] & a).count_ones() as usize;
            if Ratio::from_integer(d as i64) != c {
                return Ok(ConstantOutcome::Inconsistent {
                    c,
                    a: BitIter(a).collect(),
                    b,
                    degree: d,
                });
            }
        }
    }
    Ok(ConstantOutcome::Constant { c, verified: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::token::build_token_graph;

    fn regular_by_construction(g: &Graph, k: usize) -> bool {
        build_token_graph(g, k).unwrap().graph().is_regular()
    }

    #[test]
    fn examples() {
        let v = classify_regularity(&complete(6), 3).unwrap();
        assert!(v.regular);
        assert_eq!(v.case, RegularityCase::CompleteGraph);
        let v = classify_regularity(&star(5), 3).unwrap();
        assert_eq!(v.case, RegularityCase::StarHalf);
        let v = classify_regularity(&star(5), 2).unwrap();
        assert!(!v.regular);
        let w = v.witness.unwrap();
        let mut degrees = [w.degree_a, w.degree_b];
        degrees.sort_unstable();
        assert_eq!(degrees, [2, 4]);
        assert_eq!(classify_regularity(&Graph::empty(7), 3).unwrap().case, RegularityCase::EmptyGraph);
        let costar = star(5).complement();
        assert_eq!(classify_regularity(&costar, 3).unwrap().case, RegularityCase::CoStarHalf);
        assert!(matches!(classify_regularity(&path(5), 4), Err(Error::BadK { .. })));
        assert!(matches!(classify_regularity(&path(5), 1), Err(Error::BadK { .. })));
    }

    #[test]
    fn partition_examples() {
        let p = partition_uv(&star(5), 1, 0).unwrap();
        assert!(p.x.is_empty() && p.w.is_empty() && p.z.is_empty());
        assert_eq!(p.y, vec![2, 3, 4, 5]);
        let p = partition_uv(&complete(6), 2, 4).unwrap();
        assert_eq!(p.w, vec![0, 1, 3, 5]);
        let p = partition_uv(&Graph::empty(5), 0, 1).unwrap();
        assert_eq!(p.z, vec![2, 3, 4]);
        assert!(partition_uv(&path(3), 0, 5).is_err());
        assert!(partition_uv(&path(3), 1, 1).is_err());
    }

    #[test]
    fn witnesses_for_small_graphs() {
        use crate::random::{gnp, seeded};
        use rand::Rng;
        let mut rng = seeded(41);
        for _ in 0..600 {
            let n = rng.gen_range(4..=10);
            let g = gnp(n, rng.gen_range(0.0..1.0), &mut rng);
            for k in 2..=n - 2 {
                let v = classify_regularity(&g, k).unwrap();
                assert_eq!(v.regular, regular_by_construction(&g, k), "{g:?} k={k}");
                if let Some(w) = v.witness {
                    assert_eq!(w.a.len(), k);
                    assert_eq!(w.b.len(), k);
                    assert_ne!(degree_of(&g, &w.a), degree_of(&g, &w.b));
                    assert_ne!(w.branch, WitnessBranch::Scan, "{g:?} k={k}");
                }
            }
        }
    }

    #[test]
    fn regular_inputs_use_swap_branch() {
        for g in [cycle(6), petersen(), octahedron(), complete_bipartite(3, 3)] {
            for k in 2..=g.order() - 2 {
                let w = classify_regularity(&g, k).unwrap().witness.unwrap();
                assert_eq!(w.branch, WitnessBranch::RegularSwap);
            }
        }
    }

    #[test]
    fn subset_degree_constant_examples() {
        assert_eq!(
            subset_degree_constant(&complete(5), 2).unwrap(),
            ConstantOutcome::Constant {
                c: Ratio::from_integer(2),
                verified: true
            }
        );
        assert_eq!(
            subset_degree_constant(&Graph::empty(6), 3).unwrap(),
            ConstantOutcome::Constant {
                c: Ratio::from_integer(0),
                verified: true
            }
        );
        assert!(matches!(subset_degree_constant(&cycle(6), 2), Err(Error::NotRegularInput(_))));
        assert!(matches!(subset_degree_constant(&path(6), 2), Err(Error::NotRegularInput(_))));
    }
}
