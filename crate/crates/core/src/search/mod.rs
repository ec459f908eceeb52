//! Exhaustive search for connected graphs that are edge-maximal with a
//! planar k-token graph.
//!
//! For each order `n`, edge counts are visited upward from `n - 1`. Every
//! connected graph at that level whose token graph is planar survives; a
//! survivor is edge-maximal when adding any missing edge makes the token
//! graph non-planar. The loop over `m` stops at the first non-empty level
//! without survivors; empty levels of a supplied graph stream are skipped.

pub mod generate;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planarity::is_planar;
use crate::token::build_token_graph;

pub use generate::{connected_graphs, GraphGenerator, GENERATOR_LIMIT};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchEntry {
    pub n: usize,
    pub m: usize,
    pub generated: usize,
    pub survivors: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub k: usize,
    pub entries: Vec<SearchEntry>,
    /// Canonical graph6 strings of the edge-maximal graphs, sorted.
    pub maximal: Vec<String>,
    /// For each order, the first edge count with no survivors.
    pub stopped_at: BTreeMap<usize, usize>,
    pub elapsed_secs: f64,
    /// Set when the time budget ran out before the search finished.
    pub partial: bool,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub k: usize,
    pub n_min: usize,
    pub n_max: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub budget: Option<Duration>,
}

impl SearchConfig {
    /// Orders `max(2k, 5)..=10`: token graphs of graphs on at most four
    /// vertices are all planar, and `F_k` is isomorphic to `F_{n-k}`.
    pub fn new(k: usize) -> Self {
        SearchConfig {
            k,
            n_min: (2 * k).max(5),
            n_max: GENERATOR_LIMIT,
            jobs: None,
            budget: None,
        }
    }
}

fn token_planar(g: &Graph, k: usize) -> Result<bool> {
    Ok(is_planar(build_token_graph(g, k)?.graph()).planar)
}

/// `F_k(g)` planar and every single-edge augmentation non-planar.
pub fn verify_maximality(g: &Graph, k: usize) -> Result<bool> {
    let n = g.order();
    if k < 2 || k + 2 > n {
        return Err(Error::BadK { n, k });
    }
    if !token_planar(g, k)? {
        return Ok(false);
    }
    for e in g.non_edges() {
        if token_planar(&g.add_edge(e.u, e.v)?, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of testing one generated graph.
enum Outcome {
    NonPlanar,
    Survivor,
    Maximal(String),
}

fn evaluate(g: &Graph, k: usize) -> Result<Outcome> {
    if !token_planar(g, k)? {
        return Ok(Outcome::NonPlanar);
    }
    for e in g.non_edges() {
        if token_planar(&g.add_edge(e.u, e.v)?, k)? {
            return Ok(Outcome::Survivor);
        }
    }
    Ok(Outcome::Maximal(canonical_form(g)?.graph6))
}

/// Runs the protocol with graphs supplied per `(n, m)` by `source`.
fn run<F>(k: usize, orders: &[usize], budget: Option<Duration>, mut source: F) -> Result<SearchReport>
where
    F: FnMut(usize, usize) -> Result<Vec<Graph>>,
{
    let start = Instant::now();
    let over_budget = || budget.is_some_and(|b| start.elapsed() > b);
    let mut report = SearchReport {
        k,
        entries: Vec::new(),
        maximal: Vec::new(),
        stopped_at: BTreeMap::new(),
        elapsed_secs: 0.0,
        partial: false,
    };
    'orders: for &n in orders {
        if k < 2 || k + 2 > n {
            return Err(Error::BadK { n, k });
        }
        // F_k and F_{n-k} are isomorphic
        let kk = k.min(n - k);
        for m in n - 1..=n * (n - 1) / 2 {
            if over_budget() {
                report.partial = true;
                break 'orders;
            }
            let graphs = source(n, m)?;
            if graphs.is_empty() {
                continue;
            }
            let outcomes: Vec<Outcome> = graphs
                .par_iter()
                .map(|g| if over_budget() { Ok(Outcome::NonPlanar) } else { evaluate(g, kk) })
                .collect::<Result<_>>()?;
            if over_budget() {
                report.partial = true;
                break 'orders;
            }
            let mut survivors = 0;
            for o in outcomes {
                match o {
                    Outcome::NonPlanar => {}
                    Outcome::Survivor => survivors += 1,
                    Outcome::Maximal(s) => {
                        survivors += 1;
                        report.maximal.push(s);
                    }
                }
            }
            report.entries.push(SearchEntry {
                n,
                m,
                generated: graphs.len(),
                survivors,
            });
            if survivors == 0 {
                report.stopped_at.insert(n, m);
                break;
            }
        }
    }
    report.maximal.sort();
    report.maximal.dedup();
    report.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        None => f(),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .expect("thread pool construction");
            pool.install(f)
        }
    }
}

/// The search over the built-in generator.
pub fn edge_maximal_search(config: &SearchConfig) -> Result<SearchReport> {
    let k = config.k;
    if k < 2 {
        return Err(Error::BadK { n: config.n_min, k });
    }
    if config.n_max > GENERATOR_LIMIT {
        return Err(Error::SizeLimitExceeded {
            what: "built-in generator order (stream graphs from a graph6 file instead)",
            size: config.n_max,
            limit: GENERATOR_LIMIT,
        });
    }
    let orders: Vec<usize> = (config.n_min..=config.n_max).collect();
    with_pool(config.jobs, || {
        let mut gens: BTreeMap<usize, GraphGenerator> = BTreeMap::new();
        run(k, &orders, config.budget, |n, m| {
            let gen = match gens.entry(n) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(GraphGenerator::new(n)?),
            };
            Ok(gen.connected(m))
        })
    })
}

/// The search over externally supplied graphs: connected inputs are
/// deduplicated by canonical form and bucketed by order and size.
pub fn edge_maximal_search_from_graphs(
    config: &SearchConfig,
    graphs: impl IntoIterator<Item = Graph>,
) -> Result<SearchReport> {
    let mut buckets: BTreeMap<(usize, usize), BTreeMap<String, Graph>> = BTreeMap::new();
    for g in graphs {
        let n = g.order();
        if !g.is_connected() || n < config.n_min || n > config.n_max {
            continue;
        }
        let key = canonical_form(&g)?.graph6;
        buckets.entry((n, g.size())).or_default().entry(key).or_insert(g);
    }
    let orders: Vec<usize> = (config.n_min..=config.n_max)
        .filter(|&n| buckets.keys().any(|&(bn, _)| bn == n))
        .collect();
    with_pool(config.jobs, || {
        run(config.k, &orders, config.budget, |n, m| {
            Ok(buckets.get(&(n, m)).map(|b| b.values().cloned().collect()).unwrap_or_default())
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::graph::graph6;

    #[test]
    fn maximality_examples() {
        assert!(verify_maximality(&complete(4), 2).unwrap());
        assert!(!verify_maximality(&cycle(10), 2).unwrap());
        assert!(matches!(verify_maximality(&path(4), 3), Err(Error::BadK { .. })));
    }

    #[test]
    fn k3_search_on_six_and_seven() {
        let cfg = SearchConfig {
            n_max: 7,
            ..SearchConfig::new(3)
        };
        let report = edge_maximal_search(&cfg).unwrap();
        assert_eq!(report.maximal.len(), 2);
        for s in &report.maximal {
            let g = graph6::decode_str(s).unwrap();
            assert_eq!(g.order(), 6);
            assert!(verify_maximality(&g, 3).unwrap());
        }
        assert!(report.entries.iter().filter(|e| e.n == 7).all(|e| e.survivors == 0));
        assert!(!report.partial);
    }

    #[test]
    fn from_graphs_matches_generator() {
        let cfg = SearchConfig {
            n_max: 7,
            ..SearchConfig::new(2)
        };
        let direct = edge_maximal_search(&cfg).unwrap();
        let mut all = Vec::new();
        for n in 5..=7 {
            let mut gen = GraphGenerator::new(n).unwrap();
            for m in 0..=n * (n - 1) / 2 {
                all.extend(gen.graphs(m));
            }
        }
        let streamed = edge_maximal_search_from_graphs(&cfg, all).unwrap();
        assert_eq!(direct.maximal, streamed.maximal);
        assert_eq!(direct.entries, streamed.entries);
    }

    #[test]
    fn reports_are_deterministic() {
        let run = |jobs| {
            edge_maximal_search(&SearchConfig {
                n_max: 8,
                jobs: Some(jobs),
                ..SearchConfig::new(2)
            })
            .unwrap()
        };
        let (a, b) = (run(1), run(3));
        assert_eq!(a.maximal, b.maximal);
        assert_eq!(a.entries, b.entries);
    }

    #[test]
    fn maximality_agrees_with_search() {
        let report = edge_maximal_search(&SearchConfig {
            n_min: 6,
            n_max: 6,
            ..SearchConfig::new(2)
        })
        .unwrap();
        let p6 = canonical_form(&path(6)).unwrap().graph6;
        assert_eq!(report.maximal.contains(&p6), verify_maximality(&path(6), 2).unwrap());
    }

    #[test]
    fn large_k_is_reflected() {
        let low = edge_maximal_search(&SearchConfig {
            n_min: 6,
            n_max: 6,
            ..SearchConfig::new(2)
        })
        .unwrap();
        let high = edge_maximal_search(&SearchConfig {
            n_min: 6,
            n_max: 6,
            ..SearchConfig::new(4)
        })
        .unwrap();
        assert_eq!(low.maximal, high.maximal);
        assert_eq!(low.entries, high.entries);
    }

    #[test]
    fn report_json_round_trip() {
        let report = edge_maximal_search(&SearchConfig {
            n_max: 6,
            ..SearchConfig::new(2)
        })
        .unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: SearchReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn zero_budget_gives_partial_report() {
        let cfg = SearchConfig {
            budget: Some(Duration::ZERO),
            ..SearchConfig::new(2)
        };
        let report = edge_maximal_search(&cfg).unwrap();
        assert!(report.partial);
    }

    #[test]
    fn stopping_rule_is_safe_for_k2() {
        for n in 5..=8 {
            let report = edge_maximal_search(&SearchConfig {
                n_min: n,
                n_max: n,
                ..SearchConfig::new(2)
            })
            .unwrap();
            let stop = report.stopped_at[&n];
            let next = connected_graphs(n, stop + 1).unwrap();
            for g in next {
                assert!(!token_planar(&g, 2).unwrap(), "{g:?}");
            }
        }
    }
}
