//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails or exceeds its time limit.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use tokens_core::canon::are_isomorphic;
use tokens_core::classify::{classify_planarity, classify_regularity, RegularityCase};
use tokens_core::graph::families::{complete, cycle, octahedron, path, star};
use tokens_core::graph::graph6;
use tokens_core::minor::{apply_and_verify, lift_script, MinorOp, MinorScript};
use tokens_core::planarity::{is_planar, planarity_oracle};
use tokens_core::random::{connected, gnp, seeded, tree};
use tokens_core::search::{edge_maximal_search, verify_maximality, GraphGenerator, SearchConfig};
use tokens_core::subset::binomial;
use tokens_core::token::{build_token_graph, johnson_complement};
use tokens_core::Graph;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn token_planar(g: &Graph, k: usize) -> bool {
    is_planar(build_token_graph(g, k).unwrap().graph()).planar
}

fn all_graphs(n: usize) -> Vec<Graph> {
    let mut gen = GraphGenerator::new(n).unwrap();
    (0..=n * (n - 1) / 2).flat_map(|m| gen.graphs(m)).collect()
}

fn octahedron_fact() -> Outcome {
    let f = build_token_graph(&complete(4), 2).unwrap();
    let h = f.graph();
    ensure!(h.order() == 6 && h.size() == 12, "order {} size {}", h.order(), h.size());
    ensure!(h.is_regular() && h.max_degree() == 4, "degrees {:?}", h.degree_sequence());
    ensure!(is_planar(h).planar, "not planar");
    ensure!(are_isomorphic(h, &octahedron()).unwrap(), "not the octahedron");
    Ok("F_2(K_4): 6 vertices, 12 edges, 4-regular, planar, octahedron".into())
}

fn five_cycle() -> Outcome {
    let f = build_token_graph(&cycle(5), 2).unwrap();
    let h = f.graph();
    ensure!(h.order() == 10 && h.size() == 15, "order {} size {}", h.order(), h.size());
    let mut degrees = h.degree_sequence();
    degrees.sort_unstable();
    ensure!(degrees == [2, 2, 2, 2, 2, 4, 4, 4, 4, 4], "degrees {degrees:?}");
    ensure!(!is_planar(h).planar, "planar");
    Ok("F_2(C_5): 10 vertices, 15 edges, degrees 2^5 4^5, non-planar".into())
}

fn star_obstructions() -> Outcome {
    for k in [2, 3] {
        ensure!(!token_planar(&star(5), k), "F_{k}(K_1,5) planar");
    }
    Ok("F_2(K_1,5) and F_3(K_1,5) non-planar".into())
}

fn paths() -> Outcome {
    for n in 4..=12 {
        ensure!(token_planar(&path(n), 2), "F_2(P_{n}) non-planar");
    }
    ensure!(!token_planar(&path(7), 3), "F_3(P_7) planar");
    Ok("F_2(P_n) planar for n = 4..12, F_3(P_7) non-planar".into())
}

fn is_star(g: &Graph) -> bool {
    let n = g.order();
    g.size() == n - 1 && g.max_degree() == n - 1
}

fn regularity_exhaustive() -> Outcome {
    let mut cases = 0;
    let mut regular = 0;
    for n in 4..=7 {
        for g in all_graphs(n) {
            for k in 2..=n - 2 {
                cases += 1;
                let v = classify_regularity(&g, k).unwrap();
                let built = build_token_graph(&g, k).unwrap().graph().is_regular();
                let s = graph6::encode(&g);
                ensure!(v.regular == built, "{s} k={k}: verdict {} built {built}", v.regular);
                let expected = g.size() == 0
                    || g.is_complete()
                    || (2 * k == n && (is_star(&g) || is_star(&g.complement())));
                ensure!(built == expected, "{s} k={k}: regular {built} outside the listed families");
                if built {
                    regular += 1;
                    ensure!(v.case != RegularityCase::NotRegular, "{s} k={k}: case {:?}", v.case);
                }
                let comp = build_token_graph(&g.complement(), k).unwrap().graph().is_regular();
                ensure!(comp == built, "{s} k={k}: complement changes regularity");
            }
        }
    }
    Ok(format!("{cases} (class, k) cases, {regular} regular, all agree"))
}

fn complement_identity() -> Outcome {
    let mut rng = seeded(101);
    let mut checks = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=9);
        let g = gnp(n, rng.gen_range(0.0..=1.0), &mut rng);
        for k in 1..n {
            let f = build_token_graph(&g, k).unwrap();
            let fc = build_token_graph(&g.complement(), k).unwrap();
            ensure!(
                johnson_complement(&f).graph() == fc.graph(),
                "{} k={k}",
                graph6::encode(&g)
            );
            checks += 1;
        }
    }
    Ok(format!("200 graphs, {checks} (graph, k) pairs labelled-equal"))
}

fn random_op<R: Rng>(g: &Graph, want_contraction: bool, rng: &mut R) -> MinorOp {
    let edges: Vec<_> = g.edges().collect();
    let kind = if edges.is_empty() {
        0
    } else if want_contraction {
        2
    } else {
        rng.gen_range(0..3)
    };
    match kind {
        0 => MinorOp::DeleteVertex {
            v: rng.gen_range(0..g.order()),
        },
        1 => {
            let e = edges.choose(rng).unwrap();
            MinorOp::DeleteEdge { u: e.u, v: e.v }
        }
        _ => {
            let e = edges.choose(rng).unwrap();
            MinorOp::ContractEdge { u: e.u, v: e.v }
        }
    }
}

fn lifting() -> Outcome {
    let mut rng = seeded(202);
    let mut with_contraction = 0;
    for i in 0..300 {
        let n = rng.gen_range(6..=8);
        let g = if rng.gen_bool(0.5) {
            connected(n, rng.gen_range(0..6), &mut rng)
        } else {
            gnp(n, 0.5, &mut rng)
        };
        let k = rng.gen_range(2..=n - 4);
        let mut cur = g.clone();
        let mut ops = Vec::new();
        for j in 0..3 {
            let op = random_op(&cur, i % 2 == 0 && j == 0, &mut rng);
            cur = op.apply(&cur).unwrap();
            ops.push(op);
        }
        let script = MinorScript::new(ops);
        let lifted = lift_script(&g, k, &script).unwrap();
        let mut contracted = false;
        for step in &lifted.steps {
            if step.contractions() > 0 {
                contracted = true;
                let expected = binomial(step.base_order - 2, k - 1).unwrap() as usize;
                ensure!(
                    step.contractions() == expected,
                    "contraction count {} expected {expected}",
                    step.contractions()
                );
            }
        }
        if contracted {
            with_contraction += 1;
        }
        let v = apply_and_verify(&g, k, &script).unwrap();
        ensure!(
            v.isomorphic && v.identical,
            "{} k={k} script {:?}",
            graph6::encode(&g),
            script
        );
    }
    ensure!(with_contraction >= 100, "only {with_contraction} scripts contract");
    Ok(format!("300 scripts verified, {with_contraction} with a contraction"))
}

fn search_config(k: usize, n_min: usize, n_max: usize) -> SearchConfig {
    SearchConfig {
        n_min,
        n_max,
        jobs: Some(4),
        ..SearchConfig::new(k)
    }
}

fn search_k2() -> Outcome {
    let r = edge_maximal_search(&search_config(2, 5, 10)).unwrap();
    ensure!(!r.partial, "partial report");
    ensure!(r.maximal.len() == 13, "{} maximal graphs", r.maximal.len());
    for s in &r.maximal {
        let g = graph6::decode_str(s).unwrap();
        ensure!(verify_maximality(&g, 2).unwrap(), "{s} not maximal");
    }
    Ok(format!("13 edge-maximal graphs on n = 5..10, all verified, {:.1}s", r.elapsed_secs))
}

fn search_k3() -> Outcome {
    let r = edge_maximal_search(&search_config(3, 6, 8)).unwrap();
    ensure!(!r.partial, "partial report");
    ensure!(r.maximal.len() == 2, "{} maximal graphs", r.maximal.len());
    for s in &r.maximal {
        let g = graph6::decode_str(s).unwrap();
        ensure!(g.order() == 6, "{s} has {} vertices", g.order());
        ensure!(verify_maximality(&g, 3).unwrap(), "{s} not maximal");
    }
    for n in [7, 8] {
        let survivors: usize = r.entries.iter().filter(|e| e.n == n).map(|e| e.survivors).sum();
        ensure!(survivors == 0, "{survivors} survivors at n={n}");
        ensure!(r.stopped_at.contains_key(&n), "n={n} not searched");
    }
    Ok("2 edge-maximal graphs on 6 vertices, no survivors at n = 7, 8".into())
}

fn search_k4() -> Outcome {
    let r = edge_maximal_search(&search_config(4, 8, 10)).unwrap();
    ensure!(!r.partial, "partial report");
    ensure!(r.maximal.is_empty(), "{} maximal graphs", r.maximal.len());
    let survivors: usize = r.entries.iter().map(|e| e.survivors).sum();
    ensure!(survivors == 0, "{survivors} survivors");
    Ok("no edge-maximal graphs on n = 8..10".into())
}

fn planarity_soundness() -> Outcome {
    ensure!(!is_planar(&complete(5)).planar, "K_5 accepted");
    let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
    ensure!(!is_planar(&k33).planar, "K_3,3 accepted");
    let mut exhaustive = 0;
    for n in 1..=8 {
        for g in all_graphs(n).into_iter().filter(Graph::is_connected) {
            ensure!(
                is_planar(&g).planar == planarity_oracle(&g).unwrap(),
                "{}",
                graph6::encode(&g)
            );
            exhaustive += 1;
        }
    }
    let mut rng = seeded(303);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=10);
        let g = gnp(n, rng.gen_range(0.1..=0.7), &mut rng);
        ensure!(
            is_planar(&g).planar == planarity_oracle(&g).unwrap(),
            "{}",
            graph6::encode(&g)
        );
    }
    Ok(format!("{exhaustive} connected graphs on n <= 8 and 10000 random graphs agree"))
}

fn sample(n: usize, rng: &mut impl Rng) -> Graph {
    match rng.gen_range(0..4) {
        0 => path(n).relabel(&tokens_core::random::permutation(n, rng)).unwrap(),
        1 => tree(n, rng),
        2 => connected(n, rng.gen_range(1..=3), rng),
        _ => connected(n, rng.gen_range(4..=12), rng),
    }
}

fn structural_consistency() -> Outcome {
    let mut rng = seeded(404);
    let mut compared = 0;
    let mut planar = 0;
    for n in [11, 12] {
        for _ in 0..500 {
            let g = sample(n, &mut rng);
            for k in 2..=n - 2 {
                if binomial(n, k).unwrap() > 10_000 {
                    continue;
                }
                let v = classify_planarity(&g, k).unwrap();
                ensure!(v.is_structural(), "{} k={k}: not structural", graph6::encode(&g));
                let direct = token_planar(&g, k);
                ensure!(v.is_planar() == direct, "{} k={k}: {v:?} vs {direct}", graph6::encode(&g));
                compared += 1;
                planar += direct as usize;
            }
        }
    }
    Ok(format!("{compared} (graph, k) pairs agree, {planar} planar"))
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "octahedron", limit: secs(1), run: octahedron_fact },
        Criterion { id: 2, name: "five-cycle token graph", limit: secs(1), run: five_cycle },
        Criterion { id: 3, name: "star obstructions", limit: secs(1), run: star_obstructions },
        Criterion { id: 4, name: "paths", limit: secs(5), run: paths },
        Criterion { id: 5, name: "regularity, exhaustive n = 4..7", limit: secs(120), run: regularity_exhaustive },
        Criterion { id: 6, name: "complement identity", limit: secs(60), run: complement_identity },
        Criterion { id: 7, name: "minor lifting", limit: secs(120), run: lifting },
        Criterion { id: 8, name: "search k = 2", limit: secs(1800), run: search_k2 },
        Criterion { id: 9, name: "search k = 3", limit: secs(300), run: search_k3 },
        Criterion { id: 10, name: "search k = 4", limit: secs(600), run: search_k4 },
        Criterion { id: 11, name: "planarity engine vs minor oracle", limit: secs(600), run: planarity_soundness },
        Criterion { id: 12, name: "structural planarity, n = 11, 12", limit: secs(600), run: structural_consistency },
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > c.limit => Err(format!("exceeded {:?}", c.limit)),
            o => o,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} criterion {:>2} [{}] {:.2}s: {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64()
        );
    }
    if failures > 0 {
        println!("{failures} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
