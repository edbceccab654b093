//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; the process fails if any criterion does.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use partplan::decider::{decide, verify_certificate, Answer, MoveSet};
use partplan::drawing::{parity_table, ConvexDrawing};
use partplan::generate::{
    build_arrangement_instance, cells, generate, k5_family, random_subset, spanning_tree_instance, EdgeRole,
    GeneratorKind, K5Variant, VertexRole, WiringDiagram,
};
use partplan::graph::{EdgeSubset, Graph};
use partplan::oracle::oracle_decide;

const RANDOM_AGREEMENT_TRIALS: usize = 1000;
const SPANNING_TREE_TRIALS: usize = 200;
const MONOTONICITY_TRIALS: usize = 200;
const SUBSETS_PER_INSTANCE: usize = 5;
const EXTRA_ORDERS: usize = 3;
const SCALE_TIME_LIMIT: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn answer(g: &Graph, f: &EdgeSubset) -> Answer {
    decide(g, f, None).expect("valid instance").answer
}

fn random_order(n: usize, rng: &mut ChaCha8Rng) -> ConvexDrawing {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    ConvexDrawing::new(n, order).unwrap()
}

/// Smallest edge bitmask over all relabelings; pairs indexed in
/// lexicographic order.
fn canonical_mask(n: usize, mask: u32, perms: &[Vec<usize>], pair_index: &[Vec<usize>]) -> u32 {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    perms
        .iter()
        .map(|p| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0u32, |acc, (_, &(a, b))| acc | 1 << pair_index[p[a]][p[b]])
        })
        .min()
        .unwrap()
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    out
}

/// Every graph on up to six vertices, one per isomorphism class, with all
/// edges constrained: the decider must match the oracle, and the number of
/// planar classes must match the known census.
fn criterion_small_graph_catalog() -> Outcome {
    // planar graphs on n unlabeled vertices, n = 1..=6
    const PLANAR_CLASSES: [usize; 6] = [1, 2, 4, 11, 33, 142];
    const ALL_CLASSES: [usize; 6] = [1, 2, 4, 11, 34, 156];
    let mut summary = Vec::new();
    for n in 1..=6 {
        let perms = all_permutations(n);
        let mut pair_index = vec![vec![0; n]; n];
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            pair_index[a][b] = i;
            pair_index[b][a] = i;
        }
        let mut seen = HashSet::new();
        let mut yes = 0;
        for mask in 0u32..1 << pairs.len() {
            if !seen.insert(canonical_mask(n, mask, &perms, &pair_index)) {
                continue;
            }
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            let g = Graph::new(n, &edges).unwrap();
            let f = EdgeSubset::full(g.edge_count());
            let fast = answer(&g, &f);
            let slow = oracle_decide(&g, &f).map_err(|e| format!("oracle failed on n={n} {edges:?}: {e}"))?;
            if fast != slow.answer {
                return Err(format!("n={n} {edges:?}: decider {fast}, oracle {}", slow.answer));
            }
            yes += usize::from(fast.is_yes());
        }
        if seen.len() != ALL_CLASSES[n - 1] || yes != PLANAR_CLASSES[n - 1] {
            return Err(format!(
                "n={n}: {} classes ({} planar), expected {} ({})",
                seen.len(),
                yes,
                ALL_CLASSES[n - 1],
                PLANAR_CLASSES[n - 1]
            ));
        }
        summary.push(format!("n={n}: {yes}/{}", seen.len()));
    }
    Ok(summary.join(", "))
}

fn criterion_random_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    let (mut yes, mut no) = (0, 0);
    for trial in 0..RANDOM_AGREEMENT_TRIALS {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(0..=(n * (n - 1) / 2).min(9));
        let (g, _) = generate(&GeneratorKind::Random { n, m, f: 0 }, rng.gen()).unwrap();
        let f = random_subset(m, &mut rng);
        let fast = answer(&g, &f);
        let slow = oracle_decide(&g, &f).map_err(|e| format!("trial {trial}: oracle failed: {e}"))?;
        if fast != slow.answer {
            return Err(format!("trial {trial}: {:?} F={:?}: decider {fast}, oracle {}", g.edge_list(), f.flags(), slow.answer));
        }
        if fast.is_yes() {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("{RANDOM_AGREEMENT_TRIALS} instances agree ({yes} YES, {no} NO)"))
}

fn criterion_named_instances() -> Outcome {
    let k33 = Graph::complete_bipartite(3, 3);
    let cases = [
        ("K5", k5_family(K5Variant::Full), Answer::No),
        ("K3,3", (k33.clone(), EdgeSubset::full(k33.edge_count())), Answer::No),
        ("K5 minus two disjoint edges", k5_family(K5Variant::MinusTwoDisjoint), Answer::Yes),
        ("K5 minus one edge", k5_family(K5Variant::MinusOneEdge), Answer::No),
    ];
    let mut got = Vec::new();
    for (name, (g, f), expected) in cases {
        let a = answer(&g, &f);
        if a != expected {
            return Err(format!("{name}: expected {expected}, got {a}"));
        }
        got.push(format!("{name} {a}"));
    }
    Ok(got.join(", "))
}

fn criterion_spanning_trees() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7EE);
    for trial in 0..SPANNING_TREE_TRIALS {
        let n = rng.gen_range(1..=12);
        let room = n * (n - 1) / 2 - (n - 1);
        let extra = rng.gen_range(0..=room);
        let (g, f) = spanning_tree_instance(n, extra, &mut rng).unwrap();
        if !answer(&g, &f).is_yes() {
            return Err(format!("trial {trial}: spanning tree instance answered NO"));
        }
    }
    Ok(format!("{SPANNING_TREE_TRIALS} instances all YES"))
}

fn criterion_monotonicity_and_order() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x303);
    let mut checks = 0;
    for trial in 0..MONOTONICITY_TRIALS {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(0..=n * (n - 1) / 2);
        let (g, _) = generate(&GeneratorKind::Random { n, m, f: 0 }, rng.gen()).unwrap();
        let f = EdgeSubset::from_flags((0..m).map(|_| rng.gen_bool(0.7)).collect());
        let base = answer(&g, &f);
        for _ in 0..SUBSETS_PER_INSTANCE {
            let sub = EdgeSubset::from_flags(f.flags().iter().map(|&x| x && rng.gen_bool(0.5)).collect());
            if base.is_yes() && !answer(&g, &sub).is_yes() {
                return Err(format!("trial {trial}: F is YES but a subset is NO"));
            }
            checks += 1;
        }
        for _ in 0..EXTRA_ORDERS {
            let d = random_order(n, &mut rng);
            let a = decide(&g, &f, Some(&d)).unwrap().answer;
            if a != base {
                return Err(format!("trial {trial}: order {:?} gives {a}, identity gives {base}", d.cyclic_order()));
            }
            checks += 1;
        }
    }
    Ok(format!("{MONOTONICITY_TRIALS} instances, {checks} comparisons"))
}

fn criterion_certificates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xCE47);
    let (mut yes, mut no) = (0, 0);
    for trial in 0..500 {
        let n = rng.gen_range(2..=9);
        let m = rng.gen_range(0..=n * (n - 1) / 2);
        let (g, _) = generate(&GeneratorKind::Random { n, m, f: 0 }, rng.gen()).unwrap();
        let f = random_subset(m, &mut rng);
        let d = decide(&g, &f, Some(&random_order(n, &mut rng))).unwrap();
        match d.certificate {
            Some(ref moves) => {
                if !verify_certificate(&g, &f, &d.drawing, moves).unwrap() {
                    return Err(format!("trial {trial}: YES certificate does not verify"));
                }
                yes += 1;
            }
            None => {
                if parity_table(&g, &f, &d.drawing).odd_count() == 0 {
                    return Err(format!("trial {trial}: NO although no pair crosses oddly"));
                }
                if verify_certificate(&g, &f, &d.drawing, &MoveSet::new()).unwrap() {
                    return Err(format!("trial {trial}: NO but the empty move set verifies"));
                }
                no += 1;
            }
        }
    }
    Ok(format!("{yes} certificates verified, {no} NO instances refuted by the empty move set"))
}

fn criterion_scale() -> Outcome {
    let (n, m, fc) = (40, 150, 40);
    let (g, f) = generate(&GeneratorKind::Random { n, m, f: fc }, 40).unwrap();
    let start = Instant::now();
    let d = decide(&g, &f, None).unwrap();
    let elapsed = start.elapsed();
    let s = d.stats;
    let detail = format!(
        "{} in {:.1} ms, {} equations (bound {}), {} variables used (bound {})",
        d.answer,
        elapsed.as_secs_f64() * 1e3,
        s.num_equations,
        fc * m,
        s.num_variables_used,
        m * (n - 2)
    );
    if elapsed < SCALE_TIME_LIMIT && s.num_equations <= fc * m && s.num_variables_used <= m * (n - 2) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Recounts the cells of a wiring diagram from the sets of lines below each
/// point, independently of the sweep used by `cells`.
fn sign_vector_census(w: &WiringDiagram) -> (usize, usize, usize) {
    let k = w.k();
    let mut order: Vec<usize> = (0..k).collect();
    let mut snapshots = vec![order.clone()];
    for &p in w.swaps() {
        order.swap(p, p + 1);
        snapshots.push(order.clone());
    }
    let below = |snap: &[usize], gap: usize| snap[..gap].iter().copied().collect::<BTreeSet<usize>>();
    let mut all = BTreeSet::new();
    let mut unbounded = BTreeSet::new();
    let mut adjacencies = BTreeSet::new();
    let last = snapshots.len() - 1;
    for (t, snap) in snapshots.iter().enumerate() {
        for gap in 0..=k {
            let s = below(snap, gap);
            if t == 0 || t == last || gap == 0 || gap == k {
                unbounded.insert(s.clone());
            }
            if gap < k {
                let mut up = s.clone();
                up.insert(snap[gap]);
                adjacencies.insert((s.clone(), up, snap[gap]));
            }
            all.insert(s);
        }
    }
    (all.len(), all.len() - unbounded.len(), adjacencies.len())
}

fn criterion_arrangements() -> Outcome {
    let mut diagrams = 0;
    for k in 1..=5 {
        for w in WiringDiagram::enumerate_all(k) {
            let c = cells(&w).map_err(|e| format!("{w}: {e:?}"))?;
            let expected = (1 + k + k * (k - 1) / 2, (k - 1) * k.saturating_sub(2) / 2, k * k);
            let recount = sign_vector_census(&w);
            let got = (c.cells.len(), c.bounded_count(), c.segment_adjacencies.len());
            if got != expected || recount != expected {
                return Err(format!("{w}: cells {got:?}, recount {recount:?}, formula {expected:?}"));
            }
            diagrams += 1;
        }
    }
    let mut oracle_checked = 0;
    for k in 1..=3 {
        let diagrams_k = WiringDiagram::enumerate_all(k);
        let w = &diagrams_k[0];
        let inst = build_arrangement_instance(w).map_err(|e| format!("{w}: {e:?}"))?;
        for (e, role) in inst.edge_roles.iter().enumerate() {
            if inst.f.contains(e) == matches!(role, EdgeRole::Pseudoline { .. }) {
                return Err(format!("{w}: edge {e} ({role:?}) has the wrong constraint flag"));
            }
        }
        let gadgets = inst.count_vertices(|r| matches!(r, VertexRole::Gadget { .. }));
        if gadgets != 4 * inst.frame_edges().count() {
            return Err(format!("{w}: {gadgets} gadget vertices"));
        }
        let fast = answer(&inst.graph, &inst.f);
        if k <= 2 {
            let slow = oracle_decide(&inst.graph, &inst.f).map_err(|e| format!("{w}: oracle failed: {e}"))?;
            if slow.answer != fast {
                return Err(format!("{w}: decider {fast}, oracle {}", slow.answer));
            }
            oracle_checked += 1;
        } else if fast != Answer::No {
            return Err(format!("{w}: regression value is NO, got {fast}"));
        }
    }
    Ok(format!(
        "{diagrams} diagrams (k <= 5) match both censuses, {oracle_checked} instances match the oracle, k=3 is NO"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 small graph catalog vs oracle", criterion_small_graph_catalog),
        ("2 random instances vs oracle", criterion_random_agreement),
        ("3 named instances", criterion_named_instances),
        ("4 spanning trees are YES", criterion_spanning_trees),
        ("5 monotonicity and order invariance", criterion_monotonicity_and_order),
        ("6 certificates", criterion_certificates),
        ("7 n=40 m=150 |F|=40 scale", criterion_scale),
        ("8 arrangement cells and instances", criterion_arrangements),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
