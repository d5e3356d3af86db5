//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with its headline numbers (run with `--nocapture` to see
//! them).

use causalbench::config::parse_config;
use causalbench::data::DataSet;
use causalbench::graph::{
    cpdag_of, random_forward_dag, Graph, Mark, RandomDagSpec,
};
use causalbench::harness::{
    aggregate, compare_external, compare_from_files, compare_from_simulations, ComparisonConfig,
    Row, StatisticsSpec,
};
use causalbench::metrics::{
    adjacency_confusion, arrowhead_confusion, structural_hamming_distance, utility, Statistic,
    Weights,
};
use causalbench::oracle::{DsepTest, FisherZTest, SemBicScore};
use causalbench::params::{ParamPoint, ParamValue, ParameterGrid};
use causalbench::registry::{build_variants, AlgorithmSpec};
use causalbench::search::{ges_search, pc_search, PcFlavor};
use causalbench::sim::{sem_simulate, SemModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

fn dag_spec(nodes: usize, avg: f64) -> RandomDagSpec {
    RandomDagSpec {
        num_measures: nodes,
        num_latents: 0,
        avg_degree: avg,
        max_degree: 100,
        max_indegree: 100,
        max_outdegree: 100,
    }
}

/// Criterion 1: the utility formula reproduces the two pinned table rows
/// exactly, in milliseconds.
#[test]
fn acceptance_01_utility_arithmetic() {
    let start = Instant::now();
    let mut w2 = Weights::new();
    w2.insert("AP".to_string(), 1.0);
    w2.insert("AR".to_string(), 0.5);
    let mut v2 = HashMap::new();
    v2.insert("AP".to_string(), 0.980);
    v2.insert("AR".to_string(), 0.677);
    let u2 = utility(&w2, &v2);
    assert!((u2 - 0.659).abs() <= 0.0005, "two-statistic row: {u2}");

    let mut w4 = w2.clone();
    w4.insert("AHP".to_string(), 1.0);
    w4.insert("AHR".to_string(), 0.5);
    let mut v4 = HashMap::new();
    for (k, v) in [("AP", 0.920), ("AR", 0.323), ("AHP", 0.998), ("AHR", 0.814)] {
        v4.insert(k.to_string(), v);
    }
    let u4 = utility(&w4, &v4);
    assert!((u4 - 0.622).abs() <= 0.0005, "four-statistic row: {u4}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_millis() < 1000, "took {elapsed:?}");
    println!("acceptance 01 (utility arithmetic): PASS ({u2:.5}, {u4:.5} in {elapsed:?})");
}

/// Every labeled DAG on four nodes: 3 states per unordered pair, keep the
/// acyclic ones.
fn all_four_node_dags() -> Vec<Graph> {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut dags = Vec::new();
    for code in 0..3usize.pow(6) {
        let mut g = Graph::new(vec!["X1", "X2", "X3", "X4"]).unwrap();
        let mut c = code;
        for &(a, b) in &pairs {
            match c % 3 {
                0 => {}
                1 => g.add_directed(a, b).unwrap(),
                _ => g.add_directed(b, a).unwrap(),
            }
            c /= 3;
        }
        if g.is_dag() {
            dags.push(g);
        }
    }
    dags
}

type ClassKey = (BTreeSet<(usize, usize)>, BTreeSet<(usize, usize, usize)>);

fn class_key(g: &Graph) -> ClassKey {
    let skeleton: BTreeSet<(usize, usize)> = g.edges().map(|e| (e.a, e.b)).collect();
    let mut colliders = BTreeSet::new();
    for y in 0..g.node_count() {
        let parents = g.parents_of(y);
        for (i, &p) in parents.iter().enumerate() {
            for &q in &parents[i + 1..] {
                if !g.is_adjacent(p, q) {
                    colliders.insert((p.min(q), y, p.max(q)));
                }
            }
        }
    }
    (skeleton, colliders)
}

/// Criterion 2: pattern computation matches a brute-force equivalence-class
/// union over all 543 labeled 4-node DAGs, exactly, within ten seconds.
#[test]
fn acceptance_02_cpdag_matches_brute_force_enumeration() {
    let start = Instant::now();
    let dags = all_four_node_dags();
    assert_eq!(dags.len(), 543);

    let mut classes: BTreeMap<ClassKey, Vec<usize>> = BTreeMap::new();
    for (i, dag) in dags.iter().enumerate() {
        classes.entry(class_key(dag)).or_default().push(i);
    }
    // Per class: an edge is directed in the union exactly when every member
    // orients it the same way.
    for members in classes.values() {
        let first = &dags[members[0]];
        let mut union = first.skeleton();
        for e in first.edges() {
            let (s, t) = (e.source().unwrap(), e.target().unwrap());
            if members.iter().all(|&m| dags[m].has_directed(s, t)) {
                union.orient(s, t).unwrap();
            }
        }
        for &m in members {
            assert_eq!(
                cpdag_of(&dags[m]).unwrap(),
                union,
                "member {m} disagrees with its class union"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}");
    println!(
        "acceptance 02 (pattern vs brute force): PASS (543 DAGs, {} classes in {elapsed:?})",
        classes.len()
    );
}

/// Criterion 3: all four PC variants under the graph oracle recover the
/// true pattern exactly on 200 seeded random DAGs within thirty seconds.
#[test]
fn acceptance_03_oracle_recovery_for_the_pc_family() {
    let start = Instant::now();
    for seed in 0..200u64 {
        let nodes = 4 + (seed as usize % 7); // 4..=10
        let avg = 1.5 + (seed % 4) as f64 * 0.5; // 1.5..=3.0
        let dag = random_forward_dag(&dag_spec(nodes, avg), 7000 + seed);
        let truth = cpdag_of(&dag).unwrap();
        let names: Vec<String> = dag.names().to_vec();
        let test = DsepTest::new(&dag, &names).unwrap();
        for flavor in [PcFlavor::Pc, PcFlavor::PcStable, PcFlavor::Cpc, PcFlavor::CpcStable] {
            let out = pc_search(flavor, &test, &names, -1, None).unwrap();
            assert_eq!(out.graph, truth, "seed {seed}, {flavor:?}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
    println!("acceptance 03 (oracle recovery x 800 searches): PASS ({elapsed:?})");
}

fn skeleton_edge_names(g: &Graph) -> BTreeSet<(String, String)> {
    g.edges()
        .map(|e| {
            let (a, b) = (g.name_of(e.a).to_string(), g.name_of(e.b).to_string());
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

/// Criterion 4: the PC-stable skeleton is invariant under twenty random
/// column permutations of a fixed 15-node dataset.
#[test]
fn acceptance_04_pc_stable_order_independence() {
    let dag = random_forward_dag(&dag_spec(15, 3.0), 424_242);
    let mut point = ParamPoint::new();
    point.insert("sampleSize", ParamValue::Int(500));
    let data = sem_simulate(&dag, &point, 17).unwrap();

    let run = |d: &DataSet| -> BTreeSet<(String, String)> {
        let names = d.names();
        let test = FisherZTest::new(d, 0.01).unwrap();
        let out = pc_search(PcFlavor::PcStable, &test, &names, -1, None).unwrap();
        skeleton_edge_names(&out.graph)
    };
    let reference = run(&data);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for perm_index in 0..20 {
        let mut order: Vec<usize> = (0..data.n_vars()).collect();
        use rand::seq::SliceRandom;
        order.shuffle(&mut rng);
        let permuted = data.reorder_columns(&order);
        assert_eq!(run(&permuted), reference, "permutation {perm_index}");
    }
    println!(
        "acceptance 04 (order independence): PASS ({} skeleton edges stable over 20 permutations)",
        reference.len()
    );
}

/// Criterion 5: at desk scale the conservative-stable variant beats plain
/// PC on arrowhead precision in at least nine of ten repetitions.
#[test]
fn acceptance_05_conservative_orientation_improves_arrowhead_precision() {
    let mut wins = 0;
    let mut deltas = Vec::new();
    for master in 0..10u64 {
        let mean_ahp = |flavor: PcFlavor| -> f64 {
            let mut values = Vec::new();
            for run in 0..10u64 {
                let dag = random_forward_dag(&dag_spec(20, 4.0), 90_000 + master * 100 + run);
                let mut point = ParamPoint::new();
                point.insert("sampleSize", ParamValue::Int(500));
                let data = sem_simulate(&dag, &point, 60_000 + master * 100 + run).unwrap();
                let names = data.names();
                let test = FisherZTest::new(&data, 1e-3).unwrap();
                let est = pc_search(flavor, &test, &names, -1, None).unwrap().graph;
                let cmp = cpdag_of(&dag).unwrap();
                let c = arrowhead_confusion(&cmp, &est).unwrap();
                let ahp = c.tp as f64 / (c.tp + c.fp) as f64;
                values.push(ahp);
            }
            aggregate(&values).0
        };
        let pc = mean_ahp(PcFlavor::Pc);
        let cpc_stable = mean_ahp(PcFlavor::CpcStable);
        deltas.push(cpc_stable - pc);
        if cpc_stable > pc {
            wins += 1;
        }
    }
    assert!(wins >= 9, "conservative-stable won only {wins}/10 repetitions ({deltas:?})");
    println!("acceptance 05 (AHP gap, desk scale): PASS ({wins}/10 wins, deltas {deltas:.3?})");
}

/// Criterion 6: greedy equivalence search at large samples reaches mean
/// adjacency F1 of at least 0.95 with a monotone forward phase.
#[test]
fn acceptance_06_ges_large_sample_consistency() {
    let mut f1s = Vec::new();
    for seed in 0..10u64 {
        let dag = random_forward_dag(&dag_spec(10, 2.0), 3_000 + seed);
        let mut point = ParamPoint::new();
        point.insert("sampleSize", ParamValue::Int(50_000));
        let data = sem_simulate(&dag, &point, 4_000 + seed).unwrap();
        let score = SemBicScore::new(&data, 1.0).unwrap();
        let (est, trace) = ges_search(&score, &data.names(), None).unwrap();
        for w in trace.step_scores.windows(2) {
            assert!(w[1] > w[0], "seed {seed}: non-improving operator applied");
        }
        let cmp = cpdag_of(&dag).unwrap();
        let c = adjacency_confusion(&cmp, &est).unwrap();
        let precision = c.tp as f64 / (c.tp + c.fp) as f64;
        let recall = c.tp as f64 / (c.tp + c.fn_) as f64;
        f1s.push(2.0 * precision * recall / (precision + recall));
    }
    let mean = f1s.iter().sum::<f64>() / f1s.len() as f64;
    assert!(mean >= 0.95, "mean adjacency F1 {mean} < 0.95 ({f1s:?})");
    println!("acceptance 06 (greedy search consistency): PASS (mean F1 {mean:.3})");
}

const GOLDEN_CONFIG: &str = "\
[parameters]
numRuns = 3
numMeasures = 6
avgDegree = 2
sampleSize = 80, 150

[simulations]
sem: graph = random_forward

[algorithms]
pc: test = fisher_z
cpc_stable: test = fisher_z

[statistics]
param(avgDegree)
AP weight=1.0
AR weight=0.5
AHP
McAdj
F1Adj
SHD

[options]
sortByUtility = true
showUtilities = true
masterSeed = 31
";

fn run_golden_comparison(out: &std::path::Path) -> causalbench::harness::ComparisonOutcome {
    let cfg = parse_config(GOLDEN_CONFIG).unwrap();
    compare_from_simulations(
        out,
        &cfg.simulation_styles().unwrap(),
        &cfg.build_variants().unwrap(),
        &cfg.statistics_spec().unwrap(),
        &cfg.grid,
        &cfg.comparison_config(None),
    )
    .unwrap()
}

fn mask_timestamp(report: &str) -> String {
    let mut lines: Vec<&str> = report.lines().collect();
    if !lines.is_empty() {
        lines[0] = "<timestamp>";
    }
    lines.join("\n") + "\n"
}

/// Criterion 7: report format. Single-run deviations print NaN, the three
/// tables share one row order, utility sorting orders the rows, and a fully
/// seeded comparison reproduces the golden file byte for byte (timestamp
/// masked).
#[test]
fn acceptance_07_report_format_and_golden_file() {
    // Single-run comparison: every SD cell prints NaN.
    let single = "\
[parameters]
numRuns = 1
numMeasures = 5
avgDegree = 2
sampleSize = 60

[simulations]
sem: graph = random_forward

[algorithms]
pc: test = fisher_z

[statistics]
AP
AR
SHD

[options]
masterSeed = 9
";
    let cfg = parse_config(single).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let outcome = compare_from_simulations(
        &tmp.path().join("single"),
        &cfg.simulation_styles().unwrap(),
        &cfg.build_variants().unwrap(),
        &cfg.statistics_spec().unwrap(),
        &cfg.grid,
        &cfg.comparison_config(None),
    )
    .unwrap();
    let sd_section = outcome
        .report
        .split("STANDARD DEVIATIONS")
        .nth(1)
        .unwrap()
        .split("WORST CASE")
        .next()
        .unwrap();
    let data_row = sd_section.lines().find(|l| l.trim().starts_with('1')).unwrap();
    let cells: Vec<&str> = data_row.split_whitespace().collect();
    assert_eq!(&cells[1..], &["NaN", "NaN", "NaN"], "row: {data_row}");

    // Golden comparison: sorted by utility, shared row order, frozen bytes.
    let outcome = run_golden_comparison(&tmp.path().join("golden"));
    let mut utilities: Vec<f64> = outcome.rows.iter().map(|r| r.utility).collect();
    let mut sorted = utilities.clone();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    assert_eq!(utilities, sorted, "rows must be sorted by descending utility");
    utilities.dedup();

    let first_columns = |title: &str| -> Vec<String> {
        outcome
            .report
            .split(title)
            .nth(1)
            .unwrap()
            .lines()
            .skip_while(|l| !l.trim_start().starts_with("Alg"))
            .skip(1)
            .take(outcome.rows.len())
            .map(|l| {
                let mut it = l.split_whitespace();
                format!("{}/{}", it.next().unwrap(), it.next().unwrap())
            })
            .collect()
    };
    let avg_order = first_columns("AVERAGE STATISTICS");
    assert_eq!(avg_order, first_columns("STANDARD DEVIATIONS"));
    assert_eq!(avg_order, first_columns("WORST CASE"));

    let masked = mask_timestamp(&outcome.report);
    let golden = include_str!("golden/comparison_report.txt");
    assert_eq!(masked, golden, "report drifted from the golden file");
    println!("acceptance 07 (report format + golden file): PASS");
}

fn row_key(r: &Row) -> (usize, usize) {
    (r.sim_index, r.alg_index)
}

/// Criterion 8: the save-then-compare route reproduces the in-memory route
/// statistic for statistic, and saved files round-trip byte for byte.
#[test]
fn acceptance_08_file_round_trips() {
    let config_text = "\
[parameters]
numRuns = 4
numMeasures = 7
avgDegree = 2
sampleSize = 120, 200

[simulations]
sem: graph = random_forward

[algorithms]
pc: test = fisher_z
ges: score = sem_bic

[statistics]
AP
AR
AHP
AHR
McAdj
McArrow
F1Adj
F1Arrow
SHD

[options]
masterSeed = 77
";
    let cfg = parse_config(config_text).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path().join("comparison");
    causalbench::harness::save_to_files(
        &root,
        &cfg.simulation_styles().unwrap(),
        &cfg.grid,
        cfg.comparison_config(None).master_seed,
    )
    .unwrap();

    // Saved graph and data files re-render byte for byte.
    for save in ["save1", "save2"] {
        for run in 1..=4 {
            let graph_path = root.join(save).join("graph").join(format!("graph.{run}.txt"));
            let text = std::fs::read_to_string(&graph_path).unwrap();
            let parsed = causalbench::graph::parse_graph_text(&text).unwrap();
            assert_eq!(causalbench::graph::render_graph_text(&parsed), text);
            let data_path = root.join(save).join("data").join(format!("data.{run}.txt"));
            let text = std::fs::read_to_string(&data_path).unwrap();
            let parsed = causalbench::data::load_tabular(&text, None).unwrap();
            assert_eq!(causalbench::data::save_tabular(&parsed), text);
        }
    }

    let from_files = compare_from_files(
        &root,
        &cfg.build_variants().unwrap(),
        &cfg.statistics_spec().unwrap(),
        &cfg.grid,
        &cfg.comparison_config(None),
    )
    .unwrap();
    let in_memory = compare_from_simulations(
        &tmp.path().join("mem"),
        &cfg.simulation_styles().unwrap(),
        &cfg.build_variants().unwrap(),
        &cfg.statistics_spec().unwrap(),
        &cfg.grid,
        &cfg.comparison_config(None),
    )
    .unwrap();

    let mut a: Vec<&Row> = from_files.rows.iter().collect();
    let mut b: Vec<&Row> = in_memory.rows.iter().collect();
    a.sort_by_key(|r| row_key(r));
    b.sort_by_key(|r| row_key(r));
    assert_eq!(a.len(), b.len());
    for (ra, rb) in a.iter().zip(&b) {
        assert_eq!(row_key(ra), row_key(rb));
        // Elapsed time is wall clock and re-measured per route; every other
        // statistic must agree to within 1e-12.
        for (abbrev, &va) in &ra.means {
            if abbrev == "E" {
                continue;
            }
            let vb = rb.means[abbrev];
            assert!(
                (va - vb).abs() <= 1e-12 || (va.is_nan() && vb.is_nan()),
                "{abbrev} differs on {:?}: {va} vs {vb}",
                row_key(ra)
            );
        }
    }
    println!("acceptance 08 (save/load round trip): PASS ({} rows matched)", a.len());
}

/// Criterion 9: matrix-file decoding semantics and the missing-elapsed
/// sentinel, exercised through the external comparison route.
#[test]
fn acceptance_09_external_ingestion() {
    let tmp = tempfile::tempdir().unwrap();
    let data_root = tmp.path().join("data");
    let config_text = "\
[parameters]
numRuns = 1
numMeasures = 2
avgDegree = 1
sampleSize = 30

[simulations]
sem: graph = random_forward

[algorithms]
external_matrix: dir = tool_directed
external_matrix: dir = tool_undirected

[statistics]
AP
AHP
AHR
E

[options]
masterSeed = 3
comparisonGraph = true_dag
";
    let cfg = parse_config(config_text).unwrap();
    causalbench::harness::save_to_files(
        &data_root,
        &cfg.simulation_styles().unwrap(),
        &cfg.grid,
        3,
    )
    .unwrap();
    // The seeded 2-node DAG: find its single directed edge.
    let truth = causalbench::graph::parse_graph_text(
        &std::fs::read_to_string(data_root.join("save1/graph/graph.1.txt")).unwrap(),
    )
    .unwrap();
    let edge = truth.edges().next().expect("avgDegree 1 on 2 nodes yields one edge");
    let (src, dst) = (edge.source().unwrap(), edge.target().unwrap());

    // Matrix encoding of exactly that edge: m[dst][src] = 1, mirror 0.
    let mut matrix = vec![vec![0u8; 2]; 2];
    matrix[dst][src] = 1;
    let body: String = matrix
        .iter()
        .map(|row| row.iter().map(u8::to_string).collect::<Vec<_>>().join("\t"))
        .collect::<Vec<_>>()
        .join("\n");
    let header = truth.names().join("\t");
    for (dir, content) in [
        ("tool_directed", format!("{header}\n{body}\n")),
        ("tool_undirected", format!("{header}\n0\t1\n1\t0\n")),
    ] {
        let path = data_root.join("results").join(dir).join("1").join("graph.1.txt");
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(path, content).unwrap();
    }
    // Elapsed present for the first tool only.
    let elapsed = data_root.join("elapsed/tool_directed/1/graph.1.txt");
    std::fs::create_dir_all(elapsed.parent().unwrap()).unwrap();
    std::fs::write(elapsed, "2644\n").unwrap();

    let outcome = compare_external(
        &data_root,
        &tmp.path().join("out"),
        &cfg.build_variants().unwrap(),
        &cfg.statistics_spec().unwrap(),
        &cfg.grid,
        &cfg.comparison_config(None),
    )
    .unwrap();
    let directed = outcome.rows.iter().find(|r| r.alg_index == 0).unwrap();
    let undirected = outcome.rows.iter().find(|r| r.alg_index == 1).unwrap();
    // The directed decoding reproduces the true DAG exactly.
    assert_eq!(directed.means["AP"], 1.0);
    assert_eq!(directed.means["AHP"], 1.0);
    assert_eq!(directed.means["AHR"], 1.0);
    assert_eq!(directed.means["E"], 2.644);
    // The symmetric decoding keeps the adjacency but drops the arrowhead,
    // and its missing elapsed file maps to the sentinel.
    assert_eq!(undirected.means["AP"], 1.0);
    assert!(undirected.means["AHP"].is_nan());
    assert_eq!(undirected.means["AHR"], 0.0);
    assert_eq!(undirected.means["E"], -99.0);
    assert!(outcome.report.contains("-99.000"), "sentinel must reach the E column");
    println!("acceptance 09 (external ingestion): PASS");
}

struct PlainEdge {
    a: usize,
    b: usize,
    mark_a: Mark,
    mark_b: Mark,
}

/// Independent recount over a plain edge list.
fn naive_counts(p: usize, cmp: &[PlainEdge], est: &[PlainEdge]) -> (u64, u64, u64, u64, u64, u64, u64, u64, u64) {
    let adjacent = |edges: &[PlainEdge], a: usize, b: usize| {
        edges.iter().any(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
    };
    let arrow_at = |edges: &[PlainEdge], a: usize, b: usize| {
        edges.iter().any(|e| {
            (e.a == a && e.b == b && e.mark_b == Mark::Arrow)
                || (e.a == b && e.b == a && e.mark_a == Mark::Arrow)
        })
    };
    let marks = |edges: &[PlainEdge], a: usize, b: usize| -> Option<(Mark, Mark)> {
        edges.iter().find_map(|e| {
            if e.a == a && e.b == b {
                Some((e.mark_a, e.mark_b))
            } else if e.a == b && e.b == a {
                Some((e.mark_b, e.mark_a))
            } else {
                None
            }
        })
    };
    let (mut atp, mut afp, mut afn, mut atn) = (0, 0, 0, 0);
    let mut shd = 0;
    for a in 0..p {
        for b in (a + 1)..p {
            match (adjacent(cmp, a, b), adjacent(est, a, b)) {
                (true, true) => atp += 1,
                (false, true) => afp += 1,
                (true, false) => afn += 1,
                (false, false) => atn += 1,
            }
            if marks(cmp, a, b) != marks(est, a, b) {
                shd += 1;
            }
        }
    }
    let (mut htp, mut hfp, mut hfn, mut htn) = (0, 0, 0, 0);
    for a in 0..p {
        for b in 0..p {
            if a == b {
                continue;
            }
            match (arrow_at(cmp, a, b), arrow_at(est, a, b)) {
                (true, true) => htp += 1,
                (false, true) => hfp += 1,
                (true, false) => hfn += 1,
                (false, false) => htn += 1,
            }
        }
    }
    (atp, afp, afn, atn, htp, hfp, hfn, htn, shd)
}

fn random_mixed_graph(p: usize, rng: &mut ChaCha8Rng) -> (Graph, Vec<PlainEdge>) {
    let names: Vec<String> = (1..=p).map(|i| format!("X{i}")).collect();
    let mut g = Graph::new(names).unwrap();
    let mut edges = Vec::new();
    for a in 0..p {
        for b in (a + 1)..p {
            let (mark_a, mark_b) = match rng.gen_range(0..10) {
                0 | 1 => (Mark::Tail, Mark::Arrow),
                2 | 3 => (Mark::Arrow, Mark::Tail),
                4 => (Mark::Tail, Mark::Tail),
                5 => (Mark::Arrow, Mark::Arrow),
                _ => continue,
            };
            match (mark_a, mark_b) {
                (Mark::Tail, Mark::Arrow) => g.add_directed(a, b).unwrap(),
                (Mark::Arrow, Mark::Tail) => g.add_directed(b, a).unwrap(),
                (Mark::Tail, Mark::Tail) => g.add_undirected(a, b).unwrap(),
                (Mark::Arrow, Mark::Arrow) => g.add_bidirected(a, b).unwrap(),
            }
            edges.push(PlainEdge { a, b, mark_a, mark_b });
        }
    }
    (g, edges)
}

/// Criterion 10: confusion counts, SHD, Matthews correlation, and F1 agree
/// exactly with a naive recount on 500 random graph pairs.
#[test]
fn acceptance_10_statistics_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    for trial in 0..500 {
        let p = rng.gen_range(2..=6);
        let (cmp, cmp_edges) = random_mixed_graph(p, &mut rng);
        let (est, est_edges) = random_mixed_graph(p, &mut rng);
        let (atp, afp, afn, atn, htp, hfp, hfn, htn, shd) =
            naive_counts(p, &cmp_edges, &est_edges);
        let a = adjacency_confusion(&cmp, &est).unwrap();
        assert_eq!((a.tp, a.fp, a.fn_, a.tn), (atp, afp, afn, atn), "trial {trial}");
        let h = arrowhead_confusion(&cmp, &est).unwrap();
        assert_eq!((h.tp, h.fp, h.fn_, h.tn), (htp, hfp, hfn, htn), "trial {trial}");
        assert_eq!(structural_hamming_distance(&cmp, &est).unwrap(), shd, "trial {trial}");

        // Matthews and F1 recomputed from the naive counts.
        let naive_mcc = {
            let den = ((atp + afp) as f64 * (atp + afn) as f64 * (atn + afp) as f64
                * (atn + afn) as f64)
                .sqrt();
            if den == 0.0 {
                0.0
            } else {
                (atp as f64 * atn as f64 - afp as f64 * afn as f64) / den
            }
        };
        let mcc = causalbench::metrics::MatthewsCorrAdjacency.value(&cmp, &est, 0.0);
        assert!(
            (mcc - naive_mcc).abs() < 1e-12 || (mcc.is_nan() && naive_mcc.is_nan()),
            "trial {trial}: {mcc} vs {naive_mcc}"
        );
        let naive_f1 = {
            let prec = atp as f64 / (atp + afp) as f64;
            let rec = atp as f64 / (atp + afn) as f64;
            if prec + rec == 0.0 {
                0.0
            } else {
                2.0 * prec * rec / (prec + rec)
            }
        };
        let f1 = causalbench::metrics::F1Adjacency.value(&cmp, &est, 0.0);
        assert!(
            (f1 - naive_f1).abs() < 1e-12 || (f1.is_nan() && naive_f1.is_nan()),
            "trial {trial}: {f1} vs {naive_f1}"
        );
    }
    println!("acceptance 10 (statistics vs brute force): PASS (500 pairs)");
}

/// Criterion 11: simulated moments. A unit-coefficient two-node model shows
/// the analytic correlation; empirical conditional frequencies track the
/// drawn conditional tables within three standard errors.
#[test]
fn acceptance_11_simulation_moments() {
    // Linear Gaussian: X -> Y, b = 1, unit variances: corr = 1/sqrt(2).
    let mut g = Graph::new(vec!["X", "Y"]).unwrap();
    g.add_directed(0, 1).unwrap();
    let mut coefficients = BTreeMap::new();
    coefficients.insert((0usize, 1usize), 1.0);
    let model = SemModel::with_parameters(&g, coefficients, vec![1.0, 1.0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let data = model.simulate(100_000, &mut rng);
    let corr = causalbench::data::correlation_matrix(&data).unwrap().get(0, 1);
    assert!((corr - 0.707).abs() < 0.01, "corr {corr}");

    // Multinomial: conditional frequencies within 3 sigma of the drawn CPT.
    let mut g = Graph::new(vec!["P", "Y"]).unwrap();
    g.add_directed(0, 1).unwrap();
    let mut point = ParamPoint::new();
    point.insert("sampleSize", ParamValue::Int(100_000));
    point.insert("numCategories", ParamValue::Int(3));
    let (model, data) = causalbench::sim::bayes_net_simulate_model(&g, &point, 11).unwrap();
    let pv = data.discrete(0).unwrap();
    let yv = data.discrete(1).unwrap();
    let mut worst_sigma = 0.0f64;
    for parent in 0..3usize {
        let rows: Vec<usize> = (0..pv.len()).filter(|&r| pv[r] == parent).collect();
        let n = rows.len() as f64;
        for cat in 0..3usize {
            let freq = rows.iter().filter(|&&r| yv[r] == cat).count() as f64 / n;
            let prob = model.cpt(1)[parent][cat];
            let sigma = (prob * (1.0 - prob) / n).sqrt();
            let devs = (freq - prob).abs() / sigma.max(1e-12);
            worst_sigma = worst_sigma.max(devs);
            assert!(devs <= 3.0, "parent {parent} cat {cat}: {devs:.2} sigma");
        }
    }
    println!(
        "acceptance 11 (simulation moments): PASS (corr {corr:.4}, worst CPT deviation {worst_sigma:.2} sigma)"
    );
}

/// Desk-scale comparison cells must be identical whichever way a
/// comparison is assembled; also covers variant grids expanding into the
/// documented twelve-variant catalog.
#[test]
fn acceptance_support_variant_grid_counts() {
    let mut grid = ParameterGrid::new();
    grid.set(
        "alpha",
        vec![ParamValue::Real(1e-4), ParamValue::Real(1e-3), ParamValue::Real(1e-2)],
    );
    let mut specs = Vec::new();
    for id in ["pc", "cpc", "pc_stable", "cpc_stable"] {
        let mut s = AlgorithmSpec::new(id);
        s.test = Some("fisher_z".to_string());
        specs.push(s);
    }
    let variants = build_variants(&specs, &grid).unwrap();
    assert_eq!(variants.len(), 12);
    assert!(variants[0].description().ends_with("alpha = 1.0E-4"));
    let _ = StatisticsSpec::standard();
    let _ = ComparisonConfig::default();
    println!("acceptance support (variant grid): PASS");
}

/// Soft, non-gating check: at full scale (100 nodes,
/// average degree 4, N = 500, alpha = 1e-4) the adjacency precision and
/// recall of plain PC and conservative-stable PC are logged next to
/// reference values from an earlier large benchmark of the same
/// configurations. Graph internals differ across implementations, so this
/// logs deviations instead of failing on them.
#[test]
fn soft_full_scale_reproduction() {
    // (flavor, reference AP, reference AR) at sampleSize 500.
    let references =
        [(PcFlavor::Pc, 0.914, 0.572), (PcFlavor::CpcStable, 0.948, 0.561)];
    let runs = 10u64;
    for (flavor, ref_ap, ref_ar) in references {
        let mut aps = Vec::new();
        let mut ars = Vec::new();
        for run in 0..runs {
            let dag = random_forward_dag(&dag_spec(100, 4.0), 510_000 + run);
            let mut point = ParamPoint::new();
            point.insert("sampleSize", ParamValue::Int(500));
            let data = sem_simulate(&dag, &point, 520_000 + run).unwrap();
            let names = data.names();
            let test = FisherZTest::new(&data, 1e-4).unwrap();
            let est = pc_search(flavor, &test, &names, -1, None).unwrap().graph;
            let cmp = cpdag_of(&dag).unwrap();
            let c = adjacency_confusion(&cmp, &est).unwrap();
            aps.push(c.tp as f64 / (c.tp + c.fp) as f64);
            ars.push(c.tp as f64 / (c.tp + c.fn_) as f64);
        }
        let ap = aggregate(&aps).0;
        let ar = aggregate(&ars).0;
        let ap_ok = (ap - ref_ap).abs() <= 0.05;
        let ar_ok = (ar - ref_ar).abs() <= 0.05;
        println!(
            "soft full-scale {flavor:?}: AP {ap:.3} (ref {ref_ap}, within 0.05: {ap_ok}), \
             AR {ar:.3} (ref {ref_ar}, within 0.05: {ar_ok})"
        );
    }
    println!("soft full-scale reproduction: LOGGED (non-gating)");
}
