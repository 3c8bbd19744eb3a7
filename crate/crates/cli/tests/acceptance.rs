//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use drcayley::cayley::{
    adjacency_eigenvalues, check_distance_regular, partition_from_normal_subgroup, quotient_eigenvalues_contained_in,
    verify_bipartite_d3_spectrum,
};
use drcayley::design::verify_symmetric_design;
use drcayley::diffset::{reversal_condition_holds, search_difference_sets, SearchOptions};
use drcayley::group::spec::parse_group_spec;
use drcayley::harness::{
    cayley_from_lemma_data, cayley_to_difference_set, classify_case, difference_set_to_cayley, examine_equivalence,
    explicit_correspondence, find_isomorphism, identity_part, incidence_graph_isomorphic_to_cayley,
    reconstruction_isomorphism, translated_set, verify_projective_plane_theorem, CaseTag, Correspondence,
    HarnessError, LocalSubgroup,
};
use drcayley::{build_cayley, CayleyGraph, DifferenceSet, FiniteGroup, Graph, IntersectionArray, Params};
use drcayley_cli::run_captured;
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{what} took {took:?}, limit {limit:?}"));
    }
    Ok(())
}

struct Instance {
    label: String,
    cayley: CayleyGraph,
}

fn explicit(spec: &str, set: &str) -> Instance {
    let g = parse_group_spec(spec).unwrap();
    let s = g.parse_elements(set).unwrap();
    Instance { label: format!("{spec} {{{set}}}"), cayley: build_cayley(&g, &s).unwrap() }
}

fn from_difference_set(spec: &str, ds: &DifferenceSet) -> Instance {
    let rebuilt = difference_set_to_cayley(ds).unwrap();
    Instance { label: format!("Dih({spec}) D={:?}", ds.names()), cayley: rebuilt.cayley }
}

/// Certified non-trivial bipartite diameter-3 instances, all of order at most 64.
fn corpus() -> Vec<Instance> {
    let mut out = vec![
        explicit("Dih(Z7)", "1c,2c,4c"),
        explicit("Dih(Z7)", "0c,3c,5c,6c"),
        explicit("Z2xD8xZ2", "(1,r0,0),(1,r0,1),(1,r1,0),(1,r3,0),(1,r0·s,0),(1,r2·s,1)"),
        explicit("Z2xZ4xZ4", "(1,0,0),(1,0,1),(1,0,3),(1,1,0),(1,2,2),(1,3,0)"),
    ];
    let opts = SearchOptions { dedup_translates: true, ..Default::default() };
    for (spec, k, mu) in [
        ("Z11", 5, 2),
        ("Z13", 4, 1),
        ("Z15", 7, 3),
        ("Z21", 5, 1),
        ("Z2xZ2xZ2xZ2", 6, 2),
        ("Z4xZ4", 6, 2),
        ("Z2xZ2xZ4", 6, 2),
    ] {
        let h = parse_group_spec(spec).unwrap();
        let found = search_difference_sets(&h, k, mu, &opts).unwrap();
        for ds in found.sets.iter().take(2) {
            out.push(from_difference_set(spec, ds));
        }
        if spec == "Z13" {
            out.push(from_difference_set(spec, &found.sets[0].complement().unwrap()));
        }
    }
    out
}

fn params_of(c: &CayleyGraph) -> Params {
    let n = c.group().order() / 2;
    let k = c.valency();
    Params::new(n, k, k * (k - 1) / (n - 1))
}

/// `d₁d₂⁻¹` counts over a subset of `g`; `Some(mu)` if constant off the identity.
fn brute_mu(g: &FiniteGroup, d: &[usize]) -> Option<usize> {
    let mut counts = vec![0usize; g.order()];
    for (&x, &y) in d.iter().cartesian_product(d) {
        if x != y {
            counts[g.multiply(x, g.inverse(y))] += 1;
        }
    }
    let rest: Vec<usize> = g.elements().filter(|&x| x != g.identity()).map(|x| counts[x]).collect();
    rest.iter().all(|&c| c == rest[0]).then(|| rest[0])
}

fn dense(g: &Graph) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    (0..n).map(|i| (0..n).map(|j| g.has_edge(i, j) as i64).collect()).collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

fn shifted(a: &[Vec<i64>], c: i64) -> Vec<Vec<i64>> {
    let mut m = a.to_vec();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= c;
    }
    m
}

fn c1_fano_heawood() -> Outcome {
    let start = Instant::now();
    let z7 = FiniteGroup::cyclic(7).unwrap();
    let oracle: Vec<Vec<usize>> = (0..7).combinations(3).filter(|d| brute_mu(&z7, d) == Some(1)).collect();
    let scanned = (0..7).combinations(3).count();
    ensure!(scanned == 35, "scanned {scanned} subsets");
    let found = search_difference_sets(&z7, 3, 1, &SearchOptions::default()).map_err(|e| e.to_string())?;
    let found_sets: Vec<Vec<usize>> = found.sets.iter().map(|d| d.members().to_vec()).collect();
    ensure!(found_sets == oracle, "search {found_sets:?} vs oracle {oracle:?}");
    let heawood_array = IntersectionArray::new(vec![3, 2, 2], vec![1, 1, 3]).unwrap();
    let dih = FiniteGroup::generalized_dihedral(&z7).unwrap();
    let c = dih.complement_generator();
    for ds in &found.sets {
        let design = ds.development().map_err(|e| e.to_string())?;
        let p = verify_symmetric_design(7, design.blocks()).map_err(|e| e.to_string())?;
        ensure!(p == Params::new(7, 3, 1), "development gives {p}");
        let s: Vec<usize> = ds.members().iter().map(|&x| dih.multiply(x, c)).collect();
        let cayley = build_cayley(&dih, &s).unwrap();
        for (what, g) in [("incidence graph", design.incidence_graph()), ("Cayley graph", cayley.graph().clone())] {
            let array = check_distance_regular(&g).map_err(|e| e.to_string())?;
            ensure!(array.as_ref() == Some(&heawood_array), "{what}: {array:?}");
            ensure!(g.girth().value() == Some(6), "{what}: girth {:?}", g.girth());
            ensure!(g.vertex_count() == 14, "{what}: {} vertices", g.vertex_count());
            ensure!(heawood_array.k_sequence() == [1, 3, 6, 4], "K-sequence");
            let k_seq: Vec<usize> =
                g.distances_from(0).iter().counts().into_iter().sorted().map(|(_, n)| n).collect();
            ensure!(k_seq == [1, 3, 6, 4], "{what}: distance profile {k_seq:?}");
        }
        let labels: Vec<usize> = (0..7).collect();
        let w = explicit_correspondence(&design, &cayley, &labels)
            .ok_or_else(|| format!("no explicit correspondence for {:?}", ds.members()))?;
        ensure!(!matches!(w.correspondence, Correspondence::Search), "fell back to search");
        ensure!(design.incidence_graph().is_isomorphism(cayley.graph(), &w.map), "map not edge-preserving");
    }
    within(start, Duration::from_secs(1), "pipeline")?;
    Ok(format!("{} sets of 35 subsets, all maps explicit, {:?}", oracle.len(), start.elapsed()))
}

fn c2_spectrum(corpus: &[Instance]) -> Outcome {
    for inst in corpus {
        let Params { n, k, mu } = params_of(&inst.cayley);
        let graph = inst.cayley.graph();
        let id = verify_bipartite_d3_spectrum(graph, k as u64, mu as u64, n)
            .map_err(|e| format!("{}: {e}", inst.label))?;
        ensure!(id.trace_a == 0 && id.trace_a_squared == (2 * n * k) as i64, "{}: traces", inst.label);
        // independent dense check
        let a = dense(graph);
        let a2 = matmul(&a, &a);
        let p = matmul(&shifted(&a2, (k * k) as i64), &shifted(&a2, (k - mu) as i64));
        ensure!(p.iter().flatten().all(|&x| x == 0), "{}: dense product nonzero", inst.label);
        let tr: i64 = (0..2 * n).map(|i| a[i][i]).sum();
        let tr2: i64 = (0..2 * n).map(|i| a2[i][i]).sum();
        ensure!(tr == 0 && tr2 == (2 * n * k) as i64, "{}: dense traces", inst.label);
    }
    Ok(format!("{} instances", corpus.len()))
}

fn c3_c2_formula(corpus: &[Instance]) -> Outcome {
    for inst in corpus {
        let array = check_distance_regular(inst.cayley.graph())
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{}: not DRG", inst.label))?;
        let k = inst.cayley.valency() as u64;
        let order = inst.cayley.group().order() as u64;
        let num = 2 * k * (k - 1);
        ensure!(num.is_multiple_of(order - 2), "{}: 2k(k-1) not divisible by |G|-2", inst.label);
        ensure!(array.c(2) == num / (order - 2), "{}: c2 = {}, formula {}", inst.label, array.c(2), num / (order - 2));
    }
    Ok(format!("{} instances", corpus.len()))
}

fn c4_distance_three(corpus: &[Instance]) -> Outcome {
    let mut explicit_maps = 0;
    let mut slowest = Duration::ZERO;
    for inst in corpus {
        let start = Instant::now();
        let c = &inst.cayley;
        let Params { n, k, mu } = params_of(c);
        let g3 = c.graph().distance_graph(3).map_err(|e| e.to_string())?;
        let (n, k, mu) = (n as u64, k as u64, mu as u64);
        let expected = IntersectionArray::new(vec![n - k, n - k - 1, k - mu], vec![1, n + mu - 2 * k, n - k]).unwrap();
        let got = check_distance_regular(&g3).map_err(|e| e.to_string())?;
        ensure!(got.as_ref() == Some(&expected), "{}: Γ3 array {got:?}", inst.label);

        let report = cayley_to_difference_set(c).map_err(|e| format!("{}: {e}", inst.label))?;
        let local = LocalSubgroup::new(c.group(), &report.h);
        let ds = DifferenceSet::certify(&local.group, &local.localize(&report.d).unwrap()).map_err(|e| e.to_string())?;
        let design = ds.development().map_err(|e| e.to_string())?;
        let complement = design.complement_design().map_err(|e| e.to_string())?.incidence_graph();
        let witness = incidence_graph_isomorphic_to_cayley(&design, c, Some(&local.embedding))
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{}: incidence graph not isomorphic", inst.label))?;
        // distance 3 between a point and a block means non-incidence, so the same map carries over
        if complement.is_isomorphism(&g3, &witness.map) {
            explicit_maps += 1;
        } else {
            let map = find_isomorphism(&complement, &g3)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{}: Γ3 not isomorphic to complement incidence graph", inst.label))?;
            ensure!(complement.is_isomorphism(&g3, &map), "{}: unverified map", inst.label);
        }
        within(start, Duration::from_secs(5), &inst.label)?;
        slowest = slowest.max(start.elapsed());
    }
    Ok(format!("{} instances, {explicit_maps} via the transported map, slowest {slowest:?}", corpus.len()))
}

fn c5_biplanes() -> Outcome {
    let start = Instant::now();
    let expected = IntersectionArray::new(vec![6, 5, 4], vec![1, 2, 6]).unwrap();
    let mut summary = Vec::new();
    for spec in ["Z2xZ2xZ2xZ2", "Z4xZ4"] {
        let h = parse_group_spec(spec).unwrap();
        let found = search_difference_sets(&h, 6, 2, &SearchOptions::default()).map_err(|e| e.to_string())?;
        ensure!(!found.sets.is_empty(), "{spec}: nothing found");
        for ds in &found.sets {
            ensure!(ds.members().len() == 6 && brute_mu(&h, ds.members()) == Some(2), "{spec}: {:?}", ds.members());
            let rebuilt = difference_set_to_cayley(ds).map_err(|e| e.to_string())?;
            let g = rebuilt.cayley.graph();
            let array = check_distance_regular(g).map_err(|e| e.to_string())?;
            ensure!(array.as_ref() == Some(&expected), "{spec}: array {array:?}");
            ensure!(g.vertex_count() == 32 && g.girth().value() == Some(4), "{spec}: size or girth");
            let tag = classify_case(&rebuilt.cayley, 1e-9).map_err(|e| e.to_string())?.tag;
            ensure!(tag == CaseTag::Case32HAbelian, "{spec}: classified {tag}");
        }
        summary.push(format!("{spec}: {} sets", found.sets.len()));
    }
    within(start, Duration::from_secs(10), "sweep")?;
    Ok(format!("{}, {:?}", summary.join(", "), start.elapsed()))
}

fn c6_every_translator(corpus: &[Instance]) -> Outcome {
    let mut translators = 0;
    for inst in corpus {
        let c = &inst.cayley;
        let g = c.group();
        let s = c.connection_set();
        let Params { n, k, mu } = params_of(c);
        let h = identity_part(c).map_err(|e| e.to_string())?;
        let (hg, embedding) = g.subgroup_as_group(&h);
        for a in g.elements().filter(|&a| !h.contains(a)) {
            let ai = g.inverse(a);
            let d: Vec<usize> = s.iter().map(|&x| g.multiply(ai, x)).sorted().collect();
            let dl: Option<Vec<usize>> = d.iter().map(|x| embedding.iter().position(|e| e == x)).collect();
            let dl = dl.ok_or_else(|| format!("{}: a⁻¹S leaves H", inst.label))?;
            ensure!(dl.len() == k && k > 1 && k + 1 < n, "{}: trivial D", inst.label);
            ensure!(brute_mu(&hg, &dl) == Some(mu), "{}: a = {} gives no difference set", inst.label, g.name(a));
            let inv: Vec<usize> = d.iter().map(|&x| g.inverse(x)).sorted().collect();
            let twisted: Vec<usize> = d.iter().map(|&x| g.multiply(g.multiply(a, x), a)).sorted().collect();
            ensure!(inv == twisted, "{}: D⁻¹ ≠ aDa for a = {}", inst.label, g.name(a));
            translators += 1;
        }
        let report = examine_equivalence(c).map_err(|e| e.to_string())?;
        ensure!(report.checks.all(), "{}: {:?}", inst.label, report.checks);
        // rebuild and verify an explicit witness
        let local = LocalSubgroup::new(g, &h);
        if local.group.is_abelian() {
            let ds = DifferenceSet::certify(&local.group, &local.localize(&report.d).unwrap()).map_err(|e| e.to_string())?;
            let rebuilt = difference_set_to_cayley(&ds).map_err(|e| e.to_string())?;
            let map = reconstruction_isomorphism(&rebuilt, c, &local, &ds)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{}: no isomorphism", inst.label))?;
            ensure!(rebuilt.cayley.graph().is_isomorphism(c.graph(), &map), "{}: witness fails", inst.label);
        } else {
            let rebuilt = cayley_from_lemma_data(g, &h, report.a, &report.d).map_err(|e| e.to_string())?;
            let id: Vec<usize> = g.elements().collect();
            ensure!(rebuilt.graph().is_isomorphism(c.graph(), &id), "{}: converse differs", inst.label);
        }
    }
    Ok(format!("{} instances, {translators} translators", corpus.len()))
}

fn c7_normal_subgroup(corpus: &[Instance]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut graphs: Vec<CayleyGraph> = corpus.iter().map(|i| i.cayley.clone()).collect();
    let specs = [
        "Z4", "Z6", "Z8", "Z12", "D8", "D12", "Z2xZ2xZ2", "Z2xZ4", "Z4xZ4", "D16", "Z2xD8", "Dih(Z2xZ4)", "D20",
        "Z2xZ2xZ2xZ2", "Dih(Z3xZ3)", "Z2xZ12", "D24", "Z2xZ2xD8", "Dih(Z4xZ4)", "Z64", "D64",
    ];
    let mut random = 0;
    for spec in specs {
        let g = parse_group_spec(spec).unwrap();
        for h in g.index_two_subgroups() {
            let outside: Vec<usize> = g.elements().filter(|&x| !h.contains(x)).collect();
            for _ in 0..4 {
                let size = rng.gen_range(1..=outside.len());
                let s: Vec<usize> = outside
                    .choose_multiple(&mut rng, size)
                    .flat_map(|&x| [x, g.inverse(x)])
                    .sorted()
                    .dedup()
                    .collect();
                let c = build_cayley(&g, &s).unwrap();
                if c.graph().is_connected() {
                    graphs.push(c);
                    random += 1;
                }
            }
        }
    }
    ensure!(graphs.len() >= 20, "only {} graphs", graphs.len());
    for c in &graphs {
        let g = c.group();
        let h = identity_part(c).map_err(|e| e.to_string())?;
        let dist = c.graph().distances_from(g.identity());
        let even: Vec<usize> = g.elements().filter(|&x| dist[x] % 2 == 0).collect();
        ensure!(h.members() == even.as_slice(), "identity part differs from even-distance class");
        ensure!(2 * even.len() == g.order(), "index is not 2");
        for (&x, &y) in even.iter().cartesian_product(&even) {
            ensure!(h.contains(g.multiply(x, g.inverse(y))), "not closed");
        }
        for (x, &y) in g.elements().cartesian_product(&even) {
            ensure!(h.contains(g.conjugate(x, y)), "not normal");
        }
        ensure!(c.connection_set().iter().all(|&s| !h.contains(s)), "S meets H");
    }
    Ok(format!("{} graphs ({random} random, orders ≤ 64)", graphs.len()))
}

fn c8_trivial_family() -> Outcome {
    for k in 2..=8usize {
        let g = FiniteGroup::dihedral(2 * (k + 1)).unwrap();
        let names = (1..=k).map(|i| format!("r{i}·s")).join(",");
        let s = g.parse_elements(&names).map_err(|e| e.to_string())?;
        let c = build_cayley(&g, &s).unwrap();
        let graph = c.graph();
        let (left, right) = graph.bipartition().ok_or("not bipartite")?;
        ensure!(left.len() == k + 1 && right.len() == k + 1, "k={k}: sides");
        for (side, other) in [(&left, &right), (&right, &left)] {
            for &u in side.iter() {
                let misses = other.iter().filter(|&&v| !graph.has_edge(u, v)).count();
                ensure!(misses == 1 && graph.degree(u) == k, "k={k}: not K_(k+1,k+1) minus a matching");
            }
        }
        let k64 = k as u64;
        let expected = IntersectionArray::new(vec![k64, k64 - 1, 1], vec![1, k64 - 1, k64]).unwrap();
        let array = check_distance_regular(graph).map_err(|e| e.to_string())?;
        ensure!(array.as_ref() == Some(&expected), "k={k}: {array:?}");
        match cayley_to_difference_set(&c) {
            Err(HarnessError::TrivialGraph { k: got }) if got == k => {}
            other => return Err(format!("k={k}: expected rejection, got {:?}", other.map(|r| r.params))),
        }
        let h = identity_part(&c).map_err(|e| e.to_string())?;
        let a = g.involutions_outside(&h)[0];
        ensure!(translated_set(&g, a, &s).len() + 1 == h.order(), "k={k}: |D| ≠ |H|-1");
    }
    Ok("k = 2..8 rejected as trivial".into())
}

fn c9_plane_theorem() -> Outcome {
    let g = parse_group_spec("Dih(Z7)").unwrap();
    let c = build_cayley(&g, &g.parse_elements("1c,2c,4c").unwrap()).unwrap();
    let report = verify_projective_plane_theorem(&c).map_err(|e| e.to_string())?;
    let q = report.q as usize;
    ensure!(q == 2 && g.order() == 2 * (q * q + q + 1), "q = {q}, |G| = {}", g.order());
    ensure!(g.is_involution(report.a) && !report.h.contains(report.a), "a is not an involution outside H");
    let local = LocalSubgroup::new(&g, &report.h);
    let ds = DifferenceSet::certify(&local.group, &local.localize(&report.d).ok_or("D outside H")?)
        .map_err(|e| e.to_string())?;
    ensure!(ds.params() == Params::new(7, 3, 1), "D gives {}", ds.params());
    ensure!(reversal_condition_holds(&g, &report.h, &report.d, report.a).unwrap(), "reversal fails");
    ensure!(report.all(), "{:?}", report.checks);
    Ok(format!("a = {}, D = {:?}", g.name(report.a), g.names_of(&report.d)))
}

fn c10_quotients(corpus: &[Instance]) -> Outcome {
    let mut partitions = 0;
    for inst in corpus {
        let c = &inst.cayley;
        let spectrum = adjacency_eigenvalues(c.graph());
        for n in c.group().normal_subgroups() {
            let p = partition_from_normal_subgroup(c, &n)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{}: coset partition not equitable", inst.label))?;
            for (i, cell) in p.cells().iter().enumerate() {
                for (j, other) in p.cells().iter().enumerate() {
                    for &v in cell {
                        let count = c.graph().neighbours(v).filter(|w| other.contains(w)).count() as u64;
                        ensure!(count == p.quotient()[i][j], "{}: quotient entry ({i},{j})", inst.label);
                    }
                }
            }
            ensure!(quotient_eigenvalues_contained_in(&p, &spectrum, 1e-9), "{}: |N| = {}", inst.label, n.order());
            partitions += 1;
        }
    }
    Ok(format!("{partitions} coset partitions over {} instances", corpus.len()))
}

fn c11_determinism() -> Outcome {
    let mut set_file = tempfile::NamedTempFile::new().map_err(|e| e.to_string())?;
    std::io::Write::write_all(&mut set_file, b"1c\n2c\n4c\n").map_err(|e| e.to_string())?;
    let path = set_file.path().to_str().unwrap().to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["group", "Z2xD8xZ2"],
        vec!["cayley", "Dih(Z7)", "--set", "1c,2c,4c"],
        vec!["cayley", "Dih(Z7)", "--set-file", &path],
        vec!["develop", "Z13", "--set", "0,1,3,9"],
        vec!["equiv", "Dih(Z7)", "--set", "1c,2c,4c"],
        vec!["equiv", "Z2xD8xZ2", "--set", "(1,r0,0),(1,r0,1),(1,r1,0),(1,r3,0),(1,r0·s,0),(1,r2·s,1)"],
        vec!["classify", "Dih(Z4xZ4)", "--set", "(0,0)c,(0,1)c,(0,2)c,(1,0)c,(2,1)c,(3,2)c"],
        vec!["classify", "Z2xZ4xZ4", "--set", "(1,0,0),(1,0,1),(1,0,3),(1,1,0),(1,2,2),(1,3,0)"],
        vec!["plane-check", "Dih(Z7)", "--set", "1c,2c,4c"],
        vec!["ds-search", "Z4xZ4", "--k", "6", "--mu", "2"],
        vec!["ds-search", "Z21", "--k", "5", "--mu", "1", "--dedup"],
        vec!["ds-search", "Z13", "--k", "4", "--mu", "1", "--limit", "3"],
    ];
    let bin = env!("CARGO_BIN_EXE_drcayley");
    for cmd in &commands {
        let args: Vec<&str> = ["--format", "json"].iter().copied().chain(cmd.iter().copied()).collect();
        let first = run_captured(&args);
        ensure!(first.0 == 0, "{cmd:?} exited {}: {}", first.0, first.2);
        serde_json::from_str::<serde_json::Value>(&first.1).map_err(|e| format!("{cmd:?}: {e}"))?;
        ensure!(run_captured(&args) == first, "{cmd:?}: in-process runs differ");
        let jobs: Vec<&str> = ["--jobs", "2"].iter().copied().chain(args.iter().copied()).collect();
        ensure!(run_captured(&jobs).1 == first.1, "{cmd:?}: --jobs 2 differs");
        for _ in 0..2 {
            let out = Command::new(bin).args(&args).output().map_err(|e| e.to_string())?;
            ensure!(out.stdout == first.1.as_bytes(), "{cmd:?}: binary output differs");
            ensure!(out.status.code() == Some(0), "{cmd:?}: binary exit {:?}", out.status.code());
        }
    }
    Ok(format!("{} commands, byte-identical across runs, job counts and processes", commands.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    println!("corpus: {} instances built in {:?}", corpus.len(), start.elapsed());
    let criteria: Vec<Criterion> = vec![
        ("fano_heawood_pipeline", Box::new(c1_fano_heawood)),
        ("spectrum_identity", Box::new(|| c2_spectrum(&corpus))),
        ("c2_formula", Box::new(|| c3_c2_formula(&corpus))),
        ("distance_three_complement", Box::new(|| c4_distance_three(&corpus))),
        ("biplane_sweep", Box::new(c5_biplanes)),
        ("every_translator", Box::new(|| c6_every_translator(&corpus))),
        ("identity_part_normal", Box::new(|| c7_normal_subgroup(&corpus))),
        ("trivial_family", Box::new(c8_trivial_family)),
        ("projective_plane_instance", Box::new(c9_plane_theorem)),
        ("quotient_eigenvalues", Box::new(|| c10_quotients(&corpus))),
        ("cli_determinism", Box::new(c11_determinism)),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match result {
            Ok(detail) => println!("[PASS] {:>2} {name} ({ms} ms): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {:>2} {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
