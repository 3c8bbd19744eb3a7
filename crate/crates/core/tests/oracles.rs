//! Library results checked against independent brute-force computations.

use drcayley::cayley::{build_cayley, check_distance_regular, Graph, IntersectionArray};
use drcayley::diffset::{is_difference_set, search_difference_sets, SearchOptions};
use drcayley::group::spec::parse_group_spec;
use drcayley::harness::{cayley_to_difference_set, identity_part};
use drcayley::{DifferenceSet, FiniteGroup, Params};
use itertools::Itertools;

/// Floyd–Warshall distances.
fn distance_matrix(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0;
        for v in g.neighbours(u) {
            row[v] = 1;
        }
    }
    for w in 0..n {
        for u in 0..n {
            for v in 0..n {
                if d[u][w] + d[w][v] < d[u][v] {
                    d[u][v] = d[u][w] + d[w][v];
                }
            }
        }
    }
    d
}

/// Intersection numbers from the full distance matrix, or `None`.
fn drg_oracle(g: &Graph) -> Option<(Vec<u64>, Vec<u64>)> {
    let d = distance_matrix(g);
    let n = g.vertex_count();
    let diam = *d.iter().flatten().max()? as usize;
    let mut b: Vec<Option<u64>> = vec![None; diam + 1];
    let mut c: Vec<Option<u64>> = vec![None; diam + 1];
    for row in &d {
        for y in 0..n {
            let i = row[y] as usize;
            let up = g.neighbours(y).filter(|&z| row[z] as usize == i + 1).count() as u64;
            let down = g.neighbours(y).filter(|&z| row[z] as usize + 1 == i).count() as u64;
            for (slot, val) in [(&mut b[i], up), (&mut c[i], down)] {
                match slot {
                    None => *slot = Some(val),
                    Some(v) if *v != val => return None,
                    _ => {}
                }
            }
        }
    }
    let b: Vec<u64> = b.into_iter().map(Option::unwrap).collect();
    let c: Vec<u64> = c.into_iter().map(Option::unwrap).collect();
    Some((b[..diam].to_vec(), c[1..].to_vec()))
}

fn brute_difference_set(h: &FiniteGroup, d: &[usize]) -> Option<usize> {
    let mut counts = vec![0usize; h.order()];
    for (&x, &y) in d.iter().cartesian_product(d) {
        if x != y {
            counts[h.multiply(x, h.inverse(y))] += 1;
        }
    }
    let nonid: Vec<usize> = h.elements().filter(|&x| x != h.identity()).map(|x| counts[x]).collect();
    nonid.iter().all(|&c| c == nonid[0]).then(|| nonid[0])
}

fn corpus_graphs() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for (spec, set) in [
        ("Dih(Z7)", "1c,2c,4c"),
        ("Dih(Z7)", "0c,3c,5c,6c"),
        ("Z8", "1,7"),
        ("Z2xZ2xZ2", "(1,0,0),(0,1,0),(0,0,1)"),
        ("D10", "r0·s,r1·s,r2·s,r3·s"),
        ("Z12", "1,5,7,11"),
        ("Dih(Z11)", "1c,3c,4c,5c,9c"),
        ("Z6", "1,2,4,5"),
    ] {
        let g = parse_group_spec(spec).unwrap();
        let c = build_cayley(&g, &g.parse_elements(set).unwrap()).unwrap();
        out.push((format!("{spec} {set}"), c.graph().clone()));
    }
    out
}

#[test]
fn drg_check_matches_floyd_warshall() {
    for (label, g) in corpus_graphs() {
        let ours = check_distance_regular(&g).unwrap();
        let oracle = drg_oracle(&g);
        let ours = ours.map(|a| (a.b_list().to_vec(), a.c_list().to_vec()));
        assert_eq!(ours, oracle, "{label}");
    }
}

#[test]
fn z7_three_subsets() {
    let z7 = FiniteGroup::cyclic(7).unwrap();
    let oracle: Vec<Vec<usize>> =
        (0..7).combinations(3).filter(|d| brute_difference_set(&z7, d) == Some(1)).collect();
    assert_eq!(oracle.len(), 14);
    let found = search_difference_sets(&z7, 3, 1, &SearchOptions::default()).unwrap();
    let found: Vec<Vec<usize>> = found.sets.iter().map(|d| d.members().to_vec()).collect();
    assert_eq!(found, oracle);
    // translates of the quadratic residues {1,2,4} and non-residues {3,5,6}
    let mut translates: Vec<Vec<usize>> = [[1, 2, 4], [3, 5, 6]]
        .iter()
        .flat_map(|d| (0..7).map(move |a| d.iter().map(|x| (x + a) % 7).sorted().collect()))
        .collect();
    translates.sort();
    assert_eq!(found, translates);
}

#[test]
fn biplanes_in_groups_of_order_16() {
    for spec in ["Z2xZ2xZ2xZ2", "Z4xZ4", "Z2xZ8", "Z2xZ2xZ4", "D16"] {
        let h = parse_group_spec(spec).unwrap();
        let oracle: Vec<Vec<usize>> = (0..16)
            .combinations(6)
            .filter(|d| brute_difference_set(&h, d) == Some(2))
            .collect();
        let found = search_difference_sets(&h, 6, 2, &SearchOptions::default()).unwrap();
        let found: Vec<Vec<usize>> = found.sets.iter().map(|d| d.members().to_vec()).collect();
        assert_eq!(found, oracle, "{spec}");
        for d in &found {
            assert_eq!(is_difference_set(&h, d), Some(Params::new(16, 6, 2)));
        }
    }
}

#[test]
fn development_pair_coverage_brute_force() {
    let z13 = FiniteGroup::cyclic(13).unwrap();
    let ds = DifferenceSet::certify(&z13, &[0, 1, 3, 9]).unwrap();
    let design = ds.development().unwrap();
    for p in 0..13 {
        for q in p + 1..13 {
            let cover = design.blocks().iter().filter(|b| b.contains(&p) && b.contains(&q)).count();
            assert_eq!(cover, 1);
        }
    }
    assert_eq!(design.recognize_projective_plane(), Some(3));
    let inc = design.incidence_graph();
    assert_eq!(drg_oracle(&inc), Some((vec![4, 3, 3], vec![1, 1, 4])));
}

#[test]
fn every_translator_by_hand() {
    let g = parse_group_spec("Dih(Z11)").unwrap();
    let s = g.parse_elements("1c,3c,4c,5c,9c").unwrap();
    let c = build_cayley(&g, &s).unwrap();
    let h = identity_part(&c).unwrap();
    let report = cayley_to_difference_set(&c).unwrap();
    assert_eq!(report.params, Params::new(11, 5, 2));
    for a in (0..22).filter(|&a| !h.contains(a)) {
        let d: Vec<usize> = s.iter().map(|&x| g.multiply(g.inverse(a), x)).sorted().collect();
        assert!(d.iter().all(|&x| x < 11));
        let z11 = FiniteGroup::cyclic(11).unwrap();
        assert_eq!(brute_difference_set(&z11, &d), Some(2));
        let inv: Vec<usize> = d.iter().map(|&x| g.inverse(x)).sorted().collect();
        let twisted: Vec<usize> = d.iter().map(|&x| g.multiply(g.multiply(a, x), a)).sorted().collect();
        assert_eq!(inv, twisted);
    }
}

#[test]
fn heawood_array_from_oracle() {
    let (_, heawood) = &corpus_graphs()[0];
    let (b, c) = drg_oracle(heawood).unwrap();
    let array = IntersectionArray::new(b, c).unwrap();
    assert_eq!(array, IntersectionArray::bipartite_diameter_three(3, 1).unwrap());
    assert_eq!(array.k_sequence(), vec![1, 3, 6, 4]);
}
