//! Library answers recomputed by independent, slower means.

use proptest::prelude::*;
use saut_morse::checks::generalized_graphs;
use saut_morse::complexes::SimplicialComplex;
use saut_morse::forest::{blow_down, is_admissible, EdgeSet};
use saut_morse::homology::{chain_complex_of, homology, join_betti, reduced_betti, torsion_orders};
use saut_morse::orbit::build_quotient_complex;
use saut_morse::serial::{graph_from_json, graph_to_json};
use saut_morse::{enumerate_graphs, validate, Budget, Constraints, DecoratedGraph, DecorationMode, Parameters, ValencyMode};

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

/// Trees of `f`, or `None` when `f` contains a cycle.
fn trees(g: &DecoratedGraph, f: u64) -> Option<Vec<usize>> {
    let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
    for e in (0..g.num_edges()).filter(|e| f >> e & 1 == 1) {
        let (a, b) = g.edge_ends(e);
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra == rb {
            return None;
        }
        parent[ra] = rb;
    }
    Some((0..g.num_vertices()).map(|v| root(&mut parent, v)).collect())
}

/// Collapse and look at what is left of each cycle: it must still visit
/// distinct vertices, and different cycles must not meet.
fn survives_collapse(g: &DecoratedGraph, f: u64, comp: &[usize]) -> bool {
    let mut owner = vec![usize::MAX; g.num_vertices()];
    for (ci, cycle) in g.cycles().iter().enumerate() {
        let mut seen = Vec::new();
        for &h in cycle {
            if f >> (h / 2) & 1 == 1 {
                continue;
            }
            let v = comp[g.vertex_of(h)];
            if seen.contains(&v) {
                return false;
            }
            seen.push(v);
        }
        for v in seen {
            if owner[v] != usize::MAX && owner[v] != ci {
                return false;
            }
            owner[v] = ci;
        }
    }
    true
}

#[test]
fn admissibility_matches_collapse_images() {
    let graphs = generalized_graphs(5, &Budget::default()).unwrap();
    let (mut forests, mut admissible) = (0, 0);
    for g in graphs.iter().filter(|g| g.num_cycles() > 0) {
        for f in 1u64..(1 << g.num_edges()) {
            let Some(comp) = trees(g, f) else { continue };
            let want = survives_collapse(g, f, &comp);
            let fs = EdgeSet(f);
            assert_eq!(is_admissible(g, fs).unwrap(), want, "{g:?} forest {fs:?}");
            forests += 1;
            if want {
                admissible += 1;
                let c = blow_down(g, fs).unwrap();
                assert!(validate(&c.graph, ValencyMode::Generalized).is_valid());
                assert_eq!(c.graph.rank(), g.rank());
                assert_eq!(c.graph.num_cycles(), g.num_cycles());
            }
        }
    }
    assert!(admissible > 100 && forests > admissible, "{admissible} of {forests}");
}

/// Rank over the rationals by fraction-free elimination.
fn bareiss_rank(mut a: Vec<Vec<i128>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let (mut rank, mut prev) = (0, 1i128);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

/// Reduced Betti numbers from scratch: augmented boundary ranks of every simplex list.
fn oracle_betti(facets: &[Vec<u32>]) -> Vec<i64> {
    let mut all: Vec<Vec<u32>> = Vec::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        for mask in 1u32..(1 << f.len()) {
            let s: Vec<u32> = f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            if !all.contains(&s) {
                all.push(s);
            }
        }
    }
    let top = all.iter().map(|s| s.len()).max().unwrap_or(0);
    // by_dim[d + 1] holds the d-simplices, with the empty simplex in dimension -1
    let mut by_dim: Vec<Vec<Vec<u32>>> = vec![vec![vec![]]];
    for len in 1..=top {
        by_dim.push(all.iter().filter(|s| s.len() == len).cloned().collect());
    }
    let mut ranks = vec![0usize; by_dim.len() + 1];
    for d in 1..by_dim.len() {
        let m: Vec<Vec<i128>> = by_dim[d - 1]
            .iter()
            .map(|face| {
                by_dim[d]
                    .iter()
                    .map(|s| match (0..s.len()).find(|&i| {
                        let mut t = s.clone();
                        t.remove(i);
                        &t == face
                    }) {
                        Some(i) if i % 2 == 0 => 1,
                        Some(_) => -1,
                        None => 0,
                    })
                    .collect()
            })
            .collect();
        ranks[d] = bareiss_rank(m);
    }
    (0..by_dim.len()).map(|d| by_dim[d].len() as i64 - ranks[d] as i64 - ranks[d + 1] as i64).collect()
}

fn facets_strategy() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::btree_set(0u32..7, 1..=4), 0..8)
        .prop_map(|v| v.into_iter().map(|s| s.into_iter().collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn betti_numbers_match_elimination(facets in facets_strategy()) {
        let c = SimplicialComplex::from_maximal(facets.clone());
        let b = reduced_betti(&c);
        let want = oracle_betti(&facets);
        for (i, &w) in want.iter().enumerate() {
            prop_assert_eq!(b.get(i as i32 - 1) as i64, w, "dimension {}", i as i32 - 1);
        }
        prop_assert!(b.support().iter().all(|&d| ((d + 1) as usize) < want.len()));
    }

    #[test]
    fn join_formula_matches_materialized_join(a in facets_strategy(), b in facets_strategy()) {
        // shift the second complex onto fresh vertices
        let b: Vec<Vec<u32>> = b.into_iter().map(|s| s.into_iter().map(|v| v + 7).collect()).collect();
        let (ca, cb) = (SimplicialComplex::from_maximal(a.clone()), SimplicialComplex::from_maximal(b.clone()));
        let joined: Vec<Vec<u32>> = if a.is_empty() {
            b.clone()
        } else if b.is_empty() {
            a.clone()
        } else {
            a.iter().flat_map(|x| b.iter().map(move |y| x.iter().chain(y).copied().collect())).collect()
        };
        let want = oracle_betti(&joined);
        let got = join_betti(&[reduced_betti(&ca), reduced_betti(&cb)]);
        for (i, &w) in want.iter().enumerate() {
            prop_assert_eq!(got.get(i as i32 - 1) as i64, w);
        }
    }
}

#[test]
fn projective_plane_has_two_torsion() {
    let facets = vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 5],
        vec![0, 5, 1],
        vec![1, 2, 4],
        vec![2, 3, 5],
        vec![3, 4, 1],
        vec![4, 5, 2],
        vec![5, 1, 3],
    ];
    let c = SimplicialComplex::from_maximal(facets.clone());
    assert!(reduced_betti(&c).is_acyclic());
    assert!(oracle_betti(&facets).iter().all(|&b| b == 0));
    let report = homology(&chain_complex_of(&c, true).unwrap());
    let orders: Vec<u64> = torsion_orders(&report).into_iter().flat_map(|(_, t)| t).collect();
    assert_eq!(orders, vec![2]);
}

#[test]
fn json_round_trip_over_enumerated_graphs() {
    for decoration in [DecorationMode::UnlabeledUnoriented, DecorationMode::LabeledOriented] {
        for (n, m) in [(1, 1), (2, 1), (1, 2), (0, 3)] {
            let graphs = enumerate_graphs(&Parameters::new(n, m, 10), &Constraints::spine(decoration), &Budget::default()).unwrap();
            assert!(!graphs.is_empty());
            for g in graphs {
                let s = graph_to_json(&g, ValencyMode::Spine, decoration);
                assert_eq!(graph_from_json(&s).unwrap(), g);
            }
        }
    }
}

#[test]
fn orbit_vertices_are_the_enumerated_graphs() {
    for decoration in [DecorationMode::UnlabeledUnoriented, DecorationMode::LabeledOriented] {
        for (n, m, k) in [(1, 0, 0), (2, 0, 1), (1, 1, 1), (2, 1, 2), (1, 2, 1)] {
            let params = Parameters::new(n, m, k);
            let q = build_quotient_complex(params, decoration, 1_000_000).unwrap();
            let graphs = enumerate_graphs(&params, &Constraints::spine(decoration), &Budget::default()).unwrap();
            assert_eq!(q.cell_counts()[0], graphs.len(), "({n},{m},{k}) {decoration:?}");
            let alternating: i64 = q.cell_counts().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
            assert_eq!(q.euler(), alternating);
        }
    }
}
