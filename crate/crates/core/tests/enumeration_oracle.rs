//! Brute-force recount of decorated graph classes.
//!
//! Graphs are generated as edge multisets on a fixed vertex set, decorated by
//! choosing which edges are distinguished, and deduplicated by trying every
//! vertex permutation that fixes the basepoint. With unlabeled unoriented
//! cycles the decoration is determined by the set of distinguished edges.

use std::collections::{BTreeMap, BTreeSet};

use saut_morse::graph::ValencyMode;
use saut_morse::{enumerate_graphs, Budget, Constraints, DecoratedGraph, DecorationMode, Parameters};

type Form = (usize, Vec<(usize, usize, bool)>);

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn form(nv: usize, edges: &[(usize, usize, bool)], perms: &[Vec<usize>]) -> Form {
    let best = perms
        .iter()
        .map(|p| {
            let map = |v: usize| if v == 0 { 0 } else { p[v - 1] };
            let mut e: Vec<_> = edges
                .iter()
                .map(|&(a, b, d)| {
                    let (x, y) = (map(a), map(b));
                    (x.min(y), x.max(y), d)
                })
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap();
    (nv, best)
}

fn connected(nv: usize, edges: &[(usize, usize, bool)]) -> bool {
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut parts = nv;
    for &(a, b, _) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            parts -= 1;
        }
    }
    parts == 1
}

/// Number of cycles if the distinguished edges form vertex-disjoint simple cycles.
fn cycle_count(nv: usize, edges: &[(usize, usize, bool)]) -> Option<usize> {
    let mut deg = vec![0; nv];
    for &(a, b, d) in edges.iter() {
        if d {
            deg[a] += 1;
            deg[b] += 1;
        }
    }
    if deg.iter().any(|&x| x != 0 && x != 2) {
        return None;
    }
    // components of a 2-regular graph: vertices minus edges plus cycles
    let mut parent: Vec<usize> = (0..nv).collect();
    let mut count = deg.iter().filter(|&&x| x == 2).count();
    for &(a, b, d) in edges {
        if !d {
            continue;
        }
        let mut ra = a;
        while parent[ra] != ra {
            ra = parent[ra];
        }
        let mut rb = b;
        while parent[rb] != rb {
            rb = parent[rb];
        }
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    Some(count)
}

/// Multisets of `size` items from `0..kinds`, as non-decreasing index lists.
fn multisets(kinds: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(kinds: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..kinds {
            cur.push(i);
            go(kinds, size, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(kinds, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Brute-force classes keyed by `(n, m)`, with weighted degree per class.
fn brute_force(mode: ValencyMode, shapes: &[(usize, usize)]) -> BTreeMap<(usize, usize), BTreeMap<Form, i64>> {
    let mut out: BTreeMap<(usize, usize), BTreeMap<Form, i64>> = BTreeMap::new();
    for &(nv, ne) in shapes {
        let rank = ne + 1 - nv;
        let pairs: Vec<(usize, usize)> = (0..nv).flat_map(|a| (a..nv).map(move |b| (a, b))).collect();
        let perms = permutations(&(1..nv).collect::<Vec<_>>());
        for ms in multisets(pairs.len(), ne) {
            let plain: Vec<(usize, usize, bool)> = ms.iter().map(|&i| (pairs[i].0, pairs[i].1, false)).collect();
            let mut val = vec![0; nv];
            for &(a, b, _) in &plain {
                val[a] += 1;
                val[b] += 1;
            }
            if mode == ValencyMode::Spine && (val[0] < 2 || val[1..].iter().any(|&v| v < 3)) {
                continue;
            }
            if !connected(nv, &plain) {
                continue;
            }
            for mask in 0u32..(1 << ne) {
                let edges: Vec<_> = plain.iter().enumerate().map(|(i, &(a, b, _))| (a, b, mask >> i & 1 == 1)).collect();
                let Some(m) = cycle_count(nv, &edges) else { continue };
                // distinguished half-edges weigh one half
                let twice_val_w: usize = edges
                    .iter()
                    .map(|&(a, b, d)| (usize::from(a == 0) + usize::from(b == 0)) * if d { 1 } else { 2 })
                    .sum();
                let n = rank - m;
                let dw = (2 * (2 * n + m) as i64 - twice_val_w as i64) / 2;
                out.entry((n, m)).or_default().insert(form(nv, &edges, &perms), dw);
            }
        }
    }
    out
}

fn library_form(g: &DecoratedGraph) -> Form {
    let nv = g.num_vertices();
    // move the basepoint to 0 before comparing
    let relabel = |v: usize| {
        let p = g.basepoint();
        if v == p {
            0
        } else if v == 0 {
            p
        } else {
            v
        }
    };
    let edges: Vec<_> = (0..g.num_edges())
        .map(|e| {
            let (a, b) = g.edge_ends(e);
            (relabel(a), relabel(b), g.is_distinguished_edge(e))
        })
        .collect();
    form(nv, &edges, &permutations(&(1..nv).collect::<Vec<_>>()))
}

fn compare(mode: ValencyMode, max_edges: Option<usize>, expected: &BTreeMap<(usize, usize), BTreeMap<Form, i64>>, ranks: &[usize]) {
    for &r in ranks {
        for m in 0..=r {
            let n = r - m;
            let want = expected.get(&(n, m)).cloned().unwrap_or_default();
            for basepoint_undistinguished in [true, false] {
                let c = Constraints { mode, basepoint_undistinguished, decoration: DecorationMode::UnlabeledUnoriented, max_edges };
                let got = enumerate_graphs(&Parameters::new(n, m, 100), &c, &Budget::default()).unwrap();
                let got_forms: BTreeMap<Form, i64> = got.iter().map(|g| (library_form(g), g.weighted_degree())).collect();
                assert_eq!(got_forms.len(), got.len(), "duplicate classes for n={n} m={m}");
                let want: BTreeMap<Form, i64> = want
                    .iter()
                    .filter(|(f, _)| !basepoint_undistinguished || !f.1.iter().any(|&(a, b, d)| d && (a == 0 || b == 0)))
                    .map(|(f, &d)| (f.clone(), d))
                    .collect();
                assert_eq!(got_forms, want, "{mode:?} n={n} m={m} basepoint undistinguished {basepoint_undistinguished}");
            }
        }
    }
}

#[test]
fn spine_classes_match_brute_force_through_rank_three() {
    // a spine graph of rank r has at most 2r - 1 vertices
    let shapes: Vec<(usize, usize)> = (1..=3).flat_map(|r| (1..=2 * r - 1).map(move |v| (v, v - 1 + r))).collect();
    let expected = brute_force(ValencyMode::Spine, &shapes);
    let counts: Vec<usize> = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)]
        .iter()
        .map(|k| expected.get(k).map_or(0, |s| s.len()))
        .collect();
    assert!(counts.iter().all(|&c| c > 0), "{counts:?}");
    compare(ValencyMode::Spine, None, &expected, &[1, 2, 3]);
}

#[test]
fn generalized_classes_match_brute_force_up_to_four_edges() {
    let shapes: Vec<(usize, usize)> = (1..=4).flat_map(|e| (1..=e + 1).map(move |v| (v, e))).collect();
    let shapes: Vec<(usize, usize)> = shapes.into_iter().filter(|&(v, e)| e + 1 > v).collect();
    let expected = brute_force(ValencyMode::Generalized, &shapes);
    compare(ValencyMode::Generalized, Some(4), &expected, &[1, 2, 3, 4]);
}

#[test]
fn labeled_classes_refine_unlabeled_ones() {
    for (n, m) in [(1, 1), (0, 2), (1, 2), (0, 3)] {
        let params = Parameters::new(n, m, 100);
        let budget = Budget::default();
        let sym = enumerate_graphs(&params, &Constraints::spine(DecorationMode::UnlabeledUnoriented), &budget).unwrap();
        let pure = enumerate_graphs(&params, &Constraints::spine(DecorationMode::LabeledOriented), &budget).unwrap();
        let a: BTreeSet<Form> = sym.iter().map(library_form).collect();
        let b: BTreeSet<Form> = pure.iter().map(library_form).collect();
        assert_eq!(a, b);
        assert!(pure.len() >= sym.len());
        // two cycles at rank two always have a symmetry swapping them
        if n + m >= 3 && m >= 2 {
            assert!(pure.len() > sym.len(), "labels should separate some classes at n={n} m={m}");
        }
    }
}
