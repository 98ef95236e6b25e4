#![allow(dead_code)]
//! Shared generators for the integration and acceptance tests.

use std::collections::BTreeSet;

use emberlin::oracle::for_each_eulerian_orientation;
use emberlin::{Digraph, Graph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Multiplicity matrix `a[i][j]` (arcs i→j; symmetric for undirected graphs, loops on
/// the diagonal counted once).
type Matrix = Vec<Vec<u8>>;

fn refine(a: &Matrix, mut color: Vec<usize>) -> Vec<usize> {
    let n = a.len();
    loop {
        let sig: Vec<(usize, Vec<(usize, u8, u8)>)> = (0..n)
            .map(|i| {
                let mut s: Vec<_> = (0..n).map(|j| (color[j], a[i][j], a[j][i])).filter(|x| x.1 + x.2 > 0).collect();
                s.sort_unstable();
                (color[i], s)
            })
            .collect();
        let mut keys = sig.clone();
        keys.sort();
        keys.dedup();
        let next: Vec<usize> = sig.iter().map(|s| keys.binary_search(s).unwrap()).collect();
        let cells = keys.len();
        let old_cells = color.iter().collect::<BTreeSet<_>>().len();
        color = next;
        if cells == old_cells {
            return color;
        }
    }
}

fn search(a: &Matrix, color: Vec<usize>, best: &mut Option<Vec<u8>>) {
    let color = refine(a, color);
    let n = a.len();
    let mut count = vec![0; n];
    for &c in &color {
        count[c] += 1;
    }
    match (0..n).find(|&c| count[c] > 1) {
        None => {
            let mut cert = vec![0u8; n * n];
            for i in 0..n {
                for j in 0..n {
                    cert[color[i] * n + color[j]] = a[i][j];
                }
            }
            if best.as_ref().is_none_or(|b| cert < *b) {
                *best = Some(cert);
            }
        }
        Some(cell) => {
            for v in (0..n).filter(|&v| color[v] == cell) {
                // individualize v: it sorts before the rest of its cell
                let c2: Vec<usize> = (0..n).map(|u| 2 * color[u] + usize::from(color[u] == cell && u != v)).collect();
                search(a, c2, best);
            }
        }
    }
}

/// Isomorphism certificate of a multiplicity matrix.
pub fn certificate(a: &Matrix) -> Vec<u8> {
    let mut best = None;
    search(a, vec![0; a.len()], &mut best);
    let mut c = best.unwrap();
    c.insert(0, a.len() as u8);
    c
}

fn matrix(n: usize, edges: &[(usize, usize)], directed: bool) -> Matrix {
    let mut a = vec![vec![0u8; n]; n];
    for &(u, v) in edges {
        a[u][v] += 1;
        if !directed && u != v {
            a[v][u] += 1;
        }
    }
    a
}

/// All connected multigraphs (loops allowed) with 1..=`max_m` edges and at most
/// `max_n` vertices, one per isomorphism class, as `(n, edges)`.
pub fn connected_multigraphs(max_m: usize, max_n: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut level: Vec<(usize, Vec<(usize, usize)>)> = vec![(1, Vec::new())];
    let mut all = Vec::new();
    for _ in 0..max_m {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for (n, es) in &level {
            let n = *n;
            let mut cands = Vec::new();
            for i in 0..n {
                for j in i..n {
                    cands.push((n, (i, j)));
                }
                if n < max_n {
                    cands.push((n + 1, (i, n)));
                }
            }
            for (n2, e) in cands {
                let mut es2 = es.clone();
                es2.push(e);
                if seen.insert(certificate(&matrix(n2, &es2, false))) {
                    next.push((n2, es2));
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

/// Connected eulerian multigraphs with 1..=`max_m` edges and at most `max_n` vertices, up to isomorphism.
pub fn eulerian_graphs(max_m: usize, max_n: usize) -> Vec<Graph> {
    connected_multigraphs(max_m, max_n)
        .into_iter()
        .map(|(n, es)| Graph::new(n, &es).unwrap())
        .filter(|g| g.is_eulerian())
        .collect()
}

/// Eulerian digraphs with 1..=`max_m` arcs, up to isomorphism.
pub fn eulerian_digraphs(max_m: usize) -> Vec<Digraph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in eulerian_graphs(max_m, max_m) {
        let edges = g.edges();
        for_each_eulerian_orientation(&g, &mut |flip| {
            let arcs: Vec<_> = edges.iter().zip(flip).map(|(&(u, v), &f)| if f { (v, u) } else { (u, v) }).collect();
            if seen.insert(certificate(&matrix(g.n(), &arcs, true))) {
                out.push(Digraph::new(g.n(), &arcs).unwrap());
            }
            true
        });
    }
    out
}

/// Random eulerian digraph on exactly `n` vertices: a covering closed walk plus extra
/// random directed cycles.
pub fn random_eulerian_digraph(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Digraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut arcs: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    for _ in 0..extra {
        let k = rng.gen_range(1..=n.min(4));
        let vs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        arcs.extend((0..k).map(|i| (vs[i], vs[(i + 1) % k])));
    }
    Digraph::new(n, &arcs).unwrap()
}

/// Random eulerian digraph whose vertices all have degree 2 mod 4 (odd in- and out-degree).
pub fn random_2mod4_digraph(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Digraph {
    let base = random_eulerian_digraph(rng, n, extra);
    let mut arcs = base.edges();
    let mut even: Vec<usize> = (0..n).filter(|&v| base.out_degree(v) % 2 == 0).collect();
    even.shuffle(rng);
    match even.len() {
        0 => {}
        1 => arcs.push((even[0], even[0])),
        k => arcs.extend((0..k).map(|i| (even[i], even[(i + 1) % k]))),
    }
    let d = Digraph::new(n, &arcs).unwrap();
    assert!((0..n).all(|v| d.degree(v) % 4 == 2));
    d
}

/// Uniformly random choices inside Hierholzer's algorithm: a random directed euler circuit.
pub fn random_euler_circuit(rng: &mut ChaCha8Rng, d: &Digraph) -> emberlin::ClosedWalk {
    let mut outs: Vec<Vec<usize>> = (0..d.n()).map(|v| d.outs(v).collect()).collect();
    for o in &mut outs {
        o.shuffle(rng);
    }
    let start = rng.gen_range(0..d.n());
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut circuit = Vec::new();
    while let Some(&(v, via)) = stack.last() {
        if let Some(h) = outs[v].pop() {
            stack.push((d.head(h / 2), Some(h)));
        } else {
            stack.pop();
            if let Some(h) = via {
                circuit.push(h);
            }
        }
    }
    circuit.reverse();
    emberlin::ClosedWalk::new_directed(d, circuit).unwrap()
}

/// Every circuit decomposition of `g`, one per transition system.
pub fn circuit_decompositions(g: &Graph, f: &mut dyn FnMut(Vec<emberlin::ClosedWalk>)) {
    fn matchings(hs: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if hs.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 1..hs.len() {
            acc.push((hs[0], hs[i]));
            let rest: Vec<usize> = hs[1..].iter().copied().filter(|&x| x != hs[i]).collect();
            matchings(&rest, acc, out);
            acc.pop();
        }
    }
    let per: Vec<Vec<Vec<(usize, usize)>>> = (0..g.n())
        .map(|v| {
            let mut out = Vec::new();
            matchings(g.halves_at(v), &mut Vec::new(), &mut out);
            out
        })
        .collect();
    let mut idx = vec![0; g.n()];
    let mut partner = vec![0; g.num_halves()];
    loop {
        for v in 0..g.n() {
            for &(a, b) in &per[v][idx[v]] {
                partner[a] = b;
                partner[b] = a;
            }
        }
        let mut used = vec![false; g.m()];
        let mut walks = Vec::new();
        for e in 0..g.m() {
            if used[e] {
                continue;
            }
            let mut steps = Vec::new();
            let mut h = 2 * e;
            loop {
                used[h / 2] = true;
                steps.push(h);
                h = partner[h ^ 1];
                if h == 2 * e {
                    break;
                }
            }
            walks.push(emberlin::ClosedWalk::new(g, steps).unwrap());
        }
        f(walks);
        let mut v = 0;
        loop {
            if v == g.n() {
                return;
            }
            idx[v] += 1;
            if idx[v] < per[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}
