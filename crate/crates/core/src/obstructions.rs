//! Necessary conditions for orientable bi-eulerian embeddings: degree census, bad
//! 2-edge cuts, and forbidden configurations built from chains of digons.

use std::collections::BTreeSet;

use crate::error::{precondition, Result};
use crate::graph::{edge_of, mate, Digraph, EdgeId, Graph, Vertex};

/// Number of vertices of degree ≡ 0 (mod 4) and whether it is even.
pub fn degree_census(g: &Graph) -> (usize, bool) {
    let l = g.zero_mod4_vertices().len();
    (l, l % 2 == 0)
}

/// A 2-edge cut `{e, f}` with `side[v]` marking the vertex set `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoEdgeCut {
    pub e: EdgeId,
    pub f: EdgeId,
    pub side: Vec<bool>,
}

/// All 2-edge cuts, by removing every pair of non-loop edges.
pub fn enumerate_2edge_cuts(g: &Graph) -> Vec<TwoEdgeCut> {
    let m = g.m();
    let mut out = Vec::new();
    for e in 0..m {
        if g.is_loop(e) {
            continue;
        }
        for f in e + 1..m {
            if g.is_loop(f) {
                continue;
            }
            let (count, comp) = g.components_with(|x| x != e && x != f);
            if count < 2 {
                continue;
            }
            // a component crossed by exactly e and f
            for k in 0..count {
                let crossing: Vec<EdgeId> = (0..m)
                    .filter(|&x| {
                        let (u, v) = g.ends(x);
                        (comp[u] == k) != (comp[v] == k)
                    })
                    .collect();
                if crossing == [e, f] {
                    out.push(TwoEdgeCut { e, f, side: comp.iter().map(|&c| c == k).collect() });
                    break;
                }
            }
        }
    }
    out
}

/// The two sides of a 2-edge-cut reduction.
///
/// `part1` lives on `U`, `part2` on the rest; each gets one new edge (`new1`, `new2`),
/// always the last edge of its part. `vmap*` / `emap*` map new ids to ids of the original.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub part1: Graph,
    pub part2: Graph,
    pub new1: EdgeId,
    pub new2: EdgeId,
    pub vmap1: Vec<Vertex>,
    pub vmap2: Vec<Vertex>,
    pub emap1: Vec<EdgeId>,
    pub emap2: Vec<EdgeId>,
}

/// Replaces `e = {e1, e2}` and `f = {f1, f2}` by `g1 = {e1, f1}` and `g2 = {e2, f2}`.
/// The new edge `g1` has its half 0 where `e1` was and half 1 where `f1` was; same for `g2`.
pub fn reduce_2edge_cut(g: &Graph, cut: &TwoEdgeCut) -> Result<Reduction> {
    let crossing: Vec<EdgeId> = (0..g.m())
        .filter(|&x| {
            let (u, v) = g.ends(x);
            cut.side[u] != cut.side[v]
        })
        .collect();
    if crossing != [cut.e.min(cut.f), cut.e.max(cut.f)] {
        return precondition("edge pair is not the crossing set of the given side");
    }
    // half of e / f on each side
    let in_u = |x: EdgeId| if cut.side[g.incv(2 * x)] { (2 * x, 2 * x + 1) } else { (2 * x + 1, 2 * x) };
    let (e1, e2) = in_u(cut.e);
    let (f1, f2) = in_u(cut.f);
    let build = |keep: bool, ha: usize, hb: usize| -> Result<(Graph, Vec<Vertex>, Vec<EdgeId>)> {
        let vmap: Vec<Vertex> = (0..g.n()).filter(|&v| cut.side[v] == keep).collect();
        let mut inv = vec![usize::MAX; g.n()];
        for (i, &v) in vmap.iter().enumerate() {
            inv[v] = i;
        }
        let mut edges = Vec::new();
        let mut emap = Vec::new();
        let mut names = Vec::new();
        for x in 0..g.m() {
            if x == cut.e || x == cut.f {
                continue;
            }
            let (u, v) = g.ends(x);
            if cut.side[u] == keep {
                edges.push((inv[u], inv[v]));
                emap.push(x);
                names.push(g.edge_name(x).to_string());
            }
        }
        edges.push((inv[g.incv(ha)], inv[g.incv(hb)]));
        names.push(format!("{}~{}", g.edge_name(edge_of(ha)), g.edge_name(edge_of(hb))));
        let vn = vmap.iter().map(|&v| g.vertex_name(v).to_string()).collect();
        Ok((Graph::with_names(vn, names, &edges)?, vmap, emap))
    };
    let (part1, vmap1, emap1) = build(true, e1, f1)?;
    let (part2, vmap2, emap2) = build(false, e2, f2)?;
    Ok(Reduction { new1: part1.m() - 1, new2: part2.m() - 1, part1, part2, vmap1, vmap2, emap1, emap2 })
}

/// Inverse of the reduction: removes `a` from `g1` and `b` from `g2` and adds
/// `{half 0 of a, half 0 of b}` and `{half 1 of a, half 1 of b}`. Vertices of `g2`
/// are shifted by `g1.n()`; the two new edges come last.
pub fn two_edge_join(g1: &Graph, a: EdgeId, g2: &Graph, b: EdgeId) -> Result<Graph> {
    let n1 = g1.n();
    let mut edges = Vec::new();
    let mut names = Vec::new();
    for x in (0..g1.m()).filter(|&x| x != a) {
        edges.push(g1.ends(x));
        names.push(format!("L{}", g1.edge_name(x)));
    }
    for x in (0..g2.m()).filter(|&x| x != b) {
        let (u, v) = g2.ends(x);
        edges.push((u + n1, v + n1));
        names.push(format!("R{}", g2.edge_name(x)));
    }
    edges.push((g1.incv(2 * a), g2.incv(2 * b) + n1));
    names.push("je".into());
    edges.push((g1.incv(2 * a + 1), g2.incv(2 * b + 1) + n1));
    names.push("jf".into());
    let vn = (0..n1)
        .map(|v| format!("L{}", g1.vertex_name(v)))
        .chain((0..g2.n()).map(|v| format!("R{}", g2.vertex_name(v))))
        .collect();
    Graph::with_names(vn, names, &edges)
}

/// Directed 2-edge-join: removes arcs `a` (x1→y1) and `b` (x2→y2), adds x1→y2 and x2→y1.
pub fn two_arc_join(d1: &Digraph, a: EdgeId, d2: &Digraph, b: EdgeId) -> Result<Digraph> {
    let n1 = d1.n();
    let mut arcs = Vec::new();
    let mut names = Vec::new();
    for x in (0..d1.m()).filter(|&x| x != a) {
        arcs.push((d1.tail(x), d1.head(x)));
        names.push(format!("L{}", d1.edge_name(x)));
    }
    for x in (0..d2.m()).filter(|&x| x != b) {
        arcs.push((d2.tail(x) + n1, d2.head(x) + n1));
        names.push(format!("R{}", d2.edge_name(x)));
    }
    arcs.push((d1.tail(a), d2.head(b) + n1));
    names.push("je".into());
    arcs.push((d2.tail(b) + n1, d1.head(a)));
    names.push("jf".into());
    let vn = (0..n1)
        .map(|v| format!("L{}", d1.vertex_name(v)))
        .chain((0..d2.n()).map(|v| format!("R{}", d2.vertex_name(v))))
        .collect();
    Ok(Digraph::from_graph(Graph::with_names(vn, names, &arcs)?))
}

/// Reduction of a 2-arc cut of an eulerian digraph: both sides stay eulerian digraphs.
pub fn reduce_2arc_cut(d: &Digraph, cut: &TwoEdgeCut) -> Result<(Digraph, Digraph, Reduction)> {
    let r = reduce_2edge_cut(d, cut)?;
    let (leave, enter) = match (cut.side[d.tail(cut.e)], cut.side[d.tail(cut.f)]) {
        (true, false) => (cut.e, cut.f),
        (false, true) => (cut.f, cut.e),
        _ => return precondition("cut arcs do not run in opposite directions"),
    };
    let rebuild = |part: &Graph, emap: &[EdgeId], vmap: &[Vertex], new_arc: (Vertex, Vertex)| -> Result<Digraph> {
        let pos = |v: Vertex| vmap.iter().position(|&w| w == v).unwrap();
        let mut arcs: Vec<_> = emap.iter().map(|&x| (pos(d.tail(x)), pos(d.head(x)))).collect();
        arcs.push((pos(new_arc.0), pos(new_arc.1)));
        Ok(Digraph::from_graph(Graph::with_names(part.vertex_names().to_vec(), part.edge_names().to_vec(), &arcs)?))
    };
    let d1 = rebuild(&r.part1, &r.emap1, &r.vmap1, (d.tail(leave), d.head(enter)))?;
    let d2 = rebuild(&r.part2, &r.emap2, &r.vmap2, (d.tail(enter), d.head(leave)))?;
    Ok((d1, d2, r))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadCut {
    pub cut: TwoEdgeCut,
    pub zero_mod4_side1: usize,
    pub zero_mod4_side2: usize,
}

/// 2-edge cuts whose reduction leaves a side with an odd number of vertices of
/// degree 0 mod 4.
pub fn bad_cut_scan(g: &Graph) -> Vec<BadCut> {
    enumerate_2edge_cuts(g)
        .into_iter()
        .filter_map(|cut| {
            // reduction keeps every degree, so count on the original vertices
            let s1 = (0..g.n()).filter(|&v| cut.side[v] && g.degree(v) % 4 == 0).count();
            let s2 = (0..g.n()).filter(|&v| !cut.side[v] && g.degree(v) % 4 == 0).count();
            (s1 % 2 == 1 || s2 % 2 == 1).then_some(BadCut { cut, zero_mod4_side1: s1, zero_mod4_side2: s2 })
        })
        .collect()
}

/// A chain of digons `v_0 … v_len`; `digons[p]` are the two parallel edges joining
/// `vertices[p]` and `vertices[p + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigonChain {
    pub vertices: Vec<Vertex>,
    pub digons: Vec<[EdgeId; 2]>,
}

impl DigonChain {
    pub fn len(&self) -> usize {
        self.digons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digons.is_empty()
    }

    pub fn rear(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn front(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }
}

/// Links between degree-4 vertices joined by exactly two parallel edges.
fn digon_links(g: &Graph) -> Vec<Vec<(Vertex, [EdgeId; 2])>> {
    let mut links = vec![Vec::new(); g.n()];
    for u in 0..g.n() {
        if g.degree(u) != 4 {
            continue;
        }
        let mut by_nb: Vec<(Vertex, EdgeId)> = g
            .halves_at(u)
            .iter()
            .filter(|&&h| !g.is_loop(edge_of(h)))
            .map(|&h| (g.incv(mate(h)), edge_of(h)))
            .collect();
        by_nb.sort();
        let mut i = 0;
        while i < by_nb.len() {
            let mut j = i;
            while j < by_nb.len() && by_nb[j].0 == by_nb[i].0 {
                j += 1;
            }
            let w = by_nb[i].0;
            if j - i == 2 && g.degree(w) == 4 {
                links[u].push((w, [by_nb[i].1, by_nb[i + 1].1]));
            }
            i = j;
        }
    }
    links
}

/// Maximal chains of digons of length ≥ 1. A closed ring of `c` linked vertices yields
/// `c` chains of length `c − 1`, one starting at each ring vertex.
pub fn find_digon_chains(g: &Graph) -> Vec<DigonChain> {
    let links = digon_links(g);
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] || links[s].is_empty() {
            continue;
        }
        // collect the component
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for &(w, _) in &links[comp[i]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        let ends: Vec<Vertex> = comp.iter().copied().filter(|&v| links[v].len() == 1).collect();
        if ends.is_empty() {
            let mut ring = comp.clone();
            ring.sort();
            for &start in &ring {
                out.push(walk_chain(&links, start, comp.len()));
            }
        } else {
            let start = *ends.iter().min().unwrap();
            out.push(walk_chain(&links, start, comp.len()));
        }
    }
    out
}

/// Follows links from `start` (towards its least linked neighbour first) for `count` vertices.
fn walk_chain(links: &[Vec<(Vertex, [EdgeId; 2])>], start: Vertex, count: usize) -> DigonChain {
    let mut vertices = vec![start];
    let mut digons = Vec::new();
    let mut prev = usize::MAX;
    let mut cur = start;
    while vertices.len() < count {
        let mut nb = links[cur].clone();
        nb.sort();
        let Some(&(w, d)) = nb.iter().find(|&&(w, _)| w != prev) else { break };
        digons.push(d);
        vertices.push(w);
        prev = cur;
        cur = w;
    }
    DigonChain { vertices, digons }
}

/// An occurrence of `F_{s,t}`: `f1` joins the front of `chain` to the rear of `bar`,
/// `f2` joins it to the front of `bar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FstWitness {
    pub chain: DigonChain,
    pub bar: DigonChain,
    pub f1: EdgeId,
    pub f2: EdgeId,
    pub forbidden: bool,
}

impl FstWitness {
    pub fn s(&self) -> usize {
        self.chain.len()
    }

    pub fn t(&self) -> usize {
        self.bar.len()
    }
}

/// Orientable bi-eulerian embeddings tolerate `F_{s,t}` only when `t = 1`, or `s = 1` and `t` odd.
pub fn is_forbidden(s: usize, t: usize) -> bool {
    !(t == 1 || (s == 1 && t % 2 == 1))
}

/// All directed sub-chains (length ≥ 1) of the digon-link graph.
fn all_subchains(links: &[Vec<(Vertex, [EdgeId; 2])>]) -> Vec<DigonChain> {
    fn extend(links: &[Vec<(Vertex, [EdgeId; 2])>], ch: &mut DigonChain, on: &mut [bool], out: &mut Vec<DigonChain>) {
        let cur = ch.front();
        let mut nb = links[cur].clone();
        nb.sort();
        for (w, d) in nb {
            if on[w] {
                continue;
            }
            on[w] = true;
            ch.vertices.push(w);
            ch.digons.push(d);
            out.push(ch.clone());
            extend(links, ch, on, out);
            ch.vertices.pop();
            ch.digons.pop();
            on[w] = false;
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; links.len()];
    for s in 0..links.len() {
        if links[s].is_empty() {
            continue;
        }
        let mut ch = DigonChain { vertices: vec![s], digons: Vec::new() };
        on[s] = true;
        extend(links, &mut ch, &mut on, &mut out);
        on[s] = false;
    }
    out
}

/// Every `F_{s,t}` occurrence with `s, t ≥ 1`, over all sub-chains and connectors.
///
/// Duplicates (the same second chain read backwards with the connectors swapped) are
/// removed.
pub fn find_forbidden_configurations(g: &Graph) -> Vec<FstWitness> {
    let links = digon_links(g);
    let chains = all_subchains(&links);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in &chains {
        let front = c.front();
        let last = c.digons[c.len() - 1];
        let others: Vec<EdgeId> = g
            .halves_at(front)
            .iter()
            .map(|&h| edge_of(h))
            .filter(|e| !last.contains(e))
            .collect();
        if others.len() != 2 || others.iter().any(|&e| g.is_loop(e)) {
            continue;
        }
        let far = |e: EdgeId| {
            let (u, v) = g.ends(e);
            if u == front {
                v
            } else {
                u
            }
        };
        for (f1, f2) in [(others[0], others[1]), (others[1], others[0])] {
            let (w0, wt) = (far(f1), far(f2));
            for b in &chains {
                if b.rear() != w0 || b.front() != wt || b.vertices.iter().any(|v| c.vertices.contains(v)) {
                    continue;
                }
                let mut bset = b.vertices.clone();
                bset.sort();
                let key = (c.vertices.clone(), bset, f1.min(f2), f1.max(f2));
                if !seen.insert(key) {
                    continue;
                }
                let forbidden = is_forbidden(c.len(), b.len());
                out.push(FstWitness { chain: c.clone(), bar: b.clone(), f1, f2, forbidden });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Inadmissible(String),
    Admissible,
    AdmissibleButObstructed,
}

#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    pub zero_mod4: usize,
    pub parity_ok: bool,
    pub bad_cuts: Vec<BadCut>,
    pub forbidden_configs: Vec<FstWitness>,
    pub verdict: Verdict,
}

pub fn admissibility(g: &Graph) -> Result<AdmissibilityReport> {
    g.require_eulerian()?;
    let (zero_mod4, parity_ok) = degree_census(g);
    let bad_cuts = bad_cut_scan(g);
    let forbidden_configs = find_forbidden_configurations(g);
    let verdict = if !parity_ok {
        Verdict::Inadmissible(format!("{zero_mod4} vertices of degree 0 mod 4"))
    } else if !bad_cuts.is_empty() {
        Verdict::Inadmissible(format!("{} bad 2-edge cut(s)", bad_cuts.len()))
    } else if forbidden_configs.iter().any(|w| w.forbidden) {
        Verdict::AdmissibleButObstructed
    } else {
        Verdict::Admissible
    };
    Ok(AdmissibilityReport { zero_mod4, parity_ok, bad_cuts, forbidden_configs, verdict })
}

pub fn admissibility_directed(d: &Digraph) -> Result<AdmissibilityReport> {
    d.require_eulerian()?;
    admissibility(d.graph())
}
