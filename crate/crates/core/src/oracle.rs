//! Exhaustive enumeration of embeddings of small graphs and digraphs.
//!
//! Rotations fix one half per vertex to remove cyclic symmetry. With all signatures,
//! the edges of a BFS spanning tree stay positive (quotient by vertex flips) and every
//! cotree edge, loops included, takes both signs.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::graph::{edge_of, mate, Digraph, Graph, Half, Vertex};
use crate::walk::ClosedWalk;

pub const BUDGET_ENV: &str = "EMBERLIN_BUDGET";
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Budget in enumerated embeddings; `EMBERLIN_BUDGET` overrides the default.
pub fn budget_from_env() -> u128 {
    std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Signatures {
    AllPositive,
    All,
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub budget: u128,
    /// Enumerate directed rotations only up to relabelling parallel loops at a vertex.
    /// Face counts and orientability are invariant under that relabelling, so censuses
    /// keep the same support but not the same multiplicities.
    pub loop_symmetry: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { budget: budget_from_env(), loop_symmetry: false }
    }
}

/// Face-count tallies over an enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbeddingCensus {
    pub total: u64,
    pub orientable: BTreeMap<usize, u64>,
    pub nonorientable: BTreeMap<usize, u64>,
    pub bi_eulerian_orientable: bool,
    pub bi_eulerian_nonorientable: bool,
}

impl EmbeddingCensus {
    pub fn min_faces(&self) -> Option<usize> {
        let a = self.orientable.keys().next();
        let b = self.nonorientable.keys().next();
        a.into_iter().chain(b).min().copied()
    }

    pub fn max_faces(&self) -> Option<usize> {
        let a = self.orientable.keys().next_back();
        let b = self.nonorientable.keys().next_back();
        a.into_iter().chain(b).max().copied()
    }

    pub fn min_orientable_faces(&self) -> Option<usize> {
        self.orientable.keys().next().copied()
    }

    pub fn max_orientable_faces(&self) -> Option<usize> {
        self.orientable.keys().next_back().copied()
    }

    pub fn bi_eulerian(&self) -> bool {
        self.bi_eulerian_orientable || self.bi_eulerian_nonorientable
    }
}

/// The embedding currently visited.
pub struct View<'a> {
    g: &'a Graph,
    succ: &'a [Half],
    pred: &'a [Half],
    twisted: &'a [bool],
    pub faces: usize,
    pub orientable: bool,
    pub bi_eulerian: bool,
}

impl View<'_> {
    pub fn rotation(&self) -> Vec<Vec<Half>> {
        (0..self.g.n())
            .map(|v| {
                let hs = self.g.halves_at(v);
                let mut rot = Vec::with_capacity(hs.len());
                if let Some(&h0) = hs.first() {
                    let mut h = h0;
                    loop {
                        rot.push(h);
                        h = self.succ[h];
                        if h == h0 {
                            break;
                        }
                    }
                }
                rot
            })
            .collect()
    }

    pub fn embedding(&self) -> Embedding {
        Embedding::new(self.g.clone(), self.rotation(), self.twisted.to_vec()).expect("enumerated rotations are valid")
    }

    pub fn twisted(&self) -> &[bool] {
        self.twisted
    }

    /// `true` iff `w` (in either direction) is a facial walk.
    pub fn has_face(&self, w: &ClosedWalk) -> bool {
        if w.is_empty() {
            return self.g.m() == 0;
        }
        for cand in [w.clone(), w.reversed()] {
            let steps = cand.steps();
            for start_neg in [false, true] {
                let (mut h, mut eps) = (steps[0], start_neg);
                let mut ok = true;
                for i in 0..steps.len() {
                    if h != steps[i] {
                        ok = false;
                        break;
                    }
                    eps ^= self.twisted[edge_of(h)];
                    let a = mate(h);
                    h = if eps { self.pred[a] } else { self.succ[a] };
                }
                if ok && h == steps[0] && eps == start_neg {
                    return true;
                }
            }
        }
        false
    }
}

/// Face counting with a reusable visited buffer.
struct Tracer {
    seen: Vec<u32>,
    stamp: u32,
    edge_mark: Vec<u32>,
}

impl Tracer {
    fn new(nh: usize) -> Tracer {
        Tracer { seen: vec![0; 2 * nh], stamp: 0, edge_mark: vec![0; nh / 2 + 1] }
    }

    fn bump(&mut self) -> u32 {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|x| *x = 0);
            self.edge_mark.iter_mut().for_each(|x| *x = 0);
            self.stamp = 1;
        }
        self.stamp
    }

    /// Returns (face count, first face is an euler circuit).
    fn count(&mut self, succ: &[Half], pred: &[Half], twisted: &[bool], plain: bool) -> (usize, bool) {
        let nh = succ.len();
        let m = nh / 2;
        if m == 0 {
            return (1, true);
        }
        let st = self.bump();
        let mut faces = 0;
        let mut first_euler = false;
        if plain {
            for h0 in 0..nh {
                if self.seen[2 * h0] == st {
                    continue;
                }
                let mut h = h0;
                let mut len = 0;
                let mut distinct = true;
                loop {
                    self.seen[2 * h] = st;
                    if faces == 0 {
                        let e = edge_of(h);
                        if self.edge_mark[e] == st {
                            distinct = false;
                        }
                        self.edge_mark[e] = st;
                    }
                    len += 1;
                    h = succ[mate(h)];
                    if h == h0 {
                        break;
                    }
                }
                if faces == 0 {
                    first_euler = distinct && len == m;
                }
                faces += 1;
            }
            return (faces, first_euler);
        }
        for neg in [false, true] {
            for h0 in 0..nh {
                if self.seen[2 * h0 + neg as usize] == st {
                    continue;
                }
                let (mut h, mut eps) = (h0, neg);
                let mut len = 0;
                let mut distinct = true;
                loop {
                    let tw = twisted[edge_of(h)];
                    self.seen[2 * h + eps as usize] = st;
                    self.seen[2 * mate(h) + (!(eps ^ tw)) as usize] = st;
                    if faces == 0 {
                        let e = edge_of(h);
                        if self.edge_mark[e] == st {
                            distinct = false;
                        }
                        self.edge_mark[e] = st;
                    }
                    len += 1;
                    eps ^= tw;
                    let a = mate(h);
                    h = if eps { pred[a] } else { succ[a] };
                    if h == h0 && eps == neg {
                        break;
                    }
                }
                if faces == 0 {
                    first_euler = distinct && len == m;
                }
                faces += 1;
            }
        }
        (faces, first_euler)
    }
}

/// Rotations of an undirected vertex: the least half first, the rest permuted.
fn undirected_rotations(g: &Graph, v: Vertex) -> Vec<Vec<Half>> {
    let hs = g.halves_at(v);
    if hs.len() <= 2 {
        return vec![hs.to_vec()];
    }
    hs[1..]
        .iter()
        .copied()
        .permutations(hs.len() - 1)
        .map(|p| std::iter::once(hs[0]).chain(p).collect())
        .collect()
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Alternating rotations of a digraph vertex. The first out-half is fixed; with
/// `loop_symmetry`, loop out-halves must also appear in increasing order.
fn directed_rotations(d: &Digraph, v: Vertex, loop_symmetry: bool) -> Vec<Vec<Half>> {
    let outs: Vec<Half> = d.outs(v).collect();
    let ins: Vec<Half> = d.ins(v).collect();
    let k = outs.len();
    if k == 0 {
        return vec![Vec::new()];
    }
    let is_loop_out = |h: Half| d.is_loop(edge_of(h));
    let mut first = outs[0];
    if loop_symmetry {
        if let Some(&h) = outs.iter().find(|&&h| !is_loop_out(h)) {
            first = h;
        }
    }
    let rest: Vec<Half> = outs.iter().copied().filter(|&h| h != first).collect();
    let out_orders: Vec<Vec<Half>> = rest
        .iter()
        .copied()
        .permutations(k - 1)
        .filter(|p| !loop_symmetry || p.iter().filter(|&&h| is_loop_out(h)).tuple_windows().all(|(a, b)| a < b))
        .map(|p| std::iter::once(first).chain(p).collect())
        .collect();
    let mut out = Vec::new();
    for o in &out_orders {
        for q in ins.iter().copied().permutations(k) {
            out.push(o.iter().zip(&q).flat_map(|(&a, &b)| [a, b]).collect());
        }
    }
    out
}

/// Number of directed rotation systems (without loop symmetry).
pub fn directed_rotation_count(d: &Digraph) -> u128 {
    (0..d.n())
        .map(|v| {
            let k = d.out_degree(v);
            if k == 0 {
                1
            } else {
                factorial(k) * factorial(k - 1)
            }
        })
        .product()
}

pub fn undirected_rotation_count(g: &Graph) -> u128 {
    (0..g.n()).map(|v| factorial(g.degree(v).saturating_sub(1))).product()
}

fn cotree_edges(g: &Graph) -> Vec<usize> {
    let parent = g.spanning_tree();
    let mut tree = vec![false; g.m()];
    for p in parent.into_iter().flatten() {
        tree[edge_of(p)] = true;
    }
    (0..g.m()).filter(|&e| !tree[e]).collect()
}

/// Visits every combination of per-vertex rotations (and signatures). The visitor
/// returns `false` to stop early.
fn visit(
    g: &Graph,
    per_vertex: Vec<Vec<Vec<Half>>>,
    sigs: Signatures,
    budget: u128,
    visitor: &mut dyn FnMut(&View) -> bool,
) -> Result<()> {
    let cotree = if sigs == Signatures::All { cotree_edges(g) } else { Vec::new() };
    let mut needed: u128 = per_vertex.iter().map(|r| r.len() as u128).product();
    needed = needed.saturating_mul(1u128 << cotree.len().min(100));
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let nh = g.num_halves();
    let mut succ = vec![0; nh];
    let mut pred = vec![0; nh];
    let set = |succ: &mut [Half], pred: &mut [Half], rot: &[Half]| {
        let k = rot.len();
        for i in 0..k {
            succ[rot[i]] = rot[(i + 1) % k];
            pred[rot[(i + 1) % k]] = rot[i];
        }
    };
    for r in &per_vertex {
        set(&mut succ, &mut pred, &r[0]);
    }
    let mut idx = vec![0usize; per_vertex.len()];
    let mut twisted = vec![false; g.m()];
    let mut tracer = Tracer::new(nh);
    loop {
        let c = cotree.len();
        for mask in 0u64..(1u64 << c) {
            if mask > 0 {
                // gray code: flip the edge at the lowest set bit of mask
                let bit = mask.trailing_zeros() as usize;
                twisted[cotree[bit]] ^= true;
            }
            let orientable = !twisted.iter().any(|&t| t);
            let (faces, first_euler) = tracer.count(&succ, &pred, &twisted, orientable);
            let view = View { g, succ: &succ, pred: &pred, twisted: &twisted, faces, orientable, bi_eulerian: faces == 2 && first_euler };
            if !visitor(&view) {
                return Ok(());
            }
        }
        twisted.iter_mut().for_each(|t| *t = false);
        // odometer, last vertex fastest
        let mut v = per_vertex.len();
        loop {
            if v == 0 {
                return Ok(());
            }
            v -= 1;
            idx[v] += 1;
            if idx[v] < per_vertex[v].len() {
                set(&mut succ, &mut pred, &per_vertex[v][idx[v]]);
                break;
            }
            idx[v] = 0;
            set(&mut succ, &mut pred, &per_vertex[v][0]);
        }
    }
}

fn check_rotation_budget(count: u128, budget: u128) -> Result<()> {
    if count > budget {
        return Err(Error::Budget { needed: count, budget });
    }
    Ok(())
}

/// Visits every directed embedding (alternating rotation, optionally every signature).
pub fn visit_directed_embeddings(
    d: &Digraph,
    sigs: Signatures,
    cfg: &OracleConfig,
    visitor: &mut dyn FnMut(&View) -> bool,
) -> Result<()> {
    d.require_eulerian()?;
    if !cfg.loop_symmetry {
        check_rotation_budget(directed_rotation_count(d), cfg.budget)?;
    }
    let per_vertex: Vec<_> = (0..d.n()).map(|v| directed_rotations(d, v, cfg.loop_symmetry)).collect();
    visit(d.graph(), per_vertex, sigs, cfg.budget, visitor)
}

/// Visits every embedding of an undirected graph.
pub fn visit_embeddings(g: &Graph, sigs: Signatures, cfg: &OracleConfig, visitor: &mut dyn FnMut(&View) -> bool) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    check_rotation_budget(undirected_rotation_count(g), cfg.budget)?;
    let per_vertex: Vec<_> = (0..g.n()).map(|v| undirected_rotations(g, v)).collect();
    visit(g, per_vertex, sigs, cfg.budget, visitor)
}

fn tally(census: &mut EmbeddingCensus, v: &View) {
    census.total += 1;
    let map = if v.orientable { &mut census.orientable } else { &mut census.nonorientable };
    *map.entry(v.faces).or_default() += 1;
    if v.bi_eulerian {
        if v.orientable {
            census.bi_eulerian_orientable = true;
        } else {
            census.bi_eulerian_nonorientable = true;
        }
    }
}

pub fn enumerate_directed_embeddings(d: &Digraph, sigs: Signatures) -> Result<EmbeddingCensus> {
    enumerate_directed_embeddings_with(d, sigs, &OracleConfig::default())
}

pub fn enumerate_directed_embeddings_with(d: &Digraph, sigs: Signatures, cfg: &OracleConfig) -> Result<EmbeddingCensus> {
    let mut census = EmbeddingCensus::default();
    visit_directed_embeddings(d, sigs, cfg, &mut |v| {
        tally(&mut census, v);
        true
    })?;
    Ok(census)
}

pub fn enumerate_embeddings(g: &Graph, orientable_only: bool) -> Result<EmbeddingCensus> {
    enumerate_embeddings_with(g, orientable_only, &OracleConfig::default())
}

pub fn enumerate_embeddings_with(g: &Graph, orientable_only: bool, cfg: &OracleConfig) -> Result<EmbeddingCensus> {
    let sigs = if orientable_only { Signatures::AllPositive } else { Signatures::All };
    let mut census = EmbeddingCensus::default();
    visit_embeddings(g, sigs, cfg, &mut |v| {
        tally(&mut census, v);
        true
    })?;
    Ok(census)
}

/// Some all-positive rotation system has exactly one face.
pub fn exists_one_face_orientable(g: &Graph) -> Result<bool> {
    let mut found = false;
    visit_embeddings(g, Signatures::AllPositive, &OracleConfig::default(), &mut |v| {
        found = v.faces == 1;
        !found
    })?;
    Ok(found)
}

/// Minimum face count over directed embeddings that have `t` as a face.
pub fn min_faces_with_face(d: &Digraph, t: &ClosedWalk, sigs: Signatures, cfg: &OracleConfig) -> Result<Option<usize>> {
    let mut best: Option<usize> = None;
    visit_directed_embeddings(d, sigs, cfg, &mut |v| {
        if best.map_or(true, |b| v.faces < b) && v.has_face(t) {
            best = Some(v.faces);
        }
        true
    })?;
    Ok(best)
}

/// Backtracking search for a (necessarily orientable) bi-eulerian directed embedding.
///
/// At each vertex a bijection `next_out: in → out` and a cyclic order of the outs are
/// chosen; the rotation is `o_0, i_0, o_1, i_1, …` with `next_out(i_j) = o_{j+1}`.
/// The faces are the cycles of `g ↦ next_out(mate g)` on out-halves and of
/// `h ↦ next_in(mate h)` on in-halves; both must be single cycles of length m.
/// Partial assignments that close a shorter cycle are pruned.
pub fn find_directed_bi_eulerian(d: &Digraph) -> Result<Option<Embedding>> {
    d.require_eulerian()?;
    let m = d.m();
    if m == 0 {
        return Ok(None);
    }
    let n = d.n();
    // BFS order so neighbouring choices constrain each other early
    let order = {
        let mut seen = vec![false; n];
        let mut ord = vec![0];
        seen[0] = true;
        let mut i = 0;
        while i < ord.len() {
            let v = ord[i];
            for &h in d.halves_at(v) {
                let w = d.incv(mate(h));
                if !seen[w] {
                    seen[w] = true;
                    ord.push(w);
                }
            }
            i += 1;
        }
        ord
    };
    let nh = d.num_halves();
    let mut st = BiSearch {
        d,
        m,
        order,
        next_out: vec![usize::MAX; nh],
        next_in: vec![usize::MAX; nh],
        rot: vec![Vec::new(); n],
    };
    if st.go(0) {
        let e = Embedding::orientable_from_rotation(d.graph().clone(), st.rot)?;
        if !e.is_bi_eulerian() {
            return Err(Error::Verification("bi-eulerian search produced a non bi-eulerian embedding".into()));
        }
        return Ok(Some(e));
    }
    Ok(None)
}

struct BiSearch<'a> {
    d: &'a Digraph,
    m: usize,
    order: Vec<Vertex>,
    next_out: Vec<Half>, // in-half → out-half at the same vertex
    next_in: Vec<Half>,  // out-half → in-half at the same vertex
    rot: Vec<Vec<Half>>,
}

impl BiSearch<'_> {
    /// Does the partial permutation `x ↦ map[mate x]` close a cycle shorter than m through `x`?
    fn short_cycle(&self, map: &[Half], x: Half) -> bool {
        let mut y = x;
        for len in 1..=self.m {
            let z = map[mate(y)];
            if z == usize::MAX {
                return false;
            }
            if z == x {
                return len < self.m;
            }
            y = z;
        }
        false
    }

    fn go(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let v = self.order[i];
        let outs: Vec<Half> = self.d.outs(v).collect();
        let ins: Vec<Half> = self.d.ins(v).collect();
        let k = outs.len();
        for perm in outs.iter().copied().permutations(k) {
            for (j, &h) in ins.iter().enumerate() {
                self.next_out[h] = perm[j];
            }
            // antiface cycles through the new out-halves
            if outs.iter().any(|&g| self.short_cycle(&self.next_out, g)) {
                continue;
            }
            let inv = |o: Half| ins[perm.iter().position(|&x| x == o).unwrap()];
            for order in outs[1..].iter().copied().permutations(k - 1) {
                let cyc: Vec<Half> = std::iter::once(outs[0]).chain(order).collect();
                for j in 0..k {
                    self.next_in[cyc[j]] = inv(cyc[(j + 1) % k]);
                }
                if ins.iter().any(|&h| self.short_cycle(&self.next_in, h)) {
                    continue;
                }
                self.rot[v] = cyc.iter().flat_map(|&o| [o, self.next_in[o]]).collect();
                if self.go(i + 1) {
                    return true;
                }
            }
            for &o in &outs {
                self.next_in[o] = usize::MAX;
            }
        }
        for &h in &ins {
            self.next_out[h] = usize::MAX;
        }
        false
    }
}

/// Orientable bi-eulerian embedding of an undirected graph, via its eulerian
/// orientations (the first non-loop edge keeps its direction: reversing every arc
/// maps bi-eulerian embeddings to bi-eulerian embeddings).
pub fn find_orientable_bi_eulerian(g: &Graph) -> Result<Option<Embedding>> {
    g.require_eulerian()?;
    if g.m() == 0 {
        return Ok(None);
    }
    let mut found = None;
    for_each_eulerian_orientation(g, &mut |flip| {
        let arcs: Vec<_> = (0..g.m())
            .map(|e| {
                let (u, v) = g.ends(e);
                if flip[e] {
                    (v, u)
                } else {
                    (u, v)
                }
            })
            .collect();
        let d = Digraph::from_graph(
            Graph::with_names(g.vertex_names().to_vec(), g.edge_names().to_vec(), &arcs).expect("same shape"),
        );
        if let Ok(Some(e)) = find_directed_bi_eulerian(&d) {
            let map = |h: Half| if flip[edge_of(h)] { mate(h) } else { h };
            let rot = e.rotation().iter().map(|r| r.iter().map(|&h| map(h)).collect()).collect();
            found = Some(Embedding::orientable_from_rotation(g.clone(), rot).expect("relabelled rotation"));
            return false;
        }
        true
    });
    match found {
        Some(e) if !e.is_bi_eulerian() => Err(Error::Verification("relabelled bi-eulerian embedding is broken".into())),
        other => Ok(other),
    }
}

/// Calls `f(flip)` for each eulerian orientation (edge `e` reversed iff `flip[e]`)
/// with the first non-loop edge unflipped; `f` returns `false` to stop.
pub fn for_each_eulerian_orientation(g: &Graph, f: &mut dyn FnMut(&[bool]) -> bool) {
    let m = g.m();
    let nonloops: Vec<usize> = (0..m).filter(|&e| !g.is_loop(e)).collect();
    let mut remaining = vec![0i64; g.n()];
    for &e in &nonloops {
        let (u, v) = g.ends(e);
        remaining[u] += 1;
        remaining[v] += 1;
    }
    let mut balance = vec![0i64; g.n()]; // out − in over decided non-loop edges
    let mut flip = vec![false; m];
    fn rec(
        g: &Graph,
        nonloops: &[usize],
        i: usize,
        flip: &mut [bool],
        balance: &mut [i64],
        remaining: &mut [i64],
        f: &mut dyn FnMut(&[bool]) -> bool,
    ) -> bool {
        if i == nonloops.len() {
            return f(flip);
        }
        let e = nonloops[i];
        let (u, v) = g.ends(e);
        let choices: &[bool] = if i == 0 { &[false] } else { &[false, true] };
        for &fl in choices {
            let (t, h) = if fl { (v, u) } else { (u, v) };
            balance[t] += 1;
            balance[h] -= 1;
            remaining[u] -= 1;
            remaining[v] -= 1;
            flip[e] = fl;
            let ok = balance[t].abs() <= remaining[t] && balance[h].abs() <= remaining[h];
            let go_on = !ok || rec(g, nonloops, i + 1, flip, balance, remaining, f);
            balance[t] -= 1;
            balance[h] += 1;
            remaining[u] += 1;
            remaining[v] += 1;
            flip[e] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(g, &nonloops, 0, &mut flip, &mut balance, &mut remaining, f);
}
