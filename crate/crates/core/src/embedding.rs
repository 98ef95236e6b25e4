//! Rotation systems with edge signatures, face tracing, orientability and the
//! walk-collection ↔ embedding correspondence.

use std::collections::VecDeque;

use crate::error::{invalid, verification, Error, Result};
use crate::graph::{edge_of, mate, Digraph, EdgeId, Graph, Half, Vertex};
use crate::walk::{canonical_multiset, is_cyclically_compatible, transition_graphs, ClosedWalk};

/// An embedding of a connected graph: a cyclic order of halves at each vertex plus
/// a sign per edge (`twisted[e]` means signature −1). Faces are traced eagerly.
#[derive(Clone, Debug)]
pub struct Embedding {
    graph: Graph,
    rotation: Vec<Vec<Half>>,
    twisted: Vec<bool>,
    succ: Vec<Half>,
    pred: Vec<Half>,
    faces: Vec<ClosedWalk>,
    orientable: bool,
}

impl Embedding {
    pub fn new(graph: Graph, rotation: Vec<Vec<Half>>, twisted: Vec<bool>) -> Result<Embedding> {
        if !graph.is_connected() {
            return invalid("embeddings need a connected graph");
        }
        if rotation.len() != graph.n() {
            return invalid("rotation must list every vertex");
        }
        if twisted.len() != graph.m() {
            return invalid("signature must list every edge");
        }
        let mut succ = vec![usize::MAX; graph.num_halves()];
        let mut pred = vec![usize::MAX; graph.num_halves()];
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != graph.halves_at(v) {
                return invalid(format!("rotation at {} is not a cyclic order of its halves", graph.vertex_name(v)));
            }
            let k = rot.len();
            for i in 0..k {
                succ[rot[i]] = rot[(i + 1) % k];
                pred[rot[(i + 1) % k]] = rot[i];
            }
        }
        let faces = trace(&graph, &succ, &pred, &twisted);
        let orientable = flip_normalization(&graph, &twisted).is_some();
        Ok(Embedding { graph, rotation, twisted, succ, pred, faces, orientable })
    }

    /// All signatures positive.
    pub fn orientable_from_rotation(graph: Graph, rotation: Vec<Vec<Half>>) -> Result<Embedding> {
        let m = graph.m();
        Embedding::new(graph, rotation, vec![false; m])
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &[Vec<Half>] {
        &self.rotation
    }

    pub fn rotation_at(&self, v: Vertex) -> &[Half] {
        &self.rotation[v]
    }

    pub fn succ(&self, h: Half) -> Half {
        self.succ[h]
    }

    pub fn pred(&self, h: Half) -> Half {
        self.pred[h]
    }

    pub fn is_twisted(&self, e: EdgeId) -> bool {
        self.twisted[e]
    }

    pub fn twisted(&self) -> &[bool] {
        &self.twisted
    }

    /// Signature of `e` as ±1.
    pub fn signature(&self, e: EdgeId) -> i8 {
        if self.twisted[e] {
            -1
        } else {
            1
        }
    }

    pub fn faces(&self) -> &[ClosedWalk] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_genus(&self) -> usize {
        euler_genus(self.graph.n(), self.graph.m(), self.faces.len()).expect("traced embeddings satisfy Euler's formula")
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    /// Exactly two faces, both euler circuits.
    pub fn is_bi_eulerian(&self) -> bool {
        self.faces.len() == 2 && self.faces.iter().all(|f| f.is_euler_circuit(&self.graph))
    }

    /// Same embedding with every rotation reversed.
    pub fn mirrored(&self) -> Embedding {
        let rotation = self.rotation.iter().map(|r| r.iter().rev().copied().collect()).collect();
        Embedding::new(self.graph.clone(), rotation, self.twisted.clone()).expect("mirroring keeps validity")
    }

    /// Flip the signature of one edge.
    pub fn twist(&self, e: EdgeId) -> Embedding {
        let mut t = self.twisted.clone();
        t[e] = !t[e];
        Embedding::new(self.graph.clone(), self.rotation.clone(), t).expect("twisting keeps validity")
    }

    /// Indices of the (at most two) faces containing each edge, one entry per traversal.
    pub fn faces_of_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::with_capacity(2); self.graph.m()];
        for (i, f) in self.faces.iter().enumerate() {
            for &h in f.steps() {
                out[edge_of(h)].push(i);
            }
        }
        out
    }
}

/// Face tracing over states (half, orientation). Positive states are started first.
fn trace(g: &Graph, succ: &[Half], pred: &[Half], twisted: &[bool]) -> Vec<ClosedWalk> {
    if g.m() == 0 {
        return vec![ClosedWalk::trivial(0)];
    }
    let nh = g.num_halves();
    // state index: 2h for orientation +, 2h+1 for −
    let mut seen = vec![false; 2 * nh];
    let mut faces = Vec::new();
    for neg in [false, true] {
        for h0 in 0..nh {
            if seen[2 * h0 + neg as usize] {
                continue;
            }
            let mut steps = Vec::new();
            let (mut h, mut eps) = (h0, neg);
            loop {
                seen[2 * h + eps as usize] = true;
                let tw = twisted[edge_of(h)];
                // reverse traversal of this step
                seen[2 * mate(h) + (!(eps ^ tw)) as usize] = true;
                steps.push(h);
                let a = mate(h);
                eps ^= tw;
                h = if eps { pred[a] } else { succ[a] };
                if h == h0 && eps == neg {
                    break;
                }
            }
            faces.push(ClosedWalk::from_parts(g.incv(steps[0]), steps, false));
        }
    }
    faces
}

/// Vertex flips making every signature positive, if any exist.
fn flip_normalization(g: &Graph, twisted: &[bool]) -> Option<Vec<bool>> {
    let mut flip = vec![None; g.n()];
    flip[0] = Some(false);
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        let fv = flip[v].unwrap();
        for &h in g.halves_at(v) {
            let w = g.incv(mate(h));
            let want = fv ^ twisted[edge_of(h)];
            match flip[w] {
                None => {
                    flip[w] = Some(want);
                    queue.push_back(w);
                }
                Some(fw) if fw != want => return None,
                _ => {}
            }
        }
    }
    Some(flip.into_iter().map(|x| x.unwrap_or(false)).collect())
}

/// Euler genus `2 − n + m − f`; `None` if that is negative.
pub fn euler_genus(n: usize, m: usize, f: usize) -> Option<usize> {
    let g = 2 + m as i64 - n as i64 - f as i64;
    (g >= 0).then_some(g as usize)
}

/// Orientable embeddings have even genus, so `f ≡ m − n`; for eulerian hosts that is
/// also `≡ ℓ`, the number of vertices of degree 0 mod 4.
pub fn face_parity_check(n: usize, m: usize, zero_mod4: usize, f: usize) -> bool {
    (f + m + n) % 2 == 0 && (f + zero_mod4) % 2 == 0
}

/// Rotations alternate between incoming and outgoing halves at every vertex.
pub fn is_directed_embedding(e: &Embedding, d: &Digraph) -> bool {
    if e.graph() != d.graph() {
        return false;
    }
    e.rotation().iter().all(|rot| {
        let k = rot.len();
        (0..k).all(|i| Digraph::is_out(rot[i]) != Digraph::is_out(rot[(i + 1) % k]))
    })
}

/// 2-face-colouring of a directed embedding (adjacent across every arc), if one exists.
pub fn directed_orientability_via_2coloring(e: &Embedding, d: &Digraph) -> Option<Vec<u8>> {
    if !is_directed_embedding(e, d) {
        return None;
    }
    let nf = e.num_faces();
    let mut adj = vec![Vec::new(); nf];
    for fs in e.faces_of_edges() {
        if fs[0] == fs[1] {
            return None;
        }
        adj[fs[0]].push(fs[1]);
        adj[fs[1]].push(fs[0]);
    }
    let mut color = vec![u8::MAX; nf];
    color[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(f) = queue.pop_front() {
        for &x in &adj[f] {
            if color[x] == u8::MAX {
                color[x] = 1 - color[f];
                queue.push_back(x);
            } else if color[x] == color[f] {
                return None;
            }
        }
    }
    Some(color)
}

/// Builds an embedding whose faces are exactly `walks`.
///
/// The rotation at each vertex is read off its transition cycle. Each passage then
/// turns either with or against that rotation; vertices of degree ≤ 2 leave that
/// choice free. Signatures are the products of the turns at both ends of an edge
/// traversal, which gives one parity equation per edge, solved over GF(2).
pub fn embedding_from_walks(g: &Graph, walks: &[ClosedWalk]) -> Result<Embedding> {
    if let Err(v) = is_cyclically_compatible(g, walks) {
        return Err(Error::Precondition(format!(
            "walk collection is not cyclically compatible at vertex {}",
            g.vertex_name(v)
        )));
    }
    if g.m() == 0 {
        return Embedding::new(g.clone(), vec![Vec::new()], Vec::new());
    }
    let trs = transition_graphs(g, walks);
    let nh = g.num_halves();
    let mut succ = vec![usize::MAX; nh];
    let mut pred = vec![usize::MAX; nh];
    let mut rotation = Vec::with_capacity(g.n());
    for tr in &trs {
        // neighbours of each half in the transition cycle
        let mut nb: Vec<Vec<Half>> = vec![Vec::new(); tr.halves.len()];
        let loc = |h: Half| tr.halves.binary_search(&h).unwrap();
        for &(a, b) in &tr.edges {
            nb[loc(a)].push(b);
            nb[loc(b)].push(a);
        }
        let h0 = tr.halves[0];
        let mut rot = vec![h0];
        let (mut prev, mut cur) = (h0, nb[0][0]);
        while cur != h0 {
            rot.push(cur);
            let ns = &nb[loc(cur)];
            let next = if ns[0] == prev { ns[1] } else { ns[0] };
            prev = cur;
            cur = next;
        }
        if rot.len() != tr.halves.len() {
            // a 2-cycle {a,b} with both transitions (a,b): the loop above stops early only
            // when the cycle has length ≤ 2, which still lists every half.
            return verification(format!("transition cycle at {} was not traversed fully", g.vertex_name(tr.vertex)));
        }
        let k = rot.len();
        for i in 0..k {
            succ[rot[i]] = rot[(i + 1) % k];
            pred[rot[(i + 1) % k]] = rot[i];
        }
        rotation.push(rot);
    }
    // passage ids: (walk, index); turn variable per passage
    let mut offset = Vec::with_capacity(walks.len());
    let mut total = 0;
    for w in walks {
        offset.push(total);
        total += w.len();
    }
    // fixed turn (Some(true) = against rotation) or free
    let mut fixed: Vec<Option<bool>> = vec![None; total];
    for (wi, w) in walks.iter().enumerate() {
        for (i, (_, a, b)) in w.passages(g).into_iter().enumerate() {
            let with = succ[a] == b;
            let against = pred[a] == b;
            fixed[offset[wi] + i] = match (with, against) {
                (true, false) => Some(false),
                (false, true) => Some(true),
                _ => None,
            };
        }
    }
    // traversals of each edge: (passage before, passage after)
    let mut trav: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.m()];
    for (wi, w) in walks.iter().enumerate() {
        let k = w.len();
        for (i, &h) in w.steps().iter().enumerate() {
            let before = offset[wi] + (i + k - 1) % k;
            let after = offset[wi] + i;
            trav[edge_of(h)].push((before, after));
        }
    }
    let free: Vec<usize> = (0..total).filter(|&p| fixed[p].is_none()).collect();
    let mut var_of = vec![usize::MAX; total];
    for (i, &p) in free.iter().enumerate() {
        var_of[p] = i;
    }
    let mut eqs = Vec::new();
    for t in &trav {
        let mut vars = Vec::new();
        let mut rhs = false;
        for &p in [t[0].0, t[0].1, t[1].0, t[1].1].iter() {
            match fixed[p] {
                Some(x) => rhs ^= x,
                None => vars.push(var_of[p]),
            }
        }
        eqs.push((vars, rhs));
    }
    // tracing is deterministic on (outgoing half, turn), so two passages leaving by the
    // same half must turn oppositely; this matters where both turns give the same half
    let mut leaving: Vec<Vec<usize>> = vec![Vec::new(); nh];
    for (wi, w) in walks.iter().enumerate() {
        for (i, (_, _, b)) in w.passages(g).into_iter().enumerate() {
            leaving[b].push(offset[wi] + i);
        }
    }
    for ps in &leaving {
        if let [p, q] = ps[..] {
            let mut vars = Vec::new();
            let mut rhs = true;
            for x in [p, q] {
                match fixed[x] {
                    Some(t) => rhs ^= t,
                    None => vars.push(var_of[x]),
                }
            }
            eqs.push((vars, rhs));
        }
    }
    let sol = solve_gf2(free.len(), &eqs)
        .ok_or_else(|| Error::Verification("no signature assignment realizes the walks".into()))?;
    let turn = |p: usize| fixed[p].unwrap_or_else(|| sol[var_of[p]]);
    let twisted: Vec<bool> = trav.iter().map(|t| turn(t[0].0) ^ turn(t[0].1)).collect();
    let emb = Embedding::new(g.clone(), rotation, twisted)?;
    if canonical_multiset(emb.faces()) != canonical_multiset(walks) {
        return verification("synthesized embedding does not reproduce the walks");
    }
    Ok(emb)
}

/// Solves a sparse GF(2) system; each equation is (variables, right-hand side).
pub(crate) fn solve_gf2(nvars: usize, eqs: &[(Vec<usize>, bool)]) -> Option<Vec<bool>> {
    let words = nvars / 64 + 1;
    let mut rows: Vec<(Vec<u64>, bool)> = eqs
        .iter()
        .map(|(vars, rhs)| {
            let mut r = vec![0u64; words];
            for &v in vars {
                r[v / 64] ^= 1 << (v % 64);
            }
            (r, *rhs)
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..nvars {
        let bit = |r: &Vec<u64>| r[col / 64] >> (col % 64) & 1 == 1;
        let Some(pr) = (row..rows.len()).find(|&i| bit(&rows[i].0)) else { continue };
        rows.swap(row, pr);
        for i in 0..rows.len() {
            if i != row && bit(&rows[i].0) {
                let (src, rhs) = rows[row].clone();
                for (a, b) in rows[i].0.iter_mut().zip(&src) {
                    *a ^= b;
                }
                rows[i].1 ^= rhs;
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|(_, rhs)| *rhs) {
        return None;
    }
    let mut x = vec![false; nvars];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i].1;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dip4() -> Digraph {
        // a1, a2: u→v ; b1, b2: v→u
        Digraph::new(2, &[(0, 1), (0, 1), (1, 0), (1, 0)]).unwrap()
    }

    #[test]
    fn loop_faces_by_signature() {
        let g = Graph::new(1, &[(0, 0)]).unwrap();
        let e = Embedding::new(g.clone(), vec![vec![0, 1]], vec![false]).unwrap();
        assert_eq!((e.num_faces(), e.euler_genus(), e.is_orientable()), (2, 0, true));
        let e = Embedding::new(g, vec![vec![0, 1]], vec![true]).unwrap();
        assert_eq!((e.num_faces(), e.euler_genus(), e.is_orientable()), (1, 1, false));
        // the face runs the loop twice in one direction; only a twist reproduces it
        let back = embedding_from_walks(e.graph(), e.faces()).unwrap();
        assert!(back.twisted()[0]);
        assert_eq!(back.num_faces(), 1);
    }

    #[test]
    fn dip4_alternating_rotation_gives_two_euler_faces() {
        let d = dip4();
        // u: a1+ b2- a2+ b1- ; v: a1- b2+ a2- b1+
        let rot = vec![vec![0, 7, 2, 5], vec![1, 6, 3, 4]];
        let e = Embedding::orientable_from_rotation(d.graph().clone(), rot).unwrap();
        assert!(is_directed_embedding(&e, &d));
        assert_eq!(e.num_faces(), 2);
        assert!(e.is_bi_eulerian());
        assert_eq!(e.euler_genus(), 2);
        let col = directed_orientability_via_2coloring(&e, &d).unwrap();
        assert_ne!(col[0], col[1]);
        let back = embedding_from_walks(d.graph(), e.faces()).unwrap();
        assert_eq!(canonical_multiset(back.faces()), canonical_multiset(e.faces()));
    }

    #[test]
    fn consecutive_outs_not_directed() {
        let d = dip4();
        let rot = vec![vec![0, 2, 5, 7], vec![1, 3, 4, 6]];
        let e = Embedding::orientable_from_rotation(d.graph().clone(), rot).unwrap();
        assert!(!is_directed_embedding(&e, &d));
    }

    #[test]
    fn one_face_loop_digraph_not_colorable() {
        let d = Digraph::new(1, &[(0, 0)]).unwrap();
        let e = Embedding::new(d.graph().clone(), vec![vec![0, 1]], vec![true]).unwrap();
        assert!(is_directed_embedding(&e, &d));
        assert!(directed_orientability_via_2coloring(&e, &d).is_none());
    }

    #[test]
    fn cycle_walked_twice_is_planar() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let w = ClosedWalk::new(&g, vec![0, 2, 4]).unwrap();
        let e = embedding_from_walks(&g, &[w.clone(), w.clone()]).unwrap();
        assert_eq!((e.num_faces(), e.euler_genus()), (2, 0));
        assert!(embedding_from_walks(&g, &[w]).is_err());
    }

    #[test]
    fn figure_eight_with_negated_loop() {
        let g = Graph::new(1, &[(0, 0), (0, 0)]).unwrap();
        let e = Embedding::new(g, vec![vec![0, 2, 1, 3]], vec![true, false]).unwrap();
        assert!(!e.is_orientable());
        assert_eq!(e.num_faces() as i64, 2 - 1 + 2 - e.euler_genus() as i64);
    }

    #[test]
    fn genus_formula() {
        assert_eq!(euler_genus(2, 4, 2), Some(2));
        assert_eq!(euler_genus(5, 5, 2), Some(0));
        assert_eq!(euler_genus(3, 1, 2), None);
    }

    #[test]
    fn gf2_solver() {
        let s = solve_gf2(3, &[(vec![0, 1], true), (vec![1, 2], false)]).unwrap();
        assert!(s[0] ^ s[1]);
        assert!(!(s[1] ^ s[2]));
        assert!(solve_gf2(1, &[(vec![0], true), (vec![0], false)]).is_none());
    }
}
