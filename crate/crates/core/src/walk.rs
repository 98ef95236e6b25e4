//! Closed walks and transition graphs.

use crate::error::{invalid, Result};
use crate::graph::{edge_of, mate, Digraph, Graph, Half, Vertex};

/// A closed walk stored as its start vertex and the halves it leaves by.
///
/// Step `i` leaves `incv(steps[i])` along `edge_of(steps[i])` and arrives by
/// `mate(steps[i])` at the vertex the next step leaves from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedWalk {
    start: Vertex,
    steps: Vec<Half>,
    directed: bool,
}

impl ClosedWalk {
    pub fn new(g: &Graph, steps: Vec<Half>) -> Result<ClosedWalk> {
        if steps.is_empty() {
            return invalid("empty step list; use ClosedWalk::trivial");
        }
        let w = ClosedWalk { start: g.incv(steps[0]), steps, directed: false };
        w.validate(g)?;
        Ok(w)
    }

    /// A directed walk: every step must leave by an outgoing half.
    pub fn new_directed(d: &Digraph, steps: Vec<Half>) -> Result<ClosedWalk> {
        let mut w = ClosedWalk::new(d.graph(), steps)?;
        if let Some(&h) = w.steps.iter().find(|&&h| !Digraph::is_out(h)) {
            return invalid(format!("directed walk leaves by incoming half {}", d.half_name(h)));
        }
        w.directed = true;
        Ok(w)
    }

    /// The length-0 walk at `v` (the face of the trivial graph).
    pub fn trivial(v: Vertex) -> ClosedWalk {
        ClosedWalk { start: v, steps: Vec::new(), directed: false }
    }

    pub(crate) fn from_parts(start: Vertex, steps: Vec<Half>, directed: bool) -> ClosedWalk {
        ClosedWalk { start, steps, directed }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let k = self.steps.len();
        for (i, &h) in self.steps.iter().enumerate() {
            if h >= g.num_halves() {
                return invalid(format!("walk uses unknown half {h}"));
            }
            let next = self.steps[(i + 1) % k];
            if g.incv(mate(h)) != g.incv(next) {
                return invalid(format!(
                    "walk is broken after step {i}: arrives at {} but continues from {}",
                    g.vertex_name(g.incv(mate(h))),
                    g.vertex_name(g.incv(next))
                ));
            }
        }
        if k > 0 && g.incv(self.steps[0]) != self.start {
            return invalid("walk start does not match its first step");
        }
        Ok(())
    }

    pub fn start(&self) -> Vertex {
        self.start
    }

    pub fn steps(&self) -> &[Half] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Vertex sequence `v_0 .. v_{k-1}` (the closing return to `v_0` is implicit).
    pub fn vertices(&self, g: &Graph) -> Vec<Vertex> {
        if self.steps.is_empty() {
            return vec![self.start];
        }
        self.steps.iter().map(|&h| g.incv(h)).collect()
    }

    /// Same walk traversed backwards.
    pub fn reversed(&self) -> ClosedWalk {
        let steps: Vec<Half> = self.steps.iter().rev().map(|&h| mate(h)).collect();
        let start = self.start;
        // the reversed walk leaves v_0 by the mate of the last step, and that half sits at v_0
        ClosedWalk { start, steps, directed: false }
    }

    /// Rotates the step list so it starts at position `i`.
    pub fn rotated(&self, i: usize, g: &Graph) -> ClosedWalk {
        let mut steps = self.steps.clone();
        steps.rotate_left(i);
        let start = steps.first().map_or(self.start, |&h| g.incv(h));
        ClosedWalk { start, steps, directed: self.directed }
    }

    /// Uses every edge of `g` exactly once.
    pub fn is_euler_circuit(&self, g: &Graph) -> bool {
        if self.steps.len() != g.m() {
            return false;
        }
        let mut used = vec![false; g.m()];
        for &h in &self.steps {
            if std::mem::replace(&mut used[edge_of(h)], true) {
                return false;
            }
        }
        true
    }

    /// Canonical key: least rotation of the half sequence; for undirected walks also
    /// over the reversal.
    pub fn canonical(&self) -> Vec<Half> {
        if self.directed {
            return least_rotation(&self.steps);
        }
        self.canonical_undirected()
    }

    /// Canonical key up to rotation and reversal, whatever the directed flag says.
    pub fn canonical_undirected(&self) -> Vec<Half> {
        let a = least_rotation(&self.steps);
        let rev: Vec<Half> = self.steps.iter().rev().map(|&h| mate(h)).collect();
        let b = least_rotation(&rev);
        a.min(b)
    }

    /// Canonical key up to rotation only (direction matters).
    pub fn canonical_directed(&self) -> Vec<Half> {
        least_rotation(&self.steps)
    }

    /// Passages `(vertex, arriving half, leaving half)` in walk order; the passage at
    /// index `i` arrives by `mate(steps[i])`.
    pub fn passages(&self, g: &Graph) -> Vec<(Vertex, Half, Half)> {
        let k = self.steps.len();
        (0..k)
            .map(|i| {
                let leave = self.steps[(i + 1) % k];
                (g.incv(leave), mate(self.steps[i]), leave)
            })
            .collect()
    }

    /// Directed view: if the reversal of this walk is directed in `d`, return it.
    pub fn as_directed(&self, d: &Digraph) -> Option<ClosedWalk> {
        if self.steps.iter().all(|&h| Digraph::is_out(h)) {
            return Some(ClosedWalk { directed: true, ..self.clone() });
        }
        let r = self.reversed();
        if r.steps.iter().all(|&h| Digraph::is_out(h)) {
            return Some(ClosedWalk { directed: true, start: r.steps.first().map_or(r.start, |&h| d.incv(h)), ..r });
        }
        None
    }

    /// `true` iff the cyclic vertex sequence contains `x, y, x, y` in this order.
    pub fn interlaces(&self, g: &Graph, x: Vertex, y: Vertex) -> bool {
        interlaced_positions(&self.vertices(g), x, y).is_some()
    }
}

/// Lexicographically earliest positions `p1 < p2 < p3 < p4` with vertices `a b a b`,
/// where `{a, b} = {x, y}`.
pub fn interlaced_positions(seq: &[Vertex], x: Vertex, y: Vertex) -> Option<[usize; 4]> {
    for p1 in 0..seq.len() {
        let a = seq[p1];
        if a != x && a != y {
            continue;
        }
        let b = if a == x { y } else { x };
        let want = [b, a, b];
        let mut pos = [0usize; 3];
        let mut j = 0;
        for (p, &v) in seq.iter().enumerate().skip(p1 + 1) {
            if j < 3 && v == want[j] {
                pos[j] = p;
                j += 1;
            }
        }
        if j == 3 {
            let cand = [p1, pos[0], pos[1], pos[2]];
            // greedy completion from the least p1 is already lexicographically least
            return Some(cand);
        }
    }
    None
}

pub(crate) fn least_rotation(s: &[Half]) -> Vec<Half> {
    let k = s.len();
    if k == 0 {
        return Vec::new();
    }
    let mut best = 0;
    for i in 1..k {
        for j in 0..k {
            let (a, b) = (s[(i + j) % k], s[(best + j) % k]);
            if a != b {
                if a < b {
                    best = i;
                }
                break;
            }
        }
    }
    let mut out = s.to_vec();
    out.rotate_left(best);
    out
}

/// Sorted canonical keys of a walk collection; equal iff the collections agree up to
/// rotation and reversal of each member.
pub fn canonical_multiset(walks: &[ClosedWalk]) -> Vec<Vec<Half>> {
    let mut keys: Vec<_> = walks.iter().map(|w| w.canonical_undirected()).collect();
    keys.sort();
    keys
}

/// Graph on the halves at one vertex recording the passages of a walk collection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionGraph {
    pub vertex: Vertex,
    pub halves: Vec<Half>,
    /// One unordered pair per passage; `(h, h)` is an immediate backtrack.
    pub edges: Vec<(Half, Half)>,
}

impl TransitionGraph {
    fn local(&self, h: Half) -> usize {
        self.halves.binary_search(&h).expect("half belongs to the anchor vertex")
    }

    /// Degree in the transition graph; loops count twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.halves.len()];
        for &(a, b) in &self.edges {
            deg[self.local(a)] += 1;
            deg[self.local(b)] += 1;
        }
        deg
    }

    /// Number of connected components (isolated halves included).
    pub fn components(&self) -> Vec<usize> {
        let k = self.halves.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, self.local(a)), find(&mut parent, self.local(b)));
            parent[ra] = rb;
        }
        (0..k).map(|i| find(&mut parent, i)).collect()
    }

    /// A single cycle through every half.
    pub fn is_single_cycle(&self) -> bool {
        if self.halves.is_empty() {
            return self.edges.is_empty();
        }
        if self.degrees().iter().any(|&d| d != 2) {
            return false;
        }
        let c = self.components();
        c.iter().all(|&x| x == c[0])
    }

    /// A subgraph of some Hamilton cycle on the halves: a disjoint union of paths, or one
    /// cycle through everything.
    pub fn is_subgraph_of_cycle(&self) -> bool {
        let deg = self.degrees();
        if deg.iter().any(|&d| d > 2) {
            return false;
        }
        let comp = self.components();
        let k = self.halves.len();
        let mut verts = vec![0usize; k];
        let mut edges = vec![0usize; k];
        for i in 0..k {
            verts[comp[i]] += 1;
        }
        for &(a, _) in &self.edges {
            edges[comp[self.local(a)]] += 1;
        }
        let cyclic: Vec<usize> = (0..k).filter(|&r| verts[r] > 0 && edges[r] >= verts[r]).collect();
        match cyclic.len() {
            0 => true,
            1 => verts[cyclic[0]] == k,
            _ => false,
        }
    }
}

/// Transition graph of `walks` at `v`.
pub fn transition_graph(g: &Graph, walks: &[ClosedWalk], v: Vertex) -> TransitionGraph {
    let mut edges = Vec::new();
    for w in walks {
        for (x, a, b) in w.passages(g) {
            if x == v {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    TransitionGraph { vertex: v, halves: g.halves_at(v).to_vec(), edges }
}

/// All transition graphs in one pass.
pub fn transition_graphs(g: &Graph, walks: &[ClosedWalk]) -> Vec<TransitionGraph> {
    let mut out: Vec<TransitionGraph> = (0..g.n())
        .map(|v| TransitionGraph { vertex: v, halves: g.halves_at(v).to_vec(), edges: Vec::new() })
        .collect();
    for w in walks {
        for (x, a, b) in w.passages(g) {
            out[x].edges.push((a.min(b), a.max(b)));
        }
    }
    out
}

/// Result of the cyclic-compatibility test: `Err(v)` names the first failing vertex.
pub fn is_cyclically_compatible(g: &Graph, walks: &[ClosedWalk]) -> std::result::Result<(), Vertex> {
    if g.m() == 0 {
        return if walks.len() == 1 && walks[0].is_empty() { Ok(()) } else { Err(0) };
    }
    if walks.iter().any(|w| w.is_empty() || w.validate(g).is_err()) {
        return Err(walks.iter().find(|w| w.validate(g).is_err()).map_or(0, |w| w.start()));
    }
    for tr in transition_graphs(g, walks) {
        if !tr.is_single_cycle() {
            return Err(tr.vertex);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn double_traversal_of_cycle_is_compatible() {
        let g = cycle(4);
        let w = ClosedWalk::new(&g, vec![0, 2, 4, 6]).unwrap();
        assert!(is_cyclically_compatible(&g, &[w.clone(), w.reversed()]).is_ok());
        assert!(is_cyclically_compatible(&g, &[w.clone(), w.clone()]).is_ok());
        assert_eq!(is_cyclically_compatible(&g, &[w]), Err(0));
    }

    #[test]
    fn degree4_circuit_gives_matching() {
        // figure-eight: two loops at one vertex
        let g = Graph::new(1, &[(0, 0), (0, 0)]).unwrap();
        let w = ClosedWalk::new(&g, vec![0, 2]).unwrap();
        let tr = transition_graph(&g, &[w], 0);
        assert_eq!(tr.edges.len(), 2);
        assert_eq!(tr.degrees(), vec![1, 1, 1, 1]);
        assert!(tr.is_subgraph_of_cycle());
        assert!(!tr.is_single_cycle());
    }

    #[test]
    fn backtrack_is_transition_loop() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let w = ClosedWalk::new(&g, vec![0, 1]).unwrap();
        let tr = transition_graph(&g, &[w.clone()], 1);
        assert_eq!(tr.edges, vec![(1, 1)]);
        assert!(is_cyclically_compatible(&g, &[w]).is_ok());
    }

    #[test]
    fn canonical_ignores_rotation_and_reversal() {
        let g = cycle(3);
        let w = ClosedWalk::new(&g, vec![0, 2, 4]).unwrap();
        let r = w.reversed();
        assert_eq!(r.steps(), &[5, 3, 1]);
        assert_eq!(w.canonical(), r.canonical());
        assert_eq!(w.canonical(), w.rotated(1, &g).canonical());
    }

    #[test]
    fn interlacing_scan() {
        assert_eq!(interlaced_positions(&[0, 1, 0, 1], 0, 1), Some([0, 1, 2, 3]));
        assert_eq!(interlaced_positions(&[0, 0, 1, 1], 0, 1), None);
        assert_eq!(interlaced_positions(&[2, 1, 0, 1, 0], 0, 1), Some([1, 2, 3, 4]));
    }
}
