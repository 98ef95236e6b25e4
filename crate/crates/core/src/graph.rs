//! Half-edge graphs and digraphs.
//!
//! Edge `e` owns the halves `2e` and `2e + 1`, so the mate involution is `h ^ 1`.
//! In a digraph half `2e` is the tail (outgoing) end and `2e + 1` the head.

use std::collections::VecDeque;
use std::ops::Deref;

use crate::error::{invalid, precondition, Result};
use crate::walk::ClosedWalk;

pub type Vertex = usize;
pub type Half = usize;
pub type EdgeId = usize;

#[inline]
pub fn mate(h: Half) -> Half {
    h ^ 1
}

#[inline]
pub fn edge_of(h: Half) -> EdgeId {
    h >> 1
}

/// Undirected multigraph (loops allowed) in half-edge form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    incv: Vec<Vertex>,
    at: Vec<Vec<Half>>,
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
}

impl Graph {
    /// Builds a graph on vertices `0..n` with edge `i` joining `edges[i]`.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        let vn = (0..n).map(|v| v.to_string()).collect();
        let en = (0..edges.len()).map(|e| e.to_string()).collect();
        Graph::with_names(vn, en, edges)
    }

    pub fn with_names(vertex_names: Vec<String>, edge_names: Vec<String>, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        let n = vertex_names.len();
        if n == 0 {
            return invalid("graph has no vertices");
        }
        if edge_names.len() != edges.len() {
            return invalid("edge name count does not match edge count");
        }
        let mut incv = Vec::with_capacity(2 * edges.len());
        let mut at = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return invalid(format!("edge {} has a dangling endpoint", edge_names[e]));
            }
            incv.push(u);
            incv.push(v);
            at[u].push(2 * e);
            at[v].push(2 * e + 1);
        }
        if n > 1 {
            if let Some(v) = (0..n).find(|&v| at[v].is_empty()) {
                return invalid(format!("vertex {} is isolated", vertex_names[v]));
            }
        }
        Ok(Graph { incv, at, vertex_names, edge_names })
    }

    pub fn n(&self) -> usize {
        self.at.len()
    }

    pub fn m(&self) -> usize {
        self.incv.len() / 2
    }

    pub fn num_halves(&self) -> usize {
        self.incv.len()
    }

    #[inline]
    pub fn incv(&self, h: Half) -> Vertex {
        self.incv[h]
    }

    /// Halves at `v`, in increasing id order.
    pub fn halves_at(&self, v: Vertex) -> &[Half] {
        &self.at[v]
    }

    /// Degree of `v`; a loop counts twice.
    pub fn degree(&self, v: Vertex) -> usize {
        self.at[v].len()
    }

    pub fn ends(&self, e: EdgeId) -> (Vertex, Vertex) {
        (self.incv[2 * e], self.incv[2 * e + 1])
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.incv[2 * e] == self.incv[2 * e + 1]
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        (0..self.m()).map(|e| self.ends(e)).collect()
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertex_names[v]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edge_names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<Vertex> {
        self.vertex_names.iter().position(|x| x == name)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_names.iter().position(|x| x == name)
    }

    /// Human readable half name: `<edge>.0` / `<edge>.1`.
    pub fn half_name(&self, h: Half) -> String {
        format!("{}.{}", self.edge_names[edge_of(h)], h & 1)
    }

    pub fn half_by_name(&self, s: &str) -> Option<Half> {
        let (e, side) = s.rsplit_once('.')?;
        let side: usize = match side {
            "0" => 0,
            "1" => 1,
            _ => return None,
        };
        Some(2 * self.edge_by_name(e)? + side)
    }

    /// Connectivity restricted to the edges with `keep(e)`; returns a component id per vertex.
    pub fn components_with(&self, keep: impl Fn(EdgeId) -> bool) -> (usize, Vec<usize>) {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &h in &self.at[v] {
                    if !keep(edge_of(h)) {
                        continue;
                    }
                    let w = self.incv[mate(h)];
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.components_with(|_| true).0 == 1
    }

    pub fn is_eulerian(&self) -> bool {
        self.is_connected() && (0..self.n()).all(|v| self.degree(v) % 2 == 0)
    }

    pub fn require_eulerian(&self) -> Result<()> {
        if !self.is_connected() {
            return precondition("graph is not connected");
        }
        if let Some(v) = (0..self.n()).find(|&v| self.degree(v) % 2 == 1) {
            return precondition(format!("vertex {} has odd degree", self.vertex_names[v]));
        }
        Ok(())
    }

    /// Parent half (pointing towards the root) of a BFS spanning tree, `None` at the root.
    pub fn spanning_tree(&self) -> Vec<Option<Half>> {
        let mut parent = vec![None; self.n()];
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &h in &self.at[v] {
                let w = self.incv[mate(h)];
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(mate(h));
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Vertices of degree ≡ 0 (mod 4).
    pub fn zero_mod4_vertices(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.degree(v) % 4 == 0).collect()
    }

    /// `true` iff the graph is a single cycle (including a single loop or a digon).
    pub fn is_cycle(&self) -> bool {
        self.m() == self.n() && self.is_connected() && (0..self.n()).all(|v| self.degree(v) == 2)
    }
}

/// Digraph: a graph whose edge `e` is the arc from `incv(2e)` to `incv(2e + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    g: Graph,
}

impl Deref for Digraph {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.g
    }
}

impl Digraph {
    /// Arc `i` runs from `arcs[i].0` to `arcs[i].1`.
    pub fn new(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<Digraph> {
        Ok(Digraph { g: Graph::new(n, arcs)? })
    }

    pub fn from_graph(g: Graph) -> Digraph {
        Digraph { g }
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn into_graph(self) -> Graph {
        self.g
    }

    #[inline]
    pub fn is_out(h: Half) -> bool {
        h & 1 == 0
    }

    pub fn tail(&self, e: EdgeId) -> Vertex {
        self.g.incv(2 * e)
    }

    pub fn head(&self, e: EdgeId) -> Vertex {
        self.g.incv(2 * e + 1)
    }

    pub fn outs(&self, v: Vertex) -> impl Iterator<Item = Half> + '_ {
        self.g.halves_at(v).iter().copied().filter(|&h| Digraph::is_out(h))
    }

    pub fn ins(&self, v: Vertex) -> impl Iterator<Item = Half> + '_ {
        self.g.halves_at(v).iter().copied().filter(|&h| !Digraph::is_out(h))
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.outs(v).count()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.ins(v).count()
    }

    pub fn is_eulerian(&self) -> bool {
        self.g.is_connected() && (0..self.n()).all(|v| self.out_degree(v) == self.in_degree(v))
    }

    pub fn require_eulerian(&self) -> Result<()> {
        if !self.g.is_connected() {
            return precondition("digraph is not connected");
        }
        if let Some(v) = (0..self.n()).find(|&v| self.out_degree(v) != self.in_degree(v)) {
            return precondition(format!("vertex {} is unbalanced", self.vertex_name(v)));
        }
        Ok(())
    }

    /// The digraph with every arc reversed (half `h` becomes half `mate(h)`).
    pub fn reversed(&self) -> Digraph {
        let arcs: Vec<_> = (0..self.m()).map(|e| (self.head(e), self.tail(e))).collect();
        let g = Graph::with_names(self.vertex_names().to_vec(), self.edge_names().to_vec(), &arcs)
            .expect("reversal keeps validity");
        Digraph { g }
    }
}

/// Orients every edge of `g` along the euler circuit `t`.
///
/// Returns the digraph (same vertex and edge ids) and the map from the halves of
/// `g` to the halves of the digraph.
pub fn orient_along(g: &Graph, t: &ClosedWalk) -> Result<(Digraph, Vec<Half>)> {
    t.validate(g)?;
    if !t.is_euler_circuit(g) {
        return precondition("walk is not an euler circuit");
    }
    let mut arcs = vec![(0, 0); g.m()];
    let mut map = vec![0; g.num_halves()];
    for &h in t.steps() {
        let e = edge_of(h);
        arcs[e] = (g.incv(h), g.incv(mate(h)));
        map[h] = 2 * e;
        map[mate(h)] = 2 * e + 1;
    }
    let d = Graph::with_names(g.vertex_names().to_vec(), g.edge_names().to_vec(), &arcs)?;
    Ok((Digraph { g: d }, map))
}
