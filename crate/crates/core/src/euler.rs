//! Euler circuits, circuits through prescribed vertices, arc-disjoint path pairs and
//! interlacing circuits.

use std::collections::VecDeque;

use crate::error::{precondition, verification, Error, Result};
use crate::flow::FlowNet;
use crate::graph::{edge_of, mate, Digraph, Graph, Half, Vertex};
use crate::walk::{interlaced_positions, ClosedWalk};

/// Smallest unused half at `v` (outgoing only when `directed`).
fn next_unused(g: &Graph, v: Vertex, used: &[bool], directed: bool) -> Option<Half> {
    g.halves_at(v)
        .iter()
        .copied()
        .find(|&h| !used[edge_of(h)] && (!directed || Digraph::is_out(h)))
}

/// Greedy trail from `v` taking the smallest unused half until stuck.
fn greedy_trail(g: &Graph, mut v: Vertex, used: &mut [bool], directed: bool) -> Vec<Half> {
    let mut out = Vec::new();
    while let Some(h) = next_unused(g, v, used, directed) {
        used[edge_of(h)] = true;
        out.push(h);
        v = g.incv(mate(h));
    }
    out
}

/// Splices every unused edge into the closed trail `steps` (which starts at `start`).
/// Splicing always happens at the earliest trail vertex that still has unused edges.
fn splice_rest(g: &Graph, start: Vertex, mut steps: Vec<Half>, used: &mut [bool], directed: bool) -> Result<Vec<Half>> {
    loop {
        let mut pos = None;
        for i in 0..=steps.len() {
            let v = if i < steps.len() { g.incv(steps[i]) } else { start };
            if next_unused(g, v, used, directed).is_some() {
                pos = Some((i, v));
                break;
            }
        }
        let Some((i, v)) = pos else { break };
        let sub = greedy_trail(g, v, used, directed);
        if sub.is_empty() || g.incv(mate(*sub.last().unwrap())) != v {
            return precondition("graph is not eulerian: a detour did not close");
        }
        steps.splice(i..i, sub);
    }
    if used.iter().any(|&u| !u) {
        return precondition("graph is not connected");
    }
    Ok(steps)
}

/// Hierholzer euler circuit of an undirected graph starting at `start`.
pub fn euler_circuit(g: &Graph, start: Vertex) -> Result<ClosedWalk> {
    g.require_eulerian()?;
    if g.m() == 0 {
        return Ok(ClosedWalk::trivial(start));
    }
    if g.degree(start) == 0 {
        return precondition("start vertex has no edges");
    }
    let mut used = vec![false; g.m()];
    let first = greedy_trail(g, start, &mut used, false);
    let steps = splice_rest(g, start, first, &mut used, false)?;
    ClosedWalk::new(g, steps)
}

/// Directed euler circuit starting at `start`.
pub fn euler_circuit_directed(d: &Digraph, start: Vertex) -> Result<ClosedWalk> {
    d.require_eulerian()?;
    if d.m() == 0 {
        return Ok(ClosedWalk::trivial(start));
    }
    let mut used = vec![false; d.m()];
    let first = greedy_trail(d, start, &mut used, true);
    let steps = splice_rest(d, start, first, &mut used, true)?;
    ClosedWalk::new_directed(d, steps)
}

/// Directed euler circuit, started at `targets[0]`, whose vertex sequence (including the
/// final return) contains `targets` as a subsequence.
pub fn euler_circuit_through(d: &Digraph, targets: &[Vertex]) -> Result<ClosedWalk> {
    d.require_eulerian()?;
    if targets.is_empty() {
        return euler_circuit_directed(d, 0);
    }
    if targets.iter().any(|&v| v >= d.n()) {
        return precondition("target vertex out of range");
    }
    if d.m() == 0 {
        return if targets.len() == 1 { Ok(ClosedWalk::trivial(targets[0])) } else { precondition("no trail visits the targets") };
    }
    let mut used = vec![false; d.m()];
    let mut trail = Vec::new();
    if !segments(d, targets, 0, &mut used, &mut trail) {
        return precondition("no directed trail visits the targets in order");
    }
    close_and_extend(d, targets[0], trail, used)
}

/// Extends an explicitly given directed trail (a step list) to an euler circuit.
pub fn extend_trail(d: &Digraph, trail: &[Half]) -> Result<ClosedWalk> {
    d.require_eulerian()?;
    if trail.is_empty() {
        return euler_circuit_directed(d, 0);
    }
    let mut used = vec![false; d.m()];
    for (i, &h) in trail.iter().enumerate() {
        if !Digraph::is_out(h) || std::mem::replace(&mut used[edge_of(h)], true) {
            return precondition("trail repeats an arc or runs against an arc");
        }
        if i + 1 < trail.len() && d.incv(mate(h)) != d.incv(trail[i + 1]) {
            return precondition("trail is not connected");
        }
    }
    close_and_extend(d, d.incv(trail[0]), trail.to_vec(), used)
}

fn close_and_extend(d: &Digraph, start: Vertex, mut trail: Vec<Half>, mut used: Vec<bool>) -> Result<ClosedWalk> {
    let end = trail.last().map_or(start, |&h| d.incv(mate(h)));
    if end != start {
        let back = bfs_path(d, end, start, &used).ok_or_else(|| Error::Precondition("trail cannot be closed".into()))?;
        for &h in &back {
            used[edge_of(h)] = true;
        }
        trail.extend(back);
    }
    let steps = splice_rest(d, start, trail, &mut used, true)?;
    let w = ClosedWalk::new_directed(d, steps)?;
    if !w.is_euler_circuit(d) {
        return verification("extended trail is not an euler circuit");
    }
    Ok(w)
}

/// Backtracking over simple paths (or simple cycles, for equal endpoints) between
/// consecutive targets.
fn segments(d: &Digraph, targets: &[Vertex], i: usize, used: &mut [bool], trail: &mut Vec<Half>) -> bool {
    if i + 1 >= targets.len() {
        return true;
    }
    let (a, b) = (targets[i], targets[i + 1]);
    let mut found = false;
    let mut on_path = vec![false; d.n()];
    let mut path = Vec::new();
    simple_paths(d, a, b, used, &mut on_path, &mut path, &mut |used, path| {
        let len = trail.len();
        trail.extend_from_slice(path);
        if segments(d, targets, i + 1, used, trail) {
            found = true;
            return true;
        }
        trail.truncate(len);
        false
    });
    found
}

/// Enumerates nonempty simple directed paths `a → b` over unused arcs; the callback
/// returns `true` to stop, leaving the accepted path's arcs marked used.
fn simple_paths(
    d: &Digraph,
    v: Vertex,
    b: Vertex,
    used: &mut [bool],
    on_path: &mut [bool],
    path: &mut Vec<Half>,
    f: &mut dyn FnMut(&mut [bool], &[Half]) -> bool,
) -> bool {
    on_path[v] = true;
    let outs: Vec<Half> = d.outs(v).collect();
    for h in outs {
        let e = edge_of(h);
        if used[e] {
            continue;
        }
        let w = d.incv(mate(h));
        if w != b && on_path[w] {
            continue;
        }
        used[e] = true;
        path.push(h);
        let stop = if w == b { f(used, path) } else { simple_paths(d, w, b, used, on_path, path, f) };
        path.pop();
        if stop {
            // the accepted trail keeps its arcs marked
            on_path[v] = false;
            return true;
        }
        used[e] = false;
    }
    on_path[v] = false;
    false
}

fn bfs_path(d: &Digraph, a: Vertex, b: Vertex, used: &[bool]) -> Option<Vec<Half>> {
    let mut via = vec![usize::MAX; d.n()];
    let mut seen = vec![false; d.n()];
    seen[a] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            break;
        }
        for h in d.outs(v) {
            let w = d.incv(mate(h));
            if !used[edge_of(h)] && !seen[w] {
                seen[w] = true;
                via[w] = h;
                queue.push_back(w);
            }
        }
    }
    if !seen[b] {
        return None;
    }
    let mut path = Vec::new();
    let mut v = b;
    while v != a {
        path.push(via[v]);
        v = d.incv(via[v]);
    }
    path.reverse();
    Some(path)
}

/// `k` arc-disjoint `s → t` paths and `k` arc-disjoint `t → s` paths, all disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPairFamily {
    pub k: usize,
    pub s: Vertex,
    pub t: Vertex,
    pub forward: Vec<Vec<Half>>,
    pub backward: Vec<Vec<Half>>,
}

impl PathPairFamily {
    /// Checks endpoints, directions and pairwise disjointness.
    pub fn check(&self, d: &Digraph) -> Result<()> {
        let mut used = vec![false; d.m()];
        let all = self.forward.iter().map(|p| (p, self.s, self.t)).chain(self.backward.iter().map(|p| (p, self.t, self.s)));
        for (p, a, b) in all {
            if p.is_empty() || d.incv(p[0]) != a || d.incv(mate(*p.last().unwrap())) != b {
                return verification("path has wrong endpoints");
            }
            for (i, &h) in p.iter().enumerate() {
                if !Digraph::is_out(h) || std::mem::replace(&mut used[edge_of(h)], true) {
                    return verification("paths are not arc-disjoint directed paths");
                }
                if i + 1 < p.len() && d.incv(mate(h)) != d.incv(p[i + 1]) {
                    return verification("path is broken");
                }
            }
        }
        if self.forward.len() != self.k || self.backward.len() != self.k {
            return verification("wrong number of paths");
        }
        Ok(())
    }
}

/// Minimum edge cut of the underlying graph between `s` and `t`: the edges leaving the
/// `s` side of a minimum cut.
pub fn min_edge_cut(g: &Graph, s: Vertex, t: Vertex) -> (usize, Vec<usize>) {
    let mut net = FlowNet::new(g.n());
    for e in 0..g.m() {
        let (u, v) = g.ends(e);
        if u != v {
            net.add_arc(u, v, 1);
            net.add_arc(v, u, 1);
        }
    }
    let value = net.max_flow(s, t, i64::MAX) as usize;
    let side = net.reachable(s);
    let cut = (0..g.m())
        .filter(|&e| {
            let (u, v) = g.ends(e);
            side[u] != side[v]
        })
        .collect();
    (value, cut)
}

pub fn arc_disjoint_path_pairs(d: &Digraph, s: Vertex, t: Vertex, k: usize) -> Result<PathPairFamily> {
    d.require_eulerian()?;
    if s == t || k == 0 {
        return precondition("need distinct s, t and k ≥ 1");
    }
    let (lambda, cut) = min_edge_cut(d, s, t);
    if lambda < 2 * k {
        let names: Vec<&str> = cut.iter().map(|&e| d.edge_name(e)).collect();
        return precondition(format!(
            "edge cut {{{}}} of size {} separates {} and {} (need {})",
            names.join(", "),
            lambda,
            d.vertex_name(s),
            d.vertex_name(t),
            2 * k
        ));
    }
    let mut net = FlowNet::new(d.n());
    let ids: Vec<usize> = (0..d.m()).map(|e| net.add_arc(d.tail(e), d.head(e), 1)).collect();
    if net.max_flow(s, t, k as i64) < k as i64 {
        return verification("directed flow smaller than the undirected cut bound");
    }
    let mut avail: Vec<bool> = (0..d.m()).map(|e| net.flow(ids[e]) > 0).collect();
    let mut used = vec![false; d.m()];
    let mut forward = Vec::new();
    for _ in 0..k {
        let p = loop_erased(d, s, t, &mut avail)?;
        for &h in &p {
            used[edge_of(h)] = true;
        }
        forward.push(p);
    }
    let mut rest: Vec<bool> = used.iter().map(|&u| !u).collect();
    let mut backward = Vec::new();
    for _ in 0..k {
        let p = loop_erased(d, t, s, &mut rest)?;
        backward.push(p);
    }
    let fam = PathPairFamily { k, s, t, forward, backward };
    fam.check(d)?;
    Ok(fam)
}

/// Follows available arcs from `a` until reaching `b`, erasing loops; consumes the path arcs.
fn loop_erased(d: &Digraph, a: Vertex, b: Vertex, avail: &mut [bool]) -> Result<Vec<Half>> {
    let mut path: Vec<Half> = Vec::new();
    // position in `path` at which each vertex on the path is left
    let mut pos = vec![usize::MAX; d.n()];
    pos[a] = 0;
    let mut taken = vec![false; d.m()];
    let mut v = a;
    while v != b {
        let h = d
            .outs(v)
            .find(|&h| avail[edge_of(h)] && !taken[edge_of(h)])
            .ok_or_else(|| Error::Verification("flow decomposition got stuck".into()))?;
        taken[edge_of(h)] = true;
        path.push(h);
        let w = d.incv(mate(h));
        if pos[w] != usize::MAX {
            // erase the cycle just closed at w; its arcs stay available to later calls
            for &x in &path[pos[w]..] {
                let y = d.incv(mate(x));
                if y != w {
                    pos[y] = usize::MAX;
                }
            }
            path.truncate(pos[w]);
        } else {
            pos[w] = path.len();
        }
        v = w;
    }
    for &h in &path {
        avail[edge_of(h)] = false;
    }
    Ok(path)
}

/// Euler circuit interlacing `s` and `t`, built from `P1·Q1·P2·Q2` and spliced.
pub fn interlacing_euler_circuit(d: &Digraph, s: Vertex, t: Vertex) -> Result<ClosedWalk> {
    let fam = arc_disjoint_path_pairs(d, s, t, 2)?;
    let mut trail = Vec::new();
    for i in 0..2 {
        trail.extend_from_slice(&fam.forward[i]);
        trail.extend_from_slice(&fam.backward[i]);
    }
    let w = extend_trail(d, &trail)?;
    if interlaced_positions(&w.vertices(d), s, t).is_none() {
        return verification("spliced circuit does not interlace");
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dip4() -> Digraph {
        Digraph::new(2, &[(0, 1), (0, 1), (1, 0), (1, 0)]).unwrap()
    }

    #[test]
    fn triangle_circuit() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let w = euler_circuit(&g, 0).unwrap();
        assert!(w.is_euler_circuit(&g));
        assert_eq!(w.steps(), &[0, 2, 4]);
    }

    #[test]
    fn dip4_circuit_is_alternating() {
        let d = dip4();
        let w = euler_circuit_directed(&d, 0).unwrap();
        assert_eq!(w.steps(), &[0, 4, 2, 6]);
    }

    #[test]
    fn unbalanced_rejected() {
        let d = Digraph::new(2, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        assert!(euler_circuit_directed(&d, 0).is_err());
    }

    #[test]
    fn through_targets() {
        let d = dip4();
        let w = euler_circuit_through(&d, &[0, 1, 0, 1]).unwrap();
        assert!(w.is_euler_circuit(&d));
        assert!(w.interlaces(&d, 0, 1));
        let w = euler_circuit_through(&d, &[1, 1]).unwrap();
        assert_eq!(w.start(), 1);
    }

    #[test]
    fn path_pairs_on_dip4() {
        let d = dip4();
        let fam = arc_disjoint_path_pairs(&d, 0, 1, 2).unwrap();
        assert_eq!(fam.forward, vec![vec![0], vec![2]]);
        assert_eq!(fam.backward, vec![vec![4], vec![6]]);
        match arc_disjoint_path_pairs(&d, 0, 1, 3) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("size 4")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn directed_four_cycle_one_pair() {
        let d = Digraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let fam = arc_disjoint_path_pairs(&d, 0, 2, 1).unwrap();
        assert_eq!(fam.forward, vec![vec![0, 2]]);
        assert_eq!(fam.backward, vec![vec![4, 6]]);
    }

    #[test]
    fn interlace_dip4() {
        let d = dip4();
        let w = interlacing_euler_circuit(&d, 0, 1).unwrap();
        assert!(w.interlaces(&d, 0, 1));
    }
}
