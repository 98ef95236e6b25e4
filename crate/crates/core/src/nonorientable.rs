//! Relative embeddings completing a circuit decomposition with one outer euler-circuit
//! face, nonorientable bi-eulerian embeddings, and face-count interpolation for
//! directed embeddings by twisting arcs.

use std::collections::VecDeque;

use itertools::Itertools;

use crate::embedding::{embedding_from_walks, is_directed_embedding, Embedding};
use crate::error::{invalid, precondition, verification, Result};
use crate::graph::{edge_of, mate, Digraph, EdgeId, Graph, Half, Vertex};
use crate::oracle::{visit_directed_embeddings, OracleConfig, Signatures};
use crate::walk::{canonical_multiset, transition_graphs, ClosedWalk};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Realizability {
    pub realizable: bool,
    pub orientably: bool,
    pub nonorientably: bool,
}

/// Whether some embedding of `g` has every walk of `walks` as a face (and whether an
/// orientable / nonorientable one does).
pub fn realizability_check(walks: &[ClosedWalk], g: &Graph) -> Result<Realizability> {
    for w in walks {
        w.validate(g)?;
    }
    let mut uses = vec![0usize; g.m()];
    for w in walks {
        for &h in w.steps() {
            uses[edge_of(h)] += 1;
        }
    }
    let trs = transition_graphs(g, walks);
    let realizable = uses.iter().all(|&u| u <= 2) && trs.iter().all(|t| t.is_subgraph_of_cycle());
    if !realizable {
        return Ok(Realizability { realizable, orientably: false, nonorientably: false });
    }
    let orientably = walk_orientation(g, walks).is_some();
    let nonorientably = if !orientably {
        true
    } else {
        let block = blocks(g);
        trs.iter().any(|t| {
            let comp = t.components();
            (0..t.halves.len()).any(|i| {
                (i + 1..t.halves.len())
                    .any(|j| block[edge_of(t.halves[i])] == block[edge_of(t.halves[j])] && comp[i] != comp[j])
            })
        })
    };
    Ok(Realizability { realizable, orientably, nonorientably })
}

/// Directions for the walks (`true` = reversed) such that every edge used twice is
/// used once each way, if possible.
pub fn walk_orientation(g: &Graph, walks: &[ClosedWalk]) -> Option<Vec<bool>> {
    // first traversal of each edge: (walk, forward half)
    let mut first: Vec<Option<(usize, Half)>> = vec![None; g.m()];
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); walks.len()];
    for (i, w) in walks.iter().enumerate() {
        for &h in w.steps() {
            let e = edge_of(h);
            match first[e] {
                None => first[e] = Some((i, h)),
                Some((j, h0)) => {
                    // same half ⇒ same direction ⇒ exactly one of the two walks flips
                    let differ = h == h0;
                    if i == j {
                        if differ {
                            return None;
                        }
                    } else {
                        adj[i].push((j, differ));
                        adj[j].push((i, differ));
                    }
                }
            }
        }
    }
    let mut flip: Vec<Option<bool>> = vec![None; walks.len()];
    for s in 0..walks.len() {
        if flip[s].is_some() {
            continue;
        }
        flip[s] = Some(false);
        let mut q = VecDeque::from([s]);
        while let Some(i) = q.pop_front() {
            let fi = flip[i].unwrap();
            for &(j, differ) in &adj[i] {
                let want = fi ^ differ;
                match flip[j] {
                    None => {
                        flip[j] = Some(want);
                        q.push_back(j);
                    }
                    Some(x) if x != want => return None,
                    _ => {}
                }
            }
        }
    }
    Some(flip.into_iter().map(Option::unwrap).collect())
}

/// Block (2-connected component) id of every edge; each loop is its own block.
pub fn blocks(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut block = vec![usize::MAX; g.m()];
    let mut stack: Vec<EdgeId> = Vec::new();
    let mut next_block = 0;
    let mut time = 0;
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &Graph,
        v: Vertex,
        via: Option<EdgeId>,
        disc: &mut [usize],
        low: &mut [usize],
        time: &mut usize,
        stack: &mut Vec<EdgeId>,
        block: &mut [usize],
        next_block: &mut usize,
    ) {
        disc[v] = *time;
        low[v] = *time;
        *time += 1;
        for &h in g.halves_at(v) {
            let e = edge_of(h);
            if Some(e) == via || g.is_loop(e) {
                continue;
            }
            let w = g.incv(mate(h));
            if disc[w] == usize::MAX {
                stack.push(e);
                dfs(g, w, Some(e), disc, low, time, stack, block, next_block);
                low[v] = low[v].min(low[w]);
                if low[w] >= disc[v] {
                    while let Some(x) = stack.pop() {
                        block[x] = *next_block;
                        if x == e {
                            break;
                        }
                    }
                    *next_block += 1;
                }
            } else if disc[w] < disc[v] {
                stack.push(e);
                low[v] = low[v].min(disc[w]);
            }
        }
    }
    for s in 0..n {
        if disc[s] == usize::MAX {
            dfs(g, s, None, &mut disc, &mut low, &mut time, &mut stack, &mut block, &mut next_block);
        }
    }
    for e in 0..g.m() {
        if g.is_loop(e) {
            block[e] = next_block;
            next_block += 1;
        }
    }
    block
}

/// `Some(blocks as edge lists)` iff every block of the connected graph `g` is a cycle
/// (loops and digons included).
pub fn is_tree_of_cycles(g: &Graph) -> (bool, Vec<Vec<EdgeId>>) {
    let b = blocks(g);
    let nb = b.iter().copied().max().map_or(0, |x| x + 1);
    let mut list = vec![Vec::new(); nb];
    for e in 0..g.m() {
        list[b[e]].push(e);
    }
    let ok = g.is_connected()
        && list.iter().all(|es| {
            let mut deg = std::collections::BTreeMap::new();
            for &e in es {
                let (u, v) = g.ends(e);
                *deg.entry(u).or_insert(0) += 1;
                *deg.entry(v).or_insert(0) += 1;
            }
            deg.values().all(|&d| d == 2) && deg.len() == es.len()
        });
    (ok, list)
}

/// An embedding whose faces are the inner walks plus the outer walks.
#[derive(Clone, Debug)]
pub struct RelativeEmbedding {
    pub inner: Vec<ClosedWalk>,
    pub outer: Vec<ClosedWalk>,
    pub embedding: Embedding,
    /// The host is a tree of cycles and the inner walks are its cycles, so every
    /// relative embedding is planar.
    pub exception: bool,
}

impl RelativeEmbedding {
    pub fn outer_count(&self) -> usize {
        self.outer.len()
    }
}

/// Outer transitions: `pair[h]` is the half joined to `h` by an outer face.
struct Completion<'a> {
    g: &'a Graph,
    inner: &'a [ClosedWalk],
    /// inner partner of each half
    matched: Vec<Half>,
    pair: Vec<Half>,
}

impl Completion<'_> {
    /// Outer walks as half sequences.
    fn outer_walks(&self) -> Vec<Vec<Half>> {
        let nh = self.g.num_halves();
        let mut used = vec![false; nh];
        let mut out = Vec::new();
        for h0 in 0..nh {
            if used[h0] {
                continue;
            }
            let mut w = Vec::new();
            let mut h = h0;
            loop {
                used[h] = true;
                used[mate(h)] = true;
                w.push(h);
                h = self.pair[mate(h)];
                if h == h0 {
                    break;
                }
            }
            out.push(w);
        }
        out
    }

    fn count_outer(&self) -> usize {
        self.outer_walks().len()
    }

    fn walks(&self) -> Vec<ClosedWalk> {
        let mut all = self.inner.to_vec();
        for w in self.outer_walks() {
            all.push(ClosedWalk::from_parts(self.g.incv(w[0]), w, false));
        }
        all
    }

    fn orientable(&self) -> bool {
        walk_orientation(self.g, &self.walks()).is_some()
    }

    /// Inner ∪ outer transitions at `v` form one cycle through all its halves.
    fn single_cycle_at(&self, v: Vertex) -> bool {
        let hs = self.g.halves_at(v);
        let h0 = hs[0];
        let (mut h, mut len) = (h0, 0);
        loop {
            h = self.pair[self.matched[h]];
            len += 2;
            if h == h0 {
                break;
            }
        }
        len == hs.len()
    }

    /// All outer matchings at `v` that close the inner matching into one cycle, lazily;
    /// the first one chains the inner pairs in half order.
    fn alternatives(&self, v: Vertex) -> impl Iterator<Item = Vec<(Half, Half)>> {
        let mut pairs: Vec<(Half, Half)> = Vec::new();
        for &h in self.g.halves_at(v) {
            let o = self.matched[h];
            if h < o {
                pairs.push((h, o));
            }
        }
        let k = pairs.len();
        let first = pairs[0];
        pairs[1..].to_vec().into_iter().permutations(k - 1).flat_map(move |perm| {
            (0..(1u32 << (k - 1))).map(move |mask| {
                let mut seq = vec![first];
                for (i, &(a, b)) in perm.iter().enumerate() {
                    seq.push(if mask >> i & 1 == 1 { (b, a) } else { (a, b) });
                }
                (0..k).map(|i| (seq[i].1, seq[(i + 1) % k].0)).collect()
            })
        })
    }

    fn set_at(&mut self, sel: &[(Half, Half)]) {
        for &(a, b) in sel {
            self.pair[a] = b;
            self.pair[b] = a;
        }
    }

    fn current_at(&self, v: Vertex) -> Vec<(Half, Half)> {
        self.g.halves_at(v).iter().filter(|&&h| h < self.pair[h]).map(|&h| (h, self.pair[h])).collect()
    }
}

fn check_decomposition(g: &Graph, walks: &[ClosedWalk]) -> Result<()> {
    let mut used = vec![false; g.m()];
    for w in walks {
        w.validate(g)?;
        if w.is_empty() {
            return invalid("circuits must be nonempty");
        }
        for &h in w.steps() {
            if std::mem::replace(&mut used[edge_of(h)], true) {
                return precondition(format!("edge {} is used twice", g.edge_name(edge_of(h))));
            }
        }
    }
    if let Some(e) = used.iter().position(|&u| !u) {
        return precondition(format!("edge {} is not covered", g.edge_name(e)));
    }
    Ok(())
}

/// Completes a circuit decomposition `c` of a nontrivial eulerian graph to an
/// embedding with exactly one outer face (an euler circuit). With
/// `require_nonorientable`, the result is nonorientable unless the host is a tree of
/// cycles and `c` its cycles; that case returns the planar completion with
/// `exception` set.
pub fn complete_relative_one_outer(g: &Graph, c: &[ClosedWalk], require_nonorientable: bool) -> Result<RelativeEmbedding> {
    g.require_eulerian()?;
    if g.m() == 0 {
        return precondition("the trivial graph has no circuit decomposition");
    }
    check_decomposition(g, c)?;
    let nh = g.num_halves();
    let mut matched = vec![usize::MAX; nh];
    for w in c {
        for (_, a, l) in w.passages(g) {
            matched[a] = l;
            matched[l] = a;
        }
    }
    let mut comp = Completion { g, inner: c, matched, pair: vec![usize::MAX; nh] };
    // initial outer transitions: chain the inner pairs at each vertex in half order
    for v in 0..g.n() {
        let init = comp.alternatives(v).next().unwrap();
        comp.set_at(&init);
    }
    // merge outer walks at vertices where two of them meet
    loop {
        let walks = comp.outer_walks();
        if walks.len() == 1 {
            break;
        }
        let mut owner = vec![0; nh];
        for (i, w) in walks.iter().enumerate() {
            for &h in w {
                owner[h] = i;
                owner[mate(h)] = i;
            }
        }
        let spot = (0..g.n()).find_map(|v| {
            let tr = comp.current_at(v);
            tr.iter().tuple_combinations().find(|(x, y)| owner[x.0] != owner[y.0]).map(|(x, y)| (v, *x, *y))
        });
        let Some((v, (p, q), (r, s))) = spot else {
            return verification("outer walks do not meet although the graph is connected");
        };
        comp.set_at(&[(p, r), (q, s)]);
        if !comp.single_cycle_at(v) {
            comp.set_at(&[(p, s), (q, r)]);
        }
        if !comp.single_cycle_at(v) {
            return verification(format!("no reconnection at {} keeps the transitions cyclic", g.vertex_name(v)));
        }
    }
    let (toc, blist) = is_tree_of_cycles(g);
    let exception = toc && {
        let cycles: Vec<ClosedWalk> =
            blist.iter().map(|es| cycle_walk(g, es)).collect();
        canonical_multiset(&cycles) == canonical_multiset(c)
    };
    if require_nonorientable && !exception && comp.orientable() {
        make_nonorientable(&mut comp)?;
    }
    let walks = comp.walks();
    let embedding = embedding_from_walks(g, &walks)?;
    let outer = walks[c.len()..].to_vec();
    let out = RelativeEmbedding { inner: c.to_vec(), outer, embedding, exception };
    check_relative(g, &out)?;
    if require_nonorientable && !exception && out.embedding.is_orientable() {
        return verification("nonorientable completion came out orientable");
    }
    Ok(out)
}

fn cycle_walk(g: &Graph, es: &[EdgeId]) -> ClosedWalk {
    // follow the block's edges around from its least edge
    let mut steps = vec![2 * es[0]];
    let mut used = vec![false; es.len()];
    used[0] = true;
    let start = g.incv(2 * es[0]);
    let mut at = g.incv(2 * es[0] + 1);
    while at != start || steps.len() < es.len() {
        let Some(i) = (0..es.len()).find(|&i| !used[i] && (g.ends(es[i]).0 == at || g.ends(es[i]).1 == at)) else {
            break;
        };
        used[i] = true;
        let h = if g.incv(2 * es[i]) == at { 2 * es[i] } else { 2 * es[i] + 1 };
        steps.push(h);
        at = g.incv(mate(h));
    }
    ClosedWalk::from_parts(start, steps, false)
}

/// Re-selects outer transitions at one vertex, then at pairs, then everywhere, until
/// the single-outer-face completion becomes nonorientable.
fn make_nonorientable(comp: &mut Completion) -> Result<()> {
    let n = comp.g.n();
    let saved: Vec<Vec<(Half, Half)>> = (0..n).map(|v| comp.current_at(v)).collect();
    for v in 0..n {
        if search(comp, &[v], 0) {
            return Ok(());
        }
        comp.set_at(&saved[v]);
    }
    for v in 0..n {
        for w in v + 1..n {
            if search(comp, &[v, w], 0) {
                return Ok(());
            }
            comp.set_at(&saved[v]);
            comp.set_at(&saved[w]);
        }
    }
    let all: Vec<Vertex> = (0..n).collect();
    if search(comp, &all, 0) {
        return Ok(());
    }
    verification("no nonorientable one-outer-face completion found")
}

/// Tries every combination of alternatives at `vs[i..]`.
fn search(comp: &mut Completion, vs: &[Vertex], i: usize) -> bool {
    if i == vs.len() {
        return comp.count_outer() == 1 && !comp.orientable();
    }
    let alts = comp.alternatives(vs[i]);
    for a in alts {
        comp.set_at(&a);
        if search(comp, vs, i + 1) {
            return true;
        }
    }
    false
}

fn check_relative(g: &Graph, r: &RelativeEmbedding) -> Result<()> {
    if r.outer.len() != 1 || !r.outer[0].is_euler_circuit(g) {
        return verification("outer face is not a single euler circuit");
    }
    let mut all = r.inner.clone();
    all.extend(r.outer.iter().cloned());
    if canonical_multiset(r.embedding.faces()) != canonical_multiset(&all) {
        return verification("embedding faces differ from inner plus outer walks");
    }
    let want = 2 + g.m() - g.n() - (r.inner.len() + 1);
    if r.embedding.euler_genus() != want {
        return verification("Euler genus is not maximal");
    }
    Ok(())
}

/// Bi-eulerian embedding with `t` as a face and Euler genus `m − n`; nonorientable
/// unless `g` is a cycle.
pub fn bieulerian_nonorientable(g: &Graph, t: &ClosedWalk) -> Result<Embedding> {
    if g.m() == 0 {
        return precondition("the trivial graph has no bi-eulerian embedding");
    }
    t.validate(g)?;
    if !t.is_euler_circuit(g) {
        return precondition("walk is not an euler circuit");
    }
    let r = complete_relative_one_outer(g, std::slice::from_ref(t), true)?;
    let e = r.embedding;
    if !e.is_bi_eulerian() || e.euler_genus() != g.m() - g.n() {
        return verification("completion is not bi-eulerian of Euler genus m − n");
    }
    Ok(e)
}

/// Flips the signature of arc `a`.
pub fn twist_arc(e: &Embedding, a: EdgeId) -> Result<Embedding> {
    if a >= e.graph().m() {
        return invalid("no such arc");
    }
    Ok(e.twist(a))
}

/// All-positive rotation pairing the k-th out-half with the k-th in-half at each vertex.
pub fn alternating_embedding(d: &Digraph) -> Result<Embedding> {
    d.require_eulerian()?;
    let rotation = (0..d.n()).map(|v| d.outs(v).zip(d.ins(v)).flat_map(|(o, i)| [o, i]).collect()).collect();
    Embedding::orientable_from_rotation(d.graph().clone(), rotation)
}

/// Twists the least arc bordering two distinct faces until `target` faces remain.
fn merge_down(d: &Digraph, mut e: Embedding, target: usize) -> Result<Embedding> {
    while e.num_faces() > target {
        let fe = e.faces_of_edges();
        let Some(a) = (0..d.m()).find(|&a| fe[a][0] != fe[a][1]) else {
            return verification("no arc separates two faces");
        };
        let next = e.twist(a);
        if next.num_faces() + 1 != e.num_faces() {
            return verification("twisting a separating arc did not merge exactly two faces");
        }
        e = next;
    }
    Ok(e)
}

/// A directed embedding with one face (nonorientable and of Euler genus `m − n + 1`
/// unless `d` is trivial).
pub fn one_face_directed(d: &Digraph) -> Result<Embedding> {
    let e = merge_down(d, alternating_embedding(d)?, 1)?;
    if d.m() > 0 {
        let f = &e.faces()[0];
        if e.is_orientable() || e.euler_genus() != d.m() - d.n() + 1 || !twice_same_direction(f) {
            return verification("one-face embedding fails its invariants");
        }
    }
    Ok(e)
}

/// Every edge is traversed exactly twice, both times from the same end.
pub fn twice_same_direction(f: &ClosedWalk) -> bool {
    let mut seen: std::collections::BTreeMap<EdgeId, Vec<Half>> = Default::default();
    for &h in f.steps() {
        seen.entry(edge_of(h)).or_default().push(h);
    }
    seen.values().all(|hs| hs.len() == 2 && hs[0] == hs[1])
}

/// A nonorientable directed embedding with exactly `s` faces, obtained by twisting arcs
/// of `start` (default: the alternating embedding, or a directed embedding with more
/// than `s` faces found by enumeration).
pub fn interpolate_faces(d: &Digraph, s: usize, start: Option<&Embedding>) -> Result<Embedding> {
    d.require_eulerian()?;
    if s == 0 {
        return precondition("face count must be at least 1");
    }
    let start = match start {
        Some(e) => {
            if !is_directed_embedding(e, d) {
                return precondition("start is not a directed embedding of the digraph");
            }
            e.clone()
        }
        None => {
            let e = alternating_embedding(d)?;
            if e.num_faces() > s {
                e
            } else {
                let mut found = None;
                visit_directed_embeddings(d, Signatures::AllPositive, &OracleConfig::default(), &mut |v| {
                    if v.faces > s {
                        found = Some(v.embedding());
                    }
                    found.is_none()
                })?;
                match found {
                    Some(e) => e,
                    None => return precondition(format!("no directed embedding has more than {s} faces")),
                }
            }
        }
    };
    if start.num_faces() == s && !start.is_orientable() {
        return Ok(start);
    }
    if start.num_faces() <= s {
        return precondition(format!("start has {} faces, need more than {s}", start.num_faces()));
    }
    let e = merge_down(d, start, s)?;
    if e.is_orientable() {
        return verification("interpolated embedding is orientable");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{dip4, tree_of_cycles};

    #[test]
    fn blocks_and_trees_of_cycles() {
        let (g, _) = tree_of_cycles(&[3, 3]).unwrap();
        assert!(is_tree_of_cycles(&g).0);
        assert!(!is_tree_of_cycles(dip4().graph()).0);
        let fig8 = Graph::new(1, &[(0, 0), (0, 0)]).unwrap();
        assert!(is_tree_of_cycles(&fig8).0);
    }

    #[test]
    fn bowtie_is_planar_exception() {
        let (g, cs) = tree_of_cycles(&[3, 3]).unwrap();
        let r = complete_relative_one_outer(&g, &cs, true).unwrap();
        assert!(r.exception);
        assert_eq!(r.embedding.euler_genus(), 0);
        let rz = realizability_check(&cs, &g).unwrap();
        assert!(rz.orientably && !rz.nonorientably);
    }

    #[test]
    fn figure_eight_euler_circuit() {
        let g = Graph::new(1, &[(0, 0), (0, 0)]).unwrap();
        let t = ClosedWalk::new(&g, vec![0, 2]).unwrap();
        let e = bieulerian_nonorientable(&g, &t).unwrap();
        assert!(!e.is_orientable());
        assert_eq!(e.euler_genus(), 1);
    }

    #[test]
    fn triple_use_is_not_realizable() {
        let g = Graph::new(2, &[(0, 1), (0, 1)]).unwrap();
        let w = ClosedWalk::new(&g, vec![0, 3]).unwrap();
        let r = realizability_check(&[w.clone(), w.clone(), w], &g).unwrap();
        assert!(!r.realizable);
    }

    #[test]
    fn dip4_twist_gives_one_face() {
        let seed = crate::oriented::dip4_bieulerian();
        let e = twist_arc(seed.embedding(), 0).unwrap();
        assert_eq!(e.num_faces(), 1);
        assert!(is_directed_embedding(&e, &dip4()));
        assert_eq!(twist_arc(&e, 0).unwrap().twisted(), seed.embedding().twisted());
    }

    #[test]
    fn one_face_and_interpolation() {
        let d = dip4();
        let e = one_face_directed(&d).unwrap();
        assert_eq!((e.num_faces(), e.euler_genus()), (1, 3));
        let e2 = interpolate_faces(&d, 2, None).unwrap();
        assert_eq!(e2.num_faces(), 2);
        assert!(!e2.is_orientable());
        let loop1 = Digraph::new(1, &[(0, 0)]).unwrap();
        let e = one_face_directed(&loop1).unwrap();
        assert_eq!((e.num_faces(), e.euler_genus()), (1, 1));
        let triv = Digraph::new(1, &[]).unwrap();
        assert_eq!(one_face_directed(&triv).unwrap().euler_genus(), 0);
    }
}
