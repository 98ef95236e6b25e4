//! Orientable directed embeddings built by vertex identification.
//!
//! A directed euler circuit `T` of `D` lifts to a directed cycle `C` whose planar
//! embedding has `T` as both faces. Identifying the occurrences of each vertex back
//! together, two or three at a time, splices rotations so that only the tracked
//! antifaces change; `T` survives as a proface throughout.

use std::collections::BTreeSet;

use crate::embedding::{is_directed_embedding, Embedding};
use crate::error::{invalid, precondition, verification, Result};
use crate::graph::{edge_of, mate, Digraph, Graph, Half, Vertex};
use crate::walk::{interlaced_positions, least_rotation, ClosedWalk};

/// A surjection from the vertices of `source` onto those of `target` that keeps
/// every half-arc (`incv_target = map ∘ incv_source`).
#[derive(Clone, Debug)]
pub struct VertexIdentification {
    source: Digraph,
    target: Digraph,
    map: Vec<Vertex>,
}

impl VertexIdentification {
    pub fn new(source: Digraph, target: Digraph, map: Vec<Vertex>) -> Result<VertexIdentification> {
        if map.len() != source.n() {
            return invalid("identification map must cover every source vertex");
        }
        if source.m() != target.m() {
            return invalid("identification must keep every arc");
        }
        let mut hit = vec![false; target.n()];
        for &w in &map {
            if w >= target.n() {
                return invalid("identification maps outside the target");
            }
            hit[w] = true;
        }
        if hit.contains(&false) {
            return invalid("identification is not surjective");
        }
        if (0..source.num_halves()).any(|h| target.incv(h) != map[source.incv(h)]) {
            return invalid("identification does not commute with incidence");
        }
        Ok(VertexIdentification { source, target, map })
    }

    pub fn source(&self) -> &Digraph {
        &self.source
    }

    pub fn target(&self) -> &Digraph {
        &self.target
    }

    pub fn map(&self) -> &[Vertex] {
        &self.map
    }

    pub fn fiber(&self, w: Vertex) -> Vec<Vertex> {
        (0..self.map.len()).filter(|&v| self.map[v] == w).collect()
    }

    /// Target vertices whose fiber has even size.
    pub fn exceptional(&self) -> Vec<Vertex> {
        (0..self.target.n()).filter(|&w| self.fiber(w).len() % 2 == 0).collect()
    }
}

/// An all-positive directed embedding, with a set of tracked antifaces recorded by
/// their out-halves.
#[derive(Clone, Debug)]
pub struct OrientedDirectedEmbedding {
    digraph: Digraph,
    embedding: Embedding,
    tracked: Vec<bool>,
}

impl OrientedDirectedEmbedding {
    pub fn new(digraph: Digraph, embedding: Embedding, tracked: Vec<bool>) -> Result<OrientedDirectedEmbedding> {
        if embedding.twisted().iter().any(|&t| t) {
            return invalid("oriented directed embeddings carry positive signatures only");
        }
        if !is_directed_embedding(&embedding, &digraph) {
            return invalid("rotation does not alternate between incoming and outgoing halves");
        }
        if tracked.len() != digraph.num_halves() {
            return invalid("tracked set must be indexed by half");
        }
        let out = OrientedDirectedEmbedding { digraph, embedding, tracked };
        for a in out.antifaces() {
            let t = a.steps().iter().filter(|&&h| out.tracked[h]).count();
            if t != 0 && t != a.len() {
                return invalid("tracked halves must form whole antifaces");
            }
        }
        if (0..out.tracked.len()).any(|h| out.tracked[h] && !Digraph::is_out(h)) {
            return invalid("only out-halves can be tracked");
        }
        Ok(out)
    }

    pub fn from_rotation(digraph: Digraph, rotation: Vec<Vec<Half>>, tracked: Vec<bool>) -> Result<Self> {
        let e = Embedding::orientable_from_rotation(digraph.graph().clone(), rotation)?;
        OrientedDirectedEmbedding::new(digraph, e, tracked)
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn into_embedding(self) -> Embedding {
        self.embedding
    }

    pub fn tracked_halves(&self) -> &[bool] {
        &self.tracked
    }

    /// Faces running with the rotation, as directed walks.
    pub fn profaces(&self) -> Vec<ClosedWalk> {
        self.embedding
            .faces()
            .iter()
            .filter(|f| !f.is_empty() && !Digraph::is_out(f.steps()[0]))
            .map(|f| f.as_directed(&self.digraph).expect("faces of directed embeddings are directed"))
            .collect()
    }

    /// Faces running against the rotation, as directed walks.
    pub fn antifaces(&self) -> Vec<ClosedWalk> {
        self.embedding
            .faces()
            .iter()
            .filter(|f| !f.is_empty() && Digraph::is_out(f.steps()[0]))
            .map(|f| f.as_directed(&self.digraph).expect("faces of directed embeddings are directed"))
            .collect()
    }

    pub fn tracked_antifaces(&self) -> Vec<ClosedWalk> {
        let mut a: Vec<_> = self.antifaces().into_iter().filter(|a| self.tracked[a.steps()[0]]).collect();
        a.sort_by_key(|w| w.canonical_directed());
        a
    }

    pub fn has_proface(&self, t: &ClosedWalk) -> bool {
        let key = least_rotation(t.steps());
        self.profaces().iter().any(|p| p.canonical_directed() == key)
    }

    pub fn num_faces(&self) -> usize {
        self.embedding.num_faces()
    }
}

/// Which case of the identification lemmas applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentifyCase {
    /// Two distinct antifaces merged into one.
    TwoDistinct,
    /// One antiface split into two.
    TwoSame,
    /// Three distinct antifaces merged into one.
    ThreeDistinct,
    /// Two antifaces (one shared by two vertices) rearranged into two.
    ThreeTwoDistinct,
    /// One antiface rearranged into one.
    ThreeSame,
}

impl IdentifyCase {
    pub fn antifaces_after(self) -> usize {
        match self {
            IdentifyCase::TwoDistinct | IdentifyCase::ThreeDistinct | IdentifyCase::ThreeSame => 1,
            IdentifyCase::TwoSame | IdentifyCase::ThreeTwoDistinct => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Identified {
    pub embedding: OrientedDirectedEmbedding,
    /// Old vertex → new vertex.
    pub vertex_map: Vec<Vertex>,
    pub merged: Vertex,
    pub case: IdentifyCase,
}

/// Identifies `v1` and `v2`, splicing at a passage of antiface `a1` through `v1` and
/// of `a2` through `v2`. The new antifaces are tracked.
pub fn identify_two(
    phi: &OrientedDirectedEmbedding,
    v1: Vertex,
    v2: Vertex,
    a1: &ClosedWalk,
    a2: &ClosedWalk,
) -> Result<Identified> {
    identify(phi, &[v1, v2], &[a1, a2])
}

/// Identifies three vertices, each spliced at a passage of its antiface.
pub fn identify_three(
    phi: &OrientedDirectedEmbedding,
    vs: [Vertex; 3],
    faces: [&ClosedWalk; 3],
) -> Result<Identified> {
    identify(phi, &vs, &faces)
}

struct Passage {
    vertex: Vertex,
    face: usize,
    pos: usize,
    leave: Half,
}

fn identify(phi: &OrientedDirectedEmbedding, vs: &[Vertex], faces: &[&ClosedWalk]) -> Result<Identified> {
    let d = &phi.digraph;
    let k = vs.len();
    if vs.iter().collect::<BTreeSet<_>>().len() != k || vs.iter().any(|&v| v >= d.n()) {
        return invalid("identified vertices must be distinct vertices of the digraph");
    }
    let antifaces = phi.antifaces();
    let keys: Vec<Vec<Half>> = antifaces.iter().map(|a| a.canonical_directed()).collect();
    // distinct chosen antifaces, by index into `antifaces`
    let mut chosen: Vec<usize> = Vec::new();
    let mut passages = Vec::with_capacity(k);
    for (i, (&v, a)) in vs.iter().zip(faces).enumerate() {
        let key = least_rotation(a.steps());
        let Some(fi) = keys.iter().position(|x| *x == key) else {
            return precondition(format!("walk {} is not an antiface of the embedding", i + 1));
        };
        if !chosen.contains(&fi) {
            chosen.push(fi);
        }
        let steps = antifaces[fi].steps();
        let Some(pos) = steps.iter().position(|&g| d.incv(g) == v) else {
            return precondition(format!("antiface {} does not pass through {}", i + 1, d.vertex_name(v)));
        };
        debug_assert_eq!(phi.embedding.succ(mate(steps[(pos + steps.len() - 1) % steps.len()])), steps[pos]);
        passages.push(Passage { vertex: v, face: fi, pos, leave: steps[pos] });
    }
    let case = match (k, chosen.len()) {
        (2, 2) => IdentifyCase::TwoDistinct,
        (2, 1) => IdentifyCase::TwoSame,
        (3, 3) => IdentifyCase::ThreeDistinct,
        (3, 2) => IdentifyCase::ThreeTwoDistinct,
        (3, 1) => IdentifyCase::ThreeSame,
        _ => return invalid("identify two or three vertices at a time"),
    };
    // all passages on one antiface go in their order along it
    if case == IdentifyCase::ThreeSame {
        passages.sort_by_key(|p| p.pos);
    }
    // splice: rotation at the merged vertex is g1 α1 h1 g2 α2 h2 …
    let mut merged_rot = Vec::new();
    for p in &passages {
        let rot = phi.embedding.rotation_at(p.vertex);
        let at = rot.iter().position(|&h| h == p.leave).unwrap();
        merged_rot.extend(rot[at..].iter().chain(&rot[..at]));
    }
    let keep = vs[0];
    let mut vertex_map = vec![usize::MAX; d.n()];
    let mut names = Vec::new();
    for v in 0..d.n() {
        if vs[1..].contains(&v) {
            continue;
        }
        vertex_map[v] = names.len();
        names.push(d.vertex_name(v).to_string());
    }
    for &v in &vs[1..] {
        vertex_map[v] = vertex_map[keep];
    }
    let arcs: Vec<_> = (0..d.m()).map(|e| (vertex_map[d.tail(e)], vertex_map[d.head(e)])).collect();
    let nd = Digraph::from_graph(Graph::with_names(names, d.edge_names().to_vec(), &arcs)?);
    let mut rotation = vec![Vec::new(); nd.n()];
    for v in 0..d.n() {
        if !vs.contains(&v) {
            rotation[vertex_map[v]] = phi.embedding.rotation_at(v).to_vec();
        }
    }
    rotation[vertex_map[keep]] = merged_rot;
    let mut tracked = phi.tracked.clone();
    for &fi in &chosen {
        for &h in antifaces[fi].steps() {
            tracked[h] = true;
        }
    }
    let out = OrientedDirectedEmbedding::from_rotation(nd, rotation, tracked)?;

    // predicted faces: every face other than the chosen antifaces survives verbatim, and
    // the chosen ones are re-cut into segments between passages and re-joined in splice order
    let predicted = spliced_segments(&antifaces, &passages);
    if predicted.len() != case.antifaces_after() {
        return verification(format!("{case:?} predicts {} antifaces, segments give {}", case.antifaces_after(), predicted.len()));
    }
    let mut want: Vec<Vec<Half>> = phi
        .embedding
        .faces()
        .iter()
        .filter(|f| {
            // antifaces are traced along their out-halves, so their keys are comparable
            let anti = !f.is_empty() && Digraph::is_out(f.steps()[0]);
            !(anti && chosen.iter().any(|&fi| keys[fi] == least_rotation(f.steps())))
        })
        .map(|f| f.canonical_undirected())
        .chain(predicted.iter().map(|s| ClosedWalk::from_parts(0, s.clone(), false).canonical_undirected()))
        .collect();
    want.sort();
    let mut got: Vec<Vec<Half>> = out.embedding.faces().iter().map(|f| f.canonical_undirected()).collect();
    got.sort();
    if want != got {
        return verification(format!("identification ({case:?}) did not produce the predicted faces"));
    }
    let merged = vertex_map[keep];
    Ok(Identified { embedding: out, vertex_map, merged, case })
}

/// Re-joins the segments of the chosen antifaces: the segment leaving passage `i`
/// runs along its face to the next passage on that face, where the splice sends it on
/// to the leaving half of the passage after that one in splice order.
fn spliced_segments(antifaces: &[ClosedWalk], passages: &[Passage]) -> Vec<Vec<Half>> {
    let k = passages.len();
    let seg_end = |i: usize| -> usize {
        // next passage on the same face, strictly after i (cyclically), or i itself
        let p = &passages[i];
        let len = antifaces[p.face].len();
        (0..k)
            .filter(|&j| passages[j].face == p.face)
            .min_by_key(|&j| {
                let d = (passages[j].pos + len - p.pos) % len;
                if d == 0 {
                    len
                } else {
                    d
                }
            })
            .unwrap()
    };
    let segment = |i: usize, j: usize| -> Vec<Half> {
        let steps = antifaces[passages[i].face].steps();
        let len = steps.len();
        let mut s = Vec::new();
        let mut q = passages[i].pos;
        loop {
            s.push(steps[q]);
            q = (q + 1) % len;
            if q == passages[j].pos {
                break;
            }
        }
        s
    };
    let mut used = vec![false; k];
    let mut out = Vec::new();
    for start in 0..k {
        if used[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut i = start;
        while !used[i] {
            used[i] = true;
            let j = seg_end(i);
            walk.extend(segment(i, j));
            // arriving at passage j; the splice continues at the passage after j
            i = (j + 1) % k;
        }
        out.push(walk);
    }
    out
}

/// The directed cycle `C` covering `D` along `T`, the identification `C → D`, and the
/// cycle walk `Z` (same half-arc ids as `T`).
pub fn lift_to_cycle(d: &Digraph, t: &ClosedWalk) -> Result<(Digraph, VertexIdentification, ClosedWalk)> {
    check_circuit(d, t)?;
    let m = d.m();
    if m == 0 {
        return precondition("the trivial digraph has no cycle lift");
    }
    let steps = t.steps();
    let mut pos_of_edge = vec![0; m];
    for (j, &h) in steps.iter().enumerate() {
        pos_of_edge[edge_of(h)] = j;
    }
    let arcs: Vec<_> = (0..m).map(|e| (pos_of_edge[e], (pos_of_edge[e] + 1) % m)).collect();
    let mut seen = vec![0usize; d.n()];
    let names: Vec<String> = steps
        .iter()
        .map(|&h| {
            let v = d.incv(h);
            seen[v] += 1;
            format!("{}#{}", d.vertex_name(v), seen[v])
        })
        .collect();
    let c = Digraph::from_graph(Graph::with_names(names, d.edge_names().to_vec(), &arcs)?);
    let map = steps.iter().map(|&h| d.incv(h)).collect();
    let f = VertexIdentification::new(c.clone(), d.clone(), map)?;
    let z = ClosedWalk::new_directed(&c, steps.to_vec())?;
    Ok((c, f, z))
}

fn check_circuit(d: &Digraph, t: &ClosedWalk) -> Result<()> {
    d.require_eulerian()?;
    t.validate(d)?;
    if t.steps().iter().any(|&h| !Digraph::is_out(h)) {
        return precondition("circuit does not follow the arc directions");
    }
    if !t.is_euler_circuit(d) {
        return precondition("walk is not an euler circuit");
    }
    Ok(())
}

/// Planar embedding of the lifted cycle: both faces are `Z`, the antiface tracked.
fn cycle_embedding(c: &Digraph, z: &ClosedWalk) -> Result<OrientedDirectedEmbedding> {
    let steps = z.steps();
    let m = steps.len();
    let rotation = (0..m).map(|j| vec![steps[j], mate(steps[(j + m - 1) % m])]).collect();
    let tracked = (0..c.num_halves()).map(Digraph::is_out).collect();
    OrientedDirectedEmbedding::from_rotation(c.clone(), rotation, tracked)
}

/// Collapses every fiber of `f`: target vertices in increasing order, fiber members
/// in order of first occurrence along the tracked antifaces, three at a time with a
/// final pair for even fibers. At most `ℓ` tracked antifaces are added, where `ℓ` is
/// the number of even fibers; faces outside the tracked set are kept.
pub fn apply_odd_identification(phi: &OrientedDirectedEmbedding, f: &VertexIdentification) -> Result<OrientedDirectedEmbedding> {
    let src = f.source();
    if phi.digraph.n() != src.n() || (0..src.num_halves()).any(|h| phi.digraph.incv(h) != src.incv(h)) {
        return invalid("embedding is not of the identification's source digraph");
    }
    let tracked_at = |phi: &OrientedDirectedEmbedding, v: Vertex| phi.digraph.outs(v).any(|h| phi.tracked[h]);
    for w in 0..f.target().n() {
        let fib = f.fiber(w);
        if fib.len() >= 2 {
            if let Some(&v) = fib.iter().find(|&&v| !tracked_at(phi, v)) {
                return precondition(format!("vertex {} is not on a tracked antiface", src.vertex_name(v)));
            }
        }
    }
    let before = phi.tracked_antifaces().len();
    let others_before = untracked_keys(phi);
    let mut cur = phi.clone();
    let mut label = f.map().to_vec();
    for w in 0..f.target().n() {
        loop {
            let tracked = cur.tracked_antifaces();
            let mut order: Vec<Vertex> = Vec::new();
            for a in &tracked {
                for &h in a.steps() {
                    let v = cur.digraph.incv(h);
                    if label[v] == w && !order.contains(&v) {
                        order.push(v);
                    }
                }
            }
            if order.len() != (0..label.len()).filter(|&v| label[v] == w).count() && order.len() >= 2 {
                return verification("a fiber vertex lost its tracked antiface");
            }
            if order.len() < 2 {
                break;
            }
            let pick = |v: Vertex| tracked.iter().find(|a| a.steps().iter().any(|&h| cur.digraph.incv(h) == v)).unwrap();
            let step = if order.len() >= 3 {
                identify_three(&cur, [order[0], order[1], order[2]], [pick(order[0]), pick(order[1]), pick(order[2])])?
            } else {
                identify_two(&cur, order[0], order[1], pick(order[0]), pick(order[1]))?
            };
            let mut nl = vec![0; step.embedding.digraph.n()];
            for (v, &nv) in step.vertex_map.iter().enumerate() {
                nl[nv] = label[v];
            }
            label = nl;
            cur = step.embedding;
        }
    }
    // one working vertex per target vertex now
    let target = f.target();
    let mut rotation = vec![Vec::new(); target.n()];
    for v in 0..cur.digraph.n() {
        rotation[label[v]] = cur.embedding.rotation_at(v).to_vec();
    }
    let out = OrientedDirectedEmbedding::from_rotation(target.clone(), rotation, cur.tracked.clone())?;
    let ell = f.exceptional().len();
    let after = out.tracked_antifaces().len();
    if after > before + ell {
        return verification(format!("{after} tracked antifaces exceed {before} + {ell}"));
    }
    if untracked_keys(&out) != others_before {
        return verification("identification changed a face outside the tracked antifaces");
    }
    Ok(out)
}

fn untracked_keys(phi: &OrientedDirectedEmbedding) -> Vec<Vec<Half>> {
    let mut k: Vec<_> = phi
        .embedding
        .faces()
        .iter()
        .filter(|f| f.is_empty() || !phi.tracked[f.steps()[0]])
        .map(|f| f.canonical_undirected())
        .collect();
    k.sort();
    k
}

fn trivial(d: &Digraph) -> Result<OrientedDirectedEmbedding> {
    OrientedDirectedEmbedding::from_rotation(d.clone(), vec![Vec::new(); d.n()], Vec::new())
}

fn check_output(d: &Digraph, t: &ClosedWalk, out: &OrientedDirectedEmbedding) -> Result<()> {
    if !out.has_proface(t) {
        return verification("the given circuit is not a proface of the result");
    }
    if crate::embedding::directed_orientability_via_2coloring(out.embedding(), d).is_none() {
        return verification("result is not 2-face-colourable");
    }
    Ok(())
}

/// Orientable directed embedding with `T` as a proface and at most `ℓ + 1` antifaces,
/// `ℓ` the number of vertices of degree 0 mod 4.
pub fn embed_max_genus(d: &Digraph, t: &ClosedWalk) -> Result<OrientedDirectedEmbedding> {
    check_circuit(d, t)?;
    if d.m() == 0 {
        return trivial(d);
    }
    let (c, f, z) = lift_to_cycle(d, t)?;
    let out = apply_odd_identification(&cycle_embedding(&c, &z)?, &f)?;
    check_output(d, t, &out)?;
    let ell = d.zero_mod4_vertices().len();
    if out.num_faces() > ell + 2 {
        return verification(format!("{} faces exceed ℓ + 2 = {}", out.num_faces(), ell + 2));
    }
    Ok(out)
}

/// Bi-eulerian directed embedding with `T` as a face when every degree is 2 mod 4.
pub fn embed_bieulerian_2mod4(d: &Digraph, t: &ClosedWalk) -> Result<OrientedDirectedEmbedding> {
    if let Some(v) = (0..d.n()).find(|&v| d.degree(v) % 4 != 2) {
        return precondition(format!("vertex {} has degree {} ≢ 2 (mod 4)", d.vertex_name(v), d.degree(v)));
    }
    let out = embed_max_genus(d, t)?;
    if out.num_faces() != 2 {
        return verification(format!("expected 2 faces, got {}", out.num_faces()));
    }
    Ok(out)
}

/// The bi-eulerian embedding of the 2-vertex 4-arc digraph with proface
/// `u a1 v b1 u a2 v b2` and antiface `u a1 v b2 u a2 v b1`.
pub fn dip4_bieulerian() -> OrientedDirectedEmbedding {
    let d = crate::generators::dip4();
    let rotation = vec![vec![0, 7, 2, 5], vec![1, 6, 3, 4]];
    let tracked = (0..8).map(Digraph::is_out).collect();
    OrientedDirectedEmbedding::from_rotation(d, rotation, tracked).expect("fixed seed embedding")
}

/// Bi-eulerian embedding with `T` as a face when exactly two vertices `x, y` have degree
/// 0 mod 4 and `T` interlaces them. The earliest interlaced occurrences along `T` are
/// pre-identified into a subdivided copy of the 2-vertex 4-arc seed.
pub fn embed_bieulerian_two0mod4(d: &Digraph, t: &ClosedWalk) -> Result<OrientedDirectedEmbedding> {
    check_circuit(d, t)?;
    let s = d.zero_mod4_vertices();
    if s.len() != 2 {
        return precondition(format!("need exactly two vertices of degree 0 mod 4, found {}", s.len()));
    }
    let seq = t.vertices(d);
    let Some(p) = interlaced_positions(&seq, s[0], s[1]) else {
        return precondition(format!(
            "circuit does not interlace {} and {}",
            d.vertex_name(s[0]),
            d.vertex_name(s[1])
        ));
    };
    let seed = dip4_bieulerian();
    let x1 = crate::generators::dip4_circuit();
    seed_and_collapse(d, t, &seed, &x1, &p)
}

/// Occurrences along `T` patterned by the cyclic sequence `xi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternMatch {
    /// Increasing positions along `T` (indices into its steps).
    pub positions: Vec<usize>,
    /// `positions[k]` carries symbol `xi[(k + offset) % xi.len()]`.
    pub offset: usize,
    /// `(symbol, vertex)` pairs of the bijection.
    pub assignment: Vec<(usize, Vertex)>,
}

/// Finds a subsequence of `T`'s vertex sequence using only vertices of `s`, patterned by
/// some rotation of `xi` under a bijection from `xi`'s symbols onto `s`. Offsets are
/// tried in increasing order and positions greedily from the front.
pub fn pattern_match(d: &Digraph, t: &ClosedWalk, s: &[Vertex], xi: &[usize]) -> Option<PatternMatch> {
    let symbols: BTreeSet<usize> = xi.iter().copied().collect();
    let sset: BTreeSet<Vertex> = s.iter().copied().collect();
    if symbols.len() != sset.len() || xi.is_empty() {
        return None;
    }
    let seq = t.vertices(d);
    let l = xi.len();
    for offset in 0..l {
        let pat: Vec<usize> = (0..l).map(|k| xi[(k + offset) % l]).collect();
        let mut g: std::collections::BTreeMap<usize, Vertex> = Default::default();
        let mut used: BTreeSet<Vertex> = BTreeSet::new();
        let mut pos = Vec::with_capacity(l);
        if match_from(&seq, &sset, &pat, 0, 0, &mut g, &mut used, &mut pos) {
            return Some(PatternMatch { positions: pos, offset, assignment: g.into_iter().collect() });
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn match_from(
    seq: &[Vertex],
    s: &BTreeSet<Vertex>,
    pat: &[usize],
    k: usize,
    from: usize,
    g: &mut std::collections::BTreeMap<usize, Vertex>,
    used: &mut BTreeSet<Vertex>,
    pos: &mut Vec<usize>,
) -> bool {
    if k == pat.len() {
        return true;
    }
    let need = pat.len() - k;
    for p in from..seq.len() {
        if seq.len() - p < need {
            break;
        }
        let v = seq[p];
        if !s.contains(&v) {
            continue;
        }
        let fresh = match g.get(&pat[k]) {
            Some(&w) if w == v => false,
            Some(_) => continue,
            None if used.contains(&v) => continue,
            None => true,
        };
        if fresh {
            g.insert(pat[k], v);
            used.insert(v);
        }
        pos.push(p);
        if match_from(seq, s, pat, k + 1, p + 1, g, used, pos) {
            return true;
        }
        pos.pop();
        if fresh {
            g.remove(&pat[k]);
            used.remove(&v);
        }
    }
    false
}

/// Bi-eulerian embedding with `T` as a face, seeded from a bi-eulerian embedding of a
/// 4-regular digraph `H` whose vertex count equals the number of degree-0-mod-4
/// vertices of `D`. Both faces of `H` and their reversals are tried as patterns.
pub fn embed_bieulerian_pattern(d: &Digraph, t: &ClosedWalk, h: &Digraph, h_emb: &Embedding) -> Result<OrientedDirectedEmbedding> {
    check_circuit(d, t)?;
    if !h_emb.is_bi_eulerian() || !is_directed_embedding(h_emb, h) || h_emb.twisted().iter().any(|&x| x) {
        return precondition("host embedding is not an oriented bi-eulerian directed embedding");
    }
    if (0..h.n()).any(|v| h.degree(v) != 4) {
        return precondition("host digraph is not 4-regular");
    }
    let s = d.zero_mod4_vertices();
    if s.is_empty() {
        return embed_bieulerian_2mod4(d, t);
    }
    if s.len() != h.n() {
        return precondition(format!("host has {} vertices but {} vertices have degree 0 mod 4", h.n(), s.len()));
    }
    let hr = h.reversed();
    let tracked = |x: &Digraph| (0..x.num_halves()).map(Digraph::is_out).collect::<Vec<_>>();
    let fwd = OrientedDirectedEmbedding::from_rotation(h.clone(), h_emb.rotation().to_vec(), tracked(h))?;
    // reversal swaps the half labels at each vertex: half x of H is mate(x) of H^r
    let rrot = h_emb.rotation().iter().map(|r| r.iter().map(|&x| mate(x)).collect()).collect();
    let rev = OrientedDirectedEmbedding::from_rotation(hr.clone(), rrot, tracked(&hr))?;
    let faces: Vec<ClosedWalk> = h_emb.faces().iter().map(|f| f.as_directed(h).unwrap()).collect();
    let mut candidates = Vec::new();
    for f in &faces {
        candidates.push((&fwd, h, f.clone()));
    }
    for f in &faces {
        let r = ClosedWalk::new_directed(&hr, f.reversed().steps().iter().map(|&x| mate(x)).collect())?;
        candidates.push((&rev, &hr, r));
    }
    for (seed, hd, x) in candidates {
        let xi = x.vertices(hd);
        if let Some(pm) = pattern_match(d, t, &s, &xi) {
            let x = x.rotated(pm.offset, hd);
            return seed_and_collapse(d, t, seed, &x, &pm.positions);
        }
    }
    precondition("no occurrence pattern along the circuit matches a face of the host embedding")
}

/// Builds the subdivided host inside the cycle lift (occurrence `positions[k]` plays
/// vertex `k` of the host face `x`), transfers the seed rotation, then collapses the
/// remaining fibers.
fn seed_and_collapse(
    d: &Digraph,
    t: &ClosedWalk,
    seed: &OrientedDirectedEmbedding,
    x: &ClosedWalk,
    positions: &[usize],
) -> Result<OrientedDirectedEmbedding> {
    let hd = seed.digraph();
    let (c, f, _z) = lift_to_cycle(d, t)?;
    let steps = t.steps();
    let m = steps.len();
    let xs = x.steps();
    let l = xs.len();
    if l != positions.len() || l != hd.m() {
        return invalid("pattern length does not match the host face");
    }
    // host vertex → cycle vertex standing for it (its first occurrence)
    let mut branch = vec![usize::MAX; hd.n()];
    let mut cmap: Vec<Vertex> = (0..m).collect();
    for k in 0..l {
        let hv = hd.incv(xs[k]);
        if branch[hv] == usize::MAX {
            branch[hv] = positions[k];
        }
        cmap[positions[k]] = branch[hv];
    }
    // compact ids for C'
    let mut idx = vec![usize::MAX; m];
    let mut names = Vec::new();
    for j in 0..m {
        if cmap[j] == j {
            idx[j] = names.len();
            names.push(c.vertex_name(j).to_string());
        }
    }
    let cv: Vec<Vertex> = (0..m).map(|j| idx[cmap[j]]).collect();
    let arcs: Vec<_> = (0..c.m()).map(|e| (cv[c.tail(e)], cv[c.head(e)])).collect();
    let c2 = Digraph::from_graph(Graph::with_names(names, c.edge_names().to_vec(), &arcs)?);
    // host half → C' half: arc x_k runs from occurrence positions[k] to positions[k+1]
    let mut half = vec![usize::MAX; hd.num_halves()];
    for k in 0..l {
        let next = positions[(k + 1) % l];
        half[xs[k]] = steps[positions[k]];
        half[mate(xs[k])] = mate(steps[(next + m - 1) % m]);
    }
    let mut rotation = vec![Vec::new(); c2.n()];
    for j in 0..m {
        if cmap[j] == j {
            rotation[cv[j]] = vec![steps[j], mate(steps[(j + m - 1) % m])];
        }
    }
    for hv in 0..hd.n() {
        rotation[cv[branch[hv]]] = seed.embedding().rotation_at(hv).iter().map(|&h| half[h]).collect();
    }
    let tracked: Vec<bool> = (0..c2.num_halves()).map(Digraph::is_out).collect();
    let mut phi = OrientedDirectedEmbedding::from_rotation(c2.clone(), rotation, tracked.clone())?;
    let z = ClosedWalk::new_directed(&c2, steps.to_vec())?;
    if !phi.has_proface(&z) {
        phi = OrientedDirectedEmbedding::new(c2.clone(), phi.embedding().mirrored(), tracked)?;
    }
    if !phi.embedding().is_bi_eulerian() || !phi.has_proface(&z) {
        return verification("seeded subdivision is not bi-eulerian with the circuit as proface");
    }
    let f2map: Vec<Vertex> = (0..c2.n())
        .map(|v| {
            let j = (0..m).find(|&j| cv[j] == v).unwrap();
            f.map()[j]
        })
        .collect();
    let f2 = VertexIdentification::new(c2, d.clone(), f2map)?;
    let out = apply_odd_identification(&phi, &f2)?;
    check_output(d, t, &out)?;
    if !out.embedding().is_bi_eulerian() {
        return verification(format!("expected a bi-eulerian result, got {} faces", out.num_faces()));
    }
    Ok(out)
}
