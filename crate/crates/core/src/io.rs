//! Text formats for graphs, embeddings and walk lists, and the independent verifier.
//!
//! Graph files: `v <id>`, `e <id> <u> <v>`, `a <id> <tail> <head>`, `#` comments.
//! Embedding files: `rot <v> : <half> …`, `sig <e> <+|->`, `face : <half> …`,
//! `genus <γ> <orientable|nonorientable>`. Walk files: `circuit : <half> …`.
//! Halves are written `<edge>.0` (tail side) and `<edge>.1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::embedding::{is_directed_embedding, Embedding};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph, Half, Vertex};
use crate::walk::{canonical_multiset, is_cyclically_compatible, ClosedWalk};

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

/// Meaningful lines with 1-based numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap().trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

#[derive(Clone, Debug)]
pub enum ParsedGraph {
    Undirected(Graph),
    Directed(Digraph),
}

impl ParsedGraph {
    pub fn graph(&self) -> &Graph {
        match self {
            ParsedGraph::Undirected(g) => g,
            ParsedGraph::Directed(d) => d.graph(),
        }
    }

    pub fn digraph(&self) -> Option<&Digraph> {
        match self {
            ParsedGraph::Directed(d) => Some(d),
            ParsedGraph::Undirected(_) => None,
        }
    }
}

/// Parses a graph file; any `a` record makes it a digraph (mixing with `e` is an error).
/// Vertices not declared by `v` are created in order of first appearance.
pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut vnames: Vec<String> = Vec::new();
    let mut vid: BTreeMap<String, Vertex> = BTreeMap::new();
    let mut enames: Vec<String> = Vec::new();
    let mut seen_edges: BTreeMap<String, usize> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut kind: Option<&str> = None;
    let mut vertex = |name: &str, vnames: &mut Vec<String>| -> Vertex {
        *vid.entry(name.to_string()).or_insert_with(|| {
            vnames.push(name.to_string());
            vnames.len() - 1
        })
    };
    for (ln, l) in lines(text) {
        let tok: Vec<&str> = l.split_whitespace().collect();
        match tok[0] {
            "v" => {
                if tok.len() != 2 {
                    return perr(ln, "expected `v <id>`");
                }
                if vnames.iter().any(|x| x == tok[1]) {
                    return perr(ln, format!("vertex {} declared twice", tok[1]));
                }
                vertex(tok[1], &mut vnames);
            }
            k @ ("e" | "a") => {
                if tok.len() != 4 {
                    return perr(ln, format!("expected `{k} <id> <u> <v>`"));
                }
                if kind.is_some_and(|x| x != k) {
                    return perr(ln, "cannot mix `e` and `a` records");
                }
                kind = Some(k);
                if let Some(prev) = seen_edges.insert(tok[1].to_string(), ln) {
                    return perr(ln, format!("edge {} already defined on line {prev}", tok[1]));
                }
                if tok[1].contains('.') {
                    return perr(ln, "edge ids may not contain `.`");
                }
                let u = vertex(tok[2], &mut vnames);
                let v = vertex(tok[3], &mut vnames);
                enames.push(tok[1].to_string());
                edges.push((u, v));
            }
            other => return perr(ln, format!("unknown record `{other}`")),
        }
    }
    if vnames.is_empty() {
        return perr(0, "graph has no vertices");
    }
    let g = Graph::with_names(vnames, enames, &edges)?;
    Ok(if kind == Some("a") { ParsedGraph::Directed(Digraph::from_graph(g)) } else { ParsedGraph::Undirected(g) })
}

pub fn write_graph(g: &Graph, directed: bool) -> String {
    let mut s = String::new();
    for v in 0..g.n() {
        writeln!(s, "v {}", g.vertex_name(v)).unwrap();
    }
    let tag = if directed { "a" } else { "e" };
    for (e, (u, v)) in g.edges().into_iter().enumerate() {
        writeln!(s, "{tag} {} {} {}", g.edge_name(e), g.vertex_name(u), g.vertex_name(v)).unwrap();
    }
    s
}

fn parse_halves(g: &Graph, ln: usize, toks: &[&str]) -> Result<Vec<Half>> {
    toks.iter()
        .map(|t| match g.half_by_name(t) {
            Some(h) => Ok(h),
            None => perr(ln, format!("unknown half `{t}`")),
        })
        .collect()
}

fn parse_walk(g: &Graph, ln: usize, rest: &str) -> Result<ClosedWalk> {
    let toks: Vec<&str> = rest.split_whitespace().collect();
    let steps = parse_halves(g, ln, &toks)?;
    if steps.is_empty() {
        if g.m() == 0 {
            return Ok(ClosedWalk::trivial(0));
        }
        return perr(ln, "empty walk");
    }
    ClosedWalk::new(g, steps).map_err(|e| Error::Parse { line: ln, msg: e.to_string() })
}

fn walk_line(g: &Graph, tag: &str, w: &ClosedWalk) -> String {
    let hs: Vec<String> = w.steps().iter().map(|&h| g.half_name(h)).collect();
    format!("{tag} : {}", hs.join(" "))
}

/// An embedding file as written, before any checking beyond syntax.
#[derive(Clone, Debug, Default)]
pub struct EmbeddingFile {
    pub rotation: Vec<Option<Vec<Half>>>,
    pub twisted: Vec<bool>,
    pub faces: Vec<ClosedWalk>,
    pub genus: Option<(usize, bool)>,
}

impl EmbeddingFile {
    pub fn embedding(&self, g: &Graph) -> Result<Embedding> {
        let mut rot = Vec::with_capacity(g.n());
        for (v, r) in self.rotation.iter().enumerate() {
            match r {
                Some(r) => rot.push(r.clone()),
                None => return Err(Error::Invalid(format!("no rotation for vertex {}", g.vertex_name(v)))),
            }
        }
        Embedding::new(g.clone(), rot, self.twisted.clone())
    }
}

pub fn parse_embedding(g: &Graph, text: &str) -> Result<EmbeddingFile> {
    let mut f = EmbeddingFile { rotation: vec![None; g.n()], twisted: vec![false; g.m()], ..Default::default() };
    let mut signed = vec![false; g.m()];
    for (ln, l) in lines(text) {
        let (head, rest) = match l.split_once(':') {
            Some((h, r)) => (h.trim(), r.trim()),
            None => (l, ""),
        };
        let tok: Vec<&str> = head.split_whitespace().collect();
        match tok[0] {
            "rot" => {
                let Some(v) = tok.get(1).and_then(|n| g.vertex_by_name(n)) else {
                    return perr(ln, "expected `rot <vertex> : <halves>`");
                };
                if f.rotation[v].is_some() {
                    return perr(ln, format!("second rotation for vertex {}", g.vertex_name(v)));
                }
                let toks: Vec<&str> = rest.split_whitespace().collect();
                f.rotation[v] = Some(parse_halves(g, ln, &toks)?);
            }
            "sig" => {
                let (Some(e), Some(s)) = (tok.get(1).and_then(|n| g.edge_by_name(n)), tok.get(2)) else {
                    return perr(ln, "expected `sig <edge> <+|->`");
                };
                if std::mem::replace(&mut signed[e], true) {
                    return perr(ln, format!("second signature for edge {}", g.edge_name(e)));
                }
                f.twisted[e] = match *s {
                    "+" => false,
                    "-" => true,
                    _ => return perr(ln, "signature must be + or -"),
                };
            }
            "face" => f.faces.push(parse_walk(g, ln, rest)?),
            "genus" => {
                let (Some(gm), Some(o)) = (tok.get(1).and_then(|x| x.parse().ok()), tok.get(2)) else {
                    return perr(ln, "expected `genus <γ> <orientable|nonorientable>`");
                };
                let o = match *o {
                    "orientable" => true,
                    "nonorientable" => false,
                    _ => return perr(ln, "expected orientable or nonorientable"),
                };
                f.genus = Some((gm, o));
            }
            other => return perr(ln, format!("unknown record `{other}`")),
        }
    }
    if let Some(v) = f.rotation.iter().position(Option::is_none) {
        if g.halves_at(v).is_empty() {
            f.rotation[v] = Some(Vec::new());
        } else {
            return perr(0, format!("no rotation for vertex {}", g.vertex_name(v)));
        }
    }
    Ok(f)
}

pub fn write_embedding(e: &Embedding) -> String {
    let g = e.graph();
    let mut s = String::new();
    for v in 0..g.n() {
        let hs: Vec<String> = e.rotation_at(v).iter().map(|&h| g.half_name(h)).collect();
        writeln!(s, "rot {} : {}", g.vertex_name(v), hs.join(" ")).unwrap();
    }
    for ed in 0..g.m() {
        writeln!(s, "sig {} {}", g.edge_name(ed), if e.is_twisted(ed) { '-' } else { '+' }).unwrap();
    }
    for f in e.faces() {
        writeln!(s, "{}", walk_line(g, "face", f)).unwrap();
    }
    let o = if e.is_orientable() { "orientable" } else { "nonorientable" };
    writeln!(s, "genus {} {o}", e.euler_genus()).unwrap();
    s
}

/// `circuit : …` lines.
pub fn parse_walks(g: &Graph, text: &str) -> Result<Vec<ClosedWalk>> {
    let mut out = Vec::new();
    for (ln, l) in lines(text) {
        match l.split_once(':') {
            Some((h, rest)) if h.trim() == "circuit" => out.push(parse_walk(g, ln, rest)?),
            _ => return perr(ln, "expected `circuit : <halves>`"),
        }
    }
    Ok(out)
}

pub fn write_walks(g: &Graph, walks: &[ClosedWalk]) -> String {
    walks.iter().map(|w| walk_line(g, "circuit", w) + "\n").collect()
}

/// Outcome of re-checking an embedding file from scratch.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub cyclically_compatible: bool,
    pub directed: Option<bool>,
    pub orientable: bool,
    pub faces: usize,
    pub face_lengths: Vec<usize>,
    pub euler_genus: usize,
    pub bi_eulerian: bool,
    pub euler_circuit_faces: usize,
    pub circuit_is_face: Option<bool>,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(s, "cyclically_compatible={}", yn(self.cyclically_compatible)).unwrap();
        if let Some(d) = self.directed {
            writeln!(s, "directed={}", yn(d)).unwrap();
        }
        writeln!(s, "orientable={}", yn(self.orientable)).unwrap();
        writeln!(s, "faces={}", self.faces).unwrap();
        let lens: Vec<String> = self.face_lengths.iter().map(usize::to_string).collect();
        writeln!(s, "face_lengths={}", lens.join(",")).unwrap();
        writeln!(s, "euler_genus={}", self.euler_genus).unwrap();
        writeln!(s, "euler_circuit_faces={}", self.euler_circuit_faces).unwrap();
        writeln!(s, "bi_eulerian={}", yn(self.bi_eulerian)).unwrap();
        if let Some(c) = self.circuit_is_face {
            writeln!(s, "circuit_is_face={}", yn(c)).unwrap();
        }
        for f in &self.failures {
            writeln!(s, "FAIL {f}").unwrap();
        }
        writeln!(s, "status={}", if self.ok() { "ok" } else { "failed" }).unwrap();
        s
    }
}

/// Rotation-adjacent pairs at each vertex (as sorted unordered pairs).
fn rotation_pairs(rot: &[Half]) -> Vec<(Half, Half)> {
    let k = rot.len();
    let mut p: Vec<_> = (0..k).map(|i| (rot[i].min(rot[(i + 1) % k]), rot[i].max(rot[(i + 1) % k]))).collect();
    p.sort_unstable();
    p
}

/// Re-checks an embedding file against its graph: the listed faces must be cyclically
/// compatible, agree with the rotation vertex by vertex, and reproduce the stated
/// genus. `directed` adds the in/out alternation check; `circuit` asks whether that
/// walk is one of the faces.
pub fn verify(g: &Graph, file: &EmbeddingFile, directed: Option<&Digraph>, circuit: Option<&ClosedWalk>) -> Result<VerifyReport> {
    let e = file.embedding(g)?;
    let mut failures = Vec::new();
    let claimed: &[ClosedWalk] = if file.faces.is_empty() { e.faces() } else { &file.faces };
    let compat = is_cyclically_compatible(g, claimed);
    if let Err(v) = compat {
        failures.push(format!("faces are not cyclically compatible at vertex {}", g.vertex_name(v)));
    }
    if !file.faces.is_empty() {
        let trs = crate::walk::transition_graphs(g, &file.faces);
        for (v, tr) in trs.iter().enumerate() {
            let mut listed = tr.edges.clone();
            listed.sort_unstable();
            if g.degree(v) > 0 && listed != rotation_pairs(e.rotation_at(v)) {
                failures.push(format!("faces disagree with the rotation at vertex {}", g.vertex_name(v)));
                break;
            }
        }
        if canonical_multiset(&file.faces) != canonical_multiset(e.faces()) {
            failures.push("listed faces differ from the traced faces".into());
        }
    }
    if let Some((gm, o)) = file.genus {
        if gm != e.euler_genus() {
            failures.push(format!("stated genus {gm} but traced genus {}", e.euler_genus()));
        }
        if o != e.is_orientable() {
            failures.push("stated orientability is wrong".into());
        }
    }
    let dir = directed.map(|d| is_directed_embedding(&e, d));
    if dir == Some(false) {
        failures.push("rotation does not alternate in/out at some vertex".into());
    }
    let circuit_is_face = circuit.map(|t| {
        let key = canonical_multiset(std::slice::from_ref(t));
        e.faces().iter().any(|f| canonical_multiset(std::slice::from_ref(f)) == key)
    });
    if circuit_is_face == Some(false) {
        failures.push("the given euler circuit is not a face".into());
    }
    let euler_circuit_faces = e.faces().iter().filter(|f| f.is_euler_circuit(g)).count();
    Ok(VerifyReport {
        cyclically_compatible: compat.is_ok(),
        directed: dir,
        orientable: e.is_orientable(),
        faces: e.num_faces(),
        face_lengths: e.faces().iter().map(ClosedWalk::len).collect(),
        euler_genus: e.euler_genus(),
        bi_eulerian: e.is_bi_eulerian(),
        euler_circuit_faces,
        circuit_is_face,
        failures,
    })
}
