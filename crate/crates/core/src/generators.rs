//! Named example families.

use crate::error::{invalid, Result};
use crate::graph::{Digraph, Graph, Vertex};
use crate::obstructions::two_arc_join;
use crate::walk::ClosedWalk;

fn named(vn: &[String], en: Vec<String>, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
    Graph::with_names(vn.to_vec(), en, edges)
}

fn numbered(prefix: &str, k: usize) -> Vec<String> {
    (0..k).map(|i| format!("{prefix}{i}")).collect()
}

/// Two vertices `u`, `v`; arcs `a1`, `a2` from u to v and `b1`, `b2` back.
pub fn dip4() -> Digraph {
    let vn = ["u", "v"].map(String::from);
    let en = ["a1", "a2", "b1", "b2"].map(String::from).to_vec();
    Digraph::from_graph(named(&vn, en, &[(0, 1), (0, 1), (1, 0), (1, 0)]).unwrap())
}

/// The circuit `u a1 v b1 u a2 v b2` of [`dip4`].
pub fn dip4_circuit() -> ClosedWalk {
    ClosedWalk::new_directed(&dip4(), vec![0, 4, 2, 6]).unwrap()
}

/// An `n`-cycle with every edge replaced by a digon of opposite arcs (`n ≥ 2`).
pub fn ddc(n: usize) -> Result<Digraph> {
    if n < 2 {
        return invalid("ddc needs n ≥ 2");
    }
    let mut arcs = Vec::new();
    let mut en = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        arcs.push((i, j));
        en.push(format!("f{i}"));
        arcs.push((j, i));
        en.push(format!("r{i}"));
    }
    Ok(Digraph::from_graph(named(&numbered("v", n), en, &arcs)?))
}

/// A path `v_0 … v_{ℓ+1}` with a digon of opposite arcs on every edge: `ℓ` inner
/// vertices of degree 4 and two ends of degree 2.
pub fn dp(l: usize) -> Result<Digraph> {
    if l == 0 {
        return invalid("dp needs ℓ ≥ 1");
    }
    let mut arcs = Vec::new();
    let mut en = Vec::new();
    for i in 0..=l {
        arcs.push((i, i + 1));
        en.push(format!("f{i}"));
        arcs.push((i + 1, i));
        en.push(format!("r{i}"));
    }
    Ok(Digraph::from_graph(named(&numbered("v", l + 2), en, &arcs)?))
}

/// 4-regular host of `F_{s,t}`: chains `c_0 … c_s` and `w_0 … w_t`, connectors from
/// `c_s` to `w_0` and `w_t`, and a balancing vertex `z` with a digon to `c_0` and
/// single edges to `w_0` and `w_t`.
pub fn fst_host(s: usize, t: usize) -> Result<Graph> {
    if s == 0 || t == 0 {
        return invalid("fst_host needs s, t ≥ 1");
    }
    let c = |i: usize| i;
    let w = |j: usize| s + 1 + j;
    let z = s + t + 2;
    let mut vn = numbered("c", s + 1);
    vn.extend(numbered("w", t + 1));
    vn.push("z".into());
    let mut edges = Vec::new();
    let mut en = Vec::new();
    for i in 0..s {
        for k in 0..2 {
            edges.push((c(i), c(i + 1)));
            en.push(format!("c{i}_{k}"));
        }
    }
    for j in 0..t {
        for k in 0..2 {
            edges.push((w(j), w(j + 1)));
            en.push(format!("w{j}_{k}"));
        }
    }
    edges.push((c(s), w(0)));
    en.push("f1".into());
    edges.push((c(s), w(t)));
    en.push("f2".into());
    for k in 0..2 {
        edges.push((z, c(0)));
        en.push(format!("z{k}"));
    }
    edges.push((z, w(0)));
    en.push("zw0".into());
    edges.push((z, w(t)));
    en.push("zwt".into());
    named(&vn, en, &edges)
}

/// Two degree-4 vertices `u`, `v` that an euler circuit does not interlace, with
/// degree-2 vertices `p`, `q` forcing the transitions: arcs u→p→u, v→q→v, u→v, v→u.
/// Returns the digraph and the circuit `u p u v q v`.
pub fn unlaced() -> (Digraph, ClosedWalk) {
    let vn = ["u", "v", "p", "q"].map(String::from);
    let en = ["up", "pu", "vq", "qv", "uv", "vu"].map(String::from).to_vec();
    let d = Digraph::from_graph(named(&vn, en, &[(0, 2), (2, 0), (1, 3), (3, 1), (0, 1), (1, 0)]).unwrap());
    let t = ClosedWalk::new_directed(&d, vec![0, 2, 8, 4, 6, 10]).unwrap();
    (d, t)
}

/// A tree of cycles: cycle `i` (length `lengths[i]` ≥ 1) shares its first vertex with
/// the last new vertex of cycle `i − 1` (or the first vertex of cycle 0 when cycle
/// `i − 1` is a loop). Returns the graph and its cycles.
pub fn tree_of_cycles(lengths: &[usize]) -> Result<(Graph, Vec<ClosedWalk>)> {
    if lengths.is_empty() || lengths.contains(&0) {
        return invalid("tree_of_cycles needs positive cycle lengths");
    }
    let mut n = 1;
    let mut edges = Vec::new();
    let mut cycles_idx = Vec::new();
    let mut anchor = 0;
    for &len in lengths {
        let mut verts = vec![anchor];
        for _ in 1..len {
            verts.push(n);
            n += 1;
        }
        let mut es = Vec::new();
        for i in 0..len {
            es.push(edges.len());
            edges.push((verts[i], verts[(i + 1) % len]));
        }
        cycles_idx.push(es);
        anchor = *verts.last().unwrap();
    }
    let g = named(&numbered("v", n), numbered("e", edges.len()), &edges)?;
    let cycles = cycles_idx
        .into_iter()
        .map(|es| ClosedWalk::new(&g, es.into_iter().map(|e| 2 * e).collect()))
        .collect::<Result<_>>()?;
    Ok((g, cycles))
}

/// `k` copies of [`dip4`] chained by 2-arc-joins: each new copy is joined along its
/// arc `a1` to the most recently added arc of the chain so far.
pub fn join_chain(k: usize) -> Result<Digraph> {
    if k == 0 {
        return invalid("join_chain needs k ≥ 1");
    }
    let mut d = dip4();
    for _ in 1..k {
        d = two_arc_join(&d, d.m() - 1, &dip4(), 0)?;
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let d = ddc(4).unwrap();
        assert_eq!((d.n(), d.m(), d.zero_mod4_vertices().len()), (4, 8, 4));
        let p = dp(1).unwrap();
        assert_eq!((p.n(), p.m(), p.zero_mod4_vertices().len()), (3, 4, 1));
        let h = fst_host(1, 2).unwrap();
        assert_eq!((h.n(), h.m()), (6, 12));
        assert!((0..h.n()).all(|v| h.degree(v) == 4));
        assert!(h.is_eulerian());
        let j = join_chain(3).unwrap();
        assert!(j.is_eulerian());
        assert_eq!(j.zero_mod4_vertices().len(), 6);
    }

    #[test]
    fn unlaced_circuit_does_not_interlace() {
        let (d, t) = unlaced();
        assert!(d.is_eulerian());
        assert!(t.is_euler_circuit(&d));
        assert_eq!(d.zero_mod4_vertices(), vec![0, 1]);
        assert!(!t.interlaces(&d, 0, 1));
    }

    #[test]
    fn bowtie_is_two_triangles() {
        let (g, cs) = tree_of_cycles(&[3, 3]).unwrap();
        assert_eq!((g.n(), g.m(), cs.len()), (5, 6, 2));
        assert!(g.is_eulerian());
    }
}
