use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use emberlin::error::Error;
use emberlin::io::{self, ParsedGraph};
use emberlin::{euler, generators, nonorientable, obstructions, oracle, oriented};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Verification(_) | Error::Budget { .. } | Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A graph or digraph read from the text format.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: ParsedGraph,
}

#[pymethods]
impl PyGraph {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: io::parse_graph(text).map_err(to_py)? })
    }

    /// `ddc`, `dp`, `dip4`, `fst`, `unlaced`, `tree-of-cycles` or `join-chain`.
    #[staticmethod]
    #[pyo3(signature = (family, *params))]
    fn generate(family: &str, params: Vec<usize>) -> PyResult<Self> {
        let p = |i: usize| params.get(i).copied().ok_or_else(|| PyValueError::new_err("missing parameter"));
        let inner = match family {
            "ddc" => ParsedGraph::Directed(generators::ddc(p(0)?).map_err(to_py)?),
            "dp" => ParsedGraph::Directed(generators::dp(p(0)?).map_err(to_py)?),
            "dip4" => ParsedGraph::Directed(generators::dip4()),
            "fst" => ParsedGraph::Undirected(generators::fst_host(p(0)?, p(1)?).map_err(to_py)?),
            "unlaced" => ParsedGraph::Directed(generators::unlaced().0),
            "tree-of-cycles" => ParsedGraph::Undirected(generators::tree_of_cycles(&params).map_err(to_py)?.0),
            "join-chain" => ParsedGraph::Directed(generators::join_chain(p(0)?).map_err(to_py)?),
            _ => return Err(PyValueError::new_err(format!("unknown family {family}"))),
        };
        Ok(PyGraph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.graph().n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.graph().m()
    }

    #[getter]
    fn directed(&self) -> bool {
        self.inner.digraph().is_some()
    }

    fn to_text(&self) -> String {
        io::write_graph(self.inner.graph(), self.directed())
    }

    /// Admissibility verdict: `admissible`, `obstructed` or `inadmissible: <reason>`.
    fn admissibility(&self) -> PyResult<String> {
        let r = obstructions::admissibility(self.inner.graph()).map_err(to_py)?;
        Ok(match r.verdict {
            obstructions::Verdict::Admissible => "admissible".into(),
            obstructions::Verdict::AdmissibleButObstructed => "obstructed".into(),
            obstructions::Verdict::Inadmissible(why) => format!("inadmissible: {why}"),
        })
    }

    /// Orientable face-count histogram from the exhaustive oracle (directed embeddings for digraphs).
    fn orientable_census(&self) -> PyResult<Vec<(usize, u64)>> {
        let c = match &self.inner {
            ParsedGraph::Directed(d) => oracle::enumerate_directed_embeddings(d, oracle::Signatures::AllPositive),
            ParsedGraph::Undirected(g) => oracle::enumerate_embeddings(g, true),
        }
        .map_err(to_py)?;
        Ok(c.orientable.into_iter().collect())
    }

    /// Maximum-genus orientable directed embedding with an euler circuit as a face.
    fn embed_max_genus(&self) -> PyResult<PyEmbedding> {
        let d = self.inner.digraph().ok_or_else(|| PyValueError::new_err("needs a digraph"))?;
        let t = euler::euler_circuit_directed(d, 0).map_err(to_py)?;
        let e = oriented::embed_max_genus(d, &t).map_err(to_py)?;
        Ok(PyEmbedding { inner: e.into_embedding() })
    }

    /// Orientable bi-eulerian directed embedding (all degrees 2 mod 4, or exactly two 0 mod 4).
    fn embed_bieulerian(&self) -> PyResult<PyEmbedding> {
        let d = self.inner.digraph().ok_or_else(|| PyValueError::new_err("needs a digraph"))?;
        let zero = d.zero_mod4_vertices();
        let e = match zero.len() {
            0 => oriented::embed_bieulerian_2mod4(d, &euler::euler_circuit_directed(d, 0).map_err(to_py)?),
            2 => oriented::embed_bieulerian_two0mod4(d, &euler::interlacing_euler_circuit(d, zero[0], zero[1]).map_err(to_py)?),
            k => return Err(PyValueError::new_err(format!("{k} vertices of degree 0 mod 4"))),
        }
        .map_err(to_py)?;
        Ok(PyEmbedding { inner: e.into_embedding() })
    }

    /// Bi-eulerian embedding of Euler genus m − n, nonorientable unless the graph is a cycle.
    fn embed_bieulerian_nonorientable(&self) -> PyResult<PyEmbedding> {
        let g = self.inner.graph();
        let t = euler::euler_circuit(g, 0).map_err(to_py)?;
        Ok(PyEmbedding { inner: nonorientable::bieulerian_nonorientable(g, &t).map_err(to_py)? })
    }

    /// Nonorientable directed embedding with `faces` faces.
    fn embed_nonorientable_directed(&self, faces: usize) -> PyResult<PyEmbedding> {
        let d = self.inner.digraph().ok_or_else(|| PyValueError::new_err("needs a digraph"))?;
        let e = if faces == 1 { nonorientable::one_face_directed(d) } else { nonorientable::interpolate_faces(d, faces, None) };
        Ok(PyEmbedding { inner: e.map_err(to_py)? })
    }

    /// Re-check an embedding file; returns the key=value report, raises on failure.
    fn verify(&self, embedding_text: &str) -> PyResult<String> {
        let g = self.inner.graph();
        let f = io::parse_embedding(g, embedding_text).map_err(to_py)?;
        let r = io::verify(g, &f, self.inner.digraph(), None).map_err(to_py)?;
        if r.ok() {
            Ok(r.render())
        } else {
            Err(PyRuntimeError::new_err(r.failures.join("; ")))
        }
    }
}

#[pyclass(name = "Embedding", frozen)]
struct PyEmbedding {
    inner: emberlin::Embedding,
}

#[pymethods]
impl PyEmbedding {
    #[getter]
    fn num_faces(&self) -> usize {
        self.inner.num_faces()
    }

    #[getter]
    fn euler_genus(&self) -> usize {
        self.inner.euler_genus()
    }

    #[getter]
    fn orientable(&self) -> bool {
        self.inner.is_orientable()
    }

    #[getter]
    fn bi_eulerian(&self) -> bool {
        self.inner.is_bi_eulerian()
    }

    /// Faces as lists of half names.
    fn faces(&self) -> Vec<Vec<String>> {
        let g = self.inner.graph();
        self.inner.faces().iter().map(|f| f.steps().iter().map(|&h| g.half_name(h)).collect()).collect()
    }

    fn to_text(&self) -> String {
        io::write_embedding(&self.inner)
    }

    fn __repr__(&self) -> String {
        let o = if self.inner.is_orientable() { "orientable" } else { "nonorientable" };
        format!("Embedding(faces={}, euler_genus={}, {o})", self.inner.num_faces(), self.inner.euler_genus())
    }
}

#[pymodule]
#[pyo3(name = "emberlin")]
fn emberlin_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyEmbedding>()?;
    Ok(())
}
