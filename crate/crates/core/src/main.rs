use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use emberlin::embedding::Embedding;
use emberlin::error::{Error, Result};
use emberlin::euler::{euler_circuit, euler_circuit_directed, euler_circuit_through, interlacing_euler_circuit};
use emberlin::io::{self, ParsedGraph};
use emberlin::obstructions::{admissibility, Verdict};
use emberlin::oracle::{self, OracleConfig, Signatures};
use emberlin::{generators, nonorientable, oriented, ClosedWalk, Digraph, Graph, Vertex};

#[derive(Parser)]
#[command(name = "emberlin", version, about = "Build, verify and audit embeddings with euler-circuit faces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    MaxGenus,
    BiEulerian,
    Pattern,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sigs {
    Positive,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Degree census, bad 2-edge cuts, forbidden configurations and the admissibility verdict.
    Analyze { graph: PathBuf },
    /// Build an embedding and verify its serialized form before writing it.
    Embed {
        graph: PathBuf,
        #[arg(long, conflicts_with = "nonorientable")]
        orientable: bool,
        #[arg(long)]
        nonorientable: bool,
        #[arg(long, value_enum, default_value = "bi-eulerian")]
        mode: Mode,
        /// Circuit file, or `auto`.
        #[arg(long, default_value = "auto")]
        euler_circuit: String,
        /// Host digraph for `--mode pattern`.
        #[arg(long)]
        pattern_host: Option<PathBuf>,
        /// Bi-eulerian directed embedding of the pattern host (searched for if omitted).
        #[arg(long)]
        pattern_embedding: Option<PathBuf>,
        /// Circuit decomposition to complete with one outer face.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        /// Target face count for a nonorientable directed embedding.
        #[arg(long)]
        faces: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check an embedding file against its graph.
    Verify {
        graph: PathBuf,
        embedding: PathBuf,
        /// Also check that this circuit is a face.
        #[arg(long)]
        euler_circuit: Option<PathBuf>,
    },
    /// Exhaustive embedding census.
    Enumerate {
        graph: PathBuf,
        /// Signatures to range over (digraphs: directed embeddings only).
        #[arg(long, value_enum, default_value = "positive")]
        signatures: Sigs,
    },
    /// Emit a named example: ddc N | dp L | dip4 | fst S T | unlaced | tree-of-cycles L1,L2,.. | join-chain K
    Generate {
        family: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Euler circuits, optionally through given vertices or interlacing two vertices.
    Euler {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        through: Vec<String>,
        #[arg(long, value_delimiter = ',', num_args = 1)]
        interlace: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read(p: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(p)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(p: &Path) -> Result<ParsedGraph> {
    io::parse_graph(&read(p)?)
}

fn pre(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn vertex(g: &Graph, name: &str) -> Result<Vertex> {
    g.vertex_by_name(name).ok_or_else(|| Error::Invalid(format!("unknown vertex {name}")))
}

fn one_circuit(g: &Graph, p: &Path) -> Result<ClosedWalk> {
    let mut ws = io::parse_walks(g, &read(p)?)?;
    if ws.len() != 1 {
        return Err(pre("circuit file must hold exactly one circuit"));
    }
    Ok(ws.remove(0))
}

fn directed_circuit(d: &Digraph, t: ClosedWalk) -> Result<ClosedWalk> {
    t.as_directed(d).ok_or_else(|| pre("circuit does not follow the arc directions"))
}

fn analyze(p: &Path) -> Result<String> {
    let pg = load_graph(p)?;
    let g = pg.graph();
    let r = admissibility(g)?;
    let mut s = String::new();
    s += &format!("graph: {} vertices, {} edges{}\n", g.n(), g.m(), if pg.digraph().is_some() { " (directed)" } else { "" });
    s += &format!("vertices of degree 0 mod 4: {}\n", r.zero_mod4);
    for b in &r.bad_cuts {
        s += &format!("bad 2-edge cut: {} {} ({} / {} vertices of degree 0 mod 4)\n", g.edge_name(b.cut.e), g.edge_name(b.cut.f), b.zero_mod4_side1, b.zero_mod4_side2);
    }
    for w in &r.forbidden_configs {
        s += &format!(
            "digon-chain configuration s={} t={} via {} {}: {}\n",
            w.s(),
            w.t(),
            g.edge_name(w.f1),
            g.edge_name(w.f2),
            if w.forbidden { "forbidden" } else { "allowed" }
        );
    }
    let verdict = match &r.verdict {
        Verdict::Inadmissible(why) => format!("inadmissible ({why})"),
        Verdict::Admissible => "admissible".into(),
        Verdict::AdmissibleButObstructed => "admissible but obstructed".into(),
    };
    s += &format!("verdict: {verdict}\n---\n");
    s += &format!("n={}\nm={}\nzero_mod4={}\nparity_ok={}\n", g.n(), g.m(), r.zero_mod4, r.parity_ok);
    s += &format!("bad_cuts={}\nforbidden_configs={}\n", r.bad_cuts.len(), r.forbidden_configs.iter().filter(|w| w.forbidden).count());
    let key = match r.verdict {
        Verdict::Inadmissible(_) => "inadmissible",
        Verdict::Admissible => "admissible",
        Verdict::AdmissibleButObstructed => "obstructed",
    };
    s += &format!("verdict={key}\n");
    Ok(s)
}

#[allow(clippy::too_many_arguments)]
fn embed(
    p: &Path,
    nonori: bool,
    mode: Mode,
    circuit: &str,
    host: Option<&Path>,
    host_emb: Option<&Path>,
    decomposition: Option<&Path>,
    faces: Option<usize>,
) -> Result<(Embedding, Option<ClosedWalk>)> {
    let pg = load_graph(p)?;
    let g = pg.graph();
    let given = if circuit == "auto" { None } else { Some(one_circuit(g, Path::new(circuit))?) };
    if nonori {
        if let Some(dp) = decomposition {
            let c = io::parse_walks(g, &read(dp)?)?;
            let r = nonorientable::complete_relative_one_outer(g, &c, true)?;
            if r.exception {
                eprintln!("note: tree of cycles with its cycles as inner faces; only the planar completion exists");
            }
            return Ok((r.embedding, None));
        }
        if let Some(s) = faces {
            let d = pg.digraph().ok_or_else(|| pre("--faces needs a digraph"))?;
            let e = if s == 1 { nonorientable::one_face_directed(d)? } else { nonorientable::interpolate_faces(d, s, None)? };
            return Ok((e, None));
        }
        let t = match given {
            Some(t) => t,
            None => euler_circuit(g, 0)?,
        };
        return Ok((nonorientable::bieulerian_nonorientable(g, &t)?, Some(t)));
    }
    let d = pg.digraph().ok_or_else(|| pre("orientable builders need a digraph (use `a` records)"))?;
    let zero = d.zero_mod4_vertices();
    let t = match given {
        Some(t) => directed_circuit(d, t)?,
        None if matches!(mode, Mode::BiEulerian) && zero.len() == 2 => interlacing_euler_circuit(d, zero[0], zero[1])?,
        None => euler_circuit_directed(d, 0)?,
    };
    let phi = match mode {
        Mode::MaxGenus => oriented::embed_max_genus(d, &t)?,
        Mode::BiEulerian => match zero.len() {
            0 => oriented::embed_bieulerian_2mod4(d, &t)?,
            2 => oriented::embed_bieulerian_two0mod4(d, &t)?,
            k => return Err(pre(format!("{k} vertices of degree 0 mod 4; use --mode pattern with a host"))),
        },
        Mode::Pattern => {
            let hp = host.ok_or_else(|| pre("--mode pattern needs --pattern-host"))?;
            let h = match load_graph(hp)? {
                ParsedGraph::Directed(h) => h,
                ParsedGraph::Undirected(_) => return Err(pre("pattern host must be a digraph")),
            };
            let he = match host_emb {
                Some(ep) => io::parse_embedding(h.graph(), &read(ep)?)?.embedding(h.graph())?,
                None => oracle::find_directed_bi_eulerian(&h)?.ok_or_else(|| pre("pattern host has no bi-eulerian directed embedding"))?,
            };
            oriented::embed_bieulerian_pattern(d, &t, &h, &he)?
        }
    };
    Ok((phi.into_embedding(), Some(t)))
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Analyze { graph } => emit(&None, &analyze(&graph)?),
        Cmd::Embed { graph, orientable: _, nonorientable, mode, euler_circuit, pattern_host, pattern_embedding, decomposition, faces, output } => {
            let (e, t) = embed(
                &graph,
                nonorientable,
                mode,
                &euler_circuit,
                pattern_host.as_deref(),
                pattern_embedding.as_deref(),
                decomposition.as_deref(),
                faces,
            )?;
            let text = io::write_embedding(&e);
            // independent re-check of what is about to be written
            let pg = load_graph(&graph)?;
            let g = pg.graph();
            let file = io::parse_embedding(g, &text)?;
            let report = io::verify(g, &file, pg.digraph().filter(|_| !nonorientable || faces.is_some()), t.as_ref())?;
            if !report.ok() {
                eprint!("{}", report.render());
                return Err(Error::Verification("builder output failed verification".into()));
            }
            emit(&output, &text)
        }
        Cmd::Verify { graph, embedding, euler_circuit } => {
            let pg = load_graph(&graph)?;
            let g = pg.graph();
            let file = io::parse_embedding(g, &read(&embedding)?)?;
            let t = euler_circuit.map(|p| one_circuit(g, &p)).transpose()?;
            let report = io::verify(g, &file, pg.digraph(), t.as_ref())?;
            print!("{}", report.render());
            if report.ok() {
                Ok(())
            } else {
                Err(Error::Verification(report.failures.join("; ")))
            }
        }
        Cmd::Enumerate { graph, signatures } => {
            let pg = load_graph(&graph)?;
            let cfg = OracleConfig::default();
            let c = match (&pg, signatures) {
                (ParsedGraph::Directed(d), s) => oracle::enumerate_directed_embeddings_with(
                    d,
                    if matches!(s, Sigs::All) { Signatures::All } else { Signatures::AllPositive },
                    &cfg,
                )?,
                (ParsedGraph::Undirected(g), s) => oracle::enumerate_embeddings_with(g, matches!(s, Sigs::Positive), &cfg)?,
            };
            let mut s = format!(
                "total={}\norientable={}\nnonorientable={}\nbi_eulerian_orientable={}\nbi_eulerian_nonorientable={}\n",
                c.total,
                c.orientable.values().sum::<u64>(),
                c.nonorientable.values().sum::<u64>(),
                c.bi_eulerian_orientable,
                c.bi_eulerian_nonorientable
            );
            if let Some(x) = c.min_faces() {
                s += &format!("min_faces={x}\nmax_faces={}\n", c.max_faces().unwrap());
            }
            for (f, k) in &c.orientable {
                s += &format!("orientable faces {f}: {k}\n");
            }
            for (f, k) in &c.nonorientable {
                s += &format!("nonorientable faces {f}: {k}\n");
            }
            emit(&None, &s)
        }
        Cmd::Generate { family, params, output } => {
            let num = |i: usize| -> Result<usize> {
                params.get(i).and_then(|x| x.parse().ok()).ok_or_else(|| Error::Invalid(format!("{family}: missing numeric parameter {}", i + 1)))
            };
            let (g, directed, circuit) = match family.as_str() {
                "ddc" => (generators::ddc(num(0)?)?.into_graph(), true, None),
                "dp" => (generators::dp(num(0)?)?.into_graph(), true, None),
                "dip4" => (generators::dip4().into_graph(), true, Some(generators::dip4_circuit())),
                "fst" => (generators::fst_host(num(0)?, num(1)?)?, false, None),
                "unlaced" => {
                    let (d, t) = generators::unlaced();
                    (d.into_graph(), true, Some(t))
                }
                "tree-of-cycles" => {
                    let lens = params
                        .iter()
                        .flat_map(|p| p.split(','))
                        .map(|x| x.parse().map_err(|_| Error::Invalid(format!("bad cycle length {x}"))))
                        .collect::<Result<Vec<usize>>>()?;
                    (generators::tree_of_cycles(&lens)?.0, false, None)
                }
                "join-chain" => (generators::join_chain(num(0)?)?.into_graph(), true, None),
                other => return Err(Error::Invalid(format!("unknown family {other}"))),
            };
            let mut text = io::write_graph(&g, directed);
            if let Some(t) = circuit {
                text += &format!("# {}", io::write_walks(&g, &[t]));
            }
            emit(&output, &text)
        }
        Cmd::Euler { graph, through, interlace, output } => {
            let pg = load_graph(&graph)?;
            let g = pg.graph();
            let t = match pg.digraph() {
                Some(d) if interlace.len() == 2 => interlacing_euler_circuit(d, vertex(g, &interlace[0])?, vertex(g, &interlace[1])?)?,
                Some(d) if !through.is_empty() => {
                    let vs = through.iter().map(|x| vertex(g, x)).collect::<Result<Vec<_>>>()?;
                    euler_circuit_through(d, &vs)?
                }
                Some(d) => euler_circuit_directed(d, 0)?,
                None if interlace.is_empty() && through.is_empty() => euler_circuit(g, 0)?,
                None => return Err(pre("--through/--interlace need a digraph")),
            };
            if !interlace.is_empty() && interlace.len() != 2 {
                return Err(Error::Invalid("--interlace takes exactly two vertices".into()));
            }
            emit(&output, &io::write_walks(g, &[t]))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("emberlin: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
