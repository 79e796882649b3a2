//! The `circlegraph` command line.
//!
//! Exit codes: 0 for success or an affirmative answer, 1 for a well-formed
//! negative answer, 2 for bad input or usage, 3 when the two recognizers
//! disagree.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::circle_aut::{
    boundary_cliques, class_preserving_automorphisms, edge_classes, format_cycles, lift_automorphism, parse_cycles,
    Lift,
};
use crate::diagram::{ChordDiagram, IntersectionMode};
use crate::error::Error;
use crate::graph::{Graph, VertexSet};
use crate::rado::{bit_graph, bit_witness, check_extension, extension_witness, locomp_witness_sets};
use crate::recognition::{
    has_vertex_minor, is_circle_graph, realize_brute_force, vertex_minor_closure, Method,
    ObstructionKind,
};
use crate::word::DoWord;
use crate::{selftest, svg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "circlegraph", version, about = "Chord diagrams, circle graphs and vertex minors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Closed,
    Crossing,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Brute,
    Obstruction,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection graph of a diagram
    Ig {
        #[arg(long, value_enum, default_value = "closed")]
        mode: ModeArg,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Local complementation of a graph at a vertex
    Locomp {
        #[arg(long)]
        vertex: String,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Reflect the interval spanned by a chord
    Flip {
        #[arg(long)]
        chord: String,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Blow up shared endpoints into a generic diagram
    Blowup {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Diagram with evenly spaced endpoints realizing a word
    Embed {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Re-place endpoints one chord at a time by dense insertion
    Reembed {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Double occurrence word of a generic diagram
    Word {
        #[arg(long)]
        canonical: bool,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Search for a word whose interlacement graph is the input
    Realize {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Decide whether a graph is a circle graph
    CheckCircle {
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Canonical forms of all vertex minors
    Vminors {
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Look for a given vertex minor: W5, W7, BW3 or `n:u-v,...`
    HasVminor {
        #[arg(long)]
        minor: String,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Automorphisms in cycle notation
    Auts {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Boundary cliques, edge classes and class-preserving automorphisms
    Classes {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Lift an automorphism of the closed intersection graph to the endpoints
    Lift {
        #[arg(long)]
        perm: String,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Extension witness: in the BIT graph, or in the input graph if given
    RadoWitness {
        #[arg(long, default_value = "")]
        u: String,
        #[arg(long, default_value = "")]
        w: String,
        input: Option<String>,
    },
    /// Transported witness sets for local complementation at a vertex
    LocompWitnessSets {
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value = "")]
        u: String,
        #[arg(long, default_value = "")]
        w: String,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Check the extension property over a ground set
    CheckExtension {
        #[arg(long)]
        ground: String,
        /// Use the BIT graph on this many vertices instead of an input file
        #[arg(long, conflicts_with = "input")]
        bit: Option<usize>,
        input: Option<String>,
    },
    /// Draw a diagram as SVG
    Render {
        #[arg(short, long)]
        output: Option<String>,
        #[arg(default_value = "-")]
        input: String,
    },
    /// List the circle-graph obstructions or print one
    Obstructions { name: Option<String> },
    /// Run the built-in acceptance checks
    Selftest {
        #[arg(long)]
        only: Option<usize>,
    },
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MethodDisagreement { .. } => EXIT_DISAGREEMENT,
            _ => EXIT_USAGE,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, msg: msg.into() }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: String,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
        }
    }
}

/// Runs the command line `args` (program name first). Results go to `out`,
/// diagnostics to `err`; returns the exit code.
pub fn run(args: &[String], stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut io = Io { stdin, out: String::new(), err };
    let result = dispatch(cli.command, &mut io);
    if result.is_ok() {
        let _ = out.write_all(io.out.as_bytes());
        let _ = out.flush();
    }
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.err, "error: {}", f.msg);
            f.code
        }
    }
}

fn read_diagram(io: &mut Io, path: &str) -> Result<ChordDiagram, Failure> {
    Ok(ChordDiagram::parse(&io.read(path)?)?)
}

/// Graph text, or a diagram whose closed intersection graph is taken with
/// chord names as labels.
fn read_graph(io: &mut Io, path: &str) -> Result<Graph, Failure> {
    let text = io.read(path)?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("chord") {
        Ok(ChordDiagram::parse(&text)?.intersection_graph(IntersectionMode::Closed))
    } else {
        Ok(Graph::parse(&text)?)
    }
}

fn vertex(g: &Graph, s: &str) -> Result<usize, Failure> {
    if let Some(v) = g.index_of(s) {
        return Ok(v);
    }
    let v: usize = s.parse().map_err(|_| Failure::from(Error::UnknownName(s.to_string())))?;
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() }.into());
    }
    Ok(v)
}

fn vertex_set(s: &str) -> Result<VertexSet, Failure> {
    VertexSet::parse_list(s).map_err(usage)
}

fn labels(g: &Graph) -> Vec<String> {
    (0..g.n()).map(|v| g.label(v)).collect()
}

/// `W5`, `W7`, `BW3`, or `n:u-v,u-v,...`.
fn parse_minor(s: &str) -> Result<Graph, Failure> {
    if let Some(kind) = ObstructionKind::from_name(s) {
        return Ok(kind.graph());
    }
    let bad = || usage(format!("invalid minor `{s}`: expected W5, W7, BW3 or n:u-v,..."));
    let (n, edges) = s.split_once(':').ok_or_else(bad)?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    let mut list = Vec::new();
    for e in edges.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (u, v) = e.split_once('-').ok_or_else(bad)?;
        let u: usize = u.trim().parse().map_err(|_| bad())?;
        let v: usize = v.trim().parse().map_err(|_| bad())?;
        if u == v {
            return Err(bad());
        }
        list.push((u, v));
    }
    Ok(Graph::from_edges(n, &list)?)
}

fn dispatch(cmd: Command, io: &mut Io) -> Result<i32, Failure> {
    match cmd {
        Command::Ig { mode, input } => {
            let d = read_diagram(io, &input)?;
            let mode = match mode {
                ModeArg::Closed => IntersectionMode::Closed,
                ModeArg::Crossing => IntersectionMode::CrossingOnly,
            };
            io.out.push_str(&d.intersection_graph(mode).to_text());
        }
        Command::Locomp { vertex: v, input } => {
            let g = read_graph(io, &input)?;
            let v = vertex(&g, &v)?;
            io.out.push_str(&g.local_complement(v)?.to_text());
        }
        Command::Flip { chord, input } => {
            let d = read_diagram(io, &input)?;
            io.out.push_str(&d.flip_interval(&chord)?.to_text());
        }
        Command::Blowup { input } => {
            let d = read_diagram(io, &input)?;
            io.out.push_str(&d.blow_up().to_text());
        }
        Command::Embed { input } => {
            let w = DoWord::parse(&io.read(&input)?)?;
            io.out.push_str(&ChordDiagram::embed_word(&w).to_text());
        }
        Command::Reembed { input } => {
            let d = read_diagram(io, &input)?;
            io.out.push_str(&d.reembed_incremental().to_text());
        }
        Command::Word { canonical, input } => {
            let w = read_diagram(io, &input)?.to_word()?;
            let w = if canonical { w.canonical() } else { w };
            let _ = writeln!(io.out, "{w}");
        }
        Command::Realize { input } => {
            let g = read_graph(io, &input)?;
            match realize_brute_force(&g)? {
                Some(w) => {
                    let _ = writeln!(io.out, "{w}");
                }
                None => {
                    io.out.push_str("NOT_CIRCLE\n");
                    return Ok(EXIT_NEGATIVE);
                }
            }
        }
        Command::CheckCircle { method, input } => {
            let g = read_graph(io, &input)?;
            let method = match method {
                MethodArg::Brute => Method::Brute,
                MethodArg::Obstruction => Method::Obstruction,
                MethodArg::Both => Method::Both,
            };
            let verdict = is_circle_graph(&g, method)?;
            if verdict.is_circle {
                io.out.push_str("CIRCLE\n");
                if let Some(w) = &verdict.witness {
                    let _ = writeln!(io.out, "word {w}");
                }
            } else {
                io.out.push_str("NOT_CIRCLE\n");
                if let Some((kind, trace)) = &verdict.obstruction {
                    let _ = writeln!(io.out, "obstruction {kind}");
                    let _ = writeln!(io.out, "steps {}", trace.steps.len());
                    io.out.push_str(&trace.to_text(&g));
                }
                return Ok(EXIT_NEGATIVE);
            }
        }
        Command::Vminors { max_n, input } => {
            let g = read_graph(io, &input)?;
            for form in vertex_minor_closure(&g, max_n.unwrap_or(g.n()))? {
                let _ = writeln!(io.out, "{}", form.to_hex());
            }
        }
        Command::HasVminor { minor, input } => {
            let h = parse_minor(&minor)?;
            let g = read_graph(io, &input)?;
            match has_vertex_minor(&g, &h)? {
                Some(trace) => {
                    io.out.push_str("VERTEX_MINOR\n");
                    let _ = writeln!(io.out, "steps {}", trace.steps.len());
                    io.out.push_str(&trace.to_text(&g));
                }
                None => {
                    io.out.push_str("NO_VERTEX_MINOR\n");
                    return Ok(EXIT_NEGATIVE);
                }
            }
        }
        Command::Auts { input } => {
            let g = read_graph(io, &input)?;
            let names = labels(&g);
            for h in g.automorphisms()? {
                let _ = writeln!(io.out, "{}", format_cycles(&h, &names));
            }
        }
        Command::Classes { input } => {
            let d = read_diagram(io, &input)?;
            let names = d.names();
            for (p, set) in boundary_cliques(&d).iter() {
                let members: Vec<&str> = set.iter().map(|&i| names[i].as_str()).collect();
                let _ = writeln!(io.out, "point {p} {}", members.join(" "));
            }
            let classes = edge_classes(&d);
            for (kind, edges) in [("incident", &classes.incident), ("crossing", &classes.crossing)] {
                for &(u, v) in edges {
                    let _ = writeln!(io.out, "{kind} {} {}", names[u], names[v]);
                }
            }
            for h in class_preserving_automorphisms(&d)? {
                let _ = writeln!(io.out, "preserving {}", format_cycles(&h, &names));
            }
        }
        Command::Lift { perm, input } => {
            let d = read_diagram(io, &input)?;
            let h = parse_cycles(&perm, &d.names())?;
            match lift_automorphism(&d, &h)? {
                Lift::Lifted(map) => {
                    io.out.push_str("LIFT\n");
                    io.out.push_str(&map.to_text());
                }
                Lift::Absent(why) => {
                    io.out.push_str("NO_LIFT\n");
                    let _ = writeln!(io.out, "witness: {}", why.describe(&d));
                    return Ok(EXIT_NEGATIVE);
                }
            }
        }
        Command::RadoWitness { u, w, input } => {
            let (u, w) = (vertex_set(&u)?, vertex_set(&w)?);
            match input {
                None => {
                    let us: Vec<u64> = u.iter().map(|x| x as u64).collect();
                    let ws: Vec<u64> = w.iter().map(|x| x as u64).collect();
                    let _ = writeln!(io.out, "{}", bit_witness(&us, &ws)?);
                }
                Some(path) => {
                    let g = read_graph(io, &path)?;
                    match extension_witness(&g, u, w)? {
                        Some(x) => {
                            let _ = writeln!(io.out, "{}", g.label(x));
                        }
                        None => {
                            io.out.push_str("none\n");
                            return Ok(EXIT_NEGATIVE);
                        }
                    }
                }
            }
        }
        Command::LocompWitnessSets { vertex: v, u, w, input } => {
            let g = read_graph(io, &input)?;
            let v = vertex(&g, &v)?;
            let (u2, w2) = locomp_witness_sets(&g, v, vertex_set(&u)?, vertex_set(&w)?)?;
            let _ = writeln!(io.out, "U'={{{u2}}}");
            let _ = writeln!(io.out, "W'={{{w2}}}");
        }
        Command::CheckExtension { ground, bit, input } => {
            let g = match (bit, input) {
                (Some(n), _) => bit_graph(n)?,
                (None, Some(path)) => read_graph(io, &path)?,
                (None, None) => read_graph(io, "-")?,
            };
            let report = check_extension(&g, vertex_set(&ground)?)?;
            io.out.push_str(&report.to_text());
            if !report.passed() {
                return Ok(EXIT_NEGATIVE);
            }
        }
        Command::Render { output, input } => {
            let svg = svg::render(&read_diagram(io, &input)?);
            match output {
                Some(path) => std::fs::write(&path, svg).map_err(|e| usage(format!("{path}: {e}")))?,
                None => io.out.push_str(&svg),
            }
        }
        Command::Obstructions { name } => match name {
            None => {
                for kind in ObstructionKind::ALL {
                    let g = kind.graph();
                    let _ = writeln!(io.out, "{kind} vertices {} edges {}", g.n(), g.edge_count());
                }
            }
            Some(name) => {
                let kind = ObstructionKind::from_name(&name)
                    .ok_or_else(|| usage(format!("unknown obstruction `{name}`; expected W5, W7 or BW3")))?;
                io.out.push_str(&kind.graph().to_text());
            }
        },
        Command::Selftest { only } => {
            let ids: Vec<usize> = match only {
                Some(id) if selftest::CRITERIA.iter().any(|c| c.id == id) => vec![id],
                Some(id) => return Err(usage(format!("no criterion {id}"))),
                None => selftest::CRITERIA.iter().map(|c| c.id).collect(),
            };
            let mut all = true;
            for id in ids {
                let start = Instant::now();
                let r = selftest::run_criterion(id);
                let elapsed = start.elapsed();
                let _ = writeln!(io.out, "{}", r.line());
                let _ = writeln!(io.err, "criterion {id}: {:.3} s (budget {} s)", elapsed.as_secs_f64(), r.budget.as_secs());
                all &= r.passed;
            }
            io.out.push_str(if all { "PASS\n" } else { "FAIL\n" });
            if !all {
                return Ok(EXIT_NEGATIVE);
            }
        }
    }
    Ok(EXIT_OK)
}
