use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chisynth::building::{
    bfs_explore, export_graph, graph_distance, ExportFormat, Vertex, VertexKind,
};
use chisynth::f3::{dual_subspace, isotropic_lines, self_dual_planes, F3Matrix, F3Subspace};
use chisynth::gates::{eval_word, Gate, UnitaryMatrix};
use chisynth::metric::tilde_d;
use chisynth::monomial::{build_monomial_word_table, enumerate_monomials};
use chisynth::synthesis::{exact_synthesize, orbit_stabilizer_of_h_vertex, random_unitary};
use chisynth::wire::{format_word_file, parse_word_file, MatrixDocument, WordHeader};
use chisynth::Error;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "chisynth",
    version,
    about = "Exact synthesis of qutrit Clifford+R circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a gate word for a unitary matrix document.
    Synth {
        #[arg(long = "in")]
        input: PathBuf,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exit 0 iff the word evaluates exactly to the matrix.
    Verify {
        #[arg(long)]
        word: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Export the ball of the given radius around the origin vertex.
    Explore {
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "CHISYNTH_MAX_DEPTH", default_value_t = 8)]
        max_depth: usize,
    },
    /// Run the brute-force consistency checks and print measured counts.
    Selftest,
    /// Write a random word and its matrix document.
    Random {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Matrix document path; the word goes next to it with a `.word` extension.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

/// Failures carrying their exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotUnitary | Error::NotInRing => 2,
            Error::Parse(_) => 3,
            Error::DescentStuck(_) => 4,
            Error::BoundExceeded(_) => 5,
            _ => 6,
        };
        Failure(code, e.to_string())
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure(3, format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn synth(input: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let doc = MatrixDocument::parse(&read(input)?)?;
    let u = UnitaryMatrix::new(doc.to_matrix()?)?;
    let r = exact_synthesize(&u)?;
    let header = WordHeader {
        sde: Some(u.sde()),
        steps: Some(r.steps),
    };
    emit(out, &format_word_file(&r.word, &header))?;
    eprintln!(
        "length {}, steps {}, l decrements {:?}",
        r.word.len(),
        r.steps,
        r.decrements()
    );
    Ok(())
}

fn verify(word: &Path, input: &Path) -> Result<bool, Failure> {
    let w = parse_word_file(&read(word)?)?;
    let m = MatrixDocument::parse(&read(input)?)?.to_matrix()?;
    Ok(*eval_word(&w).matrix() == m)
}

fn explore(
    depth: usize,
    format: Format,
    out: Option<&Path>,
    max_depth: usize,
) -> Result<(), Failure> {
    if depth > max_depth {
        return Err(Error::BoundExceeded(max_depth).into());
    }
    let g = bfs_explore(&Vertex::origin(), depth)?;
    let format = match format {
        Format::Dot => ExportFormat::Dot,
        Format::Json => ExportFormat::Json,
    };
    emit(out, &export_graph(&g, format))?;
    eprintln!(
        "{} vertices ({} pure, {} alternating), spheres {:?}",
        g.vertices.len(),
        g.count_kind(VertexKind::Pure),
        g.count_kind(VertexKind::Alternating),
        g.sphere_sizes()
    );
    Ok(())
}

fn random(length: usize, seed: u64, out: &Path) -> Result<(), Failure> {
    let (w, u) = random_unitary(length, seed);
    let doc = MatrixDocument::from_matrix(
        u.matrix(),
        Some(format!("random word, length {length}, seed {seed}")),
    );
    fs::write(out, doc.to_json()).map_err(|e| io_failure(out, e))?;
    let word_path = out.with_extension("word");
    let header = WordHeader {
        sde: Some(u.sde()),
        steps: None,
    };
    fs::write(&word_path, format_word_file(&w, &header)).map_err(|e| io_failure(&word_path, e))?;
    Ok(())
}

fn check(ok: bool, what: &str) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure(6, format!("inconsistent: {what}")))
    }
}

fn selftest() -> Result<(), Failure> {
    let mut forms = 0;
    let mut line_counts = BTreeSet::new();
    for a in F3Matrix::all().filter(|a| a.is_symmetric() && a.det() != 0) {
        forms += 1;
        let lines = isotropic_lines(&a)?;
        check(
            lines.iter().all(|l| a.form(&l.rep(), &l.rep()) == 0),
            "isotropic line with nonzero self-pairing",
        )?;
        line_counts.insert(lines.len());
    }
    check(
        line_counts.len() == 1,
        "isotropic line count varies between forms",
    )?;
    let isotropic = *line_counts.first().expect("forms exist");

    let mut plane_counts = BTreeSet::new();
    for (x, y) in [
        (0, 1),
        (0, 2),
        (1, 0),
        (1, 1),
        (1, 2),
        (2, 0),
        (2, 1),
        (2, 2),
    ] {
        let a = F3Matrix::new([[0, x, y], [-x, 0, 0], [-y, 0, 0]]);
        let planes = self_dual_planes(&a)?;
        check(
            planes
                .iter()
                .all(|p| dual_subspace(&a, &F3Subspace::Plane(*p)) == F3Subspace::Plane(*p)),
            "plane reported self-dual is not",
        )?;
        plane_counts.insert(planes.len());
    }

    let all = enumerate_monomials();
    let table = build_monomial_word_table()?;
    check(
        table.iter().all(|(m, w)| w.eval() == m.to_unitary()),
        "monomial word table",
    )?;

    let orbit = orbit_stabilizer_of_h_vertex()?;

    let g = bfs_explore(&Vertex::origin(), 4)?;
    check(
        g.is_tree() && g.is_bipartite(),
        "depth-4 ball is not a bipartite tree",
    )?;
    let deg = g.degrees();
    let interior = |kind| -> BTreeSet<usize> {
        g.vertices
            .iter()
            .zip(&deg)
            .filter(|(v, _)| v.depth < 4 && v.vertex.kind() == kind)
            .map(|(_, &d)| d)
            .collect()
    };
    let (pure_deg, alt_deg) = (
        interior(VertexKind::Pure),
        interior(VertexKind::Alternating),
    );

    let h = Gate::H.matrix().to_field();
    let h_metric = tilde_d(&UnitaryMatrix::identity().to_field(), &h)?;
    let h_graph = graph_distance(&Vertex::origin(), &Vertex::from_matrix(&h)?, 12)?;
    check(
        h_metric as usize == h_graph,
        "metric and graph distance disagree for H",
    )?;

    println!("monomial group order: {}", all.len());
    println!("isotropic lines per symmetric form: {isotropic}");
    println!("symmetric invertible forms checked: {forms}");
    println!(
        "orbit x stabilizer: {} x {} = {}",
        orbit.orbit_size, orbit.stabilizer_order, orbit.product
    );
    println!();
    println!("{:<38} {:>10} {:>8}", "quantity", "measured", "claimed");
    let row = |name: &str, measured: String, claimed: &str| {
        println!("{name:<38} {measured:>10} {claimed:>8}")
    };
    row("monomial group order", all.len().to_string(), "1296");
    row("orbit of H vertex", orbit.orbit_size.to_string(), "12");
    row(
        "stabilizer of H vertex",
        orbit.stabilizer_order.to_string(),
        "108",
    );
    row("pure vertex degree", fmt_set(&pure_deg), "4");
    row("alternating vertex degree", fmt_set(&alt_deg), "2");
    row(
        "self-dual planes per alternating form",
        fmt_set(&plane_counts),
        "2",
    );
    row("distance from origin to H vertex", h_graph.to_string(), "4");
    check(
        orbit.product == 1296 && all.len() == 1296,
        "orbit-stabilizer product",
    )?;
    Ok(())
}

fn fmt_set(s: &BTreeSet<usize>) -> String {
    s.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("/")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth { input, out } => synth(&input, out.as_deref()),
        Command::Verify { word, input } => match verify(&word, &input) {
            Ok(true) => Ok(()),
            Ok(false) => {
                eprintln!("word does not evaluate to the matrix");
                return ExitCode::from(1);
            }
            Err(f) => Err(f),
        },
        Command::Explore {
            depth,
            format,
            out,
            max_depth,
        } => explore(depth, format, out.as_deref(), max_depth),
        Command::Selftest => selftest(),
        Command::Random { length, seed, out } => random(length, seed, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
