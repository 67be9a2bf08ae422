use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use masscalc::affine::Point;
use masscalc::demos::{self, random_triangle, Report, Triangle};
use masscalc::document::{run_document, DocumentError, EXIT_ALGEBRA, EXIT_PARSE};
use masscalc::field::Field;
use masscalc::quadratic::BilinearForm;
use masscalc::svg::{triangle_figure, TriangleFigure};
use masscalc::Error;

#[derive(Parser)]
#[command(name = "masscalc", version, about = "Exact center-of-mass calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a JSON query document and print the reports.
    Run {
        file: PathBuf,
        /// rational, fp:<p>, float or float:<eps>; overrides the document
        #[arg(long)]
        field: Option<Field>,
        /// Write a figure of the first triangle demo
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run a triangle theorem on one given or several random triangles.
    Demo {
        #[arg(value_enum)]
        kind: DemoKind,
        /// Vertices as "x,y;x,y;x,y"
        #[arg(long, allow_hyphen_values = true, conflicts_with = "seed")]
        triangle: Option<String>,
        /// Seed for random triangles with integer coordinates in [-100, 100]
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random triangles
        #[arg(long, default_value_t = 1, requires = "seed")]
        count: usize,
        #[arg(long, default_value = "rational")]
        field: Field,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoKind {
    Medians,
    Orthocenter,
    Euler,
}

impl DemoKind {
    fn figure(self) -> TriangleFigure {
        match self {
            DemoKind::Medians => TriangleFigure::Medians,
            DemoKind::Orthocenter => TriangleFigure::Orthocenter,
            DemoKind::Euler => TriangleFigure::Euler,
        }
    }
}

enum Failure {
    Usage(String),
    Algebra(Error),
    Document(DocumentError),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => EXIT_PARSE as u8,
            Failure::Algebra(Error::ParseElement { .. }) => EXIT_PARSE as u8,
            Failure::Algebra(_) => EXIT_ALGEBRA as u8,
            Failure::Document(e) => e.exit_code() as u8,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Algebra(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Io(m) => f.write_str(m),
            Failure::Algebra(e) => write!(f, "{e}"),
            Failure::Document(e) => write!(f, "{e}"),
        }
    }
}

fn write_svg(path: &Path, svg: &str) -> Result<(), Failure> {
    std::fs::write(path, svg).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse_triangle(field: Field, text: &str) -> Result<Triangle, Failure> {
    let vertices = text
        .split(';')
        .map(|v| {
            let coords = v
                .split(',')
                .map(|x| field.parse(x.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Point::new(field, coords)?)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let [a, b, c]: [Point; 3] = vertices
        .try_into()
        .map_err(|_| Failure::Usage(format!("expected three vertices in {text:?}")))?;
    for p in [&a, &b, &c] {
        if p.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: p.dim(),
            }
            .into());
        }
    }
    Ok(Triangle::new(a, b, c)?)
}

fn run(file: &Path, field: Option<Field>, svg: Option<&Path>) -> Result<bool, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Io(format!("{}: {e}", file.display())))?;
    let out = run_document(&text, field).map_err(Failure::Document)?;
    println!("{}", out.to_json());
    if let (Some(path), Some(fig)) = (svg, out.figure()) {
        write_svg(path, &fig.render())?;
    }
    Ok(out.passed)
}

fn demo(
    kind: DemoKind,
    triangles: Vec<Triangle>,
    field: Field,
    svg: Option<&Path>,
) -> Result<bool, Failure> {
    let form = BilinearForm::standard(field, 2)?;
    let reports = triangles
        .iter()
        .map(|t| match kind {
            DemoKind::Medians => demos::medians_demo(t),
            DemoKind::Orthocenter => demos::orthocenter_demo(t, &form),
            DemoKind::Euler => demos::euler_demo(t, &form),
        })
        .collect::<Result<Vec<Report>, _>>()?;
    let passed = reports.iter().all(Report::passed);
    let out = json!({ "field": field.to_string(), "reports": reports, "passed": passed });
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("reports serialize")
    );
    if let (Some(path), Some(t)) = (svg, triangles.first()) {
        write_svg(path, &triangle_figure(t, &form, kind.figure())?.render())?;
    }
    Ok(passed)
}

fn execute(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Run { file, field, svg } => run(&file, field, svg.as_deref()),
        Command::Demo {
            kind,
            triangle,
            seed,
            count,
            field,
            svg,
        } => {
            if field.characteristic() == 2 {
                return Err(Error::UnsupportedCharacteristic(2).into());
            }
            let triangles = match (triangle, seed) {
                (Some(text), _) => vec![parse_triangle(field, &text)?],
                (None, Some(seed)) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..count)
                        .map(|_| random_triangle(field, &mut rng))
                        .collect()
                }
                (None, None) => vec![Triangle::from_i64(field, [[3, 4], [5, 0], [-5, 0]])?],
            };
            demo(kind, triangles, field, svg.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_PARSE as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("masscalc: {f}");
            ExitCode::from(f.code())
        }
    }
}
