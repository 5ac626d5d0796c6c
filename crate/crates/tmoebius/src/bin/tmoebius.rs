use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use tmoebius::diagram::{FloorDiagram, HomologyClass, SurfaceKind};
use tmoebius::enumerate::enumerate_diagrams;
use tmoebius::exact::display_rational;
use tmoebius::gen_series::generating_series;
use tmoebius::half_int::HalfInt;
use tmoebius::marking::enumerate_marking_classes;
use tmoebius::multiplicity::{invariant, Convention, Invariant};
use tmoebius::partition::Partition;
use tmoebius::regularity::{
    build_extended, fit_on_ray, minor_analysis, ray_family, ColumnKind, ComponentKind, FitError,
    RayFamily, RAY_FAMILY_NAMES,
};
use tmoebius::verify;

#[derive(Parser)]
#[command(
    name = "tmoebius",
    version,
    about = "Exact curve counts on the two tropical Moebius strips via floor diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate floor diagrams, one JSON object per line
    Diagrams(DiagramsArgs),
    /// List the marking classes of a diagram read from a file
    Markings(MarkingsArgs),
    /// Classical enumerative invariant
    Invariant(InvariantArgs),
    /// Refined invariant: a symmetric Laurent polynomial in q
    Bg(InvariantArgs),
    /// Generating series coefficients in the section-degree variable
    Series(SeriesArgs),
    /// Weighting counts along a ray with an exact quasi-polynomial fit
    Regularity(RegularityArgs),
    /// Run the verification suite and print a pass/fail matrix
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args)]
struct CommonOut {
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: TMOEBIUS_JOBS or all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ClassArgs {
    /// Surface: m0 or m1
    #[arg(long)]
    surface: SurfaceKind,
    /// Genus of the counted curves
    #[arg(long)]
    genus: usize,
    /// Section-degree coordinate a of the class aE+bF, as "3" or "3/2"
    #[arg(long, value_parser = parse_half)]
    a: HalfInt,
    /// Fiber coordinate b; defaults to half the total tangency weight
    #[arg(long, value_parser = parse_half)]
    b: Option<HalfInt>,
    /// Fixed tangency orders, comma separated
    #[arg(long, default_value = "")]
    mu: Partition,
    /// Free tangency orders, comma separated
    #[arg(long, default_value = "")]
    nu: Partition,
}

#[derive(Args)]
struct DiagramsArgs {
    #[command(flatten)]
    class: ClassArgs,
    #[command(flatten)]
    output: CommonOut,
}

#[derive(Args)]
struct MarkingsArgs {
    /// Diagram file: JSON in the schema emitted by `diagrams`
    #[arg(long)]
    diagram: PathBuf,
    /// Fixed tangency orders, comma separated
    #[arg(long, default_value = "")]
    mu: Partition,
    /// Free tangency orders; defaults to the whole profile
    #[arg(long)]
    nu: Option<Partition>,
    #[command(flatten)]
    output: CommonOut,
}

#[derive(Args)]
struct InvariantArgs {
    #[command(flatten)]
    class: ClassArgs,
    /// Multiplicity convention: val or val-1
    #[arg(long, default_value = "val-1", value_parser = parse_convention)]
    convention: Convention,
    #[command(flatten)]
    output: CommonOut,
}

#[derive(Args)]
struct SeriesArgs {
    /// Surface: m0 or m1
    #[arg(long)]
    surface: SurfaceKind,
    /// Genus of the counted curves
    #[arg(long)]
    genus: usize,
    /// Fixed tangency orders, comma separated
    #[arg(long, default_value = "")]
    mu: Partition,
    /// Free tangency orders, comma separated
    #[arg(long, default_value = "")]
    nu: Partition,
    /// Multiplicity convention: val or val-1
    #[arg(long, default_value = "val-1", value_parser = parse_convention)]
    convention: Convention,
    /// Truncation order in the doubled section degree
    #[arg(long, default_value_t = 12)]
    order: usize,
    #[command(flatten)]
    output: CommonOut,
}

#[derive(Args)]
struct RegularityArgs {
    /// Ray family: ground, ground-etage, one-end, or parallel-grounds
    #[arg(long)]
    family: String,
    /// Override the family's surface
    #[arg(long)]
    surface: Option<SurfaceKind>,
    /// Override the ray base point, comma separated end values
    #[arg(long)]
    base: Option<String>,
    /// Override the ray direction, comma separated steps
    #[arg(long)]
    dir: Option<String>,
    /// Number of samples along the ray
    #[arg(long)]
    samples: Option<usize>,
    /// Polynomial degree bound for the fit
    #[arg(long)]
    degree_bound: Option<usize>,
    /// Residue modulus for the split fit
    #[arg(long, default_value_t = 2)]
    modulus: i64,
    /// Analyze the square column selections of the extended matrix
    /// instead of fitting
    #[arg(long)]
    minors: bool,
    #[command(flatten)]
    output: CommonOut,
}

#[derive(Args)]
struct VerifyArgs {
    /// "all" or a comma list of criterion numbers 1-9
    #[arg(long, default_value = "all")]
    suite: String,
    #[command(flatten)]
    output: CommonOut,
}

enum CliError {
    Input(String),
    Verification(String),
}

impl CliError {
    fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

fn parse_half(text: &str) -> Result<HalfInt, String> {
    if text.contains('.') {
        return Err(format!(
            "`{text}`: half-integers are written as fractions like 3/2, not decimals"
        ));
    }
    text.parse::<HalfInt>().map_err(|e| e.to_string())
}

fn parse_convention(text: &str) -> Result<Convention, String> {
    match text {
        "val-1" => Ok(Convention::ValMinusOne),
        "val" => Ok(Convention::Val),
        other => Err(format!("unknown convention `{other}`: expected val or val-1")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(2)
        }
    }
}

fn install_jobs(jobs: Option<usize>) -> Result<(), CliError> {
    let jobs = match jobs {
        Some(n) => n,
        None => std::env::var("TMOEBIUS_JOBS")
            .ok()
            .map(|v| {
                v.parse::<usize>()
                    .map_err(|_| CliError::input(format!("TMOEBIUS_JOBS=`{v}` is not a number")))
            })
            .transpose()?
            .unwrap_or(0),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| CliError::input(format!("worker pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Diagrams(args) => diagrams_cmd(args),
        Command::Markings(args) => markings_cmd(args),
        Command::Invariant(args) => invariant_cmd(args, false),
        Command::Bg(args) => invariant_cmd(args, true),
        Command::Series(args) => series_cmd(args),
        Command::Regularity(args) => regularity_cmd(args),
        Command::Verify(args) => verify_cmd(args),
    }
}

struct CheckedClass {
    surface: SurfaceKind,
    genus: usize,
    class: HomologyClass,
    mu: Partition,
    nu: Partition,
}

fn check_class(args: &ClassArgs) -> Result<CheckedClass, CliError> {
    let profile = args.mu.merge(&args.nu);
    let norm = profile.norm() as i64;
    let b = args.b.unwrap_or_else(|| HalfInt::from_doubled(norm));
    if b.doubled() != norm {
        return Err(CliError::input(format!(
            "the class relation ||mu|| + ||nu|| = 2b fails: tangency weights sum to {norm}, but 2b = {}",
            b.doubled()
        )));
    }
    let two_a = args.a.doubled();
    if two_a < 1 {
        return Err(CliError::input("the section degree a must be positive"));
    }
    let delta = args.surface.delta();
    if (b.doubled() - delta * two_a) % 2 != 0 {
        return Err(CliError::input(format!(
            "the parity relation 2b = delta * 2a (mod 2) fails on {}: 2b = {}, delta * 2a = {}",
            args.surface,
            b.doubled(),
            delta * two_a
        )));
    }
    Ok(CheckedClass {
        surface: args.surface,
        genus: args.genus,
        class: HomologyClass::new(args.a, b),
        mu: args.mu.clone(),
        nu: args.nu.clone(),
    })
}

fn emit(out: &Option<PathBuf>, content: String) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn csv_cell(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn render_rows(format: Format, headers: &[&str], rows: &[Vec<String>]) -> String {
    match format {
        Format::Csv => {
            let mut s = headers.join(",");
            s.push('\n');
            for row in rows {
                s.push_str(
                    &row.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","),
                );
                s.push('\n');
            }
            s
        }
        _ => {
            let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
            for row in rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let mut s = String::new();
            for (i, h) in headers.iter().enumerate() {
                let _ = write!(s, "{:<width$}  ", h, width = widths[i]);
            }
            s.push('\n');
            for row in rows {
                for (i, cell) in row.iter().enumerate() {
                    let _ = write!(s, "{:<width$}  ", cell, width = widths[i]);
                }
                s.push('\n');
            }
            s
        }
    }
}

fn diagrams_cmd(args: DiagramsArgs) -> Result<(), CliError> {
    install_jobs(args.output.jobs)?;
    let checked = check_class(&args.class)?;
    let profile = checked.mu.merge(&checked.nu);
    let diagrams = enumerate_diagrams(checked.surface, checked.genus, checked.class, &profile)
        .map_err(|e| CliError::input(e.to_string()))?;
    let content = match args.output.format {
        Format::Json => {
            let mut s = String::new();
            for d in &diagrams {
                s.push_str(&serde_json::to_string(d).expect("diagram serializes"));
                s.push('\n');
            }
            s
        }
        format => {
            let rows: Vec<Vec<String>> = diagrams
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    vec![
                        i.to_string(),
                        d.genus().to_string(),
                        d.homology_class().to_string(),
                        d.tangency_profile().to_string(),
                        d.floor_count().to_string(),
                        d.joint_count().to_string(),
                        d.edges().len().to_string(),
                        d.ends().len().to_string(),
                    ]
                })
                .collect();
            render_rows(
                format,
                &[
                    "index", "genus", "class", "profile", "floors", "joints", "edges", "ends",
                ],
                &rows,
            )
        }
    };
    emit(&args.output.out, content)
}

fn markings_cmd(args: MarkingsArgs) -> Result<(), CliError> {
    install_jobs(args.output.jobs)?;
    let text = std::fs::read_to_string(&args.diagram)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", args.diagram.display())))?;
    let raw: FloorDiagram = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("diagram file: {e}")))?;
    let diagram = FloorDiagram::new(
        raw.vertices().to_vec(),
        raw.edges().to_vec(),
        raw.ends().to_vec(),
    )
    .map_err(|e| CliError::input(format!("diagram file: {e}")))?;
    let nu = match args.nu {
        Some(nu) => nu,
        None => {
            let profile = diagram.tangency_profile();
            let mut remaining: Vec<u32> = profile.parts().to_vec();
            for &part in args.mu.parts() {
                match remaining.iter().position(|&p| p == part) {
                    Some(i) => {
                        remaining.remove(i);
                    }
                    None => {
                        return Err(CliError::input(format!(
                            "fixed order {part} does not occur in the diagram profile {profile}"
                        )))
                    }
                }
            }
            Partition::new(remaining).map_err(|e| CliError::input(e.to_string()))?
        }
    };
    let classes = enumerate_marking_classes(&diagram, &args.mu, &nu)
        .map_err(|e| CliError::input(e.to_string()))?;
    let content = match args.output.format {
        Format::Json => {
            let mut s = String::new();
            for class in &classes {
                let value = serde_json::json!({
                    "marked": class.marked.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "fixed_ends": class.fixed_ends,
                    "extension_count": class.extension_count,
                    "cycle_components": class.cycle_components,
                });
                s.push_str(&serde_json::to_string(&value).expect("class serializes"));
                s.push('\n');
            }
            s
        }
        format => {
            let rows: Vec<Vec<String>> = classes
                .iter()
                .enumerate()
                .map(|(i, class)| {
                    vec![
                        i.to_string(),
                        class
                            .marked
                            .iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                        class
                            .fixed_ends
                            .iter()
                            .map(|e| e.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                        class.extension_count.to_string(),
                        class.cycle_components.to_string(),
                    ]
                })
                .collect();
            render_rows(
                format,
                &["index", "marked", "fixed_ends", "extensions", "cycles"],
                &rows,
            )
        }
    };
    emit(&args.output.out, content)
}

fn compute_invariant(args: &InvariantArgs) -> Result<Invariant, CliError> {
    let checked = check_class(&args.class)?;
    invariant(
        checked.surface,
        checked.genus,
        checked.class.a,
        &checked.mu,
        &checked.nu,
        args.convention,
    )
    .map_err(|e| CliError::input(e.to_string()))
}

fn convention_name(convention: Convention) -> &'static str {
    match convention {
        Convention::ValMinusOne => "val-1",
        Convention::Val => "val",
    }
}

fn invariant_cmd(args: InvariantArgs, refined: bool) -> Result<(), CliError> {
    install_jobs(args.output.jobs)?;
    let inv = compute_invariant(&args)?;
    let content = match (refined, args.output.format) {
        (false, Format::Json) => {
            let mut s = serde_json::to_string(&inv.to_json()).expect("invariant serializes");
            s.push('\n');
            s
        }
        (false, format) => {
            let row = vec![
                inv.surface.to_string(),
                inv.genus.to_string(),
                inv.class.to_string(),
                inv.fixed.to_string(),
                inv.free.to_string(),
                convention_name(inv.convention).to_string(),
                display_rational(&inv.classical),
                inv.diagram_count.to_string(),
                inv.marking_count.to_string(),
            ];
            render_rows(
                format,
                &[
                    "surface",
                    "genus",
                    "class",
                    "mu",
                    "nu",
                    "convention",
                    "N",
                    "diagrams",
                    "markings",
                ],
                &[row],
            )
        }
        (true, Format::Json) => {
            let value = serde_json::json!({
                "surface": inv.surface.to_string(),
                "genus": inv.genus,
                "class": inv.class.to_string(),
                "mu": inv.fixed.to_string(),
                "nu": inv.free.to_string(),
                "convention": convention_name(inv.convention),
                "coefficients": inv.refined.to_string_map(),
                "at_q_1": display_rational(&inv.refined.eval_at_one()),
                "palindromic": inv.refined.is_palindromic(),
            });
            let mut s = serde_json::to_string(&value).expect("polynomial serializes");
            s.push('\n');
            s
        }
        (true, format) => {
            let rows: Vec<Vec<String>> = inv
                .refined
                .terms()
                .map(|(e, c)| vec![e.to_string(), display_rational(c)])
                .collect();
            render_rows(format, &["q_exponent", "coefficient"], &rows)
        }
    };
    emit(&args.output.out, content)
}

fn series_cmd(args: SeriesArgs) -> Result<(), CliError> {
    install_jobs(args.output.jobs)?;
    let series = generating_series(
        args.surface,
        args.genus,
        &args.mu,
        &args.nu,
        args.convention,
        args.order,
    )
    .map_err(|e| CliError::input(e.to_string()))?;
    let content = match args.output.format {
        Format::Json => {
            let coefficients: Vec<String> =
                (0..=args.order).map(|n| display_rational(&series.coeff(n))).collect();
            let value = serde_json::json!({
                "surface": args.surface.to_string(),
                "genus": args.genus,
                "mu": args.mu.to_string(),
                "nu": args.nu.to_string(),
                "convention": convention_name(args.convention),
                "order": args.order,
                "coefficients": coefficients,
            });
            let mut s = serde_json::to_string(&value).expect("series serializes");
            s.push('\n');
            s
        }
        format => {
            let rows: Vec<Vec<String>> = (0..=args.order)
                .map(|n| vec![n.to_string(), display_rational(&series.coeff(n))])
                .collect();
            render_rows(format, &["2a", "coefficient"], &rows)
        }
    };
    emit(&args.output.out, content)
}

fn parse_vector(text: &str, expected: usize, what: &str) -> Result<Vec<i64>, CliError> {
    let values: Result<Vec<i64>, _> = text.split(',').map(|p| p.trim().parse()).collect();
    let values =
        values.map_err(|_| CliError::input(format!("{what} `{text}` is not a comma list of integers")))?;
    if values.len() != expected {
        return Err(CliError::input(format!(
            "{what} has {} entries, the family has {expected} ends",
            values.len()
        )));
    }
    Ok(values)
}

fn family_degree_bound(name: &str) -> usize {
    match name {
        "ground" => 3,
        "ground-etage" => 5,
        "one-end" => 4,
        _ => 10,
    }
}

fn regularity_cmd(args: RegularityArgs) -> Result<(), CliError> {
    install_jobs(args.output.jobs)?;
    let mut family: RayFamily = ray_family(&args.family).ok_or_else(|| {
        CliError::input(format!(
            "unknown family `{}`: expected one of {}",
            args.family,
            RAY_FAMILY_NAMES.join(", ")
        ))
    })?;
    if let Some(surface) = args.surface {
        family.surface = surface;
    }
    let ends = family.shape.ends.len();
    if let Some(base) = &args.base {
        family.base = parse_vector(base, ends, "--base")?;
    }
    if let Some(dir) = &args.dir {
        family.direction = parse_vector(dir, ends, "--dir")?;
    }

    if args.minors {
        return minors_output(&args, &family);
    }

    if args.modulus < 1 {
        return Err(CliError::input("--modulus must be at least 1"));
    }
    let degree_bound = args.degree_bound.unwrap_or_else(|| family_degree_bound(family.name));
    let samples = args
        .samples
        .unwrap_or((degree_bound + 2) * args.modulus as usize + 4);
    let ts: Vec<i64> = (0..samples as i64).collect();
    let values = family.sample(&ts);
    let fit = fit_on_ray(&ts, &values, degree_bound, args.modulus).map_err(|e| match e {
        FitError::TooFewSamples { .. } => CliError::Input(e.to_string()),
        FitError::NotQuasiPolynomial { .. } => CliError::Verification(e.to_string()),
    })?;

    let content = match args.output.format {
        Format::Json => {
            let strings = |coefficients: &[tmoebius::exact::BigRational]| {
                coefficients.iter().map(display_rational).collect::<Vec<_>>()
            };
            let value = serde_json::json!({
                "family": family.name,
                "surface": family.surface.to_string(),
                "chamber_ray": {
                    "base": family.base,
                    "direction": family.direction,
                },
                "degree_bound": fit.degree_bound,
                "modulus": fit.modulus,
                "points_checked": fit.points_checked,
                "single": fit.single.as_deref().map(strings),
                "residue_classes": fit.classes.iter().map(|class| serde_json::json!({
                    "residue": class.residue,
                    "modulus": fit.modulus,
                    "coefficients": strings(&class.coefficients),
                })).collect::<Vec<_>>(),
                "residual": "0",
            });
            let mut s = serde_json::to_string(&value).expect("certificate serializes");
            s.push('\n');
            s
        }
        format => {
            let mut headers = vec!["t".to_string()];
            headers.extend((0..ends).map(|i| format!("entry_{i}")));
            headers.push("count".to_string());
            let header_refs: Vec<&str> = headers.iter().map(|h| h.as_str()).collect();
            let rows: Vec<Vec<String>> = ts
                .iter()
                .zip(&values)
                .map(|(&t, v)| {
                    let mut row = vec![t.to_string()];
                    row.extend(family.entries_at(t).iter().map(|e| e.to_string()));
                    row.push(display_rational(v));
                    row
                })
                .collect();
            let mut s = render_rows(format, &header_refs, &rows);
            if format == Format::Table {
                match &fit.single {
                    Some(poly) => {
                        let _ = writeln!(
                            s,
                            "single polynomial, ascending coefficients: {}",
                            poly.iter().map(display_rational).collect::<Vec<_>>().join(", ")
                        );
                    }
                    None => {
                        for class in &fit.classes {
                            let _ = writeln!(
                                s,
                                "t = {} (mod {}): {}",
                                class.residue,
                                fit.modulus,
                                class
                                    .coefficients
                                    .iter()
                                    .map(display_rational)
                                    .collect::<Vec<_>>()
                                    .join(", ")
                            );
                        }
                    }
                }
            }
            s
        }
    };
    emit(&args.output.out, content)
}

fn minors_output(args: &RegularityArgs, family: &RayFamily) -> Result<(), CliError> {
    let eg = build_extended(&family.shape);
    let reports = minor_analysis(&eg);
    let describe = |kind: &ComponentKind| match kind {
        ComponentKind::GroundEdgeTree => "ground-edge tree".to_string(),
        ComponentKind::JointCycle { joints } => format!("cycle with {joints} joints"),
        ComponentKind::Irregular => "irregular".to_string(),
    };
    let label = |&index: &usize| match eg.columns[index] {
        ColumnKind::Interior(e) => format!("interior_{e}"),
        ColumnKind::EndEdge(e) => format!("end_{e}"),
        ColumnKind::GroundEdge(g) => format!("ground_{g}"),
    };
    let content = match args.output.format {
        Format::Json => {
            let mut s = String::new();
            for r in &reports {
                let value = serde_json::json!({
                    "columns": r.columns.iter().map(label).collect::<Vec<_>>(),
                    "determinant": r.determinant.to_string(),
                    "components": r.components.iter().map(|c| describe(&c.kind)).collect::<Vec<_>>(),
                    "classification_ok": r.classification_ok,
                    "torsion": r.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    "torsion_matches": r.torsion_matches,
                });
                s.push_str(&serde_json::to_string(&value).expect("report serializes"));
                s.push('\n');
            }
            s
        }
        format => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.columns.iter().map(label).collect::<Vec<_>>().join(" "),
                        r.determinant.to_string(),
                        r.components.iter().map(|c| describe(&c.kind)).collect::<Vec<_>>().join("; "),
                        r.torsion
                            .iter()
                            .map(|t| t.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                        r.torsion_matches.to_string(),
                    ]
                })
                .collect();
            render_rows(
                format,
                &["columns", "det", "components", "torsion", "torsion_ok"],
                &rows,
            )
        }
    };
    emit(&args.output.out, content)
}

fn verify_cmd(args: VerifyArgs) -> Result<(), CliError> {
    install_jobs(args.output.jobs)?;
    let indices: Vec<usize> = if args.suite == "all" {
        (1..=verify::CRITERION_COUNT).collect()
    } else {
        args.suite
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| (1..=verify::CRITERION_COUNT).contains(&i))
                    .ok_or_else(|| {
                        CliError::input(format!(
                            "--suite wants `all` or numbers 1-{}, got `{p}`",
                            verify::CRITERION_COUNT
                        ))
                    })
            })
            .collect::<Result<_, _>>()?
    };
    let reports = verify::run_suite(&indices);
    let content = match args.output.format {
        Format::Json => {
            let value: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "index": r.index,
                        "name": r.name,
                        "passed": r.passed,
                        "seconds": r.seconds,
                        "details": r.details,
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
            s.push('\n');
            s
        }
        _ => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(s, "{r}");
                for line in &r.details {
                    let _ = writeln!(s, "    {line}");
                }
            }
            s
        }
    };
    emit(&args.output.out, content)?;
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        let failed: Vec<String> = reports
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.index.to_string())
            .collect();
        Err(CliError::Verification(format!(
            "criteria failed: {}",
            failed.join(", ")
        )))
    }
}
