use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lsc_core::arrangement::{Arrangement, Instance};
use lsc_core::cover::{AllowedMode, CoverError, TargetMode};
use lsc_core::gadget::{build_gadget, random_max_deg3};
use lsc_core::generate::{grid, random_instance, triple_tight, Shape};
use lsc_core::io::{emit_graph, emit_instance, emit_roles, emit_solution, parse_graph, parse_instance, parse_solution};
use lsc_core::pipeline::{cover_instance, solve_instance, Outcome, PipelineError, SolveRequest, SolverKind};
use lsc_core::solvers::fpt::{kernelize_sets, KernelVerdict, ReductionMode};
use lsc_core::verify::{check_euler, check_kernel_equiv, check_triple_bound, CheckReport};

#[derive(Parser)]
#[command(name = "lsc", version, about = "Line segment covering over exact planar arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an instance file.
    Validate { path: PathBuf },
    /// Build the arrangement and list its cells.
    Build {
        path: PathBuf,
        /// Also list every cell with its covering segments.
        #[arg(long)]
        cells: bool,
    },
    /// Solve one instance and print a report.
    Solve {
        path: PathBuf,
        #[command(flatten)]
        opts: SolveOpts,
        /// Write the solution here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the kernelization rules and print the trace.
    Kernelize {
        path: PathBuf,
        #[arg(short, long)]
        k: usize,
        #[command(flatten)]
        modes: ModeOpts,
        /// Scan each rule once instead of until nothing changes.
        #[arg(long)]
        single_pass: bool,
    },
    /// Generate an instance or graph.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run a self-check on an instance.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum)]
        check: Check,
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        #[command(flatten)]
        modes: ModeOpts,
    },
    /// Draw the arrangement (and optionally a solution) as SVG.
    Render {
        path: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve many instances in parallel; writes `<name>.sol` and `<name>.report`.
    Batch {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out_dir: PathBuf,
        #[command(flatten)]
        opts: SolveOpts,
    },
}

#[derive(Args, Clone)]
struct ModeOpts {
    /// Cells to cover: all, bounded or rect.
    #[arg(long, default_value = "all")]
    target: TargetMode,
    /// Segments allowed in a cover: all or orient:<h|v|dx,dy>.
    #[arg(long, default_value = "all")]
    allowed: AllowedMode,
}

#[derive(Args, Clone)]
struct SolveOpts {
    #[arg(long, default_value = "exact")]
    solver: SolverKind,
    #[command(flatten)]
    modes: ModeOpts,
    /// Budget for fpt and exact, swap radius for local.
    #[arg(short, long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    max_iterations: usize,
    /// Also solve exactly and report the gap to the optimum.
    #[arg(long)]
    oracle: bool,
}

impl SolveOpts {
    fn request(&self) -> SolveRequest {
        SolveRequest {
            solver: self.solver,
            target: self.modes.target,
            allowed: self.modes.allowed.clone(),
            k: self.k,
            seed: self.seed,
            max_iterations: self.max_iterations,
            oracle: self.oracle,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum Check {
    Euler,
    TripleBound,
    KernelEquiv,
}

#[derive(Copy, Clone, ValueEnum)]
enum ShapeArg {
    Axis,
    General,
}

#[derive(Subcommand)]
enum GenKind {
    /// Random valid instance with integer coordinates in [0, max].
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 32)]
        max: i64,
        #[arg(long, value_enum, default_value = "axis")]
        shape: ShapeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid of horizontals and verticals.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vertex cover gadget for a graph; roles go to `<out>.roles`.
    Gadget {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Three segments that jointly cover six cells.
    TripleTight {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random graph with maximum degree three.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Check,
    Input(String),
    NoSolution,
    Infeasible(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check => 1,
            Failure::Input(_) => 2,
            Failure::NoSolution => 3,
            Failure::Infeasible(_) => 4,
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn input<E: std::fmt::Display>(context: impl std::fmt::Display) -> impl FnOnce(E) -> Failure {
    move |e| Failure::Input(format!("{context}: {e}"))
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).map_err(input(path.display()))?;
    let inst = parse_instance(&text).map_err(input(path.display()))?;
    let name = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    Ok(inst.with_name(name, path.display().to_string()))
}

/// Writes through a temporary file in the same directory and renames it.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Failure::Input(format!("{}: not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(contents.as_bytes()).and_then(|_| f.sync_all()))
        .and_then(|_| fs::rename(&tmp, path));
    result.map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Failure::Input(format!("{}: {e}", path.display()))
    })
}

fn emit(out: &Option<PathBuf>, contents: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn pipeline_failure(e: PipelineError) -> Failure {
    match e {
        PipelineError::Infeasible(CoverError::Infeasible(cell)) => {
            Failure::Infeasible(format!("cell {cell} cannot be covered by any allowed segment"))
        }
        PipelineError::Parameter(m) => Failure::Input(m),
    }
}

fn validate(path: &Path) -> Result<()> {
    let inst = read_instance(path)?;
    println!("ok: {} segments{}", inst.len(), if inst.is_axis_parallel() { ", axis-parallel" } else { "" });
    Ok(())
}

fn build(path: &Path, cells: bool) -> Result<()> {
    let arr = Arrangement::build(&read_instance(path)?);
    let bounded = arr.cells().iter().filter(|c| c.bounded).count();
    let rect = arr.cells().iter().filter(|c| c.rectangular).count();
    println!(
        "vertices: {}\nedges: {}\ncells: {}\nbounded: {bounded}\nrectangular: {rect}\ncomponents: {}",
        arr.vertices().len(),
        arr.edge_count(),
        arr.cells().len(),
        arr.component_count()
    );
    if cells {
        for c in arr.cells() {
            let ids: Vec<String> = c.covered_by.iter().map(|s| s.to_string()).collect();
            let kind = if c.rectangular {
                "rect"
            } else if c.bounded {
                "bounded"
            } else {
                "unbounded"
            };
            println!("cell {} {kind}: {}", c.id, ids.join(" "));
        }
    }
    Ok(())
}

fn solve(path: &Path, opts: &SolveOpts, out: &Option<PathBuf>) -> Result<()> {
    let inst = read_instance(path)?;
    let report = solve_instance(&inst, &opts.request()).map_err(pipeline_failure)?;
    print!("{}", report.to_text());
    match (&report.outcome, out) {
        (Outcome::Solved(c), Some(p)) => write_atomic(p, &emit_solution(c)),
        (Outcome::Solved(_), None) => Ok(()),
        (Outcome::NoSolutionAtMostK, _) => Err(Failure::NoSolution),
    }
}

fn kernelize(path: &Path, k: usize, modes: &ModeOpts, single_pass: bool) -> Result<()> {
    let arr = Arrangement::build(&read_instance(path)?);
    let req = SolveRequest {
        target: modes.target,
        allowed: modes.allowed.clone(),
        ..SolveRequest::new(SolverKind::Fpt)
    };
    let ci = cover_instance(&arr, &req).map_err(pipeline_failure)?;
    let mode = if single_pass { ReductionMode::SinglePass } else { ReductionMode::Fixpoint };
    let t = kernelize_sets(ci.unmerged(), k, mode);
    println!("k: {k}");
    println!("|C|: {}", ci.unmerged().len());
    for p in &t.pair_reductions {
        println!("pair {} {}: removed {}", p.i, p.j, p.removed);
    }
    println!("|C1|: {}", t.c1.len());
    for s in &t.singleton_reductions {
        println!("singleton {}: removed {}", s.s, s.removed);
    }
    println!("|C2|: {} (bound {})", t.c2.len(), t.bound());
    match t.verdict {
        KernelVerdict::Kernel => {
            println!("verdict: kernel");
            Ok(())
        }
        KernelVerdict::NoSolutionAtMostK => {
            println!("verdict: no-solution-at-most-k");
            Err(Failure::NoSolution)
        }
    }
}

fn gen(kind: &GenKind) -> Result<()> {
    match kind {
        GenKind::Random {
            n,
            max,
            shape,
            seed,
            out,
        } => {
            let shape = match shape {
                ShapeArg::Axis => Shape::AxisParallel,
                ShapeArg::General => Shape::General,
            };
            let inst = random_instance(*n, *max, shape, *seed).map_err(input("gen random"))?;
            emit(out, &emit_instance(&inst))
        }
        GenKind::Grid { rows, cols, out } => emit(out, &emit_instance(&grid(*rows, *cols).map_err(input("gen grid"))?)),
        GenKind::TripleTight { out } => emit(out, &emit_instance(&triple_tight())),
        GenKind::Graph { n, seed, out } => {
            if *n == 0 {
                return Err(Failure::Input("gen graph: n must be at least 1".into()));
            }
            emit(out, &emit_graph(&random_max_deg3(*n, *seed)))
        }
        GenKind::Gadget { graph, out } => {
            let text = fs::read_to_string(graph).map_err(input(graph.display()))?;
            let g = parse_graph(&text).map_err(input(graph.display()))?;
            let layout = build_gadget(&g).map_err(input(graph.display()))?;
            write_atomic(out, &emit_instance(&layout.instance))?;
            let mut roles = out.clone().into_os_string();
            roles.push(".roles");
            write_atomic(Path::new(&roles), &emit_roles(&layout.roles))
        }
    }
}

fn verify(path: &Path, check: Check, k: usize, modes: &ModeOpts) -> Result<()> {
    let arr = Arrangement::build(&read_instance(path)?);
    let report: CheckReport = match check {
        Check::Euler => check_euler(&arr),
        Check::TripleBound => check_triple_bound(&arr).map_err(input("triple-bound"))?,
        Check::KernelEquiv => {
            let ci = lsc_core::cover::CoverInstance::from_arrangement(&arr, modes.target, modes.allowed.clone())
                .map_err(|e| pipeline_failure(e.into()))?;
            check_kernel_equiv(&ci, k).map_err(input("kernel-equiv"))?
        }
    };
    print!("{report}");
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn render(path: &Path, solution: &Option<PathBuf>, out: &Path) -> Result<()> {
    let arr = Arrangement::build(&read_instance(path)?);
    let cover = match solution {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(input(p.display()))?;
            let c = parse_solution(&text).map_err(input(p.display()))?;
            if let Some(bad) = c.chosen.iter().find(|&&id| id >= arr.segments().len()) {
                return Err(Failure::Input(format!("{}: segment id {bad} out of range", p.display())));
            }
            Some(c)
        }
        None => None,
    };
    write_atomic(out, &lsc_core::svg::render(&arr, cover.as_ref()))
}

fn batch_one(path: &Path, req: &SolveRequest, out_dir: &Path) -> std::result::Result<String, Failure> {
    let inst = read_instance(path)?;
    let stem = inst.name.clone();
    let report = solve_instance(&inst, req).map_err(pipeline_failure)?;
    write_atomic(&out_dir.join(format!("{stem}.report")), &report.to_text())?;
    match &report.outcome {
        Outcome::Solved(c) => {
            write_atomic(&out_dir.join(format!("{stem}.sol")), &emit_solution(c))?;
            Ok(format!("size {}", c.len()))
        }
        Outcome::NoSolutionAtMostK => Err(Failure::NoSolution),
    }
}

fn batch(paths: &[PathBuf], jobs: usize, out_dir: &Path, opts: &SolveOpts) -> Result<()> {
    fs::create_dir_all(out_dir).map_err(input(out_dir.display()))?;
    let req = opts.request();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<std::result::Result<String, Failure>>>> =
        Mutex::new((0..paths.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, paths.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= paths.len() {
                    break;
                }
                let r = batch_one(&paths[i], &req, out_dir);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let mut worst: Option<Failure> = None;
    for (path, r) in paths.iter().zip(results.into_inner().unwrap()) {
        match r.expect("every job ran") {
            Ok(msg) => println!("{}: {msg}", path.display()),
            Err(f) => {
                let msg = match &f {
                    Failure::Input(m) | Failure::Infeasible(m) => m.clone(),
                    Failure::NoSolution => "no solution of size at most k".into(),
                    Failure::Check => "check failed".into(),
                };
                println!("{}: error (exit {}): {msg}", path.display(), f.code());
                if worst.as_ref().is_none_or(|w| f.code() > w.code()) {
                    worst = Some(f);
                }
            }
        }
    }
    match worst {
        None => Ok(()),
        Some(f) => Err(f),
    }
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Validate { path } => validate(path),
        Command::Build { path, cells } => build(path, *cells),
        Command::Solve { path, opts, out } => solve(path, opts, out),
        Command::Kernelize {
            path,
            k,
            modes,
            single_pass,
        } => kernelize(path, *k, modes, *single_pass),
        Command::Gen { kind } => gen(kind),
        Command::Verify { path, check, k, modes } => verify(path, *check, *k, modes),
        Command::Render { path, solution, out } => render(path, solution, out),
        Command::Batch {
            paths,
            jobs,
            out_dir,
            opts,
        } => batch(paths, *jobs, out_dir, opts),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Infeasible(m) => eprintln!("infeasible: {m}"),
                Failure::NoSolution => eprintln!("no solution of size at most k"),
                Failure::Check => {}
            }
            ExitCode::from(f.code())
        }
    }
}
