//! The `pmtn` command line.
//!
//! Exit codes: 0 for success, `Valid`, `ClaimHolds` or `ThresholdNotMet`;
//! 1 for negative mathematical results (`Invalid`, `ClaimRefuted`, no Partition
//! solution, an audit that found refutations); 2 for usage and I/O errors.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::gantt::{render_gantt, GanttStyle};
use crate::io::{InstanceFile, InstanceSource, ScheduleFile};
use crate::model::Schedule;
use crate::reduction::{
    build_kw10_instance, claim_from_report, extract_from_report, format_index_set, ClaimVerdict,
    PartitionInstance, ReductionMeta,
};
use crate::solvers::{
    audit_reduction, build_counterexample_schedule, build_witness_schedule,
    exact_min_total_tardiness, solve_partition, SearchLimits, SearchStatus,
};
use crate::verify::{report, verify_schedule, VerificationVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Human,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "pmtn", version, about = "Preemptive total-tardiness scheduling and reduction audit")]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PartitionArgs {
    /// Partition values a_1..a_k, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<u64>,
    /// Target b (defaults to half the sum).
    #[arg(long)]
    b: Option<u64>,
}

impl PartitionArgs {
    fn build(&self) -> Result<PartitionInstance, CliError> {
        let p = match self.b {
            Some(b) => PartitionInstance::new(self.a.clone(), b),
            None => PartitionInstance::from_values(self.a.clone()),
        };
        p.map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Args)]
struct ScheduleInput {
    /// Schedule file (JSON).
    #[arg(long)]
    schedule: PathBuf,
    /// Instance file; overrides the instance named by the schedule file.
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the reduction instance of a Partition instance.
    Reduce {
        #[command(flatten)]
        partition: PartitionArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify a schedule and report tardiness.
    Verify(ScheduleInput),
    /// Read the late-BA-job index set off a schedule.
    Extract(ScheduleInput),
    /// Test whether a schedule under the threshold encodes a Partition solution.
    Claim(ScheduleInput),
    /// Build the witness schedule of a Partition solution.
    Witness {
        #[command(flatten)]
        partition: PartitionArgs,
        /// 1-based indices of the solution (defaults to the solver's choice).
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the k = 3 counter-example schedule.
    Counterexample {
        /// Also write the bare instance file here.
        #[arg(long)]
        instance_out: Option<PathBuf>,
        /// Schedule file (with the instance inline); stdout when omitted.
        #[arg(long)]
        schedule_out: Option<PathBuf>,
    },
    /// Minimize total tardiness exactly on a tiny instance.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 2_000_000)]
        max_nodes: u64,
        #[arg(long, default_value_t = 64)]
        max_horizon: u64,
        #[arg(long, default_value_t = 10)]
        max_jobs: usize,
        /// Time limit in seconds.
        #[arg(long, default_value_t = 60)]
        time_limit: u64,
        /// Write the optimal schedule here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve a Partition instance.
    Partition {
        #[command(flatten)]
        partition: PartitionArgs,
    },
    /// Search for schedules refuting the extraction rule.
    Audit {
        #[command(flatten)]
        partition: PartitionArgs,
        /// Maximum number of feasibility evaluations.
        #[arg(long, default_value_t = 5_000)]
        budget: u64,
        /// Time limit in seconds.
        #[arg(long, default_value_t = 60)]
        time_limit: u64,
        /// Shuffle the search order.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Render a schedule as a Gantt chart.
    Gantt {
        #[command(flatten)]
        input: ScheduleInput,
        /// SVG instead of text.
        #[arg(long)]
        svg: bool,
        #[arg(long)]
        width: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

type Outcome = Result<i32, CliError>;

struct Io<'a> {
    out: &'a mut dyn Write,
    format: Format,
}

impl Io<'_> {
    fn line(&mut self, text: impl AsRef<str>) -> Result<(), CliError> {
        writeln!(self.out, "{}", text.as_ref()).map_err(|e| CliError::Io(e.to_string()))
    }

    fn json(&mut self, value: serde_json::Value) -> Result<(), CliError> {
        self.line(serde_json::to_string_pretty(&value).expect("json values serialize"))
    }

    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<(), CliError> {
        match path {
            Some(path) => fs::write(path, text)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => self
                .out
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string())),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<InstanceFile, CliError> {
    InstanceFile::parse(&read(path)?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load(input: &ScheduleInput) -> Result<(InstanceFile, Schedule), CliError> {
    let file = ScheduleFile::parse(&read(&input.schedule)?)
        .map_err(|e| CliError::Io(format!("{}: {e}", input.schedule.display())))?;
    let instance = match (&input.instance, file.instance) {
        (Some(path), _) => load_instance(path)?,
        (None, InstanceSource::Inline(inline)) => inline,
        (None, InstanceSource::Reference(reference)) => {
            let base = input.schedule.parent().unwrap_or(Path::new("."));
            load_instance(&base.join(reference))?
        }
    };
    Ok((instance, file.schedule))
}

fn require_meta(file: &InstanceFile) -> Result<ReductionMeta, CliError> {
    file.reduction
        .ok_or_else(|| CliError::Usage("instance has no reduction metadata".into()))
}

/// Prints violations; returns the exit code for an invalid schedule.
fn report_invalid(io: &mut Io, verdict: &VerificationVerdict) -> Outcome {
    match io.format {
        Format::Human => {
            io.line("Invalid")?;
            for v in verdict.violations() {
                io.line(format!("  {v}"))?;
            }
        }
        Format::Structured => {
            io.json(json!({"verdict": "Invalid", "violations": verdict.violations()}))?
        }
    }
    Ok(EXIT_NEGATIVE)
}

fn cmd_verify(io: &mut Io, input: &ScheduleInput) -> Outcome {
    let (file, schedule) = load(input)?;
    let verdict = verify_schedule(&file.instance, &schedule);
    if !verdict.is_valid() {
        return report_invalid(io, &verdict);
    }
    let r = report(&file.instance, &schedule).expect("schedule verified");
    match io.format {
        Format::Human => {
            io.line("Valid")?;
            io.line(format!("total tardiness: {}", r.total_tardiness))?;
            let late: Vec<String> = r.late_jobs.iter().map(|(id, t)| format!("{id} (T={t})")).collect();
            io.line(format!("late jobs ({}): {}", late.len(), late.join(", ")))?;
        }
        Format::Structured => io.json(json!({"verdict": "Valid", "report": r}))?,
    }
    Ok(EXIT_OK)
}

fn cmd_extract(io: &mut Io, input: &ScheduleInput) -> Outcome {
    let (file, schedule) = load(input)?;
    let meta = require_meta(&file)?;
    let verdict = verify_schedule(&file.instance, &schedule);
    if !verdict.is_valid() {
        return report_invalid(io, &verdict);
    }
    let r = report(&file.instance, &schedule).expect("schedule verified");
    let ex = extract_from_report(&file.instance, &meta, &r).map_err(|e| CliError::Usage(e.to_string()))?;
    match io.format {
        Format::Human => {
            let copies: Vec<String> = ex.late_copies.iter().map(|(i, c)| format!("BA{i}.{c}")).collect();
            io.line(format!("I={}", format_index_set(&ex.index_set)))?;
            io.line(format!("late copies: {}", copies.join(", ")))?;
            let relation = if ex.solves_partition { "=" } else { "≠" };
            io.line(format!("Σ={} {relation} b={}", ex.sum_selected, meta.b))?;
        }
        Format::Structured => io.json(serde_json::to_value(&ex).expect("serializable"))?,
    }
    Ok(EXIT_OK)
}

fn cmd_claim(io: &mut Io, input: &ScheduleInput) -> Outcome {
    let (file, schedule) = load(input)?;
    let meta = require_meta(&file)?;
    let verdict = verify_schedule(&file.instance, &schedule);
    if !verdict.is_valid() {
        return report_invalid(io, &verdict);
    }
    let r = report(&file.instance, &schedule).expect("schedule verified");
    let claim = claim_from_report(&file.instance, &meta, &r).map_err(|e| CliError::Usage(e.to_string()))?;
    match io.format {
        Format::Human => io.line(claim.to_string())?,
        Format::Structured => io.json(serde_json::to_value(&claim).expect("serializable"))?,
    }
    Ok(match claim {
        ClaimVerdict::ClaimRefuted { .. } => EXIT_NEGATIVE,
        _ => EXIT_OK,
    })
}

fn cmd_audit(io: &mut Io, p: &PartitionInstance, limits: &SearchLimits, seed: Option<u64>) -> Outcome {
    let rep = audit_reduction(p, limits, seed);
    match io.format {
        Format::Human => {
            io.line(format!(
                "reduction: k={} b={} L={} threshold={}",
                rep.meta.k, rep.meta.b, rep.meta.l, rep.meta.threshold
            ))?;
            match &rep.partition_solution {
                Some(s) => io.line(format!("partition solution: {}", format_index_set(s)))?,
                None => io.line("partition solution: none")?,
            }
            for e in &rep.entries {
                io.line(format!("{}: {}", describe_source(&e.source), e.verdict))?;
            }
            io.line(format!(
                "{} candidate(s), {} refutation(s), {} evaluation(s){}",
                rep.entries.len(),
                rep.refutations().count(),
                rep.evaluations,
                if rep.budget_exhausted() { ", BudgetExhausted (partial report)" } else { "" }
            ))?;
        }
        Format::Structured => io.json(serde_json::to_value(&rep).expect("serializable"))?,
    }
    Ok(if rep.refutations().next().is_some() { EXIT_NEGATIVE } else { EXIT_OK })
}

fn describe_source(source: &crate::solvers::CandidateSource) -> String {
    use crate::solvers::CandidateSource;
    match source {
        CandidateSource::Witness { solution } => format!("witness {}", format_index_set(solution)),
        CandidateSource::Edf => "edf".to_string(),
        CandidateSource::LatePattern { late, deadline } => {
            let parts: Vec<String> = late.iter().map(|(i, c)| format!("{c}×BA{i}")).collect();
            format!("late {} by {deadline}", parts.join("+"))
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Outcome {
    let mut io = Io { out, format: cli.format };
    match cli.command {
        Command::Reduce { partition, output } => {
            let (instance, meta) = build_kw10_instance(&partition.build()?);
            io.emit(output.as_deref(), &InstanceFile::new(instance, Some(meta)).to_json())?;
            Ok(EXIT_OK)
        }
        Command::Verify(input) => cmd_verify(&mut io, &input),
        Command::Extract(input) => cmd_extract(&mut io, &input),
        Command::Claim(input) => cmd_claim(&mut io, &input),
        Command::Witness { partition, subset, output } => {
            let p = partition.build()?;
            let solution: BTreeSet<usize> = match subset {
                Some(s) => s.into_iter().collect(),
                None => match solve_partition(&p) {
                    Some(s) => s,
                    None => {
                        io.line("none")?;
                        return Ok(EXIT_NEGATIVE);
                    }
                },
            };
            let schedule = build_witness_schedule(&p, &solution).map_err(|e| CliError::Usage(e.to_string()))?;
            let (instance, meta) = build_kw10_instance(&p);
            let file = ScheduleFile::inline(InstanceFile::new(instance, Some(meta)), schedule);
            io.emit(output.as_deref(), &file.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Counterexample { instance_out, schedule_out } => {
            let (instance, meta, schedule) = build_counterexample_schedule();
            let file = InstanceFile::new(instance, Some(meta));
            if let Some(path) = &instance_out {
                io.emit(Some(path), &file.to_json())?;
            }
            io.emit(schedule_out.as_deref(), &ScheduleFile::inline(file, schedule).to_json())?;
            Ok(EXIT_OK)
        }
        Command::Solve { instance, max_nodes, max_horizon, max_jobs, time_limit, output } => {
            let file = load_instance(&instance)?;
            let limits = SearchLimits {
                max_jobs,
                max_horizon,
                node_budget: max_nodes,
                time_budget: Duration::from_secs(time_limit),
            };
            let sol = exact_min_total_tardiness(&file.instance, &limits)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let optimal = sol.status == SearchStatus::Optimal;
            match io.format {
                Format::Human => io.line(format!(
                    "minimum total tardiness: {} ({}, {} nodes, horizon {})",
                    sol.total_tardiness,
                    if optimal { "optimal" } else { "BudgetExhausted: best incumbent" },
                    sol.nodes,
                    sol.horizon
                ))?,
                Format::Structured => io.json(json!({
                    "total_tardiness": sol.total_tardiness,
                    "status": sol.status,
                    "nodes": sol.nodes,
                    "horizon": sol.horizon,
                }))?,
            }
            if let Some(path) = output {
                let text = ScheduleFile::inline(file, sol.schedule).to_json();
                io.emit(Some(&path), &text)?;
            }
            Ok(EXIT_OK)
        }
        Command::Partition { partition } => {
            let solution = solve_partition(&partition.build()?);
            match io.format {
                Format::Human => io.line(solution.as_ref().map_or("none".to_string(), format_index_set))?,
                Format::Structured => io.json(json!({ "solution": solution }))?,
            }
            Ok(if solution.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Audit { partition, budget, time_limit, seed } => {
            let limits = SearchLimits {
                node_budget: budget,
                time_budget: Duration::from_secs(time_limit),
                ..SearchLimits::default()
            };
            cmd_audit(&mut io, &partition.build()?, &limits, seed)
        }
        Command::Gantt { input, svg, width, output } => {
            let (file, schedule) = load(&input)?;
            let style = match (svg, width) {
                (true, w) => GanttStyle::Svg { width: w.unwrap_or(960) },
                (false, Some(w)) => GanttStyle::Text { width: w },
                (false, None) => GanttStyle::default(),
            };
            match render_gantt(&file.instance, &schedule, file.reduction.as_ref(), style) {
                Ok(text) => {
                    io.emit(output.as_deref(), &text)?;
                    Ok(EXIT_OK)
                }
                Err(_) => report_invalid(&mut io, &verify_schedule(&file.instance, &schedule)),
            }
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) | Err(CliError::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}
