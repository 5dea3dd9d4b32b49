use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use coprime_core::classifier::{classify, verify_reference_tables, ClassifyOptions};
use coprime_core::constructions::{load_catalog, Catalog, ConstructionError, GroupSpec};
use coprime_core::graph::{build_graph, export, ExportFormat};
use coprime_core::numtheory::rad;
use coprime_core::perm::FiniteGroup;
use coprime_core::theorems::{run_full_suite, Outcome};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_REALIZATION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "coprime",
    version,
    about = "Coprime graphs of finite groups and their end vertices"
)]
struct Cli {
    /// Catalog file to use instead of the bundled one.
    #[arg(long, global = true, env = "COPRIME_CATALOG", value_name = "PATH")]
    catalog: Option<PathBuf>,

    /// Maximum number of groups realized concurrently (0 = all cores).
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, element orders, radical and p-group status of a group.
    Info {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Emit the coprime graph of a group.
    Graph {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Write the graph here instead of standard output.
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Run every end-vertex check on a group.
    Analyze {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// List the catalog groups with exactly N end vertices.
    Classify {
        n: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Realize every entry instead of only those of admissible order.
        #[arg(long)]
        no_prune: bool,
    },
    /// Check the classification tables for 1 to 10 end vertices.
    #[command(name = "verify-paper")]
    VerifyTables {
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// List catalog entries.
    Catalog {
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Also realize each entry and count its end vertices.
        #[arg(long)]
        realize: bool,
    },
}

#[derive(Args)]
struct GroupArg {
    /// Construction such as "Dihedral(12)", or a catalog label.
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    spec: Option<String>,
    /// Read the construction from a file ("-" for standard input).
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Info { group, format } => cmd_info(cli, group, *format),
        Command::Graph {
            group,
            format,
            output,
        } => cmd_graph(cli, group, *format, output.as_ref()),
        Command::Analyze { group, format } => cmd_analyze(cli, group, *format),
        Command::Classify {
            n,
            format,
            no_prune,
        } => cmd_classify(cli, *n, *format, !*no_prune),
        Command::VerifyTables { format } => cmd_verify(cli, *format),
        Command::Catalog { format, realize } => cmd_catalog(cli, *format, *realize),
    }
}

fn load(cli: &Cli) -> Result<Catalog, Failure> {
    match &cli.catalog {
        Some(path) => {
            load_catalog(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
        }
        None => Ok(Catalog::bundled()),
    }
}

fn read_spec_text(arg: &GroupArg) -> Result<String, Failure> {
    match (&arg.spec, &arg.file) {
        (Some(text), _) => Ok(text.clone()),
        (None, Some(path)) if path.as_os_str() == "-" => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::input(format!("standard input: {e}")))?;
            Ok(text)
        }
        (None, Some(path)) => {
            fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
        }
        (None, None) => Err(Failure::input("no group given")),
    }
}

/// Parses the construction, falling back to a catalog label when the text is
/// not a construction.
fn resolve_group(cli: &Cli, arg: &GroupArg) -> Result<FiniteGroup, Failure> {
    let text = read_spec_text(arg)?;
    let text = text.trim();
    let spec = match GroupSpec::parse(text) {
        Ok(spec) => spec,
        Err(parse_error) => {
            let catalog = load(cli)?;
            let Some(entry) = catalog.get(text) else {
                return Err(Failure::input(format!(
                    "cannot parse '{text}': {parse_error}"
                )));
            };
            return entry.realize().map_err(realization_failure);
        }
    };
    let label = spec.short_name();
    spec.build()
        .map(|g| g.with_label(label))
        .map_err(realization_failure)
}

fn realization_failure(e: ConstructionError) -> Failure {
    Failure {
        code: EXIT_REALIZATION,
        message: format!("cannot realize group: {e}"),
    }
}

fn emit_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    // round-trip through Value so object keys come out sorted
    let value = serde_json::to_value(value).map_err(|e| Failure::input(e.to_string()))?;
    let text = serde_json::to_string_pretty(&value).map_err(|e| Failure::input(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn order_histogram(group: &FiniteGroup) -> BTreeMap<u64, usize> {
    let mut counts = BTreeMap::new();
    for &o in group.element_orders() {
        *counts.entry(o).or_default() += 1;
    }
    counts
}

fn cmd_info(cli: &Cli, arg: &GroupArg, format: ReportFormat) -> CmdResult {
    let group = resolve_group(cli, arg)?;
    let histogram = order_histogram(&group);
    let report = build_graph(&group).end_vertices();
    let order = group.order() as u64;
    match format {
        ReportFormat::Json => emit_json(&json!({
            "label": group.label(),
            "order": order,
            "element_orders": histogram.iter().map(|(o, c)| (o.to_string(), c)).collect::<BTreeMap<_, _>>(),
            "rad": rad(order),
            "p_group": group.is_p_group(),
            "abelian": group.is_abelian(),
            "end_vertices": report.count,
        }))?,
        ReportFormat::Text => {
            let orders: Vec<String> = histogram.iter().map(|(o, c)| format!("{o}^{c}")).collect();
            println!("group:          {}", group.label());
            println!("order:          {order}");
            println!("element orders: {}", orders.join(" "));
            println!("rad(|G|):       {}", rad(order));
            match group.is_p_group() {
                Some(p) => println!("p-group:        yes (p = {p})"),
                None => println!("p-group:        no"),
            }
            println!(
                "abelian:        {}",
                if group.is_abelian() { "yes" } else { "no" }
            );
            println!("end vertices:   {}", report.count);
        }
    }
    Ok(0)
}

fn cmd_graph(
    cli: &Cli,
    arg: &GroupArg,
    format: GraphFormat,
    output: Option<&PathBuf>,
) -> CmdResult {
    let group = resolve_group(cli, arg)?;
    let graph = build_graph(&group);
    let mut text = export(
        &graph,
        match format {
            GraphFormat::Dot => ExportFormat::Dot,
            GraphFormat::Json => ExportFormat::Json,
        },
    );
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match output {
        Some(path) => fs::write(path, &text)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(format!("standard output: {e}")))?,
    }
    eprintln!(
        "{}: {} vertices, {} end vertices",
        group.label(),
        graph.num_vertices(),
        graph.end_vertices().count
    );
    Ok(0)
}

fn cmd_analyze(cli: &Cli, arg: &GroupArg, format: ReportFormat) -> CmdResult {
    let group = resolve_group(cli, arg)?;
    let results = run_full_suite(&group);
    let all_hold = results.iter().all(|r| r.outcome != Outcome::Fails);
    let count = build_graph(&group).end_vertices().count;
    match format {
        ReportFormat::Json => emit_json(&json!({
            "group": group.label(),
            "order": group.order(),
            "end_vertices": count,
            "checks": results,
            "all_hold": all_hold,
        }))?,
        ReportFormat::Text => {
            println!(
                "{}: order {}, |E_G| = {count}",
                group.label(),
                group.order()
            );
            for r in &results {
                println!("  {r}");
            }
            println!(
                "{}",
                if all_hold {
                    "all applicable checks hold"
                } else {
                    "some checks FAIL"
                }
            );
        }
    }
    Ok(if all_hold { 0 } else { EXIT_CHECK_FAILED })
}

fn cmd_classify(cli: &Cli, n: u64, format: ReportFormat, prune: bool) -> CmdResult {
    let catalog = load(cli)?;
    let report = classify(
        n,
        &catalog,
        ClassifyOptions {
            jobs: cli.jobs,
            prune,
        },
    );
    for f in &report.failures {
        eprintln!("warning: {}: {}", f.label, f.message);
    }
    match format {
        ReportFormat::Json => emit_json(&report)?,
        ReportFormat::Text => print!("{report}"),
    }
    Ok(if report.passed { 0 } else { EXIT_CHECK_FAILED })
}

fn cmd_verify(cli: &Cli, format: ReportFormat) -> CmdResult {
    let catalog = load(cli)?;
    let verification = verify_reference_tables(
        &catalog,
        ClassifyOptions {
            jobs: cli.jobs,
            prune: true,
        },
    );
    for r in &verification.reports {
        for f in &r.failures {
            eprintln!("warning: |E_G| = {}: {}: {}", r.n, f.label, f.message);
        }
    }
    match format {
        ReportFormat::Json => emit_json(&verification)?,
        ReportFormat::Text => {
            for r in &verification.reports {
                print!("{r}");
            }
            println!("summary:");
            for r in &verification.reports {
                println!(
                    "  |E_G| = {:>2}: {} ({} matches, {})",
                    r.n,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.matches.len(),
                    r.confidence
                );
            }
            println!(
                "{}",
                if verification.passed {
                    "all tables verified"
                } else {
                    "verification FAILED"
                }
            );
        }
    }
    Ok(if verification.passed {
        0
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_catalog(cli: &Cli, format: ReportFormat, realize: bool) -> CmdResult {
    let catalog = load(cli)?;
    let mut rows = Vec::new();
    let mut failed = false;
    for e in &catalog.entries {
        let end_vertices = if realize {
            match e.realize() {
                Ok(g) => Some(build_graph(&g).end_vertices().count),
                Err(err) => {
                    eprintln!("error: {} (line {}): {err}", e.label, e.line);
                    failed = true;
                    None
                }
            }
        } else {
            None
        };
        rows.push((e, end_vertices));
    }
    match format {
        ReportFormat::Json => {
            let entries: Vec<_> = rows
                .iter()
                .map(|(e, count)| {
                    json!({
                        "label": e.label,
                        "spec": e.spec.to_string(),
                        "order": e.order,
                        "expect": e.expected_end_vertices,
                        "small_group_id": e.small_group_id.map(|id| id.to_string()),
                        "end_vertices": count,
                        "complete_order": catalog.is_complete(e.order),
                    })
                })
                .collect();
            emit_json(&json!({
                "complete_orders": catalog.complete_orders,
                "entries": entries,
            }))?
        }
        ReportFormat::Text => {
            for (e, count) in &rows {
                let id = e
                    .small_group_id
                    .map(|id| id.to_string())
                    .unwrap_or_default();
                let count = count.map(|c| format!("  |E_G|={c}")).unwrap_or_default();
                println!(
                    "{:<18} {:>4} {:<10} {}{count}",
                    e.label, e.order, id, e.spec
                );
            }
            let complete: Vec<String> =
                catalog.complete_orders.iter().map(u64::to_string).collect();
            println!(
                "{} entries; complete orders: {}",
                catalog.len(),
                complete.join(", ")
            );
        }
    }
    Ok(if failed { EXIT_REALIZATION } else { 0 })
}
