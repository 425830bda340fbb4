//! `sgb`: reports, closed-form verification, and batch inequality searches
//! over subgroup-generating bipartite graphs.

use std::env;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sgb_cli::{
    analyze, dot_string, parse_degree_file, report::VerdictJson, run_search, Error, Result,
    SearchConfig, SearchFamily, EXIT_OK, EXIT_VIOLATION,
};
use sgb_core::{check_hv_generic, verify_family, FamilySpec, FiniteGroup, DEFAULT_ORDER_CAP};

#[derive(Parser)]
#[command(
    name = "sgb",
    version,
    about = "subgroup-generating bipartite graphs: per-group reports, closed-form \
             verification, and batch Zagreb-inequality searches"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one group and print its JSON report (optionally a DOT drawing)
    Report(ReportArgs),
    /// Compare tabulated closed forms against brute force over a (family, prime) grid
    Verify(VerifyArgs),
    /// Walk group families, logging one JSONL record per group
    Search(SearchArgs),
    /// Check M2/|e| >= M1/|V| on an explicit degree file
    CheckGeneric(CheckGenericArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFamily {
    Cyclic,
    Dihedral,
    Dicyclic,
}

#[derive(Args)]
struct ReportArgs {
    /// group family; needs --order or --param
    #[arg(
        long,
        value_enum,
        required_unless_present = "table",
        conflicts_with = "table"
    )]
    family: Option<ReportFamily>,
    /// group order: Z_N, D_N (even N), Q_N (N divisible by 4)
    #[arg(long, conflicts_with_all = ["param", "n"])]
    order: Option<usize>,
    /// family parameter: prime p for cyclic p^n, n for D_{2n} and Q_{4n}
    #[arg(long)]
    param: Option<usize>,
    /// prime-power exponent for --family cyclic --param p
    #[arg(long, requires = "param")]
    n: Option<u32>,
    /// Cayley table file: first line |G|, then |G| rows of |G| indices
    #[arg(long)]
    table: Option<PathBuf>,
    /// print the JSON report (the default unless --dot is given)
    #[arg(long)]
    json: bool,
    /// write a DOT drawing of B(G) to this path
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// comma-separated closed-form families (cyclic_2p, ..., dicyclic_4p2)
    #[arg(long, required = true, value_delimiter = ',')]
    families: Vec<String>,
    /// comma-separated primes
    #[arg(long, required = true, value_delimiter = ',')]
    primes: Vec<u64>,
    /// largest exponent checked for cyclic_pn
    #[arg(long, default_value_t = 3)]
    n_max: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchFamilyArg {
    Cyclic,
    Dihedral,
    Dicyclic,
    Abelian,
    #[value(name = "user-tables", alias = "user_tables")]
    UserTables,
}

impl From<SearchFamilyArg> for SearchFamily {
    fn from(value: SearchFamilyArg) -> SearchFamily {
        match value {
            SearchFamilyArg::Cyclic => SearchFamily::Cyclic,
            SearchFamilyArg::Dihedral => SearchFamily::Dihedral,
            SearchFamilyArg::Dicyclic => SearchFamily::Dicyclic,
            SearchFamilyArg::Abelian => SearchFamily::Abelian,
            SearchFamilyArg::UserTables => SearchFamily::UserTables,
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    /// comma-separated families: cyclic,dihedral,dicyclic,abelian,user-tables
    #[arg(long, value_delimiter = ',', value_enum)]
    families: Vec<SearchFamilyArg>,
    /// largest group order to test
    #[arg(long)]
    max_order: usize,
    /// JSONL log path; the CSV summary lands next to it
    #[arg(long)]
    out: PathBuf,
    /// keep existing records and compute only missing descriptors
    #[arg(long)]
    resume: bool,
    /// comma-separated Cayley table files for the user-tables family
    #[arg(long, value_delimiter = ',')]
    tables: Vec<PathBuf>,
}

#[derive(Args)]
struct CheckGenericArgs {
    /// degree file: `V E` header, V degrees, E endpoint-degree pairs
    #[arg(long)]
    degrees: PathBuf,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            process::exit(err.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    configure_threads()?;
    let cap = order_cap()?;
    match cli.command {
        Command::Report(args) => run_report(args, cap),
        Command::Verify(args) => run_verify(args, cap),
        Command::Search(args) => run_search_cmd(args, cap),
        Command::CheckGeneric(args) => run_check_generic(args),
    }
}

/// Prints one line to stdout. A closed pipe (`sgb ... | head`) exits with
/// the shell's SIGPIPE status instead of panicking.
fn emit(line: impl AsRef<str>) {
    if writeln!(std::io::stdout(), "{}", line.as_ref()).is_err() {
        process::exit(141);
    }
}

/// SGB_THREADS bounds the rayon worker count; unset means rayon's default.
fn configure_threads() -> Result<()> {
    match env::var("SGB_THREADS") {
        Ok(raw) => {
            let threads: usize = raw.trim().parse().ok().filter(|&t| t >= 1).ok_or_else(|| {
                Error::Usage(format!(
                    "SGB_THREADS must be a positive integer, got {raw:?}"
                ))
            })?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .map_err(|e| Error::Usage(format!("SGB_THREADS: {e}")))?;
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

/// SGB_MAX_ORDER overrides the default order cap of 512 (with a cost warning
/// when raised, since every group costs |G|^2 subgroup closures).
fn order_cap() -> Result<usize> {
    match env::var("SGB_MAX_ORDER") {
        Ok(raw) => {
            let cap: usize = raw.trim().parse().ok().filter(|&c| c >= 1).ok_or_else(|| {
                Error::Usage(format!(
                    "SGB_MAX_ORDER must be a positive integer, got {raw:?}"
                ))
            })?;
            if cap > DEFAULT_ORDER_CAP {
                eprintln!(
                    "warning: SGB_MAX_ORDER={cap} is above the default {DEFAULT_ORDER_CAP}; \
                     expect quadratic cost per group"
                );
            }
            Ok(cap)
        }
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

fn resolve_group(args: &ReportArgs) -> Result<FiniteGroup> {
    if let Some(path) = &args.table {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        return FiniteGroup::from_cayley_text(&text, path.display().to_string())
            .map_err(Error::Core);
    }
    let family = args.family.expect("clap enforces --family without --table");
    if args.n.is_some() && !matches!(family, ReportFamily::Cyclic) {
        return Err(Error::Usage("--n only applies to --family cyclic".into()));
    }
    let group = match (family, args.order, args.param) {
        (ReportFamily::Cyclic, Some(order), None) => FiniteGroup::make_cyclic(order),
        (ReportFamily::Cyclic, None, Some(p)) => {
            let spec = FamilySpec::from_name("cyclic_pn", p as u64, args.n)?;
            spec.build_group()
        }
        (ReportFamily::Dihedral, Some(order), None) => {
            if order % 2 != 0 || order == 0 {
                return Err(Error::Usage(format!(
                    "dihedral order must be even and positive, got {order}"
                )));
            }
            FiniteGroup::make_dihedral(order / 2)
        }
        (ReportFamily::Dihedral, None, Some(n)) => FiniteGroup::make_dihedral(n),
        (ReportFamily::Dicyclic, Some(order), None) => {
            if order % 4 != 0 || order == 0 {
                return Err(Error::Usage(format!(
                    "dicyclic order must be divisible by 4, got {order}"
                )));
            }
            FiniteGroup::make_dicyclic(order / 4)
        }
        (ReportFamily::Dicyclic, None, Some(n)) => FiniteGroup::make_dicyclic(n),
        _ => {
            return Err(Error::Usage(
                "give exactly one of --order or --param with --family".into(),
            ))
        }
    };
    group.map_err(Error::Core)
}

fn run_report(args: ReportArgs, cap: usize) -> Result<i32> {
    let group = resolve_group(&args)?;
    let analysis = analyze(group, cap)?;
    if let Some(dot_path) = &args.dot {
        fs::write(dot_path, dot_string(&analysis)).map_err(|source| Error::Io {
            path: dot_path.clone(),
            source,
        })?;
    }
    if args.json || args.dot.is_none() {
        let doc = serde_json::to_string_pretty(&analysis.report).map_err(|e| {
            Error::Core(sgb_core::Error::InternalInconsistency(format!(
                "serialize: {e}"
            )))
        })?;
        emit(doc);
    }
    Ok(EXIT_OK)
}

fn run_verify(args: VerifyArgs, cap: usize) -> Result<i32> {
    let mut mismatches = 0usize;
    for family in &args.families {
        if !sgb_core::FAMILY_NAMES.contains(&family.as_str()) {
            return Err(Error::Usage(format!(
                "unknown family {family:?}; expected one of {:?}",
                sgb_core::FAMILY_NAMES
            )));
        }
        for &p in &args.primes {
            let exponents: Vec<Option<u32>> = if family == "cyclic_pn" {
                (1..=args.n_max).map(Some).collect()
            } else {
                vec![None]
            };
            for n in exponents {
                let label = match n {
                    Some(n) => format!("{family} p={p} n={n}"),
                    None => format!("{family} p={p}"),
                };
                let spec = match FamilySpec::from_name(family, p, n) {
                    Ok(spec) => spec,
                    Err(e) => {
                        emit(format!("{label}: SKIP ({e})"));
                        continue;
                    }
                };
                match verify_family(&spec, cap) {
                    Ok(report) if report.all_match() => {
                        emit(format!(
                            "{label}: MATCH (components={}, m1={}, m2={})",
                            report.brute.stars.len() + report.brute.isolated,
                            report.brute.m1,
                            report.brute.m2
                        ));
                    }
                    Ok(report) => {
                        mismatches += 1;
                        let mut failed = Vec::new();
                        if !report.structure_match {
                            failed.push("structure");
                        }
                        if !report.m1_match {
                            failed.push("m1");
                        }
                        if !report.m2_match {
                            failed.push("m2");
                        }
                        if !report.hv_match {
                            failed.push("hv");
                        }
                        if !report.indices_match {
                            failed.push("indices");
                        }
                        emit(format!(
                            "{label}: MISMATCH [{}] brute(components={}, m1={}, m2={}) vs \
                             formula(components={}, m1={}, m2={})",
                            failed.join(","),
                            report.brute.stars.len() + report.brute.isolated,
                            report.brute.m1,
                            report.brute.m2,
                            report.formula.stars.len() + report.formula.isolated,
                            report.formula.m1,
                            report.formula.m2
                        ));
                    }
                    Err(sgb_core::Error::ResourceLimit(msg)) => {
                        emit(format!("{label}: SKIP ({msg})"));
                    }
                    Err(e) => return Err(Error::Core(e)),
                }
            }
        }
    }
    if mismatches > 0 {
        emit(format!("{mismatches} mismatch(es)"));
        Ok(EXIT_VIOLATION)
    } else {
        Ok(EXIT_OK)
    }
}

fn run_search_cmd(args: SearchArgs, cap: usize) -> Result<i32> {
    let config = SearchConfig {
        families: args.families.into_iter().map(SearchFamily::from).collect(),
        max_order: args.max_order,
        table_paths: args.tables,
        output_path: args.out,
        resume: args.resume,
    };
    let summary = run_search(&config, cap)?;
    emit(format!(
        "tested {} group(s) ({} skipped), {} violation(s)",
        summary.groups_tested, summary.skipped, summary.violations_found
    ));
    emit(format!("log: {}", summary.output_path.display()));
    emit(format!("csv: {}", summary.csv_path.display()));
    if let Some(path) = &summary.violations_path {
        emit(format!("violations: {}", path.display()));
    }
    Ok(if summary.violations_found > 0 {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}

fn run_check_generic(args: CheckGenericArgs) -> Result<i32> {
    let text = fs::read_to_string(&args.degrees).map_err(|source| Error::Io {
        path: args.degrees.clone(),
        source,
    })?;
    let (degrees, edges) = parse_degree_file(&text)?;
    let verdict = check_hv_generic(&degrees, &edges).map_err(Error::Core)?;
    let doc = VerdictJson::try_from_verdict(&verdict)?;
    let json = serde_json::to_string_pretty(&doc).map_err(|e| {
        Error::Core(sgb_core::Error::InternalInconsistency(format!(
            "serialize: {e}"
        )))
    })?;
    emit(json);
    Ok(if verdict.holds {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}
