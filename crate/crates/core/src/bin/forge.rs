use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use moufang_forge::extension::{build_table, split_roundtrip, ExtensionSpec, RoundTrip};
use moufang_forge::io::{
    export_table, parse_table, read_to_string, table_hash, write_string, PairFile, RawPair, SpecFile, TableFormat,
};
use moufang_forge::loops::{derived_subloops, is_abelian_congruence, LoopTable};
use moufang_forge::pair::{verify_construction_pair, verify_moufang_permutation, PairVerdict};
use moufang_forge::search::{abelian_groups_up_to, build_catalog, Catalog, DEFAULT_CYCLIC_MAX};
use moufang_forge::{AbelianGroup, ForgeError};

#[derive(Parser)]
#[command(name = "forge", version, about = "Build and analyze abelian-by-cyclic Moufang loops")]
struct Cli {
    /// Worker threads for table builds and searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a pair file against the axioms.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Construction)]
        kind: Kind,
        #[arg(long)]
        json: bool,
    },
    /// Build the loop table of a pair file (with --cyclic) or an extension file.
    Build {
        file: PathBuf,
        #[arg(long)]
        cyclic: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: TableFormat,
    },
    /// Structural analysis of a table file. With no flags every analysis runs.
    Analyze(AnalyzeArgs),
    /// Enumerate construction pairs and write a deduplicated catalog.
    Search {
        /// Group literal such as `2,2,2`; repeatable.
        #[arg(long = "group")]
        groups: Vec<String>,
        /// Use every abelian group of order at most this.
        #[arg(long, conflicts_with = "groups")]
        max_order: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_CYCLIC_MAX)]
        cyclic_max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Partial catalog to continue.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Stop after this many candidates.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Convert a table file between formats.
    Export {
        file: PathBuf,
        #[arg(long, default_value = "text")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild from the extracted Moufang permutation and compare (extension or catalog file).
    Roundtrip {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Construction,
    Moufang,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    #[arg(long)]
    nucleus: bool,
    #[arg(long)]
    center: bool,
    #[arg(long)]
    derived: bool,
    /// `center`, `nucleus`, `associator`, `commutator`, `prefix:M` (indices below M) or an index list `0,1,2`.
    #[arg(long)]
    congruence: Option<String>,
    #[arg(long)]
    moufang: bool,
    #[arg(long)]
    json: bool,
}

struct Failure {
    code: u8,
    msg: String,
}

type CliResult<T> = std::result::Result<T, Failure>;

fn input_err(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

/// Errors while loading files are input errors; everything else is mathematical.
fn load<T>(path: &Path, r: moufang_forge::Result<T>) -> CliResult<T> {
    r.map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn math<T>(r: moufang_forge::Result<T>) -> CliResult<T> {
    r.map_err(|e| match e {
        ForgeError::Io(_) | ForgeError::Parse(_) => Failure { code: 2, msg: e.to_string() },
        _ => Failure { code: 1, msg: e.to_string() },
    })
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = load(path, read_to_string(path))?;
    serde_json::from_str(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn from_value<T: serde::de::DeserializeOwned>(path: &Path, v: Value) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, contents: &str) -> CliResult<()> {
    match out {
        Some(p) => load(p, write_string(p, contents)),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn print_verdict(v: &PairVerdict, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(v).expect("verdict serializes"));
        return;
    }
    for (axiom, ok) in &v.axioms {
        let witness = v
            .failures
            .iter()
            .find(|w| &w.axiom == axiom)
            .map(|w| format!(" witness {:?}", w.elements))
            .unwrap_or_default();
        println!("{axiom}: {}{witness}", if *ok { "pass" } else { "FAIL" });
    }
    for w in &v.map.counterexamples {
        println!("{}: FAIL witness {:?}", w.property, w.elements);
    }
    println!("{}", if v.holds { "verified" } else { "not verified" });
}

fn cmd_verify(file: &Path, kind: Kind, json: bool) -> CliResult<u8> {
    let pf: PairFile = from_value(file, read_json(file)?)?;
    let verdict = match kind {
        Kind::Construction => {
            let raw = load(file, pf.resolve())?;
            math(verify_construction_pair(&raw.group, &raw.g, &raw.gamma))?
        }
        Kind::Moufang => {
            if pf.gamma.is_some() {
                return Err(input_err(format!("{}: a Moufang permutation file has no gamma", file.display())));
            }
            let raw = load(file, pf.resolve())?;
            math(verify_moufang_permutation(&raw.group, &raw.g))?
        }
    };
    print_verdict(&verdict, json);
    Ok(if verdict.holds { 0 } else { 1 })
}

/// An extension file, or a pair file plus `--cyclic`.
fn load_spec(file: &Path, cyclic: Option<u64>) -> CliResult<ExtensionSpec> {
    let v = read_json(file)?;
    let (n, pf) = if v.get("cyclic").is_some() {
        let sf: SpecFile = from_value(file, v)?;
        if cyclic.is_some_and(|c| c != sf.cyclic) {
            return Err(input_err("--cyclic disagrees with the extension file"));
        }
        (sf.cyclic, sf.pair)
    } else {
        let n = cyclic.ok_or_else(|| input_err("--cyclic is required for a pair file"))?;
        (n, from_value(file, v)?)
    };
    let RawPair { g, gamma, .. } = load(file, pf.resolve())?;
    let pair = math(moufang_forge::pair::ConstructionPair::new(g, gamma))?;
    math(ExtensionSpec::new(n, pair))
}

fn cmd_build(file: &Path, cyclic: Option<u64>, out: Option<&Path>, format: TableFormat) -> CliResult<u8> {
    let spec = load_spec(file, cyclic)?;
    let table = math(build_table(&spec))?;
    let report = table.check_moufang();
    emit(out, &export_table(&table, format))?;
    let mut summary = format!("order {}\n", table.order());
    for r in &report.identities {
        let _ = writeln!(
            summary,
            "{}: {}",
            r.identity,
            r.witness.map_or("pass".to_string(), |w| format!("FAIL witness {w:?}"))
        );
    }
    let _ = writeln!(summary, "sha256 {}", table_hash(&table));
    if out.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(if report.all_hold() { 0 } else { 1 })
}

fn load_table(file: &Path) -> CliResult<LoopTable> {
    let text = load(file, read_to_string(file))?;
    load(file, parse_table(&text))
}

fn congruence_set(t: &LoopTable, which: &str) -> CliResult<Vec<usize>> {
    let set = match which {
        "center" => t.center(),
        "nucleus" => t.nucleus(),
        "associator" => derived_subloops(t).associator_subloop,
        "commutator" => derived_subloops(t).commutator_subloop,
        s => {
            let parsed = if let Some(m) = s.strip_prefix("prefix:") {
                m.trim().parse::<usize>().map(|m| (0..m).collect::<Vec<_>>())
            } else {
                s.split(',').map(|p| p.trim().parse::<usize>()).collect()
            };
            let mut set = parsed.map_err(|_| input_err(format!("bad --congruence value {s:?}")))?;
            set.sort_unstable();
            set.dedup();
            if set.iter().any(|&x| x >= t.order()) {
                return Err(input_err(format!("--congruence {s:?} names an element outside the table")));
            }
            set
        }
    };
    if !t.is_normal(&set) {
        return Err(input_err(format!("--congruence {which:?} is not a normal subloop")));
    }
    Ok(set)
}

fn cmd_analyze(a: &AnalyzeArgs) -> CliResult<u8> {
    let t = load_table(&a.file)?;
    let all = !(a.nucleus || a.center || a.derived || a.moufang || a.congruence.is_some());
    let mut report = serde_json::Map::new();
    let mut text = String::new();
    let mut code = 0;
    report.insert("order".into(), json!(t.order()));
    report.insert("associative".into(), json!(t.is_associative()));
    report.insert("commutative".into(), json!(t.is_commutative()));
    let _ = writeln!(
        text,
        "order {}\nassociative {}\ncommutative {}",
        t.order(),
        t.is_associative(),
        t.is_commutative()
    );
    if all || a.nucleus {
        let nuc = t.nucleus();
        let _ = writeln!(text, "nucleus ({}): {nuc:?}", nuc.len());
        report.insert("nucleus".into(), json!(nuc));
    }
    if all || a.center {
        let z = t.center();
        let _ = writeln!(text, "center ({}): {z:?}", z.len());
        report.insert("center".into(), json!(z));
    }
    if all || a.derived {
        let d = derived_subloops(&t);
        let _ = writeln!(text, "associator subloop ({}): {:?}", d.associator_subloop.len(), d.associator_subloop);
        let _ = writeln!(text, "commutator subloop ({}): {:?}", d.commutator_subloop.len(), d.commutator_subloop);
        let _ = writeln!(text, "derived subloop ({}): {:?}", d.derived.len(), d.derived);
        report.insert("derived".into(), serde_json::to_value(&d).expect("serializes"));
    }
    if let Some(which) = &a.congruence {
        let set = congruence_set(&t, which)?;
        let abelian = is_abelian_congruence(&t, &set);
        let _ = writeln!(text, "congruence {which} ({} elements): abelian: {abelian}", set.len());
        report.insert("congruence".into(), json!({ "set": set, "abelian": abelian }));
    }
    if all || a.moufang {
        let m = t.check_moufang();
        let mut ids = serde_json::Map::new();
        for r in &m.identities {
            let _ = writeln!(
                text,
                "{}: {}",
                r.identity,
                r.witness.map_or("pass".to_string(), |w| format!("FAIL witness {w:?}"))
            );
            ids.insert(r.identity.to_string(), json!(r.witness));
        }
        report.insert("moufang".into(), Value::Object(ids));
        if !m.all_hold() {
            code = 1;
        }
    }
    if a.json {
        println!("{}", serde_json::to_string_pretty(&Value::Object(report)).expect("serializes"));
    } else {
        print!("{text}");
    }
    Ok(code)
}

fn cmd_search(
    groups: &[String],
    max_order: Option<u64>,
    cyclic_max: u64,
    out: Option<&Path>,
    resume: Option<&Path>,
    limit: Option<usize>,
) -> CliResult<u8> {
    let groups: Vec<AbelianGroup> = match max_order {
        Some(k) => abelian_groups_up_to(k),
        None if groups.is_empty() => return Err(input_err("give --group or --max-order")),
        None => groups
            .iter()
            .map(|g| g.parse().map_err(|e: ForgeError| input_err(format!("--group {g:?}: {e}"))))
            .collect::<CliResult<_>>()?,
    };
    let previous = match resume {
        Some(p) => {
            let text = load(p, read_to_string(p))?;
            Some(load(p, Catalog::from_json(&text))?)
        }
        None => None,
    };
    let cat = math(build_catalog(&groups, cyclic_max, previous, limit))?;
    for (k, e) in cat.entries.iter().enumerate() {
        eprintln!(
            "#{k} group {} n {} order {} |g| {} r {} {} nucleus {} center {} x{}",
            e.pair.group,
            e.n,
            e.order,
            e.g_order,
            e.r,
            if e.fingerprint.associative { "group" } else { "nonassociative" },
            e.fingerprint.nucleus,
            e.fingerprint.center,
            e.multiplicity
        );
    }
    eprintln!(
        "{} entries from {}/{} candidates{}",
        cat.entries.len(),
        cat.processed,
        cat.total_candidates,
        if cat.complete { "" } else { " (partial)" }
    );
    emit(out, &cat.to_json())?;
    Ok(0)
}

fn roundtrip_line(label: &str, rt: &RoundTrip) -> String {
    if !rt.applicable {
        return format!("{label}: not applicable ({})", rt.reason.as_deref().unwrap_or(""));
    }
    format!(
        "{label}: {} (isomorphic {:?}, same pair {:?}, multiplication formulas {})",
        if rt.passed() { "true" } else { "false" },
        rt.isomorphic,
        rt.same_pair,
        rt.theorem.as_ref().is_some_and(|t| t.holds())
    )
}

fn cmd_roundtrip(file: &Path, json: bool) -> CliResult<u8> {
    let v = read_json(file)?;
    let specs: Vec<(String, ExtensionSpec)> = if v.get("entries").is_some() {
        let cat: Catalog = from_value(file, v)?;
        cat.entries
            .iter()
            .enumerate()
            .map(|(k, e)| Ok((format!("entry {k}"), load(file, e.spec())?)))
            .collect::<CliResult<_>>()?
    } else {
        vec![("extension".to_string(), load_spec(file, None)?)]
    };
    let mut code = 0;
    let mut results = Vec::new();
    for (label, spec) in &specs {
        let rt = math(split_roundtrip(spec))?;
        if !rt.passed() {
            code = 1;
        }
        if json {
            results.push(json!({ "label": label, "result": rt }));
        } else {
            println!("{}", roundtrip_line(label, &rt));
        }
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&results).expect("serializes"));
    }
    Ok(code)
}

fn run(cli: Cli) -> CliResult<u8> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(input_err("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Failure { code: 1, msg: e.to_string() })?;
    }
    match &cli.cmd {
        Cmd::Verify { file, kind, json } => cmd_verify(file, *kind, *json),
        Cmd::Build { file, cyclic, out, format } => cmd_build(file, *cyclic, out.as_deref(), *format),
        Cmd::Analyze(a) => cmd_analyze(a),
        Cmd::Search {
            groups,
            max_order,
            cyclic_max,
            out,
            resume,
            limit,
        } => cmd_search(groups, *max_order, *cyclic_max, out.as_deref(), resume.as_deref(), *limit),
        Cmd::Export { file, format, out } => {
            let t = load_table(file)?;
            emit(out.as_deref(), &export_table(&t, *format))?;
            Ok(0)
        }
        Cmd::Roundtrip { file, json } => cmd_roundtrip(file, *json),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
