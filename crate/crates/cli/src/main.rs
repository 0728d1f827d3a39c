mod report;

use std::error::Error;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ptl_core::blocks::{check_pair_blocks, partition_identities};
use ptl_core::catalog::{self, BlockCatalog};
use ptl_core::constructions::{self, extremal_formula, ExtremalSpec};
use ptl_core::oracle::{self, SearchConfig};
use ptl_core::plane::Rational;
use ptl_core::{decompose, find_pattern, io, CyclePattern, Graph, PlaneMap};

use report::{RunReport, Verdict};

type Fallible<T> = Result<T, Box<dyn Error>>;

const C3C5_CLAIM: &str = "ex_P(n, C3∪C5) = ⌊(8n − 13)/3⌋ for n ≥ 295660, attained by K2 ∨ (⌊(n−2)/3⌋·P3 ∪ P_r)";
const SIX_VERTEX: &str = "a triangular block on 6 vertices is good unless it is one of two exceptional classes";
const HALF: &str = "f3(B) ≤ e(B)/2 for the blocks through a deleted edge";
const CENSUS: &str = "f(n) = (4n + 15097)/15555 and (5/8)(4n + 1037α + 22) = (8n − 16)/3 at α = f(n) − 1";
const PAIRS: &str = "at least 3 blocks through the apex pair exactly when n ≥ 295660";
const MAX_CHECK_N: usize = 1_000_000;

#[derive(Parser)]
#[command(name = "ptl", version, about = "Planar Turán numbers of disjoint cycle unions")]
struct Cli {
    /// Worker threads for searches; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a plane construction.
    Construct {
        #[command(subcommand)]
        shape: Shape,
        #[arg(long, value_enum, default_value = "rot", global = true)]
        format: Format,
    },
    /// Split a plane map (rot v1 file, `-` for stdin) into triangular blocks.
    Decompose { file: PathBuf },
    /// Check a graph for a disjoint union of cycles. Exits 1 if one is found.
    Free {
        file: PathBuf,
        #[arg(long)]
        pattern: CyclePattern,
        #[arg(long, value_enum, default_value = "adjlist")]
        input: Input,
    },
    /// Exhaustive searches.
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
    /// Check the C3∪C5 construction for every n in a range.
    #[command(name = "verify-theorem1")]
    VerifyConstruction {
        #[arg(long, default_value_t = 7)]
        from: usize,
        #[arg(long, default_value_t = 200)]
        to: usize,
    },
    /// Classify every 6-vertex triangular block as good or bad.
    #[command(name = "verify-lemma2")]
    VerifySixVertex,
    /// Exact threshold arithmetic; the least valid n unless `--n` is given.
    Census {
        #[arg(long)]
        n: Option<u64>,
    },
    /// The bundled catalog of blocks on at most 6 vertices.
    Catalog {
        /// Only blocks on this many vertices.
        #[arg(long)]
        v: Option<usize>,
        /// Re-enumerate and compare with the bundled copy.
        #[arg(long)]
        regenerate: bool,
    },
}

#[derive(Subcommand)]
enum Shape {
    /// K2 ∨ (t·P3 ∪ P_r) on n ≥ 7 vertices.
    Extremal {
        #[arg(long)]
        n: usize,
    },
    Wheel {
        #[arg(long)]
        k: usize,
    },
    Fan {
        #[arg(long)]
        k: usize,
    },
    /// Random connected plane map, for property-test corpora.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exact ex_P(n, pattern).
    Ex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: CyclePattern,
        /// Resume file; defaults to a file under PTL_CACHE_DIR when set.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
        cap: usize,
    },
    /// Every triangular block on v vertices.
    Blocks {
        #[arg(long)]
        v: usize,
    },
    /// Same as `verify-lemma2`.
    #[command(name = "lemma2")]
    SixVertex,
    /// Threshold arithmetic at one n.
    Census {
        #[arg(long)]
        n: u64,
    },
    /// Oracle values next to the known closed form over a range of n.
    Compare {
        #[arg(long)]
        pattern: CyclePattern,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Adjlist,
    Rot,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Input {
    Adjlist,
    Rot,
}

enum Output {
    Report(RunReport),
    Text(String),
}

/// Invalid input that clap cannot catch; exits 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl Error for Usage {}

fn usage(msg: impl Into<String>) -> Box<dyn Error> {
    Box::new(Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Text(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            print!("{}", r.to_json());
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("ptl: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Fallible<Output> {
    let cfg = SearchConfig {
        jobs: cli.jobs,
        ..SearchConfig::default()
    };
    Ok(match &cli.cmd {
        Cmd::Construct { shape, format } => construct(shape, *format)?,
        Cmd::Decompose { file } => Output::Report(decompose_cmd(file)?),
        Cmd::Free { file, pattern, input } => Output::Report(free(file, pattern, *input)?),
        Cmd::Oracle { what } => Output::Report(oracle_cmd(what, cfg)?),
        Cmd::VerifyConstruction { from, to } => Output::Report(verify_construction(*from, *to)?),
        Cmd::VerifySixVertex => Output::Report(six_vertex("verify-lemma2")?),
        Cmd::Census { n } => Output::Report(census_cmd(*n)),
        Cmd::Catalog { v, regenerate } => Output::Report(catalog_cmd(*v, *regenerate)?),
    })
}

fn read_input(path: &Path) -> Fallible<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_err(path: &Path, e: io::ParseError) -> Box<dyn Error> {
    usage(format!("{}: {e}", path.display()))
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("PTL_CACHE_DIR").map(PathBuf::from)
}

fn map_payload(m: &PlaneMap) -> Value {
    json!({
        "n": m.n(),
        "edges": m.edge_count(),
        "faces": m.profile().0,
        "rotation": m.rotations(),
    })
}

fn construct(shape: &Shape, format: Format) -> Fallible<Output> {
    let (m, inputs) = match *shape {
        Shape::Extremal { n } => (constructions::extremal_c3c5(n), json!({"shape": "extremal", "n": n})),
        Shape::Wheel { k } => (constructions::wheel(k), json!({"shape": "wheel", "k": k})),
        Shape::Fan { k } => (constructions::fan(k), json!({"shape": "fan", "k": k})),
        Shape::Random { n, seed } => {
            if n < 2 {
                return Err(usage("random maps need n ≥ 2"));
            }
            (Ok(constructions::random_plane_map(seed, n)), json!({"shape": "random", "n": n, "seed": seed}))
        }
    };
    let m = m.map_err(|e| usage(e.to_string()))?;
    Ok(match format {
        Format::Adjlist => Output::Text(io::write_adjlist(m.graph())),
        Format::Rot => Output::Text(io::write_rot(&m)),
        Format::Dot => Output::Text(io::map_to_dot(&m)),
        Format::Json => {
            let mut r = RunReport::new("construct", inputs);
            r.pass_if("euler", m.euler_certificate(), None, "v − e + f = 2 and Σ i·f_i = 2e");
            r.payload = map_payload(&m);
            Output::Report(r)
        }
    })
}

fn decompose_cmd(file: &Path) -> Fallible<RunReport> {
    let m = io::parse_rot(&read_input(file)?).map_err(|e| parse_err(file, e))?;
    let blocks = decompose(&m);
    let mut r = RunReport::new("decompose", json!({"file": file}));
    r.pass_if(
        "partition identities",
        partition_identities(&m, &blocks),
        Some("Σ e(B) = e(G) and Σ f3(B) = f3(G) over the triangular blocks B"),
        format!("{} blocks, e = {}, f3 = {}", blocks.len(), m.edge_count(), m.f3()),
    );
    r.payload = json!({
        "map": map_payload(&m),
        "blocks": blocks.iter().map(|b| b.report()).collect::<Vec<_>>(),
    });
    Ok(r)
}

fn free(file: &Path, pattern: &CyclePattern, input: Input) -> Fallible<RunReport> {
    let text = read_input(file)?;
    let g: Graph = match input {
        Input::Adjlist => io::parse_adjlist(&text).map_err(|e| parse_err(file, e))?,
        Input::Rot => io::parse_rot(&text).map_err(|e| parse_err(file, e))?.graph().clone(),
    };
    let found = find_pattern(&g, pattern);
    let mut r = RunReport::new("free", json!({"file": file, "pattern": pattern}));
    let detail = match &found {
        Some(w) => format!("found {} disjoint cycles", w.cycles.len()),
        None => format!("no {pattern} in the graph"),
    };
    r.pass_if("pattern-free", found.is_none(), None, detail);
    if let Some(w) = &found {
        r.pass_if("witness", w.validate(&g) && w.matches(pattern), None, "cycles are present and disjoint");
    }
    r.payload = json!({"n": g.n(), "edges": g.edge_count(), "free": found.is_none(), "witness": found});
    Ok(r)
}

fn oracle_cmd(what: &OracleCmd, cfg: SearchConfig) -> Fallible<RunReport> {
    match what {
        OracleCmd::Ex { n, pattern, checkpoint, cap } => {
            let checkpoint = checkpoint
                .clone()
                .or_else(|| cache_dir().map(|d| d.join(format!("ex-{n}-{pattern}.json"))));
            if let Some(dir) = checkpoint.as_ref().and_then(|p| p.parent()) {
                if !dir.as_os_str().is_empty() {
                    fs::create_dir_all(dir)?;
                }
            }
            let cfg = SearchConfig {
                cap: *cap,
                checkpoint,
                ..cfg
            };
            ex(*n, pattern, &cfg)
        }
        OracleCmd::Blocks { v } => blocks(*v),
        OracleCmd::SixVertex => six_vertex("oracle lemma2"),
        OracleCmd::Census { n } => Ok(census_record("oracle census", *n)),
        OracleCmd::Compare { pattern, from, to } => {
            if from > to {
                return Err(usage("--from exceeds --to"));
            }
            let rows = oracle::compare_known(*from..=*to, pattern, &cfg).map_err(|e| usage(e.to_string()))?;
            let mut r = RunReport::new("oracle compare", json!({"pattern": pattern, "from": from, "to": to}));
            let claim = oracle::formula_for(pattern).map(|f| f.statement);
            for row in &rows {
                let name = format!("n = {}", row.n);
                use oracle::CompareStatus::*;
                match row.status {
                    Match | LowerBoundOk => r.check(&name, Verdict::Pass, claim, format!("{} edges", row.oracle)),
                    Mismatch | LowerBoundViolated => r.check(&name, Verdict::Fail, claim, format!("{row:?}")),
                    Unchecked => r.check(&name, Verdict::Info, None, format!("{} edges", row.oracle)),
                }
            }
            r.payload = json!(rows);
            Ok(r)
        }
    }
}

fn ex(n: usize, pattern: &CyclePattern, cfg: &SearchConfig) -> Fallible<RunReport> {
    let res = oracle::ex_planar_with(n, pattern, cfg).map_err(|e| match e {
        oracle::OracleError::CapExceeded { .. } => usage(e.to_string()),
        e => Box::new(e),
    })?;
    let mut r = RunReport::new("oracle ex", json!({"n": n, "pattern": pattern}));
    r.check("ex_P", Verdict::Info, None, format!("{} edges, {} extremal classes", res.max_edges, res.witnesses.len()));
    if let Some(value) = oracle::formula_for(pattern).and_then(|f| f.value(n).map(|v| (f, v))) {
        let (f, v) = value;
        r.pass_if("closed form", res.max_edges == v, Some(f.statement), format!("oracle {} vs formula {v}", res.max_edges));
    }
    if pattern.exact_lengths() == [3, 5] && pattern.wildcard_count() == 0 && n >= 7 {
        let lb = extremal_formula(n);
        r.pass_if("construction lower bound", res.max_edges >= lb, Some(C3C5_CLAIM), format!("oracle {} ≥ {lb}", res.max_edges));
    }
    r.payload = json!(res);
    Ok(r)
}

fn blocks(v: usize) -> Fallible<RunReport> {
    let cached = cache_dir().map(|d| d.join(format!("blocks-v{v}.json")));
    let catalog: BlockCatalog = match cached.as_ref().and_then(|p| fs::read_to_string(p).ok()) {
        Some(text) => serde_json::from_str(&text)?,
        None => {
            let maps = oracle::enumerate_blocks(v).map_err(|e| usage(e.to_string()))?;
            let c = catalog::build(&maps, v);
            if let Some(p) = &cached {
                fs::create_dir_all(p.parent().expect("file in a directory"))?;
                fs::write(p, c.to_json())?;
            }
            c
        }
    };
    let mut r = RunReport::new("oracle blocks", json!({"v": v}));
    let count = catalog.entries.len();
    match [1usize, 1, 2, 4].get(v.wrapping_sub(2)) {
        Some(&want) => r.pass_if(
            "class count",
            count == want,
            Some("there are 1, 1, 2 and 4 triangular blocks on 2, 3, 4 and 5 vertices"),
            format!("{count} classes"),
        ),
        None => r.check("class count", Verdict::Info, None, format!("{count} classes")),
    }
    r.payload = json!(catalog.entries);
    Ok(r)
}

fn six_vertex(command: &str) -> Fallible<RunReport> {
    let rep = oracle::verify_six_vertex_blocks()?;
    let mut r = RunReport::new(command, json!({}));
    let names: Vec<&str> = rep.bad.iter().map(|b| b.alias.as_str()).collect();
    r.pass_if("two bad classes", rep.bad.len() == 2, Some(SIX_VERTEX), format!("{} classes, bad: {}", rep.classes, names.join(", ")));
    r.pass_if("fan among them", rep.fan6_is_bad, None, "K1 ∨ P5 is bad");
    r.pass_if("triangle share", rep.bad_within_half, Some(HALF), "2·f3 ≤ e for every bad class");
    r.payload = json!(rep);
    Ok(r)
}

fn census_record(command: &str, n: u64) -> RunReport {
    let rec = oracle::census(n);
    let mut r = RunReport::new(command, json!({"n": n}));
    r.pass_if("edge bound identity", rec.edge_bound_identity, Some(CENSUS), format!("edge bound {}", Rational::from(rec.edge_bound)));
    r.check(
        "pair blocks",
        Verdict::Info,
        Some(PAIRS),
        format!("(2n − 357994)/77775 = {}; threshold met: {}", Rational::from(rec.pair_blocks), rec.threshold_ok),
    );
    r.payload = json!(rec);
    r
}

fn census_cmd(n: Option<u64>) -> RunReport {
    let t = oracle::census_threshold();
    let mut r = census_record("census", n.unwrap_or(t));
    r.inputs = json!({"n": n});
    let below = oracle::census(t - 1);
    r.pass_if(
        "threshold",
        t == 295660 && !below.threshold_ok,
        Some(PAIRS),
        format!("least n with at least 3 pair blocks: {t}"),
    );
    r.payload = json!({"threshold": t, "record": r.payload});
    r
}

fn verify_construction(from: usize, to: usize) -> Fallible<RunReport> {
    if from < 7 || to > MAX_CHECK_N || from > to {
        return Err(usage(format!("n range must lie in 7..={MAX_CHECK_N}, got {from}..={to}")));
    }
    let p: CyclePattern = "C3+C5".parse().expect("valid pattern");
    let mut rows = Vec::new();
    let (mut planar, mut free, mut edges) = (true, true, true);
    for n in from..=to {
        let m = constructions::extremal_c3c5(n)?;
        let spec = ExtremalSpec::new(n)?;
        let row = (m.euler_certificate(), ptl_core::is_free(m.graph(), &p), m.edge_count() == extremal_formula(n));
        planar &= row.0;
        free &= row.1;
        edges &= row.2 && spec.edge_count() == m.edge_count();
        rows.push(json!({"n": n, "t": spec.t, "r": spec.r, "edges": m.edge_count(), "planar": row.0, "free": row.1}));
    }
    let mut r = RunReport::new("verify-theorem1", json!({"from": from, "to": to}));
    let span = format!("n = {from}..={to}");
    r.pass_if("planarity", planar, None, format!("{span}: Euler certificate"));
    r.pass_if("freeness", free, Some(C3C5_CLAIM), format!("{span}: no disjoint C3 and C5"));
    r.pass_if("edge formula", edges, Some(C3C5_CLAIM), format!("{span}: ⌊(8n − 13)/3⌋ edges"));
    if n_in(295660, from, to) {
        let c = oracle::census(295660);
        r.check("census threshold", Verdict::Info, Some(PAIRS), format!("n = 295660: pair blocks {}", Rational::from(c.pair_blocks)));
    }
    if n_in(17, from, to) {
        let rep = check_pair_blocks(&constructions::extremal_c3c5(17)?, constructions::APEX_U, constructions::APEX_V);
        r.pass_if("apex pair blocks", rep.is_clean(), Some(HALF), format!("n = 17: {} blocks through both apices", rep.blocks.len()));
    }
    r.payload = json!(rows);
    Ok(r)
}

fn n_in(n: usize, from: usize, to: usize) -> bool {
    (from..=to).contains(&n)
}

fn catalog_cmd(v: Option<usize>, regenerate: bool) -> Fallible<RunReport> {
    let builtin = catalog::builtin();
    let mut r = RunReport::new("catalog", json!({"v": v, "regenerate": regenerate}));
    if regenerate {
        let fresh = oracle::block_catalog(builtin.max_vertices)?;
        if let Some(dir) = cache_dir() {
            fs::create_dir_all(&dir)?;
            fs::write(dir.join("block_catalog.json"), fresh.to_json())?;
        }
        r.pass_if("bundled catalog current", &fresh == builtin, None, format!("{} classes", fresh.entries.len()));
    }
    let entries: Vec<_> = builtin.entries.iter().filter(|e| v.is_none_or(|v| e.vertices == v)).collect();
    r.check("classes", Verdict::Info, None, format!("{} entries", entries.len()));
    r.payload = json!(entries);
    Ok(r)
}
