//! Command-line front end: generate instances, sparsify, verify, extract
//! minimal subgraphs, compute the degree-relaxation optimum, and run
//! benchmark suites.
//!
//! Exit codes: 0 success / property true, 1 property false or infeasible,
//! 2 input error, 3 internal-invariant violation.

use sparsespan::connectivity::{
    arc_connectivity_witness, min_degree_spanning_subgraph, vertex_connectivity_witness,
};
use sparsespan::error::Error;
use sparsespan::generate::*;
use sparsespan::graph::{DirectedMultigraph, Mode};
use sparsespan::io::{parse_graph, serialize_graph};
use sparsespan::minimal::{minimal_k_arc_connected, minimal_k_connected};
use sparsespan::pipeline::{sparsify_arc, sparsify_vertex};
use std::collections::BTreeMap;
use std::io::Write as _;
use std::process::ExitCode;

const USAGE: &str = "\
usage: sparsespan <command> [options]

commands:
  generate --family F --params K=V[,K=V...] [--seed S] -o FILE
      families: dk (k,n) | doubled_tree (n,k) | power_cycle_tournament (n)
                g_family (n1,n2,k,delta) | t_family (n1,n2,k) | t_lower (m,k)
                random_dense (n,delta,k) | random_tournament (n,k)
  sparsify --mode vertex|arc -k K -i FILE [-o FILE] [--report FILE]
  verify   --mode vertex|arc -k K -i FILE
  minimal  --mode vertex|arc -k K -i FILE [-o FILE]
  hkd      -k K -i FILE [-o FILE] [--multi]
  bench    --suite FILE [--jobs N] [--csv FILE]

SPARSESPAN_JOBS overrides the bench worker count.
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

struct Opts {
    flags: BTreeMap<String, String>,
}

impl Opts {
    fn parse(args: &[String]) -> Result<Opts, Error> {
        let mut flags = BTreeMap::new();
        let mut i = 0;
        while i < args.len() {
            let key = args[i]
                .strip_prefix("--")
                .or_else(|| args[i].strip_prefix('-'))
                .ok_or_else(|| Error::input(format!("unexpected argument {:?}", args[i])))?;
            if key == "multi" {
                flags.insert(key.to_string(), "true".to_string());
                i += 1;
                continue;
            }
            let value = args
                .get(i + 1)
                .ok_or_else(|| Error::input(format!("missing value for --{key}")))?;
            flags.insert(key.to_string(), value.clone());
            i += 2;
        }
        Ok(Opts { flags })
    }

    fn get(&self, key: &str) -> Result<&str, Error> {
        self.flags
            .get(key)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::input(format!("missing required option --{key}")))
    }

    fn opt(&self, key: &str) -> Option<&str> {
        self.flags.get(key).map(|s| s.as_str())
    }

    fn usize_flag(&self, key: &str) -> Result<usize, Error> {
        self.get(key)?
            .parse()
            .map_err(|_| Error::input(format!("--{key} expects an integer")))
    }

    fn mode(&self) -> Result<Mode, Error> {
        match self.get("mode")? {
            "vertex" => Ok(Mode::Vertex),
            "arc" => Ok(Mode::Arc),
            other => Err(Error::input(format!("unknown mode {other:?}"))),
        }
    }
}

fn parse_params(text: &str) -> Result<BTreeMap<String, usize>, Error> {
    let mut map = BTreeMap::new();
    for item in text.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::input(format!("bad parameter {item:?}, expected key=value")))?;
        let v: usize = v
            .parse()
            .map_err(|_| Error::input(format!("parameter {k} expects an integer")))?;
        map.insert(k.to_string(), v);
    }
    Ok(map)
}

fn need(params: &BTreeMap<String, usize>, key: &str) -> Result<usize, Error> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::input(format!("family needs parameter {key}")))
}

fn generate_graph(
    family: &str,
    params: &BTreeMap<String, usize>,
    seed: u64,
) -> Result<DirectedMultigraph, Error> {
    match family {
        "dk" => gen_dk(need(params, "k")?, need(params, "n")?),
        "doubled_tree" => gen_doubled_tree(need(params, "n")?, need(params, "k")?, seed),
        "power_cycle_tournament" => gen_power_cycle_tournament(need(params, "n")?, seed),
        "g_family" => gen_g_family(
            need(params, "n1")?,
            need(params, "n2")?,
            need(params, "k")?,
            need(params, "delta")?,
        ),
        "t_family" => gen_t_family(need(params, "n1")?, need(params, "n2")?, need(params, "k")?),
        "t_lower" => gen_t_lower(need(params, "m")?, need(params, "k")?),
        "random_dense" => gen_random_dense(
            need(params, "n")?,
            need(params, "delta")?,
            need(params, "k")?,
            seed,
        )
        .map(|(g, _)| g),
        "random_tournament" => {
            gen_random_tournament(need(params, "n")?, need(params, "k")?, seed).map(|(g, _)| g)
        }
        other => Err(Error::input(format!("unknown family {other:?}"))),
    }
}

fn read_graph(path: &str) -> Result<DirectedMultigraph, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {path}: {e}")))?;
    parse_graph(&text)
}

fn write_file(path: &str, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents).map_err(|e| Error::input(format!("cannot write {path}: {e}")))
}

fn run(args: &[String]) -> Result<ExitCode, Error> {
    let Some(command) = args.first() else {
        print!("{USAGE}");
        return Ok(ExitCode::from(2));
    };
    let opts = Opts::parse(&args[1..])?;
    match command.as_str() {
        "generate" => {
            let family = opts.get("family")?;
            let params = parse_params(opts.opt("params").unwrap_or(""))?;
            let seed: u64 = opts
                .opt("seed")
                .unwrap_or("0")
                .parse()
                .map_err(|_| Error::input("--seed expects an integer"))?;
            let g = generate_graph(family, &params, seed)?;
            write_file(opts.get("o")?, &serialize_graph(&g))?;
            println!("family: {family}");
            println!("seed: {seed}");
            println!("n: {}", g.n());
            println!("m: {}", g.edge_count());
            Ok(ExitCode::SUCCESS)
        }
        "sparsify" => {
            let g = read_graph(opts.get("i")?)?;
            let k = opts.usize_flag("k")?;
            let (out, report) = match opts.mode()? {
                Mode::Vertex => sparsify_vertex(&g, k)?,
                Mode::Arc => sparsify_arc(&g, k)?,
            };
            if let Some(path) = opts.opt("o") {
                write_file(path, &serialize_graph(&out))?;
            }
            let kv = report.to_kv();
            if let Some(path) = opts.opt("report") {
                write_file(path, &kv)?;
            }
            print!("{kv}");
            if !report.verified {
                eprintln!("output failed re-verification");
                return Ok(ExitCode::from(3));
            }
            Ok(ExitCode::SUCCESS)
        }
        "verify" => {
            let g = read_graph(opts.get("i")?)?;
            let k = opts.usize_flag("k")?;
            match opts.mode()? {
                Mode::Vertex => match vertex_connectivity_witness(&g, k) {
                    None => {
                        println!("strongly {k}-connected: true");
                        Ok(ExitCode::SUCCESS)
                    }
                    Some(w) => {
                        println!("strongly {k}-connected: false");
                        println!("separator: {:?}", w.separator);
                        println!("pair: {} -> {}", w.pair.0, w.pair.1);
                        Ok(ExitCode::from(1))
                    }
                },
                Mode::Arc => match arc_connectivity_witness(&g, k) {
                    None => {
                        println!("strongly {k}-arc-connected: true");
                        Ok(ExitCode::SUCCESS)
                    }
                    Some(w) => {
                        println!("strongly {k}-arc-connected: false");
                        println!("cut: {:?}", w.edges);
                        println!("pair: {} -> {}", w.pair.0, w.pair.1);
                        Ok(ExitCode::from(1))
                    }
                },
            }
        }
        "minimal" => {
            let g = read_graph(opts.get("i")?)?;
            let k = opts.usize_flag("k")?;
            let minimal = match opts.mode()? {
                Mode::Vertex => minimal_k_connected(&g, k)?,
                Mode::Arc => minimal_k_arc_connected(&g, k)?,
            };
            if let Some(path) = opts.opt("o") {
                write_file(path, &serialize_graph(&minimal.graph))?;
            }
            println!("input_edges: {}", g.edge_count());
            println!("minimal_edges: {}", minimal.graph.edge_count());
            println!("deleted: {}", minimal.deletion_log.len());
            Ok(ExitCode::SUCCESS)
        }
        "hkd" => {
            let g = read_graph(opts.get("i")?)?;
            let k = opts.usize_flag("k")?;
            let multi = opts.opt("multi").is_some();
            let (sub, h) = min_degree_spanning_subgraph(&g, k, multi)?;
            if let Some(path) = opts.opt("o") {
                write_file(path, &serialize_graph(&sub))?;
            }
            println!("h: {h}");
            Ok(ExitCode::SUCCESS)
        }
        "bench" => run_bench(&opts),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            Ok(ExitCode::SUCCESS)
        }
        other => Err(Error::input(format!("unknown command {other:?}"))),
    }
}

// ---------------------------------------------------------------------------
// Benchmark runner: one instance per suite line, executed on a worker pool,
// CSV rows aggregated in input order.
// ---------------------------------------------------------------------------

struct BenchRow {
    index: usize,
    line: String,
    csv: String,
    ok: bool,
}

fn run_instance(index: usize, line: &str) -> BenchRow {
    let fail = |msg: String| BenchRow {
        index,
        line: line.to_string(),
        csv: format!("{index},error,{msg}"),
        ok: false,
    };
    let mut fields = BTreeMap::new();
    for item in line.split_whitespace() {
        let Some((k, v)) = item.split_once('=') else {
            return fail(format!("bad field {item:?}"));
        };
        fields.insert(k.to_string(), v.to_string());
    }
    let get = |key: &str| fields.get(key).cloned();
    let Some(family) = get("family") else {
        return fail("missing family".to_string());
    };
    let mode = match get("mode").as_deref() {
        Some("arc") => Mode::Arc,
        _ => Mode::Vertex,
    };
    let seed: u64 = get("seed").and_then(|s| s.parse().ok()).unwrap_or(0);
    let k: usize = get("k").and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut params = BTreeMap::new();
    for key in ["n", "n1", "n2", "delta", "m", "k"] {
        if let Some(v) = get(key).and_then(|s| s.parse::<usize>().ok()) {
            params.insert(key.to_string(), v);
        }
    }
    let start = std::time::Instant::now();
    let graph = match generate_graph(&family, &params, seed) {
        Ok(g) => g,
        Err(e) => return fail(format!("generate: {e}")),
    };
    let result = match mode {
        Mode::Vertex => sparsify_vertex(&graph, k),
        Mode::Arc => sparsify_arc(&graph, k),
    };
    let millis = start.elapsed().as_millis();
    match result {
        Ok((_, r)) => BenchRow {
            index,
            line: line.to_string(),
            csv: format!(
                "{index},{family},{mode},{n},{k},{dbar},{seed},{branch},{edges},{bound},{met},{verified},{millis}",
                mode = r.mode,
                n = r.n,
                dbar = r.delta_bar,
                branch = r.branch,
                edges = r.total_edges,
                bound = r.bound_value,
                met = r.bound_met,
                verified = r.verified,
            ),
            ok: r.verified && r.bound_met,
        },
        Err(e) => fail(format!("sparsify: {e}")),
    }
}

fn run_bench(opts: &Opts) -> Result<ExitCode, Error> {
    let suite = std::fs::read_to_string(opts.get("suite")?)
        .map_err(|e| Error::input(format!("cannot read suite: {e}")))?;
    let lines: Vec<String> = suite
        .lines()
        .map(|l| l.trim().to_string())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let jobs = std::env::var("SPARSESPAN_JOBS")
        .ok()
        .and_then(|s| s.parse().ok())
        .or_else(|| opts.opt("jobs").and_then(|s| s.parse().ok()))
        .unwrap_or(1)
        .max(1);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let rows = std::sync::Mutex::new(Vec::<BenchRow>::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(lines.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= lines.len() {
                    break;
                }
                let row = run_instance(i, &lines[i]);
                rows.lock().unwrap().push(row);
            });
        }
    });
    let mut rows = rows.into_inner().unwrap();
    rows.sort_by_key(|r| r.index);
    let header = "index,family,mode,n,k,delta_bar,seed,branch,total_edges,bound_value,bound_met,verified,millis";
    let mut csv = String::from(header);
    csv.push('\n');
    let mut all_ok = true;
    for row in &rows {
        csv.push_str(&row.csv);
        csv.push('\n');
        if !row.ok {
            all_ok = false;
            eprintln!("instance {} failed: {}", row.index, row.line);
        }
    }
    if let Some(path) = opts.opt("csv") {
        write_file(path, &csv)?;
    }
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(csv.as_bytes());
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
