use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use homswap::canon::enumerate_graphs;
use homswap::coloring::{
    chromatic_binomial, dominance_certificate, verify_coefficient_compare,
    verify_cycle_violation_bounds,
};
use homswap::format::{
    pair_labels_to_text, parse_pair_labels, parse_simple_graph, parse_target_graph,
    simple_graph_to_text, target_graph_to_text,
};
use homswap::gt::{check_strongly_gt, scan_corpus, GtReport, Verdict};
use homswap::hom::{count_hom, count_hom_weighted, WeightVector};
use homswap::numeric::{format_rational, parse_rational};
use homswap::polytope::{
    check_volume_gt, ehrhart_interpolate, weighted_riemann_check, SampledWeightFunction,
};
use homswap::swap::{
    has_bsp, transport, verify_swap_bijection, violated_edges, LabelingMode, PairLabeling,
};
use homswap::target::{
    certify_target, enumerate_threshold_classes, recognize_threshold, TargetEvidence,
    TargetVerdict, ThresholdRecognition,
};
use homswap::{Error, SimpleGraph, TargetGraph};

#[derive(Parser)]
#[command(
    name = "homswap",
    version,
    about = "Exact homomorphism counts and GT-inequality checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for corpus scans (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Binomial,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Disjoint,
    Crossed,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether H is a bipartite swapping target.
    Certify {
        #[arg(long)]
        target: PathBuf,
    },
    /// Count homomorphisms G -> H, optionally weighted.
    Count {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Check the GT inequality on every regular graph up to the caps.
    GtScan {
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, default_value_t = 3)]
        dmax: usize,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Compare hom(G ⊔ G, H) with hom(G × K2, H) for one graph or all small graphs.
    StronglyGt {
        #[arg(long)]
        target: PathBuf,
        #[arg(long, conflicts_with = "nmax")]
        graph: Option<PathBuf>,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Chromatic polynomial in the binomial basis.
    Chromatic {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Basis::Binomial)]
        basis: Basis,
    },
    /// Leading term and pointwise signs of P(G × K2, q) - P(G ⊔ G, q).
    Dominance {
        #[arg(long)]
        graph: PathBuf,
        /// Range `a..b` (inclusive) or comma-separated list.
        #[arg(long, default_value = "2..50")]
        eval: String,
    },
    /// Compare surjective colouring profiles of G ⊔ G and G × K2.
    CoefCompare {
        #[arg(long)]
        graph: PathBuf,
        /// Also check cycle bounds on violated edges for this many colours.
        #[arg(long)]
        cycle_colors: Option<usize>,
        /// Sampled colourings for the cycle check (0 = exhaustive).
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Interpolate i(G, n) and report vol(ESTAB(G)).
    Ehrhart {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Volume inequality, or the weighted Riemann-sum inequality with --tau.
    VolumeGt {
        #[arg(long)]
        graph: PathBuf,
        /// File with n+1 grid values τ(i/n), whitespace separated.
        #[arg(long)]
        tau: Option<PathBuf>,
    },
    /// List one threshold graph per isomorphism class.
    Thresholds {
        #[arg(long)]
        n: usize,
    },
    /// Verify the swap bijection for (G, H), or transport one labeling.
    SwapVerify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, requires = "mode")]
        labels: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
}

/// Why a run stopped short of a verdict.
enum Failure {
    Input(String),
    Compute(String),
}

impl Failure {
    fn at(path: &Path) -> impl Fn(Error) -> Failure + '_ {
        move |e| match e {
            Error::Parse { line, message } => {
                Failure::Input(format!("{}:{line}: {message}", path.display()))
            }
            other => Failure::Input(format!("{}: {other}", path.display())),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

struct Output {
    format: Format,
    failed: bool,
    buf: String,
}

impl Output {
    fn emit<T: Serialize>(&mut self, text: impl AsRef<str>, record: &T) {
        match self.format {
            Format::Text => {
                self.buf.push_str(text.as_ref());
                if !text.as_ref().ends_with('\n') {
                    self.buf.push('\n');
                }
            }
            Format::JsonLines => {
                let line = serde_json::to_string(record).expect("reports serialise");
                self.buf.push_str(&line);
                self.buf.push('\n');
            }
        }
    }

    fn verdict(&mut self, ok: bool) {
        self.failed |= !ok;
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<SimpleGraph, Failure> {
    parse_simple_graph(&read(path)?).map_err(Failure::at(path))
}

fn read_target(path: &Path) -> Result<TargetGraph, Failure> {
    parse_target_graph(&read(path)?).map_err(Failure::at(path))
}

/// JSON object from vertex index to weight; unlisted vertices weigh 1.
fn read_weights(path: &Path, h: &TargetGraph) -> Result<WeightVector, Failure> {
    let bad = |msg: String| Failure::Input(format!("{}: {msg}", path.display()));
    let value: serde_json::Value =
        serde_json::from_str(&read(path)?).map_err(|e| bad(format!("line {}: {e}", e.line())))?;
    let map = value
        .as_object()
        .ok_or_else(|| bad("expected a JSON object".into()))?;
    let mut weights = vec![homswap::numeric::parse_rational("1").expect("literal"); h.n()];
    for (key, w) in map {
        let v: usize = key
            .parse()
            .ok()
            .filter(|&v| v < h.n())
            .ok_or_else(|| bad(format!("{key:?} is not a vertex of H")))?;
        let text = match w {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            _ => return Err(bad(format!("weight of {key} must be a string or number"))),
        };
        weights[v] = parse_rational(&text).map_err(|e| bad(e.to_string()))?;
    }
    WeightVector::new(weights).map_err(|e| bad(e.to_string()))
}

fn read_tau(path: &Path) -> Result<SampledWeightFunction, Failure> {
    let values = read(path)?
        .split_whitespace()
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::at(path))?;
    SampledWeightFunction::new(values).map_err(Failure::at(path))
}

fn parse_eval(text: &str) -> Result<Vec<BigInt>, Failure> {
    let bad = || Failure::Input(format!("--eval: cannot parse {text:?}"));
    if let Some((a, b)) = text.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        return Ok((a..=b).map(BigInt::from).collect());
    }
    text.split(',')
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| bad()))
        .collect()
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}\n")).collect()
}

fn gt_text(r: &GtReport) -> String {
    let mut s = format!(
        "{} N={} d={} lhs={} rhs_base={} : {} vs {} {}",
        r.graph_id, r.n, r.d, r.lhs, r.rhs_base, r.cross_power_lhs, r.cross_power_rhs, r.verdict
    );
    if let Some(w) = &r.witness {
        s.push('\n');
        s.push_str(&indent(w));
    }
    s
}

fn run(cli: &Cli, out: &mut Output) -> Result<(), Failure> {
    match &cli.command {
        Command::Certify { target } => {
            let h = read_target(target)?;
            let cert = certify_target(&h);
            let threshold = recognize_threshold(&h)?;
            let mut text = format!(
                "{}\n",
                match cert.verdict {
                    TargetVerdict::Target => "TARGET",
                    TargetVerdict::NotTarget => "NOT_TARGET",
                }
            );
            match &cert.evidence {
                TargetEvidence::Coloring(c) => {
                    let n = h.n();
                    for u in 0..n {
                        let row: Vec<String> = (0..n).map(|v| c[u * n + v].to_string()).collect();
                        let _ = writeln!(text, "coloring row {u}: {}", row.join(" "));
                    }
                }
                TargetEvidence::OddCycle(cycle) => {
                    let walk: Vec<String> =
                        cycle.iter().map(|(u, v)| format!("({u},{v})")).collect();
                    let _ = writeln!(text, "odd cycle: {}", walk.join(" "));
                }
            }
            match &threshold {
                ThresholdRecognition::Threshold(rep) => {
                    let a: Vec<String> = rep.weights.iter().map(format_rational).collect();
                    let _ = writeln!(
                        text,
                        "threshold: weights {} t {}",
                        a.join(" "),
                        format_rational(&rep.threshold)
                    );
                }
                ThresholdRecognition::NotThreshold { circuit } => {
                    let _ = writeln!(text, "not threshold: alternating 4-circuit {circuit:?}");
                }
            }
            out.emit(
                text,
                &json!({ "certificate": cert, "threshold": threshold }),
            );
            out.verdict(cert.verdict == TargetVerdict::Target);
        }
        Command::Count {
            graph,
            target,
            weights,
        } => {
            let g = read_graph(graph)?;
            let h = read_target(target)?;
            match weights {
                None => {
                    let c = count_hom(&g, &h)?;
                    out.emit(format!("hom = {c}"), &json!({ "hom": c.to_string() }));
                }
                Some(path) => {
                    let lam = read_weights(path, &h)?;
                    let c = format_rational(&count_hom_weighted(&g, &h, &lam)?);
                    out.emit(format!("weighted hom = {c}"), &json!({ "weighted_hom": c }));
                }
            }
        }
        Command::GtScan {
            target,
            nmax,
            dmax,
            weights,
        } => {
            let h = read_target(target)?;
            let lam = weights.as_ref().map(|p| read_weights(p, &h)).transpose()?;
            let reports = scan_corpus(&h, *nmax, *dmax, lam.as_ref())?;
            let fails = reports
                .iter()
                .filter(|r| r.verdict == Verdict::Fails)
                .count();
            for r in &reports {
                out.emit(gt_text(r), r);
            }
            if out.format == Format::Text {
                out.emit(
                    format!("scanned {} graphs, {fails} FAILS", reports.len()),
                    &(),
                );
            }
            out.verdict(fails == 0);
        }
        Command::StronglyGt {
            target,
            graph,
            nmax,
        } => {
            let h = read_target(target)?;
            let graphs = match graph {
                Some(p) => vec![read_graph(p)?],
                None => {
                    let mut all = Vec::new();
                    for n in 1..=nmax.unwrap_or(5) {
                        all.extend(enumerate_graphs(n)?);
                    }
                    all
                }
            };
            let reports = rayon_map(&graphs, |g| check_strongly_gt(g, &h))?;
            for (g, r) in graphs.iter().zip(&reports) {
                let mut text = format!(
                    "{} hom(GuG,H)={} hom(GxK2,H)={} {}",
                    r.graph_id, r.hom_disjoint, r.hom_crossed, r.verdict
                );
                if r.verdict == Verdict::Fails {
                    text.push('\n');
                    text.push_str(&indent(&simple_graph_to_text(g)));
                }
                out.emit(text, r);
                out.verdict(r.verdict == Verdict::Holds);
            }
        }
        Command::Chromatic {
            graph,
            basis: Basis::Binomial,
        } => {
            let g = read_graph(graph)?;
            let p = chromatic_binomial(&g)?;
            let terms: Vec<String> = p
                .coefficients
                .iter()
                .enumerate()
                .filter(|(_, c)| c.sign() != num_bigint::Sign::NoSign)
                .map(|(i, c)| format!("{c}*binom(q,{i})"))
                .collect();
            let text = format!(
                "P(q) = {}",
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            );
            out.emit(text, &p);
        }
        Command::Dominance { graph, eval } => {
            let g = read_graph(graph)?;
            let points = parse_eval(eval)?;
            let cert = dominance_certificate(&g, &points)?;
            let mut text = format!(
                "top index {} sign {}\nstated bound (2N)^(2N+2) = {}\n",
                cert.top_index.map_or("-".into(), |i| i.to_string()),
                serde_json::to_value(cert.top_sign)
                    .expect("sign")
                    .as_str()
                    .unwrap_or("?"),
                cert.stated_bound,
            );
            if let Some(b) = &cert.proof_bound {
                let _ = writeln!(text, "proof bound = {b}");
            }
            for e in &cert.evaluations {
                let _ = writeln!(text, "q={} difference={}", e.q, e.difference);
            }
            let negative = cert
                .evaluations
                .iter()
                .any(|e| e.sign == homswap::coloring::Sign::Negative);
            out.emit(text, &cert);
            out.verdict(cert.top_sign != homswap::coloring::Sign::Negative && !negative);
        }
        Command::CoefCompare {
            graph,
            cycle_colors,
            samples,
        } => {
            let g = read_graph(graph)?;
            let r = verify_coefficient_compare(&g)?;
            let mut text = format!("N={} t={} strict at i={}\n", r.n, r.odd_girth, r.strict_at);
            for i in 0..r.profiles.disjoint.len() {
                let _ = writeln!(
                    text,
                    "i={i} GuG={} GxK2={}",
                    r.profiles.disjoint[i], r.profiles.crossed[i]
                );
            }
            let _ = writeln!(text, "{}", if r.passed() { "PASS" } else { "FAIL" });
            out.emit(text, &r);
            out.verdict(r.passed());
            if let Some(i) = cycle_colors {
                let c = verify_cycle_violation_bounds(&g, *i, *samples, cli.seed)?;
                let text = format!(
                    "cycle bounds with {i} colours: checked {}+{} colourings, {} failures",
                    c.disjoint.checked,
                    c.crossed.checked,
                    c.disjoint.failures + c.crossed.failures
                );
                out.emit(text, &c);
                out.verdict(c.passed());
            }
        }
        Command::Ehrhart { graph } => {
            let g = read_graph(graph)?;
            let e = ehrhart_interpolate(&g)?;
            let show = |p: &[_]| p.iter().map(format_rational).collect::<Vec<_>>().join(" ");
            let text = format!(
                "even part (ascending): {}\nodd part (ascending): {}\nvolume = {}",
                show(&e.even_part),
                show(&e.odd_part),
                format_rational(&e.leading_coefficient())
            );
            out.emit(text, &e);
        }
        Command::VolumeGt { graph, tau } => {
            let g = read_graph(graph)?;
            let report = match tau {
                None => check_volume_gt(&g)?,
                Some(path) => {
                    let r = weighted_riemann_check(&g, &read_tau(path)?)?;
                    out.emit(
                        format!(
                            "riemann sum at n={} = {}",
                            r.resolution,
                            format_rational(&r.riemann_sum)
                        ),
                        &r,
                    );
                    r.gt
                }
            };
            out.verdict(report.verdict == Verdict::Holds);
            out.emit(gt_text(&report), &report);
        }
        Command::Thresholds { n } => {
            let classes = enumerate_threshold_classes(*n)?;
            for (k, h) in classes.iter().enumerate() {
                let text = format!(
                    "# class {k}, {} loops\n{}",
                    h.loop_count(),
                    target_graph_to_text(h)
                );
                out.emit(text, &json!({ "class": k, "loops": h.loop_count(), "graph": target_graph_to_text(h) }));
            }
        }
        Command::SwapVerify {
            graph,
            target,
            labels,
            mode,
        } => {
            let g = read_graph(graph)?;
            let h = read_target(target)?;
            if let (Some(path), Some(mode)) = (labels, mode) {
                let raw = parse_pair_labels(&read(path)?, g.n()).map_err(Failure::at(path))?;
                let mode = match mode {
                    Mode::Disjoint => LabelingMode::Disjoint,
                    Mode::Crossed => LabelingMode::Crossed,
                };
                let p = PairLabeling::new(&g, &h, raw, mode).map_err(Failure::at(path))?;
                let violated = violated_edges(&p);
                let bsp = has_bsp(&p);
                let mut text = format!(
                    "violated edges: {:?}\nbipartite swapping property: {bsp}\n",
                    violated.edges
                );
                let moved = if bsp {
                    let q = transport(&p)?;
                    let _ = write!(
                        text,
                        "transported ({:?}):\n{}",
                        q.mode(),
                        pair_labels_to_text(q.labels())
                    );
                    Some(q.labels().to_vec())
                } else {
                    None
                };
                out.emit(
                    text,
                    &json!({ "violated": violated, "bsp": bsp, "transported": moved }),
                );
                out.verdict(bsp);
            } else {
                let r = verify_swap_bijection(&g, &h, None)?;
                let text = format!(
                    "hom(GuG,H)={} hom(GxK2,H)={} bsp: {} vs {} image={} injective={} roundtrip={} {}",
                    r.hom_disjoint, r.hom_crossed, r.bsp_disjoint, r.bsp_crossed,
                    r.image_ok, r.injective_ok, r.roundtrip_ok,
                    if r.passed() { "PASS" } else { "FAIL" }
                );
                out.emit(text, &r);
                out.verdict(r.passed());
            }
        }
    }
    Ok(())
}

fn rayon_map<T: Sync, R: Send>(
    items: &[T],
    f: impl Fn(&T) -> homswap::Result<R> + Sync + Send,
) -> Result<Vec<R>, Failure> {
    use rayon::prelude::*;
    Ok(items
        .par_iter()
        .map(f)
        .collect::<homswap::Result<Vec<R>>>()?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let mut out = Output {
        format: cli.format,
        failed: false,
        buf: String::new(),
    };
    let result = run(&cli, &mut out);
    print!("{}", out.buf);
    match result {
        Ok(()) if out.failed => ExitCode::from(1),
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) | Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
