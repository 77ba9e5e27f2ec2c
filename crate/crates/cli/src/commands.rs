//! Command dispatch.
//!
//! Exit codes: 0 for success (and for true verdicts), 1 for mathematical
//! falsity (inequivalent cycles, a nonzero cycle under `zerotest`, a failed
//! product identity), 2 for any input or usage error.
//!
//! Commands that produce a document write it to `--out` when given, else to
//! standard output; side notes go to the diagnostic stream and `--quiet`
//! silences them. Verdict commands print their verdict line to standard
//! output and only write documents when `--out` is present.

use std::fs;
use std::io::{Read, Write};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropint::cycle::{FanCycle, TropicalCycle};
use tropint::intersection::{
    bezout_verify, degree_pairing, delta, numerically_equivalent_sample, rationally_equivalent,
    simplicial_zero_reduction, stable_intersect,
};
use tropint::morphism::translation_witness;
use tropint::polyhedron::HPolyhedron;
use tropint::{rat_from_str, Int, Rat};

use crate::doc::{
    self, cycle_to_document, cycle_to_json, function_to_json, parse_cycle, parse_function,
    parse_map, BezoutDocument, CompletionDocument, ParsedFunction, WitnessDocument,
    FORMAT_VERSION,
};
use crate::plot::{plot_svg, Window};

#[derive(Parser)]
#[command(
    name = "tropint",
    version,
    about = "Exact tropical intersection theory on R^r",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the output document to this file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,
    /// Suppress report lines.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a cycle document parses and balances.
    Validate { cycle: String },
    /// Merge mergeable facets and drop zero weights.
    Normalize { cycle: String },
    /// Sum of two cycles (common refinement, added weights).
    Add { left: String, right: String },
    /// Integer scalar multiple of a cycle.
    Smul {
        #[arg(allow_hyphen_values = true)]
        factor: String,
        cycle: String,
    },
    /// Cartesian product of two cycles.
    Cross { left: String, right: String },
    /// Translate a cycle by a rational vector ("a,b,...").
    Translate {
        cycle: String,
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Divisor of a piecewise affine function on a cycle.
    Divisor { function: String, cycle: String },
    /// Push a cycle forward along an integer affine map.
    Pushforward { map: String, cycle: String },
    /// Pull a function back along an integer affine map.
    Pullback { map: String, function: String },
    /// Stable intersection of two cycles.
    Intersect { left: String, right: String },
    /// Degree of the stable intersection of complementary cycles.
    Pair { left: String, right: String },
    /// Recession fan of a cycle (its rational-equivalence class).
    Recession { cycle: String },
    /// Decide rational equivalence via recession fans.
    Equiv {
        left: String,
        right: String,
        /// Additionally compare degree pairings against this many probes.
        #[arg(long, value_name = "N", default_value_t = 0)]
        probes: usize,
        /// Seed for probe generation.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether a fan cycle is zero by simplicial reduction.
    Zerotest { cycle: String },
    /// Certificate that translating a cycle preserves its class.
    #[command(name = "witness-translate")]
    WitnessTranslate {
        cycle: String,
        /// Coordinate index (zero-based) of the translation direction.
        coordinate: usize,
        /// Nonzero rational translation amount.
        #[arg(allow_hyphen_values = true)]
        shift: String,
    },
    /// Extend a fan cycle to a complete simplicial fan.
    #[command(name = "simplicial-complete")]
    SimplicialComplete { cycle: String },
    /// Verify the recession-fan product identity on a pair of cycles.
    Bezout { left: String, right: String },
    /// Render a plane cycle to SVG.
    Plot {
        cycle: String,
        /// Window as "x0,x1,y0,y1" (default -5,5,-5,5).
        #[arg(long, value_name = "BOX", allow_hyphen_values = true)]
        window: Option<String>,
    },
}

#[derive(Debug)]
struct Failure(String);

type CmdResult = Result<i32, Failure>;

impl From<doc::DocError> for Failure {
    fn from(e: doc::DocError) -> Failure {
        Failure(e.to_string())
    }
}

pub fn run_command(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let stream: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(stream, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure(format!("{path}: {e}")))
    }
}

fn load_cycle(path: &str) -> Result<TropicalCycle, Failure> {
    Ok(parse_cycle(&read_input(path)?).map_err(|e| Failure(format!("{path}: {e}")))?)
}

fn load_fan_cycle(path: &str) -> Result<FanCycle, Failure> {
    let c = load_cycle(path)?;
    FanCycle::try_new(c).map_err(|_| {
        Failure(format!("{path}: not a fan cycle (every facet must be a cone through the origin)"))
    })
}

fn load_function(path: &str) -> Result<ParsedFunction, Failure> {
    Ok(parse_function(&read_input(path)?).map_err(|e| Failure(format!("{path}: {e}")))?)
}

fn load_map(path: &str) -> Result<tropint::IntegerAffineMap, Failure> {
    Ok(parse_map(&read_input(path)?).map_err(|e| Failure(format!("{path}: {e}")))?)
}

fn parse_vector(s: &str, n: usize) -> Result<Vec<Rat>, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(Failure(format!(
            "vector {s:?}: expected {n} comma-separated rationals, found {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| rat_from_str(p).ok_or_else(|| Failure(format!("vector entry {p:?} is not a rational"))))
        .collect()
}

fn parse_int(s: &str) -> Result<Int, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure(format!("{s:?} is not an integer")))
}

fn emit(cli: &Cli, out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure(format!("{path}: {e}"))),
        None => {
            out.write_all(text.as_bytes())
                .map_err(|e| Failure(format!("stdout: {e}")))
        }
    }
}

fn note(cli: &Cli, err: &mut dyn Write, msg: &str) {
    if !cli.quiet {
        let _ = writeln!(err, "{msg}");
    }
}

fn verdict(cli: &Cli, out: &mut dyn Write, msg: &str) {
    if !cli.quiet {
        let _ = writeln!(out, "{msg}");
    }
}

fn describe(c: &TropicalCycle) -> String {
    match c.dim() {
        None => "the zero cycle".to_string(),
        Some(d) => format!("dimension {d}, {} facet(s)", c.facets().len()),
    }
}

/// Probes for `equiv`: translated multiples of coordinate-subspace cycles
/// of the complementary dimension.
fn coordinate_probes(r: usize, k: usize, count: usize, seed: u64) -> Vec<TropicalCycle> {
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for mask in 0u64..(1 << r) {
        if mask.count_ones() as usize == k {
            subsets.push((0..r).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let s = &subsets[rng.gen_range(0..subsets.len())];
            let mut eqs = Vec::new();
            for j in 0..r {
                if !s.contains(&j) {
                    let mut normal = vec![Rat::from_integer(Int::from(0)); r];
                    normal[j] = Rat::from_integer(Int::from(1));
                    let level = Rat::new(Int::from(rng.gen_range(-10i64..=10)), Int::from(2));
                    eqs.push((normal, level));
                }
            }
            let cell = HPolyhedron::from_constraints(r, vec![], eqs);
            let weight = Int::from(rng.gen_range(1i64..=3));
            TropicalCycle::from_weighted_cells(r, vec![(cell, weight)])
                .expect("a single affine subspace is a cycle")
        })
        .collect()
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match &cli.cmd {
        Cmd::Validate { cycle } => {
            let c = load_cycle(cycle)?;
            verdict(cli, out, &format!("valid cycle: {}", describe(&c)));
            Ok(0)
        }
        Cmd::Normalize { cycle } => {
            let c = load_cycle(cycle)?.normalize();
            note(cli, err, &format!("normalized: {}", describe(&c)));
            emit(cli, out, &cycle_to_json(&c))?;
            Ok(0)
        }
        Cmd::Add { left, right } => {
            let c = load_cycle(left)?;
            let d = load_cycle(right)?;
            let sum = c.add(&d).map_err(|e| Failure(e.to_string()))?;
            note(cli, err, &format!("sum: {}", describe(&sum)));
            emit(cli, out, &cycle_to_json(&sum))?;
            Ok(0)
        }
        Cmd::Smul { factor, cycle } => {
            let k = parse_int(factor)?;
            let c = load_cycle(cycle)?.scalar_multiply(&k);
            emit(cli, out, &cycle_to_json(&c))?;
            Ok(0)
        }
        Cmd::Cross { left, right } => {
            let c = load_cycle(left)?;
            let d = load_cycle(right)?;
            let product = c.cross_product(&d);
            note(cli, err, &format!("product: {}", describe(&product)));
            emit(cli, out, &cycle_to_json(&product))?;
            Ok(0)
        }
        Cmd::Translate { cycle, vector } => {
            let c = load_cycle(cycle)?;
            let v = parse_vector(vector, c.ambient_dim())?;
            emit(cli, out, &cycle_to_json(&c.translate(&v)))?;
            Ok(0)
        }
        Cmd::Divisor { function, cycle } => {
            let f = load_function(function)?;
            let c = load_cycle(cycle)?;
            let div = f.piecewise().divisor(&c).map_err(|e| Failure(e.to_string()))?;
            note(cli, err, &format!("divisor: {}", describe(&div)));
            emit(cli, out, &cycle_to_json(&div))?;
            Ok(0)
        }
        Cmd::Pushforward { map, cycle } => {
            let f = load_map(map)?;
            let c = load_cycle(cycle)?;
            let image = f.push_forward(&c).map_err(|e| Failure(e.to_string()))?;
            note(cli, err, &format!("image: {}", describe(&image)));
            emit(cli, out, &cycle_to_json(&image))?;
            Ok(0)
        }
        Cmd::Pullback { map, function } => {
            let m = load_map(map)?;
            let f = load_function(function)?;
            let pulled = match &f {
                ParsedFunction::Polynomial(p) => ParsedFunction::Polynomial(
                    m.pull_back_polynomial(p).map_err(|e| Failure(e.to_string()))?,
                ),
                ParsedFunction::Piecewise(pw) => ParsedFunction::Piecewise(
                    m.pull_back(pw).map_err(|e| Failure(e.to_string()))?,
                ),
            };
            emit(cli, out, &function_to_json(&pulled))?;
            Ok(0)
        }
        Cmd::Intersect { left, right } => {
            let c = load_cycle(left)?;
            let d = load_cycle(right)?;
            let z = stable_intersect(&c, &d).map_err(|e| Failure(e.to_string()))?;
            let mut msg = format!("stable intersection: {}", describe(&z));
            if let Ok(deg) = z.point_degree() {
                msg.push_str(&format!(", degree {deg}"));
            }
            note(cli, err, &msg);
            emit(cli, out, &cycle_to_json(&z))?;
            Ok(0)
        }
        Cmd::Pair { left, right } => {
            let c = load_cycle(left)?;
            let d = load_cycle(right)?;
            let deg = degree_pairing(&c, &d).map_err(|e| Failure(e.to_string()))?;
            let _ = writeln!(out, "{deg}");
            Ok(0)
        }
        Cmd::Recession { cycle } => {
            let c = load_cycle(cycle)?;
            let fan = delta(&c).map_err(|e| Failure(e.to_string()))?;
            note(cli, err, &format!("recession fan: {}", describe(fan.as_cycle())));
            emit(cli, out, &cycle_to_json(fan.as_cycle()))?;
            Ok(0)
        }
        Cmd::Equiv { left, right, probes, seed } => {
            let c = load_cycle(left)?;
            let d = load_cycle(right)?;
            let equivalent =
                rationally_equivalent(&c, &d).map_err(|e| Failure(e.to_string()))?;
            let dc = delta(&c).map_err(|e| Failure(e.to_string()))?;
            verdict(
                cli,
                out,
                &format!(
                    "{}; delta of the left cycle: {}",
                    if equivalent { "equivalent" } else { "not equivalent" },
                    describe(dc.as_cycle())
                ),
            );
            if *probes > 0 {
                let r = c.ambient_dim();
                let dim = c.dim().or(d.dim());
                match dim {
                    Some(k) if c.dim().is_none() || d.dim().is_none() || c.dim() == d.dim() => {
                        let probe_set = coordinate_probes(r, r - k, *probes, *seed);
                        let agree = numerically_equivalent_sample(&c, &d, &probe_set)
                            .map_err(|e| Failure(e.to_string()))?;
                        verdict(
                            cli,
                            out,
                            &format!(
                                "degree pairings {} on {} probe(s)",
                                if agree { "agree" } else { "differ" },
                                probe_set.len()
                            ),
                        );
                    }
                    Some(_) => verdict(
                        cli,
                        out,
                        "probe comparison skipped: the cycles' dimensions differ",
                    ),
                    None => verdict(cli, out, "probe comparison skipped: both cycles are zero"),
                }
            }
            Ok(if equivalent { 0 } else { 1 })
        }
        Cmd::Zerotest { cycle } => {
            let c = load_fan_cycle(cycle)?;
            let zero = simplicial_zero_reduction(&c);
            verdict(
                cli,
                out,
                if zero { "zero: the cycle reduces to nothing" } else { "nonzero" },
            );
            Ok(if zero { 0 } else { 1 })
        }
        Cmd::WitnessTranslate { cycle, coordinate, shift } => {
            let c = load_cycle(cycle)?;
            let mu = rat_from_str(shift)
                .ok_or_else(|| Failure(format!("shift {shift:?} is not a rational")))?;
            let w = translation_witness(&c, *coordinate, &mu)
                .map_err(|e| Failure(e.to_string()))?;
            let verified = w.verify();
            if cli.out.is_some() {
                let document = WitnessDocument {
                    format_version: FORMAT_VERSION.to_string(),
                    cylinder: cycle_to_document(&w.cylinder),
                    projection: doc::map_to_document(&w.projection),
                    function: doc::function_to_document(&ParsedFunction::Piecewise(
                        w.function.clone(),
                    )),
                    difference: cycle_to_document(&w.difference),
                    verified,
                };
                let mut text =
                    serde_json::to_string_pretty(&document).expect("serializable");
                text.push('\n');
                emit(cli, out, &text)?;
            }
            verdict(
                cli,
                out,
                &format!(
                    "witness {}: pushed divisor {} the translate difference",
                    if verified { "verified" } else { "FAILED" },
                    if verified { "equals" } else { "differs from" }
                ),
            );
            Ok(if verified { 0 } else { 1 })
        }
        Cmd::SimplicialComplete { cycle } => {
            let c = load_fan_cycle(cycle)?;
            let completion = c.complete_to_simplicial();
            let document = CompletionDocument {
                format_version: FORMAT_VERSION.to_string(),
                fan_cells: doc::fan_cells_to_docs(&completion.fan),
                cycle: cycle_to_document(completion.cycle.as_cycle()),
            };
            note(
                cli,
                err,
                &format!(
                    "complete simplicial fan with {} maximal cone(s)",
                    completion.fan.maximal_cells().len()
                ),
            );
            let mut text = serde_json::to_string_pretty(&document).expect("serializable");
            text.push('\n');
            emit(cli, out, &text)?;
            Ok(0)
        }
        Cmd::Bezout { left, right } => {
            let c = load_cycle(left)?;
            let d = load_cycle(right)?;
            let report = bezout_verify(&c, &d).map_err(|e| Failure(e.to_string()))?;
            if cli.out.is_some() {
                let document = BezoutDocument {
                    format_version: FORMAT_VERSION.to_string(),
                    holds: report.holds,
                    lhs: cycle_to_document(report.lhs.as_cycle()),
                    rhs: cycle_to_document(report.rhs.as_cycle()),
                };
                let mut text = serde_json::to_string_pretty(&document).expect("serializable");
                text.push('\n');
                emit(cli, out, &text)?;
            }
            verdict(
                cli,
                out,
                &format!(
                    "product identity {}: recession of the intersection is {}; intersection of the recessions is {}",
                    if report.holds { "holds" } else { "FAILS" },
                    describe(report.lhs.as_cycle()),
                    describe(report.rhs.as_cycle())
                ),
            );
            Ok(if report.holds { 0 } else { 1 })
        }
        Cmd::Plot { cycle, window } => {
            let c = load_cycle(cycle)?;
            let w = match window {
                None => Window::default_square(),
                Some(spec) => {
                    let v = parse_vector(spec, 4)?;
                    Window::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
                        .map_err(|e| Failure(e.to_string()))?
                }
            };
            let svg = plot_svg(&c, &w).map_err(|e| Failure(e.to_string()))?;
            emit(cli, out, &svg)?;
            Ok(0)
        }
    }
}
