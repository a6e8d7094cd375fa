//! `qcanon`: command-line front end for the canonical-basis engine.
//!
//! Every command prints one JSON document (or CSV for tables with
//! `--format csv`). Exit status: 1 for invalid input, 2 when a requested
//! coefficient is not certified by the wider window, 3 when an internal
//! identity fails.

mod cache;

use anyhow::{anyhow, Context, Result};
use cache::Cache;
use clap::{Args, Parser, Subcommand, ValueEnum};
use qcanon_core::barinv::{self, BarTable};
use qcanon_core::canbasis::{self, CoeffTable, Kind};
use qcanon_core::grothendieck::{self, Direction, TiltingFlavor};
use qcanon_core::quantumrep::{Cartan, CartanType};
use qcanon_core::superchar::{self, EulerRoute};
use qcanon_core::wedge::{self, Comparison, Relations};
use qcanon_core::weights::window_tuples;
use qcanon_core::{Error as CoreError, Exec, Lattice, SparseVector, WeightTuple};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "qcanon", version, about = "Canonical bases, Kazhdan-Lusztig polynomials and super characters")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Directory for cached results.
    #[arg(long, env = "QCANON_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Emit coefficients that still move when the window is widened.
    #[arg(long, global = true)]
    allow_provisional: bool,
    /// How much wider the certifying window is.
    #[arg(long, default_value_t = 1, global = true)]
    margin: u32,
    /// Run every kernel on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bar involution of one monomial.
    Bar {
        #[arg(long, value_parser = parse_cartan)]
        cartan: CartanType,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        cutoff: u32,
    },
    /// Canonical (t) or dual canonical (l) columns, or a whole table.
    Canon {
        #[arg(long, value_parser = parse_cartan)]
        cartan: CartanType,
        #[arg(long)]
        n: usize,
        /// Column to compute; the whole window when omitted.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        cutoff: u32,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Canonical basis of the type C q-wedge.
    Wedge {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cutoff: u32,
        #[arg(long, value_enum, default_value_t = WedgeRoute::Projection)]
        route: WedgeRoute,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Euler character, or irreducible character with `--irreducible`.
    Char {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = CharRoute::Schur)]
        route: CharRoute,
        #[arg(long)]
        irreducible: bool,
        /// Window for the irreducible character.
        #[arg(long)]
        cutoff: Option<u32>,
    },
    /// Grothendieck-group computations.
    Kgroup {
        #[command(subcommand)]
        cmd: KCommand,
    },
    /// Search t-columns for negative coefficients, widening the window.
    ScanPositivity {
        #[arg(long, value_parser = parse_cartan)]
        cartan: CartanType,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        from: u32,
        #[arg(long)]
        to: u32,
        /// Recompute the witness one window wider.
        #[arg(long)]
        certify: bool,
    },
    /// Cross-type and cross-route identities.
    Compare {
        #[arg(long, value_enum)]
        route: CompareRoute,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cutoff: u32,
    },
    /// Regenerate the golden files.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum KCommand {
    /// Translation functor on a Verma class.
    Translate {
        #[arg(long)]
        i: i32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum)]
        dir: DirArg,
    },
    /// Check every translation on a window against the divided powers.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cutoff: u32,
        #[arg(long, default_value_t = 2)]
        max_i: i32,
        #[arg(long, default_value_t = 2)]
        max_r: u32,
    },
    /// Conjectural tilting character in the Verma basis.
    Tilting {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        cutoff: u32,
    },
    /// Conjectural irreducible character on the mixed lattice.
    IrreducibleMixed {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        cutoff: u32,
    },
    /// Partition of a window into blocks.
    Blocks {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cutoff: u32,
        #[arg(long, value_enum, default_value_t = LatticeArg::Half)]
        lattice: LatticeArg,
    },
}

/// `t` or `l`; with `--cartan A` on half-integer weights these are the
/// sector bases.
#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    T,
    L,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum WedgeRoute {
    Projection,
    Inversion,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CharRoute {
    Alternating,
    Schur,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CompareRoute {
    AVsC,
    AVsB,
    WedgeRoutes,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DirArg {
    E,
    F,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LatticeArg {
    Half,
    Int,
}

/// Failures that carry their own exit status.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Violation(String),
}

fn parse_cartan(s: &str) -> Result<CartanType, String> {
    s.parse().map_err(|e: CoreError| e.to_string())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<CoreError>() {
        return match e {
            CoreError::InvalidWeight(_) | CoreError::Incompatible(_) | CoreError::WindowEscape { .. } => 1,
            CoreError::Uncertified(_) => 2,
            CoreError::NotDivisible(_) | CoreError::NonTriangular(_) | CoreError::Invariant(_) => 3,
        };
    }
    match err.downcast_ref::<CliError>() {
        Some(CliError::Violation(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qcanon: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    let exec = if g.sequential { Exec::Sequential } else { Exec::default() };
    if let Command::Fixtures { dir } = &cli.cmd {
        let written = fixtures(dir, exec)?;
        return emit(g, json!({ "written": written }).to_string().into_bytes());
    }
    let cache = g.cache_dir.as_deref().map(Cache::new).transpose()?;
    let key = Cache::key(&request(cli));
    if let Some(bytes) = cache.as_ref().and_then(|c| c.get(&key)) {
        return emit(g, bytes);
    }
    let bytes = execute(cli, exec)?;
    if let Some(c) = &cache {
        c.put(&key, &bytes)?;
    }
    emit(g, bytes)
}

fn emit(g: &Global, bytes: Vec<u8>) -> Result<()> {
    match &g.out {
        Some(p) => std::fs::write(p, &bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Normalized description of the job, used as the cache key.
fn request(cli: &Cli) -> Value {
    json!({
        "cmd": format!("{:?}", cli.cmd),
        "allow_provisional": cli.global.allow_provisional,
        "margin": cli.global.margin,
    })
}

fn weight(s: &str, n: usize) -> Result<WeightTuple> {
    let la: WeightTuple = s.parse()?;
    if la.n() != n {
        return Err(CliError::Invalid(format!("λ = {la} has {} entries, --n is {n}", la.n())).into());
    }
    Ok(la)
}

/// Checks the requested type against the lattice of `λ`; returns whether
/// the sector involution is meant.
fn type_matches(ty: CartanType, la: &WeightTuple) -> Result<bool> {
    let sector = match (ty, la.lattice()) {
        (CartanType::C, Lattice::HalfInt) | (CartanType::B, Lattice::Int) => false,
        (CartanType::A, Lattice::HalfInt) => true,
        (CartanType::A | CartanType::AMixed, Lattice::Mixed { .. }) => false,
        _ => return Err(CliError::Invalid(format!("type {ty} does not act on λ = {la}")).into()),
    };
    Ok(sector)
}

fn json_line(v: &impl serde::Serialize) -> Result<Vec<u8>> {
    let mut s = serde_json::to_string(v)?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn column_json(v: &SparseVector<WeightTuple>, provisional: &dyn Fn(&WeightTuple) -> bool) -> Vec<Value> {
    v.iter()
        .map(|(mu, c)| {
            let mut e = json!({ "weight": mu, "poly": c });
            if provisional(mu) {
                e["provisional"] = json!(true);
            }
            e
        })
        .collect()
}

fn csv(table: &CoeffTable) -> Vec<u8> {
    let mut s = String::from("mu,la,poly,provisional\n");
    for ((mu, la), p) in &table.entries {
        s.push_str(&format!("\"{mu}\",\"{la}\",\"{p}\",{}\n", !table.is_certified(mu, la)));
    }
    s.into_bytes()
}

/// Drops provisional entries unless they were asked for.
fn publish(mut table: CoeffTable, allow: bool) -> (CoeffTable, usize) {
    let n = table.provisional.len();
    if !allow {
        let prov = std::mem::take(&mut table.provisional);
        table.entries.retain(|k, _| !prov.contains(k));
    }
    (table, n)
}

fn table_output(table: CoeffTable, format: Format, allow: bool) -> Result<Vec<u8>> {
    let (table, moved) = publish(table, allow);
    match format {
        Format::Csv => Ok(csv(&table)),
        Format::Json => {
            let mut v = serde_json::to_value(&table)?;
            if !allow {
                v["omitted_provisional"] = json!(moved);
            }
            json_line(&v)
        }
    }
}

fn single_column(sector: bool, positive: bool, la: &WeightTuple, k: u32, exec: Exec) -> Result<SparseVector<WeightTuple>> {
    Ok(match (sector, positive) {
        (false, true) => canbasis::canonical_t(la, k, exec)?,
        (false, false) => canbasis::dual_canonical_l(la, k, exec)?,
        (true, true) => canbasis::canonical_t_sector(la, k, exec)?,
        (true, false) => canbasis::dual_canonical_l_sector(la, k, exec)?,
    })
}

fn execute(cli: &Cli, exec: Exec) -> Result<Vec<u8>> {
    let g = &cli.global;
    match &cli.cmd {
        Command::Bar { cartan, n, lambda, cutoff } => {
            let la = weight(lambda, *n)?;
            let sector = type_matches(*cartan, &la)?;
            let e = if sector { barinv::bar_sector(&la, *cutoff, exec)? } else { barinv::bar_tensor(&la, *cutoff, exec)? };
            let wider = if sector {
                barinv::bar_sector(&la, cutoff + g.margin, exec)?
            } else {
                barinv::bar_tensor(&la, cutoff + g.margin, exec)?
            };
            let wide = barinv::truncate(&wider.image, *cutoff);
            let prov = |mu: &WeightTuple| wide.get(mu) != e.image.get(mu);
            if !g.allow_provisional && e.image.keys().chain(wide.keys()).any(prov) {
                return Err(CoreError::Uncertified(format!("ψ(M_{la}) moves at cutoff {}", cutoff + g.margin)).into());
            }
            json_line(&json!({
                "type": cartan.to_string().to_uppercase(),
                "lambda": la,
                "cutoff": cutoff,
                "image": column_json(&e.image, &prov),
            }))
        }
        Command::Canon { cartan, n, lambda, cutoff, kind, format } => {
            let positive = matches!(kind, KindArg::T);
            match lambda {
                Some(s) => {
                    let la = weight(s, *n)?;
                    let sector = type_matches(*cartan, &la)?;
                    let col = single_column(sector, positive, &la, *cutoff, exec)?;
                    let wide = barinv::truncate(&single_column(sector, positive, &la, cutoff + g.margin, exec)?, *cutoff);
                    let prov = |mu: &WeightTuple| wide.get(mu) != col.get(mu);
                    let moved: Vec<&WeightTuple> = col.keys().chain(wide.keys()).filter(|m| prov(m)).collect();
                    if !g.allow_provisional && !moved.is_empty() {
                        return Err(CoreError::Uncertified(format!(
                            "column {la} moves at cutoff {} (e.g. at {}); widen the window or pass --allow-provisional",
                            cutoff + g.margin,
                            moved[0]
                        ))
                        .into());
                    }
                    let kind = match (cartan, positive) {
                        (CartanType::A | CartanType::AMixed, true) => Kind::TSector,
                        (CartanType::A | CartanType::AMixed, false) => Kind::LSector,
                        (_, true) => Kind::T,
                        (_, false) => Kind::L,
                    };
                    let mut v = json!({
                        "kind": kind,
                        "type": cartan.to_string().to_uppercase(),
                        "n": n,
                        "cutoff": cutoff,
                        "lambda": la,
                        "column": column_json(&col, &prov),
                    });
                    if *cartan == CartanType::B {
                        v["normalization"] = json!(if positive { "N" } else { "M" });
                    }
                    json_line(&v)
                }
                None => {
                    if *cartan == CartanType::AMixed {
                        return Err(CliError::Invalid("whole mixed tables need --lambda to fix l".into()).into());
                    }
                    let table = canbasis::certified_table(Cartan::new(*cartan, *cutoff), *n, *n, positive, exec)?;
                    table_output(table, *format, g.allow_provisional)
                }
            }
        }
        Command::Wedge { n, cutoff, route, lambda, format } => {
            let build = |k: u32| -> Result<CoeffTable> {
                let c = Cartan::new(CartanType::C, k);
                Ok(match route {
                    WedgeRoute::Projection => {
                        let t = canbasis::solve_table(&BarTable::new(c, *n, *n, exec)?, true, exec)?;
                        wedge::wedge_u_projection(&t, Relations::C, exec)?
                    }
                    WedgeRoute::Inversion => {
                        let l = canbasis::solve_table(&BarTable::new(c, *n, *n, exec)?, false, exec)?;
                        wedge::wedge_u_inversion(&l)?
                    }
                })
            };
            let mut u = build(*cutoff)?;
            u.certify_against(&build(cutoff + g.margin)?);
            if let Some(s) = lambda {
                let la = weight(s, *n)?;
                if !la.is_wedge_dominant() || la.lattice() != Lattice::HalfInt {
                    return Err(CliError::Invalid(format!("{la} is not a dominant half-integer weight")).into());
                }
                let col = u.column(&la);
                if col.is_empty() {
                    return Err(CoreError::WindowEscape { needed: la.min_cutoff() }.into());
                }
                let prov = |mu: &WeightTuple| !u.is_certified(mu, &la);
                if !g.allow_provisional && col.keys().any(prov) {
                    return Err(CoreError::Uncertified(format!("u-column {la}")).into());
                }
                return json_line(&json!({
                    "kind": Kind::U,
                    "type": "C",
                    "n": n,
                    "cutoff": cutoff,
                    "lambda": la,
                    "column": column_json(&col, &prov),
                }));
            }
            table_output(u, *format, g.allow_provisional)
        }
        Command::Char { n, lambda, route, irreducible, cutoff } => {
            let la = weight(lambda, *n)?;
            if !irreducible {
                let r = match route {
                    CharRoute::Alternating => EulerRoute::AlternatingSum,
                    CharRoute::Schur => EulerRoute::SchurProduct,
                };
                return json_line(&superchar::euler_character(&la, r)?);
            }
            let k = cutoff.unwrap_or(la.min_cutoff() + 1);
            let (l, u) = certified_l_u(*n, k, g.margin, exec)?;
            json_line(&superchar::irreducible_character(&la, &l, &u, g.allow_provisional)?)
        }
        Command::Kgroup { cmd } => kgroup(cmd, g, exec),
        Command::ScanPositivity { cartan, n, from, to, certify } => {
            if from > to {
                return Err(CliError::Invalid("--from exceeds --to".into()).into());
            }
            json_line(&canbasis::positivity_search(*cartan, *n, *from, *to, *certify, exec)?)
        }
        Command::Compare { route, n, cutoff } => {
            let cmps: Vec<(&str, Comparison)> = match route {
                CompareRoute::AVsC => vec![("u^a = u", wedge::compare_a_vs_c(*n, *cutoff, exec)?)],
                CompareRoute::AVsB => {
                    let (u, l) = wedge::compare_a_vs_b(*n, *cutoff, exec)?;
                    vec![("u(t^2) = u#(t)", u), ("l(t^2) = l#(t)", l)]
                }
                CompareRoute::WedgeRoutes => {
                    let w = wedge::wedge_tables(*n, *cutoff, exec)?;
                    let same = |x: &WeightTuple| Some(x.clone());
                    vec![
                        ("inversion in projection", wedge::compare_tables(&w.u_c_inversion, &w.u_c_projection, same, Clone::clone)),
                        ("projection in inversion", wedge::compare_tables(&w.u_c_projection, &w.u_c_inversion, same, Clone::clone)),
                    ]
                }
            };
            let equal = cmps.iter().all(|(_, c)| c.equal());
            let v = json!({
                "route": format!("{route:?}"),
                "n": n,
                "cutoff": cutoff,
                "verdict": if equal { "EQUAL" } else { "DIFFERENT" },
                "checks": cmps.iter().map(|(name, c)| json!({
                    "identity": name,
                    "compared": c.compared,
                    "mismatches": c.mismatches.iter().map(|(mu, la, want, got)| json!({
                        "mu": mu, "la": la, "expected": want, "got": got,
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            let bytes = json_line(&v)?;
            if !equal {
                emit(g, bytes)?;
                return Err(CliError::Violation(format!("{route:?}: identity fails")).into());
            }
            Ok(bytes)
        }
        Command::Fixtures { .. } => unreachable!("handled before the cache"),
    }
}

/// Type C `ℓ` and `u` tables on window `k`, certified against `k + margin`.
fn certified_l_u(n: usize, k: u32, margin: u32, exec: Exec) -> Result<(CoeffTable, CoeffTable)> {
    let solve = |k: u32, positive: bool| -> Result<CoeffTable> {
        Ok(canbasis::solve_table(&BarTable::new(Cartan::new(CartanType::C, k), n, n, exec)?, positive, exec)?)
    };
    let mut l = solve(k, false)?;
    l.certify_against(&solve(k + margin, false)?);
    let mut u = wedge::wedge_u_projection(&solve(k, true)?, Relations::C, exec)?;
    u.certify_against(&wedge::wedge_u_projection(&solve(k + margin, true)?, Relations::C, exec)?);
    Ok((l, u))
}

fn certified_for(la: &WeightTuple, k: u32, margin: u32, positive: bool, exec: Exec) -> Result<CoeffTable> {
    let mut t = grothendieck::conjectural_table(la, k, positive, exec)?;
    if margin != 1 {
        let (cartan, l) = barinv::cartan_for(la, false, k + margin)?;
        let wide = canbasis::solve_table(&BarTable::new(cartan, la.n(), l, exec)?, positive, exec)?;
        t.provisional.clear();
        t.certify_against(&wide);
    }
    Ok(t)
}

fn kgroup(cmd: &KCommand, g: &Global, exec: Exec) -> Result<Vec<u8>> {
    match cmd {
        KCommand::Translate { i, r, lambda, dir } => {
            let la: WeightTuple = lambda.parse()?;
            let d = match dir {
                DirArg::E => Direction::E,
                DirArg::F => Direction::F,
            };
            let rep = grothendieck::translation_report(*i, *r, &la, d)?;
            if !rep.ok() {
                return Err(CliError::Violation(rep.failures.join("; ")).into());
            }
            json_line(&json!({
                "verma": grothendieck::translate_verma(*i, *r, &la, d)?,
                "euler": if la.is_strictly_decreasing() { Some(grothendieck::translate_euler_lemma(*i, *r, &la, d)?) } else { None },
                "check": rep,
            }))
        }
        KCommand::Verify { n, cutoff, max_i, max_r } => {
            let (verma, euler, failures) = grothendieck::verify_translation_window(*n, *cutoff, *max_i, *max_r, exec)?;
            let v = json!({
                "n": n, "cutoff": cutoff, "verma_checked": verma, "euler_checked": euler,
                "verdict": if failures.is_empty() { "EQUAL" } else { "DIFFERENT" },
                "failures": failures,
            });
            if !failures.is_empty() {
                emit(g, json_line(&v)?)?;
                return Err(CliError::Violation("translation identities fail".into()).into());
            }
            json_line(&v)
        }
        KCommand::Tilting { lambda, cutoff } => {
            let la: WeightTuple = lambda.parse()?;
            let flavor = match la.lattice() {
                Lattice::HalfInt => TiltingFlavor::CHalfInt,
                Lattice::Mixed { .. } => TiltingFlavor::AMixed,
                Lattice::Int => return Err(CliError::Invalid("no tilting formula on the integer lattice".into()).into()),
            };
            let t = certified_for(&la, *cutoff, g.margin, true, exec)?;
            json_line(&grothendieck::conjectural_tilting(&la, flavor, &t, g.allow_provisional)?)
        }
        KCommand::IrreducibleMixed { lambda, cutoff } => {
            let la: WeightTuple = lambda.parse()?;
            let l = certified_for(&la, *cutoff, g.margin, false, exec)?;
            json_line(&grothendieck::conjectural_irreducible_mixed(&la, &l, g.allow_provisional)?)
        }
        KCommand::Blocks { n, cutoff, lattice } => {
            let lat = match lattice {
                LatticeArg::Half => Lattice::HalfInt,
                LatticeArg::Int => Lattice::Int,
            };
            let parts = grothendieck::block_partition(lat, *n, *cutoff);
            json_line(&parts.iter().map(|(b, ws)| json!({ "block": b, "weights": ws })).collect::<Vec<_>>())
        }
    }
}

/// Golden files: the type C rank-two example on window 5, small Euler
/// characters and a translation check.
fn fixtures(dir: &Path, exec: Exec) -> Result<Vec<String>> {
    let root = dir.join(format!("v{}", env!("CARGO_PKG_VERSION")));
    std::fs::create_dir_all(&root)?;
    let mut written = Vec::new();
    let mut put = |name: &str, bytes: Vec<u8>| -> Result<()> {
        let p = root.join(name);
        std::fs::write(&p, bytes)?;
        written.push(p.display().to_string());
        Ok(())
    };
    let c = Cartan::new(CartanType::C, 5);
    let bar = BarTable::new(c, 2, 2, exec)?;
    let t = canbasis::solve_table(&bar, true, exec)?;
    let l = canbasis::solve_table(&bar, false, exec)?;
    let mut images = Vec::new();
    for la in window_tuples(Lattice::HalfInt, 2, 5) {
        images.push(json!({ "lambda": la, "image": column_json(&bar.column(&la)?, &|_| false) }));
    }
    put("c2_k5_bar.json", json_line(&images)?)?;
    put("c2_k5_t.json", json_line(&t)?)?;
    put("c2_k5_l.json", json_line(&l)?)?;
    let mut chars = Vec::new();
    for n in 1..=3 {
        for la in window_tuples(Lattice::HalfInt, n, 3).into_iter().filter(|la| la.is_strictly_decreasing()) {
            chars.push(json!({ "lambda": la, "euler": superchar::euler_character(&la, EulerRoute::SchurProduct)? }));
        }
    }
    put("euler_n3_k3.json", json_line(&chars)?)?;
    let (verma, euler, failures) = grothendieck::verify_translation_window(2, 3, 2, 2, exec)?;
    if !failures.is_empty() {
        return Err(anyhow!("translation identities fail while writing fixtures: {}", failures[0]));
    }
    put("translation_n2_k3.json", json_line(&json!({ "verma_checked": verma, "euler_checked": euler }))?)?;
    Ok(written)
}
