//! `mzt`: motivic zeta functions and monodromy invariants of K3 degenerations.
//!
//! Exit status is 0 on success, 1 for bad input and 2 when a computation
//! completes but the data violates an expected identity.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mzt_core::complex::{self, quartic_vertex_duals, validate, BUILTIN_NAMES};
use mzt_core::monodromy::{
    determine_k, lefschetz_invariants, mirror_check, InvariantPair, KValue, MirrorSide,
};
use mzt_core::series::{expand, render_closed_form};
use mzt_core::triangulation::{newton_polytope_of_pl, simplex_profile, HeightTable};
use mzt_core::zeta::{l_series_oracle, t_invariant};
use mzt_core::{
    unimodular_triangulate, DegenerationComplex, Error, LatticePoint, LatticePolytope, UBasisSeries,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_ORDER: usize = 64;

#[derive(Parser)]
#[command(
    name = "mzt",
    version,
    about = "Motivic zeta functions of toric K3 degenerations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Built-in dataset name (quartic, quartic-mirror) or a JSON file path.
    #[arg(long, conflicts_with = "file")]
    dataset: Option<String>,
    /// JSON file describing a degeneration complex.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Order {
    /// Number of T coefficients to expand.
    #[arg(long, env = "MZT_ORDER", default_value_t = 12, value_parser = parse_order)]
    order: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Sv,
    U,
    Series,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Zeta function of a degeneration.
    Zeta {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "sv")]
        format: Format,
        #[command(flatten)]
        order: Order,
    },
    /// Motivic volume, minus the limit of Z at T = infinity.
    Volume {
        #[command(flatten)]
        source: Source,
    },
    /// Monodromy invariants (t, k), optionally compared across the mirror pair.
    Invariants {
        #[command(flatten)]
        source: Source,
        /// Compare Lefschetz invariants of the quartic with the mirror's (t, k).
        #[arg(long)]
        mirror_check: bool,
        /// Gcd of weights of a tropical cycle; k is a multiple of it.
        #[arg(long)]
        gcd_evidence: Option<u64>,
        /// Pairing of a cycle with a cocycle; k divides it. Repeatable.
        #[arg(long = "pairing", allow_hyphen_values = true)]
        pairings: Vec<i64>,
        /// Polarization `d,e`: d times a primitive class on a degree-e surface.
        #[arg(long, value_parser = parse_polarization)]
        polarization: Option<(u64, u64)>,
    },
    /// Regular subdivision of a quartic facet induced by the bundled heights.
    Subdivide {
        /// Replace every height by this value.
        #[arg(long, allow_hyphen_values = true)]
        uniform_height: Option<i64>,
        /// Replace the heights of the three interior points.
        #[arg(long, allow_hyphen_values = true)]
        interior_height: Option<i64>,
    },
    /// Unimodular triangulation of a polygon.
    Triangulate {
        /// a1..a4, or inline vertices such as "0,0 2,0 0,2".
        #[arg(long, allow_hyphen_values = true)]
        polygon: String,
    },
    /// Newton polytope of the induced function around a vertex of the facet.
    Newton {
        #[arg(long, default_value = "a4")]
        vertex: String,
    },
    /// Check the consistency identities of a degeneration complex.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Coefficients of T^1..T^N of the zeta function, one per line.
    Expand {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        order: Order,
    },
    /// Compare the simplex-profile series with brute-force counts on random polygons.
    Oracle {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        count: usize,
        #[arg(long, default_value_t = 8, value_parser = parse_order)]
        order: usize,
    },
}

fn parse_order(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n == 0 || n > MAX_ORDER {
        return Err(format!("order must be between 1 and {MAX_ORDER}"));
    }
    Ok(n)
}

fn parse_polarization(s: &str) -> Result<(u64, u64), String> {
    let (d, e) = s.split_once(',').ok_or("expected d,e")?;
    let d = d.trim().parse().map_err(|e| format!("{e}"))?;
    let e = e.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((d, e))
}

/// Error type for the binary: an exit code and a message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidComplex(_) | Error::Inconsistent(_) | Error::NonConvex(..) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn violation(message: String) -> Failure {
    Failure { code: 2, message }
}

type CmdResult = Result<(), Failure>;

fn resolve(source: &Source) -> Result<DegenerationComplex, Failure> {
    match (&source.dataset, &source.file) {
        (Some(name), None) if BUILTIN_NAMES.contains(&name.as_str()) => Ok(complex::builtin(name)?),
        (Some(name), None) if Path::new(name).is_file() => Ok(complex::load(name)?),
        (Some(name), None) => Err(Error::UnknownDataset(name.clone()).into()),
        (None, Some(path)) => Ok(complex::load(path)?),
        _ => Err(Failure {
            code: 1,
            message: "one of --dataset or --file is required".into(),
        }),
    }
}

fn require_sv(series: &UBasisSeries) -> CmdResult {
    let sv = mzt_core::series::to_sv_form(series);
    if sv.valid {
        Ok(())
    } else {
        Err(violation(format!(
            "not of canonical K3 shape: {}",
            sv.residual_report
        )))
    }
}

fn cmd_zeta(source: &Source, format: Format, order: usize) -> CmdResult {
    let z = mzt_core::zeta(&resolve(source)?)?;
    match format {
        Format::Sv => match z.t {
            Some(t) => println!("t = {t}; Z = {}", render_closed_form(&z.series)),
            None => println!("Z = {}", render_closed_form(&z.series)),
        },
        Format::U => {
            for (j, c) in z.series.coeffs().iter().enumerate() {
                println!("u^{}: {}", j + 1, c.to_string_factored());
            }
        }
        Format::Series => print_expansion(&z.series, order),
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&z).map_err(|e| Failure {
                    code: 1,
                    message: e.to_string()
                })?
            )
        }
    }
    require_sv(&z.series)
}

fn print_expansion(series: &UBasisSeries, order: usize) {
    for c in expand(series, order) {
        println!("{c}");
    }
}

fn cmd_volume(source: &Source) -> CmdResult {
    let z = mzt_core::zeta(&resolve(source)?)?;
    println!("{}", z.volume.to_string_ascending());
    Ok(())
}

/// Cycle evidence bundled with the built-in datasets.
fn bundled_evidence(name: &str) -> (u64, Vec<i64>) {
    match name {
        // a cycle and a cocycle section meeting once transversally
        "quartic" => (1, vec![1]),
        // a cycle of weight 4 on every edge
        "quartic-mirror" => (4, vec![]),
        _ => (1, vec![]),
    }
}

fn evidence_text(lower: u64, pairings: &[i64]) -> String {
    let mut parts = Vec::new();
    if lower > 1 {
        parts.push(format!("gcd evidence: {lower}"));
    }
    if !pairings.is_empty() {
        let p: Vec<String> = pairings.iter().map(i64::to_string).collect();
        parts.push(format!("pairing evidence: {}", p.join(",")));
    }
    if parts.is_empty() {
        "no evidence".to_string()
    } else {
        parts.join("; ")
    }
}

fn invariant_pair(
    c: &DegenerationComplex,
    lower: Option<u64>,
    pairings: &[i64],
) -> Result<(InvariantPair, String), Failure> {
    let report = validate(c);
    if !report.ok {
        return Err(Error::InvalidComplex(Box::new(report)).into());
    }
    let t = t_invariant(c)?;
    let (mut l, mut p) = bundled_evidence(&c.name);
    if lower.is_some() || !pairings.is_empty() {
        l = lower.unwrap_or(1);
        p = pairings.to_vec();
    }
    let k = determine_k(t, l, &p)?;
    Ok((InvariantPair { t, k }, evidence_text(l, &p)))
}

fn cmd_invariants(
    source: &Source,
    mirror: bool,
    lower: Option<u64>,
    pairings: &[i64],
    polarization: Option<(u64, u64)>,
) -> CmdResult {
    if mirror {
        let side =
            |name: &str, display: &str, pol: Option<(u64, u64)>| -> Result<MirrorSide, Failure> {
                let (pair, _) = invariant_pair(&complex::builtin(name)?, None, &[])?;
                let lefschetz = pol.map(|(d, e)| lefschetz_invariants(d, e)).transpose()?;
                Ok(MirrorSide {
                    name: display.into(),
                    pair,
                    lefschetz,
                })
            };
        // bundled polarization data of the quartic
        let quartic = side("quartic", "quartic", Some(polarization.unwrap_or((4, 4))))?;
        let mirror = side("quartic-mirror", "mirror", None)?;
        let report = mirror_check(&quartic, &mirror)?;
        println!("{report}");
        return if report.ok {
            Ok(())
        } else {
            Err(violation("mirror check failed".into()))
        };
    }
    let c = resolve(source)?;
    let (pair, evidence) = invariant_pair(&c, lower, pairings)?;
    match &pair.k {
        KValue::Determined(k) => println!("t={} k={k} ({evidence})", pair.t),
        KValue::Candidates(_) => println!("t={} k in {} ({evidence})", pair.t, pair.k),
    }
    if let Some((d, e)) = polarization {
        let l = lefschetz_invariants(d, e)?;
        println!("t_check={} k_check={}", l.t_check, l.k_check);
    }
    Ok(())
}

fn cmd_subdivide(uniform: Option<i64>, interior: Option<i64>) -> CmdResult {
    let mut table = HeightTable::facet();
    if let Some(h) = uniform {
        table = table.with_uniform_height(h);
    }
    if let Some(h) = interior {
        table = table.with_interior_height(h);
    }
    let sub = table.subdivide()?;
    let n = sub.cells.len();
    let noun = if n == 1 { "cell" } else { "cells" };
    if sub.all_unimodular {
        println!("{n} {noun}, all unimodular triangles");
    } else {
        let unused: Vec<String> = sub
            .unused
            .iter()
            .map(|&i| table.points[i].to_string())
            .collect();
        if unused.is_empty() {
            println!("{n} {noun}, not all unimodular triangles");
        } else {
            println!(
                "{n} {noun}, not all unimodular triangles; unused points: {}",
                unused.join(" ")
            );
        }
    }
    Ok(())
}

fn parse_polygon(spec: &str) -> Result<LatticePolytope, Failure> {
    if let Some((_, p)) = quartic_vertex_duals().into_iter().find(|(n, _)| *n == spec) {
        return Ok(p);
    }
    let bad = || Failure {
        code: 1,
        message: format!("cannot parse polygon `{spec}`; expected a1..a4 or \"x,y x,y ...\""),
    };
    let mut pts = Vec::new();
    for tok in spec.split_whitespace() {
        let tok = tok.trim_matches(|c| c == '(' || c == ')');
        let (x, y) = tok.split_once(',').ok_or_else(bad)?;
        let x = x.trim().parse().map_err(|_| bad())?;
        let y = y.trim().parse().map_err(|_| bad())?;
        pts.push(LatticePoint::xy(x, y));
    }
    if pts.is_empty() {
        return Err(bad());
    }
    Ok(LatticePolytope::hull_of(&pts)?)
}

fn cmd_triangulate(spec: &str) -> CmdResult {
    let p = parse_polygon(spec)?;
    let t = unimodular_triangulate(&p)?;
    let n = t.triangles.len();
    println!("{n} {}", if n == 1 { "triangle" } else { "triangles" });
    for tri in &t.triangles {
        println!(
            "{} {} {}",
            t.points[tri[0]], t.points[tri[1]], t.points[tri[2]]
        );
    }
    let prof = simplex_profile(&p)?;
    println!(
        "interior simplices: c0={} c1={} c2={}",
        prof.c0, prof.c1, prof.c2
    );
    Ok(())
}

fn cmd_newton(vertex: &str) -> CmdResult {
    // a4 vertices are the interior points of a facet
    let at = match vertex {
        "a4" => LatticePoint::xy(1, 1),
        other => {
            return Err(Failure {
                code: 1,
                message: format!(
                    "vertex type `{other}` is not interior to a facet; only a4 is supported"
                ),
            })
        }
    };
    let table = HeightTable::facet();
    let f = table.star_fan_at(&at)?;
    let p = newton_polytope_of_pl(&f)?;
    let area = p.normalized_area()?;
    let mut matches = Vec::new();
    for (name, q) in quartic_vertex_duals() {
        if p.equal_up_to_translation(&q)? {
            matches.push(name);
        }
    }
    let m = if matches.is_empty() {
        "none".to_string()
    } else {
        matches.join(",")
    };
    println!("{p}; normalized area {area}; matches {m}");
    Ok(())
}

fn cmd_validate(source: &Source) -> CmdResult {
    let report = validate(&resolve(source)?);
    println!("{report}");
    for m in &report.messages {
        eprintln!("{m}");
    }
    if report.ok {
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            message: format!("{} failed validation", report.name),
        })
    }
}

fn cmd_expand(source: &Source, order: usize) -> CmdResult {
    let z = mzt_core::zeta(&resolve(source)?)?;
    print_expansion(&z.series, order);
    Ok(())
}

fn random_polygon(rng: &mut ChaCha8Rng) -> LatticePolytope {
    loop {
        let k = rng.gen_range(3..=8);
        let pts: Vec<LatticePoint> = (0..k)
            .map(|_| LatticePoint::xy(rng.gen_range(-5..=5), rng.gen_range(-5..=5)))
            .collect();
        if let Ok(p) = LatticePolytope::hull_of(&pts) {
            if p.dim() == 2 {
                return p;
            }
        }
    }
}

fn cmd_oracle(seed: u64, count: usize, order: usize) -> CmdResult {
    if order > mzt_core::zeta::ORACLE_MAX_ORDER {
        return Err(Error::Guard(format!(
            "oracle order {order} exceeds {}",
            mzt_core::zeta::ORACLE_MAX_ORDER
        ))
        .into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..count {
        let p = random_polygon(&mut rng);
        let prof = simplex_profile(&p)?;
        let gf = UBasisSeries::from_integers(&[prof.c0 as i64, prof.c1 as i64, prof.c2 as i64]);
        let lhs: Vec<u64> = expand(&gf, order)
            .iter()
            .map(|c| c.coeff(0) as u64)
            .collect();
        if lhs != l_series_oracle(&p, order)? {
            failures.push(p.to_string());
        }
    }
    println!(
        "{}/{count} polygons agree to order {order} (seed {seed})",
        count - failures.len()
    );
    if failures.is_empty() {
        Ok(())
    } else {
        Err(violation(format!("mismatch on: {}", failures.join("; "))))
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Zeta {
            source,
            format,
            order,
        } => cmd_zeta(&source, format, order.order),
        Command::Volume { source } => cmd_volume(&source),
        Command::Invariants {
            source,
            mirror_check,
            gcd_evidence,
            pairings,
            polarization,
        } => cmd_invariants(&source, mirror_check, gcd_evidence, &pairings, polarization),
        Command::Subdivide {
            uniform_height,
            interior_height,
        } => cmd_subdivide(uniform_height, interior_height),
        Command::Triangulate { polygon } => cmd_triangulate(&polygon),
        Command::Newton { vertex } => cmd_newton(&vertex),
        Command::Validate { source } => cmd_validate(&source),
        Command::Expand { source, order } => cmd_expand(&source, order.order),
        Command::Oracle { seed, count, order } => cmd_oracle(seed, count, order),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
