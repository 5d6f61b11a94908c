use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use h7alg::exactfield::Rat;
use h7alg::exec::Exec;
use h7alg::kleinmoduli::{equational_point, grass_membership, psi, surface_betti, surface_hilbert, surface_ideal, Coeff, GrassPoint, KleinError};
use h7alg::polylin::Matrix;
use h7alg::veritool::{verify, Suite, VerifyConfig};
use serde_json::json;

#[derive(Parser)]
#[command(name = "veritool", version, about = "Batch verifier for Heisenberg-invariant surface ideals in P6")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// q or fp:<prime>; resolutions default to fp:31, everything else to q.
    #[arg(long, global = true, value_parser = parse_coeff)]
    coeff: Option<Coeff>,
    #[arg(long = "budget-degree", global = true, default_value_t = 8)]
    budget_degree: u32,
    /// Also write the result as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[arg(long, global = true)]
    quiet: bool,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite: appendix, syzygy, moduli or all.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Check this parameter point instead of sampled ones.
        #[arg(long, value_parser = parse_point)]
        t: Option<Coords>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        alphas: usize,
        /// Record elapsed milliseconds (reports stop being byte-identical).
        #[arg(long)]
        timings: bool,
    },
    /// Generate the 21 cubics of the surface at t.
    Surface {
        #[arg(long, value_parser = parse_point)]
        t: Coords,
        /// Also compute the graded Betti table.
        #[arg(long)]
        betti: bool,
        /// Write <OUT>.json and a plain generator list <OUT>.gens.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership of a 3-space of L in the Grassmannian of η_klein.
    #[command(group(ArgGroup::new("point").required(true).args(["t", "raw", "equational"])))]
    Grassmann {
        #[arg(long, value_parser = parse_point)]
        t: Option<Coords>,
        /// 21 comma-separated entries of a 3×7 matrix, row by row.
        #[arg(long, value_parser = parse_raw)]
        raw: Option<Coords>,
        #[arg(long)]
        equational: bool,
    },
}

/// Comma-separated rationals, kept as one clap value.
#[derive(Clone, Debug)]
struct Coords(Vec<Rat>);

fn parse_rats(s: &str) -> Result<Vec<Rat>, String> {
    s.split(',').map(|x| x.trim().parse::<Rat>().map_err(|e| format!("{x:?}: {e}"))).collect()
}

fn parse_point(s: &str) -> Result<Coords, String> {
    let v = parse_rats(s)?;
    if v.len() != 4 {
        return Err(format!("expected four coordinates, got {}", v.len()));
    }
    Ok(Coords(v))
}

fn parse_raw(s: &str) -> Result<Coords, String> {
    let v = parse_rats(s)?;
    if v.len() != 21 {
        return Err(format!("expected 21 entries, got {}", v.len()));
    }
    Ok(Coords(v))
}

fn parse_coeff(s: &str) -> Result<Coeff, String> {
    s.parse().map_err(|e: KleinError| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: h7alg::veritool::VeriError| e.to_string())
}

type CmdResult = Result<bool, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Exec::Seq } else { Exec::default() };
    let res = match &cli.cmd {
        Cmd::Verify { suite, t, samples, alphas, timings } => {
            let cfg = VerifyConfig {
                seed: cli.seed,
                coeff: cli.coeff,
                budget_degree: cli.budget_degree,
                samples: *samples,
                alphas: *alphas,
                t: t.as_ref().map(|c| c.0.clone()),
                timings: *timings,
                exec,
                ..Default::default()
            };
            run_verify(&cli, *suite, cfg)
        }
        Cmd::Surface { t, betti, out } => run_surface(&cli, &t.0, *betti, out.as_ref(), exec),
        Cmd::Grassmann { t, raw, equational } => run_grassmann(&cli, t.as_ref().map(|c| &c.0), raw.as_ref().map(|c| &c.0), *equational),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, value: &serde_json::Value, text: &str) -> Result<(), Box<dyn std::error::Error>> {
    if let Some(p) = &cli.json {
        fs::write(p, serde_json::to_string_pretty(value)? + "\n")?;
    }
    if !cli.quiet {
        println!("{text}");
    }
    Ok(())
}

fn run_verify(cli: &Cli, suite: Suite, cfg: VerifyConfig) -> CmdResult {
    let report = verify(suite, cfg);
    if let Some(p) = &cli.json {
        fs::write(p, report.to_json()?)?;
    }
    if !cli.quiet {
        println!("{report}");
    }
    Ok(report.passed())
}

fn run_surface(cli: &Cli, t: &[Rat], betti: bool, out: Option<&PathBuf>, exec: Exec) -> CmdResult {
    let s = surface_ideal(t)?;
    let hilbert = surface_hilbert(&s, cli.coeff.unwrap_or(Coeff::Rational), 4, exec)?;
    let hf_ok = hilbert == [1, 7, 28, 63, 112];
    let mut provenance = vec![("21 independent cubics".to_string(), !s.is_degenerate()), ("HF 1 7 28 63 112".to_string(), hf_ok)];
    let mut text = format!("t = {:?}\n{}HF(0..4) = {hilbert:?}", s.t.iter().map(|c| c.to_string()).collect::<Vec<_>>(), s.plain_list());
    let mut betti_json = serde_json::Value::Null;
    let mut ok = hf_ok && !s.is_degenerate();
    if betti {
        let coeff = cli.coeff.unwrap_or(Coeff::Prime(31));
        let b = surface_betti(t, coeff, cli.budget_degree, exec)?;
        text.push_str(&format!("\nBetti table over {coeff} (degrees <= {}):\n{}", cli.budget_degree, b.table));
        provenance.push(("Betti table as expected".into(), b.matches_expected));
        provenance.push(("alternating sums match Hilbert numerator".into(), b.alternating_sum_ok));
        ok &= b.matches_expected && b.alternating_sum_ok;
        betti_json = serde_json::to_value(&b)?;
    }
    let export = s.export(provenance);
    if let Some(stem) = out {
        fs::write(stem.with_extension("json"), serde_json::to_string_pretty(&export)? + "\n")?;
        fs::write(stem.with_extension("gens"), s.plain_list())?;
    }
    emit(cli, &json!({ "surface": export, "hilbert": hilbert, "betti": betti_json }), &text)?;
    Ok(ok)
}

fn run_grassmann(cli: &Cli, t: Option<&Vec<Rat>>, raw: Option<&Vec<Rat>>, equational: bool) -> CmdResult {
    let (label, e) = if let Some(t) = t {
        (format!("psi{:?}", t.iter().map(|c| c.to_string()).collect::<Vec<_>>()), psi(&(), t)?)
    } else if let Some(v) = raw {
        let rows = v.chunks(7).map(|r| r.to_vec()).collect();
        ("raw".to_string(), GrassPoint::new(Matrix::from_rows(&(), rows)?)?)
    } else {
        debug_assert!(equational);
        ("equational point".to_string(), equational_point::<Rat>(&()))
    };
    let m = grass_membership(&e)?;
    let values: Vec<String> = m.values.iter().map(|c| c.to_string()).collect();
    let text = format!("{label}: membership {}\ncontractions: {}", if m.holds { "holds" } else { "fails" }, values.join(" "));
    emit(cli, &json!({ "point": label, "holds": m.holds, "values": values }), &text)?;
    Ok(m.holds)
}
