use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use homocalc::chainmaps::{chain_map, induced_homology_map};
use homocalc::cocycles::{h1_via_cocycles, h2_via_cocycles};
use homocalc::functors::{budget_from_env, check_feasible, poincare_dims, HomologyRecord};
use homocalc::resolutions::verify_resolution;
use homocalc::{
    group_cohomology, group_homology, AbelianInvariants, Coefficients, Error, FiniteGroup, GroupExpr, GroupHom,
    Resolution, ResolutionChoice, ResolutionKind,
};

/// Exact homology and cohomology of finite groups.
#[derive(Parser)]
#[command(name = "homocalc", version)]
struct Cli {
    /// Print JSON records on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Coeffs {
    /// Z, Z/m or Z/m^r (trivial action).
    #[arg(long, default_value = "Z")]
    coeff: String,
    /// auto, bar, nbar, homog or cyclic.
    #[arg(long = "res", default_value = "auto")]
    res: String,
}

#[derive(Subcommand)]
enum Command {
    /// H_n(G, A)
    Homology {
        group: String,
        n: usize,
        #[command(flatten)]
        opts: Coeffs,
    },
    /// H^n(G, A)
    Cohomology {
        group: String,
        n: usize,
        #[command(flatten)]
        opts: Coeffs,
    },
    /// Schur multiplier H_2(G, Z)
    Schur {
        group: String,
        #[arg(long = "res", default_value = "auto")]
        res: String,
    },
    /// dim H_k(G, Z/p) for k = 1..N
    Poincare { group: String, p: u64, count: usize },
    /// Map on H_n(-, Z) induced by a homomorphism given on the source generators
    Induced {
        #[arg(long)]
        src: String,
        #[arg(long)]
        tgt: String,
        /// Images of the source generators, e.g. "(1,2,3),(2,3)".
        #[arg(long)]
        images: String,
        #[arg(long)]
        degree: usize,
        /// bar or nbar.
        #[arg(long = "res", default_value = "bar")]
        res: String,
    },
    /// Build a resolution and print its ranks, or all boundaries with --dump
    Res {
        group: String,
        #[arg(long)]
        kind: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        dump: bool,
    },
    /// Check d^2 = 0 and acyclicity of a resolution
    Verify {
        group: String,
        #[arg(long)]
        kind: String,
        #[arg(long)]
        depth: usize,
    },
    /// H^1 or H^2 from explicit cocycles
    Oracle {
        which: Oracle,
        group: String,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    H1,
    H2,
}

#[derive(Serialize)]
struct Record<T: Serialize> {
    command: &'static str,
    #[serde(flatten)]
    body: T,
    elapsed_ms: u128,
}

fn parse_group(s: &str) -> Result<FiniteGroup> {
    let expr = GroupExpr::parse(s).with_context(|| format!("group '{s}'"))?;
    Ok(expr.build()?)
}

fn parse_images(s: &str) -> Result<Vec<homocalc::groups::Permutation>> {
    let wrapped = format!("perm:[{}]", s.trim().trim_start_matches('[').trim_end_matches(']'));
    match GroupExpr::parse(&wrapped).with_context(|| format!("images '{s}'"))? {
        GroupExpr::Perm(p) => Ok(p),
        _ => unreachable!("perm: prefix parses to a permutation list"),
    }
}

fn emit<T: Serialize>(json: bool, command: &'static str, start: Instant, body: T, human: impl FnOnce(&T) -> String) -> Result<()> {
    let text = if json {
        serde_json::to_string(&Record { command, body, elapsed_ms: start.elapsed().as_millis() })?
    } else {
        human(&body)
    };
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn primary_text(inv: &AbelianInvariants) -> String {
    let p: Vec<String> = inv.primary().iter().map(ToString::to_string).collect();
    format!("[{}]", p.join(", "))
}

fn human_record(r: &HomologyRecord, upper: bool) -> String {
    let h = if upper { format!("H^{}", r.degree) } else { format!("H_{}", r.degree) };
    format!(
        "{h}({}, {}) = {}\nprimary: {}\nresolution: {}",
        r.group,
        r.coefficients,
        r.invariants,
        primary_text(&r.invariants),
        r.resolution
    )
}

fn run(cli: Cli) -> Result<()> {
    let start = Instant::now();
    let json = cli.json;
    match cli.command {
        Command::Homology { group, n, opts } => {
            let g = parse_group(&group)?;
            let coeff: Coefficients = opts.coeff.parse()?;
            let choice: ResolutionChoice = opts.res.parse()?;
            let inv = group_homology(&g, n, &coeff.module(&g), choice)?;
            let rec = HomologyRecord::new(&g, n, &coeff.to_string(), choice.resolve(&g), inv);
            emit(json, "homology", start, rec, |r| human_record(r, false))
        }
        Command::Cohomology { group, n, opts } => {
            let g = parse_group(&group)?;
            let coeff: Coefficients = opts.coeff.parse()?;
            let choice: ResolutionChoice = opts.res.parse()?;
            let inv = group_cohomology(&g, n, &coeff.module(&g), choice)?;
            let rec = HomologyRecord::new(&g, n, &coeff.to_string(), choice.resolve(&g), inv);
            emit(json, "cohomology", start, rec, |r| human_record(r, true))
        }
        Command::Schur { group, res } => {
            let g = parse_group(&group)?;
            let choice: ResolutionChoice = res.parse()?;
            let inv = group_homology(&g, 2, &homocalc::GModule::integers(&g), choice)?;
            let rec = HomologyRecord::new(&g, 2, "Z", choice.resolve(&g), inv);
            emit(json, "schur", start, rec, |r| {
                format!("M({}) = {}\nprimary: {}", r.group, r.invariants, primary_text(&r.invariants))
            })
        }
        Command::Poincare { group, p, count } => {
            let g = parse_group(&group)?;
            let dims = poincare_dims(&g, p, count)?;
            let stopped = dims.stopped.clone().filter(|_| !dims.complete);
            emit(json, "poincare", start, &dims, |d| {
                d.dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
            })?;
            if let Some(reason) = stopped {
                bail!(Refused(format!("sequence stops after {} terms: {reason}", dims.dims.len())));
            }
            Ok(())
        }
        Command::Induced { src, tgt, images, degree, res } => {
            let g1 = parse_group(&src)?;
            let g2 = parse_group(&tgt)?;
            let perms = parse_images(&images)?;
            let degree_pts = g2.degree();
            let perms: Vec<_> = perms.into_iter().map(|p| p.extended(degree_pts.max(p.degree()))).collect();
            let phi = GroupHom::from_permutations(&g1, &g2, &perms)?;
            let kind: ResolutionKind = res.parse()?;
            if !matches!(kind, ResolutionKind::Bar | ResolutionKind::NormalizedBar) {
                bail!(Error::Unsupported(format!("induced maps through the {kind} resolution")));
            }
            let budget = budget_from_env();
            check_feasible(kind, &g1, degree + 1, 1, budget)?;
            check_feasible(kind, &g2, degree + 1, 1, budget)?;
            let r1 = Resolution::new(&g1, kind, degree + 1)?;
            let r2 = Resolution::new(&g2, kind, degree + 1)?;
            let cm = chain_map(&r1, &r2, &phi)?;
            cm.verify()?;
            let map = induced_homology_map(&cm, degree, &homocalc::GModule::integers(&g2))?;
            emit(json, "induced", start, map.to_json(), |m| {
                let rows: Vec<String> = m
                    .matrix
                    .iter()
                    .map(|r| r.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(" "))
                    .collect();
                format!(
                    "H_{d}: {} -> {}\nmatrix:\n{}\nimage: {} (primary {})",
                    m.domain,
                    m.codomain,
                    if rows.is_empty() { "(empty)".to_string() } else { rows.join("\n") },
                    m.image,
                    primary_text(&m.image),
                    d = m.degree
                )
            })
        }
        Command::Res { group, kind, depth, dump } => {
            let g = parse_group(&group)?;
            let kind: ResolutionKind = kind.parse()?;
            let r = Resolution::new(&g, kind, depth)?;
            if dump {
                emit(json, "res", start, r.dump(depth), |d| {
                    let mut out = vec![format!("{} resolution of {} (order {}), ranks {:?}", d.kind, d.group, d.order, d.ranks)];
                    for (k, level) in d.boundaries.iter().enumerate() {
                        for (j, w) in level.iter().enumerate() {
                            out.push(format!("d_{}(f{}) = {}", k + 1, j + 1, serde_json::to_string(w).unwrap_or_default()));
                        }
                    }
                    out.join("\n")
                })
            } else {
                #[derive(Serialize)]
                struct Ranks {
                    group: String,
                    kind: ResolutionKind,
                    order: usize,
                    ranks: Vec<usize>,
                }
                let body = Ranks { group: g.name(), kind, order: g.order(), ranks: r.ranks().to_vec() };
                emit(json, "res", start, body, |b| format!("{} resolution of {} (order {}), ranks {:?}", b.kind, b.group, b.order, b.ranks))
            }
        }
        Command::Verify { group, kind, depth } => {
            let g = parse_group(&group)?;
            let kind: ResolutionKind = kind.parse()?;
            let r = Resolution::new(&g, kind, depth)?;
            let report = verify_resolution(&r)?;
            let ok = report.ok;
            emit(json, "verify", start, report, |rep| {
                let mut out = vec![format!("{} resolution of {} to degree {}", rep.kind, rep.group, rep.max_degree)];
                for c in &rep.d_squared {
                    out.push(format!("degree {}: d^2 {}", c.degree, if c.ok { "ok" } else { "FAILS" }));
                }
                let hs: Vec<String> = rep.homology.iter().map(ToString::to_string).collect();
                out.push(format!("underlying homology: {}", hs.join(", ")));
                out.push(if rep.ok { "ok".into() } else { "FAILED".into() });
                out.join("\n")
            })?;
            if !ok {
                bail!("resolution check failed");
            }
            Ok(())
        }
        Command::Oracle { which, group, coeff } => {
            let g = parse_group(&group)?;
            let c: Coefficients = coeff.parse()?;
            let a = c.module(&g);
            let (n, inv) = match which {
                Oracle::H1 => (1, h1_via_cocycles(&g, &a)?),
                Oracle::H2 => (2, h2_via_cocycles(&g, &a)?),
            };
            let rec = HomologyRecord { resolution: "cocycles".into(), ..HomologyRecord::new(&g, n, &c.to_string(), ResolutionKind::Bar, inv) };
            emit(json, "oracle", start, rec, |r| human_record(r, true))
        }
    }
}

/// A size refusal raised by the front end itself.
#[derive(Debug)]
struct Refused(String);

impl std::fmt::Display for Refused {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Refused {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Refused>().is_some() {
        return 3;
    }
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Parse { .. }) => 2,
        Some(Error::Infeasible { .. } | Error::GroupTooLarge { .. }) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
