//! `jgrid`: command-line front end for the jordan-grid library.
//!
//! Exit codes: 0 success, 1 invalid input, 2 theorem violation (a bug).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use jordan_grid::generate::{gen_crossing_instance, gen_random_curve};
use jordan_grid::instance::{Form, Instance};
use jordan_grid::parity::{check_parity_lemma, find_intersection_set, parity_profile};
use jordan_grid::reductions::{jct_to_stconn_seq, jct_to_stconn_set, stconn_to_jct_seq, stconn_to_jct_set};
use jordan_grid::render::{render_svg, RenderSpec};
use jordan_grid::sequence::{
    check_edge_alternation, column_sets, count_regions, find_intersection_seq, merge_paths, region_connect,
};
use jordan_grid::tautologies::{decode_model, solve, ClauseKind, CnfFormula, Family, SolveMode};
use jordan_grid::{Color, EdgeSequence, Error, GridPoint, SidePair};

#[derive(Parser)]
#[command(name = "jgrid", version, about = "Discrete Jordan curve tools on grid graphs")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Set,
    Seq,
}

#[derive(Clone, Copy, ValueEnum)]
enum FromArg {
    Jct,
    Stconn,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    Stconn,
    Stseq,
    Curve,
    Crossing,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Exhaustive,
    Dpll,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeakenArg {
    NoIntersection,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance against the predicates for its role.
    Validate {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Parity profile or intersection witness of a crossing instance.
    Parity {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, conflicts_with = "witness")]
        profile: bool,
        #[arg(long)]
        witness: bool,
    },
    /// Edge alternation check of a closed curve.
    Alternation {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Number of regions of a closed curve after threefold refinement.
    Regions {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Path from a refined-grid point to the side point of its region.
    Connect {
        #[arg(long)]
        instance: PathBuf,
        /// Point on the threefold refined grid, as `x,y`.
        #[arg(long)]
        point: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Splice a disjoint red path into a blue curve.
    Merge {
        #[arg(long)]
        blue: PathBuf,
        #[arg(long)]
        red: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert between crossing and st-connectivity instances.
    Reduce {
        #[arg(long, value_enum)]
        from: FromArg,
        #[arg(long, value_enum)]
        form: FormArg,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print output edge `j` of each color instead of the whole output.
        #[arg(long)]
        edge_at: Option<u64>,
    },
    /// Tautology formulas (DIMACS) or random instances (JSON).
    Gen {
        #[arg(long, value_enum)]
        family: GenFamily,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        check: Option<CheckArg>,
        #[arg(long, value_enum)]
        weaken: Option<WeakenArg>,
    },
    /// SVG drawing of an instance.
    Render {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Mark the intersection witness.
        #[arg(long)]
        witness: bool,
    },
    /// Run the property pipelines over a range of seeds.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 16)]
        n: u32,
    },
}

fn load(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Instance::parse(&text)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_point(s: &str) -> Result<GridPoint> {
    let (x, y) = s.split_once(',').ok_or_else(|| anyhow!("expected x,y, got {s:?}"))?;
    Ok(GridPoint::new(x.trim().parse()?, y.trim().parse()?))
}

fn curve_of(inst: &Instance) -> Result<EdgeSequence> {
    let c = inst.blue_seq()?;
    if !c.is_closed() {
        bail!(Error::Precondition("blue is not a closed curve".into()));
    }
    Ok(c)
}

/// Side pair on the refined curve: the instance's own pair scaled up, or the
/// middle of the first horizontal edge.
fn refined_sides(inst: &Instance, c: &EdgeSequence) -> Result<SidePair> {
    if let Some(s) = inst.side_pair()? {
        return Ok(SidePair::around(s.mid.scale(3))?);
    }
    let e = c.edges().iter().find(|e| e.is_horizontal()).ok_or_else(|| anyhow!("curve has no horizontal edge"))?;
    Ok(SidePair::around(GridPoint::new(3 * e.from.x.min(e.to.x) + 1, 3 * e.from.y))?)
}

fn run(cli: Cli) -> Result<()> {
    let json = cli.json;
    match cli.command {
        Command::Validate { instance } => {
            let inst = load(&instance)?;
            let role = inst.validate()?;
            if json {
                println!("{}", json!({ "valid": true, "role": format!("{role:?}").to_lowercase() }));
            } else {
                println!("valid {role:?} instance, n = {}", inst.n);
            }
        }
        Command::Parity { instance, profile, witness } => {
            let inst = load(&instance)?;
            let (b, r) = (inst.blue_set()?, inst.red_set()?);
            if witness {
                let sides = inst.side_pair()?.ok_or_else(|| anyhow!("instance has no side pair"))?;
                let w = if inst.form == Form::Seq {
                    find_intersection_seq(&inst.blue_seq()?, &inst.red_seq()?, &sides)?
                } else {
                    find_intersection_set(&b, &r, &sides)?
                };
                println!("{}", serde_json::to_string(&w)?);
                return Ok(());
            }
            let p = parity_profile(&b, &r)?;
            if profile || inst.side_pair()?.is_none() {
                if json {
                    println!("{}", json!({ "profile": p.to_bit_string(), "flips": p.flips() }));
                } else {
                    println!("{}", p.to_bit_string());
                }
                return Ok(());
            }
            let report = check_parity_lemma(&b, &r, &inst.side_pair()?.expect("checked"))?;
            let failed: Vec<String> = report.failed_preconditions.iter().map(|f| f.to_string()).collect();
            if json {
                println!(
                    "{}",
                    json!({
                        "profile": report.profile.to_bit_string(),
                        "failed_preconditions": failed,
                        "part_a": report.part_a,
                        "part_b_failures": report.part_b_failures,
                    })
                );
            } else {
                println!("profile {}", report.profile.to_bit_string());
                for f in failed {
                    println!("hypothesis fails: {f}");
                }
            }
            if report.preconditions_hold() && !report.consistent() {
                bail!(Error::LemmaViolation("parity lemma fails on an instance meeting its hypotheses".into()));
            }
        }
        Command::Alternation { instance } => {
            let c = curve_of(&load(&instance)?)?;
            let bad: Vec<u32> = (0..c.n()).filter(|&m| !column_sets(&c, m).alternates()).collect();
            if json {
                println!("{}", json!({ "alternates": bad.is_empty(), "failing_columns": bad }));
            } else if bad.is_empty() {
                println!("every column alternates");
            } else {
                println!("columns failing alternation: {bad:?}");
            }
            if !bad.is_empty() || !check_edge_alternation(&c) {
                // a simple closed curve always alternates
                bail!(Error::TheoremViolation(format!("columns {bad:?} do not alternate")));
            }
        }
        Command::Regions { instance, svg } => {
            let inst = load(&instance)?;
            let c = curve_of(&inst)?;
            let k = count_regions(&c);
            if json {
                println!("{}", json!({ "regions": k }));
            } else {
                println!("{k} regions");
            }
            if let Some(path) = svg {
                fs::write(path, render_svg(&inst, &RenderSpec::default(), &[])?)?;
            }
            if k != 2 {
                bail!(Error::TheoremViolation(format!("{k} regions instead of 2")));
            }
        }
        Command::Connect { instance, point, svg } => {
            let inst = load(&instance)?;
            let c = curve_of(&inst)?;
            let sides = refined_sides(&inst, &c)?;
            let conn = region_connect(&c, parse_point(&point)?, &sides)?;
            let pts: Vec<[u32; 2]> = conn.path.points().iter().map(|p| [p.x, p.y]).collect();
            if json {
                println!("{}", json!({ "target": [conn.target.x, conn.target.y], "path": pts }));
            } else {
                println!("target {} via {} edges", conn.target, conn.path.len());
            }
            if let Some(path) = svg {
                let refined = c.refine(3);
                let mut shown = Instance::from_curve(&refined);
                shown.red = (!conn.path.is_empty()).then(|| jordan_grid::instance::seq_payload(&conn.path));
                fs::write(path, render_svg(&shown, &RenderSpec::default(), &[conn.target])?)?;
            }
        }
        Command::Merge { blue, red, out } => {
            let b = load(&blue)?;
            let r = load(&red)?;
            let sides = b.side_pair()?.or(r.side_pair()?).ok_or_else(|| anyhow!("neither file has a side pair"))?;
            let merged = merge_paths(&b.blue_seq()?, &r.red_seq().or_else(|_| r.blue_seq())?, &sides)?;
            emit(out.as_deref(), &Instance::from_curve(&merged).to_json())?;
        }
        Command::Reduce { from, form, instance, out, edge_at } => {
            let inst = load(&instance)?;
            reduce(&inst, from, form, out.as_deref(), edge_at, json)?;
        }
        Command::Gen { family, n, seed, out, check, weaken } => match family {
            GenFamily::Curve => emit(out.as_deref(), &Instance::from_curve(&gen_random_curve(n, seed)?).to_json())?,
            GenFamily::Crossing => {
                emit(out.as_deref(), &Instance::from_jct_seq(&gen_crossing_instance(n, seed)?).to_json())?
            }
            GenFamily::Stconn | GenFamily::Stseq => {
                let fam = if matches!(family, GenFamily::Stconn) { Family::Stconn } else { Family::Stseq };
                let mut f = CnfFormula::generate(fam, n)?;
                if weaken.is_some() {
                    f = f.weaken(ClauseKind::NoIntersection);
                }
                if let Some(out) = &out {
                    fs::write(out, f.to_dimacs())?;
                } else if check.is_none() {
                    print!("{}", f.to_dimacs());
                }
                if let Some(mode) = check {
                    check_formula(&f, mode, json)?;
                }
            }
        },
        Command::Render { instance, out, witness } => {
            let inst = load(&instance)?;
            let mut marks = vec![];
            if witness {
                let sides = inst.side_pair()?.ok_or_else(|| anyhow!("instance has no side pair"))?;
                marks.push(find_intersection_set(&inst.blue_set()?, &inst.red_set()?, &sides)?.point);
            }
            emit(out.as_deref(), &render_svg(&inst, &RenderSpec::default(), &marks)?)?;
        }
        Command::Fuzz { seed, count, n } => fuzz(seed, count, n, json)?,
    }
    Ok(())
}

fn check_formula(f: &CnfFormula, mode: CheckArg, json: bool) -> Result<()> {
    let mode = match mode {
        CheckArg::Exhaustive => SolveMode::Exhaustive,
        CheckArg::Dpll => SolveMode::Dpll,
    };
    let model = solve(f, mode)?;
    let sat = model.is_some();
    if json {
        println!("{}", json!({ "family": f.family.to_string(), "n": f.n, "vars": f.num_vars, "clauses": f.clauses.len(), "sat": sat }));
    } else {
        println!("{} n={} vars={} clauses={}: {}", f.family, f.n, f.num_vars, f.clauses.len(), if sat { "SAT" } else { "UNSAT" });
    }
    match model {
        Some(m) if f.dropped.is_empty() => {
            decode_model(f, &m)?;
            bail!(Error::TheoremViolation("unweakened formula is satisfiable".into()))
        }
        Some(m) => {
            let decoded = decode_model(f, &m)?;
            decoded.paths(f.n)?;
            Ok(())
        }
        None => Ok(()),
    }
}

fn reduce(inst: &Instance, from: FromArg, form: FormArg, out: Option<&Path>, edge_at: Option<u64>, json: bool) -> Result<()> {
    let print_edges = |edges: Vec<(Color, String)>| {
        for (c, e) in edges {
            if json {
                println!("{}", json!({ "color": c.to_string(), "edge": e }));
            } else {
                println!("{c} {e}");
            }
        }
    };
    match (from, form) {
        (FromArg::Stconn, FormArg::Set) => {
            let r = stconn_to_jct_set(&inst.stconn_set()?)?;
            emit(out, &Instance::from_jct_set(&r).to_json())?;
        }
        (FromArg::Stconn, FormArg::Seq) => {
            let r = stconn_to_jct_seq(&inst.stconn_seq()?)?;
            if let Some(j) = edge_at {
                let edges = Color::ALL
                    .iter()
                    .filter_map(|&c| r.edge_at(c, j as usize).ok().map(|e| (c, e.to_string())))
                    .collect();
                print_edges(edges);
                return Ok(());
            }
            emit(out, &Instance::from_jct_seq(&r.materialize()?).to_json())?;
        }
        (FromArg::Jct, FormArg::Set) => {
            let r = jct_to_stconn_set(&inst.jct_set()?)?;
            emit(out, &Instance::from_stconn_set(&r.output).to_json())?;
        }
        (FromArg::Jct, FormArg::Seq) => {
            let r = jct_to_stconn_seq(&inst.jct_seq()?)?;
            if let Some(j) = edge_at {
                let edges = Color::ALL
                    .iter()
                    .filter_map(|&c| r.path_edge_at(c, j).ok().map(|e| (c, e.to_string())))
                    .collect();
                print_edges(edges);
                return Ok(());
            }
            emit(out, &Instance::from_stconn_seq(&r.materialize()?).to_json())?;
        }
    }
    Ok(())
}

fn fuzz(seed: u64, count: u64, n: u32, json: bool) -> Result<()> {
    let n = n.max(4);
    for s in seed..seed + count {
        let size = 4 + (s % (n as u64 - 3)) as u32;
        let inst = gen_crossing_instance(size, s)?;
        let w = find_intersection_seq(&inst.blue, &inst.red, &inst.sides)?;
        let set_w = find_intersection_set(&inst.blue.to_edge_set(), &inst.red.to_edge_set(), &inst.sides)?;
        if w != set_w {
            bail!(Error::TheoremViolation(format!("seed {s}: set and sequence witnesses differ")));
        }
        if !check_edge_alternation(&inst.blue) {
            bail!(Error::TheoremViolation(format!("seed {s}: curve fails alternation")));
        }
        let k = count_regions(&inst.blue);
        if k != 2 {
            bail!(Error::TheoremViolation(format!("seed {s}: {k} regions")));
        }
        let st = jct_to_stconn_set(&inst.to_sets())?;
        if !st.output.blue.intersects(&st.output.red)? {
            bail!(Error::TheoremViolation(format!("seed {s}: reflected paths are disjoint")));
        }
    }
    if json {
        println!("{}", json!({ "seeds": [seed, seed + count], "failures": 0 }));
    } else {
        println!("{count} seeds from {seed}: all pipelines passed");
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::TheoremViolation(_) | Error::LemmaViolation(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
