use std::fmt::Write as _;
use std::path::Path;

use beachcomb::analysis::{asymptotic_limit, competitive_ratio, wuniform_table};
use beachcomb::generate::{sweep_row, GeneratorKind, GeneratorSpec, SweepRow, PRNG_ID};
use beachcomb::model::{Instance, Schedule, SwarmPlanJson, Tolerance, DEFAULT_REL_TOL};
use beachcomb::offline::comb_schedule;
use beachcomb::online::leapfrog_with_horizon;
use beachcomb::oracle::{best_order_bruteforce, grid_max_wuniform};
use beachcomb::verify::{check_structure_with, validate_with, StructureReport, ValidationReport};
use rayon::prelude::*;
use serde::Serialize;

use crate::io::{emit, pretty, read_json, CliError};
use crate::{Command, Family, KindArg, OracleCommand};

/// Test-only override of the relative tolerance used by `verify`.
const TOL_ENV: &str = "BEACHCOMB_TOL";

pub fn dispatch(command: Command) -> Result<u8, CliError> {
    match command {
        Command::SolveOffline { input, output } => solve_offline(&input, output.as_deref()),
        Command::SolveOnline {
            input,
            horizon,
            output,
        } => solve_online(&input, horizon, output.as_deref()),
        Command::Verify {
            input,
            schedule,
            structure,
        } => verify(&input, &schedule, structure),
        Command::Ratio { input } => ratio(&input),
        Command::WuniformTable { sizes } => table(&sizes),
        Command::Asymptote => {
            let a = asymptotic_limit();
            emit(
                None,
                &format!("c_star={:.12} limit={:.12}\n", a.c_star, a.limit),
            )?;
            Ok(0)
        }
        Command::Gen {
            family,
            n,
            seed,
            length,
            output,
        } => {
            let spec = GeneratorSpec {
                kind: kind_of(&family),
                n,
                seed,
                length,
            };
            emit(output.as_deref(), &pretty(&spec.generate()?))?;
            Ok(0)
        }
        Command::Sweep {
            family,
            count,
            seed,
            max_n,
            output,
        } => sweep(kind_of(&family), count, seed, max_n, &output),
        Command::Oracle(OracleCommand::BestOrder { input }) => best_order(&input),
        Command::Oracle(OracleCommand::GridMax { n, step }) => {
            emit(None, &pretty(&grid_max_wuniform(n, step)?))?;
            Ok(0)
        }
    }
}

fn kind_of(family: &Family) -> GeneratorKind {
    match family.kind {
        KindArg::Random => GeneratorKind::Random {
            w_min: family.w_min,
            w_max: family.w_max,
        },
        KindArg::WUniform => GeneratorKind::WUniform { w: family.w },
        KindArg::TotallyUniform => GeneratorKind::TotallyUniform {
            alpha: family.alpha,
            w: family.w,
        },
        KindArg::Prop1 => GeneratorKind::Prop1 {
            epsilon: family.epsilon,
        },
    }
}

fn tolerance_from_env() -> Result<Tolerance, CliError> {
    match std::env::var(TOL_ENV) {
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| *t >= 0.0)
            .map(Tolerance::new)
            .ok_or_else(|| CliError::Usage(format!("{TOL_ENV}={v:?} is not a nonnegative number"))),
        Err(_) => Ok(Tolerance::new(DEFAULT_REL_TOL)),
    }
}

fn solve_offline(input: &Path, output: Option<&Path>) -> Result<u8, CliError> {
    let instance: Instance = read_json(input)?;
    let sol = comb_schedule(&instance);
    let summary = format!(
        "S_opt={:.12} T_opt={:.12}",
        sol.optimal_speed, sol.optimal_time
    );
    emit(output, &pretty(&sol.schedule))?;
    if output.is_some() {
        emit(None, &format!("{summary}\n"))?;
    } else {
        eprintln!("{summary}");
    }
    Ok(0)
}

#[derive(Serialize)]
struct OnlineOutput<'a> {
    swarm_plan: SwarmPlanJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    schedule: Option<&'a Schedule>,
}

fn solve_online(input: &Path, horizon: Option<u64>, output: Option<&Path>) -> Result<u8, CliError> {
    let instance: Instance = read_json(input)?;
    let horizon = match horizon {
        Some(0) => return Err(CliError::Usage("--horizon must be positive".into())),
        Some(h) => h,
        None => {
            let len = instance.length();
            if len.fract() != 0.0 || len > u32::MAX as f64 {
                return Err(beachcomb::Error::NonIntegerHorizon(len).into());
            }
            len as u64
        }
    };
    let lf = leapfrog_with_horizon(instance.robots(), horizon);
    let swarm_plan = lf.plan.to_json_view(&instance);
    match output {
        Some(path) => {
            emit(Some(path), &pretty(&lf.schedule))?;
            emit(
                None,
                &pretty(&OnlineOutput {
                    swarm_plan,
                    schedule: None,
                }),
            )?;
        }
        None => emit(
            None,
            &pretty(&OnlineOutput {
                swarm_plan,
                schedule: Some(&lf.schedule),
            }),
        )?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct VerifyOutput {
    #[serde(flatten)]
    report: ValidationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    structure: Option<StructureReport>,
}

fn verify(input: &Path, schedule: &Path, structure: bool) -> Result<u8, CliError> {
    let instance: Instance = read_json(input)?;
    let sched: Schedule = read_json(schedule)?;
    let tol = tolerance_from_env()?;
    let report = validate_with(&instance, &sched, tol)?;
    let structure = if structure {
        Some(check_structure_with(&instance, &sched, tol)?)
    } else {
        None
    };
    let feasible = report.feasible;
    emit(None, &pretty(&VerifyOutput { report, structure }))?;
    Ok(if feasible { 0 } else { 1 })
}

fn ratio(input: &Path) -> Result<u8, CliError> {
    let instance: Instance = read_json(input)?;
    let report = competitive_ratio(&instance);
    emit(None, &pretty(&report))?;
    Ok(if report.bound_2_satisfied { 0 } else { 1 })
}

/// Parses `a..b`, `a..=b` (both inclusive) or a comma-separated list.
fn parse_sizes(spec: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::Usage(format!("cannot parse fleet sizes {spec:?}"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    if let Some((lo, hi)) = spec.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',').map(num).collect()
}

fn table(sizes: &str) -> Result<u8, CliError> {
    let rows = wuniform_table(&parse_sizes(sizes)?)?;
    let mut out = String::from("n,alpha_star,ratio_star\n");
    for r in rows {
        writeln!(out, "{},{},{}", r.n, r.alpha_star, r.ratio_star).unwrap();
    }
    emit(None, &out)?;
    Ok(0)
}

fn sweep(
    kind: GeneratorKind,
    count: u64,
    seed: u64,
    max_n: usize,
    output: &Path,
) -> Result<u8, CliError> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be positive".into()));
    }
    let mut rows: Vec<SweepRow> = (0..count)
        .into_par_iter()
        .map(|i| sweep_row(kind, max_n, seed, i))
        .collect::<Result<_, _>>()?;
    rows.sort_by_key(|r| r.index);

    let mut csv = format!(
        "# kind={} prng={PRNG_ID} seed={seed} count={count} max_n={max_n}\n",
        kind.name()
    );
    csv.push_str("index,n,t_offline,t_online,ratio,bound_2_satisfied\n");
    for r in &rows {
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            r.index,
            r.n,
            r.report.t_offline,
            r.report.t_online,
            r.report.ratio,
            r.report.bound_2_satisfied
        )
        .unwrap();
    }
    let worst = rows
        .iter()
        .max_by(|a, b| a.report.ratio.total_cmp(&b.report.ratio));
    let violations = rows.iter().filter(|r| !r.report.bound_2_satisfied).count();
    let summary = match worst {
        Some(w) => format!(
            "count={count} max_ratio={} max_index={} violations={violations}",
            w.report.ratio, w.index
        ),
        None => "count=0 violations=0".to_string(),
    };
    writeln!(csv, "# {summary}").unwrap();
    emit(Some(output), &csv)?;
    emit(None, &format!("{summary}\n"))?;
    Ok(if violations == 0 { 0 } else { 1 })
}

#[derive(Serialize)]
struct BestOrderOutput {
    permutation: Vec<String>,
    indices: Vec<usize>,
    speed: f64,
}

fn best_order(input: &Path) -> Result<u8, CliError> {
    let instance: Instance = read_json(input)?;
    let best = best_order_bruteforce(instance.robots())?;
    let out = BestOrderOutput {
        permutation: best
            .permutation
            .iter()
            .map(|&i| instance.robots()[i].id().to_string())
            .collect(),
        indices: best.permutation,
        speed: best.speed,
    };
    emit(None, &pretty(&out))?;
    Ok(0)
}
