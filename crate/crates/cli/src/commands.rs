//! Subcommand dispatch.

use std::fs;

use algmat::exactlin::PrimeField;
use algmat::geometry::{builtin, JoinSpec, Sampler, SpecDocument, SpecTarget};
use algmat::matroid::{partition_certificate, ElementSet};
use algmat::polytope::{double_triangle, scan_pattern, toric_from_points, PolytopeInput};
use algmat::terracini::{JoinAnalysis, MatroidComputationConfig};
use algmat::{Error, Result};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::report::{
    defect_text, JoinReport, MatroidReport, PartitionReport, RankReport, ScanMatch, ScanReport,
    UnionCheckOutput,
};
use crate::{golden, Cli, Command, EngineArgs, Format, SpecArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_GOLDEN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NOT_UNION: u8 = 3;
pub const EXIT_ANOMALY: u8 = 4;
pub const EXIT_CAP: u8 = 5;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Anomaly(_) => EXIT_ANOMALY,
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

pub fn run(cli: Cli) -> Result<u8> {
    let engine = match &cli.command {
        Command::Matroid(a)
        | Command::Secant(a)
        | Command::Join(a)
        | Command::UnionCheck(a)
        | Command::Rank(a)
        | Command::Defect(a)
        | Command::Partition(a) => Some(&a.engine),
        Command::Scan(a) => Some(&a.engine),
        Command::Examples(a) => Some(&a.engine),
        Command::Builtins(_) => None,
    };
    let workers = engine.and_then(|e| e.workers);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(Error::Argument("--workers must be positive".into()));
        }
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Argument(e.to_string()))?;
    pool.install(|| dispatch(cli.command))
}

fn dispatch(command: Command) -> Result<u8> {
    match command {
        Command::Matroid(a) => matroid(&a),
        Command::Secant(a) => join(&a, true),
        Command::Join(a) => join(&a, false),
        Command::UnionCheck(a) => union_check(&a),
        Command::Rank(a) => rank(&a),
        Command::Defect(a) => defect(&a),
        Command::Partition(a) => partition(&a),
        Command::Scan(a) => scan(&a),
        Command::Examples(a) => {
            let cfg = config(&a.engine)?;
            golden::run(a.name.as_deref(), &cfg, a.engine.out.output)
        }
        Command::Builtins(o) => {
            builtins(o.output);
            Ok(EXIT_OK)
        }
    }
}

pub fn config(e: &EngineArgs) -> Result<MatroidComputationConfig> {
    let mut cfg = MatroidComputationConfig::with_seed(e.seed)
        .with_trials(e.trials)
        .with_symbolic(e.verify_symbolic);
    cfg.cap = e.cap;
    if let Some(p) = e.prime {
        cfg.field = PrimeField::new(p)?;
    }
    if let Some(dirs) = &e.subgroup {
        cfg.sampler = Sampler::subgroup(parse_directions(dirs)?, e.subgroup_base);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_directions(text: &str) -> Result<Vec<Vec<i64>>> {
    text.split(';')
        .map(|d| {
            d.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Argument(format!("bad subgroup direction entry `{x}`")))
                })
                .collect()
        })
        .collect()
}

fn parse_params(params: &[String]) -> Result<Map<String, Value>> {
    let mut out = Map::new();
    for p in params {
        let Some((k, v)) = p.split_once('=') else {
            return Err(Error::Argument(format!(
                "parameter `{p}` is not of the form key=value"
            )));
        };
        let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
        out.insert(k.trim().to_string(), value);
    }
    Ok(out)
}

fn load(a: &SpecArgs) -> Result<SpecTarget> {
    if let Some(name) = &a.builtin {
        return builtin(name, &parse_params(&a.params)?);
    }
    if !a.params.is_empty() {
        return Err(Error::Argument("--param only applies to --builtin".into()));
    }
    let path = a
        .input
        .as_ref()
        .ok_or_else(|| Error::Argument("no input given".into()))?;
    let text =
        fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    SpecDocument::from_json(&text)?.build()
}

/// The target as a join, taking the `s`-secant when `s` is given.
fn load_join(a: &SpecArgs, default_s: Option<usize>) -> Result<JoinSpec> {
    let target = load(a)?;
    match a.s.or(default_s) {
        Some(s) => JoinSpec::secant(target.into_variety()?, s),
        None => Ok(target.into_join()),
    }
}

fn subset(a: &SpecArgs, join: &JoinSpec) -> Result<ElementSet> {
    match &a.subset {
        None => Ok(join.labels().all()),
        Some(text) => {
            let names: Vec<&str> = text
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            if names.is_empty() {
                return Err(Error::Argument("empty --subset".into()));
            }
            join.labels().subset(&names)
        }
    }
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> Result<()> {
    match format {
        Format::Json => {
            let s = serde_json::to_string_pretty(value).map_err(|e| Error::Input(e.to_string()))?;
            println!("{s}");
        }
        Format::Text => print!("{}", text(value)),
    }
    Ok(())
}

fn matroid(a: &SpecArgs) -> Result<u8> {
    let cfg = config(&a.engine)?;
    let join = load_join(a, None)?;
    let analysis = JoinAnalysis::new(join, cfg.clone())?;
    let report = MatroidReport::new(analysis.join_matroid()?, cfg.cap, a.bases)?;
    emit(a.engine.out.output, &report, MatroidReport::text)?;
    Ok(EXIT_OK)
}

fn join(a: &SpecArgs, secant: bool) -> Result<u8> {
    let cfg = config(&a.engine)?;
    let join = load_join(a, secant.then_some(2))?;
    let analysis = JoinAnalysis::new(join, cfg.clone())?;
    let report = JoinReport {
        summands: analysis.join().len(),
        matroid: MatroidReport::new(analysis.join_matroid()?, cfg.cap, a.bases)?,
        defect: analysis.defect()?,
    };
    emit(a.engine.out.output, &report, JoinReport::text)?;
    Ok(EXIT_OK)
}

fn union_check(a: &SpecArgs) -> Result<u8> {
    let cfg = config(&a.engine)?;
    let analysis = JoinAnalysis::new(load_join(a, None)?, cfg)?;
    let report = UnionCheckOutput::new(analysis.union_check()?);
    emit(a.engine.out.output, &report, UnionCheckOutput::text)?;
    Ok(if report.report.is_terracini_union {
        EXIT_OK
    } else {
        EXIT_NOT_UNION
    })
}

fn rank(a: &SpecArgs) -> Result<u8> {
    let cfg = config(&a.engine)?;
    let analysis = JoinAnalysis::new(load_join(a, None)?, cfg)?;
    let set = subset(a, analysis.join())?;
    let report = RankReport {
        subset: analysis.join().labels().names(set),
        rank: analysis.subset_rank(set)?,
        projected: analysis.projected_join_defect(set)?,
    };
    emit(a.engine.out.output, &report, RankReport::text)?;
    Ok(EXIT_OK)
}

fn defect(a: &SpecArgs) -> Result<u8> {
    let cfg = config(&a.engine)?;
    let report = JoinAnalysis::new(load_join(a, None)?, cfg)?.defect()?;
    emit(a.engine.out.output, &report, defect_text)?;
    Ok(EXIT_OK)
}

fn partition(a: &SpecArgs) -> Result<u8> {
    let cfg = config(&a.engine)?;
    let join = load_join(a, None)?;
    let set = subset(a, &join)?;
    let analysis = JoinAnalysis::new(join, cfg)?;
    let outcome = partition_certificate(analysis.summand_matroids(), set)?;
    let report = PartitionReport::new(analysis.join().labels(), set, outcome);
    emit(a.engine.out.output, &report, PartitionReport::text)?;
    Ok(EXIT_OK)
}

fn polytope(text: &str) -> Result<PolytopeInput> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("polytope document: {e}")))
}

fn scan(a: &crate::ScanArgs) -> Result<u8> {
    let cfg = config(&a.engine)?;
    let doc = match (&a.input, &a.polytope) {
        (Some(path), _) => fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?,
        (None, Some(text)) => text.clone(),
        (None, None) => return Err(Error::Argument("no polytope given".into())),
    };
    let points = polytope(&doc)?.to_points()?;
    let pattern = match &a.pattern {
        Some(text) => polytope(text)?.to_points()?,
        None => double_triangle(),
    };
    let found = scan_pattern(&points, &pattern)?;
    let toric = toric_from_points(&points)?;
    let analysis = JoinAnalysis::new(JoinSpec::secant(toric.into(), 2)?, cfg)?;
    let union = analysis.union_matroid()?;
    let join_m = analysis.join_matroid()?;
    let ground = analysis.join().labels().clone();
    let matches = found
        .iter()
        .map(|m| {
            let set = m.element_set()?;
            Ok(ScanMatch::new(
                m,
                &ground,
                union.is_basis(set)?,
                join_m.is_independent(set)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let report = ScanReport {
        points: points.points().to_vec(),
        pattern: pattern.points().to_vec(),
        matches,
    };
    emit(a.engine.out.output, &report, ScanReport::text)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct BuiltinEntry {
    name: &'static str,
    params: &'static str,
    summary: &'static str,
}

fn builtins(format: Format) {
    let entries: Vec<BuiltinEntry> = algmat::geometry::BUILTINS
        .iter()
        .map(|&(name, params, summary)| BuiltinEntry {
            name,
            params,
            summary,
        })
        .collect();
    let _ = emit(format, &entries, |es| {
        es.iter()
            .map(|e| {
                let params = if e.params.is_empty() { "-" } else { e.params };
                format!("{:<24} {:<28} {}\n", e.name, params, e.summary)
            })
            .collect()
    });
}

pub fn exit_for_golden(all_pass: bool) -> u8 {
    if all_pass {
        EXIT_OK
    } else {
        EXIT_GOLDEN
    }
}
