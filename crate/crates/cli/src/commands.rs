use std::fs;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use ama_core::ingest::{
    export_results, ingest_object_model, netpbm, parse_layout, read_labeled_column, serialize_layout, EvaluationReport,
    IngestOptions, ResultFormat, ResultRow,
};
use ama_core::metrics::MeasureVector;
use ama_core::optimizer::{optimize, ObjectiveSpec, OptimizationReport, SearchParams, TracePoint};
use ama_core::stats::{one_way_anova, parse_group_csv, rank_by_value, spearman_rho, AnovaResult, RankVector};
use ama_core::{evaluate, Layout};
use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::table::{num, render};
use crate::{Command, Format, Io, OptimizeArgs};

/// Trace length cap for JSON reports; the `--trace` file is never thinned.
const REPORT_TRACE_POINTS: usize = ama_service::MAX_TRACE_POINTS;

pub(crate) fn dispatch(command: Command, io: &mut Io) -> Result<()> {
    match command {
        Command::Evaluate { layout, format, strict } => evaluate_cmd(io, &layout, format, strict),
        Command::Batch { inputs, out, format } => batch(io, &inputs, out.as_deref(), format),
        Command::Rank {
            results,
            column,
            ascending,
            group_sep,
            format,
        } => rank(io, &results, &column, ascending, group_sep.as_deref(), format),
        Command::Ingest {
            image,
            threshold,
            invert,
            min_area,
            out,
        } => ingest(
            io,
            &image,
            IngestOptions {
                threshold,
                invert,
                min_area,
            },
            out.as_deref(),
        ),
        Command::Optimize(args) => optimize_cmd(io, args),
        Command::Anova { data, format } => anova(io, &data, format),
        Command::CompareRanks { a, b, column, format } => compare_ranks(io, &a, &b, &column, format),
        Command::Serve {
            port,
            host,
            cors_origin,
        } => serve(io, &host, port, cors_origin),
    }
}

fn read_text(io: &mut Io, path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io.stdin.read_to_string(&mut text).context("reading stdin")?;
        return Ok(text);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(io: &mut Io, out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io.stdout.write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

fn label_for(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load_layout(io: &mut Io, path: &Path, strict: bool) -> Result<Layout> {
    let text = read_text(io, path)?;
    parse_layout(&text, strict).with_context(|| format!("loading {}", path.display()))
}

fn measure_rows(m: &MeasureVector) -> Vec<Vec<String>> {
    MeasureVector::COMPONENT_NAMES
        .iter()
        .zip(m.components())
        .map(|(name, v)| vec![name.to_string(), num(v)])
        .chain([vec!["av".to_string(), num(m.av)]])
        .collect()
}

fn evaluate_cmd(io: &mut Io, path: &Path, format: Format, strict: bool) -> Result<()> {
    let layout = load_layout(io, path, strict)?;
    let measures = evaluate(&layout).with_context(|| format!("evaluating {}", path.display()))?;
    let text = match format {
        Format::Json => to_json(&EvaluationReport::new(&layout, measures)),
        Format::Csv => export_results(&[ResultRow::new(label_for(path), measures)], ResultFormat::Csv),
        Format::Table => render(&["measure", "value"], &measure_rows(&measures)),
    };
    emit(io, None, &text)
}

/// Directories contribute their `*.json` files in name order; explicit files
/// keep their position.
fn expand_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(input)
                .with_context(|| format!("listing {}", input.display()))?
                .map(|entry| entry.map(|e| e.path()))
                .collect::<std::io::Result<_>>()
                .with_context(|| format!("listing {}", input.display()))?;
            found.retain(|p| p.is_file() && p.extension().is_some_and(|e| e == "json"));
            found.sort();
            files.extend(found);
        } else {
            files.push(input.clone());
        }
    }
    if files.is_empty() {
        bail!("no layout files found");
    }
    Ok(files)
}

fn batch(io: &mut Io, inputs: &[PathBuf], out: Option<&Path>, format: Format) -> Result<()> {
    let files = expand_inputs(inputs)?;
    let results: Vec<Result<ResultRow>> = files
        .par_iter()
        .map(|path| {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let layout = parse_layout(&text, false).with_context(|| format!("loading {}", path.display()))?;
            let measures = evaluate(&layout).with_context(|| format!("evaluating {}", path.display()))?;
            Ok(ResultRow::new(label_for(path), measures))
        })
        .collect();

    let mut rows = Vec::with_capacity(results.len());
    let mut failures = 0;
    for result in results {
        match result {
            Ok(row) => rows.push(row),
            Err(e) => {
                failures += 1;
                writeln!(io.stderr, "error: {e:#}")?;
            }
        }
    }
    if failures > 0 {
        bail!("{failures} of {} layouts failed", files.len());
    }

    let text = match format {
        Format::Csv => export_results(&rows, ResultFormat::Csv),
        Format::Json => export_results(&rows, ResultFormat::Json),
        Format::Table => {
            let mut headers = vec!["label"];
            headers.extend(MeasureVector::COMPONENT_NAMES);
            headers.push("av");
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let m = &r.measures;
                    let mut cells = vec![r.label.clone()];
                    cells.extend(m.components().into_iter().chain([m.av]).map(num));
                    cells
                })
                .collect();
            render(&headers, &body)
        }
    };
    emit(io, out, &text)
}

#[derive(Serialize)]
struct RankedRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    label: String,
    rank: u32,
    value: f64,
}

type Labelled = Vec<(String, f64)>;

fn partition(items: Labelled, sep: Option<&str>) -> Vec<(Option<String>, Labelled)> {
    let Some(sep) = sep else {
        return vec![(None, items)];
    };
    let mut groups: Vec<(Option<String>, Labelled)> = Vec::new();
    for (label, value) in items {
        let key = label
            .rsplit_once(sep)
            .map_or(label.as_str(), |(head, _)| head)
            .to_owned();
        match groups.iter_mut().find(|(g, _)| g.as_deref() == Some(key.as_str())) {
            Some((_, members)) => members.push((label, value)),
            None => groups.push((Some(key), vec![(label, value)])),
        }
    }
    groups
}

fn rank(
    io: &mut Io,
    path: &Path,
    column: &str,
    ascending: bool,
    group_sep: Option<&str>,
    format: Format,
) -> Result<()> {
    let text = read_text(io, path)?;
    let items = read_labeled_column(&text, column).with_context(|| format!("reading {}", path.display()))?;
    let mut ranked = Vec::new();
    for (group, members) in partition(items, group_sep) {
        let ranks = rank_by_value(&members, !ascending)?;
        for entry in ranks.entries() {
            let value = members
                .iter()
                .find(|(l, _)| *l == entry.label)
                .map(|(_, v)| *v)
                .unwrap_or(f64::NAN);
            ranked.push(RankedRow {
                group: group.clone(),
                label: entry.label.clone(),
                rank: entry.rank,
                value,
            });
        }
    }

    let text = match format {
        Format::Json => to_json(&ranked),
        Format::Csv => {
            let mut wtr = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            wtr.write_record(["label", "rank"])?;
            for r in &ranked {
                wtr.write_record([r.label.as_str(), &r.rank.to_string()])?;
            }
            String::from_utf8(wtr.into_inner().map_err(|e| anyhow!("{e}"))?)?
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = ranked
                .iter()
                .map(|r| vec![r.label.clone(), r.rank.to_string(), num(r.value)])
                .collect();
            render(&["label", "rank", column], &rows)
        }
    };
    emit(io, None, &text)
}

fn ingest(io: &mut Io, path: &Path, options: IngestOptions, out: Option<&Path>) -> Result<()> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let image = netpbm::decode(&bytes).with_context(|| format!("decoding {}", path.display()))?;
    let layout = ingest_object_model(&image, &options).with_context(|| format!("segmenting {}", path.display()))?;
    emit(io, out, &serialize_layout(&layout))?;
    if out.is_some() {
        writeln!(io.stderr, "{} objects extracted", layout.len())?;
    }
    Ok(())
}

fn five(values: Option<[f64; 5]>, flag: &str) -> Result<[f64; 5]> {
    values.ok_or_else(|| anyhow!("{flag} is required"))
}

fn objective_from(args: &OptimizeArgs) -> Result<ObjectiveSpec> {
    let objective = if args.maximize {
        ObjectiveSpec::Maximize {
            weights: five(args.weights, "--weights")?,
        }
    } else if let Some(target) = args.target_av {
        ObjectiveSpec::MatchAv { target }
    } else {
        ObjectiveSpec::MatchProfile {
            target: five(args.target, "--target")?,
        }
    };
    objective.validate()?;
    Ok(objective)
}

fn trace_csv(trace: &[TracePoint]) -> String {
    let mut s = String::from("iteration,best_score\n");
    for p in trace {
        s.push_str(&format!("{},{}\n", p.iteration, p.best_score));
    }
    s
}

fn optimize_cmd(io: &mut Io, args: OptimizeArgs) -> Result<()> {
    let layout = load_layout(io, &args.layout, false)?;
    let objective = objective_from(&args)?;
    let defaults = SearchParams::default();
    let params = SearchParams {
        seed: args.seed,
        iterations: args.iters,
        initial_temperature: args.temperature.unwrap_or(defaults.initial_temperature),
        cooling: args.cooling.unwrap_or(defaults.cooling),
        move_scale: args.move_scale.unwrap_or(defaults.move_scale),
        forbid_overlap: args.no_overlap,
    };
    let start = evaluate(&layout)?;
    let result = optimize(&layout, &objective, &params)?;
    let report = OptimizationReport::new(&result, &params, Some(REPORT_TRACE_POINTS))?;

    if let Some(path) = &args.out {
        fs::write(path, serialize_layout(&result.best_layout))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.trace {
        fs::write(path, trace_csv(&result.trace)).with_context(|| format!("writing {}", path.display()))?;
    }

    let text = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => export_results(
            &[ResultRow::new("start", start), ResultRow::new("best", report.measures)],
            ResultFormat::Csv,
        ),
        Format::Table => {
            let mut rows: Vec<Vec<String>> = measure_rows(&start)
                .into_iter()
                .zip(measure_rows(&report.measures))
                .map(|(mut s, b)| {
                    s.push(b[1].clone());
                    s
                })
                .collect();
            rows.push(vec![
                "score".into(),
                num(result.trace[0].best_score),
                num(report.best_score),
            ]);
            let mut t = render(&["measure", "start", "best"], &rows);
            t.push_str(&format!(
                "\nseed {}  iterations {}  evaluations {}  rng {}\n",
                report.seed, report.iterations, report.evaluations, report.rng
            ));
            t
        }
    };
    emit(io, None, &text)
}

#[derive(Serialize)]
struct AnovaReport {
    groups: Vec<String>,
    #[serde(flatten)]
    result: AnovaResult,
}

fn anova(io: &mut Io, path: &Path, format: Format) -> Result<()> {
    let text = read_text(io, path)?;
    let groups = parse_group_csv(&text).with_context(|| format!("reading {}", path.display()))?;
    let values: Vec<&[f64]> = groups.iter().map(|(_, v)| v.as_slice()).collect();
    let result = one_way_anova(&values)?;
    let report = AnovaReport {
        groups: groups.into_iter().map(|(g, _)| g).collect(),
        result,
    };
    let text = match format {
        Format::Json => to_json(&report),
        Format::Csv => format!(
            "df_between,df_within,f_value,p_value\n{},{},{},{}\n",
            result.df_between, result.df_within, result.f_value, result.p_value
        ),
        Format::Table => {
            let rows = vec![
                vec![
                    "between".into(),
                    result.df_between.to_string(),
                    num(result.ss_between),
                    num(result.ms_between()),
                    num(result.f_value),
                    num(result.p_value),
                ],
                vec![
                    "within".into(),
                    result.df_within.to_string(),
                    num(result.ss_within),
                    num(result.ms_within()),
                    String::new(),
                    String::new(),
                ],
            ];
            render(&["source", "df", "sum_sq", "mean_sq", "F", "p"], &rows)
        }
    };
    emit(io, None, &text)
}

fn load_ranks(io: &mut Io, path: &Path, column: &str) -> Result<RankVector> {
    let text = read_text(io, path)?;
    let column = read_labeled_column(&text, column).with_context(|| format!("reading {}", path.display()))?;
    let ranks = column
        .into_iter()
        .map(|(label, v)| {
            if v.fract() != 0.0 || v < 1.0 || v > u32::MAX as f64 {
                bail!("{}: rank `{v}` of `{label}` is not a positive integer", path.display());
            }
            Ok((label, v as u32))
        })
        .collect::<Result<Vec<_>>>()?;
    RankVector::from_ranks(ranks).with_context(|| format!("reading {}", path.display()))
}

#[derive(Serialize)]
struct RhoReport {
    n: usize,
    rho: f64,
}

fn compare_ranks(io: &mut Io, a: &Path, b: &Path, column: &str, format: Format) -> Result<()> {
    let ra = load_ranks(io, a, column)?;
    let rb = load_ranks(io, b, column)?;
    let report = RhoReport {
        n: ra.len(),
        rho: spearman_rho(&ra, &rb)?,
    };
    let text = match format {
        Format::Json => to_json(&report),
        Format::Csv => format!("n,rho\n{},{}\n", report.n, report.rho),
        Format::Table => render(&["n", "rho"], &[vec![report.n.to_string(), num(report.rho)]]),
    };
    emit(io, None, &text)
}

fn serve(io: &mut Io, host: &str, port: u16, cors_origin: Option<String>) -> Result<()> {
    let addr: SocketAddr = format!("{host}:{port}")
        .parse()
        .with_context(|| format!("invalid listen address {host}:{port}"))?;
    let config = ama_service::ServiceConfig { cors_origin };
    let runtime = tokio::runtime::Runtime::new().context("starting runtime")?;
    writeln!(io.stderr, "serving on http://{addr}")?;
    runtime.block_on(ama_service::serve(addr, &config)).context("serving")
}
