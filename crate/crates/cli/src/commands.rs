use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use sumprod_core::hp::Precision;
use sumprod_core::incidence::{incidence_degrees, line_set, rich_lines, rich_points, DecompositionCase, Sign};
use sumprod_core::setcalc::{arithmetic_set, cartesian_grid};
use sumprod_core::verifier::{
    check_exact_inequalities, check_incidence_consistency, check_st_reports, elekes_check, elekes_lines, proof_chain,
    theorem_report, ChainReport, InequalityReport,
};
use sumprod_core::Op;

use crate::input::{lines_text, load_lines, load_points, load_set, points_text, sha256_hex, LoadedSet};
use crate::output::{check_record, csv, emit, json, Summary, CHECK_HEADER};
use crate::stats::{stats_row, StatsRow, CSV_HEADER};
use crate::{CaseArg, Cli, Command, Format, SignArg};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Envelope<T: Serialize> {
    schema_version: u32,
    command: &'static str,
    run_id: String,
    input_digest: String,
    precision: u32,
    #[serde(flatten)]
    body: T,
}

struct Meta {
    command: &'static str,
    run_id: String,
    precision: u32,
}

impl Meta {
    fn wrap<T: Serialize>(&self, input_digest: String, body: T) -> Envelope<T> {
        Envelope {
            schema_version: SCHEMA_VERSION,
            command: self.command,
            run_id: self.run_id.clone(),
            input_digest,
            precision: self.precision,
            body,
        }
    }
}

/// Identifies the configuration, not the moment: identical invocations
/// share a run id.
fn run_id(cli: &Cli) -> String {
    let key = format!("{:?}|{}|{:?}", cli.command, cli.common.precision, cli.common.format);
    sha256_hex(&key)[..16].to_string()
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Stats { .. } => "stats",
        Command::Verify { .. } => "verify",
        Command::Chain { .. } => "chain",
        Command::Incidence { .. } => "incidence",
        Command::Scan { .. } => "scan",
    }
}

fn checks_csv<'a>(checks: impl IntoIterator<Item = &'a InequalityReport>) -> String {
    csv(&CHECK_HEADER, checks.into_iter().map(check_record))
}

pub fn run(cli: &Cli) -> Result<u8, String> {
    let hp = Precision::new(cli.common.precision as usize).map_err(|e| e.to_string())?;
    let format = cli.common.format.unwrap_or(match cli.command {
        Command::Scan { .. } => Format::Csv,
        _ => Format::Json,
    });
    let meta = Meta { command: name(&cli.command), run_id: run_id(cli), precision: cli.common.precision };
    let output = cli.common.output.as_deref();

    match &cli.command {
        Command::Stats { set } => {
            let loaded = load_set(set)?;
            let row = stats_row(set, &loaded.set, hp);
            let text = match format {
                Format::Json => json(
                    &meta.wrap(digest(&loaded), StatsBody { duplicate_lines: &loaded.duplicate_lines, stats: &row }),
                ),
                Format::Csv => csv(&CSV_HEADER, [row.csv_record()]),
            };
            emit(output, &text)?;
            Ok(0)
        }
        Command::Verify { set, no_multiplicative } => {
            let loaded = load_set(set)?;
            let checks = verify(&loaded, !no_multiplicative, hp)?;
            let summary = Summary::of(&checks);
            let text = match format {
                Format::Json => json(&meta.wrap(digest(&loaded), ChecksBody { summary, checks: &checks })),
                Format::Csv => checks_csv(&checks),
            };
            emit(output, &text)?;
            Ok(summary.exit_code())
        }
        Command::Chain { set, case, sign } => {
            let loaded = load_set(set)?;
            let cases: &[DecompositionCase] = match case {
                CaseArg::Ratio => &[DecompositionCase::Ratio],
                CaseArg::Product => &[DecompositionCase::Product],
                CaseArg::Both => &[DecompositionCase::Ratio, DecompositionCase::Product],
            };
            let signs: &[Sign] = match sign {
                SignArg::Diff => &[Sign::Minus],
                SignArg::Sum => &[Sign::Plus],
                SignArg::Both => &[Sign::Minus, Sign::Plus],
            };
            let mut chains = Vec::new();
            for &c in cases {
                for &s in signs {
                    chains.push(proof_chain(&loaded.set, c, s, hp).map_err(|e| e.to_string())?);
                }
            }
            let theorem = theorem_report(&loaded.set, hp).map_err(|e| e.to_string())?;
            let summary = Summary::of(chains.iter().flat_map(|c| &c.steps).chain(&theorem));
            let text = match format {
                Format::Json => {
                    json(&meta.wrap(digest(&loaded), ChainBody { summary, chains: &chains, theorem: &theorem }))
                }
                Format::Csv => chain_csv(&chains, &theorem),
            };
            emit(output, &text)?;
            Ok(summary.exit_code())
        }
        Command::Incidence { points, lines, rich } => {
            let (body, digest) = incidence(points, lines, rich, hp)?;
            let summary = body.summary;
            let text = match format {
                Format::Json => json(&meta.wrap(digest, body)),
                Format::Csv => checks_csv(&body.checks),
            };
            emit(output, &text)?;
            Ok(summary.exit_code())
        }
        Command::Scan { template, from, to, step, jobs } => {
            let rows = scan(template, *from, *to, *step, *jobs, hp)?;
            let text = match format {
                Format::Json => {
                    let digest = sha256_hex(&rows.iter().map(|r| format!("{}\n", r.family_spec)).collect::<String>());
                    json(&meta.wrap(digest, ScanBody { rows: &rows }))
                }
                Format::Csv => csv(&CSV_HEADER, rows.iter().map(StatsRow::csv_record)),
            };
            emit(output, &text)?;
            Ok(0)
        }
    }
}

fn digest(loaded: &LoadedSet) -> String {
    sha256_hex(&loaded.set.canonical_text())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct StatsBody<'a> {
    duplicate_lines: &'a [usize],
    stats: &'a StatsRow,
}

#[derive(Serialize)]
struct ChecksBody<'a> {
    summary: Summary,
    checks: &'a [InequalityReport],
}

#[derive(Serialize)]
struct ChainBody<'a> {
    summary: Summary,
    chains: &'a [ChainReport],
    theorem: &'a [InequalityReport],
}

#[derive(Serialize)]
struct ScanBody<'a> {
    rows: &'a [StatsRow],
}

/// The exact suite, incidence reports for `A×A` against the difference
/// line family, and the line-family inclusion for both signs.
fn verify(loaded: &LoadedSet, multiplicative: bool, hp: Precision) -> Result<Vec<InequalityReport>, String> {
    let a = &loaded.set;
    let mut checks = check_exact_inequalities(a, multiplicative, hp).map_err(|e| e.to_string())?;
    let diffs = arithmetic_set(a, a, Op::Diff).map_err(|e| e.to_string())?;
    checks.extend(check_st_reports(&cartesian_grid(a), &elekes_lines(a, &diffs), hp));
    if multiplicative {
        for sign in [Sign::Minus, Sign::Plus] {
            checks.extend(elekes_check(a, sign, hp).map_err(|e| e.to_string())?);
        }
    }
    checks.sort_by(|x, y| x.check_id.cmp(&y.check_id));
    Ok(checks)
}

fn chain_csv(chains: &[ChainReport], theorem: &[InequalityReport]) -> String {
    let mut header = vec!["case", "sign"];
    header.extend(CHECK_HEADER);
    let case = |c: DecompositionCase| match c {
        DecompositionCase::Ratio => "ratio",
        DecompositionCase::Product => "product",
    };
    let rows = chains
        .iter()
        .flat_map(|c| c.steps.iter().map(move |s| (case(c.case), c.sign, s)))
        .chain(theorem.iter().map(|s| ("theorem", "", s)))
        .map(|(c, s, r)| {
            let mut rec = vec![c.to_string(), s.to_string()];
            rec.extend(check_record(r));
            rec
        });
    csv(&header, rows)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RichRow {
    t: usize,
    points: usize,
    lines: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct IncidenceBody {
    point_count: usize,
    line_count: usize,
    incidences: usize,
    rich: Vec<RichRow>,
    summary: Summary,
    checks: Vec<InequalityReport>,
}

fn incidence(points: &Path, lines: &Path, rich: &[usize], hp: Precision) -> Result<(IncidenceBody, String), String> {
    let pts = load_points(points)?;
    let ls = load_lines(lines)?;
    let ls = line_set(ls);
    let digest = sha256_hex(&format!("{}\n{}", points_text(&pts), lines_text(&ls)));
    let (pd, _) = incidence_degrees(&pts, &ls);
    let thresholds: Vec<usize> = if rich.is_empty() {
        let max = pd.iter().copied().max().unwrap_or(0);
        std::iter::successors(Some(1usize), |t| Some(t * 2)).take_while(|t| *t <= max.max(1)).collect()
    } else {
        rich.to_vec()
    };
    let rich = thresholds
        .iter()
        .map(|&t| RichRow { t, points: rich_points(&pts, &ls, t).len(), lines: rich_lines(&pts, &ls, t).len() })
        .collect();
    let mut checks = check_incidence_consistency(&pts, &ls, hp);
    checks.extend(check_st_reports(&pts, &ls, hp));
    let body = IncidenceBody {
        point_count: pts.len(),
        line_count: ls.len(),
        incidences: pd.iter().sum(),
        rich,
        summary: Summary::of(&checks),
        checks,
    };
    Ok((body, digest))
}

fn scan(
    template: &str,
    from: usize,
    to: usize,
    step: usize,
    jobs: usize,
    hp: Precision,
) -> Result<Vec<StatsRow>, String> {
    if !template.contains("{n}") {
        return Err(format!("template `{template}` has no {{n}} placeholder"));
    }
    if step == 0 || from > to {
        return Err(format!("empty sweep {from}..={to} step {step}"));
    }
    let specs: Vec<String> = (from..=to).step_by(step).map(|n| template.replace("{n}", &n.to_string())).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| e.to_string())?;
    let rows: Vec<Result<StatsRow, String>> =
        pool.install(|| specs.par_iter().map(|s| load_set(s).map(|l| stats_row(s, &l.set, hp))).collect());
    rows.into_iter().collect()
}
