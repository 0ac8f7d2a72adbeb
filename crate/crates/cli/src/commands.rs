//! Subcommand execution: thin bindings from parsed flags to the library
//! operations, rendered through the deterministic writers in [`crate::output`].

use std::io::BufReader;
use std::path::Path;

use benford_core as core;
use benford_core::{
    benford_distribution, build_histogram, conformance_report, count_compositions,
    empirical_digit_distribution, entropy_convergence_table, entropy_density,
    enumerate_compositions_with_limit, normalize_weights, stationarity_check,
    tally_digits_by_enumeration_with_limit, tally_digits_closed_form, BoxSpec, ConformanceReport,
    DigitDistribution, DigitHistogram, DigitTally, IngestOptions, NumberBase, NumericDataset,
    SequenceKind, SequenceSpec, DEFAULT_ENUMERATION_LIMIT,
};

use crate::args::{
    ChartFormat, Command, EnsembleArgs, Format, GenFormat, SequenceName, TallyMethod,
};
use crate::output::{chart, csv, envelope, fmt_f64, table, Json};

/// Failure with its process exit code: 2 for I/O, 3 for domain errors.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<core::Error> for CliError {
    fn from(e: core::Error) -> Self {
        let code = match &e {
            core::Error::Io(_) => 2,
            _ => 3,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn ensemble_spec(args: &EnsembleArgs) -> Result<(BoxSpec, NumberBase), CliError> {
    let base = NumberBase::new(args.base)?;
    let spec = BoxSpec::for_base(args.boxes, args.balls, base)?;
    Ok((spec, base))
}

fn spec_json(spec: &BoxSpec, base: NumberBase) -> Json {
    Json::obj(vec![
        ("boxes", Json::U64(spec.boxes())),
        ("balls", Json::U64(spec.balls())),
        ("base", Json::U64(base.value())),
        ("cap", Json::U64(spec.cap())),
    ])
}

fn digit_map_f64(pairs: impl Iterator<Item = (u64, f64)>) -> Json {
    Json::Obj(pairs.map(|(d, p)| (d.to_string(), Json::F64(p))).collect())
}

pub fn execute(command: Command, invocation: &str) -> Result<String, CliError> {
    match command {
        Command::Dist { base, beta, format } => dist(base, beta, format, invocation),
        Command::Count { ensemble, format } => count(&ensemble, format, invocation),
        Command::Enumerate {
            ensemble,
            force,
            format,
        } => enumerate(&ensemble, force, format, invocation),
        Command::Tally {
            ensemble,
            method,
            force,
            format,
        } => tally(&ensemble, method, force, format, invocation),
        Command::Sample {
            ensemble,
            samples,
            seed,
            format,
        } => sample(&ensemble, samples, seed, format, invocation),
        Command::Stirling {
            mean_occupancy,
            boxes,
            format,
        } => stirling(mean_occupancy, &boxes, format, invocation),
        Command::Stationarity {
            n,
            beta,
            step,
            format,
        } => stationarity(n, beta, step, format, invocation),
        Command::Gen {
            kind,
            count,
            seed,
            power_base,
            mu,
            sigma,
            max_digits,
            format,
        } => gen(
            kind, count, seed, power_base, mu, sigma, max_digits, format, invocation,
        ),
        Command::Analyze {
            input,
            column,
            delimiter,
            base,
            format,
        } => analyze(&input, column, delimiter, base, format, invocation),
    }
}

fn distribution_rows(dist: &DigitDistribution) -> Vec<(u64, f64)> {
    dist.probabilities().iter().map(|(&d, &p)| (d, p)).collect()
}

fn dist(
    base: u64,
    beta: Option<f64>,
    format: ChartFormat,
    invocation: &str,
) -> Result<String, CliError> {
    let nb = NumberBase::new(base)?;
    let dist = match beta {
        Some(beta) => normalize_weights(beta, nb)?,
        None => benford_distribution(nb),
    };
    let rows = distribution_rows(&dist);
    Ok(match format {
        ChartFormat::Table => {
            let mut cells = vec![vec!["digit".to_string(), "probability".to_string()]];
            cells.extend(
                rows.iter()
                    .map(|(d, p)| vec![d.to_string(), format!("{p:.6}")]),
            );
            table(&cells)
        }
        ChartFormat::Csv => csv(
            &["digit", "probability"],
            &rows
                .iter()
                .map(|(d, p)| vec![d.to_string(), fmt_f64(*p)])
                .collect::<Vec<_>>(),
        ),
        ChartFormat::Chart => chart(&rows),
        ChartFormat::Json => {
            let result = Json::obj(vec![
                ("base", Json::U64(base)),
                ("probabilities", digit_map_f64(rows.into_iter())),
            ]);
            envelope(invocation, result, Vec::new())
        }
    })
}

fn count(args: &EnsembleArgs, format: Format, invocation: &str) -> Result<String, CliError> {
    let (spec, base) = ensemble_spec(args)?;
    let count = count_compositions(&spec);
    Ok(match format {
        Format::Table => format!("{count}\n"),
        Format::Csv => csv(&["count"], &[vec![count.to_string()]]),
        Format::Json => {
            let mut fields = spec_json(&spec, base);
            let Json::Obj(ref mut obj) = fields else {
                unreachable!()
            };
            obj.push(("count".to_string(), Json::Str(count.to_string())));
            envelope(invocation, fields, Vec::new())
        }
    })
}

fn enumeration_limit(force: bool) -> u64 {
    if force {
        u64::MAX
    } else {
        DEFAULT_ENUMERATION_LIMIT
    }
}

fn enumerate(
    args: &EnsembleArgs,
    force: bool,
    format: Format,
    invocation: &str,
) -> Result<String, CliError> {
    let (spec, base) = ensemble_spec(args)?;
    let stream = enumerate_compositions_with_limit(&spec, enumeration_limit(force))?;
    Ok(match format {
        Format::Table => {
            let mut out = String::new();
            for composition in stream {
                out.push_str(&composition.to_string());
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let header: Vec<String> = (1..=spec.boxes()).map(|i| format!("box_{i}")).collect();
            let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows: Vec<Vec<String>> = stream
                .map(|c| c.occupancies().iter().map(u64::to_string).collect())
                .collect();
            csv(&header_refs, &rows)
        }
        Format::Json => {
            let compositions: Vec<Json> = stream
                .map(|c| Json::Arr(c.occupancies().iter().map(|&d| Json::U64(d)).collect()))
                .collect();
            let result = Json::obj(vec![
                ("spec", spec_json(&spec, base)),
                ("count", Json::Str(count_compositions(&spec).to_string())),
                ("compositions", Json::Arr(compositions)),
            ]);
            envelope(invocation, result, Vec::new())
        }
    })
}

fn tally_output(
    tally: &DigitTally,
    spec: &BoxSpec,
    base: NumberBase,
    method: &str,
    format: Format,
    invocation: &str,
) -> String {
    let ratios = tally.ratios();
    match format {
        Format::Table => {
            let mut cells = vec![vec![
                "digit".to_string(),
                "count".to_string(),
                "ratio".to_string(),
            ]];
            for (&digit, count) in tally.counts() {
                cells.push(vec![
                    digit.to_string(),
                    count.to_string(),
                    format!("{:.6}", ratios[&digit]),
                ]);
            }
            cells.push(vec![
                "total".to_string(),
                tally.total().to_string(),
                String::new(),
            ]);
            table(&cells)
        }
        Format::Csv => csv(
            &["digit", "count", "ratio"],
            &tally
                .counts()
                .iter()
                .map(|(&d, c)| vec![d.to_string(), c.to_string(), fmt_f64(ratios[&d])])
                .collect::<Vec<_>>(),
        ),
        Format::Json => {
            let counts = Json::Obj(
                tally
                    .counts()
                    .iter()
                    .map(|(&d, c)| (d.to_string(), Json::Str(c.to_string())))
                    .collect(),
            );
            let result = Json::obj(vec![
                ("spec", spec_json(spec, base)),
                ("method", Json::Str(method.to_string())),
                ("counts", counts),
                ("total", Json::Str(tally.total().to_string())),
                ("ratios", digit_map_f64(ratios.into_iter())),
            ]);
            envelope(invocation, result, Vec::new())
        }
    }
}

fn tally(
    args: &EnsembleArgs,
    method: TallyMethod,
    force: bool,
    format: Format,
    invocation: &str,
) -> Result<String, CliError> {
    let (spec, base) = ensemble_spec(args)?;
    let (tally, name) = match method {
        TallyMethod::Enum => (
            tally_digits_by_enumeration_with_limit(&spec, enumeration_limit(force))?,
            "enum",
        ),
        TallyMethod::Closed => (tally_digits_closed_form(&spec), "closed"),
    };
    Ok(tally_output(&tally, &spec, base, name, format, invocation))
}

fn sample(
    args: &EnsembleArgs,
    samples: u64,
    seed: u64,
    format: ChartFormat,
    invocation: &str,
) -> Result<String, CliError> {
    let (spec, base) = ensemble_spec(args)?;
    let run = empirical_digit_distribution(&spec, samples, seed)?;
    let rows = distribution_rows(&run.distribution);
    Ok(match format {
        ChartFormat::Table => {
            let mut cells = vec![vec![
                "digit".to_string(),
                "frequency".to_string(),
                "std_error".to_string(),
            ]];
            for (digit, p) in &rows {
                cells.push(vec![
                    digit.to_string(),
                    format!("{p:.6}"),
                    format!("{:.6}", run.standard_errors[digit]),
                ]);
            }
            let mut out = table(&cells);
            out.push_str(&format!(
                "{} digits observed across {} samples (seed {seed})\n",
                run.digits_observed, run.samples
            ));
            out
        }
        ChartFormat::Csv => csv(
            &["digit", "frequency", "std_error"],
            &rows
                .iter()
                .map(|(d, p)| vec![d.to_string(), fmt_f64(*p), fmt_f64(run.standard_errors[d])])
                .collect::<Vec<_>>(),
        ),
        ChartFormat::Chart => chart(&rows),
        ChartFormat::Json => {
            let result = Json::obj(vec![
                ("spec", spec_json(&spec, base)),
                ("samples", Json::U64(run.samples)),
                ("seed", Json::U64(seed)),
                ("digits_observed", Json::U64(run.digits_observed)),
                ("frequencies", digit_map_f64(rows.into_iter())),
                (
                    "standard_errors",
                    digit_map_f64(run.standard_errors.iter().map(|(&d, &e)| (d, e))),
                ),
            ]);
            envelope(invocation, result, Vec::new())
        }
    })
}

fn stirling(
    mean_occupancy: f64,
    boxes: &[u64],
    format: Format,
    invocation: &str,
) -> Result<String, CliError> {
    let rows = entropy_convergence_table(mean_occupancy, boxes)?;
    Ok(match format {
        Format::Table => {
            let mut cells = vec![vec![
                "boxes".to_string(),
                "balls".to_string(),
                "stirling".to_string(),
                "exact".to_string(),
                "relative_error".to_string(),
            ]];
            for row in &rows {
                cells.push(vec![
                    row.boxes.to_string(),
                    row.balls.to_string(),
                    format!("{:.6}", row.stirling_value),
                    format!("{:.6}", row.exact_value),
                    fmt_f64(row.relative_error),
                ]);
            }
            table(&cells)
        }
        Format::Csv => csv(
            &["boxes", "balls", "stirling", "exact", "relative_error"],
            &rows
                .iter()
                .map(|row| {
                    vec![
                        row.boxes.to_string(),
                        row.balls.to_string(),
                        fmt_f64(row.stirling_value),
                        fmt_f64(row.exact_value),
                        fmt_f64(row.relative_error),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => {
            let entries: Vec<Json> = rows
                .iter()
                .map(|row| {
                    Json::obj(vec![
                        ("boxes", Json::U64(row.boxes)),
                        ("balls", Json::U64(row.balls)),
                        ("stirling", Json::F64(row.stirling_value)),
                        ("exact", Json::F64(row.exact_value)),
                        ("relative_error", Json::F64(row.relative_error)),
                    ])
                })
                .collect();
            let result = Json::obj(vec![
                ("mean_occupancy", Json::F64(mean_occupancy)),
                ("rows", Json::Arr(entries)),
            ]);
            envelope(invocation, result, Vec::new())
        }
    })
}

fn stationarity(
    n: f64,
    beta: f64,
    step: f64,
    format: Format,
    invocation: &str,
) -> Result<String, CliError> {
    let residual = stationarity_check(n, beta, step)?;
    let finite_difference = (entropy_density(n + step) - entropy_density(n - step)) / (2.0 * step);
    let analytic_derivative = (1.0 / n).ln_1p();
    Ok(match format {
        Format::Table => table(&[
            vec!["n".to_string(), fmt_f64(n)],
            vec!["beta".to_string(), fmt_f64(beta)],
            vec!["step".to_string(), fmt_f64(step)],
            vec!["finite_difference".to_string(), fmt_f64(finite_difference)],
            vec![
                "analytic_derivative".to_string(),
                fmt_f64(analytic_derivative),
            ],
            vec!["residual".to_string(), fmt_f64(residual)],
        ]),
        Format::Csv => csv(
            &[
                "n",
                "beta",
                "step",
                "finite_difference",
                "analytic_derivative",
                "residual",
            ],
            &[vec![
                fmt_f64(n),
                fmt_f64(beta),
                fmt_f64(step),
                fmt_f64(finite_difference),
                fmt_f64(analytic_derivative),
                fmt_f64(residual),
            ]],
        ),
        Format::Json => {
            let result = Json::obj(vec![
                ("n", Json::F64(n)),
                ("beta", Json::F64(beta)),
                ("step", Json::F64(step)),
                ("finite_difference", Json::F64(finite_difference)),
                ("analytic_derivative", Json::F64(analytic_derivative)),
                ("residual", Json::F64(residual)),
            ]);
            envelope(invocation, result, Vec::new())
        }
    })
}

fn skip_warnings(dataset: &NumericDataset) -> Vec<String> {
    let skipped = dataset.skipped();
    if skipped.total() == 0 {
        return Vec::new();
    }
    vec![format!(
        "skipped {} record(s): {} zero, {} non-numeric, {} non-finite",
        skipped.total(),
        skipped.zero,
        skipped.non_numeric,
        skipped.non_finite
    )]
}

#[allow(clippy::too_many_arguments)]
fn gen(
    kind: SequenceName,
    count: u64,
    seed: u64,
    power_base: u64,
    mu: f64,
    sigma: f64,
    max_digits: u64,
    format: GenFormat,
    invocation: &str,
) -> Result<String, CliError> {
    let kind = match kind {
        SequenceName::Fibonacci => SequenceKind::Fibonacci,
        SequenceName::Primes => SequenceKind::Primes,
        SequenceName::Powers => SequenceKind::Powers { base: power_base },
        SequenceName::Lognormal => SequenceKind::LogNormal { mu, sigma, seed },
    };
    let dataset = core::generate_sequence_with_budget(&SequenceSpec { kind, count }, max_digits)?;
    Ok(match format {
        GenFormat::Lines => {
            let mut out = String::new();
            for value in dataset.values() {
                out.push_str(&value.to_string());
                out.push('\n');
            }
            out
        }
        GenFormat::Json => {
            let values: Vec<Json> = dataset
                .values()
                .iter()
                .map(|v| Json::Str(v.to_string()))
                .collect();
            let skipped = dataset.skipped();
            let result = Json::obj(vec![
                ("source", Json::Str(dataset.source_label().to_string())),
                ("count", Json::U64(dataset.len() as u64)),
                ("values", Json::Arr(values)),
                (
                    "skipped",
                    Json::obj(vec![
                        ("zero", Json::U64(skipped.zero)),
                        ("non_numeric", Json::U64(skipped.non_numeric)),
                        ("non_finite", Json::U64(skipped.non_finite)),
                    ]),
                ),
            ]);
            envelope(invocation, result, skip_warnings(&dataset))
        }
    })
}

fn analyze_report_json(
    report: &ConformanceReport,
    histogram: &DigitHistogram,
    dataset: &NumericDataset,
    base: u64,
) -> Json {
    let skipped = dataset.skipped();
    Json::obj(vec![
        ("input", Json::Str(dataset.source_label().to_string())),
        ("base", Json::U64(base)),
        ("total", Json::U64(histogram.total())),
        (
            "skipped",
            Json::obj(vec![
                ("zero", Json::U64(skipped.zero)),
                ("non_numeric", Json::U64(skipped.non_numeric)),
                ("non_finite", Json::U64(skipped.non_finite)),
            ]),
        ),
        (
            "histogram",
            Json::Obj(
                histogram
                    .counts()
                    .iter()
                    .map(|(&d, &c)| (d.to_string(), Json::U64(c)))
                    .collect(),
            ),
        ),
        (
            "per_digit_deviation",
            digit_map_f64(report.per_digit_deviation.iter().map(|(&d, &v)| (d, v))),
        ),
        (
            "metrics",
            Json::obj(vec![
                ("chi_square_benford", Json::F64(report.chi_square_benford)),
                ("chi_square_uniform", Json::F64(report.chi_square_uniform)),
                ("mad_benford", Json::F64(report.mad_benford)),
                ("mad_uniform", Json::F64(report.mad_uniform)),
                ("kl_benford", Json::F64(report.kl_benford)),
                ("kl_uniform", Json::F64(report.kl_uniform)),
                ("degrees_of_freedom", Json::U64(report.degrees_of_freedom)),
            ]),
        ),
        ("verdict", Json::Str(report.verdict.as_str().to_string())),
    ])
}

fn analyze(
    input: &str,
    column: Option<std::num::NonZeroUsize>,
    delimiter: char,
    base: u64,
    format: ChartFormat,
    invocation: &str,
) -> Result<String, CliError> {
    let nb = NumberBase::new(base)?;
    let options = IngestOptions { column, delimiter };
    let dataset = if input == "-" {
        core::ingest_reader(BufReader::new(std::io::stdin().lock()), "-", &options)?
    } else {
        core::ingest_path(Path::new(input), &options)?
    };
    let histogram = build_histogram(&dataset, nb);
    let report = conformance_report(&histogram)?;
    let expected = benford_distribution(nb);
    let proportions = histogram.proportions().expect("non-empty after report");

    Ok(match format {
        ChartFormat::Table => {
            let mut cells = vec![vec![
                "digit".to_string(),
                "count".to_string(),
                "observed".to_string(),
                "benford".to_string(),
                "deviation".to_string(),
            ]];
            for (&digit, &count) in histogram.counts() {
                cells.push(vec![
                    digit.to_string(),
                    count.to_string(),
                    format!("{:.6}", proportions[&digit]),
                    format!("{:.6}", expected.probability(digit)),
                    format!("{:+.6}", report.per_digit_deviation[&digit]),
                ]);
            }
            let mut out = table(&cells);
            out.push('\n');
            let skipped = dataset.skipped();
            out.push_str(&table(&[
                vec!["total".to_string(), histogram.total().to_string()],
                vec![
                    "skipped".to_string(),
                    format!(
                        "{} (zero {}, non-numeric {}, non-finite {})",
                        skipped.total(),
                        skipped.zero,
                        skipped.non_numeric,
                        skipped.non_finite
                    ),
                ],
                vec![
                    "chi_square".to_string(),
                    format!(
                        "benford {:.6}, uniform {:.6} (df {})",
                        report.chi_square_benford,
                        report.chi_square_uniform,
                        report.degrees_of_freedom
                    ),
                ],
                vec![
                    "mad".to_string(),
                    format!(
                        "benford {:.6}, uniform {:.6}",
                        report.mad_benford, report.mad_uniform
                    ),
                ],
                vec![
                    "kl".to_string(),
                    format!(
                        "benford {:.6}, uniform {:.6}",
                        report.kl_benford, report.kl_uniform
                    ),
                ],
                vec!["verdict".to_string(), report.verdict.to_string()],
            ]));
            out
        }
        ChartFormat::Csv => csv(
            &["digit", "count", "observed", "benford", "deviation"],
            &histogram
                .counts()
                .iter()
                .map(|(&d, &c)| {
                    vec![
                        d.to_string(),
                        c.to_string(),
                        fmt_f64(proportions[&d]),
                        fmt_f64(expected.probability(d)),
                        fmt_f64(report.per_digit_deviation[&d]),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        ChartFormat::Chart => {
            let rows: Vec<(u64, f64)> = proportions.iter().map(|(&d, &p)| (d, p)).collect();
            let mut out = chart(&rows);
            out.push_str(&format!(
                "verdict: {} (mad benford {:.6}, mad uniform {:.6})\n",
                report.verdict, report.mad_benford, report.mad_uniform
            ));
            out
        }
        ChartFormat::Json => envelope(
            invocation,
            analyze_report_json(&report, &histogram, &dataset, base),
            skip_warnings(&dataset),
        ),
    })
}
