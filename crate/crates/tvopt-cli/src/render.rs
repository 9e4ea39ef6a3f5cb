//! Deterministic rendering of results as text, JSON, or CSV.
//!
//! All numbers go through [`fmt12`]: twelve significant digits, trailing
//! zeros trimmed, so repeated runs on the same input are byte-identical.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;
use tvopt::{
    DivergenceReport, ExtremumSolution, LevelPartition, ProblemKind, SweepPoint,
};

/// Output encodings shared by the subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Oracle cross-check outcome attached to a solve report.
#[derive(Debug, Clone, Copy)]
pub struct Verification {
    pub oracle_value: f64,
    pub discrepancy: f64,
}

/// Formats `x` with twelve significant digits and trimmed trailing zeros.
///
/// Magnitudes outside `[1e-4, 1e13)` switch to exponent notation; zero,
/// infinities, and NaN render as `0`, `inf`/`-inf`, and `nan`.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-4..13).contains(&exponent) {
        let precision = (11 - exponent).max(0) as usize;
        trim_fixed(format!("{x:.precision$}"))
    } else {
        let formatted = format!("{x:.11e}");
        let (mantissa, exp) = formatted.split_once('e').expect("exponent notation");
        format!("{}e{}", trim_fixed(mantissa.to_string()), exp)
    }
}

fn trim_fixed(text: String) -> String {
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    }
}

/// JSON value for an `f64`, falling back to a string for non-finite inputs
/// (JSON has no literal for them).
fn json_num(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(fmt12(x)))
}

fn indices(set: &[usize]) -> String {
    let joined = set
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    format!("{{{joined}}}")
}

fn vector(values: &[f64]) -> String {
    let joined = values.iter().map(|&x| fmt12(x)).collect::<Vec<_>>().join(", ");
    format!("[{joined}]")
}

#[derive(Serialize)]
struct PartitionDto {
    direction: String,
    oscillation: f64,
    sets: Vec<SetDto>,
}

#[derive(Serialize)]
struct SetDto {
    label: String,
    level: f64,
    indices: Vec<usize>,
}

fn partition_dto(partition: &LevelPartition) -> PartitionDto {
    PartitionDto {
        direction: partition.direction().to_string(),
        oscillation: partition.ell_max() - partition.ell_min(),
        sets: partition
            .labelled_sets()
            .into_iter()
            .map(|(label, set, level)| SetDto {
                label,
                level,
                indices: set.to_vec(),
            })
            .collect(),
    }
}

/// Renders the report of a single solve.
pub fn solve(
    kind: ProblemKind,
    name: Option<&str>,
    budget: f64,
    solution: &ExtremumSolution,
    verification: Option<&Verification>,
    format: Format,
) -> String {
    let budget_key = if kind.takes_radius() { "radius" } else { "target" };
    match format {
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("problem: {kind}\n"));
            if let Some(name) = name {
                out.push_str(&format!("instance: {name}\n"));
            }
            out.push_str(&format!("{budget_key}: {}\n", fmt12(budget)));
            out.push_str(&format!("value: {}\n", fmt12(solution.value)));
            out.push_str(&format!("alpha: {}\n", fmt12(solution.alpha)));
            out.push_str(&format!("saturated: {}\n", solution.saturated));
            out.push_str("set masses:\n");
            for mass in &solution.set_masses {
                out.push_str(&format!("  {} = {}\n", mass.label, fmt12(mass.mass)));
            }
            out.push_str(&format!("nu*: {}\n", vector(solution.nu_star.entries())));
            out.push_str(&format!(
                "partition ({}): {}\n",
                solution.partition.direction(),
                solution
                    .partition
                    .labelled_sets()
                    .into_iter()
                    .map(|(label, set, _)| format!("{label} = {}", indices(set)))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            if let Some(check) = verification {
                out.push_str(&format!(
                    "oracle: value {}, discrepancy {}\n",
                    fmt12(check.oracle_value),
                    fmt12(check.discrepancy)
                ));
            }
            out
        }
        Format::Json => {
            #[derive(Serialize)]
            struct VerifyDto {
                oracle_value: f64,
                discrepancy: f64,
            }
            #[derive(Serialize)]
            struct MassDto {
                label: String,
                mass: f64,
            }
            #[derive(Serialize)]
            struct SolveDto<'a> {
                problem: String,
                #[serde(skip_serializing_if = "Option::is_none")]
                instance: Option<&'a str>,
                budget_kind: &'a str,
                budget: f64,
                value: f64,
                alpha: f64,
                saturated: bool,
                set_masses: Vec<MassDto>,
                nu_star: &'a [f64],
                partition: PartitionDto,
                #[serde(skip_serializing_if = "Option::is_none")]
                verification: Option<VerifyDto>,
            }
            let dto = SolveDto {
                problem: kind.to_string(),
                instance: name,
                budget_kind: budget_key,
                budget,
                value: solution.value,
                alpha: solution.alpha,
                saturated: solution.saturated,
                set_masses: solution
                    .set_masses
                    .iter()
                    .map(|m| MassDto {
                        label: m.label.clone(),
                        mass: m.mass,
                    })
                    .collect(),
                nu_star: solution.nu_star.entries(),
                partition: partition_dto(&solution.partition),
                verification: verification.map(|check| VerifyDto {
                    oracle_value: check.oracle_value,
                    discrepancy: check.discrepancy,
                }),
            };
            pretty(&dto)
        }
        Format::Csv => {
            let mut out = String::from("key,value\n");
            out.push_str(&format!("problem,{kind}\n"));
            if let Some(name) = name {
                out.push_str(&format!("instance,{name}\n"));
            }
            out.push_str(&format!("{budget_key},{}\n", fmt12(budget)));
            out.push_str(&format!("value,{}\n", fmt12(solution.value)));
            out.push_str(&format!("alpha,{}\n", fmt12(solution.alpha)));
            out.push_str(&format!("saturated,{}\n", solution.saturated));
            for mass in &solution.set_masses {
                out.push_str(&format!("set_mass.{},{}\n", mass.label, fmt12(mass.mass)));
            }
            for (i, &x) in solution.nu_star.entries().iter().enumerate() {
                out.push_str(&format!("nu_star.{i},{}\n", fmt12(x)));
            }
            if let Some(check) = verification {
                out.push_str(&format!("oracle_value,{}\n", fmt12(check.oracle_value)));
                out.push_str(&format!("discrepancy,{}\n", fmt12(check.discrepancy)));
            }
            out
        }
    }
}

/// Renders a sweep as CSV with the fixed `budget,value,saturated,alpha`
/// header, optionally extended with one `nu_i` column per symbol.
pub fn sweep_csv(rows: &[SweepPoint], include_nu: bool) -> String {
    let mut out = String::from("budget,value,saturated,alpha");
    if include_nu {
        let n = rows.first().map_or(0, |row| row.nu_star.len());
        for i in 0..n {
            out.push_str(&format!(",nu_{i}"));
        }
    }
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}",
            fmt12(row.budget),
            fmt12(row.value),
            row.saturated,
            fmt12(row.alpha)
        ));
        if include_nu {
            for &x in row.nu_star.entries() {
                out.push(',');
                out.push_str(&fmt12(x));
            }
        }
        out.push('\n');
    }
    out
}

/// Renders a level-set partition.
pub fn partition(partition: &LevelPartition, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("direction: {}\n", partition.direction()));
            out.push_str(&format!(
                "oscillation: {}\n",
                fmt12(partition.ell_max() - partition.ell_min())
            ));
            for (label, set, level) in partition.labelled_sets() {
                out.push_str(&format!(
                    "{label} (level {}): {}\n",
                    fmt12(level),
                    indices(set)
                ));
            }
            out
        }
        Format::Json => pretty(&partition_dto(partition)),
        Format::Csv => {
            let mut out = String::from("label,level,indices\n");
            for (label, set, level) in partition.labelled_sets() {
                let joined = set
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" ");
                out.push_str(&format!("{label},{},{joined}\n", fmt12(level)));
            }
            out
        }
    }
}

/// Renders a divergence report between two distributions.
pub fn metrics(report: &DivergenceReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("tv: {}\n", fmt12(report.tv)));
            out.push_str(&format!("kl: {}\n", fmt12(report.kl)));
            out.push_str(&format!(
                "hellinger_integral: {}\n",
                fmt12(report.hellinger_integral)
            ));
            out.push_str(&format!("kh_distance: {}\n", fmt12(report.kh_distance)));
            out.push_str("bounds:\n");
            for bound in &report.bounds {
                let verdict = if bound.holds { "holds" } else { "VIOLATED" };
                out.push_str(&format!(
                    "  {}: {verdict}, slack {}\n",
                    bound.name,
                    fmt12(bound.slack)
                ));
            }
            out
        }
        Format::Json => {
            #[derive(Serialize)]
            struct BoundDto {
                name: &'static str,
                holds: bool,
                slack: Value,
            }
            #[derive(Serialize)]
            struct MetricsDto {
                tv: Value,
                kl: Value,
                hellinger_integral: Value,
                kh_distance: Value,
                bounds: Vec<BoundDto>,
            }
            let dto = MetricsDto {
                tv: json_num(report.tv),
                kl: json_num(report.kl),
                hellinger_integral: json_num(report.hellinger_integral),
                kh_distance: json_num(report.kh_distance),
                bounds: report
                    .bounds
                    .iter()
                    .map(|bound| BoundDto {
                        name: bound.name,
                        holds: bound.holds,
                        slack: json_num(bound.slack),
                    })
                    .collect(),
            };
            pretty(&dto)
        }
        Format::Csv => {
            let mut out = String::from("key,value\n");
            out.push_str(&format!("tv,{}\n", fmt12(report.tv)));
            out.push_str(&format!("kl,{}\n", fmt12(report.kl)));
            out.push_str(&format!(
                "hellinger_integral,{}\n",
                fmt12(report.hellinger_integral)
            ));
            out.push_str(&format!("kh_distance,{}\n", fmt12(report.kh_distance)));
            for bound in &report.bounds {
                out.push_str(&format!("bound.{}.holds,{}\n", bound.name, bound.holds));
                out.push_str(&format!(
                    "bound.{}.slack,{}\n",
                    bound.name,
                    fmt12(bound.slack)
                ));
            }
            out
        }
    }
}

/// Renders the saturation radius and the nominal expectation.
pub fn limits(r_max: f64, d_max: f64, format: Format) -> String {
    match format {
        Format::Text => format!("R_max = {}\nD_max = {}\n", fmt12(r_max), fmt12(d_max)),
        Format::Json => {
            #[derive(Serialize)]
            struct LimitsDto {
                r_max: f64,
                d_max: f64,
            }
            pretty(&LimitsDto { r_max, d_max })
        }
        Format::Csv => format!("key,value\nr_max,{}\nd_max,{}\n", fmt12(r_max), fmt12(d_max)),
    }
}

fn pretty<T: Serialize>(dto: &T) -> String {
    let mut text = serde_json::to_string_pretty(dto).expect("reports contain no non-string keys");
    text.push('\n');
    text
}
