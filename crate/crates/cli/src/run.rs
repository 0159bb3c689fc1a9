//! Dispatch of a validated configuration to the library.

use std::time::Instant;

use dynsamp::disc::{carleson_report, gap_ratios, CarlesonOptions, DiscSequence};
use dynsamp::frames::{carleson_frame_experiment, orbit_matrix, DiagonalSystem};
use dynsamp::hardy::{interpolate_with_tolerance, kernel_gram, phi_lambda, tail_bound, Degree};
use dynsamp::linalg::vector_norm;
use dynsamp::repr::{
    example_factory, expansion_residuals, kernel_shift_check, norm_ratio_sequence,
    restricted_norm_estimate, DualFamily, Example, VectorFamily,
};
use dynsamp::{Complex64, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Command, ExperimentConfig, SequenceConfig};
use crate::error::{CliError, Context};
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub config_hash: String,
    pub version: &'static str,
    pub output: String,
    pub duration_ms: f64,
    pub summary: Value,
    pub rows: Value,
}

/// Result of a command before it is written anywhere.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    pub summary: Value,
}

/// Runs the command, writes the output file and returns the report.
pub fn run(config: &ExperimentConfig) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let outcome = execute(config)?;
    outcome
        .table
        .write(&config.output.path, config.output.format)?;
    Ok(RunReport {
        command: config.command.name(),
        config_hash: config.hash(),
        version: env!("CARGO_PKG_VERSION"),
        output: config.output.path.display().to_string(),
        duration_ms: start.elapsed().as_secs_f64() * 1e3,
        summary: outcome.summary,
        rows: outcome.table.to_json_value(),
    })
}

/// Pure part of [`run`].
pub fn execute(config: &ExperimentConfig) -> Result<Outcome, CliError> {
    match config.command {
        Command::Carleson => carleson(config),
        Command::Interpolate => interpolate(config),
        Command::FrameSweep => frame_sweep(config),
        Command::Represent => represent(config),
        Command::Examples => examples(config),
    }
}

fn sequence(config: &ExperimentConfig, count: usize) -> Result<DiscSequence, CliError> {
    let seq = config.sequence()?;
    match seq {
        SequenceConfig::Explicit { values } => {
            if count > values.len() {
                return Err(CliError::Config(format!(
                    "K = {count} exceeds the {} explicit values",
                    values.len()
                )));
            }
            let pts = values[..count]
                .iter()
                .map(|[re, im]| Complex64::new(*re, *im))
                .collect();
            DiscSequence::with_separation(pts, config.tolerances.separation).context("sequence")
        }
        _ => seq.spec().generate(count).context("sequence"),
    }
}

fn carleson(config: &ExperimentConfig) -> Result<Outcome, CliError> {
    let seq = sequence(config, config.point_count()?)?;
    let opts = CarlesonOptions {
        ratio_bound: config.ratio_bound,
        tail_diverges: false,
    };
    let report = carleson_report(&seq, &opts).context("carleson")?;
    let ratios = gap_ratios(&seq);
    let mut table = Table::new(vec!["k", "lambda_re", "lambda_im", "delta_n", "ratio"]);
    for (i, delta) in report.per_index_products.iter().enumerate() {
        let lambda = seq.value(i);
        table.push(vec![
            (i + 1).into(),
            lambda.re.into(),
            lambda.im.into(),
            (*delta).into(),
            ratios.get(i).copied().into(),
        ]);
    }
    table.push(vec![
        "summary".into(),
        Cell::Empty,
        Cell::Empty,
        report.infimum.into(),
        report.ratio_sup.into(),
    ]);
    Ok(Outcome {
        table,
        summary: json!({
            "infimum": report.infimum,
            "ratio_sup": report.ratio_sup,
            "tail_sum": report.tail_sum,
            "verdict": format!("{:?}", report.verdict),
        }),
    })
}

fn interpolate(config: &ExperimentConfig) -> Result<Outcome, CliError> {
    let k = config.point_count()?;
    let seq = sequence(config, k)?;
    let degree = config.degree()?;
    let gram = kernel_gram(&seq).context("interpolate")?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let count = config.targets.unwrap_or(1);
    let mut table = Table::new(vec![
        "target",
        "degree",
        "relative_residual",
        "interpolant_norm",
        "tail_bound",
    ]);
    let mut worst: f64 = 0.0;
    for t in 0..count {
        let target: Vec<Complex64> = (0..k)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let f = interpolate_with_tolerance(&seq, &target, degree, config.tolerances.tail)
            .context("interpolate")?;
        let diff: Vec<Complex64> = phi_lambda(&f, &seq)
            .iter()
            .zip(&target)
            .map(|(a, b)| a - b)
            .collect();
        let residual = vector_norm(&diff) / vector_norm(&target);
        worst = worst.max(residual);
        table.push(vec![
            (t + 1).into(),
            f.degree().into(),
            residual.into(),
            f.norm().into(),
            tail_bound(&seq, f.degree()).into(),
        ]);
    }
    Ok(Outcome {
        table,
        summary: json!({
            "max_relative_residual": worst,
            "within_tolerance": worst <= config.tolerances.residual,
            "gram_condition": gram.condition_number(),
            "auto_degree": matches!(degree, Degree::Auto),
        }),
    })
}

fn frame_sweep(config: &ExperimentConfig) -> Result<Outcome, CliError> {
    let spec = config.sequence()?.spec();
    let k_list = config.k_list.as_deref().unwrap_or_default();
    let n_list = config.n_list.as_deref().unwrap_or_default();
    let rows = carleson_frame_experiment(&spec, k_list, n_list).context("frame-sweep")?;
    let mut table = Table::new(vec!["K", "N", "A", "B", "delta"]);
    for r in &rows {
        table.push(vec![
            r.k.into(),
            r.n.into(),
            r.lower.into(),
            r.upper.into(),
            r.delta.into(),
        ]);
    }
    let min_lower = rows.iter().map(|r| r.lower).fold(f64::INFINITY, f64::min);
    Ok(Outcome {
        table,
        summary: json!({ "cells": rows.len(), "min_lower": min_lower }),
    })
}

fn family(config: &ExperimentConfig) -> Result<VectorFamily, CliError> {
    let ex = config.example()?;
    if ex.name == "orbit" {
        let sys =
            DiagonalSystem::new(sequence(config, config.point_count()?)?).context("represent")?;
        let n = config.n.unwrap_or(ex.count.saturating_sub(1));
        return VectorFamily::new(orbit_matrix(&sys, n).entries().clone())
            .map(|f| f.with_label("orbit"))
            .context("represent");
    }
    let example = Example::from_name(&ex.name, ex.factor).context("example.name")?;
    let d = ex
        .dimension
        .unwrap_or_else(|| example.required_dimension(ex.count));
    example_factory(example, d, ex.count).context("represent")
}

/// `Ok(None)` for rank-deficient families, where the quantity is undefined.
fn optional<T>(r: dynsamp::Result<T>, what: &str) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Rank { .. }) => Ok(None),
        Err(e) => Err(e).context(what),
    }
}

fn represent(config: &ExperimentConfig) -> Result<Outcome, CliError> {
    let f = family(config)?;
    let estimate = optional(restricted_norm_estimate(&f), "restricted norm")?;
    let ratios = norm_ratio_sequence(&f).context("norm ratios")?;
    let kernel = kernel_shift_check(&f, config.tolerances.kernel);
    let expansion = if f.rank() == f.len() {
        let dual = DualFamily::canonical(&f).context("dual family")?;
        Some(
            expansion_residuals(&f, &dual)
                .context("expansion residuals")?
                .into_iter()
                .fold(0.0, f64::max),
        )
    } else {
        None
    };
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    let mut table = Table::new(vec![
        "family",
        "d",
        "N",
        "restricted_norm",
        "max_norm_ratio",
        "kernel_dimension",
        "kernel_residual",
        "max_expansion_residual",
    ]);
    table.push(vec![
        f.label().unwrap_or("family").into(),
        f.dimension().into(),
        f.len().into(),
        estimate.into(),
        max_ratio.into(),
        kernel.kernel_dimension.into(),
        kernel.max_residual.into(),
        expansion.into(),
    ]);
    Ok(Outcome {
        table,
        summary: json!({
            "kernel_invariant_within_tolerance": kernel.invariant_within_tolerance(),
            "kernel_outside_residual": kernel.max_outside_kernel,
            "norm_ratios": ratios,
        }),
    })
}

fn examples(config: &ExperimentConfig) -> Result<Outcome, CliError> {
    let ex = config.example()?;
    let example = Example::from_name(&ex.name, ex.factor).context("example.name")?;
    let weights = example.weights(ex.count).context("examples")?;
    let mut table = Table::new(vec!["k", "coefficient"]);
    for (i, w) in weights.iter().enumerate() {
        table.push(vec![(i + 1).into(), (*w).into()]);
    }
    Ok(Outcome {
        table,
        summary: json!({ "family": example.name(), "count": weights.len() }),
    })
}
