//! Experiment harness comparing the constructive decomposition against the
//! exact oracles on generated instances.
//!
//! CSV columns, in order:
//!
//! | column | meaning |
//! |---|---|
//! | `id` | instance index |
//! | `m`, `n` | dimensions |
//! | `seed` | generator seed of the instance (empty for enumerated instances) |
//! | `rank` | exact rank |
//! | `indep_size` | size of the greedy independent column set |
//! | `terms` | constructive decomposition length |
//! | `ur`, `ur_exhausted`, `ur_lower` | signed rectangle rank search |
//! | `p`, `p_exhausted`, `p_lower` | partition number search |
//! | `mono_density` | largest monochromatic rectangle density, `a/b` |
//! | `ur_nodes`, `p_nodes` | search nodes visited |
//! | `time_decompose_us`, `time_ur_us`, `time_p_us`, `time_mono_us` | wall time |
//!
//! Oracle columns are empty when that stage is disabled. The timing
//! columns are last and can be omitted for byte-identical reruns.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::decompose::{decompose_with, independent_set_bound_check, DecomposeOptions};
use crate::error::{Error, Result};
use crate::generate::{all_matrices, generate_matrix, MatrixKind};
use crate::matrix::BoolMatrix;
use crate::oracles::{
    exact_partition_number, exact_signed_rank, max_monochromatic_rectangle, SearchBudget,
};
use crate::rank::exact_rank;

#[derive(Debug, Clone)]
pub enum InstanceSource {
    /// `count` instances of `kind`; instance `i` uses seed `seed + i`.
    Generated { kind: MatrixKind, count: usize },
    /// Every `m x n` matrix.
    Exhaustive { m: usize, n: usize },
    /// Explicit matrices.
    Given(Vec<BoolMatrix>),
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub source: InstanceSource,
    pub seed: u64,
    pub budget: SearchBudget,
    pub signed_rank: bool,
    pub partition: bool,
    pub monochromatic: bool,
    pub decompose: DecomposeOptions,
}

impl ExperimentConfig {
    pub fn new(source: InstanceSource) -> Self {
        Self {
            source,
            seed: 0,
            budget: SearchBudget::default(),
            signed_rank: true,
            partition: true,
            monochromatic: true,
            decompose: DecomposeOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub id: usize,
    pub m: usize,
    pub n: usize,
    pub seed: Option<u64>,
    pub rank: usize,
    pub indep_size: usize,
    pub terms: usize,
    pub ur: Option<usize>,
    pub ur_exhausted: Option<bool>,
    pub ur_lower: Option<usize>,
    pub p: Option<usize>,
    pub p_exhausted: Option<bool>,
    pub p_lower: Option<usize>,
    pub mono_density: Option<String>,
    pub ur_nodes: Option<u64>,
    pub p_nodes: Option<u64>,
    pub time_decompose_us: u128,
    pub time_ur_us: Option<u128>,
    pub time_p_us: Option<u128>,
    pub time_mono_us: Option<u128>,
}

/// Number of leading CSV columns that do not depend on wall time.
pub const DETERMINISTIC_COLUMNS: usize = 16;

fn instances(config: &ExperimentConfig) -> Result<Vec<(BoolMatrix, Option<u64>)>> {
    let list: Vec<(BoolMatrix, Option<u64>)> = match &config.source {
        InstanceSource::Generated { kind, count } => (0..*count)
            .map(|i| {
                let seed = config.seed.wrapping_add(i as u64);
                generate_matrix(kind, seed).map(|m| (m, Some(seed)))
            })
            .collect::<Result<_>>()?,
        InstanceSource::Exhaustive { m, n } => all_matrices(*m, *n)?.map(|x| (x, None)).collect(),
        InstanceSource::Given(ms) => ms.iter().cloned().map(|x| (x, None)).collect(),
    };
    if list.is_empty() {
        return Err(Error::Usage("experiment has no instances".into()));
    }
    Ok(list)
}

fn micros(start: Instant) -> u128 {
    start.elapsed().as_micros()
}

/// Runs one instance and checks reconstruction, the `2|S|` term bound,
/// `2^|S| <= (|S|+1)^r` and, where the oracles finish, `r <= ur <= p` and
/// `ur <= terms`.
pub fn run_instance(
    id: usize,
    matrix: &BoolMatrix,
    seed: Option<u64>,
    config: &ExperimentConfig,
) -> Result<ExperimentRecord> {
    let fail = |what: &str| Error::Validation(format!("instance {id} ({matrix:?}): {what}"));

    let rank = exact_rank(matrix);
    let start = Instant::now();
    let constructive = decompose_with(matrix, &config.decompose)?;
    let time_decompose_us = micros(start);
    let decomposition = &constructive.decomposition;
    let indep_size = constructive.independent.len();
    if !decomposition.verify(matrix)? {
        return Err(fail("constructive decomposition does not reconstruct"));
    }
    if decomposition.len() > 2 * indep_size {
        return Err(fail("more than 2|S| terms"));
    }
    if !independent_set_bound_check(indep_size, rank) {
        return Err(fail("independent set violates 2^|S| <= (|S|+1)^r"));
    }

    let mut record = ExperimentRecord {
        id,
        m: matrix.rows(),
        n: matrix.cols(),
        seed,
        rank,
        indep_size,
        terms: decomposition.len(),
        ur: None,
        ur_exhausted: None,
        ur_lower: None,
        p: None,
        p_exhausted: None,
        p_lower: None,
        mono_density: None,
        ur_nodes: None,
        p_nodes: None,
        time_decompose_us,
        time_ur_us: None,
        time_p_us: None,
        time_mono_us: None,
    };

    if config.signed_rank {
        let start = Instant::now();
        let ur = exact_signed_rank(matrix, config.budget)?;
        record.time_ur_us = Some(micros(start));
        if !ur.witness.verify(matrix)? {
            return Err(fail("signed witness does not reconstruct"));
        }
        if ur.exhausted && (ur.value < rank || ur.value > decomposition.len()) {
            return Err(fail("signed rank outside [rank, constructive terms]"));
        }
        record.ur = Some(ur.value);
        record.ur_exhausted = Some(ur.exhausted);
        record.ur_lower = Some(ur.lower_bound);
        record.ur_nodes = Some(ur.nodes);
    }
    if config.partition {
        let start = Instant::now();
        let p = exact_partition_number(matrix, config.budget)?;
        record.time_p_us = Some(micros(start));
        if !p.witness.verify(matrix)? {
            return Err(fail("partition witness does not reconstruct"));
        }
        if p.exhausted && p.value < rank {
            return Err(fail("partition number below rank"));
        }
        if let (true, Some(true), Some(ur)) = (p.exhausted, record.ur_exhausted, record.ur) {
            if ur > p.value {
                return Err(fail("signed rank exceeds partition number"));
            }
        }
        record.p = Some(p.value);
        record.p_exhausted = Some(p.exhausted);
        record.p_lower = Some(p.lower_bound);
        record.p_nodes = Some(p.nodes);
    }
    if config.monochromatic {
        let start = Instant::now();
        let mono = max_monochromatic_rectangle(matrix)?;
        record.time_mono_us = Some(micros(start));
        record.mono_density = Some(mono.density.to_string());
    }
    Ok(record)
}

/// Runs every instance (in parallel) and returns records in instance order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    let list = instances(config)?;
    list.par_iter()
        .enumerate()
        .map(|(id, (matrix, seed))| run_instance(id, matrix, *seed, config))
        .collect()
}

/// Writes records as CSV; `timing = false` drops the wall-time columns.
pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: W, timing: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Validation(format!("csv output failed: {e}"));
    if timing {
        for r in records {
            w.serialize(r).map_err(io)?;
        }
    } else {
        let header = csv_header();
        w.write_record(&header[..DETERMINISTIC_COLUMNS]).map_err(io)?;
        for r in records {
            w.write_record(deterministic_fields(r)).map_err(io)?;
        }
    }
    w.flush()
        .map_err(|e| Error::Validation(format!("csv output failed: {e}")))
}

pub fn csv_header() -> Vec<&'static str> {
    vec![
        "id",
        "m",
        "n",
        "seed",
        "rank",
        "indep_size",
        "terms",
        "ur",
        "ur_exhausted",
        "ur_lower",
        "p",
        "p_exhausted",
        "p_lower",
        "mono_density",
        "ur_nodes",
        "p_nodes",
        "time_decompose_us",
        "time_ur_us",
        "time_p_us",
        "time_mono_us",
    ]
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn deterministic_fields(r: &ExperimentRecord) -> Vec<String> {
    vec![
        r.id.to_string(),
        r.m.to_string(),
        r.n.to_string(),
        opt(&r.seed),
        r.rank.to_string(),
        r.indep_size.to_string(),
        r.terms.to_string(),
        opt(&r.ur),
        opt(&r.ur_exhausted),
        opt(&r.ur_lower),
        opt(&r.p),
        opt(&r.p_exhausted),
        opt(&r.p_lower),
        opt(&r.mono_density),
        opt(&r.ur_nodes),
        opt(&r.p_nodes),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_four_record() {
        let mut cfg = ExperimentConfig::new(InstanceSource::Generated {
            kind: MatrixKind::Identity { n: 4 },
            count: 1,
        });
        cfg.monochromatic = true;
        let recs = run_experiment(&cfg).unwrap();
        let r = &recs[0];
        assert_eq!((r.rank, r.ur, r.p), (4, Some(4), Some(4)));
        assert_eq!(r.mono_density.as_deref(), Some("1/4"));
    }

    #[test]
    fn empty_config_is_usage_error() {
        let cfg = ExperimentConfig::new(InstanceSource::Generated {
            kind: MatrixKind::Identity { n: 2 },
            count: 0,
        });
        assert!(matches!(run_experiment(&cfg), Err(Error::Usage(_))));
        let cfg = ExperimentConfig::new(InstanceSource::Given(vec![]));
        assert!(matches!(run_experiment(&cfg), Err(Error::Usage(_))));
    }

    #[test]
    fn csv_header_matches_serialized_records() {
        let cfg = ExperimentConfig::new(InstanceSource::Given(vec![
            BoolMatrix::identity(2).unwrap()
        ]));
        let recs = run_experiment(&cfg).unwrap();
        let mut full = Vec::new();
        write_csv(&recs, &mut full, true).unwrap();
        let full = String::from_utf8(full).unwrap();
        assert_eq!(full.lines().next().unwrap(), csv_header().join(","));
        let mut short = Vec::new();
        write_csv(&recs, &mut short, false).unwrap();
        let short = String::from_utf8(short).unwrap();
        assert_eq!(
            short.lines().next().unwrap(),
            csv_header()[..DETERMINISTIC_COLUMNS].join(",")
        );
        for (a, b) in full.lines().zip(short.lines()) {
            assert!(a.starts_with(b));
        }
    }
}
