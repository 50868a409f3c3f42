//! Parallel census driver with per-shard checkpoints.
//!
//! Units of a search are dealt round-robin into shards; shards run on the
//! rayon pool, each with its own worker, and their reports are merged in
//! shard order. With a checkpoint directory every finished shard is written
//! to `shard-<i>-of-<k>.json` and reused by later runs of the same search.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use resetword_core::enumerate::{EnumerationReport, SearchSpec, Unit, Worker};
use resetword_core::Dfa;
use serde::{Deserialize, Serialize};

use crate::report::EnumerationJson;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Search(#[from] resetword_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}; remove it to start over")]
    Checkpoint { path: PathBuf, message: String },
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Number of shards; 0 picks eight per thread.
    pub shards: usize,
    pub checkpoint_dir: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    shard: usize,
    shards: usize,
    report: EnumerationJson,
}

pub fn run(spec: &SearchSpec, options: &RunOptions) -> Result<EnumerationReport, RunError> {
    run_with(spec, options, &|_, _| {})
}

/// Like [`run`], calling `visit` on every surviving automaton of the shards
/// computed in this run (shards restored from checkpoints are not visited).
pub fn run_with(
    spec: &SearchSpec,
    options: &RunOptions,
    visit: &(dyn Fn(&Dfa, usize) + Sync),
) -> Result<EnumerationReport, RunError> {
    let units = spec.units()?;
    let shards = match options.shards {
        0 => rayon::current_num_threads() * 8,
        k => k,
    }
    .clamp(1, units.len().max(1));
    if let Some(dir) = &options.checkpoint_dir {
        std::fs::create_dir_all(dir).map_err(|source| RunError::Io {
            path: dir.clone(),
            source,
        })?;
    }
    let reports: Vec<EnumerationReport> = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mine: Vec<&Unit> = units.iter().filter(|u| u.id % shards == shard).collect();
            run_shard(spec, shard, shards, &mine, options.checkpoint_dir.as_deref(), visit)
        })
        .collect::<Result<_, _>>()?;
    let mut total = EnumerationReport::empty(spec.clone());
    for r in &reports {
        total.merge(r);
    }
    Ok(total)
}

fn run_shard(
    spec: &SearchSpec,
    shard: usize,
    shards: usize,
    units: &[&Unit],
    dir: Option<&Path>,
    visit: &(dyn Fn(&Dfa, usize) + Sync),
) -> Result<EnumerationReport, RunError> {
    let path = dir.map(|d| d.join(format!("shard-{shard:04}-of-{shards:04}.json")));
    if let Some(path) = &path {
        if let Some(report) = read_checkpoint(path, spec, shard, shards)? {
            return Ok(report);
        }
    }
    let mut worker = Worker::new(spec)?;
    let mut report = EnumerationReport::empty(spec.clone());
    let mut call = |d: &Dfa, len: usize| visit(d, len);
    for unit in units {
        report.merge(&worker.run(unit, &mut call));
    }
    if let Some(path) = &path {
        let checkpoint = Checkpoint {
            shard,
            shards,
            report: EnumerationJson::from_report(&report),
        };
        let text = serde_json::to_string(&checkpoint).expect("report serializes");
        // write then rename so an interrupted run leaves no partial file
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, text)
            .and_then(|_| std::fs::rename(&tmp, path))
            .map_err(|source| RunError::Io {
                path: path.clone(),
                source,
            })?;
    }
    Ok(report)
}

fn read_checkpoint(
    path: &Path,
    spec: &SearchSpec,
    shard: usize,
    shards: usize,
) -> Result<Option<EnumerationReport>, RunError> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(source) => {
            return Err(RunError::Io {
                path: path.to_path_buf(),
                source,
            })
        }
    };
    let bad = |message: String| RunError::Checkpoint {
        path: path.to_path_buf(),
        message,
    };
    let c: Checkpoint = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    if (c.shard, c.shards) != (shard, shards) {
        return Err(bad("written for a different shard layout".into()));
    }
    c.report.to_report(spec).map(Some).map_err(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use resetword_core::enumerate::enumerate;

    #[test]
    fn parallel_matches_sequential() {
        let spec = SearchSpec::new(4, 2);
        let sequential = enumerate(&spec).unwrap();
        for shards in [1, 3, 64] {
            let options = RunOptions {
                shards,
                checkpoint_dir: None,
            };
            assert_eq!(run(&spec, &options).unwrap(), sequential);
        }
    }

    #[test]
    fn checkpoints_resume() {
        let dir = tempfile::tempdir().unwrap();
        let spec = SearchSpec::new(4, 2);
        let options = RunOptions {
            shards: 5,
            checkpoint_dir: Some(dir.path().to_path_buf()),
        };
        let first = run(&spec, &options).unwrap();
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 5);
        let visited = std::sync::atomic::AtomicUsize::new(0);
        let again = run_with(&spec, &options, &|_, _| {
            visited.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        })
        .unwrap();
        assert_eq!(first, again);
        assert_eq!(visited.into_inner(), 0);

        let mut other = SearchSpec::new(4, 2);
        other.threshold = 8;
        assert!(matches!(
            run(&other, &options),
            Err(RunError::Checkpoint { .. })
        ));
    }
}
