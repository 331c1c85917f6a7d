//! Multi-threaded path totals with optional resumable checkpoints.
//!
//! Paths are split by their first two interior points. Every partition is an
//! independent unit summed exactly, so the result does not depend on the
//! number of threads.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use gwa_core::geometry::LatticePolygon;
use gwa_core::tropical::{LambdaFunctional, MultiplicityEngine, PathContext, PathTotals, Side, TropicalError};
use gwa_core::Nat;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Thread count: explicit flag, then `GWA_THREADS`, then the machine's parallelism.
pub fn resolve_threads(flag: Option<usize>) -> usize {
    flag.filter(|&t| t > 0)
        .or_else(|| std::env::var("GWA_THREADS").ok().and_then(|v| v.parse().ok()).filter(|&t| t > 0))
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Debug, Default, Clone, Serialize, Deserialize)]
struct JobState {
    partitions: usize,
    done: BTreeMap<usize, String>,
}

#[derive(Debug, Default, Clone, Serialize, Deserialize)]
struct CheckpointFile {
    jobs: BTreeMap<String, JobState>,
}

/// Partial partition sums persisted as JSON, rewritten after each partition.
#[derive(Debug)]
pub struct Checkpoint {
    path: PathBuf,
    state: Mutex<CheckpointFile>,
}

impl Checkpoint {
    pub fn open(path: impl AsRef<Path>) -> std::io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let state = match std::fs::read_to_string(&path) {
            Ok(text) => serde_json::from_str(&text).map_err(std::io::Error::other)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => CheckpointFile::default(),
            Err(e) => return Err(e),
        };
        Ok(Checkpoint { path, state: Mutex::new(state) })
    }

    fn job_key(polygon: &LatticePolygon, lambda: LambdaFunctional, genus: u32) -> String {
        let verts: Vec<String> = polygon.vertices().iter().map(|v| format!("{},{}", v.x, v.y)).collect();
        format!("{lambda}|g{genus}|{}", verts.join(";"))
    }

    fn completed(&self, key: &str) -> BTreeMap<usize, Nat> {
        let state = self.state.lock().unwrap();
        state
            .jobs
            .get(key)
            .map(|j| j.done.iter().filter_map(|(i, s)| Nat::from_str(s).ok().map(|n| (*i, n))).collect())
            .unwrap_or_default()
    }

    fn record(&self, key: &str, partitions: usize, index: usize, sum: &Nat) -> std::io::Result<()> {
        let mut state = self.state.lock().unwrap();
        let job = state.jobs.entry(key.to_owned()).or_default();
        job.partitions = partitions;
        job.done.insert(index, sum.to_string());
        let text = serde_json::to_string(&*state).map_err(std::io::Error::other)?;
        let tmp = self.path.with_extension("tmp");
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, &self.path)
    }

    /// Number of finished partitions recorded for a job.
    pub fn finished(&self, polygon: &LatticePolygon, lambda: LambdaFunctional, genus: u32) -> usize {
        self.completed(&Self::job_key(polygon, lambda, genus)).len()
    }
}

/// [`PathTotals`] backed by a rayon pool.
#[derive(Clone)]
pub struct ParallelPathTotals {
    lambda: LambdaFunctional,
    pool: Arc<rayon::ThreadPool>,
    checkpoint: Option<Arc<Checkpoint>>,
}

impl ParallelPathTotals {
    pub fn new(lambda: LambdaFunctional, threads: usize) -> Self {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool");
        ParallelPathTotals { lambda, pool: Arc::new(pool), checkpoint: None }
    }

    pub fn with_checkpoint(mut self, checkpoint: Arc<Checkpoint>) -> Self {
        self.checkpoint = Some(checkpoint);
        self
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl PathTotals for ParallelPathTotals {
    fn path_total(&mut self, polygon: &LatticePolygon, genus: u32) -> Result<Nat, TropicalError> {
        let ctx = PathContext::new(polygon, self.lambda);
        let steps = ctx.steps_for_genus(genus);
        if steps == 0 {
            return Err(TropicalError::ZeroSteps);
        }
        let partitions = ctx.partitions(steps);
        let key = Checkpoint::job_key(polygon, self.lambda, genus);
        let done = self.checkpoint.as_ref().map(|c| c.completed(&key)).unwrap_or_default();
        let checkpoint = self.checkpoint.clone();

        let partials: Vec<Result<Nat, TropicalError>> = self.pool.install(|| {
            partitions
                .par_iter()
                .enumerate()
                .map_init(
                    || MultiplicityEngine::new(&ctx),
                    |engine, (index, prefix)| {
                        if let Some(sum) = done.get(&index) {
                            return Ok(sum.clone());
                        }
                        let mut sum = Nat::zero();
                        for path in ctx.enumerate_partition(steps, prefix)? {
                            sum += engine.weight(&path);
                        }
                        if let Some(c) = &checkpoint {
                            c.record(&key, partitions.len(), index, &sum)
                                .map_err(|e| TropicalError::Driver(format!("checkpoint: {e}")))?;
                        }
                        Ok(sum)
                    },
                )
                .collect()
        });
        let mut total = Nat::zero();
        for p in partials {
            total += p?;
        }
        Ok(total)
    }
}

#[derive(Debug, Serialize)]
struct TraceLine<'a> {
    path: Vec<[i64; 2]>,
    mu_plus: &'a str,
    mu_minus: &'a str,
}

/// Writes one JSON line per path with non-zero weight.
pub fn write_trace(
    polygon: &LatticePolygon,
    lambda: LambdaFunctional,
    genus: u32,
    out: &mut impl Write,
) -> anyhow::Result<Nat> {
    let ctx = PathContext::new(polygon, lambda);
    let mut engine = MultiplicityEngine::new(&ctx);
    let mut total = Nat::zero();
    for path in ctx.enumerate(ctx.steps_for_genus(genus))? {
        let plus = engine.mu(&path, Side::Positive);
        if plus.is_zero() {
            continue;
        }
        let minus = engine.mu(&path, Side::Negative);
        if minus.is_zero() {
            continue;
        }
        let line = TraceLine {
            path: path.points.iter().map(|p| [p.x, p.y]).collect(),
            mu_plus: &plus.to_string(),
            mu_minus: &minus.to_string(),
        };
        serde_json::to_writer(&mut *out, &line)?;
        out.write_all(b"\n")?;
        total += plus * minus;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gwa_core::geometry::{polygon_of, DivisorClass, Surface};
    use gwa_core::tropical::{path_total, IrreducibleCounter};

    fn tri(d: i64) -> LatticePolygon {
        polygon_of(&DivisorClass::new([d]), &Surface::Plane).unwrap()
    }

    #[test]
    fn parallel_matches_sequential() {
        for d in 1..=4 {
            for lambda in LambdaFunctional::ALL {
                let mut par = ParallelPathTotals::new(lambda, 3);
                assert_eq!(par.path_total(&tri(d), 0).unwrap(), path_total(&tri(d), lambda).unwrap());
            }
        }
    }

    #[test]
    fn irreducible_count_through_parallel_driver() {
        let par = ParallelPathTotals::new(LambdaFunctional::YThenNegX, 4);
        let mut counter = IrreducibleCounter::new(&tri(4), par).unwrap();
        assert_eq!(counter.count(0).unwrap(), Nat::from(620u64));
    }

    #[test]
    fn checkpoint_resumes_with_same_total() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("ck.json");
        let poly = tri(4);
        let first = {
            let ck = Arc::new(Checkpoint::open(&file).unwrap());
            let mut t = ParallelPathTotals::new(LambdaFunctional::XThenNegY, 2).with_checkpoint(ck.clone());
            let v = t.path_total(&poly, 0).unwrap();
            assert!(ck.finished(&poly, LambdaFunctional::XThenNegY, 0) > 0);
            v
        };
        assert!(file.exists());
        // Reopened, every partition is served from the file.
        let ck = Arc::new(Checkpoint::open(&file).unwrap());
        let mut t = ParallelPathTotals::new(LambdaFunctional::XThenNegY, 1).with_checkpoint(ck);
        assert_eq!(t.path_total(&poly, 0).unwrap(), first);
        assert_eq!(first, Nat::from(675u64));
    }

    #[test]
    fn trace_lines_sum_to_total() {
        let mut buf = Vec::new();
        let total = write_trace(&tri(3), LambdaFunctional::XThenNegY, 0, &mut buf).unwrap();
        assert_eq!(total, Nat::from(12u64));
        let text = String::from_utf8(buf).unwrap();
        let mut sum = 0u64;
        for line in text.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            let p: u64 = v["mu_plus"].as_str().unwrap().parse().unwrap();
            let m: u64 = v["mu_minus"].as_str().unwrap().parse().unwrap();
            assert_eq!(v["path"].as_array().unwrap().len(), 9);
            sum += p * m;
        }
        assert_eq!(sum, 12);
    }

    #[test]
    fn thread_resolution() {
        assert_eq!(resolve_threads(Some(3)), 3);
        assert!(resolve_threads(None) >= 1);
    }
}
