//! Small graph universes up to isomorphism, extremal search over them, and
//! the drivers that check each extremal theorem exhaustively.

mod generate;
mod spanning;
mod theorems;

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domination::domination_number;
use crate::graph::{canonical_graph6, to_graph6, Girth, Graph};
use crate::report::ser_f64;
use crate::spectra::{q_min, DEFAULT_MARGIN};

pub use generate::{canonical_graph, connected_classes, labeled_classes, rooted_tree_count, unicyclic_classes};
pub use spanning::{in_script_m, odd_girth_preserving_subgraph};
pub use theorems::{gamma_window, least_alpha, THEOREMS};

/// Largest order for unicyclic universes.
pub const MAX_UNICYCLIC_N: usize = 12;
/// Largest order for general connected universes.
pub const MAX_GENERAL_N: usize = 8;

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("n={n} exceeds the budget of {max} for this universe")]
    BudgetExceeded { n: usize, max: usize },
    #[error("no graph satisfies the filters")]
    EmptyUniverse,
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("cache file: {0}")]
    Cache(String),
    #[error(transparent)]
    Transform(#[from] crate::perturbations::PerturbationError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UniverseKind {
    UnicyclicNonbipartite,
    ConnectedNonbipartite,
    ConnectedAll,
}

/// A universe of connected graphs of order `n` and its filters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseSpec {
    pub kind: UniverseKind,
    pub n: usize,
    pub girth: Option<usize>,
    pub max_girth: Option<usize>,
    pub max_odd_girth: Option<usize>,
    pub gamma_min: Option<usize>,
    pub gamma_max: Option<usize>,
}

impl UniverseSpec {
    pub fn new(kind: UniverseKind, n: usize) -> UniverseSpec {
        UniverseSpec {
            kind,
            n,
            girth: None,
            max_girth: None,
            max_odd_girth: None,
            gamma_min: None,
            gamma_max: None,
        }
    }

    pub fn unicyclic(n: usize) -> UniverseSpec {
        UniverseSpec::new(UniverseKind::UnicyclicNonbipartite, n)
    }

    pub fn nonbipartite(n: usize) -> UniverseSpec {
        UniverseSpec::new(UniverseKind::ConnectedNonbipartite, n)
    }

    pub fn girth(mut self, g: usize) -> UniverseSpec {
        self.girth = Some(g);
        self
    }

    pub fn max_girth(mut self, g: usize) -> UniverseSpec {
        self.max_girth = Some(g);
        self
    }

    pub fn max_odd_girth(mut self, g: usize) -> UniverseSpec {
        self.max_odd_girth = Some(g);
        self
    }

    pub fn gamma(mut self, gamma: usize) -> UniverseSpec {
        self.gamma_min = Some(gamma);
        self.gamma_max = Some(gamma);
        self
    }

    pub fn gamma_range(mut self, lo: usize, hi: usize) -> UniverseSpec {
        self.gamma_min = Some(lo);
        self.gamma_max = Some(hi);
        self
    }

    pub fn budget(&self) -> usize {
        match self.kind {
            UniverseKind::UnicyclicNonbipartite => MAX_UNICYCLIC_N,
            _ => MAX_GENERAL_N,
        }
    }

    fn check_budget(&self) -> Result<(), EnumError> {
        if self.n == 0 || self.n > self.budget() {
            return Err(EnumError::BudgetExceeded { n: self.n, max: self.budget() });
        }
        Ok(())
    }

    /// Whether `m` passes the girth and γ filters. Kind is not rechecked.
    pub fn accepts(&self, m: &Measurement) -> bool {
        let g = m.girth.finite();
        let go = m.odd_girth.finite();
        self.girth.is_none_or(|want| g == Some(want))
            && self.max_girth.is_none_or(|cap| g.is_some_and(|g| g <= cap))
            && self.max_odd_girth.is_none_or(|cap| go.is_some_and(|g| g <= cap))
            && self.gamma_min.is_none_or(|lo| m.gamma >= lo)
            && self.gamma_max.is_none_or(|hi| m.gamma <= hi)
    }

    pub fn describe(&self) -> String {
        let mut s = format!("{:?} n={}", self.kind, self.n);
        if let Some(g) = self.girth {
            s += &format!(" girth={g}");
        }
        if let Some(g) = self.max_girth {
            s += &format!(" girth<={g}");
        }
        if let Some(g) = self.max_odd_girth {
            s += &format!(" odd_girth<={g}");
        }
        match (self.gamma_min, self.gamma_max) {
            (Some(a), Some(b)) if a == b => s += &format!(" gamma={a}"),
            (a, b) => {
                if let Some(a) = a {
                    s += &format!(" gamma>={a}");
                }
                if let Some(b) = b {
                    s += &format!(" gamma<={b}");
                }
            }
        }
        s
    }
}

/// Cached invariants of one isomorphism class, keyed by canonical graph6.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub g6: String,
    pub gamma: usize,
    #[serde(serialize_with = "ser_f64")]
    pub q_min: f64,
    pub girth: Girth,
    pub odd_girth: Girth,
}

impl Measurement {
    fn compute(g: &Graph, g6: String) -> Measurement {
        Measurement {
            g6,
            gamma: domination_number(g).gamma,
            q_min: q_min(g),
            girth: g.girth(),
            odd_girth: g.odd_girth(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalResult {
    /// Every graph within `margin` of the minimum, in canonical form.
    pub minimizers: Vec<Graph>,
    pub min_value: f64,
    /// One minimizer and `runner_up_gap > margin`.
    pub unique: bool,
    /// Gap from the minimum to the least value outside the minimizer set;
    /// infinite when every graph is a minimizer.
    pub runner_up_gap: f64,
    pub universe_size: usize,
}

/// Measurement cache, optional worker pool, and optional cache file.
pub struct Engine {
    cache: RwLock<HashMap<String, Measurement>>,
    cache_path: Option<PathBuf>,
    pending: Mutex<Vec<Measurement>>,
    pool: Option<rayon::ThreadPool>,
    pub margin: f64,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl Engine {
    pub fn new() -> Engine {
        Engine {
            cache: RwLock::new(HashMap::new()),
            cache_path: None,
            pending: Mutex::new(Vec::new()),
            pool: None,
            margin: DEFAULT_MARGIN,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Engine {
        self.pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().ok();
        self
    }

    pub fn with_margin(mut self, margin: f64) -> Engine {
        self.margin = margin;
        self
    }

    /// Loads measurements from a JSON-lines file and appends new ones to it
    /// on [`Engine::flush`].
    pub fn with_cache_file(mut self, path: impl AsRef<Path>) -> Result<Engine, EnumError> {
        let path = path.as_ref().to_path_buf();
        if path.exists() {
            let mut cache = self.cache.write().unwrap();
            for (i, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let m: Measurement = serde_json::from_str(&line)
                    .map_err(|e| EnumError::Cache(format!("{}:{}: {e}", path.display(), i + 1)))?;
                cache.insert(m.g6.clone(), m);
            }
        }
        self.cache_path = Some(path);
        Ok(self)
    }

    pub fn cached(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    /// Writes measurements made since the last flush to the cache file.
    pub fn flush(&self) -> Result<(), EnumError> {
        let Some(path) = &self.cache_path else {
            return Ok(());
        };
        let mut pending = std::mem::take(&mut *self.pending.lock().unwrap());
        if pending.is_empty() {
            return Ok(());
        }
        pending.sort_by(|a, b| a.g6.cmp(&b.g6));
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        let mut text = String::new();
        for m in &pending {
            text += &serde_json::to_string(m).expect("measurement serializes");
            text.push('\n');
        }
        f.write_all(text.as_bytes())?;
        Ok(())
    }

    pub(crate) fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(p) => p.install(f),
            None => f(),
        }
    }

    /// γ, q_min and girths of `g`, computed once per isomorphism class.
    pub fn measure(&self, g: &Graph) -> Measurement {
        self.measure_keyed(g, canonical_graph6(g))
    }

    fn measure_keyed(&self, g: &Graph, key: String) -> Measurement {
        if let Some(m) = self.cache.read().unwrap().get(&key) {
            return m.clone();
        }
        let m = Measurement::compute(g, key.clone());
        self.cache.write().unwrap().insert(key, m.clone());
        if self.cache_path.is_some() {
            self.pending.lock().unwrap().push(m.clone());
        }
        m
    }

    /// Canonical representatives of the classes in `spec`, sorted by graph6,
    /// with their measurements.
    pub fn enumerate_measured(&self, spec: &UniverseSpec) -> Result<Vec<(Graph, Measurement)>, EnumError> {
        spec.check_budget()?;
        let n = spec.n;
        let base: Vec<Graph> = match spec.kind {
            UniverseKind::UnicyclicNonbipartite => self.run(|| {
                unicyclic_classes(n, |k| {
                    k % 2 == 1
                        && spec.girth.is_none_or(|g| g == k)
                        && spec.max_girth.is_none_or(|c| k <= c)
                        && spec.max_odd_girth.is_none_or(|c| k <= c)
                })
            }),
            UniverseKind::ConnectedNonbipartite => {
                self.run(|| connected_classes(n)).iter().filter(|g| !g.is_bipartite()).cloned().collect()
            }
            UniverseKind::ConnectedAll => self.run(|| connected_classes(n)).to_vec(),
        };
        let measured: Vec<(Graph, Measurement)> = self.run(|| {
            base.into_par_iter()
                .map(|g| {
                    let m = self.measure_keyed(&g, to_graph6(&g));
                    (g, m)
                })
                .filter(|(_, m)| spec.accepts(m))
                .collect()
        });
        Ok(measured)
    }

    pub fn enumerate(&self, spec: &UniverseSpec) -> Result<Vec<Graph>, EnumError> {
        Ok(self.enumerate_measured(spec)?.into_iter().map(|(g, _)| g).collect())
    }

    /// Minimum q_min over `spec`. Minimizers are rechecked against the
    /// filters with fresh solver calls.
    pub fn extremal_search(&self, spec: &UniverseSpec) -> Result<ExtremalResult, EnumError> {
        let all = self.enumerate_measured(spec)?;
        let result = extremal_of(&all, self.margin).ok_or(EnumError::EmptyUniverse)?;
        for g in &result.minimizers {
            let fresh = Measurement::compute(g, to_graph6(g));
            assert!(spec.accepts(&fresh), "minimizer {} fails its filters on recheck", fresh.g6);
        }
        Ok(result)
    }
}

impl Drop for Engine {
    fn drop(&mut self) {
        let _ = self.flush();
    }
}

pub(crate) fn extremal_of(all: &[(Graph, Measurement)], margin: f64) -> Option<ExtremalResult> {
    let min_value = all.iter().map(|(_, m)| m.q_min).min_by(f64::total_cmp)?;
    let minimizers: Vec<Graph> =
        all.iter().filter(|(_, m)| m.q_min <= min_value + margin).map(|(g, _)| g.clone()).collect();
    let runner_up = all
        .iter()
        .map(|(_, m)| m.q_min)
        .filter(|&q| q > min_value + margin)
        .min_by(f64::total_cmp);
    let runner_up_gap = runner_up.map_or(f64::INFINITY, |q| q - min_value);
    Some(ExtremalResult {
        unique: minimizers.len() == 1 && runner_up_gap > margin,
        minimizers,
        min_value,
        runner_up_gap,
        universe_size: all.len(),
    })
}
