//! Backwards paths: planning, validation and execution.

use std::path::{Path, PathBuf};

use super::{extend_step, ClassSpec, ExtendError, StepOptions};
use crate::bigraph::{read_graph_set, write_graph_set, BiGraph, Side};
use crate::bounds::BoundTable;
use crate::canon::{dedup, DedupOptions};
use crate::fsutil::write_atomic;

/// Specs from the seed class (first) to the target class (last); each step
/// adds one vertex on one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackwardsPath {
    steps: Vec<ClassSpec>,
}

/// Threshold guaranteed after deleting a minimum-degree vertex from the
/// `removed` side of a graph with parts `next` and at least `e_next` edges.
/// `t_upper` is an upper bound on `z(i,j;t)` for the smaller parts, which
/// bounds the complement and so gives a second lower bound on the edges.
pub fn step_threshold(e_next: usize, next: (usize, usize), removed: Side, t_upper: Option<u64>) -> usize {
    let k = match removed {
        Side::Left => next.0,
        Side::Right => next.1,
    };
    let density = e_next - e_next / k.max(1);
    let (i, j) = match removed {
        Side::Left => (next.0 - 1, next.1),
        Side::Right => (next.0, next.1 - 1),
    };
    let assisted = t_upper.map_or(0, |u| (i * j).saturating_sub(u as usize));
    density.max(assisted)
}

/// `⌈a·b·e / (m·n)⌉`: the threshold from averaging over all `(a,b)` subgraphs.
pub fn bare_density_threshold(from: (usize, usize), to: (usize, usize), e: usize) -> usize {
    (from.0 * from.1 * e).div_ceil(to.0 * to.1)
}

fn t_upper(table: Option<&BoundTable>, i: usize, j: usize) -> Option<u64> {
    table.and_then(|t| t.upper(i, j))
}

impl BackwardsPath {
    pub fn new(steps: Vec<ClassSpec>) -> Result<Self, ExtendError> {
        let Some(first) = steps.first() else {
            return Err(ExtendError::BadPath("empty path".into()));
        };
        for (k, w) in steps.windows(2).enumerate() {
            let (a, b) = (w[0], w[1]);
            let grows = (b.m == a.m + 1 && b.n == a.n) || (b.m == a.m && b.n == a.n + 1);
            if !grows {
                return Err(ExtendError::BadPath(format!(
                    "step {} from {a} to {b} does not add exactly one vertex",
                    k + 1
                )));
            }
            if (a.s, a.t) != (first.s, first.t) || (b.s, b.t) != (first.s, first.t) {
                return Err(ExtendError::BadPath(format!("step {} changes the constraints", k + 1)));
            }
        }
        for s in &steps {
            s.validate()?;
        }
        Ok(BackwardsPath { steps })
    }

    pub fn steps(&self) -> &[ClassSpec] {
        &self.steps
    }

    pub fn seed(&self) -> &ClassSpec {
        &self.steps[0]
    }

    pub fn target(&self) -> &ClassSpec {
        self.steps.last().unwrap()
    }

    /// One spec per line, seed first; blank and `#` lines are ignored.
    pub fn parse(text: &str) -> Result<Self, ExtendError> {
        let steps = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::parse)
            .collect::<Result<Vec<ClassSpec>, _>>()?;
        BackwardsPath::new(steps)
    }

    pub fn to_text(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }

    /// Checks that every graph of each class contains a graph of the previous
    /// class, using the density step and, when given, an upper-bound table for
    /// the complement order `t`.
    pub fn check_thresholds(&self, t_table: Option<&BoundTable>) -> Result<(), ExtendError> {
        let table = self.usable_t_table(t_table);
        for (k, w) in self.steps.windows(2).enumerate() {
            let (a, b) = (w[0], w[1]);
            let side = if b.m > a.m { Side::Left } else { Side::Right };
            let f = step_threshold(b.e_min, (b.m, b.n), side, t_upper(table, a.m, a.n));
            if a.e_min > f {
                return Err(ExtendError::BadPath(format!(
                    "step {}: {a} needs at most {f} edges to be implied by {b}",
                    k + 1
                )));
            }
        }
        Ok(())
    }

    fn usable_t_table<'a>(&self, t_table: Option<&'a BoundTable>) -> Option<&'a BoundTable> {
        match (self.seed().t, t_table) {
            (Some(t), Some(table)) if table.s() == t => Some(table),
            _ => None,
        }
    }
}

/// A path from parts `from` to the parts of `target` whose seed threshold is
/// as large as possible over all monotone lattice paths, using the density
/// step and, if `t_table` matches the complement order, the table assist.
pub fn plan_path(
    from: (usize, usize),
    target: &ClassSpec,
    t_table: Option<&BoundTable>,
) -> Result<BackwardsPath, ExtendError> {
    let (a, b) = from;
    let (m, n) = (target.m, target.n);
    if a > m || b > n || a == 0 || b == 0 {
        return Err(ExtendError::BadPath(format!("cannot reach ({m},{n}) from ({a},{b})")));
    }
    let table = match (target.t, t_table) {
        (Some(t), Some(tb)) if tb.s() == t => Some(tb),
        _ => None,
    };
    let (h, w) = (m - a + 1, n - b + 1);
    let idx = |i: usize, j: usize| (i - a) * w + (j - b);
    // best threshold at each cell and the successor it came from
    let mut best = vec![0usize; h * w];
    let mut next: Vec<Option<(usize, usize)>> = vec![None; h * w];
    best[idx(m, n)] = target.e_min;
    for i in (a..=m).rev() {
        for j in (b..=n).rev() {
            if (i, j) == (m, n) {
                continue;
            }
            let mut cand: Option<(usize, (usize, usize))> = None;
            if i < m {
                let f = step_threshold(best[idx(i + 1, j)], (i + 1, j), Side::Left, t_upper(table, i, j));
                cand = Some((f, (i + 1, j)));
            }
            if j < n {
                let f = step_threshold(best[idx(i, j + 1)], (i, j + 1), Side::Right, t_upper(table, i, j));
                if cand.is_none_or(|c| f > c.0) {
                    cand = Some((f, (i, j + 1)));
                }
            }
            let (f, succ) = cand.unwrap();
            best[idx(i, j)] = f;
            next[idx(i, j)] = Some(succ);
        }
    }
    let mut steps = Vec::new();
    let mut cur = (a, b);
    loop {
        steps.push(target.with_size(cur.0, cur.1, best[idx(cur.0, cur.1)]));
        match next[idx(cur.0, cur.1)] {
            Some(s) => cur = s,
            None => break,
        }
    }
    BackwardsPath::new(steps)
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions<'a> {
    /// Source of the per-step edge cap: a table for the class's own order `s`.
    pub s_table: Option<&'a BoundTable>,
    /// Where each step's graph set is written; an existing set resumes the run.
    pub checkpoint_dir: Option<PathBuf>,
    /// Abort when a step yields more graphs than this.
    pub max_graphs: Option<usize>,
    /// Identify square targets with their reflections in the final result.
    pub with_reflection: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub spec: ClassSpec,
    pub count: usize,
    pub z_cap: Option<usize>,
    /// Loaded from a checkpoint rather than computed.
    pub resumed: bool,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub graphs: Vec<BiGraph>,
    pub steps: Vec<StepReport>,
}

fn load_checkpoint(file: &Path) -> Result<Vec<BiGraph>, ExtendError> {
    let text = std::fs::read_to_string(file)?;
    read_graph_set(&text).map_err(|source| ExtendError::Checkpoint { file: file.display().to_string(), source })
}

/// Index of the furthest step after the seed with a checkpoint in `dir`;
/// [`run_path`] resumes there and ignores its seeds.
pub fn resume_step(path: &BackwardsPath, dir: &Path) -> Option<usize> {
    (1..path.steps().len()).rev().find(|&k| dir.join(path.steps()[k].file_name()).exists())
}

/// Extends `seeds` (all classes of the path's seed spec) along `path`.
pub fn run_path(path: &BackwardsPath, seeds: &[BiGraph], opts: &RunOptions) -> Result<RunReport, ExtendError> {
    let seed_spec = path.seed();
    if let Some(index) = seeds.iter().position(|g| !seed_spec.contains(g)) {
        return Err(ExtendError::SeedNotMember { index, spec: *seed_spec });
    }
    if let Some(dir) = &opts.checkpoint_dir {
        std::fs::create_dir_all(dir)?;
    }
    let checkpoint = |spec: &ClassSpec| opts.checkpoint_dir.as_ref().map(|d| d.join(spec.file_name()));

    let mut start = 0;
    let mut current: Vec<BiGraph>;
    let mut reports = Vec::new();
    if let Some(k) = opts.checkpoint_dir.as_deref().and_then(|d| resume_step(path, d)) {
        let spec = &path.steps()[k];
        current = load_checkpoint(&checkpoint(spec).unwrap())?;
        log::info!("resuming at {spec} with {} graphs", current.len());
        reports.push(StepReport { spec: *spec, count: current.len(), z_cap: None, resumed: true });
        start = k;
    } else {
        current = dedup(seeds.iter().cloned(), DedupOptions::default()).map_err(|_| ExtendError::PartSizeMismatch {
            target: (seed_spec.m, seed_spec.n),
            found: (seed_spec.m, seed_spec.n),
        })?;
        if let Some(file) = checkpoint(seed_spec) {
            write_atomic(&file, write_graph_set(&current).as_bytes())?;
        }
        log::info!("{seed_spec}: {} seed graphs", current.len());
        reports.push(StepReport { spec: *seed_spec, count: current.len(), z_cap: None, resumed: false });
    }

    for (k, spec) in path.steps().iter().enumerate().skip(start + 1) {
        let z_cap =
            opts.s_table.filter(|t| Some(t.s()) == spec.s).and_then(|t| t.upper(spec.m, spec.n)).map(|u| u as usize);
        current = extend_step(&current, spec, z_cap, StepOptions::default())?;
        log::info!("step {k}: {spec}: {} graphs", current.len());
        if let Some(limit) = opts.max_graphs {
            if current.len() > limit {
                return Err(ExtendError::BudgetExceeded { step: k, count: current.len(), limit });
            }
        }
        if let Some(file) = checkpoint(spec) {
            write_atomic(&file, write_graph_set(&current).as_bytes())?;
        }
        reports.push(StepReport { spec: *spec, count: current.len(), z_cap, resumed: false });
    }

    let target = path.target();
    if opts.with_reflection && target.m == target.n {
        current = dedup(current, DedupOptions { with_reflection: true }).expect("uniform part sizes");
    }
    Ok(RunReport { graphs: current, steps: reports })
}
