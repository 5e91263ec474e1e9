//! Pure vs. interned benchmark on the queens and pigeonhole families.
//!
//! Output is CSV on stdout:
//!
//! ```text
//! family,size,backend,vars,models,result_nodes,peak_nodes,intern_hits,intern_misses,memo_hits,memo_misses,wall_ms
//! ```
//!
//! followed, when both backends ran, by one `# ratio,<family>,<size>,<pure/interned>`
//! comment line per size.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::time::Duration;

use robdd::frontend::families;
use robdd::Formula;

use crate::compiled::{memo_counter, Backend, BackendKind, CompileOptions, Compiled};
use crate::CliError;

pub const CSV_HEADER: &str =
    "family,size,backend,vars,models,result_nodes,peak_nodes,intern_hits,intern_misses,memo_hits,memo_misses,wall_ms";

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Family {
    Queens,
    Pigeonhole,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Queens => "queens",
            Family::Pigeonhole => "pigeonhole",
        }
    }

    /// Largest size accepted unless overridden.
    pub fn default_limit(self) -> usize {
        match self {
            Family::Queens => 8,
            Family::Pigeonhole => 7,
        }
    }

    pub fn formula(self, size: usize) -> Formula {
        match self {
            Family::Queens => families::queens(size),
            Family::Pigeonhole => families::pigeonhole(size),
        }
    }

    pub fn vars(self, size: usize) -> u32 {
        match self {
            Family::Queens => families::queens_vars(size),
            Family::Pigeonhole => families::pigeonhole_vars(size),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub family: Family,
    pub size: usize,
    pub backend: BackendKind,
    pub vars: u32,
    pub models: u128,
    pub result_nodes: usize,
    pub peak_nodes: usize,
    pub intern_hits: u64,
    pub intern_misses: u64,
    pub memo_hits: u64,
    pub memo_misses: u64,
    pub wall: Duration,
}

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{:.3}",
            self.family.name(),
            self.size,
            self.backend.name(),
            self.vars,
            self.models,
            self.result_nodes,
            self.peak_nodes,
            self.intern_hits,
            self.intern_misses,
            self.memo_hits,
            self.memo_misses,
            self.wall.as_secs_f64() * 1e3
        )
    }
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub family: Family,
    pub sizes: RangeInclusive<usize>,
    pub backend: Backend,
    /// Overrides [`Family::default_limit`].
    pub limit: Option<usize>,
    /// Wall-time budget per (size, backend) run.
    pub budget: Duration,
    pub fuel: Option<robdd::pure::Fuel>,
}

pub fn cmd_bench(opts: &BenchOptions) -> Result<Vec<BenchRow>, CliError> {
    let limit = opts.limit.unwrap_or(opts.family.default_limit());
    if *opts.sizes.end() > limit {
        return Err(CliError::Limit(format!(
            "{} size {} exceeds the limit {limit}",
            opts.family.name(),
            opts.sizes.end()
        )));
    }
    let mut rows = Vec::new();
    for size in opts.sizes.clone() {
        let f = opts.family.formula(size);
        let vars = opts.family.vars(size);
        for kind in opts.backend.kinds() {
            let compile = CompileOptions {
                fuel: opts.fuel,
                ..Default::default()
            };
            let (c, wall) = Compiled::build(kind, std::slice::from_ref(&f), compile)?;
            if wall > opts.budget {
                return Err(CliError::Limit(format!(
                    "{} size {size} on {} took {:.1}s, over the {:.1}s budget",
                    opts.family.name(),
                    kind.name(),
                    wall.as_secs_f64(),
                    opts.budget.as_secs_f64()
                )));
            }
            let stats = c.stats();
            let memo = memo_counter(&stats);
            rows.push(BenchRow {
                family: opts.family,
                size,
                backend: kind,
                vars,
                models: c.sat_count(0, vars)?,
                result_nodes: c.size(0)?,
                peak_nodes: c.pool_nodes(),
                intern_hits: stats.intern.hits,
                intern_misses: stats.intern.misses,
                memo_hits: memo.hits,
                memo_misses: memo.misses,
                wall,
            });
        }
    }
    Ok(rows)
}

/// Pure wall time over interned wall time, per size where both ran.
pub fn ratios(rows: &[BenchRow]) -> Vec<(Family, usize, f64)> {
    let mut out = Vec::new();
    for p in rows.iter().filter(|r| r.backend == BackendKind::Pure) {
        if let Some(i) = rows
            .iter()
            .find(|r| r.backend == BackendKind::Interned && r.size == p.size && r.family == p.family)
        {
            let denom = i.wall.as_secs_f64().max(1e-9);
            out.push((p.family, p.size, p.wall.as_secs_f64() / denom));
        }
    }
    out
}

pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        out.push_str(&r.csv());
        out.push('\n');
    }
    for (family, size, ratio) in ratios(rows) {
        let _ = writeln!(out, "# ratio,{},{size},{ratio:.2}", family.name());
    }
    out
}
