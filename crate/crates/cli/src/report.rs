use std::fmt;
use std::time::Duration;

use robdd::diagram::Counter;

use crate::compiled::BackendKind;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Taut,
    NotTaut,
    Sat,
    Unsat,
    Equiv,
    NotEquiv,
}

impl Verdict {
    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Taut | Verdict::Sat | Verdict::Equiv)
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Taut => "taut",
            Verdict::NotTaut => "not-taut",
            Verdict::Sat => "sat",
            Verdict::Unsat => "unsat",
            Verdict::Equiv => "equiv",
            Verdict::NotEquiv => "not-equiv",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one check on one backend.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: &'static str,
    pub backend: BackendKind,
    pub verdict: Verdict,
    /// Nodes reachable from each compiled root, leaves included.
    pub result_nodes: Vec<usize>,
    /// Inner nodes allocated in the whole state.
    pub pool_nodes: usize,
    pub intern: Counter,
    pub memo: Counter,
    pub wall: Duration,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.result_nodes.iter().map(|n| n.to_string()).collect();
        write!(
            f,
            "{} backend={} verdict={} result_nodes={} pool_nodes={} intern_hits={} intern_misses={} memo_hits={} memo_misses={} wall_us={}",
            self.command,
            self.backend.name(),
            self.verdict,
            sizes.join("/"),
            self.pool_nodes,
            self.intern.hits,
            self.intern.misses,
            self.memo.hits,
            self.memo.misses,
            self.wall.as_micros()
        )
    }
}
