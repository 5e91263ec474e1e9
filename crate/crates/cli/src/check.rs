use robdd::Formula;

use crate::compiled::{memo_counter, Backend, CompileOptions, Compiled};
use crate::report::{RunReport, Verdict};
use crate::CliError;

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum CheckKind {
    Taut,
    Sat,
    Equiv,
}

impl CheckKind {
    fn name(self) -> &'static str {
        match self {
            CheckKind::Taut => "taut",
            CheckKind::Sat => "sat",
            CheckKind::Equiv => "equiv",
        }
    }

    fn arity(self) -> usize {
        match self {
            CheckKind::Equiv => 2,
            _ => 1,
        }
    }
}

/// Runs the check on every selected backend. Backends must agree on the
/// verdict; the exit code follows it (0 positive, 1 negative).
pub fn cmd_check(
    kind: CheckKind,
    formulas: &[Formula],
    backend: Backend,
    opts: CompileOptions,
) -> Result<Vec<RunReport>, CliError> {
    if formulas.len() != kind.arity() {
        return Err(CliError::Usage(format!(
            "`{}` takes {} formula file(s), got {}",
            kind.name(),
            kind.arity(),
            formulas.len()
        )));
    }
    let mut reports = Vec::new();
    for b in backend.kinds() {
        let (c, wall) = Compiled::build(b, formulas, opts)?;
        let verdict = match kind {
            CheckKind::Taut if c.leaf_value(0) == Some(true) => Verdict::Taut,
            CheckKind::Taut => Verdict::NotTaut,
            CheckKind::Sat if c.leaf_value(0) == Some(false) => Verdict::Unsat,
            CheckKind::Sat => Verdict::Sat,
            CheckKind::Equiv if c.same(0, 1) => Verdict::Equiv,
            CheckKind::Equiv => Verdict::NotEquiv,
        };
        let stats = c.stats();
        reports.push(RunReport {
            command: kind.name(),
            backend: b,
            verdict,
            result_nodes: (0..formulas.len()).map(|i| c.size(i)).collect::<Result<_, _>>()?,
            pool_nodes: c.pool_nodes(),
            intern: stats.intern,
            memo: memo_counter(&stats),
            wall,
        });
    }
    if let Some(first) = reports.first() {
        if let Some(other) = reports.iter().find(|r| r.verdict != first.verdict) {
            return Err(CliError::Disagreement(format!(
                "{} says {}, {} says {}",
                first.backend.name(),
                first.verdict,
                other.backend.name(),
                other.verdict
            )));
        }
    }
    Ok(reports)
}

/// Exit code for a list of agreeing reports.
pub fn exit_code(reports: &[RunReport]) -> i32 {
    match reports.first() {
        Some(r) if r.verdict.is_positive() => 0,
        _ => 1,
    }
}

/// DOT text for `formula` on one backend (`Both` renders the interned one).
pub fn cmd_dot(formula: &Formula, backend: Backend, opts: CompileOptions) -> Result<String, CliError> {
    let kind = *backend.kinds().last().expect("at least one backend");
    let (c, _) = Compiled::build(kind, std::slice::from_ref(formula), opts)?;
    Ok(c.to_dot(0)?)
}

/// Compiles into a persistent store and returns its text form.
pub fn cmd_store(formula: &Formula, opts: CompileOptions) -> Result<String, CliError> {
    let (c, _) = Compiled::build(crate::BackendKind::Pure, std::slice::from_ref(formula), opts)?;
    match c {
        Compiled::Pure { store, .. } => Ok(store.to_text()),
        Compiled::Interned { .. } => unreachable!(),
    }
}

/// Loads a store file and runs the validator. Returns the violation lines.
pub fn cmd_validate(text: &str, semantic: bool) -> Result<Vec<String>, CliError> {
    let store = robdd::pure::Store::from_text(text)?;
    let opts = robdd::pure::ValidateOptions {
        memo_semantics: semantic,
        ..Default::default()
    };
    Ok(store
        .validate_with(opts)
        .violations
        .iter()
        .map(|v| v.to_string())
        .collect())
}
