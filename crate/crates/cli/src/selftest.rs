//! Randomized cross-check of both backends against the truth-table oracle.
//!
//! Cases are pairs of random formulas drawn from a ChaCha8 stream seeded
//! with the given seed, so a seed always reproduces the same case list.
//! Half of the pairs are equivalent by construction (sound rewrites of the
//! first formula) so both directions of the equality test get exercised.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use robdd::frontend::families::{random_equivalent, random_formula};
use robdd::oracle::formula_truth_table;
use robdd::Formula;

use crate::compiled::{BackendKind, CompileOptions, Compiled};

#[derive(Clone, Copy, Debug)]
pub struct SelftestOptions {
    pub seed: u64,
    pub cases: usize,
    pub max_vars: u32,
    pub depth: usize,
    pub break_reduction: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            seed: 0,
            cases: 500,
            max_vars: 6,
            depth: 8,
            break_reduction: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: usize,
    pub reason: String,
    pub left: Formula,
    pub right: Formula,
}

#[derive(Clone, Debug)]
pub struct SelftestOutcome {
    pub cases_run: usize,
    pub failure: Option<Failure>,
}

pub fn generate_cases(seed: u64, cases: usize, max_vars: u32, depth: usize) -> Vec<(Formula, Formula)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases)
        .map(|_| {
            let f = random_formula(&mut rng, max_vars, depth);
            let g = if rng.random() {
                random_equivalent(&mut rng, &f)
            } else {
                random_formula(&mut rng, max_vars, depth)
            };
            (f, g)
        })
        .collect()
}

/// Checks one pair on both backends. `Err` carries a description of the
/// first discrepancy.
pub fn check_case(f: &Formula, g: &Formula, opts: CompileOptions) -> Result<(), String> {
    let n = f.max_var().max(g.max_var());
    let tf = formula_truth_table(f, n).map_err(|e| e.to_string())?;
    let tg = formula_truth_table(g, n).map_err(|e| e.to_string())?;
    let equivalent = tf == tg;
    let formulas = [f.clone(), g.clone()];
    let mut verdicts = Vec::new();
    for kind in [BackendKind::Pure, BackendKind::Interned] {
        let name = kind.name();
        let (c, _) = Compiled::build(kind, &formulas, opts).map_err(|e| format!("{name}: {e}"))?;
        for (i, expected) in [&tf, &tg].into_iter().enumerate() {
            let got = c.truth_table(i, n).map_err(|e| format!("{name}: {e}"))?;
            if &got != expected {
                return Err(format!("{name}: truth table {got} differs from oracle {expected}"));
            }
        }
        if c.same(0, 1) != equivalent {
            return Err(format!(
                "{name}: equality test says {} but oracle says {}",
                c.same(0, 1),
                equivalent
            ));
        }
        if let Some(v) = c.violations().into_iter().next() {
            return Err(format!("{name} validator: {v}"));
        }
        verdicts.push((c.leaf_value(0), c.leaf_value(1), c.same(0, 1)));
    }
    if verdicts[0] != verdicts[1] {
        return Err("backends disagree on verdicts".into());
    }
    Ok(())
}

/// Smaller formulas to try in place of `f`: constants, direct subterms,
/// and `f` with one subterm shrunk.
fn shrink_candidates(f: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    if !matches!(f, Formula::Const(_)) {
        out.push(Formula::Const(false));
        out.push(Formula::Const(true));
    }
    out.extend(f.children().into_iter().cloned());
    match f {
        Formula::Const(_) | Formula::Ref(_) => {}
        Formula::Not(a) => out.extend(shrink_candidates(a).into_iter().map(|a| !a)),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Xor(a, b) => {
            let rebuild = |x: Formula, y: Formula| match f {
                Formula::And(..) => x & y,
                Formula::Or(..) => x | y,
                _ => x ^ y,
            };
            out.extend(shrink_candidates(a).into_iter().map(|a2| rebuild(a2, (**b).clone())));
            out.extend(shrink_candidates(b).into_iter().map(|b2| rebuild((**a).clone(), b2)));
        }
    }
    out
}

fn shrink(mut f: Formula, fails: impl Fn(&Formula) -> bool) -> Formula {
    'outer: loop {
        for cand in shrink_candidates(&f) {
            if cand.len() < f.len() && fails(&cand) {
                f = cand;
                continue 'outer;
            }
        }
        return f;
    }
}

/// Greedy minimization of a failing pair, one side at a time.
pub fn minimize(f: &Formula, g: &Formula, opts: CompileOptions) -> (Formula, Formula, String) {
    let f = shrink(f.clone(), |c| check_case(c, g, opts).is_err());
    let g = shrink(g.clone(), |c| check_case(&f, c, opts).is_err());
    let reason = check_case(&f, &g, opts).err().unwrap_or_default();
    (f, g, reason)
}

pub fn cmd_selftest(opts: &SelftestOptions) -> SelftestOutcome {
    let compile = CompileOptions {
        fuel: None,
        break_reduction: opts.break_reduction,
    };
    let cases = generate_cases(opts.seed, opts.cases, opts.max_vars, opts.depth);
    for (i, (f, g)) in cases.iter().enumerate() {
        if check_case(f, g, compile).is_err() {
            let (left, right, reason) = minimize(f, g, compile);
            return SelftestOutcome {
                cases_run: i + 1,
                failure: Some(Failure {
                    case: i,
                    reason,
                    left,
                    right,
                }),
            };
        }
    }
    SelftestOutcome {
        cases_run: cases.len(),
        failure: None,
    }
}
