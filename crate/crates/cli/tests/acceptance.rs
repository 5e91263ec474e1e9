//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p robdd-cli --test acceptance`.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use robdd::diagram::{size, Decoded, DiagramView};
use robdd::frontend::families::{random_equivalent, random_formula};
use robdd::frontend::{compile_interned, compile_pure, families};
use robdd::interned::{structural_eq, Handle, Manager, Shape};
use robdd::oracle::{bdd_truth_table, formula_truth_table, queens_solutions};
use robdd::pure::{self, validate_extension, Fuel, Store};
use robdd::{BinOp, Formula, Node, NodeRef, Var};
use robdd_cli::bench::{cmd_bench, ratios, BenchOptions, Family};
use robdd_cli::{Backend, BackendKind};

const VARS: u32 = 6;
const DEPTH: usize = 8;
const ORACLE_FORMULAS: usize = 5000;
const CANONICITY_PAIRS: usize = 2000;
const PURE_TRACES: usize = 1000;
const INTERNED_TRACES: usize = 500;
const MAX_TRACE_LEN: usize = 200;
const REPLAY_SEQUENCES: usize = 500;
const ORACLE_BATCH: usize = 50;
const PIGEONHOLE_MAX: usize = 6;
const QUEENS_BENCH_MAX: usize = 7;
const BENCH_BUDGET: Duration = Duration::from_secs(60);

type Criterion = (&'static str, fn() -> Outcome);

/// Every criterion is a failure count; none is tolerated.
struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: usize, detail: String) -> Outcome {
    Outcome {
        pass: failures == 0,
        detail: format!("{failures} failures; {detail}"),
    }
}

fn formulas(seed: u64, n: usize) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_formula(&mut rng, VARS, DEPTH)).collect()
}

// ---------------------------------------------------------------------------
// random operation traces

#[derive(Clone, Copy, Debug)]
enum Step {
    Var(u32),
    Not(usize),
    Apply(BinOp, usize, usize),
}

fn trace(rng: &mut ChaCha8Rng, len: usize) -> Vec<Step> {
    (0..len)
        .map(|i| match rng.random_range(0..6) {
            0 | 1 => Step::Var(rng.random_range(1..=VARS)),
            2 => Step::Not(rng.random_range(0..i + 2)),
            _ => Step::Apply(
                BinOp::ALL[rng.random_range(0..3)],
                rng.random_range(0..i + 2),
                rng.random_range(0..i + 2),
            ),
        })
        .collect()
}

fn pure_step(store: Store, refs: &[NodeRef], step: Step) -> robdd::Result<(NodeRef, Store)> {
    let fuel = Fuel::for_vars(VARS);
    match step {
        Step::Var(i) => store.var(Var::new(i)),
        Step::Not(a) => store.neg(fuel, refs[a]),
        Step::Apply(op, a, b) => store.apply(fuel, op, refs[a], refs[b]),
    }
}

fn interned_step(m: &mut Manager, refs: &[Handle], step: Step) -> robdd::Result<Handle> {
    match step {
        Step::Var(i) => Ok(m.var(Var::new(i))),
        Step::Not(a) => m.not(refs[a]),
        Step::Apply(op, a, b) => m.apply(op, refs[a], refs[b]),
    }
}

/// Truth table of every node of `store` as a 64-bit mask over six
/// variables, computed bottom-up in id order.
fn store_masks(store: &Store) -> HashMap<u32, u64> {
    let var_mask = |v: Var| {
        (0..64u32)
            .filter(|k| k >> (v.index() - 1) & 1 == 1)
            .fold(0u64, |m, k| m | 1 << k)
    };
    let mut masks = HashMap::new();
    for (&id, node) in store.graph() {
        let of = |r: NodeRef, masks: &HashMap<u32, u64>| match r {
            NodeRef::True => u64::MAX,
            NodeRef::False => 0,
            NodeRef::Inner(c) => masks[&c],
        };
        let x = var_mask(node.var);
        let m = (!x & of(node.low, &masks)) | (x & of(node.high, &masks));
        masks.insert(id, m);
    }
    masks
}

// ---------------------------------------------------------------------------
// criteria

fn oracle_equivalence() -> Outcome {
    let fs = formulas(1, ORACLE_FORMULAS);
    let mut failures = 0;
    for batch in fs.chunks(ORACLE_BATCH) {
        let mut store = Store::new();
        let mut m = Manager::new();
        for f in batch {
            let expected = formula_truth_table(f, VARS).unwrap();
            match compile_pure(f, store.clone(), Fuel::for_vars(VARS)) {
                Ok((r, s)) => {
                    failures += (bdd_truth_table(&s, r, VARS).unwrap() != expected) as usize;
                    store = s;
                }
                Err(_) => failures += 1,
            }
            match compile_interned(f, &mut m) {
                Ok(h) => failures += (bdd_truth_table(&m, h, VARS).unwrap() != expected) as usize,
                Err(_) => failures += 1,
            }
        }
    }
    outcome(
        failures,
        format!("{ORACLE_FORMULAS} formulas x 2 backends, {VARS} vars, depth <= {DEPTH}"),
    )
}

fn deep_eq(m: &Manager, a: Handle, b: Handle) -> bool {
    match (m.decode(a).unwrap(), m.decode(b).unwrap()) {
        (Decoded::Leaf(x), Decoded::Leaf(y)) => x == y,
        (
            Decoded::Inner {
                var: v,
                low: l,
                high: h,
            },
            Decoded::Inner {
                var: w,
                low: l2,
                high: h2,
            },
        ) => v == w && deep_eq(m, l, l2) && deep_eq(m, h, h2),
        _ => false,
    }
}

fn canonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = 0;
    let mut equivalent = 0;
    for _ in 0..CANONICITY_PAIRS {
        let f = random_formula(&mut rng, VARS, DEPTH);
        let g = if rng.random() {
            random_equivalent(&mut rng, &f)
        } else {
            random_formula(&mut rng, VARS, DEPTH)
        };
        let same = formula_truth_table(&f, VARS).unwrap() == formula_truth_table(&g, VARS).unwrap();
        equivalent += same as usize;

        let fuel = Fuel::for_vars(VARS);
        let (a, s) = compile_pure(&f, Store::new(), fuel).unwrap();
        let (b, _) = compile_pure(&g, s, fuel).unwrap();
        failures += (pure::eq(a, b) != same) as usize;

        let mut m = Manager::new();
        let a = compile_interned(&f, &mut m).unwrap();
        let b = compile_interned(&g, &mut m).unwrap();
        failures += (structural_eq(a, b) != same) as usize;
        failures += (deep_eq(&m, a, b) != same) as usize;
    }
    outcome(
        failures,
        format!(
            "{CANONICITY_PAIRS} pairs ({equivalent} equivalent, {} not), eq and structural_eq and deep equality",
            CANONICITY_PAIRS - equivalent
        ),
    )
}

fn well_formedness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = 0;
    let mut steps_run = 0;
    for _ in 0..PURE_TRACES {
        let len = rng.random_range(1..=MAX_TRACE_LEN);
        let steps = trace(&mut rng, len);
        let mut store = Store::new();
        let mut masks = HashMap::new();
        let mut refs = vec![NodeRef::False, NodeRef::True];
        for step in steps {
            let old = store.clone();
            let (r, s) = match pure_step(store, &refs, step) {
                Ok(x) => x,
                Err(_) => {
                    failures += 1;
                    break;
                }
            };
            steps_run += 1;
            let new_masks = store_masks(&s);
            let kept = masks.iter().all(|(id, m)| new_masks.get(id) == Some(m));
            let clean = s.validate().is_clean() && validate_extension(&old, &s, false).is_clean();
            if !(kept && clean) {
                failures += 1;
                break;
            }
            masks = new_masks;
            refs.push(r);
            store = s;
        }
    }
    outcome(
        failures,
        format!("{PURE_TRACES} pure traces, {steps_run} steps, validated with binding and denotation checks"),
    )
}

fn maximal_sharing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = 0;
    let mut rebuilt = 0;
    for _ in 0..INTERNED_TRACES {
        let len = rng.random_range(1..=MAX_TRACE_LEN);
        let mut m = Manager::new();
        let mut refs = vec![m.leaf_false(), m.leaf_true()];
        for step in trace(&mut rng, len) {
            let h = interned_step(&mut m, &refs, step).unwrap();
            refs.push(h);
        }
        if !m.validate().is_clean() {
            failures += 1;
        }
        let mut shapes: Vec<Shape> = m.pool().map(|(_, s)| s).collect();
        let total = shapes.len();
        shapes.sort_by_key(|s| format!("{s:?}"));
        shapes.dedup();
        failures += (shapes.len() != total) as usize;
        let pool = m.pool_len();
        for &h in &refs {
            failures += (m.rebuild(h).unwrap() != h) as usize;
            rebuilt += 1;
        }
        failures += (m.pool_len() != pool) as usize;
    }
    outcome(
        failures,
        format!("{INTERNED_TRACES} interned traces, {rebuilt} handles rebuilt to identical uids"),
    )
}

#[derive(Default)]
struct Tally {
    operations: usize,
    violations: usize,
    worst_ratio: f64,
}

impl Tally {
    fn record(&mut self, misses: u64, bound: usize) {
        self.operations += 1;
        self.violations += (misses > bound as u64) as usize;
        self.worst_ratio = self.worst_ratio.max(misses as f64 / bound as f64);
    }
}

/// Compiles `f` operation by operation, checking each operation's memo
/// misses against the size bound.
fn check_bounds_pure(f: &Formula, store: Store, tally: &mut Tally) -> (NodeRef, Store) {
    let fuel = Fuel::for_vars(VARS);
    match f {
        Formula::Const(v) => (NodeRef::leaf(*v), store),
        Formula::Ref(v) => store.var(*v).unwrap(),
        Formula::Not(a) => {
            let (a, s) = check_bounds_pure(a, store, tally);
            let before = s.stats().not.misses;
            let bound = size(&s, a).unwrap();
            let (r, s) = s.neg(fuel, a).unwrap();
            tally.record(s.stats().not.misses - before, bound);
            (r, s)
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Xor(a, b) => {
            let op = op_of(f);
            let (a, s) = check_bounds_pure(a, store, tally);
            let (b, s) = check_bounds_pure(b, s, tally);
            let before = *s.stats();
            let (sa, sb) = (size(&s, a).unwrap(), size(&s, b).unwrap());
            let (r, s) = s.apply(fuel, op, a, b).unwrap();
            tally.record(s.stats().binop(op).misses - before.binop(op).misses, sa * sb);
            if s.stats().not.misses > before.not.misses {
                tally.record(s.stats().not.misses - before.not.misses, sa + sb);
            }
            (r, s)
        }
    }
}

fn check_bounds_interned(f: &Formula, m: &mut Manager, tally: &mut Tally) -> Handle {
    match f {
        Formula::Const(v) => m.constant(*v),
        Formula::Ref(v) => m.var(*v),
        Formula::Not(a) => {
            let a = check_bounds_interned(a, m, tally);
            let before = m.stats().not.misses;
            let bound = size(&*m, a).unwrap();
            let r = m.not(a).unwrap();
            tally.record(m.stats().not.misses - before, bound);
            r
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Xor(a, b) => {
            let op = op_of(f);
            let a = check_bounds_interned(a, m, tally);
            let b = check_bounds_interned(b, m, tally);
            let before = *m.stats();
            let (sa, sb) = (size(&*m, a).unwrap(), size(&*m, b).unwrap());
            let r = m.apply(op, a, b).unwrap();
            tally.record(m.stats().binop(op).misses - before.binop(op).misses, sa * sb);
            if m.stats().not.misses > before.not.misses {
                tally.record(m.stats().not.misses - before.not.misses, sa + sb);
            }
            r
        }
    }
}

fn op_of(f: &Formula) -> BinOp {
    match f {
        Formula::And(..) => BinOp::And,
        Formula::Or(..) => BinOp::Or,
        _ => BinOp::Xor,
    }
}

fn complexity_bound() -> Outcome {
    let fs = formulas(1, ORACLE_FORMULAS);
    let mut tally = Tally::default();
    for batch in fs.chunks(ORACLE_BATCH) {
        let mut store = Store::new();
        let mut m = Manager::new();
        for f in batch {
            store = check_bounds_pure(f, store, &mut tally).1;
            check_bounds_interned(f, &mut m, &mut tally);
        }
    }
    outcome(
        tally.violations,
        format!(
            "{} operations on the oracle suite, worst misses/bound = {:.3}",
            tally.operations, tally.worst_ratio
        ),
    )
}

fn memo_transparency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = 0;
    for _ in 0..REPLAY_SEQUENCES {
        let len = rng.random_range(1..=MAX_TRACE_LEN / 2);
        let steps = trace(&mut rng, len);

        let (mut warm, mut cold) = (Store::new(), Store::new());
        let mut wr = vec![NodeRef::False, NodeRef::True];
        let mut cr = wr.clone();
        let mut mw = Manager::new();
        let mut mc = Manager::new();
        let mut hw = vec![mw.leaf_false(), mw.leaf_true()];
        let mut hc = vec![mc.leaf_false(), mc.leaf_true()];
        for &step in &steps {
            let (a, s) = pure_step(warm, &wr, step).unwrap();
            let (b, t) = pure_step(cold.clear_memo(), &cr, step).unwrap();
            failures += (a != b) as usize;
            (warm, cold) = (s, t);
            wr.push(a);
            cr.push(b);

            let x = interned_step(&mut mw, &hw, step).unwrap();
            mc.clear_caches();
            let y = interned_step(&mut mc, &hc, step).unwrap();
            failures += (x.uid() != y.uid()) as usize;
            hw.push(x);
            hc.push(y);
        }
        failures += (warm.graph() != cold.graph()) as usize;
    }
    outcome(
        failures,
        format!("{REPLAY_SEQUENCES} sequences replayed with caches cleared before every step"),
    )
}

fn worked_example() -> Outcome {
    // f(0,0)=T, f(0,1)=F, f(1,0)=T, f(1,1)=F over (x1, x2), as a sum of minterms
    let rows = [
        ((false, false), true),
        ((false, true), false),
        ((true, false), true),
        ((true, true), false),
    ];
    let lit = |i, v: bool| if v { Formula::var(i) } else { !Formula::var(i) };
    let f = Formula::any(rows.iter().filter(|r| r.1).map(|&((a, b), _)| lit(1, a) & lit(2, b)));

    let (r, s) = compile_pure(&f, Store::new(), Fuel::for_vars(2)).unwrap();
    let pure_ok = match r {
        NodeRef::Inner(id) => {
            s.node(id).unwrap() == Node::new(NodeRef::True, Var::new(2), NodeRef::False) && size(&s, r).unwrap() == 3
        }
        _ => false,
    };
    let mut m = Manager::new();
    let h = compile_interned(&f, &mut m).unwrap();
    let expected = Shape::Inner {
        var: Var::new(2),
        low: m.leaf_true().uid(),
        high: m.leaf_false().uid(),
    };
    let interned_ok = m.shape(h).unwrap() == expected && size(&m, h).unwrap() == 3;
    let failures = (!pure_ok) as usize + (!interned_ok) as usize;
    outcome(failures, "one inner node (x2, low T, high F) on both backends".into())
}

fn benchmarks() -> Outcome {
    let mut failures = 0;
    let mut notes = Vec::new();
    for (n, expected) in [(4, 2u64), (5, 10)] {
        let brute = queens_solutions(n);
        let rows = cmd_bench(&BenchOptions {
            family: Family::Queens,
            sizes: n..=n,
            backend: Backend::Both,
            limit: None,
            budget: BENCH_BUDGET,
            fuel: None,
        })
        .unwrap();
        let ok = brute == expected && rows.iter().all(|r| r.models == expected as u128);
        failures += (!ok) as usize;
        notes.push(format!("queens {n}: {expected} models"));
    }
    for holes in 1..=PIGEONHOLE_MAX {
        let f = families::pigeonhole(holes);
        let (r, _) = compile_pure(&f, Store::new(), Fuel::for_vars(f.max_var())).unwrap();
        let mut m = Manager::new();
        let h = compile_interned(&f, &mut m).unwrap();
        failures += (r != NodeRef::False || h != m.leaf_false()) as usize;
    }
    notes.push(format!("pigeonhole 1..={PIGEONHOLE_MAX} unsat"));

    let start = Instant::now();
    match cmd_bench(&BenchOptions {
        family: Family::Queens,
        sizes: 1..=QUEENS_BENCH_MAX,
        backend: Backend::Both,
        limit: None,
        budget: BENCH_BUDGET,
        fuel: None,
    }) {
        Ok(rows) => {
            for n in 1..=QUEENS_BENCH_MAX {
                let pick = |k: BackendKind| rows.iter().find(|r| r.size == n && r.backend == k).unwrap();
                let (p, i) = (pick(BackendKind::Pure), pick(BackendKind::Interned));
                failures += (i.memo_misses > p.memo_misses) as usize;
                failures += (p.models != queens_solutions(n) as u128) as usize;
            }
            let r: Vec<String> = ratios(&rows).iter().map(|(_, n, r)| format!("{n}:{r:.2}")).collect();
            notes.push(format!(
                "queens 1..={QUEENS_BENCH_MAX} in {:.2}s, pure/interned time ratio {}",
                start.elapsed().as_secs_f64(),
                r.join(" ")
            ));
        }
        Err(e) => {
            failures += 1;
            notes.push(format!("bench failed: {e}"));
        }
    }
    outcome(failures, notes.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence", oracle_equivalence),
        ("canonicity (both directions)", canonicity),
        ("well-formedness preservation", well_formedness),
        ("maximal sharing", maximal_sharing),
        ("memo-miss complexity bound", complexity_bound),
        ("memo transparency", memo_transparency),
        ("worked example", worked_example),
        ("benchmarks", benchmarks),
    ];
    let mut all = true;
    for (name, check) in criteria {
        let start = Instant::now();
        let o = check();
        all &= o.pass;
        println!(
            "{} {name}: {} [{:.2}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
