//! Formula generators: the benchmark families and random formulas for
//! property tests and the self test.

use rand::Rng;

use crate::diagram::BinOp;
use crate::formula::Formula;

/// Variable for "queen on row `row`, column `col`" on an `n x n` board.
pub fn queens_var(n: usize, row: usize, col: usize) -> Formula {
    Formula::var((row * n + col + 1) as u32)
}

/// Every row holds a queen that no other queen attacks. Satisfying
/// assignments of `x1..=x{n*n}` are exactly the solutions.
pub fn queens(n: usize) -> Formula {
    let safe_at = |row: usize, col: usize| {
        let mut conflicts = Vec::new();
        for r in 0..n {
            for c in 0..n {
                if (r, c) == (row, col) {
                    continue;
                }
                let same_line = r == row || c == col;
                let diagonal = r.abs_diff(row) == c.abs_diff(col);
                if same_line || diagonal {
                    conflicts.push(!queens_var(n, r, c));
                }
            }
        }
        Formula::all(std::iter::once(queens_var(n, row, col)).chain(conflicts))
    };
    Formula::all((0..n).map(|row| Formula::any((0..n).map(|col| safe_at(row, col)))))
}

/// Variable for "pigeon `p` sits in hole `h`" with `holes` holes.
pub fn pigeon_var(holes: usize, pigeon: usize, hole: usize) -> Formula {
    Formula::var((pigeon * holes + hole + 1) as u32)
}

/// `holes + 1` pigeons into `holes` holes, at most one pigeon per hole.
/// Unsatisfiable for every `holes`.
pub fn pigeonhole(holes: usize) -> Formula {
    let pigeons = holes + 1;
    let placed = (0..pigeons).map(|p| Formula::any((0..holes).map(|h| pigeon_var(holes, p, h))));
    let exclusive = (0..holes).flat_map(|h| {
        (0..pigeons)
            .flat_map(move |p| (p + 1..pigeons).map(move |q| !(pigeon_var(holes, p, h) & pigeon_var(holes, q, h))))
    });
    Formula::all(placed.chain(exclusive))
}

/// Number of variables each family instance ranges over.
pub fn queens_vars(n: usize) -> u32 {
    (n * n) as u32
}

pub fn pigeonhole_vars(holes: usize) -> u32 {
    ((holes + 1) * holes) as u32
}

/// Random formula over `x1..=x{max_vars}` of depth at most `depth`.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, max_vars: u32, depth: usize) -> Formula {
    let leaf = |rng: &mut R| {
        if max_vars == 0 || rng.random_ratio(1, 8) {
            Formula::Const(rng.random())
        } else {
            Formula::var(rng.random_range(1..=max_vars))
        }
    };
    if depth == 0 || rng.random_ratio(1, 5) {
        return leaf(rng);
    }
    match rng.random_range(0..7) {
        0 => !random_formula(rng, max_vars, depth - 1),
        k => {
            let op = BinOp::ALL[(k - 1) as usize % 3];
            let a = random_formula(rng, max_vars, depth - 1);
            let b = random_formula(rng, max_vars, depth - 1);
            Formula::binary(op, a, b)
        }
    }
}

/// A formula equivalent to `f` but (usually) syntactically different,
/// built from sound rewrites: De Morgan, double negation, xor expansion,
/// commutation.
pub fn random_equivalent<R: Rng + ?Sized>(rng: &mut R, f: &Formula) -> Formula {
    let mut rw = |g: &Formula| random_equivalent(rng, g);
    let out = match f {
        Formula::Const(_) | Formula::Ref(_) => f.clone(),
        Formula::Not(a) => !rw(a),
        Formula::And(a, b) => {
            let (a, b) = (rw(a), rw(b));
            if rng.random() {
                !(!a | !b)
            } else {
                b & a
            }
        }
        Formula::Or(a, b) => {
            let (a, b) = (rw(a), rw(b));
            if rng.random() {
                !(!a & !b)
            } else {
                b | a
            }
        }
        Formula::Xor(a, b) => {
            let (a, b) = (rw(a), rw(b));
            if rng.random() {
                (a.clone() | b.clone()) & !(a & b)
            } else {
                b ^ a
            }
        }
    };
    if rng.random_ratio(1, 6) {
        !!out
    } else {
        out
    }
}
