//! Brute-force finite-model oracle: enumerate the finite models of the
//! pseudosemilattice axioms, evaluate identities under all assignments, and
//! search for small separating witnesses.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::terms::{Letter, Term};

const MAX_ENUM_SIZE: usize = 5;

/// A Cayley table on {0..size-1} with one binary operation, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteBinaryAlgebra {
    pub size: usize,
    pub table: Vec<usize>,
}

impl FiniteBinaryAlgebra {
    pub fn new(size: usize, table: Vec<usize>) -> Result<FiniteBinaryAlgebra> {
        if table.len() != size * size || table.iter().any(|&v| v >= size) {
            return Err(Error::BadParam("malformed Cayley table".into()));
        }
        Ok(FiniteBinaryAlgebra { size, table })
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|r| self.table[r * self.size..(r + 1) * self.size].to_vec())
            .collect()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// An axiom side compiled to variable indices for fast evaluation.
#[derive(Debug, Clone)]
enum Expr {
    Var(usize),
    Op(Box<Expr>, Box<Expr>),
}

fn compile(t: &Term, vars: &mut Vec<Letter>) -> Expr {
    match t {
        Term::Leaf(l) => {
            let idx = match vars.iter().position(|v| v == l) {
                Some(i) => i,
                None => {
                    vars.push(l.clone());
                    vars.len() - 1
                }
            };
            Expr::Var(idx)
        }
        Term::Meet(a, b) => Expr::Op(Box::new(compile(a, vars)), Box::new(compile(b, vars))),
    }
}

fn eval_partial(e: &Expr, assign: &[usize], table: &[Option<usize>], size: usize) -> Option<usize> {
    match e {
        Expr::Var(i) => Some(assign[*i]),
        Expr::Op(a, b) => {
            let x = eval_partial(a, assign, table, size)?;
            let y = eval_partial(b, assign, table, size)?;
            table[x * size + y]
        }
    }
}

struct Axiom {
    lhs: Expr,
    rhs: Expr,
    arity: usize,
}

/// The five defining axioms, compiled from the literal words (the duals via
/// left-right mirroring to avoid transcription slips).
fn axioms() -> Vec<Axiom> {
    let parse = |s: &str| crate::terms::parse_term(s).unwrap();
    let base = [
        (parse("x^x"), parse("x")),
        (parse("(x^y)^(x^z)"), parse("(x^y)^z")),
        (
            parse("((x^y)^(x^z))^(x^w)"),
            parse("(x^y)^((x^z)^(x^w))"),
        ),
    ];
    let mut pairs: Vec<(Term, Term)> = base.to_vec();
    for (u, v) in &base[1..] {
        pairs.push((u.mirror(), v.mirror()));
    }
    pairs
        .into_iter()
        .map(|(u, v)| {
            let mut vars = Vec::new();
            let lhs = compile(&u, &mut vars);
            let rhs = compile(&v, &mut vars);
            Axiom {
                lhs,
                rhs,
                arity: vars.len(),
            }
        })
        .collect()
}

fn for_each_assignment(arity: usize, size: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut assign = vec![0usize; arity];
    loop {
        if !f(&assign) {
            return false;
        }
        let mut pos = 0;
        loop {
            if pos == arity {
                return true;
            }
            assign[pos] += 1;
            if assign[pos] < size {
                break;
            }
            assign[pos] = 0;
            pos += 1;
        }
    }
}

/// Check all five axioms over all tuples.
pub fn is_pseudosemilattice(a: &FiniteBinaryAlgebra) -> bool {
    let table: Vec<Option<usize>> = a.table.iter().map(|&v| Some(v)).collect();
    partial_ok(&axioms(), &table, a.size)
}

/// No axiom instance whose participating cells are all determined fails.
fn partial_ok(axs: &[Axiom], table: &[Option<usize>], size: usize) -> bool {
    for ax in axs {
        let ok = for_each_assignment(ax.arity, size, |assign| {
            match (
                eval_partial(&ax.lhs, assign, table, size),
                eval_partial(&ax.rhs, assign, table, size),
            ) {
                (Some(l), Some(r)) => l == r,
                _ => true,
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

/// All pseudosemilattices on {0..size-1}, by backtracking over the
/// off-diagonal cells in row-major order (the diagonal is forced by
/// idempotency). Deterministic lexicographic output; `up_to_iso` keeps only
/// the minimal table of each isomorphism class.
pub fn enumerate(size: usize, up_to_iso: bool) -> Result<Vec<FiniteBinaryAlgebra>> {
    if size == 0 || size > MAX_ENUM_SIZE {
        return Err(Error::SizeTooLarge(size));
    }
    let axs = axioms();
    let mut table: Vec<Option<usize>> = vec![None; size * size];
    for d in 0..size {
        table[d * size + d] = Some(d);
    }
    let cells: Vec<usize> = (0..size * size)
        .filter(|idx| idx / size != idx % size)
        .collect();
    let mut out = Vec::new();
    fill(&axs, &mut table, size, &cells, 0, &mut out);
    if up_to_iso {
        out.retain(|a| canonical_table(a) == a.table);
    }
    Ok(out)
}

fn fill(
    axs: &[Axiom],
    table: &mut Vec<Option<usize>>,
    size: usize,
    cells: &[usize],
    at: usize,
    out: &mut Vec<FiniteBinaryAlgebra>,
) {
    if at == cells.len() {
        let full: Vec<usize> = table.iter().map(|v| v.unwrap()).collect();
        out.push(FiniteBinaryAlgebra { size, table: full });
        return;
    }
    for v in 0..size {
        table[cells[at]] = Some(v);
        if partial_ok(axs, table, size) {
            fill(axs, table, size, cells, at + 1, out);
        }
    }
    table[cells[at]] = None;
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![0]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// The minimal table in the isomorphism class, under all value permutations.
fn canonical_table(a: &FiniteBinaryAlgebra) -> Vec<usize> {
    let n = a.size;
    permutations(n)
        .iter()
        .map(|p| {
            let mut t = vec![0usize; n * n];
            for x in 0..n {
                for y in 0..n {
                    t[p[x] * n + p[y]] = p[a.op(x, y)];
                }
            }
            t
        })
        .min()
        .expect("at least the identity permutation")
}

/// Does the identity u ≈ v hold in the algebra under every assignment?
pub fn satisfies(a: &FiniteBinaryAlgebra, u: &Term, v: &Term) -> bool {
    let mut vars = Vec::new();
    let lhs = compile(u, &mut vars);
    let rhs = compile(v, &mut vars);
    let table: Vec<Option<usize>> = a.table.iter().map(|&x| Some(x)).collect();
    for_each_assignment(vars.len(), a.size, |assign| {
        eval_partial(&lhs, assign, &table, a.size)
            == eval_partial(&rhs, assign, &table, a.size)
    })
}

/// A separating model and assignment for u ≈ v among pseudosemilattices of
/// carrier at most `max_size`, if one exists. Deterministic: smallest size
/// first, then enumeration order, then lexicographic assignment.
pub fn find_witness(
    u: &Term,
    v: &Term,
    max_size: usize,
) -> Result<Option<(FiniteBinaryAlgebra, BTreeMap<Letter, usize>)>> {
    if max_size > MAX_ENUM_SIZE {
        return Err(Error::SizeTooLarge(max_size));
    }
    let mut vars = Vec::new();
    let lhs = compile(u, &mut vars);
    let rhs = compile(v, &mut vars);
    for size in 1..=max_size {
        for alg in enumerate(size, false)? {
            let table: Vec<Option<usize>> = alg.table.iter().map(|&x| Some(x)).collect();
            let mut found = None;
            for_each_assignment(vars.len(), size, |assign| {
                let l = eval_partial(&lhs, assign, &table, size);
                let r = eval_partial(&rhs, assign, &table, size);
                if l != r {
                    found = Some(assign.to_vec());
                    false
                } else {
                    true
                }
            });
            if let Some(assign) = found {
                let map = vars
                    .iter()
                    .cloned()
                    .zip(assign.iter().copied())
                    .collect();
                return Ok(Some((alg, map)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn alg(size: usize, rows: &[&[usize]]) -> FiniteBinaryAlgebra {
        FiniteBinaryAlgebra::new(size, rows.concat()).unwrap()
    }

    #[test]
    fn named_two_element_models() {
        let left_zero = alg(2, &[&[0, 0], &[1, 1]]);
        let min = alg(2, &[&[0, 0], &[0, 1]]);
        let max = alg(2, &[&[0, 1], &[1, 1]]);
        let right_zero = alg(2, &[&[0, 1], &[0, 1]]);
        for a in [&left_zero, &min, &max, &right_zero] {
            assert!(is_pseudosemilattice(a));
            assert!(a.is_associative());
        }
        let non_idem = alg(2, &[&[1, 0], &[0, 1]]);
        assert!(!is_pseudosemilattice(&non_idem));
    }

    #[test]
    fn enumerate_base_counts() {
        assert_eq!(enumerate(1, false).unwrap().len(), 1);
        let two = enumerate(2, false).unwrap();
        assert_eq!(two.len(), 4);
        for a in &two {
            assert!(is_pseudosemilattice(a));
        }
        // min/max merge under the value swap; the one-sided zeros are rigid.
        assert_eq!(enumerate(2, true).unwrap().len(), 3);
        assert!(matches!(enumerate(6, false), Err(Error::SizeTooLarge(6))));
    }

    #[test]
    fn enumeration_is_closed_under_permutation() {
        for size in [2, 3] {
            let all = enumerate(size, false).unwrap();
            let tables: std::collections::BTreeSet<Vec<usize>> =
                all.iter().map(|a| a.table.clone()).collect();
            for a in &all {
                for p in permutations(size) {
                    let mut t = vec![0usize; size * size];
                    for x in 0..size {
                        for y in 0..size {
                            t[p[x] * size + p[y]] = p[a.op(x, y)];
                        }
                    }
                    assert!(tables.contains(&t));
                }
            }
        }
    }

    #[test]
    fn satisfies_examples() {
        let left_zero = alg(2, &[&[0, 0], &[1, 1]]);
        let min = alg(2, &[&[0, 0], &[0, 1]]);
        assert!(satisfies(&left_zero, &t("x"), &t("x")));
        assert!(satisfies(&left_zero, &t("x^y"), &t("x")));
        assert!(!satisfies(&min, &t("x^y"), &t("x")));
        assert!(satisfies(
            &min,
            &t("x1^((x3^(x1^x4))^x2)"),
            &t("(x1^x4)^((x3^(x1^x4))^x2)")
        ));
    }

    #[test]
    fn witness_examples() {
        assert!(find_witness(&t("x"), &t("x^x"), 3).unwrap().is_none());
        let (alg, map) = find_witness(&t("x^y"), &t("y^x"), 2).unwrap().unwrap();
        assert_eq!(alg.size, 2);
        let x = map[&Letter::new("x").unwrap()];
        let y = map[&Letter::new("y").unwrap()];
        assert_ne!(alg.op(x, y), alg.op(y, x));
        assert!(matches!(
            find_witness(&t("x"), &t("y"), 6),
            Err(Error::SizeTooLarge(6))
        ));
    }

    #[test]
    fn family_identity_holds_in_tiny_models() {
        let u = t("x1^((x3^(x1^x4))^x2)");
        let v = t("(x1^x4)^((x3^(x1^x4))^x2)");
        assert!(find_witness(&u, &v, 2).unwrap().is_none());
    }
}
