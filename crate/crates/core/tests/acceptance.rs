//! Acceptance gate: the property- and replay-based criteria, each reported
//! as a single pass/fail line.

use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use psl_core::family::{
    alpha, beta, d_content, geodesic_count, word_of_path, FamilyIndex,
};
use psl_core::finmodel::{enumerate, is_pseudosemilattice, satisfies};
use psl_core::graphs::{canonical_key, delta};
use psl_core::order::{is_elementary, GraphPair};
use psl_core::replay;
use psl_core::rewrite::{reduce, reduce_with_rng, words_equal};
use psl_core::terms::{parse_term, Letter, Substitution, Term};
use psl_core::varieties::{pair_consequence, hasse, Kind, PairId};

struct Gate {
    lines: Vec<(String, bool)>,
}

impl Gate {
    fn new() -> Gate {
        Gate { lines: Vec::new() }
    }

    fn report(&mut self, name: &str, pass: bool, detail: String) {
        let verdict = if pass { "pass" } else { "FAIL" };
        println!("{name}: {verdict} ({detail})");
        self.lines.push((name.to_string(), pass));
    }

    fn finish(self) {
        let failed: Vec<&str> = self
            .lines
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect();
        assert!(failed.is_empty(), "failed criteria: {failed:?}");
    }
}

fn pool(names: &[&str]) -> Vec<Letter> {
    names.iter().map(|s| Letter::new(*s).unwrap()).collect()
}

fn random_term(rng: &mut ChaCha8Rng, leaves: usize, letters: &[Letter]) -> Term {
    if leaves <= 1 {
        Term::leaf(letters.choose(rng).unwrap().clone())
    } else {
        let split = rng.gen_range(1..leaves);
        Term::meet(
            random_term(rng, split, letters),
            random_term(rng, leaves - split, letters),
        )
    }
}

fn random_subst(rng: &mut ChaCha8Rng, vars: &[&str], letters: &[Letter]) -> Substitution {
    let mut s = Substitution::identity();
    for v in vars {
        let leaves = rng.gen_range(1..=6);
        s.insert(Letter::new(*v).unwrap(), random_term(rng, leaves, letters));
    }
    s
}

fn axiom_pairs() -> Vec<(Term, Term)> {
    let base = [
        ("x^x", "x"),
        ("(x^y)^(x^z)", "(x^y)^z"),
        ("((x^y)^(x^z))^(x^w)", "(x^y)^((x^z)^(x^w))"),
    ];
    let mut out = Vec::new();
    for (l, r) in base {
        let (u, v) = (parse_term(l).unwrap(), parse_term(r).unwrap());
        if l != "x^x" {
            out.push((u.mirror(), v.mirror()));
        }
        out.push((u, v));
    }
    out
}

fn family_grid() -> Vec<(FamilyIndex, psl_core::graphs::BiTree, psl_core::graphs::BiTree)> {
    let mut out = Vec::new();
    for n in [2usize, 3, 4] {
        for k in 1..=3usize {
            for i in 1..=2 * n {
                for dual in [false, true] {
                    let idx = FamilyIndex::new(n, k, i, dual).unwrap();
                    out.push((idx, alpha(&idx), beta(&idx)));
                }
            }
        }
    }
    out
}

fn criterion_confluence(gate: &mut Gate) {
    let letters = pool(&["x1", "x2", "x3", "x4", "x5", "x6"]);
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut checked = 0usize;
    let mut bad = 0usize;
    for _ in 0..1000 {
        let leaves = rng.gen_range(1..=30);
        let g = delta(&random_term(&mut rng, leaves, &letters));
        let baseline = canonical_key(&reduce(&g));
        for _ in 0..10 {
            checked += 1;
            if canonical_key(&reduce_with_rng(&g, &mut rng)) != baseline {
                bad += 1;
            }
        }
    }
    gate.report(
        "1 confluence",
        bad == 0,
        format!("{checked} randomized reductions, {bad} divergent"),
    );
}

fn criterion_axioms(gate: &mut Gate) {
    let letters = pool(&["x", "y", "z", "w", "a", "b"]);
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut bad = 0usize;
    for (u, v) in axiom_pairs() {
        for _ in 0..500 {
            let s = random_subst(&mut rng, &["x", "y", "z", "w"], &letters);
            if !words_equal(&u.substitute(&s), &v.substitute(&s)) {
                bad += 1;
            }
        }
    }
    gate.report(
        "2 free-algebra axioms",
        bad == 0,
        format!("5 axioms x 500 instances, {bad} unequalized"),
    );
}

fn criterion_model_soundness(gate: &mut Gate) {
    let letters = pool(&["x", "y", "z", "w"]);
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut algebras = Vec::new();
    for size in 1..=3usize {
        algebras.extend(enumerate(size, false).unwrap());
    }
    let axioms = axiom_pairs();
    let mut bad = 0usize;
    let mut pairs = 0usize;
    for _ in 0..200 {
        // An axiom instance wrapped in a random common context stays equal.
        let (l, r) = axioms.choose(&mut rng).unwrap();
        let s = random_subst(&mut rng, &["x", "y", "z", "w"], &letters);
        let mut u = l.substitute(&s);
        let mut v = r.substitute(&s);
        for _ in 0..rng.gen_range(0..3) {
            let leaves = rng.gen_range(1..=4);
            let c = random_term(&mut rng, leaves, &letters);
            if rng.gen_bool(0.5) {
                u = Term::meet(c.clone(), u);
                v = Term::meet(c, v);
            } else {
                u = Term::meet(u, c.clone());
                v = Term::meet(v, c);
            }
        }
        assert!(words_equal(&u, &v), "generator produced an unequal pair");
        pairs += 1;
        if !algebras.iter().all(|a| satisfies(a, &u, &v)) {
            bad += 1;
        }
    }
    gate.report(
        "3 finite-model soundness",
        bad == 0,
        format!(
            "{pairs} equal pairs against {} algebras of size <= 3, {bad} violations",
            algebras.len()
        ),
    );
}

fn criterion_family(gate: &mut Gate) {
    let mut bad = 0usize;
    let mut count = 0usize;
    for (idx, a, b) in family_grid() {
        count += 1;
        let content = d_content(idx.n, idx.dual).unwrap();
        let ok = a.is_reduced()
            && b.is_reduced()
            && b.vertex_count() == a.vertex_count() + 1
            && is_elementary(&GraphPair::new(a.clone(), b.clone()).unwrap()).unwrap()
            && a.invariants().c2 == content
            && b.invariants().c2 == content
            && canonical_key(&delta(&word_of_path(&a).unwrap())) == canonical_key(&a)
            && canonical_key(&delta(&word_of_path(&b).unwrap())) == canonical_key(&b);
        if !ok {
            bad += 1;
        }
    }
    gate.report(
        "4 family well-formedness",
        bad == 0,
        format!("{count} pairs over n in 2..4, k <= 3, all i, both flavors; {bad} defects"),
    );
}

fn criterion_replays(gate: &mut Gate) {
    let reports = [
        ("prop3.3", replay::prop3_3().unwrap()),
        ("prop3.5", replay::prop3_5().unwrap()),
        ("lemma3.6", replay::lemma3_6().unwrap()),
        ("prop4.9", replay::prop4_9().unwrap()),
        ("prop5.1", replay::prop5_1().unwrap()),
    ];
    let total: usize = reports.iter().map(|(_, r)| r.steps.len()).sum();
    let ok = reports.iter().all(|(_, r)| r.ok());
    gate.report(
        "5 proof replays",
        ok,
        format!("{total} constructive equations across 5 proofs"),
    );
}

fn criterion_comparison_law(gate: &mut Gate) {
    let mut bad = 0usize;
    let mut cases = 0usize;
    for n in [2usize, 3] {
        for k in 1..=3usize {
            for l in 1..=3usize {
                for i in 1..=2 * n {
                    for j in 1..=2 * n {
                        let ge = 2 * n * k + i >= 2 * n * l + j;
                        let gt = 2 * n * k + i > 2 * n * l + j;
                        // Cor 4.8 reads "dst is a consequence of src".
                        let mut clauses: Vec<(PairId, PairId, bool)> = vec![(
                            PairId::new(n, l, j, false).unwrap(),
                            PairId::new(n, k, i, false).unwrap(),
                            ge,
                        )];
                        if i % 2 == 1 && j % 2 == 1 {
                            clauses.push((
                                PairId::new(n, l, j, true).unwrap(),
                                PairId::new(n, k, i, true).unwrap(),
                                ge,
                            ));
                        }
                        if i % 2 == 1 {
                            clauses.push((
                                PairId::new(n, l, j, false).unwrap(),
                                PairId::new(n, k, i, true).unwrap(),
                                gt,
                            ));
                        }
                        if j % 2 == 1 {
                            clauses.push((
                                PairId::new(n, l, j, true).unwrap(),
                                PairId::new(n, k, i, false).unwrap(),
                                gt,
                            ));
                        }
                        for (src, dst, want) in clauses {
                            cases += 1;
                            if pair_consequence(&src, &dst) != want {
                                bad += 1;
                            }
                        }
                    }
                }
            }
        }
    }

    // The diamond chain for n = 2, levels 5 through 13.
    let d = hasse(2, 5, 13).unwrap();
    // Four edges inside each of the five diamonds plus four connectors.
    let mut chain_ok = d.nodes.len() == 20 && d.cover_edges.len() == 4 * 5 + 4;
    for level in 0..5usize {
        let base = 4 * level;
        // Meet below Plain and Dual, both below the next even node.
        for (lo, hi) in [
            (base, base + 1),
            (base, base + 2),
            (base + 1, base + 3),
            (base + 2, base + 3),
        ] {
            chain_ok &= d.cover_edges.contains(&(lo, hi));
        }
        if level > 0 {
            chain_ok &= d.cover_edges.contains(&(base - 1, base));
        }
        chain_ok &= matches!(d.nodes[base].kind, Kind::Meet)
            && matches!(d.nodes[base + 3].kind, Kind::Plain)
            && d.nodes[base + 3].i % 2 == 0;
    }
    gate.report(
        "6 comparison law coherence",
        bad == 0 && chain_ok,
        format!("{cases} Cor-4.8 clause instances ({bad} off) and the 5-diamond chain at n=2"),
    );
}

fn criterion_incomparability(gate: &mut Gate) {
    let mut bad = 0usize;
    let mut cases = 0usize;
    for n in [2usize, 3] {
        for k in 1..=2usize {
            for i in (1..=2 * n).step_by(2) {
                let p = PairId::new(n, k, i, false).unwrap();
                let d = PairId::new(n, k, i, true).unwrap();
                cases += 2;
                if pair_consequence(&p, &d) || pair_consequence(&d, &p) {
                    bad += 1;
                }
            }
        }
    }
    gate.report(
        "7 plain/dual incomparability",
        bad == 0,
        format!("{cases} directed checks for odd i, {bad} spurious consequences"),
    );
}

fn criterion_dichotomy(gate: &mut Gate) {
    let rep = replay::lemma4_4(11, 500).unwrap();
    let tally = &rep.steps.last().unwrap().detail;
    gate.report("8 substitution dichotomy", rep.ok(), tally.clone());
}

fn criterion_geodesics(gate: &mut Gate) {
    let mut bad = 0usize;
    let mut pairs = 0usize;
    for (idx, a, b) in family_grid() {
        for g in [&a, &b] {
            let ids: Vec<_> = g.vertex_ids().collect();
            for (x, &p) in ids.iter().enumerate() {
                for &q in &ids[x + 1..] {
                    if g.label(p) == g.label(q) && !g.neighbors(p).contains(&q) {
                        pairs += 1;
                        if geodesic_count(g, p, q).unwrap() % (2 * idx.n) != 1 {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    gate.report(
        "9 geodesic congruence",
        bad == 0,
        format!("{pairs} equal-labeled vertex pairs, {bad} off the 1 mod 2n class"),
    );
}

fn criterion_enumerator(gate: &mut Gate) {
    let two = enumerate(2, false).unwrap();
    let two_ok = two.len() == 4
        && two
            .iter()
            .all(|a| is_pseudosemilattice(a) && a.is_associative());
    let start = Instant::now();
    let three = enumerate(3, false).unwrap();
    let elapsed = start.elapsed();
    let three_ok = three.len() == 29 && elapsed.as_secs_f64() < 5.0;
    gate.report(
        "10 enumerator baseline",
        two_ok && three_ok,
        format!(
            "size 2: {} algebras (all associative: {two_ok}); size 3: {} in {:.0} ms",
            two.len(),
            three.len(),
            elapsed.as_secs_f64() * 1000.0
        ),
    );
}

#[test]
fn acceptance() {
    let mut gate = Gate::new();
    criterion_confluence(&mut gate);
    criterion_axioms(&mut gate);
    criterion_model_soundness(&mut gate);
    criterion_family(&mut gate);
    criterion_replays(&mut gate);
    criterion_comparison_law(&mut gate);
    criterion_incomparability(&mut gate);
    criterion_dichotomy(&mut gate);
    criterion_geodesics(&mut gate);
    criterion_enumerator(&mut gate);
    gate.finish();
}
