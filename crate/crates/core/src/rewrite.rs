//! The reduction engine: edge-folding, thorn deletion, reduced forms, Theta,
//! the meet on reduced graphs, endomorphism application and skeletons.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{self, BiTree, Side, VertId};
use crate::terms::{Substitution, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    Fold,
    ThornDelete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Step {
    pub kind: StepKind,
    pub survivor: VertId,
    pub removed: VertId,
}

/// Record of a reduction run; `vertex_map` sends each original vertex to its
/// surviving image (deleted vertices are absent), realizing the natural graph
/// homomorphism onto the reduced form.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
    pub vertex_map: BTreeMap<VertId, VertId>,
}

impl ReductionTrace {
    fn identity(g: &BiTree) -> Self {
        ReductionTrace {
            steps: Vec::new(),
            vertex_map: g.vertex_ids().map(|id| (id, id)).collect(),
        }
    }

    fn record_merge(&mut self, survivor: VertId, removed: VertId) {
        self.steps.push(Step {
            kind: StepKind::Fold,
            survivor,
            removed,
        });
        for target in self.vertex_map.values_mut() {
            if *target == removed {
                *target = survivor;
            }
        }
    }

    fn record_thorn(&mut self, survivor: VertId, removed: VertId) {
        self.steps.push(Step {
            kind: StepKind::ThornDelete,
            survivor,
            removed,
        });
        self.vertex_map.retain(|_, target| *target != removed);
    }

    fn absorb(&mut self, later: ReductionTrace) {
        self.steps.extend(later.steps.iter().copied());
        let mut map = BTreeMap::new();
        for (&orig, &mid) in &self.vertex_map {
            if let Some(&fin) = later.vertex_map.get(&mid) {
                map.insert(orig, fin);
            }
        }
        self.vertex_map = map;
    }
}

/// All folds applicable to `g`: pairs of distinct, equal-labeled neighbors of
/// a common vertex, as (survivor, removed) with survivor the smaller id.
fn applicable_folds(g: &BiTree) -> Vec<(VertId, VertId)> {
    let adj = g.adjacency();
    let mut out = Vec::new();
    for (_, ns) in adj {
        let mut sorted = ns.clone();
        sorted.sort_unstable();
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                if g.label(sorted[i]) == g.label(sorted[j]) {
                    out.push((sorted[i], sorted[j]));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn merge(g: &mut BiTree, survivor: VertId, removed: VertId) {
    let rewired: Vec<(VertId, VertId)> = g
        .edges
        .iter()
        .filter(|&&(a, b)| a == removed || b == removed)
        .copied()
        .collect();
    for (a, b) in rewired {
        g.edges.remove(&(a, b));
        let (a, b) = if a == removed { (survivor, b) } else { (a, survivor) };
        if a != b {
            g.edges.insert((a, b));
        }
    }
    g.verts.remove(&removed);
    if g.iota == removed {
        g.iota = survivor;
    }
    if g.tau == removed {
        g.tau = survivor;
    }
}

/// Apply edge-foldings to a fixpoint, deterministically (smallest applicable
/// fold first). The result is independent of the order by confluence.
pub fn fold_edges(g: &BiTree) -> (BiTree, ReductionTrace) {
    let mut g = g.clone();
    let mut trace = ReductionTrace::identity(&g);
    loop {
        let folds = applicable_folds(&g);
        match folds.first() {
            Some(&(s, r)) => {
                merge(&mut g, s, r);
                trace.record_merge(s, r);
            }
            None => return (g, trace),
        }
    }
}

/// Non-essential thorns of `g`: degree-1 non-distinguished vertices whose
/// neighbor carries the same label, as (neighbor, thorn vertex).
fn applicable_thorns(g: &BiTree) -> Vec<(VertId, VertId)> {
    let adj = g.adjacency();
    let mut out = Vec::new();
    for (&v, ns) in &adj {
        if v == g.iota() || v == g.tau() {
            continue;
        }
        if ns.len() == 1 && g.label(ns[0]) == g.label(v) {
            out.push((ns[0], v));
        }
    }
    out
}

fn delete_thorn(g: &mut BiTree, thorn: VertId) {
    g.edges.retain(|&(a, b)| a != thorn && b != thorn);
    g.verts.remove(&thorn);
}

/// Delete all non-essential thorns. Requires an edge-folding reduced input.
pub fn delete_thorns(g: &BiTree) -> Result<(BiTree, ReductionTrace)> {
    if !g.is_folded() {
        return Err(Error::NotFolded);
    }
    let mut g = g.clone();
    let mut trace = ReductionTrace::identity(&g);
    loop {
        let thorns = applicable_thorns(&g);
        match thorns.first() {
            Some(&(s, r)) => {
                delete_thorn(&mut g, r);
                trace.record_thorn(s, r);
            }
            None => return Ok((g, trace)),
        }
    }
}

/// The reduced form: fold to a fixpoint, then delete thorns to a fixpoint.
pub fn reduce(g: &BiTree) -> BiTree {
    reduce_with_trace(g).0
}

pub fn reduce_with_trace(g: &BiTree) -> (BiTree, ReductionTrace) {
    let (folded, mut trace) = fold_edges(g);
    let (reduced, thorn_trace) =
        delete_thorns(&folded).expect("fold_edges output is folded");
    trace.absorb(thorn_trace);
    (reduced, trace)
}

/// Reduce under a randomized rule-application order. Used to exercise
/// confluence: the result must always match `reduce`.
pub fn reduce_with_rng<R: Rng>(g: &BiTree, rng: &mut R) -> BiTree {
    let mut g = g.clone();
    loop {
        let folds = applicable_folds(&g);
        match folds.choose(rng) {
            Some(&(s, r)) => merge(&mut g, s, r),
            None => break,
        }
    }
    loop {
        let thorns = applicable_thorns(&g);
        match thorns.choose(rng) {
            Some(&(_, r)) => delete_thorn(&mut g, r),
            None => break,
        }
    }
    g
}

/// Theta(u): the reduced form of Delta(u), with a single letter mapped to the
/// two-vertex graph x==x so that every output has at least two vertices.
pub fn theta(t: &Term) -> BiTree {
    match t {
        Term::Leaf(_) => reduce(&graphs::delta(&Term::meet(t.clone(), t.clone()))),
        _ => reduce(&graphs::delta(t)),
    }
}

/// Decide u ≈ v in the variety of pseudosemilattices.
pub fn words_equal(u: &Term, v: &Term) -> bool {
    graphs::canonical_key(&theta(u)) == graphs::canonical_key(&theta(v))
}

/// The meet on reduced graphs: reduce the join.
pub fn meet(a: &BiTree, b: &BiTree) -> Result<BiTree> {
    if !a.is_reduced() || !b.is_reduced() {
        return Err(Error::NotReduced);
    }
    Ok(reduce(&graphs::join(a, b)))
}

/// Apply the endomorphism induced by a substitution to a reduced graph, by
/// blowing up each vertex into the rooted tree of its image word and
/// re-wiring edges through the anchors.
pub fn apply_endo(g: &BiTree, s: &Substitution) -> Result<BiTree> {
    if !g.is_reduced() {
        return Err(Error::NotReduced);
    }
    if g.is_singleton() {
        let image = Term::Leaf(g.label(g.iota()).clone()).substitute(s);
        return Ok(theta(&image));
    }
    let mut verts = BTreeMap::new();
    let mut edges = std::collections::BTreeSet::new();
    let mut anchor: BTreeMap<VertId, VertId> = BTreeMap::new();
    let mut next: VertId = 0;
    for v in g.vertex_ids() {
        let side = g.side(v).expect("non-singleton graphs have sides");
        let image = Term::Leaf(g.label(v).clone()).substitute(s);
        let mut d = graphs::delta(&image);
        if d.is_singleton() {
            d.verts.values_mut().next().unwrap().side = Some(side);
        }
        let base = next;
        for (id, vx) in &d.verts {
            verts.insert(base + id, vx.clone());
            next = next.max(base + id + 1);
        }
        for (a, b) in &d.edges {
            edges.insert((base + a, base + b));
        }
        anchor.insert(
            v,
            base + match side {
                Side::L => d.iota,
                Side::R => d.tau,
            },
        );
    }
    for (a, b) in g.edges() {
        edges.insert((anchor[&a], anchor[&b]));
    }
    let blown = BiTree {
        verts,
        edges,
        iota: anchor[&g.iota()],
        tau: anchor[&g.tau()],
    };
    Ok(reduce(&blown))
}

/// The skeleton of Delta(u·s): Delta(u) reshaped only in its labels — each
/// left vertex gets the leftmost letter of its image word, each right vertex
/// the rightmost.
pub fn skeleton(u: &Term, s: &Substitution) -> BiTree {
    let mut d = graphs::delta(u);
    for v in d.verts.values_mut() {
        let image = Term::Leaf(v.label.clone()).substitute(s);
        v.label = match v.side {
            Some(Side::L) => image.leftmost().clone(),
            Some(Side::R) => image.rightmost().clone(),
            None => v.label.clone(),
        };
    }
    d
}
