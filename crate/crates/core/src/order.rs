//! The natural partial order on reduced graphs via anchored subtree
//! embedding, the R/L/D relations, cover tests, elementary pairs and root
//! shifting.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graphs::{
    self, canonical_key_free, canonical_key_rooted, BiTree, RootedTree, VertId,
};

/// A pair of reduced graphs, the shape of candidate identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphPair {
    pub alpha: BiTree,
    pub beta: BiTree,
}

impl GraphPair {
    pub fn new(alpha: BiTree, beta: BiTree) -> Result<GraphPair> {
        if !alpha.is_reduced() || !beta.is_reduced() {
            return Err(Error::NotReduced);
        }
        Ok(GraphPair { alpha, beta })
    }
}

/// Grow the unique side/label-preserving map extending the seed pairs, if
/// any. In a reduced graph the neighbors of a vertex carry pairwise distinct
/// labels, so every extension step is forced.
fn find_embedding(
    a_verts: &BTreeMap<VertId, graphs::Vertex>,
    a_adj: &BTreeMap<VertId, Vec<VertId>>,
    b_verts: &BTreeMap<VertId, graphs::Vertex>,
    b_adj: &BTreeMap<VertId, Vec<VertId>>,
    seeds: &[(VertId, VertId)],
) -> Option<BTreeMap<VertId, VertId>> {
    let compatible = |va: &graphs::Vertex, vb: &graphs::Vertex| {
        va.label == vb.label && (va.side.is_none() || vb.side.is_none() || va.side == vb.side)
    };
    let mut map = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &(x, y) in seeds {
        if !compatible(&a_verts[&x], &b_verts[&y]) {
            return None;
        }
        if let Some(&prev) = map.get(&x) {
            if prev != y {
                return None;
            }
        } else {
            map.insert(x, y);
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        let y = map[&x];
        for &xn in &a_adj[&x] {
            // The image must be a neighbor of y with the same label.
            let candidates: Vec<VertId> = b_adj[&y]
                .iter()
                .copied()
                .filter(|yn| compatible(&a_verts[&xn], &b_verts[yn]))
                .collect();
            match (map.get(&xn), candidates.as_slice()) {
                (Some(&mapped), _) => {
                    if !candidates.contains(&mapped) {
                        return None;
                    }
                }
                (None, [yn]) => {
                    map.insert(xn, *yn);
                    queue.push_back(xn);
                }
                (None, _) => return None,
            }
        }
    }
    // Injectivity: forced maps between trees are injective, but assert it.
    let image: BTreeSet<VertId> = map.values().copied().collect();
    debug_assert_eq!(image.len(), map.len());
    Some(map)
}

/// The embedding of `a` into `b` matching both root pairs, if it exists.
pub fn embed(a: &BiTree, b: &BiTree) -> Option<BTreeMap<VertId, VertId>> {
    find_embedding(
        &a.verts,
        &a.adjacency(),
        &b.verts,
        &b.adjacency(),
        &[(a.iota(), b.iota()), (a.tau(), b.tau())],
    )
}

fn embed_rooted(a: &RootedTree, b: &RootedTree) -> Option<BTreeMap<VertId, VertId>> {
    find_embedding(
        &a.verts,
        &a.adjacency(),
        &b.verts,
        &b.adjacency(),
        &[(a.root(), b.root())],
    )
}

/// b ≤ a: a is a bi-rooted subtree of b.
pub fn leq(b: &BiTree, a: &BiTree) -> Result<bool> {
    if !a.is_reduced() || !b.is_reduced() {
        return Err(Error::NotReduced);
    }
    Ok(embed(a, b).is_some())
}

/// b ≤_R a: the left reduct of a is a left-rooted subtree of that of b.
pub fn leq_r(b: &BiTree, a: &BiTree) -> Result<bool> {
    let ra = graphs::l_reduct(a)?;
    let rb = graphs::l_reduct(b)?;
    Ok(embed_rooted(&ra, &rb).is_some())
}

/// b ≤_L a: dual of `leq_r` through the right reducts.
pub fn leq_l(b: &BiTree, a: &BiTree) -> Result<bool> {
    let ra = graphs::r_reduct(a)?;
    let rb = graphs::r_reduct(b)?;
    Ok(embed_rooted(&ra, &rb).is_some())
}

/// a R b: equal left reducts.
pub fn rel_r(a: &BiTree, b: &BiTree) -> Result<bool> {
    Ok(canonical_key_rooted(&graphs::l_reduct(a)?)
        == canonical_key_rooted(&graphs::l_reduct(b)?))
}

/// a L b: equal right reducts.
pub fn rel_l(a: &BiTree, b: &BiTree) -> Result<bool> {
    Ok(canonical_key_rooted(&graphs::r_reduct(a)?)
        == canonical_key_rooted(&graphs::r_reduct(b)?))
}

/// a D b: equal hats (same tree up to the root decoration).
pub fn rel_d(a: &BiTree, b: &BiTree) -> Result<bool> {
    Ok(canonical_key_free(&graphs::hat(a)?) == canonical_key_free(&graphs::hat(b)?))
}

/// Does a cover b in the natural order (a strictly above b with nothing
/// strictly between)?
pub fn covers(a: &BiTree, b: &BiTree) -> Result<bool> {
    if !a.is_reduced() || !b.is_reduced() {
        return Err(Error::NotReduced);
    }
    let phi = match embed(a, b) {
        Some(phi) => phi,
        None => return Err(Error::NotComparable),
    };
    let diff = b.vertex_count() as i64 - a.vertex_count() as i64;
    if diff == 0 {
        return Ok(false);
    }
    if diff == 1 {
        // Any strictly intermediate subtree would need an intermediate
        // vertex count.
        return Ok(true);
    }
    // Slow path: look for a proper intermediate bi-rooted subtree of b
    // containing the image of a.
    let image: BTreeSet<VertId> = phi.values().copied().collect();
    let extra: Vec<VertId> = b.vertex_ids().filter(|v| !image.contains(v)).collect();
    let n = extra.len();
    for mask in 1u64..(1 << n) - 1 {
        let mut keep = image.clone();
        for (bit, &v) in extra.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                keep.insert(v);
            }
        }
        if let Some(g) = induced_subtree(b, &keep) {
            if g.is_reduced() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The subgraph of b induced on `keep`, rooted like b, if it is connected.
fn induced_subtree(b: &BiTree, keep: &BTreeSet<VertId>) -> Option<BiTree> {
    let verts: BTreeMap<VertId, graphs::Vertex> = b
        .verts
        .iter()
        .filter(|(id, _)| keep.contains(id))
        .map(|(&id, v)| (id, v.clone()))
        .collect();
    let edges: BTreeSet<(VertId, VertId)> = b
        .edges
        .iter()
        .copied()
        .filter(|(x, y)| keep.contains(x) && keep.contains(y))
        .collect();
    if edges.len() + 1 != verts.len() {
        return None; // disconnected (a forest)
    }
    let g = BiTree {
        verts,
        edges,
        iota: b.iota(),
        tau: b.tau(),
    };
    g.validate().ok()?;
    Some(g)
}

/// The embedding of alpha into beta together with the elementary-pair
/// bookkeeping: checks conditions (1)-(3) of the definition.
fn elementary_core(p: &GraphPair) -> Option<(BTreeMap<VertId, VertId>, VertId)> {
    let (a, b) = (&p.alpha, &p.beta);
    let ia = a.invariants();
    let ib = b.invariants();
    if ia.sps_triple() != ib.sps_triple() {
        return None;
    }
    if !ib.cl.is_disjoint(&ib.cr) {
        return None;
    }
    let phi = embed(a, b)?;
    if b.vertex_count() != a.vertex_count() + 1 {
        return None;
    }
    let image: BTreeSet<VertId> = phi.values().copied().collect();
    let extra = b.vertex_ids().find(|v| !image.contains(v))?;
    Some((phi, extra))
}

/// Is (alpha, beta) an elementary pair?
pub fn is_elementary(p: &GraphPair) -> Result<bool> {
    if !p.alpha.is_reduced() || !p.beta.is_reduced() {
        return Err(Error::NotReduced);
    }
    let (_, extra) = match elementary_core(p) {
        Some(core) => core,
        None => return Ok(false),
    };
    let b = &p.beta;
    let ns = b.neighbors(extra);
    Ok(ns.len() == 1 && (ns[0] == b.iota() || ns[0] == b.tau()))
}

/// Re-root both graphs of the pair at an edge of alpha (located inside beta
/// through the embedding). Requires conditions (1)-(3) of elementarity; the
/// last condition is not needed for the shift to make sense.
pub fn root_shift(p: &GraphPair, edge: (VertId, VertId)) -> Result<GraphPair> {
    if !p.alpha.is_reduced() || !p.beta.is_reduced() {
        return Err(Error::NotReduced);
    }
    let (phi, _) = elementary_core(p).ok_or(Error::NotElementary)?;
    let (l, r) = edge;
    let alpha = p.alpha.with_roots(l, r)?;
    let bl = *phi.get(&l).ok_or(Error::NoSuchVertex)?;
    let br = *phi.get(&r).ok_or(Error::NoSuchVertex)?;
    let beta = p.beta.with_roots(bl, br)?;
    GraphPair::new(alpha, beta)
}
