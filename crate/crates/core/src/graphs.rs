//! Bi-rooted labeled bipartite trees: the graphs Delta(u), the join operation,
//! rooted/unrooted variants, canonical keys and serialization.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::terms::{Invariants, Letter, Term};

pub type VertId = usize;

/// Which side of the bipartition a vertex lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    L,
    R,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub side: Option<Side>,
    pub label: Letter,
}

/// A finite labeled bipartite tree with an ordered adjacent root pair
/// (iota, tau). The single-vertex graph is admitted with side None and
/// iota = tau.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiTree {
    pub(crate) verts: BTreeMap<VertId, Vertex>,
    /// Each edge stored as (left-side id, right-side id).
    pub(crate) edges: BTreeSet<(VertId, VertId)>,
    pub(crate) iota: VertId,
    pub(crate) tau: VertId,
}

/// A BiTree remembering only one root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub(crate) verts: BTreeMap<VertId, Vertex>,
    pub(crate) edges: BTreeSet<(VertId, VertId)>,
    pub(crate) root: VertId,
    pub(crate) left_rooted: bool,
}

/// A BiTree with both root marks forgotten.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeTree {
    pub(crate) verts: BTreeMap<VertId, Vertex>,
    pub(crate) edges: BTreeSet<(VertId, VertId)>,
}

/// Direction taken at a meet node on a root-to-leaf path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dir {
    Left,
    Right,
}

impl BiTree {
    /// Build from explicit parts, validating every structural invariant.
    pub fn from_parts(
        vertices: Vec<(VertId, Option<Side>, Letter)>,
        edges: Vec<(VertId, VertId)>,
        iota: VertId,
        tau: VertId,
    ) -> Result<BiTree> {
        let mut verts = BTreeMap::new();
        for (id, side, label) in vertices {
            if verts.insert(id, Vertex { side, label }).is_some() {
                return Err(Error::InvariantViolation(format!("duplicate vertex id {id}")));
            }
        }
        let g = BiTree {
            verts,
            edges: edges.into_iter().collect(),
            iota,
            tau,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.verts.is_empty() {
            return Err(Error::InvariantViolation("empty vertex set".into()));
        }
        for &(a, b) in &self.edges {
            let va = self.verts.get(&a).ok_or(Error::NoSuchVertex)?;
            let vb = self.verts.get(&b).ok_or(Error::NoSuchVertex)?;
            if va.side != Some(Side::L) || vb.side != Some(Side::R) {
                return Err(Error::InvariantViolation(format!(
                    "edge ({a},{b}) does not join a left vertex to a right vertex"
                )));
            }
        }
        if self.edges.len() + 1 != self.verts.len() {
            return Err(Error::InvariantViolation(format!(
                "{} edges on {} vertices is not a tree",
                self.edges.len(),
                self.verts.len()
            )));
        }
        if !self.is_connected() {
            return Err(Error::InvariantViolation("graph is not connected".into()));
        }
        if !self.verts.contains_key(&self.iota) || !self.verts.contains_key(&self.tau) {
            return Err(Error::NoSuchVertex);
        }
        if self.verts.len() == 1 {
            let (&id, v) = self.verts.iter().next().unwrap();
            if v.side.is_some() {
                return Err(Error::InvariantViolation(
                    "single-vertex graph must have side None".into(),
                ));
            }
            if self.iota != id || self.tau != id {
                return Err(Error::InvariantViolation(
                    "single-vertex graph must have iota = tau".into(),
                ));
            }
        } else {
            if self.verts.values().any(|v| v.side.is_none()) {
                return Err(Error::InvariantViolation(
                    "side None occurs outside the single-vertex graph".into(),
                ));
            }
            if self.verts[&self.iota].side != Some(Side::L) {
                return Err(Error::InvariantViolation("iota is not a left vertex".into()));
            }
            if self.verts[&self.tau].side != Some(Side::R) {
                return Err(Error::InvariantViolation("tau is not a right vertex".into()));
            }
            if !self.edges.contains(&(self.iota, self.tau)) {
                return Err(Error::InvariantViolation(
                    "roots are not connected by an edge".into(),
                ));
            }
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let start = match self.verts.keys().next() {
            Some(&id) => id,
            None => return false,
        };
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in adj.get(&v).map(|n| n.as_slice()).unwrap_or(&[]) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.verts.len()
    }

    pub(crate) fn adjacency(&self) -> BTreeMap<VertId, Vec<VertId>> {
        let mut adj: BTreeMap<VertId, Vec<VertId>> =
            self.verts.keys().map(|&id| (id, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
        adj
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertId> + '_ {
        self.verts.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn label(&self, id: VertId) -> &Letter {
        &self.verts[&id].label
    }

    pub fn side(&self, id: VertId) -> Option<Side> {
        self.verts[&id].side
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertId, VertId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn iota(&self) -> VertId {
        self.iota
    }

    pub fn tau(&self) -> VertId {
        self.tau
    }

    pub fn degree(&self, id: VertId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == id || b == id).count()
    }

    pub fn neighbors(&self, id: VertId) -> Vec<VertId> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_singleton(&self) -> bool {
        self.verts.len() == 1
    }

    /// No edge-folding applies: no vertex has two distinct neighbors with
    /// equal labels.
    pub fn is_folded(&self) -> bool {
        let adj = self.adjacency();
        for (_, ns) in adj {
            let mut labels = BTreeSet::new();
            for n in ns {
                if !labels.insert(self.verts[&n].label.clone()) {
                    return false;
                }
            }
        }
        true
    }

    /// Neither rewriting rule applies.
    pub fn is_reduced(&self) -> bool {
        if !self.is_folded() {
            return false;
        }
        for (&id, v) in &self.verts {
            if id == self.iota || id == self.tau {
                continue;
            }
            let ns = self.neighbors(id);
            if ns.len() == 1 && self.verts[&ns[0]].label == v.label {
                return false;
            }
        }
        true
    }

    /// Graph-level invariants: l/r from the roots, c2 from edges plus the
    /// diagonal, cl/cr from the bipartition sides.
    pub fn invariants(&self) -> Invariants {
        let mut c = BTreeSet::new();
        let mut cl = BTreeSet::new();
        let mut cr = BTreeSet::new();
        let mut c2 = BTreeSet::new();
        for v in self.verts.values() {
            c.insert(v.label.clone());
            c2.insert((v.label.clone(), v.label.clone()));
            match v.side {
                Some(Side::L) => {
                    cl.insert(v.label.clone());
                }
                Some(Side::R) => {
                    cr.insert(v.label.clone());
                }
                None => {}
            }
        }
        for &(a, b) in &self.edges {
            c2.insert((self.verts[&a].label.clone(), self.verts[&b].label.clone()));
        }
        Invariants {
            l: self.verts[&self.iota].label.clone(),
            r: self.verts[&self.tau].label.clone(),
            c,
            c2,
            cl,
            cr,
        }
    }

    /// Re-root at an existing edge.
    pub fn with_roots(&self, iota: VertId, tau: VertId) -> Result<BiTree> {
        if !self.edges.contains(&(iota, tau)) {
            return Err(Error::NoSuchEdge);
        }
        let mut g = self.clone();
        g.iota = iota;
        g.tau = tau;
        Ok(g)
    }

    /// Apply a letter bijection/mapping to every label.
    pub fn relabel(&self, map: &BTreeMap<Letter, Letter>) -> BiTree {
        let mut g = self.clone();
        for v in g.verts.values_mut() {
            if let Some(new) = map.get(&v.label) {
                v.label = new.clone();
            }
        }
        g
    }

    /// Renumber vertices to 0..n-1 in ascending id order.
    pub fn compacted(&self) -> BiTree {
        let map: BTreeMap<VertId, VertId> = self
            .verts
            .keys()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        BiTree {
            verts: self.verts.iter().map(|(id, v)| (map[id], v.clone())).collect(),
            edges: self.edges.iter().map(|&(a, b)| (map[&a], map[&b])).collect(),
            iota: map[&self.iota],
            tau: map[&self.tau],
        }
    }
}

/// Delta(u): one vertex per leaf of the term tree, one edge per meet node.
pub fn delta(t: &Term) -> BiTree {
    delta_with_leaf_map(t).0
}

/// Delta(u) together with the leaf correspondence: each root-to-leaf path of
/// the term is mapped to its vertex id.
pub fn delta_with_leaf_map(t: &Term) -> (BiTree, BTreeMap<Vec<Dir>, VertId>) {
    let mut verts = BTreeMap::new();
    let mut edges = BTreeSet::new();
    let mut leaf_map = BTreeMap::new();
    let mut next = 0;
    let (iota, tau) = build_delta(
        t,
        &mut Vec::new(),
        &mut verts,
        &mut edges,
        &mut leaf_map,
        &mut next,
    );
    (BiTree { verts, edges, iota, tau }, leaf_map)
}

fn build_delta(
    t: &Term,
    path: &mut Vec<Dir>,
    verts: &mut BTreeMap<VertId, Vertex>,
    edges: &mut BTreeSet<(VertId, VertId)>,
    leaf_map: &mut BTreeMap<Vec<Dir>, VertId>,
    next: &mut VertId,
) -> (VertId, VertId) {
    match t {
        Term::Leaf(l) => {
            let id = *next;
            *next += 1;
            let side = path.last().map(|d| match d {
                Dir::Left => Side::L,
                Dir::Right => Side::R,
            });
            verts.insert(id, Vertex { side, label: l.clone() });
            leaf_map.insert(path.clone(), id);
            (id, id)
        }
        Term::Meet(a, b) => {
            path.push(Dir::Left);
            let (la, _ra) = build_delta(a, path, verts, edges, leaf_map, next);
            path.pop();
            path.push(Dir::Right);
            let (_lb, rb) = build_delta(b, path, verts, edges, leaf_map, next);
            path.pop();
            edges.insert((la, rb));
            (la, rb)
        }
    }
}

/// The join a ⊓ b: disjoint union plus the edge (iota_a, tau_b), which
/// becomes the new root pair. Singleton operands acquire the side their
/// position dictates.
pub fn join(a: &BiTree, b: &BiTree) -> BiTree {
    let mut out = a.clone();
    if out.is_singleton() {
        out.verts.values_mut().next().unwrap().side = Some(Side::L);
    }
    let shift = out.verts.keys().last().unwrap() + 1;
    let mut b = b.clone();
    if b.is_singleton() {
        b.verts.values_mut().next().unwrap().side = Some(Side::R);
    }
    for (id, v) in b.verts {
        out.verts.insert(id + shift, v);
    }
    for (x, y) in b.edges {
        out.edges.insert((x + shift, y + shift));
    }
    let tau = b.tau + shift;
    out.edges.insert((out.iota, tau));
    out.tau = tau;
    out
}

/// Forget the right root.
pub fn left_rooted(g: &BiTree) -> RootedTree {
    let mut verts = g.verts.clone();
    if g.is_singleton() {
        verts.values_mut().next().unwrap().side = Some(Side::L);
    }
    RootedTree {
        verts,
        edges: g.edges.clone(),
        root: g.iota,
        left_rooted: true,
    }
}

/// Forget the left root.
pub fn right_rooted(g: &BiTree) -> RootedTree {
    let mut verts = g.verts.clone();
    if g.is_singleton() {
        verts.values_mut().next().unwrap().side = Some(Side::R);
    }
    RootedTree {
        verts,
        edges: g.edges.clone(),
        root: g.tau,
        left_rooted: false,
    }
}

/// The reduct of alpha obtained by dropping tau together with the root edge
/// when they form a thorn, otherwise by just forgetting tau. Left-rooted.
pub fn l_reduct(g: &BiTree) -> Result<RootedTree> {
    if !g.is_reduced() {
        return Err(Error::NotReduced);
    }
    if g.is_singleton() {
        return Ok(left_rooted(g));
    }
    let mut out = left_rooted(g);
    if g.degree(g.tau) == 1 && g.verts[&g.iota].label == g.verts[&g.tau].label {
        out.verts.remove(&g.tau);
        out.edges.remove(&(g.iota, g.tau));
    }
    Ok(out)
}

/// Dual of `l_reduct`: may drop iota, right-rooted at tau.
pub fn r_reduct(g: &BiTree) -> Result<RootedTree> {
    if !g.is_reduced() {
        return Err(Error::NotReduced);
    }
    if g.is_singleton() {
        return Ok(right_rooted(g));
    }
    let mut out = right_rooted(g);
    if g.degree(g.iota) == 1 && g.verts[&g.iota].label == g.verts[&g.tau].label {
        out.verts.remove(&g.iota);
        out.edges.remove(&(g.iota, g.tau));
    }
    Ok(out)
}

/// Un-mark both roots and delete the essential thorns they supported.
pub fn hat(g: &BiTree) -> Result<FreeTree> {
    if !g.is_reduced() {
        return Err(Error::NotReduced);
    }
    let mut verts = g.verts.clone();
    let mut edges = g.edges.clone();
    for root in [g.iota, g.tau] {
        if verts.len() == 1 || !verts.contains_key(&root) {
            continue;
        }
        let ns: Vec<VertId> = edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == root {
                    Some(b)
                } else if b == root {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        if ns.len() == 1 && verts[&ns[0]].label == verts[&root].label {
            verts.remove(&root);
            edges.retain(|&(a, b)| a != root && b != root);
        }
    }
    if verts.len() == 1 {
        verts.values_mut().next().unwrap().side = None;
    }
    Ok(FreeTree { verts, edges })
}

impl RootedTree {
    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn root(&self) -> VertId {
        self.root
    }

    pub fn is_left_rooted(&self) -> bool {
        self.left_rooted
    }

    pub fn label(&self, id: VertId) -> &Letter {
        &self.verts[&id].label
    }

    pub fn side(&self, id: VertId) -> Option<Side> {
        self.verts[&id].side
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertId, VertId)> + '_ {
        self.edges.iter().copied()
    }

    pub(crate) fn adjacency(&self) -> BTreeMap<VertId, Vec<VertId>> {
        let mut adj: BTreeMap<VertId, Vec<VertId>> =
            self.verts.keys().map(|&id| (id, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
        adj
    }
}

impl FreeTree {
    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    fn adjacency(&self) -> BTreeMap<VertId, Vec<VertId>> {
        let mut adj: BTreeMap<VertId, Vec<VertId>> =
            self.verts.keys().map(|&id| (id, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
        adj
    }

    /// The 1 or 2 centers of the tree, by iterated leaf stripping.
    fn centers(&self) -> Vec<VertId> {
        let adj = self.adjacency();
        let mut alive: BTreeSet<VertId> = self.verts.keys().copied().collect();
        while alive.len() > 2 {
            let leaves: Vec<VertId> = alive
                .iter()
                .copied()
                .filter(|v| adj[v].iter().filter(|w| alive.contains(w)).count() <= 1)
                .collect();
            for l in leaves {
                alive.remove(&l);
            }
        }
        alive.into_iter().collect()
    }
}

fn side_char(s: Option<Side>) -> char {
    match s {
        Some(Side::L) => 'L',
        Some(Side::R) => 'R',
        None => 'N',
    }
}

fn encode_subtree(
    verts: &BTreeMap<VertId, Vertex>,
    adj: &BTreeMap<VertId, Vec<VertId>>,
    v: VertId,
    parent: Option<VertId>,
    marks: &BTreeMap<VertId, &str>,
) -> String {
    let mut children: Vec<String> = adj[&v]
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| encode_subtree(verts, adj, w, Some(v), marks))
        .collect();
    children.sort();
    let info = &verts[&v];
    let mark = marks.get(&v).copied().unwrap_or("");
    format!(
        "({}:{}{}{})",
        side_char(info.side),
        info.label,
        mark,
        children.concat()
    )
}

/// Canonical key for a bi-rooted tree: equal keys iff the graphs are
/// isomorphic by a side- and label-preserving map matching both roots.
pub fn canonical_key(g: &BiTree) -> String {
    let adj = g.adjacency();
    let mut marks = BTreeMap::new();
    marks.insert(g.iota, "!i");
    if g.tau != g.iota {
        marks.insert(g.tau, "!t");
    }
    format!("B|{}", encode_subtree(&g.verts, &adj, g.iota, None, &marks))
}

/// Canonical key for a single-rooted tree.
pub fn canonical_key_rooted(g: &RootedTree) -> String {
    let adj = g.adjacency();
    let marks = BTreeMap::from([(g.root, "!r")]);
    let prefix = if g.left_rooted { "RL|" } else { "RR|" };
    format!(
        "{}{}",
        prefix,
        encode_subtree(&g.verts, &adj, g.root, None, &marks)
    )
}

/// Canonical key for an unrooted tree: minimum over the 1-2 tree centers.
pub fn canonical_key_free(g: &FreeTree) -> String {
    let adj = g.adjacency();
    let marks = BTreeMap::new();
    let key = g
        .centers()
        .into_iter()
        .map(|c| encode_subtree(&g.verts, &adj, c, None, &marks))
        .min()
        .expect("non-empty tree");
    format!("F|{key}")
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    id: usize,
    side: Option<String>,
    label: String,
}

#[derive(Serialize, Deserialize)]
struct BiTreeDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<(usize, usize)>,
    iota: usize,
    tau: usize,
}

pub fn to_json(g: &BiTree) -> String {
    let doc = BiTreeDoc {
        vertices: g
            .verts
            .iter()
            .map(|(&id, v)| VertexDoc {
                id,
                side: v.side.map(|s| {
                    match s {
                        Side::L => "L",
                        Side::R => "R",
                    }
                    .to_string()
                }),
                label: v.label.to_string(),
            })
            .collect(),
        edges: g.edges.iter().copied().collect(),
        iota: g.iota,
        tau: g.tau,
    };
    serde_json::to_string(&doc).expect("serialization cannot fail")
}

pub fn from_json(text: &str) -> Result<BiTree> {
    let doc: BiTreeDoc =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let mut vertices = Vec::new();
    for v in doc.vertices {
        let side = match v.side.as_deref() {
            Some("L") => Some(Side::L),
            Some("R") => Some(Side::R),
            None => None,
            Some(other) => {
                return Err(Error::Schema(format!("bad side value {other:?}")));
            }
        };
        vertices.push((v.id, side, Letter::new(v.label.clone()).map_err(|_| {
            Error::Schema(format!("bad label {:?}", v.label))
        })?));
    }
    BiTree::from_parts(vertices, doc.edges, doc.iota, doc.tau)
}

/// Graphviz rendering; the root edge is drawn with a double-weight line.
pub fn to_dot(g: &BiTree) -> String {
    let mut out = String::from("graph bitree {\n");
    for (&id, v) in &g.verts {
        let shape = match v.side {
            Some(Side::L) => "circle",
            Some(Side::R) => "square",
            None => "plaintext",
        };
        let _ = writeln!(out, "  v{id} [label=\"{}\", shape={shape}];", v.label);
    }
    for &(a, b) in &g.edges {
        if a == g.iota && b == g.tau {
            let _ = writeln!(out, "  v{a} -- v{b} [penwidth=2, root=\"true\"];");
        } else {
            let _ = writeln!(out, "  v{a} -- v{b};");
        }
    }
    out.push_str("}\n");
    out
}
