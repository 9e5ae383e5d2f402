//! The canonical identity families with cyclic 2-content D_n: the zig-zag
//! graphs alpha/beta_{n,k,i} and their duals, the corresponding words,
//! classification of elementary pairs into the family, geodesic utilities and
//! the meet identities.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graphs::{self, BiTree, Side, VertId};
use crate::order::{embed, is_elementary, GraphPair};
use crate::terms::{Letter, Substitution, Term};

/// Index (n, k, i, dual) of a family graph; the graph has m = 2nk + i path
/// vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FamilyIndex {
    pub n: usize,
    pub k: usize,
    pub i: usize,
    pub dual: bool,
}

impl FamilyIndex {
    pub fn new(n: usize, k: usize, i: usize, dual: bool) -> Result<FamilyIndex> {
        if n < 2 {
            return Err(Error::BadParam(format!("n must be at least 2, got {n}")));
        }
        if k < 1 {
            return Err(Error::BadParam("k must be at least 1".into()));
        }
        if i < 1 || i > 2 * n {
            return Err(Error::BadParam(format!("i must lie in 1..={}, got {i}", 2 * n)));
        }
        Ok(FamilyIndex { n, k, i, dual })
    }

    /// Number of path vertices, m = 2nk + i.
    pub fn m(&self) -> usize {
        2 * self.n * self.k + self.i
    }

    /// The next index in the chain: (n, k, i+1), rolling over to (n, k+1, 1).
    pub fn successor(&self) -> FamilyIndex {
        if self.i == 2 * self.n {
            FamilyIndex { k: self.k + 1, i: 1, ..*self }
        } else {
            FamilyIndex { i: self.i + 1, ..*self }
        }
    }
}

/// The letter x_j.
pub fn xletter(j: usize) -> Letter {
    Letter::new(format!("x{j}")).expect("generated letter is well-formed")
}

/// The 2-content D_n (or its transpose D_n*), diagonal included.
pub fn d_content(n: usize, dual: bool) -> Result<BTreeSet<(Letter, Letter)>> {
    if n < 2 {
        return Err(Error::BadParam(format!("n must be at least 2, got {n}")));
    }
    let mut set = BTreeSet::new();
    for i in 1..n {
        set.insert((xletter(2 * i - 1), xletter(2 * i)));
        set.insert((xletter(2 * i + 1), xletter(2 * i)));
    }
    set.insert((xletter(1), xletter(2 * n)));
    set.insert((xletter(2 * n - 1), xletter(2 * n)));
    if dual {
        set = set.into_iter().map(|(a, b)| (b, a)).collect();
    }
    for j in 1..=2 * n {
        set.insert((xletter(j), xletter(j)));
    }
    Ok(set)
}

fn path_label(idx: &FamilyIndex, p: usize) -> Letter {
    xletter((p - 1) % (2 * idx.n) + 1)
}

fn path_side(idx: &FamilyIndex, p: usize) -> Side {
    let odd = p % 2 == 1;
    match (odd, idx.dual) {
        (true, false) | (false, true) => Side::L,
        _ => Side::R,
    }
}

/// The zig-zag path graph alpha_{n,k,i} (or its dual): vertices 1..=m with
/// period-2n labels, rooted at the initial edge.
pub fn alpha(idx: &FamilyIndex) -> BiTree {
    let m = idx.m();
    let vertices: Vec<(VertId, Option<Side>, Letter)> = (1..=m)
        .map(|p| (p, Some(path_side(idx, p)), path_label(idx, p)))
        .collect();
    let edges: Vec<(VertId, VertId)> = (1..m)
        .map(|p| {
            // The odd-position vertex is left in the plain family, right in
            // the dual; the stored pair is (left, right).
            if (p % 2 == 1) != idx.dual {
                (p, p + 1)
            } else {
                (p + 1, p)
            }
        })
        .collect();
    let (iota, tau) = if idx.dual { (2, 1) } else { (1, 2) };
    BiTree::from_parts(vertices, edges, iota, tau)
        .expect("family construction is structurally valid")
}

/// beta_{n,k,i}: alpha plus one extra x_{2n}-labeled vertex attached to the
/// first path vertex.
pub fn beta(idx: &FamilyIndex) -> BiTree {
    let m = idx.m();
    let mut vertices: Vec<(VertId, Option<Side>, Letter)> = (1..=m)
        .map(|p| (p, Some(path_side(idx, p)), path_label(idx, p)))
        .collect();
    let mut edges: Vec<(VertId, VertId)> = (1..m)
        .map(|p| {
            if (p % 2 == 1) != idx.dual {
                (p, p + 1)
            } else {
                (p + 1, p)
            }
        })
        .collect();
    let extra = m + 1;
    if idx.dual {
        vertices.push((extra, Some(Side::L), xletter(2 * idx.n)));
        edges.push((extra, 1));
    } else {
        vertices.push((extra, Some(Side::R), xletter(2 * idx.n)));
        edges.push((1, extra));
    }
    let (iota, tau) = if idx.dual { (2, 1) } else { (1, 2) };
    BiTree::from_parts(vertices, edges, iota, tau)
        .expect("family construction is structurally valid")
}

/// The unique word whose Delta is the given degree-at-most-2 graph,
/// recovered by recursive root-edge splitting.
pub fn word_of_path(g: &BiTree) -> Result<Term> {
    if g.vertex_ids().any(|v| g.degree(v) > 2) {
        return Err(Error::DegreeTooHigh);
    }
    let adj = g.adjacency();
    let comp: BTreeSet<VertId> = g.vertex_ids().collect();
    split_word(g, &adj, &comp, g.iota(), g.tau())
}

fn component_of(
    adj: &BTreeMap<VertId, Vec<VertId>>,
    within: &BTreeSet<VertId>,
    start: VertId,
    cut: (VertId, VertId),
) -> BTreeSet<VertId> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[&v] {
            let crosses_cut = (v, w) == cut || (w, v) == cut;
            if !crosses_cut && within.contains(&w) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

fn split_word(
    g: &BiTree,
    adj: &BTreeMap<VertId, Vec<VertId>>,
    comp: &BTreeSet<VertId>,
    iota: VertId,
    tau: VertId,
) -> Result<Term> {
    if iota == tau {
        return Ok(Term::Leaf(g.label(iota).clone()));
    }
    let cut = (iota, tau);
    let left_comp = component_of(adj, comp, iota, cut);
    let right_comp = component_of(adj, comp, tau, cut);
    if left_comp.len() + right_comp.len() != comp.len() {
        return Err(Error::NotRealizable(
            "root edge does not split the graph".into(),
        ));
    }
    let left = if left_comp.len() == 1 {
        Term::Leaf(g.label(iota).clone())
    } else {
        let next: Vec<VertId> = adj[&iota]
            .iter()
            .copied()
            .filter(|&w| w != tau && left_comp.contains(&w))
            .collect();
        match next.as_slice() {
            [n] => split_word(g, adj, &left_comp, iota, *n)?,
            _ => return Err(Error::NotRealizable("branching at the left root".into())),
        }
    };
    let right = if right_comp.len() == 1 {
        Term::Leaf(g.label(tau).clone())
    } else {
        let next: Vec<VertId> = adj[&tau]
            .iter()
            .copied()
            .filter(|&w| w != iota && right_comp.contains(&w))
            .collect();
        match next.as_slice() {
            [n] => split_word(g, adj, &right_comp, *n, tau)?,
            _ => return Err(Error::NotRealizable("branching at the right root".into())),
        }
    };
    Ok(Term::meet(left, right))
}

/// u_{n,k,i} (or u*): the word of the alpha graph.
pub fn word_u(idx: &FamilyIndex) -> Term {
    word_of_path(&alpha(idx)).expect("alpha is a path")
}

/// v_{n,k,i} (or v*): the word of the beta graph.
pub fn word_v(idx: &FamilyIndex) -> Term {
    word_of_path(&beta(idx)).expect("beta has degrees at most 2")
}

/// Number of vertices on the unique path between two vertices of a tree.
pub fn geodesic_count(g: &BiTree, a: VertId, b: VertId) -> Result<usize> {
    let mut ids = g.vertex_ids();
    if !ids.any(|v| v == a) {
        return Err(Error::NoSuchVertex);
    }
    let mut ids = g.vertex_ids();
    if !ids.any(|v| v == b) {
        return Err(Error::NoSuchVertex);
    }
    let adj = g.adjacency();
    let mut dist = BTreeMap::from([(a, 1usize)]);
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            break;
        }
        let d = dist[&v];
        for &w in &adj[&v] {
            dist.entry(w).or_insert_with(|| {
                queue.push_back(w);
                d + 1
            });
        }
    }
    Ok(dist[&b])
}

/// Recognize an elementary pair as a (possibly relabeled) family pair.
/// Returns the index and the letter bijection carrying the pair's letters to
/// the canonical x_1..x_{2n}.
pub fn classify_elementary(p: &GraphPair) -> Result<(FamilyIndex, BTreeMap<Letter, Letter>)> {
    if !is_elementary(p)? {
        return Err(Error::NotElementary);
    }
    let (a, b) = (&p.alpha, &p.beta);
    if a.vertex_ids().any(|v| a.degree(v) > 2) {
        return Err(Error::UnsupportedShape("alpha has a degree-3 vertex".into()));
    }
    let phi = embed(a, b).expect("elementary pairs embed");
    let image: BTreeSet<VertId> = phi.values().copied().collect();
    let extra = b
        .vertex_ids()
        .find(|v| !image.contains(v))
        .expect("beta has one extra vertex");
    let anchor_b = b.neighbors(extra)[0];
    let anchor_a = *phi
        .iter()
        .find(|(_, &y)| y == anchor_b)
        .map(|(x, _)| x)
        .expect("the anchor is distinguished, hence in the image");

    // Walk the path of alpha starting from the anchor, which must be an
    // endpoint carrying the first root pair.
    if a.degree(anchor_a) != 1 {
        return Err(Error::UnsupportedShape(
            "extra vertex attaches to an interior path vertex".into(),
        ));
    }
    let mut path = vec![anchor_a];
    let mut prev = None;
    loop {
        let cur = *path.last().unwrap();
        let next: Vec<VertId> = a
            .neighbors(cur)
            .into_iter()
            .filter(|&w| Some(w) != prev)
            .collect();
        match next.as_slice() {
            [] => break,
            [w] => {
                prev = Some(cur);
                path.push(*w);
            }
            _ => unreachable!("degrees are at most 2"),
        }
    }
    let m = path.len();
    if BTreeSet::from([path[0], path[1]]) != BTreeSet::from([a.iota(), a.tau()]) {
        return Err(Error::UnsupportedShape(
            "roots are not at the anchored end of the path".into(),
        ));
    }
    let dual = b.side(extra) == Some(Side::L);
    let expected_roots = if dual { (path[1], path[0]) } else { (path[0], path[1]) };
    if (a.iota(), a.tau()) != expected_roots {
        return Err(Error::UnsupportedShape("root orientation is inconsistent".into()));
    }

    // Labels must be periodic over 2n pairwise distinct letters.
    let labels: Vec<Letter> = path.iter().map(|&v| a.label(v).clone()).collect();
    let distinct: BTreeSet<&Letter> = labels.iter().collect();
    let period = distinct.len();
    if period < 4 || period % 2 != 0 {
        return Err(Error::UnsupportedShape(format!(
            "label alphabet of size {period} is not of the form 2n with n >= 2"
        )));
    }
    let n = period / 2;
    if m < period + 1 {
        return Err(Error::UnsupportedShape("path too short for k >= 1".into()));
    }
    if labels[..period].iter().collect::<BTreeSet<_>>().len() != period {
        return Err(Error::UnsupportedShape("first period has repeated letters".into()));
    }
    for (p, label) in labels.iter().enumerate() {
        if *label != labels[p % period] {
            return Err(Error::UnsupportedShape("labels are not periodic".into()));
        }
    }
    let i = (m - 1) % period + 1;
    let k = (m - i) / period;
    let idx = FamilyIndex::new(n, k, i, dual)?;

    let relabel: BTreeMap<Letter, Letter> = labels[..period]
        .iter()
        .enumerate()
        .map(|(j, l)| (l.clone(), xletter(j + 1)))
        .collect();

    // The relabeled pair must be exactly the canonical one.
    let ok = graphs::canonical_key(&a.relabel(&relabel))
        == graphs::canonical_key(&alpha(&idx))
        && graphs::canonical_key(&b.relabel(&relabel)) == graphs::canonical_key(&beta(&idx));
    if !ok {
        return Err(Error::UnsupportedShape(
            "relabeled pair does not match the canonical family pair".into(),
        ));
    }
    Ok((idx, relabel))
}

/// The single identity defining the intersection variety: (u_{n,k,i},
/// v_{n,k,i-1}) for odd i > 1, with the k-rollover form at i = 1.
pub fn meet_identity(n: usize, k: usize, i: usize) -> Result<(Term, Term)> {
    if i % 2 == 0 {
        return Err(Error::BadParam(format!("i must be odd, got {i}")));
    }
    if i > 1 {
        let u = FamilyIndex::new(n, k, i, false)?;
        let v = FamilyIndex::new(n, k, i - 1, false)?;
        Ok((word_u(&u), word_v(&v)))
    } else if k >= 2 {
        let u = FamilyIndex::new(n, k, 1, false)?;
        let v = FamilyIndex::new(n, k - 1, 2 * n, false)?;
        Ok((word_u(&u), word_v(&v)))
    } else {
        Err(Error::OutOfRange(
            "i = 1 with k = 1 would need the out-of-family word v_{n,0,2n}".into(),
        ))
    }
}

/// The stepping endomorphism: moves only x_j, sending it to the meet of x_j
/// with its cyclic successor; applied to a family graph of index (n, l, j)
/// it advances the index by one. The dual family uses the mirrored meets.
pub fn step_endo(n: usize, j: usize, dual: bool) -> Result<Substitution> {
    if n < 2 || j < 1 || j > 2 * n {
        return Err(Error::BadParam(format!("bad step parameters n={n}, j={j}")));
    }
    let image = if j == 2 * n {
        Term::meet(Term::Leaf(xletter(1)), Term::Leaf(xletter(2 * n)))
    } else if j % 2 == 1 {
        Term::meet(Term::Leaf(xletter(j)), Term::Leaf(xletter(j + 1)))
    } else {
        Term::meet(Term::Leaf(xletter(j + 1)), Term::Leaf(xletter(j)))
    };
    let image = if dual { image.mirror() } else { image };
    Ok(Substitution::identity().bind(xletter(j), image))
}

/// The collapsing endomorphism of the cross-n comparison: folds the 2n-letter
/// alphabet onto the 2m-letter one by bouncing the first 2n-2m letters on the
/// root edge (odd letters to x_1, even letters to x_2 — left vertices must
/// keep odd labels and right vertices even ones) and shifting the rest down.
pub fn collapse_endo(n: usize, m: usize) -> Result<Substitution> {
    if !(2 <= m && m <= n) {
        return Err(Error::BadParam(format!(
            "collapse needs 2 <= m <= n, got n={n}, m={m}"
        )));
    }
    let mut s = Substitution::identity();
    for p in 1..=2 * n {
        let target = if p <= 2 * n - 2 * m {
            xletter(2 - p % 2)
        } else {
            xletter(p + 2 * m - 2 * n)
        };
        s.insert(xletter(p), Term::Leaf(target));
    }
    Ok(s)
}

/// The reversing permutation used to normalize a re-rooted family pair:
/// x_t -> x_{i+1-t} for t <= i, and x_t -> x_{2n+i+1-t} for t > i.
pub fn sigma_relabel(n: usize, i: usize) -> Result<BTreeMap<Letter, Letter>> {
    if n < 2 || i < 1 || i > 2 * n {
        return Err(Error::BadParam(format!("bad sigma parameters n={n}, i={i}")));
    }
    let mut map = BTreeMap::new();
    for t in 1..=2 * n {
        let target = if t <= i { i + 1 - t } else { 2 * n + i + 1 - t };
        map.insert(xletter(t), xletter(target));
    }
    Ok(map)
}
