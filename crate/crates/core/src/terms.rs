//! Words of the absolutely free binary algebra `F2(X)`: parsing, printing,
//! combinatorial invariants and substitution.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A generator letter. Names match `[a-z][a-z0-9_]*`.
///
/// Ordering is lexicographic but numeric-suffix aware, so `x2 < x10`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter(String);

impl Letter {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_lowercase() => {}
            _ => {
                return Err(Error::BadParam(format!(
                    "letter must match [a-z][a-z0-9_]*, got {name:?}"
                )))
            }
        }
        if !chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_') {
            return Err(Error::BadParam(format!(
                "letter must match [a-z][a-z0-9_]*, got {name:?}"
            )));
        }
        Ok(Letter(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Chunk-wise comparison treating maximal digit runs as numbers.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (ab, bb) = (a.as_bytes(), b.as_bytes());
    let (mut i, mut j) = (0usize, 0usize);
    while i < ab.len() && j < bb.len() {
        if ab[i].is_ascii_digit() && bb[j].is_ascii_digit() {
            let si = i;
            while i < ab.len() && ab[i].is_ascii_digit() {
                i += 1;
            }
            let sj = j;
            while j < bb.len() && bb[j].is_ascii_digit() {
                j += 1;
            }
            let da = a[si..i].trim_start_matches('0');
            let db = b[sj..j].trim_start_matches('0');
            let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
            if ord != Ordering::Equal {
                return ord;
            }
        } else {
            let ord = ab[i].cmp(&bb[j]);
            if ord != Ordering::Equal {
                return ord;
            }
            i += 1;
            j += 1;
        }
    }
    (ab.len() - i).cmp(&(bb.len() - j)).then_with(|| a.cmp(b))
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of `F2(X)`: a letter or a meet of two terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Leaf(Letter),
    Meet(Box<Term>, Box<Term>),
}

impl Term {
    pub fn leaf(l: Letter) -> Term {
        Term::Leaf(l)
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Term::Leaf(_))
    }

    /// Leftmost letter `l(u)`.
    pub fn leftmost(&self) -> &Letter {
        match self {
            Term::Leaf(l) => l,
            Term::Meet(a, _) => a.leftmost(),
        }
    }

    /// Rightmost letter `r(u)`.
    pub fn rightmost(&self) -> &Letter {
        match self {
            Term::Leaf(l) => l,
            Term::Meet(_, b) => b.rightmost(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Term::Leaf(_) => 1,
            Term::Meet(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    /// All invariants of the word: l, r, content, 2-content, left/right content.
    pub fn invariants(&self) -> Invariants {
        let mut inv = Invariants {
            l: self.leftmost().clone(),
            r: self.rightmost().clone(),
            c: BTreeSet::new(),
            c2: BTreeSet::new(),
            cl: BTreeSet::new(),
            cr: BTreeSet::new(),
        };
        self.collect_c2(&mut inv.c2);
        self.collect_sides(None, &mut inv);
        inv
    }

    fn collect_c2(&self, c2: &mut BTreeSet<(Letter, Letter)>) {
        match self {
            Term::Leaf(l) => {
                c2.insert((l.clone(), l.clone()));
            }
            Term::Meet(a, b) => {
                a.collect_c2(c2);
                c2.insert((a.leftmost().clone(), b.rightmost().clone()));
                b.collect_c2(c2);
            }
        }
    }

    fn collect_sides(&self, side: Option<bool>, inv: &mut Invariants) {
        match self {
            Term::Leaf(l) => {
                inv.c.insert(l.clone());
                match side {
                    Some(true) => {
                        inv.cl.insert(l.clone());
                    }
                    Some(false) => {
                        inv.cr.insert(l.clone());
                    }
                    None => {}
                }
            }
            Term::Meet(a, b) => {
                a.collect_sides(Some(true), inv);
                b.collect_sides(Some(false), inv);
            }
        }
    }

    /// Homomorphic image under a substitution.
    pub fn substitute(&self, s: &Substitution) -> Term {
        match self {
            Term::Leaf(l) => s.apply(l),
            Term::Meet(a, b) => Term::meet(a.substitute(s), b.substitute(s)),
        }
    }

    /// Left-right reversal of every meet.
    pub fn mirror(&self) -> Term {
        match self {
            Term::Leaf(l) => Term::Leaf(l.clone()),
            Term::Meet(a, b) => Term::meet(b.mirror(), a.mirror()),
        }
    }

    /// Letters occurring in the term.
    pub fn content(&self) -> BTreeSet<Letter> {
        let mut c = BTreeSet::new();
        self.collect_content(&mut c);
        c
    }

    fn collect_content(&self, c: &mut BTreeSet<Letter>) {
        match self {
            Term::Leaf(l) => {
                c.insert(l.clone());
            }
            Term::Meet(a, b) => {
                a.collect_content(c);
                b.collect_content(c);
            }
        }
    }
}

/// The invariant record (l, r, c, c2, cl, cr), shared between words and graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub l: Letter,
    pub r: Letter,
    pub c: BTreeSet<Letter>,
    pub c2: BTreeSet<(Letter, Letter)>,
    pub cl: BTreeSet<Letter>,
    pub cr: BTreeSet<Letter>,
}

impl Invariants {
    /// The triple (l, c2, r) deciding satisfaction by all strict pseudosemilattices.
    pub fn sps_triple(&self) -> (&Letter, &BTreeSet<(Letter, Letter)>, &Letter) {
        (&self.l, &self.c2, &self.r)
    }
}

/// Finite-support mapping Letter -> Term; unbound letters map to themselves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    bindings: BTreeMap<Letter, Term>,
}

impl Substitution {
    pub fn identity() -> Self {
        Substitution::default()
    }

    pub fn insert(&mut self, l: Letter, t: Term) {
        self.bindings.insert(l, t);
    }

    pub fn bind(mut self, l: Letter, t: Term) -> Self {
        self.insert(l, t);
        self
    }

    pub fn apply(&self, l: &Letter) -> Term {
        self.bindings
            .get(l)
            .cloned()
            .unwrap_or_else(|| Term::Leaf(l.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &Term)> {
        self.bindings.iter()
    }

    pub fn is_identity(&self) -> bool {
        self.bindings.iter().all(|(l, t)| matches!(t, Term::Leaf(m) if m == l))
    }

    /// Sequential composition: `x (self; then) = (x self) then`.
    pub fn compose(&self, then: &Substitution) -> Substitution {
        let mut out = Substitution::default();
        for (l, t) in &self.bindings {
            out.insert(l.clone(), t.substitute(then));
        }
        for (l, t) in &then.bindings {
            out.bindings.entry(l.clone()).or_insert_with(|| t.clone());
        }
        out
    }
}

impl fmt::Display for Term {
    /// Minimal parentheses under left-associative `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Leaf(l) => write!(f, "{l}"),
            Term::Meet(a, b) => {
                write!(f, "{a}^")?;
                if b.is_leaf() {
                    write!(f, "{b}")
                } else {
                    write!(f, "({b})")
                }
            }
        }
    }
}

pub fn print_term(t: &Term) -> String {
    t.to_string()
}

/// Parse `t ::= letter | t "^" t | "(" t ")"` with `^` left-associative.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Syntax {
            pos: p.pos,
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut acc = self.primary()?;
        loop {
            self.skip_ws();
            if self.pos < self.src.len() && self.src[self.pos] == b'^' {
                self.pos += 1;
                self.skip_ws();
                let rhs = self.primary()?;
                acc = Term::meet(acc, rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn primary(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Err(Error::Syntax {
                pos: self.pos,
                msg: "unexpected end of input".into(),
            });
        }
        match self.src[self.pos] {
            b'(' => {
                self.pos += 1;
                let t = self.term()?;
                self.skip_ws();
                if self.pos < self.src.len() && self.src[self.pos] == b')' {
                    self.pos += 1;
                    Ok(t)
                } else {
                    Err(Error::Syntax {
                        pos: self.pos,
                        msg: "expected ')'".into(),
                    })
                }
            }
            c if c.is_ascii_lowercase() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_lowercase()
                        || self.src[self.pos].is_ascii_digit()
                        || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Term::Leaf(Letter::new(name)?))
            }
            c => Err(Error::Syntax {
                pos: self.pos,
                msg: format!("unexpected character {:?}", c as char),
            }),
        }
    }
}
