//! Leaf colorings by the last factor, bad configurations, and where the new
//! leaf must be attached.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::trees::{Label, LabeledTree, StableTree};

/// A leaf color: `Z` for `a` and zero coordinates, otherwise the value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Z,
    Value(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafColoring {
    pub colors: BTreeMap<Label, Color>,
}

impl LeafColoring {
    /// The distinct nonzero colors, in increasing order of value.
    pub fn nonzero_colors(&self) -> Vec<Rational> {
        let set: BTreeSet<&Rational> = self
            .colors
            .values()
            .filter_map(|c| match c {
                Color::Value(x) => Some(x),
                Color::Z => None,
            })
            .collect();
        set.into_iter().cloned().collect()
    }

    /// At most one distinct nonzero value.
    pub fn is_binary(&self) -> bool {
        self.nonzero_colors().len() <= 1
    }

    pub fn labels_with(&self, c: &Color) -> BTreeSet<Label> {
        self.colors.iter().filter(|(_, x)| *x == c).map(|(l, _)| *l).collect()
    }
}

/// Colors leaf `a` and every `j` with `y_j = 0` by `Z`, and every other leaf
/// by its value `y_j`. `y` is indexed by column (`b, c, 1, …`).
pub fn color_leaves<P: Clone>(tree: &LabeledTree<P>, y: &[Rational]) -> LeafColoring {
    let colors = tree
        .labels()
        .into_iter()
        .map(|l| {
            let c = if l == Label::A || y[l.column()].is_zero() { Color::Z } else { Color::Value(y[l.column()].clone()) };
            (l, c)
        })
        .collect();
    LeafColoring { colors }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BadKind {
    /// `i` red separates green `j, k` in `T|_i`.
    RType,
    /// `i, k` green and `i` separates `a` from red `j` in `T|_i`.
    GType,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BadConfiguration {
    pub kind: BadKind,
    pub i: Label,
    pub j: Label,
    pub k: Label,
}

impl fmt::Display for BadConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            BadKind::RType => "R",
            BadKind::GType => "G",
        };
        write!(f, "{kind}({},{},{})", self.i, self.j, self.k)
    }
}

/// For every integer label `i`, the block of each label `≤ i` among the
/// branches of `T|_i` at `v_i`.
pub struct SeparationTable {
    blocks: BTreeMap<u32, BTreeMap<Label, usize>>,
}

impl SeparationTable {
    pub fn new<P: Clone>(tree: &LabeledTree<P>) -> Result<Self> {
        let mut t = tree.shape();
        let mut blocks = BTreeMap::new();
        for i in (1..=tree.top()).rev() {
            let bp = t.branches_at(Label::Int(i))?;
            let mut map = BTreeMap::new();
            for (k, b) in bp.blocks.iter().enumerate() {
                for l in b {
                    map.insert(*l, k);
                }
            }
            blocks.insert(i, map);
            if i > 1 {
                t = t.forget(Label::Int(i))?;
            }
        }
        Ok(SeparationTable { blocks })
    }

    /// Whether `i` separates `j` and `k` in `T|_i` (all labels `< i`).
    pub fn separates(&self, i: u32, j: Label, k: Label) -> bool {
        let b = &self.blocks[&i];
        b[&j] != b[&k]
    }
}

/// All bad configurations of the coloring with green set `green` (`a` is
/// red), sorted by `(i, j, k)` and then kind.
pub fn find_bad_configurations(tree: &StableTree, green: &BTreeSet<Label>) -> Result<Vec<BadConfiguration>> {
    Ok(bad_configurations_with(&SeparationTable::new(tree)?, tree.top(), green))
}

pub fn bad_configurations_with(table: &SeparationTable, top: u32, green: &BTreeSet<Label>) -> Vec<BadConfiguration> {
    let mut out = Vec::new();
    for i in 1..=top {
        let li = Label::Int(i);
        let below: Vec<Label> = Label::columns(i);
        let i_green = green.contains(&li);
        for &j in &below {
            for &k in &below {
                if j == k {
                    continue;
                }
                let (jg, kg) = (green.contains(&j), green.contains(&k));
                if !i_green && jg && kg && j < k && table.separates(i, j, k) {
                    out.push(BadConfiguration { kind: BadKind::RType, i: li, j, k });
                }
                if i_green && !jg && kg && table.separates(i, Label::A, j) {
                    out.push(BadConfiguration { kind: BadKind::GType, i: li, j, k });
                }
            }
        }
    }
    out.sort_by_key(|b| (b.i, b.j, b.k, b.kind));
    out
}

/// The edge splitting `a`'s side (red) from the green leaves, oriented
/// `(red side, green side)`. Found from green and red leaf counts below each
/// vertex of the tree rooted at leaf `a`.
pub fn separating_edge<P: Clone>(tree: &LabeledTree<P>, green: &BTreeSet<Label>) -> Result<(usize, usize)> {
    let (order, parent) = rooted_postorder(tree);
    let total_green = tree.labels().iter().filter(|l| green.contains(l)).count();
    if total_green == 0 || green.contains(&Label::A) {
        return Err(Error::NoSeparation);
    }
    let mut g = vec![0usize; tree.len()];
    let mut r = vec![0usize; tree.len()];
    for &v in &order {
        if let Some(l) = tree.label_of(v) {
            if green.contains(&l) {
                g[v] = 1;
            } else {
                r[v] = 1;
            }
        }
        if parent[v] != usize::MAX && !tree.is_leaf(parent[v]) {
            g[parent[v]] += g[v];
            r[parent[v]] += r[v];
        }
    }
    order
        .iter()
        .find(|&&v| parent[v] != usize::MAX && g[v] == total_green && r[v] == 0)
        .map(|&v| (parent[v], v))
        .ok_or(Error::NoSeparation)
}

/// Vertices in postorder of the tree rooted at leaf `a`, with parents
/// (`usize::MAX` for the root leaf).
fn rooted_postorder<P: Clone>(tree: &LabeledTree<P>) -> (Vec<usize>, Vec<usize>) {
    let root = tree.leaf(Label::A).expect("every tree carries a");
    let mut parent = vec![usize::MAX; tree.len()];
    let mut pre = Vec::with_capacity(tree.len());
    let mut stack = vec![(root, usize::MAX)];
    while let Some((v, from)) = stack.pop() {
        parent[v] = from;
        pre.push(v);
        for u in tree.neighbors(v) {
            if u != from {
                stack.push((u, v));
            }
        }
    }
    pre.reverse();
    // the root leaf's own count is never read
    (pre.into_iter().filter(|&v| v != root).collect(), parent)
}

/// Where leaf `n` goes: on an edge `(Z side, nonzero side)` or at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttachmentSite {
    Edge(usize, usize),
    Vertex(usize),
}

/// Checks strong separation in both scenarios (zero against nonzero, and
/// each nonzero color against the rest), then locates the attachment site.
pub fn attachment_site<P: Clone>(tree: &LabeledTree<P>, coloring: &LeafColoring) -> Result<AttachmentSite> {
    let table = SeparationTable::new(tree)?;
    let top = tree.top();
    let zero = coloring.labels_with(&Color::Z);
    let nonzero: BTreeSet<Label> = coloring.colors.keys().filter(|l| !zero.contains(l)).copied().collect();
    let mut bad = bad_configurations_with(&table, top, &nonzero);
    let values = coloring.nonzero_colors();
    for beta in &values {
        bad.extend(bad_configurations_with(&table, top, &coloring.labels_with(&Color::Value(beta.clone()))));
    }
    if !bad.is_empty() {
        return Err(Error::SeparationFailure { bad });
    }
    if values.len() <= 1 {
        let (u, w) = separating_edge(tree, &nonzero)?;
        return Ok(AttachmentSite::Edge(u, w));
    }
    let mut found = None;
    for v in tree.internal_vertices() {
        let mut seen = BTreeSet::new();
        let ok = tree.neighbors(v).into_iter().all(|u| {
            let side = tree.side_leaves(v, u);
            let c = &coloring.colors[&side[0]];
            side.iter().all(|l| &coloring.colors[l] == c) && seen.insert(c.clone())
        });
        if ok {
            if found.is_some() {
                return Err(Error::NoSeparation);
            }
            found = Some(v);
        }
    }
    found.map(AttachmentSite::Vertex).ok_or(Error::NoSeparation)
}
