//! Stable leaf-labeled trees over `S = {a < b < c < 1 < … < n}`.
//!
//! A [`LabeledTree`] stores one value of type `P` per (internal vertex,
//! incident edge) pair; [`StableTree`] is the bare shape with `P = ()`, and a
//! marked curve is the same structure carrying `P1` coordinates.

mod enumerate;
mod text;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use enumerate::all_stable_trees;

use crate::error::{Error, Result};

/// A marked-point label, ordered `a < b < c < 1 < 2 < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    A,
    B,
    C,
    Int(u32),
}

impl Label {
    /// Labels `a, b, c, 1, …, n` in order.
    pub fn up_to(n: u32) -> Vec<Label> {
        let mut v = vec![Label::A, Label::B, Label::C];
        v.extend((1..=n).map(Label::Int));
        v
    }

    /// Column labels of factor `i`: `b, c, 1, …, i − 1`.
    pub fn columns(i: u32) -> Vec<Label> {
        let mut v = vec![Label::B, Label::C];
        v.extend((1..i).map(Label::Int));
        v
    }

    /// Position of a column label within any factor that contains it.
    pub fn column(self) -> usize {
        match self {
            Label::A => panic!("a is never a coordinate column"),
            Label::B => 0,
            Label::C => 1,
            Label::Int(k) => k as usize + 1,
        }
    }

    pub fn int(self) -> Option<u32> {
        match self {
            Label::Int(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::A => f.write_str("a"),
            Label::B => f.write_str("b"),
            Label::C => f.write_str("c"),
            Label::Int(k) => write!(f, "{k}"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Label> {
        match s {
            "a" => Ok(Label::A),
            "b" => Ok(Label::B),
            "c" => Ok(Label::C),
            _ => match s.parse::<u32>() {
                Ok(k) if k >= 1 && !s.starts_with('+') => Ok(Label::Int(k)),
                _ => Err(Error::Parse(format!("invalid label `{s}`"))),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Vertex<P> {
    Leaf { label: Label, nbr: usize },
    /// One entry per incident edge: the neighbor and the value on this side.
    Internal { ports: Vec<(usize, P)> },
}

/// A finite tree whose leaves carry distinct labels and whose internal
/// vertices carry a value per incident edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree<P> {
    verts: Vec<Vertex<P>>,
}

pub type StableTree = LabeledTree<()>;

/// The blocks of leaves cut out by deleting the vertex adjacent to `pivot`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPartition {
    pub pivot: Label,
    /// Sorted blocks, ordered by their minimal label.
    pub blocks: Vec<Vec<Label>>,
}

impl BranchPartition {
    pub fn block_of(&self, l: Label) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&l))
    }
}

impl<P: Clone> LabeledTree<P> {
    /// A single internal vertex joined to one leaf per label.
    pub fn star(points: Vec<(Label, P)>) -> Self {
        let mut verts = vec![Vertex::Internal { ports: Vec::new() }];
        let mut ports = Vec::new();
        for (label, p) in points {
            ports.push((verts.len(), p));
            verts.push(Vertex::Leaf { label, nbr: 0 });
        }
        verts[0] = Vertex::Internal { ports };
        LabeledTree { verts }
    }

    pub fn from_vertices(verts: Vec<Vertex<P>>) -> Self {
        LabeledTree { verts }
    }

    pub fn vertices(&self) -> &[Vertex<P>] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        matches!(self.verts[v], Vertex::Leaf { .. })
    }

    pub fn label_of(&self, v: usize) -> Option<Label> {
        match self.verts[v] {
            Vertex::Leaf { label, .. } => Some(label),
            Vertex::Internal { .. } => None,
        }
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.verts.len()).filter(|&v| !self.is_leaf(v))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        match &self.verts[v] {
            Vertex::Leaf { nbr, .. } => vec![*nbr],
            Vertex::Internal { ports } => ports.iter().map(|(u, _)| *u).collect(),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        match &self.verts[v] {
            Vertex::Leaf { .. } => 1,
            Vertex::Internal { ports } => ports.len(),
        }
    }

    pub fn ports(&self, v: usize) -> &[(usize, P)] {
        match &self.verts[v] {
            Vertex::Internal { ports } => ports,
            Vertex::Leaf { .. } => &[],
        }
    }

    pub fn ports_mut(&mut self, v: usize) -> &mut Vec<(usize, P)> {
        match &mut self.verts[v] {
            Vertex::Internal { ports } => ports,
            Vertex::Leaf { .. } => panic!("leaf {v} has no ports"),
        }
    }

    /// The value stored at internal vertex `v` for its edge towards `u`.
    pub fn port(&self, v: usize, u: usize) -> &P {
        &self.ports(v).iter().find(|(w, _)| *w == u).expect("not an incident edge").1
    }

    pub fn set_port(&mut self, v: usize, u: usize, p: P) {
        let slot = self.ports_mut(v).iter_mut().find(|(w, _)| *w == u).expect("not an incident edge");
        slot.1 = p;
    }

    pub fn labels(&self) -> Vec<Label> {
        let mut v: Vec<Label> = self.verts.iter().filter_map(|x| match x {
            Vertex::Leaf { label, .. } => Some(*label),
            _ => None,
        }).collect();
        v.sort();
        v
    }

    /// Largest integer label, or 0 when only `a, b, c` are present.
    pub fn top(&self) -> u32 {
        self.labels().iter().filter_map(|l| l.int()).max().unwrap_or(0)
    }

    pub fn leaf(&self, label: Label) -> Result<usize> {
        self.verts
            .iter()
            .position(|x| matches!(x, Vertex::Leaf { label: l, .. } if *l == label))
            .ok_or(Error::UnknownLabel(label))
    }

    /// The internal vertex `v_i` adjacent to leaf `label`.
    pub fn anchor(&self, label: Label) -> Result<usize> {
        let leaf = self.leaf(label)?;
        Ok(self.neighbors(leaf)[0])
    }

    /// Sorted leaf labels reachable from `u` without passing through `v`.
    pub fn side_leaves(&self, v: usize, u: usize) -> Vec<Label> {
        let mut out = Vec::new();
        let mut stack = vec![(u, v)];
        while let Some((x, from)) = stack.pop() {
            if let Some(l) = self.label_of(x) {
                out.push(l);
                continue;
            }
            for y in self.neighbors(x) {
                if y != from {
                    stack.push((y, x));
                }
            }
        }
        out.sort();
        out
    }

    /// Smallest label on `u`'s side of the edge `{v, u}`.
    pub fn side_min(&self, v: usize, u: usize) -> Label {
        self.side_leaves(v, u)[0]
    }

    pub fn branches_at(&self, pivot: Label) -> Result<BranchPartition> {
        let leaf = self.leaf(pivot)?;
        let v = self.neighbors(leaf)[0];
        let mut blocks: Vec<Vec<Label>> =
            self.neighbors(v).into_iter().filter(|&u| u != leaf).map(|u| self.side_leaves(v, u)).collect();
        blocks.sort();
        Ok(BranchPartition { pivot, blocks })
    }

    /// Whether `v_i` lies on the path from leaf `j` to leaf `k`.
    pub fn separates(&self, i: Label, j: Label, k: Label) -> Result<bool> {
        let bp = self.branches_at(i)?;
        let bj = bp.block_of(j).ok_or(Error::UnknownLabel(j))?;
        let bk = bp.block_of(k).ok_or(Error::UnknownLabel(k))?;
        Ok(bj != bk)
    }

    /// Internal edges `(u, w)` with `u < w`.
    pub fn internal_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in self.internal_vertices() {
            for u in self.neighbors(v) {
                if v < u && !self.is_leaf(u) {
                    out.push((v, u));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.verts.len();
        let mut edges = 0usize;
        for (v, x) in self.verts.iter().enumerate() {
            for u in self.neighbors(v) {
                if u >= n || u == v || !self.neighbors(u).contains(&v) {
                    return Err(Error::NotATree(format!("inconsistent adjacency at vertex {v}")));
                }
            }
            if let Vertex::Internal { ports } = x {
                let distinct: BTreeSet<usize> = ports.iter().map(|(u, _)| *u).collect();
                if distinct.len() != ports.len() {
                    return Err(Error::NotATree(format!("repeated edge at vertex {v}")));
                }
                if ports.len() < 3 {
                    return Err(Error::UnstableVertex { vertex: v, degree: ports.len() });
                }
            }
            edges += self.degree(v);
        }
        if n == 0 || edges != 2 * (n - 1) {
            return Err(Error::NotATree("edge count does not match a tree".into()));
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for y in self.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NotATree("disconnected".into()));
        }
        let labels = self.labels();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotATree("repeated leaf label".into()));
        }
        for l in [Label::A, Label::B, Label::C] {
            if !labels.contains(&l) {
                return Err(Error::MissingLabels(l));
            }
        }
        Ok(())
    }

    /// Drops the vertices not marked in `keep`, renumbering the rest in order.
    fn compact(&mut self, keep: &[bool]) {
        let mut map = vec![usize::MAX; self.verts.len()];
        let mut next = 0;
        for (v, &k) in keep.iter().enumerate() {
            if k {
                map[v] = next;
                next += 1;
            }
        }
        let old = std::mem::take(&mut self.verts);
        for (v, x) in old.into_iter().enumerate() {
            if !keep[v] {
                continue;
            }
            self.verts.push(match x {
                Vertex::Leaf { label, nbr } => Vertex::Leaf { label, nbr: map[nbr] },
                Vertex::Internal { ports } => {
                    Vertex::Internal { ports: ports.into_iter().map(|(u, p)| (map[u], p)).collect() }
                }
            });
        }
    }

    /// Replaces the neighbor `old` of `v` by `new`, keeping `v`'s value.
    fn redirect(&mut self, v: usize, old: usize, new: usize) {
        match &mut self.verts[v] {
            Vertex::Leaf { nbr, .. } => *nbr = new,
            Vertex::Internal { ports } => {
                ports.iter_mut().find(|(u, _)| *u == old).expect("not an incident edge").0 = new
            }
        }
    }

    /// Removes leaf `m`; a vertex left with two edges is contracted and its
    /// two neighbors are glued with the values they already held.
    pub fn forget(&self, m: Label) -> Result<Self> {
        if self.labels().len() < 4 {
            return Err(Error::TooFewLeaves);
        }
        let leaf = self.leaf(m)?;
        let v = self.neighbors(leaf)[0];
        let mut t = self.clone();
        t.ports_mut(v).retain(|(u, _)| *u != leaf);
        let mut keep = vec![true; t.verts.len()];
        keep[leaf] = false;
        if t.degree(v) == 2 {
            let nb = t.neighbors(v);
            let (u1, u2) = (nb[0], nb[1]);
            t.redirect(u1, v, u2);
            t.redirect(u2, v, u1);
            keep[v] = false;
        }
        t.compact(&keep);
        Ok(t)
    }

    /// The tree with all integer labels greater than `i` forgotten.
    pub fn restrict(&self, i: u32) -> Result<Self> {
        let mut t = self.clone();
        let mut top = t.top();
        while top > i {
            t = t.forget(Label::Int(top))?;
            top = t.top();
        }
        Ok(t)
    }

    /// Adds a leaf at internal vertex `v`, storing `p` on `v`'s side.
    pub fn add_leaf(&mut self, v: usize, label: Label, p: P) -> usize {
        let id = self.verts.len();
        self.verts.push(Vertex::Leaf { label, nbr: v });
        self.ports_mut(v).push((id, p));
        id
    }

    /// Inserts a new internal vertex on the edge `{u, w}` with values `pu`
    /// (towards `u`) and `pw` (towards `w`); the old endpoints keep theirs.
    pub fn subdivide(&mut self, u: usize, w: usize, pu: P, pw: P) -> usize {
        let x = self.verts.len();
        self.verts.push(Vertex::Internal { ports: vec![(u, pu), (w, pw)] });
        self.redirect(u, w, x);
        self.redirect(w, u, x);
        x
    }

    /// Contracts the internal edge `{u, w}` into `u`, whose ports become
    /// `ports` (built by the caller from both sides' remaining edges).
    pub fn contract_edge(&mut self, u: usize, w: usize, ports: Vec<(usize, P)>) {
        for x in self.neighbors(w) {
            if x != u {
                self.redirect(x, w, u);
            }
        }
        *self.ports_mut(u) = ports;
        let mut keep = vec![true; self.verts.len()];
        keep[w] = false;
        self.compact(&keep);
    }

    pub fn map_ports<Q>(&self, mut f: impl FnMut(usize, usize, &P) -> Q) -> LabeledTree<Q> {
        let verts = self
            .verts
            .iter()
            .enumerate()
            .map(|(v, x)| match x {
                Vertex::Leaf { label, nbr } => Vertex::Leaf { label: *label, nbr: *nbr },
                Vertex::Internal { ports } => {
                    Vertex::Internal { ports: ports.iter().map(|(u, p)| (*u, f(v, *u, p))).collect() }
                }
            })
            .collect();
        LabeledTree { verts }
    }

    pub fn shape(&self) -> StableTree {
        self.map_ports(|_, _, _| ())
    }

    /// Rooted traversal from leaf `a`: internal vertices in preorder, with
    /// children visited by increasing side minimum. Returns the order and
    /// each vertex's parent.
    pub fn canonical_order(&self) -> (Vec<usize>, Vec<usize>) {
        let root_leaf = self.leaf(Label::A).expect("every tree carries a");
        let mut parent = vec![usize::MAX; self.verts.len()];
        let mut order = Vec::new();
        let mut stack = vec![(self.neighbors(root_leaf)[0], root_leaf)];
        while let Some((v, from)) = stack.pop() {
            parent[v] = from;
            if self.is_leaf(v) {
                continue;
            }
            order.push(v);
            for u in self.sorted_children(v, from).into_iter().rev() {
                stack.push((u, v));
            }
        }
        (order, parent)
    }

    /// Neighbors of `v` other than `from`, by increasing side minimum.
    pub fn sorted_children(&self, v: usize, from: usize) -> Vec<usize> {
        let mut ch: Vec<(Label, usize)> =
            self.neighbors(v).into_iter().filter(|&u| u != from).map(|u| (self.side_min(v, u), u)).collect();
        ch.sort();
        ch.into_iter().map(|(_, u)| u).collect()
    }

    /// Renumbers vertices canonically (internal vertices in canonical
    /// preorder, then leaves by label) and sorts every port list by side
    /// minimum. Structural equality of the results is equality up to
    /// renaming internal vertices.
    pub fn relabeled(&self) -> Self {
        let (order, _) = self.canonical_order();
        let mut leaves: Vec<(Label, usize)> =
            (0..self.verts.len()).filter_map(|v| self.label_of(v).map(|l| (l, v))).collect();
        leaves.sort();
        let perm: Vec<usize> = order.iter().copied().chain(leaves.iter().map(|(_, v)| *v)).collect();
        let mut map = vec![0; self.verts.len()];
        for (new, &old) in perm.iter().enumerate() {
            map[old] = new;
        }
        let verts = perm
            .iter()
            .map(|&old| match &self.verts[old] {
                Vertex::Leaf { label, nbr } => Vertex::Leaf { label: *label, nbr: map[*nbr] },
                Vertex::Internal { ports } => {
                    let mut ps: Vec<(Label, usize, P)> =
                        ports.iter().map(|(u, p)| (self.side_min(old, *u), map[*u], p.clone())).collect();
                    ps.sort_by_key(|x| x.0);
                    Vertex::Internal { ports: ps.into_iter().map(|(_, u, p)| (u, p)).collect() }
                }
            })
            .collect();
        LabeledTree { verts }
    }
}

impl StableTree {
    pub fn star_of(labels: &[Label]) -> StableTree {
        LabeledTree::star(labels.iter().map(|&l| (l, ())).collect())
    }

    /// Canonical representative for equality up to internal renaming.
    pub fn canonical(&self) -> StableTree {
        self.relabeled()
    }

    pub fn same_shape(&self, other: &StableTree) -> bool {
        self.canonical() == other.canonical()
    }
}
