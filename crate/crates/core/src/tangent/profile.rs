//! The branches at the vertex carrying the largest leaf, and the sub-branches
//! hanging off the paths towards `a` and towards `k`.

use crate::trees::{Label, LabeledTree};

/// Leaves hanging off the path at the vertex `depth` edges from `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubBranch {
    pub depth: usize,
    /// Sorted.
    pub leaves: Vec<Label>,
}

impl SubBranch {
    pub fn min(&self) -> Label {
        self.leaves[0]
    }

    /// Attached at the vertex next to `v`.
    pub fn is_nonzero(&self) -> bool {
        self.depth == 1
    }
}

/// A branch at `v` walked along the path to its distinguished leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arm {
    /// Sorted; includes the distinguished leaf.
    pub leaves: Vec<Label>,
    /// Internal vertices from `v` outwards.
    pub path: Vec<usize>,
    pub subs: Vec<SubBranch>,
}

impl Arm {
    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    /// Smallest leaf on the sub-branches next to `v`.
    pub fn nonzero_min(&self) -> Option<Label> {
        self.subs.iter().filter(|s| s.is_nonzero()).map(SubBranch::min).min()
    }

    pub fn sub_of(&self, l: Label) -> Option<&SubBranch> {
        self.subs.iter().find(|s| s.leaves.contains(&l))
    }

    /// Sub-branches strictly closer to `v` than depth `d`.
    pub fn closer_than(&self, d: usize) -> impl Iterator<Item = &SubBranch> {
        self.subs.iter().filter(move |s| s.depth < d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchProfile {
    pub n: u32,
    /// The vertex carrying leaf `n`.
    pub v: usize,
    /// Least leaf off the `a` branch.
    pub k: Label,
    pub a_branch: Arm,
    pub k_branch: Arm,
    /// Sorted by their minima.
    pub t_branches: Vec<Vec<Label>>,
    pub m0: Option<Label>,
    pub m_k: Option<Label>,
    pub exceptional: bool,
}

impl BranchProfile {
    pub fn l0(&self) -> usize {
        self.a_branch.len()
    }

    pub fn lk(&self) -> usize {
        self.k_branch.len()
    }

    pub fn r(&self) -> usize {
        self.t_branches.len()
    }

    pub fn t_minima(&self) -> Vec<Label> {
        self.t_branches.iter().map(|b| b[0]).collect()
    }
}

fn walk<P: Clone>(tree: &LabeledTree<P>, v: usize, first: usize, target: Label) -> Arm {
    let leaves = tree.side_leaves(v, first);
    let (mut prev, mut cur, mut depth) = (v, first, 1);
    let mut path = Vec::new();
    let mut subs = Vec::new();
    while !tree.is_leaf(cur) {
        path.push(cur);
        let mut next = None;
        for u in tree.neighbors(cur) {
            if u == prev {
                continue;
            }
            let side = tree.side_leaves(cur, u);
            if side.contains(&target) {
                next = Some(u);
            } else {
                subs.push(SubBranch { depth, leaves: side });
            }
        }
        prev = cur;
        cur = next.expect("the target lies beyond every path vertex");
        depth += 1;
    }
    Arm { leaves, path, subs }
}

/// The profile at the top label of `tree`.
pub fn branch_profile<P: Clone>(tree: &LabeledTree<P>) -> BranchProfile {
    let n = tree.top();
    let leaf = tree.leaf(Label::Int(n)).expect("top label is a leaf");
    let v = tree.neighbors(leaf)[0];
    let mut others: Vec<(Vec<Label>, usize)> = tree
        .neighbors(v)
        .into_iter()
        .filter(|&u| u != leaf)
        .map(|u| (tree.side_leaves(v, u), u))
        .collect();
    others.sort();
    let (_, a_first) = others.remove(0);
    let a_branch = walk(tree, v, a_first, Label::A);
    let (k_leaves, k_first) = others.remove(0);
    let k = k_leaves[0];
    let k_branch = walk(tree, v, k_first, k);
    let t_branches: Vec<Vec<Label>> = others.into_iter().map(|(s, _)| s).collect();
    let m0 = a_branch.nonzero_min();
    let m_k = k_branch.nonzero_min();
    let exceptional = t_branches.is_empty() && a_branch.len() >= 2 && k_branch.len() >= 2;
    BranchProfile { n, v, k, a_branch, k_branch, t_branches, m0, m_k, exceptional }
}
