//! Exhaustive enumeration of stable trees, used as a test oracle.

use super::{Label, StableTree};

/// Every stable tree on the given leaves (at least three), each exactly once.
///
/// Leaves are inserted in the given order; each new leaf either joins an
/// existing internal vertex or subdivides an existing edge. Every stable tree
/// arises from exactly one such insertion history.
pub fn all_stable_trees(labels: &[Label]) -> Vec<StableTree> {
    assert!(labels.len() >= 3, "stable trees need at least three leaves");
    let mut trees = vec![StableTree::star_of(&labels[..3])];
    for &l in &labels[3..] {
        let mut next = Vec::new();
        for t in &trees {
            for v in t.internal_vertices() {
                let mut u = t.clone();
                u.add_leaf(v, l, ());
                next.push(u);
            }
            for v in 0..t.len() {
                for w in t.neighbors(v) {
                    if v < w {
                        let mut u = t.clone();
                        let x = u.subdivide(v, w, (), ());
                        u.add_leaf(x, l, ());
                        next.push(u);
                    }
                }
            }
        }
        trees = next;
    }
    trees
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // counts of all (not only trivalent) unrooted trees on 3..7 leaves
        for (n, want) in [(0u32, 1usize), (1, 4), (2, 26), (3, 236), (4, 2752)] {
            let ts = all_stable_trees(&Label::up_to(n));
            assert_eq!(ts.len(), want);
            let distinct: BTreeSet<String> = ts.iter().map(|t| t.to_text()).collect();
            assert_eq!(distinct.len(), want, "duplicates for n = {n}");
            for t in &ts {
                t.validate().unwrap();
            }
        }
    }
}
