mod common;

use std::collections::BTreeSet;

use common::*;
use kapranov::curves::{canonical_form, omega, random_curve, MarkedCurve, MultiPoint};
use kapranov::exact::{q, qi};
use kapranov::mr_ideal::is_member;
use kapranov::reconstruct::{
    attachment_site, color_leaves, find_bad_configurations, reconstruct, AttachmentSite, BadConfiguration, BadKind,
};
use kapranov::trees::{Label, LabeledTree, StableTree};
use kapranov::verify::separation_violations;
use kapranov::Error;

fn sample() -> Vec<MarkedCurve> {
    let mut out = Vec::new();
    for n in 2..=6u32 {
        for nodes in 0..=n {
            for seed in 0..4u64 {
                out.push(random_curve(n, 1000 * n as u64 + 10 * nodes as u64 + seed, nodes).unwrap());
            }
        }
    }
    out
}

#[test]
fn round_trip_over_all_depths() {
    for c in sample() {
        let p = omega(&c).unwrap();
        assert!(is_member(&p).is_empty());
        let back = reconstruct(&p).unwrap();
        assert_eq!(canonical_form(&back), canonical_form(&c), "{}", c.to_text());
        assert_eq!(omega(&back).unwrap(), p);
    }
}

#[test]
fn image_points_are_strongly_separated() {
    for c in sample() {
        let p = omega(&c).unwrap();
        assert_eq!(separation_violations(&c, &p).unwrap(), vec![], "{}", c.to_text());
    }
}

fn branch_sets<P: Clone>(tree: &LabeledTree<P>, v: usize, skip: Option<Label>) -> BTreeSet<Vec<Label>> {
    tree.neighbors(v)
        .into_iter()
        .map(|u| tree.side_leaves(v, u))
        .filter(|s| skip.is_none_or(|x| !s.contains(&x)))
        .collect()
}

#[test]
fn attachment_site_matches_the_curve() {
    let (mut edges, mut vertices) = (0, 0);
    for c in sample() {
        let p = omega(&c).unwrap();
        for level in 2..=c.top() {
            let here = c.restrict(level).unwrap();
            let leaf = here.leaf(Label::Int(level)).unwrap();
            let v = here.neighbors(leaf)[0];
            let expected = branch_sets(&here, v, Some(Label::Int(level)));
            let tree = c.restrict(level - 1).unwrap().shape();
            let site = attachment_site(&tree, &color_leaves(&tree, p.factor(level))).unwrap();
            let found = match site {
                AttachmentSite::Edge(u, w) => {
                    edges += 1;
                    assert_eq!(here.degree(v), 3);
                    [tree.side_leaves(u, w), tree.side_leaves(w, u)].into_iter().collect()
                }
                AttachmentSite::Vertex(x) => {
                    vertices += 1;
                    assert!(here.degree(v) > 3);
                    branch_sets(&tree, x, None)
                }
            };
            assert_eq!(found, expected, "{} level {level}", c.to_text());
        }
    }
    assert!(edges > 0 && vertices > 0);
}

#[test]
fn hand_built_violation_is_reported() {
    // 3 sits between the {a,b,1} and {c,2} parts; coloring 1 and 2 alike
    // and 3 differently makes 3 separate two leaves of one color.
    let tree: StableTree = "((a,b,1),3,(c,2))".parse().unwrap();
    let y = vec![qi(0), qi(0), qi(1), qi(1), qi(0)];
    let coloring = color_leaves(&tree, &y);
    let green = coloring.labels_with(&kapranov::reconstruct::Color::Value(qi(1)));
    assert_eq!(green, [l("1"), l("2")].into_iter().collect());
    let bad = find_bad_configurations(&tree, &green).unwrap();
    let expected = BadConfiguration { kind: BadKind::RType, i: l("3"), j: l("1"), k: l("2") };
    assert!(bad.contains(&expected), "{bad:?}");
    assert!(matches!(attachment_site(&tree, &coloring), Err(Error::SeparationFailure { .. })));

    // the same coloring as the last factor of a point over a curve of that shape
    let c = indexed_curve("((a,b,1),3,(c,2))");
    let mut factors = omega(&c).unwrap().factors().to_vec();
    factors.push(y);
    let point = MultiPoint::new(factors).unwrap();
    assert!(!is_member(&point).is_empty());
    assert!(reconstruct(&point).is_err());
}

#[test]
fn non_member_is_rejected_with_witnesses() {
    let point = MultiPoint::new(vec![vec![qi(1), qi(1)], vec![qi(1), qi(2), qi(3)]]).unwrap();
    match reconstruct(&point) {
        Err(Error::NotInImage { violated }) => assert_eq!(violated.len(), 1),
        other => panic!("{other:?}"),
    }
}

#[test]
fn interior_point_reconstructs_to_a_star() {
    let c = curve("(a,b,c,1,2,3)", &[&[f(qi(0)), f(qi(1)), f(q(-1, 2)), f(qi(3)), f(q(5, 7)), f(qi(-4))]]);
    let p = omega(&c).unwrap();
    let back = reconstruct(&p).unwrap();
    assert_eq!(back.internal_vertices().count(), 1);
    assert_eq!(canonical_form(&back), canonical_form(&c));
}
