#![allow(dead_code)]

use kapranov::curves::{validate_curve, MarkedCurve};
use kapranov::exact::{qi, Extended, Rational};
use kapranov::trees::{Label, StableTree};

pub fn l(s: &str) -> Label {
    s.parse().unwrap()
}

pub fn f(x: Rational) -> Extended<Rational> {
    Extended::Finite(x)
}

/// Coordinates per internal vertex in text preorder, in port order.
pub fn curve(text: &str, coords: &[&[Extended<Rational>]]) -> MarkedCurve {
    let t: StableTree = text.parse().unwrap();
    let c = t.map_ports(|v, u, _| {
        let k = t.ports(v).iter().position(|(w, _)| *w == u).unwrap();
        coords[v][k].clone()
    });
    validate_curve(&c).unwrap();
    c
}

/// Every special point sits at its port index.
pub fn indexed_curve(text: &str) -> MarkedCurve {
    let t: StableTree = text.parse().unwrap();
    let c = t.map_ports(|v, u, _| f(qi(t.ports(v).iter().position(|(w, _)| *w == u).unwrap() as i64)));
    validate_curve(&c).unwrap();
    c
}
