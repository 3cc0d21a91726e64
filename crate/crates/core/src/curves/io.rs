//! JSON forms of curves and points.
//!
//! Curve charts name internal vertices by the preorder of the opening
//! parentheses in the tree text; a point key is a leaf label or `v<id>` for
//! the node towards internal vertex `id`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{validate_curve, MarkedCurve, MultiPoint};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_extended, parse_rational, ExtendedScalar};
use crate::trees::StableTree;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartEntry {
    pub vertex: usize,
    pub points: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub n: u32,
    pub tree: String,
    pub charts: Vec<ChartEntry>,
}

fn format_extended(z: &ExtendedScalar) -> String {
    match z.finite() {
        Some(x) => format_rational(x),
        None => "inf".into(),
    }
}

impl CurveFile {
    pub fn from_curve(curve: &MarkedCurve) -> Self {
        let r = curve.relabeled();
        let charts = r
            .internal_vertices()
            .map(|v| ChartEntry {
                vertex: v,
                points: r
                    .ports(v)
                    .iter()
                    .map(|(u, z)| (port_key(&r, *u), format_extended(z)))
                    .collect(),
            })
            .collect();
        CurveFile { n: curve.top(), tree: r.to_text(), charts }
    }

    pub fn to_curve(&self) -> Result<MarkedCurve> {
        let t: StableTree = self.tree.parse()?;
        if t.top() != self.n {
            return Err(Error::InvalidCurve(format!("tree has top label {}, file says n = {}", t.top(), self.n)));
        }
        let mut by_vertex: BTreeMap<usize, &BTreeMap<String, String>> = BTreeMap::new();
        for e in &self.charts {
            if e.vertex >= t.len() || t.is_leaf(e.vertex) {
                return Err(Error::InvalidCurve(format!("no internal vertex {}", e.vertex)));
            }
            if by_vertex.insert(e.vertex, &e.points).is_some() {
                return Err(Error::InvalidCurve(format!("vertex {} charted twice", e.vertex)));
            }
        }
        let mut coords = BTreeMap::new();
        for v in t.internal_vertices() {
            let points = by_vertex.get(&v).ok_or_else(|| Error::InvalidCurve(format!("vertex {v} has no chart")))?;
            if points.len() != t.degree(v) {
                return Err(Error::InvalidCurve(format!("vertex {v} needs exactly {} points", t.degree(v))));
            }
            for u in t.neighbors(v) {
                let key = port_key(&t, u);
                let s = points
                    .get(&key)
                    .ok_or_else(|| Error::InvalidCurve(format!("vertex {v} has no point `{key}`")))?;
                coords.insert((v, u), parse_extended(s)?);
            }
        }
        let curve = t.map_ports(|v, u, _| coords[&(v, u)].clone());
        validate_curve(&curve)?;
        Ok(curve)
    }
}

fn port_key<P: Clone>(t: &crate::trees::LabeledTree<P>, u: usize) -> String {
    match t.label_of(u) {
        Some(l) => l.to_string(),
        None => format!("v{u}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiPointFile {
    pub n: u32,
    pub factors: Vec<Vec<String>>,
}

impl MultiPointFile {
    pub fn from_point(p: &MultiPoint) -> Self {
        MultiPointFile {
            n: p.n(),
            factors: p.factors().iter().map(|f| f.iter().map(format_rational).collect()).collect(),
        }
    }

    /// Parses and normalizes; entries must be finite rationals.
    pub fn to_point(&self) -> Result<MultiPoint> {
        if self.factors.len() != self.n as usize {
            return Err(Error::InvalidPoint(format!("expected {} factors, found {}", self.n, self.factors.len())));
        }
        let factors = self
            .factors
            .iter()
            .map(|f| f.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MultiPoint::new(factors)
    }
}
