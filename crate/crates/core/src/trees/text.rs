//! Parenthesized tree text: a list is an internal vertex, its items are
//! leaves or child vertices, e.g. `((a,b,c),(1,3),2,4)`.

use std::fmt;
use std::str::FromStr;

use super::{Label, LabeledTree, StableTree, Vertex};
use crate::error::{Error, Result};

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
    verts: Vec<Vertex<()>>,
    /// Per internal vertex, its leaf items as (port slot, label).
    pending: Vec<(usize, Vec<(usize, Label)>)>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("tree text at byte {}: {what}", self.pos))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    /// Parses a list; internal vertices are numbered in preorder.
    fn list(&mut self, parent: Option<usize>) -> Result<usize> {
        self.expect(b'(')?;
        let id = self.verts.len();
        self.verts.push(Vertex::Internal { ports: Vec::new() });
        let mut ports = Vec::new();
        if let Some(p) = parent {
            ports.push((p, ()));
        }
        let mut leaves = Vec::new();
        loop {
            self.skip_ws();
            match self.src.get(self.pos) {
                Some(b'(') => {
                    let child = self.list(Some(id))?;
                    ports.push((child, ()));
                }
                Some(_) => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                        self.pos += 1;
                    }
                    let tok = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                    if tok.is_empty() {
                        return Err(self.err("expected a label or `(`"));
                    }
                    let label: Label = tok.parse()?;
                    // leaves get their ids after all internal vertices
                    leaves.push((ports.len(), label));
                    ports.push((usize::MAX, ()));
                }
                None => return Err(self.err("unterminated list")),
            }
            self.skip_ws();
            match self.src.get(self.pos) {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err("expected `,` or `)`")),
            }
        }
        self.pending.push((id, leaves));
        self.verts[id] = Vertex::Internal { ports };
        Ok(id)
    }
}

impl FromStr for StableTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<StableTree> {
        parse_tree(s)
    }
}

/// Parses tree text. Internal vertices receive ids `0, 1, …` in the order
/// their opening parentheses appear; leaves follow.
pub fn parse_tree(s: &str) -> Result<StableTree> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, verts: Vec::new(), pending: Vec::new() };
    p.list(None)?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    let mut verts = p.verts;
    for (v, leaves) in p.pending {
        for (slot, label) in leaves {
            let id = verts.len();
            verts.push(Vertex::Leaf { label, nbr: v });
            match &mut verts[v] {
                Vertex::Internal { ports } => ports[slot].0 = id,
                Vertex::Leaf { .. } => unreachable!(),
            }
        }
    }
    let t = LabeledTree::from_vertices(verts);
    t.validate()?;
    Ok(t)
}

impl<P: Clone> LabeledTree<P> {
    /// Text rooted at the vertex adjacent to `a`, children by side minimum.
    /// Its preorder numbering of lists matches [`LabeledTree::canonical_order`].
    pub fn to_text(&self) -> String {
        let (order, parent) = self.canonical_order();
        let mut out = String::new();
        self.write_vertex(order[0], parent[order[0]], true, &mut out);
        out
    }

    fn write_vertex(&self, v: usize, from: usize, root: bool, out: &mut String) {
        out.push('(');
        let mut items: Vec<usize> = self.sorted_children(v, from);
        if root {
            // the root's parent is leaf a, which belongs in the list
            items.insert(0, from);
        }
        for (k, u) in items.into_iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            match self.label_of(u) {
                Some(l) => out.push_str(&l.to_string()),
                None => self.write_vertex(u, v, false, out),
            }
        }
        out.push(')');
    }
}

impl fmt::Display for StableTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
