use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::GeodesicSpace;
use crate::error::{domain, Result};

/// JSON form of a tree: `{"vertices": [names], "edges": [[u, v, length]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, f64)>,
}

#[derive(Debug, Clone)]
struct Edge {
    upper: usize,
    lower: usize,
    len: f64,
}

/// A finite metric tree. Vertex 0 is the root; every edge is stored with its
/// root-side (`upper`) endpoint first.
#[derive(Debug, Clone)]
pub struct MetricTree {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
    parent: Vec<Option<(usize, usize)>>, // (parent vertex, edge)
    hops: Vec<usize>,
}

/// A point of a [`MetricTree`] in canonical form: vertices are always
/// `Vertex`, and `Edge` offsets (measured from the edge's upper vertex) lie
/// strictly inside the edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TreePoint {
    Vertex(usize),
    Edge { edge: usize, offset: f64 },
}

#[derive(Debug, Clone, Copy)]
struct Seg {
    edge: usize,
    from: f64,
    to: f64,
}

impl MetricTree {
    pub fn new(names: Vec<String>, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(domain("a tree needs at least one vertex"));
        }
        if edges.len() + 1 != n {
            return Err(domain(format!(
                "a tree on {n} vertices has {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(domain(format!("duplicate vertex name {name:?}")));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (e, &(a, b, len)) in edges.iter().enumerate() {
            if a >= n || b >= n || a == b {
                return Err(domain(format!("edge {e} has invalid endpoints ({a}, {b})")));
            }
            if !(len > 0.0 && len.is_finite()) {
                return Err(domain(format!("edge {e} has non-positive length {len}")));
            }
            adj[a].push((b, e));
            adj[b].push((a, e));
        }

        let mut parent = vec![None; n];
        let mut hops = vec![0; n];
        let mut seen = vec![false; n];
        let mut oriented: Vec<Option<Edge>> = vec![None; edges.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, e));
                    hops[w] = hops[v] + 1;
                    oriented[e] = Some(Edge { upper: v, lower: w, len: edges[e].2 });
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(domain("the edge list does not connect all vertices"));
        }
        let edges = oriented.into_iter().map(|e| e.expect("connected tree orients every edge")).collect();
        Ok(Self { names, index, edges, parent, hops })
    }

    pub fn from_doc(doc: &TreeDoc) -> Result<Self> {
        let lookup: HashMap<&str, usize> =
            doc.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (u, v, len) in &doc.edges {
            let a = *lookup.get(u.as_str()).ok_or_else(|| domain(format!("unknown vertex {u:?}")))?;
            let b = *lookup.get(v.as_str()).ok_or_else(|| domain(format!("unknown vertex {v:?}")))?;
            edges.push((a, b, *len));
        }
        Self::new(doc.vertices.clone(), &edges)
    }

    pub fn to_doc(&self) -> TreeDoc {
        TreeDoc {
            vertices: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| (self.names[e.upper].clone(), self.names[e.lower].clone(), e.len))
                .collect(),
        }
    }

    /// One center vertex `o` joined to endpoints `x`, `y`, `z` by edges of
    /// length `ell`.
    pub fn tripod(ell: f64) -> Result<Self> {
        let names = ["o", "x", "y", "z"].iter().map(|s| s.to_string()).collect();
        Self::new(names, &[(0, 1, ell), (0, 2, ell), (0, 3, ell)])
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    /// `(upper, lower, length)` of an edge.
    pub fn edge(&self, e: usize) -> (usize, usize, f64) {
        let edge = &self.edges[e];
        (edge.upper, edge.lower, edge.len)
    }

    /// Vertices adjacent to `v` together with the connecting edge.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().enumerate().filter_map(move |(e, edge)| {
            if edge.upper == v {
                Some((edge.lower, e))
            } else if edge.lower == v {
                Some((edge.upper, e))
            } else {
                None
            }
        })
    }

    pub fn vertex(&self, name: &str) -> Result<TreePoint> {
        self.index
            .get(name)
            .map(|&v| TreePoint::Vertex(v))
            .ok_or_else(|| domain(format!("unknown vertex {name:?}")))
    }

    /// Point on edge `e` at `offset` from its upper vertex, canonicalized.
    pub fn point_on_edge(&self, e: usize, offset: f64) -> Result<TreePoint> {
        let edge = self.edges.get(e).ok_or_else(|| domain(format!("unknown edge {e}")))?;
        if !(0.0..=edge.len).contains(&offset) {
            return Err(domain(format!("offset {offset} outside edge of length {}", edge.len)));
        }
        Ok(self.canonical(e, offset))
    }

    /// Point on the edge joining the named vertices, at `offset` from `from`.
    pub fn point_between(&self, from: &str, to: &str, offset: f64) -> Result<TreePoint> {
        let (a, b) = (self.vertex_index(from)?, self.vertex_index(to)?);
        let e = self
            .edge_between(a, b)
            .ok_or_else(|| domain(format!("no edge between {from:?} and {to:?}")))?;
        let len = self.edges[e].len;
        if !(0.0..=len).contains(&offset) {
            return Err(domain(format!("offset {offset} outside edge of length {len}")));
        }
        let from_upper = if self.edges[e].upper == a { offset } else { len - offset };
        Ok(self.canonical(e, from_upper))
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| domain(format!("unknown vertex {name:?}")))
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        match (self.parent[a], self.parent[b]) {
            (Some((p, e)), _) if p == b => Some(e),
            (_, Some((p, e))) if p == a => Some(e),
            _ => None,
        }
    }

    /// Serializable `(edge endpoints, offset from the first endpoint)` form.
    pub fn edge_form(&self, p: &TreePoint) -> Option<((String, String), f64)> {
        let (e, offset) = match *p {
            TreePoint::Edge { edge, offset } => (edge, offset),
            TreePoint::Vertex(v) => match self.parent[v] {
                Some((_, e)) => (e, self.edges[e].len),
                None => {
                    let e = self.edges.iter().position(|edge| edge.upper == v)?;
                    (e, 0.0)
                }
            },
        };
        let edge = &self.edges[e];
        Some(((self.names[edge.upper].clone(), self.names[edge.lower].clone()), offset))
    }

    /// Wraps a vertex permutation as an isometry after checking that it maps
    /// edges to edges of equal length.
    pub fn automorphism(&self, perm: &[usize]) -> Result<TreeAutomorphism<'_>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
            return Err(domain("automorphism must be a permutation of the vertices"));
        }
        let mut edge_map = Vec::with_capacity(self.edges.len());
        for edge in &self.edges {
            let image = self
                .edge_between(perm[edge.upper], perm[edge.lower])
                .filter(|&f| self.edges[f].len == edge.len)
                .ok_or_else(|| domain("vertex permutation is not an isometry of the tree"))?;
            edge_map.push(image);
        }
        Ok(TreeAutomorphism { tree: self, perm: perm.to_vec(), edge_map })
    }

    fn canonical(&self, e: usize, offset: f64) -> TreePoint {
        let edge = &self.edges[e];
        if offset <= 0.0 {
            TreePoint::Vertex(edge.upper)
        } else if offset >= edge.len {
            TreePoint::Vertex(edge.lower)
        } else {
            TreePoint::Edge { edge: e, offset }
        }
    }

    fn anchor(&self, p: &TreePoint) -> usize {
        match *p {
            TreePoint::Vertex(v) => v,
            TreePoint::Edge { edge, .. } => self.edges[edge].lower,
        }
    }

    fn vertex_path(&self, a: usize, b: usize) -> SmallVec<[usize; 16]> {
        let (mut x, mut y) = (a, b);
        let mut up: SmallVec<[usize; 16]> = SmallVec::new();
        let mut down: SmallVec<[usize; 16]> = SmallVec::new();
        while x != y {
            if self.hops[x] >= self.hops[y] {
                up.push(x);
                x = self.parent[x].expect("non-root vertex has a parent").0;
            } else {
                down.push(y);
                y = self.parent[y].expect("non-root vertex has a parent").0;
            }
        }
        up.push(x);
        up.extend(down.into_iter().rev());
        up
    }

    fn hop(&self, a: usize, b: usize) -> Seg {
        match self.parent[b] {
            Some((p, e)) if p == a => Seg { edge: e, from: 0.0, to: self.edges[e].len },
            _ => {
                let e = self.parent[a].expect("adjacent vertices share an edge").1;
                Seg { edge: e, from: self.edges[e].len, to: 0.0 }
            }
        }
    }

    /// The geodesic from `p` to `q` as a sequence of within-edge segments, in
    /// path order.
    fn segments(&self, p: &TreePoint, q: &TreePoint) -> SmallVec<[Seg; 16]> {
        let mut segs: SmallVec<[Seg; 16]> = SmallVec::new();
        if let (TreePoint::Edge { edge: e1, offset: a }, TreePoint::Edge { edge: e2, offset: b }) = (p, q) {
            if e1 == e2 {
                segs.push(Seg { edge: *e1, from: *a, to: *b });
                return segs;
            }
        }
        let path = self.vertex_path(self.anchor(p), self.anchor(q));
        let mut hops_from = 0;
        let mut hops_to = path.len() - 1;
        if let TreePoint::Edge { edge, offset } = *p {
            let upper = self.edges[edge].upper;
            if path.len() >= 2 && path[1] == upper {
                segs.push(Seg { edge, from: offset, to: 0.0 });
                hops_from = 1;
            } else {
                segs.push(Seg { edge, from: offset, to: self.edges[edge].len });
            }
        }
        let mut tail = None;
        if let TreePoint::Edge { edge, offset } = *q {
            let upper = self.edges[edge].upper;
            if path.len() >= 2 && path[path.len() - 2] == upper && hops_to > hops_from {
                tail = Some(Seg { edge, from: 0.0, to: offset });
                hops_to -= 1;
            } else {
                tail = Some(Seg { edge, from: self.edges[edge].len, to: offset });
            }
        }
        for i in hops_from..hops_to {
            segs.push(self.hop(path[i], path[i + 1]));
        }
        if let Some(seg) = tail {
            segs.push(seg);
        }
        segs
    }
}

/// An isometry of a [`MetricTree`] induced by a vertex permutation.
#[derive(Debug, Clone)]
pub struct TreeAutomorphism<'a> {
    tree: &'a MetricTree,
    perm: Vec<usize>,
    edge_map: Vec<usize>,
}

impl TreeAutomorphism<'_> {
    pub fn apply(&self, p: &TreePoint) -> TreePoint {
        match *p {
            TreePoint::Vertex(v) => TreePoint::Vertex(self.perm[v]),
            TreePoint::Edge { edge, offset } => {
                let image = self.edge_map[edge];
                let src = &self.tree.edges[edge];
                let dst = &self.tree.edges[image];
                let offset = if dst.upper == self.perm[src.upper] { offset } else { dst.len - offset };
                self.tree.canonical(image, offset)
            }
        }
    }
}

impl GeodesicSpace for MetricTree {
    type Point = TreePoint;

    fn check_point(&self, p: &TreePoint) -> Result<()> {
        match *p {
            TreePoint::Vertex(v) if v < self.vertex_count() => Ok(()),
            TreePoint::Vertex(v) => Err(domain(format!("vertex {v} is not in this tree"))),
            TreePoint::Edge { edge, offset } => {
                let e = self.edges.get(edge).ok_or_else(|| domain(format!("edge {edge} is not in this tree")))?;
                if offset > 0.0 && offset < e.len {
                    Ok(())
                } else {
                    Err(domain(format!(
                        "edge point offset {offset} is not strictly inside an edge of length {}",
                        e.len
                    )))
                }
            }
        }
    }

    fn distance(&self, p: &TreePoint, q: &TreePoint) -> f64 {
        if p == q {
            return 0.0;
        }
        // Sum in a fixed direction so that d(p, q) == d(q, p) bit for bit.
        let (p, q) = if sort_key(p) <= sort_key(q) { (p, q) } else { (q, p) };
        self.segments(p, q).iter().map(|s| (s.to - s.from).abs()).sum()
    }

    fn geodesic_point(&self, p: &TreePoint, q: &TreePoint, t: f64) -> TreePoint {
        if t <= 0.0 || p == q {
            return *p;
        }
        if t >= 1.0 {
            return *q;
        }
        let segs = self.segments(p, q);
        let total: f64 = segs.iter().map(|s| (s.to - s.from).abs()).sum();
        let mut remaining = t * total;
        for s in &segs {
            let len = (s.to - s.from).abs();
            if remaining <= len {
                let offset = if s.to >= s.from { s.from + remaining } else { s.from - remaining };
                return self.canonical(s.edge, offset);
            }
            remaining -= len;
        }
        *q
    }
}

fn sort_key(p: &TreePoint) -> (usize, usize, f64) {
    match *p {
        TreePoint::Vertex(v) => (0, v, 0.0),
        TreePoint::Edge { edge, offset } => (1, edge, offset),
    }
}
