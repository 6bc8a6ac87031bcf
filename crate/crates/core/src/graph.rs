//! Plane graphs given combinatorially by a rotation system.
//!
//! Vertices are the dense ids `1..=n`. Each vertex carries the clockwise
//! cyclic list of its neighbours. Faces are traced with the face on the left
//! of every dart, so inner faces are walked counterclockwise. The outer face
//! must be the triangle `(v1, v2, v3)` given in counterclockwise order; it is
//! therefore walked as `v1 -> v3 -> v2`.
//!
//! An *angle* is identified with the id of its incoming dart: the angle at
//! `v` lying clockwise between neighbours `a` and `succ_v(a)` is the dart
//! `a -> v`. That dart bounds the same face as the angle.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("vertex id {found} outside 1..={n}")]
    BadVertexId { n: usize, found: usize },
    #[error("inconsistent rotation: {u} lists {v} but {v} does not list {u}")]
    InconsistentRotation { u: usize, v: usize },
    #[error("graph is not simple: {0}")]
    NonSimple(String),
    #[error("outer triple {0:?} does not bound a face in counterclockwise order")]
    NotAFace([usize; 3]),
    #[error("graph is not connected")]
    Disconnected,
    #[error("rotation system is not planar (V - E + F = {0})")]
    NotPlanar(i64),
}

/// JSON interchange form of a plane graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub rotation: BTreeMap<usize, Vec<usize>>,
    pub outer: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Boundary walk, counterclockwise for inner faces.
    pub darts: Vec<usize>,
    /// `vertices[i]` is the head of `darts[i]`.
    pub vertices: Vec<usize>,
    pub is_outer: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

/// An immutable plane graph with its faces enumerated.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    n: usize,
    rotation: Vec<Vec<usize>>,
    outer: [usize; 3],
    offset: Vec<usize>,
    tail: Vec<usize>,
    head: Vec<usize>,
    twin: Vec<usize>,
    dart_face: Vec<usize>,
    faces: Vec<Face>,
}

impl PlaneGraph {
    /// Builds a plane graph from clockwise rotation lists.
    ///
    /// `rotation[i]` holds the neighbours of vertex `i + 1`.
    pub fn new(rotation: Vec<Vec<usize>>, outer: [usize; 3]) -> Result<Self, GraphError> {
        let n = rotation.len();
        if n < 3 {
            return Err(GraphError::TooSmall(n));
        }
        let mut rot = Vec::with_capacity(n + 1);
        rot.push(Vec::new());
        rot.extend(rotation);

        for v in 1..=n {
            for &w in &rot[v] {
                if w == 0 || w > n {
                    return Err(GraphError::BadVertexId { n, found: w });
                }
                if w == v {
                    return Err(GraphError::NonSimple(format!("loop at {v}")));
                }
            }
            let mut sorted = rot[v].clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|p| p[0] == p[1]) {
                return Err(GraphError::NonSimple(format!("parallel edges at {v}")));
            }
        }
        for &o in &outer {
            if o == 0 || o > n {
                return Err(GraphError::BadVertexId { n, found: o });
            }
        }

        let mut offset = vec![0; n + 2];
        for v in 1..=n {
            offset[v + 1] = offset[v] + rot[v].len();
        }
        let num_darts = offset[n + 1];
        let mut tail = vec![0; num_darts];
        let mut head = vec![0; num_darts];
        let mut index: HashMap<(usize, usize), usize> = HashMap::with_capacity(num_darts);
        for v in 1..=n {
            for (i, &w) in rot[v].iter().enumerate() {
                let d = offset[v] + i;
                tail[d] = v;
                head[d] = w;
                index.insert((v, w), d);
            }
        }
        let mut twin = vec![0; num_darts];
        for d in 0..num_darts {
            match index.get(&(head[d], tail[d])) {
                Some(&t) => twin[d] = t,
                None => {
                    return Err(GraphError::InconsistentRotation {
                        u: tail[d],
                        v: head[d],
                    })
                }
            }
        }

        let mut g = PlaneGraph {
            n,
            rotation: rot,
            outer,
            offset,
            tail,
            head,
            twin,
            dart_face: vec![usize::MAX; num_darts],
            faces: Vec::new(),
        };

        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }

        let [v1, v2, v3] = outer;
        let outer_start = g.dart(v1, v3).ok_or(GraphError::NotAFace(outer))?;
        let outer_walk = g.trace(outer_start);
        let expected = [g.dart(v1, v3), g.dart(v3, v2), g.dart(v2, v1)];
        if outer_walk.len() != 3 || outer_walk.iter().zip(expected).any(|(&d, e)| Some(d) != e) {
            return Err(GraphError::NotAFace(outer));
        }
        g.push_face(outer_walk, true);
        for d in 0..num_darts {
            if g.dart_face[d] == usize::MAX {
                let walk = g.trace(d);
                g.push_face(walk, false);
            }
        }

        let euler = n as i64 - g.num_edges() as i64 + g.faces.len() as i64;
        if euler != 2 {
            return Err(GraphError::NotPlanar(euler));
        }
        Ok(g)
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        let mut rotation = vec![Vec::new(); json.n];
        for (&v, nbrs) in &json.rotation {
            if v == 0 || v > json.n {
                return Err(GraphError::BadVertexId {
                    n: json.n,
                    found: v,
                });
            }
            rotation[v - 1] = nbrs.clone();
        }
        Self::new(rotation, json.outer)
    }

    /// JSON form with every rotation list rotated to start at its smallest
    /// neighbour.
    pub fn to_json(&self) -> GraphJson {
        let rotation = self
            .vertices()
            .map(|v| (v, canonical_cycle(&self.rotation[v])))
            .collect();
        GraphJson {
            n: self.n,
            rotation,
            outer: self.outer,
        }
    }

    fn push_face(&mut self, darts: Vec<usize>, is_outer: bool) {
        let idx = self.faces.len();
        for &d in &darts {
            self.dart_face[d] = idx;
        }
        let vertices = darts.iter().map(|&d| self.head[d]).collect();
        self.faces.push(Face {
            id: self.n + 1 + idx,
            darts,
            vertices,
            is_outer,
        });
    }

    fn trace(&self, start: usize) -> Vec<usize> {
        let mut walk = vec![start];
        let mut d = self.next_in_face(start);
        while d != start {
            walk.push(d);
            d = self.next_in_face(d);
        }
        walk
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.rotation[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn num_edges(&self) -> usize {
        self.tail.len() / 2
    }

    pub fn num_darts(&self) -> usize {
        self.tail.len()
    }

    pub fn outer(&self) -> [usize; 3] {
        self.outer
    }

    /// The special vertices `v1`, `v2`.
    pub fn special(&self) -> (usize, usize) {
        (self.outer[0], self.outer[1])
    }

    pub fn is_special(&self, v: usize) -> bool {
        v == self.outer[0] || v == self.outer[1]
    }

    pub fn is_special_edge(&self, u: usize, v: usize) -> bool {
        let (v1, v2) = self.special();
        (u == v1 && v == v2) || (u == v2 && v == v1)
    }

    /// Undirected edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.num_darts())
            .filter(|&d| self.tail[d] < self.head[d])
            .map(|d| (self.tail[d], self.head[d]))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.dart(u, v).is_some()
    }

    /// Dart `u -> v`, if the edge exists.
    pub fn dart(&self, u: usize, v: usize) -> Option<usize> {
        if u == 0 || u > self.n {
            return None;
        }
        self.rotation[u]
            .iter()
            .position(|&w| w == v)
            .map(|i| self.offset[u] + i)
    }

    /// Outgoing dart at position `i` of `v`'s rotation.
    pub fn dart_at(&self, v: usize, i: usize) -> usize {
        self.offset[v] + i
    }

    /// Position of the dart's head in its tail's rotation.
    pub fn dart_pos(&self, d: usize) -> usize {
        d - self.offset[self.tail[d]]
    }

    pub fn tail(&self, d: usize) -> usize {
        self.tail[d]
    }

    pub fn head(&self, d: usize) -> usize {
        self.head[d]
    }

    pub fn twin(&self, d: usize) -> usize {
        self.twin[d]
    }

    /// Next dart along the face on the left of `d`.
    pub fn next_in_face(&self, d: usize) -> usize {
        let v = self.head[d];
        let back = self.twin[d];
        let deg = self.rotation[v].len();
        let i = (self.dart_pos(back) + 1) % deg;
        self.offset[v] + i
    }

    /// Face id of the face on the left of `d`.
    pub fn dart_face(&self, d: usize) -> usize {
        self.faces[self.dart_face[d]].id
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id - self.n - 1]
    }

    pub fn is_face(&self, id: usize) -> bool {
        id > self.n && id <= self.n + self.faces.len()
    }

    pub fn outer_face(&self) -> usize {
        self.n + 1
    }

    pub fn inner_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| !f.is_outer)
    }

    /// Total number of nodes in the angular graph (vertices plus faces).
    pub fn node_count(&self) -> usize {
        self.n + self.faces.len()
    }

    /// Angles at `v` in clockwise order; the `i`-th lies between
    /// `rotation(v)[i]` and `rotation(v)[i + 1]`.
    pub fn angles_at(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rotation[v].len()).map(move |i| self.twin[self.offset[v] + i])
    }

    pub fn angle_vertex(&self, a: usize) -> usize {
        self.head[a]
    }

    pub fn angle_face(&self, a: usize) -> usize {
        self.dart_face(a)
    }

    /// Index of angle `a` among `angles_at(angle_vertex(a))`.
    pub fn angle_pos(&self, a: usize) -> usize {
        self.dart_pos(self.twin[a])
    }

    /// The angle of vertex `v` inside face `f`. In a 2-connected graph it is
    /// unique; otherwise the first in clockwise order is returned.
    pub fn angle_of(&self, v: usize, f: usize) -> Option<usize> {
        self.angles_at(v).find(|&a| self.angle_face(a) == f)
    }

    pub fn is_two_connected(&self) -> bool {
        is_two_connected_adj(&self.rotation)
    }

    /// True when both graphs carry the same rotation system up to cyclic
    /// shifts and the same outer triangle.
    pub fn same_embedding(&self, other: &PlaneGraph) -> bool {
        self.n == other.n
            && self.outer == other.outer
            && self
                .vertices()
                .all(|v| canonical_cycle(&self.rotation[v]) == canonical_cycle(&other.rotation[v]))
    }
}

/// Rotates a cyclic list so it starts at its minimum element.
pub fn canonical_cycle(list: &[usize]) -> Vec<usize> {
    match list.iter().enumerate().min_by_key(|(_, &w)| w) {
        Some((i, _)) => list[i..].iter().chain(&list[..i]).copied().collect(),
        None => Vec::new(),
    }
}

/// Biconnectivity test on a 1-based adjacency list (`adj[0]` is ignored).
pub fn is_two_connected_adj(adj: &[Vec<usize>]) -> bool {
    let n = adj.len().saturating_sub(1);
    if n < 3 {
        return n == 2 && adj[1].contains(&2);
    }
    let mut disc = vec![0usize; n + 1];
    let mut low = vec![0usize; n + 1];
    let mut timer = 1;
    disc[1] = timer;
    low[1] = timer;
    let mut root_children = 0;
    // (vertex, parent, next neighbour index)
    let mut stack = vec![(1usize, 0usize, 0usize)];
    while let Some(&mut (v, parent, ref mut i)) = stack.last_mut() {
        if *i < adj[v].len() {
            let w = adj[v][*i];
            *i += 1;
            if disc[w] == 0 {
                timer += 1;
                disc[w] = timer;
                low[w] = timer;
                if v == 1 {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else if w != parent {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent != 0 {
                low[parent] = low[parent].min(low[v]);
                if parent != 1 && low[v] >= disc[parent] {
                    return false;
                }
            }
        }
    }
    disc[1..].iter().all(|&d| d != 0) && root_children < 2
}
