//! Angular graphs, angular structures and trees, alternating-cycle flips,
//! the incremental tree along a Henneberg sequence, and the face–vertex
//! matching.
//!
//! Edges of the angular graph are the angles of `G`, so an angular structure
//! is stored as a membership flag per angle id (see [`crate::graph`]).

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::PlaneGraph;
use crate::henneberg::{Embedding, HennebergError, HennebergMove, HennebergSequence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AngularError {
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("angular graph face around edge {0}-{1} is not a quadrangle")]
    NotQuadrangulated(usize, usize),
    #[error("({0}, {1}) is not an edge of the angular graph")]
    NotAnAngle(usize, usize),
    #[error("cycle is not alternating: {0}")]
    NotAlternating(String),
    #[error("angular structure is not a tree")]
    NotATree,
    #[error("outer face is not a leaf of the tree")]
    OuterNotLeaf,
    #[error("sequence does not reproduce the graph")]
    SequenceMismatch,
    #[error(transparent)]
    Henneberg(#[from] HennebergError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// The bipartite vertex–face incidence graph of a 2-connected plane graph.
#[derive(Debug, Clone)]
pub struct AngularGraph {
    node_count: usize,
    /// `(vertex, face)` per angle id.
    edges: Vec<(usize, usize)>,
}

impl AngularGraph {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

pub fn build_angular_graph(g: &PlaneGraph) -> Result<AngularGraph, AngularError> {
    if !g.is_two_connected() {
        return Err(AngularError::NotTwoConnected);
    }
    for d in 0..g.num_darts() {
        if g.dart_face(d) == g.dart_face(g.twin(d)) {
            return Err(AngularError::NotQuadrangulated(g.tail(d), g.head(d)));
        }
    }
    let edges = (0..g.num_darts())
        .map(|a| (g.angle_vertex(a), g.angle_face(a)))
        .collect();
    Ok(AngularGraph {
        node_count: g.node_count(),
        edges,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngularStructure {
    in_t: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeRule {
    Vertex,
    Face,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum StructureVerdict {
    ValidTree,
    ValidNotTree,
    Invalid { rule: DegreeRule, node: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub kind: String,
    pub edges: Vec<[usize; 2]>,
}

impl AngularStructure {
    pub fn empty(g: &PlaneGraph) -> Self {
        AngularStructure {
            in_t: vec![false; g.num_darts()],
        }
    }

    /// Builds a structure from `(vertex, face)` pairs.
    pub fn from_pairs(g: &PlaneGraph, pairs: &[(usize, usize)]) -> Result<Self, AngularError> {
        let mut t = Self::empty(g);
        for &(v, f) in pairs {
            let a = lookup_angle(g, v, f)?;
            t.in_t[a] = true;
        }
        Ok(t)
    }

    pub fn from_angles(g: &PlaneGraph, angles: impl IntoIterator<Item = usize>) -> Self {
        let mut t = Self::empty(g);
        for a in angles {
            t.in_t[a] = true;
        }
        t
    }

    pub fn contains(&self, angle: usize) -> bool {
        self.in_t[angle]
    }

    pub fn len(&self) -> usize {
        self.in_t.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn angles(&self) -> impl Iterator<Item = usize> + '_ {
        self.in_t
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(a, _)| a)
    }

    /// Sorted `(vertex, face)` pairs.
    pub fn pairs(&self, g: &PlaneGraph) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .angles()
            .map(|a| (g.angle_vertex(a), g.angle_face(a)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn to_json(&self, g: &PlaneGraph) -> StructureJson {
        let kind = match check_angular_structure(g, self) {
            StructureVerdict::ValidTree => "tree",
            _ => "structure",
        };
        StructureJson {
            kind: kind.into(),
            edges: self.pairs(g).into_iter().map(|(v, f)| [v, f]).collect(),
        }
    }

    pub fn from_json(g: &PlaneGraph, json: &StructureJson) -> Result<Self, AngularError> {
        let pairs: Vec<_> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::from_pairs(g, &pairs)
    }
}

fn lookup_angle(g: &PlaneGraph, v: usize, f: usize) -> Result<usize, AngularError> {
    if v == 0 || v > g.n() || !g.is_face(f) {
        return Err(AngularError::NotAnAngle(v, f));
    }
    g.angle_of(v, f).ok_or(AngularError::NotAnAngle(v, f))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Whether the `T` edges form a spanning tree on every node except `v1`, `v2`.
fn is_tree(g: &PlaneGraph, t: &AngularStructure) -> bool {
    let nodes = g.node_count() - 2;
    let mut uf = UnionFind::new(g.node_count() + 1);
    let mut edges = 0;
    for a in t.angles() {
        if !uf.union(g.angle_vertex(a), g.angle_face(a)) {
            return false;
        }
        edges += 1;
    }
    edges + 1 == nodes
}

pub fn check_angular_structure(g: &PlaneGraph, t: &AngularStructure) -> StructureVerdict {
    for v in g.vertices() {
        let count = g.angles_at(v).filter(|&a| t.contains(a)).count();
        let want = if g.is_special(v) { 0 } else { 2 };
        if count != want {
            return StructureVerdict::Invalid {
                rule: DegreeRule::Vertex,
                node: v,
            };
        }
    }
    for f in g.faces() {
        let free = f.darts.iter().filter(|&&a| !t.contains(a)).count();
        if free != 2 {
            return StructureVerdict::Invalid {
                rule: DegreeRule::Face,
                node: f.id,
            };
        }
    }
    if is_tree(g, t) {
        StructureVerdict::ValidTree
    } else {
        StructureVerdict::ValidNotTree
    }
}

/// Flips an alternating cycle given as its node sequence (vertices and
/// faces alternating, without repeating the first node).
pub fn flip_alternating_cycle(
    g: &PlaneGraph,
    t: &AngularStructure,
    cycle: &[usize],
) -> Result<AngularStructure, AngularError> {
    let k = cycle.len();
    if k < 4 || k % 2 != 0 {
        return Err(AngularError::NotAlternating(format!("length {k}")));
    }
    let mut angles = Vec::with_capacity(k);
    for i in 0..k {
        let (a, b) = (cycle[i], cycle[(i + 1) % k]);
        let (v, f) = if a <= g.n() { (a, b) } else { (b, a) };
        if v > g.n() || f <= g.n() {
            return Err(AngularError::NotAlternating(format!(
                "nodes {a} and {b} are not a vertex and a face"
            )));
        }
        angles.push(lookup_angle(g, v, f)?);
    }
    let mut seen = HashSet::new();
    if !cycle.iter().all(|x| seen.insert(*x)) {
        return Err(AngularError::NotAlternating("repeated node".into()));
    }
    let first = t.contains(angles[0]);
    for (i, &a) in angles.iter().enumerate() {
        if t.contains(a) != (first == (i % 2 == 0)) {
            return Err(AngularError::NotAlternating(format!(
                "edges {} and {} have the same membership",
                i.max(1) - 1,
                i
            )));
        }
    }
    let mut out = t.clone();
    for a in angles {
        out.in_t[a] = !out.in_t[a];
    }
    Ok(out)
}

/// One repair flip performed while building the tree.
#[derive(Debug, Clone)]
pub struct FlipRecord {
    pub move_index: usize,
    /// Intermediate graph, present when its vertex ids are dense.
    pub graph: Option<PlaneGraph>,
    /// Structure before the flip (on `graph`).
    pub before: Option<AngularStructure>,
    /// The alternating 4-cycle as graph node ids (on `graph`).
    pub cycle: Option<Vec<usize>>,
}

/// Angle key: the angle at `.0` lying clockwise after neighbour `.1`.
type Key = (usize, usize);

struct TreeBuilder {
    e: Embedding,
    t: HashSet<Key>,
}

impl TreeBuilder {
    fn non_t(&self, walk: &[(usize, usize)], skip: &[usize]) -> usize {
        walk.iter()
            .filter(|&&(a, b)| !skip.contains(&b) && !self.t.contains(&(b, a)))
            .count()
    }

    fn h1(&mut self, m: &HennebergMove) -> Result<(), AngularError> {
        let HennebergMove::H1 {
            v,
            x,
            y,
            x_after: xa,
            y_after: ya,
        } = *m
        else {
            unreachable!()
        };
        let x_in = self.t.contains(&(x, xa));
        let y_in = self.t.contains(&(y, ya));
        self.e.apply(m)?;
        if x_in {
            self.t.insert((x, v));
        }
        if y_in {
            self.t.insert((y, v));
        }
        self.t.insert((v, x));
        self.t.insert((v, y));
        let fa = self.e.angle_face(v, x);
        let a = self.non_t(&fa, &[x, y, v]);
        match (x_in, y_in, a) {
            (true, true, 2) => {
                self.t.remove(&(x, v));
                self.t.remove(&(y, ya));
            }
            (true, true, 0) => {
                self.t.remove(&(x, xa));
                self.t.remove(&(y, v));
            }
            (true, true, _) => {
                self.t.remove(&(x, xa));
                self.t.remove(&(y, ya));
            }
            (true, false, 0) => {
                self.t.remove(&(x, xa));
            }
            (true, false, _) => {
                self.t.remove(&(x, v));
            }
            (false, true, 0) => {
                self.t.remove(&(y, v));
            }
            (false, true, _) => {
                self.t.remove(&(y, ya));
            }
            (false, false, _) => {}
        }
        Ok(())
    }

    /// Returns the flipped cycle as angle keys, if a flip was needed.
    fn h2(&mut self, m: &HennebergMove) -> Result<Option<[Key; 4]>, AngularError> {
        let HennebergMove::H2 {
            v,
            x,
            y,
            z,
            z_after: za,
        } = *m
        else {
            unreachable!()
        };
        let z_in = self.t.contains(&(z, za));
        self.e.apply(m)?;
        for (a, b) in [(x, y), (y, x)] {
            if self.t.remove(&(a, b)) {
                self.t.insert((a, v));
            }
        }
        // Normalise so that v's rotation reads [p, z, q].
        let r = self.e.rotation(v);
        let (p, q) = (r[0], r[2]);
        if z_in {
            self.t.insert((z, v));
        }
        self.t.insert((v, q));
        let fp = self.e.angle_face(v, p);
        let ap = self.non_t(&fp, &[z, v]);
        match (z_in, ap) {
            (false, 0) => {
                self.t.insert((v, z));
            }
            (false, _) => {
                self.t.insert((v, p));
            }
            (true, 2) => {
                self.t.insert((v, p));
                self.t.remove(&(z, za));
            }
            (true, 0) => {
                self.t.insert((v, z));
                self.t.remove(&(z, v));
            }
            (true, _) => {
                self.t.insert((v, p));
                self.t.remove(&(z, v));
            }
        }

        // v's T angles: (v, q) in f', and (v, p) in f_p or (v, z) in f_q.
        let (vc, vo, fc_is_p) = if self.t.contains(&(v, p)) {
            ((v, p), (v, z), true)
        } else {
            ((v, z), (v, p), false)
        };
        if !self.connected_without(v, (v, q), vc) {
            return Ok(None);
        }
        // z's angles: (z, v) in f_p and (z, za) in f_q.
        let (z_fc, z_fo) = if fc_is_p {
            ((z, v), (z, za))
        } else {
            ((z, za), (z, v))
        };
        if self.t.contains(&z_fo) {
            self.t.remove(&z_fo);
            self.t.remove(&vc);
            self.t.insert(z_fc);
            self.t.insert(vo);
            return Ok(Some([z_fo, z_fc, vc, vo]));
        }
        // y' is the endpoint of the subdivided edge lying on the open face.
        let (y_fo, y_f1) = if fc_is_p {
            ((q, v), (q, self.e.pred(q, v)))
        } else {
            ((p, self.e.pred(p, v)), (p, v))
        };
        if !self.t.contains(&y_fo) || self.t.contains(&y_f1) {
            return Err(AngularError::Internal(
                "H2 repair: expected alternating cycle through the subdivided edge".into(),
            ));
        }
        self.t.remove(&y_fo);
        self.t.remove(&(v, q));
        self.t.insert(y_f1);
        self.t.insert(vo);
        Ok(Some([y_fo, y_f1, (v, q), vo]))
    }

    /// Whether the faces of angles `from` and `to` are joined in `T - v`.
    fn connected_without(&self, v: usize, from: Key, to: Key) -> bool {
        let target = self.e.angle_face(to.0, to.1);
        let target: HashSet<(usize, usize)> = target.into_iter().collect();
        let mut seen_darts: HashSet<(usize, usize)> = HashSet::new();
        let mut seen_vertices: HashSet<usize> = HashSet::from([v]);
        let mut queue = VecDeque::new();
        queue.push_back(from);
        while let Some((w, a)) = queue.pop_front() {
            if seen_darts.contains(&(a, w)) {
                continue;
            }
            let walk = self.e.angle_face(w, a);
            if walk.iter().any(|d| target.contains(d)) {
                return true;
            }
            seen_darts.extend(walk.iter().copied());
            for &(a2, b) in &walk {
                if self.t.contains(&(b, a2)) && seen_vertices.insert(b) {
                    for &c in self.e.rotation(b) {
                        if self.t.contains(&(b, c)) && !seen_darts.contains(&(c, b)) {
                            queue.push_back((b, c));
                        }
                    }
                }
            }
        }
        false
    }

    fn structure_on(&self, g: &PlaneGraph) -> Result<AngularStructure, AngularError> {
        let mut out = AngularStructure::empty(g);
        for &(w, a) in &self.t {
            let d = g.dart(a, w).ok_or(AngularError::SequenceMismatch)?;
            out.in_t[d] = true;
        }
        Ok(out)
    }
}

fn build_tree(
    g: &PlaneGraph,
    s: &HennebergSequence,
    trace: Option<&mut Vec<FlipRecord>>,
) -> Result<AngularStructure, AngularError> {
    if !g.is_two_connected() {
        return Err(AngularError::NotTwoConnected);
    }
    if s.base != g.outer() {
        return Err(AngularError::SequenceMismatch);
    }
    let [v1, v2, v3] = s.base;
    let mut b = TreeBuilder {
        e: Embedding::triangle(s.base),
        t: HashSet::from([(v3, v1), (v3, v2)]),
    };
    let mut trace = trace;
    for (i, m) in s.moves.iter().enumerate() {
        match m {
            HennebergMove::H1 { .. } => b.h1(m)?,
            HennebergMove::H2 { .. } => {
                if let Some(cycle) = b.h2(m)? {
                    if let Some(log) = trace.as_deref_mut() {
                        log.push(flip_record(&b, i, cycle));
                    }
                }
            }
        }
    }
    let built = b.e.to_graph()?;
    if !built.same_embedding(g) {
        return Err(AngularError::SequenceMismatch);
    }
    let t = b.structure_on(g)?;
    match check_angular_structure(g, &t) {
        StructureVerdict::ValidTree => Ok(t),
        other => Err(AngularError::Internal(format!(
            "incremental construction produced {other:?}"
        ))),
    }
}

/// Reconstructs the pre-flip state on the intermediate graph.
fn flip_record(b: &TreeBuilder, move_index: usize, cycle: [Key; 4]) -> FlipRecord {
    let Ok(graph) = b.e.to_graph() else {
        return FlipRecord {
            move_index,
            graph: None,
            before: None,
            cycle: None,
        };
    };
    let mut pre = b.t.clone();
    let [removed_a, added_a, removed_b, added_b] = cycle;
    pre.insert(removed_a);
    pre.insert(removed_b);
    pre.remove(&added_a);
    pre.remove(&added_b);
    let tmp = TreeBuilder {
        e: b.e.clone(),
        t: pre,
    };
    let before = tmp.structure_on(&graph).ok();
    let nodes = cycle.map(|(w, a)| {
        let d = graph.dart(a, w).unwrap();
        (w, graph.angle_face(d))
    });
    // (removed_a, added_a) share the vertex; (removed_b, added_b) share v.
    let cycle = vec![nodes[0].0, nodes[0].1, nodes[3].0, nodes[1].1];
    FlipRecord {
        move_index,
        graph: Some(graph),
        before,
        cycle: Some(cycle),
    }
}

/// Builds an angular tree of `g` along the sequence `s`.
pub fn compute_angular_tree(
    g: &PlaneGraph,
    s: &HennebergSequence,
) -> Result<AngularStructure, AngularError> {
    build_tree(g, s, None)
}

/// Same as [`compute_angular_tree`] but also reports every repair flip.
pub fn compute_angular_tree_traced(
    g: &PlaneGraph,
    s: &HennebergSequence,
) -> Result<(AngularStructure, Vec<FlipRecord>), AngularError> {
    let mut log = Vec::new();
    let t = build_tree(g, s, Some(&mut log))?;
    Ok((t, log))
}

/// Perfect matching between non-special vertices and inner faces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngularMatching {
    pub face_to_vertex: BTreeMap<usize, usize>,
    pub vertex_to_face: BTreeMap<usize, usize>,
}

impl AngularMatching {
    pub fn len(&self) -> usize {
        self.face_to_vertex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.face_to_vertex.is_empty()
    }

    /// The angle of `v` in its matched face.
    pub fn matched_angle(&self, g: &PlaneGraph, v: usize) -> Option<usize> {
        self.vertex_to_face.get(&v).and_then(|&f| g.angle_of(v, f))
    }
}

pub fn derive_matching(
    g: &PlaneGraph,
    t: &AngularStructure,
) -> Result<AngularMatching, AngularError> {
    if check_angular_structure(g, t) != StructureVerdict::ValidTree {
        return Err(AngularError::NotATree);
    }
    let outer = g.outer_face();
    let outer_t: Vec<usize> = g
        .face(outer)
        .darts
        .iter()
        .copied()
        .filter(|&a| t.contains(a))
        .collect();
    if outer_t.len() != 1 {
        return Err(AngularError::OuterNotLeaf);
    }
    let root = g.angle_vertex(outer_t[0]);
    let mut face_to_vertex = BTreeMap::new();
    let mut vertex_to_face = BTreeMap::new();
    let mut seen = vec![false; g.node_count() + 1];
    seen[outer] = true;
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(node) = queue.pop_front() {
        if node <= g.n() {
            for a in g.angles_at(node).filter(|&a| t.contains(a)) {
                let f = g.angle_face(a);
                if !seen[f] {
                    seen[f] = true;
                    face_to_vertex.insert(f, node);
                    vertex_to_face.insert(node, f);
                    queue.push_back(f);
                }
            }
        } else {
            for &a in &g.face(node).darts {
                let w = g.angle_vertex(a);
                if t.contains(a) && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(AngularMatching {
        face_to_vertex,
        vertex_to_face,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::henneberg::{decompose, random_sequence, replay};
    use proptest::prelude::*;

    #[test]
    fn angular_graph_sizes() {
        let a = build_angular_graph(&k3()).unwrap();
        assert_eq!((a.node_count(), a.edge_count()), (5, 6));
        let a = build_angular_graph(&k3_plus()).unwrap();
        assert_eq!((a.node_count(), a.edge_count()), (7, 10));
        let pendant = PlaneGraph::new(
            vec![vec![3, 4, 2], vec![1, 3], vec![2, 1], vec![1]],
            [1, 2, 3],
        )
        .unwrap();
        assert_eq!(
            build_angular_graph(&pendant).unwrap_err(),
            AngularError::NotTwoConnected
        );
    }

    #[test]
    fn triangle_structures() {
        let g = k3();
        let (fin, fout) = (5, 4);
        let t = AngularStructure::from_pairs(&g, &[(3, fin), (3, fout)]).unwrap();
        assert_eq!(check_angular_structure(&g, &t), StructureVerdict::ValidTree);
        let bad = AngularStructure::from_pairs(&g, &[(1, fin), (1, fout)]).unwrap();
        assert_eq!(
            check_angular_structure(&g, &bad),
            StructureVerdict::Invalid {
                rule: DegreeRule::Vertex,
                node: 1
            }
        );
        let s = decompose(&g).unwrap();
        assert_eq!(compute_angular_tree(&g, &s).unwrap(), t);
    }

    #[test]
    fn k3_plus_tree_and_matching() {
        let g = k3_plus();
        let s = decompose(&g).unwrap();
        let t = compute_angular_tree(&g, &s).unwrap();
        assert_eq!(t.len(), 4);
        let m = derive_matching(&g, &t).unwrap();
        assert_eq!(m.len(), 2);
        let matched: Vec<_> = m.vertex_to_face.keys().copied().collect();
        assert_eq!(matched, vec![3, 4]);
        let faces: HashSet<_> = m.face_to_vertex.keys().copied().collect();
        assert_eq!(faces.len(), 2);
        assert!(!faces.contains(&g.outer_face()));
        for (&v, &f) in &m.vertex_to_face {
            assert!(t.contains(g.angle_of(v, f).unwrap()));
        }
    }

    #[test]
    fn flip_is_an_involution_and_checks_alternation() {
        let mut found = false;
        for seed in 0..20 {
            let g = crate::henneberg::generate(7, seed);
            let t = compute_angular_tree(&g, &decompose(&g).unwrap()).unwrap();
            for (v, w) in g.edges() {
                let d = g.dart(v, w).unwrap();
                let (f1, f2) = (g.dart_face(d), g.dart_face(g.twin(d)));
                let cycle = [v, f1, w, f2];
                match flip_alternating_cycle(&g, &t, &cycle) {
                    Ok(flipped) => {
                        assert!(!matches!(
                            check_angular_structure(&g, &flipped),
                            StructureVerdict::Invalid { .. }
                        ));
                        let back = flip_alternating_cycle(&g, &flipped, &cycle).unwrap();
                        assert_eq!(back, t);
                        found = true;
                    }
                    Err(e) => assert!(matches!(e, AngularError::NotAlternating(_))),
                }
            }
        }
        assert!(found);
        let g = k3();
        let t = AngularStructure::from_pairs(&g, &[(3, 5), (3, 4)]).unwrap();
        assert!(matches!(
            flip_alternating_cycle(&g, &t, &[1, 4, 2, 5]),
            Err(AngularError::NotAlternating(_))
        ));
        assert!(matches!(
            flip_alternating_cycle(&g, &t, &[1, 5]),
            Err(AngularError::NotAlternating(_))
        ));
    }

    #[test]
    fn matching_requires_tree() {
        let g = k3();
        let t = AngularStructure::from_pairs(&g, &[(3, 5)]).unwrap();
        assert_eq!(derive_matching(&g, &t).unwrap_err(), AngularError::NotATree);
    }

    #[test]
    fn json_lists_pairs() {
        let g = k3();
        let t = AngularStructure::from_pairs(&g, &[(3, 5), (3, 4)]).unwrap();
        let json = t.to_json(&g);
        assert_eq!(json.kind, "tree");
        assert_eq!(json.edges, vec![[3, 4], [3, 5]]);
        assert_eq!(AngularStructure::from_json(&g, &json).unwrap(), t);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]
        #[test]
        fn random_sequences_give_trees(n in 3usize..45, seed in any::<u64>()) {
            let s = random_sequence(n, seed);
            let g = replay(&s).unwrap();
            let (t, flips) = compute_angular_tree_traced(&g, &s).unwrap();
            prop_assert_eq!(check_angular_structure(&g, &t), StructureVerdict::ValidTree);
            prop_assert_eq!(t.len(), 2 * n - 4);
            let m = derive_matching(&g, &t).unwrap();
            prop_assert_eq!(m.len(), n - 2);
            for rec in flips {
                let (graph, before, cycle) =
                    (rec.graph.unwrap(), rec.before.unwrap(), rec.cycle.unwrap());
                prop_assert_eq!(check_angular_structure(&graph, &before), StructureVerdict::ValidNotTree);
                let after = flip_alternating_cycle(&graph, &before, &cycle).unwrap();
                prop_assert_eq!(check_angular_structure(&graph, &after), StructureVerdict::ValidTree);
            }
            let d = decompose(&g).unwrap();
            let t2 = compute_angular_tree(&g, &d).unwrap();
            prop_assert_eq!(check_angular_structure(&g, &t2), StructureVerdict::ValidTree);
        }
    }
}
