//! Angle labelings and red/blue edge labelings derived from an angular
//! structure, with verifiers for their defining rules.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angular::{check_angular_structure, AngularStructure, StructureVerdict};
use crate::graph::PlaneGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("angular structure violates a degree rule: {0:?}")]
    InvalidStructure(StructureVerdict),
    #[error("angular structure is not a tree")]
    NotATree,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// Labels in `{1, 2, 3, 4}` indexed by angle id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleLabeling {
    labels: Vec<u8>,
}

impl AngleLabeling {
    pub fn from_labels(labels: Vec<u8>) -> Self {
        AngleLabeling { labels }
    }

    pub fn label(&self, angle: usize) -> u8 {
        self.labels[angle]
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// JSON object keyed `"v:f"`.
    pub fn to_json(&self, g: &PlaneGraph) -> BTreeMap<String, u8> {
        let mut keyed: Vec<_> = (0..g.num_darts())
            .map(|a| ((g.angle_vertex(a), g.angle_face(a)), self.labels[a]))
            .collect();
        keyed.sort_unstable();
        keyed
            .into_iter()
            .map(|((v, f), l)| (format!("{v}:{f}"), l))
            .collect()
    }
}

/// Propagates the separating-decomposition colouring of the angular graph
/// outwards from the special vertices.
fn separating_colors(g: &PlaneGraph, t: &AngularStructure) -> Result<Vec<Color>, LabelingError> {
    let (v1, v2) = g.special();
    let mut color: Vec<Option<Color>> = vec![None; g.num_darts()];
    let mut queue = VecDeque::new();
    for (s, c) in [(v1, Color::Blue), (v2, Color::Red)] {
        for a in g.angles_at(s) {
            color[a] = Some(c);
            queue.push_back(g.angle_face(a));
        }
    }
    let mut done = vec![false; g.node_count() + 1];
    done[v1] = true;
    done[v2] = true;
    while let Some(node) = queue.pop_front() {
        if done[node] {
            continue;
        }
        done[node] = true;
        let (list, out_is_t): (Vec<usize>, bool) = if node <= g.n() {
            (g.angles_at(node).collect(), true)
        } else {
            (g.face(node).darts.clone(), false)
        };
        let outs: Vec<usize> = (0..list.len())
            .filter(|&i| t.contains(list[i]) == out_is_t)
            .collect();
        if outs.len() != 2 {
            return Err(LabelingError::Internal(format!(
                "node {node} has {} outgoing edges",
                outs.len()
            )));
        }
        // Segment k runs from outs[k] up to (excluding) the other out-edge.
        let segment = |i: usize| {
            let (a, b) = (outs[0], outs[1]);
            usize::from(!(a <= i && i < b))
        };
        let mut seg_color: [Option<Color>; 2] = [None, None];
        for (i, &a) in list.iter().enumerate() {
            if let Some(c) = color[a] {
                seg_color[segment(i)] = Some(c);
            }
        }
        let c0 = match seg_color {
            [Some(c), _] => c,
            [None, Some(c)] => c.other(),
            [None, None] => {
                return Err(LabelingError::Internal(format!(
                    "node {node} reached without a coloured edge"
                )))
            }
        };
        let seg = [c0, c0.other()];
        for (i, &a) in list.iter().enumerate() {
            let c = seg[segment(i)];
            match color[a] {
                Some(old) if old != c => {
                    return Err(LabelingError::Internal(format!(
                        "conflicting colours at node {node}"
                    )))
                }
                Some(_) => {}
                None => {
                    color[a] = Some(c);
                    let other = if node <= g.n() {
                        g.angle_face(a)
                    } else {
                        g.angle_vertex(a)
                    };
                    queue.push_back(other);
                }
            }
        }
    }
    color
        .into_iter()
        .map(|c| c.ok_or_else(|| LabelingError::Internal("uncoloured angle".into())))
        .collect()
}

pub fn angle_labeling_from_structure(
    g: &PlaneGraph,
    t: &AngularStructure,
) -> Result<AngleLabeling, LabelingError> {
    if let v @ StructureVerdict::Invalid { .. } = check_angular_structure(g, t) {
        return Err(LabelingError::InvalidStructure(v));
    }
    let colors = separating_colors(g, t)?;
    let labels = (0..g.num_darts())
        .map(|a| match (t.contains(a), colors[a]) {
            (false, Color::Blue) => 1,
            (false, Color::Red) => 2,
            (true, Color::Red) => 3,
            (true, Color::Blue) => 4,
        })
        .collect();
    Ok(AngleLabeling { labels })
}

pub fn structure_from_angle_labeling(g: &PlaneGraph, l: &AngleLabeling) -> AngularStructure {
    AngularStructure::from_angles(g, (0..g.num_darts()).filter(|&a| l.label(a) >= 3))
}

/// Cyclic sequence of the form `a b* c d*` with exactly one `a` and one `c`.
fn cyclic_pattern(seq: &[u8], [a, b, c, d]: [u8; 4]) -> bool {
    let Some(start) = seq.iter().position(|&x| x == a) else {
        return false;
    };
    let mut phase = 0;
    for k in 1..seq.len() {
        let x = seq[(start + k) % seq.len()];
        phase = match (phase, x) {
            (0, x) if x == b => 0,
            (0 | 1, x) if x == c => 2,
            (2 | 3, x) if x == d => 3,
            _ => return false,
        };
    }
    phase >= 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelViolation {
    pub rule: String,
    pub node: usize,
}

pub fn check_angle_labeling(g: &PlaneGraph, l: &AngleLabeling) -> Result<(), LabelViolation> {
    let (v1, v2) = g.special();
    for v in g.vertices() {
        let seq: Vec<u8> = g.angles_at(v).map(|a| l.label(a)).collect();
        let ok = if v == v1 {
            seq.iter().all(|&x| x == 1)
        } else if v == v2 {
            seq.iter().all(|&x| x == 2)
        } else {
            cyclic_pattern(&seq, [3, 2, 4, 1])
        };
        if !ok {
            return Err(LabelViolation {
                rule: "vertex".into(),
                node: v,
            });
        }
    }
    for f in g.faces() {
        let seq: Vec<u8> = f.darts.iter().rev().map(|&a| l.label(a)).collect();
        if !cyclic_pattern(&seq, [1, 3, 2, 4]) {
            return Err(LabelViolation {
                rule: "face".into(),
                node: f.id,
            });
        }
    }
    Ok(())
}

/// Directed red and blue edges, each `[tail, head]`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLabeling {
    pub red: Vec<[usize; 2]>,
    pub blue: Vec<[usize; 2]>,
}

impl EdgeLabeling {
    pub fn len(&self) -> usize {
        self.red.len() + self.blue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Outgoing red and blue neighbour per vertex.
    pub fn out_neighbors(&self, n: usize) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut red = vec![None; n + 1];
        let mut blue = vec![None; n + 1];
        for &[u, v] in &self.red {
            red[u] = Some(v);
        }
        for &[u, v] in &self.blue {
            blue[u] = Some(v);
        }
        (red, blue)
    }
}

pub fn edge_labeling_from_angular_tree(
    g: &PlaneGraph,
    t: &AngularStructure,
) -> Result<EdgeLabeling, LabelingError> {
    match check_angular_structure(g, t) {
        StructureVerdict::ValidTree => {}
        StructureVerdict::ValidNotTree => return Err(LabelingError::NotATree),
        v => return Err(LabelingError::InvalidStructure(v)),
    }
    let labels = angle_labeling_from_structure(g, t)?;
    let (v1, v2) = g.special();

    // Split node of every dart's tail: 2 * v + side, side 0 for v^1.
    let mut side = vec![0usize; g.num_darts()];
    for v in g.vertices() {
        if g.is_special(v) {
            continue;
        }
        let deg = g.degree(v);
        let angles: Vec<usize> = g.angles_at(v).collect();
        let p3 = angles.iter().position(|&a| labels.label(a) == 3).unwrap();
        let p4 = angles.iter().position(|&a| labels.label(a) == 4).unwrap();
        // edges p3 + 1 ..= p4 lie clockwise between the 3- and 4-angle
        let mut i = (p3 + 1) % deg;
        loop {
            side[g.dart_at(v, i)] = 1;
            if i == p4 {
                break;
            }
            i = (i + 1) % deg;
        }
    }
    let node = |d: usize| {
        let v = g.tail(d);
        if g.is_special(v) {
            2 * v
        } else {
            2 * v + side[d]
        }
    };

    let size = 2 * (g.n() + 1);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    for d in 0..g.num_darts() {
        if g.tail(d) < g.head(d) && !g.is_special_edge(g.tail(d), g.head(d)) {
            adj[node(d)].push(d);
            adj[node(g.twin(d))].push(g.twin(d));
        }
    }
    // Orient every edge of the split tree towards the special edge.
    let mut seen = vec![false; size];
    seen[2 * v1] = true;
    seen[2 * v2] = true;
    let mut queue = VecDeque::from([2 * v1, 2 * v2]);
    let mut red = Vec::new();
    let mut blue = Vec::new();
    let mut visited = 2;
    while let Some(x) = queue.pop_front() {
        for &d in &adj[x] {
            // d leaves x; the edge is oriented from the far end towards x
            let back = g.twin(d);
            let y = node(back);
            if seen[y] {
                continue;
            }
            seen[y] = true;
            visited += 1;
            queue.push_back(y);
            let (u, w) = (g.tail(back), g.head(back));
            if side[back] == 1 {
                red.push([u, w]);
            } else {
                blue.push([u, w]);
            }
        }
    }
    let expected = 2 * g.n() - 2;
    if visited != expected || red.len() + blue.len() + 1 != g.num_edges() {
        return Err(LabelingError::Internal(format!(
            "split graph is not a tree ({visited} of {expected} nodes reached)"
        )));
    }
    red.sort_unstable();
    blue.sort_unstable();
    Ok(EdgeLabeling { red, blue })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeRuleKind {
    Coverage,
    Vertex,
    Face,
    Edge,
    Acyclic,
    SpanningTree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLabelingViolation {
    pub rule: EdgeRuleKind,
    pub detail: String,
}

/// Facts derived while verifying an edge labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabelingReport {
    pub red_sink: BTreeMap<usize, usize>,
    pub blue_sink: BTreeMap<usize, usize>,
    /// Associated inner face per directed non-special edge `(tail, head)`.
    pub edge_face: BTreeMap<(usize, usize), usize>,
    /// Per dart: colour if the edge is directed along the dart.
    pub dart_color: Vec<Option<Color>>,
}

impl EdgeLabelingReport {
    pub fn sink(&self, f: usize, c: Color) -> usize {
        match c {
            Color::Red => self.red_sink[&f],
            Color::Blue => self.blue_sink[&f],
        }
    }
}

fn violation<T>(rule: EdgeRuleKind, detail: String) -> Result<T, EdgeLabelingViolation> {
    Err(EdgeLabelingViolation { rule, detail })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    OutRed,
    OutBlue,
    InRed,
    InBlue,
}

fn kind_at(dart_color: &[Option<Color>], g: &PlaneGraph, d: usize) -> Option<Kind> {
    // d leaves the vertex in question
    if let Some(c) = dart_color[d] {
        return Some(if c == Color::Red {
            Kind::OutRed
        } else {
            Kind::OutBlue
        });
    }
    dart_color[g.twin(d)].map(|c| {
        if c == Color::Red {
            Kind::InRed
        } else {
            Kind::InBlue
        }
    })
}

/// Topological check on a directed graph over vertices `1..=n`.
fn is_acyclic(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; n + 1];
    let mut out = vec![Vec::new(); n + 1];
    for &(a, b) in arcs {
        out[a].push(b);
        indeg[b] += 1;
    }
    let mut stack: Vec<usize> = (1..=n).filter(|&v| indeg[v] == 0).collect();
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    count == n
}

pub fn verify_edge_labeling(
    g: &PlaneGraph,
    l: &EdgeLabeling,
) -> Result<EdgeLabelingReport, EdgeLabelingViolation> {
    use EdgeRuleKind::*;
    let (v1, v2) = g.special();
    let mut dart_color: Vec<Option<Color>> = vec![None; g.num_darts()];
    for (list, c) in [(&l.red, Color::Red), (&l.blue, Color::Blue)] {
        for &[u, v] in list.iter() {
            let Some(d) = g.dart(u, v) else {
                return violation(Coverage, format!("{u}->{v} is not an edge"));
            };
            if g.is_special_edge(u, v) {
                return violation(Coverage, "special edge must stay unlabelled".into());
            }
            if dart_color[d].is_some() || dart_color[g.twin(d)].is_some() {
                return violation(Coverage, format!("edge {u}-{v} labelled twice"));
            }
            dart_color[d] = Some(c);
        }
    }
    for (u, v) in g.edges() {
        if !g.is_special_edge(u, v) {
            let d = g.dart(u, v).unwrap();
            if dart_color[d].is_none() && dart_color[g.twin(d)].is_none() {
                return violation(Coverage, format!("edge {u}-{v} unlabelled"));
            }
        }
    }

    // Vertex rule.
    for v in g.vertices() {
        let kinds: Vec<Option<Kind>> = (0..g.degree(v))
            .map(|i| kind_at(&dart_color, g, g.dart_at(v, i)))
            .collect();
        if v == v1 || v == v2 {
            let want = if v == v1 { Kind::InRed } else { Kind::InBlue };
            let ok = kinds.iter().all(|k| k.is_none() || *k == Some(want));
            if !ok {
                return violation(Vertex, format!("special vertex {v}"));
            }
            continue;
        }
        let seq: Vec<u8> = kinds
            .iter()
            .map(|k| match k.unwrap() {
                Kind::OutRed => 0,
                Kind::InBlue => 1,
                Kind::InRed => 2,
                Kind::OutBlue => 3,
            })
            .collect();
        // out-red, in-blue*, in-red*, out-blue, in-red*, in-blue*
        let Some(start) = seq.iter().position(|&x| x == 0) else {
            return violation(Vertex, format!("vertex {v} has no outgoing red edge"));
        };
        let mut phase = 0;
        for k in 1..seq.len() {
            let x = seq[(start + k) % seq.len()];
            phase = match (phase, x) {
                (0, 1) => 0,
                (0 | 1, 2) => 1,
                (0 | 1, 3) => 2,
                (2, 2) => 2,
                (2 | 3, 1) => 3,
                _ => return violation(Vertex, format!("vertex {v}")),
            };
        }
        if phase < 2 {
            return violation(Vertex, format!("vertex {v} has no outgoing blue edge"));
        }
    }

    // Face rule. The special edge counts as red v2 -> v1.
    let red_along = |d: usize| -> Option<(Color, bool)> {
        let (a, b) = (g.tail(d), g.head(d));
        if g.is_special_edge(a, b) {
            return Some((Color::Red, a == v2));
        }
        dart_color[d]
            .map(|c| (c, true))
            .or_else(|| dart_color[g.twin(d)].map(|c| (c, false)))
    };
    let mut red_sink = BTreeMap::new();
    let mut blue_sink = BTreeMap::new();
    for f in g.inner_faces() {
        let k = f.darts.len();
        // at vertices[i]: incoming dart darts[i], outgoing darts[i + 1]
        let mut rs = Vec::new();
        let mut bs = Vec::new();
        for i in 0..k {
            let (cin, fin) = red_along(f.darts[i]).unwrap();
            let (cout, fout) = red_along(f.darts[(i + 1) % k]).unwrap();
            // "rho": points towards this vertex if red, away if blue
            let rho_in = (cin == Color::Red) == fin;
            let rho_out = (cout == Color::Red) != fout;
            if rho_in && rho_out {
                rs.push(i);
            }
            if !rho_in && !rho_out {
                bs.push(i);
            }
        }
        if rs.len() != 1 || bs.len() != 1 {
            return violation(
                Face,
                format!(
                    "face {} has {} red and {} blue sinks",
                    f.id,
                    rs.len(),
                    bs.len()
                ),
            );
        }
        let (r, b) = (rs[0], bs[0]);
        // walking from b to r, red edges point forward and blue backward
        let mut i = b;
        let mut towards_r = true;
        for _ in 0..k {
            let d = f.darts[(i + 1) % k];
            let (c, fwd) = red_along(d).unwrap();
            if (c == Color::Red) != (fwd == towards_r) {
                return violation(
                    Face,
                    format!("face {} edge {}-{}", f.id, g.tail(d), g.head(d)),
                );
            }
            i = (i + 1) % k;
            if i == r {
                towards_r = false;
            }
        }
        red_sink.insert(f.id, f.vertices[r]);
        blue_sink.insert(f.id, f.vertices[b]);
    }

    // Edge rule: associate each edge with a face at its head.
    let mut edge_face = BTreeMap::new();
    let mut slots = BTreeMap::new();
    for v in g.vertices() {
        let deg = g.degree(v);
        let kinds: Vec<Kind> = (0..deg)
            .map(|i| kind_at(&dart_color, g, g.dart_at(v, i)).unwrap_or(Kind::OutBlue))
            .collect();
        let pr = kinds.iter().position(|&k| k == Kind::OutRed);
        let pb = kinds.iter().position(|&k| k == Kind::OutBlue);
        for i in 0..deg {
            let d = g.dart_at(v, i);
            if g.is_special_edge(v, g.head(d)) {
                continue;
            }
            let color = match kinds[i] {
                Kind::InRed => Color::Red,
                Kind::InBlue => Color::Blue,
                _ => continue,
            };
            // angle index i lies clockwise after edge i, i - 1 before it
            let after = if v == v1 {
                true
            } else if v == v2 {
                false
            } else {
                let (pr, pb) = (pr.unwrap(), pb.unwrap());
                let in_first_arc = (i + deg - pr) % deg < (pb + deg - pr) % deg;
                match (color, in_first_arc) {
                    (Color::Blue, true) => false, // B2
                    (Color::Red, true) => true,   // R1
                    (Color::Red, false) => false, // R2
                    (Color::Blue, false) => true, // B1
                }
            };
            let angle_idx = if after { i } else { (i + deg - 1) % deg };
            let angle = g.twin(g.dart_at(v, angle_idx));
            let f = g.angle_face(angle);
            let u = g.head(d);
            let sink = match color {
                Color::Red => red_sink.get(&f),
                Color::Blue => blue_sink.get(&f),
            };
            if sink != Some(&v) {
                return violation(
                    Edge,
                    format!("edge {u}->{v} is associated with face {f} where {v} is not its sink"),
                );
            }
            if slots.insert((f, color), (u, v)).is_some() {
                return violation(Edge, format!("face {f} {color:?} sink claimed twice"));
            }
            edge_face.insert((u, v), f);
        }
    }
    if slots.len() != 2 * g.inner_faces().count() {
        return violation(Edge, "association is not onto the sink slots".into());
    }

    // Acyclicity of E_r + reversed E_b and of E_b + reversed E_r.
    let red: Vec<(usize, usize)> = l.red.iter().map(|&[a, b]| (a, b)).collect();
    let blue: Vec<(usize, usize)> = l.blue.iter().map(|&[a, b]| (a, b)).collect();
    let mixed_r: Vec<_> = red
        .iter()
        .copied()
        .chain(blue.iter().map(|&(a, b)| (b, a)))
        .collect();
    let mixed_b: Vec<_> = blue
        .iter()
        .copied()
        .chain(red.iter().map(|&(a, b)| (b, a)))
        .collect();
    if !is_acyclic(g.n(), &mixed_r) || !is_acyclic(g.n(), &mixed_b) {
        return violation(Acyclic, "mixed orientation has a directed cycle".into());
    }

    // Spanning trees towards v1 (red) and v2 (blue).
    for (arcs, root, excluded, name) in [(&red, v1, v2, "red"), (&blue, v2, v1, "blue")] {
        let mut next = vec![None; g.n() + 1];
        for &(a, b) in arcs.iter() {
            if a == excluded || b == excluded || next[a].replace(b).is_some() {
                return violation(SpanningTree, format!("{name} edges at {a}"));
            }
        }
        for v in g.vertices() {
            if v == excluded {
                continue;
            }
            let mut x = v;
            let mut steps = 0;
            while x != root {
                match next[x] {
                    Some(y) if steps <= g.n() => {
                        x = y;
                        steps += 1;
                    }
                    _ => {
                        return violation(
                            SpanningTree,
                            format!("{name} path from {v} does not reach {root}"),
                        )
                    }
                }
            }
        }
    }

    Ok(EdgeLabelingReport {
        red_sink,
        blue_sink,
        edge_face,
        dart_color,
    })
}
