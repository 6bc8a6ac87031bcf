//! L-shape types, the inequality graphs `D_r` / `D_b`, grid coordinates and
//! the emitted L-contact representation.

mod validate;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angular::AngularMatching;
use crate::graph::PlaneGraph;
use crate::labeling::{Color, EdgeLabeling, EdgeLabelingReport};

pub use validate::{validate_representation, Clause, ReprViolation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LContactError {
    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),
    #[error("cycle detected in {0}")]
    CycleDetected(&'static str),
}

fn inconsistent<T>(msg: String) -> Result<T, LContactError> {
    Err(LContactError::InconsistentInputs(msg))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

/// Quadrant spanned by the two legs of an L-shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quadrant {
    I,
    II,
    III,
    IV,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV];

    /// From the horizontal (red) and vertical (blue) leg directions.
    pub fn from_signs(red: Sign, blue: Sign) -> Quadrant {
        match (red, blue) {
            (Sign::Plus, Sign::Plus) => Quadrant::I,
            (Sign::Minus, Sign::Plus) => Quadrant::II,
            (Sign::Minus, Sign::Minus) => Quadrant::III,
            (Sign::Plus, Sign::Minus) => Quadrant::IV,
        }
    }

    pub fn signs(self) -> (Sign, Sign) {
        match self {
            Quadrant::I => (Sign::Plus, Sign::Plus),
            Quadrant::II => (Sign::Minus, Sign::Plus),
            Quadrant::III => (Sign::Minus, Sign::Minus),
            Quadrant::IV => (Sign::Plus, Sign::Minus),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// `self + k` modulo 4.
    pub fn shift(self, k: isize) -> Quadrant {
        Quadrant::ALL[(self.index() as isize + k).rem_euclid(4) as usize]
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Red and blue signs plus parity, indexed by vertex id (slot 0 unused).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexTypes {
    pub red: Vec<Sign>,
    pub blue: Vec<Sign>,
    pub odd: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeEntry {
    pub v: usize,
    pub t_r: Sign,
    pub t_b: Sign,
    #[serde(rename = "type")]
    pub ty: Quadrant,
    pub odd: bool,
}

impl VertexTypes {
    pub fn quadrant(&self, v: usize) -> Quadrant {
        Quadrant::from_signs(self.red[v], self.blue[v])
    }

    pub fn sign(&self, v: usize, c: Color) -> Sign {
        match c {
            Color::Red => self.red[v],
            Color::Blue => self.blue[v],
        }
    }

    pub fn to_json(&self, g: &PlaneGraph) -> Vec<TypeEntry> {
        g.vertices()
            .map(|v| TypeEntry {
                v,
                t_r: self.red[v],
                t_b: self.blue[v],
                ty: self.quadrant(v),
                odd: self.odd[v],
            })
            .collect()
    }
}

/// Position data of the outgoing edges and the matched angle at a vertex.
struct Local {
    deg: usize,
    pr: usize,
    pb: usize,
    odd: bool,
}

impl Local {
    /// Rotation index `i` lies strictly inside the clockwise arc from the
    /// outgoing blue edge to the outgoing red edge.
    fn in_blue_red_arc(&self, i: usize) -> bool {
        let d = (i + self.deg - self.pb) % self.deg;
        d > 0 && d < (self.pr + self.deg - self.pb) % self.deg
    }

    fn in_matched(&self, i: usize) -> bool {
        self.in_blue_red_arc(i) == self.odd
    }
}

fn locals(
    g: &PlaneGraph,
    l: &EdgeLabeling,
    m: &AngularMatching,
) -> Result<Vec<Option<Local>>, LContactError> {
    let (red, blue) = l.out_neighbors(g.n());
    let mut out = Vec::with_capacity(g.n() + 1);
    out.push(None);
    for v in g.vertices() {
        if g.is_special(v) {
            out.push(None);
            continue;
        }
        let (Some(r), Some(b)) = (red[v], blue[v]) else {
            return inconsistent(format!("vertex {v} lacks an outgoing edge"));
        };
        let pos = |w: usize| g.dart_pos(g.dart(v, w).unwrap());
        let Some(angle) = m.matched_angle(g, v) else {
            return inconsistent(format!("vertex {v} is unmatched"));
        };
        let (pr, pb) = (pos(r), pos(b));
        let deg = g.degree(v);
        let p = g.angle_pos(angle);
        // angle p lies between rotation entries p and p + 1
        let odd = (p + deg - pb) % deg < (pr + deg - pb) % deg;
        out.push(Some(Local { deg, pr, pb, odd }));
    }
    Ok(out)
}

fn in_matched_angle(g: &PlaneGraph, locals: &[Option<Local>], u: usize, v: usize) -> bool {
    match &locals[v] {
        Some(loc) => loc.in_matched(g.dart_pos(g.dart(v, u).unwrap())),
        None => false,
    }
}

/// Propagates signs down the red tree from `v1` and the blue tree from
/// `v2`. The signs of both special vertices are fixed to plus.
pub fn assign_types(
    g: &PlaneGraph,
    l: &EdgeLabeling,
    m: &AngularMatching,
) -> Result<VertexTypes, LContactError> {
    let n = g.n();
    let locals = locals(g, l, m)?;
    let (v1, v2) = g.special();
    let mut odd = vec![false; n + 1];
    for v in g.vertices() {
        if let Some(loc) = &locals[v] {
            odd[v] = loc.odd;
        }
    }
    let mut signs = [vec![None; n + 1], vec![None; n + 1]];
    for (k, (edges, root)) in [(&l.red, v1), (&l.blue, v2)].into_iter().enumerate() {
        let mut children = vec![Vec::new(); n + 1];
        for &[a, b] in edges.iter() {
            children[b].push(a);
        }
        let s = &mut signs[k];
        s[root] = Some(Sign::Plus);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let sv = s[v].unwrap();
            for &u in &children[v] {
                if s[u].is_some() {
                    return inconsistent(format!("vertex {u} reached twice"));
                }
                let su = if in_matched_angle(g, &locals, u, v) {
                    sv.flip()
                } else {
                    sv
                };
                s[u] = Some(su);
                queue.push_back(u);
            }
        }
    }
    // v2 carries no red edges and v1 no blue ones
    signs[0][v2] = Some(Sign::Plus);
    signs[1][v1] = Some(Sign::Plus);
    let [red, blue] = signs;
    let collect = |s: Vec<Option<Sign>>| -> Result<Vec<Sign>, LContactError> {
        s.into_iter()
            .enumerate()
            .map(|(v, x)| match (v, x) {
                (0, _) => Ok(Sign::Plus),
                (_, Some(x)) => Ok(x),
                (v, None) => inconsistent(format!("vertex {v} not reached by its tree")),
            })
            .collect()
    };
    Ok(VertexTypes {
        red: collect(red)?,
        blue: collect(blue)?,
        odd,
    })
}

/// The three distinguished vertices of an inner face and the paths between
/// them, all in clockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceFrame {
    pub face: usize,
    pub u: usize,
    pub v: usize,
    pub w: usize,
    /// `u, u_1, .., u_i, v`
    pub us: Vec<usize>,
    /// `w, v_1, .., v_k, u`
    pub vs: Vec<usize>,
    /// `v, w_1, .., w_j, w`
    pub ws: Vec<usize>,
}

impl FaceFrame {
    // Missing vertices fall back to the neighbouring distinguished vertex.
    fn u1(&self) -> usize {
        self.us[1]
    }
    fn ui(&self) -> usize {
        self.us[self.us.len() - 2]
    }
    fn v1(&self) -> usize {
        self.vs[1]
    }
    fn vk(&self) -> usize {
        self.vs[self.vs.len() - 2]
    }
    fn w1(&self) -> usize {
        self.ws[1]
    }
    fn wj(&self) -> usize {
        self.ws[self.ws.len() - 2]
    }
}

pub fn face_frame(
    g: &PlaneGraph,
    report: &EdgeLabelingReport,
    m: &AngularMatching,
    types: &VertexTypes,
    f: usize,
) -> Result<FaceFrame, LContactError> {
    let Some(&v) = m.face_to_vertex.get(&f) else {
        return inconsistent(format!("face {f} is unmatched"));
    };
    let (w_color, u_color) = if types.odd[v] {
        (Color::Blue, Color::Red)
    } else {
        (Color::Red, Color::Blue)
    };
    let w = report.sink(f, w_color);
    let u = report.sink(f, u_color);
    let mut cw: Vec<usize> = g.face(f).vertices.iter().rev().copied().collect();
    let Some(start) = cw.iter().position(|&x| x == v) else {
        return inconsistent(format!("vertex {v} is not on face {f}"));
    };
    cw.rotate_left(start);
    let pw = cw.iter().position(|&x| x == w).unwrap();
    let pu = cw.iter().position(|&x| x == u).unwrap();
    if !(0 < pw && pw < pu) {
        return inconsistent(format!("face {f}: sinks out of order around {v}"));
    }
    let mut us = cw[pu..].to_vec();
    us.push(v);
    Ok(FaceFrame {
        face: f,
        u,
        v,
        w,
        us,
        vs: cw[pw..=pu].to_vec(),
        ws: cw[..=pw].to_vec(),
    })
}

/// Audits the type rule, the parity rule and the face-type pattern.
pub fn check_types(
    g: &PlaneGraph,
    l: &EdgeLabeling,
    report: &EdgeLabelingReport,
    m: &AngularMatching,
    types: &VertexTypes,
) -> Result<(), String> {
    let locals = locals(g, l, m).map_err(|e| e.to_string())?;
    let (v1, v2) = g.special();
    if !types.blue[v1].is_plus() || !types.red[v2].is_plus() {
        return Err("special signs must be plus".into());
    }
    for v in g.vertices().filter(|&v| !g.is_special(v)) {
        if types.odd[v] != (types.red[v] == types.blue[v]) {
            return Err(format!("parity fails at {v}"));
        }
    }
    for (list, c) in [(&l.red, Color::Red), (&l.blue, Color::Blue)] {
        for &[u, v] in list.iter() {
            let same = types.sign(u, c) == types.sign(v, c);
            if same == in_matched_angle(g, &locals, u, v) {
                return Err(format!("type rule fails on {c:?} edge {u}->{v}"));
            }
        }
    }
    for f in g.inner_faces() {
        let fr = face_frame(g, report, m, types, f.id).map_err(|e| e.to_string())?;
        let t = types.quadrant(fr.v);
        let groups = [
            (&fr.us[1..fr.us.len() - 1], t.shift(-1)),
            (&fr.vs[1..fr.vs.len() - 1], t),
            (&fr.ws[1..fr.ws.len() - 1], t.shift(1)),
        ];
        for (members, want) in groups {
            if let Some(&x) = members.iter().find(|&&x| types.quadrant(x) != want) {
                return Err(format!("face {}: vertex {x} is not of type {want}", f.id));
            }
        }
    }
    Ok(())
}

/// Directed multigraph over vertex ids and inner-face ids; `a -> b` means
/// the coordinate of `a` is smaller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityGraph {
    pub nodes: usize,
    pub edges: Vec<[usize; 2]>,
}

impl InequalityGraph {
    fn active(&self, g: &PlaneGraph) -> impl Iterator<Item = usize> {
        let outer = g.outer_face();
        (1..=self.nodes).filter(move |&x| x != outer)
    }

    /// Kahn's algorithm, smallest ready node id first.
    pub fn topological_order(&self, g: &PlaneGraph) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.nodes + 1];
        let mut out = vec![Vec::new(); self.nodes + 1];
        for &[a, b] in &self.edges {
            out[a].push(b);
            indeg[b] += 1;
        }
        let mut heap: BinaryHeap<Reverse<usize>> = self
            .active(g)
            .filter(|&x| indeg[x] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(self.nodes);
        while let Some(Reverse(x)) = heap.pop() {
            order.push(x);
            for &y in &out[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    heap.push(Reverse(y));
                }
            }
        }
        (order.len() == self.active(g).count()).then_some(order)
    }

    pub fn sources_and_sinks(&self, g: &PlaneGraph) -> (Vec<usize>, Vec<usize>) {
        let mut has_in = vec![false; self.nodes + 1];
        let mut has_out = vec![false; self.nodes + 1];
        for &[a, b] in &self.edges {
            has_out[a] = true;
            has_in[b] = true;
        }
        let sources = self.active(g).filter(|&x| !has_in[x]).collect();
        let sinks = self.active(g).filter(|&x| !has_out[x]).collect();
        (sources, sinks)
    }

    fn edge_set(&self) -> HashSet<(usize, usize)> {
        self.edges.iter().map(|&[a, b]| (a, b)).collect()
    }
}

/// Face auxiliary edges in `D_r` and `D_b`, by the type of the matched vertex.
fn face_edges(fr: &FaceFrame, t: Quadrant) -> ([(usize, usize); 3], [(usize, usize); 3]) {
    let f = fr.face;
    let (u1, ui, v1, vk, w1, wj) = (fr.u1(), fr.ui(), fr.v1(), fr.vk(), fr.w1(), fr.wj());
    match t {
        Quadrant::I => ([(wj, f), (f, v1), (f, ui)], [(u1, f), (f, w1), (f, vk)]),
        Quadrant::II => ([(vk, f), (w1, f), (f, u1)], [(wj, f), (f, v1), (f, ui)]),
        Quadrant::III => ([(v1, f), (ui, f), (f, wj)], [(vk, f), (w1, f), (f, u1)]),
        Quadrant::IV => ([(u1, f), (f, w1), (f, vk)], [(v1, f), (ui, f), (f, wj)]),
    }
}

pub fn build_inequality_graphs(
    g: &PlaneGraph,
    l: &EdgeLabeling,
    report: &EdgeLabelingReport,
    m: &AngularMatching,
    types: &VertexTypes,
) -> Result<(InequalityGraph, InequalityGraph), LContactError> {
    let (v1, v2) = g.special();
    let mut dr = vec![[v2, v1]];
    let mut db = vec![[v1, v2]];
    for &[a, b] in &l.red {
        dr.push(if types.red[a].is_plus() {
            [a, b]
        } else {
            [b, a]
        });
        db.push(if types.blue[b].is_plus() {
            [b, a]
        } else {
            [a, b]
        });
    }
    for &[a, b] in &l.blue {
        dr.push(if types.red[b].is_plus() {
            [b, a]
        } else {
            [a, b]
        });
        db.push(if types.blue[a].is_plus() {
            [a, b]
        } else {
            [b, a]
        });
    }
    for f in g.inner_faces() {
        let fr = face_frame(g, report, m, types, f.id)?;
        let (er, eb) = face_edges(&fr, types.quadrant(fr.v));
        dr.extend(er.iter().map(|&(a, b)| [a, b]));
        db.extend(eb.iter().map(|&(a, b)| [a, b]));
    }
    let nodes = g.node_count();
    let dr = InequalityGraph { nodes, edges: dr };
    let db = InequalityGraph { nodes, edges: db };
    if dr.topological_order(g).is_none() {
        return Err(LContactError::CycleDetected("D_r"));
    }
    if db.topological_order(g).is_none() {
        return Err(LContactError::CycleDetected("D_b"));
    }
    Ok((dr, db))
}

/// `(skip_first, skip_last, forward)` for the u-, v- and w-paths.
type PathSpec = (bool, bool, bool);

fn path_table(t: Quadrant) -> ([PathSpec; 3], [PathSpec; 3]) {
    const F: bool = false;
    const T: bool = true;
    match t {
        Quadrant::I => (
            [(F, F, F), (T, F, T), (F, T, T)],
            [(T, F, F), (F, T, F), (F, F, T)],
        ),
        Quadrant::II => (
            [(T, F, T), (F, T, T), (F, F, F)],
            [(F, F, F), (T, F, T), (F, T, T)],
        ),
        Quadrant::III => (
            [(F, F, T), (T, F, F), (F, T, F)],
            [(T, F, T), (F, T, T), (F, F, F)],
        ),
        Quadrant::IV => (
            [(T, F, F), (F, T, F), (F, F, T)],
            [(F, F, T), (T, F, F), (F, T, F)],
        ),
    }
}

/// Audits the directed paths around every face, acyclicity of the three
/// refined regions of every face, and the unique source and sink.
pub fn check_face_paths(
    g: &PlaneGraph,
    report: &EdgeLabelingReport,
    m: &AngularMatching,
    types: &VertexTypes,
    dr: &InequalityGraph,
    db: &InequalityGraph,
) -> Result<(), String> {
    let (v1, v2) = g.special();
    let sets = [dr.edge_set(), db.edge_set()];
    for f in g.inner_faces() {
        let fr = face_frame(g, report, m, types, f.id).map_err(|e| e.to_string())?;
        let t = types.quadrant(fr.v);
        let (specs_r, specs_b) = path_table(t);
        let (aux_r, aux_b) = face_edges(&fr, t);
        for (k, specs) in [specs_r, specs_b].iter().enumerate() {
            for (seq, &(skip_first, skip_last, forward)) in
                [&fr.us, &fr.vs, &fr.ws].into_iter().zip(specs.iter())
            {
                let lo = usize::from(skip_first);
                let hi = seq.len() - 1 - usize::from(skip_last);
                for i in lo..hi {
                    let e = if forward {
                        (seq[i], seq[i + 1])
                    } else {
                        (seq[i + 1], seq[i])
                    };
                    if !sets[k].contains(&e) {
                        return Err(format!("face {}: missing {e:?} in graph {k}", f.id));
                    }
                }
            }
        }
        // refined regions: cut the clockwise cycle at the three attachments
        let mut cw: Vec<usize> = fr.ws.clone();
        cw.extend(&fr.vs[1..]);
        cw.extend(&fr.us[1..fr.us.len() - 1]);
        for (k, aux) in [aux_r, aux_b].iter().enumerate() {
            let mut att: Vec<(usize, bool)> = aux
                .iter()
                .map(|&(a, b)| {
                    let (x, out_of_f) = if a == f.id { (b, true) } else { (a, false) };
                    (cw.iter().position(|&y| y == x).unwrap(), out_of_f)
                })
                .collect();
            att.sort_unstable();
            for r in 0..3 {
                let (pa, fa) = att[r];
                let (pb, fb) = att[(r + 1) % 3];
                let mut fwd = fa && !fb;
                let mut bwd = !fa && fb;
                let mut p = pa;
                while p != pb {
                    let q = (p + 1) % cw.len();
                    fwd &= sets[k].contains(&(cw[p], cw[q]));
                    bwd &= sets[k].contains(&(cw[q], cw[p]));
                    p = q;
                }
                if fwd || bwd {
                    return Err(format!("face {}: refined region {r} is cyclic", f.id));
                }
            }
        }
    }
    for (d, src, snk, name) in [(dr, v2, v1, "D_r"), (db, v1, v2, "D_b")] {
        if d.topological_order(g).is_none() {
            return Err(format!("{name} has a cycle"));
        }
        let (sources, sinks) = d.sources_and_sinks(g);
        if sources != vec![src] || sinks != vec![snk] {
            return Err(format!("{name}: sources {sources:?}, sinks {sinks:?}"));
        }
    }
    Ok(())
}

/// Audits edge directions at face sinks and around each vertex.
pub fn check_sink_edges(
    g: &PlaneGraph,
    l: &EdgeLabeling,
    report: &EdgeLabelingReport,
    types: &VertexTypes,
    dr: &InequalityGraph,
    db: &InequalityGraph,
) -> Result<(), String> {
    let sr = dr.edge_set();
    let sb = db.edge_set();
    for f in g.inner_faces() {
        let k = f.vertices.len();
        for (set, s, sign) in [
            (
                &sr,
                report.blue_sink[&f.id],
                types.red[report.blue_sink[&f.id]],
            ),
            (
                &sb,
                report.red_sink[&f.id],
                types.blue[report.red_sink[&f.id]],
            ),
        ] {
            let i = f.vertices.iter().position(|&x| x == s).unwrap();
            for nb in [f.vertices[(i + k - 1) % k], f.vertices[(i + 1) % k]] {
                let want = if sign.is_plus() { (s, nb) } else { (nb, s) };
                if !set.contains(&want) {
                    return Err(format!("face {}: sink {s} edge to {nb} misdirected", f.id));
                }
            }
        }
    }
    for (list, set, c) in [(&l.blue, &sr, Color::Blue), (&l.red, &sb, Color::Red)] {
        for &[u, v] in list.iter() {
            let f = report.edge_face[&(u, v)];
            let sign = match c {
                Color::Blue => types.red[v],
                Color::Red => types.blue[v],
            };
            let want = if sign.is_plus() { (u, f) } else { (f, u) };
            if !set.contains(&want) {
                return Err(format!("edge {u}->{v}: expected {want:?}"));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coordinates {
    /// Indexed by vertex id; slot 0 unused.
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

/// Rank of each vertex among vertex nodes in the topological orders.
pub fn assign_coordinates(
    g: &PlaneGraph,
    dr: &InequalityGraph,
    db: &InequalityGraph,
) -> Result<Coordinates, LContactError> {
    let rank = |d: &InequalityGraph, name| {
        let order = d
            .topological_order(g)
            .ok_or(LContactError::CycleDetected(name))?;
        let mut r = vec![0; g.n() + 1];
        for (i, v) in order.into_iter().filter(|&x| x <= g.n()).enumerate() {
            r[v] = i + 1;
        }
        Ok(r)
    };
    Ok(Coordinates {
        x: rank(dr, "D_r")?,
        y: rank(db, "D_b")?,
    })
}

/// Every edge `a -> b` and every path `a -> f -> b` through a face node is
/// strictly increasing in the assigned coordinate.
pub fn check_coordinates(
    g: &PlaneGraph,
    c: &Coordinates,
    dr: &InequalityGraph,
    db: &InequalityGraph,
) -> Result<(), String> {
    let n = g.n();
    for (d, coord, name) in [(dr, &c.x, "x"), (db, &c.y, "y")] {
        let mut ins: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut outs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &[a, b] in &d.edges {
            match (a <= n, b <= n) {
                (true, true) if coord[a] >= coord[b] => {
                    return Err(format!("{name}: {a} -> {b} not increasing"))
                }
                (true, false) => ins.entry(b).or_default().push(a),
                (false, true) => outs.entry(a).or_default().push(b),
                _ => {}
            }
        }
        for (f, preds) in &ins {
            for &b in outs.get(f).map(Vec::as_slice).unwrap_or(&[]) {
                if let Some(&a) = preds.iter().find(|&&a| coord[a] >= coord[b]) {
                    return Err(format!("{name}: {a} -> {f} -> {b} not increasing"));
                }
            }
        }
        let mut sorted: Vec<usize> = coord[1..].to_vec();
        sorted.sort_unstable();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(format!("{name} is not a bijection onto 1..=n"));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LShape {
    pub v: usize,
    #[serde(rename = "type")]
    pub ty: Quadrant,
    pub bend: [i64; 2],
    pub h_end: [i64; 2],
    pub v_end: [i64; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contact {
    pub edge: [usize; 2],
    pub point: [i64; 2],
    pub endpoint_of: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LContactRepresentation {
    pub n: usize,
    pub shapes: Vec<LShape>,
    pub contacts: Vec<Contact>,
}

/// Non-special shapes follow the coordinates of their outgoing neighbours.
/// `v1` gets a vertical leg one unit above its highest contact and a unit
/// stub to the right; `v2`'s horizontal leg ends on `v1` and its vertical
/// leg is a unit stub upwards.
pub fn emit_lshapes(
    g: &PlaneGraph,
    l: &EdgeLabeling,
    types: &VertexTypes,
    c: &Coordinates,
) -> LContactRepresentation {
    let (v1, v2) = g.special();
    let (red, blue) = l.out_neighbors(g.n());
    let pt = |v: usize| [c.x[v] as i64, c.y[v] as i64];
    let mut shapes = Vec::with_capacity(g.n());
    for v in g.vertices() {
        let bend = pt(v);
        let (h_end, v_end) = if v == v1 {
            let top = l
                .red
                .iter()
                .filter(|e| e[1] == v1)
                .map(|e| c.y[e[0]])
                .chain([c.y[v2]])
                .max()
                .unwrap() as i64;
            ([bend[0] + 1, bend[1]], [bend[0], top + 1])
        } else if v == v2 {
            ([c.x[v1] as i64, bend[1]], [bend[0], bend[1] + 1])
        } else {
            let (r, b) = (red[v].unwrap(), blue[v].unwrap());
            ([c.x[r] as i64, bend[1]], [bend[0], c.y[b] as i64])
        };
        shapes.push(LShape {
            v,
            ty: types.quadrant(v),
            bend,
            h_end,
            v_end,
        });
    }
    let mut contacts = vec![Contact {
        edge: [v2, v1],
        point: shapes[v2 - 1].h_end,
        endpoint_of: v2,
    }];
    for &[a, b] in &l.red {
        contacts.push(Contact {
            edge: [a, b],
            point: shapes[a - 1].h_end,
            endpoint_of: a,
        });
    }
    for &[a, b] in &l.blue {
        contacts.push(Contact {
            edge: [a, b],
            point: shapes[a - 1].v_end,
            endpoint_of: a,
        });
    }
    contacts.sort_by_key(|k| k.edge);
    LContactRepresentation {
        n: g.n(),
        shapes,
        contacts,
    }
}
