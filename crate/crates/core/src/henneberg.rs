//! Planar Henneberg moves: forward application, replay, reverse
//! decomposition and seeded random generation.
//!
//! Moves name their host face through *anchors*. An anchor `(w, a)` stands
//! for the angle at `w` that lies clockwise after neighbour `a`; the new
//! vertex is inserted into `w`'s rotation right after `a`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{canonical_cycle, GraphError, PlaneGraph};
use crate::laman::{validate_laman, LamanVerdict, PebbleGame};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HennebergError {
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("H2 may not remove the outer edge {0}-{1}")]
    OuterEdgeRemoval(usize, usize),
    #[error("graph is not Laman: {0:?}")]
    NotLaman(LamanVerdict),
    #[error("no reducible vertex left with {0} vertices")]
    NoReducibleVertex(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum HennebergMove {
    /// New vertex `v` joined to `x` and `y`, inserted after `x_after` at `x`
    /// and after `y_after` at `y`.
    H1 {
        v: usize,
        x: usize,
        y: usize,
        x_after: usize,
        y_after: usize,
    },
    /// Edge `x -- y` is subdivided by `v`, which is also joined to `z`
    /// (inserted after `z_after` at `z`).
    H2 {
        v: usize,
        x: usize,
        y: usize,
        z: usize,
        z_after: usize,
    },
}

impl HennebergMove {
    pub fn new_vertex(&self) -> usize {
        match *self {
            HennebergMove::H1 { v, .. } | HennebergMove::H2 { v, .. } => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HennebergSequence {
    pub base: [usize; 3],
    pub moves: Vec<HennebergMove>,
}

/// Mutable rotation system used while building or dismantling a graph.
#[derive(Debug, Clone)]
pub struct Embedding {
    rot: Vec<Vec<usize>>,
    alive: Vec<bool>,
    outer: [usize; 3],
}

impl Embedding {
    /// A triangle on `base`, oriented so that `base` is counterclockwise.
    pub fn triangle(base: [usize; 3]) -> Self {
        let [a, b, c] = base;
        let cap = a.max(b).max(c) + 1;
        let mut e = Embedding {
            rot: vec![Vec::new(); cap],
            alive: vec![false; cap],
            outer: base,
        };
        e.rot[a] = vec![b, c];
        e.rot[b] = vec![c, a];
        e.rot[c] = vec![a, b];
        for v in base {
            e.alive[v] = true;
        }
        e
    }

    pub fn from_graph(g: &PlaneGraph) -> Self {
        let mut rot = vec![Vec::new(); g.n() + 1];
        for v in g.vertices() {
            rot[v] = g.rotation(v).to_vec();
        }
        let mut alive = vec![true; g.n() + 1];
        alive[0] = false;
        Embedding {
            rot,
            alive,
            outer: g.outer(),
        }
    }

    pub fn to_graph(&self) -> Result<PlaneGraph, HennebergError> {
        let n = self.alive.iter().filter(|&&a| a).count();
        if self.alive.len() < n + 1 || !self.alive[1..=n].iter().all(|&a| a) {
            return Err(HennebergError::IllegalMove(
                "vertex ids are not the dense range 1..=n".into(),
            ));
        }
        let rotation = (1..=n).map(|v| canonical_cycle(&self.rot[v])).collect();
        Ok(PlaneGraph::new(rotation, self.outer)?)
    }

    pub fn outer(&self) -> [usize; 3] {
        self.outer
    }

    pub fn is_alive(&self, v: usize) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    fn pos(&self, v: usize, w: usize) -> Option<usize> {
        self.rot[v].iter().position(|&x| x == w)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.is_alive(u) && self.is_alive(v) && self.pos(u, v).is_some()
    }

    /// Clockwise successor of `w` around `v`.
    pub fn succ(&self, v: usize, w: usize) -> usize {
        let r = &self.rot[v];
        r[(self.pos(v, w).expect("not a neighbour") + 1) % r.len()]
    }

    /// Clockwise predecessor of `w` around `v`.
    pub fn pred(&self, v: usize, w: usize) -> usize {
        let r = &self.rot[v];
        let i = self.pos(v, w).expect("not a neighbour");
        r[(i + r.len() - 1) % r.len()]
    }

    pub fn is_outer_edge(&self, u: usize, v: usize) -> bool {
        self.outer.contains(&u) && self.outer.contains(&v) && u != v
    }

    /// Darts of the face on the left of `u -> v`.
    pub fn face_walk(&self, u: usize, v: usize) -> Vec<(usize, usize)> {
        let mut walk = vec![(u, v)];
        let (mut a, mut b) = (v, self.succ(v, u));
        while (a, b) != (u, v) {
            walk.push((a, b));
            let c = self.succ(b, a);
            a = b;
            b = c;
        }
        walk
    }

    /// Face walk containing the angle at `w` after `a`.
    pub fn angle_face(&self, w: usize, a: usize) -> Vec<(usize, usize)> {
        self.face_walk(a, w)
    }

    pub fn is_outer_walk(&self, walk: &[(usize, usize)]) -> bool {
        let [v1, _, v3] = self.outer;
        walk.contains(&(v1, v3))
    }

    /// All face walks, outer face first, then in vertex/rotation scan order.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut seen = std::collections::HashSet::new();
        let [v1, _, v3] = self.outer;
        let mut out = vec![self.face_walk(v1, v3)];
        seen.extend(out[0].iter().copied());
        for v in 0..self.rot.len() {
            if !self.alive[v] {
                continue;
            }
            for &w in &self.rot[v] {
                if !seen.contains(&(v, w)) {
                    let walk = self.face_walk(v, w);
                    seen.extend(walk.iter().copied());
                    out.push(walk);
                }
            }
        }
        out
    }

    fn ensure_capacity(&mut self, v: usize) {
        if v >= self.rot.len() {
            self.rot.resize(v + 1, Vec::new());
            self.alive.resize(v + 1, false);
        }
    }

    fn insert_after(&mut self, v: usize, anchor: usize, new: usize) {
        let i = self.pos(v, anchor).expect("anchor not a neighbour");
        self.rot[v].insert(i + 1, new);
    }

    fn replace(&mut self, v: usize, old: usize, new: usize) {
        let i = self.pos(v, old).expect("not a neighbour");
        self.rot[v][i] = new;
    }

    fn remove_neighbor(&mut self, v: usize, w: usize) {
        let i = self.pos(v, w).expect("not a neighbour");
        self.rot[v].remove(i);
    }

    /// Checks a move against the current embedding without changing it.
    pub fn check(&self, m: &HennebergMove) -> Result<(), HennebergError> {
        let illegal = |s: String| Err(HennebergError::IllegalMove(s));
        let v = m.new_vertex();
        if v == 0 || self.is_alive(v) {
            return illegal(format!("vertex {v} already exists"));
        }
        match *m {
            HennebergMove::H1 {
                x,
                y,
                x_after,
                y_after,
                ..
            } => {
                if x == y || !self.is_alive(x) || !self.is_alive(y) {
                    return illegal(format!("bad endpoints {x}, {y}"));
                }
                if !self.has_edge(x, x_after) || !self.has_edge(y, y_after) {
                    return illegal("anchor is not a neighbour".into());
                }
                let walk = self.angle_face(x, x_after);
                if self.is_outer_walk(&walk) {
                    return illegal("host face is the outer face".into());
                }
                if !walk.contains(&(y_after, y)) {
                    return illegal(format!("angles at {x} and {y} lie in different faces"));
                }
                Ok(())
            }
            HennebergMove::H2 {
                x, y, z, z_after, ..
            } => {
                if !self.has_edge(x, y) {
                    return illegal(format!("{x}-{y} is not an edge"));
                }
                if self.is_outer_edge(x, y) {
                    return Err(HennebergError::OuterEdgeRemoval(x, y));
                }
                if z == x || z == y || !self.is_alive(z) || !self.has_edge(z, z_after) {
                    return illegal(format!("bad third vertex {z}"));
                }
                let walk = self.angle_face(z, z_after);
                if self.is_outer_walk(&walk) {
                    return illegal("host face is the outer face".into());
                }
                if !walk.contains(&(x, y)) && !walk.contains(&(y, x)) {
                    return illegal(format!("{x}-{y} does not bound the host face"));
                }
                Ok(())
            }
        }
    }

    pub fn apply(&mut self, m: &HennebergMove) -> Result<(), HennebergError> {
        self.check(m)?;
        let v = m.new_vertex();
        self.ensure_capacity(v);
        match *m {
            HennebergMove::H1 {
                x,
                y,
                x_after,
                y_after,
                ..
            } => {
                self.insert_after(x, x_after, v);
                self.insert_after(y, y_after, v);
                self.rot[v] = vec![x, y];
            }
            HennebergMove::H2 {
                x, y, z, z_after, ..
            } => {
                let forward = self.angle_face(z, z_after).contains(&(x, y));
                self.replace(x, y, v);
                self.replace(y, x, v);
                self.insert_after(z, z_after, v);
                self.rot[v] = if forward {
                    vec![x, z, y]
                } else {
                    vec![y, z, x]
                };
            }
        }
        self.alive[v] = true;
        Ok(())
    }

    fn kill(&mut self, v: usize) {
        self.rot[v].clear();
        self.alive[v] = false;
    }
}

/// Applies one move to a graph whose vertices are `1..=n`; the new vertex
/// must be `n + 1`.
pub fn apply_move(g: &PlaneGraph, m: &HennebergMove) -> Result<PlaneGraph, HennebergError> {
    if m.new_vertex() != g.n() + 1 {
        return Err(HennebergError::IllegalMove(format!(
            "new vertex must be {}, got {}",
            g.n() + 1,
            m.new_vertex()
        )));
    }
    let mut e = Embedding::from_graph(g);
    e.apply(m)?;
    e.to_graph()
}

pub fn replay(s: &HennebergSequence) -> Result<PlaneGraph, HennebergError> {
    let mut e = Embedding::triangle(s.base);
    for m in &s.moves {
        e.apply(m)?;
    }
    e.to_graph()
}

/// Replays the sequence and runs the Laman test after every step.
pub fn replay_checked(s: &HennebergSequence) -> Result<PlaneGraph, HennebergError> {
    let mut e = Embedding::triangle(s.base);
    for m in &s.moves {
        e.apply(m)?;
        if let Ok(g) = e.to_graph() {
            let verdict = validate_laman(&g);
            if !verdict.is_accepted() {
                return Err(HennebergError::NotLaman(verdict));
            }
        }
    }
    e.to_graph()
}

/// Finds a planar Henneberg sequence for `g` by repeatedly removing a
/// non-outer vertex of degree 2, or of degree 3 together with a chord that
/// keeps the remaining graph Laman.
pub fn decompose(g: &PlaneGraph) -> Result<HennebergSequence, HennebergError> {
    let verdict = validate_laman(g);
    if !verdict.is_accepted() {
        return Err(HennebergError::NotLaman(verdict));
    }
    let mut game = PebbleGame::new(g.n());
    for (a, b) in g.edges() {
        game.try_add_edge(a, b)
            .map_err(|_| HennebergError::NotLaman(verdict.clone()))?;
    }
    let outer = g.outer();
    let mut e = Embedding::from_graph(g);
    let mut moves = Vec::with_capacity(g.n().saturating_sub(3));

    while e.alive_count() > 3 {
        let inner = |v: usize| e.is_alive(v) && !outer.contains(&v);
        if let Some(v) = (1..=g.n()).find(|&v| inner(v) && e.degree(v) == 2) {
            let (x, y) = (e.rot[v][0], e.rot[v][1]);
            let x_after = e.pred(x, v);
            let y_after = e.pred(y, v);
            e.remove_neighbor(x, v);
            e.remove_neighbor(y, v);
            e.kill(v);
            game.remove_edge(v, x);
            game.remove_edge(v, y);
            moves.push(HennebergMove::H1 {
                v,
                x,
                y,
                x_after,
                y_after,
            });
            continue;
        }

        let mut reduced = false;
        for v in 1..=g.n() {
            if !inner(v) || e.degree(v) != 3 {
                continue;
            }
            let start = (0..3).min_by_key(|&i| e.rot[v][i]).unwrap();
            let p: Vec<usize> = (0..3).map(|i| e.rot[v][(start + i) % 3]).collect();
            for &w in &p {
                game.remove_edge(v, w);
            }
            let mut chosen = None;
            for i in 0..3 {
                let (x, y, z) = (p[i], p[(i + 1) % 3], p[(i + 2) % 3]);
                if e.has_edge(x, y) {
                    continue;
                }
                if game.try_add_edge(x, y).is_ok() {
                    chosen = Some((x, y, z));
                    break;
                }
            }
            match chosen {
                Some((x, y, z)) => {
                    let z_after = e.pred(z, v);
                    e.replace(x, v, y);
                    e.replace(y, v, x);
                    e.remove_neighbor(z, v);
                    e.kill(v);
                    moves.push(HennebergMove::H2 {
                        v,
                        x,
                        y,
                        z,
                        z_after,
                    });
                    reduced = true;
                    break;
                }
                None => {
                    for &w in &p {
                        game.try_add_edge(v, w)
                            .expect("re-adding removed edges must succeed");
                    }
                }
            }
        }
        if !reduced {
            return Err(HennebergError::NoReducibleVertex(e.alive_count()));
        }
    }
    moves.reverse();
    Ok(HennebergSequence { base: outer, moves })
}

/// Random sequence of `n - 3` legal moves from the triangle `(1, 2, 3)`,
/// driven by a ChaCha8 generator seeded with `seed`.
pub fn random_sequence(n: usize, seed: u64) -> HennebergSequence {
    assert!(n >= 3, "need at least 3 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = [1, 2, 3];
    let mut e = Embedding::triangle(base);
    let mut moves = Vec::with_capacity(n - 3);
    for v in 4..=n {
        let faces: Vec<_> = e
            .faces()
            .into_iter()
            .filter(|w| !e.is_outer_walk(w))
            .collect();
        let face = faces.choose(&mut rng).expect("an inner face exists");
        let k = face.len();
        let inner_edges: Vec<usize> = (0..k)
            .filter(|&i| !e.is_outer_edge(face[i].0, face[i].1))
            .collect();
        let m = if inner_edges.is_empty() || rng.gen_bool(0.5) {
            let i = rng.gen_range(0..k);
            let mut j = rng.gen_range(0..k - 1);
            if j >= i {
                j += 1;
            }
            let ((xa, x), (ya, y)) = (face[i], face[j]);
            HennebergMove::H1 {
                v,
                x,
                y,
                x_after: xa,
                y_after: ya,
            }
        } else {
            let i = *inner_edges.choose(&mut rng).unwrap();
            let (x, y) = face[i];
            let others: Vec<usize> = (0..k)
                .filter(|&j| face[j].1 != x && face[j].1 != y)
                .collect();
            let j = *others
                .choose(&mut rng)
                .expect("inner faces have length >= 3");
            let (z_after, z) = face[j];
            HennebergMove::H2 {
                v,
                x,
                y,
                z,
                z_after,
            }
        };
        e.apply(&m).expect("generated move is legal");
        moves.push(m);
    }
    HennebergSequence { base, moves }
}

/// A random plane Laman graph on `n` vertices.
pub fn generate(n: usize, seed: u64) -> PlaneGraph {
    replay(&random_sequence(n, seed)).expect("generated sequence replays")
}
