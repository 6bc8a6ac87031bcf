//! Geometric checks on an arbitrary set of L-shapes against a plane graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{LContactRepresentation, LShape, Quadrant, Sign};
use crate::graph::{canonical_cycle, PlaneGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Clause {
    /// Malformed input: missing, duplicate or degenerate shapes.
    Shape,
    /// Crossing or overlapping shapes.
    A,
    /// Contact set differs from the edge set.
    B,
    /// Bend contact or endpoint-to-endpoint contact.
    C,
    /// Contacts out of rotation order.
    D,
    /// Face regions are not simple or do not match the inner faces.
    E,
    /// A face region without exactly one convex corner.
    F,
    /// Bend outside the grid.
    G,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReprViolation {
    pub clause: Clause,
    pub witness: String,
}

fn fail<T>(clause: Clause, witness: String) -> Result<T, ReprViolation> {
    Err(ReprViolation { clause, witness })
}

type Pt = (i64, i64);

fn pt(p: [i64; 2]) -> Pt {
    (p[0], p[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Loc {
    Bend,
    HEnd,
    VEnd,
    HInner,
    VInner,
}

impl Loc {
    fn is_end(self) -> bool {
        matches!(self, Loc::HEnd | Loc::VEnd)
    }
    fn is_inner(self) -> bool {
        matches!(self, Loc::HInner | Loc::VInner)
    }
}

#[derive(Debug, Clone, Copy)]
struct Seg {
    a: Pt,
    b: Pt,
}

impl Seg {
    fn horizontal(&self) -> bool {
        self.a.1 == self.b.1
    }
    fn lo(&self) -> Pt {
        self.a.min(self.b)
    }
    fn hi(&self) -> Pt {
        self.a.max(self.b)
    }
    fn contains(&self, p: Pt) -> bool {
        let (lo, hi) = (self.lo(), self.hi());
        if self.horizontal() {
            p.1 == lo.1 && lo.0 <= p.0 && p.0 <= hi.0
        } else {
            p.0 == lo.0 && lo.1 <= p.1 && p.1 <= hi.1
        }
    }
}

struct Shape {
    v: usize,
    bend: Pt,
    h: Pt,
    vt: Pt,
}

impl Shape {
    fn segs(&self) -> [Seg; 2] {
        [
            Seg {
                a: self.bend,
                b: self.h,
            },
            Seg {
                a: self.bend,
                b: self.vt,
            },
        ]
    }

    fn locate(&self, p: Pt) -> Option<Loc> {
        let [hs, vs] = self.segs();
        if p == self.bend {
            Some(Loc::Bend)
        } else if p == self.h {
            Some(Loc::HEnd)
        } else if p == self.vt {
            Some(Loc::VEnd)
        } else if hs.contains(p) {
            Some(Loc::HInner)
        } else if vs.contains(p) {
            Some(Loc::VInner)
        } else {
            None
        }
    }

    /// Legs in the same rotational sense as quadrants I and III.
    fn is_odd_kind(&self) -> bool {
        (self.h.0 > self.bend.0) == (self.vt.1 > self.bend.1)
    }
}

/// Intersection points of two segments; `None` when they overlap in a
/// segment of positive length.
fn intersect(s: &Seg, t: &Seg) -> Option<Vec<Pt>> {
    match (s.horizontal(), t.horizontal()) {
        (true, true) | (false, false) => {
            let k = usize::from(s.horizontal()); // coordinate along the line
            let (sk, tk) = if k == 1 {
                (s.lo().1, t.lo().1)
            } else {
                (s.lo().0, t.lo().0)
            };
            if sk != tk {
                return Some(vec![]);
            }
            let along = |p: Pt| if k == 1 { p.0 } else { p.1 };
            let lo = along(s.lo()).max(along(t.lo()));
            let hi = along(s.hi()).min(along(t.hi()));
            match lo.cmp(&hi) {
                std::cmp::Ordering::Greater => Some(vec![]),
                std::cmp::Ordering::Equal => Some(vec![if k == 1 { (lo, sk) } else { (sk, lo) }]),
                std::cmp::Ordering::Less => None,
            }
        }
        (true, false) => {
            let p = (t.a.0, s.a.1);
            Some(if s.contains(p) && t.contains(p) {
                vec![p]
            } else {
                vec![]
            })
        }
        (false, true) => intersect(t, s),
    }
}

fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (a.is_empty() || canonical_cycle(a) == canonical_cycle(b))
}

/// Checks the clauses in the order shape, a, c, b, d, e, f, g and reports
/// the first violation.
pub fn validate_representation(
    g: &PlaneGraph,
    r: &LContactRepresentation,
) -> Result<(), ReprViolation> {
    let n = g.n();
    if r.n != n || r.shapes.len() != n {
        return fail(
            Clause::Shape,
            format!("expected {n} shapes, got {}", r.shapes.len()),
        );
    }
    let mut by_vertex: Vec<Option<&LShape>> = vec![None; n + 1];
    for s in &r.shapes {
        if s.v == 0 || s.v > n || by_vertex[s.v].is_some() {
            return fail(Clause::Shape, format!("bad or duplicate shape id {}", s.v));
        }
        by_vertex[s.v] = Some(s);
    }
    let mut shapes = Vec::with_capacity(n);
    for s in by_vertex.into_iter().skip(1).map(Option::unwrap) {
        let (b, h, v) = (pt(s.bend), pt(s.h_end), pt(s.v_end));
        if h.1 != b.1 || h.0 == b.0 || v.0 != b.0 || v.1 == b.1 {
            return fail(Clause::Shape, format!("shape {} is not an L", s.v));
        }
        let sign = |x: bool| if x { Sign::Plus } else { Sign::Minus };
        if Quadrant::from_signs(sign(h.0 > b.0), sign(v.1 > b.1)) != s.ty {
            return fail(
                Clause::Shape,
                format!("shape {} legs disagree with type", s.v),
            );
        }
        shapes.push(Shape {
            v: s.v,
            bend: b,
            h,
            vt: v,
        });
    }

    // Pairwise intersections.
    let mut crossing = None;
    let mut bad_contact = None;
    // (i, j) -> contact points with the index of the shape owning the end
    let mut touching: BTreeMap<(usize, usize), Vec<(Pt, usize)>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let (p, q) = (&shapes[i], &shapes[j]);
            let mut points = BTreeSet::new();
            let mut overlap = false;
            for s in p.segs() {
                for t in q.segs() {
                    match intersect(&s, &t) {
                        Some(pts) => points.extend(pts),
                        None => overlap = true,
                    }
                }
            }
            if overlap {
                crossing.get_or_insert(format!("shapes {} and {} overlap", p.v, q.v));
                continue;
            }
            for x in points {
                let (lp, lq) = (p.locate(x).unwrap(), q.locate(x).unwrap());
                if lp.is_inner() && lq.is_inner() {
                    crossing.get_or_insert(format!("shapes {} and {} cross at {x:?}", p.v, q.v));
                } else if lp == Loc::Bend || lq == Loc::Bend {
                    bad_contact
                        .get_or_insert(format!("bend contact of {} and {} at {x:?}", p.v, q.v));
                } else if lp.is_end() && lq.is_end() {
                    bad_contact
                        .get_or_insert(format!("endpoint contact of {} and {} at {x:?}", p.v, q.v));
                } else {
                    let owner = if lp.is_end() { i } else { j };
                    touching.entry((i, j)).or_default().push((x, owner));
                }
            }
        }
    }
    if let Some(w) = crossing {
        return fail(Clause::A, w);
    }
    if let Some(w) = bad_contact {
        return fail(Clause::C, w);
    }

    // Contact set equals the edge set.
    let mut found = BTreeSet::new();
    for (&(i, j), pts) in &touching {
        let (a, b) = (shapes[i].v, shapes[j].v);
        if pts.len() > 1 {
            return fail(
                Clause::B,
                format!("{} contacts between {a} and {b}", pts.len()),
            );
        }
        if !g.has_edge(a, b) {
            return fail(
                Clause::B,
                format!("contact between non-adjacent {a} and {b}"),
            );
        }
        found.insert((a.min(b), a.max(b)));
    }
    if let Some((a, b)) = g.edges().into_iter().find(|e| !found.contains(e)) {
        return fail(Clause::B, format!("edge {a}-{b} has no contact"));
    }
    let computed: BTreeSet<(usize, usize, Pt, usize)> = touching
        .iter()
        .map(|(&(i, j), pts)| {
            let (a, b) = (shapes[i].v, shapes[j].v);
            (a.min(b), a.max(b), pts[0].0, shapes[pts[0].1].v)
        })
        .collect();
    let listed: BTreeSet<(usize, usize, Pt, usize)> = r
        .contacts
        .iter()
        .map(|c| {
            (
                c.edge[0].min(c.edge[1]),
                c.edge[0].max(c.edge[1]),
                pt(c.point),
                c.endpoint_of,
            )
        })
        .collect();
    if listed.len() != r.contacts.len() || listed != computed {
        return fail(Clause::B, "listed contacts differ from the geometry".into());
    }

    // Cyclic order of contacts around each shape.
    let mut around: Vec<Vec<((usize, i64), usize)>> = vec![Vec::new(); n];
    for (&(i, j), pts) in &touching {
        let (x, owner) = pts[0];
        let other = if owner == i { j } else { i };
        let (e, s) = (&shapes[owner], &shapes[other]);
        around[owner].push((end_key(e, x), s.v));
        around[other].push((side_key(s, e, x), e.v));
    }
    for (k, list) in around.iter_mut().enumerate() {
        list.sort_unstable();
        let seq: Vec<usize> = list.iter().map(|&(_, v)| v).collect();
        let v = shapes[k].v;
        if !cyclic_eq(&seq, g.rotation(v)) {
            return fail(
                Clause::D,
                format!("around {v}: contacts {seq:?}, rotation {:?}", g.rotation(v)),
            );
        }
    }

    // Face regions of the arrangement.
    let arr = Arrangement::build(&shapes, &touching);
    let faces = arr.faces();
    let negative = faces.iter().filter(|f| f.area2 < 0).count();
    if negative != 1 || faces.iter().any(|f| f.area2 == 0) {
        return fail(Clause::E, format!("{negative} unbounded regions"));
    }
    let mut inner: HashMap<Vec<usize>, usize> = g
        .inner_faces()
        .map(|f| (canonical_cycle(&f.vertices), f.id))
        .collect();
    let bounded: Vec<&ArrFace> = faces.iter().filter(|f| f.area2 > 0).collect();
    if bounded.len() != inner.len() {
        return fail(
            Clause::E,
            format!("{} regions for {} inner faces", bounded.len(), inner.len()),
        );
    }
    for f in &bounded {
        let mut nodes: Vec<usize> = f.darts.iter().map(|&(a, _)| a).collect();
        nodes.sort_unstable();
        if nodes.windows(2).any(|w| w[0] == w[1]) {
            return fail(
                Clause::E,
                format!("region at {:?} is not simple", arr.pts[f.darts[0].0]),
            );
        }
        let labels: Vec<usize> = f
            .darts
            .iter()
            .map(|&(a, d)| arr.adj[a][d].unwrap().1)
            .collect();
        let start = (0..labels.len())
            .find(|&i| labels[i] != labels[(i + labels.len() - 1) % labels.len()])
            .unwrap_or(0);
        let mut seq: Vec<usize> = Vec::new();
        for k in 0..labels.len() {
            let s = labels[(start + k) % labels.len()];
            if seq.last() != Some(&s) {
                seq.push(s);
            }
        }
        if inner.remove(&canonical_cycle(&seq)).is_none() {
            return fail(Clause::E, format!("region {seq:?} is not an inner face"));
        }
    }

    // One convex bend corner per bounded region.
    for f in &bounded {
        let k = f.darts.len();
        let mut corners = Vec::new();
        for i in 0..k {
            let (a, din) = f.darts[i];
            let (b, dout) = f.darts[(i + 1) % k];
            let (sin, sout) = (arr.adj[a][din].unwrap().1, arr.adj[b][dout].unwrap().1);
            if sin == sout && dout == (din + 1) % 4 && shapes[sin - 1].bend == arr.pts[b] {
                corners.push(sin);
            }
        }
        if corners.len() != 1 {
            let at = arr.pts[f.darts[0].0];
            return fail(
                Clause::F,
                format!("region at {at:?} has convex corners of {corners:?}"),
            );
        }
    }

    for s in &shapes {
        let (x, y) = s.bend;
        if !(1..=n as i64).contains(&x) || !(1..=n as i64).contains(&y) {
            return fail(Clause::G, format!("bend of {} at {:?}", s.v, s.bend));
        }
    }
    Ok(())
}

// Positions around the outline, clockwise from the tip of the horizontal
// leg: 0 tip, 1-2 one side of both legs, 3 tip, 4-5 the other side.

fn end_key(s: &Shape, x: Pt) -> (usize, i64) {
    if x == s.h {
        (0, 0)
    } else {
        (3, 0)
    }
}

/// Key of a contact where `e`'s endpoint `x` touches a leg of `s`.
fn side_key(s: &Shape, e: &Shape, x: Pt) -> (usize, i64) {
    // the leg of `e` that ends at x
    let from = if x == e.h || x == e.vt {
        e.bend
    } else {
        unreachable!()
    };
    let on_h = x.1 == s.bend.1;
    let inner = if on_h {
        (from.1 > x.1) == (s.vt.1 > s.bend.1)
    } else {
        (from.0 > x.0) == (s.h.0 > s.bend.0)
    };
    let outer_first = s.is_odd_kind();
    // sides 1/2 run tip-to-bend then bend-to-tip; 4/5 the reverse
    let first_side = inner != outer_first;
    match (on_h, first_side) {
        (true, true) => (1, (x.0 - s.h.0).abs()),
        (false, true) => (2, (x.1 - s.bend.1).abs()),
        (false, false) => (4, (x.1 - s.vt.1).abs()),
        (true, false) => (5, (x.0 - s.bend.0).abs()),
    }
}

struct ArrFace {
    /// Half-edges `(node, direction)` in walk order.
    darts: Vec<(usize, usize)>,
    /// Twice the signed area.
    area2: i64,
}

/// Plane straight-line graph formed by all legs, split at contacts.
struct Arrangement {
    pts: Vec<Pt>,
    /// Per node and direction (east, north, west, south): far node and
    /// shape id.
    adj: Vec<[Option<(usize, usize)>; 4]>,
}

fn direction(a: Pt, b: Pt) -> usize {
    match (b.0.cmp(&a.0), b.1.cmp(&a.1)) {
        (std::cmp::Ordering::Greater, _) => 0,
        (_, std::cmp::Ordering::Greater) => 1,
        (std::cmp::Ordering::Less, _) => 2,
        _ => 3,
    }
}

impl Arrangement {
    fn build(shapes: &[Shape], touching: &BTreeMap<(usize, usize), Vec<(Pt, usize)>>) -> Self {
        let mut on: Vec<Vec<Pt>> = shapes.iter().map(|s| vec![s.bend, s.h, s.vt]).collect();
        for (&(i, j), pts) in touching {
            let (x, owner) = pts[0];
            on[if owner == i { j } else { i }].push(x);
        }
        let mut ids: HashMap<Pt, usize> = HashMap::new();
        let mut pts = Vec::new();
        let mut adj: Vec<[Option<(usize, usize)>; 4]> = Vec::new();
        let mut node = |p: Pt, pts: &mut Vec<Pt>, adj: &mut Vec<[Option<(usize, usize)>; 4]>| {
            *ids.entry(p).or_insert_with(|| {
                pts.push(p);
                adj.push([None; 4]);
                pts.len() - 1
            })
        };
        for (s, list) in shapes.iter().zip(on) {
            for seg in s.segs() {
                let mut along: Vec<Pt> =
                    list.iter().copied().filter(|&p| seg.contains(p)).collect();
                along.sort_unstable();
                along.dedup();
                for w in along.windows(2) {
                    let a = node(w[0], &mut pts, &mut adj);
                    let b = node(w[1], &mut pts, &mut adj);
                    adj[a][direction(w[0], w[1])] = Some((b, s.v));
                    adj[b][direction(w[1], w[0])] = Some((a, s.v));
                }
            }
        }
        Arrangement { pts, adj }
    }

    /// Traces every face with the face on the left of each half-edge.
    fn faces(&self) -> Vec<ArrFace> {
        let mut seen: Vec<[bool; 4]> = vec![[false; 4]; self.pts.len()];
        let mut out = Vec::new();
        for a in 0..self.pts.len() {
            for d in 0..4 {
                if self.adj[a][d].is_none() || seen[a][d] {
                    continue;
                }
                let mut darts = Vec::new();
                let mut area2 = 0;
                let (mut x, mut dx) = (a, d);
                while !seen[x][dx] {
                    seen[x][dx] = true;
                    darts.push((x, dx));
                    let (y, _) = self.adj[x][dx].unwrap();
                    let (p, q) = (self.pts[x], self.pts[y]);
                    area2 += p.0 * q.1 - q.0 * p.1;
                    let back = (dx + 2) % 4;
                    // first direction clockwise after the way back
                    let next = (1..=4)
                        .map(|k| (back + 4 - k) % 4)
                        .find(|&e| self.adj[y][e].is_some())
                        .unwrap();
                    x = y;
                    dx = next;
                }
                out.push(ArrFace { darts, area2 });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::lcontact::Contact;

    fn shape(v: usize, ty: Quadrant, bend: [i64; 2], h_end: [i64; 2], v_end: [i64; 2]) -> LShape {
        LShape {
            v,
            ty,
            bend,
            h_end,
            v_end,
        }
    }

    fn triangle() -> LContactRepresentation {
        LContactRepresentation {
            n: 3,
            shapes: vec![
                shape(1, Quadrant::I, [3, 1], [4, 1], [3, 4]),
                shape(2, Quadrant::I, [1, 3], [3, 3], [1, 4]),
                shape(3, Quadrant::I, [2, 2], [3, 2], [2, 3]),
            ],
            contacts: vec![
                Contact {
                    edge: [2, 1],
                    point: [3, 3],
                    endpoint_of: 2,
                },
                Contact {
                    edge: [3, 1],
                    point: [3, 2],
                    endpoint_of: 3,
                },
                Contact {
                    edge: [3, 2],
                    point: [2, 3],
                    endpoint_of: 3,
                },
            ],
        }
    }

    #[test]
    fn triangle_is_valid() {
        validate_representation(&k3(), &triangle()).unwrap();
    }

    #[test]
    fn bend_contact_fails_c() {
        let mut r = triangle();
        r.shapes[0] = shape(1, Quadrant::I, [3, 2], [4, 2], [3, 4]);
        let v = validate_representation(&k3(), &r).unwrap_err();
        assert_eq!(v.clause, Clause::C, "{v:?}");
    }

    #[test]
    fn endpoint_contact_fails_c() {
        let mut r = triangle();
        r.shapes[1].h_end = [2, 3];
        let v = validate_representation(&k3(), &r).unwrap_err();
        assert_eq!(v.clause, Clause::C, "{v:?}");
    }

    #[test]
    fn crossing_fails_a() {
        let mut r = triangle();
        r.shapes[2].h_end = [5, 2];
        assert_eq!(
            validate_representation(&k3(), &r).unwrap_err().clause,
            Clause::A
        );
    }

    #[test]
    fn missing_contact_fails_b() {
        let mut r = triangle();
        for s in &mut r.shapes {
            for p in [&mut s.bend, &mut s.h_end, &mut s.v_end] {
                p[0] *= 2;
                p[1] *= 2;
            }
        }
        for c in &mut r.contacts {
            c.point = [c.point[0] * 2, c.point[1] * 2];
        }
        validate_representation(&k3(), &r).unwrap_err();
        r.shapes[2].v_end = [4, 5];
        let v = validate_representation(&k3(), &r).unwrap_err();
        assert_eq!(v.clause, Clause::B, "{v:?}");
        assert!(v.witness.contains("2-3"), "{v:?}");
    }

    #[test]
    fn degenerate_shape_is_rejected() {
        let mut r = triangle();
        r.shapes[2].v_end = [2, 2];
        assert_eq!(
            validate_representation(&k3(), &r).unwrap_err().clause,
            Clause::Shape
        );
    }

    #[test]
    fn off_grid_bend_fails_g() {
        let mut r = triangle();
        for s in &mut r.shapes {
            for p in [&mut s.bend, &mut s.h_end, &mut s.v_end] {
                p[0] += 10;
            }
        }
        for c in &mut r.contacts {
            c.point[0] += 10;
        }
        assert_eq!(
            validate_representation(&k3(), &r).unwrap_err().clause,
            Clause::G
        );
    }

    #[test]
    fn k4_drawing_fails_f() {
        let r = LContactRepresentation {
            n: 4,
            shapes: vec![
                shape(1, Quadrant::I, [0, 0], [20, 0], [0, 20]),
                shape(2, Quadrant::III, [16, 12], [10, 12], [16, 0]),
                shape(3, Quadrant::III, [10, 14], [0, 14], [10, 8]),
                shape(4, Quadrant::IV, [4, 8], [16, 8], [4, 0]),
            ],
            contacts: vec![
                Contact {
                    edge: [2, 1],
                    point: [16, 0],
                    endpoint_of: 2,
                },
                Contact {
                    edge: [3, 1],
                    point: [0, 14],
                    endpoint_of: 3,
                },
                Contact {
                    edge: [4, 1],
                    point: [4, 0],
                    endpoint_of: 4,
                },
                Contact {
                    edge: [3, 2],
                    point: [10, 12],
                    endpoint_of: 2,
                },
                Contact {
                    edge: [4, 2],
                    point: [16, 8],
                    endpoint_of: 4,
                },
                Contact {
                    edge: [4, 3],
                    point: [10, 8],
                    endpoint_of: 3,
                },
            ],
        };
        let v = validate_representation(&k4(), &r).unwrap_err();
        assert_eq!(v.clause, Clause::F, "{v:?}");
    }
}
