//! Point sets for the restricted geodesic and obstacle embeddability problems,
//! the geodesic drawing to obstacle representation transform, and a small
//! exhaustive obstacle-embeddability decider.

use std::fmt;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::{is_manhattan, p2, Bounds, Graph, LatticePath, Point, Representation};
use crate::par::{self, Exec};
use crate::visibility::verify;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Gpse,
    Oeps,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gpse" => Ok(Variant::Gpse),
            "oeps" => Ok(Variant::Oeps),
            _ => invalid(format!("unknown variant {s}")),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Gpse => "gpse",
            Variant::Oeps => "oeps",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSetInstance {
    pub p0: Vec<[i64; 2]>,
    pub p1: Vec<[i64; 2]>,
    pub p2: Vec<[i64; 2]>,
    pub variant: Variant,
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
}

impl PointSetInstance {
    pub fn new(variant: Variant, n: usize, k1: usize, k2: usize) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::Precondition(format!("n must be even and at least 4, got {n}")));
        }
        if k1 + k2 != n / 2 + 1 {
            return Err(Error::Precondition(format!("k1 + k2 must equal {}, got {}", n / 2 + 1, k1 + k2)));
        }
        let s = match variant {
            Variant::Gpse => 1,
            Variant::Oeps => 2,
        };
        let n_ = n as i64;
        let p0 = (0..=2 * n_ - 2).map(|j| [-j, 0]).collect();
        let p1 = (1..=k1 as i64).map(|j| [s * j, s * n_ * j]).collect();
        let p2 = (1..=k2 as i64).map(|j| [s * j, -s * n_ * j]).collect();
        Ok(PointSetInstance { p0, p1, p2, variant, n, k1, k2 })
    }

    /// All points in the order `p0`, `p1`, `p2`.
    pub fn points(&self) -> Vec<Point> {
        self.p0.iter().chain(&self.p1).chain(&self.p2).map(|&[x, y]| p2(x, y)).collect()
    }

    pub fn len(&self) -> usize {
        self.p0.len() + self.p1.len() + self.p2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }
}

pub fn gpse_points(n: usize, k1: usize, k2: usize) -> Result<PointSetInstance> {
    PointSetInstance::new(Variant::Gpse, n, k1, k2)
}

pub fn oeps_points(n: usize, k1: usize, k2: usize) -> Result<PointSetInstance> {
    PointSetInstance::new(Variant::Oeps, n, k1, k2)
}

/// Reads a point list from either `{"p0": [...], "p1": [...], "p2": [...]}`
/// or a bare array of `[x, y]` pairs.
pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Input {
        Flat(Vec<[i64; 2]>),
        Parts { p0: Vec<[i64; 2]>, p1: Vec<[i64; 2]>, p2: Vec<[i64; 2]> },
    }
    let input: Input = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let pts = match input {
        Input::Flat(v) => v,
        Input::Parts { p0, p1, p2 } => [p0, p1, p2].concat(),
    };
    Ok(pts.into_iter().map(|[x, y]| p2(x, y)).collect())
}

/// Planar drawing whose edges are Manhattan lattice paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicDrawing {
    pub vertices: Vec<Point>,
    pub edges: Vec<(usize, usize)>,
    pub paths: Vec<LatticePath>,
}

impl GeodesicDrawing {
    pub fn graph(&self) -> Result<Graph> {
        Graph::new(self.vertices.len(), self.edges.iter().copied())
    }

    pub fn validate(&self) -> Result<()> {
        if self.edges.len() != self.paths.len() {
            return invalid("one path per edge required");
        }
        let at: FxHashMap<Point, usize> = self.vertices.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        if at.len() != self.vertices.len() || self.vertices.iter().any(|p| p[2] != 0) {
            return invalid("vertices must be distinct points of the plane");
        }
        let mut used: FxHashSet<Point> = FxHashSet::default();
        for (&(u, v), path) in self.edges.iter().zip(&self.paths) {
            let (a, b) = (self.vertex(u)?, self.vertex(v)?);
            let ends = (path.first(), path.last());
            if ends != (Some(&a), Some(&b)) && ends != (Some(&b), Some(&a)) {
                return invalid(format!("path of edge ({u}, {v}) does not join its endpoints"));
            }
            if !is_manhattan(path) {
                return invalid(format!("path of edge ({u}, {v}) is not a Manhattan path"));
            }
            for &p in &path[1..path.len() - 1] {
                if at.contains_key(&p) || !used.insert(p) {
                    return Err(Error::Precondition(format!("path of edge ({u}, {v}) meets another path or vertex at {p:?}")));
                }
            }
        }
        Ok(())
    }

    fn vertex(&self, v: usize) -> Result<Point> {
        self.vertices.get(v).copied().ok_or(Error::UnknownVertex(v))
    }
}

fn stretch_x(x: i64) -> i64 {
    if x >= 0 {
        2 * x
    } else {
        x
    }
}

fn stretch_path(path: &[Point]) -> LatticePath {
    let mut out = vec![[stretch_x(path[0][0]), 2 * path[0][1], 0]];
    for w in path.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (sa, sb) = ([stretch_x(a[0]), 2 * a[1], 0], [stretch_x(b[0]), 2 * b[1], 0]);
        if crate::grid::l1(sa, sb) == 2 {
            out.push([(sa[0] + sb[0]) / 2, (sa[1] + sb[1]) / 2, 0]);
        }
        out.push(sb);
    }
    out
}

/// Doubles every row, doubles the columns with `x >= 0`, and blocks every
/// point of the bounding box off the stretched paths.
pub fn geodesic_to_rep(d: &GeodesicDrawing) -> Result<Representation> {
    d.validate()?;
    let g = d.graph()?;
    let paths: Vec<LatticePath> = d.paths.iter().map(|p| stretch_path(p)).collect();
    let vertices: Vec<Point> = d.vertices.iter().map(|p| [stretch_x(p[0]), 2 * p[1], 0]).collect();
    let bounds = Bounds::of_points(vertices.iter().chain(paths.iter().flatten()))
        .ok_or_else(|| Error::Precondition("drawing has no vertices".into()))?;
    let vset: FxHashSet<Point> = vertices.iter().copied().collect();
    let free: Vec<Point> = paths.iter().flatten().copied().filter(|p| !vset.contains(p)).collect();
    let rep = Representation::with_free_cells(2, bounds, vertices, free)?;
    if !verify(&rep, &g)?.matches {
        return Err(Error::Construction("stretched drawing does not realise the graph".into()));
    }
    Ok(rep)
}

/// Search limits for [`oeps_decide`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OepsCaps {
    pub max_n: usize,
    pub max_area: u128,
    /// Search nodes allowed per bijection.
    pub node_budget: u64,
}

impl Default for OepsCaps {
    fn default() -> Self {
        OepsCaps { max_n: 6, max_area: 400, node_budget: 2_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OepsAnswer {
    Yes(Representation),
    No,
    Unknown,
}

impl OepsAnswer {
    pub fn label(&self) -> &'static str {
        match self {
            OepsAnswer::Yes(_) => "yes",
            OepsAnswer::No => "no",
            OepsAnswer::Unknown => "unknown",
        }
    }
}

struct Board {
    min: Point,
    w: i64,
    h: i64,
}

impl Board {
    fn idx(&self, p: Point) -> usize {
        ((p[1] - self.min[1]) * self.w + p[0] - self.min[0]) as usize
    }
}

struct Oeps<'a> {
    board: &'a Board,
    pos: Vec<Point>,
    vertex_cell: Vec<bool>,
    order: Vec<(usize, usize)>,
    non_edges: Vec<(usize, usize)>,
    free: Vec<u32>,
    nodes: u64,
    budget: u64,
    truncated: bool,
}

impl Oeps<'_> {
    fn passable(&self, p: Point, a: Point, b: Point) -> bool {
        if p == a || p == b {
            return true;
        }
        let i = self.board.idx(p);
        !self.vertex_cell[i] && self.free[i] > 0
    }

    fn visible(&self, u: usize, v: usize) -> bool {
        let (a, b) = (self.pos[u], self.pos[v]);
        let (sx, sy) = ((b[0] - a[0]).signum(), (b[1] - a[1]).signum());
        let (nx, ny) = ((b[0] - a[0]).abs() + 1, (b[1] - a[1]).abs() + 1);
        let mut reach = vec![false; (nx * ny) as usize];
        for i in 0..nx {
            for j in 0..ny {
                let p = p2(a[0] + sx * i, a[1] + sy * j);
                let from = (i, j) == (0, 0)
                    || (i > 0 && reach[((i - 1) * ny + j) as usize])
                    || (j > 0 && reach[(i * ny + j - 1) as usize]);
                reach[(i * ny + j) as usize] = from && self.passable(p, a, b);
            }
        }
        reach[(nx * ny - 1) as usize]
    }

    fn leak(&self) -> bool {
        self.non_edges.iter().any(|&(u, v)| self.visible(u, v))
    }

    fn edge(&mut self, k: usize) -> bool {
        let Some(&(u, v)) = self.order.get(k) else {
            return true;
        };
        if self.visible(u, v) {
            return self.edge(k + 1);
        }
        self.walk(k, self.pos[u], self.pos[v])
    }

    fn walk(&mut self, k: usize, cur: Point, b: Point) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.truncated = true;
            return false;
        }
        if cur == b {
            return !self.leak() && self.edge(k + 1);
        }
        for axis in 0..2 {
            let s = (b[axis] - cur[axis]).signum();
            if s == 0 {
                continue;
            }
            let mut next = cur;
            next[axis] += s;
            let i = self.board.idx(next);
            if next != b && self.vertex_cell[i] {
                continue;
            }
            self.free[i] += 1;
            if self.walk(k, next, b) {
                return true;
            }
            self.free[i] -= 1;
            if self.truncated {
                return false;
            }
        }
        false
    }
}

enum Outcome {
    Found(Vec<Point>, Vec<Point>),
    Exhausted,
    Truncated,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Decides whether `g` has an obstacle representation with its vertices on
/// `s`, searching bijections and one Manhattan path per edge inside the
/// bounding box of `s`; every other point of the box is an obstacle.
pub fn oeps_decide(g: &Graph, s: &[Point], caps: OepsCaps) -> Result<OepsAnswer> {
    oeps_decide_with(g, s, caps, Exec::default())
}

pub fn oeps_decide_with(g: &Graph, s: &[Point], caps: OepsCaps, exec: Exec) -> Result<OepsAnswer> {
    if s.len() != g.n() {
        return Err(Error::Precondition(format!("{} points for {} vertices", s.len(), g.n())));
    }
    if g.n() == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    if s.iter().any(|p| p[2] != 0) || s.iter().collect::<FxHashSet<_>>().len() != s.len() {
        return invalid("points must be distinct points of the plane");
    }
    let bounds = Bounds::of_points(s).expect("nonempty");
    if g.n() > caps.max_n || bounds.volume() > caps.max_area {
        return Err(Error::Limit(format!(
            "oeps search accepts n <= {} and bounding-box area <= {}",
            caps.max_n, caps.max_area
        )));
    }
    let board = Board { min: bounds.min, w: bounds.extent(0), h: bounds.extent(1) };
    let mut vertex_cell = vec![false; (board.w * board.h) as usize];
    for &p in s {
        vertex_cell[board.idx(p)] = true;
    }
    let n = g.n();
    let non_edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
    let bijections = permutations(n);
    let outcomes = par::map(exec, &bijections, |perm| {
        let pos: Vec<Point> = perm.iter().map(|&i| s[i]).collect();
        let mut order = g.edges().to_vec();
        order.sort_by_key(|&(u, v)| {
            let b = Bounds::of_points([&pos[u], &pos[v]]).expect("two points");
            (b.volume(), u, v)
        });
        let mut search = Oeps {
            board: &board,
            pos,
            vertex_cell: vertex_cell.clone(),
            order,
            non_edges: non_edges.clone(),
            free: vec![0; vertex_cell.len()],
            nodes: 0,
            budget: caps.node_budget,
            truncated: false,
        };
        if !search.leak() && search.edge(0) {
            let free = (0..board.w * board.h)
                .filter(|&i| search.free[i as usize] > 0 && !search.vertex_cell[i as usize])
                .map(|i| p2(board.min[0] + i % board.w, board.min[1] + i / board.w))
                .collect();
            Outcome::Found(search.pos, free)
        } else if search.truncated {
            Outcome::Truncated
        } else {
            Outcome::Exhausted
        }
    });
    if let Some((pos, free)) = outcomes.iter().find_map(|o| match o {
        Outcome::Found(p, f) => Some((p.clone(), f.clone())),
        _ => None,
    }) {
        let rep = Representation::with_free_cells(2, bounds, pos, free)?;
        if !verify(&rep, g)?.matches {
            return Err(Error::Construction("decider witness fails verification".into()));
        }
        return Ok(OepsAnswer::Yes(rep));
    }
    if outcomes.iter().any(|o| matches!(o, Outcome::Truncated)) {
        Ok(OepsAnswer::Unknown)
    } else {
        Ok(OepsAnswer::No)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_point_sets() {
        let i = gpse_points(4, 2, 1).unwrap();
        assert_eq!(i.p0, (0..=6).map(|j| [-j, 0]).collect::<Vec<_>>());
        assert_eq!(i.p1, vec![[1, 4], [2, 8]]);
        assert_eq!(i.p2, vec![[1, -4]]);
        let o = oeps_points(4, 2, 1).unwrap();
        assert_eq!(o.p0, i.p0);
        assert_eq!(o.p1, vec![[2, 8], [4, 16]]);
        assert_eq!(o.p2, vec![[2, -8]]);
        assert_eq!(gpse_points(8, 5, 0).unwrap().len(), 20);
        assert!(gpse_points(5, 2, 1).is_err());
        assert!(gpse_points(4, 1, 1).is_err());
        assert_eq!(PointSetInstance::from_json(&o.to_json()).unwrap(), o);
        assert_eq!(parse_points(&o.to_json()).unwrap(), o.points());
        assert_eq!(parse_points("[[1,2],[3,4]]").unwrap(), vec![p2(1, 2), p2(3, 4)]);
    }

    #[test]
    fn collinear_path_stretches() {
        let d = GeodesicDrawing {
            vertices: vec![p2(-1, 0), p2(0, 0), p2(1, 0)],
            edges: vec![(0, 1), (1, 2)],
            paths: vec![vec![p2(-1, 0), p2(0, 0)], vec![p2(0, 0), p2(1, 0)]],
        };
        let rep = geodesic_to_rep(&d).unwrap();
        assert_eq!(rep.vertices(), &[p2(-1, 0), p2(0, 0), p2(2, 0)]);
        assert_eq!(rep.obstacle_count(), 0);
    }

    #[test]
    fn rejects_bad_drawings() {
        let bent = GeodesicDrawing {
            vertices: vec![p2(0, 0), p2(2, 0)],
            edges: vec![(0, 1)],
            paths: vec![vec![p2(0, 0), p2(0, 1), p2(1, 1), p2(1, 0), p2(2, 0)]],
        };
        assert!(matches!(geodesic_to_rep(&bent), Err(Error::Invalid(_))));
        let crossing = GeodesicDrawing {
            vertices: vec![p2(0, 1), p2(2, 1), p2(1, 0), p2(1, 2)],
            edges: vec![(0, 1), (2, 3)],
            paths: vec![vec![p2(0, 1), p2(1, 1), p2(2, 1)], vec![p2(1, 0), p2(1, 1), p2(1, 2)]],
        };
        assert!(matches!(geodesic_to_rep(&crossing), Err(Error::Precondition(_))));
    }

    #[test]
    fn decider_basics() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        let far = [p2(0, 0), p2(3, 2)];
        assert!(matches!(oeps_decide(&k2, &far, OepsCaps::default()).unwrap(), OepsAnswer::Yes(_)));
        assert_eq!(oeps_decide(&Graph::empty(2), &[p2(0, 0), p2(1, 0)], OepsCaps::default()).unwrap(), OepsAnswer::No);
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let OepsAnswer::Yes(rep) = oeps_decide(&p3, &[p2(0, 0), p2(1, 0), p2(2, 0)], OepsCaps::default()).unwrap() else {
            panic!("P3 on a line is realisable");
        };
        assert_eq!(rep.vertex(1).unwrap(), p2(1, 0));
        assert_eq!(rep.obstacle_count(), 0);
        assert!(oeps_decide(&k2, &[p2(0, 0)], OepsCaps::default()).is_err());
    }
}
