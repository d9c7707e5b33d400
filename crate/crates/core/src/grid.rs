//! Lattice points, graphs, representations and their JSON encoding.

use std::collections::BTreeSet;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A lattice point. Two-dimensional points keep `z = 0`.
pub type Point = [i64; 3];

/// An ordered sequence of lattice points, consecutive points one step apart.
pub type LatticePath = Vec<Point>;

pub fn l1(a: Point, b: Point) -> i64 {
    (0..3).map(|k| (a[k] - b[k]).abs()).sum()
}

/// True when `path` is a lattice path whose length equals the l1 distance of its ends.
pub fn is_manhattan(path: &[Point]) -> bool {
    let Some((first, last)) = path.first().zip(path.last()) else {
        return false;
    };
    path.windows(2).all(|w| l1(w[0], w[1]) == 1) && (path.len() as i64 - 1) == l1(*first, *last)
}

/// Number of direction changes along a lattice path.
pub fn bend_count(path: &[Point]) -> usize {
    let dirs: Vec<Point> = path
        .windows(2)
        .map(|w| [w[1][0] - w[0][0], w[1][1] - w[0][1], w[1][2] - w[0][2]])
        .collect();
    dirs.windows(2).filter(|d| d[0] != d[1]).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;
    fn try_from(raw: GraphJson) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for [u, v] in &raw.edges {
            if u == v {
                return invalid("self-loop");
            }
            if *u >= raw.n || *v >= raw.n {
                return invalid(format!("label {} out of range for n={}", u.max(v), raw.n));
            }
            if !seen.insert((*u.min(v), *u.max(v))) {
                return invalid(format!("duplicate edge [{u},{v}]"));
            }
        }
        Ok(Graph::from_sorted(raw.n, seen.into_iter().collect()))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson { n: g.n, edges: g.edges.iter().map(|&(u, v)| [u, v]).collect() }
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range labels.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Graph::try_from(GraphJson { n, edges: edges.into_iter().map(|(u, v)| [u, v]).collect() })
    }

    /// Builds a graph from an edge list, silently dropping duplicates.
    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let set: BTreeSet<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        Graph::new(n, set)
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj.iter_mut().for_each(|a| a.sort_unstable());
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Graph::from_sorted(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn complement(&self) -> Graph {
        let edges = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect();
        Graph::from_sorted(self.n, edges)
    }

    /// Induced subgraph on `vs`, relabelled in the given order.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        let pos: FxHashMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter_map(|(u, v)| Some((*pos.get(u)?, *pos.get(v)?)))
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        Graph::from_sorted(vs.len(), edges)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &w in &self.adj[comp[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_err)
    }
}

fn json_err(e: serde_json::Error) -> Error {
    // validation errors surface through serde's custom message
    let msg = e.to_string();
    match msg.split(" at line ").next() {
        Some(head) if e.is_data() => Error::Invalid(head.to_string()),
        _ => Error::Json(msg),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Occupancy {
    Free,
    Blocked,
}

/// Inclusive axis-aligned box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub min: Point,
    pub max: Point,
}

impl Bounds {
    pub fn new(min: Point, max: Point) -> Self {
        Bounds { min, max }
    }

    pub fn of_points<'a>(pts: impl IntoIterator<Item = &'a Point>) -> Option<Self> {
        let mut it = pts.into_iter();
        let first = *it.next()?;
        Some(it.fold(Bounds::new(first, first), |b, p| b.include(*p)))
    }

    pub fn include(self, p: Point) -> Self {
        let mut b = self;
        for (k, &c) in p.iter().enumerate() {
            b.min[k] = b.min[k].min(c);
            b.max[k] = b.max[k].max(c);
        }
        b
    }

    pub fn contains(&self, p: Point) -> bool {
        (0..3).all(|k| self.min[k] <= p[k] && p[k] <= self.max[k])
    }

    pub fn extent(&self, k: usize) -> i64 {
        self.max[k] - self.min[k] + 1
    }

    pub fn volume(&self) -> u128 {
        (0..3).map(|k| self.extent(k).max(0) as u128).product()
    }

    pub fn padded(&self, pad: i64, dim: usize) -> Self {
        let mut b = *self;
        for k in 0..dim {
            b.min[k] -= pad;
            b.max[k] += pad;
        }
        b
    }
}

/// A lattice field: vertex placement plus the cells that differ from the default occupancy.
#[derive(Debug, Clone)]
pub struct Representation {
    dim: usize,
    default: Occupancy,
    bounds: Option<Bounds>,
    vertices: Vec<Point>,
    cells: Vec<Point>,
    cell_set: FxHashSet<Point>,
    vertex_at: FxHashMap<Point, usize>,
}

impl PartialEq for Representation {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim
            && self.default == o.default
            && self.bounds == o.bounds
            && self.vertices == o.vertices
            && self.cells == o.cells
    }
}

impl Eq for Representation {}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepJson {
    dim: usize,
    default: Occupancy,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    bounds: Option<[Vec<i64>; 2]>,
    vertices: Vec<Vec<i64>>,
    cells: Vec<Vec<i64>>,
}

fn to_coords(p: &Point, dim: usize) -> Vec<i64> {
    p[..dim].to_vec()
}

fn from_coords(c: &[i64], dim: usize) -> Result<Point> {
    if c.len() != dim {
        return invalid(format!("expected {dim} coordinates, got {}", c.len()));
    }
    let mut p = [0; 3];
    p[..dim].copy_from_slice(c);
    Ok(p)
}

impl Representation {
    /// Validates and builds a representation. `cells` are the exceptions to `default`.
    pub fn new(
        dim: usize,
        default: Occupancy,
        bounds: Option<Bounds>,
        vertices: Vec<Point>,
        cells: impl IntoIterator<Item = Point>,
    ) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return invalid(format!("dimension must be 2 or 3, got {dim}"));
        }
        let flat = |p: &Point| dim == 3 || p[2] == 0;
        let mut cells: Vec<Point> = cells.into_iter().collect();
        cells.sort_unstable();
        cells.dedup();
        if !vertices.iter().chain(&cells).all(flat) {
            return invalid("2D representation has a nonzero z coordinate");
        }
        let mut vertex_at = FxHashMap::default();
        for (i, &p) in vertices.iter().enumerate() {
            if vertex_at.insert(p, i).is_some() {
                return invalid("two vertices share a position");
            }
        }
        if cells.iter().any(|c| vertex_at.contains_key(c)) {
            return invalid("cell collides with vertex");
        }
        match (default, bounds) {
            (Occupancy::Blocked, None) => return invalid("bounds required when default is blocked"),
            (_, Some(b)) => {
                if !flat(&b.min) || !flat(&b.max) || (0..dim).any(|k| b.min[k] > b.max[k]) {
                    return invalid("malformed bounds");
                }
                if !vertices.iter().chain(&cells).all(|&p| b.contains(p)) {
                    return invalid("bounds do not contain every vertex and cell");
                }
            }
            _ => {}
        }
        let cell_set = cells.iter().copied().collect();
        Ok(Representation { dim, default, bounds, vertices, cells, cell_set, vertex_at })
    }

    /// Default-free representation with the given obstacles.
    pub fn with_obstacles(dim: usize, vertices: Vec<Point>, obstacles: impl IntoIterator<Item = Point>) -> Result<Self> {
        Representation::new(dim, Occupancy::Free, None, vertices, obstacles)
    }

    /// Default-blocked representation over `bounds` with the given free cells.
    pub fn with_free_cells(
        dim: usize,
        bounds: Bounds,
        vertices: Vec<Point>,
        free: impl IntoIterator<Item = Point>,
    ) -> Result<Self> {
        Representation::new(dim, Occupancy::Blocked, Some(bounds), vertices, free)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn default_occupancy(&self) -> Occupancy {
        self.default
    }

    pub fn bounds(&self) -> Option<Bounds> {
        self.bounds
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Result<Point> {
        self.vertices.get(v).copied().ok_or(Error::UnknownVertex(v))
    }

    /// Exception cells in sorted order.
    pub fn cells(&self) -> &[Point] {
        &self.cells
    }

    pub fn vertex_at(&self, p: Point) -> Option<usize> {
        self.vertex_at.get(&p).copied()
    }

    pub fn is_obstacle(&self, p: Point) -> bool {
        if self.vertex_at.contains_key(&p) {
            return false;
        }
        match self.default {
            Occupancy::Free => self.cell_set.contains(&p),
            Occupancy::Blocked => {
                !self.bounds.is_some_and(|b| b.contains(p)) || !self.cell_set.contains(&p)
            }
        }
    }

    /// Neither an obstacle nor a vertex position.
    pub fn is_open(&self, p: Point) -> bool {
        match self.default {
            Occupancy::Free => !self.cell_set.contains(&p) && !self.vertex_at.contains_key(&p),
            Occupancy::Blocked => self.cell_set.contains(&p),
        }
    }

    /// Number of point obstacles; inside the bounds for default-blocked representations.
    pub fn obstacle_count(&self) -> u128 {
        match self.default {
            Occupancy::Free => self.cells.len() as u128,
            Occupancy::Blocked => {
                let b = self.bounds.expect("validated");
                b.volume() - self.cells.len() as u128 - self.vertices.len() as u128
            }
        }
    }

    /// Explicit obstacle list. Fails when the list would exceed `limit` points.
    pub fn obstacles(&self, limit: usize) -> Result<Vec<Point>> {
        if self.obstacle_count() > limit as u128 {
            return Err(Error::Limit(format!("{} obstacles exceed {limit}", self.obstacle_count())));
        }
        Ok(match self.default {
            Occupancy::Free => self.cells.clone(),
            Occupancy::Blocked => {
                let b = self.bounds.expect("validated");
                lattice_box(b, self.dim).filter(|&p| self.is_obstacle(p)).collect()
            }
        })
    }

    /// Bounding box of every vertex and cell.
    pub fn extent(&self) -> Option<Bounds> {
        Bounds::of_points(self.vertices.iter().chain(&self.cells))
    }

    /// Box guaranteed to contain every shortest path between vertices.
    pub fn vertex_box(&self) -> Option<Bounds> {
        Bounds::of_points(&self.vertices)
    }

    /// Swaps the first two axes.
    pub fn transpose(&self) -> Representation {
        let sw = |p: &Point| [p[1], p[0], p[2]];
        Representation::new(
            self.dim,
            self.default,
            self.bounds.map(|b| Bounds::new(sw(&b.min), sw(&b.max))),
            self.vertices.iter().map(sw).collect(),
            self.cells.iter().map(sw),
        )
        .expect("transpose preserves validity")
    }

    /// Re-checks every representation invariant.
    pub fn validate(&self) -> Result<()> {
        Representation::new(self.dim, self.default, self.bounds, self.vertices.clone(), self.cells.clone()).map(|_| ())
    }

    pub fn to_json(&self) -> String {
        let d = self.dim;
        let raw = RepJson {
            dim: d,
            default: self.default,
            bounds: self.bounds.map(|b| [to_coords(&b.min, d), to_coords(&b.max, d)]),
            vertices: self.vertices.iter().map(|p| to_coords(p, d)).collect(),
            cells: self.cells.iter().map(|p| to_coords(p, d)).collect(),
        };
        serde_json::to_string(&raw).expect("representation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RepJson = serde_json::from_str(text).map_err(json_err)?;
        let d = raw.dim;
        if d != 2 && d != 3 {
            return invalid(format!("dimension must be 2 or 3, got {d}"));
        }
        let bounds = match &raw.bounds {
            Some([lo, hi]) => Some(Bounds::new(from_coords(lo, d)?, from_coords(hi, d)?)),
            None => None,
        };
        let vertices = raw.vertices.iter().map(|c| from_coords(c, d)).collect::<Result<_>>()?;
        let cells = raw.cells.iter().map(|c| from_coords(c, d)).collect::<Result<Vec<_>>>()?;
        Representation::new(d, raw.default, bounds, vertices, cells)
    }
}

/// Every lattice point of `b` in lexicographic order; only the first `dim` axes vary.
pub fn lattice_box(b: Bounds, dim: usize) -> impl Iterator<Item = Point> {
    let (z0, z1) = if dim == 3 { (b.min[2], b.max[2]) } else { (b.min[2], b.min[2]) };
    (b.min[0]..=b.max[0]).flat_map(move |x| (b.min[1]..=b.max[1]).flat_map(move |y| (z0..=z1).map(move |z| [x, y, z])))
}

pub fn p2(x: i64, y: i64) -> Point {
    [x, y, 0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_json_is_sorted_and_compact() {
        let g = Graph::new(3, [(1, 2), (0, 2), (1, 0)]).unwrap();
        assert_eq!(g.to_json(), r#"{"n":3,"edges":[[0,1],[0,2],[1,2]]}"#);
        assert_eq!(Graph::empty(4).to_json(), r#"{"n":4,"edges":[]}"#);
    }

    #[test]
    fn graph_decode_errors() {
        let e = Graph::from_json(r#"{"n":2,"edges":[[0,0]]}"#).unwrap_err();
        assert_eq!(e, Error::Invalid("self-loop".into()));
        assert!(Graph::from_json(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
        assert!(Graph::from_json(r#"{"n":2,"edges":[[0,1],[1,0]]}"#).is_err());
    }

    #[test]
    fn rep_roundtrip_and_collision() {
        let r = Representation::with_obstacles(2, vec![p2(0, 0), p2(1, 0)], []).unwrap();
        let s = r.to_json();
        assert_eq!(s, r#"{"dim":2,"default":"free","vertices":[[0,0],[1,0]],"cells":[]}"#);
        assert_eq!(Representation::from_json(&s).unwrap().to_json(), s);
        let bad = r#"{"dim":2,"default":"free","vertices":[[0,0],[1,0]],"cells":[[1,0]]}"#;
        assert_eq!(Representation::from_json(bad).unwrap_err(), Error::Invalid("cell collides with vertex".into()));
        let nob = r#"{"dim":2,"default":"blocked","vertices":[[0,0]],"cells":[]}"#;
        assert!(Representation::from_json(nob).is_err());
        let d4 = r#"{"dim":4,"default":"free","vertices":[],"cells":[]}"#;
        assert!(Representation::from_json(d4).is_err());
    }

    #[test]
    fn blocked_obstacle_count() {
        let b = Bounds::new(p2(0, 0), p2(2, 1));
        let r = Representation::with_free_cells(2, b, vec![p2(0, 0), p2(2, 0)], [p2(1, 0)]).unwrap();
        assert_eq!(r.obstacle_count(), 3);
        assert!(r.is_obstacle(p2(1, 1)));
        assert!(r.is_obstacle(p2(5, 5)));
        assert!(!r.is_obstacle(p2(0, 0)));
        assert_eq!(r.obstacles(10).unwrap().len(), 3);
    }
}
