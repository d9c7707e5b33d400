//! Manhattan visibility between placed vertices.
//!
//! A pair is visible when some coordinate-monotone lattice path between the two
//! positions has every interior point open (no obstacle, no other vertex).

use std::ops::ControlFlow;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{l1, Bounds, Graph, LatticePath, Occupancy, Point, Representation};
use crate::par::{self, Exec};

/// Longest pair distance the path-enumerating oracle accepts.
pub const BRUTE_FORCE_MAX_STEPS: i64 = 18;

const DENSE_LIMIT: u128 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub matches: bool,
    pub missing_edges: Vec<(usize, usize)>,
    pub extra_edges: Vec<(usize, usize)>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn signs(a: Point, b: Point) -> [i64; 3] {
    [(b[0] - a[0]).signum(), (b[1] - a[1]).signum(), (b[2] - a[2]).signum()]
}

fn shifted(p: Point, k: usize, s: i64) -> Point {
    let mut q = p;
    q[k] += s;
    q
}

fn endpoints(rep: &Representation, u: usize, v: usize) -> Result<(Point, Point)> {
    let (a, b) = (rep.vertex(u)?, rep.vertex(v)?);
    if u == v {
        return Err(Error::Precondition("visibility needs two distinct vertices".into()));
    }
    Ok((a, b))
}

/// Visited-set over a box: a bitmap when small, a hash set otherwise.
enum Visited {
    Dense { lo: Point, ext: [i64; 3], bits: Vec<bool> },
    Sparse(FxHashSet<Point>),
}

impl Visited {
    fn over(b: Bounds) -> Self {
        if b.volume() <= DENSE_LIMIT {
            let ext = [b.extent(0), b.extent(1), b.extent(2)];
            Visited::Dense { lo: b.min, ext, bits: vec![false; b.volume() as usize] }
        } else {
            Visited::Sparse(FxHashSet::default())
        }
    }

    /// Marks `p`; returns false when it was already marked.
    fn insert(&mut self, p: Point) -> bool {
        match self {
            Visited::Dense { lo, ext, bits } => {
                let i = (((p[0] - lo[0]) * ext[1] + (p[1] - lo[1])) * ext[2] + (p[2] - lo[2])) as usize;
                !std::mem::replace(&mut bits[i], true)
            }
            Visited::Sparse(s) => s.insert(p),
        }
    }

    fn contains(&self, p: Point) -> bool {
        match self {
            Visited::Dense { lo, ext, bits } => {
                let i = (((p[0] - lo[0]) * ext[1] + (p[1] - lo[1])) * ext[2] + (p[2] - lo[2])) as usize;
                bits[i]
            }
            Visited::Sparse(s) => s.contains(&p),
        }
    }
}

/// Open points from which `to` is reachable by monotone steps from the `from` side.
fn co_reachable(rep: &Representation, from: Point, to: Point) -> Visited {
    let s = signs(from, to);
    let mut seen = Visited::over(Bounds::of_points(&[from, to]).expect("two points"));
    let mut stack = vec![to];
    seen.insert(to);
    while let Some(p) = stack.pop() {
        for k in 0..3 {
            if p[k] == from[k] {
                continue;
            }
            let q = shifted(p, k, -s[k]);
            if q != from && rep.is_open(q) && seen.insert(q) {
                stack.push(q);
            }
        }
    }
    seen
}

/// Reachability over the bounding box of the two endpoints.
pub fn is_visible(rep: &Representation, u: usize, v: usize) -> Result<bool> {
    let (a, b) = endpoints(rep, u, v)?;
    Ok(visible_points(rep, a, b))
}

pub(crate) fn visible_points(rep: &Representation, a: Point, b: Point) -> bool {
    let s = signs(a, b);
    let mut seen = Visited::over(Bounds::of_points(&[a, b]).expect("two points"));
    let mut stack = vec![a];
    seen.insert(a);
    while let Some(p) = stack.pop() {
        for k in 0..3 {
            if p[k] == b[k] {
                continue;
            }
            let q = shifted(p, k, s[k]);
            if q == b {
                return true;
            }
            if rep.is_open(q) && seen.insert(q) {
                stack.push(q);
            }
        }
    }
    false
}

/// Lexicographically least open monotone path, preferring x, then y, then z steps.
pub fn witness_path(rep: &Representation, u: usize, v: usize) -> Result<Option<LatticePath>> {
    let (a, b) = endpoints(rep, u, v)?;
    Ok(witness_points(rep, a, b))
}

pub(crate) fn witness_points(rep: &Representation, a: Point, b: Point) -> Option<LatticePath> {
    let s = signs(a, b);
    let co = co_reachable(rep, a, b);
    let mut path = vec![a];
    let mut p = a;
    while p != b {
        let next = (0..3)
            .filter(|&k| p[k] != b[k])
            .map(|k| shifted(p, k, s[k]))
            .find(|&q| q == b || co.contains(q))?;
        path.push(next);
        p = next;
    }
    Some(path)
}

/// Calls `f` on every monotone lattice path from `a` to `b`, in lexicographic
/// step order (x before y before z). Stops early when `f` breaks.
pub fn for_each_monotone_path<F>(a: Point, b: Point, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[Point]) -> ControlFlow<()>,
{
    fn rec<F: FnMut(&[Point]) -> ControlFlow<()>>(path: &mut Vec<Point>, b: Point, s: [i64; 3], f: &mut F) -> ControlFlow<()> {
        let p = *path.last().expect("nonempty");
        if p == b {
            return f(path);
        }
        for k in 0..3 {
            if p[k] != b[k] {
                path.push(shifted(p, k, s[k]));
                let r = rec(path, b, s, f);
                path.pop();
                r?;
            }
        }
        ControlFlow::Continue(())
    }
    rec(&mut vec![a], b, signs(a, b), &mut f)
}

/// All monotone paths between two points. Exponential; meant for small oracles.
pub fn monotone_paths(a: Point, b: Point) -> Vec<LatticePath> {
    let mut out = Vec::new();
    let _ = for_each_monotone_path(a, b, |p| {
        out.push(p.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// Oracle: enumerates every monotone path and tests each one point by point.
pub fn brute_force_visible(rep: &Representation, u: usize, v: usize) -> Result<bool> {
    let (a, b) = endpoints(rep, u, v)?;
    let d = l1(a, b);
    if d > BRUTE_FORCE_MAX_STEPS {
        return Err(Error::Limit(format!("distance {d} exceeds {BRUTE_FORCE_MAX_STEPS} steps")));
    }
    let mut found = false;
    let _ = for_each_monotone_path(a, b, |path| {
        if path[1..path.len() - 1].iter().all(|&p| rep.is_open(p)) {
            found = true;
        }
        ControlFlow::Continue(())
    });
    Ok(found)
}

/// Open lattice points near the vertices, indexed with a precomputed step table.
struct Field {
    points: Vec<Point>,
    // next[id * 6 + 2k + (sign > 0)]
    next: Vec<u32>,
    vertex_node: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl Field {
    fn build(rep: &Representation, region: Bounds) -> Field {
        let dim = rep.dim();
        let mut points: Vec<Point> = match rep.default_occupancy() {
            Occupancy::Blocked => rep.cells().iter().copied().filter(|&p| region.contains(p)).collect(),
            Occupancy::Free => crate::grid::lattice_box(region, dim).filter(|&p| rep.is_open(p)).collect(),
        };
        let first_vertex = points.len();
        points.extend_from_slice(rep.vertices());
        let index: FxHashMap<Point, u32> = points.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
        let mut next = vec![NONE; points.len() * 6];
        for (i, &p) in points.iter().enumerate() {
            for k in 0..dim {
                for (j, s) in [-1i64, 1].into_iter().enumerate() {
                    if let Some(&q) = index.get(&shifted(p, k, s)) {
                        next[i * 6 + 2 * k + j] = q;
                    }
                }
            }
        }
        let vertex_node = (0..rep.n()).map(|v| (first_vertex + v) as u32).collect();
        Field { points, next, vertex_node }
    }

    fn step(&self, id: u32, k: usize, s: i64) -> u32 {
        self.next[id as usize * 6 + 2 * k + usize::from(s > 0)]
    }
}

fn visible_from(rep: &Representation, field: &Field, u: usize) -> Vec<usize> {
    let dim = rep.dim();
    let n = rep.n();
    let a = rep.vertices()[u];
    let first_vertex = field.vertex_node[0] as usize;
    let mut out = Vec::new();
    let mut found = vec![false; n];
    for mask in 0..(1u32 << dim) {
        let mut s = [0i64; 3];
        for (k, sk) in s.iter_mut().enumerate().take(dim) {
            *sk = if mask >> k & 1 == 1 { 1 } else { -1 };
        }
        let targets: Vec<usize> = (u + 1..n)
            .filter(|&v| !found[v])
            .filter(|&v| (0..dim).all(|k| (rep.vertices()[v][k] - a[k]) * s[k] >= 0))
            .collect();
        if targets.is_empty() {
            continue;
        }
        let mut seen = vec![false; field.points.len()];
        let start = field.vertex_node[u];
        seen[start as usize] = true;
        let mut stack = vec![start];
        while let Some(id) = stack.pop() {
            for (k, &sk) in s.iter().enumerate().take(dim) {
                let q = field.step(id, k, sk);
                if q != NONE && !seen[q as usize] {
                    seen[q as usize] = true;
                    if (q as usize) < first_vertex {
                        stack.push(q);
                    }
                }
            }
        }
        for v in targets {
            if seen[field.vertex_node[v] as usize] {
                found[v] = true;
                out.push(v);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Visibility graph, evaluated per source vertex in parallel.
pub fn visibility_graph(rep: &Representation) -> Graph {
    visibility_graph_with(rep, Exec::default())
}

pub fn visibility_graph_with(rep: &Representation, exec: Exec) -> Graph {
    let Some(region) = rep.vertex_box() else {
        return Graph::empty(0);
    };
    let field = Field::build(rep, region);
    let lists = par::map_range(exec, rep.n(), |u| visible_from(rep, &field, u));
    let edges = lists.into_iter().enumerate().flat_map(|(u, vs)| vs.into_iter().map(move |v| (u, v)));
    Graph::new(rep.n(), edges).expect("visibility graph is simple")
}

/// Pairwise reference: one bounding-box search per pair.
pub fn visibility_graph_pairwise(rep: &Representation, exec: Exec) -> Graph {
    let n = rep.n();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let vis = par::map(exec, &pairs, |&(u, v)| visible_points(rep, rep.vertices()[u], rep.vertices()[v]));
    let edges = pairs.into_iter().zip(vis).filter(|(_, ok)| *ok).map(|(e, _)| e);
    Graph::new(n, edges).expect("visibility graph is simple")
}

pub fn compare(actual: &Graph, target: &Graph) -> VerificationReport {
    let missing: Vec<_> = target.edges().iter().copied().filter(|&(u, v)| !actual.has_edge(u, v)).collect();
    let extra: Vec<_> = actual.edges().iter().copied().filter(|&(u, v)| !target.has_edge(u, v)).collect();
    VerificationReport { matches: missing.is_empty() && extra.is_empty(), missing_edges: missing, extra_edges: extra }
}

pub fn verify(rep: &Representation, g: &Graph) -> Result<VerificationReport> {
    if rep.n() != g.n() {
        return Err(Error::Precondition(format!("representation places {} vertices, graph has {}", rep.n(), g.n())));
    }
    Ok(compare(&visibility_graph(rep), g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::p2;

    fn rep(vs: &[(i64, i64)], obs: &[(i64, i64)]) -> Representation {
        Representation::with_obstacles(2, vs.iter().map(|&(x, y)| p2(x, y)).collect(), obs.iter().map(|&(x, y)| p2(x, y)))
            .unwrap()
    }

    #[test]
    fn basic_cases() {
        assert!(!is_visible(&rep(&[(0, 0), (2, 0)], &[(1, 0)]), 0, 1).unwrap());
        assert!(is_visible(&rep(&[(0, 0), (1, 1)], &[]), 0, 1).unwrap());
        assert!(!is_visible(&rep(&[(0, 0), (2, 2)], &[(1, 0), (0, 1)]), 0, 1).unwrap());
        assert!(is_visible(&rep(&[(0, 0), (1, 2)], &[(0, 1)]), 0, 1).unwrap());
        assert!(is_visible(&rep(&[(0, 0), (2, 2)], &[(1, 1)]), 0, 1).unwrap());
        assert!(is_visible(&rep(&[(0, 0), (1, 0)], &[]), 1, 0).unwrap());
        assert!(is_visible(&rep(&[(0, 0)], &[]), 0, 0).is_err());
    }

    #[test]
    fn path_enumeration_counts() {
        assert_eq!(monotone_paths(p2(0, 0), p2(2, 1)).len(), 3);
        assert_eq!(monotone_paths(p2(0, 0), p2(2, 2)).len(), 6);
        assert_eq!(monotone_paths([0, 0, 0], [1, 1, 1]).len(), 6);
    }

    #[test]
    fn witnesses() {
        let w = |r: &Representation| witness_path(r, 0, 1).unwrap();
        assert_eq!(w(&rep(&[(0, 0), (2, 0)], &[])), Some(vec![p2(0, 0), p2(1, 0), p2(2, 0)]));
        assert_eq!(w(&rep(&[(0, 0), (1, 1)], &[])), Some(vec![p2(0, 0), p2(1, 0), p2(1, 1)]));
        assert_eq!(w(&rep(&[(0, 0), (1, 2)], &[(1, 1)])), Some(vec![p2(0, 0), p2(0, 1), p2(0, 2), p2(1, 2)]));
        assert_eq!(w(&rep(&[(0, 0), (2, 0)], &[(1, 0)])), None);
    }

    #[test]
    fn other_vertices_block() {
        let r = rep(&[(0, 0), (1, 0), (2, 0)], &[]);
        let g = visibility_graph(&r);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }
}
