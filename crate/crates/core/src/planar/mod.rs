//! Planar pipeline: straight-line grid drawing, exact box/tube geometry,
//! staircase digitization, rerouting inside vertex boxes and obstacle placement.

mod embedding;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashSet;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geom::{self, q, qf, qp, QPoint, Q};
use crate::grid::{Bounds, Graph, LatticePath, Point};
use crate::par::{self, Exec};
use crate::visibility;
use crate::Representation;

/// Sizing strategy for boxes, tubes and the final lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Smallest power-of-two refinement that passes the separation checks.
    Adaptive,
    /// Fixed constant chain: blow-up by 4n, unit boxes, grid step delta/100.
    PaperFaithful,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adaptive" => Ok(Mode::Adaptive),
            "paper-faithful" | "paper_faithful" => Ok(Mode::PaperFaithful),
            _ => Err(Error::Invalid(format!("unknown mode {s:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Adaptive => "adaptive",
            Mode::PaperFaithful => "paper-faithful",
        })
    }
}

/// Straight-line drawing with exact coordinates (z = 0).
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarDrawing {
    pub positions: Vec<QPoint>,
    pub edges: Vec<(usize, usize)>,
    /// Refinement factor relative to the initial integer grid.
    pub scale: Q,
}

impl PlanarDrawing {
    /// Exact check: segments meet only at shared endpoints and no vertex lies on a non-incident segment.
    pub fn is_planar(&self) -> bool {
        segments_ok(&self.positions, &self.edges)
    }

    fn scaled(&self, f: &Q) -> PlanarDrawing {
        PlanarDrawing {
            positions: self.positions.iter().map(|p| geom::scale(p, f)).collect(),
            edges: self.edges.clone(),
            scale: &self.scale * f,
        }
    }
}

pub(crate) fn segments_ok(pos: &[QPoint], edges: &[(usize, usize)]) -> bool {
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if !geom::segments_independent(&pos[a], &pos[b], &pos[c], &pos[d]) {
                return false;
            }
        }
        for (v, p) in pos.iter().enumerate() {
            if v != a && v != b && geom::point_segment_dist2(p, &pos[a], &pos[b]).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Boxes, tubes and lattice data of a construction.
///
/// `epsilon`, `delta` and `grid_step` are in refined drawing units; the lattice
/// fields are in grid steps.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionGeometry {
    pub dim: usize,
    pub mode: Mode,
    /// Blow-up applied to the initial drawing before sizing (4n or 1).
    pub refine: Q,
    /// Box (or cube) side length.
    pub epsilon: Q,
    /// Tube radius.
    pub delta: Q,
    pub grid_step: Q,
    /// Squared minimum vertex to non-incident edge distance in the initial drawing.
    pub c_squared: Option<Q>,
    /// Squared delta(v) per vertex; `None` below degree 2.
    pub delta_v_squared: Vec<Option<Q>>,
    pub vertices: Vec<Point>,
    pub half_side: i64,
    pub boxes: Vec<Bounds>,
    pub tubes: Vec<(usize, usize)>,
    /// Tube radius in grid steps.
    pub tube_radius: Q,
    /// Lattice halvings applied after the initial sizing.
    pub extra_refinements: u32,
}

fn qs(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl ConstructionGeometry {
    /// Lattice bounding box of all boxes.
    pub fn lattice_bounds(&self) -> Bounds {
        self.boxes.iter().skip(1).fold(self.boxes[0], |acc, b| acc.include(b.min).include(b.max))
    }

    /// Largest side of the lattice bounding box, counted in lattice points.
    pub fn lattice_side(&self) -> i64 {
        let b = self.lattice_bounds();
        (0..self.dim).map(|k| b.extent(k)).max().unwrap_or(0)
    }

    /// `delta * n^2` in refined units.
    pub fn delta_constant(&self) -> Q {
        let n = q(self.vertices.len() as i64);
        &self.delta * &n * &n
    }

    fn halve_grid(&self) -> ConstructionGeometry {
        let mut g = self.clone();
        let two = q(2);
        g.grid_step = &self.grid_step / &two;
        g.vertices = self.vertices.iter().map(|p| [p[0] * 2, p[1] * 2, p[2] * 2]).collect();
        g.half_side *= 2;
        g.tube_radius = &self.tube_radius * &two;
        g.boxes = g.vertices.iter().map(|&p| lattice_box(p, g.half_side, g.dim)).collect();
        g.extra_refinements += 1;
        g
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "dim": self.dim,
            "mode": self.mode.to_string(),
            "refine": qs(&self.refine),
            "epsilon": qs(&self.epsilon),
            "delta": qs(&self.delta),
            "grid_step": qs(&self.grid_step),
            "c_squared": self.c_squared.as_ref().map(qs),
            "delta_v_squared": self.delta_v_squared.iter().map(|d| d.as_ref().map(qs)).collect::<Vec<_>>(),
            "vertices": self.vertices.iter().map(|p| p[..self.dim].to_vec()).collect::<Vec<_>>(),
            "half_side": self.half_side,
            "boxes": self.boxes.iter().map(|b| [b.min[..self.dim].to_vec(), b.max[..self.dim].to_vec()]).collect::<Vec<_>>(),
            "tubes": self.tubes,
            "tube_radius": qs(&self.tube_radius),
            "extra_refinements": self.extra_refinements,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("geometry serializes")
    }
}

pub(crate) fn lattice_box(p: Point, h: i64, dim: usize) -> Bounds {
    let mut lo = p;
    let mut hi = p;
    for k in 0..dim {
        lo[k] -= h;
        hi[k] += h;
    }
    Bounds::new(lo, hi)
}

/// Drawing of a planar graph on integer points of `[0, n-2]^2`.
pub fn straight_line_embed(g: &Graph) -> Result<PlanarDrawing> {
    let pts = embedding::grid_drawing(g)?;
    Ok(PlanarDrawing {
        positions: pts.iter().map(|&(x, y)| qp([x, y, 0])).collect(),
        edges: g.edges().to_vec(),
        scale: Q::one(),
    })
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Point where segment `v -> w` leaves the axis-aligned box of half-side `half` around `v`.
fn box_exit(v: &QPoint, w: &QPoint, half: &Q) -> QPoint {
    let d = geom::sub(w, v);
    let m = d.iter().map(|x| x.abs()).max().expect("three coordinates");
    geom::add(v, &geom::scale(&d, &(half / m)))
}

fn angle_cmp(a: &QPoint, b: &QPoint) -> std::cmp::Ordering {
    let half = |p: &QPoint| !(p[1].is_positive() || (p[1].is_zero() && p[0].is_positive()));
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        Q::zero().cmp(&cross)
    })
}

/// Squared minimum distance between consecutive exit points of the edges at `v`
/// (all pairs in three dimensions).
pub(crate) fn delta_v_squared(pos: &[QPoint], adj: &[Vec<usize>], v: usize, half: &Q, dim: usize) -> Option<Q> {
    if adj[v].len() < 2 {
        return None;
    }
    let mut exits: Vec<QPoint> = adj[v].iter().map(|&w| geom::sub(&box_exit(&pos[v], &pos[w], half), &pos[v])).collect();
    let k = exits.len();
    if dim == 2 {
        exits.sort_by(angle_cmp);
        (0..k).map(|i| geom::dist2(&exits[i], &exits[(i + 1) % k])).min()
    } else {
        (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).map(|(i, j)| geom::dist2(&exits[i], &exits[j])).min()
    }
}

/// Exact separation checks for boxes of side `eps` and tubes of radius `delta`.
/// Returns the first failing check.
pub(crate) fn separation_failure(pos: &[QPoint], edges: &[(usize, usize)], eps: &Q, delta: &Q) -> Option<String> {
    let half = eps / q(2);
    let d2 = delta * delta;
    let four_d2 = &d2 * q(4);
    let n = pos.len();
    let bx = |v: usize| {
        let h = [half.clone(), half.clone(), half.clone()];
        (geom::sub(&pos[v], &h), geom::add(&pos[v], &h))
    };
    for u in 0..n {
        for v in u + 1..n {
            let gap = (0..3).map(|k| (&pos[u][k] - &pos[v][k]).abs()).max().expect("coords");
            if gap <= eps + delta * q(2) {
                return Some(format!("boxes of {u} and {v} too close"));
            }
        }
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if geom::segment_segment_dist2(&pos[a], &pos[b], &pos[c], &pos[d]) <= four_d2 {
                return Some(format!("tubes of ({a},{b}) and ({c},{d}) meet"));
            }
        }
    }
    let adj = adjacency(n, edges);
    let inner = &half - delta;
    if !inner.is_positive() {
        return Some("delta exceeds half the box side".into());
    }
    for v in 0..n {
        let clipped: Vec<(QPoint, usize)> = adj[v].iter().map(|&w| (box_exit(&pos[v], &pos[w], &inner), w)).collect();
        for i in 0..clipped.len() {
            for j in i + 1..clipped.len() {
                let (a, wa) = (&clipped[i].0, clipped[i].1);
                let (b, wb) = (&clipped[j].0, clipped[j].1);
                if geom::segment_segment_dist2(a, &pos[wa], b, &pos[wb]) <= four_d2 {
                    return Some(format!("tubes of ({v},{wa}) and ({v},{wb}) meet outside the box of {v}"));
                }
            }
        }
        let (lo, hi) = bx(v);
        for &(a, b) in edges {
            if a != v && b != v && geom::segment_box_dist2(&pos[a], &pos[b], &lo, &hi) <= d2 {
                return Some(format!("tube of ({a},{b}) meets the box of {v}"));
            }
        }
    }
    None
}

/// Squared minimum distance from a vertex to a non-incident edge.
pub(crate) fn c_squared(pos: &[QPoint], edges: &[(usize, usize)]) -> Option<Q> {
    (0..pos.len())
        .flat_map(|v| edges.iter().filter(move |&&(a, b)| a != v && b != v).map(move |&(a, b)| (v, a, b)))
        .map(|(v, a, b)| geom::point_segment_dist2(&pos[v], &pos[a], &pos[b]))
        .min()
}

pub(crate) struct Sizing {
    pub epsilon: Q,
    pub delta: Q,
    pub grid_step: Q,
    pub delta_v_squared: Vec<Option<Q>>,
}

/// Adaptive sizing: halve the box side until the checks pass, then pick the coarsest
/// power-of-two lattice with box half-side at least 4 and tube radius at least 2 steps.
pub(crate) fn adaptive_sizing(pos: &[QPoint], edges: &[(usize, usize)], dim: usize) -> Result<Sizing> {
    let adj = adjacency(pos.len(), edges);
    let mut eps = qf(1, 8);
    for _ in 0..48 {
        let half = &eps / q(2);
        let dv: Vec<Option<Q>> = (0..pos.len()).map(|v| delta_v_squared(pos, &adj, v, &half, dim)).collect();
        let delta = match dv.iter().flatten().min() {
            Some(m) => geom::pow2_below_sqrt(&(m / q(256))),
            None => &eps / q(16),
        };
        if separation_failure(pos, edges, &eps, &delta).is_none() {
            let s1 = q(8) / &eps;
            let s2 = q(2) / &delta;
            let scale = if s1 > s2 { s1 } else { s2 };
            return Ok(Sizing { epsilon: eps, delta, grid_step: scale.recip(), delta_v_squared: dv });
        }
        eps /= q(2);
    }
    Err(Error::Construction("separation checks never passed".into()))
}

pub(crate) fn faithful_sizing(pos: &[QPoint], edges: &[(usize, usize)], dim: usize) -> Result<Sizing> {
    let adj = adjacency(pos.len(), edges);
    let eps = Q::one();
    let half = qf(1, 2);
    let dv: Vec<Option<Q>> = (0..pos.len()).map(|v| delta_v_squared(pos, &adj, v, &half, dim)).collect();
    let delta = match dv.iter().flatten().min() {
        Some(m) => geom::pow2_below_sqrt(&(m / q(100))),
        None => geom::pow2_below_sqrt(&qf(1, 100)),
    };
    if let Some(why) = separation_failure(pos, edges, &eps, &delta) {
        return Err(Error::Construction(why));
    }
    let grid_step = &delta / q(100);
    Ok(Sizing { epsilon: eps, delta, grid_step, delta_v_squared: dv })
}

pub(crate) fn lattice_point(p: &QPoint, grid_step: &Q) -> Result<Point> {
    let mut out = [0i64; 3];
    for k in 0..3 {
        out[k] = geom::to_i64(&(&p[k] / grid_step))
            .ok_or_else(|| Error::Precondition("point is not on the lattice or out of range".into()))?;
    }
    Ok(out)
}

pub(crate) fn assemble_geometry(
    dim: usize,
    mode: Mode,
    refine: Q,
    c_squared: Option<Q>,
    pos: &[QPoint],
    edges: &[(usize, usize)],
    s: Sizing,
) -> Result<ConstructionGeometry> {
    let vertices = pos.iter().map(|p| lattice_point(p, &s.grid_step)).collect::<Result<Vec<_>>>()?;
    let half_side = geom::to_i64(&(&s.epsilon / (&s.grid_step * q(2))))
        .ok_or_else(|| Error::Construction("box side is not on the lattice".into()))?;
    let boxes = vertices.iter().map(|&p| lattice_box(p, half_side, dim)).collect();
    Ok(ConstructionGeometry {
        dim,
        mode,
        refine,
        tube_radius: &s.delta / &s.grid_step,
        epsilon: s.epsilon,
        delta: s.delta,
        grid_step: s.grid_step,
        c_squared,
        delta_v_squared: s.delta_v_squared,
        vertices,
        half_side,
        boxes,
        tubes: edges.to_vec(),
        extra_refinements: 0,
    })
}

/// Refines `d` and sizes boxes, tubes and the lattice so that all separation checks hold.
pub fn separation_geometry(d: &PlanarDrawing, mode: Mode) -> Result<(PlanarDrawing, ConstructionGeometry)> {
    let n = d.positions.len();
    let c2 = c_squared(&d.positions, &d.edges);
    match mode {
        Mode::Adaptive => {
            let s = adaptive_sizing(&d.positions, &d.edges, 2)?;
            let geo = assemble_geometry(2, mode, Q::one(), c2, &d.positions, &d.edges, s)?;
            Ok((d.clone(), geo))
        }
        Mode::PaperFaithful => {
            let nn = q(n as i64);
            if let Some(c2) = &c2 {
                if *c2 <= (q(2) * &nn * &nn).recip() {
                    return Err(Error::Construction("vertex to edge distance below 1/(sqrt(2) n)".into()));
                }
            }
            let refine = q(4) * &nn;
            let refined = d.scaled(&refine);
            let s = faithful_sizing(&refined.positions, &refined.edges, 2)?;
            let geo = assemble_geometry(2, mode, refine, c2, &refined.positions, &refined.edges, s)?;
            Ok((refined, geo))
        }
    }
}

/// Lattice staircase from `a` to `b` that steps along axis `k` where the
/// segment crosses a half-integer plane in that axis. Every point is within
/// 1/2 of the segment in each coordinate.
pub(crate) fn staircase(a: Point, b: Point) -> LatticePath {
    let d: [i128; 3] = std::array::from_fn(|k| ((b[k] - a[k]) as i128).abs());
    let sign: [i64; 3] = std::array::from_fn(|k| (b[k] - a[k]).signum());
    let mut taken = [0i128; 3];
    let mut path = Vec::with_capacity(d.iter().sum::<i128>() as usize + 1);
    let mut cur = a;
    path.push(cur);
    while cur != b {
        // next crossing on axis k is at t = (2 taken + 1) / (2 d_k)
        let k = (0..3)
            .filter(|&k| taken[k] < d[k])
            .min_by(|&i, &j| ((2 * taken[i] + 1) * d[j]).cmp(&((2 * taken[j] + 1) * d[i])))
            .expect("not at target");
        taken[k] += 1;
        cur[k] += sign[k];
        path.push(cur);
    }
    path
}

/// Digitizes a segment with lattice endpoints into a staircase within the tube.
/// Returns the path in grid-step units.
pub fn digitize_edge(a: &QPoint, b: &QPoint, grid_step: &Q, tube_radius: &Q) -> Result<LatticePath> {
    if !grid_step.is_positive() {
        return Err(Error::Precondition("grid step must be positive".into()));
    }
    let (la, lb) = (lattice_point(a, grid_step)?, lattice_point(b, grid_step)?);
    let path = staircase(la, lb);
    let (qa, qb) = (qp(la), qp(lb));
    let r2 = (tube_radius / grid_step).pow(2);
    for p in &path {
        if geom::point_segment_dist2(&qp(*p), &qa, &qb) >= r2 {
            return Err(Error::Precondition("tube radius too small for the grid step".into()));
        }
    }
    Ok(path)
}

fn sgn(x: i64) -> i64 {
    x.signum()
}

/// Replaces the part of `path` inside the box around its last point `v`: from the
/// entry point, walk on the entered face to its center, then along the axis to `v`.
/// An entry on a box edge or corner is first moved onto a face by reordering the
/// entering steps.
pub(crate) fn reroute_tail(path: &mut LatticePath, h: i64, dim: usize) -> Result<()> {
    let v = *path.last().expect("non-empty path");
    let inside = |p: &Point| (0..dim).all(|k| (p[k] - v[k]).abs() <= h);
    let i = path.iter().position(inside).expect("path ends at v");
    if i == 0 {
        return Err(Error::Construction("path starts inside a foreign box".into()));
    }
    let q0 = path[i - 1];
    let mut p = path[i];
    path.truncate(i);
    let on_face: Vec<usize> = (0..dim).filter(|&k| (p[k] - v[k]).abs() == h).collect();
    if on_face.len() > 1 {
        let k_in = (0..dim).find(|&k| q0[k] != p[k]).expect("consecutive points differ");
        let mut cur = q0;
        for &j in on_face.iter().filter(|&&j| j != k_in) {
            cur[j] -= sgn(p[j] - v[j]);
            path.push(cur);
        }
        cur[k_in] -= sgn(p[k_in] - v[k_in]);
        p = cur;
    }
    let face = (0..dim).find(|&k| (p[k] - v[k]).abs() == h).expect("entry lies on the boundary");
    let mut cur = p;
    path.push(cur);
    for k in (0..dim).filter(|&k| k != face).chain([face]) {
        while cur[k] != v[k] {
            cur[k] += sgn(v[k] - cur[k]);
            path.push(cur);
        }
    }
    Ok(())
}

fn reroute_path(path: &LatticePath, geo: &ConstructionGeometry) -> Result<LatticePath> {
    let mut p = path.clone();
    reroute_tail(&mut p, geo.half_side, geo.dim)?;
    p.reverse();
    reroute_tail(&mut p, geo.half_side, geo.dim)?;
    p.reverse();
    if !crate::grid::is_manhattan(&p) {
        return Err(Error::Construction("rerouted path is not monotone".into()));
    }
    Ok(p)
}

/// Reroutes each path's ends inside the vertex boxes, avoiding box edges and corners.
pub fn reroute_in_boxes(paths: &[LatticePath], geometry: &ConstructionGeometry) -> Result<Vec<LatticePath>> {
    for p in paths {
        let ends = [p.first(), p.last()];
        if ends.iter().any(|e| e.is_none_or(|x| !geometry.vertices.contains(x))) {
            return Err(Error::Precondition("path endpoints must be vertex positions".into()));
        }
    }
    par::map(Exec::default(), paths, |p| reroute_path(p, geometry)).into_iter().collect()
}

/// Free points of a vertex box other than `v`: the axis lines through `v`, plus the
/// side interiors in two dimensions. In three dimensions only face points on
/// rerouted paths are free.
fn box_free_cells(v: Point, h: i64, dim: usize, out: &mut FxHashSet<Point>) {
    for k in 0..dim {
        for t in (-h..=h).filter(|&t| t != 0) {
            let mut p = v;
            p[k] += t;
            out.insert(p);
        }
    }
    if dim == 2 {
        for t in 1 - h..h {
            for p in [[t, -h], [t, h], [-h, t], [h, t]] {
                out.insert([v[0] + p[0], v[1] + p[1], 0]);
            }
        }
    }
}

/// Digitized and rerouted edge paths plus the obstacle placement of a geometry.
pub(crate) fn build_rep(geo: &ConstructionGeometry, exec: Exec) -> Result<(Representation, Vec<LatticePath>)> {
    let vs = &geo.vertices;
    let paths: Vec<LatticePath> = par::map(exec, &geo.tubes, |&(a, b)| reroute_path(&staircase(vs[a], vs[b]), geo))
        .into_iter()
        .collect::<Result<_>>()?;
    let mut free = FxHashSet::default();
    for &v in vs {
        box_free_cells(v, geo.half_side, geo.dim, &mut free);
    }
    for p in &paths {
        free.extend(p[1..p.len() - 1].iter().copied());
    }
    let rep = Representation::with_free_cells(geo.dim, geo.lattice_bounds(), vs.clone(), free)?;
    Ok((rep, paths))
}

/// Materializes `geo` and re-checks it against `g`, halving the grid step on failure
/// (adaptive mode only).
pub(crate) fn materialize_checked(
    mut geo: ConstructionGeometry,
    g: &Graph,
    exec: Exec,
) -> Result<(Representation, ConstructionGeometry)> {
    let attempts = if geo.mode == Mode::Adaptive { 4 } else { 1 };
    for _ in 0..attempts {
        let (rep, _) = build_rep(&geo, exec)?;
        let vis = visibility::visibility_graph_with(&rep, exec);
        if visibility::compare(&vis, g).matches {
            return Ok((rep, geo));
        }
        geo = geo.halve_grid();
    }
    Err(Error::Construction("representation does not verify".into()))
}

/// Geometry of the planar construction without materializing the lattice.
pub fn planar_geometry(g: &Graph, mode: Mode) -> Result<(PlanarDrawing, ConstructionGeometry)> {
    let d = straight_line_embed(g)?;
    separation_geometry(&d, mode)
}

/// Full planar pipeline, re-checked against `g` with the visibility verifier.
pub fn embed2d(g: &Graph, mode: Mode) -> Result<(Representation, ConstructionGeometry)> {
    embed2d_with(g, mode, Exec::default())
}

pub fn embed2d_with(g: &Graph, mode: Mode, exec: Exec) -> Result<(Representation, ConstructionGeometry)> {
    let (_, geo) = planar_geometry(g, mode)?;
    materialize_checked(geo, g, exec)
}

/// Builds the representation for a given geometry without the final check.
pub fn build_representation(geometry: &ConstructionGeometry) -> Result<Representation> {
    Ok(build_rep(geometry, Exec::default())?.0)
}

/// Point-in-tube test in lattice units, exact. `slack` bounds the radius from above.
pub(crate) fn in_tube(p: Point, a: Point, b: Point, slack: i64, r2: &Q) -> bool {
    for k in 0..3 {
        if p[k] < a[k].min(b[k]) - slack || p[k] > a[k].max(b[k]) + slack {
            return false;
        }
    }
    in_tube_i128(p, a, b, r2).unwrap_or_else(|| geom::point_segment_dist2(&qp(p), &qp(a), &qp(b)) <= *r2)
}

fn in_tube_i128(p: Point, a: Point, b: Point, r2: &Q) -> Option<bool> {
    let rn = i128::try_from(r2.numer()).ok()?;
    let rd = i128::try_from(r2.denom()).ok()?;
    let v = |x: Point, y: Point| -> [i128; 3] { std::array::from_fn(|k| (x[k] - y[k]) as i128) };
    let d = |x: [i128; 3], y: [i128; 3]| -> Option<i128> {
        x.iter().zip(&y).try_fold(0i128, |acc, (s, t)| acc.checked_add(s.checked_mul(*t)?))
    };
    let (u, w) = (v(b, a), v(p, a));
    let (t, len) = (d(w, u)?, d(u, u)?);
    let (num, den) = if t <= 0 || len == 0 {
        (d(w, w)?, 1)
    } else if t >= len {
        let z = v(p, b);
        (d(z, z)?, 1)
    } else {
        (d(w, w)?.checked_mul(len)?.checked_sub(t.checked_mul(t)?)?, len)
    };
    Some(num.checked_mul(rd)? <= rn.checked_mul(den)?)
}

/// Failure found by [`gbg_audit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbgViolation {
    pub u: usize,
    pub v: usize,
    pub path: LatticePath,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tag {
    Green(usize),
    Blue,
}

/// Checks that each visible pair's witness is green in the first box, blue inside
/// exactly one tube (of that pair's edge), then green in the second box.
pub fn gbg_audit(rep: &Representation, geometry: &ConstructionGeometry, g: &Graph) -> Result<Option<GbgViolation>> {
    let vis = visibility::visibility_graph(rep);
    let r2 = geometry.tube_radius.pow(2);
    let slack = geom::floor_i64(&geometry.tube_radius) + 1;
    let vs = &geometry.vertices;
    let res = par::find_first(Exec::default(), vis.edges(), |&(u, v)| {
        let path = visibility::witness_path(rep, u, v).ok().flatten()?;
        let tag = |p: &Point| match geometry.boxes.iter().position(|b| b.contains(*p)) {
            Some(w) => Tag::Green(w),
            None => Tag::Blue,
        };
        let tags: Vec<Tag> = path.iter().map(tag).collect();
        let mut runs: Vec<Tag> = tags.clone();
        runs.dedup();
        let pattern_ok = runs == [Tag::Green(u), Tag::Blue, Tag::Green(v)];
        let tube = g.edges().iter().position(|&(a, b)| (a, b) == (u.min(v), u.max(v)) || (a, b) == (u, v));
        let blue_ok = pattern_ok
            && tube.is_some()
            && path.iter().zip(&tags).filter(|(_, t)| **t == Tag::Blue).all(|(p, _)| {
                let hits = geometry.tubes.iter().filter(|&&(a, b)| in_tube(*p, vs[a], vs[b], slack, &r2)).count();
                let own = geometry.tubes.iter().any(|&(a, b)| {
                    ((a, b) == (u, v) || (a, b) == (v, u)) && in_tube(*p, vs[a], vs[b], slack, &r2)
                });
                own && hits == 1
            });
        if blue_ok {
            None
        } else {
            Some(GbgViolation { u, v, path })
        }
    });
    Ok(res)
}
