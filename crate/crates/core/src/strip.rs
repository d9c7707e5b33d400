//! Horizontal-strip compression.
//!
//! A strip representation lives in rows `0..b`. Between two consecutive vertex
//! columns only the upper and lower envelopes of every family of crossing paths
//! are kept; afterwards runs of identical columns without bend points are
//! collapsed to a single middle column.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{bend_count, p2, Bounds, LatticePath, Occupancy, Point, Representation};
use crate::par::{self, Exec};

/// Interior of a strip between two consecutive vertex columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripSection {
    pub left: i64,
    pub right: i64,
    pub height: i64,
    /// `open[c * height + y]` for interior column `left + 1 + c`.
    open: Vec<bool>,
}

impl StripSection {
    pub fn new(rep: &Representation, left: i64, right: i64, height: i64) -> Result<Self> {
        if right <= left || height < 1 {
            return Err(Error::Precondition(format!("empty section [{left}, {right}] x {height}")));
        }
        let w = right - left - 1;
        let mut open = Vec::with_capacity((w * height) as usize);
        for x in left + 1..right {
            for y in 0..height {
                let p = p2(x, y);
                if rep.vertex_at(p).is_some() {
                    return Err(Error::Precondition(format!("vertex inside section at {p:?}")));
                }
                open.push(rep.is_open(p));
            }
        }
        Ok(StripSection { left, right, height, open })
    }

    /// Section from explicit interior passability, column by column.
    pub fn from_columns(left: i64, height: i64, columns: &[Vec<bool>]) -> Result<Self> {
        if height < 1 || columns.iter().any(|c| c.len() != height as usize) {
            return Err(Error::Precondition("column height mismatch".into()));
        }
        Ok(StripSection {
            left,
            right: left + columns.len() as i64 + 1,
            height,
            open: columns.concat(),
        })
    }

    pub fn width(&self) -> i64 {
        self.right - self.left - 1
    }

    pub fn is_open(&self, p: Point) -> bool {
        let c = p[0] - self.left - 1;
        c >= 0 && c < self.width() && p[1] >= 0 && p[1] < self.height && self.open[(c * self.height + p[1]) as usize]
    }

    fn idx(&self, c: i64, y: i64) -> usize {
        (c * self.height + y) as usize
    }

    /// Interior points lying on some monotone path from `(left, i)` to `(right, j)`.
    fn corridor(&self, i: i64, j: i64) -> Vec<bool> {
        let (w, h) = (self.width(), self.height);
        let s = (j - i).signum();
        let mut fwd = vec![false; (w * h) as usize];
        let mut bwd = vec![false; (w * h) as usize];
        if w == 0 {
            return fwd;
        }
        let rows: Vec<i64> = if s >= 0 { (i..=j).collect() } else { (j..=i).rev().collect() };
        for c in 0..w {
            for &y in &rows {
                let k = self.idx(c, y);
                if !self.open[k] {
                    continue;
                }
                let from_left = if c == 0 { y == i } else { fwd[self.idx(c - 1, y)] };
                let from_below = y != i && fwd[self.idx(c, y - s)];
                fwd[k] = from_left || from_below;
            }
        }
        for c in (0..w).rev() {
            for &y in rows.iter().rev() {
                let k = self.idx(c, y);
                if !self.open[k] {
                    continue;
                }
                let to_right = if c == w - 1 { y == j } else { bwd[self.idx(c + 1, y)] };
                let to_above = y != j && bwd[self.idx(c, y + s)];
                bwd[k] = to_right || to_above;
            }
        }
        fwd.iter().zip(&bwd).map(|(a, b)| *a && *b).collect()
    }

    fn greedy(&self, i: i64, j: i64, r: &[bool], vertical_first: bool) -> LatticePath {
        let s = (j - i).signum();
        let mut path = vec![p2(self.left, i)];
        let (mut c, mut y) = (0, i);
        path.push(p2(self.left + 1, y));
        loop {
            if c == self.width() - 1 && y == j {
                path.push(p2(self.right, j));
                return path;
            }
            let up = (y != j && r[self.idx(c, y + s)]).then_some((c, y + s));
            let right = (c + 1 < self.width() && r[self.idx(c + 1, y)]).then_some((c + 1, y));
            let next = if vertical_first { up.or(right) } else { right.or(up) };
            (c, y) = next.expect("corridor points continue to the target");
            path.push(p2(self.left + 1 + c, y));
        }
    }

    /// Upper and lower envelope of the monotone paths from `(left, i)` to
    /// `(right, j)` whose interior stays inside the section; `None` when there
    /// is no such path.
    pub fn envelopes(&self, i: i64, j: i64) -> Result<Option<(LatticePath, LatticePath)>> {
        if !(0..self.height).contains(&i) || !(0..self.height).contains(&j) {
            return Err(Error::Invalid(format!("row index out of range 0..{}", self.height)));
        }
        if self.width() == 0 {
            let p = vec![p2(self.left, i), p2(self.right, j)];
            return Ok((i == j).then(|| (p.clone(), p)));
        }
        let r = self.corridor(i, j);
        if !r[self.idx(0, i)] {
            return Ok(None);
        }
        // upper: rise early on increasing pairs, descend late on decreasing ones
        let rising = j > i;
        let upper = self.greedy(i, j, &r, rising);
        let lower = self.greedy(i, j, &r, !rising);
        Ok(Some((upper, lower)))
    }

    /// Every non-empty envelope pair, keyed by `(i, j)`.
    pub fn all_envelopes(&self) -> Vec<((i64, i64), LatticePath, LatticePath)> {
        let mut out = Vec::new();
        for i in 0..self.height {
            for j in 0..self.height {
                if let Some((u, l)) = self.envelopes(i, j).expect("rows in range") {
                    out.push(((i, j), u, l));
                }
            }
        }
        out
    }
}

pub fn envelopes(section: &StripSection, i: i64, j: i64) -> Result<Option<(LatticePath, LatticePath)>> {
    section.envelopes(i, j)
}

fn check_strip(rep: &Representation, b: i64) -> Result<Vec<i64>> {
    if rep.dim() != 2 {
        return Err(Error::Precondition("strip compression is two-dimensional".into()));
    }
    if b < 1 {
        return Err(Error::Precondition("strip height must be positive".into()));
    }
    if let Some(p) = rep.vertices().iter().chain(rep.cells()).find(|p| p[1] < 0 || p[1] >= b) {
        return Err(Error::Precondition(format!("point {:?} lies outside rows 0..{b}", &p[..2])));
    }
    let mut xs: Vec<i64> = rep.vertices().iter().map(|p| p[0]).collect();
    if xs.is_empty() {
        return Err(Error::Precondition("strip has no vertices".into()));
    }
    xs.sort_unstable();
    xs.dedup();
    Ok(xs)
}

/// Horizontal extent in columns: the bounds for default-blocked input, the
/// vertex and cell span otherwise.
pub fn strip_width(rep: &Representation) -> i64 {
    let b = match rep.default_occupancy() {
        Occupancy::Blocked => rep.bounds(),
        Occupancy::Free => rep.extent(),
    };
    b.map_or(0, |b| b.extent(0))
}

fn sections(rep: &Representation, b: i64, xs: &[i64]) -> Result<Vec<StripSection>> {
    xs.windows(2).map(|w| StripSection::new(rep, w[0], w[1], b)).collect()
}

fn column_open(rep: &Representation, x: i64, b: i64) -> impl Iterator<Item = Point> + '_ {
    (0..b).map(move |y| p2(x, y)).filter(|&p| rep.is_open(p))
}

fn endpoint_usable(rep: &Representation, p: Point) -> bool {
    !rep.is_obstacle(p)
}

/// Keeps, inside every section, only the union of upper and lower envelopes;
/// everything else in the section becomes an obstacle.
pub fn compress_envelopes(rep: &Representation, b: i64) -> Result<Representation> {
    compress_envelopes_with(rep, b, Exec::default())
}

pub fn compress_envelopes_with(rep: &Representation, b: i64, exec: Exec) -> Result<Representation> {
    let xs = check_strip(rep, b)?;
    let secs = sections(rep, b, &xs)?;
    let kept = par::map(exec, &secs, |s| {
        let mut pts = Vec::new();
        for ((i, j), u, l) in s.all_envelopes() {
            if endpoint_usable(rep, p2(s.left, i)) && endpoint_usable(rep, p2(s.right, j)) {
                pts.extend(u[1..u.len() - 1].iter().chain(&l[1..l.len() - 1]).copied());
            }
        }
        pts
    });
    let mut free: Vec<Point> = xs.iter().flat_map(|&x| column_open(rep, x, b)).collect();
    free.extend(kept.into_iter().flatten());
    let bounds = Bounds::new(p2(xs[0], 0), p2(*xs.last().expect("nonempty"), b - 1));
    Representation::with_free_cells(2, bounds, rep.vertices().to_vec(), free)
}

fn bend_columns(s: &StripSection) -> Vec<bool> {
    let mut bend = vec![false; s.width() as usize];
    for (_, u, l) in s.all_envelopes() {
        for w in u.windows(2).chain(l.windows(2)) {
            if w[0][0] == w[1][0] {
                bend[(w[0][0] - s.left - 1) as usize] = true;
            }
        }
    }
    bend
}

/// Collapses every run of bend-free interior columns to one middle column.
/// Columns are merged only when their contents coincide.
pub fn compress_bends(rep: &Representation, b: i64) -> Result<Representation> {
    compress_bends_with(rep, b, Exec::default())
}

pub fn compress_bends_with(rep: &Representation, b: i64, exec: Exec) -> Result<Representation> {
    let xs = check_strip(rep, b)?;
    let secs = sections(rep, b, &xs)?;
    let keep = par::map(exec, &secs, |s| {
        let bend = bend_columns(s);
        let col = |c: i64| (0..b).map(|y| s.is_open(p2(s.left + 1 + c, y))).collect::<Vec<_>>();
        let mut kept: Vec<i64> = Vec::new();
        for c in 0..s.width() {
            let merge = c > 0 && !bend[c as usize] && !bend[c as usize - 1] && col(c) == col(c - 1);
            if !merge {
                kept.push(s.left + 1 + c);
            }
        }
        kept
    });
    let mut columns: Vec<i64> = Vec::new();
    for (k, &x) in xs.iter().enumerate() {
        columns.push(x);
        if let Some(inner) = keep.get(k) {
            columns.extend(inner);
        }
    }
    let x0 = xs[0];
    let mut free = Vec::new();
    let mut vertices = rep.vertices().to_vec();
    for (k, &x) in columns.iter().enumerate() {
        let nx = x0 + k as i64;
        free.extend(column_open(rep, x, b).map(|p| p2(nx, p[1])));
        for v in vertices.iter_mut().filter(|v| v[0] == x) {
            v[0] = nx;
        }
    }
    let bounds = Bounds::new(p2(x0, 0), p2(x0 + columns.len() as i64 - 1, b - 1));
    Representation::with_free_cells(2, bounds, vertices, free)
}

/// Constant of the width bound `K * b^3 * n`. Each section keeps at most
/// `2 b^2 (b - 1)` bend columns and one column per gap between them, so a
/// section spans at most `4 b^3 + 2` columns.
pub const WIDTH_CONSTANT: i64 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StripStats {
    pub height: i64,
    pub n: usize,
    pub width_before: i64,
    pub width_after: i64,
    pub bends_before: usize,
    pub bends_after: usize,
    pub width_bound: i64,
    pub within_bound: bool,
}

/// Total bend points over all envelopes of all sections.
pub fn envelope_bends(rep: &Representation, b: i64) -> Result<usize> {
    let xs = check_strip(rep, b)?;
    let secs = sections(rep, b, &xs)?;
    Ok(secs
        .iter()
        .flat_map(|s| s.all_envelopes())
        .map(|(_, u, l)| bend_count(&u) + bend_count(&l))
        .sum())
}

/// Envelope retention followed by bend compression.
pub fn compress_strip(rep: &Representation, b: i64, n: usize) -> Result<Representation> {
    compress_strip_stats(rep, b, n, Exec::default()).map(|(r, _)| r)
}

pub fn compress_strip_stats(rep: &Representation, b: i64, n: usize, exec: Exec) -> Result<(Representation, StripStats)> {
    if n != rep.n() {
        return Err(Error::Precondition(format!("n = {n} but the strip places {} vertices", rep.n())));
    }
    let env = compress_envelopes_with(rep, b, exec)?;
    let bends_before = envelope_bends(&env, b)?;
    let out = compress_bends_with(&env, b, exec)?;
    let width_after = strip_width(&out);
    let width_bound = WIDTH_CONSTANT * b * b * b * n as i64;
    let stats = StripStats {
        height: b,
        n,
        width_before: strip_width(rep),
        width_after,
        bends_before,
        bends_after: envelope_bends(&out, b)?,
        width_bound,
        within_bound: width_after <= width_bound,
    };
    Ok((out, stats))
}
