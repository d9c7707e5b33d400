//! Three-dimensional construction for r-colorable graphs: vertices of colour class
//! `i` on the line `(i, t, i*t)`, cubes around vertices, tubes around edges,
//! staircase digitization and face-center rerouting.

use num_traits::One;

use crate::error::{Error, Result};
use crate::geom::{qp, QPoint, Q};
use crate::grid::Graph;
use crate::par::Exec;
use crate::planar::{self, ConstructionGeometry, Mode};
use crate::Representation;

const MAX_ATTEMPTS: i64 = 64;

/// Straight-line drawing in Z^3 with its colour classes.
#[derive(Debug, Clone, PartialEq)]
pub struct Drawing3D {
    pub positions: Vec<QPoint>,
    pub edges: Vec<(usize, usize)>,
    pub color_classes: Vec<Vec<usize>>,
}

impl Drawing3D {
    pub fn is_crossing_free(&self) -> bool {
        planar::segments_ok(&self.positions, &self.edges)
    }

    pub fn r(&self) -> usize {
        self.color_classes.len()
    }
}

/// Greedy proper colouring in label order.
pub fn color_classes(g: &Graph) -> Vec<Vec<usize>> {
    let mut color = vec![usize::MAX; g.n()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.n() {
        let used: Vec<usize> = g.neighbors(v).iter().map(|&w| color[w]).filter(|&c| c != usize::MAX).collect();
        let c = (0..).find(|c| !used.contains(c)).expect("some colour is free");
        color[v] = c;
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(v);
    }
    classes
}

fn smallest_prime_at_least(m: i64) -> i64 {
    (m..).find(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0)).expect("primes are unbounded")
}

/// Places class `i` on the line `(i, t, i*t)` with `t = (i^2 + s*i) mod p + p*rank`
/// for a prime `p >= 2r`, trying `s = 0, 1, ...` until no two edges cross.
pub fn straight_line_embed_3d(g: &Graph, classes: &[Vec<usize>]) -> Result<Drawing3D> {
    let mut class_of = vec![usize::MAX; g.n()];
    for (c, vs) in classes.iter().enumerate() {
        for &v in vs {
            if class_of[v] != usize::MAX {
                return Err(Error::Precondition(format!("vertex {v} is in two classes")));
            }
            class_of[v] = c;
        }
    }
    if class_of.contains(&usize::MAX) {
        return Err(Error::Precondition("classes do not cover every vertex".into()));
    }
    if g.edges().iter().any(|&(a, b)| class_of[a] == class_of[b]) {
        return Err(Error::Precondition("colour classes are not independent".into()));
    }
    let p = smallest_prime_at_least((2 * classes.len() as i64).max(3));
    for s in 0..MAX_ATTEMPTS {
        let mut positions = vec![qp([0, 0, 0]); g.n()];
        for (c, vs) in classes.iter().enumerate() {
            let i = c as i64;
            for (rank, &v) in vs.iter().enumerate() {
                let t = (i * i + s * i).rem_euclid(p) + p * rank as i64;
                positions[v] = qp([i, t, i * t]);
            }
        }
        if planar::segments_ok(&positions, g.edges()) {
            return Ok(Drawing3D { positions, edges: g.edges().to_vec(), color_classes: classes.to_vec() });
        }
    }
    Err(Error::Limit(format!("no crossing-free placement within {MAX_ATTEMPTS} attempts")))
}

/// Box, tube and lattice sizing for the 3D construction.
pub fn geometry3d(g: &Graph, mode: Mode) -> Result<(Drawing3D, ConstructionGeometry)> {
    let classes = color_classes(g);
    let d = straight_line_embed_3d(g, &classes)?;
    let c2 = planar::c_squared(&d.positions, &d.edges);
    let (refine, pos) = match mode {
        Mode::Adaptive => (Q::one(), d.positions.clone()),
        Mode::PaperFaithful => {
            let f = crate::geom::q(4 * d.r() as i64 * g.n() as i64);
            let pos = d.positions.iter().map(|p| crate::geom::scale(p, &f)).collect();
            (f, pos)
        }
    };
    let sizing = match mode {
        Mode::Adaptive => planar::adaptive_sizing(&pos, &d.edges, 3)?,
        Mode::PaperFaithful => planar::faithful_sizing(&pos, &d.edges, 3)?,
    };
    let geo = planar::assemble_geometry(3, mode, refine, c2, &pos, &d.edges, sizing)?;
    Ok((d, geo))
}

/// Full 3D pipeline, re-checked against `g`.
pub fn embed3d(g: &Graph, mode: Mode) -> Result<(Representation, ConstructionGeometry)> {
    embed3d_with(g, mode, Exec::default())
}

pub fn embed3d_with(g: &Graph, mode: Mode, exec: Exec) -> Result<(Representation, ConstructionGeometry)> {
    if g.n() == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    let (_, geo) = geometry3d(g, mode)?;
    planar::materialize_checked(geo, g, exec)
}
