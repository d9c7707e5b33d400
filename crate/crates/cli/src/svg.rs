use std::fmt::Write;

use gridobs::grid::{lattice_box, Bounds, Occupancy, Point};
use gridobs::{visibility, Error, Representation, Result};

const CELL: i64 = 12;
const MAX_CELLS: u128 = 1 << 20;
const MAX_PATH_VERTICES: usize = 64;

fn viewport(rep: &Representation) -> Result<Bounds> {
    let b = match rep.default_occupancy() {
        Occupancy::Blocked => rep.bounds().expect("validated"),
        Occupancy::Free => rep.extent().ok_or_else(|| Error::Invalid("nothing to draw".into()))?.padded(2, 2),
    };
    if b.volume() > MAX_CELLS {
        return Err(Error::Limit(format!("viewport of {} cells exceeds {MAX_CELLS}", b.volume())));
    }
    Ok(b)
}

/// SVG 1.1 drawing of a 2D representation: vertices as dots, obstacles as
/// dark squares, free cells of a blocked representation as light squares,
/// and one witness polyline per visible pair.
pub fn render(rep: &Representation) -> Result<String> {
    if rep.dim() != 2 {
        return Err(Error::Invalid("only 2D representations can be rendered".into()));
    }
    let b = viewport(rep)?;
    let (w, h) = (b.extent(0) * CELL, b.extent(1) * CELL);
    let origin = |p: Point| ((p[0] - b.min[0]) * CELL, (b.max[1] - p[1]) * CELL);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let mut free = String::new();
    let mut blocked = String::new();
    for p in lattice_box(b, 2) {
        if rep.vertex_at(p).is_some() {
            continue;
        }
        let (x, y) = origin(p);
        if rep.is_obstacle(p) {
            let _ = writeln!(blocked, r##"<rect class="obstacle" x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="#333333"/>"##);
        } else if rep.default_occupancy() == Occupancy::Blocked {
            let _ = writeln!(free, r##"<rect class="free" x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="#e8eef8"/>"##);
        }
    }
    s.push_str(&free);
    s.push_str(&blocked);
    if rep.n() <= MAX_PATH_VERTICES {
        let g = visibility::visibility_graph(rep);
        for &(u, v) in g.edges() {
            let Some(path) = visibility::witness_path(rep, u, v)? else { continue };
            let pts: Vec<String> =
                path.iter().map(|&p| origin(p)).map(|(x, y)| format!("{},{}", x + CELL / 2, y + CELL / 2)).collect();
            let _ = writeln!(
                s,
                r##"<polyline class="witness" points="{}" fill="none" stroke="#c04020" stroke-width="2"/>"##,
                pts.join(" ")
            );
        }
    }
    for (i, &p) in rep.vertices().iter().enumerate() {
        let (x, y) = origin(p);
        let _ = writeln!(
            s,
            r#"<circle class="vertex" cx="{}" cy="{}" r="{}" fill="black"><title>{i}</title></circle>"#,
            x + CELL / 2,
            y + CELL / 2,
            CELL / 3
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
