//! Obstacle components, an exhaustive obstacle-number search for tiny graphs,
//! and the crossing-witness invariant.

use std::collections::VecDeque;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{lattice_box, p2, Graph, LatticePath, Occupancy, Point, Representation};
use crate::par::{self, Exec};
use crate::visibility::{verify, witness_path};

/// Obstacle components under unit-distance adjacency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentDecomposition {
    pub components: Vec<Vec<Point>>,
    pub count: usize,
}

impl ComponentDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }
}

/// Flood fill over the obstacle set; fails when the representation has more
/// than `limit` obstacles.
pub fn component_obstacles(rep: &Representation, limit: usize) -> Result<ComponentDecomposition> {
    let obstacles = rep.obstacles(limit)?;
    let index: FxHashMap<Point, usize> = obstacles.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut seen = vec![false; obstacles.len()];
    let mut components = Vec::new();
    for start in 0..obstacles.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![obstacles[start]];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let p = obstacles[i];
            for k in 0..rep.dim() {
                for s in [-1, 1] {
                    let mut q = p;
                    q[k] += s;
                    if let Some(&j) = index.get(&q) {
                        if !seen[j] {
                            seen[j] = true;
                            comp.push(q);
                            queue.push_back(j);
                        }
                    }
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components.sort();
    Ok(ComponentDecomposition { count: components.len(), components })
}

/// Component sizes in decreasing order. Default-blocked representations are
/// scanned densely over their bounds, so the obstacle set is never listed.
pub fn component_sizes(rep: &Representation) -> Result<Vec<usize>> {
    let Some(b) = rep.bounds().filter(|_| rep.default_occupancy() == Occupancy::Blocked) else {
        let mut sizes = component_obstacles(rep, usize::MAX)?.sizes();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        return Ok(sizes);
    };
    if b.volume() > DENSE_LIMIT {
        return Err(Error::Limit(format!("bounds of {} cells exceed {DENSE_LIMIT}", b.volume())));
    }
    let dim = rep.dim();
    let ext: Vec<usize> = (0..3).map(|k| if k < dim { b.extent(k) as usize } else { 1 }).collect();
    let stride = [1, ext[0], ext[0] * ext[1]];
    let mut open = vec![true; b.volume() as usize];
    for p in lattice_box(b, dim) {
        let i: usize = (0..dim).map(|k| (p[k] - b.min[k]) as usize * stride[k]).sum();
        open[i] = !rep.is_obstacle(p);
    }
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..open.len() {
        if open[start] {
            continue;
        }
        open[start] = true;
        stack.push(start);
        let mut size = 0;
        while let Some(i) = stack.pop() {
            size += 1;
            let coord = [i % ext[0], i / ext[0] % ext[1], i / stride[2]];
            for k in 0..dim {
                if coord[k] > 0 && !open[i - stride[k]] {
                    open[i - stride[k]] = true;
                    stack.push(i - stride[k]);
                }
                if coord[k] + 1 < ext[k] && !open[i + stride[k]] {
                    open[i + stride[k]] = true;
                    stack.push(i + stride[k]);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(sizes)
}

const DENSE_LIMIT: u128 = 1 << 32;

pub const OBSNUM_MAX_N: usize = 5;
pub const OBSNUM_MAX_SIDE: usize = 7;
pub const OBSNUM_MAX_CAP: usize = 6;

/// Result of the windowed search. `value` is an upper bound on the obstacle
/// number over the whole plane.
#[derive(Debug, Clone)]
pub struct ObsnumResult {
    pub value: Option<usize>,
    pub witness: Option<Representation>,
    pub placements_searched: usize,
}

struct Window {
    w: i64,
    h: i64,
}

impl Window {
    fn bit(&self, x: i64, y: i64) -> u64 {
        1 << (y * self.w + x)
    }

    fn xy(&self, i: usize) -> (i64, i64) {
        (i as i64 % self.w, i as i64 / self.w)
    }

    /// Monotone reachability between two window points; `closed` marks
    /// impassable points.
    fn path(&self, a: usize, b: usize, closed: u64) -> Option<Vec<usize>> {
        let ((ax, ay), (bx, by)) = (self.xy(a), self.xy(b));
        let (sx, sy) = ((bx - ax).signum(), (by - ay).signum());
        let (nx, ny) = ((bx - ax).abs() + 1, (by - ay).abs() + 1);
        let at = |i: i64, j: i64| (ax + sx * i, ay + sy * j);
        // co[i][j]: b reachable from step (i, j)
        let mut co = vec![false; (nx * ny) as usize];
        for i in (0..nx).rev() {
            for j in (0..ny).rev() {
                let (x, y) = at(i, j);
                let here = (i, j) == (nx - 1, ny - 1)
                    || ((i, j) == (0, 0) || closed & self.bit(x, y) == 0)
                        && ((i + 1 < nx && co[((i + 1) * ny + j) as usize])
                            || (j + 1 < ny && co[(i * ny + j + 1) as usize]));
                co[(i * ny + j) as usize] = here;
            }
        }
        if !co[0] {
            return None;
        }
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while (i, j) != (nx - 1, ny - 1) {
            if i + 1 < nx && co[((i + 1) * ny + j) as usize] {
                i += 1;
            } else {
                j += 1;
            }
            let (x, y) = at(i, j);
            out.push((y * self.w + x) as usize);
        }
        out.pop();
        Some(out)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
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

fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    permutations(g.n())
        .into_iter()
        .filter(|a| g.edges().iter().all(|&(u, v)| g.has_edge(a[u], a[v])))
        .collect()
}

fn combinations(pool: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, pool: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool {
            cur.push(i);
            rec(i + 1, pool, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, pool, k, &mut Vec::new(), &mut out);
    out
}

/// Injective placements into the window up to translation, one labelling per
/// orbit of the automorphism group.
fn placements(g: &Graph, win: &Window) -> Vec<Vec<usize>> {
    let n = g.n();
    let auts = automorphisms(g);
    let perms = permutations(n);
    let mut out = Vec::new();
    for set in combinations((win.w * win.h) as usize, n) {
        let (xs, ys): (Vec<i64>, Vec<i64>) = set.iter().map(|&i| win.xy(i)).unzip();
        if xs.iter().min() != Some(&0) || ys.iter().min() != Some(&0) {
            continue;
        }
        for p in &perms {
            let sigma: Vec<usize> = p.iter().map(|&i| set[i]).collect();
            let canonical = auts.iter().all(|a| {
                let other: Vec<usize> = (0..n).map(|v| sigma[a[v]]).collect();
                sigma <= other
            });
            if canonical {
                out.push(sigma);
            }
        }
    }
    out
}

struct Search<'a> {
    g: &'a Graph,
    win: &'a Window,
    place: &'a [usize],
    vmask: u64,
}

impl Search<'_> {
    fn closed(&self, obstacles: u64, u: usize, v: usize) -> u64 {
        (obstacles | self.vmask) & !(1 << self.place[u]) & !(1 << self.place[v])
    }

    fn solve(&self, obstacles: u64, budget: usize) -> Option<u64> {
        let n = self.g.n();
        for &(u, v) in self.g.edges() {
            self.win.path(self.place[u], self.place[v], self.closed(obstacles, u, v))?;
        }
        let leak = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.g.has_edge(u, v))
            .find_map(|(u, v)| self.win.path(self.place[u], self.place[v], self.closed(obstacles, u, v)));
        let Some(path) = leak else {
            return Some(obstacles);
        };
        if budget == 0 {
            return None;
        }
        path.into_iter().find_map(|c| self.solve(obstacles | 1 << c, budget - 1))
    }
}

/// Smallest obstacle count `k <= cap` realising `g` inside a `w x h` window,
/// by iterative deepening over `k`. Each step branches on the interior points
/// of one open path between a non-adjacent pair.
pub fn obsnum_exact(g: &Graph, w: usize, h: usize, cap: usize) -> Result<ObsnumResult> {
    obsnum_exact_with(g, w, h, cap, Exec::default())
}

pub fn obsnum_exact_with(g: &Graph, w: usize, h: usize, cap: usize, exec: Exec) -> Result<ObsnumResult> {
    if g.n() > OBSNUM_MAX_N || w > OBSNUM_MAX_SIDE || h > OBSNUM_MAX_SIDE || cap > OBSNUM_MAX_CAP {
        return Err(Error::Limit(format!(
            "obsnum search accepts n <= {OBSNUM_MAX_N}, window <= {OBSNUM_MAX_SIDE}x{OBSNUM_MAX_SIDE}, cap <= {OBSNUM_MAX_CAP}"
        )));
    }
    if w == 0 || h == 0 || g.n() == 0 {
        return Err(Error::Precondition("empty window or graph".into()));
    }
    let win = Window { w: w as i64, h: h as i64 };
    let all = placements(g, &win);
    let searched = all.len();
    for k in 0..=cap {
        let hit = par::find_first(exec, &all, |place| {
            let vmask = place.iter().fold(0u64, |m, &i| m | 1 << i);
            let s = Search { g, win: &win, place, vmask };
            s.solve(0, k).map(|obs| (place.clone(), obs))
        });
        if let Some((place, obs)) = hit {
            let vs: Vec<Point> = place.iter().map(|&i| win.xy(i)).map(|(x, y)| p2(x, y)).collect();
            let cells = (0..w * h).filter(|&i| obs >> i & 1 == 1).map(|i| win.xy(i)).map(|(x, y)| p2(x, y));
            let rep = Representation::with_obstacles(2, vs, cells)?;
            if !verify(&rep, g)?.matches {
                return Err(Error::Construction("search witness fails verification".into()));
            }
            return Ok(ObsnumResult { value: Some(k), witness: Some(rep), placements_searched: searched });
        }
    }
    Ok(ObsnumResult { value: None, witness: None, placements_searched: searched })
}

/// Outcome of [`crossing_c4_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C4Report {
    pub holds: bool,
    /// Pairs of vertex-disjoint edges whose witness paths meet.
    pub crossing_pairs: usize,
    /// Spliced pairs that had to be edges.
    pub implied_edges_checked: usize,
    /// `[a, b, c, d]` where `ab`, `cd` are edges with crossing witnesses and
    /// the spliced pair `ad` is not an edge.
    pub violation: Option<[usize; 4]>,
}

fn signs(a: Point, b: Point) -> [i64; 3] {
    [(b[0] - a[0]).signum(), (b[1] - a[1]).signum(), (b[2] - a[2]).signum()]
}

fn compatible(s: [i64; 3], t: [i64; 3]) -> bool {
    (0..3).all(|k| s[k] * t[k] >= 0)
}

/// For every two vertex-disjoint edges whose canonical witnesses share a point
/// and run in compatible directions, both spliced pairs must be edges.
pub fn crossing_c4_check(rep: &Representation, g: &Graph) -> Result<C4Report> {
    if !verify(rep, g)?.matches {
        return Err(Error::Precondition("representation does not realise the graph".into()));
    }
    let edges = g.edges();
    let paths: Vec<LatticePath> = edges
        .iter()
        .map(|&(u, v)| witness_path(rep, u, v).map(|p| p.expect("edges of a verified representation are visible")))
        .collect::<Result<_>>()?;
    let mut at: FxHashMap<Point, Vec<usize>> = FxHashMap::default();
    for (e, path) in paths.iter().enumerate() {
        for &p in &path[1..path.len() - 1] {
            at.entry(p).or_default().push(e);
        }
    }
    let mut met: FxHashSet<(usize, usize)> = FxHashSet::default();
    for list in at.values() {
        for (i, &e) in list.iter().enumerate() {
            for &f in &list[i + 1..] {
                let ((a, b), (c, d)) = (edges[e], edges[f]);
                if a != c && a != d && b != c && b != d {
                    met.insert((e.min(f), e.max(f)));
                }
            }
        }
    }
    let mut met: Vec<_> = met.into_iter().collect();
    met.sort_unstable();
    let pos = |v: usize| rep.vertices()[v];
    let mut checked = 0;
    for &(e, f) in &met {
        let ((a, b), (c, d)) = (edges[e], edges[f]);
        let (s, t) = (signs(pos(a), pos(b)), signs(pos(c), pos(d)));
        let mut implied = Vec::new();
        if compatible(s, t) {
            implied.push([a, b, c, d]);
            implied.push([c, d, a, b]);
        }
        if compatible(s, t.map(|x| -x)) {
            implied.push([a, b, d, c]);
            implied.push([d, c, a, b]);
        }
        for q in implied {
            checked += 1;
            if !g.has_edge(q[0], q[3]) {
                return Ok(C4Report {
                    holds: false,
                    crossing_pairs: met.len(),
                    implied_edges_checked: checked,
                    violation: Some(q),
                });
            }
        }
    }
    Ok(C4Report { holds: true, crossing_pairs: met.len(), implied_edges_checked: checked, violation: None })
}

/// Whether `g` contains a 4-cycle as a subgraph: two vertices with two common neighbours.
pub fn has_c4(g: &Graph) -> bool {
    let n = g.n();
    (0..n).any(|a| {
        (a + 1..n).any(|c| g.neighbors(a).iter().filter(|&&b| g.has_edge(b, c)).nth(1).is_some())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fixture, FixtureSpec};

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn brute_c4(g: &Graph) -> bool {
        let n = g.n();
        let perms = permutations(4);
        (0..n).any(|a| {
            (a + 1..n).any(|b| {
                (b + 1..n).any(|c| {
                    (c + 1..n).any(|d| {
                        let q = [a, b, c, d];
                        perms.iter().any(|p| (0..4).all(|i| g.has_edge(q[p[i]], q[p[(i + 1) % 4]])))
                    })
                })
            })
        })
    }

    #[test]
    fn components() {
        let rep = Representation::with_obstacles(2, vec![p2(9, 9)], [p2(0, 0), p2(0, 1), p2(5, 5)]).unwrap();
        let d = component_obstacles(&rep, 100).unwrap();
        assert_eq!(d.count, 2);
        assert_eq!(d.sizes(), vec![2, 1]);
        let none = Representation::with_obstacles(2, vec![p2(0, 0)], []).unwrap();
        assert_eq!(component_obstacles(&none, 100).unwrap().count, 0);
        let diag = Representation::with_obstacles(2, vec![], [p2(0, 0), p2(1, 1)]).unwrap();
        assert_eq!(component_obstacles(&diag, 100).unwrap().count, 2);
        assert_eq!(component_sizes(&rep).unwrap(), vec![2, 1]);
        let bounds = crate::grid::Bounds::new(p2(0, 0), p2(4, 2));
        let free = [p2(1, 1), p2(2, 1), p2(3, 1), p2(2, 0), p2(2, 2)];
        let blocked = Representation::with_free_cells(2, bounds, vec![p2(0, 1), p2(4, 1)], free).unwrap();
        let sizes = component_sizes(&blocked).unwrap();
        assert_eq!(sizes, component_obstacles(&blocked, 100).unwrap().sizes().into_iter().rev().collect::<Vec<_>>());
        assert_eq!(sizes, vec![2, 2, 2, 2]);
    }

    #[test]
    fn c4_detection() {
        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(has_c4(&cycle(4)) && has_c4(&k4));
        assert!(!has_c4(&cycle(5)));
        let tree = Graph::new(7, (1..7).map(|v| ((v - 1) / 2, v))).unwrap();
        assert!(!has_c4(&tree));
        for n in 4..8 {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            for seed in 0u64..200 {
                let edges = pairs.iter().enumerate().filter(|(i, _)| (seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) >> (i % 64)) & 1 == 1);
                let g = Graph::new(n, edges.map(|(_, &e)| e)).unwrap();
                assert_eq!(has_c4(&g), brute_c4(&g));
            }
        }
    }

    #[test]
    fn small_obstacle_numbers() {
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(obsnum_exact(&p3, 4, 4, 2).unwrap().value, Some(0));
        let k3 = Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(obsnum_exact(&k3, 4, 4, 2).unwrap().value, Some(0));
        let r = obsnum_exact(&Graph::empty(3), 5, 5, 3).unwrap();
        assert_eq!(r.value, Some(2));
        assert_eq!(r.witness.unwrap().obstacle_count(), 2);
        assert_eq!(obsnum_exact(&Graph::empty(3), 3, 1, 3).unwrap().value, None);
        assert!(obsnum_exact(&Graph::empty(6), 5, 5, 3).is_err());
    }

    #[test]
    fn crossing_invariant_on_fixtures() {
        for spec in [FixtureSpec::Complete { n: 6 }, FixtureSpec::Cycle { n: 9 }, FixtureSpec::CompleteBipartite { n: 3, m: 4 }] {
            let (g, rep) = fixture(spec).unwrap();
            assert!(crossing_c4_check(&rep, &g).unwrap().holds);
        }
        let (g, rep) = fixture(FixtureSpec::Complete { n: 6 }).unwrap();
        assert!(crossing_c4_check(&rep, &g).unwrap().crossing_pairs > 0);
        let (_, rep) = fixture(FixtureSpec::Path { n: 10 }).unwrap();
        assert!(matches!(crossing_c4_check(&rep, &cycle(10)), Err(Error::Precondition(_))));
    }
}
