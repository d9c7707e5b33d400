//! Concrete obstacle representations for small graph families. Every generator
//! checks its output against the target graph before returning it.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{p2, Bounds, Graph, Point, Representation};
use crate::visibility::verify;

/// A fixture family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureSpec {
    Path { n: usize },
    Cycle { n: usize },
    Matching { k: usize },
    Complete { n: usize },
    CompleteBipartite { n: usize, m: usize },
    CompleteMinusMatching { n: usize, k: usize },
    Empty { n: usize },
    EmptyBipartite { n: usize, m: usize },
    BinaryTree { h: usize },
}

/// Family names accepted by [`FixtureSpec::from_class`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureClass {
    Path,
    Cycle,
    Matching,
    Complete,
    CompleteBipartite,
    CompleteMinusMatching,
    Empty,
    EmptyBipartite,
    BinaryTree,
}

impl FromStr for FixtureClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.replace('_', "-").as_str() {
            "path" => FixtureClass::Path,
            "cycle" => FixtureClass::Cycle,
            "matching" => FixtureClass::Matching,
            "complete" => FixtureClass::Complete,
            "complete-bipartite" => FixtureClass::CompleteBipartite,
            "complete-minus-matching" => FixtureClass::CompleteMinusMatching,
            "empty" => FixtureClass::Empty,
            "empty-bipartite" | "empty-bipartite-complement" => FixtureClass::EmptyBipartite,
            "binary-tree" => FixtureClass::BinaryTree,
            _ => return Err(Error::Invalid(format!("unknown fixture class {s:?}"))),
        })
    }
}

impl fmt::Display for FixtureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixtureClass::Path => "path",
            FixtureClass::Cycle => "cycle",
            FixtureClass::Matching => "matching",
            FixtureClass::Complete => "complete",
            FixtureClass::CompleteBipartite => "complete-bipartite",
            FixtureClass::CompleteMinusMatching => "complete-minus-matching",
            FixtureClass::Empty => "empty",
            FixtureClass::EmptyBipartite => "empty-bipartite",
            FixtureClass::BinaryTree => "binary-tree",
        })
    }
}

fn need(v: Option<usize>, name: &str, class: FixtureClass) -> Result<usize> {
    v.ok_or_else(|| Error::Invalid(format!("fixture {class} needs --{name}")))
}

impl FixtureSpec {
    pub fn from_class(
        class: FixtureClass,
        n: Option<usize>,
        m: Option<usize>,
        k: Option<usize>,
        h: Option<usize>,
    ) -> Result<Self> {
        let c = class;
        Ok(match class {
            FixtureClass::Path => FixtureSpec::Path { n: need(n, "n", c)? },
            FixtureClass::Cycle => FixtureSpec::Cycle { n: need(n, "n", c)? },
            FixtureClass::Matching => FixtureSpec::Matching { k: need(k.or(n), "k", c)? },
            FixtureClass::Complete => FixtureSpec::Complete { n: need(n, "n", c)? },
            FixtureClass::CompleteBipartite => FixtureSpec::CompleteBipartite { n: need(n, "n", c)?, m: need(m, "m", c)? },
            FixtureClass::CompleteMinusMatching => {
                FixtureSpec::CompleteMinusMatching { n: need(n, "n", c)?, k: need(k, "k", c)? }
            }
            FixtureClass::Empty => FixtureSpec::Empty { n: need(n, "n", c)? },
            FixtureClass::EmptyBipartite => FixtureSpec::EmptyBipartite { n: need(n, "n", c)?, m: need(m, "m", c)? },
            FixtureClass::BinaryTree => FixtureSpec::BinaryTree { h: need(h.or(n), "h", c)? },
        })
    }
}

fn range_err<T>(msg: &str) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

fn free_rep(vs: Vec<Point>, obstacles: Vec<Point>) -> Result<Representation> {
    Representation::with_obstacles(2, vs, obstacles)
}

fn complete_graph(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).expect("simple")
}

/// Builds the fixture and checks it with the verifier.
pub fn fixture(spec: FixtureSpec) -> Result<(Graph, Representation)> {
    let (g, rep) = match spec {
        FixtureSpec::Path { n } => path(n)?,
        FixtureSpec::Cycle { n } => cycle(n)?,
        FixtureSpec::Matching { k } => matching(k)?,
        FixtureSpec::Complete { n } => complete(n)?,
        FixtureSpec::CompleteBipartite { n, m } => complete_bipartite(n, m)?,
        FixtureSpec::CompleteMinusMatching { n, k } => return complete_minus_matching(n, k),
        FixtureSpec::Empty { n } => empty(n)?,
        FixtureSpec::EmptyBipartite { n, m } => empty_bipartite(n, m)?,
        FixtureSpec::BinaryTree { h } => binary_tree(h)?,
    };
    checked(spec, g, rep)
}

fn checked(spec: FixtureSpec, g: Graph, rep: Representation) -> Result<(Graph, Representation)> {
    let report = verify(&rep, &g)?;
    if !report.matches {
        return Err(Error::Construction(format!("fixture {spec:?} does not verify: {}", report.to_json())));
    }
    Ok((g, rep))
}

fn path(n: usize) -> Result<(Graph, Representation)> {
    if n < 1 {
        return range_err("path needs n >= 1");
    }
    let g = Graph::new(n, (1..n).map(|i| (i - 1, i)))?;
    Ok((g, free_rep((0..n as i64).map(|i| p2(i, 0)).collect(), vec![])?))
}

fn complete(n: usize) -> Result<(Graph, Representation)> {
    if n < 1 {
        return range_err("complete graph needs n >= 1");
    }
    Ok((complete_graph(n), free_rep((0..n as i64).map(|i| p2(i, i)).collect(), vec![])?))
}

fn empty(n: usize) -> Result<(Graph, Representation)> {
    if n < 1 {
        return range_err("empty graph needs n >= 1");
    }
    let n64 = n as i64;
    let vs = (0..n64).map(|i| p2(2 * i, 0)).collect();
    let obs = (0..n64 - 1).map(|i| p2(2 * i + 1, 0)).collect();
    Ok((Graph::empty(n), free_rep(vs, obs)?))
}

fn matching(k: usize) -> Result<(Graph, Representation)> {
    if k < 1 {
        return range_err("matching needs k >= 1");
    }
    let k64 = k as i64;
    let g = Graph::new(2 * k, (0..k).map(|i| (2 * i, 2 * i + 1)))?;
    let vs = (0..k64).flat_map(|i| [p2(3 * i, 0), p2(3 * i + 1, 0)]).collect();
    let obs = (0..k64 - 1).map(|i| p2(3 * i + 2, 0)).collect();
    Ok((g, free_rep(vs, obs)?))
}

/// Bottom row left to right, top row right to left; the end columns close the
/// cycle through the free middle row.
fn cycle(n: usize) -> Result<(Graph, Representation)> {
    if n < 7 {
        return range_err("cycle needs n >= 7");
    }
    let bottom = n.div_ceil(2) as i64;
    let top = (n / 2) as i64;
    let g = Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?;
    let mut vs: Vec<Point> = (0..bottom).map(|x| p2(x, 0)).collect();
    vs.extend((0..top).map(|k| p2(top - 1 - k, 2)));
    let obs = (1..bottom - 1).map(|x| p2(x, 1)).collect();
    Ok((g, free_rep(vs, obs)?))
}

/// The larger part alternates with obstacles on row 0; the smaller part sits
/// on rows 2 and -2 above and below it.
fn complete_bipartite(n: usize, m: usize) -> Result<(Graph, Representation)> {
    if n < 2 || n > m {
        return range_err("complete bipartite needs 2 <= n <= m");
    }
    let g = Graph::new(n + m, (0..n).flat_map(|a| (n..n + m).map(move |b| (a, b))))?;
    let (m64, up) = (m as i64, n.div_ceil(2) as i64);
    let down = n as i64 - up;
    let mut vs: Vec<Point> = (0..up).map(|i| p2(2 * i + 1, 2)).collect();
    vs.extend((0..down).map(|i| p2(2 * i + 1, -2)));
    vs.extend((0..m64).map(|i| p2(2 * i, 0)));
    let mut obs: Vec<Point> = (0..m64 - 1).map(|i| p2(2 * i + 1, 0)).collect();
    obs.extend((0..up - 1).map(|i| p2(2 * i + 2, 2)));
    obs.extend((0..down - 1).map(|i| p2(2 * i + 2, -2)));
    Ok((g, free_rep(vs, obs)?))
}

fn minus_matching_graph(n: usize, k: usize) -> Result<Graph> {
    let matched = |a: usize, b: usize| a / 2 == b / 2 && a / 2 < k;
    Graph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| !matched(a, b)))
}

/// Matched pairs are axis-parallel chords of the diamond `|x| + |y| = r`,
/// alternately horizontal and vertical; consecutive chords cross, and one
/// obstacle at each crossing blocks two pairs. Unmatched vertices sit on the
/// lower-left side. Falls back to one obstacle per pair when the chain layout
/// does not verify.
fn complete_minus_matching(n: usize, k: usize) -> Result<(Graph, Representation)> {
    if k < 1 || 2 * k > n {
        return range_err("complete minus matching needs 1 <= k <= n/2");
    }
    let g = minus_matching_graph(n, k)?;
    let r = 4 * n as i64 + 1;
    let mut vs = vec![p2(0, 0); n];
    let mut chain_obs = Vec::new();
    for j in 0..k {
        let c = 2 * (j as i64 / 2);
        if j % 2 == 0 {
            vs[2 * j] = p2(-(r - c), c);
            vs[2 * j + 1] = p2(r - c, c);
        } else {
            vs[2 * j] = p2(c, -(r - c));
            vs[2 * j + 1] = p2(c, r - c);
        }
        if j + 1 < k {
            chain_obs.push(if j % 2 == 0 { p2(c, c) } else { p2(c, c + 2) });
        }
    }
    for (t, v) in (2 * k..n).enumerate() {
        let t = 2 * t as i64 + 1;
        vs[v] = p2(-(r - t), -t);
    }
    let spec = FixtureSpec::CompleteMinusMatching { n, k };
    let chain = free_rep(vs.clone(), chain_obs)?;
    if verify(&chain, &g)?.matches {
        return Ok((g, chain));
    }
    let mut flat = vs;
    let mut obs = Vec::new();
    for j in 0..k {
        let y = 2 * j as i64;
        flat[2 * j] = p2(-(r - y), y);
        flat[2 * j + 1] = p2(r - y, y);
        obs.push(p2(0, y));
    }
    checked(spec, g, free_rep(flat, obs)?)
}

/// Two diagonal cliques separated by a blocked column.
fn empty_bipartite(n: usize, m: usize) -> Result<(Graph, Representation)> {
    if n < 1 || m < 1 {
        return range_err("complement of complete bipartite needs n, m >= 1");
    }
    let mut edges: Vec<(usize, usize)> = complete_graph(n).edges().to_vec();
    edges.extend(complete_graph(m).edges().iter().map(|&(a, b)| (a + n, b + n)));
    let g = Graph::new(n + m, edges)?;
    let (n64, m64) = (n as i64, m as i64);
    let mut vs: Vec<Point> = (0..n64).map(|i| p2(i, i)).collect();
    vs.extend((0..m64).map(|j| p2(n64 + 1 + j, j)));
    let obs = (0..n64.max(m64)).map(|y| p2(n64, y)).collect();
    Ok((g, free_rep(vs, obs)?))
}

/// Heap-ordered complete binary tree of height `h`. Vertex `v` sits at
/// `(2 * inorder(v), 2 * (h - depth(v)))`; each edge is a corridor running
/// along the parent's row and then down to the child.
fn binary_tree(h: usize) -> Result<(Graph, Representation)> {
    if !(1..=16).contains(&h) {
        return range_err("binary tree needs 1 <= h <= 16");
    }
    let count = (1usize << (h + 1)) - 1;
    let g = Graph::new(count, (1..count).map(|v| ((v - 1) / 2, v)))?;
    let mut rank = vec![0i64; count];
    let mut next = 0;
    fn inorder(v: usize, count: usize, rank: &mut [i64], next: &mut i64) {
        if v >= count {
            return;
        }
        inorder(2 * v + 1, count, rank, next);
        rank[v] = *next;
        *next += 1;
        inorder(2 * v + 2, count, rank, next);
    }
    inorder(0, count, &mut rank, &mut next);
    let depth = |v: usize| (usize::BITS - 1 - (v + 1).leading_zeros()) as i64;
    let vs: Vec<Point> = (0..count).map(|v| p2(2 * rank[v], 2 * (h as i64 - depth(v)))).collect();
    let mut free = Vec::new();
    for c in 1..count {
        let (p, q) = (vs[(c - 1) / 2], vs[c]);
        let step = (q[0] - p[0]).signum();
        let mut x = p[0] + step;
        while x != q[0] + step {
            free.push(p2(x, p[1]));
            x += step;
        }
        free.push(p2(q[0], p[1] - 1));
    }
    let bounds = Bounds::new(p2(0, 0), p2(2 * (count as i64 - 1), 2 * h as i64));
    Ok((g, Representation::with_free_cells(2, bounds, vs, free)?))
}

/// `K4` minus the edge `{0, 3}` with two separate single-point obstacles.
pub fn two_obstacle_example() -> Result<(Graph, Representation)> {
    let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])?;
    let rep = free_rep(vec![p2(0, 0), p2(1, 2), p2(2, 1), p2(3, 3)], vec![p2(0, 3), p2(3, 0)])?;
    if !verify(&rep, &g)?.matches {
        return Err(Error::Construction("example does not verify".into()));
    }
    Ok((g, rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(spec: FixtureSpec) -> u128 {
        fixture(spec).unwrap().1.obstacle_count()
    }

    #[test]
    fn small_families_verify() {
        for n in 1..9 {
            assert_eq!(count(FixtureSpec::Path { n }), 0);
            assert_eq!(count(FixtureSpec::Complete { n }), 0);
            assert_eq!(count(FixtureSpec::Empty { n }), n as u128 - 1);
            assert_eq!(count(FixtureSpec::Matching { k: n }), n as u128 - 1);
        }
        for n in 7..16 {
            assert_eq!(count(FixtureSpec::Cycle { n }), n.div_ceil(2) as u128 - 2);
        }
        for m in 2..7 {
            for n in 2..=m {
                assert_eq!(count(FixtureSpec::CompleteBipartite { n, m }), (n + m - 3) as u128);
            }
        }
        assert_eq!(count(FixtureSpec::EmptyBipartite { n: 3, m: 5 }), 5);
        let (g, rep) = fixture(FixtureSpec::BinaryTree { h: 3 }).unwrap();
        assert_eq!((g.n(), g.m()), (15, 14));
        assert_eq!(rep.bounds().unwrap().extent(1), 7);
    }

    #[test]
    fn minus_matching_chain() {
        for n in 4..10 {
            for k in 1..=n / 2 {
                let c = count(FixtureSpec::CompleteMinusMatching { n, k });
                assert_eq!(c, k.max(2) as u128 - 1, "n {n} k {k}");
            }
        }
        assert_eq!(count(FixtureSpec::CompleteMinusMatching { n: 12, k: 3 }), 2);
    }

    #[test]
    fn parameter_errors() {
        assert!(fixture(FixtureSpec::Cycle { n: 6 }).is_err());
        assert!(fixture(FixtureSpec::CompleteBipartite { n: 4, m: 3 }).is_err());
        assert!(fixture(FixtureSpec::CompleteMinusMatching { n: 5, k: 3 }).is_err());
        assert!("tree".parse::<FixtureClass>().is_err());
        assert_eq!("binary_tree".parse::<FixtureClass>().unwrap(), FixtureClass::BinaryTree);
    }
}
