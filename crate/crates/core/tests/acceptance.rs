//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gridobs::analysis::{component_obstacles, crossing_c4_check, obsnum_exact};
use gridobs::embed3d::{embed3d, geometry3d};
use gridobs::fixtures::{fixture, two_obstacle_example, FixtureSpec};
use gridobs::geom::{q, Q};
use gridobs::grid::{is_manhattan, p2, Bounds, LatticePath, Point};
use gridobs::planar::{embed2d, gbg_audit, planar_geometry, Mode};
use gridobs::reduction::{geodesic_to_rep, gpse_points, oeps_decide, oeps_points, GeodesicDrawing, OepsAnswer, OepsCaps};
use gridobs::strip::{compress_strip, StripSection};
use gridobs::visibility::{brute_force_visible, is_visible, monotone_paths, verify, visibility_graph};
use gridobs::{Graph, Representation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Side bound `K * n^4` for paper-faithful planar grids.
const PLANAR_SIDE_K: i64 = 4096;
/// Per-axis bound on paper-faithful 3D extents relative to `(r^4 n^3, r^3 n^4, r^4 n^4)`.
const DIM3_K: f64 = 4096.0;
/// Strip width bound `K * b^3 * n`.
const STRIP_K: i64 = 6;

type Corpus = Vec<(String, Graph, Representation)>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Result<String, String> {
    Ok(detail.into())
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn run(id: usize, name: &str, budget: Duration, f: &mut dyn FnMut() -> Result<String, String>) -> Outcome {
    let t = Instant::now();
    let res = f();
    let dt = t.elapsed();
    let (pass, detail) = match res {
        Ok(d) if dt <= budget => (true, d),
        Ok(d) => (false, format!("{d}; took {dt:.1?} over budget {budget:?}")),
        Err(e) => (false, e),
    };
    println!("criterion {id} [{name}]: {} ({detail}; {:.2}s)", if pass { "PASS" } else { "FAIL" }, dt.as_secs_f64());
    Outcome { pass, detail }
}

fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
}

fn cycle(n: usize) -> Graph {
    Graph::from_edges_dedup(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

fn wheel(rim: usize) -> Graph {
    Graph::new(rim + 1, (0..rim).flat_map(|i| [(i, (i + 1) % rim), (i, rim)]).map(|(a, b)| (a.min(b), a.max(b)))).unwrap()
}

fn octahedron() -> Graph {
    Graph::new(6, (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).filter(|&(a, b)| b - a != 3)).unwrap()
}

fn k33() -> Graph {
    Graph::new(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap()
}

fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    Graph::new(n, (1..n).map(|v| (rng.random_range(0..v), v))).unwrap()
}

/// Stacked triangulation: every new vertex goes into a random face.
fn stacked_triangulation(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let i = rng.random_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
    }
    Graph::new(n, edges).unwrap()
}

fn drop_edges(g: &Graph, k: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut e = g.edges().to_vec();
    for _ in 0..k.min(e.len()) {
        e.swap_remove(rng.random_range(0..e.len()));
    }
    Graph::new(g.n(), e).unwrap()
}

fn criterion1(corpus: &mut Corpus) -> Result<String, String> {
    // (spec, exact count or upper bound, exact?)
    let table = [
        (FixtureSpec::Path { n: 10 }, 0, true),
        (FixtureSpec::Empty { n: 7 }, 6, true),
        (FixtureSpec::Complete { n: 12 }, 0, true),
        (FixtureSpec::CompleteBipartite { n: 5, m: 7 }, 9, true),
        (FixtureSpec::Matching { k: 6 }, 10, false),
        (FixtureSpec::Cycle { n: 26 }, 11, false),
        (FixtureSpec::CompleteMinusMatching { n: 12, k: 3 }, 3, false),
    ];
    let mut counts = Vec::new();
    for (spec, bound, exact) in table {
        let (g, rep) = fixture(spec).map_err(err)?;
        check(verify(&rep, &g).map_err(err)?.matches, || format!("{spec:?} does not verify"))?;
        let c = rep.obstacle_count();
        let good = if exact { c == bound } else { c <= bound };
        check(good, || format!("{spec:?}: {c} obstacles, expected {}{bound}", if exact { "" } else { "<= " }))?;
        counts.push(format!("{c}"));
        corpus.push((format!("{spec:?}"), g, rep));
    }
    let cmm = corpus.last().unwrap().2.obstacle_count();
    ok(format!("obstacle counts {} ; complete_minus_matching(12,3) reaches {cmm} (target 2)", counts.join(",")))
}

fn random_rep(rng: &mut ChaCha8Rng, dim: usize, max_side: i64) -> Representation {
    let ext: Vec<i64> = (0..3).map(|k| if k < dim { rng.random_range(1..=max_side) } else { 1 }).collect();
    let b = Bounds::new([0, 0, 0], [ext[0] - 1, ext[1] - 1, ext[2] - 1]);
    let cells: Vec<Point> = gridobs::grid::lattice_box(b, dim).collect();
    let n = rng.random_range(2..=6usize).min(cells.len());
    let mut pool = cells.clone();
    let mut vs = Vec::new();
    for _ in 0..n {
        vs.push(pool.swap_remove(rng.random_range(0..pool.len())));
    }
    let density = rng.random_range(0.0..0.6);
    let marked: Vec<Point> = pool.into_iter().filter(|_| rng.random_bool(density)).collect();
    if rng.random_bool(0.3) {
        Representation::with_free_cells(dim, b, vs, marked).unwrap()
    } else {
        Representation::with_obstacles(dim, vs, marked).unwrap()
    }
}

fn criterion2() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut pairs = 0;
    for (dim, count, side) in [(2, 1000, 9), (3, 200, 5)] {
        for trial in 0..count {
            let rep = random_rep(&mut rng, dim, side);
            for u in 0..rep.n() {
                for v in u + 1..rep.n() {
                    let fast = is_visible(&rep, u, v).map_err(err)?;
                    let slow = brute_force_visible(&rep, u, v).map_err(err)?;
                    check(fast == slow, || format!("{dim}D trial {trial} pair ({u},{v}): fast {fast} brute {slow}"))?;
                    pairs += 1;
                }
            }
        }
    }
    ok(format!("1000 2D + 200 3D configurations, {pairs} pairs, 0 discrepancies"))
}

fn planar_corpus() -> Vec<(String, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut out = Vec::new();
    for n in 3..=8 {
        out.push((format!("tree{n}"), random_tree(n, &mut rng)));
        out.push((format!("C{n}"), cycle(n)));
    }
    for rim in 3..=7 {
        out.push((format!("W{rim}"), wheel(rim)));
    }
    for n in 4..=8 {
        let t = stacked_triangulation(n, &mut rng);
        out.push((format!("tri{n}"), t.clone()));
        let k = rng.random_range(1..=3);
        out.push((format!("tri{n}-{k}"), drop_edges(&t, k, &mut rng)));
    }
    out.push(("octahedron".into(), octahedron()));
    let prism = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
    out.push(("prism".into(), prism));
    let cube = Graph::new(8, (0..8usize).flat_map(|a| [1, 2, 4].map(move |bit| (a, a ^ bit))).filter(|&(a, b)| a < b)).unwrap();
    out.push(("cube".into(), cube));
    out.push(("K2,3".into(), Graph::new(5, (0..2).flat_map(|a| (2..5).map(move |b| (a, b)))).unwrap()));
    out
}

fn criterion3(corpus: &mut Corpus) -> Result<String, String> {
    let graphs = planar_corpus();
    let mut max_side = 0;
    for (name, g) in &graphs {
        let (rep, geo) = embed2d(g, Mode::Adaptive).map_err(|e| format!("{name}: {e}"))?;
        check(verify(&rep, g).map_err(err)?.matches, || format!("{name} does not verify"))?;
        let audit = gbg_audit(&rep, &geo, g).map_err(err)?;
        check(audit.is_none(), || format!("{name}: witness colour pattern broken: {audit:?}"))?;
        max_side = max_side.max(geo.lattice_side());
        corpus.push((name.clone(), g.clone(), rep));
    }
    check(graphs.len() >= 30, || format!("corpus has only {} graphs", graphs.len()))?;
    ok(format!("{} planar graphs verified, colour audit clean, largest side {max_side}", graphs.len()))
}

fn criterion4() -> Result<String, String> {
    let graphs = [(4, complete(4)), (5, wheel(4)), (6, octahedron())];
    let mut rows = Vec::new();
    let mut constants: Vec<(i64, Q)> = Vec::new();
    for (n, g) in &graphs {
        let n = *n as i64;
        let (_, geo) = planar_geometry(g, Mode::PaperFaithful).map_err(err)?;
        let c2 = geo.c_squared.clone().ok_or("no vertex/edge pair to measure")?;
        // c > 1/(sqrt(2) n)  <=>  c^2 * 2 n^2 > 1
        check(&c2 * q(2 * n * n) > q(1), || format!("n={n}: c^2 = {c2} too small"))?;
        // delta in units of the initial drawing
        let delta = &geo.delta / &geo.refine;
        constants.push((n, &delta * q(n * n)));
        let side = geo.lattice_side();
        check(side <= PLANAR_SIDE_K * n.pow(4), || format!("n={n}: side {side} > {PLANAR_SIDE_K} n^4"))?;
        rows.push(format!("n={n} side={side} ({:.0} n^4)", side as f64 / n.pow(4) as f64));
    }
    let c_prime = constants.iter().map(|(_, c)| c.clone()).min().unwrap();
    check(c_prime > q(0), || "C' is not positive".into())?;
    for (n, c) in &constants {
        check(*c >= c_prime, || format!("n={n}: delta below C'/n^2"))?;
    }
    let (rep, _) = embed2d(&complete(4), Mode::PaperFaithful).map_err(err)?;
    check(verify(&rep, &complete(4)).map_err(err)?.matches, || "paper-faithful K4 does not verify".into())?;
    let approx = c_prime.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
        / c_prime.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    ok(format!("{}; C' = {approx:.3e}; K = {PLANAR_SIDE_K}; n=4 fully verified", rows.join(", ")))
}

fn criterion5(corpus: &mut Corpus) -> Result<String, String> {
    let graphs = [("K4", complete(4)), ("K5", complete(5)), ("K3,3", k33()), ("C5", cycle(5))];
    let mut rows = Vec::new();
    for (name, g) in &graphs {
        let (rep, _) = embed3d(g, Mode::Adaptive).map_err(|e| format!("{name}: {e}"))?;
        check(verify(&rep, g).map_err(err)?.matches, || format!("{name} does not verify in 3D"))?;
        corpus.push((format!("3D {name}"), g.clone(), rep));
        let (d, geo) = geometry3d(g, Mode::PaperFaithful).map_err(err)?;
        let (r, n) = (d.r() as f64, g.n() as f64);
        let target = [r.powi(4) * n.powi(3), r.powi(3) * n.powi(4), r.powi(4) * n.powi(4)];
        let b = geo.lattice_bounds();
        let ratios: Vec<f64> = (0..3).map(|k| b.extent(k) as f64 / target[k]).collect();
        check(ratios.iter().all(|&x| x <= DIM3_K), || format!("{name}: extent ratios {ratios:.2?} exceed {DIM3_K}"))?;
        rows.push(format!("{name} r={} ratios {:.2?}", d.r(), ratios));
    }
    ok(format!("K4, K5, K3,3, C5 verified; dry-run {}", rows.join("; ")))
}

fn random_strip(rng: &mut ChaCha8Rng) -> Representation {
    let b = rng.random_range(1..=4i64);
    let width = [rng.random_range(2..40), rng.random_range(2..1000), rng.random_range(2..=10_000)][rng.random_range(0..3)];
    let n = rng.random_range(2..=6usize).min((width * b) as usize);
    let mut vs: Vec<Point> = Vec::new();
    while vs.len() < n {
        let p = p2(rng.random_range(0..width), rng.random_range(0..b));
        if !vs.contains(&p) {
            vs.push(p);
        }
    }
    let density = [0.0, 0.01, 0.05, 0.2, 0.4][rng.random_range(0..5)];
    let mut cells = Vec::new();
    for x in 0..width {
        for y in 0..b {
            let p = p2(x, y);
            if !vs.contains(&p) && rng.random_bool(density) {
                cells.push(p);
            }
        }
    }
    Representation::with_obstacles(2, vs, cells).unwrap()
}

/// For each column, the lowest and highest row a path occupies there.
fn column_span(path: &LatticePath, x: i64) -> Option<(i64, i64)> {
    let ys: Vec<i64> = path.iter().filter(|p| p[0] == x).map(|p| p[1]).collect();
    Some((*ys.iter().min()?, *ys.iter().max()?))
}

fn envelope_oracle(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut checked = 0;
    for trial in 0..400 {
        let h = rng.random_range(1..=4i64);
        let w = rng.random_range(1..=8usize);
        let density = rng.random_range(0.0..0.5);
        let cols: Vec<Vec<bool>> = (0..w).map(|_| (0..h).map(|_| !rng.random_bool(density)).collect()).collect();
        let sec = StripSection::from_columns(0, h, &cols).map_err(err)?;
        for i in 0..h {
            for j in 0..h {
                let (a, b) = (p2(0, i), p2(sec.right, j));
                if gridobs::grid::l1(a, b) > 12 {
                    continue;
                }
                let valid: Vec<LatticePath> = monotone_paths(a, b)
                    .into_iter()
                    .filter(|p| p[1..p.len() - 1].iter().all(|&q| sec.is_open(q)))
                    .collect();
                let env = sec.envelopes(i, j).map_err(err)?;
                let Some((upper, lower)) = env else {
                    check(valid.is_empty(), || format!("trial {trial} ({i},{j}): envelopes missing"))?;
                    continue;
                };
                check(valid.contains(&upper) && valid.contains(&lower), || {
                    format!("trial {trial} ({i},{j}): envelope is not a valid path")
                })?;
                for p in &valid {
                    for x in 0..=sec.right {
                        let (pl, ph) = column_span(p, x).unwrap();
                        let (ul, uh) = column_span(&upper, x).unwrap();
                        let (ll, lh) = column_span(&lower, x).unwrap();
                        check(ul >= pl && uh >= ph && ll <= pl && lh <= ph, || {
                            format!("trial {trial} ({i},{j}) column {x}: envelope not extremal")
                        })?;
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn criterion6() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut widest = 0;
    for trial in 0..200 {
        let rep = random_strip(&mut rng);
        let b = (0..rep.n()).map(|v| rep.vertices()[v][1]).max().unwrap() + 1;
        let b = b.max(rep.cells().iter().map(|p| p[1] + 1).max().unwrap_or(1));
        let out = compress_strip(&rep, b, rep.n()).map_err(|e| format!("trial {trial}: {e}"))?;
        let (before, after) = (visibility_graph(&rep), visibility_graph(&out));
        check(before.edges() == after.edges(), || format!("trial {trial}: visibility graph changed"))?;
        let width = out.bounds().or(out.extent()).map(|bb| bb.extent(0)).unwrap_or(0);
        let bound = STRIP_K * b.pow(3) * rep.n() as i64;
        check(width <= bound, || format!("trial {trial}: width {width} > {bound}"))?;
        worst = worst.max(width as f64 / (b.pow(3) as f64 * rep.n() as f64));
        widest = widest.max(rep.extent().unwrap().extent(0));
    }
    let sections = envelope_oracle(&mut rng)?;
    ok(format!(
        "200 strips (input width up to {widest}) preserved, max width/(b^3 n) = {worst:.2} <= K = {STRIP_K}; {sections} envelope pairs match enumeration"
    ))
}

fn criterion7(corpus: &Corpus) -> Result<String, String> {
    let mut crossings = 0;
    for (name, g, rep) in corpus {
        let r = crossing_c4_check(rep, g).map_err(|e| format!("{name}: {e}"))?;
        check(r.holds, || format!("{name}: violation {:?}", r.violation))?;
        crossings += r.crossing_pairs;
    }
    ok(format!("{} representations, {crossings} crossing witness pairs, all implied edges present", corpus.len()))
}

fn criterion8() -> Result<String, String> {
    let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    let cases = [("P3", p3, 5, 0), ("K3", complete(3), 5, 0), ("K3bar", Graph::empty(3), 5, 2), ("K4bar", Graph::empty(4), 7, 3)];
    let mut got = Vec::new();
    for (name, g, side, want) in cases {
        let r = obsnum_exact(&g, side, side, want + 1).map_err(err)?;
        check(r.value == Some(want), || format!("{name}: got {:?}, expected {want}", r.value))?;
        got.push(format!("{name}={want}"));
    }
    let (g, rep) = two_obstacle_example().map_err(err)?;
    check(verify(&rep, &g).map_err(err)?.matches, || "example does not verify".into())?;
    let comps = component_obstacles(&rep, 100).map_err(err)?.count;
    check(comps == 2, || format!("example has {comps} components"))?;
    ok(format!("{}; K4 minus an edge example has 2 obstacle components", got.join(" ")))
}

fn drawing(vertices: Vec<Point>, edges: Vec<(usize, usize)>, paths: Vec<Vec<(i64, i64)>>) -> GeodesicDrawing {
    let paths = paths.into_iter().map(|p| p.into_iter().map(|(x, y)| p2(x, y)).collect()).collect();
    GeodesicDrawing { vertices, edges, paths }
}

fn geodesic_corpus() -> Vec<GeodesicDrawing> {
    vec![
        drawing(vec![p2(-1, 0), p2(0, 0), p2(1, 0)], vec![(0, 1), (1, 2)], vec![vec![(-1, 0), (0, 0)], vec![(0, 0), (1, 0)]]),
        drawing(
            vec![p2(0, 0), p2(2, 0), p2(2, 2)],
            vec![(0, 1), (1, 2)],
            vec![vec![(0, 0), (1, 0), (2, 0)], vec![(2, 0), (2, 1), (2, 2)]],
        ),
        drawing(
            vec![p2(0, 0), p2(3, 1), p2(2, 4), p2(-1, 3)],
            vec![(0, 1), (1, 2), (2, 3), (0, 3)],
            vec![
                vec![(0, 0), (1, 0), (2, 0), (3, 0), (3, 1)],
                vec![(3, 1), (3, 2), (3, 3), (3, 4), (2, 4)],
                vec![(2, 4), (1, 4), (0, 4), (-1, 4), (-1, 3)],
                vec![(0, 0), (-1, 0), (-1, 1), (-1, 2), (-1, 3)],
            ],
        ),
        drawing(
            vec![p2(0, 0), p2(2, 1), p2(-2, -1), p2(1, -2)],
            vec![(0, 1), (0, 2), (0, 3)],
            vec![
                vec![(0, 0), (1, 0), (2, 0), (2, 1)],
                vec![(0, 0), (-1, 0), (-2, 0), (-2, -1)],
                vec![(0, 0), (0, -1), (0, -2), (1, -2)],
            ],
        ),
        drawing(
            vec![p2(-2, 0), p2(-1, 0), p2(0, 0), p2(1, 4)],
            vec![(0, 1), (1, 2), (2, 3), (0, 3)],
            vec![
                vec![(-2, 0), (-1, 0)],
                vec![(-1, 0), (0, 0)],
                vec![(0, 0), (1, 0), (1, 1), (1, 2), (1, 3), (1, 4)],
                vec![(-2, 0), (-2, 1), (-2, 2), (-2, 3), (-2, 4), (-1, 4), (0, 4), (1, 4)],
            ],
        ),
    ]
}

fn criterion9() -> Result<String, String> {
    let mut instances = 0;
    for n in [4usize, 6, 8, 10] {
        for k1 in 0..=n / 2 + 1 {
            let k2 = n / 2 + 1 - k1;
            let (g, o) = (gpse_points(n, k1, k2).map_err(err)?, oeps_points(n, k1, k2).map_err(err)?);
            let nn = n as i64;
            check(g.p0.len() == 2 * n - 1 && g.p0 == o.p0, || format!("n={n}: P0 size"))?;
            check(g.p0.iter().enumerate().all(|(j, &p)| p == [-(j as i64), 0]), || format!("n={n}: P0 coordinates"))?;
            for (j, (&a, &b)) in g.p1.iter().zip(&o.p1).enumerate() {
                let j = j as i64 + 1;
                check(a == [j, nn * j] && b == [2 * j, 2 * nn * j], || format!("n={n} k1={k1}: P1 entry {j}"))?;
            }
            for (j, (&a, &b)) in g.p2.iter().zip(&o.p2).enumerate() {
                let j = j as i64 + 1;
                check(a == [j, -nn * j] && b == [2 * j, -2 * nn * j], || format!("n={n} k2={k2}: P2 entry {j}"))?;
            }
            check(g.p1.len() == k1 && g.p2.len() == k2 && g.len() == 5 * n / 2 && o.len() == 5 * n / 2, || {
                format!("n={n}: total point count")
            })?;
            instances += 1;
        }
    }
    let corpus = geodesic_corpus();
    for (i, d) in corpus.iter().enumerate() {
        let rep = geodesic_to_rep(d).map_err(|e| format!("drawing {i}: {e}"))?;
        let g = d.graph().map_err(err)?;
        check(verify(&rep, &g).map_err(err)?.matches, || format!("drawing {i} does not verify"))?;
        check(d.paths.iter().all(|p| is_manhattan(p)), || format!("drawing {i} path not monotone"))?;
    }
    let (g, rep) = two_obstacle_example().map_err(err)?;
    let OepsAnswer::Yes(w) = oeps_decide(&g, rep.vertices(), OepsCaps::default()).map_err(err)? else {
        return Err("known-feasible 4-vertex instance not decided yes".into());
    };
    check(verify(&w, &g).map_err(err)?.matches, || "decider witness fails verification".into())?;
    let adj = oeps_decide(&Graph::empty(2), &[p2(0, 0), p2(1, 0)], OepsCaps::default()).map_err(err)?;
    check(adj == OepsAnswer::No, || format!("empty pair on adjacent points: {}", adj.label()))?;
    ok(format!("{instances} point-set instances, {} geodesic drawings round-trip, decider yes/no as expected", corpus.len()))
}

fn main() -> ExitCode {
    // numeric arguments select criteria; 7 checks whatever 1, 3 and 5 produced
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let want = |id: usize| only.is_empty() || only.contains(&id);
    let secs = Duration::from_secs;
    let mut corpus = Corpus::new();
    let mut results = Vec::new();
    let mut step = |id: usize, name: &str, budget: u64, f: &mut dyn FnMut() -> Result<String, String>| {
        if want(id) {
            results.push(run(id, name, secs(budget), f));
        }
    };
    step(1, "fixture table", 1, &mut || criterion1(&mut corpus));
    step(2, "visibility oracle", 30, &mut criterion2);
    step(3, "planar round-trip", 300, &mut || criterion3(&mut corpus));
    step(4, "paper-faithful bounds", 300, &mut criterion4);
    step(5, "3D construction", 300, &mut || criterion5(&mut corpus));
    step(6, "strip compression", 120, &mut criterion6);
    step(7, "crossing implies C4", 300, &mut || criterion7(&corpus));
    step(8, "exact obstacle number", 120, &mut criterion8);
    step(9, "reduction", 60, &mut criterion9);
    let failed: Vec<&Outcome> = results.iter().filter(|o| !o.pass).collect();
    println!("acceptance: {}/{} criteria passed", results.len() - failed.len(), results.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        for o in failed {
            eprintln!("failed: {}", o.detail);
        }
        ExitCode::FAILURE
    }
}
