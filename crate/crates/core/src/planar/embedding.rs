//! Straight-line grid drawing of planar graphs.
//!
//! Planarity test and combinatorial embedding (path-addition over biconnected
//! blocks), triangulation by corner chords, canonical ordering, Schnyder
//! realizer, and vertex-count barycentric coordinates on the (n-2) x (n-2) grid.

use crate::error::{Error, Result};
use crate::grid::Graph;

/// Cyclic neighbour orders; faces lie to the left of darts, and the dart after
/// `u -> v` is `v -> pred_v(u)`.
#[derive(Debug, Clone)]
pub(crate) struct Rotation {
    pub rot: Vec<Vec<usize>>,
}

impl Rotation {
    fn pos(&self, v: usize, w: usize) -> usize {
        self.rot[v].iter().position(|&x| x == w).expect("neighbour present")
    }

    fn pred(&self, v: usize, w: usize) -> usize {
        let r = &self.rot[v];
        r[(self.pos(v, w) + r.len() - 1) % r.len()]
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rot[u].contains(&v)
    }

    fn edge_count(&self) -> usize {
        self.rot.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Boundary walks of every face, as vertex sequences.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.rot.len();
        let mut used: Vec<Vec<bool>> = self.rot.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for u in 0..n {
            for i in 0..self.rot[u].len() {
                if used[u][i] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, self.rot[u][i]);
                loop {
                    let j = self.pos(a, b);
                    if used[a][j] {
                        break;
                    }
                    used[a][j] = true;
                    face.push(a);
                    let c = self.pred(b, a);
                    a = b;
                    b = c;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Adds chord `x - y` across the face corner `x -> m -> y`.
    fn add_chord(&mut self, x: usize, m: usize, y: usize) {
        let i = self.pos(x, m);
        self.rot[x].insert(i + 1, y);
        let j = self.pos(y, m);
        self.rot[y].insert(j, x);
    }
}

/// Blocks (biconnected components) of a connected graph as edge lists.
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct St<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(st: &mut St, u: usize, parent: Option<usize>) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for &w in st.g.neighbors(u) {
            if st.disc[w] == 0 {
                st.stack.push((u, w));
                dfs(st, w, Some(u));
                st.low[u] = st.low[u].min(st.low[w]);
                if st.low[w] >= st.disc[u] {
                    let mut blk = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        blk.push(e);
                        if e == (u, w) {
                            break;
                        }
                    }
                    st.out.push(blk);
                }
            } else if Some(w) != parent && st.disc[w] < st.disc[u] {
                st.stack.push((u, w));
                st.low[u] = st.low[u].min(st.disc[w]);
            }
        }
    }
    let n = g.n();
    let mut st = St { g, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    if n > 0 {
        dfs(&mut st, 0, None);
    }
    st.out
}

/// Oriented faces of a planar embedding of a biconnected graph on `0..k`, or `NotPlanar`.
fn embed_biconnected(k: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); k];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let cycle = find_cycle(&adj);
    let mut in_h = vec![false; k];
    let mut h_edge = std::collections::HashSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        h_edge.insert((a.min(b), a.max(b)));
    }
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];
    while h_edge.len() < edges.len() {
        let frags = fragments(&adj, &in_h, &h_edge);
        let mut choice = None;
        for (fi, f) in frags.iter().enumerate() {
            let admissible: Vec<usize> =
                (0..faces.len()).filter(|&j| f.contacts.iter().all(|c| faces[j].contains(c))).collect();
            match admissible.len() {
                0 => return Err(Error::NotPlanar),
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("fragment exists while edges remain");
        let path = fragment_path(&adj, &in_h, &frags[fi]);
        for w in path.windows(2) {
            h_edge.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &p in &path {
            in_h[p] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    Ok(faces)
}

fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let k = adj.len();
    let mut parent = vec![usize::MAX; k];
    let mut depth = vec![usize::MAX; k];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some(&mut (u, ref mut i)) = stack.last_mut() {
        if *i == adj[u].len() {
            stack.pop();
            continue;
        }
        let w = adj[u][*i];
        *i += 1;
        if depth[w] == usize::MAX {
            depth[w] = depth[u] + 1;
            parent[w] = u;
            stack.push((w, 0));
        } else if w != parent[u] && depth[w] < depth[u] {
            let mut cyc = vec![u];
            let mut x = u;
            while x != w {
                x = parent[x];
                cyc.push(x);
            }
            return cyc;
        }
    }
    unreachable!("biconnected block with three or more vertices has a cycle")
}

struct Fragment {
    contacts: Vec<usize>,
    /// Unembedded vertices; empty for a single chord edge.
    inner: Vec<usize>,
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], h_edge: &std::collections::HashSet<(usize, usize)>) -> Vec<Fragment> {
    let k = adj.len();
    let mut out = Vec::new();
    for u in 0..k {
        for &v in &adj[u] {
            if u < v && in_h[u] && in_h[v] && !h_edge.contains(&(u, v)) {
                out.push(Fragment { contacts: vec![u, v], inner: Vec::new() });
            }
        }
    }
    let mut seen = vec![false; k];
    for s in 0..k {
        if in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut inner = vec![s];
        let mut contacts = Vec::new();
        let mut i = 0;
        while i < inner.len() {
            for &w in &adj[inner[i]] {
                if in_h[w] {
                    if !contacts.contains(&w) {
                        contacts.push(w);
                    }
                } else if !seen[w] {
                    seen[w] = true;
                    inner.push(w);
                }
            }
            i += 1;
        }
        contacts.sort_unstable();
        out.push(Fragment { contacts, inner });
    }
    out
}

/// A path through the fragment joining two distinct contact vertices.
fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], f: &Fragment) -> Vec<usize> {
    if f.inner.is_empty() {
        return f.contacts.clone();
    }
    let c1 = f.contacts[0];
    let start = *adj[c1].iter().find(|w| f.inner.contains(w)).expect("contact touches fragment");
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::from([start]);
    prev[start] = start;
    while let Some(x) = queue.pop_front() {
        if let Some(&c2) = adj[x].iter().find(|&&w| in_h[w] && w != c1) {
            let mut path = vec![c2, x];
            let mut y = x;
            while y != start {
                y = prev[y];
                path.push(y);
            }
            path.push(c1);
            path.reverse();
            return path;
        }
        for &w in &adj[x] {
            if !in_h[w] && prev[w] == usize::MAX {
                prev[w] = x;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a biconnected graph have two contacts")
}

fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let (a, b) = (path[0], *path.last().expect("path"));
    let i = face.iter().position(|&x| x == a).expect("contact on face");
    let j = face.iter().position(|&x| x == b).expect("contact on face");
    let inner = &path[1..path.len() - 1];
    let walk = |from: usize, to: usize| {
        let mut out = vec![face[from]];
        let mut t = from;
        while t != to {
            t = (t + 1) % k;
            out.push(face[t]);
        }
        out
    };
    let mut f1 = walk(i, j);
    f1.extend(inner.iter().rev());
    let mut f2 = walk(j, i);
    f2.extend(inner.iter());
    (f1, f2)
}

/// Combinatorial planar embedding of a connected graph.
pub(crate) fn planar_rotation(g: &Graph) -> Result<Rotation> {
    let n = g.n();
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for blk in blocks(g) {
        let mut verts: Vec<usize> = blk.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        if verts.len() == 2 {
            rot[verts[0]].push(verts[1]);
            rot[verts[1]].push(verts[0]);
            continue;
        }
        let local = |x: usize| verts.binary_search(&x).expect("block vertex");
        let ledges: Vec<(usize, usize)> = blk.iter().map(|&(u, v)| (local(u), local(v))).collect();
        if ledges.len() > 3 * verts.len() - 6 {
            return Err(Error::NotPlanar);
        }
        let faces = embed_biconnected(verts.len(), &ledges)?;
        // succ[y][z] = x for each face corner x -> y -> z
        let mut succ: Vec<std::collections::HashMap<usize, usize>> = vec![Default::default(); verts.len()];
        for f in &faces {
            let l = f.len();
            for t in 0..l {
                let (x, y, z) = (f[t], f[(t + 1) % l], f[(t + 2) % l]);
                succ[y].insert(z, x);
            }
        }
        for (y, s) in succ.iter().enumerate() {
            let first = *s.keys().min().expect("vertex has neighbours");
            let mut order = vec![first];
            let mut cur = s[&first];
            while cur != first {
                order.push(cur);
                cur = s[&cur];
            }
            rot[verts[y]].extend(order.into_iter().map(|w| verts[w]));
        }
    }
    let r = Rotation { rot };
    if n >= 1 && r.faces().len() + n != r.edge_count() + 2 && r.edge_count() > 0 {
        return Err(Error::Construction("embedding fails the Euler check".into()));
    }
    Ok(r)
}

/// Adds corner chords until every face is a triangle. Requires a connected graph with n >= 3.
pub(crate) fn triangulate(r: &mut Rotation) {
    loop {
        let faces = r.faces();
        let Some(face) = faces.into_iter().find(|f| f.len() > 3) else {
            return;
        };
        let k = face.len();
        let corner = (0..k).find(|&i| {
            let (x, y) = (face[i], face[(i + 2) % k]);
            x != y && !r.adjacent(x, y)
        });
        let i = corner.expect("a face longer than three has a free corner chord");
        r.add_chord(face[i], face[(i + 1) % k], face[(i + 2) % k]);
    }
}

/// Integer grid coordinates in `[0, n-2]^2` for a triangulated rotation system.
pub(crate) fn schnyder_coordinates(r: &Rotation) -> Vec<(i64, i64)> {
    let n = r.rot.len();
    if n == 3 {
        return vec![(1, 1), (0, 1), (1, 0)];
    }
    let v1 = 0;
    let v2 = r.rot[0][0];
    let vn = r.pred(v2, v1);
    let none = usize::MAX;
    let mut parent = [vec![none; n], vec![none; n], vec![none; n]];
    let mut removed = vec![false; n];
    let mut on_path = vec![false; n];
    let mut path = vec![v1, vn, v2];
    for &p in &path {
        on_path[p] = true;
    }
    for _ in 0..n - 2 {
        let idx = (1..path.len() - 1)
            .find(|&i| {
                let w = path[i];
                r.rot[w].iter().all(|&x| !on_path[x] || x == path[i - 1] || x == path[i + 1])
            })
            .expect("canonical ordering candidate exists");
        let (p, w, s) = (path[idx - 1], path[idx], path[idx + 1]);
        let rw = &r.rot[w];
        let d = rw.len();
        let (ip, is) = (r.pos(w, p), r.pos(w, s));
        let ccw: Vec<usize> = (1..d).map(|t| rw[(ip + t) % d]).take_while(|&x| x != s).collect();
        let cw: Vec<usize> = (1..d).map(|t| rw[(ip + d - t) % d]).take_while(|&x| x != s).collect();
        debug_assert!(is < d);
        let ok = |l: &Vec<usize>| l.iter().all(|&x| !removed[x] && !on_path[x]);
        let inner = match (ok(&ccw), ok(&cw)) {
            (true, true) => {
                if ccw.is_empty() {
                    cw
                } else {
                    ccw
                }
            }
            (true, false) => ccw,
            (false, true) => cw,
            (false, false) => unreachable!("one side of a removable vertex is interior"),
        };
        parent[0][w] = p;
        parent[1][w] = s;
        for &u in &inner {
            parent[2][u] = w;
            on_path[u] = true;
        }
        removed[w] = true;
        on_path[w] = false;
        path.splice(idx..=idx, inner);
    }
    let roots = [v1, v2, vn];
    let mut size = [vec![1usize; n], vec![1usize; n], vec![1usize; n]];
    for i in 0..3 {
        // accumulate subtree sizes bottom-up along parent chains
        let depth = |v: usize| {
            let mut d = 0;
            let mut x = v;
            while parent[i][x] != none {
                x = parent[i][x];
                d += 1;
            }
            d
        };
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(depth(v)));
        for v in order {
            let p = parent[i][v];
            if p != none {
                size[i][p] += size[i][v];
            }
        }
    }
    let chain = |i: usize, v: usize| {
        let mut out = vec![v];
        let mut x = v;
        while parent[i][x] != none {
            x = parent[i][x];
            out.push(x);
        }
        out
    };
    let mut coords = vec![(0i64, 0i64); n];
    let m = (n - 2) as i64;
    coords[v1] = (m, 1);
    coords[v2] = (0, m);
    coords[vn] = (1, 0);
    for v in 0..n {
        if roots.contains(&v) {
            continue;
        }
        let mut c = [0i64; 3];
        for (i, ci) in c.iter_mut().enumerate() {
            let (next, prev) = ((i + 1) % 3, (i + 2) % 3);
            let pn = chain(next, v);
            let pp = chain(prev, v);
            let region: usize =
                pn.iter().map(|&x| size[i][x]).sum::<usize>() + pp.iter().map(|&x| size[i][x]).sum::<usize>() - size[i][v];
            *ci = region as i64 - pp.len() as i64;
        }
        debug_assert_eq!(c.iter().sum::<i64>(), n as i64 - 1);
        coords[v] = (c[0], c[1]);
    }
    coords
}

/// Drawing of `g` (n >= 3) on integer points of `[0, n-2]^2`, before chord removal.
pub(crate) fn grid_drawing(g: &Graph) -> Result<Vec<(i64, i64)>> {
    let n = g.n();
    if n < 3 {
        return Err(Error::Precondition("straight-line embedding needs n >= 3".into()));
    }
    if g.m() > 3 * n - 6 {
        return Err(Error::NotPlanar);
    }
    let comps = g.components();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    for w in comps.windows(2) {
        edges.push((w[0][0], w[1][0]));
    }
    let connected = Graph::from_edges_dedup(n, edges)?;
    let mut rot = planar_rotation(&connected)?;
    triangulate(&mut rot);
    Ok(schnyder_coordinates(&rot))
}
