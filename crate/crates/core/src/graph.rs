//! Adjacency multigraphs on the cycles of `Ω(f)`, spanning-tree counting,
//! star certificates and tree sampling.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::conjugacy::{pairs_from_coset, ConjugatePair};
use crate::cycles::{Cycle, CycleCtx};
use crate::error::{Error, Result};
use crate::exp::ExpInt;
use crate::gf2poly::{associated_irreducible, BinPoly};
use crate::zech::ZechTable;

/// Representatives kept per edge.
const MAX_REPS: usize = 8;

/// One undirected edge class between two cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeInfo {
    pub multiplicity: u64,
    /// Some conjugate pairs `(k, τ(k))` realizing the edge, preferred first;
    /// `k = None` stands for the zero state.
    pub reps: Vec<(Option<ExpInt>, ExpInt)>,
}

/// Multigraph on `[0], [u_0], ..., [u_{t-1}]` (vertex `v` is
/// [`Cycle::from_vertex`]`(v)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjSubgraph {
    t: u64,
    edges: BTreeMap<(usize, usize), EdgeInfo>,
}

impl AdjSubgraph {
    /// Graph on `t + 1` vertices with no edges.
    pub fn empty(t: u64) -> Self {
        AdjSubgraph {
            t,
            edges: BTreeMap::new(),
        }
    }

    /// Graph with only the `[0]`–`[u_0]` edge.
    pub fn with_zero_edge(t: u64) -> Self {
        let mut g = Self::empty(t);
        g.add_edge(Cycle::Zero, Cycle::U(0), 1, Some((None, BigUint::zero())));
        g
    }

    /// Builds a graph from explicit `(a, b, multiplicity)` triples.
    pub fn from_edges(t: u64, edges: &[(Cycle, Cycle, u64)]) -> Self {
        let mut g = Self::empty(t);
        for &(a, b, m) in edges {
            g.add_edge(a, b, m, None);
        }
        g
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn vertex_count(&self) -> usize {
        self.t as usize + 1
    }

    /// Adds `mult` parallel edges; loops are ignored.
    pub fn add_edge(&mut self, a: Cycle, b: Cycle, mult: u64, rep: Option<(Option<ExpInt>, ExpInt)>) {
        let (x, y) = (a.vertex(), b.vertex());
        if x == y || mult == 0 {
            return;
        }
        let key = (x.min(y), x.max(y));
        let e = self.edges.entry(key).or_insert(EdgeInfo {
            multiplicity: 0,
            reps: Vec::new(),
        });
        e.multiplicity += mult;
        if let Some(r) = rep {
            if e.reps.len() < MAX_REPS {
                e.reps.push(r);
            }
        }
    }

    pub fn multiplicity(&self, a: Cycle, b: Cycle) -> u64 {
        let (x, y) = (a.vertex(), b.vertex());
        self.edges.get(&(x.min(y), x.max(y))).map_or(0, |e| e.multiplicity)
    }

    /// Edge classes `((u, v), info)` with `u < v` as vertex indices.
    pub fn edges(&self) -> impl Iterator<Item = (&(usize, usize), &EdgeInfo)> {
        self.edges.iter()
    }

    pub fn edge(&self, u: usize, v: usize) -> Option<&EdgeInfo> {
        self.edges.get(&(u.min(v), u.max(v)))
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u64)>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (&(u, v), e) in &self.edges {
            adj[u].push((v, e.multiplicity));
            adj[v].push((u, e.multiplicity));
        }
        adj
    }

    /// Vertices not reachable from `[0]`.
    pub fn unreached(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        (0..self.vertex_count()).filter(|&v| !seen[v]).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.unreached().is_empty()
    }

    /// Laplacian `D - A` with multiplicities.
    pub fn laplacian(&self) -> Vec<Vec<BigInt>> {
        let n = self.vertex_count();
        let mut l = vec![vec![BigInt::zero(); n]; n];
        for (&(u, v), e) in &self.edges {
            let m = BigInt::from(e.multiplicity);
            l[u][u] += &m;
            l[v][v] += &m;
            l[u][v] -= &m;
            l[v][u] -= &m;
        }
        l
    }

    /// Neighbours of a vertex with multiplicities.
    pub fn neighbours(&self, v: usize) -> Vec<(usize, u64)> {
        self.adjacency().swap_remove(v)
    }

    /// DOT rendering; `simplified` drops multiplicity labels.
    pub fn to_dot(&self, simplified: bool) -> String {
        let mut out = String::from("graph adjacency {\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  v{v} [label=\"{}\"];", Cycle::from_vertex(v));
        }
        for (&(u, v), e) in &self.edges {
            if simplified {
                let _ = writeln!(out, "  v{u} -- v{v};");
            } else {
                let _ = writeln!(out, "  v{u} -- v{v} [label=\"{}\"];", e.multiplicity);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// DOT export of a graph.
pub fn export_dot(g: &AdjSubgraph, simplified: bool) -> String {
    g.to_dot(simplified)
}

/// Accumulates the conjugate pairs carried by the cosets of the given
/// exponents and of their images under `τ`, plus the `[0]`–`[u_0]` edge.
pub fn build_subgraph(ctx: &CycleCtx, cosets: &[ExpInt]) -> Result<AdjSubgraph> {
    let ring = ctx.ring();
    let mut leaders = BTreeSet::new();
    for j in cosets {
        let j = ring.reduce(j);
        if j.is_zero() {
            continue;
        }
        let tj = ctx.zech().get(&j).ok_or_else(|| Error::MissingEntry(j.to_string()))?;
        leaders.insert(ring.coset(&j).leader);
        leaders.insert(ring.coset(&tj).leader);
    }
    let mut g = AdjSubgraph::with_zero_edge(ctx.t());
    let t = BigUint::from(ctx.t());
    let mut candidates: BTreeMap<(usize, usize), Vec<(ExpInt, ExpInt)>> = BTreeMap::new();
    for leader in leaders {
        let tl = ctx
            .zech()
            .get(&leader)
            .ok_or_else(|| Error::MissingEntry(leader.to_string()))?;
        if pairs_from_coset(ctx, &leader)?.is_none() {
            continue;
        }
        // each unordered pair {x, τ(x)} counted once, from its smaller side
        for s in 0..ring.coset(&leader).size {
            let x = ring.rotl(&leader, s);
            let tx = ring.rotl(&tl, s);
            if x > tx {
                continue;
            }
            let a = Cycle::U((&x % &t).to_u64().unwrap());
            let b = Cycle::U((&tx % &t).to_u64().unwrap());
            g.add_edge(a, b, 1, None);
            let key = (a.vertex().min(b.vertex()), a.vertex().max(b.vertex()));
            let list = candidates.entry(key).or_default();
            list.push((x, tx));
            if list.len() > 4 * MAX_REPS {
                list.sort();
                list.truncate(MAX_REPS);
            }
        }
    }
    for (key, mut list) in candidates {
        list.sort();
        list.truncate(MAX_REPS);
        // heaviest tail first, then smallest exponent
        let mut scored: Vec<(usize, ExpInt, ExpInt)> = list
            .into_iter()
            .map(|(x, tx)| (ctx.exponent_to_state(&x).tail().count_ones(), x, tx))
            .collect();
        scored.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        if let Some(e) = g.edges.get_mut(&key) {
            e.reps = scored.into_iter().map(|(_, x, tx)| (Some(x), tx)).collect();
        }
    }
    Ok(g)
}

/// Adds the resolvable cosets in increasing leader order, doubling the
/// prefix until the graph is connected or `max_cosets` is reached. The last
/// graph is returned either way; check [`AdjSubgraph::unreached`].
pub fn grow_subgraph(ctx: &CycleCtx, max_cosets: usize) -> Result<AdjSubgraph> {
    let leaders: Vec<ExpInt> = ctx
        .zech()
        .entries()
        .into_iter()
        .map(|(k, _, _)| k)
        .filter(|k| !k.is_zero())
        .collect();
    let cap = leaders.len().min(max_cosets);
    let mut take = 1usize.min(cap);
    loop {
        let g = build_subgraph(ctx, &leaders[..take])?;
        if g.is_connected() || take >= cap {
            return Ok(g);
        }
        take = (take * 2).min(cap);
    }
}

/// The whole adjacency graph (every coset), for tables that fit in memory.
pub fn full_adjacency_graph(ctx: &CycleCtx) -> Result<AdjSubgraph> {
    let m = ctx
        .ring()
        .modulus_u64()
        .filter(|&m| m < 1 << 32)
        .ok_or_else(|| Error::Resource("field too large for the full graph".into()))?;
    let n = ctx.n() as u32;
    let leaders: Vec<ExpInt> = (1..m)
        .filter(|&k| crate::exp::coset_leader_u64(k, n).0 == k)
        .map(BigUint::from)
        .collect();
    build_subgraph(ctx, &leaders)
}

/// Exact spanning-tree count with its base-2 logarithm.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeCount {
    pub value: BigUint,
    pub log2: f64,
}

/// `log2` of a big integer (`-inf` for zero).
pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().unwrap().log2();
    }
    let shift = bits - 53;
    (x >> shift).to_f64().unwrap().log2() + shift as f64
}

/// Fraction-free (Bareiss) determinant.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Cofactor of the Laplacian after deleting row and column `skip`.
pub fn laplacian_cofactor(g: &AdjSubgraph, skip: usize) -> BigInt {
    let l = g.laplacian();
    let reduced: Vec<Vec<BigInt>> = l
        .into_iter()
        .enumerate()
        .filter(|(i, _)| *i != skip)
        .map(|(_, row)| {
            row.into_iter()
                .enumerate()
                .filter(|(j, _)| *j != skip)
                .map(|(_, v)| v)
                .collect()
        })
        .collect();
    bareiss_det(reduced)
}

/// Number of spanning trees (zero when disconnected).
pub fn count_spanning_trees(g: &AdjSubgraph) -> TreeCount {
    let det = laplacian_cofactor(g, 0);
    let value = det.to_biguint().unwrap_or_default();
    TreeCount {
        log2: log2_big(&value),
        value,
    }
}

/// A star or almost-star spanning-tree certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeCert {
    pub n: usize,
    pub p: BinPoly,
    pub t: u64,
    pub f: BinPoly,
    /// `0` for a star centered at `[u_0]`, `ℓ` for an almost-star at `[u_ℓ]`.
    pub center: u64,
    pub witness: Vec<u64>,
    pub cp: u64,
    pub dbseqs: BigUint,
}

impl TreeCert {
    pub fn log2(&self) -> f64 {
        log2_big(&self.dbseqs)
    }

    pub fn is_star(&self) -> bool {
        self.center == 0
    }

    /// The `t × t` matrix whose determinant is the tree count. Index `0`
    /// stands for `[u_0]` and index `r` for `[u_r]`.
    pub fn matrix(&self) -> Vec<Vec<BigInt>> {
        let t = self.t as usize;
        let cp = BigInt::from(self.cp);
        let mut m = vec![vec![BigInt::zero(); t]; t];
        let c = self.center as usize;
        if c == 0 {
            m[0][0] = &cp * (t as u64 - 1) + 1u32;
            for r in 1..t {
                m[r][r] = cp.clone();
                m[0][r] = -cp.clone();
                m[r][0] = -cp.clone();
            }
        } else {
            m[0][0] = &cp + 1u32;
            m[0][c] = -cp.clone();
            m[c][0] = -cp.clone();
            for r in 1..t {
                m[r][r] = cp.clone();
                m[c][r] = -cp.clone();
                m[r][c] = -cp.clone();
            }
            m[c][c] = &cp * (t as u64 - 1);
        }
        m
    }

    /// JSON record with `n, p, t, f, center, witness, cp, dbseqs, log2`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "p": self.p.to_text(),
            "t": self.t,
            "f": self.f.to_text(),
            "center": self.center,
            "witness": self.witness,
            "cp": self.cp,
            "dbseqs": self.dbseqs.to_string(),
            "log2": format!("{:.2}", self.log2()),
        })
    }
}

/// Determinant of the arrow matrix with center `c`: diagonal `d`, the
/// center row/column off-diagonal entries `o`, zeros elsewhere.
fn arrow_det(d: &[BigInt], o: &[BigInt], c: usize) -> BigInt {
    let prod: BigInt = d
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != c)
        .fold(BigInt::one(), |acc, (_, x)| acc * x);
    let mut det = &d[c] * &prod;
    for (i, oi) in o.iter().enumerate() {
        if i != c && !oi.is_zero() {
            det -= oi * oi * (&prod / &d[i]);
        }
    }
    det
}

/// Outcome of one Algorithm-1 run.
#[derive(Clone, Debug, PartialEq)]
pub enum CertOutcome {
    Certified(TreeCert),
    /// The `z` budget ran out before every cycle was covered.
    NotFound {
        t: u64,
        covered: usize,
    },
}

fn orbit_mod_t(l: u64, t: u64) -> Vec<u64> {
    let mut out = vec![l];
    let mut x = (2 * l as u128 % t as u128) as u64;
    while x != l {
        out.push(x);
        x = (2 * x as u128 % t as u128) as u64;
    }
    out
}

/// Star-certificate search for one `t` and center `ℓ` (`0` gives the star test).
///
/// Walks `i = (2k-1)t + ℓ`, `k = 1..=z`, adding the doubling orbit of
/// `L = τ(i) mod t` until every residue mod `t` is covered.
pub fn certify_center(p: &BinPoly, zech: &ZechTable, t: u64, center: u64, z: u64) -> Result<CertOutcome> {
    let n = p.deg();
    let m = zech.ring().modulus().clone();
    let tb = BigUint::from(t);
    if t < 2 || !(&m % &tb).is_zero() {
        return Err(Error::Domain(format!("{t} does not divide 2^{n}-1")));
    }
    if center >= t {
        return Err(Error::Domain(format!("center {center} out of range for t={t}")));
    }
    let assoc = associated_irreducible(p, &tb)?;
    if !assoc.valid {
        return Err(Error::Domain(format!("t={t} is not valid for this polynomial")));
    }
    let mut done = vec![false; t as usize];
    done[center as usize] = true;
    let mut covered = 1usize;
    let mut witness = Vec::new();
    for k in 1..=z {
        let i = BigUint::from(2 * k - 1) * &tb + center;
        if i >= m {
            break;
        }
        let tau = zech.get(&i).ok_or_else(|| Error::MissingEntry(i.to_string()))?;
        let l = (&tau % &tb).to_u64().unwrap();
        let orbit = orbit_mod_t(l, t);
        let leader = *orbit.iter().min().unwrap();
        if done[leader as usize] {
            continue;
        }
        witness.push(2 * k - 1);
        for &y in &orbit {
            if !done[y as usize] {
                done[y as usize] = true;
                covered += 1;
            }
        }
        if covered == t as usize {
            let cp = n as u64 / orbit.len() as u64;
            let mut cert = TreeCert {
                n,
                p: p.clone(),
                t,
                f: assoc.f,
                center,
                witness,
                cp,
                dbseqs: BigUint::zero(),
            };
            cert.dbseqs = cert_determinant(&cert);
            return Ok(CertOutcome::Certified(cert));
        }
    }
    Ok(CertOutcome::NotFound { t, covered })
}

/// `det(M̃)` of a certificate, via the arrow-matrix expansion.
pub fn cert_determinant(cert: &TreeCert) -> BigUint {
    let t = cert.t as usize;
    let c = cert.center as usize;
    let cp = BigInt::from(cert.cp);
    let mut d = vec![cp.clone(); t];
    let mut o = vec![-cp.clone(); t];
    if c == 0 {
        d[0] = &cp * (t as u64 - 1) + 1u32;
        o[0] = BigInt::zero();
    } else {
        d[0] = &cp + 1u32;
        d[c] = &cp * (t as u64 - 1);
        o[c] = BigInt::zero();
    }
    let det = arrow_det(&d, &o, c);
    match det.sign() {
        Sign::Minus => BigUint::zero(),
        _ => det.abs().to_biguint().unwrap(),
    }
}

/// Star certificates for every valid `3 ≤ t ≤ t_max`.
pub fn certify_star(p: &BinPoly, zech: &ZechTable, t_max: u64, z_max: u64) -> Result<Vec<CertOutcome>> {
    let m = zech.ring().modulus().clone();
    let mut out = Vec::new();
    for t in 3..=t_max {
        let tb = BigUint::from(t);
        if !(&m % &tb).is_zero() || !associated_irreducible(p, &tb)?.valid {
            continue;
        }
        out.push(certify_center(p, zech, t, 0, z_max)?);
    }
    Ok(out)
}

/// Almost-star certificate centered at `[u_ℓ]`.
pub fn certify_almost_star(p: &BinPoly, zech: &ZechTable, t: u64, l: u64, z: u64) -> Result<CertOutcome> {
    if l == 0 {
        return Err(Error::Domain("almost-star center must be in [1, t-1]".into()));
    }
    certify_center(p, zech, t, l, z)
}

/// First `ℓ = 1, 2, ...` admitting an almost-star certificate.
pub fn search_almost_star(p: &BinPoly, zech: &ZechTable, t: u64, z: u64) -> Result<Option<TreeCert>> {
    for l in 1..t {
        if let CertOutcome::Certified(c) = certify_almost_star(p, zech, t, l, z)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// A chosen edge of a spanning tree with the conjugate pair that joins it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub a: Cycle,
    pub b: Cycle,
    /// `(k, τ(k))`; `k = None` for the zero state.
    pub pair: Option<(Option<ExpInt>, ExpInt)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub vertices: usize,
    pub edges: Vec<TreeEdge>,
}

impl SpanningTree {
    /// Acyclic and connecting all vertices.
    pub fn is_valid(&self) -> bool {
        if self.edges.len() + 1 != self.vertices {
            return false;
        }
        let mut uf = UnionFind::new(self.vertices);
        self.edges.iter().all(|e| uf.union(e.a.vertex(), e.b.vertex()))
    }

    /// Resolves each edge into a full conjugate pair of states.
    pub fn conjugate_pairs(&self, ctx: &CycleCtx) -> Result<Vec<ConjugatePair>> {
        self.edges
            .iter()
            .map(|e| match &e.pair {
                Some((None, _)) => Ok(ConjugatePair::zero_pair(ctx)),
                Some((Some(k), _)) => ConjugatePair::from_exponent(ctx, k),
                None => Err(Error::Domain(format!("edge {}-{} has no conjugate pair", e.a, e.b))),
            })
            .collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// False when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Tree selection strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeMethod {
    /// Loop-erased random walks; uniform over spanning trees.
    Wilson,
    /// Union-find over shuffled edge classes.
    Kruskal,
    /// Breadth-first from `[0]` in vertex order; ignores the seed.
    Bfs,
}

fn pick_rep(info: &EdgeInfo) -> Option<(Option<ExpInt>, ExpInt)> {
    info.reps.first().cloned()
}

/// A spanning tree chosen deterministically from `seed`.
pub fn sample_spanning_tree(g: &AdjSubgraph, seed: u64, method: TreeMethod) -> Result<SpanningTree> {
    let unreached = g.unreached();
    if !unreached.is_empty() {
        return Err(Error::Disconnected(unreached));
    }
    let nv = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(nv - 1);
    let mk = |u: usize, v: usize| TreeEdge {
        a: Cycle::from_vertex(u),
        b: Cycle::from_vertex(v),
        pair: pick_rep(g.edge(u, v).expect("edge exists")),
    };
    match method {
        TreeMethod::Wilson => {
            let adj = g.adjacency();
            let mut in_tree = vec![false; nv];
            let mut next = vec![usize::MAX; nv];
            in_tree[0] = true;
            for start in 1..nv {
                let mut u = start;
                while !in_tree[u] {
                    let total: u64 = adj[u].iter().map(|x| x.1).sum();
                    let mut r = rng.gen_range(0..total);
                    let mut chosen = adj[u][0].0;
                    for &(v, m) in &adj[u] {
                        if r < m {
                            chosen = v;
                            break;
                        }
                        r -= m;
                    }
                    next[u] = chosen;
                    u = chosen;
                }
                let mut u = start;
                while !in_tree[u] {
                    in_tree[u] = true;
                    u = next[u];
                }
            }
            for v in 1..nv {
                edges.push(mk(v, next[v]));
            }
        }
        TreeMethod::Kruskal => {
            let mut keys: Vec<(usize, usize)> = g.edges.keys().copied().collect();
            keys.shuffle(&mut rng);
            let mut uf = UnionFind::new(nv);
            for (u, v) in keys {
                if uf.union(u, v) {
                    edges.push(mk(u, v));
                }
            }
        }
        TreeMethod::Bfs => {
            let mut adj = g.adjacency();
            for a in &mut adj {
                a.sort();
            }
            let mut seen = vec![false; nv];
            seen[0] = true;
            let mut queue = VecDeque::from([0usize]);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        edges.push(mk(u, v));
                        queue.push_back(v);
                    }
                }
            }
        }
    }
    Ok(SpanningTree { vertices: nv, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zech::zech_bruteforce;
    use std::sync::Arc;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn u(i: u64) -> Cycle {
        Cycle::U(i)
    }

    /// Counts spanning trees by trying every subset of parallel edges.
    fn brute_tree_count(nv: usize, edges: &[(usize, usize)]) -> u64 {
        let mut count = 0;
        let k = edges.len();
        for mask in 0u32..(1 << k) {
            if mask.count_ones() as usize + 1 != nv {
                continue;
            }
            let mut uf = UnionFind::new(nv);
            if (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .all(|i| uf.union(edges[i].0, edges[i].1))
            {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn small_counts() {
        let g = AdjSubgraph::with_zero_edge(1);
        assert_eq!(count_spanning_trees(&g).value, b(1));
        let tri = AdjSubgraph::from_edges(2, &[(Cycle::Zero, u(0), 1), (u(0), u(1), 1), (u(1), Cycle::Zero, 1)]);
        assert_eq!(count_spanning_trees(&tri).value, b(3));
        let split = AdjSubgraph::from_edges(2, &[(Cycle::Zero, u(0), 2)]);
        assert_eq!(count_spanning_trees(&split).value, b(0));
        assert_eq!(split.unreached(), vec![2]);
    }

    #[test]
    fn matrix_tree_against_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let nv = rng.gen_range(2..=6usize);
            let ne = rng.gen_range(1..=10usize);
            let mut list = Vec::new();
            let mut g = AdjSubgraph::empty(nv as u64 - 1);
            for _ in 0..ne {
                let a = rng.gen_range(0..nv);
                let bb = rng.gen_range(0..nv);
                if a == bb {
                    continue;
                }
                list.push((a, bb));
                g.add_edge(Cycle::from_vertex(a), Cycle::from_vertex(bb), 1, None);
            }
            let expect = brute_tree_count(nv, &list);
            assert_eq!(count_spanning_trees(&g).value, b(expect));
            for skip in 0..nv {
                assert_eq!(laplacian_cofactor(&g, skip), BigInt::from(expect));
            }
        }
    }

    #[test]
    fn log2_of_big_values() {
        assert!((log2_big(&b(1024)) - 10.0).abs() < 1e-12);
        let x = BigUint::from(60u32).pow(30);
        assert!((log2_big(&x) - 30.0 * 60f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn certificate_matrix_determinants() {
        for (t, c, cp) in [(5u64, 0u64, 3u64), (7, 2, 4), (6, 5, 1)] {
            let cert = TreeCert {
                n: 0,
                p: BinPoly::one(),
                t,
                f: BinPoly::one(),
                center: c,
                witness: vec![],
                cp,
                dbseqs: BigUint::zero(),
            };
            let det = bareiss_det(cert.matrix());
            assert_eq!(det, BigInt::from(cp).pow(t as u32 - 1));
            assert_eq!(BigInt::from(cert_determinant(&cert)), det);
        }
    }

    #[test]
    fn star_certificates_are_real_stars() {
        // every certified star must be present in the full graph
        let q: BinPoly = "n=10;{3}".parse().unwrap();
        let z = Arc::new(zech_bruteforce(&q).unwrap());
        for out in certify_star(&q, &z, 100, 2000).unwrap() {
            if let CertOutcome::Certified(cert) = out {
                let ctx = CycleCtx::new(&q, cert.t, z.clone()).unwrap();
                let g = full_adjacency_graph(&ctx).unwrap();
                for r in 1..cert.t {
                    assert!(g.multiplicity(u(0), u(r)) >= cert.cp, "t={} r={r}", cert.t);
                }
            }
        }
        let star31 = certify_center(&q, &z, 31, 0, 2000).unwrap();
        assert!(matches!(star31, CertOutcome::NotFound { .. }));
    }

    #[test]
    fn sampled_trees_are_valid() {
        let q: BinPoly = "n=10;{3}".parse().unwrap();
        let z = Arc::new(zech_bruteforce(&q).unwrap());
        let ctx = CycleCtx::new(&q, 31, z).unwrap();
        let g = full_adjacency_graph(&ctx).unwrap();
        for method in [TreeMethod::Wilson, TreeMethod::Kruskal, TreeMethod::Bfs] {
            for seed in 0..5 {
                let tree = sample_spanning_tree(&g, seed, method).unwrap();
                assert!(tree.is_valid());
                assert_eq!(tree.vertices, 32);
                for pair in tree.conjugate_pairs(&ctx).unwrap() {
                    assert_eq!(pair.left.state.tail(), pair.right.state.tail());
                    assert_ne!(pair.left.cycle, pair.right.cycle);
                }
            }
        }
        let a = sample_spanning_tree(&g, 3, TreeMethod::Wilson).unwrap();
        let b2 = sample_spanning_tree(&g, 3, TreeMethod::Wilson).unwrap();
        assert_eq!(a, b2);
        let two = AdjSubgraph::with_zero_edge(1);
        assert_eq!(
            sample_spanning_tree(&two, 1, TreeMethod::Wilson).unwrap().edges.len(),
            1
        );
        let broken = AdjSubgraph::with_zero_edge(3);
        assert!(matches!(
            sample_spanning_tree(&broken, 1, TreeMethod::Kruskal),
            Err(Error::Disconnected(_))
        ));
    }

    #[test]
    fn dot_output() {
        let g = AdjSubgraph::from_edges(1, &[(Cycle::Zero, u(0), 1), (u(0), u(1), 7)]);
        let dot = export_dot(&g, false);
        assert!(dot.starts_with("graph adjacency {"));
        assert!(dot.contains("v1 -- v2 [label=\"7\"];"));
        assert!(export_dot(&g, true).contains("v1 -- v2;"));
        assert!(dot.trim_end().ends_with('}'));
    }
}
