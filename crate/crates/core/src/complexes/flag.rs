//! Flag (clique) complexes on an ordered vertex list.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::Serialize;

/// A root position in the extended Steinberg numbering; `ρ_{-k} = ρ_{nh-k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ExtIndex(pub i64);

impl fmt::Display for ExtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Strictly increasing vertex list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Simplex {
    pub vertices: Vec<ExtIndex>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<ExtIndex>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex { vertices }
    }

    pub fn from_indices(ix: &[i64]) -> Self {
        Simplex::new(ix.iter().map(|&i| ExtIndex(i)).collect())
    }

    pub fn dimension(&self) -> isize {
        self.vertices.len() as isize - 1
    }

    pub fn indices(&self) -> Vec<i64> {
        self.vertices.iter().map(|v| v.0).collect()
    }
}

/// Vertices plus a symmetric edge relation; simplices are the cliques.
#[derive(Debug, Clone)]
pub struct FlagComplex {
    vertices: Vec<ExtIndex>,
    adj: Vec<FixedBitSet>,
    position: HashMap<ExtIndex, usize>,
    facets: OnceLock<Vec<Vec<usize>>>,
}

impl FlagComplex {
    /// `edge(a, b)` is queried once for each pair of positions `a < b`.
    pub fn from_edge_fn(vertices: Vec<ExtIndex>, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let n = vertices.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for b in a + 1..n {
                if edge(a, b) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        Self::from_adjacency(vertices, adj)
    }

    fn from_adjacency(vertices: Vec<ExtIndex>, adj: Vec<FixedBitSet>) -> Self {
        let position = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        FlagComplex {
            vertices,
            adj,
            position,
            facets: OnceLock::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[ExtIndex] {
        &self.vertices
    }

    pub fn position(&self, v: ExtIndex) -> Option<usize> {
        self.position.get(&v).copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn joined(&self, u: ExtIndex, v: ExtIndex) -> bool {
        match (self.position(u), self.position(v)) {
            (Some(a), Some(b)) => self.has_edge(a, b),
            _ => false,
        }
    }

    /// Edges as pairs of vertex labels, lexicographically ordered.
    pub fn edges(&self) -> Vec<(ExtIndex, ExtIndex)> {
        let mut out = Vec::new();
        for a in 0..self.vertices.len() {
            for b in self.adj[a].ones().filter(|&b| b > a) {
                out.push((self.vertices[a], self.vertices[b]));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.count_ones(..)).sum::<usize>() / 2
    }

    /// The subcomplex induced on the given vertices (absent labels are ignored).
    pub fn induced(&self, keep: &[ExtIndex]) -> FlagComplex {
        let mut pos: Vec<usize> = keep.iter().filter_map(|v| self.position(*v)).collect();
        pos.sort_unstable();
        pos.dedup();
        let vertices = pos.iter().map(|&p| self.vertices[p]).collect();
        FlagComplex::from_edge_fn(vertices, |a, b| self.has_edge(pos[a], pos[b]))
    }

    pub fn is_simplex(&self, s: &Simplex) -> bool {
        let Some(pos) = s.vertices.iter().map(|v| self.position(*v)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        pos.iter()
            .enumerate()
            .all(|(i, &a)| pos[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// Maximal cliques, each sorted, listed lexicographically by position.
    pub fn facet_positions(&self) -> &[Vec<usize>] {
        self.facets.get_or_init(|| {
            let n = self.vertices.len();
            let mut out = Vec::new();
            let mut p = FixedBitSet::with_capacity(n);
            p.insert_range(..);
            bron_kerbosch(&self.adj, &mut Vec::new(), p, FixedBitSet::with_capacity(n), &mut out);
            for f in out.iter_mut() {
                f.sort_unstable();
            }
            out.sort();
            out
        })
    }

    pub fn facets(&self) -> Vec<Simplex> {
        self.facet_positions().iter().map(|f| self.simplex_of(f)).collect()
    }

    pub fn facet_count(&self) -> usize {
        self.facet_positions().len()
    }

    /// Dimension of the largest simplex; `-1` when there are no vertices.
    pub fn dimension(&self) -> isize {
        self.facet_positions().iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    /// The lexicographically first simplex of maximal dimension.
    pub fn first_top_simplex(&self) -> Option<Simplex> {
        let top = self.facet_positions().iter().map(Vec::len).max()?;
        self.facet_positions()
            .iter()
            .find(|f| f.len() == top)
            .map(|f| self.simplex_of(f))
    }

    /// Lexicographically first clique of maximum size among the given positions.
    pub fn lex_first_max_clique(&self, within: &FixedBitSet) -> Vec<usize> {
        let mut best = Vec::new();
        let mut cur = Vec::new();
        self.clique_dfs(within.clone(), &mut cur, &mut best);
        best
    }

    // Extends `cur` by increasing positions, so cliques are met in lexicographic
    // order and the first one of each size wins.
    fn clique_dfs(&self, cand: FixedBitSet, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        let mut remaining = cand.count_ones(..);
        for v in cand.ones() {
            if cur.len() + remaining <= best.len() {
                return;
            }
            remaining -= 1;
            let mut next = cand.clone();
            next.intersect_with(&self.adj[v]);
            next.set_range(..v + 1, false);
            cur.push(v);
            self.clique_dfs(next, cur, best);
            cur.pop();
        }
    }

    /// Every top-dimensional simplex.
    pub fn top_simplices(&self) -> Vec<Simplex> {
        let top = self.facet_positions().iter().map(Vec::len).max().unwrap_or(0);
        self.facet_positions()
            .iter()
            .filter(|f| f.len() == top)
            .map(|f| self.simplex_of(f))
            .collect()
    }

    /// Number of nonempty faces of each dimension, `f[d]` for `d`-faces.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        let n = self.vertices.len();
        let mut stack: Vec<(usize, FixedBitSet)> = Vec::new();
        for v in 0..n {
            let mut cand = self.adj[v].clone();
            cand.set_range(..v + 1, false);
            stack.push((1, cand));
        }
        while let Some((size, cand)) = stack.pop() {
            if f.len() < size {
                f.resize(size, 0);
            }
            f[size - 1] += 1;
            for w in cand.ones() {
                let mut next = cand.clone();
                next.intersect_with(&self.adj[w]);
                next.set_range(..w + 1, false);
                stack.push((size + 1, next));
            }
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn simplex_of(&self, positions: &[usize]) -> Simplex {
        Simplex::new(positions.iter().map(|&p| self.vertices[p]).collect())
    }
}

fn bron_kerbosch(
    adj: &[FixedBitSet],
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_clear() {
        if x.is_clear() {
            out.push(r.clone());
        }
        return;
    }
    // pivot with the most neighbours in P
    let pivot = p
        .union(&x)
        .max_by_key(|&u| (adj[u].intersection(&p).count(), std::cmp::Reverse(u)))
        .expect("P is nonempty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).collect();
    for v in candidates {
        r.push(v);
        let mut np = p.clone();
        np.intersect_with(&adj[v]);
        let mut nx = x.clone();
        nx.intersect_with(&adj[v]);
        bron_kerbosch(adj, r, np, nx, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// Outcome of the sphere checks on a pure flag complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereReport {
    pub rank: usize,
    pub facets: usize,
    pub pure: bool,
    pub pseudomanifold: bool,
    pub connected: bool,
    pub euler_characteristic: i64,
    pub expected_euler_characteristic: i64,
    pub witness: Option<String>,
}

impl SphereReport {
    pub fn passed(&self) -> bool {
        self.pure
            && self.pseudomanifold
            && self.connected
            && self.euler_characteristic == self.expected_euler_characteristic
    }
}

/// Checks purity, the pseudomanifold property, facet connectivity and `χ = 1 + (-1)^{n-1}`.
pub fn sphere_check(c: &FlagComplex, n: usize) -> SphereReport {
    let facets = c.facet_positions();
    let mut witness = None;
    let pure = match facets.iter().find(|f| f.len() != n) {
        Some(f) => {
            witness = Some(format!("facet {:?} has {} vertices", c.simplex_of(f).indices(), f.len()));
            false
        }
        None => !facets.is_empty(),
    };

    let mut ridges: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (fi, f) in facets.iter().enumerate() {
        for skip in 0..f.len() {
            let ridge: Vec<usize> = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            ridges.entry(ridge).or_default().push(fi);
        }
    }
    let mut bad: Vec<(&Vec<usize>, usize)> = ridges
        .iter()
        .filter(|(_, fs)| fs.len() != 2)
        .map(|(r, fs)| (r, fs.len()))
        .collect();
    bad.sort();
    let pseudomanifold = bad.is_empty();
    if let (None, Some((r, k))) = (&witness, bad.first()) {
        witness = Some(format!("ridge {:?} lies in {k} facets", c.simplex_of(r).indices()));
    }

    let mut parent: Vec<usize> = (0..facets.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut i = i;
        while p[i] != r {
            let next = p[i];
            p[i] = r;
            i = next;
        }
        r
    }
    for fs in ridges.values() {
        for w in fs.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let roots = (0..facets.len()).filter(|&i| find(&mut parent, i) == i).count();
    let connected = roots == 1;
    if !connected && witness.is_none() {
        witness = Some(format!("facet-adjacency graph has {roots} components"));
    }

    let chi = c.euler_characteristic();
    let expected = 1 + if n % 2 == 1 { 1 } else { -1 };
    if chi != expected && witness.is_none() {
        witness = Some(format!("Euler characteristic {chi}, expected {expected}"));
    }
    SphereReport {
        rank: n,
        facets: facets.len(),
        pure,
        pseudomanifold,
        connected,
        euler_characteristic: chi,
        expected_euler_characteristic: expected,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: i64) -> Vec<ExtIndex> {
        (1..=n).map(ExtIndex).collect()
    }

    #[test]
    fn cycle_is_a_circle() {
        let c = FlagComplex::from_edge_fn(labels(5), |a, b| b == a + 1 || (a == 0 && b == 4));
        assert_eq!(c.facet_count(), 5);
        assert_eq!(c.euler_characteristic(), 0);
        assert!(sphere_check(&c, 2).passed());
    }

    #[test]
    fn cross_polytope_boundary() {
        // ±e_1, ±e_2, ±e_3 with antipodes at positions (i, i + 3)
        let c = FlagComplex::from_edge_fn(labels(6), |a, b| b != a + 3);
        assert_eq!(c.f_vector(), vec![6, 12, 8]);
        let r = sphere_check(&c, 3);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn disk_is_not_a_sphere() {
        // a single triangle
        let c = FlagComplex::from_edge_fn(labels(3), |_, _| true);
        let r = sphere_check(&c, 3);
        assert!(!r.pseudomanifold);
        assert!(r.witness.is_some());
        assert_eq!(c.first_top_simplex(), Some(Simplex::from_indices(&[1, 2, 3])));
    }

    #[test]
    fn two_points_form_the_zero_sphere() {
        let c = FlagComplex::from_edge_fn(labels(2), |_, _| false);
        assert!(sphere_check(&c, 1).passed());
    }

    #[test]
    fn clique_search_matches_facet_scan() {
        let edges = [(0, 1), (1, 2), (1, 3), (1, 4), (3, 4), (0, 2), (2, 5), (4, 5)];
        let c = FlagComplex::from_edge_fn(labels(6), |a, b| edges.contains(&(a, b)));
        for mask in 1u32..64 {
            let keep: Vec<ExtIndex> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| ExtIndex(i + 1)).collect();
            let mut within = FixedBitSet::with_capacity(6);
            keep.iter().for_each(|v| within.insert(v.0 as usize - 1));
            let fast = c.simplex_of(&c.lex_first_max_clique(&within));
            assert_eq!(Some(fast), c.induced(&keep).first_top_simplex(), "mask {mask}");
        }
    }

    #[test]
    fn lexicographic_first_top_simplex() {
        // path 1-2-3 plus triangle 2-4-5: the only 2-simplex is {2,4,5}
        let edges = [(0, 1), (1, 2), (1, 3), (1, 4), (3, 4)];
        let c = FlagComplex::from_edge_fn(labels(5), |a, b| edges.contains(&(a, b)));
        assert_eq!(c.first_top_simplex(), Some(Simplex::from_indices(&[2, 4, 5])));
        assert_eq!(c.dimension(), 2);
        let sub = c.induced(&[ExtIndex(1), ExtIndex(2), ExtIndex(3)]);
        assert_eq!(sub.first_top_simplex(), Some(Simplex::from_indices(&[1, 2])));
    }
}
