//! Group elements, reflection length, the absolute order and the interval `[I, γ]`.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootsystem::{RootSystem, RootVector};
use crate::scalar::{FieldElement, NumberField};
use crate::FieldMatrix;

/// An orthogonal transformation written in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    m: FieldMatrix,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement{:?}", self.m)
    }
}

impl GroupElement {
    pub fn identity(field: &Arc<NumberField>, n: usize) -> Self {
        GroupElement {
            m: Matrix::identity(n, &FieldElement::zero(field)),
        }
    }

    /// Wraps a matrix after checking `MᵀBM = B`.
    pub fn from_matrix(m: FieldMatrix, gram: &FieldMatrix) -> Result<Self> {
        if m.rows() != gram.rows() || !m.is_square() {
            return Err(Error::Dimension {
                expected: gram.rows(),
                found: m.rows(),
            });
        }
        let g = GroupElement { m };
        if !g.preserves_form(gram) {
            return Err(Error::Internal("matrix does not preserve the Gram form".into()));
        }
        Ok(g)
    }

    /// `x ↦ x - 2(v·x)v`; `v` must be a unit vector.
    pub fn reflection(gram: &FieldMatrix, v: &RootVector) -> Result<Self> {
        let n = v.dim();
        let bv = gram.mul_vec(&v.0);
        let norm = crate::linalg::dot(&v.0, &bv);
        if !norm.is_one() {
            return Err(Error::NotUnit);
        }
        let field = norm.field().clone();
        let two = FieldElement::from_integer(&field, 2);
        let mut m = Matrix::identity(n, &FieldElement::zero(&field));
        for a in 0..n {
            if v.0[a].is_zero() {
                continue;
            }
            let ta = &two * &v.0[a];
            for (b, bvb) in bv.iter().enumerate() {
                let e = m.get(a, b) - &(&ta * bvb);
                m.set(a, b, e);
            }
        }
        Ok(GroupElement { m })
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.m
    }

    pub fn rank(&self) -> usize {
        self.m.rows()
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            m: self.m.mul(&other.m),
        }
    }

    pub fn apply(&self, v: &RootVector) -> RootVector {
        RootVector(self.m.mul_vec(&v.0))
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    /// `B⁻¹ Mᵀ B`, the inverse of a form-preserving map.
    pub fn inverse(&self, gram: &FieldMatrix, gram_inv: &FieldMatrix) -> GroupElement {
        GroupElement {
            m: gram_inv.mul(&self.m.transpose()).mul(gram),
        }
    }

    pub fn preserves_form(&self, gram: &FieldMatrix) -> bool {
        self.m.transpose().mul(gram).mul(&self.m) == *gram
    }

    /// `rank(M - I)`, which is `dim M(w)`.
    pub fn reflection_length(&self) -> usize {
        self.m.minus_identity().rank()
    }

    /// Entrywise comparison of canonical coefficient vectors.
    pub fn canonical_cmp(&self, other: &GroupElement) -> Ordering {
        self.m
            .entries()
            .iter()
            .zip(other.m.entries())
            .map(|(a, b)| a.canonical_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl RootSystem {
    pub fn inverse(&self, w: &GroupElement) -> GroupElement {
        w.inverse(self.gram(), self.gram_inverse())
    }

    pub fn reflection(&self, v: &RootVector) -> Result<GroupElement> {
        GroupElement::reflection(self.gram(), v)
    }

    pub fn reflection_length(&self, w: &GroupElement) -> usize {
        w.reflection_length()
    }

    /// `u ≤ w` iff `l(w) = l(u) + l(u⁻¹w)`.
    pub fn leq(&self, u: &GroupElement, w: &GroupElement) -> bool {
        let lu = u.reflection_length();
        let lw = w.reflection_length();
        lu <= lw && lw == lu + self.inverse(u).compose(w).reflection_length()
    }

    pub fn below_gamma(&self, w: &GroupElement) -> bool {
        self.leq(w, self.gamma())
    }

    /// Steinberg indices `i ≤ nh/2` with `R(ρ_i) ≤ σ`.
    pub fn reflection_set(&self, sigma: &GroupElement) -> Result<Vec<usize>> {
        if !self.below_gamma(sigma) {
            return Err(Error::NotBelowGamma(self.length_report(sigma)));
        }
        let ls = sigma.reflection_length();
        Ok((1..=self.positive_count())
            .filter(|&i| {
                // R ≤ σ iff l(Rσ) = l(σ) - 1, and R = R⁻¹
                ls > 0 && self.reflection_of(i).compose(sigma).reflection_length() + 1 == ls
            })
            .collect())
    }

    /// `w⁻¹γ`, the Kreweras complement.
    pub fn kreweras(&self, w: &GroupElement) -> Result<GroupElement> {
        if !self.below_gamma(w) {
            return Err(Error::NotBelowGamma(self.length_report(w)));
        }
        Ok(self.inverse(w).compose(self.gamma()))
    }

    /// Bases of `M(w) = im(w - I)` and `F(w) = ker(w - I)`.
    pub fn moved_fixed(&self, w: &GroupElement) -> (Vec<RootVector>, Vec<RootVector>) {
        let a = w.matrix().minus_identity();
        (
            a.column_space().into_iter().map(RootVector).collect(),
            a.nullspace().into_iter().map(RootVector).collect(),
        )
    }

    /// Human-readable statement of the failing length equation.
    pub fn length_report(&self, w: &GroupElement) -> String {
        let lw = w.reflection_length();
        let rest = self.inverse(w).compose(self.gamma()).reflection_length();
        format!(
            "l(w) + l(w^-1 gamma) = {lw} + {rest} = {} but l(gamma) = {}",
            lw + rest,
            self.rank()
        )
    }

    /// Product `R(ρ_{w_k}) ⋯ R(ρ_{w_1})` of a word of positive root indices.
    pub fn word_product(&self, word: &[usize]) -> Result<GroupElement> {
        let mut acc = self.identity();
        for &i in word {
            if i == 0 || i > self.positive_count() {
                return Err(Error::IndexOutOfRange(i as i64));
            }
            acc = self.reflection_of(i).compose(&acc);
        }
        Ok(acc)
    }

    /// Enumerates `[I, γ]` downward from `γ`.
    pub fn interval(&self) -> IntervalPoset {
        IntervalPoset::build(self, CoverTest::MovedSpace, false)
    }

    /// Same enumeration, but every candidate is tested by computing `l(Rw)`
    /// directly, optionally scanning reflections in reverse order.
    pub fn interval_by_length(&self, reverse: bool) -> IntervalPoset {
        IntervalPoset::build(self, CoverTest::Length, reverse)
    }

    /// All elements of `W`, generated from the simple reflections; `None` past `cap`.
    pub fn enumerate_group(&self, cap: usize) -> Option<Vec<GroupElement>> {
        let gens: Vec<GroupElement> = (0..self.rank())
            .map(|i| self.reflection(&self.simple_root(i)).expect("simple roots are unit"))
            .collect();
        let id = self.identity();
        let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(w) = frontier.pop() {
            for g in &gens {
                let x = g.compose(&w);
                if seen.insert(x.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    frontier.push(x);
                }
            }
        }
        let mut all: Vec<GroupElement> = seen.into_iter().collect();
        all.sort_by(|a, b| a.canonical_cmp(b));
        Some(all)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CoverTest {
    MovedSpace,
    Length,
}

/// The elements of `[I, γ]` with their grading, covers and order relation.
///
/// Elements are sorted by length, then by canonical entry order, so index 0 is
/// the identity and the last index is `γ`.
#[derive(Debug, Clone)]
pub struct IntervalPoset {
    elements: Vec<GroupElement>,
    lengths: Vec<usize>,
    index: HashMap<GroupElement, usize>,
    // lower covers as (reflection index, element)
    lower: Vec<Vec<(usize, usize)>>,
    // up[e][r - 1] = R(ρ_r)·e when that is an upper cover of e
    up: Vec<Vec<Option<usize>>>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    refl_sets: Vec<FixedBitSet>,
    atoms: Vec<usize>,
    positive_count: usize,
}

impl IntervalPoset {
    fn build(sys: &RootSystem, test: CoverTest, reverse: bool) -> IntervalPoset {
        let half = sys.positive_count();
        let gamma = sys.gamma().clone();
        let top = gamma.reflection_length();
        let mut levels: Vec<Vec<GroupElement>> = vec![Vec::new(); top + 1];
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut edges: Vec<(GroupElement, usize, GroupElement)> = Vec::new();
        seen.insert(gamma.clone());
        levels[top].push(gamma);
        for len in (1..=top).rev() {
            let current = std::mem::take(&mut levels[len]);
            let mut next = Vec::new();
            let order: Vec<usize> = if reverse {
                (1..=half).rev().collect()
            } else {
                (1..=half).collect()
            };
            for w in &current {
                // R(v)w is a lower cover iff v ∈ M(w) = F(w)^⊥
                let fixed_b: Vec<Vec<FieldElement>> = match test {
                    CoverTest::MovedSpace => w
                        .matrix()
                        .minus_identity()
                        .nullspace()
                        .iter()
                        .map(|f| sys.gram().mul_vec(f))
                        .collect(),
                    CoverTest::Length => Vec::new(),
                };
                for &r in &order {
                    let x = match test {
                        CoverTest::MovedSpace => {
                            let rho = sys.rho(r as i64);
                            if !fixed_b.iter().all(|bf| crate::linalg::dot(&rho.0, bf).is_zero()) {
                                continue;
                            }
                            sys.reflection_of(r).compose(w)
                        }
                        CoverTest::Length => {
                            let x = sys.reflection_of(r).compose(w);
                            if x.reflection_length() + 1 != len {
                                continue;
                            }
                            x
                        }
                    };
                    if seen.insert(x.clone()) {
                        next.push(x.clone());
                    }
                    edges.push((x, r, w.clone()));
                }
            }
            levels[len] = current;
            levels[len - 1] = next;
        }

        let mut elements: Vec<(usize, GroupElement)> = levels
            .into_iter()
            .enumerate()
            .flat_map(|(l, v)| v.into_iter().map(move |g| (l, g)))
            .collect();
        elements.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.canonical_cmp(&b.1)));
        let lengths: Vec<usize> = elements.iter().map(|e| e.0).collect();
        let elements: Vec<GroupElement> = elements.into_iter().map(|e| e.1).collect();
        let index: HashMap<GroupElement, usize> =
            elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();

        let n = elements.len();
        let mut lower = vec![Vec::new(); n];
        let mut up = vec![vec![None; half]; n];
        for (x, r, w) in &edges {
            let (xi, wi) = (index[x], index[w]);
            lower[wi].push((*r, xi));
            up[xi][r - 1] = Some(wi);
        }
        for l in lower.iter_mut() {
            l.sort_unstable();
        }

        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for w in 0..n {
            below[w].insert(w);
            for &(_, c) in &lower[w].clone() {
                let (lo, hi) = below.split_at_mut(w);
                hi[0].union_with(&lo[c]);
            }
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (w, b) in below.iter().enumerate() {
            for u in b.ones() {
                above[u].insert(w);
            }
        }

        let identity = 0;
        let mut atoms = vec![usize::MAX; half];
        for r in 1..=half {
            if let Some(a) = up[identity][r - 1] {
                atoms[r - 1] = a;
            }
        }
        let refl_sets = below
            .iter()
            .map(|b| {
                let mut s = FixedBitSet::with_capacity(half);
                for (r, &a) in atoms.iter().enumerate() {
                    if a != usize::MAX && b.contains(a) {
                        s.insert(r);
                    }
                }
                s
            })
            .collect();

        IntervalPoset {
            elements,
            lengths,
            index,
            lower,
            up,
            below,
            above,
            refl_sets,
            atoms,
            positive_count: half,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    /// Lower covers of `w` as `(reflection index, element index)`, sorted.
    pub fn lower_covers(&self, w: usize) -> &[(usize, usize)] {
        &self.lower[w]
    }

    /// `R(ρ_r)·w` when it covers `w`.
    pub fn up(&self, w: usize, r: usize) -> Option<usize> {
        self.up[w][r - 1]
    }

    pub fn leq(&self, u: usize, w: usize) -> bool {
        self.below[w].contains(u)
    }

    /// All elements `≤ w`.
    pub fn down_set(&self, w: usize) -> &FixedBitSet {
        &self.below[w]
    }

    /// All elements `≥ w`.
    pub fn up_set(&self, w: usize) -> &FixedBitSet {
        &self.above[w]
    }

    /// `P_w` as a bitset over positive root indices (bit `i - 1` for `ρ_i`).
    pub fn reflection_bits(&self, w: usize) -> &FixedBitSet {
        &self.refl_sets[w]
    }

    /// `P_w` as sorted Steinberg indices.
    pub fn reflection_set(&self, w: usize) -> Vec<usize> {
        self.refl_sets[w].ones().map(|i| i + 1).collect()
    }

    /// Element index of `R(ρ_r)`.
    pub fn atom(&self, r: usize) -> usize {
        self.atoms[r - 1]
    }

    pub fn positive_count(&self) -> usize {
        self.positive_count
    }

    /// Number of cover relations.
    pub fn cover_count(&self) -> usize {
        self.lower.iter().map(Vec::len).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_basics() {
        let sys = RootSystem::from_symbol("A3").unwrap();
        let a1 = sys.simple_root(0);
        let r = sys.reflection(&a1).unwrap();
        assert_eq!(r.apply(&a1), a1.neg());
        assert_eq!(r.apply(&sys.dual_basis()[1]), sys.dual_basis()[1]);
        assert!(r.compose(&r).is_identity());
        assert_eq!(r.matrix().determinant(), -FieldElement::one(sys.field()));
        let two = a1.add(&a1);
        assert!(matches!(sys.reflection(&two), Err(Error::NotUnit)));
    }

    #[test]
    fn lengths_of_extremes() {
        let sys = RootSystem::from_symbol("H3").unwrap();
        assert_eq!(sys.identity().reflection_length(), 0);
        assert_eq!(sys.gamma().reflection_length(), 3);
        assert!(sys.leq(&sys.identity(), sys.gamma()));
        assert!(sys.gamma().preserves_form(sys.gram()));
    }

    #[test]
    fn interval_sizes() {
        for (sym, size) in [("A1", 2), ("A2", 5), ("A3", 14), ("B3", 20), ("H3", 32), ("I2(5)", 7)] {
            let sys = RootSystem::from_symbol(sym).unwrap();
            let p = sys.interval();
            assert_eq!(p.len(), size, "{sym}");
            assert!(p.element(p.bottom()).is_identity());
            assert_eq!(p.element(p.top()), sys.gamma());
        }
    }

    #[test]
    fn cover_tests_agree() {
        for sym in ["A3", "B3", "H3", "I2(6)"] {
            let sys = RootSystem::from_symbol(sym).unwrap();
            let a = sys.interval();
            let b = sys.interval_by_length(true);
            assert_eq!(a.elements(), b.elements(), "{sym}");
            for w in 0..a.len() {
                assert_eq!(a.lower_covers(w), b.lower_covers(w));
            }
        }
    }

    #[test]
    fn poset_order_matches_length_equation() {
        let sys = RootSystem::from_symbol("A3").unwrap();
        let p = sys.interval();
        for u in 0..p.len() {
            for w in 0..p.len() {
                assert_eq!(p.leq(u, w), sys.leq(p.element(u), p.element(w)));
            }
            assert_eq!(p.reflection_set(u), sys.reflection_set(p.element(u)).unwrap());
        }
    }

    #[test]
    fn kreweras_endpoints() {
        let sys = RootSystem::from_symbol("B3").unwrap();
        assert_eq!(&sys.kreweras(&sys.identity()).unwrap(), sys.gamma());
        assert!(sys.kreweras(sys.gamma()).unwrap().is_identity());
        let outside = sys.gamma().compose(sys.gamma());
        assert!(matches!(sys.kreweras(&outside), Err(Error::NotBelowGamma(_))));
    }
}
