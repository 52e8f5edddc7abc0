//! Almost-positive roots, the involutions `τ±`, compatibility degrees and the
//! generalised associahedron compared against `EX(γ)`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::absorder::GroupElement;
use crate::complexes::{ex_vertices, ExtIndex, FlagComplex};
use crate::error::{Error, Result};
use crate::rootsystem::{RootSystem, RootVector};
use crate::scalar::{FieldElement, Scalar, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RootTag {
    /// Steinberg index in `1..=nh/2`.
    Positive(usize),
    /// `-α_j`, with `j` a 1-based simple index.
    NegativeSimple(usize),
}

/// An element of `Ω_{≥-1}` with its position in the `EX(γ)` vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostPositiveRoot {
    pub vector: RootVector,
    pub tag: RootTag,
    pub ext: ExtIndex,
}

/// `Ω_{≥-1}` listed in `EX(γ)` order, with `τ±` precomputed as matrices.
#[derive(Debug, Clone)]
pub struct ClusterSystem<'a> {
    sys: &'a RootSystem,
    roots: Vec<AlmostPositiveRoot>,
    lookup: HashMap<RootVector, usize>,
    t_plus: GroupElement,
    t_minus: GroupElement,
}

impl<'a> ClusterSystem<'a> {
    pub fn new(sys: &'a RootSystem) -> Result<Self> {
        let n = sys.rank();
        let s = sys.s();
        let mut roots = Vec::new();
        for ext in ex_vertices(sys) {
            let v = sys.rho(ext.0).clone();
            let tag = if v.is_positive() {
                RootTag::Positive(sys.root_index(&v).expect("listed root"))
            } else {
                let j = (0..n)
                    .find(|&j| v == sys.simple_root(j).neg())
                    .ok_or_else(|| Error::Internal(format!("EX vertex {ext} is not almost positive")))?;
                RootTag::NegativeSimple(j + 1)
            };
            roots.push(AlmostPositiveRoot { vector: v, tag, ext });
        }
        let lookup = roots.iter().enumerate().map(|(i, r)| (r.vector.clone(), i)).collect();
        let simple: Vec<GroupElement> = (0..n)
            .map(|j| sys.reflection(&sys.simple_root(j)))
            .collect::<Result<_>>()?;
        let product = |range: std::ops::Range<usize>| {
            range.fold(sys.identity(), |acc, j| acc.compose(&simple[j]))
        };
        Ok(ClusterSystem {
            sys,
            t_plus: product(0..s),
            t_minus: product(s..n),
            roots,
            lookup,
        })
    }

    pub fn roots(&self) -> &[AlmostPositiveRoot] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Position of a vector in `Ω_{≥-1}`.
    pub fn index_of(&self, v: &RootVector) -> Option<usize> {
        self.lookup.get(v).copied()
    }

    fn in_negative_class(&self, i: usize, first_class: bool) -> bool {
        match self.roots[i].tag {
            RootTag::NegativeSimple(j) => (j <= self.sys.s()) == first_class,
            RootTag::Positive(_) => false,
        }
    }

    fn retag(&self, v: RootVector) -> Result<usize> {
        self.index_of(&v)
            .ok_or_else(|| Error::Internal(format!("image {v:?} left the almost-positive roots")))
    }

    /// `R_1⋯R_s(β)`, or `β` itself on `-S_2`.
    pub fn tau_plus(&self, i: usize) -> Result<usize> {
        if self.in_negative_class(i, false) {
            return Ok(i);
        }
        self.retag(self.t_plus.apply(&self.roots[i].vector))
    }

    /// `R_{s+1}⋯R_n(β)`, or `β` itself on `-S_1`.
    pub fn tau_minus(&self, i: usize) -> Result<usize> {
        if self.in_negative_class(i, true) {
            return Ok(i);
        }
        self.retag(self.t_minus.apply(&self.roots[i].vector))
    }

    /// Number of single `τ` steps tried before giving up.
    pub fn rotation_cap(&self) -> usize {
        2 * (self.sys.coxeter_number() + 2)
    }

    /// `(α ∥ β)`: apply `τ+`, `τ-`, `τ+`, … to both arguments until the first is a
    /// negative simple root `-α_i`, then read off `max(β·μ_i, 0)`.
    pub fn compatibility_degree(&self, a: usize, b: usize) -> Result<FieldElement> {
        let (mut a, mut b) = (a, b);
        let cap = self.rotation_cap();
        for step in 0..=cap {
            if let RootTag::NegativeSimple(i) = self.roots[a].tag {
                let c = self.sys.dot(&self.roots[b].vector, &self.sys.dual_basis()[i - 1]);
                return Ok(if c.sign() == Sign::Negative { c.zero_like() } else { c });
            }
            if step % 2 == 0 {
                a = self.tau_plus(a)?;
                b = self.tau_plus(b)?;
            } else {
                a = self.tau_minus(a)?;
                b = self.tau_minus(b)?;
            }
        }
        Err(Error::RotationCap(cap))
    }

    /// Full table `[(α_a ∥ α_b)]` in `EX` order.
    pub fn compatibility_table(&self) -> Result<Vec<Vec<FieldElement>>> {
        (0..self.len())
            .map(|a| (0..self.len()).map(|b| self.compatibility_degree(a, b)).collect())
            .collect()
    }

    /// The flag complex on `Ω_{≥-1}` whose edges are the pairs of compatibility
    /// degree zero; vertices carry their `EX(γ)` labels. Non-crystallographic
    /// types need `extension`.
    pub fn build_ga(&self, extension: bool) -> Result<FlagComplex> {
        if !self.sys.is_crystallographic() && !extension {
            return Err(Error::NonCrystallographic(self.sys.label()));
        }
        let vertices: Vec<ExtIndex> = self.roots.iter().map(|r| r.ext).collect();
        let mut failure = None;
        let ga = FlagComplex::from_edge_fn(vertices, |a, b| match self.compatibility_degree(a, b) {
            Ok(c) => c.is_zero(),
            Err(e) => {
                failure.get_or_insert(e);
                false
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(ga),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsomorphismReport {
    pub vertices_match: bool,
    pub ex_edges: usize,
    pub ga_edges: usize,
    pub only_in_ex: Vec<(i64, i64)>,
    pub only_in_ga: Vec<(i64, i64)>,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.vertices_match && self.only_in_ex.is_empty() && self.only_in_ga.is_empty()
    }
}

/// Compares two complexes on the same labelled vertex set, edge by edge.
pub fn isomorphism_check(ex: &FlagComplex, ga: &FlagComplex) -> IsomorphismReport {
    let edges = |c: &FlagComplex| -> BTreeSet<(i64, i64)> { c.edges().into_iter().map(|(u, v)| (u.0, v.0)).collect() };
    let (e, g) = (edges(ex), edges(ga));
    IsomorphismReport {
        vertices_match: ex.vertices() == ga.vertices(),
        ex_edges: e.len(),
        ga_edges: g.len(),
        only_in_ex: e.difference(&g).copied().collect(),
        only_in_ga: g.difference(&e).copied().collect(),
    }
}
