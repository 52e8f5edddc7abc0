//! Meets and joins in `[I, γ]`.
//!
//! The meet of `α` and `β` is read off the first top-dimensional simplex of
//! `X(α) ∩ X(β)`; joins come from meets through the Kreweras complement.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::absorder::{GroupElement, IntervalPoset};
use crate::complexes::{build_x, ExtIndex, FlagComplex, Simplex};
use crate::error::{Error, Result};
use crate::rootsystem::RootSystem;

/// A meet together with the simplex that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetResult {
    /// Poset index of the meet.
    pub element: usize,
    pub witness_simplex: Simplex,
    /// `P_meet = P_α ∩ P_β` held.
    pub verified: bool,
}

/// The interval with `X(γ)` and the Kreweras permutation, ready for lattice queries.
#[derive(Debug, Clone)]
pub struct IntervalLattice {
    poset: IntervalPoset,
    x: FlagComplex,
    kreweras: Vec<usize>,
    kreweras_inv: Vec<usize>,
}

impl IntervalLattice {
    pub fn new(sys: &RootSystem) -> Result<Self> {
        Self::from_poset(sys, sys.interval())
    }

    pub fn from_poset(sys: &RootSystem, poset: IntervalPoset) -> Result<Self> {
        let x = build_x(sys);
        let mut kreweras = Vec::with_capacity(poset.len());
        for w in poset.elements() {
            let k = sys.inverse(w).compose(sys.gamma());
            let ki = poset
                .index_of(&k)
                .ok_or_else(|| Error::Internal("Kreweras complement left the interval".into()))?;
            kreweras.push(ki);
        }
        let mut kreweras_inv = vec![0; poset.len()];
        for (w, &k) in kreweras.iter().enumerate() {
            kreweras_inv[k] = w;
        }
        Ok(IntervalLattice {
            poset,
            x,
            kreweras,
            kreweras_inv,
        })
    }

    pub fn poset(&self) -> &IntervalPoset {
        &self.poset
    }

    pub fn x_gamma(&self) -> &FlagComplex {
        &self.x
    }

    /// Poset index of `w⁻¹γ`.
    pub fn kreweras(&self, w: usize) -> usize {
        self.kreweras[w]
    }

    /// `R(v_d)⋯R(v_0)` for the lexicographically first top simplex of `X(α) ∩ X(β)`.
    pub fn meet(&self, a: usize, b: usize) -> Result<MeetResult> {
        let mut common = self.poset.reflection_bits(a).clone();
        common.intersect_with(self.poset.reflection_bits(b));
        // X(γ) vertex positions are Steinberg indices minus one, same as the bitset
        let clique = self.x.lex_first_max_clique(&common);
        let mut cur = self.poset.bottom();
        for &pos in &clique {
            cur = self.poset.up(cur, pos + 1).ok_or_else(|| {
                Error::Internal(format!("simplex product leaves the interval at root {}", pos + 1))
            })?;
        }
        let verified = *self.poset.reflection_bits(cur) == common
            && self.poset.leq(cur, a)
            && self.poset.leq(cur, b);
        if !verified {
            return Err(Error::Internal(format!(
                "meet of elements {a} and {b} failed verification"
            )));
        }
        Ok(MeetResult {
            element: cur,
            witness_simplex: Simplex::new(clique.iter().map(|&p| ExtIndex(p as i64 + 1)).collect()),
            verified,
        })
    }

    /// `γ · meet(α⁻¹γ, β⁻¹γ)⁻¹`.
    pub fn join(&self, a: usize, b: usize) -> Result<usize> {
        let m = self.meet(self.kreweras[a], self.kreweras[b])?;
        let j = self.kreweras_inv[m.element];
        if !(self.poset.leq(a, j) && self.poset.leq(b, j)) {
            return Err(Error::Internal(format!("join of {a} and {b} is not an upper bound")));
        }
        Ok(j)
    }

    /// Meet of two group elements of the interval.
    pub fn meet_elements(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let (ia, ib) = (self.lookup(a)?, self.lookup(b)?);
        Ok(self.poset.element(self.meet(ia, ib)?.element).clone())
    }

    pub fn join_elements(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let (ia, ib) = (self.lookup(a)?, self.lookup(b)?);
        Ok(self.poset.element(self.join(ia, ib)?).clone())
    }

    fn lookup(&self, w: &GroupElement) -> Result<usize> {
        self.poset
            .index_of(w)
            .ok_or_else(|| Error::NotBelowGamma("element is not in the interval".into()))
    }

    /// Every top-dimensional simplex of `X(α) ∩ X(β)`.
    pub fn top_simplices(&self, a: usize, b: usize) -> Vec<Simplex> {
        let keep: Vec<ExtIndex> = self
            .common_roots(a, b)
            .ones()
            .map(|p| ExtIndex(p as i64 + 1))
            .collect();
        self.x.induced(&keep).top_simplices()
    }

    /// `P_α ∩ P_β` as a bitset over positive roots.
    pub fn common_roots(&self, a: usize, b: usize) -> FixedBitSet {
        let mut common = self.poset.reflection_bits(a).clone();
        common.intersect_with(self.poset.reflection_bits(b));
        common
    }
}

/// Greatest lower bound by scanning the explicit relation.
pub fn brute_glb(poset: &IntervalPoset, a: usize, b: usize) -> Option<usize> {
    let mut common = poset.down_set(a).clone();
    common.intersect_with(poset.down_set(b));
    let found: Vec<usize> = common.ones().filter(|&c| common.is_subset(poset.down_set(c))).collect();
    (found.len() == 1).then(|| found[0])
}

/// Least upper bound by scanning the explicit relation.
pub fn brute_lub(poset: &IntervalPoset, a: usize, b: usize) -> Option<usize> {
    let mut common = poset.up_set(a).clone();
    common.intersect_with(poset.up_set(b));
    let found: Vec<usize> = common.ones().filter(|&c| common.is_subset(poset.up_set(c))).collect();
    (found.len() == 1).then(|| found[0])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub elements: usize,
    pub pairs_checked: usize,
    pub meet_failures: usize,
    pub join_failures: usize,
    /// First few witnesses, as readable strings.
    pub failures: Vec<String>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.meet_failures == 0 && self.join_failures == 0
    }
}

const MAX_WITNESSES: usize = 10;

/// Checks every unordered pair of distinct elements against the brute-force glb and lub.
pub fn verify_lattice(lattice: &IntervalLattice) -> LatticeReport {
    let poset = lattice.poset();
    let n = poset.len();
    let mut report = LatticeReport {
        elements: n,
        pairs_checked: 0,
        meet_failures: 0,
        join_failures: 0,
        failures: Vec::new(),
    };
    for a in 0..n {
        for b in a + 1..n {
            report.pairs_checked += 1;
            let meet = lattice.meet(a, b).map(|m| m.element);
            let glb = brute_glb(poset, a, b);
            if meet.as_ref().ok() != glb.as_ref() {
                report.meet_failures += 1;
                if report.failures.len() < MAX_WITNESSES {
                    report
                        .failures
                        .push(format!("meet({a}, {b}) = {meet:?}, brute-force glb = {glb:?}"));
                }
            }
            let join = lattice.join(a, b);
            let lub = brute_lub(poset, a, b);
            if join.as_ref().ok() != lub.as_ref() {
                report.join_failures += 1;
                if report.failures.len() < MAX_WITNESSES {
                    report
                        .failures
                        .push(format!("join({a}, {b}) = {join:?}, brute-force lub = {lub:?}"));
                }
            }
        }
    }
    report
}

/// Number of elements of `[I, γ]`.
pub fn catalan_count(poset: &IntervalPoset) -> usize {
    poset.len()
}
