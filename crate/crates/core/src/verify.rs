//! The invariant suite behind `reflat verify`.
//!
//! Every check is exact. Sampled checks draw from a ChaCha stream seeded by
//! the caller, so a report depends only on the type, the seed and the flags.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cluster::{isomorphism_check, ClusterSystem};
use crate::complexes::{build_ex, induced_on, root_cone_membership, simple_system, sphere_check, ExtIndex, Simplex};
use crate::error::Result;
use crate::lattice::{verify_lattice, IntervalLattice};
use crate::rootsystem::RootSystem;
use crate::scalar::{FieldElement, Scalar, Sign};

/// Interval elements examined one by one before switching to sampling.
pub const EXHAUSTIVE_LIMIT: usize = 300;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Build `GA(W)` for non-crystallographic types too.
    pub extension: bool,
    pub flag_samples: usize,
    pub cone_samples: usize,
    pub element_samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            extension: false,
            flag_samples: 200,
            cone_samples: 50,
            element_samples: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    #[serde(rename = "type")]
    pub type_symbol: String,
    pub seed: u64,
    pub passed: bool,
    pub elements: usize,
    pub pairs_checked: usize,
    pub checks: Vec<CheckResult>,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

const MAX_WITNESSES: usize = 5;

struct Check {
    name: &'static str,
    count: usize,
    witnesses: Vec<String>,
    failures: usize,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            count: 0,
            witnesses: Vec::new(),
            failures: 0,
        }
    }

    fn expect(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(format!("{}: {}", self.name, witness()));
            }
        }
    }

    fn finish(self, what: &str, report: &mut Vec<CheckResult>, failures: &mut Vec<String>) {
        report.push(CheckResult {
            name: self.name.to_string(),
            passed: self.failures == 0,
            detail: format!("{} {what}, {} failed", self.count, self.failures),
        });
        failures.extend(self.witnesses);
    }
}

/// `γμ_i = μ_i - 2ρ_i` for every `i` in `1..=nh`.
fn petrie(sys: &RootSystem, c: &mut Check) {
    let two = FieldElement::from_integer(sys.field(), 2);
    for i in 1..=2 * sys.positive_count() as i64 {
        let lhs = sys.gamma().apply(sys.mu(i));
        let rhs = sys.mu(i).sub(&sys.rho(i).scale(&two));
        c.expect(lhs == rhs, || format!("i = {i}"));
    }
}

/// `R(ρ_i)R(ρ_{i+1})⋯R(ρ_{i+n-1}) = γ⁻¹` for every cyclic window.
fn windows(sys: &RootSystem, c: &mut Check) {
    let n = sys.rank() as i64;
    for i in 1..=2 * sys.positive_count() as i64 {
        let w = (i..i + n).fold(sys.identity(), |acc, j| acc.compose(sys.reflection_at(j)));
        c.expect(&w == sys.gamma_inverse(), || format!("window starting at {i}"));
    }
}

/// Sign pattern of `[μ_i·ρ_j]`.
fn table_signs(sys: &RootSystem, c: &mut Check) {
    let n = sys.rank() as i64;
    let half = sys.positive_count() as i64;
    for i in 1..=2 * half {
        for j in 1..=2 * half {
            let a = sys.dot(sys.mu(i), sys.rho(j));
            let b = sys.dot(sys.mu(j + n), sys.rho(i));
            c.expect(a == b.neg_ref(), || format!("(a) fails at i = {i}, j = {j}"));
        }
    }
    for i in 1..=half {
        for j in 1..=half {
            let sign = sys.dot(sys.mu(i), sys.rho(j)).sign();
            if i <= j {
                c.expect(sign != Sign::Negative, || format!("(b) mu_{i}.rho_{j} < 0"));
            } else {
                c.expect(sign != Sign::Positive, || format!("(d) mu_{i}.rho_{j} > 0"));
            }
        }
        for t in 1..n {
            let zero = sys.dot(sys.mu(i + t), sys.rho(i)).is_zero();
            c.expect(zero, || format!("(c) mu_{}.rho_{i} != 0", i + t));
        }
    }
}

fn interval_checks(sys: &RootSystem, lat: &IntervalLattice, c: &mut Check) {
    let p = lat.poset();
    let n = sys.rank();
    c.expect(p.element(p.bottom()).is_identity(), || "bottom is not the identity".into());
    c.expect(p.element(p.top()) == sys.gamma(), || "top is not gamma".into());
    for w in 0..p.len() {
        let k = lat.kreweras(w);
        c.expect(p.length(w) + p.length(k) == n, || format!("length equation fails at element {w}"));
        for &(r, lower) in p.lower_covers(w) {
            let ok = p.length(lower) + 1 == p.length(w)
                && &sys.reflection_of(r).compose(p.element(lower)) == p.element(w);
            c.expect(ok, || format!("cover {lower} -> {w} by reflection {r}"));
        }
    }
}

/// Facet count of `X(γ)` against `nh/2 - n + 1`, and every consecutive window is a facet.
fn x_facets(sys: &RootSystem, lat: &IntervalLattice, c: &mut Check) -> String {
    let x = lat.x_gamma();
    let n = sys.rank() as i64;
    let half = sys.positive_count() as i64;
    let bound = (half - n + 1) as usize;
    let facets = x.facets();
    c.expect(facets.len() >= bound, || format!("{} facets, bound {bound}", facets.len()));
    for i in 1..=half - n + 1 {
        let window = Simplex::new((i..i + n).map(ExtIndex).collect());
        c.expect(facets.contains(&window), || format!("window {:?} is not a facet", window.indices()));
    }
    format!("{} facets, bound {bound}", facets.len())
}

fn ex_sphere(sys: &RootSystem, c: &mut Check) -> String {
    let ex = build_ex(sys);
    let r = sphere_check(&ex, sys.rank());
    c.expect(r.passed(), || format!("{r:?}"));
    format!("{} facets, euler characteristic {}", r.facets, r.euler_characteristic)
}

fn associahedron(sys: &RootSystem, extension: bool, c: &mut Check) -> Result<String> {
    if !sys.is_crystallographic() && !extension {
        return Ok("skipped: non-crystallographic type without the extension flag".into());
    }
    let cs = ClusterSystem::new(sys)?;
    let ga = cs.build_ga(extension)?;
    let r = isomorphism_check(&build_ex(sys), &ga);
    c.expect(r.passed(), || format!("only in EX {:?}, only in GA {:?}", r.only_in_ex, r.only_in_ga));
    Ok(format!("{} edges", r.ga_edges))
}

/// Consistently ordered subsets: `l(R(σ_1)⋯R(σ_k)γ) = n - k` iff
/// `μ(σ_i)·σ_j = 0` whenever `i > j`. Half the samples are drawn from facets of
/// `X(γ)` so both outcomes occur.
fn flag_lemma(sys: &RootSystem, lat: &IntervalLattice, samples: usize, rng: &mut ChaCha8Rng, c: &mut Check) {
    let n = sys.rank();
    let half = sys.positive_count();
    let facets = lat.x_gamma().facets();
    for t in 0..samples {
        let mut subset: Vec<usize> = if t % 2 == 0 || facets.is_empty() {
            let k = rng.gen_range(1..=n.min(half));
            sample(rng, half, k).into_iter().map(|i| i + 1).collect()
        } else {
            let f = facets[rng.gen_range(0..facets.len())].indices();
            let k = rng.gen_range(1..=f.len());
            sample(rng, f.len(), k).into_iter().map(|i| f[i] as usize).collect()
        };
        subset.sort_unstable();
        let k = subset.len();
        let w = subset
            .iter()
            .fold(sys.identity(), |acc, &i| acc.compose(sys.reflection_of(i)))
            .compose(sys.gamma());
        let a = w.reflection_length() == n - k;
        let b = (0..k).all(|i| (0..i).all(|j| sys.dot(sys.mu(subset[i] as i64), sys.rho(subset[j] as i64)).is_zero()));
        c.expect(a == b, || format!("subset {subset:?}: length test {a}, dot test {b}"));
    }
}

/// `ρ_k` never lies in the cone on earlier positive roots.
fn cones(sys: &RootSystem, samples: usize, rng: &mut ChaCha8Rng, c: &mut Check) {
    let half = sys.positive_count();
    if half < 2 {
        return;
    }
    for _ in 0..samples {
        let k = rng.gen_range(2..=half);
        let m = rng.gen_range(1..k);
        let mut earlier: Vec<usize> = sample(rng, k - 1, m).into_iter().map(|i| i + 1).collect();
        earlier.sort_unstable();
        let gens: Vec<_> = earlier.iter().map(|&i| sys.rho(i as i64).clone()).collect();
        let inside = root_cone_membership(&gens, sys.rho(k as i64)).is_some();
        c.expect(!inside, || format!("rho_{k} lies in the cone on {earlier:?}"));
    }
}

/// Simple systems, `ε`, `θ` and the facts tying them to `X(σ)`.
fn simple_systems(sys: &RootSystem, lat: &IntervalLattice, elements: &[usize], c: &mut Check) -> Result<()> {
    let p = lat.poset();
    for &w in elements {
        let sigma = p.element(w);
        let ss = simple_system(sys, sigma)?;
        c.expect(ss.factorisations_hold(sys, sigma), || format!("element {w}: factorisation"));
        c.expect(ss.delta[0] == ss.p[0], || format!("element {w}: delta_1 is not tau_1"));
        let x = induced_on(lat.x_gamma(), &ss.p);
        let theta = Simplex::new(ss.theta.iter().map(|&i| ExtIndex(i as i64)).collect());
        c.expect(x.first_top_simplex().as_ref() == Some(&theta), || {
            format!("element {w}: theta {:?} is not the first facet", ss.theta)
        });
        for (e, d) in ss.epsilon.iter().zip(&ss.delta) {
            let v = sys.dot(sys.mu(*e as i64), sys.rho(*d as i64));
            c.expect(v.is_one(), || format!("element {w}: mu(eps).delta = {v}"));
        }
        for i in 0..ss.k() {
            for j in i + 1..ss.k() {
                if ss.epsilon[i] > ss.epsilon[j] {
                    let zero = sys
                        .dot(sys.rho(ss.epsilon[i] as i64), sys.rho(ss.epsilon[j] as i64))
                        .is_zero();
                    c.expect(zero, || format!("element {w}: eps_{} and eps_{} do not commute", i + 1, j + 1));
                }
            }
        }
        let inv = sys.inverse(sigma);
        for &tau in &ss.p {
            let negative = inv.apply(sys.rho(tau as i64)).is_negative();
            let in_eps = ss.epsilon.contains(&tau);
            c.expect(negative == in_eps, || format!("element {w}: sigma^-1 on rho_{tau}"));
        }
    }
    Ok(())
}

/// Length-two elements: `X(σ)` is the path `τ_1 - τ_2 - ⋯ - τ_t`, and the end
/// reflections reverse the order of `P_σ`.
fn dihedral_intervals(sys: &RootSystem, lat: &IntervalLattice, c: &mut Check) {
    let p = lat.poset();
    for w in (0..p.len()).filter(|&w| p.length(w) == 2) {
        let tau = p.reflection_set(w);
        let t = tau.len();
        let x = induced_on(lat.x_gamma(), &tau);
        let path: Vec<(i64, i64)> = tau.windows(2).map(|e| (e[0] as i64, e[1] as i64)).collect();
        let edges: Vec<(i64, i64)> = x.edges().into_iter().map(|(a, b)| (a.0, b.0)).collect();
        c.expect(edges == path, || format!("element {w}: edges {edges:?}"));
        let r1 = sys.reflection_of(tau[0]);
        let rt = sys.reflection_of(tau[t - 1]);
        for i in 1..=t {
            let v = sys.rho(tau[i - 1] as i64);
            let want1 = if i == 1 { v.neg() } else { sys.rho(tau[t - i + 1] as i64).clone() };
            let want_t = if i == t { v.neg() } else { sys.rho(tau[t - i - 1] as i64).clone() };
            c.expect(r1.apply(v) == want1 && rt.apply(v) == want_t, || format!("element {w}: tau_{i}"));
        }
    }
}

/// Runs the suite on one type.
pub fn run_suite(sys: &RootSystem, config: &SuiteConfig) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = Vec::new();
    let mut failures = Vec::new();

    let mut c = Check::new("petrie_identity");
    petrie(sys, &mut c);
    c.finish("roots", &mut checks, &mut failures);

    let mut c = Check::new("consecutive_windows");
    windows(sys, &mut c);
    c.finish("windows", &mut checks, &mut failures);

    let mut c = Check::new("table_signs");
    table_signs(sys, &mut c);
    c.finish("entries", &mut checks, &mut failures);

    let lat = IntervalLattice::new(sys)?;
    let mut c = Check::new("interval");
    interval_checks(sys, &lat, &mut c);
    c.finish("relations", &mut checks, &mut failures);

    let lr = verify_lattice(&lat);
    checks.push(CheckResult {
        name: "lattice".into(),
        passed: lr.passed(),
        detail: format!(
            "{} elements, {} pairs, {} meet and {} join failures",
            lr.elements, lr.pairs_checked, lr.meet_failures, lr.join_failures
        ),
    });
    failures.extend(lr.failures.iter().map(|f| format!("lattice: {f}")));

    let mut c = Check::new("x_facets");
    let detail = x_facets(sys, &lat, &mut c);
    c.finish(&format!("conditions ({detail})"), &mut checks, &mut failures);

    let mut c = Check::new("ex_sphere");
    let detail = ex_sphere(sys, &mut c);
    c.finish(&format!("conditions ({detail})"), &mut checks, &mut failures);

    let mut c = Check::new("associahedron");
    let detail = associahedron(sys, config.extension, &mut c)?;
    c.finish(&format!("comparisons ({detail})"), &mut checks, &mut failures);

    let mut c = Check::new("flag_lemma");
    flag_lemma(sys, &lat, config.flag_samples, &mut rng, &mut c);
    c.finish("subsets", &mut checks, &mut failures);

    let mut c = Check::new("cones");
    cones(sys, config.cone_samples, &mut rng, &mut c);
    c.finish("samples", &mut checks, &mut failures);

    let nontrivial: Vec<usize> = (1..lat.poset().len()).collect();
    let elements: Vec<usize> = if nontrivial.len() <= EXHAUSTIVE_LIMIT {
        nontrivial
    } else {
        let mut pick: Vec<usize> = sample(&mut rng, nontrivial.len(), config.element_samples)
            .into_iter()
            .map(|i| nontrivial[i])
            .collect();
        pick.sort_unstable();
        pick
    };
    let mut c = Check::new("simple_systems");
    simple_systems(sys, &lat, &elements, &mut c)?;
    c.finish(&format!("conditions over {} elements", elements.len()), &mut checks, &mut failures);

    let mut c = Check::new("dihedral_intervals");
    dihedral_intervals(sys, &lat, &mut c);
    c.finish("conditions", &mut checks, &mut failures);

    Ok(VerifyReport {
        type_symbol: sys.label(),
        seed: config.seed,
        passed: checks.iter().all(|c| c.passed),
        elements: lr.elements,
        pairs_checked: lr.pairs_checked,
        checks,
        failures,
        wall_time_ms: None,
    })
}
