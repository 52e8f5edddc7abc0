//! Serialisation of tables, complexes, intervals and compatibility data.
//!
//! Exact values are written in their display form (`1/2*t+1/2`, with `t` the
//! field generator `2cos(π/m)`), so output is stable across runs. Only OFF
//! meshes use floats, via a Cholesky factor of the Gram matrix.

use serde::Serialize;

use crate::absorder::IntervalPoset;
use crate::cluster::ClusterSystem;
use crate::complexes::{ExtIndex, FlagComplex};
use crate::error::{Error, Result};
use crate::rootsystem::{RootSystem, RootVector};
use crate::scalar::FieldElement;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldInfo {
    /// `m` in `θ = 2cos(π/m)`.
    pub generator_order: u32,
    /// Monic minimal polynomial of `t`, constant term first.
    pub min_poly: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootRow {
    pub index: usize,
    pub rho: Vec<String>,
    pub mu: Vec<String>,
}

/// The ρ/μ listing and the matrix `[μ_i·ρ_j]` over positive indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TablesExport {
    #[serde(rename = "type")]
    pub type_symbol: String,
    pub rank: usize,
    pub coxeter_number: usize,
    pub s: usize,
    /// Bipartite order of the original Coxeter generators.
    pub simple_order: Vec<usize>,
    pub field: FieldInfo,
    pub roots: Vec<RootRow>,
    pub dot_products: Vec<Vec<String>>,
}

fn strings(v: &RootVector) -> Vec<String> {
    v.coords().iter().map(FieldElement::to_string).collect()
}

pub fn field_info(sys: &RootSystem) -> FieldInfo {
    let f = sys.field();
    FieldInfo {
        generator_order: f.generator_order(),
        min_poly: f.min_poly().iter().map(|c| c.to_string()).collect(),
    }
}

pub fn tables(sys: &RootSystem) -> TablesExport {
    let half = sys.positive_count();
    TablesExport {
        type_symbol: sys.label(),
        rank: sys.rank(),
        coxeter_number: sys.coxeter_number(),
        s: sys.s(),
        simple_order: sys.bipartition().order.clone(),
        field: field_info(sys),
        roots: (1..=half)
            .map(|i| RootRow {
                index: i,
                rho: strings(sys.rho(i as i64)),
                mu: strings(sys.mu(i as i64)),
            })
            .collect(),
        dot_products: sys
            .dot_table()
            .iter()
            .map(|row| row.iter().map(FieldElement::to_string).collect())
            .collect(),
    }
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
}

/// One row per positive index `i`: the coordinates of `ρ_i` and `μ_i` in the
/// simple-root basis, then `μ_i·ρ_j` for every positive `j`.
pub fn tables_csv(t: &TablesExport) -> String {
    csv_string(|w| {
        let mut header = vec!["i".to_string()];
        header.extend((1..=t.rank).map(|k| format!("rho_{k}")));
        header.extend((1..=t.rank).map(|k| format!("mu_{k}")));
        header.extend((1..=t.roots.len()).map(|j| format!("mu.rho_{j}")));
        w.write_record(&header)?;
        for (row, dots) in t.roots.iter().zip(&t.dot_products) {
            let mut rec = vec![row.index.to_string()];
            rec.extend(row.rho.iter().cloned());
            rec.extend(row.mu.iter().cloned());
            rec.extend(dots.iter().cloned());
            w.write_record(&rec)?;
        }
        Ok(())
    })
}

pub fn tables_text(t: &TablesExport) -> String {
    let mut out = format!(
        "{} rank {} h {} s {} field Q(2cos(pi/{}))\n",
        t.type_symbol, t.rank, t.coxeter_number, t.s, t.field.generator_order
    );
    for r in &t.roots {
        out.push_str(&format!("rho_{} = ({})  mu_{} = ({})\n", r.index, r.rho.join(", "), r.index, r.mu.join(", ")));
    }
    out.push_str("[mu_i . rho_j]\n");
    for row in &t.dot_products {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexExport {
    pub index: i64,
    pub coords: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexExport {
    #[serde(rename = "type")]
    pub type_symbol: String,
    pub kind: String,
    pub vertices: Vec<VertexExport>,
    pub edges: Vec<[i64; 2]>,
    pub facets: Vec<Vec<i64>>,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
}

/// Vertices are labelled by their (extended) Steinberg index; coordinates are
/// in the simple-root basis.
pub fn complex(sys: &RootSystem, c: &FlagComplex, kind: &str) -> ComplexExport {
    ComplexExport {
        type_symbol: sys.label(),
        kind: kind.to_string(),
        vertices: c
            .vertices()
            .iter()
            .map(|v| VertexExport {
                index: v.0,
                coords: strings(sys.rho(v.0)),
            })
            .collect(),
        edges: c.edges().into_iter().map(|(a, b)| [a.0, b.0]).collect(),
        facets: c.facets().iter().map(|s| s.indices()).collect(),
        f_vector: c.f_vector(),
        euler_characteristic: c.euler_characteristic(),
    }
}

/// The one-skeleton as an undirected DOT graph.
pub fn complex_dot(c: &FlagComplex, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in c.vertices() {
        out.push_str(&format!("  {};\n", v.0));
    }
    for (a, b) in c.edges() {
        out.push_str(&format!("  {} -- {};\n", a.0, b.0));
    }
    out.push_str("}\n");
    out
}

/// Float ambient coordinates `Lᵀc` where `B = LLᵀ`.
#[derive(Debug, Clone)]
pub struct FloatEmbedding {
    lt: Vec<Vec<f64>>,
}

impl FloatEmbedding {
    pub fn new(sys: &RootSystem) -> Result<Self> {
        let n = sys.rank();
        let b: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| sys.gram().get(i, j).to_f64()).collect())
            .collect();
        let mut l = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
                if i == j {
                    let d = b[i][i] - s;
                    if d <= 0.0 {
                        return Err(Error::NotPositiveDefinite);
                    }
                    l[i][j] = d.sqrt();
                } else {
                    l[i][j] = (b[i][j] - s) / l[j][j];
                }
            }
        }
        let lt = (0..n).map(|i| (0..n).map(|j| l[j][i]).collect()).collect();
        Ok(FloatEmbedding { lt })
    }

    pub fn embed(&self, v: &RootVector) -> Vec<f64> {
        let c: Vec<f64> = v.coords().iter().map(FieldElement::to_f64).collect();
        self.lt.iter().map(|row| row.iter().zip(&c).map(|(a, b)| a * b).sum()).collect()
    }
}

fn float17(x: f64) -> String {
    // 17 significant digits round-trip any f64
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// OFF mesh of a rank-3 complex: unit root vertices and triangular facets.
pub fn complex_off(sys: &RootSystem, c: &FlagComplex) -> Result<String> {
    if sys.rank() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            found: sys.rank(),
        });
    }
    let emb = FloatEmbedding::new(sys)?;
    let facets = c.facet_positions();
    let mut out = format!("OFF\n{} {} 0\n", c.vertex_count(), facets.len());
    for v in c.vertices() {
        let x = emb.embed(sys.rho(v.0));
        out.push_str(&x.iter().map(|&t| float17(t)).collect::<Vec<_>>().join(" "));
        out.push('\n');
    }
    for f in facets {
        let ix: Vec<String> = f.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("{} {}\n", f.len(), ix.join(" ")));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverExport {
    /// Steinberg index of the reflection `R` with `R·lower = element`.
    pub reflection: usize,
    pub element: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementExport {
    pub index: usize,
    pub length: usize,
    pub reflections: Vec<usize>,
    pub covers: Vec<CoverExport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalExport {
    #[serde(rename = "type")]
    pub type_symbol: String,
    pub size: usize,
    pub cover_relations: usize,
    pub elements: Vec<ElementExport>,
}

pub fn interval(sys: &RootSystem, poset: &IntervalPoset) -> IntervalExport {
    IntervalExport {
        type_symbol: sys.label(),
        size: poset.len(),
        cover_relations: poset.cover_count(),
        elements: (0..poset.len())
            .map(|w| ElementExport {
                index: w,
                length: poset.length(w),
                reflections: poset.reflection_set(w),
                covers: poset
                    .lower_covers(w)
                    .iter()
                    .map(|&(reflection, element)| CoverExport { reflection, element })
                    .collect(),
            })
            .collect(),
    }
}

/// `(α ∥ β)` for every ordered pair, rows and columns labelled by `EX` index.
pub fn compatibility_csv(cs: &ClusterSystem<'_>, table: &[Vec<FieldElement>]) -> String {
    let labels: Vec<ExtIndex> = cs.roots().iter().map(|r| r.ext).collect();
    csv_string(|w| {
        let mut header = vec![String::new()];
        header.extend(labels.iter().map(|l| l.0.to_string()));
        w.write_record(&header)?;
        for (l, row) in labels.iter().zip(table) {
            let mut rec = vec![l.0.to_string()];
            rec.extend(row.iter().map(FieldElement::to_string));
            w.write_record(&rec)?;
        }
        Ok(())
    })
}
