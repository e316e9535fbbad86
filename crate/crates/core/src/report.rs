//! The full analysis of one ideal, as a serializable report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::analyzer::{
    compare_with_cech, invariants_report, local_cohomology_table, Extended, InvariantsReport,
    LocalCohomologyTable,
};
use crate::bits;
use crate::cech::{default_k_cap, k_buchsbaum_index, KIndex};
use crate::characterizations::{check_dim2, check_dim3, check_necessary_condition};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::io::IdealDocument;
use crate::MonomialIdeal;

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::NegInf => s.serialize_str("-inf"),
            Extended::Finite(v) => s.serialize_i64(*v),
            Extended::PosInf => s.serialize_str("inf"),
        }
    }
}

impl Serialize for KIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            KIndex::Finite { k, .. } => s.serialize_u64(*k as u64),
            KIndex::AboveCap => s.serialize_str("above_cap"),
            KIndex::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealSummary {
    pub n: usize,
    pub name: Option<String>,
    pub gens: Vec<String>,
    pub rho: Vec<u32>,
    pub radical: Vec<String>,
}

impl IdealSummary {
    pub fn new(ideal: &MonomialIdeal, name: Option<String>) -> Self {
        IdealSummary {
            n: ideal.nvars(),
            name,
            gens: ideal.gens().iter().map(|g| g.to_string()).collect(),
            rho: ideal.rho(),
            radical: ideal.radical().gens().iter().map(|g| g.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub i: usize,
    /// 1-based negative support.
    #[serde(rename = "F")]
    pub face: Vec<usize>,
    /// The full representative degree, `−1` on `F`.
    #[serde(rename = "box")]
    pub degree: Vec<i64>,
    pub dim: usize,
}

pub fn table_rows(table: &LocalCohomologyTable) -> Vec<TableRow> {
    table
        .entries
        .iter()
        .map(|((i, rep), &dim)| TableRow {
            i: *i,
            face: bits::one_based(rep.face),
            degree: rep.coords().to_vec(),
            dim,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub ideal: IdealSummary,
    pub field: FieldSpec,
    pub dim: usize,
    pub depth: usize,
    pub table: Vec<TableRow>,
    pub a: Vec<Extended>,
    pub b: Vec<Extended>,
    pub reg: i64,
    pub flc: Vec<bool>,
    pub gcm: bool,
    pub cm: bool,
    pub k_index: KIndex,
    pub checks: BTreeMap<String, Value>,
}

/// Result of comparing a user `assert` with the computed report.
fn check_assert(key: &str, value: Option<&str>, inv: &InvariantsReport, table: &LocalCohomologyTable) -> &'static str {
    let flag = |v: bool| match value {
        None | Some("true") => Some(v),
        Some("false") => Some(!v),
        Some(_) => None,
    };
    let verdict = match key {
        "gcm" => flag(table.is_generalized_cm()),
        "cm" => flag(table.is_cohen_macaulay()),
        "dim" => value.and_then(|v| v.parse::<usize>().ok()).map(|d| d == inv.dim),
        "depth" => value.and_then(|v| v.parse::<usize>().ok()).map(|d| d == inv.depth),
        // A q-linear resolution forces reg S/I = q − 1, and then H^i = 0 for
        // q ≤ i < d when S/I is generalized CM.
        "linear" => value.and_then(|v| v.parse::<i64>().ok()).map(|q| {
            inv.reg == q - 1
                && (!table.is_generalized_cm()
                    || (0..inv.dim).all(|i| (i as i64) < q || table.vanishes(i)))
        }),
        _ => return "unknown",
    };
    match verdict {
        Some(true) => "consistent",
        Some(false) => "inconsistent",
        None => "unknown",
    }
}

pub fn analyze(doc: &IdealDocument, field: FieldSpec, k_cap: Option<usize>) -> Result<AnalysisReport> {
    let ideal = &doc.ideal;
    let table = local_cohomology_table(ideal, field);
    let inv = invariants_report(&table)?;
    let mut checks = BTreeMap::new();
    for c in &inv.checks {
        checks.insert(c.name.to_string(), json!(if c.applicable { "pass" } else { "n/a" }));
    }

    let oracle = compare_with_cech(ideal, field);
    if let Some((rep, h, c)) = oracle.mismatches.first() {
        return Err(Error::TheoremViolation {
            check: "degree complex and Cech complex agree".into(),
            location: format!("{rep}: {h:?} vs {c:?}"),
        });
    }
    checks.insert("cech_oracle".into(), json!(format!("{} degrees", oracle.degrees)));

    for i in 1..table.d {
        if table.flc(i) {
            let nc = check_necessary_condition(ideal, i);
            if let Some((sigma, a)) = nc.witness {
                return Err(Error::TheoremViolation {
                    check: "finite length implies the l-condition".into(),
                    location: format!("i={i} sigma={} a={a}", bits::format_set(sigma)),
                });
            }
        }
    }
    if table.d >= 2 {
        checks.insert("necessary_condition".into(), json!("pass"));
    }

    let comb = match table.d {
        2 => Some(check_dim2(ideal)?),
        3 => Some(check_dim3(ideal)?),
        _ => None,
    };
    if let Some(c) = comb {
        if c != table.is_generalized_cm() {
            return Err(Error::TheoremViolation {
                check: format!("dimension-{} characterization matches homology", table.d),
                location: ideal.to_string(),
            });
        }
        checks.insert(format!("dim{}_characterization", table.d), json!(c));
    }

    let cap = k_cap.unwrap_or_else(|| default_k_cap(ideal));
    let k_index = k_buchsbaum_index(ideal, field, cap)?;
    if table.is_generalized_cm() {
        let bound = (ideal.rho_excess() + 1) as usize;
        let ok = match k_index {
            KIndex::Finite { k, .. } => k <= bound,
            KIndex::AboveCap => cap < bound,
            KIndex::Infinite => false,
        };
        if !ok {
            return Err(Error::TheoremViolation {
                check: "k-Buchsbaum index at most sum(rho) - n + 1".into(),
                location: format!("index {k_index}, bound {bound}"),
            });
        }
        checks.insert("k_index_bound".into(), json!("pass"));
    }

    for (key, value) in &doc.asserts {
        checks.insert(
            format!("assert:{key}"),
            json!(check_assert(key, value.as_deref(), &inv, &table)),
        );
    }

    Ok(AnalysisReport {
        ideal: IdealSummary::new(ideal, doc.name.clone()),
        field,
        dim: inv.dim,
        depth: inv.depth,
        table: table_rows(&table),
        a: inv.a,
        b: inv.b,
        reg: inv.reg,
        flc: table.flc_flags(),
        gcm: table.is_generalized_cm(),
        cm: table.is_cohen_macaulay(),
        k_index,
        checks,
    })
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        if let Some(name) = &self.ideal.name {
            writeln!(s, "name: {name}").unwrap();
        }
        writeln!(s, "ideal: ({}) in {} variables", self.ideal.gens.join(", "), self.ideal.n).unwrap();
        writeln!(s, "field: {}", self.field).unwrap();
        writeln!(s, "dim {}, depth {}, reg {}", self.dim, self.depth, self.reg).unwrap();
        writeln!(s, "local cohomology (nonzero representatives):").unwrap();
        for row in &self.table {
            let face: Vec<String> = row.face.iter().map(|v| v.to_string()).collect();
            writeln!(s, "  H^{}  F={{{}}}  a=({})  dim {}", row.i, face.join(","), join(&row.degree), row.dim).unwrap();
        }
        writeln!(s, "a_i: [{}]", join(&self.a)).unwrap();
        writeln!(s, "b_i: [{}]", join(&self.b)).unwrap();
        writeln!(s, "finite length: [{}]", join(&self.flc)).unwrap();
        writeln!(s, "generalized CM: {}", self.gcm).unwrap();
        writeln!(s, "Cohen-Macaulay: {}", self.cm).unwrap();
        writeln!(s, "k-Buchsbaum index: {}", self.k_index).unwrap();
        writeln!(s, "checks:").unwrap();
        for (k, v) in &self.checks {
            let v = match v {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            writeln!(s, "  {k}: {v}").unwrap();
        }
        s
    }
}
