//! The local cohomology table of `S/I` and everything read off from it.
//!
//! `H^i_m(S/I)_a ≅ H̃_{i−|G_a|−1}(Δ_a; K)`, and the right-hand side depends
//! only on `G_a` and on the nonnegative coordinates capped at `ρ_j − 1`.
//! The table therefore lives on finitely many representative degrees.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::bits::{self, Mask};
use crate::cech::cech_cohomology_dims;
use crate::complex::{degree_complex, stanley_reisner_complex, MultiDegree, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::homology::reduced_homology_dims;
use crate::ideal::MonomialIdeal;

/// A degree with `a_j = −1` on `face` and `0 ≤ a_j ≤ ρ_j − 1` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RepresentativeDegree {
    pub face: Mask,
    coords: Vec<i64>,
}

impl RepresentativeDegree {
    /// `coords` gives the full degree; entries on `face` must be `−1`.
    pub fn new(face: Mask, coords: Vec<i64>) -> Self {
        debug_assert!(coords
            .iter()
            .enumerate()
            .all(|(j, &c)| (c == -1) == bits::contains(face, j)));
        RepresentativeDegree { face, coords }
    }

    pub fn degree(&self) -> MultiDegree {
        MultiDegree::new(self.coords.clone())
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// The coordinates off `face`, in variable order.
    pub fn box_coordinates(&self) -> Vec<i64> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(j, _)| !bits::contains(self.face, *j))
            .map(|(_, &c)| c)
            .collect()
    }

    pub fn box_total(&self) -> i64 {
        self.box_coordinates().iter().sum()
    }

    /// Total degree with the face coordinates at `−1`.
    pub fn total(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn box_is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c <= 0)
    }
}

impl Ord for RepresentativeDegree {
    fn cmp(&self, other: &Self) -> Ordering {
        (bits::size(self.face), self.face, &self.coords).cmp(&(
            bits::size(other.face),
            other.face,
            &other.coords,
        ))
    }
}

impl PartialOrd for RepresentativeDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RepresentativeDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F={} a={}", bits::format_set(self.face), self.degree())
    }
}

/// Every face `F` of `delta` (including `∅`) with every box assignment off `F`.
pub fn representative_degrees(ideal: &MonomialIdeal, delta: &SimplicialComplex) -> Vec<RepresentativeDegree> {
    let rho = ideal.rho();
    let n = ideal.nvars();
    let mut out = Vec::new();
    for face in delta.faces() {
        let mut partial: Vec<Vec<i64>> = vec![Vec::with_capacity(n)];
        for j in 0..n {
            let values: Vec<i64> = if bits::contains(face, j) {
                vec![-1]
            } else {
                (0..rho[j] as i64).collect()
            };
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(|c| RepresentativeDegree::new(face, c)));
    }
    out.sort();
    out
}

/// `H^i` dimensions at one degree from `Δ_a`, indexed by `i = 0..=n`.
pub fn cohomology_at(ideal: &MonomialIdeal, a: &MultiDegree, field: FieldSpec) -> Vec<usize> {
    let n = ideal.nvars();
    let shift = bits::size(a.negative_support()) as i64 + 1;
    let h = reduced_homology_dims(&degree_complex(ideal, a), field);
    let mut dims = vec![0; n + 1];
    for (&k, &d) in &h.dims {
        let i = k + shift;
        if d > 0 {
            debug_assert!((0..=n as i64).contains(&i));
            dims[i as usize] = d;
        }
    }
    dims
}

/// Extended integers for `a_i` and `b_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    NegInf,
    Finite(i64),
    PosInf,
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => write!(f, "-inf"),
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::PosInf => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCohomologyTable {
    pub n: usize,
    pub field: FieldSpec,
    /// Krull dimension `dim Δ + 1` for the Stanley-Reisner complex `Δ` of `√I`.
    pub d: usize,
    pub rho: Vec<u32>,
    pub delta: SimplicialComplex,
    /// Nonzero `dim H^i_m(S/I)_a`, keyed by `(i, representative)`.
    pub entries: BTreeMap<(usize, RepresentativeDegree), usize>,
    pub representatives: usize,
}

pub fn local_cohomology_table(ideal: &MonomialIdeal, field: FieldSpec) -> LocalCohomologyTable {
    let delta = stanley_reisner_complex(&ideal.radical()).expect("radical ideals are square-free");
    let reps = representative_degrees(ideal, &delta);
    let computed: Vec<Vec<usize>> = reps
        .par_iter()
        .map(|r| cohomology_at(ideal, &r.degree(), field))
        .collect();
    let mut entries = BTreeMap::new();
    for (rep, dims) in reps.iter().zip(computed) {
        for (i, d) in dims.into_iter().enumerate() {
            if d > 0 {
                entries.insert((i, rep.clone()), d);
            }
        }
    }
    let d = (delta.dimension() + 1) as usize;
    debug_assert!(entries.keys().all(|(i, _)| *i <= d));
    LocalCohomologyTable {
        n: ideal.nvars(),
        field,
        d,
        rho: ideal.rho(),
        delta,
        entries,
        representatives: reps.len(),
    }
}

impl LocalCohomologyTable {
    pub fn at(&self, i: usize) -> impl Iterator<Item = (&RepresentativeDegree, usize)> {
        self.entries
            .iter()
            .filter(move |((j, _), _)| *j == i)
            .map(|((_, r), &d)| (r, d))
    }

    pub fn dim_at(&self, i: usize, rep: &RepresentativeDegree) -> usize {
        self.entries.get(&(i, rep.clone())).copied().unwrap_or(0)
    }

    pub fn vanishes(&self, i: usize) -> bool {
        self.at(i).next().is_none()
    }

    pub fn depth(&self) -> usize {
        (0..=self.d).find(|&i| !self.vanishes(i)).unwrap_or(self.d)
    }

    /// `H^i` has finite length iff no nonzero entry has a nonempty face.
    pub fn flc(&self, i: usize) -> bool {
        self.at(i).all(|(r, _)| r.face == 0)
    }

    pub fn flc_flags(&self) -> Vec<bool> {
        (0..=self.d).map(|i| self.flc(i)).collect()
    }

    pub fn is_generalized_cm(&self) -> bool {
        (0..self.d).all(|i| self.flc(i))
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.depth() == self.d
    }

    pub fn a_invariant(&self, i: usize) -> Extended {
        self.at(i)
            .map(|(r, _)| r.total())
            .max()
            .map_or(Extended::NegInf, Extended::Finite)
    }

    pub fn b_invariant(&self, i: usize) -> Extended {
        if !self.flc(i) {
            return Extended::NegInf;
        }
        self.at(i)
            .map(|(r, _)| r.total())
            .min()
            .map_or(Extended::PosInf, Extended::Finite)
    }

    /// `max_i (a_i + i)` over nonvanishing `H^i`.
    pub fn regularity(&self) -> i64 {
        (0..=self.d)
            .filter_map(|i| match self.a_invariant(i) {
                Extended::Finite(a) => Some(a + i as i64),
                _ => None,
            })
            .max()
            .expect("H^d of a nonzero quotient never vanishes")
    }

    /// `Σ dim` over the entries at `i` when `H^i` has finite length.
    pub fn total_length(&self, i: usize) -> Option<usize> {
        self.flc(i).then(|| self.at(i).map(|(_, d)| d).sum())
    }
}

pub fn is_flc(ideal: &MonomialIdeal, i: usize, field: FieldSpec) -> bool {
    local_cohomology_table(ideal, field).flc(i)
}

pub fn is_generalized_cm(ideal: &MonomialIdeal, field: FieldSpec) -> bool {
    local_cohomology_table(ideal, field).is_generalized_cm()
}

pub fn is_cohen_macaulay(ideal: &MonomialIdeal, field: FieldSpec) -> bool {
    local_cohomology_table(ideal, field).is_cohen_macaulay()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    /// `false` when the hypothesis of the check does not hold for this input.
    pub applicable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantsReport {
    pub dim: usize,
    pub depth: usize,
    pub a: Vec<Extended>,
    pub b: Vec<Extended>,
    pub reg: i64,
    pub checks: Vec<BoundCheck>,
}

pub const CHECK_A_BOUND: &str = "a_i <= sum(rho) - n";
pub const CHECK_B_NONNEGATIVE: &str = "gcm => b_i >= 0 for i != d";
pub const CHECK_REG_VANISHING: &str = "gcm => H^i = 0 for reg+1 <= i < d";
pub const CHECK_SQUAREFREE_A: &str = "square-free gcm => a_i <= 0";
pub const CHECK_PURE: &str = "square-free gcm => complex pure";

/// Computes the invariants and verifies the bounds they must satisfy.
/// Any failure is returned as a [`Error::TheoremViolation`].
pub fn invariants_report(table: &LocalCohomologyTable) -> Result<InvariantsReport> {
    let d = table.d;
    let a: Vec<Extended> = (0..=d).map(|i| table.a_invariant(i)).collect();
    let b: Vec<Extended> = (0..=d).map(|i| table.b_invariant(i)).collect();
    let reg = table.regularity();
    let gcm = table.is_generalized_cm();
    let squarefree = table.rho.iter().all(|&r| r <= 1);
    let bound = table.rho.iter().map(|&r| r as i64).sum::<i64>() - table.n as i64;

    let worst_at = |i: usize| {
        table
            .at(i)
            .max_by_key(|(r, _)| r.total())
            .map(|(r, _)| format!("i={i} {r}"))
            .unwrap_or_else(|| format!("i={i}"))
    };

    for (i, ai) in a.iter().enumerate() {
        if *ai > Extended::Finite(bound) {
            return Err(Error::violation(CHECK_A_BOUND, worst_at(i)));
        }
    }
    if gcm {
        for i in 0..d {
            if b[i] < Extended::Finite(0) {
                let loc = table
                    .at(i)
                    .min_by_key(|(r, _)| r.total())
                    .map(|(r, _)| format!("i={i} {r}"))
                    .unwrap_or_else(|| format!("i={i}"));
                return Err(Error::violation(CHECK_B_NONNEGATIVE, loc));
            }
        }
        for i in 0..d {
            if (i as i64) >= reg + 1 && !table.vanishes(i) {
                return Err(Error::violation(CHECK_REG_VANISHING, worst_at(i)));
            }
        }
        if squarefree {
            for (i, ai) in a.iter().enumerate() {
                if *ai > Extended::Finite(0) {
                    return Err(Error::violation(CHECK_SQUAREFREE_A, worst_at(i)));
                }
            }
            if !table.delta.is_pure() {
                return Err(Error::violation(CHECK_PURE, table.delta.to_string()));
            }
        }
    }
    let checks = vec![
        BoundCheck { name: CHECK_A_BOUND, applicable: true },
        BoundCheck { name: CHECK_B_NONNEGATIVE, applicable: gcm },
        BoundCheck { name: CHECK_REG_VANISHING, applicable: gcm },
        BoundCheck { name: CHECK_SQUAREFREE_A, applicable: gcm && squarefree },
        BoundCheck { name: CHECK_PURE, applicable: gcm && squarefree },
    ];
    Ok(InvariantsReport {
        dim: d,
        depth: table.depth(),
        a,
        b,
        reg,
        checks,
    })
}

/// One summand `Σ_{F} (Σ_box c · t^box) · Π_{j∈F} t_j^{−1}/(1 − t_j^{−1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertGroup {
    pub face: Mask,
    /// `(coefficient, exponent vector)` with zeros on `face`.
    pub terms: Vec<(usize, Vec<i64>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeriesReport {
    pub n: usize,
    pub by_index: BTreeMap<usize, Vec<HilbertGroup>>,
}

pub fn hilbert_series_report(table: &LocalCohomologyTable) -> HilbertSeriesReport {
    let mut by_index: BTreeMap<usize, BTreeMap<Mask, Vec<(usize, Vec<i64>)>>> = BTreeMap::new();
    for ((i, rep), &dim) in &table.entries {
        let exps = rep.coords().iter().map(|&c| c.max(0)).collect();
        by_index
            .entry(*i)
            .or_default()
            .entry(rep.face)
            .or_default()
            .push((dim, exps));
    }
    let by_index = by_index
        .into_iter()
        .map(|(i, groups)| {
            let mut groups: Vec<HilbertGroup> = groups
                .into_iter()
                .map(|(face, terms)| HilbertGroup { face, terms })
                .collect();
            groups.sort_by_key(|g| (bits::size(g.face), g.face));
            (i, groups)
        })
        .collect();
    HilbertSeriesReport { n: table.n, by_index }
}

fn render_monomial(exps: &[i64]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(j, &e)| if e == 1 { format!("t{}", j + 1) } else { format!("t{}^{}", j + 1, e) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl HilbertGroup {
    pub fn render(&self) -> String {
        let poly: Vec<String> = self
            .terms
            .iter()
            .map(|(c, e)| {
                let m = render_monomial(e);
                match (c, m.as_str()) {
                    (_, "1") => c.to_string(),
                    (1, _) => m,
                    _ => format!("{c}*{m}"),
                }
            })
            .collect();
        let mut s = poly.join(" + ");
        if self.terms.len() > 1 && self.face != 0 {
            s = format!("({s})");
        }
        for j in bits::elements(self.face) {
            s.push_str(&format!(" * t{0}^-1/(1 - t{0}^-1)", j + 1));
        }
        s
    }
}

impl fmt::Display for HilbertSeriesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, groups) in &self.by_index {
            let body: Vec<String> = groups.iter().map(HilbertGroup::render).collect();
            writeln!(f, "H^{i}: {}", body.join(" + "))?;
        }
        Ok(())
    }
}

/// The table predicted by `dim H̃_{i−|F|−1}(lk_Δ F)` for square-free `I`.
pub fn link_table(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BTreeMap<(usize, RepresentativeDegree), usize>> {
    let delta = stanley_reisner_complex(ideal)?;
    let n = ideal.nvars();
    let mut out = BTreeMap::new();
    for face in delta.faces() {
        let h = reduced_homology_dims(&delta.link(face), field);
        let coords: Vec<i64> = (0..n).map(|j| if bits::contains(face, j) { -1 } else { 0 }).collect();
        let rep = RepresentativeDegree::new(face, coords);
        for (&k, &d) in &h.dims {
            if d > 0 {
                let i = (k + bits::size(face) as i64 + 1) as usize;
                out.insert((i, rep.clone()), d);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalComparison {
    /// Representatives (with all box coordinates 0) compared, per `i`.
    pub compared: usize,
    pub gcm: bool,
    pub radical_gcm: bool,
    pub cm: bool,
    pub radical_cm: bool,
}

/// Compares `S/I` with `S/√I` in the degrees with `H_a = ∅`.
pub fn radical_compare(ideal: &MonomialIdeal, field: FieldSpec) -> Result<RadicalComparison> {
    let t = local_cohomology_table(ideal, field);
    let rad = local_cohomology_table(&ideal.radical(), field);
    let mut compared = 0;
    for rep in representative_degrees(ideal, &t.delta) {
        if !rep.box_is_zero() {
            continue;
        }
        for i in 0..=t.d {
            compared += 1;
            if t.dim_at(i, &rep) != rad.dim_at(i, &rep) {
                return Err(Error::violation(
                    "H^i(S/I)_a = H^i(S/rad I)_a when H_a is empty",
                    format!("i={i} {rep}"),
                ));
            }
        }
    }
    let report = RadicalComparison {
        compared,
        gcm: t.is_generalized_cm(),
        radical_gcm: rad.is_generalized_cm(),
        cm: t.is_cohen_macaulay(),
        radical_cm: rad.is_cohen_macaulay(),
    };
    if report.gcm && !report.radical_gcm {
        return Err(Error::violation("gcm(I) => gcm(rad I)", ideal.to_string()));
    }
    if report.radical_gcm && !report.radical_cm && report.cm {
        return Err(Error::violation(
            "rad I gcm and not CM => I not CM",
            ideal.to_string(),
        ));
    }
    Ok(report)
}

/// Compares the table against the Čech complex at every representative and every `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleComparison {
    pub degrees: usize,
    pub mismatches: Vec<(RepresentativeDegree, Vec<usize>, Vec<usize>)>,
}

impl OracleComparison {
    pub fn is_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn compare_with_cech(ideal: &MonomialIdeal, field: FieldSpec) -> OracleComparison {
    let delta = stanley_reisner_complex(&ideal.radical()).expect("radical ideals are square-free");
    let reps = representative_degrees(ideal, &delta);
    let mismatches: Vec<_> = reps
        .par_iter()
        .filter_map(|r| {
            let a = r.degree();
            let hochster = cohomology_at(ideal, &a, field);
            let cech = cech_cohomology_dims(ideal, &a, field);
            (hochster != cech).then(|| (r.clone(), hochster, cech))
        })
        .collect();
    OracleComparison {
        degrees: reps.len(),
        mismatches,
    }
}

/// Nonzero `(i, a) ↦ dim` over the full box `∏ [−1, ρ_j]`. With `prune`, degrees
/// with `G_a ∉ Δ` or some `a_j ≥ ρ_j` are skipped as known to vanish.
pub fn full_box_scan(ideal: &MonomialIdeal, field: FieldSpec, prune: bool) -> BTreeMap<(usize, MultiDegree), usize> {
    let delta = stanley_reisner_complex(&ideal.radical()).expect("radical ideals are square-free");
    let rho = ideal.rho();
    let mut degrees = vec![Vec::new()];
    for &r in &rho {
        degrees = degrees
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-1..=r as i64).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    let degrees: Vec<MultiDegree> = degrees
        .into_iter()
        .map(MultiDegree::new)
        .filter(|a| {
            !prune
                || (delta.contains(a.negative_support())
                    && a.0.iter().zip(&rho).all(|(&c, &r)| c < r as i64))
        })
        .collect();
    let dims: Vec<Vec<usize>> = degrees.par_iter().map(|a| cohomology_at(ideal, a, field)).collect();
    let mut out = BTreeMap::new();
    for (a, ds) in degrees.into_iter().zip(dims) {
        for (i, d) in ds.into_iter().enumerate() {
            if d > 0 {
                out.insert((i, a.clone()), d);
            }
        }
    }
    out
}

/// Finite length of `H^i` read from the definition: every nonzero piece in the
/// full box with `G_a ≠ ∅` must vanish, with negative coordinates sampled at
/// `−1` and `−2`.
pub fn flc_by_degree_scan(ideal: &MonomialIdeal, i: usize, field: FieldSpec) -> bool {
    let n = ideal.nvars();
    let rho = ideal.rho();
    let mut degrees = vec![Vec::new()];
    for &r in &rho {
        degrees = degrees
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-2..=r as i64).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    degrees
        .into_par_iter()
        .map(MultiDegree::new)
        .filter(|a| a.negative_support() != 0)
        .all(|a| i > n || cohomology_at(ideal, &a, field)[i] == 0)
}
