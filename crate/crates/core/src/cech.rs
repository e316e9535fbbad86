//! Degree pieces of the Čech complex of `S/I`, built directly from the
//! localizations: `(R_{x_F})_a` is one-dimensional exactly when `F ⊇ G_a`
//! and every generator `u` has some `j ∉ F` with `ν_j(u) > a_j`, and zero
//! otherwise. This path never forms `Δ_a`, so it serves as an independent
//! check on the degree-complex formula, and it carries the multiplication
//! maps needed for the k-Buchsbaum index.

use std::collections::{BTreeMap, HashMap};

use crate::bits::{self, Mask};
use crate::complex::{exceed_set, MultiDegree};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::ideal::MonomialIdeal;
use crate::linalg::{exact_rank, extend_basis, solve_in_span, DenseMatrix, IntMatrix};

/// The complex `C•_a`: admitted subsets per cohomological degree and the
/// differentials between consecutive bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeComplex {
    pub degree: MultiDegree,
    /// `bases[t]`: admitted subsets of size `t`, ascending by mask.
    pub bases: Vec<Vec<Mask>>,
    /// `differentials[t] : C^t_a → C^{t+1}_a`, rows indexed by `bases[t + 1]`.
    pub differentials: Vec<IntMatrix>,
}

struct Admission {
    negative: Mask,
    exceed: Vec<Mask>,
}

impl Admission {
    fn new(ideal: &MonomialIdeal, a: &MultiDegree) -> Self {
        Admission {
            negative: a.negative_support(),
            exceed: ideal.gens().iter().map(|u| exceed_set(&a.0, u)).collect(),
        }
    }

    #[inline]
    fn admits(&self, f: Mask) -> bool {
        f & self.negative == self.negative && self.exceed.iter().all(|&w| w & !f != 0)
    }
}

/// Size-`t` subsets admitted at degree `a`, ascending by mask.
pub fn cech_degree_basis(ideal: &MonomialIdeal, a: &MultiDegree, t: usize) -> Vec<Mask> {
    let adm = Admission::new(ideal, a);
    bits::submasks_of_size(bits::full(ideal.nvars()), t)
        .filter(|&f| adm.admits(f))
        .collect()
}

fn cech_differential(source: &[Mask], target: &[Mask]) -> IntMatrix {
    let mut m = IntMatrix::zeros(target.len(), source.len());
    for (c, &f) in source.iter().enumerate() {
        for (r, &g) in target.iter().enumerate() {
            if g & f == f {
                let extra = (g & !f).trailing_zeros() as usize;
                let s = bits::rank_in(g, extra);
                m.set(r, c, if s % 2 == 0 { 1 } else { -1 });
            }
        }
    }
    m
}

pub fn cech_degree_complex(ideal: &MonomialIdeal, a: &MultiDegree) -> DegreeComplex {
    let n = ideal.nvars();
    let adm = Admission::new(ideal, a);
    let mut bases = vec![Vec::new(); n + 1];
    for f in bits::submasks(bits::full(n)) {
        if adm.admits(f) {
            bases[bits::size(f)].push(f);
        }
    }
    for b in &mut bases {
        b.sort_unstable();
    }
    let differentials: Vec<IntMatrix> = (0..n)
        .map(|t| cech_differential(&bases[t], &bases[t + 1]))
        .collect();
    let c = DegreeComplex {
        degree: a.clone(),
        bases,
        differentials,
    };
    debug_assert!(c.is_complex(), "Čech differentials must square to zero");
    c
}

impl DegreeComplex {
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[1].mul(&w[0]).is_zero())
    }

    pub fn cohomology_dims(&self, field: FieldSpec) -> Vec<usize> {
        let ranks: Vec<usize> = self
            .differentials
            .iter()
            .map(|d| exact_rank(d, field))
            .collect();
        (0..self.bases.len())
            .map(|t| {
                let out = ranks.get(t).copied().unwrap_or(0);
                let inc = if t == 0 { 0 } else { ranks[t - 1] };
                self.bases[t].len() - out - inc
            })
            .collect()
    }
}

/// `dim H^t(C•_a)` for `t = 0..=n`.
pub fn cech_cohomology_dims(ideal: &MonomialIdeal, a: &MultiDegree, field: FieldSpec) -> Vec<usize> {
    cech_degree_complex(ideal, a).cohomology_dims(field)
}

/// Multiplication by `x_j` as a chain map `C•_a → C•_{a+e_j}`: one 0/1 matrix
/// per cohomological degree, `b_F ↦ b_F` when `F` survives at the target.
pub fn multiplication_map(ideal: &MonomialIdeal, a: &MultiDegree, j: usize) -> Vec<IntMatrix> {
    let src = cech_degree_complex(ideal, a);
    let dst = cech_degree_complex(ideal, &a.add_unit(j));
    src.bases
        .iter()
        .zip(&dst.bases)
        .map(|(s, d)| inclusion_matrix(s, d))
        .collect()
}

fn inclusion_matrix(source: &[Mask], target: &[Mask]) -> IntMatrix {
    let mut m = IntMatrix::zeros(target.len(), source.len());
    for (c, f) in source.iter().enumerate() {
        if let Ok(r) = target.binary_search(f) {
            m.set(r, c, 1);
        }
    }
    m
}

/// Checks `d_{a+e_j} ∘ M_t = M_{t+1} ∘ d_a` in every degree.
pub fn multiplication_commutes(ideal: &MonomialIdeal, a: &MultiDegree, j: usize) -> bool {
    let src = cech_degree_complex(ideal, a);
    let dst = cech_degree_complex(ideal, &a.add_unit(j));
    let maps = multiplication_map(ideal, a, j);
    (0..src.differentials.len()).all(|t| {
        dst.differentials[t].mul(&maps[t]) == maps[t + 1].mul(&src.differentials[t])
    })
}

/// A chosen basis of `H^t(C•_a)`: cocycle representatives that complete a
/// basis of the coboundaries to a basis of the cocycles.
#[derive(Debug, Clone)]
pub struct CohomologyBasis<E> {
    pub cochains: Vec<Mask>,
    pub coboundaries: Vec<Vec<E>>,
    pub representatives: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> CohomologyBasis<E> {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of a cocycle in the representative basis (modulo coboundaries).
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, cocycle: &[E]) -> Vec<E> {
        let mut cols = self.coboundaries.clone();
        cols.extend(self.representatives.iter().cloned());
        let x = solve_in_span(f, self.cochains.len(), &cols, cocycle)
            .expect("vector passed to coordinates() must be a cocycle");
        x[self.coboundaries.len()..].to_vec()
    }
}

pub fn cohomology_basis<F: Field>(
    f: &F,
    ideal: &MonomialIdeal,
    a: &MultiDegree,
    t: usize,
) -> CohomologyBasis<F::Elem> {
    let cx = cech_degree_complex(ideal, a);
    let dim = cx.bases[t].len();
    let coboundaries: Vec<Vec<F::Elem>> = if t == 0 {
        Vec::new()
    } else {
        let d = cx.differentials[t - 1].to_field(f);
        let pivots = d.clone().rref_in_place(f);
        pivots.into_iter().map(|c| d.column(c)).collect()
    };
    let cocycles = if t < cx.differentials.len() {
        cx.differentials[t].to_field(f).kernel(f)
    } else {
        DenseMatrix::filled(0, dim, f.zero()).kernel(f)
    };
    let chosen = extend_basis(f, dim, &coboundaries, &cocycles);
    let representatives = chosen.into_iter().map(|i| cocycles[i].clone()).collect();
    CohomologyBasis {
        cochains: cx.bases[t].clone(),
        coboundaries,
        representatives,
    }
}

/// The map `H^t_a → H^t_b` induced by the inclusion of admitted subsets,
/// i.e. multiplication by `x^{b-a}` for `b ≥ a`. Columns index the source basis.
pub fn induced_map<F: Field>(
    f: &F,
    source: &CohomologyBasis<F::Elem>,
    target: &CohomologyBasis<F::Elem>,
) -> DenseMatrix<F::Elem> {
    let mut m = DenseMatrix::filled(target.dim(), source.dim(), f.zero());
    for (c, z) in source.representatives.iter().enumerate() {
        let mut image = vec![f.zero(); target.cochains.len()];
        for (idx, mask) in source.cochains.iter().enumerate() {
            if let Ok(r) = target.cochains.binary_search(mask) {
                image[r] = z[idx].clone();
            }
        }
        let coords = target.coordinates(f, &image);
        for (r, v) in coords.into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    m
}

/// Outcome of the k-Buchsbaum search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KIndex {
    /// Minimal `k` with `m^k H^i = 0` for all `i ≠ dim`. `vacuous` when every such `H^i` is zero.
    Finite { k: usize, vacuous: bool },
    AboveCap,
    /// Some `H^i`, `i ≠ dim`, has infinite length.
    Infinite,
}

impl std::fmt::Display for KIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KIndex::Finite { k, .. } => write!(f, "{k}"),
            KIndex::AboveCap => write!(f, "above_cap"),
            KIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// `Σρ_j − n + 1` plus a margin of 2.
pub fn default_k_cap(ideal: &MonomialIdeal) -> usize {
    (ideal.rho_excess() + 1 + 2) as usize
}

/// One Čech-side scan over the degrees `a` with `a_j = −1` on `F` and
/// `0 ≤ a_j ≤ ρ_j − 1` elsewhere, for every `F ⊆ [n]`.
#[derive(Debug, Clone)]
pub struct CechScan {
    /// Krull dimension: the largest `t` with a nonzero piece.
    pub dim: usize,
    /// Nonzero pieces `(t, a, dim H^t_a)`.
    pub nonzero: Vec<(usize, MultiDegree, usize)>,
}

impl CechScan {
    pub fn run(ideal: &MonomialIdeal, field: FieldSpec) -> Self {
        let n = ideal.nvars();
        let rho = ideal.rho();
        let mut nonzero = Vec::new();
        for neg in bits::submasks(bits::full(n)) {
            for a in box_points(&rho, neg) {
                let dims = cech_cohomology_dims(ideal, &a, field);
                for (t, &d) in dims.iter().enumerate() {
                    if d > 0 {
                        nonzero.push((t, a.clone(), d));
                    }
                }
            }
        }
        let dim = nonzero.iter().map(|(t, _, _)| *t).max().unwrap_or(0);
        CechScan { dim, nonzero }
    }

    /// Finite length for `H^t`: no nonzero piece with a negative coordinate.
    pub fn finite_length(&self, t: usize) -> bool {
        self.nonzero
            .iter()
            .filter(|(s, _, _)| *s == t)
            .all(|(_, a, _)| a.negative_support() == 0)
    }
}

/// The degrees with `a_j = −1` for `j ∈ neg` and `a_j ∈ [0, ρ_j − 1]` otherwise,
/// in lexicographic order.
pub fn box_points(rho: &[u32], neg: Mask) -> Vec<MultiDegree> {
    let n = rho.len();
    let mut out = vec![Vec::with_capacity(n)];
    for j in 0..n {
        let range: Vec<i64> = if bits::contains(neg, j) {
            vec![-1]
        } else {
            (0..rho[j] as i64).collect()
        };
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                range.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(MultiDegree).collect()
}

/// The minimal `k ≤ cap` such that `m^k` annihilates `H^i_m(S/I)` for all `i ≠ dim S/I`.
///
/// Composite multiplication maps are built layer by layer along monotone
/// lattice paths; whenever two paths reach the same degree their composites
/// must agree, and a disagreement is reported as a theorem violation.
pub fn k_buchsbaum_index(ideal: &MonomialIdeal, field: FieldSpec, cap: usize) -> Result<KIndex> {
    let scan = CechScan::run(ideal, field);
    match field {
        FieldSpec::Rationals => k_index_over(&Rationals, ideal, &scan, cap),
        FieldSpec::PrimeField(p) => k_index_over(&PrimeField::new(p), ideal, &scan, cap),
    }
}

fn k_index_over<F: Field>(
    f: &F,
    ideal: &MonomialIdeal,
    scan: &CechScan,
    cap: usize,
) -> Result<KIndex> {
    let d = scan.dim;
    if (0..d).any(|t| !scan.finite_length(t)) {
        return Ok(KIndex::Infinite);
    }
    let n = ideal.nvars();
    let starts: Vec<(usize, &MultiDegree)> = scan
        .nonzero
        .iter()
        .filter(|(t, _, _)| *t < d)
        .map(|(t, a, _)| (*t, a))
        .collect();
    if starts.is_empty() {
        return Ok(KIndex::Finite { k: 1, vacuous: true });
    }

    let mut bases: HashMap<(usize, MultiDegree), CohomologyBasis<F::Elem>> = HashMap::new();
    let mut steps: HashMap<(usize, MultiDegree, usize), DenseMatrix<F::Elem>> = HashMap::new();
    let mut worst = 0;
    for (t, start) in starts {
        let mut layer: BTreeMap<MultiDegree, DenseMatrix<F::Elem>> = BTreeMap::new();
        let basis = bases
            .entry((t, start.clone()))
            .or_insert_with(|| cohomology_basis(f, ideal, start, t));
        let dim = basis.dim();
        let mut id = DenseMatrix::filled(dim, dim, f.zero());
        for i in 0..dim {
            id.set(i, i, f.one());
        }
        layer.insert(start.clone(), id);

        let mut found = None;
        for k in 1..=cap {
            let mut next: BTreeMap<MultiDegree, DenseMatrix<F::Elem>> = BTreeMap::new();
            for (c, comp) in &layer {
                for j in 0..n {
                    let c2 = c.add_unit(j);
                    let key = (t, c.clone(), j);
                    if !steps.contains_key(&key) {
                        let src = bases
                            .entry((t, c.clone()))
                            .or_insert_with(|| cohomology_basis(f, ideal, c, t))
                            .clone();
                        let dst = bases
                            .entry((t, c2.clone()))
                            .or_insert_with(|| cohomology_basis(f, ideal, &c2, t));
                        steps.insert(key.clone(), induced_map(f, &src, dst));
                    }
                    let step = &steps[&key];
                    if step.rows == 0 {
                        continue;
                    }
                    let composite = step.mul_mat(f, comp);
                    match next.get(&c2) {
                        Some(prev) if *prev != composite => {
                            return Err(Error::violation(
                                "path independence of multiplication maps",
                                format!("H^{t} from {start} to {c2}"),
                            ));
                        }
                        Some(_) => {}
                        None => {
                            next.insert(c2, composite);
                        }
                    }
                }
            }
            next.retain(|_, m| !m.is_zero(f));
            if next.is_empty() {
                found = Some(k);
                break;
            }
            layer = next;
        }
        match found {
            Some(k) => worst = worst.max(k),
            None => return Ok(KIndex::AboveCap),
        }
    }
    Ok(KIndex::Finite {
        k: worst,
        vacuous: false,
    })
}
