//! Combinatorial tests for finite length of `H^i_m(S/I)`, phrased through
//! `L(a, u) = { i : ν_i(u) > a_i }` and the saturation `a(σ)` that raises
//! the coordinates in `σ` to `ρ`.
//!
//! Throughout, `G_0(I)` is the set of generators with at least two variables
//! in their support, and `[m]` is the set of variables without a pure-power
//! generator (the vertex set of the Stanley-Reisner complex of `√I`).

use rayon::prelude::*;

use crate::bits::{self, Mask};
use crate::complex::{degree_complex, exceed_set, stanley_reisner_complex, MultiDegree, SimplicialComplex};
use crate::error::{Error, Result};
use crate::ideal::{Monomial, MonomialIdeal};

pub fn l_set(a: &MultiDegree, u: &Monomial) -> Mask {
    exceed_set(&a.0, u)
}

/// `a(σ)`: `a` with the coordinates in `σ` replaced by `ρ`.
pub fn sigma_extend(a: &MultiDegree, sigma: Mask, rho: &[u32]) -> MultiDegree {
    MultiDegree::new(
        a.0.iter()
            .enumerate()
            .map(|(j, &c)| if bits::contains(sigma, j) { rho[j] as i64 } else { c })
            .collect(),
    )
}

/// A box point `0 ≤ a ≤ ρ − 1` with `L(a(σ), u) ≠ ∅` for every `u ∈ G_0(I)`.
/// Coordinates in `σ` are stored as `ρ_j − 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdmissibleDegree {
    pub sigma: Mask,
    pub a: MultiDegree,
    pub maximal: bool,
}

struct Setup {
    n: usize,
    rho: Vec<u32>,
    g0: Vec<Monomial>,
    m: Mask,
    delta: SimplicialComplex,
}

impl Setup {
    fn new(ideal: &MonomialIdeal) -> Self {
        let split = ideal.split_generators();
        Setup {
            n: ideal.nvars(),
            rho: ideal.rho(),
            m: split.free_variables(ideal.nvars()),
            g0: split.mixed,
            delta: stanley_reisner_complex(&ideal.radical()).expect("radical ideals are square-free"),
        }
    }

    fn all_nonempty(&self, a: &MultiDegree) -> bool {
        self.g0.iter().all(|u| l_set(a, u) != 0)
    }

    /// All admissible points for `σ`, flagged for maximality.
    fn admissible(&self, sigma: Mask) -> Vec<AdmissibleDegree> {
        let mut points = vec![Vec::with_capacity(self.n)];
        for j in 0..self.n {
            let top = self.rho[j] as i64 - 1;
            let range: Vec<i64> = if bits::contains(sigma, j) { vec![top] } else { (0..=top).collect() };
            points = points
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    range.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        let ok: Vec<MultiDegree> = points
            .into_iter()
            .map(MultiDegree::new)
            .filter(|a| self.all_nonempty(&sigma_extend(a, sigma, &self.rho)))
            .collect();
        // Admissible points form a down-set of the box, so a point is maximal
        // exactly when no single coordinate outside σ can be raised.
        ok.iter()
            .map(|a| {
                let maximal = (0..self.n).filter(|&j| !bits::contains(sigma, j)).all(|j| {
                    a.0[j] == self.rho[j] as i64 - 1
                        || !self.all_nonempty(&sigma_extend(&a.add_unit(j), sigma, &self.rho))
                });
                AdmissibleDegree {
                    sigma,
                    a: a.clone(),
                    maximal,
                }
            })
            .collect()
    }

    fn maximal(&self, sigma: Mask) -> Vec<AdmissibleDegree> {
        self.admissible(sigma).into_iter().filter(|d| d.maximal).collect()
    }

    /// Some `ℓ ∈ [m] ∖ σ` with `a_ℓ = ρ_ℓ − 1` and `L(a(σ ∪ {ℓ}), u) ≠ ∅`
    /// for every `u ∈ G_0(I)` with `ν_ℓ(u) = ρ_ℓ`.
    fn find_ell(&self, sigma: Mask, a: &MultiDegree) -> Option<usize> {
        bits::elements(self.m & !sigma).find(|&l| {
            a.0[l] == self.rho[l] as i64 - 1 && {
                let ext = sigma_extend(a, sigma | (1 << l), &self.rho);
                self.g0
                    .iter()
                    .filter(|u| u.nu(l) == self.rho[l])
                    .all(|u| l_set(&ext, u) != 0)
            }
        })
    }

    fn necessary(&self, i: usize) -> NecessaryCondition {
        let faces: &[Mask] = if i == 0 { &[] } else { self.delta.faces_of_dim(i as i64 - 1) };
        let failures: Vec<(Mask, MultiDegree)> = faces
            .par_iter()
            .flat_map_iter(|&sigma| {
                self.maximal(sigma)
                    .into_iter()
                    .filter(move |d| self.find_ell(sigma, &d.a).is_none())
                    .map(move |d| (sigma, d.a))
            })
            .collect();
        NecessaryCondition {
            i,
            witness: failures.into_iter().next(),
        }
    }

    /// `L_a = { ℓ : L(a(j), u) = {ℓ} for some u ∈ G_0(I) }`.
    fn l_a(&self, j: usize, a: &MultiDegree) -> Mask {
        let ext = sigma_extend(a, 1 << j, &self.rho);
        self.g0
            .iter()
            .map(|u| l_set(&ext, u))
            .filter(|&l| bits::size(l) == 1)
            .fold(0, |acc, l| acc | l)
    }

    /// No nonempty disjoint `P, Q` covering `[m] ∖ {j} − L_a` with every
    /// cross pair `{x, y}` equal to `L(a(j), u)` for some `u`. Equivalently the
    /// graph of pairs not of that form is connected on that vertex set.
    fn no_bipartition(&self, j: usize, a: &MultiDegree) -> bool {
        let ext = sigma_extend(a, 1 << j, &self.rho);
        let bad: Vec<Mask> = self
            .g0
            .iter()
            .map(|u| l_set(&ext, u))
            .filter(|&l| bits::size(l) == 2)
            .collect();
        let verts: Vec<usize> = bits::elements(self.m & !(1 << j) & !self.l_a(j, a)).collect();
        if verts.len() <= 1 {
            return true;
        }
        let mut seen = vec![false; verts.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for y in 0..verts.len() {
                let pair = (1 << verts[x]) | (1 << verts[y]);
                if !seen[y] && !bad.contains(&pair) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// All admissible points for `σ` that are maximal.
pub fn maximal_admissible_degrees(ideal: &MonomialIdeal, sigma: Mask) -> Result<Vec<AdmissibleDegree>> {
    let s = Setup::new(ideal);
    if !s.delta.contains(sigma) {
        return Err(Error::NotAFace {
            face: bits::format_set(sigma),
        });
    }
    Ok(s.maximal(sigma))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessaryCondition {
    pub i: usize,
    /// A face `σ` and maximal `a` for which no `ℓ` exists.
    pub witness: Option<(Mask, MultiDegree)>,
}

impl NecessaryCondition {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// The condition every `(i−1)`-face and maximal admissible point must meet
/// when `H^i_m(S/I)` has finite length (`i ≥ 1`).
pub fn check_necessary_condition(ideal: &MonomialIdeal, i: usize) -> NecessaryCondition {
    Setup::new(ideal).necessary(i)
}

fn require_dim(s: &Setup, expected: i64) -> Result<()> {
    let found = s.delta.dimension();
    if found != expected {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Generalized CM test for `dim S/I = 2`. Requires `dim Δ = 1`.
pub fn check_dim2(ideal: &MonomialIdeal) -> Result<bool> {
    let s = Setup::new(ideal);
    require_dim(&s, 1)?;
    Ok(s.necessary(1).holds())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dim3Clauses {
    /// ℓ-existence for every vertex `j` and maximal `a`.
    pub vertices: NecessaryCondition,
    /// First `(j, a)` where a disconnecting bipartition exists.
    pub bipartition_witness: Option<(usize, MultiDegree)>,
    /// ℓ-existence on edges.
    pub edges: NecessaryCondition,
}

impl Dim3Clauses {
    pub fn holds(&self) -> bool {
        self.vertices.holds() && self.bipartition_witness.is_none() && self.edges.holds()
    }
}

pub fn dim3_clauses(ideal: &MonomialIdeal) -> Result<Dim3Clauses> {
    let s = Setup::new(ideal);
    require_dim(&s, 2)?;
    let vertices = s.necessary(1);
    let js: Vec<usize> = bits::elements(s.m).collect();
    let bipartition_witness = js
        .par_iter()
        .flat_map_iter(|&j| {
            let s = &s;
            s.maximal(1 << j)
                .into_iter()
                .filter(move |d| !s.no_bipartition(j, &d.a))
                .map(move |d| (j, d.a))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .next();
    let edges = s.necessary(2);
    Ok(Dim3Clauses {
        vertices,
        bipartition_witness,
        edges,
    })
}

/// Generalized CM test for `dim S/I = 3`. Requires `dim Δ = 2`.
pub fn check_dim3(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(dim3_clauses(ideal)?.holds())
}

/// The bipartition test at an arbitrary box point `a` for the vertex `j`.
pub fn no_disconnecting_bipartition(ideal: &MonomialIdeal, j: usize, a: &MultiDegree) -> bool {
    Setup::new(ideal).no_bipartition(j, a)
}

/// Vertices of `Δ_a` for `G_a = {j}` and `a ≤ ρ − 1` off `j`, read off from `L`:
/// `{ ℓ ∈ [m] ∖ {j} : L(a({ℓ, j}), u) ≠ ∅ for all u ∈ G_0(I) }`.
/// Checked against the vertex set of the degree complex itself.
pub fn vertex_set_delta_a(ideal: &MonomialIdeal, a: &MultiDegree) -> Result<Mask> {
    let s = Setup::new(ideal);
    let g = a.negative_support();
    if bits::size(g) != 1 || g & s.m == 0 {
        return Err(Error::PreconditionViolation(format!(
            "G_a = {} must be a single vertex of the complex",
            bits::format_set(g)
        )));
    }
    let j = g.trailing_zeros() as usize;
    if (0..s.n).any(|k| k != j && a.0[k] >= s.rho[k] as i64) {
        return Err(Error::PreconditionViolation(format!("{a} is outside the box a <= rho - 1")));
    }
    let direct = degree_complex(ideal, a);
    if direct.is_void() {
        return Err(Error::PreconditionViolation(format!("degree complex at {a} is void")));
    }
    let predicted = bits::elements(s.m & !g)
        .filter(|&l| s.all_nonempty(&sigma_extend(a, g | (1 << l), &s.rho)))
        .fold(0, |acc, l| acc | (1 << l));
    let actual = direct.vertices();
    if predicted != actual {
        return Err(Error::violation(
            "vertex set of the degree complex",
            format!("a={a}: predicted {} found {}", bits::format_set(predicted), bits::format_set(actual)),
        ));
    }
    Ok(predicted)
}

/// Purity of the Stanley-Reisner complex, necessary for generalized CM in the square-free case.
pub fn purity_check(ideal: &MonomialIdeal) -> Result<bool> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquareFree);
    }
    Ok(stanley_reisner_complex(ideal)?.is_pure())
}
