//! Generalized CM candidates built from a square-free seed `J` by putting
//! exponents on the variables of each generator.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::analyzer::local_cohomology_table;
use crate::characterizations::{check_dim2, check_dim3};
use crate::corpus::krull_dimension;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ideal::{Monomial, MonomialIdeal};

/// For each seed generator (in the seed's generator order), the exponent
/// tuples placed on its support, one monomial per tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentAssignment {
    pub tuples: Vec<Vec<Vec<u32>>>,
}

impl ExponentAssignment {
    pub fn ones(seed: &MonomialIdeal) -> Self {
        ExponentAssignment {
            tuples: seed
                .gens()
                .iter()
                .map(|g| vec![vec![1; g.degree() as usize]])
                .collect(),
        }
    }

    /// One tuple per generator.
    pub fn single(tuples: Vec<Vec<u32>>) -> Self {
        ExponentAssignment {
            tuples: tuples.into_iter().map(|t| vec![t]).collect(),
        }
    }
}

pub fn apply_assignment(seed: &MonomialIdeal, assignment: &ExponentAssignment) -> Result<MonomialIdeal> {
    if !seed.is_squarefree() {
        return Err(Error::NotSquareFree);
    }
    if assignment.tuples.len() != seed.gens().len() {
        return Err(Error::LengthMismatch {
            expected: seed.gens().len(),
            found: assignment.tuples.len(),
        });
    }
    let n = seed.nvars();
    let mut raw = Vec::new();
    for (k, (g, tuples)) in seed.gens().iter().zip(&assignment.tuples).enumerate() {
        if tuples.is_empty() {
            return Err(Error::PreconditionViolation(format!("generator {g} has no exponent tuple")));
        }
        let support: Vec<usize> = (0..n).filter(|&j| g.nu(j) > 0).collect();
        for t in tuples {
            if t.len() != support.len() {
                return Err(Error::LengthMismatch {
                    expected: support.len(),
                    found: t.len(),
                });
            }
            let mut exps = vec![0; n];
            for (pos, (&j, &e)) in support.iter().zip(t).enumerate() {
                if e < 1 {
                    return Err(Error::NonPositiveExponent {
                        position: k * n + pos,
                        value: e as i64,
                    });
                }
                exps[j] = e;
            }
            raw.push(Monomial::new(exps));
        }
    }
    let ideal = MonomialIdeal::new(&raw, n)?;
    if ideal.radical() != *seed {
        return Err(Error::violation("radical of an exponent assignment is the seed", ideal.to_string()));
    }
    Ok(ideal)
}

/// Permutations `p` of the variables with `J` mapped onto itself.
/// Exhaustive for `n ≤ 8`; larger seeds use the identity only.
pub fn seed_automorphisms(seed: &MonomialIdeal) -> Vec<Vec<usize>> {
    let n = seed.nvars();
    let identity: Vec<usize> = (0..n).collect();
    if n > 8 {
        return vec![identity];
    }
    let mut out = Vec::new();
    let mut perm = identity;
    permute_all(&mut perm, 0, &mut |p| {
        if seed.permuted(p) == *seed {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

fn permute_all(p: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute_all(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// The smallest image of `ideal` under `autos`.
pub fn canonical_form(ideal: &MonomialIdeal, autos: &[Vec<usize>]) -> MonomialIdeal {
    autos
        .iter()
        .map(|p| ideal.permuted(p))
        .min()
        .unwrap_or_else(|| ideal.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchVerdict {
    pub assignment: ExponentAssignment,
    pub ideal: MonomialIdeal,
    pub homological: bool,
    /// From the dimension-2 or dimension-3 test when one applies.
    pub combinatorial: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub verdicts: Vec<SearchVerdict>,
    /// Number of symmetry classes actually evaluated.
    pub classes: usize,
}

impl SearchResult {
    pub fn positives(&self) -> impl Iterator<Item = &SearchVerdict> {
        self.verdicts.iter().filter(|v| v.homological)
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &SearchVerdict> {
        self.verdicts
            .iter()
            .filter(|v| v.combinatorial.is_some_and(|c| c != v.homological))
    }
}

/// Homological generalized CM verdict plus the combinatorial one where defined.
pub fn evaluate(ideal: &MonomialIdeal, field: FieldSpec) -> Result<(bool, Option<bool>)> {
    let hom = local_cohomology_table(ideal, field).is_generalized_cm();
    let comb = match krull_dimension(ideal) {
        2 => Some(check_dim2(ideal)?),
        3 => Some(check_dim3(ideal)?),
        _ => None,
    };
    Ok((hom, comb))
}

/// Nonempty sets of at most `limit` tuples from `[1, bound]^len`.
fn tuple_choices(len: usize, bound: u32, limit: usize) -> Vec<Vec<Vec<u32>>> {
    let mut tuples = vec![Vec::new()];
    for _ in 0..len {
        tuples = tuples
            .into_iter()
            .flat_map(|t: Vec<u32>| {
                (1..=bound).map(move |e| {
                    let mut u = t.clone();
                    u.push(e);
                    u
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(tuples: &[Vec<u32>], start: usize, limit: usize, chosen: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if !chosen.is_empty() {
            out.push(chosen.clone());
        }
        if chosen.len() == limit {
            return;
        }
        for i in start..tuples.len() {
            chosen.push(tuples[i].clone());
            rec(tuples, i + 1, limit, chosen, out);
            chosen.pop();
        }
    }
    rec(&tuples, 0, limit, &mut chosen, &mut out);
    out
}

/// Every assignment with exponents in `[1, bound]` and at most `tuples`
/// tuples per generator, each evaluated once per symmetry class of the
/// resulting ideal under the automorphisms of the seed.
pub fn exponent_search(seed: &MonomialIdeal, bound: u32, tuples: usize, field: FieldSpec) -> Result<SearchResult> {
    if !seed.is_squarefree() {
        return Err(Error::NotSquareFree);
    }
    if bound < 1 || tuples < 1 {
        return Err(Error::PreconditionViolation("bound and tuple limit must be at least 1".into()));
    }
    if !local_cohomology_table(seed, field).is_generalized_cm() {
        return Err(Error::SeedNotGeneralizedCM);
    }
    let autos = seed_automorphisms(seed);
    let choices: Vec<Vec<Vec<Vec<u32>>>> = seed
        .gens()
        .iter()
        .map(|g| tuple_choices(g.degree() as usize, bound, tuples))
        .collect();

    let mut assignments = Vec::new();
    let mut index = vec![0usize; choices.len()];
    loop {
        let a = ExponentAssignment {
            tuples: index.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect(),
        };
        let ideal = apply_assignment(seed, &a)?;
        let canon = canonical_form(&ideal, &autos);
        assignments.push((a, ideal, canon));
        let mut k = choices.len();
        let advanced = loop {
            if k == 0 {
                break false;
            }
            k -= 1;
            index[k] += 1;
            if index[k] < choices[k].len() {
                break true;
            }
            index[k] = 0;
        };
        if !advanced {
            break;
        }
    }

    let classes: Vec<MonomialIdeal> = assignments
        .iter()
        .map(|(_, _, c)| c.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let evaluated: Vec<(MonomialIdeal, (bool, Option<bool>))> = classes
        .par_iter()
        .map(|c| evaluate(c, field).map(|v| (c.clone(), v)))
        .collect::<Result<_>>()?;
    let verdict_of: BTreeMap<MonomialIdeal, (bool, Option<bool>)> = evaluated.into_iter().collect();

    let verdicts = assignments
        .into_iter()
        .map(|(assignment, ideal, canon)| {
            let (homological, combinatorial) = verdict_of[&canon];
            SearchVerdict {
                assignment,
                ideal,
                homological,
                combinatorial,
            }
        })
        .collect();
    Ok(SearchResult {
        verdicts,
        classes: classes.len(),
    })
}

/// `(x_1, …, x_n)(x_{n+1}, …, x_{2n})`.
pub fn two_block_seed(n: usize) -> MonomialIdeal {
    let mut rows = Vec::new();
    for i in 0..n {
        for j in n..2 * n {
            let mut r = vec![0; 2 * n];
            r[i] = 1;
            r[j] = 1;
            rows.push(r);
        }
    }
    MonomialIdeal::from_exponents(2 * n, &rows).expect("seed generators are valid")
}

/// `α_{ij}` independent of `j` and `β_{ij}` independent of `i`, for the
/// single-tuple assignment `x_i^{α_{ij}} x_j^{β_{ij}}` on the two-block seed.
pub fn is_frobenius_constant(seed: &MonomialIdeal, assignment: &ExponentAssignment) -> bool {
    let mut alpha: BTreeMap<usize, u32> = BTreeMap::new();
    let mut beta: BTreeMap<usize, u32> = BTreeMap::new();
    for (g, tuples) in seed.gens().iter().zip(&assignment.tuples) {
        let support: Vec<usize> = (0..seed.nvars()).filter(|&j| g.nu(j) > 0).collect();
        let (i, j) = (support[0], support[1]);
        let t = &tuples[0];
        if *alpha.entry(i).or_insert(t[0]) != t[0] || *beta.entry(j).or_insert(t[1]) != t[1] {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusFamilyCheck {
    pub n: usize,
    pub bound: u32,
    pub assignments: usize,
    pub classes: usize,
    /// `n = 1`: every ideal in the family is Cohen-Macaulay, nothing to classify.
    pub skipped: bool,
    pub counterexample: Option<SearchVerdict>,
}

impl FrobeniusFamilyCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that on the two-block seed, a single-tuple assignment is
/// generalized CM exactly when it is Frobenius-constant, on both the
/// homological and the combinatorial path.
pub fn verify_only_frobenius_family(n: usize, bound: u32, field: FieldSpec) -> Result<FrobeniusFamilyCheck> {
    if n < 2 {
        return Ok(FrobeniusFamilyCheck {
            n,
            bound,
            assignments: 0,
            classes: 0,
            skipped: true,
            counterexample: None,
        });
    }
    let seed = two_block_seed(n);
    let result = exponent_search(&seed, bound, 1, field)?;
    let counterexample = result
        .verdicts
        .iter()
        .find(|v| {
            let expected = is_frobenius_constant(&seed, &v.assignment);
            v.homological != expected || v.combinatorial.is_some_and(|c| c != expected)
        })
        .cloned();
    Ok(FrobeniusFamilyCheck {
        n,
        bound,
        assignments: result.verdicts.len(),
        classes: result.classes,
        skipped: false,
        counterexample,
    })
}
