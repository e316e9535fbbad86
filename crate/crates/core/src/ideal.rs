//! Monomials and monomial ideals of `K[x_1, ..., x_n]`.
//!
//! An ideal is always stored by its minimal generating set `G(I)`, sorted
//! lexicographically on exponent vectors. Variables keep their original
//! indices; the pure-power/mixed split is carried alongside instead of
//! renaming variables.

use std::collections::BTreeMap;
use std::fmt;

use crate::bits::{self, Mask, MAX_VARS};
use crate::error::{Error, Result};

/// A monomial `x^e`, stored as its exponent vector (index `j` is variable `j + 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// `x_j^e` in `n` variables, with `j` 0-based.
    pub fn pure_power(n: usize, j: usize, e: u32) -> Self {
        let mut exps = vec![0; n];
        exps[j] = e;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// The exponent of variable `j` (0-based).
    #[inline]
    pub fn nu(&self, j: usize) -> u32 {
        self.exps[j]
    }

    pub fn support(&self) -> Mask {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (j, _)| m | 1 << j)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn squarefree_part(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e.min(1)).collect(),
        }
    }

    /// Variables permuted: variable `j` of `self` becomes variable `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut exps = vec![0; self.exps.len()];
        for (j, &e) in self.exps.iter().enumerate() {
            exps[perm[j]] = e;
        }
        Monomial { exps }
    }
}

impl fmt::Display for Monomial {
    /// `x1*x3^2`; the constant monomial prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", j + 1)?;
            } else {
                write!(f, "x{}^{}", j + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A monomial ideal given by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

/// `G(I)` split into pure powers `x_j^{rho_j}` and the mixed generators `G_0(I)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSplit {
    /// Variable (0-based) to exponent.
    pub pure_powers: BTreeMap<usize, u32>,
    pub mixed: Vec<Monomial>,
}

impl GeneratorSplit {
    /// Variables that do not carry a pure-power generator (the set `[m]`).
    pub fn free_variables(&self, n: usize) -> Mask {
        let pure = bits::from_elements(self.pure_powers.keys().copied());
        bits::full(n) & !pure
    }
}

/// Keeps the divisibility-minimal elements of `raw`, deduplicated and lex-sorted.
pub fn minimal_generators(raw: &[Monomial], n: usize) -> Result<MonomialIdeal> {
    if n > MAX_VARS {
        return Err(Error::TooManyVariables {
            found: n,
            max: MAX_VARS,
        });
    }
    for u in raw {
        if u.nvars() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: u.nvars(),
            });
        }
        if u.is_one() {
            return Err(Error::ConstantGenerator);
        }
    }
    let mut sorted: Vec<Monomial> = raw.to_vec();
    sorted.sort();
    sorted.dedup();
    // Sorting by total degree first guarantees every divisor is seen before its multiples.
    sorted.sort_by_key(|u| u.degree());
    let mut kept: Vec<Monomial> = Vec::with_capacity(sorted.len());
    for u in sorted {
        if !kept.iter().any(|g| g.divides(&u)) {
            kept.push(u);
        }
    }
    kept.sort();
    Ok(MonomialIdeal { n, gens: kept })
}

impl MonomialIdeal {
    pub fn new(raw: &[Monomial], n: usize) -> Result<Self> {
        minimal_generators(raw, n)
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    /// Convenience constructor from exponent rows.
    pub fn from_exponents(n: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let raw: Vec<Monomial> = rows.iter().cloned().map(Monomial::new).collect();
        minimal_generators(&raw, n)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Per-variable maximal generator exponent, with 1 for variables absent from `G(I)`.
    pub fn rho(&self) -> Vec<u32> {
        (0..self.n)
            .map(|j| self.gens.iter().map(|u| u.nu(j)).max().unwrap_or(0).max(1))
            .collect()
    }

    /// `sum_j rho_j - n`, the bound on every `a_i(S/I)`.
    pub fn rho_excess(&self) -> i64 {
        self.rho().iter().map(|&r| r as i64).sum::<i64>() - self.n as i64
    }

    pub fn radical(&self) -> MonomialIdeal {
        let parts: Vec<Monomial> = self.gens.iter().map(Monomial::squarefree_part).collect();
        minimal_generators(&parts, self.n).expect("square-free parts of non-constant monomials")
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn split_generators(&self) -> GeneratorSplit {
        let mut pure_powers = BTreeMap::new();
        let mut mixed = Vec::new();
        for u in &self.gens {
            let supp = u.support();
            if bits::size(supp) == 1 {
                let j = supp.trailing_zeros() as usize;
                pure_powers.insert(j, u.nu(j));
            } else {
                mixed.push(u.clone());
            }
        }
        GeneratorSplit { pure_powers, mixed }
    }

    /// The substitution `x_j -> x_j^{a_j}` applied to every generator.
    pub fn frobenius_transform(&self, a: &[i64]) -> Result<MonomialIdeal> {
        if a.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: a.len(),
            });
        }
        if let Some((position, &value)) = a.iter().enumerate().find(|(_, &v)| v < 1) {
            return Err(Error::NonPositiveExponent {
                position: position + 1,
                value,
            });
        }
        let raw: Vec<Monomial> = self
            .gens
            .iter()
            .map(|u| {
                Monomial::new(
                    u.exps
                        .iter()
                        .zip(a)
                        .map(|(&e, &s)| e * s as u32)
                        .collect(),
                )
            })
            .collect();
        let out = minimal_generators(&raw, self.n)?;
        debug_assert_eq!(out.gens.len(), self.gens.len(), "substitution preserves minimality");
        Ok(out)
    }

    /// Image under a variable permutation (`j -> perm[j]`).
    pub fn permuted(&self, perm: &[usize]) -> MonomialIdeal {
        let raw: Vec<Monomial> = self.gens.iter().map(|u| u.permuted(perm)).collect();
        minimal_generators(&raw, self.n).expect("permutation keeps generators valid")
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|u| u.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        MonomialIdeal::from_exponents(n, &rows).unwrap()
    }

    fn i1() -> MonomialIdeal {
        ideal(
            4,
            &[
                &[1, 0, 1, 0],
                &[2, 0, 0, 1],
                &[1, 0, 0, 2],
                &[0, 2, 1, 0],
                &[0, 1, 2, 0],
                &[0, 1, 0, 1],
            ],
        )
    }

    #[test]
    fn divisibility_pruning() {
        let i = ideal(3, &[&[2, 0, 0], &[2, 1, 0], &[0, 1, 1]]);
        assert_eq!(i.gens().len(), 2);
        assert_eq!(i.to_string(), "(x2*x3, x1^2)");
    }

    #[test]
    fn already_minimal_generators_are_kept() {
        let i = i1();
        assert_eq!(i.gens().len(), 6);
        assert_eq!(minimal_generators(i.gens(), 4).unwrap(), i);
    }

    #[test]
    fn empty_generators_give_zero_ideal() {
        let i = minimal_generators(&[], 3).unwrap();
        assert!(i.is_zero());
        assert_eq!(i.rho(), vec![1, 1, 1]);
        assert!(i.is_squarefree());
    }

    #[test]
    fn constant_and_length_errors() {
        assert_eq!(
            minimal_generators(&[Monomial::one(2)], 2),
            Err(Error::ConstantGenerator)
        );
        assert_eq!(
            minimal_generators(&[Monomial::new(vec![1, 0, 0])], 2),
            Err(Error::LengthMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn rho_of_terminal_examples() {
        assert_eq!(i1().rho(), vec![2, 2, 2, 2]);
        let i2 = ideal(
            6,
            &[
                &[3, 0, 0, 1, 0, 0],
                &[1, 0, 0, 5, 0, 0],
                &[1, 0, 0, 0, 1, 0],
                &[1, 0, 0, 0, 0, 1],
                &[0, 1, 0, 1, 0, 0],
                &[0, 1, 0, 0, 1, 0],
                &[0, 1, 0, 0, 0, 1],
                &[0, 0, 1, 1, 0, 0],
                &[0, 0, 1, 0, 1, 0],
                &[0, 0, 1, 0, 0, 1],
            ],
        );
        assert_eq!(i2.rho(), vec![3, 1, 1, 5, 1, 1]);
    }

    #[test]
    fn radical_examples() {
        assert_eq!(ideal(2, &[&[2, 0]]).radical(), ideal(2, &[&[1, 0]]));
        let j1 = ideal(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(i1().radical(), j1);
        assert_eq!(j1.radical(), j1);
    }

    #[test]
    fn split_examples() {
        let i = ideal(3, &[&[2, 0, 0], &[0, 1, 1]]);
        let s = i.split_generators();
        assert_eq!(s.pure_powers, BTreeMap::from([(0, 2)]));
        assert_eq!(s.mixed, vec![Monomial::new(vec![0, 1, 1])]);
        assert_eq!(s.free_variables(3), 0b110);

        let s1 = i1().split_generators();
        assert!(s1.pure_powers.is_empty());
        assert_eq!(s1.mixed.len(), 6);

        let z = MonomialIdeal::zero(2).split_generators();
        assert!(z.pure_powers.is_empty() && z.mixed.is_empty());
    }

    #[test]
    fn frobenius_examples() {
        let j = ideal(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(j.frobenius_transform(&[1, 1, 1, 1]).unwrap(), j);
        assert_eq!(
            j.frobenius_transform(&[2, 2, 2, 2]).unwrap(),
            ideal(4, &[&[2, 0, 2, 0], &[2, 0, 0, 2], &[0, 2, 2, 0], &[0, 2, 0, 2]])
        );
        assert_eq!(
            j.frobenius_transform(&[2, 1, 1, 1]).unwrap(),
            ideal(4, &[&[2, 0, 1, 0], &[2, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]])
        );
        assert_eq!(
            j.frobenius_transform(&[1, 0, 1, 1]),
            Err(Error::NonPositiveExponent {
                position: 2,
                value: 0
            })
        );
    }

    #[test]
    fn squarefree_detection() {
        assert!(ideal(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]).is_squarefree());
        assert!(!i1().is_squarefree());
        assert!(MonomialIdeal::zero(3).is_squarefree());
    }
}
