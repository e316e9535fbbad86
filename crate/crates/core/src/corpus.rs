//! Seeded random monomial ideals for property checks and batch runs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::stanley_reisner_complex;
use crate::ideal::{Monomial, MonomialIdeal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusConfig {
    pub min_vars: usize,
    pub max_vars: usize,
    pub max_exp: u32,
    pub max_gens: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            min_vars: 2,
            max_vars: 5,
            max_exp: 3,
            max_gens: 8,
        }
    }
}

impl CorpusConfig {
    pub fn squarefree(max_vars: usize) -> Self {
        CorpusConfig {
            min_vars: 2,
            max_vars,
            max_exp: 1,
            max_gens: 8,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_monomial<R: Rng>(rng: &mut R, n: usize, max_exp: u32) -> Monomial {
    // Supports of size at least two are the interesting ones; pure powers
    // show up about one time in six.
    let size = if n == 1 || rng.gen_ratio(1, 6) { 1 } else { rng.gen_range(2..=n.min(4)) };
    let mut vars: Vec<usize> = (0..n).collect();
    vars.shuffle(rng);
    let mut exps = vec![0; n];
    for &j in &vars[..size] {
        exps[j] = rng.gen_range(1..=max_exp);
    }
    Monomial::new(exps)
}

pub fn random_ideal<R: Rng>(rng: &mut R, cfg: &CorpusConfig) -> MonomialIdeal {
    let n = rng.gen_range(cfg.min_vars..=cfg.max_vars);
    let count = rng.gen_range(1..=cfg.max_gens);
    let raw: Vec<Monomial> = (0..count).map(|_| random_monomial(rng, n, cfg.max_exp)).collect();
    MonomialIdeal::new(&raw, n).expect("random generators are non-constant with matching length")
}

pub fn random_corpus(seed: u64, count: usize, cfg: &CorpusConfig) -> Vec<MonomialIdeal> {
    let mut r = rng(seed);
    (0..count).map(|_| random_ideal(&mut r, cfg)).collect()
}

pub fn krull_dimension(ideal: &MonomialIdeal) -> usize {
    let delta = stanley_reisner_complex(&ideal.radical()).expect("radical ideals are square-free");
    (delta.dimension() + 1) as usize
}

/// `count` ideals with `dim S/I = dim`. Half are raw random draws, half are
/// Frobenius images of random square-free ideals, which are far more often
/// generalized CM.
pub fn dimension_corpus(seed: u64, count: usize, dim: usize, cfg: &CorpusConfig) -> Vec<MonomialIdeal> {
    let mut r = rng(seed);
    let cfg = CorpusConfig {
        min_vars: cfg.min_vars.max(dim + 1),
        ..*cfg
    };
    let sq = CorpusConfig {
        max_exp: 1,
        ..cfg
    };
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 1_000_000, "could not fill a dimension-{dim} corpus");
        let ideal = if out.len() % 2 == 0 {
            random_ideal(&mut r, &cfg)
        } else {
            let seed_ideal = random_ideal(&mut r, &sq);
            let exps: Vec<i64> = (0..seed_ideal.nvars())
                .map(|_| r.gen_range(1..=cfg.max_exp as i64))
                .collect();
            seed_ideal
                .frobenius_transform(&exps)
                .expect("positive exponents of matching length")
        };
        if krull_dimension(&ideal) == dim && !out.contains(&ideal) {
            out.push(ideal);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible_and_bounded() {
        let cfg = CorpusConfig::default();
        let a = random_corpus(7, 40, &cfg);
        assert_eq!(a, random_corpus(7, 40, &cfg));
        for i in &a {
            assert!((2..=5).contains(&i.nvars()));
            assert!(i.gens().len() <= 8);
            assert!(i.rho().iter().all(|&r| r <= 3));
        }
        let sq = random_corpus(7, 40, &CorpusConfig::squarefree(6));
        assert!(sq.iter().all(MonomialIdeal::is_squarefree));
    }

    #[test]
    fn dimension_filter() {
        for i in dimension_corpus(3, 10, 3, &CorpusConfig::default()) {
            assert_eq!(krull_dimension(&i), 3);
        }
    }
}
