//! Finite simplicial complexes on `[n]`, stored as explicit face sets.
//!
//! The void complex (no faces at all) and the irrelevant complex `{∅}` are
//! distinct values. Singletons need not be faces: the vertex set of a
//! complex is whatever singletons it happens to contain.

use std::fmt;

use crate::bits::{self, Mask};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    ground: usize,
    /// `by_size[k]` holds the faces with `k` vertices, ascending by mask.
    by_size: Vec<Vec<Mask>>,
}

impl SimplicialComplex {
    pub fn void(ground: usize) -> Self {
        SimplicialComplex {
            ground,
            by_size: Vec::new(),
        }
    }

    /// The complex `{∅}`.
    pub fn irrelevant(ground: usize) -> Self {
        SimplicialComplex {
            ground,
            by_size: vec![vec![0]],
        }
    }

    /// All subsets of `vertices`.
    pub fn simplex(ground: usize, vertices: Mask) -> Self {
        Self::from_closed_faces(ground, bits::submasks(vertices).collect())
    }

    /// Faces from an already downward-closed family; closure is asserted in debug builds.
    pub(crate) fn from_closed_faces(ground: usize, mut faces: Vec<Mask>) -> Self {
        faces.sort_unstable();
        faces.dedup();
        let top = faces.iter().map(|&f| bits::size(f)).max();
        let mut by_size = match top {
            None => Vec::new(),
            Some(t) => vec![Vec::new(); t + 1],
        };
        for f in faces {
            by_size[bits::size(f)].push(f);
        }
        let c = SimplicialComplex { ground, by_size };
        debug_assert!(c.is_downward_closed(), "face family is not downward closed");
        c
    }

    /// Validating constructor; rejects families that are not downward closed.
    pub fn from_faces(ground: usize, faces: Vec<Mask>) -> Result<Self> {
        let mut sorted = faces;
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&f| f >> ground != 0) {
            return Err(Error::PreconditionViolation(format!(
                "face uses a vertex outside [{ground}]"
            )));
        }
        for &f in &sorted {
            for j in bits::elements(f) {
                if sorted.binary_search(&(f & !(1 << j))).is_err() {
                    return Err(Error::PreconditionViolation(format!(
                        "{} is a face but {} is not",
                        bits::format_set(f),
                        bits::format_set(f & !(1 << j))
                    )));
                }
            }
        }
        Ok(Self::from_closed_faces(ground, sorted))
    }

    /// The downward closure of the given facets. An empty facet list gives the void complex.
    pub fn from_facets(ground: usize, facets: &[Mask]) -> Self {
        let mut faces: Vec<Mask> = facets.iter().flat_map(|&f| bits::submasks(f)).collect();
        faces.sort_unstable();
        faces.dedup();
        Self::from_closed_faces(ground, faces)
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn is_void(&self) -> bool {
        self.by_size.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.by_size.len() == 1
    }

    /// `max |F| - 1`, and `-1` for both the void complex and `{∅}`.
    pub fn dimension(&self) -> i64 {
        (self.by_size.len() as i64 - 2).max(-1)
    }

    /// Faces of dimension `k` (`k = -1` is the empty face).
    pub fn faces_of_dim(&self, k: i64) -> &[Mask] {
        let idx = k + 1;
        if idx < 0 || idx as usize >= self.by_size.len() {
            &[]
        } else {
            &self.by_size[idx as usize]
        }
    }

    pub fn faces(&self) -> impl Iterator<Item = Mask> + '_ {
        self.by_size.iter().flatten().copied()
    }

    pub fn num_faces(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, face: Mask) -> bool {
        self.by_size
            .get(bits::size(face))
            .is_some_and(|v| v.binary_search(&face).is_ok())
    }

    pub fn vertices(&self) -> Mask {
        self.faces_of_dim(0).iter().fold(0, |m, &f| m | f)
    }

    pub fn facets(&self) -> Vec<Mask> {
        let mut out = Vec::new();
        for f in self.faces() {
            let extendable = (0..self.ground)
                .filter(|&v| !bits::contains(f, v))
                .any(|v| self.contains(f | 1 << v));
            if !extendable {
                out.push(f);
            }
        }
        out
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dimension();
        self.facets().iter().all(|&f| bits::size(f) as i64 - 1 == d)
    }

    /// Connected components of the 1-skeleton on the actual vertices, each sorted, 0-based.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let verts: Vec<usize> = bits::elements(self.vertices()).collect();
        let mut parent: Vec<usize> = (0..self.ground).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = x;
            while parent[c] != r {
                let next = parent[c];
                parent[c] = r;
                c = next;
            }
            r
        }
        for &e in self.faces_of_dim(1) {
            let mut it = bits::elements(e);
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in verts {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// True iff `v` is a vertex and `σ ∪ {v}` is a face for every face `σ`.
    pub fn is_cone(&self, v: usize) -> bool {
        if !self.contains(1 << v) {
            return false;
        }
        self.faces().all(|f| self.contains(f | 1 << v))
    }

    /// `lk F = {G ∈ Δ : G ∩ F = ∅, G ∪ F ∈ Δ}`; void when `F ∉ Δ`.
    pub fn link(&self, face: Mask) -> SimplicialComplex {
        let faces: Vec<Mask> = self
            .faces()
            .filter(|&g| g & face == 0 && self.contains(g | face))
            .collect();
        Self::from_closed_faces(self.ground, faces)
    }

    /// `st F = {G ∈ Δ : G ∪ F ∈ Δ}`.
    pub fn star(&self, face: Mask) -> SimplicialComplex {
        let faces: Vec<Mask> = self.faces().filter(|&g| self.contains(g | face)).collect();
        Self::from_closed_faces(self.ground, faces)
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces()
            .all(|f| bits::elements(f).all(|j| self.contains(f & !(1 << j))))
    }

    /// Reduced Euler characteristic `sum_k (-1)^k f_k` over `k >= -1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        (-1..=self.dimension())
            .map(|k| {
                let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
                sign * self.faces_of_dim(k).len() as i64
            })
            .sum()
    }
}

impl fmt::Display for SimplicialComplex {
    /// Facet notation, `<{1,2},{3,4}>`; void is `<>` and `{∅}` is `<{}>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self.facets().into_iter().map(bits::format_set).collect();
        write!(f, "<{}>", facets.join(","))
    }
}

/// A multidegree `a ∈ Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn new(a: Vec<i64>) -> Self {
        MultiDegree(a)
    }

    pub fn zero(n: usize) -> Self {
        MultiDegree(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `G_a`: coordinates with `a_i < 0`.
    pub fn negative_support(&self) -> Mask {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &v)| v < 0)
            .fold(0, |m, (j, _)| m | 1 << j)
    }

    /// `H_a`: coordinates with `a_i > 0`.
    pub fn positive_support(&self) -> Mask {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .fold(0, |m, (j, _)| m | 1 << j)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add_unit(&self, j: usize) -> MultiDegree {
        let mut b = self.0.clone();
        b[j] += 1;
        MultiDegree(b)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The Stanley-Reisner complex of a square-free ideal: faces are the sets
/// containing no generator support.
pub fn stanley_reisner_complex(j: &MonomialIdeal) -> Result<SimplicialComplex> {
    if !j.is_squarefree() {
        return Err(Error::NotSquareFree);
    }
    let n = j.nvars();
    let supports: Vec<Mask> = j.gens().iter().map(|u| u.support()).collect();
    let faces: Vec<Mask> = bits::submasks(bits::full(n))
        .filter(|&f| supports.iter().all(|&s| s & !f != 0))
        .collect();
    Ok(SimplicialComplex::from_closed_faces(n, faces))
}

/// `L(a, u) = {i : ν_i(u) > a_i}` as a mask.
#[inline]
pub fn exceed_set(a: &[i64], u: &crate::ideal::Monomial) -> Mask {
    a.iter()
        .enumerate()
        .filter(|(j, &aj)| u.nu(*j) as i64 > aj)
        .fold(0, |m, (j, _)| m | 1 << j)
}

/// The degree complex `Δ_a = {F − G_a : F ⊇ G_a, ∀u ∈ G(I) ∃ j ∉ F with ν_j(u) > a_j}`,
/// with vertices in `[n] − G_a`.
pub fn degree_complex(ideal: &MonomialIdeal, a: &MultiDegree) -> SimplicialComplex {
    let n = ideal.nvars();
    assert_eq!(a.len(), n, "degree length must match the variable count");
    let g = a.negative_support();
    let exceed: Vec<Mask> = ideal.gens().iter().map(|u| exceed_set(&a.0, u)).collect();
    let rest = bits::full(n) & !g;
    let faces: Vec<Mask> = bits::submasks(rest)
        .filter(|&l| {
            let f = l | g;
            exceed.iter().all(|&w| w & !f != 0)
        })
        .collect();
    SimplicialComplex::from_closed_faces(n, faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::MonomialIdeal;

    fn sq(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        MonomialIdeal::from_exponents(n, &rows).unwrap()
    }

    fn two_edges() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, &[0b0011, 0b1100])
    }

    #[test]
    fn stanley_reisner_examples() {
        let j = sq(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]);
        let d = stanley_reisner_complex(&j).unwrap();
        assert_eq!(d.facets(), vec![0b0011, 0b1100]);

        let full = stanley_reisner_complex(&MonomialIdeal::zero(2)).unwrap();
        assert_eq!(full.faces().collect::<Vec<_>>(), vec![0, 0b01, 0b10, 0b11]);

        let x1 = stanley_reisner_complex(&sq(2, &[&[1, 0]])).unwrap();
        assert_eq!(x1.faces().collect::<Vec<_>>(), vec![0, 0b10]);

        assert_eq!(
            stanley_reisner_complex(&sq(2, &[&[2, 0]])),
            Err(Error::NotSquareFree)
        );
    }

    /// Membership in Δ_a checked literally against the set-builder definition.
    fn brute_degree_faces(gens: &[Vec<u32>], n: usize, a: &[i64]) -> Vec<Vec<usize>> {
        let g: Vec<usize> = (0..n).filter(|&j| a[j] < 0).collect();
        let mut out = Vec::new();
        for bitsv in 0..(1u32 << n) {
            let f: Vec<usize> = (0..n).filter(|&j| bitsv >> j & 1 == 1).collect();
            if !g.iter().all(|j| f.contains(j)) {
                continue;
            }
            let ok = gens.iter().all(|u| {
                (0..n).any(|j| !f.contains(&j) && u[j] as i64 > a[j] && a[j] >= 0)
            });
            if ok {
                out.push(f.into_iter().filter(|j| !g.contains(j)).collect());
            }
        }
        out.sort();
        out
    }

    fn faces_as_lists(c: &SimplicialComplex) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = c.faces().map(|f| bits::elements(f).collect()).collect();
        v.sort();
        v
    }

    #[test]
    fn degree_complex_examples() {
        let i = sq(2, &[&[1, 1]]);
        let gens = vec![vec![1, 1]];

        // a = (-1, 0): only F = {1} qualifies, giving {∅}.
        let c = degree_complex(&i, &MultiDegree::new(vec![-1, 0]));
        assert_eq!(faces_as_lists(&c), brute_degree_faces(&gens, 2, &[-1, 0]));
        assert!(c.is_irrelevant());

        // a = (0, 0): {∅, {1}, {2}}.
        let c = degree_complex(&i, &MultiDegree::new(vec![0, 0]));
        assert_eq!(faces_as_lists(&c), vec![vec![], vec![0], vec![1]]);
        assert_eq!(faces_as_lists(&c), brute_degree_faces(&gens, 2, &[0, 0]));

        // a = (-1, -1): void.
        let c = degree_complex(&i, &MultiDegree::new(vec![-1, -1]));
        assert!(c.is_void());
        assert!(brute_degree_faces(&gens, 2, &[-1, -1]).is_empty());
    }

    #[test]
    fn links_and_stars() {
        let d = two_edges();
        assert_eq!(d.link(0b0001).faces().collect::<Vec<_>>(), vec![0, 0b0010]);
        assert_eq!(d.link(0), d);
        assert!(d.link(0b0101).is_void());
        assert_eq!(d.star(0b0001), SimplicialComplex::simplex(4, 0b0011));
    }

    #[test]
    fn dimension_purity_components_cones() {
        let d = two_edges();
        assert_eq!(d.dimension(), 1);
        assert!(d.is_pure());
        assert_eq!(d.connected_components(), vec![vec![0, 1], vec![2, 3]]);

        let mixed = SimplicialComplex::from_facets(3, &[0b011, 0b100]);
        assert!(!mixed.is_pure());

        let tri = SimplicialComplex::simplex(3, 0b111);
        assert!((0..3).all(|v| tri.is_cone(v)));
        assert!(!d.is_cone(0));

        assert_eq!(SimplicialComplex::void(3).dimension(), -1);
        assert_eq!(SimplicialComplex::irrelevant(3).dimension(), -1);
        assert!(SimplicialComplex::void(2).connected_components().is_empty());
    }

    #[test]
    fn validating_constructor() {
        assert!(SimplicialComplex::from_faces(2, vec![0, 0b11]).is_err());
        assert!(SimplicialComplex::from_faces(2, vec![0, 0b01, 0b10, 0b11]).is_ok());
        assert!(SimplicialComplex::from_faces(2, vec![]).unwrap().is_void());
    }

    #[test]
    fn multidegree_supports() {
        let a = MultiDegree::new(vec![-2, 0, 3, -1]);
        assert_eq!(a.negative_support(), 0b1001);
        assert_eq!(a.positive_support(), 0b0100);
        assert_eq!(a.total(), 0);
    }

    #[test]
    fn display_uses_facets() {
        assert_eq!(two_edges().to_string(), "<{1,2},{3,4}>");
        assert_eq!(SimplicialComplex::void(2).to_string(), "<>");
        assert_eq!(SimplicialComplex::irrelevant(2).to_string(), "<{}>");
    }
}
