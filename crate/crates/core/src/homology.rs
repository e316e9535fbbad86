//! Reduced simplicial (co)homology dimensions over an exact field.

use std::collections::BTreeMap;

use crate::bits::{self, Mask};
use crate::complex::SimplicialComplex;
use crate::field::FieldSpec;
use crate::linalg::{exact_rank, IntMatrix};

/// `dim H̃_k` for `k` in `-1..=dim Δ`; degrees outside that range are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyResult {
    pub dims: BTreeMap<i64, usize>,
}

impl HomologyResult {
    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.values().all(|&d| d == 0)
    }

    /// `sum_k (-1)^k dim H̃_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&k, &d)| if k.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// The boundary `∂_k : C_k → C_{k-1}` of the augmented oriented chain complex.
///
/// Rows are `(k-1)`-faces, columns are `k`-faces, both in the complex's
/// stored order. `∂F = Σ_j (-1)^j F_j` where `F_j` drops the `j`-th smallest
/// vertex; `∂_0` sends every vertex to the empty face with coefficient `+1`.
pub fn boundary_matrix(delta: &SimplicialComplex, k: i64) -> IntMatrix {
    let cols = delta.faces_of_dim(k);
    let rows = delta.faces_of_dim(k - 1);
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    if rows.is_empty() || cols.is_empty() {
        return m;
    }
    for (c, &face) in cols.iter().enumerate() {
        for (pos, v) in bits::elements(face).enumerate() {
            let sub: Mask = face & !(1 << v);
            let r = rows
                .binary_search(&sub)
                .expect("complex is downward closed");
            m.set(r, c, if pos % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// `dim H̃_k = f_k − rank ∂_k − rank ∂_{k+1}` with ranks over `field`.
pub fn reduced_homology_dims(delta: &SimplicialComplex, field: FieldSpec) -> HomologyResult {
    let mut dims = BTreeMap::new();
    if delta.is_void() {
        return HomologyResult { dims };
    }
    let top = delta.dimension();
    // ranks[k + 1] = rank ∂_k for k in -1..=top+1; ∂_{-1} and ∂_{top+1} vanish.
    let mut ranks = vec![0usize; (top + 3) as usize];
    for k in 0..=top {
        ranks[(k + 1) as usize] = exact_rank(&boundary_matrix(delta, k), field);
    }
    for k in -1..=top {
        let f = delta.faces_of_dim(k).len();
        let d = f - ranks[(k + 1) as usize] - ranks[(k + 2) as usize];
        dims.insert(k, d);
    }
    HomologyResult { dims }
}

/// Reduced cohomology from the dual complex: `δ^k = ∂_{k+1}^T`.
pub fn reduced_cohomology_dims(delta: &SimplicialComplex, field: FieldSpec) -> HomologyResult {
    let mut dims = BTreeMap::new();
    if delta.is_void() {
        return HomologyResult { dims };
    }
    let top = delta.dimension();
    // coranks[k + 1] = rank δ^k : C^k → C^{k+1}.
    let mut coranks = vec![0usize; (top + 3) as usize];
    for k in -1..top {
        let delta_k = boundary_matrix(delta, k + 1).transpose();
        coranks[(k + 1) as usize] = exact_rank(&delta_k, field);
    }
    for k in -1..=top {
        let f = delta.faces_of_dim(k).len();
        let before = if k == -1 { 0 } else { coranks[k as usize] };
        dims.insert(k, f - coranks[(k + 1) as usize] - before);
    }
    HomologyResult { dims }
}

/// Whether homology and cohomology dimensions agree, as they must over a field.
pub fn cohomology_dims_equal_homology(delta: &SimplicialComplex, field: FieldSpec) -> bool {
    reduced_homology_dims(delta, field) == reduced_cohomology_dims(delta, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, &[0b011, 0b101, 0b110])
    }

    /// Six-vertex real projective plane.
    pub(crate) fn rp2() -> SimplicialComplex {
        let tris: [[usize; 3]; 10] = [
            [1, 2, 4],
            [1, 2, 6],
            [1, 3, 5],
            [1, 3, 6],
            [1, 4, 5],
            [2, 3, 4],
            [2, 3, 5],
            [2, 5, 6],
            [3, 4, 6],
            [4, 5, 6],
        ];
        let facets: Vec<Mask> = tris
            .iter()
            .map(|t| bits::from_elements(t.iter().map(|v| v - 1)))
            .collect();
        SimplicialComplex::from_facets(6, &facets)
    }

    #[test]
    fn edge_boundary_signs() {
        let edge = SimplicialComplex::simplex(2, 0b11);
        let d1 = boundary_matrix(&edge, 1);
        // ∂{1,2} = {2} − {1}
        assert_eq!(d1, IntMatrix::from_rows(&[vec![-1], vec![1]]));
    }

    #[test]
    fn augmentation_row() {
        let pts = SimplicialComplex::from_facets(2, &[0b01, 0b10]);
        assert_eq!(boundary_matrix(&pts, 0), IntMatrix::from_rows(&[vec![1, 1]]));
    }

    #[test]
    fn boundaries_compose_to_zero_on_triangle() {
        let tri = SimplicialComplex::simplex(3, 0b111);
        for k in 0..=2 {
            let prod = boundary_matrix(&tri, k).mul(&boundary_matrix(&tri, k + 1));
            assert!(prod.is_zero(), "∂_{k} ∘ ∂_{} ≠ 0", k + 1);
        }
    }

    #[test]
    fn engine_sanity_examples() {
        let q = FieldSpec::Rationals;
        let h = reduced_homology_dims(&hollow_triangle(), q);
        assert_eq!((h.dim(-1), h.dim(0), h.dim(1)), (0, 0, 1));

        let edges = SimplicialComplex::from_facets(4, &[0b0011, 0b1100]);
        let h = reduced_homology_dims(&edges, q);
        assert_eq!((h.dim(0), h.dim(1)), (1, 0));

        let h = reduced_homology_dims(&SimplicialComplex::irrelevant(3), q);
        assert_eq!(h.dims, BTreeMap::from([(-1, 1)]));

        assert!(reduced_homology_dims(&SimplicialComplex::void(3), q).dims.is_empty());
    }

    #[test]
    fn projective_plane_detects_characteristic_two() {
        let p = rp2();
        assert_eq!(p.faces_of_dim(0).len(), 6);
        assert_eq!(p.faces_of_dim(1).len(), 15);
        assert_eq!(p.faces_of_dim(2).len(), 10);
        let over_q = reduced_homology_dims(&p, FieldSpec::Rationals);
        let over_2 = reduced_homology_dims(&p, FieldSpec::PrimeField(2));
        let over_3 = reduced_homology_dims(&p, FieldSpec::PrimeField(3));
        assert_eq!((over_q.dim(1), over_q.dim(2)), (0, 0));
        assert_eq!((over_2.dim(1), over_2.dim(2)), (1, 1));
        assert_eq!(over_3, over_q);
        assert!(cohomology_dims_equal_homology(&p, FieldSpec::PrimeField(2)));
    }

    #[test]
    fn universal_coefficients_on_small_cases() {
        assert!(cohomology_dims_equal_homology(&hollow_triangle(), FieldSpec::Rationals));
        assert!(cohomology_dims_equal_homology(&SimplicialComplex::void(2), FieldSpec::Rationals));
        assert!(cohomology_dims_equal_homology(
            &SimplicialComplex::irrelevant(2),
            FieldSpec::PrimeField(2)
        ));
    }
}
