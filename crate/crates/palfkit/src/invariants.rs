//! Milnor lattice, Euler pairing and first homology of the total space.

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::ainfcat::AInfCategory;
use crate::diagram::{CurveDiagram, DiagramError};
use crate::exactalg::{smith_normal_form, CokernelSummary, Field, IntMatrix};

/// Free module on the curves with the signed intersection pairing.
#[derive(Clone, Debug)]
pub struct MilnorLattice {
    pub rank: usize,
    pub pairing: IntMatrix,
}

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
}

pub fn milnor_lattice(d: &CurveDiagram) -> Result<MilnorLattice, InvariantError> {
    let pairing = d.intersection_matrix()?;
    Ok(MilnorLattice { rank: d.curves.len(), pairing })
}

/// Antisymmetrized alternating sum of graded hom dimensions: for `i < j`
/// the entry is `sum_d (-1)^d dim hom^d(i, j)`, the transpose entry its
/// negative, the diagonal zero.
pub fn euler_pairing<F: Field>(cat: &AInfCategory<F>) -> IntMatrix {
    let n = cat.object_count();
    let mut m = IntMatrix::new(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let mut sum = 0i64;
            for g in cat.hom_gens(i, j) {
                let d = cat.gen_info(g).degree;
                sum += if d.rem_euclid(2) == 0 { 1 } else { -1 };
            }
            m.set(i, j, BigInt::from(sum));
            m.set(j, i, BigInt::from(-sum));
        }
    }
    m
}

/// Entrywise comparison up to per-curve orientation reversal: search for
/// signs `eps` with `eps_i eps_j m_ij = e_ij`; returns the witness.
pub fn compare_lattices(m: &MilnorLattice, e: &IntMatrix) -> Result<Option<Vec<i64>>, InvariantError> {
    if e.rows() != m.rank || e.cols() != m.rank {
        return Err(InvariantError::RankMismatch(m.rank, e.rows()));
    }
    let n = m.rank;
    for mask in 0..(1u32 << n) {
        let eps: Vec<i64> = (0..n).map(|i| if mask & (1 << i) != 0 { -1 } else { 1 }).collect();
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = m.pairing.get(i, j) * BigInt::from(eps[i] * eps[j]);
                &lhs == e.get(i, j)
            })
        });
        if ok {
            return Ok(Some(eps));
        }
    }
    Ok(None)
}

/// First homology of the total space: the cokernel of the attaching matrix
/// whose rows are the curve classes in H1 of the fibre.
pub fn total_space_h1(d: &CurveDiagram) -> Result<CokernelSummary, InvariantError> {
    let dim = 2 * d.genus + d.boundary_count.saturating_sub(1);
    let rows: Vec<Vec<i64>> = d.curves.iter().map(|c| c.homology.clone()).collect();
    for r in &rows {
        if r.len() != dim {
            return Err(InvariantError::Diagram(DiagramError::Structure(
                "curve homology classes missing or of wrong length".into(),
            )));
        }
    }
    let m = IntMatrix::from_i64_rows(&rows);
    let snf = smith_normal_form(&m);
    Ok(snf.cokernel(dim))
}

/// Milnor ranks and off-diagonal magnitudes, for report tables.
pub fn pairing_entries_abs_le(m: &MilnorLattice, bound: i64) -> bool {
    let b = BigInt::from(bound);
    (0..m.rank).all(|i| (0..m.rank).all(|j| i == j || m.pairing.get(i, j).abs() <= b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rat;
    use crate::fixtures as fx;
    use crate::fscat::{build_fs_category, shift_brane_grading};

    #[test]
    fn three_curve_lattices_match_their_euler_forms() {
        for (d, b) in [fx::pi1(), fx::pi2(), fx::pi3()] {
            let lattice = milnor_lattice(&d).unwrap();
            assert_eq!(lattice.rank, 3);
            assert!(lattice.pairing.is_antisymmetric());
            assert!(pairing_entries_abs_le(&lattice, 1));
            for i in 0..3 {
                assert!(lattice.pairing.get(i, i).to_string() == "0");
            }
            let cat = build_fs_category::<Rat>(&d, &b, 4).unwrap().category;
            let euler = euler_pairing(&cat);
            let eps = compare_lattices(&lattice, &euler).unwrap();
            assert!(eps.is_some(), "no orientation signs reconcile the pairings");
        }
    }

    #[test]
    fn euler_entry_of_the_shifted_configuration_is_positive() {
        // One generator in an even negative degree still counts +1.
        let (d, b) = fx::pi3();
        let cat = build_fs_category::<Rat>(&d, &b, 4).unwrap().category;
        let euler = euler_pairing(&cat);
        assert_eq!(euler.get(0, 2).to_string(), "1");
    }

    #[test]
    fn opposite_degree_generators_cancel_in_the_euler_form() {
        let (d, b) = fx::torus_double();
        // Indices 1 and 1: both odd, the entry is -2.
        let cat = build_fs_category::<Rat>(&d, &b, 4).unwrap().category;
        let euler = euler_pairing(&cat);
        assert_eq!(euler.get(0, 1).to_string(), "-2");
        // Shift one crossing index by regrading... a half-shift cannot split
        // a single curve pair, so instead check the zero-sum case directly
        // on the bigon annulus: degrees 0 and 1 cancel.
        let (d, b) = fx::annulus_bigons();
        let cat = build_fs_category::<Rat>(&d, &b, 4).unwrap().category;
        let euler = euler_pairing(&cat);
        assert_eq!(euler.get(0, 1).to_string(), "0");
    }

    #[test]
    fn total_space_homology_of_the_three_configurations() {
        let (d1, _) = fx::pi1();
        assert_eq!(total_space_h1(&d1).unwrap().to_string(), "Z^4");
        let (d2, _) = fx::pi2();
        assert_eq!(total_space_h1(&d2).unwrap().to_string(), "Z^3");
        let (d3, _) = fx::pi3();
        assert_eq!(total_space_h1(&d3).unwrap().to_string(), "Z^3 + Z/2");
    }

    #[test]
    fn nothing_attached_leaves_h1_free_of_full_rank() {
        let mut d = fx::annulus_core();
        d.curves[0].homology = vec![0];
        assert_eq!(total_space_h1(&d).unwrap().to_string(), "Z");
        let (d, _) = fx::disjoint_pair();
        assert_eq!(total_space_h1(&d).unwrap().to_string(), "Z^2");
    }

    #[test]
    fn rank_mismatch_rejected() {
        let (d, _) = fx::pi1();
        let lattice = milnor_lattice(&d).unwrap();
        let wrong = IntMatrix::new(2, 2);
        assert!(matches!(
            compare_lattices(&lattice, &wrong),
            Err(InvariantError::RankMismatch(..))
        ));
    }

    #[test]
    fn grading_shift_flips_euler_column_parity() {
        let (d, b) = fx::pi2();
        let base = euler_pairing(&build_fs_category::<Rat>(&d, &b, 4).unwrap().category);
        let shifted_branes = shift_brane_grading(&d, &b, 2, 1);
        let shifted =
            euler_pairing(&build_fs_category::<Rat>(&d, &shifted_branes, 4).unwrap().category);
        // Odd shift of curve 2 negates its row and column.
        for i in 0..3 {
            assert_eq!(shifted.get(i, 2), &(-base.get(i, 2).clone()));
            assert_eq!(shifted.get(2, i), &(-base.get(2, i).clone()));
        }
    }
}
