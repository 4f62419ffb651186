//! Rank profile of the pencil `alpha A + beta B` spanned by the two slices of
//! an algebra with a two-dimensional center.

use std::fmt;

use crate::algebra::TwoStepAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{det_poly, factor_squarefree, int, QuotientRingMatrix, RatMatrix, RatPoly};

/// A projective point `[alpha : beta]` of the pencil, or a set of conjugate ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PencilPoint {
    /// The roots of a monic squarefree polynomial in `t`, standing for `A + tB`.
    Affine(RatPoly),
    /// `[0 : 1]`, the slice `B` alone.
    Infinity,
}

impl PencilPoint {
    /// Number of distinct complex points represented.
    pub fn multiplicity(&self) -> usize {
        match self {
            PencilPoint::Affine(m) => m.degree().unwrap_or(0),
            PencilPoint::Infinity => 1,
        }
    }
}

impl fmt::Display for PencilPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PencilPoint::Affine(m) if m.degree() == Some(1) => {
                write!(f, "t = {}", -m.coeff(0) / m.coeff(1))
            }
            PencilPoint::Affine(m) => write!(f, "roots of {m}"),
            PencilPoint::Infinity => write!(f, "[0:1]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DropPoint {
    pub point: PencilPoint,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilReport {
    pub generic_rank: usize,
    /// Rank of the first slice, the `[1:0]` point.
    pub first_slice_rank: usize,
    /// Rank of the second slice, the `[0:1]` point.
    pub second_slice_rank: usize,
    pub drop_points: Vec<DropPoint>,
    /// Sum of the two smallest ranks at distinct projective points.
    pub min_pair_sum: usize,
}

impl PencilReport {
    /// Whether the two-direction rank bound exceeds the generator count.
    pub fn certifies_indecomposable(&self, q: usize) -> bool {
        self.min_pair_sum > q
    }
}

pub fn pencil_analyze(alg: &TwoStepAlgebra) -> Result<PencilReport> {
    if alg.p() != 2 {
        return Err(Error::Precondition(format!("pencil analysis needs p = 2, got p = {}", alg.p())));
    }
    let mr = super::marginal_rank(alg);
    if mr != alg.q() {
        return Err(Error::Precondition(format!(
            "pencil analysis needs full marginal rank, got {mr} < q = {}",
            alg.q()
        )));
    }
    let a = alg.slice(0)?;
    let b = alg.slice(1)?;
    pencil_of(&a, &b)
}

/// Pencil analysis of an arbitrary pair of equal-shape skew matrices.
pub fn pencil_of(a: &RatMatrix, b: &RatMatrix) -> Result<PencilReport> {
    if a.shape() != b.shape() || !a.is_square() {
        return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", a.shape(), b.shape())));
    }
    let q = a.rows();
    // The rank-drop locus of A + tB has at most q points, so q + 2 samples
    // include a generic one.
    let mut generic_rank = 0;
    for x in 0..=(q as i64 + 1) {
        generic_rank = generic_rank.max(a.add_scaled(b, &int(x))?.rank());
    }
    let first_slice_rank = a.rank();
    let second_slice_rank = b.rank();

    let locus = drop_locus(a, b, generic_rank)?;
    let mut drop_points = Vec::new();
    if !locus.is_constant() {
        for factor in factor_squarefree(&locus) {
            if factor.degree() == Some(1) {
                let root = -factor.coeff(0) / factor.coeff(1);
                let rank = a.add_scaled(b, &root)?.rank();
                drop_points.push(DropPoint { point: PencilPoint::Affine(factor.monic()), rank });
            } else {
                for (part, rank) in QuotientRingMatrix::from_pencil(a, b, &factor)?.rank_by_factor()? {
                    drop_points.push(DropPoint { point: PencilPoint::Affine(part), rank });
                }
            }
        }
    }
    if second_slice_rank < generic_rank {
        drop_points.push(DropPoint { point: PencilPoint::Infinity, rank: second_slice_rank });
    }
    debug_assert!(drop_points.iter().all(|d| d.rank < generic_rank));

    let mut ranks: Vec<usize> = drop_points
        .iter()
        .flat_map(|d| std::iter::repeat(d.rank).take(d.point.multiplicity()))
        .collect();
    ranks.extend([generic_rank, generic_rank]);
    ranks.sort_unstable();
    let min_pair_sum = ranks[0] + ranks[1];

    Ok(PencilReport {
        generic_rank,
        first_slice_rank,
        second_slice_rank,
        drop_points,
        min_pair_sum,
    })
}

/// Squarefree monic polynomial whose roots are exactly the affine `t` with
/// `rank(A + tB) < r`. For skew matrices the rank is the largest size of a
/// nonsingular principal minor, so the principal `r x r` minors suffice.
fn drop_locus(a: &RatMatrix, b: &RatMatrix, r: usize) -> Result<RatPoly> {
    if r == 0 {
        return Ok(RatPoly::one());
    }
    let principal = a.is_skew() && b.is_skew();
    let subsets = combinations(a.rows(), r);
    let mut g = RatPoly::zero();
    let mut visit = |rows: &[usize], cols: &[usize]| -> Result<bool> {
        let d = det_poly(&a.submatrix(rows, cols), &b.submatrix(rows, cols))?;
        if !d.is_zero() {
            g = if g.is_zero() { d.monic() } else { g.gcd(&d) };
        }
        Ok(!g.is_zero() && g.is_constant())
    };
    'outer: for rows in &subsets {
        if principal {
            if visit(rows, rows)? {
                break;
            }
        } else {
            for cols in &subsets {
                if visit(rows, cols)? {
                    break 'outer;
                }
            }
        }
    }
    debug_assert!(!g.is_zero(), "generic rank r has a nonzero r-minor");
    Ok(g.squarefree_part())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_bracket_table, validate};

    fn alg(q: usize, p: usize, table: &str) -> TwoStepAlgebra {
        validate(parse_bracket_table(q, p, table).unwrap()).unwrap()
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(6, 4).len(), 15);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn n82_1_profile() {
        let r = pencil_analyze(&alg(6, 2, "[x1,x2]=y1; [x3,x4]=y2; [x5,x6]=y1+y2")).unwrap();
        assert_eq!(r.generic_rank, 6);
        assert_eq!((r.first_slice_rank, r.second_slice_rank), (4, 4));
        let mut points: Vec<String> = r.drop_points.iter().map(|d| format!("{} {}", d.point, d.rank)).collect();
        points.sort();
        assert_eq!(points, vec!["[0:1] 4", "t = -1 4", "t = 0 4"]);
        assert_eq!(r.min_pair_sum, 8);
        assert!(r.certifies_indecomposable(6));
    }

    #[test]
    fn heisenberg_pair_fails_bound() {
        let r = pencil_analyze(&alg(4, 2, "[x1,x2]=y1; [x3,x4]=y2")).unwrap();
        assert_eq!(r.generic_rank, 4);
        assert_eq!(r.min_pair_sum, 4);
        assert!(!r.certifies_indecomposable(4));
    }

    #[test]
    fn irrational_drop_points() {
        // Pfaffian of A + tB is 2 - t^2.
        let a = RatMatrix::from_i64(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 2], &[0, 0, -2, 0]]);
        let b = RatMatrix::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
        let r = pencil_of(&a, &b).unwrap();
        assert_eq!(r.generic_rank, 4);
        assert_eq!(
            r.drop_points,
            vec![DropPoint { point: PencilPoint::Affine(RatPoly::from_ints(&[-2, 0, 1])), rank: 2 }]
        );
        assert_eq!(r.min_pair_sum, 4);
    }

    #[test]
    fn rejects_wrong_p() {
        let a = alg(5, 3, "[x1,x2]=[x3,x4]=y1; [x3,x5]=y2; [x4,x5]=y3");
        assert!(matches!(pencil_analyze(&a), Err(Error::Precondition(_))));
    }
}
