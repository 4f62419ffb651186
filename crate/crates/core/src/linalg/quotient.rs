//! Matrices over Q[t]/(m(t)) and the pencil primitives built on them.
//!
//! For squarefree `m` the quotient ring is a product of number fields, one per
//! irreducible factor. Elimination treats a pivot candidate as usable only when
//! it is a unit; a nonzero non-unit exposes a factor of `m`, and the modulus is
//! split there and each part eliminated separately. The result is therefore
//! exact at every root of `m` without ever factoring `m` up front.

use num_traits::{One, Zero};

use super::matrix::RatMatrix;
use super::poly::RatPoly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRingMatrix {
    modulus: RatPoly,
    rows: usize,
    cols: usize,
    entries: Vec<RatPoly>,
}

impl QuotientRingMatrix {
    /// Entries are reduced modulo `modulus` on construction.
    pub fn new(modulus: RatPoly, rows: usize, cols: usize, entries: Vec<RatPoly>) -> Result<Self> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidDimensions(
                "quotient modulus must have positive degree".into(),
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let modulus = modulus.monic();
        let entries = entries.iter().map(|e| e.rem(&modulus)).collect();
        Ok(QuotientRingMatrix { modulus, rows, cols, entries })
    }

    /// The image of `A + t B` in the quotient ring.
    pub fn from_pencil(a: &RatMatrix, b: &RatMatrix, modulus: &RatPoly) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::ShapeMismatch(format!(
                "pencil slices {:?} vs {:?}",
                a.shape(),
                b.shape()
            )));
        }
        let entries = a
            .entries()
            .iter()
            .zip(b.entries())
            .map(|(x, y)| RatPoly::new(vec![x.clone(), y.clone()]))
            .collect();
        Self::new(modulus.clone(), a.rows(), a.cols(), entries)
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatPoly {
        &self.entries[i * self.cols + j]
    }

    /// Rank at the roots of every factor the elimination had to split off.
    /// The returned moduli are monic, pairwise coprime and multiply to `modulus`.
    pub fn rank_by_factor(&self) -> Result<Vec<(RatPoly, usize)>> {
        if !self.modulus.is_squarefree() {
            return Err(Error::NotSquarefree(self.modulus.to_string()));
        }
        let rows: Vec<Vec<RatPoly>> = (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let mut out = Vec::new();
        eliminate(rows, self.cols, self.modulus.clone(), &mut out);
        Ok(out)
    }

    /// Rank at any root of the modulus. Fails with `ModulusSplits` when the
    /// modulus turns out to be reducible with roots of different rank.
    pub fn rank(&self) -> Result<usize> {
        let parts = self.rank_by_factor()?;
        let first = parts[0].1;
        if parts.iter().all(|(_, r)| *r == first) {
            Ok(first)
        } else {
            let detail: Vec<String> = parts
                .iter()
                .map(|(m, r)| format!("rank {r} mod ({m})"))
                .collect();
            Err(Error::ModulusSplits(detail.join(", ")))
        }
    }
}

fn eliminate(mut rows: Vec<Vec<RatPoly>>, cols: usize, m: RatPoly, out: &mut Vec<(RatPoly, usize)>) {
    let original = rows.clone();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        let g = rows[p][c].gcd(&m);
        if !g.is_constant() {
            // Zero divisor: m = g * (m / g) with coprime parts.
            let h = m.div_rem(&g).0.monic();
            for part in [g, h] {
                let reduced = original
                    .iter()
                    .map(|row| row.iter().map(|e| e.rem(&part)).collect())
                    .collect();
                eliminate(reduced, cols, part, out);
            }
            return;
        }
        rows.swap(r, p);
        let inv = inverse_mod(&rows[r][c], &m);
        rows[r] = rows[r].iter().map(|e| e.mul(&inv).rem(&m)).collect();
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                row[j] = row[j].sub(&f.mul(&pivot[j])).rem(&m);
            }
        }
        r += 1;
    }
    out.push((m, r));
}

/// Inverse of a unit `a` modulo `m` via the extended Euclidean algorithm.
pub(crate) fn inverse_mod(a: &RatPoly, m: &RatPoly) -> RatPoly {
    let (mut r0, mut r1) = (m.clone(), a.rem(m));
    let (mut s0, mut s1) = (RatPoly::zero(), RatPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        r0 = r1;
        r1 = r;
        let s = s0.sub(&q.mul(&s1));
        s0 = s1;
        s1 = s;
    }
    debug_assert!(r0.is_constant() && !r0.is_zero(), "inverse_mod on a non-unit");
    s0.scale(&r0.leading().recip()).rem(m)
}

/// `det(A + t B)` as a polynomial in `t`, by exact evaluation at `n + 1`
/// integer points followed by Lagrange interpolation.
pub fn det_poly(a: &RatMatrix, b: &RatMatrix) -> Result<RatPoly> {
    if a.shape() != b.shape() || !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "det_poly needs equal square slices, got {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let n = a.rows();
    let mut points = Vec::with_capacity(n + 1);
    for x in 0..=n as i64 {
        let t = int(x);
        points.push((t.clone(), a.add_scaled(b, &t)?.det()?));
    }
    Ok(RatPoly::interpolate(&points))
}

/// Rank of `A + tau B` for a root `tau` of `m`, computed in Q[t]/(m).
pub fn rank_at_root(a: &RatMatrix, b: &RatMatrix, m: &RatPoly) -> Result<usize> {
    if m.degree() == Some(1) {
        // Rational root: evaluate directly.
        let root = -m.coeff(0) / m.coeff(1);
        if a.shape() != b.shape() {
            return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", a.shape(), b.shape())));
        }
        return Ok(a.add_scaled(b, &root)?.rank());
    }
    QuotientRingMatrix::from_pencil(a, b, m)?.rank()
}

/// Splits a squarefree polynomial into factors: linear factors for every
/// rational root, quadratic factors of quartics found by Kronecker's method,
/// and the remainder as a single factor. Factors of degree at most 3 that
/// come out of this are irreducible; a leftover of degree 5 or more may not
/// be, which `QuotientRingMatrix::rank_by_factor` tolerates.
pub fn factor_squarefree(f: &RatPoly) -> Vec<RatPoly> {
    let mut rest = f.squarefree_part();
    let mut out = Vec::new();
    for root in f.rational_roots() {
        let lin = RatPoly::linear_root(&root);
        rest = rest.div_rem(&lin).0;
        out.push(lin);
    }
    if rest.degree() == Some(4) {
        if let Some(g) = kronecker_quadratic(&rest) {
            let h = rest.div_rem(&g).0.monic();
            out.push(g.monic());
            out.push(h);
            rest = RatPoly::one();
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest.monic());
    }
    out
}

/// Searches for a quadratic integer factor of a quartic without rational roots.
fn kronecker_quadratic(f: &RatPoly) -> Option<RatPoly> {
    use num_bigint::BigInt;
    use num_traits::Signed;

    let ints = f.primitive_integer_coeffs();
    let prim = RatPoly::new(ints.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let xs = [int(0), int(1), int(-1)];
    let values: Vec<BigInt> = xs.iter().map(|x| prim.eval(x).to_integer()).collect();
    if values.iter().any(Zero::is_zero) {
        return None;
    }
    let signed_divisors = |v: &BigInt| -> Vec<BigInt> {
        let mut ds = Vec::new();
        let n = v.abs();
        let mut d = BigInt::one();
        while &d * &d <= n {
            if (&n % &d).is_zero() {
                for x in [d.clone(), &n / &d] {
                    ds.push(x.clone());
                    ds.push(-x);
                }
            }
            d += 1;
        }
        ds.sort();
        ds.dedup();
        ds
    };
    let d0 = signed_divisors(&values[0]);
    let d1 = signed_divisors(&values[1]);
    let dm = signed_divisors(&values[2]);
    for a in &d0 {
        for b in &d1 {
            for c in &dm {
                let g = RatPoly::interpolate(&[
                    (xs[0].clone(), Rational::from_integer(a.clone())),
                    (xs[1].clone(), Rational::from_integer(b.clone())),
                    (xs[2].clone(), Rational::from_integer(c.clone())),
                ]);
                if g.degree() != Some(2) || !g.coeffs().iter().all(|x| x.is_integer()) {
                    continue;
                }
                if prim.rem(&g).is_zero() {
                    return Some(g);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_poly_scalar() {
        let one = RatMatrix::from_i64(&[&[1]]);
        assert_eq!(det_poly(&one, &one).unwrap(), RatPoly::from_ints(&[1, 1]));
        let a = RatMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        let zero = RatMatrix::zeros(2, 2);
        assert_eq!(det_poly(&a, &zero).unwrap(), RatPoly::from_ints(&[5]));
        assert!(det_poly(&a, &RatMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn rank_in_gaussian_rationals() {
        // A + iB = [[1, -i], [i, 1]] is singular.
        let a = RatMatrix::identity(2);
        let b = RatMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let m = RatPoly::from_ints(&[1, 0, 1]);
        assert_eq!(rank_at_root(&a, &b, &m).unwrap(), 1);
        // Generic rank is 2.
        assert_eq!(a.add_scaled(&b, &int(3)).unwrap().rank(), 2);
    }

    #[test]
    fn rational_root_matches_direct_rank() {
        let a = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let m = RatPoly::from_ints(&[0, 1]);
        assert_eq!(rank_at_root(&a, &b, &m).unwrap(), a.rank());
    }

    #[test]
    fn not_squarefree_rejected() {
        let a = RatMatrix::identity(2);
        let m = RatPoly::from_ints(&[1, 0, 1]).mul(&RatPoly::from_ints(&[1, 0, 1]));
        let err = rank_at_root(&a, &a, &m).unwrap_err();
        assert!(matches!(err, Error::NotSquarefree(_)));
    }

    #[test]
    fn reducible_modulus_splits_on_demand() {
        // diag(t^2 - 2, t - 1) has rank 1 at ±sqrt 2 and at 1, and rank 2 at
        // the roots of t^2 + 1.
        let entries = vec![
            RatPoly::from_ints(&[-2, 0, 1]),
            RatPoly::zero(),
            RatPoly::zero(),
            RatPoly::from_ints(&[-1, 1]),
        ];
        let m = RatPoly::from_ints(&[-2, 0, 1]).mul(&RatPoly::from_ints(&[1, 0, 1]));
        let qm = QuotientRingMatrix::new(m, 2, 2, entries).unwrap();
        let mut parts = qm.rank_by_factor().unwrap();
        parts.sort_by_key(|(_, r)| *r);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (RatPoly::from_ints(&[-2, 0, 1]), 1));
        assert_eq!(parts[1], (RatPoly::from_ints(&[1, 0, 1]), 2));
        assert!(matches!(qm.rank(), Err(Error::ModulusSplits(_))));
    }

    #[test]
    fn factor_squarefree_examples() {
        // t (t + 1) (t^2 + 1) (t^2 - 2)
        let f = RatPoly::from_ints(&[0, 1])
            .mul(&RatPoly::from_ints(&[1, 1]))
            .mul(&RatPoly::from_ints(&[1, 0, 1]))
            .mul(&RatPoly::from_ints(&[-2, 0, 1]));
        let mut fs = factor_squarefree(&f);
        fs.sort_by_key(|p| (p.degree(), p.coeffs().to_vec()));
        assert_eq!(
            fs,
            vec![
                RatPoly::from_ints(&[0, 1]),
                RatPoly::from_ints(&[1, 1]),
                RatPoly::from_ints(&[-2, 0, 1]),
                RatPoly::from_ints(&[1, 0, 1]),
            ]
        );
    }

    #[test]
    fn skew_block_pencil() {
        // diag(J, tJ): det = t^2
        let a = RatMatrix::from_rows(vec![
            vec![int(0), int(1), int(0), int(0)],
            vec![int(-1), int(0), int(0), int(0)],
            vec![int(0); 4],
            vec![int(0); 4],
        ])
        .unwrap();
        let mut b = RatMatrix::zeros(4, 4);
        b[(2, 3)] = int(1);
        b[(3, 2)] = int(-1);
        assert_eq!(det_poly(&a, &b).unwrap(), RatPoly::from_ints(&[0, 0, 1]));
    }
}
