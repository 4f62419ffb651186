//! Two-step nilpotent Lie algebras as structure tensors.
//!
//! An algebra with generators `x_1..x_q` and center basis `y_1..y_p` is stored
//! as the `q x q x p` array `a[i][j][k]` with `[x_i, x_j] = sum_k a[i][j][k] y_k`.
//! Both orientations of every pair are stored and skew-symmetry is checked when
//! a tensor is built. All triple brackets vanish, so the Jacobi identity holds
//! for any such table and is never checked.
//!
//! Rust-side indices are 0-based; text formats and reports are 1-based.

mod table;

pub use table::{parse_bracket_table, Bracket};
pub(crate) use table::parse_pair as table_pair;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::duality::RelationIdeal;
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureTensor {
    q: usize,
    p: usize,
    entries: Vec<Rational>,
}

impl StructureTensor {
    pub fn zeros(q: usize, p: usize) -> Result<Self> {
        if q < 2 || p < 1 {
            return Err(Error::InvalidDimensions(format!(
                "need q >= 2 and p >= 1, got q={q}, p={p}"
            )));
        }
        Ok(StructureTensor {
            q,
            p,
            entries: vec![Rational::zero(); q * q * p],
        })
    }

    /// Builds from a flat `[i][j][k]` array, checking skew-symmetry.
    pub fn from_entries(q: usize, p: usize, entries: Vec<Rational>) -> Result<Self> {
        let mut t = Self::zeros(q, p)?;
        if entries.len() != q * q * p {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {q}x{q}x{p} tensor",
                entries.len()
            )));
        }
        t.entries = entries;
        t.check_skew()?;
        Ok(t)
    }

    /// Builds from bracket records; each unordered pair may appear once.
    pub fn from_brackets(q: usize, p: usize, brackets: &[Bracket]) -> Result<Self> {
        let mut t = Self::zeros(q, p)?;
        let mut seen = std::collections::HashSet::new();
        for b in brackets {
            let (i, j) = (b.i, b.j);
            if i == 0 || j == 0 || i > q || j > q {
                return Err(Error::IndexOutOfRange(format!("[x{i},x{j}] with q={q}")));
            }
            if i == j {
                return Err(Error::SkewViolation { i, j, k: 1 });
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::Format(format!(
                    "duplicate bracket record for pair ({}, {})",
                    i.min(j),
                    i.max(j)
                )));
            }
            for (k, c) in &b.coeffs {
                if *k == 0 || *k > p {
                    return Err(Error::IndexOutOfRange(format!("y{k} with p={p}")));
                }
                t.add_to_pair(i - 1, j - 1, k - 1, c);
            }
        }
        Ok(t)
    }

    /// Builds from `p` skew `q x q` slice matrices.
    pub fn from_slices(slices: &[RatMatrix]) -> Result<Self> {
        let p = slices.len();
        let q = slices.first().map_or(0, RatMatrix::rows);
        let mut t = Self::zeros(q, p)?;
        for (k, s) in slices.iter().enumerate() {
            if s.shape() != (q, q) {
                return Err(Error::ShapeMismatch(format!("slice {} is {:?}", k + 1, s.shape())));
            }
            for i in 0..q {
                for j in 0..q {
                    *t.entry_mut(i, j, k) = s[(i, j)].clone();
                }
            }
        }
        t.check_skew()?;
        Ok(t)
    }

    fn check_skew(&self) -> Result<()> {
        for i in 0..self.q {
            for j in i..self.q {
                for k in 0..self.p {
                    if *self.get(i, j, k) != -self.get(j, i, k).clone() {
                        return Err(Error::SkewViolation { i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.q + j) * self.p + k
    }

    fn entry_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Rational {
        let n = self.idx(i, j, k);
        &mut self.entries[n]
    }

    fn add_to_pair(&mut self, i: usize, j: usize, k: usize, c: &Rational) {
        *self.entry_mut(i, j, k) += c;
        *self.entry_mut(j, i, k) -= c;
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.entries[self.idx(i, j, k)]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Center coordinates of `[x_i, x_j]`.
    pub fn bracket_vector(&self, i: usize, j: usize) -> Vec<Rational> {
        (0..self.p).map(|k| self.get(i, j, k).clone()).collect()
    }

    /// The skew matrix `A_k = (a[.][.][k])`.
    pub fn slice(&self, k: usize) -> Result<RatMatrix> {
        if k >= self.p {
            return Err(Error::IndexOutOfRange(format!("slice {} of p={}", k + 1, self.p)));
        }
        let mut m = RatMatrix::zeros(self.q, self.q);
        for i in 0..self.q {
            for j in 0..self.q {
                m[(i, j)] = self.get(i, j, k).clone();
            }
        }
        Ok(m)
    }

    pub fn slices(&self) -> Vec<RatMatrix> {
        (0..self.p).map(|k| self.slice(k).expect("k < p")).collect()
    }

    /// Rows indexed by pairs `i < j` (lexicographic), columns by center index.
    pub fn derived_matrix(&self) -> RatMatrix {
        let rows = pairs(self.q).map(|(i, j)| self.bracket_vector(i, j)).collect();
        RatMatrix::from_rows(rows).expect("uniform row length")
    }

    pub fn derived_dimension(&self) -> usize {
        self.derived_matrix().rank()
    }

    /// Nonzero brackets as 1-based records, pairs in lexicographic order.
    pub fn brackets(&self) -> Vec<Bracket> {
        pairs(self.q)
            .filter_map(|(i, j)| {
                let coeffs: Vec<(usize, Rational)> = (0..self.p)
                    .filter(|&k| !self.get(i, j, k).is_zero())
                    .map(|k| (k + 1, self.get(i, j, k).clone()))
                    .collect();
                (!coeffs.is_empty()).then_some(Bracket { i: i + 1, j: j + 1, coeffs })
            })
            .collect()
    }

    /// Relabels basis vectors: new generator `gen_perm[i]` is old generator `i`,
    /// likewise for the center.
    pub fn permuted(&self, gen_perm: &[usize], center_perm: &[usize]) -> Result<Self> {
        check_perm(gen_perm, self.q)?;
        check_perm(center_perm, self.p)?;
        let mut t = Self::zeros(self.q, self.p)?;
        for i in 0..self.q {
            for j in 0..self.q {
                for k in 0..self.p {
                    *t.entry_mut(gen_perm[i], gen_perm[j], center_perm[k]) = self.get(i, j, k).clone();
                }
            }
        }
        Ok(t)
    }

    /// The tensor in a new basis: slice `k` becomes
    /// `S^{-T} (sum_m C[k][m] A_m) S^{-1}`. The mixing block is ignored.
    pub fn apply_basis_change(&self, bc: &BasisChange) -> Result<Self> {
        if bc.s.rows() != self.q || bc.c.rows() != self.p {
            return Err(Error::ShapeMismatch(format!(
                "basis change for (q={}, p={}) applied to (q={}, p={})",
                bc.s.rows(),
                bc.c.rows(),
                self.q,
                self.p
            )));
        }
        let s_inv = bc.s.inverse()?;
        let s_inv_t = s_inv.transpose();
        let old = self.slices();
        let mut new_slices = Vec::with_capacity(self.p);
        for k in 0..self.p {
            let mut mixed = RatMatrix::zeros(self.q, self.q);
            for (m, slice) in old.iter().enumerate() {
                let c = &bc.c[(k, m)];
                if !c.is_zero() {
                    mixed = mixed.add_scaled(slice, c)?;
                }
            }
            new_slices.push(s_inv_t.mul(&mixed)?.mul(&s_inv)?);
        }
        Self::from_slices(&new_slices)
    }

    /// Embeds into the `n x n x n` structure constants over `(x_1..x_q, y_1..y_p)`.
    pub fn coefficient_tensor(&self) -> CoefficientTensor {
        let n = self.q + self.p;
        let mut entries = vec![Rational::zero(); n * n * n];
        for i in 0..self.q {
            for j in 0..self.q {
                for k in 0..self.p {
                    entries[(i * n + j) * n + self.q + k] = self.get(i, j, k).clone();
                }
            }
        }
        CoefficientTensor { n, entries }
    }

    /// Block concatenation: generators and centers of `self` first.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (q, p) = (self.q + other.q, self.p + other.p);
        let mut t = Self::zeros(q, p).expect("sum of valid sizes");
        for (src, go, co) in [(self, 0, 0), (other, self.q, self.p)] {
            for i in 0..src.q {
                for j in 0..src.q {
                    for k in 0..src.p {
                        *t.entry_mut(go + i, go + j, co + k) = src.get(i, j, k).clone();
                    }
                }
            }
        }
        t
    }
}

fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::ShapeMismatch(format!("permutation of length {} for {n}", perm.len())));
    }
    for &v in perm {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidDimensions(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

/// Pairs `(i, j)` with `i < j < q`, lexicographic.
pub fn pairs(q: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..q).flat_map(move |i| ((i + 1)..q).map(move |j| (i, j)))
}

/// Full structure constants `[z_i, z_j] = sum_k c[i][j][k] z_k` over all `n` basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTensor {
    n: usize,
    entries: Vec<Rational>,
}

impl CoefficientTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.entries[(i * self.n + j) * self.n + k]
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }
}

/// Basis change `[[S, 0], [P, C]]` from `(X, I)` to `(X^, I^)`: old vectors
/// expressed in the new basis are the columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    s: RatMatrix,
    c: RatMatrix,
    mixing: RatMatrix,
}

impl BasisChange {
    pub fn new(s: RatMatrix, c: RatMatrix, mixing: RatMatrix) -> Result<Self> {
        if !s.is_square() || !c.is_square() || mixing.shape() != (c.rows(), s.rows()) {
            return Err(Error::ShapeMismatch(format!(
                "S {:?}, C {:?}, P {:?}",
                s.shape(),
                c.shape(),
                mixing.shape()
            )));
        }
        if !s.is_invertible() {
            return Err(Error::Singular("generator block S".into()));
        }
        if !c.is_invertible() {
            return Err(Error::Singular("center block C".into()));
        }
        Ok(BasisChange { s, c, mixing })
    }

    /// Change with a zero mixing block.
    pub fn from_blocks(s: RatMatrix, c: RatMatrix) -> Result<Self> {
        let mixing = RatMatrix::zeros(c.rows(), s.rows());
        Self::new(s, c, mixing)
    }

    pub fn identity(q: usize, p: usize) -> Self {
        Self::from_blocks(RatMatrix::identity(q), RatMatrix::identity(p)).expect("identity")
    }

    /// From the new basis vectors written in old coordinates (as columns).
    pub fn from_new_basis(new_generators: &RatMatrix, new_centers: &RatMatrix) -> Result<Self> {
        let s = new_generators
            .inverse()
            .map_err(|_| Error::Singular("new generator vectors are dependent".into()))?;
        let c = new_centers
            .inverse()
            .map_err(|_| Error::Singular("new center vectors are dependent".into()))?;
        Self::from_blocks(s, c)
    }

    /// Monomial change: new generator `gen_perm[i]` is `gen_scale[i]^{-1}` times old
    /// generator `i`, so old `x_i = gen_scale[i] * x^_{gen_perm[i]}`.
    pub fn monomial(
        gen_perm: &[usize],
        gen_scale: &[Rational],
        center_perm: &[usize],
        center_scale: &[Rational],
    ) -> Result<Self> {
        let build = |perm: &[usize], scale: &[Rational]| -> Result<RatMatrix> {
            check_perm(perm, perm.len())?;
            if scale.len() != perm.len() || scale.iter().any(Zero::is_zero) {
                return Err(Error::Singular("monomial scales must be nonzero".into()));
            }
            let mut m = RatMatrix::zeros(perm.len(), perm.len());
            for (i, (&to, c)) in perm.iter().zip(scale).enumerate() {
                m[(to, i)] = c.clone();
            }
            Ok(m)
        };
        Self::from_blocks(build(gen_perm, gen_scale)?, build(center_perm, center_scale)?)
    }

    pub fn s(&self) -> &RatMatrix {
        &self.s
    }

    pub fn c(&self) -> &RatMatrix {
        &self.c
    }

    pub fn mixing(&self) -> &RatMatrix {
        &self.mixing
    }

    /// The change equivalent to applying `self` and then `next`.
    pub fn then(&self, next: &BasisChange) -> Result<Self> {
        let s = next.s.mul(&self.s)?;
        let c = next.c.mul(&self.c)?;
        let mixing = next.mixing.mul(&self.s)?.add(&next.c.mul(&self.mixing)?)?;
        Self::new(s, c, mixing)
    }

    pub fn inverse(&self) -> Result<Self> {
        let s_inv = self.s.inverse()?;
        let c_inv = self.c.inverse()?;
        let mixing = c_inv
            .mul(&self.mixing)?
            .mul(&s_inv)?
            .scale(&Rational::from_integer((-1).into()));
        Self::new(s_inv, c_inv, mixing)
    }
}

/// Metadata carried by catalog algebras. `rank_r` is the maximal-torus rank as
/// published; it is never computed here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogMeta {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub rank_r: Option<u32>,
    pub source_label: String,
    pub t_name: Option<String>,
}

/// Optional display names for the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisLabels {
    pub generators: Vec<String>,
    pub centers: Vec<String>,
}

/// A validated algebra: the bracket images span a `p`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoStepAlgebra {
    tensor: StructureTensor,
    labels: Option<BasisLabels>,
    meta: Option<CatalogMeta>,
    presentation: Option<RelationIdeal>,
}

/// Checks skew-symmetry and that the `y_k` form a basis of `[N, N]`.
pub fn validate(tensor: StructureTensor) -> Result<TwoStepAlgebra> {
    tensor.check_skew()?;
    let actual = tensor.derived_dimension();
    if actual != tensor.p {
        return Err(Error::DerivedDimDeficit { actual, expected: tensor.p });
    }
    Ok(TwoStepAlgebra {
        tensor,
        labels: None,
        meta: None,
        presentation: None,
    })
}

impl TwoStepAlgebra {
    pub fn tensor(&self) -> &StructureTensor {
        &self.tensor
    }

    pub fn into_tensor(self) -> StructureTensor {
        self.tensor
    }

    pub fn q(&self) -> usize {
        self.tensor.q
    }

    pub fn p(&self) -> usize {
        self.tensor.p
    }

    /// Dimension `q + p`.
    pub fn n(&self) -> usize {
        self.tensor.q + self.tensor.p
    }

    pub fn labels(&self) -> Option<&BasisLabels> {
        self.labels.as_ref()
    }

    pub fn meta(&self) -> Option<&CatalogMeta> {
        self.meta.as_ref()
    }

    /// The relation ideal this algebra was built from, when it came from a quotient.
    pub fn presentation(&self) -> Option<&RelationIdeal> {
        self.presentation.as_ref()
    }

    pub fn with_labels(mut self, labels: BasisLabels) -> Result<Self> {
        if labels.generators.len() != self.q() || labels.centers.len() != self.p() {
            return Err(Error::ShapeMismatch("label counts differ from (q, p)".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_meta(mut self, meta: CatalogMeta) -> Result<Self> {
        if meta.n != meta.q + meta.p || meta.q != self.q() || meta.p != self.p() {
            return Err(Error::InvalidDimensions(format!(
                "metadata (n={}, q={}, p={}) does not fit the tensor (q={}, p={})",
                meta.n,
                meta.q,
                meta.p,
                self.q(),
                self.p()
            )));
        }
        self.meta = Some(meta);
        Ok(self)
    }

    pub(crate) fn with_presentation(mut self, ideal: RelationIdeal) -> Self {
        self.presentation = Some(ideal);
        self
    }

    /// `[u, v]` for generator-space coordinate vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        let q = self.q();
        if u.len() != q || v.len() != q {
            return Err(Error::ShapeMismatch(format!(
                "bracket of vectors of length {} and {} with q={q}",
                u.len(),
                v.len()
            )));
        }
        let mut out = vec![Rational::zero(); self.p()];
        for i in 0..q {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..q {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let w = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let a = self.tensor.get(i, j, k);
                    if !a.is_zero() {
                        *o += &w * a;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Validated image under a basis change; metadata and presentation are dropped.
    pub fn apply_basis_change(&self, bc: &BasisChange) -> Result<Self> {
        validate(self.tensor.apply_basis_change(bc)?)
    }

    pub fn slice(&self, k: usize) -> Result<RatMatrix> {
        self.tensor.slice(k)
    }

    pub fn coefficient_tensor(&self) -> CoefficientTensor {
        self.tensor.coefficient_tensor()
    }
}

/// `a (+) b`: generators and centers of `a` first.
pub fn direct_sum(a: &TwoStepAlgebra, b: &TwoStepAlgebra) -> TwoStepAlgebra {
    validate(a.tensor.direct_sum(&b.tensor)).expect("direct sum of valid algebras is valid")
}

/// Largest center dimension `p` an indecomposable `n`-dimensional two-step
/// algebra can have: the largest `p` with `n <= q(q+1)/2` for `q = n - p`.
pub fn dimension_bound(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::InvalidDimensions(format!("dimension bound needs n >= 3, got {n}")));
    }
    let best = (1..n)
        .filter(|&p| {
            let q = n - p;
            n <= q * (q + 1) / 2
        })
        .max()
        .expect("p = 1 always fits for n >= 3");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    fn n82_1() -> TwoStepAlgebra {
        validate(parse_bracket_table(6, 2, "[x1,x2]=y1; [x3,x4]=y2; [x5,x6]=y1+y2").unwrap()).unwrap()
    }

    fn heisenberg() -> TwoStepAlgebra {
        validate(parse_bracket_table(2, 1, "[x1,x2]=y1").unwrap()).unwrap()
    }

    fn e(q: usize, i: usize) -> Vec<Rational> {
        (0..q).map(|k| if k == i { int(1) } else { int(0) }).collect()
    }

    #[test]
    fn validate_examples() {
        let a = n82_1();
        assert_eq!((a.q(), a.p(), a.n()), (6, 2, 8));

        let mut entries = vec![int(0); 2 * 2];
        entries[1] = int(1); // a[0][1][0]
        entries[2] = int(1); // a[1][0][0]
        assert_eq!(
            StructureTensor::from_entries(2, 1, entries),
            Err(Error::SkewViolation { i: 1, j: 2, k: 1 })
        );

        let t = parse_bracket_table(4, 2, "[x1,x2]=y1").unwrap();
        assert_eq!(validate(t), Err(Error::DerivedDimDeficit { actual: 1, expected: 2 }));
    }

    #[test]
    fn bracket_examples() {
        let a = n82_1();
        assert_eq!(a.bracket(&e(6, 0), &e(6, 1)).unwrap(), vec![int(1), int(0)]);
        let u: Vec<Rational> = e(6, 0).iter().zip(e(6, 2)).map(|(a, b)| a + b).collect();
        let v: Vec<Rational> = e(6, 1).iter().zip(e(6, 3)).map(|(a, b)| a + b).collect();
        assert_eq!(a.bracket(&u, &v).unwrap(), vec![int(1), int(1)]);
        assert_eq!(a.bracket(&u, &u).unwrap(), vec![int(0), int(0)]);
        assert!(a.bracket(&e(5, 0), &e(6, 0)).is_err());
    }

    #[test]
    fn identity_change_is_noop() {
        let a = n82_1();
        let t = a.tensor().apply_basis_change(&BasisChange::identity(6, 2)).unwrap();
        assert_eq!(&t, a.tensor());
    }

    #[test]
    fn rebased_decomposable_example() {
        // [x1,x2]=y1, [x3,x4]=y2 with x2, x3 replaced by x2 + x3 and x2 - x3.
        let t = parse_bracket_table(4, 2, "[x1,x2]=y1; [x3,x4]=y2").unwrap();
        let new_gens = RatMatrix::from_i64(&[
            &[1, 0, 0, 0],
            &[0, 1, 1, 0],
            &[0, 1, -1, 0],
            &[0, 0, 0, 1],
        ]);
        let bc = BasisChange::from_new_basis(&new_gens, &RatMatrix::identity(2)).unwrap();
        let rebased = t.apply_basis_change(&bc).unwrap();
        let expected =
            parse_bracket_table(4, 2, "[x1,x2]=y1; [x1,x3]=y1; [x2,x4]=y2; [x4,x3]=y2").unwrap();
        assert_eq!(rebased, expected);
        assert!(validate(rebased).is_ok());
    }

    #[test]
    fn slices_are_skew() {
        let a = n82_1();
        let s = a.slice(0).unwrap();
        assert_eq!(
            s,
            RatMatrix::from_i64(&[
                &[0, 1, 0, 0, 0, 0],
                &[-1, 0, 0, 0, 0, 0],
                &[0, 0, 0, 0, 0, 0],
                &[0, 0, 0, 0, 0, 0],
                &[0, 0, 0, 0, 0, 1],
                &[0, 0, 0, 0, -1, 0],
            ])
        );
        assert_eq!(s.transpose(), s.scale(&int(-1)));
        assert!(a.slice(2).is_err());
        assert!(StructureTensor::zeros(3, 2).unwrap().slice(1).unwrap().is_zero());
    }

    #[test]
    fn coefficient_tensor_counts() {
        let h = heisenberg().coefficient_tensor();
        assert_eq!(h.n(), 3);
        assert_eq!(h.get(0, 1, 2), &int(1));
        assert_eq!(h.get(1, 0, 2), &int(-1));
        assert_eq!(h.nonzero_count(), 2);
        // 2 + 2 + 4 nonzero entries: the y1 + y2 bracket hits two targets.
        assert_eq!(n82_1().coefficient_tensor().nonzero_count(), 8);
    }

    #[test]
    fn direct_sum_of_heisenbergs() {
        let h = heisenberg();
        let s = direct_sum(&h, &h);
        let expected = parse_bracket_table(4, 2, "[x1,x2]=y1; [x3,x4]=y2").unwrap();
        assert_eq!(s.tensor(), &expected);
    }

    #[test]
    fn dimension_bounds() {
        assert_eq!(dimension_bound(8).unwrap(), 4);
        assert_eq!(dimension_bound(9).unwrap(), 5);
        assert_eq!(dimension_bound(3).unwrap(), 1);
        assert!(dimension_bound(2).is_err());
    }

    #[test]
    fn basis_change_composition_and_inverse() {
        let t = n82_1().into_tensor();
        let s1 = RatMatrix::from_i64(&[
            &[1, 1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 2],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 1, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0],
            &[1, 0, 0, 0, 0, 1],
        ]);
        let c1 = RatMatrix::from_i64(&[&[1, 2], &[0, 1]]);
        let b1 = BasisChange::from_blocks(s1, c1).unwrap();
        let s2 = RatMatrix::identity(6).scale(&rat(1, 2));
        let c2 = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let p2 = RatMatrix::from_i64(&[&[1, 0, 0, 0, 0, 0], &[0, 0, 3, 0, 0, 0]]);
        let b2 = BasisChange::new(s2, c2, p2).unwrap();
        let stepwise = t.apply_basis_change(&b1).unwrap().apply_basis_change(&b2).unwrap();
        let composed = t.apply_basis_change(&b1.then(&b2).unwrap()).unwrap();
        assert_eq!(stepwise, composed);
        let back = stepwise.apply_basis_change(&b1.then(&b2).unwrap().inverse().unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn singular_basis_change_rejected() {
        let s = RatMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(matches!(
            BasisChange::from_blocks(s, RatMatrix::identity(1)),
            Err(Error::Singular(_))
        ));
    }
}
