//! Generator-relation presentations and duality.
//!
//! The free two-step algebra on `q` generators has center `V` with basis the
//! pairs `(u_i, u_j)`, `i < j`. Every `q`-generator two-step algebra is a
//! quotient `N^q / I` by a proper subspace `I` of `V`, and its dual is
//! `N^q / I^perp` for the standard inner product on the pair coordinates.
//! Isomorphism of quotients corresponds to `GL(q)`-equivalence of the ideals;
//! no orbit computation is attempted here.

use num_traits::{One, Zero};

use crate::algebra::{self, validate, StructureTensor, TwoStepAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, RatMatrix, Rational};

/// Lexicographic basis of `V`: `(0,1), (0,2), ..., (q-2,q-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairBasis {
    q: usize,
    pairs: Vec<(usize, usize)>,
}

impl PairBasis {
    pub fn new(q: usize) -> Self {
        PairBasis {
            q,
            pairs: algebra::pairs(q).collect(),
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Coordinate of `(u_i, u_j)` and the sign of the skew normalization.
    pub fn coordinate(&self, i: usize, j: usize) -> Option<(usize, i64)> {
        if i == j || i >= self.q || j >= self.q {
            return None;
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        // Pairs before row a: sum_{r<a} (q-1-r); then offset within the row.
        let idx = a * (2 * self.q - a - 1) / 2 + (b - a - 1);
        Some((idx, sign))
    }
}

pub fn pair_count(q: usize) -> usize {
    q * q.saturating_sub(1) / 2
}

/// Subspace of `V`, kept in reduced row echelon form so equality of values is
/// equality of subspaces. The whole of `V` is representable (it arises as the
/// complement of the zero ideal) but cannot be quotiented by.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationIdeal {
    q: usize,
    span: RatMatrix,
    pivots: Vec<usize>,
}

impl RelationIdeal {
    /// Canonicalizes the row space of `rows` (columns indexed by `PairBasis`).
    pub fn new(q: usize, rows: &RatMatrix) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidDimensions(format!("need q >= 2, got {q}")));
        }
        let m = pair_count(q);
        if rows.cols() != m {
            return Err(Error::ShapeMismatch(format!(
                "relation vectors have {} coordinates, V has {m}",
                rows.cols()
            )));
        }
        let (rref, pivots) = rows.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        let all_cols: Vec<usize> = (0..m).collect();
        let span = rref.submatrix(&keep, &all_cols);
        Ok(RelationIdeal { q, span, pivots })
    }

    pub fn zero(q: usize) -> Result<Self> {
        Self::new(q, &RatMatrix::zeros(0, pair_count(q)))
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.span.rows()
    }

    /// Rows of the reduced row echelon form.
    pub fn span(&self) -> &RatMatrix {
        &self.span
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_proper(&self) -> bool {
        self.dim() < pair_count(self.q)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let row = RatMatrix::from_rows(vec![v.to_vec()]).expect("single row");
        match RatMatrix::vcat(&[self.span.clone(), row]) {
            Ok(stacked) => stacked.rank() == self.dim(),
            Err(_) => false,
        }
    }

    /// `I^perp` for the standard dot product on pair coordinates.
    pub fn orthogonal_complement(&self) -> RelationIdeal {
        let m = pair_count(self.q);
        let rows: Vec<Vec<Rational>> = self.span.nullspace().iter().map(|v| v.col(0)).collect();
        let mat = if rows.is_empty() {
            RatMatrix::zeros(0, m)
        } else {
            RatMatrix::from_rows(rows).expect("uniform")
        };
        RelationIdeal::new(self.q, &mat).expect("same q and width")
    }

    /// Text form in the relation syntax, one vector per RREF row.
    pub fn to_expression(&self) -> String {
        let basis = PairBasis::new(self.q);
        let vecs: Vec<String> = (0..self.dim())
            .map(|r| {
                let mut s = String::new();
                for (c, &(i, j)) in basis.pairs().iter().enumerate() {
                    let a = &self.span[(r, c)];
                    if a.is_zero() {
                        continue;
                    }
                    let neg = a < &Rational::zero();
                    let mag = if neg { -a.clone() } else { a.clone() };
                    if s.is_empty() {
                        if neg {
                            s.push('-');
                        }
                    } else {
                        s.push_str(if neg { " - " } else { " + " });
                    }
                    if !mag.is_one() {
                        s.push_str(&format_rational(&mag));
                    }
                    s.push_str(&format!("[u{},u{}]", i + 1, j + 1));
                }
                s
            })
            .collect();
        vecs.join("; ")
    }
}

/// Parses `[u1,u2]+[u5,u6]; 2[u3,u4]-1/2[u5,u6]` into a proper ideal.
pub fn parse_relation(q: usize, expr: &str) -> Result<RelationIdeal> {
    if q < 2 {
        return Err(Error::InvalidDimensions(format!("need q >= 2, got {q}")));
    }
    let basis = PairBasis::new(q);
    let vectors: Vec<&str> = expr.split(';').map(str::trim).collect();
    if vectors.iter().all(|v| v.is_empty()) {
        return Err(Error::Malformed("empty relation list".into()));
    }
    let mut rows = Vec::new();
    for v in vectors {
        if v.is_empty() {
            return Err(Error::Malformed(format!("empty relation vector in {expr:?}")));
        }
        let coords = parse_vector(&basis, v)?;
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::ZeroRelation(v.to_string()));
        }
        rows.push(coords);
    }
    let ideal = RelationIdeal::new(q, &RatMatrix::from_rows(rows)?)?;
    if !ideal.is_proper() {
        return Err(Error::NonProperIdeal { dim: ideal.dim() });
    }
    Ok(ideal)
}

fn parse_vector(basis: &PairBasis, s: &str) -> Result<Vec<Rational>> {
    let bad = |why: String| Error::Malformed(format!("{why} in {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coords = vec![Rational::zero(); basis.len()];
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let open = rest.find('[').ok_or_else(|| bad("expected a [u_i,u_j] term".into()))?;
        let close = rest[open..]
            .find(']')
            .map(|c| open + c)
            .ok_or_else(|| bad("unclosed bracket".into()))?;
        let prefix = &rest[..open];
        let (sign, coef) = match prefix.strip_prefix('-') {
            Some(c) => (-1, c),
            None => (1, prefix.strip_prefix('+').unwrap_or(prefix)),
        };
        let coef = coef.trim_end_matches('*');
        let mut c = if coef.is_empty() {
            Rational::one()
        } else {
            parse_rational(coef)?
        };
        if sign < 0 {
            c = -c;
        }
        let (i, j) = crate::algebra::table_pair(&rest[open..=close], 'u')?;
        if i > basis.q() || j > basis.q() {
            return Err(bad(format!("index exceeds q={}", basis.q())));
        }
        let (idx, sgn) = basis
            .coordinate(i - 1, j - 1)
            .ok_or_else(|| bad(format!("[u{i},u{j}] is not a pair of distinct generators")))?;
        if sgn < 0 {
            c = -c;
        }
        coords[idx] += c;
        rest = &rest[close + 1..];
        if !rest.is_empty() && !rest.starts_with(['+', '-']) {
            return Err(bad("terms must be joined by + or -".into()));
        }
    }
    Ok(coords)
}

/// `N^q`: center basis = the pairs, `[x_i, x_j] = y_(i,j)`.
pub fn free_algebra(q: usize) -> Result<TwoStepAlgebra> {
    quotient(q, &RelationIdeal::zero(q)?)
}

/// `N^q / I`. The center basis is the images of the pair coordinates that are
/// not pivots of the ideal's reduced row echelon form, in pair order.
pub fn quotient(q: usize, ideal: &RelationIdeal) -> Result<TwoStepAlgebra> {
    if ideal.q() != q {
        return Err(Error::ShapeMismatch(format!("ideal over q={} used with q={q}", ideal.q())));
    }
    if !ideal.is_proper() {
        return Err(Error::NonProperIdeal { dim: ideal.dim() });
    }
    let basis = PairBasis::new(q);
    let m = basis.len();
    let free: Vec<usize> = (0..m).filter(|c| !ideal.pivots().contains(c)).collect();
    let p = free.len();
    let mut slices = vec![RatMatrix::zeros(q, q); p];
    for (c, &(i, j)) in basis.pairs().iter().enumerate() {
        let image: Vec<Rational> = match ideal.pivots().iter().position(|&pc| pc == c) {
            // e_c = -sum_{free d} R[r][d] e_d modulo I
            Some(r) => free.iter().map(|&d| -ideal.span()[(r, d)].clone()).collect(),
            None => free.iter().map(|&d| if d == c { Rational::one() } else { Rational::zero() }).collect(),
        };
        for (k, a) in image.into_iter().enumerate() {
            if !a.is_zero() {
                slices[k][(j, i)] = -a.clone();
                slices[k][(i, j)] = a;
            }
        }
    }
    let tensor = StructureTensor::from_slices(&slices)?;
    Ok(validate(tensor)?.with_presentation(ideal.clone()))
}

/// `N^perp = N^q / I^perp` for an algebra built from a presentation.
pub fn dual(alg: &TwoStepAlgebra) -> Result<TwoStepAlgebra> {
    let ideal = alg.presentation().ok_or(Error::NoPresentation)?;
    quotient(ideal.q(), &ideal.orthogonal_complement())
}
