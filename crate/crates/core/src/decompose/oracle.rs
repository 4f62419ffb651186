//! Bounded, seeded search for a decomposing basis.
//!
//! With full marginal rank, splittings `N = N1 + N2` correspond to idempotent
//! pairs `(S, C)` of generator and center endomorphisms with
//! `C[x, y] = [Sx, y] = [x, Sy]`. Those pairs form an associative algebra cut
//! out by linear equations, solved exactly here. The search then samples
//! elements of it (basis elements first, then seeded random combinations with
//! bounded integer coefficients) and splits each sample's minimal polynomial
//! into coprime parts; a nontrivial split gives an idempotent by the Chinese
//! remainder theorem. Any witness returned has been verified exactly.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{trivial_split, BlockDiagonalWitness};
use crate::algebra::{BasisChange, TwoStepAlgebra};
use crate::error::Result;
use crate::linalg::{factor_squarefree, int, inverse_mod, RatMatrix, RatPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Samples examined, basis elements included.
    pub max_candidates: usize,
    /// Random coefficients are drawn from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
    pub seed: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_candidates: 64, coeff_bound: 3, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub witness: Option<BlockDiagonalWitness>,
    /// Dimension of the space of admissible `(S, C)` pairs; 1 means only scalars.
    pub endomorphism_dim: Option<usize>,
    pub candidates_tried: usize,
    pub seed: u64,
}

pub fn brute_force_oracle(alg: &TwoStepAlgebra, budget: OracleBudget) -> Result<OracleOutcome> {
    let mut outcome = OracleOutcome {
        witness: None,
        endomorphism_dim: None,
        candidates_tried: 0,
        seed: budget.seed,
    };
    if let Some(split) = trivial_split(alg)? {
        outcome.witness = Some(split.witness);
        return Ok(outcome);
    }
    let basis = endomorphism_basis(alg)?;
    outcome.endomorphism_dim = Some(basis.len());
    if basis.len() <= 1 {
        return Ok(outcome);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let bound = budget.coeff_bound.max(1);
    for n in 0..budget.max_candidates {
        outcome.candidates_tried = n + 1;
        let sample = if n < basis.len() {
            basis[n].clone()
        } else {
            let mut acc = Pair::zero(alg.q(), alg.p());
            for b in &basis {
                let c = int(rng.gen_range(-bound..=bound));
                acc = acc.add_scaled(b, &c)?;
            }
            acc
        };
        if let Some(w) = witness_from_sample(alg, &sample)? {
            outcome.witness = Some(w);
            break;
        }
    }
    Ok(outcome)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pair {
    gens: RatMatrix,
    centers: RatMatrix,
}

impl Pair {
    fn zero(q: usize, p: usize) -> Self {
        Pair { gens: RatMatrix::zeros(q, q), centers: RatMatrix::zeros(p, p) }
    }

    fn add_scaled(&self, other: &Pair, c: &Rational) -> Result<Pair> {
        Ok(Pair {
            gens: self.gens.add_scaled(&other.gens, c)?,
            centers: self.centers.add_scaled(&other.centers, c)?,
        })
    }
}

/// Basis of `{(S, C) : C[e_i, e_j] = [S e_i, e_j] = [e_i, S e_j]}`.
fn endomorphism_basis(alg: &TwoStepAlgebra) -> Result<Vec<Pair>> {
    let (q, p) = (alg.q(), alg.p());
    let t = alg.tensor();
    let s_var = |l: usize, i: usize| l * q + i;
    let c_var = |k: usize, m: usize| q * q + k * p + m;
    let unknowns = q * q + p * p;
    let mut rows = Vec::new();
    for i in 0..q {
        for j in 0..q {
            for k in 0..p {
                // C[e_i, e_j] - [S e_i, e_j]
                let mut left = vec![Rational::zero(); unknowns];
                // [S e_i, e_j] - [e_i, S e_j]
                let mut right = vec![Rational::zero(); unknowns];
                for m in 0..p {
                    left[c_var(k, m)] += t.get(i, j, m);
                }
                for l in 0..q {
                    left[s_var(l, i)] -= t.get(l, j, k);
                    right[s_var(l, i)] += t.get(l, j, k);
                    right[s_var(l, j)] -= t.get(i, l, k);
                }
                for row in [left, right] {
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let system = RatMatrix::from_rows(rows)?;
    Ok(system
        .nullspace()
        .into_iter()
        .map(|v| {
            let v = v.col(0);
            let gens = RatMatrix::new(q, q, v[..q * q].to_vec()).expect("q x q block");
            let centers = RatMatrix::new(p, p, v[q * q..].to_vec()).expect("p x p block");
            Pair { gens, centers }
        })
        .collect())
}

fn witness_from_sample(alg: &TwoStepAlgebra, sample: &Pair) -> Result<Option<BlockDiagonalWitness>> {
    let mu = minimal_polynomial(&sample.gens)?;
    let pieces = factor_squarefree(&mu.squarefree_part());
    if pieces.len() < 2 {
        return Ok(None);
    }
    // mu = f1 * f2 with f1 carrying exactly the roots of the first piece.
    let mut f1 = RatPoly::one();
    let mut rest = mu.clone();
    loop {
        let (quot, rem) = rest.div_rem(&pieces[0]);
        if !rem.is_zero() {
            break;
        }
        f1 = f1.mul(&pieces[0]);
        rest = quot;
    }
    let f2 = rest;
    // e = 1 mod f1, e = 0 mod f2.
    let e = inverse_mod(&f2, &f1).mul(&f2).rem(&mu);
    let proj_gens = eval_at(&e, &sample.gens)?;
    let proj_centers = eval_at(&e, &sample.centers)?;
    let comp_gens = RatMatrix::identity(alg.q()).sub(&proj_gens)?;
    let comp_centers = RatMatrix::identity(alg.p()).sub(&proj_centers)?;

    let first_gens = column_basis(&proj_gens);
    let first_centers = column_basis(&proj_centers);
    let mut gen_cols = first_gens.clone();
    gen_cols.extend(column_basis(&comp_gens));
    let mut center_cols = first_centers.clone();
    center_cols.extend(column_basis(&comp_centers));
    if first_gens.is_empty() || first_gens.len() == alg.q() {
        return Ok(None);
    }
    let new_gens = RatMatrix::from_rows(gen_cols)?.transpose();
    let new_centers = RatMatrix::from_rows(center_cols)?.transpose();
    let Ok(basis_change) = BasisChange::from_new_basis(&new_gens, &new_centers) else {
        return Ok(None);
    };
    let witness = BlockDiagonalWitness {
        generators: (0..first_gens.len()).collect(),
        centers: (0..first_centers.len()).collect(),
        basis_change,
    };
    Ok(witness.verify(alg).is_ok().then_some(witness))
}

/// Monic minimal polynomial by finding the first linear dependence among powers.
fn minimal_polynomial(m: &RatMatrix) -> Result<RatPoly> {
    let n = m.rows();
    let mut powers = vec![RatMatrix::identity(n)];
    loop {
        let cols: Vec<Vec<Rational>> = powers.iter().map(|p| p.entries().to_vec()).collect();
        let krylov = RatMatrix::from_rows(cols)?.transpose();
        if let Some(v) = krylov.nullspace().first() {
            return Ok(RatPoly::new(v.col(0)).monic());
        }
        let next = powers.last().expect("nonempty").mul(m)?;
        powers.push(next);
    }
}

fn eval_at(f: &RatPoly, m: &RatMatrix) -> Result<RatMatrix> {
    let n = m.rows();
    let mut acc = RatMatrix::zeros(n, n);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(m)?.add(&RatMatrix::identity(n).scale(c))?;
    }
    Ok(acc)
}

fn column_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = m.transpose().rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}
