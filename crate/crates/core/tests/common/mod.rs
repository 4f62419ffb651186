#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use twostep::algebra::{parse_bracket_table, validate, BasisChange, StructureTensor, TwoStepAlgebra};
use twostep::duality::{pair_count, RelationIdeal};
use twostep::linalg::{int, RatMatrix, Rational};

pub fn alg(q: usize, p: usize, table: &str) -> TwoStepAlgebra {
    validate(parse_bracket_table(q, p, table).unwrap()).unwrap()
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> RatMatrix {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| int(rng.gen_range(-bound..=bound))).collect())
            .collect();
        let m = RatMatrix::from_rows(rows).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn random_basis_change<R: Rng>(rng: &mut R, q: usize, p: usize, bound: i64) -> BasisChange {
    let s = random_invertible(rng, q, bound);
    let c = random_invertible(rng, p, bound);
    BasisChange::from_blocks(s, c).unwrap()
}

pub fn random_monomial<R: Rng>(rng: &mut R, q: usize, p: usize) -> BasisChange {
    let mut scale = |n: usize| -> Vec<Rational> {
        (0..n)
            .map(|_| {
                let v = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
                Rational::new(v.into(), rng.gen_range(1..=2).into())
            })
            .collect()
    };
    let gen_scale = scale(q);
    let center_scale = scale(p);
    let mut gen_perm: Vec<usize> = (0..q).collect();
    gen_perm.shuffle(rng);
    let mut center_perm: Vec<usize> = (0..p).collect();
    center_perm.shuffle(rng);
    BasisChange::monomial(&gen_perm, &gen_scale, &center_perm, &center_scale).unwrap()
}

/// A proper nonzero relation ideal with small integer generators.
pub fn random_ideal<R: Rng>(rng: &mut R, q: usize) -> RelationIdeal {
    let n = pair_count(q);
    loop {
        let d = rng.gen_range(1..n);
        let rows = (0..d)
            .map(|_| {
                (0..n)
                    .map(|_| if rng.gen_bool(0.4) { int(rng.gen_range(-2..=2)) } else { int(0) })
                    .collect()
            })
            .collect();
        let m = RatMatrix::from_rows(rows).unwrap();
        if let Ok(ideal) = RelationIdeal::new(q, &m) {
            if ideal.dim() > 0 && ideal.is_proper() {
                return ideal;
            }
        }
    }
}

/// A valid algebra with small integer structure constants.
pub fn random_algebra<R: Rng>(rng: &mut R, max_q: usize) -> TwoStepAlgebra {
    loop {
        let q = rng.gen_range(2..=max_q);
        let p = rng.gen_range(1..=pair_count(q).min(4));
        let slices: Vec<RatMatrix> = (0..p)
            .map(|_| {
                let mut m = RatMatrix::zeros(q, q);
                for i in 0..q {
                    for j in (i + 1)..q {
                        if rng.gen_bool(0.35) {
                            let v = int(rng.gen_range(-3..=3));
                            m[(j, i)] = -v.clone();
                            m[(i, j)] = v;
                        }
                    }
                }
                m
            })
            .collect();
        if let Ok(alg) = validate(StructureTensor::from_slices(&slices).unwrap()) {
            return alg;
        }
    }
}

/// Small summands for scrambled direct sums.
pub fn summand_pool() -> Vec<TwoStepAlgebra> {
    vec![
        alg(2, 1, "[x1,x2]=y1"),
        alg(3, 2, "[x1,x2]=y1; [x1,x3]=y2"),
        alg(3, 3, "[x1,x2]=y1; [x1,x3]=y2; [x2,x3]=y3"),
        alg(4, 1, "[x1,x2]=[x3,x4]=y1"),
        alg(4, 2, "[x1,x2]=[x3,x4]=y1; [x1,x3]=y2"),
    ]
}
