mod common;

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twostep::algebra::{direct_sum, validate, BasisChange, StructureTensor};
use twostep::catalog::catalog;
use twostep::decompose::{decide, hypergraph_witness, marginal_rank, pencil_analyze, Block, PencilPoint, Status};
use twostep::duality::{dual, pair_count, quotient};
use twostep::invariants::{build_generator_graph, build_hypergraph, fingerprint, related_sequence};
use twostep::io::{read_algebra, write_algebra};
use twostep::linalg::{det_poly, int, RatMatrix, Rational};

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec((-4i64..=4, 1i64..=3), rows * cols).prop_map(move |v| {
        let entries = v.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect();
        RatMatrix::new(rows, cols, entries).unwrap()
    })
}

/// Plain fraction Gauss-Jordan, independent of the library's elimination.
fn naive_rank(m: &RatMatrix) -> usize {
    let mut rows = m.to_rows();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone() / pivot.clone();
                for k in 0..m.cols() {
                    let sub = rows[rank][k].clone() * f.clone();
                    rows[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Laplace expansion along the first row.
fn naive_det(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = rows[0][j].clone() * naive_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn skew(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                m[(i, j)] = int(v[i * n + j]);
                m[(j, i)] = int(-v[i * n + j]);
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn rank_matches_naive(m in (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| small_matrix(r, c))) {
        prop_assert_eq!(m.rank(), naive_rank(&m));
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.nullspace().len(), m.cols() - m.rank());
    }

    #[test]
    fn det_matches_laplace(m in (1usize..=4).prop_flat_map(|n| small_matrix(n, n))) {
        prop_assert_eq!(m.det().unwrap(), naive_det(&m.to_rows()));
        prop_assert_eq!(m.is_invertible(), !naive_det(&m.to_rows()).is_zero());
    }

    #[test]
    fn det_poly_evaluates(n in 1usize..=4, seed in any::<u64>(), t in -5i64..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_invertible(&mut rng, n, 3);
        let b = common::random_invertible(&mut rng, n, 3);
        let f = det_poly(&a, &b).unwrap();
        prop_assert!(f.degree().unwrap_or(0) <= n);
        prop_assert_eq!(f.eval(&int(t)), a.add_scaled(&b, &int(t)).unwrap().det().unwrap());
    }

    #[test]
    fn basis_change_group_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_algebra(&mut rng, 5);
        let (q, p) = (a.q(), a.p());
        let g = common::random_basis_change(&mut rng, q, p, 2);
        let h = common::random_basis_change(&mut rng, q, p, 2);
        let t = a.tensor();
        prop_assert_eq!(t.apply_basis_change(&BasisChange::identity(q, p)).unwrap(), t.clone());
        prop_assert_eq!(
            t.apply_basis_change(&g).unwrap().apply_basis_change(&h).unwrap(),
            t.apply_basis_change(&g.then(&h).unwrap()).unwrap()
        );
        let inv = g.inverse().unwrap();
        prop_assert_eq!(g.then(&inv).unwrap(), BasisChange::identity(q, p));
        prop_assert_eq!(marginal_rank(&a.apply_basis_change(&g).unwrap()), marginal_rank(&a));
    }

    #[test]
    fn monomial_changes_keep_fingerprints(index in 0usize..26, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = &catalog()[index];
        let g = common::random_monomial(&mut rng, e.algebra.q(), e.algebra.p());
        let moved = e.algebra.apply_basis_change(&g).unwrap();
        prop_assert_eq!(fingerprint(&moved), fingerprint(&e.algebra));
    }

    #[test]
    fn duality_is_an_involution(q in 3usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = common::random_ideal(&mut rng, q);
        let perp = ideal.orthogonal_complement();
        prop_assert_eq!(perp.orthogonal_complement(), ideal.clone());
        let n = quotient(q, &ideal).unwrap();
        let d = dual(&n).unwrap();
        prop_assert_eq!(n.p() + d.p(), pair_count(q));
        let dd = dual(&d).unwrap();
        prop_assert_eq!(dd.tensor(), n.tensor());
    }

    #[test]
    fn file_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_algebra(&mut rng, 6);
        let back = read_algebra(&write_algebra(&a, None)).unwrap();
        prop_assert_eq!(back.tensor(), a.tensor());
    }

    #[test]
    fn graph_facts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_algebra(&mut rng, 6);
        let g = build_generator_graph(&a);
        let rs = related_sequence(&a);
        prop_assert!(rs.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(rs.iter().sum::<usize>(), 2 * g.edges().len());
        // generators adjacent in the graph share a hypergraph component
        let comps = build_hypergraph(&a).components();
        for &(i, j) in g.edges() {
            prop_assert!(comps.iter().any(|c| c.generators.contains(&i) && c.generators.contains(&j)));
        }
    }

    #[test]
    fn pencil_bound_is_attained(a in skew(4), b in skew(4)) {
        let Ok(alg) = validate(StructureTensor::from_slices(&[a.clone(), b.clone()]).unwrap()) else {
            return Ok(());
        };
        if marginal_rank(&alg) < 4 {
            return Ok(());
        }
        let report = pencil_analyze(&alg).unwrap();
        let sampled = sampled_min_pair_sum(&a, &b, &report, 0);
        let rational_drops = report
            .drop_points
            .iter()
            .all(|d| !matches!(&d.point, PencilPoint::Affine(m) if m.degree() != Some(1)));
        // conjugate irrational drops are only reachable over an extension
        if rational_drops {
            prop_assert_eq!(report.min_pair_sum, sampled);
        } else {
            prop_assert!(sampled >= report.min_pair_sum);
        }
    }
}

/// Minimum of `rank(c11 A + c12 B) + rank(c21 A + c22 B)` over random
/// nonsingular `C`, augmented with directions at the reported rational drops.
fn sampled_min_pair_sum(a: &RatMatrix, b: &RatMatrix, report: &twostep::decompose::PencilReport, samples: usize) -> usize {
    use rand::Rng;
    let rank_at = |alpha: &Rational, beta: &Rational| {
        a.scale(alpha).add(&b.scale(beta)).unwrap().rank()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut best = usize::MAX;
    for _ in 0..samples {
        let c: Vec<Rational> = (0..4).map(|_| int(rng.gen_range(-6..=6))).collect();
        if (c[0].clone() * c[3].clone() - c[1].clone() * c[2].clone()).is_zero() {
            continue;
        }
        best = best.min(rank_at(&c[0], &c[1]) + rank_at(&c[2], &c[3]));
    }
    let mut directions: Vec<(Rational, Rational)> = report
        .drop_points
        .iter()
        .filter_map(|d| match &d.point {
            PencilPoint::Infinity => Some((int(0), int(1))),
            PencilPoint::Affine(m) if m.degree() == Some(1) => Some((int(1), -m.coeff(0) / m.coeff(1))),
            PencilPoint::Affine(_) => None,
        })
        .collect();
    // a direction avoiding every drop, and a second one
    let mut generic = (0..).map(|x| (int(1), int(x))).filter(|(u, v)| rank_at(u, v) == report.generic_rank);
    directions.push(generic.next().unwrap());
    directions.push(generic.next().unwrap());
    for (i, (u1, v1)) in directions.iter().enumerate() {
        for (u2, v2) in &directions[i + 1..] {
            if !(u1.clone() * v2.clone() - v1.clone() * u2.clone()).is_zero() {
                best = best.min(rank_at(u1, v1) + rank_at(u2, v2));
            }
        }
    }
    best
}

#[test]
fn pencil_against_random_directions() {
    for e in catalog().iter().filter(|e| e.algebra.p() == 2) {
        let a = e.algebra.slice(0).unwrap();
        let b = e.algebra.slice(1).unwrap();
        let report = pencil_analyze(&e.algebra).unwrap();
        let random_only = sampled_min_pair_sum(&a, &b, &report, 500);
        assert!(random_only >= report.min_pair_sum, "{}", e.id);
        let rational_drops = report
            .drop_points
            .iter()
            .all(|d| !matches!(&d.point, PencilPoint::Affine(m) if m.degree() != Some(1)));
        if rational_drops {
            assert_eq!(random_only, report.min_pair_sum, "{}", e.id);
        }
    }
}

#[test]
fn catalog_sums_are_decomposable() {
    let entries = catalog();
    for a in entries {
        for b in entries {
            let sum = direct_sum(&a.algebra, &b.algebra);
            let v = decide(&sum);
            assert_eq!(v.status, Status::Decomposable, "{} + {}", a.id, b.id);
            v.witness.unwrap().verify(&sum).unwrap();
        }
    }
}

#[test]
fn components_reassemble() {
    let entries = catalog();
    for (a, b) in entries.iter().zip(entries.iter().rev()) {
        let sum = direct_sum(&a.algebra, &b.algebra);
        let w = hypergraph_witness(&sum).unwrap();
        let (Block::Algebra(first), Block::Algebra(second)) = w.blocks(&sum).unwrap() else {
            panic!("both blocks carry brackets");
        };
        let order: Vec<usize> = w
            .generators
            .iter()
            .copied()
            .chain((0..sum.q()).filter(|i| !w.generators.contains(i)))
            .collect();
        let center_order: Vec<usize> = w
            .centers
            .iter()
            .copied()
            .chain((0..sum.p()).filter(|k| !w.centers.contains(k)))
            .collect();
        let mut gen_perm = vec![0; sum.q()];
        for (new, &old) in order.iter().enumerate() {
            gen_perm[old] = new;
        }
        let mut center_perm = vec![0; sum.p()];
        for (new, &old) in center_order.iter().enumerate() {
            center_perm[old] = new;
        }
        let relabeled = sum.tensor().permuted(&gen_perm, &center_perm).unwrap();
        assert_eq!(relabeled, first.direct_sum(&second), "{} + {}", a.id, b.id);
    }
}

#[test]
fn verdicts_stable_under_permutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for e in catalog() {
        let base = decide(&e.algebra).status;
        for _ in 0..3 {
            let g = common::random_monomial(&mut rng, e.algebra.q(), e.algebra.p());
            let moved = e.algebra.apply_basis_change(&g).unwrap();
            assert_eq!(decide(&moved).status, base, "{}", e.id);
        }
    }
}
