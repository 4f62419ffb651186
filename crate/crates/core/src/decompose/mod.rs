//! Decomposability: block-diagonal witnesses, the marginal-rank split, the
//! pencil criterion for two-dimensional centers, and a bounded search oracle.

mod oracle;
mod pencil;

use num_traits::Zero;

pub use oracle::{brute_force_oracle, OracleBudget, OracleOutcome};
pub use pencil::{pencil_analyze, pencil_of, DropPoint, PencilPoint, PencilReport};

use crate::algebra::{BasisChange, StructureTensor, TwoStepAlgebra};
use crate::error::{Error, Result};
use crate::invariants::build_hypergraph;
use crate::linalg::RatMatrix;

/// A basis change after which the tensor lives on `S x S x T` and its complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDiagonalWitness {
    /// Generator indices of the first block (0-based, ascending).
    pub generators: Vec<usize>,
    /// Center indices of the first block (0-based, ascending).
    pub centers: Vec<usize>,
    pub basis_change: BasisChange,
}

impl BlockDiagonalWitness {
    /// Applies the basis change and checks every entry outside the two blocks
    /// is exactly zero. Returns the transformed tensor on success.
    pub fn verify(&self, alg: &TwoStepAlgebra) -> Result<StructureTensor> {
        let (q, p) = (alg.q(), alg.p());
        if self.generators.is_empty() || self.generators.len() >= q {
            return Err(Error::Precondition(format!(
                "generator block must be a nonempty proper subset, got {:?}",
                self.generators
            )));
        }
        if self.generators.iter().any(|&i| i >= q) || self.centers.iter().any(|&k| k >= p) {
            return Err(Error::IndexOutOfRange("witness block index".into()));
        }
        let t = alg.tensor().apply_basis_change(&self.basis_change)?;
        let in_s: Vec<bool> = (0..q).map(|i| self.generators.contains(&i)).collect();
        let in_t: Vec<bool> = (0..p).map(|k| self.centers.contains(&k)).collect();
        for (i, j) in crate::algebra::pairs(q) {
            for k in 0..p {
                if t.get(i, j, k).is_zero() {
                    continue;
                }
                let inside = (in_s[i] && in_s[j] && in_t[k]) || (!in_s[i] && !in_s[j] && !in_t[k]);
                if !inside {
                    return Err(Error::Precondition(format!(
                        "entry ({}, {}, {}) lies outside the blocks",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
        Ok(t)
    }

    /// The two blocks as tensors in the witness basis; a block without center
    /// vectors is abelian and reported as its generator count.
    pub fn blocks(&self, alg: &TwoStepAlgebra) -> Result<(Block, Block)> {
        let t = self.verify(alg)?;
        let rest_g: Vec<usize> = (0..alg.q()).filter(|i| !self.generators.contains(i)).collect();
        let rest_c: Vec<usize> = (0..alg.p()).filter(|k| !self.centers.contains(k)).collect();
        Ok((
            restrict(&t, &self.generators, &self.centers)?,
            restrict(&t, &rest_g, &rest_c)?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Algebra(StructureTensor),
    Abelian(usize),
}

fn restrict(t: &StructureTensor, gens: &[usize], centers: &[usize]) -> Result<Block> {
    if centers.is_empty() {
        return Ok(Block::Abelian(gens.len()));
    }
    let slices: Vec<RatMatrix> = centers
        .iter()
        .map(|&k| Ok(t.slice(k)?.submatrix(gens, gens)))
        .collect::<Result<_>>()?;
    Ok(Block::Algebra(StructureTensor::from_slices(&slices)?))
}

/// A witness read off a disconnected generating hypergraph in the current basis:
/// the smallest component (ties to the lowest index) against the rest.
pub fn hypergraph_witness(alg: &TwoStepAlgebra) -> Option<BlockDiagonalWitness> {
    let comps = build_hypergraph(alg).components();
    if comps.len() < 2 {
        return None;
    }
    let smallest = comps
        .iter()
        .filter(|c| !c.generators.is_empty())
        .min_by_key(|c| c.generators.len())?;
    Some(BlockDiagonalWitness {
        generators: smallest.generators.clone(),
        centers: smallest.centers.clone(),
        basis_change: BasisChange::identity(alg.q(), alg.p()),
    })
}

/// Rank of the horizontal concatenation of all slices.
pub fn marginal_rank(alg: &TwoStepAlgebra) -> usize {
    RatMatrix::hcat(&alg.tensor().slices())
        .expect("slices share a shape")
        .rank()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialSplit {
    /// The summand on the first `marginal_rank` generators, all centers kept.
    pub summand: TwoStepAlgebra,
    pub abelian_count: usize,
    pub witness: BlockDiagonalWitness,
}

/// When the marginal rank `s` is below `q`, row-reduces the slice
/// concatenation so that all brackets live on the first `s` generators.
pub fn trivial_split(alg: &TwoStepAlgebra) -> Result<Option<TrivialSplit>> {
    let q = alg.q();
    let stacked = RatMatrix::hcat(&alg.tensor().slices())?;
    let (_, pivots, transform) = stacked.rref_with_transform();
    let s = pivots.len();
    if s == q {
        return Ok(None);
    }
    // New slices are E A E^T, i.e. S = E^{-T}.
    let gen_change = transform.transpose().inverse()?;
    let basis_change = BasisChange::from_blocks(gen_change, RatMatrix::identity(alg.p()))?;
    let witness = BlockDiagonalWitness {
        generators: (0..s).collect(),
        centers: (0..alg.p()).collect(),
        basis_change,
    };
    let summand = match witness.blocks(alg)?.0 {
        Block::Algebra(t) => crate::algebra::validate(t)?,
        Block::Abelian(_) => unreachable!("a validated algebra has a nonzero bracket"),
    };
    Ok(Some(TrivialSplit { summand, abelian_count: q - s, witness }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Decomposable,
    Indecomposable,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Decomposable => "Decomposable",
            Status::Indecomposable => "Indecomposable",
            Status::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    MarginalRank { rank: usize, q: usize },
    Pencil(PencilReport),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    Hypergraph,
    MarginalRank,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposabilityVerdict {
    pub status: Status,
    pub witness: Option<BlockDiagonalWitness>,
    pub witness_source: Option<WitnessSource>,
    pub certificate: Option<Certificate>,
    pub notes: Vec<String>,
}

/// Hypergraph components, then marginal rank, then the pencil bound when `p = 2`.
pub fn decide(alg: &TwoStepAlgebra) -> DecomposabilityVerdict {
    let mut notes = Vec::new();
    if let Some(w) = hypergraph_witness(alg) {
        return DecomposabilityVerdict {
            status: Status::Decomposable,
            witness: Some(w),
            witness_source: Some(WitnessSource::Hypergraph),
            certificate: None,
            notes: vec!["generating hypergraph is disconnected in the given basis".into()],
        };
    }
    notes.push("hypergraph connected in the given basis (basis-dependent, proves nothing)".into());

    let q = alg.q();
    match trivial_split(alg) {
        Ok(Some(split)) => {
            let rank = q - split.abelian_count;
            return DecomposabilityVerdict {
                status: Status::Decomposable,
                witness: Some(split.witness),
                witness_source: Some(WitnessSource::MarginalRank),
                certificate: Some(Certificate::MarginalRank { rank, q }),
                notes: vec![format!(
                    "marginal rank {rank} < q = {q}: splits off {} abelian generator(s)",
                    split.abelian_count
                )],
            };
        }
        Ok(None) => notes.push(format!("marginal rank {q} = q")),
        Err(e) => notes.push(format!("marginal rank split failed: {e}")),
    }

    if alg.p() == 2 {
        match pencil_analyze(alg) {
            Ok(report) if report.certifies_indecomposable(q) => {
                notes.push(format!("pencil min-pair-sum {} > q = {q}", report.min_pair_sum));
                return DecomposabilityVerdict {
                    status: Status::Indecomposable,
                    witness: None,
                    witness_source: None,
                    certificate: Some(Certificate::Pencil(report)),
                    notes,
                };
            }
            Ok(report) => notes.push(format!(
                "pencil min-pair-sum {} <= q = {q}: criterion does not apply",
                report.min_pair_sum
            )),
            Err(e) => notes.push(format!("pencil analysis failed: {e}")),
        }
    } else {
        notes.push(format!("no indecomposability criterion for p = {}", alg.p()));
    }
    DecomposabilityVerdict {
        status: Status::Inconclusive,
        witness: None,
        witness_source: None,
        certificate: None,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_sum, parse_bracket_table, validate};

    fn alg(q: usize, p: usize, table: &str) -> TwoStepAlgebra {
        validate(parse_bracket_table(q, p, table).unwrap()).unwrap()
    }

    #[test]
    fn witness_for_split_components() {
        let a = alg(5, 4, "[x1,x2]=y2; [x1,x3]=y3; [x2,x3]=y4; [x4,x5]=y1");
        let w = hypergraph_witness(&a).unwrap();
        assert_eq!((w.generators.clone(), w.centers.clone()), (vec![3, 4], vec![0]));
        w.verify(&a).unwrap();
        let (first, second) = w.blocks(&a).unwrap();
        assert_eq!(first, Block::Algebra(parse_bracket_table(2, 1, "[x1,x2]=y1").unwrap()));
        assert_eq!(
            second,
            Block::Algebra(parse_bracket_table(3, 3, "[x1,x2]=y1; [x1,x3]=y2; [x2,x3]=y3").unwrap())
        );
        assert_eq!(decide(&a).status, Status::Decomposable);
    }

    #[test]
    fn no_witness_when_connected() {
        let a = alg(6, 2, "[x1,x2]=y1; [x3,x4]=y2; [x5,x6]=y1+y2");
        assert!(hypergraph_witness(&a).is_none());
        let rebased = alg(4, 2, "[x1,x2]=y1; [x1,x3]=y1; [x2,x4]=y2; [x4,x3]=y2");
        assert!(hypergraph_witness(&rebased).is_none());
    }

    #[test]
    fn verify_rejects_bad_blocks() {
        let a = alg(4, 2, "[x1,x2]=y1; [x1,x3]=y1; [x2,x4]=y2; [x4,x3]=y2");
        let w = BlockDiagonalWitness {
            generators: vec![0, 1],
            centers: vec![0],
            basis_change: BasisChange::identity(4, 2),
        };
        assert!(w.verify(&a).is_err());
    }

    #[test]
    fn marginal_rank_values() {
        assert_eq!(marginal_rank(&alg(6, 2, "[x1,x2]=y1; [x3,x4]=y2; [x5,x6]=y1+y2")), 6);
        assert_eq!(marginal_rank(&alg(3, 1, "[x1,x2]=y1")), 2);
    }

    #[test]
    fn trivial_split_of_heisenberg_plus_line() {
        let a = alg(3, 1, "[x1,x2]=y1");
        let split = trivial_split(&a).unwrap().unwrap();
        assert_eq!(split.abelian_count, 1);
        assert_eq!(split.summand.q(), 2);
        split.witness.verify(&a).unwrap();
        let v = decide(&a);
        assert_eq!(v.status, Status::Decomposable);
        assert_eq!(v.witness_source, Some(WitnessSource::Hypergraph));
    }

    #[test]
    fn trivial_split_hidden_by_basis() {
        // [x1,x2] = y1 with x3 mixed into both other generators.
        let a = alg(3, 1, "[x1,x2]=y1; [x1,x3]=y1; [x2,x3]=-y1");
        assert!(hypergraph_witness(&a).is_none());
        let v = decide(&a);
        assert_eq!(v.status, Status::Decomposable);
        assert_eq!(v.witness_source, Some(WitnessSource::MarginalRank));
        assert_eq!(v.certificate, Some(Certificate::MarginalRank { rank: 2, q: 3 }));
        v.witness.unwrap().verify(&a).unwrap();
    }

    #[test]
    fn decide_pipeline() {
        let n82_1 = alg(6, 2, "[x1,x2]=y1; [x3,x4]=y2; [x5,x6]=y1+y2");
        let v = decide(&n82_1);
        assert_eq!(v.status, Status::Indecomposable);
        assert!(matches!(v.certificate, Some(Certificate::Pencil(ref r)) if r.min_pair_sum == 8));

        let n83_1 = alg(5, 3, "[x1,x2]=[x3,x4]=y1; [x3,x5]=y2; [x4,x5]=y3");
        assert_eq!(decide(&n83_1).status, Status::Inconclusive);

        let h = alg(2, 1, "[x1,x2]=y1");
        assert_eq!(decide(&direct_sum(&h, &h)).status, Status::Decomposable);
    }
}
