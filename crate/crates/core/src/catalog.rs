//! Catalog of published indecomposable algebras of dimensions 8 and 9,
//! auxiliary fixtures, the `T^{n,p}_{r,i}` naming rule and catalog lookup.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::algebra::{parse_bracket_table, validate, CatalogMeta, TwoStepAlgebra};
use crate::duality::{parse_relation, quotient, RelationIdeal};
use crate::error::{Error, Result};
use crate::invariants::{fingerprint, Fingerprint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    /// Source label, e.g. `N^{8,3}_4`.
    pub id: &'static str,
    pub algebra: TwoStepAlgebra,
    /// Published maximal-torus rank; metadata only.
    pub rank_r: u32,
    pub root_spaces_all_dim1: bool,
    pub hmsg_related_sequence: Vec<usize>,
    pub t_name: String,
    pub table: &'static str,
    pub provenance: String,
}

impl CatalogEntry {
    pub fn n(&self) -> usize {
        self.algebra.n()
    }

    pub fn key(&self) -> NomenclatureKey {
        NomenclatureKey::new(
            &self.algebra,
            self.rank_r,
            self.root_spaces_all_dim1,
            self.hmsg_related_sequence.clone(),
        )
    }
}

struct Raw {
    id: &'static str,
    q: usize,
    p: usize,
    table: &'static str,
    rank: u32,
    root_dim1: bool,
    hmsg: &'static [usize],
    note: &'static str,
}

const RAW: &[Raw] = &[
    Raw { id: "N^{8,2}_1", q: 6, p: 2, table: "[x1,x2]=y1; [x3,x4]=y2; [x5,x6]=y1+y2", rank: 4, root_dim1: true, hmsg: &[1, 1, 1, 1, 1, 1], note: "" },
    Raw { id: "N^{8,2}_2", q: 6, p: 2, table: "[x5,x2]=[x6,x1]=y1; [x5,x3]=[x6,x4]=y2", rank: 4, root_dim1: true, hmsg: &[1, 1, 1, 1, 2, 2], note: "T-name derived from the ordering rules" },
    Raw { id: "N^{8,2}_3", q: 6, p: 2, table: "[x1,x2]=[x6,x5]=y1; [x3,x6]=[x5,x4]=y2", rank: 4, root_dim1: true, hmsg: &[1, 1, 1, 1, 2, 2], note: "T-name derived from the ordering rules" },
    Raw { id: "N^{8,2}_4", q: 6, p: 2, table: "[x1,x2]=[x3,x6]=[x5,x4]=y1; [x6,x5]=y2", rank: 4, root_dim1: true, hmsg: &[1, 1, 1, 1, 2, 2], note: "T-name derived from the ordering rules" },
    Raw { id: "N^{8,2}_5", q: 6, p: 2, table: "[x1,x6]=[x3,x4]=[x5,x2]=y1; [x6,x3]=[x4,x5]=y2", rank: 3, root_dim1: true, hmsg: &[1, 1, 2, 2, 2, 2], note: "root-space flag not stated; singleton rank class, assumed one-dimensional" },
    Raw { id: "N^{8,3}_1", q: 5, p: 3, table: "[x1,x2]=[x3,x4]=y1; [x3,x5]=y2; [x4,x5]=y3", rank: 4, root_dim1: true, hmsg: &[1, 1, 2, 2, 2], note: "" },
    Raw { id: "N^{8,3}_2", q: 5, p: 3, table: "[x1,x5]=[x4,x2]=y1; [x5,x3]=y2; [x3,x4]=y3", rank: 4, root_dim1: true, hmsg: &[1, 1, 2, 2, 2], note: "" },
    Raw { id: "N^{8,3}_3", q: 5, p: 3, table: "[x5,x3]=[x3,x4]=y1; [x1,x5]=y2; [x2,x4]=y3", rank: 4, root_dim1: false, hmsg: &[1, 1, 2, 2, 2], note: "a root space of dimension greater than one" },
    Raw { id: "N^{8,3}_4", q: 5, p: 3, table: "[x1,x5]=[x3,x4]=y1; [x5,x3]=y2; [x2,x4]=y3", rank: 4, root_dim1: true, hmsg: &[1, 1, 2, 2, 2], note: "" },
    Raw { id: "N^{8,3}_5", q: 5, p: 3, table: "[x1,x4]=[x5,x2]=y1; [x3,x5]=y2; [x4,x5]=y3", rank: 4, root_dim1: true, hmsg: &[1, 1, 1, 2, 3], note: "" },
    Raw { id: "N^{8,3}_6", q: 5, p: 3, table: "[x1,x2]=[x5,x4]=y1; [x2,x5]=[x4,x3]=y2; [x3,x5]=y3", rank: 3, root_dim1: true, hmsg: &[1, 2, 2, 2, 3], note: "" },
    Raw { id: "N^{8,3}_7", q: 5, p: 3, table: "[x1,x2]=[x5,x3]=y1; [x2,x5]=[x5,x4]=y2; [x3,x4]=y3", rank: 3, root_dim1: false, hmsg: &[1, 2, 2, 2, 3], note: "rank stored as 3 (corrected value); a root space of dimension greater than one" },
    Raw { id: "N^{8,3}_8", q: 5, p: 3, table: "[x1,x5]=[x3,x4]=y1; [x3,x5]=[x2,x4]=y2; [x4,x5]=y3", rank: 3, root_dim1: true, hmsg: &[1, 1, 2, 3, 3], note: "" },
    Raw { id: "N^{8,3}_9", q: 5, p: 3, table: "[x1,x5]=[x3,x2]=y1; [x3,x5]=[x2,x4]=y2; [x4,x5]=y3", rank: 3, root_dim1: true, hmsg: &[1, 2, 2, 2, 3], note: "" },
    Raw { id: "N^{8,3}_{10}", q: 5, p: 3, table: "[x1,x2]=[x3,x5]=y1; [x2,x3]=[x4,x5]=y2; [x1,x5]=y3", rank: 3, root_dim1: true, hmsg: &[2, 2, 2, 2, 2], note: "" },
    Raw { id: "N^{8,3}_{11}", q: 5, p: 3, table: "[x1,x5]=[x4,x2]=y1; [x1,x4]=[x5,x3]=y2; [x4,x5]=[x2,x3]=y3", rank: 2, root_dim1: true, hmsg: &[2, 2, 2, 3, 3], note: "root-space flag not stated; singleton rank class, assumed one-dimensional" },
    Raw { id: "N^{8,4}_1", q: 4, p: 4, table: "[x1,x2]=y1; [x2,x3]=y2; [x3,x4]=y3; [x4,x1]=y4", rank: 4, root_dim1: true, hmsg: &[2, 2, 2, 2], note: "published fourth bracket reads y5; stored as y4 since p = 4" },
    Raw { id: "N^{8,4}_2", q: 4, p: 4, table: "[x2,x4]=y1; [x3,x4]=y2; [x2,x3]=y3; [x1,x4]=y4", rank: 4, root_dim1: true, hmsg: &[1, 2, 2, 3], note: "published fourth bracket reads y5; stored as y4 since p = 4" },
    Raw { id: "N^{8,4}_3", q: 4, p: 4, table: "[x3,x4]=y1; [x1,x3]=[x2,x4]=y2; [x1,x4]=y3; [x2,x3]=y4", rank: 3, root_dim1: true, hmsg: &[2, 2, 3, 3], note: "root-space flag not stated; singleton rank class, assumed one-dimensional" },
    Raw { id: "N^{9,2}_1", q: 7, p: 2, table: "[x1,x2]=[x4,x5]=[x6,x7]=y1; [x3,x7]=y2", rank: 5, root_dim1: true, hmsg: &[1, 1, 1, 1, 1, 1, 2], note: "" },
    Raw { id: "N^{9,2}_2", q: 7, p: 2, table: "[x2,x7]=[x4,x5]=y1; [x1,x3]=[x6,x7]=y2", rank: 5, root_dim1: true, hmsg: &[1, 1, 1, 1, 1, 1, 2], note: "" },
    Raw { id: "N^{9,2}_3", q: 7, p: 2, table: "[x1,x2]=[x3,x7]=[x5,x6]=y1; [x4,x6]=[x5,x7]=y2", rank: 4, root_dim1: true, hmsg: &[1, 1, 1, 1, 2, 2, 2], note: "" },
    Raw { id: "N^{9,2}_4", q: 7, p: 2, table: "[x7,x2]=[x4,x5]=[x6,x1]=y1; [x7,x3]=[x5,x6]=y2", rank: 4, root_dim1: true, hmsg: &[1, 1, 1, 1, 2, 2, 2], note: "" },
    Raw { id: "N^{9,2}_5", q: 7, p: 2, table: "[x1,x7]=[x3,x4]=[x5,x6]=y1; [x7,x3]=[x4,x5]=[x6,x2]=y2", rank: 3, root_dim1: true, hmsg: &[1, 1, 2, 2, 2, 2, 2], note: "related sequence stored sorted" },
    Raw { id: "N^{9,5}_1", q: 4, p: 5, table: "[x1,x3]=y1; [x1,x4]=y2; [x2,x3]=y3; [x2,x4]=y4; [x3,x4]=y5", rank: 4, root_dim1: true, hmsg: &[2, 2, 3, 3], note: "" },
    Raw { id: "N^{9,5}_2", q: 4, p: 5, table: "[x1,x2]=y1; [x1,x3]=[x2,x4]=y2; [x1,x4]=y3; [x2,x3]=y4; [x3,x4]=y5", rank: 4, root_dim1: true, hmsg: &[3, 3, 3, 3], note: "" },
];

/// The fourth bracket of two (8,4) tables as originally printed. Neither
/// validates: `y5` does not exist when `p = 4`.
pub const PUBLISHED_Y5_TABLES: &[(&str, &str)] = &[
    ("N^{8,4}_1", "[x1,x2]=y1; [x2,x3]=y2; [x3,x4]=y3; [x4,x1]=y5"),
    ("N^{8,4}_2", "[x2,x4]=y1; [x3,x4]=y2; [x2,x3]=y3; [x1,x4]=y5"),
];

/// All primary entries, named. Built once; construction failures are defects.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| build_catalog().expect("shipped catalog is valid"))
}

fn build_catalog() -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::with_capacity(RAW.len());
    for raw in RAW {
        let algebra = validate(parse_bracket_table(raw.q, raw.p, raw.table)?)?;
        let mut provenance = format!("bracket table for {} as published", raw.id);
        if !raw.note.is_empty() {
            provenance.push_str("; ");
            provenance.push_str(raw.note);
        }
        entries.push(CatalogEntry {
            id: raw.id,
            algebra,
            rank_r: raw.rank,
            root_spaces_all_dim1: raw.root_dim1,
            hmsg_related_sequence: raw.hmsg.to_vec(),
            t_name: String::new(),
            table: raw.table,
            provenance,
        });
    }
    let keyed: Vec<(String, NomenclatureKey)> =
        entries.iter().map(|e| (e.id.to_string(), e.key())).collect();
    let names = assign_t_names(&keyed)?;
    for e in &mut entries {
        e.t_name = names[e.id].clone();
        let meta = CatalogMeta {
            n: e.algebra.n(),
            p: e.algebra.p(),
            q: e.algebra.q(),
            rank_r: Some(e.rank_r),
            source_label: e.id.to_string(),
            t_name: Some(e.t_name.clone()),
        };
        e.algebra = e.algebra.clone().with_meta(meta)?;
    }
    Ok(entries)
}

/// Ordering evidence for the fourth index of `T^{n,p}_{r,i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NomenclatureKey {
    pub n: usize,
    pub p: usize,
    pub r: u32,
    pub root_spaces_all_dim1: bool,
    pub hmsg_related_sequence: Vec<usize>,
    pub generator_relation_sequence: Vec<usize>,
    pub center_related_sequence: Option<Vec<usize>>,
    pub weighted_center_related_sequence: Option<Vec<usize>>,
    pub girth: Option<usize>,
}

impl NomenclatureKey {
    pub fn new(alg: &TwoStepAlgebra, r: u32, root_dim1: bool, hmsg: Vec<usize>) -> Self {
        let f = fingerprint(alg);
        NomenclatureKey {
            n: alg.n(),
            p: alg.p(),
            r,
            root_spaces_all_dim1: root_dim1,
            hmsg_related_sequence: hmsg,
            generator_relation_sequence: f.generator_relation_sequence,
            center_related_sequence: f.center_related_sequence,
            weighted_center_related_sequence: f.weighted_center_related_sequence,
            girth: f.girth,
        }
    }

    /// Order within one `(n, p, r)` class. An acyclic generator graph sorts
    /// as infinite girth.
    pub fn tier_cmp(&self, other: &Self) -> Ordering {
        let girth = |g: Option<usize>| g.unwrap_or(usize::MAX);
        other
            .root_spaces_all_dim1
            .cmp(&self.root_spaces_all_dim1)
            .then_with(|| self.hmsg_related_sequence.cmp(&other.hmsg_related_sequence))
            .then_with(|| self.generator_relation_sequence.cmp(&other.generator_relation_sequence))
            .then_with(|| self.center_related_sequence.cmp(&other.center_related_sequence))
            .then_with(|| {
                self.weighted_center_related_sequence
                    .cmp(&other.weighted_center_related_sequence)
            })
            .then_with(|| girth(self.girth).cmp(&girth(other.girth)))
    }
}

/// `T^{n,p}_r` for a singleton `(n, p, r)` class, else `T^{n,p}_{r,i}` with
/// `i` the 1-based position in tier order.
pub fn assign_t_names(entries: &[(String, NomenclatureKey)]) -> Result<BTreeMap<String, String>> {
    let mut groups: BTreeMap<(usize, usize, u32), Vec<&(String, NomenclatureKey)>> = BTreeMap::new();
    for e in entries {
        groups.entry((e.1.n, e.1.p, e.1.r)).or_default().push(e);
    }
    let mut names = BTreeMap::new();
    for ((n, p, r), mut members) in groups {
        members.sort_by(|a, b| a.1.tier_cmp(&b.1));
        for w in members.windows(2) {
            if w[0].1.tier_cmp(&w[1].1) == Ordering::Equal {
                return Err(Error::UnresolvedTie(vec![w[0].0.clone(), w[1].0.clone()]));
            }
        }
        if members.len() == 1 {
            names.insert(members[0].0.clone(), format!("T^{{{n},{p}}}_{r}"));
        } else {
            for (i, m) in members.iter().enumerate() {
                names.insert(m.0.clone(), format!("T^{{{n},{p}}}_{{{r},{}}}", i + 1));
            }
        }
    }
    Ok(names)
}

fn normalize_label(s: &str) -> String {
    s.chars().filter(|c| !matches!(c, '{' | '}') && !c.is_whitespace()).collect()
}

/// Lookup by source label or T-name; braces are optional.
pub fn lookup(id: &str) -> Result<&'static CatalogEntry> {
    let wanted = normalize_label(id);
    catalog()
        .iter()
        .find(|e| normalize_label(e.id) == wanted || normalize_label(&e.t_name) == wanted)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchStrength {
    /// Every invariant computed on both sides, all equal.
    Exact,
    /// Equal wherever both sides are computable; some were withheld.
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogMatch {
    pub entry: &'static CatalogEntry,
    pub strength: MatchStrength,
}

/// Catalog entries with the same `(q, p)` whose invariants do not separate
/// them from `alg`. A match never asserts isomorphism.
pub fn match_catalog(alg: &TwoStepAlgebra) -> Vec<CatalogMatch> {
    let f = fingerprint(alg);
    catalog()
        .iter()
        .filter(|e| e.algebra.q() == alg.q() && e.algebra.p() == alg.p())
        .filter_map(|e| {
            let g = fingerprint(&e.algebra);
            if f.first_difference(&g).is_some() {
                return None;
            }
            let strength = if f.uniform3 && g.uniform3 && f == g {
                MatchStrength::Exact
            } else {
                MatchStrength::Partial
            };
            Some(CatalogMatch { entry: e, strength })
        })
        .collect()
}

pub const SEQUENCE_CAVEAT: &str =
    "sequence invariants presume one-dimensional root spaces and a root-vector generating basis";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distinction {
    NotIsomorphic(String),
    Inconclusive,
}

pub fn distinguish(a: &TwoStepAlgebra, b: &TwoStepAlgebra) -> Distinction {
    distinguish_fingerprints(&fingerprint(a), &fingerprint(b))
}

pub fn distinguish_fingerprints(a: &Fingerprint, b: &Fingerprint) -> Distinction {
    if (a.q, a.p) != (b.q, b.p) {
        return Distinction::NotIsomorphic(format!(
            "signature (q,p) = ({},{}) vs ({},{})",
            a.q, a.p, b.q, b.p
        ));
    }
    match a.first_difference(b) {
        Some(reason) => Distinction::NotIsomorphic(format!("{reason} ({SEQUENCE_CAVEAT})")),
        None => Distinction::Inconclusive,
    }
}

/// A relation ideal from the literature, with the catalog entry its quotient
/// (or dual) is expected to match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFixture {
    pub id: &'static str,
    pub q: usize,
    pub relations: &'static str,
    /// Quotient by the orthogonal complement rather than the ideal itself.
    pub use_complement: bool,
    pub expected: Option<&'static str>,
    pub provenance: &'static str,
}

impl IdealFixture {
    pub fn ideal(&self) -> Result<RelationIdeal> {
        parse_relation(self.q, self.relations)
    }

    pub fn algebra(&self) -> Result<TwoStepAlgebra> {
        let ideal = self.ideal()?;
        let used = if self.use_complement { ideal.orthogonal_complement() } else { ideal };
        quotient(self.q, &used)
    }
}

const GAUGER: &str = "q = 6 ideals with two-dimensional duals; dual taken";

pub const IDEAL_FIXTURES: &[IdealFixture] = &[
    IdealFixture { id: "I6_1", q: 6, relations: "[u1,u2]+[u5,u6]; [u3,u4]+[u5,u6]", use_complement: true, expected: Some("N^{8,2}_1"), provenance: GAUGER },
    IdealFixture { id: "I6_2", q: 6, relations: "[u1,u2]+[u3,u4]; [u5,u6]", use_complement: true, expected: None, provenance: GAUGER },
    IdealFixture { id: "I6_3", q: 6, relations: "[u1,u4]+[u2,u3]; [u2,u4]+[u5,u6]", use_complement: true, expected: Some("N^{8,2}_3"), provenance: GAUGER },
    IdealFixture { id: "I6_4", q: 6, relations: "[u1,u4]+[u2,u3]+[u5,u6]; [u2,u4]", use_complement: true, expected: Some("N^{8,2}_4"), provenance: GAUGER },
    IdealFixture { id: "I6_5", q: 6, relations: "[u1,u6]+[u2,u5]+[u3,u4]; [u2,u6]+[u3,u5]", use_complement: true, expected: Some("N^{8,2}_5"), provenance: GAUGER },
    IdealFixture { id: "I6_6", q: 6, relations: "[u1,u2]; [u3,u4]", use_complement: true, expected: None, provenance: GAUGER },
    IdealFixture { id: "I6_7", q: 6, relations: "[u1,u4]+[u2,u3]; [u2,u4]", use_complement: true, expected: None, provenance: GAUGER },
    IdealFixture { id: "I6_8", q: 6, relations: "[u1,u2]+[u5,u6]; [u4,u6]", use_complement: true, expected: None, provenance: GAUGER },
    IdealFixture { id: "I6_9", q: 6, relations: "[u5,u6]; [u4,u6]", use_complement: true, expected: None, provenance: GAUGER },
    IdealFixture { id: "I6_10", q: 6, relations: "[u1,u3]+[u4,u6]; [u2,u3]+[u5,u6]", use_complement: true, expected: Some("N^{8,2}_2"), provenance: GAUGER },
    IdealFixture { id: "I6_11", q: 6, relations: "[u2,u6]+[u3,u5]; [u3,u6]+[u4,u5]", use_complement: true, expected: None, provenance: GAUGER },
    IdealFixture { id: "I4_1", q: 4, relations: "[u1,u2]; [u3,u4]", use_complement: false, expected: Some("N^{8,4}_1"), provenance: "q = 4 two-relation ideals; quotient taken directly" },
    IdealFixture { id: "I4_2", q: 4, relations: "[u1,u4]+[u2,u3]; [u2,u4]", use_complement: false, expected: Some("N^{8,4}_3"), provenance: "q = 4 two-relation ideals; quotient taken directly" },
    IdealFixture { id: "I4_3", q: 4, relations: "[u2,u4]; [u3,u4]", use_complement: false, expected: Some("N^{8,4}_2"), provenance: "q = 4 two-relation ideals; quotient taken directly" },
    IdealFixture { id: "J4_1", q: 4, relations: "[u1,u2]", use_complement: false, expected: Some("N^{9,5}_1"), provenance: "q = 4 one-relation ideals; quotient taken directly" },
    IdealFixture { id: "J4_2", q: 4, relations: "[u1,u2]+[u3,u4]", use_complement: false, expected: Some("N^{9,5}_2"), provenance: "q = 4 one-relation ideals; quotient taken directly" },
];

/// Decomposable algebras from the (9,3)/(9,4) and (8,3) literature tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFixture {
    pub id: &'static str,
    pub q: usize,
    pub p: usize,
    pub table: &'static str,
    pub provenance: &'static str,
}

impl AlgebraFixture {
    pub fn algebra(&self) -> Result<TwoStepAlgebra> {
        validate(parse_bracket_table(self.q, self.p, self.table)?)
    }
}

pub const DECOMPOSABLE_FIXTURES: &[AlgebraFixture] = &[
    AlgebraFixture { id: "GT99-T2-91", q: 5, p: 3, table: "[x1,x4]=y2; [x1,x5]=y3; [x2,x3]=y1", provenance: "GT99 Table 2 No. 91, (n,p) = (8,3)" },
    AlgebraFixture { id: "GT99-T2-82", q: 5, p: 4, table: "[x1,x2]=y2; [x1,x3]=y3; [x2,x3]=y4; [x4,x5]=y1", provenance: "GT99 Table 2 No. 82, (n,p) = (9,4)" },
    AlgebraFixture { id: "GT99-T8-44", q: 6, p: 3, table: "[x1,x2]=y3; [x1,x5]=y1; [x2,x6]=y1; [x3,x4]=y2", provenance: "GT99 Table 8 No. 44; the printed table uses only y1..y3 on six generators, so it is stored with (q,p) = (6,3)" },
];

/// The (8,3) entries correspond to GT99 (9,3) numbers 87, 90, 78, 80, 92, 88,
/// 75, 72, 84, 68, 62 in order; recorded, not verified.
pub const GT99_CORRESPONDENCE: &[(&str, u32)] = &[
    ("N^{8,3}_1", 87),
    ("N^{8,3}_2", 90),
    ("N^{8,3}_3", 78),
    ("N^{8,3}_4", 80),
    ("N^{8,3}_5", 92),
    ("N^{8,3}_6", 88),
    ("N^{8,3}_7", 75),
    ("N^{8,3}_8", 72),
    ("N^{8,3}_9", 84),
    ("N^{8,3}_{10}", 68),
    ("N^{8,3}_{11}", 62),
];
