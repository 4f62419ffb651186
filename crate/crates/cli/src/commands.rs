use std::path::Path;

use serde_json::{json, Value};

use twostep::algebra::{BasisChange, TwoStepAlgebra};
use twostep::catalog::{catalog, lookup, match_catalog, CatalogEntry, MatchStrength, SEQUENCE_CAVEAT};
use twostep::decompose::{
    brute_force_oracle, decide, Block, BlockDiagonalWitness, Certificate, OracleBudget, Status, WitnessSource,
};
use twostep::duality::{pair_count, parse_relation, quotient};
use twostep::invariants::{build_hypergraph, fingerprint, Fingerprint};
use twostep::io::{parse_algebra_file, AlgebraFile};
use twostep::linalg::{format_rational, RatMatrix};

use crate::report::{seq, CliError, Report};

const WITHHELD: &str = "not 3-uniform; center sequences withheld";
const TORUS_RANK: &str = "maximal-torus ranks are catalog metadata, not computed";
const MATCH_CAVEAT: &str = "catalog matches are invariant-level, not isomorphism proofs";
const CONNECTIVITY: &str = "hypergraph connectivity depends on the chosen basis";

struct Loaded {
    name: String,
    algebra: TwoStepAlgebra,
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = read_text(path)?;
    let at = |e: twostep::Error| match CliError::from(e) {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    };
    let file = parse_algebra_file(&text).map_err(at)?;
    let algebra = file.to_algebra().map_err(at)?;
    let name = file.name.clone().unwrap_or_else(|| path.display().to_string());
    Ok(Loaded { name, algebra })
}

fn subject(name: &str, alg: &TwoStepAlgebra) -> Value {
    json!({ "name": name, "q": alg.q(), "p": alg.p(), "n": alg.n() })
}

fn matrix_json(m: &RatMatrix) -> Value {
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect();
    json!(rows)
}

fn basis_change_json(b: &BasisChange) -> Value {
    json!({ "generators": matrix_json(b.s()), "centers": matrix_json(b.c()), "mixing": matrix_json(b.mixing()) })
}

pub fn validate(path: &Path) -> Result<Report, CliError> {
    let l = load(path)?;
    let mut r = Report::new("validate");
    r.line(format!("valid: {} (q={}, p={}, n={})", l.name, l.algebra.q(), l.algebra.p(), l.algebra.n()));
    r.subject = subject(&l.name, &l.algebra);
    Ok(r)
}

fn fingerprint_lines(r: &mut Report, f: &Fingerprint) {
    r.line(format!("related sequence: {}", seq(&f.related_sequence)));
    r.line(format!("generator relation sequence: {}", seq(&f.generator_relation_sequence)));
    match (&f.center_related_sequence, &f.weighted_center_related_sequence) {
        (Some(c), Some(w)) => {
            r.line(format!("center related sequence: {}", seq(c)));
            r.line(format!("weighted center related sequence: {}", seq(w)));
        }
        _ => r.caveat(WITHHELD),
    }
    match f.girth {
        Some(g) => r.line(format!("girth: {g}")),
        None => r.line("girth: none (acyclic)"),
    }
    r.fingerprint = serde_json::to_value(f).expect("fingerprint serializes");
}

pub fn invariants(path: &Path) -> Result<Report, CliError> {
    let l = load(path)?;
    let a = &l.algebra;
    let mut r = Report::new("invariants");
    r.line(l.name.clone());
    r.line(format!("q = {}, p = {}, n = {}", a.q(), a.p(), a.n()));
    fingerprint_lines(&mut r, &fingerprint(a));
    r.subject = subject(&l.name, a);
    Ok(r)
}

fn witness_json(w: &BlockDiagonalWitness) -> Value {
    json!({
        "generators": w.generators.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "centers": w.centers.iter().map(|k| k + 1).collect::<Vec<_>>(),
        "basis_change": basis_change_json(&w.basis_change),
    })
}

fn block_dims(w: &BlockDiagonalWitness, alg: &TwoStepAlgebra) -> Result<String, CliError> {
    let (a, b) = w.blocks(alg)?;
    let describe = |blk: &Block| match blk {
        Block::Algebra(t) => format!("q={}, p={}", t.q(), t.p()),
        Block::Abelian(d) => format!("abelian of dimension {d}"),
    };
    Ok(format!("{} / {}", describe(&a), describe(&b)))
}

pub fn decompose(path: &Path, budget: Option<usize>, seed: u64) -> Result<Report, CliError> {
    let l = load(path)?;
    let a = &l.algebra;
    let v = decide(a);
    let mut r = Report::new("decompose");
    r.subject = subject(&l.name, a);
    let mut certificate = Value::Null;
    match (&v.status, &v.witness_source, &v.certificate) {
        (Status::Decomposable, Some(WitnessSource::Hypergraph), _) => {
            let labels: Vec<String> = build_hypergraph(a).components().iter().map(|c| c.label()).collect();
            r.line(format!("Decomposable: hypergraph components {}", labels.join(" / ")));
        }
        (Status::Decomposable, _, Some(Certificate::MarginalRank { rank, q })) => {
            r.line(format!("Decomposable: marginal rank {rank} < q={q}, abelian factor of dimension {}", q - rank));
            certificate = json!({ "kind": "marginal_rank", "rank": rank, "q": q });
        }
        (Status::Indecomposable, _, Some(Certificate::Pencil(p))) => {
            r.line(format!("Indecomposable: pencil min-pair-sum {} > q={}", p.min_pair_sum, a.q()));
            r.line(format!("  rank(A) = {}, rank(B) = {}, generic rank {}", p.first_slice_rank, p.second_slice_rank, p.generic_rank));
            for d in &p.drop_points {
                r.line(format!("  drop at {}: rank {}", d.point, d.rank));
            }
            certificate = json!({
                "kind": "pencil",
                "first_slice_rank": p.first_slice_rank,
                "second_slice_rank": p.second_slice_rank,
                "generic_rank": p.generic_rank,
                "min_pair_sum": p.min_pair_sum,
                "q": a.q(),
                "drop_points": p.drop_points.iter()
                    .map(|d| json!({ "point": d.point.to_string(), "multiplicity": d.point.multiplicity(), "rank": d.rank }))
                    .collect::<Vec<_>>(),
            });
        }
        _ => r.line(v.status.as_str()),
    }
    if let Some(w) = &v.witness {
        r.line(format!("  blocks: {}", block_dims(w, a)?));
    }
    for n in &v.notes {
        r.line(format!("  note: {n}"));
    }
    if v.status != Status::Decomposable {
        r.caveat(CONNECTIVITY);
    }
    let mut oracle = Value::Null;
    if let Some(n) = budget {
        let b = OracleBudget { max_candidates: n, seed, ..OracleBudget::default() };
        let out = brute_force_oracle(a, b)?;
        match &out.witness {
            Some(w) => {
                r.line(format!(
                    "oracle: verified split after {} candidate(s) (seed {seed}), blocks {}",
                    out.candidates_tried,
                    block_dims(w, a)?
                ));
                r.line(format!("  new generator basis change:\n{}", w.basis_change.s()));
            }
            None => r.line(format!(
                "oracle: no split within budget {n} (seed {seed}); consistency check, not a proof"
            )),
        }
        if let Some(d) = out.endomorphism_dim {
            r.line(format!("  oracle: admissible endomorphism space has dimension {d}"));
        }
        oracle = json!({
            "budget": n,
            "seed": seed,
            "candidates_tried": out.candidates_tried,
            "endomorphism_dim": out.endomorphism_dim,
            "witness": out.witness.as_ref().map(witness_json),
        });
    }
    r.verdict = json!({
        "status": v.status.as_str(),
        "witness_source": v.witness_source.as_ref().map(|s| match s {
            WitnessSource::Hypergraph => "hypergraph",
            WitnessSource::MarginalRank => "marginal_rank",
        }),
        "witness": v.witness.as_ref().map(witness_json),
        "certificate": certificate,
        "notes": v.notes,
        "oracle": oracle,
    });
    Ok(r)
}

pub fn read_relations_file(path: &Path) -> Result<String, CliError> {
    let text = read_text(path)?;
    let parts: Vec<&str> = text
        .split(['\n', ';'])
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('#'))
        .collect();
    Ok(parts.join("; "))
}

pub fn dual(q: usize, expr: &str, direct: bool, output: Option<&Path>) -> Result<Report, CliError> {
    let ideal = parse_relation(q, expr)?;
    let perp = ideal.orthogonal_complement();
    let dual_algebra = quotient(q, &perp)?;
    let total = pair_count(q);
    let mut r = Report::new("dual");
    let (name, algebra) = if direct {
        (format!("N^{q} / I, I = <{}>", expr.trim()), quotient(q, &ideal)?)
    } else {
        (format!("N^{q} / I^perp, I = <{}>", expr.trim()), dual_algebra.clone())
    };
    r.line(name.clone());
    r.line(format!("dim I = {}, dim I^perp = {}, q(q-1)/2 = {total}", ideal.dim(), perp.dim()));
    r.line(format!(
        "center dimensions: N^q/I has p = {}, N^q/I^perp has p = {}, sum {}",
        total - ideal.dim(),
        dual_algebra.p(),
        total - ideal.dim() + dual_algebra.p()
    ));
    let file = AlgebraFile::from_algebra(&algebra, Some(name.clone()), Some(format!("relations: {}", ideal.to_expression())));
    let text = file.to_json();
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            r.line(format!("wrote {}", path.display()));
        }
        None => r.line(text),
    }
    r.subject = subject(&name, &algebra);
    r.data = json!({
        "q": q,
        "relation_dim": ideal.dim(),
        "complement_dim": perp.dim(),
        "pair_count": total,
        "quotient_center_dim": total - ideal.dim(),
        "dual_center_dim": dual_algebra.p(),
        "direct_quotient": direct,
        "output": output.map(|p| p.display().to_string()),
        "algebra": serde_json::to_value(&file).expect("file serializes"),
    });
    Ok(r)
}

fn entry_json(e: &CatalogEntry) -> Value {
    json!({
        "id": e.id,
        "t_name": e.t_name,
        "n": e.n(),
        "q": e.algebra.q(),
        "p": e.algebra.p(),
        "rank": e.rank_r,
    })
}

pub fn catalog_list() -> Report {
    let mut r = Report::new("catalog");
    r.line(format!("{:<14} {:<14} {:>2} {:>2} {:>2}", "id", "t_name", "n", "p", "r"));
    for e in catalog() {
        r.line(format!("{:<14} {:<14} {:>2} {:>2} {:>2}", e.id, e.t_name, e.n(), e.algebra.p(), e.rank_r));
    }
    r.caveat(TORUS_RANK);
    r.data = json!({ "entries": catalog().iter().map(entry_json).collect::<Vec<_>>() });
    r
}

pub fn catalog_show(id: &str) -> Result<Report, CliError> {
    let e = lookup(id)?;
    let mut r = Report::new("catalog");
    r.line(format!("{} = {}", e.id, e.t_name));
    r.line(format!("n = {}, q = {}, p = {}, rank {}", e.n(), e.algebra.q(), e.algebra.p(), e.rank_r));
    r.line(format!("root spaces all one-dimensional: {}", if e.root_spaces_all_dim1 { "yes" } else { "no" }));
    r.line(format!("H-msg related sequence: {}", seq(&e.hmsg_related_sequence)));
    r.line(format!("brackets: {}", e.table));
    r.line(format!("provenance: {}", e.provenance));
    r.caveat(TORUS_RANK);
    r.subject = subject(e.id, &e.algebra);
    let mut data = entry_json(e);
    data["root_spaces_all_dim1"] = json!(e.root_spaces_all_dim1);
    data["hmsg_related_sequence"] = json!(e.hmsg_related_sequence);
    data["table"] = json!(e.table);
    data["provenance"] = json!(e.provenance);
    r.data = data;
    Ok(r)
}

/// `N^{8,3}_{10}` becomes `N8-3_10.json`.
fn file_name(id: &str) -> String {
    let stem: String = id.chars().filter(|c| !matches!(c, '^' | '{' | '}')).map(|c| if c == ',' { '-' } else { c }).collect();
    format!("{stem}.json")
}

pub fn catalog_export(dir: &Path) -> Result<Report, CliError> {
    let io = |e: std::io::Error| CliError::Input(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut index = Vec::new();
    for e in catalog() {
        let file = AlgebraFile::from_algebra(&e.algebra, Some(e.id.to_string()), Some(e.provenance.clone()));
        let name = file_name(e.id);
        std::fs::write(dir.join(&name), file.to_json()).map_err(io)?;
        let mut entry = entry_json(e);
        entry["file"] = json!(name);
        index.push(entry);
    }
    let index = json!({ "entries": index });
    std::fs::write(dir.join("index.json"), serde_json::to_string_pretty(&index).expect("index serializes")).map_err(io)?;
    let mut r = Report::new("catalog");
    r.line(format!("wrote {} algebra files and index.json to {}", catalog().len(), dir.display()));
    r.data = json!({ "dir": dir.display().to_string(), "count": catalog().len() });
    Ok(r)
}

pub fn classify(path: &Path) -> Result<Report, CliError> {
    let l = load(path)?;
    let a = &l.algebra;
    let mut r = Report::new("classify");
    r.line(l.name.clone());
    r.line(format!("q = {}, p = {}, n = {}", a.q(), a.p(), a.n()));
    fingerprint_lines(&mut r, &fingerprint(a));
    r.subject = subject(&l.name, a);
    let covered = catalog().iter().filter(|e| e.algebra.q() == a.q() && e.algebra.p() == a.p()).count();
    let matches = match_catalog(a);
    if covered == 0 {
        r.line(format!("no catalog coverage for (q,p) = ({},{})", a.q(), a.p()));
    } else if matches.is_empty() {
        r.line(format!("no match among the {covered} catalog entries with (q,p) = ({},{})", a.q(), a.p()));
    }
    for m in &matches {
        let strength = match m.strength {
            MatchStrength::Exact => "Exact",
            MatchStrength::Partial => "Partial",
        };
        r.line(format!("{strength} match {} / {} (rank {})", m.entry.id, m.entry.t_name, m.entry.rank_r));
    }
    r.catalog_matches = json!(matches
        .iter()
        .map(|m| {
            let mut v = entry_json(m.entry);
            v["strength"] = json!(match m.strength {
                MatchStrength::Exact => "exact",
                MatchStrength::Partial => "partial",
            });
            v
        })
        .collect::<Vec<_>>());
    r.data = json!({ "catalog_entries_with_signature": covered });
    r.caveat(MATCH_CAVEAT);
    r.caveat(SEQUENCE_CAVEAT);
    r.caveat(TORUS_RANK);
    Ok(r)
}
