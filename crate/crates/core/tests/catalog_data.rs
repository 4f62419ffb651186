use twostep::algebra::BasisChange;
use twostep::catalog::{catalog, distinguish, lookup, match_catalog, Distinction, MatchStrength};
use twostep::invariants::related_sequence;
use twostep::linalg::int;

#[test]
fn stored_related_sequences_agree_with_tables() {
    for e in catalog() {
        if e.id == "N^{8,3}_{10}" {
            // table as published gives a different sequence
            assert_eq!(related_sequence(&e.algebra), vec![1, 2, 2, 2, 3]);
            continue;
        }
        assert_eq!(related_sequence(&e.algebra), e.hmsg_related_sequence, "{}", e.id);
    }
}

#[test]
fn published_n83_10_table_is_n83_9() {
    let nine = lookup("N^{8,3}_9").unwrap();
    let ten = lookup("N^{8,3}_{10}").unwrap();
    let mut scale = vec![int(1); 5];
    scale[1] = int(-1);
    let g = BasisChange::monomial(&[3, 1, 2, 0, 4], &scale, &[1, 0, 2], &vec![int(1); 3]).unwrap();
    assert_eq!(ten.algebra.apply_basis_change(&g).unwrap().tensor(), nine.algebra.tensor());
    assert_eq!(distinguish(&nine.algebra, &ten.algebra), Distinction::Inconclusive);
}

#[test]
fn every_entry_matches_itself() {
    for e in catalog() {
        let hits = match_catalog(&e.algebra);
        let own = hits.iter().find(|m| m.entry.id == e.id).expect(e.id);
        let expected = if twostep::invariants::fingerprint(&e.algebra).uniform3 {
            MatchStrength::Exact
        } else {
            MatchStrength::Partial
        };
        assert_eq!(own.strength, expected, "{}", e.id);
    }
}

#[test]
fn names_are_unique() {
    let mut names: Vec<&str> = catalog().iter().map(|e| e.t_name.as_str()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), catalog().len());
}
