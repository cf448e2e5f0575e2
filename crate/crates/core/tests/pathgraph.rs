mod common;

use common::{dream, perm, richardson_bases};
use fpp::pathgraph::{admissible_collections, bases_of, build_graph, lex_max_basis, lex_min_basis};
use fpp::pipedream::{enumerate_fpps, rotate_le};
use fpp::positroid::dle_fillings;
use fpp::{BasisSet, PipeDream};

fn running() -> PipeDream {
    dream(&["V V V V V P E X X", "V V V P E H X E E", "P E X H E H X E X"])
}

#[test]
fn running_example_lex_extremes() {
    let d = running();
    assert!(d.is_gamma_free().unwrap());
    let b = bases_of(&d).unwrap();
    assert_eq!(b.lex_min(), &[1, 4, 6]);
    assert_eq!(b.lex_max(), &[5, 7, 9]);
    assert_eq!(lex_min_basis(&d), vec![1, 4, 6]);
    assert_eq!(lex_max_basis(&d).unwrap(), vec![5, 7, 9]);
}

#[test]
fn running_example_le_diagram() {
    let le = rotate_le(&running()).unwrap();
    assert_eq!(le.shape, vec![6, 4, 3]);
    assert_eq!(le.to_ascii(), "X E X E X E\nE E X E\nX X E\n");
    assert_eq!(le.bases(), bases_of(&running()).unwrap().bases().iter().cloned().collect());
}

#[test]
fn constituents_of_2413_4231() {
    let d = fpp::pipedream::construct_fpp(&perm("2413"), &perm("4231")).unwrap();
    let got: Vec<BasisSet> = (1..4).map(|k| bases_of(&d.restrict(k).unwrap()).unwrap()).collect();
    let want = [vec![vec![2], vec![4]], vec![vec![2, 4]], vec![vec![1, 2, 4], vec![2, 3, 4]]];
    for (g, w) in got.iter().zip(want) {
        assert_eq!(g.bases(), w.as_slice());
    }
}

#[test]
fn restrictions_follow_the_richardson_shadow() {
    for n in 1..=4 {
        for d in enumerate_fpps(n).unwrap() {
            let (u, v) = (d.pivot_permutation().unwrap(), d.exit_permutation().unwrap());
            for k in 1..=n {
                let got: std::collections::BTreeSet<Vec<usize>> =
                    bases_of(&d.restrict(k).unwrap()).unwrap().bases().iter().cloned().collect();
                assert_eq!(got, richardson_bases(&u, &v, k), "{u} {v} k={k}");
            }
        }
    }
}

#[test]
fn path_bases_match_the_postnikov_walk_oracle() {
    for n in 1..=5 {
        for k in 1..n {
            for pivots in itertools::Itertools::combinations((1..=n).rev(), k) {
                for d in dle_fillings(n, &pivots).unwrap() {
                    let via_graph: std::collections::BTreeSet<Vec<usize>> =
                        bases_of(&d).unwrap().bases().iter().cloned().collect();
                    assert_eq!(via_graph, rotate_le(&d).unwrap().bases(), "{d}");
                }
            }
        }
    }
}

#[test]
fn graphs_are_acyclic_and_families_are_disjoint() {
    for d in enumerate_fpps(4).unwrap() {
        for k in 1..=4 {
            let p = d.restrict(k).unwrap();
            let g = build_graph(&p).unwrap();
            assert!(g.topological_order().is_some());
            for fam in admissible_collections(&g, k).unwrap() {
                let mut seen = std::collections::HashSet::new();
                assert!(fam.iter().flatten().all(|v| seen.insert(*v)));
                assert!(fam.iter().all(|path| g.sink_label(*path.last().unwrap()).is_some()));
            }
            let b = bases_of(&p).unwrap();
            assert_eq!(b.lex_min(), lex_min_basis(&p).as_slice());
            assert_eq!(b.lex_max(), lex_max_basis(&p).unwrap().as_slice());
        }
    }
}

#[test]
fn basis_set_json_round_trip_and_validation() {
    let b = bases_of(&running()).unwrap();
    let s = serde_json::to_string(&b).unwrap();
    assert_eq!(serde_json::from_str::<BasisSet>(&s).unwrap(), b);
    assert!(serde_json::from_str::<BasisSet>(r#"{"n":3,"k":2,"bases":[[1]]}"#).is_err());
    assert!(BasisSet::new(3, false, vec![vec![1, 4]]).is_err());
    assert!(BasisSet::new(3, false, vec![vec![1], vec![1, 2]]).is_err());
}
