use std::collections::BTreeSet;

use fpp::flagbuild::flag_of_fpp;
use fpp::pipedream::enumerate_fpps;
use fpp::poset::{
    build_poset, chain_to_fpp, check_self_dual, check_self_dual_on, flag_to_chain, maximal_chains, missing_covers,
};
use fpp::{Flavor, PipeDream, Positroid};

#[test]
fn three_poset_counts() {
    let rep = build_poset(3, Flavor::Representable).unwrap();
    let mat = build_poset(3, Flavor::Matroidal).unwrap();
    assert_eq!(rep.element_count(), 16);
    assert_eq!(mat.element_count(), 16);
    assert_eq!(maximal_chains(&rep), 19);
    assert_eq!(maximal_chains(&mat), 22);
    assert_eq!(rep.chains().count(), 19);
    assert_eq!(mat.chains().count(), 22);
}

#[test]
fn three_missing_covers() {
    let missing = missing_covers(3).unwrap();
    assert_eq!(missing.len(), 3);
    assert!(missing.iter().all(|(p, q)| p.rank() == 1 && q.rank() == 2));
    let named: Vec<[Vec<Vec<usize>>; 2]> = missing
        .iter()
        .map(|(p, q)| {
            let p = Positroid::from_decperm(p).unwrap();
            let q = Positroid::from_decperm(q).unwrap();
            [p.bases().bases().to_vec(), q.bases().bases().to_vec()]
        })
        .collect();
    assert!(named.contains(&[vec![vec![1], vec![3]], vec![vec![1, 2], vec![2, 3]]]));
    let labels: BTreeSet<String> = missing.iter().map(|(p, q)| format!("{p} {q}")).collect();
    assert!(labels.contains("3o2u1u 3o2o1u"));
}

#[test]
fn representable_covers_are_matroidal_covers() {
    for n in 1..=4 {
        let rep = build_poset(n, Flavor::Representable).unwrap();
        let mat = build_poset(n, Flavor::Matroidal).unwrap();
        for (p, q) in rep.cover_pairs() {
            assert!(mat.has_cover(p, q), "{p} {q}");
        }
    }
}

#[test]
fn chain_counts_equal_interval_counts() {
    for n in 1..=5 {
        let rep = build_poset(n, Flavor::Representable).unwrap();
        assert_eq!(maximal_chains(&rep) as usize, enumerate_fpps(n).unwrap().len(), "n={n}");
    }
}

#[test]
fn self_duality() {
    for n in 1..=4 {
        let rep = build_poset(n, Flavor::Representable).unwrap();
        assert!(check_self_dual(&rep).unwrap().holds, "n={n}");
        assert!(check_self_dual_on(&rep, Positroid::is_lpm).unwrap().holds, "n={n}");
    }
    let rep5 = build_poset(5, Flavor::Representable).unwrap();
    assert!(check_self_dual(&rep5).unwrap().holds);
}

#[test]
fn chains_and_fpps_are_in_bijection() {
    for n in 1..=4 {
        let rep = build_poset(n, Flavor::Representable).unwrap();
        let mut images = BTreeSet::new();
        for chain in rep.chains() {
            let d = chain_to_fpp(&chain).unwrap();
            assert!(d.is_complete() && d.is_fpp().unwrap());
            let back = flag_to_chain(&flag_of_fpp(&d).unwrap()).unwrap();
            assert_eq!(back.iter().collect::<Vec<_>>(), chain);
            images.insert(d);
        }
        let all: BTreeSet<PipeDream> = enumerate_fpps(n).unwrap().into_iter().collect();
        assert_eq!(images, all, "n={n}");
    }
}

#[test]
fn exports() {
    let rep = build_poset(3, Flavor::Representable).unwrap();
    let json = rep.to_json();
    assert_eq!(json["nodes"].as_array().unwrap().len(), 16);
    assert_eq!(json["edges"].as_array().unwrap().len(), rep.cover_count());
    let dot = rep.to_dot(&missing_covers(3).unwrap());
    assert_eq!(dot.matches("style=dashed").count(), 3);
    assert!(dot.starts_with("digraph"));
}

#[test]
fn guards_stop_large_builds() {
    if std::env::var(fpp::guard::ENV).is_err() {
        assert!(build_poset(5, Flavor::Matroidal).is_err());
        assert!(build_poset(6, Flavor::Representable).is_err());
    }
}
