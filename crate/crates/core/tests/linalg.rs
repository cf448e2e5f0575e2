mod common;

use common::laplace;
use fpp::flagbuild::phi_bases;
use fpp::linalg::{
    check_sign_rule, determinant, embed_append, flag_minors, is_complete_nonneg_representation, is_reduced_representation,
    leading_columns, matroid_of_matrix, parse_rational, RationalMatrix,
};
use fpp::positroid::is_matroid;
use fpp::Error;
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn r_of_v() -> RationalMatrix {
    RationalMatrix::from_integers(
        &[
            vec![0, 0, 0, 0, 1, 1, 0],
            vec![0, 0, -1, -1, 0, 1, 1],
            vec![1, 1, 0, -1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 2],
        ],
        false,
    )
    .unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RationalMatrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| q(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect())
        .collect();
    RationalMatrix::new(data, false).unwrap()
}

/// Generalized permutation matrix with `pivots[i]` holding `signs[i]` in row `i`.
fn gen_perm(n: usize, pivots: &[usize], signs: &[i64]) -> RationalMatrix {
    let data: Vec<Vec<i64>> = pivots
        .iter()
        .zip(signs)
        .map(|(&p, &s)| (1..=n).map(|j| if j == p { s } else { 0 }).collect())
        .collect();
    RationalMatrix::from_integers(&data, false).unwrap()
}

#[test]
fn identity_flag_minors() {
    let id = gen_perm(4, &[1, 2, 3, 4], &[1, 1, 1, 1]);
    let m = flag_minors(&id, &[4]).unwrap();
    assert_eq!(m.len(), 1);
    assert_eq!(m[&(4, vec![1, 2, 3, 4])], BigRational::one());
    let m = flag_minors(&id, &[2]).unwrap();
    for ((_, s), v) in &m {
        assert_eq!(v.is_one(), s == &vec![1, 2]);
    }
}

#[test]
fn displayed_representation_pivot_minors() {
    let a = r_of_v();
    let m = flag_minors(&a, &[3, 4]).unwrap();
    assert!(m[&(3, vec![1, 3, 5])].is_positive());
    assert!(m[&(4, vec![1, 3, 5, 6])].is_positive());
    // Only the pivot-set minors are forced by the sign rule.
    assert_eq!(m[&(3, vec![4, 5, 6])], q(-1, 1));
    assert!(!a.is_nonnegative_flag(&[3, 4]).unwrap());
    let b3 = matroid_of_matrix(&a, 3).unwrap();
    assert_eq!(b3.lex_min(), &[1, 3, 5]);
    assert!(is_matroid(&b3));
}

#[test]
fn displayed_matrix_is_a_complete_representation() {
    let a = r_of_v();
    assert_eq!(leading_columns(&a).unwrap(), vec![5, 3, 1, 6]);
    assert!(is_reduced_representation(&a, &[3, 4]));
    assert!(is_complete_nonneg_representation(&a, &[3, 4]));
    assert!(!is_reduced_representation(&a, &[4]));
    let mut flipped: Vec<Vec<i64>> = vec![
        vec![0, 0, 0, 0, 1, 1, 0],
        vec![0, 0, 1, -1, 0, 1, 1],
        vec![1, 1, 0, -1, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 1, 2],
    ];
    let b = RationalMatrix::from_integers(&flipped, false).unwrap();
    assert!(is_reduced_representation(&b, &[3, 4]) && !is_complete_nonneg_representation(&b, &[3, 4]));
    flipped[3][4] = 1;
    let c = RationalMatrix::from_integers(&flipped, false).unwrap();
    assert!(!is_reduced_representation(&c, &[3, 4]));
}

/// Reduced matrix with consecutive ranks: random fill right of each pivot, zeros under pivots.
fn filled_core(rng: &mut ChaCha8Rng, n: usize, pivots: &[usize], signs: &[i64]) -> RationalMatrix {
    let data: Vec<Vec<BigRational>> = (0..pivots.len())
        .map(|i| {
            (1..=n)
                .map(|j| {
                    if j == pivots[i] {
                        q(signs[i], 1)
                    } else if j > pivots[i] && !pivots[..i].contains(&j) {
                        q(rng.gen_range(0..=3), 1)
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    RationalMatrix::new(data, false).unwrap()
}

#[test]
fn flag_nonnegativity_forces_the_sign_rule_on_filled_cores() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=4 {
        for k in 1..=n {
            let ranks: Vec<usize> = (1..=k).collect();
            for pivots in (1..=n).permutations(k) {
                for mask in 0u32..1 << k {
                    let signs: Vec<i64> = (0..k).map(|b| if mask >> b & 1 == 1 { -1 } else { 1 }).collect();
                    let a = filled_core(&mut rng, n, &pivots, &signs);
                    let core = gen_perm(n, &pivots, &signs);
                    let rule = check_sign_rule(&core).unwrap().sign_rule;
                    for i in 1..=k {
                        let mut s = pivots[..i].to_vec();
                        s.sort_unstable();
                        assert_eq!(a.minor(&s).unwrap(), core.minor(&s).unwrap());
                    }
                    if a.is_nonnegative_flag(&ranks).unwrap() {
                        assert!(rule, "{a}");
                    }
                }
            }
        }
    }
}

#[test]
fn displayed_pivot_pattern_follows_the_sign_rule() {
    let core = gen_perm(7, &[5, 3, 1, 6], &[1, -1, 1, 1]);
    let r = check_sign_rule(&core).unwrap();
    assert_eq!(r.nep, vec![0, 1, 2, 0]);
    assert!(r.sign_rule && r.minors_nonnegative);
}

#[test]
fn bareiss_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let a = random_matrix(&mut rng, 4, 6);
        for s in (1..=6).combinations(4) {
            let sub: Vec<Vec<BigRational>> =
                a.data().iter().map(|row| s.iter().map(|&j| row[j - 1].clone()).collect()).collect();
            assert_eq!(a.minor(&s).unwrap(), laplace(&sub));
            assert_eq!(determinant(&sub), laplace(&sub));
        }
    }
}

#[test]
fn sign_rule_small_cases() {
    assert!(check_sign_rule(&gen_perm(3, &[1, 2, 3], &[1, 1, 1])).unwrap().sign_rule);
    let anti = gen_perm(4, &[4, 3, 2, 1], &[1, -1, 1, -1]);
    let r = check_sign_rule(&anti).unwrap();
    assert!(r.sign_rule && r.minors_nonnegative);
    let plain = check_sign_rule(&gen_perm(2, &[2, 1], &[1, 1])).unwrap();
    assert!(!plain.sign_rule && !plain.minors_nonnegative);
    let two = RationalMatrix::from_integers(&[vec![1, 1], vec![0, 1]], false).unwrap();
    assert!(matches!(check_sign_rule(&two), Err(Error::NotGeneralizedPermutation)));
}

#[test]
fn sign_rule_is_bidirectional_up_to_five() {
    for n in 1..=5 {
        for k in 1..=n {
            for pivots in (1..=n).permutations(k) {
                for mask in 0u32..1 << k {
                    let signs: Vec<i64> = (0..k).map(|b| if mask >> b & 1 == 1 { -1 } else { 1 }).collect();
                    let r = check_sign_rule(&gen_perm(n, &pivots, &signs)).unwrap();
                    assert_eq!(r.minors_nonnegative, r.sign_rule, "{pivots:?} {signs:?}");
                }
            }
        }
    }
}

#[test]
fn embedding_minor_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..500 {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(rows..=5);
        let a = random_matrix(&mut rng, rows, cols);
        let b = embed_append(&a).unwrap();
        assert!(b.zero_column());
        let k = rows - 1;
        for s in (0..=cols).combinations(rows) {
            let lhs = b.minor(&s).unwrap();
            let rhs = if s[0] == 0 {
                if k == 0 { BigRational::one() } else { a.top(k).unwrap().minor(&s[1..]).unwrap() }
            } else {
                a.minor(&s).unwrap()
            };
            assert_eq!(lhs, rhs, "{s:?}\n{a}");
        }
    }
}

#[test]
fn single_row_embedding() {
    let a = RationalMatrix::from_integers(&[vec![2, 3]], false).unwrap();
    let b = embed_append(&a).unwrap();
    assert_eq!(b.minor(&[0]).unwrap(), BigRational::one());
}

#[test]
fn embedded_matroid_is_phi() {
    let a = r_of_v();
    let b = embed_append(&a).unwrap();
    let expected = phi_bases(&matroid_of_matrix(&a, 3).unwrap(), &matroid_of_matrix(&a, 4).unwrap()).unwrap();
    assert_eq!(matroid_of_matrix(&b, 4).unwrap(), expected);

    let vandermonde: Vec<Vec<i64>> = (0..3).map(|e| (1..=5).map(|x: i64| x.pow(e)).collect()).collect();
    let v = RationalMatrix::from_integers(&vandermonde, false).unwrap();
    assert!(v.is_nonnegative_flag(&[2, 3]).unwrap());
    let expected = phi_bases(&matroid_of_matrix(&v, 2).unwrap(), &matroid_of_matrix(&v, 3).unwrap()).unwrap();
    assert_eq!(matroid_of_matrix(&embed_append(&v).unwrap(), 3).unwrap(), expected);
}

#[test]
fn random_integer_matroids_satisfy_exchange() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    while checked < 100 {
        let data: Vec<Vec<i64>> = (0..3).map(|_| (0..6).map(|_| rng.gen_range(-1..=1)).collect()).collect();
        let a = RationalMatrix::from_integers(&data, false).unwrap();
        match matroid_of_matrix(&a, 3) {
            Ok(b) => {
                assert!(is_matroid(&b));
                checked += 1;
            }
            Err(Error::RankDeficient(3)) => assert!(a.rank_of_top(3) < 3),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn identity_matroid() {
    let id = gen_perm(3, &[1, 2, 3], &[1, 1, 1]);
    assert_eq!(matroid_of_matrix(&id, 3).unwrap().bases(), &[vec![1, 2, 3]]);
    let zero = RationalMatrix::new(vec![vec![BigRational::zero(); 3]], false).unwrap();
    assert!(matches!(matroid_of_matrix(&zero, 1), Err(Error::RankDeficient(1))));
}

#[test]
fn parsing_and_round_trip() {
    assert_eq!(parse_rational("3/2").unwrap(), q(3, 2));
    assert_eq!(parse_rational(" -1 ").unwrap(), q(-1, 1));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("0.5").is_err());
    let a: RationalMatrix = serde_json::from_str(r#"[["1","-3/2"],["0","4"]]"#).unwrap();
    assert_eq!(a.entry(1, 2), &q(-3, 2));
    let back: RationalMatrix = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
    assert_eq!(back, a);
    let b = embed_append(&a).unwrap();
    let back: RationalMatrix = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
    assert_eq!(back, b);
    assert!(serde_json::from_str::<RationalMatrix>(r#"[["1"],["1","2"]]"#).is_err());
    assert!(RationalMatrix::new(vec![], false).is_err());
}

#[test]
fn no_floating_point_in_the_library() {
    let src = concat!(env!("CARGO_MANIFEST_DIR"), "/src");
    for entry in std::fs::read_dir(src).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        for token in ["f32", "f64"] {
            assert!(!text.contains(token), "{} mentions {token}", path.display());
        }
    }
}
