mod common;

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use logform::baselocus::{
    analyze, enumerate_factorizations, leq, maximal_elements, membership_check, sample_lambda, Factorization,
};
use logform::field::{Field, PrimeField};
use logform::logarithmic::{log_form, DegreeVector};
use logform::poly::random_poly_with;

fn dv(parts: &[u32]) -> DegreeVector {
    DegreeVector::new(parts.to_vec()).unwrap()
}

#[test]
fn enumeration_matches_brute_force() {
    for d in common::degree_vectors(5, 4) {
        let mine: Vec<_> = enumerate_factorizations(&d).iter().map(common::columns_of).collect();
        let unique: BTreeSet<_> = mine.iter().cloned().collect();
        assert_eq!(unique.len(), mine.len(), "duplicates for {d}");
        assert_eq!(unique, common::brute_factorizations(&d), "{d}");
    }
}

#[test]
fn three_lines_include_identity_and_common_factor() {
    let d = dv(&[1, 1, 1]);
    let all = enumerate_factorizations(&d);
    assert!(all.contains(&Factorization::identity(&d)));
    let ones = Factorization::new(vec![vec![1], vec![1], vec![1]], vec![1]).unwrap();
    assert!(all.contains(&ones));
    assert_eq!(all.len(), common::brute_factorizations(&d).len());
    assert_eq!(all.len(), 5);
    let comps = maximal_elements(&d);
    assert!(comps.iter().any(|c| c.phi == ones && c.lambda_dim == 2));
}

#[test]
fn every_factorization_reproduces_the_degrees() {
    for d in common::degree_vectors(6, 3) {
        for phi in enumerate_factorizations(&d) {
            assert!(phi.factors(&d));
            assert_eq!(phi.lambda_dim(), d.m() - common::integer_rank(&phi.e));
        }
    }
}

#[test]
fn leq_is_a_partial_order() {
    for d in common::degree_vectors(5, 3) {
        let all = enumerate_factorizations(&d);
        for a in &all {
            assert!(leq(a, a));
            for b in &all {
                let ab = leq(a, b);
                assert_eq!(ab, common::brute_leq(&common::columns_of(a), &common::columns_of(b), d.m()), "{a} <= {b}");
                if ab && leq(b, a) {
                    assert_eq!(a, b, "antisymmetry in {d}");
                }
                if ab {
                    for c in &all {
                        if leq(b, c) {
                            assert!(leq(a, c), "transitivity in {d}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn components_match_brute_force_poset() {
    for d in common::degree_vectors(6, 4) {
        let mine: BTreeSet<_> = maximal_elements(&d).iter().map(|c| common::columns_of(&c.phi)).collect();
        assert_eq!(mine, common::brute_components(&d), "{d}");
        let flags = analyze(&d);
        assert!(flags.iter().filter(|c| c.is_maximal).count() >= mine.len());
    }
}

#[test]
fn base_locus_samples_vanish_and_generic_points_do_not() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in [dv(&[2, 2]), dv(&[2, 1, 1]), dv(&[2, 2, 2])] {
        for phi in enumerate_factorizations(&d) {
            let g: Vec<_> = phi.d_prime.iter().map(|&k| random_poly_with(&mut rng, 3, k, f).unwrap()).collect();
            if phi.lambda_dim() > 0 {
                let lambda = sample_lambda(f, &phi, &mut rng);
                let (m, form) = membership_check(&lambda, &phi, &g).unwrap();
                assert!(m.precondition_ok && m.vanishes && form.is_zero());
            }
            // a residue vector on the hyperplane but off Λ(e)
            let coords: Vec<u64> = (0..d.m() - 1).map(|_| f.random(&mut rng)).collect();
            let lambda = logform::logarithmic::hyperplane_point(f, &d, &coords);
            let (m, _) = membership_check(&lambda, &phi, &g).unwrap();
            assert!(m.consistent());
            assert_eq!(m.vanishes, m.precondition_ok, "{phi}");
        }
        // distinct dense factors and a generic residue vector
        let polys: Vec<_> = d.parts().iter().map(|&k| random_poly_with(&mut rng, 3, k, f).unwrap()).collect();
        let coords: Vec<u64> = (0..d.m() - 1).map(|_| f.random(&mut rng)).collect();
        let lambda = logform::logarithmic::hyperplane_point(f, &d, &coords);
        assert!(!log_form(f, 3, &lambda, &polys).is_zero());
    }
}

#[test]
fn factorization_json_is_row_major() {
    let c = &maximal_elements(&dv(&[1, 1]))[0];
    let v = serde_json::to_value(c).unwrap();
    assert_eq!(v["e"], serde_json::json!([[1], [1]]));
    assert_eq!(v["d_prime"], serde_json::json!([1]));
    assert_eq!(v["lambda_dim"], 1);
    assert_eq!(v["is_maximal"], true);
}
