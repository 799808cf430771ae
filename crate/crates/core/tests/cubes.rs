use opforge::cubes::{build_cube, build_cube_on, expected_layer, layer_report, total_fiber_poincare};
use opforge::exactla::{Scalar, SparseMatrix};
use opforge::symseq::{FiniteSet, LaurentPoly};
use opforge::Error;

fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().copied())
}

/// Σ_j (−1)^{k−j} C(k,j) Π_{i<j}(1 + i q^{n−1}), from the closed product formula.
fn oracle_alternating(n: i64, k: usize) -> LaurentPoly {
    let binom = |a: usize, b: usize| (0..b).fold(1i64, |acc, i| acc * (a - i) as i64 / (i as i64 + 1));
    (0..=k).fold(LaurentPoly::zero(), |acc, j| {
        let term = LaurentPoly::falling_product(j.max(1), n - 1).scale(binom(k, j));
        if (k - j) % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

#[test]
fn one_point_cube() {
    let c = build_cube(2, 1).unwrap();
    assert_eq!(c.subsets().len(), 2);
    assert_eq!(c.poincare(0), LaurentPoly::one());
    assert_eq!(c.poincare(1), LaurentPoly::one());
    assert_eq!(c.map(1, 0).unwrap(), SparseMatrix::<Scalar>::identity(1));
}

#[test]
fn two_point_cube_kills_the_bracket() {
    let c = build_cube(2, 2).unwrap();
    assert_eq!(c.poincare(3), poly(&[(0, 1), (1, 1)]));
    for to in [1, 2] {
        let m = c.map(3, to).unwrap();
        assert_eq!(m.rows(), 1);
        // the product maps to the point class, the bracket to zero
        assert_eq!(m.nnz(), 1);
    }
    assert_eq!(total_fiber_poincare(&c).unwrap(), poly(&[(1, 1)]));
}

#[test]
fn vertex_polynomials() {
    for n in 1..=3 {
        let c = build_cube(n, 4).unwrap();
        for s in c.subsets() {
            let j = s.count_ones() as usize;
            assert_eq!(c.poincare(s), LaurentPoly::falling_product(j.max(1), n - 1));
        }
    }
}

#[test]
fn functoriality_and_surjectivity() {
    for n in 1..=3 {
        for k in 1..=4 {
            let c = build_cube(n, k).unwrap();
            let checks = c.check_functoriality().unwrap();
            assert_eq!(checks, 4usize.pow(k as u32));
            c.check_surjectivity().unwrap();
        }
    }
    // the six proper chains K ⊊ J ⊊ L in the 3-cube all commute
    let c = build_cube(2, 3).unwrap();
    let mut proper = 0;
    for l in 0..8u32 {
        for j in 0..8u32 {
            for k in 0..8u32 {
                if l & j == j && j & k == k && l != j && j != k && l == 7 && k == 0 {
                    let lhs = c.map(j, k).unwrap().mul(&c.map(l, j).unwrap()).unwrap();
                    assert_eq!(lhs, c.map(l, k).unwrap());
                    proper += 1;
                }
            }
        }
    }
    assert_eq!(proper, 6);
}

#[test]
fn alternating_sum_matches_product_formula() {
    for n in 1..=3 {
        for k in 1..=5 {
            let c = build_cube(n, k).unwrap();
            assert_eq!(c.alternating_sum(), oracle_alternating(n, k), "n={n} k={k}");
        }
    }
}

#[test]
fn small_layers_by_hand() {
    let r = layer_report(2, 2).unwrap();
    assert_eq!(r.total_fiber, poly(&[(1, 1)]));
    assert!(r.pass);
    let r = layer_report(2, 3).unwrap();
    assert_eq!(r.total_fiber, poly(&[(2, 2)]));
    assert!(r.pass);
    let r = layer_report(3, 2).unwrap();
    assert_eq!(r.total_fiber, poly(&[(2, 1)]));
    assert!(r.pass);
    assert_eq!(r.vertices.len(), 4);
    assert_eq!(r.vertices[0].0, "{}");
    assert_eq!(r.vertices[3], ("{1,2}".to_string(), poly(&[(0, 1), (2, 1)])));
}

#[test]
fn four_point_layer_is_not_concentrated() {
    // inclusion-exclusion picks up the classes with no singleton block
    let r = layer_report(2, 4).unwrap();
    assert_eq!(r.total_fiber, poly(&[(2, 3), (3, 6)]));
    assert_eq!(r.expected, poly(&[(3, 6)]));
    assert!(!r.pass);
    assert_eq!(r.total_fiber.eval_one(), 9);
}

#[test]
fn joint_kernel_agrees_with_inclusion_exclusion() {
    for n in 1..=3 {
        for k in 2..=5 {
            let c = build_cube(n, k).unwrap();
            assert_eq!(c.total_kernel().unwrap(), c.alternating_sum(), "n={n} k={k}");
        }
    }
}

#[test]
fn relabeling_invariance() {
    let a = build_cube(2, 4).unwrap();
    let b = build_cube_on(2, &FiniteSet::new([2, 5, 6, 11]).unwrap()).unwrap();
    assert_eq!(total_fiber_poincare(&a).unwrap(), total_fiber_poincare(&b).unwrap());
    assert_eq!(a.total_kernel().unwrap(), b.total_kernel().unwrap());
    b.check_functoriality().unwrap();
}

#[test]
fn boundaries() {
    let err = layer_report(2, 1).unwrap_err();
    assert!(matches!(err, Error::Unsupported(ref m) if m.contains("formal immersions")));
    assert!(layer_report(2, 6).is_err());
    assert!(build_cube(2, 0).is_err());
    assert!(build_cube(0, 2).is_err());
    assert_eq!(expected_layer(3, 4), poly(&[(6, 6)]));
}

#[test]
fn report_json_shape() {
    let r = layer_report(2, 3).unwrap();
    let v = r.to_json();
    assert_eq!(v["total_fiber"], "2q^2");
    assert_eq!(v["expected"], "2q^2");
    assert_eq!(v["pass"], true);
    assert_eq!(v["vertices"].as_object().unwrap().len(), 8);
    assert_eq!(v["vertices"]["{1,2,3}"], "1 + 3q + 2q^2");
}
