//! Property tests for the algebra, operators, solver, parser and families.

mod common;

use common::{arb_expr, arb_gaussian, arb_geometry, Shape};
use num_traits::{One, Zero};
use polyharm::analysis::{harmonicity_degree, is_r_harmonic, Degree};
use polyharm::families::{
    exp_cos, nil_biharmonic_b, nil_product_family, product_space_family, sl2_axis_family,
    sol_ansatz_basis, sol_example_fr, sol_harmonic_coefficient, sol_polyharmonic, Sl2Axis,
};
use polyharm::linalg::{coordinates, matrix_of_tau, nullspace, ExactMatrix};
use polyharm::textio::{parse, parse_with, render_with, Format, JsonExpression};
use polyharm::{
    kappa, tau, Expression, GaussianRational, GeometryId, TermKey, Var, DEFAULT_TERM_CAP as CAP,
};
use proptest::prelude::*;

fn small() -> impl Strategy<Value = (GeometryId, Expression)> {
    arb_geometry().prop_flat_map(|g| (Just(g), arb_expr(g, Shape::SMALL)))
}

fn q(n: i64) -> GaussianRational {
    GaussianRational::from(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(f in arb_expr(GeometryId::Sol, Shape::SMALL),
                   g in arb_expr(GeometryId::Nil, Shape::SMALL),
                   h in arb_expr(GeometryId::H2xR, Shape::SMALL)) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &Expression::one(), f.clone());
        prop_assert!((&f - &f).is_zero());
        prop_assert!((&f * &Expression::zero()).is_zero());
    }

    #[test]
    fn derivatives_commute_and_obey_leibniz(f in arb_expr(GeometryId::Sol, Shape::SMALL),
                                            g in arb_expr(GeometryId::S2xR, Shape::SMALL)) {
        for a in Var::ALL {
            for b in Var::ALL {
                prop_assert_eq!(f.diff(a).diff(b), f.diff(b).diff(a));
            }
            prop_assert_eq!((&f * &g).diff(a), &(&f.diff(a) * &g) + &(&f * &g.diff(a)));
        }
    }

    #[test]
    fn tau_is_linear((g, f) in small(), h in arb_expr(GeometryId::Nil, Shape::SMALL),
                     a in arb_gaussian(), b in arb_gaussian()) {
        let lhs = tau(g, &(&f.scale(&a) + &h.scale(&b)), CAP).unwrap();
        let rhs = &tau(g, &f, CAP).unwrap().scale(&a) + &tau(g, &h, CAP).unwrap().scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kappa_is_symmetric_and_bilinear((g, f) in small(), h in arb_expr(GeometryId::Sol, Shape::SMALL),
                                        k in arb_expr(GeometryId::Sol, Shape::SMALL), a in arb_gaussian()) {
        prop_assert_eq!(kappa(g, &f, &h, CAP).unwrap(), kappa(g, &h, &f, CAP).unwrap());
        let lhs = kappa(g, &(&f.scale(&a) + &k), &h, CAP).unwrap();
        let rhs = &kappa(g, &f, &h, CAP).unwrap().scale(&a) + &kappa(g, &k, &h, CAP).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_rule((g, f) in small(), h in arb_expr(GeometryId::Sol, Shape::SMALL)) {
        let lhs = tau(g, &(&f * &h), CAP).unwrap();
        let rhs = &(&(&tau(g, &f, CAP).unwrap() * &h) + &kappa(g, &f, &h, CAP).unwrap().scale(&q(2)))
            + &(&f * &tau(g, &h, CAP).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_is_monotone_and_drops_under_tau((g, f) in small()) {
        let report = harmonicity_degree(g, &f, 6, CAP).unwrap();
        if let Degree::Exact(r) = report.degree {
            prop_assert!(is_r_harmonic(g, &f, r, CAP).unwrap());
            prop_assert!(is_r_harmonic(g, &f, r + 1, CAP).unwrap());
            if r >= 1 {
                prop_assert!(!is_r_harmonic(g, &f, r - 1, CAP).unwrap());
                let next = harmonicity_degree(g, &tau(g, &f, CAP).unwrap(), 6, CAP).unwrap();
                prop_assert_eq!(next.degree, Degree::Exact(r - 1));
            }
        }
    }

    #[test]
    fn degree_is_scale_invariant((g, f) in small(), a in arb_gaussian()) {
        prop_assume!(!a.is_zero());
        let d1 = harmonicity_degree(g, &f, 6, CAP).unwrap().degree;
        let d2 = harmonicity_degree(g, &f.scale(&a), 6, CAP).unwrap().degree;
        prop_assert_eq!(d1, d2);
    }

    #[test]
    fn nullspace_vectors_are_annihilated(rows in 1usize..5, cols in 1usize..6,
                                          entries in prop::collection::vec(-3i64..=3, 30),
                                          imag in prop::collection::vec(-1i64..=1, 30)) {
        let data: Vec<Vec<GaussianRational>> = (0..rows)
            .map(|i| (0..cols).map(|j| {
                let k = i * cols + j;
                &q(entries[k]) + &(&GaussianRational::i() * &q(imag[k]))
            }).collect())
            .collect();
        let m = ExactMatrix::from_rows(data).unwrap();
        let ns = nullspace(&m);
        prop_assert_eq!(ns.len(), cols - m.rank());
        for v in &ns {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn json_round_trip((g, f) in small()) {
        let text = render_with(&f, Format::Json, g.notation());
        let back: JsonExpression = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_expression().unwrap(), f);
    }

    #[test]
    fn constructors_are_homogeneous(a in prop::collection::vec(arb_gaussian(), 4),
                                    b in prop::collection::vec(arb_gaussian(), 4),
                                    lambda in arb_gaussian(), r in 0u32..3) {
        prop_assume!(!lambda.is_zero());
        prop_assume!(a.iter().chain(&b).any(|c| !c.is_zero()));
        let arr = |v: &[GaussianRational]| -> [GaussianRational; 4] { v.to_vec().try_into().unwrap() };
        let scaled = |v: &[GaussianRational]| v.iter().map(|c| c * &lambda).collect::<Vec<_>>();
        let base = sol_example_fr(r, &arr(&a), &arr(&b)).unwrap();
        let s = sol_example_fr(r, &arr(&scaled(&a)), &arr(&scaled(&b))).unwrap();
        prop_assert_eq!(&s.expr, &base.expr.scale(&lambda));
        let d1 = harmonicity_degree(GeometryId::Sol, &base.expr, 10, CAP).unwrap().degree;
        let d2 = harmonicity_degree(GeometryId::Sol, &s.expr, 10, CAP).unwrap().degree;
        prop_assert_eq!(d1, d2);

        let p: Vec<GaussianRational> = a.clone();
        prop_assume!(!p[3].is_zero());
        let base = sl2_axis_family(&p, Sl2Axis::X).unwrap();
        let s = sl2_axis_family(&scaled(&p), Sl2Axis::X).unwrap();
        prop_assert_eq!(&s.expr, &base.expr.scale(&lambda));
        prop_assert_eq!(s.predicted_degree, base.predicted_degree);

        let mut b12: [GaussianRational; 12] = Default::default();
        for (i, c) in a.iter().chain(&b).enumerate() {
            b12[i] = c.clone();
        }
        let base = nil_biharmonic_b(&b12).unwrap();
        let s = nil_biharmonic_b(&b12.clone().map(|c| &c * &lambda)).unwrap();
        prop_assert_eq!(&s.expr, &base.expr.scale(&lambda));

        let base = product_space_family(GeometryId::S2xR, &a, &[], &b, 2);
        let s = product_space_family(GeometryId::S2xR, &scaled(&a), &[], &b, 2);
        if let (Ok(base), Ok(s)) = (base, s) {
            prop_assert_eq!(&s.expr, &base.expr.scale(&lambda));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn canonical_round_trip((g, f) in small()) {
        let text = render_with(&f, Format::Canonical, g.notation());
        let back = parse_with(&text, g.notation()).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(render_with(&back, Format::Canonical, g.notation()), text);
    }
}

/// Closed form `(-1)^k / Π_{j=1}^{k} (2j)² · n!/(n-2k)!`, computed as a product.
fn boundary_closed_form(n: u32, k: u32) -> GaussianRational {
    let mut c = GaussianRational::one();
    for j in 1..=k {
        let jj = q(2 * j as i64);
        c = &c / &(&jj * &jj);
        c = &c * &q(-1);
    }
    for j in (n - 2 * k + 1)..=n {
        c = &c * &q(j as i64);
    }
    c
}

#[test]
fn closed_forms_agree() {
    for n in 0..=12 {
        for k in 0..=n / 2 {
            assert_eq!(
                sol_harmonic_coefficient(n, k),
                boundary_closed_form(n, k),
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn sol_tau_matrix_matches_hand_entries() {
    for (m, n) in [(2u32, 4u32), (4, 4), (5, 3), (6, 2)] {
        let basis = sol_ansatz_basis(m, n);
        let mat = matrix_of_tau(GeometryId::Sol, &basis, CAP).unwrap();
        let idx = |i: u32, k: u32| (i * (n / 2 + 1) + k) as usize;
        for i in 0..=m / 2 {
            for k in 0..=n / 2 {
                let col = idx(i, k);
                let mut expected = vec![GaussianRational::zero(); basis.len()];
                let diff = k as i64 - i as i64;
                expected[col] = q(4 * diff * diff);
                if i < m / 2 {
                    let a = (m - 2 * i) as i64;
                    expected[idx(i + 1, k)] = q(a * (a - 1));
                }
                if k < n / 2 {
                    let b = (n - 2 * k) as i64;
                    expected[idx(i, k + 1)] = q(b * (b - 1));
                }
                for (row, e) in expected.iter().enumerate() {
                    assert_eq!(mat.get(row, col), e, "m={m} n={n} row={row} col={col}");
                }
            }
        }
    }
}

#[test]
fn sol_polyharmonic_boundary_coefficients() {
    for m in 0..=8u32 {
        for n in 0..=8u32 {
            let f = sol_polyharmonic(m, n, CAP).unwrap().expr;
            let key = |i: u32, k: u32| {
                TermKey::monomial(m - 2 * i, n - 2 * k, 0).with_exp(
                    GaussianRational::zero(),
                    GaussianRational::zero(),
                    q(2 * (k as i64 - i as i64)),
                )
            };
            for k in 0..=n / 2 {
                assert_eq!(
                    f.coeff(&key(0, k)),
                    boundary_closed_form(n, k),
                    "c_0,{k} for ({m},{n})"
                );
            }
            for i in 0..=m / 2 {
                assert_eq!(
                    f.coeff(&key(i, 0)),
                    boundary_closed_form(m, i),
                    "c_{i},0 for ({m},{n})"
                );
            }
        }
    }
}

#[test]
fn f24_matches_nullspace_construction_on_the_boundary() {
    let f24 =
        parse("x^2*y^4 + 3/8*exp(4*t)*x^2 - 1/2*exp(-2*t)*y^4 + (21/16 - 3*x^2*y^2)*exp(2*t)")
            .unwrap();
    let ours = sol_polyharmonic(2, 4, CAP).unwrap().expr;
    let basis = sol_ansatz_basis(2, 4);
    let a = coordinates(&f24, &basis).unwrap();
    let b = coordinates(&ours, &basis).unwrap();
    // Both lie in ker τ² and share every coefficient on the boundary row and column.
    for (idx, key) in basis.iter().enumerate() {
        let on_boundary = key.a == 2 || key.b == 4;
        if on_boundary {
            assert_eq!(a[idx], b[idx], "{key:?}");
        }
    }
}

/// τ^n(H·x^d) on Nil stays in the span of `∂_x^j H · x^{d-2n+j}`, `0 ≤ j ≤ n`.
#[test]
fn nil_iterated_laplacian_span() {
    let h = exp_cos();
    for d in 0..=6u32 {
        for n in 1..=4u32 {
            let mut f = &h * &Expression::monomial(d, 0, 0);
            for _ in 0..n {
                f = tau(GeometryId::Nil, &f, CAP).unwrap();
            }
            let spanning: Vec<Expression> = (0..=n)
                .filter_map(|j| {
                    let e = d as i64 - 2 * n as i64 + j as i64;
                    (e >= 0).then(|| &h.diff_n(Var::U, j) * &Expression::monomial(e as u32, 0, 0))
                })
                .collect();
            let mut keys: Vec<TermKey> = f.iter().map(|(k, _)| k.clone()).collect();
            for s in &spanning {
                keys.extend(s.iter().map(|(k, _)| k.clone()));
            }
            keys.sort();
            keys.dedup();
            // Columns: spanning functions, then the target; a solution exists iff
            // some nullspace vector has a nonzero last coordinate.
            let rows: Vec<Vec<GaussianRational>> = keys
                .iter()
                .map(|k| {
                    spanning
                        .iter()
                        .map(|s| s.coeff(k))
                        .chain([f.coeff(k)])
                        .collect()
                })
                .collect();
            let m = ExactMatrix::from_rows(rows).unwrap();
            let last = spanning.len();
            let solvable = f.is_zero() || nullspace(&m).iter().any(|v| !v[last].is_zero());
            assert!(solvable, "d={d} n={n}");
        }
    }
}

#[test]
fn nil_product_degrees_for_small_parameters() {
    for d in 0..=3u32 {
        for alpha in 0..=3u32 {
            let fam = nil_product_family(&exp_cos(), d, alpha).unwrap();
            let r = harmonicity_degree(GeometryId::Nil, &fam.expr, 20, CAP)
                .unwrap()
                .degree;
            assert_eq!(r, Degree::Exact(2 * alpha + d + 1), "d={d} alpha={alpha}");
        }
    }
}
