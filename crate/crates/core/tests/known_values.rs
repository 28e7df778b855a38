//! Hand-evaluated instances through the public API.

use approx::assert_relative_eq;
use katolab_core::functional::{check_superadditive, sigma};
use katolab_core::generators::scale_to_trace_budget;
use katolab_core::linalg::{Matrix, Vector, C64};
use katolab_core::pointwise::{check_kato, check_schwarz_positive};
use katolab_core::series::{
    check_commuting_series_example, check_normal_series_example, eval_matrix_spectral, ExampleKind, SeriesCatalog,
};
use katolab_core::trace_suite::{check_basis_bound, check_product_trace, check_remark_variants, check_trace_kato};

fn real(rows: &[&[f64]]) -> Matrix {
    Matrix::from_real_rows(rows).unwrap()
}

#[test]
fn nilpotent_kato_equality() {
    let t = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
    let x = Vector::from_real(&[0.0, 1.0]).unwrap();
    let y = Vector::from_real(&[1.0, 0.0]).unwrap();
    let c = check_kato(&t, &x, &y, 0.5).unwrap();
    assert_relative_eq!(c.lhs, 1.0);
    assert_relative_eq!(c.rhs, 1.0, epsilon = 1e-14);
}

#[test]
fn projection_schwarz_is_zero_against_zero() {
    let p = Matrix::real_diag(&[1.0, 0.0]);
    let c = check_schwarz_positive(&p, &Vector::from_real(&[1.0, 0.0]).unwrap(), &Vector::from_real(&[0.0, 1.0]).unwrap())
        .unwrap();
    assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
    assert!(c.passed);
}

#[test]
fn identity_trace_kato_is_tight() {
    for n in 1..6 {
        let c = check_trace_kato(&Matrix::identity(n), 0.3).unwrap();
        assert_relative_eq!(c.lhs, (n * n) as f64, epsilon = 1e-12);
        assert!(c.is_equality(1e-12));
    }
}

#[test]
fn diagonal_basis_bound_is_tight() {
    let t = Matrix::real_diag(&[2.0, 3.0]);
    for alpha in [0.0, 0.25, 0.5, 1.0] {
        let c = check_basis_bound(&t, &Matrix::identity(2), alpha).unwrap();
        assert_relative_eq!(c.lhs, 5.0);
        assert_relative_eq!(c.rhs, 5.0, epsilon = 1e-12);
    }
}

#[test]
fn product_minimum_form_on_identity() {
    let id = Matrix::identity(2);
    let (_, min) = check_product_trace(&id, &id, &id, 0.5).unwrap();
    assert_relative_eq!(min.lhs, 4.0);
    assert_relative_eq!(min.rhs, 4.0);
}

#[test]
fn remark_variant_with_projection_weight() {
    let t = Matrix::real_diag(&[1.0, -1.0]);
    let b = Matrix::real_diag(&[1.0, 0.0]);
    let (first, ..) = check_remark_variants(&t, &b, 0.5).unwrap();
    assert_relative_eq!(first.lhs, 1.0);
    assert_relative_eq!(first.rhs, 1.0, epsilon = 1e-14);
}

#[test]
fn sigma_scales_linearly_on_sign_diagonal() {
    let t = Matrix::real_diag(&[1.0, -1.0]);
    let id = Matrix::identity(2);
    assert_relative_eq!(sigma(&id, &t, 0.5, &id.scale(2.0)).unwrap(), 4.0, epsilon = 1e-12);
    let c = check_superadditive(&id, &t, 0.5, &id, &id).unwrap();
    assert!(c.is_equality(1e-12));
}

#[test]
fn budget_scaling_of_a_scalar() {
    let n = Matrix::real_diag(&[2.0]);
    let scaled = scale_to_trace_budget(&n, 0.5, 1.0, 0.5).unwrap();
    assert_relative_eq!(scaled[(0, 0)].re, 0.5, epsilon = 1e-12);
}

#[test]
fn spectral_geometric_series_of_a_diagonal() {
    let catalog = SeriesCatalog::standard();
    let m = Matrix::real_diag(&[0.5, 0.0]);
    let g = eval_matrix_spectral(catalog.require("geom").unwrap(), &m).unwrap();
    assert_relative_eq!(g[(0, 0)].re, 2.0, epsilon = 1e-14);
    assert_relative_eq!(g[(1, 1)].re, 1.0, epsilon = 1e-14);
    let c = eval_matrix_spectral(catalog.require("cos").unwrap(), &Matrix::scalar(C64::new(std::f64::consts::PI, 0.0)))
        .unwrap();
    assert_relative_eq!(c[(0, 0)].re, -1.0, epsilon = 1e-14);
}

#[test]
fn resolvent_examples_on_scalars() {
    let n = Matrix::real_diag(&[0.25]);
    let minus = check_normal_series_example(&n, 0.5, ExampleKind::ResolventMinus).unwrap();
    assert_relative_eq!(minus.lhs, 1.0 / 9.0, epsilon = 1e-14);
    assert!(minus.is_equality(1e-12));
    let plus = check_normal_series_example(&n, 0.5, ExampleKind::ResolventPlus).unwrap();
    assert_relative_eq!(plus.lhs, 0.04, epsilon = 1e-14);
    assert!(plus.passed && !plus.is_equality(1e-3));
    let pair = check_commuting_series_example(&n, &Matrix::identity(1), 0.5, ExampleKind::Exp).unwrap();
    assert!(pair.is_equality(1e-12));
}
