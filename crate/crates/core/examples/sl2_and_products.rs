//! Families on the universal cover of SL2(R) and on the product spaces H²×R and S²×R.

use polyharm::families::{product_space_family, sl2_axis_family, sl2_example_f2, Sl2Axis};
use polyharm::textio::{render_with, Format};
use polyharm::{GaussianRational, GeometryId, Notation, DEFAULT_TERM_CAP};

fn q(n: i64) -> GaussianRational {
    GaussianRational::from_integer(n)
}

fn main() -> polyharm::Result<()> {
    let poly = [q(1), q(-2), q(0), q(5)];
    for axis in [Sl2Axis::X, Sl2Axis::Y] {
        let fam = sl2_axis_family(&poly, axis)?;
        let report = fam.certify(DEFAULT_TERM_CAP)?;
        println!(
            "sl2 {axis:?} axis, cubic in t: predicted {} computed {}",
            fam.predicted_degree, report.degree
        );
    }

    for b in [
        [q(1), q(0), q(0), q(0), q(0), q(0)],
        [q(2), q(0), q(0), q(1), q(0), q(0)],
    ] {
        let fam = sl2_example_f2(&b)?;
        let report = fam.certify(DEFAULT_TERM_CAP)?;
        println!(
            "sl2 f2 {:?}: at most {}, computed {}",
            b.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            fam.predicted_degree,
            report.degree
        );
    }

    // f(z) = z², g(z̄) = z̄³, P(t) = 1 + t + t² + t³.
    let f = [q(0), q(0), q(1)];
    let g = [q(0), q(0), q(0), q(1)];
    let p = [q(1), q(1), q(1), q(1)];
    for geo in [GeometryId::H2xR, GeometryId::S2xR] {
        let fam = product_space_family(geo, &f, &g, &p, 2)?;
        let report = fam.certify(DEFAULT_TERM_CAP)?;
        println!(
            "[{}] {} has degree {} (predicted {})",
            geo.name(),
            render_with(&fam.expr, Format::Human, Notation::Complex),
            report.degree,
            fam.predicted_degree
        );
    }
    Ok(())
}
