//! Polyharmonic families on the Heisenberg group Nil.

use polyharm::families::{
    nil_b_basis, nil_monomial_bound, nil_monomial_family, nil_product_family,
    nil_product_family_bound,
};
use polyharm::textio::{parse, render, Format};
use polyharm::{harmonicity_degree, GeometryId, DEFAULT_MAX_R, DEFAULT_TERM_CAP};

fn main() -> polyharm::Result<()> {
    println!("monomials x^m y^n t^alpha:");
    for (m, n, alpha) in [(1, 3, 7), (5, 2, 4), (2, 2, 2), (0, 0, 3)] {
        let fam = nil_monomial_family(m, n, alpha);
        let report = fam.certify(DEFAULT_TERM_CAP)?;
        println!(
            "  ({m}, {n}, {alpha}) bound {} computed {}",
            nil_monomial_bound(m, n, alpha),
            report.degree
        );
    }

    let h1 = parse("1/2*exp(x + i*y) + 1/2*exp(x - i*y)").unwrap();
    for (d, alpha) in [(0, 1), (1, 2), (2, 0)] {
        match nil_product_family(&h1, d, alpha) {
            Ok(fam) => {
                let report = fam.certify(DEFAULT_TERM_CAP)?;
                println!(
                    "e^x cos y, d = {d}, alpha = {alpha}: predicted {} computed {}",
                    fam.predicted_degree, report.degree
                );
            }
            Err(e) => println!("e^x cos y, d = {d}, alpha = {alpha}: {e}"),
        }
    }

    let x = parse("x").unwrap();
    match nil_product_family(&x, 0, 1) {
        Ok(_) => println!("x accepted"),
        Err(e) => println!("strict constructor rejects x: {e}"),
    }
    let fam = nil_product_family_bound(&x, 0, 1)?;
    println!(
        "lenient constructor: {:?} at most {}",
        fam.prediction_status, fam.predicted_degree
    );

    println!("biharmonic basis:");
    for b in nil_b_basis() {
        let report = harmonicity_degree(GeometryId::Nil, &b, DEFAULT_MAX_R, DEFAULT_TERM_CAP)?;
        println!(
            "  {:<40} degree {}",
            render(&b, Format::Human),
            report.degree
        );
    }
    Ok(())
}
