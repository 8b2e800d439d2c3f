//! Solve for polyharmonic functions on Sol by exact linear algebra.
//!
//! Builds the matrix of τ on the ansatz space for each `(m, n)`, takes the
//! smallest power with a usable nullspace vector, and certifies the result.

use polyharm::families::{
    sol_ansatz_basis, sol_harmonic, sol_polyharmonic, sol_polyharmonic_degree, SolAxis,
};
use polyharm::linalg::{matrix_of_tau, nullspace};
use polyharm::textio::{render, Format};
use polyharm::{GeometryId, DEFAULT_TERM_CAP};

fn main() -> polyharm::Result<()> {
    let basis = sol_ansatz_basis(2, 4);
    let m = matrix_of_tau(GeometryId::Sol, &basis, DEFAULT_TERM_CAP)?;
    println!(
        "ansatz for (2, 4): {} basis functions, rank of tau = {}",
        basis.len(),
        m.rank()
    );
    println!("harmonic directions in the ansatz: {}", nullspace(&m).len());

    println!("\n m  n  predicted  computed");
    for (mm, nn) in [(2, 2), (2, 4), (2, 5), (4, 4), (5, 4), (6, 3)] {
        let fam = sol_polyharmonic(mm, nn, DEFAULT_TERM_CAP)?;
        let report = fam.certify(DEFAULT_TERM_CAP)?;
        println!(
            "{mm:2} {nn:2} {:10} {:>9}",
            sol_polyharmonic_degree(mm, nn),
            report.degree
        );
    }

    let f = sol_polyharmonic(2, 4, DEFAULT_TERM_CAP)?;
    println!("\n(2, 4) solution: {}", render(&f.expr, Format::Human));

    let h = sol_harmonic(4, SolAxis::YMajor, true);
    let report = h.certify(DEFAULT_TERM_CAP)?;
    println!(
        "harmonic family n = 4 with linear factor: degree {}",
        report.degree
    );
    Ok(())
}
