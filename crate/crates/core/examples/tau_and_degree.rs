//! Apply the Laplace-Beltrami operator on each geometry and compute degrees.
//!
//! Run with `cargo run --example tau_and_degree`.

use polyharm::textio::{parse_with, render_with, Format};
use polyharm::{harmonicity_degree, tau, tau_iter, GeometryId, DEFAULT_MAX_R, DEFAULT_TERM_CAP};

fn main() -> polyharm::Result<()> {
    let cases = [
        (
            GeometryId::Sol,
            "x^2*y^4 + 3/8*exp(4*t)*x^2 - 1/2*exp(-2*t)*y^4 + (21/16 - 3*x^2*y^2)*exp(2*t)",
        ),
        (GeometryId::Nil, "x^5*y^2*t^4"),
        (GeometryId::Sl2R, "x*t^2 + y*t^3"),
        (GeometryId::H2xR, "z^2*t^3"),
        (GeometryId::S2xR, "(z + zc^2)*t^3"),
    ];
    for (g, src) in cases {
        let f = parse_with(src, g.notation()).expect("example parses");
        let tf = tau(g, &f, DEFAULT_TERM_CAP)?;
        let report = harmonicity_degree(g, &f, DEFAULT_MAX_R, DEFAULT_TERM_CAP)?;
        println!(
            "[{}] f = {}",
            g.name(),
            render_with(&f, Format::Human, g.notation())
        );
        println!(
            "  tau(f)  = {}",
            render_with(&tf, Format::Human, g.notation())
        );
        println!(
            "  degree  = {} (proper: {}), term counts {:?}",
            report.degree, report.proper, report.chain
        );
        if let Some(r) = report.degree.exact().filter(|&r| r >= 1) {
            let last = tau_iter(g, &f, r - 1, DEFAULT_TERM_CAP)?;
            println!(
                "  tau^{}(f) = {}",
                r - 1,
                render_with(&last, Format::Human, g.notation())
            );
        }
    }
    Ok(())
}
