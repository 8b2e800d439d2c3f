//! Compare the symbolic operator with a central-difference stencil.

use polyharm::numeric::{
    cross_check, fd_tau, EvalPoint, DEFAULT_FD_STEP, DEFAULT_FD_TOL, DEFAULT_SEED,
};
use polyharm::textio::parse_with;
use polyharm::{GeometryId, DEFAULT_TERM_CAP};

fn main() -> polyharm::Result<()> {
    for g in GeometryId::ALL {
        let src = if g.is_complex() {
            "z^2*zc*t + exp(1/2*t)"
        } else {
            "x^2*y*t + exp(1/2*t)*y"
        };
        let f = parse_with(src, g.notation()).unwrap();
        let reports = cross_check(g, &f, 5, DEFAULT_FD_STEP, DEFAULT_FD_TOL, DEFAULT_SEED)?;
        let worst = reports.iter().map(|r| r.rel_error).fold(0.0, f64::max);
        println!(
            "[{}] worst relative error over {} points: {worst:.2e}",
            g.name(),
            reports.len()
        );
    }

    // The stencil error shrinks by about 4 when the step halves.
    let g = GeometryId::Nil;
    let f = parse_with("exp(x)*y^3*t^2", g.notation()).unwrap();
    let p = EvalPoint::new(0.3, -0.2, 0.4);
    let exact = polyharm::numeric::eval(&polyharm::tau(g, &f, DEFAULT_TERM_CAP)?, &p, g)?;
    let errs: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
        .iter()
        .map(|&h| fd_tau(g, &f, &p, h).map(|v| (v - exact).norm()))
        .collect::<polyharm::Result<_>>()?;
    println!(
        "errors at h, h/2, h/4: {:.3e} {:.3e} {:.3e}; ratios {:.2} {:.2}",
        errs[0],
        errs[1],
        errs[2],
        errs[0] / errs[1],
        errs[1] / errs[2]
    );
    Ok(())
}
