//! Run the built-in catalog of worked examples, or one passed on the command line.
//!
//! `cargo run --example catalog_verify -- path/to/catalog.toml`

use polyharm::catalog::{
    load_catalog, select, verify, VerifyConfig, BUILTIN_CATALOG, CATALOG_SAMPLE_RADIUS,
};
use polyharm::numeric::{DEFAULT_FD_STEP, DEFAULT_FD_TOL, DEFAULT_SEED};
use polyharm::{DEFAULT_MAX_R, DEFAULT_TERM_CAP};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("catalog is readable"),
        None => BUILTIN_CATALOG.to_string(),
    };
    let cases = load_catalog(&text).expect("catalog is valid");
    let cfg = VerifyConfig {
        max_r: DEFAULT_MAX_R,
        term_cap: DEFAULT_TERM_CAP,
        seed: DEFAULT_SEED,
        fd_step: DEFAULT_FD_STEP,
        fd_tol: DEFAULT_FD_TOL,
        points: 3,
        radius: CATALOG_SAMPLE_RADIUS,
    };
    let nil = select(&cases, Some("nil"));
    println!("{} cases in total, {} on nil", cases.len(), nil.len());
    let outcomes = verify(&cases, &cfg);
    for o in &outcomes {
        let computed = o.computed_degree.map_or("-".to_string(), |d| d.to_string());
        println!(
            "{:5} {:<24} expected {:2} computed {:>2}",
            if o.pass { "ok" } else { "FAIL" },
            o.id,
            o.expected_degree,
            computed
        );
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
}
