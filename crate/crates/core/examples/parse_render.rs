//! Parse expressions, render them in each format, and read them back.

use polyharm::textio::{parse, parse_with, render, render_with, Format};
use polyharm::Notation;

fn main() {
    let f = parse("(x + 2*y)^2 * exp(3*t - 1/2*x) + 1/3").unwrap();
    println!("human:     {}", render(&f, Format::Human));
    let canon = render(&f, Format::Canonical);
    println!("canonical: {canon}");
    assert_eq!(parse(&canon).unwrap(), f);
    let json = render(&f, Format::Json);
    println!("json:      {json}");

    let g = parse_with("i*z^2*zc + exp(2*z + 2*zc)", Notation::Complex).unwrap();
    println!(
        "complex:   {}",
        render_with(&g, Format::Human, Notation::Complex)
    );

    for bad in ["x^^2", "exp(x^2)", "1/0", "sin(x"] {
        match parse(bad) {
            Ok(e) => println!("{bad:>10} -> {}", render(&e, Format::Human)),
            Err(e) => println!("{bad:>10} -> error: {e}"),
        }
    }
}
