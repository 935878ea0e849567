//! Regenerates the JSON fixtures under crates/core/fixtures from the
//! built-in example constructors. Run from the crate directory:
//!
//!     cargo run --example gen_fixtures

use std::path::Path;

use tamebar::diagram::Rep;
use tamebar::examples;
use tamebar::field::Field;
use tamebar::json;
use tamebar::quiver::CircleRep;

fn write(path: &Path, text: String) {
    std::fs::write(path, text + "\n").expect("write fixture");
    println!("wrote {}", path.display());
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).expect("fixtures dir");
    let q = Field::Rationals;

    let rep = json::rep_to_dto(&Rep::Circle(examples::three_circles_rep(q)));
    write(
        &dir.join("three_circles_rep.json"),
        serde_json::to_string_pretty(&rep).unwrap(),
    );

    let rep0 = json::rep_to_dto(&Rep::Circle(examples::three_circles_rep_degree0(q)));
    write(
        &dir.join("three_circles_rep_degree0.json"),
        serde_json::to_string_pretty(&rep0).unwrap(),
    );

    let empty = json::rep_to_dto(&Rep::Circle(CircleRep::identity_rep(q, 1, 0)));
    write(
        &dir.join("empty_rep.json"),
        serde_json::to_string_pretty(&empty).unwrap(),
    );

    for (name, d) in [
        ("three_circles_diagram", examples::three_circles_diagram(q)),
        ("torus_diagram", examples::torus_diagram(q)),
        ("klein_diagram", examples::klein_diagram(q)),
        ("point_diagram", examples::point_diagram(q)),
        ("circle_height_diagram", examples::circle_height_diagram(q)),
    ] {
        let dto = json::diagram_to_dto(&d.expect("example diagram"));
        write(
            &dir.join(format!("{name}.json")),
            serde_json::to_string_pretty(&dto).unwrap(),
        );
    }
}
