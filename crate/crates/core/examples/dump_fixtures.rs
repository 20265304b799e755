//! Writes the fixture algebras and morphisms as JSON documents.
use linf_core::fixtures;
use linf_core::io::{to_json, AlgebraDoc, MorphismDoc};

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data".into());
    std::fs::create_dir_all(&dir).unwrap();
    for a in fixtures::algebras() {
        std::fs::write(format!("{dir}/{}.json", a.name()), to_json(&AlgebraDoc::from_algebra(&a))).unwrap();
    }
    let xyz = std::sync::Arc::new(fixtures::xyz());
    let morphisms = [
        ("zero_map", fixtures::zero_map()),
        ("weight_two_defect", fixtures::weight_two_defect()),
        ("xyz_acyclic_extension", fixtures::acyclic_extension(xyz.clone())),
        ("xyz_quadratic", fixtures::quadratic_iso(xyz.clone(), &[(&["x", "x"], &[(1, "z")])])),
    ];
    for (name, u) in morphisms {
        std::fs::write(format!("{dir}/{name}.json"), to_json(&MorphismDoc::from_morphism(&u))).unwrap();
    }
}
