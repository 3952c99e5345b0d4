use std::path::PathBuf;

use qsi::fixtures::{build_fixture, FixtureId};
use qsi::quiver::{BoundQuiver, DimensionVector};
use qsi::rep::RepPoint;
use qsi::si::GeneratorSystem;

fn read(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn shipped_quivers_match_the_builders() {
    let cases = [("ex1_quiver.json", FixtureId::Ex1), ("ex2_quiver.json", FixtureId::Ex2), ("d4.json", FixtureId::Ex2TildeD4)];
    for (file, id) in cases {
        let shipped = BoundQuiver::from_json(&read(file)).unwrap();
        assert_eq!(shipped, build_fixture(id).unwrap().bound, "{file}");
    }
    for file in ["kronecker.json", "a2.json"] {
        let q = BoundQuiver::from_json(&read(file)).unwrap();
        assert!(q.quiver.is_acyclic() && q.relations.is_empty(), "{file}");
    }
}

#[test]
fn shipped_systems_match_the_builders() {
    let cases = [("ex2.json", FixtureId::Ex2), ("ex3_n3.json", FixtureId::Ex3 { n: 3 })];
    for (file, id) in cases {
        let shipped = GeneratorSystem::from_json(&read(file)).unwrap();
        assert_eq!(Some(shipped), build_fixture(id).unwrap().system, "{file}");
    }
}

#[test]
fn shipped_point_lies_on_the_band_variety() {
    let ex1 = build_fixture(FixtureId::Ex1).unwrap();
    let v = RepPoint::from_json(&ex1.bound.quiver, &read("ex1_point.json")).unwrap();
    assert_eq!(v.dim(), &DimensionVector(vec![2]));
    assert!(v.satisfies(&ex1.bound.relations).unwrap());
    assert_eq!(v, ex1.module(&"5/2".parse().unwrap()).unwrap());
}
