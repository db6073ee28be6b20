use std::path::Path;

use qcoh::spaces::{quantum_product_table, read_presentation, write_presentation, Space};

const FIXTURES: &[(&str, &str)] = &[
    ("cpn2.pres", "cpn:2"),
    ("cpn3.pres", "cpn:3"),
    ("gr24.pres", "gr:2:4"),
    ("flag3.pres", "flag3"),
    ("hirzebruch0.pres", "hirzebruch:0"),
    ("hirzebruch1.pres", "hirzebruch:1"),
];

fn load(name: &str) -> Space {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    read_presentation(&text).unwrap().into_space().unwrap()
}

#[test]
fn fixture_files_match_constructors() {
    for (file, id) in FIXTURES {
        let from_file = load(file);
        let built = Space::parse_and_build(id, true).unwrap();
        assert_eq!(from_file.presentation.relations(), built.presentation.relations(), "{id}");
        assert_eq!(from_file.descriptor.complex_dimension, built.descriptor.complex_dimension);
        assert_eq!(from_file.descriptor.c1_pairing, built.descriptor.c1_pairing, "{id}");
        let labels = |s: &Space| s.basis.elements.iter().map(|e| e.label.clone()).collect::<Vec<_>>();
        assert_eq!(labels(&from_file), labels(&built));
        assert_eq!(from_file.chart.is_some(), built.chart.is_some(), "{id}");
    }
}

#[test]
fn fixture_products_match_constructors() {
    for (file, id) in FIXTURES {
        let a = quantum_product_table(&load(file).expander().unwrap()).unwrap();
        let b = quantum_product_table(&Space::parse_and_build(id, true).unwrap().expander().unwrap()).unwrap();
        for ((i, j, x), (_, _, y)) in a.entries.iter().zip(&b.entries) {
            assert_eq!(x.coeffs, y.coeffs, "{id} {i}*{j}");
        }
    }
}

#[test]
fn writer_is_stable() {
    for (file, _) in FIXTURES {
        let s = load(file);
        let again = read_presentation(&write_presentation(&s)).unwrap().into_space().unwrap();
        assert_eq!(write_presentation(&again), write_presentation(&s), "{file}");
    }
}
