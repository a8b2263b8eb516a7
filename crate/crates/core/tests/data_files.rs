use std::path::Path;

use kahler_higgs::algebra::{builtin_fixture_names, export_json, fixture, load_algebra};

#[test]
fn data_directory_matches_builtins() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    for name in builtin_fixture_names() {
        let loaded = load_algebra(dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(
            export_json(&loaded),
            export_json(&fixture(name).unwrap()),
            "{name}"
        );
    }
}
