//! Rendering of a fixed crossing instance: a blue box with the red path
//! entering both side points from the left. Set UPDATE_GOLDEN=1 to rewrite
//! the expected file after an intended change.

use std::path::PathBuf;

use jordan_grid::instance::{Instance, Role};
use jordan_grid::parity::find_intersection_set;
use jordan_grid::render::{render_svg, RenderSpec};
use jordan_grid::sequence::find_intersection_seq;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn load() -> Instance {
    Instance::parse(&std::fs::read_to_string(fixture("redpath.json")).unwrap()).unwrap()
}

#[test]
fn redpath_fixture_is_a_crossing_instance() {
    let inst = load();
    assert_eq!(inst.validate().unwrap(), Role::Jct);
    let sides = inst.side_pair().unwrap().unwrap();
    let w = find_intersection_seq(&inst.blue_seq().unwrap(), &inst.red_seq().unwrap(), &sides).unwrap();
    assert_eq!((w.point.x, w.point.y), (1, 3));
}

#[test]
fn redpath_matches_golden() {
    let inst = load();
    let sides = inst.side_pair().unwrap().unwrap();
    let w = find_intersection_set(&inst.blue_set().unwrap(), &inst.red_set().unwrap(), &sides).unwrap();
    let svg = render_svg(&inst, &RenderSpec::default(), &[w.point]).unwrap();
    // rendering twice gives the same bytes
    assert_eq!(svg, render_svg(&inst, &RenderSpec::default(), &[w.point]).unwrap());
    let golden = fixture("redpath.svg");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&golden, &svg).unwrap();
    }
    assert_eq!(svg, std::fs::read_to_string(&golden).unwrap());
}

#[test]
fn witness_marker_sits_on_the_witness() {
    let inst = load();
    let spec = RenderSpec::default();
    let sides = inst.side_pair().unwrap().unwrap();
    let w = find_intersection_set(&inst.blue_set().unwrap(), &inst.red_set().unwrap(), &sides).unwrap();
    let svg = render_svg(&inst, &spec, &[w.point]).unwrap();
    let cx = spec.margin + w.point.x * spec.cell;
    let cy = spec.margin + (inst.n - w.point.y) * spec.cell;
    let marker = format!(r#"<circle cx="{cx}" cy="{cy}" r="{}"/>"#, spec.witness_radius);
    let group = &svg[svg.find(r#"id="witnesses""#).unwrap()..];
    assert!(group.contains(&marker), "no marker at ({cx}, {cy})");
    assert!(group.contains("(1, 3)"));
}
