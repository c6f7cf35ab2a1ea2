//! SVG drawings of instances. The curve is solid, the path dashed.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::{Edge, GridPoint};
use crate::instance::{Instance, Role};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    /// Pixels between neighbouring grid points.
    pub cell: u32,
    pub margin: u32,
    pub blue_stroke: String,
    pub red_stroke: String,
    pub stroke_width: f64,
    pub red_dash: String,
    pub dot_radius: f64,
    pub witness_radius: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            cell: 24,
            margin: 16,
            blue_stroke: "#1f4fd1".into(),
            red_stroke: "#d12a1f".into(),
            stroke_width: 3.0,
            red_dash: "6 4".into(),
            dot_radius: 1.5,
            witness_radius: 6.0,
        }
    }
}

struct Canvas<'a> {
    spec: &'a RenderSpec,
    n: u32,
}

impl Canvas<'_> {
    fn x(&self, p: GridPoint) -> u32 {
        self.spec.margin + p.x * self.spec.cell
    }

    // svg y grows downwards
    fn y(&self, p: GridPoint) -> u32 {
        self.spec.margin + (self.n - p.y) * self.spec.cell
    }

    fn size(&self) -> u32 {
        2 * self.spec.margin + self.n * self.spec.cell
    }
}

fn sorted(mut edges: Vec<Edge>) -> Vec<Edge> {
    edges.sort_by_key(|e| (e.a(), e.b()));
    edges
}

/// Draws grid dots, the blue edges solid, the red edges dashed, the side
/// pair and the given witness points. Output depends only on the inputs.
pub fn render_svg(inst: &Instance, spec: &RenderSpec, witnesses: &[GridPoint]) -> Result<String> {
    let c = Canvas { spec, n: inst.n };
    let size = c.size();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(s, r#"<rect width="{size}" height="{size}" fill="white"/>"#);
    let _ = writeln!(s, r##"<g id="grid" fill="#888">"##);
    for y in 0..=inst.n {
        for x in 0..=inst.n {
            let p = GridPoint::new(x, y);
            let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{}"/>"#, c.x(p), c.y(p), spec.dot_radius);
        }
    }
    s.push_str("</g>\n");
    let draw = |s: &mut String, id: &str, edges: Vec<Edge>, stroke: &str, dash: Option<&str>| {
        let dash = dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
        let _ = writeln!(
            s,
            r#"<g id="{id}" stroke="{stroke}" stroke-width="{}" stroke-linecap="round"{dash}>"#,
            spec.stroke_width
        );
        for e in sorted(edges) {
            let _ = writeln!(
                s,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                c.x(e.a()),
                c.y(e.a()),
                c.x(e.b()),
                c.y(e.b())
            );
        }
        s.push_str("</g>\n");
    };
    if inst.role() != Role::Empty {
        if inst.blue.is_some() {
            draw(&mut s, "blue", inst.blue_set()?.iter().copied().collect(), &spec.blue_stroke, None);
        }
        if inst.red.is_some() {
            draw(&mut s, "red", inst.red_set()?.iter().copied().collect(), &spec.red_stroke, Some(&spec.red_dash));
        }
    }
    if let Some(sides) = inst.side_pair()? {
        s.push_str("<g id=\"sides\" font-family=\"monospace\" font-size=\"11\">\n");
        for (label, p) in [("p1", sides.p1), ("p2", sides.p2)] {
            let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="3" fill="black"/>"#, c.x(p), c.y(p));
            let _ = writeln!(s, r#"<text x="{}" y="{}">{label}</text>"#, c.x(p) + 5, c.y(p) - 5);
        }
        s.push_str("</g>\n");
    }
    if !witnesses.is_empty() {
        let mut ws = witnesses.to_vec();
        ws.sort();
        ws.dedup();
        s.push_str("<g id=\"witnesses\" fill=\"none\" stroke=\"black\" stroke-width=\"2\" font-family=\"monospace\" font-size=\"11\">\n");
        for p in ws {
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="{}"/><text x="{}" y="{}" stroke="none" fill="black">({}, {})</text>"#,
                c.x(p),
                c.y(p),
                spec.witness_radius,
                c.x(p) + 8,
                c.y(p) + 14,
                p.x,
                p.y
            );
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Form;

    #[test]
    fn empty_payload_is_grid_only() {
        let svg = render_svg(&Instance::empty(2, Form::Set), &RenderSpec::default(), &[]).unwrap();
        assert_eq!(svg.matches("<circle").count(), 9);
        assert!(!svg.contains("<line"));
    }

    #[test]
    fn witness_marker_position() {
        let spec = RenderSpec::default();
        let svg = render_svg(&Instance::empty(4, Form::Seq), &spec, &[GridPoint::new(1, 3)]).unwrap();
        // x = 16 + 24, y = 16 + (4 - 3) * 24
        assert!(svg.contains(r#"<circle cx="40" cy="40" r="6"/>"#));
    }
}
