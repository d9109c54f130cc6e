use std::fmt::Write;

use crate::slice::EmTower;

const COLUMN_WIDTH: usize = 170;
const LINE_HEIGHT: usize = 18;
const MARGIN: usize = 40;
const HEADER: usize = 60;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// An SVG 1.1 chart of a tower: one column per nonzero slice degree, each
/// listing the slice levels at the conjugacy-class representatives as
/// `H<id>: <invariant factors>`. The layout depends only on the tower.
pub fn render_chart(t: &EmTower, title: &str) -> String {
    let summary = t.summary();
    let rows = summary
        .values()
        .map(|levels| levels.len())
        .max()
        .unwrap_or(0);
    let columns = summary.len();
    let width = 2 * MARGIN + COLUMN_WIDTH * columns.max(1);
    let height = HEADER + MARGIN + LINE_HEIGHT * (rows + 2);
    let axis_y = HEADER + LINE_HEIGHT / 2;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN}" y="{}" font-family="monospace" font-size="14">{}</text>"#,
        MARGIN / 2 + 6,
        escape(title)
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="black"/>"#,
        width - MARGIN
    );
    for (i, (degree, levels)) in summary.iter().enumerate() {
        let x = MARGIN + COLUMN_WIDTH * i;
        let _ = writeln!(svg, r#"<g class="slice" data-degree="{degree}">"#);
        let _ = writeln!(
            svg,
            r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="black"/>"#,
            axis_y - 5,
            axis_y + 5
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="12">{degree}</text>"#,
            x + 4,
            axis_y - 8
        );
        for (j, (h, inv)) in levels.iter().enumerate() {
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}" font-family="monospace" font-size="12">H{h}: {}</text>"#,
                x + 4,
                axis_y + LINE_HEIGHT * (j + 2),
                escape(&inv.to_string())
            );
        }
        let _ = writeln!(svg, "</g>");
    }
    let _ = writeln!(svg, "</svg>");
    svg
}
