//! SVG rendering of a root table on the `(m, n/N)` lattice.
//!
//! Output depends only on the table, so identical inputs give identical
//! bytes.

use std::fmt::Write as _;

use crate::roots::{export_lattice, PointKind, RootTable};

const CELL: u64 = 60;
const MARGIN: u64 = 60;
const RADIUS: u64 = 9;

fn fill(kind: PointKind) -> &'static str {
    match kind {
        PointKind::SimplePlus => "#1f1f1f",
        PointKind::SimpleMinus => "#808080",
        PointKind::Nonsimple => "#d9d9d9",
    }
}

pub fn lattice_svg(table: &RootTable) -> String {
    let (mmax, qmax) = table.bounds();
    let n = table.n();
    let width = 2 * MARGIN + mmax * CELL;
    let height = 2 * MARGIN + qmax * CELL;
    let x = |m: u64| MARGIN + m * CELL;
    let y = |q: u64| height - MARGIN - q * CELL;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<title>positive roots, class {}</title>"#, escape(table.label())).unwrap();
    writeln!(s, r##"<rect width="{width}" height="{height}" fill="#ffffff"/>"##).unwrap();
    // axes
    writeln!(
        s,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000000"/>"##,
        x(0),
        y(0),
        x(mmax) + CELL / 2,
        y(0)
    )
    .unwrap();
    writeln!(
        s,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000000"/>"##,
        x(0),
        y(0),
        x(0),
        y(qmax) - CELL / 2
    )
    .unwrap();
    for m in 1..=mmax {
        writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{m}</text>"#, x(m), y(0) + 18).unwrap();
    }
    for q in 1..=qmax {
        writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{q}/{n}</text>"#, x(0) - 8, y(q) + 4).unwrap();
    }
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="start" font-style="italic">m</text>"#,
        x(mmax) + CELL / 2 + 6,
        y(0) + 4
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-style="italic">n/N</text>"#,
        x(0),
        y(qmax) - CELL / 2 - 8
    )
    .unwrap();
    for p in export_lattice(table) {
        writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{RADIUS}" fill="{}" stroke="#000000" class="{}"><title>({}, {}/{}) multiplicity {}</title></circle>"##,
            x(p.m),
            y(p.n),
            fill(p.kind),
            kind_name(p.kind),
            p.m,
            p.n,
            n,
            p.multiplicity
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn kind_name(k: PointKind) -> &'static str {
    match k {
        PointKind::SimpleMinus => "simple-minus",
        PointKind::SimplePlus => "simple-plus",
        PointKind::Nonsimple => "nonsimple",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
