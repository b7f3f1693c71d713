//! Minimal hand-rolled SVG emission for data-profile plots: log-scaled x,
//! linear y, one step polyline per solver, an x glyph at each solver's
//! budget-exhaustion abscissa, and a legend.

use super::{DataProfile, ProfileError};
use std::io::Write;

pub const WIDTH: f64 = 720.0;
pub const HEIGHT: f64 = 480.0;
pub const MARGIN_LEFT: f64 = 64.0;
pub const MARGIN_RIGHT: f64 = 24.0;
pub const MARGIN_TOP: f64 = 40.0;
pub const MARGIN_BOTTOM: f64 = 48.0;

const PALETTE: [&str; 8] = [
    "#1b6ca8", "#d1495b", "#2e933c", "#8c5383", "#e08d18", "#3bb2b8", "#6b4e16", "#555555",
];

/// Horizontal pixel for `alpha` on the log axis spanning `[a_min, a_max]`.
pub fn x_position(alpha: f64, a_min: f64, a_max: f64) -> f64 {
    let span = a_max.log10() - a_min.log10();
    MARGIN_LEFT + (alpha.log10() - a_min.log10()) / span * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
}

/// Vertical pixel for a fraction in [0, 1].
pub fn y_position(fraction: f64) -> f64 {
    MARGIN_TOP + (1.0 - fraction) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
}

/// The plotted step value at `alpha`: the fraction at the last abscissa not
/// exceeding it.
pub fn step_value(profile: &DataProfile, alpha: f64) -> f64 {
    let idx = profile.alphas.partition_point(|&a| a <= alpha);
    if idx == 0 {
        0.0
    } else {
        profile.fractions[idx - 1]
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
        .replace('\'', "&apos;")
}

fn slug(text: &str) -> String {
    text.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

/// Writes one SVG document with every profile overlaid.
pub fn emit_svg(
    out: &mut impl Write,
    profiles: &[DataProfile],
    title: &str,
) -> Result<(), ProfileError> {
    let first = profiles.first().ok_or(ProfileError::EmptyKey)?;
    let a_min = *first.alphas.first().ok_or(ProfileError::BadAlphas)?;
    let a_max = *first.alphas.last().ok_or(ProfileError::BadAlphas)?;
    if a_min <= 0.0 || a_max <= a_min {
        return Err(ProfileError::BadAlphas);
    }
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )?;
    writeln!(out, "<title>{}</title>", escape(title))?;
    writeln!(
        out,
        r##"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##
    )?;
    writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        fmt((MARGIN_LEFT + WIDTH - MARGIN_RIGHT) / 2.0),
        escape(title)
    )?;

    // frame and gridlines at decades / fraction tenths
    let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let (y0, y1) = (y_position(0.0), y_position(1.0));
    let mut decade = a_min.log10().ceil() as i32;
    while 10f64.powi(decade) <= a_max * (1.0 + 1e-12) {
        let x = x_position(10f64.powi(decade), a_min, a_max);
        writeln!(
            out,
            r##"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#dddddd" stroke-width="1"/>"##,
            fmt(x),
            fmt(y1),
            fmt(y0)
        )?;
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">1e{}</text>"#,
            fmt(x),
            fmt(y0 + 18.0),
            decade
        )?;
        decade += 1;
    }
    for tick in 0..=5 {
        let f = tick as f64 / 5.0;
        let y = y_position(f);
        writeln!(
            out,
            r##"<line x1="{0}" y1="{2}" x2="{1}" y2="{2}" stroke="#dddddd" stroke-width="1"/>"##,
            fmt(x0),
            fmt(x1),
            fmt(y)
        )?;
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            fmt(x0 - 6.0),
            fmt(y + 4.0),
            f
        )?;
    }
    writeln!(
        out,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#333333" stroke-width="1"/>"##,
        fmt(x0),
        fmt(y1),
        fmt(x1 - x0),
        fmt(y0 - y1)
    )?;
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">evaluations per dimension</text>"#,
        fmt((x0 + x1) / 2.0),
        fmt(HEIGHT - 10.0)
    )?;
    writeln!(
        out,
        r#"<text x="16" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 16 {})">fraction of targets</text>"#,
        fmt((y0 + y1) / 2.0),
        fmt((y0 + y1) / 2.0)
    )?;

    for (i, profile) in profiles.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let id = slug(&profile.solver);
        // step rendering: hold the fraction until the next abscissa
        let mut points = String::new();
        let mut prev_y = y_position(0.0);
        for (a, f) in profile.alphas.iter().zip(&profile.fractions) {
            let x = x_position(*a, a_min, a_max);
            let y = y_position(*f);
            points.push_str(&format!("{},{} ", fmt(x), fmt(prev_y)));
            points.push_str(&format!("{},{} ", fmt(x), fmt(y)));
            prev_y = y;
        }
        writeln!(
            out,
            r#"<polyline id="curve-{id}" fill="none" stroke="{color}" stroke-width="1.6" points="{}"/>"#,
            points.trim_end()
        )?;
        // budget-exhaustion glyph on the curve
        let mx = x_position(profile.max_alpha_marker.min(a_max).max(a_min), a_min, a_max);
        let my = y_position(step_value(profile, profile.max_alpha_marker));
        writeln!(
            out,
            r#"<path id="marker-{id}" d="M {} {} L {} {} M {} {} L {} {}" stroke="{color}" stroke-width="2" fill="none"/>"#,
            fmt(mx - 5.0),
            fmt(my - 5.0),
            fmt(mx + 5.0),
            fmt(my + 5.0),
            fmt(mx - 5.0),
            fmt(my + 5.0),
            fmt(mx + 5.0),
            fmt(my - 5.0)
        )?;
        // legend
        let ly = MARGIN_TOP + 16.0 * i as f64 + 12.0;
        writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="3"/>"#,
            fmt(x0 + 10.0),
            fmt(ly - 4.0),
            fmt(x0 + 34.0),
            fmt(ly - 4.0)
        )?;
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
            fmt(x0 + 40.0),
            fmt(ly),
            escape(&profile.solver)
        )?;
    }
    writeln!(out, "</svg>")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_profiles() -> Vec<DataProfile> {
        vec![
            DataProfile {
                solver: "alpha".into(),
                alphas: vec![1.0, 10.0, 100.0, 1000.0],
                fractions: vec![0.0, 0.25, 0.5, 0.5],
                max_alpha_marker: 100.0,
            },
            DataProfile {
                solver: "beta".into(),
                alphas: vec![1.0, 10.0, 100.0, 1000.0],
                fractions: vec![0.0, 0.5, 0.75, 1.0],
                max_alpha_marker: 100.0,
            },
        ]
    }

    #[test]
    fn polyline_per_solver_and_marker_coordinates() {
        let profiles = sample_profiles();
        let mut buf = Vec::new();
        emit_svg(&mut buf, &profiles, "panel all").unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("<polyline").count(), 2);
        assert!(text.contains(r#"id="curve-alpha""#));
        assert!(text.contains(r#"id="marker-beta""#));
        // the marker x must sit exactly where the transform places alpha=100
        let mx = x_position(100.0, 1.0, 1000.0);
        let my = y_position(0.5);
        let expected = format!(
            r#"id="marker-alpha" d="M {} {}"#,
            fmt(mx - 5.0),
            fmt(my - 5.0)
        );
        assert!(text.contains(&expected), "missing {expected}");
    }

    #[test]
    fn step_lookup() {
        let p = &sample_profiles()[0];
        assert_eq!(step_value(p, 0.5), 0.0);
        assert_eq!(step_value(p, 1.0), 0.0);
        assert_eq!(step_value(p, 10.0), 0.25);
        assert_eq!(step_value(p, 99.0), 0.25);
        assert_eq!(step_value(p, 5000.0), 0.5);
    }

    #[test]
    fn escapes_xml_text() {
        let mut profiles = sample_profiles();
        profiles.truncate(1);
        let mut buf = Vec::new();
        emit_svg(&mut buf, &profiles, "a < b & \"c\"").unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("a &lt; b &amp; &quot;c&quot;"));
    }
}
