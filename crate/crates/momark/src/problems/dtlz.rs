//! The DTLZ suite as instantiated by the source collection: DTLZ1-DTLZ6 at
//! three objectives plus the two-variable DTLZ1n2/DTLZ2n2 reductions.
//!
//! DTLZ6 here is the disconnected-front problem (g linear in the distance
//! variables, 2^{m-1} front patches), matching the collection's numbering
//! and its n = 22 instantiation.

use super::{DimClass, Modality, ProblemInstance, ProblemMeta, Separability};
use std::f64::consts::PI;

fn meta(name: &str, n: usize, m: usize, dim_class: DimClass, modality: Modality) -> ProblemMeta {
    ProblemMeta {
        name: name.to_string(),
        n,
        m,
        lower: vec![0.0; n],
        upper: vec![1.0; n],
        dim_class,
        separability: Separability::Mixed,
        modality,
    }
}

/// Rastrigin-style distance function of DTLZ1/DTLZ3.
fn g_multimodal(tail: &[f64]) -> f64 {
    100.0
        * (tail.len() as f64
            + tail
                .iter()
                .map(|&v| (v - 0.5).powi(2) - (20.0 * PI * (v - 0.5)).cos())
                .sum::<f64>())
}

fn g_sphere(tail: &[f64]) -> f64 {
    tail.iter().map(|&v| (v - 0.5).powi(2)).sum()
}

fn linear_front(position: &[f64], g: f64) -> Vec<f64> {
    let m = position.len() + 1;
    (0..m)
        .map(|j| {
            let mut f = 0.5 * (1.0 + g);
            for &p in &position[..m - 1 - j] {
                f *= p;
            }
            if j > 0 {
                f *= 1.0 - position[m - 1 - j];
            }
            f
        })
        .collect()
}

fn spherical_front(angles: &[f64], g: f64) -> Vec<f64> {
    let m = angles.len() + 1;
    (0..m)
        .map(|j| {
            let mut f = 1.0 + g;
            for &a in &angles[..m - 1 - j] {
                f *= a.cos();
            }
            if j > 0 {
                f *= angles[m - 1 - j].sin();
            }
            f
        })
        .collect()
}

fn dtlz1_generic(x: &[f64], m: usize) -> Vec<f64> {
    let g = g_multimodal(&x[m - 1..]);
    linear_front(&x[..m - 1], g)
}

fn dtlz2_generic(x: &[f64], m: usize) -> Vec<f64> {
    let g = g_sphere(&x[m - 1..]);
    let angles: Vec<f64> = x[..m - 1].iter().map(|&v| v * PI / 2.0).collect();
    spherical_front(&angles, g)
}

fn dtlz1(x: &[f64]) -> Vec<f64> {
    dtlz1_generic(x, 3)
}

fn dtlz1n2(x: &[f64]) -> Vec<f64> {
    dtlz1_generic(x, 2)
}

fn dtlz2(x: &[f64]) -> Vec<f64> {
    dtlz2_generic(x, 3)
}

fn dtlz2n2(x: &[f64]) -> Vec<f64> {
    dtlz2_generic(x, 2)
}

fn dtlz3(x: &[f64]) -> Vec<f64> {
    let m = 3;
    let g = g_multimodal(&x[m - 1..]);
    let angles: Vec<f64> = x[..m - 1].iter().map(|&v| v * PI / 2.0).collect();
    spherical_front(&angles, g)
}

fn dtlz4(x: &[f64]) -> Vec<f64> {
    let m = 3;
    let g = g_sphere(&x[m - 1..]);
    let angles: Vec<f64> = x[..m - 1].iter().map(|&v| v.powi(100) * PI / 2.0).collect();
    spherical_front(&angles, g)
}

fn dtlz5(x: &[f64]) -> Vec<f64> {
    let m = 3;
    let g = g_sphere(&x[m - 1..]);
    let mut angles = Vec::with_capacity(m - 1);
    angles.push(x[0] * PI / 2.0);
    for &v in &x[1..m - 1] {
        angles.push(PI / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * v));
    }
    spherical_front(&angles, g)
}

fn dtlz6(x: &[f64]) -> Vec<f64> {
    let m = 3;
    let tail = &x[m - 1..];
    let g = 1.0 + 9.0 / tail.len() as f64 * tail.iter().sum::<f64>();
    let mut f: Vec<f64> = x[..m - 1].to_vec();
    let h = m as f64
        - f.iter()
            .map(|&fi| fi / (1.0 + g) * (1.0 + (3.0 * PI * fi).sin()))
            .sum::<f64>();
    f.push((1.0 + g) * h);
    f
}

pub(super) fn instances() -> Vec<ProblemInstance> {
    use DimClass::*;
    use Modality::*;
    vec![
        ProblemInstance::new(meta("DTLZ1", 7, 3, High, Multimodal), dtlz1),
        ProblemInstance::new(meta("DTLZ1n2", 2, 2, Low, Multimodal), dtlz1n2),
        ProblemInstance::new(meta("DTLZ2", 12, 3, High, Unimodal), dtlz2),
        ProblemInstance::new(meta("DTLZ2n2", 2, 2, Low, Unimodal), dtlz2n2),
        ProblemInstance::new(meta("DTLZ3", 12, 3, High, Multimodal), dtlz3),
        ProblemInstance::new(meta("DTLZ4", 12, 3, High, Unimodal), dtlz4),
        ProblemInstance::new(meta("DTLZ5", 12, 3, High, Unimodal), dtlz5),
        ProblemInstance::new(meta("DTLZ6", 22, 3, High, Unimodal), dtlz6),
    ]
}
