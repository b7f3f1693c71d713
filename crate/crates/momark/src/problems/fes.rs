//! The FES problems: shared component sums over shifted targets in [0,1]^10,
//! combined into two, three, and four objectives.

use super::{DimClass, Modality, ProblemInstance, ProblemMeta, Separability};
use std::f64::consts::PI;

fn meta(name: &str, m: usize) -> ProblemMeta {
    ProblemMeta {
        name: name.to_string(),
        n: 10,
        m,
        lower: vec![0.0; 10],
        upper: vec![1.0; 10],
        dim_class: DimClass::High,
        separability: Separability::Separable,
        modality: Modality::Unimodal,
    }
}

// component sums; i is 1-based in the published formulas
fn sum_exp(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(idx, &v)| {
            let i = (idx + 1) as f64;
            (v - ((i / n).powi(2)).exp() / 3.0).abs().sqrt()
        })
        .sum()
}

fn sum_cos_sq(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(idx, &v)| {
            let i = (idx + 1) as f64;
            (v - 0.5 * (10.0 * PI * i / n).cos() - 0.5).powi(2)
        })
        .sum()
}

fn sum_sincos(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(idx, &v)| {
            let t = idx as f64; // i - 1
            (v - t.sin().powi(2) * t.cos().powi(2)).abs().sqrt()
        })
        .sum()
}

fn sum_quartercos(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(idx, &v)| {
            let t = idx as f64; // i - 1
            (v - 0.25 * t.cos() * (2.0 * t).cos() - 0.5).abs().sqrt()
        })
        .sum()
}

fn fes1(x: &[f64]) -> Vec<f64> {
    vec![sum_exp(x), sum_cos_sq(x)]
}

fn fes2(x: &[f64]) -> Vec<f64> {
    vec![sum_cos_sq(x), sum_sincos(x), sum_quartercos(x)]
}

fn fes3(x: &[f64]) -> Vec<f64> {
    vec![sum_exp(x), sum_sincos(x), sum_quartercos(x), sum_cos_sq(x)]
}

pub(super) fn instances() -> Vec<ProblemInstance> {
    vec![
        ProblemInstance::new(meta("FES1", 2), fes1),
        ProblemInstance::new(meta("FES2", 3), fes2),
        ProblemInstance::new(meta("FES3", 4), fes3),
    ]
}
