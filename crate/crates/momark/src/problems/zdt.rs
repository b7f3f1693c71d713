//! The ZDT two-objective suite (functions 1-4 and 6).

use super::{DimClass, Modality, ProblemInstance, ProblemMeta, Separability};
use std::f64::consts::PI;

fn meta(name: &str, lower: Vec<f64>, upper: Vec<f64>, modality: Modality) -> ProblemMeta {
    ProblemMeta {
        name: name.to_string(),
        n: lower.len(),
        m: 2,
        lower,
        upper,
        dim_class: DimClass::High,
        separability: Separability::Separable,
        modality,
    }
}

fn tail_mean(x: &[f64]) -> f64 {
    x.iter().skip(1).sum::<f64>() / (x.len() as f64 - 1.0)
}

fn zdt1(x: &[f64]) -> Vec<f64> {
    let f1 = x[0];
    let g = 1.0 + 9.0 * tail_mean(x);
    vec![f1, g * (1.0 - (f1 / g).sqrt())]
}

fn zdt2(x: &[f64]) -> Vec<f64> {
    let f1 = x[0];
    let g = 1.0 + 9.0 * tail_mean(x);
    vec![f1, g * (1.0 - (f1 / g).powi(2))]
}

fn zdt3(x: &[f64]) -> Vec<f64> {
    let f1 = x[0];
    let g = 1.0 + 9.0 * tail_mean(x);
    let h = 1.0 - (f1 / g).sqrt() - (f1 / g) * (10.0 * PI * f1).sin();
    vec![f1, g * h]
}

fn zdt4(x: &[f64]) -> Vec<f64> {
    let f1 = x[0];
    let g = 1.0
        + 10.0 * (x.len() as f64 - 1.0)
        + x.iter()
            .skip(1)
            .map(|&v| v * v - 10.0 * (4.0 * PI * v).cos())
            .sum::<f64>();
    vec![f1, g * (1.0 - (f1 / g).sqrt())]
}

fn zdt6(x: &[f64]) -> Vec<f64> {
    let f1 = 1.0 - (-4.0 * x[0]).exp() * (6.0 * PI * x[0]).sin().powi(6);
    let g = 1.0 + 9.0 * tail_mean(x).powf(0.25);
    vec![f1, g * (1.0 - (f1 / g).powi(2))]
}

pub(super) fn instances() -> Vec<ProblemInstance> {
    let mut zdt4_lower = vec![-5.0; 10];
    let mut zdt4_upper = vec![5.0; 10];
    zdt4_lower[0] = 0.0;
    zdt4_upper[0] = 1.0;
    vec![
        ProblemInstance::new(
            meta("ZDT1", vec![0.0; 30], vec![1.0; 30], Modality::Unimodal),
            zdt1,
        ),
        ProblemInstance::new(
            meta("ZDT2", vec![0.0; 30], vec![1.0; 30], Modality::Unimodal),
            zdt2,
        ),
        ProblemInstance::new(
            meta("ZDT3", vec![0.0; 30], vec![1.0; 30], Modality::Mixed),
            zdt3,
        ),
        ProblemInstance::new(meta("ZDT4", zdt4_lower, zdt4_upper, Modality::Mixed), zdt4),
        ProblemInstance::new(
            meta("ZDT6", vec![0.0; 10], vec![1.0; 10], Modality::Multimodal),
            zdt6,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zdt1_hand_points() {
        // f1 = x1, g = 1 + 9*sum(tail)/(n-1), f2 = g(1 - sqrt(f1/g))
        let zero = vec![0.0; 30];
        assert_eq!(zdt1(&zero), vec![0.0, 1.0]);
        let mut x = vec![0.0; 30];
        x[0] = 1.0;
        assert_eq!(zdt1(&x), vec![1.0, 0.0]);
        // off-front point: tail all ones makes g = 10
        let ones = vec![1.0; 30];
        let f = zdt1(&ones);
        assert_eq!(f[0], 1.0);
        assert!((f[1] - 10.0 * (1.0 - (0.1f64).sqrt())).abs() < 1e-12);
    }

    #[test]
    fn zdt4_front_at_zero_tail() {
        let mut x = vec![0.0; 10];
        x[0] = 0.25;
        let f = zdt4(&x);
        assert!((f[1] - (1.0 - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn zdt6_front_shape() {
        // tail zero: g = 1, f2 = 1 - f1^2
        let mut x = vec![0.0; 10];
        x[0] = 0.25;
        let f = zdt6(&x);
        assert!((f[1] - (1.0 - f[0] * f[0])).abs() < 1e-12);
    }
}
