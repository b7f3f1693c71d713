//! The WFG toolkit problems 1-9, instantiated with three objectives,
//! k = 4 position parameters, and l = 4 distance parameters (n = 8).
//! Variable i ranges over [0, 2i]; each problem normalizes, applies its
//! transformation chain, and maps through the shape functions with
//! S_j = 2j scaling.

use super::{DimClass, Modality, ProblemInstance, ProblemMeta, Separability};
use std::f64::consts::PI;

const K: usize = 4; // position parameters
const L: usize = 4; // distance parameters
const N: usize = K + L;
const M: usize = 3; // objectives

fn meta(name: &str, separability: Separability, modality: Modality) -> ProblemMeta {
    ProblemMeta {
        name: name.to_string(),
        n: N,
        m: M,
        lower: vec![0.0; N],
        upper: (1..=N).map(|i| 2.0 * i as f64).collect(),
        dim_class: DimClass::High,
        separability,
        modality,
    }
}

// ---- transformation functions -------------------------------------------

fn b_poly(y: f64, alpha: f64) -> f64 {
    y.powf(alpha)
}

fn b_flat(y: f64, a: f64, b: f64, c: f64) -> f64 {
    a + (y - b).floor().min(0.0) * (a * (b - y)) / b
        - (c - y).floor().min(0.0) * ((1.0 - a) * (y - c)) / (1.0 - c)
}

fn b_param(y: f64, u: f64, a: f64, b: f64, c: f64) -> f64 {
    let v = a - (1.0 - 2.0 * u) * ((0.5 - u).floor() + a).abs();
    y.powf(b + (c - b) * v)
}

fn s_linear(y: f64, a: f64) -> f64 {
    (y - a).abs() / ((a - y).floor() + a).abs()
}

fn s_decept(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t1 = (y - a + b).floor() * (1.0 - c + (a - b) / b) / (a - b);
    let t2 = (a + b - y).floor() * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
    1.0 + ((y - a).abs() - b) * (t1 + t2 + 1.0 / b)
}

fn s_multi(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t = (y - c).abs() / (2.0 * ((c - y).floor() + c));
    (1.0 + ((4.0 * a + 2.0) * PI * (0.5 - t)).cos() + 4.0 * b * t * t) / (b + 2.0)
}

fn r_sum(y: &[f64], w: &[f64]) -> f64 {
    let num: f64 = y.iter().zip(w).map(|(a, b)| a * b).sum();
    num / w.iter().sum::<f64>()
}

fn r_nonsep(y: &[f64], a: usize) -> f64 {
    let n = y.len();
    let mut num = 0.0;
    for j in 0..n {
        num += y[j];
        for k in 0..a.saturating_sub(1) {
            num += (y[j] - y[(j + k + 1) % n]).abs();
        }
    }
    let ac = (a as f64 / 2.0).ceil();
    let denom = (n as f64 / a as f64) * ac * (1.0 + 2.0 * a as f64 - 2.0 * ac);
    num / denom
}

// ---- shape functions ------------------------------------------------------

fn shape_linear(x: &[f64], j: usize) -> f64 {
    // j is 1-based objective index
    let mut h: f64 = x[..M - j].iter().product();
    if j > 1 {
        h *= 1.0 - x[M - j];
    }
    h
}

fn shape_convex(x: &[f64], j: usize) -> f64 {
    let mut h: f64 = x[..M - j]
        .iter()
        .map(|&v| 1.0 - (v * PI / 2.0).cos())
        .product();
    if j > 1 {
        h *= 1.0 - (x[M - j] * PI / 2.0).sin();
    }
    h
}

fn shape_concave(x: &[f64], j: usize) -> f64 {
    let mut h: f64 = x[..M - j].iter().map(|&v| (v * PI / 2.0).sin()).product();
    if j > 1 {
        h *= (x[M - j] * PI / 2.0).cos();
    }
    h
}

fn shape_mixed(x1: f64, a: f64, alpha: f64) -> f64 {
    (1.0 - x1 - (2.0 * a * PI * x1 + PI / 2.0).cos() / (2.0 * a * PI)).powf(alpha)
}

fn shape_disc(x1: f64, a: f64, alpha: f64, beta: f64) -> f64 {
    1.0 - x1.powf(alpha) * (a * x1.powf(beta) * PI).cos().powi(2)
}

// ---- shared pipeline pieces ----------------------------------------------

fn normalize_domain(z: &[f64]) -> Vec<f64> {
    z.iter()
        .enumerate()
        .map(|(i, &v)| v / (2.0 * (i + 1) as f64))
        .collect()
}

/// s_linear(0.35) applied to the distance tail (the first transition of
/// WFG1/2/3/6/7/8).
fn shift_tail_linear(y: &mut [f64]) {
    for v in y.iter_mut().skip(K) {
        *v = s_linear(*v, 0.35);
    }
}

/// Weighted or unit-weight reduction to M position values plus one distance
/// value; `weighted` selects WFG1's 2i weights.
fn reduce_sum(y: &[f64], weighted: bool) -> Vec<f64> {
    let group = K / (M - 1);
    let mut t = Vec::with_capacity(M);
    for i in 0..M - 1 {
        let slice = &y[i * group..(i + 1) * group];
        let w: Vec<f64> = if weighted {
            (i * group..(i + 1) * group)
                .map(|idx| 2.0 * (idx + 1) as f64)
                .collect()
        } else {
            vec![1.0; group]
        };
        t.push(r_sum(slice, &w));
    }
    let tail = &y[K..];
    let w: Vec<f64> = if weighted {
        (K..y.len()).map(|idx| 2.0 * (idx + 1) as f64).collect()
    } else {
        vec![1.0; tail.len()]
    };
    t.push(r_sum(tail, &w));
    t
}

/// Non-separable reduction of WFG6/WFG9.
fn reduce_nonsep(y: &[f64]) -> Vec<f64> {
    let group = K / (M - 1);
    let mut t = Vec::with_capacity(M);
    for i in 0..M - 1 {
        t.push(r_nonsep(&y[i * group..(i + 1) * group], group));
    }
    t.push(r_nonsep(&y[K..], y.len() - K));
    t
}

/// Final mapping: degeneracy constants, underlying parameters, shapes.
fn finish(t: &[f64], degenerate: bool, shapes: impl Fn(&[f64], usize) -> f64) -> Vec<f64> {
    let t_m = t[M - 1];
    let mut x = Vec::with_capacity(M);
    for (i, &ti) in t.iter().take(M - 1).enumerate() {
        let a = if degenerate && i > 0 { 0.0 } else { 1.0 };
        x.push(t_m.max(a) * (ti - 0.5) + 0.5);
    }
    x.push(t_m);
    (1..=M)
        .map(|j| x[M - 1] + 2.0 * j as f64 * shapes(&x, j))
        .collect()
}

fn wfg1(z: &[f64]) -> Vec<f64> {
    let mut y = normalize_domain(z);
    shift_tail_linear(&mut y);
    for v in y.iter_mut().skip(K) {
        *v = b_flat(*v, 0.8, 0.75, 0.85);
    }
    for v in y.iter_mut() {
        *v = b_poly(*v, 0.02);
    }
    let t = reduce_sum(&y, true);
    finish(&t, false, |x, j| {
        if j < M {
            shape_convex(x, j)
        } else {
            shape_mixed(x[0], 5.0, 1.0)
        }
    })
}

fn pair_tail_nonsep(y: &[f64]) -> Vec<f64> {
    // couples consecutive distance variables pairwise (l must be even)
    let mut out = y[..K].to_vec();
    let mut i = K;
    while i < y.len() {
        out.push(r_nonsep(&[y[i], y[i + 1]], 2));
        i += 2;
    }
    out
}

fn wfg2(z: &[f64]) -> Vec<f64> {
    let mut y = normalize_domain(z);
    shift_tail_linear(&mut y);
    let y = pair_tail_nonsep(&y);
    let t = reduce_sum(&y, false);
    finish(&t, false, |x, j| {
        if j < M {
            shape_convex(x, j)
        } else {
            shape_disc(x[0], 5.0, 1.0, 1.0)
        }
    })
}

fn wfg3(z: &[f64]) -> Vec<f64> {
    let mut y = normalize_domain(z);
    shift_tail_linear(&mut y);
    let y = pair_tail_nonsep(&y);
    let t = reduce_sum(&y, false);
    finish(&t, true, shape_linear)
}

fn wfg4(z: &[f64]) -> Vec<f64> {
    let mut y = normalize_domain(z);
    for v in y.iter_mut() {
        *v = s_multi(*v, 30.0, 10.0, 0.35);
    }
    let t = reduce_sum(&y, false);
    finish(&t, false, shape_concave)
}

fn wfg5(z: &[f64]) -> Vec<f64> {
    let mut y = normalize_domain(z);
    for v in y.iter_mut() {
        *v = s_decept(*v, 0.35, 0.001, 0.05);
    }
    let t = reduce_sum(&y, false);
    finish(&t, false, shape_concave)
}

fn wfg6(z: &[f64]) -> Vec<f64> {
    let mut y = normalize_domain(z);
    shift_tail_linear(&mut y);
    let t = reduce_nonsep(&y);
    finish(&t, false, shape_concave)
}

fn wfg7(z: &[f64]) -> Vec<f64> {
    let mut y = normalize_domain(z);
    let snapshot = y.clone();
    for i in 0..K {
        let u = r_sum(&snapshot[i + 1..], &vec![1.0; N - i - 1]);
        y[i] = b_param(y[i], u, 0.98 / 49.98, 0.02, 50.0);
    }
    shift_tail_linear(&mut y);
    let t = reduce_sum(&y, false);
    finish(&t, false, shape_concave)
}

fn wfg8(z: &[f64]) -> Vec<f64> {
    let mut y = normalize_domain(z);
    let snapshot = y.clone();
    for i in K..N {
        let u = r_sum(&snapshot[..i], &vec![1.0; i]);
        y[i] = b_param(y[i], u, 0.98 / 49.98, 0.02, 50.0);
    }
    shift_tail_linear(&mut y);
    let t = reduce_sum(&y, false);
    finish(&t, false, shape_concave)
}

fn wfg9(z: &[f64]) -> Vec<f64> {
    let mut y = normalize_domain(z);
    let snapshot = y.clone();
    for i in 0..N - 1 {
        let u = r_sum(&snapshot[i + 1..], &vec![1.0; N - i - 1]);
        y[i] = b_param(y[i], u, 0.98 / 49.98, 0.02, 50.0);
    }
    for (i, v) in y.iter_mut().enumerate() {
        *v = if i < K {
            s_decept(*v, 0.35, 0.001, 0.05)
        } else {
            s_multi(*v, 30.0, 95.0, 0.35)
        };
    }
    let t = reduce_nonsep(&y);
    finish(&t, false, shape_concave)
}

pub(super) fn instances() -> Vec<ProblemInstance> {
    use Modality as Md;
    use Separability as Sp;
    vec![
        ProblemInstance::new(meta("WFG1", Sp::Separable, Md::Unimodal), wfg1),
        ProblemInstance::new(meta("WFG2", Sp::NonSeparable, Md::Mixed), wfg2),
        ProblemInstance::new(meta("WFG3", Sp::NonSeparable, Md::Unimodal), wfg3),
        ProblemInstance::new(meta("WFG4", Sp::Separable, Md::Multimodal), wfg4),
        ProblemInstance::new(meta("WFG5", Sp::Separable, Md::Mixed), wfg5),
        ProblemInstance::new(meta("WFG6", Sp::NonSeparable, Md::Unimodal), wfg6),
        ProblemInstance::new(meta("WFG7", Sp::Separable, Md::Unimodal), wfg7),
        ProblemInstance::new(meta("WFG8", Sp::NonSeparable, Md::Unimodal), wfg8),
        ProblemInstance::new(meta("WFG9", Sp::NonSeparable, Md::Mixed), wfg9),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    /// distance variables at their optimum z_i = 0.35 * 2i collapse the
    /// distance value to zero, putting f on the scaled shape surface
    fn optimal_tail_point(position: [f64; K]) -> Vec<f64> {
        let mut z = Vec::with_capacity(N);
        for (i, p) in position.iter().enumerate() {
            z.push(p * 2.0 * (i + 1) as f64);
        }
        for i in K..N {
            z.push(0.35 * 2.0 * (i + 1) as f64);
        }
        z
    }

    fn sphere_residual(f: &[f64]) -> f64 {
        f.iter()
            .enumerate()
            .map(|(j, &v)| (v / (2.0 * (j + 1) as f64)).powi(2))
            .sum::<f64>()
            - 1.0
    }

    #[test]
    fn concave_variants_reach_the_scaled_sphere() {
        let z = optimal_tail_point([0.3, 0.8, 0.5, 0.1]);
        for (name, f) in [
            ("WFG4", wfg4(&z)),
            ("WFG5", wfg5(&z)),
            ("WFG6", wfg6(&z)),
            ("WFG7", wfg7(&z)),
        ] {
            // s_decept has its optimum at 0.35 but a tiny plateau offset;
            // allow a loose tolerance for WFG5
            let tol = if name == "WFG5" { 1e-2 } else { 1e-9 };
            assert!(
                sphere_residual(&f).abs() < tol,
                "{name}: {f:?} residual {}",
                sphere_residual(&f)
            );
        }
    }

    #[test]
    fn wfg3_linear_front_sums_to_one() {
        let z = optimal_tail_point([0.2, 0.6, 0.9, 0.4]);
        let f = wfg3(&z);
        let s: f64 = f
            .iter()
            .enumerate()
            .map(|(j, &v)| v / (2.0 * (j + 1) as f64))
            .sum();
        assert!((s - 1.0).abs() < 1e-9, "{f:?} sums to {s}");
    }

    #[test]
    fn outputs_within_shape_bounds() {
        // f_j in [0, 2j + eps] for all variants on a grid of points
        type Eval = fn(&[f64]) -> Vec<f64>;
        let funcs: [(&str, Eval); 9] = [
            ("WFG1", wfg1),
            ("WFG2", wfg2),
            ("WFG3", wfg3),
            ("WFG4", wfg4),
            ("WFG5", wfg5),
            ("WFG6", wfg6),
            ("WFG7", wfg7),
            ("WFG8", wfg8),
            ("WFG9", wfg9),
        ];
        for frac in [0.0, 0.17, 0.5, 0.83, 1.0] {
            let z: Vec<f64> = (1..=N).map(|i| frac * 2.0 * i as f64).collect();
            for (name, f) in &funcs {
                let out = f(&z);
                for (j, &v) in out.iter().enumerate() {
                    let hi = 2.0 * (j + 1) as f64 + 1.0;
                    assert!(
                        v.is_finite() && v >= -1e-9 && v <= hi + 1.0,
                        "{name} f{} = {v} at frac {frac}",
                        j + 1
                    );
                }
            }
        }
    }
}
