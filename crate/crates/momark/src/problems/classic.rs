//! The miscellaneous two- and three-objective problems of the core set:
//! BK1, DG01, DPAM1, Far1, Fonseca, Kursawe, IKK1, IM1, LRS1, MHHM1/2,
//! MLF1/2, MOP1-MOP7, QV1, Sch1, SK1/2, SP1, SSFYY1/2, VU1/2, and ZLT1.
//! Formulas follow the published sources; maximization problems are stated
//! in negated (minimization) form as in the source collection.

use super::{DimClass, Modality, ProblemInstance, ProblemMeta, Separability};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;
use std::sync::OnceLock;

fn meta(
    name: &str,
    lower: Vec<f64>,
    upper: Vec<f64>,
    m: usize,
    dim_class: DimClass,
    separability: Separability,
    modality: Modality,
) -> ProblemMeta {
    ProblemMeta {
        name: name.to_string(),
        n: lower.len(),
        m,
        lower,
        upper,
        dim_class,
        separability,
        modality,
    }
}

fn uniform(value: f64, n: usize) -> Vec<f64> {
    vec![value; n]
}

fn bk1(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    vec![
        x1 * x1 + x2 * x2,
        (x1 - 5.0) * (x1 - 5.0) + (x2 - 5.0) * (x2 - 5.0),
    ]
}

fn dg01(x: &[f64]) -> Vec<f64> {
    vec![x[0].sin(), (x[0] + 0.7).sin()]
}

/// Fixed orthonormal rotation for DPAM1. The source specifies a randomly
/// generated orthonormal matrix; this one is drawn once from a seeded
/// generator so every build evaluates the same problem.
fn dpam1_rotation() -> &'static Vec<Vec<f64>> {
    static ROTATION: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    ROTATION.get_or_init(|| {
        let n = 10;
        let mut rng = ChaCha8Rng::seed_from_u64(0x4450_414d);
        let mut rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.sample(StandardNormal)).collect())
            .collect();
        // Gram-Schmidt
        for i in 0..n {
            for j in 0..i {
                let prev = rows[j].clone();
                let dot: f64 = rows[i].iter().zip(&prev).map(|(a, b)| a * b).sum();
                for (a, b) in rows[i].iter_mut().zip(&prev) {
                    *a -= dot * b;
                }
            }
            let norm: f64 = rows[i].iter().map(|v| v * v).sum::<f64>().sqrt();
            for v in rows[i].iter_mut() {
                *v /= norm;
            }
        }
        rows
    })
}

fn dpam1(x: &[f64]) -> Vec<f64> {
    let a = dpam1_rotation();
    let n = x.len();
    let y: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| a[i][j] * x[j]).sum())
        .collect();
    let g = 1.0
        + 10.0 * (n as f64 - 1.0)
        + y.iter()
            .skip(1)
            .map(|&v| v * v - 10.0 * (4.0 * PI * v).cos())
            .sum::<f64>();
    vec![y[0], g * (-y[0] / g).exp()]
}

fn far1(x: &[f64]) -> Vec<f64> {
    let (a, b) = (x[0], x[1]);
    let g = |s: f64, cx: f64, cy: f64| (s * (-(a - cx).powi(2) - (b - cy).powi(2))).exp();
    let f1 = -2.0 * g(15.0, 0.1, 0.0) - g(20.0, 0.6, 0.6)
        + g(20.0, -0.6, 0.6)
        + g(20.0, 0.6, -0.6)
        + g(20.0, -0.6, -0.6);
    let f2 = 2.0 * g(20.0, 0.0, 0.0) + g(20.0, 0.4, 0.6) - g(20.0, -0.5, 0.7) - g(20.0, 0.5, -0.7)
        + g(20.0, -0.4, -0.8);
    vec![f1, f2]
}

fn fonseca(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let c = 1.0 / n.sqrt();
    let s1: f64 = x.iter().map(|&v| (v - c) * (v - c)).sum();
    let s2: f64 = x.iter().map(|&v| (v + c) * (v + c)).sum();
    vec![1.0 - (-s1).exp(), 1.0 - (-s2).exp()]
}

fn kursawe(x: &[f64]) -> Vec<f64> {
    let f1: f64 = x
        .windows(2)
        .map(|w| -10.0 * (-0.2 * (w[0] * w[0] + w[1] * w[1]).sqrt()).exp())
        .sum();
    let f2: f64 = x
        .iter()
        .map(|&v| v.abs().powf(0.8) + 5.0 * (v.powi(3)).sin())
        .sum();
    vec![f1, f2]
}

fn ikk1(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    vec![x1 * x1, (x1 - 20.0) * (x1 - 20.0), x2 * x2]
}

fn im1(x: &[f64]) -> Vec<f64> {
    vec![2.0 * x[0].sqrt(), x[0] * (1.0 - x[1]) + 5.0]
}

fn lrs1(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    vec![x1 * x1 + x2 * x2, (x1 + 2.0) * (x1 + 2.0) + x2 * x2]
}

fn mhhm1(x: &[f64]) -> Vec<f64> {
    let v = x[0];
    vec![
        (v - 0.8) * (v - 0.8),
        (v - 0.85) * (v - 0.85),
        (v - 0.9) * (v - 0.9),
    ]
}

fn mhhm2(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    vec![
        (x1 - 0.8).powi(2) + (x2 - 0.6).powi(2),
        (x1 - 0.85).powi(2) + (x2 - 0.7).powi(2),
        (x1 - 0.9).powi(2) + (x2 - 0.6).powi(2),
    ]
}

fn mlf1(x: &[f64]) -> Vec<f64> {
    let v = x[0];
    vec![(1.0 + v / 20.0) * v.sin(), (1.0 + v / 20.0) * v.cos()]
}

fn mlf2(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    let f1 = 5.0 - ((x1 * x1 + x2 - 11.0).powi(2) + (x1 + x2 * x2 - 7.0).powi(2)) / 200.0;
    let f2 = 5.0
        - ((4.0 * x1 * x1 + 2.0 * x2 - 11.0).powi(2) + (2.0 * x1 + x2 * x2 - 7.0).powi(2)) / 200.0;
    vec![f1, f2]
}

fn mop1(x: &[f64]) -> Vec<f64> {
    let v = x[0];
    vec![v * v, (v - 2.0) * (v - 2.0)]
}

fn mop2(x: &[f64]) -> Vec<f64> {
    fonseca(x)
}

fn mop3(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    let a1 = 0.5 * 1f64.sin() - 2.0 * 1f64.cos() + 2f64.sin() - 1.5 * 2f64.cos();
    let a2 = 1.5 * 1f64.sin() - 1f64.cos() + 2.0 * 2f64.sin() - 0.5 * 2f64.cos();
    let b1 = 0.5 * x1.sin() - 2.0 * x1.cos() + x2.sin() - 1.5 * x2.cos();
    let b2 = 1.5 * x1.sin() - x1.cos() + 2.0 * x2.sin() - 0.5 * x2.cos();
    vec![
        1.0 + (a1 - b1).powi(2) + (a2 - b2).powi(2),
        (x1 + 3.0).powi(2) + (x2 + 1.0).powi(2),
    ]
}

fn mop4(x: &[f64]) -> Vec<f64> {
    let f1: f64 = x
        .windows(2)
        .map(|w| -10.0 * (-0.2 * (w[0] * w[0] + w[1] * w[1]).sqrt()).exp())
        .sum();
    let f2: f64 = x
        .iter()
        .map(|&v| v.abs().powf(0.8) + 5.0 * v.sin().powi(3))
        .sum();
    vec![f1, f2]
}

fn mop5(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    let r = x1 * x1 + x2 * x2;
    vec![
        0.5 * r + r.sin(),
        (3.0 * x1 - 2.0 * x2 + 4.0).powi(2) / 8.0 + (x1 - x2 + 1.0).powi(2) / 27.0 + 15.0,
        1.0 / (r + 1.0) - 1.1 * (-r).exp(),
    ]
}

fn mop6(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    let a = 1.0 + 10.0 * x2;
    let f2 = a * (1.0 - (x1 / a).powi(2) - x1 / a * (8.0 * PI * x1).sin());
    vec![x1, f2]
}

fn mop7(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    vec![
        (x1 - 2.0).powi(2) / 2.0 + (x2 + 1.0).powi(2) / 13.0 + 3.0,
        (x1 + x2 - 3.0).powi(2) / 36.0 + (-x1 + x2 + 2.0).powi(2) / 8.0 - 17.0,
        (x1 + 2.0 * x2 - 1.0).powi(2) / 175.0 + (2.0 * x2 - x1).powi(2) / 17.0 - 13.0,
    ]
}

fn qv1(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let rastrigin = |shift: f64| -> f64 {
        x.iter()
            .map(|&v| {
                let t = v - shift;
                t * t - 10.0 * (2.0 * PI * t).cos() + 10.0
            })
            .sum::<f64>()
            / n
    };
    vec![rastrigin(0.0).powf(0.25), rastrigin(1.5).powf(0.25)]
}

/// Schaffer's piecewise function with a disconnected Pareto front.
fn sch1(x: &[f64]) -> Vec<f64> {
    let v = x[0];
    let f1 = if v <= 1.0 {
        -v
    } else if v <= 3.0 {
        v - 2.0
    } else if v <= 4.0 {
        4.0 - v
    } else {
        v - 4.0
    };
    vec![f1, (v - 5.0) * (v - 5.0)]
}

fn sk1(x: &[f64]) -> Vec<f64> {
    let v = x[0];
    vec![
        -v.powi(4) - 3.0 * v.powi(3) + 10.0 * v * v + 10.0 * v + 10.0,
        0.5 * v.powi(4) + 2.0 * v.powi(3) + 10.0 * v * v - 10.0 * v + 5.0,
    ]
}

fn sk2(x: &[f64]) -> Vec<f64> {
    let f1 =
        -(x[0] - 2.0).powi(2) - (x[1] + 3.0).powi(2) - (x[2] - 5.0).powi(2) - (x[3] - 4.0).powi(2)
            + 5.0;
    let sines: f64 = x.iter().map(|&v| v.sin()).sum();
    let sq: f64 = x.iter().map(|&v| v * v).sum();
    vec![f1, -sines / (1.0 + sq / 100.0)]
}

fn sp1(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    let shared = (x1 - x2) * (x1 - x2);
    vec![(x1 - 1.0).powi(2) + shared, (x2 - 3.0).powi(2) + shared]
}

fn ssfyy1(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    vec![x1 * x1 + x2 * x2, (x1 - 1.0).powi(2) + (x2 - 2.0).powi(2)]
}

fn ssfyy2(x: &[f64]) -> Vec<f64> {
    let v = x[0];
    vec![
        10.0 + v * v - 10.0 * (v * PI / 2.0).cos(),
        (v - 4.0) * (v - 4.0),
    ]
}

fn vu1(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    vec![
        1.0 / (x1 * x1 + x2 * x2 + 1.0),
        x1 * x1 + 3.0 * x2 * x2 + 1.0,
    ]
}

fn vu2(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    vec![x1 + x2 + 1.0, x1 * x1 + 2.0 * x2 - 1.0]
}

fn zlt1(x: &[f64]) -> Vec<f64> {
    let m = 3;
    (0..m)
        .map(|j| {
            x.iter()
                .enumerate()
                .map(|(i, &v)| if i == j { (v - 1.0) * (v - 1.0) } else { v * v })
                .sum()
        })
        .collect()
}

pub(super) fn instances() -> Vec<ProblemInstance> {
    use DimClass::*;
    use Modality as Md;
    use Separability as Sp;
    vec![
        ProblemInstance::new(
            meta(
                "BK1",
                uniform(-5.0, 2),
                uniform(10.0, 2),
                2,
                Low,
                Sp::Separable,
                Md::Unimodal,
            ),
            bk1,
        ),
        ProblemInstance::new(
            meta(
                "DG01",
                vec![-10.0],
                vec![13.0],
                2,
                Low,
                Sp::Mixed,
                Md::Multimodal,
            ),
            dg01,
        ),
        ProblemInstance::new(
            meta(
                "DPAM1",
                uniform(-0.3, 10),
                uniform(0.3, 10),
                2,
                High,
                Sp::NonSeparable,
                Md::Mixed,
            ),
            dpam1,
        ),
        ProblemInstance::new(
            meta(
                "Far1",
                uniform(-1.0, 2),
                uniform(1.0, 2),
                2,
                Low,
                Sp::NonSeparable,
                Md::Multimodal,
            ),
            far1,
        ),
        ProblemInstance::new(
            meta(
                "Fonseca",
                uniform(-4.0, 2),
                uniform(4.0, 2),
                2,
                Low,
                Sp::Separable,
                Md::Unimodal,
            ),
            fonseca,
        ),
        ProblemInstance::new(
            meta(
                "Kursawe",
                uniform(-5.0, 3),
                uniform(5.0, 3),
                2,
                Low,
                Sp::Mixed,
                Md::Mixed,
            ),
            kursawe,
        ),
        ProblemInstance::new(
            meta(
                "IKK1",
                uniform(-50.0, 2),
                uniform(50.0, 2),
                3,
                Low,
                Sp::Mixed,
                Md::Unimodal,
            ),
            ikk1,
        ),
        ProblemInstance::new(
            meta(
                "IM1",
                vec![1.0, 1.0],
                vec![4.0, 2.0],
                2,
                Low,
                Sp::Mixed,
                Md::Unimodal,
            ),
            im1,
        ),
        ProblemInstance::new(
            meta(
                "LRS1",
                uniform(-50.0, 2),
                uniform(50.0, 2),
                2,
                Low,
                Sp::Separable,
                Md::Unimodal,
            ),
            lrs1,
        ),
        ProblemInstance::new(
            meta(
                "MHHM1",
                vec![0.0],
                vec![1.0],
                3,
                Low,
                Sp::Mixed,
                Md::Unimodal,
            ),
            mhhm1,
        ),
        ProblemInstance::new(
            meta(
                "MHHM2",
                uniform(0.0, 2),
                uniform(1.0, 2),
                3,
                Low,
                Sp::Separable,
                Md::Unimodal,
            ),
            mhhm2,
        ),
        ProblemInstance::new(
            meta(
                "MLF1",
                vec![0.0],
                vec![20.0],
                2,
                Low,
                Sp::Mixed,
                Md::Multimodal,
            ),
            mlf1,
        ),
        ProblemInstance::new(
            meta(
                "MLF2",
                uniform(-2.0, 2),
                uniform(2.0, 2),
                2,
                Low,
                Sp::NonSeparable,
                Md::Multimodal,
            ),
            mlf2,
        ),
        ProblemInstance::new(
            // the published box is [-1e5, 1e5]; shrunk so baseline-generated
            // reference sets can populate the conflict window [0, 2]
            meta(
                "MOP1",
                vec![-100.0],
                vec![100.0],
                2,
                Low,
                Sp::Separable,
                Md::Unimodal,
            ),
            mop1,
        ),
        ProblemInstance::new(
            meta(
                "MOP2",
                uniform(-4.0, 4),
                uniform(4.0, 4),
                2,
                Low,
                Sp::Separable,
                Md::Unimodal,
            ),
            mop2,
        ),
        ProblemInstance::new(
            meta(
                "MOP3",
                uniform(-PI, 2),
                uniform(PI, 2),
                2,
                Low,
                Sp::Mixed,
                Md::Mixed,
            ),
            mop3,
        ),
        ProblemInstance::new(
            meta(
                "MOP4",
                uniform(-5.0, 3),
                uniform(5.0, 3),
                2,
                Low,
                Sp::Separable,
                Md::Mixed,
            ),
            mop4,
        ),
        ProblemInstance::new(
            meta(
                "MOP5",
                uniform(-30.0, 2),
                uniform(30.0, 2),
                3,
                Low,
                Sp::NonSeparable,
                Md::Mixed,
            ),
            mop5,
        ),
        ProblemInstance::new(
            meta(
                "MOP6",
                uniform(0.0, 2),
                uniform(1.0, 2),
                2,
                Low,
                Sp::Separable,
                Md::Mixed,
            ),
            mop6,
        ),
        ProblemInstance::new(
            meta(
                "MOP7",
                uniform(-400.0, 2),
                uniform(400.0, 2),
                3,
                Low,
                Sp::Mixed,
                Md::Unimodal,
            ),
            mop7,
        ),
        ProblemInstance::new(
            meta(
                "QV1",
                uniform(-5.12, 10),
                uniform(5.12, 10),
                2,
                High,
                Sp::Separable,
                Md::Multimodal,
            ),
            qv1,
        ),
        ProblemInstance::new(
            meta("Sch1", vec![-5.0], vec![10.0], 2, Low, Sp::Mixed, Md::Mixed),
            sch1,
        ),
        ProblemInstance::new(
            meta(
                "SK1",
                vec![-10.0],
                vec![10.0],
                2,
                Low,
                Sp::Separable,
                Md::Multimodal,
            ),
            sk1,
        ),
        ProblemInstance::new(
            meta(
                "SK2",
                uniform(-10.0, 4),
                uniform(10.0, 4),
                2,
                Low,
                Sp::Mixed,
                Md::Mixed,
            ),
            sk2,
        ),
        ProblemInstance::new(
            meta(
                "SP1",
                uniform(-1.0, 2),
                uniform(5.0, 2),
                2,
                Low,
                Sp::NonSeparable,
                Md::Unimodal,
            ),
            sp1,
        ),
        ProblemInstance::new(
            meta(
                "SSFYY1",
                uniform(-100.0, 2),
                uniform(100.0, 2),
                2,
                Low,
                Sp::Separable,
                Md::Unimodal,
            ),
            ssfyy1,
        ),
        ProblemInstance::new(
            meta(
                "SSFYY2",
                vec![-100.0],
                vec![100.0],
                2,
                Low,
                Sp::Mixed,
                Md::Mixed,
            ),
            ssfyy2,
        ),
        ProblemInstance::new(
            meta(
                "VU1",
                uniform(-3.0, 2),
                uniform(3.0, 2),
                2,
                Low,
                Sp::Separable,
                Md::Unimodal,
            ),
            vu1,
        ),
        ProblemInstance::new(
            meta(
                "VU2",
                uniform(-3.0, 2),
                uniform(3.0, 2),
                2,
                Low,
                Sp::Separable,
                Md::Unimodal,
            ),
            vu2,
        ),
        ProblemInstance::new(
            // published box [-1000, 1000] makes the shared ||x||^2 bulk order
            // all samples totally; shrunk so the e_j trade-off is samplable
            meta(
                "ZLT1",
                uniform(-2.0, 10),
                uniform(2.0, 10),
                3,
                High,
                Sp::Separable,
                Md::Unimodal,
            ),
            zlt1,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bk1_known_points() {
        assert_eq!(bk1(&[0.0, 0.0]), vec![0.0, 50.0]);
        assert_eq!(bk1(&[5.0, 5.0]), vec![50.0, 0.0]);
    }

    #[test]
    fn fonseca_symmetry() {
        // swapping the sign of x swaps the objectives
        let f = fonseca(&[0.3, -0.2]);
        let g = fonseca(&[-0.3, 0.2]);
        assert!((f[0] - g[1]).abs() < 1e-15);
        assert!((f[1] - g[0]).abs() < 1e-15);
    }

    #[test]
    fn dpam1_rotation_is_orthonormal() {
        let a = dpam1_rotation();
        for i in 0..10 {
            for j in 0..10 {
                let dot: f64 = (0..10).map(|k| a[i][k] * a[j][k]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expected).abs() < 1e-10, "row {i} . row {j} = {dot}");
            }
        }
    }

    #[test]
    fn mop1_minima() {
        assert_eq!(mop1(&[0.0]), vec![0.0, 4.0]);
        assert_eq!(mop1(&[2.0]), vec![4.0, 0.0]);
    }

    #[test]
    fn sch1_piecewise_segments() {
        assert_eq!(sch1(&[0.5])[0], -0.5);
        assert_eq!(sch1(&[2.0])[0], 0.0);
        assert_eq!(sch1(&[3.5])[0], 0.5);
        assert_eq!(sch1(&[5.0])[0], 1.0);
        assert_eq!(sch1(&[5.0])[1], 0.0);
    }

    #[test]
    fn zlt1_axis_points() {
        let mut x = vec![0.0; 10];
        x[0] = 1.0;
        assert_eq!(zlt1(&x), vec![0.0, 1.0 + 1.0, 1.0 + 1.0]);
    }

    #[test]
    fn qv1_zero_point() {
        let f = qv1(&[0.0; 10]);
        assert_eq!(f[0], 0.0);
        assert!(f[1] > 0.0);
    }
}
