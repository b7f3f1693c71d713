//! Exact hypervolume for 2–4 objectives, plus a grid-counting oracle.
//!
//! Dispatch: sort-sweep (m=2), dimension sweep with an incremental 2-D
//! staircase (m=3), slicing on the fourth objective (m=4).

use super::IndicatorError;
use crate::pareto::ObjectiveVector;

/// Lebesgue measure of the union of boxes `[p, ref_point]` over the points
/// weakly dominating `ref_point`. Points not componentwise <= `ref_point`
/// contribute nothing.
pub fn hypervolume(
    points: &[ObjectiveVector],
    ref_point: &ObjectiveVector,
) -> Result<f64, IndicatorError> {
    let m = ref_point.len();
    if !(2..=4).contains(&m) {
        return Err(IndicatorError::UnsupportedDimension(m));
    }
    for p in points {
        if p.len() != m {
            return Err(IndicatorError::DimensionMismatch {
                expected: m,
                got: p.len(),
            });
        }
    }
    let r = ref_point.values();
    let kept: Vec<&[f64]> = points
        .iter()
        .map(|p| p.values())
        .filter(|p| p.iter().zip(r).all(|(a, b)| a <= b))
        .collect();
    Ok(match m {
        2 => hv2(&kept, r),
        3 => hv3(&kept, r),
        4 => hv4(&kept, r),
        _ => unreachable!(),
    })
}

/// Sort-sweep over the non-dominated staircase.
fn hv2(points: &[&[f64]], r: &[f64]) -> f64 {
    let stair = staircase2(points.iter().map(|p| (p[0], p[1])));
    staircase_area(&stair, r[0], r[1])
}

/// Builds the 2-D non-dominated staircase (x strictly ascending, y strictly
/// descending) from arbitrary input points.
fn staircase2(points: impl Iterator<Item = (f64, f64)>) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = points.collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut stair: Vec<(f64, f64)> = Vec::new();
    for (x, y) in pts {
        match stair.last() {
            Some(&(_, ly)) if y >= ly => {}
            _ => stair.push((x, y)),
        }
    }
    stair
}

fn staircase_area(stair: &[(f64, f64)], rx: f64, ry: f64) -> f64 {
    let mut area = 0.0;
    for (i, &(x, y)) in stair.iter().enumerate() {
        let next_x = stair.get(i + 1).map(|p| p.0).unwrap_or(rx);
        area += (next_x - x) * (ry - y);
    }
    area
}

/// Incremental 2-D staircase with a maintained dominated area.
struct Staircase2 {
    // sorted by x ascending; y strictly descending
    points: Vec<(f64, f64)>,
    rx: f64,
    ry: f64,
    area: f64,
}

impl Staircase2 {
    fn new(rx: f64, ry: f64) -> Self {
        Self {
            points: Vec::new(),
            rx,
            ry,
            area: 0.0,
        }
    }

    fn insert(&mut self, x: f64, y: f64) {
        let pos = self.points.partition_point(|&(sx, _)| sx < x);
        if pos > 0 && self.points[pos - 1].1 <= y {
            return; // weakly dominated by the stair point just left of x
        }
        if pos < self.points.len() && self.points[pos].0 == x && self.points[pos].1 <= y {
            return;
        }
        let mut end = pos;
        while end < self.points.len() && self.points[end].1 >= y {
            end += 1;
        }
        let right_x = self.points.get(end).map(|p| p.0).unwrap_or(self.rx);
        // strip of the left neighbour stretches to the new x
        if pos > 0 {
            let (_, ly) = self.points[pos - 1];
            let old_next = self.points.get(pos).map(|p| p.0).unwrap_or(self.rx);
            self.area += (x - old_next) * (self.ry - ly);
        }
        for i in pos..end {
            let nx = if i + 1 < end {
                self.points[i + 1].0
            } else {
                right_x
            };
            self.area -= (nx - self.points[i].0) * (self.ry - self.points[i].1);
        }
        self.area += (right_x - x) * (self.ry - y);
        self.points.splice(pos..end, [(x, y)]);
    }
}

/// Dimension sweep along the third objective.
fn hv3(points: &[&[f64]], r: &[f64]) -> f64 {
    let mut pts: Vec<&[f64]> = points.to_vec();
    pts.sort_by(|a, b| a[2].partial_cmp(&b[2]).unwrap());
    let mut stair = Staircase2::new(r[0], r[1]);
    let mut volume = 0.0;
    let mut i = 0;
    while i < pts.len() {
        let z = pts[i][2];
        while i < pts.len() && pts[i][2] == z {
            stair.insert(pts[i][0], pts[i][1]);
            i += 1;
        }
        let z_next = if i < pts.len() { pts[i][2] } else { r[2] };
        volume += stair.area * (z_next - z);
    }
    volume
}

/// Recursive slicing on the fourth objective: each slab contributes its
/// thickness times the 3-D hypervolume of the points active below it.
fn hv4(points: &[&[f64]], r: &[f64]) -> f64 {
    let mut pts: Vec<&[f64]> = points.to_vec();
    pts.sort_by(|a, b| a[3].partial_cmp(&b[3]).unwrap());
    let mut active: Vec<&[f64]> = Vec::new();
    let mut volume = 0.0;
    let mut i = 0;
    while i < pts.len() {
        let w = pts[i][3];
        while i < pts.len() && pts[i][3] == w {
            push_active3(&mut active, pts[i]);
            i += 1;
        }
        let w_next = if i < pts.len() { pts[i][3] } else { r[3] };
        if w_next > w {
            volume += hv3(&active, r) * (w_next - w);
        }
    }
    volume
}

/// Keeps the active slab set non-dominated in its first three coordinates.
fn push_active3<'a>(active: &mut Vec<&'a [f64]>, p: &'a [f64]) {
    if active
        .iter()
        .any(|q| q[..3].iter().zip(&p[..3]).all(|(a, b)| a <= b))
    {
        return;
    }
    active.retain(|q| !p[..3].iter().zip(&q[..3]).all(|(a, b)| a <= b));
    active.push(p);
}

/// Grid-counting hypervolume approximation, used as an independent test
/// oracle. Counts cell centres dominated by at least one point over the box
/// spanning the componentwise minimum of the points up to `ref_point`.
/// Error is bounded by `m / resolution` of the box volume.
pub fn hv_oracle(
    points: &[ObjectiveVector],
    ref_point: &ObjectiveVector,
    resolution: usize,
) -> f64 {
    let m = ref_point.len();
    let r = ref_point.values();
    let kept: Vec<&[f64]> = points
        .iter()
        .map(|p| p.values())
        .filter(|p| p.len() == m && p.iter().zip(r).all(|(a, b)| a <= b))
        .collect();
    if kept.is_empty() {
        return 0.0;
    }
    let lo: Vec<f64> = (0..m)
        .map(|i| kept.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min))
        .collect();
    let h: Vec<f64> = (0..m).map(|i| (r[i] - lo[i]) / resolution as f64).collect();
    let box_volume: f64 = (0..m).map(|i| r[i] - lo[i]).product();
    if box_volume == 0.0 {
        return 0.0;
    }
    let total = resolution.pow(m as u32);
    let mut dominated = vec![false; total];
    // strides for row-major cell indexing
    let mut strides = vec![1usize; m];
    for i in (0..m - 1).rev() {
        strides[i] = strides[i + 1] * resolution;
    }
    let mut starts = vec![0usize; m];
    for p in &kept {
        for i in 0..m {
            let s = ((p[i] - lo[i]) / h[i] - 0.5).ceil();
            starts[i] = (s.max(0.0) as usize).min(resolution);
        }
        mark_block(&mut dominated, &starts, &strides, resolution, 0, 0);
    }
    let count = dominated.iter().filter(|&&d| d).count();
    box_volume * count as f64 / total as f64
}

fn mark_block(
    grid: &mut [bool],
    starts: &[usize],
    strides: &[usize],
    resolution: usize,
    dim: usize,
    offset: usize,
) {
    if dim == starts.len() - 1 {
        for cell in grid
            .iter_mut()
            .skip(offset + starts[dim])
            .take(resolution - starts[dim])
        {
            *cell = true;
        }
        return;
    }
    for j in starts[dim]..resolution {
        mark_block(
            grid,
            starts,
            strides,
            resolution,
            dim + 1,
            offset + j * strides[dim],
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ov(values: &[f64]) -> ObjectiveVector {
        ObjectiveVector::new(values.to_vec()).unwrap()
    }

    #[test]
    fn unit_box() {
        let hv = hypervolume(&[ov(&[0.0, 0.0])], &ov(&[1.0, 1.0])).unwrap();
        assert_eq!(hv, 1.0);
    }

    #[test]
    fn three_point_staircase() {
        let pts = [ov(&[0.25, 0.75]), ov(&[0.5, 0.5]), ov(&[0.75, 0.25])];
        let hv = hypervolume(&pts, &ov(&[1.0, 1.0])).unwrap();
        assert!((hv - 0.375).abs() < 1e-15);
    }

    #[test]
    fn empty_set_is_zero() {
        assert_eq!(hypervolume(&[], &ov(&[1.0, 1.0])).unwrap(), 0.0);
        assert_eq!(hypervolume(&[], &ov(&[1.0, 1.0, 1.0])).unwrap(), 0.0);
    }

    #[test]
    fn points_beyond_reference_contribute_zero() {
        let pts = [ov(&[0.5, 0.5]), ov(&[2.0, 0.1])];
        let hv = hypervolume(&pts, &ov(&[1.0, 1.0])).unwrap();
        assert!((hv - 0.25).abs() < 1e-15);
    }

    #[test]
    fn dominated_points_do_not_change_result() {
        let base = [ov(&[0.3, 0.5]), ov(&[0.6, 0.2])];
        let with_dominated = [ov(&[0.3, 0.5]), ov(&[0.6, 0.2]), ov(&[0.8, 0.7])];
        let r = ov(&[1.0, 1.0]);
        assert_eq!(
            hypervolume(&base, &r).unwrap(),
            hypervolume(&with_dominated, &r).unwrap()
        );
        assert!((hypervolume(&base, &r).unwrap() - 0.47).abs() < 1e-15);
    }

    #[test]
    fn cube_volumes_m3_m4() {
        let hv = hypervolume(&[ov(&[0.5, 0.5, 0.5])], &ov(&[1.0, 1.0, 1.0])).unwrap();
        assert!((hv - 0.125).abs() < 1e-15);
        let hv = hypervolume(&[ov(&[0.5, 0.5, 0.5, 0.5])], &ov(&[1.0, 1.0, 1.0, 1.0])).unwrap();
        assert!((hv - 0.0625).abs() < 1e-15);
    }

    #[test]
    fn two_boxes_m3_inclusion_exclusion() {
        // overlap [0.5,1]x[0.5,1]x[0.5,1] = 0.125; union = 2*0.25 - 0.125
        let pts = [ov(&[0.0, 0.5, 0.5]), ov(&[0.5, 0.0, 0.5])];
        let hv = hypervolume(&pts, &ov(&[1.0, 1.0, 1.0])).unwrap();
        assert!((hv - 0.375).abs() < 1e-15);
    }

    #[test]
    fn unsupported_dimension() {
        assert!(matches!(
            hypervolume(&[], &ov(&[1.0; 5])),
            Err(IndicatorError::UnsupportedDimension(5))
        ));
    }

    #[test]
    fn oracle_simple_cases() {
        let r = ov(&[1.0, 1.0]);
        assert!((hv_oracle(&[ov(&[0.0, 0.0])], &r, 128) - 1.0).abs() <= 0.02);
        assert!((hv_oracle(&[ov(&[0.5, 0.5])], &r, 128) - 0.25).abs() <= 0.02);
        let pts = [ov(&[0.25, 0.75]), ov(&[0.5, 0.5]), ov(&[0.75, 0.25])];
        assert!((hv_oracle(&pts, &r, 256) - 0.375).abs() <= 0.02);
    }

    #[test]
    fn oracle_matches_exact_on_random_sets() {
        // light version of the acceptance sweep
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for m in 2..=4usize {
            let resolution = match m {
                2 => 256,
                3 => 64,
                _ => 32,
            };
            for _ in 0..10 {
                let count = 1 + (next() * 30.0) as usize;
                let pts: Vec<ObjectiveVector> = (0..count)
                    .map(|_| ov(&(0..m).map(|_| next()).collect::<Vec<_>>()))
                    .collect();
                let r = ov(&vec![1.0; m]);
                let exact = hypervolume(&pts, &r).unwrap();
                let approx = hv_oracle(&pts, &r, resolution);
                let tol = 2.0 * m as f64 / resolution as f64;
                assert!(
                    (exact - approx).abs() <= tol,
                    "m={m} exact={exact} approx={approx} tol={tol}"
                );
            }
        }
    }
}
