//! Unitary discrete Fourier transforms on 1-D and 2-D periodic grids.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::grid::GridSpec;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Forward,
    Inverse,
}

fn transform(grid: &GridSpec, data: &mut [Complex64], dir: Direction) {
    let n = grid.points_per_axis();
    let mut planner = FftPlanner::<f64>::new();
    let fft = match dir {
        Direction::Forward => planner.plan_fft_forward(n),
        Direction::Inverse => planner.plan_fft_inverse(n),
    };
    match grid.dim() {
        1 => fft.process(data),
        _ => {
            // rows, then columns through a transposed copy
            fft.process(data);
            let mut t = vec![Complex64::new(0.0, 0.0); n * n];
            for r in 0..n {
                for c in 0..n {
                    t[c * n + r] = data[r * n + c];
                }
            }
            fft.process(&mut t);
            for r in 0..n {
                for c in 0..n {
                    data[c * n + r] = t[r * n + c];
                }
            }
        }
    }
    let scale = 1.0 / (grid.len() as f64).sqrt();
    for z in data.iter_mut() {
        *z *= scale;
    }
}

/// Forward transform with `1/sqrt(len)` normalization.
pub fn forward_real(grid: &GridSpec, samples: &[f64]) -> Vec<Complex64> {
    let mut data: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    transform(grid, &mut data, Direction::Forward);
    data
}

pub fn forward(grid: &GridSpec, data: &mut [Complex64]) {
    transform(grid, data, Direction::Forward);
}

pub fn inverse(grid: &GridSpec, data: &mut [Complex64]) {
    transform(grid, data, Direction::Inverse);
}

/// Inverse transform keeping only the real part.
pub fn inverse_real(grid: &GridSpec, mut data: Vec<Complex64>) -> Vec<f64> {
    transform(grid, &mut data, Direction::Inverse);
    data.into_iter().map(|z| z.re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plancherel_and_inverse() {
        for dim in [1, 2] {
            let g = GridSpec::new(dim, 16, 1.0).unwrap();
            let x: Vec<f64> = (0..g.len()).map(|i| ((i * 7919) % 13) as f64 - 6.0).collect();
            let hat = forward_real(&g, &x);
            let e_x: f64 = x.iter().map(|v| v * v).sum();
            let e_s: f64 = hat.iter().map(|z| z.norm_sqr()).sum();
            assert!((e_x - e_s).abs() < 1e-10 * e_x);
            let back = inverse_real(&g, hat);
            for (a, b) in x.iter().zip(&back) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn single_mode_lands_in_one_bin_pair() {
        let g = GridSpec::torus_1d(32).unwrap();
        let x: Vec<f64> = g.axis_coordinates().iter().map(|t| (4.0 * t).cos()).collect();
        let s = forward_real(&g, &x);
        for (k, z) in s.iter().enumerate() {
            if k == 4 || k == 28 {
                assert!((z.re - 32f64.sqrt() / 2.0).abs() < 1e-12);
            } else {
                assert!(z.norm() < 1e-12);
            }
        }
    }
}
