use lpbesov::spectral::{decompose, max_scale, reconstruct, CutoffProfile, GridSpec, SampledField};
use proptest::prelude::*;

fn field_from(coeffs: &[(f64, f64)], grid: GridSpec) -> SampledField {
    SampledField::from_fn(grid, |x| {
        coeffs
            .iter()
            .enumerate()
            .map(|(k, (a, b))| {
                let k = (k + 1) as f64;
                a * (k * x[0]).cos() + b * (k * x[0]).sin()
            })
            .sum()
    })
    .unwrap()
}

#[test]
fn partition_of_unity_on_the_lattice() {
    let profile = CutoffProfile::default();
    let grid = GridSpec::torus_1d(1024).unwrap();
    let (jmin, jmax) = (-1, max_scale(&grid));
    for &xi in grid.frequency_magnitudes().iter().filter(|&&x| x > 0.0) {
        if xi > (jmax as f64).exp2() {
            continue;
        }
        let sum = profile.lowpass_multiplier(jmin, xi)
            + (jmin..=jmax).map(|j| profile.block_multiplier(j, xi)).sum::<f64>();
        assert!((sum - 1.0).abs() <= 1e-12, "xi={xi}: {sum}");
        let hits = (jmin - 2..=jmax + 2).filter(|&j| profile.block_multiplier(j, xi) > 0.0).count();
        assert!(hits <= 2, "xi={xi} hit by {hits} blocks");
    }
}

#[test]
fn blocks_reconstruct_the_field() {
    let grid = GridSpec::torus_1d(512).unwrap();
    let f = field_from(&[(1.0, 0.5), (0.0, -2.0), (0.3, 0.0), (0.0, 0.0), (1.5, 1.0)], grid);
    let d = decompose(&f, &CutoffProfile::default(), -1, max_scale(&grid)).unwrap();
    let back = reconstruct(&d);
    for (a, b) in f.samples().iter().zip(back.samples()) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn single_mode_lands_in_its_annulus() {
    // ξ = 16 lies strictly inside supp ψ(2^{-4}·) only
    let grid = GridSpec::torus_1d(256).unwrap();
    let f = SampledField::from_fn(grid, |x| (16.0 * x[0]).cos()).unwrap();
    let d = decompose(&f, &CutoffProfile::default(), 0, max_scale(&grid)).unwrap();
    for (j, b) in d.blocks() {
        let energy: f64 = b.samples().iter().map(|v| v * v).sum();
        if (3..=4).contains(&j) {
            continue;
        }
        assert!(energy < 1e-20, "block {j} carries {energy}");
    }
}

proptest! {
    #[test]
    fn decomposition_is_linear(
        c1 in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..40),
        c2 in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..40),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
    ) {
        let grid = GridSpec::torus_1d(256).unwrap();
        let profile = CutoffProfile::default();
        let (f, g) = (field_from(&c1, grid), field_from(&c2, grid));
        let jmax = max_scale(&grid);
        let df = decompose(&f, &profile, 0, jmax).unwrap();
        let dg = decompose(&g, &profile, 0, jmax).unwrap();
        let dh = decompose(&f.combine(a, &g, b).unwrap(), &profile, 0, jmax).unwrap();
        let expect = df.combine(a, &dg, b).unwrap();
        let scale = f.sup_norm() * a.abs() + g.sup_norm() * b.abs() + 1e-300;
        for ((_, x), (_, y)) in dh.blocks().zip(expect.blocks()) {
            for (u, v) in x.samples().iter().zip(y.samples()) {
                prop_assert!((u - v).abs() <= 1e-12 * scale);
            }
        }
    }
}
