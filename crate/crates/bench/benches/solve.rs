use criterion::{criterion_group, criterion_main, Criterion};
use mobility_core::model::{HalfCarParams, ThreeAxleParams};
use mobility_core::oracle::{closed_form_velocity_phasors, fft, spectral_velocities, SpectralGrid};
use mobility_core::solver::{analyze, sweep};
use mobility_core::{build_three_axle, Excitation, HarmonicRoadExcitation};
use num_complex::Complex64;
use std::hint::black_box;

fn truck() -> ThreeAxleParams {
    ThreeAxleParams {
        half_car: HalfCarParams {
            m: 22000.0,
            i_g: 21000.0,
            m_ssd: 900.0,
            m_sst: 1400.0,
            k_sd: 610_000.0,
            k_st: 2_600_000.0,
            d_sd: 15400.0,
            d_st: 15400.0,
            k_rd: 1_360_000.0,
            k_rt: 5_430_000.0,
            d_rd: 150.0,
            d_rt: 150.0,
            l_d: 4.44,
            l_t: 1.71,
            g: 9.81,
        },
        m_ssm: 1400.0,
        k_sm: 2_600_000.0,
        d_sm: 15400.0,
        k_rm: 5_430_000.0,
        d_rm: 150.0,
        l_a: 4.80,
        l_b: 1.35,
    }
}

fn benches(c: &mut Criterion) {
    let model = build_three_axle(&truck()).unwrap();
    let e = Excitation::Road(HarmonicRoadExcitation::new(0.05, 2.0, 60.0 / 3.6).unwrap());

    c.bench_function("analyze_three_axle", |b| b.iter(|| analyze(black_box(&model), black_box(&e)).unwrap()));
    c.bench_function("closed_form_three_axle", |b| {
        b.iter(|| closed_form_velocity_phasors(black_box(&model), black_box(&e)).unwrap())
    });
    let omegas: Vec<f64> = (1..=500).map(|k| k as f64).collect();
    c.bench_function("sweep_500_points", |b| b.iter(|| sweep(&model, &e, black_box(&omegas)).unwrap()));
    c.bench_function("spectral_1024", |b| {
        b.iter(|| spectral_velocities(&model, &e, &SpectralGrid::default()).unwrap())
    });
    let signal: Vec<Complex64> = (0..1024).map(|k| Complex64::new((k as f64 * 0.1).sin(), 0.0)).collect();
    c.bench_function("fft_1024", |b| {
        b.iter(|| {
            let mut buf = signal.clone();
            fft::fft(black_box(&mut buf));
            buf
        })
    });
}

criterion_group!(solve, benches);
criterion_main!(solve);
