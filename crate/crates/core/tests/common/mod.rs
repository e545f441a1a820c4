//! Parameter fixtures shared by the integration tests.
#![allow(dead_code)]

use mobility_core::model::{
    build_half_car, build_three_axle, build_two_dof, HalfCarParams, HarmonicRoadExcitation, ModelKind,
    SecondOrderModel, ThreeAxleParams, TwoDofParams,
};
use mobility_core::Excitation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn truck() -> ThreeAxleParams {
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

pub fn truck_road() -> HarmonicRoadExcitation {
    HarmonicRoadExcitation::new(0.05, 2.0, 60.0 / 3.6).unwrap()
}

/// Log-uniform draw from `[lo, hi]`.
fn log_range(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..=hi.ln())).exp()
}

pub fn random_two_dof(rng: &mut ChaCha8Rng) -> TwoDofParams {
    TwoDofParams {
        m1: log_range(rng, 1.0, 500.0),
        m2: log_range(rng, 10.0, 5000.0),
        k1: log_range(rng, 1e3, 1e7),
        k2: log_range(rng, 1e3, 1e6),
        d1: log_range(rng, 1.0, 1e4),
        d2: log_range(rng, 10.0, 1e4),
        f_amplitude: log_range(rng, 1.0, 1e4),
        f_phase: rng.random_range(-3.0..3.0),
    }
}

pub fn random_half_car(rng: &mut ChaCha8Rng) -> HalfCarParams {
    HalfCarParams {
        m: log_range(rng, 300.0, 40000.0),
        i_g: log_range(rng, 100.0, 1e5),
        m_ssd: log_range(rng, 20.0, 2000.0),
        m_sst: log_range(rng, 20.0, 2000.0),
        k_sd: log_range(rng, 1e4, 5e6),
        k_st: log_range(rng, 1e4, 5e6),
        d_sd: log_range(rng, 100.0, 5e4),
        d_st: log_range(rng, 100.0, 5e4),
        k_rd: log_range(rng, 1e5, 1e7),
        k_rt: log_range(rng, 1e5, 1e7),
        d_rd: log_range(rng, 1.0, 2000.0),
        d_rt: log_range(rng, 1.0, 2000.0),
        l_d: rng.random_range(0.5..5.0),
        l_t: rng.random_range(0.5..5.0),
        g: 9.81,
    }
}

pub fn random_three_axle(rng: &mut ChaCha8Rng) -> ThreeAxleParams {
    let half_car = random_half_car(rng);
    let l = half_car.l_d + half_car.l_t;
    let l_a = l * rng.random_range(0.1..0.9);
    ThreeAxleParams {
        half_car,
        m_ssm: log_range(rng, 20.0, 2000.0),
        k_sm: log_range(rng, 1e4, 5e6),
        d_sm: log_range(rng, 100.0, 5e4),
        k_rm: log_range(rng, 1e5, 1e7),
        d_rm: log_range(rng, 1.0, 2000.0),
        l_a,
        l_b: l - l_a,
    }
}

/// One random model of the given kind with a random excitation at a
/// random `omega` in `[1, 500]` rad/s.
pub fn random_case(kind: ModelKind, seed: u64) -> (SecondOrderModel, Excitation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let omega = rng.random_range(1.0..=500.0);
    let model = match kind {
        ModelKind::TwoDof => build_two_dof(&random_two_dof(&mut rng)).unwrap(),
        ModelKind::HalfCar => build_half_car(&random_half_car(&mut rng)).unwrap(),
        ModelKind::ThreeAxle => build_three_axle(&random_three_axle(&mut rng)).unwrap(),
    };
    let excitation = match kind {
        ModelKind::TwoDof => Excitation::Tone { omega },
        _ => {
            let wavelength = rng.random_range(0.5..20.0);
            let amplitude = log_range(&mut rng, 1e-3, 0.1);
            Excitation::Road(HarmonicRoadExcitation {
                amplitude,
                wavelength,
                speed: omega * wavelength / std::f64::consts::TAU,
            })
        }
    };
    (model, excitation)
}

pub const KINDS: [ModelKind; 3] = [ModelKind::TwoDof, ModelKind::HalfCar, ModelKind::ThreeAxle];
