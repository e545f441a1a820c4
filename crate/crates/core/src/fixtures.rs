//! Reference truck used across the unit tests.

use crate::model::{HalfCarParams, HarmonicRoadExcitation, ThreeAxleParams};

pub(crate) fn truck() -> ThreeAxleParams {
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

/// 5 cm unevenness, 2 m wavelength, 60 km/h.
pub(crate) fn truck_road() -> HarmonicRoadExcitation {
    HarmonicRoadExcitation::new(0.05, 2.0, 60.0 / 3.6).unwrap()
}
