//! Physical constants of the supported vehicle configurations.

use super::ModelError;

/// Two masses in a chain: `m1` tied to the frame through `k1`/`d1`, `m2`
/// tied to `m1` through `k2`/`d2`, with a harmonic force acting on `m2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoDofParams {
    pub m1: f64,
    pub m2: f64,
    pub k1: f64,
    pub k2: f64,
    pub d1: f64,
    pub d2: f64,
    /// Peak force amplitude [N].
    pub f_amplitude: f64,
    /// Force phase [rad], cosine reference.
    pub f_phase: f64,
}

/// Half-car (pitch plane) vehicle with two axles.
///
/// `d` denotes the front axle, `t` the rear. The body is described by the
/// vertical displacements of the two suspension attachment points `a`
/// (front) and `b` (rear) instead of heave and pitch.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfCarParams {
    /// Sprung (body) mass [kg].
    pub m: f64,
    /// Body pitch inertia about the centre of mass [kg m^2].
    pub i_g: f64,
    pub m_ssd: f64,
    pub m_sst: f64,
    pub k_sd: f64,
    pub k_st: f64,
    pub d_sd: f64,
    pub d_st: f64,
    pub k_rd: f64,
    pub k_rt: f64,
    pub d_rd: f64,
    pub d_rt: f64,
    /// Centre of mass to front axle [m].
    pub l_d: f64,
    /// Centre of mass to rear axle [m].
    pub l_t: f64,
    /// Gravitational acceleration [m/s^2]; only enters the stored gravity load.
    pub g: f64,
}

/// Three-axle vehicle: the half-car plus a middle axle `m` placed `l_a`
/// behind the front axle and `l_b` ahead of the rear one.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeAxleParams {
    pub half_car: HalfCarParams,
    pub m_ssm: f64,
    pub k_sm: f64,
    pub d_sm: f64,
    pub k_rm: f64,
    pub d_rm: f64,
    pub l_a: f64,
    pub l_b: f64,
}

/// Longitudinal geometry of a rigid frame carrying up to three axles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameGeometry {
    pub l_d: f64,
    pub l_t: f64,
    pub l_a: f64,
    pub l_b: f64,
}

impl FrameGeometry {
    /// Wheelbase, front to rear axle.
    pub fn l(&self) -> f64 {
        self.l_d + self.l_t
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<(), ModelError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter {
            name,
            value,
            reason: "must be finite and > 0",
        })
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<(), ModelError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter {
            name,
            value,
            reason: "must be finite and >= 0",
        })
    }
}

impl TwoDofParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        positive("m1", self.m1)?;
        positive("m2", self.m2)?;
        non_negative("k1", self.k1)?;
        non_negative("k2", self.k2)?;
        non_negative("d1", self.d1)?;
        non_negative("d2", self.d2)?;
        non_negative("f_amplitude", self.f_amplitude)?;
        if !self.f_phase.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "f_phase",
                value: self.f_phase,
                reason: "must be finite",
            });
        }
        Ok(())
    }
}

impl HalfCarParams {
    /// Wheelbase `l = l_d + l_t`.
    pub fn l(&self) -> f64 {
        self.l_d + self.l_t
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        positive("m", self.m)?;
        positive("I_G", self.i_g)?;
        positive("m_ssd", self.m_ssd)?;
        positive("m_sst", self.m_sst)?;
        positive("k_sd", self.k_sd)?;
        positive("k_st", self.k_st)?;
        positive("k_rd", self.k_rd)?;
        positive("k_rt", self.k_rt)?;
        non_negative("d_sd", self.d_sd)?;
        non_negative("d_st", self.d_st)?;
        non_negative("d_rd", self.d_rd)?;
        non_negative("d_rt", self.d_rt)?;
        positive("l_d", self.l_d)?;
        positive("l_t", self.l_t)?;
        non_negative("g", self.g)?;
        Ok(())
    }
}

impl ThreeAxleParams {
    pub fn geometry(&self) -> FrameGeometry {
        FrameGeometry {
            l_d: self.half_car.l_d,
            l_t: self.half_car.l_t,
            l_a: self.l_a,
            l_b: self.l_b,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        self.half_car.validate()?;
        positive("m_ssm", self.m_ssm)?;
        // a middle axle without suspension is allowed; it then hangs on its tyre only
        non_negative("k_sm", self.k_sm)?;
        positive("k_rm", self.k_rm)?;
        non_negative("d_sm", self.d_sm)?;
        non_negative("d_rm", self.d_rm)?;
        positive("l_a", self.l_a)?;
        positive("l_b", self.l_b)?;
        let l = self.half_car.l();
        if ((self.l_a + self.l_b) - l).abs() > 1e-9 * l {
            return Err(ModelError::GeometryInconsistent {
                wheelbase: l,
                axle_sum: self.l_a + self.l_b,
            });
        }
        Ok(())
    }
}
