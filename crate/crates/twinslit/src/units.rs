//! Unit conversion constants. Everything internal is SI (meters, seconds,
//! radians); millimeters, nanometers, and degrees appear only at the I/O
//! boundary (config files, CSV columns, CLI flags, reports).

pub const MM: f64 = 1e-3;
pub const UM: f64 = 1e-6;
pub const NM: f64 = 1e-9;
pub const NS: f64 = 1e-9;
pub const CM: f64 = 1e-2;

/// Degrees to radians, for polarizer angles given in degrees at the boundary.
pub fn deg(angle: f64) -> f64 {
    angle.to_radians()
}

/// Wrap an angle into (-pi, pi]. Fit results and parsed phases use this
/// convention so that a phase is always reported in a single branch.
pub fn wrap_phase(phi: f64) -> f64 {
    if !phi.is_finite() {
        return phi;
    }
    let two_pi = std::f64::consts::TAU;
    let mut r = phi % two_pi;
    if r <= -std::f64::consts::PI {
        r += two_pi;
    } else if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}
