//! Physical parameter set, unit conventions, and derived scalar scales.

use crate::error::CoreError;
use crate::Result;

/// CODATA SI values used by the SI unit-scale defaults.
pub mod si {
    /// Elementary charge, C.
    pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
    /// Reduced Planck constant, J s.
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Electron mass, kg.
    pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
}

/// The symbol set `{e, hbar, mass, tau, n, B}` every other module consumes.
///
/// `mass` is the carrier mass (it enters the cyclotron frequency and the
/// kinetic term), `tau` the mean free time, `density` the areal carrier
/// density and `b_field` the applied perpendicular magnetic field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub e: f64,
    pub hbar: f64,
    pub mass: f64,
    pub tau: f64,
    pub density: f64,
    pub b_field: f64,
}

impl PhysicalParams {
    /// Validated constructor: `e, hbar, mass, tau` strictly positive,
    /// `density, b_field` non-negative, all finite.
    pub fn new(e: f64, hbar: f64, mass: f64, tau: f64, density: f64, b_field: f64) -> Result<Self> {
        let p = Self {
            e,
            hbar,
            mass,
            tau,
            density,
            b_field,
        };
        p.validate()?;
        Ok(p)
    }

    /// Natural-unit parameters: `e = hbar = mass = 1`.
    pub fn natural(tau: f64, density: f64, b_field: f64) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, tau, density, b_field)
    }

    pub fn validate(&self) -> Result<()> {
        let positive: [(&'static str, f64); 4] = [
            ("e", self.e),
            ("hbar", self.hbar),
            ("mass", self.mass),
            ("tau", self.tau),
        ];
        for (name, v) in positive {
            if !v.is_finite() || v <= 0.0 {
                return Err(CoreError::InvalidParameter {
                    name,
                    reason: format!("must be strictly positive and finite, got {v}"),
                });
            }
        }
        let non_negative: [(&'static str, f64); 2] =
            [("density", self.density), ("B", self.b_field)];
        for (name, v) in non_negative {
            if !v.is_finite() || v < 0.0 {
                return Err(CoreError::InvalidParameter {
                    name,
                    reason: format!("must be non-negative, got {v}"),
                });
            }
        }
        Ok(())
    }

    /// Whether the set satisfies the natural-mode convention exactly.
    pub fn is_natural(&self) -> bool {
        self.e == 1.0 && self.hbar == 1.0 && self.mass == 1.0
    }

    /// Returns a copy with the field replaced (sweep helper).
    pub fn with_b_field(mut self, b: f64) -> Self {
        self.b_field = b;
        self
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }
}

/// Cyclotron frequency `e B / mass`. Zero field gives zero.
pub fn cyclotron_frequency(p: &PhysicalParams) -> f64 {
    p.e * p.b_field / p.mass
}

/// Dimensionless Hall parameter `omega_c * tau`; `>> 1` marks the
/// quantum Hall regime, `<< 1` the classical one.
pub fn hall_parameter(p: &PhysicalParams) -> f64 {
    cyclotron_frequency(p) * p.tau
}

/// Magnetic length `sqrt(hbar / (e B))`, the expected edge-current width.
pub fn magnetic_length(p: &PhysicalParams) -> Result<f64> {
    if p.b_field == 0.0 {
        return Err(CoreError::ZeroFieldMagneticLength);
    }
    Ok((p.hbar / (p.e * p.b_field)).sqrt())
}

/// Unit-system mode for parameter I/O.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnitSystem {
    /// Base constants are 1 exactly; conductivities are dimensionless in
    /// conductance-quantum units.
    #[default]
    Natural,
    /// SI values at the I/O boundary, converted through [`UnitScales`].
    Si,
}

/// Scale factors mapping SI quantities onto the natural system.
///
/// Fixing charge, action, and mass scales leaves one base scale free; it
/// is taken as a reference length (default 1 m). Derived scales follow
/// from dimensional bookkeeping: time `mass * length^2 / action`, field
/// `action / (charge * length^2)`, density `1 / length^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitScales {
    pub charge: f64,
    pub action: f64,
    pub mass: f64,
    pub length: f64,
}

impl Default for UnitScales {
    fn default() -> Self {
        Self {
            charge: si::ELEMENTARY_CHARGE,
            action: si::HBAR,
            mass: si::ELECTRON_MASS,
            length: 1.0,
        }
    }
}

impl UnitScales {
    pub fn time(&self) -> f64 {
        self.mass * self.length * self.length / self.action
    }

    pub fn b_field(&self) -> f64 {
        self.action / (self.charge * self.length * self.length)
    }

    pub fn density(&self) -> f64 {
        1.0 / (self.length * self.length)
    }

    /// SI parameter set -> natural-unit parameter set.
    pub fn to_natural(&self, p: &PhysicalParams) -> PhysicalParams {
        PhysicalParams {
            e: p.e / self.charge,
            hbar: p.hbar / self.action,
            mass: p.mass / self.mass,
            tau: p.tau / self.time(),
            density: p.density / self.density(),
            b_field: p.b_field / self.b_field(),
        }
    }

    /// Natural-unit parameter set -> SI parameter set.
    pub fn to_si(&self, p: &PhysicalParams) -> PhysicalParams {
        PhysicalParams {
            e: p.e * self.charge,
            hbar: p.hbar * self.action,
            mass: p.mass * self.mass,
            tau: p.tau * self.time(),
            density: p.density * self.density(),
            b_field: p.b_field * self.b_field(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn cyclotron_identity_cases() {
        let p = PhysicalParams::natural(1.0, 1.0, 1.0).unwrap();
        assert_eq!(cyclotron_frequency(&p), 1.0);
        let p0 = PhysicalParams::natural(1.0, 1.0, 0.0).unwrap();
        assert_eq!(cyclotron_frequency(&p0), 0.0);
    }

    #[test]
    fn cyclotron_si_electron_at_10_tesla() {
        // Independent arithmetic oracle e*B/mass for the stated inputs.
        let e = 1.602e-19;
        let b = 10.0;
        let mass = 9.109e-31;
        let oracle = e * b / mass;
        let p = PhysicalParams::new(e, 1.054571817e-34, mass, 1e-12, 1e15, b).unwrap();
        assert_relative_eq!(cyclotron_frequency(&p), oracle, max_relative = 1e-14);
        // Rounded reference value 1.7588e12 rad/s within 1e8.
        assert!((cyclotron_frequency(&p) - 1.7588e12).abs() <= 1.0e8);
    }

    #[test]
    fn hall_parameter_products() {
        // omega_c = 2 realized as e=1, B=2, mass=1; tau = 0.5.
        let p = PhysicalParams::natural(0.5, 1.0, 2.0).unwrap();
        assert_eq!(hall_parameter(&p), 1.0);
        let p0 = PhysicalParams::natural(0.5, 1.0, 0.0).unwrap();
        assert_eq!(hall_parameter(&p0), 0.0);
        let p50 = PhysicalParams::natural(1.0, 1.0, 50.0).unwrap();
        assert_eq!(hall_parameter(&p50), 50.0);
    }

    #[test]
    fn magnetic_length_cases() {
        let p = PhysicalParams::natural(1.0, 1.0, 1.0).unwrap();
        assert_eq!(magnetic_length(&p).unwrap(), 1.0);
        let p4 = PhysicalParams::natural(1.0, 1.0, 4.0).unwrap();
        assert_eq!(magnetic_length(&p4).unwrap(), 0.5);
        let p0 = PhysicalParams::natural(1.0, 1.0, 0.0).unwrap();
        assert!(matches!(
            magnetic_length(&p0),
            Err(CoreError::ZeroFieldMagneticLength)
        ));
    }

    #[test]
    fn magnetic_length_si_10_tesla() {
        let p = PhysicalParams::new(
            si::ELEMENTARY_CHARGE,
            si::HBAR,
            si::ELECTRON_MASS,
            1e-12,
            1e15,
            10.0,
        )
        .unwrap();
        let oracle = (si::HBAR / (si::ELEMENTARY_CHARGE * 10.0)).sqrt();
        assert_relative_eq!(magnetic_length(&p).unwrap(), oracle, max_relative = 1e-14);
        assert!((magnetic_length(&p).unwrap() - 8.11e-9).abs() <= 1e-11);
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(PhysicalParams::new(0.0, 1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, 1.0, 1.0, -1.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, 1.0, 1.0, 1.0, f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn magnetic_length_squared_restores_hbar(
            b in 1e-6f64..1e6,
            e in 1e-3f64..1e3,
            hbar in 1e-3f64..1e3,
        ) {
            let p = PhysicalParams::new(e, hbar, 1.0, 1.0, 1.0, b).unwrap();
            let lb = magnetic_length(&p).unwrap();
            prop_assert!((lb * lb * e * b - hbar).abs() <= 4.0 * f64::EPSILON * hbar);
        }

        #[test]
        fn hall_parameter_linear_in_field_and_tau(
            b in 1e-6f64..1e3,
            tau in 1e-6f64..1e3,
        ) {
            let p = PhysicalParams::natural(tau, 1.0, b).unwrap();
            let p2b = p.with_b_field(2.0 * b);
            let p2t = p.with_tau(2.0 * tau);
            prop_assert!((hall_parameter(&p2b) - 2.0 * hall_parameter(&p)).abs()
                <= 1e-12 * hall_parameter(&p2b).abs());
            prop_assert!((hall_parameter(&p2t) - 2.0 * hall_parameter(&p)).abs()
                <= 1e-12 * hall_parameter(&p2t).abs());
        }

        #[test]
        fn unit_conversion_round_trips(
            e in 1e-20f64..1e-18,
            hbar in 1e-35f64..1e-33,
            mass in 1e-31f64..1e-29,
            tau in 1e-14f64..1e-10,
            density in 1e12f64..1e17,
            b in 0.0f64..100.0,
        ) {
            let scales = UnitScales::default();
            let p = PhysicalParams::new(e, hbar, mass, tau, density, b).unwrap();
            let back = scales.to_si(&scales.to_natural(&p));
            for (got, want) in [
                (back.e, p.e),
                (back.hbar, p.hbar),
                (back.mass, p.mass),
                (back.tau, p.tau),
                (back.density, p.density),
                (back.b_field, p.b_field),
            ] {
                if want == 0.0 {
                    prop_assert_eq!(got, 0.0);
                } else {
                    prop_assert!(((got - want) / want).abs() < 1e-12);
                }
            }
        }
    }
}
