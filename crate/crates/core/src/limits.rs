//! Physical and resource limit calculators. SI units internally; inputs use
//! the unit named in each argument.

use serde::{Deserialize, Serialize};

use crate::error::{require_at_least, require_fraction, require_positive, ModelError, Result};

/// Every physical constant the calculators use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// W/m²
    pub solar_constant: f64,
    pub albedo: f64,
    /// W/(m² K⁴)
    pub stefan_boltzmann: f64,
    /// W
    pub solar_luminosity: f64,
    /// m/s
    pub light_speed: f64,
    /// km²
    pub earth_ocean_area: f64,
    /// kg, continental crust
    pub crust_mass: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            solar_constant: 1361.0,
            albedo: 0.3,
            stefan_boltzmann: 5.670e-8,
            solar_luminosity: 3.828e26,
            light_speed: 2.998e8,
            earth_ocean_area: 3.61e8,
            crust_mass: 2.171e22,
        }
    }
}

impl PhysicalConstants {
    pub fn validate(&self) -> Result<()> {
        require_positive("solar_constant", self.solar_constant)?;
        require_fraction("albedo", self.albedo)?;
        require_positive("stefan_boltzmann", self.stefan_boltzmann)?;
        require_positive("solar_luminosity", self.solar_luminosity)?;
        require_positive("light_speed", self.light_speed)?;
        require_positive("earth_ocean_area", self.earth_ocean_area)?;
        require_positive("crust_mass", self.crust_mass)
    }

    /// Globally averaged absorbed solar flux, `S (1 - albedo) / 4`.
    pub fn absorbed_solar_flux(&self) -> f64 {
        self.solar_constant * (1.0 - self.albedo) / 4.0
    }

    /// Globally averaged top-of-atmosphere solar flux, `S / 4`.
    pub fn incident_solar_flux(&self) -> f64 {
        self.solar_constant / 4.0
    }
}

/// Which solar flux "half as much power as the sunlight on Earth" refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolarReference {
    #[default]
    Absorbed,
    Incident,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalScenario {
    /// Non-solar power dissipated at the surface, W/m², globally averaged.
    pub extra_flux: f64,
}

impl ThermalScenario {
    pub fn none() -> Self {
        Self { extra_flux: 0.0 }
    }

    /// Extra flux equal to `fraction` of the chosen solar reference flux.
    pub fn fraction_of_solar(
        constants: &PhysicalConstants,
        fraction: f64,
        reference: SolarReference,
    ) -> Self {
        let base = match reference {
            SolarReference::Absorbed => constants.absorbed_solar_flux(),
            SolarReference::Incident => constants.incident_solar_flux(),
        };
        Self {
            extra_flux: fraction * base,
        }
    }
}

/// Effective temperature `((S(1-α)/4 + F) / σ)^(1/4)`, in kelvin.
pub fn equilibrium_temperature(constants: &PhysicalConstants, scenario: &ThermalScenario) -> Result<f64> {
    constants.validate()?;
    require_at_least("extra_flux", scenario.extra_flux, 0.0)?;
    let total = constants.absorbed_solar_flux() + scenario.extra_flux;
    Ok((total / constants.stefan_boltzmann).powf(0.25))
}

/// `T_e(F) - T_e(0)`.
pub fn warming(constants: &PhysicalConstants, scenario: &ThermalScenario) -> Result<f64> {
    if scenario.extra_flux == 0.0 {
        constants.validate()?;
        return Ok(0.0);
    }
    Ok(equilibrium_temperature(constants, scenario)?
        - equilibrium_temperature(constants, &ThermalScenario::none())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeEnergy {
    pub joules: f64,
    /// Seconds of total solar output carrying the same energy.
    pub solar_seconds: f64,
}

/// `γ - 1` without cancellation at small speeds.
fn lorentz_minus_one(beta: f64) -> f64 {
    let root = (1.0 - beta * beta).sqrt();
    beta * beta / (root * (1.0 + root))
}

/// Relativistic kinetic energy `(γ - 1) m c²` of a probe fleet.
pub fn probe_fleet_energy(
    constants: &PhysicalConstants,
    count: f64,
    unit_mass_kg: f64,
    speed_fraction: f64,
) -> Result<ProbeEnergy> {
    constants.validate()?;
    require_at_least("count", count, 0.0)?;
    require_at_least("unit_mass", unit_mass_kg, 0.0)?;
    if !(0.0..1.0).contains(&speed_fraction) {
        return Err(ModelError::invalid(
            "speed_fraction",
            format!("must lie in [0, 1), got {speed_fraction}"),
        ));
    }
    let c = constants.light_speed;
    let joules = count * unit_mass_kg * lorentz_minus_one(speed_fraction) * c * c;
    Ok(ProbeEnergy {
        joules,
        solar_seconds: joules / constants.solar_luminosity,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolarCapture {
    pub power_mw: f64,
    pub copper_tonnes: f64,
}

/// Power from `area_km2` at `flux_w_m2`, and copper needed at `copper_t_per_mw`.
pub fn solar_capture(area_km2: f64, flux_w_m2: f64, copper_t_per_mw: f64) -> Result<SolarCapture> {
    require_at_least("area_km2", area_km2, 0.0)?;
    require_at_least("flux_w_m2", flux_w_m2, 0.0)?;
    require_at_least("copper_t_per_mw", copper_t_per_mw, 0.0)?;
    let watts = area_km2 * 1e6 * flux_w_m2;
    let power_mw = watts / 1e6;
    Ok(SolarCapture {
        power_mw,
        copper_tonnes: power_mw * copper_t_per_mw,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrustalResource {
    pub tonnes: f64,
    pub requirement_tonnes: f64,
    pub sufficient: bool,
}

/// Recoverable tonnes of an element in a crust of `crust_mass_kg`.
pub fn crustal_resource(
    crust_mass_kg: f64,
    abundance_fraction: f64,
    recoverable_fraction: f64,
    requirement_tonnes: f64,
) -> Result<CrustalResource> {
    require_at_least("crust_mass", crust_mass_kg, 0.0)?;
    require_fraction("abundance_fraction", abundance_fraction)?;
    require_fraction("recoverable_fraction", recoverable_fraction)?;
    require_at_least("requirement_tonnes", requirement_tonnes, 0.0)?;
    let tonnes = crust_mass_kg * abundance_fraction * recoverable_fraction / 1000.0;
    Ok(CrustalResource {
        tonnes,
        requirement_tonnes,
        sufficient: tonnes >= requirement_tonnes,
    })
}

pub const DEFAULT_BYTES_PER_BRAIN: f64 = 1e14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StorageCapacity {
    pub bits: f64,
    pub exabytes: f64,
    /// Number of `bytes_per_brain`-sized synaptic maps that fit.
    pub brains: f64,
}

pub fn storage_capacity(mass_g: f64, density_bits_per_g: f64, bytes_per_brain: f64) -> Result<StorageCapacity> {
    require_at_least("mass_g", mass_g, 0.0)?;
    require_at_least("density_bits_per_g", density_bits_per_g, 0.0)?;
    require_positive("bytes_per_brain", bytes_per_brain)?;
    let bits = mass_g * density_bits_per_g;
    let bytes = bits / 8.0;
    Ok(StorageCapacity {
        bits,
        exabytes: bytes / 1e18,
        brains: bytes / bytes_per_brain,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FleetVolume {
    pub fleet_m3: f64,
    pub enclosure_m3: f64,
    pub fits: bool,
}

/// Total volume of `count` units of `unit_volume_cm3`, against a box of `enclosure_m` metres.
pub fn fleet_volume(count: f64, unit_volume_cm3: f64, enclosure_m: [f64; 3]) -> Result<FleetVolume> {
    require_at_least("count", count, 0.0)?;
    require_at_least("unit_volume_cm3", unit_volume_cm3, 0.0)?;
    for side in enclosure_m {
        require_at_least("enclosure", side, 0.0)?;
    }
    let fleet_m3 = count * unit_volume_cm3 * 1e-6;
    let enclosure_m3 = enclosure_m.iter().product();
    Ok(FleetVolume {
        fleet_m3,
        enclosure_m3,
        fits: fleet_m3 <= enclosure_m3,
    })
}

/// Multiple of current primary energy use available from a captured
/// fraction of the Sun's output at a given conversion efficiency.
pub fn energy_headroom(
    constants: &PhysicalConstants,
    current_primary_w: f64,
    capture_fraction: f64,
    conversion_efficiency: f64,
) -> Result<f64> {
    constants.validate()?;
    require_positive("current_primary_w", current_primary_w)?;
    require_fraction("capture_fraction", capture_fraction)?;
    require_fraction("conversion_efficiency", conversion_efficiency)?;
    Ok(constants.solar_luminosity * capture_fraction * conversion_efficiency / current_primary_w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn temperature_examples() {
        let k = PhysicalConstants::default();
        let t0 = equilibrium_temperature(&k, &ThermalScenario::none()).unwrap();
        assert!((t0 - 254.6).abs() < 0.1, "{t0}");
        let half = ThermalScenario::fraction_of_solar(&k, 0.5, SolarReference::Absorbed);
        let dt = warming(&k, &half).unwrap();
        assert!((dt - 25.0).abs() <= 3.0, "{dt}");
        assert_eq!(warming(&k, &ThermalScenario::none()).unwrap(), 0.0);
        let incident = ThermalScenario::fraction_of_solar(&k, 0.5, SolarReference::Incident);
        assert!(warming(&k, &incident).unwrap() > dt);
        assert!(equilibrium_temperature(&k, &ThermalScenario { extra_flux: -1.0 }).is_err());
    }

    #[test]
    fn probe_examples() {
        let k = PhysicalConstants::default();
        let fleet = probe_fleet_energy(&k, 1e10, 1.0, 0.99).unwrap();
        assert!(rel(fleet.joules, 5.47e27) < 0.01, "{}", fleet.joules);
        assert!(fleet.solar_seconds < 60.0 && (fleet.solar_seconds - 14.3).abs() < 0.1);
        let one = probe_fleet_energy(&k, 1.0, 1.0, 0.99).unwrap();
        assert!(rel(one.joules, 5.48e17) < 0.01);
        assert!(probe_fleet_energy(&k, 1.0, 1.0, 1.0).is_err());
        let slow = probe_fleet_energy(&k, 1.0, 1.0, 0.01).unwrap();
        let v = 0.01 * k.light_speed;
        assert!(rel(slow.joules, 0.5 * v * v) < 0.01);
    }

    #[test]
    fn solar_and_copper_examples() {
        let k = PhysicalConstants::default();
        let area = 0.02 * k.earth_ocean_area;
        assert!((area - 7.22e6).abs() < 1.0);
        let cap = solar_capture(area, 500.0, 5.5).unwrap();
        assert!(rel(cap.power_mw, 3.61e9) < 1e-9);
        assert!(rel(cap.copper_tonnes, 2.0e10) < 0.01);
        let none = solar_capture(0.0, 500.0, 5.5).unwrap();
        assert_eq!((none.power_mw, none.copper_tonnes), (0.0, 0.0));
    }

    #[test]
    fn crustal_examples() {
        let k = PhysicalConstants::default();
        let r = crustal_resource(k.crust_mass, 6e-5, 1.0, 2e10).unwrap();
        assert!(rel(r.tonnes, 1.3026e15) < 1e-3);
        let r = crustal_resource(k.crust_mass, 6e-5, 0.15, 2e10).unwrap();
        assert!(r.sufficient);
        // The smaller stated stock is also sufficient at 15%.
        assert!(crustal_resource(2.2e21, 6e-5, 0.15, 2e10).unwrap().sufficient);
        assert_eq!(crustal_resource(k.crust_mass, 0.0, 1.0, 1.0).unwrap().tonnes, 0.0);
        assert!(crustal_resource(k.crust_mass, 1.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn storage_examples() {
        let s = storage_capacity(1.0, 1e21, DEFAULT_BYTES_PER_BRAIN).unwrap();
        assert_eq!(s.bits, 1e21);
        assert!((s.exabytes - 125.0).abs() < 1e-9);
        let s = storage_capacity(2.0, 1e21, DEFAULT_BYTES_PER_BRAIN).unwrap();
        assert!(s.brains >= 1e6);
        assert_eq!(storage_capacity(0.0, 1e21, 1e14).unwrap().bits, 0.0);
    }

    #[test]
    fn fleet_examples() {
        let f = fleet_volume(1e10, 16.0, [76.0, 180.0, 19.0]).unwrap();
        assert!(rel(f.fleet_m3, 1.6e5) < 1e-12);
        assert!((f.enclosure_m3 - 259_920.0).abs() < 1e-6);
        assert!(f.fits);
        assert_eq!(fleet_volume(0.0, 16.0, [1.0, 1.0, 1.0]).unwrap().fleet_m3, 0.0);
    }

    #[test]
    fn headroom_examples() {
        let k = PhysicalConstants::default();
        let m = energy_headroom(&k, 1.9e13, 0.001, 0.1).unwrap();
        assert!(m > 1e9 && rel(m, 2.0e9) < 0.01);
        assert_eq!(energy_headroom(&k, 1.9e13, 0.0, 0.1).unwrap(), 0.0);
        let ocean = solar_capture(0.02 * k.earth_ocean_area, 500.0, 5.5).unwrap();
        assert!(100.0 * 1.9e13 < ocean.power_mw * 1e6);
    }
}
