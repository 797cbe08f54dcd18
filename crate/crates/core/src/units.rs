//! Physical constants and dimension-checked quantities.
//!
//! Every magnitude is stored in canonical units: MeV for energy, seconds for
//! time and centimeters for length. A [`Dimension`] is the exponent vector
//! over those three base units, kept in half-integer steps so that square
//! roots of energies and times (the `√γ` and `√τ` factors) stay representable.

use std::fmt;
use std::str::FromStr;

use crate::error::{require_positive, Error, Result};

/// Exponents of (energy, time, length), each stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension {
    energy2: i8,
    time2: i8,
    length2: i8,
}

impl Dimension {
    const fn from_doubled(energy2: i8, time2: i8, length2: i8) -> Self {
        Dimension {
            energy2,
            time2,
            length2,
        }
    }

    pub const DIMENSIONLESS: Dimension = Dimension::from_doubled(0, 0, 0);
    pub const ENERGY: Dimension = Dimension::from_doubled(2, 0, 0);
    pub const TIME: Dimension = Dimension::from_doubled(0, 2, 0);
    pub const LENGTH: Dimension = Dimension::from_doubled(0, 0, 2);
    pub const SPEED: Dimension = Dimension::from_doubled(0, -2, 2);
    pub const INVERSE_TIME: Dimension = Dimension::from_doubled(0, -2, 0);
    pub const ENERGY_SQRT: Dimension = Dimension::from_doubled(1, 0, 0);
    pub const TIME_SQRT: Dimension = Dimension::from_doubled(0, 1, 0);
    /// Energy times time, the dimension of ℏ.
    pub const ACTION: Dimension = Dimension::from_doubled(2, 2, 0);

    fn compose(self, other: Dimension, sign: i8) -> Dimension {
        Dimension::from_doubled(
            self.energy2 + sign * other.energy2,
            self.time2 + sign * other.time2,
            self.length2 + sign * other.length2,
        )
    }

    fn halved(self) -> Option<Dimension> {
        let even = |x: i8| x % 2 == 0;
        if even(self.energy2) && even(self.time2) && even(self.length2) {
            Some(Dimension::from_doubled(
                self.energy2 / 2,
                self.time2 / 2,
                self.length2 / 2,
            ))
        } else {
            None
        }
    }

    fn name(self) -> Option<&'static str> {
        Some(match self {
            Dimension::DIMENSIONLESS => "Dimensionless",
            Dimension::ENERGY => "Energy",
            Dimension::TIME => "Time",
            Dimension::LENGTH => "Length",
            Dimension::SPEED => "Speed",
            Dimension::INVERSE_TIME => "InverseTime",
            Dimension::ENERGY_SQRT => "EnergySqrt",
            Dimension::TIME_SQRT => "TimeSqrt",
            Dimension::ACTION => "Action",
            _ => return None,
        })
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = self.name() {
            return f.write_str(name);
        }
        let mut parts = Vec::new();
        for (sym, e2) in [("MeV", self.energy2), ("s", self.time2), ("cm", self.length2)] {
            if e2 != 0 {
                parts.push(format!("{sym}^{}", f64::from(e2) / 2.0));
            }
        }
        f.write_str(&parts.join(" "))
    }
}

/// Speed of light in cm/s (exact by definition of the metre).
pub const SPEED_OF_LIGHT_CM_PER_S: f64 = 2.997_924_58e10;
/// Julian year in seconds.
pub const JULIAN_YEAR_S: f64 = 3.155_76e7;
/// Reduced Planck constant in MeV·s.
pub const HBAR_MEV_S: f64 = 6.582_12e-22;

/// Named units accepted by [`PhysQuantity::new`] and [`convert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    EV,
    KeV,
    MeV,
    GeV,
    TeV,
    Second,
    Nanosecond,
    Year,
    Femtometer,
    Centimeter,
    Meter,
    CmPerSecond,
    MPerSecond,
    /// Speed as a fraction of the speed of light.
    SpeedOfLight,
    InverseSecond,
    Dimensionless,
}

impl Unit {
    pub fn dimension(self) -> Dimension {
        use Unit::*;
        match self {
            EV | KeV | MeV | GeV | TeV => Dimension::ENERGY,
            Second | Nanosecond | Year => Dimension::TIME,
            Femtometer | Centimeter | Meter => Dimension::LENGTH,
            CmPerSecond | MPerSecond | SpeedOfLight => Dimension::SPEED,
            InverseSecond => Dimension::INVERSE_TIME,
            Dimensionless => Dimension::DIMENSIONLESS,
        }
    }

    /// Size of one of this unit in canonical units.
    pub fn factor(self) -> f64 {
        use Unit::*;
        match self {
            EV => 1e-6,
            KeV => 1e-3,
            MeV => 1.0,
            GeV => 1e3,
            TeV => 1e6,
            Second => 1.0,
            Nanosecond => 1e-9,
            Year => JULIAN_YEAR_S,
            Femtometer => 1e-13,
            Centimeter => 1.0,
            Meter => 100.0,
            CmPerSecond => 1.0,
            MPerSecond => 100.0,
            SpeedOfLight => SPEED_OF_LIGHT_CM_PER_S,
            InverseSecond => 1.0,
            Dimensionless => 1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        use Unit::*;
        match self {
            EV => "eV",
            KeV => "keV",
            MeV => "MeV",
            GeV => "GeV",
            TeV => "TeV",
            Second => "s",
            Nanosecond => "ns",
            Year => "years",
            Femtometer => "fm",
            Centimeter => "cm",
            Meter => "m",
            CmPerSecond => "cm/s",
            MPerSecond => "m/s",
            SpeedOfLight => "c",
            InverseSecond => "1/s",
            Dimensionless => "1",
        }
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use Unit::*;
        Ok(match s {
            "eV" => EV,
            "keV" => KeV,
            "MeV" => MeV,
            "GeV" => GeV,
            "TeV" => TeV,
            "s" => Second,
            "ns" => Nanosecond,
            "yr" | "year" | "years" => Year,
            "fm" => Femtometer,
            "cm" => Centimeter,
            "m" => Meter,
            "cm/s" => CmPerSecond,
            "m/s" => MPerSecond,
            "c" => SpeedOfLight,
            "1/s" => InverseSecond,
            "1" | "" => Dimensionless,
            other => return Err(Error::UnknownUnit(other.to_string())),
        })
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A finite magnitude in canonical units tagged with its dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysQuantity {
    magnitude: f64,
    dim: Dimension,
}

impl PhysQuantity {
    /// `value` expressed in `unit`.
    pub fn new(value: f64, unit: Unit) -> Result<Self> {
        Self::canonical(value * unit.factor(), unit.dimension())
    }

    /// A magnitude already in canonical units.
    pub fn canonical(magnitude: f64, dim: Dimension) -> Result<Self> {
        if !magnitude.is_finite() {
            return Err(Error::NonFinite(dim.to_string()));
        }
        Ok(PhysQuantity { magnitude, dim })
    }

    pub fn energy_mev(value: f64) -> Result<Self> {
        Self::new(value, Unit::MeV)
    }

    pub fn seconds(value: f64) -> Result<Self> {
        Self::new(value, Unit::Second)
    }

    pub fn years(value: f64) -> Result<Self> {
        Self::new(value, Unit::Year)
    }

    pub fn centimeters(value: f64) -> Result<Self> {
        Self::new(value, Unit::Centimeter)
    }

    pub fn dimensionless(value: f64) -> Result<Self> {
        Self::canonical(value, Dimension::DIMENSIONLESS)
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    /// Canonical magnitude, provided the dimension is `expected`.
    pub fn expect(&self, expected: Dimension) -> Result<f64> {
        if self.dim == expected {
            Ok(self.magnitude)
        } else {
            Err(Error::DimensionMismatch {
                op: "expect",
                left: expected,
                right: self.dim,
            })
        }
    }

    /// Like [`expect`](Self::expect), also requiring a strictly positive value.
    pub fn expect_positive(&self, expected: Dimension, what: &str) -> Result<f64> {
        require_positive(what, self.expect(expected)?)
    }

    pub fn value_in(&self, unit: Unit) -> Result<f64> {
        convert(*self, unit)
    }

    pub fn try_add(self, rhs: PhysQuantity) -> Result<PhysQuantity> {
        self.same_dim("add", rhs)?;
        Self::canonical(self.magnitude + rhs.magnitude, self.dim)
    }

    pub fn try_sub(self, rhs: PhysQuantity) -> Result<PhysQuantity> {
        self.same_dim("sub", rhs)?;
        Self::canonical(self.magnitude - rhs.magnitude, self.dim)
    }

    pub fn try_mul(self, rhs: PhysQuantity) -> Result<PhysQuantity> {
        Self::canonical(self.magnitude * rhs.magnitude, self.dim.compose(rhs.dim, 1))
    }

    pub fn try_div(self, rhs: PhysQuantity) -> Result<PhysQuantity> {
        Self::canonical(self.magnitude / rhs.magnitude, self.dim.compose(rhs.dim, -1))
    }

    pub fn scale(self, k: f64) -> Result<PhysQuantity> {
        Self::canonical(self.magnitude * k, self.dim)
    }

    pub fn try_sqrt(self) -> Result<PhysQuantity> {
        let dim = self.dim.halved().ok_or(Error::DimensionMismatch {
            op: "sqrt",
            left: self.dim,
            right: self.dim,
        })?;
        if self.magnitude < 0.0 {
            return Err(Error::domain("sqrt argument", "finite and >= 0", self.magnitude));
        }
        Self::canonical(self.magnitude.sqrt(), dim)
    }

    fn same_dim(&self, op: &'static str, rhs: PhysQuantity) -> Result<()> {
        if self.dim == rhs.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                op,
                left: self.dim,
                right: rhs.dim,
            })
        }
    }
}

impl fmt::Display for PhysQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} [{}]", self.magnitude, self.dim)
    }
}

/// Magnitude of `q` expressed in `target`.
pub fn convert(q: PhysQuantity, target: Unit) -> Result<f64> {
    if q.dim != target.dimension() {
        return Err(Error::DimensionMismatch {
            op: "convert",
            left: q.dim,
            right: target.dimension(),
        });
    }
    Ok(q.magnitude / target.factor())
}

/// Reference constants and particle masses.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantsTable {
    hbar_mev_s: f64,
    c_cm_per_s: f64,
    year_s: f64,
    m_proton_mev: f64,
    m_pi0_mev: f64,
    m_electron_mev: f64,
}

static REFERENCE: ConstantsTable = ConstantsTable {
    hbar_mev_s: HBAR_MEV_S,
    c_cm_per_s: SPEED_OF_LIGHT_CM_PER_S,
    year_s: JULIAN_YEAR_S,
    m_proton_mev: 938.272,
    m_pi0_mev: 134.9768,
    m_electron_mev: 0.511_00,
};

impl ConstantsTable {
    pub fn reference() -> &'static ConstantsTable {
        &REFERENCE
    }

    pub fn hbar(&self) -> PhysQuantity {
        PhysQuantity {
            magnitude: self.hbar_mev_s,
            dim: Dimension::ACTION,
        }
    }

    pub fn hbar_mev_s(&self) -> f64 {
        self.hbar_mev_s
    }

    pub fn c(&self) -> PhysQuantity {
        PhysQuantity {
            magnitude: self.c_cm_per_s,
            dim: Dimension::SPEED,
        }
    }

    pub fn year(&self) -> PhysQuantity {
        PhysQuantity {
            magnitude: self.year_s,
            dim: Dimension::TIME,
        }
    }

    pub fn m_proton(&self) -> PhysQuantity {
        Self::mass(self.m_proton_mev)
    }

    pub fn m_pi0(&self) -> PhysQuantity {
        Self::mass(self.m_pi0_mev)
    }

    pub fn m_electron(&self) -> PhysQuantity {
        Self::mass(self.m_electron_mev)
    }

    fn mass(mev: f64) -> PhysQuantity {
        PhysQuantity {
            magnitude: mev,
            dim: Dimension::ENERGY,
        }
    }

    /// γ = ℏ/τ.
    pub fn width_from_lifetime(&self, tau: PhysQuantity) -> Result<PhysQuantity> {
        let tau = tau.expect_positive(Dimension::TIME, "lifetime")?;
        PhysQuantity::canonical(self.hbar_mev_s / tau, Dimension::ENERGY)
    }

    /// τ = ℏ/γ.
    pub fn lifetime_from_width(&self, gamma: PhysQuantity) -> Result<PhysQuantity> {
        let gamma = gamma.expect_positive(Dimension::ENERGY, "width")?;
        PhysQuantity::canonical(self.hbar_mev_s / gamma, Dimension::TIME)
    }
}

pub fn width_from_lifetime(tau: PhysQuantity) -> Result<PhysQuantity> {
    ConstantsTable::reference().width_from_lifetime(tau)
}

pub fn lifetime_from_width(gamma: PhysQuantity) -> Result<PhysQuantity> {
    ConstantsTable::reference().lifetime_from_width(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn width_of_hbar_lifetime_is_one_mev() {
        let g = width_from_lifetime(PhysQuantity::seconds(6.58212e-22).unwrap()).unwrap();
        assert!(rel(g.expect(Dimension::ENERGY).unwrap(), 1.0) < 1e-15);
    }

    #[test]
    fn proton_width_at_1e31_years() {
        let tau = PhysQuantity::years(1e31).unwrap();
        assert!(rel(tau.magnitude(), 3.15576e38) < 1e-15);
        let g = width_from_lifetime(tau).unwrap().magnitude();
        assert!(rel(g, 2.086e-60) < 1e-3, "{g}");
        let back = lifetime_from_width(PhysQuantity::energy_mev(g).unwrap()).unwrap();
        assert!(rel(back.magnitude(), 3.15576e38) < 1e-12);
    }

    #[test]
    fn lifetime_from_width_examples() {
        let t = lifetime_from_width(PhysQuantity::energy_mev(1.0).unwrap()).unwrap();
        assert_eq!(t.magnitude(), 6.58212e-22);
        let t = lifetime_from_width(PhysQuantity::energy_mev(2.0 * HBAR_MEV_S).unwrap()).unwrap();
        assert!(rel(t.magnitude(), 0.5) < 1e-15);
        let years = convert(
            lifetime_from_width(PhysQuantity::energy_mev(2.086e-60).unwrap()).unwrap(),
            Unit::Year,
        )
        .unwrap();
        assert!(rel(years, 1e31) < 1e-3);
    }

    #[test]
    fn width_rejects_bad_inputs() {
        assert!(matches!(
            width_from_lifetime(PhysQuantity::seconds(0.0).unwrap()),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            width_from_lifetime(PhysQuantity::seconds(-3.0).unwrap()),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            width_from_lifetime(PhysQuantity::energy_mev(1.0).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(lifetime_from_width(PhysQuantity::energy_mev(-1.0).unwrap()).is_err());
    }

    #[test]
    fn convert_examples() {
        assert_eq!(convert(PhysQuantity::years(1.0).unwrap(), Unit::Second).unwrap(), 3.15576e7);
        let gut = PhysQuantity::new(1e15, Unit::GeV).unwrap();
        assert_eq!(convert(gut, Unit::MeV).unwrap(), 1e18);
        assert_eq!(convert(PhysQuantity::centimeters(10.0).unwrap(), Unit::Meter).unwrap(), 0.1);
    }

    #[test]
    fn convert_names_both_dimensions() {
        let err = convert(PhysQuantity::years(1.0).unwrap(), Unit::MeV).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("Time") && msg.contains("Energy"), "{msg}");
    }

    #[test]
    fn energy_plus_time_is_rejected() {
        let e = PhysQuantity::energy_mev(1.0).unwrap();
        let t = PhysQuantity::seconds(1.0).unwrap();
        for _ in 0..3 {
            assert!(matches!(e.try_add(t), Err(Error::DimensionMismatch { op: "add", .. })));
            assert!(matches!(t.try_sub(e), Err(Error::DimensionMismatch { op: "sub", .. })));
        }
        assert!(e.try_add(e).is_ok());
    }

    #[test]
    fn composed_dimensions() {
        let e = PhysQuantity::energy_mev(2.0).unwrap();
        let t = PhysQuantity::seconds(3.0).unwrap();
        assert_eq!(e.try_mul(t).unwrap().dim(), Dimension::ACTION);
        let hbar = ConstantsTable::reference().hbar();
        assert_eq!(hbar.try_div(t).unwrap().dim(), Dimension::ENERGY);
        assert_eq!(PhysQuantity::centimeters(1.0).unwrap().try_div(t).unwrap().dim(), Dimension::SPEED);
        assert_eq!(
            PhysQuantity::dimensionless(1.0).unwrap().try_div(t).unwrap().dim(),
            Dimension::INVERSE_TIME
        );
        assert_eq!(e.try_sqrt().unwrap().dim(), Dimension::ENERGY_SQRT);
        assert!(e.try_sqrt().unwrap().try_sqrt().is_err());
    }

    #[test]
    fn non_finite_is_never_stored() {
        assert!(PhysQuantity::energy_mev(f64::NAN).is_err());
        assert!(PhysQuantity::seconds(f64::INFINITY).is_err());
        let huge = PhysQuantity::energy_mev(1e300).unwrap();
        assert!(huge.try_mul(huge).is_err());
    }

    #[test]
    fn unit_parsing() {
        for u in ["MeV", "GeV", "s", "years", "cm", "m", "c", "cm/s"] {
            let unit: Unit = u.parse().unwrap();
            assert_eq!(unit.symbol().parse::<Unit>().unwrap(), unit);
        }
        assert!("parsec".parse::<Unit>().is_err());
    }

    #[test]
    fn reference_constants_are_positive() {
        let k = ConstantsTable::reference();
        for q in [k.hbar(), k.c(), k.year(), k.m_proton(), k.m_pi0(), k.m_electron()] {
            assert!(q.magnitude() > 0.0);
        }
    }

    proptest! {
        #[test]
        fn width_lifetime_round_trip(log_tau in -30.0f64..40.0) {
            let tau = PhysQuantity::seconds(10f64.powf(log_tau)).unwrap();
            let back = lifetime_from_width(width_from_lifetime(tau).unwrap()).unwrap();
            prop_assert!(rel(back.magnitude(), tau.magnitude()) < 1e-12);
        }

        #[test]
        fn convert_round_trip(x in 1e-20f64..1e20, idx in 0usize..6) {
            let (from, to) = [
                (Unit::Year, Unit::Second),
                (Unit::GeV, Unit::MeV),
                (Unit::TeV, Unit::EV),
                (Unit::Centimeter, Unit::Meter),
                (Unit::Femtometer, Unit::Centimeter),
                (Unit::SpeedOfLight, Unit::MPerSecond),
            ][idx];
            let q = PhysQuantity::new(x, from).unwrap();
            let there = PhysQuantity::new(convert(q, to).unwrap(), to).unwrap();
            prop_assert!(rel(convert(there, from).unwrap(), x) < 1e-15);
        }
    }
}
