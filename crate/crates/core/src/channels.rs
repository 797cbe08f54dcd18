//! Decay channels: parent mass, product masses, threshold and mass gap.

use crate::error::{require_non_negative, Error, Result};
use crate::units::{ConstantsTable, Dimension, PhysQuantity};

#[derive(Debug, Clone, PartialEq)]
pub struct DecayChannel {
    name: String,
    parent_mass: PhysQuantity,
    product_masses: Vec<PhysQuantity>,
}

impl DecayChannel {
    /// Builds a channel, rejecting negative masses and channels that are
    /// closed (parent not heavier than the sum of its products).
    pub fn new(
        name: impl Into<String>,
        parent_mass: PhysQuantity,
        product_masses: Vec<PhysQuantity>,
    ) -> Result<Self> {
        let parent = require_non_negative("parent mass", parent_mass.expect(Dimension::ENERGY)?)?;
        if product_masses.is_empty() {
            return Err(Error::Config("decay channel needs at least one product".into()));
        }
        let mut threshold = 0.0;
        for (i, m) in product_masses.iter().enumerate() {
            threshold += require_non_negative(&format!("product mass #{i}"), m.expect(Dimension::ENERGY)?)?;
        }
        if parent <= threshold {
            return Err(Error::Config(format!(
                "decay is energetically forbidden: parent {parent} MeV <= threshold {threshold} MeV"
            )));
        }
        Ok(DecayChannel {
            name: name.into(),
            parent_mass,
            product_masses,
        })
    }

    /// Convenience constructor from bare MeV values.
    pub fn from_mev(name: impl Into<String>, parent_mev: f64, products_mev: &[f64]) -> Result<Self> {
        let products = products_mev
            .iter()
            .map(|&m| PhysQuantity::energy_mev(m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, PhysQuantity::energy_mev(parent_mev)?, products)
    }

    /// p → π⁰ e⁺ with reference masses.
    pub fn proton_to_pi0_positron() -> Self {
        let k = ConstantsTable::reference();
        DecayChannel {
            name: "p -> pi0 e+".to_string(),
            parent_mass: k.m_proton(),
            product_masses: vec![k.m_pi0(), k.m_electron()],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parent_mass(&self) -> PhysQuantity {
        self.parent_mass
    }

    pub fn product_masses(&self) -> &[PhysQuantity] {
        &self.product_masses
    }

    /// Sum of the product rest masses.
    pub fn threshold_energy(&self) -> PhysQuantity {
        let sum = self.product_masses.iter().map(PhysQuantity::magnitude).sum();
        PhysQuantity::canonical(sum, Dimension::ENERGY).expect("finite by construction")
    }

    /// Parent mass minus threshold; positive for any valid channel.
    pub fn mass_gap(&self) -> PhysQuantity {
        self.parent_mass
            .try_sub(self.threshold_energy())
            .expect("same dimension by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mev(q: PhysQuantity) -> f64 {
        q.expect(Dimension::ENERGY).unwrap()
    }

    #[test]
    fn proton_channel_threshold_and_gap() {
        let ch = DecayChannel::proton_to_pi0_positron();
        assert!((mev(ch.threshold_energy()) - 135.4878).abs() < 1e-9);
        assert!((mev(ch.mass_gap()) - 802.7842).abs() < 1e-9);
        let coeff = mev(ch.mass_gap()).sqrt();
        assert!((coeff - 28.33).abs() < 0.05, "{coeff}");
    }

    #[test]
    fn massless_products() {
        let ch = DecayChannel::from_mev("x -> gamma gamma", 135.0, &[0.0, 0.0]).unwrap();
        assert_eq!(mev(ch.threshold_energy()), 0.0);
        assert_eq!(mev(ch.mass_gap()), 135.0);
    }

    #[test]
    fn single_product() {
        let ch = DecayChannel::from_mev("one", 10.0, &[7.5]).unwrap();
        assert_eq!(mev(ch.threshold_energy()), 7.5);
    }

    #[test]
    fn gap_of_one_mev_above_threshold() {
        let ch = DecayChannel::from_mev("near", 3.25 + 1.0, &[1.25, 2.0]).unwrap();
        assert_eq!(mev(ch.mass_gap()), 1.0);
    }

    #[test]
    fn gap_scales_linearly() {
        let base = DecayChannel::proton_to_pi0_positron();
        let k = 3.0;
        let scaled = DecayChannel::from_mev("scaled", 938.272 * k, &[134.9768 * k, 0.511 * k]).unwrap();
        assert!((mev(scaled.mass_gap()) - k * mev(base.mass_gap())).abs() < 1e-9);
    }

    #[test]
    fn threshold_is_permutation_invariant() {
        let a = DecayChannel::from_mev("a", 2000.0, &[1.5, 400.25, 0.75, 93.0]).unwrap();
        let b = DecayChannel::from_mev("b", 2000.0, &[93.0, 0.75, 400.25, 1.5]).unwrap();
        assert_eq!(mev(a.threshold_energy()), mev(b.threshold_energy()));
    }

    #[test]
    fn gap_plus_threshold_is_parent() {
        let ch = DecayChannel::proton_to_pi0_positron();
        let total = ch.mass_gap().try_add(ch.threshold_energy()).unwrap();
        assert_eq!(mev(total), 938.272);
    }

    #[test]
    fn invalid_channels() {
        assert!(DecayChannel::from_mev("closed", 100.0, &[60.0, 40.0]).is_err());
        assert!(DecayChannel::from_mev("neg", 100.0, &[-1.0, 4.0]).is_err());
        assert!(DecayChannel::from_mev("empty", 100.0, &[]).is_err());
        let wrong_dim = DecayChannel::new(
            "time",
            PhysQuantity::seconds(1.0).unwrap(),
            vec![PhysQuantity::energy_mev(0.1).unwrap()],
        );
        assert!(matches!(wrong_dim, Err(Error::DimensionMismatch { .. })));
    }
}
