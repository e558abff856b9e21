use serde::{Deserialize, Serialize};

use crate::error::{require_at_least, ModelError, Result};

/// One exponentially growing block of research effort, `initial · e^(r t)`.
///
/// Annual figures are stored as multipliers; integration uses the continuous
/// rate `r = ln(multiplier)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffortComponent {
    pub initial: f64,
    pub annual_multiplier: f64,
}

impl EffortComponent {
    pub const ZERO: Self = Self {
        initial: 0.0,
        annual_multiplier: 1.0,
    };

    pub fn new(initial: f64, annual_multiplier: f64) -> Self {
        Self {
            initial,
            annual_multiplier,
        }
    }

    /// Component growing at a continuous (log) rate.
    pub fn continuous(initial: f64, log_rate: f64) -> Self {
        Self::new(initial, log_rate.exp())
    }

    pub fn log_rate(&self) -> f64 {
        self.annual_multiplier.ln()
    }

    #[inline]
    pub fn at(&self, t: f64) -> f64 {
        if self.initial == 0.0 {
            return 0.0;
        }
        self.initial * (self.log_rate() * t).exp()
    }
}

/// Total research effort over time: a human block plus an AI block, passed
/// through a Cobb-Douglas cognitive share with the physical index held at 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResearcherSchedule {
    pub human: EffortComponent,
    pub ai: EffortComponent,
    /// Elasticity of effective effort with respect to cognitive effort (`γ`).
    pub cognitive_share: f64,
}

impl ResearcherSchedule {
    pub fn new(human: EffortComponent, ai: EffortComponent) -> Self {
        Self {
            human,
            ai,
            cognitive_share: 1.0,
        }
    }

    pub fn constant(effort: f64) -> Self {
        Self::new(EffortComponent::new(effort, 1.0), EffortComponent::ZERO)
    }

    /// `S(t) = e^(g t)` with `g` a continuous rate.
    pub fn continuous(log_rate: f64) -> Self {
        Self::new(EffortComponent::continuous(1.0, log_rate), EffortComponent::ZERO)
    }

    /// `S(t) = (1 + g)^t`.
    pub fn compound(growth: f64) -> Self {
        Self::new(EffortComponent::new(1.0, 1.0 + growth), EffortComponent::ZERO)
    }

    pub fn with_cognitive_share(mut self, gamma: f64) -> Result<Self> {
        super::validate_gamma(gamma)?;
        self.cognitive_share = gamma;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        require_at_least("human.initial", self.human.initial, 0.0)?;
        require_at_least("ai.initial", self.ai.initial, 0.0)?;
        require_at_least("human.annual_multiplier", self.human.annual_multiplier, f64::MIN_POSITIVE)?;
        require_at_least("ai.annual_multiplier", self.ai.annual_multiplier, f64::MIN_POSITIVE)?;
        super::validate_gamma(self.cognitive_share)?;
        if self.human.initial + self.ai.initial <= 0.0 {
            return Err(ModelError::NonPositive {
                quantity: "effort",
                value: self.human.initial + self.ai.initial,
                time: 0.0,
            });
        }
        Ok(())
    }

    pub fn human_at(&self, t: f64) -> f64 {
        self.human.at(t)
    }

    pub fn ai_at(&self, t: f64) -> f64 {
        self.ai.at(t)
    }

    /// Cognitive effort, human plus AI.
    pub fn total_at(&self, t: f64) -> f64 {
        self.human.at(t) + self.ai.at(t)
    }

    /// Effort entering the idea production function.
    #[inline]
    pub fn effective_at(&self, t: f64) -> f64 {
        let total = self.total_at(t);
        if self.cognitive_share == 1.0 {
            total
        } else {
            total.powf(self.cognitive_share)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compound_and_continuous_agree() {
        let a = ResearcherSchedule::compound(0.04);
        let b = ResearcherSchedule::continuous(0.04f64.ln_1p());
        for t in [0.0, 1.0, 7.5, 10.0] {
            assert!((a.total_at(t) - b.total_at(t)).abs() < 1e-12);
        }
        assert!((a.total_at(10.0) - 1.04f64.powi(10)).abs() < 1e-12);
    }

    #[test]
    fn parity_doubles_effort() {
        let s = ResearcherSchedule::new(
            EffortComponent::new(1.0, 1.04),
            EffortComponent::new(1.0, 1.04),
        );
        for t in [0.0, 3.0, 10.0] {
            assert!((s.total_at(t) - 2.0 * 1.04f64.powf(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_empty_schedule() {
        let s = ResearcherSchedule::new(EffortComponent::ZERO, EffortComponent::ZERO);
        assert!(s.validate().is_err());
        assert!(ResearcherSchedule::constant(1.0).with_cognitive_share(0.0).is_err());
    }
}
