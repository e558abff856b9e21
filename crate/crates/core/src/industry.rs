//! Industrial-explosion back-of-envelopes: experience curves, self-replicating
//! factories, robot economics, super-exponential leads and compound growth.

use serde::{Deserialize, Serialize};

use crate::error::{require_at_least, require_positive, ModelError, Result};

/// Wright's-law experience curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LearningCurve {
    /// Fractional cost decline per doubling of cumulative production.
    pub learning_rate: f64,
    pub base_cost: f64,
    pub base_cumulative: f64,
}

impl LearningCurve {
    pub fn new(learning_rate: f64) -> Result<Self> {
        let curve = Self {
            learning_rate,
            base_cost: 1.0,
            base_cumulative: 1.0,
        };
        curve.validate()?;
        Ok(curve)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.learning_rate) {
            return Err(ModelError::invalid(
                "learning_rate",
                format!("must lie in [0, 1), got {}", self.learning_rate),
            ));
        }
        require_positive("base_cost", self.base_cost)?;
        require_positive("base_cumulative", self.base_cumulative)
    }

    /// Unit cost once cumulative production reaches `cumulative`.
    pub fn cost_at(&self, cumulative: f64) -> Result<f64> {
        Ok(self.base_cost * learning_cost_ratio(self, cumulative / self.base_cumulative)?)
    }
}

/// `(1 - LR)^log2(m)`; fractional doublings allowed.
pub fn learning_cost_ratio(curve: &LearningCurve, cumulative_multiplier: f64) -> Result<f64> {
    curve.validate()?;
    require_at_least("cumulative_multiplier", cumulative_multiplier, 1.0)?;
    Ok((1.0 - curve.learning_rate).powf(cumulative_multiplier.log2()))
}

/// Self-replicating factory stock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReplicatorParams {
    /// Years for one unit to produce one more unit.
    pub production_period: f64,
    /// Fraction of the stock producing more stock, in (0, 1].
    pub reinvest_fraction: f64,
}

impl ReplicatorParams {
    pub fn validate(&self) -> Result<()> {
        require_positive("production_period", self.production_period)?;
        if !(self.reinvest_fraction > 0.0 && self.reinvest_fraction <= 1.0) {
            return Err(ModelError::invalid(
                "reinvest_fraction",
                format!("must lie in (0, 1], got {}", self.reinvest_fraction),
            ));
        }
        Ok(())
    }

    pub fn growth_per_period(&self) -> f64 {
        1.0 + self.reinvest_fraction
    }
}

pub fn replicator_doubling_time(params: &ReplicatorParams) -> Result<f64> {
    params.validate()?;
    if params.reinvest_fraction == 1.0 {
        return Ok(params.production_period);
    }
    Ok(params.production_period * std::f64::consts::LN_2 / params.reinvest_fraction.ln_1p())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobotEconomics {
    pub unit_cost: f64,
    /// Salary of the worker replaced, per year.
    pub replaced_salary: f64,
    /// Hours worked relative to one full-time employee.
    pub hours_multiple: f64,
    pub operating_cost: f64,
}

impl RobotEconomics {
    pub fn gross_revenue(&self) -> f64 {
        self.replaced_salary * self.hours_multiple
    }

    pub fn net_income(&self) -> f64 {
        self.gross_revenue() - self.operating_cost
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RobotReturns {
    /// Net annual income over unit cost.
    pub annual_return: f64,
    /// Months to recoup the unit cost; `None` when net income is not positive.
    pub payback_months: Option<f64>,
}

pub fn robot_returns(econ: &RobotEconomics) -> Result<RobotReturns> {
    require_positive("unit_cost", econ.unit_cost)?;
    require_at_least("replaced_salary", econ.replaced_salary, 0.0)?;
    require_at_least("hours_multiple", econ.hours_multiple, 0.0)?;
    require_at_least("operating_cost", econ.operating_cost, 0.0)?;
    let net = econ.net_income();
    Ok(RobotReturns {
        annual_return: net / econ.unit_cost,
        payback_months: (net > 0.0).then(|| 12.0 * econ.unit_cost / net),
    })
}

/// Two economies on the curve `E(t) = exp(t^n)`, one `c` ahead of the other.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeadRatioParams {
    pub exponent_n: f64,
    pub lead_c: f64,
    pub time_t: f64,
}

/// `exp((t + c)^n - t^n)`.
pub fn lead_ratio(params: &LeadRatioParams) -> Result<f64> {
    require_at_least("exponent_n", params.exponent_n, 1.0)?;
    require_at_least("lead_c", params.lead_c, 0.0)?;
    require_at_least("time_t", params.time_t, 0.0)?;
    let LeadRatioParams {
        exponent_n: n,
        lead_c: c,
        time_t: t,
    } = *params;
    Ok(((t + c).powf(n) - t.powf(n)).exp())
}

/// `(1 + rate)^years`.
pub fn compound_growth(rate: f64, years: f64) -> Result<f64> {
    if !(rate > -1.0) {
        return Err(ModelError::invalid("rate", format!("must be > -1, got {rate}")));
    }
    Ok((1.0 + rate).powf(years))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn learning_examples() {
        let curve = LearningCurve::new(0.2).unwrap();
        let r = learning_cost_ratio(&curve, 1e5).unwrap();
        assert!((r - 0.0246).abs() < 5e-4, "{r}");
        assert!((1.0 - r - 0.975).abs() < 1e-3);
        assert_eq!(learning_cost_ratio(&curve, 1.0).unwrap(), 1.0);
        assert!((learning_cost_ratio(&curve, 2.0).unwrap() - 0.8).abs() < 1e-15);
        assert!(learning_cost_ratio(&curve, 0.5).is_err());
        assert!(LearningCurve::new(1.0).is_err());
    }

    #[test]
    fn learning_curve_cost_at() {
        let curve = LearningCurve {
            learning_rate: 0.2,
            base_cost: 100.0,
            base_cumulative: 1e5,
        };
        assert!((curve.cost_at(2e5).unwrap() - 80.0).abs() < 1e-9);
    }

    #[test]
    fn replicator_examples() {
        let t = replicator_doubling_time(&ReplicatorParams {
            production_period: 2.0,
            reinvest_fraction: 0.75,
        })
        .unwrap();
        assert!((t - 2.48).abs() < 0.01, "{t}");
        let t = replicator_doubling_time(&ReplicatorParams {
            production_period: 3.7,
            reinvest_fraction: 1.0,
        })
        .unwrap();
        assert_eq!(t, 3.7);
        let t = replicator_doubling_time(&ReplicatorParams {
            production_period: 2.0,
            reinvest_fraction: 0.5,
        })
        .unwrap();
        assert!((t - 3.42).abs() < 0.01);
        assert!(replicator_doubling_time(&ReplicatorParams {
            production_period: 2.0,
            reinvest_fraction: 0.0,
        })
        .is_err());
    }

    #[test]
    fn robot_examples() {
        let r = robot_returns(&RobotEconomics {
            unit_cost: 100e3,
            replaced_salary: 50e3,
            hours_multiple: 5.0,
            operating_cost: 25e3,
        })
        .unwrap();
        assert!((r.annual_return - 2.25).abs() < 1e-12);
        let months = r.payback_months.unwrap();
        assert!((months - 5.333).abs() < 1e-3);

        let r = robot_returns(&RobotEconomics {
            unit_cost: 50e3,
            replaced_salary: 50e3,
            hours_multiple: 5.0,
            operating_cost: 25e3,
        })
        .unwrap();
        assert!((r.annual_return - 4.5).abs() < 1e-12);
        assert!((r.payback_months.unwrap() - 2.667).abs() < 1e-3);

        let r = robot_returns(&RobotEconomics {
            unit_cost: 50e3,
            replaced_salary: 50e3,
            hours_multiple: 5.0,
            operating_cost: 250e3,
        })
        .unwrap();
        assert_eq!(r.annual_return, 0.0);
        assert_eq!(r.payback_months, None);
    }

    #[test]
    fn lead_ratio_examples() {
        let at = |n, c, t| {
            lead_ratio(&LeadRatioParams {
                exponent_n: n,
                lead_c: c,
                time_t: t,
            })
            .unwrap()
        };
        assert!((at(2.0, 1.0, 1.0) / 3f64.exp() - 1.0).abs() < 1e-12);
        assert!((at(2.0, 1.0, 2.0) / 5f64.exp() - 1.0).abs() < 1e-12);
        for t in [0.0, 1.0, 10.0] {
            assert!((at(1.0, 0.7, t) / 0.7f64.exp() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn compound_examples() {
        assert!((compound_growth(0.01, 100.0).unwrap() - 2.7048).abs() < 1e-4);
        assert_eq!(compound_growth(0.0, 55.0).unwrap(), 1.0);
        let gap = compound_growth(0.03, 70.0).unwrap() / compound_growth(0.015, 70.0).unwrap();
        assert!((gap - 2.8).abs() < 0.01, "{gap}");
        assert!(compound_growth(-1.0, 1.0).is_err());
    }
}
