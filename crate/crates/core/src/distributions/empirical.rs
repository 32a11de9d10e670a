use crate::error::{Error, Result};

/// Sorted nonnegative incomes with positive frequency weights.
///
/// The cumulative arrays are indexed by lattice point: entry `i` refers to
/// the `i` poorest units, so entry 0 is the empty group and entry `n` the
/// whole population. Upper shares are accumulated from the top so that
/// `1 − L` stays exact near `p = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSample {
    values: Vec<f64>,
    weights: Vec<f64>,
    total_weight: f64,
    mean: f64,
    /// Cumulative population share `c_i`.
    lattice: Vec<f64>,
    /// Population share above lattice point `i`, `1 − c_i`.
    upper_weight: Vec<f64>,
    /// Cumulative income share `L(c_i)`.
    lower_income: Vec<f64>,
    /// Income share above lattice point `i`, `1 − L(c_i)`.
    upper_income: Vec<f64>,
    unit_weights: bool,
}

impl EmpiricalSample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let weights = vec![1.0; values.len()];
        Self::with_weights(values, weights)
    }

    pub fn with_weights(values: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("empirical sample is empty".into()));
        }
        if values.len() != weights.len() {
            return Err(Error::InvalidParameter(format!(
                "{} values but {} weights",
                values.len(),
                weights.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "incomes must be finite and nonnegative, got {v}"
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w <= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "weights must be finite and positive, got {w}"
            )));
        }
        if values.iter().all(|v| *v == 0.0) {
            return Err(Error::InvalidParameter(
                "empirical sample needs at least one strictly positive income".into(),
            ));
        }

        let unit_weights = weights.iter().all(|w| *w == weights[0]);
        let mut pairs: Vec<(f64, f64)> = values.into_iter().zip(weights).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (values, weights): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();

        let n = values.len();
        let total_weight: f64 = weights.iter().sum();
        let total_income: f64 = values.iter().zip(&weights).map(|(x, w)| x * w).sum();
        let mean = total_income / total_weight;

        let mut lattice = vec![0.0; n + 1];
        let mut lower_income = vec![0.0; n + 1];
        let (mut cw, mut ci) = (0.0, 0.0);
        for i in 0..n {
            cw += weights[i];
            ci += weights[i] * values[i];
            lattice[i + 1] = cw / total_weight;
            lower_income[i + 1] = ci / total_income;
        }
        lattice[n] = 1.0;
        lower_income[n] = 1.0;

        let mut upper_weight = vec![0.0; n + 1];
        let mut upper_income = vec![0.0; n + 1];
        let (mut uw, mut ui) = (0.0, 0.0);
        for i in (0..n).rev() {
            uw += weights[i];
            ui += weights[i] * values[i];
            upper_weight[i] = uw / total_weight;
            upper_income[i] = ui / total_income;
        }
        upper_weight[0] = 1.0;
        upper_income[0] = 1.0;

        Ok(Self {
            values,
            weights,
            total_weight,
            mean,
            lattice,
            upper_weight,
            lower_income,
            upper_income,
            unit_weights,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Total weight `n_effective`.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// True when all weights are equal, in which case the sample behaves
    /// exactly like its unweighted counterpart.
    pub fn has_unit_weights(&self) -> bool {
        self.unit_weights
    }

    pub fn is_constant(&self) -> bool {
        self.values[0] == self.max()
    }

    pub fn lattice(&self) -> &[f64] {
        &self.lattice
    }

    pub(crate) fn upper_weight(&self) -> &[f64] {
        &self.upper_weight
    }

    pub(crate) fn lower_income(&self) -> &[f64] {
        &self.lower_income
    }

    pub(crate) fn upper_income(&self) -> &[f64] {
        &self.upper_income
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::with_weights(
            self.values.iter().map(|x| c * x).collect(),
            self.weights.clone(),
        )
    }

    /// Index of the unit whose lattice cell `(c_i, c_{i+1}]` contains `p`.
    fn cell(&self, p: f64) -> usize {
        let i = self.lattice[1..].partition_point(|&c| c < p);
        i.min(self.values.len() - 1)
    }

    pub fn quantile(&self, p: f64) -> f64 {
        self.values[self.cell(p)]
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let k = self.values.partition_point(|&v| v <= x);
        if k == self.values.len() {
            1.0
        } else {
            self.lattice[k]
        }
    }

    /// Piecewise-linear Lorenz curve through the lattice points.
    pub fn lorenz(&self, p: f64) -> f64 {
        let i = self.cell(p);
        let l = self.lower_income[i] + (p - self.lattice[i]) * self.values[i] / self.mean;
        l.clamp(0.0, 1.0)
    }

    pub fn upper_share(&self, p: f64) -> f64 {
        let i = self.cell(p);
        let u = self.upper_income[i + 1] + (self.lattice[i + 1] - p) * self.values[i] / self.mean;
        u.clamp(0.0, 1.0)
    }

    /// Mean income of the population mass ranked above `p`, accumulated
    /// directly from the values.
    pub fn upper_mean(&self, p: f64) -> f64 {
        let i = self.cell(p);
        let partial = (self.lattice[i + 1] - p) * self.total_weight;
        let mut mass = partial;
        let mut income = partial * self.values[i];
        for j in i + 1..self.values.len() {
            mass += self.weights[j];
            income += self.weights[j] * self.values[j];
        }
        income / mass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_values_with_weights() {
        let s = EmpiricalSample::with_weights(vec![3.0, 1.0], vec![1.0, 2.0]).unwrap();
        assert_eq!(s.values(), &[1.0, 3.0]);
        assert_eq!(s.weights(), &[2.0, 1.0]);
        assert!((s.mean() - 5.0 / 3.0).abs() < 1e-15);
        assert!(!s.has_unit_weights());
    }

    #[test]
    fn step_quantile_is_left_continuous() {
        let s = EmpiricalSample::new(vec![1.0, 3.0]).unwrap();
        assert_eq!(s.quantile(0.25), 1.0);
        assert_eq!(s.quantile(0.5), 1.0);
        assert_eq!(s.quantile(0.5000001), 3.0);
        assert_eq!(s.cdf(0.99), 0.0);
        assert_eq!(s.cdf(1.0), 0.5);
        assert_eq!(s.cdf(3.0), 1.0);
    }

    #[test]
    fn lorenz_two_point() {
        let s = EmpiricalSample::new(vec![1.0, 3.0]).unwrap();
        assert!((s.lorenz(0.5) - 0.25).abs() < 1e-15);
        assert!((s.lorenz(0.75) - 0.625).abs() < 1e-15);
        assert!((s.upper_share(0.75) - 0.375).abs() < 1e-15);
        assert_eq!(s.upper_mean(0.5), 3.0);
        assert_eq!(s.upper_mean(0.25), 7.0 / 3.0);
    }

    #[test]
    fn rejects_invalid_samples() {
        assert!(EmpiricalSample::new(vec![]).is_err());
        assert!(EmpiricalSample::new(vec![0.0, 0.0]).is_err());
        assert!(EmpiricalSample::new(vec![1.0, -1.0]).is_err());
        assert!(EmpiricalSample::new(vec![1.0, f64::NAN]).is_err());
        assert!(EmpiricalSample::with_weights(vec![1.0], vec![0.0]).is_err());
        assert!(EmpiricalSample::with_weights(vec![1.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn zero_incomes_allowed() {
        let s = EmpiricalSample::new(vec![0.0, 0.0, 6.0]).unwrap();
        assert_eq!(s.lorenz(0.5), 0.0);
        assert!((s.upper_share(0.9) - 0.3).abs() < 1e-15);
    }
}
