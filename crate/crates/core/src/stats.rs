//! Streaming accumulators: a compensated sum and a mergeable
//! mean/variance tracker.
//!
//! Reductions over a batch always happen in two fixed stages: Welford
//! updates within fixed-size chunks, then a sequential merge of the chunk
//! partials in index order. The result is bit-identical no matter how many
//! workers produced the partials.

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.compensation += other.compensation;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Mergeable count/mean/variance accumulator.
///
/// The mean is reported from a compensated sum; the second central moment
/// is maintained with Welford updates and Chan merges.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
    sum: CompensatedSum,
}

impl RunningStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
        self.sum.add(x);
    }

    pub fn merge(&mut self, other: &RunningStats) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n1 = self.count as f64;
        let n2 = other.count as f64;
        let n = n1 + n2;
        let delta = other.mean - self.mean;
        self.mean += delta * (n2 / n);
        self.m2 += other.m2 + delta * delta * (n1 * n2 / n);
        self.count += other.count;
        self.sum.merge(&other.sum);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 { f64::NAN } else { self.sum.total() / self.count as f64 }
    }

    /// Unbiased sample variance; needs at least two observations.
    pub fn sample_variance(&self) -> f64 {
        if self.count < 2 { f64::NAN } else { self.m2 / (self.count - 1) as f64 }
    }

    pub fn sample_std_dev(&self) -> f64 {
        self.sample_variance().sqrt()
    }

    /// Standard error of the mean: sample standard deviation / sqrt(n).
    pub fn std_error_of_mean(&self) -> f64 {
        (self.sample_variance() / self.count as f64).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn matches_direct_formulas() {
        let data = [1.5, -0.25, 3.0, 2.25, 0.5, 1.0];
        let mut stats = RunningStats::new();
        for &x in &data {
            stats.push(x);
        }
        let n = data.len() as f64;
        let mean = data.iter().sum::<f64>() / n;
        let var = data.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        assert_relative_eq!(stats.mean(), mean, max_relative = 1e-14);
        assert_relative_eq!(stats.sample_variance(), var, max_relative = 1e-14);
        assert_relative_eq!(stats.std_error_of_mean(), (var / n).sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn merge_equals_sequential_push() {
        let data: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.173 - 8.0).collect();
        let mut whole = RunningStats::new();
        for &x in &data {
            whole.push(x);
        }
        // merge three uneven chunks in order
        let mut merged = RunningStats::new();
        for chunk in [&data[..100], &data[100..731], &data[731..]] {
            let mut part = RunningStats::new();
            for &x in chunk {
                part.push(x);
            }
            merged.merge(&part);
        }
        assert_eq!(merged.count(), whole.count());
        assert_relative_eq!(merged.mean(), whole.mean(), max_relative = 1e-13);
        assert_relative_eq!(merged.sample_variance(), whole.sample_variance(), max_relative = 1e-12);
    }

    #[test]
    fn merge_with_empty_is_identity() {
        let mut a = RunningStats::new();
        a.push(2.0);
        a.push(4.0);
        let before = (a.count(), a.mean(), a.sample_variance());
        a.merge(&RunningStats::new());
        assert_eq!(before, (a.count(), a.mean(), a.sample_variance()));

        let mut empty = RunningStats::new();
        empty.merge(&a);
        assert_eq!(empty.count(), 2);
        assert_eq!(empty.mean(), 3.0);
    }

    #[test]
    fn compensated_sum_survives_cancellation() {
        let mut sum = CompensatedSum::default();
        sum.add(1e16);
        for _ in 0..10 {
            sum.add(1.0);
        }
        sum.add(-1e16);
        assert_eq!(sum.total(), 10.0);
    }
}
