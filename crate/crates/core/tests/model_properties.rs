//! Cross-module property tests: positive semidefiniteness of the covariance
//! kernel and round-trips of the sweep encoding.

use jumpcast::model::{DerivedParams, Horizon};
use jumpcast::{SweepTable, gamma_sweep};
use nalgebra::DMatrix;
use proptest::prelude::*;

proptest! {
    /// The covariance kernel `second_moment(s,t) - mean(s)*mean(t)`
    /// = mu^2 * min(s,t) must be positive semidefinite on any grid.
    #[test]
    fn covariance_kernel_is_positive_semidefinite(
        beta in -2.0f64..2.0,
        mu in 0.05f64..3.0,
        raw_times in proptest::collection::vec(0.01f64..50.0, 4),
    ) {
        let d = DerivedParams::new(beta, mu).unwrap();
        let k = raw_times.len();
        let matrix = DMatrix::from_fn(k, k, |i, j| {
            let (s, t) = (raw_times[i], raw_times[j]);
            d.second_moment(s, t).unwrap()
                - d.mean_return(s).unwrap() * d.mean_return(t).unwrap()
        });
        let eigen = matrix.symmetric_eigen();
        let scale = raw_times.iter().fold(1.0f64, |a, &t| a.max(mu * mu * t));
        for &ev in eigen.eigenvalues.iter() {
            prop_assert!(ev >= -1e-9 * scale, "negative eigenvalue {ev}");
        }
    }

    /// Sweep tables survive the CSV encoding bit-exactly (well inside the
    /// 15-significant-digit contract).
    #[test]
    fn sweep_csv_round_trip(
        t in 0.5f64..20.0,
        window in 0.5f64..20.0,
        gamma_min in 0.01f64..2.0,
        extent in 0.5f64..10.0,
        step in 0.05f64..0.5,
    ) {
        let h = Horizon::new(t, t + window).unwrap();
        let table = gamma_sweep(&h, gamma_min, gamma_min + extent, step).unwrap();
        let csv = table.to_csv();
        let parsed = SweepTable::from_csv(&csv, h.t_obs, h.s_target).unwrap();
        prop_assert_eq!(parsed, table);
    }
}
