mod audit;
mod check;
mod run;
mod sweep;

pub use audit::cmd_audit;
pub use check::{cmd_check_regime, regime_verdict, EXIT_NO_REGIME};
pub use run::{cmd_run, exit_code, simulate, write_diagnostics_csv, RunReport, Simulation};
pub use sweep::{cartesian, cmd_sweep, sweep_rows, write_sweep_csv, SweepReport, SweepRow, THREADS_ENV};
