//! Check assignments, the period-3 schedule, and code-level analysis.

pub mod checks;
pub mod params;
pub mod schedule;

pub use checks::{
    circle_square_checks, circle_square_paulis, ellison_style_checks, qubit_honeycomb_checks, require_conditions,
    validate_conditions, verify_circle_square_conditions, CheckAssignment, ConditionReport, Violation,
};
pub use params::{code_parameters, gauge_analysis, rate_formula, CodeParameters, GaugeReport};
pub use schedule::{
    boundary_check_product, expected_initial_isg, expected_plaquette, formed_plaquettes, measurement_order, run_schedule,
    run_schedule_with_order, unformed_plaquette, RoundRecord, Trace, INIT_ROUNDS,
};
