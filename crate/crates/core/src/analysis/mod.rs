//! Checks of structural results: exponent formulas, `*`-Capelli thresholds,
//! non-identity witnesses, codimension tables and direct-sum bounds.

mod exponent;
mod tables;
mod thresholds;

pub use exponent::{
    exponent_identities, star_exponent_simple, star_exponent_structural, star_exponent_ut, ExponentIdentity,
    SimplePart, WedderburnData,
};
pub use tables::{
    capelli_combination_check, capelli_ideal_growth, codim_table, codim_table_at, combination_fixtures,
    verify_direct_sum_bounds, Cell, CodimTable, CombinationEntry, CombinationReport, GrowthRow, SumBoundReport,
    SumBoundRow, Target,
};
pub use thresholds::{
    verify_capelli_thresholds, verify_simple_nonidentity, CapelliWitness, SimpleWitnesses, ThresholdCell,
    ThresholdReport,
};
