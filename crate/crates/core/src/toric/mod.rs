//! Fans of toric orbifolds and the quotient singularities of their maximal cones.

mod fan;
mod quotient;

pub use fan::{validate_fan, Cone, Fan, FanValidation, FanViolation};
pub use quotient::{
    classify, classify_fan, cone_index, gorenstein_covector, is_gorenstein, is_isolated,
    quotient_action, resolution_status, Classification, ConeClassification, CyclicFactor, QuotientData,
    ResolutionStatus,
};
