//! Inductive certification of the sandwich bounds, the rational criteria, and
//! certificate documents that can be checked again independently.

mod bounds;
mod certificate;
mod json;
mod stages;

pub use bounds::{Bound, CandidateBounds};
pub use certificate::{
    certify_property, reverify, Certificate, VerifyReport, WindowRecord, CERT_SCHEMA, WINDOW_STAGE,
};
pub use json::{
    certificate_from_json, certificate_from_str, certificate_to_json, certificate_to_string, outcome_to_json,
};
pub use stages::{
    covered_from, criterion_higher_turan, criterion_laguerre2, derived_ratio_bounds,
    verify_ratio_bounds, verify_u_bounds, verify_value_bounds, CertifyOptions, Condition,
    Criterion, CriterionStage, LaguerreMode, RatioStage, StepProof, StepRoute, UStage, ValueStage,
    CRITERION_STAGE, RATIO_STAGE, U_STAGE, VALUE_STAGE,
};
