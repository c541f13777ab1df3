use crate::error::CertifyError;
use crate::exact::RationalFunction;
use crate::logexpr::LogExpr;

/// A candidate bound together with the index from which it is claimed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound<T> {
    pub expr: T,
    pub from: i64,
}

/// User-supplied bounds: `f < a_(n+1)/a_n < g`, `s < log a_n < S`,
/// `fu < u_n < gu`. Any of them may be absent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CandidateBounds {
    pub ratio_lower: Option<Bound<RationalFunction>>,
    pub ratio_upper: Option<Bound<RationalFunction>>,
    pub value_lower: Option<Bound<LogExpr>>,
    pub value_upper: Option<Bound<LogExpr>>,
    pub u_lower: Option<Bound<RationalFunction>>,
    pub u_upper: Option<Bound<RationalFunction>>,
}

fn need<'a, T>(b: &'a Option<Bound<T>>, name: &'static str) -> Result<&'a Bound<T>, CertifyError> {
    b.as_ref().ok_or(CertifyError::MissingBound(name))
}

impl CandidateBounds {
    pub fn ratio(&self) -> Result<(&Bound<RationalFunction>, &Bound<RationalFunction>), CertifyError> {
        Ok((need(&self.ratio_lower, "f")?, need(&self.ratio_upper, "g")?))
    }

    pub fn value(&self) -> Result<(&Bound<LogExpr>, &Bound<LogExpr>), CertifyError> {
        Ok((need(&self.value_lower, "s_log")?, need(&self.value_upper, "S_log")?))
    }

    pub fn u(&self) -> Result<(&Bound<RationalFunction>, &Bound<RationalFunction>), CertifyError> {
        Ok((need(&self.u_lower, "fu")?, need(&self.u_upper, "gu")?))
    }
}
