//! Runtime description of a coefficient domain and the series wire format.

use serde::{Deserialize, Serialize};

use super::{BaseRing, PAdicCtx, TruncatedSeries, Zp, Q};
use crate::error::ArithError;

/// Which base ring a computation runs over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode")]
pub enum CoeffDomain {
    #[serde(rename = "rational")]
    ExactRational,
    #[serde(rename = "padic")]
    FixedModulus {
        p: u64,
        #[serde(rename = "N")]
        n: u32,
    },
}

impl CoeffDomain {
    pub fn padic_ctx(&self) -> Result<PAdicCtx, ArithError> {
        match self {
            CoeffDomain::FixedModulus { p, n } => PAdicCtx::new(*p, *n),
            CoeffDomain::ExactRational => {
                Err(ArithError::Unsupported("exact rational domain has no p-adic context".into()))
            }
        }
    }
}

/// A base ring that can be named by a [`CoeffDomain`].
pub trait DomainRing: BaseRing {
    fn domain(ctx: &Self::Ctx) -> CoeffDomain;
}

impl DomainRing for Q {
    fn domain(_: &()) -> CoeffDomain {
        CoeffDomain::ExactRational
    }
}

impl DomainRing for Zp {
    fn domain(ctx: &PAdicCtx) -> CoeffDomain {
        CoeffDomain::FixedModulus { p: ctx.p(), n: ctx.cap() }
    }
}

/// `{"domain": …, "trunc": D, "coeffs": […]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub domain: CoeffDomain,
    pub trunc: usize,
    pub coeffs: Vec<String>,
}

impl SeriesJson {
    pub fn from_series<R: DomainRing>(s: &TruncatedSeries<R>) -> Self {
        SeriesJson {
            domain: R::domain(s.base_ctx()),
            trunc: s.trunc(),
            coeffs: s.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn to_series<R: DomainRing>(&self, ctx: &R::Ctx) -> Result<TruncatedSeries<R>, ArithError> {
        if self.domain != R::domain(ctx) {
            return Err(ArithError::Mismatch(format!(
                "series declares domain {:?}, expected {:?}",
                self.domain,
                R::domain(ctx)
            )));
        }
        if self.coeffs.len() > self.trunc + 1 {
            return Err(ArithError::Parse("more coefficients than the truncation allows".into()));
        }
        let coeffs = self.coeffs.iter().map(|s| R::parse(ctx, s)).collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries::new(ctx, self.trunc, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format() {
        let json = r#"{"domain":{"mode":"padic","p":5,"N":4},"trunc":2,"coeffs":["3","1/2"]}"#;
        let s: SeriesJson = serde_json::from_str(json).unwrap();
        let ctx = s.domain.padic_ctx().unwrap();
        let series = s.to_series::<Zp>(&ctx).unwrap();
        assert_eq!(series.coeff(1).residue(), &num_bigint::BigInt::from(313));
        assert!(s.to_series::<Q>(&()).is_err());
        let r: SeriesJson =
            serde_json::from_str(r#"{"domain":{"mode":"rational"},"trunc":1,"coeffs":["-2/4"]}"#).unwrap();
        let back = SeriesJson::from_series(&r.to_series::<Q>(&()).unwrap());
        assert_eq!(back.coeffs, vec!["-1/2".to_string(), "0".to_string()]);
    }
}
