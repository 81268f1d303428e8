//! One module per subcommand. Each parses its typed input, picks the base
//! ring from `--mode`, and fills a [`Report`].

use std::collections::BTreeMap;
use std::sync::Arc;

use lt_kernel::arith::{DomainRing, PAdicCtx, QuotCtx, QuotElem, SeriesJson, Topological};
use lt_kernel::local_factors::{MultChar, MultCharJson};
use lt_kernel::lubin_tate::FormalGroupLaw;
use lt_kernel::mellin::DiscFunction;
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::error::{CliError, Result};
use crate::report::Report;

pub mod coleman;
pub mod factors;
pub mod lt;
pub mod mellin;
pub mod period;
pub mod ratio;
pub mod selftest;
pub mod zeta;

/// Base rings a command can run over.
pub trait Base: DomainRing + Topological {}
impl<R: DomainRing + Topological> Base for R {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Rational,
    Padic,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Rational => "rational",
            Mode::Padic => "padic",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    pub mode: Mode,
    /// `N` of `Z/p^N` in p-adic mode.
    pub precision: u32,
    /// Overrides the truncation an input would otherwise use.
    pub trunc: Option<usize>,
}

impl Config {
    pub fn padic_ctx(&self, p: u64) -> Result<PAdicCtx> {
        Ok(PAdicCtx::new(p, self.precision)?)
    }
}

/// Truncation used when neither the input nor `--trunc` fixes one.
pub const DEFAULT_TRUNC: usize = 12;

pub fn parse<T: DeserializeOwned>(input: &Value) -> Result<T> {
    Ok(serde_json::from_value(input.clone())?)
}

/// Run a body generic over the base ring in the configured mode; `p` is the
/// prime of the p-adic context.
macro_rules! dispatch {
    ($cfg:expr, $p:expr, $f:ident ( $($arg:expr),* )) => {
        match $cfg.mode {
            $crate::commands::Mode::Rational => $f::<lt_kernel::arith::Q>(&(), $($arg),*),
            $crate::commands::Mode::Padic => {
                let ctx = $cfg.padic_ctx($p)?;
                $f::<lt_kernel::arith::Zp>(&ctx, $($arg),*)
            }
        }
    };
}
pub(crate) use dispatch;

pub fn run(command: &str, input: &Value, cfg: &Config) -> Result<Report> {
    match command {
        "lt" => lt::run(input, cfg),
        "mellin" => mellin::run(input, cfg),
        "factors" => factors::run(input, cfg),
        "zeta" => zeta::run(input, cfg),
        "period" => period::run(input, cfg),
        "ratio" => ratio::run(input, cfg),
        "coleman" => coleman::run(input, cfg),
        "selftest" => selftest::run(input, cfg),
        other => Err(CliError::Input(format!("unknown subcommand {other}"))),
    }
}

/// A disc function given either as a series or as Dirac masses `{"u": "b_u"}`.
pub fn disc_function<R: Base>(
    g: &Arc<FormalGroupLaw<R>>,
    series: Option<&SeriesJson>,
    dirac: Option<&BTreeMap<String, String>>,
) -> Result<DiscFunction<R>> {
    let ctx = g.base();
    match (series, dirac) {
        (Some(s), None) => {
            let s = s.to_series::<R>(ctx)?;
            if s.trunc() != g.trunc() {
                return Err(CliError::Input(format!("series truncation {} differs from {}", s.trunc(), g.trunc())));
            }
            Ok(DiscFunction::new(g, s))
        }
        (None, Some(masses)) => {
            let mut b = vec![R::zero(ctx); g.trunc() + 1];
            for (u, x) in masses {
                let u: usize = u.parse().map_err(|_| CliError::Input(format!("Dirac index {u:?} is not a natural number")))?;
                let slot = b
                    .get_mut(u)
                    .ok_or_else(|| CliError::Input(format!("Dirac mass at {u} exceeds truncation {}", g.trunc())))?;
                *slot = R::parse(ctx, x)?;
            }
            Ok(DiscFunction::from_dirac(g, &b))
        }
        _ => Err(CliError::Input("give exactly one of \"series\" and \"dirac\"".into())),
    }
}

/// Truncation of an optional series input, else `--trunc`, else the default.
pub fn trunc_of(cfg: &Config, series: Option<&SeriesJson>) -> usize {
    series.map(|s| s.trunc).or(cfg.trunc).unwrap_or(DEFAULT_TRUNC)
}

/// A character with `χ(ϖ)` moved into the cyclotomic value ring.
pub fn lift_char<R: Base>(ctx: &R::Ctx, ring: &QuotCtx<R>, j: &MultCharJson) -> Result<MultChar<QuotElem<R>>> {
    let m = MultChar::<R>::from_json(ctx, j)?;
    Ok(MultChar::new(m.unit().clone(), ring.embed(m.pi_value().clone())))
}
