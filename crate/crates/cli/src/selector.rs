use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Context};
use bubblelab::elliptic::{EllipticContext, DEFAULT_DEPTH};
use bubblelab::surfaces::{
    chen_gackstatter_local, enneper, family_psi_mu, invert, lopez_with, plane, FourEndedFamilyParams, Immersion,
    Location,
};
use bubblelab::vec3::Vec3;
use num_complex::Complex64;

/// Nesting cap for `inverted:` prefixes.
const MAX_DEPTH: usize = 8;

/// A model named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelSelector {
    PsiMu,
    Lopez,
    Enneper,
    ChenGackstatter,
    Plane,
    Inverted(Box<ModelSelector>),
}

/// Parameters a selector needs to build its model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub mu: Option<f64>,
    pub a: f64,
    pub p: Vec3,
}

impl ModelSelector {
    pub fn needs_mu(&self) -> bool {
        match self {
            ModelSelector::PsiMu => true,
            ModelSelector::Inverted(inner) => inner.needs_mu(),
            _ => false,
        }
    }

    /// The innermost selector.
    pub fn base(&self) -> &ModelSelector {
        match self {
            ModelSelector::Inverted(inner) => inner.base(),
            other => other,
        }
    }

    pub fn is_inverted(&self) -> bool {
        matches!(self, ModelSelector::Inverted(_))
    }

    /// The μ → 0 limit of the four-ended family, which is the Lopez surface.
    pub fn limit(&self) -> Option<ModelSelector> {
        match self {
            ModelSelector::PsiMu => Some(ModelSelector::Lopez),
            ModelSelector::Inverted(inner) => inner.limit().map(|m| ModelSelector::Inverted(Box::new(m))),
            _ => None,
        }
    }

    /// Where the interesting point of the model sits: the Enneper end at ∞,
    /// the origin otherwise.
    pub fn default_location(&self) -> Location {
        match self.base() {
            ModelSelector::Enneper => Location::Infinity,
            _ => Location::Finite(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn build(&self, params: &ModelParams) -> anyhow::Result<Box<dyn Immersion>> {
        Ok(match self {
            ModelSelector::PsiMu => {
                let mu = params.mu.context("psi-mu needs --mu")?;
                let family = FourEndedFamilyParams {
                    a: Complex64::new(params.a, 0.0),
                    ..FourEndedFamilyParams::new(mu)
                };
                Box::new(family_psi_mu(family)?)
            }
            ModelSelector::Lopez => Box::new(lopez_with(Complex64::new(params.a, 0.0))),
            ModelSelector::Enneper => Box::new(enneper()),
            ModelSelector::Plane => Box::new(plane()),
            ModelSelector::ChenGackstatter => {
                let ctx = EllipticContext::square_lattice(DEFAULT_DEPTH)?;
                Box::new(chen_gackstatter_local(&ctx)?)
            }
            ModelSelector::Inverted(inner) => Box::new(invert(inner.build(params)?, params.p)),
        })
    }
}

impl FromStr for ModelSelector {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let mut depth = 0;
        let mut rest = s;
        while let Some(inner) = rest.strip_prefix("inverted:") {
            depth += 1;
            if depth > MAX_DEPTH {
                bail!("more than {MAX_DEPTH} nested inversions in {s:?}");
            }
            rest = inner;
        }
        let mut model = match rest {
            "psi-mu" => ModelSelector::PsiMu,
            "lopez" => ModelSelector::Lopez,
            "enneper" => ModelSelector::Enneper,
            "chen-gackstatter" => ModelSelector::ChenGackstatter,
            "plane" => ModelSelector::Plane,
            other => bail!(
                "unknown model {other:?}; expected psi-mu, lopez, enneper, chen-gackstatter, plane or inverted:<model>"
            ),
        };
        for _ in 0..depth {
            model = ModelSelector::Inverted(Box::new(model));
        }
        Ok(model)
    }
}

impl fmt::Display for ModelSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSelector::PsiMu => write!(f, "psi-mu"),
            ModelSelector::Lopez => write!(f, "lopez"),
            ModelSelector::Enneper => write!(f, "enneper"),
            ModelSelector::ChenGackstatter => write!(f, "chen-gackstatter"),
            ModelSelector::Plane => write!(f, "plane"),
            ModelSelector::Inverted(inner) => write!(f, "inverted:{inner}"),
        }
    }
}

/// `inf`, `re` or `re,im`.
pub fn parse_location(s: &str) -> anyhow::Result<Location> {
    let s = s.trim();
    if s == "inf" || s == "infinity" {
        return Ok(Location::Infinity);
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let (re, im) = match parts.as_slice() {
        [re] => (re.parse::<f64>()?, 0.0),
        [re, im] => (re.parse::<f64>()?, im.parse::<f64>()?),
        _ => bail!("bad location {s:?}; expected inf, x or x,y"),
    };
    if !(re.is_finite() && im.is_finite()) {
        bail!("location must be finite or inf, got {s:?}");
    }
    Ok(Location::Finite(Complex64::new(re, im)))
}

/// Three comma-separated reals.
pub fn parse_point(s: &str) -> anyhow::Result<Vec3> {
    let parts = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("bad point {s:?}"))?;
    match parts.as_slice() {
        [x, y, z] if parts.iter().all(|v| v.is_finite()) => Ok([*x, *y, *z]),
        _ => bail!("point must be three finite reals x,y,z, got {s:?}"),
    }
}
