//! JSON descriptors for copulas and the objects they are built from.
//!
//! A copula descriptor is an object with a `"family"` tag and a `"params"`
//! object; combinators nest further descriptors under `"left"`/`"right"`
//! (glue), `"inner"` (survival) and `"outer"`/`"children"` (hierarchical).
//! The full schema is documented in `docs/descriptor-schema.md`.

use serde::{Deserialize, Serialize};

use crate::copula::{glue, survival, Copula, Node};
use crate::error::{Error, Result};
use crate::families::{
    self, DiagonalKind, DiagonalSection, Generator, GeneratorKind, HierarchicalDescriptor,
};
use crate::taildep::{LimitSchedule, TailDepFunction, TdfKind};

/// Generators are described by their family tag and parameter, e.g.
/// `{"kind": "clayton", "theta": 2.0}`.
pub type GeneratorDescriptor = GeneratorKind;

fn two() -> usize {
    2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimParams {
    #[serde(default = "two")]
    pub dim: usize,
}

impl Default for DimParams {
    fn default() -> Self {
        DimParams { dim: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct NoParams {}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArchimedeanParams {
    pub generator: GeneratorDescriptor,
    #[serde(default = "two")]
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaParams {
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TdfParams {
    pub tdf: TdfDescriptor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalParams {
    pub diagonal: DiagonalDescriptor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhoParams {
    pub rho: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlueParams {
    /// 1 or 2.
    pub axis: usize,
    pub split: f64,
}

/// The inner node of a hierarchical copula and the (one-based) leaves it
/// receives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChildDescriptor {
    pub leaves: [usize; 2],
    pub copula: CopulaDescriptor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CopulaDescriptor {
    Independence {
        #[serde(default)]
        params: DimParams,
    },
    Comonotone {
        #[serde(default)]
        params: DimParams,
    },
    Countermonotone {
        #[serde(default)]
        params: NoParams,
    },
    Archimedean { params: ArchimedeanParams },
    MarshallOlkin { params: AlphaParams },
    ExtremeValue { params: TdfParams },
    LowerExtremeValue { params: TdfParams },
    FredricksNelsen { params: DiagonalParams },
    Bertino { params: DiagonalParams },
    Semilinear { params: DiagonalParams },
    Gaussian { params: RhoParams },
    Glue { params: GlueParams, left: Box<CopulaDescriptor>, right: Box<CopulaDescriptor> },
    Survival {
        #[serde(default)]
        params: NoParams,
        inner: Box<CopulaDescriptor>,
    },
    Hierarchical {
        #[serde(default)]
        params: NoParams,
        outer: Box<CopulaDescriptor>,
        children: Vec<ChildDescriptor>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TdfDescriptor {
    Zero {
        #[serde(default = "two")]
        dim: usize,
    },
    Min {
        #[serde(default = "two")]
        dim: usize,
    },
    Clayton {
        alpha: f64,
        #[serde(default = "two")]
        dim: usize,
    },
    Fig1Parabola,
    Fig1Piecewise,
    /// Λ taken numerically as the limit of C(sw)/s.
    Estimated {
        copula: Box<CopulaDescriptor>,
        #[serde(default)]
        schedule: LimitSchedule,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DiagonalDescriptor {
    Power {
        p: f64,
        #[serde(default = "two")]
        dim: usize,
    },
    OfCopula { copula: Box<CopulaDescriptor> },
}

impl CopulaDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn build(&self) -> Result<Copula> {
        use CopulaDescriptor as D;
        match self {
            D::Independence { params } => Copula::independence(params.dim),
            D::Comonotone { params } => Copula::comonotone(params.dim),
            D::Countermonotone { .. } => Ok(Copula::countermonotone()),
            D::Archimedean { params } => {
                families::archimedean(Generator::new(params.generator)?, params.dim)
            }
            D::MarshallOlkin { params } => families::marshall_olkin(params.alpha),
            D::ExtremeValue { params } => families::ev_copula(params.tdf.build()?),
            D::LowerExtremeValue { params } => families::lower_ev_copula(params.tdf.build()?),
            D::FredricksNelsen { params } => families::fredricks_nelsen(params.diagonal.build()?),
            D::Bertino { params } => families::bertino(params.diagonal.build()?),
            D::Semilinear { params } => families::semilinear(params.diagonal.build()?),
            D::Gaussian { params } => families::gaussian(params.rho),
            D::Glue { params, left, right } => {
                glue(&left.build()?, &right.build()?, params.axis, params.split)
            }
            D::Survival { inner, .. } => survival(&inner.build()?),
            D::Hierarchical { outer, children, .. } => {
                let [child] = children.as_slice() else {
                    return Err(Error::param(format!(
                        "hierarchical descriptors take exactly one child, got {}",
                        children.len()
                    )));
                };
                let leaves = child.leaves;
                if leaves.iter().any(|&l| !(1..=3).contains(&l)) {
                    return Err(Error::param(format!("leaves are numbered 1..=3, got {leaves:?}")));
                }
                let h = HierarchicalDescriptor {
                    outer: bivariate_generator(outer)?,
                    inner: bivariate_generator(&child.copula)?,
                    inner_leaves: [leaves[0] - 1, leaves[1] - 1],
                };
                families::hierarchical(h)
            }
        }
    }
}

fn bivariate_generator(d: &CopulaDescriptor) -> Result<Generator> {
    match d {
        CopulaDescriptor::Archimedean { params } if params.dim == 2 => Generator::new(params.generator),
        CopulaDescriptor::Independence { params } if params.dim == 2 => {
            Ok(families::independence_generator())
        }
        _ => Err(Error::param("hierarchical nodes must be bivariate Archimedean copulas")),
    }
}

impl TdfDescriptor {
    pub fn build(&self) -> Result<TailDepFunction> {
        let check = |dim: usize| {
            if dim < 2 {
                Err(Error::param(format!("dimension must be at least 2, got {dim}")))
            } else {
                Ok(())
            }
        };
        Ok(match self {
            TdfDescriptor::Zero { dim } => {
                check(*dim)?;
                TailDepFunction::zero(*dim)
            }
            TdfDescriptor::Min { dim } => {
                check(*dim)?;
                TailDepFunction::min(*dim)
            }
            TdfDescriptor::Clayton { alpha, dim } => TailDepFunction::clayton(*alpha, *dim)?,
            TdfDescriptor::Fig1Parabola => TailDepFunction::fig1_parabola(),
            TdfDescriptor::Fig1Piecewise => TailDepFunction::fig1_piecewise(),
            TdfDescriptor::Estimated { copula, schedule } => {
                TailDepFunction::estimated(copula.build()?, schedule.validated()?)
            }
        })
    }
}

impl DiagonalDescriptor {
    pub fn build(&self) -> Result<DiagonalSection> {
        match self {
            DiagonalDescriptor::Power { p, dim } => DiagonalSection::power_in(*p, *dim),
            DiagonalDescriptor::OfCopula { copula } => Ok(DiagonalSection::of_copula(copula.build()?)),
        }
    }
}

impl Copula {
    /// The descriptor this copula can be rebuilt from. Copulas containing
    /// user-supplied functions have none.
    pub fn to_descriptor(&self) -> Result<CopulaDescriptor> {
        use CopulaDescriptor as D;
        let dim = self.dim();
        Ok(match &self.node {
            Node::Independence => D::Independence { params: DimParams { dim } },
            Node::Comonotone => D::Comonotone { params: DimParams { dim } },
            Node::Countermonotone => D::Countermonotone { params: NoParams {} },
            Node::Archimedean(g) => {
                D::Archimedean { params: ArchimedeanParams { generator: g.kind(), dim } }
            }
            Node::MarshallOlkin { alpha } => D::MarshallOlkin { params: AlphaParams { alpha: *alpha } },
            Node::ExtremeValue(t) => D::ExtremeValue { params: TdfParams { tdf: t.to_descriptor()? } },
            Node::LowerExtremeValue(t) => {
                D::LowerExtremeValue { params: TdfParams { tdf: t.to_descriptor()? } }
            }
            Node::FredricksNelsen(d) => {
                D::FredricksNelsen { params: DiagonalParams { diagonal: d.to_descriptor()? } }
            }
            Node::Bertino(d) => D::Bertino { params: DiagonalParams { diagonal: d.to_descriptor()? } },
            Node::Semilinear(d) => {
                D::Semilinear { params: DiagonalParams { diagonal: d.to_descriptor()? } }
            }
            Node::Gaussian { rho } => D::Gaussian { params: RhoParams { rho: *rho } },
            Node::Glue { axis, split, left, right } => D::Glue {
                params: GlueParams { axis: axis + 1, split: *split },
                left: Box::new(left.to_descriptor()?),
                right: Box::new(right.to_descriptor()?),
            },
            Node::Survival(inner) => {
                D::Survival { params: NoParams {}, inner: Box::new(inner.to_descriptor()?) }
            }
            Node::Hierarchical { outer, inner, leaves, .. } => D::Hierarchical {
                params: NoParams {},
                outer: Box::new(outer.to_descriptor()?),
                children: vec![ChildDescriptor {
                    leaves: [leaves[0] + 1, leaves[1] + 1],
                    copula: inner.to_descriptor()?,
                }],
            },
            Node::Custom(_) => return Err(Error::NotSerializable),
        })
    }
}

impl TailDepFunction {
    pub fn to_descriptor(&self) -> Result<TdfDescriptor> {
        let dim = self.dim();
        Ok(match &self.kind {
            TdfKind::Zero => TdfDescriptor::Zero { dim },
            TdfKind::Min => TdfDescriptor::Min { dim },
            TdfKind::Clayton { alpha } => TdfDescriptor::Clayton { alpha: *alpha, dim },
            TdfKind::Fig1Parabola => TdfDescriptor::Fig1Parabola,
            TdfKind::Fig1Piecewise => TdfDescriptor::Fig1Piecewise,
            TdfKind::Estimated { copula, schedule } => TdfDescriptor::Estimated {
                copula: Box::new(copula.to_descriptor()?),
                schedule: *schedule,
            },
            TdfKind::Lifted(_) | TdfKind::Custom(_) => return Err(Error::NotSerializable),
        })
    }
}

impl DiagonalSection {
    pub fn to_descriptor(&self) -> Result<DiagonalDescriptor> {
        match &self.kind {
            DiagonalKind::Power { p } => Ok(DiagonalDescriptor::Power { p: *p, dim: self.dim() }),
            DiagonalKind::OfCopula(c) => {
                Ok(DiagonalDescriptor::OfCopula { copula: Box::new(c.to_descriptor()?) })
            }
            DiagonalKind::Custom(_) => Err(Error::NotSerializable),
        }
    }
}
