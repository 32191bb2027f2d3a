use std::sync::Arc;

use super::{archimedean, Generator, GeneratorKind};
use crate::copula::{validate_copula, Copula, Node};
use crate::error::{Error, Result};
use crate::grid::GridConfig;

/// Two-level nesting C(u) = C_outer(u_free, C_inner(u_a, u_b)) of bivariate
/// Archimedean copulas.
#[derive(Debug, Clone, PartialEq)]
pub struct HierarchicalDescriptor {
    pub outer: Generator,
    pub inner: Generator,
    /// Zero-based coordinates fed to the inner copula; the remaining
    /// coordinate goes to the outer copula directly.
    pub inner_leaves: [usize; 2],
}

impl HierarchicalDescriptor {
    /// The nesting C_outer(u₁, C_inner(u₂, u₃)).
    pub fn new(outer: Generator, inner: Generator) -> Self {
        HierarchicalDescriptor { outer, inner, inner_leaves: [1, 2] }
    }

    fn free_leaf(&self) -> Result<usize> {
        let [a, b] = self.inner_leaves;
        if a == b || a > 2 || b > 2 {
            return Err(Error::param(format!(
                "inner leaves must be two distinct indices in 0..3, got {:?}",
                self.inner_leaves
            )));
        }
        Ok(3 - a - b)
    }
}

/// Builds the nested 3-copula, auditing it at the default grid when no
/// sufficient nesting condition applies.
pub fn hierarchical(h: HierarchicalDescriptor) -> Result<Copula> {
    hierarchical_with(h, &GridConfig::default())
}

pub fn hierarchical_with(h: HierarchicalDescriptor, g: &GridConfig) -> Result<Copula> {
    let free = h.free_leaf()?;
    let outer = archimedean(h.outer, 2)?;
    let inner = archimedean(h.inner, 2)?;
    let copula = Copula::from_node(
        3,
        Node::Hierarchical {
            outer: Arc::new(outer),
            inner: Arc::new(inner),
            free,
            leaves: h.inner_leaves,
        },
    );
    match (h.outer.kind(), h.inner.kind()) {
        (GeneratorKind::Clayton { theta: to }, GeneratorKind::Clayton { theta: ti }) => {
            if to > ti {
                return Err(Error::NestingViolated(format!(
                    "Clayton nesting needs outer θ <= inner θ, got {to} > {ti}"
                )));
            }
        }
        _ => {
            let report = validate_copula(&copula, g);
            let failure = report.failures().next().map(|f| {
                format!("{} (worst violation {:e}) at {:?}", f.name, f.worst_violation, f.witness)
            });
            if let Some(msg) = failure {
                return Err(Error::AuditFailed(msg));
            }
        }
    }
    Ok(copula)
}
