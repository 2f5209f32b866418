//! Named right-hand sides with their local Lipschitz data.
//!
//! Bounds are for the max-norm box `{|v - v₀|_∞ ≤ A}`; with `R = |v₀|_∞ + A`
//! every entry's `M` and `L` follow from elementary estimates on that box.

use std::sync::Arc;

use crate::fode::{scalar_rhs, LipschitzBox, Rhs, VectorRhs};

/// Parameters an entry may read.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhsParams {
    pub lambda: f64,
    pub c: f64,
}

impl Default for RhsParams {
    fn default() -> Self {
        RhsParams {
            lambda: -1.0,
            c: 0.0,
        }
    }
}

pub struct RhsCatalogEntry {
    pub name: &'static str,
    pub dim: usize,
    pub description: &'static str,
    build: fn(RhsParams) -> Arc<dyn Rhs>,
    /// `(params, radius R = |v₀|_∞ + A) -> (L, M)`.
    lipschitz: fn(RhsParams, f64) -> (f64, f64),
}

impl RhsCatalogEntry {
    pub fn build(&self, params: RhsParams) -> Arc<dyn Rhs> {
        (self.build)(params)
    }

    /// Box data on `[0, t] × {|v - v₀|_∞ ≤ a}`.
    pub fn bounds(&self, params: RhsParams, v0: &[f64], a: f64, t: f64) -> LipschitzBox {
        let r = v0.iter().fold(0.0f64, |m, x| m.max(x.abs())) + a;
        let (l, m) = (self.lipschitz)(params, r);
        LipschitzBox { a, l, m, t }
    }
}

impl std::fmt::Debug for RhsCatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RhsCatalogEntry")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish()
    }
}

pub static CATALOG: &[RhsCatalogEntry] = &[
    RhsCatalogEntry {
        name: "zero",
        dim: 1,
        description: "f = 0",
        build: |_| scalar_rhs(|_, _| 0.0),
        lipschitz: |_, _| (0.0, 0.0),
    },
    RhsCatalogEntry {
        name: "identity",
        dim: 1,
        description: "f = v",
        build: |_| scalar_rhs(|_, v| v),
        lipschitz: |_, r| (1.0, r),
    },
    RhsCatalogEntry {
        name: "neg_identity",
        dim: 1,
        description: "f = -v (fractional relaxation)",
        build: |_| scalar_rhs(|_, v| -v),
        lipschitz: |_, r| (1.0, r),
    },
    RhsCatalogEntry {
        name: "linear",
        dim: 1,
        description: "f = lambda v + c",
        build: |p| scalar_rhs(move |_, v| p.lambda * v + p.c),
        lipschitz: |p, r| (p.lambda.abs(), p.lambda.abs() * r + p.c.abs()),
    },
    RhsCatalogEntry {
        name: "relax_forced",
        dim: 1,
        description: "f = 1 - v",
        build: |_| scalar_rhs(|_, v| 1.0 - v),
        lipschitz: |_, r| (1.0, 1.0 + r),
    },
    RhsCatalogEntry {
        name: "square",
        dim: 1,
        description: "f = v^2 (blows up in finite time for v0 > 0)",
        build: |_| scalar_rhs(|_, v| v * v),
        lipschitz: |_, r| (2.0 * r, r * r),
    },
    RhsCatalogEntry {
        name: "one_plus_square",
        dim: 1,
        description: "f = 1 + v^2",
        build: |_| scalar_rhs(|_, v| 1.0 + v * v),
        lipschitz: |_, r| (2.0 * r, 1.0 + r * r),
    },
    RhsCatalogEntry {
        name: "oscillator",
        dim: 2,
        description: "(q, p) -> (p, -q), the Hamiltonian flow of (p^2 + q^2)/2",
        build: |_| {
            Arc::new(VectorRhs {
                dim: 2,
                f: |_: f64, v: &[f64], out: &mut [f64]| {
                    out[0] = v[1];
                    out[1] = -v[0];
                },
            })
        },
        lipschitz: |_, r| (1.0, r),
    },
];

pub fn lookup(name: &str) -> Option<&'static RhsCatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

pub fn names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.name).collect()
}
