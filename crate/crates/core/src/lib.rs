//! Exact combinatorial stratification atlas for unramified reductive
//! group data.
//!
//! Given a based root datum with Frobenius action and a minuscule
//! cocharacter μ, this crate computes the full index-level picture of the
//! associated special-fiber stratifications:
//!
//! * the Kottwitz set `B(G,μ)` with its dominance order, defects, Newton
//!   stratum dimensions and central-leaf dimensions (two independent
//!   enumeration routes, cross-checked);
//! * the parabolic quotient `ᴶW` with the zip closure order `⪯` and
//!   stratum dimensions, identified with the admissible-set avatar
//!   `EO(μ)` inside the extended affine Weyl group;
//! * σ-straight (minimal) strata, the Hodge-Newton decomposability test,
//!   and the stratum-to-class incidence map in the fully decomposable
//!   case.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`); nothing is floated
//! or rounded. See the `preset` module for the quaternionic, orthogonal
//! and Siegel configurations and the `atlas` module for assembled reports.

pub mod affine;
pub mod atlas;
pub mod document;
pub mod emit;
pub mod error;
pub mod exec;
pub mod kottwitz;
pub mod linalg;
pub mod preset;
pub mod root_datum;
pub mod weyl;

mod eo;
pub use eo::{identify_eo, minimal_eo, EOSide, EOStratum};

pub use error::{Error, Result};

/// Enumeration caps. `STRAT_ATLAS_CAP` overrides both at runtime.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    /// maximum Weyl group order to generate
    pub weyl: usize,
    /// maximum admissible-set / polytope-grid size
    pub enumeration: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            weyl: 10_000_000,
            enumeration: 10_000_000,
        }
    }
}

impl Caps {
    /// Default caps, overridden by the `STRAT_ATLAS_CAP` environment
    /// variable when it parses as a positive integer.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Ok(s) = std::env::var("STRAT_ATLAS_CAP") {
            if let Ok(n) = s.trim().parse::<usize>() {
                if n > 0 {
                    caps.weyl = n;
                    caps.enumeration = n;
                }
            }
        }
        caps
    }
}
