//! Braverman–Kazhdan combinatorics for maximal parabolics of split simple groups.
//!
//! The crate computes, with exact rational arithmetic, the datum `(s_k, Λ, L(d))`
//! of a maximal parabolic `P_ℓ`, the L-factor products `a_w`, `c_w`, `d` over the
//! minimal coset representatives of `W/W_M`, and the Eisenstein pole data they
//! control. The [`checks`] module verifies the combinatorial inequalities behind
//! the holomorphy statements exhaustively over the quotient.

pub mod appendix;
pub mod checks;
pub mod eisenstein;
pub mod error;
pub mod lfactor;
pub mod parabolic;
pub mod quotient;
pub mod rational;
pub mod report;
pub mod rootsystem;
pub mod words;

pub use checks::{CheckKind, CheckReport, CheckStatus};
pub use eisenstein::{eisenstein_poles, PoleReport};
pub use error::{Error, Result};
pub use lfactor::{LFactorProduct, PoleEntry, PoleLocus};
pub use parabolic::{LambdaEntry, LevelSet, LevelSets, ParabolicDatum, Profile};
pub use rational::Q;
pub use rootsystem::{CartanType, RootDatum, Series};
pub use words::{ReducedWord, Relation};
