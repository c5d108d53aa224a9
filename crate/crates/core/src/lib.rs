//! Score-variable-threshold ROC curves and Neyman-Pearson optimal ROC
//! construction.
//!
//! An SVT ROC traces `(1 − F0(γ), 1 − F1(γ))` as the threshold `γ` on a
//! scalar score moves. Its slope at each point is the likelihood ratio
//! `f1(γ)/f0(γ)`, so the optimal (LRT) curve can be assembled from the SVT
//! curve alone: for each `η`, sum the rises and runs of every stretch whose
//! slope is at least `η`.
//!
//! ```
//! use lrtroc::{build_optimal_roc, is_concave, slope_profile, svt_roc, Distribution, MixtureComponent, ScoreModel};
//!
//! let f1 = Distribution::Mixture(vec![
//!     MixtureComponent { weight: 0.5, mu: -2.0, sigma: 1.0 },
//!     MixtureComponent { weight: 0.5, mu: 2.0, sigma: 1.0 },
//! ]);
//! let model = ScoreModel::new(ScoreModel::gaussian(0.0, 1.0), f1, 1e-9).unwrap();
//! let svt = svt_roc(&model, 501).unwrap();
//! assert!(!is_concave(&svt, 1e-9).unwrap().concave);
//! let lrt = build_optimal_roc(&svt, &slope_profile(&svt).unwrap()).unwrap();
//! assert!(lrt.auc() > svt.auc());
//! ```

// `!(a < b)` is used deliberately so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod io;
pub mod lrt;
pub mod model;
pub mod numeric;
pub mod oracle;
pub mod region;
pub mod roc;

pub use error::{Error, Result};
pub use lrt::{build_optimal_roc, build_optimal_roc_empirical, lrt_point, recover_regions, segments_at, EtaPoint, Segment};
pub use model::{Distribution, DistributionSpec, Hypothesis, MixtureComponent, ModelSpec, ScoreModel, ValidationReport};
pub use oracle::{
    dominance_check, lrt_regions_analytic, lrt_roc_at_pf, lrt_roc_direct, randomized_hull, DominanceReport, LrtOracle,
};
pub use region::DecisionRegion;
pub use roc::{
    empirical_svt_roc, is_concave, slope_profile, svt_roc, ConcavityReport, CurveKind, RocCurve, RocPoint,
    SlopeProfile,
};
