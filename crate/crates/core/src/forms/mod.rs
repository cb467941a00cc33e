//! Differential-geometric layer: hermitian metrics on the twisting sheaves
//! over the two standard affine charts, curvature and character forms,
//! second fundamental forms of metrized exact sequences, and the secondary
//! (transgressed) classes obtained by pushing a degenerating family on
//! X × C against log|t|².

pub mod bott_chern;
pub mod bundle;
pub mod expr;
pub mod grid;
pub mod sequence;

pub use bott_chern::{
    bott_chern, bott_chern_with_cutoff, ddc_metric_change_residual, metric_change_ch,
    BottChernResult, FamilyChoice, MetricChangeResult,
};
pub use bundle::{
    chern_forms, curvature, integrate, poly_to_expr, ChartId, ChernForms, FormGrid, HermBundle,
};
pub use expr::CExpr;
pub use grid::{d_z_fd, d_zbar_fd, ddc_subsample, laplacian_zzbar, ChartGrid, RadialLogQuad};
pub use sequence::{induced_metrics, second_fundamental_form, ExactSeqData, SecondFundamentalForm};
