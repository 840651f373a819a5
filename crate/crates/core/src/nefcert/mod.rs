//! Interpolated curves, irreducibility certificates, and nefness and
//! base-point-freeness verdicts built from them.

pub mod bpf;
pub mod certificate;
pub mod interp;
pub mod irreducible;
pub mod linalg;
pub mod pipeline;
pub mod poly;

pub use bpf::{
    extend_bpf, pullback_bpf, reider_bpf, sum_bpf, weak_dp_nef, AdjointData, BpfVerdict,
    NefEvidence, ReiderRoute, ReiderVerdict, WeakDpVerdict,
};
pub use certificate::{certify_nef, member_components, NamedComponent, NefCertificate, Piece};
pub use interp::{
    build_system, interpolate, sample_config, solve_curve, Ambient, Axis, ConfigSpec, CurveWitness,
    InterpolationSystem, PointConfig, PointSpec,
};
pub use irreducible::{certify_irreducible, IrreducibilityReport, Verdict};
pub use poly::{BiPoly, UPoly};
pub use pipeline::{appendix_scenario, run_nef, NefRun, NefScenario, PieceSpec};
