//! Exact algebra of four-wave interactions in flat space: null frames,
//! the formal parametrix, polarization spaces, per-term asymptotics over
//! the derivative-order tables, the monomial dominance order, and the
//! leading-term verdicts for the tensor (einstein-type) and scalar
//! indicator functions, with an oscillatory-quadrature oracle.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod ext;
pub mod frame;
pub mod indicator;
pub mod monomial;
pub mod oscillatory;
pub mod plane_wave;
pub mod polspace;
pub mod ring;
pub mod terms;

pub use error::AsymError;
pub use frame::{build_frame_hierarchy, build_frame_numeric, FrameKind, Mode, NullFrame};
pub use indicator::{einstein_indicator_leading, scalar_indicator_leading, IndicatorVerdict};
pub use monomial::{AsymSum, CoeffClass, Monomial};
pub use plane_wave::{box_apply, q0_apply, PlaneWaveExpr};
pub use polspace::{pol_factor, pol_space, PolSpace, PolTensor};
pub use terms::{term_asymptotics, SOp, Shape, TermSpec};
