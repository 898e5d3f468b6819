//! Exact symbolic construction of the quantised orthosymplectic
//! superalgebra U_q[osp(m|n)] (m > 2, n even) in its vector
//! representation: Lax operator and R-matrices, the infinite family of
//! Casimir invariants C_l, and their eigenvalues on arbitrary highest
//! weight data, verified through independent computational paths.

pub mod laurent;
pub mod scalar;
pub mod rootdata;
pub mod report;
pub mod galgebra;
pub mod vecrep;
pub mod lax;
pub mod eigen;

pub use report::{Check, Report};
pub use rootdata::{AlgebraParams, RootSystem, Weight};
pub use scalar::QScalar;
