//! Totally real cubic fields, their sextic CM extensions by `zeta_3`, and orders.

pub mod algebra;
pub mod cubic;
pub mod order;
pub mod poly;
pub mod sextic;

pub use algebra::Algebra;
pub use cubic::{CubicField, FieldElement};
pub use order::{maximal_order, sextic_maximal_order, z_plus_2o, OrderBasis};
pub use poly::Poly;
pub use sextic::{SexticElement, SexticField};
