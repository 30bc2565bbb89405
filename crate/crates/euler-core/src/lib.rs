//! Exact commutative algebra over finitely presented rings, with a layer
//! of naive-homotopy constructions on quadric hypersurfaces: points of the
//! variety `Q_{2n}` with explicit certificates, composition and inversion
//! of pointed classes, transfer of zero-dimensional ideals with
//! orientations, and reduction of formal sums to single classes.

pub mod cohomotopy;
pub mod error;
pub mod euler;
pub mod fold;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod quadric;
pub mod ring;
pub mod scalar;
pub mod segre;
pub mod witness;

pub use cohomotopy::{compose, inverse, moving_euler};
pub use error::{Error, Result};
pub use euler::{
    elementary_relation, lift_relation, merge, phi, reduce_to_single, segre_hom, split,
    weak_class, ElementaryMove, ElementaryWitness, EulerSum, EulerSymbol, FactorRegistry,
    PhiOutcome, ReduceOutcome, UnimodularRow,
};
pub use fold::{fold_map, jouanolou_device, FoldMap, JouanolouDevice};
pub use ideal::{ring_dimension, Dimension, Height, IdealHandle};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{poly_cmp, Polynomial};
pub use quadric::{move_point, Homotopy, MoveConfig, MoveOutcome, QuadricPoint};
pub use ring::{HomotopyContext, PresentedRing, RingElement, RingMap};
pub use scalar::{CoefficientField, Scalar};
pub use segre::{idempotent_lift, idempotent_lift_from_matrix, idempotent_lift_given, segre_class};
pub use witness::{provably_equal, EqualityStep, Ledger, Verdict};
