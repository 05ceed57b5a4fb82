//! Computer algebra for finitely presented nonsymmetric monomial operads.
//!
//! * [`tree`]: tree monomials, composition, path sequences, divisibility.
//! * [`order`]: monomial orders on words and their path extension to trees.
//! * [`operad`]: presentations, normal-form enumeration, dimension counts,
//!   and the growth dichotomy checker.
//! * [`branch`]: single-branched monomials as indexed words and periods.
//! * [`algebra`]: monomial algebras and closed-form Hilbert series.
//! * [`constructions`]: algebra-to-operad constructions.
//! * [`series`]: generating series analysis (GK estimates, rational and
//!   holonomic fitting, zero runs).
//! * [`presets`]: named example presentations and series.

pub mod algebra;
pub mod arith;
pub mod automaton;
pub mod branch;
pub mod constructions;
pub mod dims;
pub mod operad;
pub mod order;
pub mod presets;
pub mod series;
pub mod stats;
pub mod tree;

pub use dims::{DimSeries, IndexKind};
pub use operad::{Engine, MonomialOperadPresentation, OperadError};
pub use order::{TreeOrder, TreePolynomial, WordOrder, WordOrderKind};
pub use tree::{Alphabet, GenId, PathSequence, TreeError, TreeMonomial};
