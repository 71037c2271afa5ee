//! Kripke semantics for minimal, intuitionistic and classical propositional
//! logic, strict-tolerant inference and metainference, and bounded
//! countermodel search.

pub mod consequence;
pub mod error;
pub mod formula;
pub mod model;
pub mod parse;
pub mod properties;
pub mod sample;
pub mod semantics;
pub mod suite;

pub use error::{Error, ParseError};
pub use formula::{Atom, Formula};
pub use consequence::{Bound, Checker, Mode, Payload, Query, Verdict};
pub use model::{Interpretation, ModelKind, Relation, WorldSet};
pub use semantics::{Inference, Metainference, Semantics};
