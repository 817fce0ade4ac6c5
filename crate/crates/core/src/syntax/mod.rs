//! Terms of the residuated-lattice language: parsing, rendering, evaluation,
//! hierarchy classification and bounded sequent consequence.

mod eval;
mod hierarchy;
mod parser;
mod sequent;
mod term;

pub use eval::{evaluate_term, Assignment, CompiledTerm};
pub(crate) use eval::Odometer;
pub use hierarchy::{classify_hierarchy, is_conuclear_equation, ConuclearTrace, HierarchyClass, LEVEL_CAP};
pub use parser::{parse, parse_equation, parse_formula_file, parse_statement};
pub use sequent::{sequent_consequence, ConsequenceReport};
pub use term::{Connective, Equation, Relation, Sequent, Statement, Term};

