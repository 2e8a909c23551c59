//! Numerical toolkit for central states on wreath products `Γ ≀ S_∞` of a finite
//! group with the infinite symmetric group.

pub mod characters;
pub mod cmatrix;
pub mod group;
pub mod io;
pub mod oracle;
pub mod perm;
pub mod report;
pub mod samples;
pub mod state;
pub mod verify;
pub mod wreath;

pub use characters::{Character, CharacterError, CharacterParams, WeightedRep};
pub use cmatrix::{ComplexMatrix, Eigen, MatrixError, C64};
pub use io::{IoError, Params};
pub use group::{GroupError, GroupTable, RepError, UnitaryRep};
pub use oracle::{oracle_eval, OracleConfig, OracleError, TensorModel};
pub use perm::{PermError, Permutation};
pub use report::CheckReport;
pub use state::{BlockUnitary, KmsReport, PmBlock, PsiState, RegBlock, SignLabel, StateError, StateParams};
pub use wreath::{ElementSyntax, GeneralizedCycle, WreathElement, WreathError};
pub use verify::{full_suite, StateFunction, SuiteConfig};
