//! Categories enriched in a finite quantaloid, with Q-sets as the symmetric
//! `DQ`-categories: singletons, Cauchy completion and functor constructions.

pub mod category;
pub mod completion;
pub mod functor;
pub mod qset;
pub mod singleton;

pub use category::{Distributor, QCategory};
pub use completion::{cauchy_completion, is_cauchy_complete, Completion};
pub use qset::{enumerate_qsets, QSet};
pub use singleton::{singletons, Singleton};
