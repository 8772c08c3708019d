//! Loading quantales and Q-sets from files or builder expressions.

use std::fs;
use std::path::Path;

use qlab_core::builders::from_builder_name;
use qlab_core::text::{definition_kind, parse_qset, parse_quantale, DefinitionKind, QSetFile};
use qlab_core::Quantale;

use crate::Failure;

pub struct LoadedQuantale {
    pub source: String,
    pub quantale: Quantale,
    pub supplied_residual: Option<Vec<qlab_core::Elem>>,
}

pub enum Input {
    Quantale(LoadedQuantale),
    QSet { source: String, file: QSetFile },
}

/// Reads `arg` as a file if it exists, otherwise as a builder expression such
/// as `luk3` or `luk3xchain2`.
pub fn load(arg: &str) -> Result<Input, Failure> {
    let path = Path::new(arg);
    if !path.exists() {
        return match from_builder_name(arg) {
            Ok(q) => Ok(Input::Quantale(LoadedQuantale { source: arg.into(), quantale: q, supplied_residual: None })),
            Err(_) => Err(Failure::usage(format!("{arg}: no such file or quantale builder"))),
        };
    }
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{arg}: {e}")))?;
    match definition_kind(&text) {
        Some(DefinitionKind::Quantale) => {
            let f = parse_quantale(&text).map_err(|e| Failure::from_core(arg, e))?;
            Ok(Input::Quantale(LoadedQuantale {
                source: arg.into(),
                quantale: f.quantale,
                supplied_residual: f.supplied_residual,
            }))
        }
        Some(DefinitionKind::QSet) => {
            let file = parse_qset(&text).map_err(|e| Failure::from_core(arg, e))?;
            Ok(Input::QSet { source: arg.into(), file })
        }
        None => Err(Failure::usage(format!("{arg}: expected a `quantale` or `qset` definition"))),
    }
}

/// The quantale a Q-set file is declared over: a quantale loaded in the same
/// run with that name, or a builder expression.
pub fn resolve_over(over: &str, loaded: &[Quantale]) -> Result<Quantale, Failure> {
    if let Some(q) = loaded.iter().find(|q| q.name() == over) {
        return Ok(q.clone());
    }
    from_builder_name(over).map_err(|_| {
        Failure::usage(format!("unknown quantale `{over}`: pass its file before the Q-set or use a builder name"))
    })
}
