//! Bundle files, quadrangle files and reports. Every file carries
//! `"format": "gqprim/1"`; big integers are decimal strings.

mod bundle;
pub mod decimal;
mod gqfile;
mod report;

use std::path::Path;

use thiserror::Error;

pub use bundle::{load_bundle, parse_bundle, validate, Bundle, Maximal, RawBundle, RawMaximal};
pub use gqfile::{gq_to_json, load_gq, parse_gq, NamedQuadrangle};
pub use report::{emit_report, format_subdegrees, parse_report, ReportFormat};

pub const FORMAT: &str = "gqprim/1";

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Semantic { path: String, message: String },
}

impl LoadError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        LoadError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    fn syntax(e: serde_json::Error) -> Self {
        let mut message = e.to_string();
        if let Some(i) = message.rfind(" at line ") {
            message.truncate(i);
        }
        LoadError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}
