//! Support library for the `mmretinex` binary: image file I/O, report
//! serialization, and the benchmark harness.

pub mod bench;
pub mod imgio;
pub mod report;

use mmretinex::Error as CoreError;

/// CLI failures, bucketed by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or flag values; exit code 1.
    #[error("{0}")]
    Usage(String),
    /// File system or codec trouble; exit code 2.
    #[error("{0}")]
    Io(String),
    /// The input image cannot be processed as requested; exit code 3.
    #[error("{0}")]
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            // Problems with the values the user put on the command line.
            CoreError::InvalidConfig(_) | CoreError::InvalidSigma(_) | CoreError::UnknownFamily(_) => {
                CliError::Usage(err.to_string())
            }
            // Everything else describes an input the pipeline cannot accept.
            _ => CliError::Unsupported(err.to_string()),
        }
    }
}

impl From<image::ImageError> for CliError {
    fn from(err: image::ImageError) -> Self {
        CliError::Io(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}
