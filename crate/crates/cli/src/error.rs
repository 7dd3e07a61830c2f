use std::fmt;

/// Exit status for a check that ran and found violations.
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Domain(ultraword::Error),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, msg) = match self {
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::Parse(m) => ("parse", m.clone()),
            CliError::Domain(e) => ("domain", e.to_string()),
            CliError::Io(m) => ("io", m.clone()),
        };
        // Diagnostics are kept to a single line.
        write!(f, "error[{kind}]: {}", msg.replace('\n', " "))
    }
}

impl From<ultraword::Error> for CliError {
    fn from(e: ultraword::Error) -> Self {
        CliError::Domain(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
