use std::fmt;

use gradslice::models::ModelError;
use gradslice::recurrence::RecurrenceError;

pub const CONFIG: u8 = 2;
pub const DEGENERATE: u8 = 3;
pub const VERIFICATION: u8 = 4;
const INTERNAL: u8 = 1;

/// A failed run: the process exit code and the message for stderr.
#[derive(Debug)]
pub struct Exit {
    pub code: u8,
    pub message: String,
}

impl Exit {
    pub fn config(msg: impl fmt::Display) -> Self {
        Exit { code: CONFIG, message: msg.to_string() }
    }

    pub fn degenerate(msg: impl fmt::Display) -> Self {
        Exit { code: DEGENERATE, message: msg.to_string() }
    }

    pub fn verification(msg: impl fmt::Display) -> Self {
        Exit { code: VERIFICATION, message: msg.to_string() }
    }
}

impl fmt::Display for Exit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<RecurrenceError> for Exit {
    fn from(e: RecurrenceError) -> Self {
        match e {
            RecurrenceError::DegenerateBaseline { .. }
            | RecurrenceError::NoBaseline { .. }
            | RecurrenceError::Underdetermined
            | RecurrenceError::NonlinearEnergy(_) => {
                Exit::degenerate(e)
            }
            _ => Exit { code: INTERNAL, message: e.to_string() },
        }
    }
}

impl From<ModelError> for Exit {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::InvalidParameter(_) | ModelError::MissingParameter(_) | ModelError::IntegerMu(_) => Exit::config(e),
            ModelError::Recurrence(r) => r.into(),
            ModelError::IdenticallySatisfied => Exit::degenerate(e),
            _ => Exit { code: INTERNAL, message: e.to_string() },
        }
    }
}
