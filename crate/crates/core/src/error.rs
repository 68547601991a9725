use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A probability-like parameter fell outside its allowed range.
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    RowNotStochastic {
        row: String,
        sum: f64,
    },
    NegativeEntry {
        row: String,
        index: usize,
        value: f64,
    },
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    DuplicateLabel(String),
    EmptyAlphabet,
    LabelMismatch,
    WeightsNotNormalized {
        sum: f64,
    },
    ValueOutOfRange {
        value: f64,
    },
    ZeroBudget,
    InvalidFunctional(String),
    InvalidSign(char),
    OutputCapExceeded {
        outputs: usize,
        cap: usize,
    },
    AtomCapExceeded {
        atoms: usize,
        cap: usize,
    },
    SolverIterationCap {
        iterations: usize,
    },
    DepthTooLarge {
        n: usize,
        max: usize,
    },
    InfoSetMismatch(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfRange {
                what,
                value,
                min,
                max,
            } => {
                write!(f, "{what} = {value} is outside [{min}, {max}]")
            }
            Error::RowNotStochastic { row, sum } => {
                write!(f, "{row} sums to {sum}, expected 1")
            }
            Error::NegativeEntry { row, index, value } => {
                write!(f, "{row}[{index}] = {value} is negative")
            }
            Error::LengthMismatch {
                what,
                expected,
                found,
            } => {
                write!(f, "{what} has length {found}, expected {expected}")
            }
            Error::DuplicateLabel(l) => write!(f, "duplicate output label {l:?}"),
            Error::EmptyAlphabet => f.write_str("output alphabet is empty"),
            Error::LabelMismatch => {
                f.write_str("kernel input labels do not match the channel outputs")
            }
            Error::WeightsNotNormalized { sum } => {
                write!(f, "atom weights sum to {sum}, expected 1")
            }
            Error::ValueOutOfRange { value } => write!(f, "atom value {value} is outside [-1, 1]"),
            Error::ZeroBudget => f.write_str("quantization budget must be at least 1"),
            Error::InvalidFunctional(msg) => write!(f, "invalid functional: {msg}"),
            Error::InvalidSign(c) => write!(f, "invalid sign {c:?}, expected '+' or '-'"),
            Error::OutputCapExceeded { outputs, cap } => {
                write!(f, "transform needs {outputs} outputs, cap is {cap}")
            }
            Error::AtomCapExceeded { atoms, cap } => {
                write!(f, "exact synthesis needs {atoms} atoms, cap is {cap}")
            }
            Error::SolverIterationCap { iterations } => {
                write!(f, "feasibility solver stopped after {iterations} pivots")
            }
            Error::DepthTooLarge { n, max } => write!(f, "depth {n} exceeds the cap of {max}"),
            Error::InfoSetMismatch(what) => write!(f, "information sets differ in {what}"),
        }
    }
}

impl core::error::Error for Error {}
