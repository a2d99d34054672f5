use std::fmt;

/// A vertex separator witnessing that some ordered pair is disconnected
/// once the separator is removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCut {
    pub separator: Vec<u32>,
    pub pair: (u32, u32),
}

/// An edge cut witnessing that some ordered pair is disconnected once the
/// listed edge instances are removed. Pairs repeat when multiple parallel
/// instances belong to the cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcCut {
    pub edges: Vec<(u32, u32)>,
    pub pair: (u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutWitness {
    Vertices(VertexCut),
    Arcs(ArcCut),
}

impl fmt::Display for CutWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutWitness::Vertices(c) => write!(
                f,
                "separator {:?} disconnects {} -> {}",
                c.separator, c.pair.0, c.pair.1
            ),
            CutWitness::Arcs(c) => write!(
                f,
                "edge cut {:?} disconnects {} -> {}",
                c.edges, c.pair.0, c.pair.1
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Error {
    /// Malformed input or violated precondition. CLI exit code 2.
    Input(String),
    /// A feasibility failure carrying the obstruction found. CLI exit code 1.
    Infeasible {
        message: String,
        witness: Option<CutWitness>,
    },
    /// A constructive routine exhausted its repair budget. CLI exit code 1.
    Construction(String),
    /// An invariant the code relies on was violated. CLI exit code 3.
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>, witness: Option<CutWitness>) -> Self {
        Error::Infeasible {
            message: msg.into(),
            witness,
        }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 2,
            Error::Infeasible { .. } | Error::Construction(_) => 1,
            Error::Internal(_) => 3,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(m) => write!(f, "input error: {m}"),
            Error::Infeasible { message, witness } => {
                write!(f, "infeasible: {message}")?;
                if let Some(w) = witness {
                    write!(f, " ({w})")?;
                }
                Ok(())
            }
            Error::Construction(m) => write!(f, "construction failure: {m}"),
            Error::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
