//! JSON state and channel files.
//!
//! ```json
//! {"num_qubits": 1, "amps": [[0.6, 0.0], [0.0, 0.8]]}
//! {"pairs": [[[0.7071, 0], [0, 0], [0, 0], [0.7071, 0]]]}
//! ```
//!
//! Every complex number is a `[re, im]` pair.

use std::fs;
use std::path::Path;

use belldecomp::{Channel, ComplexAmp, EntangledPair, StateVector};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub num_qubits: usize,
    pub amps: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    pub pairs: Vec<[[f64; 2]; 4]>,
}

fn amp([re, im]: [f64; 2]) -> ComplexAmp {
    ComplexAmp::new(re, im)
}

fn pair_of(a: ComplexAmp) -> [f64; 2] {
    [a.re, a.im]
}

impl StateFile {
    pub fn to_state(&self) -> belldecomp::Result<StateVector> {
        StateVector::new(
            self.num_qubits,
            self.amps.iter().copied().map(amp).collect(),
        )
    }

    pub fn from_state(s: &StateVector) -> Self {
        Self {
            num_qubits: s.num_qubits(),
            amps: s.amps().iter().copied().map(pair_of).collect(),
        }
    }
}

impl ChannelFile {
    pub fn to_channel(&self) -> belldecomp::Result<Channel> {
        let pairs = self
            .pairs
            .iter()
            .map(|p| EntangledPair::new(p.map(amp)))
            .collect::<belldecomp::Result<Vec<_>>>()?;
        Channel::new(pairs)
    }

    pub fn from_channel(ch: &Channel) -> Self {
        Self {
            pairs: ch.pairs().iter().map(|p| p.amps().map(pair_of)).collect(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_err(path: &Path, message: impl ToString) -> CliError {
    CliError::Parse {
        path: path.to_path_buf(),
        message: message.to_string(),
    }
}

pub fn load_state(path: &Path) -> Result<StateVector> {
    let file: StateFile = serde_json::from_str(&read(path)?).map_err(|e| parse_err(path, e))?;
    file.to_state().map_err(|e| parse_err(path, e))
}

pub fn load_channel(path: &Path) -> Result<Channel> {
    let file: ChannelFile = serde_json::from_str(&read(path)?).map_err(|e| parse_err(path, e))?;
    file.to_channel().map_err(|e| parse_err(path, e))
}
