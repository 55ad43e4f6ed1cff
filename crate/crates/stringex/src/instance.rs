//! The on-disk instance format shared by the CLI commands.

use serde::{Deserialize, Serialize};

use crate::word::{Origin, ShuffleWord};
use crate::{CartanMatrix, Error, Result};

/// One trapezoid instance: a Cartan grid, the two label sequences, and the
/// interleaving. `origins` may be omitted when one of the sequences is
/// empty, in which case the interleaving is forced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub cartan: Vec<Vec<i64>>,
    #[serde(default)]
    pub top: Vec<usize>,
    #[serde(default)]
    pub bottom: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origins: Option<String>,
}

impl InstanceFile {
    pub fn to_word(&self) -> Result<ShuffleWord> {
        let cartan = CartanMatrix::new(self.cartan.clone())?;
        let origins: Vec<Origin> = match &self.origins {
            Some(s) => s.chars().map(Origin::from_char).collect::<Result<_>>()?,
            None if self.top.is_empty() => vec![Origin::Bottom; self.bottom.len()],
            None if self.bottom.is_empty() => vec![Origin::Top; self.top.len()],
            None => {
                return Err(Error::InvalidInstance(
                    "origins required when both sequences are nonempty".into(),
                ))
            }
        };
        ShuffleWord::new(&self.top, &self.bottom, &origins, cartan)
    }

    pub fn from_word(word: &ShuffleWord) -> Self {
        InstanceFile {
            cartan: word.cartan().entries().to_vec(),
            top: word.top_sequence(),
            bottom: word.bottom_sequence(),
            origins: Some(word.origins_string()),
        }
    }
}
