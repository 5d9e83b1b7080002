//! On-disk cache of the two knowledge bases.
//!
//! Layout: an 8-byte magic, a little-endian `u32` format version, then the
//! bincode encoding of both knowledge bases (each embeds its parameters).

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::edit_distance::EditParams;
use crate::error::{Error, Result};
use crate::lexicon::KnowledgeBase;

const MAGIC: &[u8; 8] = b"CORRKB\0\0";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KbCache {
    pub dictionary: KnowledgeBase,
    pub compounds: KnowledgeBase,
}

impl KbCache {
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(MAGIC)?;
        out.write_all(&FORMAT_VERSION.to_le_bytes())?;
        bincode::serialize_into(&mut out, &(&self.dictionary, &self.compounds))
            .map_err(|e| Error::Cache(e.to_string()))?;
        out.flush()?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut input: R) -> Result<Self> {
        let mut header = [0u8; 12];
        input.read_exact(&mut header).map_err(|_| Error::Cache("truncated header".into()))?;
        if &header[..8] != MAGIC {
            return Err(Error::Cache("not a knowledge base cache".into()));
        }
        let version = u32::from_le_bytes(header[8..].try_into().expect("4 bytes"));
        if version != FORMAT_VERSION {
            return Err(Error::Cache(format!("format version {version}, expected {FORMAT_VERSION}")));
        }
        let (dictionary, compounds): (KnowledgeBase, KnowledgeBase) =
            bincode::deserialize_from(input).map_err(|e| Error::Cache(e.to_string()))?;
        Ok(KbCache { dictionary, compounds })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = fs::File::create(path)?;
        self.write_to(std::io::BufWriter::new(file))
    }

    /// Loads a cache and checks that it was built with the requested
    /// parameters.
    pub fn load(path: &Path, dictionary: &EditParams, compounds: &EditParams) -> Result<Self> {
        let file = fs::File::open(path)?;
        let cache = Self::read_from(std::io::BufReader::new(file))?;
        check(dictionary, cache.dictionary.params())?;
        check(compounds, cache.compounds.params())?;
        Ok(cache)
    }
}

fn check(expected: &EditParams, found: &EditParams) -> Result<()> {
    if expected != found {
        return Err(Error::ParamsMismatch { expected: expected.to_string(), found: found.to_string() });
    }
    Ok(())
}
