//! Reading and writing partial systems as text.
//!
//! Two renderings are accepted. JSON:
//!
//! ```text
//! {"blocks": [{"id": "a", "dim": 1}, {"id": "b", "dim": 1}], "map": [["a", "b"]]}
//! ```
//!
//! and a line format with one `id dim` per block and one `src -> dst` per map
//! pair, where `#` starts a comment:
//!
//! ```text
//! a 1
//! b 1
//! a -> b
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt;

use parcross::{Block, BlockAlgebra, PartialSystem};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Where in the input a problem was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Position {
    Line(usize),
    LineColumn(usize, usize),
    /// A JSON path such as `blocks[2].dim`.
    Path(String),
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::Line(l) => write!(f, "line {l}"),
            Position::LineColumn(l, c) => write!(f, "line {l}, column {c}"),
            Position::Path(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub id: String,
    pub dim: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub blocks: Vec<BlockEntry>,
    #[serde(default)]
    pub map: Vec<(String, String)>,
}

/// Positions of each entry, kept alongside a parsed file for error reporting.
struct Located {
    file: SystemFile,
    block_pos: Vec<(Position, Position)>,
    map_pos: Vec<(Position, Position, Position)>,
}

impl SystemFile {
    pub fn from_system(sys: &PartialSystem) -> Self {
        SystemFile {
            blocks: sys
                .algebra()
                .blocks()
                .iter()
                .map(|b| BlockEntry {
                    id: b.id.clone(),
                    dim: b.dim,
                })
                .collect(),
            map: sys.id_pairs(),
        }
    }

    /// Parse either rendering; input whose first non-blank character is `{`
    /// is read as JSON.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(Self::locate(text)?.file)
    }

    /// Parse and validate, reporting the position of the first offending entry.
    pub fn parse_system(text: &str) -> Result<PartialSystem, CliError> {
        Self::locate(text)?.into_system()
    }

    fn locate(text: &str) -> Result<Located, CliError> {
        if text.trim_start().starts_with('{') {
            parse_json(text)
        } else {
            parse_lines(text)
        }
    }

    pub fn to_system(&self) -> Result<PartialSystem, CliError> {
        located_by_path(self.clone()).into_system()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            out.push_str(&format!("{} {}\n", b.id, b.dim));
        }
        for (s, t) in &self.map {
            out.push_str(&format!("{s} -> {t}\n"));
        }
        out
    }
}

fn parse_json(text: &str) -> Result<Located, CliError> {
    let file: SystemFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        position: Position::LineColumn(e.line(), e.column()),
        message: e.to_string(),
    })?;
    Ok(located_by_path(file))
}

fn located_by_path(file: SystemFile) -> Located {
    let block_pos = (0..file.blocks.len())
        .map(|i| {
            (
                Position::Path(format!("blocks[{i}].id")),
                Position::Path(format!("blocks[{i}].dim")),
            )
        })
        .collect();
    let map_pos = (0..file.map.len())
        .map(|j| {
            (
                Position::Path(format!("map[{j}]")),
                Position::Path(format!("map[{j}][0]")),
                Position::Path(format!("map[{j}][1]")),
            )
        })
        .collect();
    Located {
        file,
        block_pos,
        map_pos,
    }
}

fn parse_lines(text: &str) -> Result<Located, CliError> {
    let mut file = SystemFile::default();
    let mut block_pos = Vec::new();
    let mut map_pos = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| CliError::Parse {
            position: Position::Line(line_no),
            message,
        };
        if let Some((s, t)) = line.split_once("->") {
            let (s, t) = (s.trim(), t.trim());
            if s.is_empty()
                || t.is_empty()
                || t.contains(char::is_whitespace)
                || s.contains(char::is_whitespace)
            {
                return Err(bad(format!("expected `source -> target`, found `{line}`")));
            }
            file.map.push((s.to_string(), t.to_string()));
            let p = Position::Line(line_no);
            map_pos.push((p.clone(), p.clone(), p));
        } else {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [id, dim] = fields[..] else {
                return Err(bad(format!("expected `id dim`, found `{line}`")));
            };
            let dim = dim.parse().map_err(|_| {
                bad(format!(
                    "block `{id}`: dimension `{dim}` is not a nonnegative integer"
                ))
            })?;
            file.blocks.push(BlockEntry {
                id: id.to_string(),
                dim,
            });
            block_pos.push((Position::Line(line_no), Position::Line(line_no)));
        }
    }
    Ok(Located {
        file,
        block_pos,
        map_pos,
    })
}

impl Located {
    fn into_system(self) -> Result<PartialSystem, CliError> {
        let err = |position: &Position, message: String| CliError::Parse {
            position: position.clone(),
            message,
        };
        let mut dims: HashMap<&str, u32> = HashMap::new();
        for (b, (id_pos, dim_pos)) in self.file.blocks.iter().zip(&self.block_pos) {
            if b.dim == 0 {
                return Err(err(dim_pos, format!("block `{}` has dimension 0", b.id)));
            }
            if dims.insert(&b.id, b.dim).is_some() {
                return Err(err(id_pos, format!("duplicate block id `{}`", b.id)));
            }
        }
        let mut sources = HashSet::new();
        let mut targets = HashSet::new();
        for ((s, t), (pair_pos, s_pos, t_pos)) in self.file.map.iter().zip(&self.map_pos) {
            let ds = *dims
                .get(s.as_str())
                .ok_or_else(|| err(s_pos, format!("unknown block id `{s}`")))?;
            let dt = *dims
                .get(t.as_str())
                .ok_or_else(|| err(t_pos, format!("unknown block id `{t}`")))?;
            if !sources.insert(s) {
                return Err(err(s_pos, format!("map not functional at source {s}")));
            }
            if !targets.insert(t) {
                return Err(err(t_pos, format!("map not injective at target {t}")));
            }
            if ds != dt {
                return Err(err(
                    pair_pos,
                    format!("block {s} has dim {ds} but its image {t} has dim {dt}"),
                ));
            }
        }
        let blocks = self
            .file
            .blocks
            .iter()
            .map(|b| Block {
                id: b.id.clone(),
                dim: b.dim,
            })
            .collect();
        Ok(PartialSystem::new(
            BlockAlgebra::new(blocks)?,
            &self.file.map,
        )?)
    }
}
