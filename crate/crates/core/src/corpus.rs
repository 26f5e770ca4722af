//! The shipped example corpus: an index file naming monoid specs, M-sets
//! over them, the étale figures and the pattern grids with golden renders.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::io::{MSetFile, MonoidFile};

#[derive(Clone, Debug, Deserialize)]
struct Index {
    monoids: Vec<MonoidEntry>,
    msets: Vec<MSetEntry>,
    #[serde(default)]
    figures: Vec<FigureEntry>,
    #[serde(default)]
    grids: Vec<GridEntry>,
}

#[derive(Clone, Debug, Deserialize)]
struct MonoidEntry {
    name: String,
    file: String,
    #[serde(default)]
    radius: Option<u32>,
}

#[derive(Clone, Debug, Deserialize)]
struct MSetEntry {
    name: String,
    file: String,
    monoid: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct FigureEntry {
    pub name: String,
    pub mset: String,
    pub monoid: String,
    pub window: String,
    pub golden: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GridEntry {
    pub name: String,
    pub monoid: String,
    pub size: usize,
    pub golden: String,
}

#[derive(Clone, Debug)]
pub struct CorpusMonoid {
    pub name: String,
    pub file: MonoidFile,
    /// Largest groupoid radius the checks should use for this monoid.
    pub radius: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct CorpusMSet {
    pub name: String,
    pub monoid: String,
    pub file: MSetFile,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub dir: PathBuf,
    pub monoids: Vec<CorpusMonoid>,
    pub msets: Vec<CorpusMSet>,
    pub figures: Vec<FigureEntry>,
    pub grids: Vec<GridEntry>,
}

impl Corpus {
    /// Reads `dir/corpus.json` and every file it names.
    pub fn load(dir: &Path) -> Result<Self> {
        let index_path = dir.join("corpus.json");
        let text = std::fs::read_to_string(&index_path)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", index_path.display()))))?;
        let index: Index = serde_json::from_str(&text)?;
        let monoids = index
            .monoids
            .into_iter()
            .map(|m| {
                Ok(CorpusMonoid {
                    file: MonoidFile::load(&dir.join(&m.file))?,
                    name: m.name,
                    radius: m.radius,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let msets = index
            .msets
            .into_iter()
            .map(|s| {
                if !monoids.iter().any(|m| m.name == s.monoid) {
                    return Err(Error::parse(format!("M-set {} refers to unknown monoid {}", s.name, s.monoid)));
                }
                Ok(CorpusMSet {
                    file: MSetFile::load(&dir.join(&s.file))?,
                    name: s.name,
                    monoid: s.monoid,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Corpus {
            dir: dir.to_path_buf(),
            monoids,
            msets,
            figures: index.figures,
            grids: index.grids,
        })
    }

    pub fn monoid(&self, name: &str) -> Option<&CorpusMonoid> {
        self.monoids.iter().find(|m| m.name == name)
    }

    pub fn msets_over<'a>(&'a self, monoid: &'a str) -> impl Iterator<Item = &'a CorpusMSet> + 'a {
        self.msets.iter().filter(move |s| s.monoid == monoid)
    }

    pub fn path(&self, relative: &str) -> PathBuf {
        self.dir.join(relative)
    }
}
