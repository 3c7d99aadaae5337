//! Lexicon directories: `positive.txt`, `negative.txt` and
//! `cat_<category>.txt`, one word per line, `#` starts a comment line.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use revnet_core::text::{Category, Lexicon, LexiconError};

/// Environment variable naming a lexicon directory.
pub const LEXICON_ENV: &str = "REVNET_LEXICON_DIR";

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Invalid(#[from] LexiconError),
}

const EMBEDDED_POSITIVE: &str = include_str!("../../../data/lexicons/positive.txt");
const EMBEDDED_NEGATIVE: &str = include_str!("../../../data/lexicons/negative.txt");
const EMBEDDED_CATEGORIES: [(Category, &str); 7] = [
    (Category::FutureTense, include_str!("../../../data/lexicons/cat_future_tense.txt")),
    (Category::Negation, include_str!("../../../data/lexicons/cat_negation.txt")),
    (Category::Insight, include_str!("../../../data/lexicons/cat_insight.txt")),
    (Category::Causation, include_str!("../../../data/lexicons/cat_causation.txt")),
    (Category::Inclusive, include_str!("../../../data/lexicons/cat_inclusive.txt")),
    (Category::Exclusive, include_str!("../../../data/lexicons/cat_exclusive.txt")),
    (Category::PositiveEmotion, include_str!("../../../data/lexicons/cat_positive_emotion.txt")),
];

fn words(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

/// The word lists shipped with the crate.
pub fn embedded() -> Lexicon {
    let cats = EMBEDDED_CATEGORIES.iter().map(|(c, t)| (*c, words(t))).collect();
    Lexicon::new(words(EMBEDDED_POSITIVE), words(EMBEDDED_NEGATIVE), cats).expect("shipped lexicon is valid")
}

fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Load a lexicon directory. Category files are optional; the polarity
/// lists are required.
pub fn load_dir(dir: &Path) -> Result<Lexicon, LoadError> {
    let positive = words(&read(&dir.join("positive.txt"))?);
    let negative = words(&read(&dir.join("negative.txt"))?);
    let mut cats = BTreeMap::new();
    for c in Category::ALL {
        let p = dir.join(format!("cat_{}.txt", c.name()));
        if p.exists() {
            cats.insert(c, words(&read(&p)?));
        }
    }
    Ok(Lexicon::new(positive, negative, cats)?)
}

/// Explicit directory, else the environment override, else the embedded
/// lists. Returns the lexicon and the directory it came from.
pub fn resolve(explicit: Option<&Path>) -> Result<(Lexicon, Option<PathBuf>), LoadError> {
    let dir = explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(LEXICON_ENV).map(PathBuf::from));
    match dir {
        Some(d) => Ok((load_dir(&d)?, Some(d))),
        None => Ok((embedded(), None)),
    }
}
