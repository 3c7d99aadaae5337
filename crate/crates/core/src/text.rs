//! Referee-report text scoring: lexicon sentiment and word-category
//! percentages.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

/// Word categories whose usage rates are contrasted between high- and
/// low-cited papers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Category {
    FutureTense,
    Negation,
    Insight,
    Causation,
    Inclusive,
    Exclusive,
    PositiveEmotion,
}

impl Category {
    pub const ALL: [Category; 7] = [
        Category::FutureTense,
        Category::Negation,
        Category::Insight,
        Category::Causation,
        Category::Inclusive,
        Category::Exclusive,
        Category::PositiveEmotion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::FutureTense => "future_tense",
            Category::Negation => "negation",
            Category::Insight => "insight",
            Category::Causation => "causation",
            Category::Inclusive => "inclusive",
            Category::Exclusive => "exclusive",
            Category::PositiveEmotion => "positive_emotion",
        }
    }

    pub fn from_name(name: &str) -> Option<Category> {
        Category::ALL.into_iter().find(|c| c.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LexiconError {
    #[error("lexicon entry {0:?} is not lowercase")]
    NotLowercase(String),
    #[error("word {0:?} is listed as both positive and negative")]
    Overlap(String),
}

/// Sentiment and category word lists. Entries are lowercase single tokens.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Lexicon {
    positive: BTreeSet<String>,
    negative: BTreeSet<String>,
    categories: BTreeMap<Category, BTreeSet<String>>,
}

impl Lexicon {
    pub fn new(
        positive: BTreeSet<String>,
        negative: BTreeSet<String>,
        categories: BTreeMap<Category, BTreeSet<String>>,
    ) -> Result<Self, LexiconError> {
        let all = positive
            .iter()
            .chain(&negative)
            .chain(categories.values().flatten());
        for word in all {
            if word.chars().any(char::is_uppercase) {
                return Err(LexiconError::NotLowercase(word.clone()));
            }
        }
        if let Some(w) = positive.intersection(&negative).next() {
            return Err(LexiconError::Overlap(w.clone()));
        }
        Ok(Lexicon {
            positive,
            negative,
            categories,
        })
    }

    pub fn positive(&self) -> &BTreeSet<String> {
        &self.positive
    }

    pub fn negative(&self) -> &BTreeSet<String> {
        &self.negative
    }

    /// Words of a category (empty when the category was not loaded).
    pub fn category(&self, category: Category) -> Option<&BTreeSet<String>> {
        self.categories.get(&category)
    }

    /// The same lexicon with positive and negative lists exchanged.
    pub fn swapped_polarity(&self) -> Lexicon {
        Lexicon {
            positive: self.negative.clone(),
            negative: self.positive.clone(),
            categories: self.categories.clone(),
        }
    }

    /// Whether a word appears in any list.
    pub fn contains(&self, word: &str) -> bool {
        self.positive.contains(word)
            || self.negative.contains(word)
            || self.categories.values().any(|s| s.contains(word))
    }
}

/// Lowercase alphabetic tokens; every non-alphabetic character separates.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphabetic())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Score of one text.
#[derive(Clone, Debug, PartialEq)]
pub struct TextScore {
    pub token_count: usize,
    /// `(positive hits - negative hits) / tokens`, in `[-1, 1]`.
    pub sentiment: f64,
    /// `100 * hits / tokens` per category.
    pub category_pct: BTreeMap<Category, f64>,
}

pub fn score(text: &str, lexicon: &Lexicon) -> TextScore {
    let tokens = tokenize(text);
    score_tokens(&tokens, lexicon)
}

pub fn score_tokens(tokens: &[String], lexicon: &Lexicon) -> TextScore {
    let n = tokens.len();
    let mut pos = 0usize;
    let mut neg = 0usize;
    let mut hits: BTreeMap<Category, usize> = Category::ALL.iter().map(|&c| (c, 0)).collect();
    for t in tokens {
        if lexicon.positive.contains(t) {
            pos += 1;
        } else if lexicon.negative.contains(t) {
            neg += 1;
        }
        for (cat, words) in &lexicon.categories {
            if words.contains(t) {
                *hits.entry(*cat).or_insert(0) += 1;
            }
        }
    }
    let (sentiment, category_pct) = if n == 0 {
        (0.0, hits.keys().map(|&c| (c, 0.0)).collect())
    } else {
        (
            (pos as f64 - neg as f64) / n as f64,
            hits.into_iter()
                .map(|(c, h)| (c, 100.0 * h as f64 / n as f64))
                .collect(),
        )
    };
    TextScore {
        token_count: n,
        sentiment,
        category_pct,
    }
}

pub fn sentiment_score(text: &str, lexicon: &Lexicon) -> f64 {
    score(text, lexicon).sentiment
}

pub fn category_percentages(text: &str, lexicon: &Lexicon) -> BTreeMap<Category, f64> {
    score(text, lexicon).category_pct
}
