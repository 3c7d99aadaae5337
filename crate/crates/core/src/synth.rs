//! Seeded synthetic peer-review corpora with planted feature-to-citation
//! relationships.
//!
//! Reviewer centrality is planted through assignment preferences: hub
//! reviewers sit in the pools of several editors, everyone else in one. A
//! paper's network signal is the mean `ln(editor count)` over its reviewers,
//! so the pipeline has to recover it from the projected graph.
//!
//! Each planted signal is z-scored over the corpus and combined into a
//! latent quality `q = sum(effect * z) + noise_sd * N(0, 1)`. Acceptance is
//! a logistic function of `q`; citations are log-normal in `q`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use chrono::Datelike;
use rand::distr::weighted::WeightedIndex;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Normal, Poisson};

use crate::corpus::{Date, EventKind, Outcome, Recommendation, ReviewEvent};
use crate::text::{Category, Lexicon};

/// Keys accepted in [`SynthConfig::effects`].
pub const EFFECT_KEYS: [&str; 8] = ["network", "TS", "RL", "DR", "SNT", "AR", "AP", "RAC"];

/// Team size, report length and report delay signals peak here.
const TEAM_SIZE_PEAK: f64 = 9.0;
const REPORT_LENGTH_PEAK: f64 = 550.0;
const REPORT_DELAY_PEAK: f64 = 62.0;

/// Neutral vocabulary for report bodies; words also present in the lexicon
/// are dropped at generation time.
const FILLER: [&str; 64] = [
    "the", "paper", "results", "section", "analysis", "model", "data", "method", "authors", "figure", "table",
    "discussion", "calculation", "approach", "measurement", "energy", "scale", "theory", "field", "mass",
    "coupling", "parameter", "limit", "order", "correction", "process", "sample", "detector", "signal",
    "background", "decay", "spectrum", "symmetry", "operator", "amplitude", "loop", "term", "equation",
    "appendix", "reference", "manuscript", "text", "version", "draft", "point", "case", "value", "estimate",
    "framework", "setup", "range", "regime", "channel", "state", "level", "quantity", "expression", "of",
    "in", "on", "for", "with", "from", "at",
];

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SynthError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("unknown effect key {0:?}")]
    UnknownEffect(String),
    #[error("lexicon leaves no neutral filler words")]
    NoFiller,
    #[error("event log was not produced by this config (first difference at event {0})")]
    Mismatch(usize),
}

/// Cumulative-citation law.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct CitationModel {
    /// Median citations of an average accepted paper with three years of exposure.
    pub median: f64,
    /// Log-scale slope on standardized quality.
    pub log_sd: f64,
    /// Multiplier for rejected papers published elsewhere.
    pub rejected_factor: f64,
    /// Year the cumulative counts are taken; defaults to three years after the last year.
    pub as_of_year: Option<i32>,
}

impl Default for CitationModel {
    fn default() -> Self {
        CitationModel {
            median: 30.0,
            log_sd: 0.9,
            rejected_factor: 0.6,
            as_of_year: None,
        }
    }
}

/// Report-text law.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct TextModel {
    /// Median first-round report length in tokens.
    pub median_length: f64,
    pub length_log_sd: f64,
    /// Median first-round report delay in days.
    pub median_delay: f64,
    pub delay_log_sd: f64,
    /// Base rate of positive and of negative words.
    pub sentiment_rate: f64,
    /// Change in each polarity rate per unit of the sentiment latent.
    pub sentiment_slope: f64,
    /// Base percentage of each word category.
    pub category_pct: f64,
    /// Relative change in category usage per unit of standardized quality.
    pub category_slope: f64,
}

impl Default for TextModel {
    fn default() -> Self {
        TextModel {
            median_length: 450.0,
            length_log_sd: 0.5,
            median_delay: 50.0,
            delay_log_sd: 0.6,
            sentiment_rate: 0.03,
            sentiment_slope: 0.012,
            category_pct: 1.2,
            category_slope: 0.25,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SynthConfig {
    pub seed: u64,
    pub start_year: i32,
    pub end_year: i32,
    pub papers_per_year: usize,
    pub n_editors: usize,
    pub n_reviewers: usize,
    pub n_authors: usize,
    /// Share of papers sent to more than one reviewer.
    pub multi_reviewer_fraction: f64,
    /// Share of reviewers serving several editors.
    pub hub_fraction: f64,
    /// Hubs serve between 2 and this many editors.
    pub max_hub_editors: usize,
    /// Target accepted share of decided (non-withdrawn) papers.
    pub accept_rate: f64,
    pub withdraw_rate: f64,
    /// Logit slope of acceptance on standardized quality.
    pub decision_weight: f64,
    /// Logit slope of acceptance on mean reviewer lenience.
    pub lenience_weight: f64,
    /// Probability of one more review round, accepted papers.
    pub accepted_continue: f64,
    /// Probability of one more review round, rejected or withdrawn papers.
    pub rejected_continue: f64,
    pub max_rounds: u32,
    /// Planted effect per signal; keys from [`EFFECT_KEYS`].
    pub effects: BTreeMap<String, f64>,
    pub noise_sd: f64,
    pub citation: CitationModel,
    pub text: TextModel,
}

impl Default for SynthConfig {
    fn default() -> Self {
        let effects = [
            ("network", 2.5),
            ("TS", 0.3),
            ("RL", 0.3),
            ("DR", 0.3),
            ("SNT", 0.05),
            ("AR", 0.15),
            ("AP", 0.1),
            ("RAC", 0.0),
        ]
        .iter()
        .map(|(k, v)| (String::from(*k), *v))
        .collect();
        SynthConfig {
            seed: 0,
            start_year: 2003,
            end_year: 2012,
            papers_per_year: 200,
            n_editors: 15,
            n_reviewers: 120,
            n_authors: 1500,
            multi_reviewer_fraction: 0.10,
            hub_fraction: 0.3,
            max_hub_editors: 5,
            accept_rate: 0.74,
            withdraw_rate: 0.02,
            decision_weight: 1.0,
            lenience_weight: 0.5,
            accepted_continue: 0.43,
            rejected_continue: 0.26,
            max_rounds: 6,
            effects,
            noise_sd: 0.3,
            citation: CitationModel::default(),
            text: TextModel::default(),
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<(), SynthError> {
        let bad = |m: &str| Err(SynthError::InvalidConfig(String::from(m)));
        if self.papers_per_year == 0 {
            return bad("papers_per_year must be at least 1");
        }
        if self.end_year < self.start_year {
            return bad("end_year before start_year");
        }
        if self.n_editors == 0 || self.n_reviewers == 0 || self.n_authors == 0 {
            return bad("need at least one editor, reviewer and author");
        }
        if self.n_reviewers < self.n_editors {
            return bad("need at least one reviewer per editor");
        }
        for (name, f) in [
            ("multi_reviewer_fraction", self.multi_reviewer_fraction),
            ("hub_fraction", self.hub_fraction),
            ("accept_rate", self.accept_rate),
            ("withdraw_rate", self.withdraw_rate),
            ("accepted_continue", self.accepted_continue),
            ("rejected_continue", self.rejected_continue),
        ] {
            if !(0.0..=1.0).contains(&f) {
                return Err(SynthError::InvalidConfig(format!("{name} must lie in [0, 1]")));
            }
        }
        if self.accept_rate == 0.0 || self.accept_rate == 1.0 {
            return bad("accept_rate must lie strictly between 0 and 1");
        }
        if self.max_rounds == 0 || self.max_hub_editors < 2 {
            return bad("max_rounds must be positive and max_hub_editors at least 2");
        }
        for (k, v) in &self.effects {
            if !EFFECT_KEYS.contains(&k.as_str()) {
                return Err(SynthError::UnknownEffect(k.clone()));
            }
            if !v.is_finite() {
                return Err(SynthError::InvalidConfig(format!("effect {k} is not finite")));
            }
        }
        let c = &self.citation;
        let t = &self.text;
        let positive = [
            self.noise_sd + 1.0,
            c.median,
            c.log_sd + 1.0,
            c.rejected_factor + 1.0,
            t.median_length,
            t.length_log_sd + 1.0,
            t.median_delay,
            t.delay_log_sd + 1.0,
            t.category_pct + 1.0,
        ];
        if positive.iter().any(|v| !(v.is_finite() && *v > 0.0)) || self.noise_sd < 0.0 {
            return bad("scale parameters must be finite and non-negative (medians positive)");
        }
        if !(0.0..0.5).contains(&t.sentiment_rate) {
            return bad("sentiment_rate must lie in [0, 0.5)");
        }
        if c.as_of_year.is_some_and(|y| y < self.end_year + 1) {
            return bad("citation as_of_year must follow end_year");
        }
        Ok(())
    }

    pub fn effect(&self, key: &str) -> f64 {
        self.effects.get(key).copied().unwrap_or(0.0)
    }

    pub fn as_of_year(&self) -> i32 {
        self.citation.as_of_year.unwrap_or(self.end_year + 3)
    }

    pub fn total_papers(&self) -> usize {
        self.papers_per_year * (self.end_year - self.start_year + 1) as usize
    }
}

/// Oracle view of one generated paper.
#[derive(Clone, Debug, PartialEq)]
pub struct PaperTruth {
    pub paper_id: String,
    pub quality: f64,
    /// Standardized planted signals keyed like [`SynthConfig::effects`].
    pub signals: BTreeMap<String, f64>,
    /// Whether any assigned reviewer is a planted hub.
    pub central: bool,
    pub outcome: Outcome,
    pub citations: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroundTruth {
    pub papers: Vec<PaperTruth>,
    /// Hub reviewers.
    pub central_reviewers: BTreeSet<String>,
    /// Number of editors whose pool contains each reviewer.
    pub reviewer_editors: BTreeMap<String, usize>,
}

struct Draft {
    id: String,
    submitted: Date,
    editor: usize,
    reviewers: Vec<usize>,
    authors: Vec<usize>,
    length: usize,
    delays: Vec<i64>,
    sentiment: f64,
}

fn standardize(values: &[f64]) -> Vec<f64> {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let sd = libm::sqrt(var);
    if sd > 1e-12 {
        values.iter().map(|v| (v - mean) / sd).collect()
    } else {
        vec![0.0; values.len()]
    }
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + libm::exp(-x))
}

fn stochastic_round(rng: &mut ChaCha8Rng, x: f64) -> usize {
    let x = x.max(0.0);
    let base = libm::floor(x);
    base as usize + usize::from(rng.random::<f64>() < x - base)
}

fn date_in_year(year: i32, day: u32) -> Date {
    Date::from_yo_opt(year, day + 1).unwrap_or_else(|| Date::from_ymd_opt(year, 12, 31).expect("valid date"))
}

/// Words used to build report text.
struct Vocabulary {
    positive: Vec<String>,
    negative: Vec<String>,
    filler: Vec<&'static str>,
    /// Per category: words plus their polarity (+1, -1, 0).
    categories: BTreeMap<Category, Vec<(String, i8)>>,
}

impl Vocabulary {
    fn new(lexicon: &Lexicon) -> Result<Self, SynthError> {
        let filler: Vec<&'static str> = FILLER.iter().copied().filter(|w| !lexicon.contains(w)).collect();
        if filler.is_empty() {
            return Err(SynthError::NoFiller);
        }
        let polarity = |w: &str| {
            if lexicon.positive().contains(w) {
                1
            } else if lexicon.negative().contains(w) {
                -1
            } else {
                0
            }
        };
        // prefer words that belong to exactly one category and carry no polarity
        let mut categories = BTreeMap::new();
        for c in Category::ALL {
            let Some(words) = lexicon.category(c) else { continue };
            let others = |w: &String| {
                Category::ALL
                    .iter()
                    .filter(|&&o| o != c)
                    .any(|&o| lexicon.category(o).is_some_and(|s| s.contains(w)))
            };
            let pure: Vec<(String, i8)> = words
                .iter()
                .filter(|w| !others(w) && polarity(w) == 0)
                .map(|w| (w.clone(), 0))
                .collect();
            let chosen = if pure.is_empty() {
                words.iter().map(|w| (w.clone(), polarity(w))).collect()
            } else {
                pure
            };
            if !chosen.is_empty() {
                categories.insert(c, chosen);
            }
        }
        Ok(Vocabulary {
            positive: lexicon.positive().iter().cloned().collect(),
            negative: lexicon.negative().iter().cloned().collect(),
            filler,
            categories,
        })
    }
}

/// Direction in which a category's usage moves with quality.
fn category_sign(c: Category) -> f64 {
    match c {
        Category::FutureTense | Category::Insight | Category::Inclusive | Category::PositiveEmotion => 1.0,
        Category::Negation | Category::Exclusive => -1.0,
        Category::Causation => 0.0,
    }
}

/// Exactly `length` tokens. Polarity counts follow the sentiment latent,
/// category counts follow quality.
fn report_text(
    rng: &mut ChaCha8Rng,
    vocab: &Vocabulary,
    model: &TextModel,
    length: usize,
    sentiment: f64,
    quality: f64,
) -> String {
    let mut words: Vec<&str> = Vec::with_capacity(length);
    let mut pos_budget = 0usize;
    let mut neg_budget = 0usize;
    if !vocab.positive.is_empty() {
        let rate = (model.sentiment_rate + model.sentiment_slope * sentiment).clamp(0.0, 0.5);
        pos_budget = stochastic_round(rng, rate * length as f64);
    }
    if !vocab.negative.is_empty() {
        let rate = (model.sentiment_rate - model.sentiment_slope * sentiment).clamp(0.0, 0.5);
        neg_budget = stochastic_round(rng, rate * length as f64);
    }
    for (&c, list) in &vocab.categories {
        let pct = (model.category_pct * (1.0 + model.category_slope * category_sign(c) * quality)).max(0.0);
        let n = stochastic_round(rng, pct / 100.0 * length as f64);
        for _ in 0..n {
            let (w, p) = list.choose(rng).expect("non-empty");
            match p {
                1 => pos_budget = pos_budget.saturating_sub(1),
                -1 => neg_budget = neg_budget.saturating_sub(1),
                _ => {}
            }
            words.push(w);
        }
    }
    for _ in 0..pos_budget {
        words.push(vocab.positive.choose(rng).expect("non-empty"));
    }
    for _ in 0..neg_budget {
        words.push(vocab.negative.choose(rng).expect("non-empty"));
    }
    words.truncate(length);
    while words.len() < length {
        words.push(vocab.filler.choose(rng).expect("non-empty"));
    }
    words.shuffle(rng);

    let mut text = String::with_capacity(length * 8);
    for (i, w) in words.iter().enumerate() {
        if i > 0 {
            text.push_str(if i % 14 == 0 { ". " } else { " " });
        }
        text.push_str(w);
    }
    if !words.is_empty() {
        text.push('.');
    }
    text
}

/// Generate an event log ordered by date.
pub fn generate(config: &SynthConfig, lexicon: &Lexicon) -> Result<Vec<ReviewEvent>, SynthError> {
    generate_with_truth(config, lexicon).map(|(events, _)| events)
}

/// Regenerate from `config` and return the oracle, after checking that
/// `log` is exactly what the config produces.
pub fn ground_truth(config: &SynthConfig, lexicon: &Lexicon, log: &[ReviewEvent]) -> Result<GroundTruth, SynthError> {
    let (events, truth) = generate_with_truth(config, lexicon)?;
    if let Some(i) = events.iter().zip(log).position(|(a, b)| a != b) {
        return Err(SynthError::Mismatch(i));
    }
    if events.len() != log.len() {
        return Err(SynthError::Mismatch(events.len().min(log.len())));
    }
    Ok(truth)
}

pub fn generate_with_truth(
    config: &SynthConfig,
    lexicon: &Lexicon,
) -> Result<(Vec<ReviewEvent>, GroundTruth), SynthError> {
    config.validate()?;
    let vocab = Vocabulary::new(lexicon)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let std_normal = Normal::new(0.0, 1.0).expect("valid normal");

    // reviewer pools
    let n_rev = config.n_reviewers;
    let n_ed = config.n_editors;
    let n_hubs = libm::round(config.hub_fraction * n_rev as f64) as usize;
    let mut reviewer_order: Vec<usize> = (0..n_rev).collect();
    reviewer_order.shuffle(&mut rng);
    let hubs: BTreeSet<usize> = reviewer_order[..n_hubs].iter().copied().collect();
    let mut pools: Vec<Vec<usize>> = vec![Vec::new(); n_ed];
    let mut editor_count = vec![0usize; n_rev];
    for r in 0..n_rev {
        let k = if hubs.contains(&r) {
            rng.random_range(2..=config.max_hub_editors.min(n_ed).max(1))
        } else {
            1
        };
        for e in rand::seq::index::sample(&mut rng, n_ed, k.min(n_ed)) {
            pools[e].push(r);
        }
        editor_count[r] = k.min(n_ed);
    }
    // every editor needs a pool; borrow a non-hub reviewer from the largest pool
    for e in 0..n_ed {
        if pools[e].is_empty() {
            let donor = (0..n_ed).max_by_key(|&d| (pools[d].len(), core::cmp::Reverse(d))).expect("editors");
            let r = pools[donor].pop().expect("non-empty donor");
            pools[e].push(r);
        }
    }
    let lenience: Vec<f64> = (0..n_rev).map(|_| std_normal.sample(&mut rng)).collect();

    // authors
    let productivity_law = LogNormal::new(0.0, 1.0).expect("valid lognormal");
    let productivity: Vec<f64> = (0..config.n_authors).map(|_| productivity_law.sample(&mut rng)).collect();
    let reputation: Vec<f64> = (0..config.n_authors).map(|_| std_normal.sample(&mut rng)).collect();
    let author_pick = WeightedIndex::new(&productivity).expect("positive weights");
    let team_extra = Poisson::new(2.0).expect("valid poisson");

    let length_law = LogNormal::new(libm::log(config.text.median_length), config.text.length_log_sd)
        .expect("valid lognormal");
    let delay_law =
        LogNormal::new(libm::log(config.text.median_delay), config.text.delay_log_sd).expect("valid lognormal");

    // pass 1: paper skeletons
    let mut drafts: Vec<Draft> = Vec::with_capacity(config.total_papers());
    let mut seq = 0usize;
    for year in config.start_year..=config.end_year {
        let days_in_year = if Date::from_ymd_opt(year, 2, 29).is_some() { 366 } else { 365 };
        let mut days: Vec<u32> = (0..config.papers_per_year)
            .map(|_| rng.random_range(0..days_in_year))
            .collect();
        days.sort_unstable();
        for day in days {
            seq += 1;
            let editor = rng.random_range(0..n_ed);
            let wanted = if rng.random::<f64>() < config.multi_reviewer_fraction {
                if rng.random::<f64>() < 0.25 {
                    3
                } else {
                    2
                }
            } else {
                1
            };
            let pool = &pools[editor];
            let reviewers: Vec<usize> = rand::seq::index::sample(&mut rng, pool.len(), wanted.min(pool.len()))
                .into_iter()
                .map(|i| pool[i])
                .collect();
            let team = (1 + team_extra.sample(&mut rng) as usize).min(20).min(config.n_authors);
            let mut authors: Vec<usize> = Vec::with_capacity(team);
            while authors.len() < team {
                let a = author_pick.sample(&mut rng);
                if !authors.contains(&a) {
                    authors.push(a);
                }
            }
            let length = libm::round(length_law.sample(&mut rng)).clamp(60.0, 2500.0) as usize;
            let delays = reviewers
                .iter()
                .map(|_| libm::round(delay_law.sample(&mut rng)).clamp(3.0, 365.0) as i64)
                .collect();
            drafts.push(Draft {
                id: format!("P{seq:05}"),
                submitted: date_in_year(year, day),
                editor,
                reviewers,
                authors,
                length,
                delays,
                sentiment: std_normal.sample(&mut rng),
            });
        }
    }

    // planted signals and latent quality
    let mean = |xs: &mut dyn Iterator<Item = f64>| {
        let (s, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
        s / n.max(1) as f64
    };
    let raw: Vec<(&str, Vec<f64>)> = vec![
        (
            "network",
            drafts
                .iter()
                .map(|d| mean(&mut d.reviewers.iter().map(|&r| libm::log(editor_count[r] as f64))))
                .collect(),
        ),
        (
            "TS",
            drafts
                .iter()
                .map(|d| -libm::fabs(d.authors.len() as f64 - TEAM_SIZE_PEAK))
                .collect(),
        ),
        (
            "RL",
            drafts
                .iter()
                .map(|d| -libm::fabs(d.length as f64 - REPORT_LENGTH_PEAK))
                .collect(),
        ),
        (
            "DR",
            drafts
                .iter()
                .map(|d| -libm::fabs(mean(&mut d.delays.iter().map(|&x| x as f64)) - REPORT_DELAY_PEAK))
                .collect(),
        ),
        ("SNT", drafts.iter().map(|d| d.sentiment).collect()),
        (
            "AR",
            drafts
                .iter()
                .map(|d| mean(&mut d.authors.iter().map(|&a| reputation[a])))
                .collect(),
        ),
        (
            "AP",
            drafts.iter().map(|d| libm::log(productivity[d.authors[0]])).collect(),
        ),
        (
            "RAC",
            drafts
                .iter()
                .map(|d| mean(&mut d.reviewers.iter().map(|&r| lenience[r])))
                .collect(),
        ),
    ];
    let signals: Vec<(&str, Vec<f64>)> = raw.into_iter().map(|(k, v)| (k, standardize(&v))).collect();
    let n = drafts.len();
    let quality: Vec<f64> = (0..n)
        .map(|i| {
            let planted: f64 = signals.iter().map(|(k, z)| config.effect(k) * z[i]).sum();
            planted + config.noise_sd * std_normal.sample(&mut rng)
        })
        .collect();
    let quality_z = standardize(&quality);

    // decisions: intercept calibrated to the target acceptance rate
    let mean_lenience: Vec<f64> = drafts
        .iter()
        .map(|d| mean(&mut d.reviewers.iter().map(|&r| lenience[r])))
        .collect();
    let logit_base: Vec<f64> = (0..n)
        .map(|i| config.decision_weight * quality_z[i] + config.lenience_weight * mean_lenience[i])
        .collect();
    let accept_share = |a0: f64| logit_base.iter().map(|b| sigmoid(a0 + b)).sum::<f64>() / n as f64;
    let (mut lo, mut hi) = (-40.0, 40.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if accept_share(mid) < config.accept_rate {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a0 = 0.5 * (lo + hi);

    let as_of_year = config.as_of_year();
    let citation_date = Date::from_ymd_opt(as_of_year, 12, 31).expect("valid year");
    let editor_ids: Vec<String> = (0..n_ed).map(|e| format!("E{e:02}")).collect();
    let reviewer_ids: Vec<String> = (0..n_rev).map(|r| format!("R{r:03}")).collect();

    // pass 2: events
    let mut events: Vec<(Date, usize, ReviewEvent)> = Vec::new();
    let mut truths = Vec::with_capacity(n);
    for (i, d) in drafts.iter().enumerate() {
        let outcome = if rng.random::<f64>() < config.withdraw_rate {
            Outcome::Withdraw
        } else if rng.random::<f64>() < sigmoid(a0 + logit_base[i]) {
            Outcome::Accept
        } else {
            Outcome::Reject
        };
        let p_more = if outcome == Outcome::Accept {
            config.accepted_continue
        } else {
            config.rejected_continue
        };
        let mut rounds = 1u32;
        while rounds < config.max_rounds && rng.random::<f64>() < p_more {
            rounds += 1;
        }

        let mut push = |date: Date, kind: EventKind| {
            let ord = events.len();
            events.push((date, ord, ReviewEvent::new(d.id.clone(), date, kind)));
        };
        push(
            d.submitted,
            EventKind::Submission {
                author_ids: d.authors.iter().map(|a| format!("A{a:04}")).collect(),
                title: format!("Synthetic study {}", d.id),
            },
        );
        let mut last = d.submitted;
        for round in 1..=rounds {
            let gap = if round == 1 {
                rng.random_range(1..=14)
            } else {
                rng.random_range(14..=60)
            };
            let assigned = last + chrono::Duration::days(gap);
            let mut latest = assigned;
            for (j, &r) in d.reviewers.iter().enumerate() {
                push(
                    assigned,
                    EventKind::Assignment {
                        editor_id: editor_ids[d.editor].clone(),
                        reviewer_id: reviewer_ids[r].clone(),
                        round,
                    },
                );
                let (delay, length) = if round == 1 {
                    (d.delays[j], d.length)
                } else {
                    (
                        libm::round(delay_law.sample(&mut rng) * 0.6).clamp(2.0, 200.0) as i64,
                        (d.length / 4).max(20),
                    )
                };
                let recommendation = match (round == rounds, outcome) {
                    (true, Outcome::Accept) => Recommendation::Accept,
                    (true, Outcome::Reject) => Recommendation::Reject,
                    _ => Recommendation::Revise,
                };
                let text = report_text(&mut rng, &vocab, &config.text, length, d.sentiment, quality_z[i]);
                let reported = assigned + chrono::Duration::days(delay);
                latest = latest.max(reported);
                push(
                    reported,
                    EventKind::Report {
                        reviewer_id: reviewer_ids[r].clone(),
                        round,
                        text,
                        recommendation,
                    },
                );
            }
            last = latest;
        }
        let decided = last + chrono::Duration::days(rng.random_range(1..=10));
        push(decided, EventKind::Decision { outcome, round: rounds });

        let mut citations = None;
        if outcome != Outcome::Withdraw && decided.year() <= as_of_year {
            let exposure = libm::sqrt(f64::from(as_of_year - decided.year() + 1) / 3.0);
            let factor = if outcome == Outcome::Reject {
                config.citation.rejected_factor
            } else {
                1.0
            };
            let expected =
                libm::exp(libm::log(config.citation.median) + config.citation.log_sd * quality_z[i]) * exposure * factor;
            let count = libm::round(expected) as u64;
            citations = Some(count);
            push(
                citation_date,
                EventKind::CitationRecord {
                    cumulative_citations: count,
                    as_of_year,
                },
            );
        }

        truths.push(PaperTruth {
            paper_id: d.id.clone(),
            quality: quality[i],
            signals: signals.iter().map(|(k, z)| (String::from(*k), z[i])).collect(),
            central: d.reviewers.iter().any(|r| hubs.contains(r)),
            outcome,
            citations,
        });
    }
    events.sort_by_key(|e| (e.0, e.1));

    let truth = GroundTruth {
        papers: truths,
        central_reviewers: hubs.iter().map(|&r| reviewer_ids[r].clone()).collect(),
        reviewer_editors: (0..n_rev).map(|r| (reviewer_ids[r].clone(), editor_count[r])).collect(),
    };
    Ok((events.into_iter().map(|(_, _, e)| e).collect(), truth))
}
