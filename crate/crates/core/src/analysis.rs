//! Descriptive analyses over a corpus: bucketed means, reviewer quartile
//! contrasts, summary counts, irregular editorial outcomes and text-group
//! contrasts. Every function is a pure function of its inputs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::centrality::{CentralityTable, PageRankConfig};
use crate::corpus::{Corpus, Outcome, Paper, PaperIdx, ReviewerIdx};
use crate::features::{Feature, FeatureExtractor, FeatureMatrix};
use crate::graph;
use crate::stats::{self, Ecdf};
use crate::text::{self, Category, Lexicon};

/// Rejected papers with at least this many citations are irregular.
pub const HIGH_CITED_REJECTED: u64 = 20;
/// Accepted papers with fewer than this many citations are irregular.
pub const LOW_CITED_ACCEPTED: u64 = 10;
/// Default exposure cutoff: only papers decided before this year count.
pub const DEFAULT_EXPOSURE_CUTOFF: i32 = 2012;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("need at least 4 reviewers with scores, got {0}")]
    TooFewReviewers(usize),
    #[error("values and keys differ in length ({values} vs {keys})")]
    LengthMismatch { values: usize, keys: usize },
}

/// `c <= 1 -> 0`, otherwise `ceil(log2 c)`: buckets `<=1, 2, (2,4], (4,8], ...`.
pub fn bucket_powers_of_two(citations: u64) -> u32 {
    if citations <= 1 {
        0
    } else {
        64 - (citations - 1).leading_zeros()
    }
}

/// How keys are grouped.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BucketSpec {
    /// Key is a non-negative count, grouped by [`bucket_powers_of_two`].
    PowersOfTwo,
    /// Half-open `[k w, (k+1) w)`.
    FixedWidth(f64),
    /// Ratios in `[0, 1]`: `[0, 0.1), ..., [0.8, 0.9), [0.9, 1.0]`.
    RatioDeciles,
    /// Each distinct integer key is its own bucket.
    Exact,
}

impl BucketSpec {
    pub fn bucket_of(&self, key: f64) -> i64 {
        match *self {
            BucketSpec::PowersOfTwo => {
                let c = if key <= 0.0 { 0 } else { libm::ceil(key) as u64 };
                i64::from(bucket_powers_of_two(c))
            }
            BucketSpec::FixedWidth(w) => libm::floor(key / w) as i64,
            BucketSpec::RatioDeciles => (libm::floor(key * 10.0) as i64).clamp(0, 9),
            BucketSpec::Exact => libm::round(key) as i64,
        }
    }

    pub fn label(&self, bucket: i64) -> String {
        match *self {
            BucketSpec::PowersOfTwo => match bucket {
                0 => String::from("<=1"),
                1 => String::from("2"),
                b => format!("({},{}]", 1u64 << (b - 1), 1u64 << b),
            },
            BucketSpec::FixedWidth(w) => format!("[{},{})", bucket as f64 * w, (bucket + 1) as f64 * w),
            BucketSpec::RatioDeciles => {
                let lo = bucket as f64 / 10.0;
                if bucket == 9 {
                    String::from("[0.9,1.0]")
                } else {
                    format!("[{lo:.1},{:.1})", lo + 0.1)
                }
            }
            BucketSpec::Exact => format!("{bucket}"),
        }
    }
}

/// Mean of the values falling into one bucket.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupStat {
    pub bucket: i64,
    pub label: String,
    pub count: usize,
    pub mean: f64,
}

/// Mean value per non-empty bucket of `keys`, ordered by bucket.
pub fn bucket_mean(values: &[f64], keys: &[f64], spec: BucketSpec) -> Result<Vec<GroupStat>, AnalysisError> {
    if values.len() != keys.len() {
        return Err(AnalysisError::LengthMismatch {
            values: values.len(),
            keys: keys.len(),
        });
    }
    let mut groups: BTreeMap<i64, (usize, f64)> = BTreeMap::new();
    for (v, k) in values.iter().zip(keys) {
        let g = groups.entry(spec.bucket_of(*k)).or_insert((0, 0.0));
        g.0 += 1;
        g.1 += v;
    }
    Ok(groups
        .into_iter()
        .map(|(bucket, (count, sum))| GroupStat {
            bucket,
            label: spec.label(bucket),
            count,
            mean: sum / count as f64,
        })
        .collect())
}

/// Pooled-citation CDFs of the top and bottom quartile of reviewers.
#[derive(Clone, Debug, PartialEq)]
pub struct QuartileContrast {
    pub top: Ecdf,
    pub bottom: Ecdf,
    pub top_reviewers: Vec<String>,
    pub bottom_reviewers: Vec<String>,
}

/// Rank reviewers by `scores` and pool the citations of the top and bottom
/// `n/4`. Ties are broken by reviewer id in both directions, so equal scores
/// give the lowest ids on both sides.
pub fn quartile_contrast(
    scores: &BTreeMap<String, f64>,
    citations: &BTreeMap<String, Vec<u64>>,
) -> Result<QuartileContrast, AnalysisError> {
    let n = scores.len();
    if n < 4 {
        return Err(AnalysisError::TooFewReviewers(n));
    }
    let q = n / 4;
    let mut ranked: Vec<(&String, f64)> = scores.iter().map(|(k, v)| (k, *v)).collect();
    ranked.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then(a.0.cmp(b.0)));
    let top: Vec<String> = ranked[..q].iter().map(|(k, _)| (*k).clone()).collect();
    ranked.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal).then(a.0.cmp(b.0)));
    let bottom: Vec<String> = ranked[..q].iter().map(|(k, _)| (*k).clone()).collect();
    let pool = |ids: &[String]| {
        Ecdf::new(
            ids.iter()
                .flat_map(|id| citations.get(id).into_iter().flatten())
                .map(|&c| c as f64)
                .collect(),
        )
    };
    Ok(QuartileContrast {
        top: pool(&top),
        bottom: pool(&bottom),
        top_reviewers: top,
        bottom_reviewers: bottom,
    })
}

/// Per-reviewer centralities on the full-history network, with the
/// citations of the accepted papers each reviewer was assigned.
#[derive(Clone, Debug, PartialEq)]
pub struct ReviewerNetworkProfile {
    pub reviewer_id: String,
    /// Deg, BC, CC, Clus, PR.
    pub centralities: [f64; 5],
    pub accepted_citations: Vec<u64>,
}

pub fn reviewer_network_profiles(corpus: &Corpus) -> Vec<ReviewerNetworkProfile> {
    let g = graph::project(&graph::snapshot_all(corpus));
    let table = CentralityTable::compute(&g.graph, &PageRankConfig::default());
    let mut cites: BTreeMap<ReviewerIdx, Vec<u64>> = BTreeMap::new();
    for paper in corpus.papers() {
        if paper.outcome() != Some(Outcome::Accept) {
            continue;
        }
        if let Some(c) = paper.citations {
            for r in paper.assigned_reviewers() {
                cites.entry(r).or_default().push(c.count);
            }
        }
    }
    g.nodes
        .iter()
        .enumerate()
        .map(|(v, &r)| ReviewerNetworkProfile {
            reviewer_id: String::from(corpus.reviewers().name(r.0)),
            centralities: [
                table.degree[v] as f64,
                table.betweenness[v],
                table.closeness[v],
                table.clustering[v],
                table.pagerank[v],
            ],
            accepted_citations: cites.remove(&r).unwrap_or_default(),
        })
        .collect()
}

/// Quartile contrast for each of the five network features.
pub fn network_quartile_contrasts(corpus: &Corpus) -> Result<Vec<(Feature, QuartileContrast)>, AnalysisError> {
    let profiles = reviewer_network_profiles(corpus);
    let citations: BTreeMap<String, Vec<u64>> = profiles
        .iter()
        .map(|p| (p.reviewer_id.clone(), p.accepted_citations.clone()))
        .collect();
    Feature::NETWORK
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let scores = profiles.iter().map(|p| (p.reviewer_id.clone(), p.centralities[i])).collect();
            quartile_contrast(&scores, &citations).map(|c| (f, c))
        })
        .collect()
}

/// Dataset-level counts and means.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DatasetSummary {
    pub papers: usize,
    pub accepted: usize,
    pub rejected: usize,
    pub withdrawn: usize,
    /// Mean review rounds of accepted papers.
    pub mean_reviews_accepted: f64,
    pub mean_reviews_rejected: f64,
    pub mean_citations_accepted: f64,
    pub mean_citations_rejected: f64,
    pub authors: usize,
    pub reviewers: usize,
    pub editors: usize,
    pub mean_submissions_per_author: f64,
    pub mean_authors_per_paper: f64,
}

fn mean_or_zero(values: &[f64]) -> f64 {
    stats::mean(values).unwrap_or(0.0)
}

pub fn summary_table(corpus: &Corpus) -> DatasetSummary {
    let papers = corpus.papers();
    let with = |o: Outcome| papers.iter().filter(move |p| p.outcome() == Some(o));
    let rounds = |o: Outcome| with(o).map(|p| f64::from(p.rounds())).collect::<Vec<_>>();
    let cites = |o: Outcome| {
        with(o)
            .filter_map(|p| p.citations.map(|c| c.count as f64))
            .collect::<Vec<_>>()
    };
    let authors = corpus.authors().len();
    let authorships: usize = papers.iter().map(|p| p.authors.len()).sum();
    DatasetSummary {
        papers: papers.len(),
        accepted: with(Outcome::Accept).count(),
        rejected: with(Outcome::Reject).count(),
        withdrawn: with(Outcome::Withdraw).count(),
        mean_reviews_accepted: mean_or_zero(&rounds(Outcome::Accept)),
        mean_reviews_rejected: mean_or_zero(&rounds(Outcome::Reject)),
        mean_citations_accepted: mean_or_zero(&cites(Outcome::Accept)),
        mean_citations_rejected: mean_or_zero(&cites(Outcome::Reject)),
        authors,
        reviewers: corpus.reviewers().len(),
        editors: corpus.editors().len(),
        mean_submissions_per_author: if authors == 0 {
            0.0
        } else {
            authorships as f64 / authors as f64
        },
        mean_authors_per_paper: if papers.is_empty() {
            0.0
        } else {
            authorships as f64 / papers.len() as f64
        },
    }
}

/// A paper whose citations disagree with its editorial outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct IrregularCase {
    pub paper_id: String,
    pub outcome: Outcome,
    pub citations: u64,
    pub decision_year: i32,
    pub author_acceptance: Option<f64>,
    pub reviewer_acceptance: Option<f64>,
    pub report_length: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct IrregularCases {
    pub high_cited_rejected: Vec<IrregularCase>,
    pub low_cited_accepted: Vec<IrregularCase>,
}

/// Flag rejected papers with `>= 20` citations and accepted papers with
/// `< 10`, among papers decided before `cutoff_year`. Lists follow corpus
/// order.
pub fn irregular_cases(corpus: &Corpus, lexicon: &Lexicon, cutoff_year: i32) -> IrregularCases {
    let extractor = FeatureExtractor::new(corpus, lexicon);
    let mut out = IrregularCases::default();
    for (i, paper) in corpus.papers().iter().enumerate() {
        let (Some(decision), Some(cites), Some(year)) = (paper.decision, paper.citations, paper.decision_year())
        else {
            continue;
        };
        if year >= cutoff_year {
            continue;
        }
        let flagged = match decision.outcome {
            Outcome::Reject => cites.count >= HIGH_CITED_REJECTED,
            Outcome::Accept => cites.count < LOW_CITED_ACCEPTED,
            Outcome::Withdraw => false,
        };
        if !flagged {
            continue;
        }
        let sup = extractor.supporting_features(PaperIdx(i as u32));
        let case = IrregularCase {
            paper_id: paper.id.clone(),
            outcome: decision.outcome,
            citations: cites.count,
            decision_year: year,
            author_acceptance: sup[Feature::AuthorAcceptance.column() - 5],
            reviewer_acceptance: sup[Feature::ReviewerAcceptance.column() - 5],
            report_length: sup[Feature::ReportLength.column() - 5],
        };
        match decision.outcome {
            Outcome::Reject => out.high_cited_rejected.push(case),
            _ => out.low_cited_accepted.push(case),
        }
    }
    out
}

/// Sign of a paper's mean first-round sentiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Polarity {
    Negative,
    Neutral,
    Positive,
}

impl Polarity {
    pub fn of(sentiment: f64) -> Polarity {
        if sentiment > 0.0 {
            Polarity::Positive
        } else if sentiment < 0.0 {
            Polarity::Negative
        } else {
            Polarity::Neutral
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Polarity::Negative => "negative",
            Polarity::Neutral => "neutral",
            Polarity::Positive => "positive",
        }
    }
}

/// Mean citations of one (year, outcome, polarity) cell. `year` is `None`
/// for the all-years row.
#[derive(Clone, Debug, PartialEq)]
pub struct SentimentGroup {
    pub year: Option<i32>,
    pub outcome: Outcome,
    pub polarity: Polarity,
    pub count: usize,
    pub mean_citations: f64,
}

fn first_round_scores(paper: &Paper, lexicon: &Lexicon) -> Vec<text::TextScore> {
    paper
        .reports_in_round(1)
        .map(|r| text::score(&r.text, lexicon))
        .collect()
}

fn first_round_sentiment(paper: &Paper, lexicon: &Lexicon) -> Option<f64> {
    let scores: Vec<f64> = first_round_scores(paper, lexicon).iter().map(|s| s.sentiment).collect();
    stats::mean(&scores)
}

/// Citations grouped by decision year, outcome and first-round sentiment
/// sign. Papers without first-round reports or citations are skipped.
pub fn sentiment_groups(corpus: &Corpus, lexicon: &Lexicon) -> Vec<SentimentGroup> {
    let mut cells: BTreeMap<(Option<i32>, Outcome, Polarity), (usize, f64)> = BTreeMap::new();
    for paper in corpus.papers() {
        let (Some(outcome), Some(c), Some(year)) = (paper.outcome(), paper.citations, paper.decision_year()) else {
            continue;
        };
        let Some(s) = first_round_sentiment(paper, lexicon) else {
            continue;
        };
        let pol = Polarity::of(s);
        for y in [Some(year), None] {
            let e = cells.entry((y, outcome, pol)).or_insert((0, 0.0));
            e.0 += 1;
            e.1 += c.count as f64;
        }
    }
    cells
        .into_iter()
        .map(|((year, outcome, polarity), (count, sum))| SentimentGroup {
            year,
            outcome,
            polarity,
            count,
            mean_citations: sum / count as f64,
        })
        .collect()
}

/// Mean category percentage of first-round reports in the high- and
/// low-cited groups.
#[derive(Clone, Debug, PartialEq)]
pub struct CategoryContrast {
    pub category: Category,
    pub high_cited: f64,
    pub low_cited: f64,
}

/// Top and bottom 10% of accepted papers by citations, decided before
/// `cutoff_year`; ties at the boundary are broken by paper id.
pub fn category_contrast(corpus: &Corpus, lexicon: &Lexicon, cutoff_year: i32) -> Vec<CategoryContrast> {
    let mut pool: Vec<(&Paper, u64)> = corpus
        .papers()
        .iter()
        .filter(|p| p.outcome() == Some(Outcome::Accept) && p.decision_year().is_some_and(|y| y < cutoff_year))
        .filter(|p| p.reports_in_round(1).next().is_some())
        .filter_map(|p| p.citations.map(|c| (p, c.count)))
        .collect();
    let k = pool.len() / 10;
    pool.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.id.cmp(&b.0.id)));
    let high: Vec<&Paper> = pool[..k].iter().map(|x| x.0).collect();
    pool.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.id.cmp(&b.0.id)));
    let low: Vec<&Paper> = pool[..k].iter().map(|x| x.0).collect();

    let group_mean = |papers: &[&Paper], c: Category| {
        let per_paper: Vec<f64> = papers
            .iter()
            .filter_map(|p| {
                let v: Vec<f64> = first_round_scores(p, lexicon)
                    .iter()
                    .map(|s| s.category_pct.get(&c).copied().unwrap_or(0.0))
                    .collect();
                stats::mean(&v)
            })
            .collect();
        mean_or_zero(&per_paper)
    };
    Category::ALL
        .iter()
        .map(|&c| CategoryContrast {
            category: c,
            high_cited: group_mean(&high, c),
            low_cited: group_mean(&low, c),
        })
        .collect()
}

/// Share of papers in the top citation percentile per number of review
/// rounds.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundsPercentile {
    pub rounds: u32,
    pub papers: usize,
    pub top: usize,
    pub fraction: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TopPercentileByRounds {
    pub threshold: u64,
    /// Papers tied at the threshold and therefore included.
    pub ties_at_threshold: usize,
    pub rows: Vec<RoundsPercentile>,
}

/// Accepted papers with citations at or above the `1 - fraction` quantile
/// count as top papers; papers tied at the threshold are all included.
pub fn top_percentile_by_rounds(corpus: &Corpus, fraction: f64) -> TopPercentileByRounds {
    let papers: Vec<(u32, u64)> = corpus
        .papers()
        .iter()
        .filter(|p| p.outcome() == Some(Outcome::Accept))
        .filter_map(|p| p.citations.map(|c| (p.rounds(), c.count)))
        .collect();
    let mut sorted: Vec<u64> = papers.iter().map(|p| p.1).collect();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let k = libm::ceil(fraction * sorted.len() as f64) as usize;
    let threshold = if k == 0 { u64::MAX } else { sorted[k - 1] };
    let ties_at_threshold = sorted.iter().filter(|&&c| c == threshold).count();
    let mut rows: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for &(r, c) in &papers {
        let e = rows.entry(r).or_insert((0, 0));
        e.0 += 1;
        e.1 += usize::from(c >= threshold);
    }
    TopPercentileByRounds {
        threshold,
        ties_at_threshold,
        rows: rows
            .into_iter()
            .map(|(rounds, (n, top))| RoundsPercentile {
                rounds,
                papers: n,
                top,
                fraction: top as f64 / n as f64,
            })
            .collect(),
    }
}

/// Fraction of accepted and rejected papers per citation bucket.
#[derive(Clone, Debug, PartialEq)]
pub struct CitationBucketShare {
    pub bucket: u32,
    pub label: String,
    pub accepted: f64,
    pub rejected: f64,
}

pub fn citation_bucket_shares(corpus: &Corpus) -> Vec<CitationBucketShare> {
    let mut counts: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    let (mut acc, mut rej) = (0usize, 0usize);
    for p in corpus.papers() {
        let Some(c) = p.citations else { continue };
        let e = counts.entry(bucket_powers_of_two(c.count)).or_insert((0, 0));
        match p.outcome() {
            Some(Outcome::Accept) => {
                e.0 += 1;
                acc += 1;
            }
            Some(Outcome::Reject) => {
                e.1 += 1;
                rej += 1;
            }
            _ => {}
        }
    }
    let frac = |x: usize, n: usize| if n == 0 { 0.0 } else { x as f64 / n as f64 };
    counts
        .into_iter()
        .map(|(bucket, (a, r))| CitationBucketShare {
            bucket,
            label: BucketSpec::PowersOfTwo.label(i64::from(bucket)),
            accepted: frac(a, acc),
            rejected: frac(r, rej),
        })
        .collect()
}

/// Mean citations against one feature of the assembled matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureTrend {
    pub feature: Feature,
    pub spec: BucketSpec,
    pub groups: Vec<GroupStat>,
}

/// Bucketing used for each supporting feature's citation trend.
pub fn trend_spec(feature: Feature) -> Option<BucketSpec> {
    Some(match feature {
        Feature::ReviewRounds | Feature::TeamSize => BucketSpec::Exact,
        Feature::ReportLength => BucketSpec::FixedWidth(100.0),
        Feature::ReportDelay => BucketSpec::FixedWidth(25.0),
        Feature::TimeSinceAssignment => BucketSpec::FixedWidth(100.0),
        Feature::AuthorProductivity => BucketSpec::FixedWidth(100.0),
        Feature::Sentiment => BucketSpec::FixedWidth(0.02),
        Feature::AuthorAcceptance | Feature::ReviewerAcceptance => BucketSpec::RatioDeciles,
        _ => return None,
    })
}

/// Mean citations bucketed by each supporting feature; rows with the
/// feature missing are left out of that trend.
pub fn feature_trends(matrix: &FeatureMatrix) -> Vec<FeatureTrend> {
    Feature::ALL
        .iter()
        .filter_map(|&f| trend_spec(f).map(|s| (f, s)))
        .map(|(feature, spec)| {
            let (values, keys): (Vec<f64>, Vec<f64>) = matrix
                .rows
                .iter()
                .filter_map(|r| r.features.get(feature).map(|k| (r.citations as f64, k)))
                .unzip();
            let groups = bucket_mean(&values, &keys, spec).expect("aligned");
            FeatureTrend { feature, spec, groups }
        })
        .collect()
}

/// Reviewers whose ids appear in both quartiles; non-empty only when more
/// than half the reviewers tie.
pub fn quartile_overlap(c: &QuartileContrast) -> BTreeSet<String> {
    let top: BTreeSet<&String> = c.top_reviewers.iter().collect();
    c.bottom_reviewers
        .iter()
        .filter(|r| top.contains(r))
        .cloned()
        .collect()
}
