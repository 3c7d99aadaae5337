//! Per-paper regression features and the per-year citation-rank target.
//!
//! Every history-derived feature of a paper is computed from events dated
//! strictly before its submission date. The only post-submission facts used
//! are the paper's own assignments, reports and rounds.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::centrality::{CentralityTable, PageRankConfig};
use crate::corpus::{Corpus, Outcome, Paper, PaperIdx, ReviewerIdx};
use crate::graph::{self, ReviewGraph};
use crate::stats;
use crate::text::{self, Lexicon};

/// The fourteen regression features, in table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Feature {
    Degree,
    Betweenness,
    Closeness,
    Clustering,
    PageRank,
    ReviewRounds,
    TeamSize,
    ReportLength,
    Sentiment,
    AuthorAcceptance,
    AuthorProductivity,
    ReviewerAcceptance,
    TimeSinceAssignment,
    ReportDelay,
}

impl Feature {
    pub const COUNT: usize = 14;

    pub const ALL: [Feature; 14] = [
        Feature::Degree,
        Feature::Betweenness,
        Feature::Closeness,
        Feature::Clustering,
        Feature::PageRank,
        Feature::ReviewRounds,
        Feature::TeamSize,
        Feature::ReportLength,
        Feature::Sentiment,
        Feature::AuthorAcceptance,
        Feature::AuthorProductivity,
        Feature::ReviewerAcceptance,
        Feature::TimeSinceAssignment,
        Feature::ReportDelay,
    ];

    pub const NETWORK: [Feature; 5] = [
        Feature::Degree,
        Feature::Betweenness,
        Feature::Closeness,
        Feature::Clustering,
        Feature::PageRank,
    ];

    /// Short column name (`Deg`, `BC`, ...).
    pub fn code(self) -> &'static str {
        match self {
            Feature::Degree => "Deg",
            Feature::Betweenness => "BC",
            Feature::Closeness => "CC",
            Feature::Clustering => "Clus",
            Feature::PageRank => "PR",
            Feature::ReviewRounds => "RR",
            Feature::TeamSize => "TS",
            Feature::ReportLength => "RL",
            Feature::Sentiment => "SNT",
            Feature::AuthorAcceptance => "AR",
            Feature::AuthorProductivity => "AP",
            Feature::ReviewerAcceptance => "RAC",
            Feature::TimeSinceAssignment => "TA",
            Feature::ReportDelay => "DR",
        }
    }

    pub fn from_code(code: &str) -> Option<Feature> {
        Feature::ALL.into_iter().find(|f| f.code() == code)
    }

    pub fn column(self) -> usize {
        self as usize
    }

    pub fn is_network(self) -> bool {
        self.column() < 5
    }
}

/// Feature values of one paper; `None` marks a missing value.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureVector {
    pub paper_id: String,
    pub values: [Option<f64>; Feature::COUNT],
}

impl FeatureVector {
    pub fn get(&self, feature: Feature) -> Option<f64> {
        self.values[feature.column()]
    }

    pub fn missing_mask(&self) -> [bool; Feature::COUNT] {
        self.values.map(|v| v.is_none())
    }

    /// Bitwise equality (NaN-safe, distinguishes -0.0).
    pub fn bit_identical(&self, other: &FeatureVector) -> bool {
        self.paper_id == other.paper_id
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.map(f64::to_bits) == b.map(f64::to_bits))
    }
}

struct NetworkState {
    graph: ReviewGraph,
    table: CentralityTable,
}

/// Computes feature vectors for papers of one corpus, caching centrality
/// tables per distinct snapshot.
pub struct FeatureExtractor<'a> {
    corpus: &'a Corpus,
    lexicon: &'a Lexicon,
    pagerank: PageRankConfig,
    /// distinct editor–reviewer pairs among the first `i` timeline entries
    distinct_prefix: Vec<usize>,
    cache: BTreeMap<usize, Rc<NetworkState>>,
}

impl<'a> FeatureExtractor<'a> {
    pub fn new(corpus: &'a Corpus, lexicon: &'a Lexicon) -> Self {
        Self::with_pagerank(corpus, lexicon, PageRankConfig::default())
    }

    pub fn with_pagerank(corpus: &'a Corpus, lexicon: &'a Lexicon, pagerank: PageRankConfig) -> Self {
        let mut seen = BTreeSet::new();
        let mut distinct_prefix = Vec::with_capacity(corpus.assignment_timeline().len() + 1);
        distinct_prefix.push(0);
        for a in corpus.assignment_timeline() {
            seen.insert((a.editor, a.reviewer));
            distinct_prefix.push(seen.len());
        }
        FeatureExtractor {
            corpus,
            lexicon,
            pagerank,
            distinct_prefix,
            cache: BTreeMap::new(),
        }
    }

    pub fn corpus(&self) -> &'a Corpus {
        self.corpus
    }

    /// Snapshot graph and centralities before `paper`'s submission. The
    /// pair set only grows, so equal pair counts mean identical snapshots.
    fn network_state(&mut self, paper: &Paper) -> Option<Rc<NetworkState>> {
        let end = self
            .corpus
            .assignment_timeline()
            .partition_point(|a| a.date < paper.submitted);
        let key = self.distinct_prefix[end];
        if key == 0 {
            return None;
        }
        if let Some(state) = self.cache.get(&key) {
            return Some(state.clone());
        }
        let graph = graph::project(&graph::snapshot(self.corpus, paper.submitted));
        let table = CentralityTable::compute(&graph.graph, &self.pagerank);
        let state = Rc::new(NetworkState { graph, table });
        self.cache.insert(key, state.clone());
        Some(state)
    }

    /// Deg, BC, CC, Clus, PR averaged over the paper's assigned reviewers.
    pub fn network_features(&mut self, idx: PaperIdx) -> [Option<f64>; 5] {
        let paper = self.corpus.paper(idx);
        let reviewers = paper.assigned_reviewers();
        if reviewers.is_empty() {
            return [None; 5];
        }
        let Some(state) = self.network_state(paper) else {
            return [None; 5];
        };
        let n = state.graph.node_count() as f64;
        let mut sums = [0.0f64; 5];
        for &r in &reviewers {
            match state.graph.node_of(r) {
                Some(v) => {
                    let t = &state.table;
                    sums[0] += t.degree[v] as f64;
                    sums[1] += t.betweenness[v];
                    sums[2] += t.closeness[v];
                    sums[3] += t.clustering[v];
                    sums[4] += t.pagerank[v];
                }
                None => sums[4] += 1.0 / n,
            }
        }
        let k = reviewers.len() as f64;
        sums.map(|s| Some(s / k))
    }

    /// RR, TS, RL, SNT, AR, AP, RAC, TA, DR.
    pub fn supporting_features(&self, idx: PaperIdx) -> [Option<f64>; 9] {
        let corpus = self.corpus;
        let paper = corpus.paper(idx);
        let as_of = paper.submitted;

        let review_rounds = paper.review_rounds().map(f64::from);
        let team_size = Some(paper.authors.len() as f64);

        let first_round: Vec<text::TextScore> = paper
            .reports_in_round(1)
            .map(|r| text::score(&r.text, self.lexicon))
            .collect();
        let report_length = mean_of(first_round.iter().map(|s| s.token_count as f64));
        let sentiment = mean_of(first_round.iter().map(|s| s.sentiment));

        let author_acceptance = mean_of(
            paper
                .authors
                .iter()
                .filter_map(|&a| corpus.author_profile_at(a, as_of).acceptance_ratio()),
        );
        let author_productivity = paper
            .authors
            .first()
            .and_then(|&a| corpus.author_profile_at(a, as_of).mean_inter_submission_gap);

        let reviewers = paper.assigned_reviewers();
        let profiles: Vec<_> = reviewers
            .iter()
            .map(|&r| (r, corpus.reviewer_profile_at(r, as_of)))
            .collect();
        let reviewer_acceptance = mean_of(profiles.iter().filter_map(|(_, p)| p.accept_ratio()));
        let time_since_assignment = mean_of(profiles.iter().filter_map(|(r, p)| {
            let last = p.last_assignment_date?;
            let first_here = first_assignment(paper, *r)?;
            Some((first_here - last).num_days() as f64)
        }));
        let report_delay = mean_of(reviewers.iter().filter_map(|&r| {
            let assigned = paper
                .assignments
                .iter()
                .find(|a| a.round == 1 && a.reviewer == r)?
                .date;
            let reported = paper.reports.iter().find(|x| x.round == 1 && x.reviewer == r)?.date;
            Some((reported - assigned).num_days() as f64)
        }));

        [
            review_rounds,
            team_size,
            report_length,
            sentiment,
            author_acceptance,
            author_productivity,
            reviewer_acceptance,
            time_since_assignment,
            report_delay,
        ]
    }

    pub fn features(&mut self, idx: PaperIdx) -> FeatureVector {
        let net = self.network_features(idx);
        let sup = self.supporting_features(idx);
        let mut values = [None; Feature::COUNT];
        values[..5].copy_from_slice(&net);
        values[5..].copy_from_slice(&sup);
        FeatureVector {
            paper_id: self.corpus.paper(idx).id.clone(),
            values,
        }
    }
}

fn first_assignment(paper: &Paper, reviewer: ReviewerIdx) -> Option<crate::corpus::Date> {
    paper
        .assignments
        .iter()
        .filter(|a| a.reviewer == reviewer)
        .map(|a| a.date)
        .min()
}

fn mean_of(values: impl Iterator<Item = f64>) -> Option<f64> {
    let mut sum = 0.0;
    let mut n = 0usize;
    for v in values {
        sum += v;
        n += 1;
    }
    (n > 0).then(|| sum / n as f64)
}

/// Cumulative citations of one paper in its publication year.
#[derive(Clone, Debug, PartialEq)]
pub struct CitationObservation {
    pub paper_id: String,
    pub year: i32,
    pub citations: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TargetValue {
    pub paper_id: String,
    pub publication_year: i32,
    pub citation_rank: f64,
}

/// Rank-based inverse-normal transform of citations within each year:
/// mid-rank percentile `(rank - 0.5) / n` (ties averaged) mapped through the
/// standard normal quantile. Output is aligned with the input.
pub fn citation_rank_targets(observations: &[CitationObservation]) -> Vec<TargetValue> {
    let mut by_year: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (i, o) in observations.iter().enumerate() {
        by_year.entry(o.year).or_default().push(i);
    }
    let mut ranks = alloc::vec![0.0; observations.len()];
    for members in by_year.values() {
        let cites: Vec<f64> = members.iter().map(|&i| observations[i].citations as f64).collect();
        let n = members.len() as f64;
        for (&i, r) in members.iter().zip(stats::mid_ranks(&cites)) {
            ranks[i] = stats::norm_ppf((r - 0.5) / n);
        }
    }
    observations
        .iter()
        .zip(ranks)
        .map(|(o, citation_rank)| TargetValue {
            paper_id: o.paper_id.clone(),
            publication_year: o.year,
            citation_rank,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRow {
    pub paper: PaperIdx,
    pub features: FeatureVector,
    pub year: i32,
    pub citations: u64,
    pub target: f64,
}

/// Accepted papers published in a year window, with features and targets.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FeatureMatrix {
    pub rows: Vec<MatrixRow>,
}

impl FeatureMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn targets(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.target).collect()
    }

    /// Rows restricted to `columns`, missing values as `None`.
    pub fn columns(&self, columns: &[Feature]) -> Vec<Vec<Option<f64>>> {
        self.rows
            .iter()
            .map(|r| columns.iter().map(|&f| r.features.get(f)).collect())
            .collect()
    }
}

/// Rows are accepted papers with a citation record whose decision year lies
/// in `years`, ordered by (submission date, paper id).
pub fn assemble_matrix(corpus: &Corpus, lexicon: &Lexicon, years: RangeInclusive<i32>) -> FeatureMatrix {
    let mut selected: Vec<PaperIdx> = (0..corpus.papers().len() as u32)
        .map(PaperIdx)
        .filter(|&p| {
            let paper = corpus.paper(p);
            paper.outcome() == Some(Outcome::Accept)
                && paper.citations.is_some()
                && paper.decision_year().is_some_and(|y| years.contains(&y))
        })
        .collect();
    selected.sort_by(|&a, &b| {
        let (pa, pb) = (corpus.paper(a), corpus.paper(b));
        (pa.submitted, &pa.id).cmp(&(pb.submitted, &pb.id))
    });

    let observations: Vec<CitationObservation> = selected
        .iter()
        .map(|&p| {
            let paper = corpus.paper(p);
            CitationObservation {
                paper_id: paper.id.clone(),
                year: paper.decision_year().expect("decided"),
                citations: paper.citations.expect("cited").count,
            }
        })
        .collect();
    let targets = citation_rank_targets(&observations);

    let mut extractor = FeatureExtractor::new(corpus, lexicon);
    let rows = selected
        .iter()
        .zip(observations.iter().zip(targets))
        .map(|(&p, (obs, t))| MatrixRow {
            paper: p,
            features: extractor.features(p),
            year: obs.year,
            citations: obs.citations,
            target: t.citation_rank,
        })
        .collect();
    FeatureMatrix { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tests::{assignment, citation, day, decision, report, submission};
    use crate::corpus::{EventKind, Recommendation, ReviewEvent};
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn obs(year: i32, citations: &[u64]) -> Vec<CitationObservation> {
        citations
            .iter()
            .enumerate()
            .map(|(i, &c)| CitationObservation {
                paper_id: alloc::format!("P{i}"),
                year,
                citations: c,
            })
            .collect()
    }

    #[test]
    fn rank_target_examples() {
        let t = citation_rank_targets(&obs(2008, &[1, 5, 10]));
        // oracle: Φ⁻¹(1/6), Φ⁻¹(1/2), Φ⁻¹(5/6)
        let expected = [-0.967421566101701, 0.0, 0.967421566101701];
        for (v, e) in t.iter().zip(expected) {
            assert!((v.citation_rank - e).abs() < 1e-12);
        }
        assert_eq!(citation_rank_targets(&obs(2008, &[7]))[0].citation_rank, 0.0);
        let tied = citation_rank_targets(&obs(2008, &[4, 4]));
        assert!(tied.iter().all(|t| t.citation_rank == 0.0));
        // tied 4s share mid-rank 3.5 of 5
        let t = citation_rank_targets(&obs(2001, &[3, 9, 1, 4, 4]));
        assert_eq!(t[3].citation_rank, t[4].citation_rank);
        assert!((t[3].citation_rank - 0.2533471031357997).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn rank_target_preserves_order(cites in proptest::collection::vec(0u64..50, 1..40)) {
            let t = citation_rank_targets(&obs(2010, &cites));
            for i in 0..cites.len() {
                for j in 0..cites.len() {
                    let (a, b) = (t[i].citation_rank, t[j].citation_rank);
                    prop_assert_eq!(cites[i].cmp(&cites[j]), a.partial_cmp(&b).unwrap());
                }
            }
            let mut distinct = cites.clone();
            distinct.sort();
            distinct.dedup();
            // without ties the percentiles are symmetric around one half
            prop_assume!(distinct.len() == cites.len());
            prop_assert!(t.iter().map(|x| x.citation_rank).sum::<f64>().abs() < 1e-9);
        }
    }

    fn lexicon() -> Lexicon {
        let pos = ["good"].iter().map(|s| s.to_string()).collect();
        let neg = ["bad"].iter().map(|s| s.to_string()).collect();
        Lexicon::new(pos, neg, BTreeMap::new()).unwrap()
    }

    fn full_report(paper: &str, d: i64, reviewer: &str, round: u32, text: &str, rec: Recommendation) -> ReviewEvent {
        ReviewEvent::new(
            paper,
            day(d),
            EventKind::Report {
                reviewer_id: reviewer.to_string(),
                round,
                text: text.to_string(),
                recommendation: rec,
            },
        )
    }

    fn small_corpus() -> Corpus {
        let mut e = vec![
            // history: editor E assigns r1, r2; editor F assigns r2, r3
            submission("H1", 0, &["a1"]),
            assignment("H1", 2, "E", "r1", 1),
            report("H1", 20, "r1", 1, "good work"),
            decision("H1", 25, Outcome::Accept, 1),
            citation("H1", 26, 10),
            submission("H2", 5, &["a1", "a2"]),
            assignment("H2", 6, "E", "r2", 1),
            assignment("H2", 6, "F", "r3", 1),
            report("H2", 30, "r2", 1, "bad"),
            decision("H2", 35, Outcome::Reject, 1),
            citation("H2", 36, 1),
            submission("H3", 7, &["a3"]),
            assignment("H3", 8, "F", "r2", 1),
        ];
        e.extend([
            submission("P", 100, &["a1", "a3"]),
            assignment("P", 100, "E", "r2", 1),
            assignment("P", 101, "E", "r4", 1),
            full_report("P", 160, "r2", 1, "good good bad results", Recommendation::Revise),
            full_report("P", 140, "r4", 1, "fine", Recommendation::Revise),
            assignment("P", 170, "E", "r2", 2),
            full_report("P", 200, "r2", 2, "good", Recommendation::Accept),
            decision("P", 210, Outcome::Accept, 2),
            citation("P", 211, 3),
        ]);
        Corpus::from_events(e).unwrap()
    }

    #[test]
    fn supporting_features_of_small_corpus() {
        let c = small_corpus();
        let lex = lexicon();
        let mut fx = FeatureExtractor::new(&c, &lex);
        let p = c.paper_idx("P").unwrap();
        let v = fx.features(p);
        assert_eq!(v.get(Feature::ReviewRounds), Some(2.0));
        assert_eq!(v.get(Feature::TeamSize), Some(2.0));
        // first-round reports: 4 tokens and 1 token
        assert_eq!(v.get(Feature::ReportLength), Some(2.5));
        assert_eq!(v.get(Feature::Sentiment), Some((0.25 + 0.0) / 2.0));
        // a1: 1 accept, 1 reject; a3: no decisions
        assert_eq!(v.get(Feature::AuthorAcceptance), Some(0.5));
        // a1 submitted on day 0 and day 5
        assert_eq!(v.get(Feature::AuthorProductivity), Some(5.0));
        // r2 reported on H2 (rejected); r4 no history
        assert_eq!(v.get(Feature::ReviewerAcceptance), Some(0.0));
        // r2 last assigned day 8, assigned here day 100
        assert_eq!(v.get(Feature::TimeSinceAssignment), Some(92.0));
        // r2: 100 -> 160, r4: 101 -> 140
        assert_eq!(v.get(Feature::ReportDelay), Some((60.0 + 39.0) / 2.0));
    }

    #[test]
    fn network_features_average_reviewers() {
        let c = small_corpus();
        let lex = lexicon();
        let mut fx = FeatureExtractor::new(&c, &lex);
        let v = fx.features(c.paper_idx("P").unwrap());
        // snapshot before day 100: E-{r1,r2}, F-{r3,r2}: path r1-r2-r3
        // r2: degree 2, BC 1, CC 1, Clus 0; r4 absent: zeros, PR 1/3
        assert_eq!(v.get(Feature::Degree), Some(1.0));
        assert_eq!(v.get(Feature::Betweenness), Some(0.5));
        assert_eq!(v.get(Feature::Closeness), Some(0.5));
        assert_eq!(v.get(Feature::Clustering), Some(0.0));
        let pr = v.get(Feature::PageRank).unwrap();
        assert!(pr > 1.0 / 3.0 / 2.0);

        // first paper ever: empty snapshot
        let h1 = fx.features(c.paper_idx("H1").unwrap());
        assert!(h1.values[..5].iter().all(Option::is_none));
        // later paper sees the earlier assignments
        let h3 = fx.features(c.paper_idx("H3").unwrap());
        assert!(h3.get(Feature::Degree).is_some());
    }

    #[test]
    fn assemble_selects_accepted_in_window() {
        let c = small_corpus();
        let lex = lexicon();
        let m = assemble_matrix(&c, &lex, 2000..=2000);
        let ids: Vec<&str> = m.rows.iter().map(|r| r.features.paper_id.as_str()).collect();
        assert_eq!(ids, vec!["H1", "P"]);
        assert!(assemble_matrix(&c, &lex, 1990..=1991).is_empty());
        assert_eq!(m.columns(&Feature::NETWORK)[0].len(), 5);
    }

    #[test]
    fn feature_codes_round_trip() {
        for f in Feature::ALL {
            assert_eq!(Feature::from_code(f.code()), Some(f));
        }
        assert_eq!(Feature::ALL.iter().filter(|f| f.is_network()).count(), 5);
    }
}
