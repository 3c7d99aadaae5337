//! Peer-review event model, validation, indexing and as-of-date profiles.
//!
//! A corpus is an ordered list of [`ReviewEvent`]s. Validation checks the
//! structural invariants (every event follows its paper's submission, rounds
//! are contiguous from 1, at most one terminal decision, citations only for
//! decided papers). A validated [`Corpus`] interns every id into a dense index
//! and keeps per-author and per-reviewer lookups so profile queries stay cheap.
//!
//! All profile queries take an `as_of` date and only look at facts dated
//! strictly before it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use chrono::NaiveDate as Date;

/// Referee recommendation attached to a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Recommendation {
    Accept,
    Reject,
    Revise,
}

/// Terminal editorial outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Outcome {
    Accept,
    Reject,
    Withdraw,
}

/// Kind-specific payload of an event. On the wire the variant is carried in
/// the `type` field.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "type", rename_all = "lowercase"))]
pub enum EventKind {
    Submission {
        author_ids: Vec<String>,
        title: String,
    },
    Assignment {
        editor_id: String,
        reviewer_id: String,
        round: u32,
    },
    Report {
        reviewer_id: String,
        round: u32,
        text: String,
        recommendation: Recommendation,
    },
    Decision {
        outcome: Outcome,
        round: u32,
    },
    #[cfg_attr(feature = "serde", serde(rename = "citation"))]
    CitationRecord {
        cumulative_citations: u64,
        as_of_year: i32,
    },
}

/// One timestamped fact in a paper's editorial history.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReviewEvent {
    pub paper_id: String,
    pub date: Date,
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub kind: EventKind,
}

impl ReviewEvent {
    pub fn new(paper_id: impl Into<String>, date: Date, kind: EventKind) -> Self {
        ReviewEvent {
            paper_id: paper_id.into(),
            date,
            kind,
        }
    }

    fn round(&self) -> Option<u32> {
        match &self.kind {
            EventKind::Assignment { round, .. }
            | EventKind::Report { round, .. }
            | EventKind::Decision { round, .. } => Some(*round),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IssueKind {
    #[error("event precedes any submission of the paper")]
    MissingSubmission,
    #[error("paper submitted more than once")]
    DuplicateSubmission,
    #[error("submission has no authors")]
    EmptyAuthorList,
    #[error("more than one terminal decision")]
    DuplicateDecision,
    #[error("event dated {date} before the submission date {submitted}")]
    BeforeSubmission { date: Date, submitted: Date },
    #[error("round must be a positive integer")]
    ZeroRound,
    #[error("rounds are not contiguous from 1 (missing round {missing})")]
    NonContiguousRounds { missing: u32 },
    #[error("citation record without a terminal decision")]
    CitationWithoutDecision,
}

/// A single validation failure, pointing at the offending event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationIssue {
    /// Position of the event in the input list.
    pub index: usize,
    pub paper_id: String,
    pub kind: IssueKind,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "event {} (paper {}): {}", self.index, self.paper_id, self.kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{} validation issue(s), first: {}", .0.len(), .0[0])]
pub struct ValidationErrors(pub Vec<ValidationIssue>);

/// Check the structural invariants of an event list. Returns every issue
/// found, in event order (round-contiguity issues are reported at the
/// paper's last event).
pub fn validate(events: &[ReviewEvent]) -> Vec<ValidationIssue> {
    struct State {
        submitted: Date,
        decided: bool,
        rounds: BTreeSet<u32>,
        last_index: usize,
        citation_index: Option<usize>,
    }

    let mut issues = Vec::new();
    let mut papers: BTreeMap<&str, State> = BTreeMap::new();
    let mut push = |index: usize, paper: &str, kind: IssueKind| {
        issues.push(ValidationIssue {
            index,
            paper_id: String::from(paper),
            kind,
        })
    };

    for (index, event) in events.iter().enumerate() {
        let id = event.paper_id.as_str();
        if let EventKind::Submission { author_ids, .. } = &event.kind {
            if papers.contains_key(id) {
                push(index, id, IssueKind::DuplicateSubmission);
                continue;
            }
            if author_ids.is_empty() {
                push(index, id, IssueKind::EmptyAuthorList);
            }
            papers.insert(
                id,
                State {
                    submitted: event.date,
                    decided: false,
                    rounds: BTreeSet::new(),
                    last_index: index,
                    citation_index: None,
                },
            );
            continue;
        }
        let Some(state) = papers.get_mut(id) else {
            push(index, id, IssueKind::MissingSubmission);
            continue;
        };
        state.last_index = index;
        if event.date < state.submitted {
            push(
                index,
                id,
                IssueKind::BeforeSubmission {
                    date: event.date,
                    submitted: state.submitted,
                },
            );
        }
        if let Some(round) = event.round() {
            if round == 0 {
                push(index, id, IssueKind::ZeroRound);
            } else {
                state.rounds.insert(round);
            }
        }
        match &event.kind {
            EventKind::Decision { .. } => {
                if state.decided {
                    push(index, id, IssueKind::DuplicateDecision);
                }
                state.decided = true;
            }
            EventKind::CitationRecord { .. } => {
                state.citation_index.get_or_insert(index);
            }
            _ => {}
        }
    }

    let mut tail = Vec::new();
    for (id, state) in &papers {
        if let Some(&max) = state.rounds.last() {
            if state.rounds.len() as u32 != max {
                let missing = (1..=max).find(|r| !state.rounds.contains(r)).unwrap_or(1);
                tail.push(ValidationIssue {
                    index: state.last_index,
                    paper_id: String::from(*id),
                    kind: IssueKind::NonContiguousRounds { missing },
                });
            }
        }
        if let Some(index) = state.citation_index {
            if !state.decided {
                tail.push(ValidationIssue {
                    index,
                    paper_id: String::from(*id),
                    kind: IssueKind::CitationWithoutDecision,
                });
            }
        }
    }
    issues.extend(tail);
    issues.sort_by_key(|i| i.index);
    issues
}

macro_rules! index_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub u32);

        impl $name {
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }
    };
}

index_type!(
    /// Dense index of a paper in a [`Corpus`].
    PaperIdx
);
index_type!(
    /// Dense index of an author id.
    AuthorIdx
);
index_type!(
    /// Dense index of a reviewer id.
    ReviewerIdx
);
index_type!(
    /// Dense index of an editor id.
    EditorIdx
);

/// String id ↔ dense index table.
#[derive(Clone, Debug, Default)]
pub struct Interner {
    names: Vec<String>,
    lookup: BTreeMap<String, u32>,
}

impl Interner {
    fn intern(&mut self, name: &str) -> u32 {
        if let Some(&i) = self.lookup.get(name) {
            return i;
        }
        let i = self.names.len() as u32;
        self.names.push(String::from(name));
        self.lookup.insert(String::from(name), i);
        i
    }

    pub fn get(&self, name: &str) -> Option<u32> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, i: u32) -> &str {
        &self.names[i as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    pub date: Date,
    pub editor: EditorIdx,
    pub reviewer: ReviewerIdx,
    pub round: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub date: Date,
    pub reviewer: ReviewerIdx,
    pub round: u32,
    pub text: String,
    pub recommendation: Recommendation,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decision {
    pub date: Date,
    pub outcome: Outcome,
    pub round: u32,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Citations {
    pub date: Date,
    pub count: u64,
    pub as_of_year: i32,
}

/// Everything recorded about one submitted paper.
#[derive(Clone, Debug, PartialEq)]
pub struct Paper {
    pub id: String,
    pub submitted: Date,
    pub title: String,
    pub authors: Vec<AuthorIdx>,
    pub assignments: Vec<Assignment>,
    pub reports: Vec<Report>,
    pub decision: Option<Decision>,
    pub citations: Option<Citations>,
}

impl Paper {
    /// Highest round number seen in any assignment, report or decision.
    pub fn rounds(&self) -> u32 {
        let a = self.assignments.iter().map(|a| a.round);
        let r = self.reports.iter().map(|r| r.round);
        let d = self.decision.iter().map(|d| d.round);
        a.chain(r).chain(d).max().unwrap_or(0)
    }

    /// Highest round with a referee report, if any.
    pub fn review_rounds(&self) -> Option<u32> {
        self.reports.iter().map(|r| r.round).max()
    }

    pub fn outcome(&self) -> Option<Outcome> {
        self.decision.map(|d| d.outcome)
    }

    /// Year the paper was decided (published, for accepted papers).
    pub fn decision_year(&self) -> Option<i32> {
        use chrono::Datelike;
        self.decision.map(|d| d.date.year())
    }

    /// Distinct reviewers assigned in any round, in first-assignment order.
    pub fn assigned_reviewers(&self) -> Vec<ReviewerIdx> {
        let mut out: Vec<ReviewerIdx> = Vec::new();
        for a in &self.assignments {
            if !out.contains(&a.reviewer) {
                out.push(a.reviewer);
            }
        }
        out
    }

    pub fn reports_in_round(&self, round: u32) -> impl Iterator<Item = &Report> {
        self.reports.iter().filter(move |r| r.round == round)
    }
}

/// An assignment together with its position in the event list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TimedAssignment {
    pub date: Date,
    pub order: usize,
    pub paper: PaperIdx,
    pub editor: EditorIdx,
    pub reviewer: ReviewerIdx,
}

/// Author history as of a date.
#[derive(Clone, Debug, PartialEq)]
pub struct AuthorProfile {
    pub author_id: String,
    pub accept_count: u32,
    pub reject_count: u32,
    pub submission_dates: Vec<Date>,
    /// Mean gap in days between successive submissions (`s_t`).
    pub mean_inter_submission_gap: Option<f64>,
}

impl AuthorProfile {
    /// `accept / (accept + reject)`, undefined with no decisions.
    pub fn acceptance_ratio(&self) -> Option<f64> {
        ratio(self.accept_count, self.reject_count)
    }
}

/// Reviewer history as of a date.
#[derive(Clone, Debug, PartialEq)]
pub struct ReviewerProfile {
    pub reviewer_id: String,
    pub accept_count: u32,
    pub reject_count: u32,
    pub last_assignment_date: Option<Date>,
}

impl ReviewerProfile {
    pub fn accept_ratio(&self) -> Option<f64> {
        ratio(self.accept_count, self.reject_count)
    }
}

fn ratio(accept: u32, reject: u32) -> Option<f64> {
    let total = accept + reject;
    (total > 0).then(|| accept as f64 / total as f64)
}

/// A validated, indexed event log. Immutable once built.
#[derive(Clone, Debug)]
pub struct Corpus {
    events: Vec<ReviewEvent>,
    papers: Vec<Paper>,
    paper_ids: Interner,
    authors: Interner,
    reviewers: Interner,
    editors: Interner,
    /// All assignments sorted by (date, event order).
    timeline: Vec<TimedAssignment>,
    author_papers: Vec<Vec<PaperIdx>>,
    /// Papers each reviewer wrote at least one report for.
    reviewer_papers: Vec<Vec<PaperIdx>>,
    reviewer_assignments: Vec<Vec<Date>>,
}

impl Corpus {
    /// Validate and index an event list.
    pub fn from_events(events: Vec<ReviewEvent>) -> Result<Self, ValidationErrors> {
        let issues = validate(&events);
        if !issues.is_empty() {
            return Err(ValidationErrors(issues));
        }

        let mut papers: Vec<Paper> = Vec::new();
        let mut paper_ids = Interner::default();
        let mut authors = Interner::default();
        let mut reviewers = Interner::default();
        let mut editors = Interner::default();
        let mut timeline = Vec::new();

        for (order, event) in events.iter().enumerate() {
            if let EventKind::Submission { author_ids, title } = &event.kind {
                paper_ids.intern(&event.paper_id);
                papers.push(Paper {
                    id: event.paper_id.clone(),
                    submitted: event.date,
                    title: title.clone(),
                    authors: author_ids.iter().map(|a| AuthorIdx(authors.intern(a))).collect(),
                    assignments: Vec::new(),
                    reports: Vec::new(),
                    decision: None,
                    citations: None,
                });
                continue;
            }
            // validation guarantees the submission came first
            let pi = paper_ids.get(&event.paper_id).expect("validated");
            let paper = &mut papers[pi as usize];
            match &event.kind {
                EventKind::Submission { .. } => unreachable!(),
                EventKind::Assignment {
                    editor_id,
                    reviewer_id,
                    round,
                } => {
                    let editor = EditorIdx(editors.intern(editor_id));
                    let reviewer = ReviewerIdx(reviewers.intern(reviewer_id));
                    paper.assignments.push(Assignment {
                        date: event.date,
                        editor,
                        reviewer,
                        round: *round,
                    });
                    timeline.push(TimedAssignment {
                        date: event.date,
                        order,
                        paper: PaperIdx(pi),
                        editor,
                        reviewer,
                    });
                }
                EventKind::Report {
                    reviewer_id,
                    round,
                    text,
                    recommendation,
                } => {
                    paper.reports.push(Report {
                        date: event.date,
                        reviewer: ReviewerIdx(reviewers.intern(reviewer_id)),
                        round: *round,
                        text: text.clone(),
                        recommendation: *recommendation,
                    });
                }
                EventKind::Decision { outcome, round } => {
                    paper.decision = Some(Decision {
                        date: event.date,
                        outcome: *outcome,
                        round: *round,
                    });
                }
                EventKind::CitationRecord {
                    cumulative_citations,
                    as_of_year,
                } => {
                    // a later record supersedes an earlier one
                    paper.citations = Some(Citations {
                        date: event.date,
                        count: *cumulative_citations,
                        as_of_year: *as_of_year,
                    });
                }
            }
        }

        timeline.sort_by_key(|a| (a.date, a.order));

        let mut author_papers = alloc::vec![Vec::new(); authors.len()];
        let mut reviewer_papers = alloc::vec![Vec::new(); reviewers.len()];
        let mut reviewer_assignments = alloc::vec![Vec::new(); reviewers.len()];
        for (i, paper) in papers.iter().enumerate() {
            for a in &paper.authors {
                let list: &mut Vec<PaperIdx> = &mut author_papers[a.index()];
                if !list.contains(&PaperIdx(i as u32)) {
                    list.push(PaperIdx(i as u32));
                }
            }
            for r in &paper.reports {
                let list: &mut Vec<PaperIdx> = &mut reviewer_papers[r.reviewer.index()];
                if list.last() != Some(&PaperIdx(i as u32)) && !list.contains(&PaperIdx(i as u32)) {
                    list.push(PaperIdx(i as u32));
                }
            }
        }
        for a in &timeline {
            reviewer_assignments[a.reviewer.index()].push(a.date);
        }

        Ok(Corpus {
            events,
            papers,
            paper_ids,
            authors,
            reviewers,
            editors,
            timeline,
            author_papers,
            reviewer_papers,
            reviewer_assignments,
        })
    }

    pub fn events(&self) -> &[ReviewEvent] {
        &self.events
    }

    pub fn papers(&self) -> &[Paper] {
        &self.papers
    }

    pub fn paper(&self, idx: PaperIdx) -> &Paper {
        &self.papers[idx.index()]
    }

    pub fn paper_idx(&self, id: &str) -> Option<PaperIdx> {
        self.paper_ids.get(id).map(PaperIdx)
    }

    pub fn authors(&self) -> &Interner {
        &self.authors
    }

    pub fn reviewers(&self) -> &Interner {
        &self.reviewers
    }

    pub fn editors(&self) -> &Interner {
        &self.editors
    }

    /// Every assignment ordered by (date, position in the log).
    pub fn assignment_timeline(&self) -> &[TimedAssignment] {
        &self.timeline
    }

    pub fn papers_of_author(&self, author: AuthorIdx) -> &[PaperIdx] {
        &self.author_papers[author.index()]
    }

    pub fn papers_reported_by(&self, reviewer: ReviewerIdx) -> &[PaperIdx] {
        &self.reviewer_papers[reviewer.index()]
    }

    /// Author profile by id; unknown authors yield an empty profile.
    pub fn author_profile(&self, author_id: &str, as_of: Date) -> AuthorProfile {
        match self.authors.get(author_id) {
            Some(i) => self.author_profile_at(AuthorIdx(i), as_of),
            None => AuthorProfile {
                author_id: String::from(author_id),
                accept_count: 0,
                reject_count: 0,
                submission_dates: Vec::new(),
                mean_inter_submission_gap: None,
            },
        }
    }

    pub fn author_profile_at(&self, author: AuthorIdx, as_of: Date) -> AuthorProfile {
        let mut accept_count = 0;
        let mut reject_count = 0;
        let mut submission_dates = Vec::new();
        for &p in self.papers_of_author(author) {
            let paper = self.paper(p);
            if paper.submitted < as_of {
                submission_dates.push(paper.submitted);
            }
            match paper.decision {
                Some(d) if d.date < as_of => match d.outcome {
                    Outcome::Accept => accept_count += 1,
                    Outcome::Reject => reject_count += 1,
                    Outcome::Withdraw => {}
                },
                _ => {}
            }
        }
        submission_dates.sort();
        let mean_inter_submission_gap = (submission_dates.len() >= 2).then(|| {
            let first = submission_dates[0];
            let last = submission_dates[submission_dates.len() - 1];
            // successive differences telescope
            (last - first).num_days() as f64 / (submission_dates.len() - 1) as f64
        });
        AuthorProfile {
            author_id: String::from(self.authors.name(author.0)),
            accept_count,
            reject_count,
            submission_dates,
            mean_inter_submission_gap,
        }
    }

    /// Reviewer profile by id; unknown reviewers yield an empty profile.
    pub fn reviewer_profile(&self, reviewer_id: &str, as_of: Date) -> ReviewerProfile {
        match self.reviewers.get(reviewer_id) {
            Some(i) => self.reviewer_profile_at(ReviewerIdx(i), as_of),
            None => ReviewerProfile {
                reviewer_id: String::from(reviewer_id),
                accept_count: 0,
                reject_count: 0,
                last_assignment_date: None,
            },
        }
    }

    pub fn reviewer_profile_at(&self, reviewer: ReviewerIdx, as_of: Date) -> ReviewerProfile {
        let mut accept_count = 0;
        let mut reject_count = 0;
        for &p in self.papers_reported_by(reviewer) {
            let paper = self.paper(p);
            let reported_before = paper
                .reports
                .iter()
                .any(|r| r.reviewer == reviewer && r.date < as_of);
            match paper.decision {
                Some(d) if d.date < as_of && reported_before => match d.outcome {
                    Outcome::Accept => accept_count += 1,
                    Outcome::Reject => reject_count += 1,
                    Outcome::Withdraw => {}
                },
                _ => {}
            }
        }
        let dates = &self.reviewer_assignments[reviewer.index()];
        let n = dates.partition_point(|&d| d < as_of);
        ReviewerProfile {
            reviewer_id: String::from(self.reviewers.name(reviewer.0)),
            accept_count,
            reject_count,
            last_assignment_date: n.checked_sub(1).map(|i| dates[i]),
        }
    }
}
