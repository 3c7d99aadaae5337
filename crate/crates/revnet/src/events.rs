//! Line-delimited JSON event logs.
//!
//! One object per line: `{"paper_id": .., "date": "YYYY-MM-DD", "type": ..}`
//! plus the kind-specific fields. Blank lines are ignored.

use std::io::{self, BufRead, Write};

use revnet_core::corpus::ReviewEvent;

/// A line that failed to parse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineError {
    /// 1-based line number.
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for LineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}:{}: {}", self.line, self.column, self.message)
    }
}

/// Parsed events in file order, with the 1-based line of each event, and
/// the lines that failed to parse.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParsedLog {
    pub events: Vec<ReviewEvent>,
    pub lines: Vec<usize>,
    pub errors: Vec<LineError>,
}

pub fn parse_events<R: BufRead>(reader: R) -> io::Result<ParsedLog> {
    let mut log = ParsedLog::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<ReviewEvent>(&line) {
            Ok(ev) => {
                log.events.push(ev);
                log.lines.push(i + 1);
            }
            Err(e) => log.errors.push(LineError {
                line: i + 1,
                column: e.column(),
                message: e.to_string(),
            }),
        }
    }
    Ok(log)
}

pub fn parse_str(text: &str) -> ParsedLog {
    parse_events(text.as_bytes()).expect("reading from memory")
}

pub fn write_events<W: Write>(mut out: W, events: &[ReviewEvent]) -> io::Result<()> {
    for ev in events {
        serde_json::to_writer(&mut out, ev)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn to_string(events: &[ReviewEvent]) -> String {
    let mut buf = Vec::new();
    write_events(&mut buf, events).expect("writing to memory");
    String::from_utf8(buf).expect("json is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use revnet_core::corpus::{EventKind, Outcome, Recommendation};

    const LOG: &str = r#"{"paper_id":"P1","date":"2008-01-03","type":"submission","author_ids":["a1","a2"],"title":"T"}
{"paper_id":"P1","date":"2008-01-05","type":"assignment","editor_id":"E1","reviewer_id":"R1","round":1}

{"paper_id":"P1","date":"2008-02-05","type":"report","reviewer_id":"R1","round":1,"text":"Good.","recommendation":"accept"}
{"paper_id":"P1","date":"2008-02-09","type":"decision","outcome":"accept","round":1}
{"paper_id":"P1","date":"2015-12-31","type":"citation","cumulative_citations":12,"as_of_year":2015}
"#;

    #[test]
    fn parses_every_kind() {
        let log = parse_str(LOG);
        assert!(log.errors.is_empty(), "{:?}", log.errors);
        assert_eq!(log.events.len(), 5);
        assert_eq!(log.lines, vec![1, 2, 4, 5, 6]);
        match &log.events[0].kind {
            EventKind::Submission { author_ids, .. } => assert_eq!(author_ids.len(), 2),
            k => panic!("{k:?}"),
        }
        assert!(matches!(
            log.events[2].kind,
            EventKind::Report {
                recommendation: Recommendation::Accept,
                ..
            }
        ));
        assert!(matches!(
            log.events[3].kind,
            EventKind::Decision {
                outcome: Outcome::Accept,
                round: 1
            }
        ));
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let log = parse_str(LOG);
        let text = to_string(&log.events);
        assert_eq!(parse_str(&text).events, log.events);
        assert_eq!(to_string(&parse_str(&text).events), text);
    }

    #[test]
    fn empty_and_malformed_lines() {
        let log = parse_str("");
        assert!(log.events.is_empty() && log.errors.is_empty());
        let bad = LOG.replace("2008-01-05", "2008-13-05");
        let log = parse_str(&bad);
        assert_eq!(log.errors.len(), 1);
        assert_eq!(log.errors[0].line, 2);
        assert_eq!(log.events.len(), 4);
        let log = parse_str(r#"{"paper_id":"P","date":"2008-01-01","type":"decision","outcome":"maybe","round":1}"#);
        assert_eq!(log.errors.len(), 1);
    }
}
