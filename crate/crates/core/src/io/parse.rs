use std::collections::{HashMap, HashSet};

use csv::{ReaderBuilder, Trim};

use super::parse_number;
use crate::matrix::NonNegMatrix;
use crate::scoring::{GameOutcome, ScoringScheme};
use crate::tournament::Tournament;
use crate::web::LinkGraph;
use crate::{Error, Result};

/// Result tokens from the first player's side.
pub fn parse_result_token(token: &str) -> Option<GameOutcome> {
    match token.trim() {
        "1-0" | "1" => Some(GameOutcome::Win),
        "0-1" | "0" => Some(GameOutcome::Loss),
        "1/2-1/2" | "½-½" | "0.5" | "=" => Some(GameOutcome::Draw),
        _ => None,
    }
}

/// Reads `white,black,result` lines into a game results matrix.
///
/// Participants are indexed by first appearance. In strict mode a pairing
/// may appear once; otherwise repeated games add up, as in a double round
/// robin. Lines starting with `#` are comments and an optional
/// `white,black,result` header is skipped.
pub fn parse_games(text: &str, scheme: ScoringScheme, strict: bool) -> Result<Tournament> {
    let mut reader = ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());

    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut games: Vec<(usize, usize, GameOutcome)> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();

    for (k, record) in reader.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(k + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected white,black,result but found {} fields", record.len()),
            });
        }
        let (white, black, token) = (&record[0], &record[1], &record[2]);
        if games.is_empty() && white.eq_ignore_ascii_case("white") && black.eq_ignore_ascii_case("black") {
            continue;
        }
        if white.is_empty() || black.is_empty() {
            return Err(Error::Parse {
                line,
                message: "empty participant id".into(),
            });
        }
        if white == black {
            return Err(Error::SelfGame {
                line,
                player: white.to_owned(),
            });
        }
        let outcome = parse_result_token(token).ok_or_else(|| Error::UnknownResult {
            line,
            token: token.to_owned(),
        })?;
        let mut id = |name: &str| -> usize {
            *index.entry(name.to_owned()).or_insert_with(|| {
                labels.push(name.to_owned());
                labels.len() - 1
            })
        };
        let (w, b) = (id(white), id(black));
        if !seen.insert((w.min(b), w.max(b))) && strict {
            return Err(Error::DuplicatePairing {
                line,
                white: white.to_owned(),
                black: black.to_owned(),
            });
        }
        games.push((w, b, outcome));
    }

    let n = labels.len();
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    let mut data = vec![0.0; n * n];
    for (w, b, outcome) in games {
        let (pw, pb) = scheme.points(outcome);
        data[w * n + b] += pw;
        data[b * n + w] += pb;
    }
    Ok(Tournament::with_labels(NonNegMatrix::from_dense(n, data)?, labels)?.with_scheme(scheme))
}

/// Reads `n` whitespace-separated rows of `n` decimals or `p/q` fractions.
/// Blank lines and `#` comments are ignored.
pub fn parse_matrix(text: &str) -> Result<NonNegMatrix> {
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for token in content.split_whitespace() {
            let v = parse_number(token).ok_or_else(|| Error::Parse {
                line,
                message: format!("bad number {token:?}"),
            })?;
            if v < 0.0 {
                return Err(Error::Parse {
                    line,
                    message: format!("negative entry {token}"),
                });
            }
            row.push(v);
        }
        rows.push((line, row));
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if let Some((line, row)) = rows.iter().find(|(_, r)| r.len() != n) {
        return Err(Error::Parse {
            line: *line,
            message: format!("ragged row: {} entries in a {n}-row matrix", row.len()),
        });
    }
    let rows: Vec<Vec<f64>> = rows.into_iter().map(|(_, r)| r).collect();
    NonNegMatrix::from_rows(&rows)
}

/// Inverse of [`parse_matrix`], using shortest round-trip decimals.
pub fn format_matrix(m: &NonNegMatrix) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Reads `source target [count]` lines; `node id` declares a page with no
/// links. Blank lines and `#` comments are ignored.
pub fn parse_edges(text: &str) -> Result<LinkGraph> {
    let mut g = LinkGraph::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            ["node", id] => {
                g.add_page(id);
            }
            [source, target] => g.add_links(source, target, 1)?,
            [source, target, count] => {
                let count: i64 = count.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("link count {count:?} is not an integer"),
                })?;
                if count <= 0 {
                    return Err(Error::Parse {
                        line,
                        message: format!("link count must be positive, got {count}"),
                    });
                }
                g.add_links(source, target, count as u64)?;
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    message: "expected `source target [count]` or `node id`".into(),
                })
            }
        }
    }
    Ok(g)
}
