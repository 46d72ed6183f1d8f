//! Text formats: game lists, matrices, edge lists and report output.

mod emit;
mod parse;

pub use emit::{
    emit_report, emit_structure, format_significant, parse_report_json, Format, ReportDocument, ScoreEntry,
    StructureDocument,
};
pub use parse::{format_matrix, parse_edges, parse_games, parse_matrix, parse_result_token};

/// Parses a decimal (`0.5`, `1e-3`) or a fraction `p/q` to the nearest
/// binary64. `½` is accepted as one half.
pub fn parse_number(token: &str) -> Option<f64> {
    let token = token.trim();
    if token == "½" {
        return Some(0.5);
    }
    let value = match token.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().ok()?;
            let q: f64 = q.trim().parse().ok()?;
            if q == 0.0 {
                return None;
            }
            p / q
        }
        None => token.parse().ok()?,
    };
    value.is_finite().then_some(value)
}
