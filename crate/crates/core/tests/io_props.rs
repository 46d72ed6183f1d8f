mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use spectral_rank::io::{emit_report, format_matrix, parse_games, parse_matrix, parse_report_json, Format};
use spectral_rank::{
    kendall_score, landau_score, pagerank, row_sum_score, validate_round_robin, wei_score, GoogleParams, LandauOptions,
    NonNegMatrix, RankReport, ScoringScheme, Tournament,
};

fn reports() -> Vec<(String, RankReport)> {
    let mut out = Vec::new();
    for (name, m) in fixtures() {
        let t = Tournament::new(m);
        out.push((format!("{name} rowsum"), row_sum_score(&t)));
        out.push((format!("{name} wei"), wei_score(&t)));
        out.push((format!("{name} iterate:3"), kendall_score(&t, 3).unwrap()));
        out.push((
            format!("{name} landau"),
            landau_score(&t, &LandauOptions::default()).unwrap(),
        ));
    }
    for alpha in [0.0, 0.15] {
        let params = GoogleParams {
            alpha,
            ..GoogleParams::default()
        };
        out.push((
            format!("patent pagerank α={alpha}"),
            pagerank(&patent_graph(), &params).unwrap(),
        ));
    }
    out
}

#[test]
fn json_reports_round_trip_field_for_field() {
    for (name, r) in reports() {
        let json = emit_report(&r, Format::Json).unwrap();
        let back = parse_report_json(&json).unwrap();
        assert_eq!(back, r, "{name}");
    }
}

#[test]
fn json_uses_the_stable_keys() {
    let r = landau_score(&Tournament::new(a1()), &LandauOptions::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&emit_report(&r, Format::Json).unwrap()).unwrap();
    for key in [
        "method",
        "eigenvalue",
        "converged",
        "iterations",
        "epsilon_used",
        "scores",
        "diagnostics",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["id", "score", "share", "rank", "tie_group"] {
        assert!(v["scores"][0].get(key).is_some(), "missing scores[].{key}");
    }
    for key in ["irreducible", "scc_count", "dangling", "validation"] {
        assert!(v["diagnostics"].get(key).is_some(), "missing diagnostics.{key}");
    }
    assert_eq!(v["method"], "landau");
    assert_eq!(v["scores"][0]["id"], "1");
}

#[test]
fn matrix_text_round_trips_for_fixtures() {
    for (name, m) in fixtures() {
        assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m, "{name}");
    }
}

fn games_csv(rng: &mut StdRng, n: usize) -> String {
    let mut csv = String::new();
    for i in 0..n {
        for j in i + 1..n {
            let (w, b) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
            let token = ["1-0", "0-1", "1/2-1/2", "½-½", "=", "1", "0", "0.5"][rng.gen_range(0..8)];
            csv.push_str(&format!("player{w},player{b},{token}\n"));
        }
    }
    csv
}

proptest! {
    #[test]
    fn matrix_text_round_trips_bitwise(n in 1usize..8, data in proptest::collection::vec(0.0..1e9f64, 64)) {
        let m = NonNegMatrix::from_dense(n, data[..n * n].to_vec()).unwrap();
        prop_assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn complete_chess_game_lists_validate(n in 2usize..12, seed in any::<u64>()) {
        let csv = games_csv(&mut StdRng::seed_from_u64(seed), n);
        let t = parse_games(&csv, ScoringScheme::CHESS, true).unwrap();
        prop_assert_eq!(t.n(), n);
        let report = validate_round_robin(&t.matrix, &t.scheme);
        prop_assert!(report.valid, "{:?}", report.violations);
    }
}
