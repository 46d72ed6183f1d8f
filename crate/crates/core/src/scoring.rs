//! Scoring conventions for individual games.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Points awarded for a win, a draw and a loss.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoringScheme {
    pub win: f64,
    pub draw: f64,
    pub loss: f64,
}

impl ScoringScheme {
    /// 1 / ½ / 0.
    pub const CHESS: ScoringScheme = ScoringScheme {
        win: 1.0,
        draw: 0.5,
        loss: 0.0,
    };

    /// 3 / 1 / 0.
    pub const FOOTBALL: ScoringScheme = ScoringScheme {
        win: 3.0,
        draw: 1.0,
        loss: 0.0,
    };

    pub fn new(win: f64, draw: f64, loss: f64) -> Result<Self> {
        let ok = [win, draw, loss].iter().all(|v| v.is_finite()) && win > draw && draw >= loss && loss >= 0.0;
        if ok {
            Ok(Self { win, draw, loss })
        } else {
            Err(Error::InvalidScheme { win, draw, loss })
        }
    }

    /// Points scored by each side, from the first player's perspective.
    pub fn points(&self, outcome: GameOutcome) -> (f64, f64) {
        match outcome {
            GameOutcome::Win => (self.win, self.loss),
            GameOutcome::Loss => (self.loss, self.win),
            GameOutcome::Draw => (self.draw, self.draw),
        }
    }

    /// Admissible totals `A[i][j] + A[j][i]` for one played pairing.
    pub fn pair_totals(&self) -> [f64; 2] {
        [self.win + self.loss, 2.0 * self.draw]
    }
}

impl Default for ScoringScheme {
    fn default() -> Self {
        Self::CHESS
    }
}

impl fmt::Display for ScoringScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.win, self.draw, self.loss)
    }
}

/// Accepts `chess`, `football` or an explicit `win,draw,loss` triple.
impl FromStr for ScoringScheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "chess" => Ok(Self::CHESS),
            "football" => Ok(Self::FOOTBALL),
            other => {
                let parts: Vec<&str> = other.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(format!("expected chess, football or win,draw,loss; got {other:?}"));
                }
                let mut vals = [0.0; 3];
                for (slot, part) in vals.iter_mut().zip(&parts) {
                    *slot = crate::io::parse_number(part).ok_or_else(|| format!("bad number {part:?}"))?;
                }
                Self::new(vals[0], vals[1], vals[2]).map_err(|e| e.to_string())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameOutcome {
    Win,
    Loss,
    Draw,
}

/// One game, with the outcome read from `white`'s side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameRecord {
    pub white: String,
    pub black: String,
    pub result: GameOutcome,
}
