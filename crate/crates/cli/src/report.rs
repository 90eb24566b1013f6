//! JSON result documents: everything downstream plotting or verification
//! needs to replay a solve.

use matchflip::graph::{EdgeId, Multigraph, PerfectMatching, ReconfigSequence};
use matchflip::solver::SolveReport;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct BlockDocument {
    /// Length diameter of the block's dual tree; absent for bridges and
    /// chordless cycles where it is not defined.
    pub gap: Option<u64>,
    #[serde(rename = "chosen_F")]
    pub chosen_f: Vec<EdgeId>,
    pub piece_gaps: Vec<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Timings {
    pub solve_ms: f64,
    pub total_ms: f64,
}

/// Replayable result: applying `cycles` in order to the first matching
/// reproduces the last, and `opt` equals the number of cycles (full runs).
#[derive(Debug, Serialize, Deserialize)]
pub struct ResultDocument {
    pub opt: usize,
    pub value_only: bool,
    pub blocks: Vec<BlockDocument>,
    pub cycles: Vec<Vec<EdgeId>>,
    pub matchings: Vec<Vec<EdgeId>>,
    pub timings: Timings,
}

impl ResultDocument {
    pub fn from_report(report: &SolveReport, solve_ms: f64, total_ms: f64) -> Self {
        ResultDocument {
            opt: report.opt,
            value_only: false,
            blocks: report
                .blocks
                .iter()
                .map(|b| BlockDocument {
                    gap: b.gap,
                    chosen_f: b.chosen_f.clone(),
                    piece_gaps: b.piece_gaps.clone(),
                })
                .collect(),
            cycles: report.sequence.cycles.iter().map(|c| c.ids().to_vec()).collect(),
            matchings: report.sequence.matchings.iter().map(|m| m.ids().to_vec()).collect(),
            timings: Timings { solve_ms, total_ms },
        }
    }

    pub fn from_sequence(seq: &ReconfigSequence, solve_ms: f64, total_ms: f64) -> Self {
        ResultDocument {
            opt: seq.len(),
            value_only: false,
            blocks: Vec::new(),
            cycles: seq.cycles.iter().map(|c| c.ids().to_vec()).collect(),
            matchings: seq.matchings.iter().map(|m| m.ids().to_vec()).collect(),
            timings: Timings { solve_ms, total_ms },
        }
    }

    pub fn value_only(opt: usize, solve_ms: f64, total_ms: f64) -> Self {
        ResultDocument {
            opt,
            value_only: true,
            blocks: Vec::new(),
            cycles: Vec::new(),
            matchings: Vec::new(),
            timings: Timings { solve_ms, total_ms },
        }
    }

    /// Re-applies the cycles from the first matching and checks the document
    /// is internally consistent.
    pub fn replay(&self, g: &Multigraph) -> matchflip::error::Result<()> {
        use matchflip::error::Error;
        if self.value_only {
            return Ok(());
        }
        if self.cycles.len() != self.opt || self.matchings.len() != self.opt + 1 {
            return Err(Error::Input("document counts are inconsistent".into()));
        }
        let mut cur = PerfectMatching::new(g, self.matchings[0].clone())?;
        for (i, ids) in self.cycles.iter().enumerate() {
            let c = matchflip::graph::Cycle::new(g, ids.clone())?;
            cur = matchflip::graph::flip(g, &cur, &c)?;
            let expect = PerfectMatching::new(g, self.matchings[i + 1].clone())?;
            if cur != expect {
                return Err(Error::Input(format!("replay diverges at step {}", i + 1)));
            }
        }
        Ok(())
    }
}
