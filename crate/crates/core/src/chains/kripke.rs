use crate::formula::Formula;
use crate::{Error, Result};

use super::LogicParams;

/// A deterministic frame: world `w` sees at most `successor(w)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DetFrame {
    succ: Vec<Option<usize>>,
}

impl DetFrame {
    /// Errors unless there are 1..=64 worlds and every successor exists.
    pub fn new(succ: Vec<Option<usize>>) -> Result<Self> {
        if succ.is_empty() || succ.len() > 64 {
            return Err(Error::InvalidParams(format!(
                "frames need 1..=64 worlds, got {}",
                succ.len()
            )));
        }
        if let Some(bad) = succ.iter().flatten().find(|&&t| t >= succ.len()) {
            return Err(Error::InvalidParams(format!(
                "successor {bad} is not a world"
            )));
        }
        Ok(DetFrame { succ })
    }

    /// Worlds `0..len` with `s R t` iff `t = s + 1`.
    pub fn linear(len: usize) -> Result<Self> {
        DetFrame::new((0..len).map(|w| (w + 1 < len).then_some(w + 1)).collect())
    }

    pub fn worlds(&self) -> usize {
        self.succ.len()
    }

    pub fn successor(&self, world: usize) -> Option<usize> {
        self.succ[world]
    }

    /// No `R`-path `s_0 R s_1 R … R s_d` exists.
    pub fn is_bounded(&self, d: usize) -> bool {
        (0..self.worlds()).all(|start| {
            let mut cur = start;
            for _ in 0..d {
                match self.succ[cur] {
                    Some(next) => cur = next,
                    None => return true,
                }
            }
            false
        })
    }
}

/// Every successor map on `1..=max_worlds` worlds whose frame is
/// `d`-bounded, smallest frames first.
pub fn enumerate_det_frames(max_worlds: usize, d: usize) -> Result<Vec<DetFrame>> {
    if max_worlds == 0 || max_worlds > 6 {
        return Err(Error::InvalidParams(format!(
            "frame enumeration supports 1..=6 worlds, got {max_worlds}"
        )));
    }
    let mut frames = Vec::new();
    for worlds in 1..=max_worlds {
        // Each world picks one of `worlds` successors or none (digit `worlds`).
        let choices = worlds + 1;
        let total = choices.pow(worlds as u32);
        for mut code in 0..total {
            let succ = (0..worlds)
                .map(|_| {
                    let digit = code % choices;
                    code /= choices;
                    (digit < worlds).then_some(digit)
                })
                .collect();
            let frame = DetFrame { succ };
            if frame.is_bounded(d) {
                frames.push(frame);
            }
        }
    }
    Ok(frames)
}

/// Validity on a frame: `f` holds at every world under every valuation of
/// `x_1..x_n`.
pub fn kripke_valid(f: &Formula, frame: &DetFrame, p: &LogicParams) -> Result<bool> {
    f.check_width(p.n)?;
    if !frame.is_bounded(p.d) {
        return Err(Error::UnboundedFrame { bound: p.d });
    }
    let worlds = frame.worlds();
    let log2 = (worlds * p.n) as u32;
    p.budget.check_candidates(log2)?;
    let all = if worlds == 64 {
        u64::MAX
    } else {
        (1u64 << worlds) - 1
    };
    let mut valuation = vec![0u64; p.n];
    for code in 0..(1u64 << log2) {
        for (j, v) in valuation.iter_mut().enumerate() {
            *v = (code >> (j * worlds)) & all;
        }
        if eval(f, frame, &valuation, all) != all {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The set of worlds where `f` holds, as a bitmask.
fn eval(f: &Formula, frame: &DetFrame, valuation: &[u64], all: u64) -> u64 {
    match f {
        Formula::Var(j) => valuation[j - 1],
        Formula::Falsum => 0,
        Formula::Neg(g) => !eval(g, frame, valuation, all) & all,
        Formula::Or(a, b) => eval(a, frame, valuation, all) | eval(b, frame, valuation, all),
        Formula::Box(g) => {
            let inner = eval(g, frame, valuation, all);
            (0..frame.worlds())
                .filter(|&w| frame.successor(w).is_none_or(|t| inner >> t & 1 == 1))
                .fold(0, |acc, w| acc | 1 << w)
        }
    }
}
