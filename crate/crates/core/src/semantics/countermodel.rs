use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{eval_labelings, forces, Valuation};
use crate::algebra::{mixed_radix_decode, Elem, FiniteResiduatedLattice};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poset_product::{enumerate_ac_labelings, Frame, FrameSpec};
use crate::posets::all_posets;
use crate::syntax::{CompiledTerm, Odometer, Term};

/// Frames over every poset with at most `max_nodes` nodes, each node valued
/// in one of `values`.
#[derive(Clone, Debug)]
pub struct FrameFamily {
    pub max_nodes: usize,
    pub values: Vec<(String, FiniteResiduatedLattice)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub seed: u64,
    /// Valuations drawn per frame when a frame is not searched exhaustively.
    pub samples: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { seed: 0, samples: 1000 }
    }
}

/// Frames are searched exhaustively when the formula has at most this many
/// variables and the poset product at most [`EXHAUSTIVE_MAX_PRODUCT`]
/// elements; otherwise valuations are sampled.
pub const EXHAUSTIVE_MAX_VARIABLES: usize = 2;
pub const EXHAUSTIVE_MAX_PRODUCT: usize = 25;

/// Every frame of the family, by node count, then poset (see
/// [`all_posets`]), then algebra assignment in mixed radix over `values`
/// with node 0 most significant.
pub fn enumerate_frames(family: &FrameFamily) -> Result<Vec<Frame>> {
    if family.values.is_empty() {
        return Err(Error::precondition("frame family needs at least one value algebra"));
    }
    let k = family.values.len();
    let mut out = Vec::new();
    for p in all_posets(family.max_nodes)? {
        let n = p.len();
        let radices = vec![k; n];
        for code in 0..k.pow(n as u32) {
            let choice = mixed_radix_decode(code, &radices);
            out.push(Frame::new(
                p.clone(),
                choice.iter().map(|&i| family.values[i].1.clone()).collect(),
                choice.iter().map(|&i| family.values[i].0.clone()).collect(),
            )?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CountermodelOutcome {
    Found {
        frame: FrameSpec,
        /// Position of the frame in [`enumerate_frames`] order.
        frame_index: usize,
        valuation: Valuation,
        node: String,
        frames_checked: usize,
    },
    Exhausted {
        frames_checked: usize,
        valuations_checked: u128,
        /// False when some frame was only sampled.
        exhaustive: bool,
    },
}

/// Looks for a frame, valuation and node refuting `t`. Any countermodel is
/// re-verified with [`forces`] before it is returned.
pub fn countermodel_search(
    t: &Term,
    family: &FrameFamily,
    limits: &Limits,
    options: &SearchOptions,
) -> Result<CountermodelOutcome> {
    let vars: Vec<String> = t.variables().into_iter().collect();
    let program = CompiledTerm::new(t, &vars)?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut valuations_checked = 0u128;
    let mut exhaustive = true;
    let frames = enumerate_frames(family)?;
    for (frame_index, frame) in frames.iter().enumerate() {
        let labelings = enumerate_ac_labelings(frame, limits)?;
        let top = frame.constant_top();
        let refute = |digits: &[usize]| -> Option<usize> {
            let slots: Vec<Vec<Elem>> = digits.iter().map(|&i| labelings[i].0.clone()).collect();
            let d = eval_labelings(frame, &program, &slots);
            frame.poset().nodes().find(|&x| d[x] != top[x])
        };
        let mut hit = None;
        if vars.len() <= EXHAUSTIVE_MAX_VARIABLES && labelings.len() <= EXHAUSTIVE_MAX_PRODUCT {
            let mut odo = Odometer::new(vars.len(), labelings.len());
            while let Some(digits) = odo.next() {
                valuations_checked += 1;
                if let Some(x) = refute(digits) {
                    hit = Some((digits.to_vec(), x));
                    break;
                }
            }
        } else {
            exhaustive = false;
            for _ in 0..options.samples {
                let digits: Vec<usize> = vars.iter().map(|_| rng.random_range(0..labelings.len())).collect();
                valuations_checked += 1;
                if let Some(x) = refute(&digits) {
                    hit = Some((digits, x));
                    break;
                }
            }
        }
        if let Some((digits, x)) = hit {
            let valuation: Valuation = vars
                .iter()
                .cloned()
                .zip(digits.iter().map(|&i| labelings[i].clone()))
                .collect();
            if forces(frame, &valuation, x, t)? {
                return Err(Error::internal(format!(
                    "countermodel for `{t}` does not survive re-verification"
                )));
            }
            return Ok(CountermodelOutcome::Found {
                frame: frame.to_spec(),
                frame_index,
                valuation,
                node: frame.poset().name(x).to_string(),
                frames_checked: frame_index + 1,
            });
        }
    }
    Ok(CountermodelOutcome::Exhausted {
        frames_checked: frames.len(),
        valuations_checked,
        exhaustive,
    })
}
