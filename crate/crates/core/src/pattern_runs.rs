//! Stop/run scanning of pattern vectors and per-object run patterns.
//!
//! A `0` in the pattern vector is a stop and a `1` is a run step. Scanning a
//! period block yields, for every object, the length of the runs that fall in
//! its row: the number of objects it was preferred to in that period. A row of
//! zeros has run length 0, which downstream code treats as ε.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::choice_model::{ObjectId, ValidatedEpisode};
use crate::error::{Error, Result};
use crate::preference_graph::{derive_matrix, flatten, PatternVector};

/// Either the empty run ε or a run of `k ≥ 1` consecutive ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RunCount {
    Epsilon,
    Run(u32),
}

impl RunCount {
    /// Zero-length runs collapse to ε.
    pub fn from_len(k: usize) -> Self {
        if k == 0 {
            RunCount::Epsilon
        } else {
            RunCount::Run(k as u32)
        }
    }

    /// ε counts as 0.
    pub fn value(self) -> i64 {
        match self {
            RunCount::Epsilon => 0,
            RunCount::Run(k) => i64::from(k),
        }
    }

    pub fn is_epsilon(self) -> bool {
        self == RunCount::Epsilon
    }

    /// `111` for a run of three, `ε` for the empty run.
    pub fn unary(self) -> String {
        match self {
            RunCount::Epsilon => "ε".to_owned(),
            RunCount::Run(k) => "1".repeat(k as usize),
        }
    }
}

impl fmt::Display for RunCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunCount::Epsilon => f.write_str("ε"),
            RunCount::Run(k) => write!(f, "{k}"),
        }
    }
}

impl Serialize for RunCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Renders a slot sequence as `{3,ε}`.
pub fn format_slots(slots: &[RunCount]) -> String {
    let inner: Vec<String> = slots.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Per-object run counts across periods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunPattern {
    pub object: ObjectId,
    pub slots: Vec<RunCount>,
    /// `true` where the object was not in that period's attainable set.
    pub absent: Vec<bool>,
}

impl fmt::Display for RunPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_slots(&self.slots))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    Stop,
    Run,
}

/// A maximal block of equal bits inside one period block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub start: usize,
    pub len: usize,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            SegmentKind::Stop => "0",
            SegmentKind::Run => "1",
        };
        f.write_str(&c.repeat(self.len))
    }
}

fn segment_block(block: &[bool]) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::new();
    for (pos, &bit) in block.iter().enumerate() {
        let kind = if bit {
            SegmentKind::Run
        } else {
            SegmentKind::Stop
        };
        match out.last_mut() {
            Some(seg) if seg.kind == kind => seg.len += 1,
            _ => out.push(Segment {
                kind,
                start: pos,
                len: 1,
            }),
        }
    }
    out
}

/// Stop and run segments of each period block, e.g. `0,111,00,11,000,1,0000`.
pub fn segments(p: &PatternVector) -> Vec<Vec<Segment>> {
    p.blocks().into_iter().map(segment_block).collect()
}

/// Per-slot run totals, period-major and in catalog order within a period.
///
/// Counting starts at a stop and continues over the ones that follow until
/// the next stop. A run is credited to the object whose row holds it; a run
/// that crosses a row boundary is split between the two rows. Rows without a
/// run (a full block of `n` stops) get 0.
pub fn scan_runs(p: &PatternVector) -> Vec<usize> {
    let mut out = Vec::with_capacity(p.period_sizes().iter().sum());
    for (block, &n) in p.blocks().into_iter().zip(p.period_sizes()) {
        let mut tally = vec![0usize; n];
        for seg in segment_block(block) {
            if seg.kind == SegmentKind::Stop {
                continue;
            }
            let mut pos = seg.start;
            let end = seg.start + seg.len;
            while pos < end {
                let row = pos / n;
                let row_end = ((row + 1) * n).min(end);
                tally[row] += row_end - pos;
                pos = row_end;
            }
        }
        out.extend(tally);
    }
    out
}

fn check_sorted(episodes: &[ValidatedEpisode]) -> Result<()> {
    if episodes.windows(2).any(|w| w[0].period() >= w[1].period()) {
        return Err(Error::Domain(
            "episodes must be sorted by strictly increasing period".into(),
        ));
    }
    Ok(())
}

/// Run pattern of `object`: one slot per episode, ε where the object had no
/// run or was not attainable.
pub fn omega(episodes: &[ValidatedEpisode], object: &ObjectId) -> Result<RunPattern> {
    check_sorted(episodes)?;
    let runs: Vec<Vec<usize>> = episodes
        .iter()
        .map(|e| scan_runs(&flatten(&derive_matrix(e))))
        .collect();
    omega_from_runs(episodes, &runs, object)
}

fn omega_from_runs(
    episodes: &[ValidatedEpisode],
    runs: &[Vec<usize>],
    object: &ObjectId,
) -> Result<RunPattern> {
    let mut slots = Vec::with_capacity(episodes.len());
    let mut absent = Vec::with_capacity(episodes.len());
    for (e, r) in episodes.iter().zip(runs) {
        match e.position(object) {
            Some(i) => {
                slots.push(RunCount::from_len(r[i]));
                absent.push(false);
            }
            None => {
                slots.push(RunCount::Epsilon);
                absent.push(true);
            }
        }
    }
    if absent.iter().all(|&a| a) {
        return Err(Error::UnknownObject(object.clone()));
    }
    Ok(RunPattern {
        object: object.clone(),
        slots,
        absent,
    })
}

/// Every object seen in any period; objects new in a later period are
/// appended after the ones already seen.
pub fn objects_in_order(episodes: &[ValidatedEpisode]) -> Vec<ObjectId> {
    let mut out: Vec<ObjectId> = Vec::new();
    for e in episodes {
        for o in e.objects() {
            if !out.contains(o) {
                out.push(o.clone());
            }
        }
    }
    out
}

/// Run patterns of all objects, in [`objects_in_order`] order.
pub fn omegas(episodes: &[ValidatedEpisode]) -> Result<Vec<RunPattern>> {
    check_sorted(episodes)?;
    let runs: Vec<Vec<usize>> = episodes
        .iter()
        .map(|e| scan_runs(&flatten(&derive_matrix(e))))
        .collect();
    objects_in_order(episodes)
        .iter()
        .map(|o| omega_from_runs(episodes, &runs, o))
        .collect()
}

/// Descending runs `n-1, …, 1` of a strict single-period preference chain.
pub fn single_period_rationality_pattern(n: usize) -> Result<Vec<u32>> {
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 objects, got {n}")));
    }
    Ok((1..n as u32).rev().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice_model::{ids, validate_episode, ChoiceEpisode};
    use crate::preference_graph::{concat_patterns, PreferenceMatrix};

    fn canonical_episodes() -> Vec<ValidatedEpisode> {
        vec![
            validate_episode(ChoiceEpisode::new(
                "r",
                1,
                ids(&["M", "N", "V", "Z"]),
                ids(&["M", "N", "V"]),
                ids(&["M", "N"]),
                ids(&["M"]),
            ))
            .unwrap(),
            validate_episode(ChoiceEpisode::new(
                "r",
                2,
                ids(&["M", "N", "V", "Z"]),
                ids(&["Z", "V", "N"]),
                ids(&["Z", "V"]),
                ids(&["Z"]),
            ))
            .unwrap(),
        ]
    }

    #[test]
    fn joint_vector_runs() {
        let p = PatternVector::parse("01110011000100000000100011001110", vec![4, 4]).unwrap();
        assert_eq!(scan_runs(&p), vec![3, 2, 1, 0, 0, 1, 2, 3]);
    }

    #[test]
    fn zero_block_and_single_period() {
        let z = flatten(&PreferenceMatrix::zero(ids(&["a", "b", "c", "d"])));
        assert_eq!(scan_runs(&z), vec![0, 0, 0, 0]);
        let p = PatternVector::parse("0111001100010000", vec![4]).unwrap();
        assert_eq!(scan_runs(&p), vec![3, 2, 1, 0]);
    }

    #[test]
    fn stop_run_segmentation() {
        let eps = canonical_episodes();
        let ms: Vec<_> = eps.iter().map(derive_matrix).collect();
        let p = concat_patterns(&ms).unwrap();
        let rendered: Vec<String> = segments(&p)
            .iter()
            .map(|b| {
                b.iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        assert_eq!(rendered[0], "0,111,00,11,000,1,0000");
        assert_eq!(rendered[1], "0000,1,000,11,00,111,0");
    }

    #[test]
    fn run_crossing_row_boundary_is_split() {
        // row 0 = 001 (a > c), row 1 = 100 (b > a): the run "11" spans both rows
        let p = PatternVector::parse("001100000", vec![3]).unwrap();
        assert_eq!(scan_runs(&p), vec![1, 1, 0]);
    }

    #[test]
    fn canonical_omegas() {
        let eps = canonical_episodes();
        let show = |o: &str| omega(&eps, &o.into()).unwrap().to_string();
        assert_eq!(show("M"), "{3,ε}");
        assert_eq!(show("N"), "{2,1}");
        assert_eq!(show("V"), "{1,2}");
        assert_eq!(show("Z"), "{ε,3}");
        assert_eq!(
            omega(&eps, &"Q".into()),
            Err(Error::UnknownObject("Q".into()))
        );
    }

    #[test]
    fn absence_is_flagged() {
        let mut eps = canonical_episodes();
        eps.push(
            validate_episode(ChoiceEpisode::new(
                "r",
                3,
                ids(&["M", "N", "V"]),
                ids(&["N", "V"]),
                ids(&["N"]),
                ids(&["N"]),
            ))
            .unwrap(),
        );
        let z = omega(&eps, &"Z".into()).unwrap();
        assert_eq!(z.to_string(), "{ε,3,ε}");
        assert_eq!(z.absent, vec![false, false, true]);
        let m = omega(&eps, &"M".into()).unwrap();
        assert_eq!(m.to_string(), "{3,ε,ε}");
        assert_eq!(m.absent, vec![false, false, false]);
    }

    #[test]
    fn unsorted_periods_rejected() {
        let mut eps = canonical_episodes();
        eps.reverse();
        assert!(matches!(omega(&eps, &"M".into()), Err(Error::Domain(_))));
    }

    #[test]
    fn single_period_patterns() {
        assert_eq!(single_period_rationality_pattern(4).unwrap(), vec![3, 2, 1]);
        assert_eq!(single_period_rationality_pattern(2).unwrap(), vec![1]);
        assert!(single_period_rationality_pattern(1).is_err());

        // four stages cannot order five objects strictly, so build the chain by hand
        let x = ids(&["a", "b", "c", "d", "e"]);
        let mut bits = vec![false; 25];
        for i in 0..5 {
            for j in (i + 1)..5 {
                bits[i * 5 + j] = true;
            }
        }
        let m = PreferenceMatrix::from_bits(x, bits).unwrap();
        let runs: Vec<u32> = scan_runs(&flatten(&m))
            .into_iter()
            .filter(|&r| r > 0)
            .map(|r| r as u32)
            .collect();
        assert_eq!(runs, single_period_rationality_pattern(5).unwrap());
    }

    #[test]
    fn unary_rendering() {
        assert_eq!(RunCount::Run(3).unary(), "111");
        assert_eq!(RunCount::Epsilon.unary(), "ε");
        assert!(RunCount::Epsilon < RunCount::Run(1));
    }
}
