use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{Age, Horizon, SeedSchedule};
use crate::error::ScheduleError;
use crate::graph::{Delay, Graph, NodeId};

/// Ages of every node at integer times `0..=T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgeSeries {
    /// `ages[t][v]`.
    ages: Vec<Vec<Age>>,
    initial: Vec<Age>,
}

impl AgeSeries {
    pub fn horizon(&self) -> u64 {
        self.ages.len() as u64 - 1
    }

    pub fn node_count(&self) -> usize {
        self.initial.len()
    }

    #[inline]
    pub fn age(&self, v: NodeId, t: u64) -> Age {
        self.ages[t as usize][v]
    }

    /// Largest age seen by `v`: the age just before each integer step, the
    /// initial age, and the age at `T`.
    pub fn peak(&self, v: NodeId) -> Age {
        let end = self.horizon();
        (1..=end).map(|t| self.age(v, t - 1) + 1).chain([self.initial[v], self.age(v, end)]).max().expect("non-empty")
    }

    /// Time-average of `v` by the trapezoid rule on unit intervals, exact
    /// because the age rises with slope one between integer drops.
    pub fn average(&self, v: NodeId) -> f64 {
        let end = self.horizon();
        let doubled: u128 = (0..end).map(|t| 2 * self.age(v, t) as u128 + 1).sum();
        doubled as f64 / (2 * end) as f64
    }

    pub fn network_peak(&self) -> Age {
        (0..self.node_count()).map(|v| self.peak(v)).max().unwrap_or(0)
    }

    pub fn network_average(&self) -> f64 {
        let n = self.node_count();
        (0..n).map(|v| self.average(v)).sum::<f64>() / n as f64
    }
}

fn build_series(birth: &[Vec<Option<u64>>], h: &Horizon, n: usize) -> AgeSeries {
    let initial: Vec<Age> = (0..n).map(|v| h.initial.at(v)).collect();
    let ages = birth
        .iter()
        .enumerate()
        .map(|(t, row)| {
            let t = t as u64;
            row.iter()
                .zip(&initial)
                .map(|(b, &a0)| match b {
                    Some(b) => t - b,
                    None => a0 + t,
                })
                .collect()
        })
        .collect();
    AgeSeries { ages, initial }
}

/// Slot-by-slot message passing with fixed edge delays.
///
/// Each node keeps the birth time of the freshest seeded information it
/// holds. At every step it takes the freshest of its own and of what each
/// neighbour held `delay` steps earlier; a seed's information is born one
/// step before its round's timestamp, so the seed reads age 1 immediately.
/// Initial ages are local and never forwarded. Distances are never
/// consulted.
pub fn simulate_oracle(g: &Graph, sched: &SeedSchedule, h: &Horizon) -> Result<AgeSeries, ScheduleError> {
    let n = g.node_count();
    h.validate(sched, n)?;
    let end = h.end as usize;
    let mut birth: Vec<Vec<Option<u64>>> = vec![vec![None; n]; end + 1];
    for t in 1..=end {
        let (past, rest) = birth.split_at_mut(t);
        let now = &mut rest[0];
        for v in 0..n {
            let mut best = past[t - 1][v];
            for &(w, delay) in g.neighbors(v) {
                let d = delay as usize;
                if d <= t {
                    best = best.max(past[t - d][w]);
                }
            }
            now[v] = best;
        }
        for j in 1..=sched.k() {
            if sched.timestamp(j) == t as u64 {
                for &s in sched.round(j) {
                    now[s] = Some(t as u64 - 1);
                }
            }
        }
    }
    Ok(build_series(&birth, h, n))
}

/// Event-driven variant where every round's information travels with its own
/// edge delays, `delay(round, u, v)` for 1-based rounds.
///
/// A node forwards a round only when that round becomes the freshest it
/// holds. With `delay` independent of the round this matches
/// [`simulate_oracle`].
pub fn simulate_oracle_resampled<F>(
    g: &Graph,
    sched: &SeedSchedule,
    h: &Horizon,
    delay: F,
) -> Result<AgeSeries, ScheduleError>
where
    F: Fn(usize, NodeId, NodeId) -> Delay,
{
    let n = g.node_count();
    h.validate(sched, n)?;
    let end = h.end;

    // (time, node, round)
    let mut queue: BinaryHeap<Reverse<(u64, NodeId, usize)>> = BinaryHeap::new();
    for j in 1..=sched.k() {
        for &s in sched.round(j) {
            queue.push(Reverse((sched.timestamp(j), s, j)));
        }
    }

    let mut held: Vec<Option<usize>> = vec![None; n];
    // per node: (time, round) whenever the held round changes
    let mut changes: Vec<Vec<(u64, usize)>> = vec![Vec::new(); n];
    while let Some(&Reverse((time, _, _))) = queue.peek() {
        if time > end {
            break;
        }
        let mut arrivals: Vec<(NodeId, usize)> = Vec::new();
        while let Some(&Reverse((t, v, r))) = queue.peek() {
            if t != time {
                break;
            }
            queue.pop();
            arrivals.push((v, r));
        }
        // freshest round per node at this instant
        arrivals.sort_unstable_by_key(|&(v, r)| (v, Reverse(r)));
        arrivals.dedup_by_key(|&mut (v, _)| v);
        for (v, r) in arrivals {
            if held[v] >= Some(r) {
                continue;
            }
            held[v] = Some(r);
            changes[v].push((time, r));
            for &(w, _) in g.neighbors(v) {
                let next = time + delay(r, v, w) as u64;
                if next <= end {
                    queue.push(Reverse((next, w, r)));
                }
            }
        }
    }

    let mut birth: Vec<Vec<Option<u64>>> = vec![vec![None; n]; end as usize + 1];
    for (v, log) in changes.iter().enumerate() {
        let mut idx = 0;
        let mut current = None;
        for (t, row) in birth.iter_mut().enumerate() {
            while idx < log.len() && log[idx].0 <= t as u64 {
                current = Some(sched.timestamp(log[idx].1) - 1);
                idx += 1;
            }
            row[v] = current;
        }
    }
    Ok(build_series(&birth, h, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> Graph {
        // ids 1..9 of the example map to 0..8
        let edges = [(5, 1), (5, 4), (5, 6), (5, 9), (6, 7), (7, 8), (4, 3), (3, 2), (1, 2)];
        Graph::from_unit_edges(9, edges.iter().map(|&(u, v)| (u - 1, v - 1))).unwrap()
    }

    #[test]
    fn single_node_series() {
        let g = Graph::from_unit_edges(1, []).unwrap();
        let s = SeedSchedule::single(1, &[0]).unwrap();
        let a = simulate_oracle(&g, &s, &Horizon::uniform(3, 3)).unwrap();
        let ages: Vec<_> = (0..=3).map(|t| a.age(0, t)).collect();
        assert_eq!(ages, vec![3, 1, 2, 3]);
        assert_eq!(a.peak(0), 4);
        assert!((a.average(0) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn example_network_updates() {
        let g = fig1();
        let s = SeedSchedule::single(2, &[4, 6, 2]).unwrap();
        let a = simulate_oracle(&g, &s, &Horizon::uniform(8, 10)).unwrap();
        assert_eq!(a.age(6, 3), 1);
        for &(w, _) in g.neighbors(4) {
            assert_eq!(a.age(w, 2), 2);
        }
        assert_eq!(a.age(4, 1), 1);
    }

    #[test]
    fn oracle_rejects_short_horizon() {
        let g = Graph::path(2);
        let s = SeedSchedule::single(3, &[0, 1]).unwrap();
        assert!(matches!(simulate_oracle(&g, &s, &Horizon::uniform(2, 1)), Err(ScheduleError::HorizonTooShort { .. })));
    }

    #[test]
    fn resampled_matches_static_when_delays_agree() {
        let g = Graph::from_edges(5, [(0, 1, 2), (1, 2, 1), (2, 3, 3), (3, 4, 1), (0, 4, 2)]).unwrap();
        let s = SeedSchedule::new(2, vec![vec![0], vec![3], vec![1, 4]]).unwrap();
        let h = Horizon::uniform(14, 4);
        let fixed = simulate_oracle(&g, &s, &h).unwrap();
        let events = simulate_oracle_resampled(&g, &s, &h, |_, u, v| g.delay(u, v).unwrap()).unwrap();
        assert_eq!(fixed, events);
    }

    #[test]
    fn resampled_delays_change_arrivals() {
        let g = Graph::path(3);
        let s = SeedSchedule::single(1, &[0, 0]).unwrap();
        let h = Horizon::uniform(6, 9);
        // round 1 is slow, round 2 fast
        let a = simulate_oracle_resampled(&g, &s, &h, |r, _, _| if r == 1 { 3 } else { 1 }).unwrap();
        // round 2 (born at 1) reaches node 2 at 2 + 2 = 4; round 1 would need 1 + 6
        assert_eq!(a.age(2, 3), 12);
        assert_eq!(a.age(2, 4), 3);
    }
}
