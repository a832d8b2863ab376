//! Zero-temperature Glauber dynamics of the Ising chain.
//!
//! Spin i flips at rate ½[1 − σᵢ(σᵢ₋₁ + σᵢ₊₁)/2]. The simulation is exact
//! and event driven on the domain-wall representation. Walls sit on bonds,
//! each hops left or right at rate ½ and two walls meeting annihilate.
//! A hop across site i flips σᵢ.

use crate::error::{Error, Result};
use crate::fmath::{abs, ln, sqrt};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

/// Chain geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Topology {
    /// Periodic chain; persistence is averaged over all sites.
    #[default]
    Ring,
    /// Open chain observed at its free end (site 0).
    HalfLine,
}

/// Monte Carlo parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    /// Number of spins.
    pub chain_length: usize,
    /// Initial magnetization; spins are + with probability (1 + m)/2.
    pub m: f64,
    /// Start of the observation window.
    pub t1: f64,
    /// End of the observation window.
    pub t2: f64,
    /// Independent runs.
    pub replicas: usize,
    /// Master seed; replica r uses stream r of ChaCha8 seeded from it.
    pub seed: u64,
    /// Geometry.
    pub topology: Topology,
}

/// Smallest chain accepted.
pub const MIN_CHAIN: usize = 16;

impl SimConfig {
    /// Check sizes, magnetization, times and replica count.
    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::Config(s));
        if self.chain_length < MIN_CHAIN {
            return bad(format!(
                "chain_length must be >= {MIN_CHAIN}, got {}",
                self.chain_length
            ));
        }
        if self.chain_length > u32::MAX as usize {
            return bad(format!("chain_length {} too large", self.chain_length));
        }
        if !(-1.0..=1.0).contains(&self.m) {
            return bad(format!("m must lie in [-1, 1], got {}", self.m));
        }
        if !(self.t1 > 0.0 && self.t2 > self.t1 && self.t2.is_finite()) {
            return bad(format!("need 0 < t1 < t2, got ({}, {})", self.t1, self.t2));
        }
        if self.replicas == 0 {
            return bad(String::from("replicas must be >= 1"));
        }
        Ok(())
    }
}

/// Persistence fractions with replica standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistenceEstimate {
    /// t₁.
    pub t1: f64,
    /// t₂.
    pub t2: f64,
    /// Fraction of observations + at t₁ with no flip in (t₁, t₂].
    pub p_plus_hat: f64,
    /// Same for −.
    pub p_minus_hat: f64,
    /// Standard error of `p_plus_hat`.
    pub stderr_plus: f64,
    /// Standard error of `p_minus_hat`.
    pub stderr_minus: f64,
    /// Observations (sites times replicas, or replicas on the half line).
    pub n_effective: usize,
}

/// Raw counts of one replica.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicaCounts {
    /// Observed sites.
    pub sites: usize,
    /// For each t₂: sites + at t₁ unflipped through t₂.
    pub plus: Vec<u64>,
    /// For each t₂: sites − at t₁ unflipped through t₂.
    pub minus: Vec<u64>,
    /// Σσ at t = 0.
    pub magnetization_start: i64,
    /// Σσ at the last t₂.
    pub magnetization_end: i64,
    /// Domain-wall count never increased.
    pub walls_monotone: bool,
    /// Wall hops performed.
    pub events: u64,
}

const EMPTY: u32 = u32::MAX;

struct Walls {
    // bond b sits between sites b and b + 1 (mod L on the ring)
    alive: Vec<u32>,
    slot: Vec<u32>,
}

impl Walls {
    fn new(bonds: usize) -> Self {
        Walls {
            alive: Vec::new(),
            slot: vec![EMPTY; bonds],
        }
    }

    fn insert(&mut self, b: usize) {
        self.slot[b] = self.alive.len() as u32;
        self.alive.push(b as u32);
    }

    fn remove(&mut self, b: usize) {
        let k = self.slot[b] as usize;
        let last = self.alive.len() - 1;
        self.alive.swap(k, last);
        let moved = self.alive[k] as usize;
        self.slot[moved] = k as u32;
        self.alive.pop();
        self.slot[b] = EMPTY;
    }
}

/// The per-replica RNG: ChaCha8 from `seed`, stream `replica`.
pub fn replica_rng(seed: u64, replica: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replica);
    rng
}

/// Run one replica and count survivors for every t₂ in `t2s` (ascending).
pub fn run_replica(cfg: &SimConfig, replica: u64, t2s: &[f64]) -> Result<ReplicaCounts> {
    cfg.validate()?;
    if t2s.is_empty() || t2s.windows(2).any(|w| w[1] < w[0]) || t2s[0] <= cfg.t1 {
        return Err(Error::Config(String::from(
            "t2 list must be non-empty, ascending and above t1",
        )));
    }
    let mut rng = replica_rng(cfg.seed, replica);
    let n = cfg.chain_length;
    let p_up = 0.5 * (1.0 + cfg.m);
    let mut spin: Vec<i8> = (0..n)
        .map(|_| if rng.random::<f64>() < p_up { 1 } else { -1 })
        .collect();
    let ring = cfg.topology == Topology::Ring;
    let bonds = if ring { n } else { n - 1 };
    let mut walls = Walls::new(bonds);
    for b in 0..bonds {
        if spin[b] != spin[(b + 1) % n] {
            walls.insert(b);
        }
    }
    let magnetization_start: i64 = spin.iter().map(|&s| s as i64).sum();
    // first flip after t₁; sites observed: all on the ring, site 0 on the half line
    let mut first_flip = vec![f64::INFINITY; if ring { n } else { 1 }];
    let mut at_t1: Vec<i8> = Vec::new();
    let t_end = *t2s.last().unwrap();
    let mut t = 0.0;
    let mut events = 0u64;
    let mut walls_monotone = true;
    let mut last_count = walls.alive.len();
    loop {
        let count = walls.alive.len();
        if count > last_count {
            walls_monotone = false;
        }
        last_count = count;
        if count == 0 {
            if at_t1.is_empty() {
                at_t1 = if ring { spin.clone() } else { vec![spin[0]] };
            }
            break;
        }
        let dt: f64 = Exp1.sample(&mut rng);
        let t_next = t + dt / count as f64;
        if at_t1.is_empty() && t_next > cfg.t1 {
            at_t1 = if ring { spin.clone() } else { vec![spin[0]] };
        }
        if t_next > t_end {
            break;
        }
        t = t_next;
        let k = rng.random_range(0..count);
        let b = walls.alive[k] as usize;
        let right = rng.random::<bool>();
        // site crossed and the bond reached (None when leaving the open chain)
        let (site, target) = if right {
            let s = (b + 1) % n;
            (
                s,
                if ring {
                    Some((b + 1) % n)
                } else if b + 1 < bonds {
                    Some(b + 1)
                } else {
                    None
                },
            )
        } else {
            (
                b,
                if ring {
                    Some((b + n - 1) % n)
                } else if b > 0 {
                    Some(b - 1)
                } else {
                    None
                },
            )
        };
        spin[site] = -spin[site];
        if t > cfg.t1 {
            let obs = if ring {
                Some(site)
            } else if site == 0 {
                Some(0)
            } else {
                None
            };
            if let Some(o) = obs {
                if first_flip[o].is_infinite() {
                    first_flip[o] = t;
                }
            }
        }
        walls.remove(b);
        if let Some(c) = target {
            if walls.slot[c] != EMPTY {
                walls.remove(c);
            } else {
                walls.insert(c);
            }
        }
        events += 1;
    }
    let mut plus = vec![0u64; t2s.len()];
    let mut minus = vec![0u64; t2s.len()];
    for (o, &s) in at_t1.iter().enumerate() {
        for (j, &t2) in t2s.iter().enumerate() {
            if first_flip[o] > t2 {
                if s > 0 {
                    plus[j] += 1;
                } else {
                    minus[j] += 1;
                }
            }
        }
    }
    let magnetization_end = spin.iter().map(|&s| s as i64).sum();
    Ok(ReplicaCounts {
        sites: at_t1.len(),
        plus,
        minus,
        magnetization_start,
        magnetization_end,
        walls_monotone,
        events,
    })
}

fn mean_stderr(xs: impl Iterator<Item = f64> + Clone, floor_n: usize) -> (f64, f64) {
    let n = xs.clone().count() as f64;
    let mean = xs.clone().sum::<f64>() / n;
    let var = if n > 1.0 {
        xs.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    // a zero spread is reported as the resolution of the sample
    let floor = 1.0 / (floor_n as f64 * floor_n as f64);
    (mean, sqrt(var.max(floor) / n))
}

/// Combine replica counts (in replica order) into one estimate per t₂.
pub fn aggregate(cfg: &SimConfig, t2s: &[f64], runs: &[ReplicaCounts]) -> Vec<PersistenceEstimate> {
    let sites = runs.first().map_or(0, |r| r.sites);
    let n_eff = sites * runs.len();
    t2s.iter()
        .enumerate()
        .map(|(j, &t2)| {
            let (pp, sp) = mean_stderr(
                runs.iter().map(|r| r.plus[j] as f64 / r.sites as f64),
                n_eff,
            );
            let (pm, sm) = mean_stderr(
                runs.iter().map(|r| r.minus[j] as f64 / r.sites as f64),
                n_eff,
            );
            PersistenceEstimate {
                t1: cfg.t1,
                t2,
                p_plus_hat: pp,
                p_minus_hat: pm,
                stderr_plus: sp,
                stderr_minus: sm,
                n_effective: n_eff,
            }
        })
        .collect()
}

/// Serial run of all replicas of `cfg`.
pub fn simulate(cfg: &SimConfig) -> Result<PersistenceEstimate> {
    cfg.validate()?;
    let t2s = [cfg.t2];
    let runs = (0..cfg.replicas as u64)
        .map(|r| run_replica(cfg, r, &t2s))
        .collect::<Result<Vec<_>>>()?;
    Ok(aggregate(cfg, &t2s, &runs)[0])
}

/// Weighted least-squares slope of ln p̂ against ln(t₁/t₂), with its
/// standard error. Uses p̂₊ unless `minus` is set.
pub fn fit_exponent(estimates: &[PersistenceEstimate], minus: bool) -> Result<(f64, f64)> {
    if estimates.len() < 3 {
        return Err(Error::Estimation(format!(
            "need at least 3 ratios, got {}",
            estimates.len()
        )));
    }
    let mut sw = 0.0;
    let mut sx = 0.0;
    let mut sy = 0.0;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for e in estimates {
        let (p, s) = if minus {
            (e.p_minus_hat, e.stderr_minus)
        } else {
            (e.p_plus_hat, e.stderr_plus)
        };
        if !(p > 0.0) {
            return Err(Error::Estimation(format!(
                "no survivors at t2 = {}; shorten the decay window",
                e.t2
            )));
        }
        let x = ln(e.t1 / e.t2);
        let y = ln(p);
        let w = (p / s) * (p / s);
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    let det = sw * sxx - sx * sx;
    if !(abs(det) > 0.0) {
        return Err(Error::Estimation(String::from("degenerate ratio set")));
    }
    Ok(((sw * sxy - sx * sy) / det, sqrt(sw / det)))
}

/// Simulate once with t₂ = t₁·r for every ratio and fit the exponent.
pub fn estimate_exponent(cfg: &SimConfig, t_ratios: &[f64]) -> Result<(f64, f64)> {
    let (t2s, runs) = run_ratios(cfg, t_ratios)?;
    fit_exponent(&aggregate(cfg, &t2s, &runs), false)
}

/// Sorted t₂ list and serial replica counts for a ratio set.
pub fn run_ratios(cfg: &SimConfig, t_ratios: &[f64]) -> Result<(Vec<f64>, Vec<ReplicaCounts>)> {
    if t_ratios.len() < 3 {
        return Err(Error::Estimation(format!(
            "need at least 3 ratios, got {}",
            t_ratios.len()
        )));
    }
    cfg.validate()?;
    let t2s = ratio_grid(cfg.t1, t_ratios)?;
    let runs = (0..cfg.replicas as u64)
        .map(|r| run_replica(cfg, r, &t2s))
        .collect::<Result<Vec<_>>>()?;
    Ok((t2s, runs))
}

/// t₁·r for each ratio, ascending; ratios must exceed 1.
pub fn ratio_grid(t1: f64, t_ratios: &[f64]) -> Result<Vec<f64>> {
    let mut t2s: Vec<f64> = t_ratios.iter().map(|r| t1 * r).collect();
    if t_ratios.iter().any(|&r| !(r > 1.0)) {
        return Err(Error::Config(String::from("ratios t2/t1 must exceed 1")));
    }
    t2s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(t2s)
}

/// Mean and standard error of the change of Σσ over replicas.
pub fn magnetization_drift(runs: &[ReplicaCounts]) -> (f64, f64) {
    mean_stderr(
        runs.iter()
            .map(|r| (r.magnetization_end - r.magnetization_start) as f64),
        runs.len(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m: f64, topology: Topology) -> SimConfig {
        SimConfig {
            chain_length: 2000,
            m,
            t1: 10.0,
            t2: 40.0,
            replicas: 8,
            seed: 7,
            topology,
        }
    }

    #[test]
    fn fully_magnetized_chain_is_frozen() {
        let e = simulate(&cfg(1.0, Topology::Ring)).unwrap();
        assert_eq!((e.p_plus_hat, e.p_minus_hat), (1.0, 0.0));
        assert!(e.stderr_plus > 0.0);
        let r = run_replica(&cfg(1.0, Topology::Ring), 0, &[40.0]).unwrap();
        assert_eq!(r.events, 0);
    }

    #[test]
    fn invalid_configs() {
        let mut c = cfg(0.0, Topology::Ring);
        c.chain_length = 3;
        assert!(simulate(&c).is_err());
        let mut c = cfg(0.0, Topology::Ring);
        c.t2 = 5.0;
        assert!(simulate(&c).is_err());
        let mut c = cfg(0.0, Topology::Ring);
        c.replicas = 0;
        assert!(simulate(&c).is_err());
        assert!(estimate_exponent(&cfg(0.0, Topology::Ring), &[2.0, 4.0]).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let c = cfg(0.2, Topology::Ring);
        let a = run_replica(&c, 3, &[20.0, 40.0]).unwrap();
        let b = run_replica(&c, 3, &[20.0, 40.0]).unwrap();
        assert_eq!(a, b);
        let d = run_replica(&c, 4, &[20.0, 40.0]).unwrap();
        assert_ne!(a.plus, d.plus);
    }

    #[test]
    fn coarsening_invariants() {
        for topo in [Topology::Ring, Topology::HalfLine] {
            let c = cfg(0.0, topo);
            let r = run_replica(&c, 0, &[20.0, 40.0]).unwrap();
            assert!(r.walls_monotone);
            assert!(r.plus[1] <= r.plus[0] && r.minus[1] <= r.minus[0]);
        }
        // survivors decrease in t2
        let (t2s, runs) = run_ratios(&cfg(0.0, Topology::Ring), &[2.0, 4.0, 8.0]).unwrap();
        let est = aggregate(&cfg(0.0, Topology::Ring), &t2s, &runs);
        assert!(est.windows(2).all(|w| w[1].p_plus_hat < w[0].p_plus_hat));
    }

    #[test]
    fn magnetization_is_a_martingale() {
        let c = SimConfig {
            chain_length: 400,
            m: 0.3,
            t1: 5.0,
            t2: 50.0,
            replicas: 400,
            seed: 11,
            topology: Topology::Ring,
        };
        let runs: Vec<_> = (0..c.replicas as u64)
            .map(|r| run_replica(&c, r, &[c.t2]).unwrap())
            .collect();
        let (mean, se) = magnetization_drift(&runs);
        assert!(abs(mean) < 3.0 * se, "{mean} +- {se}");
    }

    #[test]
    fn weighted_fit_recovers_power_law() {
        let est: Vec<_> = [2.0f64, 4.0, 8.0]
            .iter()
            .map(|&r| PersistenceEstimate {
                t1: 1.0,
                t2: r,
                p_plus_hat: 0.4 * libm::pow(1.0 / r, 0.375),
                p_minus_hat: 0.0,
                stderr_plus: 1e-3,
                stderr_minus: 1e-3,
                n_effective: 100,
            })
            .collect();
        let (x, _) = fit_exponent(&est, false).unwrap();
        assert!(abs(x - 0.375) < 1e-12);
        assert!(fit_exponent(&est, true).is_err());
    }
}
