//! Operator channel: the receiver sees a subspace of the transmitted one
//! with `rho` dimensions erased and `t` foreign dimensions injected.
//! Decoding is an exhaustive search for the nearest codeword.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codes::SubspaceCode;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg;
use crate::subspace::Subspace;

/// Generator behind every trial: ChaCha8 seeded from the 64-bit seed, one
/// stream per trial index.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng(seed_from_u64(seed), stream = trial)";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChannelConfig {
    /// Erased dimensions.
    pub rho: usize,
    /// Injected error dimensions.
    pub t: usize,
    pub seed: u64,
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

impl ChannelConfig {
    /// Requires `rho <= l` and room for `t` vectors outside the sent
    /// subspace, `l + t <= N`, so that `dist(V, U) = rho + t` exactly.
    pub fn check(&self, l: usize, ambient: usize) -> Result<()> {
        if self.rho > l {
            return Err(Error::InfeasibleChannel(format!(
                "rho = {} exceeds codeword dimension {l}",
                self.rho
            )));
        }
        if l + self.t > ambient {
            return Err(Error::InfeasibleChannel(format!(
                "l + t = {} exceeds ambient dimension {ambient}",
                l + self.t
            )));
        }
        Ok(())
    }
}

fn random_vector(field: &Field, len: usize, rng: &mut impl Rng) -> Vec<Elem> {
    (0..len).map(|_| rng.random_range(0..field.q())).collect()
}

/// Transmits `v` through the channel using trial stream 0 of `cfg.seed`.
pub fn corrupt(v: &Subspace, cfg: &ChannelConfig) -> Result<Subspace> {
    corrupt_with(v, cfg.rho, cfg.t, &mut trial_rng(cfg.seed, 0))
}

/// Keeps a uniformly random `(l - rho)`-dimensional subspace of `v`, then
/// adjoins `t` random vectors, each resampled until it lies outside `v`
/// plus everything injected so far.
pub fn corrupt_with(v: &Subspace, rho: usize, t: usize, rng: &mut impl Rng) -> Result<Subspace> {
    let (l, ambient, field) = (v.dim(), v.ambient(), v.field());
    ChannelConfig { rho, t, seed: 0 }.check(l, ambient)?;
    let basis = v.basis();
    let keep = l - rho;
    let mix = loop {
        let m: Vec<Vec<Elem>> = (0..keep).map(|_| random_vector(field, l, rng)).collect();
        if linalg::rank(field, m.clone(), l) == keep {
            break m;
        }
    };
    let mut rows: Vec<Vec<Elem>> = mix
        .iter()
        .map(|coef| {
            let mut out = vec![0; ambient];
            for (&c, row) in coef.iter().zip(&basis) {
                if c != 0 {
                    for (o, &x) in out.iter_mut().zip(row) {
                        *o = field.add(*o, field.mul(c, x));
                    }
                }
            }
            out
        })
        .collect();
    let mut reach = v.clone();
    for _ in 0..t {
        let e = loop {
            let cand = random_vector(field, ambient, rng);
            if !reach.contains_vector(&cand)? {
                break cand;
            }
        };
        reach = reach.sum(&Subspace::from_vectors(field, ambient, std::slice::from_ref(&e))?)?;
        rows.push(e);
    }
    Subspace::from_vectors(field, ambient, &rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeStatus {
    Unique(usize),
    Ambiguous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    /// Distance from the received subspace to the nearest codeword.
    pub distance: usize,
    /// `D/2 - distance`; absent when the code has a single codeword.
    pub margin: Option<i64>,
}

/// Nearest codeword by exhaustive search; ambiguous when the minimum is
/// attained more than once.
pub fn decode(code: &SubspaceCode, received: &Subspace) -> Result<DecodeResult> {
    let words = code.codewords();
    if words.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let dists = words
        .par_iter()
        .map(|w| w.dist(received))
        .collect::<Result<Vec<_>>>()?;
    let best = *dists.iter().min().expect("nonempty");
    let mut winners = dists.iter().enumerate().filter(|(_, &d)| d == best);
    let first = winners.next().expect("minimum is attained").0;
    let status = if winners.next().is_some() {
        DecodeStatus::Ambiguous
    } else {
        DecodeStatus::Unique(first)
    };
    Ok(DecodeResult {
        status,
        distance: best,
        margin: code.distance().map(|d| (d / 2) as i64 - best as i64),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimulationReport {
    pub trials: u64,
    pub unique_correct: u64,
    pub unique_wrong: u64,
    pub ambiguous: u64,
}

impl SimulationReport {
    pub const CSV_HEADER: &'static str =
        "e,d,q,n,rho,t,trials,unique_correct,unique_wrong,ambiguous,seed";

    pub fn csv_row(&self, code: &SubspaceCode, cfg: &ChannelConfig) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            code.e(),
            code.d(),
            code.field().q(),
            code.n(),
            cfg.rho,
            cfg.t,
            self.trials,
            self.unique_correct,
            self.unique_wrong,
            self.ambiguous,
            cfg.seed
        )
    }
}

/// Outcome of one trial: which codeword was sent, what came out.
#[derive(Clone, Debug)]
pub struct Trial {
    pub sent: usize,
    pub received: Subspace,
    pub result: DecodeResult,
}

/// Trial `index`: pick the sent codeword uniformly, corrupt, decode.
pub fn run_trial(code: &SubspaceCode, cfg: &ChannelConfig, index: u64) -> Result<Trial> {
    let mut rng = trial_rng(cfg.seed, index);
    let sent = rng.random_range(0..code.len());
    let received = corrupt_with(&code.codewords()[sent], cfg.rho, cfg.t, &mut rng)?;
    let result = decode(code, &received)?;
    Ok(Trial {
        sent,
        received,
        result,
    })
}

pub fn simulate(code: &SubspaceCode, cfg: &ChannelConfig, trials: u64) -> Result<SimulationReport> {
    if code.is_empty() {
        return Err(Error::EmptyFamily);
    }
    cfg.check(code.codeword_dim(), code.packet_length())?;
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let trial = run_trial(code, cfg, i)?;
            let mut r = SimulationReport {
                trials: 1,
                ..Default::default()
            };
            match trial.result.status {
                DecodeStatus::Unique(k) if k == trial.sent => r.unique_correct = 1,
                DecodeStatus::Unique(_) => r.unique_wrong = 1,
                DecodeStatus::Ambiguous => r.ambiguous = 1,
            }
            Ok(r)
        })
        .try_reduce(SimulationReport::default, |a, b| {
            Ok(SimulationReport {
                trials: a.trials + b.trials,
                unique_correct: a.unique_correct + b.unique_correct,
                unique_wrong: a.unique_wrong + b.unique_wrong,
                ambiguous: a.ambiguous + b.ambiguous,
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{family_code, Family};
    use crate::limits::Limits;

    fn code(e: usize, d: usize) -> SubspaceCode {
        family_code(&Field::prime(2).unwrap(), 2, e, d, Family::Irreducible, Limits::guarded()).unwrap()
    }

    #[test]
    fn identity_channel() {
        let c = code(1, 3);
        let v = &c.codewords()[3];
        let u = corrupt(v, &ChannelConfig { rho: 0, t: 0, seed: 9 }).unwrap();
        assert_eq!(&u, v);
        let r = decode(&c, &u).unwrap();
        assert_eq!(r.status, DecodeStatus::Unique(3));
        assert_eq!((r.distance, r.margin), (0, Some(3)));
    }

    #[test]
    fn erasure_and_error_distances() {
        let c = code(1, 3);
        for seed in 0..50 {
            for (rho, t) in [(1, 0), (0, 1), (1, 1), (2, 2), (6, 0), (0, 4)] {
                let v = &c.codewords()[seed as usize % 7];
                let u = corrupt(v, &ChannelConfig { rho, t, seed }).unwrap();
                assert_eq!(u.dim(), 6 - rho + t);
                assert_eq!(v.dist(&u).unwrap(), rho + t, "seed {seed} rho {rho} t {t}");
                assert_eq!(v.intersect_dim(&u).unwrap(), 6 - rho);
            }
        }
    }

    #[test]
    fn corruption_is_deterministic() {
        let c = code(1, 3);
        let cfg = ChannelConfig { rho: 2, t: 1, seed: 77 };
        let v = &c.codewords()[0];
        assert_eq!(corrupt(v, &cfg).unwrap(), corrupt(v, &cfg).unwrap());
        let a = run_trial(&c, &cfg, 5).unwrap();
        let b = run_trial(&c, &cfg, 5).unwrap();
        assert_eq!((a.sent, a.received), (b.sent, b.received));
    }

    #[test]
    fn infeasible_configurations() {
        let c = code(1, 3);
        let v = &c.codewords()[0];
        assert!(matches!(
            corrupt(v, &ChannelConfig { rho: 7, t: 0, seed: 0 }),
            Err(Error::InfeasibleChannel(_))
        ));
        assert!(matches!(
            corrupt(v, &ChannelConfig { rho: 0, t: 5, seed: 0 }),
            Err(Error::InfeasibleChannel(_))
        ));
    }

    #[test]
    fn equidistant_midpoint_is_ambiguous() {
        // k dimensions from V1 outside V2 plus the rest from V2 outside V1
        let c = code(1, 2);
        let (v1, v2) = (&c.codewords()[0], &c.codewords()[1]);
        let meet = v1.intersection(v2).unwrap();
        assert_eq!(meet.dim(), 1);
        let pick = |v: &Subspace| {
            v.basis()
                .into_iter()
                .find(|row| !meet.contains_vector(row).unwrap())
                .unwrap()
        };
        let u = Subspace::from_vectors(v1.field(), v1.ambient(), &[pick(v1), pick(v2)]).unwrap();
        assert_eq!(v1.dist(&u).unwrap(), v2.dist(&u).unwrap());
        let r = decode(&c, &u).unwrap();
        assert_eq!(r.status, DecodeStatus::Ambiguous);
    }

    #[test]
    fn simulation_counts_are_order_independent() {
        let c = code(1, 3);
        let cfg = ChannelConfig { rho: 1, t: 1, seed: 3 };
        let a = simulate(&c, &cfg, 200).unwrap();
        let b = simulate(&c, &cfg, 200).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.unique_correct, 200);
        assert_eq!(
            a.csv_row(&c, &cfg),
            "1,3,2,2,1,1,200,200,0,0,3"
        );
    }
}
