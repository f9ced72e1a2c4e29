//! Verification campaigns. Each campaign checks one statement on random or
//! symbolic inputs and produces a [`Report`] with exact residuals.

mod basic;
mod left;
mod pools;
mod tb3;
mod weight2;
mod weight3;

use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::random::trial_rng;

pub use left::{
    check_left_square, left_pool, left_square_difference, split_residual, LeftSquare, LeftVariant,
    PoolSizes, CERTIFIED_TRIALS,
};
pub use pools::{certify_mid, MidCertificate, MidPool};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Random,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "random" => Ok(Mode::Random),
            _ => Err(Error::Invalid(format!(
                "mode must be `symbolic` or `random`, got `{}`",
                s
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub nu: usize,
    pub n: usize,
}

/// The outcome of one campaign. Serialized field order is fixed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub statement: String,
    pub mode: Mode,
    pub params: Params,
    pub seed: u64,
    pub trials: usize,
    pub pass: bool,
    pub residual_terms: usize,
    pub certificate: Option<Value>,
    pub ms: Option<u64>,
    #[serde(skip)]
    pub checks: Vec<Check>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per sub-check, for humans.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} [{}] {} (trials {}, seed {}, residual terms {})",
            self.statement,
            match self.mode {
                Mode::Symbolic => "symbolic",
                Mode::Random => "random",
            },
            if self.pass { "PASS" } else { "FAIL" },
            self.trials,
            self.seed,
            self.residual_terms
        );
        for c in &self.checks {
            s.push_str(&format!(
                "\n  {} {}: {}",
                if c.pass { "ok  " } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        s
    }
}

/// A named sub-check of a campaign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }

    /// A check that passes iff every trial residual is zero.
    pub fn residuals(name: &str, residuals: &[usize]) -> Check {
        let bad = residuals.iter().filter(|&&r| r > 0).count();
        let total: usize = residuals.iter().sum();
        Check::new(
            name,
            bad == 0,
            format!(
                "{} of {} trials with residual 0, {} residual terms",
                residuals.len() - bad,
                residuals.len(),
                total
            ),
        )
    }
}

/// Resolved campaign parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ctx {
    pub nu: usize,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
}

impl Ctx {
    /// The generator of trial `t` of sub-check `sub`.
    pub fn rng(&self, sub: u32, t: usize) -> ChaCha8Rng {
        trial_rng(self.seed, ((sub as u64) << 32) | t as u64)
    }

    /// Runs `f` on every trial in parallel; results stay in trial order.
    pub fn par_trials<T: Send>(
        &self,
        count: usize,
        f: impl Fn(usize) -> Result<T> + Sync + Send,
    ) -> Result<Vec<T>> {
        (0..count).into_par_iter().map(f).collect()
    }
}

/// What a campaign computes before it is wrapped into a report.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub residual_terms: usize,
    pub certificate: Option<Value>,
}

impl Outcome {
    pub fn push(&mut self, c: Check, residual: usize) {
        self.residual_terms += residual;
        self.checks.push(c);
    }

    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }
}

type CampaignFn = fn(&Ctx) -> Result<Outcome>;

/// A registered campaign.
pub struct Campaign {
    pub id: &'static str,
    pub statement: &'static str,
    pub nu: usize,
    pub n: usize,
    pub trials: usize,
    pub modes: &'static [Mode],
    run: CampaignFn,
}

const BOTH: &[Mode] = &[Mode::Random, Mode::Symbolic];
const RANDOM: &[Mode] = &[Mode::Random];

pub static REGISTRY: &[Campaign] = &[
    Campaign {
        id: "lemma-2.1",
        statement: "Siegel identity for 2×2 determinants over F[ε]_ν, with its ε¹ layer",
        nu: 2,
        n: 2,
        trials: 1000,
        modes: BOTH,
        run: basic::siegel,
    },
    Campaign {
        id: "ratio-formulas",
        statement: "closed forms and recurrence for cross-ratio, projected and triple-ratio coefficients",
        nu: 2,
        n: 2,
        trials: 1000,
        modes: BOTH,
        run: basic::ratio_formulas,
    },
    Campaign {
        id: "lemma-4.2",
        statement: "τ²₀ ∘ d = ∂_ε ∘ τ²₁ on four points in the plane",
        nu: 2,
        n: 2,
        trials: 300,
        modes: BOTH,
        run: weight2::commutes,
    },
    Campaign {
        id: "prop-zero2",
        statement: "τ²₀ ∘ d′ = 0 on four points in space",
        nu: 2,
        n: 2,
        trials: 300,
        modes: BOTH,
        run: weight2::zero_composition,
    },
    Campaign {
        id: "lemma-5pt",
        statement: "projected five-term sum is a five-term instance plus inversions on the normal frame",
        nu: 2,
        n: 2,
        trials: 200,
        modes: BOTH,
        run: weight2::projected_five_term,
    },
    Campaign {
        id: "prop-one2",
        statement: "τ²₁ ∘ d′ has zero ∂_ε image on five points in space",
        nu: 2,
        n: 2,
        trials: 200,
        modes: BOTH,
        run: weight2::one_composition,
    },
    Campaign {
        id: "thm-5.2",
        statement: "τ³₀ ∘ d = ∂_ε ∘ τ³₁ on five points in space",
        nu: 2,
        n: 3,
        trials: 100,
        modes: BOTH,
        run: weight3::right_square,
    },
    Campaign {
        id: "thm-5.3",
        statement: "∂_ε ∘ τ³₂ = τ³₁ ∘ d modulo relations on six points in space",
        nu: 2,
        n: 3,
        trials: 25,
        modes: RANDOM,
        run: left::left_square,
    },
    Campaign {
        id: "prop-zero3",
        statement: "τ³₀ ∘ d′ = 0 on five points in four-space",
        nu: 2,
        n: 3,
        trials: 100,
        modes: BOTH,
        run: weight3::zero3,
    },
    Campaign {
        id: "prop-zeron",
        statement: "τⁿ₀ ∘ d′ = 0 on n+2 points in (n+1)-space",
        nu: 2,
        n: 5,
        trials: 100,
        modes: BOTH,
        run: weight3::zeron,
    },
    Campaign {
        id: "tb3-relations",
        statement: "∂_ε ∘ ∂_ε,3 = 0 and the 22-term element under the special derivatives",
        nu: 2,
        n: 3,
        trials: 50,
        modes: BOTH,
        run: tb3::relations,
    },
];

pub fn find(id: &str) -> Result<&'static Campaign> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownStatement(id.to_string()))
}

/// Overrides of a campaign's defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub nu: Option<usize>,
    pub n: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub mode: Option<Mode>,
    pub timing: bool,
}

impl Campaign {
    pub fn ctx(&self, o: &RunOptions) -> Result<Ctx> {
        let mode = o.mode.unwrap_or(Mode::Random);
        if !self.modes.contains(&mode) {
            return Err(Error::Unsupported(format!(
                "{} has no {:?} mode",
                self.id, mode
            )));
        }
        Ok(Ctx {
            nu: o.nu.unwrap_or(self.nu),
            n: o.n.unwrap_or(self.n),
            trials: o.trials.unwrap_or(match mode {
                Mode::Random => self.trials,
                Mode::Symbolic => 1,
            }),
            seed: o.seed,
            mode,
        })
    }

    pub fn run(&self, o: &RunOptions) -> Result<Report> {
        let ctx = self.ctx(o)?;
        let start = Instant::now();
        let out = (self.run)(&ctx)?;
        let ms = start.elapsed().as_millis() as u64;
        Ok(Report {
            statement: self.id.to_string(),
            mode: ctx.mode,
            params: Params {
                nu: ctx.nu,
                n: ctx.n,
            },
            seed: ctx.seed,
            trials: ctx.trials,
            pass: out.pass(),
            residual_terms: out.residual_terms,
            certificate: out.certificate,
            ms: o.timing.then_some(ms),
            checks: out.checks,
        })
    }
}

/// Runs the campaign `id` with `o`.
pub fn run(id: &str, o: &RunOptions) -> Result<Report> {
    find(id)?.run(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let mut ids: Vec<&str> = REGISTRY.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), REGISTRY.len());
        assert!(find("nope").is_err());
    }

    #[test]
    fn report_field_order() {
        let r = Report {
            statement: "x".into(),
            mode: Mode::Random,
            params: Params { nu: 2, n: 3 },
            seed: 1,
            trials: 0,
            pass: true,
            residual_terms: 0,
            certificate: None,
            ms: None,
            checks: vec![Check::new("c", true, "")],
        };
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 9);
        assert!(r.to_json().find("\"statement\"") < r.to_json().find("\"ms\""));
        assert_eq!(v["ms"], Value::Null);
    }
}
