use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{Check, Mismatch, VerifyReport};
use super::{
    assembled_inert, assembled_split, closed_form_inert, closed_form_series, closed_form_split,
    closed_form_tampered, eta_theta, series_oracle,
};
use crate::algebra::{rf_equal, series_expand, Bindings, Rational, RationalFunction, VarId};
use crate::lfactor::{local_lfactor, zeta_normalizer};
use crate::sugano::{PlaceCase, PlaceData, SatakeData};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// All parameters symbolic; only the term limit bounds the cost.
    Symbolic,
    /// Random exact parameters, `T` symbolic.
    Univariate,
    /// Double-coset series against Taylor coefficients of the closed form.
    Series,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Univariate => "univariate",
            Mode::Series => "series",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "univariate" => Ok(Mode::Univariate),
            "series" => Ok(Mode::Series),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

/// How split-case cosets with `k = 0` are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `k >= 1` for `Pi_1` and `k >= 0` for `Pi_2`: each coset once.
    Proof,
    /// `k >= 0` for both, so `k = 0` cosets appear twice.
    PaperA,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::Proof, Convention::PaperA];

    pub fn name(self) -> &'static str {
        match self {
            Convention::Proof => "proof",
            Convention::PaperA => "paper-A",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Convention> {
        match s {
            "proof" => Ok(Convention::Proof),
            "paper-A" | "paper-a" => Ok(Convention::PaperA),
            _ => Err(Error::Parse(format!("unknown convention {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub case: PlaceCase,
    pub mode: Mode,
    /// Truncation order in `T` for series mode.
    pub order: usize,
    pub samples: usize,
    pub seed: u64,
    /// Residue field sizes to draw from; each must be a perfect square.
    pub q_values: Vec<u64>,
    /// `None` tries every convention and reports the one that passes.
    pub convention: Option<Convention>,
    /// Flip the sign of one closed-form factor, to exercise failure paths.
    pub tamper: Option<usize>,
}

impl VerifyConfig {
    pub fn new(case: PlaceCase, mode: Mode) -> Self {
        VerifyConfig {
            case,
            mode,
            order: 10,
            samples: 20,
            seed: 0,
            q_values: alloc::vec![4, 9, 25, 49],
            convention: None,
            tamper: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidInput(
                "at least one sample is required".into(),
            ));
        }
        if self.q_values.is_empty() {
            return Err(Error::InvalidInput("empty q list".into()));
        }
        for &q in &self.q_values {
            if Rational::from_integer(q as i64).sqrt().is_none() || q < 4 {
                return Err(Error::NotASquare(q.to_string()));
            }
        }
        if let Some(f) = self.tamper {
            if f >= super::CLOSED_FORM_FACTORS {
                return Err(Error::InvalidInput(format!("no closed-form factor {f}")));
            }
        }
        Ok(())
    }
}

/// One random parameter set: `chi0 = c`, `chi1 = a^2`, `chi2 = b^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub c: Rational,
    pub a: Rational,
    pub b: Rational,
    pub q: u64,
    pub u: Option<Rational>,
}

impl Sample {
    pub fn data(&self, case: PlaceCase) -> Result<(SatakeData, PlaceData)> {
        let s = SatakeData::from_roots(self.c.clone(), self.a.clone(), self.b.clone())?;
        let p = PlaceData::exact(
            &Rational::from_integer(self.q as i64),
            case.legendre(),
            self.u.clone(),
        )?;
        Ok((s, p))
    }

    pub fn params(&self, index: usize) -> Vec<(String, String)> {
        let mut out = alloc::vec![
            (format!("s{index}.c"), self.c.to_fraction_string()),
            (format!("s{index}.a"), self.a.to_fraction_string()),
            (format!("s{index}.b"), self.b.to_fraction_string()),
            (
                format!("s{index}.q"),
                Rational::from_integer(self.q as i64).to_fraction_string()
            ),
        ];
        if let Some(u) = &self.u {
            out.push((format!("s{index}.u"), u.to_fraction_string()));
        }
        out
    }
}

fn draw_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 {
            let d: i64 = rng.gen_range(1..=9);
            return Rational::new(n, d);
        }
    }
}

/// Seeded parameter sets (ChaCha8). Split samples with `nu(Pi_1)^2 = omega`
/// are redrawn.
pub fn draw_samples(config: &VerifyConfig) -> Result<Vec<Sample>> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::with_capacity(config.samples);
    for _ in 0..config.samples {
        let c = draw_rational(&mut rng);
        let a = draw_rational(&mut rng);
        let b = draw_rational(&mut rng);
        let q = config.q_values[rng.gen_range(0..config.q_values.len())];
        let u = match config.case {
            PlaceCase::Inert => None,
            PlaceCase::Split => {
                let sw = &(&a * &b) * &c;
                let omega = &sw * &sw;
                loop {
                    let u = draw_rational(&mut rng);
                    if &u * &u != omega {
                        break Some(u);
                    }
                }
            }
        };
        out.push(Sample { c, a, b, q, u });
    }
    Ok(out)
}

/// A check tagged with the split-case convention it belongs to, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleCheck {
    pub convention: Option<Convention>,
    pub check: Check,
}

fn t_coefficient(f: &RationalFunction, k: u64) -> Result<String> {
    Ok(series_expand(f, VarId::T, k as usize)?
        .coeff(k as usize)
        .to_string())
}

fn rf_mismatch(lhs: &RationalFunction, rhs: &RationalFunction) -> Result<Option<Mismatch>> {
    if rf_equal(lhs, rhs)? {
        return Ok(None);
    }
    let diff = lhs.sub(rhs)?;
    let k = diff
        .numerator()
        .exponent_range(VarId::T)
        .map_or(0, |(lo, _)| lo.max(0) as u64);
    Ok(Some(Mismatch {
        t_power: k,
        lhs: t_coefficient(lhs, k)?,
        rhs: t_coefficient(rhs, k)?,
    }))
}

fn rf_check(
    name: String,
    sides: impl FnOnce() -> Result<(RationalFunction, RationalFunction)>,
) -> Check {
    match sides().and_then(|(l, r)| rf_mismatch(&l, &r)) {
        Ok(None) => Check::passed(name),
        Ok(Some(m)) => Check::failed(name, m),
        Err(e) => Check::errored(name, &e),
    }
}

fn closed(config: &VerifyConfig, s: &SatakeData, p: &PlaceData) -> Result<RationalFunction> {
    match (config.tamper, config.case) {
        (Some(f), case) => closed_form_tampered(case, s, p, f),
        (None, PlaceCase::Inert) => closed_form_inert(s, p),
        (None, PlaceCase::Split) => closed_form_split(s, p),
    }
}

fn assembled(config: &VerifyConfig, s: &SatakeData, p: &PlaceData) -> Result<RationalFunction> {
    match config.case {
        PlaceCase::Inert => assembled_inert(s, p),
        PlaceCase::Split => assembled_split(s, p),
    }
}

fn twist(case: PlaceCase) -> i8 {
    case.legendre()
}

fn identity_checks(
    config: &VerifyConfig,
    s: &SatakeData,
    p: &PlaceData,
    prefix: &str,
) -> Vec<Check> {
    let name = |n: &str| format!("{prefix}{n}");
    let asm = assembled(config, s, p);
    let mut out = Vec::new();
    out.push(rf_check(name("assembled_at_t0"), || {
        let a = asm.clone()?;
        let at0 = a.substitute(&Bindings::new().bind(VarId::T, RationalFunction::zero()))?;
        Ok((at0, RationalFunction::one()))
    }));
    out.push(rf_check(name("assembled_equals_closed_form"), || {
        Ok((asm.clone()?, closed(config, s, p)?))
    }));
    out.push(rf_check(name("normalized_equals_lfactor"), || {
        let lhs = zeta_normalizer(p)?.mul(&closed(config, s, p)?)?;
        Ok((lhs, local_lfactor(s, twist(config.case))?))
    }));
    out
}

/// Checks of symbolic mode: the identities with every parameter symbolic,
/// plus the eta/theta identities in the split case.
pub fn symbolic_checks(config: &VerifyConfig) -> Vec<Check> {
    let s = SatakeData::symbolic();
    let p = match config.case {
        PlaceCase::Inert => PlaceData::symbolic_inert(),
        PlaceCase::Split => PlaceData::symbolic_split(),
    };
    let mut out = identity_checks(config, &s, &p, "");
    if config.case == PlaceCase::Split {
        let et = eta_theta(&s, &p);
        out.push(rf_check("eta_sum_is_one".into(), || {
            let et = et.clone()?;
            Ok((et.eta1.add(&et.eta2)?, RationalFunction::one()))
        }));
        out.push(rf_check("theta_sum_is_zero".into(), || {
            let et = et.clone()?;
            Ok((et.theta1.add(&et.theta2)?, RationalFunction::zero()))
        }));
    }
    out
}

fn series_check(
    config: &VerifyConfig,
    s: &SatakeData,
    p: &PlaceData,
    convention: Convention,
    name: String,
) -> Check {
    let run = || -> Result<Option<Mismatch>> {
        let oracle = series_oracle(config.case, s, p, config.order, convention)?;
        let want = closed_form_series(&closed(config, s, p)?, config.order)?;
        Ok(oracle.first_difference(&want)?.map(|k| Mismatch {
            t_power: k as u64,
            lhs: oracle.coeff(k).to_string(),
            rhs: want.coeff(k).to_string(),
        }))
    };
    match run() {
        Ok(None) => Check::passed(name),
        Ok(Some(m)) => Check::failed(name, m),
        Err(e) => Check::errored(name, &e),
    }
}

/// Checks for one sample in univariate or series mode. Independent of other
/// samples, so callers may evaluate samples in parallel.
pub fn check_sample(config: &VerifyConfig, sample: &Sample, index: usize) -> Vec<SampleCheck> {
    let prefix = format!("s{index}.");
    let (s, p) = match sample.data(config.case) {
        Ok(d) => d,
        Err(e) => {
            return alloc::vec![SampleCheck {
                convention: None,
                check: Check::errored(format!("{prefix}parameters"), &e),
            }]
        }
    };
    match config.mode {
        Mode::Series => {
            let conventions: Vec<Option<Convention>> = match (config.case, config.convention) {
                (PlaceCase::Inert, _) => alloc::vec![None],
                (PlaceCase::Split, Some(c)) => alloc::vec![Some(c)],
                (PlaceCase::Split, None) => Convention::ALL.into_iter().map(Some).collect(),
            };
            conventions
                .into_iter()
                .map(|c| {
                    let name = format!("{prefix}series_oracle_matches_closed_form");
                    SampleCheck {
                        convention: c,
                        check: series_check(config, &s, &p, c.unwrap_or(Convention::Proof), name),
                    }
                })
                .collect()
        }
        _ => identity_checks(config, &s, &p, &prefix)
            .into_iter()
            .map(|check| SampleCheck {
                convention: None,
                check,
            })
            .collect(),
    }
}

/// Assembles a report from per-sample results given in sample order.
pub fn finish_report(
    config: &VerifyConfig,
    samples: &[Sample],
    per_sample: Vec<Vec<SampleCheck>>,
) -> VerifyReport {
    let params = samples
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.params(i))
        .collect();
    let flat: Vec<SampleCheck> = per_sample.into_iter().flatten().collect();
    let tried: Vec<Convention> = match (config.case, config.mode, config.convention) {
        (PlaceCase::Split, Mode::Series, Some(c)) => alloc::vec![c],
        (PlaceCase::Split, Mode::Series, None) => Convention::ALL.to_vec(),
        _ => Vec::new(),
    };
    let conventions: Vec<(Convention, bool)> = tried
        .iter()
        .map(|&c| {
            let ok = flat
                .iter()
                .filter(|sc| sc.convention == Some(c))
                .all(|sc| sc.check.pass);
            (c, ok)
        })
        .collect();
    let chosen = conventions
        .iter()
        .find(|(_, ok)| *ok)
        .or(conventions.first())
        .map(|(c, _)| *c);
    let checks = flat
        .into_iter()
        .filter(|sc| sc.convention.is_none() || sc.convention == chosen)
        .map(|sc| sc.check)
        .collect();
    VerifyReport {
        case: config.case,
        mode: config.mode,
        order: config.order,
        seed: config.seed,
        params,
        checks,
        convention: chosen,
        conventions,
    }
}

/// Runs every check for the configuration sequentially.
pub fn verify(config: &VerifyConfig) -> Result<VerifyReport> {
    config.validate()?;
    if config.mode == Mode::Symbolic {
        return Ok(VerifyReport {
            case: config.case,
            mode: config.mode,
            order: config.order,
            seed: config.seed,
            params: Vec::new(),
            checks: symbolic_checks(config),
            convention: None,
            conventions: Vec::new(),
        });
    }
    let samples = draw_samples(config)?;
    let per_sample = samples
        .iter()
        .enumerate()
        .map(|(i, s)| check_sample(config, s, i))
        .collect();
    Ok(finish_report(config, &samples, per_sample))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let mut cfg = VerifyConfig::new(PlaceCase::Split, Mode::Univariate);
        cfg.seed = 11;
        let a = draw_samples(&cfg).unwrap();
        assert_eq!(a, draw_samples(&cfg).unwrap());
        assert_eq!(a.len(), 20);
        for s in &a {
            let w = &(&(&s.a * &s.b) * &s.c) * &(&(&s.a * &s.b) * &s.c);
            let u = s.u.clone().unwrap();
            assert_ne!(&u * &u, w);
            assert!([4, 9, 25, 49].contains(&s.q));
        }
        cfg.seed = 12;
        assert_ne!(a, draw_samples(&cfg).unwrap());
    }

    #[test]
    fn bad_config_rejected() {
        let mut cfg = VerifyConfig::new(PlaceCase::Inert, Mode::Univariate);
        cfg.q_values = alloc::vec![8];
        assert!(verify(&cfg).is_err());
        cfg.q_values = alloc::vec![9];
        cfg.samples = 0;
        assert!(verify(&cfg).is_err());
    }

    #[test]
    fn univariate_inert_passes() {
        let mut cfg = VerifyConfig::new(PlaceCase::Inert, Mode::Univariate);
        cfg.samples = 3;
        let r = verify(&cfg).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.checks.len(), 9);
    }

    #[test]
    fn tamper_fails_at_t1() {
        let mut cfg = VerifyConfig::new(PlaceCase::Split, Mode::Univariate);
        cfg.samples = 2;
        cfg.tamper = Some(3);
        let r = verify(&cfg).unwrap();
        assert!(!r.all_pass());
        let m = r.failures().next().unwrap().first_mismatch.clone().unwrap();
        assert_eq!(m.t_power, 1);
        assert_ne!(m.lhs, m.rhs);
    }

    #[test]
    fn series_split_records_convention() {
        let mut cfg = VerifyConfig::new(PlaceCase::Split, Mode::Series);
        cfg.samples = 2;
        cfg.order = 4;
        let r = verify(&cfg).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.convention, Some(Convention::Proof));
        assert_eq!(
            r.conventions,
            alloc::vec![(Convention::Proof, true), (Convention::PaperA, false)]
        );
        assert_eq!(r.checks.len(), 2);
    }
}
